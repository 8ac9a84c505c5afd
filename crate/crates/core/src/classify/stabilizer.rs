//! Stabilizer groups of closed nilpotent points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canonical::NilpotentSeed;
use crate::error::{Error, Result};
use crate::rep::{Family, Kind};

/// A classical group by kind and rank: `GL_r`, `Sp_2r`, `O_{2r+1}` (`oodd`)
/// or `O_{2r}` (`oeven`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: Kind,
    pub rank: usize,
}

impl Factor {
    pub fn new(kind: Kind, rank: usize) -> Factor {
        Factor { kind, rank }
    }

    /// Size of the natural module.
    pub fn size(self) -> usize {
        match self.kind {
            Kind::Oodd => 2 * self.rank + 1,
            Kind::Gl => self.rank,
            _ => 2 * self.rank,
        }
    }

    pub fn dim(self) -> usize {
        let m = self.size();
        match self.kind {
            Kind::Gl => m * m,
            Kind::Sp => m * (m + 1) / 2,
            _ => m * m.saturating_sub(1) / 2,
        }
    }

    /// Dimension of the enhanced module: `F^r ⊕ F_r` for `GL_r`, the natural
    /// module otherwise.
    pub fn module_dim(self) -> usize {
        match self.kind {
            Kind::Gl => 2 * self.rank,
            _ => self.size(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Gl => write!(f, "GL_{}", self.rank),
            Kind::Sp => write!(f, "Sp_{}", 2 * self.rank),
            _ => write!(f, "O_{}", self.size()),
        }
    }
}

/// Stabilizer of a closed nilpotent point with jet order `k`.
///
/// For orthogonal kinds with `k = 0` this is the whole group.
pub fn predicted_stabilizer(kind: Kind, n: usize, k: usize) -> Result<Factor> {
    if k > n {
        return Err(Error::InvalidSeed(format!(
            "jet order {k} exceeds rank {n}"
        )));
    }
    let r = n - k;
    Ok(match (kind, k) {
        (Kind::Gl, _) => Factor::new(Kind::Gl, r),
        (Kind::Sp, _) => Factor::new(Kind::Sp, r),
        (Kind::Oodd | Kind::Oeven, 0) => Factor::new(kind, n),
        (Kind::Oodd, _) => Factor::new(Kind::Oeven, r),
        (Kind::Oeven, _) => Factor::new(Kind::Oodd, r),
        (Kind::Gram, _) => {
            return Err(Error::Unsupported(
                "stabilizers are tabulated for the standard kinds".into(),
            ))
        }
    })
}

/// Stabilizer of a closed nilpotent point given its jet order and, for the
/// odd orthogonal family with `k = 0`, whether `u` is anisotropic.
pub(crate) fn fiber_stabilizer(
    family: Family,
    n: usize,
    k: usize,
    anisotropic: bool,
) -> Result<Factor> {
    let kind = family.kind();
    if kind == Kind::Oodd && k == 0 && anisotropic {
        return Ok(Factor::new(Kind::Oeven, n));
    }
    predicted_stabilizer(kind, n, k)
}

/// Stabilizer of the canonical point of a seed. Differs from
/// [`predicted_stabilizer`] only for odd orthogonal seeds with `k = 0` and
/// `u_1 ≠ 0`, whose stabilizer is `O_{2n}`.
pub fn seed_stabilizer(seed: &NilpotentSeed) -> Result<Factor> {
    let family = match seed.kind {
        Kind::Gl => Family::Linear,
        Kind::Sp => Family::Symplectic,
        Kind::Oodd => Family::OddOrthogonal,
        Kind::Oeven => Family::EvenOrthogonal,
        Kind::Gram => {
            return Err(Error::Unsupported(
                "seeds are defined for the standard kinds".into(),
            ))
        }
    };
    fiber_stabilizer(family, seed.rank, seed.k, !seed.is_zero())
}
