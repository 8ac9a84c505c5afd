//! Finite parameter lists generating the canonical families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::scalar::common_radicand;
use crate::linalg::Scalar;
use crate::rep::Kind;

/// Parameters of a canonical nilpotent point.
///
/// Coefficient layout by kind, with `n` the rank and `k` the jet order:
///
/// | kind  | coefficients                              | must be nonzero |
/// |-------|-------------------------------------------|-----------------|
/// | gl    | `y_1 … y_k`                               | `y_k`           |
/// | sp    | `u_1 … u_k, u_{n+1} … u_{n+k}`            | `u_{n+1}`       |
/// | oodd  | `u_1 … u_{k+1}, u_{n+2} … u_{n+k+1}`      | `u_{n+2}` (k≥1) |
/// | oeven | `u_1 … u_k, u_{n+1} … u_{n+k}`            | `u_{n+1}`, and `u_1` when `k = 1` |
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NilpotentSeedWire")]
pub struct NilpotentSeed {
    pub kind: Kind,
    pub rank: usize,
    pub k: usize,
    pub coeffs: Vec<Scalar>,
}

#[derive(Deserialize)]
struct NilpotentSeedWire {
    kind: Kind,
    rank: usize,
    k: usize,
    #[serde(default)]
    coeffs: Vec<Scalar>,
}

impl TryFrom<NilpotentSeedWire> for NilpotentSeed {
    type Error = Error;

    fn try_from(w: NilpotentSeedWire) -> Result<NilpotentSeed> {
        NilpotentSeed::new(w.kind, w.rank, w.k, w.coeffs)
    }
}

/// Number of coefficients a seed of this kind and jet order carries.
pub fn coefficient_count(kind: Kind, k: usize) -> usize {
    match kind {
        Kind::Gl => k,
        Kind::Oodd => 2 * k + 1,
        _ => 2 * k,
    }
}

/// Position in the coefficient list that must be nonzero, if any.
pub fn leading_index(kind: Kind, k: usize) -> Option<usize> {
    match kind {
        Kind::Gl if k >= 1 => Some(k - 1),
        Kind::Sp | Kind::Oeven if k >= 1 => Some(k),
        Kind::Oodd if k >= 1 => Some(k + 1),
        _ => None,
    }
}

impl NilpotentSeed {
    pub fn new(kind: Kind, rank: usize, k: usize, coeffs: Vec<Scalar>) -> Result<NilpotentSeed> {
        if kind == Kind::Gram {
            return Err(Error::InvalidSeed(
                "seeds are defined for the standard kinds".into(),
            ));
        }
        if k > rank {
            return Err(Error::InvalidSeed(format!(
                "jet order {k} exceeds rank {rank}"
            )));
        }
        let want = coefficient_count(kind, k);
        if coeffs.len() != want {
            return Err(Error::InvalidSeed(format!(
                "{kind} seed with k = {k} takes {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        if let Some(i) = leading_index(kind, k) {
            if coeffs[i].is_zero() {
                return Err(Error::InvalidSeed(format!(
                    "coefficient {} must be nonzero",
                    i + 1
                )));
            }
        }
        if kind == Kind::Oeven && k == 1 && coeffs[0].is_zero() {
            return Err(Error::InvalidSeed(
                "even orthogonal seed with k = 1 needs u_1 ≠ 0".into(),
            ));
        }
        common_radicand(&coeffs)?;
        Ok(NilpotentSeed {
            kind,
            rank,
            k,
            coeffs,
        })
    }

    /// The seed of the origin.
    pub fn zero(kind: Kind, rank: usize) -> NilpotentSeed {
        let coeffs = if kind == Kind::Oodd {
            vec![Scalar::zero()]
        } else {
            Vec::new()
        };
        NilpotentSeed {
            kind,
            rank,
            k: 0,
            coeffs,
        }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(kind: Kind, rank: usize, k: usize, coeffs: &[i64]) -> Result<NilpotentSeed> {
        NilpotentSeed::new(
            kind,
            rank,
            k,
            coeffs.iter().map(|&c| Scalar::from_int(c)).collect(),
        )
    }

    /// Whether the seed yields the origin.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Every valid seed of the given kind and rank with coefficients drawn
    /// from `grid`, for all jet orders `0 ≤ k ≤ rank`.
    ///
    /// Odd orthogonal seeds with `k = 0` always include `u_1 = 0`.
    pub fn enumerate(kind: Kind, rank: usize, grid: &[Scalar]) -> Vec<NilpotentSeed> {
        let mut out = Vec::new();
        for k in 0..=rank {
            let count = coefficient_count(kind, k);
            let mut values: Vec<Scalar> = grid.to_vec();
            if kind == Kind::Oodd && k == 0 && !values.iter().any(Scalar::is_zero) {
                values.insert(0, Scalar::zero());
            }
            let mut idx = vec![0usize; count];
            loop {
                let coeffs: Vec<Scalar> = idx.iter().map(|&i| values[i].clone()).collect();
                if let Ok(seed) = NilpotentSeed::new(kind, rank, k, coeffs) {
                    out.push(seed);
                }
                // odometer increment
                let mut pos = 0;
                while pos < count {
                    idx[pos] += 1;
                    if idx[pos] < values.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == count || values.is_empty() {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Display for NilpotentSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(Scalar::to_string).collect();
        write!(
            f,
            "{} n={} k={} [{}]",
            self.kind,
            self.rank,
            self.k,
            cs.join(", ")
        )
    }
}

/// One semisimple block `c·I + N` of a closed seed with its nilpotent data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenBlock {
    pub eigenvalue: Scalar,
    pub seed: NilpotentSeed,
}

/// Parameters of a canonical closed point: a nilpotent part on the zero
/// eigenspace (absent for GL) and general linear blocks for the eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClosedSeedWire")]
pub struct ClosedSeed {
    pub kind: Kind,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<NilpotentSeed>,
    #[serde(default)]
    pub blocks: Vec<EigenBlock>,
}

#[derive(Deserialize)]
struct ClosedSeedWire {
    kind: Kind,
    rank: usize,
    #[serde(default)]
    zero: Option<NilpotentSeed>,
    #[serde(default)]
    blocks: Vec<EigenBlock>,
}

impl TryFrom<ClosedSeedWire> for ClosedSeed {
    type Error = Error;

    fn try_from(w: ClosedSeedWire) -> Result<ClosedSeed> {
        ClosedSeed::new(w.kind, w.rank, w.zero, w.blocks)
    }
}

impl ClosedSeed {
    pub fn new(
        kind: Kind,
        rank: usize,
        zero: Option<NilpotentSeed>,
        blocks: Vec<EigenBlock>,
    ) -> Result<ClosedSeed> {
        if kind == Kind::Gram {
            return Err(Error::InvalidSeed(
                "seeds are defined for the standard kinds".into(),
            ));
        }
        if kind == Kind::Gl && zero.is_some() {
            return Err(Error::InvalidSeed("GL seeds have no zero block".into()));
        }
        if let Some(z) = &zero {
            if z.kind != kind {
                return Err(Error::InvalidSeed(format!(
                    "zero block of kind {} inside {kind}",
                    z.kind
                )));
            }
        }
        let mut total = zero.as_ref().map_or(0, |z| z.rank);
        for (i, b) in blocks.iter().enumerate() {
            if b.seed.kind != Kind::Gl {
                return Err(Error::InvalidSeed("eigenblocks carry GL seeds".into()));
            }
            if b.seed.rank == 0 {
                return Err(Error::InvalidSeed("eigenblocks have positive rank".into()));
            }
            if !b.eigenvalue.is_rational() {
                return Err(Error::InvalidSeed("eigenvalues must be rational".into()));
            }
            if kind != Kind::Gl && b.eigenvalue.is_zero() {
                return Err(Error::InvalidSeed("eigenvalues must be nonzero".into()));
            }
            for other in &blocks[..i] {
                let clash = other.eigenvalue == b.eigenvalue
                    || (kind != Kind::Gl && other.eigenvalue == -&b.eigenvalue);
                if clash {
                    return Err(Error::InvalidSeed(format!(
                        "eigenvalue clash between {} and {}",
                        other.eigenvalue, b.eigenvalue
                    )));
                }
            }
            total += b.seed.rank;
        }
        if total != rank {
            return Err(Error::InvalidSeed(format!(
                "block ranks sum to {total}, expected {rank}"
            )));
        }
        common_radicand(
            zero.iter()
                .flat_map(|z| &z.coeffs)
                .chain(blocks.iter().flat_map(|b| &b.seed.coeffs)),
        )?;
        Ok(ClosedSeed {
            kind,
            rank,
            zero,
            blocks,
        })
    }

    /// The closed seed whose only part is a nilpotent seed.
    pub fn nilpotent(seed: NilpotentSeed) -> ClosedSeed {
        let (kind, rank) = (seed.kind, seed.rank);
        if kind != Kind::Gl {
            return ClosedSeed {
                kind,
                rank,
                zero: Some(seed),
                blocks: Vec::new(),
            };
        }
        let blocks = if rank == 0 {
            Vec::new()
        } else {
            vec![EigenBlock {
                eigenvalue: Scalar::zero(),
                seed,
            }]
        };
        ClosedSeed {
            kind,
            rank,
            zero: None,
            blocks,
        }
    }

    /// The zero block, defaulting to the origin of rank 0.
    pub fn zero_seed(&self) -> Option<NilpotentSeed> {
        if self.kind == Kind::Gl {
            return None;
        }
        Some(
            self.zero
                .clone()
                .unwrap_or_else(|| NilpotentSeed::zero(self.kind, 0)),
        )
    }
}
