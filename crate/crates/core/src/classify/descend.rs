//! Descendants of closed orbits and the twisted stabilizer witness.

use serde::Serialize;

use super::stabilizer::{seed_stabilizer, Factor};
use crate::canonical::{build_closed, build_nilpotent, ClosedSeed};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::rep::{act, cyclic_span, lie_stabilizer_dim, EnhancedPoint, Kind, MvwElement, Sign};

/// The stabilizer of a closed point and the shape of its normal space
/// `𝔥^en ⊕ triv^k ⊕ χ^k`, plus `χ` once more when `γ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescendantReport {
    /// The form factor of the zero part (absent for GL) followed by one
    /// general linear factor per eigenblock.
    pub factors: Vec<Factor>,
    pub mult_k: usize,
    pub gamma: usize,
    /// Dimension of the cyclic span of the zero part.
    pub cyclic_dim: usize,
    /// `dim 𝔥 + dim` of the enhanced module of `H`.
    pub enhanced_dim: usize,
    /// `dim 𝔤_x + dim E`.
    pub normal_dim: usize,
    pub mvw_witness: bool,
}

impl DescendantReport {
    /// Rank of the form factor: `l` in `Sp_2l`, `O_{2l}` or `O_{2l+1}`.
    pub fn form_rank(&self, seed: &ClosedSeed) -> usize {
        if seed.kind == Kind::Gl {
            0
        } else {
            self.factors[0].rank
        }
    }

    /// Ranks `k_i` of the general linear factors.
    pub fn gl_ranks(&self) -> Vec<usize> {
        self.factors
            .iter()
            .filter(|f| f.kind == Kind::Gl)
            .map(|f| f.rank)
            .collect()
    }
}

/// Stabilizer and normal-space bookkeeping of the closed orbit of a seed.
pub fn descend(seed: &ClosedSeed) -> Result<DescendantReport> {
    let p = build_closed(seed)?;
    let mut factors = Vec::with_capacity(seed.blocks.len() + 1);
    let (mut cyclic_dim, mut gamma) = (0, 0);
    if let Some(zero_seed) = seed.zero_seed() {
        let zero = build_nilpotent(&zero_seed)?;
        factors.push(seed_stabilizer(&zero_seed)?);
        cyclic_dim = cyclic_span(zero.x(), zero.u()).dim;
        if p.group().is_orthogonal() && !zero.is_zero() {
            gamma = 1;
        }
    }
    let mut jets = 0;
    for b in &seed.blocks {
        factors.push(Factor::new(Kind::Gl, b.seed.rank - b.seed.k));
        jets += b.seed.k;
    }
    if cyclic_dim < gamma || (cyclic_dim - gamma) % 2 != 0 {
        return Err(Error::Internal(format!(
            "cyclic span of dimension {cyclic_dim} with γ = {gamma}"
        )));
    }
    let mult_k = (cyclic_dim - gamma) / 2 + jets;
    let enhanced_dim: usize = factors.iter().map(|f| f.dim() + f.module_dim()).sum();
    let normal_dim = lie_stabilizer_dim(&p) + p.group().module_dim();
    if enhanced_dim + 2 * mult_k + gamma != normal_dim {
        return Err(Error::Internal(format!(
            "normal space of dimension {normal_dim} does not split as {enhanced_dim} + 2·{mult_k} + {gamma}"
        )));
    }
    Ok(DescendantReport {
        factors,
        mult_k,
        gamma,
        cyclic_dim,
        enhanced_dim,
        normal_dim,
        mvw_witness: seed.kind == Kind::Gl,
    })
}

/// Anti-triangular Hankel block `h_ij = -y_{i+j-1}`.
fn hankel(y: &[Scalar]) -> Mat {
    let k = y.len();
    Mat::from_fn(k, k, |i, j| y.get(i + j).map_or_else(Scalar::zero, |c| -c))
}

/// The element `(g₀, -1)` of the twisted component fixing the canonical
/// point of a GL seed.
pub fn mvw_stabilizer_witness(seed: &ClosedSeed) -> Result<MvwElement> {
    if seed.kind != Kind::Gl {
        return Err(Error::Unsupported(
            "explicit twisted stabilizers are built for GL only".into(),
        ));
    }
    let p = build_closed(seed)?;
    let blocks: Vec<Mat> = seed
        .blocks
        .iter()
        .map(|b| {
            Mat::block_diag(&[
                hankel(&b.seed.coeffs),
                Mat::identity(b.seed.rank - b.seed.k),
            ])
        })
        .collect();
    let e = MvwElement::new(Mat::block_diag(&blocks), Sign::Minus);
    verify_witness(&e, &p)?;
    Ok(e)
}

fn verify_witness(e: &MvwElement, p: &EnhancedPoint) -> Result<()> {
    if &act(e, p)? != p {
        return Err(Error::Internal("witness does not fix the point".into()));
    }
    if e.compose(e, p.group())? != MvwElement::identity(p.group()) {
        return Err(Error::Internal(
            "witness does not square to the identity".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{EigenBlock, NilpotentSeed};

    fn nil(kind: Kind, n: usize, k: usize, c: &[i64]) -> ClosedSeed {
        ClosedSeed::nilpotent(NilpotentSeed::from_ints(kind, n, k, c).unwrap())
    }

    #[test]
    fn gl_maximal() {
        let r = descend(&nil(Kind::Gl, 2, 2, &[4, 1])).unwrap();
        assert_eq!(r.factors, vec![Factor::new(Kind::Gl, 0)]);
        assert_eq!((r.mult_k, r.gamma, r.mvw_witness), (2, 0, true));
    }

    #[test]
    fn sp_kappa_one() {
        let r = descend(&nil(Kind::Sp, 2, 1, &[0, 1])).unwrap();
        assert_eq!(r.factors, vec![Factor::new(Kind::Sp, 1)]);
        assert_eq!((r.mult_k, r.gamma), (1, 0));
        assert_eq!(r.mult_k + r.factors[0].rank, 2);
    }

    #[test]
    fn oodd_sphere() {
        let r = descend(&nil(Kind::Oodd, 1, 0, &[2])).unwrap();
        assert_eq!(r.factors, vec![Factor::new(Kind::Oeven, 1)]);
        assert_eq!((r.mult_k, r.gamma, r.cyclic_dim), (0, 1, 1));
        assert_eq!(r.enhanced_dim + 2 * r.mult_k + r.gamma, 1 + 3);
    }

    #[test]
    fn origin_has_gamma_zero() {
        let r = descend(&nil(Kind::Oeven, 2, 0, &[])).unwrap();
        assert_eq!(r.gamma, 0);
        assert_eq!(r.factors, vec![Factor::new(Kind::Oeven, 2)]);
    }

    #[test]
    fn mixed_seed() {
        let seed = ClosedSeed::new(
            Kind::Oeven,
            3,
            Some(NilpotentSeed::from_ints(Kind::Oeven, 2, 2, &[1, 0, 1, 0]).unwrap()),
            vec![EigenBlock {
                eigenvalue: Scalar::from_int(2),
                seed: NilpotentSeed::from_ints(Kind::Gl, 1, 1, &[1]).unwrap(),
            }],
        )
        .unwrap();
        let r = descend(&seed).unwrap();
        assert_eq!(
            r.factors,
            vec![Factor::new(Kind::Oodd, 0), Factor::new(Kind::Gl, 0)]
        );
        assert_eq!((r.mult_k, r.gamma, r.cyclic_dim), (2, 1, 3));
    }

    #[test]
    fn witness_examples() {
        let w = mvw_stabilizer_witness(&nil(Kind::Gl, 1, 1, &[3])).unwrap();
        assert_eq!(w.g, Mat::from_ints(&[[-3]]));
        let w = mvw_stabilizer_witness(&nil(Kind::Gl, 2, 2, &[0, 1])).unwrap();
        assert_eq!(w.g, Mat::from_ints(&[[0, -1], [-1, 0]]));
        let w = mvw_stabilizer_witness(&nil(Kind::Gl, 3, 2, &[2, 1])).unwrap();
        assert_eq!(w.g, Mat::from_ints(&[[-2, -1, 0], [-1, 0, 0], [0, 0, 1]]));
        assert!(mvw_stabilizer_witness(&nil(Kind::Sp, 1, 1, &[0, 1])).is_err());
    }

    #[test]
    fn witness_for_closed_gl_seed() {
        let seed = ClosedSeed::new(
            Kind::Gl,
            3,
            None,
            vec![
                EigenBlock {
                    eigenvalue: Scalar::from_int(1),
                    seed: NilpotentSeed::from_ints(Kind::Gl, 2, 2, &[1, -1]).unwrap(),
                },
                EigenBlock {
                    eigenvalue: Scalar::from_int(-1),
                    seed: NilpotentSeed::from_ints(Kind::Gl, 1, 0, &[]).unwrap(),
                },
            ],
        )
        .unwrap();
        assert!(mvw_stabilizer_witness(&seed).is_ok());
    }
}
