//! Assembly of canonical points from seeds.

use super::seed::{ClosedSeed, NilpotentSeed};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::rep::{EnhancedPoint, Group, Kind};

/// Places `J_k` on the diagonal block starting at `at`.
fn put_jordan(x: &mut Mat, at: usize, k: usize) {
    for i in 0..k.saturating_sub(1) {
        x[(at + i, at + i + 1)] = Scalar::one();
    }
}

/// Places `-J_kᵗ` on the diagonal block starting at `at`.
fn put_neg_jordan_t(x: &mut Mat, at: usize, k: usize) {
    for i in 0..k.saturating_sub(1) {
        x[(at + i + 1, at + i)] = Scalar::from_int(-1);
    }
}

/// The canonical nilpotent point of a seed.
pub fn build_nilpotent(seed: &NilpotentSeed) -> Result<EnhancedPoint> {
    let seed = NilpotentSeed::new(seed.kind, seed.rank, seed.k, seed.coeffs.clone())?;
    let (n, k, c) = (seed.rank, seed.k, &seed.coeffs);
    let group = Group::standard(seed.kind, n);
    let m = group.size();
    let mut x = Mat::zeros(m, m);
    let mut u = vec![Scalar::zero(); m];
    let mut v = None;
    match seed.kind {
        Kind::Gl => {
            put_jordan(&mut x, 0, k);
            u[..k].clone_from_slice(c);
            let mut row = vec![Scalar::zero(); m];
            if k > 0 {
                row[0] = Scalar::one();
            }
            v = Some(row);
        }
        Kind::Sp => {
            put_jordan(&mut x, 0, k);
            put_neg_jordan_t(&mut x, n, k);
            if k > 0 {
                x[(k - 1, n + k - 1)] = Scalar::one();
            }
            u[..k].clone_from_slice(&c[..k]);
            u[n..n + k].clone_from_slice(&c[k..]);
        }
        Kind::Oodd => {
            put_jordan(&mut x, 1, k);
            put_neg_jordan_t(&mut x, n + 1, k);
            if k > 0 {
                x[(0, n + k)] = Scalar::one();
                x[(k, 0)] = Scalar::from_int(-1);
            }
            u[..=k].clone_from_slice(&c[..=k]);
            u[n + 1..n + 1 + k].clone_from_slice(&c[k + 1..]);
        }
        Kind::Oeven => {
            put_jordan(&mut x, 0, k);
            put_neg_jordan_t(&mut x, n, k);
            if k >= 2 {
                x[(k - 2, n + k - 1)] = Scalar::one();
                x[(k - 1, n + k - 2)] = Scalar::from_int(-1);
            }
            u[..k].clone_from_slice(&c[..k]);
            u[n..n + k].clone_from_slice(&c[k..]);
        }
        Kind::Gram => unreachable!("rejected by seed validation"),
    }
    EnhancedPoint::new(group, x, u, v)
}

/// Row/column layout of a closed point of a form group.
///
/// Coordinates are ordered as: the first `n₀'` zero-part coordinates, the
/// `c`-eigenblocks, the last `n₀` zero-part coordinates, then the
/// `-c`-eigenblocks.
pub(crate) struct Layout {
    pub zero_head: usize,
    pub zero_tail: usize,
    pub offsets: Vec<usize>,
    pub span: usize,
}

impl Layout {
    pub fn new(kind: Kind, n0: usize, sizes: &[usize]) -> Layout {
        let zero_head = if kind == Kind::Oodd { n0 + 1 } else { n0 };
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for s in sizes {
            offsets.push(acc);
            acc += s;
        }
        Layout {
            zero_head,
            zero_tail: n0,
            offsets,
            span: acc,
        }
    }

    /// Ambient index of the `i`-th zero-part coordinate.
    pub fn zero_index(&self, i: usize) -> usize {
        if i < self.zero_head {
            i
        } else {
            i + self.span
        }
    }

    pub fn plus(&self, block: usize) -> usize {
        self.zero_head + self.offsets[block]
    }

    pub fn minus(&self, block: usize) -> usize {
        self.zero_head + self.span + self.zero_tail + self.offsets[block]
    }
}

/// The canonical closed point of a closed seed.
pub fn build_closed(seed: &ClosedSeed) -> Result<EnhancedPoint> {
    let seed = ClosedSeed::new(seed.kind, seed.rank, seed.zero.clone(), seed.blocks.clone())?;
    let group = Group::standard(seed.kind, seed.rank);
    let m = group.size();
    let mut x = Mat::zeros(m, m);
    let mut u = vec![Scalar::zero(); m];
    let parts: Vec<EnhancedPoint> = seed
        .blocks
        .iter()
        .map(|b| build_nilpotent(&b.seed))
        .collect::<Result<_>>()?;
    if seed.kind == Kind::Gl {
        let mut v = vec![Scalar::zero(); m];
        let mut at = 0;
        for (b, p) in seed.blocks.iter().zip(&parts) {
            let block = &Mat::identity(b.seed.rank).scale(&b.eigenvalue) + p.x();
            x.place(at, at, &block)?;
            u[at..at + b.seed.rank].clone_from_slice(p.u());
            v[at..at + b.seed.rank].clone_from_slice(p.v().expect("GL part"));
            at += b.seed.rank;
        }
        return EnhancedPoint::new(group, x, u, Some(v));
    }
    let zero_seed = seed.zero_seed().expect("form kinds have a zero part");
    let zero = build_nilpotent(&zero_seed)?;
    let sizes: Vec<usize> = seed.blocks.iter().map(|b| b.seed.rank).collect();
    let layout = Layout::new(seed.kind, zero_seed.rank, &sizes);
    let m0 = zero.group().size();
    for i in 0..m0 {
        u[layout.zero_index(i)] = zero.u()[i].clone();
        for j in 0..m0 {
            x[(layout.zero_index(i), layout.zero_index(j))] = zero.x()[(i, j)].clone();
        }
    }
    for (idx, (b, p)) in seed.blocks.iter().zip(&parts).enumerate() {
        let r = b.seed.rank;
        let shift = Mat::identity(r).scale(&b.eigenvalue);
        x.place(layout.plus(idx), layout.plus(idx), &(&shift + p.x()))?;
        x.place(
            layout.minus(idx),
            layout.minus(idx),
            &-&(&shift + &p.x().transpose()),
        )?;
        let (pu, pv) = (p.u(), p.v().expect("GL part"));
        u[layout.plus(idx)..layout.plus(idx) + r].clone_from_slice(pu);
        u[layout.minus(idx)..layout.minus(idx) + r].clone_from_slice(pv);
    }
    EnhancedPoint::new(group, x, u, None).map_err(|e| match e {
        Error::NotInLieAlgebra => Error::Internal("closed assembly left the Lie algebra".into()),
        other => other,
    })
}
