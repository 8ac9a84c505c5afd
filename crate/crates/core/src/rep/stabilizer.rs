//! Cyclic spans and infinitesimal stabilizers.

use super::point::EnhancedPoint;
use crate::linalg::{Mat, Scalar};

/// The Krylov matrix `[u, Xu, …, X^{m-1}u]` and its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSpan {
    pub vectors: Mat,
    pub dim: usize,
}

impl CyclicSpan {
    /// A basis of the span: the leading `dim` Krylov vectors.
    pub fn basis(&self) -> Mat {
        let cols: Vec<usize> = (0..self.dim).collect();
        let rows: Vec<usize> = (0..self.vectors.rows()).collect();
        self.vectors.submatrix(&rows, &cols)
    }
}

pub fn cyclic_span(x: &Mat, u: &[Scalar]) -> CyclicSpan {
    let m = x.rows();
    let mut cols = Vec::with_capacity(m);
    let mut w = u.to_vec();
    for _ in 0..m {
        let next = x.mul_vec(&w);
        cols.push(w);
        w = next;
    }
    let vectors = Mat::from_columns(m, &cols);
    let dim = vectors.rank();
    CyclicSpan { vectors, dim }
}

/// `dim {Z ∈ g : [Z, X] = 0, Zu = 0, vZ = 0}`.
pub fn lie_stabilizer_dim(p: &EnhancedPoint) -> usize {
    let group = p.group();
    let basis = group.lie_algebra_basis();
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|z| {
            let mut col = z.commutator(p.x()).flatten();
            col.extend(z.mul_vec(p.u()));
            if let Some(v) = p.v() {
                col.extend(z.vec_mul(v));
            }
            col
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    basis.len() - Mat::from_columns(rows, &columns).rank()
}

/// `dim G - dim G_p`.
pub fn orbit_dim(p: &EnhancedPoint) -> usize {
    p.group().dim() - lie_stabilizer_dim(p)
}
