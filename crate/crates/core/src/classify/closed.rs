//! Closedness via the fiber-dimension criterion.

use serde::Serialize;

use super::stabilizer::{fiber_stabilizer, Factor};
use crate::canonical::{centralizer_decomposition, extract_jet_order};
use crate::error::Result;
use crate::invariants::quotient_map;
use crate::linalg::Scalar;
use crate::rep::{orbit_dim, EnhancedPoint, Family};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub is_closed: bool,
    /// Jet order of the zero-eigenspace part; absent for GL.
    pub zero_jet_order: Option<usize>,
    /// Eigenvalues of the general linear parts, `c > 0` standing for `±c`
    /// in the form case.
    pub eigenvalues: Vec<Scalar>,
    pub block_jet_orders: Vec<usize>,
    /// Stabilizer of the closed orbit in the fiber.
    pub stabilizer: Vec<Factor>,
    pub stabilizer_dim: usize,
    pub orbit_dim: usize,
    /// Dimension of the closed orbit in the fiber.
    pub minimal_orbit_dim: usize,
}

/// Decides whether the orbit of `p` is closed by comparing its dimension
/// with that of the closed orbit in its fiber.
pub fn is_closed(p: &EnhancedPoint) -> Result<ClassificationReport> {
    let factors = centralizer_decomposition(p)?;
    let mut stabilizer = Vec::new();
    let mut zero_jet_order = None;
    if let Some(zero) = &factors.zero {
        let iv = quotient_map(zero);
        let k = extract_jet_order(&iv)?;
        let family = zero.group().family();
        let anisotropic =
            family == Family::OddOrthogonal && iv.pairings.first().is_some_and(|e| !e.is_zero());
        stabilizer.push(fiber_stabilizer(family, iv.rank, k, anisotropic)?);
        zero_jet_order = Some(k);
    }
    let mut block_jet_orders = Vec::with_capacity(factors.gl_parts.len());
    for part in &factors.gl_parts {
        let iv = quotient_map(&part.point);
        let k = extract_jet_order(&iv)?;
        stabilizer.push(fiber_stabilizer(Family::Linear, iv.rank, k, false)?);
        block_jet_orders.push(k);
    }
    let stabilizer_dim: usize = stabilizer.iter().map(|f| f.dim()).sum();
    let minimal_orbit_dim = p.group().dim() - stabilizer_dim;
    let actual = orbit_dim(p);
    Ok(ClassificationReport {
        is_closed: actual == minimal_orbit_dim,
        zero_jet_order,
        eigenvalues: factors
            .gl_parts
            .iter()
            .map(|g| g.eigenvalue.clone())
            .collect(),
        block_jet_orders,
        stabilizer,
        stabilizer_dim,
        orbit_dim: actual,
        minimal_orbit_dim,
    })
}
