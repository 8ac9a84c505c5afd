//! Generators of the invariant ring, the quotient map and its differential.

pub mod jet;

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, Mat, Scalar};
use crate::rep::{EnhancedPoint, Family, Group, Kind};

pub use jet::{jet_eval, jet_eval_all, Tangent};

/// One generating invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `tr(X^i)`
    Trace(usize),
    /// `v X^j u`
    Mu(usize),
    /// `⟨X^j u, u⟩`
    Eta(usize),
}

impl Generator {
    pub fn degree(self) -> usize {
        match self {
            Generator::Trace(i) => i,
            Generator::Mu(j) | Generator::Eta(j) => j + 2,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Trace(i) => write!(f, "tr_{i}"),
            Generator::Mu(j) => write!(f, "mu_{j}"),
            Generator::Eta(j) => write!(f, "eta_{j}"),
        }
    }
}

/// Rank parameter of the generator family attached to a group.
fn family_rank(group: &Group) -> usize {
    match group.family() {
        Family::Linear => group.size(),
        _ => group.size() / 2,
    }
}

/// Trace generators followed by pairing generators, in the frozen order.
pub fn generators(family: Family, rank: usize) -> (Vec<Generator>, Vec<Generator>) {
    let n = rank;
    match family {
        Family::Linear => (
            (1..=n).map(Generator::Trace).collect(),
            (0..n).map(Generator::Mu).collect(),
        ),
        Family::Symplectic => (
            (1..=n).map(|i| Generator::Trace(2 * i)).collect(),
            (0..n).map(|i| Generator::Eta(2 * i + 1)).collect(),
        ),
        Family::OddOrthogonal => (
            (1..=n).map(|i| Generator::Trace(2 * i)).collect(),
            (0..=n).map(|i| Generator::Eta(2 * i)).collect(),
        ),
        Family::EvenOrthogonal => (
            (1..=n).map(|i| Generator::Trace(2 * i)).collect(),
            (0..n).map(|i| Generator::Eta(2 * i)).collect(),
        ),
    }
}

/// All generators of a group in order.
pub fn group_generators(group: &Group) -> Vec<Generator> {
    let (mut t, p) = generators(group.family(), family_rank(group));
    t.extend(p);
    t
}

/// Value of the quotient map: trace invariants and pairing invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantVector {
    pub kind: Kind,
    pub rank: usize,
    pub traces: Vec<Scalar>,
    pub pairings: Vec<Scalar>,
}

impl InvariantVector {
    pub fn new(
        kind: Kind,
        rank: usize,
        traces: Vec<Scalar>,
        pairings: Vec<Scalar>,
    ) -> Result<InvariantVector> {
        let family = match kind {
            Kind::Gl => Family::Linear,
            Kind::Sp => Family::Symplectic,
            Kind::Oodd => Family::OddOrthogonal,
            Kind::Oeven => Family::EvenOrthogonal,
            Kind::Gram => {
                return Err(Error::Parse(
                    "invariant vectors are tagged with a standard kind".into(),
                ))
            }
        };
        let (t, p) = generators(family, rank);
        if traces.len() != t.len() || pairings.len() != p.len() {
            return Err(Error::Shape(format!(
                "{kind} rank {rank} needs {} traces and {} pairings, got {} and {}",
                t.len(),
                p.len(),
                traces.len(),
                pairings.len()
            )));
        }
        crate::linalg::scalar::common_radicand(traces.iter().chain(&pairings))?;
        Ok(InvariantVector {
            kind,
            rank,
            traces,
            pairings,
        })
    }

    pub fn family(&self) -> Family {
        match self.kind {
            Kind::Gl => Family::Linear,
            Kind::Sp => Family::Symplectic,
            Kind::Oodd => Family::OddOrthogonal,
            _ => Family::EvenOrthogonal,
        }
    }

    pub fn len(&self) -> usize {
        self.traces.len() + self.pairings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self) -> impl Iterator<Item = &Scalar> {
        self.traces.iter().chain(&self.pairings)
    }

    /// Whether the vector matches a group's generator family.
    pub fn matches(&self, group: &Group) -> bool {
        self.family() == group.family() && self.rank == family_rank(group)
    }
}

#[derive(Deserialize)]
struct InvariantWire {
    kind: Kind,
    rank: usize,
    traces: Vec<Scalar>,
    pairings: Vec<Scalar>,
}

impl<'de> Deserialize<'de> for InvariantVector {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<InvariantVector, D::Error> {
        let w = InvariantWire::deserialize(deserializer)?;
        InvariantVector::new(w.kind, w.rank, w.traces, w.pairings).map_err(de::Error::custom)
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, p) = generators(self.family(), self.rank);
        let parts: Vec<String> = t
            .iter()
            .chain(&p)
            .zip(self.values())
            .map(|(g, v)| format!("{g} = {v}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Powers `X^0 … X^max` shared across generators.
pub(crate) fn powers(x: &Mat, max: usize) -> Vec<Mat> {
    let mut out = vec![Mat::identity(x.rows())];
    for i in 1..=max {
        let next = &out[i - 1] * x;
        out.push(next);
    }
    out
}

/// Krylov vectors `u, Xu, …, X^max u`.
pub(crate) fn krylov(x: &Mat, u: &[Scalar], max: usize) -> Vec<Vec<Scalar>> {
    let mut out = vec![u.to_vec()];
    for j in 1..=max {
        let next = x.mul_vec(&out[j - 1]);
        out.push(next);
    }
    out
}

/// Evaluates every generator.
pub fn quotient_map(p: &EnhancedPoint) -> InvariantVector {
    let group = p.group();
    let family = group.family();
    let rank = family_rank(group);
    let (tg, pg) = generators(family, rank);
    let max_trace = tg.iter().map(|g| g.degree()).max().unwrap_or(0);
    let max_vec = pg.iter().map(|g| g.degree() - 2).max().unwrap_or(0);
    let traces = if max_trace == 0 {
        Vec::new()
    } else {
        let pw = powers(p.x(), max_trace);
        tg.iter()
            .map(|g| match g {
                Generator::Trace(i) => pw[*i].trace(),
                _ => unreachable!(),
            })
            .collect()
    };
    let w = krylov(p.x(), p.u(), max_vec);
    let bu = group.form().ok().map(|b| b.mul_vec(p.u()));
    let pairings = pg
        .iter()
        .map(|g| match g {
            Generator::Mu(j) => dot(p.v().expect("GL point carries v"), &w[*j]),
            Generator::Eta(j) => dot(&w[*j], bu.as_ref().expect("form group")),
            Generator::Trace(_) => unreachable!(),
        })
        .collect();
    InvariantVector {
        kind: family.kind(),
        rank,
        traces,
        pairings,
    }
}

/// Equality of closed orbits via equality of invariants.
///
/// Both orbits must be closed; the caller certifies this.
pub fn closed_orbit_equal(x: &EnhancedPoint, y: &EnhancedPoint) -> Result<bool> {
    if x.group() != y.group() {
        return Err(Error::DescriptorMismatch(format!(
            "{} vs {}",
            x.group(),
            y.group()
        )));
    }
    Ok(quotient_map(x) == quotient_map(y))
}

/// Tangent directions spanning `g × E`.
pub fn tangent_basis(group: &Group) -> Vec<Tangent> {
    let m = group.size();
    let gl = group.kind() == Kind::Gl;
    let zero_v = gl.then(|| vec![Scalar::zero(); m]);
    let mut out: Vec<Tangent> = group
        .lie_algebra_basis()
        .into_iter()
        .map(|z| Tangent {
            dx: z,
            du: vec![Scalar::zero(); m],
            dv: zero_v.clone(),
        })
        .collect();
    for a in 0..m {
        let mut du = vec![Scalar::zero(); m];
        du[a] = Scalar::one();
        out.push(Tangent {
            dx: Mat::zeros(m, m),
            du,
            dv: zero_v.clone(),
        });
    }
    if gl {
        for a in 0..m {
            let mut dv = vec![Scalar::zero(); m];
            dv[a] = Scalar::one();
            out.push(Tangent {
                dx: Mat::zeros(m, m),
                du: vec![Scalar::zero(); m],
                dv: Some(dv),
            });
        }
    }
    out
}

/// Rank of the differential of the quotient map at `p`.
pub fn invariant_jacobian_rank(p: &EnhancedPoint) -> usize {
    let rows: Vec<Vec<Scalar>> = tangent_basis(p.group())
        .iter()
        .map(|t| jet_eval_all(p, t).into_iter().map(|(_, d)| d).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    Mat::from_fn(rows.len(), cols, |i, j| rows[i][j].clone()).rank()
}
