//! Jet orders, η-signatures and fiber representatives of nilpotent fibers.

use std::fmt;

use serde::Serialize;

use super::build::build_nilpotent;
use super::seed::{coefficient_count, leading_index, NilpotentSeed};
use crate::error::{Error, Result};
use crate::invariants::{quotient_map, InvariantVector};
use crate::linalg::{Mat, Scalar};
use crate::rep::{EnhancedPoint, Family, Group, Kind};

/// Jet order of a nilpotent fiber, read off the last nonzero pairing.
pub fn extract_jet_order(iv: &InvariantVector) -> Result<usize> {
    if let Some(t) = iv.traces.iter().find(|t| !t.is_zero()) {
        return Err(Error::NotNilpotent(format!(
            "trace invariant {t} is nonzero"
        )));
    }
    let last = iv.pairings.iter().rposition(|p| !p.is_zero());
    Ok(match (last, iv.family()) {
        (None, _) => 0,
        (Some(i), Family::OddOrthogonal) => i,
        (Some(i), _) => i + 1,
    })
}

/// The jet order `k` and the invariant values that determine a closed
/// nilpotent orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub k: usize,
    pub values: Vec<Scalar>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.values.iter().map(Scalar::to_string).collect();
        write!(f, "({}; {})", self.k, vs.join(", "))
    }
}

fn truncate(iv: &InvariantVector, k: usize) -> Signature {
    let len = match iv.family() {
        Family::OddOrthogonal => k + 1,
        _ => k,
    };
    Signature {
        k,
        values: iv.pairings[..len.min(iv.pairings.len())].to_vec(),
    }
}

/// Signature of a point with nilpotent `X`.
pub fn eta_signature(p: &EnhancedPoint) -> Result<Signature> {
    if !p.is_nilpotent() {
        return Err(Error::NotNilpotent("X is not nilpotent".into()));
    }
    let iv = quotient_map(p);
    let k = extract_jet_order(&iv)?;
    Ok(truncate(&iv, k))
}

/// Signature of a seed, with `k` taken from the seed itself.
pub fn seed_signature(seed: &NilpotentSeed) -> Result<Signature> {
    let iv = quotient_map(&build_nilpotent(seed)?);
    Ok(truncate(&iv, seed.k))
}

/// Ambient coordinates of the seed coefficients.
fn slots(kind: Kind, n: usize, k: usize) -> Vec<usize> {
    match kind {
        Kind::Oodd => (0..=k).chain(n + 1..n + 1 + k).collect(),
        _ => (0..k).chain(n..n + k).collect(),
    }
}

/// Quadratic form `u ↦ ⟨X^j u, u⟩` restricted to the seed coordinates, symmetrized.
fn restricted_forms(x: &Mat, b: &Mat, pos: &[usize], degrees: &[usize]) -> Vec<Mat> {
    let r = pos.len();
    degrees
        .iter()
        .map(|&j| {
            let full = &x.pow(j).transpose() * b;
            let half = Scalar::ratio(1, 2);
            Mat::from_fn(r, r, |a, c| {
                &(&full[(pos[a], pos[c])] + &full[(pos[c], pos[a])]) * &half
            })
        })
        .collect()
}

/// Solves `qᵗ Q q = target` linearly in one unknown, fixing every other
/// unknown the equation touches to zero.
fn solve_linear(q: &Mat, target: &Scalar, values: &mut [Option<Scalar>]) -> Result<()> {
    let r = values.len();
    let mut constant = Scalar::zero();
    for a in 0..r {
        for c in 0..r {
            if let (Some(x), Some(y)) = (&values[a], &values[c]) {
                constant += &(&q[(a, c)] * &(x * y));
            }
        }
    }
    let touched: Vec<usize> = (0..r)
        .filter(|&a| values[a].is_none() && (0..r).any(|c| !q[(a, c)].is_zero()))
        .collect();
    let pivot = touched.iter().copied().find_map(|a| {
        if !q[(a, a)].is_zero() {
            return None;
        }
        let lin: Scalar = (0..r)
            .filter_map(|c| values[c].as_ref().map(|v| &q[(a, c)] * v))
            .sum::<Scalar>()
            * Scalar::from_int(2);
        (!lin.is_zero()).then_some((a, lin))
    });
    let rhs = target - &constant;
    match pivot {
        Some((a, lin)) => {
            for &t in &touched {
                values[t] = Some(Scalar::zero());
            }
            values[a] = Some(&rhs / &lin);
            Ok(())
        }
        None if rhs.is_zero() => {
            for &t in &touched {
                values[t] = Some(Scalar::zero());
            }
            Ok(())
        }
        None => Err(Error::ExtensionTower(
            "pairing equation is not linear in a free coefficient".into(),
        )),
    }
}

/// A canonical nilpotent point in the fiber over `iv`.
pub fn representative_from_invariants(
    group: &Group,
    iv: &InvariantVector,
) -> Result<EnhancedPoint> {
    if !iv.matches(group) {
        return Err(Error::DescriptorMismatch(format!(
            "invariants of {} {} for {group}",
            iv.kind, iv.rank
        )));
    }
    let kind = group.kind();
    if kind == Kind::Gram {
        return Err(Error::Unsupported(
            "representatives are built for the standard groups".into(),
        ));
    }
    let k = extract_jet_order(iv)?;
    let n = group.rank();
    let coeffs = if kind == Kind::Gl {
        iv.pairings[..k].to_vec()
    } else {
        solve_coefficients(kind, n, k, iv)?
    };
    let seed = NilpotentSeed::new(kind, n, k, coeffs)?;
    let p = build_nilpotent(&seed)?;
    if &quotient_map(&p) != iv {
        return Err(Error::Internal(
            "representative does not reproduce the invariants".into(),
        ));
    }
    Ok(p)
}

fn solve_coefficients(kind: Kind, n: usize, k: usize, iv: &InvariantVector) -> Result<Vec<Scalar>> {
    let count = coefficient_count(kind, k);
    let Some(lead) = leading_index(kind, k).or((kind == Kind::Oodd).then_some(0)) else {
        return Ok(Vec::new());
    };
    let group = Group::standard(kind, n);
    // any coefficients with the right shape give the right X
    let mut probe = vec![Scalar::zero(); count];
    probe[lead] = Scalar::one();
    if kind == Kind::Oeven && k == 1 {
        probe[0] = Scalar::one();
    }
    let x = if kind == Kind::Oodd && k == 0 {
        Mat::zeros(group.size(), group.size())
    } else {
        build_nilpotent(&NilpotentSeed::new(kind, n, k, probe)?)?
            .x()
            .clone()
    };
    let sig = truncate(iv, k);
    let degrees: Vec<usize> = match kind {
        Kind::Sp => (0..k).map(|i| 2 * i + 1).collect(),
        _ => (0..sig.values.len()).map(|i| 2 * i).collect(),
    };
    let forms = restricted_forms(&x, group.form()?, &slots(kind, n, k), &degrees);
    let mut values: Vec<Option<Scalar>> = vec![None; count];
    let top = forms.len() - 1;
    let target = &sig.values[top];
    let qt = &forms[top];
    let diagonal_only =
        (0..count).all(|a| (0..count).all(|c| (a == lead && c == lead) || qt[(a, c)].is_zero()));
    if !qt[(lead, lead)].is_zero() && diagonal_only {
        let square = target / &qt[(lead, lead)];
        let rational = square.as_rational().ok_or_else(|| {
            Error::ExtensionTower(format!(
                "square root of {square} leaves the quadratic extension"
            ))
        })?;
        values[lead] = Some(Scalar::sqrt_rational(rational)?);
    } else {
        values[lead] = Some(Scalar::one());
        solve_linear(qt, target, &mut values)?;
    }
    for j in (0..top).rev() {
        solve_linear(&forms[j], &sig.values[j], &mut values)?;
    }
    Ok(values
        .into_iter()
        .map(|v| v.unwrap_or_else(Scalar::zero))
        .collect())
}
