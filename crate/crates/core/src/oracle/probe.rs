//! One-parameter degenerations along diagonal cocharacters.

use std::collections::HashMap;

use serde::Serialize;

use crate::linalg::{Mat, Scalar};
use crate::rep::{orbit_dim, EnhancedPoint, Kind};

/// A limit `lim_{t→0} λ(t)·p` whose orbit is strictly smaller than that of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degeneration {
    /// Exponents of `λ(t) = diag(t^{e_1}, …, t^{e_m})`.
    pub weights: Vec<i64>,
    pub limit: EnhancedPoint,
    pub orbit_dim: usize,
    pub limit_orbit_dim: usize,
}

/// Full weight vector of the standard torus for free exponents `a`.
fn weights(kind: Kind, a: &[i64]) -> Vec<i64> {
    let neg = a.iter().map(|x| -x);
    match kind {
        Kind::Gl => a.to_vec(),
        Kind::Oodd => std::iter::once(0)
            .chain(a.iter().copied())
            .chain(neg)
            .collect(),
        _ => a.iter().copied().chain(neg).collect(),
    }
}

/// `lim_{t→0} λ(t)·p` when it exists: every nonzero entry must carry a
/// nonnegative power of `t`, and the limit keeps the entries of power zero.
fn limit(p: &EnhancedPoint, e: &[i64]) -> Option<EnhancedPoint> {
    let m = e.len();
    let keep = |c: &Scalar, w: i64| -> Option<Scalar> {
        match (c.is_zero(), w.signum()) {
            (true, _) => Some(Scalar::zero()),
            (false, -1) => None,
            (false, 0) => Some(c.clone()),
            _ => Some(Scalar::zero()),
        }
    };
    let mut x = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            x[(i, j)] = keep(&p.x()[(i, j)], e[i] - e[j])?;
        }
    }
    let u = (0..m)
        .map(|i| keep(&p.u()[i], e[i]))
        .collect::<Option<Vec<_>>>()?;
    let v = match p.v() {
        Some(v) => Some(
            (0..m)
                .map(|j| keep(&v[j], -e[j]))
                .collect::<Option<Vec<_>>>()?,
        ),
        None => None,
    };
    Some(
        EnhancedPoint::new(p.group().clone(), x, u, v)
            .expect("torus limits stay in the Lie algebra"),
    )
}

/// Searches diagonal cocharacters with exponents in `[-bound, bound]` for a
/// degeneration to a smaller orbit. Finding one proves the orbit of `p` is
/// not closed; finding none is inconclusive.
pub fn degeneration_probe(p: &EnhancedPoint, bound: u32) -> Option<Degeneration> {
    let kind = p.group().kind();
    if kind == Kind::Gram {
        return None;
    }
    let r = match kind {
        Kind::Gl => p.group().size(),
        _ => p.group().rank(),
    };
    let b = bound as i64;
    let own = orbit_dim(p);
    if own == 0 {
        return None;
    }
    let mut cache: HashMap<EnhancedPoint, usize> = HashMap::new();
    let mut a = vec![-b; r];
    loop {
        let e = weights(kind, &a);
        if let Some(q) = limit(p, &e) {
            if &q != p {
                let d = *cache.entry(q.clone()).or_insert_with(|| orbit_dim(&q));
                if d < own {
                    return Some(Degeneration {
                        weights: e,
                        limit: q,
                        orbit_dim: own,
                        limit_orbit_dim: d,
                    });
                }
            }
        }
        let mut pos = 0;
        while pos < r {
            a[pos] += 1;
            if a[pos] <= b {
                break;
            }
            a[pos] = -b;
            pos += 1;
        }
        if pos == r {
            return None;
        }
    }
}
