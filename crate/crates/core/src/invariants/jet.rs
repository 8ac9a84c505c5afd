//! First-order jets of the generators along a tangent direction.

use super::{generators, krylov, powers, Generator};
use crate::linalg::{dot, Mat, Scalar};
use crate::rep::{EnhancedPoint, Family};

/// A tangent vector `(dX, du[, dv])` to `g × E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangent {
    pub dx: Mat,
    pub du: Vec<Scalar>,
    pub dv: Option<Vec<Scalar>>,
}

impl Tangent {
    pub fn zero(p: &EnhancedPoint) -> Tangent {
        let m = p.group().size();
        Tangent {
            dx: Mat::zeros(m, m),
            du: vec![Scalar::zero(); m],
            dv: p.v().map(|_| vec![Scalar::zero(); m]),
        }
    }
}

/// A value together with its derivative, `a + ε·b` with `ε² = 0`.
#[derive(Clone, Debug)]
struct Dual<T> {
    val: T,
    der: T,
}

/// Jets of `X^i` for `i = 0..=max`.
fn power_jets(x: &Mat, dx: &Mat, max: usize) -> Vec<Dual<Mat>> {
    let m = x.rows();
    let mut out = vec![Dual {
        val: Mat::identity(m),
        der: Mat::zeros(m, m),
    }];
    let vals = powers(x, max);
    for i in 1..=max {
        let prev = &out[i - 1];
        // (X + εD)·(P + εdP) = XP + ε(DP + X·dP)
        let der = if dx.is_zero() {
            Mat::zeros(m, m)
        } else {
            &(dx * &prev.val) + &(x * &prev.der)
        };
        out.push(Dual {
            val: vals[i].clone(),
            der,
        });
    }
    out
}

/// Jets of `X^j u` for `j = 0..=max`.
fn krylov_jets(
    x: &Mat,
    dx: &Mat,
    u: &[Scalar],
    du: &[Scalar],
    max: usize,
) -> Vec<Dual<Vec<Scalar>>> {
    let vals = krylov(x, u, max);
    let mut out = vec![Dual {
        val: vals[0].clone(),
        der: du.to_vec(),
    }];
    for j in 1..=max {
        let prev = &out[j - 1];
        let a = dx.mul_vec(&prev.val);
        let b = x.mul_vec(&prev.der);
        let der = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        out.push(Dual {
            val: vals[j].clone(),
            der,
        });
    }
    out
}

/// `(f(p), Df(p)[t])` for every generator of the group, in order.
pub fn jet_eval_all(p: &EnhancedPoint, t: &Tangent) -> Vec<(Scalar, Scalar)> {
    let group = p.group();
    let family = group.family();
    let rank = match family {
        Family::Linear => group.size(),
        _ => group.size() / 2,
    };
    let (tg, pg) = generators(family, rank);
    let all: Vec<Generator> = tg.into_iter().chain(pg).collect();
    eval_many(p, t, &all)
}

/// `(f(p), Df(p)[t])` for a single generator.
pub fn jet_eval(generator: Generator, p: &EnhancedPoint, t: &Tangent) -> (Scalar, Scalar) {
    eval_many(p, t, &[generator]).pop().expect("one generator")
}

fn eval_many(p: &EnhancedPoint, t: &Tangent, gens: &[Generator]) -> Vec<(Scalar, Scalar)> {
    let x = p.x();
    let max_trace = gens
        .iter()
        .filter_map(|g| {
            if let Generator::Trace(i) = g {
                Some(*i)
            } else {
                None
            }
        })
        .max()
        .unwrap_or(0);
    let max_vec = gens
        .iter()
        .filter_map(|g| match g {
            Generator::Mu(j) | Generator::Eta(j) => Some(*j),
            Generator::Trace(_) => None,
        })
        .max();
    let pj = power_jets(x, &t.dx, max_trace);
    let wj = max_vec.map(|mv| krylov_jets(x, &t.dx, p.u(), &t.du, mv));
    let form = p.group().form().ok();
    let (bu, bdu) = match form {
        Some(b) => (Some(b.mul_vec(p.u())), Some(b.mul_vec(&t.du))),
        None => (None, None),
    };
    gens.iter()
        .map(|g| match *g {
            Generator::Trace(i) => (pj[i].val.trace(), pj[i].der.trace()),
            Generator::Mu(j) => {
                let w = &wj.as_ref().unwrap()[j];
                let v = p.v().expect("GL point carries v");
                let dv = t.dv.as_deref().expect("GL tangent carries dv");
                (dot(v, &w.val), &dot(dv, &w.val) + &dot(v, &w.der))
            }
            Generator::Eta(j) => {
                let w = &wj.as_ref().unwrap()[j];
                let bu = bu.as_ref().expect("form group");
                let bdu = bdu.as_ref().expect("form group");
                (dot(&w.val, bu), &dot(&w.der, bu) + &dot(&w.val, bdu))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{group_generators, quotient_map};
    use crate::rep::sample::{random_lie, random_point};
    use crate::rep::{Group, Kind};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn trace_square_along_lower_unit() {
        let p = EnhancedPoint::new(
            Group::gl(2),
            Mat::jordan(2),
            ints(&[0, 0]),
            Some(ints(&[0, 0])),
        )
        .unwrap();
        let t = Tangent {
            dx: Mat::unit(1, 0, 2),
            ..Tangent::zero(&p)
        };
        assert_eq!(
            jet_eval(Generator::Trace(2), &p, &t),
            (Scalar::zero(), Scalar::from_int(2))
        );
    }

    #[test]
    fn mu_zero_is_linear_in_u() {
        let p = EnhancedPoint::new(
            Group::gl(2),
            Mat::jordan(2),
            ints(&[3, 5]),
            Some(ints(&[1, 0])),
        )
        .unwrap();
        let t = Tangent {
            du: ints(&[1, 0]),
            ..Tangent::zero(&p)
        };
        assert_eq!(
            jet_eval(Generator::Mu(0), &p, &t),
            (Scalar::from_int(3), Scalar::one())
        );
    }

    #[test]
    fn zero_direction_has_zero_derivative() {
        for kind in Kind::STANDARD {
            let g = Group::standard(kind, 2);
            let p = random_point(&g, &mut rand_pcg::Pcg32::seed_from_u64(3));
            for (_, d) in jet_eval_all(&p, &Tangent::zero(&p)) {
                assert!(d.is_zero());
            }
        }
    }

    /// Lagrange interpolation of `t ↦ f(p + t·dir)` at `t = 0..=deg` and
    /// extraction of the linear coefficient.
    fn linear_coefficient(values: &[Scalar]) -> Scalar {
        let n = values.len();
        // Vandermonde solve for the coefficients
        let v = Mat::from_fn(n, n, |i, j| Scalar::from_int((i as i64).pow(j as u32)));
        v.solve(values).unwrap()[1].clone()
    }

    fn shifted(p: &EnhancedPoint, t: &Tangent, s: i64) -> EnhancedPoint {
        let s = Scalar::from_int(s);
        let x = p.x() + &t.dx.scale(&s);
        let u = p
            .u()
            .iter()
            .zip(&t.du)
            .map(|(a, b)| a + &(b * &s))
            .collect();
        let v = p.v().map(|v| {
            v.iter()
                .zip(t.dv.as_ref().unwrap())
                .map(|(a, b)| a + &(b * &s))
                .collect()
        });
        EnhancedPoint::new(p.group().clone(), x, u, v).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn derivative_matches_expansion(seed in any::<u64>(), kind_idx in 0usize..4, n in 1usize..=3) {
            let g = Group::standard(Kind::STANDARD[kind_idx], n);
            let mut rng = rand_pcg::Pcg32::seed_from_u64(seed);
            let p = random_point(&g, &mut rng);
            let m = g.size();
            let t = Tangent {
                dx: random_lie(&g, &mut rng),
                du: (0..m).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect(),
                dv: p.v().map(|_| (0..m).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect()),
            };
            let gens = group_generators(&g);
            let jets = jet_eval_all(&p, &t);
            let max_deg = gens.iter().map(|g| g.degree()).max().unwrap();
            let samples: Vec<Vec<Scalar>> = (0..=max_deg as i64)
                .map(|s| quotient_map(&shifted(&p, &t, s)).values().cloned().collect())
                .collect();
            for (k, (val, der)) in jets.iter().enumerate() {
                prop_assert_eq!(val, &samples[0][k]);
                let column: Vec<Scalar> = samples.iter().map(|row| row[k].clone()).collect();
                prop_assert_eq!(der, &linear_coefficient(&column));
            }
        }
    }
}
