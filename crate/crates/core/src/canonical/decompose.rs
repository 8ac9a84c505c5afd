//! Jordan–Chevalley splitting and the eigenspace decomposition of a point.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{char_poly, jordan_chevalley, Mat, Scalar};
use crate::rep::{EnhancedPoint, Group, Kind, Symmetry};

/// Semisimple and nilpotent parts together with the rational spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleSplit {
    pub semisimple: Mat,
    pub nilpotent: Mat,
    /// Distinct eigenvalues in increasing order with algebraic multiplicities.
    pub spectrum: Vec<(Scalar, usize)>,
}

impl SemisimpleSplit {
    pub fn multiplicity(&self, c: &Scalar) -> usize {
        self.spectrum
            .iter()
            .find(|(e, _)| e == c)
            .map_or(0, |(_, m)| *m)
    }

    /// Eigenvalues of a Lie algebra element of a form group, paired as
    /// `(c, mult)` with `c > 0` standing for `±c`, and the multiplicity of `0`.
    pub fn paired(&self) -> (Vec<(Scalar, usize)>, usize) {
        let pairs = self
            .spectrum
            .iter()
            .filter(|(c, _)| c.rational_part().is_positive())
            .cloned()
            .collect();
        (pairs, self.multiplicity(&Scalar::zero()))
    }
}

/// Jordan–Chevalley decomposition of a rational matrix whose characteristic
/// polynomial splits over the rationals.
pub fn semisimple_split(x: &Mat) -> Result<SemisimpleSplit> {
    if x.radicand()?.is_some() {
        return Err(Error::Unsupported(
            "spectral decomposition needs a rational matrix".into(),
        ));
    }
    let chi = char_poly(x);
    let roots = chi.rational_roots()?;
    let spectrum: Vec<(Scalar, usize)> = roots
        .into_iter()
        .map(|r: BigRational| {
            let c = Scalar::from_rational(r);
            let mult = chi.root_multiplicity(&c);
            (c, mult)
        })
        .collect();
    let found: usize = spectrum.iter().map(|(_, m)| m).sum();
    if found != x.rows() {
        return Err(Error::NonSplit(format!(
            "characteristic polynomial {chi} has only {found} of {} roots over Q",
            x.rows()
        )));
    }
    let (semisimple, nilpotent) = jordan_chevalley(x)?;
    Ok(SemisimpleSplit {
        semisimple,
        nilpotent,
        spectrum,
    })
}

/// The restriction of a point to one pair of eigenspaces, as a point of a
/// general linear group: nilpotent part on `E_c`, the `E_c`-component of `u`
/// and the pairing of the `E_{-c}`-component with the `E_c` basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlPart {
    pub eigenvalue: Scalar,
    pub point: EnhancedPoint,
}

/// Factors of the centralizer of the semisimple part and the point's
/// components on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerFactors {
    /// Nilpotent point on the zero eigenspace with the restricted Gram
    /// matrix; absent for the general linear group.
    pub zero: Option<EnhancedPoint>,
    pub gl_parts: Vec<GlPart>,
}

impl CentralizerFactors {
    /// Total size of the blocks, counting each `E_c ⊕ E_{-c}` twice for form groups.
    pub fn size(&self) -> usize {
        let pairs: usize = self.gl_parts.iter().map(|p| p.point.group().size()).sum();
        match &self.zero {
            None => pairs,
            Some(z) => z.group().size() + 2 * pairs,
        }
    }

    /// Reassembles the block data into a point over the adapted basis, whose
    /// invariants agree with those of the decomposed point.
    pub fn reassemble(&self) -> Result<EnhancedPoint> {
        let Some(zero) = &self.zero else {
            let m = self.size();
            let mut x = Mat::zeros(m, m);
            let (mut u, mut v) = (Vec::with_capacity(m), Vec::with_capacity(m));
            let mut at = 0;
            for part in &self.gl_parts {
                let r = part.point.group().size();
                x.place(
                    at,
                    at,
                    &(&Mat::identity(r).scale(&part.eigenvalue) + part.point.x()),
                )?;
                u.extend_from_slice(part.point.u());
                v.extend_from_slice(part.point.v().expect("GL part"));
                at += r;
            }
            return EnhancedPoint::new(Group::gl(m), x, u, Some(v));
        };
        let symmetry = zero.group().symmetry().expect("zero part carries a form");
        let sign = match symmetry {
            Symmetry::Symmetric => Scalar::one(),
            Symmetry::Antisymmetric => Scalar::from_int(-1),
        };
        let m0 = zero.group().size();
        let s: usize = self.gl_parts.iter().map(|p| p.point.group().size()).sum();
        let m = m0 + 2 * s;
        let mut gram = Mat::zeros(m, m);
        gram.place(0, 0, zero.group().form()?)?;
        let mut x = Mat::zeros(m, m);
        x.place(0, 0, zero.x())?;
        let mut u = zero.u().to_vec();
        u.resize(m, Scalar::zero());
        let mut at = m0;
        for part in &self.gl_parts {
            let r = part.point.group().size();
            let id = Mat::identity(r);
            gram.place(at, at + s, &id)?;
            gram.place(at + s, at, &id.scale(&sign))?;
            let block = &id.scale(&part.eigenvalue) + part.point.x();
            x.place(at, at, &block)?;
            x.place(at + s, at + s, &-&block.transpose())?;
            u[at..at + r].clone_from_slice(part.point.u());
            u[at + s..at + s + r].clone_from_slice(part.point.v().expect("GL part"));
            at += r;
        }
        EnhancedPoint::new(Group::gram(gram, symmetry)?, x, u, None)
    }
}

/// Columns spanning `ker (X - cI)^mult`.
fn eigenspace(x: &Mat, c: &Scalar, mult: usize) -> Mat {
    let shifted = x - &Mat::identity(x.rows()).scale(c);
    let basis = shifted.pow(mult).kernel_basis();
    Mat::from_columns(x.rows(), &basis)
}

fn hstack(blocks: &[&Mat], rows: usize) -> Mat {
    let cols: Vec<Vec<Scalar>> = blocks
        .iter()
        .flat_map(|b| (0..b.cols()).map(|j| b.column(j)))
        .collect();
    Mat::from_columns(rows, &cols)
}

/// Splits a point along the generalized eigenspaces of its semisimple part.
pub fn centralizer_decomposition(p: &EnhancedPoint) -> Result<CentralizerFactors> {
    let split = semisimple_split(p.x())?;
    let group = p.group();
    let m = group.size();
    if group.kind() == Kind::Gl {
        let spaces: Vec<Mat> = split
            .spectrum
            .iter()
            .map(|(c, r)| eigenspace(p.x(), c, *r))
            .collect();
        let basis = hstack(&spaces.iter().collect::<Vec<_>>(), m);
        let inv = basis.inverse()?;
        let x = &(&inv * p.x()) * &basis;
        let u = inv.mul_vec(p.u());
        let v = basis.vec_mul(p.v().expect("GL point carries v"));
        let mut parts = Vec::with_capacity(spaces.len());
        let mut at = 0;
        for (c, r) in &split.spectrum {
            let idx: Vec<usize> = (at..at + r).collect();
            let n = &x.submatrix(&idx, &idx) - &Mat::identity(*r).scale(c);
            let point = EnhancedPoint::new(
                Group::gl(*r),
                n,
                u[at..at + r].to_vec(),
                Some(v[at..at + r].to_vec()),
            )?;
            parts.push(GlPart {
                eigenvalue: c.clone(),
                point,
            });
            at += r;
        }
        return Ok(CentralizerFactors {
            zero: None,
            gl_parts: parts,
        });
    }
    let b = group.form()?;
    let symmetry = group.symmetry().expect("form group");
    let (pairs, r0) = split.paired();
    let zero_space = eigenspace(p.x(), &Scalar::zero(), r0);
    let mut plus = Vec::with_capacity(pairs.len());
    let mut minus = Vec::with_capacity(pairs.len());
    for (c, r) in &pairs {
        let ec = eigenspace(p.x(), c, *r);
        let emc = eigenspace(p.x(), &-c, *r);
        // rescale E_{-c} so that the pairing with E_c is the identity
        let pairing = &(&ec.transpose() * b) * &emc;
        let emc = &emc
            * &pairing
                .inverse()
                .map_err(|_| Error::Internal("eigenspaces are not dually paired".into()))?;
        plus.push(ec);
        minus.push(emc);
    }
    let mut cols: Vec<&Mat> = vec![&zero_space];
    cols.extend(plus.iter());
    cols.extend(minus.iter());
    let basis = hstack(&cols, m);
    let inv = basis.inverse()?;
    let x = &(&inv * p.x()) * &basis;
    let u = inv.mul_vec(p.u());
    let zidx: Vec<usize> = (0..r0).collect();
    let gram0 = &(&zero_space.transpose() * b) * &zero_space;
    let zero_group = Group::gram(gram0, symmetry).map_err(|_| {
        Error::Internal("restricted form on the zero eigenspace is degenerate".into())
    })?;
    let zero = EnhancedPoint::new(
        zero_group,
        x.submatrix(&zidx, &zidx),
        u[..r0].to_vec(),
        None,
    )?;
    let s: usize = pairs.iter().map(|(_, r)| r).sum();
    let mut parts = Vec::with_capacity(pairs.len());
    let mut at = r0;
    for (c, r) in &pairs {
        let idx: Vec<usize> = (at..at + r).collect();
        let n = &x.submatrix(&idx, &idx) - &Mat::identity(*r).scale(c);
        let point = EnhancedPoint::new(
            Group::gl(*r),
            n,
            u[at..at + r].to_vec(),
            Some(u[at + s..at + s + r].to_vec()),
        )?;
        parts.push(GlPart {
            eigenvalue: c.clone(),
            point,
        });
        at += r;
    }
    Ok(CentralizerFactors {
        zero: Some(zero),
        gl_parts: parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::build::build_closed;
    use crate::canonical::seed::{ClosedSeed, EigenBlock, NilpotentSeed};
    use crate::invariants::quotient_map;
    use crate::linalg::minimal_poly;
    use crate::rep::act;
    use crate::rep::sample::sample;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn split_examples() {
        let d = Mat::diag(&ints(&[1, 0, -1, 0]));
        let s = semisimple_split(&d).unwrap();
        assert_eq!(s.semisimple, d);
        assert!(s.nilpotent.is_zero());
        assert_eq!(
            s.spectrum,
            vec![
                (Scalar::from_int(-1), 1),
                (Scalar::zero(), 2),
                (Scalar::one(), 1)
            ]
        );
        let t = Mat::from_ints(&[[1, 1], [0, 2]]);
        let s = semisimple_split(&t).unwrap();
        assert_eq!(s.semisimple, t);
        assert_eq!(
            s.spectrum,
            vec![(Scalar::one(), 1), (Scalar::from_int(2), 1)]
        );
        let comp = Mat::from_ints(&[[0, -1], [1, 0]]);
        assert!(matches!(semisimple_split(&comp), Err(Error::NonSplit(_))));
    }

    #[test]
    fn sp_decomposition_example() {
        let p = EnhancedPoint::new(
            Group::sp(2),
            Mat::diag(&ints(&[1, 0, -1, 0])),
            ints(&[1, 0, 1, 0]),
            None,
        )
        .unwrap();
        let f = centralizer_decomposition(&p).unwrap();
        let zero = f.zero.as_ref().unwrap();
        assert_eq!(zero.group().size(), 2);
        assert!(zero.is_zero());
        assert_eq!(f.gl_parts.len(), 1);
        let part = &f.gl_parts[0];
        assert_eq!(part.eigenvalue, Scalar::one());
        assert!(part.point.x().is_zero());
        assert_eq!(part.point.u(), ints(&[1]).as_slice());
        assert_eq!(part.point.v().unwrap(), ints(&[1]).as_slice());
    }

    #[test]
    fn gl_decomposition_example() {
        let p = EnhancedPoint::new(
            Group::gl(2),
            Mat::diag(&ints(&[1, 2])),
            ints(&[1, 1]),
            Some(ints(&[1, 0])),
        )
        .unwrap();
        let f = centralizer_decomposition(&p).unwrap();
        let got: Vec<(Scalar, Vec<Scalar>, Vec<Scalar>)> = f
            .gl_parts
            .iter()
            .map(|g| {
                (
                    g.eigenvalue.clone(),
                    g.point.u().to_vec(),
                    g.point.v().unwrap().to_vec(),
                )
            })
            .collect();
        assert_eq!(
            got,
            vec![
                (Scalar::one(), ints(&[1]), ints(&[1])),
                (Scalar::from_int(2), ints(&[1]), ints(&[0]))
            ]
        );
    }

    #[test]
    fn nilpotent_input_is_its_own_zero_part() {
        let p = crate::canonical::build::build_nilpotent(
            &NilpotentSeed::from_ints(Kind::Oodd, 2, 1, &[1, 0, 2]).unwrap(),
        )
        .unwrap();
        let f = centralizer_decomposition(&p).unwrap();
        assert!(f.gl_parts.is_empty());
        let z = f.zero.unwrap();
        assert_eq!(z.x(), p.x());
        assert_eq!(z.u(), p.u());
    }

    fn closed_seeds() -> Vec<ClosedSeed> {
        let gl = |c: i64, n: usize, k: usize, y: &[i64]| EigenBlock {
            eigenvalue: Scalar::from_int(c),
            seed: NilpotentSeed::from_ints(Kind::Gl, n, k, y).unwrap(),
        };
        vec![
            ClosedSeed::new(
                Kind::Gl,
                3,
                None,
                vec![gl(0, 2, 2, &[1, 3]), gl(-2, 1, 1, &[1])],
            )
            .unwrap(),
            ClosedSeed::new(
                Kind::Sp,
                3,
                Some(NilpotentSeed::from_ints(Kind::Sp, 1, 1, &[1, 2]).unwrap()),
                vec![gl(1, 2, 1, &[2])],
            )
            .unwrap(),
            ClosedSeed::new(
                Kind::Oodd,
                2,
                None,
                vec![gl(3, 1, 1, &[1]), gl(1, 1, 0, &[])],
            )
            .unwrap(),
            ClosedSeed::new(
                Kind::Oeven,
                3,
                Some(NilpotentSeed::from_ints(Kind::Oeven, 1, 1, &[1, 1]).unwrap()),
                vec![gl(-1, 2, 2, &[1, 1])],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn decomposition_of_conjugated_closed_points() {
        for seed in closed_seeds() {
            let p = build_closed(&seed).unwrap();
            for s in 0..3 {
                let (e, _) = sample(p.group(), s);
                let q = act(&e, &p).unwrap();
                let f = centralizer_decomposition(&q).unwrap();
                assert_eq!(f.size(), q.group().size());
                for part in &f.gl_parts {
                    assert!(part.point.is_nilpotent());
                }
                if let Some(z) = &f.zero {
                    assert!(z.is_nilpotent());
                    assert_eq!(z.group().form().unwrap().rank(), z.group().size());
                }
                let r = f.reassemble().unwrap();
                let (a, b) = (quotient_map(&r), quotient_map(&q));
                assert_eq!((a.traces, a.pairings), (b.traces, b.pairings));
            }
        }
    }

    fn random_split(rng: &mut impl Rng) -> Mat {
        // conjugate a block upper-triangular matrix with rational diagonal
        let n = 5;
        let d: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let t = Mat::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::from_int(d[i])
            } else if j > i && rng.gen_bool(0.5) {
                Scalar::from_int(rng.gen_range(-2..=2))
            } else {
                Scalar::zero()
            }
        });
        loop {
            let g = Mat::from_fn(n, n, |_, _| Scalar::from_int(rng.gen_range(-2..=2)));
            if let Ok(inv) = g.inverse() {
                return &(&g * &t) * &inv;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn split_postconditions(seed in any::<u64>()) {
            let mut rng = rand_pcg::Pcg32::seed_from_u64(seed);
            let x = random_split(&mut rng);
            let s = semisimple_split(&x).unwrap();
            prop_assert_eq!(&(&s.semisimple + &s.nilpotent), &x);
            prop_assert!(s.semisimple.commutator(&s.nilpotent).is_zero());
            prop_assert!(s.nilpotent.pow(5).is_zero());
            let q = minimal_poly(&s.semisimple);
            prop_assert_eq!(q.gcd(&q.derivative()).degree(), Some(0));
        }
    }
}
