//! Deterministic generation of group elements and points.

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

use super::group::{twist, Group, Kind, Symmetry};
use super::point::{EnhancedPoint, MvwElement, Sign};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};

/// `(I - A)(I + A)⁻¹`.
pub fn cayley(a: &Mat, group: &Group) -> Result<Mat> {
    if !group.in_lie_algebra(a)? {
        return Err(Error::NotInLieAlgebra);
    }
    let id = Mat::identity(a.rows());
    let plus = (&id + a)
        .inverse()
        .map_err(|_| Error::Singular("I + A is singular".into()))?;
    let g = &(&id - a) * &plus;
    if group.kind() == Kind::Gl && g.rank() < g.rows() {
        return Err(Error::Singular("I - A is singular".into()));
    }
    Ok(g)
}

/// Random small rational `k/d` with `k ∈ [-3, 3]`, `d ∈ {1, 2}`.
fn pool<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

fn pool_vec<R: Rng>(rng: &mut R, m: usize) -> Vec<Scalar> {
    (0..m).map(|_| pool(rng)).collect()
}

/// A random Lie algebra element with entries from the pool.
pub fn random_lie<R: Rng>(group: &Group, rng: &mut R) -> Mat {
    let m = group.size();
    let (Ok(inv), Some(sym)) = (group.form_inverse(), group.symmetry()) else {
        return Mat::from_fn(m, m, |_, _| pool(rng));
    };
    let mut s = Mat::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let x = pool(rng);
            match sym {
                Symmetry::Symmetric if i == j => {}
                Symmetry::Symmetric => {
                    s[(j, i)] = -&x;
                    s[(i, j)] = x;
                }
                Symmetry::Antisymmetric => {
                    s[(j, i)] = x.clone();
                    s[(i, j)] = x;
                }
            }
        }
    }
    inv * &s
}

/// A random point with `X` in the Lie algebra.
pub fn random_point<R: Rng>(group: &Group, rng: &mut R) -> EnhancedPoint {
    let m = group.size();
    let x = random_lie(group, rng);
    let u = pool_vec(rng, m);
    let v = (group.kind() == Kind::Gl).then(|| pool_vec(rng, m));
    EnhancedPoint::new_unchecked(group.clone(), x, u, v)
}

/// A random element of the identity component's Cayley image.
pub fn random_element<R: Rng>(group: &Group, rng: &mut R) -> Mat {
    loop {
        let a = random_lie(group, rng);
        if let Ok(g) = cayley(&a, group) {
            return g;
        }
    }
}

fn rng_for(seed: u64) -> Pcg32 {
    Pcg32::seed_from_u64(seed)
}

/// A group element `(g, +1)` and a point, both a pure function of `seed`.
pub fn sample(group: &Group, seed: u64) -> (MvwElement, EnhancedPoint) {
    let mut rng = rng_for(seed);
    let g = random_element(group, &mut rng);
    let p = random_point(group, &mut rng);
    (MvwElement::new(g, Sign::Plus), p)
}

/// An element with `δ = -1`, a pure function of `seed`.
///
/// Symmetric forms use `(g, -1)` with `g` an isometry; the standard
/// symplectic form composes with `diag(I, -I)`, which reverses the form.
pub fn sample_twisted(group: &Group, seed: u64) -> Result<MvwElement> {
    let mut rng = rng_for(seed ^ 0x9e37_79b9_7f4a_7c15);
    let g = random_element(group, &mut rng);
    let g = match (group.kind(), group.symmetry()) {
        (Kind::Sp, _) => &g * &twist(group.rank()),
        (_, Some(Symmetry::Antisymmetric)) => {
            return Err(Error::Unsupported(
                "twisted sampling for an arbitrary alternating Gram matrix".into(),
            ))
        }
        _ => g,
    };
    Ok(MvwElement::new(g, Sign::Minus))
}
