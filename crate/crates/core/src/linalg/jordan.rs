//! Jordan–Chevalley decomposition by Newton iteration.

use super::matrix::Mat;
use super::poly::{char_poly, Poly};
use crate::error::{Error, Result};

/// Splits `x = s + n` with `s` semisimple, `n` nilpotent and `sn = ns`.
///
/// Valid over any field of characteristic zero: `s` is the limit of Newton's
/// method applied to the square-free part `q` of the characteristic
/// polynomial, `s ← s - q(s)·q'(s)⁻¹`, which terminates after about
/// `log₂(size)` steps.
pub fn jordan_chevalley(x: &Mat) -> Result<(Mat, Mat)> {
    if !x.is_square() {
        return Err(Error::Shape(
            "Jordan–Chevalley decomposition of a non-square matrix".into(),
        ));
    }
    let q = char_poly(x).square_free_part();
    let dq = q.derivative();
    let mut s = x.clone();
    for _ in 0..=usize::BITS {
        let qs = q.eval_mat(&s);
        if qs.is_zero() {
            let n = x - &s;
            return Ok((s, n));
        }
        let step = &qs * &dq.eval_mat(&s).inverse()?;
        s = &s - &step;
    }
    Err(Error::Internal("Newton iteration did not converge".into()))
}

/// Square-free part of the characteristic polynomial.
pub fn reduced_char_poly(x: &Mat) -> Poly {
    char_poly(x).square_free_part()
}
