//! Exact sign predicates.

use std::cmp::Ordering;

use super::embed::refine_sign;
use super::{CycloError, CycloNum};

pub(crate) fn sign_real(a: &CycloNum) -> Ordering {
    if (a + &a.conj()).is_zero() {
        return Ordering::Equal;
    }
    refine_sign(a, false)
}

pub(crate) fn sign_imag(a: &CycloNum) -> Ordering {
    if a.is_rational() || (a - &a.conj()).is_zero() {
        return Ordering::Equal;
    }
    refine_sign(a, true)
}

/// Greater when `r` lies strictly left of the directed line p → q.
pub fn orientation(p: &CycloNum, q: &CycloNum, r: &CycloNum) -> Ordering {
    ((q - p).conj() * (r - p)).sign_imag()
}

/// Greater when `d` lies strictly inside the circle through `a`, `b`, `c`,
/// Equal when the four points are cocircular. The answer does not depend on
/// the orientation of the triangle.
pub fn incircle(a: &CycloNum, b: &CycloNum, c: &CycloNum, d: &CycloNum) -> Result<Ordering, CycloError> {
    let turn = orientation(a, b, c);
    if turn == Ordering::Equal {
        return Err(CycloError::DegenerateTriangle);
    }
    let (x, y, z) = (a - d, b - d, c - d);
    // Im(|x|² conj(y) z + |y|² conj(z) x + |z|² conj(x) y) is the lifted determinant.
    let det = x.norm_squared() * y.conj() * &z + y.norm_squared() * z.conj() * &x + z.norm_squared() * x.conj() * &y;
    let s = det.sign_imag();
    Ok(if turn == Ordering::Greater { s } else { s.reverse() })
}
