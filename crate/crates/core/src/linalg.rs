//! Small dense helpers on fixed-size real vectors.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Rank tolerance used by [`gram_schmidt`].
pub const RANK_TOL: f64 = 1e-10;

pub fn dot<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<T: Real, const N: usize>(a: &[T; N]) -> T {
    dot(a, a).sqrt()
}

pub fn axpy<T: Real, const N: usize>(alpha: T, x: &[T; N], y: &mut [T; N]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale<T: Real, const N: usize>(alpha: T, x: &[T; N]) -> [T; N] {
    let mut out = *x;
    for v in out.iter_mut() {
        *v *= alpha;
    }
    out
}

pub fn sub<T: Real, const N: usize>(a: &[T; N], b: &[T; N]) -> [T; N] {
    let mut out = *a;
    for (o, &bi) in out.iter_mut().zip(b) {
        *o -= bi;
    }
    out
}

/// Modified Gram–Schmidt. A vector whose residual norm drops below
/// `RANK_TOL` relative to the largest input norm makes the frame degenerate.
pub fn gram_schmidt<T: Real, const N: usize>(vectors: &[[T; N]]) -> Result<Vec<[T; N]>> {
    let scale_ref = vectors
        .iter()
        .map(norm)
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    let tol = T::lit(RANK_TOL) * if scale_ref > T::zero() { scale_ref } else { T::one() };
    let mut basis: Vec<[T; N]> = Vec::with_capacity(vectors.len());
    for (rank, v) in vectors.iter().enumerate() {
        let mut w = *v;
        for q in &basis {
            let c = dot(q, &w);
            axpy(-c, q, &mut w);
        }
        let n = norm(&w);
        if !(n > tol) {
            return Err(Error::DegenerateFrame {
                rank,
                expected: vectors.len(),
            });
        }
        basis.push(scale(T::one() / n, &w));
    }
    Ok(basis)
}

/// Orthogonal projection of `v` onto the orthogonal complement of the span
/// of the orthonormal family `basis`.
pub fn reject<T: Real, const N: usize>(v: &[T; N], basis: &[[T; N]]) -> [T; N] {
    let mut w = *v;
    for q in basis {
        let c = dot(q, &w);
        axpy(-c, q, &mut w);
    }
    w
}
