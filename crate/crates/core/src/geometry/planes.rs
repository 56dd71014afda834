//! Transverse pairs of special Lagrangian planes and their Jordan angles.

use num_complex::Complex;

use super::lawlor::LawlorAngles;
use crate::error::{Error, Result};
use crate::g2::{associator_residual, Vec7, ASSOCIATIVE_TOL};
use crate::linalg::gram_schmidt;
use crate::scalar::Real;
use crate::spectrum::symmetric_eigen;

#[derive(Clone, Debug)]
pub struct TransversePair<T> {
    /// Frame of `Π₀ = R³`.
    pub pi0: [Vec7<T>; 3],
    /// Frame of `Π_θ = diag(e^{iθ_k})·R³`.
    pub pi_theta: [Vec7<T>; 3],
    /// `e₁`, spanning the complement of `C³`.
    pub normal: Vec7<T>,
}

fn c3_frame<T: Real>(phases: [T; 3]) -> [[Complex<T>; 3]; 3] {
    let zero = Complex::new(T::zero(), T::zero());
    std::array::from_fn(|k| {
        let mut v = [zero; 3];
        v[k] = Complex::from_polar(T::one(), phases[k]);
        v
    })
}

/// The pair `Π₀, Π_θ` inside `C³ ⊂ R⁷`, checked to be associative and
/// transverse, with `R⁷ = ⟨e₁⟩ ⊕ Π₀ ⊕ Π_θ`.
pub fn transverse_plane_pair<T: Real>(theta: &LawlorAngles<T>) -> Result<TransversePair<T>> {
    if theta.theta.iter().any(|t| !(*t > T::zero() && *t < T::PI())) {
        return Err(Error::DegenerateAngles);
    }
    let to7 = |f: [[Complex<T>; 3]; 3]| f.map(|v| Vec7::from_c3(&v));
    let pi0 = to7(c3_frame([T::zero(); 3]));
    let pi_theta = to7(c3_frame(theta.theta));
    let tol = T::lit(ASSOCIATIVE_TOL).max(T::epsilon().sqrt());
    for frame in [&pi0, &pi_theta] {
        let r = associator_residual(frame)?;
        if !(r < tol) {
            return Err(Error::InvalidInput(format!("plane is not associative (residual {r})")));
        }
    }
    let normal = Vec7::e(1);
    let all: Vec<[T; 7]> = std::iter::once(normal.0)
        .chain(pi0.iter().map(|v| v.0))
        .chain(pi_theta.iter().map(|v| v.0))
        .collect();
    gram_schmidt(&all).map_err(|_| Error::DegenerateAngles)?;
    Ok(TransversePair { pi0, pi_theta, normal })
}

/// Jordan angles `θ_k ∈ [0, π)` between two Lagrangian planes given by
/// orthonormal frames. With `U` the unitary taking the first frame to the
/// second, the symmetric unitary `U Uᵀ` has eigenvalues `e^{2iθ_k}`.
pub fn jordan_angles<T: Real>(a: &[[Complex<T>; 3]; 3], b: &[[Complex<T>; 3]; 3]) -> Result<[T; 3]> {
    // U_{jk} = ⟨a_j, b_k⟩ (Hermitian)
    let mut u = [[Complex::new(T::zero(), T::zero()); 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            u[j][k] = (0..3).map(|m| a[j][m].conj() * b[k][m]).fold(Complex::new(T::zero(), T::zero()), |s, z| s + z);
        }
    }
    let mut w = [[Complex::new(T::zero(), T::zero()); 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            w[j][k] = (0..3).map(|m| u[j][m] * u[k][m]).fold(Complex::new(T::zero(), T::zero()), |s, z| s + z);
        }
    }
    // W = X + iY with X, Y commuting real symmetric; a generic combination
    // separates their joint eigenspaces.
    let mix = T::lit(0.618_033_988_749_894_9);
    let mut m = vec![T::zero(); 9];
    for j in 0..3 {
        for k in 0..3 {
            let x = (w[j][k].re + w[k][j].re) * T::lit(0.5);
            let y = (w[j][k].im + w[k][j].im) * T::lit(0.5);
            m[j * 3 + k] = x + mix * y;
        }
    }
    let eig = symmetric_eigen(&m, 3)?;
    let mut angles = [T::zero(); 3];
    for (n, v) in eig.vectors.iter().enumerate() {
        let mut z = Complex::new(T::zero(), T::zero());
        for j in 0..3 {
            for k in 0..3 {
                z = z + w[j][k] * v[j] * v[k];
            }
        }
        let mut t = z.arg() * T::lit(0.5);
        if t < T::zero() {
            t += T::PI();
        }
        angles[n] = t;
    }
    angles.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(angles)
}

/// Principal angles in `[0, π/2]` from the singular values of the real
/// projection between the planes.
pub fn principal_angles<T: Real>(a: &[[Complex<T>; 3]; 3], b: &[[Complex<T>; 3]; 3]) -> Result<[T; 3]> {
    let mut p = [[T::zero(); 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            p[j][k] = (0..3).map(|m| (a[j][m].conj() * b[k][m]).re).sum();
        }
    }
    let mut ptp = vec![T::zero(); 9];
    for j in 0..3 {
        for k in 0..3 {
            ptp[j * 3 + k] = (0..3).map(|m| p[m][j] * p[m][k]).sum();
        }
    }
    let eig = symmetric_eigen(&ptp, 3)?;
    let mut out = [T::zero(); 3];
    for (o, &s2) in out.iter_mut().zip(&eig.values) {
        *o = s2.max(T::zero()).sqrt().min(T::one()).acos();
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(out)
}
