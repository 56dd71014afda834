//! The Harvey–Lawson cone and its three AC smoothings `L^k_a`.

use num_complex::Complex;

use super::SurfaceSample;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn phases<T: Real>(theta1: T, theta2: T) -> [Complex<T>; 3] {
    [
        Complex::from_polar(T::one(), theta1),
        Complex::from_polar(T::one(), theta2),
        Complex::from_polar(T::one(), -(theta1 + theta2)),
    ]
}

/// Point of `L^k_a` at `(r, θ₁, θ₂)`: coordinate `k` has modulus `√(r²+a)`,
/// the other two modulus `r`, with phases `(θ₁, θ₂, −θ₁−θ₂)`. For `a = 0`
/// this is the cone itself.
pub fn hl_embed<T: Real>(r: T, theta1: T, theta2: T, branch: usize, a: T) -> Result<SurfaceSample<T>> {
    if !(1..=3).contains(&branch) {
        return Err(Error::InvalidInput(format!("branch must be 1, 2 or 3, got {branch}")));
    }
    if !(r > T::zero()) || a < T::zero() || !a.is_finite() {
        return Err(Error::InvalidInput("need r > 0 and a >= 0".into()));
    }
    let k = branch - 1;
    let p = phases(theta1, theta2);
    let i = Complex::i();
    let zero = Complex::new(T::zero(), T::zero());
    let modulus = |j: usize| if j == k { (r * r + a).sqrt() } else { r };
    let position: [Complex<T>; 3] = std::array::from_fn(|j| p[j] * modulus(j));
    let d_r: [Complex<T>; 3] = std::array::from_fn(|j| p[j] * (r / modulus(j)));
    let d_t1 = [position[0] * i, zero, -position[2] * i];
    let d_t2 = [zero, position[1] * i, -position[2] * i];
    Ok(SurfaceSample {
        params: vec![r, theta1, theta2],
        position,
        tangents: vec![d_r, d_t1, d_t2],
        cone_point: Some(p.map(|z| z * r)),
        radius: Some(r),
    })
}

/// Unit-radius link `(e^{iθ₁}, e^{iθ₂}, e^{−i(θ₁+θ₂)})/√3` with the two link
/// tangents followed by the radial direction.
pub fn hl_link_sample<T: Real>(theta1: T, theta2: T) -> SurfaceSample<T> {
    let s = T::one() / T::lit(3.0).sqrt();
    let mut sample = hl_embed(s, theta1, theta2, 1, T::zero()).expect("valid cone parameters");
    sample.tangents.rotate_left(1);
    sample
}

/// Normal component of `v` at the cone point `ρ·(e^{iθ₁}, e^{iθ₂}, e^{−i(θ₁+θ₂)})`.
pub fn hl_cone_normal_part<T: Real>(v: &[Complex<T>; 3], theta1: T, theta2: T) -> [Complex<T>; 3] {
    let p = phases(theta1, theta2);
    let i = Complex::i();
    let zero = Complex::new(T::zero(), T::zero());
    // orthogonal basis of the tangent plane, in units of ρ
    let radial = p;
    let u1 = [p[0] * i, zero, -p[2] * i];
    let u2 = [zero, p[1] * i, -p[2] * i];
    let dot = |a: &[Complex<T>; 3], b: &[Complex<T>; 3]| -> T { (0..3).map(|j| (a[j].conj() * b[j]).re).sum() };
    let basis = super::gram_schmidt_c3(&[radial, u1, u2]);
    let mut out = *v;
    for q in &basis {
        let c = dot(q, &out);
        for j in 0..3 {
            out[j] = out[j] - q[j] * c;
        }
    }
    out
}

/// Normal deviation of `L^k_a` from the cone at the matched cone point.
pub fn hl_normal_deviation<T: Real>(r: T, theta1: T, theta2: T, branch: usize, a: T) -> Result<[Complex<T>; 3]> {
    let s = hl_embed(r, theta1, theta2, branch, a)?;
    let c = s.cone_point.expect("HL samples carry a cone point");
    let d: [Complex<T>; 3] = std::array::from_fn(|j| s.position[j] - c[j]);
    Ok(hl_cone_normal_part(&d, theta1, theta2))
}

/// Norm of the normal part of `ξ₁ + ξ₂ + ξ₃`, the leading deviations of the
/// three smoothings with `a = 1` at the same cone point.
pub fn hl_xi_relation_residual<T: Real>(r_probe: T, theta1: T, theta2: T) -> Result<T> {
    let mut sum = [Complex::new(T::zero(), T::zero()); 3];
    for branch in 1..=3 {
        let d = hl_normal_deviation(r_probe, theta1, theta2, branch, T::one())?;
        for j in 0..3 {
            sum[j] = sum[j] + d[j];
        }
    }
    let n = hl_cone_normal_part(&sum, theta1, theta2);
    Ok(n.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
}
