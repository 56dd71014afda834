//! Lawlor necks: AC special Lagrangians asymptotic to `Π₀ ∪ Π_θ`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::newton::{damped_newton, NewtonOptions};
use super::quadrature::integrate;
use super::SurfaceSample;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance used when angles feed geometry rather than a user request.
pub const DEFAULT_QUAD_TOL: f64 = 1e-13;

/// Tolerance on `θ₁ + θ₂ + θ₃ = π`.
pub const ANGLE_SUM_TOL: f64 = 1e-9;

/// Width in `t = asinh x` of the integration range below the upper limit;
/// the integrand decays like `e^{3t}`, so the neglected tail is `~e^{-45}`.
const TAIL_WIDTH: f64 = 15.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawlorParams<T> {
    pub a: [T; 3],
}

impl<T: Real> LawlorParams<T> {
    pub fn new(a: [T; 3]) -> Result<Self> {
        if a.iter().any(|x| !(x.is_finite() && *x > T::zero())) {
            return Err(Error::InvalidInput("Lawlor parameters must be positive and finite".into()));
        }
        Ok(LawlorParams { a })
    }

    /// `A = 4π / (3√(a₁a₂a₃))`.
    pub fn area_constant(&self) -> T {
        T::lit(4.0) * T::PI() / (T::lit(3.0) * self.product().sqrt())
    }

    pub fn product(&self) -> T {
        self.a[0] * self.a[1] * self.a[2]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawlorAngles<T> {
    pub theta: [T; 3],
}

impl<T: Real> LawlorAngles<T> {
    pub fn new(theta: [T; 3]) -> Result<Self> {
        if theta.iter().any(|t| !(t.is_finite() && *t > T::zero() && *t < T::PI())) {
            return Err(Error::DegenerateAngles);
        }
        let sum = theta[0] + theta[1] + theta[2];
        if (sum - T::PI()).abs() > T::lit(ANGLE_SUM_TOL) {
            return Err(Error::InvalidInput(format!("angles sum to {sum}, not pi")));
        }
        Ok(LawlorAngles { theta })
    }
}

/// `P(x) = (Π(1 + a_j x²) − 1) / x²`, equal to `Σ a_j` at `x = 0`.
pub fn lawlor_p<T: Real>(x: T, a: &LawlorParams<T>) -> T {
    let s = x * x;
    let [a1, a2, a3] = a.a;
    // expanded so that small x loses no precision
    (a1 + a2 + a3) + (a1 * a2 + a1 * a3 + a2 * a3) * s + a1 * a2 * a3 * s * s
}

/// `θ_k'(y) = a_k / ((1 + a_k y²) √P(y))`.
pub fn theta_derivative<T: Real>(k: usize, y: T, a: &LawlorParams<T>) -> T {
    a.a[k] / ((T::one() + a.a[k] * y * y) * lawlor_p(y, a).sqrt())
}

/// `a_k ∫_{-∞}^{w} dx / ((1 + a_k x²) √P(x))` for `w ≤ 0`, after `x = sinh t`.
fn tail<T: Real>(k: usize, w: T, a: &LawlorParams<T>, tol: T) -> Result<T> {
    let hi = w.asinh();
    let lo = hi - T::lit(TAIL_WIDTH);
    let q = integrate(
        |t: T| {
            let x = t.sinh();
            theta_derivative(k, x, a) * t.cosh()
        },
        lo,
        hi,
        T::min_positive_value(),
        tol,
    )?;
    Ok(q.value)
}

/// `θ_k(y)` with full relative accuracy on both ends.
pub fn lawlor_theta<T: Real>(k: usize, y: T, a: &LawlorParams<T>, tol: T) -> Result<T> {
    if y <= T::zero() {
        tail(k, y, a, tol)
    } else {
        Ok(tail(k, T::zero(), a, tol)? * T::lit(2.0) - tail(k, -y, a, tol)?)
    }
}

/// Asymptotic angles `θ_k(∞)`; their sum is checked against π.
pub fn lawlor_angles<T: Real>(a: &LawlorParams<T>, tol: T) -> Result<LawlorAngles<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let mut theta = [T::zero(); 3];
    for (k, t) in theta.iter_mut().enumerate() {
        // the integrand is even, so θ_k(∞) = 2 θ_k(0)
        *t = tail(k, T::zero(), a, tol)? * T::lit(2.0);
    }
    let sum = theta[0] + theta[1] + theta[2];
    let slack = T::lit(ANGLE_SUM_TOL).max(tol * T::lit(100.0));
    if (sum - T::PI()).abs() > slack {
        return Err(Error::QuadratureFailure {
            estimate: (sum - T::PI()).abs().as_f64(),
            tolerance: slack.as_f64(),
        });
    }
    Ok(LawlorAngles { theta })
}

/// Parameters with the given asymptotic angles and area constant `A`.
pub fn lawlor_solve<T: Real>(target: &LawlorAngles<T>, area_constant: T) -> Result<LawlorParams<T>> {
    LawlorAngles::new(target.theta)?;
    if !(area_constant > T::zero()) || !area_constant.is_finite() {
        return Err(Error::InvalidInput("A must be positive".into()));
    }
    // √(a₁a₂a₃) = 4π / (3A)
    let root_prod = T::lit(4.0) * T::PI() / (T::lit(3.0) * area_constant);
    let log_prod = (root_prod * root_prod).ln();
    let params = |u: &[T]| -> Result<LawlorParams<T>> {
        let (a1, a2) = (u[0].exp(), u[1].exp());
        LawlorParams::new([a1, a2, (log_prod - u[0] - u[1]).exp()])
    };
    let tol = T::lit(DEFAULT_QUAD_TOL).max(T::epsilon() * T::lit(100.0));
    let residual = |u: &[T]| -> Result<Vec<T>> {
        let a = params(u)?;
        Ok(vec![
            tail(0, T::zero(), &a, tol)? * T::lit(2.0) - target.theta[0],
            tail(1, T::zero(), &a, tol)? * T::lit(2.0) - target.theta[1],
        ])
    };
    let start = log_prod / T::lit(3.0);
    let options = NewtonOptions {
        tolerance: 1e-11f64.max(T::epsilon().as_f64() * 1e3),
        ..NewtonOptions::default()
    };
    let result = damped_newton(residual, &[start, start], &options)?;
    params(&result.x)
}

/// Point and tangent frame of the neck at `(y, σ)`.
pub fn lawlor_embed<T: Real>(y: T, sigma: [T; 3], a: &LawlorParams<T>) -> Result<SurfaceSample<T>> {
    let n = (sigma[0] * sigma[0] + sigma[1] * sigma[1] + sigma[2] * sigma[2]).sqrt();
    if (n - T::one()).abs() > T::lit(1e-9) {
        return Err(Error::InvalidInput("sigma must be a unit vector".into()));
    }
    let tol = T::lit(DEFAULT_QUAD_TOL).max(T::epsilon() * T::lit(100.0));
    let mut z = [Complex::new(T::zero(), T::zero()); 3];
    let mut dz = z;
    for k in 0..3 {
        let theta = lawlor_theta(k, y, a, tol)?;
        let rho = (T::one() / a.a[k] + y * y).sqrt();
        let phase = Complex::from_polar(T::one(), theta);
        z[k] = phase * rho;
        dz[k] = phase * Complex::new(y / rho, theta_derivative(k, y, a) * rho);
    }
    let (t1, t2) = sphere_tangents(sigma);
    let scale = |v: [T; 3]| -> [Complex<T>; 3] { std::array::from_fn(|k| z[k] * v[k]) };
    Ok(SurfaceSample {
        params: vec![y, sigma[0], sigma[1], sigma[2]],
        position: scale(sigma),
        tangents: vec![std::array::from_fn(|k| dz[k] * sigma[k]), scale(t1), scale(t2)],
        cone_point: (y < T::zero()).then(|| sigma.map(|s| Complex::new(-y * s, T::zero()))),
        radius: Some(y.abs()),
    })
}

/// Orthonormal basis of `T_σ S²`.
pub fn sphere_tangents<T: Real>(sigma: [T; 3]) -> ([T; 3], [T; 3]) {
    let axis = (0..3)
        .min_by(|&i, &j| sigma[i].abs().partial_cmp(&sigma[j].abs()).unwrap())
        .expect("three coordinates");
    let mut e = [T::zero(); 3];
    e[axis] = T::one();
    let d = e[0] * sigma[0] + e[1] * sigma[1] + e[2] * sigma[2];
    let mut t1: [T; 3] = std::array::from_fn(|k| e[k] - d * sigma[k]);
    let n1 = (t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]).sqrt();
    t1 = t1.map(|x| x / n1);
    let t2 = [
        sigma[1] * t1[2] - sigma[2] * t1[1],
        sigma[2] * t1[0] - sigma[0] * t1[2],
        sigma[0] * t1[1] - sigma[1] * t1[0],
    ];
    (t1, t2)
}

/// Row of a neck profile: `y`, `θ_k(y)` and `|z_k(y)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow<T> {
    pub y: T,
    pub theta1: T,
    pub theta2: T,
    pub theta3: T,
    pub modulus1: T,
    pub modulus2: T,
    pub modulus3: T,
}

pub fn lawlor_profile<T: Real>(a: &LawlorParams<T>, ys: &[T]) -> Result<Vec<ProfileRow<T>>> {
    let tol = T::lit(DEFAULT_QUAD_TOL).max(T::epsilon() * T::lit(100.0));
    ys.iter()
        .map(|&y| {
            let mut th = [T::zero(); 3];
            for (k, t) in th.iter_mut().enumerate() {
                *t = lawlor_theta(k, y, a, tol)?;
            }
            let m = [0, 1, 2].map(|k| (T::one() / a.a[k] + y * y).sqrt());
            Ok(ProfileRow {
                y,
                theta1: th[0],
                theta2: th[1],
                theta3: th[2],
                modulus1: m[0],
                modulus2: m[1],
                modulus3: m[2],
            })
        })
        .collect()
}

/// Norm of the component of the neck normal to `Π₀` at radius `r` along the
/// `y → −∞` end, optionally minus the leading term `r⁻² σ / (3√(a₁a₂a₃))`.
pub fn lawlor_end_deviation<T: Real>(r: T, sigma: [T; 3], a: &LawlorParams<T>, subtract_leading: bool) -> Result<T> {
    let tol = T::lit(DEFAULT_QUAD_TOL).max(T::epsilon() * T::lit(100.0));
    let c = T::one() / (T::lit(3.0) * a.product().sqrt());
    let mut sq = T::zero();
    for k in 0..3 {
        let theta = lawlor_theta(k, -r, a, tol)?;
        let rho = (T::one() / a.a[k] + r * r).sqrt();
        let mut im = rho * theta.sin() * sigma[k];
        if subtract_leading {
            im -= c * sigma[k] / (r * r);
        }
        sq += im * im;
    }
    Ok(sq.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ones() -> LawlorParams<f64> {
        LawlorParams::new([1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn p_values() {
        assert_eq!(lawlor_p(1.0, &ones()), 7.0);
        assert_eq!(lawlor_p(0.0, &ones()), 3.0);
        let big = lawlor_p(100.0, &ones());
        assert!((big / 1e8 - 1.0).abs() < 4e-4);
        // direct formula away from 0
        let a = LawlorParams::new([0.3, 2.0, 5.0]).unwrap();
        let x: f64 = 0.7;
        let direct = ((1.0 + 0.3 * x * x) * (1.0 + 2.0 * x * x) * (1.0 + 5.0 * x * x) - 1.0) / (x * x);
        assert!((lawlor_p(x, &a) - direct).abs() < 1e-12);
    }

    #[test]
    fn symmetric_angles() {
        let t = lawlor_angles(&ones(), 1e-12).unwrap();
        for th in t.theta {
            assert!((th - PI / 3.0).abs() < 1e-10);
        }
        let mid = lawlor_theta(0, 0.0, &ones(), 1e-12).unwrap();
        assert!((mid - PI / 6.0).abs() < 1e-10);
    }

    #[test]
    fn larger_parameter_larger_angle() {
        let t = lawlor_angles(&LawlorParams::<f64>::new([4.0, 1.0, 1.0]).unwrap(), 1e-12).unwrap();
        assert!(t.theta[0] > t.theta[1]);
        assert!((t.theta[1] - t.theta[2]).abs() < 1e-12);
    }

    #[test]
    fn theta_is_monotone_and_bounded() {
        let a = LawlorParams::new([0.5, 1.5, 3.0]).unwrap();
        let total = lawlor_angles(&a, 1e-12).unwrap().theta[1];
        let mut last = 0.0;
        for y in [-50.0, -3.0, -0.5, 0.0, 0.5, 3.0, 50.0] {
            let t = lawlor_theta(1, y, &a, 1e-12).unwrap();
            assert!(t > last && t < total);
            last = t;
        }
    }

    #[test]
    fn solve_symmetric() {
        let target = LawlorAngles::new([PI / 3.0; 3]).unwrap();
        let a = lawlor_solve(&target, 4.0 * PI / 3.0).unwrap();
        for x in a.a {
            assert!((x - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn solve_round_trip() {
        let a = LawlorParams::<f64>::new([0.2, 1.7, 6.0]).unwrap();
        let angles = lawlor_angles(&a, 1e-13).unwrap();
        let back = lawlor_solve(&angles, a.area_constant()).unwrap();
        for (x, y) in a.a.iter().zip(back.a) {
            assert!(((x - y) / x).abs() < 1e-6, "{x} vs {y}");
        }
    }

    #[test]
    fn degenerate_targets() {
        assert!(matches!(LawlorAngles::new([0.0, PI / 2.0, PI / 2.0]), Err(Error::DegenerateAngles)));
        let nearly = LawlorAngles { theta: [1e-9, PI / 2.0, PI / 2.0 - 1e-9] };
        match lawlor_solve(&nearly, 1.0) {
            Err(_) => {}
            Ok(a) => assert!(a.a[0] < 1e-6 * a.a[1], "{:?}", a.a),
        }
    }

    #[test]
    fn embed_waist() {
        let s = lawlor_embed(0.0, [1.0, 0.0, 0.0], &ones()).unwrap();
        assert!((s.position[0].norm() - 1.0).abs() < 1e-14);
        assert!((s.position[0].arg() - PI / 6.0).abs() < 1e-10);
        assert!(s.position[1].norm() == 0.0 && s.position[2].norm() == 0.0);
    }

    #[test]
    fn ends_approach_planes() {
        let sigma = [0.6, 0.0, 0.8];
        let a = ones();
        let minus = lawlor_embed(-1e4, sigma, &a).unwrap();
        let plus = lawlor_embed(1e4, sigma, &a).unwrap();
        let angles = lawlor_angles(&a, 1e-12).unwrap();
        for k in 0..3 {
            if sigma[k] != 0.0 {
                assert!(minus.position[k].arg().abs() < 1e-9);
                assert!((plus.position[k].arg() - angles.theta[k]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn f32_angles() {
        let a = LawlorParams::new([1.0f32, 1.0, 1.0]).unwrap();
        let t = lawlor_angles(&a, 1e-5).unwrap();
        assert!((t.theta[0] - std::f32::consts::PI / 3.0).abs() < 1e-4);
    }
}
