//! Linear algebra of the standard G2-structure on R⁷ and of the SU(3)
//! structure on C³ ⊂ R⁷.
//!
//! The 3-form is
//!
//! ```text
//! φ = e¹²³ − e¹⁴⁵ − e¹⁶⁷ − e²⁴⁶ − e²⁷⁵ − e³⁴⁷ − e³⁵⁶
//! ```
//!
//! and the cross product, associator and 4-form are all derived from it:
//! `g(u×v, w) = φ(u,v,w)`, `[u,v,w] = (u×v)×w + ⟨v,w⟩u − ⟨u,w⟩v` and
//! `ψ(u,v,w,z) = g([u,v,w], z)`.
//!
//! R⁷ splits as `R e₁ ⊕ C³` with complex coordinates
//! `z₁ = x₂ + i x₃`, `z₂ = x₅ + i x₄`, `z₃ = x₇ + i x₆`. With this pairing
//! `φ = e¹ ∧ ω + Re Ω` for the standard Kähler form `ω = Σ dxₖ ∧ dyₖ` and
//! `Ω = dz₁ ∧ dz₂ ∧ dz₃`, so special Lagrangian planes of phase zero are
//! associative and the complex structure is `J v = e₁ × v`.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Real;

/// Monomials `(i, j, k, sign)` of φ, 1-based.
pub const PHI_MONOMIALS: [(usize, usize, usize, i8); 7] = [
    (1, 2, 3, 1),
    (1, 4, 5, -1),
    (1, 6, 7, -1),
    (2, 4, 6, -1),
    (2, 7, 5, -1),
    (3, 4, 7, -1),
    (3, 5, 6, -1),
];

/// Default tolerance for [`is_associative_frame`].
pub const ASSOCIATIVE_TOL: f64 = 1e-9;

type Table = [[[i8; 7]; 7]; 7];

const fn build_phi_table() -> Table {
    let mut t = [[[0i8; 7]; 7]; 7];
    let mut m = 0;
    while m < PHI_MONOMIALS.len() {
        let (i, j, k, s) = PHI_MONOMIALS[m];
        let (i, j, k) = (i - 1, j - 1, k - 1);
        // even permutations carry the sign, odd ones its negative
        t[i][j][k] = s;
        t[j][k][i] = s;
        t[k][i][j] = s;
        t[j][i][k] = -s;
        t[i][k][j] = -s;
        t[k][j][i] = -s;
        m += 1;
    }
    t
}

/// Structure constants `φ_{ijk}` (0-based), fully antisymmetric.
pub static PHI: Table = build_phi_table();

/// Vector in R⁷ in the oriented orthonormal frame e₁…e₇.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec7<T>(pub [T; 7]);

impl<T: Real> Vec7<T> {
    pub fn zero() -> Self {
        Vec7([T::zero(); 7])
    }

    /// Basis vector `e_i` with `i` in `1..=7`.
    pub fn e(i: usize) -> Self {
        assert!((1..=7).contains(&i), "basis index {i} out of range 1..=7");
        let mut v = Self::zero();
        v.0[i - 1] = T::one();
        v
    }

    pub fn dot(&self, other: &Self) -> T {
        linalg::dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn cross(&self, other: &Self) -> Self {
        cross(self, other)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Embeds a vector of C³ as `0 ⊕ z`.
    pub fn from_c3(z: &[Complex<T>; 3]) -> Self {
        let mut v = Self::zero();
        for (k, zk) in z.iter().enumerate() {
            let (re, im) = C3_PAIRS[k];
            v.0[re] = zk.re;
            v.0[im] = zk.im;
        }
        v
    }

    /// Projection onto the C³ summand.
    pub fn to_c3(&self) -> [Complex<T>; 3] {
        let mut z = [Complex::new(T::zero(), T::zero()); 3];
        for (k, zk) in z.iter_mut().enumerate() {
            let (re, im) = C3_PAIRS[k];
            *zk = Complex::new(self.0[re], self.0[im]);
        }
        z
    }
}

/// 0-based (real, imaginary) coordinate indices of z₁, z₂, z₃.
pub const C3_PAIRS: [(usize, usize); 3] = [(1, 2), (4, 3), (6, 5)];

impl<T> Index<usize> for Vec7<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec7<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

impl<T: Real> Add for Vec7<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Real> AddAssign for Vec7<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl<T: Real> Sub for Vec7<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<T: Real> SubAssign for Vec7<T> {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl<T: Real> Neg for Vec7<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec7(self.0.map(|x| -x))
    }
}

impl<T: Real> Mul<T> for Vec7<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Vec7(self.0.map(|x| x * s))
    }
}

pub fn phi<T: Real>(u: &Vec7<T>, v: &Vec7<T>, w: &Vec7<T>) -> T {
    cross(u, v).dot(w)
}

pub fn cross<T: Real>(u: &Vec7<T>, v: &Vec7<T>) -> Vec7<T> {
    let mut out = Vec7::zero();
    for i in 0..7 {
        if u.0[i] == T::zero() {
            continue;
        }
        for j in 0..7 {
            let uv = u.0[i] * v.0[j];
            for k in 0..7 {
                match PHI[i][j][k] {
                    0 => {}
                    1 => out.0[k] += uv,
                    _ => out.0[k] -= uv,
                }
            }
        }
    }
    out
}

pub fn associator<T: Real>(u: &Vec7<T>, v: &Vec7<T>, w: &Vec7<T>) -> Vec7<T> {
    cross(&cross(u, v), w) + *u * v.dot(w) - *v * u.dot(w)
}

pub fn psi<T: Real>(u: &Vec7<T>, v: &Vec7<T>, w: &Vec7<T>, z: &Vec7<T>) -> T {
    associator(u, v, w).dot(z)
}

/// `|u ∧ v ∧ w|²`, the Gram determinant.
pub fn wedge_norm_sq<T: Real>(u: &Vec7<T>, v: &Vec7<T>, w: &Vec7<T>) -> T {
    let g = [
        [u.dot(u), u.dot(v), u.dot(w)],
        [v.dot(u), v.dot(v), v.dot(w)],
        [w.dot(u), w.dot(v), w.dot(w)],
    ];
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

/// `|u∧v∧w|² − φ(u,v,w)² − |[u,v,w]|²`.
pub fn associator_norm_residual<T: Real>(u: &Vec7<T>, v: &Vec7<T>, w: &Vec7<T>) -> T {
    let a = associator(u, v, w);
    wedge_norm_sq(u, v, w) - phi(u, v, w).powi(2) - a.dot(&a)
}

fn contract_phi<T: Real>(u: &Vec7<T>) -> [[T; 7]; 7] {
    let mut out = [[T::zero(); 7]; 7];
    for (i, &ui) in u.0.iter().enumerate() {
        if ui == T::zero() {
            continue;
        }
        for j in 0..7 {
            for k in 0..7 {
                let s = PHI[i][j][k];
                if s != 0 {
                    out[j][k] += ui * T::lit(s as f64);
                }
            }
        }
    }
    out
}

fn permutation_sign(seq: &[usize]) -> i32 {
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Shuffles of {0..7} into ordered blocks of sizes 2, 2, 3 with their signs.
fn shuffles_223() -> &'static [([usize; 7], i32)] {
    static CACHE: OnceLock<Vec<([usize; 7], i32)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut out = Vec::with_capacity(210);
        for a in 0..7 {
            for b in a + 1..7 {
                let rest: Vec<usize> = (0..7).filter(|&x| x != a && x != b).collect();
                for c in 0..5 {
                    for d in c + 1..5 {
                        let tail: Vec<usize> = (0..5)
                            .filter(|&x| x != c && x != d)
                            .map(|x| rest[x])
                            .collect();
                        let seq = [a, b, rest[c], rest[d], tail[0], tail[1], tail[2]];
                        out.push((seq, permutation_sign(&seq)));
                    }
                }
            }
        }
        out
    })
}

/// Coefficient of `e¹²³⁴⁵⁶⁷` in `ι_uφ ∧ ι_vφ ∧ φ` minus `6 g(u,v)`.
pub fn g2_identity_residual<T: Real>(u: &Vec7<T>, v: &Vec7<T>) -> T {
    let a = contract_phi(u);
    let b = contract_phi(v);
    let mut top = T::zero();
    for (s, sign) in shuffles_223() {
        let term = a[s[0]][s[1]] * b[s[2]][s[3]];
        if term == T::zero() {
            continue;
        }
        let c = PHI[s[4]][s[5]][s[6]];
        if c == 0 {
            continue;
        }
        top += term * T::lit((c as i32 * sign) as f64);
    }
    top - T::lit(6.0) * u.dot(v)
}

/// Whether the span of `frame` is an associative 3-plane.
pub fn is_associative_frame<T: Real>(frame: &[Vec7<T>; 3], tol: T) -> Result<bool> {
    Ok(associator_residual(frame)? < tol)
}

/// `|[f₁,f₂,f₃]|` after orthonormalizing the frame.
pub fn associator_residual<T: Real>(frame: &[Vec7<T>; 3]) -> Result<T> {
    let q = linalg::gram_schmidt(&[frame[0].0, frame[1].0, frame[2].0])?;
    let (a, b, c) = (Vec7(q[0]), Vec7(q[1]), Vec7(q[2]));
    Ok(associator(&a, &b, &c).norm())
}

/// Kähler form `ω(u,v) = Σ Im(conj(u_k) v_k)` on C³.
pub fn kahler_form<T: Real>(u: &[Complex<T>; 3], v: &[Complex<T>; 3]) -> T {
    u.iter().zip(v).map(|(a, b)| (a.conj() * b).im).sum()
}

/// Holomorphic volume form `Ω(u,v,w) = det[u v w]`.
pub fn holomorphic_volume<T: Real>(
    u: &[Complex<T>; 3],
    v: &[Complex<T>; 3],
    w: &[Complex<T>; 3],
) -> Complex<T> {
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// Multiplication by `i` on C³, i.e. `e₁ × ·` on R⁷.
pub fn complex_structure<T: Real>(u: &[Complex<T>; 3]) -> [Complex<T>; 3] {
    u.map(|z| z * Complex::i())
}

pub(crate) fn c3_to_real<T: Real>(z: &[Complex<T>; 3]) -> [T; 6] {
    [z[0].re, z[0].im, z[1].re, z[1].im, z[2].re, z[2].im]
}

pub(crate) fn real_to_c3<T: Real>(x: &[T; 6]) -> [Complex<T>; 3] {
    [
        Complex::new(x[0], x[1]),
        Complex::new(x[2], x[3]),
        Complex::new(x[4], x[5]),
    ]
}

/// Orthonormalizes a frame of three vectors in C³ (real inner product).
pub fn orthonormalize_c3<T: Real>(frame: &[[Complex<T>; 3]; 3]) -> Result<[[Complex<T>; 3]; 3]> {
    let real: Vec<[T; 6]> = frame.iter().map(c3_to_real).collect();
    let q = linalg::gram_schmidt(&real)?;
    Ok([real_to_c3(&q[0]), real_to_c3(&q[1]), real_to_c3(&q[2])])
}

/// Residuals of the special Lagrangian condition on the plane spanned by
/// `frame`: `(max |ω(fᵢ,fⱼ)|, |Im Ω(f₁,f₂,f₃)|)` on an orthonormal frame.
pub fn sl_residual<T: Real>(frame: &[[Complex<T>; 3]; 3]) -> Result<(T, T)> {
    sl_residual_with_phase(frame, T::zero())
}

/// As [`sl_residual`] for the calibration `Re(e^{iγ}Ω)`.
pub fn sl_residual_with_phase<T: Real>(frame: &[[Complex<T>; 3]; 3], phase: T) -> Result<(T, T)> {
    let f = orthonormalize_c3(frame)?;
    let mut w = T::zero();
    for i in 0..3 {
        for j in i + 1..3 {
            w = w.max(kahler_form(&f[i], &f[j]).abs());
        }
    }
    let omega = holomorphic_volume(&f[0], &f[1], &f[2]) * Complex::from_polar(T::one(), phase);
    Ok((w, omega.im.abs()))
}

/// Phase `γ` such that `e^{iγ}Ω` is real on the (Lagrangian) plane of `frame`,
/// normalized so that the calibrated orientation has `Re(e^{iγ}Ω) > 0`.
pub fn lagrangian_phase<T: Real>(frame: &[[Complex<T>; 3]; 3]) -> Result<T> {
    let f = orthonormalize_c3(frame)?;
    let omega = holomorphic_volume(&f[0], &f[1], &f[2]);
    Ok(-omega.im.atan2(omega.re))
}

/// Checks the identification `φ = e¹ ∧ ω + Re Ω` on all basis triples and
/// that `R³ ⊂ C³` is associative.
pub fn check_su3_identification() -> Result<()> {
    static CHECKED: OnceLock<bool> = OnceLock::new();
    let ok = *CHECKED.get_or_init(|| {
        let basis: Vec<[Complex<f64>; 3]> = (2..=7).map(|i| Vec7::<f64>::e(i).to_c3()).collect();
        let mut ok = true;
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let lhs = phi(&Vec7::e(1), &Vec7::from_c3(u), &Vec7::from_c3(v));
                ok &= (lhs - kahler_form(u, v)).abs() < 1e-15;
                for w in basis.iter().skip(a.max(b)) {
                    let lhs = phi(&Vec7::from_c3(u), &Vec7::from_c3(v), &Vec7::from_c3(w));
                    ok &= (lhs - holomorphic_volume(u, v, w).re).abs() < 1e-15;
                }
            }
        }
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        let r3 = [
            Vec7::from_c3(&[one, zero, zero]),
            Vec7::from_c3(&[zero, one, zero]),
            Vec7::from_c3(&[zero, zero, one]),
        ];
        ok &= matches!(is_associative_frame(&r3, ASSOCIATIVE_TOL), Ok(true));
        ok
    });
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "R ⊕ C³ identification is inconsistent with φ".into(),
        ))
    }
}
