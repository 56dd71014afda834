use std::collections::BTreeMap;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Spectrum, SpectrumEntry, MATCH_TOL};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest denominator tried when looking for a rational inverse metric.
const MAX_DENOMINATOR: i64 = 1000;

/// Flat metric on the torus in angle coordinates of period `2π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusMetric<T> {
    pub g: [[T; 2]; 2],
}

impl<T: Real> TorusMetric<T> {
    pub fn new(g11: T, g12: T, g22: T) -> Result<Self> {
        let m = TorusMetric {
            g: [[g11, g12], [g12, g22]],
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let [[a, b], [c, d]] = self.g;
        let finite = [a, b, c, d].iter().all(|x| x.is_finite());
        let sym_tol = T::lit(1e-12) * (a.abs() + d.abs());
        if !finite || (b - c).abs() > sym_tol || !(a > T::zero()) || !(self.det() > T::zero()) {
            return Err(Error::NonPositiveDefinite);
        }
        Ok(())
    }

    pub fn det(&self) -> T {
        self.g[0][0] * self.g[1][1] - self.g[0][1] * self.g[1][0]
    }

    pub fn inverse(&self) -> [[T; 2]; 2] {
        let det = self.det();
        [
            [self.g[1][1] / det, -self.g[0][1] / det],
            [-self.g[1][0] / det, self.g[0][0] / det],
        ]
    }

    /// Riemannian area `(2π)² √det g`.
    pub fn area(&self) -> T {
        let two_pi = T::PI() + T::PI();
        two_pi * two_pi * self.det().sqrt()
    }
}

/// Induced metric of `(e^{iθ₁}, e^{iθ₂}, e^{-i(θ₁+θ₂)})/√3` on the unit sphere of `C³`.
pub fn clifford_torus_metric<T: Real>() -> TorusMetric<T> {
    let third = T::one() / T::lit(3.0);
    TorusMetric {
        g: [[third + third, third], [third, third + third]],
    }
}

/// The Clifford link embedding evaluated at `(θ₁, θ₂)`.
pub fn clifford_embedding<T: Real>(t1: T, t2: T) -> [Complex<T>; 3] {
    let s = T::one() / T::lit(3.0).sqrt();
    [
        Complex::from_polar(s, t1),
        Complex::from_polar(s, t2),
        Complex::from_polar(s, -(t1 + t2)),
    ]
}

/// Integer matrix `N` and denominator `D` with `g⁻¹ = N / D`, when one exists.
fn rational_inverse(inv: &[[f64; 2]; 2]) -> Option<(i64, [[i64; 2]; 2])> {
    let tol = 1e-9;
    (1..=MAX_DENOMINATOR).find_map(|d| {
        let mut n = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let x = inv[i][j] * d as f64;
                let r = x.round();
                if (x - r).abs() > tol * x.abs().max(1.0) {
                    return None;
                }
                n[i][j] = r as i64;
            }
        }
        Some((d, n))
    })
}

/// Laplace spectrum `kᵀ g⁻¹ k` over integer frequency vectors `k`, complete
/// up to `cutoff`.
pub fn torus_spectrum<T: Real>(metric: &TorusMetric<T>, cutoff: T) -> Result<Spectrum<T>> {
    metric.validate()?;
    if !(cutoff > T::zero()) {
        return Err(Error::InvalidInput("cutoff must be positive".into()));
    }
    let c = cutoff.as_f64();
    let g = metric.g.map(|row| row.map(|x| x.as_f64()));
    let inv = metric.inverse().map(|row| row.map(|x| x.as_f64()));
    // max |k_a| over the ellipse kᵀ g⁻¹ k ≤ c is √(c g_aa)
    let bound_m = (c * g[0][0]).sqrt().floor() as i64 + 1;
    let bound_n = (c * g[1][1]).sqrt().floor() as i64 + 1;

    if let Some((den, num)) = rational_inverse(&inv) {
        let limit = (c * den as f64 * (1.0 + 1e-12)).floor() as i64;
        let counts: BTreeMap<i64, u32> = (-bound_m..=bound_m)
            .into_par_iter()
            .map(|m| {
                let mut row: BTreeMap<i64, u32> = BTreeMap::new();
                for n in -bound_n..=bound_n {
                    let q = num[0][0] * m * m + 2 * num[0][1] * m * n + num[1][1] * n * n;
                    if q <= limit {
                        *row.entry(q).or_default() += 1;
                    }
                }
                row
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        let exact = counts.keys().all(|q| q % den == 0);
        let entries = counts
            .into_iter()
            .map(|(q, mult)| SpectrumEntry {
                eigenvalue: T::lit(q as f64 / den as f64),
                multiplicity: mult,
            })
            .collect();
        return Spectrum::new(entries, cutoff, exact);
    }

    let mut values: Vec<f64> = (-bound_m..=bound_m)
        .into_par_iter()
        .flat_map_iter(|m| {
            let inv = &inv;
            (-bound_n..=bound_n).filter_map(move |n| {
                let (mf, nf) = (m as f64, n as f64);
                let q = inv[0][0] * mf * mf + 2.0 * inv[0][1] * mf * nf + inv[1][1] * nf * nf;
                (q <= c * (1.0 + 1e-12)).then_some(q)
            })
        })
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut entries: Vec<SpectrumEntry<T>> = Vec::new();
    let mut anchor = f64::NAN;
    for v in values {
        match entries.last_mut() {
            Some(last) if (v - anchor).abs() <= MATCH_TOL * v.abs().max(1.0) => {
                last.multiplicity += 1
            }
            _ => {
                anchor = v;
                entries.push(SpectrumEntry {
                    eigenvalue: T::lit(if v.abs() < 1e-300 { 0.0 } else { v }),
                    multiplicity: 1,
                });
            }
        }
    }
    Spectrum::new(entries, cutoff, false)
}
