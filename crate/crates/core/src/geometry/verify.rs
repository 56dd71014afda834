//! Sampling verifiers for calibration and asymptotic decay.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hl::{hl_embed, hl_link_sample, hl_normal_deviation};
use super::lawlor::{lawlor_embed, lawlor_end_deviation, LawlorParams};
use super::SurfaceSample;
use crate::error::{Error, Result};
use crate::g2::{associator_residual, lagrangian_phase, sl_residual_with_phase, Vec7};
use crate::scalar::Real;

/// Largest RMS log-residual accepted by [`decay_fit`].
pub const FIT_RESIDUAL_LIMIT: f64 = 0.1;

/// Minimum number of radii in a decay fit.
pub const MIN_FIT_RADII: usize = 8;

/// A parametrized surface that can be sampled at random parameters.
pub trait Surface<T: Real>: Sync {
    fn name(&self) -> String;
    fn random_params(&self, rng: &mut ChaCha8Rng) -> Vec<T>;
    fn sample(&self, params: &[T]) -> Result<SurfaceSample<T>>;
}

fn unit_vector<T: Real>(rng: &mut ChaCha8Rng) -> [T; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| T::lit(x / n));
        }
    }
}

fn angle<T: Real>(rng: &mut ChaCha8Rng) -> T {
    T::lit(rng.gen_range(0.0..std::f64::consts::TAU))
}

pub struct LawlorNeck<T> {
    pub a: LawlorParams<T>,
    pub y_range: (f64, f64),
}

impl<T: Real> Surface<T> for LawlorNeck<T> {
    fn name(&self) -> String {
        "lawlor".into()
    }
    fn random_params(&self, rng: &mut ChaCha8Rng) -> Vec<T> {
        let y = T::lit(rng.gen_range(self.y_range.0..self.y_range.1));
        let s = unit_vector::<T>(rng);
        vec![y, s[0], s[1], s[2]]
    }
    fn sample(&self, p: &[T]) -> Result<SurfaceSample<T>> {
        lawlor_embed(p[0], [p[1], p[2], p[3]], &self.a)
    }
}

pub struct HlSmoothing<T> {
    pub branch: usize,
    pub a: T,
    pub r_range: (f64, f64),
}

impl<T: Real> Surface<T> for HlSmoothing<T> {
    fn name(&self) -> String {
        format!("hl-{}", self.branch)
    }
    fn random_params(&self, rng: &mut ChaCha8Rng) -> Vec<T> {
        let r = T::lit(rng.gen_range(self.r_range.0..self.r_range.1));
        vec![r, angle(rng), angle(rng)]
    }
    fn sample(&self, p: &[T]) -> Result<SurfaceSample<T>> {
        hl_embed(p[0], p[1], p[2], self.branch, self.a)
    }
}

/// Unit link of the Harvey–Lawson cone; frames are (link tangents, radial).
pub struct HlConeLink;

impl<T: Real> Surface<T> for HlConeLink {
    fn name(&self) -> String {
        "hl-cone".into()
    }
    fn random_params(&self, rng: &mut ChaCha8Rng) -> Vec<T> {
        vec![angle(rng), angle(rng)]
    }
    fn sample(&self, p: &[T]) -> Result<SurfaceSample<T>> {
        Ok(hl_link_sample(p[0], p[1]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationReport<T> {
    pub surface: String,
    pub samples: usize,
    pub seed: u64,
    /// Phase `γ` with `Im(e^{iγ}Ω) = 0`, fitted on the first sample.
    pub phase: T,
    pub max_omega: T,
    pub max_im_omega: T,
    pub max_associator: T,
}

/// Deterministic parameter list for `n` samples.
pub fn sample_params<T: Real>(surface: &dyn Surface<T>, n: usize, seed: u64) -> Vec<Vec<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| surface.random_params(&mut rng)).collect()
}

/// Maximum special Lagrangian and associator residuals over seeded samples.
pub fn verify_special_lagrangian<T: Real>(surface: &dyn Surface<T>, n_samples: usize, seed: u64) -> Result<CalibrationReport<T>> {
    if n_samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let params = sample_params(surface, n_samples, seed);
    let frame_of = |s: &SurfaceSample<T>| -> Result<[[num_complex::Complex<T>; 3]; 3]> {
        if s.tangents.len() != 3 {
            return Err(Error::DegenerateFrame { rank: s.tangents.len(), expected: 3 });
        }
        Ok([s.tangents[0], s.tangents[1], s.tangents[2]])
    };
    let first = surface.sample(&params[0])?;
    let phase = lagrangian_phase(&frame_of(&first)?)?;
    let rows: Vec<(T, T, T)> = params
        .par_iter()
        .map(|p| {
            let s = surface.sample(p)?;
            let f = frame_of(&s)?;
            let (w, im) = sl_residual_with_phase(&f, phase)?;
            let assoc = associator_residual(&f.map(|v| Vec7::from_c3(&v)))?;
            Ok((w, im, assoc))
        })
        .collect::<Result<_>>()?;
    let max = |g: fn(&(T, T, T)) -> T| rows.iter().map(g).fold(T::zero(), T::max);
    Ok(CalibrationReport {
        surface: surface.name(),
        samples: n_samples,
        seed,
        phase,
        max_omega: max(|r| r.0),
        max_im_omega: max(|r| r.1),
        max_associator: max(|r| r.2),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayFit<T> {
    pub fitted_exponent: T,
    pub r_range: (T, T),
    /// RMS residual of the fit in `log |deviation|`.
    pub residual_of_fit: T,
    pub table: Vec<(T, T)>,
}

/// `n` logarithmically spaced radii in `[r_min, r_max]`.
pub fn log_radii<T: Real>(r_min: T, r_max: T, n: usize) -> Vec<T> {
    let (a, b) = (r_min.ln(), r_max.ln());
    (0..n)
        .map(|i| (a + (b - a) * T::from_count(i) / T::from_count(n - 1)).exp())
        .collect()
}

/// Least-squares slope of `log|dev|` against `log r`.
pub fn decay_fit<T: Real, F>(deviation: F, r_window: (T, T), n_radii: usize) -> Result<DecayFit<T>>
where
    F: Fn(T) -> Result<T> + Sync,
{
    let (r_min, r_max) = r_window;
    if !(r_min > T::zero() && r_min < r_max) || n_radii < MIN_FIT_RADII {
        return Err(Error::InvalidInput(format!(
            "decay fits need 0 < r_min < r_max and at least {MIN_FIT_RADII} radii"
        )));
    }
    let radii = log_radii(r_min, r_max, n_radii);
    let table: Vec<(T, T)> = radii
        .par_iter()
        .map(|&r| Ok((r, deviation(r)?)))
        .collect::<Result<_>>()?;
    if table.iter().any(|&(_, d)| !(d > T::zero()) || !d.is_finite()) {
        return Err(Error::FitUnstable { residual: f64::INFINITY, limit: FIT_RESIDUAL_LIMIT });
    }
    let pts: Vec<(T, T)> = table.iter().map(|&(r, d)| (r.ln(), d.ln())).collect();
    let n = T::from_count(pts.len());
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxx: T = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let rms = (pts
        .iter()
        .map(|p| {
            let e = p.1 - (my + slope * (p.0 - mx));
            e * e
        })
        .sum::<T>()
        / n)
        .sqrt();
    if rms > T::lit(FIT_RESIDUAL_LIMIT) {
        return Err(Error::FitUnstable { residual: rms.as_f64(), limit: FIT_RESIDUAL_LIMIT });
    }
    Ok(DecayFit { fitted_exponent: slope, r_range: r_window, residual_of_fit: rms, table })
}

/// Decay of the Lawlor neck towards `Π₀`, with or without the leading term removed.
pub fn lawlor_decay<T: Real>(a: &LawlorParams<T>, sigma: [T; 3], subtract_leading: bool, r_window: (T, T), n_radii: usize) -> Result<DecayFit<T>> {
    decay_fit(|r| lawlor_end_deviation(r, sigma, a, subtract_leading), r_window, n_radii)
}

/// Decay of `L^k_a` towards the Harvey–Lawson cone at fixed link angles.
pub fn hl_decay<T: Real>(branch: usize, a: T, angles: (T, T), r_window: (T, T), n_radii: usize) -> Result<DecayFit<T>> {
    decay_fit(
        |r| {
            let d = hl_normal_deviation(r, angles.0, angles.1, branch, a)?;
            Ok(d.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        },
        r_window,
        n_radii,
    )
}
