//! Model special Lagrangians in `C³ ⊂ R⁷`: Lawlor necks, the Harvey–Lawson
//! cone and its smoothings, and transverse plane pairs.

mod hl;
mod lawlor;
mod newton;
mod planes;
mod quadrature;
mod verify;

use std::io::Write;

use num_complex::Complex;
use serde::Serialize;

pub use hl::{hl_cone_normal_part, hl_embed, hl_link_sample, hl_normal_deviation, hl_xi_relation_residual};
pub use lawlor::{
    lawlor_angles, lawlor_embed, lawlor_end_deviation, lawlor_p, lawlor_profile, lawlor_solve, lawlor_theta,
    sphere_tangents, theta_derivative, LawlorAngles, LawlorParams, ProfileRow, ANGLE_SUM_TOL, DEFAULT_QUAD_TOL,
};
pub use newton::{damped_newton, NewtonOptions, NewtonResult};
pub use planes::{jordan_angles, principal_angles, transverse_plane_pair, TransversePair};
pub use quadrature::{integrate, Quadrature};
pub use verify::{
    decay_fit, hl_decay, lawlor_decay, log_radii, sample_params, verify_special_lagrangian, CalibrationReport,
    DecayFit, HlConeLink, HlSmoothing, LawlorNeck, Surface, FIT_RESIDUAL_LIMIT, MIN_FIT_RADII,
};

use crate::error::Result;
use crate::scalar::Real;

/// A point on a sampled surface with an analytic tangent frame.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSample<T> {
    pub params: Vec<T>,
    pub position: [Complex<T>; 3],
    pub tangents: Vec<[Complex<T>; 3]>,
    /// Cone point with the same link parameter, on asymptotic ends.
    pub cone_point: Option<[Complex<T>; 3]>,
    pub radius: Option<T>,
}

/// Orthonormalizes vectors of `C³` for the real inner product, dropping
/// dependent ones.
pub(crate) fn gram_schmidt_c3<T: Real>(vs: &[[Complex<T>; 3]]) -> Vec<[Complex<T>; 3]> {
    let dot = |a: &[Complex<T>; 3], b: &[Complex<T>; 3]| -> T { (0..3).map(|j| (a[j].conj() * b[j]).re).sum() };
    let mut out: Vec<[Complex<T>; 3]> = Vec::new();
    for v in vs {
        let mut w = *v;
        for q in &out {
            let c = dot(q, &w);
            for j in 0..3 {
                w[j] = w[j] - q[j] * c;
            }
        }
        let n = dot(&w, &w).sqrt();
        if n > T::epsilon() {
            out.push(w.map(|z| z / n));
        }
    }
    out
}

/// Writes profile rows as CSV with a header.
pub fn write_profile_csv<T: Real, W: Write>(rows: &[ProfileRow<T>], out: W) -> Result<()> {
    write_rows(rows, out)
}

#[derive(Serialize)]
struct DecayRow<T> {
    r: T,
    deviation: T,
}

/// Writes `(r, |deviation|)` of a decay fit as CSV.
pub fn write_decay_csv<T: Real, W: Write>(fit: &DecayFit<T>, out: W) -> Result<()> {
    let rows: Vec<DecayRow<T>> = fit.table.iter().map(|&(r, d)| DecayRow { r, deviation: d }).collect();
    write_rows(&rows, out)
}

fn write_rows<R: Serialize, W: Write>(rows: &[R], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
