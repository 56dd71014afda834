//! Laplace–Beltrami spectra of cone links.
//!
//! Links are normalized to lie on the unit sphere. Analytic spectra (flat
//! tori, round spheres) carry exact multiplicities; triangulated links are
//! handled by a cotangent Laplacian with lumped mass.

mod eigen;
mod mesh;
mod sparse;
mod torus;

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use mesh::{mesh_eigenvalues, mesh_spectrum, mesh_spectrum_with, MeshSpectrumOptions, TriMesh, MIN_FACE_AREA};
pub use sparse::{lowest_eigenvalues, reverse_cuthill_mckee, SkylineCholesky, SubspaceOptions, SymSparse};
pub use torus::{clifford_embedding, clifford_torus_metric, torus_spectrum, TorusMetric};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerance used to look up an eigenvalue in a spectrum.
pub const MATCH_TOL: f64 = 1e-9;

/// Relative gap below which numerically computed eigenvalues are merged.
pub const CLUSTER_GAP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry<T> {
    pub eigenvalue: T,
    pub multiplicity: u32,
}

/// Eigenvalues with multiplicities, complete for eigenvalues `≤ cutoff`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    pub entries: Vec<SpectrumEntry<T>>,
    pub cutoff: T,
    /// Every eigenvalue is an exactly represented integer.
    pub exact: bool,
}

impl<T: Real> Spectrum<T> {
    /// Builds a spectrum from `(eigenvalue, multiplicity)` pairs, checking the
    /// ordering and positivity invariants.
    pub fn new(entries: Vec<SpectrumEntry<T>>, cutoff: T, exact: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("spectrum has no entries".into()));
        }
        if entries.iter().any(|e| e.multiplicity == 0 || !e.eigenvalue.is_finite()) {
            return Err(Error::InvalidInput(
                "spectrum entries need finite eigenvalues and positive multiplicities".into(),
            ));
        }
        if entries.windows(2).any(|w| w[1].eigenvalue <= w[0].eigenvalue) {
            return Err(Error::InvalidInput(
                "spectrum eigenvalues must be strictly increasing".into(),
            ));
        }
        if exact && entries.iter().any(|e| e.eigenvalue.fract() != T::zero()) {
            return Err(Error::InvalidInput(
                "an exact spectrum must have integer eigenvalues".into(),
            ));
        }
        Ok(Spectrum {
            entries,
            cutoff,
            exact,
        })
    }

    /// Groups sorted numerical eigenvalues whose relative gap is below `gap`.
    pub fn from_clustered(values: &[T], cutoff: T, gap: T) -> Result<Self> {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        let mut entries: Vec<SpectrumEntry<T>> = Vec::new();
        let mut members: Vec<T> = Vec::new();
        let flush = |members: &mut Vec<T>, entries: &mut Vec<SpectrumEntry<T>>| {
            if !members.is_empty() {
                let mean = members.iter().copied().sum::<T>() / T::from_count(members.len());
                entries.push(SpectrumEntry {
                    eigenvalue: mean,
                    multiplicity: members.len() as u32,
                });
                members.clear();
            }
        };
        for &v in &sorted {
            if let Some(&last) = members.last() {
                let scale = v.abs().max(last.abs()).max(T::one());
                if v - last > gap * scale {
                    flush(&mut members, &mut entries);
                }
            }
            members.push(v);
        }
        flush(&mut members, &mut entries);
        Self::new(entries, cutoff, false)
    }

    /// Multiplicity of the eigenvalue `x`; zero when `x` is absent or negative.
    pub fn multiplicity(&self, x: T) -> Result<u32> {
        let tol = T::lit(MATCH_TOL) * x.abs().max(T::one());
        if x < -tol {
            return Ok(0);
        }
        if x > self.cutoff + tol {
            return Err(Error::CutoffExceeded {
                needed: x.as_f64(),
                cutoff: self.cutoff.as_f64(),
            });
        }
        Ok(self
            .entries
            .iter()
            .find(|e| (e.eigenvalue - x).abs() <= tol)
            .map_or(0, |e| e.multiplicity))
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn flat_values(&self) -> Vec<T> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.eigenvalue).take(e.multiplicity as usize))
            .collect()
    }

    /// Number of eigenvalues `≤ x`, counted with multiplicity.
    pub fn counting_function(&self, x: T) -> u32 {
        self.entries
            .iter()
            .filter(|e| e.eigenvalue <= x)
            .map(|e| e.multiplicity)
            .sum()
    }

    /// First nonzero eigenvalue, if the spectrum has one.
    pub fn first_nonzero(&self) -> Option<T> {
        let tol = T::lit(MATCH_TOL);
        self.entries
            .iter()
            .map(|e| e.eigenvalue)
            .find(|&v| v > tol)
    }

    /// Spectrum of a disjoint union: multiplicities add.
    pub fn disjoint_union(parts: &[&Spectrum<T>]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("empty union".into()))?;
        let cutoff = parts.iter().map(|s| s.cutoff).fold(first.cutoff, T::min);
        let exact = parts.iter().all(|s| s.exact);
        let mut merged: Vec<SpectrumEntry<T>> = Vec::new();
        for s in parts {
            for e in s.entries.iter().filter(|e| e.eigenvalue <= cutoff) {
                let tol = T::lit(MATCH_TOL) * e.eigenvalue.abs().max(T::one());
                match merged
                    .iter_mut()
                    .find(|m| (m.eigenvalue - e.eigenvalue).abs() <= tol)
                {
                    Some(m) => m.multiplicity += e.multiplicity,
                    None => merged.push(*e),
                }
            }
        }
        merged.sort_by(|a, b| a.eigenvalue.partial_cmp(&b.eigenvalue).expect("finite"));
        Self::new(merged, cutoff, exact)
    }

    /// JSON array of `{"eigenvalue": number, "multiplicity": integer}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.entries).expect("spectrum entries serialize")
    }
}

/// Spherical harmonics on the unit 2-sphere: `ℓ(ℓ+1)` with multiplicity `2ℓ+1`.
pub fn sphere_spectrum<T: Real>(cutoff: T) -> Result<Spectrum<T>> {
    if !(cutoff > T::zero()) {
        return Err(Error::InvalidInput("cutoff must be positive".into()));
    }
    let mut entries = Vec::new();
    let mut l: u64 = 0;
    loop {
        let value = l * (l + 1);
        if T::from_u64(value).expect("eigenvalue fits") > cutoff {
            break;
        }
        entries.push(SpectrumEntry {
            eigenvalue: T::from_u64(value).expect("eigenvalue fits"),
            multiplicity: (2 * l + 1) as u32,
        });
        l += 1;
    }
    Spectrum::new(entries, cutoff, true)
}

/// Betti numbers of a closed oriented link surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkTopology {
    pub b0: u32,
    pub b1: u32,
    pub genus_per_component: Vec<u32>,
}

impl LinkTopology {
    pub fn from_genera(genera: &[u32]) -> Self {
        LinkTopology {
            b0: genera.len() as u32,
            b1: genera.iter().map(|g| 2 * g).sum(),
            genus_per_component: genera.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus_per_component.len() != self.b0 as usize {
            return Err(Error::InvalidInput(format!(
                "b0 = {} but {} component genera given",
                self.b0,
                self.genus_per_component.len()
            )));
        }
        let b1: u32 = self.genus_per_component.iter().map(|g| 2 * g).sum();
        if b1 != self.b1 {
            return Err(Error::InvalidInput(format!(
                "b1 = {} but the genera give {}",
                self.b1, b1
            )));
        }
        Ok(())
    }

    pub fn disjoint_union(parts: &[&LinkTopology]) -> Self {
        let genera: Vec<u32> = parts
            .iter()
            .flat_map(|t| t.genus_per_component.iter().copied())
            .collect();
        Self::from_genera(&genera)
    }
}
