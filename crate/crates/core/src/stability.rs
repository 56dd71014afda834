//! Stability indices of associative cones with one or more link components.

use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::indicial::{merged_roots, IndicialRoot, KernelSource, SLConeSpec, Window};
use crate::scalar::{rational_string, Rational, Real};
use crate::spectrum::LinkTopology;

/// `dim G₂`.
pub const DIM_G2: u32 = 14;

/// Shared handle to a kernel source.
pub type Source<T> = Arc<dyn KernelSource<T> + Send + Sync>;

/// One connected piece of the link together with its symmetry data.
#[derive(Clone)]
pub struct ConeComponent<T> {
    pub source: Source<T>,
    /// `dim H_j`, the stabilizer of the component in `G₂`.
    pub symmetry_group_dim: Option<u32>,
    /// `dim 𝒵_j`, the stratum containing the component.
    pub stratum_dim: Option<u32>,
    /// The link is a totally geodesic sphere, so the cone is a 3-plane.
    pub is_plane: bool,
}

impl<T: Real> ConeComponent<T> {
    pub fn new(source: Source<T>) -> Self {
        ConeComponent { source, symmetry_group_dim: None, stratum_dim: None, is_plane: false }
    }

    pub fn from_sl(cone: SLConeSpec<T>) -> Self {
        let is_plane = cone.topology.b0 == 1
            && cone.topology.b1 == 0
            && cone.spectrum.first_nonzero().map(|v| (v - T::lit(2.0)).abs() < T::lit(1e-9)) == Some(true)
            && cone.spectrum.multiplicity(T::lit(2.0)).ok() == Some(3);
        ConeComponent { source: Arc::new(cone), symmetry_group_dim: None, stratum_dim: None, is_plane }
    }

    pub fn with_symmetry(mut self, dim_h: u32) -> Self {
        self.symmetry_group_dim = Some(dim_h);
        self
    }

    pub fn with_stratum(mut self, dim_z: u32) -> Self {
        self.stratum_dim = Some(dim_z);
        self
    }

    fn validate(&self, index: usize) -> Result<()> {
        if let Some(h) = self.symmetry_group_dim {
            if h > DIM_G2 {
                return Err(Error::InconsistentCone(format!(
                    "component {index}: symmetry group dimension {h} exceeds {DIM_G2}"
                )));
            }
            if let Some(z) = self.stratum_dim {
                if z < DIM_G2 - h {
                    return Err(Error::InconsistentCone(format!(
                        "component {index}: stratum dimension {z} is below the orbit dimension {}",
                        DIM_G2 - h
                    )));
                }
            }
        }
        if let Some(z) = self.stratum_dim {
            let d1 = self.source.d_lambda(T::one())?;
            if z > d1 {
                return Err(Error::InconsistentCone(format!(
                    "component {index}: stratum dimension {z} exceeds d_1 = {d1}"
                )));
            }
        }
        Ok(())
    }
}

/// A cone whose link is the disjoint union of the components.
#[derive(Clone)]
pub struct ConeData<T> {
    pub components: Vec<ConeComponent<T>>,
}

impl<T: Real> ConeData<T> {
    pub fn new(components: Vec<ConeComponent<T>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("a cone needs at least one component".into()));
        }
        for (i, c) in components.iter().enumerate() {
            c.validate(i)?;
        }
        Ok(ConeData { components })
    }

    pub fn single(component: ConeComponent<T>) -> Result<Self> {
        Self::new(vec![component])
    }

    /// Harvey–Lawson cone with `dim H = 2`.
    pub fn harvey_lawson(cutoff: T) -> Result<Self> {
        Self::single(ConeComponent::from_sl(SLConeSpec::harvey_lawson(cutoff)?).with_symmetry(2))
    }

    /// A single SL 3-plane with `dim H = 6`.
    pub fn plane(cutoff: T) -> Result<Self> {
        Self::single(ConeComponent::from_sl(SLConeSpec::plane(cutoff)?).with_symmetry(6))
    }

    /// Transverse pair of SL planes, `dim H = 6` each.
    pub fn plane_pair(cutoff: T) -> Result<Self> {
        let p = ConeComponent::from_sl(SLConeSpec::plane(cutoff)?).with_symmetry(6);
        Self::new(vec![p.clone(), p])
    }

    pub fn label(&self) -> String {
        self.components.iter().map(|c| c.source.label()).collect::<Vec<_>>().join("+")
    }

    fn sources(&self) -> Vec<&dyn KernelSource<T>> {
        self.components
            .iter()
            .map(|c| c.source.as_ref() as &dyn KernelSource<T>)
            .collect()
    }

    /// `d_λ` of the whole cone: the sum over components.
    pub fn d_lambda(&self, lambda: T) -> Result<u32> {
        self.components.iter().map(|c| c.source.d_lambda(lambda)).sum()
    }

    pub fn roots(&self, window: &Window<T>) -> Result<Vec<IndicialRoot<T>>> {
        merged_roots(&self.sources(), window)
    }

    pub fn sum_over(&self, window: Window<T>) -> Result<u32> {
        Ok(self.roots(&window)?.iter().map(|r| r.total_dimension).sum())
    }

    fn orbit_dims(&self) -> Result<Vec<u32>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.symmetry_group_dim
                    .map(|h| DIM_G2 - h)
                    .ok_or(Error::MissingSymmetryData { component: i })
            })
            .collect()
    }

    /// `d₋₁/2 − 7`, the common part of every index.
    fn base(&self) -> Result<Rational> {
        Ok(Rational::new(self.d_lambda(-T::one())? as i64, 2) - Rational::from_integer(7))
    }

    pub fn is_single_plane(&self) -> bool {
        self.components.len() == 1 && self.components[0].is_plane
    }
}

/// `d₋₁/2 + Σ_{−1<λ<1} d_λ − 7`.
pub fn s_ind_minus<T: Real>(cone: &ConeData<T>) -> Result<Rational> {
    let inner = cone.sum_over(Window::open(-T::one(), T::one()))?;
    Ok(cone.base()? + Rational::from_integer(inner as i64))
}

/// `d₋₁/2 + Σ_{−1<λ≤1} d_λ − 7 − Σ_j (14 − dim H_j)`.
pub fn s_ind_plus<T: Real>(cone: &ConeData<T>) -> Result<Rational> {
    let orbits: u32 = cone.orbit_dims()?.iter().sum();
    let inner = cone.sum_over(Window::open_closed(-T::one(), T::one()))?;
    Ok(cone.base()? + Rational::from_integer(inner as i64 - orbits as i64))
}

/// `d₁ = Σ_j (14 − dim H_j)`.
pub fn is_rigid<T: Real>(cone: &ConeData<T>) -> Result<bool> {
    let orbits: u32 = cone.orbit_dims()?.iter().sum();
    Ok(cone.d_lambda(T::one())? == orbits)
}

/// Stratum dimensions, defaulting to the orbit dimension on rigid cones.
pub fn stratum_dims<T: Real>(cone: &ConeData<T>) -> Result<Vec<u32>> {
    let rigid = cone.orbit_dims().is_ok() && is_rigid(cone)?;
    cone.components
        .iter()
        .enumerate()
        .map(|(i, c)| match (c.stratum_dim, c.symmetry_group_dim) {
            (Some(z), _) => Ok(z),
            (None, Some(h)) if rigid => Ok(DIM_G2 - h),
            _ => Err(Error::MissingStratumData { component: i }),
        })
        .collect()
}

/// `d₋₁/2 + Σ_{−1<λ≤1} d_λ − 7 − Σ_j dim 𝒵_j`.
pub fn s_ind<T: Real>(cone: &ConeData<T>) -> Result<Rational> {
    let strata: u32 = stratum_dims(cone)?.iter().sum();
    let inner = cone.sum_over(Window::open_closed(-T::one(), T::one()))?;
    Ok(cone.base()? + Rational::from_integer(inner as i64 - strata as i64))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullTorsionBound<T> {
    /// `Area / 4π`.
    pub b: T,
    /// `2b − 7`.
    pub bound: T,
    /// The bound as a rational when `b` is an integer.
    pub bound_exact: Option<Rational>,
    /// `Area ≥ 24π`.
    pub minimal_area: bool,
}

/// Lower bound `2b − 7` for `s-ind₋` of a cone over a null-torsion curve of the given area.
pub fn null_torsion_bound<T: Real>(area: T) -> Result<NullTorsionBound<T>> {
    if !(area > T::zero()) || !area.is_finite() {
        return Err(Error::NonPositiveArea(area.as_f64()));
    }
    let four_pi = T::lit(4.0) * T::PI();
    let b = area / four_pi;
    let bound = b + b - T::lit(7.0);
    let rounded = b.round();
    let bound_exact = ((b - rounded).abs() <= T::lit(1e-9) * b.max(T::one()))
        .then(|| rounded.to_i64().map(|k| Rational::from_integer(2 * k - 7)))
        .flatten();
    let minimal_area = area >= T::lit(24.0) * T::PI() * (T::one() - T::lit(1e-12));
    Ok(NullTorsionBound { b, bound, bound_exact, minimal_area })
}

/// `b¹/2 + b⁰ − 1`, the lower bound on `s-ind₋` of an SL cone.
pub fn sl_lower_bound(topology: &LinkTopology) -> Rational {
    Rational::new(topology.b1 as i64, 2) + Rational::from_integer(topology.b0 as i64 - 1)
}

/// Everything the stability module can say about a cone, with per-index errors.
#[derive(Debug)]
pub struct StabilityReport {
    pub s_ind_minus: Result<Rational>,
    pub s_ind_plus: Result<Rational>,
    pub s_ind: Result<Rational>,
    pub rigid: Result<bool>,
    pub d_table: serde_json::Value,
    pub plane_excluded: bool,
}

pub fn stability_report<T: Real>(cone: &ConeData<T>) -> Result<StabilityReport> {
    let table = cone.roots(&Window::closed(-T::one(), T::one()))?;
    Ok(StabilityReport {
        s_ind_minus: s_ind_minus(cone),
        s_ind_plus: s_ind_plus(cone),
        s_ind: s_ind(cone),
        rigid: is_rigid(cone),
        d_table: serde_json::Value::Array(table.iter().map(|r| r.to_json()).collect()),
        plane_excluded: cone.is_single_plane(),
    })
}

impl StabilityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let q = |r: &Result<Rational>| match r {
            Ok(v) => json!(rational_string(v)),
            Err(_) => serde_json::Value::Null,
        };
        let mut errors = serde_json::Map::new();
        for (name, err) in [
            ("s_ind_minus", self.s_ind_minus.as_ref().err()),
            ("s_ind_plus", self.s_ind_plus.as_ref().err()),
            ("s_ind", self.s_ind.as_ref().err()),
            ("rigid", self.rigid.as_ref().err()),
        ] {
            if let Some(e) = err {
                errors.insert(name.into(), json!({"kind": e.kind(), "message": e.to_string()}));
            }
        }
        let mut v = json!({
            "s_ind_minus": q(&self.s_ind_minus),
            "s_ind_plus": q(&self.s_ind_plus),
            "s_ind": q(&self.s_ind),
            "rigid": self.rigid.as_ref().ok(),
            "d_table": self.d_table,
        });
        if !errors.is_empty() {
            v["errors"] = serde_json::Value::Object(errors);
        }
        if self.plane_excluded {
            v["tags"] = json!(["excluded from s-ind >= 0 guarantee"]);
        }
        v
    }
}
