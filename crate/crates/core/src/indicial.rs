//! Homogeneous kernels of the Fueter operator on special Lagrangian cones.
//!
//! On an SL cone the rate-λ kernel splits into functions on the link with
//! `Δf = λ(λ+1)f` (branch F), `Δh = (λ+2)(λ+1)h` (branch H), and harmonic
//! one-forms at λ = −1. Log terms never occur, so they are not modelled.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::scalar::{rational_string, Rational, Real};
use crate::spectrum::{
    clifford_torus_metric, sphere_spectrum, torus_spectrum, LinkTopology, Spectrum, TorusMetric,
    MATCH_TOL,
};

/// Default spectral cutoff of the built-in presets.
pub const PRESET_CUTOFF: f64 = 42.0;

/// Relative tolerance for comparing inexact roots and window endpoints.
pub const ROOT_TOL: f64 = 1e-9;

/// Convention tag attached to Jacobi spectra.
pub const JACOBI_CONVENTION: &str =
    "multiplicity of l^2+l-2 is d_l + d_(-1-l) at the representative l >= -1/2, counted once when l = -1/2";

/// Real interval with explicit endpoint flags.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Real> Window<T> {
    pub fn closed(lo: T, hi: T) -> Self {
        Window { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: T, hi: T) -> Self {
        Window { lo, hi, lo_closed: false, hi_closed: false }
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: T, hi: T) -> Self {
        Window { lo, hi, lo_closed: false, hi_closed: true }
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: T, hi: T) -> Self {
        Window { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo > self.hi {
            return Err(Error::InvalidInput(format!("invalid window {self}")));
        }
        Ok(())
    }

    pub fn contains(&self, x: T) -> bool {
        let tol = |e: T| T::lit(ROOT_TOL) * e.abs().max(T::one());
        let above = if (x - self.lo).abs() <= tol(self.lo) {
            self.lo_closed
        } else {
            x > self.lo
        };
        let below = if (x - self.hi).abs() <= tol(self.hi) {
            self.hi_closed
        } else {
            x < self.hi
        };
        above && below
    }

    /// Largest Laplace eigenvalue either branch can demand inside the window.
    pub fn eigenvalue_demand(&self) -> T {
        let f = |l: T| l * (l + T::one());
        let h = |l: T| (l + T::lit(2.0)) * (l + T::one());
        [f(self.lo), f(self.hi), h(self.lo), h(self.hi)]
            .into_iter()
            .fold(T::zero(), T::max)
    }

    /// Parses `lo:hi` (closed) or interval notation such as `(-1,1]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse window '{s}'"));
        let num = |t: &str| -> Result<T> {
            let v: f64 = t.trim().parse().map_err(|_| bad())?;
            Ok(T::lit(v))
        };
        if let Some((a, b)) = s.split_once(':') {
            let w = Window::closed(num(a)?, num(b)?);
            w.validate()?;
            return Ok(w);
        }
        let lo_closed = match s.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match s.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &s[1..s.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let w = Window { lo: num(a)?, hi: num(b)?, lo_closed, hi_closed };
        w.validate()?;
        Ok(w)
    }
}

impl<T: Real> fmt::Display for Window<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Exact value of an indicial root of an integer spectrum: either rational or
/// `(offset + sign·√radicand)/2` with a non-square radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactRoot {
    Rational(Rational),
    Surd { offset: i64, sign: i64, radicand: i64 },
}

impl ExactRoot {
    /// `(offset + sign·√radicand)/2`, reduced to a rational when possible.
    pub fn half_sum(offset: i64, sign: i64, radicand: i64) -> Self {
        let s = radicand.sqrt();
        if s * s == radicand {
            ExactRoot::Rational(Rational::new(offset + sign * s, 2))
        } else {
            ExactRoot::Surd { offset, sign, radicand }
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            ExactRoot::Rational(q) => *q.numer() as f64 / *q.denom() as f64,
            ExactRoot::Surd { offset, sign, radicand } => {
                (offset as f64 + sign as f64 * (radicand as f64).sqrt()) / 2.0
            }
        }
    }

    /// The partner root `−1 − λ`.
    pub fn mirror(&self) -> Self {
        match *self {
            ExactRoot::Rational(q) => ExactRoot::Rational(-Rational::from_integer(1) - q),
            ExactRoot::Surd { offset, sign, radicand } => {
                ExactRoot::Surd { offset: -2 - offset, sign: -sign, radicand }
            }
        }
    }
}

impl fmt::Display for ExactRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactRoot::Rational(q) => write!(f, "{}", rational_string(q)),
            ExactRoot::Surd { offset, sign, radicand } => {
                let op = if *sign < 0 { '-' } else { '+' };
                write!(f, "({offset}{op}sqrt({radicand}))/2")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    F,
    H,
    HarmonicOneForm,
    /// Dimension supplied directly by a user table.
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchContribution<T> {
    pub branch: Branch,
    pub source_eigenvalue: T,
    pub dimension: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndicialRoot<T> {
    pub value: T,
    pub exact: Option<ExactRoot>,
    pub branches: Vec<BranchContribution<T>>,
    pub total_dimension: u32,
}

impl<T: Real> IndicialRoot<T> {
    /// Exact comparison when both keys are exact, tolerance otherwise.
    pub fn same_point(&self, other: &IndicialRoot<T>) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => same_value(self.value, other.value),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "lambda": self.value.as_f64(),
            "dimension": self.total_dimension,
            "branches": self.branches,
        });
        if let Some(e) = self.exact {
            v["exact"] = json!(e.to_string());
        }
        v
    }
}

fn same_value<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(ROOT_TOL) * a.abs().max(b.abs()).max(T::one())
}

fn insert_root<T: Real>(roots: &mut Vec<IndicialRoot<T>>, root: IndicialRoot<T>) {
    match roots.iter_mut().find(|r| r.same_point(&root)) {
        Some(r) => {
            r.total_dimension += root.total_dimension;
            r.branches.extend(root.branches);
            if r.exact.is_none() {
                r.exact = root.exact;
            }
        }
        None => roots.push(root),
    }
}

fn sort_roots<T: Real>(roots: &mut [IndicialRoot<T>]) {
    roots.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(Ordering::Equal));
}

/// Anything that can report kernel dimensions `d_λ`.
pub trait KernelSource<T: Real> {
    fn label(&self) -> String;

    fn d_lambda(&self, lambda: T) -> Result<u32>;

    /// Every root with `d_λ > 0` in the window, sorted ascending.
    fn roots(&self, window: &Window<T>) -> Result<Vec<IndicialRoot<T>>>;

    /// Fails when the source cannot guarantee completeness on the window.
    fn check_window(&self, window: &Window<T>) -> Result<()>;
}

/// A special Lagrangian cone given by the Laplace spectrum and topology of its link.
#[derive(Clone, Debug)]
pub struct SLConeSpec<T> {
    pub spectrum: Spectrum<T>,
    pub topology: LinkTopology,
    pub label: String,
}

impl<T: Real> SLConeSpec<T> {
    pub fn new(spectrum: Spectrum<T>, topology: LinkTopology, label: impl Into<String>) -> Result<Self> {
        topology.validate()?;
        let first = spectrum.entries[0];
        if first.eigenvalue.abs() > T::lit(1e-6) || first.multiplicity != topology.b0 {
            return Err(Error::InconsistentCone(format!(
                "first spectrum entry ({}, {}) does not match b0 = {}",
                first.eigenvalue, first.multiplicity, topology.b0
            )));
        }
        Ok(SLConeSpec { spectrum, topology, label: label.into() })
    }

    /// Harvey–Lawson `T²`-cone: flat Clifford torus link.
    pub fn harvey_lawson(cutoff: T) -> Result<Self> {
        let s = torus_spectrum(&clifford_torus_metric(), cutoff)?;
        Self::new(s, LinkTopology::from_genera(&[1]), "hl")
    }

    /// A special Lagrangian 3-plane: totally geodesic round sphere link.
    pub fn plane(cutoff: T) -> Result<Self> {
        Self::new(sphere_spectrum(cutoff)?, LinkTopology::from_genera(&[0]), "plane")
    }

    /// Union of two transverse SL planes.
    pub fn plane_pair(cutoff: T) -> Result<Self> {
        let p = Self::plane(cutoff)?;
        Self::disjoint_union(&[&p, &p], "plane-pair")
    }

    /// Cone over a flat torus in `S⁵`; the metric is taken as given.
    pub fn flat_torus(metric: &TorusMetric<T>, cutoff: T) -> Result<Self> {
        let s = torus_spectrum(metric, cutoff)?;
        Self::new(s, LinkTopology::from_genera(&[1]), "torus")
    }

    pub fn disjoint_union(parts: &[&SLConeSpec<T>], label: impl Into<String>) -> Result<Self> {
        let spectra: Vec<&Spectrum<T>> = parts.iter().map(|p| &p.spectrum).collect();
        let tops: Vec<&LinkTopology> = parts.iter().map(|p| &p.topology).collect();
        Self::new(
            Spectrum::disjoint_union(&spectra)?,
            LinkTopology::disjoint_union(&tops),
            label,
        )
    }

    /// `mult(x)` with `mult(0) = b⁰` taken from the topology.
    fn mult(&self, x: T) -> Result<u32> {
        if x.abs() <= T::lit(MATCH_TOL) {
            return Ok(self.topology.b0);
        }
        self.spectrum.multiplicity(x)
    }

    fn eigenvalue_key(&self, index: usize) -> Option<i64> {
        if index == 0 {
            return Some(0);
        }
        self.spectrum
            .exact
            .then(|| self.spectrum.entries[index].eigenvalue.round().to_i64())
            .flatten()
    }
}

impl<T: Real> KernelSource<T> for SLConeSpec<T> {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn d_lambda(&self, lambda: T) -> Result<u32> {
        if same_value(lambda, -T::one()) {
            return Ok(self.topology.b1);
        }
        let one = T::one();
        let two = T::lit(2.0);
        Ok(self.mult(lambda * (lambda + one))? + self.mult((lambda + two) * (lambda + one))?)
    }

    fn check_window(&self, window: &Window<T>) -> Result<()> {
        window.validate()?;
        let demand = window.eigenvalue_demand();
        if demand > self.spectrum.cutoff * (T::one() + T::lit(MATCH_TOL)) {
            return Err(Error::CutoffExceeded {
                needed: demand.as_f64(),
                cutoff: self.spectrum.cutoff.as_f64(),
            });
        }
        Ok(())
    }

    fn roots(&self, window: &Window<T>) -> Result<Vec<IndicialRoot<T>>> {
        self.check_window(window)?;
        let mut roots: Vec<IndicialRoot<T>> = Vec::new();
        if self.topology.b1 > 0 && window.contains(-T::one()) {
            roots.push(IndicialRoot {
                value: -T::one(),
                exact: Some(ExactRoot::Rational(Rational::from_integer(-1))),
                branches: vec![BranchContribution {
                    branch: Branch::HarmonicOneForm,
                    source_eigenvalue: T::zero(),
                    dimension: self.topology.b1,
                }],
                total_dimension: self.topology.b1,
            });
        }
        for (i, entry) in self.spectrum.entries.iter().enumerate() {
            let delta = if i == 0 { T::zero() } else { entry.eigenvalue };
            let dim = if i == 0 { self.topology.b0 } else { entry.multiplicity };
            let s = (T::one() + T::lit(4.0) * delta).sqrt();
            let key = self.eigenvalue_key(i);
            for (branch, offset) in [(Branch::F, -1i64), (Branch::H, -3i64)] {
                for sign in [1i64, -1] {
                    let exact = key.map(|k| ExactRoot::half_sum(offset, sign, 1 + 4 * k));
                    let value = match exact {
                        Some(e) => T::lit(e.value()),
                        None => (T::lit(offset as f64) + T::lit(sign as f64) * s) / T::lit(2.0),
                    };
                    // λ = −1 is governed by harmonic one-forms only
                    let at_minus_one = match exact {
                        Some(e) => e == ExactRoot::Rational(Rational::from_integer(-1)),
                        None => i == 0 && same_value(value, -T::one()),
                    };
                    if at_minus_one || !window.contains(value) {
                        continue;
                    }
                    insert_root(
                        &mut roots,
                        IndicialRoot {
                            value,
                            exact,
                            branches: vec![BranchContribution { branch, source_eigenvalue: delta, dimension: dim }],
                            total_dimension: dim,
                        },
                    );
                }
            }
        }
        sort_roots(&mut roots);
        Ok(roots)
    }
}

/// Kernel dimensions supplied directly, complete on a closed range.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DTable<T> {
    pub label: String,
    pub entries: Vec<(T, u32)>,
    pub complete_on: (T, T),
}

impl<T: Real> DTable<T> {
    pub fn new(label: impl Into<String>, entries: Vec<(T, u32)>, complete_on: (T, T)) -> Result<Self> {
        if !(complete_on.0 <= complete_on.1) {
            return Err(Error::InvalidInput("table range is empty".into()));
        }
        for (i, &(l, _)) in entries.iter().enumerate() {
            if !l.is_finite() || l < complete_on.0 || l > complete_on.1 {
                return Err(Error::InvalidInput(format!("table entry {l} lies outside its range")));
            }
            if entries[..i].iter().any(|&(m, _)| same_value(l, m)) {
                return Err(Error::InvalidInput(format!("table lists {l} twice")));
            }
        }
        Ok(DTable { label: label.into(), entries, complete_on })
    }

    /// Reads `lambda,d` lines; the completeness range defaults to the listed span.
    pub fn parse_csv(label: &str, text: &str, complete_on: Option<(T, T)>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let parse_err = |m: &str| Error::Parse { line: line + 1, message: m.into() };
            if rec.len() != 2 {
                return Err(parse_err("expected 'lambda,d'"));
            }
            let l: f64 = rec[0].parse().map_err(|_| parse_err("bad lambda"))?;
            let d: u32 = rec[1].parse().map_err(|_| parse_err("bad dimension"))?;
            entries.push((T::lit(l), d));
        }
        let range = match complete_on {
            Some(r) => r,
            None => {
                let lo = entries.iter().map(|e| e.0).fold(T::infinity(), T::min);
                let hi = entries.iter().map(|e| e.0).fold(T::neg_infinity(), T::max);
                (lo.min(-T::one()), hi.max(T::one()))
            }
        };
        Self::new(label, entries, range)
    }
}

impl<T: Real> KernelSource<T> for DTable<T> {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn d_lambda(&self, lambda: T) -> Result<u32> {
        self.check_window(&Window::closed(lambda, lambda))?;
        Ok(self
            .entries
            .iter()
            .find(|&&(l, _)| same_value(l, lambda))
            .map_or(0, |e| e.1))
    }

    fn check_window(&self, window: &Window<T>) -> Result<()> {
        window.validate()?;
        let (lo, hi) = self.complete_on;
        let tol = T::lit(ROOT_TOL);
        if window.lo < lo - tol || window.hi > hi + tol {
            let needed = if window.lo < lo - tol { window.lo } else { window.hi };
            return Err(Error::CutoffExceeded {
                needed: needed.as_f64(),
                cutoff: if window.lo < lo - tol { lo.as_f64() } else { hi.as_f64() },
            });
        }
        Ok(())
    }

    fn roots(&self, window: &Window<T>) -> Result<Vec<IndicialRoot<T>>> {
        self.check_window(window)?;
        let mut roots: Vec<IndicialRoot<T>> = self
            .entries
            .iter()
            .filter(|&&(l, d)| d > 0 && window.contains(l))
            .map(|&(l, d)| IndicialRoot {
                value: l,
                exact: None,
                branches: vec![BranchContribution { branch: Branch::Table, source_eigenvalue: l, dimension: d }],
                total_dimension: d,
            })
            .collect();
        sort_roots(&mut roots);
        Ok(roots)
    }
}

/// Kernel dimensions of a disjoint union of links add.
pub fn merged_roots<T: Real>(sources: &[&dyn KernelSource<T>], window: &Window<T>) -> Result<Vec<IndicialRoot<T>>> {
    let mut roots = Vec::new();
    for s in sources {
        for r in s.roots(window)? {
            insert_root(&mut roots, r);
        }
    }
    sort_roots(&mut roots);
    Ok(roots)
}

/// Every indicial root in a window with its kernel dimension.
#[derive(Clone, Debug)]
pub struct KernelTable<T> {
    pub label: String,
    pub window: Window<T>,
    pub roots: Vec<IndicialRoot<T>>,
}

impl<T: Real> KernelTable<T> {
    pub fn dimension_at(&self, lambda: T) -> u32 {
        self.roots
            .iter()
            .find(|r| same_value(r.value, lambda))
            .map_or(0, |r| r.total_dimension)
    }

    pub fn total_dimension(&self) -> u32 {
        self.roots.iter().map(|r| r.total_dimension).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.roots.iter().map(IndicialRoot::to_json).collect())
    }
}

pub fn d_lambda<T: Real>(source: &dyn KernelSource<T>, lambda: T) -> Result<u32> {
    source.d_lambda(lambda)
}

pub fn indicial_roots<T: Real>(source: &dyn KernelSource<T>, window: Window<T>) -> Result<KernelTable<T>> {
    Ok(KernelTable { label: source.label(), window, roots: source.roots(&window)? })
}

/// Checks `d_λ = d_{−2−λ}` at every root of a window symmetric about −1.
pub fn symmetry_check<T: Real>(source: &dyn KernelSource<T>, window: Window<T>) -> Result<bool> {
    if !same_value(window.lo + window.hi, -T::lit(2.0)) || window.lo_closed != window.hi_closed {
        return Err(Error::InvalidInput(format!("window {window} is not symmetric about -1")));
    }
    for r in source.roots(&window)? {
        let partner = -T::lit(2.0) - r.value;
        if source.d_lambda(partner)? != r.total_dimension {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiEigenvalue<T> {
    pub eigenvalue: T,
    pub multiplicity: u32,
    pub representative: T,
    /// Roots in the window mapping to this eigenvalue.
    pub lambdas: Vec<T>,
}

impl<T: Real> JacobiEigenvalue<T> {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "eigenvalue": self.eigenvalue.as_f64(),
            "multiplicity": self.multiplicity,
            "representative": self.representative.as_f64(),
            "lambdas": self.lambdas.iter().map(|l| l.as_f64()).collect::<Vec<_>>(),
        })
    }
}

/// Eigenvalues `λ² + λ − 2` of the Jacobi operator coming from roots in the
/// window; see [`JACOBI_CONVENTION`] for the multiplicity rule.
pub fn jacobi_spectrum<T: Real>(source: &dyn KernelSource<T>, window: Window<T>) -> Result<Vec<JacobiEigenvalue<T>>> {
    let roots = source.roots(&window)?;
    let half = -T::lit(0.5);
    let mut groups: Vec<(IndicialRoot<T>, Vec<T>)> = Vec::new();
    for r in roots {
        let rep = if r.value >= half || same_value(r.value, half) {
            r.clone()
        } else {
            IndicialRoot {
                value: -T::one() - r.value,
                exact: r.exact.map(|e| e.mirror()),
                branches: Vec::new(),
                total_dimension: 0,
            }
        };
        match groups.iter_mut().find(|(g, _)| g.same_point(&rep)) {
            Some((_, ls)) => ls.push(r.value),
            None => groups.push((rep, vec![r.value])),
        }
    }
    let mut out = Vec::with_capacity(groups.len());
    for (rep, lambdas) in groups {
        let rho = rep.value;
        let mut mult = source.d_lambda(rho)?;
        if !same_value(rho, half) {
            mult += source.d_lambda(-T::one() - rho)?;
        }
        out.push(JacobiEigenvalue {
            eigenvalue: rho * rho + rho - T::lit(2.0),
            multiplicity: mult,
            representative: rho,
            lambdas,
        });
    }
    out.sort_by(|a, b| a.eigenvalue.partial_cmp(&b.eigenvalue).unwrap_or(Ordering::Equal));
    Ok(out)
}

/// `d₋₁ + 2 Σ_{−1<λ<0} d_λ + Σ_{0≤λ<1} d_λ`.
pub fn morse_index<T: Real>(source: &dyn KernelSource<T>) -> Result<u32> {
    let d_minus_one = source.d_lambda(-T::one())?;
    let inner: u32 = source
        .roots(&Window::open(-T::one(), T::zero()))?
        .iter()
        .map(|r| r.total_dimension)
        .sum();
    let upper: u32 = source
        .roots(&Window::closed_open(T::zero(), T::one()))?
        .iter()
        .map(|r| r.total_dimension)
        .sum();
    Ok(d_minus_one + 2 * inner + upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hl() -> SLConeSpec<f64> {
        SLConeSpec::harvey_lawson(PRESET_CUTOFF).unwrap()
    }

    fn plane() -> SLConeSpec<f64> {
        SLConeSpec::plane(PRESET_CUTOFF).unwrap()
    }

    #[test]
    fn hl_kernel_dimensions() {
        let c = hl();
        assert_eq!(c.d_lambda(0.0).unwrap(), 7);
        assert_eq!(c.d_lambda(-1.0).unwrap(), 2);
        assert_eq!(c.d_lambda(1.0).unwrap(), 12);
        assert_eq!(c.d_lambda(0.5).unwrap(), 0);
    }

    #[test]
    fn plane_kernel_dimensions() {
        let p = plane();
        assert_eq!(p.d_lambda(1.0).unwrap(), 8);
        assert_eq!(p.d_lambda(0.5).unwrap(), 0);
        let t = indicial_roots(&p, Window::open(-1.0, 1.0)).unwrap();
        assert_eq!(t.roots.len(), 1);
        assert_eq!((t.roots[0].value, t.roots[0].total_dimension), (0.0, 4));
    }

    #[test]
    fn hl_roots_on_closed_window() {
        let t = indicial_roots(&hl(), Window::closed(-2.0, 1.0)).unwrap();
        let got: Vec<(f64, u32)> = t.roots.iter().map(|r| (r.value, r.total_dimension)).collect();
        assert_eq!(got, vec![(-2.0, 7), (-1.0, 2), (0.0, 7), (1.0, 12)]);
        let zero = &t.roots[2];
        assert_eq!(zero.branches.len(), 2);
        assert_eq!(zero.exact, Some(ExactRoot::Rational(Rational::from_integer(0))));
    }

    #[test]
    fn irrational_roots_are_surds() {
        // eigenvalue 8 of the Clifford torus: 1 + 4·8 = 33 is not a square
        let t = indicial_roots(&hl(), Window::closed(-5.0, 3.0)).unwrap();
        let surd = t
            .roots
            .iter()
            .find(|r| matches!(r.exact, Some(ExactRoot::Surd { radicand: 33, .. })))
            .unwrap();
        assert!((surd.value * (surd.value + 1.0) - 8.0).abs() < 1e-12 || ((surd.value + 2.0) * (surd.value + 1.0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn cutoff_is_enforced() {
        let c = SLConeSpec::harvey_lawson(3.0).unwrap();
        assert!(matches!(
            indicial_roots(&c, Window::closed(-2.0, 1.0)),
            Err(Error::CutoffExceeded { .. })
        ));
        assert!(matches!(c.d_lambda(1.0), Err(Error::CutoffExceeded { .. })));
    }

    #[test]
    fn empty_window() {
        let t = indicial_roots(&hl(), Window::open(0.1, 0.2)).unwrap();
        assert!(t.roots.is_empty());
    }

    #[test]
    fn symmetry() {
        assert!(symmetry_check(&hl(), Window::closed(-3.0, 1.0)).unwrap());
        assert!(symmetry_check(&plane(), Window::closed(-3.0, 1.0)).unwrap());
        let broken = DTable::new("broken", vec![(-2.0, 7), (-1.0, 2), (0.0, 6), (1.0, 12), (-3.0, 12)], (-3.0, 1.0)).unwrap();
        assert!(!symmetry_check(&broken, Window::closed(-3.0, 1.0)).unwrap());
        assert!(symmetry_check(&hl(), Window::closed(-2.5, 1.0)).is_err());
    }

    #[test]
    fn jacobi_multiplicities() {
        let j = jacobi_spectrum(&hl(), Window::closed(-2.0, 1.0)).unwrap();
        let minus_two = j.iter().find(|e| (e.eigenvalue + 2.0).abs() < 1e-12).unwrap();
        assert_eq!(minus_two.multiplicity, 9);
        let zero = j.iter().find(|e| e.eigenvalue.abs() < 1e-12).unwrap();
        assert_eq!(zero.multiplicity, 19);
        assert_eq!(zero.lambdas, vec![-2.0, 1.0]);
        assert!(jacobi_spectrum(&hl(), Window::open(0.1, 0.2)).unwrap().is_empty());
    }

    #[test]
    fn morse_indices() {
        assert_eq!(morse_index(&hl()).unwrap(), 9);
        assert_eq!(morse_index(&plane()).unwrap(), 4);
        let trivial = DTable::new("t", vec![], (-1.0, 1.0)).unwrap();
        assert_eq!(morse_index(&trivial).unwrap(), 0);
    }

    #[test]
    fn window_parsing() {
        let w = Window::<f64>::parse("(-1,1]").unwrap();
        assert!(!w.contains(-1.0) && w.contains(1.0) && w.contains(0.0));
        let w = Window::<f64>::parse("-2:1").unwrap();
        assert!(w.contains(-2.0) && w.contains(1.0));
        assert!(Window::<f64>::parse("1:-1").is_err());
        assert!(Window::<f64>::parse("{0,1}").is_err());
    }

    #[test]
    fn inconsistent_b0_is_rejected() {
        let s = sphere_spectrum(6.0).unwrap();
        assert!(SLConeSpec::new(s, LinkTopology::from_genera(&[0, 0]), "x").is_err());
    }

    #[test]
    fn csv_tables() {
        let t = DTable::<f64>::parse_csv("hl", "# lambda,d\n-1,2\n0,7\n1,12\n", None).unwrap();
        assert_eq!(t.d_lambda(0.0).unwrap(), 7);
        assert_eq!(morse_index(&t).unwrap(), 9);
        assert!(DTable::<f64>::parse_csv("x", "0,seven\n", None).is_err());
    }

    #[test]
    fn exact_root_mirror() {
        let r = ExactRoot::half_sum(-1, 1, 33);
        assert!((r.mirror().value() - (-1.0 - r.value())).abs() < 1e-15);
        assert_eq!(ExactRoot::half_sum(-3, 1, 9), ExactRoot::Rational(Rational::from_integer(0)));
        assert_eq!(r.to_string(), "(-1+sqrt(33))/2");
    }
}
