//! Index of the Fueter operator on asymptotically conical (AC) and conically
//! singular (CS) associatives in weighted spaces.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::indicial::{IndicialRoot, Window, ROOT_TOL};
use crate::scalar::{rational_string, Rational, Real};
use crate::stability::{s_ind, ConeData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EndKind {
    Ac,
    Cs,
}

/// One end (or singular point) with its cone and weight.
#[derive(Clone)]
pub struct EndSpec<T> {
    pub cone: ConeData<T>,
    pub rate: T,
}

#[derive(Clone)]
pub struct OperatorSpec<T> {
    pub kind: EndKind,
    pub ends: Vec<EndSpec<T>>,
}

/// Nearest indicial roots on either side of a rate, when found within the searched range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chamber<T> {
    pub below: Option<T>,
    pub above: Option<T>,
}

#[derive(Clone, Debug)]
pub struct EndContribution<T> {
    pub rate: T,
    pub contribution: Rational,
    pub crossed: Vec<(T, u32)>,
    pub chamber: Chamber<T>,
}

fn on_wall<T: Real>(cone: &ConeData<T>, rate: T) -> Result<()> {
    let probe = Window::closed(rate, rate);
    if let Some(r) = cone.roots(&probe)?.first() {
        return Err(Error::RateOnWall { rate: rate.as_f64(), root: r.value.as_f64() });
    }
    Ok(())
}

fn dims(roots: &[IndicialRoot<impl Real>]) -> i64 {
    roots.iter().map(|r| r.total_dimension as i64).sum()
}

/// AC contribution of one end:
/// `d₋₁/2 + Σ_{(−1,λ)} d` for `λ ≥ −1`, and `−(d₋₁/2 + Σ_{(λ,−1)} d)` below.
fn ac_contribution<T: Real>(end: &EndSpec<T>) -> Result<(Rational, Vec<(T, u32)>)> {
    on_wall(&end.cone, end.rate)?;
    let minus_one = -T::one();
    let half = Rational::new(end.cone.d_lambda(minus_one)? as i64, 2);
    let at_minus_one = (end.rate - minus_one).abs() <= T::lit(ROOT_TOL);
    let (window, sign) = if end.rate > minus_one || at_minus_one {
        (Window::open(minus_one, end.rate.max(minus_one)), 1)
    } else {
        (Window::open(end.rate, minus_one), -1)
    };
    let roots = end.cone.roots(&window)?;
    let crossed = roots.iter().map(|r| (r.value, r.total_dimension)).collect();
    Ok((Rational::from_integer(sign) * (half + Rational::from_integer(dims(&roots))), crossed))
}

fn integral(q: Rational, what: &str) -> Result<i64> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegerIndex(format!("{what} = {}", rational_string(&q))))
    }
}

/// Per-end breakdown of the index, with AC/CS sign applied.
pub fn index_contributions<T: Real>(op: &OperatorSpec<T>) -> Result<Vec<EndContribution<T>>> {
    if op.ends.is_empty() {
        return Err(Error::InvalidInput("operator has no ends".into()));
    }
    let sign = match op.kind {
        EndKind::Ac => Rational::from_integer(1),
        EndKind::Cs => Rational::from_integer(-1),
    };
    op.ends
        .iter()
        .map(|end| {
            let (c, crossed) = ac_contribution(end)?;
            Ok(EndContribution {
                rate: end.rate,
                contribution: sign * c,
                crossed,
                chamber: chamber(&end.cone, end.rate)?,
            })
        })
        .collect()
}

/// Fredholm index of the weighted Fueter operator.
pub fn index<T: Real>(op: &OperatorSpec<T>) -> Result<i64> {
    let total = index_contributions(op)?
        .iter()
        .fold(Rational::from_integer(0), |acc, e| acc + e.contribution);
    integral(total, "index")
}

/// `index(to) − index(from)` as a signed sum of kernel dimensions over the
/// roots crossed by each end.
pub fn wall_crossing_ends<T: Real>(op: &OperatorSpec<T>, from: &[T], to: &[T]) -> Result<i64> {
    if from.len() != op.ends.len() || to.len() != op.ends.len() {
        return Err(Error::InvalidInput("one rate per end is required".into()));
    }
    let mut total = 0i64;
    for ((end, &a), &b) in op.ends.iter().zip(from).zip(to) {
        on_wall(&end.cone, a)?;
        on_wall(&end.cone, b)?;
        let (lo, hi, sign) = if a <= b { (a, b, 1) } else { (b, a, -1) };
        total += sign * dims(&end.cone.roots(&Window::open(lo, hi))?);
    }
    Ok(match op.kind {
        EndKind::Ac => total,
        EndKind::Cs => -total,
    })
}

/// Wall crossing with every end moved from `rate_from` to `rate_to`.
pub fn wall_crossing<T: Real>(op: &OperatorSpec<T>, rate_from: T, rate_to: T) -> Result<i64> {
    let n = op.ends.len();
    wall_crossing_ends(op, &vec![rate_from; n], &vec![rate_to; n])
}

/// Nearest roots around `rate`, searching outward while the kernel data is complete.
pub fn chamber<T: Real>(cone: &ConeData<T>, rate: T) -> Result<Chamber<T>> {
    let mut found = Chamber { below: None, above: None };
    for radius in [0.5, 1.0, 2.0, 4.0, 8.0] {
        let r = T::lit(radius);
        let roots = match cone.roots(&Window::closed(rate - r, rate + r)) {
            Ok(roots) => roots,
            Err(Error::CutoffExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        found.below = roots.iter().rev().map(|x| x.value).find(|&v| v < rate);
        found.above = roots.iter().map(|x| x.value).find(|&v| v > rate);
        if found.below.is_some() && found.above.is_some() {
            break;
        }
    }
    Ok(found)
}

/// `−Σ s-ind(C_i)`, plus one for a one-parameter family of structures.
pub fn cs_moduli_virtual_dim<T: Real>(cones: &[ConeData<T>], one_parameter: bool) -> Result<i64> {
    let mut total = Rational::from_integer(if one_parameter { 1 } else { 0 });
    for c in cones {
        total -= s_ind(c)?;
    }
    integral(total, "virtual dimension")
}

/// `dim ker D_{L,−1} = b¹(L) + b⁰(Σ) − 1` for an AC special Lagrangian.
pub fn ac_sl_kernel_dim(b1_of_l: u32, b0_of_link: u32) -> Result<i64> {
    if b0_of_link == 0 {
        return Err(Error::InvalidInput("the link needs at least one component".into()));
    }
    Ok(b1_of_l as i64 + b0_of_link as i64 - 1)
}

pub fn index_report<T: Real>(op: &OperatorSpec<T>) -> Result<serde_json::Value> {
    let ends = index_contributions(op)?;
    let total = ends.iter().fold(Rational::from_integer(0), |acc, e| acc + e.contribution);
    let idx = integral(total, "index")?;
    let opt = |x: Option<T>| x.map(|v| v.as_f64());
    Ok(json!({
        "kind": op.kind,
        "index": idx,
        "ends": ends.iter().zip(&op.ends).map(|(e, spec)| json!({
            "cone": spec.cone.label(),
            "rate": e.rate.as_f64(),
            "contribution": rational_string(&e.contribution),
            "crossed_roots": e.crossed.iter().map(|(l, d)| json!({"lambda": l.as_f64(), "dimension": d})).collect::<Vec<_>>(),
            "chamber": {"below": opt(e.chamber.below), "above": opt(e.chamber.above)},
        })).collect::<Vec<_>>(),
    }))
}
