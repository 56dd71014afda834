use std::f64::consts::PI;
use std::io::BufReader;
use std::sync::Arc;

use cone_spectra::fredholm::{cs_moduli_virtual_dim, index_report, wall_crossing, EndKind, EndSpec, OperatorSpec};
use cone_spectra::g2::{
    associator_norm_residual, check_su3_identification, cross, g2_identity_residual, phi, Vec7,
};
use cone_spectra::geometry::{
    hl_decay, hl_xi_relation_residual, jordan_angles, lawlor_angles, lawlor_decay, lawlor_profile, lawlor_solve,
    principal_angles, transverse_plane_pair, verify_special_lagrangian, write_profile_csv, HlConeLink,
    HlSmoothing, LawlorAngles, LawlorNeck, LawlorParams,
};
use cone_spectra::indicial::{
    indicial_roots, jacobi_spectrum, morse_index, symmetry_check, DTable, KernelSource, SLConeSpec, Window,
};
use cone_spectra::scalar::rational_string;
use cone_spectra::spectrum::{mesh_spectrum_with, sphere_spectrum, torus_spectrum, MeshSpectrumOptions, Spectrum, TorusMetric, TriMesh};
use cone_spectra::stability::{null_torsion_bound, stability_report, ConeComponent, ConeData};
use cone_spectra::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;

pub struct Output {
    pub result: Value,
    pub provenance: Vec<String>,
    pub csv: Option<String>,
}

impl Output {
    fn json(result: Value) -> Self {
        Output { result, provenance: Vec::new(), csv: None }
    }
}

fn csv_of<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn spectrum_output(s: &Spectrum<f64>) -> Result<Output> {
    Ok(Output {
        result: json!({"cutoff": s.cutoff, "exact": s.exact, "entries": s.to_json()}),
        provenance: Vec::new(),
        csv: Some(csv_of(&s.entries)?),
    })
}

pub fn spectrum(cmd: &SpectrumCmd) -> Result<Output> {
    match cmd {
        SpectrumCmd::Torus(a) => {
            let m = TorusMetric::new(a.metric[0], a.metric[1], a.metric[2])?;
            spectrum_output(&torus_spectrum(&m, a.cutoff)?)
        }
        SpectrumCmd::Sphere(a) => spectrum_output(&sphere_spectrum(a.cutoff)?),
        SpectrumCmd::Mesh(a) => {
            let file = std::fs::File::open(&a.off)?;
            let mesh = TriMesh::<f64, 3>::from_off(BufReader::new(file))?;
            let opts = MeshSpectrumOptions { dense_limit: a.dense_limit, ..Default::default() };
            let mut out = spectrum_output(&mesh_spectrum_with(&mesh, a.count, &opts)?)?;
            out.result["vertices"] = json!(mesh.vertices.len());
            out.result["faces"] = json!(mesh.faces.len());
            Ok(out)
        }
    }
}

/// Link data behind `--cone` or `--table`.
pub enum Link {
    Sl(SLConeSpec<f64>),
    Table(DTable<f64>),
}

impl Link {
    pub fn source(&self) -> &dyn KernelSource<f64> {
        match self {
            Link::Sl(s) => s,
            Link::Table(t) => t,
        }
    }
}

pub struct ResolvedCone {
    pub link: Link,
    /// Preset name, or `table` / `torus`.
    pub preset: String,
    pub provenance: String,
}

fn parse_triple(s: &str) -> Result<[f64; 3]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("expected three numbers, got '{s}'")))?;
    v.try_into().map_err(|_| Error::InvalidInput(format!("expected three numbers, got '{s}'")))
}

pub fn resolve_cone(args: &ConeArgs) -> Result<ResolvedCone> {
    if let Some(path) = &args.table {
        let text = std::fs::read_to_string(path)?;
        return Ok(ResolvedCone {
            link: Link::Table(DTable::parse_csv(path, &text, None)?),
            preset: "table".into(),
            provenance: format!("table: kernel dimensions read from {path}"),
        });
    }
    let name = args.cone.as_deref().ok_or_else(|| Error::InvalidInput("either --cone or --table is required".into()))?;
    let c = args.cutoff;
    let (link, preset, provenance) = match name {
        "hl" => (
            SLConeSpec::harvey_lawson(c)?,
            "hl",
            "hl: Harvey-Lawson cone over the Clifford torus (e^{it1}, e^{it2}, e^{-i(t1+t2)})/sqrt(3); flat link metric (2/3, 1/3, 2/3), spectrum by exact lattice enumeration".to_string(),
        ),
        "plane" => (
            SLConeSpec::plane(c)?,
            "plane",
            "plane: special Lagrangian 3-plane; round S^2 link with eigenvalues k(k+1) of multiplicity 2k+1".to_string(),
        ),
        "plane-pair" => (
            SLConeSpec::plane_pair(c)?,
            "plane-pair",
            "plane-pair: two transverse special Lagrangian planes; disjoint union of two round S^2 links".to_string(),
        ),
        other => match other.strip_prefix("torus:") {
            Some(g) => {
                let g = parse_triple(g)?;
                let m = TorusMetric::new(g[0], g[1], g[2])?;
                (
                    SLConeSpec::flat_torus(&m, c)?,
                    "torus",
                    format!("torus: flat torus link with metric ({}, {}, {}) taken as given", g[0], g[1], g[2]),
                )
            }
            None => {
                return Err(Error::InvalidInput(format!(
                    "unknown cone '{other}'; expected hl, plane, plane-pair or torus:g11,g12,g22"
                )))
            }
        },
    };
    Ok(ResolvedCone { link: Link::Sl(link), preset: preset.into(), provenance })
}

fn default_symmetry(preset: &str) -> Option<u32> {
    match preset {
        "hl" => Some(2),
        "plane" | "plane-pair" => Some(6),
        _ => None,
    }
}

pub fn cone_data(resolved: &ResolvedCone, sym_dim: Option<u32>, stratum_dim: Option<u32>) -> Result<ConeData<f64>> {
    let sym = sym_dim.or_else(|| default_symmetry(&resolved.preset));
    let decorate = |mut c: ConeComponent<f64>| {
        if let Some(h) = sym {
            c = c.with_symmetry(h);
        }
        if let Some(z) = stratum_dim {
            c = c.with_stratum(z);
        }
        c
    };
    let comps = match (&resolved.link, resolved.preset.as_str()) {
        (Link::Sl(s), "plane-pair") => {
            let p = SLConeSpec::plane(s.spectrum.cutoff)?;
            vec![decorate(ConeComponent::from_sl(p.clone())), decorate(ConeComponent::from_sl(p))]
        }
        (Link::Sl(s), _) => vec![decorate(ConeComponent::from_sl(s.clone()))],
        (Link::Table(t), _) => vec![decorate(ConeComponent::new(Arc::new(t.clone())))],
    };
    ConeData::new(comps)
}

#[derive(Serialize)]
struct RootRow {
    lambda: f64,
    dimension: u32,
}

pub fn indicial(a: &IndicialArgs) -> Result<Output> {
    let cone = resolve_cone(&a.cone)?;
    let window = Window::<f64>::parse(&a.window)?;
    let source = cone.link.source();
    let table = indicial_roots(source, window)?;
    let symmetric = (window.lo + window.hi + 2.0).abs() < 1e-12 && window.lo_closed == window.hi_closed;
    let mut result = json!({
        "cone": table.label,
        "window": window.to_string(),
        "roots": table.to_json(),
        "total_dimension": table.total_dimension(),
        "symmetric": if symmetric { json!(symmetry_check(source, window)?) } else { Value::Null },
    });
    if a.jacobi {
        let eig = jacobi_spectrum(source, window)?;
        result["jacobi"] = json!(eig.iter().map(|e| e.to_json()).collect::<Vec<_>>());
        result["morse_index"] = json!(morse_index(source)?);
    }
    let rows: Vec<RootRow> = table.roots.iter().map(|r| RootRow { lambda: r.value, dimension: r.total_dimension }).collect();
    Ok(Output { result, provenance: vec![cone.provenance], csv: Some(csv_of(&rows)?) })
}

pub fn stability(a: &StabilityArgs) -> Result<Output> {
    let resolved = resolve_cone(&a.cone)?;
    let cone = cone_data(&resolved, a.sym_dim, a.stratum_dim)?;
    let mut result = stability_report(&cone)?.to_json();
    result["cone"] = json!(cone.label());
    if let Some(area) = a.area {
        let b = null_torsion_bound(area)?;
        result["null_torsion"] = json!({
            "b": b.b,
            "bound": b.bound,
            "bound_exact": b.bound_exact.map(|q| rational_string(&q)),
            "minimal_area": b.minimal_area,
        });
    }
    Ok(Output { result, provenance: vec![resolved.provenance], csv: None })
}

pub fn index(a: &IndexArgs) -> Result<Output> {
    let resolved = resolve_cone(&a.cone)?;
    let cone = cone_data(&resolved, a.sym_dim, a.stratum_dim)?;
    let kind = match a.kind {
        Kind::Ac => EndKind::Ac,
        Kind::Cs => EndKind::Cs,
    };
    let op = OperatorSpec { kind, ends: vec![EndSpec { cone: cone.clone(), rate: a.rate }] };
    let mut result = index_report(&op)?;
    if let Some(to) = a.to {
        result["wall_crossing"] = json!({"from": a.rate, "to": to, "change": wall_crossing(&op, a.rate, to)?});
    }
    if kind == EndKind::Cs {
        let cones = [cone];
        result["moduli_virtual_dim"] = json!({
            "fixed_structure": cs_moduli_virtual_dim(&cones, false)?,
            "one_parameter": cs_moduli_virtual_dim(&cones, true)?,
        });
    }
    Ok(Output { result, provenance: vec![resolved.provenance], csv: None })
}

fn params(a: &[f64; 3]) -> Result<LawlorParams<f64>> {
    LawlorParams::new(*a)
}

#[derive(Serialize)]
struct LawlorDecayRow {
    r: f64,
    deviation: f64,
    remainder: f64,
}

pub fn lawlor(cmd: &LawlorCmd, seed: u64) -> Result<Output> {
    match cmd {
        LawlorCmd::Angles(a) => {
            let p = params(&a.a)?;
            let t = lawlor_angles(&p, a.tolerance)?;
            Ok(Output::json(json!({
                "a": p.a,
                "theta": t.theta,
                "sum_minus_pi": t.theta.iter().sum::<f64>() - PI,
                "area_constant": p.area_constant(),
            })))
        }
        LawlorCmd::Solve(a) => {
            let target = LawlorAngles::new(a.theta)?;
            let p = lawlor_solve(&target, a.area)?;
            let back = lawlor_angles(&p, 1e-13)?;
            let residual = (0..3).map(|k| (back.theta[k] - target.theta[k]).abs()).fold(0.0, f64::max);
            Ok(Output::json(json!({
                "theta": target.theta,
                "area_constant": a.area,
                "a": p.a,
                "angle_residual": residual,
            })))
        }
        LawlorCmd::Profile(a) => {
            let p = params(&a.a)?;
            if a.points < 2 || !(a.y_min < a.y_max) {
                return Err(Error::InvalidInput("need at least two points and y-min < y-max".into()));
            }
            let ys: Vec<f64> = (0..a.points)
                .map(|i| a.y_min + (a.y_max - a.y_min) * i as f64 / (a.points - 1) as f64)
                .collect();
            let rows = lawlor_profile(&p, &ys)?;
            let mut buf = Vec::new();
            write_profile_csv(&rows, &mut buf)?;
            Ok(Output {
                result: json!({"a": p.a, "rows": rows}),
                provenance: Vec::new(),
                csv: Some(String::from_utf8(buf).expect("csv output is utf-8")),
            })
        }
        LawlorCmd::Verify(a) => lawlor_verify(a, seed),
    }
}

fn lawlor_verify(a: &LawlorVerifyArgs, seed: u64) -> Result<Output> {
    let p = params(&a.a)?;
    if !(a.y_range > 0.0) {
        return Err(Error::InvalidInput("y-range must be positive".into()));
    }
    let neck = LawlorNeck { a: p, y_range: (-a.y_range, a.y_range) };
    let calibration = verify_special_lagrangian(&neck, a.samples, seed)?;
    let sigma = a.sigma;
    let n = sigma.iter().map(|s| s * s).sum::<f64>().sqrt();
    if !(n > 0.0) {
        return Err(Error::InvalidInput("sigma must be nonzero".into()));
    }
    let sigma = sigma.map(|s| s / n);
    let window = (a.decay.r_min, a.decay.r_max);
    let lead = lawlor_decay(&p, sigma, false, window, a.decay.radii)?;
    let rest = lawlor_decay(&p, sigma, true, window, a.decay.radii)?;
    let rows: Vec<LawlorDecayRow> = lead
        .table
        .iter()
        .zip(&rest.table)
        .map(|(&(r, d), &(_, e))| LawlorDecayRow { r, deviation: d, remainder: e })
        .collect();
    Ok(Output {
        result: json!({
            "a": p.a,
            "calibration": calibration,
            "decay": {"leading": lead, "remainder": rest},
        }),
        provenance: Vec::new(),
        csv: Some(csv_of(&rows)?),
    })
}

pub fn hl(cmd: &HlCmd, seed: u64) -> Result<Output> {
    match cmd {
        HlCmd::Verify(a) => {
            let branches: Vec<usize> = match a.branch {
                Some(b) => vec![b],
                None => vec![1, 2, 3],
            };
            let mut calibration = vec![serde_json::to_value(verify_special_lagrangian::<f64>(&HlConeLink, a.samples, seed)?)?];
            let mut fits = Vec::new();
            for &b in &branches {
                let s = HlSmoothing { branch: b, a: a.a, r_range: (0.05, a.r_max) };
                if !(a.r_max > 0.05) {
                    return Err(Error::InvalidInput("r-max must exceed 0.05".into()));
                }
                calibration.push(serde_json::to_value(verify_special_lagrangian(&s, a.samples, seed)?)?);
                fits.push(hl_decay(b, a.a, (a.theta1, a.theta2), (a.fit_r_min, a.fit_r_max), a.radii)?);
            }
            let mut header = vec!["r".to_string()];
            header.extend(branches.iter().map(|b| format!("branch{b}")));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for i in 0..fits[0].table.len() {
                let mut rec = vec![fits[0].table[i].0.to_string()];
                rec.extend(fits.iter().map(|f| f.table[i].1.to_string()));
                w.write_record(&rec)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
            Ok(Output {
                result: json!({
                    "a": a.a,
                    "branches": branches,
                    "calibration": calibration,
                    "decay": fits,
                }),
                provenance: Vec::new(),
                csv: Some(String::from_utf8(bytes).expect("csv output is utf-8")),
            })
        }
        HlCmd::XiRelation(a) => {
            let probes: Vec<Value> = (0..4)
                .map(|k| {
                    let r = a.r * f64::from(1u32 << k);
                    Ok(json!({"r": r, "residual": hl_xi_relation_residual(r, a.theta1, a.theta2)?}))
                })
                .collect::<Result<_>>()?;
            Ok(Output::json(json!({
                "r": a.r,
                "theta": [a.theta1, a.theta2],
                "residual": hl_xi_relation_residual(a.r, a.theta1, a.theta2)?,
                "probes": probes,
            })))
        }
    }
}

pub fn g2(cmd: &G2Cmd, seed: u64) -> Result<Output> {
    let G2Cmd::Check(a) = cmd;
    check_su3_identification()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = || Vec7::<f64>(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
    let mut worst = [0.0f64; 4];
    for _ in 0..a.samples {
        let (x, y, z) = (v(), v(), v());
        let c = cross(&x, &y);
        worst[0] = worst[0].max(g2_identity_residual(&x, &y).abs());
        worst[1] = worst[1].max(associator_norm_residual(&x, &y, &z).abs());
        worst[2] = worst[2].max(c.dot(&x).abs().max(c.dot(&y).abs()));
        worst[3] = worst[3].max((phi(&x, &y, &z) - c.dot(&z)).abs());
    }
    Ok(Output::json(json!({
        "samples": a.samples,
        "su3_identification": true,
        "max_g2_identity_residual": worst[0],
        "max_associator_norm_residual": worst[1],
        "max_cross_orthogonality": worst[2],
        "max_phi_cross_residual": worst[3],
    })))
}

pub fn planes(a: &PlanesArgs) -> Result<Output> {
    let t = LawlorAngles::new(a.theta)?;
    let pair = transverse_plane_pair(&t)?;
    let c3 = |f: &[Vec7<f64>; 3]| f.map(|v| v.to_c3());
    let jordan = jordan_angles(&c3(&pair.pi0), &c3(&pair.pi_theta))?;
    let principal = principal_angles(&c3(&pair.pi0), &c3(&pair.pi_theta))?;
    let residual = |f: &[Vec7<f64>; 3]| cone_spectra::g2::associator_residual(f);
    Ok(Output::json(json!({
        "theta": t.theta,
        "pi0": pair.pi0.iter().map(|v| v.0).collect::<Vec<_>>(),
        "pi_theta": pair.pi_theta.iter().map(|v| v.0).collect::<Vec<_>>(),
        "normal": pair.normal.0,
        "associator_residual": [residual(&pair.pi0)?, residual(&pair.pi_theta)?],
        "jordan_angles": jordan,
        "principal_angles": principal,
    })))
}
