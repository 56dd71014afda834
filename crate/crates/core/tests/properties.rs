//! Property tests for the algebraic, spectral and index invariants.

use std::f64::consts::PI;
use std::sync::Arc;

use cone_spectra::fredholm::{chamber, index, wall_crossing, EndKind, EndSpec, OperatorSpec};
use cone_spectra::g2::{associator_norm_residual, cross, g2_identity_residual, phi, psi, Vec7};
use cone_spectra::g2::is_associative_frame;
use cone_spectra::geometry::{lawlor_angles, lawlor_embed, LawlorParams};
use cone_spectra::indicial::{
    d_lambda, indicial_roots, jacobi_spectrum, symmetry_check, DTable, KernelSource, SLConeSpec, Window,
    PRESET_CUTOFF,
};
use cone_spectra::spectrum::{torus_spectrum, TorusMetric};
use cone_spectra::stability::{s_ind, s_ind_minus, s_ind_plus, sl_lower_bound, ConeComponent, ConeData};
use proptest::prelude::*;

fn vec7() -> impl Strategy<Value = Vec7<f64>> {
    prop::array::uniform7(-2.0f64..2.0).prop_map(Vec7)
}

fn metric() -> impl Strategy<Value = TorusMetric<f64>> {
    (0.3f64..3.0, 0.3f64..3.0, -0.9f64..0.9)
        .prop_map(|(g11, g22, c)| TorusMetric::new(g11, c * (g11 * g22).sqrt(), g22).unwrap())
}

/// Integer entries give exact lattice spectra.
fn integer_metric() -> impl Strategy<Value = TorusMetric<f64>> {
    (1i32..5, 1i32..5, -3i32..4)
        .prop_filter("positive definite", |&(a, b, c)| a * b > c * c)
        .prop_map(|(a, b, c)| TorusMetric::new(a as f64, c as f64, b as f64).unwrap())
}

fn permutation_sign(p: &[usize; 4]) -> f64 {
    let mut s = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cross_product_is_orthogonal(u in vec7(), v in vec7()) {
        let x = cross(&u, &v);
        prop_assert!(x.dot(&u).abs() < 1e-12);
        prop_assert!(x.dot(&v).abs() < 1e-12);
    }

    #[test]
    fn phi_is_cross_pairing(u in vec7(), v in vec7(), w in vec7()) {
        prop_assert!((phi(&u, &v, &w) - cross(&u, &v).dot(&w)).abs() < 1e-12);
    }

    #[test]
    fn psi_is_totally_antisymmetric(u in vec7(), v in vec7(), w in vec7(), z in vec7()) {
        let args = [u, v, w, z];
        let base = psi(&u, &v, &w, &z);
        let idx = [0usize, 1, 2, 3];
        for a in idx {
            for b in idx {
                for c in idx {
                    for d in idx {
                        let p = [a, b, c, d];
                        let mut seen = p;
                        seen.sort();
                        if seen != idx {
                            continue;
                        }
                        let val = psi(&args[a], &args[b], &args[c], &args[d]);
                        prop_assert!((val - permutation_sign(&p) * base).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn associator_norm_identity(u in vec7(), v in vec7(), w in vec7()) {
        prop_assert!(associator_norm_residual(&u, &v, &w).abs() < 1e-10);
    }

    #[test]
    fn g2_identity(u in vec7(), v in vec7()) {
        prop_assert!(g2_identity_residual(&u, &v).abs() < 1e-11);
    }

    #[test]
    fn torus_multiplicities_are_even(m in metric()) {
        let s = torus_spectrum(&m, 30.0).unwrap();
        for e in &s.entries {
            if e.eigenvalue > 1e-9 {
                prop_assert!(e.multiplicity % 2 == 0, "{} has multiplicity {}", e.eigenvalue, e.multiplicity);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_symmetry_on_flat_tori(m in integer_metric()) {
        let cone = SLConeSpec::flat_torus(&m, PRESET_CUTOFF).unwrap();
        prop_assert!(symmetry_check(&cone, Window::closed(-3.0, 1.0)).unwrap());
    }

    #[test]
    fn no_roots_in_minus_one_zero_when_gap_is_large(m in metric()) {
        let cone = SLConeSpec::flat_torus(&m, PRESET_CUTOFF).unwrap();
        if cone.spectrum.first_nonzero().unwrap() >= 2.0 {
            let t = indicial_roots(&cone, Window::open(-1.0, 0.0)).unwrap();
            prop_assert!(t.roots.is_empty());
        }
    }

    #[test]
    fn roots_are_deterministic_and_additive(m1 in metric(), m2 in metric(), lo in -3.0f64..-1.5, hi in 0.5f64..1.0) {
        let a = SLConeSpec::flat_torus(&m1, PRESET_CUTOFF).unwrap();
        let b = SLConeSpec::flat_torus(&m2, PRESET_CUTOFF).unwrap();
        let w = Window::closed(lo, hi);
        let ta = indicial_roots(&a, w).unwrap();
        prop_assert_eq!(ta.to_json(), indicial_roots(&a, w).unwrap().to_json());
        let union = SLConeSpec::disjoint_union(&[&a, &b], "a+b").unwrap();
        let tb = indicial_roots(&b, w).unwrap();
        let tu = indicial_roots(&union, w).unwrap();
        prop_assert_eq!(tu.total_dimension(), ta.total_dimension() + tb.total_dimension());
        for r in &tu.roots {
            let sum = d_lambda(&a, r.value).unwrap() + d_lambda(&b, r.value).unwrap();
            prop_assert_eq!(r.total_dimension, sum);
        }
    }

    #[test]
    fn jacobi_pairs_collide_exactly(m in metric()) {
        let cone = SLConeSpec::flat_torus(&m, PRESET_CUTOFF).unwrap();
        let w = Window::closed(-3.0, 2.0);
        let eig = jacobi_spectrum(&cone, w).unwrap();
        for pair in eig.windows(2) {
            prop_assert!(pair[0].eigenvalue != pair[1].eigenvalue);
        }
        let roots: u32 = indicial_roots(&cone, w).unwrap().total_dimension();
        let counted: u32 = eig.iter().map(|e| e.multiplicity).sum();
        prop_assert!(counted <= roots);
    }
}

fn random_table(d_m1: u32, inner: Vec<(f64, u32)>, d1: u32) -> DTable<f64> {
    let mut entries = vec![(-1.0, d_m1), (1.0, d1)];
    entries.extend(inner);
    DTable::new("random", entries, (-1.0, 1.0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stability_ordering(
        d_m1 in 0u32..6,
        inner in prop::collection::vec((-0.95f64..0.95, 0u32..5), 0..4),
        h in 0u32..=14,
        extra in 0u32..10,
        z_frac in 0.0f64..1.0,
    ) {
        let mut inner = inner;
        inner.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        inner.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-6);
        let orbit = 14 - h;
        let d1 = orbit + extra;
        let z = orbit + (z_frac * extra as f64).floor() as u32;
        let table = random_table(d_m1, inner, d1);
        let comp = ConeComponent::new(Arc::new(table)).with_symmetry(h).with_stratum(z);
        let cone = ConeData::single(comp).unwrap();
        let (lo, mid, hi) = (s_ind_minus(&cone).unwrap(), s_ind(&cone).unwrap(), s_ind_plus(&cone).unwrap());
        prop_assert!(lo <= mid && mid <= hi, "{lo} {mid} {hi}");
        if extra == 0 {
            prop_assert!(lo == mid && mid == hi);
        }
    }

    #[test]
    fn fredholm_ac_is_minus_cs(rate in -2.9f64..2.9) {
        let cone = ConeData::harvey_lawson(PRESET_CUTOFF).unwrap();
        let ac = OperatorSpec { kind: EndKind::Ac, ends: vec![EndSpec { cone: cone.clone(), rate }] };
        let cs = OperatorSpec { kind: EndKind::Cs, ends: vec![EndSpec { cone, rate }] };
        match (index(&ac), index(&cs)) {
            (Ok(a), Ok(c)) => prop_assert_eq!(a, -c),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn index_is_constant_on_chambers(rate in -2.5f64..2.5, t in prop::collection::vec(0.01f64..0.99, 20)) {
        let cone = ConeData::plane_pair(PRESET_CUTOFF).unwrap();
        let Ok(ch) = chamber(&cone, rate) else { return Ok(()) };
        let (Some(lo), Some(hi)) = (ch.below, ch.above) else { return Ok(()) };
        let op = |r: f64| OperatorSpec { kind: EndKind::Ac, ends: vec![EndSpec { cone: cone.clone(), rate: r }] };
        let first = index(&op(rate)).unwrap();
        for s in t {
            prop_assert_eq!(index(&op(lo + s * (hi - lo))).unwrap(), first);
        }
    }

    #[test]
    fn wall_crossing_telescopes(a in -2.9f64..2.9, b in -2.9f64..2.9, c in -2.9f64..2.9) {
        let cone = ConeData::plane_pair(PRESET_CUTOFF).unwrap();
        let op = OperatorSpec { kind: EndKind::Ac, ends: vec![EndSpec { cone, rate: 0.5 }] };
        if let (Ok(ab), Ok(bc), Ok(ac)) = (wall_crossing(&op, a, b), wall_crossing(&op, b, c), wall_crossing(&op, a, c)) {
            prop_assert_eq!(ab + bc, ac);
        }
    }
}

#[test]
fn crossing_minus_one_adds_d_minus_one() {
    for cone in [
        ConeData::harvey_lawson(PRESET_CUTOFF).unwrap(),
        ConeData::plane(PRESET_CUTOFF).unwrap(),
        ConeData::plane_pair(PRESET_CUTOFF).unwrap(),
    ] {
        let op = |r: f64| OperatorSpec { kind: EndKind::Ac, ends: vec![EndSpec { cone: cone.clone(), rate: r }] };
        let s = 0.05;
        let jump = index(&op(-1.0 + s)).unwrap() - index(&op(-1.0 - s)).unwrap();
        assert_eq!(jump, cone.d_lambda(-1.0).unwrap() as i64, "{}", cone.label());
    }
}

#[test]
fn sl_bound_holds_when_first_eigenvalue_is_two() {
    let mut checked = 0;
    for (cone, dim_h) in [(SLConeSpec::harvey_lawson(PRESET_CUTOFF).unwrap(), 2), (SLConeSpec::plane(PRESET_CUTOFF).unwrap(), 6)] {
        let gap_ok = cone.spectrum.entries.iter().all(|e| e.eigenvalue <= 1e-9 || e.eigenvalue >= 2.0 - 1e-9);
        if !gap_ok || cone.spectrum.multiplicity(2.0).unwrap() < 6 {
            continue;
        }
        let data = ConeData::single(ConeComponent::from_sl(cone.clone()).with_symmetry(dim_h)).unwrap();
        assert!(s_ind_minus(&data).unwrap() >= sl_lower_bound(&cone.topology), "{}", cone.label);
        checked += 1;
    }
    assert_eq!(checked, 1);
}

#[test]
fn hl_has_d0_at_least_seven() {
    let hl = SLConeSpec::harvey_lawson(PRESET_CUTOFF).unwrap();
    assert!(hl.spectrum.multiplicity(2.0).unwrap() >= 6);
    assert!(d_lambda(&hl, 0.0).unwrap() >= 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn lawlor_angles_sum_to_pi(e in prop::array::uniform3(-1.0f64..1.0)) {
        let a = LawlorParams::new(e.map(|x| 10f64.powf(x))).unwrap();
        let t = lawlor_angles(&a, 1e-12).unwrap();
        prop_assert!((t.theta.iter().sum::<f64>() - PI).abs() < 1e-8);
    }

    #[test]
    fn lawlor_angle_grows_with_its_parameter(e in prop::array::uniform3(-1.0f64..1.0), k in 0usize..3) {
        let a = e.map(|x| 10f64.powf(x));
        let mut b = a;
        b[k] *= 1.05;
        let ta = lawlor_angles(&LawlorParams::new(a).unwrap(), 1e-12).unwrap().theta;
        let tb = lawlor_angles(&LawlorParams::new(b).unwrap(), 1e-12).unwrap().theta;
        prop_assert!(tb[k] > ta[k]);
        for j in (0..3).filter(|&j| j != k) {
            prop_assert!(tb[j] < ta[j]);
        }
    }

    #[test]
    fn lawlor_frames_are_associative(y in -30.0f64..30.0, s in prop::array::uniform3(-1.0f64..1.0)) {
        let n = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
        prop_assume!(n > 0.1);
        let a = LawlorParams::new([0.4, 1.0, 3.0]).unwrap();
        let sample = lawlor_embed(y, s.map(|x| x / n), &a).unwrap();
        let f = &sample.tangents;
        let frame = [Vec7::from_c3(&f[0]), Vec7::from_c3(&f[1]), Vec7::from_c3(&f[2])];
        prop_assert!(is_associative_frame(&frame, 1e-9).unwrap());
    }
}

#[test]
fn kernel_sources_report_labels() {
    let t = random_table(2, vec![], 12);
    assert_eq!(KernelSource::<f64>::label(&t), "random");
}

#[test]
fn decay_fits_tighten_outward() {
    use cone_spectra::geometry::{hl_decay, lawlor_decay};
    let a = LawlorParams::new([0.7, 1.0, 2.5]).unwrap();
    let sigma = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
    let near: f64 = lawlor_decay(&a, sigma, false, (2.0, 20.0), 10).unwrap().fitted_exponent;
    let far: f64 = lawlor_decay(&a, sigma, false, (20.0, 200.0), 10).unwrap().fitted_exponent;
    assert!((far + 2.0).abs() < (near + 2.0).abs(), "{near} {far}");
    let near: f64 = hl_decay(1, 1.0, (0.3, 1.9), (1.0, 10.0), 10).unwrap().fitted_exponent;
    let far: f64 = hl_decay(1, 1.0, (0.3, 1.9), (10.0, 100.0), 10).unwrap().fitted_exponent;
    assert!((far + 1.0).abs() < (near + 1.0).abs(), "{near} {far}");
}
