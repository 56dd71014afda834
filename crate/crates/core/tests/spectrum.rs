use cone_spectra::spectrum::{
    clifford_torus_metric, mesh_eigenvalues, mesh_spectrum, sphere_spectrum, torus_spectrum,
    MeshSpectrumOptions, TorusMetric, TriMesh,
};

fn within(got: &[f64], want: &[f64], rel: f64) -> bool {
    got.iter().zip(want).all(|(g, w)| {
        if *w == 0.0 {
            g.abs() < 1e-6
        } else {
            ((g - w) / w).abs() <= rel
        }
    })
}

#[test]
fn icosphere_level_four_matches_harmonics() {
    let mesh = TriMesh::<f64, 3>::icosphere(4);
    let s = mesh_spectrum(&mesh, 9).unwrap();
    let got = s.flat_values();
    assert_eq!(got.len(), 9);
    assert!(within(&got, &[0.0, 2.0, 2.0, 2.0, 6.0, 6.0, 6.0, 6.0, 6.0], 0.05), "{got:?}");
    assert_eq!(s.entries.iter().map(|e| e.multiplicity).collect::<Vec<_>>(), vec![1, 3, 5]);
}

#[test]
fn sphere_error_shrinks_with_refinement() {
    let target = sphere_spectrum(6.0f64).unwrap().flat_values();
    let mut last = f64::INFINITY;
    for level in 1..=4 {
        let got = mesh_eigenvalues(&TriMesh::<f64, 3>::icosphere(level), 9, &MeshSpectrumOptions::default()).unwrap();
        let err = got[1..]
            .iter()
            .zip(&target[1..])
            .map(|(g, t)| ((g - t) / t).abs())
            .fold(0.0, f64::max);
        assert!(err < last, "level {level}: {err} vs {last}");
        last = err;
    }
}

#[test]
fn clifford_torus_mesh_matches_lattice() {
    let mesh = TriMesh::<f64, 6>::clifford_torus(64).unwrap();
    let got = mesh_spectrum(&mesh, 7).unwrap().flat_values();
    let target = torus_spectrum(&clifford_torus_metric::<f64>(), 2.0).unwrap().flat_values();
    assert_eq!(target, vec![0.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
    assert!(within(&got, &target, 0.05), "{got:?}");
}

#[test]
fn weyl_law_on_flat_tori() {
    for g in [[1.0, 0.0, 1.0], [2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0], [1.3, 0.4, 0.9]] {
        let m = TorusMetric::new(g[0], g[1], g[2]).unwrap();
        for lambda in [50.0, 200.0] {
            let s = torus_spectrum(&m, lambda).unwrap();
            let predicted = m.area() / (4.0 * std::f64::consts::PI) * lambda;
            let count = s.counting_function(lambda) as f64;
            assert!((count - predicted).abs() <= 0.25 * predicted, "{count} vs {predicted}");
        }
    }
}
