use std::collections::HashMap;
use std::io::BufRead;

use super::eigen::symmetric_eigen;
use super::sparse::{lowest_eigenvalues, SubspaceOptions, SymSparse};
use super::torus::clifford_embedding;
use super::{Spectrum, CLUSTER_GAP};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Minimal triangle area accepted by [`TriMesh::validate`].
pub const MIN_FACE_AREA: f64 = 1e-14;

/// Closed oriented triangulated surface in `R^D`.
#[derive(Clone, Debug)]
pub struct TriMesh<T, const D: usize> {
    pub vertices: Vec<[T; D]>,
    pub faces: Vec<[usize; 3]>,
}

fn diff<T: Real, const D: usize>(a: &[T; D], b: &[T; D]) -> [T; D] {
    std::array::from_fn(|k| a[k] - b[k])
}

fn dot<T: Real, const D: usize>(a: &[T; D], b: &[T; D]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// `|a ∧ b|`, twice the triangle area, in any dimension.
fn wedge_norm<T: Real, const D: usize>(a: &[T; D], b: &[T; D]) -> T {
    let ab = dot(a, b);
    (dot(a, a) * dot(b, b) - ab * ab).max(T::zero()).sqrt()
}

impl<T: Real, const D: usize> TriMesh<T, D> {
    pub fn face_area(&self, f: usize) -> T {
        let [i, j, k] = self.faces[f];
        let v = &self.vertices;
        wedge_norm(&diff(&v[j], &v[i]), &diff(&v[k], &v[i])) / T::lit(2.0)
    }

    pub fn total_area(&self) -> T {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    /// Checks that the mesh is a closed, consistently oriented, edge-manifold
    /// surface without degenerate triangles or unused vertices.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 || self.faces.is_empty() {
            return Err(Error::InvalidMesh("mesh is empty".into()));
        }
        if let Some(p) = self.vertices.iter().position(|v| v.iter().any(|x| !x.is_finite())) {
            return Err(Error::InvalidMesh(format!("vertex {p} is not finite")));
        }
        let mut used = vec![false; n];
        let mut edges: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * self.faces.len());
        for (f, face) in self.faces.iter().enumerate() {
            if face.iter().any(|&i| i >= n) {
                return Err(Error::InvalidMesh(format!("face {f} has an out of range index")));
            }
            if face[0] == face[1] || face[1] == face[2] || face[0] == face[2] {
                return Err(Error::InvalidMesh(format!("face {f} repeats a vertex")));
            }
            if !(self.face_area(f) > T::lit(MIN_FACE_AREA)) {
                return Err(Error::InvalidMesh(format!("face {f} is degenerate")));
            }
            for c in 0..3 {
                used[face[c]] = true;
                *edges.entry((face[c], face[(c + 1) % 3])).or_default() += 1;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::InvalidMesh(format!("vertex {v} belongs to no face")));
        }
        for (&(a, b), &count) in &edges {
            if count > 1 {
                return Err(Error::InvalidMesh(format!(
                    "edge ({a}, {b}) is used {count} times with the same orientation"
                )));
            }
            if !edges.contains_key(&(b, a)) {
                return Err(Error::InvalidMesh(format!(
                    "edge ({a}, {b}) has no oppositely oriented twin"
                )));
            }
        }
        Ok(())
    }

    /// Cotangent stiffness matrix and lumped (one third of the incident area) mass.
    pub fn cotangent_laplacian(&self) -> (SymSparse<T>, Vec<T>) {
        let n = self.vertices.len();
        let mut rows: Vec<HashMap<usize, T>> = vec![HashMap::new(); n];
        let mut mass = vec![T::zero(); n];
        let half = T::lit(0.5);
        for face in &self.faces {
            let p = face.map(|i| self.vertices[i]);
            let twice_area = wedge_norm(&diff(&p[1], &p[0]), &diff(&p[2], &p[0]));
            for c in 0..3 {
                mass[face[c]] += twice_area / T::lit(6.0);
                let (i, j, k) = (c, (c + 1) % 3, (c + 2) % 3);
                let cot = dot(&diff(&p[j], &p[i]), &diff(&p[k], &p[i])) / twice_area;
                let w = half * cot;
                let (a, b) = (face[j], face[k]);
                *rows[a].entry(b).or_default() -= w;
                *rows[b].entry(a).or_default() -= w;
                *rows[a].entry(a).or_default() += w;
                *rows[b].entry(b).or_default() += w;
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| {
                let mut r: Vec<(usize, T)> = r.into_iter().collect();
                r.sort_by_key(|&(j, _)| j);
                r
            })
            .collect();
        (SymSparse { rows }, mass)
    }
}

impl<T: Real> TriMesh<T, 3> {
    /// Parses an OFF file with triangular faces.
    pub fn from_off<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().enumerate().filter_map(|(i, l)| match l {
            Ok(s) => {
                let s = s.split('#').next().unwrap_or("").trim().to_string();
                (!s.is_empty()).then_some(Ok((i + 1, s)))
            }
            Err(e) => Some(Err(e)),
        });
        let mut next = || -> Result<(usize, String)> {
            lines
                .next()
                .transpose()?
                .ok_or(Error::Parse { line: 0, message: "unexpected end of file".into() })
        };
        let (line, header) = next()?;
        let rest = header
            .strip_prefix("OFF")
            .ok_or(Error::Parse { line, message: "missing OFF header".into() })?
            .trim()
            .to_string();
        let (line, counts) = if rest.is_empty() { next()? } else { (line, rest) };
        let counts: Vec<usize> = counts
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse { line, message: format!("bad counts: {e}") })?;
        if counts.len() < 2 {
            return Err(Error::Parse { line, message: "expected vertex and face counts".into() });
        }
        let (nv, nf) = (counts[0], counts[1]);
        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (line, s) = next()?;
            let xs: Vec<f64> = s
                .split_whitespace()
                .take(3)
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line, message: format!("bad vertex: {e}") })?;
            if xs.len() != 3 {
                return Err(Error::Parse { line, message: "vertex needs 3 coordinates".into() });
            }
            vertices.push([T::lit(xs[0]), T::lit(xs[1]), T::lit(xs[2])]);
        }
        let mut faces = Vec::with_capacity(nf);
        for _ in 0..nf {
            let (line, s) = next()?;
            let xs: Vec<usize> = s
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line, message: format!("bad face: {e}") })?;
            if xs.first() != Some(&3) || xs.len() < 4 {
                return Err(Error::Parse { line, message: "only triangles are supported".into() });
            }
            faces.push([xs[1], xs[2], xs[3]]);
        }
        Ok(TriMesh { vertices, faces })
    }

    pub fn to_off(&self) -> String {
        let mut out = format!("OFF\n{} {} 0\n", self.vertices.len(), self.faces.len());
        for v in &self.vertices {
            out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
        }
        for f in &self.faces {
            out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
        }
        out
    }

    /// Unit icosphere after `level` rounds of 4-to-1 subdivision.
    pub fn icosphere(level: usize) -> Self {
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, t, 0.0],
            [1.0, t, 0.0],
            [-1.0, -t, 0.0],
            [1.0, -t, 0.0],
            [0.0, -1.0, t],
            [0.0, 1.0, t],
            [0.0, -1.0, -t],
            [0.0, 1.0, -t],
            [t, 0.0, -1.0],
            [t, 0.0, 1.0],
            [-t, 0.0, -1.0],
            [-t, 0.0, 1.0],
        ];
        let unit = |p: [f64; 3]| {
            let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            [p[0] / n, p[1] / n, p[2] / n]
        };
        let mut vertices: Vec<[f64; 3]> = raw.iter().map(|&p| unit(p)).collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
            [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
            [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
            [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
        ];
        for _ in 0..level {
            let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
            let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<[f64; 3]>| {
                *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                    let (p, q) = (vertices[a], vertices[b]);
                    vertices.push(unit([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                    vertices.len() - 1
                })
            };
            let mut next = Vec::with_capacity(faces.len() * 4);
            for &[a, b, c] in &faces {
                let ab = midpoint(a, b, &mut vertices);
                let bc = midpoint(b, c, &mut vertices);
                let ca = midpoint(c, a, &mut vertices);
                next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
            }
            faces = next;
        }
        TriMesh {
            vertices: vertices.into_iter().map(|p| p.map(T::lit)).collect(),
            faces,
        }
    }
}

impl<T: Real> TriMesh<T, 6> {
    /// Regular `n × n` sample of the unit-radius Clifford link in `C³ = R⁶`.
    pub fn clifford_torus(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput("torus grid needs n ≥ 3".into()));
        }
        let step = T::lit(std::f64::consts::TAU / n as f64);
        let mut vertices = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = clifford_embedding(T::from_count(i) * step, T::from_count(j) * step);
                vertices.push([z[0].re, z[0].im, z[1].re, z[1].im, z[2].re, z[2].im]);
            }
        }
        let id = |i: usize, j: usize| (i % n) * n + (j % n);
        let mut faces = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                faces.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                faces.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
        Ok(TriMesh { vertices, faces })
    }
}

/// Solver selection for [`mesh_spectrum_with`].
#[derive(Clone, Debug)]
pub struct MeshSpectrumOptions {
    /// Meshes with at most this many vertices use the dense Jacobi solver.
    pub dense_limit: usize,
    pub subspace: SubspaceOptions,
    pub cluster_gap: f64,
}

impl Default for MeshSpectrumOptions {
    fn default() -> Self {
        MeshSpectrumOptions {
            dense_limit: 300,
            subspace: SubspaceOptions::default(),
            cluster_gap: CLUSTER_GAP,
        }
    }
}

/// Lowest `count` eigenvalues of the lumped cotangent Laplacian, in ascending order.
pub fn mesh_eigenvalues<T: Real, const D: usize>(
    mesh: &TriMesh<T, D>,
    count: usize,
    options: &MeshSpectrumOptions,
) -> Result<Vec<T>> {
    mesh.validate()?;
    let n = mesh.vertices.len();
    if count == 0 || count > n {
        return Err(Error::InvalidInput(format!(
            "count must be between 1 and the vertex count {n}, got {count}"
        )));
    }
    let (stiffness, mass) = mesh.cotangent_laplacian();
    if n <= options.dense_limit {
        let dense = stiffness.to_dense();
        let scaled: Vec<T> = (0..n * n)
            .map(|k| dense[k] / (mass[k / n] * mass[k % n]).sqrt())
            .collect();
        let eig = symmetric_eigen(&scaled, n)?;
        return Ok(eig.values[..count].to_vec());
    }
    let shift = T::one() / mesh.total_area();
    lowest_eigenvalues(&stiffness, &mass, count, shift, &options.subspace)
}

/// Numerical spectrum of a closed mesh, clustered into multiplicities.
pub fn mesh_spectrum<T: Real, const D: usize>(mesh: &TriMesh<T, D>, count: usize) -> Result<Spectrum<T>> {
    mesh_spectrum_with(mesh, count, &MeshSpectrumOptions::default())
}

pub fn mesh_spectrum_with<T: Real, const D: usize>(
    mesh: &TriMesh<T, D>,
    count: usize,
    options: &MeshSpectrumOptions,
) -> Result<Spectrum<T>> {
    let values = mesh_eigenvalues(mesh, count, options)?;
    let cutoff = *values.last().expect("count ≥ 1");
    Spectrum::from_clustered(&values, cutoff.max(T::zero()), T::lit(options.cluster_gap))
}
