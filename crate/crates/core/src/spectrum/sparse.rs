//! Sparse symmetric pencils `L x = λ M x` with diagonal `M`, solved near the
//! bottom of the spectrum by shift-invert block subspace iteration.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eigen::symmetric_eigen;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric sparse matrix stored as full rows, column indices ascending.
#[derive(Clone, Debug)]
pub struct SymSparse<T> {
    pub rows: Vec<Vec<(usize, T)>>,
}

impl<T: Real> SymSparse<T> {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        self.rows
            .par_iter()
            .map(|row| row.iter().map(|&(j, a)| a * x[j]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> Vec<T> {
        let n = self.n();
        let mut out = vec![T::zero(); n * n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, a) in row {
                out[i * n + j] += a;
            }
        }
        out
    }
}

/// Reverse Cuthill–McKee ordering; `perm[new] = old`.
pub fn reverse_cuthill_mckee<T>(matrix: &SymSparse<T>) -> Vec<usize> {
    let n = matrix.rows.len();
    let degree: Vec<usize> = matrix.rows.iter().map(|r| r.len()).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&i| !visited[i])
            .min_by_key(|&i| degree[i])
            .expect("unvisited vertex remains");
        visited[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = matrix.rows[v]
                .iter()
                .map(|&(j, _)| j)
                .filter(|&j| !visited[j])
                .collect();
            next.sort_by_key(|&j| (degree[j], j));
            for j in next {
                visited[j] = true;
                queue.push_back(j);
            }
        }
    }
    order.reverse();
    order
}

/// Envelope (skyline) Cholesky factor of a permuted SPD matrix.
pub struct SkylineCholesky<T> {
    perm: Vec<usize>,
    first: Vec<usize>,
    /// Row `i` holds `L[i][first[i]..=i]`.
    rows: Vec<Vec<T>>,
}

impl<T: Real> SkylineCholesky<T> {
    pub fn factor(matrix: &SymSparse<T>, perm: Vec<usize>) -> Result<Self> {
        let n = matrix.n();
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut first: Vec<usize> = (0..n).collect();
        for (old, row) in matrix.rows.iter().enumerate() {
            let i = inv[old];
            for &(j_old, _) in row {
                let j = inv[j_old];
                if j < first[i] {
                    first[i] = j;
                }
            }
        }
        let mut rows: Vec<Vec<T>> = (0..n).map(|i| vec![T::zero(); i - first[i] + 1]).collect();
        for (old, row) in matrix.rows.iter().enumerate() {
            let i = inv[old];
            for &(j_old, a) in row {
                let j = inv[j_old];
                if j <= i {
                    rows[i][j - first[i]] += a;
                }
            }
        }
        for i in 0..n {
            let fi = first[i];
            for j in fi..=i {
                let fj = first[j];
                let lo = fi.max(fj);
                let mut s = rows[i][j - fi];
                for k in lo..j {
                    s -= rows[i][k - fi] * rows[j][k - fj];
                }
                if j < i {
                    rows[i][j - fi] = s / rows[j][j - fj];
                } else {
                    if !(s > T::zero()) {
                        return Err(Error::NonPositiveDefinite);
                    }
                    rows[i][i - fi] = s.sqrt();
                }
            }
        }
        Ok(SkylineCholesky { perm, first, rows })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.rows.len();
        let mut y: Vec<T> = self.perm.iter().map(|&old| b[old]).collect();
        for i in 0..n {
            let fi = self.first[i];
            let mut s = y[i];
            for k in fi..i {
                s -= self.rows[i][k - fi] * y[k];
            }
            y[i] = s / self.rows[i][i - fi];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            y[i] /= self.rows[i][i - fi];
            let yi = y[i];
            for k in fi..i {
                y[k] -= self.rows[i][k - fi] * yi;
            }
        }
        let mut x = vec![T::zero(); n];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = y[new];
        }
        x
    }

    pub fn envelope_size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

/// Controls for [`lowest_eigenvalues`].
#[derive(Clone, Debug)]
pub struct SubspaceOptions {
    pub max_iterations: usize,
    /// Residual tolerance relative to `max(1, |θ|)`.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SubspaceOptions {
    fn default() -> Self {
        SubspaceOptions {
            max_iterations: 1000,
            tolerance: 1e-7,
            seed: 0x5eed,
        }
    }
}

fn orthonormalize<T: Real>(block: &mut Vec<Vec<T>>) {
    let mut kept: Vec<Vec<T>> = Vec::with_capacity(block.len());
    for mut v in block.drain(..) {
        for _ in 0..2 {
            for q in &kept {
                let c: T = q.iter().zip(&v).map(|(&a, &b)| a * b).sum();
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let n: T = v.iter().map(|&x| x * x).sum::<T>().sqrt();
        if n > T::epsilon() {
            for x in v.iter_mut() {
                *x /= n;
            }
            kept.push(v);
        }
    }
    *block = kept;
}

/// Lowest `count` eigenvalues of `L x = λ M x` where `mass` is the diagonal
/// of `M`. Works on `A = M^{-1/2} L M^{-1/2}` and iterates with
/// `(A + σ)^{-1} = M^{1/2} (L + σM)^{-1} M^{1/2}`.
pub fn lowest_eigenvalues<T: Real>(
    stiffness: &SymSparse<T>,
    mass: &[T],
    count: usize,
    shift: T,
    options: &SubspaceOptions,
) -> Result<Vec<T>> {
    let n = stiffness.n();
    if count == 0 || count > n {
        return Err(Error::InvalidInput(format!("cannot compute {count} of {n} eigenvalues")));
    }
    let block = (2 * count).max(count + 8).min(n);
    let sqrt_m: Vec<T> = mass.iter().map(|m| m.sqrt()).collect();

    let mut shifted = stiffness.clone();
    for (i, row) in shifted.rows.iter_mut().enumerate() {
        match row.iter_mut().find(|(j, _)| *j == i) {
            Some(entry) => entry.1 += shift * mass[i],
            None => {
                row.push((i, shift * mass[i]));
                row.sort_by_key(|&(j, _)| j);
            }
        }
    }
    let perm = reverse_cuthill_mckee(&shifted);
    let chol = SkylineCholesky::factor(&shifted, perm)?;

    let apply_a = |y: &[T]| -> Vec<T> {
        let x: Vec<T> = y.iter().zip(&sqrt_m).map(|(&a, &s)| a / s).collect();
        stiffness
            .matvec(&x)
            .into_iter()
            .zip(&sqrt_m)
            .map(|(a, &s)| a / s)
            .collect()
    };
    let apply_inv = |y: &[T]| -> Vec<T> {
        let b: Vec<T> = y.iter().zip(&sqrt_m).map(|(&a, &s)| a * s).collect();
        chol.solve(&b)
            .into_iter()
            .zip(&sqrt_m)
            .map(|(a, &s)| a * s)
            .collect()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut y: Vec<Vec<T>> = (0..block)
        .map(|_| (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect())
        .collect();
    orthonormalize(&mut y);

    let tol = T::lit(options.tolerance).max(T::epsilon().sqrt() * T::lit(10.0));
    let mut worst = T::infinity();
    for _ in 0..options.max_iterations {
        let mut z: Vec<Vec<T>> = y.par_iter().map(|v| apply_inv(v)).collect();
        orthonormalize(&mut z);
        let p = z.len();
        if p < count {
            return Err(Error::NoConvergence {
                iterations: 0,
                residual: f64::NAN,
            });
        }
        let az: Vec<Vec<T>> = z.par_iter().map(|v| apply_a(v)).collect();
        let mut h = vec![T::zero(); p * p];
        for i in 0..p {
            for j in i..p {
                let hij: T = z[i].iter().zip(&az[j]).map(|(&a, &b)| a * b).sum();
                let hji: T = z[j].iter().zip(&az[i]).map(|(&a, &b)| a * b).sum();
                let s = (hij + hji) / T::lit(2.0);
                h[i * p + j] = s;
                h[j * p + i] = s;
            }
        }
        let ritz = symmetric_eigen(&h, p)?;
        let combine = |src: &[Vec<T>], coeffs: &[T]| -> Vec<T> {
            let mut out = vec![T::zero(); n];
            for (v, &c) in src.iter().zip(coeffs) {
                for (o, &x) in out.iter_mut().zip(v) {
                    *o += c * x;
                }
            }
            out
        };
        y = ritz.vectors.iter().map(|c| combine(&z, c)).collect();
        worst = T::zero();
        for k in 0..count {
            let ay = combine(&az, &ritz.vectors[k]);
            let theta = ritz.values[k];
            let r: T = ay
                .iter()
                .zip(&y[k])
                .map(|(&a, &b)| (a - theta * b) * (a - theta * b))
                .sum::<T>()
                .sqrt();
            worst = worst.max(r / theta.abs().max(T::one()));
        }
        if worst <= tol {
            return Ok(ritz.values[..count].to_vec());
        }
    }
    Err(Error::NoConvergence {
        iterations: options.max_iterations,
        residual: worst.as_f64(),
    })
}
