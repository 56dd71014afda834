//! Damped Newton iteration with a finite-difference Jacobian.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub fd_step: f64,
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iterations: 100, tolerance: 1e-12, fd_step: 1e-6, max_halvings: 40 }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonResult<T> {
    pub x: Vec<T>,
    pub residual: T,
    pub iterations: usize,
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().map(|&x| x * x).sum::<T>().sqrt()
}

/// Solves `J dx = -f` by Gaussian elimination with partial pivoting.
fn solve<T: Real>(mut j: Vec<Vec<T>>, f: &[T]) -> Option<Vec<T>> {
    let n = f.len();
    let mut b: Vec<T> = f.iter().map(|&x| -x).collect();
    for col in 0..n {
        let p = (col..n).max_by(|&a, &c| j[a][col].abs().partial_cmp(&j[c][col].abs()).unwrap())?;
        if !(j[p][col].abs() > T::zero()) {
            return None;
        }
        j.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let m = j[r][col] / j[col][col];
            for c in col..n {
                let v = j[col][c];
                j[r][c] -= m * v;
            }
            let bc = b[col];
            b[r] -= m * bc;
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let s: T = (r + 1..n).map(|c| j[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / j[r][r];
    }
    Some(x)
}

/// Finds a zero of `f: Rⁿ → Rⁿ` from `x0`. Each step is halved until the
/// residual norm decreases.
pub fn damped_newton<T: Real, F>(f: F, x0: &[T], options: &NewtonOptions) -> Result<NewtonResult<T>>
where
    F: Fn(&[T]) -> Result<Vec<T>>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x)?;
    let mut r = norm(&fx);
    let tol = T::lit(options.tolerance);
    for it in 0..options.max_iterations {
        if r <= tol {
            return Ok(NewtonResult { x, residual: r, iterations: it });
        }
        let h = T::lit(options.fd_step);
        let mut jac = vec![vec![T::zero(); n]; n];
        for c in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[c] += h;
            xm[c] -= h;
            let (fp, fm) = (f(&xp)?, f(&xm)?);
            for row in 0..n {
                jac[row][c] = (fp[row] - fm[row]) / (h + h);
            }
        }
        let dx = solve(jac, &fx).ok_or(Error::NoConvergence { iterations: it, residual: r.as_f64() })?;
        let mut step = T::one();
        let mut accepted = false;
        for _ in 0..=options.max_halvings {
            let trial: Vec<T> = x.iter().zip(&dx).map(|(&a, &d)| a + step * d).collect();
            if let Ok(ft) = f(&trial) {
                let rt = norm(&ft);
                if rt < r {
                    x = trial;
                    fx = ft;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            step = step * T::lit(0.5);
        }
        if !accepted {
            return Err(Error::NoConvergence { iterations: it, residual: r.as_f64() });
        }
    }
    if r <= tol {
        return Ok(NewtonResult { x, residual: r, iterations: options.max_iterations });
    }
    Err(Error::NoConvergence { iterations: options.max_iterations, residual: r.as_f64() })
}
