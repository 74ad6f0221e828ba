//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by the implicit QL iteration with Wilkinson-type shifts.

use crate::error::{Error, Result};
use crate::scalar::Real;
use rayon::prelude::*;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest |a_ij - a_ji|.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Gram matrix M^T M.
    pub fn gram(&self) -> Self {
        let n = self.n;
        // work on the transpose so both operands of each dot product are rows
        let t = Self::from_fn(n, |i, j| self.get(j, i));
        let rows: Vec<Vec<T>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let ri = t.row(i);
                (0..n).map(|j| if j < i { T::zero() } else { dot(ri, t.row(j)) }).collect()
            })
            .collect();
        let mut g = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate().skip(i) {
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        g
    }
}

#[inline]
fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = [T::zero(); 4];
    let chunks = a.len() / 4;
    for c in 0..chunks {
        for l in 0..4 {
            acc[l] += a[4 * c + l] * b[4 * c + l];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for i in 4 * chunks..a.len() {
        s += a[i] * b[i];
    }
    s
}

/// Eigenvalues of a symmetric matrix in ascending order. Only the lower
/// triangle is read.
pub fn symmetric_eigenvalues<T: Real>(m: &SquareMatrix<T>) -> Result<Vec<T>> {
    let (mut d, mut e) = tridiagonalize(m.clone());
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Householder reduction; returns the diagonal and the sub-diagonal
/// (`e[i]` couples rows i and i+1, last entry zero).
fn tridiagonalize<T: Real>(mut a: SquareMatrix<T>) -> (Vec<T>, Vec<T>) {
    let n = a.n;
    let two = T::lit(2.0);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut v: Vec<T> = (0..m).map(|i| a.get(k + 1 + i, k)).collect();
        let scale: T = v.iter().map(|x| x.abs()).sum();
        if scale == T::zero() {
            continue;
        }
        let norm = v.iter().map(|&x| (x / scale) * (x / scale)).sum::<T>().sqrt() * scale;
        let alpha = if v[0] > T::zero() { -norm } else { norm };
        v[0] -= alpha;
        let h = v.iter().map(|&x| x * x).sum::<T>() / two;
        if h == T::zero() {
            continue;
        }
        // p = A v / h over the trailing block
        let base = k + 1;
        let p: Vec<T> = {
            let a_ref = &a;
            let v_ref = &v;
            let rowdot = |i: usize| dot(&a_ref.row(base + i)[base..], v_ref) / h;
            if m > 192 {
                (0..m).into_par_iter().map(rowdot).collect()
            } else {
                (0..m).map(rowdot).collect()
            }
        };
        let kk = dot(&v, &p) / (two * h);
        let q: Vec<T> = p.iter().zip(&v).map(|(&pi, &vi)| pi - kk * vi).collect();
        let update = |(i, row): (usize, &mut [T])| {
            let (qi, vi) = (q[i], v[i]);
            for (j, x) in row[base..].iter_mut().enumerate() {
                *x -= qi * v[j] + vi * q[j];
            }
        };
        let rows = &mut a.data[base * n..];
        if m > 192 {
            rows.par_chunks_mut(n).enumerate().for_each(update);
        } else {
            rows.chunks_mut(n).enumerate().for_each(update);
        }
        a.set(k + 1, k, alpha);
        a.set(k, k + 1, alpha);
        for i in k + 2..n {
            a.set(i, k, T::zero());
            a.set(k, i, T::zero());
        }
    }
    let d = (0..n).map(|i| a.get(i, i)).collect();
    let mut e: Vec<T> = (0..n).map(|i| if i + 1 < n { a.get(i + 1, i) } else { T::zero() }).collect();
    if n > 0 {
        e[n - 1] = T::zero();
    }
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix (eigenvalues only).
fn tridiagonal_ql<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    let two = T::lit(2.0);
    let norm = (0..n).map(|i| d[i].abs() + e[i].abs()).fold(T::zero(), T::max);
    let floor = T::epsilon() * norm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Convergence("tridiagonal QL exceeded 60 sweeps".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
