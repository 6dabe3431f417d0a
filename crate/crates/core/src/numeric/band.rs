//! Banded matrices: symmetric real storage with Sturm-count eigenvalues,
//! and a general pivoted band LU for real or complex systems.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + PartialEq
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn from_real(v: f64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn from_real(v: f64) -> Self {
        v
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn from_real(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
}

/// Real symmetric matrix with half-bandwidth `k`; `bands[d][i] = A[i][i+d]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymBand {
    n: usize,
    bands: Vec<Vec<f64>>,
}

impl SymBand {
    pub fn zeros(n: usize, half_bandwidth: usize) -> Self {
        let bands = (0..=half_bandwidth).map(|d| vec![0.0; n.saturating_sub(d)]).collect();
        SymBand { n, bands }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.bands.len() - 1
    }

    pub fn band(&self, d: usize) -> &[f64] {
        &self.bands[d]
    }

    /// Adds `v` to `A[i][i+d]` (and its mirror).
    pub fn add(&mut self, i: usize, d: usize, v: f64) {
        self.bands[d][i] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let d = b - a;
        if d < self.bands.len() {
            self.bands[d][a]
        } else {
            0.0
        }
    }

    pub fn matvec<T: Scalar>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.n];
        for (d, band) in self.bands.iter().enumerate() {
            for (i, &a) in band.iter().enumerate() {
                let a = T::from_real(a);
                out[i] = out[i] + a * v[i + d];
                if d > 0 {
                    out[i + d] = out[i + d] + a * v[i];
                }
            }
        }
        out
    }

    /// Number of eigenvalues strictly below `sigma`, from the inertia of the
    /// `LDLᵀ` factorization of `A − σI`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let k = self.half_bandwidth();
        let n = self.n;
        // Working copy of the upper band of A − σI, row i holding A[i][i..=i+k].
        let mut w: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..=k)
                    .map(|d| if i + d < n { self.bands[d][i] } else { 0.0 })
                    .collect()
            })
            .collect();
        let tiny = f64::EPSILON * self.norm_bound().max(f64::MIN_POSITIVE);
        let mut negatives = 0;
        for i in 0..n {
            w[i][0] -= sigma;
            let mut piv = w[i][0];
            if piv.abs() < tiny {
                piv = -tiny;
                w[i][0] = piv;
            }
            if piv < 0.0 {
                negatives += 1;
            }
            for a in 1..=k.min(n - 1 - i) {
                let l = w[i][a] / piv;
                if l == 0.0 {
                    continue;
                }
                for b in a..=k.min(n - 1 - i) {
                    let u = w[i][b];
                    w[i + a][b - a] -= l * u;
                }
            }
        }
        negatives
    }

    /// Gershgorin bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        let mut row = vec![0.0f64; self.n];
        for (d, band) in self.bands.iter().enumerate() {
            for (i, &a) in band.iter().enumerate() {
                row[i] += a.abs();
                if d > 0 {
                    row[i + d] += a.abs();
                }
            }
        }
        row.into_iter().fold(0.0, f64::max)
    }

    /// Lowest `k` eigenvalues (ascending) and unit eigenvectors.
    pub fn lowest_eigenpairs(&self, k: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
        if k > self.n {
            return Err(Error::Domain(format!("requested {k} levels from a {}-point grid", self.n)));
        }
        let bound = self.norm_bound();
        let mut values = Vec::with_capacity(k);
        for j in 0..k {
            let (mut lo, mut hi) = (-bound - 1.0, bound + 1.0);
            if let Some(&prev) = values.last() {
                lo = f64::max(lo, prev - 1e-9 * (1.0 + bound));
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 4.0 * f64::EPSILON * (lo.abs().max(hi.abs()).max(1.0)) {
                    break;
                }
            }
            values.push(0.5 * (lo + hi));
        }
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
        for &lambda in &values {
            let v = self.inverse_iteration(lambda, &vectors)?;
            vectors.push(v);
        }
        Ok((values, vectors))
    }

    fn inverse_iteration(&self, lambda: f64, previous: &[Vec<f64>]) -> Result<Vec<f64>> {
        let shift = lambda + 1e-10 * (1.0 + lambda.abs());
        let lu = BandMatrix::from_sym(self, -shift, 1.0).lu()?;
        let n = self.n;
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + ((i * 7919) % 97) as f64 * 1e-3).collect();
        for _ in 0..4 {
            v = lu.solve(&v);
            for u in previous {
                let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                if dot.abs() > 0.0 {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x -= dot * y;
                    }
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !norm.is_finite() || norm == 0.0 {
                return Err(Error::Numeric("inverse iteration collapsed".into()));
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        // Fix the sign so that the largest component is positive.
        let big = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if big < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        Ok(v)
    }
}

/// General square band matrix, `kl` sub- and `ku` super-diagonals.
#[derive(Clone, Debug)]
pub struct BandMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    rows: Vec<Row<T>>,
}

#[derive(Clone, Debug)]
struct Row<T> {
    start: usize,
    vals: Vec<T>,
}

impl<T: Scalar> Row<T> {
    fn get(&self, col: usize) -> T {
        if col < self.start || col >= self.start + self.vals.len() {
            T::zero()
        } else {
            self.vals[col - self.start]
        }
    }

    fn end(&self) -> usize {
        self.start + self.vals.len()
    }

    /// `self -= m * other` over `other`'s columns `from..`.
    fn axpy(&mut self, m: T, other: &Row<T>, from: usize) {
        let end = other.end();
        if end > self.end() {
            self.vals.resize(end - self.start, T::zero());
        }
        for col in from.max(other.start)..end {
            let idx = col - self.start;
            self.vals[idx] = self.vals[idx] - m * other.vals[col - other.start];
        }
    }
}

impl<T: Scalar> BandMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let start = i.saturating_sub(kl);
                let end = (i + ku + 1).min(n);
                Row {
                    start,
                    vals: vec![T::zero(); end - start],
                }
            })
            .collect();
        BandMatrix { n, kl, ku, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, i: usize, j: usize, v: T) {
        assert!(j + self.kl >= i && j <= i + self.ku, "entry outside band");
        let r = &mut self.rows[i];
        r.vals[j - r.start] = r.vals[j - r.start] + v;
    }

    /// `scale · A + shift · I` for a symmetric band `A`.
    pub fn from_sym(a: &SymBand, shift: T, scale: T) -> Self {
        let k = a.half_bandwidth();
        let mut m = BandMatrix::zeros(a.dim(), k, k);
        for d in 0..=k {
            for (i, &v) in a.band(d).iter().enumerate() {
                m.add(i, i + d, scale * T::from_real(v));
                if d > 0 {
                    m.add(i + d, i, scale * T::from_real(v));
                }
            }
        }
        for i in 0..a.dim() {
            m.add(i, i, shift);
        }
        m
    }

    /// LU factorization with partial pivoting.
    pub fn lu(mut self) -> Result<BandLu<T>> {
        let n = self.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut lower: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        let scale = self
            .rows
            .iter()
            .flat_map(|r| r.vals.iter())
            .map(|v| v.magnitude())
            .fold(0.0, f64::max);
        for j in 0..n {
            let last = (j + self.kl).min(n - 1);
            let mut p = j;
            let mut best = self.rows[j].get(j).magnitude();
            for i in j + 1..=last {
                let m = self.rows[i].get(j).magnitude();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if best <= f64::EPSILON * scale * 1e-6 || !best.is_finite() {
                return Err(Error::Numeric(format!("singular band matrix at column {j}")));
            }
            if p != j {
                self.rows.swap(p, j);
                perm.swap(p, j);
                lower.swap(p, j);
            }
            let (head, tail) = self.rows.split_at_mut(j + 1);
            let pivot_row = &head[j];
            let piv = pivot_row.get(j);
            for (off, row) in tail.iter_mut().take(last - j).enumerate() {
                let a = row.get(j);
                if a == T::zero() {
                    continue;
                }
                let m = a / piv;
                row.axpy(m, pivot_row, j);
                lower[j + 1 + off].push((j, m));
            }
        }
        let upper = self
            .rows
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                let from = i - r.start.min(i);
                Row {
                    start: i,
                    vals: r.vals[from..].to_vec(),
                }
            })
            .collect();
        Ok(BandLu { perm, lower, upper })
    }
}

/// Factors of `P A = L U`; `lower[i]` lists `(j, l_ij)`.
#[derive(Clone, Debug)]
pub struct BandLu<T> {
    perm: Vec<usize>,
    lower: Vec<Vec<(usize, T)>>,
    upper: Vec<Row<T>>,
}

impl<T: Scalar> BandLu<T> {
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.perm.len();
        let mut y: Vec<T> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let mut s = y[i];
            for &(j, l) in &self.lower[i] {
                s = s - l * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let r = &self.upper[i];
            let mut s = y[i];
            for col in i + 1..r.end() {
                s = s - r.vals[col - r.start] * y[col];
            }
            y[i] = s / r.vals[0];
        }
        y
    }
}
