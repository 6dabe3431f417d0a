use num_complex::Complex64;

use super::pulse::{field_value, Pulse};
use crate::error::{Error, Result};
use crate::models::GridHamiltonian;

/// Grid norm `√(h Σ |ψ_i|²)`.
pub fn grid_norm(h: f64, psi: &[Complex64]) -> f64 {
    (h * psi.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
}

/// Grid overlap `h Σ conj(u_i) v_i`.
pub fn grid_overlap(h: f64, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<Complex64>() * h
}

/// `(I + iaA)` for symmetric band `A`, factored as `L D Lᵀ` without pivoting;
/// the Hermitian part is the identity, so every leading minor is regular.
struct ComplexSymLdl {
    k: usize,
    /// `rows[i][d]`: `D` on `d = 0`, `L[i+d][i]` for `d > 0`.
    rows: Vec<Vec<Complex64>>,
}

impl ComplexSymLdl {
    fn factor(ham: &GridHamiltonian, diag_extra: &[f64], a: f64) -> Result<Self> {
        let m = &ham.matrix;
        let (n, k) = (m.dim(), m.half_bandwidth());
        let ia = Complex64::new(0.0, a);
        let mut w: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                (0..=k)
                    .map(|d| {
                        if i + d >= n {
                            return Complex64::new(0.0, 0.0);
                        }
                        let mut v = ia * m.band(d)[i];
                        if d == 0 {
                            v += 1.0 + ia * diag_extra[i];
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        for i in 0..n {
            let piv = w[i][0];
            if piv.norm() < 1e-300 {
                return Err(Error::Numeric(format!("zero pivot at row {i}")));
            }
            let top = k.min(n - 1 - i);
            for d in 1..=top {
                let l = w[i][d] / piv;
                for e in d..=top {
                    let u = w[i][e];
                    w[i + d][e - d] -= l * u;
                }
            }
            for d in 1..=top {
                w[i][d] /= piv;
            }
        }
        Ok(ComplexSymLdl { k, rows: w })
    }

    fn solve(&self, b: &mut [Complex64]) {
        let n = b.len();
        for i in 0..n {
            let bi = b[i];
            for d in 1..=self.k.min(n - 1 - i) {
                b[i + d] -= self.rows[i][d] * bi;
            }
        }
        for i in 0..n {
            b[i] /= self.rows[i][0];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for d in 1..=self.k.min(n - 1 - i) {
                s -= self.rows[i][d] * b[i + d];
            }
            b[i] = s;
        }
    }
}

/// Propagates `psi0` under `h0 + x E(t)` from 0 to `t_final` with
/// Crank-Nicolson steps of size at most `dt`, calling `observer(t, ψ)` at
/// the start and after every step.
pub fn crank_nicolson_observe(
    ham: &GridHamiltonian,
    pulse: &Pulse,
    psi0: &[Complex64],
    dt: f64,
    t_final: f64,
    mut observer: impl FnMut(f64, &[Complex64]),
) -> Result<Vec<Complex64>> {
    let grid = ham.grid;
    let h = grid.step();
    if psi0.len() != grid.points {
        return Err(Error::Domain(format!("state has {} entries, grid has {}", psi0.len(), grid.points)));
    }
    if !(dt > 0.0) || !(t_final >= 0.0) {
        return Err(Error::Domain(format!("need dt > 0 and T >= 0, got dt={dt}, T={t_final}")));
    }
    let norm = grid_norm(h, psi0);
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Domain(format!("initial state must be normalized, norm {norm}")));
    }
    let steps = (t_final / dt).ceil().max(0.0) as usize;
    let dt = if steps > 0 { t_final / steps as f64 } else { dt };
    let xs = grid.nodes();
    let half = 0.5 * dt;

    let mut psi = psi0.to_vec();
    observer(0.0, &psi);
    let mut cached: Option<(f64, ComplexSymLdl)> = None;
    let mut extra = vec![0.0; xs.len()];
    for step in 0..steps {
        let e = field_value(pulse, (step as f64 + 0.5) * dt);
        if cached.as_ref().map(|(v, _)| *v != e).unwrap_or(true) {
            extra.iter_mut().zip(&xs).for_each(|(v, x)| *v = e * x);
            cached = Some((e, ComplexSymLdl::factor(ham, &extra, half)?));
        }
        // rhs = (I − i dt/2 H) ψ
        let hpsi = ham.matrix.matvec(&psi);
        let mut rhs: Vec<Complex64> = psi
            .iter()
            .zip(&hpsi)
            .zip(&xs)
            .map(|((p, hp), x)| p - Complex64::new(0.0, half) * (hp + p * (e * x)))
            .collect();
        cached.as_ref().expect("factored").1.solve(&mut rhs);
        psi = rhs;
        observer((step + 1) as f64 * dt, &psi);
    }
    Ok(psi)
}

pub fn crank_nicolson_propagate(
    ham: &GridHamiltonian,
    pulse: &Pulse,
    psi0: &[Complex64],
    dt: f64,
    t_final: f64,
) -> Result<Vec<Complex64>> {
    crank_nicolson_observe(ham, pulse, psi0, dt, t_final, |_, _| {})
}
