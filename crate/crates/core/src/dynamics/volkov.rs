use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::pulse::{field_integrals, Pulse};
use crate::error::{Error, Result};
use crate::models::GridSpec;
use crate::numeric::simpson_weights;

/// Discrete momentum representation used for the free part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeBasis {
    /// Plain DFT over the grid nodes, period `points · h`.
    Periodic,
    /// DFT of the odd extension through the Dirichlet walls, period
    /// `2 (points + 1) h`; exact for the field-free half-line problem.
    Sine,
}

/// Exact propagator of `κ p² + x E(t)` (`κ` from the grid) realized as
/// `e^{−i b(t) x} F⁻¹ e^{−iΦ(k)} F e^{i b(t′) x}`, with
/// `Φ(k) = κ[k² Δt − 2k Δc + 2Δd]`.
pub struct VolkovPropagator {
    grid: GridSpec,
    basis: FreeBasis,
    pulse: Pulse,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    wavenumbers: Vec<f64>,
    xs: Vec<f64>,
}

impl VolkovPropagator {
    pub fn new(grid: GridSpec, pulse: Pulse, basis: FreeBasis) -> Result<Self> {
        let grid = grid.validated()?;
        let h = grid.step();
        let len = match basis {
            FreeBasis::Periodic => grid.points,
            FreeBasis::Sine => 2 * (grid.points + 1),
        };
        let mut planner = FftPlanner::new();
        let period = len as f64 * h;
        let wavenumbers = (0..len)
            .map(|j| {
                let j = if j <= len / 2 { j as f64 } else { j as f64 - len as f64 };
                2.0 * PI * j / period
            })
            .collect();
        Ok(VolkovPropagator {
            grid,
            basis,
            pulse,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
            wavenumbers,
            xs: grid.nodes(),
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// `U(t, t′) ψ`.
    pub fn apply(&self, psi: &[Complex64], t: f64, t_prime: f64) -> Result<Vec<Complex64>> {
        let n = self.grid.points;
        if psi.len() != n {
            return Err(Error::Domain(format!("state has {} entries, grid has {n}", psi.len())));
        }
        if t == t_prime {
            return Ok(psi.to_vec());
        }
        let kappa = self.grid.kinetic_coefficient;
        let (now, then) = (field_integrals(&self.pulse, t)?, field_integrals(&self.pulse, t_prime)?);
        let (dt, dc, dd) = (t - t_prime, now.c - then.c, now.d - then.d);

        let entry: Vec<Complex64> = psi
            .iter()
            .zip(&self.xs)
            .map(|(z, x)| z * Complex64::from_polar(1.0, then.b * x))
            .collect();
        let mut buf = self.embed(&entry);
        self.forward.process(&mut buf);
        let scale = 1.0 / buf.len() as f64;
        for (z, &k) in buf.iter_mut().zip(&self.wavenumbers) {
            let phi = kappa * (k * k * dt - 2.0 * k * dc + 2.0 * dd);
            *z *= Complex64::from_polar(scale, -phi);
        }
        self.inverse.process(&mut buf);
        Ok(buf[self.offset()..self.offset() + n]
            .iter()
            .zip(&self.xs)
            .map(|(z, x)| z * Complex64::from_polar(1.0, -now.b * x))
            .collect())
    }

    fn offset(&self) -> usize {
        match self.basis {
            FreeBasis::Periodic => 0,
            FreeBasis::Sine => 1,
        }
    }

    fn embed(&self, psi: &[Complex64]) -> Vec<Complex64> {
        match self.basis {
            FreeBasis::Periodic => psi.to_vec(),
            FreeBasis::Sine => {
                let n = psi.len();
                let mut buf = vec![Complex64::new(0.0, 0.0); 2 * (n + 1)];
                for (i, &z) in psi.iter().enumerate() {
                    buf[i + 1] = z;
                    buf[2 * (n + 1) - 1 - i] = -z;
                }
                buf
            }
        }
    }
}

/// One-shot `U(t, t′) ψ`.
pub fn gordon_volkov_propagate(
    psi: &[Complex64],
    pulse: &Pulse,
    grid: GridSpec,
    basis: FreeBasis,
    t: f64,
    t_prime: f64,
) -> Result<Vec<Complex64>> {
    VolkovPropagator::new(grid, *pulse, basis)?.apply(psi, t, t_prime)
}

/// First Born iterate around the Gordon-Volkov evolution,
/// `U(t,0)ψ₀ − i ∫₀ᵗ U(t,s) V U(s,0) ψ₀ ds`, by composite Simpson with
/// `intervals` (even) subintervals.
pub fn first_order_strong_field(
    psi0: &[Complex64],
    potential: &[f64],
    pulse: &Pulse,
    grid: GridSpec,
    basis: FreeBasis,
    t: f64,
    intervals: usize,
) -> Result<Vec<Complex64>> {
    if intervals < 2 || intervals % 2 == 1 {
        return Err(Error::Domain(format!("Simpson needs an even interval count, got {intervals}")));
    }
    if potential.len() != grid.points {
        return Err(Error::Domain("potential length differs from grid".into()));
    }
    let prop = VolkovPropagator::new(grid, *pulse, basis)?;
    let mut out = prop.apply(psi0, t, 0.0)?;
    if potential.iter().all(|&v| v == 0.0) || t == 0.0 {
        return Ok(out);
    }
    let hs = t / intervals as f64;
    let weights = simpson_weights(intervals, hs);
    let mut acc = vec![Complex64::new(0.0, 0.0); psi0.len()];
    for (k, w) in weights.iter().enumerate() {
        let s = k as f64 * hs;
        let mid = prop.apply(psi0, s, 0.0)?;
        let kicked: Vec<Complex64> = mid.iter().zip(potential).map(|(z, v)| z * v).collect();
        let back = prop.apply(&kicked, t, s)?;
        acc.iter_mut().zip(&back).for_each(|(a, b)| *a += b * w);
    }
    out.iter_mut().zip(&acc).for_each(|(o, a)| *o -= Complex64::i() * a);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::crank_nicolson::grid_norm;

    fn packet(grid: &GridSpec, x0: f64, k0: f64) -> Vec<Complex64> {
        let raw: Vec<Complex64> = grid
            .nodes()
            .iter()
            .map(|&x| Complex64::from_polar((-(x - x0).powi(2)).exp(), k0 * x))
            .collect();
        let n = grid_norm(grid.step(), &raw);
        raw.into_iter().map(|z| z / n).collect()
    }

    #[test]
    fn identity_at_equal_times() {
        let grid = GridSpec::new(-20.0, 20.0, 256).unwrap().with_kinetic(0.5);
        let psi = packet(&grid, 0.0, 1.0);
        let p = Pulse::sine(0.2, 1.0, 10.0).unwrap();
        let out = gordon_volkov_propagate(&psi, &p, grid, FreeBasis::Periodic, 3.0, 3.0).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn composition_and_inverse() {
        let grid = GridSpec::new(-30.0, 30.0, 512).unwrap().with_kinetic(0.5);
        let psi = packet(&grid, -2.0, 0.5);
        let prop = VolkovPropagator::new(grid, Pulse::sine(0.3, 1.2, 8.0).unwrap(), FreeBasis::Periodic).unwrap();
        let a = prop.apply(&prop.apply(&psi, 2.0, 0.0).unwrap(), 5.0, 2.0).unwrap();
        let b = prop.apply(&psi, 5.0, 0.0).unwrap();
        let back = prop.apply(&b, 0.0, 5.0).unwrap();
        for i in 0..psi.len() {
            assert!((a[i] - b[i]).norm() < 1e-12);
            assert!((back[i] - psi[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn sine_basis_keeps_walls() {
        let grid = GridSpec::new(0.0, 20.0, 300).unwrap().with_kinetic(0.5);
        let psi = packet(&grid, 10.0, 0.0);
        let out = gordon_volkov_propagate(&psi, &Pulse::sine(0.0, 1.0, 1.0).unwrap(), grid, FreeBasis::Sine, 2.0, 0.0)
            .unwrap();
        assert!((grid_norm(grid.step(), &out) - 1.0).abs() < 1e-12);
    }
}
