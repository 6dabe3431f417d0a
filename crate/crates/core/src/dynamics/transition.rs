use num_complex::Complex64;
use rayon::prelude::*;

use super::pulse::{oscillatory_field_integral, Pulse};
use crate::error::{Error, Result};
use crate::models::{spiked_energy, spiked_matrix_element, MatrixElementKind, SpikedHOModel, SpikedVariant};

/// Which position operator couples to the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    /// `X E(t)` added to `H`; amplitude `⟨φ_to| x φ_from⟩`.
    CanonicalX,
    /// `x E(t)` added to `H`; amplitude `⟨φ_to| η x η⁻¹ φ_from⟩`.
    RawXViaEta,
}

/// First-order probability of `from → to` at time `t`:
/// `|δ − i M ∫₀ᵗ e^{i(ε_to − ε_from)s} E(s) ds|²`.
pub fn first_order_transition(
    model: &SpikedHOModel,
    from: usize,
    to: usize,
    pulse: &Pulse,
    t: f64,
    coupling: Coupling,
) -> Result<f64> {
    let m = amplitude(model, from, to, coupling)?;
    probability(model, from, to, m, pulse, t)
}

fn amplitude(model: &SpikedHOModel, from: usize, to: usize, coupling: Coupling) -> Result<Complex64> {
    let kind = match coupling {
        Coupling::CanonicalX => MatrixElementKind::Position,
        Coupling::RawXViaEta => MatrixElementKind::MappedPosition,
    };
    spiked_matrix_element(model, kind, to, from)
}

fn probability(model: &SpikedHOModel, from: usize, to: usize, m: Complex64, pulse: &Pulse, t: f64) -> Result<f64> {
    let delta = spiked_energy(model, to) - spiked_energy(model, from);
    let integral = oscillatory_field_integral(pulse, delta, t)?;
    let kron = if from == to { 1.0 } else { 0.0 };
    Ok((Complex64::new(kron, 0.0) - Complex64::i() * m * integral).norm_sqr())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveMeta {
    pub from: usize,
    pub to: usize,
    pub xi: f64,
    pub e0: f64,
    pub tau: f64,
    pub lambda: f64,
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionCurve {
    pub omega_grid: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub meta: CurveMeta,
}

impl TransitionCurve {
    /// `(ω, P)` at the largest probability.
    pub fn peak(&self) -> (f64, f64) {
        self.omega_grid
            .iter()
            .zip(&self.probabilities)
            .fold((f64::NAN, f64::NEG_INFINITY), |best, (&w, &p)| if p > best.1 { (w, p) } else { best })
    }
}

/// Sweep parameters shared by every curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub lambda: f64,
    pub alpha: f64,
    pub from: usize,
    pub to: usize,
    pub e0: f64,
    pub omega_lo: f64,
    pub omega_hi: f64,
    pub steps: usize,
    pub tau: f64,
}

/// `steps` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let span = (hi - lo) / (steps - 1) as f64;
    (0..steps).map(|k| lo + k as f64 * span).collect()
}

/// One curve per `ξ`, with the `exp(−ξ p²)` deformation and the raw `x`
/// coupling, under a rectangular sine pulse of length `τ`.
pub fn transition_sweep(spec: &SweepSpec, xi_list: &[f64]) -> Result<Vec<TransitionCurve>> {
    if spec.steps < 2 {
        return Err(Error::Domain(format!("sweep needs at least 2 steps, got {}", spec.steps)));
    }
    let omegas = linspace(spec.omega_lo, spec.omega_hi, spec.steps);
    let mut curves = Vec::with_capacity(xi_list.len());
    for &xi in xi_list {
        let model = SpikedHOModel::new(spec.lambda, spec.alpha, xi, SpikedVariant::PSquared)?;
        let m = amplitude(&model, spec.from, spec.to, Coupling::RawXViaEta)?;
        let probabilities = run_parallel(|| {
            omegas
                .par_iter()
                .map(|&w| {
                    let pulse = Pulse::sine(spec.e0, w, spec.tau)?;
                    probability(&model, spec.from, spec.to, m, &pulse, spec.tau)
                })
                .collect::<Result<Vec<f64>>>()
        })?;
        curves.push(TransitionCurve {
            omega_grid: omegas.clone(),
            probabilities,
            meta: CurveMeta {
                from: spec.from,
                to: spec.to,
                xi,
                e0: spec.e0,
                tau: spec.tau,
                lambda: spec.lambda,
                alpha: spec.alpha,
            },
        });
    }
    Ok(curves)
}

/// Runs `f` on a pool capped by `PSEUDOHERM_THREADS` when it is set.
pub fn run_parallel<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var("PSEUDOHERM_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
