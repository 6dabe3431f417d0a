use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::numeric::integrate;

/// Which similarity transformation deforms the spiked oscillator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpikedVariant {
    /// `η = exp(−ξ p)`: a complex shift of `x`.
    PShift,
    /// `η = exp(−ξ p²)`: `X = x − 2iξ p`.
    PSquared,
}

/// `h = p² + λ² x² + (α² − 1/4)/x²` on the half-line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpikedHOModel {
    pub lambda: f64,
    pub alpha: f64,
    pub xi: f64,
    pub variant: SpikedVariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixElementKind {
    Position,
    Momentum,
    /// `⟨φ_n| η x η⁻¹ φ_m⟩`.
    MappedPosition,
}

const QUAD_TOL: f64 = 1e-13;

impl SpikedHOModel {
    pub fn new(lambda: f64, alpha: f64, xi: f64, variant: SpikedVariant) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("lambda must be positive, got {lambda}")));
        }
        if !(alpha > -1.0) {
            return Err(Error::Domain(format!("alpha must exceed -1, got {alpha}")));
        }
        Ok(SpikedHOModel {
            lambda,
            alpha,
            xi,
            variant,
        })
    }

    /// Beyond this radius every level up to `n` is below double precision.
    fn cutoff(&self, n: usize) -> f64 {
        ((120.0 + 8.0 * n as f64 + 2.0 * self.alpha.abs()) / self.lambda).sqrt()
    }
}

/// `λ(4n + 2α + 2)`.
pub fn spiked_energy(model: &SpikedHOModel, n: usize) -> f64 {
    model.lambda * (4.0 * n as f64 + 2.0 * model.alpha + 2.0)
}

/// `L_n^α(u)` and `L_{n−1}^{α+1}(u)` (the latter is `−d/du L_n^α`).
fn laguerre_pair(n: usize, alpha: f64, u: f64) -> (f64, f64) {
    fn upward(n: usize, a: f64, u: f64) -> f64 {
        let (mut prev, mut cur) = (0.0, 1.0);
        for k in 0..n {
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + a - u) * cur - (kf + a) * prev) / (kf + 1.0);
            prev = cur;
            cur = next;
        }
        cur
    }
    let l = upward(n, alpha, u);
    let dl = if n == 0 { 0.0 } else { upward(n - 1, alpha + 1.0, u) };
    (l, dl)
}

fn norm_constant(model: &SpikedHOModel, n: usize) -> f64 {
    let SpikedHOModel { lambda, alpha, .. } = *model;
    let log = std::f64::consts::LN_2 + (alpha + 1.0) * lambda.ln() + ln_gamma(n as f64 + 1.0)
        - ln_gamma(alpha + n as f64 + 1.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * (0.5 * log).exp()
}

/// Normalized eigenfunction
/// `(−1)ⁿ √(2 λ^{α+1} n!/Γ(α+n+1)) x^{α+1/2} e^{−λx²/2} L_n^α(λx²)`.
///
/// The factor 2 under the root normalizes to one on `(0, ∞)` for the
/// kinetic term `p²`.
pub fn spiked_wavefunction(model: &SpikedHOModel, n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("wavefunction needs x > 0, got {x}")));
    }
    Ok(wavefunction(model, n, x))
}

fn wavefunction(model: &SpikedHOModel, n: usize, x: f64) -> f64 {
    let u = model.lambda * x * x;
    let (l, _) = laguerre_pair(n, model.alpha, u);
    norm_constant(model, n) * x.powf(model.alpha + 0.5) * (-0.5 * u).exp() * l
}

/// `dφ_n/dx` in closed form.
pub fn spiked_wavefunction_derivative(model: &SpikedHOModel, n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("wavefunction needs x > 0, got {x}")));
    }
    Ok(derivative(model, n, x))
}

fn derivative(model: &SpikedHOModel, n: usize, x: f64) -> f64 {
    let SpikedHOModel { lambda, alpha, .. } = *model;
    let u = lambda * x * x;
    let (l, dl) = laguerre_pair(n, alpha, u);
    let s = alpha + 0.5;
    let envelope = norm_constant(model, n) * x.powf(s - 1.0) * (-0.5 * u).exp();
    envelope * ((s - u) * l - 2.0 * u * dl)
}

/// `∫₀^∞ f` for integrands built from levels up to `top`.
fn half_line(model: &SpikedHOModel, top: usize, f: impl Fn(f64) -> f64) -> Result<f64> {
    let b = model.cutoff(top);
    integrate(f, 0.0, b, QUAD_TOL)
}

/// `⟨φ_n|φ_m⟩` by quadrature.
pub fn spiked_overlap(model: &SpikedHOModel, n: usize, m: usize) -> Result<f64> {
    half_line(model, n.max(m), |x| wavefunction(model, n, x) * wavefunction(model, m, x))
}

/// `⟨φ_n| O φ_m⟩` by quadrature over the closed-form eigenfunctions.
pub fn spiked_matrix_element(model: &SpikedHOModel, kind: MatrixElementKind, n: usize, m: usize) -> Result<Complex64> {
    let top = n.max(m);
    let position = || half_line(model, top, |x| wavefunction(model, n, x) * x * wavefunction(model, m, x));
    // ⟨φ_n|p φ_m⟩ = −i ∫ φ_n φ_m'
    let grad = || half_line(model, top, |x| wavefunction(model, n, x) * derivative(model, m, x));
    match kind {
        MatrixElementKind::Position => Ok(Complex64::new(position()?, 0.0)),
        MatrixElementKind::Momentum => Ok(Complex64::new(0.0, -grad()?)),
        MatrixElementKind::MappedPosition => match model.variant {
            // η x η⁻¹ = x + iξ
            SpikedVariant::PShift => {
                let shift = if n == m { model.xi } else { 0.0 };
                Ok(Complex64::new(position()?, shift))
            }
            // η x η⁻¹ = x + 2iξ p, and i p = ∂
            SpikedVariant::PSquared => Ok(Complex64::new(position()? + 2.0 * model.xi * grad()?, 0.0)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> SpikedHOModel {
        SpikedHOModel::new(0.5, 0.2, 0.0, SpikedVariant::PSquared).unwrap()
    }

    #[test]
    fn laguerre_low_orders() {
        let (l2, dl2) = laguerre_pair(2, 0.3, 0.7);
        let a = 0.3;
        let exact = 0.5 * (0.7f64 * 0.7 - 2.0 * (a + 2.0) * 0.7 + (a + 1.0) * (a + 2.0));
        assert!((l2 - exact).abs() < 1e-14);
        assert!((dl2 - (a + 2.0 - 0.7)).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let m = model();
        for &x in &[0.3, 1.1, 2.5] {
            let h = 1e-5;
            let fd = (wavefunction(&m, 3, x + h) - wavefunction(&m, 3, x - h)) / (2.0 * h);
            assert!((fd - derivative(&m, 3, x)).abs() < 1e-8);
        }
    }

    #[test]
    fn ground_state_normalized_and_positive() {
        let m = model();
        assert!((spiked_overlap(&m, 0, 0).unwrap() - 1.0).abs() < 1e-10);
        assert!((1..200).all(|k| wavefunction(&m, 0, k as f64 * 0.05) > 0.0));
        assert!(spiked_wavefunction(&m, 0, 0.0).is_err());
    }

    #[test]
    fn diagonal_momentum_vanishes() {
        let v = spiked_matrix_element(&model(), MatrixElementKind::Momentum, 2, 2).unwrap();
        assert!(v.norm() < 1e-10);
    }
}
