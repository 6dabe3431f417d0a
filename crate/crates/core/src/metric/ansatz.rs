use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::weyl::{ExpPolySymbol, Monomial, WeylSymbol};

/// `H† ⋆ η² − η² ⋆ H`; vanishes iff `η²` intertwines `H` with its adjoint.
pub fn metric_residual(h: &WeylSymbol, eta2: &ExpPolySymbol) -> ExpPolySymbol {
    let left = eta2.star_left(&h.hermitian_conjugate());
    let right = eta2.star_right(h);
    &left - &right
}

/// Metric recovered by [`solve_metric_ansatz`].
#[derive(Clone, Debug)]
pub struct MetricSolution {
    /// Real exponent coefficients, in the order of the ansatz monomials.
    pub coefficients: Vec<f64>,
    pub eta2: ExpPolySymbol,
    /// Euclidean norm of the residual prefactor coefficients.
    pub residual_norm: f64,
}

const MAX_ITERATIONS: usize = 200;

fn exponent(monomials: &[(u32, u32)], c: &[f64]) -> WeylSymbol {
    WeylSymbol::from_terms(monomials.iter().zip(c).map(|(&(dx, dp), &v)| (dx, dp, v)))
}

/// Residual prefactor coefficients stacked as `[re..., im...]` over a fixed
/// monomial set.
fn residual_vector(h: &WeylSymbol, monomials: &[(u32, u32)], keys: &[Monomial], c: &[f64]) -> DVector<f64> {
    let eta2 = ExpPolySymbol::exp(exponent(monomials, c));
    let r = metric_residual(h, &eta2);
    let mut v = DVector::zeros(2 * keys.len());
    for term in r.terms() {
        for (k, key) in keys.iter().enumerate() {
            let z: Complex64 = term.prefactor.coeff(key.x, key.p);
            v[k] += z.re;
            v[keys.len() + k] += z.im;
        }
    }
    v
}

/// Finds real `c_k` such that `η² = exp(Σ c_k x^{a_k} p^{b_k})` makes the
/// metric residual of `h` vanish.
///
/// Damped Gauss-Newton (Levenberg-Marquardt) from a fixed list of starting
/// points; the first converged solution is returned.
pub fn solve_metric_ansatz(h: &WeylSymbol, exponent_monomials: &[(u32, u32)]) -> Result<MetricSolution> {
    let n = exponent_monomials.len();
    if n == 0 {
        return Err(Error::Domain("empty exponent ansatz".into()));
    }
    // Each Moyal order s <= deg h raises the prefactor degree by at most
    // s (deg E - 1) while the derivative of h lowers it by s.
    let deg_e = exponent_monomials.iter().map(|&(a, b)| a + b).max().unwrap_or(0);
    let bound = h.total_degree() * deg_e.max(1);
    let keys: Vec<Monomial> = (0..=bound)
        .flat_map(|dx| (0..=bound - dx).map(move |dp| Monomial::new(dx, dp)))
        .collect();

    let scale = h.max_abs().max(1.0);
    let tol = 1e-11 * scale;
    let mut best = f64::INFINITY;
    let mut iterations = 0;

    for start in start_points(n) {
        let mut c = start;
        let mut r = residual_vector(h, exponent_monomials, &keys, &c);
        let mut norm = r.norm();
        let mut mu = 1e-3;
        for _ in 0..MAX_ITERATIONS {
            iterations += 1;
            best = best.min(norm);
            if norm <= tol {
                break;
            }
            let jac = jacobian(h, exponent_monomials, &keys, &c, r.len());
            let jtj = jac.transpose() * &jac;
            let jtr = jac.transpose() * &r;
            let mut improved = false;
            for _ in 0..30 {
                let mut a = jtj.clone();
                for k in 0..n {
                    a[(k, k)] += mu * (1.0 + jtj[(k, k)]);
                }
                let Some(step) = a.lu().solve(&(-&jtr)) else {
                    mu *= 10.0;
                    continue;
                };
                let trial: Vec<f64> = c.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let r_trial = residual_vector(h, exponent_monomials, &keys, &trial);
                let n_trial = r_trial.norm();
                if n_trial.is_finite() && n_trial < norm {
                    c = trial;
                    r = r_trial;
                    norm = n_trial;
                    mu = (mu * 0.3).max(1e-12);
                    improved = true;
                    break;
                }
                mu *= 10.0;
            }
            if !improved {
                break;
            }
        }
        best = best.min(norm);
        if norm <= tol {
            let eta2 = ExpPolySymbol::exp(exponent(exponent_monomials, &c));
            return Ok(MetricSolution {
                coefficients: c,
                eta2,
                residual_norm: norm,
            });
        }
    }
    Err(Error::Convergence {
        iterations,
        best_residual: best,
    })
}

fn jacobian(
    h: &WeylSymbol,
    monomials: &[(u32, u32)],
    keys: &[Monomial],
    c: &[f64],
    rows: usize,
) -> DMatrix<f64> {
    let mut jac = DMatrix::zeros(rows, c.len());
    for k in 0..c.len() {
        let step = 1e-7 * c[k].abs().max(1.0);
        let mut plus = c.to_vec();
        let mut minus = c.to_vec();
        plus[k] += step;
        minus[k] -= step;
        let d = (residual_vector(h, monomials, keys, &plus) - residual_vector(h, monomials, keys, &minus))
            / (2.0 * step);
        jac.set_column(k, &d);
    }
    jac
}

/// Origin first, then a symmetric lattice of growing radius.
fn start_points(n: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; n]];
    for radius in [0.5, 1.0, 2.0, 4.0] {
        let levels = [-radius, 0.0, radius];
        let total = 3usize.pow(n as u32);
        for idx in 0..total {
            let mut v = Vec::with_capacity(n);
            let mut rem = idx;
            for _ in 0..n {
                v.push(levels[rem % 3]);
                rem /= 3;
            }
            if v.iter().any(|x| *x != 0.0) {
                out.push(v);
            }
        }
    }
    out
}
