use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 24;

/// `∫_a^b f` by double-exponential quadrature, bisecting the interval
/// until every piece meets its share of `tol` (absolute).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let mut worst = 0.0f64;
    let v = recurse(&f, a, b, tol, 0, &mut worst);
    if worst > tol {
        return Err(Error::Accuracy {
            target: tol,
            estimate: worst,
        });
    }
    Ok(v)
}

fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32, worst: &mut f64) -> f64 {
    let out = quadrature::double_exponential::integrate(f, a, b, tol);
    if out.error_estimate <= tol || depth >= MAX_DEPTH {
        if depth >= MAX_DEPTH && out.error_estimate > tol {
            *worst = worst.max(out.error_estimate * 2f64.powi(depth as i32));
        }
        return out.integral;
    }
    let m = 0.5 * (a + b);
    recurse(f, a, m, 0.5 * tol, depth + 1, worst) + recurse(f, m, b, 0.5 * tol, depth + 1, worst)
}

/// Composite Simpson weights for `n` (even) intervals of width `h`.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    assert!(n >= 2 && n % 2 == 0, "Simpson needs an even number of intervals");
    (0..=n)
        .map(|k| {
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * h / 3.0
        })
        .collect()
}
