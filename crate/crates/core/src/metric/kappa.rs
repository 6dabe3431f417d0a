use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn binom(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// First `k` Euler (secant) numbers `E_1, E_2, ... = 1, 5, 61, 1385, ...`,
/// i.e. the magnitudes of the even-index Euler numbers `|E_2|, |E_4|, ...`.
///
/// Uses `sum_{j=0}^{n} C(2n, 2j) e_{2j} = 0` with `e_0 = 1`, in exact integers.
pub fn euler_numbers(k: usize) -> Vec<BigInt> {
    let mut signed: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=k as u64 {
        let mut s = BigInt::zero();
        for (j, e) in signed.iter().enumerate() {
            s += binom(2 * n, 2 * j as u64) * e;
        }
        signed.push(-s);
    }
    signed.into_iter().skip(1).map(|e| e.abs()).collect()
}

/// `κ_n = 2^{-n} Σ_{m=1}^{(n+1)/2} (-1)^{n+m} C(n, 2m-1) E_m` for odd `n`.
pub fn kappa(n: u32) -> Result<BigRational> {
    if n % 2 == 0 {
        return Err(Error::Domain(format!("kappa index must be odd, got {n}")));
    }
    let top = (n as usize + 1) / 2;
    let euler = euler_numbers(top);
    Ok(kappa_with(n, &euler))
}

fn kappa_with(n: u32, euler: &[BigInt]) -> BigRational {
    let mut sum = BigInt::zero();
    for m in 1..=(n as usize + 1) / 2 {
        let term = binom(n as u64, 2 * m as u64 - 1) * &euler[m - 1];
        if (n as usize + m) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    BigRational::new(sum, BigInt::one() << n)
}

/// Immutable table of Euler numbers and the odd `κ` coefficients used by the
/// closed BCH sums.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaTable {
    /// `E_1 .. E_k`.
    pub euler: Vec<BigInt>,
    /// `κ_1, κ_3, .., κ_{2k-1}`.
    pub kappa: Vec<BigRational>,
}

impl KappaTable {
    pub fn new(k: usize) -> Self {
        let euler = euler_numbers(k);
        let kappa = (1..=k).map(|j| kappa_with(2 * j as u32 - 1, &euler)).collect();
        KappaTable { euler, kappa }
    }

    /// `E_n` as a float, `n >= 1`.
    pub fn euler_f64(&self, n: usize) -> f64 {
        self.euler[n - 1].to_f64().unwrap_or(f64::INFINITY)
    }

    /// `κ_{2j-1}` as a float, `j >= 1`.
    pub fn kappa_f64(&self, j: usize) -> f64 {
        self.kappa[j - 1].to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn leading_euler_numbers() {
        let e: Vec<i64> = euler_numbers(5).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(e, [1, 5, 61, 1385, 50521]);
        assert_eq!(euler_numbers(1), vec![BigInt::one()]);
    }

    #[test]
    fn leading_kappas() {
        assert_eq!(kappa(1).unwrap(), r(1, 2));
        assert_eq!(kappa(3).unwrap(), r(-1, 4));
        assert_eq!(kappa(5).unwrap(), r(1, 2));
        assert_eq!(kappa(7).unwrap(), r(-17, 8));
        assert!(matches!(kappa(4), Err(Error::Domain(_))));
    }

    #[test]
    fn table_matches_free_functions() {
        let t = KappaTable::new(4);
        assert_eq!(t.kappa[3], kappa(7).unwrap());
        assert_eq!(t.euler_f64(4), 1385.0);
        assert_eq!(t.kappa_f64(2), -0.25);
    }
}
