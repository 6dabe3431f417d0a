use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::metric::{hermitian_pair_from_q, nfold_commutator, SimilarityPair};
use crate::weyl::WeylSymbol;

/// Anharmonic oscillator `p²/2 + (α/2) xⁿ` deformed by `η = exp(g x^m / m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwansonFamily {
    pub n: u32,
    pub m: u32,
    pub alpha: f64,
    pub g: f64,
}

const TOL: f64 = 1e-12;

impl SwansonFamily {
    pub fn new(n: u32, m: u32, alpha: f64, g: f64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(format!("powers must be positive, got n={n}, m={m}")));
        }
        Ok(SwansonFamily { n, m, alpha, g })
    }

    pub fn h0(&self) -> WeylSymbol {
        WeylSymbol::from_terms([(0, 2, 0.5), (self.n, 0, 0.5 * self.alpha)])
    }

    /// `q_m = (2g/m) x^m`.
    pub fn generator(&self) -> WeylSymbol {
        WeylSymbol::monomial(self.m, 0, 2.0 * self.g / self.m as f64)
    }

    /// `h0 + g² x^{2m−2} / 2`.
    pub fn hermitian(&self) -> WeylSymbol {
        &self.h0() + &WeylSymbol::monomial(2 * self.m - 2, 0, 0.5 * self.g * self.g)
    }

    /// `h0 − i g x^{m−1} p`, the symbol of `h0 − (ig/2)(p x^{m−1} + x^{m−1} p)`.
    pub fn non_hermitian(&self) -> WeylSymbol {
        &self.h0() + &WeylSymbol::monomial(self.m - 1, 1, Complex64::new(0.0, -self.g))
    }

    pub fn canonical_x(&self) -> WeylSymbol {
        WeylSymbol::x()
    }

    /// `p − i g x^{m−1}`.
    pub fn canonical_p(&self) -> WeylSymbol {
        &WeylSymbol::p() + &WeylSymbol::monomial(self.m - 1, 0, Complex64::new(0.0, -self.g))
    }

    /// Closed forms of `c_q^(1..3)(h0)`.
    pub fn commutators(&self) -> [WeylSymbol; 3] {
        let k = self.m - 1;
        [
            WeylSymbol::monomial(k, 1, Complex64::new(0.0, 2.0 * self.g)),
            WeylSymbol::monomial(2 * k, 0, -4.0 * self.g * self.g),
            WeylSymbol::zero(),
        ]
    }
}

/// Similarity pair of the family via the closed BCH sums, checked against
/// the closed-form commutators and Hamiltonians.
pub fn swanson_pair(n: u32, m: u32, alpha: f64, g: f64) -> Result<SimilarityPair> {
    let fam = SwansonFamily::new(n, m, alpha, g)?;
    let (h0, q) = (fam.h0(), fam.generator());
    for (k, expected) in fam.commutators().iter().enumerate() {
        let c = nfold_commutator(&q, &h0, k + 1);
        if !c.approx_eq(expected, TOL * (1.0 + expected.max_abs())) {
            return Err(Error::Verification(format!("c^({}) = {c}, expected {expected}", k + 1)));
        }
    }
    let pair = hermitian_pair_from_q(&h0, &q, 2)?;
    if !pair.hermitian.approx_eq(&fam.hermitian(), TOL) || !pair.non_hermitian.approx_eq(&fam.non_hermitian(), TOL) {
        return Err(Error::Verification(format!(
            "pair mismatch: h = {}, H = {}",
            pair.hermitian, pair.non_hermitian
        )));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coupling_collapses() {
        let pair = swanson_pair(3, 2, 0.7, 0.0).unwrap();
        let h0 = SwansonFamily::new(3, 2, 0.7, 0.0).unwrap().h0();
        assert_eq!(pair.hermitian, h0);
        assert_eq!(pair.non_hermitian, h0);
    }

    #[test]
    fn parity_of_generator_power() {
        let even = SwansonFamily::new(2, 2, 1.0, 0.5).unwrap().non_hermitian();
        let odd = SwansonFamily::new(2, 3, 1.0, 0.5).unwrap().non_hermitian();
        assert!(even.is_pt_symmetric());
        assert!(!odd.is_pt_symmetric());
    }

    #[test]
    fn rejects_zero_power() {
        assert!(swanson_pair(0, 1, 1.0, 1.0).is_err());
    }
}
