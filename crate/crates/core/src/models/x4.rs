use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::metric::{hermitian_pair_from_q, metric_residual, observable_map, SimilarityPair, DEFAULT_MAX_ORDER};
use crate::weyl::{ExpPolySymbol, WeylSymbol};

const TOL: f64 = 1e-12;

/// Everything known in closed form about the real-line image of the
/// `−x⁴` oscillator.
#[derive(Clone, Debug)]
pub struct X4Chain {
    pub alpha: f64,
    pub g: f64,
    pub h0: WeylSymbol,
    pub pair: SimilarityPair,
    /// `η² = exp(g p³/(3α) − 2 g p)`.
    pub eta2: ExpPolySymbol,
    /// `X = x + (ig/2α)(p² − 2α)`; `P = p`.
    pub canonical_x: WeylSymbol,
}

/// `p² − p/2 + α x² − α`.
pub fn x4_h0(alpha: f64) -> WeylSymbol {
    WeylSymbol::from_terms([(0, 2, 1.0), (0, 1, -0.5), (2, 0, alpha), (0, 0, -alpha)])
}

/// `g p³/(3α) − 2 g p`.
pub fn x4_generator(alpha: f64, g: f64) -> WeylSymbol {
    WeylSymbol::from_terms([(0, 3, g / (3.0 * alpha)), (0, 1, -2.0 * g)])
}

/// `h0 + i g (x p² − 2α x)`.
pub fn x4_non_hermitian(alpha: f64, g: f64) -> WeylSymbol {
    let im = |v: f64| Complex64::new(0.0, v);
    &x4_h0(alpha) + &WeylSymbol::from_terms([(1, 2, im(g)), (1, 0, im(-2.0 * alpha * g))])
}

/// `h0 + g² (p² − 2α)² / (4α)`.
pub fn x4_hermitian(alpha: f64, g: f64) -> WeylSymbol {
    let c = g * g / (4.0 * alpha);
    &x4_h0(alpha) + &WeylSymbol::from_terms([(0, 4, c), (0, 2, -4.0 * alpha * c), (0, 0, 4.0 * alpha * alpha * c)])
}

/// Fourier partner `p² + 4 g² x⁴ − 2 g x`.
pub fn inverted_quartic_partner(g: f64) -> WeylSymbol {
    WeylSymbol::from_terms([(0, 2, 1.0), (4, 0, 4.0 * g * g), (1, 0, -2.0 * g)])
}

/// Builds and self-checks the chain: BCH with the closed generator must
/// reproduce both Hamiltonians, and `η²` must annihilate the residual.
pub fn minus_x4_chain(alpha: f64, g: f64) -> Result<X4Chain> {
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
    }
    let h0 = x4_h0(alpha);
    let q = x4_generator(alpha, g);
    let pair = hermitian_pair_from_q(&h0, &q, 2)?;
    let (h, big_h) = (x4_hermitian(alpha, g), x4_non_hermitian(alpha, g));
    let scale = 1.0 + alpha.max(g * g / alpha);
    if !pair.hermitian.approx_eq(&h, TOL * scale) || !pair.non_hermitian.approx_eq(&big_h, TOL * scale) {
        return Err(Error::Verification(format!(
            "BCH gave h = {}, H = {}",
            pair.hermitian, pair.non_hermitian
        )));
    }
    let eta2 = ExpPolySymbol::exp(q.clone());
    let r = metric_residual(&big_h, &eta2);
    if r.max_prefactor_abs() > TOL * scale {
        return Err(Error::Verification(format!("metric residual {r}")));
    }
    let canonical_x = observable_map(&WeylSymbol::x(), &q, DEFAULT_MAX_ORDER)?;
    Ok(X4Chain {
        alpha,
        g,
        h0,
        pair,
        eta2,
        canonical_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_verifies() {
        let c = minus_x4_chain(1.3, 0.6).unwrap();
        let expected = WeylSymbol::from_terms([
            (1, 0, Complex64::new(1.0, 0.0)),
            (0, 2, Complex64::new(0.0, 0.6 / 2.6)),
            (0, 0, Complex64::new(0.0, -0.6)),
        ]);
        assert!(c.canonical_x.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn zero_coupling() {
        let c = minus_x4_chain(0.8, 0.0).unwrap();
        assert_eq!(c.pair.hermitian, c.h0);
        assert_eq!(c.pair.non_hermitian, c.h0);
    }
}
