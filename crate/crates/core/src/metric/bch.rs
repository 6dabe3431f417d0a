use num_complex::Complex64;

use super::kappa::KappaTable;
use crate::error::{Error, Result};
use crate::weyl::{WeylSymbol, ZERO_THRESHOLD};

/// Default cap on the number of nested commutators summed by
/// [`conjugate_by_exp`].
pub const DEFAULT_MAX_ORDER: usize = 32;

/// `c_q^(n)(O)`: `O` commuted `n` times from the left with `q`.
pub fn nfold_commutator(q: &WeylSymbol, o: &WeylSymbol, n: usize) -> WeylSymbol {
    let mut c = o.clone();
    for _ in 0..n {
        if c.is_zero() {
            break;
        }
        c = q.star_commutator(&c);
    }
    c
}

/// Whether `next = [q, prev]` is zero up to cancellation noise.
fn vanishes(next: &WeylSymbol, q: &WeylSymbol, prev: &WeylSymbol) -> bool {
    next.max_abs() <= ZERO_THRESHOLD * (q.max_abs() * prev.max_abs()).max(f64::MIN_POSITIVE)
}

/// Hermitian/non-Hermitian pair related by `h = η H η⁻¹`, `η = exp(q/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityPair {
    pub hermitian: WeylSymbol,
    pub non_hermitian: WeylSymbol,
    pub generator: WeylSymbol,
    /// `ℓ` with `c_q^(ℓ+1)(h₀) = 0`.
    pub truncation_order: usize,
}

/// Builds `(h, H)` from the Hermitian seed `h0` and the generator `q`
/// through the closed Euler/κ sums, which are exact once `c_q^(ℓ+1)(h₀)`
/// vanishes.
pub fn hermitian_pair_from_q(h0: &WeylSymbol, q: &WeylSymbol, ell: usize) -> Result<SimilarityPair> {
    if !h0.is_hermitian() {
        return Err(Error::NotHermitian(format!("h0 = {h0}")));
    }
    let mut chain = vec![h0.clone()];
    for n in 1..=ell + 1 {
        let next = q.star_commutator(&chain[n - 1]);
        if n == ell + 1 && !vanishes(&next, q, &chain[n - 1]) {
            return Err(Error::NonTerminating { order: n });
        }
        chain.push(next);
    }

    let table = KappaTable::new(ell.div_ceil(2).max(1));
    let mut h = h0.clone();
    let mut fact = 1.0f64;
    for n in 1..=ell {
        fact *= n as f64;
        if n % 2 == 0 {
            let k = n / 2;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let w = sign * table.euler_f64(k) / (4f64.powi(k as i32) * fact);
            h = &h + &chain[n].scale(w);
        }
    }
    let mut big_h = h0.clone();
    let mut fact = 1.0f64;
    for n in 1..=ell {
        fact *= n as f64;
        if n % 2 == 1 {
            let w = table.kappa_f64(n.div_ceil(2)) / fact;
            big_h = &big_h - &chain[n].scale(w);
        }
    }
    Ok(SimilarityPair {
        hermitian: h,
        non_hermitian: big_h,
        generator: q.clone(),
        truncation_order: ell,
    })
}

/// Result of a BCH conjugation.
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation {
    pub symbol: WeylSymbol,
    /// True when a nested commutator vanished before `max_order`.
    pub terminated: bool,
    /// Highest commutator order that contributed.
    pub order: usize,
}

/// `e^q O e^{-q} = Σ_n c_q^(n)(O)/n!`, summed up to `max_order`.
pub fn conjugate_by_exp(q: &WeylSymbol, o: &WeylSymbol, max_order: usize) -> Conjugation {
    let mut sum = o.clone();
    let mut term = o.clone();
    let mut order = 0;
    let mut terminated = o.is_zero();
    for n in 1..=max_order {
        if terminated {
            break;
        }
        let next = q.star_commutator(&term).scale(Complex64::new(1.0 / n as f64, 0.0));
        if vanishes(&next, q, &term) {
            terminated = true;
            break;
        }
        sum = &sum + &next;
        term = next;
        order = n;
    }
    Conjugation {
        symbol: sum,
        terminated,
        order,
    }
}

/// Observable in the non-Hermitian picture, `η⁻¹ o η` with `η = exp(q/2)`.
pub fn observable_map(o: &WeylSymbol, q: &WeylSymbol, max_order: usize) -> Result<WeylSymbol> {
    let c = conjugate_by_exp(&q.scale(-0.5), o, max_order);
    if !c.terminated {
        return Err(Error::NonTerminating { order: max_order + 1 });
    }
    Ok(c.symbol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: f64) -> Complex64 {
        Complex64::new(0.0, v)
    }

    #[test]
    fn zero_generator_is_identity() {
        let h0 = WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, 0.7)]);
        let pair = hermitian_pair_from_q(&h0, &WeylSymbol::zero(), 0).unwrap();
        assert_eq!(pair.hermitian, h0);
        assert_eq!(pair.non_hermitian, h0);
        let c = conjugate_by_exp(&WeylSymbol::zero(), &h0, DEFAULT_MAX_ORDER);
        assert!(c.terminated);
        assert_eq!(c.symbol, h0);
    }

    #[test]
    fn momentum_shift() {
        // exp(ξ p) x exp(-ξ p) = x - iξ
        let xi = 0.8;
        let c = conjugate_by_exp(&WeylSymbol::monomial(0, 1, xi), &WeylSymbol::x(), 8);
        assert!(c.terminated);
        let expected = WeylSymbol::from_terms([(1, 0, Complex64::new(1.0, 0.0)), (0, 0, i(-xi))]);
        assert!(c.symbol.approx_eq(&expected, 1e-15));
    }

    #[test]
    fn non_hermitian_seed_rejected() {
        let h0 = WeylSymbol::monomial(1, 1, i(1.0));
        assert!(matches!(
            hermitian_pair_from_q(&h0, &WeylSymbol::x(), 1),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn non_terminating_order_is_reported() {
        // [x^3, p^2] keeps producing terms beyond ℓ = 1
        let h0 = WeylSymbol::monomial(0, 2, 1.0);
        let q = WeylSymbol::monomial(3, 0, 0.3);
        assert_eq!(
            hermitian_pair_from_q(&h0, &q, 1),
            Err(Error::NonTerminating { order: 2 })
        );
    }

    #[test]
    fn unbounded_series_reports_not_terminated() {
        let c = conjugate_by_exp(&WeylSymbol::monomial(2, 0, 0.1), &WeylSymbol::monomial(0, 3, 1.0), 1);
        assert!(!c.terminated);
        assert!(observable_map(&WeylSymbol::monomial(0, 3, 1.0), &WeylSymbol::monomial(2, 0, 0.1), 1).is_err());
    }
}
