use num_complex::Complex64;

use super::pulse::{field_integrals, field_value, Pulse};
use crate::error::Result;
use crate::weyl::{compose_weyl, WeylSymbol};

fn shifted(v: f64) -> impl Fn(WeylSymbol) -> WeylSymbol {
    move |s| &s + &WeylSymbol::constant(Complex64::new(v, 0.0))
}

/// Velocity-gauge Hamiltonian `h0(p − b(t), x)`.
pub fn velocity_gauge(h0: &WeylSymbol, pulse: &Pulse, t: f64) -> Result<WeylSymbol> {
    let b = field_integrals(pulse, t)?.b;
    Ok(compose_weyl(h0, &WeylSymbol::x(), &shifted(-b)(WeylSymbol::p())))
}

/// Kramers-Henneberger Hamiltonian `h0(p, x − c(t))`.
pub fn kramers_henneberger_gauge(h0: &WeylSymbol, pulse: &Pulse, t: f64) -> Result<WeylSymbol> {
    let c = field_integrals(pulse, t)?.c;
    Ok(compose_weyl(h0, &shifted(-c)(WeylSymbol::x()), &WeylSymbol::p()))
}

/// Both sides of the gauge identity, subtracted:
/// `h_l − xE − h_v(p + b, x)` and `h_l − xE − h_KH(p, x + c)`.
pub fn gauge_residual(h0: &WeylSymbol, pulse: &Pulse, t: f64) -> Result<(WeylSymbol, WeylSymbol)> {
    let fi = field_integrals(pulse, t)?;
    let length = h0 + &WeylSymbol::monomial(1, 0, field_value(pulse, t));
    let bare = &length - &WeylSymbol::monomial(1, 0, field_value(pulse, t));

    let hv = velocity_gauge(h0, pulse, t)?;
    let hv_back = compose_weyl(&hv, &WeylSymbol::x(), &shifted(fi.b)(WeylSymbol::p()));
    let hkh = kramers_henneberger_gauge(h0, pulse, t)?;
    let hkh_back = compose_weyl(&hkh, &shifted(fi.c)(WeylSymbol::x()), &WeylSymbol::p());
    Ok((&bare - &hv_back, &bare - &hkh_back))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_is_trivial() {
        let h0 = WeylSymbol::from_terms([(0, 2, 0.5), (2, 0, 0.5)]);
        let p = Pulse::sine(0.0, 1.0, 10.0).unwrap();
        let (a, b) = gauge_residual(&h0, &p, 3.0).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn velocity_gauge_is_minimal_coupling() {
        let h0 = WeylSymbol::from_terms([(0, 2, 0.5)]);
        let p = Pulse::sine(0.3, 1.0, 10.0).unwrap();
        let b = field_integrals(&p, 2.0).unwrap().b;
        let hv = velocity_gauge(&h0, &p, 2.0).unwrap();
        let expected = WeylSymbol::from_terms([(0, 2, 0.5), (0, 1, -b), (0, 0, 0.5 * b * b)]);
        assert!(hv.approx_eq(&expected, 1e-15));
    }
}
