//! Numerical building blocks shared by the model and dynamics layers.

pub mod band;
pub mod quad;

pub use band::{BandLu, BandMatrix, SymBand};
pub use quad::{integrate, simpson_weights};

/// Formats `v` like C's `%.12g`; negative zero prints as `0`.
pub fn fmt_g12(v: f64) -> String {
    const P: i32 = 12;
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_g12;

    #[test]
    fn matches_printf_g() {
        assert_eq!(fmt_g12(0.5), "0.5");
        assert_eq!(fmt_g12(-0.0), "0");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt_g12(1.5e-7), "1.5e-07");
        assert_eq!(fmt_g12(-2.0), "-2");
        assert_eq!(fmt_g12(std::f64::consts::PI * 1e5), "314159.265359");
    }
}
