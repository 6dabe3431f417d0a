use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::integrate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Sine,
    Cosine,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope {
    Rectangular,
    /// `exp(−(t − center)² / (2 width²))`.
    Gaussian { center: f64, width: f64 },
}

/// Linearly polarized field `E(t) = E0 f(t) carrier(ωt)` on `[0, τ]`,
/// zero outside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pulse {
    pub e0: f64,
    pub omega: f64,
    pub carrier: Carrier,
    pub envelope: Envelope,
    pub tau: f64,
}

/// `b = ∫E`, `c = ∫b`, `d = ½∫b²`, all from 0.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldIntegrals {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

const QUAD_TOL: f64 = 1e-13;

impl Pulse {
    pub fn new(e0: f64, omega: f64, carrier: Carrier, envelope: Envelope, tau: f64) -> Result<Self> {
        if !(e0 >= 0.0) {
            return Err(Error::Domain(format!("field amplitude must be non-negative, got {e0}")));
        }
        if !(tau > 0.0) {
            return Err(Error::Domain(format!("pulse duration must be positive, got {tau}")));
        }
        if let Envelope::Gaussian { width, .. } = envelope {
            if !(width > 0.0) {
                return Err(Error::Domain(format!("envelope width must be positive, got {width}")));
            }
        }
        Ok(Pulse {
            e0,
            omega,
            carrier,
            envelope,
            tau,
        })
    }

    /// Rectangular sine pulse, the common case.
    pub fn sine(e0: f64, omega: f64, tau: f64) -> Result<Self> {
        Pulse::new(e0, omega, Carrier::Sine, Envelope::Rectangular, tau)
    }
}

pub fn field_value(pulse: &Pulse, t: f64) -> f64 {
    if t < 0.0 || t > pulse.tau {
        return 0.0;
    }
    let carrier = match pulse.carrier {
        Carrier::Sine => (pulse.omega * t).sin(),
        Carrier::Cosine => (pulse.omega * t).cos(),
    };
    let env = match pulse.envelope {
        Envelope::Rectangular => 1.0,
        Envelope::Gaussian { center, width } => (-(t - center).powi(2) / (2.0 * width * width)).exp(),
    };
    pulse.e0 * env * carrier
}

fn rectangular(pulse: &Pulse, t: f64) -> FieldIntegrals {
    let (e0, w) = (pulse.e0, pulse.omega);
    if e0 == 0.0 {
        return FieldIntegrals::default();
    }
    match pulse.carrier {
        Carrier::Sine if w == 0.0 => FieldIntegrals::default(),
        Carrier::Cosine if w == 0.0 => FieldIntegrals {
            b: e0 * t,
            c: 0.5 * e0 * t * t,
            d: e0 * e0 * t.powi(3) / 6.0,
        },
        Carrier::Sine => {
            let (s1, c1, s2) = ((w * t).sin(), (w * t).cos(), (2.0 * w * t).sin());
            FieldIntegrals {
                b: e0 * (1.0 - c1) / w,
                c: e0 * (t / w - s1 / (w * w)),
                d: e0 * e0 / (2.0 * w * w) * (1.5 * t - 2.0 * s1 / w + s2 / (4.0 * w)),
            }
        }
        Carrier::Cosine => {
            let (s1, c1, s2) = ((w * t).sin(), (w * t).cos(), (2.0 * w * t).sin());
            FieldIntegrals {
                b: e0 * s1 / w,
                c: e0 * (1.0 - c1) / (w * w),
                d: e0 * e0 / (2.0 * w * w) * (0.5 * t - s2 / (4.0 * w)),
            }
        }
    }
}

fn quadrature(pulse: &Pulse, t: f64) -> Result<FieldIntegrals> {
    let e = |s: f64| field_value(pulse, s);
    let b_at = |s: f64| integrate(e, 0.0, s, QUAD_TOL);
    let b = b_at(t)?;
    // c(t) = ∫₀ᵗ (t − s) E(s) ds
    let c = integrate(|s| (t - s) * e(s), 0.0, t, QUAD_TOL)?;
    let d = 0.5 * integrate(|s| b_at(s).map(|v| v * v).unwrap_or(f64::NAN), 0.0, t, QUAD_TOL)?;
    if !d.is_finite() {
        return Err(Error::Accuracy {
            target: QUAD_TOL,
            estimate: f64::INFINITY,
        });
    }
    Ok(FieldIntegrals { b, c, d })
}

/// Closed form for rectangular envelopes, quadrature otherwise. After the
/// pulse, `b` is frozen while `c` and `d` grow linearly.
pub fn field_integrals(pulse: &Pulse, t: f64) -> Result<FieldIntegrals> {
    if t <= 0.0 {
        return Ok(FieldIntegrals::default());
    }
    let inside = t.min(pulse.tau);
    let mut fi = match pulse.envelope {
        Envelope::Rectangular => rectangular(pulse, inside),
        Envelope::Gaussian { .. } => quadrature(pulse, inside)?,
    };
    if t > pulse.tau {
        let dt = t - pulse.tau;
        fi.c += fi.b * dt;
        fi.d += 0.5 * fi.b * fi.b * dt;
    }
    Ok(fi)
}

/// `∫₀^T e^{iks} ds` with `T` the upper limit.
fn phase_integral(k: f64, t: f64) -> Complex64 {
    let y = 0.5 * k * t;
    let sinc = if y.abs() < 1e-8 { 1.0 - y * y / 6.0 } else { y.sin() / y };
    t * sinc * Complex64::from_polar(1.0, y)
}

/// `∫₀ᵗ e^{iΔs} E(s) ds`; two-pole closed form for rectangular pulses.
pub fn oscillatory_field_integral(pulse: &Pulse, delta: f64, t: f64) -> Result<Complex64> {
    let upper = t.min(pulse.tau);
    if upper <= 0.0 || pulse.e0 == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match pulse.envelope {
        Envelope::Rectangular => {
            let w = pulse.omega;
            let plus = phase_integral(delta + w, upper);
            let minus = phase_integral(delta - w, upper);
            Ok(pulse.e0
                * match pulse.carrier {
                    Carrier::Sine => (plus - minus) / Complex64::new(0.0, 2.0),
                    Carrier::Cosine => 0.5 * (plus + minus),
                })
        }
        Envelope::Gaussian { .. } => {
            let tol = QUAD_TOL * pulse.e0.max(1.0) * upper.max(1.0);
            let re = integrate(|s| (delta * s).cos() * field_value(pulse, s), 0.0, upper, tol)?;
            let im = integrate(|s| (delta * s).sin() * field_value(pulse, s), 0.0, upper, tol)?;
            Ok(Complex64::new(re, im))
        }
    }
}
