//! Stokes wedges and complex integration contours for `H = p² − g (ix)^N`.
//!
//! Wedge bounds are kept in their natural (unwrapped) form so that
//! `theta_lo < theta_hi`; membership tests reduce angles modulo `2π`.
//! Single angles (anti-Stokes directions, contour limits) are reported in
//! `(−π, π]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StokesWedge {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub side: Side,
    pub n: u32,
}

impl StokesWedge {
    pub fn width(&self) -> f64 {
        self.theta_hi - self.theta_lo
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.theta_lo + self.theta_hi)
    }

    /// Strict interior test, modulo `2π`; the bounding Stokes lines are
    /// excluded.
    pub fn contains(&self, theta: f64) -> bool {
        let offset = (theta - self.theta_lo).rem_euclid(2.0 * PI);
        offset > 0.0 && offset < self.width()
    }
}

/// Wraps an angle to `(−π, π]`.
pub fn principal_angle(theta: f64) -> f64 {
    let t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t == -PI {
        PI
    } else {
        t
    }
}

/// `(left, right)` wedges in which eigenfunctions decay; `N >= 2`.
pub fn wedges(n: u32) -> Result<(StokesWedge, StokesWedge)> {
    if n < 2 {
        return Err(Error::Domain(format!("wedges need N >= 2, got {n}")));
    }
    let nf = n as f64;
    let den = 2.0 * (nf + 2.0);
    let left = StokesWedge {
        theta_lo: -(8.0 + nf) * PI / den,
        theta_hi: -(4.0 + nf) * PI / den,
        side: Side::Left,
        n,
    };
    let right = StokesWedge {
        theta_lo: -nf * PI / den,
        theta_hi: (4.0 - nf) * PI / den,
        side: Side::Right,
        n,
    };
    Ok((left, right))
}

/// `(θ_L, θ_R)` anti-Stokes directions, the wedge centres.
pub fn anti_stokes(n: u32) -> Result<(f64, f64)> {
    let (l, r) = wedges(n)?;
    Ok((principal_angle(l.center()), principal_angle(r.center())))
}

/// `sin(πN/4 + (2+N)θ/2) > 0`.
pub fn decay_condition(n: u32, theta: f64) -> bool {
    let nf = n as f64;
    (PI * nf / 4.0 + (2.0 + nf) * theta / 2.0).sin() > 0.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ContourKind {
    /// `z₁(x) = x cos θ + i sin θ √(a² + x²)` with `θ = θ_R^AS(N)`.
    HyperbolaZ1 { a: f64 },
    /// `z₂(x) = −2i √(1 + ix)`.
    SqrtZ2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour {
    pub kind: ContourKind,
    pub n: u32,
}

impl Contour {
    pub fn z1(n: u32, a: f64) -> Self {
        Contour {
            kind: ContourKind::HyperbolaZ1 { a },
            n,
        }
    }

    pub fn z2(n: u32) -> Self {
        Contour {
            kind: ContourKind::SqrtZ2,
            n,
        }
    }

    /// `(lim_{x→−∞} arg z, lim_{x→+∞} arg z)`, in closed form.
    pub fn asymptotic_angles(&self) -> Result<(f64, f64)> {
        match self.kind {
            ContourKind::HyperbolaZ1 { .. } => {
                let (_, t) = anti_stokes(self.n)?;
                Ok((principal_angle(PI - t), t))
            }
            ContourKind::SqrtZ2 => Ok((-0.75 * PI, -0.25 * PI)),
        }
    }
}

pub fn contour_point(c: &Contour, x: f64) -> Complex64 {
    match c.kind {
        ContourKind::HyperbolaZ1 { a } => {
            let n = c.n.max(2);
            let (_, t) = anti_stokes(n).expect("n >= 2");
            Complex64::new(x * t.cos(), t.sin() * (a * a + x * x).sqrt())
        }
        ContourKind::SqrtZ2 => Complex64::new(0.0, -2.0) * Complex64::new(1.0, x).sqrt(),
    }
}

/// Whether the contour ends inside the left and right wedges of `n`.
pub fn contour_admissible(c: &Contour, n: u32) -> bool {
    let Ok((left, right)) = wedges(n) else {
        return false;
    };
    let Ok((lo, hi)) = c.asymptotic_angles() else {
        return false;
    };
    left.contains(lo) && right.contains(hi)
}

/// Leading exponent `2√g/(N+2) i^{1+N/2} z^{1+N/2}` of the WKB asymptotics,
/// principal branches; the eigenfunction decays where its real part is
/// negative. `g` must be positive.
pub fn asymptotic_exponent(n: u32, g: f64, z: Complex64) -> Complex64 {
    let s = 1.0 + n as f64 / 2.0;
    let phase = Complex64::from_polar(1.0, 0.5 * PI * s);
    2.0 * g.sqrt() / (n as f64 + 2.0) * phase * z.powf(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_wedges() {
        let (l, r) = wedges(4).unwrap();
        assert!((r.theta_lo + PI / 3.0).abs() < 1e-15 && r.theta_hi.abs() < 1e-15);
        assert!((l.theta_lo + PI).abs() < 1e-15 && (l.theta_hi + 2.0 * PI / 3.0).abs() < 1e-15);
        assert!(wedges(1).is_err());
    }

    #[test]
    fn z2_endpoints() {
        let c = Contour::z2(4);
        assert_eq!(contour_point(&c, 0.0), Complex64::new(0.0, -2.0));
        let far = contour_point(&c, 1e12).arg();
        assert!((far + PI / 4.0).abs() < 1e-5);
        let far = contour_point(&c, -1e12).arg();
        assert!((far + 3.0 * PI / 4.0).abs() < 1e-5);
    }

    #[test]
    fn z1_at_origin() {
        let z = contour_point(&Contour::z1(4, 1.0), 0.0);
        assert!(z.re.abs() < 1e-15 && (z.im + 0.5).abs() < 1e-15);
    }

    #[test]
    fn principal_angle_range() {
        assert_eq!(principal_angle(-PI), PI);
        assert!((principal_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }
}
