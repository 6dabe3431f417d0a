use std::f64::consts::PI;

use proptest::prelude::*;

use pseudoherm::stokes::{anti_stokes, contour_admissible, decay_condition, principal_angle, wedges, Contour};

/// `Re(i z)^{1+N/2}` along the ray `arg z = θ`, continued in θ without a
/// branch cut: negative means the WKB tail decays.
fn tail_sign(n: u32, theta: f64) -> f64 {
    let s = 1.0 + n as f64 / 2.0;
    (s * (PI / 2.0 + theta)).cos()
}

proptest! {
    #[test]
    fn wedge_interiors_decay(n in 2u32..16, frac in 0.01f64..0.99) {
        let (left, right) = wedges(n).unwrap();
        for w in [left, right] {
            let theta = w.theta_lo + frac * w.width();
            prop_assert!(tail_sign(n, theta) < 0.0);
            prop_assert!(decay_condition(n, theta));
            prop_assert!(w.contains(theta));
        }
    }

    #[test]
    fn gaps_beside_the_wedges_grow(n in 2u32..16, frac in 0.01f64..0.99) {
        let (left, right) = wedges(n).unwrap();
        let width = 2.0 * PI / (n as f64 + 2.0);
        for w in [left, right] {
            prop_assert!((w.width() - width).abs() < 1e-12);
            let above = w.theta_hi + frac * width;
            let below = w.theta_lo - frac * width;
            prop_assert!(tail_sign(n, above) > 0.0 && !decay_condition(n, above));
            prop_assert!(tail_sign(n, below) > 0.0 && !decay_condition(n, below));
        }
    }

    #[test]
    fn anti_stokes_lines_decay_fastest(n in 2u32..16) {
        let (l, r) = anti_stokes(n).unwrap();
        let (left, right) = wedges(n).unwrap();
        prop_assert!((principal_angle(left.center()) - l).abs() < 1e-12);
        prop_assert!((tail_sign(n, right.center()) + 1.0).abs() < 1e-12);
        prop_assert!((tail_sign(n, left.center()) + 1.0).abs() < 1e-12);
        prop_assert!((r - right.center()).abs() < 1e-12);
    }

    #[test]
    fn hyperbola_contours_end_in_the_wedges(n in 2u32..16, a in 0.1f64..5.0) {
        prop_assert!(contour_admissible(&Contour::z1(n, a), n));
    }
}

#[test]
fn wedges_mirror_under_reflection() {
    // the left wedge is the reflection θ → −π − θ of the right one
    for n in 2..12 {
        let (left, right) = wedges(n).unwrap();
        assert!((left.theta_lo + PI + right.theta_hi).abs() < 1e-12);
        assert!((left.theta_hi + PI + right.theta_lo).abs() < 1e-12);
    }
}

#[test]
fn square_root_contour_fits_the_cubic_and_quartic() {
    assert!(contour_admissible(&Contour::z2(3), 3));
    assert!(contour_admissible(&Contour::z2(4), 4));
    // at N = 2 its ends lie on Stokes lines, outside the open wedges
    assert!(!contour_admissible(&Contour::z2(2), 2));
    assert!(wedges(1).is_err());
}
