//! Stokes wedges of `H = p² − (iz)^N` for a range of `N`, and where the two
//! candidate integration contours end up asymptotically.

use pseudoherm::stokes::{anti_stokes, contour_admissible, contour_point, wedges, Contour};

fn main() -> pseudoherm::Result<()> {
    println!(" N   right wedge            anti-Stokes   z2 admissible");
    for n in 2..=10 {
        let (_, right) = wedges(n)?;
        let (_, theta) = anti_stokes(n)?;
        println!(
            "{n:2}   ({:+.4}, {:+.4})   {:+.4}       {}",
            right.theta_lo,
            right.theta_hi,
            theta,
            contour_admissible(&Contour::z2(n), n)
        );
    }

    let c = Contour::z1(4, 1.0);
    let (left, right) = c.asymptotic_angles()?;
    println!("\nz1 for N = 4 tends to arg z = {left:+.4} and {right:+.4}");
    for x in [-20.0, -1.0, 0.0, 1.0, 20.0] {
        let z = contour_point(&c, x);
        println!("  z1({x:+5.1}) = {:+.4} {:+.4}i", z.re, z.im);
    }
    Ok(())
}
