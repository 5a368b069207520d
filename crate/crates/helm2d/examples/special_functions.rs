//! Cylinder functions of complex argument: values, derivatives, and the
//! cross-product identity that ties the whole family together.
//!
//! Run with: cargo run --example special_functions

use helm2d::specfun::{cyl, cyl_deriv, CylKind};
use num_complex::Complex64;

fn main() -> helm2d::Result<()> {
    let args = [
        Complex64::new(2.0, 0.0),
        Complex64::new(5.0, -1.5),
        Complex64::new(0.3, 0.02),
        Complex64::new(40.0, 12.0),
    ];

    println!("J_n, Y_n, H1_n at complex arguments (n = 2):");
    for &z in &args {
        let j = cyl(CylKind::J, 2, z)?;
        let y = cyl(CylKind::Y, 2, z)?;
        let h = cyl(CylKind::H1, 2, z)?;
        println!("  z = {z:>24.6}");
        println!("    J_2 = {j:+.15e}");
        println!("    Y_2 = {y:+.15e}");
        println!("    H1_2 = {h:+.15e}");
        println!("    |J + iY - H1| = {:.2e}", (j + Complex64::i() * y - h).norm());
    }

    // The Wronskian-type identity J_n(z) Y'_n(z) - J'_n(z) Y_n(z) = 2/(pi z)
    // holds for every order and argument; its residual is a sharp accuracy
    // probe because the two products cancel to the last digits.
    println!("\ncross-product identity residuals:");
    for n in [0, 1, 7, 23, 61] {
        let z = Complex64::new(1.0 + 2.3 * n as f64, -0.7);
        let j = cyl(CylKind::J, n, z)?;
        let dj = cyl_deriv(CylKind::J, n, z)?;
        let y = cyl(CylKind::Y, n, z)?;
        let dy = cyl_deriv(CylKind::Y, n, z)?;
        let want = 2.0 / (std::f64::consts::PI * z);
        let rel = ((j * dy - dj * y) - want).norm() / want.norm();
        println!("  n = {n:>2}, z = {z:>12.3}: rel residual {rel:.2e}");
    }
    Ok(())
}
