//! Contour-integral eigenvalues of the discretized boundary systems, checked
//! against the analytic circle oracle on a small frequency window.
//!
//! Both formulations are assembled from one shared set of layer-potential
//! operators per frequency, so solving them side by side costs little more
//! than solving one.
//!
//! Run with: cargo run --example contour_eigensolver

use helm2d::circle_oracle::{find_eigenvalues, OracleConfig};
use helm2d::geometry::{Boundary, Circle};
use helm2d::ssm::{tiled_eigs, TiledSpec};
use helm2d::systems::{formulation_family, Formulation, Materials};
use helm2d::Window;

fn main() -> helm2d::Result<()> {
    let materials = Materials::default();
    // A window holding two nearby eigenvalues: the lowest symmetric
    // resonance and one fictitious eigenvalue of the exterior factor.
    let window = Window::new(0.9, 1.4, -1.0, -0.1)?;

    let oracle_cfg = OracleConfig::new(1.0, materials, window);
    let reference = find_eigenvalues(&oracle_cfg)?;
    println!("oracle predicts {} eigenvalues:", reference.len());
    for e in &reference {
        println!(
            "  {:+.12} {:+.12}i  (mode {}, {})",
            e.omega.re,
            e.omega.im,
            e.mode,
            e.kind.label()
        );
    }

    let boundary = Boundary::discretize(&Circle::new(1.0)?, 96)?;
    let forms = [Formulation::BurtonMiller, Formulation::Mixed];
    let mut family = formulation_family(&boundary, &materials, &forms);

    let spec = TiledSpec {
        tiles_re: 2,
        tiles_im: 2,
        ..TiledSpec::default()
    };
    println!(
        "\nsweeping a {}x{} tiling with {} quadrature nodes per tile side (N = {})…",
        spec.tiles_re,
        spec.tiles_im,
        spec.contour.nodes_per_side,
        boundary.len()
    );
    let lists = tiled_eigs(&mut family, &window, &spec)?;

    for (f, list) in forms.iter().zip(&lists) {
        println!("\n{} formulation found {}:", f.label(), list.len());
        for e in list {
            let nearest = reference
                .iter()
                .map(|r| (r.omega - e.lambda).norm())
                .fold(f64::INFINITY, f64::min);
            println!(
                "  {:+.12} {:+.12}i  residual {:.1e}  |Δ to oracle| {:.1e}",
                e.lambda.re, e.lambda.im, e.residual, nearest
            );
        }
    }
    println!("\n(discretization error shrinks spectrally fast with N)");
    Ok(())
}
