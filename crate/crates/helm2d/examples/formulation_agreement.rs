//! The headline experiment in miniature: sweep a frequency window with the
//! contour eigensolver for both boundary formulations of the same star-shaped
//! scatterer and pair the two eigenvalue lists one-to-one.
//!
//! The two formulations are different linearizations (a 2x2 direct system
//! and a 3x3 direct-indirect one), yet their eigenvalue distributions must
//! coincide. The full-resolution version of this experiment lives in
//! tests/acceptance.rs; this example runs a coarser, faster slice.
//!
//! Run with: cargo run --example formulation_agreement

use helm2d::geometry::{Boundary, Star};
use helm2d::pairing::pair_eigenvalues;
use helm2d::ssm::{tiled_eigs, TiledSpec};
use helm2d::systems::{formulation_family, Formulation, Materials};
use helm2d::Window;
use num_complex::Complex64;

fn main() -> helm2d::Result<()> {
    let materials = Materials::default();
    let boundary = Boundary::discretize(&Star::new(1.0, 0.3, 5)?, 128)?;
    let window = Window::new(0.5, 1.6, -1.0, 0.0)?;

    let forms = [Formulation::BurtonMiller, Formulation::Mixed];
    let mut family = formulation_family(&boundary, &materials, &forms);
    let spec = TiledSpec {
        tiles_re: 3,
        tiles_im: 2,
        ..TiledSpec::default()
    };
    println!(
        "star scatterer, N = {}, window [{}, {}] x [{}, {}], {}x{} tiles…",
        boundary.len(),
        window.re_min,
        window.re_max,
        window.im_min,
        window.im_max,
        spec.tiles_re,
        spec.tiles_im
    );
    let lists = tiled_eigs(&mut family, &window, &spec)?;
    let bm: Vec<Complex64> = lists[0].iter().map(|e| e.lambda).collect();
    let mixed: Vec<Complex64> = lists[1].iter().map(|e| e.lambda).collect();

    let pairing = pair_eigenvalues(&bm, &mixed, 1e-6);
    println!(
        "\nburton-miller found {}, mixed found {}, paired {} (tolerance 1e-6)",
        bm.len(),
        mixed.len(),
        pairing.pairs.len()
    );
    println!("{:>32} {:>32} {:>10}", "burton-miller", "mixed", "distance");
    for p in &pairing.pairs {
        let (a, b) = (bm[p.left], mixed[p.right]);
        println!(
            "{:>18.12} {:+.12}i {:>18.12} {:+.12}i {:>10.2e}",
            a.re, a.im, b.re, b.im, p.distance
        );
    }
    for &i in &pairing.unmatched_left {
        println!("unmatched burton-miller: {}", bm[i]);
    }
    for &j in &pairing.unmatched_right {
        println!("unmatched mixed: {}", mixed[j]);
    }
    if pairing.is_bijection() {
        println!(
            "\none-to-one match; max distance {:.2e}",
            pairing.max_distance()
        );
    }
    Ok(())
}
