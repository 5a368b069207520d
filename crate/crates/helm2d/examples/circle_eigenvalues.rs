//! Analytic eigenfrequencies of the unit circle: the transmission problem's
//! boundary systems become 2x2 (and 3x3) per Fourier mode, so their complex
//! eigenfrequencies are roots of closed-form determinants.
//!
//! Run with: cargo run --example circle_eigenvalues

use helm2d::circle_oracle::{factorization_defects, find_eigenvalues, EigKind, OracleConfig};
use helm2d::systems::Materials;
use helm2d::Window;
use num_complex::Complex64;

fn main() -> helm2d::Result<()> {
    let materials = Materials::default(); // eps = (1, 4), mu = (1, 1)
    let window = Window::new(0.5, 3.0, -1.0, 0.0)?;
    let cfg = OracleConfig::new(1.0, materials, window);

    // Both formulations share the same determinant zeros: the per-mode
    // determinants factor into an exterior ("fictitious") part and the true
    // transmission part. Verify the factorization at one sample point first.
    let d = factorization_defects(1.0, &materials, 4, Complex64::new(1.7, -0.4))?;
    println!("determinant factorization defect at a sample point: {:.2e}\n", d.max());

    let eigs = find_eigenvalues(&cfg)?;
    println!(
        "{} eigenvalues of the circle in [{}, {}] x [{}, {}]:",
        eigs.len(),
        window.re_min,
        window.re_max,
        window.im_min,
        window.im_max
    );
    println!("{:>24} {:>6} {:>6}  kind", "omega", "mode", "mult");
    for e in &eigs {
        println!(
            "{:>11.6} {:+.6}i {:>6} {:>6}  {}",
            e.omega.re,
            e.omega.im,
            e.mode,
            e.multiplicity,
            e.kind.label()
        );
    }

    let res = eigs.iter().filter(|e| e.kind == EigKind::Resonance).count();
    println!(
        "\n{res} physical resonances, {} fictitious eigenvalues of the exterior factor",
        eigs.len() - res
    );
    println!("(the fictitious ones are shared by both formulations by construction)");
    Ok(())
}
