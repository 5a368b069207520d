//! Large-argument asymptotic expansions for the order-0 and order-1 anchors.
//!
//! Both expansions are divergent-asymptotic; they are summed to the smallest
//! term. The Hankel one is dispatched only for |z| > 35 where the optimal
//! truncation error is below e^{-70}; the modified-Bessel one for |w| > 17
//! where it is below ~2e-15 — both inside the accuracy budget.
//!
//! The oscillatory phase z − (2ν+1)π/4 is formed in double-double: at
//! |z| = 400 a plain f64 subtraction would already cost ~3e-14 of relative
//! phase, right at the accuracy target.

use num_complex::Complex64;

use super::dd::Dd;

const PI_OVER_4: Dd = Dd::new(std::f64::consts::FRAC_PI_4, 3.061616997868383e-17);

/// Σ_k a_k(ν) f^k with a_k = a_{k−1}(4ν² − (2k−1)²)/(8k), truncated at the
/// smallest term. `f` is i/z for the Hankel form and 1/w for the K form.
fn asymptotic_sum(nu: u32, f: Complex64) -> Complex64 {
    let mu = (4 * nu * nu) as f64;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0f64;
    for k in 1..=60 {
        let odd = (2 * k - 1) as f64;
        term *= f * ((mu - odd * odd) / (8.0 * k as f64));
        let t = term.norm();
        if t >= prev {
            break; // past the optimal truncation point
        }
        sum += term;
        prev = t;
        if t < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// e^{i(z − (2ν+1)π/4)} with the real part of the phase carried in
/// double-double; the residual low part enters as a first-order rotation.
fn phase_factor(nu: u32, z: Complex64) -> Complex64 {
    let phi = Dd::from_f64(z.re).sub(PI_OVER_4.mul_f64((2 * nu + 1) as f64));
    let rot = Complex64::new(phi.hi.cos(), phi.hi.sin());
    let fix = Complex64::new(1.0, phi.lo);
    (-z.im).exp() * rot * fix
}

/// (H₀⁽¹⁾(z), H₁⁽¹⁾(z)) for z in the closed first quadrant, |z| > 35:
/// √(2/(πz)) e^{i(z−(2ν+1)π/4)} Σ_k i^k a_k(ν) z^{−k}.
pub(crate) fn hankel1_01(z: Complex64) -> (Complex64, Complex64) {
    let f = Complex64::new(0.0, 1.0) * z.inv();
    let pref = (2.0 / std::f64::consts::PI * z.inv()).sqrt();
    let h0 = pref * phase_factor(0, z) * asymptotic_sum(0, f);
    let h1 = pref * phase_factor(1, z) * asymptotic_sum(1, f);
    (h0, h1)
}

/// (K₀(w), K₁(w)) for Re w > 0, |w| > 17:
/// √(π/(2w)) e^{−w} Σ_k a_k(ν) w^{−k}.
pub(crate) fn bessel_k_01(w: Complex64) -> (Complex64, Complex64) {
    let f = w.inv();
    let mag = (-w.re).exp();
    let rot = Complex64::new((-w.im).cos(), (-w.im).sin());
    let pref = (std::f64::consts::FRAC_PI_2 * f).sqrt() * mag * rot;
    let k0 = pref * asymptotic_sum(0, f);
    let k1 = pref * asymptotic_sum(1, f);
    (k0, k1)
}
