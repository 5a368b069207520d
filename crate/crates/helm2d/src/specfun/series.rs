//! Small-argument power and logarithmic series, evaluated in double-double
//! arithmetic.
//!
//! For |z| ≲ 35 the ascending series terms peak near e^|z| while the function
//! values can be O(1), so up to ~15 decimal digits cancel. All sums below are
//! accumulated in `Cdd` (~31 digits), which leaves ≥ 15 correct digits
//! everywhere these routines are dispatched to. The complex logarithm is
//! plain f64 in the Y series (where it never participates in the amplified
//! cancellation) but double-double in the K series, where its absolute error
//! would otherwise be magnified by e^{2 Re w}; see the notes on the two
//! `log_half_plus_gamma*` helpers.

use num_complex::Complex64;

use super::dd::{Cdd, Dd};

/// Euler–Mascheroni constant as a double-double.
pub(crate) const GAMMA_DD: Dd = Dd::new(0.5772156649015329, -4.942915152430645e-18);
/// 2/π as a double-double.
pub(crate) const TWO_OVER_PI_DD: Dd = Dd::new(std::f64::consts::FRAC_2_PI, -3.935735335036497e-17);

/// Hard cap on series length; the longest convergent case (|z| = 35) needs
/// ~120 terms to push the tail below the double-double roundoff.
const MAX_TERMS: usize = 400;

/// Relative tail threshold: stop once the term is below the accumulated
/// double-double noise floor of the largest term seen.
const TAIL_EPS: f64 = 1e-35;

/// J_n(z) = (z/2)^n/n! Σ_{m≥0} (−q)^m / (m! (n+m)!),  q = (z/2)².
///
/// The prefactor is accumulated as Π (z/2)/j to avoid overflowing n!
/// separately; intermediate magnitudes stay in range for the whole support
/// box (n ≤ 200, |z| ≤ 400 small-region dispatch only sees |z| ≤ 12).
pub(crate) fn bessel_j_series(n: u32, z: Complex64) -> Cdd {
    let half = Cdd::from_c64(0.5 * z);
    let q = half.mul(half);
    let mut pref = Cdd::ONE;
    for j in 1..=n {
        pref = pref.mul(half).div_f64(j as f64);
    }
    let mut term = Cdd::ONE;
    let mut sum = Cdd::ONE;
    let mut largest = 1.0f64;
    for m in 1..MAX_TERMS {
        term = term.mul(q).div_f64(-((m * (m + n as usize)) as f64));
        sum = sum.add(term);
        let t = term.mag();
        largest = largest.max(t);
        if t < TAIL_EPS * largest {
            break;
        }
    }
    pref.mul(sum)
}

/// I_n(w): as `bessel_j_series` but with all-positive terms.
pub(crate) fn bessel_i_series(n: u32, w: Complex64) -> Cdd {
    let half = Cdd::from_c64(0.5 * w);
    let q = half.mul(half);
    let mut pref = Cdd::ONE;
    for j in 1..=n {
        pref = pref.mul(half).div_f64(j as f64);
    }
    let mut term = Cdd::ONE;
    let mut sum = Cdd::ONE;
    let mut largest = 1.0f64;
    for m in 1..MAX_TERMS {
        term = term.mul(q).div_f64((m * (m + n as usize)) as f64);
        sum = sum.add(term);
        let t = term.mag();
        largest = largest.max(t);
        if t < TAIL_EPS * largest {
            break;
        }
    }
    pref.mul(sum)
}

/// Harmonic numbers H_0..H_kmax as double-doubles.
fn harmonic_table(kmax: usize) -> Vec<Dd> {
    let mut h = Vec::with_capacity(kmax + 1);
    h.push(Dd::ZERO);
    let mut acc = Dd::ZERO;
    for k in 1..=kmax {
        acc = acc.add(Dd::recip_f64(k as f64));
        h.push(acc);
    }
    h
}

/// ln(z/2) + γ as a `Cdd`, with a plain f64 logarithm.
///
/// Adequate for the Y series only: there the log multiplies J_n ~ O(1) and
/// the result Y_n is also O(1), so the log's ~1e-16 absolute rounding error
/// passes through unamplified.
fn log_half_plus_gamma(z: Complex64) -> Cdd {
    let l = (0.5 * z).ln();
    Cdd::new(Dd::from_f64(l.re).add(GAMMA_DD), Dd::from_f64(l.im))
}

/// ln(w/2) + γ with the logarithm itself in double-double.
///
/// Required by the K series: there the log multiplies I_n ~ e^{Re w} inside a
/// combination that cancels down to K_n ~ e^{−Re w}, so an absolute log error
/// δ becomes a *relative* error δ·e^{2 Re w} in K_n — up to ~6e14·δ at the
/// |w| = 17 dispatch boundary. Only the double-double log keeps that term at
/// roundoff. Callers guarantee Re(w/2) > 1 (this route only runs for
/// Im z > 2, w = −iz), which is what `ln_right_half` needs.
fn log_half_plus_gamma_dd(w: Complex64) -> Cdd {
    let l = Cdd::from_c64(0.5 * w).ln_right_half();
    Cdd::new(l.re.add(GAMMA_DD), l.im)
}

/// (J_0, J_1, Y_0, Y_1) at z, the Y's by the ascending logarithmic series:
///
/// Y_0 = (2/π) [ (ln(z/2)+γ) J_0 + Σ_{k≥1} (−1)^{k+1} H_k q^k/(k!)² ]
/// Y_1 = (2/π) (ln(z/2)+γ) J_1 − 2/(πz)
///       − (1/π)(z/2) Σ_{k≥0} (−1)^k (H_k + H_{k+1}) q^k / (k!(k+1)!)
///
/// The J anchors are needed internally for the logarithmic terms, so they
/// are returned as well; fused callers use all four.
pub(crate) fn bessel_jy01_series(z: Complex64) -> (Cdd, Cdd, Cdd, Cdd) {
    let j0 = bessel_j_series(0, z);
    let j1 = bessel_j_series(1, z);
    let c = log_half_plus_gamma(z);
    let half = Cdd::from_c64(0.5 * z);
    let q = half.mul(half);
    let h = harmonic_table(MAX_TERMS + 1);

    // Σ for Y_0: t_k = (−q)^k/(k!)², sum −Σ H_k t_k.
    let mut t = Cdd::ONE;
    let mut s0 = Cdd::ZERO;
    let mut largest = 0.0f64;
    for k in 1..MAX_TERMS {
        t = t.mul(q).div_f64(-((k * k) as f64));
        s0 = s0.add(t.mul_dd(h[k]));
        let m = t.mag() * h[k].hi;
        largest = largest.max(m);
        if m < TAIL_EPS * largest.max(1e-300) {
            break;
        }
    }
    let y0 = c.mul(j0).sub(s0).mul_dd(TWO_OVER_PI_DD);

    // Σ for Y_1: t_k = (−q)^k/(k!(k+1)!), weights H_k + H_{k+1}.
    let mut t = Cdd::ONE;
    let mut s1 = t.mul_dd(h[0].add(h[1]));
    let mut largest = s1.mag();
    for k in 1..MAX_TERMS {
        t = t.mul(q).div_f64(-((k * (k + 1)) as f64));
        let contrib = t.mul_dd(h[k].add(h[k + 1]));
        s1 = s1.add(contrib);
        let m = contrib.mag();
        largest = largest.max(m);
        if m < TAIL_EPS * largest {
            break;
        }
    }
    let y1 = c
        .mul(j1)
        .sub(Cdd::recip_c64(z))
        .sub(half.mul(s1).mul_f64(0.5))
        .mul_dd(TWO_OVER_PI_DD);

    (j0, j1, y0, y1)
}

/// (K_0(w), K_1(w)) by the ascending logarithmic series:
///
/// K_0 = −(ln(w/2)+γ) I_0 + Σ_{k≥1} H_k p^k/(k!)²,          p = (w/2)²
/// K_1 = (ln(w/2)+γ) I_1 + 1/w − (w/4) Σ_{k≥0} (H_k+H_{k+1}) p^k/(k!(k+1)!)
pub(crate) fn bessel_k01_series(w: Complex64) -> (Cdd, Cdd) {
    let i0 = bessel_i_series(0, w);
    let i1 = bessel_i_series(1, w);
    let c = log_half_plus_gamma_dd(w);
    let half = Cdd::from_c64(0.5 * w);
    let p = half.mul(half);
    let h = harmonic_table(MAX_TERMS + 1);

    let mut t = Cdd::ONE;
    let mut s0 = Cdd::ZERO;
    let mut largest = 0.0f64;
    for k in 1..MAX_TERMS {
        t = t.mul(p).div_f64((k * k) as f64);
        s0 = s0.add(t.mul_dd(h[k]));
        let m = t.mag() * h[k].hi;
        largest = largest.max(m);
        if m < TAIL_EPS * largest.max(1e-300) {
            break;
        }
    }
    let k0 = s0.sub(c.mul(i0));

    let mut t = Cdd::ONE;
    let mut s1 = t.mul_dd(h[0].add(h[1]));
    let mut largest = s1.mag();
    for k in 1..MAX_TERMS {
        t = t.mul(p).div_f64((k * (k + 1)) as f64);
        let contrib = t.mul_dd(h[k].add(h[k + 1]));
        s1 = s1.add(contrib);
        let m = contrib.mag();
        largest = largest.max(m);
        if m < TAIL_EPS * largest {
            break;
        }
    }
    let k1 = c
        .mul(i1)
        .add(Cdd::recip_c64(w))
        .sub(half.mul(s1).mul_f64(0.5));

    (k0, k1)
}
