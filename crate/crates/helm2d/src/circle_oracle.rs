//! Analytic reference solutions on a circular boundary.
//!
//! On the circle of radius `a` every boundary operator is diagonal in the
//! Fourier basis `e^{inθ}`, so both block systems collapse to small per-mode
//! matrices with closed-form entries built from cylinder functions. This
//! module provides:
//!
//! * the per-mode 2×2 (Burton–Miller) and 3×3 (mixed) matrices and the two
//!   scalar factors their determinants split into — a *transmission* factor
//!   whose zeros are the physical scattering resonances, and a *fictitious*
//!   factor whose zeros are artifacts of the boundary reduction
//!   ([`resonance_determinant`], [`fictitious_determinant`],
//!   [`factorization_defects`]);
//! * a winding-number root finder that locates every determinant zero of
//!   every relevant mode inside a rectangular frequency window
//!   ([`find_eigenvalues`]), classified by factor of origin;
//! * the separation-of-variables (Mie) series for plane-wave scattering by
//!   the penetrable circle ([`mie_solve`]), used as ground truth for the
//!   Nyström forward solvers.
//!
//! Everything here is independent of the Nyström discretization: the only
//! shared ingredients are the cylinder functions, which have their own
//! reference tests.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::{Boundary, Vec2};
use crate::specfun::{cyl, cyl_deriv, CylKind};
use crate::systems::Materials;
use crate::window::Window;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which determinant factor an eigenfrequency is a zero of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EigKind {
    /// Zero of the transmission factor: a genuine scattering resonance of the
    /// penetrable obstacle, present in any faithful formulation.
    Resonance,
    /// Zero of the formulation-induced factor (interior/combined-trace
    /// resonance of the boundary reduction): not a physical resonance, but
    /// still an eigenvalue of the discretized operator family.
    Fictitious,
}

impl EigKind {
    /// Stable lower-case label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            EigKind::Resonance => "resonance",
            EigKind::Fictitious => "fictitious",
        }
    }

    /// Inverse of [`EigKind::label`].
    pub fn from_label(s: &str) -> Result<EigKind> {
        match s {
            "resonance" => Ok(EigKind::Resonance),
            "fictitious" => Ok(EigKind::Fictitious),
            other => Err(Error::InvalidConfig(format!(
                "unknown eigenvalue kind {other:?} (expected \"resonance\" or \"fictitious\")"
            ))),
        }
    }
}

/// One analytic eigenfrequency of the boundary-integral family on the circle.
#[derive(Clone, Copy, Debug)]
pub struct OracleEig {
    /// Complex frequency ω at which the per-mode determinant vanishes.
    pub omega: Complex64,
    /// Angular Fourier mode n ≥ 0 the zero belongs to.
    pub mode: u32,
    /// Eigenspace dimension: 1 for n = 0, else 2 (the ±n degeneracy).
    pub multiplicity: u32,
    /// Which determinant factor vanishes.
    pub kind: EigKind,
}

/// Cylinder-function values entering the per-mode closed forms.
struct ModeValues {
    k0: Complex64,
    k1: Complex64,
    /// J_n(k0 a), J'_n(k0 a)
    j_out: Complex64,
    dj_out: Complex64,
    /// H¹_n(k0 a), H¹'_n(k0 a)
    h_out: Complex64,
    dh_out: Complex64,
    /// J_n(k1 a), J'_n(k1 a)
    j_in: Complex64,
    dj_in: Complex64,
    /// H¹_n(k1 a)
    h_in: Complex64,
}

fn mode_values(radius: f64, m: &Materials, n: u32, omega: Complex64) -> Result<ModeValues> {
    let ni = i32::try_from(n)
        .map_err(|_| Error::InvalidConfig(format!("mode order {n} out of range")))?;
    let (k0, k1) = m.wavenumbers(omega);
    let z0 = k0 * radius;
    let z1 = k1 * radius;
    Ok(ModeValues {
        k0,
        k1,
        j_out: cyl(CylKind::J, ni, z0)?,
        dj_out: cyl_deriv(CylKind::J, ni, z0)?,
        h_out: cyl(CylKind::H1, ni, z0)?,
        dh_out: cyl_deriv(CylKind::H1, ni, z0)?,
        j_in: cyl(CylKind::J, ni, z1)?,
        dj_in: cyl_deriv(CylKind::J, ni, z1)?,
        h_in: cyl(CylKind::H1, ni, z1)?,
    })
}

/// The scalar prefactor (iπa/2) shared by all single- and double-layer
/// symbols on the circle of radius `a`.
fn symbol_prefactor(radius: f64) -> Complex64 {
    I * (0.5 * PI * radius)
}

/// Transmission factor of the per-mode determinants:
///
/// ε₁ k₀ H¹'_n(k₀a) J_n(k₁a) − ε₀ k₁ H¹_n(k₀a) J'_n(k₁a).
///
/// Its zeros in the lower half-plane are the complex resonances of the
/// penetrable circle; they are shared by both formulations and are exactly
/// the frequencies where the physical transmission problem (radiating
/// exterior Hankel mode matched to an interior Bessel mode) has a nontrivial
/// solution.
pub fn resonance_determinant(
    radius: f64,
    m: &Materials,
    n: u32,
    omega: Complex64,
) -> Result<Complex64> {
    let v = mode_values(radius, m, n, omega)?;
    Ok(m.eps[1] * v.k0 * v.dh_out * v.j_in - m.eps[0] * v.k1 * v.h_out * v.dj_in)
}

/// Formulation-induced factor of the per-mode determinants:
///
/// H¹_n(k₁a) · (J_n(k₀a) + i J'_n(k₀a)).
///
/// The first factor vanishes at complex "interior Hankel" frequencies of the
/// k₁ representation; the second is the Burton–Miller combined trace of the
/// regular exterior mode at coupling α = i/k₀ and, with this sign of α,
/// never vanishes for real ω. Zeros of either are eigenvalues of the
/// boundary systems without being physical resonances.
pub fn fictitious_determinant(
    radius: f64,
    m: &Materials,
    n: u32,
    omega: Complex64,
) -> Result<Complex64> {
    let v = mode_values(radius, m, n, omega)?;
    Ok(v.h_in * (v.j_out + I * v.dj_out))
}

/// Per-mode 2×2 matrix of the Burton–Miller system on the circle, acting on
/// the Fourier coefficients of (u, q).
pub fn bm_mode_matrix(
    radius: f64,
    m: &Materials,
    n: u32,
    omega: Complex64,
) -> Result<[[Complex64; 2]; 2]> {
    let v = mode_values(radius, m, n, omega)?;
    let c = symbol_prefactor(radius);
    let p = v.j_out + I * v.dj_out;
    Ok([
        [c * p * v.k0 * v.dh_out, -(c * p * m.eps[0] * v.h_out)],
        [-(c * v.h_in * v.k1 * v.dj_in), c * v.h_in * m.eps[1] * v.j_in],
    ])
}

/// Per-mode 3×3 matrix of the mixed direct–indirect system on the circle,
/// acting on the Fourier coefficients of (u, q, φ).
pub fn mixed_mode_matrix(
    radius: f64,
    m: &Materials,
    n: u32,
    omega: Complex64,
) -> Result<[[Complex64; 3]; 3]> {
    let v = mode_values(radius, m, n, omega)?;
    let c = symbol_prefactor(radius);
    let p = v.j_out + I * v.dj_out;
    let one = Complex64::new(1.0, 0.0);
    Ok([
        [c * v.k0 * v.dh_out * p, -(c * m.eps[0] * v.h_out * p), ZERO],
        [-one, ZERO, c * v.h_in * v.j_in],
        [ZERO, -one, c * (v.k1 / m.eps[1]) * v.h_in * v.dj_in],
    ])
}

/// Determinant of a 2×2 complex matrix together with the magnitude of its
/// largest product term (the natural scale for relative defects).
pub fn det2x2(a: &[[Complex64; 2]; 2]) -> (Complex64, f64) {
    let t1 = a[0][0] * a[1][1];
    let t2 = a[0][1] * a[1][0];
    (t1 - t2, t1.norm().max(t2.norm()))
}

/// Determinant of a 3×3 complex matrix together with the magnitude of its
/// largest of the six signed product terms.
pub fn det3x3(a: &[[Complex64; 3]; 3]) -> (Complex64, f64) {
    let terms = [
        a[0][0] * a[1][1] * a[2][2],
        a[0][1] * a[1][2] * a[2][0],
        a[0][2] * a[1][0] * a[2][1],
        a[0][2] * a[1][1] * a[2][0],
        a[0][0] * a[1][2] * a[2][1],
        a[0][1] * a[1][0] * a[2][2],
    ];
    let det = terms[0] + terms[1] + terms[2] - terms[3] - terms[4] - terms[5];
    let scale = terms.iter().map(|t| t.norm()).fold(0.0f64, f64::max);
    (det, scale)
}

/// Relative defects of the determinant factorizations at one (mode, ω) pair.
///
/// * `bm`: | det A₂ − (iπa/2)² · fict · trans | relative to the 2×2 term
///   scale, where A₂ is the Burton–Miller mode matrix;
/// * `mixed`: | det A₃ − (iπa/2)² · fict · trans / ε₁ | relative to the 3×3
///   term scale;
/// * `cross`: | ε₁ · det A₃ − det A₂ | on the common scale — the statement
///   that the two formulations have identical eigenvalue divisors.
#[derive(Clone, Copy, Debug)]
pub struct FactorizationDefects {
    pub bm: f64,
    pub mixed: f64,
    pub cross: f64,
}

impl FactorizationDefects {
    /// Largest of the three defects.
    pub fn max(&self) -> f64 {
        self.bm.max(self.mixed).max(self.cross)
    }
}

/// Evaluate both mode matrices at (n, ω), take their determinants directly,
/// and compare against the factored closed forms.
pub fn factorization_defects(
    radius: f64,
    m: &Materials,
    n: u32,
    omega: Complex64,
) -> Result<FactorizationDefects> {
    let a2 = bm_mode_matrix(radius, m, n, omega)?;
    let a3 = mixed_mode_matrix(radius, m, n, omega)?;
    let trans = resonance_determinant(radius, m, n, omega)?;
    let fict = fictitious_determinant(radius, m, n, omega)?;
    let c2 = symbol_prefactor(radius) * symbol_prefactor(radius);

    let (d2, s2) = det2x2(&a2);
    let (d3, s3) = det3x3(&a3);
    let tiny = f64::MIN_POSITIVE;

    let bm = (d2 - c2 * fict * trans).norm() / s2.max(tiny);
    let mixed = (d3 - c2 * fict * trans / m.eps[1]).norm() / s3.max(tiny);
    let cross = (m.eps[1] * d3 - d2).norm() / s2.max(m.eps[1] * s3).max(tiny);
    Ok(FactorizationDefects { bm, mixed, cross })
}

// ---------------------------------------------------------------------------
// Winding-number root finder
// ---------------------------------------------------------------------------

/// Search configuration for [`find_eigenvalues`].
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Circle radius a > 0.
    pub radius: f64,
    /// Exterior/interior material pair.
    pub materials: Materials,
    /// Closed rectangle of the complex frequency plane to search.
    pub window: Window,
    /// Highest Fourier mode to scan; `None` derives it from the window
    /// (largest |k·a| on the window plus a safety band of 10 orders, enough
    /// for every determinant zero whose mode can reach into the window).
    pub max_mode: Option<u32>,
}

impl OracleConfig {
    pub fn new(radius: f64, materials: Materials, window: Window) -> OracleConfig {
        OracleConfig { radius, materials, window, max_mode: None }
    }

    /// The mode cutoff actually used by [`find_eigenvalues`].
    pub fn resolved_max_mode(&self) -> Result<u32> {
        if let Some(n) = self.max_mode {
            return Ok(n);
        }
        let kmax = (0..2)
            .map(|j| (self.materials.eps[j] * self.materials.mu[j]).sqrt())
            .fold(0.0f64, f64::max);
        let reach = self.window.max_abs() * kmax * self.radius;
        if !reach.is_finite() || reach > 180.0 {
            return Err(Error::InvalidConfig(format!(
                "window reaches |k a| = {reach:.1}, beyond the supported cylinder-function \
                 orders; reduce the window or radius"
            )));
        }
        Ok(reach.ceil() as u32 + 10)
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "circle radius must be positive and finite, got {}",
                self.radius
            )));
        }
        self.materials.validate()?;
        // Re-run the window invariants: the fields are public and may have
        // been edited after construction.
        Window::new(
            self.window.re_min,
            self.window.re_max,
            self.window.im_min,
            self.window.im_max,
        )?;
        Ok(())
    }
}

/// Total phase turns of `f` counterclockwise around the window boundary,
/// via adaptive phase marching: each edge is bisected until consecutive
/// samples differ in argument by less than π/2, which pins the continuous
/// branch of arg f. Fails if `f` (numerically) vanishes on the boundary or
/// the refinement does not settle.
fn winding_number<F>(f: &F, w: &Window) -> Result<i32>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let corners = w.corners();
    let mut total = 0.0;
    let mut vals = [ZERO; 4];
    for (i, &c) in corners.iter().enumerate() {
        vals[i] = checked_eval(f, c)?;
    }
    for i in 0..4 {
        let j = (i + 1) % 4;
        total += edge_phase(f, corners[i], corners[j], vals[i], vals[j], 0)?;
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.1 {
        return Err(Error::NonConvergence(format!(
            "contour phase count {turns:.3} is not close to an integer"
        )));
    }
    Ok(rounded as i32)
}

/// Evaluate `f`, rejecting values that would break phase tracking.
fn checked_eval<F>(f: &F, z: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let v = f(z)?;
    if !v.re.is_finite() || !v.im.is_finite() || v.norm_sqr() == 0.0 {
        return Err(Error::NonConvergence(format!(
            "function vanishes or is not finite on the search contour at {z}"
        )));
    }
    Ok(v)
}

fn edge_phase<F>(
    f: &F,
    z0: Complex64,
    z1: Complex64,
    v0: Complex64,
    v1: Complex64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if depth > 48 {
        return Err(Error::NonConvergence(
            "phase marching did not settle (zero too close to the search contour)".into(),
        ));
    }
    let zm = 0.5 * (z0 + z1);
    let vm = checked_eval(f, zm)?;
    let d0 = (vm / v0).arg();
    let d1 = (v1 / vm).arg();
    if d0.abs() < 0.45 * PI && d1.abs() < 0.45 * PI {
        return Ok(d0 + d1);
    }
    Ok(edge_phase(f, z0, zm, v0, vm, depth + 1)? + edge_phase(f, zm, z1, vm, v1, depth + 1)?)
}

/// Secant iteration from `start`; `scale` bounds a reasonable step. Returns
/// `None` when the iteration leaves the function's domain, stalls, or fails
/// to meet the tolerance within the iteration budget.
fn secant_polish<F>(f: &F, start: Complex64, scale: f64) -> Option<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut z0 = start;
    let mut z1 = start + scale * 1e-4 * Complex64::new(0.9396926, 0.3420201);
    let mut f0 = f(z0).ok()?;
    let mut f1 = f(z1).ok()?;
    for _ in 0..64 {
        let df = f1 - f0;
        if df.norm_sqr() == 0.0 {
            return None;
        }
        let mut step = -f1 * (z1 - z0) / df;
        let cap = 2.0 * scale;
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        let z2 = z1 + step;
        if step.norm() <= 3e-14 * (1.0 + z2.norm()) {
            return Some(z2);
        }
        let f2 = f(z2).ok()?;
        z0 = z1;
        f0 = f1;
        z1 = z2;
        f1 = f2;
    }
    None
}

fn split_window(w: &Window, horizontal: bool, frac: f64) -> (Window, Window) {
    if horizontal {
        let xm = w.re_min + frac * (w.re_max - w.re_min);
        (
            Window { re_max: xm, ..*w },
            Window { re_min: xm, ..*w },
        )
    } else {
        let ym = w.im_min + frac * (w.im_max - w.im_min);
        (
            Window { im_max: ym, ..*w },
            Window { im_min: ym, ..*w },
        )
    }
}

fn descend<F>(f: &F, w: &Window, wind: i32, depth: u32, out: &mut Vec<Complex64>) -> Result<()>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if wind == 0 {
        return Ok(());
    }
    if wind < 0 {
        return Err(Error::NonConvergence(format!(
            "negative winding number {wind}: the function has a pole in the window, which \
             the determinant factors cannot"
        )));
    }
    let width = w.re_max - w.re_min;
    let height = w.im_max - w.im_min;
    let diag = width.hypot(height);

    if wind == 1 {
        if let Some(z) = secant_polish(f, w.center(), diag) {
            if w.contains(z, 1e-9) {
                out.push(z);
                return Ok(());
            }
        }
    }
    if width.max(height) < 1e-10 || depth > 60 {
        // Cluster (or pathologically stubborn basin): report the center with
        // the correct total count; callers deduplicate at a coarser scale.
        for _ in 0..wind {
            out.push(w.center());
        }
        return Ok(());
    }
    let horizontal = width >= height;
    for &frac in &[0.5, 0.47, 0.53, 0.41, 0.59] {
        let (wa, wb) = split_window(w, horizontal, frac);
        let (ra, rb) = (winding_number(f, &wa), winding_number(f, &wb));
        if let (Ok(na), Ok(nb)) = (ra, rb) {
            if na + nb == wind {
                descend(f, &wa, na, depth + 1, out)?;
                descend(f, &wb, nb, depth + 1, out)?;
                return Ok(());
            }
        }
    }
    Err(Error::NonConvergence(
        "no subdivision line avoided the zeros of the function".into(),
    ))
}

/// All zeros of `f` in the window (counted with multiplicity, deduplicated
/// at 1e-9), by recursive winding-number subdivision plus secant polish.
///
/// If a zero sits exactly on the window boundary the contour integral is
/// ill-defined; the window is then inflated outward by a few parts in 10⁶
/// and the search retried, so such a zero is reported as inside. `f` must be
/// analytic (pole-free) on the window.
pub fn zeros_in_window<F>(f: &F, w: &Window) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut last_err = None;
    for &infl in &[0.0, 1e-6, 2.9e-6, 6.1e-6] {
        let wi = if infl == 0.0 { *w } else { w.inflated(infl) };
        match winding_number(f, &wi) {
            Ok(wind) => {
                let mut out = Vec::new();
                descend(f, &wi, wind, 0, &mut out)?;
                out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
                out.dedup_by(|a, b| (*a - *b).norm() <= 1e-9);
                return Ok(out);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NonConvergence("empty inflation schedule".into())))
}

/// Locate every determinant zero of both factors over all Fourier modes in
/// the window, sorted by (Re ω, Im ω, mode).
///
/// Mode-completeness: for |n| beyond `ceil(max |k a|) + 10` neither factor
/// can vanish in the window (large-order cylinder functions are zero-free
/// until their argument reaches the order's turning point), so scanning
/// modes up to [`OracleConfig::resolved_max_mode`] is exhaustive.
pub fn find_eigenvalues(cfg: &OracleConfig) -> Result<Vec<OracleEig>> {
    cfg.validate()?;
    let nmax = cfg.resolved_max_mode()?;
    let mut eigs: Vec<OracleEig> = Vec::new();
    for n in 0..=nmax {
        for kind in [EigKind::Resonance, EigKind::Fictitious] {
            let f = |omega: Complex64| -> Result<Complex64> {
                match kind {
                    EigKind::Resonance => {
                        resonance_determinant(cfg.radius, &cfg.materials, n, omega)
                    }
                    EigKind::Fictitious => {
                        fictitious_determinant(cfg.radius, &cfg.materials, n, omega)
                    }
                }
            };
            for z in zeros_in_window(&f, &cfg.window)? {
                if cfg.window.contains(z, 1e-7) {
                    eigs.push(OracleEig {
                        omega: z,
                        mode: n,
                        multiplicity: if n == 0 { 1 } else { 2 },
                        kind,
                    });
                }
            }
        }
    }
    eigs.sort_by(|a, b| {
        (a.omega.re, a.omega.im, a.mode)
            .partial_cmp(&(b.omega.re, b.omega.im, b.mode))
            .unwrap()
    });
    Ok(eigs)
}

// ---------------------------------------------------------------------------
// Separation-of-variables (Mie) forward solution
// ---------------------------------------------------------------------------

/// Series solution of plane-wave scattering by the penetrable circle.
///
/// The incident wave `e^{i k₀ d·x}` with direction `d = (cos θ_d, sin θ_d)`
/// expands in Bessel modes; per mode a 2×2 system matches the total field
/// and the weighted normal derivative `(1/ε) ∂u/∂r` across `r = a`, giving
/// the scattered (Hankel) and interior (Bessel) coefficients.
#[derive(Clone, Debug)]
pub struct MieSolution {
    radius: f64,
    k0: Complex64,
    k1: Complex64,
    eps: [f64; 2],
    direction: Vec2,
    n_max: i32,
    /// Scattered coefficients a_n, index n + n_max.
    a: Vec<Complex64>,
    /// Interior coefficients b_n, index n + n_max.
    b: Vec<Complex64>,
    /// Incident coefficients c_n = i^n e^{−i n θ_d}, index n + n_max.
    c: Vec<Complex64>,
}

/// Solve the plane-wave transmission problem on the circle of radius `a` at
/// real frequency ω > 0 with incidence angle `theta_inc`.
pub fn mie_solve(radius: f64, m: &Materials, omega: f64, theta_inc: f64) -> Result<MieSolution> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "circle radius must be positive and finite, got {radius}"
        )));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "frequency must be positive and finite, got {omega}"
        )));
    }
    m.validate()?;
    let (k0, k1) = m.wavenumbers(Complex64::new(omega, 0.0));
    let x = k0.re.max(k1.re) * radius;
    // Past the turning point the coefficients decay super-exponentially; ten
    // orders of cube-root channel width plus a flat margin is far beyond
    // machine precision.
    let n_max_f = x + 10.0 * x.cbrt() + 15.0;
    if n_max_f > 180.0 {
        return Err(Error::InvalidConfig(format!(
            "k·a = {x:.1} needs series order {n_max_f:.0}, beyond the supported \
             cylinder-function range"
        )));
    }
    let n_max = n_max_f.ceil() as i32;

    let z0 = k0 * radius;
    let z1 = k1 * radius;
    let len = (2 * n_max + 1) as usize;
    let mut a = vec![ZERO; len];
    let mut b = vec![ZERO; len];
    let mut c = vec![ZERO; len];
    for n in -n_max..=n_max {
        let jn0 = cyl(CylKind::J, n, z0)?;
        let djn0 = cyl_deriv(CylKind::J, n, z0)?;
        let hn0 = cyl(CylKind::H1, n, z0)?;
        let dhn0 = cyl_deriv(CylKind::H1, n, z0)?;
        let jn1 = cyl(CylKind::J, n, z1)?;
        let djn1 = cyl_deriv(CylKind::J, n, z1)?;

        let cn = Complex64::from_polar(1.0, f64::from(n) * (0.5 * PI - theta_inc));

        // [ H_n(k0 a)            −J_n(k1 a)          ] [a_n]   −c_n [ J_n(k0 a)           ]
        // [ (k0/ε0) H'_n(k0 a)   −(k1/ε1) J'_n(k1 a) ] [b_n] =      [ (k0/ε0) J'_n(k0 a)  ]
        let m00 = hn0;
        let m01 = -jn1;
        let m10 = (k0 / m.eps[0]) * dhn0;
        let m11 = -(k1 / m.eps[1]) * djn1;
        let r0 = -cn * jn0;
        let r1 = -cn * (k0 / m.eps[0]) * djn0;
        let det = m00 * m11 - m01 * m10;
        let scale = (m00 * m11).norm().max((m01 * m10).norm());
        if det.norm() <= 1e-14 * scale {
            return Err(Error::SingularSystem(format!(
                "mode-{n} transmission match is singular at omega = {omega}"
            )));
        }
        let idx = (n + n_max) as usize;
        a[idx] = (r0 * m11 - m01 * r1) / det;
        b[idx] = (m00 * r1 - r0 * m10) / det;
        c[idx] = cn;
    }
    Ok(MieSolution {
        radius,
        k0,
        k1,
        eps: m.eps,
        direction: Vec2::new(theta_inc.cos(), theta_inc.sin()),
        n_max,
        a,
        b,
        c,
    })
}

impl MieSolution {
    /// Series truncation order.
    pub fn n_max(&self) -> i32 {
        self.n_max
    }

    fn coef(&self, v: &[Complex64], n: i32) -> Complex64 {
        if n.abs() > self.n_max {
            ZERO
        } else {
            v[(n + self.n_max) as usize]
        }
    }

    /// Scattered-field (outgoing Hankel) coefficient a_n.
    pub fn scattered_coefficient(&self, n: i32) -> Complex64 {
        self.coef(&self.a, n)
    }

    /// Interior (Bessel) coefficient b_n.
    pub fn interior_coefficient(&self, n: i32) -> Complex64 {
        self.coef(&self.b, n)
    }

    /// Incident value e^{i k₀ d·p}.
    pub fn incident(&self, p: Vec2) -> Complex64 {
        (I * self.k0 * self.direction.dot(p)).exp()
    }

    /// Total field at any point (exterior series for r ≥ a, interior series
    /// for r < a; both are valid up to the boundary itself).
    pub fn field(&self, p: Vec2) -> Result<Complex64> {
        let r = p.norm();
        let theta = p.y.atan2(p.x);
        let e = Complex64::from_polar(1.0, theta);
        let mut phase = e.powi(-self.n_max);
        let mut total = ZERO;
        if r >= self.radius {
            for n in -self.n_max..=self.n_max {
                let hn = cyl(CylKind::H1, n, self.k0 * r)?;
                total += self.coef(&self.a, n) * hn * phase;
                phase *= e;
            }
            Ok(total + self.incident(p))
        } else {
            for n in -self.n_max..=self.n_max {
                let jn = cyl(CylKind::J, n, self.k1 * r)?;
                total += self.coef(&self.b, n) * jn * phase;
                phase *= e;
            }
            Ok(total)
        }
    }

    /// Boundary traces (u, q) at the nodes of a discretized circle, where
    /// u is the total field and q = (1/ε₀) ∂u/∂r from the exterior side.
    ///
    /// Fails unless every node lies on the circle this solution was built
    /// for.
    pub fn boundary_traces(&self, b: &Boundary) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        // Radial factors per mode, shared by all nodes.
        let len = (2 * self.n_max + 1) as usize;
        let mut u_coef = vec![ZERO; len];
        let mut q_coef = vec![ZERO; len];
        let z0 = self.k0 * self.radius;
        for n in -self.n_max..=self.n_max {
            let idx = (n + self.n_max) as usize;
            let jn0 = cyl(CylKind::J, n, z0)?;
            let djn0 = cyl_deriv(CylKind::J, n, z0)?;
            let hn0 = cyl(CylKind::H1, n, z0)?;
            let dhn0 = cyl_deriv(CylKind::H1, n, z0)?;
            let cn = self.coef(&self.c, n);
            let an = self.coef(&self.a, n);
            u_coef[idx] = cn * jn0 + an * hn0;
            q_coef[idx] = (self.k0 / self.eps[0]) * (cn * djn0 + an * dhn0);
        }
        let mut u = Vec::with_capacity(b.len());
        let mut q = Vec::with_capacity(b.len());
        for &p in &b.node {
            let r = p.norm();
            if (r - self.radius).abs() > 1e-12 * self.radius.max(1.0) {
                return Err(Error::InvalidConfig(format!(
                    "boundary node at radius {r} is not on the circle of radius {}",
                    self.radius
                )));
            }
            let e = Complex64::from_polar(1.0, p.y.atan2(p.x));
            let mut phase = e.powi(-self.n_max);
            let mut us = ZERO;
            let mut qs = ZERO;
            for idx in 0..len {
                us += u_coef[idx] * phase;
                qs += q_coef[idx] * phase;
                phase *= e;
            }
            u.push(us);
            q.push(qs);
        }
        Ok((u, q))
    }

    /// Worst relative mismatch of the two transmission conditions across all
    /// modes: (u continuity, weighted-flux continuity). Both should sit at
    /// rounding level; this is a self-check of the per-mode solves.
    pub fn transmission_mismatch(&self) -> Result<(f64, f64)> {
        let z0 = self.k0 * self.radius;
        let z1 = self.k1 * self.radius;
        let mut worst_u = 0.0f64;
        let mut worst_q = 0.0f64;
        for n in -self.n_max..=self.n_max {
            let cn = self.coef(&self.c, n);
            let an = self.coef(&self.a, n);
            let bn = self.coef(&self.b, n);
            let outer_u = cn * cyl(CylKind::J, n, z0)? + an * cyl(CylKind::H1, n, z0)?;
            let inner_u = bn * cyl(CylKind::J, n, z1)?;
            let outer_q = (self.k0 / self.eps[0])
                * (cn * cyl_deriv(CylKind::J, n, z0)? + an * cyl_deriv(CylKind::H1, n, z0)?);
            let inner_q = (self.k1 / self.eps[1]) * bn * cyl_deriv(CylKind::J, n, z1)?;
            let su = outer_u.norm().max(inner_u.norm()).max(1e-300);
            let sq = outer_q.norm().max(inner_q.norm()).max(1e-300);
            if su > 1e-13 {
                worst_u = worst_u.max((outer_u - inner_u).norm() / su);
            }
            if sq > 1e-13 {
                worst_q = worst_q.max((outer_q - inner_q).norm() / sq);
            }
        }
        Ok((worst_u, worst_q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Circle;
    use crate::systems::{self, Formulation, PlaneWave};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn default_window() -> Window {
        Window::new(0.5, 3.0, -1.0, 0.0).unwrap()
    }

    fn parse_reference() -> Vec<OracleEig> {
        let txt = include_str!("../tests/data/circle_eigs_reference.csv");
        txt.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                assert_eq!(f.len(), 5, "bad reference row: {l}");
                OracleEig {
                    omega: Complex64::new(f[0].parse().unwrap(), f[1].parse().unwrap()),
                    mode: f[2].parse().unwrap(),
                    multiplicity: f[3].parse().unwrap(),
                    kind: EigKind::from_label(f[4]).unwrap(),
                }
            })
            .collect()
    }

    #[test]
    fn determinant_factorizations_hold_at_random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst = FactorizationDefects { bm: 0.0, mixed: 0.0, cross: 0.0 };
        for _ in 0..100 {
            let radius = rng.gen_range(0.6..1.8);
            let m = Materials {
                eps: [rng.gen_range(0.5..2.0), rng.gen_range(2.0..9.0)],
                mu: [rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0)],
            };
            let n = rng.gen_range(0..=20u32);
            let omega = Complex64::new(rng.gen_range(0.3..3.5), rng.gen_range(-1.2..0.3));
            let d = factorization_defects(radius, &m, n, omega).unwrap();
            worst.bm = worst.bm.max(d.bm);
            worst.mixed = worst.mixed.max(d.mixed);
            worst.cross = worst.cross.max(d.cross);
        }
        assert!(
            worst.max() <= 1e-12,
            "factorization defects too large: bm {:.2e}, mixed {:.2e}, cross {:.2e}",
            worst.bm,
            worst.mixed,
            worst.cross
        );
    }

    #[test]
    fn root_finder_reproduces_frozen_reference() {
        let cfg = OracleConfig::new(1.0, Materials::default(), default_window());
        assert_eq!(cfg.resolved_max_mode().unwrap(), 17);

        let found = find_eigenvalues(&cfg).unwrap();
        let expected = parse_reference();
        assert_eq!(
            found.len(),
            expected.len(),
            "eigenvalue count mismatch: found {:?}",
            found
        );

        let mut used = vec![false; found.len()];
        for e in &expected {
            let (best, dist) = found
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g.omega - e.omega).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(
                dist <= 1e-10,
                "no match within 1e-10 for {:?}; best distance {dist:.2e}",
                e
            );
            assert!(!used[best], "two reference rows matched one computed zero");
            used[best] = true;
            let g = &found[best];
            assert_eq!(g.mode, e.mode, "mode mismatch at {:?}", e.omega);
            assert_eq!(g.multiplicity, e.multiplicity);
            assert_eq!(g.kind, e.kind, "kind mismatch at {:?}", e.omega);
        }
    }

    #[test]
    fn reported_roots_null_their_factor() {
        let cfg = OracleConfig::new(1.0, Materials::default(), default_window());
        for e in find_eigenvalues(&cfg).unwrap() {
            let f = |z: Complex64| match e.kind {
                EigKind::Resonance => resonance_determinant(1.0, &cfg.materials, e.mode, z),
                EigKind::Fictitious => fictitious_determinant(1.0, &cfg.materials, e.mode, z),
            };
            let at_root = f(e.omega).unwrap().norm();
            let nearby = f(e.omega + Complex64::new(0.04, 0.03)).unwrap().norm();
            assert!(
                at_root <= 1e-8 * nearby,
                "factor not small at reported root {:?}: |f| = {at_root:.2e} vs nearby {nearby:.2e}",
                e
            );
        }
    }

    #[test]
    fn mie_solution_balances_transmission_conditions() {
        let exotic = Materials { eps: [1.3, 3.2], mu: [1.1, 0.7] };
        for m in [Materials::default(), exotic] {
            let mie = mie_solve(1.0, &m, 2.0, 0.3).unwrap();
            let (du, dq) = mie.transmission_mismatch().unwrap();
            assert!(du <= 1e-12, "u-continuity defect {du:.2e}");
            assert!(dq <= 1e-12, "flux-continuity defect {dq:.2e}");
            // Coefficients must have decayed to nothing at the truncation order.
            let tail = mie.scattered_coefficient(mie.n_max()).norm();
            assert!(tail <= 1e-20, "scattered coefficient tail {tail:.2e}");
        }
    }

    #[test]
    fn mie_with_matched_materials_is_the_incident_wave() {
        let m = Materials { eps: [1.0, 1.0], mu: [1.0, 1.0] };
        let mie = mie_solve(1.0, &m, 2.0, 0.7).unwrap();
        for n in -mie.n_max()..=mie.n_max() {
            assert!(mie.scattered_coefficient(n).norm() <= 1e-13);
        }
        for p in [Vec2::new(1.9, 0.4), Vec2::new(-0.3, 0.1), Vec2::new(0.0, -2.5)] {
            let u = mie.field(p).unwrap();
            assert!((u - mie.incident(p)).norm() <= 1e-12);
        }
    }

    #[test]
    fn nystrom_forward_solves_match_the_series_solution() {
        // Second material set has non-unit exterior parameters, so the ε/μ
        // weights in every trace convention are exercised, not just ε₀ = 1.
        let cases = [
            (Materials::default(), 128usize, 1e-9),
            (Materials { eps: [1.3, 3.2], mu: [1.1, 0.7] }, 96usize, 1e-8),
        ];
        let omega = 2.0;
        let wave = PlaneWave::from_angle(0.3);
        let targets = [
            Vec2::new(1.7, 0.4),
            Vec2::new(-0.4, 2.2),
            Vec2::new(0.3, 0.2),
            Vec2::new(-0.25, 0.35),
        ];

        for (m, nodes, tol) in cases {
            let b = Boundary::discretize(&Circle::new(1.0).unwrap(), nodes).unwrap();
            let mie = mie_solve(1.0, &m, omega, 0.3).unwrap();
            let (u_ref, q_ref) = mie.boundary_traces(&b).unwrap();
            let u_scale = u_ref.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            let q_scale = q_ref.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            let field_ref: Vec<Complex64> =
                targets.iter().map(|&p| mie.field(p).unwrap()).collect();

            for f in [Formulation::BurtonMiller, Formulation::Mixed] {
                let sol = systems::solve_scattering(&b, &m, f, omega, &wave).unwrap();
                let du = sol
                    .u
                    .iter()
                    .zip(&u_ref)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0f64, f64::max);
                let dq = sol
                    .q
                    .iter()
                    .zip(&q_ref)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0f64, f64::max);
                assert!(
                    du <= tol * u_scale,
                    "{}: boundary trace u differs from series by {du:.2e}",
                    f.label()
                );
                assert!(
                    dq <= tol * q_scale,
                    "{}: boundary trace q differs from series by {dq:.2e}",
                    f.label()
                );

                let field = systems::eval_field(&b, &m, &sol, &wave, &targets).unwrap();
                for (i, (got, want)) in field.iter().zip(&field_ref).enumerate() {
                    assert!(
                        (got - want).norm() <= tol,
                        "{}: field target {i} differs by {:.2e}",
                        f.label(),
                        (got - want).norm()
                    );
                }
            }
        }
    }

    #[test]
    fn invalid_oracle_inputs_are_rejected() {
        let w = default_window();
        assert!(mie_solve(0.0, &Materials::default(), 2.0, 0.0).is_err());
        assert!(mie_solve(1.0, &Materials::default(), -1.0, 0.0).is_err());
        let cfg = OracleConfig::new(-1.0, Materials::default(), w);
        assert!(find_eigenvalues(&cfg).is_err());
        let mut cfg = OracleConfig::new(1.0, Materials::default(), w);
        cfg.window.re_max = cfg.window.re_min;
        assert!(find_eigenvalues(&cfg).is_err());
    }
}
