//! Moment-based contour-integral eigensolver for nonlinear eigenproblems.
//!
//! Given a matrix family T(z), analytic in z on a rectangle of the complex
//! plane, the solver finds every z in the rectangle where T(z) is singular,
//! together with eigenvectors. It integrates probed resolvent moments
//!
//! ```text
//! S_p = (1/2πi) ∮ ẑ^p T(z)⁻¹ V dz,      ẑ = (z − c)/ρ,   p = 0 … 2K−1
//! ```
//!
//! over the rectangle boundary (Gauss–Legendre panels per side), stacks them
//! into a block-Hankel pencil, and reads the eigenvalues inside the contour
//! off a small dense eigenproblem; eigenvectors come from the range basis of
//! the pencil. Every candidate is verified against a fresh evaluation of
//! T(λ) and discarded unless the relative residual is small, so noise modes
//! of the rank decision never survive.
//!
//! Several families can share one contour sweep: the family callback returns
//! a vector of matrices per node (the *members*, e.g. two formulations of
//! the same physical problem that share expensive assembly), and the solver
//! keeps independent moments per member.
//!
//! [`contour_eigs`] handles one rectangle, retrying on quadrature nodes that
//! land on an eigenvalue by inflating the rectangle slightly. [`tiled_eigs`]
//! covers a large window with a grid of overlapping subrectangles, merging
//! and deduplicating the per-tile results — keeping per-tile contours small
//! is what keeps the moment problem well conditioned and the rank decisions
//! local.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, CMat, LuFactors};
use crate::window::Window;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Matrix family callback: full set of member matrices T_m(z) at one point.
pub type Family<'a> = dyn FnMut(Complex64) -> Result<Vec<CMat>> + 'a;

/// Parameters of a single-rectangle contour solve.
#[derive(Clone, Debug)]
pub struct ContourSpec {
    /// Gauss–Legendre nodes per rectangle side (4 sides total).
    pub nodes_per_side: usize,
    /// Number K of Hankel block rows; moments of order 0 … 2K−1 are formed,
    /// so up to K·probe_cols eigenvalues can be resolved per rectangle.
    pub moments: usize,
    /// Columns L of the random probe matrix.
    pub probe_cols: usize,
    /// Relative singular-value cutoff for the rank decision of the moment
    /// Hankel matrix.
    pub svd_rel_tol: f64,
    /// Keep a candidate λ only if ‖T(λ)x‖ / (‖T(λ)‖_F ‖x‖) is below this.
    pub residual_tol: f64,
    /// Seed of the probe generator (results are deterministic in it).
    pub seed: u64,
    /// How many times to retry with an inflated rectangle when a quadrature
    /// node lands on (numerically) singular T.
    pub max_retries: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            nodes_per_side: 32,
            moments: 4,
            probe_cols: 8,
            svd_rel_tol: 1e-12,
            residual_tol: 1e-8,
            seed: 0x00C0FFEE,
            max_retries: 3,
        }
    }
}

impl ContourSpec {
    fn validate(&self) -> Result<()> {
        if self.nodes_per_side < 4 {
            return Err(Error::InvalidConfig(format!(
                "nodes_per_side must be at least 4, got {}",
                self.nodes_per_side
            )));
        }
        if self.moments == 0 || self.probe_cols == 0 {
            return Err(Error::InvalidConfig(
                "moments and probe_cols must be positive".into(),
            ));
        }
        if !(self.svd_rel_tol > 0.0) || !(self.residual_tol > 0.0) {
            return Err(Error::InvalidConfig(
                "svd_rel_tol and residual_tol must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// One eigenvalue found by the contour solver.
#[derive(Clone, Copy, Debug)]
pub struct NepEig {
    /// Location of the singularity of the family member.
    pub lambda: Complex64,
    /// Verified relative residual ‖T(λ)x‖ / (‖T(λ)‖_F ‖x‖).
    pub residual: f64,
}

/// Nodes and complex weights turning `Σ w_j f(z_j)` into
/// `(1/2πi) ∮ f(z) dz` over the rectangle boundary, traversed
/// counterclockwise with `n_per_side` Gauss–Legendre nodes per side.
pub fn rectangle_rule(w: &Window, n_per_side: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let (xs, ws) = gauss_legendre(n_per_side);
    let corners = w.corners();
    let inv_2pi_i = 1.0 / (Complex64::new(0.0, 2.0 * std::f64::consts::PI));
    let mut nodes = Vec::with_capacity(4 * n_per_side);
    let mut weights = Vec::with_capacity(4 * n_per_side);
    for s in 0..4 {
        let a = corners[s];
        let b = corners[(s + 1) % 4];
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (&x, &wt) in xs.iter().zip(&ws) {
            nodes.push(mid + half * x);
            weights.push(inv_2pi_i * half * wt);
        }
    }
    (nodes, weights)
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_{n−1} by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n, p0 = P_{n−1}. (For n = 1: p1 = x, p0 = 1.)
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        xs[i] = -x;
        xs[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Per-member accumulation state for one contour sweep.
struct MemberMoments {
    dim: usize,
    probe: CMat,
    /// S_0 … S_{2K−1}, each dim × L.
    moments: Vec<CMat>,
}

/// Find all eigenvalues of every family member inside `window`.
///
/// Returns one list per member, each sorted by (Re λ, Im λ). When a
/// quadrature node hits an eigenvalue (factorization numerically singular),
/// the rectangle is inflated by 1% steps about its center and the sweep
/// rerun, up to `spec.max_retries` times; the returned eigenvalues are the
/// verified singular points strictly inside the rectangle actually used.
pub fn contour_eigs(
    family: &mut Family<'_>,
    window: &Window,
    spec: &ContourSpec,
) -> Result<Vec<Vec<NepEig>>> {
    spec.validate()?;
    Window::new(window.re_min, window.re_max, window.im_min, window.im_max)?;
    let mut last_err = None;
    for retry in 0..=spec.max_retries {
        let used = if retry == 0 {
            *window
        } else {
            window.inflated(0.01 * retry as f64)
        };
        match sweep_contour(family, &used, spec) {
            Err(Error::ContourHit { node }) => {
                last_err = Some(Error::ContourHit { node });
            }
            other => return other,
        }
    }
    Err(last_err.unwrap())
}

fn sweep_contour(
    family: &mut Family<'_>,
    w: &Window,
    spec: &ContourSpec,
) -> Result<Vec<Vec<NepEig>>> {
    let (nodes, weights) = rectangle_rule(w, spec.nodes_per_side);
    let center = w.center();
    let rho = w.half_width().max(w.half_height());
    let n_moments = 2 * spec.moments;

    let mut members: Vec<MemberMoments> = Vec::new();
    for (j, (&z, &wt)) in nodes.iter().zip(&weights).enumerate() {
        let ts = family(z)?;
        if j == 0 {
            for (m, t) in ts.iter().enumerate() {
                if t.nrows() != t.ncols() {
                    return Err(Error::InvalidConfig(format!(
                        "family member matrix is {}x{}, expected square",
                        t.nrows(),
                        t.ncols()
                    )));
                }
                // Seed per member, so a member's probes (and thus its exact
                // output bytes) do not depend on which other members share
                // the sweep.
                let mut rng = ChaCha8Rng::seed_from_u64(
                    spec.seed.wrapping_add(1_000_003u64.wrapping_mul(m as u64)),
                );
                let dim = t.nrows();
                let probe = CMat::from_fn(dim, spec.probe_cols, |_, _| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                members.push(MemberMoments {
                    dim,
                    probe,
                    moments: vec![CMat::zeros(dim, spec.probe_cols); n_moments],
                });
            }
        } else if ts.len() != members.len() {
            return Err(Error::InvalidConfig(format!(
                "family returned {} members at node {j}, expected {}",
                ts.len(),
                members.len()
            )));
        }

        let zt = (z - center) / rho;
        for (m, t) in ts.iter().enumerate() {
            let mm = &mut members[m];
            if t.nrows() != mm.dim || t.ncols() != mm.dim {
                return Err(Error::InvalidConfig(format!(
                    "family member {m} changed dimension at node {j}"
                )));
            }
            let lu = LuFactors::new(t);
            if lu.diag_ratio() < 1e-13 {
                return Err(Error::ContourHit { node: j });
            }
            let y = lu.solve_mat(&mm.probe);
            let mut zp = wt;
            for p in 0..n_moments {
                let s = &mut mm.moments[p];
                for col in 0..spec.probe_cols {
                    for row in 0..mm.dim {
                        s[(row, col)] += zp * y[(row, col)];
                    }
                }
                zp *= zt;
            }
        }
    }

    let mut out = Vec::with_capacity(members.len());
    for (m, mm) in members.iter().enumerate() {
        out.push(extract_member_eigs(family, m, mm, w, center, rho, spec)?);
    }
    Ok(out)
}

/// Hankel-pencil extraction and residual verification for one member.
fn extract_member_eigs(
    family: &mut Family<'_>,
    member: usize,
    mm: &MemberMoments,
    w: &Window,
    center: Complex64,
    rho: f64,
    spec: &ContourSpec,
) -> Result<Vec<NepEig>> {
    let k = spec.moments;
    let l = spec.probe_cols;
    let n = mm.dim;
    let h0 = CMat::from_fn(k * n, k * l, |i, j| {
        let (bi, ri) = (i / n, i % n);
        let (bj, cj) = (j / l, j % l);
        mm.moments[bi + bj][(ri, cj)]
    });
    let h1 = CMat::from_fn(k * n, k * l, |i, j| {
        let (bi, ri) = (i / n, i % n);
        let (bj, cj) = (j / l, j % l);
        mm.moments[bi + bj + 1][(ri, cj)]
    });

    let (u, sigma, v) = linalg::svd_parts(&h0)?;
    let smax = sigma.first().copied().unwrap_or(0.0);
    if smax <= f64::MIN_POSITIVE {
        return Ok(Vec::new());
    }
    let rank = sigma.iter().take_while(|&&s| s > spec.svd_rel_tol * smax).count();
    if rank == 0 {
        return Ok(Vec::new());
    }

    // Reduced pencil M = U₁ᴴ H₁ V₁ Σ₁⁻¹, similar to diag(ẑ_k) when the rank
    // decision matches the eigenvalue count enclosed by the contour.
    let v_scaled = CMat::from_fn(k * l, rank, |i, j| v[(i, j)] / sigma[j]);
    let h1v = &h1 * &v_scaled;
    let m_small = CMat::from_fn(rank, rank, |i, j| {
        let mut acc = ZERO;
        for r in 0..k * n {
            acc += u[(r, i)].conj() * h1v[(r, j)];
        }
        acc
    });
    let (vals, vecs) = linalg::eigen_parts(&m_small)?;

    let mut found = Vec::new();
    for (idx, &zt) in vals.iter().enumerate() {
        let lambda = center + rho * zt;
        if !w.contains(lambda, 0.0) {
            continue;
        }
        // Eigenvector: top block of U₁ y in the original coordinates.
        let mut x = vec![ZERO; n];
        let mut xnorm = 0.0;
        for row in 0..n {
            let mut acc = ZERO;
            for j in 0..rank {
                acc += u[(row, j)] * vecs[(j, idx)];
            }
            x[row] = acc;
            xnorm += acc.norm_sqr();
        }
        let xnorm = xnorm.sqrt();
        if xnorm <= f64::MIN_POSITIVE.sqrt() {
            continue;
        }
        let t = family(lambda)?
            .into_iter()
            .nth(member)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "family returned fewer than {} members at residual check",
                    member + 1
                ))
            })?;
        let tx = linalg::apply(&t, &x);
        let residual = linalg::vec_norm(&tx) / (linalg::frob_norm(&t) * xnorm);
        if residual <= spec.residual_tol {
            found.push(NepEig { lambda, residual });
        }
    }
    found.sort_by(|a, b| {
        (a.lambda.re, a.lambda.im)
            .partial_cmp(&(b.lambda.re, b.lambda.im))
            .unwrap()
    });
    Ok(found)
}

/// Parameters of a tiled sweep over a large window.
#[derive(Clone, Debug)]
pub struct TiledSpec {
    /// Per-tile contour parameters (per-tile seeds are derived from
    /// `contour.seed` and the tile index).
    pub contour: ContourSpec,
    /// Tile grid along the real axis.
    pub tiles_re: usize,
    /// Tile grid along the imaginary axis.
    pub tiles_im: usize,
    /// Relative inflation of each tile so neighbors overlap and boundary
    /// straddlers are seen by at least one tile strictly inside its contour.
    pub overlap: f64,
    /// Merge radius: eigenvalues of one member closer than this belong to
    /// the same cluster, which is either one eigenvalue reported by two
    /// overlapping tiles or a genuinely degenerate group; the cluster keeps
    /// as many entries as any single tile reported for it.
    pub dedup_tol: f64,
    /// Absolute margin for the final containment filter against the window.
    pub window_margin: f64,
}

impl Default for TiledSpec {
    fn default() -> Self {
        TiledSpec {
            contour: ContourSpec::default(),
            tiles_re: 8,
            tiles_im: 4,
            overlap: 0.005,
            dedup_tol: 1e-9,
            window_margin: 1e-7,
        }
    }
}

/// Sweep `window` with a grid of overlapping rectangular contours and merge
/// the per-tile eigenvalue lists of every family member.
///
/// Returns one deduplicated list per member, filtered to the window with
/// `window_margin` slack and sorted by (Re λ, Im λ). Tiles are processed in
/// row-major order with deterministic per-tile probe seeds, so the output is
/// reproducible bit for bit.
pub fn tiled_eigs(
    family: &mut Family<'_>,
    window: &Window,
    spec: &TiledSpec,
) -> Result<Vec<Vec<NepEig>>> {
    spec.contour.validate()?;
    if !(spec.overlap >= 0.0) || !(spec.dedup_tol > 0.0) || !(spec.window_margin >= 0.0) {
        return Err(Error::InvalidConfig(
            "overlap and window_margin must be nonnegative, dedup_tol positive".into(),
        ));
    }
    let tiles = window.tiles(spec.tiles_re, spec.tiles_im)?;
    let mut merged: Vec<Vec<(usize, NepEig)>> = Vec::new();
    for (idx, tile) in tiles.iter().enumerate() {
        let mut cs = spec.contour.clone();
        cs.seed = spec
            .contour
            .seed
            .wrapping_add((idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let inflated = tile.inflated(spec.overlap);
        let found = contour_eigs(family, &inflated, &cs)?;
        if merged.is_empty() {
            merged = vec![Vec::new(); found.len()];
        } else if found.len() != merged.len() {
            return Err(Error::InvalidConfig(format!(
                "family returned {} members on tile {idx}, expected {}",
                found.len(),
                merged.len()
            )));
        }
        for (m, list) in found.into_iter().enumerate() {
            merged[m].extend(list.into_iter().map(|e| (idx, e)));
        }
    }

    let mut out: Vec<Vec<NepEig>> = Vec::with_capacity(merged.len());
    for mut list in merged {
        list.retain(|(_, e)| window.contains(e.lambda, spec.window_margin));
        // Cluster candidates by proximity. Sorting can interleave unrelated
        // eigenvalues between near-duplicates, so clusters are grown by
        // pairwise comparison rather than adjacent-only merging.
        let mut clusters: Vec<Vec<(usize, NepEig)>> = Vec::new();
        for (tile, e) in list {
            match clusters.iter_mut().find(|c| {
                c.iter()
                    .any(|(_, kept)| (kept.lambda - e.lambda).norm() <= spec.dedup_tol)
            }) {
                Some(c) => c.push((tile, e)),
                None => clusters.push(vec![(tile, e)]),
            }
        }
        // A cluster may hold several genuine copies of a degenerate
        // eigenvalue (symmetric scatterers produce exactly degenerate pairs
        // whose computed copies split only by rounding) as well as
        // duplicates from overlapping tiles. Every tile that resolves the
        // cluster sees all of its copies, so the multiplicity is the largest
        // per-tile count; keep that many members, preferring small residuals.
        let mut dedup: Vec<NepEig> = Vec::new();
        for mut c in clusters {
            let mut per_tile: Vec<(usize, usize)> = Vec::new();
            for &(tile, _) in &c {
                match per_tile.iter_mut().find(|(t, _)| *t == tile) {
                    Some((_, n)) => *n += 1,
                    None => per_tile.push((tile, 1)),
                }
            }
            let mult = per_tile.iter().map(|&(_, n)| n).max().unwrap_or(0);
            c.sort_by(|a, b| a.1.residual.partial_cmp(&b.1.residual).unwrap());
            dedup.extend(c.into_iter().take(mult).map(|(_, e)| e));
        }
        dedup.sort_by(|a, b| {
            (a.lambda.re, a.lambda.im)
                .partial_cmp(&(b.lambda.re, b.lambda.im))
                .unwrap()
        });
        out.push(dedup);
    }
    Ok(out)
}
