//! Block boundary-integral systems for the two-medium Helmholtz transmission
//! problem, in two formulations whose eigenvalue distributions are compared
//! by the rest of the crate.
//!
//! Setting: exterior medium (ε₀, μ₀), interior medium (ε₁, μ₁), wavenumbers
//! k_j = ω √(ε_j μ_j). The trace unknowns are the total field u on the curve
//! and the scaled normal derivative q = (1/ε₀)(∂u/∂n)⁺ = (1/ε₁)(∂u/∂n)⁻,
//! which makes both transmission conditions implicit.
//!
//! * `BurtonMiller` (2N×2N, unknowns u, q): the exterior Green representation
//!   is combined with α = i/k₀ times its normal-derivative trace (the
//!   Burton–Miller trick that moves spurious interior resonances off the real
//!   axis), and paired with the interior Green representation.
//!
//! * `Mixed` (3N×3N, unknowns u, q, φ): the same combined exterior row, but
//!   the interior solution is represented indirectly as u = S^{k₁} φ; two
//!   extra identity-coupled rows define u and q from the density φ.
//!
//! Both assemble from one shared set of layer-potential matrices per
//! wavenumber, so eigensolvers sweeping many frequencies pay the quadrature
//! cost once per frequency for the pair.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{Boundary, Vec2};
use crate::layerpot::{self, OperatorSet};
use crate::linalg::{solve_dense, CMat};
use crate::{Error, Result};

/// Material constants, exterior first: eps = [ε₀, ε₁], mu = [μ₀, μ₁].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Materials {
    pub eps: [f64; 2],
    pub mu: [f64; 2],
}

impl Default for Materials {
    /// Dielectric of permittivity 4 in vacuum: k₁ = 2 k₀.
    fn default() -> Self {
        Materials { eps: [1.0, 4.0], mu: [1.0, 1.0] }
    }
}

impl Materials {
    pub fn validate(&self) -> Result<()> {
        for v in self.eps.iter().chain(self.mu.iter()) {
            if !(*v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "material constants must be positive and finite, got eps={:?}, mu={:?}",
                    self.eps, self.mu
                )));
            }
        }
        Ok(())
    }

    /// (k₀, k₁) = ω (√(ε₀μ₀), √(ε₁μ₁)).
    pub fn wavenumbers(&self, omega: Complex64) -> (Complex64, Complex64) {
        (
            omega * (self.eps[0] * self.mu[0]).sqrt(),
            omega * (self.eps[1] * self.mu[1]).sqrt(),
        )
    }
}

/// Which block system to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formulation {
    BurtonMiller,
    Mixed,
}

impl Formulation {
    pub fn label(&self) -> &'static str {
        match self {
            Formulation::BurtonMiller => "bm",
            Formulation::Mixed => "mixed",
        }
    }

    /// System dimension for a curve with `nodes` quadrature nodes.
    pub fn system_dim(&self, nodes: usize) -> usize {
        match self {
            Formulation::BurtonMiller => 2 * nodes,
            Formulation::Mixed => 3 * nodes,
        }
    }
}

/// Layer-potential matrices for both wavenumbers at one frequency, shared by
/// the two formulations.
pub struct FrequencyOperators {
    pub omega: Complex64,
    pub k0: Complex64,
    pub k1: Complex64,
    /// Coupling parameter α = i/k₀ of the combined exterior row.
    pub alpha: Complex64,
    pub at_k0: OperatorSet,
    pub at_k1: OperatorSet,
}

/// Assemble the operators both formulations draw from. The hypersingular
/// operator is only needed at k₀ (it appears in the combined exterior row).
pub fn assemble_operators(b: &Boundary, m: &Materials, omega: Complex64) -> Result<FrequencyOperators> {
    m.validate()?;
    let (k0, k1) = m.wavenumbers(omega);
    let alpha = Complex64::new(0.0, 1.0) / k0;
    Ok(FrequencyOperators {
        omega,
        k0,
        k1,
        alpha,
        at_k0: layerpot::assemble(b, k0, true)?,
        at_k1: layerpot::assemble(b, k1, false)?,
    })
}

/// Build one formulation's square system from pre-assembled operators.
pub fn build_system(m: &Materials, f: Formulation, ops: &FrequencyOperators) -> CMat {
    let n = ops.at_k0.single.nrows();
    let eps0 = Complex64::new(m.eps[0], 0.0);
    let eps1 = Complex64::new(m.eps[1], 0.0);
    let alpha = ops.alpha;
    let hyp = ops
        .at_k0
        .hypersingular
        .as_ref()
        .expect("assemble_operators builds the hypersingular block");
    let half = Complex64::new(0.5, 0.0);

    // Shared exterior row blocks:
    //   row_u = (D^{k0} − ½) + α N^{k0}
    //   row_q = −ε₀ (S^{k0} + α (D*^{k0} + ½))
    let row_u = |i: usize, j: usize| {
        let mut v = ops.at_k0.double[(i, j)] + alpha * hyp[(i, j)];
        if i == j {
            v -= half;
        }
        v
    };
    let row_q = |i: usize, j: usize| {
        let mut v = ops.at_k0.single[(i, j)] + alpha * ops.at_k0.double_adjoint[(i, j)];
        if i == j {
            v += alpha * half;
        }
        -eps0 * v
    };

    match f {
        Formulation::BurtonMiller => CMat::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            match (bi, bj) {
                (0, 0) => row_u(ii, jj),
                (0, 1) => row_q(ii, jj),
                // Interior Green representation: −(D^{k1} + ½) u + ε₁ S^{k1} q = 0.
                (1, 0) => {
                    let mut v = -ops.at_k1.double[(ii, jj)];
                    if ii == jj {
                        v -= half;
                    }
                    v
                }
                _ => eps1 * ops.at_k1.single[(ii, jj)],
            }
        }),
        Formulation::Mixed => CMat::from_fn(3 * n, 3 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            let zero = Complex64::new(0.0, 0.0);
            match (bi, bj) {
                (0, 0) => row_u(ii, jj),
                (0, 1) => row_q(ii, jj),
                (0, 2) => zero,
                // u = S^{k1} φ (single-layer trace is continuous).
                (1, 0) => {
                    if ii == jj {
                        -Complex64::new(1.0, 0.0)
                    } else {
                        zero
                    }
                }
                (1, 1) => zero,
                (1, 2) => ops.at_k1.single[(ii, jj)],
                // q = (1/ε₁)(D*^{k1} + ½) φ (interior normal-derivative trace).
                (2, 0) => zero,
                (2, 1) => {
                    if ii == jj {
                        -Complex64::new(1.0, 0.0)
                    } else {
                        zero
                    }
                }
                _ => {
                    let mut v = ops.at_k1.double_adjoint[(ii, jj)];
                    if ii == jj {
                        v += half;
                    }
                    v / eps1
                }
            }
        }),
    }
}

/// One-call system assembly at a (possibly complex) frequency.
pub fn assemble_system(
    b: &Boundary,
    m: &Materials,
    f: Formulation,
    omega: Complex64,
) -> Result<CMat> {
    let ops = assemble_operators(b, m, omega)?;
    Ok(build_system(m, f, &ops))
}

/// Matrix-family callback for the contour eigensolver: at each frequency the
/// boundary operators are assembled once (the dominant cost) and the system
/// matrix of every requested formulation is built from that shared set.
pub fn formulation_family<'a>(
    b: &'a Boundary,
    m: &'a Materials,
    forms: &'a [Formulation],
) -> impl FnMut(Complex64) -> Result<Vec<CMat>> + 'a {
    move |omega: Complex64| {
        let ops = assemble_operators(b, m, omega)?;
        Ok(forms.iter().map(|&f| build_system(m, f, &ops)).collect())
    }
}

/// Incident plane wave u^I(x) = exp(i k₀ d·x) with unit direction d.
#[derive(Clone, Copy, Debug)]
pub struct PlaneWave {
    pub direction: Vec2,
}

impl PlaneWave {
    pub fn from_angle(theta: f64) -> PlaneWave {
        PlaneWave { direction: Vec2::new(theta.cos(), theta.sin()) }
    }

    pub fn value(&self, k0: Complex64, x: Vec2) -> Complex64 {
        (Complex64::new(0.0, 1.0) * k0 * self.direction.dot(x)).exp()
    }

    /// (u^I, ∂u^I/∂n) at the boundary nodes.
    pub fn traces(&self, b: &Boundary, k0: Complex64) -> (Vec<Complex64>, Vec<Complex64>) {
        let i_k0 = Complex64::new(0.0, 1.0) * k0;
        let mut u = Vec::with_capacity(b.len());
        let mut dn = Vec::with_capacity(b.len());
        for j in 0..b.len() {
            let v = self.value(k0, b.node[j]);
            u.push(v);
            dn.push(i_k0 * self.direction.dot(b.normal[j]) * v);
        }
        (u, dn)
    }
}

/// Solved boundary traces of a scattering problem.
pub struct ScatterSolution {
    pub formulation: Formulation,
    pub omega: f64,
    /// Total field trace u on the boundary.
    pub u: Vec<Complex64>,
    /// Scaled normal derivative q = (1/ε_j)(∂u/∂n) (same from both sides).
    pub q: Vec<Complex64>,
    /// Interior single-layer density φ (mixed formulation only).
    pub phi: Option<Vec<Complex64>>,
}

/// Solve the forward scattering problem at real frequency ω > 0.
pub fn solve_scattering(
    b: &Boundary,
    m: &Materials,
    f: Formulation,
    omega: f64,
    incident: &PlaneWave,
) -> Result<ScatterSolution> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "scattering frequency must be positive and finite, got {omega}"
        )));
    }
    let n = b.len();
    let ops = assemble_operators(b, m, Complex64::new(omega, 0.0))?;
    let t = build_system(m, f, &ops);

    // Right-hand side: the combined incident trace in the exterior row,
    // zeros in the representation rows.
    let (u_inc, dn_inc) = incident.traces(b, ops.k0);
    let dim = f.system_dim(n);
    let rhs = CMat::from_fn(dim, 1, |i, _| {
        if i < n {
            -(u_inc[i] + ops.alpha * dn_inc[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });

    let x = solve_dense(&t, &rhs)?;
    let u: Vec<Complex64> = (0..n).map(|i| x[(i, 0)]).collect();
    let q: Vec<Complex64> = (0..n).map(|i| x[(n + i, 0)]).collect();
    let phi = match f {
        Formulation::BurtonMiller => None,
        Formulation::Mixed => Some((0..n).map(|i| x[(2 * n + i, 0)]).collect()),
    };
    Ok(ScatterSolution { formulation: f, omega, u, q, phi })
}

/// Which side of the curve a field point is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Outside,
    Inside,
    NearBoundary,
}

/// Classify a target by winding number of the sampled curve around it, with
/// the near-boundary band (where quadrature evaluation is unreliable)
/// reported separately.
pub fn classify_target(b: &Boundary, p: Vec2) -> Region {
    let guard = layerpot::near_field_radius(b);
    let mut dmin = f64::INFINITY;
    let mut winding = 0.0;
    let n = b.len();
    for j in 0..n {
        let a = b.node[j] - p;
        let c = b.node[(j + 1) % n] - p;
        dmin = dmin.min(a.norm());
        winding += a.cross(c).atan2(a.dot(c));
    }
    if dmin < guard {
        Region::NearBoundary
    } else if winding.abs() > std::f64::consts::PI {
        Region::Inside
    } else {
        Region::Outside
    }
}

/// Evaluate the total field at off-boundary targets.
///
/// Exterior: u = u^I + D^{k0}[u] − ε₀ S^{k0}[q] (the incident part of the
/// representation vanishes identically outside). Interior: the direct
/// representation ε₁ S^{k1}[q] − D^{k1}[u] for Burton–Miller, or the
/// indirect S^{k1}[φ] for the mixed formulation. Near-boundary targets are
/// rejected with [`Error::NearBoundaryTarget`].
pub fn eval_field(
    b: &Boundary,
    m: &Materials,
    sol: &ScatterSolution,
    incident: &PlaneWave,
    targets: &[Vec2],
) -> Result<Vec<Complex64>> {
    let omega = Complex64::new(sol.omega, 0.0);
    let (k0, k1) = m.wavenumbers(omega);

    let near: Vec<usize> = targets
        .iter()
        .enumerate()
        .filter(|(_, &p)| classify_target(b, p) == Region::NearBoundary)
        .map(|(i, _)| i)
        .collect();
    if !near.is_empty() {
        return Err(Error::NearBoundaryTarget { indices: near });
    }

    let (outside, inside): (Vec<usize>, Vec<usize>) = {
        let mut o = Vec::new();
        let mut i = Vec::new();
        for (idx, &p) in targets.iter().enumerate() {
            match classify_target(b, p) {
                Region::Outside => o.push(idx),
                Region::Inside => i.push(idx),
                Region::NearBoundary => unreachable!(),
            }
        }
        (o, i)
    };

    let mut out = vec![Complex64::new(0.0, 0.0); targets.len()];

    if !outside.is_empty() {
        let pts: Vec<Vec2> = outside.iter().map(|&i| targets[i]).collect();
        let eps0_q: Vec<Complex64> = sol.q.iter().map(|&v| m.eps[0] * v).collect();
        let dl = layerpot::eval_double_layer(b, k0, &sol.u, &pts)?;
        let sl = layerpot::eval_single_layer(b, k0, &eps0_q, &pts)?;
        for (slot, &idx) in outside.iter().enumerate() {
            out[idx] = incident.value(k0, targets[idx]) + dl[slot] - sl[slot];
        }
    }

    if !inside.is_empty() {
        let pts: Vec<Vec2> = inside.iter().map(|&i| targets[i]).collect();
        match &sol.phi {
            Some(phi) => {
                let sl = layerpot::eval_single_layer(b, k1, phi, &pts)?;
                for (slot, &idx) in inside.iter().enumerate() {
                    out[idx] = sl[slot];
                }
            }
            None => {
                let eps1_q: Vec<Complex64> = sol.q.iter().map(|&v| m.eps[1] * v).collect();
                let sl = layerpot::eval_single_layer(b, k1, &eps1_q, &pts)?;
                let dl = layerpot::eval_double_layer(b, k1, &sol.u, &pts)?;
                for (slot, &idx) in inside.iter().enumerate() {
                    out[idx] = sl[slot] - dl[slot];
                }
            }
        }
    }

    Ok(out)
}
