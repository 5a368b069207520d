//! Smooth closed boundary curves and their periodic-trapezoid discretization.
//!
//! Curves are parametrized counterclockwise over t ∈ [0, 2π). A [`Boundary`]
//! samples a curve at equispaced parameters and caches everything the layer
//! potentials need per node: position, parametric speed, outward unit normal,
//! signed curvature, and the trapezoid arc-length weight. For smooth periodic
//! integrands the equispaced trapezoid rule is spectrally accurate, which is
//! what makes the Nyström quadratures downstream converge super-algebraically.
//!
//! Grid nesting: the nodes of an N-point grid are bitwise equal to the even
//! nodes of the 2N-point grid (IEEE division is correctly rounded and rounding
//! commutes with scaling by two), so refinement studies compare values at
//! identical points.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// A plain 2-vector; kept minimal on purpose (positions, normals, gradients).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// 2D cross product (z-component of the 3D cross product).
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A smooth closed curve, parametrized counterclockwise over [0, 2π).
pub trait Curve {
    /// Position x(t).
    fn position(&self, t: f64) -> Vec2;
    /// First parameter derivative x'(t).
    fn velocity(&self, t: f64) -> Vec2;
    /// Second parameter derivative x''(t).
    fn acceleration(&self, t: f64) -> Vec2;
}

/// Circle of given radius centered at the origin.
#[derive(Clone, Copy, Debug)]
pub struct Circle {
    radius: f64,
}

impl Circle {
    pub fn new(radius: f64) -> Result<Circle> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "circle radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Circle { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

impl Curve for Circle {
    fn position(&self, t: f64) -> Vec2 {
        Vec2::new(self.radius * t.cos(), self.radius * t.sin())
    }

    fn velocity(&self, t: f64) -> Vec2 {
        Vec2::new(-self.radius * t.sin(), self.radius * t.cos())
    }

    fn acceleration(&self, t: f64) -> Vec2 {
        Vec2::new(-self.radius * t.cos(), -self.radius * t.sin())
    }
}

/// Star-shaped perturbation of a circle: radius(t) = a (1 + δ cos(m t)).
///
/// Requires 0 ≤ δ < 1 so the radial factor stays positive (the curve remains
/// a smooth Jordan curve around the origin).
#[derive(Clone, Copy, Debug)]
pub struct Star {
    base_radius: f64,
    amplitude: f64,
    arms: u32,
}

impl Star {
    pub fn new(base_radius: f64, amplitude: f64, arms: u32) -> Result<Star> {
        if !(base_radius > 0.0) || !base_radius.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "star base radius must be positive and finite, got {base_radius}"
            )));
        }
        if !(0.0..1.0).contains(&amplitude) {
            return Err(Error::InvalidConfig(format!(
                "star amplitude must lie in [0, 1), got {amplitude}"
            )));
        }
        if arms == 0 {
            return Err(Error::InvalidConfig("star must have at least one arm".into()));
        }
        Ok(Star { base_radius, amplitude, arms })
    }

    fn radial(&self, t: f64) -> (f64, f64, f64) {
        let m = self.arms as f64;
        let (s, c) = (m * t).sin_cos();
        let r = self.base_radius * (1.0 + self.amplitude * c);
        let dr = -self.base_radius * self.amplitude * m * s;
        let ddr = -self.base_radius * self.amplitude * m * m * c;
        (r, dr, ddr)
    }
}

impl Curve for Star {
    fn position(&self, t: f64) -> Vec2 {
        let (r, _, _) = self.radial(t);
        Vec2::new(r * t.cos(), r * t.sin())
    }

    fn velocity(&self, t: f64) -> Vec2 {
        let (r, dr, _) = self.radial(t);
        let (s, c) = t.sin_cos();
        Vec2::new(dr * c - r * s, dr * s + r * c)
    }

    fn acceleration(&self, t: f64) -> Vec2 {
        let (r, dr, ddr) = self.radial(t);
        let (s, c) = t.sin_cos();
        Vec2::new(ddr * c - 2.0 * dr * s - r * c, ddr * s + 2.0 * dr * c - r * s)
    }
}

/// Equispaced sampling of a curve with per-node differential geometry.
#[derive(Clone, Debug)]
pub struct Boundary {
    /// Parameter spacing 2π/N.
    pub h: f64,
    /// Parameter values t_j = j h.
    pub t: Vec<f64>,
    /// Node positions x(t_j).
    pub node: Vec<Vec2>,
    /// Parametric speeds |x'(t_j)|.
    pub speed: Vec<f64>,
    /// Outward unit normals.
    pub normal: Vec<Vec2>,
    /// Signed curvatures (positive for a counterclockwise convex curve).
    pub curvature: Vec<f64>,
    /// Trapezoid arc-length weights h |x'(t_j)|.
    pub weight: Vec<f64>,
}

impl Boundary {
    /// Sample `curve` at n equispaced parameters.
    ///
    /// n must be even (the singular quadrature downstream pairs nodes across
    /// half-periods) and at least 8.
    pub fn discretize(curve: &dyn Curve, n: usize) -> Result<Boundary> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "boundary node count must be even and at least 8, got {n}"
            )));
        }
        let h = TAU / n as f64;
        let mut b = Boundary {
            h,
            t: Vec::with_capacity(n),
            node: Vec::with_capacity(n),
            speed: Vec::with_capacity(n),
            normal: Vec::with_capacity(n),
            curvature: Vec::with_capacity(n),
            weight: Vec::with_capacity(n),
        };
        for j in 0..n {
            let t = j as f64 * h;
            let x = curve.position(t);
            let v = curve.velocity(t);
            let a = curve.acceleration(t);
            let s = v.norm();
            if !(s > 0.0) || !x.x.is_finite() || !x.y.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "degenerate parametrization at t = {t}: speed {s}"
                )));
            }
            b.t.push(t);
            b.node.push(x);
            b.speed.push(s);
            // Counterclockwise parametrization: outward normal is the
            // clockwise rotation of the unit tangent.
            b.normal.push(Vec2::new(v.y / s, -v.x / s));
            b.curvature.push(v.cross(a) / (s * s * s));
            b.weight.push(h * s);
        }
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.node.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node.is_empty()
    }

    /// Total arc length by the (here spectrally accurate) trapezoid rule.
    pub fn perimeter(&self) -> f64 {
        self.weight.iter().sum()
    }

    /// Largest arc distance between consecutive nodes; used by potential
    /// evaluators to decide when a target is too close to the boundary for
    /// the plain quadrature to be trusted.
    pub fn max_node_spacing(&self) -> f64 {
        self.speed.iter().fold(0.0f64, |m, &s| m.max(s)) * self.h
    }
}

/// Closed-curve identities used as discretization self-checks:
/// ∮ n ds = 0 and ∮ κ ds = 2π (winding number one).
pub fn closure_defects(b: &Boundary) -> (f64, f64) {
    let mut n_int = Vec2::ZERO;
    let mut kappa_int = 0.0;
    for j in 0..b.len() {
        n_int = n_int + b.normal[j] * b.weight[j];
        kappa_int += b.curvature[j] * b.weight[j];
    }
    (n_int.norm(), (kappa_int - 2.0 * PI).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_geometry_is_exact() {
        let c = Circle::new(1.5).unwrap();
        let b = Boundary::discretize(&c, 64).unwrap();
        for j in 0..b.len() {
            assert!((b.node[j].norm() - 1.5).abs() < 1e-14);
            assert!((b.speed[j] - 1.5).abs() < 1e-14);
            assert!((b.curvature[j] - 1.0 / 1.5).abs() < 1e-14);
            // Outward normal is radial.
            let radial = b.node[j] * (1.0 / 1.5);
            assert!((b.normal[j] - radial).norm() < 1e-14);
        }
        assert!((b.perimeter() - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn star_closure_identities_hold_spectrally() {
        let s = Star::new(1.0, 0.3, 5).unwrap();
        let b = Boundary::discretize(&s, 128).unwrap();
        let (dn, dk) = closure_defects(&b);
        assert!(dn < 1e-12, "normal closure defect {dn}");
        assert!(dk < 1e-12, "curvature winding defect {dk}");
        // Perimeter against a fine reference grid.
        let fine = Boundary::discretize(&s, 1024).unwrap();
        assert!((b.perimeter() - fine.perimeter()).abs() < 1e-11);
    }

    #[test]
    fn star_derivatives_match_finite_differences() {
        let s = Star::new(0.8, 0.25, 3).unwrap();
        let eps = 1e-6;
        for &t in &[0.1, 1.7, 3.9, 5.6] {
            let v = s.velocity(t);
            let fd_v = (s.position(t + eps) - s.position(t - eps)) * (0.5 / eps);
            assert!((v - fd_v).norm() < 1e-8 * v.norm().max(1.0));
            let a = s.acceleration(t);
            let fd_a = (s.velocity(t + eps) - s.velocity(t - eps)) * (0.5 / eps);
            assert!((a - fd_a).norm() < 1e-8 * a.norm().max(1.0));
        }
    }

    #[test]
    fn refined_grid_shares_nodes_bitwise() {
        let s = Star::new(1.0, 0.3, 5).unwrap();
        let coarse = Boundary::discretize(&s, 64).unwrap();
        let fine = Boundary::discretize(&s, 128).unwrap();
        for j in 0..coarse.len() {
            assert_eq!(coarse.t[j], fine.t[2 * j]);
            assert_eq!(coarse.node[j], fine.node[2 * j]);
            assert_eq!(coarse.speed[j], fine.speed[2 * j]);
            assert_eq!(coarse.normal[j], fine.normal[2 * j]);
            assert_eq!(coarse.curvature[j], fine.curvature[2 * j]);
        }
    }

    #[test]
    fn invalid_shapes_are_rejected() {
        assert!(Circle::new(0.0).is_err());
        assert!(Circle::new(-1.0).is_err());
        assert!(Star::new(1.0, 1.0, 5).is_err());
        assert!(Star::new(1.0, -0.1, 5).is_err());
        assert!(Star::new(1.0, 0.3, 0).is_err());
        let c = Circle::new(1.0).unwrap();
        assert!(Boundary::discretize(&c, 7).is_err());
        assert!(Boundary::discretize(&c, 6).is_err());
    }
}
