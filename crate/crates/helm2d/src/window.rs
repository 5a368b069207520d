//! Axis-aligned rectangles in the complex frequency plane.
//!
//! A [`Window`] describes the closed box `[re_min, re_max] × [im_min, im_max]`
//! of complex numbers `ω = x + iy`. Windows select where eigenvalues are
//! sought, define the contours the moment-based eigensolver integrates over,
//! and filter both analytic and numerical eigenvalue lists to a common region
//! so the two can be paired one-to-one.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Closed axis-aligned rectangle `[re_min, re_max] × [im_min, im_max]` in the
/// complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    /// Creates a window, validating that it is finite and has positive area.
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let w = Window { re_min, re_max, im_min, im_max };
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::InvalidConfig(format!(
                "window [{re_min}, {re_max}] x [{im_min}, {im_max}] must be finite with \
                 re_min < re_max and im_min < im_max"
            )));
        }
        Ok(w)
    }

    /// Center of the rectangle.
    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    /// Half-width along the real axis.
    pub fn half_width(&self) -> f64 {
        0.5 * (self.re_max - self.re_min)
    }

    /// Half-height along the imaginary axis.
    pub fn half_height(&self) -> f64 {
        0.5 * (self.im_max - self.im_min)
    }

    /// Largest modulus attained on the rectangle (at one of the corners).
    pub fn max_abs(&self) -> f64 {
        let xs = [self.re_min, self.re_max];
        let ys = [self.im_min, self.im_max];
        let mut m: f64 = 0.0;
        for &x in &xs {
            for &y in &ys {
                m = m.max(x.hypot(y));
            }
        }
        m
    }

    /// The four corners in counterclockwise order starting from the
    /// bottom-left one.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    /// Whether `z` lies in the rectangle inflated by `margin` on every side.
    /// Negative margins shrink the rectangle.
    pub fn contains(&self, z: Complex64, margin: f64) -> bool {
        z.re >= self.re_min - margin
            && z.re <= self.re_max + margin
            && z.im >= self.im_min - margin
            && z.im <= self.im_max + margin
    }

    /// The same rectangle scaled about its center by `1 + rel` in both
    /// directions.
    pub fn inflated(&self, rel: f64) -> Window {
        let c = self.center();
        let hw = self.half_width() * (1.0 + rel);
        let hh = self.half_height() * (1.0 + rel);
        Window {
            re_min: c.re - hw,
            re_max: c.re + hw,
            im_min: c.im - hh,
            im_max: c.im + hh,
        }
    }

    /// Splits the rectangle into an `nx × ny` grid of equal tiles, ordered row
    /// by row from the bottom-left.
    pub fn tiles(&self, nx: usize, ny: usize) -> Result<Vec<Window>> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidConfig(
                "tile counts must be positive".into(),
            ));
        }
        let dx = (self.re_max - self.re_min) / nx as f64;
        let dy = (self.im_max - self.im_min) / ny as f64;
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                out.push(Window {
                    re_min: self.re_min + ix as f64 * dx,
                    re_max: self.re_min + (ix + 1) as f64 * dx,
                    im_min: self.im_min + iy as f64 * dy,
                    im_max: self.im_min + (iy + 1) as f64 * dy,
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_helpers_are_consistent() {
        let w = Window::new(0.5, 3.0, -1.0, 0.0).unwrap();
        assert_eq!(w.center(), Complex64::new(1.75, -0.5));
        assert_eq!(w.half_width(), 1.25);
        assert_eq!(w.half_height(), 0.5);
        assert!((w.max_abs() - 3.0f64.hypot(1.0)).abs() < 1e-15);
        assert!(w.contains(Complex64::new(0.5, -1.0), 0.0));
        assert!(!w.contains(Complex64::new(0.5 - 1e-9, -0.5), 0.0));
        assert!(w.contains(Complex64::new(0.5 - 1e-9, -0.5), 1e-8));

        let infl = w.inflated(0.01);
        assert!((infl.re_max - (1.75 + 1.25 * 1.01)).abs() < 1e-15);
        assert!((infl.im_min - (-0.5 - 0.5 * 1.01)).abs() < 1e-15);
    }

    #[test]
    fn tiling_partitions_the_window() {
        let w = Window::new(0.0, 2.0, -1.0, 0.0).unwrap();
        let tiles = w.tiles(4, 2).unwrap();
        assert_eq!(tiles.len(), 8);
        // Tiles abut exactly and cover the window.
        assert_eq!(tiles[0].re_min, 0.0);
        assert_eq!(tiles[0].re_max, tiles[1].re_min);
        assert_eq!(tiles[3].re_max, 2.0);
        assert_eq!(tiles[0].im_max, tiles[4].im_min);
        let area: f64 = tiles
            .iter()
            .map(|t| (t.re_max - t.re_min) * (t.im_max - t.im_min))
            .sum();
        assert!((area - 2.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_windows_are_rejected() {
        assert!(Window::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Window::new(0.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(Window::new(0.0, 1.0, 2.0, 1.0).is_err());
    }
}
