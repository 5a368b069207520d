//! One-to-one matching of two complex eigenvalue lists.
//!
//! The central cross-check of this crate compares eigenvalue lists computed
//! by independent routes (two formulations, or a formulation against the
//! analytic oracle). [`pair_eigenvalues`] matches them greedily by distance:
//! repeatedly take the globally closest unmatched pair below the tolerance.
//! For lists that agree to far better than their mutual separation — the
//! only regime in which a comparison is meaningful — this is the unique
//! stable matching.

use num_complex::Complex64;

/// One matched pair of list indices.
#[derive(Clone, Copy, Debug)]
pub struct Pair {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
}

/// Result of matching two eigenvalue lists.
#[derive(Clone, Debug, Default)]
pub struct Pairing {
    /// Matched index pairs, sorted by left index.
    pub pairs: Vec<Pair>,
    /// Left indices with no partner within tolerance.
    pub unmatched_left: Vec<usize>,
    /// Right indices with no partner within tolerance.
    pub unmatched_right: Vec<usize>,
}

impl Pairing {
    /// Largest matched distance (0 when nothing matched).
    pub fn max_distance(&self) -> f64 {
        self.pairs.iter().map(|p| p.distance).fold(0.0, f64::max)
    }

    /// True when every entry of both lists found a partner.
    pub fn is_bijection(&self) -> bool {
        self.unmatched_left.is_empty() && self.unmatched_right.is_empty()
    }
}

/// Greedy globally-closest matching of `left` against `right` with a
/// distance cutoff `tol`.
pub fn pair_eigenvalues(left: &[Complex64], right: &[Complex64], tol: f64) -> Pairing {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &a) in left.iter().enumerate() {
        for (j, &b) in right.iter().enumerate() {
            let d = (a - b).norm();
            if d <= tol {
                candidates.push((d, i, j));
            }
        }
    }
    // Sort by distance, breaking ties by indices for determinism.
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut left_used = vec![false; left.len()];
    let mut right_used = vec![false; right.len()];
    let mut pairs = Vec::new();
    for (d, i, j) in candidates {
        if !left_used[i] && !right_used[j] {
            left_used[i] = true;
            right_used[j] = true;
            pairs.push(Pair { left: i, right: j, distance: d });
        }
    }
    pairs.sort_by_key(|p| p.left);
    Pairing {
        pairs,
        unmatched_left: (0..left.len()).filter(|&i| !left_used[i]).collect(),
        unmatched_right: (0..right.len()).filter(|&j| !right_used[j]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn permuted_lists_pair_exactly() {
        let a = [c(1.0, -0.5), c(2.0, -0.1), c(0.5, -0.9)];
        let b = [c(0.5, -0.9 + 1e-9), c(1.0 + 1e-9, -0.5), c(2.0, -0.1)];
        let p = pair_eigenvalues(&a, &b, 1e-6);
        assert!(p.is_bijection());
        assert_eq!(p.pairs.len(), 3);
        assert!(p.max_distance() <= 2e-9);
        // Left 0 ↔ right 1, left 1 ↔ right 2, left 2 ↔ right 0.
        assert_eq!(p.pairs[0].right, 1);
        assert_eq!(p.pairs[1].right, 2);
        assert_eq!(p.pairs[2].right, 0);
    }

    #[test]
    fn unmatched_entries_are_reported() {
        let a = [c(1.0, 0.0), c(5.0, 0.0)];
        let b = [c(1.0, 1e-8), c(9.0, 0.0), c(9.5, 0.0)];
        let p = pair_eigenvalues(&a, &b, 1e-6);
        assert_eq!(p.pairs.len(), 1);
        assert_eq!(p.unmatched_left, vec![1]);
        assert_eq!(p.unmatched_right, vec![1, 2]);
        assert!(!p.is_bijection());
    }

    #[test]
    fn greedy_prefers_the_globally_closest_assignment() {
        // Two rights near one left: the closer one must win, the other must
        // fall to the second left.
        let a = [c(0.0, 0.0), c(0.2, 0.0)];
        let b = [c(0.05, 0.0), c(0.01, 0.0)];
        let p = pair_eigenvalues(&a, &b, 1.0);
        assert!(p.is_bijection());
        assert_eq!(p.pairs[0].right, 1); // left 0 takes the 0.01 partner
        assert_eq!(p.pairs[1].right, 0);
    }

    #[test]
    fn empty_lists_are_fine() {
        let p = pair_eigenvalues(&[], &[c(1.0, 0.0)], 1e-6);
        assert_eq!(p.pairs.len(), 0);
        assert_eq!(p.unmatched_right, vec![0]);
        assert_eq!(pair_eigenvalues(&[], &[], 1e-6).pairs.len(), 0);
    }
}
