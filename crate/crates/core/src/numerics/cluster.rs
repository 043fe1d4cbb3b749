//! Landau-level detection: grouping an ascending eigenvalue list into
//! near-degenerate clusters separated by spectral gaps.
//!
//! Weak-field Landau clusters are tight (spreads down at rounding level)
//! while the gaps between them are of order the flux, so the two gap
//! populations are separated by many orders of magnitude. The splitter
//! looks for that scale separation directly: sort the consecutive gaps,
//! find the largest ratio jump, and declare everything above the jump a
//! cluster boundary. If no jump beats `gap_tol` the clustering is refused
//! as ambiguous rather than guessed — an equally spaced list has no Landau
//! structure to report.

use crate::error::{Error, Result};

/// Separation factor a boundary gap must achieve over the within-cluster
/// gap scale.
pub const DEFAULT_GAP_TOL: f64 = 10.0;

/// Gaps at or below this are always treated as degeneracy, never as
/// boundaries.
pub const ABSOLUTE_GAP_FLOOR: f64 = 1e-9;

/// One detected Landau cluster.
#[derive(Debug, Clone)]
pub struct LevelCluster {
    /// Arithmetic mean of the member eigenvalues.
    pub mean_energy: f64,
    /// The member eigenvalues, ascending.
    pub members: Vec<f64>,
    /// `members.len()`.
    pub degeneracy: usize,
    /// Filled in by the symmetry analysis: `(even, odd)` dimensions.
    pub isotypic_split: Option<(usize, usize)>,
    /// Index of the first member in the original eigenvalue list.
    pub start_index: usize,
}

/// Groups an ascending eigenvalue list into clusters.
///
/// Errors with `AmbiguousClustering` when the gaps show no scale
/// separation of at least `gap_tol`, or when a within-cluster gap exceeds
/// half of the smallest between-cluster gap.
pub fn landau_level_clusters(evals: &[f64], gap_tol: f64) -> Result<Vec<LevelCluster>> {
    if evals.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("eigenvalues must be ascending".into()));
    }
    if !gap_tol.is_finite() || gap_tol <= 1.0 {
        return Err(Error::InvalidInput(format!(
            "gap tolerance must exceed 1, got {gap_tol}"
        )));
    }
    if evals.is_empty() {
        return Ok(Vec::new());
    }
    let gaps: Vec<f64> = evals.windows(2).map(|w| w[1] - w[0]).collect();

    // everything below the floor is degeneracy noise
    if gaps.iter().all(|&g| g <= ABSOLUTE_GAP_FLOOR) {
        return Ok(vec![make_cluster(evals, 0)]);
    }

    // scale split: largest multiplicative jump in the sorted gap list
    let mut sorted = gaps.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best_ratio = 0.0;
    let mut threshold = f64::INFINITY;
    for j in 1..sorted.len() {
        let ratio = sorted[j] / sorted[j - 1].max(ABSOLUTE_GAP_FLOOR);
        if ratio > best_ratio {
            best_ratio = ratio;
            threshold = 0.5 * (sorted[j - 1] + sorted[j]);
        }
    }
    if best_ratio < gap_tol {
        return Err(Error::AmbiguousClustering {
            detail: format!(
                "no gap exceeds {gap_tol} times the next smaller one (best ratio {best_ratio:.3})"
            ),
        });
    }

    let mut clusters = Vec::new();
    let mut start = 0;
    for (i, &g) in gaps.iter().enumerate() {
        if g > threshold {
            clusters.push(make_cluster(&evals[start..=i], start));
            start = i + 1;
        }
    }
    clusters.push(make_cluster(&evals[start..], start));

    // well-posedness: within-gaps must stay below half the smallest
    // boundary gap, and spreads below the gaps to the neighbours
    let min_between = gaps
        .iter()
        .filter(|&&g| g > threshold)
        .fold(f64::INFINITY, |m, &g| m.min(g));
    let max_within = gaps
        .iter()
        .filter(|&&g| g <= threshold)
        .fold(0.0f64, |m, &g| m.max(g));
    if max_within > 0.5 * min_between {
        return Err(Error::AmbiguousClustering {
            detail: format!(
                "within-cluster gap {max_within:.3e} exceeds half the smallest between-cluster gap {min_between:.3e}"
            ),
        });
    }
    for w in clusters.windows(2) {
        let gap = w[1].members[0] - *w[0].members.last().unwrap();
        let spread = spread(&w[0].members).max(spread(&w[1].members));
        if spread >= gap {
            return Err(Error::AmbiguousClustering {
                detail: format!("cluster spread {spread:.3e} reaches the gap {gap:.3e}"),
            });
        }
    }
    Ok(clusters)
}

/// [`landau_level_clusters`] with the default tolerance.
pub fn landau_level_clusters_default(evals: &[f64]) -> Result<Vec<LevelCluster>> {
    landau_level_clusters(evals, DEFAULT_GAP_TOL)
}

fn spread(members: &[f64]) -> f64 {
    members.last().unwrap() - members.first().unwrap()
}

fn make_cluster(members: &[f64], start_index: usize) -> LevelCluster {
    let mean = members.iter().sum::<f64>() / members.len() as f64;
    LevelCluster {
        mean_energy: mean,
        members: members.to_vec(),
        degeneracy: members.len(),
        isotypic_split: None,
        start_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_three_and_two() {
        let clusters = landau_level_clusters_default(&[1.0, 1.001, 1.002, 3.0, 3.001]).unwrap();
        let degs: Vec<usize> = clusters.iter().map(|c| c.degeneracy).collect();
        assert_eq!(degs, vec![3, 2]);
        assert!((clusters[0].mean_energy - 1.001).abs() < 1e-12);
        assert_eq!(clusters[1].start_index, 3);
    }

    #[test]
    fn equally_spaced_list_is_ambiguous() {
        let evals: Vec<f64> = (0..10).map(|i| i as f64 * 0.25).collect();
        assert!(matches!(
            landau_level_clusters_default(&evals),
            Err(Error::AmbiguousClustering { .. })
        ));
    }

    #[test]
    fn exact_degeneracy_is_one_cluster() {
        let clusters = landau_level_clusters_default(&[2.0; 8]).unwrap();
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].degeneracy, 8);
    }

    #[test]
    fn tight_clusters_with_wide_gaps() {
        let mut evals = Vec::new();
        for c in 0..3 {
            for i in 0..8 {
                evals.push(c as f64 * 0.015 + i as f64 * 1e-13);
            }
        }
        let clusters = landau_level_clusters_default(&evals).unwrap();
        assert_eq!(clusters.len(), 3);
        assert!(clusters.iter().all(|c| c.degeneracy == 8));
    }

    #[test]
    fn rejects_unsorted_input() {
        assert!(landau_level_clusters_default(&[1.0, 0.5]).is_err());
    }

    #[test]
    fn empty_and_singleton() {
        assert!(landau_level_clusters_default(&[]).unwrap().is_empty());
        let one = landau_level_clusters_default(&[0.3]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].degeneracy, 1);
    }
}
