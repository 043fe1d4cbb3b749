//! End-to-end pillowcase validation: exact ladder against lattice numerics.
//!
//! The pillowcase is the quotient of the torus by inversion, so an `N x N`
//! flux-threaded torus with the inversion lift is a complete discrete model
//! of the `|G| = 2` theory: the equivariant degree is the flux number
//! `N_phi`, the covering volume is `N^2` lattice units, and the two parity
//! sectors of each Landau cluster realise the bundles with monodromy
//! residues `(0,0,0,0)` and `(1,1,1,1)` at the four corner points. The
//! validator runs both sides and compares energies (to a relative
//! tolerance), degeneracies and parity splits (exactly).

use serde::Serialize;

use crate::covers::build_cover;
use crate::error::{Error, Result};
use crate::numerics::cluster::{landau_level_clusters_default, LevelCluster};
use crate::numerics::eigen::lowest_eigenpairs;
use crate::numerics::lattice::{build_magnetic_laplacian, LatticeModel};
use crate::numerics::symmetry::{inversion_unitary, isotypic_multiplicities};
use crate::orbifold::{OrbifoldLineBundle, OrbifoldSurface};
use crate::spectra::{landau_energy_value, level_multiplicity};

/// Clusters to resolve and compare.
const CLUSTERS_TO_CHECK: usize = 3;

/// Residual target for the lattice eigensolve.
const EIGEN_TOL: f64 = 1e-10;

/// Relative error allowed on the lowest cluster mean.
const GROUND_ENERGY_RTOL: f64 = 0.05;

/// One measured cluster, with its parity split.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterReport {
    pub mean_energy: f64,
    pub degeneracy: usize,
    pub even: usize,
    pub odd: usize,
}

/// The analytic side of the comparison.
#[derive(Debug, Clone, Serialize)]
pub struct PredictedSpectrum {
    /// Continuum energies of the first clusters, `2 pi N_phi (2l+1) / N^2`.
    pub energies: Vec<f64>,
    /// Landau degeneracy per cluster: the flux number.
    pub degeneracy: i64,
    /// `(even, odd)` multiplicities per cluster from the two monodromy
    /// patterns.
    pub isotypic: Vec<IsotypicPair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotypicPair {
    pub even: i64,
    pub odd: i64,
}

/// Outcome of one pillowcase validation run.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub flux_quanta: i64,
    pub clusters: Vec<ClusterReport>,
    pub predicted: PredictedSpectrum,
    /// `|measured - predicted| / predicted` per compared cluster.
    pub relative_errors: Vec<f64>,
    pub pass: bool,
    #[serde(skip)]
    pub eigenvalues: Vec<f64>,
}

/// Runs the full analytic-vs-lattice comparison on the pillowcase.
///
/// `flux_quanta` must be even (the orbifold degree downstairs is
/// `N_phi / 2`) and `n` even so the inversion has its four fixed sites.
pub fn validate_pillowcase(n: usize, flux_quanta: i64) -> Result<ValidationReport> {
    if flux_quanta % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "flux quanta must be even on the pillowcase, got {flux_quanta}"
        )));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "lattice side must be even for the inversion fixed points, got {n}"
        )));
    }
    let model = LatticeModel::new(n, flux_quanta)?.with_inversion();

    // analytic side: |G| = 2 cover of the pillowcase with volume N^2
    let pillow = OrbifoldSurface::pillowcase();
    let cover = build_cover(pillow.clone(), 2, (n * n) as f64, true)?;
    let even_bundle = OrbifoldLineBundle::new(pillow.clone(), flux_quanta / 2, vec![0, 0, 0, 0])?;
    let odd_bundle =
        OrbifoldLineBundle::new(pillow.clone(), flux_quanta / 2 - 2, vec![1, 1, 1, 1])?;

    let mut predicted_energies = Vec::with_capacity(CLUSTERS_TO_CHECK);
    let mut predicted_isotypic = Vec::with_capacity(CLUSTERS_TO_CHECK);
    for l in 0..CLUSTERS_TO_CHECK as u32 {
        predicted_energies.push(landau_energy_value(&cover, flux_quanta, l));
        predicted_isotypic.push(IsotypicPair {
            even: level_multiplicity(&even_bundle, &cover, l)?,
            odd: level_multiplicity(&odd_bundle, &cover, l)?,
        });
    }
    let predicted = PredictedSpectrum {
        energies: predicted_energies,
        degeneracy: flux_quanta,
        isotypic: predicted_isotypic,
    };

    // lattice side
    let h = build_magnetic_laplacian(&model)?;
    let want = CLUSTERS_TO_CHECK as i64 * flux_quanta + (flux_quanta / 2).max(2);
    let pairs = lowest_eigenpairs(&h, want as usize, EIGEN_TOL)?;
    let clusters = landau_level_clusters_default(&pairs.values)?;
    if clusters.len() <= CLUSTERS_TO_CHECK {
        return Err(Error::AmbiguousClustering {
            detail: format!(
                "resolved only {} clusters, need {CLUSTERS_TO_CHECK} complete ones",
                clusters.len()
            ),
        });
    }
    let u = inversion_unitary(&model)?;

    let mut reports = Vec::with_capacity(CLUSTERS_TO_CHECK);
    let mut relative_errors = Vec::with_capacity(CLUSTERS_TO_CHECK);
    for (i, cluster) in clusters.iter().take(CLUSTERS_TO_CHECK).enumerate() {
        let (even, odd) = isotypic_multiplicities(&u, cluster, &pairs)?;
        reports.push(ClusterReport {
            mean_energy: cluster.mean_energy,
            degeneracy: cluster.degeneracy,
            even,
            odd,
        });
        relative_errors
            .push((cluster.mean_energy - predicted.energies[i]).abs() / predicted.energies[i]);
    }

    let degeneracies_match = reports
        .iter()
        .take(2)
        .all(|c| c.degeneracy as i64 == predicted.degeneracy);
    let ground_isotypic_match = reports[0].even as i64 == predicted.isotypic[0].even
        && reports[0].odd as i64 == predicted.isotypic[0].odd;
    let pass =
        degeneracies_match && ground_isotypic_match && relative_errors[0] <= GROUND_ENERGY_RTOL;

    Ok(ValidationReport {
        n,
        flux_quanta,
        clusters: reports,
        predicted,
        relative_errors,
        pass,
        eigenvalues: pairs.values,
    })
}

/// Raw eigenvalues, one full-precision decimal per line.
pub fn eigenvalues_csv(evals: &[f64]) -> String {
    let mut out = String::new();
    for v in evals {
        out.push_str(&format!("{v:.16e}\n"));
    }
    out
}

/// Detected clusters of the `k` lowest eigenvalues of a plain
/// (symmetry-free) flux-threaded torus.
pub fn cluster_spectrum(n: usize, flux_quanta: i64, k: usize) -> Result<Vec<LevelCluster>> {
    let model = LatticeModel::new(n, flux_quanta)?;
    let h = build_magnetic_laplacian(&model)?;
    let pairs = lowest_eigenpairs(&h, k, EIGEN_TOL)?;
    landau_level_clusters_default(&pairs.values)
}
