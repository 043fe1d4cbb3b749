//! Input and output schemas, one pair per command. Unknown keys are
//! rejected everywhere.

use serde::{Deserialize, Serialize};

use orbihall::{OrbifoldLineBundle, OrbifoldSurface, Rational};

// -------------------------------------------------------------------------
// info
// -------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfoInput {
    pub surface: OrbifoldSurface,
    pub group_order: Option<u64>,
    #[serde(default = "default_volume")]
    pub cover_volume: f64,
    #[serde(default)]
    pub cyclic_quotient_free: bool,
}

fn default_volume() -> f64 {
    1.0
}

#[derive(Serialize)]
pub struct InfoReport {
    pub chi_orb: Rational,
    pub deg_canonical_orb: Rational,
    pub isotropy_lcm: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverReport>,
}

#[derive(Serialize)]
pub struct CoverReport {
    pub group_order: u64,
    pub chi: i64,
    pub genus: u32,
    pub sheet_counts: Vec<u64>,
    pub cover_volume: f64,
    pub cyclic_quotient_free: bool,
}

// -------------------------------------------------------------------------
// riemann-roch
// -------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiemannRochInput {
    pub bundle: OrbifoldLineBundle,
    pub q: Option<u32>,
}

#[derive(Serialize)]
pub struct RiemannRochReport {
    pub deg_orb: Rational,
    pub deg_smooth: i64,
    pub euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistReport>,
}

#[derive(Serialize)]
pub struct TwistReport {
    pub q: u32,
    pub deg_orb: Rational,
    pub deg_smooth: i64,
    pub euler_characteristic: i64,
}

// -------------------------------------------------------------------------
// spectrum
// -------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumInput {
    pub bundle: OrbifoldLineBundle,
    pub group_order: u64,
    pub cover_volume: f64,
    #[serde(default)]
    pub cyclic_quotient_free: bool,
}

// -------------------------------------------------------------------------
// transport
// -------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransportInput {
    pub group_order: u64,
    pub intersection_matrix: Vec<Vec<i64>>,
    pub pushforward: Vec<Vec<i64>>,
    pub convention: Option<String>,
}

#[derive(Serialize)]
pub struct TransportReport {
    pub group_order: u64,
    pub convention: &'static str,
    pub table: Vec<Vec<TaggedRational>>,
}

#[derive(Serialize)]
pub struct TaggedRational {
    pub value: Rational,
    pub unit: &'static str,
}

// -------------------------------------------------------------------------
// validate
// -------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateInput {
    #[serde(rename = "N")]
    pub n: usize,
    pub flux_quanta: i64,
    #[serde(default)]
    pub emit: EmitKind,
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq, Default, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum EmitKind {
    #[default]
    Report,
    EigenvaluesCsv,
}

// -------------------------------------------------------------------------
// pullback-demo
// -------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackInput {
    pub point: PointInput,
    pub n: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointInput {
    pub one: Rational,
    pub tau: Rational,
}

#[derive(Serialize)]
pub struct PullbackReport {
    pub n: u32,
    pub base_point: PointReport,
    pub classes: Vec<PointReport>,
    pub all_equal: bool,
}

#[derive(Serialize)]
pub struct PointReport {
    pub one: Rational,
    pub tau: Rational,
    pub lattice_scale: Rational,
}
