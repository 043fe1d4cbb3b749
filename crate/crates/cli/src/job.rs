//! Job execution: one JSON description in, one JSON/CSV report out.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use orbihall::numerics::{eigenvalues_csv, validate_pillowcase};
use orbihall::{
    build_cover, conductance_table, elliptic_pullback_class, spectral_ladder_with_cap,
    EllipticPoint, IntMatrix, SignConvention, TransportSetup, DEFAULT_FLAT_LADDER_CAP,
};

use crate::emit::to_json_line;
use crate::schemas::*;

/// Everything one invocation does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Info,
    RiemannRoch,
    Spectrum,
    Transport,
    Validate,
    PullbackDemo,
}

/// Command-specific options; unknown flags never reach this point (clap
/// rejects them), and flags that do not belong to the command are rejected
/// in [`JobSpec::validate_options`].
#[derive(Debug, Default)]
pub struct JobOptions {
    pub convention: Option<String>,
    pub cap: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input_path: PathBuf,
    pub output_path: Option<PathBuf>,
    pub options: JobOptions,
}

/// A failed job: machine-readable code, human detail, process exit status.
#[derive(Debug)]
pub struct JobError {
    pub code: &'static str,
    pub detail: String,
    pub exit: i32,
}

impl JobError {
    fn invalid(detail: impl Into<String>) -> Self {
        JobError {
            code: "invalid_input",
            detail: detail.into(),
            exit: 1,
        }
    }

    fn parse(detail: impl std::fmt::Display) -> Self {
        JobError {
            code: "parse_error",
            detail: detail.to_string(),
            exit: 1,
        }
    }

    fn io(detail: impl std::fmt::Display) -> Self {
        JobError {
            code: "io_error",
            detail: detail.to_string(),
            exit: 1,
        }
    }
}

impl From<orbihall::Error> for JobError {
    fn from(e: orbihall::Error) -> Self {
        use orbihall::Error::*;
        let (code, exit) = match &e {
            ConvergenceFailure { .. } => ("convergence_failure", 2),
            AmbiguousClustering { .. } => ("ambiguous_clustering", 2),
            FluxInconsistency { .. } => ("flux_inconsistency", 2),
            SymmetryBroken { .. } => ("symmetry_broken", 2),
            NonInvolutive { .. } => ("non_involutive", 2),
            HypothesisViolated { .. } => ("hypothesis_violated", 3),
            OutOfValidRange { .. } => ("out_of_valid_range", 3),
            IsotropyMismatch { .. } => ("isotropy_mismatch", 1),
            NonIntegralCover { .. } => ("non_integral_cover", 1),
            BaseMismatch => ("base_mismatch", 1),
            NonIntegralSmoothDegree { .. } => ("non_integral_smooth_degree", 1),
            NonIntegralEquivariantDegree { .. } => ("non_integral_equivariant_degree", 1),
            DimensionMismatch { .. } => ("dimension_mismatch", 1),
            InvalidInput(_) => ("invalid_input", 1),
        };
        JobError {
            code,
            exit,
            detail: e.to_string(),
        }
    }
}

impl JobSpec {
    /// Flags only apply to the commands that declare them.
    fn validate_options(&self) -> Result<(), JobError> {
        if self.options.convention.is_some() && self.command != Command::Transport {
            return Err(JobError::invalid(
                "--convention applies to the transport command only",
            ));
        }
        if self.options.cap.is_some() && self.command != Command::Spectrum {
            return Err(JobError::invalid(
                "--cap applies to the spectrum command only",
            ));
        }
        if self.options.seed.is_some() {
            eprintln!(
                "warning: --seed is reserved; all computations are deterministic and the seed is ignored"
            );
        }
        Ok(())
    }
}

/// Runs the job and writes its report; the `Ok` branch has already written
/// everything.
pub fn run(job: &JobSpec) -> Result<(), JobError> {
    job.validate_options()?;
    let raw = fs::read_to_string(&job.input_path)
        .map_err(|e| JobError::io(format!("{}: {e}", job.input_path.display())))?;
    let report = dispatch(job, &raw)?;
    write_output(job.output_path.as_deref(), &report)
}

fn dispatch(job: &JobSpec, raw: &str) -> Result<String, JobError> {
    match job.command {
        Command::Info => run_info(raw),
        Command::RiemannRoch => run_riemann_roch(raw),
        Command::Spectrum => run_spectrum(raw, job.options.cap),
        Command::Transport => run_transport(raw, job.options.convention.as_deref()),
        Command::Validate => run_validate(raw),
        Command::PullbackDemo => run_pullback(raw),
    }
}

fn parse<'a, T: serde::Deserialize<'a>>(raw: &'a str) -> Result<T, JobError> {
    serde_json::from_str(raw).map_err(JobError::parse)
}

fn run_info(raw: &str) -> Result<String, JobError> {
    let input: InfoInput = parse(raw)?;
    let cover = input
        .group_order
        .map(|order| {
            build_cover(
                input.surface.clone(),
                order,
                input.cover_volume,
                input.cyclic_quotient_free,
            )
        })
        .transpose()?
        .map(|c| CoverReport {
            group_order: c.group_order(),
            chi: c.cover_euler_characteristic(),
            genus: c.cover_genus(),
            sheet_counts: c.sheet_counts().to_vec(),
            cover_volume: c.cover_volume(),
            cyclic_quotient_free: c.cyclic_quotient_free(),
        });
    let report = InfoReport {
        chi_orb: input.surface.euler_characteristic(),
        deg_canonical_orb: input.surface.canonical_degree(),
        isotropy_lcm: input.surface.isotropy_lcm(),
        cover,
    };
    to_json_line(&report).map_err(JobError::parse)
}

fn run_riemann_roch(raw: &str) -> Result<String, JobError> {
    let input: RiemannRochInput = parse(raw)?;
    let bundle = input.bundle;
    let twist = input.q.map(|q| {
        let twisted = bundle.twist_by_canonical(q);
        TwistReport {
            q,
            deg_orb: twisted.orbifold_degree(),
            deg_smooth: twisted.smooth_degree(),
            euler_characteristic: twisted.riemann_roch(),
        }
    });
    let report = RiemannRochReport {
        deg_orb: bundle.orbifold_degree(),
        deg_smooth: bundle.smooth_degree(),
        euler_characteristic: bundle.riemann_roch(),
        twist,
    };
    to_json_line(&report).map_err(JobError::parse)
}

fn run_spectrum(raw: &str, cap: Option<u32>) -> Result<String, JobError> {
    let input: SpectrumInput = parse(raw)?;
    let cover = build_cover(
        input.bundle.base().clone(),
        input.group_order,
        input.cover_volume,
        input.cyclic_quotient_free,
    )?;
    let ladder = spectral_ladder_with_cap(
        &input.bundle,
        &cover,
        cap.unwrap_or(DEFAULT_FLAT_LADDER_CAP),
    )?;
    to_json_line(&ladder).map_err(JobError::parse)
}

fn run_transport(raw: &str, flag_convention: Option<&str>) -> Result<String, JobError> {
    let input: TransportInput = parse(raw)?;
    // the command-line flag overrides the file
    let convention = match flag_convention.or(input.convention.as_deref()) {
        Some(s) => SignConvention::from_str(s)?,
        None => SignConvention::default(),
    };
    let setup = TransportSetup::new(
        input.group_order,
        IntMatrix::from_rows(input.intersection_matrix)?,
        IntMatrix::from_rows(input.pushforward)?,
    )?;
    let table = conductance_table(&setup, convention)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|value| TaggedRational {
                    value,
                    unit: "e^2/h",
                })
                .collect()
        })
        .collect();
    let report = TransportReport {
        group_order: input.group_order,
        convention: convention.as_str(),
        table,
    };
    to_json_line(&report).map_err(JobError::parse)
}

fn run_validate(raw: &str) -> Result<String, JobError> {
    let input: ValidateInput = parse(raw)?;
    let report = validate_pillowcase(input.n, input.flux_quanta)?;
    match input.emit {
        EmitKind::Report => to_json_line(&report).map_err(JobError::parse),
        EmitKind::EigenvaluesCsv => Ok(eigenvalues_csv(&report.eigenvalues)),
    }
}

fn run_pullback(raw: &str) -> Result<String, JobError> {
    let input: PullbackInput = parse(raw)?;
    let base = EllipticPoint::on_unit_lattice(input.point.one, input.point.tau);
    let mut classes = Vec::with_capacity(input.n as usize);
    for l in 0..input.n {
        classes.push(elliptic_pullback_class(&base, input.n, l)?);
    }
    let all_equal = classes.windows(2).all(|w| w[0] == w[1]);
    let as_report = |p: &EllipticPoint| PointReport {
        one: p.coeff_one(),
        tau: p.coeff_tau(),
        lattice_scale: p.lattice_scale(),
    };
    let report = PullbackReport {
        n: input.n,
        base_point: as_report(&base),
        classes: classes.iter().map(as_report).collect(),
        all_equal,
    };
    to_json_line(&report).map_err(JobError::parse)
}

fn write_output(path: Option<&std::path::Path>, report: &str) -> Result<(), JobError> {
    match path {
        Some(p) => fs::write(p, report).map_err(|e| JobError::io(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(report.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(JobError::io)
        }
    }
}
