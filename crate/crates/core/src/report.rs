//! Sweep drivers behind the command line and their rendered
//! reports. Reports carry no timing data so equal configurations give
//! byte-identical output.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deformation::{central_element, certify_fiber, common_levi_match, default_t_values, FiberCertificate};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, rational_strings, Rational};
use crate::oracle::{derive_seed, parabolic_from_flag};
use crate::partitions::{dual_partition, enumerate_orbits, orbit_dimension, LieTypeRank, OrbitLabel, Partition};
use crate::polarizations::{
    orbit_q, InjectivityReport, LeviClass, PolarizationClass, QFilter, RichardsonOutcome, TheoremReport, Verdict,
    Verifier,
};

pub const SCHEMA_VERSION: &str = "orbit-resolve-report/1";

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Orbits,
    Verify,
    Deform,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Orbits => "orbits",
            Command::Verify => "verify",
            Command::Deform => "deform",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "markdown" | "md" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::Config(format!("unknown output format {s:?} (json, markdown, csv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub type_rank: LieTypeRank,
    pub orbit_filter: Option<Partition>,
    pub seed: u64,
    /// Samples per round of Richardson sampling.
    pub trials: usize,
    /// Fiber samples per characteristic-polynomial check.
    pub samples: usize,
    #[serde(with = "rational_strings")]
    pub t_values: Vec<Rational>,
    pub output_format: OutputFormat,
    /// Parity filter; anything but `exact` is a negative control.
    #[serde(default)]
    pub q_filter: QFilter,
}

impl RunConfig {
    pub fn new(type_rank: LieTypeRank) -> Self {
        Self {
            type_rank,
            orbit_filter: None,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            samples: DEFAULT_SAMPLES,
            t_values: default_t_values(),
            output_format: OutputFormat::Json,
            q_filter: QFilter::Exact,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 3 {
            return Err(Error::Config(format!("trials must be at least 3, got {}", self.trials)));
        }
        if self.samples < 3 {
            return Err(Error::Config(format!("samples must be at least 3, got {}", self.samples)));
        }
        if !self.t_values.iter().any(Zero::is_zero) || !self.t_values.iter().any(|t| !t.is_zero()) {
            return Err(Error::Config("t-values must contain 0 and a nonzero value".to_string()));
        }
        if let Some(d) = &self.orbit_filter {
            if d.total() != self.type_rank.ambient_dim() {
                return Err(Error::TotalMismatch {
                    type_rank: self.type_rank.to_string(),
                    partition: d.to_string(),
                    expected: self.type_rank.ambient_dim(),
                    found: d.total(),
                });
            }
        }
        Ok(())
    }
}

/// Parses a comma-separated list of exact rationals, e.g. `0,1,-1,1/2`.
pub fn parse_t_values(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|v| parse_rational(v.trim()).map_err(Error::from))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub orbit: OrbitLabel,
    pub dimension: usize,
    pub dual_partition: Partition,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFailure {
    #[serde(with = "crate::exact::rational_string")]
    pub t: Rational,
    pub check: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationRow {
    pub polarizations: Vec<PolarizationClass>,
    pub levi_class: LeviClass,
    pub richardson: Option<Partition>,
    pub dim_l: usize,
    pub dim_pu: usize,
    pub certificates: Vec<FiberCertificate>,
    pub failures: Vec<CertificateFailure>,
}

/// Pairs of parabolics whose generic fibers are compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviMatch {
    pub levi_class: LeviClass,
    pub first: PolarizationClass,
    pub second: PolarizationClass,
    pub matched: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub orbits_checked: usize,
    pub pass: usize,
    pub fail: usize,
    pub no_resolution: usize,
    pub inconclusive: usize,
    pub injectivity_failures: usize,
    pub certificates_checked: usize,
    pub certificate_failures: usize,
    pub levi_mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: String,
    pub command: Command,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbits: Vec<OrbitRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theorem_reports: Vec<TheoremReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub injectivity: Vec<InjectivityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deformations: Vec<DeformationRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levi_matches: Vec<LeviMatch>,
    pub summary: Summary,
    /// Wall-clock time, only when explicitly requested; breaks byte-identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl SweepReport {
    fn new(command: Command, config: &RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            config: config.clone(),
            orbits: Vec::new(),
            theorem_reports: Vec::new(),
            injectivity: Vec::new(),
            deformations: Vec::new(),
            levi_matches: Vec::new(),
            summary: Summary::default(),
            duration_ms: None,
        }
    }

    /// 0 all passed, 1 any failure, 3 inconclusive results but no failure.
    pub fn exit_code(&self) -> i32 {
        let s = &self.summary;
        if s.fail + s.injectivity_failures + s.certificate_failures + s.levi_mismatches > 0 {
            1
        } else if s.inconclusive > 0 {
            3
        } else {
            0
        }
    }
}

fn selected_orbits(config: &RunConfig) -> Result<Vec<OrbitLabel>> {
    let all = enumerate_orbits(config.type_rank);
    let Some(d) = &config.orbit_filter else {
        return Ok(all);
    };
    let chosen: Vec<OrbitLabel> = all.into_iter().filter(|o| &o.partition == d).collect();
    if chosen.is_empty() {
        return Err(Error::InvalidPartition {
            type_rank: config.type_rank.to_string(),
            partition: d.to_string(),
        });
    }
    Ok(chosen)
}

pub fn cmd_orbits(config: &RunConfig) -> Result<SweepReport> {
    config.validate()?;
    let t = config.type_rank;
    let mut report = SweepReport::new(Command::Orbits, config);
    for orbit in selected_orbits(config)? {
        report.orbits.push(OrbitRow {
            dimension: orbit_dimension(t, &orbit.partition)?,
            dual_partition: dual_partition(&orbit.partition),
            q: orbit_q(t, &orbit.partition),
            orbit,
        });
    }
    report.summary.orbits_checked = report.orbits.len();
    Ok(report)
}

pub fn cmd_verify(config: &RunConfig) -> Result<SweepReport> {
    config.validate()?;
    let t = config.type_rank;
    let orbits = selected_orbits(config)?;
    let verifier = Verifier::new(t, config.seed, config.trials)?.with_filter(config.q_filter);
    let mut report = SweepReport::new(Command::Verify, config);
    for orbit in &orbits {
        let tr = verifier.verify_theorem(orbit)?;
        let s = &mut report.summary;
        match tr.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => s.fail += 1,
            Verdict::NoResolution => s.no_resolution += 1,
            Verdict::Inconclusive => s.inconclusive += 1,
        }
        report.theorem_reports.push(tr);
    }
    report.summary.orbits_checked = orbits.len();
    if matches!(t.family(), crate::Family::B | crate::Family::C) {
        for q in verifier.q_values() {
            let inj = verifier.spaltenstein_injectivity_check(q)?;
            if !inj.injective {
                report.summary.injectivity_failures += 1;
            }
            report.injectivity.push(inj);
        }
    }
    Ok(report)
}

pub fn cmd_deform(config: &RunConfig) -> Result<SweepReport> {
    config.validate()?;
    let verifier = Verifier::new(config.type_rank, config.seed, config.trials)?;
    let alg = verifier.algebra();
    let rows = verifier
        .entries()
        .par_iter()
        .enumerate()
        .map(|(idx, entry)| -> Result<(DeformationRow, _)> {
            let pd = parabolic_from_flag(alg, &entry.flag_type)?;
            let ce = central_element(alg, &pd)?;
            let richardson = match &entry.richardson {
                RichardsonOutcome::Found(p) => Some(p.clone()),
                RichardsonOutcome::Inconclusive(_) => None,
            };
            let certificates: Vec<FiberCertificate> = config
                .t_values
                .iter()
                .enumerate()
                .map(|(ti, t)| {
                    let seed = derive_seed(config.seed, idx as u64, ti as u64 + 0x100);
                    certify_fiber(alg, &ce, t, config.samples, seed, richardson.as_ref())
                })
                .collect();
            let failures = certificates
                .iter()
                .flat_map(|c| {
                    c.failures().into_iter().map(|check| CertificateFailure {
                        t: c.t.clone(),
                        check: check.to_string(),
                    })
                })
                .collect();
            let row = DeformationRow {
                polarizations: entry.classes.clone(),
                levi_class: entry.levi.clone(),
                richardson,
                dim_l: pd.dim_l(),
                dim_pu: pd.dim_pu(),
                certificates,
                failures,
            };
            Ok((row, ce))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = SweepReport::new(Command::Deform, config);
    let mut by_levi: BTreeMap<LeviClass, Vec<(PolarizationClass, usize)>> = BTreeMap::new();
    for (i, (row, _)) in rows.iter().enumerate() {
        for pc in &row.polarizations {
            by_levi.entry(row.levi_class.clone()).or_default().push((pc.clone(), i));
        }
    }
    for (levi, members) in by_levi {
        for (a, (pa, ia)) in members.iter().enumerate() {
            for (pb, ib) in &members[a + 1..] {
                report.levi_matches.push(LeviMatch {
                    levi_class: levi.clone(),
                    first: pa.clone(),
                    second: pb.clone(),
                    matched: common_levi_match(&rows[*ia].1, &rows[*ib].1),
                });
            }
        }
    }
    let s = &mut report.summary;
    s.certificates_checked = rows.iter().map(|(r, _)| r.certificates.len()).sum();
    s.certificate_failures = rows
        .iter()
        .map(|(r, _)| r.certificates.iter().filter(|c| !c.passed()).count())
        .sum();
    s.levi_mismatches = report.levi_matches.iter().filter(|m| !m.matched).count();
    // A flag type whose Richardson orbit stayed unsettled only weakens the
    // central-fiber check.
    s.inconclusive = rows.iter().filter(|(r, _)| r.richardson.is_none()).count();
    report.deformations = rows.into_iter().map(|(r, _)| r).collect();
    Ok(report)
}

pub fn run(command: Command, config: &RunConfig) -> Result<SweepReport> {
    match command {
        Command::Orbits => cmd_orbits(config),
        Command::Verify => cmd_verify(config),
        Command::Deform => cmd_deform(config),
    }
}

pub fn to_json(report: &SweepReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn from_json(s: &str) -> Result<SweepReport> {
    serde_json::from_str(s).map_err(|e| Error::Config(format!("malformed report: {e}")))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn bool_mark(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn to_markdown(report: &SweepReport) -> String {
    let t = report.config.type_rank;
    let mut md = String::new();
    let _ = writeln!(md, "# {} {}\n", report.command, t);
    let _ = writeln!(
        md,
        "seed {}, trials {}, samples {}, t-values {}\n",
        report.config.seed,
        report.config.trials,
        report.config.samples,
        join(&report.config.t_values, ", ")
    );
    if !report.orbits.is_empty() {
        md.push_str("| orbit | dim | dual | q |\n|---|---|---|---|\n");
        for r in &report.orbits {
            let _ = writeln!(md, "| {} | {} | {} | {} |", r.orbit, r.dimension, r.dual_partition, r.q);
        }
        md.push('\n');
    }
    if !report.theorem_reports.is_empty() {
        md.push_str("| orbit | dim | verdict | polarizations | Levi classes |\n|---|---|---|---|---|\n");
        for r in &report.theorem_reports {
            let levis: Vec<String> = r.levi_classes.iter().map(|g| g.levi_class.describe(t)).collect();
            let _ = writeln!(
                md,
                "| {} | {} | {} | {} | {} |",
                r.orbit,
                r.orbit_dimension,
                r.verdict,
                join(&r.resolution_polarizations, " "),
                levis.join("; ")
            );
        }
        md.push('\n');
    }
    if !report.injectivity.is_empty() {
        md.push_str("| q | Levi classes | injective |\n|---|---|---|\n");
        for inj in &report.injectivity {
            let _ = writeln!(md, "| {} | {} | {} |", inj.q, inj.images.len(), bool_mark(inj.injective));
        }
        md.push('\n');
    }
    if !report.deformations.is_empty() {
        md.push_str("| parabolic | Levi | Richardson | dim p_u | t | bracket | tangent | charpoly | balance | structure |\n");
        md.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
        for row in &report.deformations {
            let rich = row.richardson.as_ref().map_or("?".to_string(), ToString::to_string);
            for c in &row.certificates {
                let tangent = if c.t.is_zero() { "-" } else { bool_mark(c.tangent_full) };
                let _ = writeln!(
                    md,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    join(&row.polarizations, " "),
                    row.levi_class.describe(t),
                    rich,
                    row.dim_pu,
                    c.t,
                    bool_mark(c.bracket_stable),
                    tangent,
                    bool_mark(c.charpoly_constant),
                    bool_mark(c.dimension_balanced),
                    bool_mark(c.fiber_structure)
                );
            }
        }
        md.push('\n');
    }
    let s = &report.summary;
    let _ = match report.command {
        Command::Orbits => writeln!(md, "{} orbits", s.orbits_checked),
        Command::Verify => writeln!(
            md,
            "{} orbits: PASS {}, FAIL {}, NO_RESOLUTION {}, INCONCLUSIVE {}; injectivity failures {}",
            s.orbits_checked, s.pass, s.fail, s.no_resolution, s.inconclusive, s.injectivity_failures
        ),
        Command::Deform => writeln!(
            md,
            "{} certificates, {} failed; Levi mismatches {}; unsettled Richardson orbits {}",
            s.certificates_checked, s.certificate_failures, s.levi_mismatches, s.inconclusive
        ),
    };
    md
}

pub fn to_csv(report: &SweepReport) -> Result<String> {
    let t = report.config.type_rank;
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
    match report.command {
        Command::Orbits => {
            w.write_record(["type_rank", "orbit", "dimension", "dual_partition", "q"]).map_err(io)?;
            for r in &report.orbits {
                w.write_record([
                    t.to_string(),
                    r.orbit.to_string(),
                    r.dimension.to_string(),
                    r.dual_partition.to_string(),
                    r.q.to_string(),
                ])
                .map_err(io)?;
            }
        }
        Command::Verify => {
            w.write_record(["type_rank", "orbit", "dimension", "verdict", "polarizations", "levi_classes"])
                .map_err(io)?;
            for r in &report.theorem_reports {
                let levis: Vec<String> = r.levi_classes.iter().map(|g| g.levi_class.describe(t)).collect();
                w.write_record([
                    t.to_string(),
                    r.orbit.to_string(),
                    r.orbit_dimension.to_string(),
                    r.verdict.to_string(),
                    join(&r.resolution_polarizations, " "),
                    levis.join("; "),
                ])
                .map_err(io)?;
            }
        }
        Command::Deform => {
            w.write_record([
                "type_rank",
                "parabolic",
                "levi",
                "richardson",
                "t",
                "bracket_stable",
                "tangent_full",
                "charpoly_constant",
                "dimension_balanced",
                "fiber_structure",
                "passed",
            ])
            .map_err(io)?;
            for row in &report.deformations {
                for c in &row.certificates {
                    w.write_record([
                        t.to_string(),
                        join(&row.polarizations, " "),
                        row.levi_class.describe(t),
                        row.richardson.as_ref().map_or(String::new(), ToString::to_string),
                        c.t.to_string(),
                        c.bracket_stable.to_string(),
                        c.tangent_full.to_string(),
                        c.charpoly_constant.to_string(),
                        c.dimension_balanced.to_string(),
                        c.fiber_structure.to_string(),
                        c.passed().to_string(),
                    ])
                    .map_err(io)?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render(report: &SweepReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(to_json(report)),
        OutputFormat::Markdown => Ok(to_markdown(report)),
        OutputFormat::Csv => to_csv(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(t: &str) -> RunConfig {
        RunConfig::new(t.parse().unwrap())
    }

    #[test]
    fn orbit_listing() {
        let r = cmd_orbits(&config("A2")).unwrap();
        let dims: Vec<usize> = r.orbits.iter().map(|o| o.dimension).collect();
        assert_eq!(dims, [6, 4, 0]);
        assert_eq!(cmd_orbits(&config("C2")).unwrap().orbits.len(), 4);
        assert!("D1".parse::<LieTypeRank>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = config("B2");
        c.samples = 2;
        assert!(matches!(cmd_deform(&c), Err(Error::Config(_))));
        let mut c = config("B2");
        c.t_values = parse_t_values("1,2").unwrap();
        assert!(c.validate().is_err());
        let mut c = config("C2");
        c.orbit_filter = Some("[3,1]".parse().unwrap());
        assert!(cmd_verify(&c).is_err());
    }

    #[test]
    fn verify_examples() {
        let mut c = config("C2");
        c.orbit_filter = Some("[2,2]".parse().unwrap());
        let r = cmd_verify(&c).unwrap();
        assert_eq!(r.theorem_reports[0].verdict, Verdict::Pass);
        assert_eq!(r.theorem_reports[0].resolution_polarizations.len(), 1);
        c.orbit_filter = Some("[1,1,1,1]".parse().unwrap());
        assert_eq!(cmd_verify(&c).unwrap().theorem_reports[0].verdict, Verdict::NoResolution);
    }

    #[test]
    fn json_round_trip_and_formats() {
        let mut c = config("C2");
        c.t_values = parse_t_values("0,1").unwrap();
        let r = cmd_deform(&c).unwrap();
        assert_eq!(r.exit_code(), 0, "{}", to_markdown(&r));
        assert_eq!(from_json(&to_json(&r)).unwrap(), r);
        let v = cmd_verify(&config("C2")).unwrap();
        assert_eq!(from_json(&to_json(&v)).unwrap(), v);
        assert!(to_csv(&v).unwrap().starts_with("type_rank,orbit"));
        assert!(to_markdown(&v).contains("| [2,2] |"));
    }

    #[test]
    fn exit_codes() {
        let mut r = cmd_orbits(&config("A1")).unwrap();
        assert_eq!(r.exit_code(), 0);
        r.summary.inconclusive = 1;
        assert_eq!(r.exit_code(), 3);
        r.summary.fail = 1;
        assert_eq!(r.exit_code(), 1);
    }
}
