use std::fmt::Write;
use std::time::Instant;

use schouten_core::classify::{canonical_pair, classify, supported_pairs, MetricVariant};
use schouten_core::constraints::{assemble_system, solve_small, system_vars, verify_family, FamilyParams, Strategy};
use schouten_core::curvature::CurvatureReport;
use schouten_core::error::GeometryError;
use schouten_core::groebner::GbConfig;
use schouten_core::poly::MonomialOrder;
use schouten_core::segre::SegreType;

use crate::input::{InputDocument, ParseError};
use crate::report::{AnalysisReport, FamilySection};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// An identity check failed.
    pub const CHECK_FAILED: i32 = 1;
    /// Unreadable or malformed input, bad arguments.
    pub const PARSE: i32 = 2;
    pub const JACOBI: i32 = 3;
    /// Degenerate or asymmetric metric.
    pub const METRIC: i32 = 4;
    pub const ZERO_PARAMETER: i32 = 5;
    pub const UNSUPPORTED_SEGRE: i32 = 6;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError { code: exit::PARSE, message: format!("parse error: {e}") }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        let code = match &e {
            GeometryError::JacobiViolated(_) => exit::JACOBI,
            GeometryError::DegenerateMetric | GeometryError::AsymmetricMetric => exit::METRIC,
            GeometryError::ZeroFamilyParameter => exit::ZERO_PARAMETER,
            GeometryError::UnsupportedSegre(_) => exit::UNSUPPORTED_SEGRE,
            _ => exit::PARSE,
        };
        let mut message = e.to_string();
        if code == exit::UNSUPPORTED_SEGRE {
            message.push_str(&format!("; supported: {}", supported_pairs().join(" ")));
        }
        CliError { code, message }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub tolerance: f64,
    pub gb_budget: usize,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { tolerance: 1e-9, gb_budget: 100_000, timing: false }
    }
}

fn jacobi_message(doc: &InputDocument) -> Option<CliError> {
    let alg = doc.algebra().ok()?;
    let rep = alg.jacobi_check();
    if rep.ok {
        return None;
    }
    let mut message = format!("Jacobi identity fails for {} triple(s)", rep.violations.len());
    for v in &rep.violations {
        let (i, j, k) = v.triple;
        let res: Vec<String> = v.residual.iter().map(|x| x.to_string()).collect();
        let _ = write!(message, "\n  ({}, {}, {}): residual [{}]", i + 1, j + 1, k + 1, res.join(", "));
    }
    Some(CliError { code: exit::JACOBI, message })
}

pub fn analyze(doc: &InputDocument, opts: &Options) -> Result<AnalysisReport, CliError> {
    let start = Instant::now();
    let alg = doc.algebra()?;
    if let Some(e) = jacobi_message(doc) {
        return Err(e);
    }
    let g = doc.metric()?;
    let rep = CurvatureReport::compute(&alg, &g)?;
    let c = classify(&rep, &g, doc.field_sqrt)?;
    let mut out = AnalysisReport::build(&alg, &g, doc.field_sqrt, &rep, &c, opts.tolerance);
    if opts.timing {
        out.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(out)
}

pub fn family(p: &FamilyParams, opts: &Options) -> Result<AnalysisReport, CliError> {
    let start = Instant::now();
    let fr = verify_family(p)?;
    let mut out = AnalysisReport::build(&fr.algebra, &fr.metric, 3, &fr.curvature, &fr.classification, opts.tolerance);
    out.family = Some(FamilySection {
        a: (&p.a).into(),
        delta: p.delta,
        eps: [p.eps1, p.eps2, p.eps3],
        metric_variant: p.variant.name().to_string(),
        rho1: (&fr.expected[0]).into(),
        rho2: (&fr.expected[1]).into(),
        alpha: (&fr.expected[2]).into(),
        beta: (&fr.expected[3]).into(),
        ricci_matches: fr.ricci_matches,
        eigen_matches: fr.eigen_matches,
    });
    if opts.timing {
        out.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(out)
}

/// The system dump, optionally followed by a solver section.
pub fn gen_system(
    segre: &str,
    signs: [i8; 4],
    variant: MetricVariant,
    solve: Option<Strategy>,
    opts: &Options,
) -> Result<String, CliError> {
    let t = SegreType::parse(segre)?;
    let pair = canonical_pair(&t, signs, variant)?;
    let sys = assemble_system(&pair);
    let mut out = sys.dump();
    if let Some(strategy) = solve {
        let cfg = GbConfig { order: MonomialOrder::GrevLex, budget: opts.gb_budget };
        let name = match strategy {
            Strategy::LinearThenGb => "linear-then-gb",
            Strategy::GbOnly => "gb-only",
        };
        let rep = solve_small(&sys.all_equations(), &sys.assumptions, strategy, &cfg)
            .map_err(|e| CliError { code: exit::PARSE, message: e.to_string() })?;
        let vs = system_vars();
        let _ = writeln!(out, "[solve] {name}");
        if let Some(lin) = &rep.linear {
            let zeros: Vec<&str> = lin.forced_zero.iter().map(|&v| vs.name(v)).collect();
            let _ = writeln!(out, "# linear rank {}, forced zero: {}", lin.rank, zeros.join(" "));
        }
        match &rep.basis {
            Some(basis) => {
                let _ = writeln!(out, "# groebner basis, {} elements", basis.len());
                for b in basis {
                    let _ = writeln!(out, "{}", vs.render(b, MonomialOrder::GrevLex));
                }
            }
            None => {
                let _ = writeln!(out, "# budget of {} reduction steps exhausted", opts.gb_budget);
            }
        }
    }
    Ok(out)
}

/// Pass/fail lines and whether both identities hold.
pub fn check_identities(doc: &InputDocument, opts: &Options) -> Result<(bool, String), CliError> {
    let rep = analyze(doc, opts)?;
    Ok((rep.identities.pass(), crate::report::identity_lines(&rep.identities)))
}
