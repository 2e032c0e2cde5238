mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hopfcross::algebra::{verify_algebra, verify_hopf, Report as AxiomReport};
use hopfcross::complex::{check_convergence, SpectralSequence, Variance};
use hopfcross::crossed::{build_crossed_product, verify_crossed_axioms, CrossedError, CrossedProduct};
use hopfcross::homology::{
    compare_filtrations, counit_character, e2_identification, hat_complex, hochschild, overline_complex, tensor_bimodule,
    E2Report, HomologyError, Module, Side,
};
use hopfcross::resolution::{
    check_shuffle, cocycle_is_central, compare_constructions, is_group_algebra, BarResolution, Comparison,
    Construction, IdentityFailure, XResolution,
};
use hopfcross::{BimoduleData, FieldSpec};
use thiserror::Error;

use problem::{builtin_problem, emit, parse_field, parse_problem, ModuleSpec, ProblemError, ProblemFile, DEFAULT_CAP};
use report::*;

/// Caps above this need `--allow-large-cap`.
const LARGE_CAP: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "hopfcross", version, about = "Exact Hochschild (co)homology of Hopf crossed products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every algebra, Hopf, crossed-product and bimodule axiom.
    Verify(Common),
    /// Hochschild homology H_n(E, M) for n < cap.
    Homology(Common),
    /// Hochschild cohomology H^n(E, M) for n < cap.
    Cohomology(Common),
    /// One page of the spectral sequence of the filtered small complex.
    Spectral {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        page: usize,
        #[arg(long)]
        cohomology: bool,
    },
    /// E¹ and E² against the A-side homology and the H-side bar complex.
    E2Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cohomology: bool,
    },
    /// Small complexes against the bar complex, dims and E¹/E² pages.
    OracleCompare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Resolution, homotopy and comparison-map identities.
    ResolutionCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Tor^E(M, N) from the `tor` section (trivial modules when A = k).
    Tor(Common),
    /// Write a built-in example as a problem file.
    Emit {
        #[arg(long)]
        builtin: String,
        #[arg(long, value_parser = field_arg)]
        field: Option<FieldSpec>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file (JSON).
    #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
    problem: Option<PathBuf>,
    /// Built-in example instead of a file.
    #[arg(long)]
    builtin: Option<String>,
    /// Field override: q or fp:P.
    #[arg(long, value_parser = field_arg)]
    field: Option<FieldSpec>,
    /// Degree cap; degrees below it are exact, the cap itself is kernel-only.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    allow_large_cap: bool,
    /// Recompute through the bar complex as well.
    #[arg(long)]
    oracle: bool,
    /// Write the JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print JSON instead of the table.
    #[arg(long)]
    json: bool,
}

fn field_arg(s: &str) -> Result<FieldSpec, String> {
    parse_field(s).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] ProblemError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("cannot write {0}: {1}")]
    Write(String, std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            _ => 2,
        }
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::ModuleShape(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<CrossedError> for CliError {
    fn from(e: CrossedError) -> Self {
        match &e {
            CrossedError::Structure(_) => CliError::Usage(e.to_string()),
            CrossedError::AxiomViolation(r) => {
                let ws: Vec<String> = r.violations.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect();
                CliError::Failure(format!("axioms fail, run `verify` for the full report: {}", ws.join("; ")))
            }
            CrossedError::NotInvertible => CliError::Failure(e.to_string()),
        }
    }
}

struct Loaded {
    problem: ProblemFile,
    source: String,
    cap: usize,
}

impl Common {
    fn load(&self) -> Result<Loaded, CliError> {
        let (problem, source) = match (&self.problem, &self.builtin) {
            (Some(p), _) => (parse_problem(p, self.field)?, p.display().to_string()),
            (None, Some(b)) => (
                builtin_problem(b, self.field.unwrap_or(FieldSpec::Rationals))?,
                format!("builtin:{b}"),
            ),
            (None, None) => return Err(CliError::Usage("give a problem file or --builtin".into())),
        };
        let cap = self.cap.or(problem.options.cap).unwrap_or(DEFAULT_CAP);
        Ok(Loaded { problem, source, cap })
    }

    fn oracle(&self, l: &Loaded) -> bool {
        self.oracle || l.problem.options.oracle
    }
}

impl Loaded {
    fn build(&self) -> Result<CrossedProduct, CliError> {
        let p = self.problem.parts.clone();
        Ok(build_crossed_product(p.a, p.h, p.action, p.cocycle)?)
    }

    fn bimodule(&self, cp: &CrossedProduct) -> Result<BimoduleData, CliError> {
        let m = self.problem.bimodule.clone().unwrap_or_else(|| BimoduleData::regular(&cp.e));
        let rep = m.verify(&cp.e);
        if !rep.passed() {
            let ws: Vec<String> = rep.violations.iter().map(|v| format!("{} at {:?}", v.axiom, v.witness)).collect();
            return Err(CliError::Failure(format!("bimodule axioms fail: {}", ws.join("; "))));
        }
        Ok(m)
    }

    fn report(&self, command: &str, cap: usize, passed: bool, body: Body) -> Report {
        Report {
            command: command.into(),
            source: self.source.clone(),
            field: self.problem.field.to_string(),
            cap,
            trusted_through: cap.checked_sub(1),
            kernel_only_degree: cap,
            passed,
            body,
        }
    }
}

/// Largest chain-group dimension in degree `cap`, for the warning.
fn projected_dim(p: &ProblemFile, cap: usize) -> u128 {
    let a = p.parts.a.dim() as u128;
    let h = p.parts.h.dim() as u128;
    let m = p.bimodule.as_ref().map_or(a * h, |b| b.dim as u128);
    m.saturating_mul((a * h - 1).saturating_pow(cap as u32))
}

fn guard_cap(l: &Loaded, cap: usize, allow: bool) -> Result<(), CliError> {
    if cap == 0 {
        return Err(CliError::Usage("cap must be at least 1".into()));
    }
    if cap > LARGE_CAP {
        let d = projected_dim(&l.problem, cap);
        eprintln!("warning: cap {cap} above {LARGE_CAP}; the bar complex reaches dimension {d} in degree {cap}");
        if !allow {
            return Err(CliError::Usage(format!("cap {cap} needs --allow-large-cap")));
        }
    }
    Ok(())
}

fn section(name: &str, r: AxiomReport) -> AxiomSection {
    AxiomSection {
        structure: name.into(),
        checked: r.checked,
        violations: r
            .violations
            .iter()
            .map(|v| ViolationOut {
                axiom: v.axiom.to_string(),
                witness: v.witness.clone(),
            })
            .collect(),
    }
}

fn verify(l: &Loaded) -> Result<Report, CliError> {
    let p = &l.problem.parts;
    let mut sections = vec![section("algebra", verify_algebra(&p.a)), section("hopf", verify_hopf(&p.h))];
    let crossed = verify_crossed_axioms(&p.a, &p.h, &p.action, &p.cocycle).map_err(|e| CliError::Usage(e.to_string()))?;
    sections.push(section("crossed", crossed));
    let mut invertible = None;
    let mut dim_e = None;
    if sections.iter().all(|s| s.violations.is_empty()) {
        let cp = l.build()?;
        invertible = Some(cp.conv_inverse.is_some());
        dim_e = Some(cp.dim_e());
        let m = l.problem.bimodule.clone().unwrap_or_else(|| BimoduleData::regular(&cp.e));
        m.check_shape(cp.dim_e(), cp.field()).map_err(|e| CliError::Usage(e.to_string()))?;
        sections.push(section("bimodule", m.verify(&cp.e)));
    }
    let passed = sections.iter().all(|s| s.violations.is_empty());
    Ok(l.report(
        "verify",
        l.cap,
        passed,
        Body::Verify(VerifyBody {
            sections,
            convolution_invertible: invertible,
            dim_e,
        }),
    ))
}

fn homology(l: &Loaded, variance: Variance, oracle: bool) -> Result<Report, CliError> {
    let cp = l.build()?;
    let m = l.bimodule(&cp)?;
    let rep = hochschild(&cp, &m, variance, l.cap, oracle)?;
    let agrees = rep.oracle_agrees();
    Ok(l.report(
        &variance_name(variance),
        l.cap,
        agrees != Some(false),
        Body::Homology(HomologyBody {
            variance: variance_name(variance),
            dims: rep.dims,
            cycles_at_cap: rep.cycles_at_cap,
            bar_dims: rep.bar_dims,
            oracle_agrees: agrees,
        }),
    ))
}

fn spectral(l: &Loaded, page: usize, variance: Variance) -> Result<Report, CliError> {
    if page == 0 {
        return Err(CliError::Usage("pages start at 1".into()));
    }
    let cp = l.build()?;
    let m = l.bimodule(&cp)?;
    let (fc, complex) = if cp.conv_inverse.is_some() {
        (overline_complex(&cp, &m, variance, l.cap)?, "overline")
    } else {
        (hat_complex(&cp, &m, variance, l.cap)?, "hat")
    };
    let table = cells(&SpectralSequence::new(&fc).page(page));
    let conv = check_convergence(&fc).map_err(HomologyError::from)?;
    let passed = conv.passed();
    Ok(l.report(
        "spectral",
        l.cap,
        passed,
        Body::Spectral(SpectralBody {
            variance: variance_name(variance),
            complex: complex.into(),
            page,
            table,
            convergence: Convergence {
                homology: conv.homology,
                infinity_totals: conv.infinity_totals,
                passed,
            },
        }),
    ))
}

fn e2_body(r: &E2Report) -> E2Body {
    E2Body {
        variance: variance_name(r.variance),
        e1: cells(&r.e1),
        e2: cells(&r.e2),
        expected_e1: cells_rs(&r.expected_e1),
        expected_e2: cells_rs(&r.expected_e2),
        mismatches: mismatches(&r.mismatches),
        convergence: Convergence {
            homology: r.homology.clone(),
            infinity_totals: r.infinity_totals.clone(),
            passed: r.homology == r.infinity_totals,
        },
    }
}

fn e2_check(l: &Loaded, variance: Variance) -> Result<Report, CliError> {
    let cp = l.build()?;
    let m = l.bimodule(&cp)?;
    let r = e2_identification(&cp, &m, variance, l.cap)?;
    Ok(l.report("e2-check", l.cap, r.passed(), Body::E2Check(e2_body(&r))))
}

fn oracle_compare(l: &Loaded, max_degree: usize) -> Result<Report, CliError> {
    let cp = l.build()?;
    let m = l.bimodule(&cp)?;
    let cap = max_degree + 1;
    let mut routes = Vec::new();
    for v in [Variance::Homological, Variance::Cohomological] {
        let rep = hochschild(&cp, &m, v, cap, true)?;
        let pages = compare_filtrations(&cp, &m, v, cap)?;
        routes.push(RouteComparison {
            variance: variance_name(v),
            agree: rep.oracle_agrees() == Some(true),
            small: rep.dims,
            bar: rep.bar_dims.unwrap_or_default(),
            page_mismatches: mismatches(&pages.mismatches),
        });
    }
    let passed = routes.iter().all(|r| r.agree && r.page_mismatches.is_empty());
    Ok(l.report("oracle-compare", cap, passed, Body::OracleCompare(OracleBody { max_degree, routes })))
}

fn check(identity: &str, degree: Option<usize>, r: Result<usize, IdentityFailure>) -> CheckOut {
    match r {
        Ok(n) => CheckOut {
            identity: identity.into(),
            degree,
            passed: true,
            checked: Some(n),
            witness: None,
        },
        Err(f) => CheckOut {
            identity: f.identity.into(),
            degree: Some(f.degree),
            passed: false,
            checked: None,
            witness: Some(f.witness),
        },
    }
}

fn resolution_check(l: &Loaded, max_degree: usize) -> Result<Report, CliError> {
    let cp = l.build()?;
    let rec = XResolution::new(&cp, Construction::Recursive);
    let closed = XResolution::new(&cp, Construction::Closed);
    let bar = BarResolution::new(&cp);
    let cmp = Comparison::new(&closed, &bar);
    let mut checks = Vec::new();
    for n in 1..=max_degree {
        checks.push(check("d∘d = 0 (recursive)", Some(n), rec.check_square_zero(n)));
        checks.push(check("d∘d = 0 (closed)", Some(n), closed.check_square_zero(n)));
        checks.push(check("component identities", Some(n), rec.check_component_identities(n)));
        checks.push(check("block sums", Some(n), closed.check_block_sums(n)));
        checks.push(check("b'∘b' = 0", Some(n), bar.check_square_zero(n)));
    }
    checks.push(check("closed d^l = recursive d^l", None, compare_constructions(&rec, &closed, max_degree)));
    for n in 0..max_degree {
        checks.push(check("dσ̄ + σ̄d = id", Some(n), rec.check_homotopy(n)));
        checks.push(check("σ̄ vanishing", Some(n), rec.check_sigma_bar_vanishing(n)));
        checks.push(check("ψφ = id", Some(n), cmp.check_psi_phi(n)));
        checks.push(check("b'ω + ωb' = φψ − id", Some(n), cmp.check_omega(n)));
    }
    for n in 1..max_degree {
        checks.push(check("bar homotopy", Some(n), bar.check_homotopy(n)));
        checks.push(check("φ, ψ chain maps", Some(n), cmp.check_chain_maps(n)));
    }
    if is_group_algebra(&cp) && cocycle_is_central(&cp) {
        checks.push(check("shuffle form", None, check_shuffle(&closed, max_degree)));
    }
    let filtration_grid: Vec<GridCell> = (0..=max_degree)
        .flat_map(|n| cmp.filtration_grid(n))
        .map(|c| GridCell {
            degree: c.degree,
            level: c.level,
            phi: c.phi,
            psi: c.psi,
            omega: c.omega,
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed) && filtration_grid.iter().all(|c| c.phi && c.psi && c.omega);
    Ok(l.report(
        "resolution-check",
        max_degree,
        passed,
        Body::ResolutionCheck(ResolutionBody {
            max_degree,
            checks,
            filtration_grid,
        }),
    ))
}

fn resolve_module(cp: &CrossedProduct, m: &ModuleSpec, side: Side) -> Result<(Module, String), CliError> {
    match m {
        ModuleSpec::Regular => Ok((Module::regular(cp, side), "regular".into())),
        ModuleSpec::Trivial => counit_character(cp)
            .map(|chi| (Module::from_character(&chi), "trivial".into()))
            .ok_or_else(|| CliError::Usage("the trivial module needs A = k; give explicit tor modules".into())),
        ModuleSpec::Explicit(m) => Ok((m.clone(), format!("explicit, dim {}", m.dim))),
    }
}

fn tor(l: &Loaded, oracle: bool) -> Result<Report, CliError> {
    let cp = l.build()?;
    let spec = l.problem.tor.clone().unwrap_or(problem::TorSpec {
        right: ModuleSpec::Trivial,
        left: ModuleSpec::Trivial,
    });
    let (right, rname) = resolve_module(&cp, &spec.right, Side::Right)?;
    let (left, lname) = resolve_module(&cp, &spec.left, Side::Left)?;
    let nm = tensor_bimodule(&cp, &right, &left)?;
    let rep = hochschild(&cp, &nm, Variance::Homological, l.cap, oracle)?;
    let spectral = match e2_identification(&cp, &nm, Variance::Homological, l.cap) {
        Ok(r) => Some(r),
        Err(HomologyError::NotInvertible) => None,
        Err(e) => return Err(e.into()),
    };
    let agrees = rep.oracle_agrees();
    let passed = agrees != Some(false) && spectral.as_ref().is_none_or(|r| r.passed());
    Ok(l.report(
        "tor",
        l.cap,
        passed,
        Body::Tor(TorBody {
            right: rname,
            left: lname,
            dims: rep.dims,
            bar_dims: rep.bar_dims,
            oracle_agrees: agrees,
            spectral: spectral.as_ref().map(e2_body),
        }),
    ))
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Write(path.display().to_string(), e))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (common, result) = match &cli.command {
        Command::Emit { builtin, field, output } => {
            let text = emit(&builtin_problem(builtin, field.unwrap_or(FieldSpec::Rationals))?);
            match output {
                Some(p) => write_out(p, &text)?,
                None => print!("{text}"),
            }
            return Ok(true);
        }
        Command::Verify(c) => {
            let l = c.load()?;
            (c, verify(&l))
        }
        Command::Homology(c) | Command::Cohomology(c) => {
            let l = c.load()?;
            guard_cap(&l, l.cap, c.allow_large_cap)?;
            let v = if matches!(cli.command, Command::Homology(_)) {
                Variance::Homological
            } else {
                Variance::Cohomological
            };
            (c, homology(&l, v, c.oracle(&l)))
        }
        Command::Spectral { common, page, cohomology } => {
            let l = common.load()?;
            guard_cap(&l, l.cap, common.allow_large_cap)?;
            (common, spectral(&l, *page, variance(*cohomology)))
        }
        Command::E2Check { common, cohomology } => {
            let l = common.load()?;
            guard_cap(&l, l.cap, common.allow_large_cap)?;
            (common, e2_check(&l, variance(*cohomology)))
        }
        Command::OracleCompare { common, max_degree } => {
            let l = common.load()?;
            guard_cap(&l, max_degree + 1, common.allow_large_cap)?;
            (common, oracle_compare(&l, *max_degree))
        }
        Command::ResolutionCheck { common, max_degree } => {
            let l = common.load()?;
            guard_cap(&l, (*max_degree).max(1), common.allow_large_cap)?;
            (common, resolution_check(&l, *max_degree))
        }
        Command::Tor(c) => {
            let l = c.load()?;
            guard_cap(&l, l.cap, c.allow_large_cap)?;
            (c, tor(&l, c.oracle(&l)))
        }
    };
    let report = result?;
    let json = report.to_json();
    if let Some(p) = &common.output {
        write_out(p, &json)?;
    }
    if common.json {
        print!("{json}");
    } else {
        print!("{}", report.human());
    }
    Ok(report.passed)
}

fn variance(cohomology: bool) -> Variance {
    if cohomology {
        Variance::Cohomological
    } else {
        Variance::Homological
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
