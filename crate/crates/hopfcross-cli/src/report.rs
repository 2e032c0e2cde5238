//! The machine-readable report and the human table rendered from it.

use std::collections::BTreeMap;
use std::fmt::Write;

use hopfcross::complex::{SpectralPage, Variance};
use hopfcross::homology::CellMismatch;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub source: String,
    pub field: String,
    pub cap: usize,
    /// Last degree whose value is fully determined.
    pub trusted_through: Option<usize>,
    /// Degree where only cycles are known, not boundaries coming in.
    pub kernel_only_degree: usize,
    pub passed: bool,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Verify(VerifyBody),
    Homology(HomologyBody),
    Spectral(SpectralBody),
    E2Check(E2Body),
    OracleCompare(OracleBody),
    ResolutionCheck(ResolutionBody),
    Tor(TorBody),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationOut {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSection {
    pub structure: String,
    pub checked: usize,
    pub violations: Vec<ViolationOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyBody {
    pub sections: Vec<AxiomSection>,
    /// Unset when the crossed-product axioms already fail.
    pub convolution_invertible: Option<bool>,
    pub dim_e: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyBody {
    pub variance: String,
    pub dims: Vec<usize>,
    pub cycles_at_cap: usize,
    pub bar_dims: Option<Vec<usize>>,
    pub oracle_agrees: Option<bool>,
}

/// One page entry: filtration `s`, complementary `r`, total `n = r + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub s: i64,
    pub r: i64,
    pub n: usize,
    pub dim: usize,
}

pub fn cells(page: &SpectralPage) -> Vec<Cell> {
    page.entries
        .iter()
        .map(|(&(p, n), &dim)| Cell {
            s: p,
            r: n as i64 - p,
            n,
            dim,
        })
        .collect()
}

pub fn cells_rs(t: &BTreeMap<(usize, usize), usize>) -> Vec<Cell> {
    let mut v: Vec<Cell> = t
        .iter()
        .map(|(&(r, s), &dim)| Cell {
            s: s as i64,
            r: r as i64,
            n: r + s,
            dim,
        })
        .collect();
    v.sort_by_key(|c| (c.s, c.n));
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergence {
    pub homology: Vec<usize>,
    pub infinity_totals: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralBody {
    pub variance: String,
    /// `overline` or, without an invertible cocycle, `hat`.
    pub complex: String,
    pub page: usize,
    pub table: Vec<Cell>,
    pub convergence: Convergence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchOut {
    pub page: usize,
    pub s: i64,
    pub n: usize,
    pub found: usize,
    pub expected: usize,
}

pub fn mismatches(ms: &[CellMismatch]) -> Vec<MismatchOut> {
    ms.iter()
        .map(|m| MismatchOut {
            page: m.page,
            s: m.p,
            n: m.n,
            found: m.found,
            expected: m.expected,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Body {
    pub variance: String,
    pub e1: Vec<Cell>,
    pub e2: Vec<Cell>,
    pub expected_e1: Vec<Cell>,
    pub expected_e2: Vec<Cell>,
    pub mismatches: Vec<MismatchOut>,
    pub convergence: Convergence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteComparison {
    pub variance: String,
    pub small: Vec<usize>,
    pub bar: Vec<usize>,
    pub agree: bool,
    pub page_mismatches: Vec<MismatchOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBody {
    pub max_degree: usize,
    pub routes: Vec<RouteComparison>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOut {
    pub identity: String,
    pub degree: Option<usize>,
    pub passed: bool,
    pub checked: Option<usize>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCell {
    pub degree: usize,
    pub level: usize,
    pub phi: bool,
    pub psi: bool,
    pub omega: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionBody {
    pub max_degree: usize,
    pub checks: Vec<CheckOut>,
    pub filtration_grid: Vec<GridCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorBody {
    pub right: String,
    pub left: String,
    pub dims: Vec<usize>,
    pub bar_dims: Option<Vec<usize>>,
    pub oracle_agrees: Option<bool>,
    /// Absent without an invertible cocycle.
    pub spectral: Option<E2Body>,
}

pub fn variance_name(v: Variance) -> String {
    match v {
        Variance::Homological => "homology".into(),
        Variance::Cohomological => "cohomology".into(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// Plain-text rendering; every number comes from the report itself.
    pub fn human(&self) -> String {
        let mut o = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(o, "{} [{}] over {}: {verdict}", self.command, self.source, self.field);
        let trusted = self.trusted_through.map_or("none".to_string(), |t| t.to_string());
        let _ = writeln!(
            o,
            "cap {}; trusted through degree {trusted}; degree {} kernel-only",
            self.cap, self.kernel_only_degree
        );
        match &self.body {
            Body::Verify(b) => {
                for s in &b.sections {
                    let _ = writeln!(o, "  {:<10} {:>6} identities, {} violation(s)", s.structure, s.checked, s.violations.len());
                    for v in &s.violations {
                        let _ = writeln!(o, "    {} at {:?}", v.axiom, v.witness);
                    }
                }
                if let Some(d) = b.dim_e {
                    let _ = writeln!(o, "  dim E = {d}");
                }
                if let Some(inv) = b.convolution_invertible {
                    let _ = writeln!(o, "  cocycle convolution invertible: {inv}");
                }
            }
            Body::Homology(b) => {
                dims_line(&mut o, &b.variance, &b.dims);
                let _ = writeln!(o, "  cycles at cap: {}", b.cycles_at_cap);
                if let Some(bd) = &b.bar_dims {
                    dims_line(&mut o, "bar oracle", bd);
                }
            }
            Body::Spectral(b) => {
                let _ = writeln!(o, "  E^{} of the filtered {} complex ({})", b.page, b.complex, b.variance);
                grid(&mut o, &b.table);
                convergence(&mut o, &b.convergence);
            }
            Body::E2Check(b) => e2_text(&mut o, b),
            Body::OracleCompare(b) => {
                for r in &b.routes {
                    let _ = writeln!(o, "  {} through degree {}", r.variance, b.max_degree);
                    dims_line(&mut o, "  small", &r.small);
                    dims_line(&mut o, "  bar", &r.bar);
                    let _ = writeln!(o, "    E1/E2 page mismatches: {}", r.page_mismatches.len());
                    for m in &r.page_mismatches {
                        mismatch_line(&mut o, m);
                    }
                }
            }
            Body::ResolutionCheck(b) => {
                for c in &b.checks {
                    let deg = c.degree.map_or(String::new(), |d| format!(" (degree {d})"));
                    let tag = if c.passed { "ok" } else { "FAILED" };
                    let _ = writeln!(o, "  {tag:<6} {}{deg}", c.identity);
                    if let Some(w) = &c.witness {
                        let _ = writeln!(o, "         witness: {w}");
                    }
                }
                let bad: Vec<_> = b.filtration_grid.iter().filter(|c| !(c.phi && c.psi && c.omega)).collect();
                let _ = writeln!(o, "  filtration grid: {} cells, {} failing", b.filtration_grid.len(), bad.len());
                for c in bad {
                    let _ = writeln!(o, "    degree {} level {}: phi {} psi {} omega {}", c.degree, c.level, c.phi, c.psi, c.omega);
                }
            }
            Body::Tor(b) => {
                let _ = writeln!(o, "  Tor(right = {}, left = {})", b.right, b.left);
                dims_line(&mut o, "dims", &b.dims);
                if let Some(bd) = &b.bar_dims {
                    dims_line(&mut o, "bar oracle", bd);
                }
                if let Some(e) = &b.spectral {
                    e2_text(&mut o, e);
                }
            }
        }
        o
    }
}

fn dims_line(o: &mut String, name: &str, dims: &[usize]) {
    let v: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(o, "  {name}: [{}]", v.join(", "));
}

fn mismatch_line(o: &mut String, m: &MismatchOut) {
    let _ = writeln!(o, "    E{} at s = {}, n = {}: found {}, expected {}", m.page, m.s, m.n, m.found, m.expected);
}

fn convergence(o: &mut String, c: &Convergence) {
    dims_line(o, "total", &c.homology);
    dims_line(o, "E^inf sums", &c.infinity_totals);
    let _ = writeln!(o, "  convergence: {}", if c.passed { "pass" } else { "FAIL" });
}

fn e2_text(o: &mut String, b: &E2Body) {
    let _ = writeln!(o, "  E1 ({})", b.variance);
    grid(o, &b.e1);
    let _ = writeln!(o, "  E2");
    grid(o, &b.e2);
    let _ = writeln!(o, "  page mismatches against the A-side and H-side computation: {}", b.mismatches.len());
    for m in &b.mismatches {
        mismatch_line(o, m);
    }
    convergence(o, &b.convergence);
}

/// Rows `r` from the top, columns `s`.
fn grid(o: &mut String, cells: &[Cell]) {
    if cells.is_empty() {
        let _ = writeln!(o, "    (empty)");
        return;
    }
    let smin = cells.iter().map(|c| c.s).min().unwrap_or(0);
    let smax = cells.iter().map(|c| c.s).max().unwrap_or(0);
    let rmin = cells.iter().map(|c| c.r).min().unwrap_or(0);
    let rmax = cells.iter().map(|c| c.r).max().unwrap_or(0);
    let at: BTreeMap<(i64, i64), usize> = cells.iter().map(|c| ((c.s, c.r), c.dim)).collect();
    for r in (rmin..=rmax).rev() {
        let _ = write!(o, "    r={r:<3}|");
        for s in smin..=smax {
            match at.get(&(s, r)) {
                Some(d) => {
                    let _ = write!(o, "{d:>5}");
                }
                None => o.push_str("    ."),
            }
        }
        o.push('\n');
    }
    let _ = write!(o, "          ");
    for s in smin..=smax {
        let _ = write!(o, "{:>5}", format!("s={s}"));
    }
    o.push('\n');
}
