//! Command-line front end: validate triads, solve and classify, run the
//! catalog, run the matrix oracle, and export curve samples.
//!
//! Exit status: 0 on success, 1 when a computation ran but disagreed with
//! its expectation (catalog mismatch, oracle failure, failed validation),
//! 2 on usage errors.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hermann::oracle;
use hermann::solver;
use hermann::triad::{validate_multiplicities, Triad1, TriadDoc, TriadKind};

#[derive(Parser)]
#[command(
    name = "hermann",
    about = "Exact classification of harmonic and proper-biharmonic regular orbits \
             of cohomogeneity-one commutative Hermann actions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Triad selection shared by the triad-centric subcommands: either inline
/// flags or a JSON document.
#[derive(Args)]
struct TriadArgs {
    /// Triad kind: III-B1, I-BC1, II-BC1, III-BC1, ISO-A1, ISO-BC1
    #[arg(long, value_parser = parse_kind)]
    kind: Option<TriadKind>,
    /// m(α)
    #[arg(long, default_value_t = 0)]
    m1: u32,
    /// m(2α)
    #[arg(long, default_value_t = 0)]
    m2: u32,
    /// n(α)
    #[arg(long, default_value_t = 0)]
    n1: u32,
    /// n(2α)
    #[arg(long, default_value_t = 0)]
    n2: u32,
    /// Read the triad as a JSON document from this path ("-" for stdin)
    #[arg(long, value_name = "PATH", conflicts_with = "kind")]
    r#in: Option<String>,
}

fn parse_kind(s: &str) -> Result<TriadKind, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| format!("unknown triad kind `{s}`; expected one of III-B1, I-BC1, II-BC1, III-BC1, ISO-A1, ISO-BC1"))
}

impl TriadArgs {
    fn doc(&self) -> Result<TriadDoc> {
        if let Some(path) = &self.r#in {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
                buf
            } else {
                fs::read_to_string(path).with_context(|| format!("reading {path}"))?
            };
            return Ok(TriadDoc::from_json(&text)?);
        }
        let Some(kind) = self.kind else {
            bail!("either --kind or --in must be given");
        };
        Ok(TriadDoc { kind, m1: self.m1, m2: self.m2, n1: self.n1, n2: self.n2 })
    }

    fn triad(&self) -> Result<Triad1> {
        Ok(self.doc()?.to_triad()?)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON instead of a text summary
    #[arg(long)]
    json: bool,
    /// Write the document to this path instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, body: String) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, body).with_context(|| format!("writing {path:?}")),
            None => {
                println!("{body}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the symmetric-triad and multiplicity axioms of a triad
    Validate {
        #[command(flatten)]
        triad: TriadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Solve the harmonic and biharmonic conditions for a triad document
    Solve {
        #[command(flatten)]
        triad: TriadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify a triad given by flags (same output as `solve`)
    Classify {
        #[command(flatten)]
        triad: TriadArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify every catalog family over all admissible parameters
    Catalog {
        /// Upper bound on each of b, c, q
        #[arg(long, default_value_t = 6)]
        max_param: u32,
        /// Keep only instances with this b
        #[arg(long)]
        b: Option<u32>,
        /// Keep only instances with this c
        #[arg(long)]
        c: Option<u32>,
        /// Keep only instances with this q
        #[arg(long)]
        q: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Rebuild a case as a matrix Lie algebra and cross-check the closed forms
    Oracle {
        /// Which family to build: so | su
        #[arg(long, value_parser = ["so", "su"])]
        case: String,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        /// Number of regular sample angles
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Relative-deviation tolerance for the cross-check
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Cap on 1 + b + c
        #[arg(long, default_value_t = oracle::DEFAULT_SIZE_CAP)]
        size_cap: u32,
        /// RNG seed for the sample angles
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Also check the dual orbit at 5 deterministic angles
        #[arg(long)]
        duality: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample ‖B‖² and the tension coefficient on a grid inside the cell (CSV)
    Curve {
        #[command(flatten)]
        triad: TriadArgs,
        /// Number of grid points strictly inside the cell
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Emit CSV (the only curve format; present for symmetry)
        #[arg(long, default_value_t = true)]
        csv: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns `Ok(false)` when the computation ran but disagreed with its
/// expectation.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { triad, output } => {
            let t = triad.triad()?;
            if t.kind().is_isotropy() {
                // W = ∅: only the kind invariants apply, and the strict
                // constructor has already enforced them.
                let body = if output.json {
                    serde_json::to_string_pretty(&serde_json::json!({
                        "triad": TriadDoc::from(&t),
                        "passed": true,
                        "note": "isotropy kind: W = ∅, multiplicity pattern checked at construction",
                    }))?
                } else {
                    format!("{t}: pass (isotropy kind, pattern checked at construction)")
                };
                output.emit(body)?;
                return Ok(true);
            }
            let (data, mm) = t.to_triad_data()?;
            let triad_report = data.validate();
            let mult_report = validate_multiplicities(&data, &mm);
            let passed = triad_report.passed() && mult_report.passed();
            let body = if output.json {
                serde_json::to_string_pretty(&serde_json::json!({
                    "triad": TriadDoc::from(&t),
                    "symmetric_triad": triad_report,
                    "multiplicities": mult_report,
                    "passed": passed,
                }))?
            } else {
                format!(
                    "{t}\nsymmetric triad axioms:\n{triad_report}multiplicity axioms:\n{mult_report}overall: {}",
                    if passed { "pass" } else { "FAIL" }
                )
            };
            output.emit(body)?;
            Ok(passed)
        }
        Command::Solve { triad, output } | Command::Classify { triad, output } => {
            let t = triad.triad()?;
            let c = solver::classify(&t);
            let body = if output.json {
                serde_json::to_string_pretty(&c)?
            } else {
                render_classification(&c)
            };
            output.emit(body)?;
            Ok(true)
        }
        Command::Catalog { max_param, b, c, q, output } => {
            let mut report = solver::classify_catalog(max_param)?;
            if b.is_some() || c.is_some() || q.is_some() {
                use hermann::catalog::Params;
                report.instances.retain(|inst| match inst.row.params {
                    Params::None {} => b.is_none() && c.is_none() && q.is_none(),
                    Params::BC { b: ib, c: ic } => {
                        q.is_none() && b.is_none_or(|x| x == ib) && c.is_none_or(|x| x == ic)
                    }
                    Params::Q { q: iq } => {
                        b.is_none() && c.is_none() && q.is_none_or(|x| x == iq)
                    }
                });
            }
            let passed = report.passed();
            let body = if output.json {
                serde_json::to_string_pretty(&report)?
            } else {
                render_catalog(&report)
            };
            output.emit(body)?;
            Ok(passed)
        }
        Command::Oracle { case, b, c, samples, tolerance, size_cap, seed, duality, output } => {
            let triple = match case.as_str() {
                "so" => oracle::build_so_triad(b, c, size_cap)?,
                "su" => oracle::build_su_triad(b, c, size_cap)?,
                other => bail!("unknown oracle case `{other}`"),
            };
            let report = oracle::verify_closed_forms(&triple, samples, seed, tolerance)?;
            let mut passed = report.pass;
            let mut duality_reports = Vec::new();
            if duality {
                let triad = oracle::Decomposition::new(&triple, false)?.recovered_triad()?;
                for s in oracle::sample_angles(triad.fundamental_cell(), 5) {
                    let rep = oracle::verify_duality(&triple, s)?;
                    passed &= rep.b_norm_dev <= 1e-10 && rep.tension_dev <= 1e-10;
                    duality_reports.push(rep);
                }
            }
            let body = if output.json {
                let mut doc = serde_json::to_value(&report)?;
                if duality {
                    doc["duality"] = serde_json::to_value(&duality_reports)?;
                }
                serde_json::to_string_pretty(&doc)?
            } else {
                render_oracle(&report, &duality_reports)
            };
            output.emit(body)?;
            Ok(passed)
        }
        Command::Curve { triad, samples, csv: _, output } => {
            let t = triad.triad()?;
            if samples == 0 {
                bail!("--samples must be at least 1");
            }
            let (lo, hi) = t.fundamental_cell();
            let mut body = String::from("s_rad,b_norm_sq,tension_coeff\n");
            for i in 1..=samples {
                let s = lo + (hi - lo) * i as f64 / (samples + 1) as f64;
                let g = solver::evaluate_geometry(&t, s)?;
                body.push_str(&format!(
                    "{},{},{}\n",
                    fmt17(g.s),
                    fmt17(g.b_norm_sq),
                    fmt17(g.tension_coeff)
                ));
            }
            output.emit(body)?;
            Ok(true)
        }
    }
}

/// 17 significant digits: round-trips every f64 exactly.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn render_classification(c: &solver::Classification) -> String {
    let variable = match c.variable {
        solver::SolutionVariable::TanSqTheta => "tan²ϑ",
        solver::SolutionVariable::CotSqS => "cot²s",
    };
    let surds = |list: &[hermann::QuadraticSurd]| -> String {
        if list.is_empty() {
            "∅".to_string()
        } else {
            list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
        }
    };
    let mut out = String::new();
    out.push_str(&format!(
        "{}({},{},{},{})  [{variable}]\n",
        c.kind.label(),
        c.m1,
        c.m2,
        c.n1,
        c.n2
    ));
    out.push_str(&format!(
        "  harmonic:   {} = {}   (s = {})\n",
        variable,
        c.harmonic,
        fmt17(c.harmonic_angle_rad)
    ));
    out.push_str(&format!("  biharmonic: {}\n", surds(&c.biharmonic)));
    out.push_str(&format!("  proper:     {}\n", surds(&c.proper)));
    out.push_str(&format!(
        "  case:       {}   angles_rad: [{}]",
        c.case,
        c.angles_rad.iter().map(|a| fmt17(*a)).collect::<Vec<_>>().join(", ")
    ));
    out
}

fn render_catalog(report: &solver::CatalogReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "catalog with parameters ≤ {}: {} instances, {} families\n",
        report.max_param,
        report.instances.len(),
        report.family_count
    ));
    for (group, labels) in &report.families_by_group {
        out.push_str(&format!("  {group} ({}): {}\n", labels.len(), labels.join(" ")));
    }
    let mismatching: Vec<&solver::CatalogInstance> =
        report.instances.iter().filter(|i| !i.matches).collect();
    if mismatching.is_empty() {
        out.push_str("no mismatches");
    } else {
        out.push_str(&format!("{} MISMATCHES:\n", mismatching.len()));
        for inst in mismatching {
            out.push_str(&format!(
                "  {} ({}, {}, {}) expected {} got {}\n",
                inst.row.theorem_case,
                inst.row.group_g,
                inst.row.group_k1,
                inst.row.group_k2,
                inst.expected_group,
                inst.classification.case
            ));
        }
    }
    out
}

fn render_oracle(report: &oracle::OracleReport, duality: &[oracle::DualityReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{}(1+{}+{}): recovered multiplicities {:?}, catalog {:?}\n",
        report.case, report.b, report.c, report.recovered_mults, report.catalog_mults
    ));
    out.push_str(&format!(
        "  ⟨α,α⟩ recovered {} vs expected {}\n",
        fmt17(report.recovered_norm_alpha_sq),
        fmt17(report.expected_norm_alpha_sq)
    ));
    out.push_str(&format!(
        "  max relative deviation over {} samples: {:.3e} (‖B‖² {:.3e}, tension {:.3e})\n",
        report.samples, report.max_rel_dev, report.max_rel_dev_b_norm, report.max_rel_dev_tension
    ));
    for d in duality {
        out.push_str(&format!(
            "  duality at s = {:.6}: |Δ‖B‖²| = {:.3e}, |Δτ| = {:.3e}\n",
            d.s, d.b_norm_dev, d.tension_dev
        ));
    }
    out.push_str(if report.pass { "PASS" } else { "FAIL" });
    out
}
