//! The `syzal` command-line tool.
//!
//! Exit codes: 0 success, 1 a verification or coherence check failed,
//! 2 bad input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::equivariant::{self, AbReport, GkmGraph};
use crate::error::Error;
use crate::groebner::{self, ModuleOrder};
use crate::homalg::{self, HilbertSeries, ModuleFingerprint};
use crate::io;
use crate::modfree::ModulePresentation;
use crate::oracle::{self, OracleConfig};
use crate::resolution::{self, FreeResolution, ResolveOptions, Strategy};
use crate::ring::{MonomialOrder, RingSpec};

#[derive(Debug, Parser)]
#[command(name = "syzal", version, about = "Graded modules over Q[t1..tr]: resolutions, Ext and Atiyah-Bredon reports")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Re-verify invariants (homogeneity, δ∘δ = 0, exactness, S-pairs,
    /// oracle dimensions) before reporting.
    #[arg(long, global = true)]
    pub check: bool,
    /// Oracle degree window `LOW,HIGH`; overrides SYZAL_ORACLE_WINDOW.
    #[arg(long, global = true, value_name = "LOW,HIGH")]
    pub window: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Presentation file.
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Glex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Kernels,
    Schreyer,
}

/// What to report about a built-in fixture.
#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum View {
    /// Fingerprint of H_T^*.
    Ht,
    /// Fingerprint of H^T_*.
    Hht,
    /// Ext^j(H_T^*, R) for all j.
    Ext,
    /// Atiyah-Bredon report.
    #[default]
    Ab,
    /// Syzygy order of H_T^*.
    SyzygyOrder,
    /// Presentation file of H_T^*.
    Present,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal graded free resolution and Betti table.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long, value_enum, default_value = "kernels")]
        strategy: StrategyArg,
    },
    /// Ext^j(M, R); all j when --j is absent.
    Ext {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        j: Option<i64>,
    },
    /// Hilbert series.
    Hilbert {
        #[command(flatten)]
        input: Input,
    },
    /// Depth and Krull dimension.
    Depth {
        #[command(flatten)]
        input: Input,
    },
    /// Whether the module is Cohen-Macaulay.
    Cm {
        #[command(flatten)]
        input: Input,
    },
    /// Largest j such that M is a j-th syzygy.
    SyzygyOrder {
        #[command(flatten)]
        input: Input,
    },
    /// Koszul resolution of the residue field.
    Koszul {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Toric example from its Stanley-Reisner presentation.
    Toric {
        #[arg(long)]
        r: usize,
        #[arg(value_enum, default_value_t)]
        view: View,
    },
    /// The mutant example.
    Mutant {
        #[arg(value_enum, default_value_t)]
        view: View,
    },
    /// Homogeneous space with H_T^* = R / (t1..ti).
    Homogeneous {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        i: usize,
        #[arg(value_enum, default_value_t)]
        view: View,
    },
    /// Module of a GKM graph (file, or the hypercube with --hypercube).
    Gkm {
        #[arg(long, conflicts_with = "hypercube", required_unless_present = "hypercube")]
        file: Option<PathBuf>,
        #[arg(long)]
        hypercube: bool,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Formal dimension n, giving H^T_* = H_T^*[-n]; required for `ab`
        /// and `hht`.
        #[arg(long)]
        dim: Option<i64>,
        #[arg(value_enum, default_value = "ht")]
        view: View,
    },
    /// Atiyah-Bredon report from presentation files.
    Ab {
        /// Presentation of H^T_*.
        #[arg(long)]
        hht: PathBuf,
        /// Presentation of H_T^*, enabling the augmented positions.
        #[arg(long)]
        ht: Option<PathBuf>,
    },
    /// Degreewise dimensions by brute-force linear algebra.
    Oracle {
        #[command(flatten)]
        input: Input,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::RouteDisagreement(_) | Error::Inconsistent(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Report {
    text: String,
    json: Value,
    /// Failed checks; any entry makes the exit code 1.
    failures: Vec<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, failures: Vec::new() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(rep) => {
            let code = if rep.failures.is_empty() { 0 } else { 1 };
            let stdout = if cli.json {
                let mut doc = io::envelope(name, rep.json);
                if cli.check {
                    doc["checks"] = json!({ "passed": rep.failures.is_empty(), "failures": rep.failures });
                }
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            } else {
                let mut t = rep.text;
                if cli.check && rep.failures.is_empty() {
                    t.push_str("checks: ok\n");
                }
                t
            };
            let stderr = rep.failures.iter().map(|f| format!("check failed: {f}\n")).collect();
            Outcome { code, stdout, stderr }
        }
        Err(Failure::Input(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Check(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("check failed: {m}\n") },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Resolve { .. } => "resolve",
        Command::Ext { .. } => "ext",
        Command::Hilbert { .. } => "hilbert",
        Command::Depth { .. } => "depth",
        Command::Cm { .. } => "cm",
        Command::SyzygyOrder { .. } => "syzygy-order",
        Command::Koszul { .. } => "koszul",
        Command::Toric { .. } => "toric",
        Command::Mutant { .. } => "mutant",
        Command::Homogeneous { .. } => "homogeneous",
        Command::Gkm { .. } => "gkm",
        Command::Ab { .. } => "ab",
        Command::Oracle { .. } => "oracle",
    }
}

fn read_file(path: &PathBuf) -> Run<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Run<ModulePresentation> {
    let text = read_file(path)?;
    io::read_presentation(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn window(cli: &Cli, m: &ModulePresentation) -> Run<OracleConfig> {
    Ok(match &cli.window {
        Some(s) => {
            let (lo, hi) = oracle::parse_window(s)?;
            OracleConfig::new(m.ring(), lo, hi)?
        }
        None => OracleConfig::from_env(m)?,
    })
}

fn execute(cli: &Cli) -> Run<Report> {
    match &cli.command {
        Command::Resolve { input, order, strategy } => {
            let m = load(&input.file)?;
            let opts = ResolveOptions {
                strategy: match strategy {
                    StrategyArg::Kernels => Strategy::Kernels,
                    StrategyArg::Schreyer => Strategy::SchreyerFrame,
                },
                order: match order {
                    OrderArg::Grevlex => MonomialOrder::GRevLex,
                    OrderArg::Glex => MonomialOrder::GLex,
                },
                minimize: true,
            };
            let res = resolution::resolve_with(&m, m.ring().r(), opts)?;
            let mut rep = resolution_report(&res);
            if cli.check {
                rep.failures = check_module(cli, &m)?;
                rep.failures.extend(res.verify().err().map(|e| e.to_string()));
            }
            Ok(rep)
        }
        Command::Ext { input, j } => {
            let m = load(&input.file)?;
            let js: Vec<usize> = match j {
                Some(j) => {
                    homalg::ext(&m, *j)?;
                    vec![*j as usize]
                }
                None => (0..=m.ring().r()).collect(),
            };
            ext_report(cli, &m, &js)
        }
        Command::Hilbert { input } => {
            let m = load(&input.file)?;
            let hs = homalg::hilbert_series(&m)?;
            let cfg = window(cli, &m)?;
            let (lo, hi) = cfg.window();
            let coeffs = hs.coefficients(lo, hi);
            let mut text = format!("HS = {hs}\n");
            let _ = writeln!(text, "dims [{lo}, {hi}]: {}", dims_line(coeffs.iter().map(|(q, c)| (*q, *c))));
            let mut rep = Report::new(
                text,
                json!({ "hilbert": hs, "window": [lo, hi], "dims": coeffs.iter().map(|(q, c)| [*q, *c]).collect::<Vec<_>>() }),
            );
            if cli.check {
                rep.failures = check_module(cli, &m)?;
            }
            Ok(rep)
        }
        Command::Depth { input } => {
            let m = load(&input.file)?;
            let (depth, dim) = homalg::depth_dim(&m)?;
            let mut rep = Report::new(format!("depth {depth}\ndim {dim}\n"), json!({ "depth": depth, "dim": dim }));
            if cli.check {
                rep.failures = check_module(cli, &m)?;
                let pd = homalg::projective_dimension(&m)?;
                if depth + pd != m.ring().r() {
                    rep.failures.push(format!("depth {depth} + pd {pd} ≠ r"));
                }
            }
            Ok(rep)
        }
        Command::Cm { input } => {
            let m = load(&input.file)?;
            let cm = homalg::is_cohen_macaulay(&m)?;
            let mut rep = Report::new(format!("cohen-macaulay {cm}\n"), json!({ "cohen_macaulay": cm }));
            if cli.check {
                rep.failures = check_module(cli, &m)?;
            }
            Ok(rep)
        }
        Command::SyzygyOrder { input } => {
            let m = load(&input.file)?;
            syzygy_report(cli, &m)
        }
        Command::Koszul { r, d } => {
            let ring = RingSpec::new(*r, *d)?;
            let res = resolution::koszul_complex(&ring);
            let mut rep = resolution_report(&res);
            if cli.check {
                for (i, pair) in res.maps().windows(2).enumerate() {
                    if !pair[0].compose(&pair[1])?.is_zero() {
                        rep.failures.push(format!("δ_{} δ_{} ≠ 0", i + 1, i + 2));
                    }
                }
                rep.failures.extend(res.verify().err().map(|e| e.to_string()));
                if res.euler_characteristic() != HilbertSeries::of_residue_field(&ring, 0) {
                    rep.failures.push("Euler characteristic differs from HS(k)".into());
                }
            }
            Ok(rep)
        }
        Command::Toric { r, view } => {
            if *r == 0 {
                return Err(Failure::Input("--r must be at least 1".into()));
            }
            let ht = equivariant::toric_ht(*r)?;
            let hht = equivariant::toric_hht(*r)?;
            fixture_view(cli, &ht, Some(&hht), *view)
        }
        Command::Mutant { view } => {
            fixture_view(cli, &equivariant::mutant_ht(), Some(&equivariant::mutant_hht()), *view)
        }
        Command::Homogeneous { r, i, view } => {
            let (ht, hht) = equivariant::homogeneous_space(*r, *i)?;
            fixture_view(cli, &ht, Some(&hht), *view)
        }
        Command::Gkm { file, hypercube, r, d, dim, view } => {
            let ring = RingSpec::new(*r, *d)?;
            let graph = if *hypercube {
                if *d != 2 {
                    return Err(Failure::Input("--hypercube needs --d 2".into()));
                }
                GkmGraph::hypercube(*r)
            } else {
                let path = file.as_ref().expect("clap enforces --file");
                let text = read_file(path)?;
                GkmGraph::parse(&ring, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
            };
            let ht = equivariant::gkm_module(&graph)?;
            let hht = dim.map(|n| ht.shift(-n));
            fixture_view(cli, &ht, hht.as_ref(), *view)
        }
        Command::Ab { hht, ht } => {
            let hht = load(hht)?;
            let ht = ht.as_ref().map(load).transpose()?;
            ab_view(cli, &hht, ht.as_ref())
        }
        Command::Oracle { input } => {
            let m = load(&input.file)?;
            let cfg = window(cli, &m)?;
            let dims = oracle::oracle_dims(&m, &cfg);
            let (lo, hi) = cfg.window();
            let text = format!("dims [{lo}, {hi}]: {}\n", dims_line(dims.iter().map(|(q, n)| (*q, *n as i64))));
            let mut rep = Report::new(
                text,
                json!({ "window": [lo, hi], "dims": dims.iter().map(|(q, n)| json!([q, n])).collect::<Vec<_>>() }),
            );
            if cli.check {
                let hs = homalg::hilbert_series(&m)?;
                for (q, n) in &dims {
                    if hs.coefficient(*q) != *n as i64 {
                        rep.failures.push(format!("degree {q}: oracle {n}, Hilbert series {}", hs.coefficient(*q)));
                    }
                }
            }
            Ok(rep)
        }
    }
}

fn dims_line(dims: impl Iterator<Item = (i64, i64)>) -> String {
    dims.map(|(_, n)| n.to_string()).collect::<Vec<_>>().join(" ")
}

fn resolution_report(res: &FreeResolution) -> Report {
    let betti = res.betti();
    let hs = res.euler_characteristic();
    let mut text = betti.to_text();
    let _ = writeln!(text, "length {}", res.length());
    let _ = writeln!(text, "HS = {hs}");
    let ranks: Vec<usize> = res.modules().iter().map(|f| f.rank()).collect();
    let json = json!({
        "betti": betti,
        "ranks": ranks,
        "length": res.length(),
        "minimal": res.is_minimal(),
        "hilbert": hs,
    });
    Report::new(text, json)
}

fn fingerprint_json(f: &ModuleFingerprint) -> Value {
    let mut v = serde_json::to_value(f).expect("serializable");
    if let Some(l) = f.label() {
        v["label"] = json!(l);
    }
    v
}

/// Independent check of every module-level invariant the engine relies on.
fn check_module(cli: &Cli, m: &ModulePresentation) -> Run<Vec<String>> {
    let ring = m.ring();
    let mut failures = Vec::new();
    if let Err(e) = m.relations().require_homogeneous(ring) {
        failures.push(e.to_string());
        return Ok(failures);
    }
    let gb = groebner::buchberger(ring, m.generators(), &m.relations().columns(), &ModuleOrder::pot(MonomialOrder::GRevLex))?;
    if !gb.verify_s_pairs() {
        failures.push("Gröbner basis has an S-pair with nonzero remainder".into());
    }
    let res = homalg::minimal_resolution(m)?;
    if let Err(e) = res.verify() {
        failures.push(e.to_string());
    }
    let cfg = window(cli, m)?;
    let hs = res.euler_characteristic();
    for (q, n) in oracle::oracle_dims(m, &cfg) {
        if hs.coefficient(q) != n as i64 {
            failures.push(format!("degree {q}: oracle {n}, Hilbert series {}", hs.coefficient(q)));
        }
    }
    Ok(failures)
}

fn ext_report(cli: &Cli, m: &ModulePresentation, js: &[usize]) -> Run<Report> {
    let res = homalg::minimal_resolution(m)?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for &j in js {
        let e = homalg::ext_from_resolution(&res, j)?;
        let f = homalg::fingerprint(&e)?;
        let _ = writeln!(text, "Ext^{j} = {f}");
        let mut v = fingerprint_json(&f);
        v["j"] = json!(j);
        if cli.check {
            let cfg = window(cli, &e)?;
            let from_pres = oracle::oracle_dims(&e, &cfg);
            let middle = res.modules().get(j).map(|f| f.dual()).unwrap_or_default();
            let a = res.map(j).map(|x| x.transpose());
            let b = res.map(j + 1).map(|x| x.transpose());
            let from_complex = oracle::homology_dims(m.ring(), &middle, a.as_ref(), b.as_ref(), &cfg);
            if from_pres != from_complex {
                failures.push(format!("Ext^{j}: presentation and dual complex dimensions differ"));
            }
            for (q, n) in &from_pres {
                if f.hilbert.coefficient(*q) != *n as i64 {
                    failures.push(format!("Ext^{j} degree {q}: oracle {n}, Hilbert series {}", f.hilbert.coefficient(*q)));
                }
            }
            let (lo, hi) = cfg.window();
            v["oracle"] = json!({ "window": [lo, hi], "dims": from_pres.iter().map(|(q, n)| json!([q, n])).collect::<Vec<_>>() });
        }
        entries.push(v);
    }
    if cli.check {
        failures.extend(check_module(cli, m)?);
    }
    Ok(Report { text, json: json!({ "ext": entries }), failures })
}

fn syzygy_report(cli: &Cli, m: &ModulePresentation) -> Run<Report> {
    let order = homalg::syzygy_order(m)?;
    let mut rep = Report::new(format!("syzygy order {order}\n"), json!({ "syzygy_order": order }));
    if cli.check {
        rep.failures = check_module(cli, m)?;
    }
    Ok(rep)
}

fn fixture_view(cli: &Cli, ht: &ModulePresentation, hht: Option<&ModulePresentation>, view: View) -> Run<Report> {
    let need_hht = || hht.ok_or_else(|| Failure::Input("this view needs H^T_* (pass --dim)".into()));
    match view {
        View::Ht | View::Hht => {
            let m = if matches!(view, View::Ht) { ht } else { need_hht()? };
            let f = homalg::fingerprint(m)?;
            let mut rep = Report::new(format!("{f}\nHS = {}\n{}", f.hilbert, f.betti.to_text()), fingerprint_json(&f));
            if cli.check {
                rep.failures = check_module(cli, m)?;
            }
            Ok(rep)
        }
        View::Ext => ext_report(cli, ht, &(0..=ht.ring().r()).collect::<Vec<_>>()),
        View::Ab => ab_view(cli, need_hht()?, Some(ht)),
        View::SyzygyOrder => syzygy_report(cli, ht),
        View::Present => {
            let text = io::write_presentation(ht);
            let json: Value = serde_json::from_str(&text).expect("valid JSON");
            Ok(Report::new(text, json))
        }
    }
}

fn ab_view(cli: &Cli, hht: &ModulePresentation, ht: Option<&ModulePresentation>) -> Run<Report> {
    let rep = equivariant::ab_report(hht, ht)?;
    let mut failures = rep.coherence_failures();
    if cli.check {
        failures.extend(check_module(cli, hht)?);
        if let Some(ht) = ht {
            failures.extend(check_module(cli, ht)?);
        }
    }
    Ok(Report { text: ab_text(&rep), json: ab_json(&rep), failures })
}

fn ab_text(rep: &AbReport) -> String {
    let mut text = String::new();
    if let Some(a) = &rep.augmented {
        let _ = writeln!(text, "H^-1 : HS = {}", a.minus_one);
        let _ = writeln!(text, "H^0  : HS = {} (augmented)", a.zero);
    }
    for (j, f) in rep.positions.iter().enumerate() {
        let _ = writeln!(text, "H^{j}(AB) = {f}");
    }
    if let Some(a) = &rep.augmented {
        let _ = writeln!(text, "syzygy order {}", a.syzygy_order);
        let _ = writeln!(text, "exact through {}", rep.exact_through().unwrap());
        let _ = writeln!(text, "predicted exact through {}", rep.predicted_exact_through().unwrap());
    }
    text
}

fn ab_json(rep: &AbReport) -> Value {
    let positions: Vec<Value> = rep.positions.iter().map(fingerprint_json).collect();
    let mut v = json!({ "r": rep.r, "positions": positions });
    if let Some(a) = &rep.augmented {
        v["augmented"] = json!({
            "minus_one": a.minus_one,
            "zero": a.zero,
            "syzygy_order": a.syzygy_order,
        });
        v["flags"] = json!({
            "nonzero_positions": rep.nonzero_positions(),
            "exact_through": rep.exact_through(),
            "predicted_exact_through": rep.predicted_exact_through(),
            "two_adjacent_ok": rep.two_adjacent_ok(),
            "coherent": rep.coherence_failures().is_empty(),
        });
    }
    v
}
