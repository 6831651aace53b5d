//! Batch front end. Every command reads configs, runs per config and emits
//! one report `{tool_version, manifest, results[]}`.
//!
//! Exit codes: 0 all pass, 1 verification failure, 2 configuration error,
//! 3 resource error. With several kinds of trouble in one batch the code is
//! the first of 2, 3, 1 that occurs.

use crate::ambient::Q;
use crate::base_system::{validate_qebs, QebsConfig};
use crate::error::{Error, Result};
use crate::presentation::{emit_sr, emit_sr_sharp, emit_tsr, RelationSet};
use crate::quantum_torus::{compare_q_one, verify_q, QMode};
use crate::roots::{self, RootWindow};
use crate::unfold::{self, auto_height, Realization};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "erskit", version, about = "Elliptic root systems, their presentations and realizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Config files (JSON)
    #[arg(long = "config", value_name = "FILE", num_args = 1..)]
    pub configs: Vec<PathBuf>,
    /// Reporting window M,N: |δ-degree| ≤ M, |a-coefficient| ≤ N
    #[arg(long, value_name = "M,N", default_value = "4,4", value_parser = parse_window)]
    pub window: (i64, i64),
    /// Extra generation margin beyond the window
    #[arg(long, value_name = "P", default_value_t = 2)]
    pub pad: i64,
    /// Graded height for the loop realization (default: automatic)
    #[arg(long, value_name = "H")]
    pub height: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report (and exports) here instead of stdout
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Preset {
    #[value(name = "sr")]
    #[serde(rename = "sr")]
    Sr,
    #[value(name = "sr-sharp")]
    #[serde(rename = "sr-sharp")]
    SrSharp,
    #[value(name = "tsr")]
    #[serde(rename = "tsr")]
    Tsr,
}

impl Preset {
    fn emit(self, config: &QebsConfig) -> RelationSet {
        match self {
            Preset::Sr => emit_sr(config),
            Preset::SrSharp => emit_sr_sharp(config),
            Preset::Tsr => emit_tsr(config),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Preset::Sr => "sr",
            Preset::SrSharp => "sr-sharp",
            Preset::Tsr => "tsr",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank-one and rank-two classification tables
    Classify(Common),
    /// R(k,g) on the window, sorted
    Roots(Common),
    /// QEBS axioms and the EBS checks on the window
    VerifyEbs(Common),
    /// Handy datum: Ī, Ā, Ī^odd, ε̄ and the HD report
    Unfold {
        #[command(flatten)]
        common: Common,
        /// Also run the n-word sweep over the window
        #[arg(long)]
        transport: bool,
        /// δ- and a-degree the sweep may use beyond the window
        #[arg(long, default_value_t = 1)]
        reach: i64,
    },
    /// Substitute the loop realization into a relation preset
    VerifyPi {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Preset::Sr)]
        preset: Preset,
    },
    /// The quantum-torus realization for A_l^(1,1)
    QtorusVerify {
        #[command(flatten)]
        common: Common,
        /// Use A_l^(1) with k ≡ 1, g ≡ ∅ instead of --config
        #[arg(long)]
        rank: Option<usize>,
        /// Specialize q to an exact rational p/r instead of keeping it formal
        #[arg(long, value_name = "P/R", allow_hyphen_values = true)]
        q_numeric: Option<String>,
    },
    /// Emit a relation preset
    Relations {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Preset::Sr)]
        preset: Preset,
    },
    /// (X, S, L, E) data for D_(l+1)^(2)
    Ears(Common),
    /// Write roots, relations, handy data and EARS data to --out
    Export {
        #[command(flatten)]
        common: Common,
        /// Relation preset to export
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long)]
        roots: bool,
        #[arg(long)]
        handy: bool,
        #[arg(long)]
        ears: bool,
    },
    /// Every applicable verifier per config
    Verify(Common),
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (m, n) = s.split_once(',').ok_or_else(|| format!("expected M,N, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(m)?, p(n)?))
}

fn parse_q(s: &str) -> Result<Q> {
    let q: Q = match s.split_once('/') {
        Some((p, r)) => {
            let p = p.trim().parse::<i64>().map_err(|e| Error::config(format!("--q-numeric {s:?}: {e}")))?;
            let r = r.trim().parse::<i64>().map_err(|e| Error::config(format!("--q-numeric {s:?}: {e}")))?;
            if r == 0 {
                return Err(Error::config("--q-numeric has a zero denominator"));
            }
            Q::new(p, r)
        }
        None => Q::from_integer(s.trim().parse::<i64>().map_err(|e| Error::config(format!("--q-numeric {s:?}: {e}")))?),
    };
    if q == Q::from_integer(0) {
        return Err(Error::config("q must be nonzero"));
    }
    Ok(q)
}

#[derive(Serialize, Debug, Clone)]
pub struct Manifest {
    pub command: String,
    pub configs: Vec<String>,
    pub window: [i64; 2],
    pub pad: i64,
    pub height: Option<usize>,
    pub format: Format,
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub options: serde_json::Map<String, Value>,
}

#[derive(Serialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Serialize, Debug, Clone)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        let (kind, exit_code) = match e {
            Error::Config(_) => ("config", 2),
            Error::Domain(_) => ("domain", 2),
            Error::Io(_) => ("io", 2),
            Error::Json(_) => ("json", 2),
            Error::Resource(_) => ("resource", 3),
            Error::Internal(_) => ("internal", 1),
        };
        ErrorInfo { kind, message: e.to_string(), exit_code }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ConfigResult {
    pub config: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub data: Value,
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub tool_version: &'static str,
    pub manifest: Manifest,
    pub results: Vec<ConfigResult>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        let codes: Vec<i32> = self
            .results
            .iter()
            .map(|r| match (&r.error, r.status) {
                (Some(e), _) => e.exit_code,
                (None, Status::Fail) => 1,
                _ => 0,
            })
            .collect();
        [2, 3, 1].into_iter().find(|c| codes.contains(c)).unwrap_or(0)
    }
}

/// One unit of work: a config to load, or a config built in place.
#[derive(Clone)]
struct Input {
    label: String,
    name: String,
    source: Source,
}

#[derive(Clone)]
enum Source {
    File(PathBuf),
    Built(QebsConfig),
}

impl Input {
    fn load(&self) -> Result<QebsConfig> {
        match &self.source {
            Source::Built(c) => Ok(c.clone()),
            Source::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::config(format!("{}: {e}", p.display())))?;
                QebsConfig::from_json(&text)
            }
        }
    }
}

fn inputs(common: &Common) -> Vec<Input> {
    common
        .configs
        .iter()
        .map(|p| Input {
            label: p.display().to_string(),
            name: p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            source: Source::File(p.clone()),
        })
        .collect()
}

fn window(common: &Common) -> Result<RootWindow> {
    RootWindow::new(common.window.0, common.window.1, common.pad)
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

/// (pass, data) for one config.
type Outcome = Result<(bool, Value)>;

/// Per-config work; the second argument is the config's file stem.
type Job = Box<dyn Fn(&QebsConfig, &str) -> Outcome + Sync>;

fn require_qebs(config: &QebsConfig) -> Result<()> {
    match validate_qebs(config).first_failure() {
        Some(f) => Err(Error::config(format!("{} fails: {}", f.axiom, f.detail))),
        None => Ok(()),
    }
}

fn classify(config: &QebsConfig, w: RootWindow) -> Outcome {
    require_qebs(config)?;
    let space = config.space();
    let mut rank1 = Vec::new();
    let mut seen = Vec::new();
    for i in 0..config.nodes() {
        if seen.contains(&space.node_class(i)) {
            continue;
        }
        seen.push(space.node_class(i));
        rank1.push(to_value(&roots::classify_rank1(config, i, w)?)?);
    }
    let mut pass = true;
    let mut rank2 = Vec::new();
    for (a, b) in roots::rank2_pairs(config) {
        match roots::classify_rank2(config, a, b, w) {
            Ok(c) => rank2.push(to_value(&c)?),
            Err(Error::Domain(msg)) => {
                pass = false;
                rank2.push(json!({"alpha": a, "beta": b, "case": null, "error": msg}));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((pass, json!({"rank1": rank1, "rank2": rank2})))
}

fn root_rows(config: &QebsConfig, w: RootWindow) -> Result<Vec<roots::RootEntry>> {
    let set = roots::generate(config, w)?;
    let mut rows: Vec<roots::RootEntry> = set.roots().iter().filter(|e| set.in_window(&e.lattice())).cloned().collect();
    rows.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(rows)
}

fn roots_cmd(config: &QebsConfig, w: RootWindow) -> Outcome {
    let rows = root_rows(config, w)?;
    Ok((true, json!({"window": w, "count": rows.len(), "roots": rows})))
}

fn verify_ebs(config: &QebsConfig, w: RootWindow) -> Outcome {
    let qebs = validate_qebs(config);
    let ebs = roots::check_ebs(&roots::generate_pebs(config, w)?);
    Ok((ebs.pass, json!({"qebs": qebs, "ebs": ebs})))
}

fn unfold_cmd(config: &QebsConfig, w: RootWindow, transport: bool, reach: i64, height: Option<usize>) -> Outcome {
    require_qebs(config)?;
    let hd = unfold::unfold_datum(config)?;
    let mut pass = hd.pass();
    let mut data = json!({"handy": hd});
    if transport && pass {
        let rep = unfold::transport(config, w, reach, height)?;
        pass &= rep.pass;
        data["transport"] = to_value(&rep)?;
    }
    Ok((pass, data))
}

fn verify_pi_cmd(config: &QebsConfig, preset: Preset, height: Option<usize>) -> Outcome {
    require_qebs(config)?;
    let set = preset.emit(config);
    let need = auto_height(&set);
    let h = height.unwrap_or(need);
    if h < need {
        return Err(Error::resource(format!("height {h} is below the {need} needed by the longest relation")));
    }
    let rep = Realization::new(config, h)?.verify(&set)?;
    Ok((rep.pass, to_value(&rep)?))
}

fn qtorus(config: &QebsConfig, mode: QMode) -> Outcome {
    require_qebs(config)?;
    let rep = verify_q(config, mode)?;
    let mut pass = rep.pass;
    let mut data = json!({"verify": rep});
    if mode == QMode::Formal {
        let s = compare_q_one(config)?;
        pass &= s.agree;
        data["q_one"] = to_value(&s)?;
    }
    Ok((pass, data))
}

fn relations_cmd(config: &QebsConfig, preset: Preset, format: Format) -> Outcome {
    let set = preset.emit(config);
    let data = match format {
        Format::Latex => Value::String(set.to_latex()),
        _ => set.to_json(),
    };
    Ok((true, data))
}

fn ears_cmd(config: &QebsConfig, w: RootWindow) -> Outcome {
    require_qebs(config)?;
    let e = roots::ears_data(config, w)?;
    Ok((e.window_matches, to_value(&e)?))
}

fn write_json(path: &Path, v: &impl Serialize) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

struct ExportWhat {
    preset: Option<Preset>,
    roots: bool,
    handy: bool,
    ears: bool,
}

fn export_cmd(config: &QebsConfig, stem: &str, w: RootWindow, out: Option<&Path>, what: &ExportWhat) -> Outcome {
    let out = out.ok_or_else(|| Error::config("export needs --out DIR"))?;
    std::fs::create_dir_all(out)?;
    let all = what.preset.is_none() && !what.roots && !what.handy && !what.ears;
    let mut files = Vec::new();
    if all || what.roots {
        let rows = root_rows(config, w)?;
        let p = out.join(format!("{stem}.roots.json"));
        write_json(&p, &json!({"window": w, "count": rows.len(), "roots": rows}))?;
        files.push(p);
    }
    let presets: Vec<Preset> = match what.preset {
        Some(p) => vec![p],
        None if all => vec![Preset::Sr, Preset::SrSharp, Preset::Tsr],
        None => vec![],
    };
    for p in presets {
        let path = out.join(format!("{stem}.relations.{}.json", p.name()));
        write_json(&path, &p.emit(config).to_json())?;
        files.push(path);
    }
    if all || what.handy {
        let p = out.join(format!("{stem}.handy.json"));
        write_json(&p, &unfold::unfold_datum(config)?)?;
        files.push(p);
    }
    if all || what.ears {
        match roots::ears_data(config, w) {
            Ok(e) => {
                let p = out.join(format!("{stem}.ears.json"));
                write_json(&p, &e)?;
                files.push(p);
            }
            // only D_(l+1)^(2) with g in {∅, 2Z+1} has EARS data; skip quietly unless asked
            Err(Error::Domain(_)) if all => {}
            Err(e) => return Err(e),
        }
    }
    // names relative to --out keep the report identical across output directories
    let files: Vec<String> = files.iter().filter_map(|p| p.file_name()).map(|f| f.to_string_lossy().into_owned()).collect();
    Ok((true, json!({"files": files})))
}

fn verify_all(config: &QebsConfig, w: RootWindow, height: Option<usize>) -> Outcome {
    let qebs = validate_qebs(config);
    let ebs = roots::check_ebs(&roots::generate_pebs(config, w)?);
    let mut pass = ebs.pass && qebs.first_failure().is_none();
    let mut data = json!({"qebs": qebs, "ebs": ebs});
    if qebs.first_failure().is_none() {
        let hd = unfold::unfold_datum(config)?;
        pass &= hd.pass();
        data["handy"] = json!({"pass": hd.pass(), "checks": hd.checks});
        if hd.pass() {
            let (ok, rep) = verify_pi_cmd(config, Preset::Sr, height)?;
            pass &= ok;
            data["verify_pi"] = json!({"pass": ok, "kappa": rep["kappa"], "failures": rep["failures"]});
        }
        if config.is_a11() && config.nodes() >= 3 {
            let rep = verify_q(config, QMode::Formal)?;
            pass &= rep.pass;
            data["verify_q"] = json!({"pass": rep.pass, "failures": rep.failures});
        }
    }
    Ok((pass, data))
}

fn run_one(input: &Input, f: &(dyn Fn(&QebsConfig, &str) -> Outcome + Sync)) -> ConfigResult {
    let res = input.load().and_then(|c| f(&c, &input.name));
    match res {
        Ok((pass, data)) => ConfigResult {
            config: input.label.clone(),
            name: input.name.clone(),
            status: if pass { Status::Pass } else { Status::Fail },
            error: None,
            data,
        },
        Err(e) => ConfigResult {
            config: input.label.clone(),
            name: input.name.clone(),
            status: Status::Error,
            error: Some(ErrorInfo::from(&e)),
            data: Value::Null,
        },
    }
}

fn manifest(command: &str, common: &Common, preset: Option<Preset>, options: serde_json::Map<String, Value>) -> Manifest {
    Manifest {
        command: command.into(),
        configs: common.configs.iter().map(|p| p.display().to_string()).collect(),
        window: [common.window.0, common.window.1],
        pad: common.pad,
        height: common.height,
        format: common.format,
        out: common.out.as_ref().map(|p| p.display().to_string()),
        preset,
        options,
    }
}

/// Runs a parsed command line. Results keep manifest order.
pub fn run(cli: &Cli) -> Result<(Report, Format, Option<PathBuf>)> {
    let (name, common) = match &cli.command {
        Command::Classify(c) => ("classify", c),
        Command::Roots(c) => ("roots", c),
        Command::VerifyEbs(c) => ("verify-ebs", c),
        Command::Unfold { common, .. } => ("unfold", common),
        Command::VerifyPi { common, .. } => ("verify-pi", common),
        Command::QtorusVerify { common, .. } => ("qtorus-verify", common),
        Command::Relations { common, .. } => ("relations", common),
        Command::Ears(c) => ("ears", c),
        Command::Export { common, .. } => ("export", common),
        Command::Verify(c) => ("verify", c),
    };
    let w = window(common)?;
    let h = common.height;
    let mut items = inputs(common);
    let mut options = serde_json::Map::new();
    let mut preset = None;
    let f: Job = match &cli.command {
        Command::Classify(_) => Box::new(move |c, _| classify(c, w)),
        Command::Roots(_) => Box::new(move |c, _| roots_cmd(c, w)),
        Command::VerifyEbs(_) => Box::new(move |c, _| verify_ebs(c, w)),
        Command::Unfold { transport, reach, .. } => {
            let (t, r) = (*transport, *reach);
            options.insert("transport".into(), json!(t));
            options.insert("reach".into(), json!(r));
            Box::new(move |c, _| unfold_cmd(c, w, t, r, h))
        }
        Command::VerifyPi { preset: p, .. } => {
            let p = *p;
            preset = Some(p);
            Box::new(move |c, _| verify_pi_cmd(c, p, h))
        }
        Command::QtorusVerify { rank, q_numeric, .. } => {
            let mode = match q_numeric {
                Some(s) => QMode::Numeric(parse_q(s)?),
                None => QMode::Formal,
            };
            if let Some(l) = rank {
                let t = format!("A{l}^(1)").parse().map_err(|e| Error::config(format!("--rank {l}: {e}")))?;
                items.push(Input { label: format!("A{l}^(1)"), name: format!("a{l}_1"), source: Source::Built(QebsConfig::trivial(t)?) });
                options.insert("rank".into(), json!(l));
            }
            options.insert("q".into(), to_value(&mode)?);
            Box::new(move |c, _| qtorus(c, mode))
        }
        Command::Relations { preset: p, .. } => {
            let (p, fmt) = (*p, common.format);
            preset = Some(p);
            Box::new(move |c, _| relations_cmd(c, p, fmt))
        }
        Command::Ears(_) => Box::new(move |c, _| ears_cmd(c, w)),
        Command::Export { preset: p, roots, handy, ears, .. } => {
            preset = *p;
            let what = ExportWhat { preset: *p, roots: *roots, handy: *handy, ears: *ears };
            let out = common.out.clone();
            options.insert("roots".into(), json!(roots));
            options.insert("handy".into(), json!(handy));
            options.insert("ears".into(), json!(ears));
            Box::new(move |c, stem| export_cmd(c, stem, w, out.as_deref(), &what))
        }
        Command::Verify(_) => Box::new(move |c, _| verify_all(c, w, h)),
    };
    let results: Vec<ConfigResult> = items.par_iter().map(|i| run_one(i, f.as_ref())).collect();
    let report = Report { tool_version: TOOL_VERSION, manifest: manifest(name, common, preset, options), results };
    Ok((report, common.format, common.out.clone()))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV view: classification rows for `classify`, one row per root for
/// `roots`, otherwise one status row per config.
pub fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    match report.manifest.command.as_str() {
        "classify" => {
            out.push_str("config,kind,nodes,case,name,ok\n");
            for r in &report.results {
                for row in r.data["rank1"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "{},rank1,a{},{},{},{}\n",
                        csv_field(&r.name),
                        row["node"],
                        row["case"].as_str().unwrap_or(""),
                        row["name"].as_str().unwrap_or(""),
                        row["subset"]["independent"].as_bool().unwrap_or(false)
                            && row["subset"]["affine_gcm"].as_bool().unwrap_or(false)
                    ));
                }
                for row in r.data["rank2"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "{},rank2,a{} a{},{},{},{}\n",
                        csv_field(&r.name),
                        row["alpha"],
                        row["beta"],
                        row["case"].as_str().unwrap_or(""),
                        row["name"].as_str().unwrap_or(""),
                        row["gamma_ok"].as_bool().unwrap_or(false)
                    ));
                }
            }
        }
        "roots" => {
            out.push_str("config,coords,orbit_key,k,g,parity,doubled\n");
            for r in &report.results {
                for row in r.data["roots"].as_array().into_iter().flatten() {
                    let coords: Vec<String> = row["coords"].as_array().into_iter().flatten().map(|v| v.to_string()).collect();
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        csv_field(&r.name),
                        csv_field(&coords.join(" ")),
                        row["orbit_key"].as_str().unwrap_or(""),
                        row["k"],
                        row["g"].as_str().unwrap_or(""),
                        row["parity"],
                        row["doubled"]
                    ));
                }
            }
        }
        _ => {
            out.push_str("config,status,error\n");
            for r in &report.results {
                let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                let err = r.error.as_ref().map(|e| e.message.clone()).unwrap_or_default();
                out.push_str(&format!("{},{},{}\n", csv_field(&r.config), status, csv_field(&err)));
            }
        }
    }
    out
}

/// LaTeX view: the relation lists for `relations`, otherwise a status table.
pub fn render_latex(report: &Report) -> String {
    let mut out = String::new();
    if report.manifest.command == "relations" {
        for r in &report.results {
            out.push_str(&format!("% {}\n", r.config));
            match &r.data {
                Value::String(s) => out.push_str(s),
                _ => out.push_str(&format!("% {}\n", r.error.as_ref().map(|e| e.message.as_str()).unwrap_or("no data"))),
            }
            out.push('\n');
        }
        return out;
    }
    out.push_str("\\begin{tabular}{ll}\nconfig & status \\\\\n\\hline\n");
    for r in &report.results {
        let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out.push_str(&format!("\\texttt{{{}}} & {} \\\\\n", r.name.replace('_', "\\_"), status));
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Latex => render_latex(report),
    })
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let fail = |e: Error| {
        let info = ErrorInfo::from(&e);
        eprintln!("{}", json!({"error": info}));
        info.exit_code
    };
    let (report, format, out) = match run(&cli) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let text = match render(&report, format) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    match out {
        Some(dir) => {
            let ext = match format {
                Format::Json => "json",
                Format::Csv => "csv",
                Format::Latex => "tex",
            };
            let path = dir.join(format!("report.{ext}"));
            if let Err(e) = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(&path, &text)) {
                return fail(e.into());
            }
        }
        None => print!("{text}"),
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_and_q_parse() {
        assert_eq!(parse_window("4,6").unwrap(), (4, 6));
        assert!(parse_window("4").is_err());
        assert_eq!(parse_q("-2/3").unwrap(), Q::new(-2, 3));
        assert_eq!(parse_q("5").unwrap(), Q::from_integer(5));
        assert!(parse_q("0").is_err());
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn exit_code_priority() {
        let cli = Cli::try_parse_from(["erskit", "roots"]).unwrap();
        let (mut rep, _, _) = run(&cli).unwrap();
        assert_eq!(rep.exit_code(), 0);
        let mk = |status, error| ConfigResult { config: String::new(), name: String::new(), status, error, data: Value::Null };
        rep.results.push(mk(Status::Fail, None));
        assert_eq!(rep.exit_code(), 1);
        rep.results.push(mk(Status::Error, Some(ErrorInfo::from(&Error::resource("x")))));
        assert_eq!(rep.exit_code(), 3);
        rep.results.push(mk(Status::Error, Some(ErrorInfo::from(&Error::config("x")))));
        assert_eq!(rep.exit_code(), 2);
    }
}
