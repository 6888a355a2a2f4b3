//! The `cherries` command line.
//!
//! Global settings come from (lowest to highest priority) the file named by
//! `CHERRIES_CONFIG`, the file given with `--config`, and flags. Config
//! files hold `key = value` lines for `format`, `jobs`, `cap`, `seed` and
//! `output`; `#` starts a comment. Exit status: 0 on success, 1 when a
//! verification finds a mismatch, 2 on bad input.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::appendix::{self, Lemma};
use crate::constructions::{
    ak_bipartite, b1_family, b2_family, g1_family, g2_family, quasi_clique, quasi_star,
    BipartiteFamilyParams, Witnessed,
};
use crate::density::{self, Axis, ConstructionFamily, DensityPoint, DensityTheorem, GridSpec};
use crate::graph::{AnyGraphJson, BipartiteGraph, ConstraintWitness, Graph};
use crate::oracle::{self, Family, Mode, Theorem, DEFAULT_EDGE_CAP};
use crate::shifting::{analyze_omega, left_compress, shift_general, swap_sides};

pub const CONFIG_ENV: &str = "CHERRIES_CONFIG";

#[derive(Debug, Parser)]
#[command(
    name = "cherries",
    version,
    about = "Count, construct and verify cherry-extremal graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    pub format: Option<Format>,
    /// Worker threads for searches and grids (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest number of edge slots an exhaustive search may enumerate.
    #[arg(long, global = true)]
    pub cap: Option<u32>,
    /// Seed for every random draw.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// `key = value` file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructFamily {
    /// Parameters n, m.
    QuasiClique,
    /// Parameters n, m.
    QuasiStar,
    /// Column-filling bipartite graph; parameters r, s, m.
    B,
    /// Parameters r, s, m, l, k.
    B1,
    /// Parameters r, s, m, l, k.
    B2,
    /// Parameters n, m, l, k.
    G1,
    /// Parameters n, m, l, k.
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftMode {
    Bipartite,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaChoice {
    A1,
    A2,
    A3,
    A4,
    A5,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named construction and print it as a JSON graph.
    Construct {
        #[arg(value_enum)]
        family: ConstructFamily,
        /// Comma-separated `key=value` pairs, e.g. `n=8,m=5,l=2,k=2`.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        params: Vec<String>,
        /// Wrap the graph together with its constraint witness.
        #[arg(long)]
        witness: bool,
    },
    /// Edge, cherry and Z₁ counts of a JSON graph.
    Count {
        /// Graph file; stdin when absent or `-`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Apply the Z₁-nondecreasing shifting moves to a JSON graph.
    Shift {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: ShiftMode,
        /// Witness size.
        #[arg(long)]
        l: usize,
        /// Witness degree floor.
        #[arg(long)]
        k: usize,
        /// Bipartite mode: also exchange the sides after compressing.
        #[arg(long)]
        swap_sides: bool,
    },
    /// Exhaustive maximum of Z₁ over a constrained family.
    Maximize {
        #[arg(long, value_enum)]
        family: Family,
        /// `r,s,m,l,k` for bipartite families, `n,m,l,k` for general.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
    },
    /// Compare exhaustive optima with the predicted values over all tuples.
    VerifyTheorem {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Largest n for 1.1, largest r·s otherwise.
        #[arg(long, visible_aliases = ["max-rs", "max-n"])]
        max_size: usize,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
    },
    /// Closed-form densities, grid scans and finite-n convergence.
    Density {
        /// Grid scan; axes as `start:end:step` or single values.
        #[arg(long, conflicts_with = "converge")]
        scan: bool,
        /// Convergence of one construction along `n=...`.
        #[arg(long)]
        converge: bool,
        /// `rho=`, `alpha=`, `beta=`, and for --converge `family=`, `n=`.
        assignments: Vec<String>,
    },
    /// Grid and derivative checks of the appendix lemmas.
    VerifyAppendix {
        #[arg(long, value_enum, ignore_case = true, default_value = "all")]
        lemma: LemmaChoice,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
}

/// Settings after merging config files and flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub cap: u32,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            format: None,
            jobs: None,
            cap: DEFAULT_EDGE_CAP,
            seed: 0,
            output: None,
        }
    }
}

/// Usage problems: the message names the flag, the example shows a valid call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    pub example: &'static str,
}

fn usage(message: impl Into<String>, example: &'static str) -> UsageError {
    UsageError {
        message: message.into(),
        example,
    }
}

impl RunConfig {
    /// Applies one config file on top of `self`. Unknown keys are errors.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), UsageError> {
        const EX: &str = "cherries --config run.cfg count --input g.json";
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("--config {}: {e}", path.display()), EX))?;
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| usage(format!("{}:{}: {what}", path.display(), no + 1), EX);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim();
            match key.trim() {
                "format" => {
                    self.format = Some(
                        Format::from_str(value, true).map_err(|_| bad("format is json or csv"))?,
                    )
                }
                "jobs" => {
                    self.jobs = Some(
                        value
                            .parse()
                            .map_err(|_| bad("jobs must be a positive integer"))?,
                    )
                }
                "cap" => {
                    self.cap = value
                        .parse()
                        .map_err(|_| bad("cap must be a positive integer"))?
                }
                "seed" => self.seed = value.parse().map_err(|_| bad("seed must be an integer"))?,
                "output" => self.output = Some(PathBuf::from(value)),
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        Ok(())
    }

    pub fn resolve(global: &GlobalArgs) -> Result<Self, UsageError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = std::env::var_os(CONFIG_ENV) {
            cfg.apply_file(Path::new(&path))?;
        }
        if let Some(path) = &global.config {
            cfg.apply_file(path)?;
        }
        if let Some(f) = global.format {
            cfg.format = Some(f);
        }
        if let Some(j) = global.jobs {
            cfg.jobs = Some(j);
        }
        if let Some(c) = global.cap {
            cfg.cap = c;
        }
        if let Some(s) = global.seed {
            cfg.seed = s;
        }
        if let Some(o) = &global.output {
            cfg.output = Some(o.clone());
        }
        if cfg.jobs == Some(0) {
            return Err(usage(
                "--jobs must be at least 1",
                "cherries --jobs 4 verify-theorem --theorem 1.7 --max-rs 12",
            ));
        }
        if cfg.cap == 0 {
            return Err(usage(
                "--cap must be positive",
                "cherries --cap 24 maximize --family general --params n=6,m=7,l=2,k=2",
            ));
        }
        Ok(cfg)
    }
}

/// What a command produced.
pub struct Outcome {
    pub body: String,
    /// `false` when a verification found a mismatch.
    pub ok: bool,
}

enum Failure {
    Usage(UsageError),
    Io(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

fn params_map(
    raw: &[String],
    required: &[&'static str],
    example: &'static str,
) -> Result<BTreeMap<&'static str, u64>, UsageError> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--params: '{item}' is not key=value"), example))?;
        let key = required.iter().find(|r| **r == k.trim()).ok_or_else(|| {
            usage(
                format!(
                    "--params: unknown key '{k}' (expected {})",
                    required.join(", ")
                ),
                example,
            )
        })?;
        let value = v.trim().parse().map_err(|_| {
            usage(
                format!("--params: {k} must be a nonnegative integer"),
                example,
            )
        })?;
        out.insert(*key, value);
    }
    if let Some(missing) = required.iter().find(|r| !out.contains_key(*r)) {
        return Err(usage(format!("--params: missing '{missing}'"), example));
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("output rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

fn read_graph(input: &Option<PathBuf>, example: &'static str) -> Result<AnyGraphJson, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| usage(format!("--input {}: {e}", p.display()), example))?,
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("--input: not a graph: {e}"), example).into())
}

fn json_only(format: Option<Format>, cmd: &str, example: &'static str) -> Result<(), UsageError> {
    match format {
        Some(Format::Csv) => Err(usage(
            format!("--format csv is not available for {cmd}"),
            example,
        )),
        _ => Ok(()),
    }
}

fn witnessed_json<G>(
    w: Witnessed<G>,
    with_witness: bool,
    json: impl Fn(&G) -> AnyGraphJson,
) -> String {
    if with_witness {
        to_json_line(&json!({ "graph": json(&w.graph), "witness": w.witness }))
    } else {
        to_json_line(&json(&w.graph))
    }
}

fn construct(
    family: ConstructFamily,
    raw: &[String],
    with_witness: bool,
) -> Result<String, UsageError> {
    const EX: &str = "cherries construct g1 --params n=8,m=5,l=2,k=2";
    let general = |g: &Graph| AnyGraphJson::General(g.to_json());
    let bip = |b: &BipartiteGraph| AnyGraphJson::Bipartite(b.to_json());
    let fail = |e: crate::constructions::ConstructionError| usage(format!("--params: {e}"), EX);
    let us = |v: u64| v as usize;
    match family {
        ConstructFamily::QuasiClique | ConstructFamily::QuasiStar => {
            let p = params_map(raw, &["n", "m"], EX)?;
            let f = if family == ConstructFamily::QuasiClique {
                quasi_clique
            } else {
                quasi_star
            };
            Ok(to_json_line(&general(
                &f(us(p["n"]), p["m"]).map_err(fail)?,
            )))
        }
        ConstructFamily::B => {
            let p = params_map(raw, &["r", "s", "m"], EX)?;
            Ok(to_json_line(&bip(&ak_bipartite(
                us(p["r"]),
                us(p["s"]),
                p["m"],
            )
            .map_err(fail)?)))
        }
        ConstructFamily::B1 | ConstructFamily::B2 => {
            let p = params_map(raw, &["r", "s", "m", "l", "k"], EX)?;
            let params = BipartiteFamilyParams::new(
                us(p["r"]),
                us(p["s"]),
                us(p["m"]),
                us(p["l"]),
                us(p["k"]),
            )
            .map_err(fail)?;
            let f = if family == ConstructFamily::B1 {
                b1_family
            } else {
                b2_family
            };
            Ok(witnessed_json(f(&params).map_err(fail)?, with_witness, bip))
        }
        ConstructFamily::G1 | ConstructFamily::G2 => {
            let p = params_map(raw, &["n", "m", "l", "k"], EX)?;
            let f = if family == ConstructFamily::G1 {
                g1_family
            } else {
                g2_family
            };
            let w = f(us(p["n"]), p["m"], us(p["l"]), us(p["k"])).map_err(fail)?;
            Ok(witnessed_json(w, with_witness, general))
        }
    }
}

#[derive(Serialize)]
struct Counts {
    edges: u64,
    cherries: u64,
    z1: u64,
}

fn count(input: &Option<PathBuf>, format: Option<Format>) -> Result<String, Failure> {
    const EX: &str = "cherries count --input k3.json";
    let counts = match read_graph(input, EX)? {
        AnyGraphJson::General(j) => {
            let g = Graph::try_from(j).map_err(|e| usage(format!("--input: {e}"), EX))?;
            Counts {
                edges: g.edge_count() as u64,
                cherries: g.count_cherries(),
                z1: g.z1_index(),
            }
        }
        AnyGraphJson::Bipartite(j) => {
            let b = BipartiteGraph::try_from(j).map_err(|e| usage(format!("--input: {e}"), EX))?;
            Counts {
                edges: b.edge_count() as u64,
                cherries: b.count_cherries(),
                z1: b.z1_index(),
            }
        }
    };
    Ok(match format {
        Some(Format::Csv) => to_csv(&[counts]),
        _ => to_json_line(&counts),
    })
}

fn shift(
    input: &Option<PathBuf>,
    mode: ShiftMode,
    ell: usize,
    k: usize,
    swap: bool,
) -> Result<String, Failure> {
    const EX: &str = "cherries shift --input g.json --mode general --l 2 --k 1";
    let graph = read_graph(input, EX)?;
    let bad = |e: &dyn std::fmt::Display| usage(format!("{e}"), EX);
    match (mode, graph) {
        (ShiftMode::Bipartite, AnyGraphJson::Bipartite(j)) => {
            let b = BipartiteGraph::try_from(j).map_err(|e| bad(&e))?;
            let rows: Vec<usize> = (0..b.r())
                .filter(|&i| b.left_degree(i) >= k)
                .take(ell)
                .collect();
            if rows.len() < ell {
                return Err(usage(
                    format!("--l {ell} --k {k}: fewer than {ell} rows have degree >= {k}"),
                    EX,
                )
                .into());
            }
            let c =
                left_compress(&b, &ConstraintWitness::new(rows, ell, k)).map_err(|e| bad(&e))?;
            let mut out = json!({
                "graph": c.graph.to_json(),
                "witness": c.witness,
                "moves": c.moves,
                "rows": c.rows,
                "cols": c.cols,
                "z1_before": b.z1_index(),
                "z1_after": c.graph.z1_index(),
            });
            if swap {
                let s = swap_sides(&c.graph, &c.witness).map_err(|e| bad(&e))?;
                out["swapped"] =
                    json!({ "graph": s.graph.to_json(), "witness": s.witness, "branch": s.branch });
            }
            Ok(to_json(&out))
        }
        (ShiftMode::General, AnyGraphJson::General(j)) => {
            let g = Graph::try_from(j).map_err(|e| bad(&e))?;
            let witness = g
                .find_constraint_witness(ell, k)
                .map_err(|e| bad(&e))?
                .ok_or_else(|| {
                    usage(
                        format!("--l {ell} --k {k}: the graph has no such independent set"),
                        EX,
                    )
                })?;
            let s = shift_general(&g, &witness).map_err(|e| bad(&e))?;
            let analysis = analyze_omega(&s.graph, &s.witness).map_err(|e| bad(&e))?;
            Ok(to_json(&json!({
                "graph": s.graph.to_json(),
                "witness": s.witness,
                "moves": s.moves,
                "order": s.order,
                "z1_before": g.z1_index(),
                "z1_after": s.graph.z1_index(),
                "analysis": analysis,
            })))
        }
        (ShiftMode::Bipartite, _) => Err(usage(
            "--mode bipartite needs an {\"r\",\"s\",\"edges\"} graph",
            EX,
        )
        .into()),
        (ShiftMode::General, _) => {
            Err(usage("--mode general needs an {\"n\",\"edges\"} graph", EX).into())
        }
    }
}

fn maximize(family: Family, raw: &[String], mode: Mode, cap: u32) -> Result<String, UsageError> {
    const EX: &str = "cherries maximize --family bipartite-left --params r=3,s=3,m=5,l=2,k=2";
    let oracle_err = |e: oracle::OracleError| usage(format!("{e}"), EX);
    let report = match family {
        Family::BipartiteLeft | Family::BipartiteRight => {
            let p = params_map(raw, &["r", "s", "m", "l", "k"], EX)?;
            let params = BipartiteFamilyParams::new(
                p["r"] as usize,
                p["s"] as usize,
                p["m"] as usize,
                p["l"] as usize,
                p["k"] as usize,
            )
            .map_err(|e| usage(format!("--params: {e}"), EX))?;
            if family == Family::BipartiteLeft {
                oracle::phi_bipartite(&params, mode, cap)
            } else {
                oracle::phi_bipartite_right(&params, mode, cap)
            }
            .map_err(oracle_err)?
        }
        Family::General => {
            let p = params_map(raw, &["n", "m", "l", "k"], EX)?;
            if mode == Mode::Shifted {
                return Err(usage(
                    "--mode shifted applies to bipartite families only",
                    EX,
                ));
            }
            oracle::max_cherries_general(
                p["n"] as usize,
                p["m"] as usize,
                p["l"] as usize,
                p["k"] as usize,
                cap,
            )
            .map_err(oracle_err)?
        }
    };
    Ok(to_json(&report))
}

fn verify_theorem(
    theorem: Theorem,
    max_size: usize,
    mode: Mode,
    cap: u32,
    format: Option<Format>,
) -> Result<Outcome, UsageError> {
    const EX: &str = "cherries verify-theorem --theorem 1.7 --max-rs 12";
    let rows = oracle::verify_theorem(theorem, max_size, mode, cap)
        .map_err(|e| usage(format!("{e}"), EX))?;
    let ok = rows.iter().all(|r| r.matches);
    let body = match format {
        Some(Format::Json) => to_json(&rows),
        _ => to_csv(&rows),
    };
    Ok(Outcome { body, ok })
}

fn assignments(
    raw: &[String],
    allowed: &[&'static str],
    example: &'static str,
) -> Result<BTreeMap<&'static str, String>, UsageError> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("'{item}' is not key=value"), example))?;
        let key = allowed.iter().find(|a| **a == k.trim()).ok_or_else(|| {
            usage(
                format!("unknown key '{k}' (expected {})", allowed.join(", ")),
                example,
            )
        })?;
        out.insert(*key, v.trim().to_string());
    }
    Ok(out)
}

fn density_cmd(
    scan: bool,
    converge: bool,
    raw: &[String],
    format: Option<Format>,
) -> Result<Outcome, UsageError> {
    const SCAN: &str =
        "cherries density --scan rho=0.68:0.70:0.005 alpha=0.17:0.23:0.01 beta=alpha";
    const CONV: &str = "cherries density --converge family=g2 rho=0.68 alpha=0.2 n=100,500,2000";
    const POINT: &str = "cherries density rho=0.68 alpha=0.2 beta=0.2";
    let num =
        |m: &BTreeMap<&str, String>, key: &str, ex: &'static str| -> Result<f64, UsageError> {
            m.get(key)
                .ok_or_else(|| usage(format!("missing {key}="), ex))?
                .parse()
                .map_err(|_| usage(format!("{key} must be a number"), ex))
        };
    if scan {
        let m = assignments(raw, &["rho", "alpha", "beta"], SCAN)?;
        let axis = |key: &str| -> Result<Axis, UsageError> {
            m.get(key)
                .ok_or_else(|| usage(format!("missing {key}="), SCAN))?
                .parse()
                .map_err(|e| usage(format!("{key}: {e}"), SCAN))
        };
        let beta = match m.get("beta").map(String::as_str) {
            None => Some(Axis::single(0.0)),
            Some("alpha") => None,
            Some(_) => Some(axis("beta")?),
        };
        let grid = GridSpec {
            rho: axis("rho")?,
            alpha: axis("alpha")?,
            beta,
        };
        let rows = density::scan(&grid).map_err(|e| usage(format!("{e}"), SCAN))?;
        let body = match format {
            Some(Format::Json) => to_json(&rows),
            _ => to_csv(&rows),
        };
        return Ok(Outcome { body, ok: true });
    }
    if converge {
        let m = assignments(raw, &["family", "rho", "alpha", "beta", "n"], CONV)?;
        let family = ConstructionFamily::from_str(
            m.get("family")
                .ok_or_else(|| usage("missing family=", CONV))?,
            true,
        )
        .map_err(|_| usage("family is quasi_star, g1 or g2", CONV))?;
        let beta = if m.contains_key("beta") {
            num(&m, "beta", CONV)?
        } else {
            0.0
        };
        let alpha = if m.contains_key("alpha") {
            num(&m, "alpha", CONV)?
        } else {
            0.0
        };
        let p = DensityPoint::new(num(&m, "rho", CONV)?, alpha, beta)
            .map_err(|e| usage(format!("{e}"), CONV))?;
        let ns: Vec<usize> = m
            .get("n")
            .map_or("100,500,2000", String::as_str)
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| usage(format!("n: '{t}' is not an integer"), CONV))
            })
            .collect::<Result<_, _>>()?;
        let rep = density::convergence(family, p, &ns).map_err(|e| usage(format!("{e}"), CONV))?;
        let body = match format {
            Some(Format::Json) => to_json(&rep),
            _ => to_csv(&rep.rows),
        };
        return Ok(Outcome {
            body,
            ok: rep.monotone,
        });
    }
    let m = assignments(raw, &["rho", "alpha", "beta"], POINT)?;
    let beta = if m.contains_key("beta") {
        num(&m, "beta", POINT)?
    } else {
        0.0
    };
    let p = DensityPoint::new(num(&m, "rho", POINT)?, num(&m, "alpha", POINT)?, beta)
        .map_err(|e| usage(format!("{e}"), POINT))?;
    let err = |e: density::DensityError| usage(format!("{e}"), POINT);
    let bounds = density::fact13_bounds(p).map_err(err)?;
    let t14 = density::thm_value(p, DensityTheorem::EqualFloor).map_err(err)?;
    let t15 = density::thm_value(p, DensityTheorem::FifthFloor).map_err(err)?;
    json_only(format, "a single density point", POINT)?;
    Ok(Outcome {
        body: to_json(&json!({ "point": p, "bounds": bounds, "thm14": t14, "thm15": t15 })),
        ok: true,
    })
}

#[derive(Serialize)]
struct AppendixSummaryRow {
    lemma: &'static str,
    steps: usize,
    min_margin: f64,
    refined_min_margin: f64,
    max_residual: f64,
    derivative_failures: u64,
    passed: bool,
}

fn verify_appendix(
    choice: LemmaChoice,
    steps: usize,
    seed: u64,
    format: Option<Format>,
) -> Result<Outcome, UsageError> {
    const EX: &str = "cherries verify-appendix --lemma A4 --steps 100";
    let lemmas: Vec<Lemma> = match choice {
        LemmaChoice::All => Lemma::ALL.to_vec(),
        LemmaChoice::A1 => vec![Lemma::A1],
        LemmaChoice::A2 => vec![Lemma::A2],
        LemmaChoice::A3 => vec![Lemma::A3],
        LemmaChoice::A4 => vec![Lemma::A4],
        LemmaChoice::A5 => vec![Lemma::A5],
    };
    let reports = lemmas
        .iter()
        .map(|&l| appendix::check_lemma(l, steps))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("--steps: {e}"), EX))?;
    let interior = (choice == LemmaChoice::All).then(appendix::interior_bounds_check);
    let closed_form = if lemmas.contains(&Lemma::A2) {
        let worst = appendix::a2_closed_form_discrepancy(seed, 1000)
            .map_err(|e| usage(format!("{e}"), EX))?;
        Some(
            json!({ "seed": seed, "samples": 1000, "max_discrepancy": worst, "passed": worst <= 1e-12 }),
        )
    } else {
        None
    };
    let ok = reports.iter().all(|r| r.passed)
        && interior.as_ref().is_none_or(|v| v.iter().all(|c| c.passed))
        && closed_form
            .as_ref()
            .is_none_or(|c| c["passed"] == Value::Bool(true));
    let body = match format {
        Some(Format::Csv) => {
            let rows: Vec<AppendixSummaryRow> = reports
                .iter()
                .map(|r| AppendixSummaryRow {
                    lemma: r.lemma.label(),
                    steps: r.steps,
                    min_margin: r.min_margin,
                    refined_min_margin: r.refined_min_margin,
                    max_residual: r.max_residual,
                    derivative_failures: r.derivative_checks.iter().map(|c| c.failed).sum(),
                    passed: r.passed,
                })
                .collect();
            to_csv(&rows)
        }
        _ => {
            let mut out = json!({ "reports": reports, "passed": ok });
            if let Some(i) = interior {
                out["interior"] = json!(i);
            }
            if let Some(c) = closed_form {
                out["a2_closed_form"] = c;
            }
            to_json(&out)
        }
    };
    Ok(Outcome { body, ok })
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let done = |body: String| Ok(Outcome { body, ok: true });
    match command {
        Command::Construct {
            family,
            params,
            witness,
        } => {
            json_only(
                cfg.format,
                "construct",
                "cherries construct g2 --params n=6,m=5,l=2,k=2",
            )?;
            done(construct(*family, params, *witness)?)
        }
        Command::Count { input } => done(count(input, cfg.format)?),
        Command::Shift {
            input,
            mode,
            l,
            k,
            swap_sides,
        } => {
            json_only(
                cfg.format,
                "shift",
                "cherries shift --input g.json --mode general --l 2 --k 1",
            )?;
            done(shift(input, *mode, *l, *k, *swap_sides)?)
        }
        Command::Maximize {
            family,
            params,
            mode,
        } => {
            json_only(
                cfg.format,
                "maximize",
                "cherries maximize --family general --params n=6,m=7,l=2,k=2",
            )?;
            done(maximize(*family, params, *mode, cfg.cap)?)
        }
        Command::VerifyTheorem {
            theorem,
            max_size,
            mode,
        } => Ok(verify_theorem(
            *theorem, *max_size, *mode, cfg.cap, cfg.format,
        )?),
        Command::Density {
            scan,
            converge,
            assignments,
        } => Ok(density_cmd(*scan, *converge, assignments, cfg.format)?),
        Command::VerifyAppendix { lemma, steps } => {
            Ok(verify_appendix(*lemma, *steps, cfg.seed, cfg.format)?)
        }
    }
}

fn report_usage(e: &UsageError) -> ExitCode {
    eprintln!("error: {}\n\nexample: {}", e.message, e.example);
    ExitCode::from(2)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(cfg) => cfg,
        Err(e) => return report_usage(&e),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::FAILURE;
        }
    };
    let outcome = match pool.install(|| dispatch(&cli.command, &cfg)) {
        Ok(o) => o,
        Err(Failure::Usage(e)) => return report_usage(&e),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cfg.output {
        Some(path) => fs::write(path, &outcome.body),
        None => io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_validated() {
        let raw = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let p = params_map(&raw(&["n=8", "m=5"]), &["n", "m"], "x").unwrap();
        assert_eq!((p["n"], p["m"]), (8, 5));
        assert!(params_map(&raw(&["n=8"]), &["n", "m"], "x")
            .unwrap_err()
            .message
            .contains("missing 'm'"));
        assert!(params_map(&raw(&["n=8", "q=1"]), &["n", "m"], "x")
            .unwrap_err()
            .message
            .contains("unknown key"));
        assert!(params_map(&raw(&["n=-1"]), &["n"], "x").is_err());
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "# defaults\ncap = 20\nseed=7\nformat = csv\n").unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply_file(&path).unwrap();
        assert_eq!((cfg.cap, cfg.seed, cfg.format), (20, 7, Some(Format::Csv)));
        fs::write(&path, "colour = red\n").unwrap();
        assert!(cfg
            .apply_file(&path)
            .unwrap_err()
            .message
            .contains("unknown key 'colour'"));
    }

    #[test]
    fn flags_win_over_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "cap = 20\n").unwrap();
        let global = GlobalArgs {
            cap: Some(12),
            config: Some(path),
            ..Default::default()
        };
        assert_eq!(RunConfig::resolve(&global).unwrap().cap, 12);
    }

    #[test]
    fn construct_matches_worked_example() {
        let raw: Vec<String> = ["n=8", "m=5", "l=2", "k=2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let out: Value =
            serde_json::from_str(&construct(ConstructFamily::G1, &raw, false).unwrap()).unwrap();
        assert_eq!(
            out,
            json!({ "n": 8, "edges": [[0, 1], [0, 6], [0, 7], [1, 6], [1, 7]] })
        );
    }
}
