use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::json;

use cedga::algebra::check_dga;
use cedga::homology::ChainComplex;
use cedga::io;
use cedga::modules::augment::{find_augmentations_with, Augmentation, SearchOptions};
use cedga::modules::rhom::{compare_routes, rhom_complex};
use cedga::modules::split::{single_degree_check, CheckStatus};
use cedga::registry;
use cedga::resolution::length_graded_exactness;
use cedga::surgery::{
    augmentation_module, build_cap_algebra, build_cthulhu_bimodule_with, build_model_cap, cthulhu_complex,
    pipeline_compare_on, CapSpec, Ranges,
};
use cedga::transforms::{
    eliminate_cm_tower, eliminate_pair, expand_idempotents, morsify, omit_idempotents, ordered_quotient,
    truncate_by_action, CopyMap,
};
use cedga::{Dga, Error, IdempotentRing, Result};

#[derive(Parser)]
#[command(name = "cedga", version, about = "DGAs over idempotent rings, cap algebras and RHom over F2")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Algebra arguments are a JSON file or a built-in name (`unknot`, `synthetic-7`, ...).
#[derive(Subcommand)]
enum Cmd {
    /// Validate composability, degrees, actions and d^2 = 0.
    Check { dga: String },
    /// Betti numbers of a chain complex file.
    Homology { complex: PathBuf },
    /// Adjoin the e-units.
    Morsify {
        dga: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Forget idempotents.
    Omit {
        dga: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Replace idempotents by ordered copies.
    Expand {
        dga: String,
        /// `s=2,t=1`
        #[arg(long)]
        copies: String,
        /// `s=0:1,t=0`
        #[arg(long)]
        potentials: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Kill e-copies that do not point up.
    Quotient {
        dga: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Quotient by (a, b) when da = b.
    Eliminate {
        dga: String,
        /// `a,b`
        #[arg(long)]
        pair: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Eliminate every (c, m) pair of a model cap.
    EliminateCm {
        dga: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Keep generators of action at most Q.
    Truncate {
        dga: String,
        /// A rational `p/q`.
        #[arg(long)]
        action: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cap algebra of parallel copies.
    Cap {
        base: String,
        #[arg(long)]
        copies: String,
        #[arg(long)]
        potentials: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cap algebra with c and m generators.
    ModelCap {
        base: String,
        #[arg(long)]
        copies: String,
        #[arg(long)]
        potentials: Option<String>,
        #[arg(long, default_value_t = 2)]
        dim: i64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hatted bimodule between two caps, optionally with augmentation coefficients.
    Cthulhu {
        /// Cap spec file, or `base:k`.
        #[arg(long)]
        cap0: String,
        #[arg(long)]
        cap1: String,
        #[arg(long)]
        aug0: Option<usize>,
        #[arg(long)]
        aug1: Option<usize>,
        /// Use the literal clipped summation ranges.
        #[arg(long)]
        printed_ranges: bool,
    },
    /// Enumerate augmentations.
    Augs {
        dga: String,
        #[arg(long, default_value_t = 24)]
        max_bits: usize,
        #[arg(long)]
        ungraded: bool,
    },
    /// RHom between two module files.
    Rhom {
        dga: String,
        #[arg(long)]
        v0: PathBuf,
        #[arg(long)]
        v1: PathBuf,
    },
    /// Single-degree criterion for a module file.
    SingleDegree {
        dga: String,
        #[arg(long)]
        module: PathBuf,
    },
    /// Compare the Cthulhu complex with RHom of the cap modules.
    Pipeline {
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 1)]
        k0: u32,
        #[arg(long, default_value_t = 1)]
        k1: u32,
        /// Augmentation index; every pair when omitted.
        #[arg(long)]
        aug0: Option<usize>,
        #[arg(long)]
        aug1: Option<usize>,
        #[arg(long, default_value_t = 24)]
        max_bits: usize,
    },
    /// Exactness of the short resolution by word length.
    Exactness {
        dga: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Built-in algebras.
    Examples {
        #[command(subcommand)]
        action: ExamplesCmd,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    List,
    Emit { name: String },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn load_dga(arg: &str) -> Result<Dga> {
    let path = Path::new(arg);
    if path.exists() {
        return io::parse_dga(&fs::read_to_string(path)?);
    }
    registry::get(arg).ok_or_else(|| usage(format!("`{arg}` is neither a file nor a built-in algebra")))
}

/// `s=2,t=1` into one value per idempotent.
fn per_idempotent<T>(ring: &IdempotentRing, text: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Vec<Option<T>>> {
    let mut out: Vec<Option<T>> = ring.indices().map(|_| None).collect();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, value) =
            item.split_once('=').ok_or_else(|| usage(format!("expected label=value, got `{item}`")))?;
        let s = ring.index(label.trim()).ok_or_else(|| Error::UnknownIdempotent(label.trim().into()))?;
        out[s as usize] = Some(parse(value.trim()).ok_or_else(|| usage(format!("bad value in `{item}`")))?);
    }
    Ok(out)
}

fn copy_map(ring: &IdempotentRing, copies: &str, potentials: Option<&str>) -> Result<CopyMap> {
    let counts = per_idempotent(ring, copies, |v| v.parse::<u32>().ok())?;
    let counts: Vec<u32> = counts
        .into_iter()
        .enumerate()
        .map(|(s, k)| k.ok_or_else(|| usage(format!("no copy count for `{}`", ring.label(s as u32)))))
        .collect::<Result<_>>()?;
    let pots = match potentials {
        Some(p) => per_idempotent(ring, p, |v| v.split(':').map(|x| x.trim().parse::<i64>().ok()).collect())?,
        None => vec![None; ring.len()],
    };
    let pots = pots.into_iter().zip(&counts).map(|(p, &k)| p.unwrap_or_else(|| vec![0; k as usize])).collect();
    CopyMap::new(ring.clone(), counts, pots)
}

fn cap_spec(base: &str, copies: &str, potentials: Option<&str>) -> Result<CapSpec> {
    let d = load_dga(base)?;
    let cm = copy_map(&d.ring, copies, potentials)?;
    CapSpec::new(d, cm.counts().to_vec(), cm.potentials().to_vec())
}

/// A cap spec file, or `base:k` for k copies of every idempotent.
fn load_cap_spec(arg: &str) -> Result<CapSpec> {
    let path = Path::new(arg);
    if path.exists() {
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        return io::parse_cap_spec(&fs::read_to_string(path)?, |b| {
            let rel = dir.join(b);
            load_dga(if rel.exists() { rel.to_str().unwrap_or(b) } else { b })
        });
    }
    let (base, k) = arg.rsplit_once(':').ok_or_else(|| usage(format!("`{arg}` is neither a file nor base:k")))?;
    let k = k.parse().map_err(|_| usage(format!("bad copy count in `{arg}`")))?;
    CapSpec::uniform(load_dga(base)?, k)
}

fn pick<'a>(augs: &'a [Augmentation], i: usize, which: &str) -> Result<&'a Augmentation> {
    augs.get(i).ok_or_else(|| usage(format!("{which} index {i} out of range, {} augmentations", augs.len())))
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

/// Writes the algebra to `out` if given; prints its table or document.
fn emit_dga(cli: &Cli, d: &Dga, out: &Option<PathBuf>) -> Result<bool> {
    let doc = io::dga_to_json(d);
    if let Some(p) = out {
        fs::write(p, format!("{doc}\n"))?;
    }
    if cli.json {
        println!("{doc}");
    } else {
        print!("{d}");
    }
    let report = check_dga(d);
    if !report.ok() {
        eprintln!("warning: output fails validation: {} violation(s)", report.violations.len());
    }
    Ok(report.ok())
}

fn print_complex(label: &str, c: &ChainComplex) {
    let b = c.betti();
    println!("{label}: dim {}  betti {b}  total {}  euler {}", c.dim(), b.total(), c.euler());
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Check { dga } => {
            let d = load_dga(dga)?;
            let r = check_dga(&d);
            if cli.json {
                print_json(&json!({"pass": r.ok(), "report": r}));
            } else {
                for v in &r.violations {
                    println!("{:<12} {:<14} {}", v.generator, format!("{:?}", v.kind), v.detail);
                }
                println!("{} generators, {} violations: {}", r.generators, r.violations.len(), verdict(r.ok()));
            }
            Ok(r.ok())
        }
        Cmd::Homology { complex } => {
            let c = io::parse_complex(&fs::read_to_string(complex)?)?;
            if cli.json {
                print_json(&json!({"dim": c.dim(), "betti": c.betti(), "euler": c.euler()}));
            } else {
                print_complex("complex", &c);
            }
            Ok(true)
        }
        Cmd::Morsify { dga, out } => emit_dga(cli, &morsify(&load_dga(dga)?)?, out),
        Cmd::Omit { dga, out } => emit_dga(cli, &omit_idempotents(&load_dga(dga)?), out),
        Cmd::Expand { dga, copies, potentials, out } => {
            let d = load_dga(dga)?;
            let cm = copy_map(&d.ring, copies, potentials.as_deref())?;
            emit_dga(cli, &expand_idempotents(&d, &cm)?.0, out)
        }
        Cmd::Quotient { dga, out } => emit_dga(cli, &ordered_quotient(&load_dga(dga)?)?, out),
        Cmd::Eliminate { dga, pair, out } => {
            let (a, b) = pair.split_once(',').ok_or_else(|| usage("--pair expects a,b"))?;
            emit_dga(cli, &eliminate_pair(&load_dga(dga)?, a.trim(), b.trim())?, out)
        }
        Cmd::EliminateCm { dga, out } => emit_dga(cli, &eliminate_cm_tower(&load_dga(dga)?)?, out),
        Cmd::Truncate { dga, action, out } => {
            let q: Rational64 = action.trim().parse().map_err(|_| usage(format!("bad rational `{action}`")))?;
            emit_dga(cli, &truncate_by_action(&load_dga(dga)?, q)?, out)
        }
        Cmd::Cap { base, copies, potentials, out } => {
            emit_dga(cli, &build_cap_algebra(&cap_spec(base, copies, potentials.as_deref())?)?, out)
        }
        Cmd::ModelCap { base, copies, potentials, dim, out } => {
            emit_dga(cli, &build_model_cap(&cap_spec(base, copies, potentials.as_deref())?, *dim)?, out)
        }
        Cmd::Cthulhu { cap0, cap1, aug0, aug1, printed_ranges } => {
            let (c0, c1) = (load_cap_spec(cap0)?, load_cap_spec(cap1)?);
            let ranges = if *printed_ranges { Ranges::Printed } else { Ranges::Derived };
            let bm = build_cthulhu_bimodule_with(&c1, &c0, ranges)?;
            let mut report = json!({
                "generators": bm.generators().len(),
                "d_squared": "zero",
            });
            if !cli.json {
                for (g, h) in bm.generators().iter().enumerate() {
                    println!("{:<14} deg {:>3}  d = {}", h.name, h.degree, bm.render(bm.d(g as u32)));
                }
                println!("{} hatted generators, d^2 = 0", bm.generators().len());
            }
            if let (Some(i), Some(j)) = (aug0, aug1) {
                let augs0 = find_augmentations_with(&bm.right, SearchOptions::default())?;
                let augs1 = find_augmentations_with(&bm.left, SearchOptions::default())?;
                let f0 = augmentation_module(&bm.right, pick(&augs0, *i, "aug0")?)?;
                let f1 = augmentation_module(&bm.left, pick(&augs1, *j, "aug1")?)?;
                let c = cthulhu_complex(&bm, &f0, &f1)?;
                report["dim"] = json!(c.dim());
                report["betti"] = json!(c.betti());
                if !cli.json {
                    print_complex("cthulhu", &c);
                }
            }
            if cli.json {
                print_json(&report);
            }
            Ok(true)
        }
        Cmd::Augs { dga, max_bits, ungraded } => {
            let d = load_dga(dga)?;
            let opts = SearchOptions { cap_bits: *max_bits, ungraded: *ungraded, parallel: true };
            let augs = find_augmentations_with(&d, opts)?;
            if cli.json {
                let maps: Vec<BTreeMap<String, u8>> = augs.iter().map(|e| io::augmentation_to_map(&d, e)).collect();
                print_json(&json!({"count": augs.len(), "augmentations": maps}));
            } else {
                for (i, e) in augs.iter().enumerate() {
                    let on: Vec<&str> = (0..d.n_gens() as u32).filter(|&g| e.bit(g)).map(|g| d.name(g)).collect();
                    println!("{i:>4}  {{{}}}", on.join(", "));
                }
                println!("{} augmentations", augs.len());
            }
            Ok(true)
        }
        Cmd::Rhom { dga, v0, v1 } => {
            let d = load_dga(dga)?;
            let m0 = io::parse_module(&d, &fs::read_to_string(v0)?)?;
            let m1 = io::parse_module(&d, &fs::read_to_string(v1)?)?;
            let c = rhom_complex(&d, &m0, &m1)?;
            let routes = compare_routes(&d, &m0, &m1)?;
            if cli.json {
                print_json(&json!({
                    "dim": c.dim(), "betti": c.betti(), "euler": c.euler(),
                    "routes_agree": routes.agree(), "routes": routes,
                }));
            } else {
                print_complex("rhom", &c);
                println!("plus route: {}", verdict(routes.agree()));
            }
            Ok(routes.agree())
        }
        Cmd::SingleDegree { dga, module } => {
            let d = load_dga(dga)?;
            let v = io::parse_module(&d, &fs::read_to_string(module)?)?;
            let r = single_degree_check(&d, &v)?;
            if cli.json {
                print_json(&r);
            } else {
                println!("{:?}: {}", r.status, r.detail);
                for (s, k) in &r.block_ranks {
                    println!("  block {s}: rank {k}");
                }
            }
            Ok(r.status != CheckStatus::Fail)
        }
        Cmd::Pipeline { base, k0, k1, aug0, aug1, max_bits } => {
            let d = load_dga(base)?;
            let (s0, s1) = (CapSpec::uniform(d.clone(), *k0)?, CapSpec::uniform(d, *k1)?);
            let bm = build_cthulhu_bimodule_with(&s1, &s0, Ranges::Derived)?;
            let opts = SearchOptions { cap_bits: *max_bits, ..SearchOptions::default() };
            let augs0 = find_augmentations_with(&build_cap_algebra(&s0)?, opts)?;
            let augs1 = find_augmentations_with(&build_cap_algebra(&s1)?, opts)?;
            let idx0: Vec<usize> = aug0.map_or_else(|| (0..augs0.len()).collect(), |i| vec![i]);
            let idx1: Vec<usize> = aug1.map_or_else(|| (0..augs1.len()).collect(), |j| vec![j]);
            let mut rows = Vec::new();
            let mut pass = true;
            for &i in &idx0 {
                for &j in &idx1 {
                    let r = pipeline_compare_on(&bm, pick(&augs0, i, "aug0")?, pick(&augs1, j, "aug1")?)?;
                    pass &= r.pass;
                    if !cli.json {
                        println!(
                            "({i},{j})  cthulhu {}  rhom {}  shift {}  {}",
                            r.cthulhu,
                            r.rhom,
                            r.shift.map_or("-".into(), |s| s.to_string()),
                            verdict(r.pass)
                        );
                    }
                    rows.push(json!({"aug0": i, "aug1": j, "report": r}));
                }
            }
            if cli.json {
                print_json(&json!({"pass": pass, "pairs": rows}));
            }
            Ok(pass)
        }
        Cmd::Exactness { dga, max_len } => {
            let r = length_graded_exactness(&load_dga(dga)?, *max_len)?;
            if cli.json {
                print_json(&r);
            } else {
                println!("{:>6} {:>8} {:>8} {:>8} {:>7} {:>7}", "length", "A⊗C⊗A", "A⊗A", "A", "rk ι", "rk μ");
                for row in &r.rows {
                    let (a, b, c) = row.dims;
                    println!(
                        "{:>6} {a:>8} {b:>8} {c:>8} {:>7} {:>7}  {}",
                        row.length,
                        row.rank_iota,
                        row.rank_mu,
                        if row.exact { "exact" } else { "NOT exact" }
                    );
                }
                println!("{}", verdict(r.pass));
            }
            Ok(r.pass)
        }
        Cmd::Examples { action } => match action {
            ExamplesCmd::List => {
                if cli.json {
                    print_json(&registry::NAMES);
                } else {
                    for n in registry::NAMES {
                        println!("{n}");
                    }
                }
                Ok(true)
            }
            ExamplesCmd::Emit { name } => {
                let d = registry::get(name).ok_or_else(|| usage(format!("no built-in algebra `{name}`")))?;
                println!("{}", io::dga_to_json(&d));
                Ok(true)
            }
        },
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if cli.json {
                print_json(&json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input() { 2 } else { 1 })
        }
    }
}
