//! `qdt`: command-line front end for quiver mutation, cluster data,
//! desk-scale DT series, and the identity checks.

use clap::{Args, Parser, Subcommand};
use qdt_core::cluster;
use qdt_core::config::Config;
use qdt_core::doc::{series_terms, Document};
use qdt_core::lattice::MutationSign;
use qdt_core::potential::{mutate_qp_seq, Qp};
use qdt_core::quiver::Vertex;
use qdt_core::repr;
use qdt_core::verify;
use serde_json::json;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qdt",
    about = "Quiver mutation, cluster variables, and desk-scale DT series with identity checks",
    version
)]
struct Cli {
    /// Input document (JSON bundling quiver, potential, and modules)
    #[arg(long, global = true)]
    input: Option<String>,
    /// Truncation order for series
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Comma-separated list of primes for point counting
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u32>>,
    /// Cap on the total dimension of enumerated modules
    #[arg(long = "max-dim", global = true)]
    max_dim: Option<usize>,
    /// Emit machine-readable JSON (default)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeqArg {
    /// Mutation sequence, comma-separated 1-based vertices (may be empty)
    #[arg(long = "k", value_delimiter = ',', num_args = 0..)]
    kseq: Vec<Vertex>,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate the quiver (or the full QP with --qp) along a sequence
    Mutate {
        #[command(flatten)]
        seq: SeqArg,
        /// Mutate the potential as well and print the resulting QP
        #[arg(long)]
        qp: bool,
    },
    /// Print the seed after mutating along a sequence
    Seed {
        #[command(flatten)]
        seq: SeqArg,
    },
    /// F-polynomial of a vertex for a sequence
    Fpoly {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        i: Vertex,
    },
    /// g-vector of a vertex for a sequence
    Gvec {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        i: Vertex,
    },
    /// c-vector of a vertex for a sequence
    Cvec {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        i: Vertex,
    },
    /// Per-step signs of a sequence
    Signs {
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Hilbert-scheme series (and count table) at a vertex
    Hilb {
        #[arg(long)]
        i: Vertex,
    },
    /// Grassmannian quotient series of a catalog module
    Grass {
        /// Module name from the document's catalog
        #[arg(long)]
        module: String,
    },
    /// DT series for every vertex
    Dtseries,
    /// Identity checks
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Run the full acceptance suite
    Suite,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Cluster variable against a catalog module
    Cc {
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long)]
        i: Vertex,
        #[arg(long)]
        module: String,
    },
    /// Transformation formula for the DT automorphisms
    Trans {
        #[command(flatten)]
        seq: SeqArg,
    },
    /// Factorization into elementary wall crossings
    Factor {
        #[command(flatten)]
        seq: SeqArg,
    },
}

struct Ctx {
    doc: Document,
    config: Config,
    text: bool,
}

impl Ctx {
    fn qp(&self) -> Result<Qp, String> {
        self.doc.to_qp().map_err(|e| e.to_string())
    }

    fn emit(&self, value: serde_json::Value, text: String) {
        if self.text {
            println!("{text}");
        } else {
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
    }
}

fn signs_str(signs: &[MutationSign]) -> Vec<String> {
    signs.iter().map(|s| s.as_str().to_string()).collect()
}

fn run(cli: Cli) -> Result<bool, String> {
    let doc = match &cli.input {
        Some(path) => {
            let textf = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            Document::parse(&textf).map_err(|e| e.to_string())?
        }
        None => Document::default(),
    };
    let mut config = Config::default();
    if let Some(t) = cli.trunc {
        config.trunc_order = t;
    }
    if let Some(p) = &cli.primes {
        config.primes = p.clone();
    }
    if let Some(d) = cli.max_dim {
        config.max_total_dim = d;
    }
    config.validate().map_err(|e| e.to_string())?;
    let ctx = Ctx {
        doc,
        config,
        text: cli.text,
    };

    match cli.command {
        Command::Mutate { seq, qp } => {
            check_depth(&seq.kseq, &ctx.config)?;
            if qp {
                let base = ctx.qp()?;
                let out = mutate_qp_seq(&base, &seq.kseq, ctx.config.reduction_cap)
                    .map_err(|e| e.to_string())?;
                let docout = Document::from_qp(&out);
                ctx.emit(
                    serde_json::to_value(&docout).expect("json"),
                    docout.to_json(),
                );
            } else {
                let q = ctx.qp()?.counts();
                let out = q.mutate_seq(&seq.kseq).map_err(|e| e.to_string())?;
                ctx.emit(
                    json!({"n": out.rank(), "arrows": out.matrix()}),
                    format!("{:?}", out.matrix()),
                );
            }
            Ok(true)
        }
        Command::Seed { seq } => {
            check_depth(&seq.kseq, &ctx.config)?;
            let q = ctx.qp()?.counts();
            let mut seed = cluster::Seed::initial(&q);
            for &k in &seq.kseq {
                seed = cluster::mutate_seed(&seed, k).map_err(|e| e.to_string())?;
            }
            let vars: Vec<String> = seed
                .vars
                .iter()
                .map(|v| format!("{}", v.display_with(|i| format!("x{i}"))))
                .collect();
            ctx.emit(
                json!({"kseq": seq.kseq, "arrows": seed.quiver.matrix(), "vars": vars}),
                vars.join("\n"),
            );
            Ok(true)
        }
        Command::Fpoly { seq, i } => {
            check_depth(&seq.kseq, &ctx.config)?;
            let q = ctx.qp()?.counts();
            let f = cluster::f_polynomial(&q, &seq.kseq, i).map_err(|e| e.to_string())?;
            let s = format!("{}", f.display_with(|j| format!("y{j}")));
            ctx.emit(json!({"kseq": seq.kseq, "i": i, "F": s}), s);
            Ok(true)
        }
        Command::Gvec { seq, i } => {
            check_depth(&seq.kseq, &ctx.config)?;
            let q = ctx.qp()?.counts();
            let g = cluster::g_vector(&q, &seq.kseq, i).map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"kseq": seq.kseq, "i": i, "g": g.coords}),
                format!("{:?}", g.coords),
            );
            Ok(true)
        }
        Command::Cvec { seq, i } => {
            check_depth(&seq.kseq, &ctx.config)?;
            let q = ctx.qp()?.counts();
            let c = cluster::c_vector(&q, &seq.kseq, i).map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"kseq": seq.kseq, "i": i, "c": c.coords}),
                format!("{:?}", c.coords),
            );
            Ok(true)
        }
        Command::Signs { seq } => {
            check_depth(&seq.kseq, &ctx.config)?;
            let q = ctx.qp()?.counts();
            let signs = cluster::sign_sequence(&q, &seq.kseq).map_err(|e| e.to_string())?;
            let eps = signs_str(&signs);
            ctx.emit(json!({"kseq": seq.kseq, "eps": eps}), eps.join(" "));
            Ok(true)
        }
        Command::Hilb { i } => {
            let qp = ctx.qp()?;
            let series = repr::hilb_series(
                &qp,
                i,
                ctx.config.trunc_order,
                &ctx.config.primes,
                ctx.config.max_total_dim,
            )
            .map_err(|e| e.to_string())?;
            let table = repr::hilb_count_table(
                &qp,
                i,
                ctx.config.trunc_order,
                &ctx.config.primes,
                ctx.config.max_total_dim,
            )
            .map_err(|e| e.to_string())?;
            let counts: Vec<serde_json::Value> = table
                .counts
                .iter()
                .map(|(v, by_q)| {
                    let mut row = json!({
                        "dim": v,
                        "counts": by_q.iter().map(|(q, c)| (q.to_string(), *c as u64))
                            .collect::<std::collections::BTreeMap<_, _>>(),
                    });
                    if let Ok(e) = repr::euler_from_counts(&table, v) {
                        row["euler"] = json!(e);
                    }
                    row
                })
                .collect();
            ctx.emit(
                json!({"i": i, "series": series_terms(&series), "table": counts}),
                series.to_display_string(),
            );
            Ok(true)
        }
        Command::Grass { module } => {
            let qp = ctx.qp()?;
            let m = ctx
                .doc
                .modules
                .get(&module)
                .ok_or_else(|| format!("module `{module}` not in the document catalog"))?;
            let series = repr::grass_series(
                &qp,
                m,
                ctx.config.trunc_order,
                &ctx.config.primes,
                ctx.config.max_total_dim,
            )
            .map_err(|e| e.to_string())?;
            ctx.emit(
                json!({"module": module, "series": series_terms(&series)}),
                series.to_display_string(),
            );
            Ok(true)
        }
        Command::Dtseries => {
            let qp = ctx.qp()?;
            let n = qp.quiver().rank();
            let mut all = Vec::new();
            let mut lines = Vec::new();
            for i in 1..=n {
                let series = repr::hilb_series(
                    &qp,
                    i,
                    ctx.config.trunc_order,
                    &ctx.config.primes,
                    ctx.config.max_total_dim,
                )
                .map_err(|e| e.to_string())?;
                lines.push(format!("Z{i} = {}", series.to_display_string()));
                all.push(json!({"i": i, "series": series_terms(&series)}));
            }
            ctx.emit(json!({"dt": all}), lines.join("\n"));
            Ok(true)
        }
        Command::Verify { which } => {
            let qp = ctx.qp()?;
            let report = match which {
                VerifyCommand::Cc { seq, i, module } => {
                    check_depth(&seq.kseq, &ctx.config)?;
                    let m = ctx
                        .doc
                        .modules
                        .get(&module)
                        .ok_or_else(|| format!("module `{module}` not in the document catalog"))?;
                    verify::verify_cc(&qp, &seq.kseq, i, m, &ctx.config)
                        .map_err(|e| e.to_string())?
                }
                VerifyCommand::Trans { seq } => {
                    check_depth(&seq.kseq, &ctx.config)?;
                    verify::verify_transformation(
                        &qp,
                        &seq.kseq,
                        ctx.config.trunc_order,
                        &ctx.config,
                    )
                    .map_err(|e| e.to_string())?
                }
                VerifyCommand::Factor { seq } => {
                    check_depth(&seq.kseq, &ctx.config)?;
                    verify::verify_factorization(
                        &qp,
                        &seq.kseq,
                        ctx.config.trunc_order,
                        &ctx.config,
                    )
                    .map_err(|e| e.to_string())?
                }
            };
            let status = report.status;
            ctx.emit(
                serde_json::to_value(&report).expect("json"),
                format!(
                    "{} {} -- {}{}",
                    report.identity,
                    if status { "pass" } else { "FAIL" },
                    report.params,
                    report
                        .witness
                        .as_ref()
                        .map(|w| format!("\n  {w}"))
                        .unwrap_or_default()
                ),
            );
            Ok(status)
        }
        Command::Suite => {
            let reports = qdt_core::acceptance::run_all(&ctx.config);
            let ok = reports.iter().all(|r| r.status);
            if ctx.text {
                for r in &reports {
                    println!("{}", r.line());
                }
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "criteria": reports,
                        "status": if ok { "pass" } else { "fail" },
                    }))
                    .expect("json")
                );
            }
            Ok(ok)
        }
    }
}

fn check_depth(kseq: &[Vertex], config: &Config) -> Result<(), String> {
    if kseq.len() > config.max_depth {
        return Err(format!(
            "sequence length {} exceeds the depth cap {}",
            kseq.len(),
            config.max_depth
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("QDT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    let json_mode = !cli.text;
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            if json_mode {
                eprintln!(
                    "{}",
                    serde_json::to_string(&json!({"status": "error", "error": msg}))
                        .expect("json")
                );
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
