use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};

use ridgechord::chordality::{greedy_elimination, is_ridge_chordal, ChordalVerdict};
use ridgechord::constructibility::{self, delta_constructibility_certificate};
use ridgechord::constructions::{alexander_dual, clique_complex, delta2, derive_c2, dual_c2_shelling, dual_of_clique, simplex_skeleton};
use ridgechord::decomposability::is_k_decomposable;
use ridgechord::homology::{reduced_homology_with, HomologyOptions};
use ridgechord::io::{digest, load_complex, load_order, order_to_text, save_complex, to_json, to_text};
use ridgechord::report::{InputDigest, Report, Verdict, USAGE_EXIT_CODE};
use ridgechord::search::{init_thread_pool, Budget, SearchOutcome, DEFAULT_BUDGET};
use ridgechord::shelling::{extend_shelling_to_skeleton, find_shelling, is_complete_shelling, is_shelling};
use ridgechord::theorem_a::theorem_a_certificate;
use ridgechord::{Result, SimplicialComplex};

/// Ridge-chordality, shellability and k-decomposability of pure simplicial complexes.
#[derive(Parser)]
#[command(name = "ridgechord", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a complex and write it out.
    #[command(subcommand)]
    Build(Build),
    /// Decide a property of a complex.
    #[command(subcommand)]
    Check(Check),
    /// Run a multi-stage certification pipeline.
    #[command(subcommand)]
    Certify(Certify),
    /// Print basic statistics and the digest of a complex.
    Stats { file: PathBuf },
}

#[derive(Args)]
struct Output {
    /// Destination file; `.json` selects JSON, anything else the text format.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Build {
    /// The 2-complex C₂ recovered from the embedded shelling.
    C2 {
        #[command(flatten)]
        out: Output,
    },
    /// k copies of C₂ glued along their free ridge.
    Delta {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The clique complex of a pure complex.
    Clique {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The Alexander dual of the clique complex, over the same ground set.
    Dual {
        file: PathBuf,
        /// Dualize the input itself instead of its clique complex.
        #[arg(long)]
        plain: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The s-skeleton of the n-simplex on vertices 1..=n+1.
    Skeleton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        out: Output,
    },
    /// The embedded 22-facet shelling order of the dual of Cl(C₂).
    C2DualShelling {
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Exhaustive (or greedy) simplicial-ridge elimination.
    RidgeChordal {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Follow one elimination path; never reports a refutation.
        #[arg(long)]
        greedy: bool,
        /// Write the elimination trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Verify a given order, or search for one when no order is given.
    Shelling {
        file: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Where to write a found order.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a decomposition with shedding faces of dimension at most k.
    KDecomposable {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the certificate as JSON.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Reduced integral homology; verified when every group vanishes.
    Homology {
        file: PathBuf,
        #[arg(long, default_value_t = HomologyOptions::default().max_entries)]
        max_entries: usize,
    },
    /// Append the missing top faces of the ambient skeleton to a shelling.
    ExtendShelling {
        file: PathBuf,
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructibility through a shelling found by search.
    Constructible {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Certify {
    /// Staged check that the dual of Cl(Δ²ₖ) is 4-decomposable.
    TheoremA {
        #[arg(long)]
        k: usize,
        /// Node budget of the terminal vertex-decomposition search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the full report, certificate included, as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Split-tree certificate that Δ²ₖ is constructible.
    DeltaConstructible {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

struct Ctx {
    json: bool,
    start: Instant,
}

impl Ctx {
    fn report(&self, operation: &str, inputs: Vec<InputDigest>, verdict: Verdict, budget: Option<Budget>, details: serde_json::Value) -> Report {
        Report {
            command: std::env::args().collect(),
            operation: operation.to_string(),
            inputs,
            verdict,
            budget,
            details,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }

    fn emit(&self, report: &Report, summary: &str) -> Result<i32> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(report)?);
        } else {
            println!("{}: {} ({summary})", report.operation, verdict_word(report.verdict));
            if let Some(b) = report.budget {
                println!("budget: {} of {} nodes", b.used, b.limit);
            }
        }
        Ok(report.verdict.exit_code())
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::Refuted => "refuted",
        Verdict::Unknown => "unknown",
    }
}

fn load(path: &Path) -> Result<(SimplicialComplex, InputDigest)> {
    let cx = load_complex(path)?;
    let d = InputDigest { path: path.display().to_string(), sha256: digest(&cx) };
    Ok((cx, d))
}

fn file_digest(path: &Path) -> Result<InputDigest> {
    let bytes = std::fs::read(path)?;
    Ok(InputDigest { path: path.display().to_string(), sha256: format!("{:x}", Sha256::digest(&bytes)) })
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    std::fs::write(path, serde_json::to_string(value)? + "\n")?;
    Ok(())
}

fn outcome_verdict<T>(o: &SearchOutcome<T>) -> Verdict {
    match o {
        SearchOutcome::Found(_) => Verdict::Verified,
        SearchOutcome::Refuted => Verdict::Refuted,
        SearchOutcome::Unknown => Verdict::Unknown,
    }
}

fn write_complex(ctx: &Ctx, cx: &SimplicialComplex, out: &Output) -> Result<i32> {
    let stats = cx.stats();
    if let Some(path) = &out.output {
        save_complex(path, cx)?;
    }
    if ctx.json {
        let mut value = json!({ "stats": stats, "sha256": digest(cx) });
        match &out.output {
            Some(p) => value["output"] = json!(p.display().to_string()),
            None => value["complex"] = serde_json::from_str(&to_json(cx))?,
        }
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        if out.output.is_none() {
            print!("{}", to_text(cx));
        }
        let line = format!(
            "n={} dim={} facets={} f={:?} pure={}",
            cx.ground_set_size(),
            stats.dimension,
            stats.facet_count,
            stats.f_vector,
            stats.is_pure
        );
        if out.output.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(0)
}

fn write_order(ctx: &Ctx, order: &[ridgechord::Face], out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, order_to_text(order))?,
        None if !ctx.json => print!("{}", order_to_text(order)),
        None => {}
    }
    Ok(())
}

fn build(ctx: &Ctx, cmd: Build) -> Result<i32> {
    match cmd {
        Build::C2 { out } => write_complex(ctx, &derive_c2()?, &out),
        Build::Delta { k, out } => write_complex(ctx, &delta2(k)?.complex, &out),
        Build::Clique { file, out } => write_complex(ctx, &clique_complex(&load_complex(&file)?)?, &out),
        Build::Dual { file, plain, out } => {
            let cx = load_complex(&file)?;
            let dual = if plain { alexander_dual(&cx) } else { dual_of_clique(&cx)? };
            write_complex(ctx, &dual, &out)
        }
        Build::Skeleton { n, s, out } => write_complex(ctx, &simplex_skeleton(n, s)?, &out),
        Build::C2DualShelling { out } => {
            let order = dual_c2_shelling();
            write_order(ctx, &order, out.output.as_deref())?;
            if ctx.json {
                println!("{}", serde_json::to_string_pretty(&json!({ "facets": order.len(), "order": order }))?);
            }
            Ok(0)
        }
    }
}

fn check(ctx: &Ctx, cmd: Check) -> Result<i32> {
    match cmd {
        Check::RidgeChordal { file, budget, greedy, trace } => {
            let (cx, d) = load(&file)?;
            let limit = Budget::new(budget);
            let t = if greedy { greedy_elimination(&cx)? } else { is_ridge_chordal(&cx, limit)? };
            if let Some(p) = &trace {
                write_json(p, &t)?;
            }
            let verdict = match t.verdict {
                ChordalVerdict::Chordal => Verdict::Verified,
                ChordalVerdict::NotChordal => Verdict::Refuted,
                ChordalVerdict::Unknown => Verdict::Unknown,
            };
            let op = if greedy { "greedy_elimination" } else { "is_ridge_chordal" };
            let used = Budget { limit: budget, used: t.explored_states };
            let details = json!({ "steps": t.steps.len(), "explored_states": t.explored_states });
            let r = ctx.report(op, vec![d], verdict, (!greedy).then_some(used), details);
            ctx.emit(&r, &format!("{} elimination steps", t.steps.len()))
        }
        Check::Shelling { file, order, budget, out } => {
            let (cx, d) = load(&file)?;
            match order {
                Some(order_path) => {
                    let order = load_order(&order_path)?;
                    let valid = is_shelling(&cx, &order)?;
                    let complete = is_complete_shelling(&cx, &order)?;
                    let verdict = if valid && complete { Verdict::Verified } else { Verdict::Refuted };
                    let details = json!({ "shelling_condition": valid, "covers_all_facets": complete, "length": order.len() });
                    let r = ctx.report("is_shelling", vec![d, file_digest(&order_path)?], verdict, None, details);
                    ctx.emit(&r, &format!("{} facets, condition {valid}, complete {complete}", order.len()))
                }
                None => {
                    let mut b = Budget::new(budget);
                    let res = find_shelling(&cx, &mut b)?;
                    let verdict = outcome_verdict(&res);
                    let found = res.found();
                    if let Some(o) = &found {
                        write_order(ctx, o, out.as_deref())?;
                    }
                    let r = ctx.report("find_shelling", vec![d], verdict, Some(b), json!({ "order": found }));
                    ctx.emit(&r, &format!("{} facets", cx.facet_count()))
                }
            }
        }
        Check::KDecomposable { file, k, budget, cert } => {
            let (cx, d) = load(&file)?;
            let mut b = Budget::new(budget);
            let res = is_k_decomposable(&cx, k, &mut b)?;
            let verdict = outcome_verdict(&res);
            let found = res.found();
            if let (Some(p), Some(c)) = (&cert, &found) {
                write_json(p, c)?;
            }
            let details = json!({
                "k": k,
                "max_shed_dim": found.as_ref().map(|c| c.max_shed_dim),
                "shed_nodes": found.as_ref().map(|c| c.root.shed_count()),
            });
            let r = ctx.report("is_k_decomposable", vec![d], verdict, Some(b), details);
            ctx.emit(&r, &format!("k = {k}"))
        }
        Check::Homology { file, max_entries } => {
            let (cx, d) = load(&file)?;
            let profile = reduced_homology_with(&cx, HomologyOptions { max_entries })?;
            let verdict = if profile.is_trivial() { Verdict::Verified } else { Verdict::Refuted };
            let summary = format!("reduced betti {:?}", profile.betti_numbers());
            let r = ctx.report("reduced_homology", vec![d], verdict, None, serde_json::to_value(&profile)?);
            ctx.emit(&r, &summary)
        }
        Check::ExtendShelling { file, order, out } => {
            let (cx, d) = load(&file)?;
            let o = load_order(&order)?;
            let ext = extend_shelling_to_skeleton(&cx, &o)?;
            write_order(ctx, &ext, out.as_deref())?;
            let appended = ext.len() - o.len();
            let details = json!({ "appended": appended, "length": ext.len() });
            let r = ctx.report("extend_shelling_to_skeleton", vec![d, file_digest(&order)?], Verdict::Verified, None, details);
            ctx.emit(&r, &format!("appended {appended} facets"))
        }
        Check::Constructible { file, budget, cert } => {
            let (cx, d) = load(&file)?;
            let mut b = Budget::new(budget);
            // without a shelling the question stays open
            let verdict = match find_shelling(&cx, &mut b)? {
                SearchOutcome::Found(order) => {
                    let c = constructibility::certificate_from_shelling(&cx, &order)?;
                    if let Some(p) = &cert {
                        write_json(p, &c)?;
                    }
                    Verdict::Verified
                }
                _ => Verdict::Unknown,
            };
            let r = ctx.report("verify_constructibility", vec![d], verdict, Some(b), json!({}));
            ctx.emit(&r, "via shelling")
        }
    }
}

fn certify(ctx: &Ctx, cmd: Certify) -> Result<i32> {
    match cmd {
        Certify::TheoremA { k, budget, report } => {
            let rep = theorem_a_certificate(k, budget)?;
            if let Some(p) = &report {
                write_json(p, &rep)?;
            }
            if !ctx.json {
                for s in &rep.stages {
                    println!("({}) {}: {:?} [{} ms] {}", s.stage, s.name, s.status, s.elapsed_ms, s.detail);
                }
            }
            let mut details = serde_json::to_value(&rep)?;
            if report.is_some() {
                details["certificate"] = json!("written to report file");
            }
            let r = ctx.report("theorem_a_certificate", Vec::new(), rep.verdict, None, details);
            let summary = match rep.failed_stage {
                Some(s) => format!("k = {k}, stopped at stage ({s})"),
                None => format!("k = {k}, all stages passed"),
            };
            ctx.emit(&r, &summary)
        }
        Certify::DeltaConstructible { k, budget, cert } => {
            let fam = delta2(k)?;
            let mut b = Budget::new(budget);
            let res = delta_constructibility_certificate(&fam, &mut b)?;
            let verdict = outcome_verdict(&res);
            if let (Some(p), SearchOutcome::Found(c)) = (&cert, &res) {
                write_json(p, c)?;
            }
            let r = ctx.report("delta_constructibility_certificate", Vec::new(), verdict, Some(b), json!({ "k": k }));
            ctx.emit(&r, &format!("k = {k}"))
        }
    }
}

fn stats(ctx: &Ctx, file: &Path) -> Result<i32> {
    let (cx, d) = load(file)?;
    let stats = cx.stats();
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&json!({ "input": d, "n": cx.ground_set_size(), "stats": stats }))?);
    } else {
        println!("n: {}", cx.ground_set_size());
        println!("dimension: {}", stats.dimension);
        println!("facets: {}", stats.facet_count);
        println!("vertices: {}", stats.vertex_count);
        println!("f-vector: {:?}", stats.f_vector);
        println!("pure: {}", stats.is_pure);
        println!("sha256: {}", d.sha256);
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32> {
    let ctx = Ctx { json: cli.json, start: Instant::now() };
    match cli.command {
        Command::Build(b) => build(&ctx, b),
        Command::Check(c) => check(&ctx, c),
        Command::Certify(c) => certify(&ctx, c),
        Command::Stats { file } => stats(&ctx, &file),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    init_thread_pool();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_EXIT_CODE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_EXIT_CODE as u8)
        }
    }
}
