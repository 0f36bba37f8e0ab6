//! `sbs` — strip-based syzygy calculator for special biserial algebras.
//!
//! Loads a presentation (from a file or a built-in example), fixes an
//! overquiver, and exposes the strip machinery on the command line:
//! encodings and censuses (`info`), syzygy summands (`syzygy`), the row
//! tree beneath a module (`fabric`), closure under syzygy summands
//! (`syzygy-quiver`), the pin graph (`pin-graph`), and a differential
//! test of the strip engine against exact linear algebra (`check`).
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 on
//! success, 1 on domain errors (unreadable files, invalid presentations
//! or words, failed checks), 2 on usage errors. ANSI colour is used on
//! terminals; `SBS_COLOR=0` or `SBS_COLOR=1` overrides the detection.

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sbs_analysis::{longest_pin_path, pin_graph, PinGraph, PinPathLength};
use sbs_oracle::gen::random_strip;
use sbs_oracle::{iso_check, rep_of_string, syzygy_oracle, IsoResult, Representation};
use sbs_patches::{build_patch_set, PatchClass};
use sbs_permdata::{Overquiver, PermissibleData};
use sbs_presentation::{example_source, SbAlgebraSpec};
use sbs_strips::Strip;
use sbs_syzygy::{syzygy_strips, Fabric, QuiverStatus, SyzygyQuiver};
use serde_json::json;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

/// Append a formatted line to an output buffer.
macro_rules! outln {
    ($out:expr) => {
        $out.push('\n')
    };
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($out, $($arg)*);
    }};
}

/// Strips, syzygies and syzygy quivers over special biserial algebras.
#[derive(Parser)]
#[command(name = "sbs", version, about)]
struct Cli {
    /// Path to a presentation file (see `quiver { ... } relations { ... }`).
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Option<PathBuf>,

    /// Use a built-in example presentation instead of a file.
    #[arg(long, global = true, value_name = "N")]
    example: Option<u32>,

    /// Which overquiver to compute over when several exist (0 = canonical).
    #[arg(long, global = true, value_name = "INDEX", default_value_t = 0)]
    overquiver: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarise the algebra: encoding, syllable census, patches, pin graph.
    Info {
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// List the direct summands of iterated syzygies of a string module.
    Syzygy {
        /// The module, written as a strip word such as "(a.b)(d)^-1".
        #[arg(long, value_name = "WORD")]
        string: String,
        /// Number of syzygy steps to take.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Expand the tree of syzygy rows beneath a string module.
    Fabric {
        /// The module at the root, written as a strip word.
        #[arg(long, value_name = "WORD")]
        string: String,
        /// How many rows to unfold below the root.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Close a string module under taking syzygy summands.
    SyzygyQuiver {
        /// The seed module, written as a strip word.
        #[arg(long, value_name = "WORD")]
        string: String,
        /// Give up after visiting this many modules.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
    /// Cross-check strip syzygies against exact linear algebra.
    Check {
        /// Seed for the random module generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random modules to test.
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Worker threads; trials are seeded per index, so results do
        /// not depend on the thread count.
        #[arg(long, default_value_t = 1, value_name = "N")]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Print the pin graph of the algebra.
    PinGraph {
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
    },
}

/// Output formats for graph-shaped results.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Text,
    Dot,
    Json,
}

/// Output formats for tabular reports.
#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

enum Failure {
    /// Bad invocation: missing or contradictory arguments. Exit code 2.
    Usage(String),
    /// The inputs could not be processed or a check failed. Exit code 1.
    Domain(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    write_stdout(&out);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!();
            eprintln!("For more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Write the buffered results, staying quiet if the reader hung up.
fn write_stdout(text: &str) {
    use std::io::Write as _;
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        Ok(()) => {}
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let (label, spec, pd) = load(cli)?;
    let style = Style::detect();
    match &cli.command {
        Command::Info { format } => cmd_info(out, &label, &spec, &pd, *format, &style),
        Command::Syzygy { string, depth, format } => {
            cmd_syzygy(out, &pd, string, *depth, *format, &style)
        }
        Command::Fabric { string, depth, format } => cmd_fabric(out, &pd, string, *depth, *format),
        Command::SyzygyQuiver { string, budget, format } => {
            cmd_syzygy_quiver(out, &pd, string, *budget, *format, &style)
        }
        Command::Check { seed, trials, jobs, format } => {
            cmd_check(out, &spec, &pd, *seed, *trials, *jobs, *format, &style)
        }
        Command::PinGraph { format } => cmd_pin_graph(out, &spec, &pd, *format),
    }
}

/// Resolve `--algebra`/`--example` and `--overquiver` into a validated
/// presentation and its permissible data.
fn load(cli: &Cli) -> Result<(String, SbAlgebraSpec, PermissibleData), Failure> {
    let (label, source) = match (&cli.algebra, cli.example) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "the argument '--algebra <FILE>' cannot be used with '--example <N>'".into(),
            ))
        }
        (None, None) => {
            return Err(Failure::Usage(
                "either '--algebra <FILE>' or '--example <N>' is required".into(),
            ))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), text)
        }
        (None, Some(n)) => {
            let text = example_source(n).ok_or_else(|| {
                Failure::Domain(format!("no built-in example {n} (available: 1)"))
            })?;
            (format!("example {n}"), text.to_string())
        }
    };
    let spec = SbAlgebraSpec::parse(&source)
        .map_err(|e| Failure::Domain(format!("{label}: {e}")))?;
    let count = Overquiver::count(&spec);
    let over = Overquiver::nth(&spec, cli.overquiver).ok_or_else(|| {
        Failure::Domain(format!(
            "overquiver index {} is out of range: the presentation admits {count} overquiver{}",
            cli.overquiver,
            if count == 1 { "" } else { "s" },
        ))
    })?;
    Ok((label, spec.clone(), PermissibleData::compute(&spec, over)))
}

fn parse_strip(pd: &PermissibleData, word: &str) -> Result<Strip, Failure> {
    Strip::from_word(pd, word)
        .map_err(|e| Failure::Domain(format!("cannot parse strip word {word:?}: {e}")))
}

fn push_json(out: &mut String, value: &serde_json::Value) {
    out.push_str(&serde_json::to_string_pretty(value).expect("JSON output is serialisable"));
    out.push('\n');
}

// ---------------------------------------------------------------------
// info

fn cmd_info(
    out: &mut String,
    label: &str,
    spec: &SbAlgebraSpec,
    pd: &PermissibleData,
    format: ReportFormat,
    style: &Style,
) -> Result<(), Failure> {
    let q = spec.quiver();
    let syllables = sbs_syllables::census(pd);
    let patches = build_patch_set(pd);
    let mut by_class = [0usize; 5];
    for p in &patches {
        let k = match p.class(pd) {
            PatchClass::Blank => 0,
            PatchClass::Virtual => 1,
            PatchClass::Plain => 2,
            PatchClass::OnePinTop => 3,
            PatchClass::TwoPinTop => 4,
        };
        by_class[k] += 1;
    }
    let pins = pin_graph(pd);
    let longest = longest_pin_path(&pins);

    if format == ReportFormat::Json {
        push_json(out, &json!({
            "algebra": {
                "source": label,
                "vertices": q.vertices().map(|v| q.vertex_name(v)).collect::<Vec<_>>(),
                "arrows": q.arrow_ids().map(|x| json!({
                    "name": q.arrow_name(x),
                    "source": q.vertex_name(q.source(x)),
                    "target": q.vertex_name(q.target(x)),
                })).collect::<Vec<_>>(),
                "monomials": spec.monomials().len(),
                "commutativity": spec.commutativity().len(),
            },
            "overquiver": {
                "index": pd.over().choice_index(),
                "count": Overquiver::count(spec),
            },
            "slots": pd.slots().map(|i| json!({
                "name": pd.over().slot_name(i),
                "vertex": q.vertex_name(pd.over().ground_vertex(i)),
                "a": pd.a(i),
                "b": pd.b(i),
                "c": pd.c(i),
                "d": pd.d(i),
                "pin": pd.is_pin_slot(i),
                "virtual": pd.has_virtual(i),
            })).collect::<Vec<_>>(),
            "syllables": syllables.len(),
            "patches": {
                "total": patches.len(),
                "blank": by_class[0],
                "virtual": by_class[1],
                "plain": by_class[2],
                "one_pin_top": by_class[3],
                "two_pin_top": by_class[4],
            },
            "pin_graph": {
                "vertices": pins.n_vertices(),
                "arrows": pins.n_arrows(),
                "acyclic": matches!(longest, PinPathLength::Finite(_)),
                "longest_path": match longest {
                    PinPathLength::Finite(m) => json!(m),
                    PinPathLength::Infinite => json!(null),
                },
            },
        }));
        return Ok(());
    }

    outln!(out, "{}: {}", style.bold("algebra"), label);
    let vertices: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
    outln!(out, "  vertices: {}", vertices.join(" "));
    let arrows: Vec<String> = q
        .arrow_ids()
        .map(|x| {
            format!(
                "{}: {} -> {}",
                q.arrow_name(x),
                q.vertex_name(q.source(x)),
                q.vertex_name(q.target(x))
            )
        })
        .collect();
    outln!(out, "  arrows: {}", arrows.join(", "));
    outln!(
        out,
        "  relations: {} monomial, {} commutativity",
        spec.monomials().len(),
        spec.commutativity().len()
    );
    outln!(
        out,
        "{} {} of {}",
        style.bold("overquiver"),
        pd.over().choice_index(),
        Overquiver::count(spec)
    );
    outln!(out, "  {:<8} {:<6} {:>2} {:>2} {:>2} {:>2}", "slot", "over", "a", "b", "c", "d");
    for i in pd.slots() {
        let mut notes = Vec::new();
        if pd.is_pin_slot(i) {
            notes.push("pin");
        }
        if pd.has_virtual(i) {
            notes.push("virtual");
        }
        outln!(
            out,
            "  {:<8} {:<6} {:>2} {:>2} {:>2} {:>2}  {}",
            pd.over().slot_name(i),
            q.vertex_name(pd.over().ground_vertex(i)),
            pd.a(i),
            pd.b(i),
            pd.c(i),
            pd.d(i),
            notes.join(", "),
        );
    }
    outln!(out, "{}: {}", style.bold("syllables"), syllables.len());
    outln!(
        out,
        "{}: {} (blank {}, virtual {}, plain {}, one-pin-top {}, two-pin-top {})",
        style.bold("patches"),
        patches.len(),
        by_class[0],
        by_class[1],
        by_class[2],
        by_class[3],
        by_class[4],
    );
    let shape = match longest {
        PinPathLength::Finite(m) => format!("acyclic, longest path {m}"),
        PinPathLength::Infinite => "cyclic".to_string(),
    };
    outln!(
        out,
        "{}: {} vertices, {} arrow{}; {}",
        style.bold("pin graph"),
        pins.n_vertices(),
        pins.n_arrows(),
        if pins.n_arrows() == 1 { "" } else { "s" },
        shape,
    );
    Ok(())
}

// ---------------------------------------------------------------------
// syzygy

fn cmd_syzygy(
    out: &mut String,
    pd: &PermissibleData,
    word: &str,
    depth: usize,
    format: ReportFormat,
    style: &Style,
) -> Result<(), Failure> {
    let strip = parse_strip(pd, word)?;
    let mut level = vec![strip.clone()];
    let mut levels = Vec::new();
    for _ in 1..=depth {
        level = level.iter().flat_map(|s| syzygy_strips(pd, s)).collect();
        levels.push(level.clone());
    }

    if format == ReportFormat::Json {
        push_json(out, &json!({
            "input": { "word": strip.word_string(pd), "dim": strip.dim() },
            "levels": levels.iter().enumerate().map(|(k, parts)| json!({
                "depth": k + 1,
                "summands": parts.iter().map(|s| json!({
                    "word": s.word_string(pd),
                    "dim": s.dim(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }));
        return Ok(());
    }

    outln!(out, "{} 0: {}  [dim {}]", style.bold("depth"), strip.word_string(pd), strip.dim());
    for (k, parts) in levels.iter().enumerate() {
        outln!(
            out,
            "{} {}: {} summand{}",
            style.bold("depth"),
            k + 1,
            parts.len(),
            if parts.len() == 1 { "" } else { "s" },
        );
        for s in parts {
            outln!(out, "  {}  [dim {}]", s.word_string(pd), s.dim());
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// fabric

fn cmd_fabric(
    out: &mut String,
    pd: &PermissibleData,
    word: &str,
    depth: usize,
    format: GraphFormat,
) -> Result<(), Failure> {
    let strip = parse_strip(pd, word)?;
    let fabric = Fabric::build(pd, &strip, depth);
    match format {
        GraphFormat::Dot => out.push_str(&fabric.to_dot(pd)),
        GraphFormat::Json => push_json(out, &fabric.to_json(pd)),
        GraphFormat::Text => {
            outln!(
                out,
                "fabric of {} to depth {}: {} nodes",
                strip.word_string(pd),
                depth,
                fabric.nodes().len()
            );
            for (k, node) in fabric.nodes().iter().enumerate() {
                let parent = match node.parent {
                    Some(p) => format!(" <- #{p}"),
                    None => String::new(),
                };
                let tag = if node.strip.is_virtual_row() { "  [virtual row]" } else { "" };
                outln!(
                    out,
                    "  #{k} depth {}{}: {}  [dim {}]{}",
                    node.depth,
                    parent,
                    node.strip.word_string(pd),
                    node.strip.dim(),
                    tag,
                );
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// syzygy-quiver

fn cmd_syzygy_quiver(
    out: &mut String,
    pd: &PermissibleData,
    word: &str,
    budget: usize,
    format: GraphFormat,
    style: &Style,
) -> Result<(), Failure> {
    let strip = parse_strip(pd, word)?;
    let quiver = SyzygyQuiver::explore(pd, &[strip.clone()], budget);
    match format {
        GraphFormat::Dot => out.push_str(&quiver.to_dot(pd)),
        GraphFormat::Json => push_json(out, &quiver.to_json(pd)),
        GraphFormat::Text => {
            outln!(out, "syzygy quiver seeded at {}", strip.word_string(pd));
            let verdict = match quiver.status() {
                QuiverStatus::Finite => style.green("finite"),
                QuiverStatus::Unknown => style.red("unknown (budget exhausted)"),
            };
            outln!(out, "  status: {verdict}");
            outln!(out, "  vertices: {}", quiver.n_vertices());
            outln!(out, "  arrows: {}", quiver.n_arrows());
            for (k, s) in quiver.strips().iter().enumerate() {
                outln!(out, "  #{k} {}  [dim {}]", s.word_string(pd), s.dim());
            }
            for &(a, b) in quiver.arrows() {
                outln!(out, "  #{a} -> #{b}");
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// check

struct Trial {
    index: usize,
    word: String,
    module_dim: usize,
    syzygy_dim: usize,
    error: Option<String>,
}

/// Per-trial seeding keeps runs reproducible for a fixed `--seed`
/// regardless of `--jobs`.
fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn run_trial(spec: &SbAlgebraSpec, pd: &PermissibleData, seed: u64, index: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, index));
    let strip = random_strip(pd, &mut rng, 11);
    let word = strip.word_string(pd);
    let module = rep_of_string(spec, &strip.string_graph(pd));
    let mut trial =
        Trial { index, word, module_dim: module.dim(), syzygy_dim: 0, error: None };
    if let Err(e) = module.validate(spec) {
        trial.error = Some(format!("the generated module violates the relations: {e}"));
        return trial;
    }
    let expected = syzygy_oracle(spec, &module);
    trial.syzygy_dim = expected.dim();
    let parts = syzygy_strips(pd, &strip);
    let reps: Vec<Representation> =
        parts.iter().map(|s| rep_of_string(spec, &s.string_graph(pd))).collect();
    let refs: Vec<&Representation> = reps.iter().collect();
    let engine = Representation::direct_sum(spec, &refs);
    if engine.dims() != expected.dims() {
        trial.error = Some(format!(
            "engine dimension vector {:?} differs from the oracle's {:?}",
            engine.dims(),
            expected.dims(),
        ));
        return trial;
    }
    for attempt in 0..4 {
        match iso_check(spec, &engine, &expected, &mut rng) {
            IsoResult::Isomorphic => return trial,
            IsoResult::NotIsomorphic => {
                trial.error = Some("engine and oracle syzygies are not isomorphic".into());
                return trial;
            }
            IsoResult::NotDecided if attempt < 3 => continue,
            IsoResult::NotDecided => {
                trial.error =
                    Some("no isomorphism between engine and oracle syzygies was found".into());
                return trial;
            }
        }
    }
    unreachable!("the attempt loop always returns");
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    out: &mut String,
    spec: &SbAlgebraSpec,
    pd: &PermissibleData,
    seed: u64,
    trials: usize,
    jobs: usize,
    format: ReportFormat,
    style: &Style,
) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(Failure::Usage("'--jobs' must be at least 1".into()));
    }
    let mut results: Vec<Trial> = if jobs == 1 || trials <= 1 {
        (0..trials).map(|k| run_trial(spec, pd, seed, k)).collect()
    } else {
        let workers = jobs.min(trials);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        (w..trials)
                            .step_by(workers)
                            .map(|k| run_trial(spec, pd, seed, k))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("check worker panicked"))
                .collect()
        })
    };
    results.sort_by_key(|t| t.index);
    let failed = results.iter().filter(|t| t.error.is_some()).count();

    if format == ReportFormat::Json {
        push_json(out, &json!({
            "seed": seed,
            "trials": trials,
            "agreed": trials - failed,
            "results": results.iter().map(|t| json!({
                "trial": t.index,
                "word": t.word,
                "module_dim": t.module_dim,
                "syzygy_dim": t.syzygy_dim,
                "ok": t.error.is_none(),
                "error": t.error,
            })).collect::<Vec<_>>(),
        }));
    } else {
        for t in &results {
            let verdict = match &t.error {
                None => style.green("ok"),
                Some(_) => style.red("FAIL"),
            };
            outln!(
                out,
                "trial {:>3}/{}: {}  {}  [dim {} -> syzygy dim {}]",
                t.index + 1,
                trials,
                verdict,
                t.word,
                t.module_dim,
                t.syzygy_dim,
            );
            if let Some(e) = &t.error {
                outln!(out, "  {e}");
            }
        }
        if failed == 0 {
            outln!(out, "{}: {}/{} trials agreed", style.green("check passed"), trials, trials);
        } else {
            outln!(out, "{}: {} of {} trials disagreed", style.red("check failed"), failed, trials);
        }
    }
    if failed > 0 {
        return Err(Failure::Domain(format!("check failed on {failed} of {trials} trials")));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// pin-graph

fn cmd_pin_graph(
    out: &mut String,
    spec: &SbAlgebraSpec,
    pd: &PermissibleData,
    format: GraphFormat,
) -> Result<(), Failure> {
    let pins: PinGraph = pin_graph(pd);
    match format {
        GraphFormat::Dot => out.push_str(&pins.to_dot()),
        GraphFormat::Json => push_json(out, &pins.to_json()),
        GraphFormat::Text => {
            outln!(
                out,
                "pin graph on {} vertices with {} arrow{}",
                pins.n_vertices(),
                pins.n_arrows(),
                if pins.n_arrows() == 1 { "" } else { "s" },
            );
            let q = spec.quiver();
            for (a, b) in pins.edges() {
                outln!(out, "  {} -> {}", q.vertex_name(a), q.vertex_name(b));
            }
            match longest_pin_path(&pins) {
                PinPathLength::Finite(m) => outln!(out, "acyclic; longest path {m}"),
                PinPathLength::Infinite => outln!(out, "cyclic; no finite width bound applies"),
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// colour

struct Style {
    on: bool,
}

impl Style {
    fn detect() -> Style {
        let on = match std::env::var("SBS_COLOR").as_deref() {
            Ok("0") => false,
            Ok("1") => true,
            _ => std::io::stdout().is_terminal(),
        };
        Style { on }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.on {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn bold(&self, text: &str) -> String {
        self.paint("1", text)
    }

    fn green(&self, text: &str) -> String {
        self.paint("32", text)
    }

    fn red(&self, text: &str) -> String {
        self.paint("31", text)
    }
}
