//! Command-line surface: theorem checks, exports, packing detail views,
//! Kirkman schedules, and the counter-strip game.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! errors (unknown check ids, malformed selectors, unsupported formats).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};

use pg240::checks::{run_check, CheckId, CheckOptions, CheckReport};
use pg240::e8::combinatorial_psi_prime_residues;
use pg240::game::{self, Mover};
use pg240::order::ReducedCode;
use pg240::pg32::{kirkman, verify_schedule, Triple};
use pg240::weyl::mu_quads;
use pg240::world::World;

#[derive(Parser)]
#[command(
    name = "pg240",
    about = "The 240 packings of PG(3,2): exhaustive checks, exports, schedules, and a game",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the named verification checks (exit 1 on any failure).
    Verify {
        /// Run the whole catalogue.
        #[arg(long)]
        all: bool,
        /// Run one named check; repeatable. See --list for the names.
        #[arg(long = "check", value_name = "ID")]
        checks: Vec<String>,
        /// List the catalogue and exit.
        #[arg(long)]
        list: bool,
        /// Fan independent checks across this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also run the whole-group brute-force oracles.
        #[arg(long)]
        deep: bool,
        /// Print the detail lines of passing checks too.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Write a deterministic data export.
    Export {
        #[arg(long, value_enum)]
        what: ExportWhat,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show everything known about one packing.
    Packing {
        #[command(flatten)]
        selector: Selector,
    },
    /// Emit the walking schedule of a packing.
    Kirkman {
        #[command(flatten)]
        selector: Selector,
        /// JSON instead of aligned text.
        #[arg(long)]
        json: bool,
    },
    /// The counter-strip game.
    Game {
        #[command(subcommand)]
        mode: GameCmd,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum ExportWhat {
    Packings,
    Poset,
    Codes,
    Roots,
}

#[derive(Copy, Clone, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
    Csv,
}

#[derive(clap::Args)]
struct Selector {
    /// Lehmer code "k8.k5.k3.k2".
    #[arg(long)]
    id: Option<String>,
    /// Mixed-radix code index 0..239.
    #[arg(long)]
    index: Option<usize>,
    /// Seven comma-separated triples, e.g. "127,136,145,235,246,347,567".
    #[arg(long)]
    triples: Option<String>,
}

#[derive(Subcommand)]
enum GameCmd {
    /// Print the eight winning positions.
    Solve,
    /// Play against the engine from the full-strip start.
    Play {
        /// Who moves first.
        #[arg(long, value_enum, default_value_t = FirstMover::Human)]
        first: FirstMover,
        /// Write a JSON transcript here when the game ends.
        #[arg(long, value_name = "PATH")]
        json_transcript: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum FirstMover {
    Human,
    Engine,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes, like any filter should.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify {
            all,
            checks,
            list,
            jobs,
            deep,
            verbose,
        } => cmd_verify(all, checks, list, jobs, deep, verbose),
        Cmd::Export { what, format, out } => cmd_export(what, format, out),
        Cmd::Packing { selector } => cmd_packing(selector),
        Cmd::Kirkman { selector, json } => cmd_kirkman(selector, json),
        Cmd::Game { mode } => cmd_game(mode),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn cmd_verify(
    all: bool,
    names: Vec<String>,
    list: bool,
    jobs: usize,
    deep: bool,
    verbose: bool,
) -> ExitCode {
    if list {
        for id in CheckId::ALL {
            println!("{}", id.id());
        }
        return ExitCode::SUCCESS;
    }
    let ids: Vec<CheckId> = if all {
        CheckId::ALL.to_vec()
    } else if names.is_empty() {
        return usage_error("nothing to do; pass --all or --check <id> (see --list)");
    } else {
        let mut ids = Vec::new();
        for name in &names {
            match CheckId::parse(name) {
                Some(id) => ids.push(id),
                None => return usage_error(&format!("unknown check id {name:?} (see --list)")),
            }
        }
        ids
    };

    let world = World::get();
    let opts = CheckOptions { deep };
    let reports: Vec<CheckReport> = if jobs <= 1 {
        ids.iter().map(|&id| run_check(id, world, &opts)).collect()
    } else {
        // Work-stealing fan-out over the independent checks; results are
        // reordered afterwards so output stays deterministic.
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<CheckReport>>> = Mutex::new(vec![None; ids.len()]);
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(ids.len()) {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= ids.len() {
                        break;
                    }
                    let report = run_check(ids[k], world, &opts);
                    slots.lock().unwrap()[k] = Some(report);
                });
            }
        });
        slots
            .into_inner()
            .unwrap()
            .into_iter()
            .map(|r| r.expect("every check ran"))
            .collect()
    };

    let mut failed = 0;
    for report in &reports {
        let status = if report.passed { "pass" } else { "FAIL" };
        println!(
            "{:<16} {}  {:>7.3}s",
            report.id,
            status,
            report.millis as f64 / 1000.0
        );
        if verbose {
            for d in &report.details {
                println!("    {d}");
            }
        }
        if let Some(failure) = &report.failure {
            println!("    counterexample: {failure}");
            failed += 1;
        }
    }
    if failed == 0 {
        println!("{} checks passed", reports.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} checks failed", reports.len());
        ExitCode::from(1)
    }
}

fn cmd_export(what: ExportWhat, format: ExportFormat, out: Option<PathBuf>) -> ExitCode {
    let w = World::get();
    let body = match (what, format) {
        (ExportWhat::Packings, ExportFormat::Json) => w.packings_json(),
        (ExportWhat::Poset, ExportFormat::Dot) => w.poset_dot(),
        (ExportWhat::Codes, ExportFormat::Csv) => w.codes_csv(),
        (ExportWhat::Roots, ExportFormat::Json) => w.roots_json(),
        _ => {
            return usage_error(
                "unsupported pair; use packings+json, poset+dot, codes+csv, or roots+json",
            )
        }
    };
    match out {
        None => {
            print!("{body}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(&path, body) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(1)
            }
        },
    }
}

fn resolve_selector(w: &World, s: &Selector) -> Result<usize, String> {
    let given = [s.id.is_some(), s.index.is_some(), s.triples.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err("pass exactly one of --id, --index, --triples".into());
    }
    if let Some(id) = &s.id {
        let code: ReducedCode = id.parse()?;
        return Ok(w.pid_by_code(code));
    }
    if let Some(index) = s.index {
        if index >= 240 {
            return Err(format!("index {index} out of range 0..239"));
        }
        return Ok(w.pid_by_index(index).unwrap());
    }
    let spec = s.triples.as_deref().unwrap();
    let triples: Vec<Triple> = spec
        .split(',')
        .map(|part| part.trim().parse::<Triple>())
        .collect::<Result<_, _>>()?;
    w.pid_by_triples(&triples)
}

fn cmd_packing(selector: Selector) -> ExitCode {
    let w = World::get();
    let pid = match resolve_selector(w, &selector) {
        Ok(pid) => pid,
        Err(e) => return usage_error(&e),
    };
    let p = w.packing(pid);
    let code = w.lehmer.code_of[pid];
    println!("packing {code} (index {})", code.index());
    let triples: Vec<String> = p.triples().iter().map(|t| t.to_string()).collect();
    println!("  triples:      {}", triples.join(" "));
    println!("  basepoint:    {}", p.basepoint());
    let res1 = w.rs.residues(&w.ortho_of[pid], &w.rs.psi).len();
    let rprime = w.psi_prime.orthoset_of_packing(p);
    let res2 = w.rs.residues(&rprime, &w.psi_prime.psi_prime()).len();
    println!(
        "  height:       {} geodesic = {} by label parity = {} / {} by residue count",
        w.heights[pid],
        pg240::order::combinatorial_height(p),
        res1,
        res2
    );
    let cosets: Vec<String> = w.idx.lambda[pid].iter().map(|c| c.to_string()).collect();
    println!("  cosets:       {}", cosets.join(" "));
    let quads: Vec<String> = mu_quads(p)
        .iter()
        .map(|&q| {
            (1..=8)
                .filter(|&l| q & (1 << (l - 1)) != 0)
                .map(|l| l.to_string())
                .collect::<String>()
        })
        .collect();
    println!("  subsets:      {}", quads.join(" "));
    let plane = pg240::bridge::to_signed_fano7(p);
    let signed: Vec<String> = plane
        .edges
        .iter()
        .map(|(t, neg)| format!("{}{t}", if *neg { "-" } else { "+" }))
        .collect();
    println!("  signed plane: {}", signed.join(" "));
    let class = pg240::bridge::mts_class(pid, &w.idx);
    let mut members: Vec<String> = (0..w.idx.len())
        .filter(|&q| pg240::bridge::mts_class(q, &w.idx) == class)
        .map(|q| w.lehmer.code_of[q].to_string())
        .collect();
    members.sort_unstable();
    println!("  coset class:  {} ({})", class, members.join(" "));
    let (bps, tris) = combinatorial_psi_prime_residues(p);
    let bps: Vec<String> = bps.iter().map(|b| b.to_string()).collect();
    let tris: Vec<String> = tris.iter().map(|t| t.to_string()).collect();
    println!(
        "  residues:     basepoints {{{}}} triples {{{}}}",
        bps.join(" "),
        tris.join(" ")
    );
    ExitCode::SUCCESS
}

fn cmd_kirkman(selector: Selector, json: bool) -> ExitCode {
    let w = World::get();
    let pid = match resolve_selector(w, &selector) {
        Ok(pid) => pid,
        Err(e) => return usage_error(&e),
    };
    let schedule = kirkman(w.packing(pid), &w.heptads);
    if let Err(e) = verify_schedule(&schedule) {
        eprintln!("error: emitted schedule failed its own check: {e}");
        return ExitCode::from(1);
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&schedule).expect("schedule serializes")
        );
    } else {
        for (d, day) in schedule.days.iter().enumerate() {
            let groups: Vec<String> = day
                .iter()
                .map(|g| format!("{:>2} {:>2} {:>2}", g[0], g[1], g[2]))
                .collect();
            println!("day {}:  {}", d + 1, groups.join("  |  "));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_game(mode: GameCmd) -> ExitCode {
    let w = World::get();
    match mode {
        GameCmd::Solve => {
            println!("winning positions for the player who has just moved:");
            for pos in game::FIGURE_KERNEL {
                let cells: Vec<String> = pos.cells().iter().map(|c| c.to_string()).collect();
                let label = if cells.is_empty() {
                    "empty".to_string()
                } else {
                    cells.join(" ")
                };
                println!("  {pos}   ({label})");
            }
            ExitCode::SUCCESS
        }
        GameCmd::Play {
            first,
            json_transcript,
        } => {
            let first = match first {
                FirstMover::Human => Mover::Human,
                FirstMover::Engine => Mover::Engine,
            };
            let stdin = std::io::stdin();
            let mut stdout = std::io::stdout();
            let kernel_roots = w.kernel_roots();
            let transcript =
                match game::play(first, stdin.lock(), &mut stdout, &w.rs, &kernel_roots) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                };
            if let Some(path) = json_transcript {
                let body =
                    serde_json::to_string_pretty(&transcript).expect("transcript serializes");
                if let Err(e) = std::fs::write(&path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
                let _ = writeln!(stdout, "transcript written to {}", path.display());
            }
            ExitCode::SUCCESS
        }
    }
}
