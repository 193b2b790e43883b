use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tevelev_cli::{execute, execute_all, render_json, render_table, replay, sweep_grid, Method, Request, RunRecord, EXIT_OK};

#[derive(Parser, Debug)]
#[command(name = "tevelev", version, about = "Virtual and geometric Tevelev degrees in exact arithmetic")]
struct Cli {
    /// Emit newline-delimited JSON records instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form virtual Tevelev degree.
    Vtev {
        #[arg(long)]
        target: String,
        #[command(flatten)]
        cell: Cell,
    },
    /// Tevelev degree of P^1 by the binomial formula and by Schubert calculus.
    TevP1 {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[command(flatten)]
        cell: Cell,
    },
    /// Cross-check the quantum cohomology oracle against the closed form on P^r.
    QhCheck {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        g_max: u32,
        #[arg(long)]
        d_max: u64,
        /// Include one entry per checked case.
        #[arg(long)]
        cases: bool,
    },
    /// Decide whether the virtual count is enumerative.
    Certify {
        #[arg(long)]
        target: String,
        /// Uniform bound on h^1 of twisted tangent bundles (custom targets).
        #[arg(long)]
        h1_bound: Option<u64>,
        #[command(flatten)]
        cell: Cell,
    },
    /// Search for very free rational curves on a hypersurface in characteristic p.
    VeryFree {
        #[arg(long)]
        e: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
    },
    /// Re-run stored JSON records and report any that no longer reproduce.
    Replay {
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Cell {
    #[arg(long, required_unless_present = "sweep")]
    g: Option<u32>,
    #[arg(long, required_unless_present = "sweep")]
    d: Option<u64>,
    /// Iterate over 0 <= g <= g-max and 1 <= d <= d-max.
    #[arg(long, requires_all = ["g_max", "d_max"])]
    sweep: bool,
    #[arg(long)]
    g_max: Option<u32>,
    #[arg(long)]
    d_max: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Binomial,
    Schubert,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Binomial => Method::Binomial,
            MethodArg::Schubert => Method::Schubert,
            MethodArg::Both => Method::Both,
        }
    }
}

impl Cell {
    fn requests(&self, make: impl Fn(u32, u64) -> Request) -> Vec<Request> {
        if self.sweep {
            sweep_grid(0, self.g_max.unwrap_or(0), 1, self.d_max.unwrap_or(0), make)
        } else {
            vec![make(self.g.expect("clap enforces g"), self.d.expect("clap enforces d"))]
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (records, sweep) = match &cli.command {
        Command::Vtev { target, cell } => {
            (execute_all(&cell.requests(|g, d| Request::Vtev { target: target.clone(), g, d })), cell.sweep)
        }
        Command::TevP1 { method, cell } => {
            let method = Method::from(*method);
            (execute_all(&cell.requests(|g, d| Request::TevP1 { g, d, method })), cell.sweep)
        }
        Command::QhCheck { r, g_max, d_max, cases } => {
            (vec![execute(&Request::QhCheck { r: *r, g_max: *g_max, d_max: *d_max, cases: *cases })], false)
        }
        Command::Certify { target, h1_bound, cell } => {
            let h1_bound = *h1_bound;
            (execute_all(&cell.requests(|g, d| Request::Certify { target: target.clone(), g, d, h1_bound })), cell.sweep)
        }
        Command::VeryFree { e, r, p } => (vec![execute(&Request::VeryFree { e: *e, r: *r, p: *p })], false),
        Command::Replay { file } => return run_replay(file, cli.out.as_ref()),
    };

    let mut text = String::new();
    for (i, record) in records.iter().enumerate() {
        if cli.json {
            text.push_str(&render_json(record));
            text.push('\n');
        } else {
            if i > 0 {
                text.push('\n');
            }
            text.push_str(&render_table(record));
        }
    }
    if let Err(err) = emit(&text, cli.out.as_ref()) {
        eprintln!("tevelev: {err}");
        return ExitCode::from(1);
    }
    ExitCode::from(exit_status(&records, sweep) as u8)
}

/// A single record maps straight to its exit code. In a sweep, ill-posed
/// cells are part of the grid, so only other failures make the run fail.
fn exit_status(records: &[RunRecord], sweep: bool) -> i32 {
    records
        .iter()
        .map(RunRecord::exit_code)
        .find(|&code| code != EXIT_OK && !(sweep && code == tevelev_cli::EXIT_WELL_POSEDNESS))
        .unwrap_or(EXIT_OK)
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run_replay(file: &PathBuf, out: Option<&PathBuf>) -> ExitCode {
    let content = match fs::read_to_string(file) {
        Ok(c) => c,
        Err(err) => {
            eprintln!("tevelev: cannot read {}: {err}", file.display());
            return ExitCode::from(1);
        }
    };
    let mut report = String::new();
    let (mut total, mut mismatches) = (0usize, 0usize);
    for (line_no, line) in content.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        total += 1;
        let outcome = serde_json::from_str::<RunRecord>(line)
            .map_err(|e| e.to_string())
            .and_then(|stored| replay(&stored).map(|fresh| fresh == stored));
        match outcome {
            Ok(true) => {}
            Ok(false) => {
                mismatches += 1;
                report.push_str(&format!("line {}: outputs differ\n", line_no + 1));
            }
            Err(err) => {
                mismatches += 1;
                report.push_str(&format!("line {}: {err}\n", line_no + 1));
            }
        }
    }
    report.push_str(&format!("replayed {total} records, {mismatches} mismatches\n"));
    if let Err(err) = emit(&report, out) {
        eprintln!("tevelev: {err}");
        return ExitCode::from(1);
    }
    ExitCode::from(if mismatches == 0 { 0 } else { 1 })
}
