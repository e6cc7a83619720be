use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use indorder::order::{compare_profiles, GraphProfile, VerdictReport};
use indorder::roots::rational_string;
use indorder::scan::{self, ScanReport, TheoremLimits};
use indorder::seq::{convert, replay, Conversion, IntSequence};
use indorder::trees::{
    all_starlike, all_starlike_by_order, all_trees_with_limit, DEFAULT_MAX_ORDER,
};
use indorder::{independence_polynomial, parse_graph, BigInt, BigRational, Error, Graph};

#[derive(Parser)]
#[command(
    name = "indorder",
    version,
    about = "Independence polynomials and the root-interval order on graphs"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the JSON result to FILE (scans also write FILE with a .csv extension).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Number of worker threads for scans.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Independence polynomial of a graph (family expression or edge-list file).
    Poly { graph: String },
    /// Largest real root of the independence polynomial.
    Xi {
        graph: String,
        /// Interval width, e.g. 1e-9, 0.001 or 1/1000.
        #[arg(long, default_value = "1e-9")]
        prec: String,
    },
    /// Compare two graphs in the order.
    Compare { first: String, second: String },
    /// Unit-transfer certificate turning sequence X into Y, e.g. `convert 9,9,6,6 10,8,7,5`.
    Convert { x: String, y: String },
    /// List all trees of an order, or starlike trees with --k.
    Enumerate(EnumerateArgs),
    /// Exhaustive checks over tree families.
    #[command(subcommand)]
    Scan(ScanCommand),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Tree order (or leg sum with --by-sum).
    n: usize,
    /// Only starlike trees with this many legs.
    #[arg(long)]
    k: Option<usize>,
    /// Read N as the leg sum of the starlike family instead of the tree order.
    #[arg(long, requires = "k")]
    by_sum: bool,
    /// Largest order accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    limit: usize,
}

#[derive(Args, Clone)]
struct Range {
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    /// Largest order accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    limit: usize,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Pairwise comparability of all trees of each order.
    TotalOrder(Range),
    /// Extremal trees bound every tree from above and below.
    Sandwich(Range),
    /// Family chains and the longest chain among all trees.
    Chains {
        #[command(flatten)]
        range: Range,
        /// Largest order for the all-pairs longest-chain search.
        #[arg(long)]
        longest_max_n: Option<usize>,
    },
    /// Leg-sequence orders versus the tree order on starlike trees.
    Starlike {
        #[arg(long, default_value_t = 4)]
        min_sum: usize,
        /// Largest leg sum n_1 + ... + n_k.
        #[arg(long, default_value_t = 14)]
        max_sum: usize,
        /// Scan by tree order up to this value instead of by leg sum.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = 3)]
        min_k: usize,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
    /// Degree-sequence questions over all tree pairs.
    DegreeQuestions(Range),
    /// Every theorem-backed check with its default range.
    Theorems {
        /// Caps every sub-suite at this order.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(arg: &str) -> Result<Graph, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return Graph::parse_edge_list(&text).map_err(|e| format!("{arg}: {e}"));
    }
    parse_graph(arg).map_err(|e| match e {
        Error::Parse { pos, .. } => format!("{e}\n  {arg}\n  {}^", " ".repeat(pos)),
        other => other.to_string(),
    })
}

fn read_sequence(arg: &str) -> Result<IntSequence, String> {
    arg.parse::<IntSequence>()
        .map_err(|e| format!("`{arg}`: {e}"))
}

/// Parses `1e-9`, `0.001` or `1/1000` into a positive rational.
fn parse_precision(s: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid precision `{s}`");
    if let Some(q) = indorder::roots::parse_rational(s).filter(|_| s.contains('/')) {
        return (q > BigRational::from_integer(0.into()))
            .then_some(q)
            .ok_or_else(bad);
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let exp = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let scale = (0..exp.unsigned_abs()).fold(BigInt::from(1), |acc, _| acc * &ten);
    let q = if exp >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    (q > BigRational::from_integer(0.into()))
        .then_some(q)
        .ok_or_else(bad)
}

/// Smallest `d` with `10^-d <= prec`.
fn digits_for(prec: &BigRational) -> usize {
    let mut d = 0;
    let mut step = BigRational::from_integer(1.into());
    while &step > prec {
        step /= BigInt::from(10);
        d += 1;
    }
    d
}

fn emit(cli: &Cli, value: &serde_json::Value, text: &str) -> Result<(), String> {
    let pretty = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    if let Some(path) = &cli.out {
        std::fs::write(path, &pretty).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if cli.json {
        out(&pretty)
    } else {
        out(&format!("{text}\n"))
    }
}

/// Writes to stdout; a closed pipe ends output quietly.
fn out(text: &str) -> Result<(), String> {
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("stdout: {e}")),
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Poly { graph } => {
            let g = read_graph(graph)?;
            let p = independence_polynomial(&g);
            emit(
                cli,
                &json!({"graph": graph, "order": g.order(), "size": g.size(), "I": p}),
                &p.to_human(),
            )?;
        }
        Command::Xi { graph, prec } => {
            let g = read_graph(graph)?;
            let width = parse_precision(prec)?;
            let root = indorder::xi(&g).map_err(|e| e.to_string())?.refine(&width);
            let digits = digits_for(&width);
            let decimal = root.to_decimal(digits);
            let exact = root.as_rational();
            let value = json!({
                "graph": graph,
                "exact": exact.as_ref().map(rational_string),
                "decimal": decimal,
                "digits": digits,
                "interval": {"lo": rational_string(root.lo()), "hi": rational_string(root.hi())},
                "defpoly": root.defpoly(),
            });
            let text = match &exact {
                Some(q) => format!("{} (exact: {})", decimal, rational_string(q)),
                None => format!(
                    "{decimal} (in [{}, {}])",
                    rational_string(root.lo()),
                    rational_string(root.hi())
                ),
            };
            emit(cli, &value, &text)?;
        }
        Command::Compare { first, second } => {
            let (g, h) = (read_graph(first)?, read_graph(second)?);
            let (pg, ph) = (GraphProfile::new(&g), GraphProfile::new(&h));
            let c = compare_profiles(&pg, &ph);
            let report = VerdictReport::new(&pg, &ph, &c);
            let mut text = format!("{:?}", c.verdict);
            if let Some(w) = &c.against_first {
                text.push_str(&format!(
                    "\n  first ⪰ second fails at x = {}",
                    rational_string(w)
                ));
            }
            if let Some(w) = &c.against_second {
                text.push_str(&format!(
                    "\n  second ⪰ first fails at x = {}",
                    rational_string(w)
                ));
            }
            emit(
                cli,
                &serde_json::to_value(&report).expect("serializable"),
                &text,
            )?;
        }
        Command::Convert { x, y } => {
            let (x, y) = (read_sequence(x)?, read_sequence(y)?);
            let result = convert(&x, &y).map_err(|e| e.to_string())?;
            let (value, text) = match &result {
                Conversion::Convertible(steps) => {
                    let end = replay(&x, steps).map_err(|e| e.to_string())?;
                    if end != y {
                        return Err("internal error: certificate does not replay".into());
                    }
                    let text = std::iter::once(format!("convertible in {} step(s)", steps.len()))
                        .chain(steps.iter().map(|s| {
                            format!("  -e_{{{}{}}}: +1 at {}, -1 at {}", s.j, s.k, s.j, s.k)
                        }))
                        .collect::<Vec<_>>()
                        .join("\n");
                    (
                        json!({"x": x, "y": y, "convertible": true, "steps": steps}),
                        text,
                    )
                }
                Conversion::NotConvertible(why) => {
                    let text = match (why.violated_prefix, why.totals_differ) {
                        (Some(i), _) => format!("not convertible: prefix {i} of y is below x"),
                        (None, _) => {
                            "not convertible: y dominates x but the totals differ".to_string()
                        }
                    };
                    (
                        json!({"x": x, "y": y, "convertible": false, "reason": why}),
                        text,
                    )
                }
            };
            emit(cli, &value, &text)?;
        }
        Command::Enumerate(args) => enumerate(cli, args)?,
        Command::Scan(cmd) => return run_scan(cli, cmd),
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(cli: &Cli, args: &EnumerateArgs) -> Result<(), String> {
    match args.k {
        None => {
            let corpus = all_trees_with_limit(args.n, args.limit).map_err(|e| e.to_string())?;
            let trees: Vec<_> = corpus.trees.iter().map(scan::graph_json).collect();
            let value = json!({"order": args.n, "count": corpus.len(), "trees": trees});
            emit(cli, &value, corpus.export().trim_end())
        }
        Some(k) => {
            let family = if args.by_sum {
                all_starlike(args.n, k)
            } else {
                all_starlike_by_order(args.n, k)
            }
            .map_err(|e| e.to_string())?;
            let label = if args.by_sum { "leg sum" } else { "tree order" };
            let rows: Vec<_> = family
                .iter()
                .map(|s| json!({"legs": s.legs, "order": s.graph.order(), "graph": scan::graph_json(&s.graph)}))
                .collect();
            let value = json!({"parameterization": label, "n": args.n, "k": k, "count": family.len(), "trees": rows});
            let mut text = format!(
                "{} starlike tree(s), {label} {}, k = {k}",
                family.len(),
                args.n
            );
            for s in &family {
                text.push_str(&format!("\n  T({}) order {}", s.legs, s.graph.order()));
            }
            emit(cli, &value, &text)
        }
    }
}

fn run_scan(cli: &Cli, cmd: &ScanCommand) -> Result<ExitCode, String> {
    let start = Instant::now();
    let report: ScanReport = match cmd {
        ScanCommand::TotalOrder(r) => scan::scan_total_order(r.min_n..=r.max_n, r.limit),
        ScanCommand::Sandwich(r) => scan::scan_sandwich(r.min_n..=r.max_n, r.limit),
        ScanCommand::Chains {
            range,
            longest_max_n,
        } => scan::scan_chains(
            range.min_n..=range.max_n,
            longest_max_n.unwrap_or(range.max_n),
            range.limit,
        ),
        ScanCommand::Starlike {
            min_sum,
            max_sum,
            max_order,
            min_k,
            max_k,
        } => match max_order {
            Some(o) => scan::scan_starlike_by_order(1..=*o, *min_k..=*max_k),
            None => scan::scan_starlike(*min_sum..=*max_sum, *min_k..=*max_k),
        },
        ScanCommand::DegreeQuestions(r) => scan::scan_degree_questions(r.min_n..=r.max_n, r.limit),
        ScanCommand::Theorems { max_n } => {
            let mut limits = TheoremLimits::default();
            if let Some(m) = max_n {
                limits.subgraph = limits.subgraph.min(*m);
                limits.star = limits.star.min(*m);
                limits.sandwich = limits.sandwich.min(*m);
                limits.chains = limits.chains.min(*m);
            }
            scan::theorem_suite(limits)
        }
    }
    .map_err(|e| e.to_string())?;
    eprintln!("runtime: {:.2?}", start.elapsed());

    let json_text = report.to_json();
    if let Some(path) = &cli.out {
        std::fs::write(path, &json_text).map_err(|e| format!("{}: {e}", path.display()))?;
        let csv_path = path.with_extension("csv");
        std::fs::write(&csv_path, report.to_csv())
            .map_err(|e| format!("{}: {e}", csv_path.display()))?;
    }
    if cli.json {
        out(&json_text)?;
    } else {
        let mut text = report.to_csv();
        for v in report.violations.iter().take(10) {
            text += &format!("{:?}: {} {}\n", v.kind, v.claim, v.instance);
        }
        if report.violations.len() > 10 {
            text += &format!("... {} more\n", report.violations.len() - 10);
        }
        out(&text)?;
    }
    Ok(if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
