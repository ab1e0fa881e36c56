//! `camenc` command-line front end.
//!
//! Exit codes: 0 success, 1 negative verification or nonexistence,
//! 2 usage or input error, 3 search budget exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use camenc::compiler::corpus::{corpus, CorpusParams};
use camenc::encoding::AlphabetViolation;
use camenc::simulator::{eval_batch, format_results, parse_vectors};
use camenc::{
    compile_tree, encode, encode_punctured, exists_encoding, max_q, pad, verify_encoding, BoolFunc,
    CamProgram, CompileConfig, DecisionTree, Encoding, Error, Execution, FamilyId, FamilyKind,
    FamilySpec, Scenario, SearchBudget, VerifyOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "camenc",
    version,
    about = "Optimal CAM encodings of comparison families"
)]
struct Cli {
    /// Seed for synthetic tree generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock cap for the existence search, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    /// One `key=value` line per result.
    Records,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest q that n cells accommodate, for n = 1..n-max.
    Bounds {
        #[arg(long)]
        family: FamilyId,
        /// All supported scenarios when omitted.
        #[arg(long)]
        scenario: Option<Scenario>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Build an encoding with the minimal number of cells.
    Encode {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        scenario: Scenario,
        /// Extra padding cells appended to every word.
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an encoding file against a family.
    Verify {
        #[arg(long)]
        encoding: PathBuf,
        /// Taken from the encoding header when omitted.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        puncture: Option<BoolFunc>,
        #[arg(long, value_delimiter = ',')]
        members: Vec<BoolFunc>,
    },
    /// Exhaustive search for an n-cell encoding.
    Search {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        scenario: Scenario,
        #[arg(long)]
        n: usize,
        /// Refuse searches over more input maps than this.
        #[arg(long, default_value_t = SearchBudget::default().max_input_maps)]
        max_input_maps: u64,
        #[arg(long)]
        no_symmetry: bool,
        /// Write the witness here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a decision tree into a CAM program.
    Compile {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value = "ss")]
        scenario: Scenario,
        /// Digit decomposition for features with an even square domain.
        #[arg(long)]
        squaring: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a CAM program on a file of input vectors.
    Simulate {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        vectors: PathBuf,
        /// Also require exactly one match, on the row of the tree's leaf.
        #[arg(long)]
        check_tree: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one tree of the seeded random corpus.
    GenTree {
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = CorpusParams::default().max_features)]
        max_features: usize,
        #[arg(long, default_value_t = CorpusParams::default().max_domain)]
        max_domain: usize,
        #[arg(long, default_value_t = CorpusParams::default().max_depth)]
        max_depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// E, N, G, L, GL, F, PF (punctured, needs --puncture) or X (needs --members).
    #[arg(long)]
    family: String,
    /// Domain size; implied by --puncture and --members.
    #[arg(long)]
    q: Option<usize>,
    /// Truth table of the excluded function, e.g. 0110.
    #[arg(long)]
    puncture: Option<BoolFunc>,
    /// Comma-separated truth tables of an explicit family.
    #[arg(long, value_delimiter = ',')]
    members: Vec<BoolFunc>,
}

enum Failure {
    Negative,
    Usage(String),
    Budget,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SpecMismatch(_) => {
                eprintln!("error: {e}");
                Failure::Negative
            }
            Error::BudgetExceeded { .. } => Failure::Budget,
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = camenc::par::set_threads(t) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Budget) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> CmdResult {
    let records = cli.format == OutputFormat::Records;
    match &cli.command {
        Command::Bounds {
            family,
            scenario,
            n_max,
        } => cmd_bounds(out, records, *family, *scenario, *n_max),
        Command::Encode {
            family,
            scenario,
            pad,
            out: path,
        } => cmd_encode(out, records, family, *scenario, *pad, path.as_deref()),
        Command::Verify {
            encoding,
            family,
            q,
            puncture,
            members,
        } => {
            let text = read(encoding)?;
            let enc: Encoding = text.parse()?;
            let spec = match family {
                None => enc.spec()?,
                Some(f) => family_spec(f, *q, puncture.as_ref(), members)?,
            };
            cmd_verify(out, records, &enc, &spec)
        }
        Command::Search {
            family,
            scenario,
            n,
            max_input_maps,
            no_symmetry,
            out: path,
        } => {
            let spec = family_spec(
                &family.family,
                family.q,
                family.puncture.as_ref(),
                &family.members,
            )?;
            let budget = SearchBudget {
                max_input_maps: *max_input_maps,
                time_cap: cli.budget_ms.map(Duration::from_millis),
                symmetry_reduction: !no_symmetry,
                execution: Execution::Parallel,
            };
            cmd_search(out, records, &spec, *scenario, *n, budget, path.as_deref())
        }
        Command::Compile {
            tree,
            scenario,
            squaring,
            out: path,
        } => {
            let tree: DecisionTree = read(tree)?.parse()?;
            let config = CompileConfig {
                scenario: *scenario,
                use_squaring: *squaring,
            };
            let prog = compile_tree(&tree, &config)?;
            emit(out, records, path.as_deref(), &prog.to_string(), |w| {
                let cells: usize = prog.rows.iter().map(|r| r.cells()).max().unwrap_or(0);
                writeln!(
                    w,
                    "status=ok rows={} columns={} max_row_cells={cells}",
                    prog.rows.len(),
                    prog.columns.len()
                )
            })
        }
        Command::Simulate {
            program,
            vectors,
            check_tree,
            out: path,
        } => {
            let prog: CamProgram = read(program)?.parse()?;
            let vecs = parse_vectors(&read(vectors)?)?;
            let tree = match check_tree {
                Some(p) => Some(read(p)?.parse::<DecisionTree>()?),
                None => None,
            };
            cmd_simulate(out, records, &prog, &vecs, tree.as_ref(), path.as_deref())
        }
        Command::GenTree {
            index,
            max_features,
            max_domain,
            max_depth,
            out: path,
        } => {
            let params = CorpusParams {
                max_features: *max_features,
                max_domain: *max_domain,
                max_depth: *max_depth,
                ..CorpusParams::default()
            };
            let tree = corpus(cli.seed, index + 1, &params)
                .pop()
                .expect("count >= 1");
            emit(out, records, path.as_deref(), &tree.to_string(), |w| {
                writeln!(
                    w,
                    "status=ok seed={} index={index} nodes={}",
                    cli.seed,
                    tree.nodes.len()
                )
            })
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes `body` to `path`, or to stdout when no path is given. With a path,
/// records mode reports a status line.
fn emit(
    out: &mut impl Write,
    records: bool,
    path: Option<&Path>,
    body: &str,
    status: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CmdResult {
    match path {
        Some(p) => {
            fs::write(p, body).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            if records {
                status(out)?;
            }
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn family_spec(
    family: &str,
    q: Option<usize>,
    puncture: Option<&BoolFunc>,
    members: &[BoolFunc],
) -> Result<FamilySpec, Failure> {
    let spec = match family.to_ascii_uppercase().as_str() {
        "PF" => {
            let g = puncture.ok_or_else(|| Failure::Usage("family PF needs --puncture".into()))?;
            FamilySpec::punctured(g.clone())?
        }
        "X" => {
            if members.is_empty() {
                return Err(Failure::Usage("family X needs --members".into()));
            }
            FamilySpec::explicit(members.to_vec())?
        }
        other => {
            let id: FamilyId = other.parse()?;
            let q = q.ok_or_else(|| Failure::Usage(format!("family {id} needs --q")))?;
            FamilySpec::named(id, q)?
        }
    };
    if let Some(q) = q {
        if q != spec.q {
            return Err(Failure::Usage(format!(
                "--q {q} disagrees with the family's domain size {}",
                spec.q
            )));
        }
    }
    Ok(spec)
}

fn cmd_bounds(
    out: &mut impl Write,
    records: bool,
    family: FamilyId,
    scenario: Option<Scenario>,
    n_max: usize,
) -> CmdResult {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let scenarios = match scenario {
        Some(s) if !family.supports(s) => {
            return Err(Error::UnsupportedScenario {
                family: family.to_string(),
                scenario: s,
            }
            .into())
        }
        Some(s) => vec![s],
        None => family.scenarios(),
    };
    let mut table = Vec::with_capacity(scenarios.len());
    for &s in &scenarios {
        let row = (1..=n_max)
            .map(|n| max_q(family, s, n))
            .collect::<Result<Vec<u64>, Error>>()?;
        table.push((s, row));
    }
    if records {
        for (s, row) in &table {
            for (i, v) in row.iter().enumerate() {
                writeln!(out, "family={family} scenario={s} n={} max_q={v}", i + 1)?;
            }
        }
        return Ok(());
    }
    let widths: Vec<usize> = (0..n_max)
        .map(|i| {
            table
                .iter()
                .map(|(_, row)| row[i].to_string().len())
                .chain([(i + 1).to_string().len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let line = |head: &str, cells: Vec<String>| {
        let cells: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        format!("{head:<8}  {}", cells.join(" "))
    };
    writeln!(
        out,
        "{}",
        line("n", (1..=n_max).map(|n| n.to_string()).collect())
    )?;
    for (s, row) in &table {
        let head = format!("{family} {s}");
        writeln!(
            out,
            "{}",
            line(&head, row.iter().map(|v| v.to_string()).collect())
        )?;
    }
    Ok(())
}

fn cmd_encode(
    out: &mut impl Write,
    records: bool,
    family: &FamilyArgs,
    scenario: Scenario,
    extra: usize,
    path: Option<&Path>,
) -> CmdResult {
    let spec = family_spec(
        &family.family,
        family.q,
        family.puncture.as_ref(),
        &family.members,
    )?;
    let enc = match &spec.kind {
        FamilyKind::PuncturedF(g) => encode_punctured(g, scenario)?,
        _ => encode(&spec, scenario)?,
    };
    let enc = if extra > 0 { pad(&enc, extra) } else { enc };
    emit(out, records, path, &enc.to_string(), |w| {
        writeln!(
            w,
            "status=ok family={} scenario={scenario} q={} n={}",
            enc.family, enc.q, enc.n
        )
    })
}

fn cmd_verify(out: &mut impl Write, records: bool, enc: &Encoding, spec: &FamilySpec) -> CmdResult {
    let report = verify_encoding(enc, spec, VerifyOptions::default())?;
    let status = if report.ok { "OK" } else { "FAIL" };
    if records {
        writeln!(
            out,
            "status={status} checked={} failures={} alphabet_violations={}",
            report.checked,
            report.failures,
            report.alphabet_violations.len()
        )?;
    } else if report.ok {
        writeln!(out, "OK")?;
    } else {
        writeln!(
            out,
            "FAIL {} of {} pairs, {} alphabet violations",
            report.failures,
            report.checked,
            report.alphabet_violations.len()
        )?;
    }
    for v in &report.alphabet_violations {
        match v {
            AlphabetViolation::Input { x, word } => {
                writeln!(out, "alphabet input x={x} word={word}")?
            }
            AlphabetViolation::State { key, word } => {
                writeln!(out, "alphabet state key={key} word={word}")?
            }
        }
    }
    for c in &report.counterexamples {
        writeln!(
            out,
            "counterexample x={} key={} expected={} got={}",
            c.x, c.key, c.expected as u8, c.got as u8
        )?;
    }
    if report.ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn cmd_search(
    out: &mut impl Write,
    records: bool,
    spec: &FamilySpec,
    scenario: Scenario,
    n: usize,
    budget: SearchBudget,
    path: Option<&Path>,
) -> CmdResult {
    let prefix = format!(
        "family={} scenario={scenario} q={} n={n}",
        spec.kind, spec.q
    );
    match exists_encoding(spec, scenario, n, budget) {
        Ok(Some(enc)) => {
            if records {
                writeln!(out, "status=EXISTS {prefix}")?;
            } else {
                writeln!(out, "EXISTS")?;
            }
            match path {
                Some(p) => fs::write(p, enc.to_string())
                    .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
                None if !records => out.write_all(enc.to_string().as_bytes())?,
                None => {}
            }
            Ok(())
        }
        Ok(None) => {
            if records {
                writeln!(out, "status=NOT-EXISTS {prefix}")?;
            } else {
                writeln!(out, "NOT-EXISTS")?;
            }
            Err(Failure::Negative)
        }
        Err(Error::BudgetExceeded { explored, total }) => {
            let fraction = if total == 0 {
                0.0
            } else {
                explored as f64 / total as f64
            };
            if records {
                writeln!(
                    out,
                    "status=BUDGET-EXCEEDED {prefix} explored={explored} total={total} fraction={fraction:.6}"
                )?;
            } else {
                writeln!(
                    out,
                    "BUDGET-EXCEEDED explored {explored} of {total} input maps ({:.2}%)",
                    fraction * 100.0
                )?;
            }
            Err(Failure::Budget)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_simulate(
    out: &mut impl Write,
    records: bool,
    prog: &CamProgram,
    vecs: &[(usize, Vec<usize>)],
    tree: Option<&DecisionTree>,
    path: Option<&Path>,
) -> CmdResult {
    let (lines, xs): (Vec<usize>, Vec<Vec<usize>>) = vecs.iter().cloned().unzip();
    let results = eval_batch(prog, &xs, Execution::Parallel)?;
    let body = if records {
        lines
            .iter()
            .zip(&results)
            .map(|(l, r)| {
                let bits: String = r
                    .row_bits
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                let first = r.first_match.map_or("-".to_string(), |i| i.to_string());
                format!(
                    "line={l} bits={bits} count={} first={first}\n",
                    r.match_count
                )
            })
            .collect()
    } else {
        format_results(&lines, &results)
    };
    match path {
        Some(p) => {
            fs::write(p, &body).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
        None => out.write_all(body.as_bytes())?,
    }
    let Some(tree) = tree else {
        return Ok(());
    };
    let mut mismatches = 0usize;
    for ((l, x), r) in vecs.iter().zip(&results) {
        let row = tree.eval(x)?;
        if r.match_count != 1 || r.first_match != Some(row) {
            mismatches += 1;
            eprintln!("line {l}: expected only row {row}, got {r}");
        }
    }
    if mismatches > 0 {
        eprintln!(
            "{mismatches} of {} vectors disagree with the tree",
            vecs.len()
        );
        return Err(Failure::Negative);
    }
    Ok(())
}
