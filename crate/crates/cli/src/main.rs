//! Batch front end: classify planes and nets, build the orbit atlas, run the
//! verification suites.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use veronese_nets::atlas::{self, Atlas, OrbitLabel};
use veronese_nets::expr::parse_params;
use veronese_nets::par;
use veronese_nets::verify::{self, Check, PartitionMode, Report};
use veronese_nets::veronese::{QuadraticForm, Veronese};
use veronese_nets::{Error, Field, FieldSpec, Subspace};

const CLASSIFICATION_SCHEMA: &str = "veronese-nets/classification/v1";

#[derive(Parser, Debug)]
#[command(
    name = "veronese-nets",
    version,
    about = "Orbits of planes meeting the nucleus plane of the Veronese surface, q even"
)]
struct Cli {
    /// Field order, a power of 2 between 2 and 16.
    #[arg(long, global = true, default_value_t = 4)]
    q: usize,
    /// Reduction polynomial of GF(q) as hex or decimal, e.g. 0x13 for q = 16.
    #[arg(long, global = true, value_parser = parse_modulus)]
    modulus: Option<u16>,
    /// Worker threads; 0 uses every available core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Largest orbit (in planes) a breadth-first search may hold.
    #[arg(long, global = true, default_value_t = atlas::DEFAULT_BUDGET)]
    budget: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one plane given by basis rows or by a symmetric pattern.
    ClassifyPlane {
        /// Symmetric 3x3 pattern of linear forms in x, y, z, rows separated by ';'.
        #[arg(long, conflicts_with_all = ["label", "input"])]
        pattern: Option<String>,
        /// Use the tabulated representative of this orbit.
        #[arg(long, conflicts_with = "input")]
        label: Option<OrbitLabel>,
        /// Parameter values for the pattern, e.g. "b=0,c=2".
        #[arg(long, default_value = "")]
        params: String,
        /// File holding three rows of six entries, or a pattern; stdin if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Classify the net spanned by three quadratic forms in X0, X1, X2.
    ClassifyNet {
        /// The three forms; read one per line from --input or stdin if omitted.
        forms: Vec<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Orbit sizes, stabilizers and invariants of all 18 orbits.
    Atlas {
        /// Sweep every plane of PG(5, q) instead of the orbit-size partition check.
        #[arg(long)]
        exhaustive: bool,
        /// Also write each orbit's sorted plane keys and a summary.json here.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Run one verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Partition suite: sweep every plane.
        #[arg(long)]
        exhaustive: bool,
        /// rank-identity suite: number of sampled planes when q > 4.
        #[arg(long)]
        samples: Option<u64>,
        /// rank-identity suite: sampling seed.
        #[arg(long, default_value_t = verify::RANK_IDENTITY_SEED)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Representatives,
    RankIdentity,
    Lemmas,
    Partition,
    Net,
}

fn parse_modulus(s: &str) -> Result<u16, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u16::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("bad modulus {s:?}: {e}"))
}

/// What a command produced: a document and whether it counts as success.
struct Outcome {
    json: Value,
    csv: Vec<Vec<String>>,
    failure: Option<Error>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Domain(_) => 2,
        Error::OutOfFamily(_) => 3,
        Error::Verification(_) => 4,
        Error::Resource(_) => 5,
        Error::Configuration(_) => 6,
        Error::Internal(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers;
    let result = par::with_workers(workers, || run(&cli));
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => match to_csv(&outcome.csv) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn to_csv(rows: &[Vec<String>]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if !(2..=16).contains(&cli.q) {
        return Err(Error::Usage(format!("--q must be a power of 2 between 2 and 16, got {}", cli.q)));
    }
    let v = Veronese::new(Field::new(FieldSpec::for_order(cli.q, cli.modulus)?));
    match &cli.command {
        Command::ClassifyPlane { pattern, label, params, input } => {
            let f = v.field();
            let params = parse_params(f, params)?;
            let plane = match (pattern, label) {
                (Some(p), _) => atlas::plane_from_pattern(f, p, &params)?,
                (None, Some(l)) => atlas::representative(&v, *l)?.plane,
                (None, None) => parse_plane(&v, &read_input(input.as_ref())?, &params)?,
            };
            let a = Atlas::with_budget(&v, cli.budget)?;
            classify_plane(&a, &plane)
        }
        Command::ClassifyNet { forms, params, input } => {
            let f = v.field();
            let params = parse_params(f, params)?;
            let lines: Vec<String> = if forms.is_empty() {
                read_input(input.as_ref())?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect()
            } else {
                forms.clone()
            };
            if lines.len() != 3 {
                return Err(Error::Usage(format!("a net needs 3 forms, got {}", lines.len())));
            }
            let qf = [0, 1, 2]
                .map(|i| QuadraticForm::parse(f, &lines[i], &params))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            let net = atlas::Net::new(f, &[qf[0], qf[1], qf[2]])?;
            let a = Atlas::with_budget(&v, cli.budget)?;
            classify_net(&a, &net)
        }
        Command::Atlas { exhaustive, dump_dir } => {
            let a = Atlas::with_budget(&v, cli.budget)?;
            let mode = if *exhaustive { PartitionMode::Exhaustive } else { PartitionMode::default_for(v.q()) };
            let mut exhausted = None;
            let mut report = match verify::verify_partition(&a, mode) {
                Ok(r) => r,
                Err(Error::Resource(msg)) => {
                    let mut r = verify::verify_representatives(&a)?;
                    r.checks.push(Check::new("orbit enumeration", false, format!("resource budget exceeded: {msg}")));
                    exhausted = Some(Error::Resource(msg));
                    r
                }
                Err(e) => return Err(e),
            };
            report.suite = "atlas".into();
            let tabulated = verify::verify_representatives(&a)?;
            report.checks.extend(tabulated.checks);
            if report.orbits.is_empty() {
                report.orbits = tabulated.orbits;
            }
            if let (Some(dir), None) = (dump_dir, &exhausted) {
                dump_orbits(&a, dir)?;
            }
            let mut outcome = report_outcome(report, true);
            if exhausted.is_some() {
                outcome.failure = exhausted;
            }
            Ok(outcome)
        }
        Command::Verify { suite, exhaustive, samples, seed } => {
            let report = match suite {
                Suite::RankIdentity => verify::verify_rank_identity(&v, *samples, *seed)?,
                _ => {
                    let a = Atlas::with_budget(&v, cli.budget)?;
                    match suite {
                        Suite::Representatives => verify::verify_representatives(&a)?,
                        Suite::Lemmas => verify::verify_lemmas(&a)?,
                        Suite::Net => verify::verify_net(&a)?,
                        Suite::Partition => {
                            let mode =
                                if *exhaustive { PartitionMode::Exhaustive } else { PartitionMode::default_for(v.q()) };
                            verify::verify_partition(&a, mode)?
                        }
                        Suite::RankIdentity => unreachable!(),
                    }
                }
            };
            Ok(report_outcome(report, false))
        }
    }
}

/// One `<label>.keys` file per orbit: a `#` header line, then the packed
/// plane keys in ascending order as 16 hex digits per line. A key holds the
/// 3x6 RREF basis row-major, `log2 q` bits per entry, first entry highest.
fn dump_orbits(a: &Atlas, dir: &Path) -> Result<(), Error> {
    let io_err = |e: io::Error| Error::Usage(format!("cannot write to {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io_err)?;
    let v = a.veronese();
    let bits = v.field().degree();
    let group = a.action().group_order();
    let mut summary = Vec::new();
    for r in a.representatives() {
        let orbit = a.action().orbit(&r.plane, a.budget())?;
        let keys = orbit.sorted_keys();
        let file = fs::File::create(dir.join(format!("{}.keys", r.label))).map_err(io_err)?;
        let mut w = io::BufWriter::new(file);
        writeln!(
            w,
            "# veronese-nets orbit keys v1 label={} q={} modulus={:#x} rank=3 bits={bits} size={}",
            r.label,
            v.q(),
            v.field().spec().modulus(),
            keys.len()
        )
        .map_err(io_err)?;
        for k in &keys {
            writeln!(w, "{k:016x}").map_err(io_err)?;
        }
        w.flush().map_err(io_err)?;
        summary.push(json!({
            "label": r.label,
            "size": keys.len(),
            "stabilizer_order": group / keys.len() as u64,
        }));
    }
    let text = serde_json::to_string_pretty(&summary).expect("json values serialize") + "\n";
    fs::write(dir.join("summary.json"), text).map_err(io_err)
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// Three rows of six integers (commas or whitespace), or a pattern whose
/// rows are separated by ';' or newlines.
fn parse_plane(v: &Veronese, text: &str, params: &veronese_nets::expr::Params) -> Result<Subspace<6>, Error> {
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .collect();
    let numeric: Option<Vec<Vec<u64>>> = rows
        .iter()
        .map(|r| {
            r.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.strip_prefix("0x") {
                    Some(h) => u64::from_str_radix(h, 16).ok(),
                    None => t.parse().ok(),
                })
                .collect()
        })
        .collect();
    match numeric {
        Some(rows) => atlas::plane_from_rows(v.field(), &rows),
        None => atlas::plane_from_pattern(v.field(), &rows.join(";"), params),
    }
}

fn classification_json(a: &Atlas, plane: &Subspace<6>) -> Result<Value, Error> {
    let c = a.classify(plane)?;
    let s = c.signature;
    Ok(json!({
        "schema": CLASSIFICATION_SCHEMA,
        "q": a.veronese().q(),
        "modulus": format!("{:#x}", a.veronese().field().spec().modulus()),
        "label": c.label,
        "symbol": c.label.symbol(),
        "signature": s,
        "od0": s.od0,
        "od4": s.od4,
        "cubic_type": s.cubic.map(|k| k.kind),
        "cubic_points": s.cubic.map(|k| k.points),
        "intersection_with_nucleus_plane": s.meet_dim,
        "resolved_by_membership": c.by_membership,
        "plane_key": plane.hex_key(),
        "pattern": atlas::pattern_of_plane(plane)?,
    }))
}

fn csv_row(doc: &Value, extra: &[&str]) -> Vec<Vec<String>> {
    let header: Vec<String> =
        ["label", "od0", "od4", "cubic_type", "cubic_points", "intersection_with_nucleus_plane", "plane_key"]
            .iter()
            .chain(extra)
            .map(|s| s.to_string())
            .collect();
    let row = header
        .iter()
        .map(|k| match &doc[k.as_str()] {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        })
        .collect();
    vec![header, row]
}

fn classify_plane(a: &Atlas, plane: &Subspace<6>) -> Result<Outcome, Error> {
    let doc = classification_json(a, plane)?;
    let csv = csv_row(&doc, &[]);
    Ok(Outcome { json: doc, csv, failure: None })
}

fn classify_net(a: &Atlas, net: &atlas::Net) -> Result<Outcome, Error> {
    let v = a.veronese();
    let f = v.field();
    let plane = atlas::plane_of_net(f, net);
    let mut doc = classification_json(a, &plane)?;
    let base: Vec<Value> = net.base_points(v).iter().map(|p| json!(p.coords().map(|c| c.0))).collect();
    doc["net"] = json!(net.forms().iter().map(|q| q.to_string()).collect::<Vec<_>>());
    doc["base_points"] = json!(base);
    doc["base_size"] = json!(base.len());
    doc["double_lines"] = json!(net.double_lines(f));
    let csv = csv_row(&doc, &["base_size", "double_lines"]);
    Ok(Outcome { json: doc, csv, failure: None })
}

fn report_outcome(report: Report, orbit_rows: bool) -> Outcome {
    let mut csv = Vec::new();
    if orbit_rows {
        csv.push(
            [
                "label",
                "size",
                "stabilizer_order",
                "od0",
                "od4",
                "cubic_type",
                "cubic_points",
                "empty_base",
                "representative_key",
            ]
            .map(String::from)
            .to_vec(),
        );
        for o in &report.orbits {
            csv.push(vec![
                o.label.to_string(),
                o.size.map(|s| s.to_string()).unwrap_or_default(),
                o.stabilizer_order.map(|s| s.to_string()).unwrap_or_default(),
                o.od0.to_string(),
                o.od4.to_string(),
                o.cubic_type.map(|c| c.to_string()).unwrap_or_default(),
                o.cubic_points.map(|c| c.to_string()).unwrap_or_default(),
                o.empty_base.to_string(),
                o.representative_key.clone(),
            ]);
        }
    } else {
        csv.push(["suite", "q", "check", "pass", "details"].map(String::from).to_vec());
        for c in &report.checks {
            csv.push(vec![
                report.suite.clone(),
                report.q.to_string(),
                c.name.clone(),
                c.pass.to_string(),
                c.details.clone(),
            ]);
        }
    }
    let failure = if report.passed() {
        None
    } else {
        let names: Vec<String> = report.failures().map(|c| format!("{} ({})", c.name, c.details)).collect();
        Some(Error::Verification(names.join("; ")))
    };
    let json = serde_json::to_value(&report).expect("reports serialize");
    Outcome { json, csv, failure }
}
