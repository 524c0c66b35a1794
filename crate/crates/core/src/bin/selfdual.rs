use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};

use selfdual::codec::{parse_element, parse_row, read_records, serialize_record};
use selfdual::constructions::{
    bordered_four_circulant, extend, four_circulant_classic, gray_record, modified_four_circulant,
    phi_u_record, CodeRecord,
};
use selfdual::rings::{Alphabet, PhiUVariant};
use selfdual::search::{run_search, SearchConfig};
use selfdual::tables::{select_phi_u_variant, verify_table, KnownTable, VerifyOptions};
use selfdual::weightdist::{classify, Enumerator};
use selfdual::{Error, Result};

#[derive(Parser)]
#[command(
    name = "selfdual",
    version,
    about = "Self-dual codes from four-circulant constructions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    FourCirculant,
    Modified,
    Bordered,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    AlongV,
    AlongU,
}

impl From<Variant> for PhiUVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::AlongV => PhiUVariant::AlongV,
            Variant::AlongU => PhiUVariant::AlongU,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from first rows and write its record.
    Construct {
        kind: Kind,
        #[arg(long)]
        alphabet: Alphabet,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long)]
        ra: String,
        #[arg(long)]
        rb: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extend the first record of a file by two coordinates.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Binary Gray image of a ring code, or its R1 image with --phi-u.
    Gray {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        phi_u: bool,
        #[arg(long, value_enum, default_value = "along-v")]
        variant: Variant,
    },
    /// Weight distribution and enumerator parameters of every record.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        wmax: Option<usize>,
        #[arg(long, env = "SELFDUAL_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Seeded random search; new hits are appended to the store.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, env = "SELFDUAL_SEED")]
        seed: Option<u64>,
        #[arg(long, env = "SELFDUAL_WORKERS")]
        workers: Option<usize>,
        #[arg(long)]
        store: PathBuf,
    },
    /// Rebuild the rows of a built-in table and check their parameters.
    VerifyPaper {
        /// 1..7, bordered-example or phi-u-example
        #[arg(long)]
        table: String,
        /// Comma-separated 1-based row numbers
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        /// Enumerate every codeword instead of weights up to 14
        #[arg(long)]
        full: bool,
        #[arg(long, env = "SELFDUAL_WORKERS", default_value_t = 1)]
        workers: usize,
    },
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::ConfigInvalid(format!("{}: {e}", path.display()))
}

fn first_record(path: &Path) -> Result<CodeRecord> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    read_records(&text)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::BadRecord(format!("{} holds no record", path.display())))
}

fn write_record(path: &Path, record: &CodeRecord) -> Result<()> {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .ok();
    fs::write(path, serialize_record(record, now) + "\n").map_err(|e| io_error(path, e))?;
    let bin = record.binary_generator();
    println!(
        "{} [{}, {}] over {} -> binary [{}, {}], id {}",
        record.provenance.construction,
        record.length(),
        record.generator.rows(),
        record.alphabet(),
        bin.cols(),
        bin.rows(),
        record.id()
    );
    Ok(())
}

fn analyze(path: &Path, wmax: Option<usize>, workers: usize) -> Result<()> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    for record in read_records(&text)? {
        let g = record.binary_generator();
        let e = Enumerator::new(&g)?;
        let profile = match wmax {
            Some(w) => e.truncated(w, workers),
            None => e.full(workers),
        };
        let d = profile
            .min_nonzero_weight()
            .map_or_else(|| format!(">{}", profile.exact_up_to()), |d| d.to_string());
        println!("record {}", record.id());
        println!("  n={} k={} d={}", g.cols(), g.rows(), d);
        let head: Vec<String> = profile
            .head(6)
            .iter()
            .map(|(w, c)| format!("A{w}={c}"))
            .collect();
        println!("  {}", head.join(" "));
        match classify(&profile) {
            Ok(c) => println!(
                "  family={} beta={} gamma={}{}",
                c.family,
                c.beta.map_or("-".into(), |b| b.to_string()),
                c.gamma.map_or("-".into(), |g| g.to_string()),
                if c.ambiguous { " (ambiguous)" } else { "" }
            ),
            Err(Error::UnsupportedLength(_)) => {
                println!("  family=- (no table for n={})", g.cols())
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn search(config: &Path, seed: Option<u64>, workers: Option<usize>, store: &Path) -> Result<()> {
    let text = fs::read_to_string(config).map_err(|e| io_error(config, e))?;
    let mut config = SearchConfig::from_json(&text)?;
    if let Some(s) = seed {
        config.seed = s;
    }
    if let Some(w) = workers {
        config.workers = w;
    }
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(store)
        .map_err(|e| io_error(store, e))?;
    let mut out = io::BufWriter::new(file);
    let report = run_search(&config, &mut out)?;
    out.flush().map_err(|e| io_error(store, e))?;
    println!(
        "attempted={} condition_passed={} self_dual_built={} extremal_found={} distinct_profiles={} hits={}",
        report.attempted,
        report.condition_passed,
        report.self_dual_built,
        report.extremal_found,
        report.distinct_profiles,
        report.hits.len()
    );
    Ok(())
}

fn verify(table: &str, rows: Option<Vec<usize>>, full: bool, workers: usize) -> Result<bool> {
    let table = KnownTable::from_id(table)?;
    let mut opts = VerifyOptions {
        full,
        workers,
        ..VerifyOptions::default()
    };
    if matches!(table, KnownTable::T7 | KnownTable::PhiUExample) {
        match select_phi_u_variant() {
            Some(v) => opts.phi_u = v,
            None => {
                eprintln!("no R2 -> R1 map variant reproduces the length-68 example");
                return Ok(false);
            }
        }
    }
    let report = verify_table(table, rows.as_deref(), &opts)?;
    for row in &report.rows {
        println!("{row}");
    }
    let passed = report.rows.iter().filter(|r| r.pass).count();
    println!("table {}: {passed}/{} pass", table, report.rows.len());
    Ok(report.all_pass())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct {
            kind,
            alphabet,
            lambda,
            ra,
            rb,
            x,
            y,
            out,
        } => {
            let (ra, rb) = (parse_row(alphabet, &ra)?, parse_row(alphabet, &rb)?);
            let record = match kind {
                Kind::FourCirculant => four_circulant_classic(&ra, &rb)?,
                Kind::Modified => {
                    modified_four_circulant(&ra, &rb, parse_element(alphabet, &lambda)?)?
                }
                Kind::Bordered => {
                    let need = |v: Option<String>, name: &str| {
                        v.ok_or_else(|| Error::ConfigInvalid(format!("bordered needs --{name}")))
                    };
                    let x = parse_element(alphabet, &need(x, "x")?)?;
                    let y = parse_element(alphabet, &need(y, "y")?)?;
                    bordered_four_circulant(&ra, &rb, x, y)?
                }
            };
            write_record(&out, &record)?;
        }
        Command::Extend { input, x, c, out } => {
            let parent = first_record(&input)?;
            let a = parent.alphabet();
            let record = extend(&parent, &parse_row(a, &x)?, parse_element(a, &c)?)?;
            write_record(&out, &record)?;
        }
        Command::Gray {
            input,
            out,
            phi_u,
            variant,
        } => {
            let parent = first_record(&input)?;
            let record = if phi_u {
                phi_u_record(&parent, variant.into())?
            } else {
                gray_record(&parent)?
            };
            write_record(&out, &record)?;
        }
        Command::Analyze {
            input,
            wmax,
            workers,
        } => analyze(&input, wmax, workers)?,
        Command::Search {
            config,
            seed,
            workers,
            store,
        } => search(&config, seed, workers, &store)?,
        Command::VerifyPaper {
            table,
            rows,
            full,
            workers,
        } => return verify(&table, rows, full, workers),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
