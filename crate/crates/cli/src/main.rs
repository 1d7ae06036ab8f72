use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ksforge::search::{search_diagrams, PairOverlap, SearchLimits, SearchSpec, SearchStatus};
use ksforge::{fixtures, Catalog, Diagram, DiagramSymbol, Error, ParityOptions, ProjectorSystem};
use serde_json::json;

/// Build and check Kochen-Specker proofs from Pauli observables.
#[derive(Parser)]
#[command(name = "ksforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate observables, maximal commuting sets and IDs.
    Catalog {
        #[arg(short = 'n', long = "qubits")]
        n: usize,
        /// ID sizes to list, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3,4")]
        sizes: Vec<usize>,
        /// Write the catalog as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check properties (a) and (b) of a diagram.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also run the exhaustive ±1 assignment search.
        #[arg(long)]
        assignment: bool,
        /// Also check irreducibility by IDs and by qubits.
        #[arg(long)]
        critical: bool,
    },
    /// Derive the projector system and its parity-proof census.
    Proofs {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = ksforge::system::DEFAULT_MAX_KERNEL_DIM)]
        max_kernel_dim: usize,
        /// Keep only proofs of this `P-B` type or detailed symbol.
        #[arg(long = "type")]
        type_filter: Option<String>,
        /// Count only critical proofs (no single basis can be dropped).
        #[arg(long)]
        critical: bool,
        /// Write system JSON, census CSV and proof list into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Search for diagrams with a given symbol.
    Search {
        #[arg(short = 'n', long = "qubits")]
        n: usize,
        #[arg(long)]
        symbol: String,
        /// Two IDs of size S sharing exactly K observables: `S:K`, or
        /// `S:K:opposite` to require opposite signs.
        #[arg(long)]
        pair_overlap: Option<String>,
        /// Emit only critical diagrams.
        #[arg(long)]
        critical: bool,
        #[arg(long, default_value_t = 1)]
        max_diagrams: usize,
        /// Search for every diagram instead of stopping at --max-diagrams.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 2_000_000)]
        max_nodes_per_seed: u64,
        #[arg(long)]
        max_seconds: Option<u64>,
        /// Write each diagram to DIR/diagram-K.txt instead of stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Export a diagram as Graphviz DOT.
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check exported proofs against an exported system.
    CheckProofs {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        proofs: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Diagram file.
    file: Option<PathBuf>,
    /// Built-in diagram.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

enum Failure {
    Negative(String),
    Malformed(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAProof(_) => Failure::Negative(e.to_string()),
            Error::KernelTooLarge { .. } | Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Malformed(format!("{}: {e}", path.display()))
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("KSFORGE_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let result = match cli.command {
        Command::Catalog { n, sizes, out } => catalog(n, &sizes, out.as_deref()),
        Command::Verify {
            input,
            format,
            assignment,
            critical,
        } => verify(&input, format, assignment, critical),
        Command::Proofs {
            input,
            format,
            max_kernel_dim,
            type_filter,
            critical,
            out_dir,
        } => {
            let options = ParityOptions {
                max_kernel_dim,
                type_filter,
                collect_proofs: out_dir.is_some(),
                critical_only: critical,
            };
            proofs(&input, format, &options, out_dir.as_deref())
        }
        Command::Search {
            n,
            symbol,
            pair_overlap,
            critical,
            max_diagrams,
            all,
            max_nodes_per_seed,
            max_seconds,
            out_dir,
        } => {
            let limits = SearchLimits {
                max_diagrams: (!all).then_some(max_diagrams),
                max_nodes_per_seed: Some(max_nodes_per_seed),
                time_limit: max_seconds.map(Duration::from_secs),
            };
            search(n, &symbol, pair_overlap.as_deref(), critical, &limits, out_dir.as_deref())
        }
        Command::Dot { input, out } => dot(&input, out.as_deref()),
        Command::CheckProofs { system, proofs } => check_proofs(&system, &proofs),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn load(input: &Input) -> Result<Diagram, Failure> {
    if let Some(name) = &input.fixture {
        return Ok(fixtures::by_name(name)?);
    }
    let path = input.file.as_ref().expect("clap enforces one input");
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    text.parse::<Diagram>()
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn catalog(n: usize, sizes: &[usize], out: Option<&Path>) -> Outcome {
    let cat = Catalog::build(n, sizes)?;
    let mut parts = vec![
        format!("{} observables", cat.observables().len()),
        format!("{} maximal sets", cat.maximal_sets().len()),
    ];
    for m in cat.sizes() {
        parts.push(format!("{} ID{m}s", cat.ids(m).len()));
    }
    println!("{}", parts.join(", "));
    if let Some(path) = out {
        write(path, &format!("{:#}\n", cat.to_json()))?;
    }
    Ok(())
}

fn verify(input: &Input, format: Format, assignment: bool, critical: bool) -> Outcome {
    let d = load(input)?;
    let report = d.validate();
    let symbol = d.symbol();
    let witness = if assignment {
        Some(d.exhaustive_assignment_check()?)
    } else {
        None
    };
    let criticality = if critical && report.is_ks_proof {
        Some(d.is_critical()?)
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut v = json!({
                "is_ks_proof": report.is_ks_proof,
                "property_a": report.property_a,
                "property_b": report.property_b,
                "negative_id_count": report.negative_id_count,
                "odd_observables": report.odd_observables,
                "symbol": symbol.to_string(),
            });
            if let Some(w) = &witness {
                v["consistent_assignment_exists"] = json!(w.consistent_assignment_exists());
            }
            if let Some(c) = &criticality {
                v["id_irreducible"] = json!(c.id_irreducible);
                v["qubit_irreducible"] = json!(c.qubit_irreducible);
            }
            println!("{v:#}");
        }
        _ => {
            let yes = |b: bool| if b { "yes" } else { "no" };
            println!("KS proof: {}; symbol {symbol}", yes(report.is_ks_proof));
            println!(
                "every observable in an even number of IDs: {}",
                yes(report.property_a)
            );
            println!("negative IDs: {}", report.negative_id_count);
            if !report.odd_observables.is_empty() {
                println!("odd observables: {}", report.odd_observables.join(", "));
            }
            if let Some(w) = &witness {
                println!(
                    "consistent ±1 assignment: {}",
                    yes(w.consistent_assignment_exists())
                );
            }
            if let Some(c) = &criticality {
                println!("irreducible by IDs: {}", yes(c.id_irreducible));
                println!("irreducible by qubits: {}", yes(c.qubit_irreducible));
            }
        }
    }
    if report.is_ks_proof {
        Ok(())
    } else {
        Err(Failure::Negative("not a KS proof".into()))
    }
}

fn proofs(input: &Input, format: Format, options: &ParityOptions, out_dir: Option<&Path>) -> Outcome {
    let d = load(input)?;
    let system = ProjectorSystem::derive(&d)?;
    let census = system.find_parity_proofs(options)?;
    match format {
        Format::Csv => print!("{}", census.to_csv()),
        Format::Json => {
            let v = json!({
                "system": system.symbol(),
                "system_hash": system.content_hash(),
                "kernel_dimension": census.kernel_dimension,
                "odd_kernel_vectors": census.odd_count,
                "total": census.total(),
                "types": census.entries,
            });
            println!("{v:#}");
        }
        Format::Text => {
            let classes = system.classify_bases();
            println!(
                "system {}-{}: {}",
                system.projectors().len(),
                system.bases().len(),
                system.symbol()
            );
            println!(
                "bases: {} pure, {} hybrid, {} other",
                classes.pure().len(),
                classes.hybrid().len(),
                classes.other().len()
            );
            let unsaturated = system.unsaturated_pairs().len();
            if unsaturated == 0 {
                println!("basis table saturated");
            } else {
                println!("orthogonal pairs in no common basis: {unsaturated}");
            }
            println!(
                "kernel dimension {}, {} odd kernel vectors",
                census.kernel_dimension, census.odd_count
            );
            for e in &census.entries {
                println!("{:>6}  {:<40} {}", e.type_pb(), e.symbol, e.count);
            }
            println!("total {} in {} types", census.total(), census.entries.len());
        }
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let hash = system.content_hash();
        let sys = system.to_json(false)?;
        write(&dir.join(format!("system-{hash}.json")), &format!("{sys:#}\n"))?;
        write(&dir.join("census.csv"), &census.to_csv())?;
        let one_based: Vec<Vec<usize>> = census
            .proofs
            .iter()
            .map(|p| p.iter().map(|b| b + 1).collect())
            .collect();
        let list = json!({ "system_hash": hash, "proofs": one_based });
        write(&dir.join(format!("proofs-{hash}.json")), &format!("{list}\n"))?;
    }
    Ok(())
}

fn parse_overlap(text: &str) -> Result<PairOverlap, Failure> {
    let bad = || Failure::Malformed(format!("bad --pair-overlap {text:?}; expected S:K[:opposite]"));
    let parts: Vec<&str> = text.split(':').collect();
    let (size, shared, opposite) = match parts.as_slice() {
        [s, k] => (s, k, false),
        [s, k, "opposite"] => (s, k, true),
        _ => return Err(bad()),
    };
    Ok(PairOverlap {
        size: size.parse().map_err(|_| bad())?,
        shared: shared.parse().map_err(|_| bad())?,
        opposite_signs: opposite,
    })
}

fn search(
    n: usize,
    symbol: &str,
    overlap: Option<&str>,
    critical: bool,
    limits: &SearchLimits,
    out_dir: Option<&Path>,
) -> Outcome {
    let target: DiagramSymbol = symbol.parse()?;
    let sizes: Vec<usize> = target.id_sizes.keys().copied().collect();
    let catalog = Catalog::build(n, &sizes)?;
    let mut spec = SearchSpec::new(target);
    spec.pair_overlap = overlap.map(parse_overlap).transpose()?;
    spec.critical_only = critical;
    let outcome = search_diagrams(&catalog, &spec, limits)?;
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    for (k, d) in outcome.diagrams.iter().enumerate() {
        match out_dir {
            Some(dir) => write(&dir.join(format!("diagram-{}.txt", k + 1)), &d.to_string())?,
            None => {
                if k > 0 {
                    println!();
                }
                print!("{d}");
            }
        }
    }
    let status = match outcome.status {
        SearchStatus::Complete => "search complete",
        SearchStatus::DiagramLimit => "stopped at the diagram limit",
        SearchStatus::LimitsExhausted => "node or time limits exhausted",
    };
    eprintln!(
        "{} diagram(s) found; {status}; {} nodes over {} seeds",
        outcome.diagrams.len(),
        outcome.nodes,
        outcome.seeds_searched
    );
    if outcome.diagrams.is_empty() {
        let why = match outcome.status {
            SearchStatus::LimitsExhausted => {
                "no diagram found before the limits were exhausted; one may still exist"
            }
            _ => "no such diagram exists",
        };
        return Err(Failure::Negative(why.into()));
    }
    Ok(())
}

fn dot(input: &Input, out: Option<&Path>) -> Outcome {
    let d = load(input)?;
    let text = d.to_dot();
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn check_proofs(system_path: &Path, proofs_path: &Path) -> Outcome {
    let sys = read_json(system_path)?;
    let bad = |m: &str| Failure::Malformed(format!("{}: {m}", system_path.display()));
    let n = sys["qubits"].as_u64().ok_or_else(|| bad("missing qubits"))?;
    let ids = sys["ids"].as_array().ok_or_else(|| bad("missing ids"))?;
    let mut text = format!("qubits: {n}\n");
    for id in ids {
        text.push_str(id.as_str().ok_or_else(|| bad("ID is not a string"))?);
        text.push('\n');
    }
    let diagram: Diagram = text.parse()?;
    let system = ProjectorSystem::from_ids(diagram.n_qubits(), diagram.ids().to_vec());
    if system.to_json(false)? != sys {
        return Err(bad("file does not match the system rebuilt from its IDs"));
    }
    let list = read_json(proofs_path)?;
    let hash = system.content_hash();
    if list["system_hash"].as_str() != Some(hash.as_str()) {
        return Err(Failure::Malformed(format!(
            "{} refers to a different system",
            proofs_path.display()
        )));
    }
    let proofs = list["proofs"]
        .as_array()
        .ok_or_else(|| Failure::Malformed("missing proofs array".into()))?;
    let mut failed = 0;
    for (k, p) in proofs.iter().enumerate() {
        let indices: Vec<usize> = p
            .as_array()
            .into_iter()
            .flatten()
            .map(|v| v.as_u64().filter(|&i| i > 0).map(|i| i as usize - 1))
            .collect::<Option<_>>()
            .ok_or_else(|| Failure::Malformed(format!("proof {}: bad index", k + 1)))?;
        let check = system.verify_parity_proof(&indices)?;
        if !check.is_parity_proof() || check.assignment_exists {
            failed += 1;
            eprintln!("proof {}: not a parity proof", k + 1);
        }
    }
    println!(
        "{} of {} proofs verified against system {}-{}",
        proofs.len() - failed,
        proofs.len(),
        system.projectors().len(),
        system.bases().len()
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Negative(format!("{failed} proofs failed")))
    }
}
