use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thompson::fgen::{invariable_generation_cert, seeded_generation_cert};
use thompson::format::{verify_document, Document};
use thompson::vdyn::{
    free_product_test, orbit_certificate, standard_instance, verify_orbit, verify_pingpong,
    verify_wandering, wandering_interval, Budgets,
};
use thompson::{Dyadic, ElementClass, Error, TreeDiagram};

/// Exact computation and certificates for Thompson's groups F, T and V.
///
/// Elements are read from files in the branch-table format (one `u -> v`
/// per line) or named as a built-in: `id`, `x0`, `x1`.
#[derive(Parser)]
#[command(name = "thompson", version)]
struct Cli {
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest order tried when detecting periodic elements.
    #[arg(long, global = true, env = "THOMPSON_MAX_ORDER", default_value_t = Budgets::default().max_order)]
    max_order: u32,
    /// Carets that may be added while searching for revealing evidence.
    #[arg(long, global = true, env = "THOMPSON_EXPANSION_BUDGET", default_value_t = Budgets::default().expansion_budget)]
    expansion_budget: usize,
    /// Largest power tried while searching for revealing evidence.
    #[arg(long, global = true, env = "THOMPSON_POWER_BUDGET", default_value_t = Budgets::default().power_budget)]
    power_budget: u32,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            max_order: self.max_order,
            expansion_budget: self.expansion_budget,
            power_budget: self.power_budget,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced branch table of an element.
    Normalize { elem: String },
    /// Multiply elements left to right (the first one acts first).
    Compose {
        #[arg(required = true)]
        elems: Vec<String>,
    },
    /// Map dyadic points, written `p/2^q`.
    Evaluate {
        elem: String,
        #[arg(required = true)]
        points: Vec<String>,
    },
    /// Certify that {x0, x1^h, (x0 x1)^g} generates F.
    CertF {
        #[arg(long, default_value = "id", conflicts_with = "random")]
        h: String,
        #[arg(long, default_value = "id", conflicts_with = "random")]
        g: String,
        /// Number of certificates with seeded random conjugators.
        #[arg(long, requires = "seed")]
        random: Option<u64>,
        /// First seed; certificate i uses seed + i.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; a directory when more than one certificate is made.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a wandering-interval certificate for an element.
    Wandering {
        elem: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the ping-pong instance for the first N representatives in T
    /// and sample reduced words.
    PingpongT {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        words: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the V instance for N representatives and check the orbit of 0
    /// up to word length L.
    OrbitV {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file.
    Verify {
        file: PathBuf,
        /// Powers checked by brute force.
        #[arg(long, default_value_t = 50)]
        n_max: u32,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Inconclusive(_)) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn failure(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult = Result<(), Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| failure(format!("{}: {e}", path.display())))
}

fn load_element(spec: &str) -> Result<TreeDiagram, Failure> {
    if let Some(d) = TreeDiagram::builtin(spec) {
        return Ok(d);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(failure(format!("{spec}: no such file or built-in element")));
    }
    read_file(path)?
        .parse()
        .map_err(|e: Error| failure(format!("{spec}: {e}")))
}

fn write_output(doc: &Document, out: Option<&Path>) -> CliResult {
    let text = doc.to_json();
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| failure(format!("{}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn print_table(d: &TreeDiagram) {
    for line in d.table_lines() {
        println!("{line}");
    }
}

fn run(cli: Cli) -> CliResult {
    let budgets = cli.budgets.budgets();
    match cli.command {
        Command::Normalize { elem } => print_table(&load_element(&elem)?.reduce()),
        Command::Compose { elems } => {
            let mut product = TreeDiagram::identity();
            for e in &elems {
                product = product.mul(&load_element(e)?);
            }
            print_table(&product);
        }
        Command::Evaluate { elem, points } => {
            let d = load_element(&elem)?;
            for p in &points {
                let x: Dyadic = p.parse().map_err(|e: Error| failure(format!("{p}: {e}")))?;
                println!("{x} -> {}", d.evaluate(&x));
            }
        }
        Command::CertF {
            h,
            g,
            random,
            seed,
            out,
        } => match random {
            None => {
                let cert = invariable_generation_cert(&load_element(&h)?, &load_element(&g)?)?;
                write_output(&cert.into(), out.as_deref())?;
            }
            Some(count) => {
                let first = seed.expect("clap enforces --seed");
                if count > 1 {
                    if let Some(dir) = &out {
                        fs::create_dir_all(dir)
                            .map_err(|e| failure(format!("{}: {e}", dir.display())))?;
                    }
                }
                for i in 0..count {
                    let s = first.wrapping_add(i);
                    let cert = seeded_generation_cert(s)?;
                    let path = match (&out, count) {
                        (Some(p), 1) => Some(p.clone()),
                        (Some(dir), _) => Some(dir.join(format!("cert-f-{s}.json"))),
                        (None, _) => None,
                    };
                    write_output(&cert.into(), path.as_deref())?;
                }
            }
        },
        Command::Wandering { elem, out } => {
            let cert = wandering_interval(&load_element(&elem)?, &budgets)?;
            verify_wandering(&cert, 50)?;
            eprintln!("{} interval {}", kind_label(&cert.kind), cert.interval);
            write_output(&cert.into(), out.as_deref())?;
        }
        Command::PingpongT {
            n,
            words,
            max_len,
            seed,
            out,
        } => {
            let inst = standard_instance(ElementClass::T, n, &budgets)?;
            verify_pingpong(&inst, 25)?;
            let report = free_product_test(&inst, max_len, words, seed)?;
            eprintln!("{report}");
            if report.identities > 0 || report.inclusion_failures > 0 {
                return Err(failure("free product test failed"));
            }
            write_output(&inst.into(), out.as_deref())?;
        }
        Command::OrbitV { n, len, out } => {
            let inst = standard_instance(ElementClass::V, n, &budgets)?;
            let cert = orbit_certificate(inst, len)?;
            verify_orbit(&cert, 25)?;
            eprintln!(
                "{} orbit points up to word length {len}, all in [0, 1/4)",
                cert.orbit.len()
            );
            write_output(&cert.into(), out.as_deref())?;
        }
        Command::Verify { file, n_max } => {
            let text = read_file(&file)?;
            let doc = Document::from_json(&text)
                .map_err(|e| failure(format!("{}: {e}", file.display())))?;
            verify_document(&doc, n_max)?;
            println!("verified: {} certificate", doc.certificate.kind());
        }
    }
    Ok(())
}

fn kind_label(kind: &thompson::vdyn::WanderingKind) -> &'static str {
    match kind {
        thompson::vdyn::WanderingKind::Wandering => "wandering",
        thompson::vdyn::WanderingKind::WeaklyWandering => "weakly wandering",
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
