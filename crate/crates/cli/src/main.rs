//! `cm3`: construct degree-3 space curves, compute their invariants, flatten
//! families and print the component atlas of `H(3,g)`.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cm3_core::parse::parse_generators;
use cm3_core::{AlgebraError, Field, Fp, Ideal, Polynomial, Ring, QQ};
use cm3_curves::atlas::{connectedness_certificate, distinguish_components, enumerate_components, h40_report};
use cm3_curves::family::{default_samples, flatten, h40_family, spec_family, FamilyIdeal};
use cm3_curves::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cm3", version, about = "Locally Cohen-Macaulay curves of degree 3 in P^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a double line, a triple line or a named witness.
    Construct(ConstructArgs),
    /// Saturate an ideal read from a file and report its invariants.
    Invariants {
        /// Ideal text file: one polynomial per line, `#` starts a comment. `-` reads stdin.
        #[arg(long)]
        ideal_file: String,
    },
    /// Saturate a family over k[t] by t and compare fibers with the flat limit.
    Flatten(FlattenArgs),
    /// Components of H(3,g) with verified witnesses and separating invariants.
    Atlas {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Connectedness certificate for H(3,g).
    Connect {
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// The H(4,0) degeneration to an extremal quadruple line.
    H40,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("kind").args(["double", "triple", "planar", "witness"]).required(true)))]
struct ConstructArgs {
    /// Double line of genus -1-a: (x^2, xy, y^2, xg - yf).
    #[arg(long)]
    double: bool,
    /// Quasiprimitive triple line of type (a, b).
    #[arg(long)]
    triple: bool,
    /// Triple line containing the planar double line (x, y^2), genus 1-b.
    #[arg(long)]
    planar: bool,
    /// A named witness, e.g. famI-a or Ha(1); needs --genus.
    #[arg(long)]
    witness: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    genus: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<i64>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    /// Coefficients with q = alpha f^2 + beta fg + gamma g^2; solved for when omitted.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Args, Debug)]
struct FlattenArgs {
    /// `spec` (needs --a, --b), `h40`, or `file` (needs --family-file).
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    /// Generators over k[t][x,y,z,w] in the ideal text format.
    #[arg(long)]
    family_file: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Spec,
    H40,
    File,
}

/// A failed run. Unparseable input exits 2; well-formed input that fails a
/// mathematical check (common zeros, genus ranges, embedded points) exits 1.
enum Failure {
    Usage(String),
    Math(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Math(m) => f.write_str(m),
        }
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Algebra(a) => a.into(),
            other => Failure::Math(other.to_string()),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Syntax { .. } | AlgebraError::UnknownVariable { .. } => Failure::Usage(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

/// Rendered output plus whether every verification passed.
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    ok: bool,
}

impl Report {
    fn render(self, format: Format) -> std::result::Result<(String, bool), Failure> {
        let out = match format {
            Format::Text => self.text,
            Format::Json => {
                let mut v = self.json;
                if let Value::Object(m) = &mut v {
                    m.insert("schema".into(), json!(SCHEMA));
                }
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
            Format::Dot => self.dot.ok_or_else(|| Failure::Usage("--format dot needs atlas, connect or h40".into()))?,
        };
        Ok((out, self.ok))
    }
}

fn required<T: Clone>(v: &Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::Usage(format!("missing --{}", flag)))
}

fn form<F: Field>(v: &Option<String>, flag: &str) -> std::result::Result<Polynomial<F>, Failure> {
    Ok(Polynomial::parse(&required(v, flag)?, Ring::geometric())?)
}

fn read_input(path: &str) -> std::result::Result<String, Failure> {
    let read = if path == "-" { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) };
    read.map_err(|e| Failure::Usage(format!("cannot read {}: {}", path, e)))
}

fn record_report<F: Field>(rec: &CurveRecord<F>) -> Report {
    Report { text: rec.to_text(), json: rec.to_json(), dot: None, ok: true }
}

fn construct<F: Field>(c: &ConstructArgs) -> Outcome {
    let rec = if c.double {
        double_line(&DoubleLineSpec::new(required(&c.a, "a")?, form(&c.f, "f")?, form(&c.g, "g")?)?)?
    } else if c.planar {
        triple_line_planar_base(&TripleLineSpecPlanarBase::new(
            required(&c.b, "b")?,
            form(&c.p, "p")?,
            form(&c.q, "q")?,
        )?)?
    } else if c.triple {
        let coefficients = match (&c.alpha, &c.beta, &c.gamma) {
            (None, None, None) => None,
            _ => Some([form(&c.alpha, "alpha")?, form(&c.beta, "beta")?, form(&c.gamma, "gamma")?]),
        };
        let spec = TripleLineSpecQuasiprimitive::new(
            required(&c.a, "a")?,
            required(&c.b, "b")?,
            form(&c.f, "f")?,
            form(&c.g, "g")?,
            form(&c.p, "p")?,
            form(&c.q, "q")?,
            coefficients,
        )?;
        triple_line_quasiprimitive(&spec)?
    } else {
        let label: WitnessLabel =
            required(&c.witness, "witness")?.parse().map_err(|e: CurveError| Failure::Usage(e.to_string()))?;
        witness::<F>(required(&c.genus, "genus")?, label)?
    };
    Ok(record_report(&rec))
}

fn invariants<F: Field>(path: &str) -> Outcome {
    let gens = parse_generators::<F>(&read_input(path)?, Ring::geometric())?;
    let ideal = Ideal::new(Ring::geometric(), gens)?;
    let rec = curve_invariants(&ideal, Provenance::new("input").with("file", path))?;
    Ok(record_report(&rec))
}

fn flatten_cmd<F: Field>(args: &FlattenArgs) -> Outcome {
    let family = match args.family {
        FamilyKind::Spec => spec_family::<F>(required(&args.a, "a")?, required(&args.b, "b")?)?,
        FamilyKind::H40 => h40_family::<F>(),
        FamilyKind::File => {
            let path = required(&args.family_file, "family-file")?;
            let gens = parse_generators::<F>(&read_input(&path)?, Ring::family())?;
            FamilyIdeal::new(&path, gens)?
        }
    };
    let r = flatten(&family, &default_samples())?;
    Ok(Report { text: r.to_text(), json: r.to_json(), dot: None, ok: r.is_flat() })
}

fn atlas<F: Field>(g: i64) -> Outcome {
    let components = enumerate_components::<F>(g)?;
    let obstructions = if g <= -2 { distinguish_components::<F>(g)? } else { Vec::new() };
    let ok = components.iter().all(|c| c.verified()) && obstructions.iter().all(|o| o.holds());
    let mut text = format!("H(3,{}): {} component(s)\n", g, components.len());
    let mut dot = format!("digraph \"H(3,{})\" {{\n", g);
    for c in &components {
        text.push_str(&format!(
            "  {}: {} | dim {} (printed {}) | witness {} | verified {}\n",
            c.label,
            c.description,
            c.dimension_paramcount,
            c.dimension_paper,
            c.witness_label,
            c.verified()
        ));
        dot.push_str(&format!("  \"{}\" [label=\"{} (dim {})\"];\n", c.label, c.label, c.dimension_paramcount));
    }
    dot.push_str("}\n");
    for o in &obstructions {
        text.push_str(&format!(
            "  {} vs {}: dim {} > {}, min Rao generator {:?} vs {:?}, extremal {} vs {}, holds {}\n",
            o.from,
            o.to,
            o.dim_from,
            o.dim_to,
            o.min_rao_generator_from,
            o.min_rao_generator_to,
            o.extremal_from,
            o.extremal_to,
            o.holds()
        ));
    }
    text.push_str(&format!("verified: {}\n", ok));
    let json = json!({
        "genus": g,
        "components": components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "obstructions": obstructions.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        "verified": ok,
    });
    Ok(Report { text, json, dot: Some(dot), ok })
}

fn run<F: Field>(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Construct(c) => construct::<F>(c),
        Command::Invariants { ideal_file } => invariants::<F>(ideal_file),
        Command::Flatten(args) => flatten_cmd::<F>(args),
        Command::Atlas { genus } => atlas::<F>(*genus),
        Command::Connect { genus } => {
            let r = connectedness_certificate::<F>(*genus)?;
            Ok(Report { text: r.to_text(), json: r.to_json(), dot: Some(r.to_dot()), ok: r.connected })
        }
        Command::H40 => {
            let r = h40_report::<F>()?;
            Ok(Report { text: r.to_text(), json: r.to_json(), dot: Some(r.to_dot()), ok: r.ok() })
        }
    }
}

/// Dispatches on `CM3_FIELD`. Prime fields are compiled in, so only the
/// listed primes are available.
fn run_in_field(cli: &Cli) -> Outcome {
    let field = std::env::var("CM3_FIELD").unwrap_or_else(|_| "Q".into());
    if field == "Q" {
        return run::<QQ>(cli);
    }
    let prime: Option<u64> = field.strip_prefix("Fp:").and_then(|p| p.parse().ok());
    macro_rules! primes {
        ($($p:literal),*) => {
            match prime {
                $(Some($p) => run::<Fp<$p>>(cli),)*
                _ => Err(Failure::Usage(format!(
                    "CM3_FIELD must be Q or Fp:<prime> with prime one of {}",
                    [$($p.to_string()),*].join(", ")
                ))),
            }
        };
    }
    primes!(2, 3, 5, 7, 11, 101, 1009, 10007, 32003, 65521, 1000003, 2147483647)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run_in_field(&cli).and_then(|r| r.render(cli.format)) {
        Ok((out, ok)) => {
            print!("{}", out);
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("cm3: verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("cm3: {}\nRun `cm3 --help` for the command grammar.", m);
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("cm3: {}", m);
            ExitCode::from(1)
        }
    }
}
