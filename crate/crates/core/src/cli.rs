//! Command-line front end.

use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::generator::{catalan_monoid, minimal_generating_set, CatalanParams};
use crate::idempotents::{compute_cspoi, verify, IdempotentSystem, Orientation, VerificationReport};
use crate::io::{emit_monoid_file, emit_system, parse_monoid_file, parse_monoid_file_with, parse_system, MonoidFile};
use crate::loops::{loop_set, partition, partition_diagnostic, LoopTypePartition};
use crate::monoid::{AssociativityCheck, FiniteMonoid, GeneratingSet};
use crate::realization::{diagonal_by_element, oracle_check, psi, u_matrix, SquareMatrix};
use crate::ring::{BuiltinRing, CoefficientRing};

#[derive(Debug, Parser)]
#[command(
    name = "monoid-idempotents",
    version,
    about = "Primitive orthogonal idempotents for algebras of finite R-trivial monoids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct MonoidInput {
    /// Monoid file, or `-` for standard input.
    pub file: PathBuf,
    /// Comma-separated element names overriding the file's generating set.
    #[arg(long, short = 'g')]
    pub generators: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the table axioms.
    Validate {
        file: PathBuf,
        /// Skip the associativity check.
        #[arg(long)]
        no_associativity: bool,
    },
    /// Report R/L-triviality, ideals and loop-type classes.
    Analyze {
        #[command(flatten)]
        input: MonoidInput,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute and verify a complete system of primitive orthogonal idempotents.
    Idempotents {
        #[command(flatten)]
        input: MonoidInput,
        /// Coefficient ring: Z, Q, Z/m, or products such as Z/2xZ/3.
        #[arg(long, short = 'r', default_value = "Z")]
        ring: String,
        /// Treat the monoid as L-trivial and compute on its opposite.
        #[arg(long)]
        l_trivial: bool,
        /// Also cross-check every element through the matrix realization.
        #[arg(long)]
        oracle: bool,
        /// Print T, Q and the exponents for every class.
        #[arg(long)]
        provenance: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-check a system document produced by `idempotents --format json`.
    Verify {
        /// System document, or `-` for standard input.
        file: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the matrices U_s, or the realization of one element.
    Realize {
        #[command(flatten)]
        input: MonoidInput,
        /// Element such as `1 - 3*3 + 2*5`; without it every U_s for s in the generating set is printed.
        #[arg(long, short = 'e', allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, short = 'r', default_value = "Z")]
        ring: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a seeded random R-trivial monoid from the Catalan closure generator.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Length of the chain the maps act on.
        #[arg(long, default_value_t = 4)]
        chain: usize,
        /// Number of random maps to close under composition.
        #[arg(long, default_value_t = 2)]
        maps: usize,
        #[arg(long, default_value_t = 12)]
        max_size: usize,
        /// Record a random minimal generating set instead of the drawn maps.
        #[arg(long)]
        minimal: bool,
    },
}

/// A failure with a machine-readable category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub category: String,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.category, self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            category: e.category().to_string(),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            category: "IoError".into(),
            message: e.to_string(),
        }
    }
}

fn failure(category: &str, message: impl Into<String>) -> CliError {
    CliError {
        category: category.into(),
        message: message.into(),
    }
}

type CliResult = std::result::Result<(), CliError>;

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| failure("IoError", format!("{}: {e}", path.display())))
    }
}

fn with_path(path: &Path, e: Error) -> CliError {
    let mut err = CliError::from(e);
    if path != Path::new("-") {
        err.message = format!("{}: {}", path.display(), err.message);
    }
    err
}

fn load(input: &MonoidInput) -> Result<(Arc<FiniteMonoid>, GeneratingSet), CliError> {
    let text = read_input(&input.file)?;
    let MonoidFile { monoid, generators } =
        parse_monoid_file(&text).map_err(|e| with_path(&input.file, e))?;
    let members = match &input.generators {
        Some(list) => parse_names(&monoid, list)?,
        None => generators.unwrap_or_else(|| monoid.elements().collect()),
    };
    let s = GeneratingSet::new(&monoid, members)?;
    Ok((Arc::new(monoid), s))
}

fn parse_names(monoid: &FiniteMonoid, list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            monoid
                .index_of(name)
                .ok_or_else(|| failure("ParseError", format!("--generators: unknown element {name:?}")))
        })
        .collect()
}

fn names(monoid: &FiniteMonoid, set: impl IntoIterator<Item = usize>) -> Vec<String> {
    set.into_iter().map(|a| monoid.name(a).to_string()).collect()
}

fn braces(monoid: &FiniteMonoid, set: impl IntoIterator<Item = usize>) -> String {
    format!("{{{}}}", names(monoid, set).join(","))
}

fn render_classes(monoid: &FiniteMonoid, p: &LoopTypePartition) -> String {
    p.classes()
        .iter()
        .map(|c| braces(monoid, c.iter().copied()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn matrix_json<R: CoefficientRing>(m: &SquareMatrix<R>) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.ring().format_elem(m.get(i, j))).collect())
        .collect()
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> CliResult {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("json"))?;
    Ok(())
}

/// Runs one command, writing its normal output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Validate { file, no_associativity } => validate(file, *no_associativity, out),
        Command::Analyze { input, format } => analyze(input, *format, out),
        Command::Idempotents {
            input,
            ring,
            l_trivial,
            oracle,
            provenance,
            format,
        } => {
            let ring = BuiltinRing::parse(ring)?;
            let (host, s) = load(input)?;
            let orientation = if *l_trivial {
                Orientation::LTrivial
            } else {
                Orientation::RTrivial
            };
            let system = compute_cspoi(host, &s, ring, orientation)?;
            let report = verify(&system)?;
            report_system(&system, &report, *oracle, *provenance, *format, out)
        }
        Command::Verify { file, oracle, format } => {
            let text = read_input(file)?;
            let parsed = parse_system(&text).map_err(|e| with_path(file, e))?;
            let report = verify(&parsed.system)?;
            report_system(&parsed.system, &report, *oracle, false, *format, out)
        }
        Command::Realize {
            input,
            element,
            ring,
            format,
        } => {
            let ring = BuiltinRing::parse(ring)?;
            realize(input, element.as_deref(), ring, *format, out)
        }
        Command::Generate {
            seed,
            chain,
            maps,
            max_size,
            minimal,
        } => {
            let params = CatalanParams {
                chain: *chain,
                generators: *maps,
                max_size: *max_size,
            };
            let g = catalan_monoid(*seed, params)?;
            let generators = if *minimal {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                minimal_generating_set(&g.monoid, &mut rng).members().to_vec()
            } else {
                g.generators.clone()
            };
            writeln!(
                out,
                "# Catalan closure: chain {chain}, {maps} maps, seed {seed}, {} elements",
                g.monoid.size()
            )?;
            write!(out, "{}", emit_monoid_file(&g.monoid, Some(&generators)))?;
            Ok(())
        }
    }
}

fn validate(file: &Path, skip: bool, out: &mut dyn Write) -> CliResult {
    let text = read_input(file)?;
    let check = if skip {
        AssociativityCheck::Skip
    } else {
        AssociativityCheck::Always
    };
    let f = parse_monoid_file_with(&text, check).map_err(|e| with_path(file, e))?;
    let m = &f.monoid;
    writeln!(
        out,
        "valid monoid: {} elements, unit {}, associativity {}",
        m.size(),
        m.name(m.unit()),
        if skip { "not checked" } else { "checked" }
    )?;
    if let Some(g) = &f.generators {
        let closure = m.closure(g)?;
        writeln!(
            out,
            "generators {} {}",
            braces(m, g.iter().copied()),
            if closure.len() == m.size() {
                "generate the monoid".to_string()
            } else {
                format!("generate only {} of {} elements", closure.len(), m.size())
            }
        )?;
    }
    Ok(())
}

fn analyze(input: &MonoidInput, format: Format, out: &mut dyn Write) -> CliResult {
    let (m, s) = load(input)?;
    let r_witness = m.r_triviality_witness();
    let l_witness = m.l_triviality_witness();
    let ideals: Vec<Vec<usize>> = m
        .elements()
        .map(|a| m.right_ideal(a).map(|i| i.into_iter().collect()))
        .collect::<Result<_, _>>()?;
    let loops: Vec<Vec<usize>> = m
        .elements()
        .map(|a| loop_set(&m, a).map(|l| l.into_iter().collect()))
        .collect::<Result<_, _>>()?;
    // the loop-type partition needs R-triviality; otherwise show the raw grouping
    let (classes, order) = match partition(&m, &s) {
        Ok(p) => (p, Some(m.triangular_order()?)),
        Err(Error::NotRTrivial(..)) => (partition_diagnostic(&m, &s)?, None),
        Err(e) => return Err(e.into()),
    };

    match format {
        Format::Json => print_json(
            out,
            &json!({
                "n": m.size(),
                "unit": m.unit(),
                "names": m.names(),
                "generators": s.members(),
                "r_trivial": r_witness.is_none(),
                "r_witness": r_witness,
                "l_trivial": l_witness.is_none(),
                "l_witness": l_witness,
                "commutative": m.is_commutative(),
                "right_ideals": ideals,
                "loop_sets": loops,
                "triangular_order": order,
                "classes": classes.classes(),
                "representatives": classes.representatives(),
            }),
        ),
        Format::Text => {
            let witness = |w: Option<(usize, usize)>| match w {
                None => "yes".to_string(),
                Some((a, b)) => format!("no (witness {} and {})", m.name(a), m.name(b)),
            };
            writeln!(out, "elements: {}", m.size())?;
            writeln!(out, "unit: {}", m.name(m.unit()))?;
            writeln!(out, "generators: {}", braces(&m, s.members().iter().copied()))?;
            writeln!(out, "R-trivial: {}", witness(r_witness))?;
            writeln!(out, "L-trivial: {}", witness(l_witness))?;
            writeln!(out, "commutative: {}", if m.is_commutative() { "yes" } else { "no" })?;
            writeln!(out, "right ideals:")?;
            for a in m.elements() {
                writeln!(
                    out,
                    "  {}M = {}  loops {}",
                    m.name(a),
                    braces(&m, ideals[a].iter().copied()),
                    braces(&m, loops[a].iter().copied())
                )?;
            }
            if let Some(order) = order {
                writeln!(out, "triangular order: {}", names(&m, order).join(" "))?;
                writeln!(out, "loop-type classes: {}", render_classes(&m, &classes))?;
            } else {
                writeln!(
                    out,
                    "loop-set grouping (not a loop-type partition): {}",
                    render_classes(&m, &classes)
                )?;
            }
            Ok(())
        }
    }
}

fn report_system<R: CoefficientRing>(
    system: &IdempotentSystem<R>,
    report: &VerificationReport,
    oracle: bool,
    provenance: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let oracle_failures = if oracle {
        Some(oracle_check(system)?)
    } else {
        None
    };
    match format {
        Format::Json => {
            write!(out, "{}", emit_system(system, Some(report)))?;
        }
        Format::Text => {
            let host = system.host();
            let working = system.working_monoid();
            let classes = partition(&working, &GeneratingSet::all(&working))?;
            writeln!(out, "ring: {}", system.ring().selector())?;
            writeln!(out, "orientation: {}", system.orientation().as_str())?;
            writeln!(
                out,
                "generators: {}",
                braces(host, system.generators().members().iter().copied())
            )?;
            writeln!(out, "loop-type classes: {}", render_classes(&working, &classes))?;
            if provenance {
                for (i, r) in system.provenance().iter().enumerate() {
                    let j = i + 1;
                    writeln!(
                        out,
                        "class {j}: representative {}, d = {}, a = {}, b = {}",
                        working.name(r.representative),
                        r.class_size,
                        r.a,
                        r.b
                    )?;
                    writeln!(out, "  T{j} = {}", r.t.render())?;
                    writeln!(out, "  Q{j} = {}", r.q.render())?;
                    writeln!(out, "  E{j} = {}", r.e.render())?;
                }
            }
            for entry in system.entries() {
                writeln!(out, "{} = {}", system.label(entry), entry.element.render())?;
            }
            write!(out, "{}", report.render())?;
            if let Some(failures) = &oracle_failures {
                if failures.is_empty() {
                    writeln!(out, "oracle      pass")?;
                } else {
                    for f in failures {
                        writeln!(out, "oracle      FAIL ({f})")?;
                    }
                }
            }
        }
    }
    if !report.passed() {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.axiom.as_str())
            .collect();
        return Err(failure(
            "VerificationFailed",
            format!("failed checks: {}", failed.join(", ")),
        ));
    }
    if let Some(failures) = oracle_failures.filter(|f| !f.is_empty()) {
        return Err(failure("OracleFailed", failures.join("; ")));
    }
    Ok(())
}

fn realize(
    input: &MonoidInput,
    element: Option<&str>,
    ring: BuiltinRing,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let (m, s) = load(input)?;
    let order = m.triangular_order()?;
    let order_names = names(&m, order.iter().copied());
    match element {
        Some(text) => {
            let x = AlgebraElement::parse(m.clone(), ring.clone(), text)?;
            let matrix = psi(&x, &order);
            let diagonal: Vec<String> = diagonal_by_element(&matrix, &order)
                .iter()
                .map(|c| ring.format_elem(c))
                .collect();
            match format {
                Format::Json => print_json(
                    out,
                    &json!({
                        "order": order_names,
                        "element": x.render(),
                        "matrix": matrix_json(&matrix),
                        "diagonal": diagonal,
                        "upper_triangular": matrix.is_upper_triangular(),
                    }),
                ),
                Format::Text => {
                    writeln!(out, "order: {}", order_names.join(" "))?;
                    writeln!(out, "psi({}) =", x.render())?;
                    writeln!(out, "{}", matrix.render())?;
                    writeln!(out, "diagonal by element: {}", diagonal.join(" "))?;
                    writeln!(
                        out,
                        "upper triangular: {}",
                        if matrix.is_upper_triangular() { "yes" } else { "no" }
                    )?;
                    Ok(())
                }
            }
        }
        None => {
            let matrices: Vec<(usize, SquareMatrix<BuiltinRing>)> = s
                .members()
                .iter()
                .map(|&a| (a, u_matrix(&m, &order, a, ring.clone())))
                .collect();
            match format {
                Format::Json => print_json(
                    out,
                    &json!({
                        "order": order_names,
                        "matrices": matrices.iter().map(|(a, u)| json!({
                            "element": m.name(*a),
                            "matrix": matrix_json(u),
                        })).collect::<Vec<_>>(),
                    }),
                ),
                Format::Text => {
                    writeln!(out, "order: {}", order_names.join(" "))?;
                    for (a, u) in &matrices {
                        writeln!(out, "U_{} =", m.name(*a))?;
                        writeln!(out, "{}", u.render())?;
                    }
                    Ok(())
                }
            }
        }
    }
}

/// Parses `args`, runs, and returns the process exit code. Errors go to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            1
        }
    }
}
