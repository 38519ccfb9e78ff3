use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use forms_core::flat::{are_isometric, invariants};
use forms_core::forms::{Form, Representation, ResiduePoleForm};
use forms_core::group::{
    are_psl_equivalent, isotropy_group, isotropy_table, realize_cyclic, realize_dihedral,
    realize_platonic, GroupTag, PlatonicSolid,
};
use forms_core::json::{FormDocument, GroupDocument, JsonComplex, MPointDocument, MobiusDocument};
use forms_core::quotient::{canonicalize, isochronous_component_s4, orbit_type_count, MPoint};
use forms_core::sample::Sampler;
use forms_core::{Error, ErrorClass};

#[derive(Parser)]
#[command(
    name = "forms",
    version,
    about = "Rational 1-forms with simple poles on the Riemann sphere"
)]
struct Cli {
    /// Chordal comparison tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Seed for commands that sample
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a form document to another representation
    Convert {
        #[arg(long, value_parser = ["residue_pole", "coefficient", "zero_pole"])]
        to: String,
        input: Option<PathBuf>,
    },
    /// Isotropy group of a form
    Isotropy { input: Option<PathBuf> },
    /// Whether two forms differ by a Möbius map; one file or stdin may hold a pair
    Equivalent {
        #[arg(num_args = 0..=2)]
        inputs: Vec<PathBuf>,
    },
    /// Whether two forms give isometric flat surfaces
    Isometric {
        #[arg(num_args = 0..=2)]
        inputs: Vec<PathBuf>,
    },
    /// Form realizing a finite group (Z_n, D_n, A4, S4, A5) or a platonic solid
    Realize {
        #[arg(long)]
        group: String,
    },
    /// Nontrivial isotropy groups for each number of poles
    Table {
        #[arg(default_value_t = 3)]
        from: usize,
        #[arg(default_value_t = 11)]
        to: usize,
    },
    /// Number of isotropy types for each number of poles
    OrbitTypes {
        #[arg(default_value_t = 3)]
        from: usize,
        #[arg(default_value_t = 11)]
        to: usize,
    },
    /// Quotient coordinates of a form
    Canonical { input: Option<PathBuf> },
    /// Component of an isochronous form or quotient point with four poles
    Component4 { input: Option<PathBuf> },
    /// Cone angles and cylinder circumferences
    Invariants { input: Option<PathBuf> },
    /// Random residue-pole form
    Sample {
        #[arg(long)]
        s: usize,
        /// Purely imaginary residues
        #[arg(long)]
        isochronous: bool,
    },
}

struct Failure {
    status: u8,
    code: String,
    message: String,
}

impl Failure {
    fn invalid(code: &str, message: impl Into<String>) -> Self {
        Failure {
            status: 1,
            code: code.into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.class() {
            ErrorClass::InvalidInput => 1,
            ErrorClass::Numerical => 2,
            ErrorClass::InfiniteIsotropy => 3,
        };
        Failure {
            status,
            code: e.code().into(),
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_text(path: Option<&PathBuf>) -> CliResult<String> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Failure::invalid("Io", format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::invalid("Io", e.to_string()))?;
            Ok(s)
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::invalid("Parse", e.to_string()))
}

fn read_form(path: Option<&PathBuf>, tol: f64) -> CliResult<Form> {
    let doc: FormDocument = parse(&read_text(path)?)?;
    Ok(doc.to_form(tol)?)
}

/// Two forms from two files, or a JSON array of two documents from one file or stdin.
fn read_pair(paths: &[PathBuf], tol: f64) -> CliResult<(ResiduePoleForm, ResiduePoleForm)> {
    let docs: Vec<FormDocument> = match paths {
        [a, b] => vec![parse(&read_text(Some(a))?)?, parse(&read_text(Some(b))?)?],
        _ => parse(&read_text(paths.first())?)?,
    };
    let [a, b] = <[FormDocument; 2]>::try_from(docs)
        .map_err(|d| Failure::invalid("Parse", format!("expected 2 forms, got {}", d.len())))?;
    let a = a.to_form(tol)?.to_residue_pole(tol)?;
    let b = b.to_form(tol)?.to_residue_pole(tol)?;
    if a.s() != b.s() {
        return Err(Error::SizeMismatch {
            left: a.s(),
            right: b.s(),
        }
        .into());
    }
    Ok((a, b))
}

fn realize(name: &str) -> CliResult<ResiduePoleForm> {
    let solid = match name.to_ascii_lowercase().as_str() {
        "tetrahedron" => Some(PlatonicSolid::Tetrahedron),
        "cube" => Some(PlatonicSolid::Cube),
        "octahedron" => Some(PlatonicSolid::Octahedron),
        "dodecahedron" => Some(PlatonicSolid::Dodecahedron),
        "icosahedron" => Some(PlatonicSolid::Icosahedron),
        _ => None,
    };
    if let Some(solid) = solid {
        return Ok(realize_platonic(solid)?);
    }
    let tag: GroupTag = name
        .parse()
        .map_err(|_| Failure::invalid("UnknownGroup", format!("unknown group {name:?}")))?;
    let form = match tag {
        GroupTag::Cyclic(1) => {
            return Err(Failure::invalid(
                "UnknownGroup",
                "trivial group has no construction",
            ))
        }
        GroupTag::Cyclic(n) => realize_cyclic(n as usize)?,
        GroupTag::Dihedral(n) => realize_dihedral(n as usize)?,
        GroupTag::Tetrahedral => realize_platonic(PlatonicSolid::Tetrahedron)?,
        GroupTag::Octahedral => realize_platonic(PlatonicSolid::Octahedron)?,
        GroupTag::Icosahedral => realize_platonic(PlatonicSolid::Icosahedron)?,
    };
    Ok(form)
}

fn rp_document(form: ResiduePoleForm) -> Value {
    to_value(&FormDocument::from_form(&Form::ResiduePole(form)))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

fn check_range(from: usize, to: usize) -> CliResult<()> {
    if from < 3 || from > to {
        return Err(Failure::invalid(
            "Range",
            format!("expected 3 <= from <= to, got {from}..{to}"),
        ));
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<Value> {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::invalid("Tolerance", "--tol must be positive"));
    }
    match &cli.command {
        Command::Convert { to, input } => {
            let form = read_form(input.as_ref(), tol)?;
            let target = Representation::from_name(to).expect("clap restricts the names");
            let out = form.convert(target, tol)?;
            Ok(to_value(&FormDocument::from_form(&out)))
        }
        Command::Isotropy { input } => {
            let form = read_form(input.as_ref(), tol)?.to_residue_pole(tol)?;
            Ok(to_value(&GroupDocument::from_group(&isotropy_group(
                &form, tol,
            )?)))
        }
        Command::Equivalent { inputs } => {
            let (a, b) = read_pair(inputs, tol)?;
            Ok(match are_psl_equivalent(&a, &b, tol) {
                Some(t) => {
                    json!({"equivalent": true, "mobius": to_value(&MobiusDocument::from_map(&t))})
                }
                None => json!({"equivalent": false}),
            })
        }
        Command::Isometric { inputs } => {
            let (a, b) = read_pair(inputs, tol)?;
            Ok(match are_isometric(&a, &b, tol) {
                Some((lambda, t)) => json!({
                    "isometric": true,
                    "lambda": to_value(&JsonComplex(lambda)),
                    "mobius": to_value(&MobiusDocument::from_map(&t)),
                }),
                None => json!({"isometric": false}),
            })
        }
        Command::Realize { group } => Ok(rp_document(realize(group)?)),
        Command::Table { from, to } => {
            check_range(*from, *to)?;
            let rows: Vec<Value> = (*from..=*to)
                .map(|s| {
                    let groups: Vec<String> =
                        isotropy_table(s).iter().map(GroupTag::table_name).collect();
                    json!({"s": s, "groups": groups})
                })
                .collect();
            Ok(Value::Array(rows))
        }
        Command::OrbitTypes { from, to } => {
            check_range(*from, *to)?;
            let rows: Vec<Value> = (*from..=*to)
                .map(|s| json!({"s": s, "orbit_types": orbit_type_count(s)}))
                .collect();
            Ok(Value::Array(rows))
        }
        Command::Canonical { input } => {
            let form = read_form(input.as_ref(), tol)?.to_residue_pole(tol)?;
            Ok(to_value(&MPointDocument::from_mpoint(&canonicalize(
                &form, tol,
            )?)))
        }
        Command::Component4 { input } => {
            let text = read_text(input.as_ref())?;
            let value: Value = parse(&text)?;
            let m: MPoint = if value.get("representation").is_some() {
                let doc: FormDocument = parse(&text)?;
                canonicalize(&doc.to_form(tol)?.to_residue_pole(tol)?, tol)?
            } else {
                parse::<MPointDocument>(&text)?.to_mpoint(tol)?
            };
            Ok(to_value(&isochronous_component_s4(&m, tol)?))
        }
        Command::Invariants { input } => {
            let form = read_form(input.as_ref(), tol)?;
            Ok(to_value(&invariants(&form, tol)?))
        }
        Command::Sample { s, isochronous } => {
            if *s < 2 {
                return Err(Failure::invalid("Range", "--s must be at least 2"));
            }
            let mut sampler = Sampler::new(cli.seed.unwrap_or(0));
            let form = if *isochronous {
                sampler.isochronous_form(*s)
            } else {
                sampler.rp_form(*s, false)
            };
            Ok(rp_document(form))
        }
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

/// Aligned text: one row per `s` for the tables, one `key  value` line otherwise.
fn render_table(command: &Command, v: &Value) -> String {
    let mut out = String::new();
    match (command, v) {
        (Command::Table { .. }, Value::Array(rows)) => {
            out.push_str(" s | nontrivial isotropy groups\n");
            for row in rows {
                let groups: Vec<&str> = row["groups"]
                    .as_array()
                    .map(|g| g.iter().filter_map(Value::as_str).collect())
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{:>2} | {}\n",
                    row["s"].as_u64().unwrap_or(0),
                    groups.join(", ")
                ));
            }
        }
        (Command::OrbitTypes { .. }, Value::Array(rows)) => {
            out.push_str(" s | orbit types\n");
            for row in rows {
                out.push_str(&format!(
                    "{:>2} | {}\n",
                    row["s"].as_u64().unwrap_or(0),
                    row["orbit_types"]
                ));
            }
        }
        (_, Value::Object(map)) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in map {
                let text = match val {
                    Value::String(s) => s.clone(),
                    other => compact(other),
                };
                out.push_str(&format!("{k:<width$}  {text}\n"));
            }
        }
        (_, other) => {
            out.push_str(&compact(other));
            out.push('\n');
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(v) => {
            match cli.output {
                Output::Json => println!("{}", compact(&v)),
                Output::Table => print!("{}", render_table(&cli.command, &v)),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let err = json!({"error": f.code, "message": f.message, "exit_code": f.status});
            eprintln!("{}", compact(&err));
            ExitCode::from(f.status)
        }
    }
}
