//! Command-line front-end: products in a skew basis, form conversions and
//! canonical-form classification.
//!
//! Exit codes: 0 on success, 2 on unparsable input, 3 on a mathematical
//! error (degenerate basis, point off the curve, equation not of second
//! order, and the like).

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewgeom::checks;
use skewgeom::conics::{EllipseParams, HyperbolaParams, ParabolaParams};
use skewgeom::loci::{
    convert_plane, convert_plane_line, convert_space_line, PlaneForm, PlaneLineForm, PlaneLineTag, PlaneTag,
    SpaceLineForm, SpaceLineTag,
};
use skewgeom::quadrics::{classify_conic_with, classify_quadric_with, ConicEquation, QuadricEquation};
use skewgeom::tensorkit::{mixed_product, scalar_product, vector_product};
use skewgeom::{tol, Coordinates3, Frame, GeomError};

use output::{emit, Record};

#[derive(Parser)]
#[command(name = "skewgeom", version, about = "Analytic geometry in skew-angular bases")]
struct Cli {
    /// Emit one JSON record per input on its own line.
    #[arg(long, global = true)]
    json: bool,

    /// Relative zero threshold of the classifier.
    #[arg(long, global = true, value_name = "FLOAT", allow_negative_numbers = true)]
    tol: Option<f64>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix, its inverse, oriented volume and orientation of three vectors.
    Basis {
        /// Nine numbers: e1, e2, e3 in ambient components.
        #[arg(allow_negative_numbers = true, num_args = 9, required = true)]
        values: Vec<String>,
    },
    /// Scalar, vector or mixed product computed from coordinates.
    Product {
        kind: ProductKind,
        #[command(flatten)]
        basis: BasisArg,
        /// Coordinates of the operands, three numbers each.
        #[arg(allow_negative_numbers = true, required = true)]
        values: Vec<String>,
    },
    /// Run the contraction, Jacobi, triple-expansion and related suites.
    IdentityCheck {
        /// Random samples per suite.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Rewrite a line or plane given as JSON in another equation form.
    Convert {
        kind: ConvertKind,
        /// Target form, e.g. `general`, `two_point`, `two_planes`.
        #[arg(long)]
        to: String,
        #[command(flatten)]
        basis: BasisArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Ellipses, hyperbolas and parabolas.
    Conic {
        #[command(subcommand)]
        command: ConicCommand,
    },
    /// Second-order surfaces.
    Quadric {
        #[command(subcommand)]
        command: QuadricCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    Scalar,
    Vector,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertKind {
    Line2d,
    Plane,
    Line3d,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveKind {
    Ellipse,
    Hyperbola,
    Parabola,
}

#[derive(Subcommand)]
enum ConicCommand {
    /// Derived parameters: `ellipse A C`, `hyperbola A C`, `parabola P`.
    Params {
        kind: CurveKind,
        #[arg(allow_negative_numbers = true, required = true)]
        values: Vec<String>,
    },
    /// Tangent line at a point: shape parameters followed by `X0 Y0`.
    Tangent {
        kind: CurveKind,
        #[arg(allow_negative_numbers = true, required = true)]
        values: Vec<String>,
    },
    /// Classify `A B C D E F` of `Ax² + 2Bxy + Cy² + 2Dx + 2Ey + F = 0`.
    Classify {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Subcommand)]
enum QuadricCommand {
    /// Classify the ten coefficients `A B C D E F G H I J`.
    Classify {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args)]
struct BasisArg {
    /// Nine numbers: the basis vectors in ambient components.
    #[arg(long, num_args = 9, allow_negative_numbers = true, value_name = "X")]
    basis: Option<Vec<String>>,
}

#[derive(Args)]
struct InputArgs {
    /// Read one input per line from this file instead.
    #[arg(long, value_name = "PATH")]
    file: Option<String>,

    #[arg(allow_negative_numbers = true)]
    values: Vec<String>,
}

/// Failure of a single input.
enum Failure {
    Parse(String),
    Math(GeomError),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Parse(_) => 2,
            Self::Math(_) => 3,
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Self::Math(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn parse_number(token: &str) -> Outcome<f64> {
    let value: f64 = token.trim().parse().map_err(|_| Failure::Parse(format!("invalid number '{token}'")))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Failure::Parse(format!("non-finite number '{token}'")))
    }
}

fn parse_numbers(tokens: &[String], want: usize, what: &str) -> Outcome<Vec<f64>> {
    let values = tokens
        .iter()
        .flat_map(|t| t.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|t| !t.is_empty())
        .map(parse_number)
        .collect::<Outcome<Vec<f64>>>()?;
    if values.len() != want {
        return Err(Failure::Parse(format!("{what} takes {want} numbers, got {}", values.len())));
    }
    Ok(values)
}

fn vec3(v: &[f64]) -> Coordinates3 {
    Coordinates3::new(v[0], v[1], v[2])
}

fn frame_from(values: &[f64]) -> Outcome<Frame> {
    Ok(Frame::from_vectors(vec3(&values[0..3]), vec3(&values[3..6]), vec3(&values[6..9]))?)
}

fn basis_frame(arg: &BasisArg) -> Outcome<Frame> {
    match &arg.basis {
        None => Ok(Frame::standard()),
        Some(tokens) => frame_from(&parse_numbers(tokens, 9, "--basis")?),
    }
}

/// Inputs as positional tokens or one row per nonblank file line, tagged by line number.
fn rows(input: &InputArgs) -> Outcome<Vec<(Option<usize>, String)>> {
    match &input.file {
        None if input.values.is_empty() => Err(Failure::Parse("no input given".into())),
        None => Ok(vec![(None, input.values.join(" "))]),
        Some(_) if !input.values.is_empty() => Err(Failure::Parse("give either --file or values, not both".into())),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("cannot read '{path}': {e}")))?;
            Ok(text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(|(n, l)| (Some(n + 1), l.to_string()))
                .collect())
        }
    }
}

fn basis_record(values: &[String]) -> Outcome<Record> {
    let f = frame_from(&parse_numbers(values, 9, "basis")?)?;
    let g = f.gram().to_matrix();
    let gi = f.gram_inv().to_matrix();
    Ok(Record::new(json!({
        "gram": g.0,
        "gram_inverse": gi.0,
        "oriented_volume": f.oriented_volume(),
        "orientation": format!("{:?}", f.orientation()).to_lowercase(),
    })))
}

fn product_record(kind: ProductKind, basis: &BasisArg, values: &[String]) -> Outcome<Record> {
    let f = basis_frame(basis)?;
    let value = match kind {
        ProductKind::Scalar => {
            let v = parse_numbers(values, 6, "scalar product")?;
            json!({ "scalar": scalar_product(&vec3(&v[0..3]), &vec3(&v[3..6]), &f) })
        }
        ProductKind::Vector => {
            let v = parse_numbers(values, 6, "vector product")?;
            json!({ "vector": vector_product(&vec3(&v[0..3]), &vec3(&v[3..6]), &f).0 })
        }
        ProductKind::Mixed => {
            let v = parse_numbers(values, 9, "mixed product")?;
            json!({ "mixed": mixed_product(&vec3(&v[0..3]), &vec3(&v[3..6]), &vec3(&v[6..9]), &f) })
        }
    };
    Ok(Record::new(value))
}

fn identity_records(seed: u64, samples: usize) -> Vec<Record> {
    checks::run(seed, samples)
        .into_iter()
        .map(|c| {
            Record::line(json!({
                "check": c.name,
                "samples": c.samples,
                "max_residual": c.max_residual,
                "threshold": c.threshold,
                "passed": c.passed,
            }))
        })
        .collect()
}

fn parse_form<T: serde::de::DeserializeOwned>(row: &str) -> Outcome<T> {
    serde_json::from_str(row).map_err(|e| Failure::Parse(format!("invalid form '{}': {e}", row.trim())))
}

fn parse_tag<T: std::str::FromStr>(to: &str) -> Outcome<T> {
    to.parse().map_err(|_| Failure::Parse(format!("unknown form '{to}'")))
}

fn convert_record(kind: ConvertKind, to: &str, f: &Frame, row: &str) -> Outcome<Record> {
    let value = match kind {
        ConvertKind::Line2d => {
            let src: PlaneLineForm = parse_form(row)?;
            serde_json::to_value(convert_plane_line(&src, parse_tag::<PlaneLineTag>(to)?, f)?)
        }
        ConvertKind::Plane => {
            let src: PlaneForm = parse_form(row)?;
            serde_json::to_value(convert_plane(&src, parse_tag::<PlaneTag>(to)?, f)?)
        }
        ConvertKind::Line3d => {
            let src: SpaceLineForm = parse_form(row)?;
            serde_json::to_value(convert_space_line(&src, parse_tag::<SpaceLineTag>(to)?, f)?)
        }
    };
    Ok(Record::new(value.expect("forms serialize")))
}

fn params_record(kind: CurveKind, values: &[String]) -> Outcome<Record> {
    let value = match kind {
        CurveKind::Ellipse => {
            let v = parse_numbers(values, 2, "ellipse parameters (a c)")?;
            let e = EllipseParams::from_a_c(v[0], v[1])?;
            json!({ "kind": "ellipse", "a": e.a, "b": e.b, "c": e.c, "eccentricity": e.eps, "directrix": e.d, "foci": e.foci() })
        }
        CurveKind::Hyperbola => {
            let v = parse_numbers(values, 2, "hyperbola parameters (a c)")?;
            let h = HyperbolaParams::from_a_c(v[0], v[1])?;
            json!({
                "kind": "hyperbola", "a": h.a, "b": h.b, "c": h.c, "eccentricity": h.eps, "directrix": h.d,
                "foci": h.foci(), "asymptotes": h.asymptotes(),
            })
        }
        CurveKind::Parabola => {
            let v = parse_numbers(values, 1, "parabola parameter (p)")?;
            let p = ParabolaParams::new(v[0])?;
            json!({ "kind": "parabola", "p": p.p, "eccentricity": ParabolaParams::ECCENTRICITY, "focus": p.focus(), "directrix": -p.p / 2.0 })
        }
    };
    Ok(Record::new(value))
}

fn tangent_record(kind: CurveKind, values: &[String]) -> Outcome<Record> {
    let line = match kind {
        CurveKind::Ellipse => {
            let v = parse_numbers(values, 4, "ellipse tangent (a c x0 y0)")?;
            EllipseParams::from_a_c(v[0], v[1])?.tangent_at(v[2], v[3])?
        }
        CurveKind::Hyperbola => {
            let v = parse_numbers(values, 4, "hyperbola tangent (a c x0 y0)")?;
            HyperbolaParams::from_a_c(v[0], v[1])?.tangent_at(v[2], v[3])?
        }
        CurveKind::Parabola => {
            let v = parse_numbers(values, 3, "parabola tangent (p x0 y0)")?;
            ParabolaParams::new(v[0])?.tangent_at(v[1], v[2])?
        }
    };
    Ok(Record::new(serde_json::to_value(line).expect("forms serialize")))
}

fn conic_record(row: &str, zero_tol: f64) -> Outcome<Record> {
    let v = parse_numbers(&[row.to_string()], 6, "conic")?;
    let rep = classify_conic_with(&ConicEquation::from_array(v.try_into().expect("six values")), zero_tol)?;
    let r = rep.rotation;
    Ok(Record::classification(
        rep.class.to_string(),
        rep.canonical.to_array().to_vec(),
        [r[0][0], r[0][1], 0.0, r[1][0], r[1][1], 0.0, 0.0, 0.0, 1.0],
        [rep.translation[0], rep.translation[1], 0.0],
        rep.scale,
        rep.residual,
    ))
}

fn quadric_record(row: &str, zero_tol: f64) -> Outcome<Record> {
    let v = parse_numbers(&[row.to_string()], 10, "quadric")?;
    let rep = classify_quadric_with(&QuadricEquation::from_array(v.try_into().expect("ten values")), zero_tol)?;
    let r = rep.rotation.0;
    Ok(Record::classification(
        rep.class.to_string(),
        rep.canonical.to_array().to_vec(),
        std::array::from_fn(|k| r[k / 3][k % 3]),
        rep.translation.0,
        rep.scale,
        rep.residual,
    ))
}

/// Runs `each` over all rows, printing records in input order. Any row
/// failure is reported with its line number and the worst exit code wins.
fn batch(input: &InputArgs, json: bool, each: impl Fn(&str) -> Outcome<Record>) -> u8 {
    let rows = match rows(input) {
        Ok(r) => r,
        Err(e) => return report(&e, None),
    };
    let mut code = 0;
    for (line, row) in rows {
        match each(&row) {
            Ok(rec) => emit(&rec, json),
            Err(e) => code = code.max(report(&e, line)),
        }
    }
    code
}

fn report(e: &Failure, line: Option<usize>) -> u8 {
    let at = line.map(|n| format!("line {n}: ")).unwrap_or_default();
    match e {
        Failure::Parse(msg) => eprintln!("error: {at}{msg}"),
        Failure::Math(err) => eprintln!("error: {at}{err}"),
    }
    e.code()
}

fn single(result: Outcome<Record>, json: bool) -> u8 {
    match result {
        Ok(rec) => {
            emit(&rec, json);
            0
        }
        Err(e) => report(&e, None),
    }
}

fn run(cli: Cli) -> u8 {
    let zero_tol = match cli.tol {
        Some(t) if !(t.is_finite() && t >= 0.0) => {
            return report(&Failure::Parse(format!("--tol must be a nonnegative number, got {t}")), None)
        }
        Some(t) => t,
        None => tol::CLASSIFIER_ZERO,
    };
    let json = cli.json;
    match &cli.command {
        Command::Basis { values } => single(basis_record(values), json),
        Command::Product { kind, basis, values } => single(product_record(*kind, basis, values), json),
        Command::IdentityCheck { samples } => {
            let records = identity_records(cli.seed, *samples);
            let all_passed = records.iter().all(|r| r.value["passed"] == Value::Bool(true));
            for r in &records {
                emit(r, json);
            }
            if all_passed {
                0
            } else {
                3
            }
        }
        Command::Convert { kind, to, basis, input } => match basis_frame(basis) {
            Ok(f) => batch(input, json, |row| convert_record(*kind, to, &f, row)),
            Err(e) => report(&e, None),
        },
        Command::Conic { command } => match command {
            ConicCommand::Params { kind, values } => single(params_record(*kind, values), json),
            ConicCommand::Tangent { kind, values } => single(tangent_record(*kind, values), json),
            ConicCommand::Classify { input } => batch(input, json, |row| conic_record(row, zero_tol)),
        },
        Command::Quadric { command: QuadricCommand::Classify { input } } => {
            batch(input, json, |row| quadric_record(row, zero_tol))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}
