//! The `wittc` command line.
//!
//! Every invocation prints one JSON document `{"status", "payload",
//! "provenance"}` on stdout. Exit codes: 0 ok, 1 mismatch or mathematical
//! failure, 2 usage error, 3 selfcheck violation.

use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::FiniteAlgebra;
use crate::correspondence::compose;
use crate::error::Error;
use crate::euler::{
    bezoutian_form, euler_correspondence, plain_trace_form, scaled_trace_form, split_by_factors, trace_gram,
    EulerDatum,
};
use crate::field::{Field, FieldElem};
use crate::json::*;
use crate::poly::Poly;
use crate::rigidity::{
    default_samples, pencil_check, sqmet_class, square_unit_is_identity, HomotopyPencil, NilpotentSpace,
    SqMetClass,
};
use crate::selfcheck;
use crate::witt::{is_witt_trivial, square_class_rep, witt_equal, witt_invariants};

#[derive(Parser, Debug)]
#[command(name = "wittc", version, about = "Exact Witt-class computations over Q and F_p")]
pub struct Cli {
    /// Base field: "Q", a prime p, or JSON such as '{"Fp":5}'.
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quadratic spaces over the base field.
    Form {
        #[command(subcommand)]
        op: FormOp,
    },
    /// Bezoutian form of a monic polynomial.
    Euler(EulerArgs),
    /// The transfer correspondence pt -> k[t]/(p).
    Transfer(TransferArgs),
    /// Composite LEFT ∘ RIGHT of two correspondences.
    Compose { left: String, right: String },
    /// Metabolic reduction and the square-unit lemma.
    Lemma {
        #[command(subcommand)]
        op: LemmaOp,
    },
    /// Witt classes along the pencil (1-λ)·f0 + λ·f1.
    Homotopy(HomotopyArgs),
    /// Runs every invariant suite on random inputs.
    Selfcheck(SelfcheckArgs),
}

#[derive(Subcommand, Debug)]
enum FormOp {
    /// Diagonalizes a form, recording the basis change.
    Diag { space: String },
    /// Rank, signature, discriminant and Hasse symbols.
    Invariants { space: String },
    /// Whether two forms have the same Witt class.
    WittEqual { a: String, b: String },
    /// Whether a form is metabolic.
    WittTrivial { space: String },
}

#[derive(Args, Debug)]
struct EulerArgs {
    /// The polynomial f, as JSON or in the syntax "t^3-t".
    #[arg(long, required_unless_present = "datum")]
    f: Option<String>,
    /// A full datum {"f", "unit", "target"}.
    #[arg(long, conflicts_with_all = ["f", "unit"])]
    datum: Option<String>,
    #[arg(long)]
    unit: Option<String>,
    /// Coprime factors f1 f2 with f = f1·f2.
    #[arg(long, num_args = 2, value_names = ["F1", "F2"])]
    split: Option<Vec<String>>,
    /// Also compute the form from traces of multiplication operators.
    #[arg(long)]
    trace_oracle: bool,
}

#[derive(Args, Debug)]
struct TransferArgs {
    #[arg(long)]
    min_poly: String,
    #[arg(long)]
    unit: Option<String>,
}

#[derive(Subcommand, Debug)]
enum LemmaOp {
    /// Lagrangian or sublagrangian reduction of the form on k[t]/(e^n).
    Sqmet {
        #[arg(long)]
        e: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        unit: Option<String>,
    },
    /// Whether the unit q is a square, with the witness w.
    SquareUnit {
        #[arg(long)]
        q: String,
    },
}

#[derive(Args, Debug)]
struct HomotopyArgs {
    #[arg(long, required_unless_present = "pencil")]
    f0: Option<String>,
    #[arg(long, required_unless_present = "pencil")]
    f1: Option<String>,
    /// A full pencil {"f0", "f1", "unit", "samples"}.
    #[arg(long, conflicts_with_all = ["f0", "f1", "unit"])]
    pencil: Option<String>,
    /// JSON list of λ values, or a comma-separated list.
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    unit: Option<String>,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// Defaults to $WITTC_SEED, then to a fixed seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = selfcheck::DEFAULT_ITERS)]
    iters: usize,
    /// Corrupt one computed value so that the run must fail.
    #[arg(long)]
    inject_fault: bool,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Math(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok,
    Mismatch,
    Violation,
}

struct Outcome {
    status: Status,
    payload: Value,
    inputs: Value,
    operations: Vec<&'static str>,
}

impl Outcome {
    fn new(payload: Value, inputs: Value, operations: Vec<&'static str>) -> Outcome {
        Outcome {
            status: Status::Ok,
            payload,
            inputs,
            operations,
        }
    }

    fn mismatch_unless(mut self, ok: bool) -> Outcome {
        if !ok {
            self.status = Status::Mismatch;
        }
        self
    }
}

fn parse_field(s: &str) -> Result<Field, Failure> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    if let Ok(p) = t.parse::<u64>() {
        return Field::prime(p).map_err(usage);
    }
    let v: Value = serde_json::from_str(t).map_err(|e| Failure::Usage(format!("bad --field {t:?}: {e}")))?;
    field_from_json(&v).map_err(usage)
}

/// An argument is inline JSON, `-` for stdin, a path to a JSON file, or a
/// bare string such as a polynomial in the human syntax.
fn load(arg: &str) -> Result<Value, Failure> {
    let t = arg.trim();
    let text = if t == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        s
    } else if t.starts_with(['{', '[', '"']) {
        t.to_string()
    } else if Path::new(t).is_file() {
        std::fs::read_to_string(t).map_err(|e| Failure::Usage(format!("cannot read {t}: {e}")))?
    } else {
        return Ok(Value::String(t.to_string()));
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed JSON in {t:?}: {e}")))
}

fn poly_arg(field: Field, arg: &str) -> Result<Poly, Failure> {
    poly_from_json(field, &load(arg)?).map_err(usage)
}

fn elem_arg(field: Field, arg: Option<&str>) -> Result<FieldElem, Failure> {
    match arg {
        None => Ok(field.parse_elem("1")?),
        Some(a) => elem_from_json(field, &load(a)?).map_err(usage),
    }
}

fn samples_arg(field: Field, arg: &str) -> Result<Vec<FieldElem>, Failure> {
    match load(arg)? {
        Value::Array(xs) => xs.iter().map(|x| elem_from_json(field, x).map_err(usage)).collect(),
        Value::String(s) => s
            .split(',')
            .map(|x| field.parse_elem(x).map_err(usage))
            .collect(),
        other => Err(Failure::Usage(format!("bad samples {other}"))),
    }
}

fn form(field: Field, op: &FormOp) -> Result<Outcome, Failure> {
    let space = |arg: &str| quad_from_json(field, &load(arg)?).map_err(usage);
    Ok(match op {
        FormOp::Diag { space: a } => {
            let s = space(a)?;
            let d = s.diagonalize()?;
            Outcome::new(diag_to_json(&d), json!({ "space": quad_to_json(&s) }), vec!["diagonalize"])
        }
        FormOp::Invariants { space: a } => {
            let s = space(a)?;
            Outcome::new(
                json!({ "invariants": invariants_to_json(&witt_invariants(&s)?) }),
                json!({ "space": quad_to_json(&s) }),
                vec!["witt_invariants"],
            )
        }
        FormOp::WittEqual { a, b } => {
            let (x, y) = (space(a)?, space(b)?);
            let eq = witt_equal(&x, &y)?;
            Outcome::new(
                json!({
                    "witt_equal": eq,
                    "left": invariants_to_json(&witt_invariants(&x)?),
                    "right": invariants_to_json(&witt_invariants(&y)?),
                }),
                json!({ "left": quad_to_json(&x), "right": quad_to_json(&y) }),
                vec!["witt_invariants", "witt_equal"],
            )
            .mismatch_unless(eq)
        }
        FormOp::WittTrivial { space: a } => {
            let s = space(a)?;
            let trivial = is_witt_trivial(&s)?;
            Outcome::new(
                json!({ "witt_trivial": trivial, "invariants": invariants_to_json(&witt_invariants(&s)?) }),
                json!({ "space": quad_to_json(&s) }),
                vec!["witt_invariants", "is_witt_trivial"],
            )
            .mismatch_unless(trivial)
        }
    })
}

fn euler(field: Field, args: &EulerArgs) -> Result<Outcome, Failure> {
    let datum = match &args.datum {
        Some(d) => euler_datum_from_json(field, &load(d)?).map_err(usage)?,
        None => {
            let f = poly_arg(field, args.f.as_deref().expect("required by clap"))?;
            let unit = elem_arg(field, args.unit.as_deref())?;
            EulerDatum::new(f, unit, None)?
        }
    };
    let (f, u) = (&datum.f, &datum.unit);
    let s = bezoutian_form(f, u)?;
    let mut ops = vec!["bezoutian_form", "witt_invariants"];
    let mut payload = json!({ "form": quad_to_json(&s), "invariants": invariants_to_json(&witt_invariants(&s)?) });
    let mut ok = true;
    if datum.target.is_some() {
        payload["correspondence"] = correspondence_to_json(&euler_correspondence(&datum)?);
        ops.push("euler_correspondence");
    }
    if args.trace_oracle {
        let oracle = scaled_trace_form(f, u)?;
        let equal = oracle == s;
        ok &= equal;
        payload["trace_oracle"] = json!({
            "form": quad_to_json(&oracle),
            "monomial_gram": elem_matrix_to_json(&trace_gram(f, u)?),
            "equal": equal,
        });
        ops.push("scaled_trace_form");
    }
    let mut inputs = json!({ "datum": euler_datum_to_json(&datum) });
    if let Some(parts) = &args.split {
        let (f1, f2) = (poly_arg(field, &parts[0])?, poly_arg(field, &parts[1])?);
        let sp = split_by_factors(f, u, &f1, &f2)?;
        let sum = sp.first.orthogonal_sum(&sp.second)?;
        let additive = witt_invariants(&sum)? == witt_invariants(&s)?;
        ok &= additive;
        payload["split"] = json!({
            "idempotent": poly_to_json(&sp.idempotent),
            "first": quad_to_json(&sp.first),
            "second": quad_to_json(&sp.second),
            "first_invariants": invariants_to_json(&witt_invariants(&sp.first)?),
            "second_invariants": invariants_to_json(&witt_invariants(&sp.second)?),
            "basis_change": elem_matrix_to_json(&sp.basis_change),
            "additive": additive,
        });
        inputs["split"] = json!([poly_to_json(&f1), poly_to_json(&f2)]);
        ops.push("split_by_factors");
    }
    Ok(Outcome::new(payload, inputs, ops).mismatch_unless(ok))
}

fn transfer(field: Field, args: &TransferArgs) -> Result<Outcome, Failure> {
    let p = poly_arg(field, &args.min_poly)?;
    let unit = elem_arg(field, args.unit.as_deref())?;
    let ey = FiniteAlgebra::new(p.clone())?;
    let datum = EulerDatum::new(p.clone(), unit, Some((ey, Poly::t(field))))?;
    let eps = euler_correspondence(&datum)?;
    let s = eps.underlying_form()?;
    let plain = match plain_trace_form(&p) {
        Ok(t) => json!({
            "form": quad_to_json(&t),
            "invariants": invariants_to_json(&witt_invariants(&t)?),
            "witt_equal_to_euler": witt_equal(&t, &s)?,
        }),
        Err(Error::Degenerate) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome::new(
        json!({
            "correspondence": correspondence_to_json(&eps),
            "form": quad_to_json(&s),
            "invariants": invariants_to_json(&witt_invariants(&s)?),
            "plain_trace": plain,
        }),
        json!({ "datum": euler_datum_to_json(&datum) }),
        vec!["euler_correspondence", "underlying_form", "plain_trace_form"],
    ))
}

fn compose_cmd(field: Field, left: &str, right: &str) -> Result<Outcome, Failure> {
    let g = correspondence_from_json(field, &load(left)?).map_err(usage)?;
    let f = correspondence_from_json(field, &load(right)?).map_err(usage)?;
    let c = compose(&g, &f)?;
    let mut payload = json!({ "composite": correspondence_to_json(&c) });
    if c.source().is_point() {
        let s = c.underlying_form()?;
        payload["form"] = quad_to_json(&s);
        payload["invariants"] = invariants_to_json(&witt_invariants(&s)?);
    }
    Ok(Outcome::new(
        payload,
        json!({ "left": correspondence_to_json(&g), "right": correspondence_to_json(&f) }),
        vec!["compose", "validate"],
    ))
}

fn lemma(field: Field, op: &LemmaOp) -> Result<Outcome, Failure> {
    Ok(match op {
        LemmaOp::Sqmet { e, n, unit } => {
            let e = poly_arg(field, e)?;
            let u = elem_arg(field, unit.as_deref())?;
            let s = NilpotentSpace::from_bezoutian(e, *n, &u)?;
            let mut chain = true;
            for i in 0..=*n {
                chain &= crate::matrix::same_span(s.space().rank(), &s.ideal_orthogonal(i)?, &s.ideal_basis(n - i)?);
            }
            let mut payload = json!({ "orthogonal_chain": chain, "space": nilpotent_to_json(&s) });
            match sqmet_class(&s)? {
                SqMetClass::Metabolic(lag) => {
                    payload["metabolic"] = json!(true);
                    payload["lagrangian"] = json!(lag
                        .iter()
                        .map(|v| v.iter().map(elem_to_json).collect::<Vec<_>>())
                        .collect::<Vec<_>>());
                }
                reduced @ SqMetClass::Reduced(_) => {
                    payload["metabolic"] = json!(false);
                    if let SqMetClass::Reduced(q) = &reduced {
                        payload["reduced"] = quad_to_json(q);
                    }
                    if let Some(l) = reduced.lambda() {
                        payload["lambda"] = elem_to_json(l);
                        payload["lambda_class"] = json!(square_class_rep(l)?.to_string());
                    }
                }
            }
            Outcome::new(
                payload,
                json!({ "e": poly_to_json(s.e()), "n": n, "unit": elem_to_json(&u) }),
                vec!["ideal_orthogonal", "sqmet_class"],
            )
            .mismatch_unless(chain)
        }
        LemmaOp::SquareUnit { q } => {
            let q = elem_arg(field, Some(q))?;
            let pt = FiniteAlgebra::point(field);
            let w = square_unit_is_identity(&pt, &Poly::constant(q.clone()))?;
            Outcome::new(
                json!({ "square": w.is_some(), "witness": w.as_ref().map(elem_to_json) }),
                json!({ "q": elem_to_json(&q) }),
                vec!["square_unit_is_identity"],
            )
        }
    })
}

fn homotopy(field: Field, args: &HomotopyArgs) -> Result<Outcome, Failure> {
    let (pencil, from_doc) = match &args.pencil {
        Some(p) => pencil_from_json(field, &load(p)?).map_err(usage)?,
        None => {
            let f0 = poly_arg(field, args.f0.as_deref().expect("required by clap"))?;
            let f1 = poly_arg(field, args.f1.as_deref().expect("required by clap"))?;
            (HomotopyPencil::new(f0, f1, elem_arg(field, args.unit.as_deref())?)?, None)
        }
    };
    let samples = match (&args.samples, from_doc) {
        (Some(s), _) => samples_arg(pencil.field(), s)?,
        (None, Some(s)) => s,
        (None, None) => default_samples(pencil.field()),
    };
    let r = pencil_check(&pencil, &samples)?;
    Ok(Outcome::new(
        json!({
            "witt_equal": r.witt_equal,
            "class": invariants_to_json(&r.class),
            "equals_unit_form": r.equals_unit_form,
            "specializations": r
                .specializations
                .iter()
                .map(|(l, inv)| json!({ "lambda": elem_to_json(l), "invariants": invariants_to_json(inv) }))
                .collect::<Vec<_>>(),
        }),
        json!({ "pencil": pencil_to_json(&pencil, &samples) }),
        vec!["bezoutian_form", "pencil_check"],
    )
    .mismatch_unless(r.witt_equal))
}

fn selfcheck_cmd(args: &SelfcheckArgs) -> Result<Outcome, Failure> {
    let seed = match args.seed {
        Some(s) => s,
        None => match std::env::var("WITTC_SEED") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("WITTC_SEED must be an unsigned integer, got {s:?}")))?,
            Err(_) => selfcheck::DEFAULT_SEED,
        },
    };
    let report = selfcheck::run(seed, args.iters, args.inject_fault);
    eprint!("{}", report.table());
    let mut out = Outcome::new(
        serde_json::to_value(&report).expect("plain data"),
        json!({ "seed": seed, "iters": args.iters, "inject_fault": args.inject_fault }),
        selfcheck::suite_names(),
    );
    if !report.passed {
        out.status = Status::Violation;
    }
    Ok(out)
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Form { op } => match op {
            FormOp::Diag { .. } => "form diag",
            FormOp::Invariants { .. } => "form invariants",
            FormOp::WittEqual { .. } => "form witt-equal",
            FormOp::WittTrivial { .. } => "form witt-trivial",
        },
        Command::Euler(_) => "euler",
        Command::Transfer(_) => "transfer",
        Command::Compose { .. } => "compose",
        Command::Lemma { op } => match op {
            LemmaOp::Sqmet { .. } => "lemma sqmet",
            LemmaOp::SquareUnit { .. } => "lemma square-unit",
        },
        Command::Homotopy(_) => "homotopy",
        Command::Selfcheck(_) => "selfcheck",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Form { op } => form(field, op),
        Command::Euler(a) => euler(field, a),
        Command::Transfer(a) => transfer(field, a),
        Command::Compose { left, right } => compose_cmd(field, left, right),
        Command::Lemma { op } => lemma(field, op),
        Command::Homotopy(a) => homotopy(field, a),
        Command::Selfcheck(a) => selfcheck_cmd(a),
    }
}

/// A finished invocation: the stdout document and the exit code.
pub struct Response {
    pub document: String,
    pub exit_code: i32,
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Response {
    let command = verb(&cli.command);
    let provenance = |inputs: Value, operations: Vec<&'static str>| {
        json!({ "command": command, "field": cli.field, "inputs": inputs, "operations": operations })
    };
    let (doc, code) = match dispatch(cli) {
        Ok(o) => {
            let (status, code) = match o.status {
                Status::Ok => ("ok", 0),
                Status::Mismatch => ("mismatch", 1),
                Status::Violation => ("mismatch", 3),
            };
            (
                json!({ "status": status, "payload": o.payload, "provenance": provenance(o.inputs, o.operations) }),
                code,
            )
        }
        Err(f) => {
            let (kind, message, code) = match f {
                Failure::Usage(m) => ("usage", m, 2),
                Failure::Math(Error::Characteristic2) => ("usage", Error::Characteristic2.to_string(), 2),
                Failure::Math(e) => ("math", e.to_string(), 1),
            };
            eprintln!("wittc: {message}");
            (
                json!({
                    "status": "error",
                    "payload": { "kind": kind, "message": message },
                    "provenance": provenance(Value::Null, vec![]),
                }),
                code,
            )
        }
    };
    Response {
        document: serde_json::to_string_pretty(&doc).expect("plain data") + "\n",
        exit_code: code,
    }
}

/// Entry point for the binary: parses `argv`, prints the report, returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let r = execute(&cli);
    print!("{}", r.document);
    r.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (Value, i32) {
        let cli = Cli::try_parse_from(std::iter::once("wittc").chain(args.iter().copied())).unwrap();
        let r = execute(&cli);
        (serde_json::from_str(&r.document).unwrap(), r.exit_code)
    }

    #[test]
    fn euler_cubic() {
        let (v, code) = run(&["euler", "--f", r#"{"coeffs":["0","-1","0","1"]}"#]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["form"]["gram"], json!([["-1", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]]));
        assert_eq!(v["payload"]["invariants"]["rank"], json!(3));
        assert_eq!(v["payload"]["invariants"]["signature"], json!(1));
        assert_eq!(v["payload"]["invariants"]["disc"], json!("-1"));
        let (human, _) = run(&["euler", "--f", "t^3-t"]);
        assert_eq!(human["payload"], v["payload"]);
    }

    #[test]
    fn char_two_is_usage() {
        let (v, code) = run(&["euler", "--field", r#"{"Fp":2}"#, "--f", "t^2+1"]);
        assert_eq!(code, 2);
        assert_eq!(v["status"], json!("error"));
        assert!(v["payload"]["message"].as_str().unwrap().contains("char k != 2"));
    }

    #[test]
    fn mismatch_exit() {
        let (v, code) = run(&["form", "witt-equal", "[[1]]", "[[-1]]"]);
        assert_eq!((v["status"].clone(), code), (json!("mismatch"), 1));
        let (_, code) = run(&["form", "witt-equal", "[[2,0],[0,2]]", "[[1,0],[0,1]]"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn math_error_exit() {
        let (v, code) = run(&["euler", "--f", "t^2", "--trace-oracle"]);
        assert_eq!(code, 1);
        assert_eq!(v["payload"]["kind"], json!("math"));
    }

    #[test]
    fn lemma_and_homotopy() {
        let (v, code) = run(&["lemma", "sqmet", "--e", "t", "--n", "4"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["metabolic"], json!(true));
        let (v, _) = run(&["lemma", "sqmet", "--e", "t", "--n", "7", "--field", "5"]);
        assert_eq!(v["payload"]["lambda_class"], json!("1"));
        let (v, code) = run(&["homotopy", "--f0", "t^3-t", "--f1", "t^3"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["witt_equal"], json!(true));
        assert_eq!(v["payload"]["equals_unit_form"], json!(true));
    }

    #[test]
    fn seeds() {
        let (v, code) = run(&["selfcheck", "--seed", "3", "--iters", "1"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["seed"], json!(3));
        let (_, code) = run(&["selfcheck", "--iters", "1", "--inject-fault"]);
        assert_eq!(code, 3);
    }
}
