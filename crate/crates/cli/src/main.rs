use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hpgforge::acceptance;
use hpgforge::arith::{elements_of_norm, parse_rat, BigRat, Ring, RingElement};
use hpgforge::batch::{self, Execution};
use hpgforge::json::{document, generation_document};
use hpgforge::numeric::series::{verify_identity, verify_identity_auto, IdentityCheck};
use hpgforge::ramification::analyze;
use hpgforge::triple::{cross_composition, generate, quadratic_cross, to_transformation, CrossKind, Family, Transformation};

#[derive(Parser)]
#[command(name = "hpgforge", version, about = "Algebraic transformations of elliptic 2F1 equations")]
struct Cli {
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Families {
    E1,
    E2,
    E3,
    All,
}

impl Families {
    fn list(self) -> Vec<Family> {
        match self {
            Families::E1 => vec![Family::E1],
            Families::E2 => vec![Family::E2],
            Families::E3 => vec![Family::E3],
            Families::All => vec![Family::E1, Family::E2, Family::E3],
        }
    }
}

#[derive(Args)]
struct Indexed {
    #[arg(long)]
    family: Family,
    /// "a+bi" for e1, "a+bw" for e2 and e3.
    #[arg(long, allow_hyphen_values = true)]
    element: String,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the triple and transformation for one lattice element.
    Gen {
        #[command(flatten)]
        index: Indexed,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact closure checks for every canonical index up to a norm.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        family: Families,
        #[arg(long, default_value_t = 50)]
        max_norm: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare triple maps with the isogeny oracle.
    OracleCheck {
        #[arg(long, value_enum, default_value = "all")]
        family: Families,
        #[arg(long, default_value_t = 25)]
        max_norm: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check 2F1 identities numerically.
    NumericCheck {
        #[arg(long)]
        family: Option<Families>,
        /// One element; without it every index up to --max-norm is checked.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        /// Quadratic map into the e2 equation, composed after the element's e2 map if given.
        #[arg(long)]
        cross: Option<CrossKind>,
        #[arg(long, default_value_t = 13)]
        max_norm: u64,
        #[arg(long, default_value_t = 30)]
        prec: u32,
        /// "auto" or a comma list of rationals such as "1/100,0.002".
        #[arg(long, default_value = "auto")]
        points: String,
        #[arg(long, default_value_t = 1e-20)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the canonical elements of a given norm.
    Norms {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        ring: Ring,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Ramification pattern of a transformation and its table row.
    Ramify {
        #[arg(long, required_unless_present = "cross")]
        family: Option<Family>,
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long)]
        cross: Option<CrossKind>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Comma list of criterion numbers, default all.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<hpgforge::Error> for Failure {
    fn from(e: hpgforge::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_element(s: &str, ring: Ring) -> Result<RingElement, Failure> {
    let u = RingElement::parse(s, Some(ring)).map_err(|e| usage(e.to_string()))?;
    if u.is_zero() {
        return Err(usage("the element must be nonzero"));
    }
    Ok(u)
}

fn parse_points(s: &str) -> Result<Option<Vec<BigRat>>, Failure> {
    if s.trim() == "auto" {
        return Ok(None);
    }
    let pts = s.split(',').map(|p| parse_rat(p.trim()).map_err(|e| usage(e.to_string()))).collect::<Result<Vec<_>, _>>()?;
    if pts.is_empty() {
        return Err(usage("no points given"));
    }
    Ok(Some(pts))
}

fn no_latex(format: Format) -> Result<(), Failure> {
    if format == Format::Latex {
        return Err(usage("latex output is only available for gen"));
    }
    Ok(())
}

fn print_json(kind: &str, body: Value) {
    println!("{}", serde_json::to_string_pretty(&document(kind, body)).expect("json values serialize"));
}

fn gen(index: &Indexed, format: Format) -> Outcome {
    let u = parse_element(&index.element, index.family.ring())?;
    let t = generate(index.family, &u)?;
    let tr = to_transformation(&t)?;
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&generation_document(&t, &tr)).expect("json values serialize"))
        }
        Format::Latex => {
            println!("\\begin{{align*}}");
            println!("P &= {} \\\\", t.p.to_latex());
            println!("Q &= {} \\\\", t.q.to_latex());
            println!("R &= {}", t.r.to_latex());
            println!("\\end{{align*}}");
            println!("\\[ {} \\]", tr.to_latex());
        }
        Format::Text => {
            println!("{t}");
            println!("degree {}: {tr}", tr.degree());
        }
    }
    Ok(true)
}

fn verify(exec: Execution, families: Families, max_norm: u64, format: Format) -> Outcome {
    no_latex(format)?;
    let recs = batch::closure_sweep(exec, &families.list(), max_norm);
    let ok = recs.iter().all(|r| r.ok());
    let passed = recs.iter().filter(|r| r.ok()).count();
    if format == Format::Json {
        print_json("verify", json!({ "max_norm": max_norm, "passed": passed, "total": recs.len(), "records": recs }));
    } else {
        for r in &recs {
            let verdict = if r.ok() { "ok" } else { "FAIL" };
            let note = r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
            println!("{} {} norm {} class {} degree {} {verdict}{note}", r.family, r.u, r.norm, r.class, r.map_degree);
        }
        println!("{passed}/{} triples verified", recs.len());
    }
    Ok(ok)
}

fn oracle_check(exec: Execution, families: Families, max_norm: u64, format: Format) -> Outcome {
    no_latex(format)?;
    let recs = batch::oracle_sweep(exec, &families.list(), max_norm);
    let agree = recs.iter().filter(|r| r.agrees).count();
    if format == Format::Json {
        print_json("oracle-check", json!({ "max_norm": max_norm, "agree": agree, "total": recs.len(), "records": recs }));
    } else {
        for r in &recs {
            let verdict = if r.agrees { "agrees" } else { "DIFFERS" };
            let note = r.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
            println!("{} {} {verdict}{note}", r.family, r.u);
        }
        println!("{agree}/{} maps agree with the oracle", recs.len());
    }
    Ok(agree == recs.len())
}

struct NumericArgs {
    family: Option<Families>,
    element: Option<String>,
    cross: Option<CrossKind>,
    max_norm: u64,
    prec: u32,
    points: String,
    tol: f64,
    format: Format,
}

fn numeric_targets(exec: Execution, a: &NumericArgs) -> Result<Vec<(String, Transformation)>, Failure> {
    Ok(match (&a.element, a.cross) {
        (None, Some(kind)) => vec![(format!("{kind:?}"), quadratic_cross(kind))],
        (Some(s), Some(kind)) => {
            if a.family.is_some_and(|f| !matches!(f, Families::E2)) {
                return Err(usage("--cross composes with an e2 element"));
            }
            let u = parse_element(s, Ring::Eisenstein)?;
            vec![(format!("{kind:?} then e2 {u}"), cross_composition(kind, &u)?)]
        }
        (Some(s), None) => {
            let f = match a.family {
                Some(Families::E1) => Family::E1,
                Some(Families::E2) => Family::E2,
                Some(Families::E3) => Family::E3,
                _ => return Err(usage("--element needs a single --family")),
            };
            let u = parse_element(s, f.ring())?;
            vec![(format!("{f} {u}"), to_transformation(&generate(f, &u)?)?)]
        }
        (None, None) => batch::transformations(exec, &a.family.unwrap_or(Families::All).list(), a.max_norm)?,
    })
}

fn numeric_check(exec: Execution, a: NumericArgs) -> Outcome {
    no_latex(a.format)?;
    if a.prec == 0 || a.prec > 2000 {
        return Err(usage("--prec must be between 1 and 2000"));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let points = parse_points(&a.points)?;
    let maps = numeric_targets(exec, &a)?;
    let checks: Vec<(String, usize, Result<IdentityCheck, String>)> = batch::map_ordered(exec, &maps, |(label, t)| {
        let r = match &points {
            Some(p) => verify_identity(t, p, a.prec),
            None => verify_identity_auto(t, a.prec),
        };
        (label.clone(), t.degree(), r.map_err(|e| e.to_string()))
    });
    let pass = |r: &Result<IdentityCheck, String>| r.as_ref().is_ok_and(|c| c.passes(a.tol));
    let passed = checks.iter().filter(|(_, _, r)| pass(r)).count();
    let worst = checks.iter().filter_map(|(_, _, r)| r.as_ref().ok()).map(|c| c.max_rel_err).fold(0.0, f64::max);
    if a.format == Format::Json {
        let records: Vec<Value> = checks
            .iter()
            .map(|(label, degree, r)| match r {
                Ok(c) => json!({ "label": label, "degree": degree, "check": c, "pass": c.passes(a.tol) }),
                Err(e) => json!({ "label": label, "degree": degree, "error": e, "pass": false }),
            })
            .collect();
        print_json(
            "numeric-check",
            json!({ "prec": a.prec, "tol": a.tol, "max_rel_err": worst, "passed": passed, "total": checks.len(), "records": records }),
        );
    } else {
        for (label, degree, r) in &checks {
            match r {
                Ok(c) => {
                    let verdict = if c.passes(a.tol) { "pass" } else { "FAIL" };
                    println!("{label} degree {degree}: max error 1e{:.1} {verdict}", c.log10_err);
                }
                Err(e) => println!("{label} degree {degree}: FAIL ({e})"),
            }
        }
        println!("{passed}/{} identities within {:e} at {} digits, max error {worst:.3e}", checks.len(), a.tol, a.prec);
    }
    Ok(passed == checks.len())
}

fn norms(degree: u64, ring: Ring, format: Format) -> Outcome {
    no_latex(format)?;
    let els = elements_of_norm(degree, ring);
    let note = els.is_empty().then(|| format!("no transformation of degree {degree}"));
    if format == Format::Json {
        let list: Vec<String> = els.iter().map(ToString::to_string).collect();
        print_json("norms", json!({ "degree": degree, "ring": ring.name(), "elements": list, "note": note }));
    } else {
        for e in &els {
            println!("{e}");
        }
        if let Some(n) = note {
            println!("{n}");
        }
    }
    Ok(true)
}

fn ramify(family: Option<Family>, element: Option<&str>, cross: Option<CrossKind>, format: Format) -> Outcome {
    no_latex(format)?;
    let (label, t) = match (cross, family, element) {
        (Some(kind), None, None) => (format!("{kind:?}"), quadratic_cross(kind)),
        (Some(kind), f, Some(s)) if f.is_none_or(|f| f == Family::E2) => {
            let u = parse_element(s, Ring::Eisenstein)?;
            (format!("{kind:?} then e2 {u}"), cross_composition(kind, &u)?)
        }
        (Some(_), Some(_), _) => return Err(usage("--cross composes with an e2 element")),
        (None, Some(f), Some(s)) => {
            let u = parse_element(s, f.ring())?;
            (format!("{f} {u}"), to_transformation(&generate(f, &u)?)?)
        }
        _ => return Err(usage("ramify needs --family with --element, or --cross")),
    };
    let r = analyze(&t)?;
    if format == Format::Json {
        print_json("ramify", json!({ "label": label, "degree": t.degree(), "report": r }));
    } else {
        println!("{label} degree {}: {}", t.degree(), r.notation);
        println!("hurwitz {}", if r.hurwitz { "ok" } else { "FAILS" });
        println!("table row {}", r.row.unwrap_or("none"));
    }
    Ok(r.hurwitz && r.row.is_some())
}

fn selftest(exec: Execution, only: &[u8], format: Format) -> Outcome {
    no_latex(format)?;
    if let Some(bad) = only.iter().find(|k| !(1..=10).contains(*k)) {
        return Err(usage(format!("criterion {bad} does not exist; they run from 1 to 10")));
    }
    let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.to_vec() };
    let outcomes: Vec<_> = ids.iter().map(|&k| acceptance::run(k, exec)).collect();
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if format == Format::Json {
        print_json("selftest", json!({ "outcomes": outcomes, "failed": failed }));
    } else {
        for o in &outcomes {
            println!("{o}");
        }
        println!("{} passed, {} failed {failed:?}", outcomes.len() - failed.len(), failed.len());
    }
    Ok(failed.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let result = match cli.command {
        Command::Gen { index, format } => gen(&index, format),
        Command::Verify { family, max_norm, format } => verify(exec, family, max_norm, format),
        Command::OracleCheck { family, max_norm, format } => oracle_check(exec, family, max_norm, format),
        Command::NumericCheck { family, element, cross, max_norm, prec, points, tol, format } => numeric_check(
            exec,
            NumericArgs { family, element, cross, max_norm, prec, points, tol, format },
        ),
        Command::Norms { degree, ring, format } => norms(degree, ring, format),
        Command::Ramify { family, element, cross, format } => ramify(family, element.as_deref(), cross, format),
        Command::Selftest { only, format } => selftest(exec, &only, format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
