//! `clarke-mirror`: polytopes, nef partitions, Clarke pairs, orbifold and LG
//! Hodge numbers, mirror ledgers and the verification suites.
//!
//! Exit codes: 0 success, 1 malformed input, 2 mathematical failure.

use clap::{Parser, Subcommand, ValueEnum};
use clarke_mirror::fan::StackyFan;
use clarke_mirror::hodge::{
    koszul_oracle, lg_diamond, newton_spectrum, stratum_diamond, HodgeDiamond, OracleOptions,
    SpectrumRequest,
};
use clarke_mirror::io::{
    fixtures_dir, load_polygons, read_json, to_json, FanDoc, FanPairDoc, NefDoc, PolytopeDoc,
};
use clarke_mirror::mirrorledger::{
    hdual_attempts, verify_binomial_identities, HdualAttempt, DEFAULT_HDUAL_BOUND,
};
use clarke_mirror::nefclarke::{
    build_lg_model, dual_nef_partition, validate_clarke, ClarkeCheck, ClarkeViolation,
};
use clarke_mirror::orbifold::{
    box_elements, orbifold_diamond, twisted_stratum_diamonds, SectorKey,
};
use clarke_mirror::polytope::{is_reflexive, polar_dual, Polytope};
use clarke_mirror::verify::{
    p1_cdual_example, verify_hlly_curves, verify_toric_mirror, verify_transitions,
};
use clarke_mirror::{Error, Result};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "clarke-mirror",
    version,
    about = "Exact toolkit for Clarke mirror pairs"
)]
struct Cli {
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
    /// Seed for the randomized Koszul oracle.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Highest Newton level used by the Koszul oracle.
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Memory budget of the Koszul oracle in MB.
    #[arg(long = "memory-budget", global = true, default_value_t = 256)]
    memory_budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polar dual of a polytope containing 0 in its interior.
    Polar { input: PathBuf },
    /// Whether a polytope is reflexive (exit 2 when it is not).
    Reflexive { input: PathBuf },
    /// Lattice points, split into interior and boundary.
    LatticePoints { input: PathBuf },
    /// Dual nef partition Δ̌_1, …, Δ̌_k with the Minkowski sum check.
    NefDual { input: PathBuf },
    /// Check that two stacky fans form a Clarke pair. With one file, it must
    /// hold both fans as {"sigma": …, "sigma_check": …}.
    ClarkeCheck {
        sigma: PathBuf,
        sigma_check: Option<PathBuf>,
    },
    /// Box elements of a stacky fan with their ages.
    Box { input: PathBuf },
    /// Age-shifted sum over twisted sectors of a stacky fan.
    OrbifoldHodge {
        input: PathBuf,
        /// Diamond of the untwisted sector; defaults to the toric variety.
        #[arg(long)]
        untwisted: Option<PathBuf>,
    },
    /// Irregular Hodge numbers of the LG model (𝕍_J, g) of a nef partition.
    LgHodge {
        input: PathBuf,
        /// Parts in J, 0-based and comma separated.
        #[arg(long, value_delimiter = ',')]
        j: Vec<usize>,
    },
    /// Spectrum at infinity of a nondegenerate Laurent polynomial.
    Spectrum {
        /// JSON file {"support": [[…], …]}.
        input: Option<PathBuf>,
        /// Inline support, points separated by ';' and coordinates by ','.
        #[arg(long)]
        points: Option<String>,
        /// Also run the Koszul oracle and compare histograms.
        #[arg(long)]
        oracle: bool,
    },
    /// Mirror-ledger derivations.
    Mirror {
        #[command(subcommand)]
        command: MirrorCommand,
    },
    /// Verification suites over the bundled fixtures.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum MirrorCommand {
    /// Certificates for B_{a,b,0} + B_{b,a,0} with a + b ≤ k.
    Derive {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// Curve duality across extremal transitions Δ_II ⊆ Δ̌_I.
    Transition {
        #[arg(long)]
        limit: Option<usize>,
    },
    /// The toric mirror ledger on the segment.
    Toricmirror,
    /// Elliptic curve duality for reflexive polygons.
    Hlly {
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// "all16" or a comma separated list of fixture names.
        #[arg(long, default_value = "all16")]
        polygons: String,
        /// Add the double cover of the segment.
        #[arg(long)]
        segment: bool,
    },
    /// Clarke duality of orbifold diamonds for a worked example.
    Cdual {
        #[arg(long, default_value = "p1")]
        example: String,
    },
    /// Binomial identities and hdual certificates up to k.
    Ledger {
        #[arg(long)]
        k: usize,
    },
}

struct Outcome {
    json: Value,
    table: String,
    ok: bool,
}

impl Outcome {
    fn new(json: Value, table: String, ok: bool) -> Outcome {
        Outcome { json, table, ok }
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn load_polytope(path: &Path) -> Result<Polytope> {
    read_json::<PolytopeDoc>(path)?.to_polytope()
}

fn load_stacky(path: &Path) -> Result<StackyFan> {
    read_json::<FanDoc>(path)?.to_stacky()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn point_string<T: std::fmt::Display>(v: &[T]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

fn polytope_table(p: &Polytope) -> String {
    let mut s = format!(
        "lattice {} rank {} vertices {}\n",
        p.tag(),
        p.rank(),
        p.vertices().len()
    );
    for v in p.vertices() {
        let _ = writeln!(s, "  {}", point_string(v));
    }
    s
}

fn diamond_value(d: &HodgeDiamond) -> Value {
    to_value(&d.to_doc())
}

fn cmd_polar(input: &Path) -> Result<Outcome> {
    let p = load_polytope(input)?;
    let d = polar_dual(&p)?;
    let doc = PolytopeDoc::from_polytope(&d);
    Ok(Outcome::new(to_value(&doc), polytope_table(&d), true))
}

fn cmd_reflexive(input: &Path) -> Result<Outcome> {
    let p = load_polytope(input)?;
    let r = is_reflexive(&p)?;
    Ok(Outcome::new(json!({ "reflexive": r }), format!("{r}\n"), r))
}

fn cmd_lattice_points(input: &Path) -> Result<Outcome> {
    let p = load_polytope(input)?;
    let fmt = |pts: Vec<Vec<clarke_mirror::lattice::Int>>| -> Vec<Vec<String>> {
        pts.iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect()
    };
    let all = p.lattice_points();
    let interior = p.interior_lattice_points();
    let boundary = p.boundary_lattice_points();
    let mut t = format!(
        "{} lattice points: {} interior, {} boundary\n",
        all.len(),
        interior.len(),
        boundary.len()
    );
    for v in &all {
        let kind = if interior.contains(v) {
            "interior"
        } else {
            "boundary"
        };
        let _ = writeln!(t, "  {} {kind}", point_string(v));
    }
    let json = json!({
        "count": all.len(),
        "interior": fmt(interior),
        "boundary": fmt(boundary),
    });
    Ok(Outcome::new(json, t, true))
}

fn cmd_nef_dual(input: &Path) -> Result<Outcome> {
    let np = read_json::<NefDoc>(input)?.to_nef()?;
    let dual = dual_nef_partition(&np)?;
    let mut t = String::new();
    for (i, p) in dual.parts.iter().enumerate() {
        let _ = write!(t, "dual part {}: {}", i + 1, polytope_table(p));
    }
    let _ = write!(t, "dual polytope: {}", polytope_table(&dual.dual));
    t.push_str("Minkowski check: sum of dual parts equals the polar of Δ: PASS\n");
    let json = json!({
        "parts": dual.parts.iter().map(|p| to_value(&PolytopeDoc::from_polytope(p))).collect::<Vec<_>>(),
        "dual": to_value(&PolytopeDoc::from_polytope(&dual.dual)),
        "minkowski_check": true,
    });
    Ok(Outcome::new(json, t, true))
}

fn cmd_clarke_check(sigma: &Path, sigma_check: Option<&Path>) -> Result<Outcome> {
    let (a, b) = match sigma_check {
        Some(c) => {
            let pair = FanPairDoc {
                sigma: read_json(sigma)?,
                sigma_check: read_json(c)?,
            };
            pair.to_stacky_pair()?
        }
        None => read_json::<FanPairDoc>(sigma)?.to_stacky_pair()?,
    };
    match validate_clarke(&a, &b)? {
        ClarkeCheck::Valid(pair) => {
            let t = format!("Clarke pair: PASS (minimal pairing {})\n", pair.min_pairing);
            let json = json!({ "pass": true, "min_pairing": pair.min_pairing.to_string() });
            Ok(Outcome::new(json, t, true))
        }
        ClarkeCheck::Invalid(v) => {
            let (reason, json) = match v {
                ClarkeViolation::Pairing {
                    ray,
                    dual_ray,
                    value,
                } => (
                    format!("pairing: ray {ray} with dual ray {dual_ray} gives {value}"),
                    json!({ "pass": false, "violation": "pairing", "ray": ray,
                            "dual_ray": dual_ray, "value": value.to_string() }),
                ),
                ClarkeViolation::Property {
                    dual_side,
                    property,
                    detail,
                } => {
                    let side = if dual_side { "sigma_check" } else { "sigma" };
                    (
                        format!("{property} fails on {side}: {detail}"),
                        json!({ "pass": false, "violation": property, "side": side,
                                "detail": detail }),
                    )
                }
            };
            Ok(Outcome::new(
                json,
                format!("Clarke pair: FAIL: {reason}\n"),
                false,
            ))
        }
    }
}

fn cmd_box(input: &Path) -> Result<Outcome> {
    let f = load_stacky(input)?;
    let boxes = box_elements(&f);
    let mut t = format!("{} box elements\n", boxes.len());
    let mut rows = Vec::new();
    for b in &boxes {
        let coeffs: Vec<String> = b.coefficients.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            t,
            "  cone {:?} point {} age {} coefficients [{}]",
            b.cone,
            point_string(&b.point),
            b.age,
            coeffs.join(", ")
        );
        rows.push(json!({
            "cone": b.cone,
            "point": b.point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "age": b.age.to_string(),
            "coefficients": coeffs,
        }));
    }
    Ok(Outcome::new(json!({ "box_elements": rows }), t, true))
}

fn cmd_orbifold_hodge(input: &Path, untwisted: Option<&Path>) -> Result<Outcome> {
    let f = load_stacky(input)?;
    let mut sectors = twisted_stratum_diamonds(&f)?;
    let base = match untwisted {
        Some(p) => HodgeDiamond::from_doc(&read_json(p)?)?,
        None => stratum_diamond(f.fan(), &[])?,
    };
    sectors.insert(SectorKey::Untwisted, base);
    let d = orbifold_diamond(&f, &sectors)?;
    Ok(Outcome::new(diamond_value(&d), d.to_table(), true))
}

fn cmd_lg_hodge(input: &Path, j: &[usize]) -> Result<Outcome> {
    let np = read_json::<NefDoc>(input)?.to_nef()?;
    let model = build_lg_model(&np, j)?;
    let d = lg_diamond(&model)?;
    let t = format!("J = {:?}\n{}", model.j, d.to_table());
    Ok(Outcome::new(
        json!({ "j": model.j, "diamond": diamond_value(&d) }),
        t,
        true,
    ))
}

fn parse_points(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|p| {
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate {x:?}")))
                })
                .collect()
        })
        .collect()
}

#[derive(serde::Deserialize)]
struct SupportDoc {
    support: Vec<Vec<i64>>,
}

fn levels_value(levels: &std::collections::BTreeMap<clarke_mirror::lattice::Rat, u64>) -> Value {
    Value::Array(
        levels
            .iter()
            .map(|(l, c)| json!({ "lambda": l.to_string(), "multiplicity": c }))
            .collect(),
    )
}

fn cmd_spectrum(
    cli: &Cli,
    input: Option<&Path>,
    points: Option<&str>,
    oracle: bool,
) -> Result<Outcome> {
    let support = match (input, points) {
        (Some(p), None) => read_json::<SupportDoc>(p)?.support,
        (None, Some(s)) => parse_points(s)?,
        _ => {
            return Err(Error::Invalid(
                "give exactly one of an input file and --points".into(),
            ))
        }
    };
    let spec = newton_spectrum(&SpectrumRequest::from_support(&support)?)?;
    let mut t = format!("{:>8} {:>6}\n", "lambda", "mult");
    for (l, c) in &spec.levels {
        let _ = writeln!(t, "{:>8} {:>6}", l.to_string(), c);
    }
    let _ = writeln!(t, "total {}", spec.total);
    let mut json = json!({ "levels": levels_value(&spec.levels), "total": spec.total });
    let mut ok = true;
    if oracle {
        let opts = OracleOptions {
            seed: cli.seed,
            truncation: cli.truncation,
            memory_budget_mb: cli.memory_budget,
        };
        let r = koszul_oracle(&support, &opts)?;
        ok = r.levels == spec.levels && r.total == spec.total;
        let _ = writeln!(
            t,
            "oracle (seed {}, truncation {}): total {} histogram {}",
            r.seed,
            r.truncation,
            r.total,
            if ok { "agrees" } else { "DIFFERS" }
        );
        json["oracle"] = json!({
            "seed": r.seed,
            "truncation": r.truncation,
            "levels": levels_value(&r.levels),
            "total": r.total,
            "agrees": ok,
        });
    }
    Ok(Outcome::new(json, t, ok))
}

fn attempts_table(attempts: &[HdualAttempt]) -> String {
    let mut t = String::new();
    for a in attempts {
        match &a.certificate {
            Some(c) => {
                let _ = writeln!(
                    t,
                    "{:<28} PASS  {} generator terms, multiplier {}, route {}",
                    a.name,
                    c.terms.len(),
                    c.multiplier,
                    c.route
                );
            }
            None => {
                let _ = writeln!(
                    t,
                    "{:<28} FAIL  {}",
                    a.name,
                    a.error.as_deref().unwrap_or("no certificate")
                );
            }
        }
    }
    t
}

fn cmd_mirror_derive(k: usize) -> Result<Outcome> {
    let attempts = hdual_attempts(k, k.max(DEFAULT_HDUAL_BOUND))?;
    let ok = attempts.iter().all(|a| a.certificate.is_some());
    let t = attempts_table(&attempts);
    Ok(Outcome::new(
        json!({ "k": k, "attempts": to_value(&attempts), "pass": ok }),
        t,
        ok,
    ))
}

fn named_polygons(dir: &Path, spec: &str) -> Result<Vec<Polytope>> {
    let all = load_polygons(dir)?;
    if spec == "all16" {
        return Ok(all);
    }
    spec.split(',')
        .map(|name| {
            all.iter()
                .find(|p| p.name() == Some(name.trim()))
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("no fixture polygon named {name}")))
        })
        .collect()
}

fn hodge_string(h: &[[u64; 2]; 2]) -> String {
    format!(
        "h00={} h10={} h01={} h11={}",
        h[0][0], h[1][0], h[0][1], h[1][1]
    )
}

fn cmd_verify(suite: &Suite) -> Result<Outcome> {
    let dir = fixtures_dir();
    match suite {
        Suite::Transition { limit } => {
            let polys = load_polygons(&dir)?;
            let r = verify_transitions(&polys, *limit)?;
            let mut t = String::new();
            for c in &r.cases {
                let _ = writeln!(
                    t,
                    "{} outer {} inner {:?}: X'_II {} | X'_I {}  {}",
                    c.id,
                    c.outer,
                    c.inner,
                    hodge_string(&c.x_ii.hodge),
                    hodge_string(&c.x_i.hodge),
                    status(c.pass)
                );
            }
            let _ = writeln!(t, "{} passed, {} failed", r.passed, r.failed);
            Ok(Outcome::new(to_value(&r), t, r.failed == 0))
        }
        Suite::Toricmirror => {
            let cases = verify_toric_mirror()?;
            let ok = cases.iter().all(|c| c.report.pass);
            let mut t = String::new();
            for c in &cases {
                let _ = writeln!(
                    t,
                    "{}: {} ({} rows)  {}",
                    c.id,
                    c.ledger,
                    c.report.rows.len(),
                    status(c.report.pass)
                );
            }
            Ok(Outcome::new(to_value(&cases), t, ok))
        }
        Suite::Hlly {
            dim,
            polygons,
            segment,
        } => {
            if *dim != 1 {
                return Err(Error::Unsupported(format!(
                    "HLLY checks are available in dimension 1 only, not {dim}"
                )));
            }
            let polys = named_polygons(&dir, polygons)?;
            let r = verify_hlly_curves(&polys, *segment)?;
            let mut t = String::new();
            for c in &r.cases {
                let _ = writeln!(
                    t,
                    "{:<8} {} | mirror {}  [{}]  {}",
                    c.id,
                    hodge_string(&c.left),
                    hodge_string(&c.right),
                    c.detail,
                    status(c.pass)
                );
            }
            let passed = r.cases.iter().filter(|c| c.pass).count();
            let _ = writeln!(t, "{passed} of {} cases pass", r.cases.len());
            Ok(Outcome::new(to_value(&r), t, r.pass))
        }
        Suite::Cdual { example } => {
            if example != "p1" {
                return Err(Error::Invalid(format!("unknown example {example:?}")));
            }
            let ex = p1_cdual_example()?;
            let t = format!(
                "box element ages: {}\n{}",
                ex.box_ages.join(", "),
                ex.report.to_table()
            );
            Ok(Outcome::new(to_value(&ex), t, ex.report.pass))
        }
        Suite::Ledger { k } => {
            if *k < 2 {
                return Err(Error::Invalid("ledger suite needs k ≥ 2".into()));
            }
            let mut t = String::new();
            let mut binomial = Vec::new();
            for kk in 2..=*k {
                let r = verify_binomial_identities(kk)?;
                let _ = writeln!(
                    t,
                    "binomial identity k={kk}: {} labeled terms  {}",
                    r.labeled_terms,
                    status(r.pass)
                );
                binomial.push(r);
            }
            let attempts = hdual_attempts(*k, (*k).max(DEFAULT_HDUAL_BOUND))?;
            t.push_str(&attempts_table(&attempts));
            let ok =
                binomial.iter().all(|r| r.pass) && attempts.iter().all(|a| a.certificate.is_some());
            let json = json!({
                "binomial": to_value(&binomial),
                "hdual": to_value(&attempts),
                "pass": ok,
            });
            Ok(Outcome::new(json, t, ok))
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Polar { input } => cmd_polar(input),
        Command::Reflexive { input } => cmd_reflexive(input),
        Command::LatticePoints { input } => cmd_lattice_points(input),
        Command::NefDual { input } => cmd_nef_dual(input),
        Command::ClarkeCheck { sigma, sigma_check } => {
            cmd_clarke_check(sigma, sigma_check.as_deref())
        }
        Command::Box { input } => cmd_box(input),
        Command::OrbifoldHodge { input, untwisted } => {
            cmd_orbifold_hodge(input, untwisted.as_deref())
        }
        Command::LgHodge { input, j } => cmd_lg_hodge(input, j),
        Command::Spectrum {
            input,
            points,
            oracle,
        } => cmd_spectrum(cli, input.as_deref(), points.as_deref(), *oracle),
        Command::Mirror {
            command: MirrorCommand::Derive { k },
        } => cmd_mirror_derive(*k),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
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
        Ok(out) => {
            let text = to_json(&out.json);
            if let Some(path) = &cli.emit {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            match cli.format {
                Format::Json => print!("{text}"),
                Format::Table => print!("{}", out.table),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
