use clap::{Args, Parser, Subcommand};
use orbitlang_core::analytic::{strassmann_count, TailBound, TruncatedPadicSeries};
use orbitlang_core::arith::padic::PadicNumber;
use orbitlang_core::arith::poly::Poly;
use orbitlang_core::arith::upoly::UPoly;
use orbitlang_core::arith::Rational;
use orbitlang_core::classify::{
    decompose, normal_form, periodic_curve_candidates, power_or_chebyshev_class, type_of, verify_invariant_curve,
    Decomposition, InvariantVerdict, PowerClass,
};
use orbitlang_core::dynsys::{CriticalLocus, EscapeWitness, Exceptional, OrbitKind, P1Point, RationalMap};
use orbitlang_core::engine::{decide, decide_curve_pair, Certification, EngineError, EngineOptions, IntersectionDescription};
use orbitlang_core::expr::{coordinate_vars, parse_map, parse_points, parse_poly, split_top_level, ParseError};
use orbitlang_core::intersection::{layer, ramification_bound, IntersectionError};
use orbitlang_core::prime_search::{
    find_good_prime_quadratic, find_orbit_prime, qr_filter_for_minus_one, quadratic_constant, PrimeSearchError,
};
use orbitlang_core::reduction::{reduce_map, reduce_point};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::{BufRead, Write};
use std::process::ExitCode;
use std::time::Instant;

const SCHEMA: u32 = 1;
/// Iterates taller than this are printed by height only.
const PRINT_HEIGHT_BITS: u64 = 512;

#[derive(Parser)]
#[command(name = "orbitlang", version, about = "Orbits of rational maps meeting subvarieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit one JSON report per line.
    #[arg(long, global = true)]
    json: bool,
    /// p-adic working precision M.
    #[arg(long, global = true, env = "ORBITLANG_PRECISION", default_value_t = 64)]
    precision: u32,
    /// Mahler interpolation order J.
    #[arg(long, global = true, default_value_t = 48)]
    order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Iterates of a point and its preperiodicity verdict.
    Orbit {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Reduction of a map modulo a prime: cycles, multipliers, residue orbits.
    Reduce {
        #[arg(long)]
        map: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, alias = "points")]
        point: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Normal form, type, decomposition and exceptional structure.
    Classify {
        #[arg(long)]
        map: String,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest prime with a replayable good-reduction certificate.
    FindPrime {
        #[arg(long)]
        map: String,
        #[arg(long, alias = "points")]
        point: String,
        #[arg(long, default_value_t = 1000)]
        pmax: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Layers of the pulled-back diagonal.
    Divisors {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Candidate periodic plane curves and their invariance verdicts.
    MsCurves {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 2)]
        rmax: usize,
        /// Images computed when checking periodicity.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Strassmann bound for a truncated power series with rational
    /// coefficients, known to the working precision.
    Strassmann {
        #[arg(long)]
        series: String,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Which orbit indices land on the variety.
    Decide {
        #[arg(long, conflicts_with = "maps")]
        map: Option<String>,
        /// One map per coordinate, comma-separated.
        #[arg(long)]
        maps: Option<String>,
        #[arg(long, alias = "points")]
        point: String,
        /// A generator of the variety; repeatable. `-` reads one per line
        /// from stdin.
        #[arg(long)]
        variety: Vec<String>,
        /// Scan prefix.
        #[arg(long, default_value_t = 1000)]
        nmax: usize,
        #[arg(long, default_value_t = 10_000)]
        pmax: u64,
        /// Treat a single map on two coordinates as a plane pair even when
        /// it is a polynomial.
        #[arg(long)]
        curve_pair: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    Inconclusive,
    NotFound,
    Error,
}

struct Outcome {
    status: Status,
    result: Value,
    table: Vec<(String, String)>,
}

impl Outcome {
    fn ok(result: Value, table: Vec<(String, String)>) -> Self {
        Outcome { status: Status::Ok, result, table }
    }
}

struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: "Usage", message: msg.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let code = match e {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::DivisionByZero { .. } => "DivisionByZero",
            ParseError::UnknownVariable { .. } => "UnknownVariable",
            ParseError::NonPolynomialWhereRequired => "NonPolynomialWhereRequired",
            ParseError::Map(_) => "BadMap",
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = match e {
            EngineError::PowerMapCase(_) => "PowerMapCase",
            EngineError::HypothesisViolated(_) => "HypothesisViolated",
            EngineError::IrrationalCriticalData => "IrrationalCriticalData",
            EngineError::DimensionMismatch { .. } | EngineError::VarietyMismatch { .. } => "DimensionMismatch",
            EngineError::Dyn(_) => "BadMap",
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<IntersectionError> for Failure {
    fn from(e: IntersectionError) -> Self {
        let code = match e {
            IntersectionError::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            IntersectionError::PeriodicCriticalPoint(_) => "HypothesisViolated",
            _ => "IntersectionError",
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    command: &'a str,
    version: &'static str,
    inputs: Value,
    params: Value,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
    timing_ms: u128,
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn parse_single_map(src: &str) -> Result<RationalMap, Failure> {
    Ok(parse_map(src)?)
}

fn polynomial_of(m: &RationalMap) -> Result<UPoly, Failure> {
    m.as_polynomial().ok_or_else(|| Failure::usage(format!("{m} is not a polynomial")))
}

fn rationals(points: &[P1Point]) -> Result<Vec<Rational>, Failure> {
    points
        .iter()
        .map(|p| p.finite().cloned().ok_or_else(|| Failure::usage("points at infinity are not allowed here")))
        .collect()
}

fn fmt_point(x: &P1Point) -> String {
    if x.height_bits() > PRINT_HEIGHT_BITS {
        format!("<{} bits>", x.height_bits())
    } else {
        x.to_string()
    }
}

fn orbit_kind_json(k: &OrbitKind) -> Value {
    match k {
        OrbitKind::Preperiodic { tail, period } => json!({"preperiodic": {"tail": tail, "period": period}}),
        OrbitKind::Wandering(w) => json!({"wandering": format!("{w:?}"), "rigorous": w.is_rigorous()}),
    }
}

fn cmd_orbit(map: &str, point: &str, nmax: usize) -> Result<Outcome, Failure> {
    let phi = parse_single_map(map)?;
    let x = orbitlang_core::expr::parse_point(point)?;
    let mut iterates = Vec::new();
    let mut y = x.clone();
    for n in 0..=nmax {
        iterates.push(fmt_point(&y));
        if n < nmax {
            if y.height_bits() > PRINT_HEIGHT_BITS {
                // past this point only heights are shown; stop iterating exactly
                break;
            }
            y = phi.apply(&y);
        }
    }
    let kind = phi.orbit_kind(&x);
    let mut table = vec![kv("map", &phi), kv("point", &x), kv("kind", describe_kind(&kind))];
    for (n, s) in iterates.iter().enumerate() {
        table.push((format!("n={n}"), s.clone()));
    }
    Ok(Outcome::ok(json!({"map": phi.to_string(), "point": x.to_string(), "kind": orbit_kind_json(&kind), "iterates": iterates}), table))
}

fn describe_kind(kind: &OrbitKind) -> String {
    match kind {
        OrbitKind::Preperiodic { tail, period } => format!("preperiodic, tail {tail}, period {period}"),
        OrbitKind::Wandering(EscapeWitness::Archimedean { index, radius }) => {
            format!("wandering: leaves |t| <= {radius} at n={index}")
        }
        OrbitKind::Wandering(EscapeWitness::Denominator { index, denominator }) => {
            format!("wandering: denominator {denominator} at n={index}")
        }
        OrbitKind::Wandering(EscapeWitness::Height { index, bits }) => {
            format!("wandering (heuristic): height {bits} bits at n={index}")
        }
        OrbitKind::Wandering(EscapeWitness::PrefixExhausted { length }) => {
            format!("wandering (heuristic): no repeat in {length} iterates")
        }
    }
}

fn cmd_reduce(map: &str, p: u64, point: Option<&str>) -> Result<Outcome, Failure> {
    let phi = parse_single_map(map)?;
    if !orbitlang_core::arith::primes::is_prime(p) {
        return Err(Failure::usage(format!("{p} is not prime")));
    }
    let red = match reduce_map(&phi, p) {
        Ok(r) => r,
        Err(e) => {
            let table = vec![kv("map", &phi), kv("prime", p), kv("good reduction", false)];
            return Ok(Outcome {
                status: Status::Ok,
                result: json!({"map": phi.to_string(), "prime": p, "good_reduction": false, "reason": e.to_string()}),
                table,
            });
        }
    };
    let cycles: Vec<Value> = red
        .periodic_cycles()
        .into_iter()
        .map(|c| {
            let m = red.cycle_multiplier(&c);
            json!({"cycle": c, "multiplier": m})
        })
        .collect();
    let mut table = vec![kv("map", &phi), kv("prime", p), kv("good reduction", true)];
    for c in &cycles {
        table.push(kv("cycle", format!("{} multiplier {}", c["cycle"], c["multiplier"])));
    }
    let mut orbits = Vec::new();
    if let Some(src) = point {
        for x in parse_points(src)? {
            let o = red.residue_orbit(reduce_point(&x, p));
            table.push(kv(&format!("orbit of {x}"), format!("tail {} cycle {:?}", o.tail, o.cycle)));
            orbits.push(json!({"point": x.to_string(), "orbit": o}));
        }
    }
    Ok(Outcome::ok(
        json!({"map": phi.to_string(), "prime": p, "good_reduction": true, "cycles": cycles, "orbits": orbits}),
        table,
    ))
}

fn cmd_classify(map: &str) -> Result<Outcome, Failure> {
    let phi = parse_single_map(map)?;
    let mut result = json!({"map": phi.to_string(), "degree": phi.degree()});
    let mut table = vec![kv("map", &phi), kv("degree", phi.degree())];
    let exceptional = match phi.exceptional_structure() {
        Ok(Exceptional::Two { points, inverted }) => {
            format!("two points {}, {}{}", points[0], points[1], if inverted { " (swapped)" } else { "" })
        }
        Ok(Exceptional::One { point }) => format!("one point {point}"),
        Ok(Exceptional::None) => "none".into(),
        Err(e) => format!("unknown: {e}"),
    };
    table.push(kv("exceptional", &exceptional));
    result["exceptional"] = json!(exceptional);
    if let Some(f) = phi.as_polynomial() {
        match normal_form(&f) {
            Ok(nf) => {
                table.push(kv("normal form", &nf.normal));
                table.push(kv("type", format!("({}, {})", nf.type_pair.a, nf.type_pair.b)));
                result["normal_form"] = json!(nf);
            }
            Err(e) => {
                table.push(kv("normal form", format!("unavailable: {e}")));
                result["normal_form"] = json!({"error": e.to_string()});
                let t = type_of(&f);
                table.push(kv("type", format!("({}, {})", t.a, t.b)));
            }
        }
        result["type"] = json!(type_of(&f));
        if let Ok(pc) = power_or_chebyshev_class(&f) {
            table.push(kv(
                "power class",
                match pc {
                    PowerClass::PowerConjugate(m) => format!("conjugate to t^{m}"),
                    PowerClass::ChebyshevConjugate(m) => format!("conjugate to D_{m}"),
                    PowerClass::Neither => "neither".into(),
                },
            ));
            result["power_class"] = json!(pc);
        }
        let d = decompose(&f);
        table.push(kv(
            "decomposition",
            match &d {
                Decomposition::Decomposition { outer, inner } => format!("({}) o ({inner})", outer.fmt_var("s")),
                Decomposition::Indecomposable => "indecomposable".into(),
            },
        ));
        result["decomposition"] = json!(d);
    }
    match phi.critical_orbits() {
        Ok(orbits) => {
            let cs: Vec<Value> = orbits
                .iter()
                .map(|o| json!({"locus": format!("{:?}", o.locus), "ramification": o.ramification, "periodic": o.periodic}))
                .collect();
            for o in &orbits {
                let locus = match &o.locus {
                    CriticalLocus::Rational(z) => z.to_string(),
                    CriticalLocus::Algebraic(u) => format!("roots of {u}"),
                };
                table.push(kv("critical", format!("{locus} (periodic: {})", o.periodic)));
            }
            result["critical"] = json!(cs);
        }
        Err(e) => {
            table.push(kv("critical", e.to_string()));
            result["critical"] = json!({"error": e.to_string()});
        }
    }
    Ok(Outcome::ok(result, table))
}

fn cmd_find_prime(map: &str, point: &str, pmax: u64) -> Result<Outcome, Failure> {
    let phi = parse_single_map(map)?;
    let points = parse_points(point)?;
    let quad = phi.as_polynomial().as_ref().and_then(quadratic_constant);
    let found = match quad {
        Some(c) if c == -Rational::from_integer(1.into()) => qr_filter_for_minus_one(&rationals(&points)?, pmax),
        Some(_) => find_good_prime_quadratic(&phi.as_polynomial().unwrap(), &rationals(&points)?, pmax),
        None => find_orbit_prime(&phi, &points, 2, pmax),
    };
    match found {
        Ok(cert) => {
            let replay = cert.replay();
            let table = vec![
                kv("map", &phi),
                kv("prime", cert.prime),
                kv("checks", serde_json::to_string(&cert.checks).unwrap()),
                kv("replay", if replay.is_ok() { "ok".to_string() } else { replay.clone().unwrap_err() }),
            ];
            Ok(Outcome::ok(json!({"certificate": cert, "replay_ok": replay.is_ok()}), table))
        }
        Err(PrimeSearchError::NotFound(b)) => Ok(Outcome {
            status: Status::NotFound,
            result: json!({"not_found_below": b}),
            table: vec![kv("map", &phi), kv("result", format!("no prime up to {b}"))],
        }),
        Err(e @ (PrimeSearchError::PeriodicCriticalPoint | PrimeSearchError::PreperiodicInput)) => {
            Err(Failure { code: "HypothesisViolated", message: e.to_string() })
        }
        Err(e) => Err(Failure::usage(e.to_string())),
    }
}

fn cmd_divisors(map: &str, level: usize) -> Result<Outcome, Failure> {
    let phi = parse_single_map(map)?;
    if level == 0 {
        return Err(Failure::usage("level must be at least 1"));
    }
    let mut layers = Vec::new();
    let mut table = vec![kv("map", &phi)];
    for i in 1..=level {
        let l = layer(&phi, i)?;
        table.push((format!("Y_{i}"), format!("{} (squarefree: {})", l.poly, l.squarefree)));
        layers.push(json!({"level": i, "poly": l.poly.to_string(), "squarefree": l.squarefree}));
    }
    let bound = match ramification_bound(&phi) {
        Ok(b) => json!(b),
        Err(e) => json!({"error": e.to_string()}),
    };
    table.push(kv("ramification bound", &bound));
    Ok(Outcome::ok(json!({"map": phi.to_string(), "layers": layers, "ramification_bound": bound}), table))
}

fn cmd_ms_curves(map: &str, rmax: usize, kmax: usize) -> Result<Outcome, Failure> {
    let phi = parse_single_map(map)?;
    let f = polynomial_of(&phi)?;
    let cands = periodic_curve_candidates(&f, rmax).map_err(|e| Failure { code: "ClassifyError", message: e.to_string() })?;
    let mut table = vec![kv("map", &phi)];
    let mut out = Vec::new();
    for c in &cands {
        let verdict = match verify_invariant_curve(&c.curve, &f, kmax) {
            Ok(InvariantVerdict::PeriodicWithPeriod(k)) => format!("periodic, period {k}"),
            Ok(InvariantVerdict::NotPeriodicUpTo { k_max, preperiodic, .. }) => {
                format!("not periodic up to {k_max}{}", if preperiodic { " (preperiodic)" } else { "" })
            }
            Err(e) => format!("undecided: {e}"),
        };
        table.push((c.curve.to_string(), verdict.clone()));
        out.push(json!({"candidate": c, "verdict": verdict}));
    }
    Ok(Outcome::ok(json!({"map": phi.to_string(), "curves": out}), table))
}

fn cmd_strassmann(series: &str, p: u64, precision: u32) -> Result<Outcome, Failure> {
    if !orbitlang_core::arith::primes::is_prime(p) {
        return Err(Failure::usage(format!("{p} is not prime")));
    }
    let none = std::sync::Arc::new(Vec::new());
    let coeffs: Vec<PadicNumber> = series
        .split(',')
        .map(|s| {
            let c = parse_poly(s.trim(), &none)?.constant_value().unwrap_or_default();
            Ok(PadicNumber::from_rational(&c, p, precision as i64))
        })
        .collect::<Result<_, ParseError>>()?;
    let s = TruncatedPadicSeries::new(p, coeffs, TailBound::AtLeast(precision as i64));
    match strassmann_count(&s) {
        Ok(n) => Ok(Outcome::ok(
            json!({"prime": p, "precision": precision, "zero_bound": n}),
            vec![kv("prime", p), kv("zero bound", n)],
        )),
        Err(e) => Ok(Outcome {
            status: Status::Inconclusive,
            result: json!({"prime": p, "precision": precision, "error": e.to_string()}),
            table: vec![kv("prime", p), kv("result", e.to_string())],
        }),
    }
}

fn read_varieties(args: &[String]) -> Result<Vec<String>, Failure> {
    let mut out = Vec::new();
    for a in args {
        if a == "-" {
            for line in std::io::stdin().lock().lines() {
                let line = line.map_err(|e| Failure::usage(e.to_string()))?;
                let t = line.trim();
                if !t.is_empty() && !t.starts_with('#') {
                    out.push(t.to_string());
                }
            }
        } else {
            out.push(a.clone());
        }
    }
    Ok(out)
}

fn description_table(d: &IntersectionDescription) -> Vec<(String, String)> {
    let mut t = Vec::new();
    for p in &d.progressions {
        t.push(kv("progression", format!("n = {} (mod {}), n >= {}", p.l, p.k, p.start)));
    }
    t.push(kv("exceptional", format!("{:?}", d.exceptional)));
    t.push(kv(
        "certification",
        match &d.certification {
            Certification::Exact => "exact".to_string(),
            Certification::Certified { prime, order, precision } => {
                format!("certified at p={prime}, order {order}, precision {precision}")
            }
            Certification::ScanOnly { n } => format!("scan only, n <= {n}"),
            Certification::Inconclusive { reason } => format!("inconclusive: {reason}"),
        },
    ));
    if let Some(k) = d.step {
        t.push(kv("classes", k));
    }
    t.push(kv("scanned", d.scanned));
    t
}

fn cmd_decide(
    map: Option<&str>,
    maps: Option<&str>,
    point: &str,
    variety: &[String],
    curve_pair: bool,
    opts: &EngineOptions,
) -> Result<Outcome, Failure> {
    let parsed: Vec<RationalMap> = match (map, maps) {
        (Some(m), None) => vec![parse_single_map(m)?],
        (None, Some(ms)) => split_top_level(ms).into_iter().map(parse_single_map).collect::<Result<_, _>>()?,
        _ => return Err(Failure::usage("give exactly one of --map or --maps")),
    };
    let alpha = rationals(&parse_points(point)?)?;
    let g = alpha.len();
    let vars = coordinate_vars(g);
    let gens: Vec<Poly> =
        read_varieties(variety)?.iter().map(|s| parse_poly(s, &vars)).collect::<Result<_, _>>()?;
    let pair = parsed.len() == 1 && g == 2 && (curve_pair || !parsed[0].is_polynomial());
    let d = if pair {
        let [c] = gens.as_slice() else {
            return Err(Failure::usage("a plane pair takes exactly one curve"));
        };
        decide_curve_pair(&parsed[0], &[alpha[0].clone(), alpha[1].clone()], c, opts)?
    } else {
        let polys: Vec<UPoly> = parsed.iter().map(polynomial_of).collect::<Result<_, _>>()?;
        decide(&polys, &alpha, &gens, opts)?
    };
    let status = match d.certification {
        Certification::Inconclusive { .. } => Status::Inconclusive,
        _ => Status::Ok,
    };
    let table = description_table(&d);
    Ok(Outcome { status, result: json!(d), table })
}

fn inputs_json(cmd: &Command) -> (String, Value, Value) {
    match cmd {
        Command::Orbit { map, point, nmax, .. } => ("orbit".into(), json!({"map": map, "point": point}), json!({"nmax": nmax})),
        Command::Reduce { map, prime, point, .. } => {
            ("reduce".into(), json!({"map": map, "prime": prime, "point": point}), json!({}))
        }
        Command::Classify { map, .. } => ("classify".into(), json!({"map": map}), json!({})),
        Command::FindPrime { map, point, pmax, .. } => {
            ("find-prime".into(), json!({"map": map, "points": point}), json!({"pmax": pmax}))
        }
        Command::Divisors { map, level, .. } => ("divisors".into(), json!({"map": map}), json!({"level": level})),
        Command::MsCurves { map, rmax, kmax, .. } => {
            ("ms-curves".into(), json!({"map": map}), json!({"rmax": rmax, "kmax": kmax}))
        }
        Command::Strassmann { series, prime, common } => {
            ("strassmann".into(), json!({"series": series, "prime": prime}), json!({"precision": common.precision}))
        }
        Command::Decide { map, maps, point, variety, nmax, pmax, curve_pair, common } => (
            "decide".into(),
            json!({"map": map, "maps": maps, "point": point, "variety": variety, "curve_pair": curve_pair}),
            json!({"nmax": nmax, "pmax": pmax, "precision": common.precision, "order": common.order}),
        ),
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Orbit { common, .. }
        | Command::Reduce { common, .. }
        | Command::Classify { common, .. }
        | Command::FindPrime { common, .. }
        | Command::Divisors { common, .. }
        | Command::MsCurves { common, .. }
        | Command::Strassmann { common, .. }
        | Command::Decide { common, .. } => common,
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Orbit { map, point, nmax, .. } => cmd_orbit(map, point, *nmax),
        Command::Reduce { map, prime, point, .. } => cmd_reduce(map, *prime, point.as_deref()),
        Command::Classify { map, .. } => cmd_classify(map),
        Command::FindPrime { map, point, pmax, .. } => cmd_find_prime(map, point, *pmax),
        Command::Divisors { map, level, .. } => cmd_divisors(map, *level),
        Command::MsCurves { map, rmax, kmax, .. } => cmd_ms_curves(map, *rmax, *kmax),
        Command::Strassmann { series, prime, common } => cmd_strassmann(series, *prime, common.precision),
        Command::Decide { map, maps, point, variety, nmax, pmax, curve_pair, common } => {
            let opts = EngineOptions {
                scan_n: *nmax,
                p_max: *pmax,
                order: common.order,
                precision: common.precision,
                ..EngineOptions::default()
            };
            cmd_decide(map.as_deref(), maps.as_deref(), point, variety, *curve_pair, &opts)
        }
    }
}

fn print_table(rows: &[(String, String)]) {
    let w = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = std::io::stdout().lock();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<w$}  {v}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common_of(&cli.command).clone();
    let (name, inputs, mut params) = inputs_json(&cli.command);
    params["precision"] = json!(common.precision);
    params["order"] = json!(common.order);
    let t0 = Instant::now();
    let outcome = dispatch(&cli.command);
    let timing_ms = t0.elapsed().as_millis();
    let (status, result, error, table) = match outcome {
        Ok(o) => (o.status, Some(o.result), None, o.table),
        Err(f) => {
            let table = vec![kv("error", f.code), kv("message", &f.message)];
            (Status::Error, None, Some(json!({"code": f.code, "message": f.message})), table)
        }
    };
    if common.json {
        let report = Report {
            schema: SCHEMA,
            command: &name,
            version: env!("CARGO_PKG_VERSION"),
            inputs,
            params,
            status,
            result,
            error,
            timing_ms,
        };
        println!("{}", serde_json::to_string(&report).unwrap());
    } else if status == Status::Error {
        let mut err = std::io::stderr().lock();
        for (k, v) in &table {
            let _ = writeln!(err, "{k}: {v}");
        }
    } else {
        print_table(&table);
    }
    ExitCode::from(match status {
        Status::Ok => 0,
        Status::Inconclusive | Status::NotFound => 1,
        Status::Error => 2,
    })
}
