mod manifest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cubic_cf::qexact::rational::{parse_rational, to_wire, Rational};
use cubic_cf::qexact::{CubicEq, IntPoly, Poly};
use cubic_cf::riccati::DeriveMode;
use cubic_cf::{approx, bounds, families, moebius, realcf, riccati, Error};

use manifest::{Artifact, Precision, RunManifest, BITS_ENV, DEFAULT_BITS};

#[derive(Parser, Debug)]
#[command(name = "cubiccf", version, about = "Exact continued fractions of cubic series and cubic irrationals")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Output format; not every subcommand supports every format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    emit: Emit,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Worker threads for grid subcommands.
    #[arg(long, global = true)]
    #[serde(skip)]
    jobs: Option<usize>,
    /// Precision floor in bits (default from the environment, else 128).
    #[arg(long, global = true)]
    bits: Option<u32>,
    /// Record wall time in the manifest.
    #[arg(long, global = true)]
    #[serde(skip)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Emit {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Derive a continued fraction from a cubic in x over Q[t].
    Derive(DeriveArgs),
    /// Closed-form terms of one of the six families.
    Family(FamilyArgs),
    /// Lagrange test of a family's convergents against the series oracle.
    VerifyFamily(VerifyArgs),
    /// Effective approximation bounds for 3x³ − 3tx² − 3ax + at.
    BoundsTable(TableArgs),
    /// Witnesses of very good approximations at t = t_k.
    Witness(WitnessArgs),
    /// 2-adic valuations of block products at odd t.
    Audit2adic(AuditArgs),
    /// Search for large partial quotients of cubic irrationals.
    Scan(ScanArgs),
    /// Reduce a real cubic root to the shape y³ − ty² − a.
    Moebius(MoebiusArgs),
    /// Simple continued fraction of a real cubic root.
    Realcf(RealArgs),
}

#[derive(Args, Debug, Serialize)]
struct DeriveArgs {
    /// Coefficients b0;b1;b2;b3 of the cubic, each a comma list ascending in t.
    #[arg(long, conflicts_with = "family")]
    cubic: Option<String>,
    /// Use a family's cubic instead.
    #[arg(long)]
    family: Option<u8>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 12)]
    terms: usize,
    #[arg(long, default_value = "crosscheck")]
    mode: String,
}

#[derive(Args, Debug, Serialize)]
struct FamilyArgs {
    #[arg(long)]
    id: u8,
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 10)]
    terms: usize,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    id: u8,
    /// Comma list of parameter values.
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 12)]
    terms: usize,
}

#[derive(Args, Debug, Serialize)]
struct TableArgs {
    /// Comma list of a:t pairs.
    #[arg(long, default_value = "1:11,1:12,1:30,2:42,2:43,3:94,3:95")]
    pairs: String,
    /// Simple-CF depth for the heuristic evidence column; 0 omits it.
    #[arg(long, default_value_t = 0)]
    evidence_depth: usize,
}

#[derive(Args, Debug, Serialize)]
struct WitnessArgs {
    #[arg(long)]
    k0: u64,
    #[arg(long)]
    tau: f64,
    #[arg(long, default_value_t = 1)]
    n0: usize,
}

#[derive(Args, Debug, Serialize)]
struct AuditArgs {
    #[arg(long)]
    k0: usize,
    #[arg(long, default_value = "35")]
    t: String,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    hmax: u32,
    #[arg(long, default_value_t = 25)]
    depth: usize,
    #[arg(long, default_value = "2")]
    cmin: String,
}

#[derive(Args, Debug, Serialize)]
struct MoebiusArgs {
    /// Integer coefficients, highest degree first.
    #[arg(long)]
    poly: String,
    #[arg(long, default_value_t = 0)]
    root_index: usize,
    /// Convergents of z to try.
    #[arg(long, default_value_t = 60)]
    budget: usize,
    #[arg(long, default_value_t = 12)]
    quotients: usize,
    /// Blocks of four terms checked in the reduced fraction.
    #[arg(long, default_value_t = 5)]
    blocks: usize,
}

#[derive(Args, Debug, Serialize)]
struct RealArgs {
    #[arg(long)]
    poly: String,
    #[arg(long, default_value_t = 0)]
    root_index: usize,
    #[arg(long, default_value_t = 30)]
    terms: usize,
}

/// Failure of a run: usage problems exit with 2, everything else with 1.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check { kind: String, message: String, detail: Option<Value> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) | Error::Parse(m) => Failure::Usage(m),
            other => Failure::Check { kind: kind_of(&other).into(), message: other.to_string(), detail: None },
        }
    }
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::CheckFailed(_) => "check_failed",
        Error::Hypothesis(_) => "hypothesis",
        Error::PrecisionExhausted(_) => "precision_exhausted",
        Error::Budget(_) => "budget",
        Error::Degenerate(_) => "degenerate",
        _ => "error",
    }
}

fn check_failed(message: String, detail: Value) -> Failure {
    Failure::Check { kind: "check_failed".into(), message, detail: Some(detail) }
}

/// Result payload plus optional CSV rendering.
struct Output {
    result: Value,
    csv: Option<String>,
    pretty: Option<String>,
    /// Set when a certified check in the payload failed.
    failure: Option<String>,
}

impl Output {
    fn json(result: Value) -> Self {
        Output { result, csv: None, pretty: None, failure: None }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_rat_opt(s: &Option<String>) -> Result<Option<Rational>, Failure> {
    s.as_deref().map(parse_rational).transpose().map_err(Failure::from)
}

fn parse_cubic(s: &str) -> Result<CubicEq, Failure> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 4 {
        return Err(Failure::Usage(format!("--cubic needs four ';'-separated coefficients, got {}", parts.len())));
    }
    let polys = parts
        .iter()
        .map(|p| {
            p.split(',')
                .map(|c| parse_rational(c.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map(Poly::from_coeffs)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let [b0, b1, b2, b3]: [Poly; 4] = polys.try_into().expect("four parts");
    Ok(CubicEq::new(b0, b1, b2, b3)?)
}

fn run_derive(args: &DeriveArgs) -> Result<Output, Failure> {
    let mode: DeriveMode = args.mode.parse()?;
    let cubic = match (&args.cubic, args.family) {
        (Some(c), None) => parse_cubic(c)?,
        (None, Some(id)) => families::FamilySpec::new(id, parse_rat_opt(&args.a)?)?.cubic(),
        _ => return Err(Failure::Usage("give exactly one of --cubic or --family".into())),
    };
    let riccati = riccati::riccati_from_cubic(&cubic)?;
    let d = riccati::derive_cf(&cubic, args.terms, mode)?;
    let failure = (mode == DeriveMode::Crosscheck && !d.consistent()).then(|| "riccati and oracle disagree".to_string());
    Ok(Output {
        result: json!({ "cubic": to_value(&cubic), "riccati": to_value(&riccati), "derivation": to_value(&d) }),
        csv: None,
        pretty: None,
        failure,
    })
}

fn run_family(args: &FamilyArgs) -> Result<Output, Failure> {
    let spec = families::FamilySpec::new(args.id, parse_rat_opt(&args.a)?)?;
    let gcf = families::family_terms(&spec, args.terms)?;
    let mut pretty = format!("{}\n", spec.label());
    for (i, (b, a)) in gcf.beta.iter().zip(&gcf.a).enumerate() {
        pretty.push_str(&format!("{i:>4}  beta = {:<16} a = {}\n", to_wire(b), a.pretty()));
    }
    let mut out = Output::json(json!({ "family": args.id, "a": args.a, "cubic": to_value(&spec.cubic()), "gcf": to_value(&gcf) }));
    out.pretty = Some(pretty);
    Ok(out)
}

fn run_verify(args: &VerifyArgs) -> Result<Output, Failure> {
    let values: Vec<Option<Rational>> = match &args.a {
        None => vec![None],
        Some(s) => s.split(',').map(|v| parse_rational(v.trim()).map(Some)).collect::<Result<_, _>>()?,
    };
    let reports = families::verify_family(args.id, args.terms, &values)?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.all_pass())
        .map(|r| format!("family {} a = {:?}: convergents {:?}", r.family, r.a, r.failures()))
        .collect();
    let mut out = Output::json(to_value(&reports));
    out.failure = (!failed.is_empty()).then(|| failed.join("; "));
    Ok(out)
}

fn parse_pairs(s: &str) -> Result<Vec<(u64, u64)>, Failure> {
    s.split(',')
        .map(|p| {
            let (a, t) = p.trim().split_once(':').ok_or_else(|| Failure::Usage(format!("pair {p:?} is not a:t")))?;
            let n = |x: &str| x.parse::<u64>().map_err(|_| Failure::Usage(format!("bad integer {x:?}")));
            Ok((n(a)?, n(t)?))
        })
        .collect()
}

fn csv_of<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn run_table(args: &TableArgs, bits: u32) -> Result<Output, Failure> {
    let pairs = parse_pairs(&args.pairs)?;
    let depth = args.evidence_depth;
    let rows = cubic_cf::par::map(pairs, |(a, t)| bounds::table_row(a, t, bits, depth))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let c1 = bounds::c1_constant(bits)?;
    let mut out = Output::json(json!({ "c1": to_value(&c1), "rows": to_value(&rows) }));
    out.csv = Some(csv_of(&rows)?);
    Ok(out)
}

fn run_witness(args: &WitnessArgs) -> Result<Output, Failure> {
    let report = approx::theorem4_witnesses(args.k0, args.tau, args.n0)?;
    let ingredient = if args.k0 >= 2 { Some(approx::approx_instance_check(args.k0, 1)?) } else { None };
    let mut out = Output::json(json!({ "report": to_value(&report), "approximation_check": to_value(&ingredient) }));
    if let Some(c) = &ingredient {
        if !c.holds {
            out.failure = Some(format!("approximation inequality fails at m = {}", c.m));
        }
    }
    Ok(out)
}

fn run_audit(args: &AuditArgs) -> Result<Output, Failure> {
    let t: num_bigint::BigInt = args.t.parse().map_err(|_| Failure::Usage(format!("bad integer {:?}", args.t)))?;
    Ok(Output::json(to_value(&approx::two_adic_audit(&t, args.k0)?)))
}

#[derive(Serialize)]
struct FindingRow<'a> {
    poly: &'a str,
    height: u32,
    n: usize,
    a_n: &'a str,
    c_lo: String,
    c_hi: String,
    root_lo: String,
    root_hi: String,
}

fn run_scan(args: &ScanArgs) -> Result<Output, Failure> {
    let cmin = parse_rational(&args.cmin)?;
    let cfg = realcf::ScanConfig::new(args.hmax, args.depth, cmin);
    let findings = realcf::conjecture_a_scan(&cfg)?;
    let rows: Vec<FindingRow> = findings
        .iter()
        .map(|f| {
            let (c_lo, c_hi) = f.c.endpoints(8);
            let (root_lo, root_hi) = f.root_interval.endpoints(20);
            FindingRow { poly: &f.poly, height: f.height, n: f.n, a_n: &f.a_n, c_lo, c_hi, root_lo, root_hi }
        })
        .collect();
    let csv = csv_of(&rows)?;
    let mut out = Output::json(json!({ "candidates": realcf::scan_candidates(args.hmax).len(), "findings": to_value(&findings) }));
    out.csv = Some(csv);
    Ok(out)
}

fn pick_root(desc: &str, index: usize) -> Result<(IntPoly, realcf::RealAlgebraic), Failure> {
    let p = IntPoly::parse_desc(desc)?;
    let roots = realcf::isolate_real_roots(&p)?;
    let n = roots.len();
    let x = roots
        .into_iter()
        .nth(index)
        .ok_or_else(|| Failure::Usage(format!("root index {index} out of range: {n} real roots")))?;
    Ok((p, x))
}

fn gcf_terms(g: &cubic_cf::cfrac::Gcf, n: usize) -> Value {
    let k = n.min(g.len());
    json!({
        "beta": g.beta[..k].iter().map(to_wire).collect::<Vec<_>>(),
        "a": g.a[..k].iter().map(|p| to_wire(&p.coeff(0))).collect::<Vec<_>>(),
    })
}

fn run_moebius(args: &MoebiusArgs) -> Result<Output, Failure> {
    let (p, x) = pick_root(&args.poly, args.root_index)?;
    let cert = moebius::choose_vw(&p, &x, args.budget)?;
    let (gcf, report) = moebius::reduced_cf(&cert, args.blocks)?;
    let orig = moebius::original_cf(&cert, &gcf)?;
    let n = orig.len() - 1;
    let trip = moebius::round_trip(&orig, &x, n.min(20), &moebius::default_tolerance())?;
    let (red_q, orig_q) = moebius::quotient_prefixes(&cert, args.quotients)?;
    let mut out = Output::json(json!({
        "certificate": to_value(&cert),
        "reduced": { "terms": gcf_terms(&gcf, args.quotients), "report": to_value(&report), "simple_quotients": red_q },
        "original": { "terms": gcf_terms(&orig, args.quotients), "round_trip": to_value(&trip), "simple_quotients": orig_q },
    }));
    if !trip.final_below {
        out.failure = Some("original fraction misses the root at the requested tolerance".into());
    }
    Ok(out)
}

fn run_realcf(args: &RealArgs, bits: u32) -> Result<Output, Failure> {
    let (_, x) = pick_root(&args.poly, args.root_index)?;
    let cf = realcf::expand_real_cf(&x, args.terms);
    let quotients: Vec<String> = cf.quotients.iter().map(|q| q.to_string()).collect();
    let mut out = Output::json(json!({
        "root": to_value(&x),
        "enclosure": to_value(&x.enclose(bits)),
        "quotients": quotients,
        "terminated": cf.terminated,
    }));
    out.pretty = Some(format!("[{}]\n", quotients.join(", ")));
    Ok(out)
}

fn dispatch(cmd: &Command, bits: u32) -> Result<Output, Failure> {
    match cmd {
        Command::Derive(a) => run_derive(a),
        Command::Family(a) => run_family(a),
        Command::VerifyFamily(a) => run_verify(a),
        Command::BoundsTable(a) => run_table(a, bits),
        Command::Witness(a) => run_witness(a),
        Command::Audit2adic(a) => run_audit(a),
        Command::Scan(a) => run_scan(a),
        Command::Moebius(a) => run_moebius(a),
        Command::Realcf(a) => run_realcf(a, bits),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Derive(_) => "derive",
        Command::Family(_) => "family",
        Command::VerifyFamily(_) => "verify-family",
        Command::BoundsTable(_) => "bounds-table",
        Command::Witness(_) => "witness",
        Command::Audit2adic(_) => "audit2adic",
        Command::Scan(_) => "scan",
        Command::Moebius(_) => "moebius",
        Command::Realcf(_) => "realcf",
    }
}

fn precision_floor(flag: Option<u32>) -> Result<u32, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BITS_ENV) {
        Ok(v) => v.parse().map_err(|_| Failure::Usage(format!("{BITS_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BITS),
    }
}

fn render(cli: &Cli, out: &Output, manifest: &RunManifest) -> Result<String, Failure> {
    let artifact = Artifact { schema: manifest::SCHEMA, manifest, result: &out.result };
    match cli.global.emit {
        Emit::Json => Ok(serde_json::to_string_pretty(&artifact).expect("serializable") + "\n"),
        Emit::Csv => {
            let body = out.csv.as_ref().ok_or_else(|| Failure::Usage("this subcommand has no CSV output".into()))?;
            let header = format!("# {}\n", serde_json::to_string(manifest).expect("serializable"));
            Ok(header + body)
        }
        Emit::Pretty => out
            .pretty
            .clone()
            .ok_or_else(|| Failure::Usage("this subcommand has no pretty output".into())),
    }
}

fn run(cli: &Cli) -> Result<Option<String>, Failure> {
    let bits = precision_floor(cli.global.bits)?;
    if let Some(j) = cli.global.jobs {
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        #[cfg(not(feature = "parallel"))]
        let _ = j;
    }
    let start = Instant::now();
    let out = dispatch(&cli.command, bits)?;
    let mut params = to_value(&cli.command);
    if let Value::Object(m) = &mut params {
        if let Some(inner) = m.values_mut().next() {
            params = inner.take();
        }
    }
    let mut manifest = RunManifest::new(command_name(&cli.command), params, Precision::new(bits), &out.result);
    if cli.global.timing {
        manifest.wall_time_ms = Some(start.elapsed().as_millis());
    }
    let text = render(cli, &out, &manifest)?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?,
    }
    Ok(out.failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(msg)) => {
            let diag = check_failed(msg, Value::Null);
            report(&diag);
            ExitCode::from(1)
        }
        Err(f) => {
            report(&f);
            ExitCode::from(match f {
                Failure::Usage(_) => 2,
                Failure::Check { .. } => 1,
            })
        }
    }
}

fn report(f: &Failure) {
    let v = match f {
        Failure::Usage(m) => json!({ "error": "usage", "message": m }),
        Failure::Check { kind, message, detail } => json!({ "error": kind, "message": message, "detail": detail }),
    };
    eprintln!("{}", serde_json::to_string(&v).expect("serializable"));
}
