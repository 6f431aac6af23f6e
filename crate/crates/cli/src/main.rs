//! `gcr`: command-line workbench for generalized covering radii of binary
//! double-error-correcting BCH codes.
//!
//! Every subcommand prints a single JSON document (or CSV where requested) on
//! standard output and keeps diagnostics — progress ticks and wall time — on
//! standard error, so sequential runs with equal arguments are byte-identical.
//! Exit status: 0 = computed and passed, 1 = computed but a check failed,
//! 2 = usage or precondition error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::exit;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gcr_core::bch::{bch_code, build_columns, ColumnSystem, SyndromePair};
use gcr_core::charsum::{
    cochrane_check, find_noncube_triple, weil_check, CharSumReport, SampleMode, VerifyOutcome,
    verify_beta4, verify_cube_lemma, verify_y1y2y3,
};
use gcr_core::codes::{classify_small, hamming_code, hamming_ghw_sequence, CodeClass};
use gcr_core::construct::{
    cover_2kplus1, count_solutions, solution_count_lower_bound, verify_solution, CoverSolution,
    ScanOrder,
};
use gcr_core::cover::{
    certify_no_cover_with_progress, counting_bound, d_cc, d_cc_generic, gcr_exact_with_progress,
    threshold_report, verify_certificate, CoverCertificate, Symmetry, Verdict,
};
use gcr_core::gf2m::{Felt, FieldSpec};

#[derive(Parser)]
#[command(
    name = "gcr",
    version,
    about = "Covering-radius workbench for double-error-correcting BCH codes",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show a field's parameters, or the default modulus table.
    Field(FieldArgs),
    /// Generalized Hamming weights of the length-(2^m - 1) Hamming code.
    Ghw(GhwArgs),
    /// Exact generalized covering radius by exhaustive search.
    Gcr(GcrArgs),
    /// Exact relative generalized Hamming distance to the Hamming supercode.
    Dcc(DccArgs),
    /// Produce or recheck an exhaustive cover/no-cover certificate.
    Certify(CertifyArgs),
    /// Cover a syndrome tuple with at most 2k+1 columns.
    Cover(CoverArgs),
    /// Count the shared columns usable to cover a tuple, against the lower bound.
    Count(CountArgs),
    /// Character-sum bound checks (Weil / rational families).
    Charsum(CharsumArgs),
    /// Verify an algebraic identity exhaustively or on random samples.
    Verify(VerifyArgs),
    /// Classify short codes up to coordinate permutation.
    Classify(ClassifyArgs),
    /// Counting and threshold bounds on the covering radius.
    Bound(BoundArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Field degree; omit to list the default modulus table.
    #[arg(long)]
    m: Option<u32>,
    /// Modulus override as a hex polynomial, e.g. 0x13.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args)]
struct GhwArgs {
    /// Field degree of the Hamming code, length 2^m - 1.
    #[arg(long)]
    m: u32,
    /// Report only the r-th weight instead of the whole hierarchy.
    #[arg(long)]
    r: Option<usize>,
    /// Cross-check the closed form against brute force (m <= 3).
    #[arg(long, conflicts_with = "r")]
    brute: bool,
}

#[derive(Args)]
struct GcrArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    modulus: Option<String>,
    /// Radius order r.
    #[arg(long)]
    r: usize,
    /// Orbit reduction under field symmetries.
    #[arg(long, value_enum, default_value_t = SymmetryArg::On)]
    symmetry: SymmetryArg,
}

#[derive(Args)]
struct DccArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long)]
    r: usize,
    /// Cross-check against the generic two-code search (m <= 4).
    #[arg(long)]
    generic: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, required_unless_present = "recheck")]
    m: Option<u32>,
    #[arg(long)]
    modulus: Option<String>,
    /// Subset size t to search exhaustively.
    #[arg(long, required_unless_present = "recheck")]
    t: Option<usize>,
    /// Target pairs as hex a1,b1,a2,b2,...
    #[arg(long, value_delimiter = ',', conflicts_with = "targets_from")]
    targets: Option<Vec<String>>,
    /// A named target family instead of explicit pairs.
    #[arg(long, value_enum)]
    targets_from: Option<TargetsFrom>,
    /// Also write the bare certificate JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-verify a previously emitted certificate instead of searching.
    #[arg(long, conflicts_with_all = ["targets", "targets_from", "out"])]
    recheck: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum TargetsFrom {
    /// (0, y_i) for the first non-cube triple of the field (even m).
    NoncubeTriple,
    /// (0, 2^i) for i = 0..m, an F_2-basis of the field.
    Basis,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    modulus: Option<String>,
    /// Target pairs as hex a1,b1,a2,b2,...
    #[arg(long, value_delimiter = ',')]
    targets: Vec<String>,
    /// Scan shared columns in a seeded random order instead of generator order.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    modulus: Option<String>,
    /// Target pairs as hex a1,b1,a2,b2,...
    #[arg(long, value_delimiter = ',')]
    targets: Vec<String>,
}

#[derive(Args)]
struct CharsumArgs {
    /// Character-sum family to bound.
    #[arg(long, value_enum)]
    family: Family,
    /// Field degrees, e.g. 4,6,8,10.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<u32>,
    /// Polynomial coefficients (hex, low degree first) for the multiplicative family.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<String>>,
    /// Rational-family terms as hex a1,b1,a2,b2,...
    #[arg(long, value_delimiter = ',')]
    terms: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    /// Cubic-residue character of a polynomial (even m).
    Multiplicative,
    /// Canonical additive character of a rational-function family.
    AdditiveRational,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity to verify.
    #[arg(long, value_enum)]
    lemma: Lemma,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Sample count for random mode.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum Lemma {
    /// Sum of cubes over y1, y2, y3 = y1 + y2 factors as y1*y2*(y1+y2).
    Y1y2y3,
    /// The eight-factor product of a triple is an explicit cube.
    Cube,
    /// The beta-4 elimination identity.
    Beta4,
    /// x^2 + ax + b is solvable exactly when tr(b/a^2) = 0.
    Quadratic,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Minimum distance the classified codes must attain.
    #[arg(long)]
    d: usize,
}

#[derive(Args)]
struct BoundArgs {
    /// Tuple size k whose radius is bounded below by 2k.
    #[arg(long)]
    k: u32,
    /// Field degree for the counting bound; omit for the threshold report.
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SymmetryArg {
    On,
    Off,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<FieldSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    work: BTreeMap<&'static str, u64>,
}

impl RunManifest {
    fn new(field: Option<&FieldSpec>) -> RunManifest {
        RunManifest {
            command: std::env::args().collect::<Vec<_>>().join(" "),
            version: env!("CARGO_PKG_VERSION"),
            field: field.cloned(),
            seed: None,
            work: BTreeMap::new(),
        }
    }

    fn seed(mut self, seed: u64) -> RunManifest {
        self.seed = Some(seed);
        self
    }

    fn work(mut self, key: &'static str, value: u64) -> RunManifest {
        self.work.insert(key, value);
        self
    }
}

fn emit<T: Serialize>(out: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(out).expect("report serializes")
    );
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|_| format!("malformed hex value {s:?}"))
}

fn parse_felt(f: &FieldSpec, s: &str) -> Result<Felt, String> {
    let v = parse_hex(s)?;
    if v >= f.order() {
        return Err(format!(
            "element {s} out of range for a degree-{} field",
            f.m()
        ));
    }
    Ok(Felt(v))
}

fn parse_pairs(f: &FieldSpec, items: &[String]) -> Result<Vec<SyndromePair>, String> {
    if items.is_empty() || !items.len().is_multiple_of(2) {
        return Err(format!(
            "expected an even number of hex values a1,b1,a2,b2,..., got {}",
            items.len()
        ));
    }
    items
        .chunks(2)
        .map(|c| Ok(SyndromePair::new(parse_felt(f, &c[0])?, parse_felt(f, &c[1])?)))
        .collect()
}

fn make_field(m: u32, modulus: &Option<String>) -> Result<FieldSpec, String> {
    let modulus = modulus.as_deref().map(parse_hex).transpose()?;
    FieldSpec::new(m, modulus).map_err(|e| e.to_string())
}

fn columns_for(f: &FieldSpec) -> Result<ColumnSystem, String> {
    build_columns(f).map_err(|e| e.to_string())
}

/// The fixed generator used by randomized verify modes; high bits of a 64-bit
/// LCG step feed each draw.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self, bits: u32) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> (64 - bits)
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("warning: could not size the worker pool: {e}");
        }
    }
    let started = Instant::now();
    let status = match run(cli.command) {
        Ok(status) => status,
        Err(reason) => {
            eprintln!("error: {reason}");
            2
        }
    };
    eprintln!("wall time: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
    exit(status);
}

fn run(command: Command) -> Result<i32, String> {
    match command {
        Command::Field(args) => run_field(args),
        Command::Ghw(args) => run_ghw(args),
        Command::Gcr(args) => run_gcr(args),
        Command::Dcc(args) => run_dcc(args),
        Command::Certify(args) => run_certify(args),
        Command::Cover(args) => run_cover(args),
        Command::Count(args) => run_count(args),
        Command::Charsum(args) => run_charsum(args),
        Command::Verify(args) => run_verify(args),
        Command::Classify(args) => run_classify(args),
        Command::Bound(args) => run_bound(args),
    }
}

#[derive(Serialize)]
struct FieldOut {
    manifest: RunManifest,
    order: u64,
    units: u64,
}

#[derive(Serialize)]
struct FieldTable {
    manifest: RunManifest,
    fields: Vec<FieldSpec>,
}

fn run_field(args: FieldArgs) -> Result<i32, String> {
    match args.m {
        Some(m) => {
            let f = make_field(m, &args.modulus)?;
            emit(&FieldOut {
                order: f.order(),
                units: f.units(),
                manifest: RunManifest::new(Some(&f)),
            });
        }
        None => {
            if args.modulus.is_some() {
                return Err("--modulus requires --m".into());
            }
            let fields: Vec<FieldSpec> = (2..=16)
                .map(|m| FieldSpec::new(m, None).expect("default moduli are irreducible"))
                .collect();
            emit(&FieldTable {
                manifest: RunManifest::new(None),
                fields,
            });
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct GhwAllOut {
    manifest: RunManifest,
    m: u32,
    k: usize,
    ghw: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_match: Option<bool>,
}

#[derive(Serialize)]
struct GhwOneOut {
    manifest: RunManifest,
    m: u32,
    r: usize,
    value: u64,
}

fn run_ghw(args: GhwArgs) -> Result<i32, String> {
    let f = FieldSpec::new(args.m, None).map_err(|e| e.to_string())?;
    let k = (f.units() as usize) - args.m as usize;
    if let Some(r) = args.r {
        if !(1..=k).contains(&r) {
            return Err(format!("--r must lie in 1..={k} for m = {}", args.m));
        }
        let value = hamming_ghw_sequence(args.m)
            .map_err(|e| e.to_string())?
            .nth(r - 1)
            .expect("sequence has k terms");
        emit(&GhwOneOut {
            manifest: RunManifest::new(Some(&f)),
            m: args.m,
            r,
            value,
        });
        return Ok(0);
    }
    if args.m > 16 {
        return Err("printing the full hierarchy is limited to m <= 16; use --r above that".into());
    }
    let ghw: Vec<u64> = hamming_ghw_sequence(args.m)
        .map_err(|e| e.to_string())?
        .collect();
    let brute_match = if args.brute {
        if args.m > 3 {
            return Err("--brute is limited to m <= 3".into());
        }
        let code = hamming_code(args.m).map_err(|e| e.to_string())?;
        let mut all = true;
        for (i, &expected) in ghw.iter().enumerate() {
            let got = code.ghw(i + 1).map_err(|e| e.to_string())? as u64;
            all &= got == expected;
        }
        Some(all)
    } else {
        None
    };
    let failed = brute_match == Some(false);
    emit(&GhwAllOut {
        manifest: RunManifest::new(Some(&f)),
        m: args.m,
        k,
        ghw,
        brute_match,
    });
    Ok(i32::from(failed))
}

#[derive(Serialize)]
struct GcrOut {
    manifest: RunManifest,
    r: usize,
    rho: usize,
    argmax: Vec<SyndromePair>,
    tuples_examined: u64,
}

fn run_gcr(args: GcrArgs) -> Result<i32, String> {
    let f = make_field(args.m, &args.modulus)?;
    let cs = columns_for(&f)?;
    let symmetry = match args.symmetry {
        SymmetryArg::On => Symmetry::On,
        SymmetryArg::Off => Symmetry::Off,
    };
    let out = gcr_exact_with_progress(&cs, args.r, symmetry, &mut |level| {
        eprintln!("covering level {level} exhausted");
    })
    .map_err(|e| e.to_string())?;
    emit(&GcrOut {
        manifest: RunManifest::new(Some(&f)).work("tuples_examined", out.tuples_examined),
        r: args.r,
        rho: out.rho,
        argmax: out.argmax,
        tuples_examined: out.tuples_examined,
    });
    Ok(0)
}

#[derive(Serialize)]
struct DccOut {
    manifest: RunManifest,
    r: usize,
    value: usize,
    witness: Vec<Felt>,
    tuples_examined: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    generic_match: Option<bool>,
}

fn run_dcc(args: DccArgs) -> Result<i32, String> {
    let f = make_field(args.m, &args.modulus)?;
    let cs = columns_for(&f)?;
    let out = d_cc(&cs, args.r).map_err(|e| e.to_string())?;
    let generic_match = if args.generic {
        let sub = bch_code(&f, 2).map_err(|e| e.to_string())?;
        let sup = bch_code(&f, 1).map_err(|e| e.to_string())?;
        let generic = d_cc_generic(&sub, &sup, args.r).map_err(|e| e.to_string())?;
        Some(generic == out.value)
    } else {
        None
    };
    let failed = generic_match == Some(false);
    emit(&DccOut {
        manifest: RunManifest::new(Some(&f)).work("tuples_examined", out.tuples_examined),
        r: args.r,
        value: out.value,
        witness: out.witness,
        tuples_examined: out.tuples_examined,
        generic_match,
    });
    Ok(i32::from(failed))
}

#[derive(Serialize)]
struct CertifyOut {
    manifest: RunManifest,
    certificate: CoverCertificate,
}

#[derive(Serialize)]
struct RecheckOut {
    manifest: RunManifest,
    t: usize,
    verdict: Verdict,
    verified: bool,
}

fn run_certify(args: CertifyArgs) -> Result<i32, String> {
    if let Some(path) = args.recheck {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let cert_value = value.get("certificate").cloned().unwrap_or(value);
        let cert: CoverCertificate = serde_json::from_value(cert_value)
            .map_err(|e| format!("{}: not a certificate: {e}", path.display()))?;
        let verified = verify_certificate(&cert).map_err(|e| e.to_string())?;
        emit(&RecheckOut {
            manifest: RunManifest::new(Some(&cert.field))
                .work("subsets_checked", cert.subsets_checked),
            t: cert.t,
            verdict: cert.verdict,
            verified,
        });
        return Ok(i32::from(!verified));
    }
    let (m, t) = (
        args.m.expect("clap enforces --m"),
        args.t.expect("clap enforces --t"),
    );
    let f = make_field(m, &args.modulus)?;
    let cs = columns_for(&f)?;
    let targets = match (&args.targets, args.targets_from) {
        (Some(items), None) => parse_pairs(&f, items)?,
        (None, Some(TargetsFrom::NoncubeTriple)) => {
            let (y1, y2, y3) = find_noncube_triple(&f).map_err(|e| e.to_string())?;
            [y1, y2, y3]
                .iter()
                .map(|&y| SyndromePair::new(Felt::ZERO, y))
                .collect()
        }
        (None, Some(TargetsFrom::Basis)) => (0..m)
            .map(|i| SyndromePair::new(Felt::ZERO, Felt(1 << i)))
            .collect(),
        _ => return Err("provide exactly one of --targets or --targets-from".into()),
    };
    let cert = certify_no_cover_with_progress(&cs, &targets, t, &mut |n| {
        eprintln!("checked {n} subsets");
    })
    .map_err(|e| e.to_string())?;
    if let Some(path) = &args.out {
        let body = serde_json::to_string_pretty(&cert).expect("certificate serializes");
        std::fs::write(path, body + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let covered = cert.verdict == Verdict::Covered;
    emit(&CertifyOut {
        manifest: RunManifest::new(Some(&f)).work("subsets_checked", cert.subsets_checked),
        certificate: cert,
    });
    Ok(i32::from(covered))
}

#[derive(Serialize)]
struct CoverFoundOut {
    manifest: RunManifest,
    found: bool,
    #[serde(flatten)]
    solution: CoverSolution,
    verified: bool,
}

#[derive(Serialize)]
struct CoverMissingOut {
    manifest: RunManifest,
    found: bool,
}

fn run_cover(args: CoverArgs) -> Result<i32, String> {
    let f = make_field(args.m, &args.modulus)?;
    let cs = columns_for(&f)?;
    let targets = parse_pairs(&f, &args.targets)?;
    let order = match args.seed {
        Some(seed) => ScanOrder::Randomized { seed },
        None => ScanOrder::Sequential,
    };
    let mut manifest = RunManifest::new(Some(&f));
    if let Some(seed) = args.seed {
        manifest = manifest.seed(seed);
    }
    match cover_2kplus1(&cs, &targets, order).map_err(|e| e.to_string())? {
        Some(solution) => {
            let verified =
                verify_solution(&cs, &targets, &solution).map_err(|e| e.to_string())?;
            let columns = solution.columns.len() as u64;
            emit(&CoverFoundOut {
                manifest: manifest.work("columns_used", columns),
                found: true,
                solution,
                verified,
            });
            Ok(i32::from(!verified))
        }
        None => {
            emit(&CoverMissingOut {
                manifest,
                found: false,
            });
            Ok(1)
        }
    }
}

#[derive(Serialize)]
struct CountOut {
    manifest: RunManifest,
    k: usize,
    count: u64,
    lower_bound: i64,
    bound_met: bool,
}

fn run_count(args: CountArgs) -> Result<i32, String> {
    let f = make_field(args.m, &args.modulus)?;
    let cs = columns_for(&f)?;
    let targets = parse_pairs(&f, &args.targets)?;
    let count = count_solutions(&cs, &targets).map_err(|e| e.to_string())?;
    let bound = solution_count_lower_bound(args.m, targets.len() as u32)
        .map_err(|e| e.to_string())?;
    let lower_bound = i64::try_from(bound).expect("bound magnitude below 2^63");
    let bound_met = i128::from(count) >= bound;
    emit(&CountOut {
        manifest: RunManifest::new(Some(&f)).work("x_candidates", f.order()),
        k: targets.len(),
        count,
        lower_bound,
        bound_met,
    });
    Ok(i32::from(!bound_met))
}

#[derive(Serialize)]
struct CharsumOut {
    manifest: RunManifest,
    reports: Vec<CharSumReport>,
}

fn run_charsum(args: CharsumArgs) -> Result<i32, String> {
    let mut reports = Vec::new();
    for &m in &args.m {
        let f = FieldSpec::new(m, None).map_err(|e| e.to_string())?;
        let report = match args.family {
            Family::Multiplicative => {
                let Some(items) = &args.poly else {
                    return Err("--family multiplicative requires --poly".into());
                };
                let poly: Vec<Felt> = items
                    .iter()
                    .map(|s| parse_felt(&f, s))
                    .collect::<Result<_, _>>()?;
                weil_check(&f, &poly).map_err(|e| e.to_string())?
            }
            Family::AdditiveRational => {
                let Some(items) = &args.terms else {
                    return Err("--family additive-rational requires --terms".into());
                };
                let terms = parse_pairs(&f, items)?;
                cochrane_check(&f, &terms).map_err(|e| e.to_string())?
            }
        };
        reports.push(report);
    }
    let all_pass = reports.iter().all(|r| r.pass);
    match args.format {
        Format::Json => {
            emit(&CharsumOut {
                manifest: RunManifest::new(None).work("reports", reports.len() as u64),
                reports,
            });
        }
        Format::Csv => {
            println!("{}", CharSumReport::CSV_HEADER);
            for report in &reports {
                println!("{}", report.csv_row());
            }
        }
    }
    Ok(i32::from(!all_pass))
}

#[derive(Serialize)]
struct VerifyOut {
    manifest: RunManifest,
    lemma: &'static str,
    mode: &'static str,
    checked: u64,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Vec<Felt>>,
}

fn run_verify(args: VerifyArgs) -> Result<i32, String> {
    let f = make_field(args.m, &args.modulus)?;
    let (mode_name, sample) = match args.mode {
        Mode::Exhaustive => ("exhaustive", SampleMode::Exhaustive),
        Mode::Random => (
            "random",
            SampleMode::Random {
                trials: args.trials,
                seed: args.seed,
            },
        ),
    };
    let (lemma_name, outcome) = match args.lemma {
        Lemma::Y1y2y3 => (
            "y1y2y3",
            verify_y1y2y3(&f, sample).map_err(|e| e.to_string())?,
        ),
        Lemma::Cube => (
            "cube",
            verify_cube_lemma(&f, sample).map_err(|e| e.to_string())?,
        ),
        Lemma::Beta4 => (
            "beta4",
            verify_beta4(&f, sample).map_err(|e| e.to_string())?,
        ),
        Lemma::Quadratic => ("quadratic", verify_quadratic(&f, &args)?),
    };
    let mut manifest = RunManifest::new(Some(&f)).work("checked", outcome.checked);
    if matches!(args.mode, Mode::Random) {
        manifest = manifest.seed(args.seed);
    }
    emit(&VerifyOut {
        manifest,
        lemma: lemma_name,
        mode: mode_name,
        checked: outcome.checked,
        holds: outcome.holds,
        counterexample: outcome.counterexample,
    });
    Ok(i32::from(!outcome.holds))
}

/// Checks root count and substitution for x^2 + ax + b over sampled (a, b):
/// two roots when tr(b/a^2) = 0, none otherwise.
fn verify_quadratic(f: &FieldSpec, args: &VerifyArgs) -> Result<VerifyOutcome, String> {
    let check = |a: Felt, b: Felt| -> bool {
        let roots = f.solve_quadratic(a, b);
        let c = f.mul(b, f.inv(f.frobenius(a)).expect("a is nonzero"));
        let expected = if f.trace(c) == 0 { 2 } else { 0 };
        roots.len() == expected
            && roots
                .iter()
                .all(|&x| f.add(f.add(f.frobenius(x), f.mul(a, x)), b).is_zero())
            && (expected == 0 || roots[0] != roots[1])
    };
    let mut out = VerifyOutcome {
        checked: 0,
        holds: true,
        counterexample: None,
    };
    let record = |a: Felt, b: Felt, out: &mut VerifyOutcome| {
        out.checked += 1;
        if !check(a, b) && out.holds {
            out.holds = false;
            out.counterexample = Some(vec![a, b]);
        }
    };
    match args.mode {
        Mode::Exhaustive => {
            if args.m > 12 {
                return Err("exhaustive quadratic verification is limited to m <= 12".into());
            }
            for a in f.nonzero_elements() {
                for b in f.all_elements() {
                    record(a, b, &mut out);
                }
            }
        }
        Mode::Random => {
            let mut rng = Lcg(args.seed ^ 0x9e3779b97f4a7c15);
            let mut drawn = 0;
            while drawn < args.trials {
                let a = Felt(rng.next(args.m));
                if a.is_zero() {
                    continue;
                }
                record(a, Felt(rng.next(args.m)), &mut out);
                drawn += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ClassifyOut {
    manifest: RunManifest,
    n: usize,
    k: usize,
    d: usize,
    classes: Vec<CodeClass>,
}

fn run_classify(args: ClassifyArgs) -> Result<i32, String> {
    let classes = classify_small(args.n, args.k, args.d).map_err(|e| e.to_string())?;
    emit(&ClassifyOut {
        manifest: RunManifest::new(None).work("classes", classes.len() as u64),
        n: args.n,
        k: args.k,
        d: args.d,
        classes,
    });
    Ok(0)
}

#[derive(Serialize)]
struct BoundOut {
    manifest: RunManifest,
    reports: Vec<gcr_core::cover::BoundReport>,
}

fn run_bound(args: BoundArgs) -> Result<i32, String> {
    let reports = match args.m {
        Some(m) => vec![counting_bound(args.k, m).map_err(|e| e.to_string())?],
        None => vec![threshold_report(args.k).map_err(|e| e.to_string())?],
    };
    let all_hold = reports.iter().all(|r| r.hypothesis_holds);
    emit(&BoundOut {
        manifest: RunManifest::new(None).work("reports", reports.len() as u64),
        reports,
    });
    Ok(i32::from(!all_hold))
}
