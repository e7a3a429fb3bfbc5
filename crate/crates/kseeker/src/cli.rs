//! Command-line front end. Every subcommand is a thin wrapper over the
//! library: parse flags, build the field, call the operation, serialize.
//!
//! Output is byte-deterministic for a fixed configuration regardless of
//! worker count (results merge in ascending dlog order; wall-clock timing
//! goes to stderr, not into the payload).
//!
//! Exit codes: 0 success, 1 assertion failure, 2 usage error.
//! `KSEEKER_THREADS` overrides the `--workers` flag.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bent::{equivalence_scan, ScanVariant};
use crate::cyclotomic::{special_value_product, special_value_product_forced};
use crate::fields::{FieldSpec, FieldSpecFile};
use crate::kloosterman::{expansion_from_gauss, profile};
use crate::padic::{special_value_expansion, zeta_expansion};
use crate::special::{search_special, subfield_case_analysis, ARange, SearchConfig};
use crate::verify::run_all;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "kseeker",
    version,
    about = "Exact Kloosterman sums, π-adic expansions, special-value searches and bent scans"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and validate a field, emitting its spec
    Field(FieldCmd),
    /// Kloosterman profile of one a: counts, exact value, digits
    Ksum(KsumCmd),
    /// π-adic expansion of ζ
    ExpandZeta(ExpandZetaCmd),
    /// π-adic expansion of 1 - 2/(ζ^b + ζ^{-b})
    SpecialExpand(SpecialExpandCmd),
    /// Exhaustive special-value search over F_q^*
    Search(SearchCmd),
    /// Exact rational chain excluding a ∈ F_{p²} \ F_p
    SubfieldAnalysis(SubfieldCmd),
    /// Regular-bent vs Kloosterman equivalence scan
    BentScan(BentScanCmd),
    /// Product congruence of the special values mod p²
    ProductCheck(ProductCheckCmd),
    /// Run the built-in verification suite (AC1..AC10)
    VerifyPaper(VerifyPaperCmd),
}

#[derive(Args)]
struct FieldOpts {
    /// characteristic (odd prime)
    #[arg(long)]
    p: Option<u64>,
    /// extension degree
    #[arg(long)]
    m: Option<usize>,
    /// modulus coefficients, low degree first, comma-separated
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
    /// read {"p", "m", "modulus"} from a JSON file instead
    #[arg(long)]
    field_file: Option<PathBuf>,
}

impl FieldOpts {
    fn resolve(&self) -> Result<FieldSpec> {
        if let Some(path) = &self.field_file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {}", path.display(), e)))?;
            let file: FieldSpecFile = serde_json::from_str(&text)
                .map_err(|e| Error::Usage(format!("bad field file: {}", e)))?;
            return FieldSpec::from_file(&file);
        }
        match (self.p, self.m) {
            (Some(p), Some(m)) => FieldSpec::new(p, m, self.modulus.clone()),
            _ => Err(Error::Usage(
                "either --field-file or both --p and --m are required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct OutputOpts {
    /// output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputOpts {
    fn require_json(&self) -> Result<()> {
        if self.format != "json" {
            return Err(Error::Usage(
                "this command has no tabular form; use --format json".into(),
            ));
        }
        Ok(())
    }

    fn emit(&self, payload: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, payload)
                .map_err(|e| Error::Usage(format!("cannot write {}: {}", path.display(), e))),
            None => {
                println!("{}", payload.trim_end());
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)
            .map_err(|e| Error::Internal(format!("serialization: {}", e)))?;
        s.push('\n');
        self.emit(&s)
    }
}

#[derive(Args)]
struct FieldCmd {
    #[command(flatten)]
    field: FieldOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct KsumCmd {
    #[command(flatten)]
    field: FieldOpts,
    /// a as an exponent of the field generator
    #[arg(long)]
    a_exp: Option<u64>,
    /// a as a coefficient vector, low degree first
    #[arg(long, value_delimiter = ',')]
    a_coeffs: Option<Vec<u64>>,
    /// number of π-adic digits (≤ 10)
    #[arg(long, default_value_t = 10)]
    digits: u32,
    /// cross-check the digits against another method
    #[arg(long, value_parser = ["none", "gauss", "formula", "all"], default_value = "none")]
    check: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ExpandZetaCmd {
    /// the prime p
    #[arg(long)]
    p: u64,
    /// π-adic precision (≤ 2(p-1))
    #[arg(long, default_value_t = 10)]
    precision: u32,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct SpecialExpandCmd {
    /// the prime p
    #[arg(long)]
    p: u64,
    /// the residue b (nonzero mod p)
    #[arg(long)]
    b: u64,
    /// π-adic precision (≤ 10)
    #[arg(long, default_value_t = 10)]
    precision: u32,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct SearchCmd {
    #[command(flatten)]
    field: FieldOpts,
    /// residues b to test: "all" or a comma-separated list
    #[arg(long, default_value = "all")]
    b: String,
    /// prune with the staged trace filter before exact testing
    #[arg(long)]
    filter: bool,
    /// restrict a to the embedded prime subfield
    #[arg(long)]
    prime_subfield: bool,
    /// worker threads (overridden by KSEEKER_THREADS)
    #[arg(long)]
    workers: Option<usize>,
    /// include wall-clock timing in the report payload
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct SubfieldCmd {
    /// the prime p (≥ 13)
    #[arg(long)]
    p: u64,
    /// the (even) extension degree m
    #[arg(long)]
    m: u64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct BentScanCmd {
    /// the prime p
    #[arg(long)]
    p: u64,
    /// half-degree m (functions live over F_{p^{2m}})
    #[arg(long)]
    m: usize,
    /// Dillon exponent parameter t
    #[arg(long)]
    t: u64,
    /// which equivalence hypotheses to enforce
    #[arg(long, default_value = "auto", value_parser = ["auto", "coprime", "half"])]
    variant: String,
    /// residues b to scan: "all" or a comma-separated list
    #[arg(long, default_value = "all")]
    b: String,
    /// worker threads (overridden by KSEEKER_THREADS)
    #[arg(long)]
    workers: Option<usize>,
    /// include wall-clock timing in the report payload
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct ProductCheckCmd {
    /// the prime p (≥ 13 unless forced)
    #[arg(long)]
    p: u64,
    /// compute outside the stated range p ≥ 13
    #[arg(long)]
    force_small: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct VerifyPaperCmd {
    /// worker threads (overridden by KSEEKER_THREADS)
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_b_set(spec: &str, p: u64) -> Result<Option<Vec<u64>>> {
    if spec == "all" {
        return Ok(None);
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let v: u64 = part
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad b value: {:?}", part)))?;
        out.push(v % p);
    }
    Ok(Some(out))
}

fn worker_count(flag: Option<usize>) -> Option<usize> {
    match std::env::var("KSEEKER_THREADS") {
        Ok(v) => v.parse().ok(),
        Err(_) => flag,
    }
}

fn with_pool<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match worker_count(workers) {
        Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

/// Emitted by `field`.
#[derive(Serialize)]
struct FieldOutput {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    generator: Vec<u64>,
    q: u64,
}

fn cmd_field(cmd: &FieldCmd) -> Result<i32> {
    cmd.output.require_json()?;
    let fs = cmd.field.resolve()?;
    cmd.output.emit_json(&FieldOutput {
        p: fs.p(),
        m: fs.m(),
        modulus: fs.modulus().to_vec(),
        generator: fs.generator().coeffs().to_vec(),
        q: fs.q(),
    })?;
    Ok(EXIT_OK)
}

fn cmd_ksum(cmd: &KsumCmd) -> Result<i32> {
    let fs = cmd.field.resolve()?;
    let a = match (&cmd.a_exp, &cmd.a_coeffs) {
        (Some(k), None) => fs.pow(fs.generator(), *k),
        (None, Some(coeffs)) => fs.from_coeffs(coeffs)?,
        _ => {
            return Err(Error::Usage(
                "exactly one of --a-exp and --a-coeffs is required".into(),
            ))
        }
    };
    let pr = profile(&fs, &a, cmd.digits)?;
    let mut check_ok = true;
    match cmd.check.as_str() {
        "gauss" | "all" => {
            let dg = expansion_from_gauss(&fs, &a)?;
            let n = cmd.digits.min(10) as usize;
            check_ok &= dg.digits_mod_p()[..n] == pr.digits.digits_mod_p()[..n];
        }
        _ => {}
    }
    match cmd.check.as_str() {
        "formula" | "all" => {
            if let Some(f) = &pr.formula_digits {
                let dm = pr.digits.digits_mod_p();
                let pairs = [(2usize, Some(f.a2)), (4, Some(f.a4)), (6, Some(f.a6)), (8, f.a8)];
                for (pos, v) in pairs {
                    if let (Some(v), Some(&d)) = (v, dm.get(pos)) {
                        check_ok &= d == v;
                    }
                }
            }
        }
        _ => {}
    }
    if cmd.output.format == "csv" {
        let mut s = String::from("a_exponent,digits\n");
        s.push_str(&format!(
            "{},{}\n",
            pr.a_exponent.map_or("-".into(), |e| e.to_string()),
            pr.digits
                .digits_mod_p()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        cmd.output.emit(&s)?;
    } else {
        #[derive(Serialize)]
        struct KsumOutput<'a> {
            #[serde(flatten)]
            profile: &'a crate::kloosterman::KloostermanProfile,
            #[serde(skip_serializing_if = "Option::is_none")]
            check: Option<&'a str>,
        }
        cmd.output.emit_json(&KsumOutput {
            profile: &pr,
            check: match cmd.check.as_str() {
                "none" => None,
                _ if check_ok => Some("ok"),
                _ => Some("MISMATCH"),
            },
        })?;
    }
    if a.is_zero() {
        eprintln!("note: a = 0 (flagged edge case, K_q(0) = 0)");
    }
    Ok(if check_ok { EXIT_OK } else { EXIT_ASSERTION })
}

#[derive(Serialize)]
struct ExpansionOutput {
    element: crate::padic::RamifiedElem,
    digits: Vec<u64>,
    digits_mod_p: Vec<u64>,
}

fn cmd_expand_zeta(cmd: &ExpandZetaCmd) -> Result<i32> {
    cmd.output.require_json()?;
    let z = zeta_expansion(cmd.p, cmd.precision)?;
    let dg = z.digits(cmd.precision as usize)?;
    cmd.output.emit_json(&ExpansionOutput {
        digits: dg.digits.clone(),
        digits_mod_p: dg.digits_mod_p(),
        element: z,
    })?;
    Ok(EXIT_OK)
}

fn cmd_special_expand(cmd: &SpecialExpandCmd) -> Result<i32> {
    cmd.output.require_json()?;
    let e = special_value_expansion(cmd.p, cmd.b, cmd.precision)?;
    let dg = e.digits(cmd.precision as usize)?;
    cmd.output.emit_json(&ExpansionOutput {
        digits: dg.digits.clone(),
        digits_mod_p: dg.digits_mod_p(),
        element: e,
    })?;
    Ok(EXIT_OK)
}

fn cmd_search(cmd: &SearchCmd) -> Result<i32> {
    let fs = cmd.field.resolve()?;
    let cfg = SearchConfig {
        bs: parse_b_set(&cmd.b, fs.p())?,
        use_filter: cmd.filter,
        a_range: if cmd.prime_subfield {
            ARange::PrimeSubfield
        } else {
            ARange::All
        },
    };
    let start = Instant::now();
    let mut report = with_pool(cmd.workers, || search_special(&fs, &cfg))?;
    let elapsed = start.elapsed().as_millis() as u64;
    eprintln!("search: {} ms", elapsed);
    if cmd.timing {
        report.timing_ms = Some(elapsed);
    }
    if cmd.output.format == "csv" {
        let mut s = String::from("a_exponent,b\n");
        for h in &report.hits {
            s.push_str(&format!("{},{}\n", h.a_exponent, h.b));
        }
        cmd.output.emit(&s)?;
    } else {
        cmd.output.emit_json(&report)?;
    }
    Ok(EXIT_OK)
}

fn cmd_subfield(cmd: &SubfieldCmd) -> Result<i32> {
    cmd.output.require_json()?;
    let report = subfield_case_analysis(cmd.p, cmd.m)?;
    cmd.output.emit_json(&report)?;
    Ok(EXIT_OK)
}

fn cmd_bent_scan(cmd: &BentScanCmd) -> Result<i32> {
    let variant = match cmd.variant.as_str() {
        "coprime" => ScanVariant::TCoprime,
        "half" => ScanVariant::HalfTCoprime,
        _ => ScanVariant::detect(cmd.p, cmd.m, cmd.t)?,
    };
    let bs = parse_b_set(&cmd.b, cmd.p)?;
    let start = Instant::now();
    let mut summary =
        with_pool(cmd.workers, || equivalence_scan(cmd.p, cmd.m, cmd.t, variant, bs))?;
    let elapsed = start.elapsed().as_millis() as u64;
    eprintln!("bent-scan: {} ms", elapsed);
    if cmd.timing {
        summary.timing_ms = Some(elapsed);
    }
    if cmd.output.format == "csv" {
        let mut s = String::from("b,bent_count\n");
        for (b, n) in summary.b_values.iter().zip(&summary.bent_census) {
            s.push_str(&format!("{},{}\n", b, n));
        }
        cmd.output.emit(&s)?;
    } else {
        cmd.output.emit_json(&summary)?;
    }
    Ok(if summary.disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_ASSERTION
    })
}

fn cmd_product_check(cmd: &ProductCheckCmd) -> Result<i32> {
    cmd.output.require_json()?;
    let r = if cmd.force_small {
        special_value_product_forced(cmd.p)?
    } else {
        special_value_product(cmd.p)?
    };
    let congruent = r.congruent;
    cmd.output.emit_json(&r)?;
    Ok(if congruent { EXIT_OK } else { EXIT_ASSERTION })
}

fn cmd_verify_paper(cmd: &VerifyPaperCmd) -> i32 {
    let results = with_pool(cmd.workers, run_all);
    let mut failed = Vec::new();
    println!("{:<5} {:<6} {:>8}  criterion", "id", "state", "time");
    for c in &results {
        println!(
            "{:<5} {:<6} {:>6}ms  {}",
            c.id,
            if c.pass { "pass" } else { "FAIL" },
            c.millis,
            c.description
        );
        if !c.pass {
            failed.push((c.id, c.detail.clone()));
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", results.len());
        EXIT_OK
    } else {
        for (id, detail) in &failed {
            eprintln!("FAILED {}: {}", id, detail);
        }
        EXIT_ASSERTION
    }
}

/// Parse argv and dispatch. Returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Field(c) => cmd_field(c),
        Command::Ksum(c) => cmd_ksum(c),
        Command::ExpandZeta(c) => cmd_expand_zeta(c),
        Command::SpecialExpand(c) => cmd_special_expand(c),
        Command::Search(c) => cmd_search(c),
        Command::SubfieldAnalysis(c) => cmd_subfield(c),
        Command::BentScan(c) => cmd_bent_scan(c),
        Command::ProductCheck(c) => cmd_product_check(c),
        Command::VerifyPaper(c) => return cmd_verify_paper(c),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            EXIT_USAGE
        }
    }
}
