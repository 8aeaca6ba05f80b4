//! `genrel`: evaluate, expand and verify hypergeometric generating relations.
//!
//! Exit codes: 0 success, 1 a verification mismatch, 2 usage error, 3 domain
//! error (singular prefactor, divergent series, degenerate parameters).

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genrel::derivation::{
    a_closed_form, extract_a_from_rhs, verify_derivation, verify_derivation_mutated,
    CoefficientTable, DerivationMutation,
};
use genrel::exact_arith::{format_rational, parse_rational, parse_rational_list, pochhammer};
use genrel::hypergeom::{pfq_eval_exact, pfq_eval_float, FloatOptions, Params};
use genrel::relations::{
    lhs_series, rhs_series, verify_relation, verify_relation_mutated, Mismatch, Mutation,
    RelationId, VerificationReport,
};
use genrel::sampling::{draw_derivation_params, draw_params, Lcg, DEFAULT_SEED};
use genrel::{CoeffSeq, Error, Rational, RelationParams};
use serde::Serialize;
use serde_json::json;

const EXIT_MISMATCH: u8 = 1;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "genrel",
    version,
    about = "Exact verification of hypergeometric generating relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rising factorial (alpha)_n.
    Poch {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, allow_negative_numbers = true)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate pFq at x, in floating point or exactly with --exact.
    Pfq {
        /// Comma-separated numerator parameters ("" for none).
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        /// Comma-separated denominator parameters ("" for none).
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        /// Argument; a float, or p/q with --exact.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Exact partial sum through x^order instead of a float evaluation.
        #[arg(long, requires = "order")]
        exact: bool,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 1e-15)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_terms: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand one side of a relation as an exact series.
    Expand {
        #[arg(long, value_enum)]
        relation: RelationArg,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        d: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "0")]
        y: Rational,
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify a relation (or the coefficient extraction) over seeded draws.
    Verify(VerifyArgs),
    /// Coefficient table of the odd kernel with the three-way agreement flag.
    Coeffs {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        d: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        y: Rational,
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    relation: VerifyTarget,
    /// Fix d (or a) for every trial instead of drawing it.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    d: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    y: Option<Rational>,
    #[command(flatten)]
    seq: SeqArgs,
    #[arg(long, default_value_t = 32)]
    order: usize,
    /// Largest coefficient index for --relation derivation.
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Deliberately corrupt one side, to check that mismatches are reported.
    #[arg(long, value_enum)]
    mutation: Option<MutationArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    /// Malani right-hand prefactor 1/(1+2d) instead of 1/(1-2d).
    Prefactor,
    /// Malani inner factor (-n+1/2)_m instead of (-n-1/2)_m.
    InnerFactor,
    /// (1/2)_n instead of (3/2)_n in the simplified coefficient.
    LowerHalf,
}

/// The coefficient sequence A: an explicit prefix or a family; all ones when
/// neither is given.
#[derive(Args)]
struct SeqArgs {
    /// Explicit prefix A_0, A_1, ... (comma-separated rationals).
    #[arg(long = "a-explicit", allow_hyphen_values = true, conflicts_with_all = ["a_num", "a_den"])]
    a_explicit: Option<String>,
    /// Upper parameters of A_n = ((a))_n / ((h))_n.
    #[arg(long = "a-num", allow_hyphen_values = true)]
    a_num: Option<String>,
    /// Lower parameters of A_n = ((a))_n / ((h))_n.
    #[arg(long = "a-den", allow_hyphen_values = true)]
    a_den: Option<String>,
}

impl SeqArgs {
    fn given(&self) -> bool {
        self.a_explicit.is_some() || self.a_num.is_some() || self.a_den.is_some()
    }

    fn build(&self) -> Result<CoeffSeq, Failure> {
        if let Some(list) = &self.a_explicit {
            return Ok(CoeffSeq::Explicit(
                parse_rational_list(list).map_err(Failure::Usage)?,
            ));
        }
        let a = parse_rational_list(self.a_num.as_deref().unwrap_or("")).map_err(Failure::Usage)?;
        let h = parse_rational_list(self.a_den.as_deref().unwrap_or("")).map_err(Failure::Usage)?;
        CoeffSeq::family(a, h).map_err(Failure::Domain)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Lhs,
    Rhs,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    BaileyHalf,
    BaileyThreehalf,
    Exton,
    Malani,
}

impl From<RelationArg> for RelationId {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::BaileyHalf => RelationId::BaileyHalf,
            RelationArg::BaileyThreehalf => RelationId::BaileyThreeHalf,
            RelationArg::Exton => RelationId::Exton,
            RelationArg::Malani => RelationId::Malani,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    BaileyHalf,
    BaileyThreehalf,
    Exton,
    Malani,
    Derivation,
}

enum Failure {
    Usage(Error),
    Domain(Error),
    Mismatch,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn relation_params(d: Rational, y: Rational, seq: &SeqArgs) -> Result<RelationParams, Failure> {
    Ok(RelationParams::new(d, y, seq.build()?))
}

fn run_poch(alpha: &Rational, n: u64, format: Format, out: &mut impl Write) -> Result<(), Failure> {
    let value = pochhammer(alpha, n);
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"alpha": format_rational(alpha), "n": n, "value": format_rational(&value)})
        )?,
        Format::Csv => writeln!(out, "alpha,n,value\n{alpha},{n},{value}")?,
        Format::Text => writeln!(out, "{value}")?,
    }
    Ok(())
}

fn run_pfq(
    num: &str,
    den: &str,
    x: &str,
    exact_order: Option<usize>,
    opts: FloatOptions,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let num = parse_rational_list(num).map_err(Failure::Usage)?;
    let den = parse_rational_list(den).map_err(Failure::Usage)?;
    let params = Params::new(num, den)?;
    let value = match exact_order {
        Some(order) => {
            let x = parse_rational(x).map_err(Failure::Usage)?;
            let value = pfq_eval_exact(&params, &x, order)?;
            json!(format_rational(&value))
        }
        None => {
            let x: f64 = x
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(Error::Parse(format!("`{x}` is not a number"))))?;
            json!(pfq_eval_float(&params.to_f64()?, x, opts)?)
        }
    };
    let plain = match &value {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        Format::Json => writeln!(out, "{}", json!({ "value": value }))?,
        Format::Csv => writeln!(out, "value\n{plain}")?,
        Format::Text => writeln!(out, "{plain}")?,
    }
    Ok(())
}

fn run_expand(
    rel: RelationId,
    side: Side,
    p: &RelationParams,
    order: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let series = match side {
        Side::Lhs => lhs_series(rel, p, order)?,
        Side::Rhs => rhs_series(rel, p, order)?,
    };
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&series).expect("series serializes")
        )?,
        Format::Csv => {
            writeln!(out, "degree,coefficient")?;
            for (k, c) in series.coeffs().iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
        }
        Format::Text => writeln!(out, "{series}")?,
    }
    Ok(())
}

fn write_report(
    report: &VerificationReport,
    trial: usize,
    format: Format,
    out: &mut impl Write,
) -> io::Result<()> {
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(report).expect("report serializes")
        ),
        Format::Csv => {
            let degree = report
                .first_mismatch
                .as_ref()
                .map(|m| match m {
                    Mismatch::Sides { degree, .. } => degree.to_string(),
                    Mismatch::Paths { n, .. } => n.to_string(),
                })
                .unwrap_or_default();
            writeln!(
                out,
                "{},{trial},{},{},{degree},{:.3}",
                report.relation, report.order, report.matched, report.elapsed_ms
            )
        }
        Format::Text => {
            let verdict = if report.matched {
                "match".to_string()
            } else {
                format!("MISMATCH {:?}", report.first_mismatch)
            };
            writeln!(
                out,
                "{} trial {trial}: {verdict} (d = {}, y = {}, order {}, {:.2} ms)",
                report.relation, report.params.d, report.params.y, report.order, report.elapsed_ms
            )
        }
    }
}

fn run_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let fixed_seq = if args.seq.given() {
        Some(args.seq.build()?)
    } else {
        None
    };
    let mut rng = Lcg::new(args.seed);
    if let Format::Csv = args.format {
        writeln!(
            out,
            "relation,trial,order,match,first_mismatch_degree,elapsed_ms"
        )?;
    }
    let mut all_match = true;
    for trial in 0..args.trials {
        let mut p = match args.relation {
            VerifyTarget::Derivation => draw_derivation_params(args.n_max, &mut rng),
            target => draw_params(relation_of(target), args.order, &mut rng),
        };
        if let Some(d) = &args.d {
            p.d = d.clone();
        }
        if let Some(y) = &args.y {
            p.y = y.clone();
        }
        if let Some(seq) = &fixed_seq {
            p.a = seq.clone();
        }
        let report = match (args.relation, args.mutation) {
            (VerifyTarget::Derivation, Some(MutationArg::LowerHalf)) => {
                verify_derivation_mutated(&p, args.n_max, DerivationMutation::LowerParameterHalf)?
            }
            (VerifyTarget::Derivation, None) => verify_derivation(&p, args.n_max)?,
            (VerifyTarget::Malani, Some(MutationArg::Prefactor)) => verify_relation_mutated(
                RelationId::Malani,
                &p,
                args.order,
                Some(Mutation::MalaniPrefactor),
            )?,
            (VerifyTarget::Malani, Some(MutationArg::InnerFactor)) => verify_relation_mutated(
                RelationId::Malani,
                &p,
                args.order,
                Some(Mutation::MalaniInnerFactor),
            )?,
            (target, None) => verify_relation(relation_of(target), &p, args.order)?,
            (_, Some(_)) => return Err(Failure::Usage(Error::InvalidArgument(
                "prefactor and inner-factor mutations apply to malani, lower-half to derivation"
                    .into(),
            ))),
        };
        all_match &= report.matched;
        write_report(&report, trial, args.format, out)?;
    }
    if all_match {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn relation_of(target: VerifyTarget) -> RelationId {
    match target {
        VerifyTarget::BaileyHalf => RelationId::BaileyHalf,
        VerifyTarget::BaileyThreehalf => RelationId::BaileyThreeHalf,
        VerifyTarget::Exton => RelationId::Exton,
        VerifyTarget::Malani => RelationId::Malani,
        VerifyTarget::Derivation => unreachable!("derivation has no relation id"),
    }
}

#[derive(Serialize)]
struct CoeffsOutput<'a> {
    #[serde(flatten)]
    table: &'a CoefficientTable,
    agree: bool,
    paths_compared: u8,
}

fn run_coeffs(
    p: &RelationParams,
    n_max: usize,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let table = extract_a_from_rhs(p, n_max)?;
    // the simplified form is undefined where (d)_m (d-1/2)_m vanishes; fall
    // back to comparing the two remaining paths
    let (agree, paths) = match verify_derivation(p, n_max) {
        Ok(report) => (report.matched, 3),
        Err(Error::ZeroDenominator(_)) => {
            let closed = (0..=n_max)
                .map(|n| a_closed_form(p, n))
                .collect::<Result<Vec<_>, _>>()?;
            (closed == table.entries, 2)
        }
        Err(e) => return Err(e.into()),
    };
    match format {
        Format::Json => {
            let output = CoeffsOutput {
                table: &table,
                agree,
                paths_compared: paths,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&output).expect("table serializes")
            )?;
        }
        Format::Csv => {
            writeln!(out, "n,a")?;
            for (n, a) in table.entries.iter().enumerate() {
                writeln!(out, "{n},{a}")?;
            }
        }
        Format::Text => {
            for (n, a) in table.entries.iter().enumerate() {
                writeln!(out, "a[{n}] = {a}")?;
            }
            writeln!(out, "agree ({paths} paths): {agree}")?;
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Poch { alpha, n, format } => run_poch(&alpha, n, format, out),
        Command::Pfq {
            num,
            den,
            x,
            exact,
            order,
            tol,
            max_terms,
            format,
        } => {
            let exact_order = if exact { order } else { None };
            run_pfq(
                &num,
                &den,
                &x,
                exact_order,
                FloatOptions { tol, max_terms },
                format,
                out,
            )
        }
        Command::Expand {
            relation,
            side,
            d,
            y,
            seq,
            order,
            format,
        } => {
            let p = relation_params(d, y, &seq)?;
            run_expand(relation.into(), side, &p, order, format, out)
        }
        Command::Verify(args) => run_verify(&args, out),
        Command::Coeffs {
            d,
            y,
            seq,
            n_max,
            format,
        } => {
            let p = relation_params(d, y, &seq)?;
            run_coeffs(&p, n_max, format, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
