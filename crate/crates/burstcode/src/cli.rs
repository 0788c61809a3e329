//! Command-line surface: ball sizes, decoding against instance files,
//! exhaustive verification, redundancy tables, parameter search, and
//! channel simulation.
//!
//! Exit codes: `0` success, `1` domain failure (decode failure, failed
//! verification), `2` usage or malformed input. Outputs on stdout are
//! pure functions of the arguments and instance file; timing goes to
//! stderr and sampled modes print their seed.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::applications::{
    AbsorptionACode, AbsorptionBCode, GenieLocator, InversionCode, LeqBurstDelCode, LocalizedCode,
    LocatorOracle, TrivialLocator,
};
use crate::bounds;
use crate::channel::{
    apply_absorption_a, apply_absorption_b, apply_burst, apply_inversion,
    apply_localized_deletions, ball, is_burst_outcome, BurstEvent,
};
use crate::codes::{param_search, BurstCode, Family};
use crate::error::{CodeError, Result};
use crate::instance::{AnyCode, Instance, LocatorKind};
use crate::permutation::{
    apply_stable_burst_deletion, checked_factorial, projection_ball_check,
    projection_distinguishability_check, LeqTbsdCode, Permutation, TbsdCode,
};
use crate::verify::{
    check_disjoint_balls, dual_burst_check, enumerate_code, enumerate_words, redundancy_table,
    roundtrip, Check, RedundancyRow, VerificationReport, DEFAULT_ENUMERATION_CAP,
};
use crate::word::Word;

#[derive(Debug, Parser)]
#[command(
    name = "burstcode",
    version,
    about = "Burst error-correcting codes: balls, decoders, exhaustive verification, simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Cap on the number of words an exhaustive sweep may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,

    /// Worker threads for exhaustive sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ball size, members, and membership queries.
    Ball(BallArgs),
    /// Decode a received word against a code-instance file.
    Decode(DecodeArgs),
    /// Exhaustively verify a code instance or a family at given dimensions.
    Verify(VerifyArgs),
    /// Redundancy table: best class size vs the sphere-packing bound.
    Table(TableArgs),
    /// Exhaustive search for the family's largest parameter class.
    Search(SearchArgs),
    /// Apply a burst event (explicit or seeded-random) to a word.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct BallArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    s: usize,
    /// List the ball members, one per line.
    #[arg(long)]
    list: bool,
    /// Ball center (default: the all-zero word).
    #[arg(long)]
    center: Option<String>,
    /// Print whether this word lies in the ball instead of the size.
    #[arg(long)]
    contains: Option<String>,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    /// Code-instance file (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// The received word (digit string for q <= 10, comma-separated
    /// otherwise; permutation families take comma-separated values).
    word: String,
    /// Error window "lo,hi" (1-based, inclusive) from a locator.
    #[arg(long)]
    window: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Code-instance file (JSON); alternative to a family sweep.
    #[arg(long, conflicts_with_all = ["family", "n", "q", "t", "s", "p", "best"])]
    instance: Option<PathBuf>,
    /// Family to sweep: c22, ctt, bin_tt1, qary_tt1, cts, inversion,
    /// absorption_a, absorption_b, leq_burst_del, localized, tbsd, leq_tbsd.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Window-length bound P for the P-bounded families.
    #[arg(long)]
    p: Option<usize>,
    /// Verify the largest parameter class instead of the all-zero class.
    #[arg(long)]
    best: bool,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// One of: c22, ctt, bin_tt1, qary_tt1, cts.
    #[arg(long)]
    family: String,
    /// Comma-separated lengths, e.g. "8,12,16".
    #[arg(long)]
    n: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// One of: c22, ctt, bin_tt1, qary_tt1, cts.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Save the winning instance as a code-instance file.
    #[arg(long)]
    write_instance: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    q: u64,
    /// The word to corrupt.
    word: String,
    /// Burst start position (1-based) for an explicit event.
    #[arg(long, conflicts_with = "random")]
    pos: Option<usize>,
    /// Number of deleted symbols.
    #[arg(long)]
    t: Option<usize>,
    /// Replacement symbols for an explicit event (word text; empty for a
    /// pure deletion).
    #[arg(long, conflicts_with = "random", default_value = "")]
    ins: String,
    /// Draw the event uniformly at random instead.
    #[arg(long, requires = "s")]
    random: bool,
    /// Number of inserted symbols for --random.
    #[arg(long)]
    s: Option<usize>,
    /// RNG seed for --random (default: from system entropy).
    #[arg(long)]
    seed: Option<u64>,
}

/// Parses arguments, runs the selected command, and returns the process
/// exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // a second configuration attempt in one process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    match execute(&cli) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e}");
            classify(&e)
        }
    }
}

fn classify(e: &CodeError) -> i32 {
    match e {
        CodeError::DecodeFailure(_)
        | CodeError::AmbiguousDecode(_)
        | CodeError::LengthMismatch { .. }
        | CodeError::NotInLiftImage(_) => 1,
        _ => 2,
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Ball(args) => cmd_ball(args, cli.format),
        Command::Decode(args) => cmd_decode(args, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format, cli.cap),
        Command::Table(args) => cmd_table(args, cli.format, cli.cap),
        Command::Search(args) => cmd_search(args, cli.format, cli.cap),
        Command::Simulate(args) => cmd_simulate(args, cli.format),
    }
}

fn parse_window(text: &str) -> Result<(usize, usize)> {
    let err = || CodeError::ParseError {
        input: text.to_string(),
        reason: "expected a window \"lo,hi\" of 1-based positions".into(),
    };
    let (lo, hi) = text.split_once(',').ok_or_else(err)?;
    Ok((lo.trim().parse().map_err(|_| err())?, hi.trim().parse().map_err(|_| err())?))
}

fn parse_lengths(text: &str) -> Result<Vec<usize>> {
    let ns = text
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| CodeError::ParseError {
                input: text.to_string(),
                reason: format!("invalid length {part:?}"),
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    if ns.is_empty() {
        return Err(CodeError::InvalidParams("need at least one length n".into()));
    }
    Ok(ns)
}

/// Resolves a simple-family name and its `(q, t, s)` conventions.
fn core_family(
    name: &str,
    q: Option<u64>,
    t: Option<usize>,
    s: Option<usize>,
) -> Result<(Family, u64, usize, usize)> {
    let family: Family = name.parse()?;
    let need = |v: Option<usize>, key: &str| {
        v.ok_or_else(|| CodeError::InvalidParams(format!("family {name} requires --{key}")))
    };
    let fixed = |got: Option<usize>, want: usize, key: &str| -> Result<usize> {
        match got {
            Some(v) if v != want => {
                Err(CodeError::InvalidParams(format!("family {name} fixes {key}={want}, got {v}")))
            }
            _ => Ok(want),
        }
    };
    let (t, s) = match family {
        Family::C22 => (fixed(t, 2, "t")?, fixed(s, 2, "s")?),
        Family::Ctt => {
            let t = need(t, "t")?;
            (t, fixed(s, t, "s")?)
        }
        Family::BinTT1 | Family::QaryTT1 => {
            let t = need(t, "t")?;
            (t, fixed(s, t.saturating_sub(1), "s")?)
        }
        Family::Cts => (need(t, "t")?, need(s, "s")?),
    };
    let q = match family {
        Family::BinTT1 => match q {
            None | Some(2) => 2,
            Some(other) => {
                return Err(CodeError::InvalidParams(format!(
                    "family bin_tt1 is binary-only, got q={other}"
                )))
            }
        },
        _ => q.ok_or_else(|| CodeError::InvalidParams(format!("family {name} requires --q")))?,
    };
    Ok((family, q, t, s))
}

// ---------------------------------------------------------------- ball

fn cmd_ball(args: &BallArgs, format: Format) -> Result<i32> {
    let (q, n, t, s) = (args.q, args.n, args.t, args.s);
    let center = match &args.center {
        Some(text) => Word::parse(text, q)?,
        None => Word::new(q, vec![0; n])?,
    };
    if center.len() != n {
        return Err(CodeError::LengthMismatch { expected: n, got: center.len() });
    }

    if let Some(text) = &args.contains {
        let z = Word::parse(text, q)?;
        let contained = is_burst_outcome(&center, &z, t, s);
        match format {
            Format::Text => println!("{contained}"),
            Format::Json => println!(
                "{}",
                json!({"q": q, "n": n, "t": t, "s": s, "center": center.to_string(),
                       "word": z.to_string(), "contains": contained})
            ),
            Format::Csv => {
                println!("q,n,t,s,center,word,contains");
                println!("{q},{n},{t},{s},{center},{z},{contained}");
            }
        }
        return Ok(0);
    }

    let ball = ball(&center, t, s)?;
    if s >= 1 {
        let formula = bounds::ball_size_formula(n, q, t, s)?;
        if formula != ball.size() as u128 {
            return Err(CodeError::InvalidParams(format!(
                "enumerated ball size {} disagrees with the closed form {formula}; \
                 this is a bug",
                ball.size()
            )));
        }
    }
    match format {
        Format::Text => {
            println!("{}", ball.size());
            if args.list {
                for member in ball.members() {
                    println!("{member}");
                }
            }
        }
        Format::Json => {
            let mut value = json!({"q": q, "n": n, "t": t, "s": s,
                                   "center": center.to_string(), "size": ball.size()});
            if args.list {
                let members: Vec<String> = ball.members().iter().map(|w| w.to_string()).collect();
                value["members"] = json!(members);
            }
            println!("{value}");
        }
        Format::Csv => {
            println!("q,n,t,s,size");
            println!("{q},{n},{t},{s},{}", ball.size());
        }
    }
    Ok(0)
}

// -------------------------------------------------------------- decode

fn cmd_decode(args: &DecodeArgs, format: Format) -> Result<i32> {
    let instance = Instance::load(&args.instance)?;
    let code = instance.build()?;
    let window = args.window.as_deref().map(parse_window).transpose()?;
    let decoded = code.decode_text(&args.word, window)?;
    match format {
        Format::Text => println!("{decoded}"),
        Format::Json => println!(
            "{}",
            json!({"family": code.family_name(), "received": args.word, "decoded": decoded})
        ),
        Format::Csv => {
            println!("family,received,decoded");
            println!("{},{},{}", code.family_name(), args.word, decoded);
        }
    }
    Ok(0)
}

// -------------------------------------------------------------- verify

fn cmd_verify(args: &VerifyArgs, format: Format, cap: u128) -> Result<i32> {
    let report = if let Some(path) = &args.instance {
        let any = Instance::load(path)?.build()?;
        verify_any(&any, cap)?
    } else {
        let family = args.family.as_deref().ok_or_else(|| {
            CodeError::InvalidParams("pass --instance FILE or --family NAME".into())
        })?;
        let n =
            args.n.ok_or_else(|| CodeError::InvalidParams("a family sweep requires --n".into()))?;
        let any = build_sweep_code(family, n, args.q, args.t, args.s, args.p, args.best, cap)?;
        verify_any(&any, cap)?
    };
    print_report(&report, format);
    Ok(if report.all_pass() { 0 } else { 1 })
}

/// Builds the code to verify: the all-zero (or identity) class by
/// default, the largest class under `--best` for the simple families.
#[allow(clippy::too_many_arguments)]
fn build_sweep_code(
    family: &str,
    n: usize,
    q: Option<u64>,
    t: Option<usize>,
    s: Option<usize>,
    p: Option<usize>,
    best: bool,
    cap: u128,
) -> Result<AnyCode> {
    let need_q =
        || q.ok_or_else(|| CodeError::InvalidParams(format!("family {family} requires --q")));
    let need_t =
        || t.ok_or_else(|| CodeError::InvalidParams(format!("family {family} requires --t")));
    let no_q = || match q {
        Some(_) => Err(CodeError::InvalidParams(format!("family {family} does not take --q"))),
        None => Ok(()),
    };
    if best && Family::ALL.iter().all(|f| f.name() != family) {
        return Err(CodeError::InvalidParams(
            "--best is supported for the c22, ctt, bin_tt1, qary_tt1, cts families".into(),
        ));
    }
    Ok(match family {
        "c22" | "ctt" | "bin_tt1" | "qary_tt1" | "cts" => {
            let (fam, q, t, s) = core_family(family, q, t, s)?;
            let code = if best {
                param_search(fam, n, q, t, s, p, cap)?.code
            } else {
                BurstCode::for_word(fam, &Word::new(q, vec![0; n])?, t, s, p)?
            };
            AnyCode::Burst(code)
        }
        "inversion" => {
            let zero = Word::new(need_q()?, vec![0; n])?;
            AnyCode::Inversion(InversionCode::for_word(&zero, need_t()?)?)
        }
        "absorption_a" => {
            let zero = Word::new(need_q()?, vec![0; n])?;
            AnyCode::AbsorptionA(AbsorptionACode::for_word(&zero)?)
        }
        "absorption_b" => {
            let zero = Word::new(need_q()?, vec![0; n])?;
            AnyCode::AbsorptionB(AbsorptionBCode::for_word(&zero)?)
        }
        "leq_burst_del" => {
            let zero = Word::new(need_q()?, vec![0; n])?;
            AnyCode::LeqBurstDel(
                LeqBurstDelCode::for_word(&zero, need_t()?, p)?,
                if p.is_some() { LocatorKind::Genie } else { LocatorKind::Trivial },
            )
        }
        "localized" => {
            let zero = Word::new(need_q()?, vec![0; n])?;
            AnyCode::Localized(
                LocalizedCode::for_word(&zero, need_t()?, p)?,
                if p.is_some() { LocatorKind::Genie } else { LocatorKind::Trivial },
            )
        }
        "tbsd" => {
            no_q()?;
            AnyCode::Tbsd(TbsdCode::for_permutation(&Permutation::identity(n), need_t()?)?)
        }
        "leq_tbsd" => {
            no_q()?;
            AnyCode::LeqTbsd(LeqTbsdCode::for_permutation(&Permutation::identity(n), need_t()?, p)?)
        }
        other => {
            return Err(CodeError::ParseError {
                input: other.into(),
                reason: "unknown family".into(),
            })
        }
    })
}

fn cap_check(space: u128, cap: u128) -> Result<()> {
    if space > cap {
        return Err(CodeError::EnumerationCapExceeded { needed: space, cap });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn word_report_frame(
    family: &str,
    n: usize,
    q: u64,
    t: usize,
    s: usize,
    p: Option<usize>,
    size: usize,
    bound_bits: f64,
    checks: Vec<Check>,
    started: Instant,
) -> Result<VerificationReport> {
    Ok(VerificationReport {
        family: family.into(),
        n,
        q,
        t,
        s,
        p,
        code_size: size,
        redundancy_bits: bounds::code_redundancy(n, q, size.max(1) as u128)?,
        bound_bits,
        checks,
        wall_time: started.elapsed(),
    })
}

fn verify_any(any: &AnyCode, cap: u128) -> Result<VerificationReport> {
    let started = Instant::now();
    match any {
        AnyCode::Burst(code) => verify_burst(code, cap, started),
        AnyCode::Inversion(code) => {
            let inner = code.inner();
            let (n, q, t) = (inner.n(), inner.q(), inner.t());
            let members = enumerate_members(n, q, cap, |x| code.is_member(x))?;
            let events = |x: &Word| {
                let mut events = Vec::new();
                for len in 2..=t.min(n) {
                    for i in 1..=n - len + 1 {
                        if let Ok(z) = apply_inversion(x, i, len) {
                            events.push((format!("i={i} len={len}"), z));
                        }
                    }
                }
                events
            };
            let checks =
                vec![roundtrip("inversion-roundtrip", &members, |z| code.decode(z), events)];
            word_report_frame("inversion", n, q, t, t, None, members.len(), 0.0, checks, started)
        }
        AnyCode::AbsorptionA(code) => {
            let inner = code.inner();
            let (n, q) = (inner.n(), inner.q());
            let members = enumerate_members(n, q, cap, |x| code.is_member(x))?;
            let events = |x: &Word| {
                (1..=n)
                    .filter_map(|i| apply_absorption_a(x, i).ok().map(|z| (format!("i={i}"), z)))
                    .collect()
            };
            let checks =
                vec![roundtrip("absorption-a-roundtrip", &members, |z| code.decode(z), events)];
            word_report_frame("absorption_a", n, q, 2, 1, None, members.len(), 0.0, checks, started)
        }
        AnyCode::AbsorptionB(code) => {
            let inner = code.inner();
            let (n, q) = (inner.n, inner.q);
            let members = enumerate_members(n, q, cap, |x| code.is_member(x))?;
            let events = |x: &Word| {
                let mut events = Vec::new();
                for i in 1..=n {
                    for new_val in 0..x.sym(i as i64) {
                        if let Ok(z) = apply_absorption_b(x, i, new_val) {
                            events.push((format!("i={i} v={new_val}"), z));
                        }
                    }
                }
                events
            };
            let checks =
                vec![roundtrip("absorption-b-roundtrip", &members, |z| code.decode(z), events)];
            word_report_frame("absorption_b", n, q, 2, 2, None, members.len(), 0.0, checks, started)
        }
        AnyCode::LeqBurstDel(code, locator) => {
            let (n, q, t, p) = (code.n(), code.q(), code.t(), code.p());
            let members = enumerate_members(n, q, cap, |x| code.is_member(x, &TrivialLocator))?;
            let check = composite_roundtrip(
                "leq-burst-del-roundtrip",
                &members,
                *locator,
                p,
                |x| {
                    let mut events = Vec::new();
                    for i in 1..=t {
                        for pos in 1..=n - i + 1 {
                            let event = BurstEvent { pos, t: i, ins: vec![] };
                            if let Ok(z) = apply_burst(x, &event) {
                                events.push((format!("i={i} pos={pos}"), (pos, pos + i - 1), z));
                            }
                        }
                    }
                    events
                },
                |z, locator| code.decode(z, locator),
            );
            word_report_frame(
                "leq_burst_del",
                n,
                q,
                t,
                0,
                p,
                members.len(),
                0.0,
                vec![check],
                started,
            )
        }
        AnyCode::Localized(code, locator) => {
            let (n, q, t, p) = (code.n(), code.q(), code.t(), code.p());
            let members = enumerate_members(n, q, cap, |x| code.is_member(x, &TrivialLocator))?;
            let offset_sets = nonempty_subsets(t);
            let check = composite_roundtrip(
                "localized-roundtrip",
                &members,
                *locator,
                p,
                |x| {
                    let mut events = Vec::new();
                    for start in 1..=n.saturating_sub(t) + 1 {
                        for offsets in &offset_sets {
                            if let Ok(z) = apply_localized_deletions(x, start, t, offsets) {
                                events.push((
                                    format!("start={start} offsets={offsets:?}"),
                                    (start, start + t - 1),
                                    z,
                                ));
                            }
                        }
                    }
                    events
                },
                |z, locator| code.decode(z, locator),
            );
            word_report_frame("localized", n, q, t, 0, p, members.len(), 0.0, vec![check], started)
        }
        AnyCode::Tbsd(code) => {
            let (n, t) = (code.n(), code.t());
            let members = permutation_members(n, cap, |sigma| code.is_member(sigma))?;
            let mut checks =
                vec![projection_ball_check(n, t)?, projection_distinguishability_check(n, t)?];
            checks.push(permutation_roundtrip("tbsd-roundtrip", &members, t, t, |z, _| {
                code.decode(z)
            }));
            permutation_report("tbsd", n, t, t, None, members.len(), checks, started)
        }
        AnyCode::LeqTbsd(code) => {
            let (n, t, p) = (code.n(), code.t(), code.p());
            let members = permutation_members(n, cap, |sigma| code.is_member(sigma))?;
            let mut checks = Vec::new();
            for i in 1..=t {
                if n >= 3 * i {
                    checks.push(projection_ball_check(n, i)?);
                    checks.push(projection_distinguishability_check(n, i)?);
                }
            }
            checks.push(permutation_roundtrip("leq-tbsd-roundtrip", &members, 1, t, |z, w| {
                code.decode(z, w)
            }));
            permutation_report("leq_tbsd", n, t, t, p, members.len(), checks, started)
        }
    }
}

fn verify_burst(code: &BurstCode, cap: u128, started: Instant) -> Result<VerificationReport> {
    let (n, q, t, s, p) = (code.n(), code.q(), code.t(), code.s(), code.p());
    let members = enumerate_members(n, q, cap, |x| code.is_member(x))?;
    // A window-length bound P < n weakens the contract: correction is
    // promised only for bursts confined to a known window of length P,
    // so the global checks apply only to unbounded instances.
    let global = p.is_none_or(|p| p >= n);
    let mut checks = Vec::new();
    if global {
        checks.push(check_disjoint_balls(&members, t, s)?);
        checks.push(roundtrip(
            "decode-roundtrip",
            &members,
            |z| code.decode(z, None),
            |x| burst_events(x, t, s),
        ));
    }
    if let Some(p) = p {
        checks.push(windowed_burst_roundtrip(code, &members, p));
    }
    if global && t != s {
        checks.push(dual_burst_check(&members, t, s)?);
    }
    let bound_bits = if s >= 1 { bounds::sphere_packing_redundancy(n, q, t, s)? } else { 0.0 };
    word_report_frame(
        code.family().name(),
        n,
        q,
        t,
        s,
        p,
        members.len(),
        bound_bits,
        checks,
        started,
    )
}

fn enumerate_members(
    n: usize,
    q: u64,
    cap: u128,
    member: impl Fn(&Word) -> Result<bool>,
) -> Result<Vec<Word>> {
    enumerate_code(|x| member(x).unwrap_or(false), n, q, cap)
}

fn permutation_members(
    n: usize,
    cap: u128,
    member: impl Fn(&Permutation) -> Result<bool>,
) -> Result<Vec<Permutation>> {
    let total = checked_factorial(n as u64)?;
    cap_check(total.into(), cap)?;
    let mut members = Vec::new();
    for rank in 1..=total {
        let sigma = Permutation::from_lex_rank(rank, n)?;
        if member(&sigma)? {
            members.push(sigma);
        }
    }
    Ok(members)
}

#[allow(clippy::too_many_arguments)]
fn permutation_report(
    family: &str,
    n: usize,
    t: usize,
    s: usize,
    p: Option<usize>,
    size: usize,
    checks: Vec<Check>,
    started: Instant,
) -> Result<VerificationReport> {
    let space_bits: f64 = (2..=n as u64).map(|i| (i as f64).log2()).sum();
    Ok(VerificationReport {
        family: family.into(),
        n,
        q: checked_factorial(t as u64 + 1)?,
        t,
        s,
        p,
        code_size: size,
        redundancy_bits: space_bits - (size.max(1) as f64).log2(),
        bound_bits: 0.0,
        checks,
        wall_time: started.elapsed(),
    })
}

/// All `(t, s)`-burst corruptions of `x`, labeled by their event.
fn burst_events(x: &Word, t: usize, s: usize) -> Vec<(String, Word)> {
    let n = x.len();
    let positions: Vec<usize> = if t == 0 {
        (1..=n + 1).collect()
    } else if t <= n {
        (1..=n - t + 1).collect()
    } else {
        Vec::new()
    };
    let mut events = Vec::new();
    for pos in positions {
        for ins in enumerate_words(x.q(), s) {
            let event = BurstEvent { pos, t, ins: ins.symbols().to_vec() };
            if let Ok(z) = apply_burst(x, &event) {
                events.push((format!("pos={pos} ins={ins}"), z));
            }
        }
    }
    events
}

/// Roundtrip for a P-bounded simple code: every event is decoded with a
/// genie window of length `P` covering it.
fn windowed_burst_roundtrip(code: &BurstCode, members: &[Word], p: usize) -> Check {
    let name = format!("windowed-roundtrip P={p}");
    let (t, s) = (code.t(), code.s());
    let witness = members
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            let n = x.len();
            for pos in 1..=n.saturating_sub(t) + 1 {
                for ins in enumerate_words(x.q(), s) {
                    let event = BurstEvent { pos, t, ins: ins.symbols().to_vec() };
                    let Ok(z) = apply_burst(x, &event) else { continue };
                    let window = match GenieLocator::covering(n, p, pos, pos + t - 1) {
                        Ok(genie) => genie.window,
                        Err(e) => return Some((idx, format!("x={x} pos={pos} error={e}"))),
                    };
                    match code.decode(&z, Some(window)) {
                        Ok(got) if &got == x => {}
                        Ok(got) => {
                            return Some((idx, format!("x={x} pos={pos} decoded={got}")));
                        }
                        Err(e) => return Some((idx, format!("x={x} pos={pos} error={e}"))),
                    }
                }
            }
            None
        })
        .min_by_key(|(idx, _)| *idx);
    match witness {
        None => Check::pass(name),
        Some((_, w)) => Check::fail(name, w),
    }
}

/// Roundtrip for the locator-consulting composites. Events carry their
/// error span; a genie locator gets a window covering that span, the
/// trivial locator is handed the whole word.
fn composite_roundtrip<E, D>(
    name: &str,
    members: &[Word],
    locator: LocatorKind,
    p: Option<usize>,
    events: E,
    decode: D,
) -> Check
where
    E: Fn(&Word) -> Vec<(String, (usize, usize), Word)> + Sync,
    D: Fn(&Word, &dyn LocatorOracle) -> Result<Word> + Sync,
{
    let witness = members
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            let n = x.len();
            for (label, (err_lo, err_hi), z) in events(x) {
                let result = match locator {
                    LocatorKind::Trivial => decode(&z, &TrivialLocator),
                    LocatorKind::Genie => {
                        match GenieLocator::covering(n, p.unwrap_or(n), err_lo, err_hi) {
                            Ok(genie) => decode(&z, &genie),
                            Err(e) => Err(e),
                        }
                    }
                };
                match result {
                    Ok(got) if &got == x => {}
                    Ok(got) => return Some((idx, format!("x={x} event={label} decoded={got}"))),
                    Err(e) => return Some((idx, format!("x={x} event={label} error={e}"))),
                }
            }
            None
        })
        .min_by_key(|(idx, _)| *idx);
    match witness {
        None => Check::pass(name.to_string()),
        Some((_, w)) => Check::fail(name.to_string(), w),
    }
}

/// Roundtrip for permutation codes over bursts of `lo_i..=hi_i` stable
/// deletions at every position.
fn permutation_roundtrip<D>(
    name: &str,
    members: &[Permutation],
    lo_i: usize,
    hi_i: usize,
    decode: D,
) -> Check
where
    D: Fn(&[u64], Option<(usize, usize)>) -> Result<Permutation> + Sync,
{
    let witness = members
        .par_iter()
        .enumerate()
        .filter_map(|(idx, sigma)| {
            let n = sigma.len();
            for i in lo_i..=hi_i {
                for pos in 1..=n - i + 1 {
                    let z = match apply_stable_burst_deletion(sigma, pos, i) {
                        Ok(z) => z,
                        Err(e) => return Some((idx, format!("sigma={sigma} error={e}"))),
                    };
                    match decode(&z, None) {
                        Ok(got) if &got == sigma => {}
                        Ok(got) => {
                            return Some((
                                idx,
                                format!("sigma={sigma} i={i} pos={pos} decoded={got}"),
                            ));
                        }
                        Err(e) => {
                            return Some((idx, format!("sigma={sigma} i={i} pos={pos} error={e}")));
                        }
                    }
                }
            }
            None
        })
        .min_by_key(|(idx, _)| *idx);
    match witness {
        None => Check::pass(name.to_string()),
        Some((_, w)) => Check::fail(name.to_string(), w),
    }
}

fn nonempty_subsets(t: usize) -> Vec<Vec<usize>> {
    (1..(1u32 << t)).map(|mask| (0..t).filter(|&j| mask & (1 << j) != 0).collect()).collect()
}

fn print_report(report: &VerificationReport, format: Format) {
    match format {
        Format::Text => {
            println!(
                "family={} n={} q={} t={} s={}{} size={} redundancy={:.4} bound={:.4}",
                report.family,
                report.n,
                report.q,
                report.t,
                report.s,
                report.p.map_or(String::new(), |p| format!(" P={p}")),
                report.code_size,
                report.redundancy_bits,
                report.bound_bits,
            );
            for check in &report.checks {
                match &check.counterexample {
                    None => {
                        println!("  [{}] {}", if check.pass { "pass" } else { "FAIL" }, check.name)
                    }
                    Some(w) => println!(
                        "  [{}] {}: {}",
                        if check.pass { "pass" } else { "FAIL" },
                        check.name,
                        w
                    ),
                }
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        }
        Format::Csv => {
            println!("{}", VerificationReport::csv_header());
            for row in report.csv_rows() {
                println!("{row}");
            }
        }
    }
    eprintln!("wall time: {:.3}s", report.wall_time.as_secs_f64());
}

// --------------------------------------------------------------- table

fn cmd_table(args: &TableArgs, format: Format, cap: u128) -> Result<i32> {
    let ns = parse_lengths(&args.n)?;
    let (family, q, t, s) = core_family(&args.family, args.q, args.t, args.s)?;
    let rows = redundancy_table(family, &ns, q, t, s, args.p, cap)?;
    match format {
        Format::Text | Format::Csv => {
            println!("{}", RedundancyRow::csv_header());
            for row in &rows {
                println!("{}", row.csv_row());
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
        }
    }
    Ok(0)
}

// -------------------------------------------------------------- search

fn cmd_search(args: &SearchArgs, format: Format, cap: u128) -> Result<i32> {
    let (family, q, t, s) = core_family(&args.family, args.q, args.t, args.s)?;
    let outcome = param_search(family, args.n, q, t, s, args.p, cap)?;
    let instance = AnyCode::Burst(outcome.code.clone()).to_instance();
    if let Some(path) = &args.write_instance {
        instance.save(path)?;
    }
    match format {
        Format::Text => {
            println!(
                "family={} n={} q={} t={} s={}{} size={} nonempty_classes={}",
                family,
                args.n,
                q,
                t,
                s,
                args.p.map_or(String::new(), |p| format!(" P={p}")),
                outcome.size,
                outcome.nonempty_classes,
            );
            println!("instance: {}", instance.to_json());
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "instance": instance,
                    "size": outcome.size,
                    "nonempty_classes": outcome.nonempty_classes,
                }))
                .expect("search result serializes")
            );
        }
        Format::Csv => {
            println!("family,n,q,t,s,P,size,nonempty_classes");
            println!(
                "{},{},{},{},{},{},{},{}",
                family,
                args.n,
                q,
                t,
                s,
                args.p.map_or(String::new(), |p| p.to_string()),
                outcome.size,
                outcome.nonempty_classes,
            );
        }
    }
    Ok(0)
}

// ------------------------------------------------------------ simulate

fn cmd_simulate(args: &SimulateArgs, format: Format) -> Result<i32> {
    let x = Word::parse(&args.word, args.q)?;
    let n = x.len();
    let t = args.t.ok_or_else(|| CodeError::InvalidParams("simulate requires --t".into()))?;
    let (event, seed) = if args.random {
        let s = args.s.expect("clap enforces --s with --random");
        let seed = args.seed.unwrap_or_else(rand::random);
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let hi = if t == 0 { n + 1 } else { n.checked_sub(t).map(|d| d + 1).unwrap_or(0) };
        if hi == 0 {
            return Err(CodeError::InvalidParams(format!(
                "cannot delete {t} symbols from a word of length {n}"
            )));
        }
        let pos = rng.random_range(1..=hi);
        let ins: Vec<u64> = (0..s).map(|_| rng.random_range(0..args.q)).collect();
        (BurstEvent { pos, t, ins }, Some(seed))
    } else {
        let pos =
            args.pos.ok_or_else(|| CodeError::InvalidParams("pass --pos or --random".into()))?;
        let ins = Word::parse(&args.ins, args.q)?.symbols().to_vec();
        (BurstEvent { pos, t, ins }, None)
    };
    let z = apply_burst(&x, &event)?;
    let ins_word = Word::new(args.q, event.ins.clone())?;
    match format {
        Format::Text => {
            if let Some(seed) = seed {
                println!("# seed {seed}");
                println!("# event pos={} t={} ins={}", event.pos, event.t, ins_word);
            }
            println!("{z}");
        }
        Format::Json => {
            let mut value = json!({
                "input": x.to_string(),
                "event": {"pos": event.pos, "t": event.t, "ins": event.ins},
                "output": z.to_string(),
            });
            if let Some(seed) = seed {
                value["seed"] = json!(seed);
            }
            println!("{value}");
        }
        Format::Csv => {
            println!("pos,t,ins,output");
            println!("{},{},{},{}", event.pos, event.t, ins_word, z);
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_and_length_lists_parse() {
        assert_eq!(parse_window("3,6").unwrap(), (3, 6));
        assert_eq!(parse_window(" 1 , 12 ").unwrap(), (1, 12));
        assert!(parse_window("3").is_err());
        assert!(parse_window("a,b").is_err());
        assert_eq!(parse_lengths("8,12,16").unwrap(), vec![8, 12, 16]);
        assert_eq!(parse_lengths("5").unwrap(), vec![5]);
        assert!(parse_lengths("").is_err());
        assert!(parse_lengths("8,x").is_err());
    }

    #[test]
    fn family_conventions_fill_in_t_and_s() {
        assert_eq!(core_family("c22", Some(3), None, None).unwrap(), (Family::C22, 3, 2, 2));
        assert_eq!(core_family("ctt", Some(2), Some(4), None).unwrap(), (Family::Ctt, 2, 4, 4));
        assert_eq!(core_family("bin_tt1", None, Some(3), None).unwrap(), (Family::BinTT1, 2, 3, 2));
        assert_eq!(
            core_family("qary_tt1", Some(4), Some(2), Some(1)).unwrap(),
            (Family::QaryTT1, 4, 2, 1)
        );
        assert_eq!(core_family("cts", Some(2), Some(3), Some(1)).unwrap(), (Family::Cts, 2, 3, 1));
        assert!(core_family("c22", Some(3), Some(3), None).is_err());
        assert!(core_family("bin_tt1", Some(3), Some(2), None).is_err());
        assert!(core_family("cts", Some(2), Some(3), None).is_err());
        assert!(core_family("nope", Some(2), None, None).is_err());
    }

    #[test]
    fn exit_codes_split_domain_failures_from_usage_errors() {
        assert_eq!(classify(&CodeError::DecodeFailure("x".into())), 1);
        assert_eq!(classify(&CodeError::AmbiguousDecode("x".into())), 1);
        assert_eq!(classify(&CodeError::LengthMismatch { expected: 1, got: 2 }), 1);
        assert_eq!(classify(&CodeError::NotInLiftImage("x".into())), 1);
        assert_eq!(classify(&CodeError::InvalidParams("x".into())), 2);
        assert_eq!(classify(&CodeError::ParseError { input: "x".into(), reason: "y".into() }), 2);
        assert_eq!(classify(&CodeError::EnumerationCapExceeded { needed: 9, cap: 1 }), 2);
    }

    #[test]
    fn burst_events_cover_the_whole_ball() {
        let x = Word::parse("0120", 3).unwrap();
        let events = burst_events(&x, 2, 1);
        // 3 positions x 3 insertions, with collisions preserved as events
        assert_eq!(events.len(), 9);
        let ball = ball(&x, 2, 1).unwrap();
        for (_, z) in &events {
            assert!(ball.members().contains(z));
        }
        // an insertion-only event set at t = 0
        let events = burst_events(&x, 0, 1);
        assert_eq!(events.len(), 15);
    }

    #[test]
    fn cli_arguments_parse() {
        let cli = Cli::try_parse_from([
            "burstcode",
            "ball",
            "--q",
            "2",
            "--n",
            "5",
            "--t",
            "2",
            "--s",
            "1",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Ball(_)));
        assert_eq!(cli.cap, DEFAULT_ENUMERATION_CAP);
        let cli = Cli::try_parse_from([
            "burstcode",
            "verify",
            "--family",
            "c22",
            "--n",
            "8",
            "--q",
            "2",
            "--best",
            "--format",
            "json",
        ])
        .unwrap();
        assert_eq!(cli.format, Format::Json);
        // --instance and --family are mutually exclusive
        assert!(Cli::try_parse_from([
            "burstcode",
            "verify",
            "--instance",
            "f.json",
            "--family",
            "c22",
        ])
        .is_err());
        // --random without --s is rejected
        assert!(Cli::try_parse_from([
            "burstcode",
            "simulate",
            "--q",
            "2",
            "--t",
            "1",
            "--random",
            "0101",
        ])
        .is_err());
    }
}
