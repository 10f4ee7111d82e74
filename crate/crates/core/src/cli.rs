//! Batch command-line front end.
//!
//! Every invocation is a batch experiment: it prints one structured record
//! per check (JSON lines by default, CSV on request), exits 0 only when all
//! checks certified, 1 on uncertified checks, 2 on malformed inputs.
//! Modulo the `wall_time_ms` field, output is byte-identical for identical
//! flags, inputs, and seed.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    bwt_cluster_stage, forced_word, ivt_trisect_traced, kleene_tree, max_value, specker_term,
    zero_point,
};
use crate::corpus;
use crate::exact::{CReal, CRealSeq, Dyadic};
use crate::functions::CFunc;
use crate::machines::{StagePair, StageSet};
use crate::reductions::{
    bim_via_cn, broken_witness, ec_problem, ec_via_frr_witness, enumeration_of_set,
    frr_instance, frr_le_mct_witness, frr_problem, lim_cnpar_witnesses, max_equiv_zero_witnesses,
    mct_ec_bridge, DiagonalOperator,
};
use crate::weihrauch::{
    cn_problem, lim_problem, max_problem, mct_problem, parallelize, reduce_check, settling_input,
    zero_problem, Name, ReduceReport, Verdict,
};

/// One structured output record.
#[derive(Serialize)]
pub struct Report {
    pub op: String,
    pub instance_id: String,
    pub precision_level: u32,
    pub stage: u64,
    pub result: String,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mind_changes: Option<u64>,
    pub wall_time_ms: u64,
}

impl Report {
    fn csv_header() -> &'static str {
        "op,instance_id,precision_level,stage,result,certified,mind_changes,wall_time_ms"
    }

    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.op,
            self.instance_id,
            self.precision_level,
            self.stage,
            self.result,
            self.certified,
            self.mind_changes.map_or(String::new(), |m| m.to_string()),
            self.wall_time_ms
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "wlab", version, about = "exact-real demonstrations and reduction checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output precision level (results certified to 2^-precision).
    #[arg(long, global = true, default_value_t = 20)]
    precision: u32,
    /// Stage budget for stage-semantics oracles.
    #[arg(long, global = true, default_value_t = 1000)]
    stages: u64,
    /// Output format for the report stream.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON injection file (stage sets or problem instances).
    #[arg(long, global = true)]
    inject: Option<std::path::PathBuf>,
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Monotone partial sums of a stage-enumerated set.
    Specker,
    /// Certified root localization on the bundled crossing corpus.
    Ivt,
    /// Branch-and-bound maxima on seeded random functions.
    Max,
    /// Tree membership, forced words, and leftmost paths.
    Kleene,
    /// Zero locations across the counterexample family.
    Family,
    /// Cluster-point oracle on convergent sequences.
    Bwt,
    /// Run a named reduction witness over its corpus.
    Reduce {
        #[arg(long)]
        witness: WitnessKind,
    },
    /// Inversion of diagonal operators via choice on the naturals.
    Bim,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    /// zero <= max and max <= zero, plus the broken negative control.
    MaxZero,
    /// frr <= mct on functionals from the dense-ball prefix.
    FrrMct,
    /// ec <= frr digit extraction.
    EcFrr,
    /// ec <= mct and mct <= ec round trip.
    MctEc,
    /// cn <= lim and lim <= par(cn).
    CnLim,
}

pub fn run<W: Write>(args: Vec<String>, out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let mut sink = Sink {
        format: cli.format,
        wrote_header: false,
        all_certified: true,
        out,
    };
    let ctx = Ctx {
        precision: cli.precision,
        stages: cli.stages,
        seed: cli.seed,
    };
    let injected = match cli.inject.as_ref().map(load_injection) {
        Some(Ok(v)) => Some(v),
        Some(Err(msg)) => {
            eprintln!("cannot read injection file: {msg}");
            return 2;
        }
        None => None,
    };
    let outcome = match cli.command {
        Command::Specker => run_specker(&ctx, injected, &mut sink),
        Command::Ivt => run_ivt(&ctx, &mut sink),
        Command::Max => run_max(&ctx, &mut sink),
        Command::Kleene => run_kleene(&ctx, injected, &mut sink),
        Command::Family => run_family(&ctx, injected, &mut sink),
        Command::Bwt => run_bwt(&ctx, &mut sink),
        Command::Reduce { witness } => run_reduce(&ctx, witness, &mut sink),
        Command::Bim => run_bim(&ctx, injected, &mut sink),
    };
    if let Err(msg) = outcome {
        eprintln!("{msg}");
        return 2;
    }
    if sink.all_certified {
        0
    } else {
        1
    }
}

struct Ctx {
    precision: u32,
    stages: u64,
    seed: u64,
}

struct Sink<'a, W: Write> {
    format: Format,
    wrote_header: bool,
    all_certified: bool,
    out: &'a mut W,
}

impl<W: Write> Sink<'_, W> {
    fn emit(&mut self, report: Report) {
        self.all_certified &= report.certified;
        let outcome = match self.format {
            Format::Json => {
                let line = serde_json::to_string(&report).expect("serializable report");
                writeln!(self.out, "{line}")
            }
            Format::Csv => {
                let mut header = Ok(());
                if !self.wrote_header {
                    header = writeln!(self.out, "{}", Report::csv_header());
                    self.wrote_header = true;
                }
                header.and_then(|()| writeln!(self.out, "{}", report.to_csv()))
            }
        };
        if let Err(e) = outcome {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(141); // downstream closed the stream
            }
            panic!("cannot write report: {e}");
        }
    }
}

/// Injection file: `{"stages": [[t, [members...]], ...]}` describes a stage
/// set; `{"a": ..., "b": ...}` with the same shape describes a pair;
/// `{"diag": ["m*2^e", ...], "tail": "m*2^e", "y": ["m*2^e", ...]}` an
/// inversion instance.
#[derive(serde::Deserialize)]
struct Injection {
    stages: Option<Vec<(u64, Vec<u64>)>>,
    a: Option<Vec<(u64, Vec<u64>)>>,
    b: Option<Vec<(u64, Vec<u64>)>>,
    diag: Option<Vec<Dyadic>>,
    tail: Option<Dyadic>,
    y: Option<Vec<Dyadic>>,
}

fn load_injection(path: &std::path::PathBuf) -> Result<Injection, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_millis() as u64)
}

fn run_specker<W: Write>(
    ctx: &Ctx,
    injected: Option<Injection>,
    sink: &mut Sink<W>,
) -> Result<(), String> {
    let (set, id) = match injected {
        Some(inj) => (
            StageSet::injected(&inj.stages.ok_or("injection needs a \"stages\" field")?),
            "injected",
        ),
        None => (crate::machines::halting_set(), "halting-set"),
    };
    let mut prev = Dyadic::zero();
    let horizon = ctx.stages.min(64);
    for t in 0..=horizon {
        let (term, ms) = timed(|| specker_term(&set, t));
        let monotone = term >= prev;
        sink.emit(Report {
            op: "specker".into(),
            instance_id: format!("{id}/stage{t}"),
            precision_level: ctx.precision,
            stage: t,
            result: term.to_string(),
            certified: monotone && term <= Dyadic::from_int(2),
            mind_changes: None,
            wall_time_ms: ms,
        });
        prev = term;
    }
    Ok(())
}

fn run_ivt<W: Write>(ctx: &Ctx, sink: &mut Sink<W>) -> Result<(), String> {
    for (i, f) in corpus::crossing_corpus(8, ctx.seed).iter().enumerate() {
        let cf = CFunc::from_plf(f);
        let ((result, certified), ms) = timed(|| match ivt_trisect_traced(&cf, ctx.precision) {
            Ok(out) => (format!("{}", out.interval), true),
            Err(e) => (format!("error: {e}"), false),
        });
        sink.emit(Report {
            op: "ivt".into(),
            instance_id: format!("crossing/{i}"),
            precision_level: ctx.precision,
            stage: ctx.stages,
            result,
            certified,
            mind_changes: None,
            wall_time_ms: ms,
        });
    }
    Ok(())
}

fn run_max<W: Write>(ctx: &Ctx, sink: &mut Sink<W>) -> Result<(), String> {
    let mut rng = corpus::rng(ctx.seed);
    for i in 0..8 {
        let f = corpus::random_plf(&mut rng);
        let exact = corpus::exact_breakpoint_max(&f);
        let cf = CFunc::from_plf(&f);
        let (value, ms) = timed(|| max_value(&cf, ctx.precision));
        let certified = (&value - &exact).abs() <= Dyadic::two_pow(-(ctx.precision as i64));
        sink.emit(Report {
            op: "max".into(),
            instance_id: format!("random/{i}"),
            precision_level: ctx.precision,
            stage: ctx.stages,
            result: value.to_string(),
            certified,
            mind_changes: None,
            wall_time_ms: ms,
        });
    }
    Ok(())
}

fn injected_pair(inj: Option<Injection>) -> Result<(StagePair, &'static str), String> {
    match inj {
        Some(inj) => {
            let a = inj.a.ok_or("injection needs \"a\" and \"b\" fields")?;
            let b = inj.b.ok_or("injection needs \"a\" and \"b\" fields")?;
            Ok((StagePair::injected(&a, &b), "injected"))
        }
        None => Ok((StagePair::from_machines(), "machine-pair")),
    }
}

fn run_kleene<W: Write>(
    ctx: &Ctx,
    injected: Option<Injection>,
    sink: &mut Sink<W>,
) -> Result<(), String> {
    let (pair, id) = injected_pair(injected)?;
    let tree = kleene_tree(&pair);
    let depth_cap = (ctx.stages.min(200)) as usize;
    for depth in [1usize, 8, 32, 64, depth_cap] {
        let ((ok, word), ms) = timed(|| {
            let w = forced_word(&pair, depth);
            (tree.member(&w), w)
        });
        let rendered: String = word.iter().map(|&b| if b { '1' } else { '0' }).collect();
        sink.emit(Report {
            op: "kleene".into(),
            instance_id: format!("{id}/depth{depth}"),
            precision_level: ctx.precision,
            stage: depth as u64,
            result: rendered.chars().take(48).collect(),
            certified: ok,
            mind_changes: None,
            wall_time_ms: ms,
        });
    }
    Ok(())
}

fn run_family<W: Write>(
    ctx: &Ctx,
    injected: Option<Injection>,
    sink: &mut Sink<W>,
) -> Result<(), String> {
    let (pair, id) = match injected {
        Some(inj) => {
            let a = inj.a.ok_or("injection needs \"a\" and \"b\" fields")?;
            let b = inj.b.ok_or("injection needs \"a\" and \"b\" fields")?;
            (StagePair::injected(&a, &b), "injected".to_string())
        }
        None => (
            StagePair::injected(&[(1, vec![0]), (3, vec![3])], &[(2, vec![1])]),
            "demo".to_string(),
        ),
    };
    for n in 0..6u64 {
        let f = crate::constructions::ivt_family(&pair, n);
        let (z, ms) = timed(|| zero_point(&f, ctx.precision));
        // certify by evaluating the member at the reported zero
        let enc = f.at_point(&z, ctx.precision + 2);
        let eps = Dyadic::two_pow(-(ctx.precision as i64));
        let certified = enc.lo() >= &-eps.clone() && enc.hi() <= &eps;
        sink.emit(Report {
            op: "family".into(),
            instance_id: format!("{id}/n{n}"),
            precision_level: ctx.precision,
            stage: ctx.stages,
            result: z.to_string(),
            certified,
            mind_changes: None,
            wall_time_ms: ms,
        });
    }
    Ok(())
}

fn run_bwt<W: Write>(ctx: &Ctx, sink: &mut Sink<W>) -> Result<(), String> {
    let level = ctx.precision.min(24);
    let cases: Vec<(&str, CRealSeq, Dyadic)> = vec![
        (
            "constant-half",
            Arc::new(|_| CReal::from_dyadic(Dyadic::new(1, -1))),
            Dyadic::new(1, -1),
        ),
        (
            "geometric",
            Arc::new(|n| CReal::from_dyadic(Dyadic::two_pow(-(n as i64)))),
            Dyadic::zero(),
        ),
        (
            "specker-13",
            {
                let set = StageSet::injected(&[(5, vec![1, 3])]);
                Arc::new(move |n| CReal::from_dyadic(specker_term(&set, n as u64)))
            },
            Dyadic::new(5, -3),
        ),
    ];
    for (id, seq, limit) in cases {
        let (center, ms) = timed(|| bwt_cluster_stage(&seq, ctx.stages as usize, level));
        let certified = (&center - &limit).abs() <= Dyadic::two_pow(-(level as i64) + 1);
        sink.emit(Report {
            op: "bwt".into(),
            instance_id: id.into(),
            precision_level: level,
            stage: ctx.stages,
            result: center.to_string(),
            certified,
            mind_changes: None,
            wall_time_ms: ms,
        });
    }
    Ok(())
}

fn emit_reduce<W: Write>(sink: &mut Sink<W>, report: &ReduceReport, ms: u64, expect_reject: bool) {
    for row in &report.rows {
        let verdict = row
            .verdict
            .map(|v| v.to_string())
            .unwrap_or_else(|| "skipped".to_string());
        let certified = if expect_reject {
            row.verdict == Some(Verdict::Rejected)
        } else {
            row.verdict == Some(Verdict::Accepted)
        };
        sink.emit(Report {
            op: format!("reduce/{}", report.witness),
            instance_id: format!("{}<={}/{}", report.from, report.to, row.index),
            precision_level: report.level,
            stage: report.stage,
            result: verdict,
            certified,
            mind_changes: None,
            wall_time_ms: ms,
        });
    }
}

fn run_reduce<W: Write>(ctx: &Ctx, kind: WitnessKind, sink: &mut Sink<W>) -> Result<(), String> {
    match kind {
        WitnessKind::MaxZero => {
            let (z_le_max, max_le_z) = max_equiv_zero_witnesses();
            let instances = corpus::max_zero_corpus(10, ctx.seed);
            let crossings: Vec<Name> = corpus::crossing_corpus(10, ctx.seed)
                .iter()
                .map(|f| crate::weihrauch::cfunc_to_name(&CFunc::from_plf(f)))
                .collect();
            let (r1, ms1) = timed(|| {
                reduce_check(
                    &zero_problem(),
                    &max_problem(),
                    &z_le_max,
                    &crossings,
                    ctx.precision,
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r1, ms1, false);
            let (r2, ms2) = timed(|| {
                reduce_check(
                    &max_problem(),
                    &zero_problem(),
                    &max_le_z,
                    &instances,
                    ctx.precision,
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r2, ms2, false);
            let (r3, ms3) = timed(|| {
                reduce_check(
                    &zero_problem(),
                    &max_problem(),
                    &broken_witness(),
                    &crossings[..1],
                    ctx.precision,
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r3, ms3, true);
        }
        WitnessKind::FrrMct => {
            use crate::functions::{functional_from_vec, EllTwoVec};
            let targets = [
                EllTwoVec::unit(0),
                EllTwoVec::unit(2),
                EllTwoVec::zero(),
                EllTwoVec::finite(vec![
                    Dyadic::new(1, -1),
                    Dyadic::new(1, -1),
                    Dyadic::new(1, -1),
                    Dyadic::new(1, -1),
                ])
                .scale(&Dyadic::new(1, -1)),
            ];
            let instances: Vec<Name> = targets
                .iter()
                .map(|y| frr_instance(&functional_from_vec(y)))
                .collect();
            let (r, ms) = timed(|| {
                reduce_check(
                    &frr_problem(),
                    &mct_problem(),
                    &frr_le_mct_witness(),
                    &instances,
                    ctx.precision.min(16),
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r, ms, false);
        }
        WitnessKind::EcFrr => {
            let sets: Vec<Vec<u64>> = vec![vec![1, 3], vec![], vec![0], vec![2, 5, 11]];
            let instances: Vec<Name> = sets.iter().map(|a| enumeration_of_set(a)).collect();
            let (r, ms) = timed(|| {
                reduce_check(
                    &ec_problem(),
                    &frr_problem(),
                    &ec_via_frr_witness(),
                    &instances,
                    ctx.precision.min(15),
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r, ms, false);
        }
        WitnessKind::MctEc => {
            let (ec_le_mct, mct_le_ec) = mct_ec_bridge();
            let ec_instances: Vec<Name> =
                vec![enumeration_of_set(&[1, 3]), enumeration_of_set(&[0, 4])];
            let (r1, ms1) = timed(|| {
                reduce_check(
                    &ec_problem(),
                    &mct_problem(),
                    &ec_le_mct,
                    &ec_instances,
                    ctx.precision.min(16),
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r1, ms1, false);
            let mct_instances: Vec<Name> = vec![
                crate::weihrauch::mct_instance(|_| Dyadic::new(1, -1), Dyadic::one()),
                crate::weihrauch::mct_instance(
                    |t| &Dyadic::one() - &Dyadic::two_pow(-(t as i64)),
                    Dyadic::one(),
                ),
            ];
            let (r2, ms2) = timed(|| {
                reduce_check(
                    &mct_problem(),
                    &ec_problem(),
                    &mct_le_ec,
                    &mct_instances,
                    ctx.precision.min(10),
                    ctx.stages.min(400),
                )
            });
            emit_reduce(sink, &r2, ms2, false);
        }
        WitnessKind::CnLim => {
            let (cn_le_lim, lim_le_cnpar) = lim_cnpar_witnesses();
            let cn_instances = vec![
                Name::from_values(vec![1, 2, 3], 0),
                Name::from_values(vec![], 0),
                Name::from_values(vec![2, 4, 6], 0),
            ];
            let (r1, ms1) = timed(|| {
                reduce_check(
                    &cn_problem(),
                    &lim_problem(),
                    &cn_le_lim,
                    &cn_instances,
                    ctx.precision,
                    ctx.stages,
                )
            });
            emit_reduce(sink, &r1, ms1, false);
            let target = Name::from_fn(|pos| pos + crate::coding::nat(1));
            let lim_instances = vec![settling_input(&target, 0), settling_input(&target, 6)];
            let (r2, ms2) = timed(|| {
                reduce_check(
                    &lim_problem(),
                    &parallelize(&cn_problem()),
                    &lim_le_cnpar,
                    &lim_instances,
                    ctx.precision.min(12),
                    ctx.stages.min(600),
                )
            });
            emit_reduce(sink, &r2, ms2, false);
        }
    }
    Ok(())
}

fn run_bim<W: Write>(
    ctx: &Ctx,
    injected: Option<Injection>,
    sink: &mut Sink<W>,
) -> Result<(), String> {
    use crate::functions::EllTwoVec;
    let instances: Vec<(String, DiagonalOperator, EllTwoVec)> = match injected {
        Some(inj) => {
            let diag = inj.diag.ok_or("injection needs \"diag\", \"tail\", \"y\"")?;
            let tail = inj.tail.ok_or("injection needs \"diag\", \"tail\", \"y\"")?;
            let y = inj.y.ok_or("injection needs \"diag\", \"tail\", \"y\"")?;
            if diag.iter().chain([&tail]).any(|d| d.signum() <= 0) {
                return Err("diagonal entries must be positive".into());
            }
            vec![(
                "injected".to_string(),
                DiagonalOperator::new(diag, tail),
                EllTwoVec::finite(y),
            )]
        }
        None => corpus::diagonal_corpus(6, ctx.seed)
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let y = EllTwoVec::finite(vec![
                    Dyadic::new(1, -1),
                    Dyadic::new(1, -2),
                    Dyadic::new(3, -3),
                ]);
                (format!("diag/{i}"), t, y)
            })
            .collect(),
    };
    for (id, t, y) in instances {
        let (out, ms) = timed(|| bim_via_cn(&t, &y, ctx.precision));
        // certify through composition on the supported coordinates
        let tx = t.apply(&out.inverse);
        let eps = Dyadic::two_pow(-(ctx.precision as i64));
        let certified = (0..8).all(|n| (&tx.coeff(n) - &y.coeff(n)).abs() <= eps);
        sink.emit(Report {
            op: "bim".into(),
            instance_id: id,
            precision_level: ctx.precision,
            stage: ctx.stages,
            result: format!("k={}", out.chosen_level),
            certified,
            mind_changes: Some(out.mind_changes),
            wall_time_ms: ms,
        });
    }
    Ok(())
}

/// Entry point used by the binary target.
pub fn main_entry() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    run(args, &mut stdout)
}
