use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthokernel::harness::{
    emit_counterexamples, gen_pair_with_meet_dim, generators::line_pair, property_ids, run_reconstruction, run_suite,
    trial_rng, FormSource, GenConfig, SuiteConfig, DEFAULT_SAMPLES,
};
use orthokernel::orthogonality::{make_perp_pair, perp_m, perp_x};
use orthokernel::reconstruction::{lemma1_witness, lemma2_witness};
use orthokernel::{Error, QuadraticSpace, TypedPerpParams};

#[derive(Parser)]
#[command(name = "orthokernel", version, about = "Exact affine orthogonality kernel and property checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites over seeded random instances.
    Check(CheckArgs),
    /// Print a generated orthogonal pair or a lemma witness as JSON.
    Witness(WitnessArgs),
    /// Compare line orthogonality recovered through the oracle with the reference.
    Reconstruct(ReconstructArgs),
    /// Print and verify the two non-transitivity configurations.
    Counterexample(OutputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormChoice {
    All,
    Identity,
    Diagonal,
    Tridiagonal,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Master seed; falls back to ORTHOKERNEL_SEED.
    #[arg(long, env = "ORTHOKERNEL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long = "num-bound", default_value_t = 4)]
    num_bound: i64,
    #[arg(long = "den-bound", default_value_t = 3)]
    den_bound: i64,
    #[arg(long, default_value_t = 64)]
    retries: usize,
    /// Quadratic form file: {"form": [["2","1"],["1","2"]]}. Overrides --form.
    #[arg(long = "form-file")]
    form_file: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// `all` or a comma-separated list of property ids.
    #[arg(long, default_value = "all")]
    props: String,
    #[arg(long, value_enum, default_value_t = FormChoice::All)]
    form: FormChoice,
    /// Candidates per instance for sampling properties.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Record wall-clock times; reports are then no longer reproducible byte for byte.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    /// A random pair related by the typed relation.
    PerpPair,
    /// The reduction witness for a flat meeting X2 in a point.
    Lemma1,
    /// Orthogonal flats containing two orthogonal lines.
    Lemma2,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_enum, default_value_t = WitnessKind::PerpPair)]
    kind: WitnessKind,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long, value_enum, default_value_t = FormChoice::Identity)]
    form: FormChoice,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    k1: usize,
    #[arg(long, default_value_t = 2)]
    k2: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ReconstructArgs {
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long, value_enum, default_value_t = FormChoice::Identity)]
    form: FormChoice,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k1: usize,
    #[arg(long)]
    k2: usize,
    #[arg(long, default_value_t = 500)]
    pairs: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[command(flatten)]
    out: OutputArgs,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Generation { .. } => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn forms(choice: FormChoice, gen: &GenArgs) -> Result<Vec<FormSource>, Failure> {
    if let Some(path) = &gen.form_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let space = QuadraticSpace::from_json(&text)?;
        return Ok(vec![FormSource::Matrix(space.form().clone())]);
    }
    let n = gen.dim;
    Ok(match choice {
        FormChoice::All => FormSource::defaults(n),
        FormChoice::Identity => vec![FormSource::Identity],
        FormChoice::Diagonal => vec![FormSource::graded(n)],
        FormChoice::Tridiagonal => vec![FormSource::tridiagonal(n)],
    })
}

fn single_form(choice: FormChoice, gen: &GenArgs) -> Result<FormSource, Failure> {
    let mut all = forms(choice, gen)?;
    if all.len() != 1 {
        return Err(Failure::Input("choose a single form".into()));
    }
    Ok(all.remove(0))
}

fn gen_config(gen: &GenArgs, form: FormSource) -> GenConfig {
    GenConfig {
        dim: gen.dim,
        form,
        numerator_bound: gen.num_bound,
        denominator_bound: gen.den_bound,
        seed: gen.seed,
        retries: gen.retries,
    }
}

fn emit(out: &OutputArgs, doc: &Value) -> Outcome {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    text.push('\n');
    match &out.json {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(args: CheckArgs) -> Outcome {
    let properties: Vec<String> = if args.props == "all" {
        property_ids().iter().map(|s| s.to_string()).collect()
    } else {
        args.props.split(',').map(|s| s.trim().to_string()).collect()
    };
    let cfg = SuiteConfig {
        dim: args.gen.dim,
        forms: forms(args.form, &args.gen)?,
        properties,
        trials: args.trials,
        seed: args.gen.seed,
        numerator_bound: args.gen.num_bound,
        denominator_bound: args.gen.den_bound,
        retries: args.gen.retries,
        samples: args.samples,
    };
    let mut report = run_suite(&cfg)?;
    if !args.timing {
        report = report.without_timing();
    }
    let doc = serde_json::to_value(&report).expect("reports serialize");
    if args.out.json.is_some() {
        for r in &report.reports {
            let status = if r.passed() { "ok  " } else { "FAIL" };
            println!(
                "{status} {:<16} {:<24} trials={} violations={} vacuous={}",
                r.property_id, r.form, r.trials, r.violations, r.vacuous
            );
        }
    }
    emit(&args.out, &doc)?;
    match report.violations() {
        0 => Ok(()),
        v => Err(Failure::Violation(format!("{v} violations"))),
    }
}

fn witness(args: WitnessArgs) -> Outcome {
    let cfg = gen_config(&args.gen, single_form(args.form, &args.gen)?);
    let (space, sampler) = cfg.materialize()?;
    let params = TypedPerpParams::new(args.m, args.k1, args.k2)?;
    let mut rng = trial_rng(cfg.seed, "witness", 0);
    let doc = match args.kind {
        WitnessKind::PerpPair => {
            let (x1, x2) = make_perp_pair(&space, &params, &sampler, &mut rng)?;
            json!({
                "params": params,
                "X1": x1,
                "X2": x2,
                "related": perp_m(&x1, &x2, &params)?,
                "join_dim": x1.join(&x2)?.dim(),
            })
        }
        WitnessKind::Lemma1 => {
            let (y1, x2) = gen_pair_with_meet_dim(&space, &sampler, params.k1 - params.m, params.k2, 0, &mut rng)?;
            let x1 = lemma1_witness(&y1, &x2, params.m)?;
            json!({
                "params": params,
                "Y1": y1,
                "X2": x2,
                "X1": x1,
                "Y1_perp_x_X2": perp_x(&y1, &x2)?,
                "X1_related_X2": perp_m(&x1, &x2, &params)?,
            })
        }
        WitnessKind::Lemma2 => {
            let (l1, l2) = line_pair(&space, &sampler, true, &mut rng)?;
            let (x1, x2) = lemma2_witness(&l1, &l2, params.k1 - params.m, params.k2)?;
            json!({
                "params": params,
                "L1": l1,
                "L2": l2,
                "X1": x1,
                "X2": x2,
                "X1_perp_x_X2": perp_x(&x1, &x2)?,
            })
        }
    };
    emit(&args.out, &doc)
}

fn reconstruct(args: ReconstructArgs) -> Outcome {
    let cfg = gen_config(&args.gen, single_form(args.form, &args.gen)?);
    let params = TypedPerpParams::new(args.m, args.k1, args.k2)?;
    let summary = run_reconstruction(&cfg, params, args.pairs, args.samples)?;
    eprintln!(
        "agreement {}/{}, sampled contradictions {}",
        summary.agreements, summary.pairs, summary.sampled_contradictions
    );
    emit(&args.out, &serde_json::to_value(&summary).expect("summary serializes"))?;
    if summary.passed() {
        Ok(())
    } else {
        Err(Failure::Violation("reconstruction disagrees with the reference".into()))
    }
}

fn counterexample(args: OutputArgs) -> Outcome {
    let instances = emit_counterexamples()?;
    emit(&args, &json!({ "schema": 1, "instances": instances }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => check(a),
        Command::Witness(a) => witness(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Counterexample(a) => counterexample(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
