//! Batch experiment driver for the `pbda` library.
//!
//! One subcommand per artifact of a study: draw toy data, fit a model,
//! predict, evaluate risk measures, print generalization-bound reports,
//! search a hyperparameter grid, score a tuple by reverse validation, and
//! emit θ-sweep tables for the two-dimensional posterior family.
//!
//! The process orchestrates and formats; all numerics (and all
//! parallelism) live in the library.  Every float is printed with 17
//! significant digits and every code path is deterministic given its
//! flags, so a fixed seed reproduces output files byte for byte.  Exit
//! codes: 0 on success, 1 on any validation problem (bad flag, bad file,
//! bad combination), 2 when the optimizer fails to produce an iterate.

use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use pbda::bounds::{
    catoni_bound, corollary12_bound, corollary13_bound, fmt_float, theorem8_bound,
    theorem9_bound, NonEstimable,
};
use pbda::data::{
    gen_toy, load_labeled_csv, load_unlabeled_csv, save_csv, ToyKind, ToySpec, UnlabeledSample,
};
use pbda::estimators::LinearPosterior;
use pbda::kernels::KernelKind;
use pbda::losses::{convex_probit_loss, disagreement_loss, joint_error_loss, probit_loss, LossEval};
use pbda::model_selection::{
    cross_validate, grid_search, reverse_cross_validate, GridAxis, GridSpec, SearchSettings,
    Selection,
};
use pbda::training::{
    load_model, save_model, train, zero_one_error, Algorithm, HyperParams, ModelForm,
    OptimizerSettings, Representation, TrainedModel,
};
use pbda::{Error, Result};

/// Entry point: parse `argv` (including the program name), execute, and
/// map the outcome to a process exit code.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are successful output, anything else is a
            // usage problem
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match configure_threads().and_then(|()| execute(cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Optimization(_) => 2,
        _ => 1,
    }
}

/// Honor `PBDA_THREADS` by capping the global worker pool.  Repeated
/// initialization (several `run` calls in one process) is harmless: the
/// first pool wins and later attempts are ignored.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PBDA_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| arg_err(format!("PBDA_THREADS must be a positive integer, got `{raw}`")))?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn arg_err(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

#[derive(Parser)]
#[command(name = "pbda-cli", version, about = "Batch experiments with PAC-Bayesian linear classifiers and domain adaptation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a synthetic source/target pair and write both as labeled CSVs
    GenToy(GenToyArgs),
    /// Fit a classifier and write it as a text model file
    Train(TrainArgs),
    /// Apply a model file to feature rows and write ±1 predictions
    Predict(PredictArgs),
    /// Report empirical risk measures of a model on a labeled sample
    Evaluate(EvaluateArgs),
    /// Evaluate a generalization bound for a model on empirical samples
    Bounds(BoundsArgs),
    /// Score every point of a hyperparameter grid and report the argmin
    GridSearch(GridSearchArgs),
    /// Score one hyperparameter tuple by reverse (circular) validation
    ReverseCv(ReverseCvArgs),
    /// Emit risk curves over the angle θ for weight vectors r·(cos θ, sin θ)
    SweepTheta(SweepThetaArgs),
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::GenToy(a) => exec_gen_toy(a),
        Command::Train(a) => exec_train(a),
        Command::Predict(a) => exec_predict(a),
        Command::Evaluate(a) => exec_evaluate(a),
        Command::Bounds(a) => exec_bounds(a),
        Command::GridSearch(a) => exec_grid_search(a),
        Command::ReverseCv(a) => exec_reverse_cv(a),
        Command::SweepTheta(a) => exec_sweep_theta(a),
    }
}

// ---------------------------------------------------------------------------
// shared flag groups
// ---------------------------------------------------------------------------

#[derive(Args)]
struct KernelArgs {
    /// Dual-form kernel: `linear` or `rbf`; omit to fit explicit primal weights
    #[arg(long)]
    kernel: Option<String>,
    /// RBF width (required with --kernel rbf)
    #[arg(long)]
    gamma: Option<f64>,
}

impl KernelArgs {
    fn form(&self) -> Result<ModelForm> {
        match (self.kernel.as_deref(), self.gamma) {
            (None, None) => Ok(ModelForm::Primal),
            (None, Some(_)) => Err(arg_err("--gamma needs --kernel rbf")),
            (Some("linear"), None) => Ok(ModelForm::Dual(KernelKind::Linear)),
            (Some("linear"), Some(_)) => Err(arg_err("--gamma does not apply to the linear kernel")),
            (Some("rbf"), Some(gamma)) => Ok(ModelForm::Dual(KernelKind::Rbf { gamma })),
            (Some("rbf"), None) => Err(arg_err("--kernel rbf needs --gamma")),
            (Some(other), _) => Err(arg_err(format!(
                "unknown kernel `{other}` (expected linear or rbf)"
            ))),
        }
    }
}

#[derive(Args)]
struct HyperArgs {
    /// Source-loss trade-off (pbgd3 and pbda)
    #[arg(long)]
    omega: Option<f64>,
    /// Disagreement-matching trade-off (pbda)
    #[arg(long = "A")]
    a: Option<f64>,
    /// Source joint-error trade-off (dalc)
    #[arg(long = "B")]
    b: Option<f64>,
    /// Target disagreement trade-off (dalc)
    #[arg(long = "C")]
    c: Option<f64>,
    /// Fit pbda's plain probit source loss instead of its convex surrogate
    #[arg(long)]
    plain_source_loss: bool,
}

impl HyperArgs {
    fn params(&self, algorithm: Algorithm) -> Result<HyperParams> {
        let need = |flag: &str, v: Option<f64>| {
            v.ok_or_else(|| arg_err(format!("{algorithm} needs --{flag}")))
        };
        let forbid = |flag: &str, given: bool| {
            if given {
                Err(arg_err(format!("--{flag} does not apply to {algorithm}")))
            } else {
                Ok(())
            }
        };
        if algorithm != Algorithm::Pbda {
            forbid("plain-source-loss", self.plain_source_loss)?;
        }
        match algorithm {
            Algorithm::Pbgd3 => {
                forbid("A", self.a.is_some())?;
                forbid("B", self.b.is_some())?;
                forbid("C", self.c.is_some())?;
                Ok(HyperParams::pbgd3(need("omega", self.omega)?))
            }
            Algorithm::Pbda => {
                forbid("B", self.b.is_some())?;
                forbid("C", self.c.is_some())?;
                Ok(HyperParams::Pbda {
                    omega: need("omega", self.omega)?,
                    a: need("A", self.a)?,
                    convex: !self.plain_source_loss,
                })
            }
            Algorithm::Dalc => {
                forbid("omega", self.omega.is_some())?;
                forbid("A", self.a.is_some())?;
                Ok(HyperParams::dalc(need("B", self.b)?, need("C", self.c)?))
            }
        }
    }
}

#[derive(Args)]
struct OptimizerArgs {
    /// Quasi-Newton iteration budget
    #[arg(long, default_value_t = 1000)]
    max_iterations: usize,
    /// Stop when the gradient sup-norm falls below this
    #[arg(long, default_value_t = 1e-6)]
    grad_tol: f64,
    /// Stop when the relative objective change falls below this
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
}

impl OptimizerArgs {
    /// The seed is threaded in from each subcommand's own `--seed` flag
    /// (it is recorded for reproducibility; the minimizer draws nothing).
    fn settings(&self, seed: u64) -> OptimizerSettings {
        OptimizerSettings {
            max_iterations: self.max_iterations,
            grad_sup_norm_tol: self.grad_tol,
            rel_objective_tol: self.rel_tol,
            seed,
        }
    }
}

/// How tabular reports are rendered.
#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ReportFormat {
    /// `metric,value` rows under a header
    Csv,
    /// `name=value` lines
    Kv,
}

fn emit_report(pairs: &[(String, String)], format: ReportFormat) -> String {
    let mut out = String::new();
    if format == ReportFormat::Csv {
        out.push_str("metric,value\n");
    }
    for (name, value) in pairs {
        let sep = match format {
            ReportFormat::Csv => ',',
            ReportFormat::Kv => '=',
        };
        out.push_str(name);
        out.push(sep);
        out.push_str(value);
        out.push('\n');
    }
    out
}

/// Re-render a `name=value` report (the bound-report serialization) as CSV.
fn kv_to_csv(kv: &str) -> String {
    let mut out = String::from("key,value\n");
    for line in kv.lines() {
        let (k, v) = line
            .split_once('=')
            .expect("bound reports are name=value lines");
        out.push_str(k);
        out.push(',');
        out.push_str(v);
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// data plumbing
// ---------------------------------------------------------------------------

/// Load feature rows for unsupervised use.  Files written by `gen-toy`
/// carry a label column; it is split off and discarded so no consumer can
/// touch it.  Files without the column load as-is.
fn load_features(path: &Path, label_column: &str) -> Result<UnlabeledSample> {
    if csv_has_column(path, label_column)? {
        let labeled = load_labeled_csv(path, label_column)?;
        UnlabeledSample::new(labeled.features().to_vec())
    } else {
        load_unlabeled_csv(path)
    }
}

fn csv_has_column(path: &Path, name: &str) -> Result<bool> {
    let file = fs::File::open(path)?;
    let mut header = String::new();
    BufReader::new(file).read_line(&mut header)?;
    Ok(header.trim_end().split(',').any(|h| h.trim() == name))
}

/// Mean of a pointwise loss over margins (optionally label-signed).
fn mean_loss(
    margins: &[f64],
    labels: Option<&[i8]>,
    loss: fn(f64) -> Result<LossEval>,
) -> Result<f64> {
    let mut total = 0.0;
    for (i, &m) in margins.iter().enumerate() {
        let signed = match labels {
            Some(ys) => f64::from(ys[i]) * m,
            None => m,
        };
        total += loss(signed)?.value;
    }
    Ok(total / margins.len() as f64)
}

// ---------------------------------------------------------------------------
// gen-toy
// ---------------------------------------------------------------------------

#[derive(Args)]
struct GenToyArgs {
    /// two_moons, gaussian_supervised or gaussian_da
    #[arg(long)]
    kind: String,
    /// Points per class (per domain)
    #[arg(long, default_value_t = 150)]
    n: usize,
    /// Moon jitter standard deviation (moons only)
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    /// Target rotation in degrees (moons only)
    #[arg(long, default_value_t = 0.0)]
    rotation: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Labeled source CSV to write
    #[arg(long)]
    out_src: PathBuf,
    /// Labeled target CSV to write (labels are for evaluation; training
    /// consumers strip them)
    #[arg(long)]
    out_tgt: PathBuf,
}

fn exec_gen_toy(args: GenToyArgs) -> Result<()> {
    let (source, target) = gen_toy(&ToySpec {
        kind: args.kind.parse::<ToyKind>()?,
        n_per_class: args.n,
        noise_sigma: args.noise,
        rotation_deg: args.rotation,
        seed: args.seed,
    })?;
    save_csv(&source, &args.out_src)?;
    save_csv(&target, &args.out_tgt)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

#[derive(Args)]
struct TrainArgs {
    /// pbgd3, pbda or dalc
    #[arg(long)]
    algo: String,
    /// Labeled source CSV
    #[arg(long)]
    source: PathBuf,
    /// Target CSV; only its feature rows are used (required by pbda/dalc)
    #[arg(long)]
    target: Option<PathBuf>,
    #[command(flatten)]
    hyper: HyperArgs,
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Recorded in the training configuration (fits are deterministic)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Model file to write
    #[arg(long)]
    out: PathBuf,
    /// Header name of the label column in input CSVs
    #[arg(long, default_value = "y")]
    label_column: String,
}

fn exec_train(args: TrainArgs) -> Result<()> {
    let algorithm = args.algo.parse::<Algorithm>()?;
    let params = args.hyper.params(algorithm)?;
    let form = args.kernel.form()?;
    let source = load_labeled_csv(&args.source, &args.label_column)?;
    let target = match &args.target {
        Some(path) => Some(load_features(path, &args.label_column)?),
        None => None,
    };
    let model = train(
        params,
        form,
        &source,
        target.as_ref(),
        &args.optimizer.settings(args.seed),
    )?;
    save_model(&model, &args.out)?;
    println!("model={}", args.out.display());
    println!("objective={}", fmt_float(model.objective_value()));
    println!("iterations={}", model.iterations_used());
    Ok(())
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

#[derive(Args)]
struct PredictArgs {
    /// Model file written by `train`
    #[arg(long)]
    model: PathBuf,
    /// CSV of feature rows (a label column, if present, is ignored)
    #[arg(long)]
    input: PathBuf,
    /// CSV of ±1 predictions to write
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "y")]
    label_column: String,
}

fn exec_predict(args: PredictArgs) -> Result<()> {
    let model = load_model(&args.model)?;
    let input = load_features(&args.input, &args.label_column)?;
    let predictions = model.predict_all(input.features())?;
    let mut out = String::from("prediction\n");
    for p in predictions {
        out.push_str(&format!("{p}\n"));
    }
    fs::write(&args.out, out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    model: PathBuf,
    /// Labeled CSV to score against
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Kv)]
    format: ReportFormat,
    #[arg(long, default_value = "y")]
    label_column: String,
}

fn exec_evaluate(args: EvaluateArgs) -> Result<()> {
    let model = load_model(&args.model)?;
    let data = load_labeled_csv(&args.data, &args.label_column)?;
    let predictions = model.predict_all(data.features())?;
    let margins = model.normalized_margins(data.features())?;

    let pairs = vec![
        (
            "bayes_error".to_string(),
            fmt_float(zero_one_error(&predictions, data.labels())?),
        ),
        (
            "gibbs_risk".to_string(),
            fmt_float(mean_loss(&margins, Some(data.labels()), probit_loss)?),
        ),
        (
            "convex_gibbs_risk".to_string(),
            fmt_float(mean_loss(&margins, Some(data.labels()), convex_probit_loss)?),
        ),
        (
            "disagreement".to_string(),
            fmt_float(mean_loss(&margins, None, disagreement_loss)?),
        ),
        (
            "joint_error".to_string(),
            fmt_float(mean_loss(&margins, Some(data.labels()), joint_error_loss)?),
        ),
        ("sample_size".to_string(), data.len().to_string()),
    ];
    print!("{}", emit_report(&pairs, args.format));
    Ok(())
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

#[derive(Args)]
struct BoundsArgs {
    /// Which bound to evaluate: catoni, 8, 9, 12 or 13
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    model: PathBuf,
    /// Labeled source CSV
    #[arg(long)]
    source: PathBuf,
    /// Target CSV, feature rows only (all bounds except catoni)
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Source-loss trade-off (catoni, 8, 12)
    #[arg(long)]
    omega: Option<f64>,
    /// Disagreement trade-off (8, 12)
    #[arg(long)]
    a: Option<f64>,
    /// Source-term constant (9, 13)
    #[arg(long)]
    b: Option<f64>,
    /// Target-term constant (9, 13)
    #[arg(long)]
    c: Option<f64>,
    /// Density-ratio supremum β∞ ≥ 1 (9, 13)
    #[arg(long)]
    beta_inf: Option<f64>,
    /// Supplied value for the non-estimable joint-error deviation (8, 12);
    /// omitted means "unknown", contributing zero
    #[arg(long)]
    lambda: Option<f64>,
    /// Supplied value for the non-estimable outside-support risk (9, 13);
    /// omitted means "unknown", contributing zero
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Kv)]
    format: ReportFormat,
    #[arg(long, default_value = "y")]
    label_column: String,
}

impl BoundsArgs {
    fn need(&self, flag: &str, v: Option<f64>) -> Result<f64> {
        v.ok_or_else(|| arg_err(format!("--theorem {} needs --{flag}", self.theorem)))
    }

    fn target_features(&self, label_column: &str) -> Result<UnlabeledSample> {
        let path = self
            .target
            .as_ref()
            .ok_or_else(|| arg_err(format!("--theorem {} needs --target", self.theorem)))?;
        load_features(path, label_column)
    }
}

/// The explicit weight vector of a primal model, for the majority-vote
/// corollaries that are stated in terms of it.
fn primal_posterior(model: &TrainedModel) -> Result<LinearPosterior> {
    match model.representation() {
        Representation::Primal { weights } => LinearPosterior::new(weights.clone()),
        Representation::Dual { .. } => Err(arg_err(
            "corollaries 12 and 13 need a primal model (explicit weights); \
             use --theorem 8 or 9 for kernel models",
        )),
    }
}

fn exec_bounds(args: BoundsArgs) -> Result<()> {
    let model = load_model(&args.model)?;
    let source = load_labeled_csv(&args.source, &args.label_column)?;
    let kl = model.kl()?;
    let margins_s = model.normalized_margins(source.features())?;
    let gibbs_s = mean_loss(&margins_s, Some(source.labels()), probit_loss)?;

    let kv = match args.theorem.as_str() {
        "catoni" => {
            let omega = args.need("omega", args.omega)?;
            let total = catoni_bound(gibbs_s, source.len(), kl, args.delta, omega)?;
            let mut kv = String::new();
            kv.push_str("bound=catoni\n");
            kv.push_str(&format!("total={}\n", fmt_float(total)));
            kv.push_str(&format!("empirical.source_gibbs={}\n", fmt_float(gibbs_s)));
            kv.push_str(&format!("constant.omega={}\n", fmt_float(omega)));
            kv.push_str(&format!("constant.delta={}\n", fmt_float(args.delta)));
            kv.push_str(&format!("constant.m={}\n", source.len()));
            kv.push_str(&format!("constant.kl={}\n", fmt_float(kl)));
            kv
        }
        "8" | "12" => {
            let target = args.target_features(&args.label_column)?;
            let margins_t = model.normalized_margins(target.features())?;
            let dis_s = mean_loss(&margins_s, None, disagreement_loss)?;
            let dis_t = mean_loss(&margins_t, None, disagreement_loss)?;
            let dis_gap = (dis_t - dis_s).abs();
            let omega = args.need("omega", args.omega)?;
            let a = args.need("a", args.a)?;
            let lambda = args.lambda.map(NonEstimable::Supplied).unwrap_or(NonEstimable::Unknown);
            let report = if args.theorem == "8" {
                theorem8_bound(gibbs_s, dis_gap, source.len(), kl, args.delta, omega, a, lambda)?
            } else {
                corollary12_bound(
                    gibbs_s,
                    dis_gap,
                    source.len(),
                    &primal_posterior(&model)?,
                    args.delta,
                    omega,
                    a,
                    lambda,
                )?
            };
            report.to_kv()
        }
        "9" | "13" => {
            let target = args.target_features(&args.label_column)?;
            let margins_t = model.normalized_margins(target.features())?;
            let dis_t = mean_loss(&margins_t, None, disagreement_loss)?;
            let joint_s = mean_loss(&margins_s, Some(source.labels()), joint_error_loss)?;
            let b = args.need("b", args.b)?;
            let c = args.need("c", args.c)?;
            let beta_inf = args.need("beta-inf", args.beta_inf)?;
            let eta = args.eta.map(NonEstimable::Supplied).unwrap_or(NonEstimable::Unknown);
            let report = if args.theorem == "9" {
                theorem9_bound(
                    dis_t,
                    joint_s,
                    source.len(),
                    target.len(),
                    kl,
                    args.delta,
                    b,
                    c,
                    beta_inf,
                    eta,
                )?
            } else {
                corollary13_bound(
                    dis_t,
                    joint_s,
                    source.len(),
                    target.len(),
                    &primal_posterior(&model)?,
                    args.delta,
                    b,
                    c,
                    beta_inf,
                    eta,
                )?
            };
            report.to_kv()
        }
        other => {
            return Err(arg_err(format!(
                "unknown bound `{other}` (expected catoni, 8, 9, 12 or 13)"
            )))
        }
    };

    match args.format {
        ReportFormat::Kv => print!("{kv}"),
        ReportFormat::Csv => print!("{}", kv_to_csv(&kv)),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// grid-search
// ---------------------------------------------------------------------------

#[derive(Args)]
struct GridSearchArgs {
    /// pbda or dalc (two-trade-off learners)
    #[arg(long)]
    algo: String,
    #[arg(long)]
    source: PathBuf,
    /// Target CSV, feature rows only (required with --selection reverse-cv)
    #[arg(long)]
    target: Option<PathBuf>,
    /// cv or reverse-cv
    #[arg(long, default_value = "cv")]
    selection: String,
    /// First grid axis as name:min:max:points:scale, scale ∈ {lin, log};
    /// defaults to the standard 20-point log axis for the algorithm
    #[arg(long)]
    axis1: Option<String>,
    /// Second grid axis, same syntax
    #[arg(long)]
    axis2: Option<String>,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Where to write the full score table as `param1,param2,score` CSV
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "y")]
    label_column: String,
}

fn parse_axis(spec: &str) -> Result<GridAxis> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [name, min, max, points, scale] = parts.as_slice() else {
        return Err(arg_err(format!(
            "axis `{spec}` must be name:min:max:points:scale (scale: lin or log)"
        )));
    };
    let bad = |what: &str| arg_err(format!("axis `{spec}`: bad {what}"));
    let min: f64 = min.parse().map_err(|_| bad("min"))?;
    let max: f64 = max.parse().map_err(|_| bad("max"))?;
    let points: usize = points.parse().map_err(|_| bad("point count"))?;
    match *scale {
        "lin" => GridAxis::linear(name, min, max, points),
        "log" => GridAxis::log(name, min, max, points),
        _ => Err(bad("scale (expected lin or log)")),
    }
}

fn exec_grid_search(args: GridSearchArgs) -> Result<()> {
    let algorithm = args.algo.parse::<Algorithm>()?;
    let selection = args.selection.parse::<Selection>()?;
    let form = args.kernel.form()?;
    let grid = match (&args.axis1, &args.axis2) {
        (None, None) => GridSpec::standard(algorithm)?,
        (Some(a1), Some(a2)) => GridSpec::new(parse_axis(a1)?, parse_axis(a2)?)?,
        _ => return Err(arg_err("--axis1 and --axis2 come as a pair")),
    };
    let source = load_labeled_csv(&args.source, &args.label_column)?;
    let target = match &args.target {
        Some(path) => Some(load_features(path, &args.label_column)?),
        None => None,
    };

    let result = grid_search(
        algorithm,
        form,
        &source,
        target.as_ref(),
        &grid,
        SearchSettings {
            selection,
            folds: args.folds,
            seed: args.seed,
        },
        &args.optimizer.settings(args.seed),
    )?;

    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    for (name, value) in result.best.named() {
        println!("best.{name}={}", fmt_float(value));
    }
    println!("best_score={}", fmt_float(result.best_score));
    println!("evaluations={}", result.table.len());
    if let Some(path) = &args.out {
        fs::write(path, result.table_csv())?;
        println!("table={}", path.display());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// reverse-cv
// ---------------------------------------------------------------------------

#[derive(Args)]
struct ReverseCvArgs {
    /// pbgd3, pbda or dalc
    #[arg(long)]
    algo: String,
    #[arg(long)]
    source: PathBuf,
    /// Target CSV, feature rows only
    #[arg(long)]
    target: PathBuf,
    #[command(flatten)]
    hyper: HyperArgs,
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also report the plain cross-validation risk for comparison
    #[arg(long)]
    with_cv: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Kv)]
    format: ReportFormat,
    #[arg(long, default_value = "y")]
    label_column: String,
}

fn exec_reverse_cv(args: ReverseCvArgs) -> Result<()> {
    let algorithm = args.algo.parse::<Algorithm>()?;
    let params = args.hyper.params(algorithm)?;
    let form = args.kernel.form()?;
    let source = load_labeled_csv(&args.source, &args.label_column)?;
    let target = load_features(&args.target, &args.label_column)?;
    let settings = args.optimizer.settings(args.seed);

    let outcome = reverse_cross_validate(
        params, form, &source, &target, args.folds, args.seed, &settings,
    )?;
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }

    let mut pairs = vec![(
        "mean_reverse_risk".to_string(),
        fmt_float(outcome.mean_risk),
    )];
    for (i, risk) in outcome.fold_risks.iter().enumerate() {
        pairs.push((format!("fold_{i}"), fmt_float(*risk)));
    }
    if args.with_cv {
        let cv = cross_validate(params, form, &source, args.folds, args.seed, &settings)?;
        pairs.push(("mean_cv_risk".to_string(), fmt_float(cv)));
    }
    print!("{}", emit_report(&pairs, args.format));
    Ok(())
}

// ---------------------------------------------------------------------------
// sweep-theta
// ---------------------------------------------------------------------------

#[derive(Args)]
struct SweepThetaArgs {
    /// Labeled 2-D source CSV
    #[arg(long)]
    source: PathBuf,
    /// 2-D target CSV, feature rows only
    #[arg(long)]
    target: PathBuf,
    /// Weight-vector norm r of the swept family r·(cos θ, sin θ)
    #[arg(long, default_value_t = 2.0)]
    norm: f64,
    /// Number of evenly spaced angles over [−π, π)
    #[arg(long, default_value_t = 720)]
    points: usize,
    /// CSV to write (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "y")]
    label_column: String,
}

/// Feature rows divided by their norms, flattened to 2-D pairs.
fn unit_rows_2d(features: &[nalgebra::DVector<f64>], norms: &[f64]) -> Result<Vec<(f64, f64)>> {
    if features[0].len() != 2 {
        return Err(arg_err(format!(
            "sweep-theta needs 2-dimensional features, got dimension {}",
            features[0].len()
        )));
    }
    Ok(features
        .iter()
        .zip(norms)
        .map(|(x, n)| (x[0] / n, x[1] / n))
        .collect())
}

fn exec_sweep_theta(args: SweepThetaArgs) -> Result<()> {
    if !args.norm.is_finite() || args.norm <= 0.0 {
        return Err(arg_err(format!("--norm must be > 0, got {}", args.norm)));
    }
    if args.points < 2 {
        return Err(arg_err("--points must be at least 2"));
    }
    let source = load_labeled_csv(&args.source, &args.label_column)?;
    let target = load_features(&args.target, &args.label_column)?;
    let us = unit_rows_2d(source.features(), source.norms())?;
    let ut = unit_rows_2d(target.features(), target.norms())?;
    let ys: Vec<f64> = source.labels().iter().map(|&y| f64::from(y)).collect();

    let mut out = String::from(
        "theta,bayes_risk,gibbs_risk,convex_gibbs_risk,disagreement_source,\
         disagreement_target,domain_disagreement,joint_error_source\n",
    );
    for k in 0..args.points {
        let theta = -std::f64::consts::PI
            + std::f64::consts::TAU * k as f64 / args.points as f64;
        let w = (args.norm * theta.cos(), args.norm * theta.sin());
        let margin = |u: &(f64, f64)| w.0 * u.0 + w.1 * u.1;

        let mut bayes = 0.0;
        let mut gibbs = 0.0;
        let mut convex = 0.0;
        let mut dis_s = 0.0;
        let mut joint = 0.0;
        for (u, &y) in us.iter().zip(&ys) {
            let m = margin(u);
            // sign ties predict +1, matching model prediction
            let predicted = if m >= 0.0 { 1.0 } else { -1.0 };
            bayes += f64::from(predicted != y);
            gibbs += probit_loss(y * m)?.value;
            convex += convex_probit_loss(y * m)?.value;
            dis_s += disagreement_loss(m)?.value;
            joint += joint_error_loss(y * m)?.value;
        }
        let ms = us.len() as f64;
        let mut dis_t = 0.0;
        for u in &ut {
            dis_t += disagreement_loss(margin(u))?.value;
        }
        dis_t /= ut.len() as f64;
        let (bayes, gibbs, convex, dis_s, joint) =
            (bayes / ms, gibbs / ms, convex / ms, dis_s / ms, joint / ms);

        out.push_str(&fmt_float(theta));
        for v in [bayes, gibbs, convex, dis_s, dis_t, (dis_t - dis_s).abs(), joint] {
            out.push(',');
            out.push_str(&fmt_float(v));
        }
        out.push('\n');
    }

    match &args.out {
        Some(path) => fs::write(path, out)?,
        None => print!("{out}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimization_failures_map_to_exit_two_everything_else_to_one() {
        assert_eq!(exit_code(&Error::Optimization("ray".into())), 2);
        assert_eq!(exit_code(&Error::Argument("bad".into())), 1);
        assert_eq!(
            exit_code(&Error::Parse {
                path: "f".into(),
                line: 3,
                message: "m".into()
            }),
            1
        );
        assert_eq!(exit_code(&Error::Undefined("q".into())), 1);
    }

    #[test]
    fn axis_specs_parse_and_reject() {
        let axis = parse_axis("Omega:0.01:1e6:20:log").unwrap();
        assert_eq!(axis.name(), "Omega");
        assert_eq!(axis.points(), 20);
        assert_eq!(axis.values()[0], 0.01);
        let axis = parse_axis("A:-1:1:5:lin").unwrap();
        assert_eq!(axis.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        for bad in [
            "Omega:0.01:1e6:20",        // missing scale
            "Omega:0.01:1e6:20:geom",   // unknown scale
            "Omega:x:1e6:20:log",       // bad min
            "Omega:0.01:1e6:many:log",  // bad count
            "Omega:0.01:1e6:20:log:up", // trailing field
        ] {
            assert!(parse_axis(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn hyperparameter_flags_are_strict_per_algorithm() {
        let hyper = HyperArgs {
            omega: Some(1.0),
            a: None,
            b: None,
            c: None,
            plain_source_loss: false,
        };
        assert_eq!(
            hyper.params(Algorithm::Pbgd3).unwrap(),
            HyperParams::pbgd3(1.0)
        );
        assert!(hyper.params(Algorithm::Pbda).is_err()); // missing --A
        assert!(hyper.params(Algorithm::Dalc).is_err()); // foreign --omega

        let hyper = HyperArgs {
            omega: Some(1.0),
            a: Some(2.0),
            b: None,
            c: None,
            plain_source_loss: true,
        };
        assert_eq!(
            hyper.params(Algorithm::Pbda).unwrap(),
            HyperParams::Pbda {
                omega: 1.0,
                a: 2.0,
                convex: false
            }
        );
    }

    #[test]
    fn kernel_flags_build_the_right_form() {
        let form = |kernel: Option<&str>, gamma| {
            KernelArgs {
                kernel: kernel.map(String::from),
                gamma,
            }
            .form()
        };
        assert_eq!(form(None, None).unwrap(), ModelForm::Primal);
        assert_eq!(
            form(Some("linear"), None).unwrap(),
            ModelForm::Dual(KernelKind::Linear)
        );
        assert_eq!(
            form(Some("rbf"), Some(0.5)).unwrap(),
            ModelForm::Dual(KernelKind::Rbf { gamma: 0.5 })
        );
        assert!(form(Some("rbf"), None).is_err());
        assert!(form(None, Some(1.0)).is_err());
        assert!(form(Some("poly"), None).is_err());
    }

    #[test]
    fn reports_render_in_both_formats() {
        let pairs = vec![
            ("alpha".to_string(), "1".to_string()),
            ("beta".to_string(), "2".to_string()),
        ];
        assert_eq!(emit_report(&pairs, ReportFormat::Kv), "alpha=1\nbeta=2\n");
        assert_eq!(
            emit_report(&pairs, ReportFormat::Csv),
            "metric,value\nalpha,1\nbeta,2\n"
        );
        assert_eq!(kv_to_csv("a=1\nb=x=y\n"), "key,value\na,1\nb,x=y\n");
    }
}
