//! Model persistence and the primal/dual equivalence.
//!
//! Fits the same problem twice — once as an explicit weight vector, once
//! as linear-kernel coefficients over the training points — and shows
//! that the two parametrizations reach the same objective and the same
//! predictions.  Both models then round-trip through the text format:
//! saved, reloaded, and re-checked.  The format is a short header plus
//! 17-significant-digit coefficients, so a reload is bit-exact.
//!
//! Usage: model_files [seed]  (default: 5)

use pbda::data::{gen_toy, ToyKind, ToySpec};
use pbda::training::{
    load_model, model_to_string, save_model, train, HyperParams, ModelForm, OptimizerSettings,
};
use pbda::kernels::KernelKind;
use pbda::Result;

fn main() -> Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map(|raw| raw.parse().expect("numeric seed"))
        .unwrap_or(5);

    let (source, probe) = gen_toy(&ToySpec {
        kind: ToyKind::GaussianSupervised,
        n_per_class: 60,
        noise_sigma: 1.0,
        rotation_deg: 0.0,
        seed,
    })?;
    let params = HyperParams::pbgd3(1.0);
    let settings = OptimizerSettings::default();

    let primal = train(params, ModelForm::Primal, &source, None, &settings)?;
    let dual = train(
        params,
        ModelForm::Dual(KernelKind::Linear),
        &source,
        None,
        &settings,
    )?;
    println!("primal objective {:.10}", primal.objective_value());
    println!("dual   objective {:.10}", dual.objective_value());
    println!(
        "objective gap    {:.2e}",
        (primal.objective_value() - dual.objective_value()).abs()
    );

    let agree = primal
        .predict_all(probe.features())?
        .iter()
        .zip(dual.predict_all(probe.features())?)
        .filter(|(a, b)| **a == *b)
        .count();
    println!("prediction agreement on held-out rows: {agree}/{}", probe.len());

    let dir = std::env::temp_dir().join("pbda_model_files_example");
    std::fs::create_dir_all(&dir)?;
    for (name, model) in [("primal", &primal), ("dual", &dual)] {
        let path = dir.join(format!("{name}.txt"));
        save_model(model, &path)?;
        let reloaded = load_model(&path)?;
        let text = model_to_string(model);
        let identical = model_to_string(&reloaded) == text;
        println!("\n{name} model round-trips bit-exactly: {identical}");
        for line in text.lines().take(4) {
            println!("  {line}");
        }
        let remaining = text.lines().count().saturating_sub(4);
        println!("  … {remaining} more lines in {}", path.display());
    }
    Ok(())
}
