//! Plain-text serialization of trained models.
//!
//! The format is line-oriented and self-describing:
//!
//! ```text
//! PBDA-MODEL v1 <algorithm> <primal|dual> <linear|rbf>
//! hyperparameter <name> <value>     (zero or more lines)
//! objective <value>
//! iterations <count>
//! coefficients <n>
//! <coefficient>                     (n lines)
//! support <n> <dim>                 (dual models only)
//! <dim space-separated values>      (n lines)
//! ```
//!
//! Floats are written with 17 significant digits, which round-trips every
//! f64 exactly; an RBF width travels as the `gamma` hyperparameter and the
//! header carries only the kernel's name.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DVector;

use crate::bounds::fmt_float;
use crate::error::{Error, Result};
use crate::kernels::KernelKind;

use super::{Algorithm, Representation, TrainedModel};

/// Render a model in the text format.
pub fn model_to_string(model: &TrainedModel) -> String {
    let (repr, kernel) = match &model.representation {
        Representation::Primal { .. } => ("primal", "linear"),
        Representation::Dual { kernel, .. } => ("dual", kernel.name()),
    };
    let mut out = String::new();
    let _ = writeln!(out, "PBDA-MODEL v1 {} {repr} {kernel}", model.algorithm);
    for (name, value) in &model.hyperparameters {
        let _ = writeln!(out, "hyperparameter {name} {}", fmt_float(*value));
    }
    let _ = writeln!(out, "objective {}", fmt_float(model.objective_value));
    let _ = writeln!(out, "iterations {}", model.iterations_used);
    match &model.representation {
        Representation::Primal { weights } => {
            let _ = writeln!(out, "coefficients {}", weights.len());
            for v in weights.iter() {
                let _ = writeln!(out, "{}", fmt_float(*v));
            }
        }
        Representation::Dual { alpha, support, .. } => {
            let _ = writeln!(out, "coefficients {}", alpha.len());
            for v in alpha.iter() {
                let _ = writeln!(out, "{}", fmt_float(*v));
            }
            let dim = support[0].len();
            let _ = writeln!(out, "support {} {dim}", support.len());
            for point in support {
                let row: Vec<String> = point.iter().map(|v| fmt_float(*v)).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
    }
    out
}

/// Parse a model from the text format (see the module docs for the layout).
pub fn model_from_str(text: &str) -> Result<TrainedModel> {
    parse(text, "<model>")
}

/// Write a model file.
pub fn save_model(model: &TrainedModel, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, model_to_string(model))?;
    Ok(())
}

/// Read a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<TrainedModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse(&text, &path.display().to_string())
}

struct Cursor<'a> {
    lines: std::str::Lines<'a>,
    origin: &'a str,
    line_no: usize,
}

impl<'a> Cursor<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            path: self.origin.to_string(),
            line: self.line_no,
            message: message.into(),
        })
    }

    fn next_line(&mut self) -> Result<&'a str> {
        self.line_no += 1;
        match self.lines.next() {
            Some(l) => Ok(l),
            None => self.fail("unexpected end of model file"),
        }
    }

    fn parse_f64(&self, token: &str) -> Result<f64> {
        match token.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => self.fail(format!("expected a finite number, got `{token}`")),
        }
    }

    fn parse_usize(&self, token: &str) -> Result<usize> {
        token
            .parse::<usize>()
            .or_else(|_| self.fail(format!("expected a non-negative count, got `{token}`")))
    }
}

fn parse(text: &str, origin: &str) -> Result<TrainedModel> {
    let mut cur = Cursor {
        lines: text.lines(),
        origin,
        line_no: 0,
    };

    // header
    let header: Vec<&str> = cur.next_line()?.split_whitespace().collect();
    if header.len() != 5 || header[0] != "PBDA-MODEL" {
        return cur.fail("expected header `PBDA-MODEL v1 <algorithm> <primal|dual> <kernel>`");
    }
    if header[1] != "v1" {
        return cur.fail(format!("unsupported format version `{}`", header[1]));
    }
    let algorithm: Algorithm = header[2]
        .parse()
        .or_else(|e: Error| cur.fail(e.to_string()))?;
    let dual = match header[3] {
        "primal" => false,
        "dual" => true,
        other => return cur.fail(format!("unknown representation `{other}`")),
    };
    let kernel_name = header[4];
    if !dual && kernel_name != "linear" {
        return cur.fail(format!(
            "a primal model is inherently linear, got kernel `{kernel_name}`"
        ));
    }

    // hyperparameters until the objective line
    let mut hyperparameters = Vec::new();
    let objective_value;
    loop {
        let line = cur.next_line()?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["hyperparameter", name, value] => {
                hyperparameters.push((name.to_string(), cur.parse_f64(value)?));
            }
            ["objective", value] => {
                objective_value = cur.parse_f64(value)?;
                break;
            }
            _ => return cur.fail(format!("expected `hyperparameter` or `objective`, got `{line}`")),
        }
    }

    let tokens: Vec<&str> = cur.next_line()?.split_whitespace().collect();
    let iterations_used = match tokens.as_slice() {
        ["iterations", n] => cur.parse_usize(n)?,
        _ => return cur.fail("expected `iterations <count>`"),
    };

    let tokens: Vec<&str> = cur.next_line()?.split_whitespace().collect();
    let n_coef = match tokens.as_slice() {
        ["coefficients", n] => cur.parse_usize(n)?,
        _ => return cur.fail("expected `coefficients <n>`"),
    };
    if n_coef == 0 {
        return cur.fail("a model needs at least one coefficient");
    }
    let mut coefficients = Vec::with_capacity(n_coef);
    for _ in 0..n_coef {
        let line = cur.next_line()?;
        coefficients.push(cur.parse_f64(line.trim())?);
    }

    let representation = if dual {
        let tokens: Vec<&str> = cur.next_line()?.split_whitespace().collect();
        let (n_sup, dim) = match tokens.as_slice() {
            ["support", n, d] => (cur.parse_usize(n)?, cur.parse_usize(d)?),
            _ => return cur.fail("expected `support <n> <dim>`"),
        };
        if n_sup != n_coef {
            return cur.fail(format!(
                "support size {n_sup} != coefficient count {n_coef}"
            ));
        }
        if dim == 0 {
            return cur.fail("support points must have dimension ≥ 1");
        }
        let mut support = Vec::with_capacity(n_sup);
        for _ in 0..n_sup {
            let row: Vec<&str> = cur.next_line()?.split_whitespace().collect();
            if row.len() != dim {
                return cur.fail(format!(
                    "support row has {} values, expected {dim}",
                    row.len()
                ));
            }
            let mut point = Vec::with_capacity(dim);
            for token in row {
                point.push(cur.parse_f64(token)?);
            }
            support.push(DVector::from_vec(point));
        }
        let kernel = match kernel_name {
            "linear" => KernelKind::Linear,
            "rbf" => {
                let gamma = hyperparameters
                    .iter()
                    .find(|(name, _)| name == "gamma")
                    .map(|&(_, v)| v);
                match gamma {
                    Some(g) => {
                        let kind = KernelKind::Rbf { gamma: g };
                        kind.validate()
                            .or_else(|e| cur.fail(e.to_string()))?;
                        kind
                    }
                    None => {
                        return cur.fail(
                            "an rbf model needs a `gamma` hyperparameter line",
                        )
                    }
                }
            }
            other => return cur.fail(format!("unknown kernel `{other}`")),
        };
        Representation::Dual {
            alpha: DVector::from_vec(coefficients),
            support,
            kernel,
        }
    } else {
        Representation::Primal {
            weights: DVector::from_vec(coefficients),
        }
    };

    // nothing but whitespace may follow
    loop {
        cur.line_no += 1;
        match cur.lines.next() {
            None => break,
            Some(line) if line.trim().is_empty() => {}
            Some(line) => {
                let line = line.to_string();
                return cur.fail(format!("unexpected trailing content `{line}`"));
            }
        }
    }

    Ok(TrainedModel {
        algorithm,
        representation,
        hyperparameters,
        objective_value,
        iterations_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    fn primal_model() -> TrainedModel {
        TrainedModel {
            algorithm: Algorithm::Pbgd3,
            representation: Representation::Primal {
                weights: dvector![1.0 / 3.0, -2.5e-17],
            },
            hyperparameters: vec![("Omega".to_string(), 1.25)],
            objective_value: 0.1 + 0.2, // deliberately not exactly 0.3
            iterations_used: 17,
        }
    }

    fn dual_model() -> TrainedModel {
        TrainedModel {
            algorithm: Algorithm::Dalc,
            representation: Representation::Dual {
                alpha: dvector![0.25, -0.5, 1.0 / 7.0],
                support: vec![
                    dvector![1.0, 2.0],
                    dvector![-0.125, 0.0],
                    dvector![3.5, -1.0 / 3.0],
                ],
                kernel: KernelKind::Rbf { gamma: 0.75 },
            },
            hyperparameters: vec![
                ("B".to_string(), 1.0),
                ("C".to_string(), 2.0),
                ("gamma".to_string(), 0.75),
            ],
            objective_value: 12.75,
            iterations_used: 321,
        }
    }

    #[test]
    fn primal_model_round_trips_exactly() {
        let model = primal_model();
        let text = model_to_string(&model);
        assert!(text.starts_with("PBDA-MODEL v1 pbgd3 primal linear\n"), "{text}");
        let back = model_from_str(&text).unwrap();
        assert_eq!(model, back);
    }

    #[test]
    fn dual_model_round_trips_exactly() {
        let model = dual_model();
        let text = model_to_string(&model);
        assert!(text.starts_with("PBDA-MODEL v1 dalc dual rbf\n"), "{text}");
        let back = model_from_str(&text).unwrap();
        assert_eq!(model, back);
    }

    #[test]
    fn floats_are_written_with_seventeen_significant_digits() {
        let text = model_to_string(&primal_model());
        // 1/3 to 17 significant digits
        assert!(text.contains("3.3333333333333331e-1"), "{text}");
        assert!(text.contains("3.0000000000000004e-1"), "{text}"); // 0.1+0.2 != 0.3
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.txt");
        let model = dual_model();
        save_model(&model, &path).unwrap();
        assert_eq!(load_model(&path).unwrap(), model);
    }

    fn expect_parse_error(text: &str, line: usize) {
        match model_from_str(text) {
            Err(Error::Parse { line: at, .. }) => {
                assert_eq!(at, line, "wrong line for {text:?}")
            }
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn malformed_models_are_rejected_with_line_numbers() {
        // wrong magic
        expect_parse_error("NOT-A-MODEL v1 pbgd3 primal linear\n", 1);
        // wrong version
        expect_parse_error("PBDA-MODEL v2 pbgd3 primal linear\n", 1);
        // unknown algorithm
        expect_parse_error("PBDA-MODEL v1 svm primal linear\n", 1);
        // primal with a non-linear kernel
        expect_parse_error("PBDA-MODEL v1 pbgd3 primal rbf\n", 1);
        // non-numeric coefficient on line 4
        expect_parse_error(
            "PBDA-MODEL v1 pbgd3 primal linear\nobjective 1.0\niterations 2\ncoefficients 1\nabc\n",
            5,
        );
        // truncated coefficient list
        expect_parse_error(
            "PBDA-MODEL v1 pbgd3 primal linear\nobjective 1.0\niterations 2\ncoefficients 2\n1.0\n",
            6,
        );
        // trailing garbage
        expect_parse_error(
            "PBDA-MODEL v1 pbgd3 primal linear\nobjective 1.0\niterations 2\ncoefficients 1\n1.0\nstray\n",
            6,
        );
    }

    #[test]
    fn dual_specific_failures_are_rejected() {
        let mut model = dual_model();
        // support count mismatch: render, then corrupt the count line
        let text = model_to_string(&model).replace("support 3 2", "support 2 2");
        assert!(model_from_str(&text).is_err());

        // rbf without a gamma hyperparameter
        model.hyperparameters.retain(|(name, _)| name != "gamma");
        let text = model_to_string(&model);
        let err = model_from_str(&text).unwrap_err();
        assert!(err.to_string().contains("gamma"), "{err}");

        // ragged support row
        let text = model_to_string(&dual_model()).replace("1.0000000000000000e0 2.0000000000000000e0", "1.0");
        assert!(model_from_str(&text).is_err());
    }

    #[test]
    fn missing_objective_line_is_rejected() {
        expect_parse_error("PBDA-MODEL v1 pbgd3 primal linear\niterations 2\n", 2);
    }
}
