//! PAC-Bayesian learning and domain adaptation for linear classifiers.
//!
//! The crate trains linear (and kernelized) classifiers by minimizing
//! PAC-Bayesian risk bounds, estimates the quantities those bounds are built
//! from (Gibbs risk, vote disagreement, joint error, domain disagreement),
//! and evaluates the bounds themselves so that a learned model ships with a
//! certified risk report.
//!
//! Organization:
//!
//! * [`losses`] — the five analytic scalar losses of the linear
//!   specialization, with exact derivatives.
//! * [`data`] — datasets, file formats (SVM-light, CSV), synthetic toys,
//!   fold splitting.
//! * [`kernels`] — Gram matrices, the joint source/target Gram, and a binary
//!   Gram cache.
//! * [`estimators`] — closed-form empirical estimators for linear posteriors
//!   plus a Monte-Carlo cross-check.
//! * [`finite_vote`] — exact brute-force counterparts on small finite votes,
//!   used as test oracles.
//! * [`bounds`] — PAC-Bayesian bound calculators and the term-by-term
//!   [`bounds::BoundReport`].
//! * [`training`] — the three learners (supervised, divergence-driven, and
//!   disagreement/joint-error domain adaptation) over primal or dual
//!   representations, with a self-contained BFGS minimizer.
//! * [`model_selection`] — k-fold cross-validation, reverse (circular)
//!   validation, and grid search.
//! * [`cli`] — the `pbda` command-line front end.

pub mod bounds;
pub mod data;
pub mod error;
pub mod estimators;
pub mod finite_vote;
pub mod kernels;
pub mod losses;
pub mod model_selection;
pub mod training;

pub use error::{Error, Result};
