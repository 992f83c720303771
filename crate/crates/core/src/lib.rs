//! Hierarchically-coupled hidden Markov models for ensembles of noisy
//! time series.
//!
//! Each trace is modelled as an HMM with Normal emissions whose parameters
//! are drawn from shared conjugate priors (Normal-Gamma for state means and
//! precisions, Dirichlet for transition rows and the initial state). Inference
//! runs variational Bayes per trace and couples the traces through
//! empirical-Bayes point estimation of the shared hyperparameters, so the
//! ensemble is summarised by a single consensus kinetic scheme.
//!
//! Module map:
//! - [`special`]: digamma/trigamma and the Newton solvers used by the
//!   hyperparameter M-step.
//! - [`data`]: traces, ensembles, hyperparameters, per-trace posteriors.
//! - [`vb`]: per-trace variational Bayes (scaled forward-backward, conjugate
//!   updates, evidence lower bound).
//! - [`eb`]: the outer generalized-EM loop over the hyperparameters.
//! - [`sim`]: generative sampling for validation studies.
//! - [`baselines`]: per-trace ML (Baum-Welch + BIC) and uninformative-prior VB
//!   comparison pipelines with GMM remapping to consensus states.
//! - [`eval`]: pseudocount errors, effective state counts, free-energy
//!   posteriors, cross-validation.

pub mod baselines;
pub mod data;
pub mod eb;
pub mod eval;
pub mod sim;
pub mod special;
pub mod vb;
