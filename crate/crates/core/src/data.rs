//! Core data model: observation traces, ensembles, hyperparameters and
//! per-trace variational posteriors.
//!
//! States are indexed `0..K-1` everywhere. The consensus-state identity is
//! positional: row `k` of the hyperparameters defines consensus state `k`,
//! which is what ties states together across traces and avoids
//! label-switching at the ensemble level. Observations are stored as raw
//! values with no normalization.

use ndarray::{Array1, Array2, Array3};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DataError {
    #[error("invalid hyperparameters: {0}")]
    InvalidHyperparameters(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// A single observation sequence, the unit of inference.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub id: String,
    pub x: Vec<f64>,
}

impl Trace {
    pub fn new(id: impl Into<String>, x: Vec<f64>) -> Self {
        Trace { id: id.into(), x }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// An ensemble of traces. Lengths may differ from trace to trace.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ensemble {
    pub traces: Vec<Trace>,
}

impl Ensemble {
    pub fn new(traces: Vec<Trace>) -> Self {
        Ensemble { traces }
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    /// Total number of observations across all traces.
    pub fn total_observations(&self) -> usize {
        self.traces.iter().map(|t| t.len()).sum()
    }

    /// All observations in trace order.
    pub fn pooled(&self) -> Vec<f64> {
        self.traces.iter().flat_map(|t| t.x.iter().copied()).collect()
    }
}

/// One invariant violation found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub trace_id: String,
    pub reason: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "trace '{}': {}", self.trace_id, self.reason)
    }
}

/// Check ensemble invariants. Returns an empty list iff the ensemble is
/// well formed; violations are data, not errors.
pub fn validate(ensemble: &Ensemble) -> Vec<Violation> {
    let mut out = Vec::new();
    if ensemble.is_empty() {
        out.push(Violation {
            trace_id: "(ensemble)".to_string(),
            reason: "ensemble is empty; at least one trace is required".to_string(),
        });
    }
    for trace in &ensemble.traces {
        if trace.len() < 2 {
            out.push(Violation {
                trace_id: trace.id.clone(),
                reason: format!("length below minimum: {} < 2", trace.len()),
            });
        }
        for (t, v) in trace.x.iter().enumerate() {
            if !v.is_finite() {
                out.push(Violation {
                    trace_id: trace.id.clone(),
                    reason: format!("non-finite value {v} at index {t}"),
                });
            }
        }
    }
    out
}

/// Shared prior parameters: one Normal-Gamma row per consensus state, one
/// Dirichlet row per transition source state, and a Dirichlet over the
/// initial state. K(K+5) free scalars in total.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparameters {
    /// Prior location of state means, length K.
    pub m: Array1<f64>,
    /// Precision scaling of the mean prior, length K.
    pub beta: Array1<f64>,
    /// Gamma shape of the precision prior, length K.
    pub a: Array1<f64>,
    /// Gamma rate of the precision prior, length K.
    pub b: Array1<f64>,
    /// Dirichlet rows over transitions, K x K.
    pub alpha: Array2<f64>,
    /// Dirichlet over the initial state, length K.
    pub rho: Array1<f64>,
}

impl Hyperparameters {
    pub fn num_states(&self) -> usize {
        self.m.len()
    }

    /// K(K+5): the count of free scalars in this parameterization.
    pub fn num_free_scalars(&self) -> usize {
        let k = self.num_states();
        k * (k + 5)
    }

    pub fn validate(&self) -> Result<(), DataError> {
        let k = self.num_states();
        if k == 0 {
            return Err(DataError::InvalidHyperparameters(
                "zero states".to_string(),
            ));
        }
        let same_len = self.beta.len() == k
            && self.a.len() == k
            && self.b.len() == k
            && self.rho.len() == k
            && self.alpha.shape() == [k, k];
        if !same_len {
            return Err(DataError::ShapeMismatch(format!(
                "hyperparameter blocks disagree on K={k}"
            )));
        }
        let positive = |name: &str, it: &mut dyn Iterator<Item = f64>| -> Result<(), DataError> {
            for v in it {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(DataError::InvalidHyperparameters(format!(
                        "{name} must be strictly positive and finite, found {v}"
                    )));
                }
            }
            Ok(())
        };
        positive("beta", &mut self.beta.iter().copied())?;
        positive("a", &mut self.a.iter().copied())?;
        positive("b", &mut self.b.iter().copied())?;
        positive("alpha", &mut self.alpha.iter().copied())?;
        positive("rho", &mut self.rho.iter().copied())?;
        for v in self.m.iter() {
            if !v.is_finite() {
                return Err(DataError::InvalidHyperparameters(format!(
                    "m must be finite, found {v}"
                )));
            }
        }
        Ok(())
    }

    /// Relabel consensus states: row `k` of the result is row `perm[k]` of
    /// `self`.
    pub fn permute_states(&self, perm: &[usize]) -> Self {
        let k = self.num_states();
        assert_eq!(perm.len(), k);
        let pick1 = |v: &Array1<f64>| Array1::from_iter(perm.iter().map(|&p| v[p]));
        let mut alpha = Array2::zeros((k, k));
        for i in 0..k {
            for j in 0..k {
                alpha[[i, j]] = self.alpha[[perm[i], perm[j]]];
            }
        }
        Hyperparameters {
            m: pick1(&self.m),
            beta: pick1(&self.beta),
            a: pick1(&self.a),
            b: pick1(&self.b),
            alpha,
            rho: pick1(&self.rho),
        }
    }
}

/// Variational posterior for one trace: conjugate posterior parameters for
/// the trace's own states, plus the state marginals produced by
/// forward-backward.
#[derive(Debug, Clone, PartialEq)]
pub struct TracePosterior {
    pub hat_m: Array1<f64>,
    pub hat_beta: Array1<f64>,
    pub hat_a: Array1<f64>,
    pub hat_b: Array1<f64>,
    pub hat_alpha: Array2<f64>,
    pub hat_rho: Array1<f64>,
    /// State marginals q(z_t = k), T x K; each row sums to one.
    pub gamma: Array2<f64>,
    /// Pairwise marginals q(z_t = i, z_{t+1} = j), (T-1) x K x K; each time
    /// slice sums to one.
    pub xi_pair: Array3<f64>,
    /// Evidence lower bound of this trace's variational fit.
    pub elbo: f64,
}

impl TracePosterior {
    pub fn num_states(&self) -> usize {
        self.hat_m.len()
    }

    /// Trace length T.
    pub fn len(&self) -> usize {
        self.gamma.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Check the documented posterior invariants; returns one message per
    /// violation. Row sums use 1e-10, marginal consistency 1e-8.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (t_len, k) = (self.len(), self.num_states());
        for (t, row) in self.gamma.rows().into_iter().enumerate() {
            let s: f64 = row.sum();
            if (s - 1.0).abs() > 1e-10 {
                out.push(format!("gamma row {t} sums to {s}"));
            }
        }
        for t in 0..t_len.saturating_sub(1) {
            let slice = self.xi_pair.index_axis(ndarray::Axis(0), t);
            let s: f64 = slice.sum();
            if (s - 1.0).abs() > 1e-10 {
                out.push(format!("xi_pair slice {t} sums to {s}"));
            }
            for i in 0..k {
                let row_sum: f64 = (0..k).map(|j| slice[[i, j]]).sum();
                if (row_sum - self.gamma[[t, i]]).abs() > 1e-8 {
                    out.push(format!(
                        "xi_pair slice {t} row {i} marginal {row_sum} != gamma {}",
                        self.gamma[[t, i]]
                    ));
                }
                let col_sum: f64 = (0..k).map(|j| slice[[j, i]]).sum();
                if (col_sum - self.gamma[[t + 1, i]]).abs() > 1e-8 {
                    out.push(format!(
                        "xi_pair slice {t} col {i} marginal {col_sum} != gamma {}",
                        self.gamma[[t + 1, i]]
                    ));
                }
            }
        }
        for (name, v) in [
            ("hat_beta", &self.hat_beta),
            ("hat_a", &self.hat_a),
            ("hat_b", &self.hat_b),
            ("hat_rho", &self.hat_rho),
        ] {
            if v.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
                out.push(format!("{name} not strictly positive"));
            }
        }
        if self.hat_alpha.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            out.push("hat_alpha not strictly positive".to_string());
        }
        out
    }
}

/// Per-trace sampled parameters of the generative model.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceParams {
    pub mu: Array1<f64>,
    pub lambda: Array1<f64>,
    /// Row-stochastic transition matrix.
    pub trans: Array2<f64>,
    pub pi: Array1<f64>,
}

/// Latent paths, sampled parameters and true transition counts, kept for
/// evaluation against inference output.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    /// Latent state path per trace; values in [0, K).
    pub z: Vec<Vec<usize>>,
    pub theta: Vec<TraceParams>,
    /// True transition counts per trace, K x K, summing to T_n - 1.
    pub xi0: Vec<Array2<f64>>,
}

/// Ensemble-averaged posterior expectations that drive the hyperparameter
/// M-step.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleMoments {
    pub e_lambda: Array1<f64>,
    pub e_log_lambda: Array1<f64>,
    pub e_mu_lambda: Array1<f64>,
    pub e_mu2_lambda: Array1<f64>,
    /// Expected log transition probabilities, K x K; entries are negative.
    pub e_log_trans: Array2<f64>,
    /// Expected log initial-state probabilities, length K.
    pub e_log_init: Array1<f64>,
}

impl EnsembleMoments {
    pub fn num_states(&self) -> usize {
        self.e_lambda.len()
    }

    /// Jensen gap `E[log lambda] - log E[lambda]` for state k. Strictly
    /// negative for any non-degenerate posterior.
    pub fn jensen_gap(&self, k: usize) -> f64 {
        self.e_log_lambda[k] - self.e_lambda[k].ln()
    }
}
