//! Per-trace variational Bayes for an HMM with Normal emissions under a
//! Normal-Gamma / Dirichlet prior.
//!
//! The E-step runs scaled forward-backward under expected log-parameters
//! (digamma-based subprobabilities), the M-step applies the conjugate
//! updates, and the evidence lower bound decomposes as the trajectory log
//! normalizer minus the KL divergences of the parameter posteriors from
//! their priors.
//!
//! Scaling uses per-time-step normalization constants rather than log-space
//! addition in the inner loop; the log normalizer is recovered as the sum of
//! log scale factors, so traces up to T ~ 1e5 run without underflow.

use crate::data::{DataError, Hyperparameters, Trace, TracePosterior};
use crate::special::digamma_raw;
use ndarray::{Array1, Array2, Array3, ArrayView1, Axis};
use thiserror::Error;

const LN_2PI: f64 = 1.837877066409345483560659472811;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VbError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("numeric failure in forward-backward at t={t}: all scaled emissions vanished")]
    Underflow { t: usize },
}

/// Expected sufficient statistics of one trace under q(z).
#[derive(Debug, Clone, PartialEq)]
pub struct SufficientStats {
    /// Expected occupancy per state, sums to T.
    pub nk: Array1<f64>,
    /// Occupancy-weighted mean of x per state (0 where nk = 0).
    pub xbar: Array1<f64>,
    /// Occupancy-weighted sum of squared deviations about xbar (0 where nk = 0).
    pub s: Array1<f64>,
    /// Expected transition counts, sums to T - 1.
    pub c: Array2<f64>,
    /// State marginal at t = 0.
    pub g0: Array1<f64>,
}

/// Convergence control for the per-trace VB loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub elbo_rel_tolerance: f64,
    pub max_vb_iterations: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            elbo_rel_tolerance: 1e-8,
            max_vb_iterations: 100,
        }
    }
}

/// Conjugate posterior parameters produced by the trace M-step.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalParams {
    pub hat_m: Array1<f64>,
    pub hat_beta: Array1<f64>,
    pub hat_a: Array1<f64>,
    pub hat_b: Array1<f64>,
    pub hat_alpha: Array2<f64>,
    pub hat_rho: Array1<f64>,
}

/// Output of one forward-backward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct FbResult {
    pub gamma: Array2<f64>,
    pub xi_pair: Array3<f64>,
    pub log_z: f64,
}

/// Evidence lower bound with its additive decomposition. The KL terms are
/// stored as the (nonnegative) divergences themselves; the bound is
/// `trajectory - kl_normal_gamma - kl_transitions - kl_initial`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElboBreakdown {
    pub total: f64,
    pub trajectory: f64,
    pub kl_normal_gamma: f64,
    pub kl_transitions: f64,
    pub kl_initial: f64,
}

/// How to seed the first E-step of a trace fit.
#[derive(Debug, Clone, Copy)]
pub enum TraceInit<'a> {
    /// Emission responsibilities under the prior-mean parameters
    /// (mu_k = m_k, lambda_k = a_k / b_k). Deterministic and cheap.
    PriorResponsibilities,
    /// Caller-supplied soft assignments, one row per time point. Pairwise
    /// marginals are seeded as outer products of consecutive rows.
    Responsibilities(&'a Array2<f64>),
    /// Warm start from a previous posterior's marginals.
    WarmStart(&'a TracePosterior),
}

/// A completed trace fit: the posterior plus the ELBO value of every
/// iteration (non-decreasing up to arithmetic slack).
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFitOutcome {
    pub posterior: TracePosterior,
    pub elbo_history: Vec<f64>,
}

/// Expected log emission densities `E_q[log Normal(x_t | mu_k, lambda_k)]`
/// under the trace's Normal-Gamma posterior.
pub fn expected_log_emission(post: &TracePosterior, x: &[f64]) -> Array2<f64> {
    expected_log_emission_from(
        post.hat_m.view(),
        post.hat_beta.view(),
        post.hat_a.view(),
        post.hat_b.view(),
        x,
    )
}

pub(crate) fn expected_log_emission_from(
    hat_m: ArrayView1<f64>,
    hat_beta: ArrayView1<f64>,
    hat_a: ArrayView1<f64>,
    hat_b: ArrayView1<f64>,
    x: &[f64],
) -> Array2<f64> {
    let k = hat_m.len();
    let t_len = x.len();
    let mut out = Array2::zeros((t_len, k));
    for j in 0..k {
        // 0.5 * (Psi(a) - ln b - ln 2pi - 1/beta - (a/b)(x - m)^2)
        let base = digamma_raw(hat_a[j]) - hat_b[j].ln() - LN_2PI - 1.0 / hat_beta[j];
        let prec = hat_a[j] / hat_b[j];
        let mean = hat_m[j];
        for (t, &xt) in x.iter().enumerate() {
            let d = xt - mean;
            out[[t, j]] = 0.5 * (base - prec * d * d);
        }
    }
    out
}

/// Expected log transition matrix `E_q[log A]` from Dirichlet rows.
pub(crate) fn expected_log_dirichlet_rows(alpha: &Array2<f64>) -> Array2<f64> {
    let k = alpha.nrows();
    let mut out = Array2::zeros(alpha.dim());
    for i in 0..k {
        let row_sum: f64 = alpha.row(i).sum();
        let dig_sum = digamma_raw(row_sum);
        for j in 0..alpha.ncols() {
            out[[i, j]] = digamma_raw(alpha[[i, j]]) - dig_sum;
        }
    }
    out
}

/// Expected log probabilities `E_q[log pi]` of a single Dirichlet.
pub(crate) fn expected_log_dirichlet(v: ArrayView1<f64>) -> Array1<f64> {
    let dig_sum = digamma_raw(v.sum());
    v.mapv(|a| digamma_raw(a) - dig_sum)
}

/// Scaled forward-backward under expected log-parameters.
///
/// `log_trans_star` and `log_init_star` are expected log transition and
/// initial-state parameters; they need not normalize. Returns normalized
/// state marginals, pairwise marginals, and the log normalizer of the
/// variational trajectory distribution.
pub fn forward_backward(
    log_em: &Array2<f64>,
    log_trans_star: &Array2<f64>,
    log_init_star: &Array1<f64>,
) -> Result<FbResult, VbError> {
    let (t_len, k) = log_em.dim();
    if t_len == 0 || k == 0 {
        return Err(VbError::InvalidInput("empty emission matrix".to_string()));
    }
    if log_trans_star.dim() != (k, k) || log_init_star.len() != k {
        return Err(VbError::InvalidInput(format!(
            "shape mismatch: emissions K={k}, transitions {:?}, initial {}",
            log_trans_star.dim(),
            log_init_star.len()
        )));
    }

    let trans = log_trans_star.mapv(f64::exp);
    let init = log_init_star.mapv(f64::exp);

    // Per-row max subtraction keeps every scaled emission row at max 1.
    let mut em = Array2::zeros((t_len, k));
    let mut row_max = vec![0.0f64; t_len];
    for t in 0..t_len {
        let m = log_em.row(t).fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        if !m.is_finite() {
            return Err(VbError::Underflow { t });
        }
        row_max[t] = m;
        for j in 0..k {
            em[[t, j]] = (log_em[[t, j]] - m).exp();
        }
    }

    let mut alpha = Array2::zeros((t_len, k));
    let mut scale = vec![0.0f64; t_len];

    let mut c0 = 0.0;
    for j in 0..k {
        let v = init[j] * em[[0, j]];
        alpha[[0, j]] = v;
        c0 += v;
    }
    if !(c0 > 0.0) || !c0.is_finite() {
        return Err(VbError::Underflow { t: 0 });
    }
    scale[0] = c0;
    for j in 0..k {
        alpha[[0, j]] /= c0;
    }

    for t in 1..t_len {
        let mut ct = 0.0;
        for j in 0..k {
            let mut acc = 0.0;
            for i in 0..k {
                acc += alpha[[t - 1, i]] * trans[[i, j]];
            }
            let v = acc * em[[t, j]];
            alpha[[t, j]] = v;
            ct += v;
        }
        if !(ct > 0.0) || !ct.is_finite() {
            return Err(VbError::Underflow { t });
        }
        scale[t] = ct;
        for j in 0..k {
            alpha[[t, j]] /= ct;
        }
    }

    let log_z: f64 = scale.iter().map(|c| c.ln()).sum::<f64>() + row_max.iter().sum::<f64>();

    let mut beta = Array2::zeros((t_len, k));
    beta.row_mut(t_len - 1).fill(1.0);
    for t in (0..t_len - 1).rev() {
        for i in 0..k {
            let mut acc = 0.0;
            for j in 0..k {
                acc += trans[[i, j]] * em[[t + 1, j]] * beta[[t + 1, j]];
            }
            beta[[t, i]] = acc / scale[t + 1];
        }
    }

    let mut gamma = Array2::zeros((t_len, k));
    for t in 0..t_len {
        let mut sum = 0.0;
        for j in 0..k {
            let v = alpha[[t, j]] * beta[[t, j]];
            gamma[[t, j]] = v;
            sum += v;
        }
        for j in 0..k {
            gamma[[t, j]] /= sum;
        }
    }

    let mut xi_pair = Array3::zeros((t_len.saturating_sub(1), k, k));
    for t in 0..t_len - 1 {
        let mut sum = 0.0;
        for i in 0..k {
            for j in 0..k {
                let v = alpha[[t, i]] * trans[[i, j]] * em[[t + 1, j]] * beta[[t + 1, j]];
                xi_pair[[t, i, j]] = v;
                sum += v;
            }
        }
        for i in 0..k {
            for j in 0..k {
                xi_pair[[t, i, j]] /= sum;
            }
        }
    }

    Ok(FbResult {
        gamma,
        xi_pair,
        log_z,
    })
}

/// Reduce marginals to the sufficient statistics of the conjugate M-step.
/// Unpopulated states get xbar = 0 and s = 0 so the M-step stays total.
pub fn collect_stats(gamma: &Array2<f64>, xi_pair: &Array3<f64>, x: &[f64]) -> SufficientStats {
    let (t_len, k) = gamma.dim();
    debug_assert_eq!(t_len, x.len());

    let nk = gamma.sum_axis(Axis(0));
    let mut xbar = Array1::zeros(k);
    for t in 0..t_len {
        for j in 0..k {
            xbar[j] += gamma[[t, j]] * x[t];
        }
    }
    for j in 0..k {
        if nk[j] > 0.0 {
            xbar[j] /= nk[j];
        } else {
            xbar[j] = 0.0;
        }
    }
    let mut s = Array1::zeros(k);
    for t in 0..t_len {
        for j in 0..k {
            let d = x[t] - xbar[j];
            s[j] += gamma[[t, j]] * d * d;
        }
    }
    for j in 0..k {
        if nk[j] == 0.0 {
            s[j] = 0.0;
        }
    }
    let c = xi_pair.sum_axis(Axis(0));
    let g0 = gamma.row(0).to_owned();

    SufficientStats { nk, xbar, s, c, g0 }
}

/// Conjugate M-step: posterior parameters as occupancy-weighted combinations
/// of the prior and the sufficient statistics.
pub fn vb_mstep(stats: &SufficientStats, psi: &Hyperparameters) -> VariationalParams {
    let k = psi.num_states();
    let mut hat_m = Array1::zeros(k);
    let mut hat_beta = Array1::zeros(k);
    let mut hat_a = Array1::zeros(k);
    let mut hat_b = Array1::zeros(k);
    for j in 0..k {
        let n = stats.nk[j];
        let beta_new = psi.beta[j] + n;
        hat_beta[j] = beta_new;
        hat_m[j] = (psi.beta[j] * psi.m[j] + n * stats.xbar[j]) / beta_new;
        hat_a[j] = psi.a[j] + 0.5 * n;
        let dm = stats.xbar[j] - psi.m[j];
        hat_b[j] = psi.b[j] + 0.5 * (stats.s[j] + psi.beta[j] * n * dm * dm / beta_new);
    }
    let hat_alpha = &psi.alpha + &stats.c;
    let hat_rho = &psi.rho + &stats.g0;
    VariationalParams {
        hat_m,
        hat_beta,
        hat_a,
        hat_b,
        hat_alpha,
        hat_rho,
    }
}

/// KL(Dirichlet(hat) || Dirichlet(prior)).
pub(crate) fn kl_dirichlet(hat: ArrayView1<f64>, prior: ArrayView1<f64>) -> f64 {
    let hat_sum: f64 = hat.sum();
    let dig_sum = digamma_raw(hat_sum);
    let mut kl = libm::lgamma(hat_sum) - libm::lgamma(prior.sum());
    for (&h, &p) in hat.iter().zip(prior.iter()) {
        kl += libm::lgamma(p) - libm::lgamma(h) + (h - p) * (digamma_raw(h) - dig_sum);
    }
    kl
}

/// KL(NormalGamma(hat) || NormalGamma(prior)) for one state.
pub(crate) fn kl_normal_gamma(
    (hm, hbeta, ha, hb): (f64, f64, f64, f64),
    (m, beta, a, b): (f64, f64, f64, f64),
) -> f64 {
    // Conditional Normal part, integrated over the Gamma posterior.
    let dm = hm - m;
    let normal = 0.5 * ((hbeta / beta).ln() - 1.0 + beta / hbeta + beta * dm * dm * ha / hb);
    // Gamma part.
    let gamma = (ha - a) * digamma_raw(ha) - libm::lgamma(ha) + libm::lgamma(a)
        + a * (hb / b).ln()
        + ha * (b - hb) / hb;
    normal + gamma
}

fn prior_divergences(params: &VariationalParams, psi: &Hyperparameters) -> (f64, f64, f64) {
    let k = psi.num_states();
    let mut kl_ng = 0.0;
    for j in 0..k {
        kl_ng += kl_normal_gamma(
            (
                params.hat_m[j],
                params.hat_beta[j],
                params.hat_a[j],
                params.hat_b[j],
            ),
            (psi.m[j], psi.beta[j], psi.a[j], psi.b[j]),
        );
    }
    let mut kl_trans = 0.0;
    for i in 0..k {
        kl_trans += kl_dirichlet(params.hat_alpha.row(i), psi.alpha.row(i));
    }
    let kl_init = kl_dirichlet(params.hat_rho.view(), psi.rho.view());
    (kl_ng, kl_trans, kl_init)
}

/// Expected trajectory score `E_q(z)[E_q(theta)[log p(x, z | theta)]]` of
/// given marginals under given expected log-parameters.
fn expected_score(
    gamma: &Array2<f64>,
    xi_pair: &Array3<f64>,
    log_em: &Array2<f64>,
    log_trans_star: &Array2<f64>,
    log_init_star: &Array1<f64>,
) -> f64 {
    let (t_len, k) = gamma.dim();
    let mut score = 0.0;
    for t in 0..t_len {
        for j in 0..k {
            score += gamma[[t, j]] * log_em[[t, j]];
        }
    }
    for t in 0..t_len.saturating_sub(1) {
        for i in 0..k {
            for j in 0..k {
                score += xi_pair[[t, i, j]] * log_trans_star[[i, j]];
            }
        }
    }
    for j in 0..k {
        score += gamma[[0, j]] * log_init_star[j];
    }
    score
}

/// Evidence lower bound of a completed fit, with its additive breakdown.
///
/// The trajectory term re-runs forward-backward under the posterior's
/// expected log-parameters, so the returned value is the bound at a fresh
/// E-step given `post`'s parameter posterior.
pub fn elbo(
    trace: &Trace,
    post: &TracePosterior,
    psi: &Hyperparameters,
) -> Result<ElboBreakdown, VbError> {
    let params = VariationalParams {
        hat_m: post.hat_m.clone(),
        hat_beta: post.hat_beta.clone(),
        hat_a: post.hat_a.clone(),
        hat_b: post.hat_b.clone(),
        hat_alpha: post.hat_alpha.clone(),
        hat_rho: post.hat_rho.clone(),
    };
    let log_em = expected_log_emission(post, &trace.x);
    let log_trans_star = expected_log_dirichlet_rows(&params.hat_alpha);
    let log_init_star = expected_log_dirichlet(params.hat_rho.view());
    let fb = forward_backward(&log_em, &log_trans_star, &log_init_star)?;
    let (kl_ng, kl_trans, kl_init) = prior_divergences(&params, psi);
    Ok(ElboBreakdown {
        total: fb.log_z - kl_ng - kl_trans - kl_init,
        trajectory: fb.log_z,
        kl_normal_gamma: kl_ng,
        kl_transitions: kl_trans,
        kl_initial: kl_init,
    })
}

fn prior_responsibilities(trace: &Trace, psi: &Hyperparameters) -> Array2<f64> {
    let k = psi.num_states();
    let t_len = trace.len();
    let mut gamma = Array2::zeros((t_len, k));
    for (t, &xt) in trace.x.iter().enumerate() {
        let mut row = vec![0.0f64; k];
        let mut max = f64::NEG_INFINITY;
        for j in 0..k {
            let lambda = psi.a[j] / psi.b[j];
            let d = xt - psi.m[j];
            row[j] = 0.5 * (lambda.ln() - LN_2PI - lambda * d * d);
            max = max.max(row[j]);
        }
        let mut sum = 0.0;
        for v in row.iter_mut() {
            *v = (*v - max).exp();
            sum += *v;
        }
        for (j, v) in row.iter().enumerate() {
            gamma[[t, j]] = v / sum;
        }
    }
    gamma
}

fn marginals_from_gamma(gamma: &Array2<f64>) -> Array3<f64> {
    let (t_len, k) = gamma.dim();
    let mut xi = Array3::zeros((t_len.saturating_sub(1), k, k));
    for t in 0..t_len.saturating_sub(1) {
        for i in 0..k {
            for j in 0..k {
                xi[[t, i, j]] = gamma[[t, i]] * gamma[[t + 1, j]];
            }
        }
    }
    xi
}

/// Fit one trace by alternating conjugate M-steps and forward-backward
/// E-steps until the relative ELBO change drops below tolerance.
pub fn fit_trace(
    trace: &Trace,
    psi: &Hyperparameters,
    cfg: &FitConfig,
) -> Result<TracePosterior, VbError> {
    Ok(fit_trace_with_init(trace, psi, cfg, TraceInit::PriorResponsibilities)?.posterior)
}

/// As [`fit_trace`], also returning the per-iteration ELBO values.
pub fn fit_trace_with_init(
    trace: &Trace,
    psi: &Hyperparameters,
    cfg: &FitConfig,
    init: TraceInit<'_>,
) -> Result<TraceFitOutcome, VbError> {
    psi.validate()?;
    let t_len = trace.len();
    let k = psi.num_states();
    if t_len < 2 {
        return Err(VbError::InvalidInput(format!(
            "trace '{}' has length {t_len} < 2",
            trace.id
        )));
    }
    if trace.x.iter().any(|v| !v.is_finite()) {
        return Err(VbError::InvalidInput(format!(
            "trace '{}' contains non-finite values",
            trace.id
        )));
    }

    let (mut gamma, mut xi_pair) = match init {
        TraceInit::PriorResponsibilities => {
            let g = prior_responsibilities(trace, psi);
            let xi = marginals_from_gamma(&g);
            (g, xi)
        }
        TraceInit::Responsibilities(g) => {
            if g.dim() != (t_len, k) {
                return Err(VbError::InvalidInput(
                    "initial responsibilities shape mismatch".to_string(),
                ));
            }
            (g.clone(), marginals_from_gamma(g))
        }
        TraceInit::WarmStart(prev) => {
            if prev.gamma.dim() != (t_len, k) {
                return Err(VbError::InvalidInput(
                    "warm-start posterior shape mismatch".to_string(),
                ));
            }
            (prev.gamma.clone(), prev.xi_pair.clone())
        }
    };

    let mut history = Vec::new();
    let mut last: Option<(VariationalParams, f64, Array2<f64>, Array2<f64>, Array1<f64>)> = None;

    for _ in 0..cfg.max_vb_iterations {
        let stats = collect_stats(&gamma, &xi_pair, &trace.x);
        let params = vb_mstep(&stats, psi);
        let log_em = expected_log_emission_from(
            params.hat_m.view(),
            params.hat_beta.view(),
            params.hat_a.view(),
            params.hat_b.view(),
            &trace.x,
        );
        let log_trans_star = expected_log_dirichlet_rows(&params.hat_alpha);
        let log_init_star = expected_log_dirichlet(params.hat_rho.view());
        let fb = forward_backward(&log_em, &log_trans_star, &log_init_star)?;
        let (kl_ng, kl_trans, kl_init) = prior_divergences(&params, psi);
        let elbo_now = fb.log_z - kl_ng - kl_trans - kl_init;

        gamma = fb.gamma;
        xi_pair = fb.xi_pair;
        let converged = match history.last() {
            Some(&prev) => {
                let denom: f64 = f64::max(elbo_now.abs(), 1.0);
                ((elbo_now - prev) / denom).abs() < cfg.elbo_rel_tolerance
            }
            None => false,
        };
        history.push(elbo_now);
        last = Some((params, fb.log_z, log_em, log_trans_star, log_init_star));
        if converged {
            break;
        }
    }

    let (params, log_z, log_em, log_trans_star, log_init_star) =
        last.expect("at least one VB iteration");

    // One extra M-step so the stored parameters are the exact conjugate
    // update of the stored marginals (in particular hat_alpha - alpha equals
    // the summed pairwise marginals). The stored ELBO is the exact bound of
    // the stored (marginals, parameters) pair, obtained from the previous
    // log normalizer by swapping the expected score term.
    let stats = collect_stats(&gamma, &xi_pair, &trace.x);
    let params_final = vb_mstep(&stats, psi);
    let log_em_final = expected_log_emission_from(
        params_final.hat_m.view(),
        params_final.hat_beta.view(),
        params_final.hat_a.view(),
        params_final.hat_b.view(),
        &trace.x,
    );
    let log_trans_final = expected_log_dirichlet_rows(&params_final.hat_alpha);
    let log_init_final = expected_log_dirichlet(params_final.hat_rho.view());
    let score_old = expected_score(&gamma, &xi_pair, &log_em, &log_trans_star, &log_init_star);
    let score_new = expected_score(
        &gamma,
        &xi_pair,
        &log_em_final,
        &log_trans_final,
        &log_init_final,
    );
    let (kl_ng, kl_trans, kl_init) = prior_divergences(&params_final, psi);
    let elbo_final = log_z + (score_new - score_old) - kl_ng - kl_trans - kl_init;
    history.push(elbo_final);
    drop(params);

    let posterior = TracePosterior {
        hat_m: params_final.hat_m,
        hat_beta: params_final.hat_beta,
        hat_a: params_final.hat_a,
        hat_b: params_final.hat_b,
        hat_alpha: params_final.hat_alpha,
        hat_rho: params_final.hat_rho,
        gamma,
        xi_pair,
        elbo: elbo_final,
    };
    Ok(TraceFitOutcome {
        posterior,
        elbo_history: history,
    })
}

/// Max-product state path under expected log-parameters. Ties break toward
/// the lower state index.
pub fn viterbi_path(
    log_em: &Array2<f64>,
    log_trans_star: &Array2<f64>,
    log_init_star: &Array1<f64>,
) -> Vec<usize> {
    let (t_len, k) = log_em.dim();
    if t_len == 0 {
        return Vec::new();
    }
    let mut delta = Array2::zeros((t_len, k));
    let mut back = Array2::<usize>::zeros((t_len, k));
    for j in 0..k {
        delta[[0, j]] = log_init_star[j] + log_em[[0, j]];
    }
    for t in 1..t_len {
        for j in 0..k {
            let mut best = f64::NEG_INFINITY;
            let mut arg = 0;
            for i in 0..k {
                let v = delta[[t - 1, i]] + log_trans_star[[i, j]];
                if v > best {
                    best = v;
                    arg = i;
                }
            }
            delta[[t, j]] = best + log_em[[t, j]];
            back[[t, j]] = arg;
        }
    }
    let mut path = vec![0usize; t_len];
    let mut best = f64::NEG_INFINITY;
    for j in 0..k {
        if delta[[t_len - 1, j]] > best {
            best = delta[[t_len - 1, j]];
            path[t_len - 1] = j;
        }
    }
    for t in (0..t_len - 1).rev() {
        path[t] = back[[t + 1, path[t + 1]]];
    }
    path
}
