//! Scalar special functions and the root solvers used by the hyperparameter
//! M-step.
//!
//! Digamma and trigamma are computed with a recurrence shift to x >= 6
//! followed by the asymptotic (Bernoulli) series. The shift terms are applied
//! in descending order of the shifted argument, so the computed values satisfy
//! the recurrences `psi(x+1) = psi(x) + 1/x` and `psi'(x+1) = psi'(x) - 1/x^2`
//! to within one final rounding.
//!
//! The two inverse problems, `solve_gamma_shape` and `match_dirichlet`, are
//! safeguarded Newton iterations: both fall back to bisection or a
//! digamma-inversion fixed point whenever a Newton step leaves the feasible
//! region or fails to reduce the residual.

use thiserror::Error;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Shift threshold before switching to the asymptotic series.
const ASYMPTOTIC_CUTOFF: f64 = 6.0;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecialError {
    #[error("{what}: argument {value} outside domain")]
    Domain { what: &'static str, value: f64 },
    #[error("{what}: no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
}

/// Convergence control for the Newton-type solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Absolute residual tolerance. Must be positive.
    pub abs_tolerance: f64,
    /// Iteration cap. Must be at least 1.
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            abs_tolerance: 1e-10,
            max_iterations: 200,
        }
    }
}

/// Digamma function Psi(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64, SpecialError> {
    if !(x > 0.0) {
        return Err(SpecialError::Domain {
            what: "digamma",
            value: x,
        });
    }
    Ok(digamma_raw(x))
}

/// Trigamma function Psi'(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64, SpecialError> {
    if !(x > 0.0) {
        return Err(SpecialError::Domain {
            what: "trigamma",
            value: x,
        });
    }
    Ok(trigamma_raw(x))
}

/// Unchecked digamma kernel. Caller guarantees x > 0.
pub(crate) fn digamma_raw(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut steps = [0.0f64; 8];
    let mut n = 0;
    let mut t = x;
    while t < ASYMPTOTIC_CUTOFF {
        steps[n] = t;
        n += 1;
        t += 1.0;
    }
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    // ln(x) - 1/(2x) - sum B_{2n} / (2n x^{2n}), coefficients through x^{-14}
    let series = inv2
        * (-1.0 / 12.0
            + inv2
                * (1.0 / 120.0
                    + inv2
                        * (-1.0 / 252.0
                            + inv2
                                * (1.0 / 240.0
                                    + inv2
                                        * (-1.0 / 132.0
                                            + inv2 * (691.0 / 32760.0 + inv2 * (-1.0 / 12.0)))))));
    let mut r = t.ln() - 0.5 * inv + series;
    for k in (0..n).rev() {
        r -= 1.0 / steps[k];
    }
    r
}

/// Unchecked trigamma kernel. Caller guarantees x > 0.
pub(crate) fn trigamma_raw(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut steps = [0.0f64; 8];
    let mut n = 0;
    let mut t = x;
    while t < ASYMPTOTIC_CUTOFF {
        steps[n] = t;
        n += 1;
        t += 1.0;
    }
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    // 1/x + 1/(2x^2) + sum B_{2n} x^{-(2n+1)}, coefficients through x^{-13}
    let series = inv
        + inv2
            * (0.5
                + inv * (1.0 / 6.0
                    + inv2
                        * (-1.0 / 30.0
                            + inv2
                                * (1.0 / 42.0
                                    + inv2
                                        * (-1.0 / 30.0
                                            + inv2 * (5.0 / 66.0 + inv2 * (-691.0 / 2730.0)))))));
    let mut r = series;
    for k in (0..n).rev() {
        r += 1.0 / (steps[k] * steps[k]);
    }
    r
}

/// Solve `Psi(a) - ln(a) = c` for the Gamma shape a > 0, given c < 0.
///
/// The left-hand side increases strictly from -inf to 0 on (0, inf), so the
/// root exists and is unique for every c < 0. Newton steps are bracketed and
/// fall back to bisection when they leave the bracket.
pub fn solve_gamma_shape(c: f64, cfg: &SolverConfig) -> Result<f64, SpecialError> {
    if !(c < 0.0) {
        return Err(SpecialError::Domain {
            what: "solve_gamma_shape",
            value: c,
        });
    }
    let f = |a: f64| digamma_raw(a) - a.ln();

    // Asymptotics: f(a) ~ -1/(2a) for large a, f(a) ~ -1/a for small a.
    let mut a = (-0.5 / c).clamp(1e-300, 1e300);

    // Expand a bracket [lo, hi] with f(lo) <= c <= f(hi).
    let mut lo = a;
    let mut hi = a;
    let mut iters = 0usize;
    while f(lo) > c {
        lo *= 0.5;
        iters += 1;
        if iters > 2000 || lo < 1e-300 {
            return Err(SpecialError::NoConvergence {
                what: "solve_gamma_shape (bracket)",
                iterations: iters,
                residual: f(lo) - c,
            });
        }
    }
    iters = 0;
    while f(hi) < c {
        hi *= 2.0;
        iters += 1;
        if iters > 2000 || hi > 1e300 {
            return Err(SpecialError::NoConvergence {
                what: "solve_gamma_shape (bracket)",
                iterations: iters,
                residual: f(hi) - c,
            });
        }
    }
    a = a.clamp(lo, hi);

    let mut residual = f(a) - c;
    for _ in 0..cfg.max_iterations {
        if residual.abs() < cfg.abs_tolerance {
            return Ok(a);
        }
        if residual > 0.0 {
            hi = a;
        } else {
            lo = a;
        }
        let deriv = trigamma_raw(a) - 1.0 / a;
        let mut next = a - residual / deriv;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        a = next;
        residual = f(a) - c;
    }
    if residual.abs() < cfg.abs_tolerance {
        return Ok(a);
    }
    Err(SpecialError::NoConvergence {
        what: "solve_gamma_shape",
        iterations: cfg.max_iterations,
        residual,
    })
}

/// Inverse digamma via Newton, following Minka's initialization.
fn inv_digamma(y: f64) -> f64 {
    let mut x = if y >= -2.22 {
        y.exp() + 0.5
    } else {
        -1.0 / (y + EULER_GAMMA)
    };
    for _ in 0..8 {
        let step = (digamma_raw(x) - y) / trigamma_raw(x);
        x -= step;
        if x <= 0.0 {
            // Undershoot: the true root is positive; restart just above zero.
            x = 1e-12;
        }
        if step.abs() < 1e-14 * (1.0 + x.abs()) {
            break;
        }
    }
    x
}

/// Solve `Psi(sum_m alpha_m) - Psi(alpha_l) = targets_l` for alpha > 0.
///
/// Newton on the full system: the Jacobian is diagonal plus rank one, so each
/// step is O(K) via Sherman-Morrison. Steps that leave the positive orthant or
/// increase the residual are replaced by the digamma-inversion fixed point
/// `alpha_l <- invPsi(Psi(sum alpha) - targets_l)`.
pub fn match_dirichlet(targets: &[f64], cfg: &SolverConfig) -> Result<Vec<f64>, SpecialError> {
    let k = targets.len();
    if k < 2 {
        return Err(SpecialError::Domain {
            what: "match_dirichlet (needs at least 2 components)",
            value: k as f64,
        });
    }
    for &t in targets {
        if !(t > 0.0) || !t.is_finite() {
            return Err(SpecialError::Domain {
                what: "match_dirichlet (targets must be positive)",
                value: t,
            });
        }
    }

    // Initial guess: component means from a softmax of the negated targets,
    // scaled to a unit-mean concentration.
    let max_neg = targets.iter().fold(f64::NEG_INFINITY, |m, &t| m.max(-t));
    let weights: Vec<f64> = targets.iter().map(|&t| (-t - max_neg).exp()).collect();
    let wsum: f64 = weights.iter().sum();
    let mut alpha: Vec<f64> = weights.iter().map(|&w| (k as f64) * w / wsum).collect();

    let residuals = |alpha: &[f64]| -> (Vec<f64>, f64) {
        let sum: f64 = alpha.iter().sum();
        let dig_sum = digamma_raw(sum);
        let g: Vec<f64> = alpha
            .iter()
            .zip(targets)
            .map(|(&a, &t)| dig_sum - digamma_raw(a) - t)
            .collect();
        let worst = g.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        (g, worst)
    };

    let (mut g, mut worst) = residuals(&alpha);
    for _ in 0..cfg.max_iterations {
        if worst < cfg.abs_tolerance {
            return Ok(alpha);
        }
        let sum: f64 = alpha.iter().sum();
        let z = trigamma_raw(sum);
        let q: Vec<f64> = alpha.iter().map(|&a| trigamma_raw(a)).collect();
        let s_over_q: f64 = g.iter().zip(&q).map(|(&gl, &ql)| gl / ql).sum();
        let inv_q_sum: f64 = q.iter().map(|&ql| 1.0 / ql).sum();
        let denom = 1.0 - z * inv_q_sum;

        let mut newton: Option<Vec<f64>> = None;
        if denom.abs() > 1e-14 {
            let cand: Vec<f64> = alpha
                .iter()
                .zip(&g)
                .zip(&q)
                .map(|((&a, &gl), &ql)| a + gl / ql + z * s_over_q / (ql * denom))
                .collect();
            if cand.iter().all(|&a| a.is_finite() && a > 0.0) {
                newton = Some(cand);
            }
        }

        let accepted = match newton {
            Some(cand) => {
                let (gc, wc) = residuals(&cand);
                if wc < worst {
                    alpha = cand;
                    g = gc;
                    worst = wc;
                    true
                } else {
                    false
                }
            }
            None => false,
        };

        if !accepted {
            let dig_sum = digamma_raw(alpha.iter().sum());
            let cand: Vec<f64> = targets.iter().map(|&t| inv_digamma(dig_sum - t)).collect();
            if cand.iter().any(|&a| !a.is_finite() || a <= 0.0) {
                return Err(SpecialError::NoConvergence {
                    what: "match_dirichlet (fixed point left domain)",
                    iterations: cfg.max_iterations,
                    residual: worst,
                });
            }
            alpha = cand;
            let (gc, wc) = residuals(&alpha);
            g = gc;
            worst = wc;
        }
    }
    if worst < cfg.abs_tolerance {
        return Ok(alpha);
    }
    Err(SpecialError::NoConvergence {
        what: "match_dirichlet",
        iterations: cfg.max_iterations,
        residual: worst,
    })
}
