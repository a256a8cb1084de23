//! Potential classes and admissible model parameters.
//!
//! Two families of 2π-periodic potentials are supported: a delta comb
//! `V(x) = α + β δ_per(x)` with atoms on `{2πn}` and a two-value step
//! `V(x) = α` on `[0, 2πθ)`, `β` on `[2πθ, 2π)`. The admissible parameter
//! tuples couple the temporal frequency ω to the potential so that every
//! mode operator `L_k = -d²/dx² - ω²(k²-τ)V(x)` keeps 0 in a spectral gap
//! that grows linearly in |k|.

use serde::Serialize;
use thiserror::Error;

/// Half-width of the admissible θ-interval for the step case:
/// `(0, ½(1-√(7/9)))`. θ or 1-θ must fall inside it.
pub fn theta_limit() -> f64 {
    0.5 * (1.0 - (7.0f64 / 9.0).sqrt())
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("alpha must be positive, got {0}")]
    AlphaNotPositive(f64),
    #[error("beta must be positive, got {0}")]
    BetaNotPositive(f64),
    #[error("beta too small: need beta > 32*alpha, got beta = {beta}, 32*alpha = {limit}")]
    BetaTooSmall { beta: f64, limit: f64 },
    #[error("tau out of range: need |tau| < tau0 = {tau0}, got {tau}")]
    TauOutOfRange { tau: f64, tau0: f64 },
    #[error("theta out of range: need theta or 1-theta in (0, {limit}), got {theta}")]
    ThetaOutOfRange { theta: f64, limit: f64 },
    #[error("mode index must be odd and nonzero, got {0}")]
    EvenMode(i64),
}

/// A 2π-periodic potential, delta comb or step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PotentialSpec {
    /// `V(x) = alpha + beta * δ_per(x)`, atoms at `{2πn}`.
    DeltaComb { alpha: f64, beta: f64 },
    /// `V(x) = alpha` on `[0, 2πθ)` mod 2π, `beta` elsewhere.
    Step { alpha: f64, beta: f64, theta: f64 },
}

impl PotentialSpec {
    /// Constant part of the potential on the interval containing `x` (the
    /// delta atoms are not included; they are handled separately).
    pub fn background(&self, x: f64) -> f64 {
        match *self {
            PotentialSpec::DeltaComb { alpha, .. } => alpha,
            PotentialSpec::Step { alpha, beta, theta } => {
                let frac = (x / (2.0 * std::f64::consts::PI)).rem_euclid(1.0);
                if frac < theta {
                    alpha
                } else {
                    beta
                }
            }
        }
    }
}

/// Which case of the admissibility theorem the parameters satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    V1,
    V2,
}

/// Validated model parameters: potential, frequency, coupling and the
/// exponents attached to the case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub case: CaseLabel,
    pub potential: PotentialSpec,
    /// Temporal frequency, ω = 2π/T.
    pub omega: f64,
    /// Coupling of q = τω²V.
    pub tau: f64,
    /// Admissible bound on |τ|.
    pub tau0: f64,
    /// Gap growth exponent.
    pub gamma: f64,
    /// Gradient-bound exponent.
    pub delta: f64,
    /// Critical nonlinearity exponent.
    pub p_star: f64,
    /// Critical integrability exponent.
    pub q_star: f64,
    /// Temporal regularity exponent for the H¹-in-space scale, 2·reg_alpha = delta.
    pub reg_alpha: f64,
    /// Temporal regularity exponent for the L²-in-space scale, 2·reg_beta = gamma.
    pub reg_beta: f64,
}

impl ModelParams {
    /// Time period T = 2π/ω.
    pub fn period_t(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Assembles unvalidated parameters. Intended for test fixtures and
    /// out-of-theorem experiments; `validate_v1`/`validate_v2` are the
    /// admissible constructors.
    pub fn custom(potential: PotentialSpec, omega: f64, tau: f64) -> ModelParams {
        let case = match potential {
            PotentialSpec::DeltaComb { .. } => CaseLabel::V1,
            PotentialSpec::Step { .. } => CaseLabel::V2,
        };
        let (gamma, delta, p_star, q_star) = case_exponents(case);
        ModelParams {
            case,
            potential,
            omega,
            tau,
            tau0: 1.0,
            gamma,
            delta,
            p_star,
            q_star,
            reg_alpha: delta / 2.0,
            reg_beta: gamma / 2.0,
        }
    }
}

fn case_exponents(case: CaseLabel) -> (f64, f64, f64, f64) {
    match case {
        CaseLabel::V1 => (1.0, -3.0, 2.0, 3.0),
        CaseLabel::V2 => (1.0, -1.0, 3.0, 4.0),
    }
}

/// Validates a delta-comb parameter tuple: α > 0, β > 32α, ω = 1/(4√α),
/// τ₀ = 1 - 32α/β, |τ| < τ₀.
pub fn validate_v1(alpha: f64, beta: f64, tau: f64) -> Result<ModelParams, ParamError> {
    if !(alpha > 0.0) {
        return Err(ParamError::AlphaNotPositive(alpha));
    }
    if !(beta > 0.0) {
        return Err(ParamError::BetaNotPositive(beta));
    }
    if beta <= 32.0 * alpha {
        return Err(ParamError::BetaTooSmall { beta, limit: 32.0 * alpha });
    }
    let tau0 = 1.0 - 32.0 * alpha / beta;
    if tau.abs() >= tau0 {
        return Err(ParamError::TauOutOfRange { tau, tau0 });
    }
    let (gamma, delta, p_star, q_star) = case_exponents(CaseLabel::V1);
    Ok(ModelParams {
        case: CaseLabel::V1,
        potential: PotentialSpec::DeltaComb { alpha, beta },
        omega: 1.0 / (4.0 * alpha.sqrt()),
        tau,
        tau0,
        gamma,
        delta,
        p_star,
        q_star,
        reg_alpha: delta / 2.0,
        reg_beta: gamma / 2.0,
    })
}

/// Validates a step parameter tuple. β is derived from θ²α = (1-θ)²β and
/// ω = 1/(4θ√α); if θ > ½ the roles of the two plateaus are swapped so the
/// stored spec always carries α on the short interval.
pub fn validate_v2(alpha: f64, theta: f64, tau: f64) -> Result<ModelParams, ParamError> {
    if !(alpha > 0.0) {
        return Err(ParamError::AlphaNotPositive(alpha));
    }
    let limit = theta_limit();
    if !(theta > 0.0 && theta < 1.0) || theta.min(1.0 - theta) >= limit {
        return Err(ParamError::ThetaOutOfRange { theta, limit });
    }
    let beta = alpha * theta * theta / ((1.0 - theta) * (1.0 - theta));
    let omega = 1.0 / (4.0 * theta * alpha.sqrt());
    // Normalize so the short interval carries the first plateau.
    let (alpha_n, beta_n, theta_n) = if theta <= 0.5 {
        (alpha, beta, theta)
    } else {
        (beta, alpha, 1.0 - theta)
    };
    let tp = 1.0 - theta_n;
    let tau0 = 1.0 - 16.0 * theta_n * tp / (theta_n * theta_n + tp * tp);
    if tau.abs() >= tau0 {
        return Err(ParamError::TauOutOfRange { tau, tau0 });
    }
    let (gamma, delta, p_star, q_star) = case_exponents(CaseLabel::V2);
    Ok(ModelParams {
        case: CaseLabel::V2,
        potential: PotentialSpec::Step { alpha: alpha_n, beta: beta_n, theta: theta_n },
        omega,
        tau,
        tau0,
        gamma,
        delta,
        p_star,
        q_star,
        reg_alpha: delta / 2.0,
        reg_beta: gamma / 2.0,
    })
}

/// Coefficient ω²(k²-τ) multiplying the potential in the k-th mode operator.
/// Strictly positive for odd k since |τ| < 1 ≤ k².
pub fn mode_weight(params: &ModelParams, k: i64) -> Result<f64, ParamError> {
    if k % 2 == 0 {
        return Err(ParamError::EvenMode(k));
    }
    Ok(params.omega * params.omega * ((k * k) as f64 - params.tau))
}
