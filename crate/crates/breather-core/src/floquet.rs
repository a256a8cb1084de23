//! Floquet discriminants, numeric monodromy and spectral-gap certification.
//!
//! For a 2π-periodic Hill operator the real λ-spectrum is exactly the set
//! where the discriminant (trace of the period map) satisfies |D(λ)| ≤ 2.
//! Closed forms are available for the delta comb on all of ℝ and for the
//! step potential above both plateau levels; everything else goes through
//! the transfer-matrix monodromy. The per-mode gap radii r_k feed the
//! certificate that the gap around 0 grows at least linearly in |k|.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::potential::{mode_weight, ModelParams, ParamError, PotentialSpec};

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum FloquetError {
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),
    #[error("0 lies in the spectrum of L_{k}: |D_k(0)| = {disc_abs} <= 2")]
    ZeroInSpectrum { k: i64, disc_abs: f64 },
    #[error("weights are not pointwise ordered at x = {at}")]
    OrderViolated { at: f64 },
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Discriminant of `-u'' + (α̃ + β̃ δ_per) u = λ u`, atoms on `{2πn}`.
/// Total in λ; the three case branches agree in the limit at λ = α̃, and the
/// hyperbolic branch is evaluated from split exponentials so that large
/// arguments saturate to ±∞ instead of producing NaN.
pub fn discriminant_delta(alpha_t: f64, beta_t: f64, lambda: f64) -> f64 {
    let s = lambda - alpha_t;
    if s > 0.0 {
        let nu = s.sqrt();
        beta_t * (TWO_PI * nu).sin() / nu + 2.0 * (TWO_PI * nu).cos()
    } else if s == 0.0 {
        2.0 + TWO_PI * beta_t
    } else {
        let q = (-s).sqrt();
        let y = TWO_PI * q;
        // β̃ sinh(y)/q + 2 cosh(y) = c₊ e^y + c₋ e^{-y}
        let cp = 1.0 + beta_t / (2.0 * q);
        let cm = 1.0 - beta_t / (2.0 * q);
        if y > 350.0 {
            cp * y.exp() + cm * (-y).exp()
        } else {
            beta_t * y.sinh() / q + 2.0 * y.cosh()
        }
    }
}

/// Discriminant of the two-plateau step operator
/// `-u'' + (α̃ χ_[0,2πθ) + β̃ (1-χ)) u = λ u` (2π-periodic). The closed form
/// requires λ above both plateaus; below, the paper leaves the case open and
/// the value comes from the numeric monodromy.
pub fn discriminant_step(alpha_t: f64, beta_t: f64, theta: f64, lambda: f64) -> f64 {
    if lambda > alpha_t.max(beta_t) {
        let s = lambda - alpha_t;
        let r = lambda - beta_t;
        let (ss, rr) = (s.sqrt(), r.sqrt());
        let tp = 1.0 - theta;
        -(s + r) / (ss * rr) * (TWO_PI * theta * ss).sin() * (TWO_PI * tp * rr).sin()
            + 2.0 * (TWO_PI * theta * ss).cos() * (TWO_PI * tp * rr).cos()
    } else {
        let coeff = PiecewiseCoeff::step(alpha_t, beta_t, theta);
        monodromy_numeric(&coeff, lambda)
            .map(|m| m.trace())
            .unwrap_or(f64::NAN)
    }
}

/// Discriminant D_k of the mode operator L_k for validated or custom
/// parameters, dispatching on the potential variant.
pub fn discriminant_mode(params: &ModelParams, k: i64, lambda: f64) -> Result<f64, FloquetError> {
    let w = mode_weight(params, k)?;
    Ok(match params.potential {
        PotentialSpec::DeltaComb { alpha, beta } => {
            discriminant_delta(-alpha * w, -beta * w, lambda)
        }
        PotentialSpec::Step { alpha, beta, theta } => {
            discriminant_step(-alpha * w, -beta * w, theta, lambda)
        }
    })
}

/// Fundamental 2×2 period map of a Hill operator at spectral parameter λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monodromy {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Monodromy {
    pub fn identity() -> Monodromy {
        Monodromy { m11: 1.0, m12: 0.0, m21: 0.0, m22: 1.0 }
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Deviation of the Wronskian from 1.
    pub fn wronskian_defect(&self) -> f64 {
        (self.det() - 1.0).abs()
    }

    fn mul_left(&mut self, o: &Monodromy) {
        let (a, b, c, d) = (self.m11, self.m12, self.m21, self.m22);
        self.m11 = o.m11 * a + o.m12 * c;
        self.m12 = o.m11 * b + o.m12 * d;
        self.m21 = o.m21 * a + o.m22 * c;
        self.m22 = o.m21 * b + o.m22 * d;
    }
}

/// One period of a piecewise-constant coefficient with finitely many delta
/// atoms: `-u'' + (W(x) + Σ bᵢ δ(x - xᵢ)) u = λ u`. Pieces partition
/// `[0, 2π)` left to right; atom positions live in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCoeff {
    /// (length, constant value) pairs; lengths sum to 2π.
    pub pieces: Vec<(f64, f64)>,
    /// (position, strength) of each delta atom.
    pub atoms: Vec<(f64, f64)>,
}

impl PiecewiseCoeff {
    pub fn constant(value: f64) -> PiecewiseCoeff {
        PiecewiseCoeff { pieces: vec![(TWO_PI, value)], atoms: vec![] }
    }

    /// α̃ + β̃ δ_per with the atom at 0.
    pub fn delta_comb(alpha_t: f64, beta_t: f64) -> PiecewiseCoeff {
        PiecewiseCoeff { pieces: vec![(TWO_PI, alpha_t)], atoms: vec![(0.0, beta_t)] }
    }

    /// α̃ on [0, 2πθ), β̃ on [2πθ, 2π).
    pub fn step(alpha_t: f64, beta_t: f64, theta: f64) -> PiecewiseCoeff {
        PiecewiseCoeff {
            pieces: vec![(TWO_PI * theta, alpha_t), (TWO_PI * (1.0 - theta), beta_t)],
            atoms: vec![],
        }
    }

    /// Coefficient of the mode operator L_k (potential scaled by -ω²(k²-τ)).
    pub fn for_mode(params: &ModelParams, k: i64) -> Result<PiecewiseCoeff, ParamError> {
        let w = mode_weight(params, k)?;
        Ok(match params.potential {
            PotentialSpec::DeltaComb { alpha, beta } => {
                PiecewiseCoeff::delta_comb(-alpha * w, -beta * w)
            }
            PotentialSpec::Step { alpha, beta, theta } => {
                PiecewiseCoeff::step(-alpha * w, -beta * w, theta)
            }
        })
    }

    fn validate(&self) -> Result<(), FloquetError> {
        let mut total = 0.0;
        for &(len, val) in &self.pieces {
            if !(len > 0.0) || !len.is_finite() || !val.is_finite() {
                return Err(FloquetError::InvalidCoefficient(format!(
                    "piece (len={len}, value={val})"
                )));
            }
            total += len;
        }
        if (total - TWO_PI).abs() > 1e-9 {
            return Err(FloquetError::InvalidCoefficient(format!(
                "piece lengths sum to {total}, expected 2π"
            )));
        }
        for &(pos, b) in &self.atoms {
            if !(0.0..TWO_PI).contains(&pos) || !b.is_finite() {
                return Err(FloquetError::InvalidCoefficient(format!(
                    "atom (pos={pos}, strength={b}) outside [0, 2π) or non-finite"
                )));
            }
        }
        Ok(())
    }
}

/// Transfer matrix of `-u'' + c u = 0` over a piece of length `len`.
fn piece_map(len: f64, c: f64) -> Monodromy {
    if c < 0.0 {
        let nu = (-c).sqrt();
        let (s, co) = ((nu * len).sin(), (nu * len).cos());
        Monodromy { m11: co, m12: s / nu, m21: -nu * s, m22: co }
    } else if c == 0.0 {
        Monodromy { m11: 1.0, m12: len, m21: 0.0, m22: 1.0 }
    } else {
        let nu = c.sqrt();
        let (s, co) = ((nu * len).sinh(), (nu * len).cosh());
        Monodromy { m11: co, m12: s / nu, m21: nu * s, m22: co }
    }
}

/// Propagates a fundamental pair over one period: exact exponentials on the
/// constant pieces, jump map (v, v') ↦ (v, v' + b v) at each atom. Each atom
/// is applied once when its position is crossed (position 0 first).
pub fn monodromy_numeric(coeff: &PiecewiseCoeff, lambda: f64) -> Result<Monodromy, FloquetError> {
    coeff.validate()?;
    if !lambda.is_finite() {
        return Err(FloquetError::InvalidCoefficient(format!("lambda = {lambda}")));
    }
    let mut atoms = coeff.atoms.clone();
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut m = Monodromy::identity();
    let mut x = 0.0;
    let mut ai = 0;
    let pos_tol = 1e-12;
    while ai < atoms.len() && atoms[ai].0 <= x + pos_tol {
        m.mul_left(&Monodromy { m11: 1.0, m12: 0.0, m21: atoms[ai].1, m22: 1.0 });
        ai += 1;
    }
    for &(len, val) in &coeff.pieces {
        let end = x + len;
        let mut cur = x;
        // split the piece at interior atoms
        while ai < atoms.len() && atoms[ai].0 < end - pos_tol {
            let (pos, b) = atoms[ai];
            if pos > cur + pos_tol {
                m.mul_left(&piece_map(pos - cur, val - lambda));
            }
            m.mul_left(&Monodromy { m11: 1.0, m12: 0.0, m21: b, m22: 1.0 });
            cur = pos;
            ai += 1;
        }
        if end > cur {
            m.mul_left(&piece_map(end - cur, val - lambda));
        }
        x = end;
    }
    Ok(m)
}

/// Sampled discriminant values and band edges of one mode operator.
#[derive(Debug, Clone, Serialize)]
pub struct BandReport {
    pub k: i64,
    pub gap_radius: f64,
    /// λ values where |D_k| crosses 2 inside the sampled window, ascending.
    pub edges: Vec<f64>,
    pub samples: Vec<(f64, f64)>,
}

/// Per-k gap radii together with the fitted growth constant
/// `fitted_c = min_k r_k / |k|^γ`.
#[derive(Debug, Clone, Serialize)]
pub struct GapCertificate {
    pub k_list: Vec<i64>,
    pub radii: Vec<f64>,
    pub fitted_c: f64,
    pub gamma: f64,
}

impl GapCertificate {
    pub fn is_valid(&self) -> bool {
        self.fitted_c > 0.0 && self.radii.iter().all(|r| *r > 0.0)
    }
}

/// Sampling density used by the gap searches: 512 λ-points per unit interval.
const SAMPLES_PER_UNIT: f64 = 512.0;
const BISECTION_STEPS: usize = 60;

fn bisect_crossing<D: Fn(f64) -> f64>(d: &D, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (inside + outside);
        if d(mid).abs() > 2.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

fn one_sided_radius<D: Fn(f64) -> f64>(d: &D, direction: f64, r_max: f64) -> f64 {
    // march outward from a small first step, geometric at first, then on the
    // uniform 1/512 grid so narrow bands cannot be stepped over
    let h = 1.0 / SAMPLES_PER_UNIT;
    let mut prev = 0.0f64;
    let mut step = 1e-3;
    loop {
        let next = (prev + step.min(h)).min(r_max);
        let lam = direction * next;
        if d(lam).abs() <= 2.0 {
            let root = bisect_crossing(d, direction * prev, lam);
            return root.abs();
        }
        if next >= r_max {
            return r_max;
        }
        prev = next;
        step = if step < h { step * 2.0 } else { h };
    }
}

/// Largest r ≤ r_max with |D_k| > 2 on the sampled interval (-r, r).
/// Errors when 0 itself fails the resolvent test.
pub fn gap_radius(params: &ModelParams, k: i64, r_max: f64) -> Result<f64, FloquetError> {
    let w = mode_weight(params, k)?;
    let d = make_disc(params, w);
    let d0 = d(0.0).abs();
    if !(d0 > 2.0) {
        return Err(FloquetError::ZeroInSpectrum { k, disc_abs: d0 });
    }
    let right = one_sided_radius(&d, 1.0, r_max);
    let left = one_sided_radius(&d, -1.0, r_max);
    Ok(right.min(left))
}

fn make_disc(params: &ModelParams, w: f64) -> impl Fn(f64) -> f64 + '_ {
    let pot = params.potential;
    move |lambda: f64| match pot {
        PotentialSpec::DeltaComb { alpha, beta } => {
            discriminant_delta(-alpha * w, -beta * w, lambda)
        }
        PotentialSpec::Step { alpha, beta, theta } => {
            discriminant_step(-alpha * w, -beta * w, theta, lambda)
        }
    }
}

/// Sweeps the odd modes k = 1, 3, …, k_max and certifies the linear gap
/// growth; r_max for each k scales with k so the search window always
/// contains the expected first band edge.
pub fn certify_gap_growth(params: &ModelParams, k_max: i64) -> Result<GapCertificate, FloquetError> {
    let ks: Vec<i64> = (1..=k_max).step_by(2).collect();
    let radii: Vec<f64> = ks
        .par_iter()
        .map(|&k| gap_radius(params, k, (0.5 * k as f64).max(1.0)))
        .collect::<Result<_, _>>()?;
    let fitted_c = ks
        .iter()
        .zip(&radii)
        .map(|(&k, &r)| r / (k as f64).powf(params.gamma))
        .fold(f64::INFINITY, f64::min);
    Ok(GapCertificate { k_list: ks, radii, fitted_c, gamma: params.gamma })
}

/// Sampled discriminant report over a λ window, with refined band edges.
pub fn band_report(
    params: &ModelParams,
    k: i64,
    window: (f64, f64),
) -> Result<BandReport, FloquetError> {
    let w = mode_weight(params, k)?;
    let d = make_disc(params, w);
    let (lo, hi) = window;
    if !(hi > lo) {
        return Err(FloquetError::InvalidCoefficient(format!("window ({lo}, {hi})")));
    }
    let steps = ((hi - lo) * SAMPLES_PER_UNIT).ceil() as usize;
    let h = (hi - lo) / steps as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut edges = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=steps {
        let lam = lo + i as f64 * h;
        let val = d(lam);
        if let Some((plam, pval)) = prev {
            let was_in = pval.abs() > 2.0;
            let is_in = val.abs() > 2.0;
            if was_in != is_in {
                let (inside, outside) = if was_in { (plam, lam) } else { (lam, plam) };
                let mut a = inside;
                let mut b = outside;
                for _ in 0..BISECTION_STEPS {
                    let mid = 0.5 * (a + b);
                    if d(mid).abs() > 2.0 {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                edges.push(0.5 * (a + b));
            }
        }
        prev = Some((lam, val));
        samples.push((lam, val));
    }
    edges.sort_by(f64::total_cmp);
    let gap = gap_radius(params, k, hi.abs().max(lo.abs()).max(1.0))?;
    Ok(BandReport { k, gap_radius: gap, edges, samples })
}

/// Samples the lower sine bound used by the gap proofs for the (V1)
/// normalization αω² = 1/16: |sin(2π√(λ + (k²-τ)/16))| stays above
/// min{½√(1+τ), ½√(1-τ)} on (-ck, ck) once c is small enough.
pub fn check_sine_bound(
    tau: f64,
    c: f64,
    k_max: i64,
    n_samples: usize,
) -> Result<bool, FloquetError> {
    if tau.abs() >= 1.0 {
        return Err(ParamError::TauOutOfRange { tau, tau0: 1.0 }.into());
    }
    let bound = (0.5 * (1.0 + tau).sqrt()).min(0.5 * (1.0 - tau).sqrt());
    for k in (1..=k_max).step_by(2) {
        let kf = k as f64;
        for i in 0..n_samples {
            let lam = -c * kf + (2.0 * c * kf) * (i as f64 + 0.5) / n_samples as f64;
            let arg = lam + (kf * kf - tau) / 16.0;
            if arg < 0.0 {
                return Ok(false);
            }
            if (TWO_PI * arg.sqrt()).sin().abs() < bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Shrinking search for a constant c that makes the sine bound hold; starts
/// at `c0` and halves until success (or gives up below 1e-12).
pub fn find_sine_bound_constant(tau: f64, c0: f64, k_max: i64, n_samples: usize) -> Option<f64> {
    let mut c = c0;
    while c > 1e-12 {
        if check_sine_bound(tau, c, k_max, n_samples).ok()? {
            return Some(c);
        }
        c *= 0.5;
    }
    None
}

/// Discriminant of the weighted operator (1/w)(-d²/dx² + V) at spectral
/// parameter λ: the monodromy of -u'' + (V - λw)u = 0 at energy 0.
fn weighted_disc(
    potential: &PiecewiseCoeff,
    weight: &PiecewiseCoeff,
    lambda: f64,
) -> Result<f64, FloquetError> {
    let merged = merge_coeffs(potential, weight, |v, w| v - lambda * w);
    Ok(monodromy_numeric(&merged, 0.0)?.trace())
}

fn breakpoints(c: &PiecewiseCoeff) -> Vec<f64> {
    let mut xs = vec![0.0];
    let mut x = 0.0;
    for &(len, _) in &c.pieces {
        x += len;
        xs.push(x);
    }
    xs
}

fn value_at(c: &PiecewiseCoeff, x: f64) -> f64 {
    let mut acc = 0.0;
    for &(len, val) in &c.pieces {
        acc += len;
        if x < acc {
            return val;
        }
    }
    c.pieces.last().map(|p| p.1).unwrap_or(0.0)
}

/// Pointwise combination of two atom-free-in-`b` coefficients; atoms of `a`
/// pass through unchanged.
fn merge_coeffs(
    a: &PiecewiseCoeff,
    b: &PiecewiseCoeff,
    f: impl Fn(f64, f64) -> f64,
) -> PiecewiseCoeff {
    debug_assert!(b.atoms.is_empty());
    let mut cuts: Vec<f64> = breakpoints(a).into_iter().chain(breakpoints(b)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo < 1e-12 {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        pieces.push((hi - lo, f(value_at(a, mid), value_at(b, mid))));
    }
    PiecewiseCoeff { pieces, atoms: a.atoms.clone() }
}

/// Verifies the band-edge monotonicity implication on a sampled grid: when
/// the heavier weight keeps [-a, a] free of spectrum, so does the lighter
/// one. Both operators share the background potential; the weights must be
/// pointwise ordered with inf weight1 > 0.
pub fn check_band_monotonicity(
    potential: &PiecewiseCoeff,
    weight1: &PiecewiseCoeff,
    weight2: &PiecewiseCoeff,
    a: f64,
) -> Result<bool, FloquetError> {
    weight1.validate()?;
    weight2.validate()?;
    potential.validate()?;
    if !weight1.atoms.is_empty() || !weight2.atoms.is_empty() {
        return Err(FloquetError::InvalidCoefficient(
            "weights must be atom-free piecewise-constant functions".into(),
        ));
    }
    // pointwise order and positivity, checked on the merged breakpoints
    let mut cuts: Vec<f64> = breakpoints(weight1)
        .into_iter()
        .chain(breakpoints(weight2))
        .collect();
    cuts.sort_by(f64::total_cmp);
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if w[1] - w[0] < 1e-12 {
            continue;
        }
        let (v1, v2) = (value_at(weight1, mid), value_at(weight2, mid));
        if v1 > v2 + 1e-14 {
            return Err(FloquetError::OrderViolated { at: mid });
        }
        if !(v1 > 0.0) {
            return Err(FloquetError::InvalidCoefficient(format!(
                "inf weight1 must be positive, found {v1} at x = {mid}"
            )));
        }
    }
    let n = 257;
    let mut premise = true;
    let mut conclusion = true;
    for i in 0..n {
        let lam = -a + 2.0 * a * i as f64 / (n - 1) as f64;
        if weighted_disc(potential, weight2, lam)?.abs() <= 2.0 {
            premise = false;
            break;
        }
    }
    if premise {
        for i in 0..n {
            let lam = -a + 2.0 * a * i as f64 / (n - 1) as f64;
            if weighted_disc(potential, weight1, lam)?.abs() <= 2.0 {
                conclusion = false;
                break;
            }
        }
    }
    Ok(!premise || conclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::validate_v1;

    #[test]
    fn delta_disc_spot_values() {
        // middle case at λ = α̃
        let d = discriminant_delta(0.0, 1.0, 0.0);
        assert!((d - (2.0 + TWO_PI)).abs() < 1e-12);
        // free operator band edge
        let d = discriminant_delta(0.0, 0.0, 0.25);
        assert!((d + 2.0).abs() < 1e-12);
        // sin(2π) = 0, cos(2π) = 1
        let d = discriminant_delta(0.0, 1.0, 1.0);
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn delta_disc_continuous_at_case_boundary() {
        for bt in [-3.0, -0.5, 0.7, 2.0] {
            let mid = discriminant_delta(1.5, bt, 1.5);
            let eps = 1e-9;
            let left = discriminant_delta(1.5, bt, 1.5 - eps);
            let right = discriminant_delta(1.5, bt, 1.5 + eps);
            assert!((left - mid).abs() < 1e-6, "left {left} vs {mid}");
            assert!((right - mid).abs() < 1e-6, "right {right} vs {mid}");
        }
    }

    #[test]
    fn step_disc_constant_potential_collapses() {
        for theta in [0.2, 0.5, 0.77] {
            for lam in [0.3, 1.1, 4.7] {
                let c = -0.6;
                let d = discriminant_step(c, c, theta, lam);
                let expect = 2.0 * (TWO_PI * (lam - c).sqrt()).cos();
                assert!((d - expect).abs() < 1e-12, "theta={theta} lam={lam}");
            }
        }
    }

    #[test]
    fn step_disc_free_reduction() {
        let d = discriminant_step(0.0, 0.0, 0.3, 0.25);
        assert!((d + 2.0).abs() < 1e-12);
    }

    #[test]
    fn step_disc_fallback_matches_monodromy() {
        // below max(α̃, β̃) the value must come from the period map itself
        let (at, bt, theta) = (-1.0, 0.0, 0.5);
        let lam = 1.0; // > at but > bt too; force fallback with lam < max:
        let lam_low = -0.5;
        let m = monodromy_numeric(&PiecewiseCoeff::step(at, bt, theta), lam_low).unwrap();
        let d = discriminant_step(at, bt, theta, lam_low);
        assert!((d - m.trace()).abs() < 1e-10);
        // and in the closed-form region both routes agree as well
        let m2 = monodromy_numeric(&PiecewiseCoeff::step(at, bt, theta), lam).unwrap();
        let d2 = discriminant_step(at, bt, theta, lam);
        assert!((d2 - m2.trace()).abs() <= 1e-8 * d2.abs().max(1.0));
    }

    #[test]
    fn mode_disc_v1_spot_values() {
        let p = validate_v1(1.0, 64.0, 0.0).unwrap();
        assert!((discriminant_mode(&p, 1, 0.0).unwrap() + 16.0).abs() < 1e-10);
        let d = discriminant_mode(&p, 1, -1.0 / 16.0).unwrap();
        assert!((d - (2.0 - 8.0 * std::f64::consts::PI)).abs() < 1e-10);
        assert!((discriminant_mode(&p, 3, 0.0).unwrap() - 48.0).abs() < 1e-10);
        assert!(discriminant_mode(&p, 2, 0.0).is_err());
    }

    #[test]
    fn monodromy_free_case() {
        let m = monodromy_numeric(&PiecewiseCoeff::constant(0.0), 1.0).unwrap();
        assert!((m.trace() - 2.0 * TWO_PI.cos()).abs() < 1e-12);
        assert!(m.wronskian_defect() < 1e-12);
    }

    #[test]
    fn monodromy_delta_matches_closed_form() {
        let m = monodromy_numeric(&PiecewiseCoeff::delta_comb(0.0, 1.0), 0.0).unwrap();
        assert!((m.trace() - (2.0 + TWO_PI)).abs() < 1e-10);
        assert!(m.wronskian_defect() < 1e-10);
    }

    #[test]
    fn monodromy_rejects_bad_input() {
        let bad = PiecewiseCoeff { pieces: vec![(TWO_PI, 0.0)], atoms: vec![(7.0, 1.0)] };
        assert!(matches!(
            monodromy_numeric(&bad, 0.0),
            Err(FloquetError::InvalidCoefficient(_))
        ));
        let bad2 = PiecewiseCoeff { pieces: vec![(1.0, 0.0)], atoms: vec![] };
        assert!(monodromy_numeric(&bad2, 0.0).is_err());
    }

    #[test]
    fn gap_radius_v1_k1() {
        let p = validate_v1(1.0, 64.0, 0.0).unwrap();
        let r = gap_radius(&p, 1, 1.0).unwrap();
        // first band edge on the right sits at ν = 1/2, λ = 3/16
        assert!((r - 3.0 / 16.0).abs() < 1e-9, "r = {r}");
        let d = discriminant_mode(&p, 1, r).unwrap();
        assert!((d.abs() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn gap_radius_window_clamp() {
        let p = validate_v1(1.0, 64.0, 0.0).unwrap();
        let r = gap_radius(&p, 1, 1e-6).unwrap();
        assert_eq!(r, 1e-6);
    }

    #[test]
    fn gap_radius_zero_in_spectrum() {
        // β = 8α violates the admissibility bound; k = 1 has |D(0)| = 2
        let p = ModelParams::custom(
            PotentialSpec::DeltaComb { alpha: 1.0, beta: 8.0 },
            0.25,
            0.0,
        );
        assert!(matches!(
            gap_radius(&p, 1, 1.0),
            Err(FloquetError::ZeroInSpectrum { k: 1, .. })
        ));
    }

    #[test]
    fn certificate_v1_defaults() {
        let p = validate_v1(1.0, 64.0, 0.0).unwrap();
        let cert = certify_gap_growth(&p, 11).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.k_list, vec![1, 3, 5, 7, 9, 11]);
        assert!((cert.radii[0] - 0.1875).abs() < 1e-8);
        assert!((cert.radii[1] - 0.303_420_349).abs() < 1e-6);
    }

    #[test]
    fn sine_bound_examples() {
        assert!(check_sine_bound(0.0, 1e-4, 21, 64).unwrap());
        assert!(!check_sine_bound(0.0, 10.0, 5, 512).unwrap());
        assert!(check_sine_bound(0.99, 1e-6, 5, 64).unwrap());
        assert!(check_sine_bound(1.0, 1e-6, 5, 64).is_err());
    }

    #[test]
    fn monotonicity_reflexive_and_ordered() {
        let v = PiecewiseCoeff::constant(4.0);
        let w1 = PiecewiseCoeff::constant(1.0);
        // identical weights: implication trivially holds
        assert!(check_band_monotonicity(&v, &w1, &w1, 0.2).unwrap());
        // unordered weights rejected
        let w_small = PiecewiseCoeff::constant(0.5);
        assert!(matches!(
            check_band_monotonicity(&v, &w1, &w_small, 0.2),
            Err(FloquetError::OrderViolated { .. })
        ));
    }
}
