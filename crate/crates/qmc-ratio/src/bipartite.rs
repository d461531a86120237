use crate::alpha::golden_min;
use crate::error::RatioError;
use crate::theta::ThetaSpec;
use serde::Serialize;

/// Normalized edge guarantee of the bipartite rounding:
/// `delta(x) = (2 - theta(1 - x+) + 2 sqrt(theta(x+)(1 - theta(1 - x+)))) / (2 + 2x)`.
pub fn delta(theta: &ThetaSpec, x: f64) -> Result<f64, RatioError> {
    if x <= -1.0 || x > 1.0 {
        return Err(RatioError::Domain(format!(
            "delta is defined for x in (-1, 1], got {x}"
        )));
    }
    let xp = x.max(0.0);
    let t_far = theta.eval(1.0 - xp);
    let t_near = theta.eval(xp);
    let root = (t_near * (1.0 - t_far)).max(0.0).sqrt();
    Ok((2.0 - t_far + 2.0 * root) / (2.0 + 2.0 * x))
}

/// Guaranteed ratio of the bipartite rounding with a linear profile.
#[derive(Debug, Clone, Serialize)]
pub struct BipartiteReport {
    pub r: f64,
    pub h_max: f64,
    pub theta_star: f64,
    /// The four binding expressions:
    /// crossover, delta(0), delta(h_max), saturated-edge bound.
    pub components: [f64; 4],
    pub value: f64,
}

/// Evaluates the bipartite guarantee
/// `min { (2 - t*) / (2 + sqrt(3(1 - h^2)) - h), min_x delta(x), (1 + sqrt(t*)) / 2 }`
/// for the linear profile `x -> r x` with `r` in [0, 1/2], where the inner
/// minimum reduces to `min(delta(0), delta(h_max))`. A dense-grid scan of
/// `delta` over [0, h_max] cross-checks the two-point reduction.
pub fn bipartite_ratio(r: f64, h_max: f64, theta_star: f64) -> Result<BipartiteReport, RatioError> {
    if !(0.0..=0.5).contains(&r) {
        return Err(RatioError::Domain(format!(
            "linear slope must lie in [0, 1/2], got {r}"
        )));
    }
    let sqrt3_half = 3.0f64.sqrt() / 2.0;
    if !(sqrt3_half..=1.0).contains(&h_max) {
        return Err(RatioError::Domain(format!(
            "h_max must lie in [sqrt(3)/2, 1], got {h_max}"
        )));
    }
    if !(0.0..=1.0).contains(&theta_star) {
        return Err(RatioError::Domain(format!(
            "theta_star must lie in [0, 1], got {theta_star}"
        )));
    }
    let theta = ThetaSpec::linear(r)?;

    let crossover = (2.0 - theta_star) / (2.0 + (3.0 * (1.0 - h_max * h_max)).sqrt() - h_max);
    let delta_zero = delta(&theta, 0.0)?;
    let delta_hmax = delta(&theta, h_max)?;
    let saturated = (1.0 + theta_star.sqrt()) / 2.0;

    // Two-point reduction, cross-checked against a dense scan.
    let two_point = delta_zero.min(delta_hmax);
    let grid_min = dense_delta_min(&theta, h_max)?;
    if (two_point - grid_min).abs() > 1e-6 {
        return Err(RatioError::Domain(format!(
            "two-point reduction {two_point} disagrees with grid minimum {grid_min}"
        )));
    }

    let components = [crossover, delta_zero, delta_hmax, saturated];
    let value = components.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(BipartiteReport {
        r,
        h_max,
        theta_star,
        components,
        value,
    })
}

fn dense_delta_min(theta: &ThetaSpec, h_max: f64) -> Result<f64, RatioError> {
    let steps = 4000;
    let mut best = f64::INFINITY;
    let mut best_x = 0.0;
    for k in 0..=steps {
        let x = h_max * k as f64 / steps as f64;
        let v = delta(theta, x)?;
        if v < best {
            best = v;
            best_x = x;
        }
    }
    let lo = (best_x - h_max / steps as f64).max(0.0);
    let hi = (best_x + h_max / steps as f64).min(h_max);
    let (_, refined) = golden_min(lo, hi, 1e-12, |x| delta(theta, x))?;
    Ok(refined.min(best))
}
