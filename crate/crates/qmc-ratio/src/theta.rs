use crate::error::RatioError;
use serde::Serialize;

/// Admissible rotation-profile functions used by the triangle-free and
/// bipartite rounding algorithms.
///
/// A profile maps the positive edge value `h+` to the rotation strength in
/// [0, 1]. Admissibility requires `theta(0) = 0`, `theta(1) <= 1`,
/// monotonicity, and the product-minimum identity
/// `min_{x in [0,c]} (1 - theta(x))(1 - theta(c - x)) = 1 - theta(c)`,
/// which holds for the three parametric families below in the stated
/// parameter ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", content = "r")]
pub enum ThetaSpec {
    /// `x -> r x` with `r` in [0, 1].
    Linear(f64),
    /// `x -> r x^2` with `r` in [0, 1].
    Quadratic(f64),
    /// `x -> 1 - exp(-r x)` with `r >= 0`.
    Exponential(f64),
}

impl ThetaSpec {
    pub fn linear(r: f64) -> Result<Self, RatioError> {
        if !(0.0..=1.0).contains(&r) {
            return Err(RatioError::InvalidTheta(format!(
                "linear profile requires r in [0, 1], got {r}"
            )));
        }
        Ok(ThetaSpec::Linear(r))
    }

    pub fn quadratic(r: f64) -> Result<Self, RatioError> {
        if !(0.0..=1.0).contains(&r) {
            return Err(RatioError::InvalidTheta(format!(
                "quadratic profile requires r in [0, 1], got {r}"
            )));
        }
        Ok(ThetaSpec::Quadratic(r))
    }

    pub fn exponential(r: f64) -> Result<Self, RatioError> {
        if !(r >= 0.0) {
            return Err(RatioError::InvalidTheta(format!(
                "exponential profile requires r >= 0, got {r}"
            )));
        }
        Ok(ThetaSpec::Exponential(r))
    }

    /// Parse a CLI-style spec `family:r`, e.g. `linear:0.5`.
    pub fn parse(text: &str) -> Result<Self, RatioError> {
        let (family, r) = text
            .split_once(':')
            .ok_or_else(|| RatioError::InvalidTheta(format!("expected family:r, got {text}")))?;
        let r: f64 = r
            .parse()
            .map_err(|_| RatioError::InvalidTheta(format!("bad parameter in {text}")))?;
        match family {
            "linear" => Self::linear(r),
            "quadratic" => Self::quadratic(r),
            "exponential" | "exp" => Self::exponential(r),
            other => Err(RatioError::InvalidTheta(format!(
                "unknown family {other} (expected linear, quadratic or exponential)"
            ))),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ThetaSpec::Linear(r) => r * x,
            ThetaSpec::Quadratic(r) => r * x * x,
            ThetaSpec::Exponential(r) => 1.0 - (-r * x).exp(),
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            ThetaSpec::Linear(r) | ThetaSpec::Quadratic(r) | ThetaSpec::Exponential(r) => r,
        }
    }

    /// Grid check of the admissibility conditions.
    pub fn is_member(&self, grid_resolution: f64) -> bool {
        theta_membership_test(|x| self.eval(x), grid_resolution)
    }
}

impl std::fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaSpec::Linear(r) => write!(f, "linear:{r}"),
            ThetaSpec::Quadratic(r) => write!(f, "quadratic:{r}"),
            ThetaSpec::Exponential(r) => write!(f, "exponential:{r}"),
        }
    }
}

/// Verify admissibility of an arbitrary profile on a grid: boundary values,
/// monotonicity, and the product-minimum identity for every grid `c`.
pub fn theta_membership_test(theta: impl Fn(f64) -> f64, grid_resolution: f64) -> bool {
    let tol = 1e-9;
    if theta(0.0).abs() > 1e-12 {
        return false;
    }
    if theta(1.0) > 1.0 + tol {
        return false;
    }
    let steps = (1.0 / grid_resolution).ceil() as usize;
    let at = |k: usize| k as f64 / steps as f64;
    let mut prev = theta(0.0);
    for k in 1..=steps {
        let v = theta(at(k));
        if v < prev - 1e-12 {
            return false;
        }
        prev = v;
    }
    // The minimum over x is never above the x = 0 endpoint value
    // (1 - theta(c)); membership additionally requires it never drops below.
    for kc in 0..=steps {
        let c = at(kc);
        let target = 1.0 - theta(c);
        for kx in 0..=kc {
            let x = at(kx);
            let v = (1.0 - theta(x)) * (1.0 - theta(c - x));
            if v < target - tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_members_pass() {
        assert!(ThetaSpec::linear(1.0).unwrap().is_member(1e-2));
        assert!(ThetaSpec::linear(0.367).unwrap().is_member(1e-2));
        assert!(ThetaSpec::quadratic(0.9).unwrap().is_member(1e-2));
        assert!(ThetaSpec::exponential(2.5).unwrap().is_member(1e-2));
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        assert!(ThetaSpec::linear(1.2).is_err());
        assert!(ThetaSpec::quadratic(-0.1).is_err());
        assert!(ThetaSpec::exponential(-1.0).is_err());
    }

    #[test]
    fn scaled_square_exceeds_one() {
        // theta(1) = 2 > 1.
        assert!(!theta_membership_test(|x| 2.0 * x * x, 1e-2));
    }

    #[test]
    fn sqrt_fails_product_minimum() {
        // At c = 0.5, x = 0.25: (1 - 0.5)^2 = 0.25 < 1 - sqrt(0.5).
        assert!(!theta_membership_test(|x: f64| x.sqrt(), 1e-2));
    }

    #[test]
    fn parse_round_trip() {
        let t = ThetaSpec::parse("linear:0.367").unwrap();
        assert_eq!(t, ThetaSpec::Linear(0.367));
        assert!(ThetaSpec::parse("cubic:1").is_err());
        assert!(ThetaSpec::parse("linear:axe").is_err());
    }
}
