use crate::error::RatioError;

const MAX_TERMS: usize = 20_000;
const TERM_TOL: f64 = 1e-15;

/// Gauss hypergeometric function 2F1(a, b; c; z) by direct series
/// summation, with a connection formula near z = 1 where the series
/// converges too slowly, and Gauss's summation theorem at z = 1.
///
/// Supports the real domain z in (-1, 1]; the z = 1 endpoint and the
/// near-unit connection formula require half-integer parameters (exact
/// gamma factors) and c - a - b not an integer.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64, RatioError> {
    if !z.is_finite() || z > 1.0 || z <= -1.0 {
        return Err(RatioError::Domain(format!(
            "2F1 series evaluation requires -1 < z <= 1, got {z}"
        )));
    }
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(RatioError::Domain(format!(
            "2F1 undefined at non-positive integer c = {c}"
        )));
    }
    if z == 1.0 {
        // Gauss: 2F1(a,b;c;1) = G(c) G(c-a-b) / (G(c-a) G(c-b)), c-a-b > 0.
        if c - a - b <= 0.0 {
            return Err(RatioError::Domain(format!(
                "2F1 at z = 1 requires c - a - b > 0, got {}",
                c - a - b
            )));
        }
        let num = gamma_half_int(c)? * gamma_half_int(c - a - b)?;
        let den = gamma_half_int(c - a)? * gamma_half_int(c - b)?;
        return Ok(num / den);
    }
    if z > 0.9 {
        // Connection formula at 1 - z (log-free case, c - a - b not integer):
        // F(a,b;c;z) = A F(a,b;a+b-c+1;1-z)
        //            + B (1-z)^(c-a-b) F(c-a,c-b;c-a-b+1;1-z).
        let s = c - a - b;
        if s.fract() == 0.0 {
            return Err(RatioError::Domain(
                "connection formula requires non-integer c - a - b".into(),
            ));
        }
        let big_a = gamma_half_int(c)? * gamma_half_int(s)?
            / (gamma_half_int(c - a)? * gamma_half_int(c - b)?);
        let big_b = gamma_half_int(c)? * gamma_half_int(-s)?
            / (gamma_half_int(a)? * gamma_half_int(b)?);
        let w = 1.0 - z;
        let f1 = series(a, b, a + b - c + 1.0, w)?;
        let f2 = series(c - a, c - b, s + 1.0, w)?;
        return Ok(big_a * f1 + big_b * w.powf(s) * f2);
    }
    series(a, b, c, z)
}

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64, RatioError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.abs() < TERM_TOL * (1.0 + sum.abs()) {
            return Ok(sum);
        }
    }
    Err(RatioError::NoConvergence(MAX_TERMS))
}

/// Exact gamma values on the half-integer lattice, via recursion from
/// Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
fn gamma_half_int(t: f64) -> Result<f64, RatioError> {
    let two_t = 2.0 * t;
    if (two_t - two_t.round()).abs() > 1e-12 {
        return Err(RatioError::Domain(format!(
            "exact gamma requires a half-integer argument, got {t}"
        )));
    }
    let two_t = two_t.round() as i64;
    if two_t % 2 == 0 {
        let k = two_t / 2;
        if k <= 0 {
            return Err(RatioError::Domain(format!("gamma pole at {t}")));
        }
        let mut g = 1.0;
        for i in 1..k {
            g *= i as f64;
        }
        Ok(g)
    } else {
        // t = k + 1/2 for integer k (possibly negative); climb from
        // Gamma(1/2) using Gamma(t+1) = t Gamma(t) in both directions.
        let mut g = std::f64::consts::PI.sqrt();
        let k = (two_t - 1) / 2;
        if k >= 0 {
            let mut arg = 0.5;
            for _ in 0..k {
                g *= arg;
                arg += 1.0;
            }
        } else {
            let mut arg = 0.5;
            for _ in 0..(-k) {
                arg -= 1.0;
                g /= arg;
            }
        }
        Ok(g)
    }
}

/// The expected-energy kernel of hyperplane rounding:
/// `q(x) = 1 + ((8 + 16x) / (9 pi)) * 2F1(1/2, 1/2; 5/2; ((1 + 2x)/3)^2)`.
pub fn q(x: f64) -> Result<f64, RatioError> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(RatioError::Domain(format!(
            "q is defined on [-1, 1], got {x}"
        )));
    }
    let z = ((1.0 + 2.0 * x) / 3.0).powi(2);
    let f = gauss_2f1(0.5, 0.5, 2.5, z)?;
    Ok(1.0 + (8.0 + 16.0 * x) / (9.0 * std::f64::consts::PI) * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_lattice_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma_half_int(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma_half_int(4.0).unwrap(), 6.0);
        assert_relative_eq!(gamma_half_int(0.5).unwrap(), sqrt_pi);
        assert_relative_eq!(gamma_half_int(2.5).unwrap(), 0.75 * sqrt_pi, epsilon = 1e-15);
        assert_relative_eq!(gamma_half_int(-0.5).unwrap(), -2.0 * sqrt_pi, epsilon = 1e-15);
        assert_relative_eq!(
            gamma_half_int(-1.5).unwrap(),
            4.0 / 3.0 * sqrt_pi,
            epsilon = 1e-15
        );
        assert!(gamma_half_int(0.0).is_err());
        assert!(gamma_half_int(-2.0).is_err());
    }

    #[test]
    fn series_anchors() {
        assert_relative_eq!(gauss_2f1(0.5, 0.5, 2.5, 0.0).unwrap(), 1.0);
        // Gauss theorem at z = 1: 3 pi / 8.
        assert_relative_eq!(
            gauss_2f1(0.5, 0.5, 2.5, 1.0).unwrap(),
            3.0 * std::f64::consts::PI / 8.0,
            epsilon = 1e-15
        );
        // ln(1+z) = z 2F1(1, 1; 2; -z).
        let z: f64 = 0.37;
        assert_relative_eq!(
            z * gauss_2f1(1.0, 1.0, 2.0, -z).unwrap(),
            (1.0 + z).ln(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn connection_formula_is_continuous() {
        // The direct series and the transformed branch must agree where
        // both converge comfortably.
        for &z in &[0.8999, 0.89999, 0.9, 0.90001, 0.93, 0.95] {
            let direct = series(0.5, 0.5, 2.5, z).unwrap();
            let routed = gauss_2f1(0.5, 0.5, 2.5, z).unwrap();
            assert_relative_eq!(direct, routed, epsilon = 1e-11);
        }
        // Approaching z = 1 the transformed branch increases to the Gauss
        // endpoint value, where the raw series is impractically slow.
        let limit = 3.0 * std::f64::consts::PI / 8.0;
        let near = gauss_2f1(0.5, 0.5, 2.5, 0.999999).unwrap();
        let nearer = gauss_2f1(0.5, 0.5, 2.5, 0.99999999).unwrap();
        assert!(near < nearer && nearer < limit);
        assert!(limit - near < 1e-5);
    }

    #[test]
    fn q_anchors() {
        // Prefactor vanishes at x = -1/2.
        assert_eq!(q(-0.5).unwrap(), 1.0);
        // q(1) = 2 exactly: prefactor 24/(9 pi) times 3 pi / 8.
        assert_relative_eq!(q(1.0).unwrap(), 2.0, epsilon = 1e-12);
        // q(-1) is about 0.71.
        assert_relative_eq!(q(-1.0).unwrap(), 0.71, epsilon = 5e-3);
        assert!(q(1.0001).is_err());
    }

    #[test]
    fn q_is_increasing() {
        let mut prev = q(-1.0).unwrap();
        let mut x = -1.0f64;
        while x < 1.0 {
            x = (x + 0.01).min(1.0);
            let next = q(x).unwrap();
            assert!(next >= prev - 1e-12, "q not increasing at {x}");
            prev = next;
        }
    }
}
