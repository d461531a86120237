//! Independent oracle for the hypergeometric series: exact rational
//! arithmetic over the first 40 terms, converted to float once at the end.

use num_bigint::BigInt;
use num_rational::BigRational;
use qmc_ratio::gauss_2f1;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sum of the first `terms` series terms of 2F1(1/2, 1/2; 5/2; num/den)
/// in exact arithmetic. All Pochhammer ratios with half-integer parameters
/// are rationals once the halves are cleared.
fn rational_2f1_half_half_fivehalf(num: i64, den: i64, terms: usize) -> f64 {
    let z = big(num) / big(den);
    let mut term = big(1);
    let mut sum = big(1);
    for n in 0..terms as i64 {
        // (1/2 + n)^2 / ((5/2 + n)(n + 1)) = (2n + 1)^2 / ((2n + 5) * 2(n + 1))
        let ratio = big((2 * n + 1) * (2 * n + 1)) / big((2 * n + 5) * 2 * (n + 1));
        term = term * ratio * z.clone();
        sum += term.clone();
    }
    let numer = sum.numer().to_string().parse::<f64>().unwrap_or_else(|_| {
        // Falls back to a digit-window quotient for very long integers.
        big_to_f64(sum.numer())
    });
    let denom = big_to_f64(sum.denom());
    if numer.is_finite() && denom.is_finite() {
        numer / denom
    } else {
        big_ratio_to_f64(&sum)
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    v.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

fn big_ratio_to_f64(r: &BigRational) -> f64 {
    // Scale down numerator and denominator together to stay in f64 range.
    let digits_n = r.numer().to_string().len() as i64;
    let digits_d = r.denom().to_string().len() as i64;
    let drop = (digits_n.min(digits_d) - 200).max(0);
    let scale = BigInt::from(10u8).pow(drop as u32);
    let n = (r.numer() / &scale).to_string().parse::<f64>().unwrap();
    let d = (r.denom() / &scale).to_string().parse::<f64>().unwrap();
    n / d
}

#[test]
fn series_matches_exact_rational_oracle() {
    // z = 1/9 is the value entering q(0) and q(-1).
    let oracle = rational_2f1_half_half_fivehalf(1, 9, 40);
    let series = gauss_2f1(0.5, 0.5, 2.5, 1.0 / 9.0).unwrap();
    assert!(
        (oracle - series).abs() < 1e-13,
        "oracle {oracle} vs series {series}"
    );

    // A second interior point: z = 4/9 enters q(1/2).
    let oracle = rational_2f1_half_half_fivehalf(4, 9, 40);
    let series = gauss_2f1(0.5, 0.5, 2.5, 4.0 / 9.0).unwrap();
    assert!(
        (oracle - series).abs() < 1e-12,
        "oracle {oracle} vs series {series}"
    );
}
