//! Exact integer and rational helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// C(n, k) as an arbitrary-precision integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// C(n, k) for a big `n`, used when n = 2^s.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= i + 1;
    }
    acc
}

/// C(n, k) in u128, saturating at `u128::MAX`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    binomial(n, k).to_u128().unwrap_or(u128::MAX)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn big_ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// `p/q` form, always with a denominator.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, `p`, or a finite decimal such as `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().ok()?;
        let mag = int_part.abs() * &scale + frac_part;
        let num = if neg { -mag } else { mag };
        return Some(BigRational::new(num, scale));
    }
    let v: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(v))
}

/// A non-negative real value bracketed by two exact rationals.
///
/// `exact` values have `lower == upper`. Inexact values come from powers of
/// two with non-integral exponents, evaluated to `precision_bits` fractional
/// bits of the mantissa.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lower: BigRational,
    pub upper: BigRational,
    pub precision_bits: Option<u32>,
}

/// Fractional bits used when a power of two is not dyadic.
pub const POW2_PRECISION_BITS: u32 = 128;

impl Interval {
    pub fn exact(v: BigRational) -> Self {
        Interval {
            lower: v.clone(),
            upper: v,
            precision_bits: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.precision_bits.is_none()
    }

    /// Midpoint as an f64, for display.
    pub fn approx(&self) -> f64 {
        let mid = (&self.lower + &self.upper) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }

    /// Scales by a non-negative rational.
    pub fn scale(&self, c: &BigRational) -> Self {
        debug_assert!(!c.is_negative());
        Interval {
            lower: &self.lower * c,
            upper: &self.upper * c,
            precision_bits: self.precision_bits,
        }
    }
}

/// 2^e for a rational exponent.
///
/// Integral exponents (including negative ones) are exact. Otherwise the
/// fractional part a/q is handled as floor((2^(a + P*q))^(1/q)) / 2^P, which
/// brackets 2^(a/q) within one unit in the P-th bit.
pub fn pow2_rational(e: &BigRational) -> Interval {
    let fl = e.floor();
    let whole = fl.to_integer();
    let frac = e - &fl;
    let scale_whole = |v: BigRational| -> BigRational {
        let w = whole.to_i64().expect("exponent fits in i64");
        if w >= 0 {
            v * BigRational::from_integer(BigInt::from(pow2(w as u64)))
        } else {
            v / BigRational::from_integer(BigInt::from(pow2(w.unsigned_abs())))
        }
    };
    if frac.is_zero() {
        return Interval::exact(scale_whole(BigRational::one()));
    }
    let a = frac.numer().to_u64().expect("fraction numerator");
    let q = frac.denom().to_u32().expect("exponent denominator fits in u32");
    let p = POW2_PRECISION_BITS as u64;
    let radicand = pow2(a + p * q as u64);
    let root = num_integer::Roots::nth_root(&radicand, q);
    let denom = BigInt::from(pow2(p));
    let lower = BigRational::new(BigInt::from(root.clone()), denom.clone());
    let upper = BigRational::new(BigInt::from(root + 1u32), denom);
    Interval {
        lower: scale_whole(lower),
        upper: scale_whole(upper),
        precision_bits: Some(POW2_PRECISION_BITS),
    }
}

/// Formats with six significant digits, switching to scientific notation for
/// very large or very small magnitudes.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..16).contains(&exp) {
        return format!("{:.5e}", x);
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(32, 3), BigUint::from(4960u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(2046, 2), BigUint::from(2_092_035u32));
        assert_eq!(binomial_big(&BigUint::from(8u32), 3), BigUint::from(56u32));
    }

    #[test]
    fn dyadic_powers_are_exact() {
        let v = pow2_rational(&ratio(5, 1));
        assert!(v.is_exact());
        assert_eq!(v.lower, ratio(32, 1));
        let v = pow2_rational(&ratio(-3, 1));
        assert_eq!(v.lower, ratio(1, 8));
    }

    #[test]
    fn irrational_power_brackets_sqrt2() {
        let v = pow2_rational(&ratio(1, 2));
        assert!(!v.is_exact());
        let two = ratio(2, 1);
        assert!(&v.lower * &v.lower <= two);
        assert!(&v.upper * &v.upper > two);
        assert!((v.approx() - std::f64::consts::SQRT_2).abs() < 1e-15);
        let v = pow2_rational(&ratio(-7, 3));
        assert!((v.approx() - 2f64.powf(-7.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("1/6"), Some(ratio(1, 6)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("3"), Some(ratio(3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn sig6() {
        assert_eq!(format_sig6(128.0), "128");
        assert_eq!(format_sig6(2.0f64.sqrt() * 64.0), "90.5097");
        assert_eq!(format_sig6(0.527529), "0.527529");
        assert_eq!(format_sig6(1.0e20), "1.00000e20");
    }
}
