//! Exact rational helpers built on [`num_rational::BigRational`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `numer / denom` in lowest terms. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Exact value of a finite `f64` (every finite double is a dyadic rational).
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

/// Nearest `f64`; `num-rational` rounds the exact quotient once.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `⌊r⌋` as a big integer, exact at integer thresholds.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// `⌈r⌉` as a big integer.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// `C(n, k)` by the multiplicative recurrence `C(n, i+1) = C(n, i)(n-i)/(i+1)`.
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

/// `C(n, k)` for a possibly negative upper argument; zero outside `0 ≤ k ≤ n`.
pub(crate) fn binomial_int(n: &BigInt, k: u64) -> BigUint {
    if n.is_negative() {
        return BigUint::zero();
    }
    match n.to_u64() {
        Some(n) => binomial(n, k),
        None => {
            // n beyond u64 only arises for absurd box sizes; fall back to the
            // same recurrence on big integers.
            let n = n.magnitude().clone();
            let mut acc = BigUint::one();
            for i in 0..k {
                acc *= &n - BigUint::from(i);
                acc /= BigUint::from(i + 1);
            }
            acc
        }
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Round `r` to `decimals` places, ties to even, and render it.
pub fn to_fixed_half_even(r: &Rational, decimals: usize) -> String {
    let scale = BigInt::from(10u32).pow(decimals as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = &scaled - BigRational::from_integer(floor.clone());
    let half = ratio(1, 2);
    let rounded = if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };
    let negative = rounded.is_negative();
    let (int_part, frac_part) = rounded.abs().div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if decimals > 0 {
        out.push('.');
        out.push_str(&format!(
            "{:0>width$}",
            frac_part.to_string(),
            width = decimals
        ));
    }
    out
}
