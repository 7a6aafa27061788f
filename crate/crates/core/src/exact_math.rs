//! Volume formulas for the additive and multiplicative simplices of the unit
//! cube, and exact lattice-point counts of bounded-sum slices of `{1..n}^k`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest dimension accepted by the floating-point simplex path.
pub const MAX_FLOAT_DIMENSION: u32 = 150;

/// A request for `Vol{x ∈ [0,1]^k : Σx_i ≤ a}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVolumeQuery {
    k: u32,
    a: Rational,
}

impl SimplexVolumeQuery {
    pub fn new(k: u32, a: Rational) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        if a.is_negative() || a > rational::from_int(k as i64) {
            return Err(Error::ThresholdOutOfRange {
                k,
                a: a.to_string(),
            });
        }
        Ok(Self { k, a })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
}

/// Exact volume `(1/k!) Σ_{i=0}^{⌊a⌋} (-1)^i C(k,i) (a-i)^k`.
pub fn simplex_volume(q: &SimplexVolumeQuery) -> Rational {
    let k = q.k as u64;
    let top = rational::floor_int(&q.a)
        .to_u64()
        .expect("threshold bounded by k");
    let mut acc = BigRational::zero();
    for i in 0..=top.min(k) {
        let base = &q.a - rational::from_int(i as i64);
        let term = num_traits::pow(base, k as usize)
            * BigRational::from_integer(BigInt::from(rational::binomial(k, i)));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / BigRational::from_integer(BigInt::from(rational::factorial(k)))
}

/// Convenience wrapper validating `(k, a)` first.
pub fn simplex_volume_at(k: u32, a: &Rational) -> Result<Rational> {
    Ok(simplex_volume(&SimplexVolumeQuery::new(k, a.clone())?))
}

/// Floating-point route for real thresholds, clamped to `[0, k]`.
///
/// Uses the alternating sum on the side `a ≤ k/2` (via `V(k,a) = 1 - V(k,k-a)`)
/// while its terms stay small; once they exceed [`CANCELLATION_LIMIT`] the
/// value is recomputed with the positive Irwin–Hall recurrence
/// `F_j(y) = (y F_{j-1}(y) + (j - y) F_{j-1}(y - 1)) / j`.
pub fn simplex_volume_f64(k: u32, a: f64) -> f64 {
    assert!(
        (1..=MAX_FLOAT_DIMENSION).contains(&k),
        "float simplex path supports 1 <= k <= {MAX_FLOAT_DIMENSION}"
    );
    let kf = k as f64;
    if a.is_nan() {
        return f64::NAN;
    }
    if a <= 0.0 {
        return 0.0;
    }
    if a >= kf {
        return 1.0;
    }
    if a > kf / 2.0 {
        return 1.0 - simplex_volume_f64(k, kf - a);
    }
    let fact = factorials_f64(k as usize);
    let mut sum = CompensatedSum::default();
    let mut largest = 0.0f64;
    let top = a.floor() as usize;
    for i in 0..=top.min(k as usize) {
        let term = (a - i as f64).powi(k as i32) / (fact[i] * fact[k as usize - i]);
        largest = largest.max(term);
        sum.add(if i % 2 == 0 { term } else { -term });
    }
    if largest > CANCELLATION_LIMIT {
        return irwin_hall_cdf(k as usize, a);
    }
    sum.value().clamp(0.0, 1.0)
}

/// Largest alternating-sum term accepted before switching to the recurrence.
const CANCELLATION_LIMIT: f64 = 1e3;

/// `F_k(x)`, built from `F_1(x - m) = clamp(x - m, 0, 1)` in `O(k^2)`.
fn irwin_hall_cdf(k: usize, x: f64) -> f64 {
    let mut vals: Vec<f64> = (0..k).map(|m| (x - m as f64).clamp(0.0, 1.0)).collect();
    for j in 2..=k {
        let jf = j as f64;
        for m in 0..=(k - j) {
            let y = x - m as f64;
            vals[m] = (y * vals[m] + (jf - y) * vals[m + 1]) / jf;
        }
    }
    vals[0].clamp(0.0, 1.0)
}

fn factorials_f64(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1.0f64;
    out.push(acc);
    for i in 1..=n {
        acc *= i as f64;
        out.push(acc);
    }
    out
}

/// `#{x ∈ {1..n}^k : Σx_i = m}` by inclusion–exclusion over the upper bounds:
/// `Σ_j (-1)^j C(k,j) C(m - jn - 1, k - 1)`.
pub fn bounded_composition_count(k: u32, n: u32, m: i64) -> BigUint {
    assert!(k > 0 && n > 0, "k and n must be positive");
    let (k64, n64) = (k as i64, n as i64);
    if m < k64 || m > k64 * n64 {
        return BigUint::zero();
    }
    let mut pos = BigUint::zero();
    let mut neg = BigUint::zero();
    for j in 0..=k as u64 {
        let upper = BigInt::from(m) - BigInt::from(j as i64 * n64) - 1;
        if upper < BigInt::from(k64 - 1) {
            break;
        }
        let term = rational::binomial(k as u64, j) * rational::binomial_int(&upper, k as u64 - 1);
        if j % 2 == 0 {
            pos += term;
        } else {
            neg += term;
        }
    }
    pos - neg
}

/// `Vol{x ∈ [0,1]^k : Πx_i > c} = 1 - c Σ_{i<k} ln(1/c)^i / i!`.
pub fn log_wedge_complement(k: u32, c: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::ConstantOutOfRange(c));
    }
    let l = (1.0 / c).ln();
    let partial = exp_partial_sum(l, 0, k as usize);
    Ok((1.0 - c * partial).clamp(0.0, 1.0 - c))
}

/// `Σ_{i=from}^{to-1} x^i / i!`, terms generated in ascending `i`.
pub fn exp_partial_sum(x: f64, from: usize, to: usize) -> f64 {
    let mut term = 1.0f64;
    for i in 1..=from {
        term *= x / i as f64;
    }
    let mut sum = CompensatedSum::default();
    for i in from..to {
        sum.add(term);
        term *= x / (i + 1) as f64;
    }
    sum.value()
}

/// `Σ_{i≥from} x^i / i!` for `x ≥ 0`, summed term by term until the terms are
/// decreasing and fall below `rel_floor` times the running sum.
pub fn exp_tail_sum(x: f64, from: usize, rel_floor: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let mut term = 1.0f64;
    for i in 1..=from {
        term *= x / i as f64;
    }
    let mut sum = CompensatedSum::default();
    let mut i = from;
    loop {
        sum.add(term);
        i += 1;
        let next = term * x / i as f64;
        if next == 0.0 || ((i as f64) > x && next <= rel_floor * sum.value()) {
            break;
        }
        term = next;
    }
    sum.value()
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `Σ_{m=k}^{kn}` of the composition counts; always `n^k`.
pub fn total_compositions(k: u32, n: u32) -> BigUint {
    (k as i64..=(k as i64 * n as i64))
        .map(|m| bounded_composition_count(k, n, m))
        .fold(BigUint::zero(), |acc, c| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_int, ratio, to_f64};

    fn vol(k: u32, a: Rational) -> Rational {
        simplex_volume_at(k, &a).unwrap()
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(vol(1, ratio(1, 2)), ratio(1, 2));
        assert_eq!(vol(2, from_int(1)), ratio(1, 2));
        assert_eq!(vol(3, from_int(3)), from_int(1));
        assert_eq!(vol(2, ratio(2, 3)), ratio(2, 9));
        assert_eq!(vol(4, from_int(0)), from_int(0));
    }

    #[test]
    fn simplex_rejects_out_of_range() {
        assert!(matches!(
            SimplexVolumeQuery::new(2, ratio(5, 2)),
            Err(Error::ThresholdOutOfRange { .. })
        ));
        assert!(SimplexVolumeQuery::new(2, ratio(-1, 2)).is_err());
        assert_eq!(
            SimplexVolumeQuery::new(0, from_int(0)),
            Err(Error::ZeroDimension)
        );
    }

    #[test]
    fn float_path_tracks_exact_path() {
        for k in [1u32, 2, 5, 17, 40, 60] {
            for step in 0..=40 {
                let a = ratio(step as i64 * k as i64, 40);
                let exact = to_f64(&vol(k, a.clone()));
                let float = simplex_volume_f64(k, to_f64(&a));
                assert!(
                    (exact - float).abs() < 1e-12,
                    "k={k} a={a}: {exact} vs {float}"
                );
            }
        }
    }

    #[test]
    fn recurrence_matches_exact_everywhere() {
        for k in [1usize, 2, 3, 9, 60] {
            for step in 0..=30 {
                let a = ratio(step as i64 * k as i64, 30);
                let exact = to_f64(&vol(k as u32, a.clone()));
                assert!((irwin_hall_cdf(k, to_f64(&a)) - exact).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn composition_examples() {
        assert_eq!(bounded_composition_count(2, 3, 4), BigUint::from(3u32));
        assert_eq!(bounded_composition_count(1, 5, 3), BigUint::from(1u32));
        assert_eq!(bounded_composition_count(2, 2, 5), BigUint::zero());
        assert_eq!(bounded_composition_count(3, 4, 2), BigUint::zero());
        assert_eq!(total_compositions(3, 7), BigUint::from(343u32));
    }

    #[test]
    fn wedge_examples() {
        assert!((log_wedge_complement(1, 0.25).unwrap() - 0.75).abs() < 1e-15);
        for k in 1..10 {
            assert_eq!(log_wedge_complement(k, 1.0).unwrap(), 0.0);
        }
        assert!(log_wedge_complement(2, 0.0).is_err());
        assert!(log_wedge_complement(2, 1.5).is_err());
        assert!(log_wedge_complement(0, 0.5).is_err());
    }

    #[test]
    fn tail_sum_matches_exp_minus_partial_for_moderate_x() {
        for &x in &[0.5, 2.0, 7.5] {
            for from in [0usize, 1, 3, 8] {
                let tail = exp_tail_sum(x, from, 1e-18);
                let direct = x.exp() - exp_partial_sum(x, 0, from);
                assert!((tail - direct).abs() < 1e-12 * x.exp(), "x={x} from={from}");
            }
        }
        // deep in the tail the subtraction would cancel completely
        let x: f64 = 1e-3;
        let tiny = exp_tail_sum(x, 4, 1e-18);
        let expected: f64 = (4..12)
            .map(|i| x.powi(i) / (1..=i).product::<i32>() as f64)
            .sum();
        assert!((tiny - expected).abs() < 1e-15 * expected);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-16).abs() < 1e-30);
    }
}
