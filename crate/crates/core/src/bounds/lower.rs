//! Stripe lower bounds, the optimal-offset sweep, and the sequence used to
//! show the stripe bound tends to 1.

use num_traits::Signed;

use super::{BoundParams, BoundResult, Constant, Method, Setting, Side, SolverConfig};
use crate::error::{Error, Result};
use crate::exact_math::{simplex_volume_at, simplex_volume_f64, MAX_FLOAT_DIMENSION};
use crate::par::Exec;
use crate::rational::{self, Rational};

pub const MAX_SEQUENCE_TERMS: usize = 100;

fn check_fold(l: u32) -> Result<()> {
    if l < 2 {
        Err(Error::FoldTooSmall(l))
    } else {
        Ok(())
    }
}

/// Exact `Vol{x ∈ [0,1]^k : a ≤ Σx_i < l·a} = 1 - V(k,a) - V(k, k - min(la, k))`.
pub fn stripe_volume(k: u32, a: &Rational, l: u32) -> Result<Rational> {
    check_fold(l)?;
    let kr = rational::from_int(k as i64);
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if a.is_negative() || *a > kr {
        return Err(Error::ThresholdOutOfRange {
            k,
            a: a.to_string(),
        });
    }
    let upper = (a * rational::from_int(l as i64)).min(kr.clone());
    let below = simplex_volume_at(k, a)?;
    let above = simplex_volume_at(k, &(kr - upper))?;
    Ok(rational::from_int(1) - below - above)
}

/// Float counterpart of [`stripe_volume`] for real offsets.
pub fn stripe_volume_f64(k: u32, a: f64, l: u32) -> f64 {
    let kf = k as f64;
    let upper = (a * l as f64).min(kf);
    1.0 - simplex_volume_f64(k, a) - simplex_volume_f64(k, kf - upper)
}

/// Stripe bound at `a = k/(l+1)`: `1 - 2 V(k, k/(l+1))`, valid for both
/// `c_{k,l}` and `c~_{k,l}`.
pub fn lower_bound(k: u32, l: u32) -> Result<BoundResult> {
    check_fold(l)?;
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let a = rational::ratio(k as i64, l as i64 + 1);
    let exact = stripe_volume(k, &a, l)?;
    Ok(BoundResult {
        constant: Constant {
            setting: Setting::Discrete,
            l,
        },
        side: Side::Lower,
        k,
        value: rational::to_f64(&exact),
        exact_value: Some(exact),
        method: Method::Stripe,
        params: BoundParams::Stripe { a },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub k: u32,
    pub l: u32,
    pub a_opt: f64,
    /// Stripe volume at `a_opt`, evaluated exactly at the binary value of
    /// `a_opt` and rounded once.
    pub volume: f64,
    pub reference_a: Rational,
    pub reference_volume: Rational,
    pub grid_points: usize,
}

impl SweepResult {
    /// `a_opt - k/(l+1)`.
    pub fn offset(&self) -> f64 {
        self.a_opt - rational::to_f64(&self.reference_a)
    }

    pub fn into_bound(self) -> BoundResult {
        BoundResult {
            constant: Constant {
                setting: Setting::Discrete,
                l: self.l,
            },
            side: Side::Lower,
            k: self.k,
            value: self.volume,
            exact_value: None,
            method: Method::Sweep,
            params: BoundParams::Sweep {
                a_opt: self.a_opt,
                reference_a: self.reference_a,
            },
        }
    }
}

/// Maximizes the stripe volume over `a ∈ (0, k/l]`: grid scan, then
/// golden-section refinement on the best cell and its neighbours.
pub fn sweep_optimal_a(k: u32, l: u32, cfg: &SolverConfig, exec: Exec) -> Result<SweepResult> {
    check_fold(l)?;
    cfg.validate()?;
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if k > MAX_FLOAT_DIMENSION {
        return Err(Error::InvalidConfig(
            "sweep dimension above the float path limit",
        ));
    }
    let top = k as f64 / l as f64;
    let step = cfg.sweep_grid_step;
    let count = (top / step).floor() as usize;
    let mut grid: Vec<f64> = (1..=count)
        .map(|j| j as f64 * step)
        .filter(|&a| a < top)
        .collect();
    grid.push(top);

    let values = exec.map_range(grid.len(), |j| stripe_volume_f64(k, grid[j], l));
    let mut best = 0;
    for (j, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = j;
        }
    }

    let lo = if best == 0 { 0.0 } else { grid[best - 1] };
    let hi = grid.get(best + 1).copied().unwrap_or(top);
    let g = |a: f64| stripe_volume_f64(k, a, l);
    let refined = golden_section_max(&g, lo, hi, cfg.sweep_refinement_iters);

    let mut a_opt = grid[best];
    let mut v_opt = values[best];
    for cand in [refined, lo, hi] {
        if cand > 0.0 && cand <= top {
            let v = g(cand);
            if v > v_opt {
                a_opt = cand;
                v_opt = v;
            }
        }
    }

    let exact_a = rational::from_f64_exact(a_opt).expect("finite offset");
    let volume = rational::to_f64(&stripe_volume(k, &exact_a, l)?);
    let reference_a = rational::ratio(k as i64, l as i64 + 1);
    let reference_volume = stripe_volume(k, &reference_a, l)?;
    Ok(SweepResult {
        k,
        l,
        a_opt,
        volume,
        reference_a,
        reference_volume,
        grid_points: grid.len(),
    })
}

fn golden_section_max<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, iters: u32) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

/// `a_0 = 1/3`, `a_{i+1} = 1/3 - a_i^{a_i} (1-a_i)^{1-a_i} / e`.
///
/// The first nonpositive term is kept and ends the list, since `x^x` is not
/// defined past it.
pub fn corollary_sequence(terms: usize) -> Result<Vec<f64>> {
    if terms == 0 || terms > MAX_SEQUENCE_TERMS {
        return Err(Error::InvalidConfig("sequence length must be in 1..=100"));
    }
    let third: f64 = 1.0 / 3.0;
    let mut out = Vec::with_capacity(terms);
    let mut a = third;
    out.push(a);
    while out.len() < terms && a > 0.0 {
        a = third - a.powf(a) * (1.0 - a).powf(1.0 - a) / std::f64::consts::E;
        out.push(a);
    }
    Ok(out)
}
