//! Upper bounds: the single-wedge fixed point, the iterated wedge map for the
//! continuous cube, and the explicit three-fold bound.
//!
//! The root searches are parametrized by `L = ln(1/β)`, `β = 2 - 2α`, rather
//! than by `α` itself. For moderate `k` this is the same bisection, but for
//! large `k` the roots sit so close to `α = 1` that only `β` (or `L`) remains
//! representable.

use super::root::bisect;
use super::{
    BoundParams, BoundResult, Constant, EquationVariant, Method, Setting, Side, SolverConfig,
    UpperBoundEquation,
};
use crate::error::{Error, Result};
use crate::exact_math::{exp_partial_sum, exp_tail_sum, log_wedge_complement};

/// `L` beyond which `e^{-L}` is subnormal.
const MAX_LOG: f64 = 700.0;
/// Scan step in `L`; equals a step of `1e-3` in `α` at `α = 1/2`.
const PSI_SCAN_STEP: f64 = 2e-3;

fn alpha_of_log(l: f64) -> (f64, f64) {
    let beta = (-l).exp();
    (1.0 - beta / 2.0, beta)
}

/// `α - (2-2α)(1 + Σ_{i=0}^{k} L^i/i!)` as a function of `L`.
fn statement_gap(k: u32, l: f64) -> f64 {
    let (alpha, beta) = alpha_of_log(l);
    alpha - beta * (1.0 + exp_partial_sum(l, 0, k as usize + 1))
}

/// `(1 - β/2) - β Σ_{i=0}^{k-1} L^i/i!` as a function of `L`.
fn proof_gap(k: u32, l: f64) -> f64 {
    let (alpha, beta) = alpha_of_log(l);
    alpha - beta * exp_partial_sum(l, 0, k as usize)
}

/// `|LHS - RHS|` of the chosen equation at `α`.
pub fn upper_equation_residual(k: u32, variant: EquationVariant, alpha: f64) -> f64 {
    let l = (1.0 / (2.0 - 2.0 * alpha)).ln();
    match variant {
        EquationVariant::TheoremStatement => statement_gap(k, l).abs(),
        EquationVariant::ProofForm => proof_gap(k, l).abs(),
    }
}

/// Root `α*` of the single-wedge equation; bounds `c_k` (and `c~_k`) from above.
pub fn alpha_star(eq: &UpperBoundEquation, cfg: &SolverConfig) -> Result<BoundResult> {
    cfg.validate()?;
    let k = eq.k;
    let gap = |l: f64| match eq.variant {
        EquationVariant::TheoremStatement => statement_gap(k, l),
        EquationVariant::ProofForm => proof_gap(k, l),
    };
    // gap(0) < 0 for both variants; grow the bracket until the sign flips
    let mut hi = 1.0;
    while gap(hi) <= 0.0 {
        hi *= 2.0;
        if hi > MAX_LOG {
            return Err(Error::NoSignChange {
                what: "fixed-point equation",
                lo: 0.5,
                hi: 1.0,
            });
        }
    }
    let root = bisect(
        "fixed-point equation",
        gap,
        0.0,
        hi,
        cfg.bisection_tolerance,
        cfg.max_bisection_iters,
    )?;
    let (alpha, beta) = alpha_of_log(root.x);
    Ok(BoundResult {
        constant: Constant {
            setting: Setting::Discrete,
            l: 2,
        },
        side: Side::Upper,
        k,
        value: alpha,
        exact_value: None,
        method: Method::FixedPoint,
        params: BoundParams::FixedPoint {
            variant: eq.variant,
            beta,
            residual: gap(root.x).abs(),
            iterations: root.iterations,
        },
    })
}

/// Fraction of the cube removed by the wedge `{Πx_i > β}`.
pub fn wedge_volume(k: u32, beta: f64) -> Result<f64> {
    log_wedge_complement(k, beta)
}

/// `φ_k(α) = α/(2-2α) - Σ_{i=1}^{k-1} ln(1/(2-2α))^i / i!`, the least density
/// a set of volume `α` keeps inside the corner cube `[0, (2-2α)^{1/k}]^k`.
pub fn phi_map(k: u32, alpha: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(0.5..1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let beta = 2.0 - 2.0 * alpha;
    let l = (1.0 / beta).ln();
    Ok(alpha / beta - exp_partial_sum(l, 1, k as usize))
}

/// `ψ_k(α) = φ_k(α) - α = 1/2 - α + Σ_{i≥k} L^i/i!`, tail summed directly.
pub fn psi(k: u32, alpha: f64, cfg: &SolverConfig) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if !(0.5..1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let l = (1.0 / (2.0 - 2.0 * alpha)).ln();
    Ok(0.5 - alpha + exp_tail_sum(l, k as usize, cfg.series_term_floor))
}

fn psi_of_log(k: u32, l: f64, floor: f64) -> f64 {
    let (_, beta) = alpha_of_log(l);
    // 1/2 - α with α = 1 - β/2
    beta / 2.0 - 0.5 + exp_tail_sum(l, k as usize, floor)
}

/// Root `α**` of `ψ_k` in `(1/2, 1)`; bounds `c~_k` from above.
///
/// `ψ_k(1/2) = 0` and `ψ_k` first dips below zero, so the bracket is found by
/// scanning upward until `ψ_k > 0` and then bisected.
pub fn alpha_double_star(k: u32, cfg: &SolverConfig) -> Result<BoundResult> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let floor = cfg.series_term_floor;
    let f = |l: f64| psi_of_log(k, l, floor);

    let start = -(1.0 - 2.0 * cfg.bisection_tolerance).ln();
    let mut prev = 0.0;
    let mut cur = start;
    let mut scan_steps = 0u32;
    while f(cur) <= 0.0 {
        prev = cur;
        cur += PSI_SCAN_STEP;
        scan_steps += 1;
        if cur > MAX_LOG {
            return Err(Error::NoSignChange {
                what: "psi",
                lo: 0.5,
                hi: 1.0,
            });
        }
    }
    let root = bisect(
        "psi",
        f,
        prev,
        cur,
        cfg.bisection_tolerance,
        cfg.max_bisection_iters,
    )?;
    let (alpha, beta) = alpha_of_log(root.x);
    Ok(BoundResult {
        constant: Constant {
            setting: Setting::Continuous,
            l: 2,
        },
        side: Side::Upper,
        k,
        value: alpha,
        exact_value: None,
        method: Method::IteratedMap,
        params: BoundParams::IteratedMap {
            beta,
            residual: f(root.x).abs(),
            iterations: root.iterations,
            scan_steps,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiStop {
    /// Reached a value `≥ 1`: no set of the starting volume exists.
    Exceeded,
    /// The map stopped increasing.
    Stalled,
    IterationCap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiTrajectory {
    /// Starting value followed by each iterate.
    pub values: Vec<f64>,
    pub stop: PhiStop,
}

/// Iterates `φ_k` from `alpha0` until it leaves `[1/2, 1)`, stops growing, or
/// hits `cfg.phi_iteration_cap`.
pub fn iterate_phi(k: u32, alpha0: f64, cfg: &SolverConfig) -> Result<PhiTrajectory> {
    let mut values = vec![alpha0];
    let mut cur = alpha0;
    phi_map(k, cur)?;
    for _ in 0..cfg.phi_iteration_cap {
        let next = phi_map(k, cur)?;
        values.push(next);
        // φ_k is undefined at 1, so reaching it counts as escaping
        if next >= 1.0 {
            return Ok(PhiTrajectory {
                values,
                stop: PhiStop::Exceeded,
            });
        }
        if next <= cur {
            return Ok(PhiTrajectory {
                values,
                stop: PhiStop::Stalled,
            });
        }
        cur = next;
    }
    Ok(PhiTrajectory {
        values,
        stop: PhiStop::IterationCap,
    })
}

/// `1 - (1 + 2^{1/k})^{-k}`, an upper bound on `c_{k,3}` and `c~_{k,3}`.
pub fn threefold_upper_bound(k: u32) -> Result<BoundResult> {
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    let root2 = 2f64.powf(1.0 / k as f64);
    let value = 1.0 - (1.0 + root2).powi(-(k as i32));
    Ok(BoundResult {
        constant: Constant {
            setting: Setting::Continuous,
            l: 3,
        },
        side: Side::Upper,
        k,
        value,
        exact_value: None,
        method: Method::ExplicitThreefold,
        params: BoundParams::ExplicitThreefold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn star(k: u32, variant: EquationVariant) -> BoundResult {
        alpha_star(&UpperBoundEquation::new(k, variant).unwrap(), &cfg()).unwrap()
    }

    #[test]
    fn alpha_star_table_values() {
        assert!((star(2, EquationVariant::TheoremStatement).value - 0.913875).abs() < 5e-7);
        assert!((star(6, EquationVariant::TheoremStatement).value - 0.982208).abs() < 5e-7);
    }

    #[test]
    fn alpha_star_large_k_stays_finite() {
        let b = star(60, EquationVariant::TheoremStatement);
        assert!(b.value <= 1.0 && b.value > 0.999);
        match b.params {
            BoundParams::FixedPoint { beta, residual, .. } => {
                assert!(beta > 0.0 && beta < 1e-3);
                assert!(residual < 1e-9);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn wedge_examples() {
        let expected = 1.0 - 0.5 * (1.0 + 2f64.ln());
        assert!((wedge_volume(2, 0.5).unwrap() - expected).abs() < 1e-15);
        assert_eq!(wedge_volume(4, 1.0).unwrap(), 0.0);
        assert!((wedge_volume(1, 0.3).unwrap() - 0.7).abs() < 1e-15);
        assert!(wedge_volume(2, 0.0).is_err());
    }

    #[test]
    fn phi_examples() {
        for k in 1..8 {
            assert_eq!(phi_map(k, 0.5).unwrap(), 0.5);
        }
        assert!((phi_map(2, 0.75).unwrap() - (1.5 - 2f64.ln())).abs() < 1e-15);
        assert!(phi_map(2, 1.0).is_err());
        assert!(phi_map(2, 0.4).is_err());
    }

    #[test]
    fn double_star_table_values() {
        for (k, v) in [(2, 0.727309), (4, 0.899940), (6, 0.957139)] {
            let b = alpha_double_star(k, &cfg()).unwrap();
            assert!((b.value - v).abs() < 5e-7, "k={k}: {}", b.value);
        }
    }

    #[test]
    fn double_star_k1_degenerates_to_half() {
        let b = alpha_double_star(1, &cfg()).unwrap();
        assert!((b.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn double_star_reaches_large_k() {
        let b = alpha_double_star(60, &cfg()).unwrap();
        assert!(b.value > 0.999 && b.value < 1.0);
    }

    #[test]
    fn phi_iteration_fixed_point() {
        let t = iterate_phi(2, 0.5, &cfg()).unwrap();
        assert_eq!(t.values, vec![0.5, 0.5]);
        assert_eq!(t.stop, PhiStop::Stalled);
    }

    #[test]
    fn threefold_examples() {
        assert!((threefold_upper_bound(2).unwrap().value - 0.828427).abs() < 5e-7);
        assert!((threefold_upper_bound(6).unwrap().value - 0.989061).abs() < 5e-7);
        assert!((threefold_upper_bound(1).unwrap().value - 2.0 / 3.0).abs() < 1e-15);
    }
}
