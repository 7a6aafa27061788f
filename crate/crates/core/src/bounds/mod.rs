//! Lower and upper bounds on the maximal density of (l-fold-)sumfree subsets
//! of `{1..n}^k` (as `n → ∞`) and of `[0,1]^k`.

mod lower;
mod root;
mod table;
mod upper;

use std::fmt;

pub use lower::{
    corollary_sequence, lower_bound, stripe_volume, stripe_volume_f64, sweep_optimal_a,
    SweepResult, MAX_SEQUENCE_TERMS,
};
pub use root::{bisect, Root};
pub use table::{bounds_table, BoundsRow, TableRequest};
pub use upper::{
    alpha_double_star, alpha_star, iterate_phi, phi_map, psi, threefold_upper_bound,
    upper_equation_residual, wedge_volume, PhiStop, PhiTrajectory,
};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Lattice box `{1..n}^k` with `n → ∞`, or the continuous cube `[0,1]^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    Discrete,
    Continuous,
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Setting::Discrete => "discrete",
            Setting::Continuous => "continuous",
        })
    }
}

/// Which density constant a bound refers to: `c_k`, `c~_k`, `c_{k,l}` or
/// `c~_{k,l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Constant {
    pub setting: Setting,
    pub l: u32,
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.setting {
            Setting::Discrete => "c",
            Setting::Continuous => "c~",
        };
        if self.l == 2 {
            write!(f, "{c}_k")
        } else {
            write!(f, "{c}_{{k,{}}}", self.l)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Lower,
    Upper,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Stripe,
    FixedPoint,
    IteratedMap,
    ExplicitThreefold,
    Sweep,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Stripe => "stripe",
            Method::FixedPoint => "fixed_point",
            Method::IteratedMap => "iterated_map",
            Method::ExplicitThreefold => "explicit_threefold",
            Method::Sweep => "sweep",
        })
    }
}

/// Two forms of the single-wedge upper-bound equation.
///
/// `TheoremStatement`: `α = (2-2α)(1 + Σ_{i=0}^{k} L^i/i!)` with
/// `L = ln(1/(2-2α))`. `ProofForm`: `1 - β/2 = β Σ_{i=0}^{k-1} ln(1/β)^i/i!`,
/// reported as `α = 1 - β/2`. They have different roots; the first one is the
/// default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EquationVariant {
    #[default]
    TheoremStatement,
    ProofForm,
}

impl fmt::Display for EquationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationVariant::TheoremStatement => "statement",
            EquationVariant::ProofForm => "proof",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperBoundEquation {
    pub k: u32,
    pub variant: EquationVariant,
}

impl UpperBoundEquation {
    pub fn new(k: u32, variant: EquationVariant) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { k, variant })
    }
}

/// Method-specific details attached to a [`BoundResult`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundParams {
    Stripe {
        a: Rational,
    },
    FixedPoint {
        variant: EquationVariant,
        /// `β = 2 - 2α` at the root, kept separately since `α` rounds to 1
        /// long before `β` underflows.
        beta: f64,
        residual: f64,
        iterations: u32,
    },
    IteratedMap {
        beta: f64,
        residual: f64,
        iterations: u32,
        scan_steps: u32,
    },
    ExplicitThreefold,
    Sweep {
        a_opt: f64,
        reference_a: Rational,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub constant: Constant,
    pub side: Side,
    pub k: u32,
    pub value: f64,
    pub exact_value: Option<Rational>,
    pub method: Method,
    pub params: BoundParams,
}

impl BoundResult {
    pub fn l(&self) -> u32 {
        self.constant.l
    }

    /// Same bound relabelled for the other setting; stripe and explicit
    /// three-fold bounds hold in both.
    pub fn for_setting(mut self, setting: Setting) -> Self {
        self.constant.setting = setting;
        self
    }
}

/// Tolerances and resolutions for root finding and sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub bisection_tolerance: f64,
    pub max_bisection_iters: u32,
    pub sweep_grid_step: f64,
    pub sweep_refinement_iters: u32,
    pub phi_iteration_cap: u32,
    pub series_term_floor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            bisection_tolerance: 1e-12,
            max_bisection_iters: 200,
            sweep_grid_step: 1e-4,
            sweep_refinement_iters: 60,
            phi_iteration_cap: 10_000,
            series_term_floor: 1e-18,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.bisection_tolerance > 0.0
            && self.max_bisection_iters > 0
            && self.sweep_grid_step > 0.0
            && self.sweep_refinement_iters > 0
            && self.phi_iteration_cap > 0
            && self.series_term_floor > 0.0;
        if !positive {
            return Err(Error::InvalidConfig("all settings must be positive"));
        }
        if self.bisection_tolerance >= 1e-6 {
            return Err(Error::InvalidConfig(
                "bisection tolerance must be below 1e-6",
            ));
        }
        Ok(())
    }
}
