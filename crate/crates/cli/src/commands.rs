//! Subcommand implementations. Each builds a complete [`Report`] before
//! anything is printed, so a failure never leaves a partial table behind.

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use serde_json::json;
use sumfree_core::bounds::{
    bounds_table, corollary_sequence, stripe_volume, sweep_optimal_a, BoundResult, EquationVariant,
    Setting, SolverConfig, TableRequest,
};
use sumfree_core::constructions::{stripe_count, StripeSpec};
use sumfree_core::rational::{self, Rational};
use sumfree_core::search::{max_sumfree_exact, SearchInstance, DEFAULT_POINT_CAP};
use sumfree_core::Exec;

use crate::report::{Cell, OutputFormat, Report};
use crate::{Cli, Command};

pub struct Output {
    pub text: String,
    pub diagnostics: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Output> {
    let fmt = OutputFormat::new(cli.global.format, cli.global.decimals)?;
    let cfg = SolverConfig {
        bisection_tolerance: cli.global.tolerance,
        ..SolverConfig::default()
    };
    cfg.validate().context("invalid --tolerance")?;
    let exec = Exec::default();
    let d = fmt.decimals;
    let mut diagnostics = Vec::new();

    let mut report = match &cli.command {
        Command::Bounds {
            k_min,
            k_max,
            l,
            setting,
            equation_variant,
        } => {
            let req = TableRequest {
                k_min: *k_min,
                k_max: *k_max,
                l: *l,
                setting: Setting::from(*setting),
                variant: EquationVariant::from(*equation_variant),
            };
            if !req.has_upper() {
                diagnostics.push(format!(
                    "no upper-bound method is known for l = {l}; emitting lower bounds only"
                ));
            }
            bounds(&req, &cfg, exec, d)?
        }
        Command::Sweep { k, l } => sweep(*k, *l, &cfg, exec, d)?,
        Command::Sequence { terms } => sequence(*terms, d)?,
        Command::Exact {
            n,
            k,
            l,
            node_budget,
        } => exact(*n, *k, *l, *node_budget, exec, d)?,
        Command::StripeCount {
            n,
            k,
            a_numer,
            a_denom,
            l,
        } => stripe(*n, *k, *a_numer, *a_denom, *l, d)?,
    };
    report.config = vec![
        ("decimals", json!(d)),
        ("tolerance", json!(cfg.bisection_tolerance)),
        ("parallel", json!(exec.is_parallel())),
    ];
    Ok(Output {
        text: report.render(fmt)?,
        diagnostics,
    })
}

fn bound_cell(b: &BoundResult, d: usize) -> Cell {
    match &b.exact_value {
        Some(r) => Cell::exact(r, d),
        None => Cell::float(b.value, d),
    }
}

fn bounds(req: &TableRequest, cfg: &SolverConfig, exec: Exec, d: usize) -> Result<Report> {
    let rows = bounds_table(req, cfg, exec)?;
    let mut report = Report::new(
        "bounds",
        vec![
            "k",
            "constant",
            "lower",
            "upper",
            "lower_method",
            "upper_method",
        ],
    );
    report.params = vec![
        ("k_min", json!(req.k_min)),
        ("k_max", json!(req.k_max)),
        ("l", json!(req.l)),
        ("setting", json!(req.setting.to_string())),
        ("equation_variant", json!(req.variant.to_string())),
    ];
    for row in &rows {
        let (upper, upper_method) = match &row.upper {
            Some(u) => (bound_cell(u, d), Cell::text(u.method.to_string())),
            None => (Cell::Empty, Cell::Empty),
        };
        report.push(vec![
            Cell::int(row.k),
            Cell::text(row.lower.constant.to_string()),
            bound_cell(&row.lower, d),
            upper,
            Cell::text(row.lower.method.to_string()),
            upper_method,
        ]);
    }
    report
        .notes
        .push(("equation_variant", json!(req.variant.to_string())));
    if req.l == 2 && req.setting == Setting::Discrete {
        report
            .notes
            .push(("equation_variants_disagree", json!(true)));
        report.notes.push((
            "equation_note",
            json!(
                "the fixed-point equation for the discrete l=2 upper bound has a stated form \
                 and a form used in its derivation; their roots differ (k=2: 0.913875 vs 0.787927)"
            ),
        ));
    }
    if !req.has_upper() {
        report.notes.push((
            "upper_bound",
            json!(format!("no upper-bound method is known for l = {}", req.l)),
        ));
    }
    Ok(report)
}

fn sweep(k: u32, l: u32, cfg: &SolverConfig, exec: Exec, d: usize) -> Result<Report> {
    let s = sweep_optimal_a(k, l, cfg, exec)?;
    let mut report = Report::new(
        "sweep",
        vec![
            "k",
            "l",
            "a_opt",
            "offset",
            "volume",
            "reference_a",
            "reference_volume",
        ],
    );
    report.params = vec![("k", json!(k)), ("l", json!(l))];
    report.push(vec![
        Cell::int(k),
        Cell::int(l),
        Cell::float(s.a_opt, d),
        Cell::float(s.offset(), d),
        Cell::float(s.volume, d),
        Cell::exact(&s.reference_a, d),
        Cell::exact(&s.reference_volume, d),
    ]);
    report.notes.push(("grid_points", json!(s.grid_points)));
    Ok(report)
}

fn sequence(terms: usize, d: usize) -> Result<Report> {
    let values = corollary_sequence(terms)?;
    let mut report = Report::new("sequence", vec!["index", "value", "positive"]);
    report.params = vec![("terms", json!(terms))];
    for (i, v) in values.iter().enumerate() {
        report.push(vec![
            Cell::int(i as u64),
            Cell::float(*v, d),
            Cell::Bool(*v > 0.0),
        ]);
    }
    let first = values.iter().position(|v| *v <= 0.0);
    report.notes.push(("first_nonpositive_index", json!(first)));
    Ok(report)
}

fn exact(n: u32, k: u32, l: u32, budget: u64, exec: Exec, d: usize) -> Result<Report> {
    let inst = SearchInstance::with_cap(n, k, l, budget, DEFAULT_POINT_CAP)?;
    let r = max_sumfree_exact(&inst, exec)?;
    let witness: Vec<String> = r.witness.sorted().iter().map(|p| p.to_string()).collect();
    let mut report = Report::new(
        "exact",
        vec![
            "n",
            "k",
            "l",
            "max_size",
            "density",
            "witness",
            "nodes",
            "exhaustive",
        ],
    );
    report.params = vec![
        ("n", json!(n)),
        ("k", json!(k)),
        ("l", json!(l)),
        ("node_budget", json!(budget)),
    ];
    let total = BigUint::from(n).pow(k);
    let density = rational::Rational::new((r.max_size as u64).into(), total.into());
    report.push(vec![
        Cell::int(n),
        Cell::int(k),
        Cell::int(l),
        Cell::int(r.max_size as u64),
        Cell::exact(&density, d),
        Cell::text(format!("{{{}}}", witness.join(","))),
        Cell::int(r.nodes_explored),
        Cell::Bool(r.exhaustive),
    ]);
    if !r.exhaustive {
        report.notes.push((
            "warning",
            json!("node budget exhausted; max_size is a lower bound on the optimum"),
        ));
    }
    Ok(report)
}

fn stripe(n: u32, k: u32, numer: i64, denom: i64, l: u32, d: usize) -> Result<Report> {
    if denom == 0 {
        bail!("--a-denom must be nonzero");
    }
    let a = rational::ratio(numer, denom);
    if !a.is_positive() {
        bail!("stripe offset a must be positive, got {a}");
    }
    let spec = StripeSpec::new(n, k, a.clone(), l)?;
    let count = stripe_count(&spec);
    let total = BigUint::from(n).pow(k);
    let scaled = &a / rational::from_int(n as i64);
    // Past the far corner the continuous stripe is empty.
    let volume = if scaled > rational::from_int(k as i64) {
        Rational::zero()
    } else {
        stripe_volume(k, &scaled, l)?
    };
    let density = Rational::new(count.clone().into(), total.clone().into());
    let expected = &volume * Rational::from_integer(total.into());
    let error = (&density - &volume).abs();
    let normalized = &error * rational::from_int(n as i64);
    let mut report = Report::new(
        "stripe-count",
        vec![
            "n",
            "k",
            "a",
            "l",
            "count",
            "expected",
            "density",
            "volume",
            "error",
            "normalized_error",
        ],
    );
    report.params = vec![
        ("n", json!(n)),
        ("k", json!(k)),
        ("a_numer", json!(numer)),
        ("a_denom", json!(denom)),
        ("l", json!(l)),
    ];
    report.push(vec![
        Cell::int(n),
        Cell::int(k),
        Cell::text(a.to_string()),
        Cell::int(l),
        Cell::Int(count),
        Cell::exact(&expected, d),
        Cell::exact(&density, d),
        Cell::exact(&volume, d),
        Cell::exact(&error, d),
        Cell::exact(&normalized, d),
    ]);
    Ok(report)
}
