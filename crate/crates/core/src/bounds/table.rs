use super::{
    alpha_double_star, alpha_star, lower_bound, threefold_upper_bound, BoundResult,
    EquationVariant, Setting, SolverConfig, UpperBoundEquation,
};
use crate::error::{Error, Result};
use crate::par::Exec;

pub const MAX_TABLE_K: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRequest {
    pub k_min: u32,
    pub k_max: u32,
    pub l: u32,
    pub setting: Setting,
    pub variant: EquationVariant,
}

impl TableRequest {
    /// Whether an upper-bound method exists for this fold parameter.
    pub fn has_upper(&self) -> bool {
        self.l <= 3
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub k: u32,
    pub lower: BoundResult,
    /// `None` for `l ≥ 4`, where no upper-bound method is known.
    pub upper: Option<BoundResult>,
}

fn row(req: &TableRequest, k: u32, cfg: &SolverConfig) -> Result<BoundsRow> {
    let lower = lower_bound(k, req.l)?.for_setting(req.setting);
    let upper = match (req.l, req.setting) {
        (2, Setting::Discrete) => Some(alpha_star(&UpperBoundEquation::new(k, req.variant)?, cfg)?),
        (2, Setting::Continuous) => Some(alpha_double_star(k, cfg)?),
        (3, setting) => Some(threefold_upper_bound(k)?.for_setting(setting)),
        _ => None,
    };
    Ok(BoundsRow { k, lower, upper })
}

/// One row per `k` in `k_min..=k_max`, computed independently and returned in
/// `k` order.
pub fn bounds_table(req: &TableRequest, cfg: &SolverConfig, exec: Exec) -> Result<Vec<BoundsRow>> {
    cfg.validate()?;
    if req.k_min == 0 {
        return Err(Error::ZeroDimension);
    }
    if req.k_min > req.k_max || req.k_max > MAX_TABLE_K {
        return Err(Error::InvalidConfig("need 1 <= k-min <= k-max <= 60"));
    }
    if req.l < 2 {
        return Err(Error::FoldTooSmall(req.l));
    }
    let ks: Vec<u32> = (req.k_min..=req.k_max).collect();
    exec.map(ks, |k| row(req, k, cfg)).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Method;

    fn req(l: u32, setting: Setting) -> TableRequest {
        TableRequest {
            k_min: 2,
            k_max: 6,
            l,
            setting,
            variant: EquationVariant::default(),
        }
    }

    #[test]
    fn methods_per_setting() {
        let cfg = SolverConfig::default();
        let rows = bounds_table(&req(2, Setting::Discrete), &cfg, Exec::default()).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].upper.as_ref().unwrap().method, Method::FixedPoint);
        let rows = bounds_table(&req(2, Setting::Continuous), &cfg, Exec::default()).unwrap();
        assert_eq!(rows[0].upper.as_ref().unwrap().method, Method::IteratedMap);
        let rows = bounds_table(&req(3, Setting::Discrete), &cfg, Exec::default()).unwrap();
        let up = rows[0].upper.as_ref().unwrap();
        assert_eq!(up.method, Method::ExplicitThreefold);
        assert_eq!(up.constant.setting, Setting::Discrete);
        let rows = bounds_table(&req(4, Setting::Discrete), &cfg, Exec::default()).unwrap();
        assert!(rows.iter().all(|r| r.upper.is_none()));
    }

    #[test]
    fn rejects_bad_ranges() {
        let cfg = SolverConfig::default();
        let mut r = req(2, Setting::Discrete);
        r.k_max = 61;
        assert!(bounds_table(&r, &cfg, Exec::default()).is_err());
        r.k_max = 1;
        assert!(bounds_table(&r, &cfg, Exec::default()).is_err());
        r = req(1, Setting::Discrete);
        assert!(bounds_table(&r, &cfg, Exec::default()).is_err());
    }

    #[test]
    fn strategies_agree_bitwise() {
        let cfg = SolverConfig::default();
        let r = TableRequest {
            k_min: 1,
            k_max: 60,
            ..req(2, Setting::Continuous)
        };
        let seq = bounds_table(&r, &cfg, Exec::Sequential).unwrap();
        let par = bounds_table(&r, &cfg, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
