//! Exact maximum (l-fold-)sumfree subsets of tiny boxes `{1..n}^k` by
//! branch and bound.
//!
//! Points are taken in lexicographic order and the include branch is explored
//! first, so the first optimum reached is the lexicographically smallest one.
//! The top of the tree can be split across workers; they share the incumbent
//! size for pruning and the final witness is chosen at collection time, which
//! makes it independent of completion order. `nodes_explored` is not: with
//! several workers, pruning depends on timing.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use crate::constructions::{box_points, box_size, is_l_fold_sumfree, PointSet};
use crate::error::{Error, Result};
use crate::par::Exec;

pub const DEFAULT_POINT_CAP: u128 = 24;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Decisions fixed before the tree is handed out to workers.
const SPLIT_DEPTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchInstance {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub node_budget: u64,
}

impl SearchInstance {
    pub fn new(n: u32, k: u32, l: u32) -> Result<Self> {
        Self::with_cap(n, k, l, DEFAULT_NODE_BUDGET, DEFAULT_POINT_CAP)
    }

    /// Validates `n^k ≤ point_cap`.
    pub fn with_cap(n: u32, k: u32, l: u32, node_budget: u64, point_cap: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSide);
        }
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        if l < 2 {
            return Err(Error::FoldTooSmall(l));
        }
        match box_size(n, k) {
            Some(size) if size <= point_cap => Ok(Self {
                n,
                k,
                l,
                node_budget,
            }),
            Some(size) => Err(Error::InstanceTooLarge {
                points: size,
                cap: point_cap,
            }),
            None => Err(Error::InstanceTooLarge {
                points: u128::MAX,
                cap: point_cap,
            }),
        }
    }

    fn points(&self) -> usize {
        box_size(self.n, self.k).unwrap() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub max_size: usize,
    pub witness: PointSet,
    pub nodes_explored: u64,
    /// False when the node budget ran out; `max_size` is then only a lower
    /// bound on the optimum.
    pub exhaustive: bool,
}

impl SearchResult {
    /// `max_size / n^k`.
    pub fn density(&self) -> f64 {
        let total = box_size(self.witness.n(), self.witness.k()).unwrap_or(u128::MAX);
        self.max_size as f64 / total as f64
    }
}

/// Re-checks a witness with the plain predicate.
pub fn verify_witness(s: &PointSet, l: u32) -> bool {
    is_l_fold_sumfree(s, l)
}

pub fn max_sumfree_exact(inst: &SearchInstance, exec: Exec) -> Result<SearchResult> {
    let ctx = Context::new(inst);
    let shared = Shared {
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        budget: inst.node_budget,
        exhausted: AtomicBool::new(false),
    };

    // Enumerate feasible prefixes in include-first order; each becomes a task.
    let depth = SPLIT_DEPTH.min(ctx.len);
    let mut prefixes = Vec::new();
    let mut member = vec![false; ctx.len];
    let mut chosen = Vec::new();
    ctx.prefixes(0, depth, &mut member, &mut chosen, &mut prefixes);

    let outcomes = exec.map(prefixes, |prefix| ctx.run_task(depth, prefix, &shared));

    let mut best: Vec<usize> = Vec::new();
    for local in outcomes {
        // tasks come back in lexicographic order, so keep the first maximum
        if local.len() > best.len() {
            best = local;
        }
    }
    let mut witness = PointSet::new(inst.n, inst.k)?;
    for &i in &best {
        witness.insert(ctx.points[i].clone().into())?;
    }
    Ok(SearchResult {
        max_size: best.len(),
        witness,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        exhaustive: !shared.exhausted.load(Ordering::Relaxed),
    })
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    exhausted: AtomicBool,
}

struct Context {
    n: u32,
    l: usize,
    len: usize,
    points: Vec<Vec<u32>>,
    /// `n^{k-1-j}` for coordinate `j`.
    strides: Vec<usize>,
}

struct Task<'a> {
    ctx: &'a Context,
    shared: &'a Shared,
    member: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    stopped: bool,
}

impl Context {
    fn new(inst: &SearchInstance) -> Self {
        let len = inst.points();
        let points: Vec<Vec<u32>> = box_points(inst.n, inst.k)
            .map(|p| p.coords().to_vec())
            .collect();
        let mut strides = vec![1usize; inst.k as usize];
        for j in (0..inst.k as usize).rev().skip(1) {
            strides[j] = strides[j + 1] * inst.n as usize;
        }
        Self {
            n: inst.n,
            l: inst.l as usize,
            len,
            points,
            strides,
        }
    }

    fn index_of(&self, coords: &[u32]) -> Option<usize> {
        if coords.iter().any(|&x| x == 0 || x > self.n) {
            return None;
        }
        Some(
            coords
                .iter()
                .zip(&self.strides)
                .map(|(&x, &s)| (x as usize - 1) * s)
                .sum(),
        )
    }

    /// Whether `p` can join the feasible set `chosen` (with flags `member`).
    ///
    /// Only tuples involving `p` need checking: l-multisets containing `p`
    /// whose sum is a member or `p`, and l-multisets of old members summing
    /// to `p`.
    fn can_add(&self, p: usize, member: &[bool], chosen: &[usize]) -> bool {
        let mut pool = chosen.to_vec();
        pool.push(p);
        let box_cap = vec![self.n; self.points[p].len()];
        let mut partial = self.points[p].clone();
        let hits_member = |sum: &[u32]| match self.index_of(sum) {
            Some(i) => i == p || member[i],
            None => false,
        };
        if self.exists_sum(&pool, self.l - 1, 0, &mut partial, &box_cap, &hits_member) {
            return false;
        }
        let target = &self.points[p];
        let mut partial = vec![0u32; target.len()];
        let hits_target = |sum: &[u32]| sum == target.as_slice();
        !self.exists_sum(chosen, self.l, 0, &mut partial, target, &hits_target)
    }

    /// Is there a multiset of `remaining` entries of `pool[start..]` whose
    /// coordinates added to `partial` stay under `cap` and satisfy `leaf`?
    fn exists_sum(
        &self,
        pool: &[usize],
        remaining: usize,
        start: usize,
        partial: &mut [u32],
        cap: &[u32],
        leaf: &dyn Fn(&[u32]) -> bool,
    ) -> bool {
        if remaining == 0 {
            return leaf(partial);
        }
        let slack = remaining as u32 - 1;
        for pos in start..pool.len() {
            let q = &self.points[pool[pos]];
            if partial
                .iter()
                .zip(q)
                .zip(cap)
                .any(|((&a, &x), &c)| a + x + slack > c)
            {
                continue;
            }
            partial.iter_mut().zip(q).for_each(|(a, &x)| *a += x);
            let found = self.exists_sum(pool, remaining - 1, pos, partial, cap, leaf);
            partial.iter_mut().zip(q).for_each(|(a, &x)| *a -= x);
            if found {
                return true;
            }
        }
        false
    }

    fn prefixes(
        &self,
        next: usize,
        depth: usize,
        member: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if next == depth {
            out.push(chosen.clone());
            return;
        }
        if self.can_add(next, member, chosen) {
            member[next] = true;
            chosen.push(next);
            self.prefixes(next + 1, depth, member, chosen, out);
            chosen.pop();
            member[next] = false;
        }
        self.prefixes(next + 1, depth, member, chosen, out);
    }

    fn run_task(&self, depth: usize, prefix: Vec<usize>, shared: &Shared) -> Vec<usize> {
        let mut member = vec![false; self.len];
        for &i in &prefix {
            member[i] = true;
        }
        let mut task = Task {
            ctx: self,
            shared,
            member,
            best: Vec::new(),
            chosen: prefix,
            stopped: false,
        };
        task.dfs(depth);
        task.best
    }
}

impl Task<'_> {
    fn dfs(&mut self, next: usize) {
        if self.stopped {
            return;
        }
        let visited = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > self.shared.budget {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            self.stopped = true;
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            self.shared
                .best
                .fetch_max(self.best.len(), Ordering::Relaxed);
        }
        if next == self.ctx.len {
            return;
        }
        let reachable = self.chosen.len() + (self.ctx.len - next);
        // strict against other workers so equal-size optima here survive
        if reachable <= self.best.len() || reachable < self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        if self.ctx.can_add(next, &self.member, &self.chosen) {
            self.member[next] = true;
            self.chosen.push(next);
            self.dfs(next + 1);
            self.chosen.pop();
            self.member[next] = false;
        }
        self.dfs(next + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::LatticePoint;

    fn solve(n: u32, k: u32, l: u32) -> SearchResult {
        max_sumfree_exact(&SearchInstance::new(n, k, l).unwrap(), Exec::default()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(solve(2, 1, 2).max_size, 1);
        let r = solve(4, 1, 2);
        assert_eq!(r.max_size, 2);
        assert!(r.exhaustive);
        let r = solve(2, 2, 2);
        assert_eq!(r.max_size, 3);
        assert!(verify_witness(&r.witness, 2));
        assert_eq!(solve(1, 3, 2).max_size, 1);
        assert!((solve(2, 2, 2).density() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // {1,3} and {2,...}: optimum size 2 for n = 4, smallest is {1,3}
        let r = solve(4, 1, 2);
        let pts: Vec<Vec<u32>> = r
            .witness
            .sorted()
            .iter()
            .map(|p| p.coords().to_vec())
            .collect();
        assert_eq!(pts, vec![vec![1], vec![3]]);
        let r = solve(2, 2, 2);
        assert_eq!(
            r.witness.sorted(),
            vec![
                LatticePoint::new(vec![1, 1]),
                LatticePoint::new(vec![1, 2]),
                LatticePoint::new(vec![2, 1])
            ]
        );
    }

    #[test]
    fn verify_examples() {
        let bad = PointSet::from_points(2, 2, [vec![1, 1], vec![2, 2]]).unwrap();
        assert!(!verify_witness(&bad, 2));
        assert!(verify_witness(&PointSet::new(2, 2).unwrap(), 2));
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            SearchInstance::new(5, 2, 2),
            Err(Error::InstanceTooLarge {
                points: 25,
                cap: 24
            })
        ));
        assert!(SearchInstance::with_cap(5, 2, 2, 1000, 25).is_ok());
        assert_eq!(SearchInstance::new(3, 2, 1), Err(Error::FoldTooSmall(1)));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let inst = SearchInstance::with_cap(4, 2, 2, 10, 24).unwrap();
        let r = max_sumfree_exact(&inst, Exec::Sequential).unwrap();
        assert!(!r.exhaustive);
        assert!(verify_witness(&r.witness, 2));
    }

    #[test]
    fn strategies_agree() {
        for (n, k, l) in [(4, 2, 2), (2, 4, 2), (3, 2, 3), (12, 1, 2)] {
            let inst = SearchInstance::new(n, k, l).unwrap();
            let a = max_sumfree_exact(&inst, Exec::Sequential).unwrap();
            let b = max_sumfree_exact(&inst, Exec::Parallel).unwrap();
            assert_eq!(a.max_size, b.max_size);
            assert_eq!(a.witness, b.witness);
        }
    }
}
