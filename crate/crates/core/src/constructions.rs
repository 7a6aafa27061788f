//! Stripe sets, cross-section unions and the l-fold-sumfree predicate on
//! subsets of the lattice box `{1..n}^k`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_math::bounded_composition_count;
use crate::rational::{self, Rational};

/// Largest box that may be materialized point by point.
pub const MATERIALIZE_CAP: u128 = 100_000;

/// A point of `{1..n}^k`. Ordering is lexicographic on the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<u32>);

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord_sum(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    fn fits(&self, n: u32, k: u32) -> bool {
        self.0.len() == k as usize && self.0.iter().all(|&x| (1..=n).contains(&x))
    }
}

impl From<Vec<u32>> for LatticePoint {
    fn from(v: Vec<u32>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Number of points of `{1..n}^k`, or `None` on overflow.
pub fn box_size(n: u32, k: u32) -> Option<u128> {
    (n as u128).checked_pow(k)
}

fn check_cap(n: u32, k: u32, cap: u128) -> Result<u128> {
    match box_size(n, k) {
        Some(size) if size <= cap => Ok(size),
        Some(size) => Err(Error::InstanceTooLarge { points: size, cap }),
        None => Err(Error::InstanceTooLarge {
            points: u128::MAX,
            cap,
        }),
    }
}

/// All points of `{1..n}^k` in lexicographic order.
pub fn box_points(n: u32, k: u32) -> impl Iterator<Item = LatticePoint> {
    let total = box_size(n, k).expect("box too large to enumerate") as u64;
    (0..total).map(move |mut idx| {
        let mut coords = vec![0u32; k as usize];
        for slot in coords.iter_mut().rev() {
            *slot = (idx % n as u64) as u32 + 1;
            idx /= n as u64;
        }
        LatticePoint(coords)
    })
}

/// A finite subset of `{1..n}^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    n: u32,
    k: u32,
    points: HashSet<LatticePoint>,
}

impl PointSet {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSide);
        }
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            n,
            k,
            points: HashSet::new(),
        })
    }

    pub fn from_points<I, P>(n: u32, k: u32, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<LatticePoint>,
    {
        let mut set = Self::new(n, k)?;
        for p in points {
            set.insert(p.into())?;
        }
        Ok(set)
    }

    /// Adds `p`; returns whether it was new.
    pub fn insert(&mut self, p: LatticePoint) -> Result<bool> {
        self.check_ambient(&p)?;
        Ok(self.points.insert(p))
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.contains(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter()
    }

    /// Members in lexicographic order.
    pub fn sorted(&self) -> Vec<LatticePoint> {
        let mut v: Vec<_> = self.points.iter().cloned().collect();
        v.sort();
        v
    }

    fn check_ambient(&self, p: &LatticePoint) -> Result<()> {
        if p.fits(self.n, self.k) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                point: p.0.clone(),
                n: self.n,
                k: self.k,
            })
        }
    }
}

/// The diagonal stripe `{x ∈ {1..n}^k : a ≤ Σx_i < l·a}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StripeSpec {
    pub n: u32,
    pub k: u32,
    pub a: Rational,
    pub l: u32,
}

impl StripeSpec {
    pub fn new(n: u32, k: u32, a: Rational, l: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSide);
        }
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        if !a.is_positive() {
            return Err(Error::NonPositiveOffset(a.to_string()));
        }
        if l < 2 {
            return Err(Error::FoldTooSmall(l));
        }
        Ok(Self { n, k, a, l })
    }

    fn upper(&self) -> Rational {
        &self.a * rational::from_int(self.l as i64)
    }

    /// Integer coordinate sums `m` with `a ≤ m < l·a`, clipped to `[k, kn]`.
    pub fn sum_range(&self) -> std::ops::RangeInclusive<i64> {
        let k = self.k as i64;
        let kn = k * self.n as i64;
        let lo = rational::ceil_int(&self.a)
            .to_i64()
            .unwrap_or(i64::MAX)
            .max(k);
        let hi = (rational::ceil_int(&self.upper()) - num_bigint::BigInt::from(1))
            .to_i64()
            .unwrap_or(i64::MAX)
            .min(kn);
        lo..=hi
    }
}

/// Membership in the stripe, compared exactly against the rational offset.
pub fn stripe_contains(spec: &StripeSpec, p: &LatticePoint) -> Result<bool> {
    if !p.fits(spec.n, spec.k) {
        return Err(Error::AmbientMismatch {
            point: p.0.clone(),
            n: spec.n,
            k: spec.k,
        });
    }
    let s = rational::from_int(p.coord_sum() as i64);
    Ok(spec.a <= s && s < spec.upper())
}

/// Exact cardinality of the stripe via composition counts.
pub fn stripe_count(spec: &StripeSpec) -> BigUint {
    spec.sum_range()
        .map(|m| bounded_composition_count(spec.k, spec.n, m))
        .fold(BigUint::zero(), |acc, c| acc + c)
}

/// Materializes the stripe (boxes up to [`MATERIALIZE_CAP`] points).
pub fn materialize_stripe(spec: &StripeSpec) -> Result<PointSet> {
    check_cap(spec.n, spec.k, MATERIALIZE_CAP)?;
    let range = spec.sum_range();
    let mut set = PointSet::new(spec.n, spec.k)?;
    set.points = box_points(spec.n, spec.k)
        .filter(|p| range.contains(&(p.coord_sum() as i64)))
        .collect();
    Ok(set)
}

/// A choice of coordinate sums `A ⊆ {k..kn}`; the union of the slices
/// `K_m = {x : Σx_i = m}` over `m ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSectionFamily {
    pub n: u32,
    pub k: u32,
    pub sums: BTreeSet<i64>,
}

impl CrossSectionFamily {
    pub fn new(n: u32, k: u32, sums: impl IntoIterator<Item = i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSide);
        }
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            n,
            k,
            sums: sums.into_iter().collect(),
        })
    }

    /// `Σ_{m∈A} #K_m`.
    pub fn count(&self) -> BigUint {
        self.sums
            .iter()
            .map(|&m| bounded_composition_count(self.k, self.n, m))
            .fold(BigUint::zero(), |acc, c| acc + c)
    }
}

pub fn cross_section_union(fam: &CrossSectionFamily) -> Result<PointSet> {
    check_cap(fam.n, fam.k, MATERIALIZE_CAP)?;
    let mut set = PointSet::new(fam.n, fam.k)?;
    set.points = box_points(fam.n, fam.k)
        .filter(|p| fam.sums.contains(&(p.coord_sum() as i64)))
        .collect();
    Ok(set)
}

/// `x_1 + … + x_l = z` with every term drawn from the set under test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub summands: Vec<LatticePoint>,
    pub sum: LatticePoint,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "={}", self.sum)
    }
}

/// Partial sums of one length, each mapped to (shorter partial sum, member index).
type Layer = BTreeMap<Vec<u32>, (Vec<u32>, usize)>;

/// Looks for `x_1 + … + x_l = z` inside `s`, repetition allowed.
///
/// Builds the layered sumsets `R_1 = s`, `R_{j+1} = R_j + s`, keeping only sums
/// that can still end inside the box and below the heaviest member's
/// coordinate sum, and remembers one predecessor per sum to rebuild the
/// witness. Layers are ordered maps and members are scanned in a fixed order,
/// so the witness is deterministic.
pub fn find_violation(s: &PointSet, l: u32) -> Option<Violation> {
    assert!(l >= 2, "fold parameter must be at least 2");
    let mut members = s.sorted();
    members.sort_by_key(LatticePoint::coord_sum);
    let (min_sum, max_sum) = match (members.first(), members.last()) {
        (Some(lo), Some(hi)) => (lo.coord_sum(), hi.coord_sum()),
        _ => return None,
    };
    let l = l as usize;

    // layer j (0-based) maps a sum of j+1 members to (sum in layer j-1, member)
    let mut layers: Vec<Layer> = Vec::with_capacity(l);
    layers.push(
        members
            .iter()
            .enumerate()
            .map(|(i, p)| (p.0.clone(), (Vec::new(), i)))
            .collect(),
    );
    for j in 1..l {
        let left = (l - 1 - j) as u64;
        let mut next = BTreeMap::new();
        for partial in layers[j - 1].keys() {
            let total: u64 = partial.iter().map(|&x| x as u64).sum();
            for (i, p) in members.iter().enumerate() {
                if total + p.coord_sum() + left * min_sum > max_sum {
                    break;
                }
                let sum: Vec<u32> = partial.iter().zip(&p.0).map(|(a, b)| a + b).collect();
                if sum.iter().any(|&x| x as u64 + left > s.n as u64) {
                    continue;
                }
                next.entry(sum).or_insert_with(|| (partial.clone(), i));
            }
        }
        layers.push(next);
    }

    let hit = layers[l - 1]
        .keys()
        .find(|sum| s.contains(&LatticePoint((*sum).clone())))?
        .clone();
    let mut summands = Vec::with_capacity(l);
    let mut cur = hit.clone();
    for layer in layers.iter().rev() {
        let (prev, i) = &layer[&cur];
        summands.push(members[*i].clone());
        cur = prev.clone();
    }
    summands.sort();
    Some(Violation {
        summands,
        sum: LatticePoint(hit),
    })
}

pub fn is_l_fold_sumfree(s: &PointSet, l: u32) -> bool {
    find_violation(s, l).is_none()
}

/// The same predicate for a set of integers.
pub fn is_l_fold_sumfree_int(a: &BTreeSet<i64>, l: u32) -> bool {
    fn go(items: &[i64], a: &BTreeSet<i64>, remaining: u32, start: usize, acc: i64) -> bool {
        if remaining == 0 {
            return !a.contains(&acc);
        }
        items[start..]
            .iter()
            .enumerate()
            .all(|(off, &x)| go(items, a, remaining - 1, start + off, acc + x))
    }
    let items: Vec<i64> = a.iter().copied().collect();
    go(&items, a, l, 0, 0)
}
