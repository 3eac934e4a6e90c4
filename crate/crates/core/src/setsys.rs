//! Set systems: shattering, VC dimension, shatter functions, (k, delta)
//! separation and rich members.
//!
//! Every exponential search takes an explicit budget and fails with
//! [`Error::BudgetExceeded`] instead of running unbounded. Searches split work
//! across threads by the first chosen element and reduce with order-independent
//! operations, so results (including witnesses) are deterministic.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::geom::{Plane3, Point3};

pub const SHATTER_SUBSET_CAP: usize = 20;
pub const VC_MAX_D: usize = 6;
pub const VC_BUDGET: u128 = 10_000_000;
pub const SHATTER_BUDGET: u128 = 1_000_000;
pub const SEPARATION_BUDGET: u128 = 10_000_000;

/// A family of subsets of `[0, ground_size)`. Repeated members are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    ground_size: usize,
    members: Vec<FixedBitSet>,
    labels: Option<Vec<usize>>,
}

impl SetSystem {
    pub fn new(ground_size: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        let members = members
            .into_iter()
            .map(|m| {
                let mut bits = FixedBitSet::with_capacity(ground_size);
                for e in m {
                    if e >= ground_size {
                        return Err(Error::InvalidInput(format!(
                            "element {e} outside ground set of size {ground_size}"
                        )));
                    }
                    bits.insert(e);
                }
                Ok(bits)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetSystem {
            ground_size,
            members,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.members.len() {
            return Err(Error::InvalidInput("one label per member required".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> &FixedBitSet {
        &self.members[i]
    }

    pub fn member_size(&self, i: usize) -> usize {
        self.members[i].count_ones(..)
    }

    pub fn member_elements(&self, i: usize) -> Vec<usize> {
        self.members[i].ones().collect()
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// The label of member `i`, or `i` itself when unlabelled.
    pub fn label(&self, i: usize) -> usize {
        self.labels.as_ref().map_or(i, |l| l[i])
    }

    /// Restriction to the given member indices, labels carried along.
    pub fn subfamily(&self, indices: &[usize]) -> SetSystem {
        SetSystem {
            ground_size: self.ground_size,
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
            labels: Some(indices.iter().map(|&i| self.label(i)).collect()),
        }
    }

    /// Drops repeated members, keeping the first occurrence.
    pub fn deduplicated(&self) -> SetSystem {
        let mut seen = HashSet::new();
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| seen.insert(self.members[i].clone()))
            .collect();
        self.subfamily(&keep)
    }

    /// For each ground element, the set of members containing it.
    pub fn columns(&self) -> Vec<FixedBitSet> {
        let mut cols = vec![FixedBitSet::with_capacity(self.members.len()); self.ground_size];
        for (i, m) in self.members.iter().enumerate() {
            for e in m.ones() {
                cols[e].insert(i);
            }
        }
        cols
    }

    /// Trace of member `i` on `s`, bit `j` set when `s[j]` is in the member.
    fn trace_mask(&self, i: usize, s: &[usize]) -> u64 {
        s.iter()
            .enumerate()
            .filter(|(_, &e)| self.members[i].contains(e))
            .fold(0u64, |acc, (j, _)| acc | (1 << j))
    }

    /// Number of distinct traces `A ∩ s` over the family.
    pub fn trace_count(&self, s: &[usize]) -> usize {
        let traces: HashSet<u64> = (0..self.len()).map(|i| self.trace_mask(i, s)).collect();
        traces.len()
    }

    fn check_subset(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        if let Some(&bad) = v.iter().find(|&&e| e >= self.ground_size) {
            return Err(Error::InvalidInput(format!(
                "element {bad} outside ground set of size {}",
                self.ground_size
            )));
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Ground set = planes, one member `N(u)` per point.
    ByPoint,
    /// Ground set = points, one member `N(v)` per plane.
    ByPlane,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "by_point" => Ok(Side::ByPoint),
            "by_plane" => Ok(Side::ByPlane),
            other => Err(Error::InvalidInput(format!("unknown side {other:?}"))),
        }
    }
}

/// The incidence neighbourhood family of a point/plane configuration.
/// Member `i` is labelled with the index of its originating object.
pub fn neighborhood_system(
    f: &FieldSpec,
    points: &[Point3],
    planes: &[Plane3],
    side: Side,
) -> Result<SetSystem> {
    points.iter().try_for_each(|p| p.check(f))?;
    let members: Vec<Vec<usize>> = match side {
        Side::ByPoint => points
            .par_iter()
            .map(|p| (0..planes.len()).filter(|&j| planes[j].contains(f, p)).collect())
            .collect(),
        Side::ByPlane => planes
            .par_iter()
            .map(|pl| (0..points.len()).filter(|&j| pl.contains(f, &points[j])).collect())
            .collect(),
    };
    let ground = match side {
        Side::ByPoint => planes.len(),
        Side::ByPlane => points.len(),
    };
    let n = members.len();
    SetSystem::new(ground, members)?.with_labels((0..n).collect())
}

pub fn is_shattered(system: &SetSystem, s: &[usize]) -> Result<bool> {
    let s = system.check_subset(s)?;
    if s.len() > SHATTER_SUBSET_CAP {
        return Err(Error::SubsetTooLarge {
            size: s.len(),
            cap: SHATTER_SUBSET_CAP,
        });
    }
    let mut seen = FixedBitSet::with_capacity(1 << s.len());
    for i in 0..system.len() {
        seen.insert(system.trace_mask(i, &s) as usize);
    }
    Ok(seen.count_ones(..) == 1 << s.len())
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `sum_{i=0}^{d} C(z, i)`, the Sauer–Shelah bound including the empty trace.
pub fn sauer_shelah(z: u64, d: u64) -> u128 {
    (0..=d.min(z)).map(|i| binom(z, i)).fold(0u128, |a, b| a.saturating_add(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcResult {
    /// Largest shattered size found, at most `d_max`.
    pub dimension: usize,
    /// A shattered set of size `d_max` exists; the true dimension is `>= d_max`.
    pub saturated: bool,
    /// Lexicographically first shattered set of size `dimension`.
    pub witness: Vec<usize>,
}

struct ShatterSearch<'a> {
    cols: &'a [FixedBitSet],
    ground: &'a [usize],
    members: usize,
    d_max: usize,
}

impl ShatterSearch<'_> {
    // Extends `chosen` (positions in `ground`) while every prefix stays
    // shattered; returns the deepest set reached, lexicographically first.
    fn dfs(&self, chosen: &mut Vec<usize>, masks: &[u8], common: &FixedBitSet, best: &mut Vec<usize>) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if chosen.len() == self.d_max || best.len() == self.d_max {
            return;
        }
        let bit = 1u8 << chosen.len();
        let start = chosen.last().map_or(0, |&l| l + 1);
        for next in start..self.ground.len() {
            let col = &self.cols[self.ground[next]];
            let mut inter = common.clone();
            inter.intersect_with(col);
            if inter.is_clear() {
                continue;
            }
            let new_masks: Vec<u8> = masks
                .iter()
                .enumerate()
                .map(|(m, &old)| if col.contains(m) { old | bit } else { old })
                .collect();
            let mut seen = 0u128;
            for &m in &new_masks {
                seen |= 1 << m;
            }
            if seen.count_ones() as usize != 1 << (chosen.len() + 1) {
                continue;
            }
            chosen.push(next);
            self.dfs(chosen, &new_masks, &inter, best);
            chosen.pop();
            if best.len() == self.d_max {
                return;
            }
        }
    }
}

/// Exact VC dimension capped at `d_max`.
///
/// The budget `sum_{i <= d_max} C(n, i) <= VC_BUDGET` is checked against the
/// number `n` of ground elements that lie in at least one member; the others
/// belong to no shattered set.
pub fn vc_dimension(system: &SetSystem, d_max: usize) -> Result<VcResult> {
    vc_dimension_with_budget(system, d_max, VC_BUDGET)
}

pub fn vc_dimension_with_budget(system: &SetSystem, d_max: usize, budget: u128) -> Result<VcResult> {
    if d_max > VC_MAX_D {
        return Err(Error::InvalidInput(format!("d_max {d_max} exceeds {VC_MAX_D}")));
    }
    let cols = system.columns();
    let ground: Vec<usize> = (0..system.ground_size).filter(|&e| !cols[e].is_clear()).collect();
    let needed = sauer_shelah(ground.len() as u64, d_max as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "vc_dimension",
            needed,
            budget,
        });
    }
    if system.is_empty() || d_max == 0 {
        return Ok(VcResult {
            dimension: 0,
            saturated: d_max == 0 && !system.is_empty(),
            witness: vec![],
        });
    }
    let search = ShatterSearch {
        cols: &cols,
        ground: &ground,
        members: system.len(),
        d_max,
    };
    let best = (0..ground.len())
        .into_par_iter()
        .map(|first| {
            let col = &cols[ground[first]];
            let new_masks: Vec<u8> = (0..search.members).map(|m| u8::from(col.contains(m))).collect();
            let mut best = Vec::new();
            // a single element is shattered iff some member contains it and some member misses it
            if new_masks.contains(&0) && new_masks.contains(&1) {
                let mut chosen = vec![first];
                search.dfs(&mut chosen, &new_masks, col, &mut best);
            }
            best
        })
        .reduce(Vec::new, |a, b| {
            if b.len() > a.len() || (b.len() == a.len() && b < a) {
                b
            } else {
                a
            }
        });
    let witness: Vec<usize> = best.iter().map(|&i| ground[i]).collect();
    Ok(VcResult {
        dimension: witness.len(),
        saturated: witness.len() == d_max,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterValue {
    pub value: usize,
    /// False for sampled evaluations, which only give a lower bound.
    pub exact: bool,
    pub witness: Vec<usize>,
}

/// Visits every `k`-combination of `0..n` that starts with `first`.
fn for_each_combination_from(n: usize, k: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    if k == 0 {
        visit(&[]);
        return;
    }
    let mut c: Vec<usize> = (first..first + k).collect();
    if c[k - 1] >= n {
        return;
    }
    loop {
        visit(&c);
        // advance positions 1..k only; position 0 stays at `first`
        let mut i = k;
        loop {
            if i <= 1 {
                return;
            }
            i -= 1;
            if c[i] < n - (k - i) {
                break;
            }
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The primal shatter function `pi(z)`.
pub fn shatter_function(system: &SetSystem, z: usize, mode: SearchMode) -> Result<ShatterValue> {
    let n = system.ground_size;
    if z > n || z > 64 {
        return Err(Error::InvalidInput(format!(
            "z = {z} must be at most the ground size {n} and 64"
        )));
    }
    if z == 0 {
        return Ok(ShatterValue {
            value: usize::from(!system.is_empty()),
            exact: true,
            witness: vec![],
        });
    }
    match mode {
        SearchMode::Exhaustive => {
            let needed = binom(n as u64, z as u64);
            if needed > SHATTER_BUDGET {
                return Err(Error::BudgetExceeded {
                    what: "shatter_function",
                    needed,
                    budget: SHATTER_BUDGET,
                });
            }
            let best = (0..n)
                .into_par_iter()
                .map(|first| {
                    let mut best: (usize, Vec<usize>) = (0, Vec::new());
                    for_each_combination_from(n, z, first, |s| {
                        let c = system.trace_count(s);
                        if c > best.0 {
                            best = (c, s.to_vec());
                        }
                    });
                    best
                })
                .reduce(
                    || (0, Vec::new()),
                    |a, b| if b.0 > a.0 || (b.0 == a.0 && !b.1.is_empty() && (a.1.is_empty() || b.1 < a.1)) { b } else { a },
                );
            Ok(ShatterValue {
                value: best.0,
                exact: true,
                witness: best.1,
            })
        }
        SearchMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: (usize, Vec<usize>) = (0, Vec::new());
            for _ in 0..trials.max(1) {
                let mut s = sample(&mut rng, n, z).into_vec();
                s.sort_unstable();
                let c = system.trace_count(&s);
                if c > best.0 {
                    best = (c, s);
                }
            }
            Ok(ShatterValue {
                value: best.0,
                exact: false,
                witness: best.1,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub k: usize,
    pub delta: usize,
    pub separated: bool,
    /// The first violating k-tuple of member indices, present iff not separated.
    pub witness: Option<Vec<usize>>,
    pub tuples_checked: u128,
    pub exhaustive: bool,
}

fn spread(system: &SetSystem, tuple: &[usize]) -> usize {
    let mut union = system.members[tuple[0]].clone();
    let mut inter = system.members[tuple[0]].clone();
    for &i in &tuple[1..] {
        union.union_with(&system.members[i]);
        inter.intersect_with(&system.members[i]);
    }
    union.count_ones(..) - inter.count_ones(..)
}

/// Checks that every `k` distinct members have `|union \ intersection| >= delta`.
pub fn separation_check(system: &SetSystem, k: usize, delta: usize, mode: SearchMode) -> Result<SeparationReport> {
    if k < 2 {
        return Err(Error::InvalidInput("separation needs k >= 2".into()));
    }
    let n = system.len();
    let total = binom(n as u64, k as u64);
    let mut report = SeparationReport {
        k,
        delta,
        separated: true,
        witness: None,
        tuples_checked: 0,
        exhaustive: true,
    };
    if total == 0 {
        return Ok(report);
    }
    match mode {
        SearchMode::Exhaustive => {
            if total > SEPARATION_BUDGET {
                return Err(Error::BudgetExceeded {
                    what: "separation_check",
                    needed: total,
                    budget: SEPARATION_BUDGET,
                });
            }
            let witness = (0..n).into_par_iter().find_map_first(|first| {
                let mut found = None;
                for_each_combination_from(n, k, first, |t| {
                    if found.is_none() && spread(system, t) < delta {
                        found = Some(t.to_vec());
                    }
                });
                found
            });
            report.tuples_checked = total;
            report.separated = witness.is_none();
            report.witness = witness;
        }
        SearchMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            report.exhaustive = false;
            for _ in 0..trials {
                let mut t = sample(&mut rng, n, k).into_vec();
                t.sort_unstable();
                report.tuples_checked += 1;
                if spread(system, &t) < delta {
                    report.separated = false;
                    report.witness = Some(t);
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Indices of members of size at least `tau`.
pub fn rich_elements(system: &SetSystem, tau: f64) -> Vec<usize> {
    (0..system.len())
        .filter(|&i| system.member_size(i) as f64 >= tau)
        .collect()
}

/// One dyadic layer `{i : |N| >= 2^level * base}` of rich members.
#[derive(Clone, Debug, PartialEq)]
pub struct RichLayer {
    pub level: u32,
    pub threshold: f64,
    pub count: usize,
    /// `(q^alpha / 2^level)^3`, the size the packing argument allows up to constants.
    pub packing_scale: f64,
}

/// Dyadic rich layers starting at `base`, until the threshold exceeds every member.
pub fn rich_layers(system: &SetSystem, base: f64, q_alpha: f64) -> Vec<RichLayer> {
    if base <= 0.0 {
        return Vec::new();
    }
    let largest = (0..system.len()).map(|i| system.member_size(i)).max().unwrap_or(0) as f64;
    let mut out = Vec::new();
    let mut level = 0u32;
    loop {
        let threshold = base * 2f64.powi(level as i32);
        if threshold > largest {
            break;
        }
        out.push(RichLayer {
            level,
            threshold,
            count: rich_elements(system, threshold).len(),
            packing_scale: (q_alpha / 2f64.powi(level as i32)).powi(3),
        });
        level += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingReport {
    pub family_size: usize,
    pub ground_size: usize,
    pub delta: usize,
    pub d: u32,
    /// `|family| / (ground_size / delta)^d`
    pub ratio: f64,
    pub c_prime: f64,
    pub holds: bool,
    pub separation: SeparationReport,
}

/// Measures `|F| / (|U|/delta)^d` against `c_prime`. The separation
/// precondition is re-checked and reported alongside.
pub fn packing_bound_check(
    system: &SetSystem,
    k: usize,
    delta: usize,
    d: u32,
    c_prime: f64,
    mode: SearchMode,
) -> Result<PackingReport> {
    if delta == 0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let separation = separation_check(system, k, delta, mode)?;
    let scale = (system.ground_size as f64 / delta as f64).powi(d as i32);
    let ratio = system.len() as f64 / scale;
    Ok(PackingReport {
        family_size: system.len(),
        ground_size: system.ground_size,
        delta,
        d,
        ratio,
        c_prime,
        holds: ratio <= c_prime * (1.0 + 1e-9),
        separation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, Fe};
    use crate::geom::{all_points3, count_plane_incidences, plane_intersection, CountMethod, PlaneIntersection, Point};
    use rand::seq::SliceRandom;
    use proptest::prelude::*;

    fn power_set(n: usize) -> SetSystem {
        let members = (0..1usize << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        SetSystem::new(n, members).unwrap()
    }

    fn singletons(n: usize) -> SetSystem {
        SetSystem::new(n, (0..n).map(|i| vec![i]).collect()).unwrap()
    }

    fn full_plane_system(q: u32, side: Side) -> (FieldSpec, SetSystem) {
        let f = FieldSpec::of_order(q).unwrap();
        let pts = all_points3(&f);
        let planes = Plane3::all_dual(&f);
        let sys = neighborhood_system(&f, &pts, &planes, side).unwrap();
        (f, sys)
    }

    #[test]
    fn neighborhood_examples() {
        let f = make_field(3, 1).unwrap();
        let planes = Plane3::all_dual(&f);
        let u = [Point::from_indices([1, 0, 0])];
        let sys = neighborhood_system(&f, &u, &planes, Side::ByPoint).unwrap();
        assert_eq!(sys.member_size(0), 9);
        assert!(sys.member_elements(0).iter().all(|&j| planes[j].normal()[0] == Fe(1) || planes[j].dual_vector(&f).unwrap()[0] == Fe(1)));
        let empty = neighborhood_system(&f, &[], &planes, Side::ByPoint).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn neighborhood_sizes_match_incidences() {
        let f = make_field(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts: Vec<_> = all_points3(&f).choose_multiple(&mut rng, 10).copied().collect();
        let planes: Vec<_> = Plane3::all_dual(&f).choose_multiple(&mut rng, 10).copied().collect();
        let sys = neighborhood_system(&f, &pts, &planes, Side::ByPoint).unwrap();
        for (i, p) in pts.iter().enumerate() {
            let c = count_plane_incidences(&f, &[*p], &planes, CountMethod::Oracle).unwrap().count;
            assert_eq!(sys.member_size(i) as u64, c);
        }
        let dual = neighborhood_system(&f, &pts, &planes, Side::ByPlane).unwrap();
        let total: usize = (0..dual.len()).map(|i| dual.member_size(i)).sum();
        let direct = count_plane_incidences(&f, &pts, &planes, CountMethod::Oracle).unwrap().count;
        assert_eq!(total as u64, direct);
    }

    #[test]
    fn shattering_examples() {
        assert!(is_shattered(&power_set(3), &[0, 1, 2]).unwrap());
        assert!(!is_shattered(&singletons(3), &[0, 1]).unwrap());
        let big = power_set(3);
        assert!(matches!(
            is_shattered(&SetSystem::new(30, vec![]).unwrap(), &(0..21).collect::<Vec<_>>()),
            Err(Error::SubsetTooLarge { .. })
        ));
        assert!(is_shattered(&big, &[7]).is_err());
    }

    #[test]
    fn no_four_points_shattered_in_f3() {
        // by_plane system: ground = points, every 4-set must fail
        let (_, sys) = full_plane_system(3, Side::ByPlane);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let s = sample(&mut rng, sys.ground_size(), 4).into_vec();
            assert!(!is_shattered(&sys, &s).unwrap());
        }
    }

    #[test]
    fn vc_examples() {
        assert_eq!(vc_dimension(&singletons(5), 4).unwrap().dimension, 1);
        let r = vc_dimension(&power_set(3), 3).unwrap();
        assert_eq!((r.dimension, r.saturated), (3, true));
        let r = vc_dimension(&power_set(4), 6).unwrap();
        assert_eq!((r.dimension, r.saturated, r.witness), (4, false, vec![0, 1, 2, 3]));
        for q in [3, 5] {
            for side in [Side::ByPoint, Side::ByPlane] {
                let (_, sys) = full_plane_system(q, side);
                let r = vc_dimension(&sys, 4).unwrap();
                assert!(r.dimension <= 3 && !r.saturated, "q={q} {side:?} {r:?}");
                assert!(is_shattered(&sys, &r.witness).unwrap());
            }
        }
    }

    #[test]
    fn vc_budget_and_cap() {
        let sys = singletons(300);
        assert!(matches!(vc_dimension(&sys, 4), Err(Error::BudgetExceeded { .. })));
        assert!(vc_dimension(&sys, 7).is_err());
    }

    // brute-force VC dimension by trying every subset
    fn brute_vc(sys: &SetSystem) -> usize {
        let n = sys.ground_size();
        (0..1usize << n)
            .filter(|m| {
                let s: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
                is_shattered(sys, &s).unwrap()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    proptest! {
        #[test]
        fn vc_matches_brute_force(members in prop::collection::vec(prop::collection::vec(0usize..7, 0..7), 1..14)) {
            let sys = SetSystem::new(7, members).unwrap();
            let r = vc_dimension(&sys, 6).unwrap();
            prop_assert_eq!(r.dimension, brute_vc(&sys));
        }

        #[test]
        fn sauer_shelah_bounds_shatter_function(members in prop::collection::vec(prop::collection::vec(0usize..8, 0..8), 1..20), z in 0usize..=8) {
            let sys = SetSystem::new(8, members).unwrap();
            let d = vc_dimension(&sys, 6).unwrap().dimension;
            let pi = shatter_function(&sys, z, SearchMode::Exhaustive).unwrap();
            prop_assert!(pi.value as u128 <= sauer_shelah(z as u64, d as u64));
        }

        #[test]
        fn rich_elements_nested(sizes in prop::collection::vec(0usize..10, 0..20), a in 0.0f64..12.0, b in 0.0f64..12.0) {
            let members = sizes.iter().map(|&s| (0..s).collect()).collect();
            let sys = SetSystem::new(10, members).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let big: HashSet<usize> = rich_elements(&sys, lo).into_iter().collect();
            prop_assert!(rich_elements(&sys, hi).iter().all(|i| big.contains(i)));
        }
    }

    #[test]
    fn shatter_function_examples() {
        let (_, sys) = full_plane_system(3, Side::ByPoint);
        assert_eq!(shatter_function(&sys, 0, SearchMode::Exhaustive).unwrap().value, 1);
        assert_eq!(shatter_function(&power_set(3), 2, SearchMode::Exhaustive).unwrap().value, 4);
        let pi4 = shatter_function(&sys, 4, SearchMode::Exhaustive).unwrap();
        assert!(pi4.value <= 15);
        assert_eq!(sys.trace_count(&pi4.witness), pi4.value);
        let sampled = shatter_function(&sys, 4, SearchMode::Sampled { trials: 50, seed: 1 }).unwrap();
        assert!(!sampled.exact && sampled.value <= pi4.value);
        let (_, big) = full_plane_system(5, Side::ByPoint);
        assert!(matches!(
            shatter_function(&big, 4, SearchMode::Exhaustive),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sauer_shelah_examples() {
        assert_eq!(sauer_shelah(4, 3), 15);
        assert_eq!(sauer_shelah(10, 0), 1);
        assert_eq!(sauer_shelah(3, 3), 8);
        assert_eq!(binom(124, 4), 9_381_251);
    }

    #[test]
    fn separation_examples() {
        let same = SetSystem::new(4, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let r = separation_check(&same, 2, 1, SearchMode::Exhaustive).unwrap();
        assert!(!r.separated);
        assert_eq!(r.witness, Some(vec![0, 1]));
        let disjoint = SetSystem::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let r = separation_check(&disjoint, 2, 6, SearchMode::Exhaustive).unwrap();
        assert!(r.separated && r.witness.is_none());
        assert!(separation_check(&disjoint, 1, 1, SearchMode::Exhaustive).is_err());
    }

    #[test]
    fn plane_system_pairwise_bounds() {
        for q in [3u32, 4, 5] {
            let (f, sys) = full_plane_system(q, Side::ByPoint);
            let planes = Plane3::all_dual(&f);
            let rich = rich_elements(&sys, 2.0 * q as f64);
            let sub = sys.subfamily(&rich);
            let min_size = (0..sub.len()).map(|i| sub.member_size(i)).min().unwrap();
            let r = separation_check(&sub, 2, min_size - q as usize, SearchMode::Exhaustive).unwrap();
            assert!(r.separated, "q={q}");
            for i in 0..sys.len() {
                for j in i + 1..sys.len() {
                    let mut inter = sys.member(i).clone();
                    inter.intersect_with(sys.member(j));
                    assert!(inter.count_ones(..) <= q as usize);
                }
            }
            // intersections of two planes match the geometric classification
            let a = &planes[0];
            for b in &planes[1..] {
                if let PlaneIntersection::Same = plane_intersection(&f, a, b) {
                    panic!("distinct dual planes compared equal");
                }
            }
        }
    }

    #[test]
    fn rich_elements_examples() {
        let (_, sys) = full_plane_system(3, Side::ByPoint);
        assert_eq!(rich_elements(&sys, 0.0).len(), sys.len());
        assert!(rich_elements(&sys, 27.0).is_empty());
        let nine = rich_elements(&sys, 9.0);
        assert_eq!(nine.len(), 26);
        assert!(nine.iter().all(|&i| sys.member_size(i) == 9));
    }

    #[test]
    fn packing_examples() {
        let one = SetSystem::new(10, vec![vec![1, 2]]).unwrap();
        let r = packing_bound_check(&one, 2, 1, 3, 1.0, SearchMode::Exhaustive).unwrap();
        assert!(r.holds && r.ratio < 1e-2);
        let comp = SetSystem::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let r = packing_bound_check(&comp, 2, 4, 3, 1.0, SearchMode::Exhaustive).unwrap();
        assert!(r.separation.separated);
        assert!(!r.holds);
        assert_eq!(r.ratio, 2.0);
    }

    #[test]
    fn rich_layers_cover_thresholds() {
        let (_, sys) = full_plane_system(3, Side::ByPoint);
        let layers = rich_layers(&sys, 2.0, 3f64.sqrt());
        assert_eq!(layers.iter().map(|l| l.threshold).collect::<Vec<_>>(), vec![2.0, 4.0, 8.0]);
        assert!(layers.iter().all(|l| l.count == 26));
    }

    #[test]
    fn dedup_is_optional() {
        let sys = SetSystem::new(3, vec![vec![0], vec![0], vec![1]]).unwrap();
        assert_eq!(sys.len(), 3);
        let d = sys.deduplicated();
        assert_eq!(d.len(), 2);
        assert_eq!(d.labels(), Some(&[0usize, 2][..]));
    }
}
