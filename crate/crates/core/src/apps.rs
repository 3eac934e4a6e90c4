//! Distance sets, dot-product sets, regular subsets and trace pairs in F_q^3.

use crate::error::{Error, Result};
use crate::ffield::{Fe, FieldSpec};
use crate::geom::{
    all_directions, all_points3, dot3, is_zero3, max_collinear, plane_intersection, scale3, sub3,
    Line3, Plane3, PlaneIntersection, Point, Point3, Vec3, ORACLE_CAP,
};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Work cap for the histogram-based triple count and the bisector scan.
pub const APPS_BUDGET: u128 = 1_000_000_000;
/// Largest q for which [`sphere_line_scan`] runs.
pub const SPHERE_SCAN_MAX_Q: u32 = 13;

fn require_odd(f: &FieldSpec) -> Result<()> {
    if f.is_odd() {
        Ok(())
    } else {
        Err(Error::EvenCharacteristic)
    }
}

fn check_points(f: &FieldSpec, pts: &[Point3]) -> Result<()> {
    pts.iter().try_for_each(|p| p.check(f))
}

fn nonempty(name: &str, pts: &[Point3]) -> Result<()> {
    if pts.is_empty() {
        Err(Error::InvalidInput(format!("{name} must be nonempty")))
    } else {
        Ok(())
    }
}

/// `x1^2 + x2^2 + x3^2`.
pub fn norm3(f: &FieldSpec, x: &Vec3) -> Result<Fe> {
    require_odd(f)?;
    Ok(dot3(f, x, x))
}

pub fn dist(f: &FieldSpec, x: &Point3, y: &Point3) -> Result<Fe> {
    norm3(f, &sub3(f, &x.0, &y.0))
}

fn dist_unchecked(f: &FieldSpec, x: &Point3, y: &Point3) -> Fe {
    let d = sub3(f, &x.0, &y.0);
    dot3(f, &d, &d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    /// `Delta(E, F)`, sorted.
    pub distances: Vec<Fe>,
    pub zero_pairs: u64,
    /// `|R_gamma|` indexed by `gamma`.
    pub r_counts: Vec<u64>,
}

impl DistanceReport {
    pub fn nonzero_distances(&self) -> usize {
        self.distances.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn distance_set(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<DistanceReport> {
    require_odd(f)?;
    nonempty("E", e)?;
    nonempty("F", fs)?;
    check_points(f, e)?;
    check_points(f, fs)?;
    let q = f.q() as usize;
    let r_counts = e
        .par_iter()
        .map(|u| {
            let mut h = vec![0u64; q];
            for x in fs {
                h[dist_unchecked(f, u, x).0 as usize] += 1;
            }
            h
        })
        .reduce(|| vec![0u64; q], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(s, v)| *s += v);
            a
        });
    Ok(DistanceReport {
        distances: (0..q).filter(|&g| r_counts[g] > 0).map(|g| Fe(g as u32)).collect(),
        zero_pairs: r_counts[0],
        r_counts,
    })
}

/// The plane `2(y - x) . u = ||y|| - ||x||` of points equidistant from `x` and `y`.
pub fn bisector_plane(f: &FieldSpec, x: &Point3, y: &Point3) -> Result<Plane3> {
    require_odd(f)?;
    x.check(f)?;
    y.check(f)?;
    if x == y {
        return Err(Error::EqualPoints);
    }
    let normal = scale3(f, f.from_int(2), &sub3(f, &y.0, &x.0));
    Plane3::new(f, normal, f.sub(dist_unchecked(f, y, &Point([Fe::ZERO; 3])), dist_unchecked(f, x, &Point([Fe::ZERO; 3]))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectorAudit {
    pub base: Point3,
    pub distinct_planes: usize,
    /// Pairs `y != y'` sharing a bisector plane with `base`.
    pub collisions: Vec<(Point3, Point3)>,
}

impl BisectorAudit {
    pub fn injective(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Checks whether `y -> bisector_plane(x, y)` is injective over all `y != x`.
pub fn bisector_audit(f: &FieldSpec, x: &Point3) -> Result<BisectorAudit> {
    let mut seen: HashMap<Plane3, Point3> = HashMap::new();
    let mut collisions = Vec::new();
    for y in all_points3(f) {
        if y == *x {
            continue;
        }
        let pl = bisector_plane(f, x, &y)?;
        if let Some(prev) = seen.get(&pl) {
            collisions.push((*prev, y));
        } else {
            seen.insert(pl, y);
        }
    }
    Ok(BisectorAudit {
        base: *x,
        distinct_planes: seen.len(),
        collisions,
    })
}

/// `T(E, F) = #{(u, v, x) in E x E x F : ||x - u|| = ||x - v|| != 0}` via a
/// per-`x` histogram of distances.
pub fn triple_count_t(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<u64> {
    require_odd(f)?;
    check_points(f, e)?;
    check_points(f, fs)?;
    let work = e.len() as u128 * fs.len() as u128;
    if work > APPS_BUDGET {
        return Err(Error::BudgetExceeded { what: "triple count", needed: work, budget: APPS_BUDGET });
    }
    let q = f.q() as usize;
    Ok(fs
        .par_iter()
        .map(|x| {
            let mut h = vec![0u64; q];
            for u in e {
                h[dist_unchecked(f, x, u).0 as usize] += 1;
            }
            h[1..].iter().map(|c| c * c).sum::<u64>()
        })
        .sum())
}

/// The direct triple loop for `T(E, F)`.
pub fn triple_count_t_oracle(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<u64> {
    require_odd(f)?;
    let work = (e.len() as u128).pow(2) * fs.len() as u128;
    if work > ORACLE_CAP {
        return Err(Error::BudgetExceeded { what: "triple count oracle", needed: work, budget: ORACLE_CAP });
    }
    let mut t = 0u64;
    for u in e {
        for v in e {
            for x in fs {
                let du = dist_unchecked(f, x, u);
                if !du.is_zero() && du == dist_unchecked(f, x, v) {
                    t += 1;
                }
            }
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceChain {
    pub t: u64,
    /// `|Delta \ {0}| * |F| * T`.
    pub lhs: u128,
    /// `(|E||F| - zero_pairs)^2`.
    pub rhs: u128,
    pub holds: bool,
    /// `zero_pairs <= |E||F| / 2`.
    pub hypothesis_ok: bool,
    /// `|E|^2 |F| / (4T)`.
    pub derived_lower: f64,
    /// `|Delta| >= derived_lower`; meaningful when the hypothesis holds.
    pub derived_ok: bool,
}

pub fn distance_chain_check(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<DistanceChain> {
    let report = distance_set(f, e, fs)?;
    let t = triple_count_t(f, e, fs)?;
    let pairs = e.len() as u128 * fs.len() as u128;
    let nonzero = pairs - report.zero_pairs as u128;
    let lhs = report.nonzero_distances() as u128 * fs.len() as u128 * t as u128;
    let derived_lower = if t == 0 {
        0.0
    } else {
        (e.len() as f64).powi(2) * fs.len() as f64 / (4.0 * t as f64)
    };
    Ok(DistanceChain {
        t,
        lhs,
        rhs: nonzero * nonzero,
        holds: lhs >= nonzero * nonzero,
        hypothesis_ok: 2 * report.zero_pairs as u128 <= pairs,
        derived_lower,
        derived_ok: report.distances.len() as f64 >= derived_lower * (1.0 - 1e-9),
    })
}

/// Largest number of collinear points of `F` lying on a bisector of some
/// `x != y` in `E` at nonzero distance from `x`; 0 when no such pair or point.
pub fn bisector_collinear_k(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<usize> {
    require_odd(f)?;
    check_points(f, e)?;
    check_points(f, fs)?;
    let mut es = e.to_vec();
    es.sort();
    es.dedup();
    let on_plane = (fs.len() as u128).min((f.q() as u128).pow(2));
    let pairs = (es.len() as u128) * (es.len() as u128).saturating_sub(1) / 2;
    let needed = pairs * (fs.len() as u128 + on_plane * on_plane);
    if needed > APPS_BUDGET {
        return Err(Error::BudgetExceeded { what: "bisector collinearity", needed, budget: APPS_BUDGET });
    }
    let idx: Vec<(usize, usize)> = (0..es.len()).flat_map(|i| (i + 1..es.len()).map(move |j| (i, j))).collect();
    Ok(idx
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&es[i], &es[j]);
            let pl = bisector_plane(f, x, y).expect("distinct points");
            let s: Vec<Point3> = fs
                .iter()
                .filter(|u| pl.contains(f, u) && !dist_unchecked(f, x, u).is_zero())
                .copied()
                .collect();
            if s.is_empty() {
                0
            } else {
                max_collinear(f, &s).expect("nonempty").k
            }
        })
        .max()
        .unwrap_or(0))
}

/// Every line contained in the sphere `||x|| = r`, by exhaustive scan.
pub fn sphere_line_scan(f: &FieldSpec, r: Fe) -> Result<Vec<Line3>> {
    require_odd(f)?;
    f.check(r)?;
    if r.is_zero() {
        return Err(Error::InvalidInput("sphere radius must be nonzero".into()));
    }
    if f.q() > SPHERE_SCAN_MAX_Q {
        let q = f.q() as u128;
        return Err(Error::BudgetExceeded {
            what: "sphere line scan",
            needed: q.pow(6),
            budget: (SPHERE_SCAN_MAX_Q as u128).pow(6),
        });
    }
    let sphere: Vec<Point3> = all_points3(f)
        .into_iter()
        .filter(|p| dot3(f, &p.0, &p.0) == r)
        .collect();
    let on: BTreeSet<Point3> = sphere.iter().copied().collect();
    let dirs = all_directions(f);
    let mut found = BTreeSet::new();
    for p in &sphere {
        for d in &dirs {
            let l = Line3::new(f, *p, *d)?;
            if !found.contains(&l) && l.points(f).iter().all(|x| on.contains(x)) {
                found.insert(l);
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotReport {
    /// `D(E, F)`, sorted.
    pub dots: Vec<Fe>,
    pub orthogonal_pairs: u64,
    /// `M_lambda` indexed by `lambda`.
    pub lambda_counts: Vec<u64>,
    /// Nonzero `lambda` with the largest `M_lambda`, smallest index on ties.
    pub best_lambda: Fe,
}

impl DotReport {
    pub fn best_count(&self) -> u64 {
        self.lambda_counts[self.best_lambda.0 as usize]
    }
}

pub fn dot_product_set(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<DotReport> {
    nonempty("E", e)?;
    nonempty("F", fs)?;
    check_points(f, e)?;
    check_points(f, fs)?;
    let q = f.q() as usize;
    let counts = e
        .par_iter()
        .map(|u| {
            let mut h = vec![0u64; q];
            for v in fs {
                h[dot3(f, &u.0, &v.0).0 as usize] += 1;
            }
            h
        })
        .reduce(|| vec![0u64; q], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(s, v)| *s += v);
            a
        });
    let best = (1..q).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a))).unwrap_or(1);
    Ok(DotReport {
        dots: (0..q).filter(|&l| counts[l] > 0).map(|l| Fe(l as u32)).collect(),
        orthogonal_pairs: counts[0],
        lambda_counts: counts,
        best_lambda: Fe(best as u32),
    })
}

/// Linear rank of a point set viewed as vectors.
pub fn linear_rank(f: &FieldSpec, pts: &[Point3]) -> usize {
    let mut rows: Vec<Vec3> = pts.iter().map(|p| p.0).filter(|v| !is_zero3(v)).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]).expect("pivot nonzero");
        let pivot = scale3(f, inv, &rows[rank]);
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let c = rows[i][col];
                rows[i] = sub3(f, &rows[i], &scale3(f, c, &pivot));
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DotLinePath {
    /// Points of `E` orthogonal to the line direction realise these distinct
    /// products, at least `k` of them.
    DistinctLambdas(Vec<Fe>),
    /// A point of `E` not orthogonal to the line direction, whose products
    /// with the marked points are pairwise distinct.
    Transversal(Point3),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotLineCheck {
    pub k: usize,
    pub line: Line3,
    pub path: DotLinePath,
    /// `|D(E, marked)|`.
    pub dot_count: usize,
    pub holds: bool,
}

/// For `k >= 2` distinct collinear marked points and `E` not inside a plane
/// through the origin, shows `|D(E, marked)| >= k` by either path.
pub fn dot_k_line_check(f: &FieldSpec, e: &[Point3], marked: &[Point3]) -> Result<DotLineCheck> {
    check_points(f, e)?;
    check_points(f, marked)?;
    let mut m = marked.to_vec();
    m.sort();
    m.dedup();
    if m.len() < 2 {
        return Err(Error::KTooSmall(m.len()));
    }
    let line = Line3::through(f, &m[0], &m[1])?;
    if !m.iter().all(|p| line.contains(f, p)) {
        return Err(Error::InvalidInput("marked points are not collinear".into()));
    }
    if linear_rank(f, e) < 3 {
        return Err(Error::ECoplanar);
    }
    let k = m.len();
    let lambdas: BTreeSet<Fe> = e
        .iter()
        .filter(|w| dot3(f, &w.0, &line.dir).is_zero())
        .map(|w| dot3(f, &w.0, &line.base.0))
        .collect();
    let path = if lambdas.len() >= k {
        DotLinePath::DistinctLambdas(lambdas.into_iter().collect())
    } else {
        let w = e
            .iter()
            .find(|w| !dot3(f, &w.0, &line.dir).is_zero())
            .ok_or_else(|| Error::InvariantFailure("spanning E has no point off the orthogonal plane".into()))?;
        DotLinePath::Transversal(*w)
    };
    let dots: BTreeSet<Fe> = e.iter().flat_map(|u| m.iter().map(move |v| (u, v))).map(|(u, v)| dot3(f, &u.0, &v.0)).collect();
    Ok(DotLineCheck {
        k,
        line,
        path,
        dot_count: dots.len(),
        holds: dots.len() >= k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotPlaneK {
    /// Max over `lambda != 0` of `per_lambda`.
    pub global: usize,
    /// Indexed by `lambda`; entry 0 is unused and left at 0.
    pub per_lambda: Vec<usize>,
}

/// Most points of `F` on the common line of two planes `u . x = lambda`,
/// `u' . x = lambda` with `u != u'` in `E`.
pub fn dot_plane_collinear_k(f: &FieldSpec, e: &[Point3], fs: &[Point3]) -> Result<DotPlaneK> {
    check_points(f, e)?;
    check_points(f, fs)?;
    let mut es: Vec<Point3> = e.iter().filter(|u| !is_zero3(&u.0)).copied().collect();
    es.sort();
    es.dedup();
    let q = f.q() as u128;
    let pairs = (es.len() as u128) * (es.len() as u128).saturating_sub(1) / 2;
    let needed = (q - 1) * pairs * fs.len() as u128;
    if needed > APPS_BUDGET {
        return Err(Error::BudgetExceeded { what: "dot-product plane collinearity", needed, budget: APPS_BUDGET });
    }
    let per: Vec<usize> = f
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&lambda| {
            if lambda.is_zero() {
                return 0;
            }
            let planes: Vec<Plane3> = es.iter().map(|u| Plane3::new(f, u.0, lambda).expect("nonzero normal")).collect();
            let mut best = 0;
            for i in 0..planes.len() {
                for j in i + 1..planes.len() {
                    if let PlaneIntersection::Line(l) = plane_intersection(f, &planes[i], &planes[j]) {
                        best = best.max(fs.iter().filter(|x| l.contains(f, x)).count());
                    }
                }
            }
            best
        })
        .collect();
    Ok(DotPlaneK { global: per.iter().copied().max().unwrap_or(0), per_lambda: per })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularSubsetReport {
    pub u1: Vec<Point3>,
    /// `|N(u)| >= 2|U|/q`.
    pub heavy: Vec<Point3>,
    /// `|N(u)| <= |U|/(2q)`.
    pub light: Vec<Point3>,
    /// `(|U|/(2q), 2|U|/q)` as reals.
    pub thresholds: (f64, f64),
    /// `|U| >= 8q^2`.
    pub hypothesis_ok: bool,
    pub size: usize,
}

/// Splits `U` by `|N(u)|`, `N(u) = {u' in U : u . u' = 1}`. Duplicates in
/// `U` are dropped.
pub fn regular_subset(f: &FieldSpec, u: &[Point3]) -> Result<RegularSubsetReport> {
    check_points(f, u)?;
    let mut us = u.to_vec();
    us.sort();
    us.dedup();
    let n = us.len() as u64;
    let q = f.q() as u64;
    let sizes: Vec<u64> = us
        .par_iter()
        .map(|a| us.iter().filter(|b| dot3(f, &a.0, &b.0) == Fe::ONE).count() as u64)
        .collect();
    let (mut u1, mut heavy, mut light) = (Vec::new(), Vec::new(), Vec::new());
    for (p, &s) in us.iter().zip(&sizes) {
        if q * s >= 2 * n {
            heavy.push(*p);
        } else if 2 * q * s <= n {
            light.push(*p);
        } else {
            u1.push(*p);
        }
    }
    Ok(RegularSubsetReport {
        u1,
        heavy,
        light,
        thresholds: (n as f64 / (2 * q) as f64, 2.0 * n as f64 / q as f64),
        hypothesis_ok: n >= 8 * q * q,
        size: us.len(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracePairReport {
    /// Class sizes `m(S)`, descending.
    pub class_sizes: Vec<u64>,
    /// `sum m(S)^2`.
    pub pair_count: u64,
    pub classes: usize,
    /// `|U|^2 / |U'|^3`; infinite when `U'` is empty.
    pub bound_value: f64,
    /// `pair_count * classes >= |U|^2`, exact.
    pub cs_holds: bool,
}

impl TracePairReport {
    pub fn ratio(&self) -> f64 {
        self.pair_count as f64 / self.bound_value
    }
}

/// Groups `u in U` by the trace `{x in U' : u . x = 1}`.
pub fn trace_pairs(f: &FieldSpec, u: &[Point3], u_prime: &[Point3]) -> Result<TracePairReport> {
    check_points(f, u)?;
    check_points(f, u_prime)?;
    let members: BTreeSet<&Point3> = u.iter().collect();
    if let Some(p) = u_prime.iter().find(|p| !members.contains(p)) {
        return Err(Error::InvalidInput(format!("U' point {:?} is not in U", p.0)));
    }
    let mut classes: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for a in u {
        let key: Vec<usize> = (0..u_prime.len()).filter(|&j| dot3(f, &a.0, &u_prime[j].0) == Fe::ONE).collect();
        *classes.entry(key).or_default() += 1;
    }
    let mut class_sizes: Vec<u64> = classes.into_values().collect();
    class_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let pair_count = class_sizes.iter().map(|m| m * m).sum();
    let n = u.len() as u128;
    Ok(TracePairReport {
        pair_count,
        classes: class_sizes.len(),
        bound_value: (u.len() as f64).powi(2) / (u_prime.len() as f64).powi(3),
        cs_holds: pair_count as u128 * class_sizes.len() as u128 >= n * n,
        class_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use proptest::prelude::*;
    use rand::seq::index::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(a: u32, b: u32, c: u32) -> Point3 {
        Point::from_indices([a, b, c])
    }

    #[test]
    fn dot_plane_k_counts_shared_line() {
        let f = make_field(5, 1).unwrap();
        // u . x = 1 and u' . x = 1 for u = e1, u' = e2 meet in x = 1, y = 1
        let e = vec![pt(1, 0, 0), pt(0, 1, 0)];
        let fs: Vec<Point3> = (0..5).map(|z| pt(1, 1, z)).chain([pt(2, 2, 2)]).collect();
        let k = dot_plane_collinear_k(&f, &e, &fs).unwrap();
        assert_eq!(k.per_lambda[1], 5);
        assert_eq!(k.per_lambda[2], 1);
        assert_eq!(k.global, 5);
    }

    fn random_points(f: &FieldSpec, n: usize, seed: u64) -> Vec<Point3> {
        let all = all_points3(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample(&mut rng, all.len(), n.min(all.len())).into_iter().map(|i| all[i]).collect()
    }

    #[test]
    fn distance_examples() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(dist(&f, &pt(0, 0, 0), &pt(1, 0, 0)).unwrap(), Fe(1));
        assert_eq!(dist(&f, &pt(2, 1, 0), &pt(2, 1, 0)).unwrap(), Fe(0));
        assert_eq!(dist(&f, &pt(0, 0, 0), &pt(1, 1, 1)).unwrap(), Fe(0));
        let e = [pt(0, 0, 0), pt(1, 0, 0)];
        let r = distance_set(&f, &e, &e).unwrap();
        assert_eq!((r.distances.clone(), r.zero_pairs), (vec![Fe(0), Fe(1)], 2));
        let all = all_points3(&f);
        assert_eq!(distance_set(&f, &all, &all).unwrap().distances.len(), 3);
        assert_eq!(distance_set(&f, &e[..1], &e[1..]).unwrap().distances.len(), 1);
        let f2 = make_field(2, 2).unwrap();
        assert!(matches!(norm3(&f2, &[Fe(1); 3]), Err(Error::EvenCharacteristic)));
    }

    #[test]
    fn bisector_examples() {
        let f = make_field(3, 1).unwrap();
        let pl = bisector_plane(&f, &pt(0, 0, 0), &pt(2, 0, 0)).unwrap();
        assert_eq!(pl, Plane3::new(&f, [Fe(1), Fe(0), Fe(0)], Fe(1)).unwrap());
        let f5 = make_field(5, 1).unwrap();
        let pl = bisector_plane(&f5, &pt(0, 0, 0), &pt(1, 1, 1)).unwrap();
        assert_eq!(pl, Plane3::new(&f5, [Fe(2); 3], Fe(3)).unwrap());
        assert!(matches!(bisector_plane(&f, &pt(1, 1, 1), &pt(1, 1, 1)), Err(Error::EqualPoints)));
        // points on a bisector are equidistant
        for u in all_points3(&f5) {
            let lhs = dist(&f5, &pt(0, 0, 0), &u).unwrap() == dist(&f5, &pt(1, 1, 1), &u).unwrap();
            assert_eq!(lhs, pl.contains(&f5, &u));
        }
    }

    #[test]
    fn bisector_collisions_on_isotropic_directions() {
        let f = make_field(3, 1).unwrap();
        let audit = bisector_audit(&f, &pt(0, 0, 0)).unwrap();
        assert!(audit.collisions.contains(&(pt(1, 1, 1), pt(2, 2, 2))));
    }

    #[test]
    fn triple_count_examples() {
        let f = make_field(3, 1).unwrap();
        let fs = all_points3(&f);
        let e = [pt(0, 0, 0)];
        let nonzero = fs.iter().filter(|x| !dist(&f, x, &e[0]).unwrap().is_zero()).count() as u64;
        assert_eq!(triple_count_t(&f, &e, &fs).unwrap(), nonzero);
        let e2 = [pt(0, 0, 0), pt(1, 0, 0)];
        let t = triple_count_t(&f, &e2, &e2).unwrap();
        assert_eq!(t, triple_count_t_oracle(&f, &e2, &e2).unwrap());
        // x=(0,0,0): u,v in {(1,0,0)}; x=(1,0,0): u,v in {(0,0,0)}
        assert_eq!(t, 2);
    }

    #[test]
    fn bisector_k_examples() {
        let f = make_field(3, 1).unwrap();
        let fs = [pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0)];
        assert_eq!(bisector_collinear_k(&f, &[pt(0, 0, 0)], &fs).unwrap(), 0);
        assert_eq!(bisector_collinear_k(&f, &[pt(0, 0, 0), pt(2, 0, 0)], &fs).unwrap(), 3);
        assert_eq!(bisector_collinear_k(&f, &[pt(0, 0, 0), pt(2, 0, 0)], &[pt(0, 1, 0)]).unwrap(), 0);
    }

    #[test]
    fn sphere_scan_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert!(sphere_line_scan(&f3, Fe(1)).unwrap().is_empty());
        let f5 = make_field(5, 1).unwrap();
        let lines = sphere_line_scan(&f5, Fe(1)).unwrap();
        let witness = Line3::new(&f5, pt(0, 0, 1), [Fe(1), Fe(2), Fe(0)]).unwrap();
        assert!(lines.contains(&witness));
        assert!(matches!(sphere_line_scan(&f3, Fe(0)), Err(Error::InvalidInput(_))));
        let f17 = make_field(17, 1).unwrap();
        assert!(matches!(sphere_line_scan(&f17, Fe(1)), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn sphere_lines_exist_on_nonsquare_radii_for_q3() {
        // the sphere x^2+y^2+z^2 = 2 over F_3 contains (1,1,0)+t(1,2,1)
        let f = make_field(3, 1).unwrap();
        let lines = sphere_line_scan(&f, Fe(2)).unwrap();
        assert_eq!(lines.len(), 8);
        for l in &lines {
            assert!(l.points(&f).iter().all(|p| dot3(&f, &p.0, &p.0) == Fe(2)));
        }
    }

    #[test]
    fn dot_examples() {
        let f = make_field(5, 1).unwrap();
        let e = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)];
        let r = dot_product_set(&f, &e, &[pt(1, 1, 1)]).unwrap();
        assert_eq!((r.dots.clone(), r.lambda_counts[1], r.orthogonal_pairs), (vec![Fe(1)], 3, 0));
        assert_eq!(r.best_lambda, Fe(1));
        let z = dot_product_set(&f, &[pt(0, 0, 0)], &e).unwrap();
        assert_eq!((z.dots.clone(), z.orthogonal_pairs), (vec![Fe(0)], 3));
    }

    #[test]
    fn dot_line_examples() {
        let f = make_field(5, 1).unwrap();
        let e = [pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 1)];
        let r = dot_k_line_check(&f, &e, &[pt(1, 0, 0), pt(2, 0, 0)]).unwrap();
        assert!(r.holds && r.dot_count >= 2);
        assert!(matches!(
            dot_k_line_check(&f, &[pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0)], &[pt(1, 0, 0), pt(2, 0, 0)]),
            Err(Error::ECoplanar)
        ));
        assert!(matches!(dot_k_line_check(&f, &e, &[pt(1, 0, 0)]), Err(Error::KTooSmall(1))));
        let f3 = make_field(3, 1).unwrap();
        let e: Vec<Point3> = all_points3(&f3).into_iter().filter(|p| p.0[2] != Fe(0)).collect();
        let marked = Line3::new(&f3, pt(0, 0, 0), [Fe(1), Fe(1), Fe(0)]).unwrap().points(&f3);
        let r = dot_k_line_check(&f3, &e, &marked).unwrap();
        assert_eq!((r.k, r.dot_count), (3, 3));
    }

    #[test]
    fn regular_subset_examples() {
        for q in [8u32, 9] {
            let f = FieldSpec::of_order(q).unwrap();
            let all = all_points3(&f);
            let r = regular_subset(&f, &all).unwrap();
            assert!(r.hypothesis_ok);
            assert_eq!(r.u1.len(), all.len() - 1);
            assert_eq!(r.light, vec![pt(0, 0, 0)]);
        }
    }

    #[test]
    fn trace_examples() {
        let f = make_field(3, 1).unwrap();
        let u: Vec<Point3> = all_points3(&f).into_iter().filter(|p| !is_zero3(&p.0)).collect();
        let r = trace_pairs(&f, &u, &[pt(1, 0, 0)]).unwrap();
        assert_eq!((r.pair_count, r.class_sizes.clone()), (370, vec![17, 9]));
        let e = trace_pairs(&f, &u, &[]).unwrap();
        assert_eq!((e.classes, e.pair_count), (1, 26 * 26));
        assert!(trace_pairs(&f, &u[1..], &[u[0]]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn chain_and_counts(seed in any::<u64>(), qi in 0usize..3, ne in 1usize..25, nf in 1usize..25) {
            let q = [3u32, 5, 7][qi];
            let f = make_field(q, 1).unwrap();
            let e = random_points(&f, ne, seed);
            let fs = random_points(&f, nf, seed ^ 0x5555);
            let c = distance_chain_check(&f, &e, &fs).unwrap();
            prop_assert!(c.holds);
            if c.hypothesis_ok { prop_assert!(c.derived_ok); }
            prop_assert_eq!(c.t, triple_count_t_oracle(&f, &e, &fs).unwrap());
            let d = dot_product_set(&f, &e, &fs).unwrap();
            prop_assert_eq!(d.lambda_counts.iter().sum::<u64>(), (ne * nf) as u64);
            let avg = (ne * nf) as u64 - d.orthogonal_pairs;
            prop_assert!(d.best_count() * (q as u64 - 1) >= avg);
            let t = trace_pairs(&f, &e, &e[..ne.min(3)]).unwrap();
            prop_assert_eq!(t.class_sizes.iter().sum::<u64>(), ne as u64);
            prop_assert!(t.cs_holds);
        }
    }
}
