//! Affine points, lines and planes over GF(q) and exact incidence counting.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{Fe, FieldSpec};

/// Oracle double loops refuse more than this many predicate evaluations.
pub const ORACLE_CAP: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<const D: usize>(pub [Fe; D]);

pub type Point2 = Point<2>;
pub type Point3 = Point<3>;

impl<const D: usize> Point<D> {
    pub fn from_indices(idx: [u32; D]) -> Self {
        Point(idx.map(Fe))
    }

    pub fn coords(&self) -> &[Fe; D] {
        &self.0
    }

    pub fn check(&self, f: &FieldSpec) -> Result<()> {
        self.0.iter().try_for_each(|&c| f.check(c))
    }
}

pub type Vec3 = [Fe; 3];

pub fn dot3(f: &FieldSpec, a: &Vec3, b: &Vec3) -> Fe {
    let s = f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1]));
    f.add(s, f.mul(a[2], b[2]))
}

pub fn add3(f: &FieldSpec, a: &Vec3, b: &Vec3) -> Vec3 {
    [f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])]
}

pub fn sub3(f: &FieldSpec, a: &Vec3, b: &Vec3) -> Vec3 {
    [f.sub(a[0], b[0]), f.sub(a[1], b[1]), f.sub(a[2], b[2])]
}

pub fn scale3(f: &FieldSpec, s: Fe, a: &Vec3) -> Vec3 {
    [f.mul(s, a[0]), f.mul(s, a[1]), f.mul(s, a[2])]
}

pub fn cross3(f: &FieldSpec, a: &Vec3, b: &Vec3) -> Vec3 {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn is_zero3(a: &Vec3) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// Scales `v` so its first nonzero coordinate is 1; returns the scale used.
fn normalize3(f: &FieldSpec, v: &Vec3) -> Option<(Vec3, Fe)> {
    let lead = v.iter().copied().find(|c| !c.is_zero())?;
    let s = f.inv(lead).ok()?;
    Some((scale3(f, s, v), s))
}

/// Every direction of F_q^3 up to scaling, first nonzero coordinate 1.
pub fn all_directions(f: &FieldSpec) -> Vec<Vec3> {
    let mut out = Vec::with_capacity((f.q() as usize).pow(2) + f.q() as usize + 1);
    for a in f.elements() {
        for b in f.elements() {
            out.push([Fe::ONE, a, b]);
        }
    }
    for b in f.elements() {
        out.push([Fe::ZERO, Fe::ONE, b]);
    }
    out.push([Fe::ZERO, Fe::ZERO, Fe::ONE]);
    out
}

pub fn all_points3(f: &FieldSpec) -> Vec<Point3> {
    let mut out = Vec::with_capacity((f.q() as usize).pow(3));
    for x in f.elements() {
        for y in f.elements() {
            for z in f.elements() {
                out.push(Point([x, y, z]));
            }
        }
    }
    out
}

pub fn all_points2(f: &FieldSpec) -> Vec<Point2> {
    f.elements()
        .flat_map(|x| f.elements().map(move |y| Point([x, y])))
        .collect()
}

/// An affine line of the plane: `y = slope*x + intercept`, or `x = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line2 {
    NonVertical { slope: Fe, intercept: Fe },
    Vertical { c: Fe },
}

impl Line2 {
    pub fn slanted(slope: Fe, intercept: Fe) -> Self {
        Line2::NonVertical { slope, intercept }
    }

    pub fn vertical(c: Fe) -> Self {
        Line2::Vertical { c }
    }

    /// True for `y = ax + b` with `a != 0`.
    pub fn is_slanted(&self) -> bool {
        matches!(self, Line2::NonVertical { slope, .. } if !slope.is_zero())
    }

    /// True for `x = c` and `y = c`.
    pub fn is_axis_parallel(&self) -> bool {
        !self.is_slanted()
    }

    pub fn contains(&self, f: &FieldSpec, p: &Point2) -> bool {
        let [x, y] = p.0;
        match *self {
            Line2::NonVertical { slope, intercept } => f.add(f.mul(slope, x), intercept) == y,
            Line2::Vertical { c } => x == c,
        }
    }

    pub fn check(&self, f: &FieldSpec) -> Result<()> {
        match *self {
            Line2::NonVertical { slope, intercept } => {
                f.check(slope)?;
                f.check(intercept)
            }
            Line2::Vertical { c } => f.check(c),
        }
    }

    /// Every line of F_q^2: q^2 non-vertical then q vertical.
    pub fn all(f: &FieldSpec) -> Vec<Line2> {
        let mut out: Vec<Line2> = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| Line2::slanted(a, b)))
            .collect();
        out.extend(f.elements().map(Line2::vertical));
        out
    }
}

/// An affine plane `{x : normal . x = rhs}`.
///
/// The stored `(normal, rhs)` is always canonical: the first nonzero normal
/// coordinate is 1. `affine_one` records that the plane was built from a dual
/// vector `a` as `a . x = 1`; it does not take part in equality.
#[derive(Clone, Copy, Debug, PartialOrd, Ord)]
pub struct Plane3 {
    normal: Vec3,
    rhs: Fe,
    affine_one: bool,
}

impl PartialEq for Plane3 {
    fn eq(&self, other: &Self) -> bool {
        self.normal == other.normal && self.rhs == other.rhs
    }
}

impl Eq for Plane3 {}

impl Hash for Plane3 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normal.hash(state);
        self.rhs.hash(state);
    }
}

impl Plane3 {
    pub fn new(f: &FieldSpec, normal: Vec3, rhs: Fe) -> Result<Self> {
        normal.iter().try_for_each(|&c| f.check(c))?;
        f.check(rhs)?;
        let (normal, s) = normalize3(f, &normal)
            .ok_or_else(|| Error::InvalidInput("plane normal is zero".into()))?;
        Ok(Plane3 {
            normal,
            rhs: f.mul(s, rhs),
            affine_one: false,
        })
    }

    /// The plane `a . x = 1`.
    pub fn dual(f: &FieldSpec, a: Vec3) -> Result<Self> {
        let mut p = Self::new(f, a, Fe::ONE)?;
        p.affine_one = true;
        Ok(p)
    }

    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn rhs(&self) -> Fe {
        self.rhs
    }

    pub fn is_affine_one(&self) -> bool {
        self.affine_one
    }

    /// The vector `a` with `self = {a . x = 1}`, when the plane misses the origin.
    pub fn dual_vector(&self, f: &FieldSpec) -> Option<Vec3> {
        let s = f.inv(self.rhs).ok()?;
        Some(scale3(f, s, &self.normal))
    }

    #[inline]
    pub fn contains(&self, f: &FieldSpec, p: &Point3) -> bool {
        dot3(f, &self.normal, &p.0) == self.rhs
    }

    pub fn contains_line(&self, f: &FieldSpec, l: &Line3) -> bool {
        self.contains(f, &l.base) && dot3(f, &self.normal, &l.dir).is_zero()
    }

    /// Every plane `a . x = 1`, `a != 0`, in index order of `a`.
    pub fn all_dual(f: &FieldSpec) -> Vec<Plane3> {
        all_points3(f)
            .into_iter()
            .filter(|p| !is_zero3(&p.0))
            .map(|p| Plane3::dual(f, p.0).expect("nonzero normal"))
            .collect()
    }
}

/// An affine line of F_q^3 in canonical form: `dir` has first nonzero
/// coordinate 1 and `base` is zero in that coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line3 {
    pub base: Point3,
    pub dir: Vec3,
}

impl Line3 {
    pub fn new(f: &FieldSpec, base: Point3, dir: Vec3) -> Result<Self> {
        let (dir, _) = normalize3(f, &dir)
            .ok_or_else(|| Error::InvalidInput("line direction is zero".into()))?;
        let i = dir.iter().position(|c| !c.is_zero()).expect("normalized");
        let shift = scale3(f, base.0[i], &dir);
        Ok(Line3 {
            base: Point(sub3(f, &base.0, &shift)),
            dir,
        })
    }

    pub fn through(f: &FieldSpec, a: &Point3, b: &Point3) -> Result<Self> {
        if a == b {
            return Err(Error::EqualPoints);
        }
        Self::new(f, *a, sub3(f, &b.0, &a.0))
    }

    pub fn contains(&self, f: &FieldSpec, p: &Point3) -> bool {
        let i = self.dir.iter().position(|c| !c.is_zero()).expect("normalized");
        // the unique candidate parameter is t = p_i
        let t = p.0[i];
        add3(f, &self.base.0, &scale3(f, t, &self.dir)) == p.0
    }

    pub fn points(&self, f: &FieldSpec) -> Vec<Point3> {
        f.elements()
            .map(|t| Point(add3(f, &self.base.0, &scale3(f, t, &self.dir))))
            .collect()
    }

    /// Every line of F_q^3, `q^2 (q^2 + q + 1)` of them.
    pub fn all(f: &FieldSpec) -> Vec<Line3> {
        let mut out = Vec::new();
        for dir in all_directions(f) {
            let i = dir.iter().position(|c| !c.is_zero()).unwrap();
            for u in f.elements() {
                for v in f.elements() {
                    let mut base = [Fe::ZERO; 3];
                    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
                    base[others[0]] = u;
                    base[others[1]] = v;
                    out.push(Line3 {
                        base: Point(base),
                        dir,
                    });
                }
            }
        }
        out
    }
}

/// Incidence between a point and a flat of matching dimension.
pub trait Flat: Sync {
    type Point: Sync;
    fn check_flat(&self, f: &FieldSpec) -> Result<()>;
    fn check_point(p: &Self::Point, f: &FieldSpec) -> Result<()>;
    fn is_incident(&self, f: &FieldSpec, p: &Self::Point) -> bool;
}

impl Flat for Line2 {
    type Point = Point2;
    fn check_flat(&self, f: &FieldSpec) -> Result<()> {
        self.check(f)
    }
    fn check_point(p: &Point2, f: &FieldSpec) -> Result<()> {
        p.check(f)
    }
    fn is_incident(&self, f: &FieldSpec, p: &Point2) -> bool {
        self.contains(f, p)
    }
}

impl Flat for Plane3 {
    type Point = Point3;
    fn check_flat(&self, f: &FieldSpec) -> Result<()> {
        self.normal.iter().try_for_each(|&c| f.check(c))?;
        f.check(self.rhs)
    }
    fn check_point(p: &Point3, f: &FieldSpec) -> Result<()> {
        p.check(f)
    }
    fn is_incident(&self, f: &FieldSpec, p: &Point3) -> bool {
        self.contains(f, p)
    }
}

/// Checked incidence predicate.
pub fn incident<F: Flat>(f: &FieldSpec, point: &F::Point, flat: &F) -> Result<bool> {
    F::check_point(point, f)?;
    flat.check_flat(f)?;
    Ok(flat.is_incident(f, point))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Oracle,
    Fast,
}

impl std::str::FromStr for CountMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(CountMethod::Oracle),
            "fast" => Ok(CountMethod::Fast),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceCount {
    pub count: u64,
    pub method: CountMethod,
}

fn validate<F: Flat>(f: &FieldSpec, points: &[F::Point], flats: &[F]) -> Result<()> {
    points.iter().try_for_each(|p| F::check_point(p, f))?;
    flats.iter().try_for_each(|l| l.check_flat(f))
}

/// The plain double loop over all (point, flat) pairs.
pub fn count_oracle<F: Flat>(f: &FieldSpec, points: &[F::Point], flats: &[F]) -> Result<u64> {
    validate(f, points, flats)?;
    let work = points.len() as u128 * flats.len() as u128;
    if work > ORACLE_CAP {
        return Err(Error::SizeCap {
            work,
            cap: ORACLE_CAP,
        });
    }
    let mut count = 0u64;
    for p in points {
        for l in flats {
            if l.is_incident(f, p) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Point-line incidences. The fast path probes, for each point and each
/// slope present in `lines`, the intercept `y - a x` in a per-slope table.
pub fn count_line_incidences(
    f: &FieldSpec,
    points: &[Point2],
    lines: &[Line2],
    method: CountMethod,
) -> Result<IncidenceCount> {
    let count = match method {
        CountMethod::Oracle => count_oracle(f, points, lines)?,
        CountMethod::Fast => {
            validate(f, points, lines)?;
            let q = f.q() as usize;
            let mut by_slope: HashMap<Fe, Vec<u32>> = HashMap::new();
            let mut vertical = vec![0u32; q];
            for l in lines {
                match *l {
                    Line2::NonVertical { slope, intercept } => {
                        by_slope.entry(slope).or_insert_with(|| vec![0; q])[intercept.0 as usize] += 1
                    }
                    Line2::Vertical { c } => vertical[c.0 as usize] += 1,
                }
            }
            let mut slopes: Vec<(Fe, Vec<u32>)> = by_slope.into_iter().collect();
            slopes.sort_by_key(|(a, _)| *a);
            points
                .par_iter()
                .map(|p| {
                    let [x, y] = p.0;
                    let slanted: u64 = slopes
                        .iter()
                        .map(|(a, table)| table[f.sub(y, f.mul(*a, x)).0 as usize] as u64)
                        .sum();
                    slanted + vertical[x.0 as usize] as u64
                })
                .sum()
        }
    };
    Ok(IncidenceCount { count, method })
}

/// Point-plane incidences; the fast path is the same double loop split
/// across threads.
pub fn count_plane_incidences(
    f: &FieldSpec,
    points: &[Point3],
    planes: &[Plane3],
    method: CountMethod,
) -> Result<IncidenceCount> {
    let count = match method {
        CountMethod::Oracle => count_oracle(f, points, planes)?,
        CountMethod::Fast => {
            validate(f, points, planes)?;
            points
                .par_iter()
                .map(|p| planes.iter().filter(|pl| pl.contains(f, p)).count() as u64)
                .sum()
        }
    };
    Ok(IncidenceCount { count, method })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Collinearity {
    pub k: usize,
    pub witness: Line3,
}

/// Lines spanned by at least two of `points` with their exact point counts.
/// Duplicate points are counted once.
pub fn spanned_lines(f: &FieldSpec, points: &[Point3]) -> HashMap<Line3, usize> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut pairs: HashMap<Line3, usize> = HashMap::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let l = Line3::through(f, a, b).expect("distinct points");
            *pairs.entry(l).or_default() += 1;
        }
    }
    // c = m(m-1)/2 pairs on a line holding m points
    pairs
        .into_iter()
        .map(|(l, c)| {
            let m = (1 + ((1 + 8 * c) as f64).sqrt().round() as usize) / 2;
            debug_assert_eq!(m * (m - 1) / 2, c);
            (l, m)
        })
        .collect()
}

/// Maximum number of collinear points among lines whose direction passes `accept`.
pub fn max_collinear_where(
    f: &FieldSpec,
    points: &[Point3],
    accept: impl Fn(&Vec3) -> bool,
) -> Result<Collinearity> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("max_collinear needs at least one point".into()))?;
    points.iter().try_for_each(|p| p.check(f))?;
    let best = spanned_lines(f, points)
        .into_iter()
        .filter(|(l, _)| accept(&l.dir))
        .max_by(|(la, ma), (lb, mb)| ma.cmp(mb).then(lb.cmp(la)));
    if let Some((witness, k)) = best {
        return Ok(Collinearity { k, witness });
    }
    let dir = all_directions(f)
        .into_iter()
        .find(|d| accept(d))
        .ok_or_else(|| Error::InvalidInput("no admissible direction".into()))?;
    Ok(Collinearity {
        k: 1,
        witness: Line3::new(f, *first, dir)?,
    })
}

pub fn max_collinear(f: &FieldSpec, points: &[Point3]) -> Result<Collinearity> {
    max_collinear_where(f, points, |_| true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneIntersection {
    Same,
    Empty,
    Line(Line3),
}

pub fn plane_intersection(f: &FieldSpec, a: &Plane3, b: &Plane3) -> PlaneIntersection {
    let dir = cross3(f, &a.normal, &b.normal);
    if is_zero3(&dir) {
        // canonical normals of parallel planes coincide
        return if a.rhs == b.rhs {
            PlaneIntersection::Same
        } else {
            PlaneIntersection::Empty
        };
    }
    // Fix the coordinate with a nonzero cross-product entry to 0 and solve the
    // remaining 2x2 system by Cramer's rule.
    let k = dir.iter().position(|c| !c.is_zero()).unwrap();
    let (i, j) = match k {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    let det = f.sub(
        f.mul(a.normal[i], b.normal[j]),
        f.mul(a.normal[j], b.normal[i]),
    );
    let inv = f.inv(det).expect("minor equals a cross-product entry");
    let xi = f.mul(
        inv,
        f.sub(f.mul(a.rhs, b.normal[j]), f.mul(a.normal[j], b.rhs)),
    );
    let xj = f.mul(
        inv,
        f.sub(f.mul(a.normal[i], b.rhs), f.mul(a.rhs, b.normal[i])),
    );
    let mut base = [Fe::ZERO; 3];
    base[i] = xi;
    base[j] = xj;
    PlaneIntersection::Line(Line3::new(f, Point(base), dir).expect("nonzero direction"))
}

/// Largest number of points of `points` on a single line lying in two
/// distinct planes of `planes` (0 when no two planes meet at a point of the set).
pub fn shared_line_max(f: &FieldSpec, points: &[Point3], planes: &[Plane3]) -> usize {
    let mut distinct = planes.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut rich: Vec<(Line3, usize)> = spanned_lines(f, points).into_iter().collect();
    rich.sort_by(|(la, ma), (lb, mb)| mb.cmp(ma).then(la.cmp(lb)));
    for (line, m) in rich {
        let holders = distinct
            .iter()
            .filter(|pl| pl.contains_line(f, &line))
            .take(2)
            .count();
        if holders == 2 {
            return m;
        }
    }
    let on_two = points.iter().any(|p| {
        distinct
            .iter()
            .filter(|pl| pl.contains(f, p))
            .take(2)
            .count()
            == 2
    });
    usize::from(on_two)
}
