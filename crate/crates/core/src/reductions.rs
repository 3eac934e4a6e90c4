//! The energy count for `ax + b = a'x' + b'` over `L x A x L x A`, its
//! Cauchy-Schwarz consequence, and the point/plane sets in F_q^3 whose
//! incidence count equals it.

use crate::error::{Error, Result};
use crate::ffield::{Fe, FieldSpec};
use crate::geom::{
    count_line_incidences, count_plane_incidences, max_collinear_where, CountMethod, Line2,
    Plane3, Point, Point2, Point3, ORACLE_CAP,
};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Point sets above this size skip the collinearity audit.
pub const COLLINEAR_AUDIT_CAP: usize = 3000;

fn slanted_parts(lines: &[Line2]) -> Result<Vec<(Fe, Fe)>> {
    lines
        .iter()
        .map(|l| match *l {
            Line2::NonVertical { slope, intercept } => Ok((slope, intercept)),
            Line2::Vertical { .. } => Err(Error::VerticalLinePresent),
        })
        .collect()
}

fn validate(f: &FieldSpec, lines: &[Line2], a_set: &[Fe]) -> Result<Vec<(Fe, Fe)>> {
    lines.iter().try_for_each(|l| l.check(f))?;
    a_set.iter().try_for_each(|&x| f.check(x))?;
    slanted_parts(lines)
}

/// `#{(a,b,x,a',b',x') in L x A x L x A : ax + b = a'x' + b'}`, counting
/// repeated lines with multiplicity.
pub fn count_solutions(f: &FieldSpec, lines: &[Line2], a_set: &[Fe], method: CountMethod) -> Result<u64> {
    let ab = validate(f, lines, a_set)?;
    match method {
        CountMethod::Oracle => {
            let n = ab.len() as u128 * a_set.len() as u128;
            if n * n > ORACLE_CAP {
                return Err(Error::SizeCap { work: n * n, cap: ORACLE_CAP });
            }
            Ok(ab
                .par_iter()
                .map(|&(a, b)| {
                    let mut c = 0u64;
                    for &x in a_set {
                        let lhs = f.add(f.mul(a, x), b);
                        for &(a2, b2) in &ab {
                            for &x2 in a_set {
                                if lhs == f.add(f.mul(a2, x2), b2) {
                                    c += 1;
                                }
                            }
                        }
                    }
                    c
                })
                .sum())
        }
        CountMethod::Fast => {
            let mut r = vec![0u64; f.q() as usize];
            for &(a, b) in &ab {
                for &x in a_set {
                    r[f.add(f.mul(a, x), b).0 as usize] += 1;
                }
            }
            Ok(r.iter().map(|v| v * v).sum())
        }
    }
}

/// Signs of the `Y` and `Z` coefficients in `aX + sy*x'Y + sz*Z = -b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneConvention {
    pub y_sign: i8,
    pub z_sign: i8,
}

impl PlaneConvention {
    pub const VARIANTS: [PlaneConvention; 4] = [
        PlaneConvention { y_sign: -1, z_sign: 1 },
        PlaneConvention { y_sign: -1, z_sign: -1 },
        PlaneConvention { y_sign: 1, z_sign: 1 },
        PlaneConvention { y_sign: 1, z_sign: -1 },
    ];

    pub fn plane(&self, f: &FieldSpec, a: Fe, b: Fe, x2: Fe) -> Plane3 {
        let sign = |s: i8, v: Fe| if s < 0 { f.neg(v) } else { v };
        Plane3::new(f, [a, sign(self.y_sign, x2), sign(self.z_sign, Fe::ONE)], f.neg(b))
            .expect("Z coefficient is nonzero")
    }
}

impl std::fmt::Display for PlaneConvention {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |v: i8| if v < 0 { '-' } else { '+' };
        write!(out, "aX {}x'Y {}Z = -b", s(self.y_sign), s(self.z_sign))
    }
}

/// The first sign variant for which `(x, a', b')` lies on the plane of
/// `(a, b, x')` exactly when `ax + b = a'x' + b'`, checked on every tuple
/// drawn from the first three field elements.
pub fn derive_convention(f: &FieldSpec) -> Result<PlaneConvention> {
    let probe: Vec<Fe> = f.elements().take(3).collect();
    let tuples: Vec<[Fe; 6]> = (0..probe.len().pow(6))
        .map(|mut i| {
            let mut t = [Fe::ZERO; 6];
            for slot in &mut t {
                *slot = probe[i % probe.len()];
                i /= probe.len();
            }
            t
        })
        .collect();
    PlaneConvention::VARIANTS
        .into_iter()
        .find(|conv| {
            tuples.iter().all(|&[a, b, x, a2, b2, x2]| {
                let related = f.add(f.mul(a, x), b) == f.add(f.mul(a2, x2), b2);
                conv.plane(f, a, b, x2).contains(f, &Point([x, a2, b2])) == related
            })
        })
        .ok_or_else(|| Error::InvariantFailure("no plane sign convention matches the energy relation".into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionOutput {
    /// `(x, a', b')` for `x in A`, `(a', b') in L`.
    pub points3: Vec<Point3>,
    /// One plane per `(a, b, x')`.
    pub planes3: Vec<Plane3>,
    /// `max{|A|, |L_x|}`.
    pub k_bound: usize,
    pub solution_count: u64,
    pub convention: PlaneConvention,
    /// `L` or `A` contained repeats.
    pub duplicates: bool,
    /// Most points of `points3` on one non-vertical line, when audited.
    pub k_observed: Option<usize>,
}

impl ReductionOutput {
    pub fn k_ok(&self) -> Option<bool> {
        self.k_observed.map(|k| k <= self.k_bound)
    }
}

pub fn build_point_plane_sets(f: &FieldSpec, lines: &[Line2], a_set: &[Fe]) -> Result<ReductionOutput> {
    let ab = validate(f, lines, a_set)?;
    let convention = derive_convention(f)?;
    let points3: Vec<Point3> = a_set
        .iter()
        .flat_map(|&x| ab.iter().map(move |&(a2, b2)| Point([x, a2, b2])))
        .collect();
    let planes3: Vec<Plane3> = ab
        .iter()
        .flat_map(|&(a, b)| a_set.iter().map(move |&x2| (a, b, x2)))
        .map(|(a, b, x2)| convention.plane(f, a, b, x2))
        .collect();
    let solution_count = count_solutions(f, lines, a_set, CountMethod::Fast)?;
    let incidences = count_plane_incidences(f, &points3, &planes3, CountMethod::Fast)?.count;
    if incidences != solution_count {
        return Err(Error::InvariantFailure(format!(
            "reduction incidences {incidences} != solutions {solution_count}"
        )));
    }
    let slopes: BTreeSet<Fe> = ab.iter().map(|&(a, _)| a).collect();
    let distinct_lines: BTreeSet<&Line2> = lines.iter().collect();
    let distinct_a: BTreeSet<Fe> = a_set.iter().copied().collect();
    let duplicates = distinct_lines.len() != lines.len() || distinct_a.len() != a_set.len();
    let vertical = [Fe::ZERO, Fe::ZERO, Fe::ONE];
    let k_observed = if points3.is_empty() || points3.len() > COLLINEAR_AUDIT_CAP {
        None
    } else {
        Some(max_collinear_where(f, &points3, |d| *d != vertical)?.k)
    };
    Ok(ReductionOutput {
        points3,
        planes3,
        k_bound: a_set.len().max(slopes.len()),
        solution_count,
        convention,
        duplicates,
        k_observed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsUpper {
    /// `I(A x B, L)`.
    pub actual: u64,
    pub solutions: u64,
    /// `|B|^{1/2} * solutions^{1/2}`.
    pub value: f64,
    /// `actual^2 <= |B| * solutions`, checked in integers.
    pub holds: bool,
}

pub fn cs_upper(f: &FieldSpec, lines: &[Line2], a_set: &[Fe], b_set: &[Fe]) -> Result<CsUpper> {
    b_set.iter().try_for_each(|&y| f.check(y))?;
    let solutions = count_solutions(f, lines, a_set, CountMethod::Fast)?;
    let grid: Vec<Point2> = a_set
        .iter()
        .flat_map(|&x| b_set.iter().map(move |&y| Point([x, y])))
        .collect();
    let actual = count_line_incidences(f, &grid, lines, CountMethod::Fast)?.count;
    let nb = b_set.len() as u128;
    Ok(CsUpper {
        actual,
        solutions,
        value: (nb as f64).sqrt() * (solutions as f64).sqrt(),
        holds: (actual as u128).pow(2) <= nb * solutions as u128,
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

    fn random_lines(f: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Line2> {
        let q = f.q() as usize;
        sample(rng, q * q, n)
            .into_iter()
            .map(|i| Line2::slanted(Fe((i / q) as u32), Fe((i % q) as u32)))
            .collect()
    }

    fn random_set(f: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        sample(rng, f.q() as usize, n).into_iter().map(|i| Fe(i as u32)).collect()
    }

    #[test]
    fn count_examples() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (7, 1)] {
            let f = make_field(p, n).unwrap();
            let l = [Line2::slanted(Fe::ONE, Fe::ZERO)];
            for m in [CountMethod::Oracle, CountMethod::Fast] {
                assert_eq!(count_solutions(&f, &l, &[Fe(0), Fe(1)], m).unwrap(), 2);
            }
        }
        for q in [3u32, 5] {
            let f = make_field(q, 1).unwrap();
            let all: Vec<Line2> = Line2::all(&f).into_iter().filter(|l| !matches!(l, Line2::Vertical { .. })).collect();
            let a: Vec<Fe> = f.elements().collect();
            let want = (q as u64).pow(5);
            assert_eq!(count_solutions(&f, &all, &a, CountMethod::Fast).unwrap(), want);
            assert_eq!(count_solutions(&f, &all, &a, CountMethod::Oracle).unwrap(), want);
        }
        let f = make_field(5, 1).unwrap();
        assert!(matches!(
            count_solutions(&f, &[Line2::vertical(Fe(1))], &[Fe(0)], CountMethod::Fast),
            Err(Error::VerticalLinePresent)
        ));
    }

    #[test]
    fn convention_is_the_sign_flipped_variant() {
        for (p, n) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let f = make_field(p, n).unwrap();
            assert_eq!(derive_convention(&f).unwrap(), PlaneConvention { y_sign: -1, z_sign: -1 });
        }
        // the literal (-Y, +Z) reading fails already at q = 3
        let f = make_field(3, 1).unwrap();
        let literal = PlaneConvention { y_sign: -1, z_sign: 1 };
        let pl = literal.plane(&f, Fe(1), Fe(1), Fe(0));
        // a=1, b=1, x'=0 vs (x, a', b') = (0, 0, 1): 0+1 = 0+1 but not on the plane
        assert!(!pl.contains(&f, &Point([Fe(0), Fe(0), Fe(1)])));
    }

    #[test]
    fn build_examples() {
        let f = make_field(5, 1).unwrap();
        let out = build_point_plane_sets(&f, &[Line2::slanted(Fe(1), Fe(0))], &[Fe(0)]).unwrap();
        assert_eq!((out.points3.len(), out.planes3.len(), out.solution_count), (1, 1, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lines = random_lines(&f, 4, &mut rng);
        let a = random_set(&f, 3, &mut rng);
        let out = build_point_plane_sets(&f, &lines, &a).unwrap();
        let i = count_plane_incidences(&f, &out.points3, &out.planes3, CountMethod::Oracle).unwrap().count;
        assert_eq!(i, count_solutions(&f, &lines, &a, CountMethod::Oracle).unwrap());
        let lines = [Line2::slanted(Fe(1), Fe(0)), Line2::slanted(Fe(2), Fe(0)), Line2::slanted(Fe(2), Fe(1))];
        let out = build_point_plane_sets(&f, &lines, &[Fe(0), Fe(1), Fe(3)]).unwrap();
        assert_eq!(out.k_bound, 3);
        assert_eq!(out.k_ok(), Some(true));
        assert!(!out.duplicates);
        let dup = build_point_plane_sets(&f, &[lines[0], lines[0]], &[Fe(0)]).unwrap();
        assert!(dup.duplicates);
        assert_eq!(dup.solution_count, 4);
    }

    #[test]
    fn cs_upper_examples() {
        let f = make_field(5, 1).unwrap();
        let l = [Line2::slanted(Fe(1), Fe(0))];
        let e = cs_upper(&f, &l, &[Fe(0), Fe(1)], &[]).unwrap();
        assert_eq!((e.actual, e.value), (0, 0.0));
        let b: Vec<Fe> = f.elements().collect();
        let r = cs_upper(&f, &l, &[Fe(0), Fe(1)], &b).unwrap();
        assert_eq!(r.actual, 2);
        assert!((r.value - 10f64.sqrt()).abs() < 1e-12);
        assert!(r.holds);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn reduction_identity(seed in any::<u64>(), qi in 0usize..4, nl in 1usize..14, na in 1usize..5) {
            let q = [3u32, 5, 7, 9][qi];
            let f = FieldSpec::of_order(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lines = random_lines(&f, nl.min((q * q) as usize), &mut rng);
            let a = random_set(&f, na.min(q as usize), &mut rng);
            let fast = count_solutions(&f, &lines, &a, CountMethod::Fast).unwrap();
            prop_assert_eq!(fast, count_solutions(&f, &lines, &a, CountMethod::Oracle).unwrap());
            prop_assert!(fast >= (lines.len() * a.len()) as u64);
            let out = build_point_plane_sets(&f, &lines, &a).unwrap();
            let i = count_plane_incidences(&f, &out.points3, &out.planes3, CountMethod::Oracle).unwrap().count;
            prop_assert_eq!(i, fast);
            prop_assert_eq!(out.k_ok(), Some(true));
            let b = random_set(&f, (seed % q as u64) as usize, &mut rng);
            prop_assert!(cs_upper(&f, &lines, &a, &b).unwrap().holds);
        }
    }
}
