//! Closed-form incidence bounds, their hypothesis checks, and regime
//! comparison.
//!
//! Bounds are real-valued. An integer count is judged against a bound with a
//! relative tolerance of [`REL_TOL`] on the right-hand side. Constants hidden
//! by `<<` default to [`DEFAULT_C`]; the only printed constant is the 2 in the
//! point-plane Vinh bound.

use crate::error::{Error, Result};

pub const REL_TOL: f64 = 1e-9;
pub const DEFAULT_C: f64 = 2.0;

/// `actual <= rhs` with relative slack `REL_TOL` on the right.
pub fn le_tol(actual: f64, rhs: f64) -> bool {
    actual <= rhs + REL_TOL * rhs.abs().max(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis {
    pub name: &'static str,
    pub ok: bool,
}

fn hyp(name: &'static str, ok: bool) -> Hypothesis {
    Hypothesis { name, ok }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub bound_name: &'static str,
    pub actual: Option<u64>,
    /// Sum of `terms`.
    pub value: f64,
    pub terms: Vec<(&'static str, f64)>,
    pub hypotheses: Vec<Hypothesis>,
}

impl BoundReport {
    fn new(bound_name: &'static str, terms: Vec<(&'static str, f64)>, hypotheses: Vec<Hypothesis>) -> Self {
        let value = terms.iter().map(|(_, v)| v).sum();
        BoundReport {
            bound_name,
            actual: None,
            value,
            terms,
            hypotheses,
        }
    }

    pub fn with_actual(mut self, actual: u64) -> Self {
        self.actual = Some(actual);
        self
    }

    pub fn hypotheses_ok(&self) -> bool {
        self.hypotheses.iter().all(|h| h.ok)
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    /// `actual / value`; zero when both vanish.
    pub fn ratio(&self) -> Option<f64> {
        let a = self.actual? as f64;
        Some(if self.value == 0.0 {
            if a == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            a / self.value
        })
    }

    /// `actual <= c * value` within tolerance.
    pub fn satisfied(&self, c: f64) -> Option<bool> {
        Some(le_tol(self.actual? as f64, c * self.value))
    }
}

/// `|P||L|/q + C sqrt(q |P||L|)`; the second term is the allowed deviation.
pub fn eval_vinh_line(q: f64, n_points: f64, n_lines: f64, c: f64) -> BoundReport {
    BoundReport::new(
        "vinh_line",
        vec![
            ("main", n_points * n_lines / q),
            ("deviation", c * (q * n_points * n_lines).sqrt()),
        ],
        vec![],
    )
}

/// The measured constant `|I - |P||L|/q| / sqrt(q |P||L|)`.
pub fn vinh_line_constant(q: f64, n_points: f64, n_lines: f64, actual: u64) -> f64 {
    let scale = (q * n_points * n_lines).sqrt();
    if scale == 0.0 {
        return 0.0;
    }
    (actual as f64 - n_points * n_lines / q).abs() / scale
}

/// `min{|P|^{1/2}|L| + |P|, |P||L|^{1/2} + |L|}`.
pub fn eval_cs_line(n_points: f64, n_lines: f64) -> BoundReport {
    let left = n_points.sqrt() * n_lines + n_points;
    let right = n_points * n_lines.sqrt() + n_lines;
    let terms = if left <= right {
        vec![("sqrt_points_lines", n_points.sqrt() * n_lines), ("points", n_points)]
    } else {
        vec![("points_sqrt_lines", n_points * n_lines.sqrt()), ("lines", n_lines)]
    };
    BoundReport::new("cs_line", terms, vec![])
}

/// Sizes for the Cartesian point-line bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineParams {
    pub q: f64,
    pub alpha: f64,
    pub lines: f64,
    /// `|L_x|`, the number of distinct slopes.
    pub slopes: f64,
    pub a: f64,
    pub b: f64,
}

/// Sizes for the point-plane bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneParams {
    pub q: f64,
    pub alpha: f64,
    pub points: f64,
    pub planes: f64,
    /// Collinearity cap `k` for the light-lines bound.
    pub k: Option<f64>,
    /// Whether no line holding `k` points lies in two of the planes.
    pub no_k_rich_shared_line: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegimeParams {
    Line(LineParams),
    Plane(PlaneParams),
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("alpha = {alpha} is outside (0, 1)")))
    }
}

impl RegimeParams {
    pub fn validate(&self) -> Result<()> {
        let (alpha, sizes): (f64, Vec<f64>) = match self {
            RegimeParams::Line(p) => (p.alpha, vec![p.q, p.lines, p.slopes, p.a, p.b]),
            RegimeParams::Plane(p) => (p.alpha, vec![p.q, p.points, p.planes, p.k.unwrap_or(1.0)]),
        };
        check_alpha(alpha)?;
        if sizes.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return Err(Error::InvalidInput("sizes must be finite and nonnegative".into()));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        match self {
            RegimeParams::Line(p) => p.alpha,
            RegimeParams::Plane(p) => p.alpha,
        }
    }

    pub fn q(&self) -> f64 {
        match self {
            RegimeParams::Line(p) => p.q,
            RegimeParams::Plane(p) => p.q,
        }
    }
}

/// The Cartesian line bound
/// `|L||A||B|^{1/2} q^{-alpha/2} + q^alpha (|L||A||B|)^{1/2}` (+ `2|A||B|`
/// when axis-parallel lines are allowed), under
/// `|L||A| > q^alpha max{|A|, |L_x|}`.
pub fn eval_thm_line(p: &LineParams, with_axis_lines: bool) -> BoundReport {
    let qa = p.q.powf(p.alpha);
    let mut terms = vec![
        ("rich", p.lines * p.a * p.b.sqrt() / p.q.powf(p.alpha / 2.0)),
        ("light", qa * (p.lines * p.a * p.b).sqrt()),
    ];
    if with_axis_lines {
        terms.push(("axis", 2.0 * p.a * p.b));
    }
    let name = if with_axis_lines { "thm_line_axis" } else { "thm_line" };
    BoundReport::new(
        name,
        terms,
        vec![
            hyp("alpha_in_unit_interval", p.alpha > 0.0 && p.alpha < 1.0),
            hyp("lines_times_a_gt_q_alpha_max", p.lines * p.a > qa * p.a.max(p.slopes)),
        ],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneBound {
    Vinh,
    Cs,
    Thm13ByPlanes,
    Thm13ByPoints,
    Thm14,
}

impl PlaneBound {
    pub const ALL: [PlaneBound; 5] = [
        PlaneBound::Vinh,
        PlaneBound::Cs,
        PlaneBound::Thm13ByPlanes,
        PlaneBound::Thm13ByPoints,
        PlaneBound::Thm14,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlaneBound::Vinh => "vinh_plane",
            PlaneBound::Cs => "cs_plane",
            PlaneBound::Thm13ByPlanes => "thm13_by_planes",
            PlaneBound::Thm13ByPoints => "thm13_by_points",
            PlaneBound::Thm14 => "thm14",
        }
    }
}

pub fn eval_plane_bounds(p: &PlaneParams, which: PlaneBound) -> BoundReport {
    let (q, np, npl) = (p.q, p.points, p.planes);
    let qa = q.powf(p.alpha);
    let alpha_ok = hyp("alpha_in_unit_interval", p.alpha > 0.0 && p.alpha < 1.0);
    match which {
        PlaneBound::Vinh => BoundReport::new(
            which.name(),
            vec![("main", np * npl / q), ("deviation", 2.0 * q * (np * npl).sqrt())],
            vec![],
        ),
        PlaneBound::Cs => {
            let left = q.sqrt() * np.sqrt() * npl + np;
            let right = q.sqrt() * np * npl.sqrt() + npl;
            let terms = if left <= right {
                vec![("sqrt_q_points_planes", q.sqrt() * np.sqrt() * npl), ("points", np)]
            } else {
                vec![("sqrt_q_planes_points", q.sqrt() * np * npl.sqrt()), ("planes", npl)]
            };
            BoundReport::new(which.name(), terms, vec![])
        }
        PlaneBound::Thm13ByPlanes => BoundReport::new(
            which.name(),
            vec![("main", np * npl / qa), ("rich", npl * qa * qa)],
            vec![alpha_ok, hyp("planes_ge_2q_1_alpha", npl >= 2.0 * q * qa)],
        ),
        PlaneBound::Thm13ByPoints => BoundReport::new(
            which.name(),
            vec![("main", np * npl / qa), ("rich", np * qa * qa)],
            vec![alpha_ok, hyp("points_ge_2q_1_alpha", np >= 2.0 * q * qa)],
        ),
        PlaneBound::Thm14 => BoundReport::new(
            which.name(),
            vec![("main", np * npl / qa), ("rich", np * qa * qa)],
            vec![
                alpha_ok,
                hyp("points_ge_2k_q_alpha", p.k.is_some_and(|k| np >= 2.0 * k * qa)),
                hyp("no_k_rich_shared_line", p.no_k_rich_shared_line.unwrap_or(false)),
            ],
        ),
    }
}

/// Lower bound `max{k, q^alpha}` when `|E| >= q^{3 alpha}`, else
/// `max{k, |E| / q^{2 alpha}}`, for distance and dot-product sets.
pub fn eval_set_lower(q: f64, alpha: f64, n_e: f64, k: f64) -> BoundReport {
    let qa = q.powf(alpha);
    let (branch, main) = if n_e >= qa.powi(3) {
        ("q_alpha", qa)
    } else {
        ("e_over_q_2alpha", n_e / (qa * qa))
    };
    let terms = if k >= main { vec![("k", k)] } else { vec![(branch, main)] };
    BoundReport::new("set_lower", terms, vec![hyp("alpha_in_unit_interval", alpha > 0.0 && alpha < 1.0)])
}

/// The earlier three-range distance-set bound in F_q^3, for comparison only.
pub fn eval_koh_sun(q: f64, n_e: f64, n_f: f64) -> BoundReport {
    let d = 3.0;
    let value = if n_e < q.powf((d - 1.0) / 2.0) {
        q.min(n_e * n_f * q.powf(-(d - 1.0)))
    } else if n_e <= q.powf((d + 1.0) / 2.0) {
        q.min(n_f * q.powf(-(d - 1.0) / 2.0))
    } else {
        q.min(n_e * n_f * q.powf(-d))
    };
    BoundReport::new("koh_sun", vec![("value", value)], vec![])
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegimeReport {
    pub params: RegimeParams,
    pub bounds: Vec<BoundReport>,
    pub range_flags: Vec<(&'static str, bool)>,
    /// Name of the smallest bound whose hypotheses hold.
    pub winner: &'static str,
    /// Hypotheses of the theorem the configuration targets.
    pub hypotheses_ok: bool,
}

impl RegimeReport {
    pub fn bound(&self, name: &str) -> Option<&BoundReport> {
        self.bounds.iter().find(|b| b.bound_name == name)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.range_flags.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

/// Smallest bound among those whose hypotheses hold.
fn arg_min(bounds: &[BoundReport]) -> &'static str {
    bounds
        .iter()
        .filter(|b| b.hypotheses_ok())
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .map_or("", |b| b.bound_name)
}

/// Evaluates every applicable bound and the improvement-range conditions.
pub fn regime_report(params: &RegimeParams) -> Result<RegimeReport> {
    params.validate()?;
    match params {
        RegimeParams::Line(p) => {
            let qa = p.q.powf(p.alpha);
            let la = p.lines * p.a;
            let thm = eval_thm_line(p, false);
            let bounds = vec![
                eval_vinh_line(p.q, p.a * p.b, p.lines, DEFAULT_C),
                eval_cs_line(p.a * p.b, p.lines),
                thm.clone(),
            ];
            let lower = qa * p.a.max(p.slopes) < la;
            let mut flags = vec![
                ("r1_alpha_lt_half", p.alpha < 0.5),
                ("r1_hyp_lower", lower),
                ("r1_la_lt_q3a", la < qa.powi(3)),
                ("r1_l_gt_q2a", p.lines > qa * qa),
                ("r1_ab_gt_l_q2a", p.a * p.b > p.lines * qa * qa),
                ("r2_hyp_lower", lower),
                ("r2_la_gt_q3a", la > qa.powi(3)),
                ("r2_la_lt_q1a", la < p.q * qa),
                ("r2_a_lt_qa", p.a < qa),
                ("r2_l_lt_qa_b", p.lines < qa * p.b),
            ];
            let in1 = flags.iter().filter(|(n, _)| n.starts_with("r1_")).all(|(_, v)| *v);
            let in2 = flags.iter().filter(|(n, _)| n.starts_with("r2_")).all(|(_, v)| *v);
            flags.push(("in_range_1", in1));
            flags.push(("in_range_2", in2));
            Ok(RegimeReport {
                params: *params,
                winner: arg_min(&bounds),
                hypotheses_ok: thm.hypotheses_ok(),
                bounds,
                range_flags: flags,
            })
        }
        RegimeParams::Plane(p) => {
            let (q, np, npl) = (p.q, p.points, p.planes);
            let qa = q.powf(p.alpha);
            let mut which = vec![
                PlaneBound::Vinh,
                PlaneBound::Cs,
                PlaneBound::Thm13ByPlanes,
                PlaneBound::Thm13ByPoints,
            ];
            if p.k.is_some() {
                which.push(PlaneBound::Thm14);
            }
            let bounds: Vec<BoundReport> = which.iter().map(|&w| eval_plane_bounds(p, w)).collect();
            let hypotheses_ok = if p.k.is_some() {
                bounds.last().unwrap().hypotheses_ok()
            } else {
                bounds[2].hypotheses_ok() || bounds[3].hypotheses_ok()
            };
            let mut flags = vec![
                ("r1_p_gt_q3a", np > qa.powi(3)),
                ("r1_p_lt_q1_2a", np < q * qa * qa),
                ("r1_pi_gt_q1_a", npl > q * qa),
                ("r1_pi_lt_q1_2a", npl < q * qa * qa),
                ("r1_ppi_lt_q2_2a", np * npl < q * q * qa * qa),
                ("r1_ppi_lt_q4", np * npl < q.powi(4)),
                ("r1_alpha_lt_half", p.alpha < 0.5),
                ("r2_p_gt_q4a_1", np > qa.powi(4) / q),
                ("r2_p_lt_q3a", np < qa.powi(3)),
                ("r2_pi_gt_q1_a", npl > q * qa),
                (
                    "r2_pi_lt_min",
                    npl < (np * np * q / qa.powi(4)).min(np * q * q / qa.powi(4)),
                ),
                ("r2_ppi_lt_q4", np * npl < q.powi(4)),
            ];
            let in1 = flags.iter().filter(|(n, _)| n.starts_with("r1_")).all(|(_, v)| *v);
            let in2 = flags.iter().filter(|(n, _)| n.starts_with("r2_")).all(|(_, v)| *v);
            flags.push(("in_range_1", in1));
            flags.push(("in_range_2", in2));
            Ok(RegimeReport {
                params: *params,
                winner: arg_min(&bounds),
                hypotheses_ok,
                bounds,
                range_flags: flags,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn vinh_line_examples() {
        let r = eval_vinh_line(5.0, 25.0, 25.0, 1.0).with_actual(125);
        assert!(close(r.term("main").unwrap(), 125.0));
        assert_eq!(vinh_line_constant(5.0, 25.0, 25.0, 125), 0.0);
        let z = eval_vinh_line(7.0, 0.0, 40.0, 2.0);
        assert_eq!(z.value, 0.0);
    }

    #[test]
    fn cs_line_examples() {
        let n = 49.0;
        assert!(close(eval_cs_line(n, n).value, n.powf(1.5) + n));
        for nl in [1.0, 5.0, 100.0] {
            assert!(eval_cs_line(1.0, nl).value <= nl + 1.0);
        }
    }

    #[test]
    fn thm_line_examples() {
        let p = LineParams { q: 9.0, alpha: 0.5, lines: 10.0, slopes: 3.0, a: 4.0, b: 0.0 };
        assert_eq!(eval_thm_line(&p, false).value, 0.0);
        assert_eq!(eval_thm_line(&p, true).value, 0.0);
        // preset line-2 nominal sizes
        let q: f64 = 1e6;
        let p = LineParams {
            q,
            alpha: 0.4,
            lines: q,
            slopes: q.powf(0.8),
            a: q.powf(4.0 / 15.0),
            b: q.powf(0.75),
        };
        let r = eval_thm_line(&p, false);
        let expected = q * q.powf(4.0 / 15.0) * q.powf(0.375) / q.powf(0.2) + q.powf(0.4) * (q * q.powf(4.0 / 15.0) * q.powf(0.75)).sqrt();
        assert!(close(r.value, expected));
        // |L||A| = q^{19/15} > q^{2/5} q^{4/5} = q^{6/5}
        assert!(r.hypotheses_ok());
        let axis = eval_thm_line(&p, true);
        assert!(close(axis.value - r.value, 2.0 * p.a * p.b));
    }

    #[test]
    fn plane_bound_examples() {
        let p = PlaneParams { q: 3.0, alpha: 0.5, points: 27.0, planes: 26.0, k: None, no_k_rich_shared_line: None };
        let v = eval_plane_bounds(&p, PlaneBound::Vinh).with_actual(234);
        assert!(close(v.term("main").unwrap(), 234.0));
        assert!(close(v.value, 234.0 + 6.0 * (26.0f64 * 27.0).sqrt()));
        assert_eq!(v.satisfied(1.0), Some(true));
        let zero = PlaneParams { points: 0.0, ..p };
        for w in PlaneBound::ALL {
            let r = eval_plane_bounds(&zero, w);
            let planes_only = r.terms.iter().all(|(n, v)| *v == 0.0 || n.contains("planes") || *n == "rich");
            assert!(r.value == 0.0 || planes_only, "{w:?} {r:?}");
        }
        let light = PlaneParams { k: Some(3.0), no_k_rich_shared_line: Some(true), points: 40.0, ..p };
        let r = eval_plane_bounds(&light, PlaneBound::Thm14);
        assert!(r.hypotheses_ok());
        let r = eval_plane_bounds(&PlaneParams { no_k_rich_shared_line: None, ..light }, PlaneBound::Thm14);
        assert!(!r.hypotheses_ok());
    }

    #[test]
    fn regime_line_example_one_flags_hypothesis() {
        let q: f64 = 1e12;
        let p = RegimeParams::Line(LineParams {
            q,
            alpha: 0.25,
            lines: q.powf(5.0 / 8.0),
            slopes: q.sqrt(),
            a: q.powf(1.0 / 12.0),
            b: q.powf(2.0 / 3.0),
        });
        let r = regime_report(&p).unwrap();
        assert!(!r.hypotheses_ok);
        assert_eq!(r.flag("r1_hyp_lower"), Some(false));
        assert_eq!(r.flag("r1_la_lt_q3a"), Some(true));
        assert_eq!(r.flag("in_range_1"), Some(false));
    }

    #[test]
    fn regime_plane_example() {
        let q: f64 = 1e6;
        let p = RegimeParams::Plane(PlaneParams {
            q,
            alpha: 1.0 / 3.0,
            points: q.powf(1.1),
            planes: q.powf(1.5),
            k: None,
            no_k_rich_shared_line: None,
        });
        let r = regime_report(&p).unwrap();
        assert_eq!(r.flag("r1_p_gt_q3a"), Some(true));
        assert_eq!(r.flag("r1_pi_gt_q1_a"), Some(true));
        assert!(r.hypotheses_ok);
        assert_eq!(r.winner, "thm13_by_planes");
    }

    #[test]
    fn regime_degenerate_cs_wins() {
        for q in [3.0, 5.0, 101.0] {
            for alpha in [0.1, 0.5, 0.9] {
                let p = RegimeParams::Line(LineParams { q, alpha, lines: 1.0, slopes: 1.0, a: 1.0, b: 1.0 });
                assert_eq!(regime_report(&p).unwrap().winner, "cs_line");
            }
        }
        let bad = RegimeParams::Line(LineParams { q: 3.0, alpha: 1.0, lines: 1.0, slopes: 1.0, a: 1.0, b: 1.0 });
        assert!(regime_report(&bad).is_err());
    }

    #[test]
    fn set_lower_and_koh_sun() {
        let r = eval_set_lower(8.0, 1.0 / 3.0, 8.0, 0.0);
        assert!(close(r.value, 2.0));
        let r = eval_set_lower(8.0, 1.0 / 3.0, 4.0, 0.0);
        assert!(close(r.value, 1.0));
        assert!(close(eval_set_lower(8.0, 1.0 / 3.0, 4.0, 3.0).value, 3.0));
        assert!(close(eval_koh_sun(9.0, 2.0, 81.0).value, 2.0));
        assert!(close(eval_koh_sun(9.0, 20.0, 81.0).value, 9.0));
        assert!(close(eval_koh_sun(9.0, 200.0, 81.0).value, 9.0f64.min(200.0 * 81.0 / 729.0)));
    }

    proptest! {
        #[test]
        fn evaluators_monotone(q in 2.0f64..200.0, alpha in 0.01f64..0.99,
                               a in 0.0f64..100.0, b in 0.0f64..100.0, c in 0.0f64..100.0, d in 0.0f64..100.0,
                               bump in 0.0f64..50.0, which in 0usize..4) {
            let base = LineParams { q, alpha, lines: a, slopes: b, a: c, b: d };
            let mut up = base;
            match which { 0 => up.lines += bump, 1 => up.slopes += bump, 2 => up.a += bump, _ => up.b += bump }
            for axis in [false, true] {
                prop_assert!(eval_thm_line(&up, axis).value + 1e-9 >= eval_thm_line(&base, axis).value);
            }
            prop_assert!(eval_cs_line(a + bump, b).value + 1e-9 >= eval_cs_line(a, b).value);
            prop_assert!(eval_cs_line(a, b + bump).value + 1e-9 >= eval_cs_line(a, b).value);
            prop_assert!(eval_vinh_line(q, a + bump, b, 2.0).value + 1e-9 >= eval_vinh_line(q, a, b, 2.0).value);
            let pp = PlaneParams { q, alpha, points: a, planes: b, k: Some(1.0), no_k_rich_shared_line: Some(true) };
            for w in PlaneBound::ALL {
                let v = eval_plane_bounds(&pp, w).value;
                let more_points = PlaneParams { points: a + bump, ..pp };
                let more_planes = PlaneParams { planes: b + bump, ..pp };
                prop_assert!(eval_plane_bounds(&more_points, w).value + 1e-9 >= v);
                prop_assert!(eval_plane_bounds(&more_planes, w).value + 1e-9 >= v);
            }
        }

        #[test]
        fn winner_is_arg_min(q in 2.0f64..500.0, alpha in 0.01f64..0.99, a in 1.0f64..50.0, b in 1.0f64..50.0, c in 1.0f64..50.0, d in 1.0f64..50.0) {
            for p in [
                RegimeParams::Line(LineParams { q, alpha, lines: a, slopes: b, a: c, b: d }),
                RegimeParams::Plane(PlaneParams { q, alpha, points: a * c, planes: b * d, k: Some(2.0), no_k_rich_shared_line: Some(true) }),
            ] {
                let r = regime_report(&p).unwrap();
                let min = r.bounds.iter().filter(|b| b.hypotheses_ok()).map(|b| b.value).fold(f64::INFINITY, f64::min);
                prop_assert_eq!(r.bound(r.winner).unwrap().value, min);
                for b in &r.bounds {
                    let s: f64 = b.terms.iter().map(|t| t.1).sum();
                    prop_assert!((s - b.value).abs() <= 1e-9 * b.value.max(1.0));
                }
            }
        }
    }
}
