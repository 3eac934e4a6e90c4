//! Counts solutions of a x + b = a' x' + b' over lines y = ax + b and
//! scalars A, then re-reads the count as point-plane incidences.
//!
//! ```text
//! cargo run --example energy_reduction
//! ```

use fq_incidence::ffield::FieldSpec;
use fq_incidence::geom::{CountMethod, Line2};
use fq_incidence::reductions::{build_point_plane_sets, count_solutions, cs_upper, derive_convention};

fn main() -> fq_incidence::Result<()> {
    let f = FieldSpec::of_order(5)?;
    println!("plane convention: {}", derive_convention(&f)?);

    let lines: Vec<Line2> = Line2::all(&f).into_iter().filter(|l| matches!(l, Line2::NonVertical { .. })).collect();
    let a: Vec<_> = f.elements().collect();
    let fast = count_solutions(&f, &lines, &a, CountMethod::Fast)?;
    let oracle = count_solutions(&f, &lines, &a, CountMethod::Oracle)?;
    println!("all {} non-vertical lines, A = F_5: {fast} solutions (oracle {oracle}, q^5 = {})", lines.len(), 5u64.pow(5));

    let some: Vec<Line2> = lines.iter().copied().step_by(3).collect();
    let small_a = &a[..3];
    let red = build_point_plane_sets(&f, &some, small_a)?;
    println!(
        "{} lines, |A| = 3: {} points, {} planes, {} solutions = incidences, k bound {} observed {:?}",
        some.len(),
        red.points3.len(),
        red.planes3.len(),
        red.solution_count,
        red.k_bound,
        red.k_observed
    );

    let cs = cs_upper(&f, &some, small_a, &a[1..4])?;
    println!("I(A x B, L) = {} <= sqrt(|A||L| E) = {:.2}: {}", cs.actual, cs.value, cs.holds);
    Ok(())
}
