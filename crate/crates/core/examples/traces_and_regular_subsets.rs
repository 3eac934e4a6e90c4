//! Neighbourhood degrees under u . u' = 1 and trace classes on a subset.
//!
//! ```text
//! cargo run --release --example traces_and_regular_subsets
//! ```

use fq_incidence::apps::{regular_subset, trace_pairs};
use fq_incidence::ffield::FieldSpec;
use fq_incidence::geom::{all_points3, is_zero3, Point};
use fq_incidence::harness::{sample_points3, trial_rng};

fn main() -> fq_incidence::Result<()> {
    for q in [8, 9] {
        let f = FieldSpec::of_order(q)?;
        let r = regular_subset(&f, &all_points3(&f))?;
        println!("q={q}, U = F_q^3: |U1| = {}, light {}, heavy {}", r.u1.len(), r.light.len(), r.heavy.len());
    }
    let f = FieldSpec::of_order(11)?;
    let u = sample_points3(&f, 8 * 121, &mut trial_rng(1, 0))?;
    let r = regular_subset(&f, &u)?;
    println!("q=11, |U| = {}: |U1| = {} (thresholds {:.1}, {:.1})", r.size, r.u1.len(), r.thresholds.0, r.thresholds.1);

    let f = FieldSpec::of_order(3)?;
    let u: Vec<_> = all_points3(&f).into_iter().filter(|p| !is_zero3(&p.0)).collect();
    for up in [vec![Point::from_indices([1, 0, 0])], vec![Point::from_indices([1, 0, 0]), Point::from_indices([0, 1, 0])]] {
        let t = trace_pairs(&f, &u, &up)?;
        println!(
            "|U'| = {}: {} classes {:?}, pairs {}, |U|^2/|U'|^3 = {}, ratio {:.3}",
            up.len(),
            t.classes,
            t.class_sizes,
            t.pair_count,
            t.bound_value,
            t.ratio()
        );
    }
    Ok(())
}
