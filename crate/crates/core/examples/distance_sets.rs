//! Distance sets, bisector planes and lines on spheres in F_q^3.
//!
//! ```text
//! cargo run --release --example distance_sets
//! ```

use fq_incidence::apps::{bisector_audit, distance_chain_check, distance_set, sphere_line_scan};
use fq_incidence::ffield::FieldSpec;
use fq_incidence::geom::{all_points3, Point};
use fq_incidence::harness::{sample_points3, trial_rng};

fn main() -> fq_incidence::Result<()> {
    let f = FieldSpec::of_order(7)?;
    let mut rng = trial_rng(3, 0);
    let e = sample_points3(&f, 40, &mut rng)?;
    let g = sample_points3(&f, 40, &mut rng)?;
    let d = distance_set(&f, &e, &g)?;
    println!("|E| = |F| = 40 in F_7^3: {} distances, {} zero-distance pairs", d.distances.len(), d.zero_pairs);

    let chain = distance_chain_check(&f, &e, &g)?;
    println!("T = {}: {} >= {} holds {}", chain.t, chain.lhs, chain.rhs, chain.holds);

    for q in [3, 5, 7] {
        let f = FieldSpec::of_order(q)?;
        let counts: Vec<String> = f
            .nonzero_elements()
            .map(|r| Ok(format!("r={}:{}", r.0, sphere_line_scan(&f, r)?.len())))
            .collect::<fq_incidence::Result<_>>()?;
        println!("q={q} (q mod 4 = {}): lines on spheres {}", f.q_mod4(), counts.join(" "));
    }

    let f = FieldSpec::of_order(3)?;
    let a = bisector_audit(&f, &Point::from_indices([0, 0, 0]))?;
    println!(
        "q=3 bisectors from the origin: {} distinct planes for {} points, {} collisions",
        a.distinct_planes,
        all_points3(&f).len() - 1,
        a.collisions.len()
    );
    if let Some((y, z)) = a.collisions.first() {
        println!("  e.g. y = {:?}, y' = {:?}", y.0.map(|c| c.0), z.0.map(|c| c.0));
    }
    Ok(())
}
