//! Dot-product sets and the collinear-points lower bound.
//!
//! ```text
//! cargo run --example dot_products
//! ```

use fq_incidence::apps::{dot_k_line_check, dot_product_set, DotLinePath};
use fq_incidence::ffield::FieldSpec;
use fq_incidence::geom::{Line3, Point};
use fq_incidence::harness::{sample_points3, trial_rng};

fn main() -> fq_incidence::Result<()> {
    let f = FieldSpec::of_order(11)?;
    let mut rng = trial_rng(5, 0);
    let e = sample_points3(&f, 60, &mut rng)?;
    let g = sample_points3(&f, 60, &mut rng)?;
    let r = dot_product_set(&f, &e, &g)?;
    println!(
        "|D(E,F)| = {} of {}, orthogonal pairs {}, best lambda {} with M = {}",
        r.dots.len(),
        f.q(),
        r.orthogonal_pairs,
        r.best_lambda.0,
        r.best_count()
    );

    let line = Line3::new(&f, Point::from_indices([1, 2, 3]), [f.elem(1)?, f.elem(0)?, f.elem(4)?])?;
    let marked: Vec<_> = line.points(&f).into_iter().take(5).collect();
    let c = dot_k_line_check(&f, &e, &marked)?;
    let path = match &c.path {
        DotLinePath::DistinctLambdas(l) => format!("{} distinct products on orthogonal points", l.len()),
        DotLinePath::Transversal(p) => format!("transversal point {:?}", p.0.map(|x| x.0)),
    };
    println!("k = {} collinear marked points: |D(E, marked)| = {} ({path}), holds {}", c.k, c.dot_count, c.holds);
    Ok(())
}
