//! VC dimension and shatter function of the point/plane neighbourhood
//! family in F_q^3.
//!
//! ```text
//! cargo run --release --example vc_dimension
//! ```

use fq_incidence::ffield::FieldSpec;
use fq_incidence::geom::{all_points3, Plane3};
use fq_incidence::setsys::{neighborhood_system, sauer_shelah, shatter_function, vc_dimension, SearchMode, Side};

fn main() -> fq_incidence::Result<()> {
    let f = FieldSpec::of_order(3)?;
    let points = all_points3(&f);
    let planes = Plane3::all_dual(&f);
    println!("{} points, {} planes a.x = 1", points.len(), planes.len());

    for side in [Side::ByPlane, Side::ByPoint] {
        let sys = neighborhood_system(&f, &points, &planes, side)?;
        let vc = vc_dimension(&sys, 4)?;
        println!("{side:?}: ground {}, {} members, VC = {} witness {:?}", sys.ground_size(), sys.len(), vc.dimension, vc.witness);
        for z in 1..=4 {
            let pi = shatter_function(&sys, z, SearchMode::Exhaustive)?;
            println!("  pi({z}) = {:>3}   Sauer-Shelah with d=3: {}", pi.value, sauer_shelah(z as u64, 3));
        }
    }
    Ok(())
}
