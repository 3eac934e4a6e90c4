//! Point-line and point-plane incidence counts, fast path against the
//! brute-force oracle, on random configurations.
//!
//! ```text
//! cargo run --example incidence_counting
//! ```

use fq_incidence::ffield::FieldSpec;
use fq_incidence::geom::{count_line_incidences, count_plane_incidences, CountMethod};
use fq_incidence::harness::{random_config, ConfigKind, Configuration, Sizes};

fn main() -> fq_incidence::Result<()> {
    for q in [7, 8, 9] {
        let f = FieldSpec::of_order(q)?;
        let sizes = Sizes { points: 3 * q as usize, flats: 2 * q as usize, ..Default::default() };
        if let Configuration::Line { points, lines } = random_config(&f, ConfigKind::Line, sizes, 1)? {
            let fast = count_line_incidences(&f, &points, &lines, CountMethod::Fast)?.count;
            let oracle = count_line_incidences(&f, &points, &lines, CountMethod::Oracle)?.count;
            println!("q={q}: {} points, {} lines -> I = {fast} (oracle {oracle})", points.len(), lines.len());
        }
        if let Configuration::Plane { points, planes } = random_config(&f, ConfigKind::Plane, sizes, 2)? {
            let fast = count_plane_incidences(&f, &points, &planes, CountMethod::Fast)?.count;
            let oracle = count_plane_incidences(&f, &points, &planes, CountMethod::Oracle)?.count;
            println!("q={q}: {} points, {} planes -> I = {fast} (oracle {oracle})", points.len(), planes.len());
        }
    }
    Ok(())
}
