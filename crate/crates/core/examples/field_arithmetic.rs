//! Arithmetic in GF(p^n): element encoding, tables and the modulus.
//!
//! ```text
//! cargo run --example field_arithmetic
//! ```

use fq_incidence::ffield::FieldSpec;

fn main() -> fq_incidence::Result<()> {
    let f = FieldSpec::new(3, 2)?;
    println!("GF({}^{}) has {} elements, modulus coefficients {:?}", f.p(), f.n(), f.q(), f.modulus());

    // index = c0 + c1 * p
    let a = f.elem(5)?;
    let b = f.elem(7)?;
    println!("a = {:?}  b = {:?}  (digits c0, c1)", f.digits(a), f.digits(b));
    println!("a + b = {}", f.add(a, b).0);
    println!("a * b = {}", f.mul(a, b).0);
    println!("a / b = {}", f.div(a, b)?.0);
    println!("a^8   = {}", f.pow(a, 8).0);

    let squares: Vec<u32> = f.nonzero_elements().filter(|&x| f.is_square(x)).map(|x| x.0).collect();
    println!("nonzero squares: {squares:?}");

    for q in [4, 8, 9, 16, 25, 27] {
        let g = FieldSpec::of_order(q)?;
        println!("q={q:>3}: p={} n={} modulus={:?} q mod 4 = {}", g.p(), g.n(), g.modulus(), g.q_mod4());
    }
    Ok(())
}
