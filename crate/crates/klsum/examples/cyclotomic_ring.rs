//! Exact arithmetic in Z[zeta_p], the Galois action sigma_i, and reading off
//! the exact subfield of Q(zeta_p) an element generates.
//!
//! Run with: cargo run --example cyclotomic_ring

use klsum::cyclotomic::CycInt;
use num_bigint::BigInt;

fn cyc(p: u64, coeffs: &[i64]) -> CycInt {
    CycInt::from_coeffs(p, coeffs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
}

fn main() -> Result<(), klsum::Error> {
    let p = 5;

    // The power basis {1, zeta, zeta^2, zeta^3} with the reduction
    // zeta^4 = -(1 + zeta + zeta^2 + zeta^3) makes equality a plain
    // coefficient comparison.
    let zeta = CycInt::root_power(p, 1)?;
    let zeta4 = CycInt::root_power(p, 4)?;
    println!("zeta     = {zeta}");
    println!("zeta^4   = {zeta4} (reduced form)");
    println!("product  = {}", &zeta * &zeta4);

    let mut all = CycInt::zero(p)?;
    for k in 0..p {
        all = all.checked_add(&CycInt::root_power(p, k)?)?;
    }
    println!("sum of all five root powers = {all}");

    let a = cyc(p, &[1, 1, 0, 0]); // 1 + zeta
    let b = CycInt::one(p)?.checked_add(&zeta4)?; // 1 + zeta^4
    println!("(1 + zeta)(1 + zeta^4) = {}", a.checked_mul(&b)?);

    // The Galois group of Q(zeta_5)/Q is F_5^*: sigma_i sends zeta to
    // zeta^i. Orbit of a non-symmetric element:
    let x = cyc(p, &[2, 0, 1, 1]); // 2 + zeta^2 + zeta^3
    println!("\nx = {x}");
    for i in 1..p {
        println!("  sigma_{i}(x) = {}", x.galois(i)?);
    }

    // x is fixed exactly by {1, 4}, the order-2 subgroup, so x generates
    // the degree-2 subfield E_2 (the real quadratic field inside Q(zeta_5)).
    println!("stabilizer(x) = {:?}", x.stabilizer());
    let label = x.field_label();
    println!(
        "x generates {label}; rational: {}",
        x.rational_value().is_some()
    );
    let (re, im) = x.complex_embed(6);
    println!("numerically x = {re} + {im}i  (advisory embedding)");

    // A rational element is fixed by everything.
    let r = CycInt::from_integer(p, 7)?;
    println!(
        "\n7 has stabilizer {:?} and label {}",
        r.stabilizer(),
        r.field_label()
    );

    // Coefficients are unbounded integers; nothing overflows.
    let big = CycInt::from_integer(
        p,
        BigInt::parse_bytes(b"340282366920938463463374607431768211456", 10).unwrap(),
    )?;
    println!("\n2^128 as a ring element: {}", big);
    println!("(2^128)^2 = {}", big.checked_mul(&big)?);
    Ok(())
}
