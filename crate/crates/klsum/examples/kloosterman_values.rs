//! Computing Kl_n(q, a) exactly: term-by-term from the definition, and for
//! the whole field at once with the convolution sweep.
//!
//! Run with: cargo run --example kloosterman_values

use klsum::finite_field::FieldSpec;
use klsum::kloosterman::{kloosterman_direct, kloosterman_sweep, psi, DEFAULT_TERM_CAP};

fn main() -> Result<(), klsum::Error> {
    // F_5, n = 1: Kl_1(5, a) = sum over x != 0 of zeta^{x + a/x}.
    let field = FieldSpec::new(5, 1)?;
    println!("the four terms of Kl_1(5, 1):");
    for x in 1..5u64 {
        let xe = field.from_prime_field(x);
        let inv = field.inv(&xe)?;
        let arg = field.add(&xe, &inv)?;
        println!(
            "  x = {x}: psi({x} + 1/{x}) = psi({}) = {}",
            arg,
            psi(&field, &arg)?
        );
    }
    let value = kloosterman_direct(&field, 1, &field.one(), DEFAULT_TERM_CAP)?;
    println!("Kl_1(5, 1) = {value}");

    // The sweep computes all q values at once; the direct route is its
    // oracle.
    let table = kloosterman_sweep(&field, 1)?;
    println!("\nfull table over F_5 (a listed by discrete log of gamma = 2):");
    println!("  a = 0      -> {}", table.zero_value());
    for x in 0..4u64 {
        let a = field.gamma_pow(x);
        let direct = kloosterman_direct(&field, 1, &a, DEFAULT_TERM_CAP)?;
        assert_eq!(&direct, table.value_at_dlog(x));
        println!("  a = 2^{x} = {} -> {}", a, table.value_at_dlog(x));
    }

    // Higher dimension: the zero point is always (-1)^n because the sum
    // factors into n independent character sums.
    let f25 = FieldSpec::new(5, 2)?;
    for n in 1..=3 {
        let t = kloosterman_sweep(&f25, n)?;
        println!("\nKl_{n}(25, 0) = {}", t.zero_value());
    }

    // Values over F_25 pick up larger coefficients but stay exact.
    let t = kloosterman_sweep(&f25, 1)?;
    for x in [0u64, 3, 9] {
        println!("Kl_1(25, gamma^{x}) = {}", t.value_at_dlog(x));
    }
    Ok(())
}
