//! Deterministic construction of F_{p^r}: modulus and primitive element
//! selection, traces, discrete logs, subfields and Frobenius orbits.
//!
//! Run with: cargo run --example build_field

use klsum::finite_field::FieldSpec;
use klsum::report;

fn main() -> Result<(), klsum::Error> {
    // The realization is pinned: the modulus is the first irreducible in
    // base-p code order and gamma is the smallest generator of F_q^*, so
    // every run reproduces the same tables bit for bit.
    let field = FieldSpec::new(5, 2)?;
    println!("F_25 as F_5[x]/(modulus):");
    println!("  modulus (constant term first): {:?}", field.modulus());
    println!("  gamma = {} of order {}", field.gamma(), field.q() - 1);
    println!(
        "  canonical JSON: {}",
        report::field_json(&field).trim_end()
    );

    println!("\npowers of gamma and their discrete logs:");
    for k in 0..6 {
        let a = field.gamma_pow(k);
        println!("  gamma^{k} = {a}   dlog = {}", field.discrete_log(&a)?);
    }

    println!("\nabsolute traces down to F_5:");
    for k in [0u64, 1, 2, 3] {
        let a = field.gamma_pow(k);
        println!("  Tr(gamma^{k}) = {}", field.absolute_trace(&a)?);
    }
    let zero_traces = field
        .elements()
        .filter(|a| field.absolute_trace(a).unwrap() == 0)
        .count();
    println!("  elements with trace 0: {zero_traces} (one fiber of a surjective F_5-linear map)");

    println!("\nrelative trace from F_25 to F_5 (defining sum a + a^5):");
    let g3 = field.gamma_pow(3);
    println!("  gamma^3 -> {}", field.relative_trace(&g3, 2, 1)?);
    println!(
        "  gamma^1 -> {}",
        field.relative_trace(field.gamma(), 2, 1)?
    );

    println!("\nFrobenius orbits in F_25 (size divides r = 2):");
    for k in [0u64, 3, 7] {
        let a = field.gamma_pow(k);
        let orbit = field.frobenius_orbit(&a)?;
        let orbit: Vec<String> = orbit.iter().map(|b| b.to_string()).collect();
        println!("  orbit(gamma^{k}) = {{{}}}", orbit.join(", "));
    }

    println!("\nsubfield membership:");
    let g1 = field.subfield_generator(1)?;
    println!(
        "  generator of F_5^* inside F_25: {} (dlog {})",
        g1,
        field.discrete_log(&g1)?
    );
    let in_f5 = field
        .elements()
        .filter(|a| field.subfield_membership(a, 1).unwrap())
        .count();
    println!("  elements lying in F_5: {in_f5}");

    // A bigger field, same determinism.
    let field = FieldSpec::new(7, 3)?;
    println!(
        "\nF_343: modulus {:?}, gamma {}",
        field.modulus(),
        field.gamma()
    );
    Ok(())
}
