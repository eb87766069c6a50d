//! Finding every point whose Kloosterman sum is a rational integer.
//!
//! A sum is rational exactly when it generates E_{p-1} = Q. The coset
//! machinery predicts those points as the ones whose minimal exponent into
//! some subfield F_{p^t} equals (p-1)/d; whether the prediction is the whole
//! story depends on value-distinctness.
//!
//! Run with: cargo run --example rational_points

use klsum::classifier::{derive_parameters, rational_points, resolve_distinctness};
use klsum::finite_field::FieldSpec;
use klsum::kloosterman::kloosterman_sweep;

fn show(p: u64, r: u32, n: u32) -> Result<(), klsum::Error> {
    let field = FieldSpec::new(p, r)?;
    let params = derive_parameters(p, r, n)?;
    let table = kloosterman_sweep(&field, n)?;
    let resolution = resolve_distinctness(&params, Some(&table));
    let predicted = rational_points(&field, &params, resolution.checked == Some(true))?;
    let actual: Vec<u64> = (0..field.q() - 1)
        .filter(|&x| table.value_at_dlog(x).rational_value().is_some())
        .collect();

    println!(
        "p={p} r={r} n={n}  (distinctness: {})",
        resolution.status_text()
    );
    match &predicted.reason {
        Some(reason) => println!("  prediction: {reason}"),
        None => println!(
            "  predicted rational points ({}{}): {:?}",
            predicted.dlogs.len(),
            if predicted.complete {
                ", exhaustive"
            } else {
                ", lower bound only"
            },
            predicted.dlogs
        ),
    }
    println!("  actual rational points ({}): {:?}", actual.len(), actual);
    for &x in actual.iter().take(4) {
        println!(
            "    Kl_{n}({}, gamma^{x}) = {}",
            field.q(),
            table.value_at_dlog(x)
        );
    }
    println!();
    Ok(())
}

fn main() -> Result<(), klsum::Error> {
    // Clean case: the prediction is exhaustive and matches exactly.
    show(5, 2, 1)?;
    show(7, 3, 1)?;

    // (p-1)/d does not divide r: no coset can produce a rational value.
    // This field also fails distinctness, and indeed six uncertified points
    // are rational anyway; the machinery reports its prediction as a lower
    // bound, never as the full list.
    show(5, 3, 1)?;
    Ok(())
}
