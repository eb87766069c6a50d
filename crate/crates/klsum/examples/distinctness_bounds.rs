//! Advisory sufficiency bounds for value-distinctness vs the exhaustive
//! check. The bounds only ever claim "holds"; the check decides.
//!
//! Run with: cargo run --release --example distinctness_bounds

use klsum::finite_field::FieldSpec;
use klsum::kloosterman::{check_distinctness, distinctness_bounds, kloosterman_sweep};

fn main() -> Result<(), klsum::Error> {
    println!("numeric thresholds:");
    for (p, r, n) in [
        (5u64, 2u32, 1u32),
        (5, 4, 1),
        (5, 2, 2),
        (1093, 2, 1),
        (26573, 2, 2),
    ] {
        let b = distinctness_bounds(p, r, n);
        println!(
            "  p={p:<6} r={r} n={n}: fischer needs p > {} ({}), wan needs p >= {} ({}, advisory), small-field shortcut: {}",
            b.fischer_threshold,
            b.fischer_bound_met,
            b.wan_threshold,
            b.wan_bound_met,
            b.guaranteed
        );
    }

    println!("\nexhaustive checks (the decisive test):");
    for (p, r, n) in [
        (5u64, 1u32, 1u32),
        (5, 2, 1),
        (7, 3, 1),
        (5, 3, 1),
        (5, 4, 1),
    ] {
        let field = FieldSpec::new(p, r)?;
        let table = kloosterman_sweep(&field, n)?;
        let report = check_distinctness(&table);
        let b = distinctness_bounds(p, r, n);
        println!(
            "  q={:<4} n={n}: shortcut says {:<5} check says {}",
            field.q(),
            b.guaranteed,
            if report.holds {
                "holds".to_string()
            } else {
                format!(
                    "VIOLATED: {} colliding orbit pairs, first {:?}",
                    report.violations.len(),
                    report.violations[0]
                )
            }
        );
    }
    println!("\nnote: the shortcut flag is advisory; q = 5^3 and q = 5^4 show it");
    println!("overpromising at small p (it presumes p >= r(n+1)). Whenever a");
    println!("table is available the exhaustive check overrides it.");
    Ok(())
}
