//! The congruence machinery behind the coset classification, run on its own:
//! the unit lift, the per-shift linear congruences, their closed-form union,
//! and the residue identity that powers it.
//!
//! Run with: cargo run --example congruence_identities

use klsum::congruence::{
    closed_form_solution_set, lift_unit, ratio_residue_identity, solvability,
    solve_shift_congruence, verification_grid, CongruenceInstance,
};
use klsum::report;

fn main() -> Result<(), klsum::Error> {
    // Lifting units along (Z/12Z)* -> (Z/4Z)*: 3 itself shares a factor
    // with 12, the next candidate 3 + 4 = 7 works.
    println!(
        "lift of 3 from mod 4 to a unit mod 12: {}",
        lift_unit(12, 4, 3)?
    );
    println!("lift of 1: {}", lift_unit(12, 4, 1)?);

    // For p=5, r=2, n=1 the classification of level e=2 rests on
    // (p^s - 1) x = ((n+1)/d) (p^r - 1)/e (mod p^r - 1).
    let inst = CongruenceInstance::new(5, 2, 1, 2, 1)?;
    println!(
        "\ninstance p=5 r=2 n=1 e=2 s=1: d={} t={} ratio_r={}",
        inst.d, inst.t, inst.ratio_r
    );
    println!("solvable: {}", solvability(&inst));
    let sols: Vec<String> = solve_shift_congruence(&inst)?
        .iter()
        .map(|x| x.to_string())
        .collect();
    println!("solutions of 4x = 12 (mod 24): {{{}}}", sols.join(", "));

    // The shift s = 2 collapses to t = 2 where e = 2 no longer divides
    // gcd((p-1)/d, r/t) = 1: unsolvable.
    let inst = CongruenceInstance::new(5, 2, 1, 2, 2)?;
    println!(
        "shift s=2: solvable = {}, solutions = {:?}",
        solvability(&inst),
        solve_shift_congruence(&inst)?.len()
    );

    // The closed form reproduces the union over all shifts with the same t.
    let closed: Vec<String> = closed_form_solution_set(5, 2, 1, 2, 2, 1)?
        .iter()
        .map(|x| x.to_string())
        .collect();
    println!("closed form u*6 + v*12 (u odd): {{{}}}", closed.join(", "));

    // The residue identity (p^s - 1)/(p^t - 1) = s/t (mod e) under
    // p = 1 (mod e) is what lets the shifts sweep out every unit u.
    for (p, e, s, t) in [(5u64, 2u64, 3u32, 1u32), (7, 3, 2, 1)] {
        let w = ratio_residue_identity(p, e, s, t)?;
        println!(
            "p={p} e={e} s={s} t={t}: ratio {} = {} = {} (mod {e}) -> {}",
            w.ratio,
            w.lhs,
            w.rhs,
            if w.holds() { "holds" } else { "FAILS" }
        );
    }

    // Union identity over a grid, as interchange CSV.
    let rows = verification_grid(&[5, 7], 4, 2)?;
    println!("\nunion-identity grid (p in {{5, 7}}, r <= 4, n <= 2):");
    print!("{}", report::congruence_grid_csv(&rows));
    Ok(())
}
