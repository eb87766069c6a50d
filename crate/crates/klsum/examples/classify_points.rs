//! Predicting the subfield generated by Kl_n(q, a) from the point alone:
//! coset certificates, the iff/if-only distinction, and the trace-zero
//! consequence.
//!
//! Run with: cargo run --example classify_points

use klsum::classifier::{
    classify_dlog, derive_parameters, resolve_distinctness, verify_trace_zero,
};
use klsum::finite_field::FieldSpec;
use klsum::kloosterman::kloosterman_sweep;

fn main() -> Result<(), klsum::Error> {
    let (p, r, n) = (5, 2, 1);
    let field = FieldSpec::new(p, r)?;
    let params = derive_parameters(p, r, n)?;
    println!(
        "p={p} r={r} n={n}: d = gcd(n+1, p-1) = {}, e_cap = gcd((p-1)/d, r) = {}",
        params.d, params.e_cap
    );
    println!(
        "every sum lies in E_{} (degree {}); points in certified cosets drop further",
        params.d,
        params.max_degree()
    );

    // Distinctness decides how strong the prediction is. F_25 with n = 1
    // passes the exhaustive check, so membership is exact ("iff").
    let table = kloosterman_sweep(&field, n)?;
    let resolution = resolve_distinctness(&params, Some(&table));
    println!(
        "\ndistinctness: {} -> mode {}",
        resolution.status_text(),
        resolution.mode
    );

    println!("\nper-point classification (a = gamma^x):");
    println!("  x | predicted | certificate (e, t, u) | exact value");
    for x in 0..field.q() - 1 {
        let rec = classify_dlog(&field, &params, x, resolution.mode)?;
        let cert = match rec.certificate {
            Some(c) => format!("({}, {}, {})", c.e, c.t, c.u),
            None => "-".into(),
        };
        println!(
            "  {x:>2} | E_{} deg {} | {cert:^21} | {}",
            rec.predicted.d(),
            rec.predicted.degree(),
            table.value_at_dlog(x)
        );
    }

    // Certified points always have vanishing relative and absolute traces.
    println!("\ntrace consequence at the certified points:");
    for x in [3u64, 9, 15, 21] {
        let a = field.gamma_pow(x);
        let rec = classify_dlog(&field, &params, x, resolution.mode)?;
        let cert = rec.certificate.expect("certified point");
        println!(
            "  x={x:>2}: relative+absolute trace zero: {}",
            verify_trace_zero(&field, &a, &cert)?
        );
    }
    Ok(())
}
