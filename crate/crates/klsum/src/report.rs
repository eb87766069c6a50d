//! Deterministic CSV and JSON emission for every artifact the crate
//! produces, plus the CSV ingestion path for value tables.
//!
//! CSV is the bit-exact interchange format: UTF-8, LF line endings, a header
//! row, fixed column order, exact decimal integers. JSON mirrors carry the
//! same data with fixed key order (struct declaration order). Floating-point
//! values appear only in the advisory embedding annex, never in
//! verification outputs.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Number, Value};

use crate::classifier::{
    AgreementRow, ClassificationRecord, DistinctnessResolution, Parameters, RationalPoints,
    VerificationReport,
};
use crate::congruence::UnionIdentityRow;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::finite_field::FieldSpec;
use crate::kloosterman::{BoundsReport, DistinctnessReport, KlTable};

fn json_int(v: &BigInt) -> Number {
    serde_json::from_str::<Number>(&v.to_string()).expect("integer literal is a JSON number")
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

/// Canonical field description: {p, r, modulus, gamma}.
pub fn field_json(field: &FieldSpec) -> String {
    pretty(&field.describe())
}

// ---- value tables ---------------------------------------------------------

fn embed_columns(value: &CycInt, digits: u32) -> (String, String) {
    let (re, im) = value.complex_embed(digits);
    let d = digits.clamp(1, 15) as usize;
    (format!("{re:.d$}"), format!("{im:.d$}"))
}

/// Value table as CSV rows `a_dlog,c0,...,c{p-2}`; the a = 0 row is keyed by
/// the literal `zero`. `embed` appends the advisory `embed_re,embed_im`
/// annex columns.
pub fn kl_table_csv(table: &KlTable, embed: Option<u32>) -> String {
    let p = table.p();
    let mut out = String::from("a_dlog");
    for k in 0..p - 1 {
        out.push_str(&format!(",c{k}"));
    }
    if embed.is_some() {
        out.push_str(",embed_re,embed_im");
    }
    out.push('\n');
    let mut push_row = |key: &str, value: &CycInt| {
        out.push_str(key);
        for c in value.coeffs() {
            out.push(',');
            out.push_str(&c.to_string());
        }
        if let Some(digits) = embed {
            let (re, im) = embed_columns(value, digits);
            out.push(',');
            out.push_str(&re);
            out.push(',');
            out.push_str(&im);
        }
        out.push('\n');
    };
    push_row("zero", table.zero_value());
    for (x, value) in table.by_dlog().iter().enumerate() {
        push_row(&x.to_string(), value);
    }
    out
}

#[derive(Serialize)]
struct EmbedDoc {
    re: String,
    im: String,
}

#[derive(Serialize)]
struct TableRowDoc {
    a: Value,
    coeffs: Vec<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    embed: Option<EmbedDoc>,
}

#[derive(Serialize)]
struct TableDoc {
    p: u64,
    r: u32,
    n: u32,
    q: u64,
    rows: Vec<TableRowDoc>,
}

/// JSON mirror of the value table; coefficients are exact integers.
pub fn kl_table_json(table: &KlTable, embed: Option<u32>) -> String {
    let row = |a: Value, value: &CycInt| TableRowDoc {
        a,
        coeffs: value.coeffs().iter().map(json_int).collect(),
        embed: embed.map(|digits| {
            let (re, im) = embed_columns(value, digits);
            EmbedDoc { re, im }
        }),
    };
    let mut rows = vec![row(Value::String("zero".into()), table.zero_value())];
    rows.extend(
        table
            .by_dlog()
            .iter()
            .enumerate()
            .map(|(x, v)| row(Value::from(x as u64), v)),
    );
    pretty(&TableDoc {
        p: table.p(),
        r: table.r(),
        n: table.n(),
        q: table.q(),
        rows,
    })
}

/// Reads a table back from its CSV form. The field fixes p, r and the
/// expected row keys; rows may appear in any order but must be complete and
/// unique. Extra columns (the embedding annex) are ignored.
pub fn kl_table_from_csv(field: &FieldSpec, n: u32, text: &str) -> Result<KlTable> {
    let p = field.p();
    let q = field.q();
    let width = (p - 1) as usize;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"a_dlog") || cols.len() < width + 1 {
        return Err(Error::Parse(format!(
            "expected header a_dlog,c0,...,c{}",
            p - 2
        )));
    }
    let mut zero: Option<CycInt> = None;
    let mut values: Vec<Option<CycInt>> = vec![None; (q - 1) as usize];
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() < width + 1 {
            return Err(Error::Parse(format!("row {}: too few columns", lineno + 2)));
        }
        let coeffs = parts[1..=width]
            .iter()
            .map(|s| {
                BigInt::from_str(s).map_err(|e| Error::Parse(format!("row {}: {e}", lineno + 2)))
            })
            .collect::<Result<Vec<BigInt>>>()?;
        let value = CycInt::from_coeffs(p, coeffs)?;
        if parts[0] == "zero" {
            if zero.replace(value).is_some() {
                return Err(Error::Parse("duplicate zero row".into()));
            }
        } else {
            let x: u64 = parts[0]
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: bad key {:?}", lineno + 2, parts[0])))?;
            if x >= q - 1 {
                return Err(Error::Parse(format!(
                    "row {}: dlog {x} out of range",
                    lineno + 2
                )));
            }
            if values[x as usize].replace(value).is_some() {
                return Err(Error::Parse(format!("duplicate row for dlog {x}")));
            }
        }
    }
    let zero = zero.ok_or_else(|| Error::Parse("missing zero row".into()))?;
    let values = values
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| Error::Parse(format!("missing row for dlog {x}"))))
        .collect::<Result<Vec<CycInt>>>()?;
    KlTable::from_parts(p, field.r(), n, zero, values)
}

// ---- classification and verification --------------------------------------

fn record_csv_row(rec: &ClassificationRecord, list_all: bool) -> String {
    let (t, u) = rec.certificate.map_or((String::new(), String::new()), |c| {
        (c.t.to_string(), c.u.to_string())
    });
    let actual = rec.actual.map_or(String::new(), |l| l.d().to_string());
    let pass = String::new(); // filled by the verification writer
    let mut row = format!(
        "{},{},{},{},{},{},{},{}",
        rec.a_dlog,
        rec.predicted.d(),
        rec.e(),
        t,
        u,
        rec.mode,
        actual,
        pass
    );
    if list_all {
        row.push(',');
        row.push_str(&join_e(&rec.certified_e));
    }
    row
}

fn join_e(es: &[u64]) -> String {
    es.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn classification_header(list_all: bool) -> String {
    let mut h = String::from("a_dlog,predicted_de,e,t,u,mode,actual_de,pass");
    if list_all {
        h.push_str(",all_e");
    }
    h.push('\n');
    h
}

/// Classification rows without ground truth.
pub fn classification_csv(rows: &[ClassificationRecord], list_all: bool) -> String {
    let mut out = classification_header(list_all);
    for rec in rows {
        out.push_str(&record_csv_row(rec, list_all));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ParamsDoc {
    p: u64,
    r: u32,
    n: u32,
    d: u64,
    e_cap: u64,
}

impl From<&Parameters> for ParamsDoc {
    fn from(p: &Parameters) -> Self {
        ParamsDoc {
            p: p.p,
            r: p.r,
            n: p.n,
            d: p.d,
            e_cap: p.e_cap,
        }
    }
}

#[derive(Serialize)]
struct RecordDoc {
    a_dlog: u64,
    predicted_de: u64,
    e: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<u64>,
    mode: &'static str,
    actual_de: Option<u64>,
    pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_e: Option<Vec<u64>>,
}

fn record_doc(rec: &ClassificationRecord, pass: Option<bool>, list_all: bool) -> RecordDoc {
    RecordDoc {
        a_dlog: rec.a_dlog,
        predicted_de: rec.predicted.d(),
        e: rec.e(),
        t: rec.certificate.map(|c| c.t),
        u: rec.certificate.map(|c| c.u),
        mode: rec.mode.as_str(),
        actual_de: rec.actual.map(|l| l.d()),
        pass,
        all_e: list_all.then(|| rec.certified_e.clone()),
    }
}

#[derive(Serialize)]
struct ClassificationDoc {
    params: ParamsDoc,
    summary: ClassificationSummaryDoc,
    rows: Vec<RecordDoc>,
}

#[derive(Serialize)]
struct ClassificationSummaryDoc {
    mode: &'static str,
    distinctness: String,
    points: u64,
    rational_points: u64,
    rational_complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    rational_note: Option<String>,
}

pub fn classification_json(
    params: &Parameters,
    resolution: &DistinctnessResolution,
    rational: &RationalPoints,
    rows: &[ClassificationRecord],
    list_all: bool,
) -> String {
    pretty(&ClassificationDoc {
        params: params.into(),
        summary: ClassificationSummaryDoc {
            mode: resolution.mode.as_str(),
            distinctness: resolution.status_text(),
            points: rows.len() as u64,
            rational_points: rational.dlogs.len() as u64,
            rational_complete: rational.complete,
            rational_note: rational.reason.clone(),
        },
        rows: rows.iter().map(|r| record_doc(r, None, list_all)).collect(),
    })
}

/// Human-readable classification summary (stdout).
pub fn classification_summary_text(
    params: &Parameters,
    resolution: &DistinctnessResolution,
    rational: &RationalPoints,
    rows: &[ClassificationRecord],
) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "field: p={} r={} q={} n={}; d={} e_cap={}\n",
        params.p,
        params.r,
        (params.p as u128).pow(params.r),
        params.n,
        params.d,
        params.e_cap
    ));
    s.push_str(&format!(
        "mode: {} (distinctness: {})\n",
        resolution.mode,
        resolution.status_text()
    ));
    if params.degree_is_forced() {
        s.push_str(&format!(
            "e_cap = 1: every nonzero point is predicted to generate E_{} (degree {})\n",
            params.d,
            params.max_degree()
        ));
    }
    let certified = rows.iter().filter(|r| r.certificate.is_some()).count();
    s.push_str(&format!(
        "points: {}; certified coset members: {}\n",
        rows.len(),
        certified
    ));
    match &rational.reason {
        Some(reason) => s.push_str(&format!("rational points: none possible ({reason})\n")),
        None => s.push_str(&format!(
            "rational points: {}{}\n",
            rational.dlogs.len(),
            if rational.complete {
                " (exhaustive)"
            } else {
                " (at least; distinctness unverified)"
            }
        )),
    }
    s
}

fn verified_csv(report: &VerificationReport, list_all: bool) -> String {
    let mut out = classification_header(list_all);
    for pt in &report.points {
        let rec = &pt.record;
        let (t, u) = rec.certificate.map_or((String::new(), String::new()), |c| {
            (c.t.to_string(), c.u.to_string())
        });
        let actual = rec.actual.map_or(String::new(), |l| l.d().to_string());
        let mut row = format!(
            "{},{},{},{},{},{},{},{}",
            rec.a_dlog,
            rec.predicted.d(),
            rec.e(),
            t,
            u,
            rec.mode,
            actual,
            pt.pass
        );
        if list_all {
            row.push(',');
            row.push_str(&join_e(&rec.certified_e));
        }
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Per-point verification rows, classification schema with actual + pass.
pub fn verification_csv(report: &VerificationReport) -> String {
    verified_csv(report, false)
}

#[derive(Serialize)]
struct VerificationSummaryDoc {
    mode: &'static str,
    distinctness: String,
    points: u64,
    field_checks_passed: u64,
    exact_label_matches: u64,
    maximal_degree_checked: u64,
    maximal_degree_passed: u64,
    certificates: u64,
    trace_zero_passed: u64,
    rational_predicted: u64,
    rational_actual: u64,
    rational_agreement: bool,
    divisor_closure_ok: bool,
    zero_point_ok: bool,
    passed: bool,
}

#[derive(Serialize)]
struct VerificationDoc {
    params: ParamsDoc,
    summary: VerificationSummaryDoc,
    rows: Vec<RecordDoc>,
}

pub fn verification_json(report: &VerificationReport) -> String {
    let s = &report.summary;
    pretty(&VerificationDoc {
        params: (&report.params).into(),
        summary: VerificationSummaryDoc {
            mode: s.mode.as_str(),
            distinctness: report.resolution.status_text(),
            points: s.points,
            field_checks_passed: s.field_checks_passed,
            exact_label_matches: s.exact_label_matches,
            maximal_degree_checked: s.maximal_degree_checked,
            maximal_degree_passed: s.maximal_degree_passed,
            certificates: s.certificates,
            trace_zero_passed: s.trace_zero_passed,
            rational_predicted: s.rational_predicted,
            rational_actual: s.rational_actual,
            rational_agreement: s.rational_agreement,
            divisor_closure_ok: s.divisor_closure_ok,
            zero_point_ok: s.zero_point_ok,
            passed: s.passed,
        },
        rows: report
            .points
            .iter()
            .map(|pt| record_doc(&pt.record, Some(pt.pass), false))
            .collect(),
    })
}

/// Multi-line human verification summary (stdout), one line per check.
pub fn verification_text(
    report: &VerificationReport,
    agreement: &[AgreementRow],
    unions: &[UnionIdentityRow],
) -> String {
    let p = &report.params;
    let s = &report.summary;
    let mut out = String::new();
    out.push_str(&format!(
        "field: p={} r={} q={} n={}; d={} e_cap={}\n",
        p.p,
        p.r,
        (p.p as u128).pow(p.r),
        p.n,
        p.d,
        p.e_cap
    ));
    out.push_str(&format!(
        "mode: {} (distinctness: {})\n",
        s.mode,
        report.resolution.status_text()
    ));
    out.push_str(&format!(
        "field checks ({}): {}/{}\n",
        match s.mode {
            crate::classifier::Mode::Iff => "predicted = actual",
            crate::classifier::Mode::IfOnly => "predicted contains actual",
        },
        s.field_checks_passed,
        s.points
    ));
    out.push_str(&format!(
        "exact label matches: {}/{}\n",
        s.exact_label_matches, s.points
    ));
    out.push_str(&format!(
        "maximal degree at nonzero-trace points: {}/{}\n",
        s.maximal_degree_passed, s.maximal_degree_checked
    ));
    out.push_str(&format!(
        "certificates: {}; trace-zero checks passed: {}/{}\n",
        s.certificates, s.trace_zero_passed, s.certificates
    ));
    out.push_str(&format!(
        "rational points: predicted {}, actual {}, agreement: {}\n",
        s.rational_predicted,
        s.rational_actual,
        if s.rational_agreement { "yes" } else { "NO" }
    ));
    out.push_str(&format!(
        "coset/closed-form agreement: {}/{} (e,t) pairs\n",
        agreement.iter().filter(|r| r.equal).count(),
        agreement.len()
    ));
    out.push_str(&format!(
        "congruence union identity: {}/{} (e,t) pairs\n",
        unions.iter().filter(|r| r.equal).count(),
        unions.len()
    ));
    out.push_str(&format!(
        "divisor closure of certified levels: {}\n",
        if s.divisor_closure_ok {
            "ok"
        } else {
            "VIOLATED"
        }
    ));
    out.push_str(&format!(
        "zero point equals (-1)^n: {}\n",
        if s.zero_point_ok { "ok" } else { "NO" }
    ));
    let all_pass = s.passed && agreement.iter().all(|r| r.equal) && unions.iter().all(|r| r.equal);
    out.push_str(&format!(
        "RESULT: {}\n",
        if all_pass { "PASS" } else { "FAIL" }
    ));
    out
}

// ---- bounds, distinctness, congruence grid ---------------------------------

#[derive(Serialize)]
struct BoundsDoc {
    p: u64,
    r: u32,
    n: u32,
    fischer_threshold: Number,
    fischer_bound_met: bool,
    wan_threshold: u64,
    wan_bound_met: bool,
    guaranteed: bool,
}

pub fn bounds_json(b: &BoundsReport) -> String {
    pretty(&BoundsDoc {
        p: b.p,
        r: b.r,
        n: b.n,
        fischer_threshold: serde_json::from_str(&b.fischer_threshold.to_string())
            .expect("integer literal"),
        fischer_bound_met: b.fischer_bound_met,
        wan_threshold: b.wan_threshold,
        wan_bound_met: b.wan_bound_met,
        guaranteed: b.guaranteed,
    })
}

pub fn bounds_csv(b: &BoundsReport) -> String {
    format!(
        "p,r,n,fischer_threshold,fischer_bound_met,wan_threshold,wan_bound_met,guaranteed\n{},{},{},{},{},{},{},{}\n",
        b.p, b.r, b.n, b.fischer_threshold, b.fischer_bound_met, b.wan_threshold, b.wan_bound_met, b.guaranteed
    )
}

pub fn bounds_text(b: &BoundsReport) -> String {
    format!(
        "p={} r={} n={}\nfischer: p > {} -> {}\nwan (advisory): p >= {} -> {}\nsmall-field shortcut (n=1, r<=4, advisory): {}\n",
        b.p,
        b.r,
        b.n,
        b.fischer_threshold,
        b.fischer_bound_met,
        b.wan_threshold,
        b.wan_bound_met,
        b.guaranteed
    )
}

#[derive(Serialize)]
struct DistinctnessDoc {
    p: u64,
    r: u32,
    n: u32,
    holds: bool,
    violations: Vec<(u64, u64)>,
}

pub fn distinctness_json(params: &Parameters, report: &DistinctnessReport) -> String {
    pretty(&DistinctnessDoc {
        p: params.p,
        r: params.r,
        n: params.n,
        holds: report.holds,
        violations: report.violations.clone(),
    })
}

/// Violating orbit-representative pairs, one per row.
pub fn distinctness_csv(report: &DistinctnessReport) -> String {
    let mut out = String::from("a,b\n");
    for (a, b) in &report.violations {
        out.push_str(&format!("{a},{b}\n"));
    }
    out
}

pub fn distinctness_text(params: &Parameters, report: &DistinctnessReport) -> String {
    if report.holds {
        format!(
            "p={} r={} n={}: values are distinct up to Frobenius over the nonzero points\n",
            params.p, params.r, params.n
        )
    } else {
        format!(
            "p={} r={} n={}: {} orbit pairs share a value\n",
            params.p,
            params.r,
            params.n,
            report.violations.len()
        )
    }
}

/// Union-identity grid rows: `p,r,n,e,t,union_size,closed_form_size,equal`.
pub fn congruence_grid_csv(rows: &[UnionIdentityRow]) -> String {
    let mut out = String::from("p,r,n,e,t,union_size,closed_form_size,equal\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.p, row.r, row.n, row.e, row.t, row.union_size, row.closed_form_size, row.equal
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify_all, derive_parameters, resolve_distinctness, Mode};
    use crate::kloosterman::kloosterman_sweep;

    #[test]
    fn field_json_is_canonical() {
        let f = FieldSpec::new(5, 2).unwrap();
        let s = field_json(&f);
        assert!(s.contains("\"p\": 5"));
        assert!(s.contains("\"modulus\": ["));
        assert_eq!(s, field_json(&FieldSpec::new(5, 2).unwrap()));
    }

    #[test]
    fn table_csv_roundtrip() {
        let f = FieldSpec::new(5, 2).unwrap();
        let table = kloosterman_sweep(&f, 1).unwrap();
        let csv = kl_table_csv(&table, None);
        assert!(csv.starts_with("a_dlog,c0,c1,c2,c3\nzero,"));
        let parsed = kl_table_from_csv(&f, 1, &csv).unwrap();
        assert_eq!(parsed.zero_value(), table.zero_value());
        assert_eq!(parsed.by_dlog(), table.by_dlog());
        // Determinism: same bytes on re-export.
        assert_eq!(kl_table_csv(&parsed, None), csv);
    }

    #[test]
    fn table_csv_rejects_incomplete_input() {
        let f = FieldSpec::new(5, 1).unwrap();
        let table = kloosterman_sweep(&f, 1).unwrap();
        let csv = kl_table_csv(&table, None);
        let truncated: Vec<&str> = csv.lines().take(4).collect();
        assert!(kl_table_from_csv(&f, 1, &truncated.join("\n")).is_err());
        assert!(kl_table_from_csv(&f, 1, "bogus\n").is_err());
    }

    #[test]
    fn embed_annex_is_advisory_and_parseable() {
        let f = FieldSpec::new(5, 1).unwrap();
        let table = kloosterman_sweep(&f, 1).unwrap();
        let csv = kl_table_csv(&table, Some(6));
        assert!(csv.starts_with("a_dlog,c0,c1,c2,c3,embed_re,embed_im\n"));
        // The parser ignores the annex columns.
        let parsed = kl_table_from_csv(&f, 1, &csv).unwrap();
        assert_eq!(parsed.by_dlog(), table.by_dlog());
    }

    #[test]
    fn classification_csv_schema() {
        let f = FieldSpec::new(5, 2).unwrap();
        let params = derive_parameters(5, 2, 1).unwrap();
        let rows = classify_all(&f, &params, Mode::Iff).unwrap();
        let csv = classification_csv(&rows, false);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "a_dlog,predicted_de,e,t,u,mode,actual_de,pass"
        );
        assert_eq!(lines.next().unwrap(), "0,2,1,,,iff,,");
        assert!(csv.lines().nth(4).unwrap().starts_with("3,4,2,1,1,iff"));
        let with_all = classification_csv(&rows, true);
        assert!(with_all.starts_with("a_dlog,predicted_de,e,t,u,mode,actual_de,pass,all_e\n"));
    }

    #[test]
    fn verification_outputs_are_deterministic() {
        let f = FieldSpec::new(5, 2).unwrap();
        let params = derive_parameters(5, 2, 1).unwrap();
        let table = kloosterman_sweep(&f, 1).unwrap();
        let resolution = resolve_distinctness(&params, Some(&table));
        let report =
            crate::classifier::verify_against_ground_truth(&f, &params, &table, &resolution)
                .unwrap();
        let csv1 = verification_csv(&report);
        let report2 =
            crate::classifier::verify_against_ground_truth(&f, &params, &table, &resolution)
                .unwrap();
        assert_eq!(csv1, verification_csv(&report2));
        let json = verification_json(&report);
        assert!(json.contains("\"passed\": true"));
        // No floats anywhere in verification outputs.
        assert!(!csv1.contains('.'));
    }

    #[test]
    fn grid_csv_schema() {
        let rows = crate::congruence::verification_grid(&[5], 2, 1).unwrap();
        let csv = congruence_grid_csv(&rows);
        assert!(csv.starts_with("p,r,n,e,t,union_size,closed_form_size,equal\n"));
        assert!(csv.contains("5,2,1,2,1,4,4,true"));
    }
}
