//! Rendering for the composite weighted-projective-plane report.

use vwq_core::modular::P112Reconciliation;
use vwq_core::table::CoeffTable;
use vwq_core::QSeries;

#[allow(clippy::too_many_arguments)]
pub fn render_p112(
    c1: i64,
    emin: i64,
    order: i64,
    lattice: &QSeries,
    class_side: &QSeries,
    rhs: &QSeries,
    recon: &P112Reconciliation,
    json: bool,
    csv: bool,
) -> String {
    let lattice_t = CoeffTable::from_series(lattice);
    let class_t = CoeffTable::from_series(class_side);
    let rhs_t = CoeffTable::from_series(rhs);

    if json {
        let value = serde_json::json!({
            "c1": c1,
            "emin": emin,
            "order": order,
            "lattice_sum": lattice_t,
            "class_number_series": class_t,
            "rhs": rhs_t,
            "reconciliation": recon,
        });
        return serde_json::to_string_pretty(&value).expect("report serialization") + "\n";
    }
    if csv {
        let mut out = String::from("series,exp,unit_den,num,den\n");
        for (name, t) in [
            ("lattice_sum", &lattice_t),
            ("class_number_series", &class_t),
            ("rhs", &rhs_t),
        ] {
            for e in &t.coeffs {
                out.push_str(&format!("{name},{},{},{},{}\n", e.exp, t.unit_den, e.num, e.den));
            }
        }
        return out;
    }

    let mut out = String::new();
    out.push_str(&format!("c1 = {c1}, emin = {emin}, order = {order}\n\n"));
    out.push_str("lattice sum:\n");
    out.push_str(&lattice_t.to_text());
    out.push_str("\nclass-number series:\n");
    out.push_str(&class_t.to_text());
    out.push_str("\nfull right-hand side:\n");
    out.push_str(&rhs_t.to_text());
    out.push_str("\nreconciliation: ");
    out.push_str(&recon.verdict);
    out.push('\n');
    if !recon.mismatches.is_empty() {
        out.push_str("differing exponents (numerators on the 1/4 grid):\n");
        for (e, a, b) in &recon.mismatches {
            out.push_str(&format!("  q^({e}/4): lattice {a}, class-number {b}\n"));
        }
    }
    out
}
