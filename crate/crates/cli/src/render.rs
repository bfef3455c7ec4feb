//! Aligned-column text output.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use cy_smoother_core::forms::AronholdInvariants;
use cy_smoother_core::{
    CubicTensor, CyInvariantTriple, CyPrediction, DeformationGroup, DegenerationSpec, FanoPair, FormComparison,
    NormalCrossingModel, PicardVector, SmoothingReport,
};

pub const ARONHOLD_NOTE: &str = "S = (abc)(abd)(acd)(bcd), T = (abc)(abd)(ace)(bcf)(def)^2 on the coefficient \
     tensor; on x^3+y^3+z^3+6m xyz these are -24(m - m^4) and -6(1 - 20m^3 - 8m^6)";

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn num(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| if i + 1 == r.len() { s.clone() } else { format!("{s:<w$}", w = widths[i]) })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn row<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

/// `5H - E1` style rendering of integer coordinates against labels.
fn combination(coeffs: &[BigInt], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let term = if mag.is_one() { l.clone() } else { format!("{mag}{l}") };
        if out.is_empty() {
            out = if c.is_negative() { format!("-{term}") } else { term };
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn lift(v: &PicardVector, n1: usize, l1: &[String], l2: &[String]) -> String {
    format!("({}, {})", combination(&v[..n1], l1), combination(&v[n1..], l2))
}

fn matrix(m: &[Vec<BigInt>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn smoothing_report(model: &NormalCrossingModel, report: &SmoothingReport) -> String {
    let mut rows = vec![row(["hypothesis", "status", "note"])];
    for v in &report.hypotheses {
        rows.push(vec![v.hypothesis.to_string(), format!("{:?}", v.status).to_lowercase(), v.note.clone()]);
    }
    let mut out = table(&rows);
    out.push('\n');

    let Some(inv) = &report.invariants else {
        out.push_str("invariants not computed: a hypothesis fails\n");
        return out;
    };
    let (y1, y2) = (model.y1(), model.y2());
    let n1 = y1.h2();
    let mut rows = Vec::new();
    rows.push(row(["picard rank", &inv.picard_rank.to_string()]));
    let torsion = if inv.torsion.is_empty() {
        "none".to_string()
    } else {
        inv.torsion.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
    };
    rows.push(row(["torsion of RG^2", &torsion]));
    for (i, g) in inv.picard_generators.iter().enumerate() {
        rows.push(vec![format!("e{}", i + 1), lift(g, n1, &y1.h2_labels(), &y2.h2_labels())]);
    }
    for ((i, j, k), v) in inv.cubic_form.sorted_entries() {
        rows.push(vec![format!("e{}.e{}.e{}", i + 1, j + 1, k + 1), v.to_string()]);
    }
    for (i, v) in inv.c2_form.values.iter().enumerate() {
        rows.push(vec![format!("e{}.c2", i + 1), v.to_string()]);
    }
    for (i, g) in inv.consur.rg4_generators.iter().enumerate() {
        rows.push(vec![format!("RG^4 generator {}", i + 1), lift(g, n1, &y1.h4_labels(), &y2.h4_labels())]);
    }
    rows.push(row(["consur Gram", &matrix(&inv.consur.gram)]));
    let verdict = if inv.consur.unimodular { "unimodular".to_string() } else { "NOT unimodular".to_string() };
    let verdict = match &inv.consur.diagnostics {
        Some(d) => format!("{verdict} ({d})"),
        None => verdict,
    };
    rows.push(row(["consur", &verdict]));
    rows.push(row(["h11", &inv.hodge.h11.to_string()]));
    rows.push(row(["h12", &inv.hodge.h12.to_string()]));
    rows.push(row(["euler", &inv.hodge.euler.to_string()]));
    out.push_str(&table(&rows));
    out.push_str(&format!("\n{}\n", report.torsion_note));
    out
}

pub fn degeneration(spec: &DegenerationSpec) -> String {
    let side = |c: &cy_smoother_core::ComponentSpec| {
        let centers: Vec<String> = c.centers.iter().map(|x| combination(&x.class, spec.k3.class_names())).collect();
        format!("{} blown up along [{}]", c.base, centers.join(", "))
    };
    table(&[row(["Y1", &side(&spec.y1)]), row(["Y2", &side(&spec.y2)])])
}

pub fn pairs(pairs: &[FanoPair], mixed: Option<usize>) -> String {
    let mut rows = vec![row(["V1", "V2", "delta"])];
    for p in pairs {
        rows.push(vec![p.v1.clone(), p.v2.clone(), p.delta.to_string()]);
    }
    let mut out = table(&rows);
    out.push_str(&format!("\n{} pairs\n", pairs.len()));
    if let Some(m) = mixed {
        out.push_str(&format!("{m} with exactly one Picard-rank-one member\n"));
    }
    out
}

fn triple(t: &CyInvariantTriple) -> Vec<Vec<String>> {
    let mut rows = vec![row(["rho^3", &t.rho_cubed.to_string()]), row(["rho.c2", &t.rho_c2.to_string()])];
    if let Some(h) = &t.h12 {
        rows.push(row(["h12", &h.to_string()]));
    }
    rows
}

pub fn prediction(p: &CyPrediction) -> String {
    let mut rows = vec![row(["V1", &p.v1]), row(["V2", &p.v2]), row(["delta", &p.delta.to_string()])];
    rows.extend(triple(&p.invariants));
    rows.push(row(["picard rank one", &p.picard_rank_one.to_string()]));
    rows.push(row(["existence", &format!("{:?}", p.existence).to_lowercase()]));
    table(&rows)
}

pub fn groups(groups: &[DeformationGroup]) -> String {
    let mut rows = vec![row(["rho^3", "rho.c2", "members"])];
    for g in groups {
        rows.push(vec![g.rho_cubed.to_string(), g.rho_c2.to_string(), g.members.join(" ")]);
    }
    table(&rows)
}

pub fn cubic(t: &CubicTensor, st: Option<&AronholdInvariants>, cmp: Option<&FormComparison>) -> String {
    let mut rows = vec![row(["rank", &t.rank().to_string()]), row(["form", &t.to_string()])];
    if let Some(st) = st {
        rows.push(row(["S", &st.s.to_string()]));
        rows.push(row(["T", &st.t.to_string()]));
    }
    if let Some(c) = cmp {
        rows.push(row(["verdict", &format!("{:?}", c.verdict).to_uppercase()]));
        for check in &c.checks {
            rows.push(row(["check", check]));
        }
        if let Some((n, d)) = &c.t_ratio {
            rows.push(row(["T ratio", &format!("{n}/{d}")]));
        }
    }
    let mut out = table(&rows);
    if st.is_some() {
        out.push_str(&format!("\n{ARONHOLD_NOTE}\n"));
    }
    out
}

pub fn rr(inv: &CyInvariantTriple, n: &BigInt, chi: &BigInt) -> String {
    let mut rows = triple(inv);
    rows.push(row(["n", &n.to_string()]));
    rows.push(row(["chi(O(n rho))", &chi.to_string()]));
    rows.push(row(["N = chi - 1", &(chi - BigInt::one()).to_string()]));
    table(&rows)
}
