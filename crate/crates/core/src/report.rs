//! Rendering of construction data, equilibria and verification reports as
//! text, JSON and CSV.
//!
//! Machine formats round every float to 12 significant digits and print it
//! in its shortest round-trip form, so re-parsing and re-rendering is
//! byte-stable. JSON objects use sorted keys.

use serde_json::{json, Map, Value};
use std::fmt::Write as _;

use crate::equilibrium::EquilibriumResult;
use crate::rational::Q;
use crate::rootsys::{Coupling, RootSystemData};
use crate::verify::{PredictionBasis, SystemChecks, SystemRecord, VerificationReport};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    let r = round_sig(x);
    // -0.0 would print as "-0.0"
    let r = if r == 0.0 { 0.0 } else { r };
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

fn int(x: i128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn rationals(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Plain-text float for CSV and text output.
pub fn fmt_float(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    if !r.is_finite() {
        return r.to_string();
    }
    let a = r.abs();
    if (1e-4..1e12).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_float(x)).collect::<Vec<_>>().join(", ")
}

fn fmt_q_list(xs: &[Q]) -> String {
    xs.iter().map(Q::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("Value always serializes");
    s.push('\n');
    s
}

fn coupling_json(g: &Coupling) -> Value {
    json!({ "long": num(g.long), "short": num(g.short) })
}

pub fn info_json(rs: &RootSystemData, g: &Coupling) -> Value {
    let (_, rc) = rs.rho_and_r(g);
    let exact = crate::rational::from_f64(g.long).zip(crate::rational::from_f64(g.short));
    let (r_root, r_coroot) = match exact {
        Some((l, s)) => {
            let (_, rc) = rs.rho_and_r(&Coupling::new(l, s));
            (rationals(&rc.r_root), rationals(&rc.r_coroot))
        }
        None => (nums(&rc.r_root), nums(&rc.r_coroot)),
    };
    json!({
        "system": rs.id().to_string(),
        "rank": rs.rank(),
        "normalization": rs.normalization().name(),
        "g": coupling_json(g),
        "positive_roots": rs.positive_roots().len(),
        "roots": rs.num_roots(),
        "simply_laced": rs.is_simply_laced(),
        "degrees": rs.degrees(),
        "weyl_order": rs.weyl_order(),
        "center_order": rs.center_order(),
        "cartan": rs.cartan(),
        "simple_root_sq_lengths": rationals(&rs.simple_roots().iter().map(|a| a.sq_length).collect::<Vec<_>>()),
        "highest_root": rs.highest_root().simple_coeffs,
        "r_root": r_root,
        "r_coroot": r_coroot,
    })
}

pub fn info_text(rs: &RootSystemData, g: &Coupling) -> String {
    let (_, rc) = rs.rho_and_r(g);
    let mut s = String::new();
    let _ = writeln!(s, "system          {}", rs.id());
    let _ = writeln!(s, "rank            {}", rs.rank());
    let _ = writeln!(s, "positive roots  {}", rs.positive_roots().len());
    let _ = writeln!(s, "roots           {}", rs.num_roots());
    let degrees: Vec<String> = rs.degrees().iter().map(u32::to_string).collect();
    let _ = writeln!(s, "degrees         {}", degrees.join(", "));
    let _ = writeln!(s, "|W|             {}", rs.weyl_order());
    let _ = writeln!(s, "z               {}", rs.center_order());
    let _ = writeln!(s, "highest root    {:?}", rs.highest_root().simple_coeffs);
    let _ = writeln!(s, "g               long {} short {}", fmt_float(g.long), fmt_float(g.short));
    match crate::rational::from_f64(g.long).zip(crate::rational::from_f64(g.short)) {
        Some((l, sh)) => {
            let (_, rq) = rs.rho_and_r(&Coupling::new(l, sh));
            let _ = writeln!(s, "r_root          ({})", fmt_q_list(&rq.r_root));
            let _ = writeln!(s, "r_coroot        ({})", fmt_q_list(&rq.r_coroot));
        }
        None => {
            let _ = writeln!(s, "r_root          ({})", fmt_list(&rc.r_root));
            let _ = writeln!(s, "r_coroot        ({})", fmt_list(&rc.r_coroot));
        }
    }
    let _ = writeln!(s, "cartan");
    for row in rs.cartan() {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        let _ = writeln!(s, "  {}", cells.join(""));
    }
    s
}

pub fn equilibrium_json(rs: &RootSystemData, g: &Coupling, eq: &EquilibriumResult) -> Value {
    json!({
        "system": rs.id().to_string(),
        "rank": rs.rank(),
        "normalization": rs.normalization().name(),
        "g": coupling_json(g),
        "q_bar": nums(&eq.q_bar.coords),
        "q_bar_simple_pairings": nums(&eq.q_bar_simple_pairings),
        "u_min": num(eq.u_min),
        "eigs_a1": nums(&eq.eigs_a1),
        "eigs_a2": nums(&eq.eigs_a2),
        "c_fit": num(eq.c_fit),
        "relation_residual": num(eq.relation_residual),
        "iterations": eq.iterations,
    })
}

pub fn equilibrium_text(rs: &RootSystemData, g: &Coupling, eq: &EquilibriumResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "system             {}", rs.id());
    let _ = writeln!(s, "g                  long {} short {}", fmt_float(g.long), fmt_float(g.short));
    let _ = writeln!(s, "q_bar              [{}]", fmt_list(&eq.q_bar.coords));
    let _ = writeln!(s, "q_bar pairings     [{}]", fmt_list(&eq.q_bar_simple_pairings));
    let _ = writeln!(s, "U1 min             {}", fmt_float(eq.u_min));
    let _ = writeln!(s, "eigs a1            [{}]", fmt_list(&eq.eigs_a1));
    let _ = writeln!(s, "eigs a2            [{}]", fmt_list(&eq.eigs_a2));
    let _ = writeln!(s, "c                  {}", fmt_float(eq.c_fit));
    let _ = writeln!(s, "residual           {}", fmt_float(eq.relation_residual));
    let _ = writeln!(s, "newton iterations  {}", eq.iterations);
    s
}

fn basis_name(b: PredictionBasis) -> &'static str {
    match b {
        PredictionBasis::Coroot => "coroot",
        PredictionBasis::Root => "root",
    }
}

fn checks_json(rec: &SystemRecord, c: &SystemChecks, g: &Coupling) -> Value {
    let eq = &c.equilibrium;
    json!({
        "system": rec.system,
        "rank": rec.rank,
        "normalization": "long_sq_2",
        "g": coupling_json(g),
        "q_bar": nums(&eq.q_bar.coords),
        "q_bar_simple_pairings": nums(&eq.q_bar_simple_pairings),
        "eigs_a1": nums(&eq.eigs_a1),
        "eigs_a2": nums(&eq.eigs_a2),
        "pred_2r_coroot": nums(&c.theorem.predicted_coroot),
        "pred_2r_root": nums(&c.theorem.predicted_root),
        "c_fit": num(eq.c_fit),
        "relation_residual": num(eq.relation_residual),
        "theorem": {
            "basis": basis_name(c.theorem.basis),
            "max_rel_err_coroot": num(c.theorem.max_rel_err_coroot),
            "max_rel_err_root": num(c.theorem.max_rel_err_root),
            "pass": c.theorem.pass,
        },
        "relation13": { "c": num(c.relation13.c), "residual": num(c.relation13.residual), "pass": c.relation13.pass },
        "identity": { "lhs": int(c.identity.lhs), "rhs": int(c.identity.rhs), "pass": c.identity.pass },
        "macdonald": { "lhs": num(c.macdonald.lhs), "rhs": num(c.macdonald.rhs), "rel_err": num(c.macdonald.rel_err), "pass": c.macdonald.pass },
        "coincidence": { "distance": num(c.coincidence.distance), "pass": c.coincidence.pass },
        "gap": { "linear_parts": rationals(&c.gap.linear_parts), "pred_2r_coroot": rationals(&c.gap.predicted), "pass": c.gap.pass },
        "pass": c.pass(),
    })
}

pub fn record_json(rec: &SystemRecord, g: &Coupling) -> Value {
    match &rec.outcome {
        Ok(c) => checks_json(rec, c, g),
        Err(e) => {
            let mut m = Map::new();
            m.insert("system".into(), Value::String(rec.system.clone()));
            m.insert("rank".into(), Value::from(rec.rank));
            m.insert("error".into(), Value::String(e.to_string()));
            m.insert("pass".into(), Value::Bool(false));
            Value::Object(m)
        }
    }
}

pub fn verify_json(report: &VerificationReport) -> Value {
    json!({
        "tol": num(report.options.tol),
        "g": coupling_json(&report.g),
        "basis": basis_name(report.options.basis),
        "systems": report.records.iter().map(|r| record_json(r, &report.g)).collect::<Vec<_>>(),
        "pass": report.pass(),
    })
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// One line per (system, check).
pub fn verify_text(report: &VerificationReport) -> String {
    let tol = fmt_float(report.options.tol);
    let mut s = String::new();
    for rec in &report.records {
        let sys = &rec.system;
        let c = match &rec.outcome {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(s, "FAIL  {sys:<4} error        {e}");
                continue;
            }
        };
        let t = &c.theorem;
        let (pred, err) = match t.basis {
            PredictionBasis::Coroot => (&t.predicted_coroot, t.max_rel_err_coroot),
            PredictionBasis::Root => (&t.predicted_root, t.max_rel_err_root),
        };
        let _ = writeln!(
            s,
            "{}  {sys:<4} theorem      eigs(a1) [{}] vs 2r ({} basis) [{}]  max rel err {} (tol {tol})",
            status(t.pass),
            fmt_list(&t.eigs_computed),
            basis_name(t.basis),
            fmt_list(pred),
            fmt_float(err),
        );
        if t.predicted_root != t.predicted_coroot {
            let other = match t.basis {
                PredictionBasis::Coroot => ("root", &t.predicted_root, t.max_rel_err_root),
                PredictionBasis::Root => ("coroot", &t.predicted_coroot, t.max_rel_err_coroot),
            };
            let _ = writeln!(
                s,
                "NOTE  {sys:<4} theorem      {} basis predicts [{}], max rel err {}",
                other.0,
                fmt_list(other.1),
                fmt_float(other.2)
            );
        }
        let _ = writeln!(
            s,
            "{}  {sys:<4} identity     prod (d-1)d = {} vs z prod r = {} (exact)",
            status(c.identity.pass),
            c.identity.lhs,
            c.identity.rhs
        );
        let _ = writeln!(
            s,
            "{}  {sys:<4} macdonald    prod sin^2 = {} vs closed form {}  rel err {} (tol {tol})",
            status(c.macdonald.pass),
            fmt_float(c.macdonald.lhs),
            fmt_float(c.macdonald.rhs),
            fmt_float(c.macdonald.rel_err)
        );
        let _ = writeln!(
            s,
            "{}  {sys:<4} relation13   c = {}  residual {} (tol {tol})",
            status(c.relation13.pass),
            fmt_float(c.relation13.c),
            fmt_float(c.relation13.residual)
        );
        let _ = writeln!(
            s,
            "{}  {sys:<4} coincidence  |q_bar(U2) - q_bar(U1)| = {} (tol {tol})",
            status(c.coincidence.pass),
            fmt_float(c.coincidence.distance)
        );
        let _ = writeln!(
            s,
            "{}  {sys:<4} gap          linear parts ({}) vs 2r_coroot ({}) (exact)",
            status(c.gap.pass),
            fmt_q_list(&c.gap.linear_parts),
            fmt_q_list(&c.gap.predicted)
        );
    }
    let passed = report.records.iter().filter(|r| r.pass()).count();
    let _ = writeln!(s, "{}  {passed}/{} systems", status(report.pass()), report.records.len());
    s
}

pub const TABLE_COLUMNS: [&str; 14] = [
    "system",
    "rank",
    "positive_roots",
    "degrees",
    "z",
    "r_root",
    "r_coroot",
    "eigs_a1",
    "c_fit",
    "macdonald_lhs",
    "macdonald_rhs",
    "identity_lhs",
    "identity_rhs",
    "pass",
];

/// One row per system, in [`TABLE_COLUMNS`] order. Rows for failed systems
/// carry the error text in the last column.
pub fn table_rows(report: &VerificationReport, systems: &[Option<RootSystemData>]) -> Vec<Vec<String>> {
    report
        .records
        .iter()
        .zip(systems)
        .map(|(rec, rs)| {
            let (c, rs) = match (&rec.outcome, rs) {
                (Ok(c), Some(rs)) => (c, rs),
                (Err(e), _) => {
                    let mut row = vec![String::new(); TABLE_COLUMNS.len()];
                    row[0] = rec.system.clone();
                    row[13] = format!("error: {e}");
                    return row;
                }
                (Ok(_), None) => unreachable!("successful record without system data"),
            };
            let exact = crate::rational::from_f64(report.g.long).zip(crate::rational::from_f64(report.g.short));
            let (r_root, r_coroot) = match exact {
                Some((l, s)) => {
                    let (_, rc) = rs.rho_and_r(&Coupling::new(l, s));
                    (fmt_q_list(&rc.r_root), fmt_q_list(&rc.r_coroot))
                }
                None => {
                    let (_, rc) = rs.rho_and_r(&report.g);
                    (fmt_list(&rc.r_root), fmt_list(&rc.r_coroot))
                }
            };
            let degrees: Vec<String> = rs.degrees().iter().map(u32::to_string).collect();
            vec![
                rec.system.clone(),
                rs.rank().to_string(),
                rs.positive_roots().len().to_string(),
                degrees.join(", "),
                rs.center_order().to_string(),
                r_root,
                r_coroot,
                fmt_list(&c.equilibrium.eigs_a1),
                fmt_float(c.equilibrium.c_fit),
                fmt_float(c.macdonald.lhs),
                fmt_float(c.macdonald.rhs),
                c.identity.lhs.to_string(),
                c.identity.rhs.to_string(),
                c.pass().to_string(),
            ]
        })
        .collect()
}

pub fn table_csv(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(TABLE_COLUMNS).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn table_json(rows: &[Vec<String>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let m: Map<String, Value> =
                    TABLE_COLUMNS.iter().zip(row).map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn table_text(rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = TABLE_COLUMNS.iter().map(|c| c.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut s = String::new();
    let line = |cells: Vec<&str>| -> String {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let _ = writeln!(s, "{}", line(TABLE_COLUMNS.to_vec()));
    for row in rows {
        let _ = writeln!(s, "{}", line(row.iter().map(String::as_str).collect()));
    }
    s
}
