use gradedlie::derivops::{galois_image_report, galois_image_report_labeled, model_elements, outder_dim};
use gradedlie::freelie::{witt_dims, DimensionTable, GeneratorSpec};
use gradedlie::lieco::{ce_cohomology, GradedLiePresentation};
use gradedlie::textfmt::LabeledElement;
use gradedlie::wcomp::{
    dn, ext_dims, h1_dim, motivic_presentation, polylog_report, weighted_completion_presentation, FieldSignature, Freeness,
    WeightedCompletionInput,
};
use gradedlie::Result;
use serde_json::{json, Map, Value};

use crate::render::{table, to_value, Report};

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are JSON objects"),
    }
}

fn generator_rows(spec: &GeneratorSpec) -> Vec<Value> {
    let sign = spec.sign().unwrap_or(-1) as i64;
    (0..spec.len())
        .map(|i| json!({"label": spec.label(i), "weight": sign * spec.degree(i) as i64}))
        .collect()
}

fn generator_line(spec: &GeneratorSpec) -> String {
    if spec.is_empty() {
        return "generators: none\n".into();
    }
    let sign = spec.sign().unwrap_or(-1) as i64;
    let parts: Vec<String> = (0..spec.len())
        .map(|i| format!("{}@{}", spec.label(i), sign * spec.degree(i) as i64))
        .collect();
    format!("generators: {}\n", parts.join(" "))
}

fn dim_rows(t: &DimensionTable) -> Vec<Vec<String>> {
    t.iter().map(|(w, d)| vec![w.to_string(), d.to_string()]).collect()
}

pub fn dims(sig: &FieldSignature, n_max: u32) -> Result<Report> {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 1..=n_max as i64 {
        let (d, h) = (dn(sig, n)?, h1_dim(sig, n)?);
        rows.push(vec![n.to_string(), d.to_string(), h.to_string()]);
        json_rows.push(json!({"n": n, "d_n": d, "h1": h}));
    }
    let header = vec!["n", "d_n", "h1"];
    Ok(Report {
        command: "dims",
        json: object(json!({"signature": sig, "rows": json_rows})),
        text: format!("signature: {sig}\n{}", table(&header, &rows)),
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn motivic_lie(sig: &FieldSignature, weight_bound: i64) -> Result<Report> {
    let pres = motivic_presentation(sig, weight_bound)?;
    let dims: DimensionTable = witt_dims(pres.generators(), weight_bound)?
        .iter()
        .filter(|(w, _)| w % 2 == 0)
        .collect();
    let freeness = weighted_completion_presentation(&WeightedCompletionInput::from_signature(sig, weight_bound)?)?;
    let header = vec!["weight", "dim"];
    let rows = dim_rows(&dims);
    let text = format!(
        "signature: {sig}\nweight bound: {weight_bound}\n{}freeness: {}\n{}",
        generator_line(pres.generators()),
        freeness.freeness,
        table(&header, &rows)
    );
    Ok(Report {
        command: "motivic-lie",
        json: object(json!({
            "signature": sig,
            "weight_bound": weight_bound,
            "generators": generator_rows(pres.generators()),
            "dims": dims,
            "freeness": freeness.freeness,
            "audit": freeness.audit,
        })),
        text,
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn cohomology(pres: &GradedLiePresentation, max_degree: usize, gap: Option<u32>) -> Result<Report> {
    let report = ce_cohomology(pres, max_degree, pres.weight_bound())?;
    let gap = gap.or(report.min_generator_degree).unwrap_or(1);
    report.check_weight_vanishing(gap)?;
    let header = vec!["degree", "weight", "cochains", "h"];
    let mut rows = Vec::new();
    for (m, t) in report.h.iter().enumerate() {
        for (w, d) in t.iter() {
            rows.push(vec![m.to_string(), w.to_string(), report.cochain_dim(m, w).to_string(), d.to_string()]);
        }
    }
    let mut text = generator_line(pres.generators());
    text += &format!("relations: {}\n", pres.relations().len());
    for r in pres.relations() {
        text += &format!("  {r}\n");
    }
    text += &format!(
        "weight bound: {}\nweight vanishing: H^m = 0 below weight {gap}m, checked\n",
        pres.weight_bound()
    );
    for (m, t) in report.h.iter().enumerate() {
        text += &format!("H^{m}: {}\n", t.nonzero().collect::<DimensionTable>());
    }
    text += &table(&header, &rows);
    let mut json = object(to_value(&report));
    json.insert("presentation".into(), to_value(pres));
    json.insert("vanishing_gap".into(), gap.into());
    Ok(Report {
        command: "cohomology",
        json,
        text,
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn galois(elements: Option<&[LabeledElement]>, degree_max: u32, modulo_inner: bool) -> Result<Report> {
    let r = match elements {
        Some(v) => {
            let inputs: Vec<_> = v.iter().map(|e| (e.element.clone(), e.degree)).collect();
            let labels: Vec<String> = v.iter().map(|e| e.label.clone()).collect();
            galois_image_report_labeled(&inputs, &labels, -2 * degree_max as i64, modulo_inner)?
        }
        None => galois_image_report(&model_elements(degree_max)?, -2 * degree_max as i64, modulo_inner)?,
    };
    let header = vec!["degree", "weight", "observed", "free_bound"];
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|x| vec![x.degree.to_string(), x.weight.to_string(), x.observed.to_string(), x.free_bound.to_string()])
        .collect();
    let mut text = String::new();
    if r.model {
        text += "MODEL: inputs are the depth-one elements ad(x)^(m-1)(y), not Galois images\n";
    }
    text += &format!("space: {}\nelements:\n", r.space);
    for e in &r.elements {
        text += &format!("  {} (degree {}): {}\n", e.label, e.degree, e.element);
    }
    text += &table(&header, &rows);
    text += &format!("verdict: {}\n", r.verdict);
    for c in &r.certificates {
        text += &format!("certificate degree {}: {}\n", c.degree, c.witnesses.join(", "));
    }
    for c in &r.ihara_certificates {
        let status = if c.nonzero { format!("nonzero, {} terms", c.terms) } else { "zero".into() };
        text += &format!("ihara {{{},{}}} degree {}: {status}\n", c.left, c.right, c.degree);
    }
    Ok(Report {
        command: "galois",
        json: object(to_value(&r)),
        text,
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn polylog(sig: &FieldSignature, weight_bound: i64) -> Result<Report> {
    let r = polylog_report(sig, weight_bound)?;
    let header = vec!["weight", "quotient", "polylog_side"];
    let rows: Vec<Vec<String>> = r
        .polylog_side
        .iter()
        .map(|(w, p)| vec![w.to_string(), r.quotient.get(w).to_string(), p.to_string()])
        .collect();
    let disc: Vec<String> = r.discrepancies.iter().map(i64::to_string).collect();
    let text = format!(
        "signature: {sig}\nquotient: {}\n{}discrepancies: {}\n",
        r.quotient,
        table(&header, &rows),
        if disc.is_empty() { "none".into() } else { disc.join(" ") }
    );
    let mut json = object(to_value(&r));
    json.insert("signature".into(), to_value(sig));
    Ok(Report {
        command: "polylog",
        json,
        text,
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn completion(input: &WeightedCompletionInput) -> Result<Report> {
    let r = weighted_completion_presentation(input)?;
    let spec = r.presentation.generators();
    let header = vec!["weight", "generators"];
    let rows: Vec<Vec<String>> = spec
        .multiplicities()
        .into_iter()
        .rev()
        .map(|(w, c)| vec![w.to_string(), c.to_string()])
        .collect();
    let mut text = format!("weight bound: {}\ngap N: {}\n", input.weight_bound, input.gap);
    text += &generator_line(spec);
    if r.trivial {
        text += "trivial: the prounipotent radical is trivial\n";
    }
    text += &format!("freeness: {}\n", r.freeness);
    if let Freeness::Unknown {
        obstructions,
        gap_violations,
        ..
    } = &r.freeness
    {
        for (name, v) in [("h2 obstructions", obstructions), ("h1 in the gap", gap_violations)] {
            if !v.is_empty() {
                let w: Vec<String> = v.iter().map(i64::to_string).collect();
                text += &format!("{name}: {}\n", w.join(" "));
            }
        }
    }
    for f in &r.audit {
        text += &format!("W_n H^{} = 0 for n > {}", f.degree, f.vanishes_above);
        if !f.discarded.is_empty() {
            let d: Vec<String> = f.discarded.iter().map(i64::to_string).collect();
            text += &format!(", discarded data at {}", d.join(" "));
        }
        text += "\n";
    }
    text += &table(&header, &rows);
    let mut json = object(to_value(&r));
    json.insert("generators".into(), generator_rows(spec).into());
    json.insert("input".into(), to_value(input));
    Ok(Report {
        command: "completion",
        json,
        text,
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn ext(sig: &FieldSignature, n_max: u32, m_max: usize) -> Result<Report> {
    let bound = -2 * n_max.max(1) as i64;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for n in 0..=n_max as i64 {
        for m in 0..=m_max {
            let d = ext_dims(sig, n, m, bound)?;
            rows.push(vec![n.to_string(), m.to_string(), d.to_string()]);
            json_rows.push(json!({"n": n, "m": m, "dim": d}));
        }
    }
    let header = vec!["n", "m", "dim"];
    Ok(Report {
        command: "ext",
        json: object(json!({"signature": sig, "rows": json_rows})),
        text: format!("signature: {sig}\nExt^m(Q, Q(n))\n{}", table(&header, &rows)),
        csv_header: header,
        csv_rows: rows,
    })
}

pub fn outder(weight_bound: i64) -> Result<Report> {
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut w = 0;
    while w >= weight_bound {
        let (der, inner, outer) = outder_dim(w)?;
        rows.push(vec![w.to_string(), der.to_string(), inner.to_string(), outer.to_string()]);
        json_rows.push(json!({"weight": w, "der": der, "inner": inner, "outer": outer}));
        w -= 2;
    }
    let header = vec!["weight", "der", "inner", "outer"];
    Ok(Report {
        command: "outder",
        json: object(json!({"weight_bound": weight_bound, "rows": json_rows})),
        text: format!("derivations of the free Lie algebra on x, y (weight -2)\n{}", table(&header, &rows)),
        csv_header: header,
        csv_rows: rows,
    })
}
