//! Requests, self-describing run records and their rendering for the
//! `tevelev` command line.
//!
//! A [`RunRecord`] stores the command name and its inputs as strings, so
//! [`Request::from_record`] can rebuild the request and [`execute`] will
//! reproduce the outputs exactly. Every number is a decimal string.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tevelev::certify::{certify_target, very_free_search, very_free_search_bound, CITE_P1, CITE_VERY_FREE};
use tevelev::closed_forms::{vtev, Formula};
use tevelev::qh::tqft_vtev;
use tevelev::schubert::{tev_p1_binomial, tev_p1_schubert};
use tevelev::targets::{c1_pairing, make_problem, marking_count, TargetSpec};
use tevelev::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_WELL_POSEDNESS: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Binomial,
    Schubert,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Binomial => "binomial",
            Method::Schubert => "schubert",
            Method::Both => "both",
        }
    }

    pub fn parse(text: &str) -> Option<Method> {
        match text {
            "binomial" => Some(Method::Binomial),
            "schubert" => Some(Method::Schubert),
            "both" => Some(Method::Both),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Request {
    Vtev { target: String, g: u32, d: u64 },
    TevP1 { g: u32, d: u64, method: Method },
    QhCheck { r: u32, g_max: u32, d_max: u64, cases: bool },
    Certify { target: String, g: u32, d: u64, h1_bound: Option<u64> },
    VeryFree { e: u64, r: u64, p: u64 },
}

impl Request {
    pub fn command(&self) -> &'static str {
        match self {
            Request::Vtev { .. } => "vtev",
            Request::TevP1 { .. } => "tev-p1",
            Request::QhCheck { .. } => "qh-check",
            Request::Certify { .. } => "certify",
            Request::VeryFree { .. } => "very-free",
        }
    }

    pub fn inputs(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        match self {
            Request::Vtev { target, g, d } => {
                put("target", target.clone());
                put("g", g.to_string());
                put("d", d.to_string());
            }
            Request::TevP1 { g, d, method } => {
                put("g", g.to_string());
                put("d", d.to_string());
                put("method", method.name().to_string());
            }
            Request::QhCheck { r, g_max, d_max, cases } => {
                put("r", r.to_string());
                put("g_max", g_max.to_string());
                put("d_max", d_max.to_string());
                put("cases", cases.to_string());
            }
            Request::Certify { target, g, d, h1_bound } => {
                put("target", target.clone());
                put("g", g.to_string());
                put("d", d.to_string());
                if let Some(k) = h1_bound {
                    put("h1_bound", k.to_string());
                }
            }
            Request::VeryFree { e, r, p } => {
                put("e", e.to_string());
                put("r", r.to_string());
                put("p", p.to_string());
            }
        }
        map
    }

    pub fn from_record(command: &str, inputs: &BTreeMap<String, String>) -> Result<Request, String> {
        fn field<T: std::str::FromStr>(inputs: &BTreeMap<String, String>, key: &str) -> Result<T, String> {
            let raw = inputs.get(key).ok_or_else(|| format!("missing input '{key}'"))?;
            raw.parse().map_err(|_| format!("bad value '{raw}' for '{key}'"))
        }
        let text = |key: &str| field::<String>(inputs, key);
        Ok(match command {
            "vtev" => Request::Vtev { target: text("target")?, g: field(inputs, "g")?, d: field(inputs, "d")? },
            "tev-p1" => {
                let method = text("method")?;
                Request::TevP1 {
                    g: field(inputs, "g")?,
                    d: field(inputs, "d")?,
                    method: Method::parse(&method).ok_or_else(|| format!("unknown method '{method}'"))?,
                }
            }
            "qh-check" => Request::QhCheck {
                r: field(inputs, "r")?,
                g_max: field(inputs, "g_max")?,
                d_max: field(inputs, "d_max")?,
                cases: field(inputs, "cases")?,
            },
            "certify" => Request::Certify {
                target: text("target")?,
                g: field(inputs, "g")?,
                d: field(inputs, "d")?,
                h1_bound: inputs.contains_key("h1_bound").then(|| field(inputs, "h1_bound")).transpose()?,
            },
            "very-free" => Request::VeryFree { e: field(inputs, "e")?, r: field(inputs, "r")?, p: field(inputs, "p")? },
            other => return Err(format!("unknown command '{other}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, Value>,
    pub citations: Vec<String>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<String>,
}

impl RunRecord {
    fn new(request: &Request) -> Self {
        RunRecord {
            command: request.command().to_string(),
            inputs: request.inputs(),
            outputs: BTreeMap::new(),
            citations: Vec::new(),
            status: "ok".to_string(),
            error_kind: None,
        }
    }

    fn put(&mut self, key: &str, value: Value) {
        self.outputs.insert(key.to_string(), value);
    }

    fn fail(mut self, err: &Error) -> Self {
        self.status = "error".to_string();
        self.error_kind = Some(err.kind().to_string());
        self.put("message", Value::String(err.to_string()));
        self
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn exit_code(&self) -> i32 {
        match self.error_kind.as_deref() {
            None => EXIT_OK,
            Some("ParseError") => EXIT_PARSE,
            Some("NonIntegerN" | "NegativeN" | "UnstableRange" | "NonFano") => EXIT_WELL_POSEDNESS,
            Some(_) => EXIT_HYPOTHESIS,
        }
    }
}

fn dec(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn execute(request: &Request) -> RunRecord {
    let mut record = RunRecord::new(request);
    let result = match request {
        Request::Vtev { target, g, d } => run_vtev(&mut record, target, *g, *d),
        Request::TevP1 { g, d, method } => run_tev_p1(&mut record, *g, *d, *method),
        Request::QhCheck { r, g_max, d_max, cases } => run_qh_check(&mut record, *r, *g_max, *d_max, *cases),
        Request::Certify { target, g, d, h1_bound } => run_certify(&mut record, target, *g, *d, *h1_bound),
        Request::VeryFree { e, r, p } => run_very_free(&mut record, *e, *r, *p),
    };
    match result {
        Ok(()) => record,
        Err(err) => record.fail(&err),
    }
}

/// Execute every request in parallel; the output keeps the input order.
pub fn execute_all(requests: &[Request]) -> Vec<RunRecord> {
    requests.par_iter().map(execute).collect()
}

/// Re-run a stored record and compare outputs.
pub fn replay(record: &RunRecord) -> Result<RunRecord, String> {
    let request = Request::from_record(&record.command, &record.inputs)?;
    Ok(execute(&request))
}

/// Requests for every `(g, d)` cell of `[g_min, g_max] x [d_min, d_max]`,
/// ordered lexicographically in `(g, d)`.
pub fn sweep_grid(g_min: u32, g_max: u32, d_min: u64, d_max: u64, cell: impl Fn(u32, u64) -> Request) -> Vec<Request> {
    (g_min..=g_max).flat_map(|g| (d_min..=d_max).map(move |d| (g, d))).map(|(g, d)| cell(g, d)).collect()
}

fn run_vtev(record: &mut RunRecord, target: &str, g: u32, d: u64) -> Result<(), Error> {
    let x: TargetSpec = target.parse()?;
    record.put("n_rational", dec(marking_count(&x, g, d)));
    let problem = make_problem(&x, g, d)?;
    let n = problem.markings();
    let result = vtev(&problem)?;
    record.put("value", dec(&result.value));
    record.put("formula", dec(result.formula.tag()));
    record.put("n", dec(n));
    record.put("c1", dec(c1_pairing(&x, d)));
    record.put("dimension_rhs", dec(u128::from(x.dim()) * (u128::from(n) + u128::from(g) - 1)));
    record.put("dimension_constraint", Value::Bool(problem.dimension_constraint_holds()));
    let factors: Vec<Value> = result
        .factors
        .iter()
        .map(|(base, exp)| json!({ "base": base.to_string(), "exponent": exp.to_string() }))
        .collect();
    record.put("factorization", Value::Array(factors));
    record.citations.push(result.formula.tag().to_string());
    Ok(())
}

fn run_tev_p1(record: &mut RunRecord, g: u32, d: u64, method: Method) -> Result<(), Error> {
    let problem = make_problem(&TargetSpec::projective(1)?, g, d)?;
    record.put("n", dec(problem.markings()));
    record.put("l", dec(d as i64 - i64::from(g) - 1));
    record.citations.push(CITE_P1.to_string());
    match method {
        Method::Binomial => {
            record.put("binomial", dec(tev_p1_binomial(g, d)));
        }
        Method::Schubert => {
            record.put("schubert", dec(tev_p1_schubert(g, d)?));
        }
        Method::Both => {
            let binomial = tev_p1_binomial(g, d);
            let schubert = tev_p1_schubert(g, d)?;
            record.put("agree", Value::Bool(binomial == schubert));
            record.put("binomial", dec(&binomial));
            record.put("schubert", dec(&schubert));
        }
    }
    let value = match (record.outputs.get("binomial"), record.outputs.get("schubert")) {
        (Some(a), Some(b)) if a != b => None,
        (Some(v), _) | (_, Some(v)) => Some(v.clone()),
        _ => None,
    };
    if let Some(v) = value {
        record.put("value", v);
    }
    Ok(())
}

fn run_qh_check(record: &mut RunRecord, r: u32, g_max: u32, d_max: u64, cases: bool) -> Result<(), Error> {
    let x = TargetSpec::projective(r)?;
    let cells: Vec<(u32, u64)> = (0..=g_max).flat_map(|g| (1..=d_max).map(move |d| (g, d))).collect();
    let rows: Vec<Value> = cells
        .par_iter()
        .filter_map(|&(g, d)| {
            let problem = make_problem(&x, g, d).ok()?;
            let closed = vtev(&problem).ok()?.value;
            let oracle = tqft_vtev(r, u64::from(g), d, problem.markings());
            Some(json!({
                "g": g.to_string(),
                "d": d.to_string(),
                "n": problem.markings().to_string(),
                "tqft": oracle.to_string(),
                "closed_form": closed.to_string(),
                "agree": oracle == closed,
            }))
        })
        .collect();
    let mismatches = rows.iter().filter(|row| row["agree"] != Value::Bool(true)).count();
    record.put("cases", dec(rows.len()));
    record.put("mismatches", dec(mismatches));
    if cases {
        record.put("records", Value::Array(rows));
    }
    record.citations.push(Formula::ProjectiveSpace.tag().to_string());
    Ok(())
}

fn run_certify(record: &mut RunRecord, target: &str, g: u32, d: u64, h1_bound: Option<u64>) -> Result<(), Error> {
    let mut x: TargetSpec = target.parse()?;
    if let Some(k) = h1_bound {
        x = x.with_h1_bound(k);
    }
    if let Ok(problem) = make_problem(&x, g, d) {
        record.put("n", dec(problem.markings()));
    }
    let cert = certify_target(&x, g, d);
    record.put("status", dec(cert.status.name()));
    record.put("cited", dec(&cert.cited));
    let checks: Vec<Value> = cert
        .checks
        .iter()
        .map(|c| {
            json!({
                "description": c.description,
                "lhs": c.lhs.to_string(),
                "relation": c.relation.symbol(),
                "rhs": c.rhs.to_string(),
                "holds": c.holds,
            })
        })
        .collect();
    record.put("checks", Value::Array(checks));
    if let Some(v) = &cert.vtev_value {
        record.put("vtev", dec(v));
    }
    if let Some(v) = &cert.geometric_value {
        record.put("geometric", dec(v));
    }
    record.put("audit", Value::Bool(cert.audit()));
    record.citations.push(cert.cited.clone());
    Ok(())
}

fn run_very_free(record: &mut RunRecord, e: u64, r: u64, p: u64) -> Result<(), Error> {
    let report = very_free_search(e, r, p)?;
    record.put("n", dec(report.n));
    record.put("d", dec(report.d));
    record.put("valuation", dec(report.vtev_valuation));
    record.put("search_bound", dec(very_free_search_bound(e, r)));
    let conditions: Vec<Value> = report
        .conditions
        .iter()
        .map(|(name, holds)| json!({ "name": name, "holds": holds }))
        .collect();
    record.put("conditions", Value::Array(conditions));
    record.put("failed", Value::Array(report.failed_conditions().map(dec).collect()));
    record.put("conclusion", Value::Bool(report.conclusion));
    record.citations.push(CITE_VERY_FREE.to_string());
    Ok(())
}

/// Flatten a JSON value into `(path, leaf)` pairs, e.g. `checks[0].lhs`.
pub fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&path, v, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push((prefix.to_string(), "[]".to_string()));
            }
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render_table(record: &RunRecord) -> String {
    let mut rows = vec![("command".to_string(), record.command.clone()), ("status".to_string(), record.status.clone())];
    if let Some(kind) = &record.error_kind {
        rows.push(("error_kind".to_string(), kind.clone()));
    }
    for (k, v) in &record.inputs {
        rows.push((format!("input.{k}"), v.clone()));
    }
    let mut outputs = Vec::new();
    for (k, v) in &record.outputs {
        flatten(&format!("output.{k}"), v, &mut outputs);
    }
    rows.extend(outputs);
    if !record.citations.is_empty() {
        rows.push(("citations".to_string(), record.citations.join(", ")));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut text = String::new();
    for (k, v) in rows {
        let _ = writeln!(text, "{k:<width$}  {v}");
    }
    text
}

pub fn render_json(record: &RunRecord) -> String {
    serde_json::to_string(record).expect("records serialise")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out<'a>(record: &'a RunRecord, key: &str) -> &'a Value {
        record.outputs.get(key).unwrap_or_else(|| panic!("missing {key} in {record:?}"))
    }

    #[test]
    fn vtev_examples() {
        let r = execute(&Request::Vtev { target: "p:1".into(), g: 2, d: 3 });
        assert!(r.is_ok());
        assert_eq!(out(&r, "value"), "4");
        assert_eq!(out(&r, "n"), "5");
        assert_eq!(out(&r, "dimension_constraint"), &Value::Bool(true));
        let r = execute(&Request::Vtev { target: "quadric:3".into(), g: 1, d: 3 });
        assert_eq!(out(&r, "value"), "2");
        let r = execute(&Request::Vtev { target: "p:2".into(), g: 0, d: 1 });
        assert_eq!(r.error_kind.as_deref(), Some("NonIntegerN"));
        assert_eq!(out(&r, "n_rational"), "5/2");
        assert_eq!(r.exit_code(), EXIT_WELL_POSEDNESS);
        let r = execute(&Request::Vtev { target: "nope".into(), g: 0, d: 1 });
        assert_eq!(r.exit_code(), EXIT_PARSE);
        let r = execute(&Request::Vtev { target: "custom:3:4".into(), g: 1, d: 3 });
        assert_eq!(r.error_kind.as_deref(), Some("NoKnownFormula"));
        assert_eq!(r.exit_code(), EXIT_HYPOTHESIS);
    }

    #[test]
    fn tev_p1_examples() {
        let r = execute(&Request::TevP1 { g: 3, d: 4, method: Method::Both });
        assert_eq!((out(&r, "binomial"), out(&r, "schubert")), (&dec(8), &dec(8)));
        assert_eq!(out(&r, "agree"), &Value::Bool(true));
        let r = execute(&Request::TevP1 { g: 2, d: 2, method: Method::Both });
        assert_eq!(out(&r, "value"), "1");
        let r = execute(&Request::TevP1 { g: 0, d: 1, method: Method::Binomial });
        assert_eq!(out(&r, "value"), "1");
        let r = execute(&Request::TevP1 { g: 3, d: 1, method: Method::Schubert });
        assert_eq!(r.error_kind.as_deref(), Some("DegreeUnderflow"));
        assert_eq!(r.exit_code(), EXIT_HYPOTHESIS);
    }

    #[test]
    fn qh_check_examples() {
        for (r, g_max, d_max) in [(1, 6, 20), (3, 4, 20)] {
            let rec = execute(&Request::QhCheck { r, g_max, d_max, cases: false });
            assert_eq!(out(&rec, "mismatches"), "0");
        }
        let rec = execute(&Request::QhCheck { r: 1, g_max: 0, d_max: 1, cases: true });
        assert_eq!(out(&rec, "cases"), "1");
        assert_eq!(out(&rec, "mismatches"), "0");
        assert_eq!(out(&rec, "records")[0]["tqft"], "1");
    }

    #[test]
    fn certify_examples() {
        let r = execute(&Request::Certify { target: "p:1".into(), g: 3, d: 3, h1_bound: None });
        assert_eq!(out(&r, "status"), "NotEnumerative");
        assert_eq!((out(&r, "vtev"), out(&r, "geometric")), (&dec(8), &dec(4)));
        let r = execute(&Request::Certify { target: "hyp:3:8".into(), g: 0, d: 8, h1_bound: None });
        assert_eq!(out(&r, "status"), "Enumerative");
        assert_eq!(out(&r, "cited"), "Cor 4.6");
        let r = execute(&Request::Certify { target: "hyp:4:9".into(), g: 1, d: 18, h1_bound: None });
        assert_eq!(out(&r, "status"), "Unknown");
        let r = execute(&Request::Certify { target: "hyp:3:5".into(), g: 2, d: 35, h1_bound: None });
        assert_eq!(out(&r, "status"), "AsymptoticallyEnumerative");
        let r = execute(&Request::Certify { target: "custom:7:5:5:5".into(), g: 1, d: 7, h1_bound: Some(3) });
        assert_eq!(out(&r, "status"), "AsymptoticallyEnumerative");
        assert_eq!(r.inputs["h1_bound"], "3");
    }

    #[test]
    fn very_free_examples() {
        let r = execute(&Request::VeryFree { e: 3, r: 8, p: 5 });
        assert_eq!((out(&r, "n"), out(&r, "d")), (&dec(8), &dec(8)));
        assert_eq!(out(&r, "conclusion"), &Value::Bool(true));
        let r = execute(&Request::VeryFree { e: 3, r: 5, p: 7 });
        assert_eq!(out(&r, "conclusion"), &Value::Bool(false));
        assert_eq!(out(&r, "failed"), &json!(["r>(e+2)(e-2)"]));
        let r = execute(&Request::VeryFree { e: 4, r: 13, p: 5 });
        assert_eq!((out(&r, "n"), out(&r, "d")), (&dec(12), &dec(13)));
        let r = execute(&Request::VeryFree { e: 3, r: 8, p: 9 });
        assert_eq!(r.error_kind.as_deref(), Some("NotPrime"));
    }

    #[test]
    fn records_replay_identically() {
        let requests = vec![
            Request::Vtev { target: "hyp:3:7".into(), g: 1, d: 7 },
            Request::Vtev { target: "p:2".into(), g: 0, d: 1 },
            Request::TevP1 { g: 5, d: 4, method: Method::Both },
            Request::QhCheck { r: 2, g_max: 3, d_max: 9, cases: true },
            Request::Certify { target: "custom:7:5:5:5:2".into(), g: 1, d: 7, h1_bound: None },
            Request::Certify { target: "gp:4:5".into(), g: 1, d: 4, h1_bound: Some(8) },
            Request::VeryFree { e: 5, r: 30, p: 7 },
        ];
        for record in execute_all(&requests) {
            let line = render_json(&record);
            let parsed: RunRecord = serde_json::from_str(&line).unwrap();
            assert_eq!(parsed, record);
            assert_eq!(replay(&parsed).unwrap(), record);
        }
    }

    #[test]
    fn sweep_preserves_lexicographic_order() {
        let requests = sweep_grid(0, 3, 1, 5, |g, d| Request::Vtev { target: "p:1".into(), g, d });
        let records = execute_all(&requests);
        let cells: Vec<(String, String)> = records.iter().map(|r| (r.inputs["g"].clone(), r.inputs["d"].clone())).collect();
        let mut expected = Vec::new();
        for g in 0..=3 {
            for d in 1..=5 {
                expected.push((g.to_string(), d.to_string()));
            }
        }
        assert_eq!(cells, expected);
    }

    #[test]
    fn table_and_json_carry_the_same_numbers() {
        let r = execute(&Request::Certify { target: "p:2".into(), g: 3, d: 4, h1_bound: None });
        let table = render_table(&r);
        let json: Value = serde_json::from_str(&render_json(&r)).unwrap();
        let mut leaves = Vec::new();
        flatten("", &json["outputs"], &mut leaves);
        for (path, leaf) in leaves {
            let row = format!("output.{path}");
            assert!(table.lines().any(|l| l.starts_with(&row) && l.ends_with(&leaf)), "{row} = {leaf}\n{table}");
        }
    }
}
