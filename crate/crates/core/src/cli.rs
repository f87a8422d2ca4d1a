//! Run configuration, report types and the command implementations behind the
//! `relbell` binary.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bell::{BellForm, BellResult};
use crate::composite::{schmidt_decompose, BellKind, CompositeState, SchmidtDecomposition};
use crate::error::{Error, Result};
use crate::hilbert::{DimensionId, Dimensions, OrderEffect};
use crate::loglab::{
    oracle_report, parse_log, run_pipeline, score_queries, tensor_pair, Case, DocumentPair,
    Provenance,
};

/// Significant digits kept for every floating-point number in reports.
pub const REPORT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Argument(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub dimensions: Dimensions,
    pub standard: DimensionId,
    pub cases: Vec<Case>,
    pub forms: Vec<BellForm>,
    pub min_cooccurrence: usize,
    pub half_tolerance: f64,
    pub oracle: bool,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        let dimensions = Dimensions::default();
        RunConfig {
            standard: dimensions.first().clone(),
            dimensions,
            cases: Case::ALL.to_vec(),
            forms: BellForm::PAIR_FORMS.to_vec(),
            min_cooccurrence: 2,
            half_tolerance: 0.0,
            oracle: false,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.dimensions.contains(&self.standard) {
            return Err(Error::UnknownDimension(self.standard.to_string()));
        }
        if self.cases.is_empty() {
            return Err(Error::Argument("no cases selected".into()));
        }
        if self.forms.is_empty() {
            return Err(Error::Argument("no inequality forms selected".into()));
        }
        if self.forms.contains(&BellForm::ChshComposite) {
            return Err(Error::Argument(
                "chsh_composite applies to composite states only; use --oracle".into(),
            ));
        }
        if self.min_cooccurrence == 0 {
            return Err(Error::Argument(
                "min-cooccurrence must be at least 1".into(),
            ));
        }
        if !(0.0..=0.5).contains(&self.half_tolerance) {
            return Err(Error::Argument(
                "half-tolerance must lie in [0, 0.5]".into(),
            ));
        }
        Ok(())
    }
}

/// Parses `1,2,3` / `I,II,III` / `all`.
pub fn parse_cases(s: &str) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let cases: &[Case] = match part.to_ascii_uppercase().as_str() {
            "ALL" => &Case::ALL,
            "1" | "I" => &[Case::I],
            "2" | "II" => &[Case::II],
            "3" | "III" => &[Case::III],
            _ => return Err(Error::Argument(format!("unknown case `{part}`"))),
        };
        for c in cases {
            if !out.contains(c) {
                out.push(*c);
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn parse_forms(s: &str) -> Result<Vec<BellForm>> {
    let mut out: Vec<BellForm> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(BellForm::PAIR_FORMS);
        } else {
            out.push(part.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Identifies a pair without carrying its states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSummary {
    pub case: Case,
    pub first_doc: String,
    pub second_doc: String,
    pub provenance: Provenance,
}

impl PairSummary {
    pub fn label(&self) -> String {
        format!(
            "{}:{}|{}@{}",
            self.case.as_str(),
            self.first_doc,
            self.second_doc,
            self.provenance.query_ids.join("+")
        )
    }
}

impl From<&DocumentPair> for PairSummary {
    fn from(p: &DocumentPair) -> Self {
        PairSummary {
            case: p.case,
            first_doc: p.first.doc_id().to_string(),
            second_doc: p.second.doc_id().to_string(),
            provenance: p.provenance.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    #[serde(flatten)]
    pub summary: PairSummary,
    pub results: Vec<BellResult>,
    pub schmidt: SchmidtDecomposition,
    pub rotationally_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderEffectRow {
    pub query_id: String,
    pub doc_id: String,
    #[serde(flatten)]
    pub effect: OrderEffect,
}

/// Entangled reference state evaluated with the same CHSH machinery as the pipeline pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub kind: BellKind,
    pub coefficients: [f64; 4],
    /// Measurement directions `a1, a2, b1, b2` in radians.
    pub angles: [f64; 4],
    pub chsh: BellResult,
    pub schmidt: SchmidtDecomposition,
    pub rotationally_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub pairs_tested: usize,
    pub pairs_by_case: BTreeMap<Case, usize>,
    pub case3_correlated: usize,
    pub results_evaluated: usize,
    pub violations: usize,
    pub violations_by_form: BTreeMap<BellForm, usize>,
    pub max_statistic_by_form: BTreeMap<BellForm, f64>,
    pub non_separable_pairs: usize,
}

impl Aggregates {
    pub fn compute(
        pairs: &[PairReport],
        case3_correlated: usize,
        oracle: Option<&OracleReport>,
    ) -> Self {
        let mut agg = Aggregates {
            pairs_tested: pairs.len(),
            pairs_by_case: BTreeMap::new(),
            case3_correlated,
            results_evaluated: 0,
            violations: 0,
            violations_by_form: BTreeMap::new(),
            max_statistic_by_form: BTreeMap::new(),
            non_separable_pairs: pairs.iter().filter(|p| !p.schmidt.is_separable()).count(),
        };
        for p in pairs {
            *agg.pairs_by_case.entry(p.summary.case).or_default() += 1;
        }
        let results = pairs
            .iter()
            .flat_map(|p| p.results.iter())
            .chain(oracle.map(|o| &o.chsh));
        for r in results {
            agg.results_evaluated += 1;
            let max = agg
                .max_statistic_by_form
                .entry(r.form)
                .or_insert(f64::NEG_INFINITY);
            *max = max.max(r.statistic);
            let v = agg.violations_by_form.entry(r.form).or_default();
            if r.violated {
                *v += 1;
                agg.violations += 1;
            }
        }
        agg
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub pairs: Vec<PairReport>,
    pub case3_correlated: Vec<PairSummary>,
    pub order_effects: Vec<OrderEffectRow>,
    pub oracle: Option<OracleReport>,
    pub aggregates: Aggregates,
}

/// Rounds to [`REPORT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Serializes any report value to JSON with rounded numbers.
pub fn to_rounded_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::Invariant(e.to_string()))?;
    round_value(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| Error::Invariant(e.to_string()))
}

fn num(x: f64) -> String {
    match serde_json::Number::from_f64(round_sig(x)) {
        Some(n) => n.to_string(),
        None => String::new(),
    }
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        to_rounded_json(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// Recomputes the aggregates from the per-pair entries.
    pub fn recompute_aggregates(&self) -> Aggregates {
        Aggregates::compute(
            &self.pairs,
            self.case3_correlated.len(),
            self.oracle.as_ref(),
        )
    }

    /// Long-format CSV: one row per reported quantity.
    ///
    /// Columns: `section, case, queries, first_doc, second_doc, form, dimensions, quantity, value`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
        w.write_record([
            "section",
            "case",
            "queries",
            "first_doc",
            "second_doc",
            "form",
            "dimensions",
            "quantity",
            "value",
        ])
        .map_err(csv_err)?;

        let c = &self.config;
        let dims = |d: &[DimensionId]| d.iter().map(|x| x.as_str()).collect::<Vec<_>>().join(";");
        let config_rows = [
            ("dimensions", dims(c.dimensions.as_slice())),
            ("standard", c.standard.to_string()),
            (
                "cases",
                c.cases
                    .iter()
                    .map(Case::as_str)
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            (
                "forms",
                c.forms
                    .iter()
                    .map(BellForm::as_str)
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            ("min_cooccurrence", c.min_cooccurrence.to_string()),
            ("half_tolerance", num(c.half_tolerance)),
            ("oracle", c.oracle.to_string()),
        ];
        for (k, v) in config_rows {
            w.write_record(["config", "", "", "", "", "", "", k, &v])
                .map_err(csv_err)?;
        }

        let bell_rows =
            |w: &mut csv::Writer<Vec<u8>>, key: [&str; 4], r: &BellResult| -> Result<()> {
                let [case, queries, first, second] = key;
                let d = dims(&r.dimensions);
                let mut row = |q: &str, v: String| {
                    w.write_record([
                        "bell",
                        case,
                        queries,
                        first,
                        second,
                        r.form.as_str(),
                        &d,
                        q,
                        &v,
                    ])
                    .map_err(csv_err)
                };
                row("signed_statistic", num(r.signed_statistic))?;
                row("statistic", num(r.statistic))?;
                if let Some(lo) = r.bound_low {
                    row("bound_low", num(lo))?;
                }
                row("bound_high", num(r.bound_high))?;
                row("violated", (r.violated as u8).to_string())?;
                for t in &r.terms {
                    row(&format!("term:{}", t.label), num(t.value))?;
                }
                Ok(())
            };
        let schmidt_rows = |w: &mut csv::Writer<Vec<u8>>,
                            key: [&str; 4],
                            s: &SchmidtDecomposition,
                            inv: bool|
         -> Result<()> {
            let [case, queries, first, second] = key;
            let mut row = |q: &str, v: String| {
                w.write_record(["schmidt", case, queries, first, second, "", "", q, &v])
                    .map_err(csv_err)
            };
            row("singular_value_1", num(s.singular_values[0]))?;
            row("singular_value_2", num(s.singular_values[1]))?;
            row("rank", s.rank.to_string())?;
            row("rotationally_invariant", (inv as u8).to_string())?;
            Ok(())
        };

        for p in &self.pairs {
            let s = &p.summary;
            let queries = s.provenance.query_ids.join(";");
            let key = [
                s.case.as_str(),
                queries.as_str(),
                s.first_doc.as_str(),
                s.second_doc.as_str(),
            ];
            for r in &p.results {
                bell_rows(&mut w, key, r)?;
            }
            schmidt_rows(&mut w, key, &p.schmidt, p.rotationally_invariant)?;
        }
        for s in &self.case3_correlated {
            let queries = s.provenance.query_ids.join(";");
            w.write_record([
                "case3_correlated",
                "III",
                &queries,
                &s.first_doc,
                &s.second_doc,
                "",
                "",
                "both_sat",
                &s.provenance.both_sat.to_string(),
            ])
            .map_err(csv_err)?;
        }
        for o in &self.order_effects {
            let d = format!("{}>{}", o.effect.first, o.effect.second);
            let mut row = |q: &str, v: String| {
                w.write_record([
                    "order_effect",
                    "",
                    &o.query_id,
                    &o.doc_id,
                    "",
                    "",
                    &d,
                    q,
                    &v,
                ])
                .map_err(csv_err)
            };
            row("forward", num(o.effect.forward))?;
            row("reverse", num(o.effect.reverse))?;
            if let Some(r) = o.effect.ratio {
                row("ratio", num(r))?;
            }
        }
        if let Some(o) = &self.oracle {
            let key = ["oracle", "", "", ""];
            bell_rows(&mut w, key, &o.chsh)?;
            schmidt_rows(&mut w, key, &o.schmidt, o.rotationally_invariant)?;
        }
        let a = &self.aggregates;
        let mut agg = |q: String, v: String| {
            w.write_record(["aggregate", "", "", "", "", "", "", &q, &v])
                .map_err(csv_err)
        };
        agg("pairs_tested".into(), a.pairs_tested.to_string())?;
        for (case, n) in &a.pairs_by_case {
            agg(format!("pairs_case_{}", case.as_str()), n.to_string())?;
        }
        agg("case3_correlated".into(), a.case3_correlated.to_string())?;
        agg("results_evaluated".into(), a.results_evaluated.to_string())?;
        agg("violations".into(), a.violations.to_string())?;
        for (form, n) in &a.violations_by_form {
            agg(format!("violations:{form}"), n.to_string())?;
        }
        for (form, m) in &a.max_statistic_by_form {
            agg(format!("max_statistic:{form}"), num(*m))?;
        }
        agg(
            "non_separable_pairs".into(),
            a.non_separable_pairs.to_string(),
        )?;

        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn summary_line(&self) -> String {
        let a = &self.aggregates;
        format!(
            "pairs tested: {}, results evaluated: {}, violations found: {}",
            a.pairs_tested, a.results_evaluated, a.violations
        )
    }
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Runs the pipeline on a log file. Writes the report to `output` if given and
/// returns it together with its rendered text.
pub fn cmd_run(
    input: &Path,
    output: Option<&Path>,
    config: &RunConfig,
    threads: usize,
) -> Result<(Report, String)> {
    let report = run_pipeline(open(input)?, config, threads)?;
    let text = report.render(config.format)?;
    if let Some(out) = output {
        write_atomic(out, &text)?;
    }
    Ok((report, text))
}

/// Forward (`first -> second`) and reverse sequential probabilities of one
/// document, for every query it appears in (or just `query`).
pub fn cmd_order_effects(
    input: &Path,
    dims: &Dimensions,
    doc_id: &str,
    query: Option<&str>,
    first: &DimensionId,
    second: &DimensionId,
) -> Result<Vec<OrderEffectRow>> {
    for d in [first, second] {
        if !dims.contains(d) {
            return Err(Error::UnknownDimension(d.to_string()));
        }
    }
    let groups = parse_log(open(input)?, dims)?;
    let queries = score_queries(&groups, dims, dims.first())?;
    let rows: Vec<OrderEffectRow> = queries
        .iter()
        .filter(|q| query.is_none_or(|id| q.query_id == id))
        .filter_map(|q| q.state(doc_id).map(|s| (q, s)))
        .map(|(q, s)| {
            Ok(OrderEffectRow {
                query_id: q.query_id.clone(),
                doc_id: doc_id.to_string(),
                effect: s.order_effect(first, second)?,
            })
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::UnknownDocument(doc_id.to_string()));
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SchmidtTarget<'a> {
    Oracle,
    State([f64; 4]),
    Pair {
        input: &'a Path,
        dims: &'a Dimensions,
        standard: &'a DimensionId,
        first: &'a str,
        second: &'a str,
        query: Option<&'a str>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtReport {
    pub source: String,
    pub coefficients: [f64; 4],
    pub schmidt: SchmidtDecomposition,
    pub separable: bool,
}

pub fn cmd_schmidt(target: SchmidtTarget<'_>) -> Result<SchmidtReport> {
    let (source, psi) = match target {
        SchmidtTarget::Oracle => (
            BellKind::PhiPlus.to_string(),
            crate::composite::bell_state(BellKind::PhiPlus),
        ),
        SchmidtTarget::State(c) => ("state".to_string(), CompositeState::new(c)?),
        SchmidtTarget::Pair {
            input,
            dims,
            standard,
            first,
            second,
            query,
        } => {
            let groups = parse_log(open(input)?, dims)?;
            let queries = score_queries(&groups, dims, standard)?;
            // Latest query containing both documents, as for co-occurring pairs.
            let q = queries
                .iter()
                .rev()
                .filter(|q| query.is_none_or(|id| q.query_id == id))
                .find(|q| q.state(first).is_some() && q.state(second).is_some())
                .ok_or_else(|| Error::UnknownDocument(format!("pair {first}|{second}")))?;
            let psi = tensor_pair(q.state(first).unwrap(), q.state(second).unwrap())?;
            (format!("{first}|{second}@{}", q.query_id), psi)
        }
    };
    let schmidt = schmidt_decompose(&psi);
    Ok(SchmidtReport {
        source,
        coefficients: *psi.coefficients(),
        separable: schmidt.is_separable(),
        schmidt,
    })
}

pub fn cmd_oracle() -> OracleReport {
    oracle_report()
}
