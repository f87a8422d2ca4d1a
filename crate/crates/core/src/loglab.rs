//! Query-log ingestion and document-pair selection.
//!
//! Input is one JSON object per line:
//!
//! ```text
//! {"query_id": "q1", "doc_id": "d7", "scores": {"topicality": 1.3, ...}, "clicked": true, "sat_clicked": false}
//! ```
//!
//! Scores are raw per-dimension ranking scores; they are min-max normalized
//! within each query and dimension before becoming amplitudes.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{chsh_composite, run_suite, BellResult, ChshSettings, SuiteConfig};
use crate::cli::{
    Aggregates, OracleReport, OrderEffectRow, PairReport, PairSummary, Report, RunConfig,
};
use crate::composite::{
    bell_state, rotation_basis, rotational_invariance_check, schmidt_decompose, tensor_product,
    BellKind, CompositeState,
};
use crate::error::{Error, Result};
use crate::hilbert::{min_max, AmplitudePair, DimensionId, Dimensions, DocumentState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JudgmentRecord {
    pub query_id: String,
    pub doc_id: String,
    pub scores: BTreeMap<DimensionId, f64>,
    pub clicked: bool,
    pub sat_clicked: bool,
    /// 1-based line in the source log.
    #[serde(default)]
    pub line: usize,
}

#[derive(Deserialize)]
struct RawRecord {
    query_id: String,
    doc_id: String,
    scores: BTreeMap<String, f64>,
    clicked: bool,
    sat_clicked: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryGroup {
    pub query_id: String,
    pub records: Vec<JudgmentRecord>,
}

fn parse_line(text: &str, line: usize, dims: &Dimensions) -> Result<JudgmentRecord> {
    let raw: RawRecord = serde_json::from_str(text).map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })?;
    if raw.sat_clicked && !raw.clicked {
        return Err(Error::Parse {
            line,
            message: "sat_clicked is set but clicked is not".into(),
        });
    }
    for name in raw.scores.keys() {
        if dims.get(name).is_err() {
            return Err(Error::UnexpectedScore {
                line,
                dimension: name.clone(),
            });
        }
    }
    let mut scores = BTreeMap::new();
    for dim in dims.iter() {
        match raw.scores.get(dim.as_str()) {
            Some(&v) => {
                scores.insert(dim.clone(), v);
            }
            None => {
                return Err(Error::MissingScore {
                    line,
                    dimension: dim.to_string(),
                })
            }
        }
    }
    Ok(JudgmentRecord {
        query_id: raw.query_id,
        doc_id: raw.doc_id,
        scores,
        clicked: raw.clicked,
        sat_clicked: raw.sat_clicked,
        line,
    })
}

/// Parses a line-delimited log into query groups. Groups appear in order of
/// each query's first line; records keep input order. Blank lines are skipped.
pub fn parse_log<R: BufRead>(reader: R, dims: &Dimensions) -> Result<Vec<QueryGroup>> {
    let mut groups: Vec<QueryGroup> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let text = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if text.trim().is_empty() {
            continue;
        }
        let rec = parse_line(&text, line_no, dims)?;
        let gi = *index.entry(rec.query_id.clone()).or_insert_with(|| {
            groups.push(QueryGroup {
                query_id: rec.query_id.clone(),
                records: Vec::new(),
            });
            groups.len() - 1
        });
        let group = &mut groups[gi];
        if group.records.iter().any(|r| r.doc_id == rec.doc_id) {
            return Err(Error::DuplicateDocument {
                line: line_no,
                query_id: rec.query_id,
                doc_id: rec.doc_id,
            });
        }
        group.records.push(rec);
    }
    Ok(groups)
}

/// One `DocumentState` per record, normalizing each dimension over the group.
pub fn build_states(
    group: &QueryGroup,
    dims: &Dimensions,
    standard: &DimensionId,
) -> Result<Vec<DocumentState>> {
    if !dims.contains(standard) {
        return Err(Error::UnknownDimension(standard.to_string()));
    }
    let mut amps: Vec<BTreeMap<DimensionId, AmplitudePair>> =
        vec![BTreeMap::new(); group.records.len()];
    for dim in dims.iter() {
        let scores = group
            .records
            .iter()
            .map(|r| {
                r.scores
                    .get(dim)
                    .copied()
                    .ok_or_else(|| Error::MissingScore {
                        line: r.line,
                        dimension: dim.to_string(),
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        for (slot, p) in amps.iter_mut().zip(min_max(&scores)?) {
            slot.insert(dim.clone(), AmplitudePair::from_probability(p)?);
        }
    }
    group
        .records
        .iter()
        .zip(amps)
        .map(|(r, a)| DocumentState::new(r.doc_id.clone(), standard.clone(), a))
        .collect()
}

/// A query group together with its built document states.
#[derive(Clone, Debug)]
pub struct ScoredQuery {
    pub query_id: String,
    pub records: Vec<JudgmentRecord>,
    pub states: Vec<DocumentState>,
}

impl ScoredQuery {
    pub fn state(&self, doc_id: &str) -> Option<&DocumentState> {
        self.states.iter().find(|s| s.doc_id() == doc_id)
    }
}

pub fn score_queries(
    groups: &[QueryGroup],
    dims: &Dimensions,
    standard: &DimensionId,
) -> Result<Vec<ScoredQuery>> {
    groups
        .par_iter()
        .map(|g| {
            Ok(ScoredQuery {
                query_id: g.query_id.clone(),
                records: g.records.clone(),
                states: build_states(g, dims, standard)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// Both documents SAT clicked, in a query with exactly two SAT clicks.
    I,
    /// A SAT-clicked document with an unclicked one from the same query.
    II,
    /// Documents co-occurring across queries with always-correlated clicks,
    /// SAT clicked together in half of them.
    III,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::I, Case::II, Case::III];

    pub fn as_str(&self) -> &'static str {
        match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub query_ids: Vec<String>,
    pub cooccurrences: usize,
    pub both_sat: usize,
    pub both_unclicked: usize,
    /// Query whose scores define both documents' states.
    pub state_query: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DocumentPair {
    pub case: Case,
    pub first: DocumentState,
    pub second: DocumentState,
    pub provenance: Provenance,
}

impl DocumentPair {
    fn new(case: Case, a: &DocumentState, b: &DocumentState, provenance: Provenance) -> Self {
        let (first, second) = if b.doc_id() < a.doc_id() {
            (b, a)
        } else {
            (a, b)
        };
        DocumentPair {
            case,
            first: first.clone(),
            second: second.clone(),
            provenance,
        }
    }

    pub fn label(&self) -> String {
        format!(
            "{}:{}|{}@{}",
            self.case.as_str(),
            self.first.doc_id(),
            self.second.doc_id(),
            self.provenance.query_ids.join("+")
        )
    }

    pub fn composite(&self) -> Result<CompositeState> {
        tensor_product(&self.first.ket(), &self.second.ket())
    }
}

/// Tensor product of two document states, left factor the smaller `doc_id`
/// (argument order on ties).
pub fn tensor_pair(a: &DocumentState, b: &DocumentState) -> Result<CompositeState> {
    let (first, second) = if b.doc_id() < a.doc_id() {
        (b, a)
    } else {
        (a, b)
    };
    tensor_product(&first.ket(), &second.ket())
}

fn single_query(q: &ScoredQuery, both_sat: usize) -> Provenance {
    Provenance {
        query_ids: vec![q.query_id.clone()],
        cooccurrences: 1,
        both_sat,
        both_unclicked: 0,
        state_query: q.query_id.clone(),
    }
}

pub fn select_case1(queries: &[ScoredQuery]) -> Vec<DocumentPair> {
    queries
        .iter()
        .filter_map(|q| {
            let sat: Vec<usize> = (0..q.records.len())
                .filter(|&i| q.records[i].sat_clicked)
                .collect();
            (sat.len() == 2).then(|| {
                DocumentPair::new(
                    Case::I,
                    &q.states[sat[0]],
                    &q.states[sat[1]],
                    single_query(q, 1),
                )
            })
        })
        .collect()
}

pub fn select_case2(queries: &[ScoredQuery]) -> Vec<DocumentPair> {
    let mut out = Vec::new();
    for q in queries {
        let sat = (0..q.records.len()).filter(|&i| q.records[i].sat_clicked);
        for s in sat {
            for u in (0..q.records.len()).filter(|&i| !q.records[i].clicked) {
                out.push(DocumentPair::new(
                    Case::II,
                    &q.states[s],
                    &q.states[u],
                    single_query(q, 0),
                ));
            }
        }
    }
    out
}

#[derive(Default)]
struct Cooccurrence {
    queries: Vec<usize>,
    both_sat: usize,
    both_unclicked: usize,
    mixed: usize,
}

fn cooccurrences(queries: &[ScoredQuery]) -> BTreeMap<(String, String), Cooccurrence> {
    let mut map: BTreeMap<(String, String), Cooccurrence> = BTreeMap::new();
    for (qi, q) in queries.iter().enumerate() {
        for i in 0..q.records.len() {
            for j in i + 1..q.records.len() {
                let (a, b) = (&q.records[i], &q.records[j]);
                let key = if a.doc_id <= b.doc_id {
                    (a.doc_id.clone(), b.doc_id.clone())
                } else {
                    (b.doc_id.clone(), a.doc_id.clone())
                };
                let entry = map.entry(key).or_default();
                entry.queries.push(qi);
                if a.sat_clicked && b.sat_clicked {
                    entry.both_sat += 1;
                } else if !a.clicked && !b.clicked {
                    entry.both_unclicked += 1;
                } else {
                    entry.mixed += 1;
                }
            }
        }
    }
    map
}

/// Case III candidates, split into the always-correlated set and the
/// half-SAT subset of it.
#[derive(Clone, Debug, Default)]
pub struct Case3Selection {
    pub correlated: Vec<DocumentPair>,
    pub half_half: Vec<DocumentPair>,
}

pub fn select_case3_detailed(
    queries: &[ScoredQuery],
    min_cooccurrence: usize,
    half_tolerance: f64,
) -> Case3Selection {
    let mut sel = Case3Selection::default();
    for ((a, b), co) in cooccurrences(queries) {
        let n = co.queries.len();
        if n < min_cooccurrence.max(1) || co.mixed > 0 {
            continue;
        }
        let latest = &queries[*co.queries.last().expect("non-empty")];
        let (sa, sb) = match (latest.state(&a), latest.state(&b)) {
            (Some(sa), Some(sb)) => (sa, sb),
            _ => continue,
        };
        let provenance = Provenance {
            query_ids: co
                .queries
                .iter()
                .map(|&i| queries[i].query_id.clone())
                .collect(),
            cooccurrences: n,
            both_sat: co.both_sat,
            both_unclicked: co.both_unclicked,
            state_query: latest.query_id.clone(),
        };
        let pair = DocumentPair::new(Case::III, sa, sb, provenance);
        let fraction = co.both_sat as f64 / n as f64;
        if (fraction - 0.5).abs() <= half_tolerance + 1e-12 {
            sel.half_half.push(pair.clone());
        }
        sel.correlated.push(pair);
    }
    sel
}

pub fn select_case3(
    queries: &[ScoredQuery],
    min_cooccurrence: usize,
    half_tolerance: f64,
) -> Vec<DocumentPair> {
    select_case3_detailed(queries, min_cooccurrence, half_tolerance).half_half
}

/// Angles of the same-rotation product bases used for the invariance check.
pub fn invariance_angles() -> Vec<f64> {
    (1..=8).map(|k| k as f64 * PI / 16.0).collect()
}

fn evaluate_pair(pair: &DocumentPair, suite: &SuiteConfig) -> Result<PairReport> {
    let results = run_suite(&pair.first, &pair.second, suite)?;
    let psi = pair.composite()?;
    let schmidt = schmidt_decompose(&psi);
    let bases: Vec<_> = invariance_angles()
        .into_iter()
        .map(rotation_basis)
        .collect();
    let invariance = rotational_invariance_check(&psi, &bases)?;
    Ok(PairReport {
        summary: PairSummary::from(pair),
        results,
        schmidt,
        rotationally_invariant: invariance.invariant,
    })
}

pub fn oracle_report() -> OracleReport {
    let psi = bell_state(BellKind::PhiPlus);
    let bases: Vec<_> = invariance_angles()
        .into_iter()
        .map(rotation_basis)
        .collect();
    OracleReport {
        kind: BellKind::PhiPlus,
        coefficients: *psi.coefficients(),
        angles: ORACLE_ANGLES,
        chsh: chsh_composite(&psi, &ChshSettings::optimal()),
        schmidt: schmidt_decompose(&psi),
        rotationally_invariant: rotational_invariance_check(&psi, &bases)
            .map(|r| r.invariant)
            .unwrap_or(false),
    }
}

/// Measurement directions `(a1, a2, b1, b2)` of [`ChshSettings::optimal`].
pub const ORACLE_ANGLES: [f64; 4] = [PI / 4.0, 0.0, PI / 8.0, 3.0 * PI / 8.0];

fn order_effects(queries: &[ScoredQuery], config: &RunConfig) -> Result<Vec<OrderEffectRow>> {
    let mut rows = Vec::new();
    for q in queries {
        for s in &q.states {
            for dim in config.dimensions.iter().filter(|d| **d != config.standard) {
                rows.push(OrderEffectRow {
                    query_id: q.query_id.clone(),
                    doc_id: s.doc_id().to_string(),
                    effect: s.order_effect(&config.standard, dim)?,
                });
            }
        }
    }
    Ok(rows)
}

/// Parses a log and runs the full analysis. `threads == 0` uses rayon's default pool size.
pub fn run_pipeline<R: BufRead>(log: R, config: &RunConfig, threads: usize) -> Result<Report> {
    config.validate()?;
    let groups = parse_log(log, &config.dimensions)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    pool.install(|| analyze(&groups, config))
}

/// Pair selection, Bell suite, Schmidt decomposition and order effects over parsed groups.
pub fn analyze(groups: &[QueryGroup], config: &RunConfig) -> Result<Report> {
    let queries = score_queries(groups, &config.dimensions, &config.standard)?;

    let mut pairs = Vec::new();
    let mut correlated = Vec::new();
    for case in Case::ALL {
        if !config.cases.contains(&case) {
            continue;
        }
        match case {
            Case::I => pairs.extend(select_case1(&queries)),
            Case::II => pairs.extend(select_case2(&queries)),
            Case::III => {
                let sel =
                    select_case3_detailed(&queries, config.min_cooccurrence, config.half_tolerance);
                correlated = sel.correlated.iter().map(PairSummary::from).collect();
                pairs.extend(sel.half_half);
            }
        }
    }

    let suite = SuiteConfig {
        dimensions: config.dimensions.as_slice().to_vec(),
        forms: config.forms.clone(),
    };
    let evaluated = pairs
        .par_iter()
        .map(|p| {
            evaluate_pair(p, &suite).map_err(|e| Error::Pair {
                pair: p.label(),
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<PairReport>>>()?;

    for p in &evaluated {
        if let Some(bad) = p.results.iter().find(|r: &&BellResult| !r.is_consistent()) {
            return Err(Error::Invariant(format!(
                "{} result for {} does not match its terms",
                bad.form,
                p.summary.label()
            )));
        }
    }

    let oracle = config.oracle.then(oracle_report);
    let order_effects = order_effects(&queries, config)?;
    let aggregates = Aggregates::compute(&evaluated, correlated.len(), oracle.as_ref());
    Ok(Report {
        config: config.clone(),
        pairs: evaluated,
        case3_correlated: correlated,
        order_effects,
        oracle,
        aggregates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims2() -> Dimensions {
        Dimensions::new(["habit", "novelty"]).unwrap()
    }

    fn line(q: &str, d: &str, h: f64, n: f64, clicked: bool, sat: bool) -> String {
        format!(
            r#"{{"query_id":"{q}","doc_id":"{d}","scores":{{"habit":{h},"novelty":{n}}},"clicked":{clicked},"sat_clicked":{sat}}}"#
        )
    }

    fn parse(lines: &[String]) -> Result<Vec<QueryGroup>> {
        parse_log(lines.join("\n").as_bytes(), &dims2())
    }

    #[test]
    fn parse_groups_and_order() {
        let lines = vec![
            line("q1", "a", 1.0, 0.0, true, true),
            line("q1", "b", 0.0, 1.0, false, false),
            String::new(),
            line("q2", "c", 0.5, 0.5, false, false),
        ];
        let g = parse(&lines[..2]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].records.len(), 2);
        let g = parse(&lines).unwrap();
        assert_eq!(
            g.iter().map(|g| g.query_id.as_str()).collect::<Vec<_>>(),
            ["q1", "q2"]
        );
        assert_eq!(g[1].records[0].line, 4);
    }

    #[test]
    fn parse_errors() {
        let missing = r#"{"query_id":"q","doc_id":"a","scores":{"habit":1},"clicked":false,"sat_clicked":false}"#;
        let err =
            parse(&[line("q", "z", 1.0, 1.0, false, false), missing.to_string()]).unwrap_err();
        assert!(
            matches!(&err, Error::MissingScore { line: 2, dimension } if dimension == "novelty")
        );
        assert!(err.to_string().contains("novelty"));

        let err = parse(&["{not json".to_string()]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let dup = vec![
            line("q", "a", 1.0, 1.0, false, false),
            line("q", "a", 0.0, 1.0, false, false),
        ];
        assert!(matches!(
            parse(&dup).unwrap_err(),
            Error::DuplicateDocument { line: 2, .. }
        ));

        let extra = r#"{"query_id":"q","doc_id":"a","scores":{"habit":1,"novelty":2,"mood":3},"clicked":false,"sat_clicked":false}"#;
        assert!(matches!(
            parse(&[extra.to_string()]).unwrap_err(),
            Error::UnexpectedScore { .. }
        ));

        let sat_only = line("q", "a", 1.0, 1.0, false, true);
        assert!(matches!(
            parse(&[sat_only]).unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn unknown_fields_are_ignored() {
        let l = r#"{"query_id":"q","doc_id":"a","scores":{"habit":1,"novelty":2},"clicked":true,"sat_clicked":true,"dwell":41}"#;
        assert_eq!(parse(&[l.to_string()]).unwrap().len(), 1);
    }

    #[test]
    fn build_states_examples() {
        let dims = dims2();
        let h = DimensionId::new("habit");
        let g = &parse(&[
            line("q", "a", 2.0, 5.0, false, false),
            line("q", "b", 1.0, 5.0, false, false),
            line("q", "c", 0.0, 5.0, false, false),
        ])
        .unwrap()[0];
        let s = build_states(g, &dims, &h).unwrap();
        let alphas: Vec<f64> = s.iter().map(|d| d.amplitude(&h).unwrap().alpha()).collect();
        assert_eq!(alphas[0], 1.0);
        assert!((alphas[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(alphas[2], 0.0);
        // Constant novelty scores: degenerate range.
        let n = s[0].amplitude(&"novelty".into()).unwrap().alpha();
        assert!((n - 0.5f64.sqrt()).abs() < 1e-15);

        let single = &parse(&[line("q", "a", 9.0, -3.0, false, false)]).unwrap()[0];
        let s = build_states(single, &dims, &h).unwrap();
        for a in s[0].amplitudes().values() {
            assert!((a.alpha() - 0.5f64.sqrt()).abs() < 1e-15);
        }
    }

    fn scored(lines: &[String]) -> Vec<ScoredQuery> {
        let g = parse(lines).unwrap();
        score_queries(&g, &dims2(), &"habit".into()).unwrap()
    }

    #[test]
    fn case1_needs_exactly_two_sat() {
        let qs = scored(&[
            line("q1", "b", 1.0, 0.0, true, true),
            line("q1", "a", 0.0, 1.0, true, true),
            line("q1", "c", 0.5, 0.5, false, false),
            line("q2", "d", 1.0, 0.0, true, true),
            line("q2", "e", 0.0, 1.0, true, true),
            line("q2", "f", 0.0, 1.0, true, true),
        ]);
        let p = select_case1(&qs);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].first.doc_id(), p[0].second.doc_id()), ("a", "b"));
    }

    #[test]
    fn case2_pairs_sat_with_unclicked() {
        let qs = scored(&[
            line("q1", "s", 1.0, 0.0, true, true),
            line("q1", "u1", 0.0, 1.0, false, false),
            line("q1", "u2", 0.2, 1.0, false, false),
            line("q1", "u3", 0.3, 1.0, false, false),
            line("q2", "s1", 1.0, 0.0, true, true),
            line("q2", "s2", 1.0, 0.0, true, true),
            line("q2", "v1", 0.0, 1.0, false, false),
            line("q2", "v2", 0.0, 0.5, false, false),
            line("q2", "c", 0.0, 0.5, true, false),
            line("q3", "x", 1.0, 0.0, true, false),
            line("q3", "y", 0.0, 1.0, false, false),
        ]);
        let p = select_case2(&qs);
        let per_query = |q: &str| p.iter().filter(|x| x.provenance.query_ids[0] == q).count();
        assert_eq!(per_query("q1"), 3);
        assert_eq!(per_query("q2"), 4);
        assert_eq!(per_query("q3"), 0);
    }

    #[test]
    fn case3_half_and_correlated() {
        let mut lines = Vec::new();
        // a/b: 2 both-SAT, 2 both-unclicked.
        for (i, sat) in [true, true, false, false].into_iter().enumerate() {
            let q = format!("h{i}");
            lines.push(line(&q, "a", 1.0, i as f64, sat, sat));
            lines.push(line(&q, "b", 0.0, 0.0, sat, sat));
        }
        // c/d: 3 both-SAT, 1 both-unclicked.
        for (i, sat) in [true, true, true, false].into_iter().enumerate() {
            let q = format!("t{i}");
            lines.push(line(&q, "c", 1.0, 0.0, sat, sat));
            lines.push(line(&q, "d", 0.0, 1.0, sat, sat));
        }
        // e/f: one mixed co-occurrence.
        lines.push(line("m0", "e", 1.0, 0.0, true, true));
        lines.push(line("m0", "f", 0.0, 1.0, true, true));
        lines.push(line("m1", "e", 1.0, 0.0, true, true));
        lines.push(line("m1", "f", 0.0, 1.0, false, false));
        let qs = scored(&lines);

        let sel = select_case3_detailed(&qs, 2, 0.1);
        let ids = |v: &[DocumentPair]| {
            v.iter()
                .map(|p| format!("{}{}", p.first.doc_id(), p.second.doc_id()))
                .collect::<Vec<_>>()
        };
        assert_eq!(ids(&sel.correlated), ["ab", "cd"]);
        assert_eq!(ids(&sel.half_half), ["ab"]);
        let ab = &sel.half_half[0];
        assert_eq!(ab.provenance.query_ids, ["h0", "h1", "h2", "h3"]);
        assert_eq!(ab.provenance.state_query, "h3");
        // In h3 a has the higher novelty score, so its amplitude there is 1.
        assert_eq!(ab.first.amplitude(&"novelty".into()).unwrap().alpha(), 1.0);

        assert!(select_case3(&qs, 2, 0.25).len() == 2);
        assert!(select_case3(&qs, 5, 0.5).is_empty());
    }
}
