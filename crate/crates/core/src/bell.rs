//! Bell-type inequalities over document pairs.
//!
//! Three formulations are evaluated on pairs of single-document states: CHSH
//! in probability form (joint probabilities factorized as products of
//! marginals), CHSH from trace-rule expectations, and the n-settings
//! generalization. `chsh_composite` evaluates CHSH on an arbitrary composite
//! state so that entangled inputs can be checked against the same bound.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::composite::{composite_expectation, tensor_observable, CompositeState};
use crate::error::{Error, Result};
use crate::hilbert::{expectation, DimensionId, DocumentState, Observable};

/// How far past a bound a statistic must be before it counts as a violation.
pub const VIOLATION_TOLERANCE: f64 = 1e-10;

pub const CHSH_BOUND: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellForm {
    ChshTrace,
    ChshProbability,
    NSettings,
    ChshComposite,
}

impl BellForm {
    pub const PAIR_FORMS: [BellForm; 3] = [
        BellForm::ChshTrace,
        BellForm::ChshProbability,
        BellForm::NSettings,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BellForm::ChshTrace => "chsh_trace",
            BellForm::ChshProbability => "chsh_probability",
            BellForm::NSettings => "n_settings",
            BellForm::ChshComposite => "chsh_composite",
        }
    }
}

impl fmt::Display for BellForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BellForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "chsh_trace" => Ok(BellForm::ChshTrace),
            "chsh_probability" => Ok(BellForm::ChshProbability),
            "n_settings" => Ok(BellForm::NSettings),
            "chsh_composite" => Ok(BellForm::ChshComposite),
            other => Err(Error::Argument(format!(
                "unknown inequality form `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    First,
    Second,
}

/// A +/-1 measurement: relevance along one dimension of one of the two documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub slot: Slot,
    pub dimension: DimensionId,
}

impl MeasurementSetting {
    pub fn new(slot: Slot, dimension: &DimensionId) -> Self {
        MeasurementSetting {
            slot,
            dimension: dimension.clone(),
        }
    }

    pub fn label(&self) -> String {
        let n = match self.slot {
            Slot::First => 1,
            Slot::Second => 2,
        };
        format!("{}{}", self.dimension, n)
    }

    fn document<'a>(
        &self,
        d1: &'a DocumentState,
        d2: &'a DocumentState,
    ) -> Result<&'a DocumentState> {
        let doc = match self.slot {
            Slot::First => d1,
            Slot::Second => d2,
        };
        doc.amplitude(&self.dimension)?;
        Ok(doc)
    }

    /// `P(setting = +1)` under the Born rule.
    pub fn relevance_probability(&self, d1: &DocumentState, d2: &DocumentState) -> Result<f64> {
        self.document(d1, d2)?
            .relevance_probability(&self.dimension)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    /// +1 or -1: the term's coefficient in the statistic.
    pub sign: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellResult {
    pub form: BellForm,
    pub dimensions: Vec<DimensionId>,
    /// Dimension used as the coordinate frame for observables, where one applies.
    pub standard: Option<DimensionId>,
    pub terms: Vec<Term>,
    /// Signed combination of the terms.
    pub signed_statistic: f64,
    /// The value compared against the bounds (absolute value for CHSH-type forms).
    pub statistic: f64,
    pub bound_low: Option<f64>,
    pub bound_high: f64,
    pub violated: bool,
}

impl BellResult {
    fn absolute(
        form: BellForm,
        dimensions: Vec<DimensionId>,
        standard: Option<DimensionId>,
        terms: Vec<Term>,
        bound: f64,
    ) -> Self {
        let signed = recombine(&terms);
        let statistic = signed.abs();
        BellResult {
            form,
            dimensions,
            standard,
            terms,
            signed_statistic: signed,
            statistic,
            bound_low: Some(-bound),
            bound_high: bound,
            violated: outside(statistic, Some(-bound), bound),
        }
    }

    /// Sum of `sign * value` over the terms.
    pub fn recombine(&self) -> f64 {
        recombine(&self.terms)
    }

    /// Statistic and violation flag agree with the terms and bounds.
    pub fn is_consistent(&self) -> bool {
        let signed = self.recombine();
        let stat = match self.form {
            BellForm::ChshProbability => signed,
            _ => signed.abs(),
        };
        (signed - self.signed_statistic).abs() <= 1e-12
            && (stat - self.statistic).abs() <= 1e-12
            && self.violated == outside(self.statistic, self.bound_low, self.bound_high)
    }
}

fn recombine(terms: &[Term]) -> f64 {
    terms.iter().map(|t| t.sign * t.value).sum()
}

fn outside(stat: f64, low: Option<f64>, high: f64) -> bool {
    stat > high + VIOLATION_TOLERANCE || low.is_some_and(|l| stat < l - VIOLATION_TOLERANCE)
}

/// `E(AB) = P(A=1)P(B=1) + P(A=-1)P(B=-1) - P(A=1)P(B=-1) - P(A=-1)P(B=1)`,
/// with the joint distribution assumed to factorize.
pub fn pair_expectation_independent(
    d1: &DocumentState,
    dim_a: &DimensionId,
    d2: &DocumentState,
    dim_b: &DimensionId,
) -> Result<f64> {
    let p1 = d1.relevance_probability(dim_a)?;
    let p2 = d2.relevance_probability(dim_b)?;
    let (q1, q2) = (1.0 - p1, 1.0 - p2);
    Ok(p1 * p2 + q1 * q2 - p1 * q2 - q1 * p2)
}

/// CHSH probability form:
/// `1 <= P(A1 A2 = 1) + P(A1 B2 = 1) + P(B1 A2 = 1) + P(B1 B2 = -1) <= 3`.
pub fn chsh_probability(
    d1: &DocumentState,
    d2: &DocumentState,
    dims: [&DimensionId; 2],
) -> Result<BellResult> {
    let [a, b] = dims;
    let a1 = MeasurementSetting::new(Slot::First, a);
    let b1 = MeasurementSetting::new(Slot::First, b);
    let a2 = MeasurementSetting::new(Slot::Second, a);
    let b2 = MeasurementSetting::new(Slot::Second, b);

    let term = |x: &MeasurementSetting, y: &MeasurementSetting, agree: bool| -> Result<Term> {
        let px = x.relevance_probability(d1, d2)?;
        let py = y.relevance_probability(d1, d2)?;
        let (qx, qy) = (1.0 - px, 1.0 - py);
        let (value, outcome) = if agree {
            (px * py + qx * qy, "+1")
        } else {
            (px * qy + qx * py, "-1")
        };
        Ok(Term {
            label: format!("P({}*{}={})", x.label(), y.label(), outcome),
            sign: 1.0,
            value,
        })
    };
    let terms = vec![
        term(&a1, &a2, true)?,
        term(&a1, &b2, true)?,
        term(&b1, &a2, true)?,
        term(&b1, &b2, false)?,
    ];
    let statistic = recombine(&terms);
    Ok(BellResult {
        form: BellForm::ChshProbability,
        dimensions: vec![a.clone(), b.clone()],
        standard: None,
        terms,
        signed_statistic: statistic,
        statistic,
        bound_low: Some(1.0),
        bound_high: 3.0,
        violated: outside(statistic, Some(1.0), 3.0),
    })
}

/// Single-document trace expectations of each dimension's observable, with
/// observables built in the frame of `dims[0]`.
fn trace_expectations(doc: &DocumentState, dims: &[&DimensionId]) -> Result<Vec<f64>> {
    let doc = doc.with_standard(dims[0])?;
    let rho = doc.density_matrix();
    dims.iter()
        .map(|d| Ok(expectation(&doc.observable(d)?, &rho)))
        .collect()
}

/// CHSH from trace-rule expectations:
/// `|E(A1 A2) + E(A1 B2) + E(B1 A2) - E(B1 B2)| <= 2`, each `E` the product of
/// single-document expectations. `dims[0]` is the standard basis.
pub fn chsh_trace(
    d1: &DocumentState,
    d2: &DocumentState,
    dims: [&DimensionId; 2],
) -> Result<BellResult> {
    let x = trace_expectations(d1, &dims)?;
    let y = trace_expectations(d2, &dims)?;
    let [a, b] = dims;
    let label = |i: usize, j: usize| format!("E({}1*{}2)", dims[i], dims[j]);
    let terms = vec![
        Term {
            label: label(0, 0),
            sign: 1.0,
            value: x[0] * y[0],
        },
        Term {
            label: label(0, 1),
            sign: 1.0,
            value: x[0] * y[1],
        },
        Term {
            label: label(1, 0),
            sign: 1.0,
            value: x[1] * y[0],
        },
        Term {
            label: label(1, 1),
            sign: -1.0,
            value: x[1] * y[1],
        },
    ];
    Ok(BellResult::absolute(
        BellForm::ChshTrace,
        vec![a.clone(), b.clone()],
        Some(a.clone()),
        terms,
        CHSH_BOUND,
    ))
}

/// Observables for a CHSH test on a composite state: `a` act on the first
/// factor, `b` on the second.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshSettings {
    pub a1: Observable,
    pub a2: Observable,
    pub b1: Observable,
    pub b2: Observable,
}

impl ChshSettings {
    /// Real measurement directions reaching `2 sqrt(2)` on `phi_plus`:
    /// `a1 = pi/4`, `a2 = 0`, `b1 = pi/8`, `b2 = 3 pi/8`.
    pub fn optimal() -> Self {
        use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
        ChshSettings {
            a1: Observable::from_angle(FRAC_PI_4),
            a2: Observable::from_angle(0.0),
            b1: Observable::from_angle(FRAC_PI_8),
            b2: Observable::from_angle(3.0 * FRAC_PI_8),
        }
    }
}

/// `|<A1 B1> + <A1 B2> + <A2 B1> - <A2 B2>|` on an arbitrary composite state.
pub fn chsh_composite(psi: &CompositeState, settings: &ChshSettings) -> BellResult {
    let e = |a: &Observable, b: &Observable| composite_expectation(&tensor_observable(a, b), psi);
    let s = settings;
    let terms = vec![
        Term {
            label: "E(A1*B1)".into(),
            sign: 1.0,
            value: e(&s.a1, &s.b1),
        },
        Term {
            label: "E(A1*B2)".into(),
            sign: 1.0,
            value: e(&s.a1, &s.b2),
        },
        Term {
            label: "E(A2*B1)".into(),
            sign: 1.0,
            value: e(&s.a2, &s.b1),
        },
        Term {
            label: "E(A2*B2)".into(),
            sign: -1.0,
            value: e(&s.a2, &s.b2),
        },
    ];
    BellResult::absolute(BellForm::ChshComposite, Vec::new(), None, terms, CHSH_BOUND)
}

/// `floor((n^2 + 1) / 2)`
pub fn n_settings_bound(n: usize) -> f64 {
    (n * n).div_ceil(2) as f64
}

/// n-settings inequality:
/// `sum_j ( sum_{k <= n+1-j} E(A_j B_k) - sum_{k >= n+2-j} E(A_j B_k) ) <= floor((n^2+1)/2)`.
///
/// Flagged on the absolute value of the sum; the signed value is kept as well.
pub fn n_settings(
    d1: &DocumentState,
    d2: &DocumentState,
    dims: &[DimensionId],
) -> Result<BellResult> {
    let n = dims.len();
    if n < 2 {
        return Err(Error::TooFewSettings(n));
    }
    let refs: Vec<&DimensionId> = dims.iter().collect();
    let x = trace_expectations(d1, &refs)?;
    let y = trace_expectations(d2, &refs)?;
    let mut terms = Vec::with_capacity(n * n);
    for j in 1..=n {
        for k in 1..=n {
            let sign = if k <= n + 1 - j { 1.0 } else { -1.0 };
            terms.push(Term {
                label: format!("E({}1*{}2)", dims[j - 1], dims[k - 1]),
                sign,
                value: x[j - 1] * y[k - 1],
            });
        }
    }
    Ok(BellResult::absolute(
        BellForm::NSettings,
        dims.to_vec(),
        Some(dims[0].clone()),
        terms,
        n_settings_bound(n),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub dimensions: Vec<DimensionId>,
    pub forms: Vec<BellForm>,
}

/// Every requested form over a document pair: CHSH forms for each unordered
/// pair of distinct dimensions, n-settings over the full list.
///
/// Results come out grouped by form (trace, probability, n-settings), and
/// dimension pairs in configuration order.
pub fn run_suite(
    d1: &DocumentState,
    d2: &DocumentState,
    config: &SuiteConfig,
) -> Result<Vec<BellResult>> {
    let dims: Vec<DimensionId> = config
        .dimensions
        .iter()
        .filter(|d| d1.has(d) && d2.has(d))
        .cloned()
        .collect();
    if dims.len() < 2 {
        return Err(Error::Empty("shared dimension set"));
    }
    let mut out = Vec::new();
    for form in BellForm::PAIR_FORMS {
        if !config.forms.contains(&form) {
            continue;
        }
        if form == BellForm::NSettings {
            out.push(n_settings(d1, d2, &dims)?);
            continue;
        }
        for i in 0..dims.len() {
            for j in i + 1..dims.len() {
                let pair = [&dims[i], &dims[j]];
                out.push(match form {
                    BellForm::ChshTrace => chsh_trace(d1, d2, pair)?,
                    _ => chsh_probability(d1, d2, pair)?,
                });
            }
        }
    }
    Ok(out)
}
