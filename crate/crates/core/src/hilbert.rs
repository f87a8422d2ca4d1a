//! Two-dimensional real Hilbert spaces for single documents.
//!
//! A document is a unit vector that can be written in one basis per relevance
//! dimension: `|d> = alpha |R_x> + beta |~R_x>`. One dimension is picked as the
//! standard basis and every other dimension's basis vectors are expressed in
//! its coordinates, which is what makes observables and density matrices
//! comparable across dimensions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real 2-vector in standard-basis coordinates.
pub type Ket = [f64; 2];

/// Row-major real 2x2 matrix.
pub type Matrix2 = [[f64; 2]; 2];

/// Tolerance on `alpha^2 + beta^2 = 1` and on density-matrix traces.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Tolerance for structural checks: unit norm of kets, orthogonality,
/// observable and projector identities.
pub const STRUCTURE_TOLERANCE: f64 = 1e-10;

/// The seven relevance dimensions, in their conventional order.
pub const DEFAULT_DIMENSIONS: [&str; 7] = [
    "topicality",
    "reliability",
    "understandability",
    "interest",
    "habit",
    "scope",
    "novelty",
];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionId(String);

impl DimensionId {
    pub fn new(name: impl Into<String>) -> Self {
        DimensionId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DimensionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for DimensionId {
    fn from(s: &str) -> Self {
        DimensionId::new(s)
    }
}

/// An ordered set of at least two distinct dimension names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DimensionId>", into = "Vec<DimensionId>")]
pub struct Dimensions(Vec<DimensionId>);

impl Dimensions {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut dims: Vec<DimensionId> = Vec::new();
        for name in names {
            let name = name.into().trim().to_string();
            if name.is_empty() {
                return Err(Error::Empty("dimension name"));
            }
            let id = DimensionId(name);
            if dims.contains(&id) {
                return Err(Error::DuplicateDimension(id.0));
            }
            dims.push(id);
        }
        if dims.len() < 2 {
            return Err(Error::TooFewDimensions(dims.len()));
        }
        Ok(Dimensions(dims))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DimensionId> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[DimensionId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, dim: &DimensionId) -> bool {
        self.0.contains(dim)
    }

    pub fn get(&self, name: &str) -> Result<&DimensionId> {
        self.0
            .iter()
            .find(|d| d.as_str() == name)
            .ok_or_else(|| Error::UnknownDimension(name.to_string()))
    }

    pub fn first(&self) -> &DimensionId {
        &self.0[0]
    }
}

impl Default for Dimensions {
    fn default() -> Self {
        Dimensions(
            DEFAULT_DIMENSIONS
                .iter()
                .map(|&n| DimensionId::new(n))
                .collect(),
        )
    }
}

impl TryFrom<Vec<DimensionId>> for Dimensions {
    type Error = Error;

    fn try_from(v: Vec<DimensionId>) -> Result<Self> {
        Dimensions::new(v.into_iter().map(|d| d.0))
    }
}

impl From<Dimensions> for Vec<DimensionId> {
    fn from(d: Dimensions) -> Self {
        d.0
    }
}

/// Relevance / non-relevance amplitudes of a document in one dimension's basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudePair {
    alpha: f64,
    beta: f64,
}

impl AmplitudePair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite("amplitude pair"));
        }
        let norm_sq = alpha * alpha + beta * beta;
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                what: "amplitude pair",
                norm_sq,
            });
        }
        Ok(AmplitudePair { alpha, beta })
    }

    /// Non-negative amplitudes for a probability of relevance `p` in `[0, 1]`.
    pub fn from_probability(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite("probability"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Argument(format!("probability {p} outside [0, 1]")));
        }
        AmplitudePair::new(p.sqrt(), (1.0 - p).sqrt())
    }

    /// Non-negative pair with the given relevance amplitude; beta is completed to unit norm.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::NonFinite("amplitude"));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Argument(format!("amplitude {alpha} outside [0, 1]")));
        }
        AmplitudePair::new(alpha, (1.0 - alpha * alpha).max(0.0).sqrt())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn ket(&self) -> Ket {
        [self.alpha, self.beta]
    }

    /// Probability of the relevant outcome in this pair's own basis.
    pub fn relevance_probability(&self) -> f64 {
        self.alpha * self.alpha
    }
}

/// Min-max normalizes scores to `[0, 1]`. A constant list maps every entry to 0.5.
pub fn min_max(scores: &[f64]) -> Result<Vec<f64>> {
    if scores.is_empty() {
        return Err(Error::Empty("score list"));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(Error::NonFinite("score list"));
    }
    let lo = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    if range == 0.0 {
        return Ok(vec![0.5; scores.len()]);
    }
    Ok(scores
        .iter()
        .map(|s| ((s - lo) / range).clamp(0.0, 1.0))
        .collect())
}

/// Amplitudes of document `target` given every document's score for one
/// dimension within one query: `alpha = sqrt(minmax(score))`.
pub fn amplitudes_from_scores(scores: &[f64], target: usize) -> Result<AmplitudePair> {
    if scores.is_empty() {
        return Err(Error::Empty("score list"));
    }
    if target >= scores.len() {
        return Err(Error::IndexOutOfRange {
            index: target,
            len: scores.len(),
        });
    }
    AmplitudePair::from_probability(min_max(scores)?[target])
}

/// Given one state written as `a|A> + b|B>` and as `c|C> + d|D>`, returns
/// `|C>` and `|D>` in `(A, B)` coordinates.
pub fn basis_change(psi: &AmplitudePair, psi_alt: &AmplitudePair) -> (Ket, Ket) {
    let (a, b) = (psi.alpha, psi.beta);
    let (c, d) = (psi_alt.alpha, psi_alt.beta);
    let u = a * c + b * d;
    let v = b * c - a * d;
    ([u, v], [-v, u])
}

pub fn dot(x: &Ket, y: &Ket) -> f64 {
    x[0] * y[0] + x[1] * y[1]
}

pub fn norm_sq(x: &Ket) -> f64 {
    dot(x, x)
}

pub(crate) fn check_unit(x: &Ket, what: &'static str) -> Result<()> {
    if !x[0].is_finite() || !x[1].is_finite() {
        return Err(Error::NonFinite(what));
    }
    let n = norm_sq(x);
    if (n - 1.0).abs() > STRUCTURE_TOLERANCE {
        return Err(Error::NotNormalized { what, norm_sq: n });
    }
    Ok(())
}

/// Born rule: `|<basis|state>|^2`.
pub fn projection_probability(state: &Ket, basis_vector: &Ket) -> Result<f64> {
    check_unit(state, "state")?;
    check_unit(basis_vector, "basis vector")?;
    let amp = dot(basis_vector, state);
    Ok((amp * amp).min(1.0))
}

/// Probability of passing through every basis vector of the chain in order,
/// starting from `state`: `|<b1|d>|^2 |<b2|b1>|^2 ...`.
pub fn sequential_projection(state: &Ket, ordered_bases: &[Ket]) -> Result<f64> {
    if ordered_bases.is_empty() {
        return Err(Error::Empty("projection chain"));
    }
    let mut prob = 1.0;
    let mut current = *state;
    for b in ordered_bases {
        prob *= projection_probability(&current, b)?;
        current = *b;
    }
    Ok(prob)
}

fn mat_mul(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    let mut out = [[0.0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

/// A +/-1 valued measurement: symmetric, traceless, squares to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Matrix2", into = "Matrix2")]
pub struct Observable {
    matrix: Matrix2,
}

impl Observable {
    pub fn new(matrix: Matrix2) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidOperator {
            what: "observable",
            reason,
        };
        if matrix.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("observable"));
        }
        if (matrix[0][1] - matrix[1][0]).abs() > STRUCTURE_TOLERANCE {
            return Err(invalid("not symmetric".into()));
        }
        let trace = matrix[0][0] + matrix[1][1];
        if trace.abs() > STRUCTURE_TOLERANCE {
            return Err(invalid(format!("trace {trace}")));
        }
        let sq = mat_mul(&matrix, &matrix);
        let dev = (sq[0][0] - 1.0)
            .abs()
            .max((sq[1][1] - 1.0).abs())
            .max(sq[0][1].abs())
            .max(sq[1][0].abs());
        if dev > STRUCTURE_TOLERANCE {
            return Err(invalid(format!("square deviates from identity by {dev}")));
        }
        Ok(Observable { matrix })
    }

    /// `diag(1, -1)`: relevance along the standard dimension.
    pub fn standard() -> Self {
        Observable {
            matrix: [[1.0, 0.0], [0.0, -1.0]],
        }
    }

    /// `|u><u| - |u~><u~|` for the unit vector `u`, i.e. `2|u><u| - I`.
    pub fn from_plus_eigenvector(u: &Ket) -> Result<Self> {
        check_unit(u, "eigenvector")?;
        let [x, y] = *u;
        Observable::new([[x * x - y * y, 2.0 * x * y], [2.0 * x * y, y * y - x * x]])
    }

    /// Observable whose +1 eigenvector is `(cos theta, sin theta)`.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = (2.0 * theta).sin_cos();
        Observable {
            matrix: [[c, s], [s, -c]],
        }
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    /// Unit eigenvectors for eigenvalues +1 and -1.
    pub fn eigenvectors(&self) -> (Ket, Ket) {
        let theta = self.matrix[0][1].atan2(self.matrix[0][0]) / 2.0;
        let (s, c) = theta.sin_cos();
        ([c, s], [-s, c])
    }

    pub fn apply(&self, x: &Ket) -> Ket {
        let m = &self.matrix;
        [
            m[0][0] * x[0] + m[0][1] * x[1],
            m[1][0] * x[0] + m[1][1] * x[1],
        ]
    }
}

impl TryFrom<Matrix2> for Observable {
    type Error = Error;

    fn try_from(m: Matrix2) -> Result<Self> {
        Observable::new(m)
    }
}

impl From<Observable> for Matrix2 {
    fn from(o: Observable) -> Self {
        o.matrix
    }
}

/// Pure-state density matrix `|d><d|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix2,
}

impl DensityMatrix {
    pub fn new(matrix: Matrix2) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidOperator {
            what: "density matrix",
            reason,
        };
        if matrix.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("density matrix"));
        }
        if (matrix[0][1] - matrix[1][0]).abs() > STRUCTURE_TOLERANCE {
            return Err(invalid("not symmetric".into()));
        }
        let trace = matrix[0][0] + matrix[1][1];
        if (trace - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(invalid(format!("trace {trace}")));
        }
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if det.abs() > STRUCTURE_TOLERANCE {
            return Err(invalid(format!("not rank 1 (determinant {det})")));
        }
        if matrix[0][0] < -STRUCTURE_TOLERANCE || matrix[1][1] < -STRUCTURE_TOLERANCE {
            return Err(invalid("negative diagonal".into()));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn from_ket(x: &Ket) -> Result<Self> {
        check_unit(x, "state")?;
        let [a, b] = *x;
        // Renormalize so the trace is exact even for kets that are unit only to 1e-10.
        let n = a * a + b * b;
        DensityMatrix::new([[a * a / n, a * b / n], [a * b / n, b * b / n]])
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }
}

/// Trace rule `tr(A rho)`.
pub fn expectation(obs: &Observable, rho: &DensityMatrix) -> f64 {
    let (m, r) = (&obs.matrix, &rho.matrix);
    let tr = m[0][0] * r[0][0] + m[0][1] * r[1][0] + m[1][0] * r[0][1] + m[1][1] * r[1][1];
    tr.clamp(-1.0, 1.0)
}

/// Forward and reverse probabilities of judging a document through two
/// dimensions in sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderEffect {
    pub first: DimensionId,
    pub second: DimensionId,
    /// `d -> first -> second`
    pub forward: f64,
    /// `d -> second -> first`
    pub reverse: f64,
    /// `reverse / forward`, absent when `forward` is zero.
    pub ratio: Option<f64>,
}

/// A document's state, stored as one amplitude pair per dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocumentState {
    doc_id: String,
    standard: DimensionId,
    amplitudes: BTreeMap<DimensionId, AmplitudePair>,
}

impl DocumentState {
    pub fn new(
        doc_id: impl Into<String>,
        standard: DimensionId,
        amplitudes: BTreeMap<DimensionId, AmplitudePair>,
    ) -> Result<Self> {
        if !amplitudes.contains_key(&standard) {
            return Err(Error::UnknownDimension(standard.0));
        }
        Ok(DocumentState {
            doc_id: doc_id.into(),
            standard,
            amplitudes,
        })
    }

    pub fn doc_id(&self) -> &str {
        &self.doc_id
    }

    pub fn standard(&self) -> &DimensionId {
        &self.standard
    }

    pub fn amplitudes(&self) -> &BTreeMap<DimensionId, AmplitudePair> {
        &self.amplitudes
    }

    pub fn has(&self, dim: &DimensionId) -> bool {
        self.amplitudes.contains_key(dim)
    }

    pub fn amplitude(&self, dim: &DimensionId) -> Result<&AmplitudePair> {
        self.amplitudes
            .get(dim)
            .ok_or_else(|| Error::UnknownDimension(dim.0.clone()))
    }

    /// Same document with a different dimension as the coordinate frame.
    pub fn with_standard(&self, dim: &DimensionId) -> Result<Self> {
        self.amplitude(dim)?;
        Ok(DocumentState {
            standard: dim.clone(),
            ..self.clone()
        })
    }

    /// The state in standard-basis coordinates.
    pub fn ket(&self) -> Ket {
        self.amplitudes[&self.standard].ket()
    }

    /// `(|R_dim>, |~R_dim>)` in standard-basis coordinates.
    pub fn basis(&self, dim: &DimensionId) -> Result<(Ket, Ket)> {
        let alt = self.amplitude(dim)?;
        if *dim == self.standard {
            return Ok(([1.0, 0.0], [0.0, 1.0]));
        }
        Ok(basis_change(&self.amplitudes[&self.standard], alt))
    }

    pub fn observable(&self, dim: &DimensionId) -> Result<Observable> {
        observable_from_dimension(self, dim)
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix::from_ket(&self.ket()).expect("stored amplitudes are normalized")
    }

    /// `P(R_dim = +1) = |<R_dim|d>|^2`.
    pub fn relevance_probability(&self, dim: &DimensionId) -> Result<f64> {
        let (plus, _) = self.basis(dim)?;
        projection_probability(&self.ket(), &plus)
    }

    pub fn order_effect(&self, first: &DimensionId, second: &DimensionId) -> Result<OrderEffect> {
        let (a, _) = self.basis(first)?;
        let (b, _) = self.basis(second)?;
        let ket = self.ket();
        let forward = sequential_projection(&ket, &[a, b])?;
        let reverse = sequential_projection(&ket, &[b, a])?;
        Ok(OrderEffect {
            first: first.clone(),
            second: second.clone(),
            forward,
            reverse,
            ratio: (forward > 0.0).then(|| reverse / forward),
        })
    }
}

/// Observable for relevance along `dim`, in the document's standard coordinates.
pub fn observable_from_dimension(doc: &DocumentState, dim: &DimensionId) -> Result<Observable> {
    let alt = doc.amplitude(dim)?;
    if *dim == doc.standard {
        return Ok(Observable::standard());
    }
    let std = &doc.amplitudes[&doc.standard];
    let (a, b) = (std.alpha, std.beta);
    let (c, d) = (alt.alpha, alt.beta);
    let u = a * c + b * d;
    let v = b * c - a * d;
    Observable::new([[u * u - v * v, 2.0 * u * v], [2.0 * u * v, v * v - u * u]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn doc(pairs: &[(&str, f64)]) -> DocumentState {
        let amps = pairs
            .iter()
            .map(|&(n, a)| (DimensionId::new(n), AmplitudePair::from_alpha(a).unwrap()))
            .collect();
        DocumentState::new("d", DimensionId::new(pairs[0].0), amps).unwrap()
    }

    fn worked_example() -> DocumentState {
        doc(&[("reliability", 0.9715), ("topicality", 0.3535)])
    }

    #[test]
    fn amplitudes_top_and_middle() {
        let p = amplitudes_from_scores(&[2.0, 1.0, 0.0], 0).unwrap();
        assert_eq!((p.alpha(), p.beta()), (1.0, 0.0));
        let p = amplitudes_from_scores(&[2.0, 1.0, 0.0], 1).unwrap();
        assert!((p.alpha() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((p.beta() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn amplitudes_degenerate_range() {
        let p = amplitudes_from_scores(&[3.0, 3.0], 0).unwrap();
        assert!((p.alpha() - H).abs() < 1e-15);
        assert_eq!(p.alpha(), p.beta());
    }

    #[test]
    fn amplitudes_errors() {
        assert!(matches!(
            amplitudes_from_scores(&[], 0),
            Err(Error::Empty(_))
        ));
        assert!(matches!(
            amplitudes_from_scores(&[1.0], 3),
            Err(Error::IndexOutOfRange { index: 3, len: 1 })
        ));
        assert!(matches!(
            amplitudes_from_scores(&[1.0, f64::NAN], 0),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn amplitude_pair_rejects_unnormalized() {
        assert!(AmplitudePair::new(0.9715, 0.2370).is_err());
        assert!(AmplitudePair::new(0.6, 0.8).is_ok());
    }

    #[test]
    fn dimensions_validation() {
        assert!(matches!(
            Dimensions::new(["habit"]),
            Err(Error::TooFewDimensions(1))
        ));
        assert!(matches!(
            Dimensions::new(["habit", "habit"]),
            Err(Error::DuplicateDimension(_))
        ));
        let d = Dimensions::default();
        assert_eq!(d.len(), 7);
        assert_eq!(d.first().as_str(), "topicality");
    }

    #[test]
    fn basis_change_worked_example() {
        let psi = AmplitudePair::from_alpha(0.9715).unwrap();
        let alt = AmplitudePair::from_alpha(0.3535).unwrap();
        let (c, d) = basis_change(&psi, &alt);
        assert!((c[0].abs() - 0.5651).abs() < 5e-4);
        assert!((c[1].abs() - 0.8250).abs() < 5e-4);
        // The formula gives a negative second component.
        assert!(c[1] < 0.0);
        assert!(dot(&c, &d).abs() < 1e-12);
    }

    #[test]
    fn basis_change_trivial_cases() {
        let one = AmplitudePair::new(1.0, 0.0).unwrap();
        assert_eq!(basis_change(&one, &one), ([1.0, 0.0], [0.0, 1.0]));
        let half = AmplitudePair::from_probability(0.5).unwrap();
        let (c, _) = basis_change(&half, &one);
        assert!((c[0] - H).abs() < 1e-15 && (c[1] - H).abs() < 1e-15);
    }

    #[test]
    fn projection_examples() {
        assert_eq!(
            projection_probability(&[1.0, 0.0], &[1.0, 0.0]).unwrap(),
            1.0
        );
        assert_eq!(
            projection_probability(&[1.0, 0.0], &[0.0, 1.0]).unwrap(),
            0.0
        );
        let d = worked_example();
        let (t, _) = d.basis(&"topicality".into()).unwrap();
        // <T|d> is the topicality amplitude itself.
        let p = projection_probability(&d.ket(), &t).unwrap();
        assert!((p - 0.3535f64.powi(2)).abs() < 1e-12);
        assert!(projection_probability(&[1.0, 1.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn sequential_projection_worked_example() {
        let d = worked_example();
        let (r, _) = d.basis(&"reliability".into()).unwrap();
        let (t, _) = d.basis(&"topicality".into()).unwrap();
        let tr = sequential_projection(&d.ket(), &[t, r]).unwrap();
        let rt = sequential_projection(&d.ket(), &[r, t]).unwrap();
        assert!((tr - 0.0399).abs() < 1e-3, "{tr}");
        assert!((rt - 0.3014).abs() < 1e-3, "{rt}");
        assert!((tr - rt).abs() > 0.1);
        assert_eq!(sequential_projection(&d.ket(), &[d.ket()]).unwrap(), 1.0);
        assert!(sequential_projection(&d.ket(), &[]).is_err());
    }

    #[test]
    fn observable_examples() {
        let d = worked_example();
        assert_eq!(
            d.observable(&"reliability".into()).unwrap(),
            Observable::standard()
        );
        // A dimension whose basis coincides with the standard one.
        let same = doc(&[("habit", 0.6), ("novelty", 0.6)]);
        let o = same.observable(&"novelty".into()).unwrap();
        assert!((o.matrix()[0][0] - 1.0).abs() < 1e-12 && o.matrix()[0][1].abs() < 1e-12);
        // u = v = sqrt(1/2)
        let o = Observable::from_plus_eigenvector(&[H, H]).unwrap();
        let m = o.matrix();
        assert!(m[0][0].abs() < 1e-15 && (m[0][1] - 1.0).abs() < 1e-15);
        assert!(d.observable(&"scope".into()).is_err());
    }

    #[test]
    fn observable_rejects_non_involutions() {
        assert!(Observable::new([[2.0, 0.0], [0.0, -2.0]]).is_err());
        assert!(Observable::new([[1.0, 0.0], [0.0, 1.0]]).is_err());
        assert!(Observable::new([[0.0, 1.0], [0.5, 0.0]]).is_err());
    }

    #[test]
    fn density_matrix_checks() {
        assert!(DensityMatrix::new([[0.5, 0.0], [0.0, 0.5]]).is_err());
        assert!(DensityMatrix::from_ket(&[0.6, 0.8]).is_ok());
    }

    #[test]
    fn expectation_examples() {
        let rho = DensityMatrix::from_ket(&[0.6, 0.8]).unwrap();
        let e = expectation(&Observable::standard(), &rho);
        assert!((e - (0.36 - 0.64)).abs() < 1e-15);
        let rho = DensityMatrix::from_ket(&[H, H]).unwrap();
        assert!(expectation(&Observable::standard(), &rho).abs() < 1e-15);
        let d = worked_example();
        let e = expectation(&Observable::standard(), &d.density_matrix());
        assert!((e - 0.8877).abs() < 1e-3, "{e}");
    }

    #[test]
    fn order_effect_same_dimension_is_symmetric() {
        let d = worked_example();
        let t = DimensionId::new("topicality");
        let oe = d.order_effect(&t, &t).unwrap();
        assert_eq!(oe.forward, oe.reverse);
        assert_eq!(oe.ratio, Some(1.0));
    }

    #[test]
    fn rebasing_keeps_probabilities() {
        let d = doc(&[("habit", 0.3), ("novelty", 0.8), ("scope", 0.55)]);
        let r = d.with_standard(&"novelty".into()).unwrap();
        for dim in ["habit", "novelty", "scope"] {
            let dim = DimensionId::new(dim);
            let p = d.relevance_probability(&dim).unwrap();
            let q = r.relevance_probability(&dim).unwrap();
            assert!((p - q).abs() < 1e-12);
        }
    }

    fn unit() -> impl Strategy<Value = Ket> {
        (0.0..std::f64::consts::TAU).prop_map(|t: f64| [t.cos(), t.sin()])
    }

    proptest! {
        #[test]
        fn scores_give_normalized_pairs(
            scores in prop::collection::vec(-1e3f64..1e3, 1..20),
            pick in any::<prop::sample::Index>(),
        ) {
            let i = pick.index(scores.len());
            let p = amplitudes_from_scores(&scores, i).unwrap();
            prop_assert!((p.alpha().powi(2) + p.beta().powi(2) - 1.0).abs() <= 1e-12);
            prop_assert!(p.alpha() >= 0.0 && p.beta() >= 0.0);
        }

        #[test]
        fn basis_change_is_orthonormal(pa in 0.0f64..=1.0, pc in 0.0f64..=1.0) {
            let psi = AmplitudePair::from_probability(pa).unwrap();
            let alt = AmplitudePair::from_probability(pc).unwrap();
            let (c, d) = basis_change(&psi, &alt);
            prop_assert!((norm_sq(&c) - 1.0).abs() < 1e-10);
            prop_assert!((norm_sq(&d) - 1.0).abs() < 1e-10);
            prop_assert!(dot(&c, &d).abs() < 1e-10);
            // Reconstructs the state: c|C> + d|D> = a|A> + b|B>.
            let back = [alt.alpha() * c[0] + alt.beta() * d[0], alt.alpha() * c[1] + alt.beta() * d[1]];
            prop_assert!((back[0] - psi.alpha()).abs() < 1e-12);
            prop_assert!((back[1] - psi.beta()).abs() < 1e-12);
        }

        #[test]
        fn born_completeness(state in unit(), basis in unit()) {
            let perp = [-basis[1], basis[0]];
            let total = projection_probability(&state, &basis).unwrap()
                + projection_probability(&state, &perp).unwrap();
            prop_assert!((total - 1.0).abs() < 1e-10);
        }

        #[test]
        fn dimension_observables_are_involutions(pa in 0.0f64..=1.0, pc in 0.0f64..=1.0) {
            let d = doc(&[("habit", pa.sqrt()), ("novelty", pc.sqrt())]);
            let o = d.observable(&"novelty".into()).unwrap();
            let m = o.matrix();
            prop_assert!((m[0][0] + m[1][1]).abs() < 1e-10);
            let sq = mat_mul(m, m);
            prop_assert!((sq[0][0] - 1.0).abs() < 1e-10 && sq[0][1].abs() < 1e-10);
            // +1 eigenvector is the dimension's relevant basis vector (up to sign).
            let (plus, _) = d.basis(&"novelty".into()).unwrap();
            let (e, _) = o.eigenvectors();
            prop_assert!((dot(&plus, &e).abs() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn expectation_matches_outcome_probabilities(state in unit(), theta in -3.2f64..3.2) {
            let obs = Observable::from_angle(theta);
            let rho = DensityMatrix::from_ket(&state).unwrap();
            let e = expectation(&obs, &rho);
            prop_assert!(e.abs() <= 1.0 + 1e-12);
            let (plus, minus) = obs.eigenvectors();
            let via_born = projection_probability(&state, &plus).unwrap()
                - projection_probability(&state, &minus).unwrap();
            prop_assert!((e - via_born).abs() < 1e-10);
        }

        #[test]
        fn standard_trace_rule(state in unit()) {
            let rho = DensityMatrix::from_ket(&state).unwrap();
            let e = expectation(&Observable::standard(), &rho);
            prop_assert!((e - (state[0].powi(2) - state[1].powi(2))).abs() < 1e-12);
        }

        #[test]
        fn commuting_chain_equals_single_projection(state in unit(), basis in unit()) {
            let single = projection_probability(&state, &basis).unwrap();
            let chained = sequential_projection(&state, &[basis, basis]).unwrap();
            prop_assert!((single - chained).abs() < 1e-12);
        }
    }
}
