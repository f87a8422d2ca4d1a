//! Two-document composite systems over the four-dimensional tensor-product space.
//!
//! Coefficients are ordered `|00>, |01>, |10>, |11>` where `0` is the relevant
//! basis vector of a document's standard dimension and the left factor is the
//! first document.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{check_unit, dot, Ket, Matrix2, Observable, STRUCTURE_TOLERANCE};

pub type Matrix4 = [[f64; 4]; 4];

pub const COMPOSITE_NORM_TOLERANCE: f64 = 1e-12;

/// Singular values at or below this are treated as zero when counting Schmidt rank.
pub const RANK_TOLERANCE: f64 = 1e-9;

pub const INVARIANCE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct CompositeState {
    coefficients: [f64; 4],
}

impl CompositeState {
    pub fn new(coefficients: [f64; 4]) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("composite state"));
        }
        let norm_sq: f64 = coefficients.iter().map(|c| c * c).sum();
        if (norm_sq - 1.0).abs() > COMPOSITE_NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                what: "composite state",
                norm_sq,
            });
        }
        Ok(CompositeState { coefficients })
    }

    pub fn coefficients(&self) -> &[f64; 4] {
        &self.coefficients
    }

    /// `[[c00, c01], [c10, c11]]`
    pub fn coefficient_matrix(&self) -> Matrix2 {
        let c = &self.coefficients;
        [[c[0], c[1]], [c[2], c[3]]]
    }

    /// The same state with the two factors exchanged.
    pub fn swapped(&self) -> Self {
        let c = self.coefficients;
        CompositeState {
            coefficients: [c[0], c[2], c[1], c[3]],
        }
    }
}

impl TryFrom<[f64; 4]> for CompositeState {
    type Error = Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        CompositeState::new(c)
    }
}

impl From<CompositeState> for [f64; 4] {
    fn from(s: CompositeState) -> Self {
        s.coefficients
    }
}

pub fn tensor_product(d1: &Ket, d2: &Ket) -> Result<CompositeState> {
    check_unit(d1, "first factor")?;
    check_unit(d2, "second factor")?;
    let raw = [d1[0] * d2[0], d1[0] * d2[1], d1[1] * d2[0], d1[1] * d2[1]];
    let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
    CompositeState::new(raw.map(|c| c / norm))
}

/// Symmetric +/-1 valued observable on the composite space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompositeObservable {
    matrix: Matrix4,
}

impl CompositeObservable {
    pub fn new(matrix: Matrix4) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidOperator {
            what: "composite observable",
            reason,
        };
        if matrix.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("composite observable"));
        }
        for i in 0..4 {
            for j in 0..4 {
                if (matrix[i][j] - matrix[j][i]).abs() > STRUCTURE_TOLERANCE {
                    return Err(invalid("not symmetric".into()));
                }
                let sq: f64 = (0..4).map(|k| matrix[i][k] * matrix[k][j]).sum();
                let id = if i == j { 1.0 } else { 0.0 };
                if (sq - id).abs() > STRUCTURE_TOLERANCE {
                    return Err(invalid("square is not the identity".into()));
                }
            }
        }
        Ok(CompositeObservable { matrix })
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.matrix
    }

    pub fn apply(&self, x: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.matrix[i][j] * x[j]).sum();
        }
        out
    }
}

/// Kronecker product `A (x) B`.
pub fn tensor_observable(a: &Observable, b: &Observable) -> CompositeObservable {
    let (ma, mb) = (a.matrix(), b.matrix());
    let mut m = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[2 * i + k][2 * j + l] = ma[i][j] * mb[k][l];
                }
            }
        }
    }
    CompositeObservable { matrix: m }
}

/// `<psi|M|psi>`
pub fn composite_expectation(obs: &CompositeObservable, psi: &CompositeState) -> f64 {
    let c = psi.coefficients();
    let mc = obs.apply(c);
    let e: f64 = c.iter().zip(mc.iter()).map(|(x, y)| x * y).sum();
    e.clamp(-1.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellKind {
    /// `(|00> + |11>) / sqrt(2)`
    PhiPlus,
}

impl BellKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BellKind::PhiPlus => "phi_plus",
        }
    }
}

impl std::fmt::Display for BellKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn bell_state(kind: BellKind) -> CompositeState {
    match kind {
        BellKind::PhiPlus => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            CompositeState {
                coefficients: [h, 0.0, 0.0, h],
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchmidtDecomposition {
    /// Descending, non-negative.
    pub singular_values: [f64; 2],
    pub rank: usize,
    /// Schmidt basis of the first document, paired with `singular_values`.
    #[serde(skip)]
    pub first_vectors: [Ket; 2],
    #[serde(skip)]
    pub second_vectors: [Ket; 2],
}

impl SchmidtDecomposition {
    pub fn is_separable(&self) -> bool {
        self.rank == 1
    }

    /// `sum_i s_i |u_i> (x) |v_i>`
    pub fn reconstruct(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..2 {
            let (u, v, s) = (
                self.first_vectors[i],
                self.second_vectors[i],
                self.singular_values[i],
            );
            out[0] += s * u[0] * v[0];
            out[1] += s * u[0] * v[1];
            out[2] += s * u[1] * v[0];
            out[3] += s * u[1] * v[1];
        }
        out
    }
}

/// Closed-form SVD of the 2x2 coefficient matrix.
///
/// Writes `M = R(phi) diag(sx, sy) R(theta)` with rotations `R`, where
/// `sx = Q + R'`, `sy = Q - R'` and `Q`, `R'` are the norms of the
/// rotation-like and reflection-like parts of `M`.
pub fn schmidt_decompose(psi: &CompositeState) -> SchmidtDecomposition {
    let [[p, q], [r, s]] = psi.coefficient_matrix();
    let e = (p + s) / 2.0;
    let f = (p - s) / 2.0;
    let g = (r + q) / 2.0;
    let h = (r - q) / 2.0;
    let big_q = e.hypot(h);
    let big_r = f.hypot(g);
    let sx = big_q + big_r;
    let sy = big_q - big_r;
    let a1 = g.atan2(f);
    let a2 = h.atan2(e);
    let theta = (a2 - a1) / 2.0;
    let phi = (a2 + a1) / 2.0;

    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let first_vectors = [[cp, sp], [-sp, cp]];
    let mut second_vectors = [[ct, -st], [st, ct]];
    if sy < 0.0 {
        second_vectors[1] = [-st, -ct];
    }
    let singular_values = [sx, sy.abs()];
    let rank = singular_values
        .iter()
        .filter(|&&v| v > RANK_TOLERANCE)
        .count();
    SchmidtDecomposition {
        singular_values,
        rank,
        first_vectors,
        second_vectors,
    }
}

/// Orthonormal basis `{(cos t, sin t), (-sin t, cos t)}`.
pub fn rotation_basis(theta: f64) -> [Ket; 2] {
    let (s, c) = theta.sin_cos();
    [[c, s], [-s, c]]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisCoefficients {
    pub basis: [Ket; 2],
    /// Coefficients over `|e0 e0>, |e0 e1>, |e1 e0>, |e1 e1>`.
    pub coefficients: [f64; 4],
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub per_basis: Vec<BasisCoefficients>,
}

/// Re-expresses `psi` in each product basis `{e_j (x) e_k}` (same basis on
/// both factors) and checks the coefficients are unchanged.
pub fn rotational_invariance_check(
    psi: &CompositeState,
    basis_sets: &[[Ket; 2]],
) -> Result<InvarianceReport> {
    if basis_sets.is_empty() {
        return Err(Error::Empty("basis set list"));
    }
    let orig = psi.coefficients();
    let mut per_basis = Vec::with_capacity(basis_sets.len());
    for (index, basis) in basis_sets.iter().enumerate() {
        let orthonormal = basis.iter().all(|e| check_unit(e, "basis vector").is_ok())
            && dot(&basis[0], &basis[1]).abs() <= STRUCTURE_TOLERANCE;
        if !orthonormal {
            return Err(Error::NotOrthonormal { index });
        }
        let mut coefficients = [0.0; 4];
        for j in 0..2 {
            for k in 0..2 {
                let (ej, ek) = (basis[j], basis[k]);
                coefficients[2 * j + k] = ej[0] * ek[0] * orig[0]
                    + ej[0] * ek[1] * orig[1]
                    + ej[1] * ek[0] * orig[2]
                    + ej[1] * ek[1] * orig[3];
            }
        }
        let max_deviation = coefficients
            .iter()
            .zip(orig.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        per_basis.push(BasisCoefficients {
            basis: *basis,
            coefficients,
            max_deviation,
        });
    }
    let invariant = per_basis
        .iter()
        .all(|b| b.max_deviation <= INVARIANCE_TOLERANCE);
    Ok(InvarianceReport {
        invariant,
        per_basis,
    })
}
