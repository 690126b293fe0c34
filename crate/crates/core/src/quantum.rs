//! Quantum-side checks for POVMs at small dimension.
//!
//! This is the one floating-point corner of the crate. Every predicate here
//! is a rank decision taken far from its threshold for the cases the library
//! ships: supports overlap or they do not, elements are idempotent or they
//! are not. Tolerances are fixed:
//!
//! - hermiticity slack 1e-10,
//! - PSD slack 1e-9 on the minimum eigenvalue, 1e-9 on the identity sum,
//! - rank / singular-value threshold 1e-8 (relative, floored at 1).
//!
//! Quantum degrees are exposed only through the unbiased-qubit closed form
//! and through exact-rational polygon discretizations of the Bloch disc that
//! feed the LP machinery.

use crate::error::{Error, Result};
use crate::model::{Effect, Label, Measurement, StateSpace};
use crate::rat::{rat, Rat};
use nalgebra::{Complex, DMatrix, DVector};
use num::{BigInt, One};
use std::sync::Arc;

pub type C64 = Complex<f64>;

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;
pub const RANK_TOL: f64 = 1e-8;
pub const MAX_SUPPORT_DIM: usize = 16;
pub const MAX_EXTREMAL_DIM: usize = 8;
pub const MAX_EXTREMAL_OUTCOMES: usize = 8;
pub const MAX_POLYGON: usize = 128;

/// A Hermitian matrix (checked within `HERMITICITY_TOL`).
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    dim: usize,
    entries: DMatrix<C64>,
}

impl HermitianOperator {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidOperator(format!(
                "{}x{} matrix is not square",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let dim = entries.nrows();
        let adj = entries.adjoint();
        let dev = (&entries - &adj).map(|z| z.norm()).max();
        if dev > HERMITICITY_TOL {
            return Err(Error::InvalidOperator(format!(
                "deviation {dev:.2e} from hermiticity"
            )));
        }
        Ok(HermitianOperator { dim, entries })
    }

    pub fn zero(dim: usize) -> Self {
        HermitianOperator {
            dim,
            entries: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    /// Real eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().cloned().unwrap_or(0.0)
    }
}

/// Orthonormal basis of the support (range) of a PSD operator: eigenvectors
/// with eigenvalue above `tol * max(largest eigenvalue, 1)`. The floor keeps
/// the cut absolute for near-zero operators, so the zero operator gets an
/// empty basis.
pub fn support_basis(a: &HermitianOperator, tol: f64) -> Result<DMatrix<C64>> {
    let eig = a.entries.clone().symmetric_eigen();
    let min = eig.eigenvalues.min();
    if min < -PSD_TOL {
        return Err(Error::InvalidOperator(format!(
            "operator is not PSD: eigenvalue {min:.3e}"
        )));
    }
    let max = eig.eigenvalues.max();
    let cut = tol * max.max(1.0);
    let cols: Vec<usize> = (0..a.dim)
        .filter(|&i| eig.eigenvalues[i] > cut)
        .collect();
    let mut basis = DMatrix::zeros(a.dim, cols.len());
    for (j, &i) in cols.iter().enumerate() {
        basis.set_column(j, &eig.eigenvectors.column(i));
    }
    Ok(basis)
}

/// A POVM: labelled PSD elements summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    labels: Vec<Label>,
    elements: Vec<HermitianOperator>,
}

impl Povm {
    pub fn new(labels: Vec<Label>, elements: Vec<HermitianOperator>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidPovm("no elements".into()));
        }
        if labels.len() != elements.len() {
            return Err(Error::InvalidPovm(format!(
                "{} labels for {} elements",
                labels.len(),
                elements.len()
            )));
        }
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                if labels[i] == labels[j] {
                    return Err(Error::InvalidPovm(format!(
                        "duplicate label `{}`",
                        labels[i]
                    )));
                }
            }
        }
        let dim = elements[0].dim();
        for e in &elements {
            if e.dim() != dim {
                return Err(Error::InvalidPovm("mixed element dimensions".into()));
            }
            let min = e.min_eigenvalue();
            if min < -PSD_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element has eigenvalue {min:.3e}"
                )));
            }
        }
        let mut sum = DMatrix::<C64>::zeros(dim, dim);
        for e in &elements {
            sum += e.entries();
        }
        let dev = (sum - DMatrix::<C64>::identity(dim, dim))
            .map(|z| z.norm())
            .max();
        if dev > PSD_TOL {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {dev:.3e}"
            )));
        }
        Ok(Povm {
            dim,
            labels,
            elements,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn num_outcomes(&self) -> usize {
        self.elements.len()
    }
}

/// Result of the pairwise-support intersubjectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PovmIntersubjectivity {
    pub intersubjective: bool,
    /// First pair of outcomes whose supports overlap, when any.
    pub offending_pair: Option<(Label, Label)>,
}

/// A POVM is intersubjective exactly when the supports of distinct elements
/// intersect trivially. The intersection dimension of two supports with
/// orthonormal bases `B_x`, `B_y` is `r_x + r_y - rank([B_x B_y])`.
pub fn is_intersubjective_povm(a: &Povm) -> Result<PovmIntersubjectivity> {
    is_intersubjective_povm_with_tol(a, RANK_TOL)
}

/// Same check at an explicit rank threshold; the default answers must be
/// stable under wide threshold shifts for cleanly decided inputs.
pub fn is_intersubjective_povm_with_tol(a: &Povm, tol: f64) -> Result<PovmIntersubjectivity> {
    if a.dim() > MAX_SUPPORT_DIM {
        return Err(Error::GuardExceeded {
            what: "POVM dimension",
            got: a.dim(),
            limit: MAX_SUPPORT_DIM,
        });
    }
    let bases: Vec<DMatrix<C64>> = a
        .elements()
        .iter()
        .map(|e| support_basis(e, tol))
        .collect::<Result<_>>()?;
    for i in 0..a.num_outcomes() {
        for j in (i + 1)..a.num_outcomes() {
            let ri = bases[i].ncols();
            let rj = bases[j].ncols();
            if ri == 0 || rj == 0 {
                continue;
            }
            let mut stacked = DMatrix::<C64>::zeros(a.dim(), ri + rj);
            stacked.columns_mut(0, ri).copy_from(&bases[i]);
            stacked.columns_mut(ri, rj).copy_from(&bases[j]);
            let r = rank_complex(&stacked, tol);
            if ri + rj > r {
                return Ok(PovmIntersubjectivity {
                    intersubjective: false,
                    offending_pair: Some((a.labels()[i].clone(), a.labels()[j].clone())),
                });
            }
        }
    }
    Ok(PovmIntersubjectivity {
        intersubjective: true,
        offending_pair: None,
    })
}

fn rank_complex(m: &DMatrix<C64>, tol: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    let cut = tol * max.max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

fn rank_real(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.max();
    let cut = tol * max.max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Is every element idempotent (a projection)? Then the POVM is a PVM.
pub fn is_pvm(a: &Povm) -> Result<bool> {
    is_pvm_with_tol(a, RANK_TOL)
}

/// Idempotence check at an explicit deviation threshold.
pub fn is_pvm_with_tol(a: &Povm, tol: f64) -> Result<bool> {
    for e in a.elements() {
        let sq = e.entries() * e.entries();
        let dev = (sq - e.entries()).map(|z| z.norm()).max();
        if dev > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extremality of a POVM in the convex set of POVMs with its outcome count.
///
/// A POVM is extremal exactly when the only Hermitian family `(d_x)` with
/// `supp(d_x) ⊆ supp(a_x)` and `sum_x d_x = 0` is the zero family. Each
/// `d_x` is parametrized as `B_x h_x B_x^†` over a real basis of r_x × r_x
/// Hermitian matrices; extremality is a real null-space rank decision.
pub fn is_extremal_povm(a: &Povm) -> Result<bool> {
    is_extremal_povm_with_tol(a, RANK_TOL)
}

/// Same extremality decision at an explicit rank threshold.
pub fn is_extremal_povm_with_tol(a: &Povm, tol: f64) -> Result<bool> {
    if a.dim() > MAX_EXTREMAL_DIM {
        return Err(Error::GuardExceeded {
            what: "POVM dimension",
            got: a.dim(),
            limit: MAX_EXTREMAL_DIM,
        });
    }
    if a.num_outcomes() > MAX_EXTREMAL_OUTCOMES {
        return Err(Error::GuardExceeded {
            what: "POVM outcome count",
            got: a.num_outcomes(),
            limit: MAX_EXTREMAL_OUTCOMES,
        });
    }
    let d = a.dim();
    let mut columns: Vec<DVector<f64>> = Vec::new();
    for e in a.elements() {
        let basis = support_basis(e, tol)?;
        let r = basis.ncols();
        for p in hermitian_basis(r) {
            let dx = &basis * p * basis.adjoint();
            // real/imaginary parts of all entries, stacked
            let mut col = DVector::zeros(2 * d * d);
            for i in 0..d {
                for j in 0..d {
                    col[2 * (i * d + j)] = dx[(i, j)].re;
                    col[2 * (i * d + j) + 1] = dx[(i, j)].im;
                }
            }
            columns.push(col);
        }
    }
    if columns.is_empty() {
        return Ok(true); // all elements zero-rank: nothing to perturb
    }
    let mut m = DMatrix::zeros(2 * d * d, columns.len());
    for (j, c) in columns.iter().enumerate() {
        m.set_column(j, c);
    }
    Ok(rank_real(&m, tol) == columns.len())
}

/// Real basis of r x r Hermitian matrices: diagonal units, then symmetric and
/// antisymmetric off-diagonal pairs.
fn hermitian_basis(r: usize) -> Vec<DMatrix<C64>> {
    let mut out = Vec::with_capacity(r * r);
    for i in 0..r {
        let mut m = DMatrix::<C64>::zeros(r, r);
        m[(i, i)] = C64::new(1.0, 0.0);
        out.push(m);
    }
    for i in 0..r {
        for j in (i + 1)..r {
            let mut s = DMatrix::<C64>::zeros(r, r);
            s[(i, j)] = C64::new(1.0, 0.0);
            s[(j, i)] = C64::new(1.0, 0.0);
            out.push(s);
            let mut t = DMatrix::<C64>::zeros(r, r);
            t[(i, j)] = C64::new(0.0, 1.0);
            t[(j, i)] = C64::new(0.0, -1.0);
            out.push(t);
        }
    }
    out
}

/// Degree of the unbiased qubit two-outcome measurement
/// `(1/2 (I + l·sigma), 1/2 (I - l·sigma))`: exactly `|l|^2`, for both the
/// intersubjectivity and the complete-intersubjectivity degree.
pub fn unbiased_qubit_degree(lambda: &[f64; 3]) -> Result<f64> {
    let norm2 = lambda.iter().map(|x| x * x).sum::<f64>();
    if norm2 > 1.0 {
        return Err(Error::InvalidOperator(format!(
            "Bloch vector norm^2 = {norm2} exceeds 1"
        )));
    }
    Ok(norm2)
}

/// The unbiased qubit POVM itself, for cross-checks.
pub fn unbiased_qubit_povm(lambda: &[f64; 3]) -> Result<Povm> {
    let norm2 = lambda.iter().map(|x| x * x).sum::<f64>();
    if norm2 > 1.0 {
        return Err(Error::InvalidOperator(format!(
            "Bloch vector norm^2 = {norm2} exceeds 1"
        )));
    }
    let dot = pauli_dot(lambda);
    let id = DMatrix::<C64>::identity(2, 2);
    let plus = HermitianOperator::new((&id + &dot).scale(0.5))?;
    let minus = HermitianOperator::new((&id - &dot).scale(0.5))?;
    Povm::new(vec!["+".into(), "-".into()], vec![plus, minus])
}

fn pauli_dot(lambda: &[f64; 3]) -> DMatrix<C64> {
    let (x, y, z) = (lambda[0], lambda[1], lambda[2]);
    DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(z, 0.0),
            C64::new(x, -y),
            C64::new(x, y),
            C64::new(-z, 0.0),
        ],
    )
}

/// An exact-rational regular-polygon discretization of the Bloch disc.
///
/// Vertices approximate the unit-circle n-gon with per-coordinate error
/// below 1e-6, truncated toward zero so every vertex stays inside the closed
/// disc; the resulting polytope is a legitimate system in its own right, so
/// LP statements about it are exact.
pub fn bloch_polygon_model(n: usize) -> Result<Arc<StateSpace>> {
    if n < 3 {
        return Err(Error::InvalidStateSpace(format!("{n}-gon")));
    }
    if n > MAX_POLYGON {
        return Err(Error::GuardExceeded {
            what: "polygon vertex count",
            got: n,
            limit: MAX_POLYGON,
        });
    }
    const SCALE: i64 = 10_000_000;
    let toward_zero = |x: f64| -> Rat {
        Rat::new(
            BigInt::from((x * SCALE as f64).trunc() as i64),
            BigInt::from(SCALE),
        )
    };
    let vertices: Vec<Vec<Rat>> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            vec![toward_zero(theta.cos()), toward_zero(theta.sin())]
        })
        .collect();
    StateSpace::new(format!("bloch-{n}-gon"), 2, vertices)
}

/// The in-plane unbiased measurement on a polygon model: effects
/// `1/2 (1 ± (l1 x1 + l2 x2))`.
pub fn embed_unbiased(
    space: &Arc<StateSpace>,
    l1: &Rat,
    l2: &Rat,
) -> Result<Measurement> {
    let norm2 = l1 * l1 + l2 * l2;
    if norm2 > Rat::one() {
        return Err(Error::InvalidEffect(format!(
            "in-plane Bloch vector norm^2 = {norm2} exceeds 1"
        )));
    }
    let half = rat(1, 2);
    let plus = Effect::new(
        space.clone(),
        vec![l1 * &half, l2 * &half],
        half.clone(),
    )?;
    let minus = plus.complement();
    Measurement::new(space.clone(), vec!["+".into(), "-".into()], vec![plus, minus])
}
