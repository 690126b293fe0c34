//! GPT state spaces, effects and measurements.
//!
//! A state space is a rational polytope given by its extreme points. Effects
//! are affine functionals with values in [0,1] on it; their canonical
//! identity is the vector of values on the vertex list, because the vertices
//! need not affinely span the ambient space and coefficient pairs are then
//! non-unique. Measurements are labelled families of effects summing to the
//! unit effect, exactly.

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpSolution, Sense};
use crate::rat::{dot, one, rat_sum, zero, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub type Label = String;

/// A compact convex state space: the convex hull of finitely many rational
/// points, all of which are certified extreme at construction.
#[derive(Debug, Clone)]
pub struct StateSpace {
    name: String,
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    /// Indices of an affinely independent vertex subset spanning the hull.
    affine_basis: Vec<usize>,
    /// Row v = affine coordinates of vertex v with respect to the basis.
    expand: Vec<Vec<Rat>>,
    /// Set when this space was built as a direct sum; enables the product
    /// structure of its effect polytope and cone.
    summands: Option<(Arc<StateSpace>, Arc<StateSpace>)>,
}

impl PartialEq for StateSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}
impl Eq for StateSpace {}

impl fmt::Display for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, {} vertices, linear dim {})",
            self.name,
            self.dim,
            self.vertices.len(),
            self.linear_dim()
        )
    }
}

impl StateSpace {
    /// Builds a state space, checking that vertices are distinct, of equal
    /// width, and extreme (no vertex in the hull of the others).
    pub fn new(name: impl Into<String>, dim: usize, vertices: Vec<Vec<Rat>>) -> Result<Arc<Self>> {
        Self::build(name, dim, vertices, None)
    }

    fn build(
        name: impl Into<String>,
        dim: usize,
        vertices: Vec<Vec<Rat>>,
        summands: Option<(Arc<StateSpace>, Arc<StateSpace>)>,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        if vertices.is_empty() {
            return Err(Error::InvalidStateSpace("no vertices".into()));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(Error::InvalidStateSpace(format!(
                        "vertices {i} and {j} coincide"
                    )));
                }
            }
        }
        for i in 0..vertices.len() {
            if point_in_hull(&vertices[i], &vertices, Some(i))? {
                return Err(Error::InvalidStateSpace(format!(
                    "vertex {i} lies in the hull of the others"
                )));
            }
        }

        let (affine_basis, expand) = affine_coordinates(&vertices)?;
        Ok(Arc::new(StateSpace {
            name,
            dim,
            vertices,
            affine_basis,
            expand,
            summands,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Indices of the affinely independent vertex subset used as coordinates.
    pub fn affine_basis(&self) -> &[usize] {
        &self.affine_basis
    }

    /// Affine coordinates of every vertex over the basis (rows sum to 1).
    pub fn expansion(&self) -> &[Vec<Rat>] {
        &self.expand
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_basis.len() - 1
    }

    /// Dimension of the linear span of the homogenized state space
    /// (affine-hull dimension + 1).
    pub fn linear_dim(&self) -> usize {
        self.affine_basis.len()
    }

    pub fn summands(&self) -> Option<(&Arc<StateSpace>, &Arc<StateSpace>)> {
        self.summands.as_ref().map(|(a, b)| (a, b))
    }

    /// Affine coordinates of an arbitrary point of the affine hull over the
    /// vertex basis. Errors when the point lies outside the hull's span.
    pub fn affine_coords(&self, point: &[Rat]) -> Result<Vec<Rat>> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        // Solve sum_k c_k (basis_k, 1) = (point, 1) exactly.
        let k = self.affine_basis.len();
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(k);
        for &bi in &self.affine_basis {
            let mut col: Vec<Rat> = self.vertices[bi].clone();
            col.push(one());
            cols.push(col);
        }
        let mut target: Vec<Rat> = point.to_vec();
        target.push(one());
        solve_exact(&cols, &target).ok_or_else(|| {
            Error::InvalidStateSpace("point outside the affine hull of the vertices".into())
        })
    }

    /// Membership of a point in the polytope, decided by LP feasibility.
    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        point_in_hull(point, &self.vertices, None)
    }
}

/// Is `point` a convex combination of `vertices` (skipping index `skip`)?
fn point_in_hull(point: &[Rat], vertices: &[Vec<Rat>], skip: Option<usize>) -> Result<bool> {
    let used: Vec<&Vec<Rat>> = vertices
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, v)| v)
        .collect();
    if used.is_empty() {
        return Ok(false);
    }
    let n = used.len();
    let dim = point.len();
    let mut prog = LinearProgram::new(Sense::Minimize, vec![zero(); n]);
    for j in 0..n {
        prog.bound_lower(j, zero());
    }
    for c in 0..dim {
        let row: Vec<Rat> = used.iter().map(|v| v[c].clone()).collect();
        prog.eq(row, point[c].clone());
    }
    prog.eq(vec![one(); n], one());
    Ok(matches!(lp::solve(&prog)?, LpSolution::Optimal { .. }))
}

/// Greedy affine basis + exact affine coordinates of every vertex over it.
fn affine_coordinates(vertices: &[Vec<Rat>]) -> Result<(Vec<usize>, Vec<Vec<Rat>>)> {
    let mut basis: Vec<usize> = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        let mut homog: Vec<Vec<Rat>> = basis
            .iter()
            .map(|&b| {
                let mut col = vertices[b].clone();
                col.push(one());
                col
            })
            .collect();
        let mut target = v.clone();
        target.push(one());
        if homog.is_empty() || solve_exact(&homog, &target).is_none() {
            basis.push(i);
        }
        homog.clear();
    }
    let cols: Vec<Vec<Rat>> = basis
        .iter()
        .map(|&b| {
            let mut col = vertices[b].clone();
            col.push(one());
            col
        })
        .collect();
    let mut expand = Vec::with_capacity(vertices.len());
    for v in vertices {
        let mut target = v.clone();
        target.push(one());
        let coords = solve_exact(&cols, &target)
            .ok_or_else(|| Error::InvalidStateSpace("affine expansion failed".into()))?;
        expand.push(coords);
    }
    Ok((basis, expand))
}

/// Solves `sum_k x_k cols[k] = target` exactly; `None` when inconsistent.
/// Columns are assumed linearly independent (free variables never arise for
/// the affine bases built here).
pub(crate) fn solve_exact(cols: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = cols.len();
    let rows = target.len();
    // Augmented matrix [cols | target], Gaussian elimination.
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::with_capacity(k);
    let mut r0 = 0usize;
    for c in 0..k {
        let Some(pr) = (r0..rows).find(|&r| !a[r][c].is_zero()) else {
            return None; // dependent column: unsupported here
        };
        a.swap(r0, pr);
        let inv = Rat::one() / &a[r0][c];
        for v in a[r0].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = a[r0].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == r0 {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivot_rows.push(r0);
        r0 += 1;
    }
    // Consistency: remaining rows must have zero rhs.
    for r in r0..rows {
        if !a[r][k].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); k];
    for (c, &pr) in pivot_rows.iter().enumerate() {
        x[c] = a[pr][k].clone();
    }
    Some(x)
}

/// An affine functional on a state space with values in [0,1].
///
/// `linear` and `constant` are one representative; equality and ordering go
/// through the vertex value vector, which is canonical.
#[derive(Debug, Clone)]
pub struct Effect {
    space: Arc<StateSpace>,
    linear: Vec<Rat>,
    constant: Rat,
    values: Vec<Rat>,
}

impl PartialEq for Effect {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.values == other.values
    }
}
impl Eq for Effect {}

impl Effect {
    pub fn new(space: Arc<StateSpace>, linear: Vec<Rat>, constant: Rat) -> Result<Self> {
        if linear.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: linear.len(),
            });
        }
        let values: Vec<Rat> = space
            .vertices()
            .iter()
            .map(|v| dot(&linear, v) + &constant)
            .collect();
        for (i, val) in values.iter().enumerate() {
            if val.is_negative() || *val > one() {
                return Err(Error::InvalidEffect(format!(
                    "value {val} at vertex {i} is outside [0,1]"
                )));
            }
        }
        Ok(Effect {
            space,
            linear,
            constant,
            values,
        })
    }

    /// Builds an effect from its values at the affine-basis vertices. The
    /// remaining vertex values are the induced affine extension; they are
    /// checked to lie in [0,1].
    pub fn from_basis_values(space: Arc<StateSpace>, basis_values: &[Rat]) -> Result<Self> {
        let (linear, constant) = functional_from_basis_values(&space, basis_values)?;
        Effect::new(space, linear, constant)
    }

    /// Builds an effect from a full vertex value vector, checking affine
    /// consistency against the expansion coefficients.
    pub fn from_values(space: Arc<StateSpace>, values: &[Rat]) -> Result<Self> {
        if values.len() != space.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: space.num_vertices(),
                got: values.len(),
            });
        }
        let basis_values: Vec<Rat> = space
            .affine_basis()
            .iter()
            .map(|&b| values[b].clone())
            .collect();
        let eff = Effect::from_basis_values(space, &basis_values)?;
        if eff.values != values {
            return Err(Error::InvalidEffect(
                "value vector is not affine-consistent".into(),
            ));
        }
        Ok(eff)
    }

    pub fn zero(space: Arc<StateSpace>) -> Self {
        let dim = space.dim();
        Effect::new(space, vec![zero(); dim], zero()).expect("zero effect is valid")
    }

    pub fn unit(space: Arc<StateSpace>) -> Self {
        let dim = space.dim();
        Effect::new(space, vec![zero(); dim], one()).expect("unit effect is valid")
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn linear(&self) -> &[Rat] {
        &self.linear
    }

    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    /// Values on the vertex list; the canonical identity of the effect.
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value_at_vertex(&self, i: usize) -> &Rat {
        &self.values[i]
    }

    /// Evaluates at an arbitrary point of the ambient space.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: point.len(),
            });
        }
        Ok(dot(&self.linear, point) + &self.constant)
    }

    /// Max value over the state space (attained at a vertex).
    pub fn norm(&self) -> Rat {
        self.values.iter().cloned().max().expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Partial order: `self(v) <= other(v)` at every vertex. States are
    /// convex combinations of vertices, so this coincides with the pointwise
    /// order over the whole state space.
    pub fn leq(&self, other: &Effect) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// `1_S - self`.
    pub fn complement(&self) -> Effect {
        let linear: Vec<Rat> = self.linear.iter().map(|c| -c).collect();
        Effect::new(self.space.clone(), linear, one() - &self.constant)
            .expect("complement of an effect is an effect")
    }

    /// Exact linear combination of effects; fails if the result leaves [0,1].
    pub fn combine(space: &Arc<StateSpace>, terms: &[(Rat, &Effect)]) -> Result<Effect> {
        let dim = space.dim();
        let mut linear = vec![zero(); dim];
        let mut constant = zero();
        for (coef, eff) in terms {
            if &eff.space != space {
                return Err(Error::SpaceMismatch);
            }
            for (l, el) in linear.iter_mut().zip(&eff.linear) {
                *l += coef * el;
            }
            constant += coef * &eff.constant;
        }
        Effect::new(space.clone(), linear, constant)
    }

    /// True when the two effects are exact scalings of one another
    /// (on value vectors; zero is proportional only to zero).
    pub fn proportional_to(&self, other: &Effect) -> bool {
        if self.space != other.space {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                // first nonzero coordinate fixes the ratio
                let idx = self.values.iter().position(|v| !v.is_zero()).unwrap();
                if other.values[idx].is_zero() {
                    return false;
                }
                let ratio = &self.values[idx] / &other.values[idx];
                self.values
                    .iter()
                    .zip(&other.values)
                    .all(|(a, b)| *a == b * &ratio)
            }
        }
    }
}

/// Representative `(linear, constant)` for given affine-basis values.
pub(crate) fn functional_from_basis_values(
    space: &StateSpace,
    basis_values: &[Rat],
) -> Result<(Vec<Rat>, Rat)> {
    let k = space.affine_basis().len();
    if basis_values.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: basis_values.len(),
        });
    }
    // Solve (v_b, 1) · (linear, constant) = value_b over the basis vertices.
    // The system is underdetermined when the vertices do not span; Gaussian
    // elimination with free unknowns pinned to zero picks a representative.
    let dim = space.dim();
    let rows = k;
    let cols_n = dim + 1;
    let mut a: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let b = space.affine_basis()[r];
            let mut row = space.vertices()[b].clone();
            row.push(one());
            row.push(basis_values[r].clone());
            row
        })
        .collect();
    // Row-reduce; record pivot columns.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r0 = 0usize;
    for c in 0..cols_n {
        if r0 >= rows {
            break;
        }
        let Some(pr) = (r0..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(r0, pr);
        let inv = Rat::one() / &a[r0][c];
        for v in a[r0].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = a[r0].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == r0 {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push((r0, c));
        r0 += 1;
    }
    if r0 < rows {
        return Err(Error::InvalidStateSpace(
            "affine basis rows are dependent".into(),
        ));
    }
    let mut coeffs = vec![zero(); cols_n];
    for (r, c) in pivots {
        coeffs[c] = a[r][cols_n].clone();
    }
    let constant = coeffs.pop().expect("constant slot");
    Ok((coeffs, constant))
}

/// A finite-outcome measurement: distinct labels and effects summing to the
/// unit effect, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measurement {
    space: Arc<StateSpace>,
    labels: Vec<Label>,
    effects: Vec<Effect>,
}

impl Measurement {
    pub fn new(space: Arc<StateSpace>, labels: Vec<Label>, effects: Vec<Effect>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidMeasurement("no outcomes".into()));
        }
        if labels.len() != effects.len() {
            return Err(Error::InvalidMeasurement(format!(
                "{} labels for {} effects",
                labels.len(),
                effects.len()
            )));
        }
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                if labels[i] == labels[j] {
                    return Err(Error::InvalidMeasurement(format!(
                        "duplicate label `{}`",
                        labels[i]
                    )));
                }
            }
        }
        for e in &effects {
            if e.space() != &space {
                return Err(Error::SpaceMismatch);
            }
        }
        for v in 0..space.num_vertices() {
            let total = rat_sum(effects.iter().map(|e| e.value_at_vertex(v)));
            if !total.is_one() {
                return Err(Error::InvalidMeasurement(format!(
                    "effect values sum to {total} at vertex {v}"
                )));
            }
        }
        Ok(Measurement {
            space,
            labels,
            effects,
        })
    }

    /// The one-outcome measurement `(1_S)`.
    pub fn trivial(space: Arc<StateSpace>) -> Self {
        Measurement::new(space.clone(), vec!["*".into()], vec![Effect::unit(space)])
            .expect("trivial measurement is valid")
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn num_outcomes(&self) -> usize {
        self.labels.len()
    }

    pub fn effect_for(&self, label: &str) -> Option<&Effect> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.effects[i])
    }

    /// Outcome-wise convex combination `lambda self + (1 - lambda) other`.
    /// Requires identical label lists.
    pub fn mix(&self, other: &Measurement, lambda: &Rat) -> Result<Measurement> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.labels != other.labels {
            return Err(Error::LabelMismatch);
        }
        if lambda.is_negative() || *lambda > one() {
            return Err(Error::InvalidMeasurement(format!(
                "mixing weight {lambda} outside [0,1]"
            )));
        }
        let co = one() - lambda;
        let effects: Vec<Effect> = self
            .effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| {
                Effect::combine(&self.space, &[(lambda.clone(), a), (co.clone(), b)])
            })
            .collect::<Result<_>>()?;
        Measurement::new(self.space.clone(), self.labels.clone(), effects)
    }

    /// Merges outcomes along a partition; one outcome per block, the block
    /// effect being the exact sum of the member effects. Block labels are
    /// the sorted member labels joined with `+`.
    pub fn coarse_grain(&self, partition: &OutcomePartition) -> Result<Measurement> {
        partition.validate_against(&self.labels)?;
        let mut blocks: Vec<Vec<usize>> = partition
            .blocks()
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|l| self.labels.iter().position(|x| x == l).unwrap())
                    .collect()
            })
            .collect();
        // Deterministic outcome order: blocks by their earliest member.
        blocks.sort_by_key(|b| *b.iter().min().unwrap());
        let mut labels = Vec::with_capacity(blocks.len());
        let mut effects = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut members: Vec<&Label> = block.iter().map(|&i| &self.labels[i]).collect();
            members.sort();
            labels.push(
                members
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join("+"),
            );
            let terms: Vec<(Rat, &Effect)> =
                block.iter().map(|&i| (one(), &self.effects[i])).collect();
            effects.push(Effect::combine(&self.space, &terms)?);
        }
        Measurement::new(self.space.clone(), labels, effects)
    }

    /// Joint-measurement product labels, row-major over `(xs, ys)`.
    pub fn product_labels(xs: &[Label], ys: &[Label]) -> Vec<Label> {
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for x in xs {
            for y in ys {
                out.push(format!("{x}|{y}"));
            }
        }
        out
    }

    /// Marginals of a measurement whose labels form the full grid
    /// `xs × ys` in row-major order (as produced by [`Self::product_labels`]).
    pub fn marginals(&self, xs: &[Label], ys: &[Label]) -> Result<(Measurement, Measurement)> {
        let expected = Self::product_labels(xs, ys);
        if self.labels != expected {
            return Err(Error::InvalidMeasurement(
                "labels do not form the requested product grid".into(),
            ));
        }
        let nx = xs.len();
        let ny = ys.len();
        let mut first = Vec::with_capacity(nx);
        for i in 0..nx {
            let terms: Vec<(Rat, &Effect)> = (0..ny)
                .map(|j| (one(), &self.effects[i * ny + j]))
                .collect();
            first.push(Effect::combine(&self.space, &terms)?);
        }
        let mut second = Vec::with_capacity(ny);
        for j in 0..ny {
            let terms: Vec<(Rat, &Effect)> = (0..nx)
                .map(|i| (one(), &self.effects[i * ny + j]))
                .collect();
            second.push(Effect::combine(&self.space, &terms)?);
        }
        Ok((
            Measurement::new(self.space.clone(), xs.to_vec(), first)?,
            Measurement::new(self.space.clone(), ys.to_vec(), second)?,
        ))
    }

    /// Does `self` (with grid labels over `xs × ys`) have marginals equal to
    /// `a` and `b`? Comparison is on value vectors.
    pub fn is_joint(&self, a: &Measurement, b: &Measurement) -> Result<bool> {
        let (ma, mb) = self.marginals(a.labels(), b.labels())?;
        Ok(ma.effects == a.effects && mb.effects == b.effects)
    }
}

/// A set partition of an outcome label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomePartition {
    blocks: Vec<Vec<Label>>,
}

impl OutcomePartition {
    pub fn new(blocks: Vec<Vec<Label>>) -> Result<Self> {
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let mut seen: Vec<&Label> = Vec::new();
        for b in &blocks {
            for l in b {
                if seen.contains(&l) {
                    return Err(Error::InvalidPartition(format!(
                        "label `{l}` appears in two blocks"
                    )));
                }
                seen.push(l);
            }
        }
        Ok(OutcomePartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<Label>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Singleton-blocks partition of the given labels.
    pub fn identity(labels: &[Label]) -> Self {
        OutcomePartition {
            blocks: labels.iter().map(|l| vec![l.clone()]).collect(),
        }
    }

    /// One-block partition of the given labels.
    pub fn total(labels: &[Label]) -> Self {
        OutcomePartition {
            blocks: vec![labels.to_vec()],
        }
    }

    /// Exact cover check against a label universe.
    pub fn validate_against(&self, labels: &[Label]) -> Result<()> {
        let mut count = 0usize;
        for b in &self.blocks {
            for l in b {
                if !labels.contains(l) {
                    return Err(Error::InvalidPartition(format!("unknown label `{l}`")));
                }
                count += 1;
            }
        }
        if count != labels.len() {
            return Err(Error::InvalidPartition(format!(
                "covers {count} of {} labels",
                labels.len()
            )));
        }
        Ok(())
    }

    /// Partition of index blocks mapped onto labels.
    pub fn from_index_blocks(labels: &[Label], blocks: &[Vec<usize>]) -> Self {
        OutcomePartition {
            blocks: blocks
                .iter()
                .map(|b| b.iter().map(|&i| labels[i].clone()).collect())
                .collect(),
        }
    }
}

/// All set partitions of `{0, .., n-1}` as index blocks, by restricted-growth
/// strings in lexicographic order. Blocks are ordered by first occurrence and
/// block members ascend, so the output is deterministic.
pub fn index_partitions(n: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    const MAX: usize = 10; // Bell(10) = 115975
    if n == 0 {
        return Err(Error::InvalidPartition("empty ground set".into()));
    }
    if n > MAX {
        return Err(Error::GuardExceeded {
            what: "partition ground set",
            got: n,
            limit: MAX,
        });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks_n = rgs.iter().max().unwrap() + 1;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); blocks_n];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        out.push(blocks);

        // next restricted-growth string
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let cap = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// All set partitions of labels `"1" .. "n"`, same order as
/// [`index_partitions`].
pub fn enumerate_partitions(n: usize) -> Result<Vec<OutcomePartition>> {
    let labels: Vec<Label> = (1..=n).map(|i| i.to_string()).collect();
    Ok(index_partitions(n)?
        .iter()
        .map(|blocks| OutcomePartition::from_index_blocks(&labels, blocks))
        .collect())
}

/// Direct sum of two state spaces.
///
/// States are formal mixtures `lambda s1 (+) (1 - lambda) s2`, stored in
/// coordinates `(lambda * s1, (1 - lambda) * s2, lambda)` of width
/// `d1 + d2 + 1`. Vertices are the embedded vertex sets of the two summands.
pub fn direct_sum_space(s1: &Arc<StateSpace>, s2: &Arc<StateSpace>) -> Result<Arc<StateSpace>> {
    let d1 = s1.dim();
    let d2 = s2.dim();
    let dim = d1 + d2 + 1;
    let mut vertices = Vec::with_capacity(s1.num_vertices() + s2.num_vertices());
    for v in s1.vertices() {
        let mut w = v.clone();
        w.extend(std::iter::repeat(zero()).take(d2));
        w.push(one());
        vertices.push(w);
    }
    for v in s2.vertices() {
        let mut w = vec![zero(); d1];
        w.extend(v.iter().cloned());
        w.push(zero());
        vertices.push(w);
    }
    StateSpace::build(
        format!("{}(+){}", s1.name(), s2.name()),
        dim,
        vertices,
        Some((s1.clone(), s2.clone())),
    )
}

/// Embeds an effect of the left summand: it acts as `lambda a(s1)` on the
/// mixture, vanishing on the right summand.
pub fn embed_left(sum_space: &Arc<StateSpace>, a: &Effect) -> Result<Effect> {
    let (s1, s2) = sum_space
        .summands()
        .ok_or_else(|| Error::SpaceMismatch)?;
    if a.space() != s1 {
        return Err(Error::SpaceMismatch);
    }
    let d2 = s2.dim();
    let mut linear = a.linear().to_vec();
    linear.extend(std::iter::repeat(zero()).take(d2));
    linear.push(a.constant().clone());
    Effect::new(sum_space.clone(), linear, zero())
}

/// Embeds an effect of the right summand: `(1 - lambda) b(s2)`.
pub fn embed_right(sum_space: &Arc<StateSpace>, b: &Effect) -> Result<Effect> {
    let (s1, s2) = sum_space
        .summands()
        .ok_or_else(|| Error::SpaceMismatch)?;
    if b.space() != s2 {
        return Err(Error::SpaceMismatch);
    }
    let d1 = s1.dim();
    let mut linear = vec![zero(); d1];
    linear.extend(b.linear().iter().cloned());
    linear.push(-b.constant());
    Effect::new(sum_space.clone(), linear, b.constant().clone())
}

/// Direct sum of measurements on the two summands of `sum_space`. The
/// outcome set is the disjoint union of the label sets.
pub fn direct_sum_measurement(
    sum_space: &Arc<StateSpace>,
    a: &Measurement,
    b: &Measurement,
) -> Result<Measurement> {
    let (s1, s2) = sum_space
        .summands()
        .ok_or_else(|| Error::SpaceMismatch)?;
    if a.space() != s1 || b.space() != s2 {
        return Err(Error::SpaceMismatch);
    }
    let mut labels = a.labels().to_vec();
    labels.extend(b.labels().iter().cloned());
    let mut effects = Vec::with_capacity(labels.len());
    for e in a.effects() {
        effects.push(embed_left(sum_space, e)?);
    }
    for e in b.effects() {
        effects.push(embed_right(sum_space, e)?);
    }
    Measurement::new(sum_space.clone(), labels, effects)
}
