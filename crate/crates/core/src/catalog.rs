//! Built-in named models and measurements with their expected-property
//! tables, plus deterministic random generators for property testing.

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, Sense};
use crate::model::{
    direct_sum_measurement, direct_sum_space, solve_exact, Effect, Label, Measurement, StateSpace,
};
use crate::quantum::{HermitianOperator, Povm, C64};
use crate::rat::{one, rat, zero, Rat};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub const MAX_RANDOM_DIM: usize = 4;
pub const MAX_RANDOM_VERTICES: usize = 8;
pub const MAX_RANDOM_OUTCOMES: usize = 5;

#[derive(Debug, Clone)]
pub enum CatalogModel {
    Gpt(Arc<StateSpace>),
    Quantum { dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExpectedValue {
    Bool(bool),
    Degree(Rat),
    DegreeBelow(Rat),
}

/// One row of an entry's expected-property table. `provenance` records how
/// the value is known: `closed-form` (proved formula), `lp` (exact LP
/// oracle), `algebraic` (rank / idempotence computation), or `construction`.
#[derive(Debug, Clone)]
pub struct ExpectedProperty {
    pub property: &'static str,
    pub value: ExpectedValue,
    pub provenance: &'static str,
    pub note: Option<&'static str>,
}

impl ExpectedProperty {
    fn new(property: &'static str, value: ExpectedValue, provenance: &'static str) -> Self {
        ExpectedProperty {
            property,
            value,
            provenance,
            note: None,
        }
    }

    fn with_note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub model: CatalogModel,
    pub measurement: Option<Measurement>,
    pub povm: Option<Povm>,
    pub expected: Vec<ExpectedProperty>,
}

pub const CATALOG_NAMES: [&str; 6] = [
    "qubit-four-halves",
    "qubit-trine",
    "square-gbit",
    "fivedim-es-ext",
    "direct-sum-es",
    "qubit-z-pvm",
];

/// Loads a named catalog entry, rebuilding it from its defining data.
pub fn load_example(name: &str) -> Result<CatalogEntry> {
    match name {
        "qubit-four-halves" => Ok(four_halves_entry()),
        "qubit-trine" => Ok(trine_entry()),
        "square-gbit" => Ok(square_gbit_entry()?),
        "fivedim-es-ext" => Ok(fivedim_entry()?),
        "direct-sum-es" => Ok(direct_sum_entry()?),
        "qubit-z-pvm" => Ok(z_pvm_entry()),
        other => Err(Error::UnknownCatalogEntry(other.to_string())),
    }
}

fn ket(coeffs: &[(f64, f64)]) -> DVector<C64> {
    DVector::from_iterator(coeffs.len(), coeffs.iter().map(|&(r, i)| C64::new(r, i)))
}

fn projector(v: &DVector<C64>) -> DMatrix<C64> {
    v * v.adjoint()
}

fn four_halves_entry() -> CatalogEntry {
    let s = 1.0 / 2f64.sqrt();
    let kets = [
        ket(&[(1.0, 0.0), (0.0, 0.0)]),
        ket(&[(0.0, 0.0), (1.0, 0.0)]),
        ket(&[(s, 0.0), (s, 0.0)]),
        ket(&[(s, 0.0), (-s, 0.0)]),
    ];
    let elements = kets
        .iter()
        .map(|k| HermitianOperator::new(projector(k).scale(0.5)).expect("hermitian"))
        .collect();
    let povm = Povm::new(
        vec!["0".into(), "1".into(), "+".into(), "-".into()],
        elements,
    )
    .expect("valid POVM");
    CatalogEntry {
        name: "qubit-four-halves",
        model: CatalogModel::Quantum { dim: 2 },
        measurement: None,
        povm: Some(povm),
        expected: vec![
            ExpectedProperty::new(
                "intersubjective",
                ExpectedValue::Bool(true),
                "algebraic",
            )
            .with_note("rank-1 supports along four distinct directions"),
            ExpectedProperty::new("pvm", ExpectedValue::Bool(false), "algebraic"),
            ExpectedProperty::new("extremal", ExpectedValue::Bool(false), "algebraic"),
        ],
    }
}

fn trine_entry() -> CatalogEntry {
    let h = 0.5;
    let s3 = 3f64.sqrt() / 2.0;
    let kets = [
        ket(&[(1.0, 0.0), (0.0, 0.0)]),
        ket(&[(h, 0.0), (s3, 0.0)]),
        ket(&[(h, 0.0), (-s3, 0.0)]),
    ];
    let elements = kets
        .iter()
        .map(|k| HermitianOperator::new(projector(k).scale(2.0 / 3.0)).expect("hermitian"))
        .collect();
    let povm =
        Povm::new(vec!["1".into(), "2".into(), "3".into()], elements).expect("valid POVM");
    CatalogEntry {
        name: "qubit-trine",
        model: CatalogModel::Quantum { dim: 2 },
        measurement: None,
        povm: Some(povm),
        expected: vec![
            ExpectedProperty::new("extremal", ExpectedValue::Bool(true), "algebraic"),
            ExpectedProperty::new("pvm", ExpectedValue::Bool(false), "algebraic"),
        ],
    }
}

fn z_pvm_entry() -> CatalogEntry {
    let p0 = projector(&ket(&[(1.0, 0.0), (0.0, 0.0)]));
    let p1 = projector(&ket(&[(0.0, 0.0), (1.0, 0.0)]));
    let povm = Povm::new(
        vec!["0".into(), "1".into()],
        vec![
            HermitianOperator::new(p0).expect("hermitian"),
            HermitianOperator::new(p1).expect("hermitian"),
        ],
    )
    .expect("valid POVM");
    CatalogEntry {
        name: "qubit-z-pvm",
        model: CatalogModel::Quantum { dim: 2 },
        measurement: None,
        povm: Some(povm),
        expected: vec![
            ExpectedProperty::new("pvm", ExpectedValue::Bool(true), "algebraic"),
            ExpectedProperty::new("intersubjective", ExpectedValue::Bool(true), "algebraic"),
        ],
    }
}

/// The square model in ambient coordinates: vertices `(±1, ±1)`, with the
/// facet functionals `b± = (1 ± x1)/2` and `c± = (1 ± x2)/2`.
pub fn square_space() -> Result<Arc<StateSpace>> {
    StateSpace::new(
        "square-gbit",
        2,
        vec![
            vec![rat(1, 1), rat(1, 1)],
            vec![rat(1, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(1, 1)],
        ],
    )
}

pub fn square_b_measurement(space: &Arc<StateSpace>) -> Result<Measurement> {
    let b_plus = Effect::new(space.clone(), vec![rat(1, 2), zero()], rat(1, 2))?;
    Measurement::new(
        space.clone(),
        vec!["+".into(), "-".into()],
        vec![b_plus.clone(), b_plus.complement()],
    )
}

pub fn square_c_measurement(space: &Arc<StateSpace>) -> Result<Measurement> {
    let c_plus = Effect::new(space.clone(), vec![zero(), rat(1, 2)], rat(1, 2))?;
    Measurement::new(
        space.clone(),
        vec!["+".into(), "-".into()],
        vec![c_plus.clone(), c_plus.complement()],
    )
}

fn square_gbit_entry() -> Result<CatalogEntry> {
    let space = square_space()?;
    let b = square_b_measurement(&space)?;
    let c = square_c_measurement(&space)?;
    let a = b.mix(&c, &rat(1, 2))?;
    Ok(CatalogEntry {
        name: "square-gbit",
        model: CatalogModel::Gpt(space),
        measurement: Some(a),
        povm: None,
        expected: vec![
            ExpectedProperty::new("cis_degree", ExpectedValue::Degree(one()), "lp"),
            ExpectedProperty::new("extremal", ExpectedValue::Bool(false), "lp")
                .with_note("an equal mixture of the two facet measurements"),
        ],
    })
}

/// Inequality description of the five-dimensional polytope: coordinates
/// nonnegative, `x5 <= x1 + x4`, `x5 <= x2 + x3`, and `x1+x2+x3+x4 = 1`.
pub fn fivedim_inequalities() -> (Vec<(Vec<Rat>, Rat)>, Vec<(Vec<Rat>, Rat)>) {
    let mut ge: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for i in 0..5 {
        let mut row = vec![zero(); 5];
        row[i] = one();
        ge.push((row, zero()));
    }
    ge.push((
        vec![one(), zero(), zero(), one(), -one()],
        zero(),
    ));
    ge.push((
        vec![zero(), one(), one(), zero(), -one()],
        zero(),
    ));
    let eq = vec![(vec![one(), one(), one(), one(), zero()], one())];
    (ge, eq)
}

/// Exhaustive active-constraint vertex enumeration of a polytope given by
/// `ge` rows (`a·x >= b`) and `eq` rows, in ambient dimension `dim`.
/// Every subset of ge rows that, together with the equalities, pins down a
/// unique point is solved; feasible solutions are the vertices. Intended for
/// desk-scale inputs.
pub fn enumerate_vertices_by_active_constraints(
    dim: usize,
    ge: &[(Vec<Rat>, Rat)],
    eq: &[(Vec<Rat>, Rat)],
) -> Vec<Vec<Rat>> {
    let need = dim.saturating_sub(eq.len());
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let mut subset: Vec<usize> = (0..need).collect();
    if need > ge.len() {
        return out;
    }
    loop {
        // Stack equalities with the chosen active inequalities.
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(dim);
        for c in 0..dim {
            let mut col: Vec<Rat> = eq.iter().map(|(row, _)| row[c].clone()).collect();
            col.extend(subset.iter().map(|&i| ge[i].0[c].clone()));
            cols.push(col);
        }
        let mut rhs: Vec<Rat> = eq.iter().map(|(_, b)| b.clone()).collect();
        rhs.extend(subset.iter().map(|&i| ge[i].1.clone()));
        if let Some(point) = solve_exact(&cols, &rhs) {
            let feasible = ge
                .iter()
                .all(|(row, b)| crate::rat::dot(row, &point) >= *b);
            if feasible && !out.contains(&point) {
                out.push(point);
            }
        }
        // next lexicographic subset
        let mut i = need;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if subset[i] + 1 <= ge.len() - (need - i) {
                subset[i] += 1;
                for j in i + 1..need {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The five-dimensional system whose coordinate measurement is elementwise
/// sharp and extremal yet not completely intersubjective. The vertex list is
/// re-derived from the inequality description at every load and must match
/// the shipped one.
pub fn fivedim_space() -> Result<Arc<StateSpace>> {
    let half = rat(1, 2);
    let e = |i: usize| -> Vec<Rat> {
        (0..5)
            .map(|j| if i == j { one() } else { zero() })
            .collect()
    };
    let mixed = |i: usize, j: usize| -> Vec<Rat> {
        (0..5)
            .map(|t| {
                if t == i || t == j || t == 4 {
                    half.clone()
                } else {
                    zero()
                }
            })
            .collect()
    };
    let mut shipped = vec![
        e(0),
        e(1),
        e(2),
        e(3),
        mixed(0, 1),
        mixed(0, 2),
        mixed(3, 1),
        mixed(3, 2),
    ];
    shipped.sort();

    let (ge, eq) = fivedim_inequalities();
    let derived = enumerate_vertices_by_active_constraints(5, &ge, &eq);
    if derived != shipped {
        return Err(Error::InvalidStateSpace(
            "five-dimensional vertex list does not match its inequality description".into(),
        ));
    }
    StateSpace::new("fivedim-es-ext", 5, shipped)
}

pub fn fivedim_measurement(space: &Arc<StateSpace>) -> Result<Measurement> {
    let effects: Vec<Effect> = (0..4)
        .map(|i| {
            let mut lin = vec![zero(); 5];
            lin[i] = one();
            Effect::new(space.clone(), lin, zero())
        })
        .collect::<Result<_>>()?;
    Measurement::new(
        space.clone(),
        (1..=4).map(|i| i.to_string()).collect(),
        effects,
    )
}

fn fivedim_entry() -> Result<CatalogEntry> {
    let space = fivedim_space()?;
    let a = fivedim_measurement(&space)?;
    Ok(CatalogEntry {
        name: "fivedim-es-ext",
        model: CatalogModel::Gpt(space),
        measurement: Some(a),
        povm: None,
        expected: vec![
            ExpectedProperty::new("elementwise_sharp", ExpectedValue::Bool(true), "lp"),
            ExpectedProperty::new("extremal", ExpectedValue::Bool(true), "lp"),
            ExpectedProperty::new("cis_degree", ExpectedValue::Degree(zero()), "lp")
                .with_note("witness partition {1,4} / {2,3}"),
        ],
    })
}

fn direct_sum_entry() -> Result<CatalogEntry> {
    let sq = square_space()?;
    let fd = fivedim_space()?;
    let sum = direct_sum_space(&sq, &fd)?;
    let a_sq = square_b_measurement(&sq)?.mix(&square_c_measurement(&sq)?, &rat(1, 2))?;
    let a_fd = fivedim_measurement(&fd)?;
    let a = direct_sum_measurement(&sum, &a_sq, &a_fd)?;
    Ok(CatalogEntry {
        name: "direct-sum-es",
        model: CatalogModel::Gpt(sum),
        measurement: Some(a),
        povm: None,
        expected: vec![
            ExpectedProperty::new("elementwise_sharp", ExpectedValue::Bool(true), "lp"),
            ExpectedProperty::new("extremal", ExpectedValue::Bool(false), "lp"),
            ExpectedProperty::new("cis_degree", ExpectedValue::DegreeBelow(one()), "lp"),
        ],
    })
}

/// Deterministic random polytope: seeded rational points with non-extreme
/// ones removed. Resamples internally a bounded number of times if fewer
/// than two extreme points survive.
pub fn random_model(seed: u64, dim: usize, max_vertices: usize) -> Result<Arc<StateSpace>> {
    if dim == 0 || dim > MAX_RANDOM_DIM {
        return Err(Error::GuardExceeded {
            what: "random model dimension",
            got: dim,
            limit: MAX_RANDOM_DIM,
        });
    }
    if max_vertices < 2 || max_vertices > MAX_RANDOM_VERTICES {
        return Err(Error::GuardExceeded {
            what: "random model vertex count",
            got: max_vertices,
            limit: MAX_RANDOM_VERTICES,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let mut points: Vec<Vec<Rat>> = Vec::new();
        for _ in 0..max_vertices {
            let p: Vec<Rat> = (0..dim)
                .map(|_| rat(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=4)))
                .collect();
            if !points.contains(&p) {
                points.push(p);
            }
        }
        // Strip non-extreme points until every survivor is a vertex.
        'strip: loop {
            for i in 0..points.len() {
                if point_in_hull_of_others(&points, i)? {
                    points.remove(i);
                    continue 'strip;
                }
            }
            break;
        }
        if points.len() >= 2 {
            return StateSpace::new(format!("random-{seed}"), dim, points);
        }
    }
    Err(Error::DegenerateSample(format!(
        "seed {seed} kept collapsing to fewer than two extreme points"
    )))
}

fn point_in_hull_of_others(points: &[Vec<Rat>], idx: usize) -> Result<bool> {
    let others: Vec<&Vec<Rat>> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, p)| p)
        .collect();
    if others.is_empty() {
        return Ok(false);
    }
    let n = others.len();
    let dim = points[idx].len();
    let mut prog = LinearProgram::new(Sense::Minimize, vec![zero(); n]);
    for j in 0..n {
        prog.bound_lower(j, zero());
    }
    for c in 0..dim {
        let row: Vec<Rat> = others.iter().map(|p| p[c].clone()).collect();
        prog.eq(row, points[idx][c].clone());
    }
    prog.eq(vec![one(); n], one());
    Ok(matches!(lp::solve(&prog)?, lp::LpSolution::Optimal { .. }))
}

/// The measurement polytope of `outcomes`-outcome measurements on a space,
/// as a linear program region over basis values of the effects.
fn measurement_region(space: &Arc<StateSpace>, outcomes: usize) -> LinearProgram {
    let k = space.linear_dim();
    let nv = space.num_vertices();
    let basis = space.affine_basis();
    let nvars = outcomes * k;
    let mut region = LinearProgram::new(Sense::Minimize, vec![zero(); nvars]);
    for j in 0..nvars {
        region.bound_lower(j, zero());
        region.bound_upper(j, one());
    }
    for t in 0..k {
        let mut row = vec![zero(); nvars];
        for x in 0..outcomes {
            row[x * k + t] = one();
        }
        region.eq(row, one());
    }
    for x in 0..outcomes {
        for v in 0..nv {
            if basis.contains(&v) {
                continue;
            }
            let mut row = vec![zero(); nvars];
            for t in 0..k {
                row[x * k + t] = space.expansion()[v][t].clone();
            }
            region.ge(row, zero());
        }
    }
    region
}

fn measurement_from_basis_point(
    space: &Arc<StateSpace>,
    outcomes: usize,
    point: &[Rat],
) -> Result<Measurement> {
    let k = space.linear_dim();
    let effects: Vec<Effect> = (0..outcomes)
        .map(|x| {
            let vals: Vec<Rat> = (0..k).map(|t| point[x * k + t].clone()).collect();
            Effect::from_basis_values(space.clone(), &vals)
        })
        .collect::<Result<_>>()?;
    let labels: Vec<Label> = (1..=outcomes).map(|i| i.to_string()).collect();
    Measurement::new(space.clone(), labels, effects)
}

/// A vertex of the measurement polytope: an extremal measurement, sampled
/// deterministically from the seed.
pub fn random_extremal_measurement(
    space: &Arc<StateSpace>,
    outcomes: usize,
    seed: u64,
) -> Result<Measurement> {
    if outcomes == 0 || outcomes > MAX_RANDOM_OUTCOMES {
        return Err(Error::GuardExceeded {
            what: "random measurement outcomes",
            got: outcomes,
            limit: MAX_RANDOM_OUTCOMES,
        });
    }
    let region = measurement_region(space, outcomes);
    let point = lp::vertex_sample(&region, seed)?;
    measurement_from_basis_point(space, outcomes, &point)
}

/// A seeded measurement: an extremal vertex sample, mixed (on a seeded coin
/// flip) with a seeded coin-tossing measurement to produce non-extremal
/// instances as well.
pub fn random_measurement(
    space: &Arc<StateSpace>,
    outcomes: usize,
    seed: u64,
) -> Result<Measurement> {
    let extremal = random_extremal_measurement(space, outcomes, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    if rng.gen_bool(0.5) {
        return Ok(extremal);
    }
    let weights = random_distribution(&mut rng, outcomes);
    let toss = crate::metrics::coin_toss_measurement(space, &weights)?;
    let lambda = rat(rng.gen_range(1i64..=3), 4); // 1/4 .. 3/4
    extremal.mix(&toss, &lambda)
}

/// Random exact probability vector with the given support size.
pub fn random_distribution(rng: &mut ChaCha8Rng, outcomes: usize) -> Vec<Rat> {
    let nums: Vec<i64> = (0..outcomes).map(|_| rng.gen_range(1i64..=8)).collect();
    let total: i64 = nums.iter().sum();
    nums.into_iter().map(|n| rat(n, total)).collect()
}

/// Simplex with `k` vertices (the classical `k`-level system).
pub fn simplex_space(k: usize) -> Result<Arc<StateSpace>> {
    let verts: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { one() } else { zero() })
                .collect()
        })
        .collect();
    StateSpace::new(format!("simplex-{k}"), k, verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::is_classical;
    use crate::metrics::{cis_degree, intersubjectivity_degree, is_extremal};

    #[test]
    fn catalog_names_all_load() {
        for name in CATALOG_NAMES {
            let entry = load_example(name).unwrap();
            assert_eq!(entry.name, name);
            assert!(!entry.expected.is_empty());
        }
        assert!(load_example("nope").is_err());
    }

    #[test]
    fn fivedim_vertices_match_the_oracle() {
        let space = fivedim_space().unwrap();
        assert_eq!(space.num_vertices(), 8);
        assert_eq!(space.affine_dim(), 4);
        assert_eq!(space.linear_dim(), 5);
        // the mixed vertices pair {1,4} with {2,3}
        let half = rat(1, 2);
        assert!(space
            .vertices()
            .contains(&vec![half.clone(), half.clone(), zero(), zero(), half.clone()]));
    }

    #[test]
    fn fivedim_is_not_classical_and_has_seven_rays() {
        let space = fivedim_space().unwrap();
        assert!(!is_classical(&space).unwrap());
        let rays = crate::cone::nonneg_cone_rays(&space).unwrap();
        assert_eq!(rays.len(), 7);
    }

    #[test]
    fn direct_sum_entry_counts() {
        let entry = load_example("direct-sum-es").unwrap();
        let CatalogModel::Gpt(space) = &entry.model else {
            panic!("GPT model expected");
        };
        assert_eq!(space.dim(), 2 + 5 + 1);
        assert_eq!(space.num_vertices(), 4 + 8);
        assert_eq!(entry.measurement.as_ref().unwrap().num_outcomes(), 6);
    }

    #[test]
    fn random_model_is_deterministic_and_extreme() {
        let a = random_model(11, 2, 6).unwrap();
        let b = random_model(11, 2, 6).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert!(a.num_vertices() >= 2 && a.num_vertices() <= 6);
        // construction already certifies extremality; re-assert emptiness of
        // hull membership for good measure
        for i in 0..a.num_vertices() {
            assert!(!point_in_hull_of_others(a.vertices(), i).unwrap());
        }
    }

    #[test]
    fn random_measurements_validate_and_vertex_samples_are_intersubjective() {
        let s = square_space().unwrap();
        for seed in 0..6u64 {
            let m = random_measurement(&s, 3, seed).unwrap();
            assert_eq!(m.num_outcomes(), 3);
            let e = random_extremal_measurement(&s, 2, seed).unwrap();
            assert!(is_extremal(&e).unwrap());
            let deg = intersubjectivity_degree(&e).unwrap();
            assert_eq!(deg.value, one());
        }
    }

    #[test]
    fn square_gbit_expected_table_reproduces() {
        let entry = load_example("square-gbit").unwrap();
        let a = entry.measurement.as_ref().unwrap();
        let cis = cis_degree(a).unwrap();
        assert_eq!(cis.value, one());
        assert!(!is_extremal(a).unwrap());
    }
}
