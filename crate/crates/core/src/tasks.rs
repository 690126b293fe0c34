//! Operational tasks: minimum-error state discrimination, perfect
//! distinguishability, and tomographic completeness.

use crate::cone::extreme_effects;
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, Sense};
use crate::metrics::sharpness_degree;
use crate::model::{Effect, Label, Measurement, StateSpace};
use crate::rat::{one, rat_sum, zero, Rat};
use num::{One, Signed, Zero};
use std::sync::Arc;

pub const MAX_ENSEMBLE: usize = 8;

/// A finite ensemble of states with exact prior probabilities. Each state is
/// certified to lie in the polytope at construction.
#[derive(Debug, Clone)]
pub struct Ensemble {
    space: Arc<StateSpace>,
    states: Vec<(Vec<Rat>, Rat)>,
}

impl Ensemble {
    pub fn new(space: Arc<StateSpace>, states: Vec<(Vec<Rat>, Rat)>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidEnsemble("no states".into()));
        }
        if states.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidEnsemble("negative probability".into()));
        }
        let total = rat_sum(states.iter().map(|(_, p)| p));
        if !total.is_one() {
            return Err(Error::InvalidEnsemble(format!(
                "probabilities sum to {total}"
            )));
        }
        for (point, _) in &states {
            if !space.contains(point)? {
                return Err(Error::InvalidEnsemble(
                    "state outside the polytope".into(),
                ));
            }
        }
        Ok(Ensemble { space, states })
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn states(&self) -> &[(Vec<Rat>, Rat)] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Maximizes the discrimination success probability
/// `sum_x p_x a_x(s_x)` over all measurements indexed by the ensemble.
///
/// The optimizer is a vertex of the measurement polytope, hence an extremal
/// and therefore intersubjective measurement.
pub fn discriminate(ensemble: &Ensemble) -> Result<(Measurement, Rat)> {
    let n = ensemble.len();
    if n > MAX_ENSEMBLE {
        return Err(Error::GuardExceeded {
            what: "ensemble size",
            got: n,
            limit: MAX_ENSEMBLE,
        });
    }
    let space = ensemble.space();
    let k = space.linear_dim();
    let nv = space.num_vertices();
    let basis = space.affine_basis();
    let nvars = n * k;

    let mut objective = vec![zero(); nvars];
    for (x, (point, prob)) in ensemble.states().iter().enumerate() {
        let coords = space.affine_coords(point)?;
        for t in 0..k {
            objective[x * k + t] = prob * &coords[t];
        }
    }
    let mut base = LinearProgram::new(Sense::Maximize, objective);
    for j in 0..nvars {
        base.bound_lower(j, zero());
        base.bound_upper(j, one());
    }
    for t in 0..k {
        let mut row = vec![zero(); nvars];
        for x in 0..n {
            row[x * k + t] = one();
        }
        base.eq(row, one());
    }
    let mut lazy: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for x in 0..n {
        for v in 0..nv {
            if basis.contains(&v) {
                continue;
            }
            let mut row = vec![zero(); nvars];
            for t in 0..k {
                row[x * k + t] = space.expansion()[v][t].clone();
            }
            lazy.push((row, zero()));
        }
    }
    let (value, point) = lp::solve_lazy(&base, &lazy)?
        .into_optimal("discrimination (the uniform coin toss is feasible)")?;

    let effects: Vec<Effect> = (0..n)
        .map(|x| {
            let vals: Vec<Rat> = (0..k).map(|t| point[x * k + t].clone()).collect();
            Effect::from_basis_values(space.clone(), &vals)
        })
        .collect::<Result<_>>()?;
    let labels: Vec<Label> = (1..=n).map(|i| i.to_string()).collect();
    Ok((Measurement::new(space.clone(), labels, effects)?, value))
}

/// Result of the distinguishing-states search.
#[derive(Debug, Clone)]
pub enum Distinguishing {
    /// One state per outcome with `a_x(s_x) = 1`.
    Found(Vec<Vec<Rat>>),
    /// No state reaches value 1 for this outcome label.
    NotFound { outcome: Label },
}

/// For each outcome, finds a state on which that effect takes value 1, as a
/// convex combination of vertices (deterministic basic solution). Legitimate
/// failures report the first outcome without such a state.
pub fn perfectly_distinguishing_states(a: &Measurement) -> Result<Distinguishing> {
    let space = a.space();
    let nv = space.num_vertices();
    let mut found = Vec::with_capacity(a.num_outcomes());
    for (label, effect) in a.labels().iter().zip(a.effects()) {
        // Convex weights over vertices with effect value exactly 1.
        let mut prog = LinearProgram::new(Sense::Minimize, vec![zero(); nv]);
        for j in 0..nv {
            prog.bound_lower(j, zero());
        }
        prog.eq(vec![one(); nv], one());
        let row: Vec<Rat> = effect.values().to_vec();
        prog.eq(row, one());
        match lp::solve(&prog)? {
            lp::LpSolution::Optimal { point, .. } => {
                let dim = space.dim();
                let mut state = vec![zero(); dim];
                for (w, vertex) in point.iter().zip(space.vertices()) {
                    if w.is_zero() {
                        continue;
                    }
                    for (acc, c) in state.iter_mut().zip(vertex) {
                        *acc += w * c;
                    }
                }
                found.push(state);
            }
            _ => {
                return Ok(Distinguishing::NotFound {
                    outcome: label.clone(),
                })
            }
        }
    }
    Ok(Distinguishing::Found(found))
}

/// Do the given measurements separate the state space? Affine functionals
/// separate a polytope exactly when they separate its vertices, so the check
/// stacks every effect's value row (plus the all-ones row) and requires all
/// vertex columns to be distinct.
pub fn is_tomographically_complete(
    space: &Arc<StateSpace>,
    measurements: &[Measurement],
) -> Result<bool> {
    for m in measurements {
        if m.space() != space {
            return Err(Error::SpaceMismatch);
        }
    }
    let nv = space.num_vertices();
    let mut rows: Vec<Vec<Rat>> = vec![vec![one(); nv]];
    for m in measurements {
        for e in m.effects() {
            rows.push(e.values().to_vec());
        }
    }
    for v in 0..nv {
        for w in (v + 1)..nv {
            if rows.iter().all(|r| r[v] == r[w]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All sharp two-outcome measurements built from extreme effects:
/// `(a, 1_S - a)` for every vertex `a` of the effect polytope, filtered to
/// sharpness degree 1 and deduplicated as unordered pairs.
pub fn sharp_two_outcome_set(space: &Arc<StateSpace>) -> Result<Vec<Measurement>> {
    let mut seen: Vec<Vec<Rat>> = Vec::new(); // canonical pair keys
    let mut out = Vec::new();
    for a in extreme_effects(space)? {
        let complement = a.complement();
        let key = a.values().min(complement.values()).to_vec();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let m = Measurement::new(
            space.clone(),
            vec!["+".into(), "-".into()],
            vec![a, complement],
        )?;
        if sharpness_degree(&m)?.value == one() {
            out.push(m);
        }
    }
    Ok(out)
}
