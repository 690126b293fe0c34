//! Degrees of intersubjectivity, sharpness and complete intersubjectivity,
//! plus measurement extremality and the coin-tossing / classical closed
//! forms.
//!
//! The intersubjectivity degree of a measurement `A` is the largest `alpha`
//! such that every joint measurement of `A` with itself produces matching
//! outcomes with probability at least `alpha` in every state:
//!
//! ```text
//! degree(A) = min over B in JM(A,A), min over states s, of sum_x b_{x,x}(s)
//! ```
//!
//! The inner minimum over a polytope of states is attained at a vertex, so
//! the whole quantity decomposes into one exact LP per vertex. Joint tables
//! are parametrized by their upper-left `(n-1) x (n-1)` block of effects
//! (the marginal constraints determine the last row and column), each effect
//! by its values at the affine-basis vertices; every quantity stays exact.
//!
//! Sharpness is the complementary quantity about common lower bounds of
//! pairs of outcome effects, again one small LP per (pair, vertex).

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, Sense};
use crate::model::{index_partitions, Effect, Label, Measurement, OutcomePartition};
use crate::rat::{int, one, rat_sum, zero, Rat};
use num::{Signed, Zero};

/// Largest outcome count accepted by the degree computations.
pub const MAX_DEGREE_OUTCOMES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    Intersubjectivity,
    Sharpness,
    CompleteIntersubjectivity,
}

/// An exact degree in [0,1] together with optimality witnesses.
///
/// Whatever witnesses are present re-verify by direct substitution: they
/// reproduce `value` exactly. [`DegreeReport::reverify`] performs that check.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub kind: DegreeKind,
    pub value: Rat,
    /// Vertex index attaining the state minimum.
    pub witness_state: Option<usize>,
    /// Joint measurement over the product outcome grid attaining the value.
    pub witness_joint: Option<Measurement>,
    /// Common lower bound attaining the sharpness maximum, with its pair.
    pub witness_effect: Option<(Effect, (Label, Label))>,
    /// Coarse-graining attaining the complete-intersubjectivity minimum.
    pub witness_partition: Option<OutcomePartition>,
}

impl DegreeReport {
    /// Re-verifies every present witness against the measurement the report
    /// was computed for. All checks are plain exact arithmetic.
    pub fn reverify(&self, a: &Measurement) -> Result<()> {
        if self.value.is_negative() || self.value > one() {
            return Err(Error::WitnessMismatch(format!(
                "value {} outside [0,1]",
                self.value
            )));
        }
        match self.kind {
            DegreeKind::Intersubjectivity => {
                let joint = self
                    .witness_joint
                    .as_ref()
                    .ok_or_else(|| Error::WitnessMismatch("missing joint witness".into()))?;
                verify_joint_witness(joint, a, a, &self.value, self.witness_state)
            }
            DegreeKind::Sharpness => {
                if a.num_outcomes() == 1 {
                    return if self.value == one() {
                        Ok(())
                    } else {
                        Err(Error::WitnessMismatch(
                            "single-outcome sharpness must be 1".into(),
                        ))
                    };
                }
                let (c, (lx, ly)) = self
                    .witness_effect
                    .as_ref()
                    .ok_or_else(|| Error::WitnessMismatch("missing effect witness".into()))?;
                let ax = a
                    .effect_for(lx)
                    .ok_or_else(|| Error::WitnessMismatch(format!("no outcome `{lx}`")))?;
                let ay = a
                    .effect_for(ly)
                    .ok_or_else(|| Error::WitnessMismatch(format!("no outcome `{ly}`")))?;
                if lx == ly {
                    return Err(Error::WitnessMismatch("witness pair must differ".into()));
                }
                if !c.leq(ax)? || !c.leq(ay)? {
                    return Err(Error::WitnessMismatch(
                        "witness is not a common lower bound".into(),
                    ));
                }
                if one() - c.norm() != self.value {
                    return Err(Error::WitnessMismatch(format!(
                        "witness norm gives {}, reported {}",
                        one() - c.norm(),
                        self.value
                    )));
                }
                Ok(())
            }
            DegreeKind::CompleteIntersubjectivity => {
                let partition = self
                    .witness_partition
                    .as_ref()
                    .ok_or_else(|| Error::WitnessMismatch("missing partition witness".into()))?;
                let coarse = a.coarse_grain(partition)?;
                let joint = self
                    .witness_joint
                    .as_ref()
                    .ok_or_else(|| Error::WitnessMismatch("missing joint witness".into()))?;
                verify_joint_witness(joint, &coarse, &coarse, &self.value, self.witness_state)
            }
        }
    }
}

/// Checks that `joint` is a joint measurement of `(a, b)` and that the
/// minimum over vertices of its diagonal sum equals `value`, attained at the
/// witness vertex when given.
fn verify_joint_witness(
    joint: &Measurement,
    a: &Measurement,
    b: &Measurement,
    value: &Rat,
    witness_state: Option<usize>,
) -> Result<()> {
    if !joint.is_joint(a, b)? {
        return Err(Error::WitnessMismatch(
            "witness joint has wrong marginals".into(),
        ));
    }
    let n = a.num_outcomes();
    let nv = a.space().num_vertices();
    let diag_sum = |v: usize| -> Rat {
        (0..n)
            .map(|x| joint.effects()[x * n + x].value_at_vertex(v).clone())
            .sum()
    };
    let min = (0..nv).map(diag_sum).min().expect("vertices");
    if &min != value {
        return Err(Error::WitnessMismatch(format!(
            "joint witness diagonal minimum {min} differs from reported {value}"
        )));
    }
    if let Some(v) = witness_state {
        if diag_sum(v) != *value {
            return Err(Error::WitnessMismatch(format!(
                "witness state {v} does not attain {value}"
            )));
        }
    }
    Ok(())
}

/// Symbolic description of the entries of a joint table of `A` with itself:
/// each of the n^2 entries is an affine expression in the free upper-left
/// block, with a constant part given by multipliers on the outcome effects.
struct JointEntries {
    n: usize,
    /// Per entry, multipliers on `(a_0 .. a_{n-1})`.
    const_part: Vec<Vec<Rat>>,
    /// Per entry, multipliers on the `(n-1)^2` free-block effects.
    free_part: Vec<Vec<Rat>>,
}

impl JointEntries {
    fn build(n: usize) -> JointEntries {
        let f = n - 1; // free block side
        let nf = f * f;
        let mut const_part = Vec::with_capacity(n * n);
        let mut free_part = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut cs = vec![zero(); n];
                let mut fs = vec![zero(); nf];
                match (x < f, y < f) {
                    (true, true) => {
                        fs[x * f + y] = one();
                    }
                    (true, false) => {
                        // a_x - sum_{y' < f} e_{x,y'}
                        cs[x] = one();
                        for yp in 0..f {
                            fs[x * f + yp] = -one();
                        }
                    }
                    (false, true) => {
                        // a_y - sum_{x' < f} e_{x',y}
                        cs[y] = one();
                        for xp in 0..f {
                            fs[xp * f + y] = -one();
                        }
                    }
                    (false, false) => {
                        // a_{n-1} - sum_{y < f} a_y + sum of the whole block
                        cs[n - 1] = one();
                        for yp in 0..f {
                            cs[yp] -= one();
                        }
                        for v in fs.iter_mut() {
                            *v = one();
                        }
                    }
                }
                const_part.push(cs);
                free_part.push(fs);
            }
        }
        JointEntries {
            n,
            const_part,
            free_part,
        }
    }

    /// Value of the constant part of entry `e` at vertex `v`.
    fn const_at(&self, e: usize, a: &Measurement, v: usize) -> Rat {
        self.const_part[e]
            .iter()
            .zip(a.effects())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, eff)| c * eff.value_at_vertex(v))
            .sum()
    }
}

/// The intersubjectivity degree: largest `alpha` such that `A` is
/// `alpha`-intersubjective, with a joint-measurement witness attaining it at
/// a witness vertex.
pub fn intersubjectivity_degree(a: &Measurement) -> Result<DegreeReport> {
    let n = a.num_outcomes();
    if n > MAX_DEGREE_OUTCOMES {
        return Err(Error::GuardExceeded {
            what: "degree outcome count",
            got: n,
            limit: MAX_DEGREE_OUTCOMES,
        });
    }
    let space = a.space();
    let nv = space.num_vertices();

    if n == 1 {
        // JM(A,A) is the singleton whose only entry is the unit effect.
        let labels = Measurement::product_labels(a.labels(), a.labels());
        let joint = Measurement::new(space.clone(), labels, vec![Effect::unit(space.clone())])?;
        let report = DegreeReport {
            kind: DegreeKind::Intersubjectivity,
            value: one(),
            witness_state: Some(0),
            witness_joint: Some(joint),
            witness_effect: None,
            witness_partition: None,
        };
        report.reverify(a)?;
        return Ok(report);
    }

    let k = space.linear_dim();
    let f = n - 1;
    let nvars = f * f * k;
    let entries = JointEntries::build(n);
    let basis = space.affine_basis();

    // Nonnegativity rows for every entry at every vertex, except the free
    // entries at basis vertices (plain variable bounds).
    let mut lazy: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for e in 0..n * n {
        let is_free_entry = entries.free_part[e].iter().filter(|c| !c.is_zero()).count() == 1
            && entries.const_part[e].iter().all(|c| c.is_zero());
        for v in 0..nv {
            if is_free_entry && basis.contains(&v) {
                continue;
            }
            let mut row = vec![zero(); nvars];
            for (blk, coef) in entries.free_part[e].iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for t in 0..k {
                    let ex = &space.expansion()[v][t];
                    if !ex.is_zero() {
                        row[blk * k + t] = coef * ex;
                    }
                }
            }
            let rhs = -entries.const_at(e, a, v);
            lazy.push((row, rhs));
        }
    }

    let mut base = LinearProgram::new(Sense::Minimize, vec![zero(); nvars]);
    for j in 0..nvars {
        base.bound_lower(j, zero());
        base.bound_upper(j, one());
    }

    let mut best: Option<(Rat, usize, Vec<Rat>)> = None;
    for v0 in 0..nv {
        // Objective: sum of the diagonal entries at v0.
        let mut objective = vec![zero(); nvars];
        let mut constant = zero();
        for x in 0..n {
            let e = x * n + x;
            constant += entries.const_at(e, a, v0);
            for (blk, coef) in entries.free_part[e].iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for t in 0..k {
                    let ex = &space.expansion()[v0][t];
                    if !ex.is_zero() {
                        objective[blk * k + t] += coef * ex;
                    }
                }
            }
        }
        let mut prog = base.clone();
        prog.objective = objective;
        let (raw, point) = lp::solve_lazy(&prog, &lazy)?
            .into_optimal("intersubjectivity degree (JM(A,A) is never empty)")?;
        let val = raw + constant;
        let better = match &best {
            None => true,
            Some((b, _, _)) => val < *b,
        };
        if better {
            let stop = val.is_zero();
            best = Some((val, v0, point));
            if stop {
                break; // the degree cannot go below zero
            }
        }
    }
    let (value, v0, point) = best.expect("at least one vertex");

    // Reassemble the witness joint table from the free block.
    let joint = joint_from_free_block(a, &entries, &point)?;
    let report = DegreeReport {
        kind: DegreeKind::Intersubjectivity,
        value,
        witness_state: Some(v0),
        witness_joint: Some(joint),
        witness_effect: None,
        witness_partition: None,
    };
    report.reverify(a)?;
    Ok(report)
}

/// Builds the full joint measurement from free-block basis values.
fn joint_from_free_block(
    a: &Measurement,
    entries: &JointEntries,
    point: &[Rat],
) -> Result<Measurement> {
    let n = entries.n;
    let f = n - 1;
    let space = a.space();
    let k = space.linear_dim();
    let mut free_effects: Vec<Effect> = Vec::with_capacity(f * f);
    for blk in 0..f * f {
        let vals: Vec<Rat> = (0..k).map(|t| point[blk * k + t].clone()).collect();
        free_effects.push(Effect::from_basis_values(space.clone(), &vals)?);
    }
    let mut effects = Vec::with_capacity(n * n);
    for e in 0..n * n {
        let mut terms: Vec<(Rat, &Effect)> = Vec::new();
        for (i, c) in entries.const_part[e].iter().enumerate() {
            if !c.is_zero() {
                terms.push((c.clone(), &a.effects()[i]));
            }
        }
        for (blk, c) in entries.free_part[e].iter().enumerate() {
            if !c.is_zero() {
                terms.push((c.clone(), &free_effects[blk]));
            }
        }
        effects.push(Effect::combine(space, &terms)?);
    }
    let labels = Measurement::product_labels(a.labels(), a.labels());
    Measurement::new(space.clone(), labels, effects)
}

/// The sharpness degree: `1 -` the largest norm of a common lower bound of
/// two distinct outcome effects. Single-outcome measurements are 1-sharp by
/// vacuity.
pub fn sharpness_degree(a: &Measurement) -> Result<DegreeReport> {
    let n = a.num_outcomes();
    if n == 1 {
        return Ok(DegreeReport {
            kind: DegreeKind::Sharpness,
            value: one(),
            witness_state: None,
            witness_joint: None,
            witness_effect: None,
            witness_partition: None,
        });
    }
    let space = a.space();
    let nv = space.num_vertices();
    let k = space.linear_dim();
    let basis = space.affine_basis();

    // The zero effect is a common lower bound of every pair, so the maximum
    // starts at 0 witnessed by the first pair.
    let mut best_norm = zero();
    let mut witness = (
        Effect::zero(space.clone()),
        (a.labels()[0].clone(), a.labels()[1].clone()),
    );

    for i in 0..n {
        for j in (i + 1)..n {
            let ai = &a.effects()[i];
            let aj = &a.effects()[j];

            // Rows: c(v) >= 0, c(v) <= a_i(v), c(v) <= a_j(v) at every
            // vertex; at basis vertices these are variable bounds.
            let mut base = LinearProgram::new(Sense::Maximize, vec![zero(); k]);
            for (t, &b) in basis.iter().enumerate() {
                let ub = ai.value_at_vertex(b).min(aj.value_at_vertex(b)).clone();
                base.bound_lower(t, zero());
                base.bound_upper(t, ub);
            }
            let mut lazy: Vec<(Vec<Rat>, Rat)> = Vec::new();
            for v in 0..nv {
                if basis.contains(&v) {
                    continue;
                }
                let row = space.expansion()[v].clone();
                lazy.push((row.clone(), zero())); // c(v) >= 0
                let neg: Vec<Rat> = row.iter().map(|x| -x).collect();
                lazy.push((neg.clone(), -ai.value_at_vertex(v))); // c(v) <= a_i(v)
                lazy.push((neg, -aj.value_at_vertex(v))); // c(v) <= a_j(v)
            }

            for v0 in 0..nv {
                // The LP optimum cannot exceed the pointwise envelope.
                let cap = ai.value_at_vertex(v0).min(aj.value_at_vertex(v0));
                if *cap <= best_norm {
                    continue;
                }
                let mut prog = base.clone();
                prog.objective = space.expansion()[v0].clone();
                let (val, point) = lp::solve_lazy(&prog, &lazy)?
                    .into_optimal("sharpness (the zero effect is always feasible)")?;
                if val > best_norm {
                    best_norm = val;
                    let c = Effect::from_basis_values(space.clone(), &point)?;
                    witness = (c, (a.labels()[i].clone(), a.labels()[j].clone()));
                }
            }
        }
    }

    let report = DegreeReport {
        kind: DegreeKind::Sharpness,
        value: one() - &best_norm,
        witness_state: None,
        witness_joint: None,
        witness_effect: Some(witness),
        witness_partition: None,
    };
    report.reverify(a)?;
    Ok(report)
}

/// An effect is sharp when the two-outcome measurement `(a, 1_S - a)` is
/// 1-sharp.
pub fn is_sharp_effect(a: &Effect) -> Result<bool> {
    let m = Measurement::new(
        a.space().clone(),
        vec!["a".into(), "co".into()],
        vec![a.clone(), a.complement()],
    )?;
    Ok(sharpness_degree(&m)?.value == one())
}

/// Every effect of the measurement is sharp.
pub fn is_elementwise_sharp(a: &Measurement) -> Result<bool> {
    for e in a.effects() {
        if !is_sharp_effect(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact intersubjectivity degree of a two-outcome measurement through the
/// sharpness program: for `n = 2` the two quantifications coincide, so
/// `degree = 2 * sharpness - 1` (always nonnegative, because a common lower
/// bound of `(b, 1_S - b)` never has norm above 1/2). Returns the degree and
/// a joint witness built from the optimal common lower bound.
fn two_outcome_degree(b: &Measurement) -> Result<(Rat, Measurement, usize)> {
    debug_assert_eq!(b.num_outcomes(), 2);
    let sharp = sharpness_degree(b)?;
    let (c, _) = sharp.witness_effect.as_ref().expect("pair witness");
    let value = int(2) * &sharp.value - one();
    debug_assert!(!value.is_negative());
    let space = b.space();
    let b0 = &b.effects()[0];
    let b1 = &b.effects()[1];
    let e00 = Effect::combine(space, &[(one(), b0), (-one(), c)])?;
    let e11 = Effect::combine(space, &[(one(), b1), (-one(), c)])?;
    let labels = Measurement::product_labels(b.labels(), b.labels());
    let joint = Measurement::new(
        space.clone(),
        labels,
        vec![e00, c.clone(), c.clone(), e11],
    )?;
    let norm = c.norm();
    let state = c
        .values()
        .iter()
        .position(|v| *v == norm)
        .expect("norm attained");
    Ok((value, joint, state))
}

/// The complete-intersubjectivity degree: the minimum intersubjectivity
/// degree over all coarse-grainings, with the minimizing partition (first in
/// restricted-growth enumeration order) as witness.
///
/// Three exact shortcuts keep the search tractable without changing the
/// result: one-block coarse-grainings have degree 1; two-outcome degrees come
/// from the sharpness program (`degree = 2*sharpness - 1`, exact for n = 2);
/// and a partition is skipped when the sharpness-based lower bound
/// `1 - (k^2 - k) * (1 - sharpness)` already meets the current minimum. The
/// search stops early only at an exact zero, which no degree can undercut.
pub fn cis_degree(a: &Measurement) -> Result<DegreeReport> {
    let n = a.num_outcomes();
    if n > MAX_DEGREE_OUTCOMES {
        return Err(Error::GuardExceeded {
            what: "degree outcome count",
            got: n,
            limit: MAX_DEGREE_OUTCOMES,
        });
    }
    let labels = a.labels().to_vec();
    let mut best: Option<(Rat, OutcomePartition, Measurement, usize)> = None;

    'outer: for blocks in index_partitions(n)? {
        let partition = OutcomePartition::from_index_blocks(&labels, &blocks);
        let coarse = a.coarse_grain(&partition)?;
        let kk = coarse.num_outcomes();

        let candidate: Option<(Rat, Measurement, usize)> = if kk == 1 {
            let joint = Measurement::new(
                coarse.space().clone(),
                Measurement::product_labels(coarse.labels(), coarse.labels()),
                vec![Effect::unit(coarse.space().clone())],
            )?;
            Some((one(), joint, 0))
        } else if kk == 2 {
            let (val, joint, state) = two_outcome_degree(&coarse)?;
            Some((val, joint, state))
        } else {
            // Prune with the quantitative sharpness bound when possible.
            if let Some((b, _, _, _)) = &best {
                let sharp = sharpness_degree(&coarse)?.value;
                let penalty = int((kk * kk - kk) as i64) * (one() - sharp);
                let lower = one() - penalty;
                if &lower >= b {
                    continue;
                }
            }
            let rep = intersubjectivity_degree(&coarse)?;
            Some((
                rep.value,
                rep.witness_joint.expect("joint witness"),
                rep.witness_state.expect("state witness"),
            ))
        };

        if let Some((val, joint, state)) = candidate {
            let better = match &best {
                None => true,
                Some((b, _, _, _)) => val < *b,
            };
            if better {
                let stop = val.is_zero();
                best = Some((val, partition, joint, state));
                if stop {
                    break 'outer;
                }
            }
        }
    }

    let (value, partition, joint, state) = best.expect("at least the total partition");
    let report = DegreeReport {
        kind: DegreeKind::CompleteIntersubjectivity,
        value,
        witness_state: Some(state),
        witness_joint: Some(joint),
        witness_effect: None,
        witness_partition: Some(partition),
    };
    report.reverify(a)?;
    Ok(report)
}

/// Is the measurement an extreme point of the set of measurements with its
/// outcome set? Decided through the perturbation polytope
/// `{ D : sum_x d_x = 0, a_x?d_x >= 0 }`: the measurement is extremal exactly
/// when the polytope is `{0}`, certified by maximizing `d_x(v)` for every
/// outcome and vertex (the polytope is symmetric under `D -> -D`).
pub fn is_extremal(a: &Measurement) -> Result<bool> {
    let n = a.num_outcomes();
    let space = a.space();
    let nv = space.num_vertices();
    let k = space.linear_dim();
    let basis = space.affine_basis();
    let nvars = n * k;

    let mut base = LinearProgram::new(Sense::Maximize, vec![zero(); nvars]);
    for x in 0..n {
        for (t, &b) in basis.iter().enumerate() {
            let bound = a.effects()[x].value_at_vertex(b).clone();
            base.bound_lower(x * k + t, -bound.clone());
            base.bound_upper(x * k + t, bound);
        }
    }
    // sum_x d_x = 0 on the affine basis.
    for t in 0..k {
        let mut row = vec![zero(); nvars];
        for x in 0..n {
            row[x * k + t] = one();
        }
        base.eq(row, zero());
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
            let bound = a.effects()[x].value_at_vertex(v).clone();
            // a_x(v) + d_x(v) >= 0  and  a_x(v) - d_x(v) >= 0
            lazy.push((row.clone(), -bound.clone()));
            let neg: Vec<Rat> = row.iter().map(|c| -c).collect();
            lazy.push((neg, -bound));
        }
    }

    for x in 0..n {
        for v0 in 0..nv {
            let mut prog = base.clone();
            let mut objective = vec![zero(); nvars];
            for t in 0..k {
                objective[x * k + t] = space.expansion()[v0][t].clone();
            }
            prog.objective = objective;
            let (val, _) = lp::solve_lazy(&prog, &lazy)?
                .into_optimal("extremality (D = 0 is always feasible)")?;
            if val.is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Degree of a coin-tossing measurement `(w_x 1_S)`: `max(2 max_x w_x - 1, 0)`,
/// which is both its intersubjectivity and complete-intersubjectivity degree
/// on any system.
pub fn coin_toss_degree(weights: &[Rat]) -> Result<Rat> {
    if weights.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidDistribution("negative weight".into()));
    }
    if rat_sum(weights.iter()) != one() {
        return Err(Error::InvalidDistribution(format!(
            "weights sum to {}",
            rat_sum(weights.iter())
        )));
    }
    let max = weights.iter().cloned().max().expect("nonempty");
    Ok((int(2) * max - one()).max(zero()))
}

/// Degree of a measurement on a classical (simplex) system:
/// `min over vertices s of max(2 max_x a_x(s) - 1, 0)`; again equal to both
/// degrees.
pub fn classical_degree(a: &Measurement) -> Result<Rat> {
    if !crate::cone::is_classical(a.space())? {
        return Err(Error::NotClassical(format!(
            "space `{}`",
            a.space().name()
        )));
    }
    let nv = a.space().num_vertices();
    let per_vertex = (0..nv).map(|v| {
        let max = a
            .effects()
            .iter()
            .map(|e| e.value_at_vertex(v).clone())
            .max()
            .expect("outcomes");
        (int(2) * max - one()).max(zero())
    });
    Ok(per_vertex.min().expect("vertices"))
}

/// Coin-tossing measurement `(w_x 1_S)` on a space.
pub fn coin_toss_measurement(
    space: &std::sync::Arc<crate::model::StateSpace>,
    weights: &[Rat],
) -> Result<Measurement> {
    if weights.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    let unit = Effect::unit(space.clone());
    let effects: Vec<Effect> = weights
        .iter()
        .map(|w| Effect::combine(space, &[(w.clone(), &unit)]))
        .collect::<Result<_>>()?;
    let labels: Vec<Label> = (1..=weights.len()).map(|i| i.to_string()).collect();
    Measurement::new(space.clone(), labels, effects)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StateSpace;
    use crate::rat::rat;
    use std::sync::Arc;

    fn square() -> Arc<StateSpace> {
        StateSpace::new(
            "square",
            2,
            vec![
                vec![int(1), int(1)],
                vec![int(1), int(-1)],
                vec![int(-1), int(-1)],
                vec![int(-1), int(1)],
            ],
        )
        .unwrap()
    }

    fn b_measurement(s: &Arc<StateSpace>) -> Measurement {
        let b_plus = Effect::new(s.clone(), vec![rat(1, 2), zero()], rat(1, 2)).unwrap();
        Measurement::new(
            s.clone(),
            vec!["+".into(), "-".into()],
            vec![b_plus.clone(), b_plus.complement()],
        )
        .unwrap()
    }

    fn c_measurement(s: &Arc<StateSpace>) -> Measurement {
        let c_plus = Effect::new(s.clone(), vec![zero(), rat(1, 2)], rat(1, 2)).unwrap();
        Measurement::new(
            s.clone(),
            vec!["+".into(), "-".into()],
            vec![c_plus.clone(), c_plus.complement()],
        )
        .unwrap()
    }

    /// The square-model mixture: completely intersubjective, not extremal.
    fn mixed_square_measurement(s: &Arc<StateSpace>) -> Measurement {
        b_measurement(s)
            .mix(&c_measurement(s), &rat(1, 2))
            .unwrap()
    }

    #[test]
    fn trivial_measurement_has_degree_one() {
        let s = square();
        let m = Measurement::trivial(s);
        let rep = intersubjectivity_degree(&m).unwrap();
        assert_eq!(rep.value, one());
        rep.reverify(&m).unwrap();
    }

    #[test]
    fn fair_coin_toss_has_degree_zero_and_sharpness_half() {
        let s = square();
        let m = coin_toss_measurement(&s, &[rat(1, 2), rat(1, 2)]).unwrap();
        let deg = intersubjectivity_degree(&m).unwrap();
        assert_eq!(deg.value, zero());
        deg.reverify(&m).unwrap();
        let sharp = sharpness_degree(&m).unwrap();
        assert_eq!(sharp.value, rat(1, 2));
        sharp.reverify(&m).unwrap();
        assert_eq!(coin_toss_degree(&[rat(1, 2), rat(1, 2)]).unwrap(), zero());
    }

    #[test]
    fn coin_toss_closed_form_examples() {
        assert_eq!(coin_toss_degree(&[one()]).unwrap(), one());
        assert_eq!(
            coin_toss_degree(&[rat(3, 4), rat(1, 8), rat(1, 8)]).unwrap(),
            rat(1, 2)
        );
        assert!(coin_toss_degree(&[rat(1, 2), rat(1, 4)]).is_err());
        assert!(coin_toss_degree(&[rat(3, 2), rat(-1, 2)]).is_err());
    }

    #[test]
    fn mixed_square_measurement_is_cis_but_not_extremal() {
        let s = square();
        let a = mixed_square_measurement(&s);
        let deg = intersubjectivity_degree(&a).unwrap();
        assert_eq!(deg.value, one());
        let cis = cis_degree(&a).unwrap();
        assert_eq!(cis.value, one());
        cis.reverify(&a).unwrap();
        assert!(!is_extremal(&a).unwrap());
    }

    #[test]
    fn square_facet_measurement_is_extremal_and_sharp() {
        let s = square();
        let b = b_measurement(&s);
        assert!(is_extremal(&b).unwrap());
        let sharp = sharpness_degree(&b).unwrap();
        assert_eq!(sharp.value, one());
        let deg = intersubjectivity_degree(&b).unwrap();
        assert_eq!(deg.value, one());
    }

    #[test]
    fn square_b_plus_is_sharp_but_half_unit_is_not() {
        let s = square();
        let b_plus = Effect::new(s.clone(), vec![rat(1, 2), zero()], rat(1, 2)).unwrap();
        assert!(is_sharp_effect(&b_plus).unwrap());
        let half_unit =
            Effect::new(s.clone(), vec![zero(), zero()], rat(1, 2)).unwrap();
        assert!(!is_sharp_effect(&half_unit).unwrap());
    }

    #[test]
    fn lemma_coarse_graining_has_sharpness_half() {
        // (b+/2, 1 - b+/2) on the square: the best common lower bound has
        // norm 1/2, so sharpness is 1/2 and the two-outcome degree is 0.
        let s = square();
        let b_plus = Effect::new(s.clone(), vec![rat(1, 2), zero()], rat(1, 2)).unwrap();
        let half_b = Effect::combine(&s, &[(rat(1, 2), &b_plus)]).unwrap();
        let m = Measurement::new(
            s.clone(),
            vec!["1".into(), "2".into()],
            vec![half_b.clone(), half_b.complement()],
        )
        .unwrap();
        let sharp = sharpness_degree(&m).unwrap();
        assert_eq!(sharp.value, rat(1, 2));
        let deg = intersubjectivity_degree(&m).unwrap();
        assert_eq!(deg.value, zero());
        // two-outcome tightness
        assert_eq!(sharp.value, (one() + &deg.value) / int(2));
    }

    #[test]
    fn cis_of_two_outcome_equals_degree() {
        let s = square();
        let b = b_measurement(&s);
        let cis = cis_degree(&b).unwrap();
        let deg = intersubjectivity_degree(&b).unwrap();
        assert_eq!(cis.value, deg.value);
    }

    #[test]
    fn three_outcome_square_witness_loses_cis() {
        // (b+/2, c+/2, rest): intersubjective, but a coarse-graining drops to 0.
        let s = square();
        let b_plus = Effect::new(s.clone(), vec![rat(1, 2), zero()], rat(1, 2)).unwrap();
        let c_plus = Effect::new(s.clone(), vec![zero(), rat(1, 2)], rat(1, 2)).unwrap();
        let half_b = Effect::combine(&s, &[(rat(1, 2), &b_plus)]).unwrap();
        let half_c = Effect::combine(&s, &[(rat(1, 2), &c_plus)]).unwrap();
        let rest = Effect::combine(
            &s,
            &[
                (one(), &Effect::unit(s.clone())),
                (-one(), &half_b),
                (-one(), &half_c),
            ],
        )
        .unwrap();
        let a = Measurement::new(
            s.clone(),
            vec!["1".into(), "2".into(), "3".into()],
            vec![half_b, half_c, rest],
        )
        .unwrap();
        let deg = intersubjectivity_degree(&a).unwrap();
        assert_eq!(deg.value, one());
        let cis = cis_degree(&a).unwrap();
        assert_eq!(cis.value, zero());
        cis.reverify(&a).unwrap();
        let witness = cis.witness_partition.unwrap();
        assert_eq!(witness.num_blocks(), 2);
    }

    #[test]
    fn classical_degree_agrees_with_formula() {
        let verts: Vec<Vec<Rat>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        let s = StateSpace::new("simplex-3", 3, verts).unwrap();
        // indicator measurement: degree 1
        let effects: Vec<Effect> = (0..3)
            .map(|i| {
                let mut lin = vec![zero(); 3];
                lin[i] = one();
                Effect::new(s.clone(), lin, zero()).unwrap()
            })
            .collect();
        let ind = Measurement::new(
            s.clone(),
            vec!["1".into(), "2".into(), "3".into()],
            effects,
        )
        .unwrap();
        assert_eq!(classical_degree(&ind).unwrap(), one());
        let deg = intersubjectivity_degree(&ind).unwrap();
        assert_eq!(deg.value, one());

        // uniform coin toss on the simplex: 0 by both routes
        let toss = coin_toss_measurement(&s, &[rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(classical_degree(&toss).unwrap(), zero());
        assert_eq!(intersubjectivity_degree(&toss).unwrap().value, zero());

        // non-classical space rejected
        let sq = square();
        let m = b_measurement(&sq);
        assert!(matches!(classical_degree(&m), Err(Error::NotClassical(_))));
    }

    #[test]
    fn degree_guard_is_enforced() {
        let s = square();
        let weights: Vec<Rat> = vec![rat(1, 9); 9];
        let m = coin_toss_measurement(&s, &weights).unwrap();
        assert!(matches!(
            intersubjectivity_degree(&m),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn single_outcome_reports() {
        let s = square();
        let m = Measurement::trivial(s);
        assert_eq!(sharpness_degree(&m).unwrap().value, one());
        let cis = cis_degree(&m).unwrap();
        assert_eq!(cis.value, one());
    }
}
