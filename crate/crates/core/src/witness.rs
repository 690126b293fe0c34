//! Constructive separations of intersubjectivity from complete
//! intersubjectivity on non-classical systems, and the outcome bound for
//! completely intersubjective measurements.
//!
//! On any non-classical system there is a three-outcome measurement that is
//! intersubjective but not completely intersubjective, built from a pair of
//! unit-norm indecomposable effects, and a sharp measurement with more
//! outcomes than any completely intersubjective one can have. Both
//! constructions are executable here and post-verified by the degree
//! programs.

use crate::cone::{decompose_into_rays, is_classical, nonneg_cone_rays};
use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, Sense};
use crate::metrics::{cis_degree, intersubjectivity_degree, DegreeReport};
use crate::model::{Effect, Measurement, StateSpace};
use crate::rat::{one, rat, zero, Rat};
use num::{One, Signed, Zero};
use std::sync::Arc;

/// Outcome of the three-outcome construction.
#[derive(Debug, Clone)]
pub enum ThreeOutcomeWitness {
    /// The system is classical; no witness exists.
    Classical,
    /// A measurement with degree exactly 1 whose CIS degree is below 1.
    Witness {
        measurement: Measurement,
        degree: DegreeReport,
        cis: DegreeReport,
    },
}

/// Outcome of the many-outcome construction.
#[derive(Debug, Clone)]
pub enum ManyOutcomeWitness {
    /// The system is classical; no witness exists.
    Classical,
    /// A sharp measurement with more outcomes than any completely
    /// intersubjective one can have; its failure to be CIS follows from the
    /// outcome bound rather than a degree search.
    Witness {
        measurement: Measurement,
        degree: DegreeReport,
    },
}

/// Upper bound on the outcome count of a completely intersubjective
/// measurement: the linear dimension of the system (affine-hull dimension
/// plus one).
pub fn cis_outcome_bound(space: &Arc<StateSpace>) -> usize {
    space.linear_dim()
}

/// Searches unordered pairs of unit-norm indecomposable effects for a
/// three-outcome measurement of the form `(l·a, m·b, 1 - l·a - m·b)` that is
/// intersubjective but not completely intersubjective.
///
/// For each pair, `l + m` is maximized subject to `l·a + m·b <= 1`; among
/// the maximizers the symmetric one (max of `min(l, m)`) is taken, falling
/// back to `l = m = 1/2` if a coefficient degenerates to zero. Pairs are
/// tried in the deterministic ray order; the first full witness is returned.
/// Classical systems report `Classical`; a non-classical system without a
/// witness would contradict the classification theorem and raises an error.
pub fn three_outcome_witness(space: &Arc<StateSpace>) -> Result<ThreeOutcomeWitness> {
    let basis = nonneg_cone_rays(space)?;
    let rays = basis.rays();
    for i in 0..rays.len() {
        for j in (i + 1)..rays.len() {
            let (l, m) = budget_pair(space, &rays[i], &rays[j])?;
            let (l, m) = if l.is_zero() || m.is_zero() {
                (rat(1, 2), rat(1, 2))
            } else {
                (l, m)
            };
            let first = Effect::combine(space, &[(l.clone(), &rays[i])])?;
            let second = Effect::combine(space, &[(m.clone(), &rays[j])])?;
            let rest = Effect::combine(
                space,
                &[
                    (one(), &Effect::unit(space.clone())),
                    (-one(), &first),
                    (-one(), &second),
                ],
            )?;
            let candidate = Measurement::new(
                space.clone(),
                vec!["1".into(), "2".into(), "3".into()],
                vec![first, second, rest],
            )?;
            let degree = intersubjectivity_degree(&candidate)?;
            if degree.value != one() {
                continue;
            }
            let cis = cis_degree(&candidate)?;
            if cis.value < one() {
                return Ok(ThreeOutcomeWitness::Witness {
                    measurement: candidate,
                    degree,
                    cis,
                });
            }
        }
    }
    if is_classical(space)? {
        Ok(ThreeOutcomeWitness::Classical)
    } else {
        Err(Error::TheoremViolation(
            "non-classical system yielded no three-outcome witness".into(),
        ))
    }
}

/// Maximizes `l + m` subject to `l·a + m·b <= 1` pointwise, then maximizes
/// `min(l, m)` among those optima.
fn budget_pair(space: &Arc<StateSpace>, a: &Effect, b: &Effect) -> Result<(Rat, Rat)> {
    let nv = space.num_vertices();
    let mut first = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
    first.bound_lower(0, zero()).bound_lower(1, zero());
    for v in 0..nv {
        first.le(
            vec![a.value_at_vertex(v).clone(), b.value_at_vertex(v).clone()],
            one(),
        );
    }
    let (budget, _) = lp::solve(&first)?.into_optimal("pair budget")?;

    // Secondary objective: t <= l, t <= m, l + m = budget, maximize t.
    let mut second = LinearProgram::new(Sense::Maximize, vec![zero(), zero(), one()]);
    second
        .bound_lower(0, zero())
        .bound_lower(1, zero())
        .bound_lower(2, zero());
    for v in 0..nv {
        second.le(
            vec![
                a.value_at_vertex(v).clone(),
                b.value_at_vertex(v).clone(),
                zero(),
            ],
            one(),
        );
    }
    second.eq(vec![one(), one(), zero()], budget);
    second.ge(vec![one(), zero(), -one()], zero());
    second.ge(vec![zero(), one(), -one()], zero());
    let (_, point) = lp::solve(&second)?.into_optimal("symmetric pair budget")?;
    Ok((point[0].clone(), point[1].clone()))
}

/// Builds a sharp measurement with at least `linear_dim + 1` outcomes on a
/// non-classical system: scaled copies of `n+1` distinct unit-norm rays plus
/// a ray decomposition of the remainder, merging proportional pieces.
/// Returns `Classical` when fewer than `n+1` rays exist.
pub fn many_outcome_witness(space: &Arc<StateSpace>) -> Result<ManyOutcomeWitness> {
    let n = cis_outcome_bound(space);
    let basis = nonneg_cone_rays(space)?;
    if basis.len() < n + 1 {
        if is_classical(space)? {
            return Ok(ManyOutcomeWitness::Classical);
        }
        return Err(Error::TheoremViolation(format!(
            "non-classical system with only {} rays for linear dimension {n}",
            basis.len()
        )));
    }
    let chosen = &basis.rays()[..n + 1];

    // Largest epsilon with epsilon * sum(chosen) <= 1 pointwise.
    let mut total = vec![zero(); space.num_vertices()];
    for ray in chosen {
        for (acc, v) in total.iter_mut().zip(ray.values()) {
            *acc += v;
        }
    }
    let peak = total.iter().cloned().max().expect("vertices");
    if !peak.is_positive() {
        return Err(Error::TheoremViolation("rays sum to zero".into()));
    }
    let epsilon = Rat::one() / peak;

    // Residual 1 - epsilon * sum, decomposed into rays.
    let mut coefficients: Vec<Rat> = vec![zero(); basis.len()];
    for idx in 0..n + 1 {
        coefficients[idx] = epsilon.clone();
    }
    let unit = Effect::unit(space.clone());
    let mut residual_terms: Vec<(Rat, &Effect)> = vec![(one(), &unit)];
    for ray in chosen {
        residual_terms.push((-epsilon.clone(), ray));
    }
    let residual = Effect::combine(space, &residual_terms)?;
    for (coeff, ray) in decompose_into_rays(&residual, &basis)? {
        let idx = basis
            .rays()
            .iter()
            .position(|r| r == &ray)
            .expect("ray from the basis");
        coefficients[idx] += coeff;
    }

    let mut labels = Vec::new();
    let mut effects = Vec::new();
    for (idx, coeff) in coefficients.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        labels.push((labels.len() + 1).to_string());
        effects.push(Effect::combine(space, &[(coeff.clone(), &basis.rays()[idx])])?);
    }
    let witness = Measurement::new(space.clone(), labels, effects)?;
    if witness.num_outcomes() < n + 1 {
        return Err(Error::TheoremViolation(format!(
            "construction produced {} outcomes, needed at least {}",
            witness.num_outcomes(),
            n + 1
        )));
    }
    let degree = intersubjectivity_degree(&witness)?;
    if degree.value != one() {
        return Err(Error::TheoremViolation(
            "constructed many-outcome measurement is not intersubjective".into(),
        ));
    }
    Ok(ManyOutcomeWitness::Witness {
        measurement: witness,
        degree,
    })
}
