//! Structure of the cone of nonnegative affine functionals on a state space.
//!
//! Everything here works in vertex-value coordinates restricted to the
//! affine-consistency subspace, i.e. in the affine-basis parametrization a
//! functional is its vector of values on the basis vertices. The cone
//! `{ y : value_v(y) >= 0 for every vertex v }` is pointed and
//! full-dimensional there, so its extremal rays are exactly the feasible
//! directions whose active constraint sets have corank one, which is how they
//! are enumerated.

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, Sense};
use crate::model::{solve_exact, Effect, StateSpace};
use crate::rat::{dot, one, zero, Rat};
use num::{Signed, Zero};
use std::sync::Arc;

pub const MAX_CONE_VERTICES: usize = 16;
pub const MAX_CONE_AFFINE_DIM: usize = 6;

/// Unit-norm indecomposable effects spanning the nonnegative cone.
#[derive(Debug, Clone)]
pub struct RayBasis {
    space: Arc<StateSpace>,
    rays: Vec<Effect>,
}

impl RayBasis {
    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn rays(&self) -> &[Effect] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

fn check_guards(space: &StateSpace) -> Result<()> {
    if let Some((s1, s2)) = space.summands() {
        check_guards(s1)?;
        return check_guards(s2);
    }
    if space.num_vertices() > MAX_CONE_VERTICES {
        return Err(Error::GuardExceeded {
            what: "cone vertex count",
            got: space.num_vertices(),
            limit: MAX_CONE_VERTICES,
        });
    }
    if space.affine_dim() > MAX_CONE_AFFINE_DIM {
        return Err(Error::GuardExceeded {
            what: "cone affine-hull dimension",
            got: space.affine_dim(),
            limit: MAX_CONE_AFFINE_DIM,
        });
    }
    Ok(())
}

/// Value of the functional with basis values `y` at vertex `v`.
fn value_at(space: &StateSpace, y: &[Rat], v: usize) -> Rat {
    dot(&space.expansion()[v], y)
}

/// Extremal rays of the cone of nonnegative affine functionals, each scaled
/// to unit norm (max vertex value exactly 1) and sorted by value vector.
///
/// Direct sums factorize: the cone of a sum is the product of the summand
/// cones, so its rays are the embedded rays of the summands.
pub fn nonneg_cone_rays(space: &Arc<StateSpace>) -> Result<RayBasis> {
    check_guards(space)?;
    if let Some((s1, s2)) = space.summands() {
        let (s1, s2) = (s1.clone(), s2.clone());
        let left = nonneg_cone_rays(&s1)?;
        let right = nonneg_cone_rays(&s2)?;
        let mut rays = Vec::with_capacity(left.len() + right.len());
        for r in left.rays() {
            rays.push(crate::model::embed_left(space, r)?);
        }
        for r in right.rays() {
            rays.push(crate::model::embed_right(space, r)?);
        }
        rays.sort_by(|a, b| a.values().cmp(b.values()));
        return Ok(RayBasis {
            space: space.clone(),
            rays,
        });
    }

    let k = space.linear_dim();
    let nv = space.num_vertices();
    let mut generators: Vec<Vec<Rat>> = Vec::new(); // value vectors, unit norm

    if k == 1 {
        // Zero-dimensional hull: the cone is a single ray of constants.
        generators.push(vec![one(); nv]);
    } else {
        // Every extremal ray solves k-1 independent active vertex constraints.
        for subset in subsets(nv, k - 1) {
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&v| space.expansion()[v].clone())
                .collect();
            let Some(dir) = kernel_direction(&rows, k) else {
                continue;
            };
            for cand in [&dir, &negate(&dir)] {
                let values: Vec<Rat> = (0..nv).map(|v| value_at(space, cand, v)).collect();
                if values.iter().all(|x| !x.is_negative()) && values.iter().any(|x| x.is_positive())
                {
                    let norm = values.iter().cloned().max().unwrap();
                    let scaled: Vec<Rat> = values.iter().map(|x| x / &norm).collect();
                    if !generators.contains(&scaled) {
                        generators.push(scaled);
                    }
                    break;
                }
            }
        }
    }

    generators.sort();
    let rays = generators
        .into_iter()
        .map(|vals| Effect::from_values(space.clone(), &vals))
        .collect::<Result<Vec<_>>>()?;
    Ok(RayBasis {
        space: space.clone(),
        rays,
    })
}

/// All `size`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + 1 <= n - (size - i) {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn negate(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x).collect()
}

/// One-dimensional kernel direction of a row set in `R^k`; `None` when the
/// corank is not exactly one.
fn kernel_direction(rows: &[Vec<Rat>], k: usize) -> Option<Vec<Rat>> {
    // Row reduce a copy of the rows.
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let m = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r0 = 0usize;
    for c in 0..k {
        let Some(pr) = (r0..m).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(r0, pr);
        let inv = one() / &a[r0][c];
        for v in a[r0].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = a[r0].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != r0 && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        pivots.push(c);
        r0 += 1;
    }
    if pivots.len() != k - 1 {
        return None;
    }
    // Free column: the one not pivotal. Back-substitute with free value 1.
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut dir = vec![zero(); k];
    dir[free] = one();
    for (row_idx, &pc) in pivots.iter().enumerate() {
        dir[pc] = -a[row_idx][free].clone();
    }
    Some(dir)
}

/// Is every effect below `a` (in the cone order) a scaling of `a`?
/// Decided by membership of `a`, after unit-norm scaling, in the ray list.
pub fn is_indecomposable(a: &Effect) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::InvalidEffect("zero effect has no rays".into()));
    }
    let basis = nonneg_cone_rays(a.space())?;
    Ok(basis.rays().iter().any(|r| r.proportional_to(a)))
}

/// A finite-dimensional system is classical exactly when its unit-norm
/// indecomposable effects are linearly independent.
pub fn is_classical(space: &Arc<StateSpace>) -> Result<bool> {
    let basis = nonneg_cone_rays(space)?;
    let vectors: Vec<Vec<Rat>> = basis.rays().iter().map(|r| r.values().to_vec()).collect();
    Ok(rank(&vectors) == vectors.len())
}

/// Exact rank of a list of rational vectors.
pub(crate) fn rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Rat>> = vectors.to_vec();
    let cols = a[0].len();
    let mut r0 = 0usize;
    for c in 0..cols {
        let Some(pr) = (r0..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(r0, pr);
        let inv = one() / &a[r0][c];
        for v in a[r0].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let prow = a[r0].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != r0 && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        r0 += 1;
        if r0 == a.len() {
            break;
        }
    }
    r0
}

/// Writes `a` as an exact nonnegative combination of basis rays. The
/// solution is a basic feasible point of the conic-membership program, so at
/// most `linear_dim` coefficients are nonzero.
pub fn decompose_into_rays(a: &Effect, basis: &RayBasis) -> Result<Vec<(Rat, Effect)>> {
    if a.space() != basis.space() {
        return Err(Error::SpaceMismatch);
    }
    if a.values().iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidEffect("negative value".into()));
    }
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let space = a.space();
    let nrays = basis.len();
    let mut prog = LinearProgram::new(Sense::Minimize, vec![zero(); nrays]);
    for j in 0..nrays {
        prog.bound_lower(j, zero());
    }
    for &b in space.affine_basis() {
        let row: Vec<Rat> = basis
            .rays()
            .iter()
            .map(|r| r.value_at_vertex(b).clone())
            .collect();
        prog.eq(row, a.value_at_vertex(b).clone());
    }
    let (_, coeffs) = lp::solve(&prog)?
        .into_optimal("conic membership of a nonnegative functional")
        .map_err(|_| {
            Error::Infeasible("ray decomposition failed; the ray basis is incomplete".into())
        })?;
    let mut out = Vec::new();
    for (c, ray) in coeffs.into_iter().zip(basis.rays()) {
        if !c.is_zero() {
            out.push((c, ray.clone()));
        }
    }
    Ok(out)
}

/// Vertices of the effect polytope `{ 0 <= values <= 1, affine-consistent }`.
///
/// For direct sums the polytope is the product of the summand polytopes and
/// the vertex set is the product of their vertex sets.
pub fn extreme_effects(space: &Arc<StateSpace>) -> Result<Vec<Effect>> {
    check_guards(space)?;
    if let Some((s1, s2)) = space.summands() {
        let (s1, s2) = (s1.clone(), s2.clone());
        let left = extreme_effects(&s1)?;
        let right = extreme_effects(&s2)?;
        let mut out = Vec::with_capacity(left.len() * right.len());
        for g in &left {
            for h in &right {
                let eg = crate::model::embed_left(space, g)?;
                let eh = crate::model::embed_right(space, h)?;
                out.push(Effect::combine(space, &[(one(), &eg), (one(), &eh)])?);
            }
        }
        out.sort_by(|a, b| a.values().cmp(b.values()));
        return Ok(out);
    }

    let k = space.linear_dim();
    let nv = space.num_vertices();
    // Constraint rows over basis values: value_v >= 0 and 1 - value_v >= 0.
    let mut found: Vec<Vec<Rat>> = Vec::new();
    for subset in subsets(2 * nv, k) {
        let rows: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| {
                if i < nv {
                    space.expansion()[i].clone()
                } else {
                    space.expansion()[i - nv].clone()
                }
            })
            .collect();
        let rhs: Vec<Rat> = subset
            .iter()
            .map(|&i| if i < nv { zero() } else { one() })
            .collect();
        // Solve rows · y = rhs when the rows are independent.
        let cols: Vec<Vec<Rat>> = (0..k)
            .map(|c| rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        let Some(y) = solve_exact(&cols, &rhs) else {
            continue;
        };
        let values: Vec<Rat> = (0..nv).map(|v| value_at(space, &y, v)).collect();
        if values
            .iter()
            .all(|x| !x.is_negative() && *x <= one())
        {
            if !found.contains(&values) {
                found.push(values);
            }
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|vals| Effect::from_values(space.clone(), &vals))
        .collect()
}

/// LP certificate that an effect's value vector is a vertex of the effect
/// polytope: the constraints active at it must pin it down uniquely, i.e.
/// their coefficient rows span the full basis-value space.
pub fn certify_extreme_effect(a: &Effect) -> Result<bool> {
    let space = a.space();
    let mut active_rows: Vec<Vec<Rat>> = Vec::new();
    for (v, val) in a.values().iter().enumerate() {
        if val.is_zero() || val == &one() {
            active_rows.push(space.expansion()[v].clone());
        }
    }
    Ok(rank(&active_rows) == space.linear_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{direct_sum_space, Measurement, StateSpace};
    use crate::rat::int;

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

    fn simplex(k: usize) -> Arc<StateSpace> {
        let verts: Vec<Vec<Rat>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        StateSpace::new(format!("simplex-{k}"), k, verts).unwrap()
    }

    #[test]
    fn simplex_rays_are_vertex_indicators() {
        let s = simplex(3);
        let basis = nonneg_cone_rays(&s).unwrap();
        assert_eq!(basis.len(), 3);
        for ray in basis.rays() {
            let ones = ray.values().iter().filter(|v| **v == one()).count();
            let zeros = ray.values().iter().filter(|v| v.is_zero()).count();
            assert_eq!((ones, zeros), (1, 2));
        }
        assert!(is_classical(&s).unwrap());
    }

    #[test]
    fn square_rays_are_the_four_facet_functionals() {
        let s = square();
        let basis = nonneg_cone_rays(&s).unwrap();
        let value_sets: Vec<Vec<Rat>> =
            basis.rays().iter().map(|r| r.values().to_vec()).collect();
        let expect = |vals: [i64; 4]| vals.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(
            value_sets,
            vec![
                expect([0, 0, 1, 1]), // b-
                expect([0, 1, 1, 0]), // c-
                expect([1, 0, 0, 1]), // c+
                expect([1, 1, 0, 0]), // b+
            ]
        );
        assert!(!is_classical(&s).unwrap());
        for ray in basis.rays() {
            assert!(is_indecomposable(ray).unwrap());
        }
    }

    #[test]
    fn unit_effect_is_decomposable_on_the_square() {
        let s = square();
        let unit = Effect::unit(s.clone());
        assert!(!is_indecomposable(&unit).unwrap());
        let basis = nonneg_cone_rays(&s).unwrap();
        let parts = decompose_into_rays(&unit, &basis).unwrap();
        // support bounded by the linear dimension
        assert!(parts.len() <= s.linear_dim());
        let mut resum = vec![zero(); 4];
        for (c, r) in &parts {
            for (acc, v) in resum.iter_mut().zip(r.values()) {
                *acc += c * v;
            }
        }
        assert_eq!(resum, unit.values());
    }

    #[test]
    fn zero_effect_decomposes_empty() {
        let s = square();
        let basis = nonneg_cone_rays(&s).unwrap();
        assert!(decompose_into_rays(&Effect::zero(s.clone()), &basis)
            .unwrap()
            .is_empty());
        assert!(is_indecomposable(&Effect::zero(s)).is_err());
    }

    #[test]
    fn single_ray_decomposes_to_itself() {
        let s = square();
        let basis = nonneg_cone_rays(&s).unwrap();
        let ray = basis.rays()[0].clone();
        let parts = decompose_into_rays(&ray, &basis).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, one());
        assert_eq!(&parts[0].1, &ray);
    }

    #[test]
    fn square_extreme_effects_are_zero_one_and_facets() {
        let s = square();
        let ext = extreme_effects(&s).unwrap();
        assert_eq!(ext.len(), 6);
        for e in &ext {
            assert!(certify_extreme_effect(e).unwrap());
            // (a, 1-a) is a valid measurement
            let m = Measurement::new(
                s.clone(),
                vec!["a".into(), "b".into()],
                vec![e.clone(), e.complement()],
            );
            assert!(m.is_ok());
        }
        let basis = nonneg_cone_rays(&s).unwrap();
        for ray in basis.rays() {
            assert!(ext.contains(ray));
        }
        assert!(ext.contains(&Effect::zero(s.clone())));
        assert!(ext.contains(&Effect::unit(s)));
    }

    #[test]
    fn simplex_extreme_effects_are_indicator_sums() {
        let s = simplex(3);
        let ext = extreme_effects(&s).unwrap();
        assert_eq!(ext.len(), 8); // all 0/1 value patterns
        for e in &ext {
            assert!(e.values().iter().all(|v| v.is_zero() || *v == one()));
        }
    }

    #[test]
    fn guards_are_hard_errors() {
        let verts: Vec<Vec<Rat>> = (0..9)
            .map(|i| (0..9).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        let s = StateSpace::new("simplex-9", 9, verts).unwrap();
        assert!(matches!(
            nonneg_cone_rays(&s),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn direct_sum_rays_are_embedded_rays() {
        let s = square();
        let t = simplex(3);
        let sum = direct_sum_space(&s, &t).unwrap();
        let basis = nonneg_cone_rays(&sum).unwrap();
        assert_eq!(basis.len(), 4 + 3);
        for ray in basis.rays() {
            assert_eq!(ray.norm(), one());
        }
        assert!(!is_classical(&sum).unwrap());
        let ext = extreme_effects(&sum).unwrap();
        assert_eq!(ext.len(), 6 * 8);
    }

    #[test]
    fn two_point_classical_bit() {
        let s = simplex(2);
        assert!(is_classical(&s).unwrap());
        let basis = nonneg_cone_rays(&s).unwrap();
        assert_eq!(basis.len(), 2);
    }
}
