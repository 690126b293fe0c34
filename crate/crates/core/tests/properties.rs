//! Property tests for the exact kernels: LP duality and determinism, the
//! effect order, mixing and coarse-graining laws, ray decompositions,
//! closed-form monotonicity, degree relations, and the quantum predicates on
//! randomized corpora. Everything is seed-driven and replayable.

use intersub_core::catalog::{
    fivedim_space, load_example, random_distribution, random_measurement, simplex_space,
    square_space,
};
use intersub_core::lp::{solve, LinearProgram, LpSolution, Sense};
use intersub_core::model::{index_partitions, OutcomePartition};
use intersub_core::quantum::{
    is_extremal_povm, is_intersubjective_povm, is_pvm, HermitianOperator, Povm, C64,
};
use intersub_core::rat::{int, one, rat, zero, Rat};
use intersub_core::{
    cis_degree, cone, coin_toss_degree, intersubjectivity_degree, is_classical,
    CatalogModel, Effect, Measurement,
};
use nalgebra::DMatrix;
use num::{One, Signed};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4))
}

// ------------------------------------------------------------------ LP

/// Strong duality on random primal/dual pairs:
/// max c.x s.t. Ax <= b, x >= 0   vs   min b.y s.t. A^T y >= c, y >= 0.
#[test]
fn lp_strong_duality_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD0A1);
    let mut optimal_pairs = 0;
    for _ in 0..40 {
        let n = rng.gen_range(1usize..=4);
        let m = rng.gen_range(1usize..=4);
        let a: Vec<Vec<Rat>> = (0..m)
            .map(|_| (0..n).map(|_| small_rat(&mut rng)).collect())
            .collect();
        let b: Vec<Rat> = (0..m)
            .map(|_| rat(rng.gen_range(0i64..=8), rng.gen_range(1i64..=3)))
            .collect();
        let c: Vec<Rat> = (0..n).map(|_| small_rat(&mut rng)).collect();

        let mut primal = LinearProgram::new(Sense::Maximize, c.clone());
        for j in 0..n {
            primal.bound_lower(j, zero());
        }
        for (row, rhs) in a.iter().zip(&b) {
            primal.le(row.clone(), rhs.clone());
        }
        let mut dual = LinearProgram::new(Sense::Minimize, b.clone());
        for i in 0..m {
            dual.bound_lower(i, zero());
        }
        for j in 0..n {
            let col: Vec<Rat> = a.iter().map(|row| row[j].clone()).collect();
            dual.ge(col, c[j].clone());
        }

        match (solve(&primal).unwrap(), solve(&dual).unwrap()) {
            (
                LpSolution::Optimal { value: vp, point },
                LpSolution::Optimal { value: vd, .. },
            ) => {
                assert_eq!(vp, vd, "duality gap");
                // primal point satisfies its constraints exactly
                for (row, rhs) in a.iter().zip(&b) {
                    let lhs: Rat = row.iter().zip(&point).map(|(x, y)| x * y).sum();
                    assert!(lhs <= *rhs);
                }
                optimal_pairs += 1;
            }
            (LpSolution::Unbounded, LpSolution::Infeasible) => {}
            (LpSolution::Infeasible, _) => panic!("primal with b >= 0 is feasible at x = 0"),
            (p, d) => panic!("inconsistent primal/dual statuses {p:?} vs {d:?}"),
        }
    }
    assert!(optimal_pairs >= 10, "duality sweep too degenerate");
}

#[test]
fn lp_solutions_are_bitwise_deterministic() {
    let mut lp = LinearProgram::new(Sense::Maximize, vec![int(2), int(3), -one()]);
    for j in 0..3 {
        lp.bound_lower(j, zero());
    }
    lp.le(vec![one(), int(2), one()], int(7));
    lp.le(vec![int(3), -one(), int(2)], int(5));
    lp.eq(vec![one(), one(), one()], int(4));
    let a = solve(&lp).unwrap();
    let b = solve(&lp).unwrap();
    assert_eq!(a, b);
}

// ------------------------------------------------------- model algebra

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The effect order is a partial order on canonical value vectors.
    #[test]
    fn effect_order_is_a_partial_order(seed in 0u64..1000) {
        let space = square_space().unwrap();
        let effects: Vec<Effect> = (0..3)
            .flat_map(|k| {
                random_measurement(&space, 2, seed * 7 + k)
                    .unwrap()
                    .effects()
                    .to_vec()
            })
            .collect();
        for a in &effects {
            prop_assert!(a.leq(a).unwrap());
            for b in &effects {
                if a.leq(b).unwrap() && b.leq(a).unwrap() {
                    prop_assert_eq!(a.values(), b.values());
                }
                for c in &effects {
                    if a.leq(b).unwrap() && b.leq(c).unwrap() {
                        prop_assert!(a.leq(c).unwrap());
                    }
                }
            }
        }
    }

    /// Mixing acts as the exact convex combination of value vectors, and
    /// vertex columns of any measurement sum to one.
    #[test]
    fn mixing_is_exact_convexity(seed in 0u64..1000, num in 0i64..=4) {
        let space = square_space().unwrap();
        let a = random_measurement(&space, 3, seed).unwrap();
        let b = random_measurement(&space, 3, seed ^ 0xFFFF).unwrap();
        let b = Measurement::new(space.clone(), a.labels().to_vec(), b.effects().to_vec()).unwrap();
        let lambda = rat(num, 4);
        let mixed = a.mix(&b, &lambda).unwrap();
        for ((ma, mb), mm) in a.effects().iter().zip(b.effects()).zip(mixed.effects()) {
            for ((va, vb), vm) in ma.values().iter().zip(mb.values()).zip(mm.values()) {
                prop_assert_eq!(&lambda * va + (one() - &lambda) * vb, vm.clone());
            }
        }
        for v in 0..space.num_vertices() {
            let total: Rat = mixed.effects().iter().map(|e| e.value_at_vertex(v).clone()).sum();
            prop_assert!(total.is_one());
        }
    }

    /// Coarse-graining composes: merging along P then Q equals merging along
    /// the composed partition.
    #[test]
    fn coarse_graining_composes(seed in 0u64..400, p_idx in 0usize..15, q_idx in 0usize..5) {
        let space = simplex_space(3).unwrap();
        let a = random_measurement(&space, 4, seed).unwrap();
        let ps = index_partitions(4).unwrap();
        let p_blocks = &ps[p_idx % ps.len()];
        let p = OutcomePartition::from_index_blocks(a.labels(), p_blocks);
        let coarse = a.coarse_grain(&p).unwrap();
        let qs = index_partitions(coarse.num_outcomes()).unwrap();
        let q_blocks = &qs[q_idx % qs.len()];
        let q = OutcomePartition::from_index_blocks(coarse.labels(), q_blocks);
        let twice = coarse.coarse_grain(&q).unwrap();

        // compose: each Q block unions the member sets of its P-block labels
        let composed_blocks: Vec<Vec<String>> = q
            .blocks()
            .iter()
            .map(|qb| {
                qb.iter()
                    .flat_map(|label| label.split('+').map(str::to_string))
                    .collect()
            })
            .collect();
        let composed = OutcomePartition::new(composed_blocks).unwrap();
        let direct = a.coarse_grain(&composed).unwrap();
        prop_assert_eq!(twice.num_outcomes(), direct.num_outcomes());
        for (x, y) in twice.effects().iter().zip(direct.effects()) {
            prop_assert_eq!(x.values(), y.values());
        }
    }

    /// The closed-form coin-tossing degree never decreases under
    /// coarse-graining of the weights.
    #[test]
    fn coin_toss_degree_monotone_under_merging(seed in 0u64..1000, p_idx in 0usize..52) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2usize..=5);
        let weights = random_distribution(&mut rng, n);
        let base = coin_toss_degree(&weights).unwrap();
        let ps = index_partitions(n).unwrap();
        let blocks = &ps[p_idx % ps.len()];
        let merged: Vec<Rat> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| weights[i].clone()).sum())
            .collect();
        prop_assert!(coin_toss_degree(&merged).unwrap() >= base);
    }
}

// ------------------------------------------------------------- cone

#[test]
fn decompose_resum_round_trip_on_catalog_models() {
    let spaces = [square_space().unwrap(), fivedim_space().unwrap(), simplex_space(3).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(0xDEC0);
    for space in &spaces {
        let basis = cone::nonneg_cone_rays(space).unwrap();
        for _ in 0..100 {
            // random nonnegative combination, scaled into the effect range
            let coeffs: Vec<Rat> = (0..basis.len())
                .map(|_| rat(rng.gen_range(0i64..=5), rng.gen_range(1i64..=3)))
                .collect();
            let mut values = vec![zero(); space.num_vertices()];
            for (c, ray) in coeffs.iter().zip(basis.rays()) {
                for (acc, v) in values.iter_mut().zip(ray.values()) {
                    *acc += c * v;
                }
            }
            let peak = values.iter().cloned().max().unwrap();
            if peak.is_positive() {
                for v in values.iter_mut() {
                    *v = &*v / &peak;
                }
            }
            let effect = Effect::from_values(space.clone(), &values).unwrap();
            let parts = cone::decompose_into_rays(&effect, &basis).unwrap();
            assert!(parts.len() <= space.linear_dim());
            let mut resum = vec![zero(); space.num_vertices()];
            for (c, ray) in &parts {
                for (acc, v) in resum.iter_mut().zip(ray.values()) {
                    *acc += c * v;
                }
            }
            assert_eq!(resum, effect.values());
        }
    }
}

#[test]
fn rays_are_unit_norm_indecomposable_effects() {
    for space in [square_space().unwrap(), fivedim_space().unwrap()] {
        let basis = cone::nonneg_cone_rays(&space).unwrap();
        for ray in basis.rays() {
            assert_eq!(ray.norm(), one());
            assert!(cone::is_indecomposable(ray).unwrap());
        }
    }
}

#[test]
fn classicality_matches_simplex_geometry() {
    // simplices: classical, with exactly k rays
    for k in 2..=4 {
        let s = simplex_space(k).unwrap();
        assert!(is_classical(&s).unwrap());
        assert_eq!(cone::nonneg_cone_rays(&s).unwrap().len(), k);
        assert_eq!(s.num_vertices(), s.affine_dim() + 1);
    }
    // catalog GPT models agree with the simplex test
    for name in ["square-gbit", "fivedim-es-ext", "direct-sum-es"] {
        let entry = load_example(name).unwrap();
        let CatalogModel::Gpt(space) = entry.model else {
            continue;
        };
        let simplex_like = space.num_vertices() == space.affine_dim() + 1;
        assert_eq!(is_classical(&space).unwrap(), simplex_like);
        assert!(!is_classical(&space).unwrap());
    }
    // random models agree with the simplex test
    for seed in 0..8u64 {
        let space = intersub_core::random_model(seed, 2, 5).unwrap();
        let simplex_like = space.num_vertices() == space.affine_dim() + 1;
        assert_eq!(is_classical(&space).unwrap(), simplex_like);
    }
}

// ---------------------------------------------------------- metrics

#[test]
fn cis_is_bounded_by_the_degree() {
    let spaces = [square_space().unwrap(), simplex_space(3).unwrap()];
    for (i, space) in spaces.iter().enumerate() {
        for seed in 0..6u64 {
            let m = random_measurement(space, 3, 0xC15 + seed + i as u64 * 100).unwrap();
            let deg = intersubjectivity_degree(&m).unwrap();
            let cis = cis_degree(&m).unwrap();
            assert!(cis.value <= deg.value);
            deg.reverify(&m).unwrap();
            cis.reverify(&m).unwrap();
        }
    }
}

#[test]
fn extremal_vertex_samples_have_degree_one() {
    for (i, space) in [square_space().unwrap(), fivedim_space().unwrap(), simplex_space(4).unwrap()]
        .iter()
        .enumerate()
    {
        for seed in 0..4u64 {
            let m =
                intersub_core::catalog::random_extremal_measurement(space, 2 + (seed as usize % 2), seed + i as u64 * 50)
                    .unwrap();
            assert!(intersub_core::is_extremal(&m).unwrap());
            assert_eq!(intersubjectivity_degree(&m).unwrap().value, one());
        }
    }
}

#[test]
fn classical_closed_form_monotone_under_coarse_graining() {
    let space = simplex_space(3).unwrap();
    for seed in 0..8u64 {
        let m = random_measurement(&space, 4, 0x52_000 + seed).unwrap();
        let base = intersub_core::classical_degree(&m).unwrap();
        for blocks in index_partitions(4).unwrap() {
            let p = OutcomePartition::from_index_blocks(m.labels(), &blocks);
            let coarse = m.coarse_grain(&p).unwrap();
            assert!(intersub_core::classical_degree(&coarse).unwrap() >= base);
        }
    }
}

#[test]
fn every_nonclassical_catalog_model_admits_a_three_outcome_witness() {
    for name in ["square-gbit", "fivedim-es-ext", "direct-sum-es"] {
        let entry = load_example(name).unwrap();
        let CatalogModel::Gpt(space) = entry.model else {
            continue;
        };
        match intersub_core::three_outcome_witness(&space).unwrap() {
            intersub_core::ThreeOutcomeWitness::Witness { degree, cis, .. } => {
                assert_eq!(degree.value, one());
                assert!(cis.value < one());
            }
            intersub_core::ThreeOutcomeWitness::Classical => {
                panic!("{name} is not classical")
            }
        }
    }
}

#[test]
fn mixing_with_noise_respects_the_degree_bound() {
    // degree(A) >= 1 - (1 - degree(mix))/lambda, at lambda = 1/2
    let space = square_space().unwrap();
    for seed in 0..5u64 {
        let a = intersub_core::catalog::random_extremal_measurement(&space, 2, seed).unwrap();
        let toss = intersub_core::coin_toss_measurement(
            &space,
            &[rat(1, 2), rat(1, 2)],
        )
        .unwrap();
        let toss = Measurement::new(space.clone(), a.labels().to_vec(), toss.effects().to_vec()).unwrap();
        let mixed = a.mix(&toss, &rat(1, 2)).unwrap();
        let da = intersubjectivity_degree(&a).unwrap().value;
        let dm = intersubjectivity_degree(&mixed).unwrap().value;
        assert!(da >= one() - (one() - &dm) / rat(1, 2));
    }
}

// ---------------------------------------------------------- quantum

fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let m = DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    m.qr().q()
}

/// Random PVM: projectors onto blocks of a random orthonormal basis.
fn random_pvm(dim: usize, rng: &mut ChaCha8Rng) -> Povm {
    let u = random_unitary(dim, rng);
    // random composition of dim into blocks
    let mut blocks: Vec<usize> = Vec::new();
    let mut left = dim;
    while left > 0 {
        let take = rng.gen_range(1..=left);
        blocks.push(take);
        left -= take;
    }
    let mut elements = Vec::new();
    let mut col = 0usize;
    for (i, width) in blocks.iter().enumerate() {
        let b = u.columns(col, *width).into_owned();
        col += width;
        let p = &b * b.adjoint();
        elements.push(HermitianOperator::new(p).unwrap());
        let _ = i;
    }
    let labels = (1..=elements.len()).map(|i| i.to_string()).collect();
    Povm::new(labels, elements).unwrap()
}

#[test]
fn random_pvms_are_intersubjective_and_extremal() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A11);
    for dim in 2..=4usize {
        for _ in 0..6 {
            let pvm = random_pvm(dim, &mut rng);
            assert!(is_pvm(&pvm).unwrap());
            assert!(is_intersubjective_povm(&pvm).unwrap().intersubjective);
            assert!(is_extremal_povm(&pvm).unwrap());
        }
    }
}

#[test]
fn support_intersubjectivity_is_unitarily_invariant() {
    let entry = load_example("qubit-four-halves").unwrap();
    let base = entry.povm.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A22);
    for _ in 0..5 {
        let u = random_unitary(2, &mut rng);
        let elements: Vec<HermitianOperator> = base
            .elements()
            .iter()
            .map(|e| HermitianOperator::new(&u * e.entries() * u.adjoint()).unwrap())
            .collect();
        let conjugated = Povm::new(base.labels().to_vec(), elements).unwrap();
        assert!(is_intersubjective_povm(&conjugated).unwrap().intersubjective);
        assert!(!is_pvm(&conjugated).unwrap());
    }
}

#[test]
fn overlapping_supports_are_rejected_with_a_witness() {
    // mix a projector with the maximally mixed state: both elements gain
    // full support
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A33);
    for _ in 0..5 {
        let u = random_unitary(2, &mut rng);
        let p = u.column(0) * u.column(0).adjoint();
        let id = DMatrix::<C64>::identity(2, 2);
        let a1 = (&p).scale(0.5) + (&id).scale(0.25);
        let a2 = &id - &a1;
        let povm = Povm::new(
            vec!["a".into(), "b".into()],
            vec![
                HermitianOperator::new(a1).unwrap(),
                HermitianOperator::new(a2).unwrap(),
            ],
        )
        .unwrap();
        let check = is_intersubjective_povm(&povm).unwrap();
        assert!(!check.intersubjective);
        assert_eq!(check.offending_pair, Some(("a".into(), "b".into())));
    }
}
