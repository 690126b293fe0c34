//! Exact analysis of measurement intersubjectivity in generalized
//! probabilistic theories (GPTs).
//!
//! A GPT system is a rational polytope of states; effects are affine
//! functionals into [0,1] and measurements are finite effect families summing
//! to the unit effect. On top of that the crate computes, exactly:
//!
//! - the intersubjectivity degree of a measurement (agreement probability of
//!   two observers performing it jointly), its sharpness degree, and its
//!   complete-intersubjectivity degree over all coarse-grainings;
//! - measurement extremality, effect-cone structure (indecomposable effects,
//!   classicality), and constructive witnesses separating the notions;
//! - state-discrimination and tomography tasks;
//! - quantum-side checks for POVMs (support overlaps, projectivity,
//!   extremality) with a polygon bridge into the exact machinery.
//!
//! All GPT-side arithmetic is exact rational; only the quantum module uses
//! floating point, with fixed documented tolerances.

pub mod error;
pub mod rat;

pub mod lp;
pub mod model;

pub mod acceptance;
pub mod catalog;
pub mod cone;
pub mod io;
pub mod metrics;
pub mod quantum;
pub mod tasks;
pub mod witness;

pub use error::{Error, Result};
pub use model::{
    direct_sum_measurement, direct_sum_space, embed_left, embed_right, enumerate_partitions,
    index_partitions, Effect, Label, Measurement, OutcomePartition, StateSpace,
};
pub use rat::{format_rat, parse_rat, Rat};

pub use cone::{
    decompose_into_rays, extreme_effects, is_classical, is_indecomposable, nonneg_cone_rays,
    RayBasis,
};
pub use lp::{solve, solve_lazy, vertex_sample, LinearProgram, LpSolution, Sense};
pub use metrics::{
    cis_degree, classical_degree, coin_toss_degree, coin_toss_measurement,
    intersubjectivity_degree, is_elementwise_sharp, is_extremal, is_sharp_effect,
    sharpness_degree, DegreeKind, DegreeReport,
};
pub use quantum::{
    bloch_polygon_model, embed_unbiased, is_extremal_povm, is_intersubjective_povm, is_pvm,
    support_basis, unbiased_qubit_degree, unbiased_qubit_povm, HermitianOperator, Povm,
    PovmIntersubjectivity,
};
pub use tasks::{
    discriminate, is_tomographically_complete, perfectly_distinguishing_states,
    sharp_two_outcome_set, Distinguishing, Ensemble,
};
pub use witness::{
    cis_outcome_bound, many_outcome_witness, three_outcome_witness, ManyOutcomeWitness,
    ThreeOutcomeWitness,
};
pub use catalog::{load_example, random_measurement, random_model, CatalogEntry, CatalogModel};
