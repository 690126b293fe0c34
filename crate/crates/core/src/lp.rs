//! Exact rational linear programming.
//!
//! A dense two-phase simplex over [`Rat`] with Bland's anti-cycling rule.
//! Optima, feasibility verdicts and returned points are all exact; the
//! returned point is a basic feasible solution of the constraint system as
//! posed, which the callers rely on when they need optimizers that are
//! vertices of their feasible polytopes.

use crate::error::{Error, Result};
use crate::rat::{dot, rat, Rat};
use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// A linear program over rational scalars.
///
/// Rows are `a · x = b` (equalities) and `a · x >= b` (inequalities).
/// `bounds[j]` holds optional lower/upper bounds for variable `j`; a missing
/// bound leaves that side free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rat>,
    pub eq_rows: Vec<(Vec<Rat>, Rat)>,
    pub ge_rows: Vec<(Vec<Rat>, Rat)>,
    pub bounds: Vec<(Option<Rat>, Option<Rat>)>,
}

impl LinearProgram {
    /// A program with all variables free and no rows yet.
    pub fn new(sense: Sense, objective: Vec<Rat>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            eq_rows: Vec::new(),
            ge_rows: Vec::new(),
            bounds: vec![(None, None); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn eq(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> &mut Self {
        self.eq_rows.push((coeffs, rhs));
        self
    }

    pub fn ge(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> &mut Self {
        self.ge_rows.push((coeffs, rhs));
        self
    }

    /// `a · x <= b` stored as `-a · x >= -b`.
    pub fn le(&mut self, coeffs: Vec<Rat>, rhs: Rat) -> &mut Self {
        let neg: Vec<Rat> = coeffs.into_iter().map(|c| -c).collect();
        self.ge_rows.push((neg, -rhs));
        self
    }

    pub fn bound_lower(&mut self, var: usize, lo: Rat) -> &mut Self {
        self.bounds[var].0 = Some(lo);
        self
    }

    pub fn bound_upper(&mut self, var: usize, hi: Rat) -> &mut Self {
        self.bounds[var].1 = Some(hi);
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::MalformedProgram(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                n
            )));
        }
        for (row, _) in self.eq_rows.iter().chain(&self.ge_rows) {
            if row.len() != n {
                return Err(Error::MalformedProgram(format!(
                    "row width {} does not match objective width {}",
                    row.len(),
                    n
                )));
            }
        }
        for (lo, hi) in &self.bounds {
            if let (Some(l), Some(h)) = (lo, hi) {
                if l > h {
                    return Err(Error::MalformedProgram(format!(
                        "empty bound interval [{l}, {h}]"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn optimal(&self) -> Option<(&Rat, &[Rat])> {
        match self {
            LpSolution::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }

    /// Unwraps the optimum or converts the status into an error.
    pub fn into_optimal(self, context: &str) -> Result<(Rat, Vec<Rat>)> {
        match self {
            LpSolution::Optimal { value, point } => Ok((value, point)),
            LpSolution::Infeasible => Err(Error::Infeasible(context.to_string())),
            LpSolution::Unbounded => {
                Err(Error::MalformedProgram(format!("unbounded program: {context}")))
            }
        }
    }
}

/// How an original variable maps into the standard-form variables.
#[derive(Debug, Clone)]
enum VarMap {
    /// `x = lo + y`, `y >= 0`.
    Shifted { col: usize, lo: Rat },
    /// `x = hi - y`, `y >= 0`.
    Mirrored { col: usize, hi: Rat },
    /// `x = y+ - y-`, both nonnegative.
    Split { pos: usize, neg: usize },
}

/// Solves the program exactly. Statuses are returned, never raised; only a
/// malformed program is an error.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();

    // Standard form: minimize c·y subject to A y = b, y >= 0.
    let mut maps: Vec<VarMap> = Vec::with_capacity(n);
    let mut cols = 0usize;
    let mut extra_ge: Vec<(Vec<(usize, Rat)>, Rat)> = Vec::new(); // sparse rows over std vars

    for (lo, hi) in lp.bounds.iter() {
        match (lo, hi) {
            (Some(l), Some(h)) => {
                let col = cols;
                cols += 1;
                // y <= h - l  as  -y >= l - h
                extra_ge.push((vec![(col, -Rat::one())], l - h));
                maps.push(VarMap::Shifted { col, lo: l.clone() });
            }
            (Some(l), None) => {
                let col = cols;
                cols += 1;
                maps.push(VarMap::Shifted { col, lo: l.clone() });
            }
            (None, Some(h)) => {
                let col = cols;
                cols += 1;
                maps.push(VarMap::Mirrored { col, hi: h.clone() });
            }
            (None, None) => {
                let pos = cols;
                let neg = cols + 1;
                cols += 2;
                maps.push(VarMap::Split { pos, neg });
            }
        }
    }

    // Rewrites an original-variable row into standard columns, adjusting rhs.
    let translate = |row: &[Rat], rhs: &Rat| -> (Vec<Rat>, Rat) {
        let mut out = vec![Rat::zero(); cols];
        let mut b = rhs.clone();
        for (j, coef) in row.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            match &maps[j] {
                VarMap::Shifted { col, lo } => {
                    out[*col] += coef;
                    b -= coef * lo;
                }
                VarMap::Mirrored { col, hi } => {
                    out[*col] -= coef;
                    b -= coef * hi;
                }
                VarMap::Split { pos, neg } => {
                    out[*pos] += coef;
                    out[*neg] -= coef;
                }
            }
        }
        (out, b)
    };

    let mut eqs: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut ges: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for (row, rhs) in &lp.eq_rows {
        eqs.push(translate(row, rhs));
    }
    for (row, rhs) in &lp.ge_rows {
        ges.push(translate(row, rhs));
    }
    for (sparse, rhs) in extra_ge {
        let mut row = vec![Rat::zero(); cols];
        for (c, v) in sparse {
            row[c] = v;
        }
        ges.push((row, rhs));
    }

    // Drop duplicate rows; tiny systems make the quadratic scan fine.
    dedup_rows(&mut eqs);
    dedup_rows(&mut ges);

    let mut objective = vec![Rat::zero(); cols];
    for (j, coef) in lp.objective.iter().enumerate() {
        match &maps[j] {
            VarMap::Shifted { col, .. } => objective[*col] += coef,
            VarMap::Mirrored { col, .. } => objective[*col] -= coef,
            VarMap::Split { pos, neg } => {
                objective[*pos] += coef;
                objective[*neg] -= coef;
            }
        }
    }
    if lp.sense == Sense::Maximize {
        for c in objective.iter_mut() {
            *c = -c.clone();
        }
    }

    let std_point = match simplex(cols, &eqs, &ges, &objective) {
        SimplexOutcome::Infeasible => return Ok(LpSolution::Infeasible),
        SimplexOutcome::Unbounded => return Ok(LpSolution::Unbounded),
        SimplexOutcome::Optimal(point) => point,
    };

    // Map back and recompute the objective from the original data.
    let mut point = Vec::with_capacity(n);
    for m in &maps {
        let x = match m {
            VarMap::Shifted { col, lo } => lo + &std_point[*col],
            VarMap::Mirrored { col, hi } => hi - &std_point[*col],
            VarMap::Split { pos, neg } => &std_point[*pos] - &std_point[*neg],
        };
        point.push(x);
    }
    let value = dot(&lp.objective, &point);
    Ok(LpSolution::Optimal { value, point })
}

fn dedup_rows(rows: &mut Vec<(Vec<Rat>, Rat)>) {
    let mut kept: Vec<(Vec<Rat>, Rat)> = Vec::with_capacity(rows.len());
    for row in rows.drain(..) {
        if !kept.contains(&row) {
            kept.push(row);
        }
    }
    *rows = kept;
}

enum SimplexOutcome {
    Optimal(Vec<Rat>),
    Infeasible,
    Unbounded,
}

/// Two-phase tableau simplex on `min c·y, Ay = b (eqs), Gy >= h (ges), y >= 0`.
fn simplex(
    cols: usize,
    eqs: &[(Vec<Rat>, Rat)],
    ges: &[(Vec<Rat>, Rat)],
    objective: &[Rat],
) -> SimplexOutcome {
    let m = eqs.len() + ges.len();

    // Layout: structural vars | surplus vars (one per ge row) | artificials.
    let n_surplus = ges.len();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut needs_artificial: Vec<bool> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = vec![usize::MAX; m];

    for (row, b) in eqs {
        let mut r = vec![Rat::zero(); cols + n_surplus];
        r[..cols].clone_from_slice(row);
        if b.is_negative() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
            rhs.push(-b.clone());
        } else {
            rhs.push(b.clone());
        }
        rows.push(r);
        needs_artificial.push(true);
    }
    for (k, (row, b)) in ges.iter().enumerate() {
        let mut r = vec![Rat::zero(); cols + n_surplus];
        r[..cols].clone_from_slice(row);
        r[cols + k] = -Rat::one(); // a·y - s = b
        if b.is_negative() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
            rhs.push(-b.clone());
            // slack column now +1: usable as the initial basic variable
            needs_artificial.push(false);
            basis[eqs.len() + k] = cols + k;
        } else {
            rhs.push(b.clone());
            needs_artificial.push(b.is_zero() == false);
            if b.is_zero() {
                // flip the row so the surplus enters the basis at level 0
                let r = rows.len();
                debug_assert_eq!(r, eqs.len() + k);
                needs_artificial[r] = false;
            }
        }
        rows.push(r);
    }
    // Rows flagged `needs_artificial == false` but without a basis column yet
    // are the b == 0 ge-rows: negate so their surplus becomes basic at 0.
    for (i, row) in rows.iter_mut().enumerate() {
        if !needs_artificial[i] && basis[i] == usize::MAX {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            let k = i - eqs.len();
            basis[i] = cols + k;
        }
    }

    let mut n_total = cols + n_surplus;
    let mut artificial_of_row: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        if needs_artificial[i] {
            artificial_of_row[i] = Some(n_total);
            basis[i] = n_total;
            n_total += 1;
        }
    }
    let first_artificial = cols + n_surplus;

    // Tableau: m constraint rows with rhs, plus phase-2 and phase-1 cost rows.
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in rows.into_iter().enumerate() {
        let mut r = vec![Rat::zero(); n_total + 1];
        r[..cols + n_surplus].clone_from_slice(&row[..]);
        if let Some(a) = artificial_of_row[i] {
            r[a] = Rat::one();
        }
        r[n_total] = rhs[i].clone();
        t.push(r);
    }

    let mut cost2 = vec![Rat::zero(); n_total + 1];
    cost2[..cols].clone_from_slice(objective);
    // Reduced costs for the current basis (artificials have phase-2 cost 0;
    // surplus basics too). Basic structural columns cannot occur initially.

    let mut cost1 = vec![Rat::zero(); n_total + 1];
    for a in artificial_of_row.iter().flatten() {
        cost1[*a] = Rat::one();
    }
    // Price out the basic artificials: cost1 <- cost1 - sum of their rows.
    for i in 0..m {
        if artificial_of_row[i].is_some() {
            for j in 0..=n_total {
                if !t[i][j].is_zero() {
                    let v = t[i][j].clone();
                    cost1[j] -= v;
                }
            }
        }
    }

    // Phase 1: drive sum of artificials to zero. Artificial columns are
    // barred from re-entering; the objective is bounded below by 0, so the
    // phase cannot be unbounded.
    let all_live = vec![true; m];
    if run_phase(
        &mut t,
        &mut cost1,
        Some(&mut cost2),
        &mut basis,
        n_total,
        Some((first_artificial, &all_live)),
    )
    .is_none()
    {
        unreachable!("phase 1 cannot be unbounded");
    }
    let phase1_value = -cost1[n_total].clone();
    if !phase1_value.is_zero() {
        return SimplexOutcome::Infeasible;
    }

    // Pivot leftover basic artificials out, dropping redundant rows.
    let mut live_rows: Vec<bool> = vec![true; m];
    for i in 0..m {
        if basis[i] >= first_artificial {
            let mut pivoted = false;
            for j in 0..first_artificial {
                if !t[i][j].is_zero() {
                    pivot(&mut t, &mut cost1, Some(&mut cost2), &mut basis, i, j);
                    pivoted = true;
                    break;
                }
            }
            if !pivoted {
                live_rows[i] = false; // redundant constraint
            }
        }
    }

    // Phase 2 on the original objective, artificial columns barred.
    match run_phase(
        &mut t,
        &mut cost2,
        None,
        &mut basis,
        n_total,
        Some((first_artificial, &live_rows)),
    ) {
        None => return SimplexOutcome::Unbounded,
        Some(()) => {}
    }

    let mut point = vec![Rat::zero(); cols];
    for i in 0..m {
        if live_rows[i] && basis[i] < cols {
            point[basis[i]] = t[i][n_total].clone();
        }
    }
    SimplexOutcome::Optimal(point)
}

/// Runs Bland-rule pivoting until optimal (`Some`) or unbounded (`None`).
///
/// `restrict`: optionally (first barred column, live-row mask) for phase 2.
fn run_phase(
    t: &mut Vec<Vec<Rat>>,
    cost: &mut Vec<Rat>,
    mut other_cost: Option<&mut Vec<Rat>>,
    basis: &mut [usize],
    n_total: usize,
    restrict: Option<(usize, &[bool])>,
) -> Option<()> {
    let m = t.len();
    let (barred_from, live): (usize, Option<&[bool]>) = match restrict {
        Some((b, l)) => (b, Some(l)),
        None => (n_total, None),
    };
    loop {
        // Bland: smallest-index column with a negative reduced cost.
        let mut entering = None;
        for j in 0..n_total.min(barred_from) {
            if cost[j].is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Some(());
        };

        // Ratio test; Bland tie-break on the smallest basic variable index.
        let mut leaving: Option<(usize, Rat)> = None;
        for i in 0..m {
            if let Some(l) = live {
                if !l[i] {
                    continue;
                }
            }
            if t[i][j].is_positive() {
                let ratio = &t[i][n_total] / &t[i][j];
                match &leaving {
                    None => leaving = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < *br || (ratio == *br && basis[i] < basis[*bi]) {
                            leaving = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((i, _)) = leaving else {
            return None; // unbounded in the entering direction
        };
        pivot(t, cost, other_cost.as_deref_mut(), basis, i, j);
    }
}

fn pivot(
    t: &mut [Vec<Rat>],
    cost: &mut [Rat],
    other_cost: Option<&mut Vec<Rat>>,
    basis: &mut [usize],
    pr: usize,
    pc: usize,
) {
    let p = t[pr][pc].clone();
    if !p.is_one() {
        let inv = Rat::one() / &p;
        for v in t[pr].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
    }
    let pivot_row = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr {
            continue;
        }
        let f = row[pc].clone();
        if f.is_zero() {
            continue;
        }
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
        row[pc] = Rat::zero(); // exact zero by construction
    }
    for c in [Some(cost), other_cost.map(|c| &mut c[..])].into_iter().flatten() {
        let f = c[pc].clone();
        if !f.is_zero() {
            for (v, pv) in c.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            c[pc] = Rat::zero();
        }
    }
    basis[pr] = pc;
}

/// Solves with the inequality rows of `lazy` enforced on demand.
///
/// `lazy` rows are checked against each relaxed optimum; the most violated
/// ones (a bounded batch per round, to keep the working tableau near the
/// size of the true active set) are added and the program re-solved. The
/// final point satisfies every row exactly, and a relaxed optimum feasible
/// for the full system is optimal for it. If a relaxation comes back
/// unbounded, all remaining rows are added.
pub fn solve_lazy(lp: &LinearProgram, lazy: &[(Vec<Rat>, Rat)]) -> Result<LpSolution> {
    const BATCH: usize = 12;
    let mut work = lp.clone();
    let mut pending: Vec<(Vec<Rat>, Rat)> = lazy.to_vec();
    loop {
        let sol = solve(&work)?;
        match &sol {
            LpSolution::Infeasible => return Ok(LpSolution::Infeasible),
            LpSolution::Unbounded => {
                if pending.is_empty() {
                    return Ok(LpSolution::Unbounded);
                }
                work.ge_rows.append(&mut pending);
            }
            LpSolution::Optimal { point, .. } => {
                // (violation, index) over still-pending rows
                let mut violated: Vec<(Rat, usize)> = pending
                    .iter()
                    .enumerate()
                    .filter_map(|(i, (row, rhs))| {
                        let slack = dot(row, point) - rhs;
                        slack.is_negative().then_some((slack, i))
                    })
                    .collect();
                if violated.is_empty() {
                    return Ok(sol);
                }
                violated.sort();
                let take: Vec<usize> = violated
                    .into_iter()
                    .take(BATCH)
                    .map(|(_, i)| i)
                    .collect();
                let mut keep = Vec::with_capacity(pending.len());
                for (i, row) in pending.drain(..).enumerate() {
                    if take.contains(&i) {
                        work.ge_rows.push(row);
                    } else {
                        keep.push(row);
                    }
                }
                pending = keep;
            }
        }
    }
}

/// Deterministic vertex of the feasible region of `region` (its objective and
/// sense are ignored): optimizes a pseudo-random rational objective derived
/// from `seed`. Identical seeds give identical vertices.
pub fn vertex_sample(region: &LinearProgram, seed: u64) -> Result<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = region.num_vars();
    let objective: Vec<Rat> = (0..n)
        .map(|_| {
            let num = rng.gen_range(-24i64..=24);
            let den = rng.gen_range(1i64..=6);
            rat(num, den)
        })
        .collect();
    let mut lp = region.clone();
    lp.sense = Sense::Maximize;
    lp.objective = objective;
    match solve(&lp)? {
        LpSolution::Optimal { point, .. } => Ok(point),
        LpSolution::Infeasible => Err(Error::Infeasible("vertex_sample region".into())),
        LpSolution::Unbounded => Err(Error::MalformedProgram(
            "vertex_sample needs a bounded region".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, one, zero};

    #[test]
    fn maximize_unit_interval() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one()]);
        lp.bound_lower(0, zero()).bound_upper(0, one());
        let sol = solve(&lp).unwrap();
        assert_eq!(
            sol,
            LpSolution::Optimal {
                value: one(),
                point: vec![one()]
            }
        );
    }

    #[test]
    fn square_model_effect_budget() {
        // maximize l + m subject to l*b+ + m*c+ <= 1 at the four square
        // vertices; the binding vertex has b+ = c+ = 1, so the optimum is 1.
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
        lp.bound_lower(0, zero()).bound_lower(1, zero());
        // vertex values of (b+, c+): (1,1), (1,0), (0,0), (0,1)
        lp.le(vec![one(), one()], one());
        lp.le(vec![one(), zero()], one());
        lp.le(vec![zero(), zero()], one());
        lp.le(vec![zero(), one()], one());
        let (value, _) = solve(&lp).unwrap().into_optimal("budget").unwrap();
        assert_eq!(value, one());
    }

    #[test]
    fn infeasible_interval() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![one()]);
        lp.ge(vec![one()], one());
        lp.le(vec![one()], zero());
        assert_eq!(solve(&lp).unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one()]);
        lp.bound_lower(0, zero());
        assert_eq!(solve(&lp).unwrap(), LpSolution::Unbounded);
    }

    #[test]
    fn free_variables_split_correctly() {
        // minimize x subject to x >= -5 posed with a free variable.
        let mut lp = LinearProgram::new(Sense::Minimize, vec![one()]);
        lp.ge(vec![one()], int(-5));
        let (value, point) = solve(&lp).unwrap().into_optimal("free").unwrap();
        assert_eq!(value, int(-5));
        assert_eq!(point, vec![int(-5)]);
    }

    #[test]
    fn equality_with_negative_rhs() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![one(), one()]);
        lp.bound_lower(0, int(-10)).bound_lower(1, int(-10));
        lp.eq(vec![one(), one()], int(-3));
        let (value, point) = solve(&lp).unwrap().into_optimal("eq").unwrap();
        assert_eq!(value, int(-3));
        assert_eq!(&point[0] + &point[1], int(-3));
    }

    #[test]
    fn degenerate_rows_do_not_cycle() {
        // Klee-Minty-ish degenerate square; Bland terminates.
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(3), int(2)]);
        lp.bound_lower(0, zero()).bound_lower(1, zero());
        lp.le(vec![one(), one()], one());
        lp.le(vec![one(), zero()], one());
        lp.le(vec![zero(), one()], one());
        lp.le(vec![one(), one()], one()); // duplicate row on purpose
        let (value, _) = solve(&lp).unwrap().into_optimal("degen").unwrap();
        assert_eq!(value, int(3));
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // max x + y s.t. 3x + y <= 1, x + 3y <= 1 -> x = y = 1/4, value 1/2.
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
        lp.bound_lower(0, zero()).bound_lower(1, zero());
        lp.le(vec![int(3), one()], one());
        lp.le(vec![one(), int(3)], one());
        let (value, point) = solve(&lp).unwrap().into_optimal("frac").unwrap();
        assert_eq!(value, rat(1, 2));
        assert_eq!(point, vec![rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn lazy_rows_reach_the_same_optimum() {
        let mut full = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
        full.bound_lower(0, zero()).bound_lower(1, zero());
        full.le(vec![int(3), one()], one());
        full.le(vec![one(), int(3)], one());
        let direct = solve(&full).unwrap();

        let mut seed = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
        seed.bound_lower(0, zero()).bound_lower(1, zero());
        let lazy = vec![
            (vec![int(-3), -one()], -one()),
            (vec![-one(), int(-3)], -one()),
        ];
        let lazy_sol = solve_lazy(&seed, &lazy).unwrap();
        assert_eq!(direct, lazy_sol);
    }

    #[test]
    fn vertex_sample_is_deterministic_and_feasible() {
        let mut region = LinearProgram::new(Sense::Minimize, vec![zero(), zero()]);
        region.bound_lower(0, zero()).bound_upper(0, one());
        region.bound_lower(1, zero()).bound_upper(1, one());
        let a = vertex_sample(&region, 7).unwrap();
        let b = vertex_sample(&region, 7).unwrap();
        assert_eq!(a, b);
        for x in &a {
            assert!(*x == zero() || *x == one()); // unit square corners
        }
    }

    #[test]
    fn solution_satisfies_all_constraints_exactly() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(2), int(5), -one()]);
        lp.bound_lower(0, zero());
        lp.bound_lower(1, int(-2)).bound_upper(1, rat(7, 2));
        lp.eq(vec![one(), one(), one()], int(4));
        lp.ge(vec![zero(), one(), int(2)], -one());
        let (_, point) = solve(&lp).unwrap().into_optimal("check").unwrap();
        assert_eq!(dot(&[one(), one(), one()], &point), int(4));
        assert!(dot(&[zero(), one(), int(2)], &point) >= -one());
        assert!(point[0] >= zero());
        assert!(point[1] >= int(-2) && point[1] <= rat(7, 2));
    }
}
