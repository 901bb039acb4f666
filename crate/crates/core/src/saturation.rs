//! Complete, certificate-producing decision procedures: nonnegative-integer
//! feasibility, rational cone membership, saturatedness of a finite vector
//! set, and hereditary normality.
//!
//! The saturation search walks every linearly independent subset B of the
//! input, enumerates the lattice points of the half-open fundamental
//! parallelepiped of B, and asks the complete Diophantine solver whether
//! each nonzero point is a nonnegative integer combination of the set. Any
//! failure is packaged as a self-verifying witness (the extended
//! non-saturated-subset data: rational box coefficients over an independent
//! subset, an integer combination, and a refutation). Completeness of the
//! box search rests on the fact that a non-saturated set always admits such
//! a witness with coefficients in [0,1) over an independent subset.
//!
//! The hereditary search additionally closes each (B, v0) pair over minimal
//! completions S = B ∪ T with v0 in the integer span of S. The family of
//! such S is upward closed and nonnegative representability only grows with
//! S, so testing the minimal members is enough.

use crate::error::{Error, Result};
use crate::linalg::{
    in_integer_span, lattice_points_in_box, rank_of_rows, ExactMatrix, ExactVector, LatticeBasis,
};
use crate::lp::{cone_member, simplex_min, ConeOutcome, SimplexOutcome};
use crate::rat::{denominator_lcm, floor_int, Int, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const DEFAULT_SET_CAP: usize = 32;
pub const DEFAULT_HEREDITARY_CAP: usize = 26;
pub const DEFAULT_SYMMETRY_CAP: usize = 2_000_000;

/// An ordered, duplicate-free set of rational vectors of equal dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorSet {
    pub dim: usize,
    pub vectors: Vec<ExactVector>,
}

impl VectorSet {
    pub fn new(dim: usize, vectors: Vec<ExactVector>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
            if seen.insert(v.clone()) {
                out.push(v);
            }
        }
        Ok(VectorSet { dim, vectors: out })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// How a witness refutes nonnegative-integer representability of `v0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Refutation {
    /// The complete solver exhausted the search space.
    CompleteSolver,
    /// A linear functional whose value at `v0` is not a nonnegative integer
    /// combination of its values on the set.
    Discriminating { functional: ExactVector },
}

/// Witness that a set is not saturated: an extended non-saturated subset.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnssWitness {
    pub v0: ExactVector,
    /// The vectors v1..vr of the non-saturated set.
    pub subset: Vec<ExactVector>,
    /// Indices (into `subset`) of a linearly independent family expressing
    /// v0 rationally.
    pub independent_indices: Vec<usize>,
    /// Coefficients in [0,1) aligned with `independent_indices`.
    pub rational_coeffs: ExactVector,
    /// Integer coefficients aligned with `subset`.
    pub integer_coeffs: ExactVector,
    pub refutation: Refutation,
}

/// Re-checks a witness from scratch: independence, box coefficients, both
/// combinations, and the complete-solver refutation.
pub fn verify_witness(w: &EnssWitness) -> Result<()> {
    let fail = |reason: &str| Err(Error::InvalidInput(format!("witness check failed: {reason}")));
    if w.independent_indices.len() != w.rational_coeffs.dim() {
        return fail("independent index / coefficient arity mismatch");
    }
    let ind: Vec<ExactVector> = w
        .independent_indices
        .iter()
        .map(|&i| w.subset[i].clone())
        .collect();
    if rank_of_rows(&ind) != ind.len() {
        return fail("chosen vectors are not linearly independent");
    }
    let one = Rat::one();
    for c in w.rational_coeffs.iter() {
        if c.is_negative() || *c >= one {
            return fail("rational coefficient outside [0,1)");
        }
    }
    let mut acc = ExactVector::zeros(w.v0.dim());
    for (c, v) in w.rational_coeffs.iter().zip(&ind) {
        acc = acc.add_scaled(c, v);
    }
    if acc != w.v0 {
        return fail("rational combination does not reproduce v0");
    }
    if w.integer_coeffs.dim() != w.subset.len() {
        return fail("integer coefficient arity mismatch");
    }
    if !w.integer_coeffs.is_integral() {
        return fail("integer coefficients are not integers");
    }
    let mut acc = ExactVector::zeros(w.v0.dim());
    for (c, v) in w.integer_coeffs.iter().zip(&w.subset) {
        acc = acc.add_scaled(c, v);
    }
    if acc != w.v0 {
        return fail("integer combination does not reproduce v0");
    }
    if w.v0.is_zero() {
        return fail("v0 is zero");
    }
    if let Refutation::Discriminating { functional } = &w.refutation {
        if !verify_discriminating(functional, &w.v0, &VectorSet::new(w.v0.dim(), w.subset.clone())?)? {
            return fail("discriminating functional does not refute");
        }
    }
    // Always replay the complete solver.
    let a = ExactMatrix::from_columns(&w.subset)?;
    if nonneg_integer_solve(&a, &w.v0).is_some() {
        return fail("v0 is a nonnegative integer combination after all");
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturationStatus {
    Saturated,
    NotSaturated,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub boxes_enumerated: u64,
    pub candidate_points: u64,
    pub solver_calls: u64,
    pub completions_tested: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.boxes_enumerated += other.boxes_enumerated;
        self.candidate_points += other.candidate_points;
        self.solver_calls += other.solver_calls;
        self.completions_tested += other.completions_tested;
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SaturationVerdict {
    pub status: SaturationStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<EnssWitness>,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug)]
pub struct SaturationOptions {
    pub set_cap: usize,
    pub parallel: usize,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            set_cap: DEFAULT_SET_CAP,
            parallel: 1,
        }
    }
}

// ---------------------------------------------------------------------------
// Complete nonnegative integer solver
// ---------------------------------------------------------------------------

/// Finds `n >= 0` integral with `a * n = b`, or proves there is none.
///
/// The columns of `a` are the generators. The procedure is complete and
/// terminates on every input: lineality directions of the relaxation are
/// eliminated by branching on a nonnegative integer kernel vector (any
/// solution can be shifted down by it until some supported coordinate drops
/// below the kernel value), and the remaining pointed problems are solved by
/// depth-first search with exact LP bounds plus integer-lattice pruning.
/// Deterministic: the returned solution is the lexicographically smallest.
pub fn nonneg_integer_solve(a: &ExactMatrix, b: &ExactVector) -> Option<Vec<Int>> {
    if a.nrows() != b.dim() {
        return None;
    }
    let s = a.ncols();
    let cols: Vec<ExactVector> = (0..s)
        .map(|j| ExactVector::new((0..a.nrows()).map(|i| a.get(i, j).clone()).collect()))
        .collect();
    // Clear denominators jointly; scaling both sides preserves solutions.
    let scale = denominator_lcm(cols.iter().flat_map(|c| c.iter()).chain(b.iter()));
    let scale_r = Rat::from_integer(scale);
    let cols: Vec<ExactVector> = cols.iter().map(|c| c.scale(&scale_r)).collect();
    let target = b.scale(&scale_r);
    let mut bounds: Vec<Option<Int>> = vec![None; s];
    solve_kernel_branched(&cols, &target, &mut bounds)
}

fn solve_kernel_branched(
    cols: &[ExactVector],
    target: &ExactVector,
    bounds: &mut Vec<Option<Int>>,
) -> Option<Vec<Int>> {
    match find_nonneg_kernel(cols, bounds) {
        Some(kernel) => {
            // Any solution can be reduced modulo the kernel vector until one
            // of its supported coordinates is below the kernel entry.
            let support: Vec<usize> = (0..cols.len())
                .filter(|&j| kernel[j].is_positive())
                .collect();
            for &j in &support {
                let saved = bounds[j].take();
                debug_assert!(saved.is_none(), "kernel support must be unbounded");
                bounds[j] = Some(&kernel[j] - Int::one());
                if let Some(sol) = solve_kernel_branched(cols, target, bounds) {
                    bounds[j] = saved;
                    return Some(sol);
                }
                bounds[j] = saved;
            }
            None
        }
        None => {
            let mut assignment: Vec<Int> = Vec::with_capacity(cols.len());
            dfs_pointed(cols, target.clone(), bounds, &mut assignment)
        }
    }
}

/// Nonzero integer `k >= 0` with `Σ k_j cols_j = 0` supported on unbounded
/// coordinates, if one exists.
fn find_nonneg_kernel(cols: &[ExactVector], bounds: &[Option<Int>]) -> Option<Vec<Int>> {
    let free: Vec<usize> = (0..cols.len()).filter(|&j| bounds[j].is_none()).collect();
    if free.is_empty() {
        return None;
    }
    let dim = cols[0].dim();
    // Rows: ambient equalities = 0, then q_j + slack_j = 1 per free var.
    let n_vars = free.len() * 2;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim + free.len());
    let mut rhs: Vec<Rat> = Vec::with_capacity(dim + free.len());
    for i in 0..dim {
        let mut row = vec![Rat::zero(); n_vars];
        for (k, &j) in free.iter().enumerate() {
            row[k] = cols[j][i].clone();
        }
        rows.push(row);
        rhs.push(Rat::zero());
    }
    for k in 0..free.len() {
        let mut row = vec![Rat::zero(); n_vars];
        row[k] = Rat::one();
        row[free.len() + k] = Rat::one();
        rows.push(row);
        rhs.push(Rat::one());
    }
    let mut costs = vec![Rat::zero(); n_vars];
    for k in 0..free.len() {
        costs[k] = -Rat::one();
    }
    match simplex_min(&rows, &rhs, &costs) {
        SimplexOutcome::Optimal { x, objective } => {
            if !objective.is_negative() {
                return None;
            }
            let q: Vec<Rat> = x[..free.len()].to_vec();
            let scale = denominator_lcm(q.iter());
            let scale_r = Rat::from_integer(scale);
            let mut k = vec![Int::zero(); cols.len()];
            for (idx, &j) in free.iter().enumerate() {
                k[j] = (&q[idx] * &scale_r).to_integer();
            }
            debug_assert!(k.iter().any(|e| e.is_positive()));
            debug_assert!(k.iter().all(|e| !e.is_negative()));
            debug_assert!({
                let mut acc = ExactVector::zeros(dim);
                for (kj, c) in k.iter().zip(cols) {
                    acc = acc.add_scaled(&Rat::from_integer(kj.clone()), c);
                }
                acc.is_zero()
            });
            Some(k)
        }
        _ => None,
    }
}

/// DFS over variables in index order; the feasible region is bounded in
/// every remaining coordinate once no free nonnegative kernel exists.
fn dfs_pointed(
    cols: &[ExactVector],
    residual: ExactVector,
    bounds: &[Option<Int>],
    assignment: &mut Vec<Int>,
) -> Option<Vec<Int>> {
    let t = assignment.len();
    if residual.is_zero() {
        let mut sol = assignment.clone();
        sol.resize(cols.len(), Int::zero());
        return Some(sol);
    }
    if t == cols.len() {
        return None;
    }
    let rest = &cols[t..];
    in_integer_span(rest, &residual)?;
    // None from the LP means the residual left the rational cone: prune.
    let max = lp_max_first_var(rest, &residual, &bounds[t..])?;
    let mut hi = floor_int(&max);
    if let Some(b) = &bounds[t] {
        if b < &hi {
            hi = b.clone();
        }
    }
    let mut value = Int::zero();
    while value <= hi {
        let mut res = residual.clone();
        if value.is_positive() {
            res = res.add_scaled(&-Rat::from_integer(value.clone()), &cols[t]);
        }
        assignment.push(value.clone());
        if let Some(sol) = dfs_pointed(cols, res, bounds, assignment) {
            return Some(sol);
        }
        assignment.pop();
        value += 1;
    }
    None
}

/// Max of the first coordinate of `{q >= 0 : Σ q_j rest_j = residual, q_j <=
/// bound_j}`; `None` when infeasible. Finite by kernel elimination.
fn lp_max_first_var(
    rest: &[ExactVector],
    residual: &ExactVector,
    bounds: &[Option<Int>],
) -> Option<Rat> {
    let dim = residual.dim();
    let bounded: Vec<usize> = (0..rest.len()).filter(|&j| bounds[j].is_some()).collect();
    let n_vars = rest.len() + bounded.len();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(dim + bounded.len());
    let mut rhs: Vec<Rat> = Vec::with_capacity(dim + bounded.len());
    for i in 0..dim {
        let mut row = vec![Rat::zero(); n_vars];
        for (j, c) in rest.iter().enumerate() {
            row[j] = c[i].clone();
        }
        rows.push(row);
        rhs.push(residual[i].clone());
    }
    for (k, &j) in bounded.iter().enumerate() {
        let mut row = vec![Rat::zero(); n_vars];
        row[j] = Rat::one();
        row[rest.len() + k] = Rat::one();
        rows.push(row);
        rhs.push(Rat::from_integer(bounds[j].clone().expect("bounded")));
    }
    let mut costs = vec![Rat::zero(); n_vars];
    costs[0] = -Rat::one();
    match simplex_min(&rows, &rhs, &costs) {
        SimplexOutcome::Optimal { objective, .. } => Some(-objective),
        SimplexOutcome::Unbounded { .. } => {
            unreachable!("kernel elimination keeps the region bounded")
        }
        SimplexOutcome::Infeasible { .. } => None,
    }
}

// ---------------------------------------------------------------------------
// Rational cone membership
// ---------------------------------------------------------------------------

/// Either nonnegative rational coefficients for `v` over the set, or an
/// exact separating functional (Farkas certificate). Exactly one of the two.
pub fn in_rational_cone(s: &VectorSet, v: &ExactVector) -> ConeOutcome {
    cone_member(&s.vectors, v)
}

/// True iff `f(v0)` is not a nonnegative integer combination of the values
/// `f(s_i)`; a `true` certifies `v0 ∉ Z_{>=0}(s)`. Values must be integers.
pub fn verify_discriminating(f: &ExactVector, v0: &ExactVector, s: &VectorSet) -> Result<bool> {
    let value_v0 = f.dot(v0);
    let values: Vec<Rat> = s.vectors.iter().map(|v| f.dot(v)).collect();
    if !value_v0.denom().is_one() || values.iter().any(|x| !x.denom().is_one()) {
        return Err(Error::InvalidInput(
            "discriminating functional must take integer values on the inputs".into(),
        ));
    }
    let a = ExactMatrix::from_rows(vec![ExactVector::new(values)])?.transpose();
    // One row, |s| columns: a 1-dimensional complete solve.
    let a = a.transpose();
    let b = ExactVector::new(vec![value_v0]);
    Ok(nonneg_integer_solve(&a, &b).is_none())
}

// ---------------------------------------------------------------------------
// Saturation decision
// ---------------------------------------------------------------------------

struct SatContext<'a> {
    set: &'a VectorSet,
    lattice: LatticeBasis,
    cols: ExactMatrix,
    cache: HashMap<ExactVector, bool>,
    stats: SearchStats,
}

impl<'a> SatContext<'a> {
    fn solvable(&mut self, v0: &ExactVector) -> bool {
        if let Some(&hit) = self.cache.get(v0) {
            return hit;
        }
        self.stats.solver_calls += 1;
        let ans = nonneg_integer_solve(&self.cols, v0).is_some();
        self.cache.insert(v0.clone(), ans);
        ans
    }
}

/// Decides whether `s` is saturated; a negative answer carries a
/// self-verifying witness found in deterministic order (independent subsets
/// in lexicographic index order, box points in coefficient order).
pub fn is_saturated(s: &VectorSet, opts: &SaturationOptions) -> Result<SaturationVerdict> {
    if s.len() > opts.set_cap {
        return Err(Error::SetCapExceeded {
            size: s.len(),
            cap: opts.set_cap,
        });
    }
    let nonzero: Vec<&ExactVector> = s.vectors.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(SaturationVerdict {
            status: SaturationStatus::Saturated,
            witness: None,
            stats: SearchStats::default(),
        });
    }
    let lattice = LatticeBasis::from_generators(&s.vectors, s.dim)?;
    let fresh_ctx = || -> Result<SatContext<'_>> {
        Ok(SatContext {
            set: s,
            lattice: lattice.clone(),
            cols: ExactMatrix::from_columns(&s.vectors)?,
            cache: HashMap::new(),
            stats: SearchStats::default(),
        })
    };
    let (witness, stats) = if opts.parallel > 1 {
        // One task per leading index. Every task runs to completion and the
        // fold keeps the first hit in task order, so the witness matches the
        // serial run exactly.
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        use rayon::prelude::*;
        let results: Vec<Result<(Option<EnssWitness>, SearchStats)>> = pool.install(|| {
            (0..s.len())
                .into_par_iter()
                .map(|j| {
                    let mut ctx = fresh_ctx()?;
                    let mut prefix = Vec::new();
                    let w = sat_process(&mut ctx, &mut prefix, j)?;
                    Ok((w, ctx.stats))
                })
                .collect()
        });
        fold_task_results(results)?
    } else {
        let mut ctx = fresh_ctx()?;
        let mut prefix: Vec<usize> = Vec::new();
        let witness = sat_dfs(&mut ctx, &mut prefix, 0)?;
        (witness, ctx.stats)
    };
    Ok(SaturationVerdict {
        status: if witness.is_some() {
            SaturationStatus::NotSaturated
        } else {
            SaturationStatus::Saturated
        },
        witness,
        stats,
    })
}

/// Keeps the stats of all tasks up to and including the first hit.
fn fold_task_results<W>(
    results: Vec<Result<(Option<W>, SearchStats)>>,
) -> Result<(Option<W>, SearchStats)> {
    let mut stats = SearchStats::default();
    for r in results {
        let (w, s) = r?;
        stats.absorb(&s);
        if w.is_some() {
            return Ok((w, stats));
        }
    }
    Ok((None, stats))
}

fn sat_dfs(
    ctx: &mut SatContext<'_>,
    prefix: &mut Vec<usize>,
    start: usize,
) -> Result<Option<EnssWitness>> {
    for j in start..ctx.set.len() {
        if let Some(w) = sat_process(ctx, prefix, j)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Handles the subtree of independent subsets whose next element is `j`.
fn sat_process(
    ctx: &mut SatContext<'_>,
    prefix: &mut Vec<usize>,
    j: usize,
) -> Result<Option<EnssWitness>> {
    if ctx.set.vectors[j].is_zero() {
        return Ok(None);
    }
    let mut b: Vec<ExactVector> = prefix.iter().map(|&i| ctx.set.vectors[i].clone()).collect();
    b.push(ctx.set.vectors[j].clone());
    if rank_of_rows(&b) != b.len() {
        return Ok(None);
    }
    prefix.push(j);
    ctx.stats.boxes_enumerated += 1;
    let points = lattice_points_in_box(&b, &ctx.lattice)?;
    for bp in &points {
        if bp.point.is_zero() {
            continue;
        }
        ctx.stats.candidate_points += 1;
        if !ctx.solvable(&bp.point) {
            let witness = build_witness(
                ctx.set,
                prefix,
                &bp.point,
                &bp.coeffs,
                Refutation::CompleteSolver,
            );
            prefix.pop();
            return Ok(Some(witness?));
        }
    }
    let deeper = sat_dfs(ctx, prefix, j + 1)?;
    prefix.pop();
    Ok(deeper)
}

fn build_witness(
    set: &VectorSet,
    independent: &[usize],
    v0: &ExactVector,
    coeffs: &[Rat],
    refutation: Refutation,
) -> Result<EnssWitness> {
    let integer = in_integer_span(&set.vectors, v0).ok_or_else(|| {
        Error::InvalidInput("candidate point is not in the integer span of the set".into())
    })?;
    let w = EnssWitness {
        v0: v0.clone(),
        subset: set.vectors.clone(),
        independent_indices: independent.to_vec(),
        rational_coeffs: ExactVector::new(coeffs.to_vec()),
        integer_coeffs: ExactVector::new(integer.into_iter().map(Rat::from_integer).collect()),
        refutation,
    };
    verify_witness(&w)?;
    Ok(w)
}

// ---------------------------------------------------------------------------
// Hereditary normality
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HereditaryStatus {
    Normal,
    NotNormal {
        /// Indices (into the zero-stripped input list) of the violating
        /// subset.
        subset_indices: Vec<usize>,
        witness: EnssWitness,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HereditaryVerdict {
    #[serde(flatten)]
    pub status: HereditaryStatus,
    pub stats: SearchStats,
}

impl HereditaryVerdict {
    pub fn is_normal(&self) -> bool {
        matches!(self.status, HereditaryStatus::Normal)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HereditaryOptions {
    pub set_cap: usize,
    pub parallel: usize,
}

impl Default for HereditaryOptions {
    fn default() -> Self {
        HereditaryOptions {
            set_cap: DEFAULT_HEREDITARY_CAP,
            parallel: 1,
        }
    }
}

struct HereditaryContext<'a> {
    vectors: &'a [ExactVector],
    lattice: LatticeBasis,
    /// Group of index permutations stabilizing the vector set (identity only
    /// when no symmetry was supplied).
    group: Vec<Vec<usize>>,
    cache: HashMap<(Vec<usize>, ExactVector), bool>,
    stats: SearchStats,
}

impl<'a> HereditaryContext<'a> {
    fn solvable(&mut self, subset: &[usize], v0: &ExactVector) -> Result<bool> {
        let key = (subset.to_vec(), v0.clone());
        if let Some(&hit) = self.cache.get(&key) {
            return Ok(hit);
        }
        self.stats.solver_calls += 1;
        let vecs: Vec<ExactVector> = subset.iter().map(|&i| self.vectors[i].clone()).collect();
        let a = ExactMatrix::from_columns(&vecs)?;
        let ans = nonneg_integer_solve(&a, v0).is_some();
        self.cache.insert(key, ans);
        Ok(ans)
    }

    fn is_canonical(&self, b: &[usize]) -> bool {
        if self.group.len() <= 1 {
            return true;
        }
        let mut image = Vec::with_capacity(b.len());
        for g in &self.group {
            image.clear();
            image.extend(b.iter().map(|&i| g[i]));
            image.sort_unstable();
            if image.as_slice() < b {
                return false;
            }
        }
        true
    }
}

/// Decides hereditary normality of `m`: every subset saturated, or a
/// violating subset with its witness. Zero vectors are dropped up front
/// (they never affect saturation). Optional symmetry generators must map the
/// set to itself; orbits of independent subsets are then searched once.
pub fn is_hereditarily_normal(
    m: &VectorSet,
    symmetry: Option<&[ExactMatrix]>,
    opts: &HereditaryOptions,
) -> Result<HereditaryVerdict> {
    let vectors: Vec<ExactVector> = m.vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    if vectors.len() > opts.set_cap {
        return Err(Error::SetCapExceeded {
            size: vectors.len(),
            cap: opts.set_cap,
        });
    }
    if vectors.is_empty() {
        return Ok(HereditaryVerdict {
            status: HereditaryStatus::Normal,
            stats: SearchStats::default(),
        });
    }
    let lattice = LatticeBasis::from_generators(&vectors, m.dim)?;
    let group = match symmetry {
        Some(gens) => close_symmetry_group(&vectors, gens)?,
        None => vec![(0..vectors.len()).collect()],
    };
    let (violation, stats) = if opts.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        use rayon::prelude::*;
        let results: Vec<Result<(Option<(Vec<usize>, EnssWitness)>, SearchStats)>> =
            pool.install(|| {
                (0..vectors.len())
                    .into_par_iter()
                    .map(|j| {
                        let mut ctx = HereditaryContext {
                            vectors: &vectors,
                            lattice: lattice.clone(),
                            group: group.clone(),
                            cache: HashMap::new(),
                            stats: SearchStats::default(),
                        };
                        let mut prefix = Vec::new();
                        let v = hereditary_process(&mut ctx, &mut prefix, j)?;
                        Ok((v, ctx.stats))
                    })
                    .collect()
            });
        fold_task_results(results)?
    } else {
        let mut ctx = HereditaryContext {
            vectors: &vectors,
            lattice,
            group,
            cache: HashMap::new(),
            stats: SearchStats::default(),
        };
        let mut prefix = Vec::new();
        let violation = hereditary_dfs(&mut ctx, &mut prefix, 0)?;
        (violation, ctx.stats)
    };
    Ok(HereditaryVerdict {
        status: match violation {
            Some((subset_indices, witness)) => HereditaryStatus::NotNormal {
                subset_indices,
                witness,
            },
            None => HereditaryStatus::Normal,
        },
        stats,
    })
}

fn hereditary_dfs(
    ctx: &mut HereditaryContext<'_>,
    prefix: &mut Vec<usize>,
    start: usize,
) -> Result<Option<(Vec<usize>, EnssWitness)>> {
    for j in start..ctx.vectors.len() {
        if let Some(found) = hereditary_process(ctx, prefix, j)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn hereditary_process(
    ctx: &mut HereditaryContext<'_>,
    prefix: &mut Vec<usize>,
    j: usize,
) -> Result<Option<(Vec<usize>, EnssWitness)>> {
    let mut b: Vec<ExactVector> = prefix.iter().map(|&i| ctx.vectors[i].clone()).collect();
    b.push(ctx.vectors[j].clone());
    if rank_of_rows(&b) != b.len() {
        return Ok(None);
    }
    prefix.push(j);
    if ctx.is_canonical(prefix) {
        ctx.stats.boxes_enumerated += 1;
        let points = lattice_points_in_box(&b, &ctx.lattice)?;
        for bp in &points {
            if bp.point.is_zero() {
                continue;
            }
            ctx.stats.candidate_points += 1;
            if let Some(found) = test_completions(ctx, prefix, &b, &bp.point, &bp.coeffs)? {
                prefix.pop();
                return Ok(Some(found));
            }
        }
    }
    let deeper = hereditary_dfs(ctx, prefix, j + 1)?;
    prefix.pop();
    Ok(deeper)
}

/// Enumerates the minimal completions S = B ∪ T with v0 ∈ Z(S) and tests
/// each against the complete solver, in (size, lex) order.
fn test_completions(
    ctx: &mut HereditaryContext<'_>,
    b_indices: &[usize],
    b_vectors: &[ExactVector],
    v0: &ExactVector,
    coeffs: &[Rat],
) -> Result<Option<(Vec<usize>, EnssWitness)>> {
    // Strictly growing completion chains: every added element must enlarge
    // the integer span, and a chain stops the moment v0 becomes a member.
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut t_stack: Vec<usize> = Vec::new();
    collect_completions(
        ctx,
        b_indices,
        b_vectors.to_vec(),
        v0,
        0,
        &mut t_stack,
        &mut candidates,
    )?;
    candidates.sort_by(|x, y| (x.len(), x.as_slice()).cmp(&(y.len(), y.as_slice())));
    for t in candidates {
        let mut subset_indices: Vec<usize> = b_indices.to_vec();
        subset_indices.extend(&t);
        subset_indices.sort_unstable();
        ctx.stats.completions_tested += 1;
        if !ctx.solvable(&subset_indices, v0)? {
            // Genuine violation; package it.
            let subset_vectors: Vec<ExactVector> = subset_indices
                .iter()
                .map(|&i| ctx.vectors[i].clone())
                .collect();
            let sub_set = VectorSet::new(v0.dim(), subset_vectors)?;
            let independent: Vec<usize> = b_indices
                .iter()
                .map(|bi| subset_indices.iter().position(|x| x == bi).expect("b in subset"))
                .collect();
            let w = EnssWitness {
                v0: v0.clone(),
                subset: sub_set.vectors.clone(),
                independent_indices: independent,
                rational_coeffs: ExactVector::new(coeffs.to_vec()),
                integer_coeffs: ExactVector::new(
                    in_integer_span(&sub_set.vectors, v0)
                        .expect("v0 in Z(S) by construction")
                        .into_iter()
                        .map(Rat::from_integer)
                        .collect(),
                ),
                refutation: Refutation::CompleteSolver,
            };
            verify_witness(&w)?;
            return Ok(Some((subset_indices, w)));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn collect_completions(
    ctx: &HereditaryContext<'_>,
    b_indices: &[usize],
    current_vectors: Vec<ExactVector>,
    v0: &ExactVector,
    start: usize,
    t_stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    for t in start..ctx.vectors.len() {
        if b_indices.contains(&t) {
            continue;
        }
        let cand = &ctx.vectors[t];
        // Minimal completions grow the integer span at every element.
        if in_integer_span(&current_vectors, cand).is_some() {
            continue;
        }
        let mut next = current_vectors.clone();
        next.push(cand.clone());
        t_stack.push(t);
        if in_integer_span(&next, v0).is_some() {
            out.push(t_stack.clone());
            // Supersets are never minimal; do not extend this chain.
        } else {
            collect_completions(ctx, b_indices, next, v0, t + 1, t_stack, out)?;
        }
        t_stack.pop();
    }
    Ok(())
}

/// Closes the given ambient symmetry generators into a permutation group on
/// the vector list. Every generator must map the set bijectively to itself.
fn close_symmetry_group(
    vectors: &[ExactVector],
    gens: &[ExactMatrix],
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&ExactVector, usize> =
        vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut gen_perms: Vec<Vec<usize>> = Vec::with_capacity(gens.len());
    for g in gens {
        let mut perm = Vec::with_capacity(vectors.len());
        for v in vectors {
            let img = g.mul_vec(v);
            match index.get(&img) {
                Some(&i) => perm.push(i),
                None => return Err(Error::BadSymmetry),
            }
        }
        let mut check: Vec<usize> = perm.clone();
        check.sort_unstable();
        if check != (0..vectors.len()).collect::<Vec<_>>() {
            return Err(Error::BadSymmetry);
        }
        gen_perms.push(perm);
    }
    let identity: Vec<usize> = (0..vectors.len()).collect();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(cur) = queue.pop_front() {
        for g in &gen_perms {
            let comp: Vec<usize> = cur.iter().map(|&x| g[x]).collect();
            if !seen.contains(&comp) {
                if seen.len() >= DEFAULT_SYMMETRY_CAP {
                    return Err(Error::GroupCapExceeded {
                        cap: DEFAULT_SYMMETRY_CAP,
                        reached: seen.len() + 1,
                    });
                }
                seen.insert(comp.clone());
                queue.push_back(comp);
            }
        }
    }
    let mut group: Vec<Vec<usize>> = seen.into_iter().collect();
    group.sort();
    Ok(group)
}
