//! Exact rational linear programming.
//!
//! A small dense two-phase simplex over `BigRational` with Bland's rule, so
//! every run terminates and is deterministic. Infeasibility always comes with
//! a Farkas certificate and unboundedness with an explicit ray; callers treat
//! those certificates as the actual output and re-verify them.

use crate::linalg::ExactVector;
use crate::rat::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub enum SimplexOutcome {
    /// Minimizer of `c^T x` over `{x >= 0 : A x = b}`.
    Optimal { x: Vec<Rat>, objective: Rat },
    /// Feasible direction `d >= 0` with `A d = 0` and `c^T d < 0`.
    Unbounded { ray: Vec<Rat> },
    /// `y` with `y^T A <= 0` componentwise and `y^T b > 0`.
    Infeasible { farkas: Vec<Rat> },
}

struct Tableau {
    /// m x n_total current tableau (B^{-1} * A_ext).
    t: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn reduced_cost(&self, costs: &[Rat], j: usize) -> Rat {
        let mut rc = costs[j].clone();
        for (i, &bi) in self.basis.iter().enumerate() {
            if !costs[bi].is_zero() && !self.t[i][j].is_zero() {
                rc -= &costs[bi] * &self.t[i][j];
            }
        }
        rc
    }

    fn objective(&self, costs: &[Rat]) -> Rat {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &bi)| &costs[bi] * &self.rhs[i])
            .sum()
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for j in 0..self.ncols {
            self.t[row][j] = &self.t[row][j] / &p;
        }
        self.rhs[row] = &self.rhs[row] / &p;
        for i in 0..self.t.len() {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let f = self.t[i][col].clone();
            for j in 0..self.ncols {
                let sub = &f * &self.t[row][j];
                self.t[i][j] -= sub;
            }
            let sub = &f * &self.rhs[row];
            self.rhs[i] -= sub;
        }
        self.basis[row] = col;
    }

    /// Bland's rule loop; `eligible` bounds the columns that may enter.
    /// Returns None on optimality, or the entering column of an unbounded
    /// direction.
    fn run(&mut self, costs: &[Rat], eligible: usize) -> Option<usize> {
        loop {
            let j = (0..eligible)
                .find(|&j| !self.basis.contains(&j) && self.reduced_cost(costs, j).is_negative())?;
            // Ratio test, ties broken by smallest basic variable index.
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.t.len() {
                if self.t[i][j].is_positive() {
                    let ratio = &self.rhs[i] / &self.t[i][j];
                    let replace = match &best {
                        None => true,
                        Some((r, bi, _)) => {
                            ratio < *r || (ratio == *r && self.basis[i] < *bi)
                        }
                    };
                    if replace {
                        best = Some((ratio, self.basis[i], i));
                    }
                }
            }
            match best {
                Some((_, _, row)) => self.pivot(row, j),
                None => return Some(j),
            }
        }
    }

    fn extract_x(&self, n: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); n];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < n {
                x[bi] = self.rhs[i].clone();
            }
        }
        x
    }

    fn ray(&self, n: usize, entering: usize) -> Vec<Rat> {
        let mut d = vec![Rat::zero(); n];
        if entering < n {
            d[entering] = Rat::one();
        }
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < n {
                d[bi] = -self.t[i][entering].clone();
            }
        }
        d
    }
}

/// Minimize `c^T x` subject to `A x = b`, `x >= 0` (A given by rows).
pub fn simplex_min(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> SimplexOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);
    if m == 0 {
        return SimplexOutcome::Optimal {
            x: vec![Rat::zero(); n],
            objective: Rat::zero(),
        };
    }

    // Sign-normalize so rhs >= 0, then append artificial columns.
    let mut signs = vec![false; m];
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        signs[i] = flip;
        let mut row: Vec<Rat> = a[i]
            .iter()
            .map(|e| if flip { -e.clone() } else { e.clone() })
            .collect();
        for j in 0..m {
            row.push(if j == i { Rat::one() } else { Rat::zero() });
        }
        t.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let ncols = n + m;
    let mut tab = Tableau {
        t,
        rhs,
        basis: (n..ncols).collect(),
        ncols,
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1_costs = vec![Rat::zero(); ncols];
    for j in n..ncols {
        phase1_costs[j] = Rat::one();
    }
    let unbounded = tab.run(&phase1_costs, n);
    debug_assert!(unbounded.is_none(), "phase 1 is always bounded below by 0");
    let p1_obj = tab.objective(&phase1_costs);
    if p1_obj.is_positive() {
        // Infeasible. Dual y (in normalized orientation): y_i = cB^T tab[., n+i].
        let mut farkas = vec![Rat::zero(); m];
        for i in 0..m {
            let mut y = Rat::zero();
            for (r, &br) in tab.basis.iter().enumerate() {
                if !phase1_costs[br].is_zero() && !tab.t[r][n + i].is_zero() {
                    y += &phase1_costs[br] * &tab.t[r][n + i];
                }
            }
            // Undo the row sign flip.
            farkas[i] = if signs[i] { -y } else { y };
        }
        return SimplexOutcome::Infeasible { farkas };
    }

    // Drive artificials out of the basis (or drop redundant rows).
    let mut row = 0;
    while row < tab.t.len() {
        if tab.basis[row] >= n {
            match (0..n).find(|&j| !tab.t[row][j].is_zero()) {
                Some(j) => tab.pivot(row, j),
                None => {
                    tab.t.remove(row);
                    tab.rhs.remove(row);
                    tab.basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }

    // Phase 2 with the real costs (artificial columns may not re-enter).
    let mut phase2_costs = c.to_vec();
    phase2_costs.resize(ncols, Rat::zero());
    match tab.run(&phase2_costs, n) {
        Some(entering) => SimplexOutcome::Unbounded {
            ray: tab.ray(n, entering),
        },
        None => {
            let x = tab.extract_x(n);
            let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
            SimplexOutcome::Optimal { x, objective }
        }
    }
}

/// Outcome of an exact cone-membership query.
#[derive(Clone, Debug)]
pub enum ConeOutcome {
    /// `v = Σ q_i g_i` with all `q_i >= 0`.
    Member(Vec<Rat>),
    /// Functional `f` with `f(v) < 0 <= f(g_i)` for every generator.
    Separated(ExactVector),
}

/// Decides `v ∈ Q_{>=0}(gens)` with a verified certificate either way.
pub fn cone_member(gens: &[ExactVector], v: &ExactVector) -> ConeOutcome {
    let n = v.dim();
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    let b: Vec<Rat> = v.iter().cloned().collect();
    let c = vec![Rat::zero(); gens.len()];
    match simplex_min(&a, &b, &c) {
        SimplexOutcome::Optimal { x, .. } => {
            debug_assert!(verify_combination(gens, &x, v));
            ConeOutcome::Member(x)
        }
        SimplexOutcome::Infeasible { farkas } => {
            // farkas has y^T g_j <= 0 and y^T v > 0; flip to the separating form.
            let f = ExactVector::new(farkas.iter().map(|y| -y.clone()).collect());
            debug_assert!(verify_separation(gens, v, &f));
            ConeOutcome::Separated(f)
        }
        SimplexOutcome::Unbounded { .. } => unreachable!("feasibility LP has zero objective"),
    }
}

/// Checks `Σ q_i g_i = v` with `q_i >= 0` by direct multiplication.
pub fn verify_combination(gens: &[ExactVector], q: &[Rat], v: &ExactVector) -> bool {
    if q.len() != gens.len() || q.iter().any(|c| c.is_negative()) {
        return false;
    }
    let mut acc = ExactVector::zeros(v.dim());
    for (c, g) in q.iter().zip(gens) {
        acc = acc.add_scaled(c, g);
    }
    acc == *v
}

/// Checks `f(v) < 0 <= f(g_i)` for all generators.
pub fn verify_separation(gens: &[ExactVector], v: &ExactVector, f: &ExactVector) -> bool {
    f.dot(v).is_negative() && gens.iter().all(|g| !f.dot(g).is_negative())
}

/// Maximize `x_t` over `{x >= 0 : A x = b}` where columns of `A` are `gens`.
#[derive(Clone, Debug)]
pub enum CoordMax {
    Infeasible,
    Unbounded { ray: Vec<Rat> },
    Max { value: Rat },
}

pub fn maximize_coordinate(gens: &[ExactVector], v: &ExactVector, t: usize) -> CoordMax {
    let n = v.dim();
    let a: Vec<Vec<Rat>> = (0..n)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    let b: Vec<Rat> = v.iter().cloned().collect();
    let mut c = vec![Rat::zero(); gens.len()];
    c[t] = -Rat::one();
    match simplex_min(&a, &b, &c) {
        SimplexOutcome::Optimal { objective, .. } => CoordMax::Max { value: -objective },
        SimplexOutcome::Unbounded { ray } => CoordMax::Unbounded { ray },
        SimplexOutcome::Infeasible { .. } => CoordMax::Infeasible,
    }
}
