//! Exact rational and integer linear algebra: vectors, matrices, Hermite
//! normal form, determinants, linear solving, lattice membership, and
//! lattice-point enumeration in half-open parallelepipeds.
//!
//! All arithmetic is exact; nothing here ever rounds. Outputs are
//! deterministic for equal inputs (lexicographic orderings throughout).

use crate::error::{Error, Result};
use crate::rat::{denominator_lcm, is_integer, rat_to_string, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

/// Fixed-length vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVector {
    entries: Vec<Rat>,
}

impl ExactVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        ExactVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        ExactVector {
            entries: vec![Rat::zero(); dim],
        }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = Rat::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        ExactVector {
            entries: entries.iter().map(|&n| Rat::from_integer(Int::from(n))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(is_integer)
    }

    pub fn dot(&self, other: &ExactVector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rat) -> ExactVector {
        ExactVector {
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rat, other: &ExactVector) -> ExactVector {
        assert_eq!(self.dim(), other.dim());
        ExactVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(rat_to_string).collect()
    }

    pub fn parse(parts: &[&str]) -> Result<Self> {
        let entries = parts
            .iter()
            .map(|p| crate::rat::rat_from_str(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactVector::new(entries))
    }
}

impl Index<usize> for ExactVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.entries[i]
    }
}

impl<'a> Add for &'a ExactVector {
    type Output = ExactVector;
    fn add(self, rhs: &'a ExactVector) -> ExactVector {
        assert_eq!(self.dim(), rhs.dim());
        ExactVector {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub for &'a ExactVector {
    type Output = ExactVector;
    fn sub(self, rhs: &'a ExactVector) -> ExactVector {
        assert_eq!(self.dim(), rhs.dim());
        ExactVector {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        ExactVector {
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for ExactVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        let refs: Vec<&str> = parts.iter().map(|s| s.as_str()).collect();
        ExactVector::parse(&refs).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Dense rational matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactMatrix {
    rows: Vec<ExactVector>,
    cols: usize,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<ExactVector>) -> Result<Self> {
        let cols = rows.first().map(|r| r.dim()).unwrap_or(0);
        for r in &rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.dim(),
                });
            }
        }
        Ok(ExactMatrix { rows, cols })
    }

    pub fn from_columns(cols: &[ExactVector]) -> Result<Self> {
        let m = Self::from_rows(cols.to_vec())?;
        Ok(m.transpose())
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix {
            rows: (0..n).map(|i| ExactVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &ExactVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[ExactVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let rows = (0..self.cols)
            .map(|j| ExactVector::new(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        ExactMatrix {
            rows,
            cols: self.nrows(),
        }
    }

    pub fn mul_vec(&self, v: &ExactVector) -> ExactVector {
        assert_eq!(self.cols, v.dim());
        ExactVector::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.nrows());
        let ot = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| ExactVector::new(ot.rows.iter().map(|c| r.dot(c)).collect()))
            .collect();
        ExactMatrix {
            rows,
            cols: other.ncols(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(|r| r.is_integral())
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination with
    /// partial pivoting on nonzero entries.
    pub fn det(&self) -> Result<Rat> {
        if self.nrows() != self.cols {
            return Err(Error::NonSquare {
                rows: self.nrows(),
                cols: self.cols,
            });
        }
        let n = self.nrows();
        let mut a: Vec<Vec<Rat>> = self.rows.iter().map(|r| r.entries.clone()).collect();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
                Some(p) => p,
                None => return Ok(Rat::zero()),
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &p;
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.rows)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

/// Rank of a list of rational vectors.
pub fn rank_of_rows(rows: &[ExactVector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].dim();
    let mut a: Vec<Vec<Rat>> = rows.iter().map(|r| r.entries.clone()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = match (rank..a.len()).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, rank);
        let p = a[rank][col].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] / &p;
                for c in col..cols {
                    let sub = &factor * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Solves `a * x = b` where the columns of `a` are linearly independent.
///
/// Returns `Ok(None)` when `b` lies outside the column span. Dependent
/// columns are rejected with an error: the caller must pre-filter.
pub fn solve_rational(a: &ExactMatrix, b: &ExactVector) -> Result<Option<ExactVector>> {
    if a.nrows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.dim(),
        });
    }
    let m = a.nrows();
    let n = a.ncols();
    // Gauss-Jordan on the augmented system.
    let mut aug: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let pivot = match (rank..m).find(|&r| !aug[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        aug.swap(pivot, rank);
        let p = aug[rank][col].clone();
        for c in col..=n {
            aug[rank][c] = &aug[rank][c] / &p;
        }
        for r in 0..m {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=n {
                    let sub = &factor * &aug[rank][c];
                    aug[r][c] -= sub;
                }
            }
        }
        pivot_rows.push(col);
        rank += 1;
    }
    if rank < n {
        return Err(Error::DependentColumns);
    }
    // Inconsistency: a zero row of the coefficient part with nonzero rhs.
    for r in rank..m {
        if !aug[r][n].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &col) in pivot_rows.iter().enumerate() {
        x[col] = aug[row][n].clone();
    }
    Ok(Some(ExactVector::new(x)))
}

/// Basis of the rational solution space of `m * x = 0`.
pub fn nullspace(m: &ExactMatrix) -> Vec<ExactVector> {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<Rat>> = (0..rows).map(|i| m.row(i).entries.clone()).collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = match (rank..rows).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, rank);
        let p = a[rank][col].clone();
        for c in col..cols {
            a[rank][c] = &a[rank][c] / &p;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..cols {
                    let sub = &factor * &a[rank][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .into_iter()
        .map(|fc| {
            let mut v = vec![Rat::zero(); cols];
            v[fc] = Rat::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            ExactVector::new(v)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Integer matrices and Hermite normal form
// ---------------------------------------------------------------------------

pub type IntMatrix = Vec<Vec<Int>>;

fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

/// Row Hermite normal form of an integer matrix.
///
/// Returns `(h, u)` with `u` unimodular, `u * m = h`, `h` in row echelon form
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero matrices are fine (`h = 0`).
pub fn hnf_int(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut h = m.clone();
    let mut u = int_identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Clear column c below row r using extended-gcd row operations.
        loop {
            let pivot = match (r..rows).find(|&i| !h[i][c].is_zero()) {
                Some(p) => p,
                None => break,
            };
            if pivot != r {
                h.swap(pivot, r);
                u.swap(pivot, r);
            }
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                done = false;
                let a = h[r][c].clone();
                let b = h[i][c].clone();
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let a_g = &a / &g;
                let b_g = &b / &g;
                // Unimodular 2x2 transform on rows r and i:
                //   [ x     y  ] [row_r]   [g-combination]
                //   [-b/g  a/g ] [row_i] = [zero in col c]
                for mat in [&mut h, &mut u] {
                    for j in 0..mat[r].len() {
                        let vr = mat[r][j].clone();
                        let vi = mat[i][j].clone();
                        mat[r][j] = &x * &vr + &y * &vi;
                        mat[i][j] = -&b_g * &vr + &a_g * &vi;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for j in 0..cols {
                h[r][j] = -h[r][j].clone();
            }
            for j in 0..rows {
                u[r][j] = -u[r][j].clone();
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        let p = h[r][c].clone();
        for i in 0..r {
            if h[i][c].is_zero() {
                continue;
            }
            let q = h[i][c].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let sub = &q * &h[r][j];
                h[i][j] -= sub;
            }
            for j in 0..rows {
                let sub = &q * &u[r][j];
                u[i][j] -= sub;
            }
        }
        r += 1;
    }
    (h, u)
}

fn to_int_matrix(m: &ExactMatrix) -> Result<IntMatrix> {
    if !m.is_integral() {
        return Err(Error::NonInteger);
    }
    Ok(m
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.numer().clone()).collect())
        .collect())
}

fn from_int_matrix(m: &IntMatrix, cols: usize) -> ExactMatrix {
    let rows = m
        .iter()
        .map(|r| ExactVector::new(r.iter().map(|e| Rat::from_integer(e.clone())).collect()))
        .collect();
    ExactMatrix { rows, cols }
}

/// Row Hermite normal form of an integer `ExactMatrix`; see [`hnf_int`].
pub fn hnf(m: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    let mi = to_int_matrix(m)?;
    let (h, u) = hnf_int(&mi);
    Ok((
        from_int_matrix(&h, m.ncols()),
        from_int_matrix(&u, m.nrows()),
    ))
}

/// Integer determinant magnitude of the row span of `h` (product of pivots of
/// a full-row-rank HNF). Internal helper for index computations.
fn hnf_pivots(h: &IntMatrix) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    for (i, row) in h.iter().enumerate() {
        if let Some(j) = row.iter().position(|e| !e.is_zero()) {
            pivots.push((i, j));
        }
    }
    pivots
}

/// Decides `v ∈ Z(gens)` and returns integer coefficients when it is.
///
/// Generators may be linearly dependent and rational: everything is scaled to
/// integers by the common denominator first. Decision is via HNF.
pub fn in_integer_span(gens: &[ExactVector], v: &ExactVector) -> Option<Vec<Int>> {
    if gens.is_empty() {
        return if v.is_zero() { Some(Vec::new()) } else { None };
    }
    let dim = v.dim();
    let scale = denominator_lcm(gens.iter().flat_map(|g| g.iter()).chain(v.iter()));
    let scale_r = Rat::from_integer(scale);
    let gi: IntMatrix = gens
        .iter()
        .map(|g| g.iter().map(|e| (e * &scale_r).to_integer()).collect())
        .collect();
    let vi: Vec<Int> = v.iter().map(|e| (e * &scale_r).to_integer()).collect();

    let (h, u) = hnf_int(&gi);
    let pivots = hnf_pivots(&h);
    // Greedy reduction of v against the HNF rows.
    let mut rem = vi;
    let mut t = vec![Int::zero(); gens.len()];
    for &(i, j) in &pivots {
        if rem[j].is_zero() {
            continue;
        }
        let (q, r) = rem[j].div_rem(&h[i][j]);
        if !r.is_zero() {
            return None;
        }
        for c in 0..dim {
            let sub = &q * &h[i][c];
            rem[c] -= sub;
        }
        t[i] = q;
    }
    if rem.iter().any(|e| !e.is_zero()) {
        return None;
    }
    // v = t^T * H = t^T * U * G, so coefficients over gens are t^T U.
    let coeffs = (0..gens.len())
        .map(|j| (0..gens.len()).map(|i| &t[i] * &u[i][j]).sum())
        .collect();
    Some(coeffs)
}

/// Basis of the integer (left-)kernel `{ c ∈ Z^m : c^T * a = 0 }` where `a`
/// has `m` rows. The returned lattice is saturated.
pub fn left_kernel_int(a: &IntMatrix) -> Vec<Vec<Int>> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    // HNF of [a | I]; rows whose a-part vanished give the kernel.
    let ext: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..m {
                r.push(if i == j { Int::one() } else { Int::zero() });
            }
            r
        })
        .collect();
    let (h, _) = hnf_int(&ext);
    h.iter()
        .filter(|row| row[..cols].iter().all(|e| e.is_zero()))
        .filter(|row| row[cols..].iter().any(|e| !e.is_zero()))
        .map(|row| row[cols..].to_vec())
        .collect()
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/// A lattice given by linearly independent basis rows (rational entries
/// allowed; the lattice is their integer span). Membership queries go
/// through a Hermite normal form cached at construction time.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    basis: ExactMatrix,
    /// Common denominator of the basis entries.
    scale: Int,
    /// HNF data of the scaled integer basis: `u * scaled = h`.
    hnf: IntMatrix,
    u: IntMatrix,
    pivots: Vec<(usize, usize)>,
}

impl PartialEq for LatticeBasis {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}
impl Eq for LatticeBasis {}

impl LatticeBasis {
    pub fn from_rows(basis: ExactMatrix) -> Result<Self> {
        if basis.rank() != basis.nrows() {
            return Err(Error::DependentRows);
        }
        let scale = denominator_lcm(basis.rows().iter().flat_map(|r| r.iter()));
        let scale_r = Rat::from_integer(scale.clone());
        let scaled: IntMatrix = basis
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| (e * &scale_r).to_integer()).collect())
            .collect();
        let (hnf, u) = hnf_int(&scaled);
        let pivots = hnf_pivots(&hnf);
        Ok(LatticeBasis {
            basis,
            scale,
            hnf,
            u,
            pivots,
        })
    }

    /// Lattice generated by arbitrary (possibly dependent) rational vectors.
    pub fn from_generators(gens: &[ExactVector], dim: usize) -> Result<Self> {
        if gens.is_empty() {
            return LatticeBasis::from_rows(ExactMatrix::from_rows(Vec::new()).map(|mut m| {
                m.cols = dim;
                m
            })?);
        }
        let scale = denominator_lcm(gens.iter().flat_map(|g| g.iter()));
        let scale_r = Rat::from_integer(scale.clone());
        let gi: IntMatrix = gens
            .iter()
            .map(|g| g.iter().map(|e| (e * &scale_r).to_integer()).collect())
            .collect();
        let (h, _) = hnf_int(&gi);
        let rows: Vec<ExactVector> = h
            .iter()
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .map(|r| {
                ExactVector::new(
                    r.iter()
                        .map(|e| Rat::new(e.clone(), scale.clone()))
                        .collect(),
                )
            })
            .collect();
        let mut m = ExactMatrix::from_rows(rows)?;
        if m.nrows() == 0 {
            m.cols = dim;
        }
        LatticeBasis::from_rows(m)
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn rows(&self) -> &[ExactVector] {
        self.basis.rows()
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Integer coordinates of `v` over the basis rows, if `v` is in the
    /// lattice. Uses the cached HNF; no per-call elimination.
    pub fn coordinates_of(&self, v: &ExactVector) -> Option<Vec<Int>> {
        if v.dim() != self.ambient_dim() {
            return None;
        }
        let m = self.rank();
        if m == 0 {
            return v.is_zero().then(Vec::new);
        }
        // v scaled by the basis denominator must be integral to belong.
        let scale_r = Rat::from_integer(self.scale.clone());
        let mut rem: Vec<Int> = Vec::with_capacity(v.dim());
        for e in v.iter() {
            let s = e * &scale_r;
            if !s.denom().is_one() {
                return None;
            }
            rem.push(s.to_integer());
        }
        let mut t = vec![Int::zero(); m];
        for &(i, j) in &self.pivots {
            if rem[j].is_zero() {
                continue;
            }
            let (q, r) = rem[j].div_rem(&self.hnf[i][j]);
            if !r.is_zero() {
                return None;
            }
            for c in 0..rem.len() {
                let sub = &q * &self.hnf[i][c];
                rem[c] -= sub;
            }
            t[i] = q;
        }
        if rem.iter().any(|e| !e.is_zero()) {
            return None;
        }
        Some(
            (0..m)
                .map(|j| (0..m).map(|i| &t[i] * &self.u[i][j]).sum())
                .collect(),
        )
    }

    /// Index of `sub` in `self` when both are full-rank sublattices of the
    /// same rational span: `|det T|` for the integer coordinate matrix `T` of
    /// `sub`'s basis over `self`'s basis.
    pub fn index_of_sublattice(&self, sub: &LatticeBasis) -> Result<Int> {
        if sub.rank() != self.rank() {
            return Err(Error::InvalidInput(
                "sublattice index requires equal ranks".into(),
            ));
        }
        let coord_rows: Vec<ExactVector> = sub
            .rows()
            .iter()
            .map(|r| {
                self.coordinates_of(r)
                    .map(|c| {
                        ExactVector::new(c.into_iter().map(Rat::from_integer).collect())
                    })
                    .ok_or_else(|| Error::InvalidInput("not a sublattice".into()))
            })
            .collect::<Result<_>>()?;
        let t = ExactMatrix::from_rows(coord_rows)?;
        let d = t.det()?;
        Ok(d.to_integer().abs())
    }
}

/// A lattice point of `lat` inside the half-open box of `b`, together with
/// its (all in `[0,1)`) coefficients over `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub point: ExactVector,
    pub coeffs: Vec<Rat>,
}

/// All points of `lat` lying in `{ Σ q_i b_i : q_i ∈ [0,1) }`, including 0.
///
/// `b` must be linearly independent. Points are sought in `span(b) ∩ lat`
/// and returned sorted lexicographically by coefficient vector. Enumeration
/// goes through coset representatives computed from HNF bases, never by grid
/// scanning, so skew boxes cost the same as orthogonal ones.
pub fn lattice_points_in_box(b: &[ExactVector], lat: &LatticeBasis) -> Result<Vec<BoxPoint>> {
    if b.is_empty() {
        return Ok(vec![BoxPoint {
            point: ExactVector::zeros(lat.ambient_dim()),
            coeffs: Vec::new(),
        }]);
    }
    let k = b.len();
    let n = b[0].dim();
    if rank_of_rows(b) != k {
        return Err(Error::DependentBox);
    }
    if lat.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: lat.ambient_dim(),
        });
    }
    let zero_point = BoxPoint {
        point: ExactVector::zeros(n),
        coeffs: vec![Rat::zero(); k],
    };
    if lat.rank() == 0 {
        return Ok(vec![zero_point]);
    }

    // Sublattice of `lat` lying inside span(b): a lattice point x = c^T * L
    // is in span(b) iff it is orthogonal to the nullspace of the row matrix
    // of b, i.e. (N L^T) c = 0 for the nullspace basis N.
    let b_mat = ExactMatrix::from_rows(b.to_vec())?;
    let perp = nullspace(&b_mat);
    let m = lat.rank();
    let in_span_coeff_rows: Vec<Vec<Int>> = if perp.is_empty() {
        // span(b) is everything: the whole lattice qualifies.
        int_identity(m)
    } else {
        // Rows of A: one per perp vector; columns indexed by lattice basis.
        let mut a: IntMatrix = Vec::new();
        for p in &perp {
            let row: Vec<Rat> = lat.rows().iter().map(|l| l.dot(p)).collect();
            let scale = denominator_lcm(row.iter());
            let scale_r = Rat::from_integer(scale);
            a.push(row.iter().map(|e| (e * &scale_r).to_integer()).collect());
        }
        // Right kernel of A = left kernel of A^T.
        let at: IntMatrix = (0..m)
            .map(|j| a.iter().map(|row| row[j].clone()).collect())
            .collect();
        left_kernel_int(&at)
    };
    if in_span_coeff_rows.is_empty() {
        return Ok(vec![zero_point]);
    }
    // Basis of lat ∩ span(b), expressed in b-coordinates.
    let sub_basis: Vec<ExactVector> = in_span_coeff_rows
        .iter()
        .map(|c| {
            let mut acc = ExactVector::zeros(n);
            for (ci, l) in c.iter().zip(lat.rows()) {
                acc = acc.add_scaled(&Rat::from_integer(ci.clone()), l);
            }
            acc
        })
        .collect();
    let bt = b_mat.transpose();
    let q_rows: Vec<ExactVector> = sub_basis
        .iter()
        .map(|s| {
            solve_rational(&bt, s)
                .expect("b independent")
                .expect("sub basis vector lies in span(b)")
        })
        .collect();

    // Lattice sum Λ_Q + Z^k, scaled by d to be integral.
    let d = denominator_lcm(q_rows.iter().flat_map(|r| r.iter()));
    let d_r = Rat::from_integer(d.clone());
    let mut stacked: IntMatrix = q_rows
        .iter()
        .map(|r| r.iter().map(|e| (e * &d_r).to_integer()).collect())
        .collect();
    for i in 0..k {
        let mut row = vec![Int::zero(); k];
        row[i] = d.clone();
        stacked.push(row);
    }
    let (h_sum, _) = hnf_int(&stacked);
    let t_basis: IntMatrix = h_sum
        .into_iter()
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .collect();
    debug_assert_eq!(t_basis.len(), k, "Λ_Q + Z^k must be full rank");

    // Enumerate y ∈ rowspan_Z(T) with 0 <= y_j < d; T is upper triangular
    // with pivot of row i in column i (full rank row HNF).
    let mut found: Vec<Vec<Int>> = Vec::new();
    let mut partial = vec![Int::zero(); k];
    enumerate_box_rec(&t_basis, &d, 0, &mut partial, &mut found);

    // Keep the points that really lie in Λ_Q (not just the lattice sum), and
    // convert to b-coefficients.
    let q_rows_scaled: Vec<ExactVector> = q_rows.clone();
    let mut out: Vec<BoxPoint> = Vec::new();
    for y in found {
        let coeffs: Vec<Rat> = y
            .iter()
            .map(|e| Rat::new(e.clone(), d.clone()))
            .collect();
        let x = ExactVector::new(coeffs.clone());
        if in_integer_span(&q_rows_scaled, &x).is_none() {
            continue;
        }
        let mut point = ExactVector::zeros(n);
        for (c, bv) in coeffs.iter().zip(b) {
            point = point.add_scaled(c, bv);
        }
        out.push(BoxPoint { point, coeffs });
    }
    out.sort_by(|p, q| p.coeffs.cmp(&q.coeffs));
    Ok(out)
}

fn enumerate_box_rec(
    t: &IntMatrix,
    d: &Int,
    level: usize,
    partial: &mut Vec<Int>,
    out: &mut Vec<Vec<Int>>,
) {
    let k = t.len();
    if level == k {
        out.push(partial.clone());
        return;
    }
    // Coordinate `level` of the point is partial[level] + c * t[level][level].
    let pivot = &t[level][level];
    debug_assert!(pivot.is_positive());
    let lo_num = -partial[level].clone();
    let hi_num = d - &partial[level];
    let c_lo = lo_num.div_ceil(pivot);
    let c_hi = (hi_num - Int::one()).div_floor(pivot);
    let mut c = c_lo;
    while c <= c_hi {
        let saved = partial.clone();
        for j in 0..k {
            let add = &c * &t[level][j];
            partial[j] += add;
        }
        enumerate_box_rec(t, d, level + 1, partial, out);
        *partial = saved;
        c += 1;
    }
}
