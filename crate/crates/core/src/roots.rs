//! Explicit realizations of the exceptional root systems G2, F4, E6, E7, E8
//! (and the classical families at small rank), with Weyl group actions,
//! dominance order, and lattice membership predicates.
//!
//! Coordinates follow fixed ambient realizations: E8 lives in Q^8 with the
//! even/half-integer lattice, E7 in the 7-dimensional subspace of Q^8
//! orthogonal to e7 - e8 (signs of the first and last coordinates differ from
//! the usual embedding), E6 in the 6-dimensional "three zero-sum triples"
//! subspace of Q^9, F4 in Q^4 and G2 in the zero-sum plane of Q^3. All
//! reflections use the standard scalar product.

use crate::error::{Error, Result};
use crate::linalg::{
    hnf_int, nullspace, rank_of_rows, ExactMatrix, ExactVector, IntMatrix,
    LatticeBasis,
};
use crate::rat::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A root system identifier such as `E8` or `A2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootSystemId { family, rank })
        } else {
            Err(Error::UnsupportedSystem(format!("{family}{rank}")))
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.family, Family::E | Family::F | Family::G)
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidSystemId(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidSystemId(s.to_string()))?;
        RootSystemId::new(fam, rank)
    }
}

impl Serialize for RootSystemId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootSystemId {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A weight, i.e. a point of the weight lattice of its root system, in
/// ambient coordinates. Constructed through [`Realization::weight`], which
/// validates lattice and subspace membership.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub system: RootSystemId,
    pub coords: ExactVector,
}

/// Classification of an ambient vector against the weight lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeClass {
    NotInLambda,
    /// Coset of the root lattice inside the weight lattice; 0 means the
    /// vector is in the root lattice itself.
    Coset(usize),
}

/// A fully built root system realization. Immutable after construction.
pub struct Realization {
    pub id: RootSystemId,
    pub ambient_dim: usize,
    roots: Vec<ExactVector>,
    root_index: HashMap<ExactVector, usize>,
    simple_roots: Vec<ExactVector>,
    fundamental_weights: Vec<ExactVector>,
    positive_roots: Vec<ExactVector>,
    root_lattice: LatticeBasis,
    weight_lattice: LatticeBasis,
    coset_index: usize,
    /// Columns are the simple roots (for coefficient solves).
    simple_cols: ExactMatrix,
    /// Projector onto simple-root coordinates: for v in span(Delta),
    /// `delta_proj * v` is the coefficient vector of v over Delta.
    delta_proj: ExactMatrix,
    /// Basis of the orthogonal complement of span(simple_roots).
    subspace_perp: Vec<ExactVector>,
    /// HNF of the root lattice expressed in weight-lattice coordinates.
    xi_in_lambda_hnf: IntMatrix,
    /// Mixed-radix weights for coset labeling (products of trailing pivots).
    coset_radix: Vec<Int>,
}

impl Realization {
    pub fn roots(&self) -> &[ExactVector] {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[ExactVector] {
        &self.simple_roots
    }

    pub fn fundamental_weights(&self) -> &[ExactVector] {
        &self.fundamental_weights
    }

    pub fn positive_roots(&self) -> &[ExactVector] {
        &self.positive_roots
    }

    pub fn root_lattice(&self) -> &LatticeBasis {
        &self.root_lattice
    }

    pub fn weight_lattice(&self) -> &LatticeBasis {
        &self.weight_lattice
    }

    pub fn coset_index(&self) -> usize {
        self.coset_index
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn is_root(&self, v: &ExactVector) -> bool {
        self.root_index.contains_key(v)
    }

    /// Validating weight constructor: `coords` must lie in the defining
    /// subspace and in the weight lattice.
    pub fn weight(&self, coords: ExactVector) -> Result<Weight> {
        if coords.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: coords.dim(),
            });
        }
        if !self.in_subspace(&coords) {
            return Err(Error::NotInSubspace);
        }
        if self.weight_lattice.coordinates_of(&coords).is_none() {
            return Err(Error::NotInWeightLattice);
        }
        Ok(Weight {
            system: self.id,
            coords,
        })
    }

    /// Weight from coefficients in the fundamental-weight basis.
    pub fn weight_from_fw_coords(&self, coeffs: &[i64]) -> Result<Weight> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        let mut v = ExactVector::zeros(self.ambient_dim);
        for (c, pi) in coeffs.iter().zip(&self.fundamental_weights) {
            v = v.add_scaled(&Rat::from_integer(Int::from(*c)), pi);
        }
        self.weight(v)
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.system != self.id {
            return Err(Error::SystemMismatch {
                expected: self.id.to_string(),
                got: w.system.to_string(),
            });
        }
        Ok(())
    }

    pub fn in_subspace(&self, v: &ExactVector) -> bool {
        self.subspace_perp.iter().all(|p| p.dot(v).is_zero())
    }

    /// Pairing `2 (v, alpha_i) / (alpha_i, alpha_i)` with the i-th simple
    /// coroot.
    pub fn coroot_pairing(&self, v: &ExactVector, i: usize) -> Rat {
        let alpha = &self.simple_roots[i];
        let two = Rat::from_integer(Int::from(2));
        two * v.dot(alpha) / alpha.norm_sq()
    }

    pub fn is_dominant(&self, v: &ExactVector) -> bool {
        (0..self.rank()).all(|i| !self.coroot_pairing(v, i).is_negative())
    }

    /// The unique dominant representative of the Weyl orbit of `v`, plus the
    /// word of simple reflections that maps `v` to it (applied left to
    /// right).
    pub fn dominant_rep(&self, v: &ExactVector) -> (ExactVector, Vec<usize>) {
        let mut cur = v.clone();
        let mut word = Vec::new();
        loop {
            let neg = (0..self.rank()).find(|&i| self.coroot_pairing(&cur, i).is_negative());
            match neg {
                Some(i) => {
                    cur = reflect(&self.simple_roots[i], &cur).expect("simple root is nonzero");
                    word.push(i);
                }
                None => return (cur, word),
            }
        }
    }

    /// Applies the simple reflections of `word` (left to right) to `v`.
    pub fn apply_word(&self, v: &ExactVector, word: &[usize]) -> ExactVector {
        let mut cur = v.clone();
        for &i in word {
            cur = reflect(&self.simple_roots[i], &cur).expect("simple root is nonzero");
        }
        cur
    }

    /// Nonnegative integer coefficients `c` with `lambda - mu = Σ c_i
    /// alpha_i`, if they exist.
    pub fn dominance_leq(&self, mu: &ExactVector, lambda: &ExactVector) -> Option<Vec<Int>> {
        let diff = lambda - mu;
        let x = self.simple_root_coords(&diff)?;
        let mut out = Vec::with_capacity(x.dim());
        for e in x.iter() {
            if !e.denom().is_one() || e.is_negative() {
                return None;
            }
            out.push(e.numer().clone());
        }
        Some(out)
    }

    /// Coefficients of `v` over the simple roots, or None when `v` is
    /// outside their span.
    pub fn simple_root_coords(&self, v: &ExactVector) -> Option<ExactVector> {
        let coords = self.delta_proj.mul_vec(v);
        if self.simple_cols.mul_vec(&coords) == *v {
            Some(coords)
        } else {
            None
        }
    }

    /// Full Weyl orbit of `v` by closure under simple reflections, sorted
    /// lexicographically.
    pub fn weyl_orbit(&self, v: &ExactVector, cap: usize) -> Result<Vec<ExactVector>> {
        let mut seen: HashSet<ExactVector> = HashSet::new();
        let mut queue: VecDeque<ExactVector> = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back(v.clone());
        while let Some(cur) = queue.pop_front() {
            for alpha in &self.simple_roots {
                let img = reflect(alpha, &cur).expect("simple root is nonzero");
                if !seen.contains(&img) {
                    if seen.len() >= cap {
                        return Err(Error::OrbitCapExceeded {
                            cap,
                            reached: seen.len() + 1,
                        });
                    }
                    seen.insert(img.clone());
                    queue.push_back(img);
                }
            }
        }
        let mut orbit: Vec<ExactVector> = seen.into_iter().collect();
        orbit.sort();
        Ok(orbit)
    }

    /// Order of the Weyl group, computed by closing the permutation action of
    /// the simple reflections on the root set. Refuses to materialize groups
    /// larger than `cap` (so E7 and E8 are rejected at the default cap).
    pub fn weyl_group_order(&self, cap: usize) -> Result<u64> {
        let gens: Vec<Vec<u16>> = (0..self.rank())
            .map(|i| self.simple_reflection_permutation(i))
            .collect();
        let identity: Vec<u16> = (0..self.roots.len() as u16).collect();
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut queue: VecDeque<Vec<u16>> = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(cur) = queue.pop_front() {
            for g in &gens {
                let composed: Vec<u16> = cur.iter().map(|&x| g[x as usize]).collect();
                if !seen.contains(&composed) {
                    if seen.len() >= cap {
                        return Err(Error::GroupCapExceeded {
                            cap,
                            reached: seen.len() + 1,
                        });
                    }
                    seen.insert(composed.clone());
                    queue.push_back(composed);
                }
            }
        }
        Ok(seen.len() as u64)
    }

    /// The i-th simple reflection as an ambient matrix (acting on column
    /// vectors). Used as a symmetry generator for pruned searches.
    pub fn simple_reflection_matrix(&self, i: usize) -> ExactMatrix {
        let cols: Vec<ExactVector> = (0..self.ambient_dim)
            .map(|j| {
                reflect(
                    &self.simple_roots[i],
                    &ExactVector::unit(self.ambient_dim, j),
                )
                .expect("simple root is nonzero")
            })
            .collect();
        ExactMatrix::from_columns(&cols).expect("square matrix")
    }

    /// The i-th simple reflection as a permutation of the root list.
    pub fn simple_reflection_permutation(&self, i: usize) -> Vec<u16> {
        self.roots
            .iter()
            .map(|r| {
                let img = reflect(&self.simple_roots[i], r).expect("simple root is nonzero");
                self.root_index[&img] as u16
            })
            .collect()
    }

    /// Classifies `v` against the weight lattice and returns its coset label
    /// in `Lambda / Xi` (0 means `v` is in the root lattice).
    pub fn lattice_test(&self, v: &ExactVector) -> LatticeClass {
        if v.dim() != self.ambient_dim || !self.in_subspace(v) {
            return LatticeClass::NotInLambda;
        }
        let coords = match self.weight_lattice.coordinates_of(v) {
            Some(c) => c,
            None => return LatticeClass::NotInLambda,
        };
        let rep = self.reduce_mod_xi(&coords);
        let mut label = Int::zero();
        for (c, radix) in rep.iter().zip(&self.coset_radix) {
            label += c * radix;
        }
        LatticeClass::Coset(usize::try_from(&label).expect("coset index is small"))
    }

    /// True iff `a - b` lies in the root lattice (same Xi-coset of Lambda).
    pub fn same_xi_coset(&self, a: &ExactVector, b: &ExactVector) -> bool {
        match (self.lattice_test(a), self.lattice_test(b)) {
            (LatticeClass::Coset(x), LatticeClass::Coset(y)) => x == y,
            _ => false,
        }
    }

    fn reduce_mod_xi(&self, coords: &[Int]) -> Vec<Int> {
        let h = &self.xi_in_lambda_hnf;
        let r = coords.len();
        let mut c = coords.to_vec();
        for i in 0..r {
            let pivot = &h[i][i];
            let q = c[i].div_floor(pivot);
            if q.is_zero() {
                continue;
            }
            for j in i..r {
                let sub = &q * &h[i][j];
                c[j] -= sub;
            }
        }
        c
    }

    /// Serializable dump of the realization (the `roots` CLI payload).
    pub fn dump(&self) -> RealizationDump {
        RealizationDump {
            schema_version: crate::SCHEMA_VERSION,
            id: self.id,
            ambient_dim: self.ambient_dim,
            rank: self.rank(),
            root_count: self.roots.len(),
            coset_index: self.coset_index,
            simple_roots: self.simple_roots.clone(),
            fundamental_weights: self.fundamental_weights.clone(),
            root_lattice_basis: self.root_lattice.rows().to_vec(),
            weight_lattice_basis: self.weight_lattice.rows().to_vec(),
            roots: self.roots.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationDump {
    pub schema_version: u32,
    pub id: RootSystemId,
    pub ambient_dim: usize,
    pub rank: usize,
    pub root_count: usize,
    pub coset_index: usize,
    pub simple_roots: Vec<ExactVector>,
    pub fundamental_weights: Vec<ExactVector>,
    pub root_lattice_basis: Vec<ExactVector>,
    pub weight_lattice_basis: Vec<ExactVector>,
    pub roots: Vec<ExactVector>,
}

/// The reflection `s_alpha(beta) = beta - 2 (alpha, beta) / (alpha, alpha)
/// alpha`.
pub fn reflect(alpha: &ExactVector, beta: &ExactVector) -> Result<ExactVector> {
    let nsq = alpha.norm_sq();
    if nsq.is_zero() {
        return Err(Error::InvalidInput("cannot reflect in the zero vector".into()));
    }
    let two = Rat::from_integer(Int::from(2));
    let c = -(two * beta.dot(alpha) / nsq);
    Ok(beta.add_scaled(&c, alpha))
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

fn ev(parts: &[i64]) -> ExactVector {
    ExactVector::from_ints(parts)
}

fn ev_frac(parts: &[i64], den: i64) -> ExactVector {
    ExactVector::new(
        parts
            .iter()
            .map(|&n| Rat::new(Int::from(n), Int::from(den)))
            .collect(),
    )
}

fn raw_roots_and_simples(id: RootSystemId) -> (usize, Vec<ExactVector>, Vec<ExactVector>) {
    let n = id.rank;
    match id.family {
        Family::A => {
            let dim = n + 1;
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        let mut v = vec![0i64; dim];
                        v[i] = 1;
                        v[j] = -1;
                        roots.push(ev(&v));
                    }
                }
            }
            let simples = (0..n)
                .map(|i| {
                    let mut v = vec![0i64; dim];
                    v[i] = 1;
                    v[i + 1] = -1;
                    ev(&v)
                })
                .collect();
            (dim, roots, simples)
        }
        Family::B | Family::C | Family::D => {
            let dim = n;
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = vec![0i64; dim];
                        v[i] = si;
                        v[j] = sj;
                        roots.push(ev(&v));
                    }
                }
            }
            if id.family != Family::D {
                let short = if id.family == Family::B { 1 } else { 2 };
                for i in 0..dim {
                    for s in [short, -short] {
                        let mut v = vec![0i64; dim];
                        v[i] = s;
                        roots.push(ev(&v));
                    }
                }
            }
            let mut simples: Vec<ExactVector> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![0i64; dim];
                    v[i] = 1;
                    v[i + 1] = -1;
                    ev(&v)
                })
                .collect();
            let mut last = vec![0i64; dim];
            match id.family {
                Family::B => last[n - 1] = 1,
                Family::C => last[n - 1] = 2,
                Family::D => {
                    last[n - 2] = 1;
                    last[n - 1] = 1;
                }
                _ => unreachable!(),
            }
            simples.push(ev(&last));
            (dim, roots, simples)
        }
        Family::G => {
            let roots = vec![
                ev(&[1, -1, 0]),
                ev(&[-1, 1, 0]),
                ev(&[1, 0, -1]),
                ev(&[-1, 0, 1]),
                ev(&[0, 1, -1]),
                ev(&[0, -1, 1]),
                ev(&[2, -1, -1]),
                ev(&[-2, 1, 1]),
                ev(&[-1, 2, -1]),
                ev(&[1, -2, 1]),
                ev(&[-1, -1, 2]),
                ev(&[1, 1, -2]),
            ];
            let simples = vec![ev(&[1, -1, 0]), ev(&[-2, 1, 1])];
            (3, roots, simples)
        }
        Family::F => {
            let mut roots = Vec::new();
            for i in 0..4 {
                for s in [1i64, -1] {
                    let mut v = vec![0i64; 4];
                    v[i] = s;
                    roots.push(ev(&v));
                }
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = vec![0i64; 4];
                        v[i] = si;
                        v[j] = sj;
                        roots.push(ev(&v));
                    }
                }
            }
            for mask in 0..16u32 {
                let v: Vec<i64> = (0..4)
                    .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                    .collect();
                roots.push(ev_frac(&v, 2));
            }
            let simples = vec![
                ev_frac(&[1, -1, -1, -1], 2),
                ev(&[0, 0, 0, 1]),
                ev(&[0, 0, 1, -1]),
                ev(&[0, 1, -1, 0]),
            ];
            (4, roots, simples)
        }
        Family::E => match n {
            6 => {
                let mut roots = Vec::new();
                for triple in 0..3 {
                    let base = 3 * triple;
                    for i in 0..3 {
                        for j in 0..3 {
                            if i != j {
                                let mut v = vec![0i64; 9];
                                v[base + i] = 1;
                                v[base + j] = -1;
                                roots.push(ev(&v));
                            }
                        }
                    }
                }
                // 27 + 27 vectors (a; b; c) built from thirds.
                for pa in 0..3 {
                    for pb in 0..3 {
                        for pc in 0..3 {
                            let mut v = vec![-1i64; 9];
                            v[pa] = 2;
                            v[3 + pb] = 2;
                            v[6 + pc] = 2;
                            roots.push(ev_frac(&v, 3));
                            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                            roots.push(ev_frac(&neg, 3));
                        }
                    }
                }
                let simples = vec![
                    ev(&[0, 0, 0, 0, 0, 0, 0, 1, -1]),
                    ev(&[0, 1, -1, 0, 0, 0, 0, 0, 0]),
                    ev(&[0, 0, 0, 0, 0, 0, 1, -1, 0]),
                    ev_frac(&[1, -2, 1, -2, 1, 1, -2, 1, 1], 3),
                    ev(&[0, 0, 0, 1, -1, 0, 0, 0, 0]),
                    ev(&[0, 0, 0, 0, 1, -1, 0, 0, 0]),
                ];
                (9, roots, simples)
            }
            7 => {
                let mut roots = Vec::new();
                for i in 0..6 {
                    for j in i + 1..6 {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0i64; 8];
                            v[i] = si;
                            v[j] = sj;
                            roots.push(ev(&v));
                        }
                    }
                }
                roots.push(ev(&[0, 0, 0, 0, 0, 0, 1, 1]));
                roots.push(ev(&[0, 0, 0, 0, 0, 0, -1, -1]));
                for mask in 0..64u32 {
                    if (mask.count_ones() % 2) != 0 {
                        continue;
                    }
                    let mut v: Vec<i64> = (0..6)
                        .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                        .collect();
                    v.push(1);
                    v.push(1);
                    roots.push(ev_frac(&v, 2));
                    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                    roots.push(ev_frac(&neg, 2));
                }
                let simples = vec![
                    ev_frac(&[-1, -1, -1, -1, -1, -1, -1, -1], 2),
                    ev(&[-1, 1, 0, 0, 0, 0, 0, 0]),
                    ev(&[1, 1, 0, 0, 0, 0, 0, 0]),
                    ev(&[0, -1, 1, 0, 0, 0, 0, 0]),
                    ev(&[0, 0, -1, 1, 0, 0, 0, 0]),
                    ev(&[0, 0, 0, -1, 1, 0, 0, 0]),
                    ev(&[0, 0, 0, 0, -1, 1, 0, 0]),
                ];
                (8, roots, simples)
            }
            8 => {
                let mut roots = Vec::new();
                for i in 0..8 {
                    for j in i + 1..8 {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut v = vec![0i64; 8];
                            v[i] = si;
                            v[j] = sj;
                            roots.push(ev(&v));
                        }
                    }
                }
                for mask in 0..256u32 {
                    if (mask.count_ones() % 2) != 0 {
                        continue;
                    }
                    let v: Vec<i64> = (0..8)
                        .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                        .collect();
                    roots.push(ev_frac(&v, 2));
                }
                let simples = vec![
                    ev_frac(&[1, -1, -1, -1, -1, -1, -1, 1], 2),
                    ev(&[1, 1, 0, 0, 0, 0, 0, 0]),
                    ev(&[-1, 1, 0, 0, 0, 0, 0, 0]),
                    ev(&[0, -1, 1, 0, 0, 0, 0, 0]),
                    ev(&[0, 0, -1, 1, 0, 0, 0, 0]),
                    ev(&[0, 0, 0, -1, 1, 0, 0, 0]),
                    ev(&[0, 0, 0, 0, -1, 1, 0, 0]),
                    ev(&[0, 0, 0, 0, 0, -1, 1, 0]),
                ];
                (8, roots, simples)
            }
            _ => unreachable!("validated by RootSystemId::new"),
        },
    }
}

fn expected_root_count(id: RootSystemId) -> usize {
    let n = id.rank;
    match id.family {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::G => 12,
        Family::F => 48,
        Family::E => match n {
            6 => 72,
            7 => 126,
            8 => 240,
            _ => unreachable!(),
        },
    }
}

fn expected_coset_index(id: RootSystemId) -> usize {
    let n = id.rank;
    match id.family {
        Family::A => n + 1,
        Family::B | Family::C => 2,
        Family::D => 4,
        Family::G => 1,
        Family::F => 1,
        Family::E => match n {
            6 => 3,
            7 => 2,
            8 => 1,
            _ => unreachable!(),
        },
    }
}

/// Builds the realization for `id`, verifying its structural invariants.
pub fn build(id: RootSystemId) -> Result<Realization> {
    let (ambient_dim, mut roots, simple_roots) = raw_roots_and_simples(id);
    roots.sort();
    roots.dedup();
    if roots.len() != expected_root_count(id) {
        return Err(Error::InvalidInput(format!(
            "{id}: built {} roots, expected {}",
            roots.len(),
            expected_root_count(id)
        )));
    }
    let root_index: HashMap<ExactVector, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let rank = simple_roots.len();
    if rank != id.rank || rank_of_rows(&simple_roots) != rank {
        return Err(Error::InvalidInput(format!(
            "{id}: simple roots are not an independent set of size {}",
            id.rank
        )));
    }
    for alpha in &simple_roots {
        if !root_index.contains_key(alpha) {
            return Err(Error::InvalidInput(format!(
                "{id}: simple root {alpha} is not a root"
            )));
        }
    }
    // Roots must be closed under negation and under the simple reflections.
    for r in &roots {
        if !root_index.contains_key(&-r) {
            return Err(Error::InvalidInput(format!("{id}: roots not symmetric at {r}")));
        }
    }
    for alpha in &simple_roots {
        for r in &roots {
            let img = reflect(alpha, r)?;
            if !root_index.contains_key(&img) {
                return Err(Error::InvalidInput(format!(
                    "{id}: reflection in {alpha} does not permute the roots"
                )));
            }
        }
    }

    // Fundamental weights from the duality 2 (pi_i, alpha_j) / (alpha_j,
    // alpha_j) = delta_ij, solved inside span(Delta).
    let two = Rat::from_integer(Int::from(2));
    let cartan_rows: Vec<ExactVector> = simple_roots
        .iter()
        .map(|ak| {
            ExactVector::new(
                simple_roots
                    .iter()
                    .map(|aj| &two * &ak.dot(aj) / aj.norm_sq())
                    .collect(),
            )
        })
        .collect();
    let cartan = ExactMatrix::from_rows(cartan_rows)?;
    let cartan_t = cartan.transpose();
    let mut fundamental_weights = Vec::with_capacity(rank);
    for i in 0..rank {
        let e = ExactVector::unit(rank, i);
        let x = crate::linalg::solve_rational(&cartan_t, &e)?
            .ok_or_else(|| Error::InvalidInput(format!("{id}: Cartan matrix is singular")))?;
        let mut pi = ExactVector::zeros(ambient_dim);
        for (c, alpha) in x.iter().zip(&simple_roots) {
            pi = pi.add_scaled(c, alpha);
        }
        fundamental_weights.push(pi);
    }

    let simple_cols = ExactMatrix::from_columns(&simple_roots)?;
    // Coordinate projector onto span(Delta): (Delta^T Delta)^{-1} Delta^T.
    let simple_rows = ExactMatrix::from_rows(simple_roots.clone())?;
    let gram = simple_rows.mul(&simple_cols);
    let mut gram_inv_rows = Vec::with_capacity(rank);
    for i in 0..rank {
        let e = ExactVector::unit(rank, i);
        // Gram matrices of independent vectors are symmetric invertible.
        let x = crate::linalg::solve_rational(&gram, &e)?
            .ok_or_else(|| Error::InvalidInput(format!("{id}: singular Gram matrix")))?;
        gram_inv_rows.push(x);
    }
    let delta_proj = ExactMatrix::from_rows(gram_inv_rows)?.mul(&simple_rows);
    let subspace_perp = nullspace(&simple_rows);

    // Positive roots: integer coordinates over Delta with uniform sign.
    let mut positive_roots = Vec::new();
    for r in &roots {
        let coords = crate::linalg::solve_rational(&simple_cols, r)?
            .ok_or_else(|| Error::InvalidInput(format!("{id}: root {r} outside span(Delta)")))?;
        if !coords.is_integral() {
            return Err(Error::InvalidInput(format!(
                "{id}: root {r} has non-integer simple-root coordinates"
            )));
        }
        let nonneg = coords.iter().all(|c| !c.is_negative());
        let nonpos = coords.iter().all(|c| !c.is_positive());
        if !nonneg && !nonpos {
            return Err(Error::InvalidInput(format!(
                "{id}: root {r} has mixed-sign simple-root coordinates"
            )));
        }
        if nonneg {
            positive_roots.push(r.clone());
        }
    }
    if positive_roots.len() * 2 != roots.len() {
        return Err(Error::InvalidInput(format!(
            "{id}: positive roots are not half the root set"
        )));
    }

    let root_lattice = LatticeBasis::from_rows(ExactMatrix::from_rows(simple_roots.clone())?)?;
    let weight_lattice =
        LatticeBasis::from_rows(ExactMatrix::from_rows(fundamental_weights.clone())?)?;

    // Xi in Lambda coordinates (rows = simple roots over the pi basis), HNF'd
    // for coset reduction; the pivot product is the coset index.
    let xi_coords: IntMatrix = simple_roots
        .iter()
        .map(|alpha| {
            weight_lattice.coordinates_of(alpha).ok_or_else(|| {
                Error::InvalidInput(format!("{id}: root lattice not inside weight lattice"))
            })
        })
        .collect::<Result<_>>()?;
    let (xi_hnf, _) = hnf_int(&xi_coords);
    let mut index = Int::one();
    for (i, row) in xi_hnf.iter().enumerate() {
        if row[i].is_zero() || !row[..i].iter().all(|e| e.is_zero()) {
            return Err(Error::InvalidInput(format!(
                "{id}: Xi-in-Lambda HNF is not full-rank upper triangular"
            )));
        }
        index *= &row[i];
    }
    let coset_index = usize::try_from(&index)
        .map_err(|_| Error::InvalidInput(format!("{id}: coset index overflow")))?;
    if coset_index != expected_coset_index(id) {
        return Err(Error::InvalidInput(format!(
            "{id}: coset index {coset_index}, expected {}",
            expected_coset_index(id)
        )));
    }
    // Mixed-radix weights for deterministic coset labels: the reduced
    // representative (c_0..c_{r-1}) with 0 <= c_i < H_ii gets label
    // sum c_i * prod_{j>i} H_jj; the zero representative is label 0.
    let mut coset_radix = vec![Int::one(); rank];
    for i in (0..rank.saturating_sub(1)).rev() {
        coset_radix[i] = &coset_radix[i + 1] * &xi_hnf[i + 1][i + 1];
    }

    Ok(Realization {
        id,
        ambient_dim,
        roots,
        root_index,
        simple_roots,
        fundamental_weights,
        positive_roots,
        root_lattice,
        weight_lattice,
        coset_index,
        simple_cols,
        delta_proj,
        subspace_perp,
        xi_in_lambda_hnf: xi_hnf,
        coset_radix,
    })
}

/// Convenience: build from a string id like `"F4"`.
pub fn build_named(name: &str) -> Result<Realization> {
    build(name.parse()?)
}
