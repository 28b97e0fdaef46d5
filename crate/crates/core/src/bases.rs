//! The five classical bases of `Λⁿ` as coefficient tables, and all transition
//! matrices between them, including the factorizations for `h^[d]`:
//!
//! ```text
//! M(h^[d],p) = R′ z⁻¹ D^[d]          M(h^[d],m) = R′ z⁻¹ D^[d] R
//! M(h^[d],h) = R′ D^[d] R*           M(h^[d],e) = R′ D^[d] ε R*
//! M(h^[d],s) = R′ z⁻¹ D^[d] R K⁻¹
//! ```
//!
//! where `R = M(p,m)`, `K = M(s,m)`, `R* = (R′)⁻¹`, and `z`, `ε`, `D^[d]` are
//! the diagonal matrices of the partition statistics. Matrices are memoized
//! per `(degree, source, target)` behind a lock; rebuilding one concurrently
//! is harmless because construction is deterministic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use num::traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::partition::{
    d_coefficient, enumerate_partitions, epsilon, z, Partition, Truncation,
};
use crate::polyring::{
    extract_monomial_coeffs, monomial_symmetric_block, power_sum_partition_block,
    product_generating, SparsePoly,
};
use crate::{rat_to_string, Error, Rat};

/// Names a basis of `Λⁿ`. `Hd(1)` coincides with `E` and `Hd(∞)` with `H` as
/// functions, but the tags stay distinct; the degenerate equalities are
/// verified by tests, not identified by the type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    M,
    E,
    H,
    P,
    S,
    Hd(Truncation),
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::M => write!(f, "m"),
            BasisTag::E => write!(f, "e"),
            BasisTag::H => write!(f, "h"),
            BasisTag::P => write!(f, "p"),
            BasisTag::S => write!(f, "s"),
            BasisTag::Hd(d) => write!(f, "hd({d})"),
        }
    }
}

impl FromStr for BasisTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "m" => Ok(BasisTag::M),
            "e" => Ok(BasisTag::E),
            "h" => Ok(BasisTag::H),
            "p" => Ok(BasisTag::P),
            "s" => Ok(BasisTag::S),
            other => {
                if let Some(inner) = other.strip_prefix("hd(").and_then(|r| r.strip_suffix(')')) {
                    Ok(BasisTag::Hd(inner.parse()?))
                } else {
                    Err(Error::Parse(format!("unknown basis: {other:?}")))
                }
            }
        }
    }
}

/// A homogeneous symmetric function of one degree, expressed in one basis as
/// a partition-indexed table of exact rationals. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: BasisTag,
    degree: u32,
    coeffs: BTreeMap<Partition, Rat>,
}

impl SymFunc {
    pub fn new(
        basis: BasisTag,
        degree: u32,
        coeffs: BTreeMap<Partition, Rat>,
    ) -> Result<Self, Error> {
        for key in coeffs.keys() {
            if key.weight() != degree {
                return Err(Error::DegreeMismatch(key.weight(), degree));
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymFunc {
            basis,
            degree,
            coeffs,
        })
    }

    pub fn zero(basis: BasisTag, degree: u32) -> Self {
        SymFunc {
            basis,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element indexed by `λ`.
    pub fn basis_element(basis: BasisTag, lambda: &Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda.clone(), Rat::one());
        SymFunc {
            basis,
            degree: lambda.weight(),
            coeffs,
        }
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rat {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in canonical partition order.
    pub fn ordered_coeffs(&self) -> Vec<(Partition, Rat)> {
        enumerate_partitions(self.degree)
            .into_iter()
            .filter_map(|lambda| {
                self.coeffs
                    .get(&lambda)
                    .map(|c| (lambda.clone(), c.clone()))
            })
            .collect()
    }

    /// Rescales the coefficient of every `λ` by `scalar(λ)`.
    pub fn scale_by(&self, scalar: impl Fn(&Partition) -> Rat) -> SymFunc {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(l, c)| (l.clone(), c * scalar(l)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SymFunc {
            basis: self.basis,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc, Error> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        assert_eq!(self.basis, other.basis, "cannot add across bases");
        let mut coeffs = self.coeffs.clone();
        for (l, c) in &other.coeffs {
            let entry = coeffs.entry(l.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(l);
            }
        }
        Ok(SymFunc {
            basis: self.basis,
            degree: self.degree,
            coeffs,
        })
    }

    pub fn scale(&self, c: &Rat) -> SymFunc {
        self.scale_by(|_| c.clone())
    }

    /// Realizes the function as a polynomial in `num_vars ≥ degree` variables
    /// (converting to the m-basis first when needed).
    pub fn to_poly(&self, num_vars: usize) -> Result<SparsePoly, Error> {
        if (num_vars as u32) < self.degree {
            return Err(Error::TooFewVariables {
                num_vars,
                degree: self.degree,
            });
        }
        let in_m = convert(self, BasisTag::M);
        let mut acc = SparsePoly::zero(num_vars, self.degree);
        for (lambda, coeff) in &in_m.coeffs {
            let m = monomial_symmetric_block(num_vars, self.degree, 0..num_vars, lambda);
            acc = acc.add(&m.scale(coeff))?;
        }
        Ok(acc)
    }
}

/// Multiplies two m-basis functions by expanding them as polynomials in
/// enough variables and reading the product's coefficients back off.
pub fn multiply_m_basis(f: &SymFunc, g: &SymFunc) -> Result<SymFunc, Error> {
    assert_eq!(f.basis(), BasisTag::M);
    assert_eq!(g.basis(), BasisTag::M);
    let degree = f.degree + g.degree;
    let num_vars = (degree as usize).max(1);
    let mut fp = SparsePoly::zero(num_vars, degree);
    for (lambda, coeff) in &f.coeffs {
        let m = monomial_symmetric_block(num_vars, degree, 0..num_vars, lambda);
        fp = fp.add(&m.scale(coeff))?;
    }
    let mut gp = SparsePoly::zero(num_vars, degree);
    for (lambda, coeff) in &g.coeffs {
        let m = monomial_symmetric_block(num_vars, degree, 0..num_vars, lambda);
        gp = gp.add(&m.scale(coeff))?;
    }
    let product = fp.mul_truncated(&gp, degree)?;
    let table = extract_monomial_coeffs(&product, degree)?;
    SymFunc::new(BasisTag::M, degree, table)
}

/// A `p(n) × p(n)` exact-rational matrix in canonical partition order: row
/// `λ` expands the source basis element `λ` in the target basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    degree: u32,
    source: BasisTag,
    target: BasisTag,
    entries: Vec<Vec<Rat>>,
}

impl TransitionMatrix {
    pub fn new(
        degree: u32,
        source: BasisTag,
        target: BasisTag,
        entries: Vec<Vec<Rat>>,
    ) -> Result<Self, Error> {
        let size = enumerate_partitions(degree).len();
        if entries.len() != size || entries.iter().any(|row| row.len() != size) {
            return Err(Error::DimensionMismatch);
        }
        Ok(TransitionMatrix {
            degree,
            source,
            target,
            entries,
        })
    }

    pub fn identity(degree: u32, source: BasisTag, target: BasisTag) -> Self {
        let size = enumerate_partitions(degree).len();
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        TransitionMatrix {
            degree,
            source,
            target,
            entries,
        }
    }

    fn diagonal(degree: u32, values: impl Fn(&Partition) -> Rat) -> Self {
        let order = enumerate_partitions(degree);
        let size = order.len();
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if i == j { values(&order[i]) } else { Rat::zero() })
                    .collect()
            })
            .collect();
        TransitionMatrix {
            degree,
            source: BasisTag::P,
            target: BasisTag::P,
            entries,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source(&self) -> BasisTag {
        self.source
    }

    pub fn target(&self) -> BasisTag {
        self.target
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn transpose(&self) -> TransitionMatrix {
        let size = self.size();
        let entries = (0..size)
            .map(|i| (0..size).map(|j| self.entries[j][i].clone()).collect())
            .collect();
        TransitionMatrix {
            degree: self.degree,
            source: self.target,
            target: self.source,
            entries,
        }
    }

    /// `M(A,B) · M(B,C) = M(A,C)`; intermediate factors in the `h^[d]`
    /// factorizations carry bookkeeping tags, so only dimensions are checked.
    pub fn multiply(&self, other: &TransitionMatrix) -> Result<TransitionMatrix, Error> {
        if self.degree != other.degree || self.size() != other.size() {
            return Err(Error::DimensionMismatch);
        }
        let size = self.size();
        let entries = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        (0..size)
                            .map(|k| &self.entries[i][k] * &other.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(TransitionMatrix {
            degree: self.degree,
            source: self.source,
            target: other.target,
            entries,
        })
    }

    /// Exact inverse by Gauss–Jordan elimination with first-nonzero pivot
    /// search. A singular input signals violation of a basis-property
    /// invariant.
    pub fn inverse(&self) -> Result<TransitionMatrix, Error> {
        let size = self.size();
        let mut work = self.entries.clone();
        let mut inv = TransitionMatrix::identity(self.degree, self.target, self.source).entries;
        for col in 0..size {
            let pivot_row = (col..size)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            work.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pivot = work[col][col].clone();
            for j in 0..size {
                work[col][j] /= &pivot;
                inv[col][j] /= &pivot;
            }
            for row in 0..size {
                if row == col || work[row][col].is_zero() {
                    continue;
                }
                let factor = work[row][col].clone();
                for j in 0..size {
                    let w = &work[col][j] * &factor;
                    work[row][j] -= w;
                    let v = &inv[col][j] * &factor;
                    inv[row][j] -= v;
                }
            }
        }
        Ok(TransitionMatrix {
            degree: self.degree,
            source: self.target,
            target: self.source,
            entries: inv,
        })
    }

    /// Exact rank by row elimination.
    pub fn rank(&self) -> usize {
        let size = self.size();
        let mut work = self.entries.clone();
        let mut rank = 0;
        for col in 0..size {
            let Some(pivot_row) = (rank..size).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(rank, pivot_row);
            let pivot = work[rank][col].clone();
            for row in rank + 1..size {
                if work[row][col].is_zero() {
                    continue;
                }
                let factor = &work[row][col] / &pivot;
                for j in col..size {
                    let w = &work[rank][j] * &factor;
                    work[row][j] -= w;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Expands `f` (in the source basis) through this matrix into the target
    /// basis.
    pub fn apply(&self, f: &SymFunc) -> Result<SymFunc, Error> {
        if f.degree() != self.degree {
            return Err(Error::DegreeMismatch(f.degree(), self.degree));
        }
        let order = enumerate_partitions(self.degree);
        let mut coeffs = BTreeMap::new();
        for (j, mu) in order.iter().enumerate() {
            let mut acc = Rat::zero();
            for (i, lambda) in order.iter().enumerate() {
                let c = f.coefficient(lambda);
                if !c.is_zero() {
                    acc += c * &self.entries[i][j];
                }
            }
            if !acc.is_zero() {
                coeffs.insert(mu.clone(), acc);
            }
        }
        Ok(SymFunc {
            basis: self.target,
            degree: self.degree,
            coeffs,
        })
    }
}

impl Serialize for TransitionMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let order: Vec<String> = enumerate_partitions(self.degree)
            .iter()
            .map(|p| p.to_string())
            .collect();
        let entries: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(rat_to_string).collect())
            .collect();
        let mut st = serializer.serialize_struct("TransitionMatrix", 5)?;
        st.serialize_field("n", &self.degree)?;
        st.serialize_field("source", &self.source.to_string())?;
        st.serialize_field("target", &self.target.to_string())?;
        st.serialize_field("order", &order)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

type CacheKey = (u32, BasisTag, BasisTag);

static MATRIX_CACHE: LazyLock<Mutex<HashMap<CacheKey, Arc<TransitionMatrix>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn cached(key: CacheKey, build: impl FnOnce() -> TransitionMatrix) -> Arc<TransitionMatrix> {
    if let Some(hit) = MATRIX_CACHE.lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let built = Arc::new(build());
    let mut cache = MATRIX_CACHE.lock().unwrap();
    Arc::clone(cache.entry(key).or_insert(built))
}

/// `R = M(p,m)`: row `λ` expands `p_λ` in the monomial basis, computed by
/// multiplying power sums out in `n` variables.
pub fn matrix_p_to_m(n: u32) -> Arc<TransitionMatrix> {
    cached((n, BasisTag::P, BasisTag::M), || {
        let order = enumerate_partitions(n);
        let num_vars = (n as usize).max(1);
        let entries = order
            .iter()
            .map(|lambda| {
                let poly = power_sum_partition_block(num_vars, n, 0..num_vars, lambda);
                let table =
                    extract_monomial_coeffs(&poly, n).expect("power sums are symmetric");
                order
                    .iter()
                    .map(|mu| table.get(mu).cloned().unwrap_or_else(Rat::zero))
                    .collect()
            })
            .collect();
        TransitionMatrix {
            degree: n,
            source: BasisTag::P,
            target: BasisTag::M,
            entries,
        }
    })
}

/// `K = M(s,m)`: Kostka numbers by direct semistandard-tableau enumeration,
/// cross-checked against the Jacobi–Trudi expansion of each `s_λ`. The two
/// routes disagreeing is a fatal internal error: `K⁻¹` feeds the Schur-target
/// factorization, so a silent Kostka bug would poison everything downstream.
pub fn kostka_matrix(n: u32) -> Arc<TransitionMatrix> {
    cached((n, BasisTag::S, BasisTag::M), || {
        let order = enumerate_partitions(n);
        let entries: Vec<Vec<Rat>> = order
            .iter()
            .map(|lambda| {
                order
                    .iter()
                    .map(|mu| Rat::from_integer(count_ssyt(lambda, mu).into()))
                    .collect()
            })
            .collect();

        let mut h_rows: HashMap<Partition, BTreeMap<Partition, Rat>> = HashMap::new();
        for (i, lambda) in order.iter().enumerate() {
            let jt = jacobi_trudi_in_m(lambda, n, &mut h_rows);
            for (j, mu) in order.iter().enumerate() {
                let expected = jt.get(mu).cloned().unwrap_or_else(Rat::zero);
                assert_eq!(
                    entries[i][j], expected,
                    "Kostka mismatch at K[{lambda}][{mu}]: SSYT vs Jacobi–Trudi"
                );
            }
        }

        TransitionMatrix {
            degree: n,
            source: BasisTag::S,
            target: BasisTag::M,
            entries,
        }
    })
}

/// Number of semistandard Young tableaux of shape `λ` and content `μ`:
/// weakly increasing rows, strictly increasing columns, entry `v` used
/// exactly `μ_v` times.
fn count_ssyt(shape: &Partition, content: &Partition) -> u64 {
    if shape.weight() != content.weight() {
        return 0;
    }
    let rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let mut remaining: Vec<u32> = content.parts().to_vec();
    let mut grid: Vec<Vec<u32>> = rows.iter().map(|&len| vec![0; len]).collect();
    fill_cell(&rows, 0, 0, &mut remaining, &mut grid)
}

fn fill_cell(
    rows: &[usize],
    r: usize,
    c: usize,
    remaining: &mut Vec<u32>,
    grid: &mut Vec<Vec<u32>>,
) -> u64 {
    if r == rows.len() {
        return 1;
    }
    if c == rows[r] {
        return fill_cell(rows, r + 1, 0, remaining, grid);
    }
    let min_left = if c > 0 { grid[r][c - 1] } else { 1 };
    let min_above = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    let lo = min_left.max(min_above);
    let mut total = 0;
    for v in lo..=remaining.len() as u32 {
        let slot = (v - 1) as usize;
        if remaining[slot] == 0 {
            continue;
        }
        remaining[slot] -= 1;
        grid[r][c] = v;
        total += fill_cell(rows, r, c + 1, remaining, grid);
        remaining[slot] += 1;
    }
    total
}

/// `s_λ` in the m-basis via `det(h_{λ_i−i+j})`, expanded as a signed sum of
/// complete homogeneous products over permutations, each product multiplied
/// out in the polynomial ring.
fn jacobi_trudi_in_m(
    lambda: &Partition,
    n: u32,
    h_rows: &mut HashMap<Partition, BTreeMap<Partition, Rat>>,
) -> BTreeMap<Partition, Rat> {
    let len = lambda.length();
    let mut acc: BTreeMap<Partition, Rat> = BTreeMap::new();
    for (perm, sign) in permutations_with_sign(len) {
        let mut parts = Vec::with_capacity(len);
        let mut valid = true;
        for (i, &s) in perm.iter().enumerate() {
            let shifted = lambda.parts()[i] as i64 - i as i64 + s as i64;
            if shifted < 0 {
                valid = false;
                break;
            }
            if shifted > 0 {
                parts.push(shifted as u32);
            }
        }
        if !valid {
            continue;
        }
        let nu = Partition::from_unsorted(parts);
        let row = h_rows
            .entry(nu.clone())
            .or_insert_with(|| complete_homogeneous_in_m(&nu, n))
            .clone();
        for (mu, coeff) in row {
            let signed = coeff * Rat::from_integer(sign.into());
            let entry = acc.entry(mu).or_insert_with(Rat::zero);
            *entry += signed;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// `h_ν` as an m-basis table, multiplied out in `n` variables.
fn complete_homogeneous_in_m(nu: &Partition, n: u32) -> BTreeMap<Partition, Rat> {
    let num_vars = (n as usize).max(1);
    let mut acc = SparsePoly::one(num_vars, n);
    for &part in nu.parts() {
        let slice = product_generating(Truncation::Infinity, num_vars, part)
            .homogeneous_slice(part);
        acc = acc.mul_truncated(&slice, n).expect("shared variable set");
    }
    extract_monomial_coeffs(&acc, n).expect("h products are symmetric")
}

/// All permutations of `0..len` with their signs.
fn permutations_with_sign(len: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(len);
    let mut used = vec![false; len];
    fn rec(
        len: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, i32)>,
    ) {
        if current.len() == len {
            let mut inversions = 0;
            for i in 0..len {
                for j in i + 1..len {
                    if current[i] > current[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            out.push((current.clone(), sign));
            return;
        }
        for v in 0..len {
            if used[v] {
                continue;
            }
            used[v] = true;
            current.push(v);
            rec(len, used, current, out);
            current.pop();
            used[v] = false;
        }
    }
    rec(len, &mut used, &mut current, &mut out);
    out
}

/// Diagonal matrix of `z_λ`.
pub fn diagonal_z(n: u32) -> TransitionMatrix {
    TransitionMatrix::diagonal(n, |lambda| Rat::from_integer(z(lambda)))
}

/// Diagonal matrix of `ε_λ`.
pub fn diagonal_eps(n: u32) -> TransitionMatrix {
    TransitionMatrix::diagonal(n, |lambda| Rat::from_integer(epsilon(lambda).into()))
}

/// Diagonal matrix of `D^[d]_λ`.
pub fn diagonal_d(n: u32, d: Truncation) -> TransitionMatrix {
    TransitionMatrix::diagonal(n, |lambda| Rat::from_integer(d_coefficient(lambda, d)))
}

/// The transition matrix from `{h_λ^[d]}` to a classical basis, evaluated
/// through the diagonal factorizations.
pub fn transition_hd(n: u32, d: Truncation, target: BasisTag) -> Result<Arc<TransitionMatrix>, Error> {
    if matches!(target, BasisTag::Hd(_)) {
        return Err(Error::Parse(format!(
            "transition_hd targets a classical basis, got {target}"
        )));
    }
    Ok(cached((n, BasisTag::Hd(d), target), || {
        let r = matrix_p_to_m(n);
        let rt = r.transpose();
        let z_inv = diagonal_z(n).inverse().expect("z is positive");
        let dd = diagonal_d(n, d);
        let built = match target {
            BasisTag::P => rt.multiply(&z_inv).unwrap().multiply(&dd).unwrap(),
            BasisTag::M => rt
                .multiply(&z_inv)
                .unwrap()
                .multiply(&dd)
                .unwrap()
                .multiply(&r)
                .unwrap(),
            BasisTag::H => {
                let r_star = rt.inverse().expect("R is nonsingular");
                rt.multiply(&dd).unwrap().multiply(&r_star).unwrap()
            }
            BasisTag::E => {
                let r_star = rt.inverse().expect("R is nonsingular");
                rt.multiply(&dd)
                    .unwrap()
                    .multiply(&diagonal_eps(n))
                    .unwrap()
                    .multiply(&r_star)
                    .unwrap()
            }
            BasisTag::S => {
                let k_inv = kostka_matrix(n).inverse().expect("K is unitriangular");
                rt.multiply(&z_inv)
                    .unwrap()
                    .multiply(&dd)
                    .unwrap()
                    .multiply(&r)
                    .unwrap()
                    .multiply(&k_inv)
                    .unwrap()
            }
            BasisTag::Hd(_) => unreachable!("rejected above"),
        };
        TransitionMatrix {
            degree: n,
            source: BasisTag::Hd(d),
            target,
            entries: built.entries,
        }
    }))
}

/// Expansion of each basis in the monomial basis.
fn basis_to_m(n: u32, tag: BasisTag) -> Arc<TransitionMatrix> {
    match tag {
        BasisTag::M => Arc::new(TransitionMatrix::identity(n, BasisTag::M, BasisTag::M)),
        BasisTag::P => matrix_p_to_m(n),
        BasisTag::S => kostka_matrix(n),
        BasisTag::H => transition_hd(n, Truncation::Infinity, BasisTag::M)
            .expect("m is a valid target"),
        BasisTag::E => {
            transition_hd(n, Truncation::Finite(1), BasisTag::M).expect("m is a valid target")
        }
        BasisTag::Hd(d) => transition_hd(n, d, BasisTag::M).expect("m is a valid target"),
    }
}

/// `M(source, target)` for any pair of basis tags.
pub fn matrix_between(n: u32, source: BasisTag, target: BasisTag) -> Arc<TransitionMatrix> {
    if source == target {
        return cached((n, source, target), || {
            TransitionMatrix::identity(n, source, target)
        });
    }
    if let BasisTag::Hd(d) = source {
        if !matches!(target, BasisTag::Hd(_)) {
            return transition_hd(n, d, target).expect("classical target");
        }
    }
    cached((n, source, target), || {
        let src_m = basis_to_m(n, source);
        if target == BasisTag::M {
            return TransitionMatrix {
                degree: n,
                source,
                target,
                entries: src_m.entries.clone(),
            };
        }
        let tgt_m_inv = basis_to_m(n, target)
            .inverse()
            .expect("basis matrices are nonsingular");
        let product = src_m.multiply(&tgt_m_inv).unwrap();
        TransitionMatrix {
            degree: n,
            source,
            target,
            entries: product.entries,
        }
    })
}

/// Re-expresses `f` in the target basis. `convert(convert(f, B), A) = f`
/// whenever `A` is the original basis.
pub fn convert(f: &SymFunc, target: BasisTag) -> SymFunc {
    if f.basis() == target {
        return f.clone();
    }
    let matrix = matrix_between(f.degree(), f.basis(), target);
    matrix.apply(f).expect("degrees agree by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn int_rows(m: &TransitionMatrix) -> Vec<Vec<i64>> {
        m.rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| {
                        assert!(r.is_integer(), "expected integer entry, got {r}");
                        use num::ToPrimitive;
                        r.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn p_to_m_small_degrees() {
        assert_eq!(int_rows(&matrix_p_to_m(1)), vec![vec![1]]);
        // p₂ = m₂, p₁₁ = m₂ + 2m₁₁
        assert_eq!(int_rows(&matrix_p_to_m(2)), vec![vec![1, 0], vec![1, 2]]);
    }

    #[test]
    fn p_to_m_power_sum_row_is_first_unit() {
        // p_n = m_n: the row of (4) is (1,0,0,0,0)
        let r = matrix_p_to_m(4);
        assert_eq!(int_rows(&r)[0], vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn kostka_degree_three() {
        let k = kostka_matrix(3);
        assert_eq!(
            int_rows(&k),
            vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]
        );
    }

    #[test]
    fn kostka_diagonal_is_one() {
        for n in 0..=6 {
            let k = kostka_matrix(n);
            for i in 0..k.size() {
                assert_eq!(k.entry(i, i), &rat_int(1));
            }
        }
    }

    #[test]
    fn kostka_standard_tableaux_count() {
        // two standard Young tableaux of shape (2,1)
        assert_eq!(count_ssyt(&part("2,1"), &part("1,1,1")), 2);
    }

    #[test]
    fn diagonal_examples() {
        let eps = diagonal_eps(3);
        assert_eq!(
            (0..3).map(|i| eps.entry(i, i).clone()).collect::<Vec<_>>(),
            vec![rat_int(1), rat_int(-1), rat_int(1)]
        );
        let zd = diagonal_z(2);
        assert_eq!(zd.entry(0, 0), &rat_int(2));
        assert_eq!(zd.entry(1, 1), &rat_int(2));
        let dd = diagonal_d(3, Truncation::Finite(2));
        assert_eq!(
            (0..3).map(|i| dd.entry(i, i).clone()).collect::<Vec<_>>(),
            vec![rat_int(-2), rat_int(1), rat_int(1)]
        );
    }

    #[test]
    fn inverse_of_identity() {
        let id = TransitionMatrix::identity(4, BasisTag::M, BasisTag::M);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn inverse_of_r_at_degree_two() {
        let inv = matrix_p_to_m(2).inverse().unwrap();
        assert_eq!(inv.entry(0, 0), &rat_int(1));
        assert_eq!(inv.entry(0, 1), &rat_int(0));
        assert_eq!(inv.entry(1, 0), &(rat_int(-1) / rat_int(2)));
        assert_eq!(inv.entry(1, 1), &(rat_int(1) / rat_int(2)));
    }

    #[test]
    fn inverse_times_original_is_identity() {
        for n in 0..=5 {
            let r = matrix_p_to_m(n);
            let prod = r.inverse().unwrap().multiply(&r).unwrap();
            assert_eq!(
                prod.entries,
                TransitionMatrix::identity(n, BasisTag::M, BasisTag::M).entries
            );
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = TransitionMatrix::new(
            2,
            BasisTag::M,
            BasisTag::M,
            vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]],
        )
        .unwrap();
        assert_eq!(m.inverse().unwrap_err(), Error::SingularMatrix);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn transpose_is_an_involution() {
        let r = matrix_p_to_m(4);
        assert_eq!(r.transpose().transpose(), *r);
    }

    #[test]
    fn hd_matrix_reproduces_published_degree_four_table() {
        let m = transition_hd(4, Truncation::Finite(2), BasisTag::M).unwrap();
        let expected = vec![
            vec![0, 0, 1, 1, 1],
            vec![0, 1, 2, 3, 4],
            vec![1, 2, 3, 4, 6],
            vec![1, 3, 4, 7, 12],
            vec![1, 4, 6, 12, 24],
        ];
        assert_eq!(int_rows(&m), expected);
    }

    #[test]
    fn hd_schur_expansion_of_h3_d2() {
        // h₃^[2] = s₂₁ − s₁₁₁
        let m = transition_hd(3, Truncation::Finite(2), BasisTag::S).unwrap();
        assert_eq!(m.rows()[0], vec![rat_int(0), rat_int(1), rat_int(-1)]);
    }

    #[test]
    fn hd_one_in_h_basis_matches_classical_e_to_h() {
        let via_hd = transition_hd(3, Truncation::Finite(1), BasisTag::H).unwrap();
        let classical = matrix_between(3, BasisTag::E, BasisTag::H);
        assert_eq!(via_hd.entries, classical.entries);
    }

    #[test]
    fn degenerate_tags_expand_identically() {
        for n in 0..=5 {
            for target in [BasisTag::M, BasisTag::P, BasisTag::H, BasisTag::E, BasisTag::S] {
                assert_eq!(
                    transition_hd(n, Truncation::Finite(1), target).unwrap().entries,
                    matrix_between(n, BasisTag::E, target).entries,
                    "d=1 vs e at n={n}, target {target}"
                );
                assert_eq!(
                    transition_hd(n, Truncation::Infinity, target).unwrap().entries,
                    matrix_between(n, BasisTag::H, target).entries,
                    "d=∞ vs h at n={n}, target {target}"
                );
            }
        }
    }

    #[test]
    fn convert_examples() {
        // p₂ in the monomial basis is m₂
        let p2 = SymFunc::basis_element(BasisTag::P, &part("2"));
        let in_m = convert(&p2, BasisTag::M);
        assert_eq!(in_m.coefficient(&part("2")), rat_int(1));
        assert_eq!(in_m.coeffs().len(), 1);

        // e₃ = p₁³/6 − p₂p₁/2 + p₃/3
        let e3 = SymFunc::basis_element(BasisTag::E, &part("3"));
        let in_p = convert(&e3, BasisTag::P);
        assert_eq!(in_p.coefficient(&part("1,1,1")), rat_int(1) / rat_int(6));
        assert_eq!(in_p.coefficient(&part("2,1")), rat_int(-1) / rat_int(2));
        assert_eq!(in_p.coefficient(&part("3")), rat_int(1) / rat_int(3));

        // h₃^[2] in the power-sum basis
        let h3d2 = SymFunc::basis_element(BasisTag::Hd(Truncation::Finite(2)), &part("3"));
        let in_p = convert(&h3d2, BasisTag::P);
        assert_eq!(in_p.coefficient(&part("1,1,1")), rat_int(1) / rat_int(6));
        assert_eq!(in_p.coefficient(&part("2,1")), rat_int(1) / rat_int(2));
        assert_eq!(in_p.coefficient(&part("3")), rat_int(-2) / rat_int(3));
    }

    #[test]
    fn convert_round_trips() {
        let tags = [
            BasisTag::M,
            BasisTag::E,
            BasisTag::H,
            BasisTag::P,
            BasisTag::S,
            BasisTag::Hd(Truncation::Finite(2)),
        ];
        for n in 0..=5u32 {
            // a fixed pseudo-random small-integer coefficient vector
            let mut coeffs = BTreeMap::new();
            for (i, lambda) in enumerate_partitions(n).into_iter().enumerate() {
                let c = ((i as i64 * 7 + n as i64 * 3) % 11) - 5;
                if c != 0 {
                    coeffs.insert(lambda, rat_int(c));
                }
            }
            for a in tags {
                let f = SymFunc::new(a, n, coeffs.clone()).unwrap();
                for b in tags {
                    let back = convert(&convert(&f, b), a);
                    assert_eq!(back, f, "round trip {a} → {b} → {a} at n = {n}");
                }
            }
        }
    }

    #[test]
    fn elementary_in_schur_basis_uses_conjugate_kostka() {
        for n in 0..=6u32 {
            let k = kostka_matrix(n);
            let order = enumerate_partitions(n);
            for (mu_col, mu) in order.iter().enumerate() {
                let e_mu = SymFunc::basis_element(BasisTag::E, mu);
                let in_s = convert(&e_mu, BasisTag::S);
                for lambda in &order {
                    let conj_row = order
                        .iter()
                        .position(|p| *p == lambda.conjugate())
                        .unwrap();
                    assert_eq!(
                        in_s.coefficient(lambda),
                        *k.entry(conj_row, mu_col),
                        "e_{mu} coefficient of s_{lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn multiply_m_basis_matches_known_product() {
        // m₁ · m₁ = m₂ + 2m₁₁
        let m1 = SymFunc::basis_element(BasisTag::M, &part("1"));
        let sq = multiply_m_basis(&m1, &m1).unwrap();
        assert_eq!(sq.coefficient(&part("2")), rat_int(1));
        assert_eq!(sq.coefficient(&part("1,1")), rat_int(2));
    }

    #[test]
    fn matrix_serializes_to_documented_schema() {
        let m = transition_hd(2, Truncation::Finite(2), BasisTag::M).unwrap();
        let json = serde_json::to_string(&*m).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"source":"hd(2)","target":"m","order":["2","1,1"],"entries":[["1","1"],["1","2"]]}"#
        );
    }

    #[test]
    fn basis_tag_round_trip() {
        for tag in [
            BasisTag::M,
            BasisTag::E,
            BasisTag::H,
            BasisTag::P,
            BasisTag::S,
            BasisTag::Hd(Truncation::Finite(3)),
            BasisTag::Hd(Truncation::Infinity),
        ] {
            assert_eq!(tag.to_string().parse::<BasisTag>().unwrap(), tag);
        }
        assert!("q".parse::<BasisTag>().is_err());
    }
}
