//! The truncated homogeneous functions `h_λ^[d]`, their matrix-counting
//! interpretations, and the Petrie coefficients `s_λ^F`.
//!
//! `h_n^[d]` is the degree-`n` slice of `∏_k (1 + x_k + ⋯ + x_k^d)`, so its
//! monomial coefficients are indicators of partitions with parts at most `d`;
//! products `h_λ^[d]` count `[0,d]`-matrices with prescribed row and column
//! sums. Everything here is computed at least twice: a closed form or
//! factorization on one side and a brute-force enumeration on the other.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::bases::{matrix_p_to_m, BasisTag, SymFunc};
use crate::partition::{
    canonical_index, d_coefficient, enumerate_partitions, z, Partition, Truncation,
};
use crate::polyring::{
    extract_monomial_coeffs, monomial_symmetric_block, product_generating, SparsePoly,
};
use crate::{Error, Rat};

/// Entry regime for matrix counting: `Bounded` restricts entries to `[0,d]`,
/// `Congruent` to nonnegative integers that are `0` or `1` mod `d+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Bounded,
    Congruent,
}

/// A matrix-counting question: how many nonnegative integer matrices have
/// row sums `row`, column sums `col`, and entries in the regime given by
/// `mode` and `d`. The count is zero unless `|row| = |col|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCountQuery {
    pub d: Truncation,
    pub row: Partition,
    pub col: Partition,
    pub mode: CountMode,
}

impl MatrixCountQuery {
    pub fn count(&self) -> Result<u64, Error> {
        match self.mode {
            CountMode::Bounded => Ok(count_bounded_matrices(self.d, &self.row, &self.col)),
            CountMode::Congruent => match self.d {
                Truncation::Finite(d) => Ok(count_mod_matrices(d, &self.row, &self.col)),
                Truncation::Infinity => Err(Error::Parse(
                    "congruent counting requires a finite truncation".into(),
                )),
            },
        }
    }
}

/// `h_n^[d]` as a monomial-basis table.
///
/// Computed two ways that must agree: the exponent-multiset rule (the
/// coefficient of `m_λ` is 1 exactly when every part of `λ` is at most `d`)
/// and the degree-`n` slice of the truncated generating product. Divergence
/// is a fatal internal error.
pub fn hd_n(d: Truncation, n: u32) -> SymFunc {
    let mut table = BTreeMap::new();
    for lambda in enumerate_partitions(n) {
        let fits = match d {
            Truncation::Infinity => true,
            Truncation::Finite(d) => lambda.parts().first().copied().unwrap_or(0) <= d,
        };
        if fits {
            table.insert(lambda, Rat::from_integer(1.into()));
        }
    }

    let num_vars = (n as usize).max(1);
    let slice = product_generating(d, num_vars, n).homogeneous_slice(n);
    let from_product =
        extract_monomial_coeffs(&slice, n).expect("generating product is symmetric");
    assert_eq!(
        table, from_product,
        "h_n^[d] tables disagree between the exponent rule and the generating product"
    );

    SymFunc::new(BasisTag::M, n, table).expect("keys are partitions of n")
}

/// `h_λ^[d] = ∏_i h_{λ_i}^[d]` as a monomial-basis table, multiplied out in
/// `|λ|` variables. The coefficient of `m_μ` equals
/// `count_bounded_matrices(d, λ, μ)`.
pub fn hd_lambda(d: Truncation, lambda: &Partition) -> SymFunc {
    let n = lambda.weight();
    let num_vars = (n as usize).max(1);
    let mut acc = SparsePoly::one(num_vars, n);
    for &part in lambda.parts() {
        let slice = product_generating(d, num_vars, part).homogeneous_slice(part);
        acc = acc.mul_truncated(&slice, n).expect("shared variable set");
    }
    let table = extract_monomial_coeffs(&acc, n).expect("products of h_n^[d] are symmetric");
    SymFunc::new(BasisTag::M, n, table).expect("keys are partitions of n")
}

/// `h_λ^[d] = Σ_{μ⊢n} z_μ^{-1} D^[d]_μ R_{μλ} p_μ` as a power-sum table.
pub fn hd_via_p(d: Truncation, lambda: &Partition) -> SymFunc {
    let n = lambda.weight();
    let r = matrix_p_to_m(n);
    let col = canonical_index(lambda);
    let mut coeffs = BTreeMap::new();
    for (row, mu) in enumerate_partitions(n).into_iter().enumerate() {
        let r_entry = r.entry(row, col);
        if r_entry.is_zero() {
            continue;
        }
        let coeff = Rat::new(d_coefficient(&mu, d), z(&mu)) * r_entry;
        if !coeff.is_zero() {
            coeffs.insert(mu, coeff);
        }
    }
    SymFunc::new(BasisTag::P, n, coeffs).expect("keys are partitions of n")
}

/// `M^[d]_{λμ}`: the number of `[0,d]`-matrices with row sums `λ` and column
/// sums `μ`. Returns 0 on weight mismatch.
pub fn count_bounded_matrices(d: Truncation, row: &Partition, col: &Partition) -> u64 {
    let cap = |bound: u32| match d {
        Truncation::Finite(d) => d.min(bound),
        Truncation::Infinity => bound,
    };
    count_matrices(row, col, &cap, &|value, bound| value <= cap(bound))
}

/// `N^[d]_{λμ}`: matrices with row sums `λ`, column sums `μ`, every entry
/// congruent to 0 or 1 mod `d+1`.
pub fn count_mod_matrices(d: u32, row: &Partition, col: &Partition) -> u64 {
    let modulus = d + 1;
    let cap = move |bound: u32| {
        // largest value ≤ bound that is ≡ 0 or 1 mod (d+1)
        let q = bound / modulus;
        let r = bound % modulus;
        if r >= 1 {
            q * modulus + 1
        } else {
            q * modulus
        }
    };
    count_matrices(row, col, &cap, &move |value, bound| {
        value <= bound && value % modulus <= 1
    })
}

/// Backtracking matrix counter. Fills cells row by row against running
/// column residuals; `cap(bound)` is the largest admissible entry under a
/// residual `bound` and `allowed(value, bound)` the admissibility test.
/// Prunes a row as soon as its residual exceeds what the remaining cells can
/// still absorb.
fn count_matrices(
    row: &Partition,
    col: &Partition,
    cap: &dyn Fn(u32) -> u32,
    allowed: &dyn Fn(u32, u32) -> bool,
) -> u64 {
    if row.weight() != col.weight() {
        return 0;
    }
    let rows = row.parts();
    let mut col_res: Vec<u32> = col.parts().to_vec();
    fill_rows(rows, &mut col_res, cap, allowed)
}

fn fill_rows(
    rows: &[u32],
    col_res: &mut Vec<u32>,
    cap: &dyn Fn(u32) -> u32,
    allowed: &dyn Fn(u32, u32) -> bool,
) -> u64 {
    let Some((&row_sum, rest)) = rows.split_first() else {
        return col_res.iter().all(|&c| c == 0) as u64;
    };
    fill_cells(row_sum, 0, rest, col_res, cap, allowed)
}

fn fill_cells(
    row_remaining: u32,
    col_idx: usize,
    later_rows: &[u32],
    col_res: &mut Vec<u32>,
    cap: &dyn Fn(u32) -> u32,
    allowed: &dyn Fn(u32, u32) -> bool,
) -> u64 {
    if col_idx == col_res.len() {
        if row_remaining != 0 {
            return 0;
        }
        return fill_rows(later_rows, col_res, cap, allowed);
    }
    let rest_capacity: u32 = col_res[col_idx + 1..].iter().map(|&c| cap(c)).sum();
    let bound = col_res[col_idx];
    let hi = cap(bound).min(row_remaining);
    let mut total = 0;
    for value in 0..=hi {
        if row_remaining - value > rest_capacity || !allowed(value, bound) {
            continue;
        }
        col_res[col_idx] -= value;
        total += fill_cells(
            row_remaining - value,
            col_idx + 1,
            later_rows,
            col_res,
            cap,
            allowed,
        );
        col_res[col_idx] += value;
    }
    total
}

/// The Petrie coefficient `s_λ^F = det(f_{λ_i−i+j})` where `f_k` is the
/// indicator of `0 ≤ k ≤ d`. Always −1, 0 or 1; anything else is a fatal
/// internal error.
pub fn petrie_coefficient_det(d: u32, lambda: &Partition) -> i64 {
    let len = lambda.length();
    let mut matrix: Vec<Vec<i128>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let k = lambda.parts()[i] as i64 - i as i64 + j as i64;
                    i128::from(k >= 0 && k <= d as i64)
                })
                .collect()
        })
        .collect();
    let det = bareiss_determinant(&mut matrix);
    assert!(
        (-1..=1).contains(&det),
        "Petrie determinant out of range at d={d}, λ={lambda}: {det}"
    );
    det as i64
}

/// Fraction-free determinant; exact for integer matrices.
fn bareiss_determinant(a: &mut [Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// The combinatorial rule for `s_λ^F`: zero unless `λ₁ ≤ d` and the residues
/// of `λ′ + δ_d` are pairwise distinct mod `d+1`; otherwise
/// `(−1)^{|λ|} (−1)^{d+r} sign(σ)` for the unique missing residue `r` and the
/// permutation `σ` aligning `λ′ + δ_d` with `δ_{d+1} ∖ r`.
///
/// The determinant is definitional; the extra `(−1)^{|λ|}` reconciles the
/// rule with it (`s^F_λ = (−1)^{|λ|} s_{λ′}(ξ,…,ξ^d)`).
pub fn petrie_coefficient_rule(d: u32, lambda: &Partition) -> i64 {
    if lambda.parts().first().copied().unwrap_or(0) > d {
        return 0;
    }
    let modulus = d + 1;
    let conj = lambda.conjugate();
    let mut padded: Vec<u32> = conj.parts().to_vec();
    padded.resize(d as usize, 0);

    // residues of λ′_i + d − i (1-based i) mod d+1
    let residues: Vec<u32> = padded
        .iter()
        .enumerate()
        .map(|(i, &c)| (c + d - (i as u32 + 1)) % modulus)
        .collect();
    let mut seen = vec![false; modulus as usize];
    for &r in &residues {
        if seen[r as usize] {
            return 0;
        }
        seen[r as usize] = true;
    }
    let missing = seen
        .iter()
        .position(|&s| !s)
        .expect("d residues among d+1 values miss exactly one") as u32;

    // δ_{d+1} ∖ missing, in decreasing order
    let reference: Vec<u32> = (0..modulus).rev().filter(|&v| v != missing).collect();
    let perm: Vec<usize> = residues
        .iter()
        .map(|a| reference.iter().position(|b| b == a).unwrap())
        .collect();
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }

    let parity = |k: u32| if k % 2 == 0 { 1i64 } else { -1i64 };
    parity(lambda.weight()) * parity(d + missing) * parity(inversions)
}

/// Checks the kernel expansion
/// `∏_{i,j}(1 + x_i y_j + ⋯ + x_i^d y_j^d) = Σ_λ h^[d]_λ(x) m_λ(y)`
/// on all bidegree-`(k,k)` coefficients with `k ≤ cap`.
pub fn verify_kernel(d: Truncation, vx: usize, vy: usize, cap: u32) -> bool {
    assert!(vx as u32 >= cap && vy as u32 >= cap, "need vx, vy ≥ cap");
    let nv = vx + vy;
    let full_cap = 2 * cap;
    let xs = 0..vx;
    let ys = vx..nv;
    let per_factor = d.clamp(cap);

    let mut lhs = SparsePoly::one(nv, full_cap);
    for i in xs.clone() {
        for j in ys.clone() {
            let mut factor = SparsePoly::zero(nv, full_cap);
            for a in 0..=per_factor {
                let mut exps = vec![0; nv];
                exps[i] = a;
                exps[j] = a;
                factor.add_term(exps, Rat::from_integer(1.into()));
            }
            lhs = lhs
                .mul_truncated(&factor, full_cap)
                .expect("shared variable set");
        }
    }

    let mut rhs = SparsePoly::zero(nv, full_cap);
    for n in 0..=cap {
        for lambda in enumerate_partitions(n) {
            let table = hd_lambda(d, &lambda);
            let mut x_part = SparsePoly::zero(nv, full_cap);
            for (mu, coeff) in table.coeffs() {
                let m = monomial_symmetric_block(nv, full_cap, xs.clone(), mu);
                x_part = x_part.add(&m.scale(coeff)).expect("shared variable set");
            }
            let y_part = monomial_symmetric_block(nv, full_cap, ys.clone(), &lambda);
            let term = x_part
                .mul_truncated(&y_part, full_cap)
                .expect("shared variable set");
            rhs = rhs.add(&term).expect("shared variable set");
        }
    }

    let balanced = |m: &crate::polyring::Monomial| {
        let dx: u32 = m.exponents()[xs.clone()].iter().sum();
        let dy: u32 = m.exponents()[ys.clone()].iter().sum();
        dx == dy && dx <= cap
    };
    lhs.filter_terms(balanced) == rhs.filter_terms(balanced)
}
