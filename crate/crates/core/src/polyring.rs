//! Sparse exact-rational multivariate polynomials with total-degree
//! truncation.
//!
//! This is the brute-force oracle layer: every generating-function statement
//! in the crate is checked by expanding truncated products here and reading
//! off monomial coefficients. Coefficients are exact rationals; terms are
//! kept in graded-lexicographic order so serialization is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::Range;

use num::traits::Zero;

use crate::partition::{enumerate_partitions, epsilon, z, Partition, Truncation};
use crate::{Error, Rat};

/// Dense exponent vector, ordered by total degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn block_degree(&self, range: &Range<usize>) -> u32 {
        self.0[range.clone()].iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A truncated sparse polynomial: no stored coefficient is zero and no stored
/// term exceeds `degree_cap` in total degree.
#[derive(Debug, Clone)]
pub struct SparsePoly {
    num_vars: usize,
    degree_cap: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for SparsePoly {
    /// Equality is equality of term tables; the cap is bookkeeping.
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    pub fn zero(num_vars: usize, degree_cap: u32) -> Self {
        assert!(num_vars >= 1, "polynomials need at least one variable");
        SparsePoly {
            num_vars,
            degree_cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize, degree_cap: u32) -> Self {
        let mut p = SparsePoly::zero(num_vars, degree_cap);
        p.add_term(vec![0; num_vars], Rat::from_integer(1.into()));
        p
    }

    /// The variable `x_{idx}` (zero-based).
    pub fn var(num_vars: usize, degree_cap: u32, idx: usize) -> Self {
        assert!(idx < num_vars);
        let mut exps = vec![0; num_vars];
        exps[idx] = 1;
        let mut p = SparsePoly::zero(num_vars, degree_cap);
        p.add_term(exps, Rat::from_integer(1.into()));
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Adds `coeff · x^exps`, dropping the term if it lands on zero or
    /// exceeds the cap.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        assert_eq!(exps.len(), self.num_vars);
        let mono = Monomial(exps);
        if mono.total_degree() > self.degree_cap || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, Error> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableMismatch(self.num_vars, other.num_vars));
        }
        let mut out = self.clone();
        out.degree_cap = self.degree_cap.max(other.degree_cap);
        for (mono, coeff) in &other.terms {
            out.add_term(mono.0.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly, Error> {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rat) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.num_vars, self.degree_cap);
        }
        SparsePoly {
            num_vars: self.num_vars,
            degree_cap: self.degree_cap,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Product with every term of total degree above `cap` discarded.
    pub fn mul_truncated(&self, other: &SparsePoly, cap: u32) -> Result<SparsePoly, Error> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableMismatch(self.num_vars, other.num_vars));
        }
        let mut out = SparsePoly::zero(self.num_vars, cap);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            if da > cap {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.total_degree() > cap {
                    continue;
                }
                let exps = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(a, b)| a + b)
                    .collect::<Vec<_>>();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    /// Terms of total degree exactly `n`.
    pub fn homogeneous_slice(&self, n: u32) -> SparsePoly {
        self.filter_terms(|m| m.total_degree() == n)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> SparsePoly {
        SparsePoly {
            num_vars: self.num_vars,
            degree_cap: self.degree_cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }
}

/// `∏_{k=1}^{v} (1 + x_k + x_k² + ⋯ + x_k^{min(d,cap)})` truncated to total
/// degree `cap`. Its degree-`n` homogeneous slice is `h_n^[d]` in `v`
/// variables for every `n ≤ cap`.
pub fn product_generating(d: Truncation, v: usize, cap: u32) -> SparsePoly {
    assert!(v >= 1);
    let per_var = d.clamp(cap);
    let mut acc = SparsePoly::one(v, cap);
    for k in 0..v {
        let mut factor = SparsePoly::zero(v, cap);
        for e in 0..=per_var {
            let mut exps = vec![0; v];
            exps[k] = e;
            factor.add_term(exps, Rat::from_integer(1.into()));
        }
        acc = acc
            .mul_truncated(&factor, cap)
            .expect("factors share the variable set");
    }
    acc
}

/// `Σ_{i ∈ block} x_i^k` inside a larger variable set.
pub fn power_sum_block(num_vars: usize, cap: u32, block: Range<usize>, k: u32) -> SparsePoly {
    assert!(k >= 1);
    assert!(block.end <= num_vars);
    let mut p = SparsePoly::zero(num_vars, cap);
    for i in block {
        let mut exps = vec![0; num_vars];
        exps[i] = k;
        p.add_term(exps, Rat::from_integer(1.into()));
    }
    p
}

/// `p_λ` over a block of variables: the product of `power_sum_block` over the
/// parts of `λ`.
pub fn power_sum_partition_block(
    num_vars: usize,
    cap: u32,
    block: Range<usize>,
    lambda: &Partition,
) -> SparsePoly {
    let mut acc = SparsePoly::one(num_vars, cap);
    for &part in lambda.parts() {
        let p = power_sum_block(num_vars, cap, block.clone(), part);
        acc = acc.mul_truncated(&p, cap).expect("shared variable set");
    }
    acc
}

/// `m_λ` over a block of variables: the sum of all distinct monomials whose
/// exponent multiset is `λ`. Zero when `ℓ(λ)` exceeds the block width.
pub fn monomial_symmetric_block(
    num_vars: usize,
    cap: u32,
    block: Range<usize>,
    lambda: &Partition,
) -> SparsePoly {
    assert!(block.end <= num_vars);
    let width = block.len();
    let mut out = SparsePoly::zero(num_vars, cap);
    if lambda.length() > width {
        return out;
    }
    let mut padded: Vec<u32> = lambda.parts().to_vec();
    padded.resize(width, 0);
    for arrangement in distinct_permutations(&padded) {
        let mut exps = vec![0; num_vars];
        for (offset, e) in arrangement.into_iter().enumerate() {
            exps[block.start + offset] = e;
        }
        out.add_term(exps, Rat::from_integer(1.into()));
    }
    out
}

/// All distinct rearrangements of `values`.
pub(crate) fn distinct_permutations(values: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(values.len());
    let mut used = vec![false; values.len()];
    permute_rec(&sorted, &mut used, &mut current, &mut out);
    out
}

fn permute_rec(
    sorted: &[u32],
    used: &mut Vec<bool>,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if current.len() == sorted.len() {
        out.push(current.clone());
        return;
    }
    let mut prev: Option<u32> = None;
    for i in 0..sorted.len() {
        if used[i] || prev == Some(sorted[i]) {
            continue;
        }
        prev = Some(sorted[i]);
        used[i] = true;
        current.push(sorted[i]);
        permute_rec(sorted, used, current, out);
        current.pop();
        used[i] = false;
    }
}

/// Reads the m-basis coefficient table off the degree-`n` slice of a
/// symmetric polynomial: the coefficient of `x₁^{λ₁}⋯x_ℓ^{λ_ℓ}` for each
/// `λ ⊢ n` with `ℓ(λ) ≤ num_vars`.
///
/// The input must be symmetric in its variables (checked; an asymmetric
/// input signals an upstream bug) and must have at least `n` variables so
/// every partition of `n` is visible.
pub fn extract_monomial_coeffs(
    p: &SparsePoly,
    n: u32,
) -> Result<BTreeMap<Partition, Rat>, Error> {
    if (p.num_vars as u32) < n {
        return Err(Error::TooFewVariables {
            num_vars: p.num_vars,
            degree: n,
        });
    }
    check_symmetric(p)?;
    let mut out = BTreeMap::new();
    for lambda in enumerate_partitions(n) {
        if lambda.length() > p.num_vars {
            continue;
        }
        let mut exps: Vec<u32> = lambda.parts().to_vec();
        exps.resize(p.num_vars, 0);
        let coeff = p.coefficient(&exps);
        if !coeff.is_zero() {
            out.insert(lambda, coeff);
        }
    }
    Ok(out)
}

fn check_symmetric(p: &SparsePoly) -> Result<(), Error> {
    // Group terms by the multiset of their exponents: a symmetric polynomial
    // carries every rearrangement of a monomial with one shared coefficient.
    let mut groups: BTreeMap<Vec<u32>, Vec<&Rat>> = BTreeMap::new();
    for (mono, coeff) in &p.terms {
        let mut key = mono.0.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        groups.entry(key).or_default().push(coeff);
    }
    for (key, coeffs) in groups {
        let orbit = orbit_size(&key);
        if coeffs.len() as u128 != orbit || coeffs.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::NotSymmetric);
        }
    }
    Ok(())
}

/// Number of distinct rearrangements of a sorted exponent vector.
fn orbit_size(sorted_exps: &[u32]) -> u128 {
    let mut result: u128 = 1;
    let mut remaining = sorted_exps.len() as u128;
    let mut i = 0;
    while i < sorted_exps.len() {
        let mut run = 0u128;
        let value = sorted_exps[i];
        while i < sorted_exps.len() && sorted_exps[i] == value {
            run += 1;
            i += 1;
        }
        // choose positions for this run among the remaining slots
        result *= binomial(remaining, run);
        remaining -= run;
    }
    result
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Checks the triple-product expansion
/// `∏_{i,j,k}(1 + x_i y_j z_k) = Σ_λ ε_λ z_λ^{-1} p_λ(x) p_λ(y) p_λ(z)`
/// in `vx + vy + vz` variables, comparing all coefficients of terms whose
/// x-, y- and z-degrees agree and are at most `cap`.
pub fn verify_triple_product(vx: usize, vy: usize, vz: usize, cap: u32) -> bool {
    assert!(vx >= 1 && vy >= 1 && vz >= 1);
    let nv = vx + vy + vz;
    let full_cap = 3 * cap;
    let xs = 0..vx;
    let ys = vx..vx + vy;
    let zs = vx + vy..nv;

    let mut lhs = SparsePoly::one(nv, full_cap);
    for i in xs.clone() {
        for j in ys.clone() {
            for k in zs.clone() {
                let mut factor = SparsePoly::one(nv, full_cap);
                let mut exps = vec![0; nv];
                exps[i] = 1;
                exps[j] = 1;
                exps[k] = 1;
                factor.add_term(exps, Rat::from_integer(1.into()));
                lhs = lhs
                    .mul_truncated(&factor, full_cap)
                    .expect("shared variable set");
            }
        }
    }

    let mut rhs = SparsePoly::zero(nv, full_cap);
    for n in 0..=cap {
        for lambda in enumerate_partitions(n) {
            let coeff = Rat::new(epsilon(&lambda).into(), z(&lambda));
            let mut term = power_sum_partition_block(nv, full_cap, xs.clone(), &lambda);
            term = term
                .mul_truncated(
                    &power_sum_partition_block(nv, full_cap, ys.clone(), &lambda),
                    full_cap,
                )
                .expect("shared variable set");
            term = term
                .mul_truncated(
                    &power_sum_partition_block(nv, full_cap, zs.clone(), &lambda),
                    full_cap,
                )
                .expect("shared variable set");
            rhs = rhs.add(&term.scale(&coeff)).expect("shared variable set");
        }
    }

    let balanced = |m: &Monomial| {
        let dx = m.block_degree(&xs);
        dx == m.block_degree(&ys) && dx == m.block_degree(&zs) && dx <= cap
    };
    lhs.filter_terms(balanced) == rhs.filter_terms(balanced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn truncated_square_drops_high_terms() {
        // (1+x₁)² capped at 1 is 1+2x₁
        let p = SparsePoly::one(1, 2)
            .add(&SparsePoly::var(1, 2, 0))
            .unwrap();
        let sq = p.mul_truncated(&p, 1).unwrap();
        assert_eq!(sq.coefficient(&[0]), rat_int(1));
        assert_eq!(sq.coefficient(&[1]), rat_int(2));
        assert_eq!(sq.coefficient(&[2]), rat_int(0));
    }

    #[test]
    fn multiplication_by_one_is_identity() {
        let p = product_generating(Truncation::Finite(2), 3, 3);
        let q = SparsePoly::one(3, 3).mul_truncated(&p, 3).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn binomial_square_expansion() {
        // (x₁+x₂)² = x₁² + 2x₁x₂ + x₂²
        let s = SparsePoly::var(2, 2, 0).add(&SparsePoly::var(2, 2, 1)).unwrap();
        let sq = s.mul_truncated(&s, 2).unwrap();
        assert_eq!(sq.coefficient(&[2, 0]), rat_int(1));
        assert_eq!(sq.coefficient(&[1, 1]), rat_int(2));
        assert_eq!(sq.coefficient(&[0, 2]), rat_int(1));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = SparsePoly::one(2, 2);
        let b = SparsePoly::one(3, 2);
        assert!(matches!(
            a.mul_truncated(&b, 2),
            Err(Error::VariableMismatch(2, 3))
        ));
    }

    #[test]
    fn generating_product_elementary_case() {
        // d = 1, v = 2, cap = 2: (1+x₁)(1+x₂) = 1 + x₁ + x₂ + x₁x₂
        let p = product_generating(Truncation::Finite(1), 2, 2);
        assert_eq!(p.terms().count(), 4);
        assert_eq!(p.coefficient(&[0, 0]), rat_int(1));
        assert_eq!(p.coefficient(&[1, 0]), rat_int(1));
        assert_eq!(p.coefficient(&[0, 1]), rat_int(1));
        assert_eq!(p.coefficient(&[1, 1]), rat_int(1));
    }

    #[test]
    fn generating_product_degree_three_slice_for_d_two() {
        // the degree-3 slice over 3 variables is m_{21} + m_{111}
        let p = product_generating(Truncation::Finite(2), 3, 3);
        let slice = p.homogeneous_slice(3);
        let table = extract_monomial_coeffs(&slice, 3).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(part("2,1"), rat_int(1));
        expected.insert(part("1,1,1"), rat_int(1));
        assert_eq!(table, expected);
    }

    #[test]
    fn generating_product_complete_homogeneous_slice() {
        // d = ∞, v = 2: degree-2 slice is x₁² + x₁x₂ + x₂²
        let p = product_generating(Truncation::Infinity, 2, 2);
        let slice = p.homogeneous_slice(2);
        assert_eq!(slice.coefficient(&[2, 0]), rat_int(1));
        assert_eq!(slice.coefficient(&[1, 1]), rat_int(1));
        assert_eq!(slice.coefficient(&[0, 2]), rat_int(1));
        assert_eq!(slice.terms().count(), 3);
    }

    #[test]
    fn extract_reads_power_sum_square() {
        // p₁² = m₂ + 2m₁₁
        let p1 = power_sum_block(3, 2, 0..3, 1);
        let sq = p1.mul_truncated(&p1, 2).unwrap();
        let table = extract_monomial_coeffs(&sq, 2).unwrap();
        assert_eq!(table[&part("2")], rat_int(1));
        assert_eq!(table[&part("1,1")], rat_int(2));
    }

    #[test]
    fn extract_of_zero_polynomial_is_empty() {
        let table = extract_monomial_coeffs(&SparsePoly::zero(2, 2), 2).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn extract_rejects_asymmetric_input() {
        let p = SparsePoly::var(2, 2, 0); // x₁ alone
        assert_eq!(extract_monomial_coeffs(&p, 1), Err(Error::NotSymmetric));
    }

    #[test]
    fn extract_rejects_unfaithful_truncation() {
        let p = product_generating(Truncation::Finite(2), 2, 3);
        assert!(matches!(
            extract_monomial_coeffs(&p, 3),
            Err(Error::TooFewVariables { .. })
        ));
    }

    #[test]
    fn slice_of_elementary_product_is_e_n() {
        for v in 3..=5 {
            let p = product_generating(Truncation::Finite(1), v, v as u32);
            let slice = p.homogeneous_slice(v as u32);
            let table = extract_monomial_coeffs(&slice, v as u32).unwrap();
            let ones = Partition::from_unsorted(vec![1; v]);
            assert_eq!(table.len(), 1);
            assert_eq!(table[&ones], rat_int(1));
        }
    }

    #[test]
    fn extraction_is_independent_of_variable_count() {
        for n in 0..=5u32 {
            for d in [Truncation::Finite(1), Truncation::Finite(2), Truncation::Infinity] {
                let v = (n as usize).max(1);
                let small = product_generating(d, v, n).homogeneous_slice(n);
                let large = product_generating(d, v + 2, n).homogeneous_slice(n);
                assert_eq!(
                    extract_monomial_coeffs(&small, n).unwrap(),
                    extract_monomial_coeffs(&large, n).unwrap(),
                    "d = {d}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn monomial_symmetric_matches_orbit() {
        // m_{21} in 3 variables has 6 terms
        let m = monomial_symmetric_block(3, 3, 0..3, &part("2,1"));
        assert_eq!(m.terms().count(), 6);
        assert_eq!(m.coefficient(&[2, 1, 0]), rat_int(1));
        // too many parts for the block: zero
        let m = monomial_symmetric_block(2, 3, 0..2, &part("1,1,1"));
        assert!(m.is_zero());
    }

    #[test]
    fn triple_product_single_variable() {
        assert!(verify_triple_product(1, 1, 1, 2));
    }

    #[test]
    fn triple_product_cap_zero() {
        assert!(verify_triple_product(1, 1, 1, 0));
    }

    #[test]
    fn triple_product_two_variables() {
        assert!(verify_triple_product(2, 2, 2, 2));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = SparsePoly> {
            prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..=4), 0..6).prop_map(
                |terms| {
                    let mut p = SparsePoly::zero(3, 4);
                    for (exps, c) in terms {
                        p.add_term(exps, rat_int(c));
                    }
                    p
                },
            )
        }

        proptest! {
            #[test]
            fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
                prop_assert_eq!(
                    a.mul_truncated(&b, 4).unwrap(),
                    b.mul_truncated(&a, 4).unwrap()
                );
            }

            #[test]
            fn multiplication_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                let left = a.mul_truncated(&b, 4).unwrap().mul_truncated(&c, 4).unwrap();
                let right = a.mul_truncated(&b.mul_truncated(&c, 4).unwrap(), 4).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}
