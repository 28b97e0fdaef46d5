//! Exact arithmetic in the cyclotomic field `ℚ(ξ)`, `ξ` a primitive `m`-th
//! root of unity, realized as `ℚ[X]/(Φ_m(X))` in the power basis.
//!
//! The module evaluates power sums, monomial symmetric functions and Schur
//! functions at the tuple `(ξ, ξ², …, ξ^d)` for `m = d+1`, entirely
//! symbolically. Two different fields meet in [`identity_check`], which works
//! in `ℚ(ζ)` for `ζ` a primitive `lcm`-order root and embeds both tuples
//! through powers of `ζ`.

use num::integer::lcm;
use num::traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::partition::{enumerate_partitions, refinement_tuples, Partition};
use crate::polyring::distinct_permutations;
use crate::{rat_to_string, Error, Int, Rat};

/// `Φ_m` as ascending integer coefficients, computed by dividing `X^m − 1`
/// by `Φ_k` for every proper divisor `k` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<Int> {
    assert!(m >= 1);
    let mut table: Vec<Vec<Int>> = Vec::with_capacity(m as usize);
    for k in 1..=m {
        // X^k − 1
        let mut num = vec![Int::from(0); k as usize + 1];
        num[0] = Int::from(-1);
        num[k as usize] = Int::from(1);
        let mut phi = num;
        for j in 1..k {
            if k % j == 0 {
                phi = poly_div_exact(&phi, &table[j as usize - 1]);
            }
        }
        table.push(phi);
    }
    table.pop().unwrap()
}

/// Exact division of integer polynomials with monic divisor; panics on a
/// nonzero remainder.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    assert!(den.last().map(|c| c == &Int::from(1)) == Some(true), "divisor must be monic");
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    assert!(rem.len() > dd);
    let mut quot = vec![Int::from(0); rem.len() - dd];
    for t in (dd..rem.len()).rev() {
        let c = rem[t].clone();
        if c.is_zero() {
            continue;
        }
        quot[t - dd] = c.clone();
        for (j, den_j) in den.iter().enumerate() {
            let sub = den_j * &c;
            rem[t - dd + j] -= sub;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division left a remainder");
    quot
}

/// An element of `ℚ(ξ)` for `ξ` a primitive `order`-th root of unity, in
/// canonical reduced form: a coefficient vector of length `φ(order)` over
/// the power basis `1, X, …, X^{φ−1}` modulo `Φ_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order).len() - 1;
        CycNum {
            order,
            coeffs: vec![Rat::zero(); phi],
        }
    }

    pub fn from_rat(order: u32, value: Rat) -> Self {
        let mut out = CycNum::zero(order);
        out.coeffs[0] = value;
        out
    }

    pub fn one(order: u32) -> Self {
        CycNum::from_rat(order, Rat::one())
    }

    /// `ξ^k`, reduced.
    pub fn zeta_pow(order: u32, k: u32) -> Self {
        let k = (k % order) as usize;
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = Rat::one();
        CycNum::from_poly(order, coeffs)
    }

    /// Builds an element from an arbitrary-degree polynomial in `ξ`,
    /// reducing modulo `Φ_order`. `Φ` is monic, so `X^t` rewrites to lower
    /// powers exactly.
    pub fn from_poly(order: u32, mut coeffs: Vec<Rat>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let modulo: Vec<Rat> = phi.iter().map(|c| Rat::from_integer(c.clone())).collect();
        for t in (deg..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[t], Rat::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..deg {
                let sub = &modulo[j] * &c;
                coeffs[t - deg + j] -= sub;
            }
        }
        coeffs.resize(deg, Rat::zero());
        CycNum { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value of this element, when it lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycNum) -> Result<CycNum, Error> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycNum) -> Result<CycNum, Error> {
        self.add(&other.scale(&Rat::from_integer(Int::from(-1))))
    }

    pub fn scale(&self, c: &Rat) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> Result<CycNum, Error> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let mut conv = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        Ok(CycNum::from_poly(self.order, conv))
    }

    pub fn pow(&self, mut exponent: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.order);
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            base = base.mul(&base).expect("same order");
            exponent >>= 1;
        }
        acc
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(rat_to_string).collect();
        let mut st = serializer.serialize_struct("CycNum", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `p_n(ξ, …, ξ^d) = Σ_{k=1}^{d} ξ^{kn}`, computed symbolically and checked
/// against the closed form: `d` when `(d+1) | n`, and `−1` otherwise. A
/// mismatch is a fatal internal error.
pub fn power_sum_at_roots(d: u32, n: u32) -> CycNum {
    assert!(d >= 1 && n >= 1);
    let order = d + 1;
    let mut acc = CycNum::zero(order);
    for k in 1..=d {
        acc = acc
            .add(&CycNum::zeta_pow(order, (k * n) % order))
            .expect("same order");
    }
    let expected = if n % (d + 1) == 0 {
        Rat::from_integer(Int::from(d))
    } else {
        Rat::from_integer(Int::from(-1))
    };
    assert_eq!(
        acc,
        CycNum::from_rat(order, expected),
        "power sum at roots disagrees with its closed form (d={d}, n={n})"
    );
    acc
}

/// `m_λ` evaluated at the geometric tuple `(ζ^e, ζ^{2e}, …, ζ^{te})` inside
/// `ℚ(ζ)` of the given order: the sum of `ζ^{e·Σ_j j·α_j}` over all distinct
/// rearrangements `α` of `λ` padded to length `t`. Zero when `ℓ(λ) > t`.
pub fn monomial_at_root_powers(order: u32, step: u32, count: u32, lambda: &Partition) -> CycNum {
    if lambda.length() > count as usize {
        return CycNum::zero(order);
    }
    let mut padded: Vec<u32> = lambda.parts().to_vec();
    padded.resize(count as usize, 0);
    let mut acc = CycNum::zero(order);
    for arrangement in distinct_permutations(&padded) {
        let exponent: u64 = arrangement
            .iter()
            .enumerate()
            .map(|(j, &a)| (j as u64 + 1) * u64::from(step) * u64::from(a))
            .sum();
        acc = acc
            .add(&CycNum::zeta_pow(order, (exponent % u64::from(order)) as u32))
            .expect("same order");
    }
    acc
}

/// `m_λ(ξ, …, ξ^d)` for `ξ` the primitive `(d+1)`-th root of unity.
pub fn monomial_at_roots(d: u32, lambda: &Partition) -> CycNum {
    assert!(d >= 1);
    monomial_at_root_powers(d + 1, 1, d, lambda)
}

/// `s_λ(ξ, …, ξ^d)` by the Jacobi–Trudi determinant, with the complete
/// homogeneous values derived from the power sums via Newton's identities in
/// `ℚ(ξ)`. Zero when `λ` has more parts than the tuple has entries.
pub fn schur_at_roots(d: u32, lambda: &Partition) -> CycNum {
    assert!(d >= 1);
    let order = d + 1;
    if lambda.length() > d as usize {
        return CycNum::zero(order);
    }
    if lambda.is_empty() {
        return CycNum::one(order);
    }
    let len = lambda.length();
    let max_h = lambda.parts()[0] as usize + len - 1;
    let h = complete_homogeneous_at_roots(d, max_h as u32);
    let matrix: Vec<Vec<CycNum>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let k = lambda.parts()[i] as i64 - i as i64 + j as i64;
                    if k < 0 {
                        CycNum::zero(order)
                    } else {
                        h[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&matrix, order)
}

/// `h_0(ξ⃗), …, h_max(ξ⃗)` via `k·h_k = Σ_{i=1}^{k} p_i·h_{k−i}`.
fn complete_homogeneous_at_roots(d: u32, max: u32) -> Vec<CycNum> {
    let order = d + 1;
    let mut h = vec![CycNum::one(order)];
    for k in 1..=max {
        let mut acc = CycNum::zero(order);
        for i in 1..=k {
            let term = power_sum_at_roots(d, i)
                .mul(&h[(k - i) as usize])
                .expect("same order");
            acc = acc.add(&term).expect("same order");
        }
        h.push(acc.scale(&Rat::new(Int::from(1), Int::from(k))));
    }
    h
}

/// Laplace expansion along the first row; fields are small here, so the
/// factorial blow-up is irrelevant.
fn determinant(matrix: &[Vec<CycNum>], order: u32) -> CycNum {
    let n = matrix.len();
    if n == 0 {
        return CycNum::one(order);
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut acc = CycNum::zero(order);
    for (col, head) in matrix[0].iter().enumerate() {
        if head.is_zero() {
            continue;
        }
        let minor: Vec<Vec<CycNum>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut term = head.mul(&determinant(&minor, order)).expect("same order");
        if col % 2 == 1 {
            term = term.scale(&Rat::from_integer(Int::from(-1)));
        }
        acc = acc.add(&term).expect("same order");
    }
    acc
}

/// Both sides of the refinement identity over `ℚ(ζ)` for `ζ` of order
/// `lcm(d+1, d′+1)`:
/// `Σ_{λ⊢|μ|} Σ_{(μ¹,…)⊢λ, sort ⋃ μ^i = μ} m_λ(ξ⃗) ∏_i m_{μ^i}(η⃗)` and its
/// mirror with `ξ⃗` and `η⃗` exchanged.
pub fn identity_sides(d: u32, d_prime: u32, mu: &Partition) -> Result<(CycNum, CycNum), Error> {
    if mu.length() > (d * d_prime) as usize {
        return Err(Error::LengthExceeded(mu.length(), (d * d_prime) as usize));
    }
    let order = lcm(d + 1, d_prime + 1);
    let xi_step = order / (d + 1);
    let eta_step = order / (d_prime + 1);
    let side = |outer_step: u32, outer_count: u32, inner_step: u32, inner_count: u32| {
        let mut acc = CycNum::zero(order);
        for lambda in enumerate_partitions(mu.weight()) {
            let outer = monomial_at_root_powers(order, outer_step, outer_count, &lambda);
            if outer.is_zero() {
                continue;
            }
            let mut tuple_sum = CycNum::zero(order);
            for tuple in refinement_tuples(&lambda, mu).expect("weights agree") {
                let mut product = CycNum::one(order);
                for part in &tuple {
                    let factor = monomial_at_root_powers(order, inner_step, inner_count, part);
                    product = product.mul(&factor).expect("same order");
                }
                tuple_sum = tuple_sum.add(&product).expect("same order");
            }
            acc = acc
                .add(&outer.mul(&tuple_sum).expect("same order"))
                .expect("same order");
        }
        acc
    };
    let lhs = side(xi_step, d, eta_step, d_prime);
    let rhs = side(eta_step, d_prime, xi_step, d);
    Ok((lhs, rhs))
}

/// Whether the two sides of the refinement identity agree for `μ`.
pub fn identity_check(d: u32, d_prime: u32, mu: &Partition) -> Result<bool, Error> {
    let (lhs, rhs) = identity_sides(d, d_prime, mu)?;
    Ok(lhs == rhs)
}
