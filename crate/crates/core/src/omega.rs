//! The involution `ω` and the endomorphisms `ω^[d]`, realized diagonally on
//! the power-sum basis: `ω(p_λ) = ε_λ p_λ` and `ω^[d](p_λ) = ε_λ D^[d]_λ p_λ`.
//!
//! The defining property `ω^[d](e_n) = h_n^[d]` is a theorem here, checked by
//! tests and by [`verify_main2`]; the diagonal form is total and exact.

use crate::bases::{convert, multiply_m_basis, BasisTag, SymFunc};
use crate::partition::{d_coefficient, enumerate_partitions, epsilon, Partition, Truncation};
use crate::petrie::{count_mod_matrices, hd_n, hd_via_p};
use crate::{Error, Rat};

/// `ω`: scales the coefficient of `p_λ` by `ε_λ`, expressed back in the
/// argument's original basis. An involution.
pub fn omega(f: &SymFunc) -> SymFunc {
    let in_p = convert(f, BasisTag::P);
    let scaled = in_p.scale_by(|lambda| Rat::from_integer(epsilon(lambda).into()));
    convert(&scaled, f.basis())
}

/// `ω^[d]`: scales the coefficient of `p_λ` by `ε_λ D^[d]_λ`, expressed back
/// in the argument's original basis. `ω^[1]` is the identity and `ω^[∞] = ω`.
pub fn omega_d(d: Truncation, f: &SymFunc) -> SymFunc {
    let in_p = convert(f, BasisTag::P);
    let scaled = in_p.scale_by(|lambda| {
        Rat::from_integer(d_coefficient(lambda, d) * epsilon(lambda))
    });
    convert(&scaled, f.basis())
}

/// Checks `ω(H^[d](t)) = (H^[d](−t))⁻¹` degree by degree: for every
/// `1 ≤ n ≤ n_max` the convolution
/// `Σ_{k=0}^{n} (−1)^{n−k} ω(h_k^[d]) h_{n−k}^[d]` must vanish in `Λⁿ`
/// (and equal 1 at `n = 0`). Products are multiplied out in the monomial
/// basis through the polynomial ring.
pub fn verify_main2(d: Truncation, n_max: u32) -> bool {
    for n in 1..=n_max {
        let mut acc = SymFunc::zero(BasisTag::M, n);
        for k in 0..=n {
            let left = omega(&hd_n(d, k));
            let right = hd_n(d, n - k);
            let product = multiply_m_basis(&left, &right).expect("m-basis products");
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            acc = acc
                .add(&product.scale(&Rat::from_integer(sign.into())))
                .expect("degrees agree");
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// Checks `ω^[d] ω^[d′] = ω^[d′] ω^[d]` on every `p_λ` with `|λ| ≤ n_max`,
/// composing the two maps in both orders.
pub fn verify_commutation(d: Truncation, d_prime: Truncation, n_max: u32) -> bool {
    for n in 0..=n_max {
        for lambda in enumerate_partitions(n) {
            let p = SymFunc::basis_element(BasisTag::P, &lambda);
            let one_way = omega_d(d_prime, &omega_d(d, &p));
            let other_way = omega_d(d, &omega_d(d_prime, &p));
            if one_way != other_way {
                return false;
            }
        }
    }
    true
}

/// `ω(h_λ^[d])` as a monomial-basis table, computed through the power-sum
/// expansion. For odd `d` the coefficient of `m_μ` equals the congruent
/// matrix count `N^[d]_{λμ}`; the counting identity holds only there, so
/// other truncations are rejected.
pub fn omega_of_hd(d: Truncation, lambda: &Partition) -> Result<SymFunc, Error> {
    let Truncation::Finite(finite) = d else {
        return Err(Error::NotOddTruncation(d.to_string()));
    };
    if finite % 2 == 0 {
        return Err(Error::NotOddTruncation(d.to_string()));
    }
    let in_p = hd_via_p(d, lambda);
    let scaled = in_p.scale_by(|mu| Rat::from_integer(epsilon(mu).into()));
    Ok(convert(&scaled, BasisTag::M))
}

/// Entrywise check of `N^[d] = R′ ε z⁻¹ D^[d] R` against brute-force
/// congruent-matrix counts for all `λ, μ ⊢ n`.
pub fn verify_congruent_counts(d: u32, n: u32) -> Result<bool, Error> {
    let all = enumerate_partitions(n);
    for lambda in &all {
        let table = omega_of_hd(Truncation::Finite(d), lambda)?;
        for mu in &all {
            let count = count_mod_matrices(d, lambda, mu);
            if table.coefficient(mu) != Rat::from_integer(count.into()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
