//! Orders of the symplectic groups, as independent checks on Schreier–Sims.

use num_bigint::BigUint;
use num_traits::One;

/// `|Sp(2ω, q)| = q^(ω²) ∏ (q^(2i) − 1)`.
pub fn sp_order(omega: u32, q: u32) -> BigUint {
    let q = BigUint::from(q);
    (1..=omega).fold(q.pow(omega * omega), |acc, i| acc * (q.pow(2 * i) - BigUint::one()))
}

/// `|PSp(2ω, q)|`, the group induced on subspaces.
pub fn psp_order(omega: u32, q: u32) -> BigUint {
    let scalars = if q.is_multiple_of(2) { 1u32 } else { 2 };
    sp_order(omega, q) / scalars
}

/// Order of the group generated by the symplectic isometry generators acting
/// on subspaces: `PSp(2ω, q)` extended by the Frobenius map when `q` is not
/// prime.
pub fn psigmasp_order(omega: u32, q: u32) -> BigUint {
    let f = crate::algebra::field::prime_power(q as u64).map_or(1, |(_, f)| f);
    psp_order(omega, q) * f
}
