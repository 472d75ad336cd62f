//! Finite fields, dense matrices and canonical subspaces.

pub mod field;
pub mod matrix;
pub mod subspace;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use field::{is_prime, prime_power, Elem, Field};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::Bounds;

/// The number of `m`-dimensional subspaces of `GF(q)^n`.
///
/// ```
/// use geodex::algebra::gaussian_binomial;
/// assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35u32.into());
/// ```
pub fn gaussian_binomial(n: u32, m: u32, q: u64) -> Result<BigUint> {
    if m > n {
        return Err(Error::BadParams(format!("gaussian binomial needs m <= n, got n={n} m={m}")));
    }
    if q < 2 {
        return Err(Error::BadParams(format!("q = {q} is not a field order")));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Flat canonical bases of every `k`-subspace of `F^n`, sorted.
pub(crate) fn enumerate_canonical(field: &Field, n: usize, k: usize) -> Vec<Vec<Elem>> {
    let q = field.order();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut base = vec![0; k * n];
        for (r, &c) in pivots.iter().enumerate() {
            base[r * n + c] = 1;
        }
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut m = base.clone();
            for (&(r, c), &v) in free.iter().zip(&vals) {
                m[r * n + c] = v;
            }
            out.push(m);
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] < q {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Every `k`-subspace of `GF(q)^n` in lexicographic order of canonical bases.
pub fn enumerate_subspaces(field: &Field, n: usize, k: usize, bounds: &Bounds) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::BadParams(format!("k = {k} exceeds n = {n}")));
    }
    let vectors = (field.order() as f64).powi(n as i32);
    if vectors > bounds.max_vectors as f64 {
        return Err(Error::TooLarge(format!("q^n = {vectors} vectors")));
    }
    Ok(enumerate_canonical(field, n, k).into_iter().map(|rows| Subspace::from_canonical(n, rows)).collect())
}
