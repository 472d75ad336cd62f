//! Finite fields GF(p^f) with table-driven arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! where `c_0 + c_1 x + ... + c_{f-1} x^{f-1}` is its residue modulo the
//! defining polynomial. The integer `0` is zero and `1` is one in every field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element in the integer encoding described in the module docs.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Fields with at most this many elements get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

struct Tables {
    p: u32,
    f: u32,
    q: u32,
    /// Monic modulus, lowest coefficient first, length `f + 1`.
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

/// A finite field. Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.f == other.t.f && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.t.p, self.t.f, self.t.modulus)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^f` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

// Dense polynomial helpers over GF(p), lowest coefficient first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic.
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mc) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * mc) % p) % p;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut e: u32, p: u32, f: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(f as usize);
    for _ in 0..f {
        v.push(e % p);
        e /= p;
    }
    v
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `idx`.
fn monic_from_index(idx: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut v = decode(idx, p, deg);
    v.push(1);
    v
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most `deg / 2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = (poly.len() - 1) as u32;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let div = monic_from_index(idx, p, d);
            let r = poly_rem(poly, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `f` with the smallest
/// integer encoding of its lower coefficients.
pub fn smallest_irreducible(p: u32, f: u32) -> Vec<u32> {
    if f == 1 {
        return vec![0, 1];
    }
    (0..p.pow(f))
        .map(|idx| monic_from_index(idx, p, f))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^f). When `modulus` is `None` the lexicographically
    /// smallest monic irreducible polynomial of degree `f` is used.
    pub fn new(p: u32, f: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if f == 0 {
            return Err(Error::BadParams("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(f)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64)
            .ok_or_else(|| Error::TooLarge(format!("field order {p}^{f} exceeds {MAX_FIELD_ORDER}")))?
            as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != f as usize + 1 || *m.last().unwrap() != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadParams(format!(
                        "modulus must be a monic polynomial of degree {f} with coefficients below {p}"
                    )));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::Reducible(m));
                }
                m
            }
            None => smallest_irreducible(p, f),
        };
        let t = Self::tables(p, f, q, modulus);
        Ok(Field { t: Arc::new(t) })
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Field> {
        match prime_power(q as u64) {
            Some((p, f)) => Field::new(p as u32, f, None),
            None => Err(Error::NotPrimePower(q as u64)),
        }
    }

    fn tables(p: u32, f: u32, q: u32, modulus: Vec<u32>) -> Tables {
        let mul_slow = |a: u32, b: u32| -> u32 {
            if f == 1 {
                return ((a as u64 * b as u64) % p as u64) as u32;
            }
            encode(&poly_mul_mod(&decode(a, p, f), &decode(b, p, f), &modulus, p), p)
        };
        // Find a primitive element.
        let order = q - 1;
        let mut gen = 0;
        'search: for cand in 1..q {
            let mut x = cand;
            for k in 1..=order {
                if x == 1 {
                    if k == order {
                        gen = cand;
                        break 'search;
                    }
                    break;
                }
                x = mul_slow(x, cand);
            }
        }
        if q == 2 {
            gen = 1;
        }
        let mut exp = vec![0; 2 * order as usize];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for k in 0..order {
            exp[k as usize] = x;
            exp[(k + order) as usize] = x;
            log[x as usize] = k;
            x = mul_slow(x, gen);
        }
        let neg: Vec<Elem> =
            (0..q).map(|a| encode(&decode(a, p, f).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)).collect();
        let add = (q <= ADD_TABLE_LIMIT && p != 2).then(|| {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                let da = decode(a, p, f);
                for b in 0..q {
                    let db = decode(b, p, f);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s, p);
                }
            }
            t
        });
        Tables { p, f, q, modulus, exp, log, neg, add }
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.f
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.t.q
    }

    /// The residue polynomial `x`, which together with its powers spans
    /// the field over the prime field.
    pub fn prime_basis(&self) -> Vec<Elem> {
        (0..self.t.f).map(|i| self.t.p.pow(i)).collect()
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Elem {
        if self.t.q == 2 {
            1
        } else {
            self.t.exp[1]
        }
    }

    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        decode(a, self.t.p, self.t.f)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Elem {
        encode(c, self.t.p)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.t;
        if t.p == 2 {
            a ^ b
        } else if t.f == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if let Some(tab) = &t.add {
            tab[(a * t.q + b) as usize]
        } else {
            let (mut a, mut b, mut r, mut pw) = (a, b, 0, 1);
            for _ in 0..t.f {
                r += ((a % t.p + b % t.p) % t.p) * pw;
                a /= t.p;
                b /= t.p;
                pw *= t.p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let order = t.q - 1;
        Ok(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.t.q - 1) as u64;
        let k = (self.t.log[a as usize] as u64 * (e % order)) % order;
        self.t.exp[k as usize]
    }

    /// `a^(p^r)`.
    pub fn frobenius(&self, a: Elem, r: u32) -> Elem {
        let r = r % self.t.f;
        self.pow(a, (self.t.p as u64).pow(r))
    }

    /// The involution `a -> a^sqrt(q)` of a field of square order.
    pub fn involution(&self) -> Result<impl Fn(Elem) -> Elem + '_> {
        if !self.t.f.is_multiple_of(2) {
            return Err(Error::NotASquare(self.t.q as u64));
        }
        let r = self.t.f / 2;
        Ok(move |a| self.frobenius(a, r))
    }

    pub fn is_square(&self, a: Elem) -> bool {
        a == 0 || self.t.p == 2 || self.t.log[a as usize].is_multiple_of(2)
    }

    /// Lifts a small integer into the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.t.p as i64) as Elem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf4_modulus_is_lexicographically_smallest() {
        // Over GF(2) the monic quadratics are x^2, x^2+1, x^2+x, x^2+x+1;
        // only the last one has no root.
        let roots = |m: [u32; 3]| (0..2).any(|x| (m[0] + m[1] * x + m[2] * x * x).is_multiple_of(2));
        let irreducible: Vec<_> =
            [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]].into_iter().filter(|m| !roots(*m)).collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        let f = Field::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(Field::new(2, 2, Some(vec![1, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn gf4_inverse_of_x() {
        let f = Field::new(2, 2, None).unwrap();
        // x is encoded as 2, x + 1 as 3.
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gf9_frobenius_is_an_involution() {
        let f = Field::new(3, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(a, 1), 1), a);
        }
        let sigma = f.involution().unwrap();
        assert!(f.elements().all(|a| sigma(sigma(a)) == a));
        assert!(f.elements().any(|a| sigma(a) != a));
    }

    #[test]
    fn multiplicative_group_order() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 125, 243, 256, 729, 1024] {
            let f = Field::of_order(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, (q - 1) as u64), 1, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [4u32, 8, 9, 25] {
            let f = Field::of_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_field_addition_without_table() {
        let f = Field::of_order(3125).unwrap();
        for a in (0..3125).step_by(97) {
            assert_eq!(f.sub(f.add(a, 1234), 1234), a);
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
