//! Arithmetic obstructions to geodesic-transitivity: the number of
//! `δ`-geodesics must divide the order of any group acting regularly on them.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::prime_power;
use crate::error::{Error, Result};

/// Whether `count` divides `order`.
pub fn divisibility_screen(count: &BigUint, order: &BigUint) -> bool {
    !count.is_zero() && (order % count).is_zero()
}

/// `ℒ_δ = v b_0 ⋯ b_(δ−1)`.
pub fn top_geodesic_count(v: u64, b: &[u64]) -> BigUint {
    b.iter().fold(BigUint::from(v), |acc, &x| acc * BigUint::from(x))
}

fn from_factors(factors: &[(u64, u32)]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
}

/// The two unitary Taylor graphs on `2(q³+1)` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaylorScreen {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    /// `(q+1) | 4f`.
    pub first_reduced: bool,
    /// `(q²+1) | (q+1)·4f`.
    pub second_reduced: bool,
    /// `v k μ_i | q³(q³+1)(q²−1)·4f`, evaluated without reduction.
    pub first_full: bool,
    pub second_full: bool,
    /// `(q+1) > 4f` and `(q²+1) > (q+1)·4f`.
    pub inequalities: bool,
}

impl TaylorScreen {
    pub fn new(q: u64) -> Result<TaylorScreen> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if p == 2 || q <= 3 {
            return Err(Error::BadParams(format!("Taylor screen needs an odd prime power q > 3, got {q}")));
        }
        let big = |x: u64| BigUint::from(x);
        let four_f = 4 * f as u64;
        let v = big(2) * (big(q).pow(3) + 1u32);
        let k = big(q).pow(3);
        let mu1 = (big(q) + 1u32) * (big(q).pow(2) - 1u32) / 2u32;
        let mu2 = (big(q) - 1u32) * (big(q).pow(2) + 1u32) / 2u32;
        let order = big(q).pow(3) * (big(q).pow(3) + 1u32) * (big(q).pow(2) - 1u32) * four_f;
        Ok(TaylorScreen {
            q,
            p,
            f,
            first_reduced: four_f.is_multiple_of(q + 1),
            second_reduced: ((q + 1) * four_f).is_multiple_of(q * q + 1),
            first_full: divisibility_screen(&(&v * &k * mu1), &order),
            second_full: divisibility_screen(&(v * k * mu2), &order),
            inequalities: q + 1 > four_f && q * q + 1 > (q + 1) * four_f,
        })
    }

    /// Both graphs are ruled out, and the reduced and full tests agree.
    pub fn confirms(&self) -> bool {
        !self.first_reduced
            && !self.second_reduced
            && self.first_reduced == self.first_full
            && self.second_reduced == self.second_full
            && self.inequalities
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SporadicScreen {
    pub name: String,
    pub v: u64,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    #[serde(with = "super::decimal")]
    pub count: BigUint,
    #[serde(with = "super::decimal")]
    pub order: BigUint,
    pub divides: bool,
}

/// The four sporadic distance-transitive graphs with printed automorphism
/// group orders.
pub fn sporadic_screens() -> Vec<SporadicScreen> {
    let rows: [(&str, u64, Vec<u64>, Vec<u64>, BigUint); 4] = [
        (
            "incidence graph of the 2-(176,50,14) design",
            352,
            vec![50, 49, 36],
            vec![1, 14, 50],
            from_factors(&[(2, 10), (3, 2), (5, 3), (7, 1), (11, 1)]),
        ),
        (
            "antipodal subgraph of HF(2,2)",
            280,
            vec![9, 8, 6, 3],
            vec![1, 1, 3, 8],
            BigUint::from(280u32) * from_factors(&[(2, 5), (3, 3)]),
        ),
        (
            "Patterson graph",
            22880,
            vec![280, 243, 144, 10],
            vec![1, 8, 90, 280],
            from_factors(&[(2, 14), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)]),
        ),
        (
            "double of the truncated Golay coset graph",
            1 << 11,
            vec![22, 21, 20, 16, 6, 2, 1],
            vec![1, 2, 6, 16, 20, 21, 22],
            from_factors(&[(2, 19), (3, 2), (5, 1), (7, 1), (11, 1)]),
        ),
    ];
    rows.into_iter()
        .map(|(name, v, b, c, order)| {
            let count = top_geodesic_count(v, &b);
            SporadicScreen {
                name: name.to_string(),
                v,
                divides: divisibility_screen(&count, &order),
                b,
                c,
                count,
                order,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenReport {
    pub q_max: u64,
    pub taylor: Vec<TaylorScreen>,
    pub sporadic: Vec<SporadicScreen>,
    /// Every screen rules out geodesic-transitivity.
    pub all_confirmed: bool,
}

pub fn census_screens(q_max: u64) -> Result<ScreenReport> {
    if q_max < 5 {
        return Err(Error::BadParams(format!("q_max must be at least 5, got {q_max}")));
    }
    let mut taylor = Vec::new();
    for q in (5..=q_max).step_by(2) {
        if prime_power(q).is_some() {
            taylor.push(TaylorScreen::new(q)?);
        }
    }
    let sporadic = sporadic_screens();
    let all_confirmed = taylor.iter().all(TaylorScreen::confirms) && sporadic.iter().all(|s| !s.divides);
    Ok(ScreenReport { q_max, taylor, sporadic, all_confirmed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility() {
        assert!(divisibility_screen(&BigUint::from(6u32), &BigUint::from(720u32)));
        assert!(!divisibility_screen(&BigUint::from(7u32), &BigUint::from(720u32)));
        assert!(!divisibility_screen(&BigUint::zero(), &BigUint::from(720u32)));
    }

    #[test]
    fn sporadic_values() {
        let s = sporadic_screens();
        assert_eq!(s[0].count, BigUint::from(31_046_400u32));
        assert_eq!(s[0].count, from_factors(&[(2, 8), (3, 2), (5, 2), (7, 2), (11, 1)]));
        assert_eq!(s[0].order, BigUint::from(88_704_000u32));
        assert_eq!(s[2].count, from_factors(&[(2, 13), (3, 7), (5, 3), (7, 1), (11, 1), (13, 1)]));
        assert_eq!(s[3].count, from_factors(&[(2, 20), (3, 2), (5, 1), (7, 1), (11, 1)]));
        assert!(s.iter().all(|x| !x.divides));
        let v = serde_json::to_value(&s[0]).unwrap();
        assert_eq!(v["count"], "31046400");
        assert_eq!(serde_json::from_value::<SporadicScreen>(v).unwrap(), s[0]);
    }

    #[test]
    fn taylor_examples() {
        let five = TaylorScreen::new(5).unwrap();
        assert!(!five.first_reduced && five.confirms());
        let nine = TaylorScreen::new(9).unwrap();
        assert_eq!((nine.p, nine.f), (3, 2));
        assert!(nine.confirms());
        assert!(TaylorScreen::new(8).is_err());
        assert!(TaylorScreen::new(3).is_err());
        assert!(census_screens(4).is_err());
        let r = census_screens(200).unwrap();
        assert!(r.all_confirmed);
        assert_eq!(r.taylor.first().map(|t| t.q), Some(5));
    }
}
