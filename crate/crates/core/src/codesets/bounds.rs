use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::Distribution;
use crate::error::{Error, Result};
use crate::forms::{FormKind, OrbitIndex};
use crate::qnum::qbinom2;
use crate::scheme::{big, qpow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundVariant {
    General,
    Additive,
    Elliptic,
}

fn qpow_int(q: u64, e: usize) -> BigInt {
    Pow::pow(BigInt::from(q), e as u64)
}

/// Largest possible size of a d-code (or elliptic d-code) of the given kind.
pub fn size_bound(kind: FormKind, m: usize, q: u64, d: usize, variant: BoundVariant) -> Result<BigInt> {
    if d == 0 || d > m {
        return Err(Error::UnsupportedCase(format!("need 1 <= d <= m, got d={d}, m={m}")));
    }
    if variant == BoundVariant::Elliptic {
        if kind != FormKind::Quadratic || m % 2 == 1 || d % 2 == 1 {
            return Err(Error::UnsupportedCase(
                "the elliptic bound covers quadratic forms with m and d even".into(),
            ));
        }
        return Ok(qpow_int(q, m * (m - d + 1) / 2));
    }
    if kind == FormKind::Quadratic && q % 2 == 0 {
        let e = match (m % 2, d % 2) {
            (1, 1) => m * (m - d + 2) / 2,
            (0, 1) => (m + 1) * (m - d + 1) / 2,
            (0, 0) => (m - 1) * (m - d + 2) / 2,
            _ => m * (m - d + 1) / 2,
        };
        return Ok(qpow_int(q, e));
    }
    // Symmetric forms, and quadratic forms for odd q through S ↦ S(x,x)/2.
    if d % 2 == 0 && variant != BoundVariant::Additive {
        return Err(Error::UnsupportedCase(format!(
            "no bound for non-additive {kind} codes with even d={d}; only the additive bound is known"
        )));
    }
    let e = if (m - d) % 2 == 0 {
        m * (m - d + 2) / 2
    } else {
        (m + 1) * (m - d + 1) / 2
    };
    Ok(qpow_int(q, e))
}

/// Design strength forced by meeting the bound: `2(⌊(m+1)/2⌋ − (d−1)/2)` for
/// odd d, `m−d+1` for elliptic codes.
pub fn design_strength(m: usize, d: usize, elliptic: bool) -> usize {
    if elliptic {
        m - d + 1
    } else {
        2 * ((m + 1) / 2 - (d - 1) / 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistCase {
    QuadOddMOddD,
    QuadEvenMOddD,
    QuadEvenQEvenDPartial,
    Elliptic,
}

impl std::str::FromStr for DistCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<DistCase> {
        match s {
            "quad-odd-m-odd-d" => Ok(DistCase::QuadOddMOddD),
            "quad-even-m-odd-d" => Ok(DistCase::QuadEvenMOddD),
            "quad-even-q-even-d-partial" => Ok(DistCase::QuadEvenQEvenDPartial),
            "elliptic" => Ok(DistCase::Elliptic),
            _ => Err(Error::Parse(format!("unknown distribution case {s:?}"))),
        }
    }
}

/// Either a full inner distribution or, where only aggregates are known,
/// `B_s = a_{2s,1} + a_{2s,−1} + a_{2s+1}` for `s = 0..=⌊m/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Theoretical {
    Full(Distribution),
    Aggregates {
        #[serde(with = "rational_strings")]
        b: Vec<BigRational>,
    },
}

mod rational_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

fn gb(n: i64, j: i64, q: u64) -> BigRational {
    BigRational::from_integer(qbinom2(n, j, q))
}

fn sign(j: i64) -> BigRational {
    if j % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `Σ_{j=0}^{upto} (−1)^j q^{j(j−1)} [top brack j] · term(j)`; empty for `upto < 0`.
fn alt_sum(upto: i64, top: i64, q: u64, term: impl Fn(i64) -> BigRational) -> BigRational {
    (0..=upto.max(-1))
        .map(|j| sign(j) * qpow(q, j * (j - 1)) * gb(top, j, q) * term(j))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Inner distributions of maximal codes from their closed forms.
pub fn theoretical_inner_dist(case: DistCase, m: usize, q: u64, d: usize) -> Result<Theoretical> {
    let unsupported = |why: &str| Err(Error::UnsupportedCase(format!("{case:?} with m={m}, d={d}: {why}")));
    if d == 0 || d > m {
        return unsupported("need 1 <= d <= m");
    }
    let (mi, qi) = (m as i64, q);
    let n = mi / 2;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out = Distribution::point(m);
    match case {
        DistCase::QuadOddMOddD => {
            if m % 2 == 0 || d % 2 == 0 {
                return unsupported("needs m and d odd");
            }
            let delta = (d as i64 - 1) / 2;
            let sum = |s: i64| {
                alt_sum(s - delta - 1, s, qi, |j| qpow(qi, (2 * n + 1) * (s - delta - j)) - big(1))
            };
            for s in 1..=n + 1 {
                out.set(OrbitIndex::Odd(2 * s as usize - 1), gb(n, s - 1, qi) * sum(s));
            }
            for s in 1..=n {
                for tau in [1i8, -1] {
                    let v = &half * qpow(qi, s) * (qpow(qi, s) + big(tau as i64)) * gb(n, s, qi) * sum(s);
                    out.set(OrbitIndex::Even(2 * s as usize, tau), v);
                }
            }
        }
        DistCase::QuadEvenMOddD => {
            if m % 2 == 1 || d % 2 == 0 {
                return unsupported("needs m even and d odd");
            }
            let delta = (d as i64 - 1) / 2;
            for s in 1..=n {
                let odd = (qpow(qi, 2 * s) - big(1))
                    * gb(n, s, qi)
                    * alt_sum(s - delta - 1, s - 1, qi, |j| qpow(qi, (2 * n + 1) * (s - delta - j - 1) + 2 * j));
                out.set(OrbitIndex::Odd(2 * s as usize - 1), odd);
                let first = &half
                    * gb(n, s, qi)
                    * alt_sum(s - delta, s, qi, |j| qpow(qi, (2 * n + 1) * (s - delta - j) + 2 * j) - big(1));
                let second = &half
                    * qpow(qi, s)
                    * gb(n, s, qi)
                    * alt_sum(s - delta - 1, s, qi, |j| {
                        qpow(qi, (2 * n + 1) * (s - delta - j) + 2 * (j - s)) - big(1)
                    });
                out.set(OrbitIndex::Even(2 * s as usize, 1), &first + &second);
                out.set(OrbitIndex::Even(2 * s as usize, -1), first - second);
            }
        }
        DistCase::QuadEvenQEvenDPartial => {
            if q % 2 == 1 || d % 2 == 1 {
                return unsupported("needs q and d even");
            }
            let delta = d as i64 / 2;
            let c = qpow(qi, mi * (mi - 1) / (2 * n));
            let mut b = vec![BigRational::one()];
            for s in 1..=n {
                let v = gb(n, s, qi)
                    * alt_sum(s - delta, s, qi, |j| Pow::pow(&c, (s - delta - j + 1) as u64) - big(1));
                b.push(v);
            }
            return Ok(Theoretical::Aggregates { b });
        }
        DistCase::Elliptic => {
            if m % 2 == 1 || d % 2 == 1 {
                return unsupported("needs m and d even");
            }
            let delta = d as i64 / 2;
            for s in 1..=n {
                let odd = (qpow(qi, 2 * s) - big(1))
                    * gb(n, s, qi)
                    * alt_sum(s - delta - 1, s - 1, qi, |j| qpow(qi, 2 * n * (s - delta - j - 1) + s + j - 1));
                out.set(OrbitIndex::Odd(2 * s as usize - 1), odd);
                for tau in [1i8, -1] {
                    let t = big(tau as i64);
                    let v = &half
                        * (qpow(qi, s) + &t)
                        * gb(n, s, qi)
                        * alt_sum(s - delta, s, qi, |j| qpow(qi, 2 * n * (s - delta - j) + j) - &t);
                    out.set(OrbitIndex::Even(2 * s as usize, tau), v);
                }
            }
        }
    }
    Ok(Theoretical::Full(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(t: Theoretical) -> Distribution {
        match t {
            Theoretical::Full(d) => d,
            Theoretical::Aggregates { .. } => panic!("expected a full distribution"),
        }
    }

    #[test]
    fn bounds() {
        let b = |k, m, q, d, v| size_bound(k, m, q, d, v).unwrap();
        assert_eq!(b(FormKind::Symmetric, 3, 2, 3, BoundVariant::General), 8.into());
        assert_eq!(b(FormKind::Quadratic, 4, 2, 4, BoundVariant::General), 8.into());
        assert_eq!(b(FormKind::Quadratic, 4, 2, 4, BoundVariant::Elliptic), 4.into());
        assert_eq!(b(FormKind::Symmetric, 3, 2, 2, BoundVariant::Additive), 16.into());
        assert!(matches!(
            size_bound(FormKind::Symmetric, 3, 2, 2, BoundVariant::General),
            Err(Error::UnsupportedCase(_))
        ));
        assert!(size_bound(FormKind::Quadratic, 4, 3, 2, BoundVariant::General).is_err());
        assert!(size_bound(FormKind::Quadratic, 4, 2, 2, BoundVariant::General).is_ok());
    }

    #[test]
    fn small_cases() {
        let d = full(theoretical_inner_dist(DistCase::QuadOddMOddD, 3, 2, 3).unwrap());
        assert_eq!(d.get(OrbitIndex::Odd(3)), big(7));
        assert_eq!(d.total(), big(8));
        let e = full(theoretical_inner_dist(DistCase::Elliptic, 4, 2, 4).unwrap());
        assert_eq!(e.get(OrbitIndex::Even(4, -1)), big(3));
        assert_eq!(e.total(), big(4));
        match theoretical_inner_dist(DistCase::QuadEvenQEvenDPartial, 4, 2, 4).unwrap() {
            Theoretical::Aggregates { b } => assert_eq!(b, vec![big(1), big(0), big(7)]),
            _ => panic!(),
        }
    }
}
