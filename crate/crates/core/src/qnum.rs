//! Gaussian binomials in q² and the numbers F^(m)_r(s) built from them.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

fn pow_big(q: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

/// `[n brack j] = Π_{i<j} (q^{2n} − q^{2i}) / (q^{2j} − q^{2i})`.
///
/// Zero for `j < 0` or `0 <= n < j`. A negative `n` with `j > 0` has no
/// integral value and also returns zero; no caller needs it.
pub fn qbinom2(n: i64, j: i64, q: u64) -> BigInt {
    assert!(q >= 2, "q must be at least 2");
    if j < 0 || (n >= 0 && j > n) {
        return BigInt::zero();
    }
    if j == 0 {
        return BigInt::one();
    }
    if n < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j as u64 {
        num *= pow_big(q, 2 * n as u64) - pow_big(q, 2 * i);
        den *= pow_big(q, 2 * j as u64) - pow_big(q, 2 * i);
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "q²-binomial [{n} brack {j}] at q={q} is not integral");
    quot
}

type Key = (i64, i64, i64, u64);

static F_CACHE: LazyLock<Mutex<HashMap<Key, BigInt>>> = LazyLock::new(Default::default);

/// `F^(m)_r(s) = Σ_{j=0}^{r} (−1)^{r−j} q^{(r−j)(r−j−1)} [n−j brack n−r] [n−s brack j] c^j`
/// with `n = ⌊m/2⌋`, `c = q^{m(m−1)/(2n)}`.
///
/// Zero outside `m >= 0`, `0 <= r, s <= n`. For `n = 0` the only value is
/// `F_0(0) = 1`.
pub fn f_num(m: i64, r: i64, s: i64, q: u64) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    let n = m / 2;
    if r < 0 || r > n || s < 0 || s > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    let key = (m, r, s, q);
    if let Some(v) = F_CACHE.lock().unwrap().get(&key) {
        return v.clone();
    }
    let num = m * (m - 1);
    assert!(num % (2 * n) == 0, "exponent m(m-1)/(2n) not integral for m={m}");
    let c = pow_big(q, (num / (2 * n)) as u64);
    let mut total = BigInt::zero();
    for j in 0..=r {
        let d = (r - j) as u64;
        let mut term = pow_big(q, d * d.saturating_sub(1))
            * qbinom2(n - j, n - r, q)
            * qbinom2(n - s, j, q)
            * Pow::pow(&c, j as u64);
        if d % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    F_CACHE.lock().unwrap().insert(key, total.clone());
    total
}

/// The table `T[r][s] = F^(m)_r(s)` for `0 <= r, s <= ⌊m/2⌋`, checked against
/// `T·T = q^{m(m−1)/2}·I`.
pub fn f_matrix(m: i64, q: u64) -> Result<Vec<Vec<BigInt>>> {
    let n = (m / 2).max(0);
    let t: Vec<Vec<BigInt>> = (0..=n)
        .map(|r| (0..=n).map(|s| f_num(m, r, s, q)).collect())
        .collect();
    let scale = pow_big(q, (m * (m - 1) / 2).max(0) as u64);
    let size = t.len();
    for r in 0..size {
        for p in 0..size {
            let sum: BigInt = (0..size).map(|s| &t[r][s] * &t[s][p]).sum();
            let want = if r == p { scale.clone() } else { BigInt::zero() };
            if sum != want {
                return Err(Error::OrthogonalityViolation(format!(
                    "m={m} q={q}: (T·T)[{r}][{p}] = {sum}, expected {want}"
                )));
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(qbinom2(5, 0, 3), BigInt::one());
        assert_eq!(qbinom2(2, 1, 2), BigInt::from(5));
        assert_eq!(qbinom2(3, 2, 2), BigInt::from(21));
        assert_eq!(qbinom2(2, 3, 2), BigInt::zero());
        assert_eq!(qbinom2(2, -1, 2), BigInt::zero());
        assert_eq!(f_num(2, 1, 0, 2), BigInt::one());
        assert_eq!(f_num(2, 1, 1, 2), BigInt::from(-1));
        assert_eq!(f_num(5, 3, 0, 2), BigInt::zero());
        assert_eq!(f_num(-1, 0, 0, 2), BigInt::zero());
    }

    #[test]
    fn tables() {
        assert_eq!(f_matrix(1, 5).unwrap(), vec![vec![BigInt::one()]]);
        let t = f_matrix(2, 2).unwrap();
        assert_eq!(t, vec![vec![1.into(), 1.into()], vec![1.into(), BigInt::from(-1)]]);
        assert_eq!(f_matrix(4, 2).unwrap().len(), 3);
    }
}
