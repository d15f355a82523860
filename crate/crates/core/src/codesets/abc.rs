use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{dual_values, Distribution};
use crate::error::Result;
use crate::forms::{FormKind, OrbitIndex};
use crate::qnum::f_num;
use crate::scheme::{alpha_const, beta_const, qpow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcReport {
    pub ok: bool,
    pub diffs: Vec<String>,
}

fn at(d: &Distribution, i: OrbitIndex) -> BigRational {
    d.get(i)
}

fn even(d: &Distribution, r: usize, tau: i8) -> BigRational {
    if r == 0 && tau == -1 {
        BigRational::zero()
    } else {
        at(d, OrbitIndex::Even(r, tau))
    }
}

fn odd(d: &Distribution, r: isize) -> BigRational {
    if r < 1 {
        BigRational::zero()
    } else {
        at(d, OrbitIndex::Odd(r as usize))
    }
}

/// `a_{2s,1} + a_{2s,−1} + a_{2s−1}`.
fn agg_a(d: &Distribution, s: usize) -> BigRational {
    even(d, 2 * s, 1) + even(d, 2 * s, -1) + odd(d, 2 * s as isize - 1)
}

/// `a_{2s,1} + a_{2s,−1} + a_{2s+1}`.
fn agg_b(d: &Distribution, s: usize) -> BigRational {
    even(d, 2 * s, 1) + even(d, 2 * s, -1) + odd(d, 2 * s as isize + 1)
}

/// `q^{−s}(a_{2s,1} − a_{2s,−1})`, the weighting on the quadratic side.
fn agg_c_quad(d: &Distribution, s: usize, q: u64) -> BigRational {
    qpow(q, -(s as i64)) * (even(d, 2 * s, 1) - even(d, 2 * s, -1))
}

/// `(α_{−1}/β_r) a_{2r,1} − (α_1/β_r) a_{2r,−1}`, the weighting on the
/// symmetric side.
fn agg_c_sym(d: &Distribution, r: usize, q: u64) -> BigRational {
    let beta = beta_const(r, q);
    alpha_const(-1, q) / &beta * even(d, 2 * r, 1) - alpha_const(1, q) / beta * even(d, 2 * r, -1)
}

fn fsum(m: i64, r: usize, q: u64, vals: &[BigRational]) -> BigRational {
    vals.iter()
        .enumerate()
        .map(|(s, v)| BigRational::from_integer(f_num(m, r as i64, s as i64, q)) * v)
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Checks the three F-number transforms between the aggregates of the inner
/// distribution and those of the dual distribution:
/// `A' = F^(m+1) A`, `C' = F^(m) B`, `B' = q^m F^(m) C`.
pub fn abc_transform_check(kind: FormKind, q: u64, inner: &Distribution) -> Result<AbcReport> {
    let m = inner.m();
    let dual = dual_values(kind, q, inner)?;
    let (c_in, c_out): (fn(&Distribution, usize, u64) -> BigRational, fn(&Distribution, usize, u64) -> BigRational) =
        match kind {
            FormKind::Quadratic => (agg_c_quad, agg_c_sym),
            FormKind::Symmetric => (agg_c_sym, agg_c_quad),
        };
    let na = (m + 1) / 2;
    let nb = m / 2;
    let a: Vec<_> = (0..=na).map(|s| agg_a(inner, s)).collect();
    let b: Vec<_> = (0..=nb).map(|s| agg_b(inner, s)).collect();
    let c: Vec<_> = (0..=nb).map(|s| c_in(inner, s, q)).collect();
    let qm = qpow(q, m as i64);
    let mut diffs = Vec::new();
    for r in 0..=na {
        let want = fsum(m as i64 + 1, r, q, &a);
        let got = agg_a(&dual, r);
        if got != want {
            diffs.push(format!("A'_{r}: dual gives {got}, transform gives {want}"));
        }
    }
    for r in 0..=nb {
        let want = fsum(m as i64, r, q, &b);
        let got = c_out(&dual, r, q);
        if got != want {
            diffs.push(format!("C'_{r}: dual gives {got}, transform gives {want}"));
        }
        let want = &qm * fsum(m as i64, r, q, &c);
        let got = agg_b(&dual, r);
        if got != want {
            diffs.push(format!("B'_{r}: dual gives {got}, transform gives {want}"));
        }
    }
    Ok(AbcReport { ok: diffs.is_empty(), diffs })
}
