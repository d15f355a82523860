//! Valencies and eigenvalue tables of the quadratic-form scheme and its dual,
//! the symmetric bilinear-form scheme.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::forms::{
    classify_all, packed_pairing, space_size, Form, FormKind, OrbitIndex, QuadForm, SymForm,
};
use crate::gf::{Field, FieldElem};
use crate::qnum::f_num;

pub(crate) fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub(crate) fn qpow(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        Pow::pow(base, e as u64)
    } else {
        Pow::pow(base.recip(), (-e) as u64)
    }
}

fn f(m: usize, r: i64, s: i64, q: u64) -> BigRational {
    f_shift(m as i64, r, s, q)
}

fn f_shift(m: i64, r: i64, s: i64, q: u64) -> BigRational {
    BigRational::from_integer(f_num(m, r, s, q))
}

pub(crate) fn to_integer(x: BigRational, what: impl FnOnce() -> String) -> BigInt {
    assert!(x.is_integer(), "{} = {x} is not an integer", what());
    x.to_integer()
}

/// `α_ε`: `(1−ε)/2` for even q, `1/2` for odd q.
pub fn alpha_const(eps: i8, q: u64) -> BigRational {
    if q % 2 == 0 {
        BigRational::new(BigInt::from(1 - eps as i64), BigInt::from(2))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(2))
    }
}

/// `β_s`: 1 for even q, `q^s / 2` for odd q.
pub fn beta_const(s: usize, q: u64) -> BigRational {
    if q % 2 == 0 {
        BigRational::one()
    } else {
        qpow(q, s as i64) / big(2)
    }
}

/// `Π_{i<upto} (q^m − q^i) / Π_{i<s} (q^{2s} − q^{2i})`.
fn orbit_factor(s: usize, upto: usize, m: usize, q: u64) -> BigRational {
    let mut num = BigRational::one();
    for i in 0..upto {
        num *= qpow(q, m as i64) - qpow(q, i as i64);
    }
    let mut den = BigRational::one();
    for i in 0..s {
        den *= qpow(q, 2 * s as i64) - qpow(q, 2 * i as i64);
    }
    num / den
}

/// `|𝒬_i|` or `|𝒮_i|`; zero for inadmissible indices.
fn valency_raw(kind: FormKind, i: OrbitIndex, m: usize, q: u64) -> BigRational {
    if !i.is_admissible(m) {
        return BigRational::zero();
    }
    let s = i.half();
    match (i, kind) {
        (OrbitIndex::Odd(_), _) => orbit_factor(s, 2 * s + 1, m, q) / qpow(q, s as i64),
        (OrbitIndex::Even(_, t), FormKind::Quadratic) => {
            (qpow(q, s as i64) + big(t as i64)) / big(2) * orbit_factor(s, 2 * s, m, q)
        }
        (OrbitIndex::Even(_, t), FormKind::Symmetric) => {
            (alpha_const(t, q) * qpow(q, s as i64)
                + big(t as i64) * beta_const(s, q) * qpow(q, -(s as i64)))
                * orbit_factor(s, 2 * s, m, q)
        }
    }
}

/// `v_i` (quadratic) or `μ_i` (symmetric).
pub fn valency(kind: FormKind, i: OrbitIndex, m: usize, q: u64) -> Result<BigInt> {
    i.check_admissible(m)?;
    Ok(to_integer(valency_raw(kind, i, m, q), || {
        format!("valency of {i} ({kind}, m={m}, q={q})")
    }))
}

/// Valencies of both schemes together with the constants `α_±1` and `β_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValencyTable {
    pub m: usize,
    pub q: u64,
    pub index: Vec<OrbitIndex>,
    pub v: Vec<BigInt>,
    pub mu: Vec<BigInt>,
    pub alpha: [BigRational; 2],
    pub beta: Vec<BigRational>,
}

pub fn valency_table(m: usize, q: u64) -> ValencyTable {
    let index = OrbitIndex::all(m);
    let v = index
        .iter()
        .map(|&i| valency(FormKind::Quadratic, i, m, q).expect("admissible"))
        .collect();
    let mu = index
        .iter()
        .map(|&i| valency(FormKind::Symmetric, i, m, q).expect("admissible"))
        .collect();
    ValencyTable {
        m,
        q,
        index,
        v,
        mu,
        alpha: [alpha_const(1, q), alpha_const(-1, q)],
        beta: (0..=m / 2).map(|s| beta_const(s, q)).collect(),
    }
}

fn q_number_rational(k: OrbitIndex, i: OrbitIndex, m: usize, q: u64) -> BigRational {
    if !k.is_admissible(m) || !i.is_admissible(m) {
        return BigRational::zero();
    }
    if k.is_zero() {
        return BigRational::one();
    }
    if i.is_zero() {
        return valency_raw(FormKind::Symmetric, k, m, q);
    }
    let mi = m as i64;
    let r = k.half() as i64;
    let s = i.half() as i64;
    let q2r = qpow(q, 2 * r);
    match (k, i) {
        (OrbitIndex::Odd(_), OrbitIndex::Odd(_)) => -q2r * f_shift(mi - 1, r, s, q),
        (OrbitIndex::Odd(_), OrbitIndex::Even(_, t)) => {
            -q2r * f_shift(mi - 1, r, s - 1, q)
                + big(t as i64) * qpow(q, mi - s + 2 * r) * f_shift(mi - 2, r, s - 1, q)
        }
        (OrbitIndex::Even(_, e), OrbitIndex::Odd(_)) => {
            alpha_const(e, q) * q2r * f_shift(mi - 1, r, s, q)
                + big(e as i64) * beta_const(r as usize, q) * f(m, r, s, q)
        }
        (OrbitIndex::Even(_, e), OrbitIndex::Even(_, t)) => {
            alpha_const(e, q)
                * (q2r * f_shift(mi - 1, r, s - 1, q)
                    - big(t as i64) * qpow(q, mi - s + 2 * r - 2) * f_shift(mi - 2, r - 1, s - 1, q))
                + big(e as i64) * beta_const(r as usize, q) * f(m, r, s, q)
        }
    }
}

/// `Q_k(i)` from the closed form; zero when either orbit is empty.
pub fn q_number(k: OrbitIndex, i: OrbitIndex, m: usize, q: u64) -> BigInt {
    to_integer(q_number_rational(k, i, m, q), || {
        format!("Q_{k}({i}) at m={m}, q={q}")
    })
}

fn p_number_even_q(i: OrbitIndex, k: OrbitIndex, m: usize, q: u64) -> BigRational {
    if i.is_zero() {
        return BigRational::one();
    }
    if k.is_zero() {
        return valency_raw(FormKind::Quadratic, i, m, q);
    }
    let mi = m as i64;
    let s = i.half() as i64;
    let r = k.half() as i64;
    let q2s = qpow(q, 2 * s);
    let qs = qpow(q, s);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match (i, k) {
        (OrbitIndex::Odd(_), OrbitIndex::Odd(_)) => -q2s * f_shift(mi - 1, s, r, q),
        (OrbitIndex::Even(_, t), OrbitIndex::Odd(_)) => {
            half * (q2s * f_shift(mi - 1, s, r, q) + big(t as i64) * qs * f(m, s, r, q))
        }
        (OrbitIndex::Even(_, t), OrbitIndex::Even(_, 1)) => {
            half * qs.clone() * (qs + big(t as i64)) * f(m, s, r, q)
        }
        (OrbitIndex::Even(_, t), OrbitIndex::Even(..)) => {
            half * (q2s * f_shift(mi - 1, s, r - 1, q) + big(t as i64) * qs * f(m, s, r, q))
        }
        (OrbitIndex::Odd(_), OrbitIndex::Even(_, 1)) => {
            (qpow(q, mi) - q2s) * f(m, s, r, q)
        }
        (OrbitIndex::Odd(_), OrbitIndex::Even(..)) => -q2s * f_shift(mi - 1, s, r - 1, q),
    }
}

/// `P_i(k)`: the six-case closed form for even q. For odd q the scheme is
/// self-dual and `P_i(k) = Q_i(k)`, the Q-number with the same subscript and
/// argument. Either way the value is checked against
/// `P_i(k) = (v_i / μ_k) Q_k(i)`.
pub fn p_number(i: OrbitIndex, k: OrbitIndex, m: usize, q: u64) -> BigInt {
    if !k.is_admissible(m) || !i.is_admissible(m) {
        return BigInt::zero();
    }
    let p = if q % 2 == 0 {
        p_number_even_q(i, k, m, q)
    } else {
        q_number_rational(i, k, m, q)
    };
    let via_q = valency_raw(FormKind::Quadratic, i, m, q) / valency_raw(FormKind::Symmetric, k, m, q)
        * q_number_rational(k, i, m, q);
    assert_eq!(p, via_q, "P_{i}({k}) disagrees with (v_i/μ_k)Q_k(i) at m={m}, q={q}");
    to_integer(p, || format!("P_{i}({k}) at m={m}, q={q}"))
}

/// Which of the two eigenvalue families a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    P,
    Q,
}

/// An eigenvalue table. `rows[a][b]` is `Q_a(b)` or `P_a(b)`, with `a` and `b`
/// running over `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigTable {
    pub m: usize,
    pub q: u64,
    pub scheme: FormKind,
    pub which: Which,
    pub index: Vec<OrbitIndex>,
    #[serde(with = "decimal_rows")]
    pub rows: Vec<Vec<BigInt>>,
}

mod decimal_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let strs = Vec::<Vec<String>>::deserialize(d)?;
        strs.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| x.parse().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl EigTable {
    pub fn get(&self, a: OrbitIndex, b: OrbitIndex) -> &BigInt {
        &self.rows[a.position()][b.position()]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index");
        for i in &self.index {
            out.push(',');
            out.push_str(&i.to_string());
        }
        out.push('\n');
        for (i, row) in self.index.iter().zip(&self.rows) {
            out.push_str(&i.to_string());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Eigenvalue tables of both schemes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigTables {
    pub quad_p: EigTable,
    pub quad_q: EigTable,
    pub sym_p: EigTable,
    pub sym_q: EigTable,
}

impl EigTables {
    pub fn get(&self, scheme: FormKind, which: Which) -> &EigTable {
        match (scheme, which) {
            (FormKind::Quadratic, Which::P) => &self.quad_p,
            (FormKind::Quadratic, Which::Q) => &self.quad_q,
            (FormKind::Symmetric, Which::P) => &self.sym_p,
            (FormKind::Symmetric, Which::Q) => &self.sym_q,
        }
    }
}

/// Closed-form tables for `𝒬(m,q)`, checked against `P·Q = q^{m(m+1)/2}·I`,
/// and the tables of `𝒮(m,q)` from `Q'_i(k) = P_i(k)`, `P'_k(i) = Q_k(i)`.
pub fn eig_tables(m: usize, q: u64) -> Result<EigTables> {
    let index = OrbitIndex::all(m);
    let qt: Vec<Vec<BigInt>> = index
        .iter()
        .map(|&k| index.iter().map(|&i| q_number(k, i, m, q)).collect())
        .collect();
    let pt: Vec<Vec<BigInt>> = index
        .iter()
        .map(|&i| index.iter().map(|&k| p_number(i, k, m, q)).collect())
        .collect();
    check_inverse_pair(&pt, &qt, m, q)?;
    let table = |scheme, which, rows: &Vec<Vec<BigInt>>| EigTable {
        m,
        q,
        scheme,
        which,
        index: index.clone(),
        rows: rows.clone(),
    };
    Ok(EigTables {
        quad_p: table(FormKind::Quadratic, Which::P, &pt),
        quad_q: table(FormKind::Quadratic, Which::Q, &qt),
        sym_p: table(FormKind::Symmetric, Which::P, &qt),
        sym_q: table(FormKind::Symmetric, Which::Q, &pt),
    })
}

/// `P·Q = q^{m(m+1)/2}·I`.
pub fn check_inverse_pair(p: &[Vec<BigInt>], q_tab: &[Vec<BigInt>], m: usize, q: u64) -> Result<()> {
    let scale: BigInt = Pow::pow(BigInt::from(q), (m * (m + 1) / 2) as u64);
    let prod = mat_mul(p, q_tab);
    for (a, row) in prod.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let want = if a == b { scale.clone() } else { BigInt::zero() };
            if *v != want {
                return Err(Error::EigenConsistencyViolation(format!(
                    "m={m} q={q}: (P·Q)[{a}][{b}] = {v}, expected {want}"
                )));
            }
        }
    }
    Ok(())
}

/// Value of `Σ_e c_e ω^e` for a primitive p-th root of unity ω, which must be
/// a rational integer.
pub fn reduce_cyclotomic(counts: &[u64]) -> Result<BigInt> {
    let p = counts.len();
    if p > 2 && counts[1..].iter().any(|&c| c != counts[1]) {
        return Err(Error::NonIntegralSum(format!("exponent counts {counts:?}")));
    }
    let c1 = counts.get(1).copied().unwrap_or(0);
    Ok(BigInt::from(counts[0]) - BigInt::from(c1))
}

/// Character sums of one fixed form against every form of the dual kind,
/// bucketed by the orbit of the dual form.
fn character_sums<F: Form>(
    fixed: &F,
    dual_classes: &[u8],
    m: usize,
) -> Result<Vec<BigInt>> {
    let field = fixed.field();
    let p = field.p() as usize;
    let q = field.q() as u64;
    let n = m * (m + 1) / 2;
    let a = fixed.packed();
    let classes = OrbitIndex::all(m).len();
    let counts = (0..dual_classes.len() as u64)
        .into_par_iter()
        .fold(
            || vec![0u64; classes * p],
            |mut acc, idx| {
                let mut b = vec![FieldElem::ZERO; n];
                let mut t = idx;
                for slot in b.iter_mut().rev() {
                    *slot = FieldElem((t % q) as u32);
                    t /= q;
                }
                let e = packed_pairing(field, &a, &b) as usize;
                acc[dual_classes[idx as usize] as usize * p + e] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; classes * p],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        );
    counts.chunks(p).map(reduce_cyclotomic).collect()
}

fn field_for(q: u64) -> Result<Arc<Field>> {
    Ok(Arc::new(Field::from_order(q)?))
}

/// `Q_k(i) = Σ_{B ∈ 𝒮_k} ⟨A, B⟩` for the canonical `A ∈ 𝒬_i`, by enumeration.
pub fn oracle_q_number(k: OrbitIndex, i: OrbitIndex, m: usize, q: u64, cap: u64) -> Result<BigInt> {
    let field = field_for(q)?;
    check_cap(space_size(field.q(), m), cap)?;
    if !i.is_admissible(m) || !k.is_admissible(m) {
        return Ok(BigInt::zero());
    }
    let classes = classify_all::<SymForm>(&field, m, cap)?;
    let a = QuadForm::canonical(field, m, i)?;
    Ok(character_sums(&a, &classes, m)?[k.position()].clone())
}

/// `P_i(k) = Σ_{A ∈ 𝒬_i} ⟨A, B⟩` for the canonical `B ∈ 𝒮_k`, by enumeration.
pub fn oracle_p_number(i: OrbitIndex, k: OrbitIndex, m: usize, q: u64, cap: u64) -> Result<BigInt> {
    let field = field_for(q)?;
    check_cap(space_size(field.q(), m), cap)?;
    if !i.is_admissible(m) || !k.is_admissible(m) {
        return Ok(BigInt::zero());
    }
    let classes = classify_all::<QuadForm>(&field, m, cap)?;
    let b = SymForm::canonical(field, m, k)?;
    Ok(character_sums(&b, &classes, m)?[i.position()].clone())
}

/// Both tables of `𝒬(m,q)` computed purely from character sums, together
/// with the orbit censuses of both spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTables {
    /// `q[k][i] = Q_k(i)`.
    pub q: Vec<Vec<BigInt>>,
    /// `p[i][k] = P_i(k)`.
    pub p: Vec<Vec<BigInt>>,
    pub quad_census: Vec<u64>,
    pub sym_census: Vec<u64>,
}

pub fn oracle_tables(m: usize, q: u64, cap: u64) -> Result<OracleTables> {
    let field = field_for(q)?;
    let index = OrbitIndex::all(m);
    let quad_classes = classify_all::<QuadForm>(&field, m, cap)?;
    let sym_classes = classify_all::<SymForm>(&field, m, cap)?;
    let census = |classes: &[u8]| {
        let mut c = vec![0u64; index.len()];
        for &x in classes {
            c[x as usize] += 1;
        }
        c
    };
    // columns[i][k] = Q_k(i)
    let columns: Vec<Vec<BigInt>> = index
        .iter()
        .map(|&i| character_sums(&QuadForm::canonical(field.clone(), m, i)?, &sym_classes, m))
        .collect::<Result<_>>()?;
    let p = index
        .iter()
        .map(|&k| character_sums(&SymForm::canonical(field.clone(), m, k)?, &quad_classes, m))
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    let n = index.len();
    let qt = (0..n).map(|k| (0..n).map(|i| columns[i][k].clone()).collect()).collect();
    // p currently holds p[k][i]; transpose into p[i][k].
    let pt = (0..n).map(|i| (0..n).map(|k| p[k][i].clone()).collect()).collect();
    Ok(OracleTables {
        q: qt,
        p: pt,
        quad_census: census(&quad_classes),
        sym_census: census(&sym_classes),
    })
}

/// Sum of `Q_{2r,1}(i) + Q_{2r,−1}(i)`, written `Q_{2r}(i)`.
pub fn q_number_even_sum(r: usize, i: OrbitIndex, m: usize, q: u64) -> BigInt {
    q_number(OrbitIndex::Even(2 * r, 1), i, m, q)
        + if r > 0 {
            q_number(OrbitIndex::Even(2 * r, -1), i, m, q)
        } else {
            BigInt::zero()
        }
}
