//! Codes of length q^m − 1 built from cosets of the punctured first-order
//! Reed-Muller code R_q(1,m)*.
//!
//! Coordinates are the nonzero elements of F_{q^m} in encoding order, and a
//! point y is fed to a quadratic form through its coordinates in the
//! polynomial basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codesets::FormSet;
use crate::construct::tower_for;
use crate::error::{check_cap, Error, Result};
use crate::forms::{Form, OrbitIndex, QuadForm};
use crate::gf::{FieldElem, Tower};
use crate::scheme::{big, qpow};

/// Sparse enumerator `Σ c_w z^w` of a code of the given length. Distance
/// enumerators of non-additive codes can have fractional coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    length: usize,
    counts: BTreeMap<usize, BigRational>,
}

impl WeightEnumerator {
    pub fn new(length: usize) -> WeightEnumerator {
        WeightEnumerator { length, counts: BTreeMap::new() }
    }

    pub fn from_counts(length: usize, counts: &[u64]) -> WeightEnumerator {
        let mut e = WeightEnumerator::new(length);
        for (w, &c) in counts.iter().enumerate() {
            e.add(w, BigRational::from_integer(c.into()));
        }
        e
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Adds `c·z^w`; zero coefficients are dropped.
    pub fn add(&mut self, w: usize, c: BigRational) {
        assert!(w <= self.length, "weight {w} exceeds length {}", self.length);
        let slot = self.counts.entry(w).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.counts.remove(&w);
        }
    }

    pub fn get(&self, w: usize) -> BigRational {
        self.counts.get(&w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> + '_ {
        self.counts.iter().map(|(&w, c)| (w, c))
    }

    /// Value at z = 1.
    pub fn total(&self) -> BigRational {
        self.counts.values().sum()
    }

    /// Smallest positive weight with a nonzero coefficient.
    pub fn min_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn is_integral(&self) -> bool {
        self.counts.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.counts.values().all(|c| !c.is_negative())
    }

    fn add_scaled(&mut self, other: &WeightEnumerator, a: &BigRational) {
        for (w, c) in other.iter() {
            self.add(w, a * c);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EnumeratorFile {
    length: usize,
    size: String,
    #[serde(rename = "enum")]
    terms: Vec<(usize, String)>,
}

impl Serialize for WeightEnumerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EnumeratorFile {
            length: self.length,
            size: self.total().to_string(),
            terms: self.iter().map(|(w, c)| (w, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightEnumerator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<WeightEnumerator, D::Error> {
        use serde::de::Error as _;
        let file = EnumeratorFile::deserialize(d)?;
        let mut e = WeightEnumerator::new(file.length);
        for (w, c) in file.terms {
            if w > file.length {
                return Err(D::Error::custom(format!("weight {w} exceeds length {}", file.length)));
            }
            e.add(w, c.parse().map_err(D::Error::custom)?);
        }
        Ok(e)
    }
}

/// The points of F_{q^m}* as coordinate vectors, plus what is needed to
/// evaluate `Tr_m(a·y)` at each of them.
struct Points {
    tower: Tower,
    elems: Vec<FieldElem>,
    coords: Vec<Vec<FieldElem>>,
}

impl Points {
    fn new(q: u64, m: usize) -> Result<Points> {
        let tower = tower_for(q, m)?;
        let dual = tower.dual_basis(&tower.polynomial_basis())?;
        let elems: Vec<FieldElem> = tower.big().nonzero_elements().collect();
        let coords = elems.iter().map(|&y| tower.coords(y, &dual)).collect();
        Ok(Points { tower, elems, coords })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn q(&self) -> u32 {
        self.tower.base().q()
    }

    fn form_values(&self, form: &QuadForm) -> Vec<FieldElem> {
        self.coords.iter().map(|x| form.eval_unchecked(x)).collect()
    }

    /// `y ↦ Tr_m(a·y)` over all points.
    fn linear_values(&self, a: FieldElem) -> Vec<FieldElem> {
        let big = self.tower.big();
        self.elems.iter().map(|&y| self.tower.rel_trace(big.mul(a, y))).collect()
    }

    fn linear_functions(&self) -> impl Iterator<Item = Vec<FieldElem>> + '_ {
        self.tower.big().elements().map(move |a| self.linear_values(a))
    }

    /// Weight census of `v + c` over all constants c, added into `counts`.
    fn tally_constants(&self, v: &[FieldElem], counts: &mut [u64]) {
        let base = self.tower.base();
        let mut hist = vec![0usize; self.q() as usize];
        for &x in v {
            hist[x.0 as usize] += 1;
        }
        for c in base.elements() {
            counts[v.len() - hist[base.neg(c).0 as usize]] += 1;
        }
    }

    fn sum(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let base = self.tower.base();
        a.iter().zip(b).map(|(&x, &y)| base.add(x, y)).collect()
    }
}

/// All q^{m+1} affine functions `y ↦ Tr_m(a·y) + c` on F_{q^m}*, ordered by
/// a then c.
pub fn rm1_star(m: usize, q: u64, cap: u64) -> Result<Vec<Vec<FieldElem>>> {
    let pts = Points::new(q, m)?;
    check_cap((q as u128).pow(m as u32 + 1) * pts.len() as u128, cap)?;
    let base = pts.tower.base().clone();
    let mut out = Vec::new();
    for lin in pts.linear_functions() {
        for c in base.elements() {
            out.push(lin.iter().map(|&x| base.add(x, c)).collect());
        }
    }
    Ok(out)
}

/// The tabulated enumerator ω_i of a coset `Q + R_q(1,m)*` with Q in class i.
pub fn omega(i: OrbitIndex, m: usize, q: u64) -> Result<WeightEnumerator> {
    i.check_admissible(m)?;
    let (mi, s) = (m as i64, i.half() as i64);
    let q1 = big(q as i64 - 1);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = qpow(q, mi - 1) * &q1;
    let step = qpow(q, mi - s - 1);
    let one = big(1);
    let terms: Vec<(BigRational, BigRational)> = match i.tau() {
        None => {
            let q2s = qpow(q, 2 * s);
            let qs = qpow(q, s);
            vec![
                (&base - &step - &one, &half * (&q2s * &q1 - &qs) * &q1),
                (&base - &step, &half * (&q2s + &qs) * &q1),
                (&base - &one, (qpow(q, mi) - &q2s * &q1) * &q1),
                (base.clone(), qpow(q, mi) - &q2s * &q1),
                (&base + &step - &one, &half * (&q2s * &q1 + &qs) * &q1),
                (&base + &step, &half * (&q2s - &qs) * &q1),
            ]
        }
        Some(tau) => {
            let t = big(tau as i64);
            let a = qpow(q, 2 * s - 1);
            let b = &t * qpow(q, s - 1);
            let shift = &t * &step * &q1;
            vec![
                (&base - &shift - &one, (&a - &b) * &q1),
                (&base - &shift, &a + &b * &q1),
                (&base - &one, (qpow(q, mi) - qpow(q, 2 * s)) * &q1),
                (base.clone(), qpow(q, mi) - qpow(q, 2 * s)),
                (&base + &t * &step - &one, (&a * &q1 + &b) * &q1),
                (&base + &t * &step, (&a - &b) * &q1),
            ]
        }
    };
    let length = (q as usize).pow(m as u32) - 1;
    let mut e = WeightEnumerator::new(length);
    for (w, n) in terms {
        if n.is_zero() {
            continue;
        }
        let w = w
            .to_integer()
            .try_into()
            .ok()
            .filter(|&w: &usize| w <= length && !n.is_negative())
            .ok_or_else(|| Error::UnsupportedCase(format!("ω_{i} for m={m}, q={q} has a bad term {n}·z^{w}")))?;
        e.add(w, n);
    }
    Ok(e)
}

/// Weight census of the coset `Q + R_q(1,m)*` by evaluating every word.
pub fn coset_enum_brute(form: &QuadForm, cap: u64) -> Result<WeightEnumerator> {
    let (q, m) = (form.field().q() as u64, form.m());
    check_cap((q as u128).pow(m as u32 + 1) * ((q as u128).pow(m as u32) - 1), cap)?;
    let pts = Points::new(q, m)?;
    let qv = pts.form_values(form);
    let mut counts = vec![0u64; pts.len() + 1];
    for lin in pts.linear_functions() {
        pts.tally_constants(&pts.sum(&qv, &lin), &mut counts);
    }
    Ok(WeightEnumerator::from_counts(pts.len(), &counts))
}

/// The code `C(Y) = ⋃_{Q∈Y} Q + R_q(1,m)*`.
#[derive(Clone, Debug)]
pub struct ClassicalCode {
    y: FormSet<QuadForm>,
}

impl ClassicalCode {
    /// Rejects Y when q = 2 and Y contains a rank-1 form, or two members
    /// differing by one, since then cosets collapse.
    pub fn new(y: FormSet<QuadForm>) -> Result<ClassicalCode> {
        if y.q() == 2 {
            let rank1 = |f: &QuadForm| f.classify().map(|i| i.rank() == 1);
            for f in y.members() {
                if rank1(f)? {
                    return Err(Error::DegenerateY);
                }
            }
            if !y.is_additive() {
                let ms = y.members();
                for (k, a) in ms.iter().enumerate() {
                    for b in &ms[k + 1..] {
                        if rank1(&a.sub(b))? {
                            return Err(Error::DegenerateY);
                        }
                    }
                }
            }
        }
        Ok(ClassicalCode { y })
    }

    pub fn defining_set(&self) -> &FormSet<QuadForm> {
        &self.y
    }

    pub fn q(&self) -> u64 {
        self.y.q()
    }

    pub fn m(&self) -> usize {
        self.y.m()
    }

    pub fn length(&self) -> usize {
        (self.q() as usize).pow(self.m() as u32) - 1
    }

    pub fn size(&self) -> BigInt {
        BigInt::from(self.q()).pow(self.m() as u32 + 1) * self.y.len()
    }

    /// Linear when Y is additive; then distances are weights.
    pub fn is_additive(&self) -> bool {
        self.y.is_additive()
    }

    fn word_cost(&self) -> u128 {
        (self.q() as u128).pow(self.m() as u32 + 1) * self.y.len() as u128 * self.length() as u128
    }

    /// Every codeword, coset by coset.
    pub fn codewords(&self, cap: u64) -> Result<Vec<Vec<FieldElem>>> {
        check_cap(self.word_cost(), cap)?;
        let pts = Points::new(self.q(), self.m())?;
        let base = pts.tower.base().clone();
        let lins: Vec<Vec<FieldElem>> = pts.linear_functions().collect();
        let mut out = Vec::new();
        for form in self.y.members() {
            let qv = pts.form_values(form);
            for lin in &lins {
                let v = pts.sum(&qv, lin);
                for c in base.elements() {
                    out.push(v.iter().map(|&x| base.add(x, c)).collect());
                }
            }
        }
        Ok(out)
    }

    /// Weight census of all codewords, without materializing them.
    pub fn weight_enum(&self, cap: u64) -> Result<WeightEnumerator> {
        check_cap(self.word_cost(), cap)?;
        let pts = Points::new(self.q(), self.m())?;
        let lins: Vec<Vec<FieldElem>> = pts.linear_functions().collect();
        let mut counts = vec![0u64; pts.len() + 1];
        for form in self.y.members() {
            let qv = pts.form_values(form);
            for lin in &lins {
                pts.tally_constants(&pts.sum(&qv, lin), &mut counts);
            }
        }
        Ok(WeightEnumerator::from_counts(pts.len(), &counts))
    }
}

/// Distance enumerator `Σ_i a_i ω_i` from the inner distribution of Y.
pub fn dist_enum_theory(y: &FormSet<QuadForm>, cap: u64) -> Result<WeightEnumerator> {
    let code = ClassicalCode::new(y.clone())?;
    let dist = y.inner_dist(cap)?;
    let mut e = WeightEnumerator::new(code.length());
    for (i, a) in dist.iter() {
        if !a.is_zero() {
            e.add_scaled(&omega(i, y.m(), y.q())?, a);
        }
    }
    Ok(e)
}

/// Distance enumerator by census: the weight census for linear codes, all
/// ordered pairs of codewords otherwise (so the cap applies to |C|²·n).
pub fn dist_enum_brute(code: &ClassicalCode, cap: u64) -> Result<WeightEnumerator> {
    if code.is_additive() {
        return code.weight_enum(cap);
    }
    let size = code.word_cost() / code.length() as u128;
    check_cap(size * size * code.length() as u128, cap)?;
    let words = code.codewords(cap)?;
    let n = code.length();
    let mut counts = vec![0u64; n + 1];
    for a in &words {
        for b in &words {
            counts[a.iter().zip(b).filter(|(x, y)| x != y).count()] += 1;
        }
    }
    let mut e = WeightEnumerator::new(n);
    let denom = BigRational::from_integer(BigInt::from(words.len()));
    for (w, &c) in counts.iter().enumerate() {
        e.add(w, BigRational::from_integer(c.into()) / &denom);
    }
    Ok(e)
}

/// `q^{m−1}(q−1) − q^{m−δ−1} − 1`, the minimum distance of C(Y) for a
/// maximal Y with δ = ⌊d/2⌋.
pub fn designed_distance(m: usize, q: u64, delta: usize) -> Result<u64> {
    if delta == 0 || 2 * delta > m {
        return Err(Error::UnsupportedCase(format!("need 1 <= δ <= m/2, got δ={delta}, m={m}")));
    }
    Ok(q.pow(m as u32 - 1) * (q - 1) - q.pow((m - delta - 1) as u32) - 1)
}

/// Minimum distance by census.
pub fn min_distance(code: &ClassicalCode, cap: u64) -> Result<usize> {
    dist_enum_brute(code, cap)?
        .min_weight()
        .ok_or_else(|| Error::UnsupportedCase("a code with one word has no minimum distance".into()))
}

/// Convenience for callers holding only (m, q): the code of Y = {0}.
pub fn rm1_code(m: usize, q: u64) -> Result<ClassicalCode> {
    let field = Arc::new(crate::gf::Field::from_order(q)?);
    ClassicalCode::new(FormSet::singleton_zero(field, m))
}
