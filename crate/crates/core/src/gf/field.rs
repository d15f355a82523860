use serde::{Deserialize, Serialize};

use super::poly;
use crate::error::{Error, Result};

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u32 = 1 << 16;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;

/// An element of F_{p^k}, encoded as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
/// `c_0 + c_1 x + ...` is the reduced polynomial representative.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: `{"p":…, "k":…, "modulus":[…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: usize,
    pub modulus: Vec<u32>,
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
    /// Zech logarithms `log(1 + g^i)`, `u32::MAX` where `1 + g^i = 0`.
    /// Only populated for odd extension fields.
    zech: Vec<u32>,
}

/// The finite field F_q, q = p^k, with a fixed irreducible modulus.
pub struct Field {
    spec: FieldSpec,
    q: u32,
    generator: FieldElem,
    tables: Option<Tables>,
    /// Absolute traces of the power basis `1, x, ..., x^{k-1}`.
    trace_of_power: Vec<u32>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.spec.p)
            .field("k", &self.spec.k)
            .field("modulus", &self.spec.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// F_{p^k} with the shipped modulus.
    pub fn new(p: u32, k: usize) -> Result<Field> {
        if !poly::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        Self::with_modulus(p, poly::default_modulus(p, k))
    }

    /// F_q for a prime power q.
    pub fn from_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !poly::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut modulus = modulus;
        poly::trim(&mut modulus);
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::InvalidField("modulus must be monic of positive degree".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient out of range".into()));
        }
        let k = modulus.len() - 1;
        let order = (p as u64).checked_pow(k as u32).filter(|&o| o <= MAX_ORDER);
        let q = order.ok_or_else(|| {
            Error::InvalidField(format!("{p}^{k} exceeds the supported field order"))
        })? as u32;
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let mut field = Field {
            spec: FieldSpec { p, k, modulus },
            q,
            generator: FieldElem::ONE,
            tables: None,
            trace_of_power: Vec::new(),
        };
        field.generator = field.find_generator();
        if q <= TABLE_LIMIT && k > 1 {
            field.tables = Some(field.build_tables());
        }
        field.trace_of_power = (0..k)
            .map(|j| {
                let xj = field.encode(&unit_poly(j, k));
                field.slow_abs_trace(xj)
            })
            .collect();
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.spec.modulus
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_even(&self) -> bool {
        self.spec.p == 2
    }

    /// Least primitive element in encoding order.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElem {
        FieldElem(c.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.q
    }

    pub fn digits(&self, a: FieldElem) -> Vec<u32> {
        let p = self.spec.p;
        let mut v = a.0;
        (0..self.spec.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u32]) -> FieldElem {
        let p = self.spec.p;
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * p + c % p;
        }
        FieldElem(v)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p;
        if p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.spec.k == 1 {
            return FieldElem((a.0 + b.0) % p);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let z = t.zech[((lb + n - la) % n) as usize];
            if z == u32::MAX {
                return FieldElem::ZERO;
            }
            return FieldElem(t.exp[(la + z) as usize]);
        }
        self.slow_add(a, b)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.spec.p;
        if p == 2 || a.0 == 0 {
            return a;
        }
        if self.spec.k == 1 {
            return FieldElem(p - a.0);
        }
        if let Some(t) = &self.tables {
            let half = (self.q - 1) / 2;
            return FieldElem(t.exp[(t.log[a.0 as usize] + half) as usize]);
        }
        let d: Vec<u32> = self.digits(a).into_iter().map(|c| (p - c) % p).collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if self.spec.k == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % self.spec.p as u64) as u32);
        }
        if let Some(t) = &self.tables {
            return FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]);
        }
        self.slow_mul(a, b)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            return Ok(FieldElem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut result = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Absolute trace `Tr(y) = y + y^p + ... + y^{p^{k-1}}`, returned as an
    /// integer in `[0, p)`.
    pub fn abs_trace(&self, y: FieldElem) -> u32 {
        if self.spec.k == 1 {
            return y.0;
        }
        let p = self.spec.p as u64;
        let mut acc = 0u64;
        let mut v = y.0;
        for &t in &self.trace_of_power {
            let c = (v % self.spec.p) as u64;
            v /= self.spec.p;
            acc = (acc + c * t as u64) % p;
        }
        acc as u32
    }

    /// Whether `a` is a square. Zero counts as a square (0 = 0^2).
    pub fn is_square(&self, a: FieldElem) -> Result<bool> {
        if self.is_even() {
            return Err(Error::OddCharRequired);
        }
        if a.0 == 0 {
            return Ok(true);
        }
        Ok(self.pow(a, (self.q as u64 - 1) / 2) == FieldElem::ONE)
    }

    /// Least element with absolute trace 1 (even q only meaningful).
    pub fn least_trace_one(&self) -> FieldElem {
        self.elements()
            .find(|&a| self.abs_trace(a) == 1)
            .expect("the absolute trace is onto F_p")
    }

    /// Least nonsquare; `OddCharRequired` for even q.
    pub fn least_nonsquare(&self) -> Result<FieldElem> {
        for a in self.nonzero_elements() {
            if !self.is_square(a)? {
                return Ok(a);
            }
        }
        unreachable!("odd fields have nonsquares")
    }

    fn slow_add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let d: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.encode(&d)
    }

    fn slow_mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.spec.p as u64;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        self.encode(&poly::rem(&prod, &self.spec.modulus, self.spec.p))
    }

    fn slow_pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut result = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn slow_abs_trace(&self, y: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        let mut cur = y;
        for _ in 0..self.spec.k {
            acc = self.slow_add(acc, cur);
            cur = self.slow_pow(cur, self.spec.p as u64);
        }
        assert!(acc.0 < self.spec.p, "trace left the prime field");
        acc.0
    }

    fn find_generator(&self) -> FieldElem {
        let n = self.q as u64 - 1;
        if n == 1 {
            return FieldElem::ONE;
        }
        let factors = prime_factors(n);
        (1..self.q)
            .map(FieldElem)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != FieldElem::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let n = q - 1;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q];
        let mut cur = FieldElem::ONE;
        for i in 0..n {
            exp[i] = cur.0;
            exp[i + n] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.slow_mul(cur, self.generator);
        }
        let zech = if self.spec.p == 2 {
            Vec::new()
        } else {
            (0..n)
                .map(|i| {
                    let s = self.slow_add(FieldElem::ONE, FieldElem(exp[i]));
                    if s.0 == 0 {
                        u32::MAX
                    } else {
                        log[s.0 as usize]
                    }
                })
                .collect()
        };
        Tables { exp, log, zech }
    }
}

fn unit_poly(j: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0u32; k];
    v[j] = 1;
    v
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, k)` with `q = p^k`, if q is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut k = 0;
    let mut t = q;
    while t > 1 {
        t /= p;
        k += 1;
    }
    Some((p as u32, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    #[test]
    fn char_two_addition() {
        let f2 = f(2);
        assert_eq!(f2.add(FieldElem(1), FieldElem(1)), FieldElem(0));
    }

    #[test]
    fn f4_multiplication_and_inverse() {
        let f4 = f(4);
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let x = FieldElem(2);
        // x * x = x + 1
        assert_eq!(f4.mul(x, x), FieldElem(3));
        assert_eq!(f4.inv(x).unwrap(), FieldElem(3));
        assert_eq!(f4.mul(x, FieldElem(3)), FieldElem::ONE);
    }

    #[test]
    fn f4_absolute_trace() {
        let f4 = f(4);
        assert_eq!(f4.abs_trace(FieldElem(0)), 0);
        assert_eq!(f4.abs_trace(FieldElem(1)), 0);
        assert_eq!(f4.abs_trace(FieldElem(2)), 1);
    }

    #[test]
    fn squares() {
        let f3 = f(3);
        assert!(f3.is_square(FieldElem(1)).unwrap());
        assert!(!f3.is_square(FieldElem(2)).unwrap());
        assert!(f(5).is_square(FieldElem(4)).unwrap());
        assert!(f3.is_square(FieldElem(0)).unwrap());
        assert_eq!(f(4).is_square(FieldElem(1)), Err(Error::OddCharRequired));
    }

    #[test]
    fn division_by_zero() {
        let f9 = f(9);
        assert_eq!(f9.inv(FieldElem(0)), Err(Error::DivisionByZero));
        assert_eq!(f9.div(FieldElem(3), FieldElem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::from_order(6).is_err());
        assert!(Field::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(Field::new(2, 25).is_err());
    }

    /// Every table-backed operation agrees with schoolbook arithmetic.
    #[test]
    fn tables_match_schoolbook() {
        for q in [4u64, 8, 9, 25, 27, 49, 81] {
            let fq = f(q);
            for a in fq.elements() {
                for b in fq.elements() {
                    assert_eq!(fq.mul(a, b), fq.slow_mul(a, b), "q={q}");
                    assert_eq!(fq.add(a, b), fq.slow_add(a, b), "q={q}");
                }
            }
        }
    }

    /// Field axioms, exhaustively for q <= 9.
    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let fq = f(q);
            for a in fq.elements() {
                assert_eq!(fq.add(a, fq.neg(a)), FieldElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(fq.mul(a, fq.inv(a).unwrap()), FieldElem::ONE);
                }
                for b in fq.elements() {
                    assert_eq!(fq.add(a, b), fq.add(b, a));
                    assert_eq!(fq.mul(a, b), fq.mul(b, a));
                    assert_eq!(fq.add(fq.sub(a, b), b), a);
                    for c in fq.elements() {
                        assert_eq!(fq.add(fq.add(a, b), c), fq.add(a, fq.add(b, c)));
                        assert_eq!(fq.mul(fq.mul(a, b), c), fq.mul(a, fq.mul(b, c)));
                        assert_eq!(
                            fq.mul(a, fq.add(b, c)),
                            fq.add(fq.mul(a, b), fq.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_frobenius_invariant() {
        for q in [8u64, 9, 16, 27, 25] {
            let fq = f(q);
            for y in fq.elements() {
                assert_eq!(fq.abs_trace(fq.pow(y, fq.p() as u64)), fq.abs_trace(y));
                assert_eq!(fq.abs_trace(y), fq.slow_abs_trace(y));
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let big = Field::new(2, 20).unwrap();
        assert!(big.tables.is_none());
        let g = big.generator();
        let gi = big.inv(g).unwrap();
        assert_eq!(big.mul(g, gi), FieldElem::ONE);
        assert_eq!(big.pow(g, big.q() as u64 - 1), FieldElem::ONE);
    }
}
