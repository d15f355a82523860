use std::collections::HashMap;
use std::sync::Arc;

use super::{Field, FieldElem, MatrixFq, MAX_ORDER};
use crate::error::{Error, Result};

/// The extension F_{q^m} / F_q, with F_{q^m} realized as F_{p^{km}} and F_q
/// embedded through a root of the base modulus.
pub struct Tower {
    base: Arc<Field>,
    big: Arc<Field>,
    m: usize,
    embed: Vec<FieldElem>,
    project: HashMap<FieldElem, FieldElem>,
    /// `Tr_m(x^j)` for `0 <= j < km`, as base-field elements.
    trace_of_power: Vec<FieldElem>,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tower")
            .field("base", &self.base)
            .field("m", &self.m)
            .field("big", &self.big)
            .finish()
    }
}

impl Tower {
    pub fn new(base: Arc<Field>, m: usize) -> Result<Tower> {
        if m == 0 {
            return Err(Error::InvalidField("tower degree must be positive".into()));
        }
        let (p, k) = (base.p(), base.k());
        let order = (base.q() as u64).checked_pow(m as u32);
        if order.map_or(true, |o| o > MAX_ORDER) {
            return Err(Error::InvalidField(format!(
                "F_{}^{m} exceeds the supported field order",
                base.q()
            )));
        }
        let big = Arc::new(Field::new(p, k * m)?);
        let root = Self::find_root(&base, &big);
        let embed: Vec<FieldElem> = base
            .elements()
            .map(|a| {
                let digits = base.digits(a);
                let mut acc = FieldElem::ZERO;
                for &c in digits.iter().rev() {
                    acc = big.add(big.mul(acc, root), FieldElem(c));
                }
                acc
            })
            .collect();
        let project = embed
            .iter()
            .enumerate()
            .map(|(i, &y)| (y, FieldElem(i as u32)))
            .collect();
        let mut tower = Tower {
            base,
            big,
            m,
            embed,
            project,
            trace_of_power: Vec::new(),
        };
        tower.trace_of_power = (0..k * m)
            .map(|j| {
                let xj = tower.big.pow(FieldElem(p), j as u64);
                let t = tower.frob_sum(xj, m);
                tower.project(t).expect("relative trace lies in the base field")
            })
            .collect();
        Ok(tower)
    }

    /// Least root (by encoding) of the base modulus inside the copy of F_q in
    /// the big field.
    fn find_root(base: &Field, big: &Field) -> FieldElem {
        if base.k() == 1 {
            return FieldElem::ZERO;
        }
        let n = big.q() as u64 - 1;
        let zeta = big.pow(big.generator(), n / (base.q() as u64 - 1));
        let mut candidates: Vec<FieldElem> = (0..base.q() as u64 - 1)
            .map(|j| big.pow(zeta, j))
            .collect();
        candidates.sort();
        candidates
            .into_iter()
            .find(|&y| {
                let mut acc = FieldElem::ZERO;
                for &c in base.modulus().iter().rev() {
                    acc = big.add(big.mul(acc, y), FieldElem(c));
                }
                acc.is_zero()
            })
            .expect("the base modulus splits in the big field")
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn embed(&self, a: FieldElem) -> FieldElem {
        self.embed[a.0 as usize]
    }

    pub fn project(&self, y: FieldElem) -> Option<FieldElem> {
        self.project.get(&y).copied()
    }

    /// `y^{q^i}`.
    pub fn frob(&self, y: FieldElem, i: usize) -> FieldElem {
        let mut cur = y;
        for _ in 0..i {
            cur = self.big.pow(cur, self.base.q() as u64);
        }
        cur
    }

    /// `y + y^q + ... + y^{q^{d-1}}`, computed in the big field.
    pub fn frob_sum(&self, y: FieldElem, d: usize) -> FieldElem {
        let mut acc = FieldElem::ZERO;
        let mut cur = y;
        for _ in 0..d {
            acc = self.big.add(acc, cur);
            cur = self.big.pow(cur, self.base.q() as u64);
        }
        acc
    }

    /// Relative trace `Tr_m : F_{q^m} -> F_q`, by F_p-linearity from the
    /// traces of the power basis.
    pub fn rel_trace(&self, y: FieldElem) -> FieldElem {
        let p = self.big.p();
        let mut v = y.0;
        let mut acc = FieldElem::ZERO;
        for &t in &self.trace_of_power {
            let c = v % p;
            v /= p;
            if c != 0 {
                acc = self.base.add(acc, self.base.mul(FieldElem(c), t));
            }
        }
        acc
    }

    /// Trace from the intermediate field F_{q^d} (d | m) down to F_q.
    /// `y` must lie in F_{q^d}.
    pub fn sub_trace(&self, y: FieldElem, d: usize) -> Result<FieldElem> {
        if d == 0 || self.m % d != 0 {
            return Err(Error::InvalidField(format!("{d} does not divide {}", self.m)));
        }
        if self.frob(y, d) != y {
            return Err(Error::InvalidField(format!("{y} is not in F_q^{d}")));
        }
        Ok(self
            .project(self.frob_sum(y, d))
            .expect("trace of a subfield element lies in the base field"))
    }

    /// Elements of the intermediate field F_{q^d} (d | m), in encoding order.
    pub fn subfield(&self, d: usize) -> Result<Vec<FieldElem>> {
        if d == 0 || self.m % d != 0 {
            return Err(Error::InvalidField(format!("{d} does not divide {}", self.m)));
        }
        let sub_order = (self.base.q() as u64).pow(d as u32);
        let n = self.big.q() as u64 - 1;
        let zeta = self.big.pow(self.big.generator(), n / (sub_order - 1));
        let mut out: Vec<FieldElem> = std::iter::once(FieldElem::ZERO)
            .chain((0..sub_order - 1).map(|j| self.big.pow(zeta, j)))
            .collect();
        out.sort();
        Ok(out)
    }

    /// `λ·y` for `λ` in the base field.
    pub fn scale(&self, lambda: FieldElem, y: FieldElem) -> FieldElem {
        self.big.mul(self.embed(lambda), y)
    }

    /// `{1, x, ..., x^{m-1}}` with x the generator of the big field's
    /// polynomial representation.
    pub fn polynomial_basis(&self) -> Vec<FieldElem> {
        if self.m == 1 {
            return vec![FieldElem::ONE];
        }
        let x = FieldElem(self.big.p());
        (0..self.m).map(|i| self.big.pow(x, i as u64)).collect()
    }

    /// The m×m trace Gram matrix `Tr_m(a_i b_j)`.
    pub fn trace_gram(&self, a: &[FieldElem], b: &[FieldElem]) -> MatrixFq {
        let mut g = MatrixFq::zeros(a.len(), b.len());
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                g.set(i, j, self.rel_trace(self.big.mul(ai, bj)));
            }
        }
        g
    }

    /// The trace-dual basis `β` with `Tr_m(α_i β_j) = δ_ij`.
    pub fn dual_basis(&self, basis: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if basis.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: basis.len(),
            });
        }
        let gram = self.trace_gram(basis, basis);
        let inv = gram.inverse(&self.base).ok_or(Error::SingularBasis)?;
        // G symmetric, so β_j = Σ_l (G^{-1})_{jl} α_l.
        Ok((0..self.m)
            .map(|j| self.combine(inv.row(j), basis))
            .collect())
    }

    /// `Σ c_i b_i`.
    pub fn combine(&self, coords: &[FieldElem], basis: &[FieldElem]) -> FieldElem {
        coords
            .iter()
            .zip(basis)
            .fold(FieldElem::ZERO, |acc, (&c, &b)| {
                self.big.add(acc, self.scale(c, b))
            })
    }

    /// Coordinates of `y` in the basis whose trace-dual is `dual`.
    pub fn coords(&self, y: FieldElem, dual: &[FieldElem]) -> Vec<FieldElem> {
        dual.iter()
            .map(|&b| self.rel_trace(self.big.mul(b, y)))
            .collect()
    }

    /// All F_q-coordinate vectors of length m, in lexicographic order with
    /// the first coordinate most significant.
    pub fn coordinate_vectors(&self) -> impl Iterator<Item = Vec<FieldElem>> + '_ {
        let q = self.base.q() as u64;
        let m = self.m;
        (0..q.pow(m as u32)).map(move |mut idx| {
            let mut v = vec![FieldElem::ZERO; m];
            for slot in v.iter_mut().rev() {
                *slot = FieldElem((idx % q) as u32);
                idx /= q;
            }
            v
        })
    }
}
