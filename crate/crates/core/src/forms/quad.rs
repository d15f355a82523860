use std::sync::Arc;

use super::{for_each_point, same_field, upper_pairs, Form, FormKind, OrbitIndex, SymForm};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem, MatrixFq};

/// A quadratic form on F_q^m, stored as the upper-triangular representative
/// of its coset modulo alternating matrices.
#[derive(Clone)]
pub struct QuadForm {
    field: Arc<Field>,
    m: usize,
    coeffs: MatrixFq,
}

impl QuadForm {
    /// Any m×m matrix `A`; the form is `x ↦ xᵀAx` and is stored
    /// upper-triangularized.
    pub fn new(field: Arc<Field>, m: usize, a: MatrixFq) -> Result<QuadForm> {
        if a.rows() != m || a.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: a.rows() * a.cols(),
            });
        }
        let coeffs = upper_triangularize(&field, &a);
        Ok(QuadForm { field, m, coeffs })
    }

    pub fn coeffs(&self) -> &MatrixFq {
        &self.coeffs
    }

    /// `Σ_{i≤j} A_ij x_i x_j`.
    pub fn eval(&self, x: &[FieldElem]) -> Result<FieldElem> {
        if x.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[FieldElem]) -> FieldElem {
        let f = &*self.field;
        let mut acc = FieldElem::ZERO;
        for i in 0..self.m {
            if x[i].is_zero() {
                continue;
            }
            let mut row = FieldElem::ZERO;
            for j in i..self.m {
                row = f.add(row, f.mul(self.coeffs.get(i, j), x[j]));
            }
            acc = f.add(acc, f.mul(x[i], row));
        }
        acc
    }

    /// The polar form `S(x,y) = Q(x+y) − Q(x) − Q(y)`, with Gram `A + Aᵀ`.
    pub fn polarize(&self) -> SymForm {
        let gram = self
            .coeffs
            .add(&self.field, &self.coeffs.transpose())
            .expect("square");
        SymForm::from_gram_unchecked(self.field.clone(), self.m, gram)
    }

    pub fn zero_count(&self) -> u64 {
        let mut n = 0;
        for_each_point(&self.field, self.m, |x| {
            if self.eval_unchecked(x).is_zero() {
                n += 1;
            }
        });
        n
    }

    /// Rank from the polar form and its radical, type from the zero count.
    pub fn classify(&self) -> Result<OrbitIndex> {
        let f = &*self.field;
        let polar = self.polarize();
        let r0 = polar.gram().rank(f);
        let radical = polar.gram().nullspace(f);
        let rank = if radical.iter().any(|v| !self.eval_unchecked(v).is_zero()) {
            r0 + 1
        } else {
            r0
        };
        let n = self.zero_count() as i128;
        let q = f.q() as i128;
        let m = self.m as u32;
        let base = q.pow(m - 1);
        let inconsistent = |what: &str| {
            Error::ClassificationInconsistency(format!(
                "{what}: rank {rank}, {n} zeros, m = {}, q = {q}",
                self.m
            ))
        };
        if rank % 2 == 1 {
            if n != base {
                return Err(inconsistent("odd rank with wrong zero count"));
            }
            return Ok(OrbitIndex::Odd(rank));
        }
        let s = (rank / 2) as u32;
        let excess = (q - 1) * q.pow(m - s) / q;
        if n == base + excess {
            Ok(OrbitIndex::Even(rank, 1))
        } else if n == base - excess && rank > 0 {
            Ok(OrbitIndex::Even(rank, -1))
        } else {
            Err(inconsistent("zero count matches no type"))
        }
    }

    /// `upper(Tᵀ A T)` for an m×m' matrix T: the form `y ↦ Q(Ty)` on F_q^{m'}.
    pub fn pullback(&self, t: &MatrixFq) -> Result<QuadForm> {
        if t.rows() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: t.rows(),
            });
        }
        let f = &*self.field;
        let prod = t.transpose().mul(f, &self.coeffs)?.mul(f, t)?;
        QuadForm::new(self.field.clone(), t.cols(), prod)
    }

    pub fn scale(&self, a: FieldElem) -> QuadForm {
        QuadForm {
            coeffs: self.coeffs.scale(&self.field, a),
            ..self.clone()
        }
    }
}

fn upper_triangularize(f: &Field, a: &MatrixFq) -> MatrixFq {
    let n = a.rows();
    let mut u = MatrixFq::zeros(n, n);
    for i in 0..n {
        u.set(i, i, a.get(i, i));
        for j in i + 1..n {
            u.set(i, j, f.add(a.get(i, j), a.get(j, i)));
        }
    }
    u
}

impl Form for QuadForm {
    type Dual = SymForm;
    const KIND: FormKind = FormKind::Quadratic;

    fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn m(&self) -> usize {
        self.m
    }

    fn matrix(&self) -> &MatrixFq {
        &self.coeffs
    }

    fn from_packed(field: Arc<Field>, m: usize, packed: &[FieldElem]) -> Result<QuadForm> {
        let pairs = upper_pairs(m);
        if packed.len() != pairs.len() {
            return Err(Error::DimensionMismatch {
                expected: pairs.len(),
                got: packed.len(),
            });
        }
        let mut coeffs = MatrixFq::zeros(m, m);
        for (&(i, j), &v) in pairs.iter().zip(packed) {
            coeffs.set(i, j, v);
        }
        Ok(QuadForm { field, m, coeffs })
    }

    fn classify(&self) -> Result<OrbitIndex> {
        QuadForm::classify(self)
    }

    fn apply_transform(&self, a: FieldElem, l: &MatrixFq) -> Result<QuadForm> {
        check_transform(&self.field, self.m, a, l)?;
        Ok(self.pullback(l)?.scale(a))
    }

    fn restrict(&self, w: &MatrixFq) -> Result<QuadForm> {
        self.pullback(w)
    }

    fn canonical(field: Arc<Field>, m: usize, i: OrbitIndex) -> Result<QuadForm> {
        i.check_admissible(m)?;
        let f = &*field;
        let mut a = MatrixFq::zeros(m, m);
        let r = i.rank();
        let hyperbolic_pairs = match i {
            OrbitIndex::Odd(_) => (r - 1) / 2,
            OrbitIndex::Even(_, 1) => r / 2,
            OrbitIndex::Even(..) => r / 2 - 1,
        };
        for t in 0..hyperbolic_pairs {
            a.set(2 * t, 2 * t + 1, FieldElem::ONE);
        }
        match i {
            OrbitIndex::Odd(_) => a.set(r - 1, r - 1, FieldElem::ONE),
            OrbitIndex::Even(_, 1) => {}
            OrbitIndex::Even(..) => {
                a.set(r - 2, r - 2, FieldElem::ONE);
                if f.is_even() {
                    a.set(r - 2, r - 1, FieldElem::ONE);
                    a.set(r - 1, r - 1, f.least_trace_one());
                } else {
                    a.set(r - 1, r - 1, f.neg(f.least_nonsquare()?));
                }
            }
        }
        Ok(QuadForm { field, m, coeffs: a })
    }
}

pub(crate) fn check_transform(f: &Field, m: usize, a: FieldElem, l: &MatrixFq) -> Result<()> {
    if l.rows() != m || l.cols() != m {
        return Err(Error::DimensionMismatch {
            expected: m * m,
            got: l.rows() * l.cols(),
        });
    }
    if a.is_zero() || l.rank(f) < m {
        return Err(Error::SingularTransform);
    }
    Ok(())
}

impl PartialEq for QuadForm {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for QuadForm {}

impl std::hash::Hash for QuadForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for QuadForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.packed().cmp(&other.packed())
    }
}

impl std::fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuadForm(q={}, m={}, {:?})", self.field.q(), self.m, self.packed())
    }
}
