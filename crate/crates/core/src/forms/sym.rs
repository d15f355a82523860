use std::sync::Arc;

use super::quad::check_transform;
use super::{same_field, upper_pairs, Form, FormKind, OrbitIndex, QuadForm};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem, MatrixFq};

/// A symmetric bilinear form on F_q^m, stored as its Gram matrix.
#[derive(Clone)]
pub struct SymForm {
    field: Arc<Field>,
    m: usize,
    gram: MatrixFq,
}

impl SymForm {
    pub fn new(field: Arc<Field>, m: usize, gram: MatrixFq) -> Result<SymForm> {
        if gram.rows() != m || gram.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                got: gram.rows() * gram.cols(),
            });
        }
        if gram != gram.transpose() {
            return Err(Error::Parse("Gram matrix is not symmetric".into()));
        }
        Ok(SymForm { field, m, gram })
    }

    pub(crate) fn from_gram_unchecked(field: Arc<Field>, m: usize, gram: MatrixFq) -> SymForm {
        debug_assert_eq!(gram, gram.transpose());
        SymForm { field, m, gram }
    }

    pub fn gram(&self) -> &MatrixFq {
        &self.gram
    }

    /// `xᵀ B y`.
    pub fn eval(&self, x: &[FieldElem], y: &[FieldElem]) -> Result<FieldElem> {
        let by = self.gram.mul_vec(&self.field, y)?;
        if x.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: x.len(),
            });
        }
        let f = &*self.field;
        Ok(x.iter()
            .zip(&by)
            .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.m).all(|i| self.gram.get(i, i).is_zero())
    }

    /// Rank of the Gram matrix; for even rank the type comes from the
    /// alternating test (even q) or the discriminant of the nondegenerate
    /// part (odd q).
    pub fn classify(&self) -> Result<OrbitIndex> {
        let f = &*self.field;
        let (_, pivots) = self.gram.rref(f);
        let rank = pivots.len();
        if rank % 2 == 1 {
            return Ok(OrbitIndex::Odd(rank));
        }
        if rank == 0 {
            return Ok(OrbitIndex::ZERO);
        }
        let tau = if f.is_even() {
            if self.is_alternating() {
                1
            } else {
                -1
            }
        } else {
            // Pivot columns of a symmetric matrix index a nonsingular
            // principal submatrix.
            let mut sub = MatrixFq::zeros(rank, rank);
            for (a, &i) in pivots.iter().enumerate() {
                for (b, &j) in pivots.iter().enumerate() {
                    sub.set(a, b, self.gram.get(i, j));
                }
            }
            let mut d = sub.det(f)?;
            if (rank / 2) % 2 == 1 {
                d = f.neg(d);
            }
            if d.is_zero() {
                return Err(Error::ClassificationInconsistency(
                    "principal submatrix on pivot rows is singular".into(),
                ));
            }
            if f.is_square(d)? {
                1
            } else {
                -1
            }
        };
        Ok(OrbitIndex::Even(rank, tau))
    }

    /// `Tᵀ B T` for an m×m' matrix T.
    pub fn pullback(&self, t: &MatrixFq) -> Result<SymForm> {
        if t.rows() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: t.rows(),
            });
        }
        let f = &*self.field;
        let gram = t.transpose().mul(f, &self.gram)?.mul(f, t)?;
        Ok(SymForm::from_gram_unchecked(self.field.clone(), t.cols(), gram))
    }

    pub fn scale(&self, a: FieldElem) -> SymForm {
        SymForm {
            gram: self.gram.scale(&self.field, a),
            ..self.clone()
        }
    }

    /// For odd q, the quadratic form `Q(x) = S(x,x)/2`.
    pub fn to_quadratic(&self) -> Result<QuadForm> {
        let f = &*self.field;
        if f.is_even() {
            return Err(Error::OddCharRequired);
        }
        let half = f.inv(f.from_int(2))?;
        QuadForm::new(self.field.clone(), self.m, self.gram.scale(f, half))
    }
}

impl Form for SymForm {
    type Dual = QuadForm;
    const KIND: FormKind = FormKind::Symmetric;

    fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn m(&self) -> usize {
        self.m
    }

    fn matrix(&self) -> &MatrixFq {
        &self.gram
    }

    fn from_packed(field: Arc<Field>, m: usize, packed: &[FieldElem]) -> Result<SymForm> {
        let pairs = upper_pairs(m);
        if packed.len() != pairs.len() {
            return Err(Error::DimensionMismatch {
                expected: pairs.len(),
                got: packed.len(),
            });
        }
        let mut gram = MatrixFq::zeros(m, m);
        for (&(i, j), &v) in pairs.iter().zip(packed) {
            gram.set(i, j, v);
            gram.set(j, i, v);
        }
        Ok(SymForm { field, m, gram })
    }

    fn classify(&self) -> Result<OrbitIndex> {
        SymForm::classify(self)
    }

    fn apply_transform(&self, a: FieldElem, l: &MatrixFq) -> Result<SymForm> {
        check_transform(&self.field, self.m, a, l)?;
        Ok(self.pullback(l)?.scale(a))
    }

    fn restrict(&self, w: &MatrixFq) -> Result<SymForm> {
        self.pullback(w)
    }

    fn canonical(field: Arc<Field>, m: usize, i: OrbitIndex) -> Result<SymForm> {
        i.check_admissible(m)?;
        let f = &*field;
        let mut b = MatrixFq::zeros(m, m);
        let r = i.rank();
        let hyperbolic_pairs = match i {
            OrbitIndex::Odd(_) => (r - 1) / 2,
            OrbitIndex::Even(_, 1) => r / 2,
            OrbitIndex::Even(..) => r / 2 - 1,
        };
        for t in 0..hyperbolic_pairs {
            b.set(2 * t, 2 * t + 1, FieldElem::ONE);
            b.set(2 * t + 1, 2 * t, FieldElem::ONE);
        }
        match i {
            OrbitIndex::Odd(_) => b.set(r - 1, r - 1, FieldElem::ONE),
            OrbitIndex::Even(_, 1) => {}
            OrbitIndex::Even(..) => {
                if f.is_even() {
                    b.set(r - 2, r - 1, FieldElem::ONE);
                    b.set(r - 1, r - 2, FieldElem::ONE);
                    b.set(r - 1, r - 1, FieldElem::ONE);
                } else {
                    b.set(r - 2, r - 2, FieldElem::ONE);
                    b.set(r - 1, r - 1, f.neg(f.least_nonsquare()?));
                }
            }
        }
        Ok(SymForm { field, m, gram: b })
    }
}

impl PartialEq for SymForm {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.gram == other.gram && same_field(&self.field, &other.field)
    }
}

impl Eq for SymForm {}

impl std::hash::Hash for SymForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gram.hash(state);
    }
}

impl PartialOrd for SymForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SymForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.packed().cmp(&other.packed())
    }
}

impl std::fmt::Debug for SymForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SymForm(q={}, m={}, {:?})", self.field.q(), self.m, self.packed())
    }
}
