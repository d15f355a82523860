//! Quadratic and symmetric bilinear forms on F_q^m: evaluation, polarization,
//! orbit classification, the group action, the character pairing and full
//! enumeration.

mod index;
mod quad;
mod sym;

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use index::OrbitIndex;
pub use quad::QuadForm;
pub use sym::SymForm;

use crate::error::{check_cap, Error, Result};
use crate::gf::{Field, FieldElem, MatrixFq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Quadratic,
    Symmetric,
}

impl FormKind {
    pub fn dual(self) -> FormKind {
        match self {
            FormKind::Quadratic => FormKind::Symmetric,
            FormKind::Symmetric => FormKind::Quadratic,
        }
    }
}

impl std::fmt::Display for FormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormKind::Quadratic => "quadratic",
            FormKind::Symmetric => "symmetric",
        })
    }
}

impl std::str::FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FormKind> {
        match s {
            "quadratic" | "quad" => Ok(FormKind::Quadratic),
            "symmetric" | "sym" => Ok(FormKind::Symmetric),
            _ => Err(Error::Parse(format!("unknown form kind {s:?}"))),
        }
    }
}

/// Behaviour shared by the two kinds of forms. Each kind is paired with the
/// other through [`Form::pairing`].
pub trait Form: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static {
    type Dual: Form<Dual = Self>;
    const KIND: FormKind;

    fn field(&self) -> &Arc<Field>;
    fn m(&self) -> usize;
    /// Upper-triangular coefficients (quadratic) or the Gram matrix.
    fn matrix(&self) -> &MatrixFq;
    /// Builds a form from its upper-triangle entries, row-major over `i ≤ j`.
    fn from_packed(field: Arc<Field>, m: usize, packed: &[FieldElem]) -> Result<Self>;
    fn classify(&self) -> Result<OrbitIndex>;
    /// `F^g` for `g = (a, L)`.
    fn apply_transform(&self, a: FieldElem, l: &MatrixFq) -> Result<Self>;
    /// Restriction to the column span of an m×m' matrix, in that basis.
    fn restrict(&self, w: &MatrixFq) -> Result<Self>;
    /// The fixed orbit representative.
    fn canonical(field: Arc<Field>, m: usize, i: OrbitIndex) -> Result<Self>;

    fn packed(&self) -> Vec<FieldElem> {
        let a = self.matrix();
        upper_pairs(self.m()).into_iter().map(|(i, j)| a.get(i, j)).collect()
    }

    fn zero(field: Arc<Field>, m: usize) -> Self {
        let n = m * (m + 1) / 2;
        Self::from_packed(field, m, &vec![FieldElem::ZERO; n]).expect("length matches")
    }

    fn is_zero(&self) -> bool {
        self.matrix().is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        self.combine(other, |f, a, b| f.add(a, b))
    }

    fn sub(&self, other: &Self) -> Self {
        self.combine(other, |f, a, b| f.sub(a, b))
    }

    #[doc(hidden)]
    fn combine(&self, other: &Self, op: impl Fn(&Field, FieldElem, FieldElem) -> FieldElem) -> Self {
        assert_eq!(self.m(), other.m(), "forms of different dimension");
        let f = self.field();
        let a = self.packed();
        let b = other.packed();
        let c: Vec<FieldElem> = a.iter().zip(&b).map(|(&x, &y)| op(f, x, y)).collect();
        Self::from_packed(f.clone(), self.m(), &c).expect("length matches")
    }

    /// Position in [`enumerate_forms`] order.
    fn index(&self) -> u64 {
        let q = self.field().q() as u64;
        self.packed().iter().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    fn from_index(field: Arc<Field>, m: usize, mut idx: u64) -> Self {
        let q = field.q() as u64;
        let n = m * (m + 1) / 2;
        let mut packed = vec![FieldElem::ZERO; n];
        for slot in packed.iter_mut().rev() {
            *slot = FieldElem((idx % q) as u32);
            idx /= q;
        }
        Self::from_packed(field, m, &packed).expect("length matches")
    }

    /// Exponent e of `⟨·,·⟩ = ω^e`, with `e = Tr(tr(AB))`.
    fn pairing(&self, other: &Self::Dual) -> Result<u32> {
        if self.m() != other.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: other.m(),
            });
        }
        if !same_field(self.field(), other.field()) {
            return Err(Error::InvalidField("forms over different fields".into()));
        }
        Ok(packed_pairing(self.field(), &self.packed(), &other.packed()))
    }
}

/// `Tr(Σ_{i≤j} A_ij B_ij)`, which equals `Tr(tr(AB))` for upper-triangular A
/// and symmetric B.
pub fn packed_pairing(f: &Field, a: &[FieldElem], b: &[FieldElem]) -> u32 {
    let t = a
        .iter()
        .zip(b)
        .fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
    f.abs_trace(t)
}

/// Character exponent of `⟨Q, S⟩`.
pub fn pairing(q: &QuadForm, s: &SymForm) -> Result<u32> {
    q.pairing(s)
}

/// Number of forms of either kind, `q^{m(m+1)/2}`.
pub fn space_size(q: u32, m: usize) -> u128 {
    (q as u128).pow((m * (m + 1) / 2) as u32)
}

/// Every form of the given kind, in lexicographic order of the packed
/// coefficients with the first coefficient most significant.
pub fn enumerate_forms<F: Form>(
    field: &Arc<Field>,
    m: usize,
    cap: u64,
) -> Result<impl Iterator<Item = F>> {
    let total = space_size(field.q(), m);
    check_cap(total, cap)?;
    let field = field.clone();
    Ok((0..total as u64).map(move |idx| F::from_index(field.clone(), m, idx)))
}

/// Orbit position (see [`OrbitIndex::position`]) of every form, indexed by
/// enumeration order. Runs in parallel.
pub fn classify_all<F: Form>(field: &Arc<Field>, m: usize, cap: u64) -> Result<Vec<u8>> {
    let total = space_size(field.q(), m);
    check_cap(total, cap)?;
    (0..total as u64)
        .into_par_iter()
        .map(|idx| {
            let pos = F::from_index(field.clone(), m, idx).classify()?.position();
            Ok(pos as u8)
        })
        .collect()
}

/// Orbit sizes over the full space, in [`OrbitIndex::all`] order.
pub fn census<F: Form>(field: &Arc<Field>, m: usize, cap: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; OrbitIndex::all(m).len()];
    for c in classify_all::<F>(field, m, cap)? {
        counts[c as usize] += 1;
    }
    Ok(counts)
}

/// `(i, j)` with `i ≤ j`, row-major.
pub fn upper_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect()
}

/// Calls `f` on every vector of F_q^m, lexicographically.
pub fn for_each_point(field: &Field, m: usize, mut f: impl FnMut(&[FieldElem])) {
    let q = field.q();
    let mut x = vec![FieldElem::ZERO; m];
    loop {
        f(&x);
        let mut pos = m;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if x[pos].0 + 1 < q {
                x[pos].0 += 1;
                break;
            }
            x[pos] = FieldElem::ZERO;
        }
    }
}

/// The fixed α with `Tr(α) = 1` (even q) and nonsquare β (odd q) used by
/// the canonical representatives.
pub fn fixed_alpha(field: &Field) -> Result<FieldElem> {
    if !field.is_even() {
        return Err(Error::UnsupportedCase("α is only fixed for even q".into()));
    }
    Ok(field.least_trace_one())
}

pub fn fixed_beta(field: &Field) -> Result<FieldElem> {
    field.least_nonsquare()
}

pub(crate) fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> bool {
    Arc::ptr_eq(a, b) || a.spec() == b.spec()
}

/// JSON interchange for lists of forms. Matrices are row-major m×m integer
/// encodings; quadratic forms are upper-triangularized on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormsFile {
    pub q: u32,
    pub m: usize,
    pub kind: FormKind,
    pub forms: Vec<Vec<u32>>,
}

impl FormsFile {
    pub fn from_forms<F: Form>(field: &Field, m: usize, forms: &[F]) -> FormsFile {
        FormsFile {
            q: field.q(),
            m,
            kind: F::KIND,
            forms: forms
                .iter()
                .map(|f| f.matrix().entries().iter().map(|e| e.0).collect())
                .collect(),
        }
    }

    pub fn field(&self) -> Result<Arc<Field>> {
        Ok(Arc::new(Field::from_order(self.q as u64)?))
    }

    fn matrices(&self, field: &Field) -> Result<Vec<MatrixFq>> {
        self.forms
            .iter()
            .map(|v| {
                if let Some(bad) = v.iter().find(|&&x| x >= field.q()) {
                    return Err(Error::Parse(format!("entry {bad} is not in F_{}", field.q())));
                }
                MatrixFq::from_u32(self.m, self.m, v)
            })
            .collect()
    }

    pub fn quadratic(&self, field: &Arc<Field>) -> Result<Vec<QuadForm>> {
        if self.kind != FormKind::Quadratic {
            return Err(Error::Parse("expected quadratic forms".into()));
        }
        self.matrices(field)?
            .into_iter()
            .map(|a| QuadForm::new(field.clone(), self.m, a))
            .collect()
    }

    pub fn symmetric(&self, field: &Arc<Field>) -> Result<Vec<SymForm>> {
        if self.kind != FormKind::Symmetric {
            return Err(Error::Parse("expected symmetric forms".into()));
        }
        self.matrices(field)?
            .into_iter()
            .map(|b| SymForm::new(field.clone(), self.m, b))
            .collect()
    }
}
