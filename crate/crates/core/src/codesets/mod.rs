//! Subsets of 𝒬(m,q) or 𝒮(m,q): inner and dual distributions, codes and
//! designs, size bounds, annihilators and the transform identities.

mod abc;
mod bounds;
mod dist;
mod fp;

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

pub use abc::{abc_transform_check, AbcReport};
pub use bounds::{design_strength, size_bound, theoretical_inner_dist, BoundVariant, DistCase, Theoretical};
pub use dist::Distribution;

use crate::error::{check_cap, Error, Result};
use crate::forms::{space_size, Form, FormKind, FormsFile, OrbitIndex, SymForm};
use crate::gf::{Field, FieldElem};
use crate::scheme::eig_tables;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type InnerDist = Distribution;
pub type DualDist = Distribution;

/// A set of distinct forms of one kind. The additive flag is set by the
/// checked constructors, or by constructions that are linear by design.
#[derive(Clone, Debug)]
pub struct FormSet<F: Form> {
    field: Arc<Field>,
    m: usize,
    members: Vec<F>,
    additive: bool,
}

impl<F: Form> FormSet<F> {
    pub fn new(field: Arc<Field>, m: usize, members: Vec<F>) -> Result<FormSet<F>> {
        let mut seen = HashSet::with_capacity(members.len());
        for (pos, x) in members.iter().enumerate() {
            if x.m() != m {
                return Err(Error::DimensionMismatch { expected: m, got: x.m() });
            }
            if !crate::forms::same_field(x.field(), &field) {
                return Err(Error::InvalidField(format!("member {pos} lives over another field")));
            }
            if !seen.insert(x) {
                return Err(Error::Parse(format!("duplicate member at position {pos}")));
            }
        }
        Ok(FormSet { field, m, members, additive: false })
    }

    /// Keeps the first occurrence of each form.
    pub fn dedup(field: Arc<Field>, m: usize, members: impl IntoIterator<Item = F>) -> Result<FormSet<F>> {
        let mut seen = HashSet::new();
        let kept: Vec<F> = members.into_iter().filter(|x| seen.insert(x.clone())).collect();
        FormSet::new(field, m, kept)
    }

    /// Builds the set and checks that it is an additive subgroup.
    pub fn additive(field: Arc<Field>, m: usize, members: Vec<F>) -> Result<FormSet<F>> {
        FormSet::new(field, m, members)?.into_additive()
    }

    pub fn into_additive(mut self) -> Result<FormSet<F>> {
        if !self.check_additive() {
            return Err(Error::NotAdditive);
        }
        self.additive = true;
        Ok(self)
    }

    /// Marks the set additive if it is, for sets read back from files.
    pub fn detect_additive(mut self) -> FormSet<F> {
        self.additive = self.additive || self.check_additive();
        self
    }

    /// For sets that are linear images by construction. Checked in debug
    /// builds when small.
    pub(crate) fn assume_additive(mut self) -> Result<FormSet<F>> {
        if cfg!(debug_assertions) && self.members.len() <= 1 << 12 && !self.check_additive() {
            return Err(Error::NotAdditive);
        }
        self.additive = true;
        Ok(self)
    }

    pub fn singleton_zero(field: Arc<Field>, m: usize) -> FormSet<F> {
        let z = F::zero(field.clone(), m);
        FormSet { field, m, members: vec![z], additive: true }
    }

    pub fn full(field: Arc<Field>, m: usize, cap: u64) -> Result<FormSet<F>> {
        let members: Vec<F> = crate::forms::enumerate_forms(&field, m, cap)?.collect();
        Ok(FormSet { field, m, members, additive: true })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn kind(&self) -> FormKind {
        F::KIND
    }

    pub fn members(&self) -> &[F] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_additive(&self) -> bool {
        self.additive
    }

    /// Closure under addition, decided by comparing |X| with the size of
    /// its F_p-span.
    pub fn check_additive(&self) -> bool {
        let f = &*self.field;
        let mut basis = fp::Echelon::new(f.p());
        for x in &self.members {
            basis.insert(fp::to_digits(f, &x.packed()));
        }
        let span = (f.p() as u128).checked_pow(basis.rank() as u32);
        span == Some(self.members.len() as u128)
    }

    pub fn to_file(&self) -> FormsFile {
        FormsFile::from_forms(&self.field, self.m, &self.members)
    }

    /// Sorted copy, for order-independent comparisons.
    pub fn sorted(&self) -> Vec<F> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    /// Smallest rank of a nonzero difference, or m+1 for a single member.
    pub fn min_distance(&self, cap: u64) -> Result<usize> {
        let d = self.inner_dist(cap)?;
        Ok(d
            .iter()
            .filter(|(i, v)| !i.is_zero() && !v.is_zero())
            .map(|(i, _)| i.rank())
            .min()
            .unwrap_or(self.m + 1))
    }

    /// `a_i`: the census for additive sets, otherwise all pairwise
    /// differences.
    pub fn inner_dist(&self, cap: u64) -> Result<InnerDist> {
        if self.additive {
            self.census_dist(cap)
        } else {
            self.pairwise_dist(cap)
        }
    }

    /// `|X ∩ 𝒳_i| ` as a distribution; equals `a_i` only for additive X.
    pub fn census_dist(&self, cap: u64) -> Result<InnerDist> {
        check_cap(self.members.len() as u128 * classify_cost::<F>(self.q(), self.m), cap)?;
        let counts = self
            .members
            .par_iter()
            .map(|x| x.classify().map(|i| i.position()))
            .try_fold(
                || vec![0u64; OrbitIndex::all(self.m).len()],
                |mut acc, pos| {
                    acc[pos?] += 1;
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(
                || vec![0u64; OrbitIndex::all(self.m).len()],
                |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
            )?;
        Ok(Distribution::from_counts(self.m, &counts, 1))
    }

    /// Classifies `x − y` for every unordered pair; `−D` lies in the orbit of D.
    pub fn pairwise_dist(&self, cap: u64) -> Result<InnerDist> {
        let n = self.members.len();
        let pairs = (n as u128) * (n as u128 - 1) / 2;
        check_cap(pairs * classify_cost::<F>(self.q(), self.m), cap)?;
        let slots = OrbitIndex::all(self.m).len();
        let counts = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut acc = vec![0u64; slots];
                for b in a + 1..n {
                    let i = self.members[a].sub(&self.members[b]).classify()?;
                    acc[i.position()] += 2;
                }
                Ok::<_, Error>(acc)
            })
            .try_reduce(
                || vec![0u64; slots],
                |a, b| Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect()),
            )?;
        let mut counts = counts;
        counts[0] += n as u64;
        Ok(Distribution::from_counts(self.m, &counts, n as u64))
    }
}

/// Rough per-member work of one classification: a point count for
/// quadratic forms, an elimination for symmetric ones.
pub fn classify_cost<F: Form>(q: u64, m: usize) -> u128 {
    match F::KIND {
        FormKind::Quadratic => (q as u128).pow(m as u32),
        FormKind::Symmetric => (m * m).max(1) as u128,
    }
}

/// `a'_k = Σ_i Q_k(i) a_i` in the scheme of the given kind. Negative entries
/// are reported as [`Error::NegativeDual`].
pub fn dual_dist(kind: FormKind, q: u64, d: &InnerDist) -> Result<DualDist> {
    let out = dual_values(kind, q, d)?;
    for (k, v) in out.iter() {
        if v.is_negative() {
            return Err(Error::NegativeDual(k));
        }
    }
    Ok(out)
}

/// The same product without the sign check.
pub fn dual_values(kind: FormKind, q: u64, d: &InnerDist) -> Result<DualDist> {
    let m = d.m();
    let tables = eig_tables(m, q)?;
    // Both schemes store Q_k(i) at rows[k][i].
    let table = match kind {
        FormKind::Quadratic => &tables.quad_q,
        FormKind::Symmetric => &tables.sym_q,
    };
    let values = table
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(d.values())
                .fold(BigRational::zero(), |acc, (qk, a)| acc + BigRational::from_integer(qk.clone()) * a)
        })
        .collect();
    Ok(Distribution::new(m, values))
}

/// `a_i = 0` for every i of rank 1..d−1.
pub fn is_d_code(d: &InnerDist, dd: usize) -> bool {
    d.iter().all(|(i, v)| !i.in_low_set(dd.saturating_sub(1)) || v.is_zero())
}

/// A d-code with no difference hyperbolic of rank exactly d.
pub fn is_elliptic_code(d: &InnerDist, dd: usize) -> bool {
    is_d_code(d, dd) && d.get(OrbitIndex::Even(dd, 1)).is_zero()
}

/// `a'_k = 0` for every k of rank 1..t.
pub fn is_t_design(dual: &DualDist, t: usize) -> bool {
    dual.iter().all(|(k, v)| !k.in_low_set(t) || v.is_zero())
}

/// `X° = {Y : ⟨X, Y⟩ = 1 for all X}`, as the kernel of the F_p-linear
/// exponent map. Members are sorted by enumeration index.
pub fn annihilator<F: Form>(x: &FormSet<F>, cap: u64) -> Result<FormSet<F::Dual>> {
    if !x.additive {
        return Err(Error::NotAdditive);
    }
    let f = &*x.field;
    let (p, k) = (f.p(), f.k());
    let n = x.m * (x.m + 1) / 2;
    let mut gens = fp::Echelon::new(p);
    for g in &x.members {
        gens.insert(fp::to_digits(f, &g.packed()));
    }
    // Row for generator g: the coefficient of digit l of entry t is Tr(g_t·x^l).
    let units: Vec<FieldElem> = (0..k).map(|l| FieldElem((p as u32).pow(l as u32))).collect();
    let rows: Vec<Vec<u32>> = gens
        .rows()
        .iter()
        .map(|g| {
            let packed = fp::from_digits(f, g, n);
            packed
                .iter()
                .flat_map(|&gt| units.iter().map(move |&u| f.abs_trace(f.mul(gt, u))))
                .collect()
        })
        .collect();
    let kernel = fp::kernel(p, &rows, n * k);
    let size = (p as u128).pow(kernel.len() as u32);
    check_cap(size, cap)?;
    let total = space_size(f.q(), x.m);
    debug_assert_eq!(size * x.members.len() as u128, total);
    let mut members: Vec<F::Dual> = fp::span(p, &kernel, n * k)
        .into_iter()
        .map(|v| F::Dual::from_packed(x.field.clone(), x.m, &fp::from_digits(f, &v, n)))
        .collect::<Result<_>>()?;
    members.sort_by_key(|y| y.index());
    Ok(FormSet { field: x.field.clone(), m: x.m, members, additive: true })
}

/// `|X|·a°_k = a'_k` for every k, where `a°` is the inner distribution of the
/// annihilator.
pub fn macwilliams_check<F: Form>(x: &FormSet<F>, cap: u64) -> Result<bool> {
    if !x.additive {
        return Err(Error::NotAdditive);
    }
    let dual = dual_dist(F::KIND, x.q(), &x.inner_dist(cap)?)?;
    let ann = annihilator(x, cap)?;
    let scaled = ann.inner_dist(cap)?.scaled(&BigRational::from_integer(x.len().into()));
    Ok(scaled == dual)
}

/// `{0}` together with the 21 non-alternating rank-2 forms in 𝒮(3,2): a
/// 2-code of size 22, larger than any additive 2-code there.
pub fn sporadic_2code() -> FormSet<SymForm> {
    let field = Arc::new(Field::new(2, 1).expect("F_2"));
    let members: Vec<SymForm> = crate::forms::enumerate_forms::<SymForm>(&field, 3, 64)
        .expect("64 forms")
        .filter(|s| {
            s.is_zero() || s.classify().expect("classify") == OrbitIndex::Even(2, -1)
        })
        .collect();
    FormSet::new(field, 3, members).expect("distinct")
}
