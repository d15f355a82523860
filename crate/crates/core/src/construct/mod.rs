//! Trace representations of forms on F_{q^m} and the code constructions
//! built from them.

mod families;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use families::{
    build_family, elliptic_dcode, puncture, quad_dcode_even_even, quad_dcode_odd_odd, sym_dcode, AnySet,
    Family, Punctured,
};

use crate::error::{Error, Result};
use crate::forms::{Form, QuadForm, SymForm};
use crate::gf::{FieldElem, MatrixFq, Tower};

/// `f_0..f_L` with `L = ⌊m/2⌋`. For even m the last coefficient lies in
/// F_{q^L} and enters through `Tr_L(f_L x^{q^L+1})`; otherwise every term is
/// `Tr_m(f_i x^{q^i+1})`. Entries are big-field encodings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceQuadCoeffs {
    pub f: Vec<FieldElem>,
}

/// `g_0..g_L`: `Tr_m(g_0 xy) + Σ Tr_m(g_i(xy^{q^i} + x^{q^i}y))`, with the
/// last term `Tr_m(g_L x y^{q^L})`, `g_L ∈ F_{q^L}`, for even m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceSymCoeffs {
    pub g: Vec<FieldElem>,
}

fn half_m(t: &Tower) -> usize {
    t.m() / 2
}

/// Allowed values for each coefficient slot, in encoding order.
pub fn coeff_slots(t: &Tower) -> Result<Vec<Vec<FieldElem>>> {
    let m = t.m();
    let l = half_m(t);
    let full: Vec<FieldElem> = t.big().elements().collect();
    let mut slots = vec![full; l + 1];
    if m % 2 == 0 {
        slots[l] = t.subfield(l)?;
    }
    Ok(slots)
}

fn check_coeffs(t: &Tower, c: &[FieldElem]) -> Result<()> {
    let l = half_m(t);
    if c.len() != l + 1 {
        return Err(Error::DimensionMismatch { expected: l + 1, got: c.len() });
    }
    if t.m() % 2 == 0 && t.frob(c[l], l) != c[l] {
        return Err(Error::InvalidField(format!("last coefficient {} is not in F_q^{l}", c[l])));
    }
    Ok(())
}

impl TraceQuadCoeffs {
    pub fn new(t: &Tower, f: Vec<FieldElem>) -> Result<TraceQuadCoeffs> {
        check_coeffs(t, &f)?;
        Ok(TraceQuadCoeffs { f })
    }

    pub fn eval(&self, t: &Tower, x: FieldElem) -> FieldElem {
        let mono = quad_monomials(t, x);
        quad_from_monomials(t, &self.f, &mono)
    }
}

impl TraceSymCoeffs {
    pub fn new(t: &Tower, g: Vec<FieldElem>) -> Result<TraceSymCoeffs> {
        check_coeffs(t, &g)?;
        Ok(TraceSymCoeffs { g })
    }

    pub fn eval(&self, t: &Tower, x: FieldElem, y: FieldElem) -> FieldElem {
        let mono = sym_monomials(t, x, y);
        sym_from_monomials(t, &self.g, &mono)
    }
}

/// `x^{q^i+1}` for `i = 0..=L`.
fn quad_monomials(t: &Tower, x: FieldElem) -> Vec<FieldElem> {
    let big = t.big();
    (0..=half_m(t)).map(|i| big.mul(t.frob(x, i), x)).collect()
}

fn quad_from_monomials(t: &Tower, f: &[FieldElem], mono: &[FieldElem]) -> FieldElem {
    let (big, base) = (t.big(), t.base());
    let l = half_m(t);
    let mut acc = FieldElem::ZERO;
    for (i, (&fi, &xi)) in f.iter().zip(mono).enumerate() {
        if fi.is_zero() {
            continue;
        }
        let y = big.mul(fi, xi);
        let tr = if t.m() % 2 == 0 && i == l {
            t.sub_trace(y, l).expect("norm-type term lies in the half field")
        } else {
            t.rel_trace(y)
        };
        acc = base.add(acc, tr);
    }
    acc
}

/// `xy`, then `xy^{q^i} + x^{q^i}y` for `0 < i < L` (and `i = L` when m is
/// odd), then `x y^{q^L}` for even m.
fn sym_monomials(t: &Tower, x: FieldElem, y: FieldElem) -> Vec<FieldElem> {
    let big = t.big();
    let l = half_m(t);
    (0..=l)
        .map(|i| {
            if i == 0 {
                big.mul(x, y)
            } else if t.m() % 2 == 0 && i == l {
                big.mul(x, t.frob(y, l))
            } else {
                big.add(big.mul(x, t.frob(y, i)), big.mul(t.frob(x, i), y))
            }
        })
        .collect()
}

fn sym_from_monomials(t: &Tower, g: &[FieldElem], mono: &[FieldElem]) -> FieldElem {
    let (big, base) = (t.big(), t.base());
    g.iter().zip(mono).fold(FieldElem::ZERO, |acc, (&gi, &xi)| {
        if gi.is_zero() {
            acc
        } else {
            base.add(acc, t.rel_trace(big.mul(gi, xi)))
        }
    })
}

/// Precomputed monomials at the points a quadratic or bilinear matrix is
/// read from, so that many coefficient vectors can be converted cheaply.
pub struct MatrixReader<'a> {
    tower: &'a Tower,
    /// Quadratic side: `α_i` for each i, then `α_i + α_j` for `i < j`.
    quad: Vec<Vec<FieldElem>>,
    /// Symmetric side: `(β_i, β_j)` for `i ≤ j`.
    sym: Vec<Vec<FieldElem>>,
}

impl<'a> MatrixReader<'a> {
    /// `alpha` is the quadratic-side basis, `beta` the symmetric-side one.
    pub fn new(tower: &'a Tower, alpha: &[FieldElem], beta: &[FieldElem]) -> Result<MatrixReader<'a>> {
        tower.dual_basis(alpha)?;
        tower.dual_basis(beta)?;
        let big = tower.big();
        let m = tower.m();
        let mut quad: Vec<Vec<FieldElem>> = alpha.iter().map(|&a| quad_monomials(tower, a)).collect();
        for i in 0..m {
            for j in i + 1..m {
                quad.push(quad_monomials(tower, big.add(alpha[i], alpha[j])));
            }
        }
        let sym = crate::forms::upper_pairs(m)
            .into_iter()
            .map(|(i, j)| sym_monomials(tower, beta[i], beta[j]))
            .collect();
        Ok(MatrixReader { tower, quad, sym })
    }

    /// The pair used for the pairing formula: polynomial basis and its
    /// trace dual.
    pub fn standard(tower: &'a Tower) -> Result<MatrixReader<'a>> {
        let alpha = tower.polynomial_basis();
        let beta = tower.dual_basis(&alpha)?;
        MatrixReader::new(tower, &alpha, &beta)
    }

    pub fn quad(&self, c: &TraceQuadCoeffs) -> QuadForm {
        let t = self.tower;
        let base = t.base();
        let m = t.m();
        let vals: Vec<FieldElem> = self.quad.iter().map(|mono| quad_from_monomials(t, &c.f, mono)).collect();
        let mut a = MatrixFq::zeros(m, m);
        let mut k = m;
        for i in 0..m {
            a.set(i, i, vals[i]);
            for j in i + 1..m {
                a.set(i, j, base.sub(base.sub(vals[k], vals[i]), vals[j]));
                k += 1;
            }
        }
        QuadForm::new(base.clone(), m, a).expect("square matrix")
    }

    pub fn sym(&self, c: &TraceSymCoeffs) -> SymForm {
        let t = self.tower;
        let packed: Vec<FieldElem> = self.sym.iter().map(|mono| sym_from_monomials(t, &c.g, mono)).collect();
        SymForm::from_packed(t.base().clone(), t.m(), &packed).expect("length matches")
    }
}

/// `A_ii = Q(α_i)`, `A_ij = Q(α_i+α_j) − Q(α_i) − Q(α_j)`.
pub fn trace_quad_to_matrix(t: &Tower, c: &TraceQuadCoeffs, basis: &[FieldElem]) -> Result<QuadForm> {
    check_coeffs(t, &c.f)?;
    Ok(MatrixReader::new(t, basis, basis)?.quad(c))
}

/// `B_ij = S(β_i, β_j)`.
pub fn trace_sym_to_matrix(t: &Tower, c: &TraceSymCoeffs, basis: &[FieldElem]) -> Result<SymForm> {
    check_coeffs(t, &c.g)?;
    Ok(MatrixReader::new(t, basis, basis)?.sym(c))
}

/// Number of coefficient vectors, `q^{m(m+1)/2}`.
pub fn coeff_count(slots: &[Vec<FieldElem>]) -> u128 {
    slots.iter().map(|s| s.len() as u128).product()
}

/// The coefficient vector at position `idx` of the mixed-radix enumeration,
/// first slot most significant.
pub fn coeffs_at(slots: &[Vec<FieldElem>], mut idx: u128) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::ZERO; slots.len()];
    for (slot, vals) in out.iter_mut().zip(slots).rev() {
        let n = vals.len() as u128;
        *slot = vals[(idx % n) as usize];
        idx /= n;
    }
    out
}

/// `Σ_{i<L} Tr_m(f_i g_i)` plus `Tr_L(f_L g_L)` (even m) or `Tr_m(f_L g_L)`.
pub fn coeff_pairing_value(t: &Tower, f: &[FieldElem], g: &[FieldElem]) -> FieldElem {
    let (big, base) = (t.big(), t.base());
    let l = half_m(t);
    f.iter().zip(g).enumerate().fold(FieldElem::ZERO, |acc, (i, (&a, &b))| {
        let y = big.mul(a, b);
        let tr = if t.m() % 2 == 0 && i == l {
            t.sub_trace(y, l).expect("product of half-field elements")
        } else {
            t.rel_trace(y)
        };
        base.add(acc, tr)
    })
}

/// Checks that the matrix pairing of the two trace representations (read in
/// the polynomial basis and its dual) equals the coefficient pairing.
/// Exhaustive when all `q^{m(m+1)}` pairs fit under `cap`, otherwise a seeded
/// sample of `cap.min(1 << 16)` pairs.
pub fn coeff_pairing_check(t: &Tower, cap: u64, seed: u64) -> Result<bool> {
    let reader = MatrixReader::standard(t)?;
    let slots = coeff_slots(t)?;
    let n = coeff_count(&slots);
    let base = t.base();
    let quads: Vec<(Vec<FieldElem>, QuadForm)>;
    let syms: Vec<(Vec<FieldElem>, SymForm)>;
    let pairs: Vec<(usize, usize)>;
    if n * n <= cap as u128 {
        quads = (0..n).map(|i| coeffs_at(&slots, i)).map(|f| (f.clone(), reader.quad(&TraceQuadCoeffs { f }))).collect();
        syms = (0..n).map(|i| coeffs_at(&slots, i)).map(|g| (g.clone(), reader.sym(&TraceSymCoeffs { g }))).collect();
        pairs = (0..n as usize).flat_map(|a| (0..n as usize).map(move |b| (a, b))).collect();
    } else {
        let samples = cap.min(1 << 16) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || coeffs_at(&slots, rng.gen_range(0..n));
        let fs: Vec<Vec<FieldElem>> = (0..samples).map(|_| draw()).collect();
        let gs: Vec<Vec<FieldElem>> = (0..samples).map(|_| draw()).collect();
        quads = fs.into_iter().map(|f| (f.clone(), reader.quad(&TraceQuadCoeffs { f }))).collect();
        syms = gs.into_iter().map(|g| (g.clone(), reader.sym(&TraceSymCoeffs { g }))).collect();
        pairs = (0..samples).map(|i| (i, i)).collect();
    }
    Ok(pairs.par_iter().all(|&(a, b)| {
        let (f, qf) = &quads[a];
        let (g, sf) = &syms[b];
        let want = base.abs_trace(coeff_pairing_value(t, f, g));
        qf.pairing(sf).expect("same field and dimension") == want
    }))
}

pub(crate) fn tower_for(q: u64, m: usize) -> Result<Tower> {
    let base = Arc::new(crate::gf::Field::from_order(q)?);
    Tower::new(base, m)
}
