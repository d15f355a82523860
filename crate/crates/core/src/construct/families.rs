use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{coeff_count, coeffs_at, coeff_slots, tower_for, MatrixReader, TraceQuadCoeffs, TraceSymCoeffs};
use crate::codesets::FormSet;
use crate::error::{check_cap, Error, Result};
use crate::forms::{Form, FormKind, FormsFile, QuadForm, SymForm};
use crate::gf::{FieldElem, MatrixFq, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Sym,
    QuadOo,
    QuadEe,
    Elliptic,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "sym" => Ok(Family::Sym),
            "quad-oo" => Ok(Family::QuadOo),
            "quad-ee" => Ok(Family::QuadEe),
            "elliptic" => Ok(Family::Elliptic),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Sym => "sym",
            Family::QuadOo => "quad-oo",
            Family::QuadEe => "quad-ee",
            Family::Elliptic => "elliptic",
        })
    }
}

/// A set of either kind.
#[derive(Clone, Debug)]
pub enum AnySet {
    Quad(FormSet<QuadForm>),
    Sym(FormSet<SymForm>),
}

impl AnySet {
    pub fn kind(&self) -> FormKind {
        match self {
            AnySet::Quad(_) => FormKind::Quadratic,
            AnySet::Sym(_) => FormKind::Symmetric,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnySet::Quad(x) => x.len(),
            AnySet::Sym(x) => x.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_file(&self) -> FormsFile {
        match self {
            AnySet::Quad(x) => x.to_file(),
            AnySet::Sym(x) => x.to_file(),
        }
    }

    pub fn from_file(file: &FormsFile) -> Result<AnySet> {
        let field = file.field()?;
        Ok(match file.kind {
            FormKind::Quadratic => {
                AnySet::Quad(FormSet::new(field.clone(), file.m, file.quadratic(&field)?)?.detect_additive())
            }
            FormKind::Symmetric => {
                AnySet::Sym(FormSet::new(field.clone(), file.m, file.symmetric(&field)?)?.detect_additive())
            }
        })
    }
}

fn parity(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::ParityMismatch(what()))
    }
}

/// Enumerates every coefficient vector with slots outside `free` fixed to
/// zero, in mixed-radix order over the free slots.
fn free_coeffs(t: &Tower, free: &[usize], cap: u64) -> Result<Vec<Vec<FieldElem>>> {
    let slots = coeff_slots(t)?;
    let chosen: Vec<Vec<FieldElem>> = free.iter().map(|&i| slots[i].clone()).collect();
    let n = coeff_count(&chosen);
    check_cap(n, cap)?;
    Ok((0..n)
        .map(|idx| {
            let vals = coeffs_at(&chosen, idx);
            let mut c = vec![FieldElem::ZERO; slots.len()];
            for (&i, v) in free.iter().zip(vals) {
                c[i] = v;
            }
            c
        })
        .collect())
}

/// Symmetric forms with `g_0..g_{(m−d)/2}` free: an additive d-code of size
/// `q^{m(m−d+2)/2}`. Matrices are read in the trace dual of the polynomial
/// basis.
pub fn sym_dcode(m: usize, d: usize, q: u64, cap: u64) -> Result<FormSet<SymForm>> {
    parity(d >= 1 && d <= m && (m - d) % 2 == 0, || format!("need 1 <= d <= m with d ≡ m mod 2, got m={m}, d={d}"))?;
    let t = tower_for(q, m)?;
    let reader = MatrixReader::standard(&t)?;
    let free: Vec<usize> = (0..=(m - d) / 2).collect();
    let members: Vec<SymForm> = free_coeffs(&t, &free, cap)?
        .into_par_iter()
        .map(|g| reader.sym(&TraceSymCoeffs { g }))
        .collect();
    FormSet::new(t.base().clone(), m, members)?.assume_additive()
}

/// Quadratic forms `Σ_{i=(d−1)/2}^{(m−1)/2} Tr_m(f_i x^{q^i+1})`: additive,
/// size `q^{m(m−d+2)/2}`. Read in the polynomial basis.
pub fn quad_dcode_odd_odd(m: usize, d: usize, q: u64, cap: u64) -> Result<FormSet<QuadForm>> {
    parity(m % 2 == 1 && d % 2 == 1 && d <= m, || format!("need m and d odd with d <= m, got m={m}, d={d}"))?;
    let t = tower_for(q, m)?;
    let reader = MatrixReader::standard(&t)?;
    let free: Vec<usize> = ((d - 1) / 2..=(m - 1) / 2).collect();
    let members: Vec<QuadForm> = free_coeffs(&t, &free, cap)?
        .into_par_iter()
        .map(|f| reader.quad(&TraceQuadCoeffs { f }))
        .collect();
    FormSet::new(t.base().clone(), m, members)?.assume_additive()
}

/// Quadratic forms `Σ_{i=δ}^{n−1} Tr_m(f_i x^{q^i+1}) + Tr_n(f_n x^{q^n+1})`
/// on F_{q^{2n}}: an additive elliptic 2δ-code of size `q^{m(n−δ+1/2)}`.
pub fn elliptic_dcode(m: usize, delta: usize, q: u64, cap: u64) -> Result<FormSet<QuadForm>> {
    parity(m % 2 == 0 && delta >= 1 && delta <= m / 2, || {
        format!("need m even and 1 <= δ <= m/2, got m={m}, δ={delta}")
    })?;
    let t = tower_for(q, m)?;
    let reader = MatrixReader::standard(&t)?;
    let free: Vec<usize> = (delta..=m / 2).collect();
    let members: Vec<QuadForm> = free_coeffs(&t, &free, cap)?
        .into_par_iter()
        .map(|f| reader.quad(&TraceQuadCoeffs { f }))
        .collect();
    FormSet::new(t.base().clone(), m, members)?.assume_additive()
}

/// Even q, m and d. On `V = F_{q^{m−1}} × F_q`,
/// `Q(x,u) = Σ_{i=1}^{m/2−1} Tr((f_0x)^{q^i+1}) + u·Tr(f_0x) + Σ_{i=1}^{(m−d)/2} Tr(f_i x^{q^i+1})`
/// with all traces from F_{q^{m−1}}. Size `q^{(m−1)(m−d+2)/2}`; the set is
/// not closed under addition. Coordinates: polynomial basis of F_{q^{m−1}},
/// then u.
pub fn quad_dcode_even_even(m: usize, d: usize, q: u64, cap: u64) -> Result<FormSet<QuadForm>> {
    if q % 2 == 1 {
        return Err(Error::OddCharacteristic);
    }
    parity(m % 2 == 0 && d % 2 == 0 && d >= 2 && d <= m, || {
        format!("need m and d even with 2 <= d <= m, got m={m}, d={d}")
    })?;
    let t = tower_for(q, m - 1)?;
    let big = t.big();
    let base = t.base();
    let alpha = t.polynomial_basis();
    let k = (m - d) / 2;
    let free: Vec<usize> = (0..=k).collect();
    let elems: Vec<FieldElem> = big.elements().collect();
    let n = (elems.len() as u128).pow(free.len() as u32);
    check_cap(n, cap)?;

    // Points (x,u) where Q is read: basis vectors, then sums of pairs.
    let m1 = m - 1;
    let point = |i: usize| -> (FieldElem, FieldElem) {
        if i < m1 {
            (alpha[i], FieldElem::ZERO)
        } else {
            (FieldElem::ZERO, FieldElem::ONE)
        }
    };
    let eval = |f: &[FieldElem], x: FieldElem, u: FieldElem| -> FieldElem {
        let fx = big.mul(f[0], x);
        let mut acc = FieldElem::ZERO;
        for i in 1..m / 2 {
            acc = base.add(acc, t.rel_trace(big.mul(t.frob(fx, i), fx)));
        }
        acc = base.add(acc, base.mul(u, t.rel_trace(fx)));
        for (i, &fi) in f.iter().enumerate().skip(1) {
            acc = base.add(acc, t.rel_trace(big.mul(fi, big.mul(t.frob(x, i), x))));
        }
        acc
    };
    let members: Vec<QuadForm> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let mut f = vec![FieldElem::ZERO; k + 1];
            let mut rest = idx;
            for slot in f.iter_mut().rev() {
                *slot = elems[(rest % elems.len() as u128) as usize];
                rest /= elems.len() as u128;
            }
            let diag: Vec<FieldElem> = (0..m)
                .map(|i| {
                    let (x, u) = point(i);
                    eval(&f, x, u)
                })
                .collect();
            let mut a = MatrixFq::zeros(m, m);
            for i in 0..m {
                a.set(i, i, diag[i]);
                for j in i + 1..m {
                    let (xi, ui) = point(i);
                    let (xj, uj) = point(j);
                    let both = eval(&f, big.add(xi, xj), base.add(ui, uj));
                    a.set(i, j, base.sub(base.sub(both, diag[i]), diag[j]));
                }
            }
            QuadForm::new(base.clone(), m, a).expect("square matrix")
        })
        .collect();
    FormSet::new(base.clone(), m, members)
}

/// Output of [`puncture`]: the restricted set and how many members merged.
#[derive(Clone, Debug)]
pub struct Punctured<F: Form> {
    pub set: FormSet<F>,
    pub dropped: usize,
}

/// Restriction to a hyperplane W, given as an m×(m−1) matrix whose columns
/// are a basis of W (default: the first m−1 coordinate vectors). Duplicates
/// collapse, keeping the first occurrence.
pub fn puncture<F: Form>(x: &FormSet<F>, w: Option<&MatrixFq>) -> Result<Punctured<F>> {
    let m = x.m();
    if m < 2 {
        return Err(Error::BadSubspace("puncturing needs m >= 2".into()));
    }
    let default;
    let w = match w {
        Some(w) => w,
        None => {
            let mut e = MatrixFq::zeros(m, m - 1);
            for i in 0..m - 1 {
                e.set(i, i, FieldElem::ONE);
            }
            default = e;
            &default
        }
    };
    if w.rows() != m || w.cols() != m - 1 {
        return Err(Error::BadSubspace(format!(
            "expected an {m}×{} basis matrix, got {}×{}",
            m - 1,
            w.rows(),
            w.cols()
        )));
    }
    if w.rank(x.field()) != m - 1 {
        return Err(Error::BadSubspace("columns are linearly dependent".into()));
    }
    let restricted: Vec<F> = x
        .members()
        .par_iter()
        .map(|f| f.restrict(w))
        .collect::<Result<_>>()?;
    let before = restricted.len();
    let set = FormSet::dedup(x.field().clone(), m - 1, restricted)?;
    let dropped = before - set.len();
    let set = if x.is_additive() { set.assume_additive()? } else { set };
    Ok(Punctured { set, dropped })
}

/// Builds a family by name. For `elliptic`, `d` is the even minimum rank
/// 2δ.
pub fn build_family(family: Family, m: usize, d: usize, q: u64, cap: u64) -> Result<AnySet> {
    Ok(match family {
        Family::Sym => AnySet::Sym(sym_dcode(m, d, q, cap)?),
        Family::QuadOo => AnySet::Quad(quad_dcode_odd_odd(m, d, q, cap)?),
        Family::QuadEe => AnySet::Quad(quad_dcode_even_even(m, d, q, cap)?),
        Family::Elliptic => {
            parity(d % 2 == 0, || format!("elliptic codes need even d, got {d}"))?;
            AnySet::Quad(elliptic_dcode(m, d / 2, q, cap)?)
        }
    })
}
