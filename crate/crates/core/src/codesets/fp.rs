//! Vectors over the prime field, used to treat sets of forms as F_p-spaces.

use crate::gf::{Field, FieldElem};

/// Base-p digits of every coefficient, concatenated.
pub(crate) fn to_digits(f: &Field, packed: &[FieldElem]) -> Vec<u32> {
    packed.iter().flat_map(|&a| f.digits(a)).collect()
}

pub(crate) fn from_digits(f: &Field, v: &[u32], n: usize) -> Vec<FieldElem> {
    let k = f.k();
    (0..n).map(|t| f.encode(&v[t * k..(t + 1) * k])).collect()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Reduced row echelon basis grown one vector at a time.
pub(crate) struct Echelon {
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(p: u32) -> Echelon {
        Echelon { p, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn axpy(&self, v: &mut [u32], c: u32, row: &[u32]) {
        let p = self.p as u64;
        for (x, &r) in v.iter_mut().zip(row) {
            *x = ((*x as u64 + (p - c as u64) * r as u64) % p) as u32;
        }
    }

    /// Returns false if `v` was already in the span.
    pub(crate) fn insert(&mut self, mut v: Vec<u32>) -> bool {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                self.axpy(&mut v, c, row);
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], self.p) as u64;
        for x in v.iter_mut() {
            *x = (*x as u64 * inv % self.p as u64) as u32;
        }
        for i in 0..self.rows.len() {
            let c = self.rows[i][piv];
            if c != 0 {
                let mut row = std::mem::take(&mut self.rows[i]);
                self.axpy(&mut row, c, &v);
                self.rows[i] = row;
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }
}

/// Basis of `{x : R·x = 0}` over F_p for rows of length `n`.
pub(crate) fn kernel(p: u32, rows: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(p);
    for r in rows {
        e.insert(r.clone());
    }
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; n];
            v[fc] = 1;
            for (row, &piv) in e.rows.iter().zip(&e.pivots) {
                v[piv] = (p - row[fc]) % p;
            }
            v
        })
        .collect()
}

/// Every F_p-combination of `basis`.
pub(crate) fn span(p: u32, basis: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for b in basis {
        let prev = out.len();
        for c in 1..p as u64 {
            for i in 0..prev {
                let v: Vec<u32> = out[i]
                    .iter()
                    .zip(b)
                    .map(|(&x, &y)| ((x as u64 + c * y as u64) % p as u64) as u32)
                    .collect();
                out.push(v);
            }
        }
    }
    out
}
