//! Dense polynomials over a prime field and the shipped modulus table.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros (the zero polynomial is the empty vector).

/// Least monic irreducible polynomial of each degree 1..=12 over the small
/// primes, ordered by the integer `c_0 + c_1 p + ... + c_{d-1} p^{d-1}` of
/// the non-leading coefficients.
pub const IRREDUCIBLE_MODULI: &[(u32, usize, &[u32])] = &[
    (2, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[2, 0, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 1, 0, 0, 0, 0, 0, 1]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 11, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 12, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (5, 5, &[1, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 9, &[3, 2, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, 10, &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 11, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 12, &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 1, &[0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (7, 4, &[1, 1, 0, 0, 1]),
    (7, 5, &[3, 1, 0, 0, 0, 1]),
    (7, 6, &[2, 0, 0, 0, 0, 0, 1]),
    (7, 7, &[1, 6, 0, 0, 0, 0, 0, 1]),
    (7, 8, &[3, 1, 0, 0, 0, 0, 0, 0, 1]),
    (7, 9, &[2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 10, &[3, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 11, &[3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 12, &[2, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (11, 1, &[0, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (11, 5, &[2, 0, 0, 0, 0, 1]),
    (11, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (11, 7, &[4, 1, 0, 0, 0, 0, 0, 1]),
    (11, 8, &[4, 1, 0, 0, 0, 0, 0, 0, 1]),
    (11, 9, &[5, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (11, 10, &[3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (11, 11, &[1, 10, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (11, 12, &[7, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (13, 1, &[0, 1]),
    (13, 2, &[2, 0, 1]),
    (13, 3, &[2, 0, 0, 1]),
    (13, 4, &[2, 0, 0, 0, 1]),
    (13, 5, &[2, 4, 0, 0, 0, 1]),
    (13, 6, &[2, 0, 0, 0, 0, 0, 1]),
    (13, 7, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (13, 8, &[2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (13, 9, &[2, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (13, 10, &[9, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (13, 11, &[5, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (13, 12, &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
];

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    let p64 = p as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv % p64;
        let shift = top - dm;
        for (j, &c) in m.iter().enumerate() {
            let sub = factor * c as u64 % p64;
            r[shift + j] = ((r[shift + j] as u64 + p64 - sub) % p64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

/// `a^(p^times)` modulo `m`.
fn frobenius_pow(a: &[u32], times: usize, m: &[u32], p: u32) -> Vec<u32> {
    let mut cur = a.to_vec();
    for _ in 0..times {
        let mut result = vec![1u32];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        cur = result;
    }
    cur
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
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

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    if sub(&frobenius_pow(&x, d, &f, p), &x, p) != Vec::<u32>::new() {
        return false;
    }
    prime_factors(d).into_iter().all(|r| {
        let h = sub(&frobenius_pow(&x, d / r, &f, p), &x, p);
        gcd(&f, &h, p).len() == 1
    })
}

/// Shipped modulus for `(p, degree)`; degrees beyond the table fall back to a
/// deterministic search for the least irreducible polynomial.
pub fn default_modulus(p: u32, degree: usize) -> Vec<u32> {
    if let Some((_, _, coeffs)) = IRREDUCIBLE_MODULI
        .iter()
        .find(|(pp, d, _)| *pp == p && *d == degree)
    {
        return coeffs.to_vec();
    }
    least_irreducible(p, degree)
}

pub(crate) fn least_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let mut v: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut t = v;
        for _ in 0..degree {
            coeffs.push((t % p as u64) as u32);
            t /= p as u64;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        v += 1;
    }
}
