use std::sync::Arc;

use formscheme::gf::poly::{is_irreducible, IRREDUCIBLE_MODULI};
use formscheme::gf::{prime_power, Field, FieldElem, MatrixFq, Tower};
use proptest::prelude::*;

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

/// Remainder of `a` modulo the monic `b`, coefficients lowest first.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    while a.len() > db {
        let c = a[a.len() - 1];
        let shift = a.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * bi % p) % p;
        }
        a.pop();
    }
    a
}

/// Trial division by every monic polynomial of degree up to half.
fn irreducible_by_search(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        for tail in 0..(p as u64).pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = tail;
            for _ in 0..d {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[test]
fn shipped_moduli_are_irreducible() {
    for &(p, d, coeffs) in IRREDUCIBLE_MODULI {
        assert_eq!(coeffs.len(), d + 1);
        assert!(is_irreducible(coeffs, p), "p={p} d={d}");
        if (p as u64).pow(d as u32 / 2) <= 1 << 12 {
            assert!(irreducible_by_search(coeffs, p), "p={p} d={d}");
        }
    }
    assert!(!is_irreducible(&[1, 0, 1], 2));
    assert!(!irreducible_by_search(&[1, 0, 1], 2));
}

#[test]
fn prime_powers() {
    assert_eq!(prime_power(9), Some((3, 2)));
    assert_eq!(prime_power(64), Some((2, 6)));
    assert_eq!(prime_power(12), None);
    assert_eq!(prime_power(1), None);
    assert!(Field::from_order(6).is_err());
    assert!(Field::with_modulus(2, vec![1, 0, 1]).is_err());
}

#[test]
fn small_fields_satisfy_the_axioms_exhaustively() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field(q);
        let els: Vec<FieldElem> = f.elements().collect();
        assert_eq!(els.len() as u64, q);
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            }
            assert_eq!(f.pow(a, q), a, "Frobenius fixes F_q");
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert!(f.inv(FieldElem::ZERO).is_err());
    }
}

#[test]
fn squares() {
    for q in [3u64, 5, 7, 9, 25, 27] {
        let f = field(q);
        assert!(f.is_square(FieldElem::ZERO).unwrap());
        let mut squares: Vec<FieldElem> = f.elements().map(|a| f.mul(a, a)).collect();
        squares.sort();
        squares.dedup();
        assert_eq!(squares.len() as u64, (q + 1) / 2);
        for a in f.elements() {
            assert_eq!(f.is_square(a).unwrap(), squares.contains(&a));
        }
        assert!(!f.is_square(f.least_nonsquare().unwrap()).unwrap());
    }
    assert!(field(4).least_nonsquare().is_err());
}

#[test]
fn absolute_trace_is_additive_and_hits_one() {
    for q in [4u64, 8, 9, 27] {
        let f = field(q);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.abs_trace(f.add(a, b)), (f.abs_trace(a) + f.abs_trace(b)) % f.p());
            }
        }
        assert_eq!(f.abs_trace(f.least_trace_one()), 1);
    }
}

#[test]
fn relative_trace_is_linear_and_dual_bases_are_dual() {
    for (q, m) in [(2u64, 1usize), (2, 3), (2, 6), (2, 12), (3, 2), (3, 5), (4, 3), (4, 6), (5, 2), (8, 4), (9, 3)] {
        assert!((q as u128).pow(m as u32) <= 4096);
        let t = Tower::new(field(q), m).unwrap();
        let (base, big) = (t.base().clone(), t.big().clone());
        assert_eq!(big.q() as u64, q.pow(m as u32));
        // The embedding is an injective ring map fixing 1.
        assert_eq!(t.embed(FieldElem::ONE), FieldElem::ONE);
        for a in base.elements() {
            assert_eq!(t.project(t.embed(a)), Some(a));
            for b in base.elements() {
                assert_eq!(t.embed(base.add(a, b)), big.add(t.embed(a), t.embed(b)));
                assert_eq!(t.embed(base.mul(a, b)), big.mul(t.embed(a), t.embed(b)));
            }
        }
        // Tr(λy + z) = λTr(y) + Tr(z), exhaustive in y and z for one λ per
        // base element.
        let els: Vec<FieldElem> = big.elements().collect();
        for lambda in base.elements() {
            for &y in els.iter().step_by(1 + els.len() / 64) {
                for &z in &els {
                    let lhs = t.rel_trace(big.add(t.scale(lambda, y), z));
                    let rhs = base.add(base.mul(lambda, t.rel_trace(y)), t.rel_trace(z));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // Tr(y) equals the Frobenius orbit sum, landing in the base field.
        for &y in &els {
            assert_eq!(t.embed(t.rel_trace(y)), t.frob_sum(y, m));
        }
        let basis = t.polynomial_basis();
        let dual = t.dual_basis(&basis).unwrap();
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in dual.iter().enumerate() {
                let want = if i == j { FieldElem::ONE } else { FieldElem::ZERO };
                assert_eq!(t.rel_trace(big.mul(a, b)), want);
            }
        }
        for &y in els.iter().take(50) {
            assert_eq!(t.combine(&t.coords(y, &dual), &basis), y);
        }
    }
}

#[test]
fn subfields_have_the_right_size() {
    let t = Tower::new(field(2), 6).unwrap();
    for d in [1usize, 2, 3, 6] {
        assert_eq!(t.subfield(d).unwrap().len(), 1 << d);
    }
    assert!(t.subfield(4).is_err());
}

#[test]
fn matrix_basics() {
    let f = field(3);
    let a = MatrixFq::from_u32(2, 3, &[1, 2, 0, 0, 1, 1]).unwrap();
    assert_eq!(a.transpose().transpose(), a);
    assert_eq!(a.rank(&f), 2);
    assert_eq!(a.nullspace(&f).len(), 1);
    for v in a.nullspace(&f) {
        assert!(a.mul_vec(&f, &v).unwrap().iter().all(|x| x.is_zero()));
    }
    assert!(MatrixFq::new(2, 2, vec![FieldElem::ZERO; 3]).is_err());
    assert!(a.mul(&f, &a).is_err());
}

fn matrix_strategy() -> impl Strategy<Value = (u64, usize, Vec<u32>)> {
    (prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16]), 1usize..6)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), prop::collection::vec(0..q as u32, n * n)))
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant_and_matches_det((q, n, v) in matrix_strategy()) {
        let f = field(q);
        let a = MatrixFq::from_u32(n, n, &v).unwrap();
        let r = a.rank(&f);
        prop_assert_eq!(r, a.transpose().rank(&f));
        let det = a.det(&f).unwrap();
        prop_assert_eq!(!det.is_zero(), r == n);
        prop_assert_eq!(a.nullspace(&f).len(), n - r);
        match a.inverse(&f) {
            Some(inv) => prop_assert_eq!(a.mul(&f, &inv).unwrap(), MatrixFq::identity(n)),
            None => prop_assert!(r < n),
        }
    }

    #[test]
    fn large_field_axioms(q in prop::sample::select(vec![16u64, 25, 27, 32, 49, 81, 121, 243, 256, 1024, 4096, 65536, 1 << 20]),
                          x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let f = field(q);
        let (a, b, c) = (FieldElem((x % q) as u32), FieldElem((y % q) as u32), FieldElem((z % q) as u32));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.pow(a, q), a);
    }
}
