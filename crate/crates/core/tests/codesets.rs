use std::sync::Arc;

use formscheme::codesets::*;
use formscheme::forms::{enumerate_forms, Form, FormKind, OrbitIndex, QuadForm, SymForm};
use formscheme::gf::{Field, FieldElem};
use formscheme::scheme::valency_table;
use formscheme::{Error, DEFAULT_CAP};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn point_and_full_space() {
    for (m, q) in [(2usize, 2u64), (3, 2), (2, 3)] {
        let f = field(q);
        let vt = valency_table(m, q);
        let zero = FormSet::<QuadForm>::singleton_zero(f.clone(), m);
        let d = zero.inner_dist(DEFAULT_CAP).unwrap();
        assert_eq!(d, Distribution::point(m));
        let dual = dual_dist(FormKind::Quadratic, q, &d).unwrap();
        let mu: Vec<BigRational> = vt.mu.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        assert_eq!(dual.values(), &mu[..]);

        let full = FormSet::<QuadForm>::full(f.clone(), m, DEFAULT_CAP).unwrap();
        let d = full.inner_dist(DEFAULT_CAP).unwrap();
        let v: Vec<BigRational> = vt.v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        assert_eq!(d.values(), &v[..]);
        let dual = dual_dist(FormKind::Quadratic, q, &d).unwrap();
        assert_eq!(dual.get(OrbitIndex::ZERO), int(full.len() as i64));
        assert!(is_t_design(&dual, m));
        assert!(macwilliams_check(&full, DEFAULT_CAP).unwrap());
        assert!(macwilliams_check(&zero, DEFAULT_CAP).unwrap());
        assert_eq!(annihilator(&full, DEFAULT_CAP).unwrap().len(), 1);
        assert!(abc_transform_check(FormKind::Quadratic, q, &d).unwrap().ok);
    }
}

#[test]
fn two_element_code() {
    let f = field(2);
    let x1x2 = QuadForm::from_packed(f.clone(), 2, &[FieldElem(0), FieldElem(1), FieldElem(0)]).unwrap();
    let set = FormSet::additive(f.clone(), 2, vec![QuadForm::zero(f.clone(), 2), x1x2]).unwrap();
    let d = set.inner_dist(DEFAULT_CAP).unwrap();
    assert_eq!(d.get(OrbitIndex::ZERO), int(1));
    assert_eq!(d.get(OrbitIndex::Even(2, 1)), int(1));
    assert!(is_d_code(&d, 2));
    assert_eq!(d, set.pairwise_dist(DEFAULT_CAP).unwrap());
}

#[test]
fn symmetric_point() {
    let d = Distribution::point(2);
    assert!(abc_transform_check(FormKind::Symmetric, 2, &d).unwrap().ok);
}

#[test]
fn random_subsets_satisfy_transforms_and_positivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (m, q) in [(3usize, 3u64), (3, 2), (2, 4)] {
        let f = field(q);
        let all: Vec<QuadForm> = enumerate_forms(&f, m, DEFAULT_CAP).unwrap().collect();
        let syms: Vec<SymForm> = enumerate_forms(&f, m, DEFAULT_CAP).unwrap().collect();
        for _ in 0..5 {
            let pick: Vec<QuadForm> = all.choose_multiple(&mut rng, 10).cloned().collect();
            let set = FormSet::new(f.clone(), m, pick).unwrap();
            let d = set.inner_dist(DEFAULT_CAP).unwrap();
            assert_eq!(d.total(), int(10));
            let report = abc_transform_check(FormKind::Quadratic, q, &d).unwrap();
            assert!(report.ok, "{:?}", report.diffs);
            dual_dist(FormKind::Quadratic, q, &d).unwrap();

            let pick: Vec<SymForm> = syms.choose_multiple(&mut rng, 10).cloned().collect();
            let set = FormSet::new(f.clone(), m, pick).unwrap();
            let d = set.inner_dist(DEFAULT_CAP).unwrap();
            let report = abc_transform_check(FormKind::Symmetric, q, &d).unwrap();
            assert!(report.ok, "{:?}", report.diffs);
            dual_dist(FormKind::Symmetric, q, &d).unwrap();
        }
    }
}

#[test]
fn sporadic_fixture() {
    let x = sporadic_2code();
    assert_eq!(x.len(), 22);
    assert!(!x.check_additive());
    let d = x.inner_dist(DEFAULT_CAP).unwrap();
    assert!(is_d_code(&d, 2));
    let bound = size_bound(FormKind::Symmetric, 3, 2, 2, BoundVariant::Additive).unwrap();
    assert_eq!(bound, BigInt::from(16));
    dual_dist(FormKind::Symmetric, 2, &d).unwrap();
}

#[test]
fn non_additive_rejected() {
    let x = sporadic_2code();
    assert!(matches!(annihilator(&x, DEFAULT_CAP), Err(Error::NotAdditive)));
    assert!(matches!(x.clone().into_additive(), Err(Error::NotAdditive)));
}

/// Every additive subgroup of 𝒮(2,2) generated by at most two forms that is a
/// 2-code has at most the bound's 4 members, and the annihilator round trip
/// holds for all of them.
#[test]
fn additive_subgroups_of_small_space() {
    let f = field(2);
    let all: Vec<SymForm> = enumerate_forms(&f, 2, DEFAULT_CAP).unwrap().collect();
    let bound = size_bound(FormKind::Symmetric, 2, 2, 2, BoundVariant::Additive).unwrap();
    let mut best = 0usize;
    for a in &all {
        for b in &all {
            let mut members = vec![SymForm::zero(f.clone(), 2), a.clone(), b.clone(), a.add(b)];
            members.sort();
            members.dedup();
            let set = FormSet::additive(f.clone(), 2, members).unwrap();
            let d = set.inner_dist(DEFAULT_CAP).unwrap();
            if is_d_code(&d, 2) {
                best = best.max(set.len());
            }
            let ann = annihilator(&set, DEFAULT_CAP).unwrap();
            assert_eq!(ann.len() * set.len(), 8);
            let back = annihilator(&ann, DEFAULT_CAP).unwrap();
            assert_eq!(back.sorted(), set.sorted());
            assert!(macwilliams_check(&set, DEFAULT_CAP).unwrap());
        }
    }
    assert_eq!(BigInt::from(best), bound);
}
