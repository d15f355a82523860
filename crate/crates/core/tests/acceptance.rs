//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use formscheme::codesets::{
    annihilator, size_bound, theoretical_inner_dist, BoundVariant,
    Distribution, DistCase, FormSet, Theoretical,
};
use formscheme::construct::{elliptic_dcode, quad_dcode_odd_odd};
use formscheme::forms::{enumerate_forms, for_each_point, Form, FormKind, OrbitIndex, QuadForm, SymForm};
use formscheme::gf::{Field, FieldElem};
use formscheme::rmcodes::{
    coset_enum_brute, designed_distance, dist_enum_brute, dist_enum_theory, omega, ClassicalCode, WeightEnumerator,
};
use formscheme::suites::{self, ConstructedSet, Limits, Verdict};
use formscheme::{Error, DEFAULT_CAP};
use num_bigint::BigInt;
use num_rational::BigRational;

const GRID: [(usize, u64); 9] = [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3), (2, 4), (2, 5)];

static CASES: AtomicUsize = AtomicUsize::new(0);

fn tick() {
    CASES.fetch_add(1, Ordering::Relaxed);
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// Brute-force oracles, independent of the library's classification and
// code machinery. Only field arithmetic is shared.

fn rank(f: &Field, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = f.mul(rows[i][c], inv);
                for j in 0..cols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        r += 1;
    }
    r
}

fn points(f: &Field, m: usize) -> Vec<Vec<FieldElem>> {
    let mut out = Vec::new();
    for_each_point(f, m, |x| out.push(x.to_vec()));
    out
}

/// `Σ_{i≤j} a_ij x_i x_j` from the stored coefficients.
fn eval_quad(f: &Field, a: &QuadForm, x: &[FieldElem]) -> FieldElem {
    let c = a.coeffs();
    let mut acc = FieldElem::ZERO;
    for i in 0..x.len() {
        for j in i..x.len() {
            acc = f.add(acc, f.mul(c.get(i, j), f.mul(x[i], x[j])));
        }
    }
    acc
}

/// Rank and type from the polar rank and the zero count: a form has
/// q^{m−1} zeros exactly when its rank is odd, and otherwise
/// q^{m−1} + τ(q−1)q^{m−1−s}.
fn class_from(f: &Field, m: usize, polar_rank: usize, zeros: u64) -> OrbitIndex {
    let q = f.q() as u64;
    let base = q.pow(m as u32 - 1);
    if zeros == base {
        let r = if f.is_even() { polar_rank + 1 } else { polar_rank };
        OrbitIndex::Odd(r)
    } else {
        OrbitIndex::Even(polar_rank, if zeros > base { 1 } else { -1 })
    }
}

fn classify_quad(f: &Field, a: &QuadForm, pts: &[Vec<FieldElem>]) -> OrbitIndex {
    let m = a.m();
    let c = a.coeffs();
    let polar: Vec<Vec<FieldElem>> =
        (0..m).map(|i| (0..m).map(|j| f.add(c.get(i, j), c.get(j, i))).collect()).collect();
    let zeros = pts.iter().filter(|x| eval_quad(f, a, x).is_zero()).count() as u64;
    class_from(f, m, rank(f, polar), zeros)
}

/// Even q: even rank is hyperbolic exactly when alternating. Odd q: the type
/// of `x ↦ S(x,x)`.
fn classify_sym(f: &Field, s: &SymForm, pts: &[Vec<FieldElem>]) -> OrbitIndex {
    let m = s.m();
    let g = s.gram();
    let r = rank(f, (0..m).map(|i| g.row(i).to_vec()).collect());
    if r % 2 == 1 {
        return OrbitIndex::Odd(r);
    }
    if f.is_even() {
        let alternating = (0..m).all(|i| g.get(i, i).is_zero());
        return OrbitIndex::Even(r, if alternating { 1 } else { -1 });
    }
    let zeros = pts
        .iter()
        .filter(|x| {
            let mut acc = FieldElem::ZERO;
            for i in 0..m {
                for j in 0..m {
                    acc = f.add(acc, f.mul(g.get(i, j), f.mul(x[i], x[j])));
                }
            }
            acc.is_zero()
        })
        .count() as u64;
    class_from(f, m, r, zeros)
}

/// Inner distribution from the brute-force classifier: member census for
/// additive sets, all ordered pairs otherwise.
fn oracle_inner_dist(y: &FormSet<QuadForm>) -> Distribution {
    let f = y.field().clone();
    let pts = points(&f, y.m());
    let mut counts: HashMap<OrbitIndex, u64> = HashMap::new();
    let ms = y.members();
    if y.is_additive() {
        for a in ms {
            *counts.entry(classify_quad(&f, a, &pts)).or_default() += 1;
        }
    } else {
        for a in ms {
            for b in ms {
                *counts.entry(classify_quad(&f, &a.sub(b), &pts)).or_default() += 1;
            }
        }
    }
    let denom = if y.is_additive() { 1 } else { ms.len() as u64 };
    let mut d = Distribution::zeros(y.m());
    for (i, c) in counts {
        d.set(i, rat(c) / rat(denom));
    }
    d
}

/// Weight census of `{Q + b·x + c}` over the nonzero points, for every
/// Q in `forms`.
fn affine_census(f: &Field, m: usize, forms: &[QuadForm]) -> Vec<u64> {
    let pts: Vec<Vec<FieldElem>> = points(f, m).into_iter().skip(1).collect();
    let mut counts = vec![0u64; pts.len() + 1];
    let lin = points(f, m);
    for a in forms {
        let qv: Vec<FieldElem> = pts.iter().map(|x| eval_quad(f, a, x)).collect();
        for b in &lin {
            for c in f.elements() {
                let w = pts
                    .iter()
                    .zip(&qv)
                    .filter(|(x, &v)| {
                        let dot = x.iter().zip(b).fold(FieldElem::ZERO, |s, (&xi, &bi)| f.add(s, f.mul(xi, bi)));
                        !f.add(f.add(v, dot), c).is_zero()
                    })
                    .count();
                counts[w] += 1;
            }
        }
    }
    counts
}

fn enumerator_of(length: usize, counts: &[u64]) -> WeightEnumerator {
    WeightEnumerator::from_counts(length, counts)
}

// ---------------------------------------------------------------------------

fn orbit_census() -> Verdict {
    for (m, q) in GRID {
        ensure(OrbitIndex::all(m).len() == 3 * m / 2 + 1, || format!("index count at m={m}"))?;
        tick();
        suites::orbit_census(m, q, DEFAULT_CAP)?;
        // Independent classification of every form.
        let f = field(q);
        let pts = points(&f, m);
        let mut quad: HashMap<OrbitIndex, u64> = HashMap::new();
        for a in enumerate_forms::<QuadForm>(&f, m, DEFAULT_CAP).unwrap() {
            *quad.entry(classify_quad(&f, &a, &pts)).or_default() += 1;
        }
        let mut sym: HashMap<OrbitIndex, u64> = HashMap::new();
        for s in enumerate_forms::<SymForm>(&f, m, DEFAULT_CAP).unwrap() {
            *sym.entry(classify_sym(&f, &s, &pts)).or_default() += 1;
        }
        for (kind, census) in [(FormKind::Quadratic, quad), (FormKind::Symmetric, sym)] {
            ensure(census.len() == 3 * m / 2 + 1, || format!("{kind} m={m} q={q}: {census:?}"))?;
            for (i, c) in census {
                let v = formscheme::scheme::valency(kind, i, m, q).map_err(|e| e.to_string())?;
                ensure(v == BigInt::from(c), || format!("{kind} class {i} at m={m}, q={q}: {c} vs {v}"))?;
            }
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Verdict {
    for (m, q) in GRID.into_iter().chain([(4, 3)]) {
        tick();
        suites::oracle_equivalence(m, q, DEFAULT_CAP)?;
    }
    Ok(())
}

fn algebraic_identities() -> Verdict {
    for q in [2, 3, 4, 5] {
        tick();
        suites::pascal(12, q)?;
    }
    for q in [2, 3, 4] {
        for m in 1..=8 {
            tick();
            suites::f_transform(m, q)?;
            suites::f_orthogonality(m, q)?;
            suites::f_cross_degree(m, q)?;
        }
        for m in 1..=6 {
            tick();
            suites::q_recurrences(m, q)?;
            suites::q_row_sums(m, q)?;
        }
    }
    for q in [2, 3] {
        for m in 1..=5 {
            tick();
            suites::q_grouped_sums(m, q)?;
        }
    }
    for (m, q) in GRID.into_iter().chain([(4, 3)]) {
        tick();
        suites::inverse_pair(m, q)?;
    }
    Ok(())
}

fn grid_sets(budget: u128) -> Vec<(String, ConstructedSet)> {
    let l = Limits { max_q: 4, max_m: 6, cap: DEFAULT_CAP, seed: 0 };
    suites::constructions(l, budget).into_iter().filter(|(_, x)| x.cost() <= DEFAULT_CAP as u128).collect()
}

fn attainment() -> Verdict {
    let sets = grid_sets(1 << 16);
    let mut families = HashSet::new();
    for (label, x) in &sets {
        families.insert(label.split('(').next().unwrap().to_string());
        tick();
        suites::attainment_of(label, x, DEFAULT_CAP)?;
    }
    ensure(families.len() == 4, || format!("only {families:?} were exercised"))
}

fn distribution_formulas() -> Verdict {
    let full = |case, m, q, d| match theoretical_inner_dist(case, m, q, d).unwrap() {
        Theoretical::Full(t) => t,
        Theoretical::Aggregates { .. } => unreachable!(),
    };
    let y = quad_dcode_odd_odd(3, 3, 2, DEFAULT_CAP).unwrap();
    ensure(oracle_inner_dist(&y).get(OrbitIndex::Odd(3)) == rat(7), || "a_3 ≠ 7 at (3,3,2)".into())?;
    let y = quad_dcode_odd_odd(5, 5, 2, DEFAULT_CAP).unwrap();
    ensure(oracle_inner_dist(&y) == full(DistCase::QuadOddMOddD, 5, 2, 5), || "(5,5,2) distribution".into())?;
    let y = elliptic_dcode(4, 2, 2, DEFAULT_CAP).unwrap();
    ensure(oracle_inner_dist(&y).get(OrbitIndex::Even(4, -1)) == rat(3), || "a_4- ≠ 3 at elliptic (4,2,2)".into())?;
    for (label, x) in grid_sets(1 << 12) {
        tick();
        let (y, case, d) = match &x {
            ConstructedSet::QuadOddOdd(y, d) => (y, DistCase::QuadOddMOddD, *d),
            ConstructedSet::Elliptic(y, d) => (y, DistCase::Elliptic, *d),
            _ => {
                suites::distribution_of(&label, &x, DEFAULT_CAP)?;
                continue;
            }
        };
        if y.len() as u64 * (y.q().pow(y.m() as u32)) > 1 << 22 {
            suites::distribution_of(&label, &x, DEFAULT_CAP)?;
            continue;
        }
        ensure(oracle_inner_dist(y) == full(case, y.m(), y.q(), d), || format!("{label}: oracle census differs"))?;
    }
    Ok(())
}

/// Annihilator by scanning the whole dual space.
fn brute_annihilator<F: Form>(x: &FormSet<F>) -> Vec<F::Dual> {
    let f = x.field();
    enumerate_forms::<F::Dual>(f, x.m(), DEFAULT_CAP)
        .unwrap()
        .filter(|b| x.members().iter().all(|a| a.pairing(b).unwrap() == 0))
        .collect()
}

fn macwilliams() -> Verdict {
    fn one<F: Form>(label: &str, x: &FormSet<F>) -> Verdict {
        let total = formscheme::forms::space_size(x.field().q(), x.m());
        if total / (x.len() as u128) > 1 << 16 {
            return Ok(());
        }
        suites::macwilliams_of(label, x, DEFAULT_CAP)?;
        if total <= 1 << 12 {
            let ann = annihilator(x, DEFAULT_CAP).map_err(|e| e.to_string())?;
            let mut brute = brute_annihilator(x);
            brute.sort_by_key(|b| b.index());
            ensure(ann.members() == brute.as_slice(), || format!("{label}: annihilator differs from a full scan"))?;
        }
        Ok(())
    }
    let mut n = 0;
    for (label, x) in grid_sets(1 << 16) {
        match &x {
            ConstructedSet::Sym(y, _) => one(&label, y)?,
            ConstructedSet::QuadOddOdd(y, _) | ConstructedSet::Elliptic(y, _) => one(&label, y)?,
            ConstructedSet::QuadEvenEven(..) => continue,
        }
        n += 1;
        tick();
    }
    ensure(n > 20, || format!("only {n} additive sets checked"))
}

fn sporadic() -> Verdict {
    suites::sporadic()?;
    let x = formscheme::codesets::sporadic_2code();
    let f = x.field().clone();
    let pts = points(&f, 3);
    let ms = x.members();
    for (k, a) in ms.iter().enumerate() {
        let class = classify_sym(&f, a, &pts);
        if !a.is_zero() {
            ensure(class == OrbitIndex::Even(2, -1), || format!("member {k} is in class {class}"))?;
        }
        for b in &ms[k + 1..] {
            ensure(classify_sym(&f, &a.sub(b), &pts).rank() >= 2, || "two members at rank distance 1".into())?;
        }
    }
    Ok(())
}

fn coset_enumerators() -> Verdict {
    for (m, q) in [(2usize, 2u64), (3, 2), (2, 3), (2, 4)] {
        let f = field(q);
        let pts = points(&f, m);
        let length = (q as usize).pow(m as u32) - 1;
        for a in enumerate_forms::<QuadForm>(&f, m, DEFAULT_CAP).unwrap() {
            tick();
            let want = omega(classify_quad(&f, &a, &pts), m, q).map_err(|e| e.to_string())?;
            let brute = enumerator_of(length, &affine_census(&f, m, std::slice::from_ref(&a)));
            ensure(brute == want, || format!("coset of {:?} at m={m}, q={q}", a.packed()))?;
            let lib = coset_enum_brute(&a, DEFAULT_CAP).map_err(|e| e.to_string())?;
            ensure(lib == want, || format!("library coset census of {:?} at m={m}, q={q}", a.packed()))?;
        }
    }
    for q in [2, 3, 4, 5] {
        for m in 1..=6 {
            tick();
            suites::omega_mass(m, q)?;
        }
    }
    Ok(())
}

fn headline() -> Verdict {
    let y = quad_dcode_odd_odd(5, 5, 2, DEFAULT_CAP).unwrap();
    let code = ClassicalCode::new(y.clone()).map_err(|e| e.to_string())?;
    ensure(code.length() == 31, || format!("length {}", code.length()))?;
    ensure(code.size() == BigInt::from(1 << 11), || format!("size {}", code.size()))?;
    let theory = dist_enum_theory(&y, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let brute = dist_enum_brute(&code, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let census = enumerator_of(31, &affine_census(y.field(), 5, y.members()));
    ensure(brute == theory && census == theory, || "enumerators differ".into())?;
    let designed = designed_distance(5, 2, 2).map_err(|e| e.to_string())?;
    ensure(designed == 11, || format!("designed distance {designed}"))?;
    ensure(census.min_weight() == Some(11), || format!("minimum distance {:?}", census.min_weight()))
}

fn guards() -> Verdict {
    let f = field(2);
    let rank1 = QuadForm::canonical(f.clone(), 3, OrbitIndex::Odd(1)).unwrap();
    let y = FormSet::new(f.clone(), 3, vec![QuadForm::zero(f.clone(), 3), rank1]).unwrap();
    ensure(matches!(ClassicalCode::new(y.clone()), Err(Error::DegenerateY)), || "rank-1 Y accepted".into())?;
    ensure(matches!(dist_enum_theory(&y, DEFAULT_CAP), Err(Error::DegenerateY)), || "rank-1 Y enumerated".into())?;

    let bad = OrbitIndex::Even(0, -1);
    for m in 0..=4 {
        ensure(!bad.is_admissible(m), || "Even(0,-1) admissible".into())?;
        ensure(matches!(bad.check_admissible(m), Err(Error::InadmissibleIndex { .. })), || "Even(0,-1) passed".into())?;
    }
    ensure(omega(bad, 3, 2).is_err(), || "ω for Even(0,-1)".into())?;
    ensure(QuadForm::canonical(f.clone(), 3, bad).is_err(), || "canonical form for Even(0,-1)".into())?;
    ensure(!OrbitIndex::all(4).contains(&bad), || "Even(0,-1) listed".into())?;

    for (kind, m, q, d) in [(FormKind::Symmetric, 3, 2, 2), (FormKind::Symmetric, 4, 3, 2), (FormKind::Quadratic, 4, 3, 2)] {
        ensure(
            matches!(size_bound(kind, m, q, d, BoundVariant::General), Err(Error::UnsupportedCase(_))),
            || format!("{kind} bound with m={m}, q={q}, d={d} was not refused"),
        )?;
        ensure(size_bound(kind, m, q, d, BoundVariant::Additive).is_ok(), || "additive bound refused".into())?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("orbit census", orbit_census),
        ("eigenvalue oracle equivalence", oracle_equivalence),
        ("algebraic identities", algebraic_identities),
        ("construction attainment", attainment),
        ("distribution formulas", distribution_formulas),
        ("MacWilliams identity", macwilliams),
        ("sporadic 2-code", sporadic),
        ("coset enumerators", coset_enumerators),
        ("headline [31, 2^11, 11] code", headline),
        ("guards", guards),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        CASES.store(0, Ordering::Relaxed);
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let cases = match CASES.load(Ordering::Relaxed) {
            0 => String::new(),
            n => format!("{n} cases, "),
        };
        match verdict {
            Ok(()) => println!("PASS  criterion {:>2}  {name} ({cases}{secs:.1} s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}  {name} ({cases}{secs:.1} s): {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
