//! Self-checks over parameter grids, shared by `formscheme verify` and the
//! acceptance tests. Each check either passes or reports its first
//! counterexample.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codesets::{
    abc_transform_check, classify_cost, design_strength, dual_dist, is_d_code, is_elliptic_code,
    is_t_design, macwilliams_check, size_bound, sporadic_2code, theoretical_inner_dist, BoundVariant,
    DistCase, FormSet, Theoretical,
};
use crate::construct::{
    coeff_pairing_check, elliptic_dcode, quad_dcode_even_even, quad_dcode_odd_odd, sym_dcode, tower_for,
};
use crate::error::{Error, Result};
use crate::forms::{census, enumerate_forms, space_size, Form, FormKind, OrbitIndex, QuadForm, SymForm};
use crate::gf::Field;
use crate::qnum::{f_matrix, f_num, qbinom2};
use crate::rmcodes::{coset_enum_brute, designed_distance, dist_enum_brute, dist_enum_theory, min_distance, omega,
    ClassicalCode};
use crate::scheme::{
    alpha_const, beta_const, eig_tables, oracle_tables, q_number, valency, valency_table,
};

/// Outcome of a check: `Err` carries a description of what went wrong.
pub type Verdict = std::result::Result<(), String>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub max_q: u64,
    pub max_m: usize,
    pub cap: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Qnum,
    Scheme,
    Codesets,
    Construct,
    Rmcodes,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["qnum", "scheme", "codesets", "construct", "rmcodes", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qnum => "qnum",
            Suite::Scheme => "scheme",
            Suite::Codesets => "codesets",
            Suite::Construct => "construct",
            Suite::Rmcodes => "rmcodes",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "qnum" => Suite::Qnum,
            "scheme" => Suite::Scheme,
            "codesets" => Suite::Codesets,
            "construct" => Suite::Construct,
            "rmcodes" => Suite::Rmcodes,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}; expected one of {:?}", Suite::NAMES))),
        })
    }
}

/// Grid limits for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_q: u64,
    pub max_m: usize,
    pub cap: u64,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_q: 4, max_m: 4, cap: crate::DEFAULT_CAP, seed: 0 }
    }
}

impl Limits {
    fn qs(&self) -> Vec<u64> {
        [2u64, 3, 4, 5].into_iter().filter(|&q| q <= self.max_q).collect()
    }

    /// (m, q) pairs with `1 <= m <= max_m` whose form spaces fit `budget`.
    fn grid(&self, budget: u128) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        for q in self.qs() {
            for m in 1..=self.max_m {
                if space_size(q as u32, m) <= budget {
                    out.push((m, q));
                }
            }
        }
        out
    }
}

pub fn run(suite: Suite, limits: Limits) -> Report {
    let mut checks = Vec::new();
    let suites = match suite {
        Suite::All => vec![Suite::Qnum, Suite::Scheme, Suite::Codesets, Suite::Construct, Suite::Rmcodes],
        s => vec![s],
    };
    for s in suites {
        for (name, check) in checks_for(s, limits) {
            let start = Instant::now();
            let verdict = check();
            checks.push(CheckResult {
                suite: s.name().into(),
                name: name.into(),
                pass: verdict.is_ok(),
                detail: verdict.err(),
                millis: start.elapsed().as_millis(),
            });
        }
    }
    Report {
        suite: suite.name().into(),
        seed: limits.seed,
        max_q: limits.max_q,
        max_m: limits.max_m,
        cap: limits.cap,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

type Check = Box<dyn Fn() -> Verdict>;

fn checks_for(suite: Suite, l: Limits) -> Vec<(&'static str, Check)> {
    let enum_budget = (l.cap as u128).min(1 << 16);
    match suite {
        Suite::Qnum => vec![
            ("pascal", Box::new(move || each(l.qs(), |q| pascal(12, q)))),
            ("transform", Box::new(move || each(pairs(2 * l.max_m, &l.qs()), |(m, q)| f_transform(m, q)))),
            ("orthogonality", Box::new(move || each(pairs(2 * l.max_m, &l.qs()), |(m, q)| f_orthogonality(m, q)))),
            ("cross-degree", Box::new(move || each(pairs(2 * l.max_m, &l.qs()), |(m, q)| f_cross_degree(m, q)))),
        ],
        Suite::Scheme => vec![
            ("valencies", Box::new(move || each(pairs(l.max_m, &l.qs()), |(m, q)| valency_sums(m, q)))),
            ("orbit-census", Box::new(move || each(l.grid(enum_budget), |(m, q)| orbit_census(m, q, l.cap)))),
            ("oracle", Box::new(move || each(l.grid(enum_budget), |(m, q)| oracle_equivalence(m, q, l.cap)))),
            ("inverse-pair", Box::new(move || each(pairs(l.max_m, &l.qs()), |(m, q)| inverse_pair(m, q)))),
            ("recurrences", Box::new(move || each(pairs(l.max_m, &l.qs()), |(m, q)| q_recurrences(m, q)))),
            ("grouped-sums", Box::new(move || each(pairs(l.max_m, &l.qs()), |(m, q)| q_grouped_sums(m, q)))),
            ("row-sums", Box::new(move || each(pairs(l.max_m, &l.qs()), |(m, q)| q_row_sums(m, q)))),
        ],
        Suite::Codesets => vec![
            ("sporadic", Box::new(sporadic)),
            ("macwilliams", Box::new(move || macwilliams_grid(l))),
            ("random-subsets", Box::new(move || random_subsets(l))),
        ],
        Suite::Construct => vec![
            ("attainment", Box::new(move || attainment(l))),
            ("distributions", Box::new(move || distributions(l))),
            ("coeff-pairing", Box::new(move || {
                each(pairs(l.max_m, &l.qs()), |(m, q)| {
                    let t = tower_for(q, m).map_err(err)?;
                    ensure(coeff_pairing_check(&t, l.cap.min(1 << 16), l.seed).map_err(err)?, || {
                        format!("coefficient pairing disagrees with the matrix pairing at m={m}, q={q}")
                    })
                })
            })),
        ],
        Suite::Rmcodes => vec![
            ("coset-enumerators", Box::new(move || {
                each(l.grid(1 << 12), |(m, q)| coset_enumerators(m, q, l.cap))
            })),
            ("omega-mass", Box::new(move || each(pairs(l.max_m.max(1), &l.qs()), |(m, q)| omega_mass(m, q)))),
            ("distance-enumerators", Box::new(move || rm_distance_enumerators(l))),
        ],
        Suite::All => unreachable!("expanded by run"),
    }
}

fn pairs(max_m: usize, qs: &[u64]) -> Vec<(usize, u64)> {
    qs.iter().flat_map(|&q| (1..=max_m).map(move |m| (m, q))).collect()
}

fn each<T: Copy>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> Verdict) -> Verdict {
    items.into_iter().try_for_each(f)
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn pow(q: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

/// Both Pascal-type recurrences for `[n brack k]` with `1 <= n <= nmax`.
pub fn pascal(nmax: i64, q: u64) -> Verdict {
    for n in 1..=nmax {
        for k in 0..=n {
            let v = qbinom2(n, k, q);
            let a = pow(q, 2 * k as u64) * qbinom2(n - 1, k, q) + qbinom2(n - 1, k - 1, q);
            let b = qbinom2(n - 1, k, q) + pow(q, 2 * (n - k) as u64) * qbinom2(n - 1, k - 1, q);
            ensure(v == a && v == b, || format!("Pascal fails at n={n}, k={k}, q={q}: {v} vs {a}, {b}"))?;
        }
    }
    Ok(())
}

/// `Σ_{r≤j} [n−r brack n−j] F_r(s) = [n−s brack j] c^j`.
pub fn f_transform(m: usize, q: u64) -> Verdict {
    if m < 2 {
        return Ok(());
    }
    let (mi, n) = (m as i64, m as i64 / 2);
    let c = pow(q, (mi * (mi - 1) / (2 * n)) as u64);
    for s in 0..=n {
        for j in 0..=n {
            let lhs: BigInt = (0..=j).map(|r| qbinom2(n - r, n - j, q) * f_num(mi, r, s, q)).sum();
            let rhs = qbinom2(n - s, j, q) * Pow::pow(&c, j as u64);
            ensure(lhs == rhs, || format!("transform fails at m={m}, q={q}, s={s}, j={j}"))?;
        }
    }
    Ok(())
}

pub fn f_orthogonality(m: usize, q: u64) -> Verdict {
    f_matrix(m as i64, q).map(|_| ()).map_err(err)
}

/// `F^(m+1)_r(s) = q^{2r} F^(m−1)_r(s−1) − q^{2r−2} F^(m−1)_{r−1}(s−1)` for
/// `s >= 1`, and `F^(m+1)_s(r) = q^{2s} F^(m)_s(r) + (q^m − q^{2s−2}) F^(m)_{s−1}(r)`
/// for `r <= ⌊m/2⌋`. The second fails at `r = (m+1)/2` for odd m, where the
/// right side vanishes by convention.
pub fn f_cross_degree(m: usize, q: u64) -> Verdict {
    let mi = m as i64;
    let top = (mi + 1) / 2;
    for r in 0..=top {
        for s in 1..=top {
            let lhs = f_num(mi + 1, r, s, q) * pow(q, 2);
            let rhs = pow(q, 2 * r as u64 + 2) * f_num(mi - 1, r, s - 1, q)
                - if r >= 1 { pow(q, 2 * r as u64) * f_num(mi - 1, r - 1, s - 1, q) } else { BigInt::zero() };
            ensure(lhs == rhs, || format!("first cross-degree identity fails at m={m}, q={q}, r={r}, s={s}"))?;
        }
    }
    for s in 1..=top {
        for r in 0..=mi / 2 {
            let lhs = f_num(mi + 1, s, r, q) * pow(q, 2);
            let rhs = pow(q, 2 * s as u64 + 2) * f_num(mi, s, r, q)
                + (pow(q, m as u64 + 2) - pow(q, 2 * s as u64)) * f_num(mi, s - 1, r, q);
            ensure(lhs == rhs, || format!("second cross-degree identity fails at m={m}, q={q}, s={s}, r={r}"))?;
        }
    }
    Ok(())
}

pub fn valency_sums(m: usize, q: u64) -> Verdict {
    let t = valency_table(m, q);
    let total = pow(q, (m * (m + 1) / 2) as u64);
    ensure(t.v.iter().sum::<BigInt>() == total && t.mu.iter().sum::<BigInt>() == total, || {
        format!("valencies do not sum to q^(m(m+1)/2) at m={m}, q={q}")
    })?;
    ensure(t.v.iter().chain(&t.mu).all(|x| *x > BigInt::zero()), || {
        format!("nonpositive valency at m={m}, q={q}")
    })
}

/// Every orbit is nonempty and has the closed-form size, in both spaces.
pub fn orbit_census(m: usize, q: u64, cap: u64) -> Verdict {
    let field = Arc::new(Field::from_order(q).map_err(err)?);
    let want = OrbitIndex::all(m);
    for kind in [FormKind::Quadratic, FormKind::Symmetric] {
        let counts = match kind {
            FormKind::Quadratic => census::<QuadForm>(&field, m, cap),
            FormKind::Symmetric => census::<SymForm>(&field, m, cap),
        }
        .map_err(err)?;
        ensure(counts.len() == want.len() && counts.iter().all(|&c| c > 0), || {
            format!("{kind} census at m={m}, q={q} has classes {counts:?}")
        })?;
        for (i, &c) in want.iter().zip(&counts) {
            let v = valency(kind, *i, m, q).map_err(err)?;
            ensure(v == BigInt::from(c), || format!("{kind} class {i} at m={m}, q={q}: census {c}, formula {v}"))?;
        }
    }
    Ok(())
}

/// Closed-form P and Q tables equal the character-sum oracles entry by entry.
pub fn oracle_equivalence(m: usize, q: u64, cap: u64) -> Verdict {
    let o = oracle_tables(m, q, cap).map_err(err)?;
    let t = eig_tables(m, q).map_err(err)?;
    let index = OrbitIndex::all(m);
    for (a, ia) in index.iter().enumerate() {
        for (b, ib) in index.iter().enumerate() {
            ensure(o.q[a][b] == t.quad_q.rows[a][b], || {
                format!("Q_{ia}({ib}) at m={m}, q={q}: oracle {}, formula {}", o.q[a][b], t.quad_q.rows[a][b])
            })?;
            ensure(o.p[a][b] == t.quad_p.rows[a][b], || {
                format!("P_{ia}({ib}) at m={m}, q={q}: oracle {}, formula {}", o.p[a][b], t.quad_p.rows[a][b])
            })?;
        }
    }
    Ok(())
}

pub fn inverse_pair(m: usize, q: u64) -> Verdict {
    eig_tables(m, q).map(|_| ()).map_err(err)
}

/// `Q_r(i)` for a bare rank r: both types summed when r is even, zero when
/// nothing of rank r exists.
fn q_rank(r: i64, i: OrbitIndex, m: usize, q: u64) -> BigInt {
    if r < 0 || r as usize > m {
        return BigInt::zero();
    }
    let r = r as usize;
    if r % 2 == 1 {
        q_number(OrbitIndex::Odd(r), i, m, q)
    } else {
        q_number(OrbitIndex::Even(r, 1), i, m, q) + q_number(OrbitIndex::Even(r, -1), i, m, q)
    }
}

/// The two recurrences linking `Q^(m)` with `Q^(m−1)`.
pub fn q_recurrences(m: usize, q: u64) -> Verdict {
    if m < 2 {
        return Ok(());
    }
    let mi = m as i64;
    for k in 1..=mi {
        for s in 0..=(mi - 1) / 2 {
            let i = OrbitIndex::Odd(2 * s as usize + 1);
            let lhs = q_rank(k, i, m, q);
            let rhs = q_rank(k, OrbitIndex::Even(2 * s as usize, 1), m, q)
                - pow(q, (mi - s) as u64) * q_rank(k - 1, OrbitIndex::Even(2 * s as usize, 1), m - 1, q);
            ensure(lhs == rhs, || format!("first recurrence fails at m={m}, q={q}, k={k}, s={s}"))?;
        }
        for s in 1..=mi / 2 {
            for tau in [1i8, -1] {
                let lhs = q_rank(k, OrbitIndex::Even(2 * s as usize, tau), m, q);
                let prev = OrbitIndex::Odd(2 * s as usize - 1);
                let rhs = q_rank(k, prev, m, q)
                    + BigInt::from(tau) * pow(q, (mi - s) as u64) * q_rank(k - 1, prev, m - 1, q);
                ensure(lhs == rhs, || format!("second recurrence fails at m={m}, q={q}, k={k}, s={s}, τ={tau}"))?;
            }
        }
    }
    Ok(())
}

/// Grouped sums of Q-numbers over a rank, and the split
/// `α_{−1} Q_{2r,1}(i) − α_1 Q_{2r,−1}(i) = β_r F^(m)_r(s)`.
pub fn q_grouped_sums(m: usize, q: u64) -> Verdict {
    let mi = m as i64;
    let fr = |mm: i64, r: i64, s: i64| BigRational::from_integer(f_num(mm, r, s, q));
    let at = |k: OrbitIndex, i: OrbitIndex| BigRational::from_integer(q_number(k, i, m, q));
    for i in OrbitIndex::all(m).into_iter().filter(|i| !i.is_zero()) {
        let s = i.half() as i64;
        for r in 0..=mi / 2 {
            let (plus, minus) = (OrbitIndex::Even(2 * r as usize, 1), OrbitIndex::Even(2 * r as usize, -1));
            let split = alpha_const(-1, q) * at(plus, i) - alpha_const(1, q) * at(minus, i);
            ensure(split == beta_const(r as usize, q) * fr(mi, r, s), || {
                format!("α/β split fails at m={m}, q={q}, r={r}, i={i}")
            })?;
            let even = q_rank(2 * r, i, m, q);
            match i {
                OrbitIndex::Odd(_) => {
                    ensure(even.clone() + q_rank(2 * r + 1, i, m, q) == BigInt::zero(), || {
                        format!("Q_{{2r}}+Q_{{2r+1}} ≠ 0 at m={m}, q={q}, r={r}, i={i}")
                    })?;
                }
                OrbitIndex::Even(_, tau) => {
                    let want = BigInt::from(tau) * pow(q, (mi - s) as u64) * f_num(mi, r, s, q);
                    ensure(even.clone() + q_rank(2 * r + 1, i, m, q) == want, || {
                        format!("Q_{{2r}}+Q_{{2r+1}} wrong at m={m}, q={q}, r={r}, i={i}")
                    })?;
                }
            }
            // F^(m+1)_r(s') = Q_{2r} + Q_{2r−1} at i = 2s'−1 or (2s', τ).
            if r >= 1 {
                let s1 = match i {
                    OrbitIndex::Odd(rank) => (rank as i64 + 1) / 2,
                    OrbitIndex::Even(..) => s,
                };
                ensure(even + q_rank(2 * r - 1, i, m, q) == f_num(mi + 1, r, s1, q), || {
                    format!("Q_{{2r}}+Q_{{2r−1}} ≠ F^(m+1) at m={m}, q={q}, r={r}, i={i}")
                })?;
            }
        }
    }
    Ok(())
}

/// `Σ_i Q_k(i) v_i = q^{m(m+1)/2}` for k = 0 and 0 otherwise.
pub fn q_row_sums(m: usize, q: u64) -> Verdict {
    let t = valency_table(m, q);
    let total = pow(q, (m * (m + 1) / 2) as u64);
    for k in OrbitIndex::all(m) {
        let sum: BigInt = t.index.iter().zip(&t.v).map(|(&i, v)| q_number(k, i, m, q) * v).sum();
        let want = if k.is_zero() { total.clone() } else { BigInt::zero() };
        ensure(sum == want, || format!("row sum for k={k} at m={m}, q={q} is {sum}"))?;
    }
    Ok(())
}

/// The 22-element 2-code in 𝒮(3,2) beats the additive bound of 16.
pub fn sporadic() -> Verdict {
    let x = sporadic_2code();
    ensure(x.len() == 22, || format!("fixture has {} members", x.len()))?;
    let d = x.inner_dist(1 << 16).map_err(err)?;
    ensure(is_d_code(&d, 2), || "fixture is not a 2-code".into())?;
    let bound = size_bound(FormKind::Symmetric, 3, 2, 2, BoundVariant::Additive).map_err(err)?;
    ensure(BigInt::from(22) > bound, || format!("additive bound {bound} is not exceeded"))?;
    ensure(!x.check_additive(), || "fixture is unexpectedly additive".into())?;
    dual_dist(FormKind::Symmetric, 2, &d).map(|_| ()).map_err(err)
}

/// Maximal constructed sets on the grid, each with a label. Sets whose
/// enumeration cost exceeds `budget` are skipped.
pub fn constructions(l: Limits, budget: u128) -> Vec<(String, ConstructedSet)> {
    let mut out = Vec::new();
    for q in l.qs() {
        for m in 1..=l.max_m.min(6) {
            for d in 1..=m {
                let bound = |kind, v| size_bound(kind, m, q, d, v).ok();
                if (m - d) % 2 == 0 {
                    if let Some(b) = bound(FormKind::Symmetric, BoundVariant::Additive) {
                        if b <= BigInt::from(budget) {
                            if let Ok(x) = sym_dcode(m, d, q, l.cap) {
                                out.push((format!("sym({m},{d},{q})"), ConstructedSet::Sym(x, d)));
                            }
                        }
                    }
                }
                let qb = bound(FormKind::Quadratic, BoundVariant::General);
                let small = |b: &Option<BigInt>| b.as_ref().is_some_and(|b| *b <= BigInt::from(budget));
                if m % 2 == 1 && d % 2 == 1 && small(&qb) {
                    if let Ok(x) = quad_dcode_odd_odd(m, d, q, l.cap) {
                        out.push((format!("quad-oo({m},{d},{q})"), ConstructedSet::QuadOddOdd(x, d)));
                    }
                }
                if m % 2 == 0 && d % 2 == 0 && q % 2 == 0 && small(&qb) {
                    if let Ok(x) = quad_dcode_even_even(m, d, q, l.cap) {
                        out.push((format!("quad-ee({m},{d},{q})"), ConstructedSet::QuadEvenEven(x, d)));
                    }
                }
                if m % 2 == 0 && d % 2 == 0 && small(&bound(FormKind::Quadratic, BoundVariant::Elliptic)) {
                    if let Ok(x) = elliptic_dcode(m, d / 2, q, l.cap) {
                        out.push((format!("elliptic({m},{d},{q})"), ConstructedSet::Elliptic(x, d)));
                    }
                }
            }
        }
    }
    out
}

/// A constructed set together with its minimum distance d.
#[derive(Clone, Debug)]
pub enum ConstructedSet {
    Sym(FormSet<SymForm>, usize),
    QuadOddOdd(FormSet<QuadForm>, usize),
    QuadEvenEven(FormSet<QuadForm>, usize),
    Elliptic(FormSet<QuadForm>, usize),
}

impl ConstructedSet {
    /// Classification work for the inner distribution, mirroring
    /// [`FormSet::inner_dist`].
    pub fn cost(&self) -> u128 {
        fn of<F: Form>(x: &FormSet<F>) -> u128 {
            let n = x.len() as u128;
            let pairs = if x.is_additive() { n } else { n * n.saturating_sub(1) / 2 };
            classify_cost::<F>(x.q(), x.m()) * pairs
        }
        match self {
            ConstructedSet::Sym(x, _) => of(x),
            ConstructedSet::QuadOddOdd(x, _) | ConstructedSet::QuadEvenEven(x, _) | ConstructedSet::Elliptic(x, _) => {
                of(x)
            }
        }
    }
}

/// Size equals the bound, the d-code (or elliptic) property holds, and
/// maximal odd-d and elliptic codes are designs of the forced strength.
pub fn attainment_of(label: &str, x: &ConstructedSet, cap: u64) -> Verdict {
    let e = |e: Error| format!("{label}: {e}");
    let (kind, m, q, len, d, dist, variant, design) = match x {
        ConstructedSet::Sym(x, d) => (
            FormKind::Symmetric, x.m(), x.q(), x.len(), *d, x.inner_dist(cap).map_err(e)?,
            BoundVariant::Additive, (d % 2 == 1).then(|| design_strength(x.m(), *d, false)),
        ),
        ConstructedSet::QuadOddOdd(x, d) => (
            FormKind::Quadratic, x.m(), x.q(), x.len(), *d, x.inner_dist(cap).map_err(e)?,
            BoundVariant::General, Some(design_strength(x.m(), *d, false)),
        ),
        ConstructedSet::QuadEvenEven(x, d) => (
            FormKind::Quadratic, x.m(), x.q(), x.len(), *d, x.inner_dist(cap).map_err(e)?,
            BoundVariant::General, None,
        ),
        ConstructedSet::Elliptic(x, d) => (
            FormKind::Quadratic, x.m(), x.q(), x.len(), *d, x.inner_dist(cap).map_err(e)?,
            BoundVariant::Elliptic, Some(design_strength(x.m(), *d, true)),
        ),
    };
    let bound = size_bound(kind, m, q, d, variant).map_err(e)?;
    ensure(BigInt::from(len) == bound, || format!("{label}: size {len}, bound {bound}"))?;
    let coded = match x {
        ConstructedSet::Elliptic(..) => is_elliptic_code(&dist, d),
        _ => is_d_code(&dist, d),
    };
    ensure(coded, || format!("{label}: not a {d}-code"))?;
    if let Some(t) = design {
        let dual = dual_dist(kind, q, &dist).map_err(e)?;
        ensure(is_t_design(&dual, t), || format!("{label}: not a {t}-design"))?;
    }
    Ok(())
}

fn attainment(l: Limits) -> Verdict {
    for (label, x) in constructions(l, 1 << 16) {
        if x.cost() <= l.cap as u128 {
            attainment_of(&label, &x, l.cap)?;
        }
    }
    Ok(())
}

/// Census inner distribution equals the closed form.
pub fn distribution_of(label: &str, x: &ConstructedSet, cap: u64) -> Verdict {
    let (y, case, d) = match x {
        ConstructedSet::QuadOddOdd(y, d) => (y, DistCase::QuadOddMOddD, *d),
        ConstructedSet::Elliptic(y, d) => (y, DistCase::Elliptic, *d),
        ConstructedSet::QuadEvenEven(y, d) => (y, DistCase::QuadEvenQEvenDPartial, *d),
        ConstructedSet::Sym(..) => return Ok(()),
    };
    let e = |e: Error| format!("{label}: {e}");
    let census = y.inner_dist(cap).map_err(e)?;
    match theoretical_inner_dist(case, y.m(), y.q(), d).map_err(e)? {
        Theoretical::Full(t) => ensure(t == census, || format!("{label}: census differs from the closed form")),
        Theoretical::Aggregates { b } => {
            for (s, want) in b.iter().enumerate() {
                let mut got = census.get(OrbitIndex::Even(2 * s, 1));
                if s > 0 {
                    got += census.get(OrbitIndex::Even(2 * s, -1));
                }
                if 2 * s < y.m() {
                    got += census.get(OrbitIndex::Odd(2 * s + 1));
                }
                ensure(got == *want, || format!("{label}: B_{s} is {got}, expected {want}"))?;
            }
            Ok(())
        }
    }
}

fn distributions(l: Limits) -> Verdict {
    for (label, x) in constructions(l, 1 << 16) {
        if x.cost() <= l.cap as u128 {
            distribution_of(&label, &x, l.cap)?;
        }
    }
    Ok(())
}

/// MacWilliams identity for one additive set.
pub fn macwilliams_of<F: Form>(label: &str, x: &FormSet<F>, cap: u64) -> Verdict {
    ensure(macwilliams_check(x, cap).map_err(|e| format!("{label}: {e}"))?, || {
        format!("{label}: |X|·a° differs from the dual distribution")
    })
}

fn macwilliams_grid(l: Limits) -> Verdict {
    for (label, x) in constructions(l, 1 << 12) {
        if x.cost() > l.cap as u128 {
            continue;
        }
        match &x {
            ConstructedSet::Sym(y, _) => macwilliams_of(&label, y, l.cap)?,
            ConstructedSet::QuadOddOdd(y, _) | ConstructedSet::Elliptic(y, _) => macwilliams_of(&label, y, l.cap)?,
            ConstructedSet::QuadEvenEven(..) => {}
        }
    }
    Ok(())
}

/// Seeded random subsets have nonnegative dual distributions and satisfy the
/// aggregate transforms.
fn random_subsets(l: Limits) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(l.seed);
    for (m, q) in l.grid(1 << 12) {
        let field = Arc::new(Field::from_order(q).map_err(err)?);
        let total = space_size(field.q(), m) as usize;
        for _ in 0..4 {
            let size = 1 + rand::Rng::gen_range(&mut rng, 0..total.min(40));
            let picks = sample(&mut rng, total, size);
            let quad: Vec<QuadForm> = picks.iter().map(|i| QuadForm::from_index(field.clone(), m, i as u64)).collect();
            let sym: Vec<SymForm> = picks.iter().map(|i| SymForm::from_index(field.clone(), m, i as u64)).collect();
            let x = FormSet::new(field.clone(), m, quad).map_err(err)?;
            let y = FormSet::new(field.clone(), m, sym).map_err(err)?;
            for (kind, d) in [
                (FormKind::Quadratic, x.inner_dist(l.cap).map_err(err)?),
                (FormKind::Symmetric, y.inner_dist(l.cap).map_err(err)?),
            ] {
                dual_dist(kind, q, &d).map_err(|e| format!("{kind} subset at m={m}, q={q}: {e}"))?;
                let abc = abc_transform_check(kind, q, &d).map_err(err)?;
                ensure(abc.ok, || format!("{kind} subset at m={m}, q={q}: {:?}", abc.diffs))?;
            }
        }
    }
    Ok(())
}

/// Every coset `Q + R_q(1,m)*` has the tabulated enumerator.
pub fn coset_enumerators(m: usize, q: u64, cap: u64) -> Verdict {
    let field = Arc::new(Field::from_order(q).map_err(err)?);
    for form in enumerate_forms::<QuadForm>(&field, m, cap).map_err(err)? {
        let i = form.classify().map_err(err)?;
        let brute = coset_enum_brute(&form, cap).map_err(err)?;
        ensure(brute == omega(i, m, q).map_err(err)?, || {
            format!("coset of {:?} (class {i}) at m={m}, q={q} differs from ω", form.packed())
        })?;
    }
    Ok(())
}

pub fn omega_mass(m: usize, q: u64) -> Verdict {
    let want = BigRational::from_integer(pow(q, m as u64 + 1));
    for i in OrbitIndex::all(m) {
        let e = omega(i, m, q).map_err(err)?;
        ensure(e.total() == want && e.is_integral() && e.is_nonnegative(), || {
            format!("ω_{i} at m={m}, q={q} has mass {}", e.total())
        })?;
    }
    Ok(())
}

/// Theory and census agree on C(Y), and its minimum distance is the designed
/// one. At m = 2, q = 2 the designed distance is 0: the elliptic form is
/// constant on V* there, so its coset is R_2(1,2)* again and only the
/// enumerator identity is checked.
pub fn classical_code_of(label: &str, y: &FormSet<QuadForm>, delta: usize, cap: u64) -> Verdict {
    let e = |e: Error| format!("{label}: {e}");
    let code = ClassicalCode::new(y.clone()).map_err(e)?;
    let brute = dist_enum_brute(&code, cap).map_err(e)?;
    ensure(brute == dist_enum_theory(y, cap).map_err(e)?, || format!("{label}: theory differs from census"))?;
    if 2 * delta <= y.m() && delta >= 1 && (y.m(), y.q()) != (2, 2) {
        let want = designed_distance(y.m(), y.q(), delta).map_err(e)?;
        let got = min_distance(&code, cap).map_err(e)? as u64;
        ensure(got == want, || format!("{label}: minimum distance {got}, designed {want}"))?;
    }
    Ok(())
}

fn rm_distance_enumerators(l: Limits) -> Verdict {
    for (label, x) in constructions(l, 1 << 12) {
        let (y, d) = match &x {
            ConstructedSet::QuadOddOdd(y, d) | ConstructedSet::Elliptic(y, d) => (y, *d),
            _ => continue,
        };
        let words = (y.q() as u128).pow(y.m() as u32 + 1) * y.len() as u128 * (y.q() as u128).pow(y.m() as u32);
        if words > l.cap as u128 || (y.q() == 2 && d == 1) {
            continue;
        }
        classical_code_of(&label, y, d / 2, l.cap)?;
    }
    Ok(())
}
