use formscheme::error::DEFAULT_CAP;
use formscheme::forms::{FormKind, OrbitIndex};
use formscheme::scheme::*;
use num_bigint::BigInt;

#[test]
fn oracle_matches_closed_form_small() {
    for (m, q) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3), (2, 4), (2, 5)] {
        let o = oracle_tables(m, q, DEFAULT_CAP).unwrap();
        let t = eig_tables(m, q).unwrap();
        assert_eq!(o.q, t.quad_q.rows, "Q m={m} q={q}");
        assert_eq!(o.p, t.quad_p.rows, "P m={m} q={q}");
        let vt = valency_table(m, q);
        let v: Vec<BigInt> = o.quad_census.iter().map(|&c| c.into()).collect();
        let mu: Vec<BigInt> = o.sym_census.iter().map(|&c| c.into()).collect();
        assert_eq!(v, vt.v);
        assert_eq!(mu, vt.mu);
    }
}

#[test]
fn spec_examples() {
    assert_eq!(valency(FormKind::Quadratic, OrbitIndex::Odd(1), 2, 2).unwrap(), 3.into());
    assert_eq!(q_number(OrbitIndex::Odd(1), OrbitIndex::Odd(1), 2, 2), BigInt::from(-1));
    assert_eq!(p_number(OrbitIndex::Odd(1), OrbitIndex::ZERO, 2, 2), 3.into());
}

#[test]
fn csv_and_json_shapes() {
    let t = eig_tables(3, 2).unwrap();
    let csv = t.quad_q.to_csv();
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.starts_with("index,0+,1,2+,2-,3\n0+,1,1,1,1,1"));
    let json = serde_json::to_string(&t.sym_p).unwrap();
    let back: EigTable = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t.sym_p);
}

#[test]
fn cyclotomic_reduction() {
    assert_eq!(reduce_cyclotomic(&[5, 2, 2]).unwrap(), BigInt::from(3));
    assert_eq!(reduce_cyclotomic(&[1, 3]).unwrap(), BigInt::from(-2));
    assert!(reduce_cyclotomic(&[1, 2, 3]).is_err());
}

mod props {
    use super::*;
    use num_traits::{One, Pow, Zero};
    use proptest::prelude::*;

    fn grid() -> impl Strategy<Value = (usize, u64)> {
        (1usize..=8, prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn tables_are_consistent((m, q) in grid()) {
            let t = eig_tables(m, q).unwrap();
            let vt = valency_table(m, q);
            let n = 3 * m / 2 + 1;
            let total: BigInt = Pow::pow(BigInt::from(q), (m * (m + 1) / 2) as u64);
            prop_assert_eq!(t.quad_q.rows.len(), n);
            prop_assert_eq!(vt.v.iter().sum::<BigInt>(), total.clone());
            prop_assert_eq!(vt.mu.iter().sum::<BigInt>(), total.clone());
            prop_assert!(vt.v.iter().chain(&vt.mu).all(|v| *v > BigInt::zero()));
            // Q row 0+ is all ones; Q column 0+ holds the dual valencies.
            prop_assert!(t.quad_q.rows[0].iter().all(|v| v.is_one()));
            for k in 0..n {
                prop_assert_eq!(&t.quad_q.rows[k][0], &vt.mu[k]);
                prop_assert_eq!(&t.quad_p.rows[k][0], &vt.v[k]);
                // Σ_i Q_k(i) v_i = |𝒬|·[k = 0+].
                let s: BigInt = (0..n).map(|i| &t.quad_q.rows[k][i] * &vt.v[i]).sum();
                prop_assert_eq!(s, if k == 0 { total.clone() } else { BigInt::zero() });
            }
            prop_assert_eq!(&t.sym_p.rows, &t.quad_q.rows);
            prop_assert_eq!(&t.sym_q.rows, &t.quad_p.rows);
            prop_assert!(check_inverse_pair(&t.sym_p.rows, &t.sym_q.rows, m, q).is_ok());
            // P_i(k)/v_i = Q_k(i)/μ_k.
            for i in 0..n {
                for k in 0..n {
                    prop_assert_eq!(&t.quad_p.rows[i][k] * &vt.mu[k], &t.quad_q.rows[k][i] * &vt.v[i]);
                }
            }
        }
    }
}
