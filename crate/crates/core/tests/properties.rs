mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_messages, brute_params, codeword};
use lrc_core::certify::{certify_locality, verify_repair_set};
use lrc_core::code::{LinearCode, DEFAULT_MAX_ENUM};
use lrc_core::constructions::{construct, line_budget_sufficient, ConstructionSpec, Family};
use lrc_core::field::{Elem, Extension, Field};
use lrc_core::geometry::pg_points;
use lrc_core::matrix_file::{parse_matrix, write_matrix};

const ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

#[test]
fn trace_is_additive_for_small_fields() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
        let f = Field::with_order(q).unwrap();
        let p = f.p();
        for a in f.elements() {
            for b in f.elements() {
                let lhs = f.trace_to_prime(f.add(a, b));
                assert_eq!(lhs, (f.trace_to_prime(a) + f.trace_to_prime(b)) % p, "q={q}");
            }
        }
    }
}

#[test]
fn additive_characters_are_orthogonal() {
    for q in ORDERS {
        let f = Field::with_order(q).unwrap();
        let p = f.p() as usize;
        for a in f.elements() {
            let mut counts = vec![0u64; p];
            for x in f.elements() {
                counts[f.trace_to_prime(f.mul(a, x)) as usize] += 1;
            }
            if a.is_zero() {
                assert_eq!(counts[0], q);
            } else {
                assert!(counts.iter().all(|&c| c == q / p as u64), "q={q} a={a} {counts:?}");
            }
        }
    }
}

#[test]
fn alpha_generates_the_multiplicative_group() {
    for q in ORDERS {
        let f = Field::with_order(q).unwrap();
        assert_eq!(f.order(f.alpha()), Some(q as u32 - 1));
    }
}

/// The trace-form code {(Tr(x d_i))_i : x in GF(q^m)} coincides with the
/// dot-product code whose columns are (Tr(b_j d_i))_j for a basis b_j.
#[test]
fn trace_form_matches_dot_product_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (q, m) in [(2u64, 3u32), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)] {
        let base = Field::with_order(q).unwrap();
        let ext = Extension::new(&base, m).unwrap();
        let big = ext.big();
        // 1, g, ..., g^{m-1} for a primitive g is a basis over GF(q).
        let g = big.alpha();
        let basis: Vec<Elem> = (0..m as u64).map(|j| big.pow(g, j)).collect();
        let mut ds: Vec<Elem> = big.nonzero().collect();
        ds.shuffle(&mut rng);
        ds.truncate(ds.len().min(12));

        let rows: Vec<Vec<Elem>> = basis
            .iter()
            .map(|&b| ds.iter().map(|&d| ext.trace_relative(big.mul(b, d))).collect())
            .collect();
        let code = LinearCode::from_rows(base.clone(), rows).unwrap();
        for c in all_messages(&base, m as usize) {
            let x = c
                .iter()
                .zip(&basis)
                .fold(Elem::ZERO, |acc, (&cj, &b)| big.add(acc, big.mul(ext.embed(cj), b)));
            let trace_word: Vec<Elem> = ds.iter().map(|&d| ext.trace_relative(big.mul(x, d))).collect();
            assert_eq!(code.encode(&c).unwrap(), trace_word, "q={q} m={m}");
        }
    }
}

fn small_field() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5])
}

/// Random m x n matrix with entries below q.
fn matrix() -> impl Strategy<Value = (u64, Vec<Vec<u32>>)> {
    (small_field(), 1usize..=4, 1usize..=9).prop_flat_map(|(q, m, n)| {
        (
            Just(q),
            prop::collection::vec(prop::collection::vec(0..q as u32, n), m),
        )
    })
}

fn to_code(q: u64, rows: &[Vec<u32>]) -> LinearCode {
    let f = Field::with_order(q).unwrap();
    let rows = rows.iter().map(|r| r.iter().map(|&v| Elem(v)).collect()).collect();
    LinearCode::from_rows(f, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analyzer_matches_brute_force((q, rows) in matrix()) {
        let code = to_code(q, &rows);
        let params = code.analyze(DEFAULT_MAX_ENUM).unwrap();
        prop_assert_eq!(params.triple(), brute_params(&code));
        let total: u64 = params.weight_distribution.values().sum();
        prop_assert_eq!(total, q.pow(params.k as u32));
        prop_assert_eq!(params.weight_distribution.get(&0), Some(&1));
        prop_assert_eq!(params.k, code.rank());
        prop_assert_eq!(code.min_distance(DEFAULT_MAX_ENUM).unwrap(), params.d);
    }

    #[test]
    fn weight_distribution_ignores_column_order((q, rows) in matrix(), seed in any::<u64>()) {
        let code = to_code(q, &rows);
        let mut order: Vec<usize> = (0..code.n()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let permuted: Vec<Vec<u32>> = rows.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
        let a = code.analyze(DEFAULT_MAX_ENUM).unwrap();
        let b = to_code(q, &permuted).analyze(DEFAULT_MAX_ENUM).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn codeword_weight_matches_encoding((q, rows) in matrix()) {
        let code = to_code(q, &rows);
        for x in all_messages(code.field(), code.m()) {
            let direct = codeword(&code, &x).iter().filter(|c| !c.is_zero()).count();
            prop_assert_eq!(code.codeword_weight(&x).unwrap(), direct);
            prop_assert_eq!(code.encode(&x).unwrap(), codeword(&code, &x));
        }
    }

    #[test]
    fn matrix_file_round_trips((q, rows) in matrix()) {
        let code = to_code(q, &rows);
        let back = parse_matrix(&write_matrix(&code)).unwrap();
        prop_assert_eq!(back.rows(), code.rows());
        prop_assert_eq!(back.field(), code.field());
    }

    #[test]
    fn distinct_point_codes_rank_and_certificates(q in small_field(), m in 2usize..=4, seed in any::<u64>()) {
        let f = Field::with_order(q).unwrap();
        let mut pts = pg_points(m, &f).unwrap().points().to_vec();
        pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        pts.truncate(pts.len().min(12));
        let rows: Vec<Vec<Elem>> = (0..m).map(|i| pts.iter().map(|p| p.coords()[i]).collect()).collect();
        let code = LinearCode::from_rows(f, rows).unwrap();
        let params = code.analyze(DEFAULT_MAX_ENUM).unwrap();
        prop_assert_eq!(params.k, code.rank());
        // Every point set containing the unit vectors spans.
        let units = (0..m).all(|i| pts.iter().any(|p| p.weight() == 1 && !p.coords()[i].is_zero()));
        if units {
            prop_assert_eq!(params.k, m);
        }

        let cert = certify_locality(&code, None, DEFAULT_MAX_ENUM).unwrap();
        for (&i, set) in &cert.repair_sets {
            prop_assert!(set.contains(&i));
            prop_assert!(verify_repair_set(&code, i, set, cert.delta, DEFAULT_MAX_ENUM).unwrap());
        }
    }
}

fn weight2_spec() -> impl Strategy<Value = ConstructionSpec> {
    (prop::sample::select(vec![(2u32, 1u32), (3, 1), (2, 2)]), 4usize..=5).prop_flat_map(|((p, e), m)| {
        let subset = prop::sample::subsequence((1..=m).collect::<Vec<_>>(), 2..=m.min(4));
        (Just((p, e, m)), prop::collection::vec(subset, 1..=2)).prop_map(|((p, e, m), sets)| ConstructionSpec {
            family: if sets.len() == 1 { Family::Weight2Single } else { Family::Weight2Multi },
            p,
            e,
            m,
            sets,
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_weight2_codes_match_claims(spec in weight2_spec()) {
        let Ok(c) = construct(&spec) else { return Ok(()) };
        let q = spec.q();
        let params = c.code.analyze(DEFAULT_MAX_ENUM).unwrap();
        let claims = &c.claims.predicted_params;
        prop_assert_eq!((params.n as u64, params.k as u64, params.d as u64), (claims.n, claims.k, claims.d));
        prop_assert_eq!(c.removed.len() as u64, c.claims.predicted_removed);

        // The line-budget hypothesis implies the sufficient condition at delta = q.
        let lines = (q.pow(spec.m as u32 - 1) - q) / (q - 1);
        let removed = c.removed.len() as u64;
        if removed <= lines {
            prop_assert!(line_budget_sufficient(removed, spec.m, q, q).unwrap());
        }
    }
}
