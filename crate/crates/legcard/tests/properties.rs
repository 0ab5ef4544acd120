//! Randomized property suite: algebraic laws of the exact-arithmetic types,
//! structural invariants of randomly sampled fronts, serialization round
//! trips, and the counting identities on inputs nobody hand-picked.

use legcard::arith::{fq_make, qsqrt_eval_laurent, Fq, LaurentPoly, QSqrt};
use legcard::aug;
use legcard::dga::{build_dga, check_dga, load_dga, save_dga};
use legcard::front::{self, PlatFront};
use legcard::ruling;
use legcard::verify;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn fq_of(q: u32) -> Fq {
    let (p, k) = match q {
        2 => (2, 1),
        3 => (3, 1),
        4 => (2, 2),
        5 => (5, 1),
        8 => (2, 3),
        9 => (3, 2),
        _ => panic!("unexpected field order {q}"),
    };
    fq_make(p, k).expect("valid prime power")
}

fn small_field() -> impl Strategy<Value = Fq> {
    prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(8), Just(9)].prop_map(fq_of)
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn qsqrt() -> impl Strategy<Value = (u32, QSqrt)> {
    (prop_oneof![Just(2u32), Just(3), Just(5)], rational(), rational())
        .prop_map(|(q, a, b)| (q, QSqrt::new(q, a, b)))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-4i64..=4, -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    })
}

/// Reproducibly sampled fronts; shrinking walks toward small seeds.
fn sampled_front() -> impl Strategy<Value = PlatFront> {
    any::<u64>().prop_map(|seed| front::sample_front(3, 8, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fq in small_field(), xs in proptest::collection::vec(0i64..64, 3)) {
        let a = fq.from_int(xs[0]);
        let b = fq.from_int(xs[1]);
        let c = fq.from_int(xs[2]);
        prop_assert_eq!(fq.add(a, b), fq.add(b, a));
        prop_assert_eq!(fq.mul(a, b), fq.mul(b, a));
        prop_assert_eq!(fq.add(fq.add(a, b), c), fq.add(a, fq.add(b, c)));
        prop_assert_eq!(fq.mul(fq.mul(a, b), c), fq.mul(a, fq.mul(b, c)));
        prop_assert_eq!(fq.mul(a, fq.add(b, c)), fq.add(fq.mul(a, b), fq.mul(a, c)));
        prop_assert_eq!(fq.add(a, fq.neg(a)), fq.zero());
        prop_assert_eq!(fq.sub(a, b), fq.add(a, fq.neg(b)));
        prop_assert_eq!(fq.mul(a, fq.one()), a);
        if a != fq.zero() {
            prop_assert_eq!(fq.mul(a, fq.inv(a)), fq.one());
            // Lagrange: every unit has order dividing q - 1.
            prop_assert_eq!(fq.pow(a, (fq.q() - 1) as i64), fq.one());
        }
        // The prime field embeds via from_int as a ring homomorphism.
        prop_assert_eq!(fq.from_int(xs[0] + xs[1]), fq.add(a, b));
        prop_assert_eq!(fq.from_int(xs[0] * xs[1]), fq.mul(a, b));
    }

    #[test]
    fn quadratic_extension_ring_laws((q, x) in qsqrt(), (r, s) in (rational(), rational())) {
        let y = QSqrt::new(q, r.clone(), s);
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.sub(&y), x.add(&y.neg()));
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        prop_assert_eq!(x.mul(&QSqrt::one(q)), x.clone());
        // sqrt(q) squares to q.
        let root = QSqrt::sqrt_q(q);
        prop_assert_eq!(root.mul(&root), QSqrt::from_int(q, q as i64));
        if !y.is_zero() {
            prop_assert_eq!(y.mul(&y.inv()), QSqrt::one(q));
            prop_assert_eq!(x.div(&y).mul(&y), x.clone());
        }
        prop_assert_eq!(x.scale(&r), x.mul(&QSqrt::from_rational(q, r)));
    }

    #[test]
    fn half_integer_powers_multiply((q, _) in qsqrt(), e1 in -9i64..=9, e2 in -9i64..=9) {
        let lhs = QSqrt::q_pow_half(q, e1).mul(&QSqrt::q_pow_half(q, e2));
        prop_assert_eq!(lhs, QSqrt::q_pow_half(q, e1 + e2));
        prop_assert_eq!(
            QSqrt::q_pow_half(q, e1).mul(&QSqrt::q_pow_half(q, -e1)),
            QSqrt::one(q)
        );
    }

    #[test]
    fn laurent_evaluation_is_a_ring_map(p1 in laurent(), p2 in laurent(), q in prop_oneof![Just(2u32), Just(3), Just(5)]) {
        let at = |p: &LaurentPoly| qsqrt_eval_laurent(p, q);
        prop_assert_eq!(at(&p1.add(&p2)), at(&p1).add(&at(&p2)));
        prop_assert_eq!(at(&p1.mul(&p2)), at(&p1).mul(&at(&p2)));
        prop_assert_eq!(at(&LaurentPoly::one()), QSqrt::one(q));
        // The evaluation point is sqrt(q) - 1/sqrt(q).
        let z = LaurentPoly::monomial(1, BigInt::from(1));
        prop_assert_eq!(
            at(&z),
            QSqrt::q_pow_half(q, 1).sub(&QSqrt::q_pow_half(q, -1))
        );
    }

    #[test]
    fn sampled_fronts_build_well_formed_algebras(f in sampled_front()) {
        let dga = build_dga(&f);
        prop_assert!(check_dga(&dga).is_empty());
        // tb equals the signed generator count: crossings contribute the
        // parity sign of their degree, right cusps (odd degree) count -1.
        let ci = front::classical_invariants(&f);
        let signed: i64 = dga
            .generators
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum();
        prop_assert_eq!(ci.tb, signed);
        prop_assert!(ci.rotation.iter().all(|&r| r == 0));
    }

    #[test]
    fn front_serialization_round_trips(f in sampled_front()) {
        let parsed = front::parse_front(&f.to_json_string()).expect("round trip parses");
        prop_assert_eq!(&parsed, &f);
        prop_assert_eq!(build_dga(&parsed), build_dga(&f));
    }

    #[test]
    fn algebra_serialization_round_trips(f in sampled_front()) {
        let dga = build_dga(&f);
        let loaded = load_dga(&save_dga(&dga)).expect("round trip loads");
        prop_assert_eq!(&loaded, &dga);
        // And an idempotence level deeper, through the interchange text.
        prop_assert_eq!(save_dga(&loaded), save_dga(&dga));
    }

    #[test]
    fn counts_match_ruling_polynomials_on_sampled_fronts(
        f in sampled_front(),
        q in prop_oneof![Just(2u32), Just(3)],
        m in 0u32..=2,
    ) {
        let fq = fq_of(q);
        let dga = build_dga(&f);
        let euler = aug::euler_data(&dga, m);
        let augs = aug::enumerate_augmentations(&dga, &fq, m);
        let lhs = aug::normalized_count(q, dga.components, euler.chi_star, augs.len());
        let rhs = qsqrt_eval_laurent(&ruling::ruling_polynomial(&f, m), q);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    // The full battery is heavier; fewer cases keep the suite brisk.
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn verification_battery_holds_on_sampled_fronts(
        f in sampled_front(),
        q in prop_oneof![Just(2u32), Just(3)],
        m in 0u32..=1,
    ) {
        let fq = fq_of(q);
        let checks = verify::verify_front(&f, &fq, m);
        for c in &checks {
            prop_assert!(
                c.passed || c.advisory,
                "check {} failed on {}: {}",
                c.name,
                f.name(),
                c.detail
            );
        }
    }
}

#[test]
fn augmentations_match_exhaustive_search_on_sampled_fronts() {
    // Deterministic seeds, tiny algebras: compare the backtracking
    // enumerator against brute force over every assignment.
    for seed in [3u64, 11, 27, 63, 91] {
        let f = front::sample_front(2, 5, seed);
        let dga = build_dga(&f);
        if dga.generators.len() > 6 {
            continue;
        }
        for q in [2u32, 3] {
            let fq = fq_of(q);
            for m in 0u32..=1 {
                let fast = aug::enumerate_augmentations(&dga, &fq, m);
                let mut slow = Vec::new();
                let ell = dga.components;
                let nb = dga.generators.len();
                let units: Vec<_> = fq.units().collect();
                let elems: Vec<_> = fq.elements().collect();
                let mut idx = vec![0usize; ell + nb];
                loop {
                    let cand = aug::Augmentation {
                        q,
                        m,
                        t_vals: (0..ell).map(|i| units[idx[i]]).collect(),
                        chord_vals: (0..nb).map(|j| elems[idx[ell + j]]).collect(),
                    };
                    if aug::is_augmentation(&dga, &fq, &cand) {
                        slow.push((cand.t_vals.clone(), cand.chord_vals.clone()));
                    }
                    let mut carry = idx.len();
                    for pos in 0..idx.len() {
                        let hi = if pos < ell { units.len() } else { elems.len() };
                        idx[pos] += 1;
                        if idx[pos] < hi {
                            carry = pos;
                            break;
                        }
                        idx[pos] = 0;
                    }
                    if carry == idx.len() {
                        break;
                    }
                }
                let mut got: Vec<_> =
                    fast.iter().map(|a| (a.t_vals.clone(), a.chord_vals.clone())).collect();
                got.sort();
                slow.sort();
                assert_eq!(got, slow, "seed {seed} q={q} m={m}");
            }
        }
    }
}
