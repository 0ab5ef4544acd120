//! Frozen regression values for the built-in examples.
//!
//! Every number here was derived independently of the code path it pins:
//! classical invariants by hand from the plat words, censuses and class
//! shapes cross-checked through the counting-identity battery (counts versus
//! ruling-polynomial evaluations, cardinality identities, dualities) before
//! freezing. The tests fail loudly on any behavioural drift.

use legcard::arith::{fq_make, Fq};
use legcard::aug;
use legcard::augcat;
use legcard::dga::{build_dga, check_dga, load_dga, save_dga};
use legcard::front::{self, PlatFront};
use legcard::ruling;
use num_rational::BigRational;
use num_traits::FromPrimitive;
use std::collections::BTreeMap;

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

fn builtin(name: &str) -> PlatFront {
    front::builtin(name).expect("built-in example")
}

fn rat(n: i64) -> BigRational {
    BigRational::from_i64(n).expect("small integer")
}

#[test]
fn classical_invariants_of_builtins() {
    let expect: &[(&str, i64, usize)] = &[
        ("unknot", -1, 1),
        ("unlink2", -2, 2),
        ("hopf", -4, 2),
        ("trefoil", 1, 1),
        ("m821", 1, 1),
        ("m945", 1, 1),
    ];
    for &(name, tb, comps) in expect {
        let f = builtin(name);
        let ci = front::classical_invariants(&f);
        assert_eq!(ci.tb, tb, "{name}: tb");
        assert_eq!(ci.components, comps, "{name}: component count");
        assert!(ci.rotation.iter().all(|&r| r == 0), "{name}: rotation numbers");
    }
}

#[test]
fn ruling_polynomials_of_builtins() {
    // (name, [(m, count, polynomial)]) — identical across m unless noted.
    let expect: &[(&str, &[(u32, usize, &str)])] = &[
        ("unknot", &[(0, 1, "z^-1"), (1, 1, "z^-1"), (2, 1, "z^-1"), (3, 1, "z^-1")]),
        ("unlink2", &[(0, 1, "z^-2"), (1, 1, "z^-2"), (2, 1, "z^-2"), (3, 1, "z^-2")]),
        ("hopf", &[(0, 1, "z^-2"), (1, 1, "z^-2"), (2, 1, "z^-2"), (3, 1, "z^-2")]),
        (
            "trefoil",
            &[
                (0, 3, "2*z^-1 + z"),
                (1, 3, "2*z^-1 + z"),
                (2, 3, "2*z^-1 + z"),
                (3, 3, "2*z^-1 + z"),
            ],
        ),
        (
            "m821",
            &[
                (0, 5, "3*z^-1 + 2*z"),
                (1, 5, "3*z^-1 + 2*z"),
                (2, 5, "3*z^-1 + 2*z"),
                (3, 5, "3*z^-1 + 2*z"),
            ],
        ),
        // The 2-periodic count of m945 exceeds its integer-graded count:
        // one extra ruling becomes admissible when degrees are read mod 2.
        (
            "m945",
            &[
                (0, 3, "2*z^-1 + z"),
                (1, 4, "2*z^-1 + 2*z"),
                (2, 3, "2*z^-1 + z"),
                (3, 3, "2*z^-1 + z"),
            ],
        ),
    ];
    for &(name, rows) in expect {
        let f = builtin(name);
        for &(m, count, poly) in rows {
            let rulings = ruling::enumerate_rulings(&f, m);
            assert_eq!(rulings.len(), count, "{name} m={m}: ruling count");
            assert_eq!(
                ruling::ruling_polynomial(&f, m).to_string(),
                poly,
                "{name} m={m}: ruling polynomial"
            );
        }
    }
}

#[test]
fn augmentation_censuses_over_small_fields() {
    // (name, chi_star per m 0..=3, counts[q-index][m-index] for q = 2,3,4,5).
    let expect: &[(&str, [i64; 4], [[usize; 4]; 4])] = &[
        ("unknot", [-1; 4], [[1; 4]; 4]),
        ("unlink2", [-2; 4], [[1; 4]; 4]),
        ("hopf", [-2; 4], [[1; 4]; 4]),
        ("trefoil", [1; 4], [[5; 4], [10; 4], [17; 4], [26; 4]]),
        ("m821", [3; 4], [[16; 4], [51; 4], [120; 4], [235; 4]]),
        (
            "m945",
            [1, 5, 1, 1],
            [[5, 24, 5, 5], [10, 126, 10, 10], [17, 416, 17, 17], [26, 1050, 26, 26]],
        ),
    ];
    for &(name, chi, counts) in expect {
        let dga = build_dga(&builtin(name));
        for (qi, &q) in [2u32, 3, 4, 5].iter().enumerate() {
            let fq = fq_of(q);
            for m in 0u32..=3 {
                let euler = aug::euler_data(&dga, m);
                assert_eq!(euler.chi_star, chi[m as usize], "{name} m={m}: chi*");
                let augs = aug::enumerate_augmentations(&dga, &fq, m);
                assert_eq!(
                    augs.len(),
                    counts[qi][m as usize],
                    "{name} q={q} m={m}: augmentation count"
                );
            }
        }
    }
}

#[test]
fn isomorphism_class_shapes() {
    // (name, q, class count, sorted |Aut| multiset, groupoid cardinality,
    // homotopy cardinality) at integer grading. The two cardinalities
    // deliberately differ for m945 at q = 4 and q = 5.
    let expect: &[(&str, u32, usize, &[i64], (i64, i64), (i64, i64))] = &[
        ("trefoil", 2, 5, &[1, 1, 1, 1, 1], (5, 1), (5, 1)),
        ("trefoil", 3, 10, &[2; 10], (5, 1), (5, 1)),
        ("trefoil", 4, 17, &[3; 17], (17, 3), (17, 3)),
        ("trefoil", 5, 26, &[4; 26], (13, 2), (13, 2)),
        ("m821", 2, 10, &[1, 1, 1, 1, 1, 1, 2, 2, 2, 2], (8, 1), (8, 1)),
        (
            "m821",
            3,
            23,
            &[2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 6, 6, 6, 6, 6, 6, 6, 6, 6],
            (17, 2),
            (17, 2),
        ),
        ("m821", 4, 42, &[], (10, 1), (10, 1)),
        ("m821", 5, 67, &[], (47, 4), (47, 4)),
        ("m945", 2, 5, &[1, 1, 1, 2, 2], (4, 1), (5, 1)),
        ("m945", 3, 10, &[2, 2, 2, 2, 2, 2, 2, 6, 6, 6], (4, 1), (5, 1)),
        ("m945", 4, 17, &[], (14, 3), (17, 3)),
        ("m945", 5, 26, &[], (11, 2), (13, 2)),
    ];
    for &(name, q, n_classes, auts, grp, hc) in expect {
        let dga = build_dga(&builtin(name));
        let fq = fq_of(q);
        let augs = aug::enumerate_augmentations(&dga, &fq, 0);
        let classes = augcat::class_data(&dga, &fq, &augs);
        assert_eq!(classes.len(), n_classes, "{name} q={q}: class count");
        if !auts.is_empty() {
            let mut got: Vec<String> = classes.iter().map(|c| c.aut.to_string()).collect();
            got.sort();
            let mut want: Vec<String> = auts.iter().map(|a| a.to_string()).collect();
            want.sort();
            assert_eq!(got, want, "{name} q={q}: |Aut| multiset");
        }
        assert_eq!(
            augcat::groupoid_cardinality(&classes),
            rat(grp.0) / rat(grp.1),
            "{name} q={q}: groupoid cardinality"
        );
        assert_eq!(
            augcat::homotopy_cardinality(q, &classes),
            rat(hc.0) / rat(hc.1),
            "{name} q={q}: homotopy cardinality"
        );
    }
}

#[test]
fn cohomology_tables_over_f2() {
    // Multiset of (|Aut|, hom0, b0, cohomology dimension table) per class.
    let fq = fq_of(2);

    let dga = build_dga(&builtin("trefoil"));
    let augs = aug::enumerate_augmentations(&dga, &fq, 0);
    let classes = augcat::class_data(&dga, &fq, &augs);
    for c in &classes {
        assert_eq!(c.aut.to_string(), "1");
        assert_eq!((c.hom0, c.b0), (1, 0));
        assert_eq!(c.h_dims, BTreeMap::from([(0, 1), (1, 2), (2, 0)]), "trefoil class table");
    }

    let dga = build_dga(&builtin("m945"));
    let augs = aug::enumerate_augmentations(&dga, &fq, 0);
    let classes = augcat::class_data(&dga, &fq, &augs);
    let mut shapes: Vec<(String, usize, usize, BTreeMap<i64, usize>)> =
        classes.iter().map(|c| (c.aut.to_string(), c.hom0, c.b0, c.h_dims.clone())).collect();
    shapes.sort();
    let wide = BTreeMap::from([(-1, 1), (0, 2), (1, 2), (2, 1), (3, 1)]);
    let slim = BTreeMap::from([(-1, 0), (0, 1), (1, 2), (2, 0), (3, 0)]);
    let want = vec![
        ("1".to_string(), 2, 1, slim.clone()),
        ("1".to_string(), 2, 1, slim.clone()),
        ("1".to_string(), 2, 1, slim),
        ("2".to_string(), 2, 0, wide.clone()),
        ("2".to_string(), 2, 0, wide),
    ];
    assert_eq!(shapes, want, "m945 class tables over F2");
}

#[test]
fn interchange_golden_files_match_built_algebras() {
    for (name, file) in [
        ("trefoil", include_str!("data/trefoil_dga.json")),
        ("m945", include_str!("data/m945_dga.json")),
    ] {
        let loaded = load_dga(file).expect("golden file loads");
        assert!(check_dga(&loaded).is_empty(), "{name}: loaded algebra is well-formed");
        let built = build_dga(&builtin(name));
        assert_eq!(loaded, built, "{name}: golden file equals the built algebra");
        assert_eq!(
            save_dga(&built).trim_end(),
            file.trim_end(),
            "{name}: serialization is byte-stable"
        );
        let reloaded = load_dga(&save_dga(&loaded)).expect("round trip");
        assert_eq!(reloaded, built, "{name}: load∘save is the identity");
    }
}

#[test]
fn reversed_words_present_the_same_links() {
    // Reversing the event word reflects the front left-to-right. The
    // reflected diagram presents the same link, the reflection induces a
    // degree-preserving anti-isomorphism of algebras and a bijection of
    // rulings, so every front-independent quantity must agree: tb, ruling
    // polynomials, normalized counts, and cardinalities. (Raw counts and
    // chi* may differ — they depend on the presentation.)
    for name in ["trefoil", "m821", "m945"] {
        let f = builtin(name);
        let mut rev_events: Vec<usize> = f.events().to_vec();
        rev_events.reverse();
        let g = front::make_front(
            &format!("{name}-reversed"),
            f.n_cusps(),
            &rev_events,
            &BTreeMap::new(),
            &BTreeMap::new(),
        )
        .expect("reversed word is a valid front");

        let ci_f = front::classical_invariants(&f);
        let ci_g = front::classical_invariants(&g);
        assert_eq!(ci_f.tb, ci_g.tb, "{name}: tb under reversal");
        assert_eq!(ci_f.components, ci_g.components, "{name}: components under reversal");

        for m in 0u32..=3 {
            assert_eq!(
                ruling::ruling_polynomial(&f, m).to_string(),
                ruling::ruling_polynomial(&g, m).to_string(),
                "{name} m={m}: ruling polynomial under reversal"
            );
        }

        let dga_f = build_dga(&f);
        let dga_g = build_dga(&g);
        assert!(check_dga(&dga_g).is_empty(), "{name}: reversed algebra well-formed");
        for q in [2u32, 3] {
            let fq = fq_of(q);
            for m in 0u32..=1 {
                let ef = aug::euler_data(&dga_f, m);
                let eg = aug::euler_data(&dga_g, m);
                let af = aug::enumerate_augmentations(&dga_f, &fq, m);
                let ag = aug::enumerate_augmentations(&dga_g, &fq, m);
                assert_eq!(
                    aug::normalized_count(q, dga_f.components, ef.chi_star, af.len()),
                    aug::normalized_count(q, dga_g.components, eg.chi_star, ag.len()),
                    "{name} q={q} m={m}: normalized count under reversal"
                );
                if m == 0 {
                    let cf = augcat::class_data(&dga_f, &fq, &af);
                    let cg = augcat::class_data(&dga_g, &fq, &ag);
                    assert_eq!(
                        augcat::homotopy_cardinality(q, &cf),
                        augcat::homotopy_cardinality(q, &cg),
                        "{name} q={q}: homotopy cardinality under reversal"
                    );
                }
            }
        }
    }
}

#[test]
fn sampled_fronts_are_reproducible() {
    // The sampler must produce identical fronts for identical seeds on every
    // platform; these words were recorded once and must never drift.
    let expect: &[(u64, &[usize], i64)] = &[
        (1, &[2, 2], -4),
        (7, &[], -1),
        (19, &[4, 3, 3, 4, 4], -2),
        (42, &[3, 4, 4, 2, 5, 4], -5),
    ];
    for &(seed, events, tb) in expect {
        let f = front::sample_front(3, 8, seed);
        assert_eq!(f.events(), events, "seed {seed}: event word");
        assert_eq!(front::classical_invariants(&f).tb, tb, "seed {seed}: tb");
        let g = front::sample_front(3, 8, seed);
        assert_eq!(f, g, "seed {seed}: sampling is deterministic");
        assert!(check_dga(&build_dga(&f)).is_empty(), "seed {seed}: algebra well-formed");
    }
}
