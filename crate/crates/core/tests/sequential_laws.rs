//! Laws of the sequential product and its derived operations — axiom sweeps
//! over the model zoo, the basic product identities on sampled pools, floor
//! and division, halves, square roots, centers, and commutant closures.

use proptest::prelude::*;
use seqea::ea::{boolean_algebra_check, derive_order};
use seqea::rational::rat;
use seqea::sequential::{
    bicommutant, center, check_effect_monoid, check_sea_axioms, commutant, commutes, divide_by_n,
    floor, halves_of, is_idempotent, sqrt, times, MemberSet, SeaCheckConfig,
};
use seqea::{Elem, Error, FiniteEaTable, Mat2, ModelExpr};

fn cfg() -> SeaCheckConfig {
    SeaCheckConfig::with_budget(14, 5)
}

fn hs() -> ModelExpr {
    ModelExpr::horizontal_sum(vec![ModelExpr::interval(), ModelExpr::interval()])
        .expect("two interval branches are a valid horizontal sum")
}

/// A finite Boolean table with its meet as the attached product.
fn meet_model(atoms: u32) -> ModelExpr {
    let t = FiniteEaTable::boolean(atoms);
    let ord = derive_order(&t);
    let meet = boolean_algebra_check(&t, &ord)
        .meet_table
        .expect("boolean tables are lattices");
    ModelExpr::finite_with_product(t, meet).expect("meet is a valid product table")
}

fn zoo() -> Vec<(&'static str, ModelExpr)> {
    vec![
        ("boolean", ModelExpr::boolean(3).expect("three atoms")),
        ("interval", ModelExpr::interval()),
        ("matrix-interval", ModelExpr::matrix_interval()),
        ("horizontal-sum", hs()),
        (
            "direct-sum",
            ModelExpr::direct_sum(vec![
                ModelExpr::boolean(2).expect("two atoms"),
                ModelExpr::interval(),
            ])
            .expect("valid direct sum"),
        ),
        (
            "corner",
            ModelExpr::corner(ModelExpr::boolean(3).expect("three atoms"), Elem::Bits(0b011))
                .expect("bitmask idempotent"),
        ),
        ("finite-meet", meet_model(2)),
    ]
}

#[test]
fn axioms_pass_on_the_model_zoo() {
    for (name, m) in zoo() {
        let report = check_sea_axioms(&m, &cfg()).expect("checker runs");
        assert!(report.passed(), "{name} violates an axiom: {:?}", report.violations);
    }
}

#[test]
fn the_three_chain_with_nilpotent_midpoint_breaks_additivity() {
    // h o h = 0 on the chain {0, h, 1}: then h o (h + h) = h o 1 = h, but
    // h o h + h o h = 0, so additivity in the second argument fails.
    let t = FiniteEaTable::chain(3);
    let product = vec![0, 0, 0, 0, 0, 1, 0, 1, 2];
    let m = ModelExpr::finite_with_product(t, product).expect("well-shaped table");
    let report = check_sea_axioms(&m, &cfg()).expect("checker runs");
    assert!(!report.passed());
    assert!(
        report.has_violation("sea.s1"),
        "expected an additivity violation, got {:?}",
        report.violations
    );
}

#[test]
fn zero_and_unit_absorb() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for a in &pool {
            assert_eq!(m.seq_product(a, &Elem::Zero).expect("product"), Elem::Zero, "{name}");
            assert_eq!(m.seq_product(&Elem::Zero, a).expect("product"), Elem::Zero, "{name}");
            assert_eq!(m.seq_product(a, &Elem::One).expect("product"), *a, "{name}");
            assert_eq!(m.seq_product(&Elem::One, a).expect("product"), *a, "{name}");
        }
    }
}

#[test]
fn products_sit_below_their_left_factor_and_grow_with_the_right() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for a in &pool {
            for b in &pool {
                let ab = m.seq_product(a, b).expect("product");
                assert!(m.leq(&ab, a).expect("order"), "{name}: {a} o {b} is not below {a}");
                for c in &pool {
                    if m.leq(b, c).expect("order") {
                        let ac = m.seq_product(a, c).expect("product");
                        assert!(
                            m.leq(&ab, &ac).expect("order"),
                            "{name}: {b} <= {c} but {a} o {b} is not below {a} o {c}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn idempotents_characterize_the_order() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for p in &pool {
            if !is_idempotent(&m, p).expect("product") {
                continue;
            }
            for a in &pool {
                let pa = m.seq_product(p, a).expect("product");
                let ap = m.seq_product(a, p).expect("product");
                assert_eq!(
                    m.leq(p, a).expect("order"),
                    pa == *p,
                    "{name}: p <= a must match p o a = p at p={p}, a={a}"
                );
                assert_eq!(
                    m.leq(a, p).expect("order"),
                    pa == *a,
                    "{name}: a <= p must match p o a = a at p={p}, a={a}"
                );
                assert_eq!(
                    m.leq(a, p).expect("order"),
                    ap == *a,
                    "{name}: a <= p must match a o p = a at p={p}, a={a}"
                );
            }
        }
    }
}

#[test]
fn self_orthogonal_products_sum_with_themselves() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for a in &pool {
            let s = m.seq_product(a, &m.complement(a).expect("complement")).expect("product");
            assert!(
                m.partial_sum(&s, &s).expect("sum runs").is_some(),
                "{name}: {a} o {a}' = {s} is not summable with itself"
            );
        }
    }
}

#[test]
fn nilpotents_vanish() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for a in &pool {
            if m.seq_product(a, a).expect("product") == Elem::Zero {
                assert_eq!(*a, Elem::Zero, "{name}: {a} squares to zero but is not zero");
            }
        }
    }
}

#[test]
fn sums_below_an_idempotent_stay_below() {
    let m = ModelExpr::boolean(3).expect("three atoms");
    let pool = m.enumerate_all().expect("finite");
    for p in &pool {
        for a in &pool {
            for b in &pool {
                if m.leq(a, p).expect("order") && m.leq(b, p).expect("order") {
                    if let Some(s) = m.partial_sum(a, b).expect("sum runs") {
                        assert!(
                            m.leq(&s, p).expect("order"),
                            "{a} + {b} = {s} escapes the downset of {p}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn idempotent_products_sit_below_the_right_factor() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for a in &pool {
            for b in &pool {
                let ab = m.seq_product(a, b).expect("product");
                if is_idempotent(&m, &ab).expect("product") {
                    assert!(
                        m.leq(&ab, b).expect("order"),
                        "{name}: idempotent {a} o {b} = {ab} is not below {b}"
                    );
                }
            }
        }
    }
}

#[test]
fn commuting_idempotents_meet() {
    let m = meet_model(3);
    let pool = m.enumerate_all().expect("finite");
    for p in &pool {
        for q in &pool {
            assert!(commutes(&m, p, q).expect("product"), "meet products commute");
            let pq = m.seq_product(p, q).expect("product");
            assert!(m.leq(&pq, p).expect("order"), "{p} o {q} not below {p}");
            assert!(m.leq(&pq, q).expect("order"), "{p} o {q} not below {q}");
            for c in &pool {
                if m.leq(c, p).expect("order") && m.leq(c, q).expect("order") {
                    assert!(
                        m.leq(c, &pq).expect("order"),
                        "common lower bound {c} escapes {p} o {q}"
                    );
                }
            }
        }
    }
}

#[test]
fn products_absorb_floors() {
    for (name, m) in zoo() {
        let pool = cfg().elements(&m).expect("pool");
        for a in &pool {
            for b in &pool {
                if m.seq_product(a, b).expect("product") == *a {
                    let fb = floor(&m, b).expect("floor");
                    assert_eq!(
                        m.seq_product(a, &fb).expect("product"),
                        *a,
                        "{name}: {a} o {b} = {a} but the floor {fb} of {b} does not absorb"
                    );
                }
            }
        }
    }
}

#[test]
fn floor_is_the_largest_idempotent_below() {
    for m in [ModelExpr::boolean(3).expect("three atoms"), meet_model(2)] {
        let pool = m.enumerate_all().expect("finite");
        for a in &pool {
            let fl = floor(&m, a).expect("floor");
            assert!(is_idempotent(&m, &fl).expect("product"), "floor of {a} is not idempotent");
            assert!(m.leq(&fl, a).expect("order"), "floor of {a} is not below it");
            for q in &pool {
                if is_idempotent(&m, q).expect("product") && m.leq(q, a).expect("order") {
                    assert!(
                        m.leq(q, &fl).expect("order"),
                        "idempotent {q} below {a} escapes the floor {fl}"
                    );
                }
            }
        }
    }
}

#[test]
fn floors_follow_the_family_closed_forms() {
    let iv = ModelExpr::interval();
    assert_eq!(floor(&iv, &Elem::Rat(rat(3, 4))).expect("floor"), Elem::Zero);
    assert_eq!(floor(&iv, &Elem::One).expect("floor"), Elem::One);

    let h = hs();
    assert_eq!(floor(&h, &Elem::branch(1, Elem::Rat(rat(3, 4)))).expect("floor"), Elem::Zero);
    assert_eq!(floor(&h, &Elem::One).expect("floor"), Elem::One);

    let mi = ModelExpr::matrix_interval();
    assert_eq!(floor(&mi, &Elem::Mat(Mat2::scalar(&rat(1, 2)))).expect("floor"), Elem::Zero);

    let ds = ModelExpr::direct_sum(vec![
        ModelExpr::boolean(2).expect("two atoms"),
        ModelExpr::interval(),
    ])
    .expect("valid direct sum");
    let a = Elem::Tuple(vec![Elem::Bits(0b01), Elem::Rat(rat(1, 2))]);
    assert_eq!(
        floor(&ds, &a).expect("floor"),
        Elem::Tuple(vec![Elem::Bits(0b01), Elem::Zero]),
        "floors act componentwise"
    );
}

fn unit_rat() -> impl Strategy<Value = seqea::Rat> {
    (1i64..=60, 0i64..=60).prop_map(|(d, n)| rat(n.min(d), d))
}

proptest! {
    #[test]
    fn division_roundtrips_when_the_floor_vanishes(q in unit_rat(), n in 1u32..=8) {
        prop_assume!(q != rat(1, 1));
        let iv = ModelExpr::interval();
        let a = Elem::Rat(q);
        let piece = divide_by_n(&iv, &a, n)?;
        prop_assert_eq!(times(&iv, &piece, n)?, Some(iv.want(&a)?));
    }

    #[test]
    fn square_roots_square_back(q in unit_rat()) {
        let iv = ModelExpr::interval();
        let a = iv.want(&Elem::Rat(q))?;
        let root = sqrt(&iv, &a, 40)?;
        let squared = iv.seq_product(&root.value, &root.value)?;
        if root.exact {
            prop_assert_eq!(squared, a);
        } else {
            // Floor root on the 2^-40 grid: the square never overshoots and
            // lands within a coarse tolerance below the target.
            prop_assert!(iv.leq(&squared, &a)?);
            let gap = iv.ominus(&a, &squared)?.expect("squared <= a");
            prop_assert!(iv.leq(&gap, &Elem::Rat(rat(1, 1 << 30)))?,
                "floor root is off by more than 2^-30");
        }
    }
}

#[test]
fn division_requires_a_vanishing_floor() {
    let iv = ModelExpr::interval();
    assert!(matches!(
        divide_by_n(&iv, &Elem::One, 2),
        Err(Error::FloorNotZero { .. })
    ));

    // The unit of a horizontal sum has two halves, so unique division must
    // refuse it — its floor is 1, not 0.
    let h = hs();
    assert!(matches!(divide_by_n(&h, &Elem::One, 2), Err(Error::FloorNotZero { .. })));
    assert_eq!(halves_of(&h, &Elem::One).expect("halves").len(), 2);

    // Within a branch, division is ordinary rational division.
    let half_left = Elem::branch(0, Elem::Rat(rat(1, 2)));
    assert_eq!(
        divide_by_n(&h, &half_left, 2).expect("divides"),
        Elem::branch(0, Elem::Rat(rat(1, 4)))
    );

    let mi = ModelExpr::matrix_interval();
    assert_eq!(
        divide_by_n(&mi, &Elem::Mat(Mat2::scalar(&rat(1, 2))), 2).expect("divides"),
        Elem::Mat(Mat2::scalar(&rat(1, 4)))
    );

    assert!(matches!(
        divide_by_n(&iv, &Elem::Rat(rat(1, 2)), 0),
        Err(Error::Unsupported(_))
    ));

    // A Boolean atom is idempotent, hence its own floor: division refuses.
    let b = ModelExpr::boolean(2).expect("two atoms");
    assert!(matches!(
        divide_by_n(&b, &Elem::Bits(0b01), 2),
        Err(Error::FloorNotZero { .. })
    ));
}

#[test]
fn halves_come_from_the_family_closed_forms() {
    let iv = ModelExpr::interval();
    assert_eq!(
        halves_of(&iv, &Elem::Rat(rat(1, 2))).expect("halves"),
        vec![Elem::Rat(rat(1, 4))]
    );

    let h = hs();
    let halves = halves_of(&h, &Elem::One).expect("halves");
    assert_eq!(halves.len(), 2, "the unit of a two-branch horizontal sum has two halves");
    assert!(halves.contains(&Elem::branch(0, Elem::Rat(rat(1, 2)))));
    assert!(halves.contains(&Elem::branch(1, Elem::Rat(rat(1, 2)))));
    assert_eq!(
        halves_of(&h, &Elem::branch(1, Elem::Rat(rat(1, 3)))).expect("halves"),
        vec![Elem::branch(1, Elem::Rat(rat(1, 6)))]
    );

    let b = ModelExpr::boolean(2).expect("two atoms");
    assert!(halves_of(&b, &Elem::One).expect("halves").is_empty());
    assert_eq!(halves_of(&b, &Elem::Zero).expect("halves"), vec![Elem::Zero]);
    assert!(halves_of(&meet_model(2), &Elem::One).expect("halves").is_empty());

    // Componentwise halves multiply across a direct sum.
    let ds = ModelExpr::direct_sum(vec![ModelExpr::interval(), hs()]).expect("valid direct sum");
    assert_eq!(halves_of(&ds, &Elem::One).expect("halves").len(), 2);
}

#[test]
fn square_roots_follow_the_family_rules() {
    let b = ModelExpr::boolean(2).expect("two atoms");
    let r = sqrt(&b, &Elem::Bits(0b01), 40).expect("root");
    assert!(r.exact);
    assert_eq!(r.value, Elem::Bits(0b01), "idempotents are their own roots");

    let iv = ModelExpr::interval();
    let r = sqrt(&iv, &Elem::Rat(rat(9, 16)), 40).expect("root");
    assert!(r.exact);
    assert_eq!(r.value, Elem::Rat(rat(3, 4)));

    let r = sqrt(&iv, &Elem::Rat(rat(1, 2)), 40).expect("root");
    assert!(!r.exact, "one half is not a rational square");

    let h = hs();
    let r = sqrt(&h, &Elem::branch(0, Elem::Rat(rat(9, 16))), 40).expect("root");
    assert!(r.exact);
    assert_eq!(r.value, Elem::branch(0, Elem::Rat(rat(3, 4))));

    let ds = ModelExpr::direct_sum(vec![ModelExpr::interval(), ModelExpr::interval()])
        .expect("valid direct sum");
    let r = sqrt(&ds, &Elem::Tuple(vec![Elem::Rat(rat(1, 4)), Elem::Rat(rat(9, 16))]), 40)
        .expect("root");
    assert!(r.exact);
    assert_eq!(r.value, Elem::Tuple(vec![Elem::Rat(rat(1, 2)), Elem::Rat(rat(3, 4))]));

    assert!(matches!(
        sqrt(&ModelExpr::matrix_interval(), &Elem::Mat(Mat2::scalar(&rat(1, 4))), 40),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn centers_match_their_closed_forms() {
    let c = center(&hs(), &cfg()).expect("center");
    assert_eq!(c.set, MemberSet::Listed(vec![Elem::Zero, Elem::One]));
    assert!(c.exact);
    assert!(c.closed_under_sum && c.closed_under_complement && c.closed_under_product);

    let mi = ModelExpr::matrix_interval();
    let c = center(&mi, &cfg()).expect("center");
    assert_eq!(c.set, MemberSet::ScalarsOfIdentity);
    assert!(c.contains(&mi, &Elem::Mat(Mat2::scalar(&rat(1, 3)))).expect("member"));
    let off_axis = Elem::Mat(Mat2::new(rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)));
    assert!(!c.contains(&mi, &off_axis).expect("member"));

    let iv = ModelExpr::interval();
    let c = center(&iv, &cfg()).expect("center");
    assert!(c.contains(&iv, &Elem::Rat(rat(1, 2))).expect("member"), "everything is central");

    let b = ModelExpr::boolean(3).expect("three atoms");
    let c = center(&b, &cfg()).expect("center");
    assert!(c.contains(&b, &Elem::Bits(0b101)).expect("member"));

    let ds = ModelExpr::direct_sum(vec![
        ModelExpr::boolean(2).expect("two atoms"),
        ModelExpr::interval(),
    ])
    .expect("valid direct sum");
    let c = center(&ds, &cfg()).expect("center");
    assert!(c
        .contains(&ds, &Elem::Tuple(vec![Elem::Bits(0b01), Elem::Rat(rat(1, 3))]))
        .expect("member"));

    // A direct sum with a horizontal-sum part centralizes componentwise: the
    // rogue part contributes only its bounds.
    let mixed = ModelExpr::direct_sum(vec![ModelExpr::interval(), hs()]).expect("valid direct sum");
    let c = center(&mixed, &cfg()).expect("center");
    assert!(c
        .contains(&mixed, &Elem::Tuple(vec![Elem::Rat(rat(1, 3)), Elem::One]))
        .expect("member"));
    assert!(!c
        .contains(&mixed, &Elem::Tuple(vec![Elem::Rat(rat(1, 3)), Elem::branch(0, Elem::Rat(rat(1, 2)))]))
        .expect("member"));
}

#[test]
fn commutants_close_and_nest() {
    // Commutative finite model: everything commutes with everything.
    let m = meet_model(2);
    let gens = vec![Elem::Idx(1)];
    let prime = commutant(&m, &gens, &cfg()).expect("commutant");
    assert!(prime.closed_under_sum && prime.closed_under_complement && prime.closed_under_product);
    for e in m.enumerate_all().expect("finite") {
        assert!(prime.contains(&m, &e).expect("member"), "{e} missing from a full commutant");
    }
    let second = bicommutant(&m, &gens, &cfg()).expect("bicommutant");
    for g in &gens {
        assert!(second.contains(&m, g).expect("member"), "generators belong to their closure");
    }

    // Empty generator set: everything commutes vacuously, and the double
    // commutant collapses to the center.
    let all = commutant(&m, &[], &cfg()).expect("commutant");
    for e in m.enumerate_all().expect("finite") {
        assert!(all.contains(&m, &e).expect("member"));
    }

    // Horizontal sum: the commutant of an interior point is its own branch
    // with the bounds; the other branch's interior is excluded.
    let h = hs();
    let gens = vec![Elem::branch(0, Elem::Rat(rat(1, 3)))];
    let prime = commutant(&h, &gens, &cfg()).expect("commutant");
    assert_eq!(prime.set, MemberSet::BranchWithBounds(0));
    assert!(prime.contains(&h, &Elem::branch(0, Elem::Rat(rat(2, 5)))).expect("member"));
    assert!(prime.contains(&h, &Elem::Zero).expect("member"));
    assert!(prime.contains(&h, &Elem::One).expect("member"));
    assert!(!prime.contains(&h, &Elem::branch(1, Elem::Rat(rat(1, 2)))).expect("member"));

    let second = bicommutant(&h, &gens, &cfg()).expect("bicommutant");
    assert!(second.contains(&h, &gens[0]).expect("member"));
    // The double commutant sits inside the commutant.
    for e in second.set.sample(&h, 12, 9).expect("sample") {
        assert!(prime.contains(&h, &e).expect("member"), "{e} escapes the commutant");
    }
    // Mutually commuting generators produce a commutative double commutant.
    let pool = second.set.sample(&h, 10, 9).expect("sample");
    for a in &pool {
        for b in &pool {
            assert!(commutes(&h, a, b).expect("product"), "{a} and {b} fail to commute");
        }
    }

    // Matrix interval: the commutant of a non-scalar member is its span with
    // the identity — it keeps the generator and the scalars, and excludes
    // members built from a genuinely different direction.
    let mi = ModelExpr::matrix_interval();
    let upper = Elem::Mat(Mat2::new(rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)));
    let flip = Elem::Mat(Mat2::new(rat(0, 1), rat(1, 2), rat(1, 2), rat(0, 1)));
    let prime = commutant(&mi, &[upper.clone()], &cfg()).expect("commutant");
    assert!(prime.contains(&mi, &upper).expect("member"));
    assert!(prime.contains(&mi, &Elem::Mat(Mat2::scalar(&rat(1, 3)))).expect("member"));
    assert!(!prime.contains(&mi, &flip).expect("member"));
}

#[test]
fn monoid_reports_on_the_zoo() {
    let iv = check_effect_monoid(&ModelExpr::interval(), &cfg()).expect("checker runs");
    assert!(iv.is_effect_monoid());
    assert!(iv.commutative);
    assert!(iv.zero_divisor_free);

    let mi = check_effect_monoid(&ModelExpr::matrix_interval(), &cfg()).expect("checker runs");
    assert!(mi.is_effect_monoid());
    assert!(!mi.commutative, "matrix products must not commute");
    assert!(mi.commutativity_witness.is_some());
    assert!(mi.zero_divisor_free);
    assert!(mi.s3_bridge_holds);

    let b = check_effect_monoid(&ModelExpr::boolean(2).expect("two atoms"), &cfg())
        .expect("checker runs");
    assert!(b.is_effect_monoid());
    assert!(b.commutative);

    // The left-keeping product of a horizontal sum is additive in its second
    // argument only: distributing a sum over the FIRST argument crosses
    // branches and fails.
    let h = check_effect_monoid(&hs(), &cfg()).expect("checker runs");
    assert!(!h.is_effect_monoid());
    assert!(
        h.report.has_violation("monoid.right-distributivity"),
        "expected the first-argument distributivity to fail, got {:?}",
        h.report.violations
    );
    assert!(h.s3_bridge_holds, "vanishing products are symmetric here");
}
