//! Property tests for the exact set algebra, checked against the
//! brute-force oracles in `common`.

mod common;

use common::{brute_enumerate, brute_member, brute_sumset, win};
use mincomp::setalg::{
    complement_positive, exact_set_eq, normalize, point_delete, sumset, ApComponent, IntSetExpr,
    Window,
};
use mincomp::Int;
use proptest::prelude::*;

fn arb_component() -> impl Strategy<Value = ApComponent> {
    prop_oneof![
        prop::collection::vec(-50i64..=50, 1..=6).prop_map(ApComponent::finite),
        (-50i64..=50, 1i64..=6).prop_map(|(a, s)| ApComponent::up_ray(a, s)),
        (-50i64..=50, 1i64..=6).prop_map(|(a, s)| ApComponent::down_ray(a, s)),
        (-50i64..=50, 1i64..=6).prop_map(|(r, s)| ApComponent::line(r, s)),
    ]
}

fn arb_exact() -> impl Strategy<Value = IntSetExpr> {
    prop::collection::vec(arb_component(), 1..=4)
        .prop_map(|cs| IntSetExpr::from_components(cs).expect("valid components"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Normal forms denote the same set and are idempotent.
    #[test]
    fn normal_form_round_trip(s in arb_exact()) {
        let n = normalize(&s).unwrap();
        for (lo, hi) in [(-120i64, 120i64), (-7, 7), (200, 260)] {
            let expect = brute_enumerate(&s, lo, hi);
            let got = n.enumerate(&win(lo, hi)).unwrap();
            prop_assert_eq!(got, expect, "window [{}, {}]", lo, hi);
        }
        let again = normalize(&n).unwrap();
        prop_assert_eq!(n.parts(), again.parts());
    }

    /// Adding members the set already has never changes the normal form.
    #[test]
    fn normal_form_is_canonical_under_redundancy(s in arb_exact()) {
        let base = normalize(&s).unwrap();
        let members = brute_enumerate(&s, -40, 40);
        prop_assume!(!members.is_empty());
        let redundant = s.clone().union(ApComponent::Finite(members).into());
        let renormalized = normalize(&redundant).unwrap();
        prop_assert_eq!(base.parts(), renormalized.parts());
        prop_assert!(exact_set_eq(&s, &redundant).unwrap());
    }

    /// Symbolic sumsets agree with brute-force pairwise sums.
    #[test]
    fn sumset_matches_brute_force(a in arb_exact(), b in arb_exact()) {
        let s = sumset(&a, &b).unwrap();
        let target = win(-100, 100);
        let got = s.enumerate(&target).unwrap();
        let expect = brute_sumset(&a, &b, &target, 160);
        prop_assert_eq!(got, expect);
    }

    /// `enumerate(ℤ⁺ ∖ s, [1, B]) = [1, B] ∖ enumerate(s, [1, B])`.
    #[test]
    fn complement_positive_de_morgan(s in arb_exact()) {
        let c = complement_positive(&s).unwrap();
        for b in [100i64, 10_000] {
            let members = c.enumerate(&win(1, b)).unwrap();
            let expect: Vec<Int> = (1..=b)
                .map(Int::from)
                .filter(|n| !brute_member(&s, n))
                .collect();
            prop_assert_eq!(members, expect, "B = {}", b);
        }
    }

    /// Point deletion stays in the class and removes exactly one member.
    #[test]
    fn point_delete_closure(s in arb_exact(), n in -60i64..=60) {
        let n = Int::from(n);
        let (d, was) = point_delete(&s, &n).unwrap();
        prop_assert_eq!(was, brute_member(&s, &n));
        for (lo, hi) in [(-90i64, 90i64), (150, 210)] {
            let expect: Vec<Int> = brute_enumerate(&s, lo, hi)
                .into_iter()
                .filter(|x| x != &n)
                .collect();
            prop_assert_eq!(d.enumerate(&win(lo, hi)).unwrap(), expect);
        }
        // the result re-normalizes without loss
        prop_assert!(exact_set_eq(&d, &normalize(&d).unwrap()).unwrap());
    }

    /// Windowed membership of expressions matches the oracle everywhere.
    #[test]
    fn member_matches_oracle(s in arb_exact(), n in -200i64..=200) {
        let n = Int::from(n);
        prop_assert_eq!(s.member(&n), brute_member(&s, &n));
    }
}

#[test]
fn power_family_membership_agrees_with_block_computation() {
    // logarithmic sample up to p⁶⁰ against direct block arithmetic
    for f in [
        mincomp::reference::dyadic_band_family(),
        mincomp::reference::decade_band_family(),
    ] {
        let e: IntSetExpr = f.clone().into();
        for k in (0u32..=60).step_by(3) {
            let base = f.base.pow(k);
            for off in [-9i64, -1, 0, 1, 8, 9, 10] {
                let n = &base + Int::from(off);
                assert_eq!(
                    e.member(&n),
                    brute_member(&e, &n),
                    "family {f}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn document_round_trip_for_random_exprs() {
    use mincomp::setalg::{parse_set_document, set_to_document};
    let mut rng = mincomp::sampling::rng(42);
    for _ in 0..200 {
        let e = mincomp::sampling::random_exact_expr(&mut rng, 4, 6, 50);
        let doc = set_to_document(&e).unwrap();
        let parsed = parse_set_document(&doc).unwrap();
        assert_eq!(&e, &parsed);
        assert_eq!(set_to_document(&parsed).unwrap(), doc);
    }
    // families round trip too
    let fam: IntSetExpr = mincomp::reference::dyadic_band_family().into();
    let doc = set_to_document(&fam).unwrap();
    assert_eq!(parse_set_document(&doc).unwrap(), fam);
}

#[test]
fn window_sumset_positive_only_members_are_sound() {
    // every reported member really is a sum, and within the window the
    // report matches brute force for these operands
    let family: IntSetExpr = mincomp::reference::dyadic_band_family().into();
    let finite: IntSetExpr = ApComponent::finite((0..=9).map(|i| -10 * i).collect::<Vec<_>>()).into();
    let target = win(0, 50);
    let ws = mincomp::setalg::window_sumset(&finite, &family, &target).unwrap();
    let expect = brute_sumset(&finite, &family, &target, 200);
    assert_eq!(ws.members, expect);
}
