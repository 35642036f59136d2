mod common;

use common::{arb_fn, q, sample_points};
use hnf_core::corpus;
use hnf_core::{
    h_extract, h_members_sample, is_h_continuous, is_quasi_minimal, is_s_continuous, pointwise_add,
    pointwise_mul, Error, ExtReal, PiecewiseFn, XInterval,
};
use proptest::prelude::*;

fn widened(v: &XInterval) -> Option<XInterval> {
    let one = ExtReal::from_int(1);
    let lo = match v.lo() {
        ExtReal::Finite(a) => ExtReal::Finite(a - one.finite().unwrap()),
        e => e.clone(),
    };
    let hi = match v.hi() {
        ExtReal::Finite(b) => ExtReal::Finite(b + one.finite().unwrap()),
        e => e.clone(),
    };
    let w = XInterval::new(lo, hi).unwrap();
    (&w != v).then_some(w)
}

fn disjoint(v: &XInterval) -> Option<XInterval> {
    match (v.lo(), v.hi()) {
        (_, ExtReal::Finite(b)) => Some(XInterval::rational(b + q(1, 1))),
        (ExtReal::Finite(a), _) => Some(XInterval::rational(a - q(1, 1))),
        _ => None,
    }
}

fn with_value(f: &PiecewiseFn, i: usize, v: XInterval) -> PiecewiseFn {
    let mut vals = f.values().to_vec();
    vals[i] = v;
    PiecewiseFn::build(f.breakpoints().to_vec(), vals, f.segments().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_survives_refine_and_canon(f in arb_fn(), salt in any::<u64>()) {
        let pts = sample_points(1000, salt);
        let refined = f.refine_to(&pts[..5]);
        let canon = refined.canon();
        prop_assert_eq!(&canon, &f.canon());
        for x in &pts {
            let v = f.eval(x).unwrap();
            prop_assert_eq!(&refined.eval(x).unwrap(), &v);
            prop_assert_eq!(&canon.eval(x).unwrap(), &v);
        }
    }

    #[test]
    fn refine_pairs_share_breakpoints(f in arb_fn(), g in arb_fn()) {
        let (a, b) = hnf_core::refine(&f, &g).unwrap();
        prop_assert_eq!(a.breakpoints(), b.breakpoints());
        prop_assert!(a.equals(&f).unwrap() && b.equals(&g).unwrap());
    }

    #[test]
    fn breakpoint_values_are_minimal(f in arb_fn(), pick in any::<prop::sample::Index>()) {
        prop_assert!(is_h_continuous(&f));
        let i = pick.index(f.breakpoints().len());
        if let Some(w) = widened(&f.values()[i]) {
            let g = with_value(&f, i, w);
            prop_assert!(is_s_continuous(&g) && !is_h_continuous(&g));
        }
        if let Some(d) = disjoint(&f.values()[i]) {
            let g = with_value(&f, i, d);
            prop_assert!(!is_s_continuous(&g));
        }
    }

    #[test]
    fn order_is_a_partial_order(f in arb_fn(), g in arb_fn(), h in arb_fn()) {
        prop_assert!(f.leq(&f).unwrap());
        if f.leq(&g).unwrap() && g.leq(&f).unwrap() {
            prop_assert!(f.equals(&g).unwrap());
        }
        if f.leq(&g).unwrap() && g.leq(&h).unwrap() {
            prop_assert!(f.leq(&h).unwrap());
        }
        let lower = hnf_core::h_inf2(&f, &g);
        if let Ok(m) = lower {
            prop_assert!(m.leq(&f).unwrap() && m.leq(&g).unwrap());
        }
    }

    #[test]
    fn extraction_is_contained_and_idempotent(f in arb_fn(), g in arb_fn(), salt in any::<u64>()) {
        for raw in [pointwise_add(&f, &g).unwrap(), pointwise_mul(&f, &g).unwrap()] {
            prop_assert!(is_quasi_minimal(&raw).unwrap());
            let h = h_extract(&raw).unwrap();
            prop_assert!(is_h_continuous(&h));
            prop_assert!(h.is_subset_of(&raw).unwrap());
            for x in sample_points(1000, salt) {
                prop_assert!(h.eval(&x).unwrap().is_subset_of(&raw.eval(&x).unwrap()));
            }
            prop_assert_eq!(h_extract(&h).unwrap(), h);
        }
        prop_assert_eq!(h_extract(&f).unwrap(), f.canon());
    }
}

#[test]
fn deleting_values_then_extending_restores_the_corpus() {
    for f in corpus::standard(120) {
        let n = f.breakpoints().len();
        let g = PiecewiseFn::build_partial(f.breakpoints().to_vec(), vec![None; n], f.segments().to_vec())
            .unwrap();
        assert_eq!(g.canon(), f.canon());
        let h = PiecewiseFn::extend_dense(f.breakpoints().to_vec(), f.segments().to_vec()).unwrap();
        assert_eq!(h.canon(), f.canon());
    }
}

#[test]
fn quasi_minimality_matches_member_count() {
    let mut non_qm = 0;
    for g in corpus::s_continuous(11, 60) {
        let qm = is_quasi_minimal(&g).unwrap();
        let members = h_members_sample(&g).unwrap();
        assert_eq!(qm, members.len() == 1);
        for m in &members {
            assert!(is_h_continuous(m));
            assert!(m.is_subset_of(&g).unwrap());
        }
        if !qm {
            non_qm += 1;
            assert!(!members[0].equals(&members[1]).unwrap());
        }
    }
    assert!(non_qm >= 10, "corpus should contain wide functions, found {non_qm}");
}

#[test]
fn members_require_semicontinuity() {
    let sign = corpus::named::sign();
    let bad = with_value(&sign, 1, XInterval::rational(q(0, 1)));
    assert!(matches!(h_members_sample(&bad), Err(Error::NotSContinuous(_))));
}

#[test]
fn restriction_keeps_h_continuity() {
    let fs = corpus::standard(60);
    for (k, f) in fs.iter().enumerate() {
        let c = q((k % 5) as i64 - 3, 4);
        let d = &c + q(1 + (k % 3) as i64, 4);
        let r = f.restrict(&c, &d).unwrap();
        assert!(is_h_continuous(&r), "{f:?} on ({c},{d})");
        assert_eq!(r.domain(), (&c, &d));
    }
    let sign = corpus::named::sign();
    assert!(matches!(sign.restrict(&q(0, 1), &q(2, 1)), Err(Error::OutOfDomain { .. })));
}
