mod common;

use common::{arb_fn, q};
use hnf_core::corpus::named;
use hnf_core::{
    add_const, cauchy_limit, density_approx, finite_envelopes, h_inf2, h_sup2, interpose, is_continuous,
    order_ball_check, rho, sub, within_band, Error, ExtReal, PiecewiseFn, Rational, Verdict,
};
use proptest::prelude::*;

fn tol() -> Rational {
    q(1, 1_000_000_000)
}

fn fin(e: &ExtReal) -> Rational {
    e.finite().unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn metric_axioms(f in arb_fn(), g in arb_fn(), h in arb_fn()) {
        let t = tol();
        let ff = rho(&f, &f, &t)?;
        prop_assert!(ff.is_exact() && ff.lo == ExtReal::zero());
        let fg = rho(&f, &g, &t)?;
        prop_assert_eq!(&fg, &rho(&g, &f, &t)?);
        let gh = rho(&g, &h, &t)?;
        let fh = rho(&f, &h, &t)?;
        prop_assert!(fin(&fh.lo) <= fin(&fg.hi) + fin(&gh.hi));
        for e in [&fg, &gh, &fh] {
            prop_assert!(e.lo >= ExtReal::zero() && e.hi <= ExtReal::from_int(1));
            prop_assert!(fin(&e.hi) - fin(&e.lo) <= t);
        }
    }

    #[test]
    fn order_ball_verdicts_agree(f in arb_fn(), g in arb_fn(), k in 0usize..4) {
        let eps = [q(1, 10), q(1, 4), q(1, 2), q(3, 4)][k].clone();
        let b = order_ball_check(&f, &g, &eps, &tol())?;
        prop_assert!(b.agree(), "{b:?}");
    }

    #[test]
    fn lattice_absorption(f in arb_fn(), g in arb_fn()) {
        match h_inf2(&f, &g) {
            Ok(m) => {
                prop_assert!(h_sup2(&f, &m)?.equals(&f)?);
                prop_assert!(m.leq(&f)? && m.leq(&g)?);
                let j = h_sup2(&f, &g)?;
                prop_assert!(f.leq(&j)? && g.leq(&j)?);
            }
            Err(Error::NonRepresentablePoint(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn envelopes_pinch(f in arb_fn(), n in 2usize..5) {
        // f + 2^-k converges to f with modulus 2^-k / (1 + 2^-k) <= 2^-k
        let fs: Vec<PiecewiseFn> = (0..n).map(|k| add_const(&f, &q(1, 1 << k)).unwrap()).collect();
        let moduli: Vec<Rational> = (0..n).map(|k| q(1, 1 << k) / (q(1, 1) + q(1, 1 << k))).collect();
        let (phis, psis) = finite_envelopes(&fs)?;
        let zero = f.constant_like(q(0, 1));
        for k in 0..n {
            prop_assert!(phis[k].leq(&fs[k])? && fs[k].leq(&psis[k])?);
            let gap = sub(&psis[k], &phis[k])?;
            prop_assert!(zero.leq(&gap)?);
            if k + 1 < n {
                prop_assert!(phis[k].leq(&phis[k + 1])?);
                prop_assert!(phis[k + 1].leq(&psis[k + 1])?);
                prop_assert!(psis[k + 1].leq(&psis[k])?);
            }
        }
        let lim = cauchy_limit(&fs, &moduli, &tol())?;
        let direct = rho(&lim.limit, &f, &tol())?;
        prop_assert!(direct.hi <= lim.bound.hi);
    }

    #[test]
    fn density_approximation(f in arb_fn(), n in 1u32..=10) {
        let g = density_approx(&f, n)?;
        let step = ExtReal::Finite(q(1, n.into()));
        let r = rho(&f, &g, &tol())?;
        prop_assert!(r.hi <= step);
        let exceptional: Vec<Rational> = f
            .breakpoints()
            .iter()
            .zip(f.values())
            .filter(|(_, v)| v.width() >= step || v.touches_infinity())
            .map(|(b, _)| b.clone())
            .collect();
        prop_assert!(within_band(&f, &g, n, &exceptional)?);
        for (b, v) in g.breakpoints().iter().zip(g.values()) {
            if !exceptional.contains(b) {
                prop_assert!(v.is_point() && v.is_finite());
            }
        }
    }

    #[test]
    fn interposition(f in arb_fn(), gap in 0i64..3) {
        // u = f, l = f + gap; both finite corpus members only
        prop_assume!(f.is_finite());
        let l = add_const(&f, &q(gap, 1))?;
        match interpose(&f, &l) {
            Ok(h) => {
                prop_assert!(is_continuous(&h));
                prop_assert!(upper(&f).leq(&h)? && h.leq(&lower(&l))?);
            }
            Err(Error::SandwichViolated(_)) => {
                prop_assert!(!upper(&f).leq(&lower(&l))?);
            }
            Err(Error::BridgingFailed(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

fn upper(u: &PiecewiseFn) -> PiecewiseFn {
    let vals = u.values().iter().map(|v| hnf_core::XInterval::point(v.hi().clone())).collect();
    PiecewiseFn::build(u.breakpoints().to_vec(), vals, u.segments().to_vec()).unwrap()
}

fn lower(l: &PiecewiseFn) -> PiecewiseFn {
    let vals = l.values().iter().map(|v| hnf_core::XInterval::point(v.lo().clone())).collect();
    PiecewiseFn::build(l.breakpoints().to_vec(), vals, l.segments().to_vec()).unwrap()
}

#[test]
fn metric_examples() {
    let t = tol();
    let zero = named::x().constant_like(q(0, 1));
    let one = named::x().constant_like(q(1, 1));
    let r = rho(&zero, &one, &t).unwrap();
    assert!(r.is_exact() && r.lo == ExtReal::Finite(q(1, 2)));
    assert_eq!(rho(&zero, &named::inv_x_sq(), &t).unwrap().lo, ExtReal::from_int(1));
    let b = order_ball_check(&zero, &one, &q(1, 2), &t).unwrap();
    assert_eq!([b.by_metric, b.by_difference, b.by_sandwich], [Verdict::False; 3]);
}

#[test]
fn interposition_through_a_jump() {
    let sign = named::sign();
    let l = add_const(&sign, &q(2, 1)).unwrap();
    let h = interpose(&sign, &l).unwrap();
    assert!(is_continuous(&h));
    assert!(upper(&sign).leq(&h).unwrap() && h.leq(&lower(&l)).unwrap());
    let x = named::x();
    assert_eq!(interpose(&x, &x).unwrap(), x);
}
