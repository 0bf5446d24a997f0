use proptest::prelude::*;

use super::*;
use crate::{rat, ratio, Rational};

fn g1() -> Grading {
    Grading::new(vec![1, 1]).unwrap()
}

fn e(w: i64, d: &[i64]) -> ExtExponent {
    ExtExponent::new(w, d.to_vec())
}

fn q1(order: i64) -> TruncatedSeries {
    TruncatedSeries::variable(g1(), order, 1)
}

fn poly(order: i64, terms: &[((i64, i64), i64)]) -> TruncatedSeries {
    TruncatedSeries::from_terms(g1(), order, terms.iter().map(|&((w, d), c)| (e(w, &[d]), rat(c))))
}

#[test]
fn difference_of_squares() {
    let one = TruncatedSeries::one(g1(), 4);
    let a = one.add(&q1(4)).unwrap();
    let b = one.sub(&q1(4)).unwrap();
    assert_eq!(a.mul(&b).unwrap(), poly(4, &[((0, 0), 1), ((0, 2), -1)]));
}

#[test]
fn product_takes_min_order() {
    let a = TruncatedSeries::one(g1(), 5);
    let b = TruncatedSeries::one(g1(), 3);
    assert_eq!(a.mul(&b).unwrap().order(), 3);
    assert_eq!(q1(5).mul(&a).unwrap(), q1(5));
}

#[test]
fn grading_mismatch_is_an_error() {
    let other = TruncatedSeries::one(Grading::new(vec![1, 2]).unwrap(), 3);
    assert!(matches!(q1(3).add(&other), Err(crate::Error::GradingMismatch(..))));
}

#[test]
fn exp_of_variable() {
    let s = q1(3).exp().unwrap();
    let expected = TruncatedSeries::from_terms(
        g1(),
        3,
        [
            (e(0, &[0]), rat(1)),
            (e(0, &[1]), rat(1)),
            (e(0, &[2]), ratio(1, 2)),
            (e(0, &[3]), ratio(1, 6)),
        ],
    );
    assert_eq!(s, expected);
    assert_eq!(TruncatedSeries::zero(g1(), 3).exp().unwrap(), TruncatedSeries::one(g1(), 3));
}

#[test]
fn exp_quadratic_coefficient() {
    let (a, b) = (ratio(3, 5), ratio(-7, 2));
    let s = TruncatedSeries::from_terms(g1(), 4, [(e(0, &[1]), a.clone()), (e(0, &[2]), b.clone())]);
    let c = s.exp().unwrap().coeff(&e(0, &[2])).unwrap();
    assert_eq!(c, &b + &a * &a / rat(2));
}

#[test]
fn exp_rejects_grade_zero() {
    let s = TruncatedSeries::one(g1(), 3);
    assert!(matches!(s.exp(), Err(crate::Error::Domain(_))));
    let t = poly(3, &[((-1, 1), 1)]);
    assert!(matches!(t.log1p(), Err(crate::Error::Domain(_))));
}

#[test]
fn substitution_scales() {
    let s = poly(4, &[((0, 0), 1), ((0, 2), 1)]);
    let images = vec![
        TruncatedSeries::variable(g1(), 4, 0),
        q1(4).scale(&rat(2)),
    ];
    assert_eq!(s.substitute(&images).unwrap(), poly(4, &[((0, 0), 1), ((0, 2), 4)]));
    let identity = vec![TruncatedSeries::variable(g1(), 4, 0), q1(4)];
    assert_eq!(s.substitute(&identity).unwrap(), s);
}

#[test]
fn substitution_rejects_lowering_images() {
    let g = Grading::new(vec![1, 2]).unwrap();
    let s = TruncatedSeries::variable(g.clone(), 4, 1);
    let images = vec![
        TruncatedSeries::variable(g.clone(), 4, 0),
        TruncatedSeries::variable(g, 4, 0),
    ];
    assert!(matches!(s.substitute(&images), Err(crate::Error::Domain(_))));
}

#[test]
fn substitution_with_negative_exponents() {
    // q0^-1 q1 with q0 -> q0 (1 + q1), q1 -> q1
    let s = poly(4, &[((-1, 1), 1)]);
    let images = vec![
        poly(6, &[((1, 0), 1), ((1, 1), 1)]),
        q1(6),
    ];
    let out = s.substitute(&images).unwrap();
    assert_eq!(out.order(), 4);
    let expected = poly(4, &[((-1, 1), 1), ((-1, 2), -1), ((-1, 3), 1), ((-1, 4), -1), ((-1, 5), 1)]);
    assert_eq!(out, expected);
}

#[test]
fn coeff_contract() {
    let s = poly(3, &[((0, 0), 1), ((0, 2), -1)]);
    assert_eq!(s.coeff(&e(0, &[2])).unwrap(), rat(-1));
    assert_eq!(s.coeff(&e(0, &[1])).unwrap(), rat(0));
    assert!(matches!(s.coeff(&e(0, &[4])), Err(crate::Error::OutOfRange { .. })));
}

#[test]
fn theta_on_logs_and_monomials() {
    let g = Grading::new(vec![1, 1, 1]).unwrap();
    let l1 = LogSeries::log_var(g.clone(), 5, 1);
    assert_eq!(l1.theta(1), LogSeries::from_series(TruncatedSeries::one(g.clone(), 5)));
    assert!(l1.theta(0).is_zero());
    let m = TruncatedSeries::monomial(g.clone(), 5, ExtExponent::new(0, vec![2, 1]), rat(1));
    let t = LogSeries::from_series(m.clone()).theta(1);
    assert_eq!(t, LogSeries::from_series(m.scale(&rat(2))));
}

#[test]
fn identity_inversion() {
    let zero = TruncatedSeries::zero(g1(), 6);
    let q = invert_diagonal_map(&[zero.clone(), zero]).unwrap();
    assert_eq!(q[0], TruncatedSeries::variable(g1(), 6, 0));
    assert_eq!(q[1], q1(6));
}

/// Lagrange inversion of q e^{cq} = Q.
#[test]
fn lagrange_oracle() {
    for c in [1i64, -2, 3] {
        let s0 = TruncatedSeries::zero(g1(), 6);
        let s1 = q1(6).scale(&rat(c));
        let q = invert_diagonal_map(&[s0, s1]).unwrap();
        let mut expected = TruncatedSeries::zero(g1(), 6);
        let mut fact = rat(1);
        for n in 1..=6i64 {
            fact *= rat(n);
            let coeff = num_traits::pow(rat(n), (n - 1) as usize)
                * num_traits::pow(rat(-c), (n - 1) as usize)
                / &fact;
            expected = expected
                .add(&TruncatedSeries::monomial(g1(), 6, e(0, &[n]), coeff))
                .unwrap();
        }
        assert_eq!(q[1], expected);
        assert_eq!(q[1].coeff(&e(0, &[3])).unwrap(), ratio(3 * c * c, 2));
    }
}

fn arb_series(k: usize, order: i64, min_grade: i64) -> impl Strategy<Value = TruncatedSeries> {
    let g = Grading::uniform(k);
    prop::collection::vec(
        (prop::collection::vec(0i64..4, k + 1), -5i64..6, 1i64..4),
        0..6,
    )
    .prop_map(move |terms| {
        TruncatedSeries::from_terms(
            g.clone(),
            order,
            terms
                .into_iter()
                .map(|(v, p, q)| (ExtExponent::from_slice(&v), ratio(p, q)))
                .filter(|(x, _)| Grading::uniform(x.k()).grade(x) >= min_grade),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in arb_series(2, 5, 0), b in arb_series(2, 5, 0), c in arb_series(2, 5, 0)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn exp_log_inverse(s in arb_series(2, 5, 1)) {
        let one = TruncatedSeries::one(s.grading().clone(), s.order());
        let e = s.exp().unwrap();
        prop_assert_eq!(e.sub(&one).unwrap().log1p().unwrap(), s.clone());
        prop_assert_eq!(s.log1p().unwrap().exp().unwrap(), one.add(&s).unwrap());
    }

    #[test]
    fn theta_of_exp(s in arb_series(2, 5, 1), var in 0usize..3) {
        let e = s.exp().unwrap();
        let lhs = e.theta(var).truncate(s.order() - 1);
        let rhs = e.mul(&s.theta(var)).unwrap().truncate(s.order() - 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn recip_is_inverse(s in arb_series(2, 5, 1), c in 1i64..5) {
        let u = TruncatedSeries::constant(s.grading().clone(), s.order(), rat(c)).add(&s).unwrap();
        prop_assert_eq!(u.mul(&u.recip().unwrap()).unwrap(), TruncatedSeries::one(s.grading().clone(), s.order()));
    }

    #[test]
    fn inversion_round_trip(s1 in arb_series(2, 5, 1), s2 in arb_series(2, 5, 1), s0 in arb_series(2, 5, 1)) {
        let closed = |s: TruncatedSeries| s.filter(|e| e.w == 0);
        let corr = vec![closed(s0), closed(s1), closed(s2)];
        let q = invert_diagonal_map(&corr).unwrap();
        let fwd = forward_diagonal_map(&corr).unwrap();
        for (a, f) in fwd.iter().enumerate() {
            let back = f.substitute(&q).unwrap();
            prop_assert_eq!(back, TruncatedSeries::variable(f.grading().clone(), 5, a));
        }
    }
}

#[test]
fn log_series_linear() {
    let g = g1();
    let a = LogSeries::log_var(g.clone(), 4, 1);
    let b = LogSeries::from_series(q1(4));
    let s = a.add(&b).unwrap();
    assert_eq!(s.sub(&b).unwrap(), a);
    assert_eq!(s.scale(&Rational::from_integer(0.into())), LogSeries::zero(g, 4));
}
