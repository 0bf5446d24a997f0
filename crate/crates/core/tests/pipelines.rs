use openmirror::amodel::f_q;
use openmirror::bmodel::{c_coeff, w0_series};
use openmirror::catalog;
use openmirror::{rat, ExtExponent, Rational};

fn factorial(n: i64) -> Rational {
    (1..=n).fold(rat(1), |acc, m| acc * rat(m))
}

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

#[test]
fn fixtures_agree_with_superpotential() {
    for g in catalog::all_geometries(5) {
        for fx in catalog::fixtures(&g) {
            let pts = catalog::sweep_points(&g, &fx.brane, 3, 5, 2, 1).unwrap();
            for f in -2..=2 {
                let div = catalog::first_divergence(&g, &fx, f, &pts, false).unwrap();
                assert_eq!(div, None, "{} {}", g.name, fx.phase);
            }
        }
    }
}

#[test]
fn perturbed_fixture_is_caught() {
    let g = catalog::kp2();
    let fx = catalog::fixtures(&g).remove(0);
    let pts = catalog::sweep_points(&g, &fx.brane, 2, 4, 1, 1).unwrap();
    let div = catalog::first_divergence(&g, &fx, 0, &pts, true).unwrap().unwrap();
    assert_eq!(div.table, div.computed + rat(1));
}

#[test]
fn a_model_equals_b_model() {
    for (g, b) in catalog::all_phases(4) {
        let grading = g.default_grading(Some(&b)).unwrap();
        for f in [-2, 0, 2] {
            let w0 = w0_series(&g, &b, f, &grading, 6).unwrap();
            assert_eq!(f_q(&g, &b, f, &grading, 6).unwrap(), w0, "{} {} f={f}", g.name, b.label);
        }
    }
}

#[test]
fn inner_brane_zero_framing() {
    let (g, b) = catalog::phase("KP2", "I").unwrap();
    for w in -9..=9i64 {
        for d in 0..=9i64 {
            if w == 0 || w + d < 0 {
                continue;
            }
            let expected = sign(d) * factorial(w + 3 * d - 1)
                / (rat(w) * factorial(w + d) * factorial(d) * factorial(d));
            let e = ExtExponent::new(w, vec![d]);
            assert_eq!(c_coeff(&g, &b, 0, &e).unwrap(), expected, "({w},{d})");
        }
    }
}

#[test]
fn outer_brane_zero_framing() {
    let (g, b) = catalog::phase("KP2", "III").unwrap();
    for w in 1..=9i64 {
        for d in 0..=w / 3 {
            let expected = sign(d) * factorial(w - d - 1)
                / (rat(w) * factorial(d) * factorial(d) * factorial(w - 3 * d));
            let e = ExtExponent::new(w, vec![d]);
            assert_eq!(c_coeff(&g, &b, 0, &e).unwrap(), expected, "({w},{d})");
        }
    }
}

#[test]
fn conifold_superpotential_is_dilogarithm() {
    let (g, b) = catalog::phase("conifold", "I").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    let w0 = w0_series(&g, &b, 0, &grading, 8).unwrap();
    for (e, c) in w0.terms() {
        let m = if e.d[0] == 0 { e.w } else { e.d[0] };
        assert!(e.d[0] == 0 || e.w == -e.d[0], "unexpected term {e}");
        assert_eq!(c, &(rat(1) / rat(m * m)));
    }
}
