use openmirror::catalog;
use openmirror::linalg;
use openmirror::mirror::{a_series, build_mirror_map, corrections, invariants_in_flat};
use openmirror::series::invert_diagonal_map;
use openmirror::{rat, ratio, ExtExponent, Grading, Rational, TruncatedSeries};

#[test]
fn table_two_closed_forms() {
    for g in catalog::all_geometries(5) {
        let grading = g.default_grading(None).unwrap();
        let order = 5 * grading.weights().iter().max().unwrap();
        let classes = g.enumerate_effective(&grading, order).unwrap();
        for i in 1..=g.r() {
            let a = a_series(&g, i, &grading, order).unwrap();
            for beta in classes.iter().filter(|b| b.iter().any(|&x| x != 0)) {
                let expected = catalog::table_a(&g, i, beta).unwrap();
                assert_eq!(a.get(&ExtExponent::closed(beta.clone())), expected, "{} A{i} {beta:?}", g.name);
            }
        }
    }
}

#[test]
fn local_p2_closed_map() {
    let g = catalog::kp2();
    let b = catalog::branes(&g).remove(0);
    let grading = Grading::new(vec![1, 1]).unwrap();
    let s = corrections(&g, &b, 0, &grading, 3).unwrap();
    let got: Vec<Rational> = (1..=3).map(|d| s[1].get(&ExtExponent::closed(vec![d]))).collect();
    assert_eq!(got, vec![rat(-6), rat(45), rat(-560)]);
}

#[test]
fn conifold_invariants_are_dilogarithms() {
    let (g, b) = catalog::phase("conifold", "I").unwrap();
    let grading = g.default_grading(Some(&b)).unwrap();
    let flat = invariants_in_flat(&g, &b, 0, &grading, 16).unwrap();
    for m in 1..=8i64 {
        assert_eq!(flat.get(&ExtExponent::new(m, vec![0])), ratio(1, m * m));
        assert_eq!(flat.get(&ExtExponent::new(-m, vec![m])), ratio(1, m * m));
    }
    assert!(flat.terms().all(|(e, _)| e.d[0] == 0 || e.w == -e.d[0]));
}

#[test]
fn inversion_round_trips() {
    for (g, b) in catalog::all_phases(3) {
        let grading = g.default_grading(Some(&b)).unwrap();
        let map = build_mirror_map(&g, &b, 1, &grading, 8)
            .unwrap_or_else(|e| panic!("{} {}: {e}", g.name, b.label));
        for (a, fwd) in map.forward().unwrap().iter().enumerate() {
            let id = fwd.rescale_variables(&map.inverse_units).unwrap();
            assert_eq!(id, TruncatedSeries::variable(grading.clone(), 8, a), "{} {}", g.name, b.label);
        }
    }
}

#[test]
fn lagrange_inversion_oracle() {
    // Q = q exp(c q) inverts to q = sum_n (-c n)^(n-1) / n! Q^n.
    let grading = Grading::uniform(1);
    for c in [1i64, -2, 3] {
        let s0 = TruncatedSeries::zero(grading.clone(), 6);
        let s1 = TruncatedSeries::variable(grading.clone(), 6, 1).scale(&rat(c));
        let q = &invert_diagonal_map(&[s0, s1]).unwrap()[1];
        for n in 1..=6i64 {
            let fact: i64 = (1..=n).product();
            let expected = Rational::from_integer((-c * n).pow((n - 1) as u32).into()) / rat(fact);
            assert_eq!(q.get(&ExtExponent::new(0, vec![n])), expected);
        }
    }
}

/// `S0` assembled through an invertible minor of the charge matrix on the rays with
/// nonzero `A_i`.
#[test]
fn open_correction_through_charge_minor() {
    for (g, b) in catalog::all_phases(4) {
        let grading = g.default_grading(Some(&b)).unwrap();
        let order = 6;
        let s = corrections(&g, &b, 2, &grading, order).unwrap();
        let live: Vec<usize> = (1..=g.r())
            .filter(|&i| !a_series(&g, i, &grading, order).unwrap().is_zero())
            .collect();
        if live.is_empty() {
            assert!(s[0].is_zero());
            continue;
        }
        // First rows that make the minor invertible.
        let mut rows: Vec<usize> = Vec::new();
        for a in 0..g.k() {
            let mut trial = rows.clone();
            trial.push(a);
            let m: Vec<Vec<i64>> = trial.iter().map(|&a| live.iter().map(|&i| g.charge[a][i - 1]).collect()).collect();
            if linalg::rank(&m) == trial.len() {
                rows = trial;
            }
            if rows.len() == live.len() {
                break;
            }
        }
        assert_eq!(rows.len(), live.len(), "{} {}", g.name, b.label);
        let minor: Vec<Vec<i64>> = rows.iter().map(|&a| live.iter().map(|&i| g.charge[a][i - 1]).collect()).collect();
        let inv = linalg::inverse(&minor).unwrap();
        let l0 = b.l0(g.r(), 2);
        let mut s0 = TruncatedSeries::zero(grading.clone(), order);
        for (j, &i) in live.iter().enumerate() {
            for (col, &a) in rows.iter().enumerate() {
                let c = rat(l0[i - 1]) * &inv[j][col];
                s0 = s0.add(&s[a + 1].scale(&c)).unwrap();
            }
        }
        assert_eq!(s0, s[0], "{} {}", g.name, b.label);
    }
}
