use proptest::prelude::*;
use stabletree::kappa::{kappa_brownian, kappa_zero_lambda, Kappa, KappaQuery, Mu};
use stabletree::StableIndex;

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

#[test]
fn brownian_grid_consistency() {
    let k = Kappa::new(StableIndex::brownian());
    let mut mus = vec![0.0];
    mus.extend(logspace(1e-3, 1e3, 19));
    let mut worst: f64 = 0.0;
    for &a in &logspace(1e-2, 10.0, 20) {
        for &l in &logspace(1e-3, 1e3, 20) {
            for &m in &mus {
                let q = KappaQuery::new(a, l, Mu::Finite(m)).unwrap();
                let got = k.solve(&q).unwrap();
                let exact = kappa_brownian(a, l, Mu::Finite(m)).unwrap();
                worst = worst.max(rel(got, exact));
            }
        }
    }
    assert!(worst <= 1e-10, "worst relative error {worst:e}");
}

#[test]
fn zero_lambda_grid_consistency() {
    for g in [1.1, 1.5, 1.9, 2.0] {
        let idx = StableIndex::new(g).unwrap();
        let k = Kappa::new(idx);
        for &a in &logspace(1e-2, 10.0, 12) {
            for &m in &logspace(1e-3, 1e3, 12) {
                let got = k.solve(&KappaQuery::new(a, 0.0, Mu::Finite(m)).unwrap()).unwrap();
                let exact = kappa_zero_lambda(idx, a, Mu::Finite(m)).unwrap();
                assert!(rel(got, exact) <= 1e-12, "γ={g} a={a} μ={m}: {got} vs {exact}");
            }
        }
    }
}

fn gamma_strategy() -> impl Strategy<Value = f64> {
    prop::sample::select(vec![1.2, 1.5, 1.8, 2.0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn semigroup(g in gamma_strategy(), a in 0.01f64..3.0, b in 0.01f64..3.0,
                 l in 1e-3f64..50.0, m in 0.0f64..10.0) {
        let k = Kappa::new(StableIndex::new(g).unwrap());
        let inner = k.solve(&KappaQuery::new(b, l, Mu::Finite(m)).unwrap()).unwrap();
        let lhs = k.solve(&KappaQuery::new(a + b, l, Mu::Finite(m)).unwrap()).unwrap();
        let rhs = k.solve(&KappaQuery::new(a, l, Mu::Finite(inner)).unwrap()).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn semigroup_from_infinity(g in gamma_strategy(), a in 0.01f64..3.0, b in 0.01f64..3.0, l in 1e-3f64..50.0) {
        let k = Kappa::new(StableIndex::new(g).unwrap());
        let inner = k.at_infinity(b, l).unwrap();
        let lhs = k.at_infinity(a + b, l).unwrap();
        let rhs = k.solve(&KappaQuery::new(a, l, Mu::Finite(inner)).unwrap()).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn scaling(g in gamma_strategy(), a in 0.01f64..3.0, c in 0.1f64..10.0,
               l in 1e-3f64..50.0, m in 0.0f64..10.0) {
        let idx = StableIndex::new(g).unwrap();
        let k = Kappa::new(idx);
        let ai = idx.alpha_inv();
        let lhs = c.powf(ai)
            * k.solve(&KappaQuery::new(a, c.powf(-g * ai) * l, Mu::Finite(c.powf(-ai) * m)).unwrap()).unwrap();
        let rhs = k.solve(&KappaQuery::new(a / c, l, Mu::Finite(m)).unwrap()).unwrap();
        prop_assert!(rel(lhs, rhs) <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn monotone_in_level(g in gamma_strategy(), a in 0.01f64..3.0, da in 0.01f64..1.0,
                         l in 0.1f64..20.0, ratio in 0.0f64..3.0) {
        let k = Kappa::new(StableIndex::new(g).unwrap());
        let s = l.powf(1.0 / g);
        let m = ratio * s;
        let k1 = k.solve(&KappaQuery::new(a, l, Mu::Finite(m)).unwrap()).unwrap();
        let k2 = k.solve(&KappaQuery::new(a + da, l, Mu::Finite(m)).unwrap()).unwrap();
        if m < s {
            prop_assert!(k1 <= k2 && k2 <= s);
            prop_assert!(k1 >= m);
        } else if m > s {
            prop_assert!(k1 >= k2 && k2 >= s);
            prop_assert!(k1 <= m);
        }
        let fixed = k.solve(&KappaQuery::new(a, l, Mu::Finite(s)).unwrap()).unwrap();
        prop_assert_eq!(fixed, s);
    }

    #[test]
    fn phi_bounds_and_monotonicity(g in gamma_strategy(), a in 0.1f64..3.0, b in 0.0f64..3.0,
                                   l in 0.0f64..100.0, dl in 0.01f64..10.0, db in 0.01f64..1.0) {
        let k = Kappa::new(StableIndex::new(g).unwrap());
        let p = k.phi(a, b, l).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(k.phi(a, b, l + dl).unwrap() <= p + 1e-12);
        prop_assert!(k.phi(a, b + db, l).unwrap() <= p + 1e-12);
    }
}
