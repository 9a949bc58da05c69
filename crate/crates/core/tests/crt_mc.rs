use rand::Rng;
use stabletree::crt::*;
use stabletree::sampler::RngStream;
use stabletree::stats::*;
use stabletree::Exec;

fn trees(n: usize, count: usize, seed: u64) -> Vec<ExcursionGrid> {
    Exec::default().map(count, |k| {
        sample_normalized_excursion(n, &mut RngStream::new(seed, k as u64)).unwrap()
    })
}

#[test]
fn mean_height_is_stable_across_resolutions() {
    // E max of √2 × standard excursion = √2 · √(π/2)
    let target = std::f64::consts::PI.sqrt();
    let mut stats = vec![];
    for n in [1 << 14, 1 << 16] {
        let h: Vec<f64> = trees(n, 1000, 21).iter().map(|g| g.height()).collect();
        let (m, se) = (mean(&h), std_error(&h));
        assert!((m - target).abs() <= 3.0 * se, "n={n}: {m} ± {se}");
        stats.push((m, se));
    }
    let ((m1, s1), (m2, s2)) = (stats[0], stats[1]);
    assert!((m1 - m2).abs() <= 3.0 * (s1 * s1 + s2 * s2).sqrt());
}

#[test]
fn distance_is_a_pseudo_metric() {
    let g = sample_normalized_excursion(1 << 14, &mut RngStream::new(22, 0)).unwrap();
    let mut rng = RngStream::new(22, 1).next_rng();
    for _ in 0..10_000 {
        let [a, b, c]: [usize; 3] = std::array::from_fn(|_| rng.random_range(0..=g.n()));
        let (ab, bc, ac) = (
            tree_distance(&g, a, b).unwrap(),
            tree_distance(&g, b, c).unwrap(),
            tree_distance(&g, a, c).unwrap(),
        );
        assert!(ab >= 0.0 && ab == tree_distance(&g, b, a).unwrap());
        assert!(ac <= ab + bc + 1e-12);
    }
}

#[test]
fn profiles_are_monotone_and_saturate() {
    let g = sample_normalized_excursion(1 << 13, &mut RngStream::new(23, 0)).unwrap();
    let radii: Vec<f64> = (0..=60).map(|i| 0.05 * i as f64).collect();
    for t in [0, 100, 4000, 8000] {
        let p = ball_profile(&g, t, &radii).unwrap();
        assert!(p.masses.windows(2).all(|w| w[0] <= w[1]));
        assert!(p.masses.iter().all(|m| (0.0..=1.0).contains(m)));
        let full = g.heights()[t] + g.height() + 1e-12;
        assert_eq!(ball_mass(&g, t, full).unwrap(), 1.0);
    }
}

#[test]
fn ball_mass_survives_refinement_at_the_resolution_limit() {
    let n = 1 << 12;
    let r = 8.0 / n as f64;
    for k in 0..10 {
        let fine = sample_normalized_excursion(4 * n, &mut RngStream::new(24, k)).unwrap();
        let coarse = fine.coarsen(4).unwrap();
        for t in (0..n).step_by(61) {
            let d = (ball_mass(&coarse, t, r).unwrap() - ball_mass(&fine, 4 * t, r).unwrap()).abs();
            assert!(d <= 2.0 / n as f64 + 1e-15, "tree {k} center {t}: {d}");
        }
    }
}

#[test]
fn local_time_mean_under_height_conditioning() {
    // Under N the lifetime has density ∝ ζ^{-3/2} and, given ζ, H is the
    // normalized excursion rescaled by (ζ, √ζ). N(ℓ^1) = 1 and N(sup H > 1) = 1,
    // so E[ℓ^1 | sup H > 1] = 1. Lifetimes below 0.05 essentially never reach
    // height 1 and are skipped.
    let mut rng = RngStream::new(25, 1_000_000).next_rng();
    let mut s = RngStream::new(25, 0);
    let mut lt = vec![];
    while lt.len() < 2000 {
        let u: f64 = rng.random::<f64>().max(1e-300);
        let sz = 0.05f64.sqrt() / u;
        let g = sample_normalized_excursion(1 << 14, &mut s).unwrap();
        if sz * g.height() > 1.0 {
            let a = 1.0 / sz;
            lt.push(sz * occupation_local_time(&g, a, (0.1 / sz).min(0.99 * a)).unwrap());
        }
    }
    let m = mean(&lt);
    assert!((m - 1.0).abs() <= 0.25, "{m}");
}

#[test]
fn high_excursion_counts_are_poisson_given_local_time() {
    let (a, eps, eps_lt) = (0.5, 0.1, 0.05);
    let data: Vec<(f64, usize)> = trees(1 << 14, 4000, 26)
        .iter()
        .map(|g| {
            (
                occupation_local_time(g, a, eps_lt).unwrap(),
                count_high_excursions(g, a, eps).unwrap(),
            )
        })
        .collect();
    let mut checked = 0;
    for b in 0..40 {
        let (lo, hi) = (0.1 * b as f64, 0.1 * (b + 1) as f64);
        let z: Vec<f64> = data
            .iter()
            .filter(|(l, _)| *l >= lo && *l < hi)
            .map(|(_, z)| *z as f64)
            .collect();
        if z.len() >= 100 {
            let ratio = variance(&z) / mean(&z);
            assert!((ratio - 1.0).abs() <= 0.3, "bucket [{lo}, {hi}): {ratio}");
            checked += 1;
        }
    }
    assert!(checked >= 5);
}
