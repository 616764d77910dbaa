use netmotifs::census::{ClassTable, MotifId, MotifSize};
use netmotifs::stability::{
    is_sign_stable, max_real_eigenvalue, sss_by_sign_enumeration, sss_monte_carlo, stability_class,
    structural_stability_score, violating_cycle, JacobianSample, StabilityClass,
};

fn sigma(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt().max(1.0 / n as f64)
}

#[test]
fn constructive_destabilization_of_every_rejected_triad_pattern() {
    for &m in ClassTable::get(MotifSize::Three).classes() {
        let adj = m.adjacency();
        let edges: Vec<_> = adj.edges().collect();
        for pattern in 0u32..(1 << edges.len()) {
            let signs: Vec<bool> = (0..edges.len()).map(|b| pattern & (1 << b) != 0).collect();
            let Some(cycle) = violating_cycle(&adj, &signs) else {
                continue;
            };
            let weights: Vec<f64> = edges
                .iter()
                .zip(&signs)
                .map(|(e, &s)| {
                    let mag = if cycle.contains(e) { 1e3 } else { 1e-3 };
                    if s { mag } else { -mag }
                })
                .collect();
            let j = JacobianSample::new(&adj, &weights);
            assert!(j.max_real_eigenvalue().unwrap() > 0.0, "motif {m} pattern {pattern:b}");
        }
    }
}

#[test]
fn accepted_sign_patterns_are_stable_for_random_magnitudes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for size in MotifSize::ALL {
        for &m in ClassTable::get(size).classes() {
            let adj = m.adjacency();
            let e = adj.edge_count() as usize;
            for pattern in 0u32..(1 << e) {
                let signs: Vec<bool> = (0..e).map(|b| pattern & (1 << b) != 0).collect();
                if !is_sign_stable(&adj, &signs) {
                    continue;
                }
                for _ in 0..3 {
                    let w: Vec<f64> = signs
                        .iter()
                        .map(|&s| {
                            let mag = 10f64.powf(rng.random_range(-3.0..3.0));
                            if s { mag } else { -mag }
                        })
                        .collect();
                    let lam = JacobianSample::new(&adj, &w).max_real_eigenvalue().unwrap();
                    assert!(lam < 0.0, "motif {m} pattern {pattern:b}: {lam}");
                }
            }
        }
    }
}

#[test]
fn closed_form_matches_enumeration_for_all_classes() {
    let mut seen = std::collections::BTreeSet::new();
    for size in MotifSize::ALL {
        for &m in ClassTable::get(size).classes() {
            let sss = structural_stability_score(m);
            assert_eq!(sss, sss_by_sign_enumeration(m));
            let mut allowed = vec![0.0];
            allowed.extend((0..=6).map(|i| 0.5f64.powi(i)));
            assert!(allowed.contains(&sss));
            assert_eq!(sss == 1.0, stability_class(m) == StabilityClass::I);
            seen.insert(stability_class(m));
        }
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn monte_carlo_bounds_and_monotonicity() {
    let n = 20_000;
    for &m in ClassTable::get(MotifSize::Three).classes() {
        let exact = structural_stability_score(m);
        let wide = sss_monte_carlo(m, n, (1e-3, 1e3), 11).unwrap();
        let narrow = sss_monte_carlo(m, n, (0.5, 2.0), 12).unwrap();
        assert!(wide >= exact - 3.0 * sigma(exact, n), "motif {m}: {wide} < {exact}");
        assert!(wide <= narrow + 3.0 * sigma(narrow, n), "motif {m}: {wide} > {narrow}");
        if exact == 1.0 {
            assert_eq!(wide, 1.0);
        }
    }
}

#[test]
fn three_cycle_with_large_weights_is_always_unstable() {
    let m = MotifId::triad(98).unwrap();
    assert_eq!(sss_monte_carlo(m, 10_000, (10.0, 10.0), 5).unwrap(), 0.0);
}

#[test]
fn eigenvalues_against_similarity_transform() {
    // Q diag(...) Q^-1 with a known spectrum, Q upper unit-triangular
    let spectrum = [-3.0, 0.25, -1.5, 2.0];
    let mut d = [[0.0; 4]; 4];
    for i in 0..4 {
        d[i][i] = spectrum[i];
    }
    let q = [[1.0, 2.0, -1.0, 0.5], [0.0, 1.0, 3.0, -2.0], [0.0, 0.0, 1.0, 1.0], [0.0, 0.0, 0.0, 1.0]];
    let a = nalgebra_free_product(&q, &d);
    let lam = max_real_eigenvalue(&a).unwrap();
    assert!((lam - 2.0).abs() < 1e-9, "{lam}");
}

fn nalgebra_free_product(q: &[[f64; 4]; 4], d: &[[f64; 4]; 4]) -> Vec<Vec<f64>> {
    // inverse of a unit upper-triangular matrix by back substitution
    let mut inv = [[0.0; 4]; 4];
    for col in 0..4 {
        for row in (0..4).rev() {
            let mut s = if row == col { 1.0 } else { 0.0 };
            for k in row + 1..4 {
                s -= q[row][k] * inv[k][col];
            }
            inv[row][col] = s;
        }
    }
    let mul = |a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]| {
        let mut c = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    };
    mul(&mul(q, d), &inv).iter().map(|r| r.to_vec()).collect()
}
