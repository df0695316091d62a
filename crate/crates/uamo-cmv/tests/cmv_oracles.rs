//! CMV structure of the walk: block algebra, explicit entries, agreement with
//! the walk matrix and the decoupling at vanishing `ρ`.

use faer::Mat;
use proptest::prelude::*;
use uamo_cmv::*;
use uamo_core::{CouplingPair, Frequency};

fn unitarity_residual(m: &Mat<C64>) -> f64 {
    let g = m.adjoint() * m;
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn theta_block_is_unitary() {
    let a = C64::new(0.3, -0.4);
    let r = C64::from_polar((1.0 - a.norm_sqr()).sqrt(), 0.7);
    let t = theta_block(a, r);
    let mut m = Mat::<C64>::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = t[i][j];
        }
    }
    assert!(unitarity_residual(&m) < 1e-15);
}

#[test]
fn walk_pairs_lie_on_the_sphere() {
    let pair = CouplingPair::new(0.37, 0.81).unwrap();
    let pairs = walk_to_verblunsky(&pair, &Frequency::golden(), 0.2, -50, 50);
    assert_eq!(pairs.len(), 202);
    assert!(pairs.iter().all(|p| p.sphere_residual() < 1e-15));
    assert_eq!(pairs.first().unwrap().index, -101);
    assert_eq!(pairs.last().unwrap().index, 100);
}

#[test]
fn walk_is_a_cmv_matrix_for_random_parameters() {
    let mut s = 2024u64;
    for _ in 0..10 {
        let pair = CouplingPair::new(splitmix(&mut s), splitmix(&mut s)).unwrap();
        let freq = Frequency::real(0.05 + 0.9 * splitmix(&mut s)).unwrap();
        let theta = splitmix(&mut s);
        let err = cmv_equals_walk(&pair, &freq, theta, 12).unwrap();
        assert!(err < 1e-12, "walk vs LM deviation {err}");
    }
}

#[test]
fn comparison_detects_a_wrong_identification() {
    // Flipping the sign of every odd α breaks the coin identification.
    let pair = CouplingPair::new(0.6, 0.7).unwrap();
    let freq = Frequency::golden();
    let m = 8;
    let mut pairs = walk_to_verblunsky(&pair, &freq, 0.3, -m, m);
    let exact = lm_build(&pairs).unwrap();
    for p in pairs.iter_mut().filter(|p| p.index.rem_euclid(2) == 1) {
        p.alpha = -p.alpha;
    }
    let wrong = lm_build(&pairs).unwrap();
    let mut diff: f64 = 0.0;
    for i in 4..exact.dim() - 4 {
        for j in 0..exact.dim() {
            diff = diff.max((exact.e[(i, j)] - wrong.e[(i, j)]).norm());
        }
    }
    assert!(diff > 0.1);
    assert!(cmv_equals_walk(&pair, &freq, 0.3, m).unwrap() < 1e-12);
}

#[test]
fn explicit_entries_match_the_product() {
    let pair = CouplingPair::new(0.62, 0.44).unwrap();
    let freq = Frequency::golden();
    let pairs = walk_to_verblunsky(&pair, &freq, 0.31, -6, 6);
    let cmv = lm_build(&pairs).unwrap();
    for k in -4..=4 {
        let entries = cmv_entries(&pairs, k).unwrap();
        let mut row_mass = [0.0f64; 2];
        for (r, c, v) in entries {
            let got = cmv.e[(cmv.position(r).unwrap(), cmv.position(c).unwrap())];
            assert!((got - v).norm() < 1e-15, "entry ({r}, {c})");
            row_mass[(r - 2 * k) as usize] += v.norm_sqr();
        }
        // Each full row of a unitary matrix has unit norm, and these are all
        // nonzero entries of the two rows.
        assert!((row_mass[0] - 1.0).abs() < 1e-14);
        assert!((row_mass[1] - 1.0).abs() < 1e-14);
    }
}

#[test]
fn factors_are_unitary_and_e_is_unitary_on_a_ring() {
    let pair = CouplingPair::new(0.7, 0.55).unwrap();
    let freq = Frequency::rational(5, 8).unwrap();
    let pairs = walk_to_verblunsky(&pair, &freq, 0.12, 1, 8);
    assert_eq!(pairs[0].index, 1);
    let cmv = lm_build(&pairs).unwrap();
    assert!(unitarity_residual(&cmv.l) < 1e-14);
    assert!(unitarity_residual(&cmv.m) < 1e-14);
    let ring = lm_build_periodic(&pairs[1..].iter().copied().chain([pairs[0]].map(|mut p| {
        p.index = 17;
        p
    })).collect::<Vec<_>>()).unwrap();
    assert_eq!(ring.nrows(), 16);
    assert!(unitarity_residual(&ring) < 1e-14);
}

#[test]
fn vanishing_rho_decouples() {
    // λ₁ = 0 makes every even ρ vanish: E splits into 2×2 blocks on
    // {2n−1, 2n}, the on-site coins.
    let pair = CouplingPair::new(0.0, 0.8).unwrap();
    let pairs = walk_to_verblunsky(&pair, &Frequency::golden(), 0.4, -5, 5);
    let cmv = lm_build(&pairs).unwrap();
    for row in 2..cmv.dim() - 2 {
        let j = cmv.j_min + row as i64;
        let partner = if j.rem_euclid(2) == 0 { j - 1 } else { j + 1 };
        for col in 0..cmv.dim() {
            let jc = cmv.j_min + col as i64;
            if jc != j && jc != partner {
                assert!(cmv.e[(row, col)].norm() < 1e-15, "coupling ({j}, {jc})");
            }
        }
    }
}

#[test]
fn rejects_gaps_and_odd_rings() {
    let pair = CouplingPair::new(0.5, 0.5).unwrap();
    let mut pairs = walk_to_verblunsky(&pair, &Frequency::golden(), 0.0, 0, 3);
    assert!(lm_build_periodic(&pairs).is_err());
    pairs.remove(2);
    assert!(lm_build(&pairs).is_err());
    assert!(lm_build(&[]).is_err());
    assert!(cmv_equals_walk(&pair, &Frequency::golden(), 0.0, 2).is_err());
}

#[test]
fn json_dump_round_trips() {
    let pair = CouplingPair::new(0.5, 0.9).unwrap();
    let pairs = walk_to_verblunsky(&pair, &Frequency::golden(), 0.1, 0, 2);
    let text = verblunsky_json(&pairs);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let arr = value.as_array().unwrap();
    assert_eq!(arr.len(), pairs.len());
    for (rec, p) in arr.iter().zip(&pairs) {
        assert_eq!(rec["n"].as_i64().unwrap(), p.index);
        assert_eq!(rec["alpha_re"].as_f64().unwrap(), p.alpha.re);
        assert_eq!(rec["rho_im"].as_f64().unwrap(), p.rho.im);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cmv_agreement_holds_everywhere(l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0, phi in 0.01f64..0.99, theta in 0.0f64..1.0) {
        let pair = CouplingPair::new(l1, l2).unwrap();
        let freq = Frequency::real(phi).unwrap();
        prop_assert!(cmv_equals_walk(&pair, &freq, theta, 5).unwrap() < 1e-12);
    }
}
