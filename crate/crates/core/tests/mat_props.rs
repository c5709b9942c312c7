//! Property tests for the matrix kernel. Random SPD inputs are built as
//! I + P P^T, which is the shape every square root in this crate sees.

use bigyro_core::{Mat, Mat64};
use proptest::collection::vec;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn param(rows: usize, cols: usize) -> impl Strategy<Value = Mat64> {
    vec(-2.0f64..2.0, rows * cols)
        .prop_map(move |data| Mat::from_vec(rows, cols, data).unwrap())
}

fn param_any() -> impl Strategy<Value = Mat64> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(n, m)| param(n, m))
}

fn spd_any() -> impl Strategy<Value = Mat64> {
    // I_n + P P^T for an n x m parameter P: symmetric, eigenvalues >= 1.
    param_any().prop_map(|p| &Mat::identity(p.rows()) + &(&p * &p.transpose()))
}

proptest! {
    #[test]
    fn spd_sqrt_squares_back(s in spd_any()) {
        let root = s.spd_sqrt(TOL).unwrap();
        prop_assert!((&root * &root).max_abs_diff(&s) <= 1e-11);
        prop_assert_eq!(root.clone(), root.transpose());
    }

    #[test]
    fn sqrt_commutes_through_the_parameter(p in param_any()) {
        // sqrt(I_n + P P^T) P = P sqrt(I_m + P^T P)
        let pt = p.transpose();
        let left = &(&Mat::identity(p.rows()) + &(&p * &pt)).spd_sqrt(TOL).unwrap() * &p;
        let right = &p * &(&Mat::identity(p.cols()) + &(&pt * &p)).spd_sqrt(TOL).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-11);
    }

    #[test]
    fn inverse_of_sqrt_is_sqrt_of_inverse(s in spd_any()) {
        let a = s.spd_sqrt(TOL).unwrap().inverse(TOL).unwrap();
        let b = s.inverse(TOL).unwrap().spd_sqrt(TOL).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-10);
    }

    #[test]
    fn eigen_reconstructs_symmetric_input(s in spd_any()) {
        let eig = s.sym_eigen(TOL).unwrap();
        let n = s.rows();
        let lambda = Mat::from_fn(n, n, |i, j| if i == j { eig.values[i] } else { 0.0 });
        let rebuilt = &(&eig.vectors * &lambda) * &eig.vectors.transpose();
        prop_assert!(rebuilt.max_abs_diff(&s) <= 1e-12 * (1.0 + s.max_abs()));
        // Eigenvector matrix is orthogonal.
        let gram = &eig.vectors.transpose() * &eig.vectors;
        prop_assert!(gram.max_abs_diff(&Mat::identity(n)) <= 1e-13);
    }

    #[test]
    fn json_round_trips(p in param_any()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: Mat64 = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}
