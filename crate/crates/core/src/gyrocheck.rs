//! Independent gyrogroup certifier.
//!
//! A gyrogroup is a magma with a left identity, left inverses, and a
//! gyration map gyr[a,b] that repairs associativity:
//!
//!   a + (b + c) = (a + b) + gyr[a,b]c
//!
//! with gyr[a,b] an automorphism satisfying the reduction property
//! gyr[a,b] = gyr[a+b, b]. This module checks exactly those axioms
//! against an opaque structure. It deliberately knows nothing about how
//! the operation or the gyrations are produced, so it can certify the
//! twisted matrix operation and finite multiplication tables through one
//! code path that cannot inherit bugs from either construction.

use crate::report::{ExactCheck, ExactTable, LawCheck, ResidualTable};

/// A candidate gyrogroup presented as opaque operations.
///
/// `residual` must return 0 exactly when the two elements are equal; for
/// numeric carriers it is a distance, for discrete carriers an indicator.
pub trait GyroOps {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Candidate left inverse of `a`.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// The gyration of the pair (a, b) applied to `x`.
    fn gyr(&self, a: &Self::Elem, b: &Self::Elem, x: &Self::Elem) -> Self::Elem;
    fn residual(&self, x: &Self::Elem, y: &Self::Elem) -> f64;
    fn describe(&self, e: &Self::Elem) -> String;
}

const LAW_LEFT_IDENTITY: &str = "left identity";
const LAW_LEFT_INVERSE: &str = "left inverse";
const LAW_LEFT_GYROASSOCIATIVE: &str = "left gyroassociative law";
const LAW_LEFT_REDUCTION: &str = "left reduction property";
const LAW_AUTOMORPHISM: &str = "gyrations respect the operation";
const LAW_BIJECTIVE: &str = "gyrations are bijective";
const LAW_GYROCOMMUTATIVE: &str = "gyrocommutative law";

/// Measures the axioms on caller-supplied sample tuples (a, b, c, x).
/// The x component exercises the gyration comparisons at a point
/// independent of the associativity triple.
pub fn check_sampled<S: GyroOps>(
    sys: &S,
    tuples: &[[S::Elem; 4]],
    tol: f64,
    gyrocommutative: bool,
) -> Vec<LawCheck> {
    let mut table = ResidualTable::new();
    for [a, b, c, x] in tuples {
        let ab = sys.op(a, b);
        table.observe(LAW_LEFT_IDENTITY, sys.residual(&sys.op(&sys.zero(), a), a));
        table.observe(
            LAW_LEFT_INVERSE,
            sys.residual(&sys.op(&sys.neg(a), a), &sys.zero()),
        );
        table.observe(
            LAW_LEFT_GYROASSOCIATIVE,
            sys.residual(&sys.op(a, &sys.op(b, c)), &sys.op(&ab, &sys.gyr(a, b, c))),
        );
        table.observe(
            LAW_LEFT_REDUCTION,
            sys.residual(&sys.gyr(a, b, x), &sys.gyr(&ab, b, x)),
        );
        table.observe(
            LAW_AUTOMORPHISM,
            sys.residual(
                &sys.gyr(a, b, &sys.op(c, x)),
                &sys.op(&sys.gyr(a, b, c), &sys.gyr(a, b, x)),
            ),
        );
        if gyrocommutative {
            table.observe(
                LAW_GYROCOMMUTATIVE,
                sys.residual(&ab, &sys.gyr(a, b, &sys.op(b, a))),
            );
        }
    }
    table.into_report(tuples.len(), tol)
}

/// Checks the axioms over every element tuple of a finite carrier,
/// including bijectivity of each gyration. Equality is `residual == 0`.
pub fn check_exhaustive<S: GyroOps>(
    sys: &S,
    elems: &[S::Elem],
    gyrocommutative: bool,
) -> Vec<ExactCheck> {
    let eq = |x: &S::Elem, y: &S::Elem| sys.residual(x, y) == 0.0;
    let mut table = ExactTable::new();
    for a in elems {
        table.observe(LAW_LEFT_IDENTITY, eq(&sys.op(&sys.zero(), a), a), || {
            format!("0 + {} differs from it", sys.describe(a))
        });
        table.observe(
            LAW_LEFT_INVERSE,
            eq(&sys.op(&sys.neg(a), a), &sys.zero()),
            || format!("neg({}) is not a left inverse", sys.describe(a)),
        );
    }
    for a in elems {
        for b in elems {
            let ab = sys.op(a, b);
            for c in elems {
                table.observe(
                    LAW_LEFT_GYROASSOCIATIVE,
                    eq(&sys.op(a, &sys.op(b, c)), &sys.op(&ab, &sys.gyr(a, b, c))),
                    || {
                        format!(
                            "triple ({}, {}, {})",
                            sys.describe(a),
                            sys.describe(b),
                            sys.describe(c)
                        )
                    },
                );
                table.observe(
                    LAW_LEFT_REDUCTION,
                    eq(&sys.gyr(a, b, c), &sys.gyr(&ab, b, c)),
                    || {
                        format!(
                            "gyr[{}, {}] vs gyr[sum, {}] at {}",
                            sys.describe(a),
                            sys.describe(b),
                            sys.describe(b),
                            sys.describe(c)
                        )
                    },
                );
                for x in elems {
                    table.observe(
                        LAW_AUTOMORPHISM,
                        eq(
                            &sys.gyr(a, b, &sys.op(c, x)),
                            &sys.op(&sys.gyr(a, b, c), &sys.gyr(a, b, x)),
                        ),
                        || {
                            format!(
                                "gyr[{}, {}] at ({}, {})",
                                sys.describe(a),
                                sys.describe(b),
                                sys.describe(c),
                                sys.describe(x)
                            )
                        },
                    );
                }
            }
            // Surjectivity suffices on a finite carrier.
            let onto = elems
                .iter()
                .all(|y| elems.iter().any(|x| eq(&sys.gyr(a, b, x), y)));
            table.observe(LAW_BIJECTIVE, onto, || {
                format!("gyr[{}, {}] misses a value", sys.describe(a), sys.describe(b))
            });
            if gyrocommutative {
                table.observe(
                    LAW_GYROCOMMUTATIVE,
                    eq(&ab, &sys.gyr(a, b, &sys.op(b, a))),
                    || format!("pair ({}, {})", sys.describe(a), sys.describe(b)),
                );
            }
        }
    }
    table.into_report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{all_hold, all_pass};

    // The real line under ordinary addition, trivial gyrations.
    struct Line;

    impl GyroOps for Line {
        type Elem = f64;
        fn zero(&self) -> f64 {
            0.0
        }
        fn op(&self, a: &f64, b: &f64) -> f64 {
            a + b
        }
        fn neg(&self, a: &f64) -> f64 {
            -a
        }
        fn gyr(&self, _a: &f64, _b: &f64, x: &f64) -> f64 {
            *x
        }
        fn residual(&self, x: &f64, y: &f64) -> f64 {
            (x - y).abs()
        }
        fn describe(&self, e: &f64) -> String {
            format!("{e}")
        }
    }

    // Subtraction is not a gyrogroup operation; the identity axiom fails.
    struct Subtraction;

    impl GyroOps for Subtraction {
        type Elem = f64;
        fn zero(&self) -> f64 {
            0.0
        }
        fn op(&self, a: &f64, b: &f64) -> f64 {
            a - b
        }
        fn neg(&self, a: &f64) -> f64 {
            *a
        }
        fn gyr(&self, _a: &f64, _b: &f64, x: &f64) -> f64 {
            *x
        }
        fn residual(&self, x: &f64, y: &f64) -> f64 {
            (x - y).abs()
        }
        fn describe(&self, e: &f64) -> String {
            format!("{e}")
        }
    }

    // Z mod 4 with identity gyrations; `bad_gyr` shifts every gyration
    // output by one, which breaks the automorphism property.
    struct Z4 {
        bad_gyr: bool,
    }

    impl GyroOps for Z4 {
        type Elem = u8;
        fn zero(&self) -> u8 {
            0
        }
        fn op(&self, a: &u8, b: &u8) -> u8 {
            (a + b) % 4
        }
        fn neg(&self, a: &u8) -> u8 {
            (4 - a) % 4
        }
        fn gyr(&self, _a: &u8, _b: &u8, x: &u8) -> u8 {
            if self.bad_gyr {
                (x + 1) % 4
            } else {
                *x
            }
        }
        fn residual(&self, x: &u8, y: &u8) -> f64 {
            if x == y {
                0.0
            } else {
                1.0
            }
        }
        fn describe(&self, e: &u8) -> String {
            format!("{e}")
        }
    }

    fn line_tuples() -> Vec<[f64; 4]> {
        (0..20)
            .map(|i| {
                let t = i as f64;
                [0.3 * t - 2.0, 1.7 - 0.4 * t, 0.05 * t * t - 1.0, 0.9 * t - 5.0]
            })
            .collect()
    }

    #[test]
    fn addition_on_the_line_is_certified() {
        let report = check_sampled(&Line, &line_tuples(), 1e-12, true);
        assert!(all_pass(&report));
        assert_eq!(report.len(), 6);
    }

    #[test]
    fn subtraction_is_rejected() {
        let report = check_sampled(&Subtraction, &line_tuples(), 1e-12, false);
        assert!(!all_pass(&report));
        let identity = report.iter().find(|c| c.law == "left identity").unwrap();
        assert!(!identity.pass);
    }

    #[test]
    fn cyclic_table_is_certified_exhaustively() {
        let elems: Vec<u8> = (0..4).collect();
        let report = check_exhaustive(&Z4 { bad_gyr: false }, &elems, true);
        assert!(all_hold(&report));
        assert!(report.iter().any(|c| c.law == "gyrations are bijective"));
    }

    #[test]
    fn corrupted_gyrations_are_caught_with_witness() {
        let elems: Vec<u8> = (0..4).collect();
        let report = check_exhaustive(&Z4 { bad_gyr: true }, &elems, false);
        let auto = report
            .iter()
            .find(|c| c.law == "gyrations respect the operation")
            .unwrap();
        assert!(!auto.pass);
        assert!(auto.violations > 0);
        assert!(auto.witness.is_some());
    }
}
