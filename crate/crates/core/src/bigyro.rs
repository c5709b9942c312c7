//! The bi-gyrogroup of real n x m matrices.
//!
//! `bg_add` is the coupled addition built from the square-root factors
//! `sqrt(I + P Pᵀ)` and `sqrt(I + PᵀP)`. It is neither associative nor
//! commutative; the failure of both is measured exactly by a pair of
//! rotation families, the left gyrations (acting on the row space) and
//! right gyrations (acting on the column space). `bg_group_add` twists
//! `bg_add` by one right gyration, which upgrades the groupoid to a
//! gyrocommutative gyrogroup.
//!
//! `check_axioms` samples random matrices and measures every law the
//! structure is supposed to satisfy, reporting the worst residual per law.

use crate::gyrocheck::GyroOps;
use crate::mat::{Mat, MatError};
use crate::report::{LawCheck, ResidualTable};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BgError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("gyration is not special orthogonal within tol (residual {residual:.3e})")]
    NotSpecialOrthogonal { residual: f64 },
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Signature of the matrix space: points are n x m, left gyrations are
/// n x n, right gyrations are m x m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BgParams<T> {
    pub m: usize,
    pub n: usize,
    pub tol: T,
}

impl<T: Scalar> BgParams<T> {
    pub fn new(m: usize, n: usize, tol: T) -> Result<Self, BgError> {
        if m == 0 || n == 0 {
            return Err(BgError::InvalidParams(format!(
                "signature ({m}, {n}) must have both parts at least 1"
            )));
        }
        if !(tol > T::zero()) || !tol.is_finite() {
            return Err(BgError::InvalidParams(format!("tol {tol} must be finite and positive")));
        }
        Ok(Self { m, n, tol })
    }

    pub fn with_default_tol(m: usize, n: usize) -> Result<Self, BgError> {
        Self::new(m, n, T::of(crate::DEFAULT_TOL))
    }

    fn expect_point(&self, p: &Mat<T>) -> Result<(), BgError> {
        if p.rows() != self.n || p.cols() != self.m {
            return Err(BgError::Shape {
                expected_rows: self.n,
                expected_cols: self.m,
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        Ok(())
    }
}

/// Rotation acting on points by left multiplication. Always special
/// orthogonal; the constructor enforces it.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftGyr<T>(Mat<T>);

/// Rotation acting on points by right multiplication.
#[derive(Debug, Clone, PartialEq)]
pub struct RightGyr<T>(Mat<T>);

fn so_residual<T: Scalar>(m: &Mat<T>) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let gram = match m.transpose().mul(m) {
        Ok(g) => g,
        Err(_) => return f64::INFINITY,
    };
    let ortho = gram.max_abs_diff(&Mat::identity(m.rows())).as_f64();
    let det = (m.det() - T::one()).abs().as_f64();
    ortho.max(det)
}

impl<T: Scalar> LeftGyr<T> {
    pub fn try_new(matrix: Mat<T>, tol: T) -> Result<Self, BgError> {
        let residual = so_residual(&matrix);
        if residual > tol.as_f64() {
            return Err(BgError::NotSpecialOrthogonal { residual });
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.0
    }

    /// Orthogonality makes the transpose the exact inverse.
    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }
}

impl<T: Scalar> RightGyr<T> {
    pub fn try_new(matrix: Mat<T>, tol: T) -> Result<Self, BgError> {
        let residual = so_residual(&matrix);
        if residual > tol.as_f64() {
            return Err(BgError::NotSpecialOrthogonal { residual });
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.transpose())
    }
}

/// sqrt(I_n + P Pᵀ), the row-space factor.
fn sqrt_gram_rows<T: Scalar>(p: &Mat<T>, tol: T) -> Result<Mat<T>, MatError> {
    let g = &Mat::identity(p.rows()) + &p.mul(&p.transpose())?;
    g.spd_sqrt(tol)
}

/// sqrt(I_m + PᵀP), the column-space factor.
fn sqrt_gram_cols<T: Scalar>(p: &Mat<T>, tol: T) -> Result<Mat<T>, MatError> {
    let g = &Mat::identity(p.cols()) + &p.transpose().mul(p)?;
    g.spd_sqrt(tol)
}

/// Coupled addition: P1 * sqrt(I + P2ᵀP2) + sqrt(I + P1 P1ᵀ) * P2.
pub fn bg_add<T: Scalar>(p1: &Mat<T>, p2: &Mat<T>, params: &BgParams<T>) -> Result<Mat<T>, BgError> {
    params.expect_point(p1)?;
    params.expect_point(p2)?;
    let s2 = sqrt_gram_cols(p2, params.tol)?;
    let s1 = sqrt_gram_rows(p1, params.tol)?;
    Ok(&p1.mul(&s2)? + &s1.mul(p2)?)
}

/// Left gyration of the pair (P1, P2): the n x n rotation
/// sqrt(I + S Sᵀ)⁻¹ (P1 P2ᵀ + sqrt(I + P1 P1ᵀ) sqrt(I + P2 P2ᵀ))
/// where S = bg_add(P1, P2).
pub fn left_gyr<T: Scalar>(
    p1: &Mat<T>,
    p2: &Mat<T>,
    params: &BgParams<T>,
) -> Result<LeftGyr<T>, BgError> {
    let sum = bg_add(p1, p2, params)?;
    let norm = sqrt_gram_rows(&sum, params.tol)?.inverse(params.tol)?;
    let core = &p1.mul(&p2.transpose())?
        + &sqrt_gram_rows(p1, params.tol)?.mul(&sqrt_gram_rows(p2, params.tol)?)?;
    LeftGyr::try_new(norm.mul(&core)?, params.tol)
}

/// Right gyration of the pair (P1, P2): the m x m rotation
/// (P1ᵀP2 + sqrt(I + P1ᵀP1) sqrt(I + P2ᵀP2)) sqrt(I + SᵀS)⁻¹
/// where S = bg_add(P1, P2).
pub fn right_gyr<T: Scalar>(
    p1: &Mat<T>,
    p2: &Mat<T>,
    params: &BgParams<T>,
) -> Result<RightGyr<T>, BgError> {
    let sum = bg_add(p1, p2, params)?;
    let norm = sqrt_gram_cols(&sum, params.tol)?.inverse(params.tol)?;
    let core = &p1.transpose().mul(p2)?
        + &sqrt_gram_cols(p1, params.tol)?.mul(&sqrt_gram_cols(p2, params.tol)?)?;
    RightGyr::try_new(core.mul(&norm)?, params.tol)
}

/// Left gyrations act by left multiplication.
pub fn apply_lgyr<T: Scalar>(l: &LeftGyr<T>, p: &Mat<T>) -> Result<Mat<T>, BgError> {
    Ok(l.matrix().mul(p)?)
}

/// Right gyrations act by right multiplication.
pub fn apply_rgyr<T: Scalar>(r: &RightGyr<T>, p: &Mat<T>) -> Result<Mat<T>, BgError> {
    Ok(p.mul(r.matrix())?)
}

/// Gyrogroup operation: bg_add(P1, P2) twisted by the right gyration of
/// the swapped pair.
pub fn bg_group_add<T: Scalar>(
    p1: &Mat<T>,
    p2: &Mat<T>,
    params: &BgParams<T>,
) -> Result<Mat<T>, BgError> {
    let sum = bg_add(p1, p2, params)?;
    let r = right_gyr(p2, p1, params)?;
    apply_rgyr(&r, &sum)
}

/// The composite gyration of the group operation: x maps to L x R with
/// L the left gyration of (P1, P2) and R the right gyration of (P2, P1).
pub fn gyrator<T: Scalar>(
    p1: &Mat<T>,
    p2: &Mat<T>,
    params: &BgParams<T>,
) -> Result<(LeftGyr<T>, RightGyr<T>), BgError> {
    Ok((left_gyr(p1, p2, params)?, right_gyr(p2, p1, params)?))
}

/// The twisted operation and its composite gyration seen as an abstract
/// gyrogroup, for certification through the generic axiom checker.
/// Methods panic on malformed points; callers supply n x m matrices.
pub struct GroupView<'a, T: Scalar>(pub &'a BgParams<T>);

impl<T: Scalar> GyroOps for GroupView<'_, T> {
    type Elem = Mat<T>;

    fn zero(&self) -> Mat<T> {
        Mat::zeros(self.0.n, self.0.m)
    }

    fn op(&self, a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
        bg_group_add(a, b, self.0).expect("points of the configured shape")
    }

    fn neg(&self, a: &Mat<T>) -> Mat<T> {
        -a
    }

    fn gyr(&self, a: &Mat<T>, b: &Mat<T>, x: &Mat<T>) -> Mat<T> {
        let (l, r) = gyrator(a, b, self.0).expect("points of the configured shape");
        apply_rgyr(&r, &apply_lgyr(&l, x).expect("shape")).expect("shape")
    }

    fn residual(&self, x: &Mat<T>, y: &Mat<T>) -> f64 {
        x.max_abs_diff(y).as_f64()
    }

    fn describe(&self, e: &Mat<T>) -> String {
        format!("{e}")
    }
}

fn sample_point<T: Scalar>(rng: &mut ChaCha8Rng, params: &BgParams<T>) -> Mat<T> {
    Mat::from_fn(params.n, params.m, |_, _| T::of(rng.gen_range(-2.0..=2.0)))
}

/// Samples `trials` random tuples and measures every law of the structure,
/// both for the raw coupled addition and for the twisted group operation.
/// Deterministic for a fixed seed: trial t draws from stream t of a
/// counter-mode generator seeded with `seed`.
pub fn check_axioms<T: Scalar>(
    params: &BgParams<T>,
    trials: usize,
    seed: u64,
) -> Result<Vec<LawCheck>, BgError> {
    if trials == 0 {
        return Err(BgError::NoTrials);
    }
    let mut table = ResidualTable::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let a = sample_point(&mut rng, params);
        let b = sample_point(&mut rng, params);
        let c = sample_point(&mut rng, params);
        let d = sample_point(&mut rng, params);
        observe_trial(&mut table, &a, &b, &c, &d, params)?;
    }
    Ok(table.into_report(trials, params.tol.as_f64()))
}

/// One sampled tuple, all laws. Residuals are max absolute entry
/// differences between the two sides of each identity.
fn observe_trial<T: Scalar>(
    table: &mut ResidualTable,
    a: &Mat<T>,
    b: &Mat<T>,
    c: &Mat<T>,
    d: &Mat<T>,
    params: &BgParams<T>,
) -> Result<(), BgError> {
    let zero = Mat::zeros(params.n, params.m);
    let eye_n = Mat::identity(params.n);
    let eye_m = Mat::identity(params.m);
    let add = |x: &Mat<T>, y: &Mat<T>| bg_add(x, y, params);
    let gadd = |x: &Mat<T>, y: &Mat<T>| bg_group_add(x, y, params);
    let lg = |x: &Mat<T>, y: &Mat<T>| left_gyr(x, y, params);
    let rg = |x: &Mat<T>, y: &Mat<T>| right_gyr(x, y, params);
    let diff = |x: &Mat<T>, y: &Mat<T>| x.max_abs_diff(y).as_f64();

    let ab = add(a, b)?;
    let ba = add(b, a)?;
    let bc = add(b, c)?;
    let cd = add(c, d)?;
    let lab = lg(a, b)?;
    let lba = lg(b, a)?;
    let rab = rg(a, b)?;
    let rba = rg(b, a)?;
    let rbc = rg(b, c)?;

    table.observe(
        "zero identity",
        diff(&add(&zero, a)?, a).max(diff(&add(a, &zero)?, a)),
    );
    table.observe(
        "negation inverse",
        diff(&add(&-a, a)?, &zero).max(diff(&add(a, &-a)?, &zero)),
    );
    table.observe("left gyrations special orthogonal", so_residual(lab.matrix()));
    table.observe("right gyrations special orthogonal", so_residual(rab.matrix()));

    // (a + b) + L[a,b]c == R[b,c]a + (b + c)
    let lhs = add(&ab, &apply_lgyr(&lab, c)?)?;
    let rhs = add(&apply_rgyr(&rbc, a)?, &bc)?;
    table.observe("gyration axiom", diff(&lhs, &rhs));

    // a + (b + c) == (R[b,c]⁻¹a + b) + L[R[b,c]⁻¹a, b]c
    let a_unrot = apply_rgyr(&rbc.inverse(), a)?;
    let lhs = add(a, &bc)?;
    let rhs = add(&add(&a_unrot, b)?, &apply_lgyr(&lg(&a_unrot, b)?, c)?)?;
    table.observe("left bi-gyroassociative law", diff(&lhs, &rhs));

    // (a + b) + c == R[b, L[a,b]⁻¹c]a + (b + L[a,b]⁻¹c)
    let c_unrot = apply_lgyr(&lab.inverse(), c)?;
    let lhs = add(&ab, c)?;
    let rhs = add(&apply_rgyr(&rg(b, &c_unrot)?, a)?, &add(b, &c_unrot)?)?;
    table.observe("right bi-gyroassociative law", diff(&lhs, &rhs));

    table.observe(
        "left cancellation",
        diff(&add(&-&apply_rgyr(&rab, a)?, &ab)?, b),
    );
    table.observe(
        "right cancellation",
        diff(&add(&ab, &-&apply_lgyr(&lab, b)?)?, a),
    );

    table.observe(
        "gyration inversion by argument swap",
        diff(lab.inverse().matrix(), lba.matrix()).max(diff(rab.inverse().matrix(), rba.matrix())),
    );
    table.observe(
        "gyrations even under negation",
        diff(lg(&-a, &-b)?.matrix(), lab.matrix()).max(diff(rg(&-a, &-b)?.matrix(), rab.matrix())),
    );

    let trivial = [
        diff(lg(a, &zero)?.matrix(), &eye_n),
        diff(lg(&zero, a)?.matrix(), &eye_n),
        diff(lg(a, a)?.matrix(), &eye_n),
        diff(lg(a, &-a)?.matrix(), &eye_n),
        diff(lg(&-a, a)?.matrix(), &eye_n),
        diff(rg(a, &zero)?.matrix(), &eye_m),
        diff(rg(&zero, a)?.matrix(), &eye_m),
        diff(rg(a, a)?.matrix(), &eye_m),
        diff(rg(a, &-a)?.matrix(), &eye_m),
        diff(rg(&-a, a)?.matrix(), &eye_m),
    ];
    table.observe("trivial gyrations", trivial.into_iter().fold(0.0, f64::max));

    // Every pair below regenerates L[a,b] (resp. R[a,b]) from derived points.
    let la = apply_lgyr(&lab, a)?;
    let lb = apply_lgyr(&lab, b)?;
    let ra = apply_rgyr(&rab, a)?;
    let rb = apply_rgyr(&rab, b)?;
    let a_rba = apply_rgyr(&rba, a)?;
    let lba_b = apply_lgyr(&lba, b)?;
    let twisted_ab = apply_rgyr(&rba, &ab)?;
    let left_reduction = [
        diff(lg(&la, &ab)?.matrix(), lab.matrix()),
        diff(lg(&a_rba, &ba)?.matrix(), lab.matrix()),
        diff(lg(&ab, &rb)?.matrix(), lab.matrix()),
        diff(lg(&-&lb, &ab)?.matrix(), lab.matrix()),
        diff(lg(&ab, &-&ra)?.matrix(), lab.matrix()),
        diff(lg(&twisted_ab, &-a)?.matrix(), lab.matrix()),
    ];
    table.observe(
        "left gyration reduction",
        left_reduction.into_iter().fold(0.0, f64::max),
    );
    let right_reduction = [
        diff(rg(&la, &ab)?.matrix(), rab.matrix()),
        diff(rg(&ba, &lba_b)?.matrix(), rab.matrix()),
        diff(rg(&ab, &rb)?.matrix(), rab.matrix()),
        diff(rg(&-&lb, &ab)?.matrix(), rab.matrix()),
        diff(rg(&ab, &-&ra)?.matrix(), rab.matrix()),
        diff(rg(&twisted_ab, &-a)?.matrix(), rab.matrix()),
    ];
    table.observe(
        "right gyration reduction",
        right_reduction.into_iter().fold(0.0, f64::max),
    );

    // a + b == L[a,b](b + a)R[a,b]
    table.observe(
        "bi-gyrocommutative law",
        diff(&ab, &apply_rgyr(&rab, &apply_lgyr(&lab, &ba)?)?),
    );
    table.observe("automorphic inverse", diff(&-&ab, &add(&-a, &-b)?));

    table.observe(
        "left gyrations are additive automorphisms",
        diff(
            &apply_lgyr(&lab, &cd)?,
            &add(&apply_lgyr(&lab, c)?, &apply_lgyr(&lab, d)?)?,
        ),
    );
    table.observe(
        "right gyrations are additive automorphisms",
        diff(
            &apply_rgyr(&rab, &cd)?,
            &add(&apply_rgyr(&rab, c)?, &apply_rgyr(&rab, d)?)?,
        ),
    );

    // Laws of the twisted operation.
    let gab = gadd(a, b)?;
    let gba = gadd(b, a)?;
    let gbc = gadd(b, c)?;
    table.observe(
        "group zero and inverses",
        [
            diff(&gadd(&zero, a)?, a),
            diff(&gadd(a, &zero)?, a),
            diff(&gadd(&-a, a)?, &zero),
            diff(&gadd(a, &-a)?, &zero),
        ]
        .into_iter()
        .fold(0.0, f64::max),
    );

    // a +' (b +' c) == (a +' b) +' (L[a,b] c R[b,a])
    let twisted_c = apply_rgyr(&rba, &apply_lgyr(&lab, c)?)?;
    table.observe(
        "group left gyroassociative law",
        diff(&gadd(a, &gbc)?, &gadd(&gab, &twisted_c)?),
    );
    // (a +' b) +' c == a +' (b +' L[b,a] c R[a,b])
    let twisted_c_swap = apply_rgyr(&rab, &apply_lgyr(&lba, c)?)?;
    table.observe(
        "group right gyroassociative law",
        diff(&gadd(&gab, c)?, &gadd(a, &gadd(b, &twisted_c_swap)?)?),
    );

    let group_reduction = [
        diff(lg(&gab, b)?.matrix(), lab.matrix()),
        diff(lg(a, &gba)?.matrix(), lab.matrix()),
        diff(rg(&gab, b)?.matrix(), rab.matrix()),
        diff(rg(a, &gba)?.matrix(), rab.matrix()),
    ];
    table.observe(
        "group gyration reduction",
        group_reduction.into_iter().fold(0.0, f64::max),
    );

    // a +' b == L[a,b](b +' a)R[b,a]
    table.observe(
        "group gyrocommutative law",
        diff(&gab, &apply_rgyr(&rba, &apply_lgyr(&lab, &gba)?)?),
    );

    // L[a,b] c R[b,a] == -(a +' b) +' (a +' (b +' c))
    table.observe(
        "gyrator identity",
        diff(&twisted_c, &gadd(&-&gab, &gadd(a, &gbc)?)?),
    );

    // Composite gyrations of an associativity triple agree:
    //   R[b,c] R[R[b,c]a, b+c] == R[a,b] R[a+b, L[a,b]c]
    //   L[a+b, L[a,b]c] L[a,b] == L[R[b,c]a, b+c] L[b,c]
    let a_rbc = apply_rgyr(&rbc, a)?;
    let c_lab = apply_lgyr(&lab, c)?;
    table.observe(
        "right gyration composition relation",
        diff(
            &rbc.matrix().mul(rg(&a_rbc, &bc)?.matrix())?,
            &rab.matrix().mul(rg(&ab, &c_lab)?.matrix())?,
        ),
    );
    table.observe(
        "left gyration composition relation",
        diff(
            &lg(&ab, &c_lab)?.matrix().mul(lab.matrix())?,
            &lg(&a_rbc, &bc)?.matrix().mul(lg(b, c)?.matrix())?,
        ),
    );
    Ok(())
}
