//! The special pseudo-orthogonal group of signature (m, n) and its
//! three-factor decomposition.
//!
//! Elements preserve the indefinite form eta = diag(I_m, -I_n) and lie in
//! the identity component. Every such element splits uniquely as
//!
//!   g = rho(O_m) * beta(P) * lambda(O_n)
//!
//! where rho/lambda embed the two rotation groups block-diagonally and
//! beta(P) is the symmetric bi-boost holding an n x m parameter matrix.
//! The parameter space inherits the bi-gyrogroup operations of `bigyro`:
//! multiplying two bi-boosts produces exactly one right-gyration factor,
//! one bi-boost of the coupled sum, and one left-gyration factor.

use crate::bigyro::{bg_add, left_gyr, right_gyr, BgError, BgParams, LeftGyr, RightGyr};
use crate::mat::{Mat, MatError};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PsError {
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Size {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("block is not special orthogonal within tol (residual {residual:.3e})")]
    NotSpecialOrthogonal { residual: f64 },
    #[error("not a member of the group: {0}")]
    NotMember(String),
    #[error("factorization inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Bg(#[from] BgError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// The metric diag(I_m, -I_n).
pub fn eta<T: Scalar>(m: usize, n: usize) -> Mat<T> {
    Mat::from_fn(m + n, m + n, |i, j| {
        if i != j {
            T::zero()
        } else if i < m {
            T::one()
        } else {
            -T::one()
        }
    })
}

/// Identity-component member of the (m, n) pseudo-orthogonal group.
/// Construction validates the metric, unit determinant, and positivity of
/// both diagonal block determinants.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoOrthElem<T> {
    matrix: Mat<T>,
    m: usize,
    n: usize,
}

impl<T: Scalar> PseudoOrthElem<T> {
    pub fn try_new(matrix: Mat<T>, m: usize, n: usize, tol: T) -> Result<Self, PsError> {
        match membership_violation(&matrix, m, n, tol)? {
            None => Ok(Self { matrix, m, n }),
            Some(reason) => Err(PsError::NotMember(reason)),
        }
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.m, self.n)
    }
}

/// Symmetric boost [[sqrt(I+PᵀP), Pᵀ], [P, sqrt(I+PPᵀ)]] with its parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct BiBoost<T> {
    param: Mat<T>,
    matrix: Mat<T>,
}

impl<T: Scalar> BiBoost<T> {
    pub fn param(&self) -> &Mat<T> {
        &self.param
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }
}

/// The unique three-factor split of a group element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + Deserialize<'de>"
))]
pub struct Factorization<T> {
    #[serde(rename = "O_m")]
    pub om: Mat<T>,
    #[serde(rename = "P")]
    pub p: Mat<T>,
    #[serde(rename = "O_n")]
    pub on: Mat<T>,
}

fn expect_so<T: Scalar>(block: &Mat<T>, k: usize, tol: T) -> Result<(), PsError> {
    if block.rows() != k || block.cols() != k {
        return Err(PsError::Size {
            expected: k,
            rows: block.rows(),
            cols: block.cols(),
        });
    }
    if !block.is_special_orthogonal(tol) {
        let gram = block.transpose().mul(block).map_err(PsError::Mat)?;
        let residual = gram
            .max_abs_diff(&Mat::identity(k))
            .as_f64()
            .max((block.det() - T::one()).abs().as_f64());
        return Err(PsError::NotSpecialOrthogonal { residual });
    }
    Ok(())
}

/// Embeds a rotation of the positive part as [[O_m, 0], [0, I_n]].
pub fn embed_rho<T: Scalar>(om: &Mat<T>, n: usize, tol: T) -> Result<PseudoOrthElem<T>, PsError> {
    let m = om.rows();
    expect_so(om, m, tol)?;
    let matrix = Mat::from_blocks(
        om,
        &Mat::zeros(m, n),
        &Mat::zeros(n, m),
        &Mat::identity(n),
    );
    Ok(PseudoOrthElem { matrix, m, n })
}

/// Embeds a rotation of the negative part as [[I_m, 0], [0, O_n]].
pub fn embed_lambda<T: Scalar>(on: &Mat<T>, m: usize, tol: T) -> Result<PseudoOrthElem<T>, PsError> {
    let n = on.rows();
    expect_so(on, n, tol)?;
    let matrix = Mat::from_blocks(
        &Mat::identity(m),
        &Mat::zeros(m, n),
        &Mat::zeros(n, m),
        on,
    );
    Ok(PseudoOrthElem { matrix, m, n })
}

/// The bi-boost of an n x m parameter matrix.
pub fn beta<T: Scalar>(p: &Mat<T>, tol: T) -> Result<BiBoost<T>, PsError> {
    let (n, m) = (p.rows(), p.cols());
    let sc = (&Mat::identity(m) + &p.transpose().mul(p)?).spd_sqrt(tol)?;
    let sr = (&Mat::identity(n) + &p.mul(&p.transpose())?).spd_sqrt(tol)?;
    let matrix = Mat::from_blocks(&sc, &p.transpose(), p, &sr);
    Ok(BiBoost {
        param: p.clone(),
        matrix,
    })
}

/// None when `g` is a member; otherwise the first violated condition.
fn membership_violation<T: Scalar>(
    g: &Mat<T>,
    m: usize,
    n: usize,
    tol: T,
) -> Result<Option<String>, PsError> {
    let size = m + n;
    if g.rows() != size || g.cols() != size {
        return Err(PsError::Size {
            expected: size,
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let metric = eta::<T>(m, n);
    let preserved = g.transpose().mul(&metric)?.mul(g)?;
    let metric_residual = preserved.max_abs_diff(&metric);
    if metric_residual > tol {
        return Ok(Some(format!(
            "the metric is not preserved (residual {:.3e})",
            metric_residual.as_f64()
        )));
    }
    let det = g.det();
    if (det - T::one()).abs() > tol {
        return Ok(Some(format!("determinant {} is not +1", det)));
    }
    let det_a = g.submatrix(0, 0, m, m).det();
    if !(det_a > T::zero()) {
        return Ok(Some(format!(
            "upper-left block determinant {det_a} is not positive"
        )));
    }
    let det_d = g.submatrix(m, m, n, n).det();
    if !(det_d > T::zero()) {
        return Ok(Some(format!(
            "lower-right block determinant {det_d} is not positive"
        )));
    }
    Ok(None)
}

/// Membership in the identity component: metric preservation, unit
/// determinant, and positive determinants of both diagonal blocks.
pub fn is_member<T: Scalar>(g: &Mat<T>, m: usize, n: usize, tol: T) -> Result<bool, PsError> {
    Ok(membership_violation(g, m, n, tol)?.is_none())
}

/// Splits g = rho(O_m) beta(P) lambda(O_n). The parameter is read off the
/// lower-left block, which the block product leaves untouched; the two
/// rotations are recovered by cancelling the boost's diagonal blocks.
pub fn factor<T: Scalar>(g: &PseudoOrthElem<T>, tol: T) -> Result<Factorization<T>, PsError> {
    let (m, n) = g.signature();
    let gm = g.matrix();
    let p = gm.submatrix(m, 0, n, m);
    let a = gm.submatrix(0, 0, m, m);
    let d = gm.submatrix(m, m, n, n);
    let sc = (&Mat::identity(m) + &p.transpose().mul(&p)?).spd_sqrt(tol)?;
    let sr = (&Mat::identity(n) + &p.mul(&p.transpose())?).spd_sqrt(tol)?;
    let om = a.mul(&sc.inverse(tol)?)?;
    let on = sr.inverse(tol)?.mul(&d)?;
    if let Err(PsError::NotSpecialOrthogonal { residual }) = expect_so(&om, m, tol) {
        return Err(PsError::Inconsistent(format!(
            "recovered positive-part rotation is off by {residual:.3e}"
        )));
    }
    if let Err(PsError::NotSpecialOrthogonal { residual }) = expect_so(&on, n, tol) {
        return Err(PsError::Inconsistent(format!(
            "recovered negative-part rotation is off by {residual:.3e}"
        )));
    }
    let rebuilt = embed_rho(&om, n, tol)?
        .matrix()
        .mul(beta(&p, tol)?.matrix())?
        .mul(embed_lambda(&on, m, tol)?.matrix())?;
    let residual = rebuilt.max_abs_diff(gm);
    if residual > tol {
        return Err(PsError::Inconsistent(format!(
            "factors do not rebuild the input (residual {:.3e})",
            residual.as_f64()
        )));
    }
    Ok(Factorization { om, p, on })
}

/// Product of two bi-boosts, split into its unique three factors:
///
///   beta(P1) beta(P2) = rho(R) beta(P1 (+) P2) lambda(L)
///
/// with R the right gyration of (P1, P2) and L the left gyration. The
/// identity is asserted within tol before the parts are returned.
pub fn biboost_product<T: Scalar>(
    p1: &Mat<T>,
    p2: &Mat<T>,
    tol: T,
) -> Result<(RightGyr<T>, Mat<T>, LeftGyr<T>), PsError> {
    let params = BgParams::new(p1.cols(), p1.rows(), tol)?;
    let r = right_gyr(p1, p2, &params)?;
    let sum = bg_add(p1, p2, &params)?;
    let l = left_gyr(p1, p2, &params)?;
    let (m, n) = (params.m, params.n);
    let product = beta(p1, tol)?.matrix().mul(beta(p2, tol)?.matrix())?;
    let split = embed_rho(r.matrix(), n, tol)?
        .matrix()
        .mul(beta(&sum, tol)?.matrix())?
        .mul(embed_lambda(l.matrix(), m, tol)?.matrix())?;
    let residual = product.max_abs_diff(&split);
    if residual > tol {
        return Err(PsError::Inconsistent(format!(
            "boost product does not match its three-factor split (residual {:.3e})",
            residual.as_f64()
        )));
    }
    Ok((r, sum, l))
}

/// Rotation assembled from a full sweep of Givens rotations with the given
/// angles; a convenience sampler for tests and verification drivers.
pub fn rotation_from_angles<T: Scalar>(k: usize, angles: &[T]) -> Mat<T> {
    let mut out = Mat::identity(k);
    let mut idx = 0;
    for i in 0..k {
        for j in (i + 1)..k {
            let theta = angles.get(idx).copied().unwrap_or_else(T::zero);
            idx += 1;
            let (sin, cos) = theta.sin_cos();
            let g = Mat::from_fn(k, k, |r, c| {
                if r == i && c == i || r == j && c == j {
                    cos
                } else if r == i && c == j {
                    -sin
                } else if r == j && c == i {
                    sin
                } else if r == c {
                    T::one()
                } else {
                    T::zero()
                }
            });
            out = out.mul(&g).expect("conforming square factors");
        }
    }
    out
}
