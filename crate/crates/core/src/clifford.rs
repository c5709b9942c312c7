//! Real Clifford algebras of signature (m, n) at desk scale, the twisted
//! adjoint action, and spin lifts of special pseudo-orthogonal matrices.
//!
//! Blades are indexed by bitmasks over the basis vectors e_0 .. e_{m+n-1},
//! with e_i² = +1 for i < m and −1 otherwise, so a multivector is a dense
//! vector of 2^(m+n) coefficients and the geometric product reduces to an
//! XOR of masks once reordering and metric signs are counted. The cap
//! m + n <= 4 keeps every basis sweep exhaustive and cheap.
//!
//! `twisted_adjoint` sends g to the matrix of v -> ĝ v g⁻¹ on the grade-1
//! subspace; on unit vectors it is the reflection through the orthogonal
//! hyperplane, and on even products of unit vectors it lands in SO(m, n).
//! `lift_to_spin` inverts that map by a deterministic two-candidate
//! reflection pivot, and `verify_spin_decomposition` samples bi-boosts to
//! check that lifted products transport the rho-beta-lambda factorization
//! and its gyrations, law for law, up to the kernel sign.

use crate::bigyro::{bg_add, left_gyr, right_gyr, BgError, BgParams};
use crate::mat::{Mat, MatError};
use crate::pseudo_orth::{beta, eta, factor, PsError, PseudoOrthElem};
use crate::report::{LawCheck, ResidualTable};
use crate::scalar::Scalar;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("algebra mismatch: Cl{lhs:?} vs Cl{rhs:?}")]
    AlgebraMismatch {
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("adjoint image is not a vector within tol (residual {residual:.3e})")]
    NotInCliffordGroup { residual: f64 },
    #[error("null vector (Q = {q:.3e}) cannot be normalized")]
    NullVector { q: f64 },
    #[error("reflection factorization failed (residual {residual:.3e})")]
    LiftFailure { residual: f64 },
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Ps(#[from] PsError),
    #[error(transparent)]
    Bg(#[from] BgError),
}

/// Largest number of basis vectors; the algebra dimension stays at most 16.
pub const MAX_BASIS: usize = 4;

/// Signature of the quadratic form: e_i² = +1 for i < m, −1 for m <= i < m+n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordAlgebra {
    pub m: usize,
    pub n: usize,
}

impl CliffordAlgebra {
    pub fn new(m: usize, n: usize) -> Result<Self, ClError> {
        if m + n == 0 || m + n > MAX_BASIS {
            return Err(ClError::Input(format!(
                "signature ({m}, {n}) must have between 1 and {MAX_BASIS} basis vectors"
            )));
        }
        Ok(Self { m, n })
    }

    /// Number of basis vectors, m + n.
    pub fn vector_dim(&self) -> usize {
        self.m + self.n
    }

    /// Number of blades, 2^(m+n).
    pub fn dim(&self) -> usize {
        1 << (self.m + self.n)
    }

    fn metric<T: Scalar>(&self, i: usize) -> T {
        if i < self.m {
            T::one()
        } else {
            -T::one()
        }
    }
}

/// Sign from moving every factor of `b` past the higher factors of `a`
/// while merging two sorted blades; one transposition per crossing.
fn reorder_sign(a: usize, b: usize) -> i32 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn blade_sign<T: Scalar>(alg: &CliffordAlgebra, a: usize, b: usize) -> T {
    let mut sign = if reorder_sign(a, b) == 1 {
        T::one()
    } else {
        -T::one()
    };
    let mut common = a & b;
    while common != 0 {
        let i = common.trailing_zeros() as usize;
        sign = sign * alg.metric::<T>(i);
        common &= common - 1;
    }
    sign
}

/// Dense multivector: one real coefficient per blade bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<T> {
    alg: CliffordAlgebra,
    coeffs: Vec<T>,
}

impl<T: Scalar> Multivector<T> {
    pub fn zero(alg: CliffordAlgebra) -> Self {
        Self {
            alg,
            coeffs: vec![T::zero(); alg.dim()],
        }
    }

    pub fn scalar(alg: CliffordAlgebra, c: T) -> Self {
        let mut out = Self::zero(alg);
        out.coeffs[0] = c;
        out
    }

    pub fn basis_vector(alg: CliffordAlgebra, i: usize) -> Result<Self, ClError> {
        if i >= alg.vector_dim() {
            return Err(ClError::Input(format!(
                "basis index {i} out of range for {} vectors",
                alg.vector_dim()
            )));
        }
        let mut out = Self::zero(alg);
        out.coeffs[1 << i] = T::one();
        Ok(out)
    }

    /// Grade-1 element with the given coordinates.
    pub fn vector(alg: CliffordAlgebra, coords: &[T]) -> Result<Self, ClError> {
        if coords.len() != alg.vector_dim() {
            return Err(ClError::Input(format!(
                "expected {} coordinates, got {}",
                alg.vector_dim(),
                coords.len()
            )));
        }
        let mut out = Self::zero(alg);
        for (i, c) in coords.iter().enumerate() {
            out.coeffs[1 << i] = *c;
        }
        Ok(out)
    }

    pub fn from_coeffs(alg: CliffordAlgebra, coeffs: Vec<T>) -> Result<Self, ClError> {
        if coeffs.len() != alg.dim() {
            return Err(ClError::Input(format!(
                "expected {} blade coefficients, got {}",
                alg.dim(),
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(ClError::Input(format!(
                "non-finite coefficient at blade {bad}"
            )));
        }
        Ok(Self { alg, coeffs })
    }

    pub fn algebra(&self) -> CliffordAlgebra {
        self.alg
    }

    pub fn coeff(&self, blade: usize) -> T {
        self.coeffs[blade]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    fn same_algebra(&self, rhs: &Self) -> Result<(), ClError> {
        if self.alg != rhs.alg {
            return Err(ClError::AlgebraMismatch {
                lhs: (self.alg.m, self.alg.n),
                rhs: (rhs.alg.m, rhs.alg.n),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ClError> {
        self.same_algebra(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(Self {
            alg: self.alg,
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, ClError> {
        self.same_algebra(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| *a - *b)
            .collect();
        Ok(Self {
            alg: self.alg,
            coeffs,
        })
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            alg: self.alg,
            coeffs: self.coeffs.iter().map(|a| *a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    pub fn max_abs(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc.max(c.abs()))
    }

    /// Largest absolute coefficient difference; the algebras must agree.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(self.alg, rhs.alg, "max_abs_diff on mismatched algebras");
        self.coeffs
            .iter()
            .zip(&rhs.coeffs)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
    }

    fn grade1_coords(&self) -> Vec<T> {
        (0..self.alg.vector_dim())
            .map(|i| self.coeffs[1 << i])
            .collect()
    }

    /// Largest coefficient outside grade 1; zero iff the element is a vector.
    fn off_grade1(&self) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() != 1)
            .fold(T::zero(), |acc, (_, c)| acc.max(c.abs()))
    }
}

/// Geometric product by blade-bitmask composition.
pub fn gp<T: Scalar>(a: &Multivector<T>, b: &Multivector<T>) -> Result<Multivector<T>, ClError> {
    a.same_algebra(b)?;
    let alg = a.alg;
    let mut coeffs = vec![T::zero(); alg.dim()];
    for (i, ca) in a.coeffs.iter().enumerate() {
        if *ca == T::zero() {
            continue;
        }
        for (j, cb) in b.coeffs.iter().enumerate() {
            if *cb == T::zero() {
                continue;
            }
            let sign: T = blade_sign(&alg, i, j);
            coeffs[i ^ j] = coeffs[i ^ j] + sign * *ca * *cb;
        }
    }
    Ok(Multivector { alg, coeffs })
}

/// Algebra automorphism negating each odd-grade blade; fixes vectors' squares
/// and restricts to v -> −v on grade 1.
pub fn grade_involution<T: Scalar>(a: &Multivector<T>) -> Multivector<T> {
    let coeffs = a
        .coeffs
        .iter()
        .enumerate()
        .map(|(mask, c)| {
            if mask.count_ones() % 2 == 0 {
                *c
            } else {
                -*c
            }
        })
        .collect();
    Multivector {
        alg: a.alg,
        coeffs,
    }
}

/// Quadratic form on the grade-1 part: sum of metric-signed squared coords.
pub fn q_form<T: Scalar>(v: &Multivector<T>) -> T {
    let mut q = T::zero();
    for (i, c) in v.grade1_coords().iter().enumerate() {
        q = q + v.alg.metric::<T>(i) * *c * *c;
    }
    q
}

/// Symmetric bilinear form on the grade-1 parts; polarization of `q_form`.
pub fn b_form<T: Scalar>(u: &Multivector<T>, v: &Multivector<T>) -> Result<T, ClError> {
    u.same_algebra(v)?;
    let us = u.grade1_coords();
    let vs = v.grade1_coords();
    let mut b = T::zero();
    for i in 0..us.len() {
        b = b + u.alg.metric::<T>(i) * us[i] * vs[i];
    }
    Ok(b)
}

/// Two-sided inverse, solved from the left-multiplication operator of g.
/// The operator is singular exactly when g is a zero divisor.
pub fn inverse<T: Scalar>(g: &Multivector<T>, tol: T) -> Result<Multivector<T>, ClError> {
    let alg = g.alg;
    let d = alg.dim();
    let mut cols = vec![vec![T::zero(); d]; d];
    for (k, col) in cols.iter_mut().enumerate() {
        for (a, ca) in g.coeffs.iter().enumerate() {
            if *ca == T::zero() {
                continue;
            }
            let sign: T = blade_sign(&alg, a, k);
            col[a ^ k] = col[a ^ k] + sign * *ca;
        }
    }
    let lmat = Mat::from_fn(d, d, |r, c| cols[c][r]);
    let linv = lmat.inverse(tol).map_err(|e| match e {
        MatError::Singular { .. } => ClError::NotInvertible,
        other => ClError::Mat(other),
    })?;
    let one = Mat::from_fn(d, 1, |r, _| if r == 0 { T::one() } else { T::zero() });
    let x = linv.mul(&one)?;
    let coeffs = (0..d).map(|r| x.get(r, 0)).collect();
    Ok(Multivector { alg, coeffs })
}

/// Matrix of v -> ĝ v g⁻¹ on the grade-1 subspace, columns indexed by basis
/// vectors. Fails unless every basis image is grade 1 within tol, which is
/// the membership test for the Clifford group of the form.
pub fn twisted_adjoint<T: Scalar>(g: &Multivector<T>, tol: T) -> Result<Mat<T>, ClError> {
    let alg = g.alg;
    let d = alg.vector_dim();
    let ginv = inverse(g, tol)?;
    let ghat = grade_involution(g);
    let mut columns = Vec::with_capacity(d);
    let mut worst = T::zero();
    for j in 0..d {
        let ej = Multivector::basis_vector(alg, j)?;
        let image = gp(&gp(&ghat, &ej)?, &ginv)?;
        worst = worst.max(image.off_grade1());
        columns.push(image.grade1_coords());
    }
    if worst > tol {
        return Err(ClError::NotInCliffordGroup {
            residual: worst.as_f64(),
        });
    }
    Ok(Mat::from_fn(d, d, |i, j| columns[j][i]))
}

/// Even product of unit vectors, kept with its reflection factors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinElem<T> {
    pub factors: Vec<Multivector<T>>,
    pub product: Multivector<T>,
}

/// Normalizes each factor to |Q| = 1 and multiplies them out. Reflection
/// directions are scale-free, so normalization never changes the adjoint.
pub fn make_spin<T: Scalar>(
    alg: CliffordAlgebra,
    vectors: &[Multivector<T>],
    tol: T,
) -> Result<SpinElem<T>, ClError> {
    if vectors.len() % 2 != 0 {
        return Err(ClError::Input(format!(
            "spin elements are even products, got {} factors",
            vectors.len()
        )));
    }
    let mut factors = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        if v.alg != alg {
            return Err(ClError::AlgebraMismatch {
                lhs: (alg.m, alg.n),
                rhs: (v.alg.m, v.alg.n),
            });
        }
        if v.off_grade1() > tol {
            return Err(ClError::Input(format!("factor {i} is not a vector")));
        }
        let q = q_form(v);
        if q.abs() <= tol {
            return Err(ClError::NullVector { q: q.as_f64() });
        }
        let scale = T::one() / q.abs().sqrt();
        let coords: Vec<T> = v.grade1_coords().iter().map(|c| *c * scale).collect();
        factors.push(Multivector::vector(alg, &coords)?);
    }
    let mut product = Multivector::scalar(alg, T::one());
    for f in &factors {
        product = gp(&product, f)?;
    }
    Ok(SpinElem { factors, product })
}

fn column<T: Scalar>(m: &Mat<T>, j: usize) -> Mat<T> {
    Mat::from_fn(m.rows(), 1, |i, _| m.get(i, j))
}

fn quad_of_column<T: Scalar>(metric: &Mat<T>, col: &Mat<T>) -> T {
    let mut q = T::zero();
    for i in 0..col.rows() {
        q = q + metric.get(i, i) * col.get(i, 0) * col.get(i, 0);
    }
    q
}

/// I − (2 / Q(w)) w (ηw)ᵀ, the reflection through the hyperplane
/// B-orthogonal to w.
fn reflection_matrix<T: Scalar>(metric: &Mat<T>, w: &Mat<T>, q: T) -> Result<Mat<T>, ClError> {
    let etaw = metric.mul(w)?;
    let outer = w.mul(&etaw.transpose())?.scale(T::of(2.0) / q);
    Ok(&Mat::identity(w.rows()) - &outer)
}

/// Factors a special pseudo-orthogonal matrix into reflections and lifts it
/// to a spin element whose twisted adjoint reproduces the matrix within tol.
///
/// Column j is restored to e_j by reflecting through w = Re_j − e_j or, when
/// that direction is too close to the null cone, through Re_j + e_j followed
/// by e_j. Since Q(Re_j ± e_j) sum to ±4, the better candidate always has
/// |Q| >= 2, so the pivot is deterministic and never degenerates; columns
/// already fixed stay fixed because both candidates are B-orthogonal to them.
pub fn lift_to_spin<T: Scalar>(g: &PseudoOrthElem<T>, tol: T) -> Result<SpinElem<T>, ClError> {
    let (m, n) = g.signature();
    let alg = CliffordAlgebra::new(m, n)?;
    let d = alg.vector_dim();
    let metric = eta::<T>(m, n);
    let skip = T::epsilon() * T::of(64.0);
    let mut rest = g.matrix().clone();
    let mut pivots: Vec<Mat<T>> = Vec::new();
    for j in 0..d {
        let ej = Mat::from_fn(d, 1, |i, _| if i == j { T::one() } else { T::zero() });
        let x = column(&rest, j);
        if x.max_abs_diff(&ej) <= skip {
            continue;
        }
        let w1 = &x - &ej;
        let w2 = &x + &ej;
        let q1 = quad_of_column(&metric, &w1);
        let q2 = quad_of_column(&metric, &w2);
        if q1.abs() >= q2.abs() {
            rest = reflection_matrix(&metric, &w1, q1)?.mul(&rest)?;
            pivots.push(w1);
        } else {
            rest = reflection_matrix(&metric, &w2, q2)?.mul(&rest)?;
            pivots.push(w2);
            let qe = quad_of_column(&metric, &ej);
            rest = reflection_matrix(&metric, &ej, qe)?.mul(&rest)?;
            pivots.push(ej);
        }
    }
    let residual = rest.max_abs_diff(&Mat::identity(d));
    if residual > tol || pivots.len() % 2 != 0 {
        return Err(ClError::LiftFailure {
            residual: residual.as_f64(),
        });
    }
    let vectors = pivots
        .iter()
        .map(|w| {
            let coords: Vec<T> = (0..d).map(|i| w.get(i, 0)).collect();
            Multivector::vector(alg, &coords)
        })
        .collect::<Result<Vec<_>, _>>()?;
    make_spin(alg, &vectors, tol)
}

fn sample_point<T: Scalar>(rng: &mut ChaCha8Rng, params: &BgParams<T>) -> Mat<T> {
    Mat::from_fn(params.n, params.m, |_, _| T::of(rng.gen_range(-2.0..=2.0)))
}

/// Samples pairs of bi-boosts, lifts them, and measures how faithfully the
/// lifted products project back: the adjoint must be a homomorphism into
/// SO(m, n), two lifts of one matrix may differ only by the kernel sign, and
/// factoring the projected product must reproduce the twisted addition and
/// both gyrations of the parameters. Deterministic for a fixed seed, one
/// generator stream per trial.
pub fn verify_spin_decomposition<T: Scalar>(
    params: &BgParams<T>,
    trials: usize,
    seed: u64,
) -> Result<Vec<LawCheck>, ClError> {
    CliffordAlgebra::new(params.m, params.n)?;
    if trials == 0 {
        return Err(ClError::Input("trials must be at least 1".to_string()));
    }
    let (m, n, tol) = (params.m, params.n, params.tol);
    let metric = eta::<T>(m, n);
    let mut table = ResidualTable::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let p1 = sample_point(&mut rng, params);
        let p2 = sample_point(&mut rng, params);
        let b1 = PseudoOrthElem::try_new(beta(&p1, tol)?.matrix().clone(), m, n, tol)?;
        let b2 = PseudoOrthElem::try_new(beta(&p2, tol)?.matrix().clone(), m, n, tol)?;
        let (g1, g2) = match (lift_to_spin(&b1, tol), lift_to_spin(&b2, tol)) {
            (Ok(g1), Ok(g2)) => {
                table.observe("boost lifts succeed", 0.0);
                (g1, g2)
            }
            _ => {
                table.observe("boost lifts succeed", 1.0);
                continue;
            }
        };
        let a1 = twisted_adjoint(&g1.product, tol)?;
        let a2 = twisted_adjoint(&g2.product, tol)?;
        let round = a1
            .max_abs_diff(b1.matrix())
            .max(a2.max_abs_diff(b2.matrix()));
        table.observe("lift round trip", round.as_f64());

        let g12 = gp(&g1.product, &g2.product)?;
        let a12 = twisted_adjoint(&g12, tol)?;
        table.observe(
            "adjoint homomorphism",
            a12.max_abs_diff(&a1.mul(&a2)?).as_f64(),
        );
        table.observe(
            "kernel sign invariance",
            twisted_adjoint(&g12.neg(), tol)?.max_abs_diff(&a12).as_f64(),
        );
        let preserved = a12.transpose().mul(&metric)?.mul(&a12)?;
        let sig = preserved
            .max_abs_diff(&metric)
            .max((a12.det() - T::one()).abs());
        table.observe("signature relation", sig.as_f64());

        let elem12 = PseudoOrthElem::try_new(a12.clone(), m, n, tol)?;
        let relift = lift_to_spin(&elem12, tol)?;
        let sign = relift
            .product
            .max_abs_diff(&g12)
            .min(relift.product.neg().max_abs_diff(&g12));
        table.observe("relift agrees up to sign", sign.as_f64());

        let f = factor(&elem12, tol)?;
        table.observe(
            "transported addition",
            f.p.max_abs_diff(&bg_add(&p1, &p2, params)?).as_f64(),
        );
        table.observe(
            "transported right gyration",
            f.om
                .max_abs_diff(right_gyr(&p1, &p2, params)?.matrix())
                .as_f64(),
        );
        table.observe(
            "transported left gyration",
            f.on
                .max_abs_diff(left_gyr(&p1, &p2, params)?.matrix())
                .as_f64(),
        );
    }
    Ok(table.into_report(trials, tol.as_f64()))
}

#[derive(Serialize, Deserialize)]
struct MultivectorWire {
    m: usize,
    n: usize,
    coeffs: BTreeMap<String, f64>,
}

impl<T: Scalar> Serialize for Multivector<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != T::zero())
            .map(|(mask, c)| (mask.to_string(), c.as_f64()))
            .collect();
        MultivectorWire {
            m: self.alg.m,
            n: self.alg.n,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Multivector<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = MultivectorWire::deserialize(deserializer)?;
        let alg = CliffordAlgebra::new(wire.m, wire.n).map_err(serde::de::Error::custom)?;
        let mut out = Multivector::zero(alg);
        for (key, value) in &wire.coeffs {
            let mask: usize = key
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad blade index {key:?}")))?;
            if mask >= alg.dim() {
                return Err(serde::de::Error::custom(format!(
                    "blade index {mask} out of range for dimension {}",
                    alg.dim()
                )));
            }
            if !value.is_finite() {
                return Err(serde::de::Error::custom(format!(
                    "non-finite coefficient at blade {mask}"
                )));
            }
            out.coeffs[mask] = T::of(*value);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo_orth::{embed_lambda, embed_rho, rotation_from_angles};
    use crate::report::all_pass;

    const TOL: f64 = 1e-9;

    fn alg(m: usize, n: usize) -> CliffordAlgebra {
        CliffordAlgebra::new(m, n).unwrap()
    }

    fn e(a: CliffordAlgebra, i: usize) -> Multivector<f64> {
        Multivector::basis_vector(a, i).unwrap()
    }

    fn vecmv(a: CliffordAlgebra, coords: &[f64]) -> Multivector<f64> {
        Multivector::vector(a, coords).unwrap()
    }

    #[test]
    fn basis_vectors_square_to_their_metric_signs() {
        let a = alg(2, 1);
        assert_eq!(gp(&e(a, 0), &e(a, 0)).unwrap(), Multivector::scalar(a, 1.0));
        assert_eq!(gp(&e(a, 1), &e(a, 1)).unwrap(), Multivector::scalar(a, 1.0));
        assert_eq!(
            gp(&e(a, 2), &e(a, 2)).unwrap(),
            Multivector::scalar(a, -1.0)
        );
        assert_eq!(
            gp(&e(a, 0), &e(a, 1)).unwrap(),
            gp(&e(a, 1), &e(a, 0)).unwrap().neg()
        );
        let euclid = alg(2, 0);
        let rotor = gp(&e(euclid, 0), &e(euclid, 1)).unwrap();
        assert_eq!(
            gp(&rotor, &rotor).unwrap(),
            Multivector::scalar(euclid, -1.0)
        );
    }

    #[test]
    fn grade_involution_negates_odd_grades_and_respects_products() {
        let a = alg(2, 1);
        let one = Multivector::scalar(a, 1.0);
        assert_eq!(grade_involution(&one), one);
        let v = vecmv(a, &[0.5, -2.0, 1.5]);
        assert_eq!(grade_involution(&v), v.neg());
        let rotor = gp(&e(a, 0), &e(a, 1)).unwrap();
        assert_eq!(grade_involution(&rotor), rotor);

        let g = one.add(&v).unwrap().add(&rotor.scale(3.0)).unwrap();
        let h = vecmv(a, &[1.0, 0.25, -0.75])
            .add(&gp(&e(a, 1), &e(a, 2)).unwrap())
            .unwrap();
        let lhs = grade_involution(&gp(&g, &h).unwrap());
        let rhs = gp(&grade_involution(&g), &grade_involution(&h)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn anticommutators_recover_the_bilinear_form() {
        let a = alg(2, 1);
        let u = vecmv(a, &[0.7, -1.2, 0.4]);
        let v = vecmv(a, &[1.5, 0.3, -0.9]);
        let anti = gp(&u, &v).unwrap().add(&gp(&v, &u).unwrap()).unwrap();
        let expect = Multivector::scalar(a, 2.0 * b_form(&u, &v).unwrap());
        assert!(anti.max_abs_diff(&expect) <= 1e-14);
        assert!((q_form(&u) - b_form(&u, &u).unwrap()).abs() <= 1e-15);
    }

    #[test]
    fn scalars_act_trivially() {
        let a = alg(2, 1);
        let id = Mat::identity(3);
        for c in [1.0, 2.5, -0.75] {
            let adj = twisted_adjoint(&Multivector::scalar(a, c), TOL).unwrap();
            assert!(adj.max_abs_diff(&id) <= 1e-12);
        }
    }

    #[test]
    fn unit_vectors_reflect_through_their_orthogonal_hyperplane() {
        let a = alg(2, 1);
        for coords in [[0.6, 0.8, 0.0], [0.3, 0.4, 1.3], [0.0, 1.0, 0.0]] {
            let v = vecmv(a, &coords);
            let q = q_form(&v);
            let adj = twisted_adjoint(&v, TOL).unwrap();
            for j in 0..3 {
                let u = e(a, j);
                let scale = 2.0 * b_form(&u, &v).unwrap() / q;
                let expect = u.sub(&v.scale(scale)).unwrap();
                let got = vecmv(a, &[adj.get(0, j), adj.get(1, j), adj.get(2, j)]);
                assert!(got.max_abs_diff(&expect) <= 1e-12);
            }
            let metric = eta::<f64>(2, 1);
            let preserved = adj.transpose().mul(&metric).unwrap().mul(&adj).unwrap();
            assert!(preserved.max_abs_diff(&metric) <= 1e-12);
        }
    }

    #[test]
    fn opposite_elements_share_the_adjoint() {
        let a = alg(2, 1);
        let s = make_spin(
            a,
            &[vecmv(a, &[0.6, 0.8, 0.0]), vecmv(a, &[0.3, 0.4, 1.3])],
            TOL,
        )
        .unwrap();
        let plus = twisted_adjoint(&s.product, TOL).unwrap();
        let minus = twisted_adjoint(&s.product.neg(), TOL).unwrap();
        assert!(plus.max_abs_diff(&minus) <= 1e-13);
        assert!(plus.max_abs_diff(&Mat::identity(3)) > 0.1);
    }

    #[test]
    fn elements_outside_the_clifford_group_are_rejected() {
        let a = alg(3, 0);
        let pseudo = gp(&gp(&e(a, 0), &e(a, 1)).unwrap(), &e(a, 2)).unwrap();
        let g = Multivector::scalar(a, 1.0).add(&pseudo).unwrap();
        match twisted_adjoint(&g, TOL) {
            Err(ClError::NotInCliffordGroup { residual }) => assert!(residual > 0.5),
            other => panic!("expected a Clifford-group rejection, got {other:?}"),
        }

        let line = alg(1, 0);
        let zero_divisor = Multivector::scalar(line, 1.0).add(&e(line, 0)).unwrap();
        assert!(matches!(
            twisted_adjoint(&zero_divisor, TOL),
            Err(ClError::NotInvertible)
        ));
    }

    #[test]
    fn spin_factors_normalize_cancel_and_reject_null_directions() {
        let a = alg(2, 1);
        let empty = make_spin::<f64>(a, &[], TOL).unwrap();
        assert_eq!(empty.product, Multivector::scalar(a, 1.0));
        assert!(twisted_adjoint(&empty.product, TOL)
            .unwrap()
            .max_abs_diff(&Mat::identity(3))
            <= 1e-12);

        let v = vecmv(a, &[3.0, 4.0, 0.0]);
        let squared = make_spin(a, &[v.clone(), v.clone()], TOL).unwrap();
        assert!(
            squared
                .product
                .max_abs_diff(&Multivector::scalar(a, 1.0))
                <= 1e-12
        );
        assert!((q_form(&squared.factors[0]).abs() - 1.0).abs() <= 1e-12);

        assert!(matches!(
            make_spin(a, &[v.clone()], TOL),
            Err(ClError::Input(_))
        ));
        assert!(matches!(
            make_spin(a, &[v, vecmv(a, &[1.0, 0.0, 1.0])], TOL),
            Err(ClError::NullVector { .. })
        ));
    }

    #[test]
    fn two_reflections_compose_into_a_special_orthogonal_map() {
        let a = alg(2, 1);
        let s = make_spin(
            a,
            &[vecmv(a, &[0.9, -0.2, 0.1]), vecmv(a, &[-0.4, 1.1, 0.5])],
            TOL,
        )
        .unwrap();
        let adj = twisted_adjoint(&s.product, TOL).unwrap();
        assert!(PseudoOrthElem::try_new(adj, 2, 1, 1e-9).is_ok());
    }

    #[test]
    fn hyperbolic_boosts_lift_to_spin_elements() {
        let u = 0.8f64;
        let p = Mat::from_vec(1, 1, vec![u.sinh()]).unwrap();
        let b = beta(&p, TOL).unwrap();
        let elem = PseudoOrthElem::try_new(b.matrix().clone(), 1, 1, TOL).unwrap();
        let s = lift_to_spin(&elem, TOL).unwrap();
        assert_eq!(s.factors.len() % 2, 0);
        let expect =
            Mat::from_rows(vec![vec![u.cosh(), u.sinh()], vec![u.sinh(), u.cosh()]]).unwrap();
        let adj = twisted_adjoint(&s.product, TOL).unwrap();
        assert!(adj.max_abs_diff(&expect) <= 1e-9);
    }

    #[test]
    fn lifts_round_trip_over_composed_products() {
        let id = PseudoOrthElem::try_new(Mat::identity(3), 2, 1, TOL).unwrap();
        let trivial = lift_to_spin(&id, TOL).unwrap();
        assert!(trivial.factors.is_empty());

        for (m, n, angles_m, angles_n, p_data) in [
            (2usize, 1usize, vec![0.7], vec![], vec![0.4, -1.1]),
            (1, 2, vec![], vec![-0.9], vec![1.3, 0.2]),
            (2, 2, vec![0.35], vec![1.2], vec![0.5, -0.8, 0.1, 1.6]),
        ] {
            let om = rotation_from_angles(m, &angles_m);
            let on = rotation_from_angles(n, &angles_n);
            let p = Mat::from_vec(n, m, p_data).unwrap();
            let g = embed_rho(&om, n, TOL)
                .unwrap()
                .matrix()
                .mul(beta(&p, TOL).unwrap().matrix())
                .unwrap()
                .mul(embed_lambda(&on, m, TOL).unwrap().matrix())
                .unwrap();
            let elem = PseudoOrthElem::try_new(g.clone(), m, n, 1e-8).unwrap();
            let s = lift_to_spin(&elem, 1e-8).unwrap();
            assert_eq!(s.factors.len() % 2, 0);
            assert!(s.factors.len() <= 2 * (m + n));
            for f in &s.factors {
                assert!((q_form(f).abs() - 1.0).abs() <= 1e-12);
            }
            let adj = twisted_adjoint(&s.product, 1e-8).unwrap();
            assert!(adj.max_abs_diff(&g) <= 1e-8);
        }
    }

    #[test]
    fn sampled_spin_laws_hold_in_low_signatures() {
        let params = BgParams::new(1, 1, 1e-8).unwrap();
        let report = verify_spin_decomposition(&params, 100, 42).unwrap();
        assert!(all_pass(&report), "{report:?}");

        let params = BgParams::new(2, 1, 1e-7).unwrap();
        let report = verify_spin_decomposition(&params, 100, 42).unwrap();
        assert!(all_pass(&report), "{report:?}");
        let names: Vec<&str> = report.iter().map(|c| c.law.as_str()).collect();
        assert!(names.contains(&"adjoint homomorphism"));
        assert!(names.contains(&"transported left gyration"));
    }

    #[test]
    fn degenerate_verification_requests_are_rejected() {
        let params = BgParams::new(1, 1, 1e-8).unwrap();
        assert!(matches!(
            verify_spin_decomposition(&params, 0, 42),
            Err(ClError::Input(_))
        ));
        let wide = BgParams::new(3, 2, 1e-8).unwrap();
        assert!(matches!(
            verify_spin_decomposition(&wide, 10, 42),
            Err(ClError::Input(_))
        ));
        assert!(CliffordAlgebra::new(5, 0).is_err());
        assert!(CliffordAlgebra::new(0, 0).is_err());
    }

    #[test]
    fn wire_format_round_trips_sparsely() {
        let a = alg(2, 1);
        let mv = Multivector::scalar(a, 0.5)
            .add(&e(a, 0).scale(2.0))
            .unwrap()
            .add(&gp(&gp(&e(a, 0), &e(a, 1)).unwrap(), &e(a, 2)).unwrap().scale(-1.25))
            .unwrap();
        let json = serde_json::to_string(&mv).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["coeffs"].as_object().unwrap().len(), 3);
        assert_eq!(value["m"], 2);
        let back: Multivector<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mv);

        let parsed: Multivector<f64> =
            serde_json::from_str(r#"{"m":1,"n":1,"coeffs":{"3":0.25}}"#).unwrap();
        assert_eq!(parsed.coeff(3), 0.25);
        assert!(serde_json::from_str::<Multivector<f64>>(
            r#"{"m":1,"n":0,"coeffs":{"2":1.0}}"#
        )
        .is_err());
        assert!(serde_json::from_str::<Multivector<f64>>(
            r#"{"m":4,"n":1,"coeffs":{}}"#
        )
        .is_err());
    }
}
