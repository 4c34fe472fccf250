//! Single-spin and two-spin state vectors.
//!
//! Two-spin amplitudes are stored in the fixed order `|++>, |+->, |-+>, |-->`,
//! so amplitude index `2*i + j` belongs to factor-1 level `i` and factor-2
//! level `j` (level 0 is `|+>`, level 1 is `|->`).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used for every normalization and orthogonality check.
pub const NORM_TOL: f64 = 1e-12;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A spin-1/2 state `c_plus |+> + c_minus |->`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    pub c_plus: Complex64,
    pub c_minus: Complex64,
}

impl Spinor {
    pub fn new(c_plus: Complex64, c_minus: Complex64) -> Result<Self> {
        if !finite(c_plus) || !finite(c_minus) {
            return Err(Error::InvalidInput("spinor amplitude is not finite".into()));
        }
        Ok(Self { c_plus, c_minus })
    }

    pub fn from_real(c_plus: f64, c_minus: f64) -> Result<Self> {
        Self::new(Complex64::new(c_plus, 0.0), Complex64::new(c_minus, 0.0))
    }

    pub fn plus() -> Self {
        Self { c_plus: Complex64::new(1.0, 0.0), c_minus: Complex64::new(0.0, 0.0) }
    }

    pub fn minus() -> Self {
        Self { c_plus: Complex64::new(0.0, 0.0), c_minus: Complex64::new(1.0, 0.0) }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.c_plus, self.c_minus]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_plus.norm_sqr() + self.c_minus.norm_sqr()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }
}

/// A two-spin state vector over `|++>, |+->, |-+>, |-->`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSpinState {
    amplitudes: [Complex64; 4],
}

impl TwoSpinState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if !amplitudes.iter().copied().all(finite) {
            return Err(Error::InvalidInput("two-spin amplitude is not finite".into()));
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: [f64; 4]) -> Result<Self> {
        Self::new(amplitudes.map(|a| Complex64::new(a, 0.0)))
    }

    pub(crate) fn from_raw(amplitudes: [Complex64; 4]) -> Self {
        Self { amplitudes }
    }

    pub fn zero() -> Self {
        Self::from_raw([Complex64::new(0.0, 0.0); 4])
    }

    /// The product basis state with factor levels `(i, j)`, `0 = |+>`, `1 = |->`.
    pub fn basis(i: usize, j: usize) -> Self {
        assert!(i < 2 && j < 2, "basis levels are 0 or 1");
        let mut amps = [Complex64::new(0.0, 0.0); 4];
        amps[2 * i + j] = Complex64::new(1.0, 0.0);
        Self::from_raw(amps)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amplitudes[2 * i + j]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &TwoSpinState) -> f64 {
        self.amplitudes.iter().zip(other.amplitudes.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_raw(self.amplitudes.map(|a| a * c))
    }
}

impl Add for TwoSpinState {
    type Output = TwoSpinState;

    fn add(self, rhs: TwoSpinState) -> TwoSpinState {
        let mut out = self.amplitudes;
        for (o, r) in out.iter_mut().zip(rhs.amplitudes) {
            *o += r;
        }
        TwoSpinState::from_raw(out)
    }
}

impl Sub for TwoSpinState {
    type Output = TwoSpinState;

    fn sub(self, rhs: TwoSpinState) -> TwoSpinState {
        self + (-rhs)
    }
}

impl Neg for TwoSpinState {
    type Output = TwoSpinState;

    fn neg(self) -> TwoSpinState {
        TwoSpinState::from_raw(self.amplitudes.map(|a| -a))
    }
}

impl Mul<TwoSpinState> for f64 {
    type Output = TwoSpinState;

    fn mul(self, rhs: TwoSpinState) -> TwoSpinState {
        rhs.scale(Complex64::new(self, 0.0))
    }
}

impl Mul<TwoSpinState> for Complex64 {
    type Output = TwoSpinState;

    fn mul(self, rhs: TwoSpinState) -> TwoSpinState {
        rhs.scale(self)
    }
}

/// Outer product `a ⊗ b` in the fixed basis order.
pub fn tensor(a: &Spinor, b: &Spinor) -> Result<TwoSpinState> {
    let (a, b) = (a.amplitudes(), b.amplitudes());
    TwoSpinState::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
        .map_err(|_| Error::InvalidInput("tensor product overflowed".into()))
}

/// `<s|t>`, conjugate-linear in `s`.
pub fn inner(s: &TwoSpinState, t: &TwoSpinState) -> Complex64 {
    s.amplitudes.iter().zip(t.amplitudes.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// `u = (|++> + |-->)/√2`.
pub fn basis_u() -> TwoSpinState {
    TwoSpinState::from_raw([
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
    ])
}

/// The singlet `v = (|+-> - |-+>)/√2`.
pub fn basis_v() -> TwoSpinState {
    TwoSpinState::from_raw([
        Complex64::new(0.0, 0.0),
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, 0.0),
    ])
}

/// Coordinates of a state in the rotationally invariant pair `{u, v}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UvCoords {
    pub c_u: Complex64,
    pub c_v: Complex64,
    /// Norm of the component orthogonal to both `u` and `v`.
    pub residual_norm: f64,
}

impl UvCoords {
    pub fn residual(&self, s: &TwoSpinState) -> TwoSpinState {
        *s - self.c_u * basis_u() - self.c_v * basis_v()
    }
}

pub fn decompose_uv(s: &TwoSpinState) -> UvCoords {
    let (u, v) = (basis_u(), basis_v());
    let c_u = inner(&u, s);
    let c_v = inner(&v, s);
    let residual = *s - c_u * u - c_v * v;
    UvCoords { c_u, c_v, residual_norm: residual.norm() }
}

/// A single-spin or two-spin state carried by an [`Ensemble`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EnsembleState {
    Single(Spinor),
    Pair(TwoSpinState),
}

impl EnsembleState {
    fn is_normalized(&self) -> bool {
        match self {
            EnsembleState::Single(s) => s.is_normalized(),
            EnsembleState::Pair(s) => s.is_normalized(),
        }
    }
}

/// A classical mixture of normalized states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    entries: Vec<(f64, EnsembleState)>,
}

impl Ensemble {
    pub fn new(entries: Vec<(f64, EnsembleState)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("ensemble has no entries".into()));
        }
        let mut total = 0.0;
        for (w, state) in &entries {
            if !(0.0..=1.0).contains(w) {
                return Err(Error::InvalidInput(format!("ensemble weight {w} outside [0, 1]")));
            }
            if !state.is_normalized() {
                return Err(Error::InvalidInput("ensemble state is not normalized".into()));
            }
            total += w;
        }
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidInput(format!("ensemble weights sum to {total}")));
        }
        Ok(Self { entries })
    }

    pub fn pure(state: TwoSpinState) -> Result<Self> {
        Self::new(vec![(1.0, EnsembleState::Pair(state))])
    }

    pub fn entries(&self) -> &[(f64, EnsembleState)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.entries.iter().map(|(w, _)| w).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_amps(s: &TwoSpinState, expected: [f64; 4]) {
        let e = TwoSpinState::from_real(expected).unwrap();
        assert!(s.max_abs_diff(&e) <= 1e-15, "{s:?} != {expected:?}");
    }

    #[test]
    fn tensor_of_basis_spinors() {
        assert_amps(&tensor(&Spinor::plus(), &Spinor::plus()).unwrap(), [1.0, 0.0, 0.0, 0.0]);
        assert_amps(&tensor(&Spinor::minus(), &Spinor::plus()).unwrap(), [0.0, 0.0, 1.0, 0.0]);
        let h = Spinor::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        assert_amps(&tensor(&h, &Spinor::plus()).unwrap(), [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0]);
    }

    #[test]
    fn tensor_rejects_overflow() {
        let big = Spinor::from_real(1e200, 0.0).unwrap();
        assert!(matches!(tensor(&big, &big), Err(Error::InvalidInput(_))));
        assert!(Spinor::from_real(f64::NAN, 0.0).is_err());
        assert!(TwoSpinState::from_real([0.0, f64::INFINITY, 0.0, 0.0]).is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn uv_basis_values() {
        let (u, v) = (basis_u(), basis_v());
        assert_eq!(u.amplitudes()[0].re, 0.7071067811865476);
        assert_eq!(u.amplitudes()[3].re, 0.7071067811865476);
        assert_eq!(v.amplitudes()[1].re, 0.7071067811865476);
        assert_eq!(v.amplitudes()[2].re, -0.7071067811865476);
        assert!((inner(&u, &u) - c(1.0)).norm() <= NORM_TOL);
        assert!((inner(&v, &v) - c(1.0)).norm() <= NORM_TOL);
        assert!(inner(&u, &v).norm() <= NORM_TOL);
        assert!((inner(&TwoSpinState::basis(0, 0), &u) - c(FRAC_1_SQRT_2)).norm() <= 1e-15);
        assert!((inner(&TwoSpinState::basis(0, 1), &v) - c(FRAC_1_SQRT_2)).norm() <= 1e-15);
    }

    #[test]
    fn inner_is_conjugate_linear_in_first_argument() {
        let i = Complex64::new(0.0, 1.0);
        let s = basis_u();
        assert!((inner(&(i * s), &s) - (-i)).norm() <= 1e-15);
        assert!((inner(&s, &(i * s)) - i).norm() <= 1e-15);
    }

    #[test]
    fn decompose_known_states() {
        let d = decompose_uv(&basis_u());
        assert!((d.c_u - c(1.0)).norm() <= 1e-15 && d.c_v.norm() <= 1e-15 && d.residual_norm <= 1e-15);

        let s = 0.3f64.cos() * basis_u() - 0.3f64.sin() * basis_v();
        let d = decompose_uv(&s);
        assert!((d.c_u - c(0.3f64.cos())).norm() <= 1e-15);
        assert!((d.c_v - c(-0.3f64.sin())).norm() <= 1e-15);
        assert!(d.residual_norm <= 1e-15);
    }

    /// Gram–Schmidt projection of |++> onto the plane spanned by the raw
    /// vectors |++>+|--> and |+->-|-+>, computed with plain arrays.
    #[test]
    fn decompose_plus_plus_matches_gram_schmidt() {
        fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        }
        let raw = [[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, -1.0, 0.0]];
        let mut ortho: Vec<[f64; 4]> = Vec::new();
        for r in raw {
            let mut w = r;
            for q in &ortho {
                let p = dot(q, &w);
                for k in 0..4 {
                    w[k] -= p * q[k];
                }
            }
            let n = dot(&w, &w).sqrt();
            ortho.push(w.map(|x| x / n));
        }
        let target = [1.0, 0.0, 0.0, 0.0];
        let coeffs: Vec<f64> = ortho.iter().map(|q| dot(q, &target)).collect();
        let mut rem = target;
        for (q, cq) in ortho.iter().zip(&coeffs) {
            for k in 0..4 {
                rem[k] -= cq * q[k];
            }
        }
        let residual = dot(&rem, &rem).sqrt();

        let d = decompose_uv(&TwoSpinState::basis(0, 0));
        assert!((d.c_u.re - coeffs[0]).abs() <= 1e-15 && d.c_u.im == 0.0);
        assert!((d.c_v.re - coeffs[1]).abs() <= 1e-15);
        assert!((d.residual_norm - residual).abs() <= 1e-15);
        assert!((residual - FRAC_1_SQRT_2).abs() <= 1e-15);
    }

    #[test]
    fn ensemble_validation() {
        let up = EnsembleState::Pair(TwoSpinState::basis(0, 0));
        assert!(Ensemble::new(vec![(0.5, up), (0.5, up)]).is_ok());
        assert!(Ensemble::new(vec![(0.5, up)]).is_err());
        assert!(Ensemble::new(vec![(1.5, up), (-0.5, up)]).is_err());
        assert!(Ensemble::new(vec![]).is_err());
        let unnormalized = EnsembleState::Pair(2.0 * TwoSpinState::basis(0, 0));
        assert!(Ensemble::new(vec![(1.0, unnormalized)]).is_err());
        assert_eq!(Ensemble::pure(basis_u()).unwrap().len(), 1);
    }
}
