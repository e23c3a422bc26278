use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::blade::BladeIndex;
use super::scalar::Real;
use crate::error::{Error, Result};

/// Element of Cl(1,3): 16 complex coefficients indexed by [`BladeIndex`] mask.
#[derive(Clone, Copy, PartialEq)]
pub struct Clifford<T: Real> {
    coeffs: [Complex<T>; 16],
}

/// Double-precision element used for field evaluation.
pub type CliffordElement = Clifford<f64>;
/// Exact element with rational real and imaginary parts.
pub type ExactElement = Clifford<Rational64>;

impl<T: Real> Clifford<T> {
    pub fn zero() -> Self {
        Clifford { coeffs: [Complex::zero(); 16] }
    }

    /// The unit `e`.
    pub fn unit() -> Self {
        Self::blade(BladeIndex::UNIT)
    }

    pub fn blade(b: BladeIndex) -> Self {
        let mut u = Self::zero();
        u.coeffs[b.index()] = Complex::one();
        u
    }

    /// Generator `e^a`.
    pub fn generator(a: usize) -> Self {
        Self::blade(BladeIndex::generator(a))
    }

    /// Blade `e^{a1…ak}` from increasing indices. Panics on malformed input.
    pub fn basis(indices: &[usize]) -> Self {
        Self::blade(BladeIndex::from_indices(indices).expect("strictly increasing indices in 0..4"))
    }

    /// `β = e^0`.
    pub fn beta() -> Self {
        Self::generator(0)
    }

    /// `J = -e^1 e^3`.
    pub fn j() -> Self {
        -Self::basis(&[1, 3])
    }

    pub fn imaginary_unit() -> Complex<T> {
        Complex::new(T::zero(), T::one())
    }

    pub fn from_coeffs(coeffs: [Complex<T>; 16]) -> Self {
        Clifford { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BladeIndex, Complex<T>)>) -> Self {
        let mut u = Self::zero();
        for (b, c) in terms {
            u.coeffs[b.index()] = u.coeffs[b.index()] + c;
        }
        u
    }

    pub fn coeffs(&self) -> &[Complex<T>; 16] {
        &self.coeffs
    }

    pub fn coeff(&self, b: BladeIndex) -> Complex<T> {
        self.coeffs[b.index()]
    }

    pub fn set_coeff(&mut self, b: BladeIndex, c: Complex<T>) {
        self.coeffs[b.index()] = c;
    }

    pub fn scalar_part(&self) -> Complex<T> {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|c| c * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|c| c * s)
    }

    /// Multiply by the imaginary unit.
    pub fn times_i(&self) -> Self {
        self.scale(Self::imaginary_unit())
    }

    fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let mut out = *self;
        for c in out.coeffs.iter_mut() {
            *c = f(*c);
        }
        out
    }

    fn map_blades(&self, f: impl Fn(BladeIndex, Complex<T>) -> Complex<T>) -> Self {
        let mut out = *self;
        for b in BladeIndex::all() {
            out.coeffs[b.index()] = f(b, self.coeffs[b.index()]);
        }
        out
    }

    /// Part of grade `k`.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > 4 {
            return Err(Error::GradeOutOfRange(k));
        }
        Ok(self.grade_part(k))
    }

    pub(crate) fn grade_part(&self, k: usize) -> Self {
        self.map_blades(|b, c| if b.grade() == k { c } else { Complex::zero() })
    }

    pub fn even_part(&self) -> Self {
        self.map_blades(|b, c| if b.grade() % 2 == 0 { c } else { Complex::zero() })
    }

    pub fn odd_part(&self) -> Self {
        self.map_blades(|b, c| if b.grade() % 2 == 1 { c } else { Complex::zero() })
    }

    /// Coefficientwise real part (blades fixed).
    pub fn real_part(&self) -> Self {
        self.map(|c| Complex::new(c.re, T::zero()))
    }

    /// Coefficientwise imaginary part as a real element.
    pub fn imag_part(&self) -> Self {
        self.map(|c| Complex::new(c.im, T::zero()))
    }

    /// The `*` operation: conjugate coefficients and reverse blades.
    pub fn pseudo_conj(&self) -> Self {
        self.map_blades(|b, c| {
            let c = c.conj();
            if b.reversion_sign() < 0 {
                -c
            } else {
                c
            }
        })
    }

    /// `U† = β U* β`.
    pub fn herm_conj(&self) -> Self {
        // β e_A β = ±e_A; fold the sign into the reversion pass.
        self.map_blades(|b, c| {
            let beta = BladeIndex::generator(0);
            let (s1, mid) = beta.mul(b);
            let (s2, _) = mid.mul(beta);
            let sign = s1 * s2 * b.reversion_sign();
            if sign < 0 {
                -c.conj()
            } else {
                c.conj()
            }
        })
    }

    /// Coefficientwise complex conjugation, blades fixed.
    pub fn complex_conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        commutator(self, other)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        anticommutator(self, other)
    }

    /// Conversion to floating point.
    pub fn to_float(&self) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for b in BladeIndex::all() {
            let c = self.coeffs[b.index()];
            out.coeffs[b.index()] = Complex::new(c.re.to_f64_lossy(), c.im.to_f64_lossy());
        }
        out
    }
}

impl CliffordElement {
    /// Euclidean norm of the 16 complex coefficients.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `‖self - other‖ <= tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).norm() <= tol
    }

    /// Distance to `other` in the coefficient norm.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Real coordinates `(Re c_A, Im c_A)` interleaved in mask order.
    pub fn to_real_coords(&self) -> [f64; 32] {
        let mut out = [0.0; 32];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.re;
            out[2 * i + 1] = c.im;
        }
        out
    }

    pub fn from_real_coords(x: &[f64]) -> Self {
        assert_eq!(x.len(), 32, "32 real coordinates expected");
        let mut out = Self::zero();
        for i in 0..16 {
            out.coeffs[i] = Complex::new(x[2 * i], x[2 * i + 1]);
        }
        out
    }
}

impl ExactElement {
    /// Rational element from integer numerators over a common denominator.
    pub fn from_ratio_terms(terms: &[(BladeIndex, (i64, i64))], denom: i64) -> Self {
        Self::from_terms(terms.iter().map(|&(b, (re, im))| {
            (b, Complex::new(Rational64::new(re, denom), Rational64::new(im, denom)))
        }))
    }
}

impl<T: Real> Default for Clifford<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> Add for Clifford<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Real> AddAssign for Clifford<T> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = *a + *b;
        }
    }
}

impl<T: Real> Sub for Clifford<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<T: Real> SubAssign for Clifford<T> {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a = *a - *b;
        }
    }
}

impl<T: Real> Neg for Clifford<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c)
    }
}

impl<T: Real> Mul for Clifford<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Real> Mul for &Clifford<T> {
    type Output = Clifford<T>;
    fn mul(self, rhs: &Clifford<T>) -> Clifford<T> {
        let mut out = [Complex::<T>::zero(); 16];
        for a in BladeIndex::all() {
            let ca = self.coeffs[a.index()];
            if ca.is_zero() {
                continue;
            }
            for b in BladeIndex::all() {
                let cb = rhs.coeffs[b.index()];
                if cb.is_zero() {
                    continue;
                }
                let (sign, c) = a.mul(b);
                let p = ca * cb;
                let slot = &mut out[c.index()];
                *slot = if sign > 0 { *slot + p } else { *slot - p };
            }
        }
        Clifford { coeffs: out }
    }
}

impl<T: Real> Mul<Complex<T>> for Clifford<T> {
    type Output = Self;
    fn mul(self, rhs: Complex<T>) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for CliffordElement {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale_real(rhs)
    }
}

impl<T: Real> Sum for Clifford<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

/// `[U, V] = UV - VU`.
pub fn commutator<T: Real>(u: &Clifford<T>, v: &Clifford<T>) -> Clifford<T> {
    u * v - v * u
}

/// `{U, V} = UV + VU`.
pub fn anticommutator<T: Real>(u: &Clifford<T>, v: &Clifford<T>) -> Clifford<T> {
    u * v + v * u
}

pub fn linear_combine<T: Real>(terms: &[(Complex<T>, Clifford<T>)]) -> Clifford<T> {
    terms.iter().map(|(s, u)| u.scale(*s)).sum()
}

impl<T: Real> fmt::Debug for Clifford<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in BladeIndex::canonical_order() {
            let c = self.coeffs[b.index()];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({:?} + {:?}i){}", c.re, c.im, b)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = CliffordElement;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn product_examples() {
        assert_eq!(E::generator(0) * E::generator(0), E::unit());
        assert_eq!(E::basis(&[1, 2]) * E::basis(&[1, 2]), -E::unit());
        let u = E::from_terms([(BladeIndex::generator(2), c(0.5, -1.0)), (BladeIndex::UNIT, c(2.0, 0.0))]);
        assert_eq!(E::unit() * u, u);
        assert_eq!(u * E::unit(), u);
    }

    #[test]
    fn linear_combine_examples() {
        let t2 = linear_combine(&[(c(0.5, 0.0), E::unit()), (c(0.5, 0.0), E::generator(0))]);
        assert_eq!(t2.coeff(BladeIndex::UNIT), c(0.5, 0.0));
        assert_eq!(t2.coeff(BladeIndex::generator(0)), c(0.5, 0.0));
        assert!(linear_combine(&[(c(0.0, 0.0), E::generator(3))]).is_zero());
        assert!(linear_combine(&[(c(0.0, 1.0), E::generator(1)), (c(0.0, -1.0), E::generator(1))]).is_zero());
    }

    #[test]
    fn grade_projection() {
        let u = E::unit() + E::basis(&[0, 1]) * 2.0;
        assert_eq!(u.grade_project(2).unwrap(), E::basis(&[0, 1]) * 2.0);
        assert!(E::generator(1).grade_project(2).unwrap().is_zero());
        assert_eq!(u.grade_project(5), Err(Error::GradeOutOfRange(5)));
        let total: E = (0..=4).map(|k| u.grade_project(k).unwrap()).sum();
        assert_eq!(total, u);
    }

    #[test]
    fn conjugation_examples() {
        let i = c(0.0, 1.0);
        assert_eq!(E::unit().scale(i).pseudo_conj(), E::unit().scale(-i));
        assert_eq!(E::basis(&[1, 2]).pseudo_conj(), -E::basis(&[1, 2]));
        assert_eq!(E::generator(0).pseudo_conj(), E::generator(0));
        assert_eq!(E::generator(0).herm_conj(), E::generator(0));
        assert_eq!(E::generator(1).herm_conj(), -E::generator(1));
        assert_eq!(E::generator(1).scale(i).complex_conj(), E::generator(1).scale(-i));
        assert_eq!(E::basis(&[0, 1, 2]).complex_conj(), E::basis(&[0, 1, 2]));
    }

    #[test]
    fn herm_conj_matches_definition() {
        // β U* β evaluated with the product, against the folded-sign shortcut
        for b in BladeIndex::all() {
            let u = E::blade(b).scale(c(0.3, -0.7));
            let beta = E::beta();
            assert_eq!(u.herm_conj(), beta * u.pseudo_conj() * beta, "{b}");
        }
    }

    #[test]
    fn commutator_examples() {
        let e0 = E::generator(0);
        let e1 = E::generator(1);
        assert_eq!(commutator(&e0, &e1), E::basis(&[0, 1]) * 2.0);
        assert!(commutator(&e0, &E::basis(&[1, 2])).is_zero());
        assert!(anticommutator(&e0, &e1).is_zero());
        assert!(commutator(&e1, &e1).is_zero());
    }

    #[test]
    fn norms() {
        assert_eq!(E::zero().norm(), 0.0);
        assert_eq!(E::generator(0).norm(), 1.0);
        assert!(((E::unit() + E::generator(0)).norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn exact_mode_generator_relations() {
        for a in 0..4 {
            for b in 0..4 {
                let ea = ExactElement::generator(a);
                let eb = ExactElement::generator(b);
                let eta = crate::algebra::METRIC.component(a, b) as i64;
                let expected = ExactElement::unit().scale_real(Rational64::from_integer(2 * eta));
                assert_eq!(anticommutator(&ea, &eb), expected);
            }
        }
    }
}
