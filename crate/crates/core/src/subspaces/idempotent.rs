use num_rational::Rational64;

use crate::algebra::{BladeIndex, Clifford, CliffordElement, ExactElement, Real, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Nonzero `t` with `t² = t`, `t† = t` and `t̄ J = J t` for `J = -e^1 e^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianIdempotent {
    t: CliffordElement,
    label: Option<String>,
}

/// Residual norms of the three defining conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdempotentCheck {
    pub idempotent: f64,
    pub hermitian: f64,
    pub j_compatible: f64,
    pub nonzero: bool,
    pub holds: bool,
}

impl IdempotentCheck {
    pub fn max_residual(&self) -> f64 {
        self.idempotent.max(self.hermitian).max(self.j_compatible)
    }
}

/// `(t² - t, t† - t, t̄J - Jt)`.
pub fn idempotent_defects<T: Real>(t: &Clifford<T>) -> [Clifford<T>; 3] {
    let j = Clifford::<T>::j();
    [t * t - *t, t.herm_conj() - *t, t.complex_conj() * j - j * *t]
}

pub fn is_hermitian_idempotent(t: &CliffordElement, tol: f64) -> IdempotentCheck {
    let [a, b, c] = idempotent_defects(t);
    let (idempotent, hermitian, j_compatible) = (a.norm(), b.norm(), c.norm());
    let nonzero = t.norm() > tol;
    IdempotentCheck {
        idempotent,
        hermitian,
        j_compatible,
        nonzero,
        holds: nonzero && idempotent <= tol && hermitian <= tol && j_compatible <= tol,
    }
}

/// Exact check of the three conditions in rational arithmetic.
pub fn is_hermitian_idempotent_exact(t: &ExactElement) -> bool {
    !t.is_zero() && idempotent_defects(t).iter().all(Clifford::is_zero)
}

/// The four listed idempotents `t1 … t4`, in exact arithmetic.
pub fn exact_standard_idempotent(n: usize) -> Option<ExactElement> {
    let r = |num: i64, den: i64| Rational64::new(num, den);
    let e = ExactElement::unit();
    let e0 = ExactElement::generator(0);
    let i_e12 = ExactElement::basis(&[1, 2]).times_i();
    let i_e012 = ExactElement::basis(&[0, 1, 2]).times_i();
    let t = match n {
        // ¼(e + e0)(e + i e12)
        1 => ((e + e0) * (e + i_e12)).scale_real(r(1, 4)),
        // ½(e + e0)
        2 => (e + e0).scale_real(r(1, 2)),
        // ¼(3e + e0 + i e12 - i e012)
        3 => (e.scale_real(r(3, 1)) + e0 + i_e12 - i_e012).scale_real(r(1, 4)),
        4 => e,
        _ => return None,
    };
    Some(t)
}

impl HermitianIdempotent {
    /// Validates the defining conditions at tolerance `tol`.
    pub fn new(t: CliffordElement, label: Option<String>, tol: f64) -> Result<Self> {
        let check = is_hermitian_idempotent(&t, tol);
        if !check.holds {
            return Err(Error::NotIdempotent(format!(
                "residuals t²-t {:.3e}, t†-t {:.3e}, t̄J-Jt {:.3e}, nonzero {}",
                check.idempotent, check.hermitian, check.j_compatible, check.nonzero
            )));
        }
        Ok(HermitianIdempotent { t, label })
    }

    /// One of `t1 … t4`; validated exactly.
    pub fn standard(n: usize) -> Result<Self> {
        let exact = exact_standard_idempotent(n).ok_or_else(|| Error::InvalidArgument(format!("no idempotent t{n}")))?;
        debug_assert!(is_hermitian_idempotent_exact(&exact));
        Ok(HermitianIdempotent { t: exact.to_float(), label: Some(format!("t{n}")) })
    }

    /// Resolves `"t1"` … `"t4"`.
    pub fn from_label(label: &str) -> Result<Self> {
        match label.strip_prefix('t').and_then(|n| n.parse::<usize>().ok()) {
            Some(n @ 1..=4) => Self::standard(n),
            _ => Err(Error::InvalidArgument(format!("unknown idempotent label {label:?}"))),
        }
    }

    /// Image of a validated idempotent under an equivalence transformation
    /// (unitary conjugation or complex conjugation). `t² = t` and `t† = t`
    /// survive both; the `J` condition survives complex conjugation only.
    pub(crate) fn transported(t: CliffordElement, label: Option<String>) -> Self {
        HermitianIdempotent { t, label }
    }

    pub fn element(&self) -> &CliffordElement {
        &self.t
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn check(&self) -> IdempotentCheck {
        is_hermitian_idempotent(&self.t, DEFAULT_TOL)
    }

    /// Grade-0 coefficient; `tr(rep(t)) / 4`.
    pub fn scalar_part(&self) -> f64 {
        self.t.coeff(BladeIndex::UNIT).re
    }
}
