use crate::algebra::CliffordElement;

use super::deriv::LinearValue;

type E = CliffordElement;

/// Point values of every field slot.
///
/// `gauge` holds `C_μ` for the single-field system and `B_μ` for the
/// two-field system; `g` holds `G_{μν}` (zero for the single-field system).
/// `f` and `g` are stored lowered and as full antisymmetric 4×4 tables.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldValues {
    pub phi: E,
    pub h: [E; 4],
    pub a: [E; 4],
    pub f: [[E; 4]; 4],
    pub gauge: [E; 4],
    pub g: [[E; 4]; 4],
}

impl FieldValues {
    pub fn zero() -> Self {
        FieldValues {
            phi: E::zero(),
            h: [E::zero(); 4],
            a: [E::zero(); 4],
            f: [[E::zero(); 4]; 4],
            gauge: [E::zero(); 4],
            g: [[E::zero(); 4]; 4],
        }
    }

    /// Applies `op` slot by slot.
    pub fn zip_with(&self, other: &Self, op: impl Fn(&E, &E) -> E) -> Self {
        let v4 = |x: &[E; 4], y: &[E; 4]| std::array::from_fn(|i| op(&x[i], &y[i]));
        let m4 = |x: &[[E; 4]; 4], y: &[[E; 4]; 4]| std::array::from_fn(|i| std::array::from_fn(|j| op(&x[i][j], &y[i][j])));
        FieldValues {
            phi: op(&self.phi, &other.phi),
            h: v4(&self.h, &other.h),
            a: v4(&self.a, &other.a),
            f: m4(&self.f, &other.f),
            gauge: v4(&self.gauge, &other.gauge),
            g: m4(&self.g, &other.g),
        }
    }

    pub fn map(&self, op: impl Fn(&E) -> E) -> Self {
        self.zip_with(self, |x, _| op(x))
    }

    /// Largest coefficient norm over all slots.
    pub fn max_norm(&self) -> f64 {
        let mut worst = self.phi.norm();
        for v in self.h.iter().chain(&self.a).chain(&self.gauge) {
            worst = worst.max(v.norm());
        }
        for v in self.f.iter().flatten().chain(self.g.iter().flatten()) {
            worst = worst.max(v.norm());
        }
        worst
    }
}

impl LinearValue for FieldValues {
    fn lin2(a: f64, x: &Self, b: f64, y: &Self) -> Self {
        x.zip_with(y, |p, q| *p * a + *q * b)
    }
}

/// Values plus first derivatives: `d[μ]` holds `∂_μ` of every slot.
/// Derivatives live on the heap; nested sources would otherwise pile
/// several of these onto one stack frame each.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub value: FieldValues,
    pub d: Box<[FieldValues; 4]>,
}

impl Jet {
    pub fn constant(value: FieldValues) -> Self {
        Jet { value, d: Box::new(std::array::from_fn(|_| FieldValues::zero())) }
    }
}
