use num_complex::Complex64;
use proptest::prelude::*;

use cl13::algebra::{exp_default, gamma_rep, inverse, rep_inverse, BladeIndex, CliffordElement};
use cl13::fields::{build_pure_gauge, reduce, residual_dymym, DerivMode, Factor, FieldFamily, PhiChoice, Shape, SpacetimePoint};
use cl13::subspaces::{in_sp_cl, in_sp_group, HermitianIdempotent, Space, SpaceSampler};
use cl13::symmetries::bilinear_form;

type E = CliffordElement;

fn element() -> impl Strategy<Value = E> {
    prop::array::uniform32(-1.0f64..1.0).prop_map(|c| E::from_real_coords(&c))
}

fn sp_element() -> impl Strategy<Value = E> {
    prop::array::uniform10(-0.8f64..0.8).prop_map(|c| {
        let basis = cl13::subspaces::subspace_basis(Space::SpAlgebra).unwrap().basis;
        basis.iter().zip(c).map(|(b, x)| *b * x).sum()
    })
}

fn point() -> impl Strategy<Value = SpacetimePoint> {
    prop::array::uniform4(0.0f64..1.0).prop_map(SpacetimePoint::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involutions_reverse_or_preserve_products(u in element(), v in element()) {
        let uv = u * v;
        prop_assert!(uv.pseudo_conj().distance(&(v.pseudo_conj() * u.pseudo_conj())) <= 1e-12);
        prop_assert!(uv.herm_conj().distance(&(v.herm_conj() * u.herm_conj())) <= 1e-12);
        prop_assert!(uv.complex_conj().distance(&(u.complex_conj() * v.complex_conj())) <= 1e-12);
        prop_assert_eq!(u.herm_conj().herm_conj(), u);
        prop_assert_eq!(u.pseudo_conj().pseudo_conj(), u);
    }

    #[test]
    fn representation_is_an_isomorphism(u in element(), v in element()) {
        let prod = gamma_rep(&u) * gamma_rep(&v);
        prop_assert!((gamma_rep(&(u * v)) - prod).frobenius_norm() <= 1e-12);
        prop_assert!(rep_inverse(&gamma_rep(&u)).distance(&u) <= 1e-14);
        prop_assert!((gamma_rep(&u.herm_conj()) - gamma_rep(&u).adjoint()).frobenius_norm() <= 1e-13);
    }

    #[test]
    fn exponential_maps_sp_algebra_into_group(u in sp_element()) {
        prop_assert!(in_sp_cl(&u, 1e-12).holds);
        let v = exp_default(&u).unwrap();
        prop_assert!(in_sp_group(&v, 1e-9).holds);
        prop_assert!(inverse(&v).unwrap().distance(&v.pseudo_conj()) <= 1e-9);
    }

    #[test]
    fn blade_products_are_signed_blades(a in 0u8..16, b in 0u8..16) {
        let (s, c) = BladeIndex::new(a).unwrap().mul(BladeIndex::new(b).unwrap());
        prop_assert!(s == 1 || s == -1);
        prop_assert_eq!(c.mask(), a ^ b);
    }

    #[test]
    fn bilinear_forms_flip_sign_under_swaps(u in element(), i in 0usize..4, j in 0usize..4, k in 0usize..4) {
        let t = HermitianIdempotent::standard(3).unwrap();
        let phi = u * *t.element();
        let h: [E; 4] = std::array::from_fn(E::generator);
        let a = bilinear_form(&phi, &h, &[i, j, k]).unwrap().value;
        let b = bilinear_form(&phi, &h, &[j, i, k]).unwrap().value;
        prop_assert!((a + b).norm() <= 1e-12);
        prop_assert!(a.herm_conj().distance(&a) <= 1e-12);
    }

    #[test]
    fn reduction_solves_for_any_single_factor(u in sp_element(), m in -2.0f64..2.0, x in point(), mu in 0usize..4) {
        let fam = FieldFamily::new(vec![Factor { generator: u, shape: Shape::coordinate(mu) }]);
        let t = HermitianIdempotent::standard(2).unwrap();
        let fs = reduce(&build_pure_gauge(&fam, &t, m, PhiChoice::Zero).unwrap());
        let rec = residual_dymym(&fs, &[x], DerivMode::Exact).unwrap();
        prop_assert!(rec.max_residual() <= 1e-9, "{:?}", rec);
        let expected = 3.0 / 16.0 * m.abs().powi(3);
        prop_assert!((rec.rhs_normalized.unwrap() - expected).abs() <= 1e-12);
    }

    #[test]
    fn gauge_group_samples_commute_with_t(seed in 0u64..1000) {
        let t = HermitianIdempotent::standard(2).unwrap();
        let sampler = SpaceSampler::new(Space::GaugeGroup(&t)).unwrap();
        let u = sampler.draw(&mut cl13::rng::rng_from_seed(seed), 1.0).unwrap();
        prop_assert!((u * *t.element() - *t.element() * u).norm() <= 1e-12);
        prop_assert!((u.herm_conj() * u).distance(&E::unit()) <= 1e-12);
    }
}

#[test]
fn complex_scalars_commute_with_everything() {
    let z = E::unit().scale(Complex64::new(0.3, -1.1));
    for a in 0..4 {
        assert_eq!(z * E::generator(a), E::generator(a) * z);
    }
}
