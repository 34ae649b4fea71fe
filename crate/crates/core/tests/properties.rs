use proptest::prelude::*;

use syzygy::afprw::{gamma_prime_scaled, gamma_scaled, koszul_module_dim, KoszulModuleInstance};
use syzygy::combinat::binomial;
use syzygy::elim::{kernel_basis, same_span};
use syzygy::graded::{
    omega_module, polynomial_ring_module, pushforward_module, rnc_module, tangent_module, GradedModule,
    TangentMethod,
};
use syzygy::koszul::{betti_table, check_np, KoszulSlice};
use syzygy::multilinear::{sl2_action, wedge2_decompose, Character, Generator, Space};
use syzygy::{Field, PrimeField, Rationals, SparseMatrix};

const P: u64 = 1_000_003;

/// Small spaces built from `U`, kept below a few hundred dimensions.
fn space() -> impl Strategy<Value = Space> {
    let leaf = (0usize..5).prop_map(Space::sym_u);
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (1usize..3, inner.clone()).prop_map(|(a, s)| Space::sym(a, s)),
            (1usize..3, inner.clone()).prop_map(|(a, s)| Space::wedge(a, s)),
            (inner.clone(), inner).prop_map(|(l, r)| Space::tensor(l, r)),
        ]
    })
    .prop_filter("keep it small", |s| (1..=120).contains(&s.dim()))
}

fn module(kind: usize, g: usize) -> GradedModule<PrimeField> {
    let f = &PrimeField::new(P).unwrap();
    match kind {
        0 => rnc_module(f, g, 3),
        1 => tangent_module(f, g, 3, TangentMethod::Image).unwrap(),
        2 => pushforward_module(f, g, 3),
        3 => omega_module(f, g, 3),
        _ => polynomial_ring_module(f, g + 1, 3),
    }
}

fn commutator(a: &SparseMatrix<PrimeField>, b: &SparseMatrix<PrimeField>) -> SparseMatrix<PrimeField> {
    a.compose(b).unwrap().sub(&b.compose(a).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn characters_are_palindromic_with_matching_dimension(s in space()) {
        let c = Character::of(&s);
        prop_assert!(c.is_palindromic());
        prop_assert_eq!(c.dim() as usize, s.dim());
        prop_assert_eq!(s.basis().len(), s.dim());
    }

    #[test]
    fn characters_multiply_under_tensor(a in space(), b in space()) {
        let t = Space::tensor(a.clone(), b.clone());
        prop_assert_eq!(Character::of(&t), Character::of(&a).tensor(&Character::of(&b)));
    }

    #[test]
    fn sl2_relations_hold_on_every_space(s in space()) {
        let f = &PrimeField::new(P).unwrap();
        let e = sl2_action(f, &s, Generator::E);
        let fm = sl2_action(f, &s, Generator::F);
        let h = sl2_action(f, &s, Generator::H);
        prop_assert!(commutator(&e, &fm).sub(&h).unwrap().is_zero());
        prop_assert!(commutator(&h, &e).sub(&e.scale(&2)).unwrap().is_zero());
        prop_assert!(commutator(&h, &fm).add(&fm.scale(&2)).unwrap().is_zero());
    }

    #[test]
    fn hermite_dimensions(b in 0usize..13, a_off in 0usize..14) {
        let a = a_off % (b + 2);
        let d = Space::wedge(a, Space::sym_u(b)).dim() as u128;
        prop_assert_eq!(d, binomial(b as u64 + 1, a as u64));
    }

    #[test]
    fn wedge_square_top_weight_is_simple(m in 1usize..13) {
        let parts = wedge2_decompose(m);
        prop_assert_eq!(parts.iter().filter(|&&w| w == 2 * m - 2).count(), 1);
        prop_assert!(parts.iter().all(|&w| w <= 2 * m - 2));
    }

    #[test]
    fn module_actions_commute(kind in 0usize..5, g in 3usize..7) {
        prop_assert!(module(kind, g).actions_commute());
    }

    #[test]
    fn koszul_slices_are_complexes(kind in 0usize..5, g in 3usize..6, p in 0usize..5, q in 0usize..3) {
        let m = module(kind, g);
        prop_assume!(p <= m.num_forms());
        let slice = KoszulSlice::new(&m, p, q).unwrap();
        prop_assert!(slice.is_complex());
    }

    #[test]
    fn betti_tables_are_consistent(kind in 0usize..5, g in 3usize..6) {
        let m = module(kind, g);
        let t = betti_table(&m, m.num_forms(), 2).unwrap();
        if m.dim(0) == 1 {
            prop_assert_eq!(t.get(0, 0), 1);
        }
        for p in 1..=t.pmax() {
            let r = check_np(&t, p).unwrap();
            let vanishing = (1..=p).all(|i| (0..=2).all(|q| q == 1 || t.get(i, q) == 0));
            prop_assert_eq!(r.holds, vanishing);
            prop_assert!(r.largest <= t.pmax());
        }
    }

    #[test]
    fn gamma_kernels_ignore_co_wahl_scale(g in 4usize..7, i_off in 0usize..5, lambda in 1i64..1000) {
        let f = &Rationals;
        let i = 1 + i_off % (g - 2);
        let l = f.from_i64(if lambda % 2 == 0 { -lambda } else { lambda });
        for (one, scaled) in [
            (gamma_scaled(f, g, i, &f.one()).unwrap(), gamma_scaled(f, g, i, &l).unwrap()),
            (gamma_prime_scaled(f, g, i, &f.one()).unwrap(), gamma_prime_scaled(f, g, i, &l).unwrap()),
        ] {
            let k1 = kernel_basis(&one.matrix);
            let k2 = kernel_basis(&scaled.matrix);
            prop_assert!(same_span(f, one.matrix.cols(), &k1, &k2));
        }
    }

    #[test]
    fn right_map_is_always_onto(i in 1usize..5, q in 0usize..3) {
        let inst = KoszulModuleInstance::co_wahl_image(&Rationals, i).unwrap();
        prop_assert!(koszul_module_dim(&inst, q).unwrap().right_surjective);
    }
}
