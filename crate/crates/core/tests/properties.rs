use std::sync::Arc;

use proptest::prelude::*;
use tamelang::algkernel::{int, Ideal, MonomialOrder, MultiPoly, PolyRing};
use tamelang::heckewaki::{eis_action, DihedralElement, EisVector, GroupAlgebraElement, GroupKind};
use tamelang::sl2rep::{coh_p1, irr_char, sections_diagonal, tensor_decompose};

fn ring() -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -3i64..=3), 1..4).prop_map(|terms| {
        let r = ring();
        MultiPoly::from_terms(&r, terms.into_iter().map(|((a, b, c), k)| (vec![a, b, c], int(k))))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributive(p in poly(), q in poly(), r in poly()) {
        let lhs = p.try_add(&q).unwrap().try_mul(&r).unwrap();
        let rhs = p.try_mul(&r).unwrap().try_add(&q.try_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groebner_order_independent(gens in prop::collection::vec(nonzero_poly(), 1..4)) {
        let r = ring();
        let a = Ideal::new(&r, gens.clone()).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = Ideal::new(&r, rev).unwrap();
        prop_assert_eq!(a.groebner_basis(), b.groebner_basis());
        // idempotent
        let again = Ideal::new(&r, a.groebner_basis().to_vec()).unwrap();
        prop_assert_eq!(again.groebner_basis(), a.groebner_basis());
    }

    #[test]
    fn intersection_membership(f in nonzero_poly(), g in nonzero_poly(), h in nonzero_poly(), probe in poly()) {
        let r = ring();
        let i = Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap();
        let j = Ideal::new(&r, vec![h.clone()]).unwrap();
        let both = i.intersect(&j).unwrap();
        for p in [f.try_mul(&h).unwrap(), probe.clone(), g.try_mul(&h).unwrap().try_add(&probe).unwrap()] {
            prop_assert_eq!(both.contains(&p).unwrap(), i.contains(&p).unwrap() && j.contains(&p).unwrap());
        }
        for b in both.groebner_basis() {
            prop_assert!(i.contains(b).unwrap() && j.contains(b).unwrap());
        }
    }

    #[test]
    fn quotient_bounds(f in nonzero_poly(), g in nonzero_poly(), d in nonzero_poly()) {
        let r = ring();
        let i = Ideal::new(&r, vec![f, g]).unwrap();
        let quot = i.quotient(&d).unwrap();
        prop_assert!(quot.contains_ideal(&i).unwrap());
        for b in quot.groebner_basis() {
            prop_assert!(i.contains(&b.try_mul(&d).unwrap()).unwrap());
        }
    }

    #[test]
    fn krull_dim_monotone(f in nonzero_poly(), g in nonzero_poly()) {
        let r = ring();
        let i = Ideal::new(&r, vec![f.clone()]).unwrap();
        let j = Ideal::new(&r, vec![f, g]).unwrap();
        prop_assume!(!j.is_unit() && !i.is_unit());
        prop_assert!(i.krull_dim().unwrap() >= j.krull_dim().unwrap());
    }

    #[test]
    fn members_are_radical_members(f in nonzero_poly(), g in nonzero_poly(), c in poly()) {
        let r = ring();
        let i = Ideal::new(&r, vec![f.clone(), g]).unwrap();
        let p = c.try_mul(&f).unwrap();
        prop_assert!(i.contains(&p).unwrap());
        prop_assert!(i.radical_contains(&p).unwrap());
        prop_assert!(i.radical_contains(&f.pow(2)).unwrap());
    }
}

fn dihedral() -> impl Strategy<Value = DihedralElement> {
    (-50i64..=50, any::<bool>()).prop_map(|(n, reflection)| DihedralElement { n, reflection })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn dihedral_group_axioms(a in dihedral(), b in dihedral(), c in dihedral()) {
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        prop_assert_eq!(a.mul(a.inverse()), DihedralElement::IDENTITY);
        prop_assert_eq!(a.inverse().mul(a), DihedralElement::IDENTITY);
        prop_assert_eq!(a.mul(DihedralElement::IDENTITY), a);
        // left-to-right composition of affine maps
        prop_assert_eq!(a.mul(b).act(7), b.act(a.act(7)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eisenstein_action_is_faithful(terms in prop::collection::vec((-10i64..=10, -3i64..=3), 1..5), h in -5i64..=5) {
        let kind = GroupKind::PGL2;
        let g = GroupAlgebraElement::from_terms(kind, terms.iter().map(|&(n, c)| (DihedralElement::translation(n), c))).unwrap();
        let j = GroupAlgebraElement::basis(kind, DihedralElement::translation(h)).unwrap();
        let v = eis_action(&g, &EisVector::basis(0)).unwrap();
        // coefficients are read back exactly, so g ≠ 0 acts nontrivially
        for (t, c) in g.terms() {
            prop_assert_eq!(v.coeff(t.n), c);
        }
        prop_assert_eq!(v == EisVector::default(), g.is_zero());
        let gj = g.mul(&j).unwrap();
        let lhs = eis_action(&gj, &EisVector::basis(0)).unwrap();
        let rhs = eis_action(&g, &eis_action(&j, &EisVector::basis(0)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_ring_homomorphism(a in 0i64..=30, b in 0i64..=30) {
        let prod = irr_char(a).unwrap().mul(&irr_char(b).unwrap());
        prop_assert_eq!(tensor_decompose(a, b).unwrap().character(), prod);
    }

    #[test]
    fn euler_and_serre(n in -60i64..=60) {
        let c = coh_p1(n);
        prop_assert_eq!(c.euler(), n + 1);
        prop_assert_eq!(c.h1.dim(), coh_p1(-n - 2).h0.dim());
    }

    #[test]
    fn diagonal_sections_cutoff(n in -20i64..=20, c in 0i64..=15) {
        let a = sections_diagonal(n, c).unwrap();
        let b = sections_diagonal(n, c + 1).unwrap();
        if n >= 0 {
            prop_assert_eq!(a, b);
        } else {
            prop_assert!(a <= b);
        }
    }
}
