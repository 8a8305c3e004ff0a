//! Randomized invariants over the small test systems.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use coxeter_hecke::centralizer::{build_z, check_commutation, check_membership_coeffs};
use coxeter_hecke::class_poly::{class_poly_max, MinClassPolys};
use coxeter_hecke::conjugacy::{decide_finite, strongly_conjugate, StrongMode};
use coxeter_hecke::hecke::{b_of, b_of_word, t_gen, Specialization};
use coxeter_hecke::{
    CoxeterMatrix, CoxeterSystem, Element, GeneratorSet, HeckeElement, LaurentPoly, ParamPoly, Side,
    DEFAULT_NODE_BUDGET as B,
};
use proptest::prelude::*;

fn systems() -> &'static [common::TestSystem] {
    static SYSTEMS: OnceLock<Vec<common::TestSystem>> = OnceLock::new();
    SYSTEMS.get_or_init(common::all_systems)
}

fn sys_and_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..systems().len()).prop_flat_map(move |i| {
        let rank = systems()[i].sys.rank();
        (Just(i), prop::collection::vec(0..rank, 0..=max_len))
    })
}

fn sys_and_words(max_len: usize, n: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (0..systems().len()).prop_flat_map(move |i| {
        let rank = systems()[i].sys.rank();
        (Just(i), prop::collection::vec(prop::collection::vec(0..rank, 0..=max_len), n))
    })
}

fn sys_word_subset(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>, u32)> {
    (0..systems().len()).prop_flat_map(move |i| {
        let rank = systems()[i].sys.rank();
        (Just(i), prop::collection::vec(0..rank, 0..=max_len), 0u32..1 << rank)
    })
}

fn mask_subset(rank: usize, mask: u32) -> GeneratorSet {
    (0..rank as u8).filter(|&s| mask & (1 << s) != 0).collect()
}

/// Small coefficients in `a0, b0^{±1}` (and class 1 when present).
fn small_poly(n_classes: usize) -> impl Strategy<Value = ParamPoly> {
    let atoms = prop_oneof![
        Just((0usize, 0u8)),
        Just((0, 1)),
        Just((0, 2)),
        Just((0, 3)),
        Just((1, 1)),
        Just((1, 2)),
    ];
    prop::collection::vec((atoms, -2i64..=2), 1..=2).prop_map(move |terms| {
        let mut p = ParamPoly::zero();
        for ((c, kind), k) in terms {
            let c = c.min(n_classes - 1);
            let atom = match kind {
                0 => ParamPoly::one(),
                1 => ParamPoly::a(c),
                2 => ParamPoly::b(c),
                _ => ParamPoly::b_pow(c, -1),
            };
            p = &p + &atom.scale(&k.into());
        }
        p
    })
}

fn hecke_from(sys: &CoxeterSystem, terms: &[(Vec<usize>, ParamPoly)]) -> HeckeElement {
    let mut h = HeckeElement::zero();
    for (w, c) in terms {
        h.add_term(sys.normalize(w).unwrap(), c.clone());
    }
    h
}

fn random_hecke(max_len: usize, max_terms: usize) -> impl Strategy<Value = (usize, Vec<(Vec<usize>, ParamPoly)>)> {
    (0..systems().len()).prop_flat_map(move |i| {
        let sys = &systems()[i].sys;
        let rank = sys.rank();
        let term = (prop::collection::vec(0..rank, 0..=max_len), small_poly(sys.n_classes()));
        (Just(i), prop::collection::vec(term, 0..=max_terms))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent((i, w) in sys_and_word(12)) {
        let sys = &systems()[i].sys;
        let e = sys.normalize(&w).unwrap();
        prop_assert_eq!(sys.normalize(&e.indices()).unwrap(), e.clone());
        prop_assert!(e.len() <= w.len());
        prop_assert_eq!(e.len() % 2, w.len() % 2);
    }

    #[test]
    fn length_parity((i, ws) in sys_and_words(6, 2)) {
        let sys = &systems()[i].sys;
        let u = sys.normalize(&ws[0]).unwrap();
        let v = sys.normalize(&ws[1]).unwrap();
        prop_assert_eq!(sys.multiply(&u, &v).len() % 2, (u.len() + v.len()) % 2);
        prop_assert_eq!(sys.inverse(&sys.multiply(&u, &v)), sys.multiply(&sys.inverse(&v), &sys.inverse(&u)));
    }

    #[test]
    fn exchange_property((i, w) in sys_and_word(8)) {
        let sys = &systems()[i].sys;
        let e = sys.normalize(&w).unwrap();
        let firsts: BTreeSet<u8> = common::braid_class(sys.matrix(), e.word()).iter().filter_map(|x| x.first().copied()).collect();
        let lasts: BTreeSet<u8> = common::braid_class(sys.matrix(), e.word()).iter().filter_map(|x| x.last().copied()).collect();
        prop_assert_eq!(sys.descents(&e, Side::Left).iter().collect::<BTreeSet<_>>(), firsts);
        prop_assert_eq!(sys.descents(&e, Side::Right).iter().collect::<BTreeSet<_>>(), lasts);
    }

    #[test]
    fn coset_factorization((i, w, mask) in sys_word_subset(8)) {
        let sys = &systems()[i].sys;
        let j = mask_subset(sys.rank(), mask);
        let e = sys.normalize(&w).unwrap();
        let (y, x) = sys.left_coset_factorization(&j, &e);
        prop_assert!(y.word().iter().all(|&s| j.contains(s)));
        prop_assert_eq!(sys.multiply(&y, &x), e.clone());
        prop_assert_eq!(y.len() + x.len(), e.len());
        prop_assert!(j.iter().all(|s| !sys.has_descent(&x, s, Side::Left)));
    }

    #[test]
    fn orbit_is_closed_and_deterministic((i, w, mask) in sys_word_subset(6)) {
        let sys = &systems()[i].sys;
        let j = mask_subset(sys.rank(), mask);
        let e = sys.normalize(&w).unwrap();
        let r = decide_finite(sys, &j, &e, B).unwrap();
        if let Some(orbit) = &r.orbit {
            let set: BTreeSet<&Element> = orbit.iter().collect();
            for u in orbit {
                for s in j.iter() {
                    prop_assert!(set.contains(&sys.conjugate_gen(s, u)));
                }
            }
            if !sys.is_spherical(&j) && sys.is_irreducible(&j) {
                prop_assert!(orbit.iter().all(|u| u.len() == e.len()));
            }
        }
        let again = decide_finite(sys, &j, &e, B).unwrap();
        prop_assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn hecke_mul_is_associative((i, terms) in random_hecke(3, 5)) {
        let sys = &systems()[i].sys;
        let n = terms.len() / 3;
        let (x, rest) = terms.split_at(n);
        let (y, z) = rest.split_at(rest.len() / 2);
        let (x, y, z) = (hecke_from(sys, x), hecke_from(sys, y), hecke_from(sys, z));
        prop_assert_eq!(x.mul(sys, &y).mul(sys, &z), x.mul(sys, &y.mul(sys, &z)));
    }

    #[test]
    fn specialization_is_a_homomorphism((i, terms) in random_hecke(3, 6), iwahori in any::<bool>()) {
        let sys = &systems()[i].sys;
        let (x, y) = terms.split_at(terms.len() / 2);
        let (x, y) = (hecke_from(sys, x), hecke_from(sys, y));
        let sp = if iwahori { Specialization::iwahori(sys.n_classes()) } else { Specialization::group_ring(sys.n_classes()) };
        let lhs = sp.apply(sys, &x.mul(sys, &y)).unwrap();
        let rhs = sp.mul(sys, &sp.apply(sys, &x).unwrap(), &sp.apply(sys, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(sp.apply(sys, &x.add(&y)).unwrap(), sp.apply(sys, &x).unwrap().add(&sp.apply(sys, &y).unwrap()));
    }

    #[test]
    fn b_is_constant_on_reduced_words((i, w) in sys_and_word(7)) {
        let sys = &systems()[i].sys;
        let e = sys.normalize(&w).unwrap();
        let b = b_of(sys, &e);
        for word in common::braid_class(sys.matrix(), e.word()) {
            prop_assert_eq!(b_of_word(sys, &word), b.clone());
        }
    }

    #[test]
    fn coefficient_check_matches_commutation((i, terms) in random_hecke(4, 6), mask in 1u32..8) {
        let sys = &systems()[i].sys;
        let j = mask_subset(sys.rank(), mask % (1 << sys.rank()));
        let h = hecke_from(sys, &terms);
        prop_assert_eq!(check_membership_coeffs(sys, &j, &h).is_empty(), check_commutation(sys, &j, &h).is_none());
    }
}

#[test]
fn braid_relations_hold_in_the_hecke_algebra() {
    for m in [2u32, 3, 4] {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(Some(m)));
        let alt = |first: u8| {
            (0..m).fold(HeckeElement::one(), |acc, k| acc.mul(&sys, &t_gen((first + k as u8) % 2)))
        };
        assert_eq!(alt(0), alt(1), "m = {m}");
        for s in 0..2 {
            let c = sys.generator_class(s);
            let expected = HeckeElement::term(sys.generator(s), ParamPoly::a(c)).add(&HeckeElement::term(Element::identity(), ParamPoly::b(c)));
            assert_eq!(t_gen(s).mul(&sys, &t_gen(s)), expected);
        }
    }
}

/// Finite classes of a system under irreducible `J`, found within radius 6.
fn finite_classes(sys: &CoxeterSystem, j: &GeneratorSet) -> Vec<coxeter_hecke::conjugacy::PartialClassReport> {
    coxeter_hecke::centralizer::finite_classes(sys, j, 6, B).unwrap()
}

#[test]
fn fmax_at_the_group_point_is_the_indicator() {
    for t in systems() {
        let sys = &t.sys;
        let sp = Specialization::group_ring(sys.n_classes());
        for j in common::irreducible_subsets(sys) {
            for r in finite_classes(sys, &j) {
                let table = class_poly_max(sys, &j, &r, B).unwrap();
                let orbit: BTreeSet<&Element> = table.orbit.iter().collect();
                for (w, p) in &table.entries {
                    let v = sp.eval(p).unwrap();
                    let expected = if orbit.contains(w) { LaurentPoly::one() } else { LaurentPoly::zero() };
                    assert_eq!(v, expected, "{} J={j:?} w={w}", t.name);
                }
                for w in &table.orbit {
                    assert_eq!(sp.eval(&table.get(w)).unwrap(), LaurentPoly::one());
                }
            }
        }
    }
}

#[test]
fn fmax_is_constant_on_strong_conjugacy() {
    for t in systems() {
        let sys = &t.sys;
        for j in common::irreducible_subsets(sys) {
            for r in finite_classes(sys, &j) {
                let table = class_poly_max(sys, &j, &r, B).unwrap();
                let support: Vec<&Element> = table.entries.iter().map(|(w, _)| w).collect();
                for (k, u) in support.iter().enumerate() {
                    for v in &support[k + 1..] {
                        if u.len() != v.len() || table.get(u) == table.get(v) {
                            continue;
                        }
                        let path = strongly_conjugate(sys, &j, u, v, StrongMode::Max, None, B).unwrap();
                        assert!(path.is_none(), "{} J={j:?}: {u} and {v} differ", t.name);
                    }
                }
            }
        }
    }
}

#[test]
fn min_rows_of_minimal_elements_are_unit_vectors() {
    for t in systems().iter().filter(|t| t.sys.is_finite()) {
        let sys = &t.sys;
        let mut mp = MinClassPolys::new(sys, B).unwrap();
        let reps: Vec<Element> = (0..mp.classes().len()).map(|i| mp.representative(i).clone()).collect();
        for w in sys.ball(16, B).unwrap() {
            let row = mp.polys(&w).unwrap();
            let class = mp.class_of(&w);
            if w.len() == reps[class].len() {
                assert_eq!(row, [(class, ParamPoly::one())].into_iter().collect(), "{} {w}", t.name);
            }
            let sp = Specialization::group_ring(sys.n_classes());
            let at_group: Vec<(usize, LaurentPoly)> = row.iter().map(|(c, p)| (*c, sp.eval(p).unwrap())).filter(|(_, v)| !v.is_zero()).collect();
            assert_eq!(at_group, vec![(class, LaurentPoly::one())], "{} {w}", t.name);
        }
    }
}

#[test]
fn centralizer_elements_and_perturbations() {
    for t in systems() {
        let sys = &t.sys;
        for j in common::irreducible_subsets(sys) {
            let zs: Vec<HeckeElement> = finite_classes(sys, &j).iter().map(|r| build_z(sys, &j, r, B).unwrap().element).collect();
            let mut combo = HeckeElement::zero();
            for (k, z) in zs.iter().enumerate() {
                assert!(check_membership_coeffs(sys, &j, z).is_empty());
                assert!(check_commutation(sys, &j, z).is_none());
                combo = combo.add(&z.scale(&ParamPoly::constant(k as i64 + 1)));
                for s in j.iter() {
                    let perturbed = z.add(&t_gen(s).mul(sys, &t_gen((s + 1) % sys.rank() as u8)));
                    assert_eq!(
                        check_membership_coeffs(sys, &j, &perturbed).is_empty(),
                        check_commutation(sys, &j, &perturbed).is_none(),
                        "{} J={j:?}",
                        t.name
                    );
                }
            }
            assert!(check_membership_coeffs(sys, &j, &combo).is_empty());
            assert!(check_commutation(sys, &j, &combo).is_none());
        }
    }
}

#[test]
fn ball_sizes() {
    for t in systems() {
        let sizes: Vec<usize> = (0..=8).map(|r| t.sys.ball(r, B).unwrap().len()).collect();
        assert_eq!(sizes[0], 1);
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{}", t.name);
    }
    let d = common::dinf();
    for n in 0..10 {
        assert_eq!(d.ball(n, B).unwrap().len(), 2 * n + 1);
    }
    assert_eq!(common::a2().ball(3, B).unwrap().len(), 6);
    assert_eq!(common::b2().ball(100, B).unwrap().len(), 8);
}
