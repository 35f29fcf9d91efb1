use hecke_ribbon::demazure::{demazure, demazure_bar, MultiPoly};
use hecke_ribbon::group::reduced_word;
use hecke_ribbon::hecke::build_p;
use hecke_ribbon::series::{antipode, coproduct, multiply, pairing, Basis, QPoly, SeriesElement, Space};
use hecke_ribbon::{Composition, DescentSet, GeneralizedShape, GroupElement, HeckeModule, Kind};
use proptest::prelude::*;

fn composition(max_len: usize, max_part: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(|p| Composition::new(p).unwrap())
}

fn pseudo(max_len: usize, max_part: usize) -> impl Strategy<Value = Composition> {
    (0..=max_part, prop::collection::vec(1..=max_part, 0..max_len))
        .prop_map(|(first, mut rest)| {
            rest.insert(0, first);
            Composition::pseudo(rest).unwrap()
        })
}

fn basis(space: Space, basis: Basis, a: &Composition) -> SeriesElement {
    SeriesElement::basis_element(space, basis, a.clone()).unwrap()
}

fn element(space: Space, b: Basis) -> impl Strategy<Value = SeriesElement> {
    prop::collection::vec((composition(3, 2), -3i64..=3), 1..4).prop_map(move |terms| {
        SeriesElement::from_terms(space, b, terms.into_iter().map(|(a, c)| (a, QPoly::constant(c)))).unwrap()
    })
}

fn signed_window(kind: Kind, n: usize) -> impl Strategy<Value = GroupElement> {
    (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(
        move |(perm, signs)| {
            let mut w: Vec<i32> = perm
                .into_iter()
                .zip(&signs)
                .map(|(v, &neg)| if neg && kind != Kind::A { -v } else { v })
                .collect();
            if kind == Kind::D && w.iter().filter(|v| **v < 0).count() % 2 == 1 {
                w[0] = -w[0];
            }
            GroupElement::new(kind, w).unwrap()
        },
    )
}

fn polynomial(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n), -4i64..=4), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(MultiPoly::zero(n), |acc, (e, c)| {
            acc.add(&MultiPoly::monomial(n, e, c).unwrap()).unwrap()
        })
    })
}

fn quasi_shuffles(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    match (a.split_first(), b.split_first()) {
        (None, _) => vec![b.to_vec()],
        (_, None) => vec![a.to_vec()],
        (Some((&x, ra)), Some((&y, rb))) => {
            let mut out = Vec::new();
            for (head, l, r) in [(x, ra, b), (y, a, rb), (x + y, ra, rb)] {
                for mut w in quasi_shuffles(l, r) {
                    w.insert(0, head);
                    out.push(w);
                }
            }
            out
        }
    }
}

proptest! {
    #[test]
    fn monomial_products_are_quasi_shuffles(a in composition(3, 3), b in composition(3, 3)) {
        let got = multiply(&basis(Space::QSym, Basis::M, &a), &basis(Space::QSym, Basis::M, &b)).unwrap();
        let want = SeriesElement::from_terms(
            Space::QSym,
            Basis::M,
            quasi_shuffles(a.parts(), b.parts())
                .into_iter()
                .map(|w| (Composition::new(w).unwrap(), QPoly::one())),
        )
        .unwrap();
        prop_assert_eq!(got.convert(Basis::M).unwrap(), want);
    }

    #[test]
    fn descent_sets_determine_compositions(a in composition(6, 3)) {
        let back = Composition::from_descents(a.descent_set(), a.size(), false).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn pseudo_descents_round_trip(a in pseudo(4, 3)) {
        let back = Composition::from_descents(a.descent_set(), a.size(), true).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn shape_involutions(a in composition(6, 3)) {
        prop_assert_eq!(a.transpose().unwrap().transpose().unwrap(), a.clone());
        prop_assert_eq!(a.reverse().unwrap().reverse().unwrap(), a.clone());
        prop_assert_eq!(a.complement().complement(), a.clone());
        let d: DescentSet = a.descent_set();
        for c in a.coarsenings() {
            prop_assert!(c.descent_set().is_subset(d));
        }
    }

    #[test]
    fn basis_changes_round_trip(a in composition(4, 3)) {
        let f = basis(Space::QSym, Basis::F, &a);
        prop_assert_eq!(f.convert(Basis::M).unwrap().convert(Basis::F).unwrap(), f);
        let s = basis(Space::NSym, Basis::S, &a);
        prop_assert_eq!(s.convert(Basis::H).unwrap().convert(Basis::S).unwrap(), s);
    }

    #[test]
    fn qsym_is_commutative(x in element(Space::QSym, Basis::F), y in element(Space::QSym, Basis::F)) {
        prop_assert_eq!(multiply(&x, &y).unwrap(), multiply(&y, &x).unwrap());
    }

    #[test]
    fn products_are_associative(
        x in element(Space::NSym, Basis::S),
        y in element(Space::NSym, Basis::S),
        z in element(Space::NSym, Basis::S),
    ) {
        let l = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let r = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn products_do_not_depend_on_basis(x in element(Space::QSym, Basis::F), y in element(Space::QSym, Basis::F)) {
        let direct = multiply(&x, &y).unwrap().convert(Basis::M).unwrap();
        let via = multiply(&x.convert(Basis::M).unwrap(), &y.convert(Basis::M).unwrap()).unwrap();
        prop_assert_eq!(direct, via.convert(Basis::M).unwrap());
    }

    #[test]
    fn antipode_reverses_products(x in element(Space::NSym, Basis::S), y in element(Space::NSym, Basis::S)) {
        let l = antipode(&multiply(&x, &y).unwrap()).unwrap();
        let r = multiply(&antipode(&y).unwrap(), &antipode(&x).unwrap()).unwrap();
        prop_assert_eq!(l.convert(Basis::S).unwrap(), r.convert(Basis::S).unwrap());
        prop_assert_eq!(antipode(&antipode(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn complete_and_monomial_are_dual(a in composition(4, 2), b in composition(4, 2)) {
        let v = pairing(&basis(Space::NSym, Basis::H, &a), &basis(Space::QSym, Basis::M, &b)).unwrap();
        prop_assert_eq!(v, QPoly::constant((a == b) as i64));
    }

    #[test]
    fn coproduct_counts(a in composition(4, 2)) {
        let t = coproduct(&basis(Space::QSym, Basis::M, &a)).unwrap();
        prop_assert_eq!(t.terms.len(), a.len() + 1);
    }

    #[test]
    fn series_json_round_trip(x in element(Space::NSym, Basis::H)) {
        prop_assert_eq!(SeriesElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn group_inverse_and_length(w in signed_window(Kind::B, 4), v in signed_window(Kind::B, 4)) {
        let id = GroupElement::identity(Kind::B, 4);
        prop_assert_eq!(w.multiply(&w.inverse()).unwrap(), id);
        let wv = w.multiply(&v).unwrap();
        prop_assert_eq!(wv.inverse(), v.inverse().multiply(&w.inverse()).unwrap());
        prop_assert_eq!(w.length(), w.inverse().length());
    }

    #[test]
    fn type_a_reduced_words(w in signed_window(Kind::A, 6)) {
        let word = reduced_word(&w);
        prop_assert_eq!(word.len(), w.length());
        let mut x = GroupElement::identity(Kind::A, 6);
        for &i in &word {
            x = x.multiply(&GroupElement::generator(Kind::A, 6, i).unwrap()).unwrap();
        }
        prop_assert_eq!(x, w);
    }

    #[test]
    fn type_d_has_even_sign_changes(w in signed_window(Kind::D, 4)) {
        prop_assert_eq!(w.window().iter().filter(|v| **v < 0).count() % 2, 0);
    }

    #[test]
    fn demazure_relations(f in polynomial(4), i in 1usize..=3) {
        let p = demazure(i, &f).unwrap();
        prop_assert_eq!(demazure(i, &p).unwrap(), p.clone());
        let b = demazure_bar(i, &f).unwrap();
        prop_assert_eq!(demazure_bar(i, &b).unwrap(), b.scale(-1));
        prop_assert_eq!(b, p.sub(&f).unwrap());
        if i < 3 {
            let j = i + 1;
            let l = demazure(i, &demazure(j, &p).unwrap()).unwrap();
            let r = demazure(j, &demazure(i, &demazure(j, &f).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn demazure_preserves_symmetric_factors(f in polynomial(3)) {
        let sym = MultiPoly::parse(3, "x1 + x2 + x3").unwrap();
        let l = demazure(1, &sym.mul(&f).unwrap()).unwrap();
        prop_assert_eq!(l, sym.mul(&demazure(1, &f).unwrap()).unwrap());
    }

    #[test]
    fn polynomial_text_and_json_round_trip(f in polynomial(4)) {
        prop_assert_eq!(MultiPoly::parse(4, &f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(MultiPoly::from_json(&f.to_json()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_json_round_trip(a in composition(4, 2), b in pseudo(2, 2)) {
        for shape in [
            GeneralizedShape::ribbon(Kind::A, a.clone()).unwrap(),
            GeneralizedShape::ribbon(Kind::B, b.clone()).unwrap(),
        ] {
            if shape.size() == 0 {
                continue;
            }
            let m = build_p(&shape).unwrap();
            let back = HeckeModule::from_json(&m.to_json()).unwrap();
            prop_assert_eq!(back.to_json(), m.to_json());
            prop_assert_eq!(back.dim(), m.dim());
        }
    }
}
