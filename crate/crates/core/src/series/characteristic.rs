use std::collections::BTreeMap;

use super::element::{Basis, SeriesElement, Space};
use super::qpoly::QPoly;
use crate::error::{Error, Result};
use crate::hecke::{filtration_by_descent, length_filtration, HeckeModule};
use crate::shape::{Composition, DescentSet};

/// The composition factors of a module whose generators act triangularly
/// with respect to a common order, each recorded by the set of generators
/// acting as `-1`. Fails if the union of all arrows has a cycle.
pub fn composition_factors(module: &HeckeModule) -> Result<Vec<Composition>> {
    let dim = module.dim();
    let mut indegree = vec![0usize; dim];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); dim];
    let mut label = vec![DescentSet::EMPTY; dim];
    for (&i, m) in module.generators() {
        for (r, c, v) in m.entries() {
            if r == c {
                match v {
                    -1 => label[c] = label[c].with(i),
                    0 => {}
                    _ => {
                        return Err(Error::Certification(format!(
                            "generator {i} has diagonal entry {v} at basis element {c}"
                        )))
                    }
                }
            } else {
                succ[c].push(r);
                indegree[r] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..dim).filter(|&k| indegree[k] == 0).collect();
    let mut seen = 0;
    while let Some(k) = ready.pop() {
        seen += 1;
        for &r in &succ[k] {
            indegree[r] -= 1;
            if indegree[r] == 0 {
                ready.push(r);
            }
        }
    }
    if seen != dim {
        return Err(Error::Certification(
            "the action is not triangular in any basis order".into(),
        ));
    }
    let pseudo = module.kind().is_signed();
    let mut out = label
        .into_iter()
        .map(|d| Composition::from_descents(d, module.n(), pseudo))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn sum_of(space: Space, basis: Basis, labels: impl IntoIterator<Item = (Composition, QPoly)>) -> Result<SeriesElement> {
    SeriesElement::from_terms(space, basis, labels)
}

/// `Ch(M) = Σ F_α` over the composition factors `C_α` of `M`.
pub fn quasi_characteristic(module: &HeckeModule) -> Result<SeriesElement> {
    let space = Space::of(module.kind(), true);
    sum_of(
        space,
        Basis::F,
        composition_factors(module)?.into_iter().map(|c| (c, QPoly::one())),
    )
}

/// `Ch_q(M) = Σ_i q^i Ch(M_i/M_{i+1})` for the length filtration generated
/// by the basis element `generator`.
pub fn graded_characteristic(module: &HeckeModule, generator: usize) -> Result<SeriesElement> {
    let filtration = length_filtration(module, generator)?;
    let pseudo = module.kind().is_signed();
    let mut terms = Vec::new();
    for level in &filtration.levels {
        for &d in &level.descents {
            terms.push((
                Composition::from_descents(d, module.n(), pseudo)?,
                QPoly::monomial(1, level.shift),
            ));
        }
    }
    sum_of(Space::of(module.kind(), true), Basis::F, terms)
}

/// `ch(M) = Σ s_β` over the layers of the descent filtration of a
/// projective tableau module.
pub fn projective_characteristic(module: &HeckeModule) -> Result<SeriesElement> {
    let filtration = filtration_by_descent(module)?;
    sum_of(
        Space::of(module.kind(), false),
        Basis::S,
        filtration.shapes().into_iter().map(|c| (c, QPoly::one())),
    )
}

/// Sums a multiset of labels in the given space and basis.
pub fn label_characteristic(space: Space, basis: Basis, labels: &[Composition]) -> Result<SeriesElement> {
    let mut counts: BTreeMap<Composition, i64> = BTreeMap::new();
    for l in labels {
        *counts.entry(l.clone()).or_default() += 1;
    }
    sum_of(space, basis, counts.into_iter().map(|(c, k)| (c, QPoly::constant(k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{build_c, build_m, build_p, twist, Twist};
    use crate::series::identities::band_series;
    use crate::shape::{enumerate_shapes, GeneralizedShape, Kind};
    use crate::tableau::tau0;

    #[test]
    fn simple_and_permutation_modules() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let c = build_c(kind, &alpha).unwrap();
                    let space = Space::of(kind, true);
                    assert_eq!(
                        quasi_characteristic(&c).unwrap(),
                        SeriesElement::basis_element(space, Basis::F, alpha.clone()).unwrap()
                    );
                    let m = build_m(kind, &alpha).unwrap();
                    let mut expect = SeriesElement::zero(space, Basis::F).unwrap();
                    for beta in alpha.coarsenings() {
                        let p = build_p(&GeneralizedShape::ribbon(kind, beta).unwrap()).unwrap();
                        expect = expect.add(&quasi_characteristic(&p).unwrap()).unwrap();
                    }
                    assert_eq!(quasi_characteristic(&m).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn graded_matches_band_formula() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let shape = GeneralizedShape::ribbon(kind, alpha.clone()).unwrap();
                    let p = build_p(&shape).unwrap();
                    let start = p.index_of(tau0(kind, &alpha).unwrap().entries()).unwrap();
                    let graded = graded_characteristic(&p, start).unwrap();
                    assert_eq!(graded, band_series(&shape, true).unwrap(), "{kind} {alpha:?}");
                    assert_eq!(graded.specialize(1), quasi_characteristic(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn projective_labels() {
        let shape = GeneralizedShape::parse(Kind::A, "[1]+[1,1]+[2,1]").unwrap();
        let ch = projective_characteristic(&build_p(&shape).unwrap()).unwrap();
        assert_eq!(
            ch,
            SeriesElement::parse(Kind::A, "s[1,1,1,2,1] + s[2,1,2,1] + s[1,1,3,1] + s[2,3,1]").unwrap()
        );
        assert_eq!(ch, crate::series::algebra::ribbon_schur(&shape).unwrap());
    }

    #[test]
    fn twisted_modules_have_transposed_tops() {
        let p = build_p(&GeneralizedShape::parse(Kind::A, "[2,1,1]").unwrap()).unwrap();
        let t = twist(&p, Twist::Theta).unwrap();
        let labels = composition_factors(&t).unwrap();
        let comps: Vec<Composition> = composition_factors(&p)
            .unwrap()
            .iter()
            .map(|c| c.complement())
            .collect();
        let mut comps = comps;
        comps.sort();
        assert_eq!(labels, comps);
    }
}
