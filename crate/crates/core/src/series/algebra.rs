use std::str::FromStr;

use super::element::{Basis, SeriesElement, Space, Tensor};
use super::qpoly::QPoly;
use crate::error::{Error, Result};
use crate::shape::{Composition, DescentSet, GeneralizedShape, Kind};

/// All shuffles of `u` with `v` shifted up by `|u|`.
pub fn shifted_shuffle(u: &[usize], v: &[usize]) -> Vec<Vec<usize>> {
    let m = u.len();
    let shifted: Vec<usize> = v.iter().map(|x| x + m).collect();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(m + v.len());
    shuffle_into(u, &shifted, &mut word, &mut out);
    out
}

fn shuffle_into(a: &[usize], b: &[usize], word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if a.is_empty() || b.is_empty() {
        let mut w = word.clone();
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        out.push(w);
        return;
    }
    word.push(a[0]);
    shuffle_into(&a[1..], b, word, out);
    word.pop();
    word.push(b[0]);
    shuffle_into(a, &b[1..], word, out);
    word.pop();
}

/// Positions `j ≥ 1` with `w_j > w_{j+1}` (1-based).
pub fn word_descents(w: &[usize]) -> DescentSet {
    (1..w.len()).filter(|&j| w[j - 1] > w[j]).collect()
}

/// A permutation whose descent set is exactly `D(α)`: increasing blocks of
/// the sizes of `α`, the first block holding the largest values.
pub fn representative(alpha: &Composition) -> Vec<usize> {
    let mut top = alpha.size();
    let mut w = Vec::with_capacity(top);
    for &p in alpha.parts() {
        w.extend(top - p + 1..=top);
        top -= p;
    }
    w
}

fn require_space(x: &SeriesElement, allowed: &[Space], what: &str) -> Result<()> {
    if !allowed.contains(&x.space()) {
        return Err(Error::Unsupported(format!("{what} is not defined on {}", x.space())));
    }
    Ok(())
}

/// Product in QSym through the shuffle rule on fundamentals.
pub fn qsym_product(f: &SeriesElement, g: &SeriesElement) -> Result<SeriesElement> {
    require_space(f, &[Space::QSym], "the quasisymmetric product")?;
    require_space(g, &[Space::QSym], "the quasisymmetric product")?;
    let (ff, gf) = (f.convert(Basis::F)?, g.convert(Basis::F)?);
    let mut out = SeriesElement::zero(Space::QSym, Basis::F)?;
    for (a, ca) in ff.terms() {
        let u = representative(a);
        for (b, cb) in gf.terms() {
            let v = representative(b);
            let c = ca * cb;
            let n = a.size() + b.size();
            for w in shifted_shuffle(&u, &v) {
                let shape = Composition::from_descents(word_descents(&w), n, false)?;
                out.add_term(shape, &c);
            }
        }
    }
    out.convert(f.basis())
}

/// Product on the noncommutative side; the left factor may come from
/// NSymB or NSymD, which are right NSym-modules.
pub fn nsym_product(f: &SeriesElement, g: &SeriesElement) -> Result<SeriesElement> {
    require_space(f, &[Space::NSym, Space::NSymB, Space::NSymD], "the noncommutative product")?;
    require_space(g, &[Space::NSym], "the right factor of a noncommutative product")?;
    let g = g.convert(f.basis())?;
    let mut out = f.empty_like();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let c = ca * cb;
            for shape in glue(f.basis(), a, b)? {
                out.add_term(shape, &c);
            }
        }
    }
    Ok(out)
}

fn glue(basis: Basis, a: &Composition, b: &Composition) -> Result<Vec<Composition>> {
    if b.size() == 0 {
        return Ok(vec![a.clone()]);
    }
    if !a.is_pseudo() && a.size() == 0 {
        return Ok(vec![b.clone()]);
    }
    Ok(match basis {
        Basis::H => vec![a.concat(b)?],
        _ => vec![a.concat(b)?, a.near_concat(b)?],
    })
}

/// Product dispatching on the side of the left factor.
pub fn multiply(f: &SeriesElement, g: &SeriesElement) -> Result<SeriesElement> {
    if f.space().is_quasi() {
        qsym_product(f, g)
    } else {
        nsym_product(f, g)
    }
}

/// `Σ_{γ∈[α]} s_γ` in the noncommutative space of the shape's type.
pub fn ribbon_schur(shape: &GeneralizedShape) -> Result<SeriesElement> {
    let space = Space::of(shape.kind(), false);
    SeriesElement::from_terms(space, Basis::S, shape.bracket().into_iter().map(|g| (g, QPoly::one())))
}

fn cut_range(kind: Kind, n: usize) -> std::ops::RangeInclusive<usize> {
    match kind {
        Kind::A | Kind::B => 0..=n,
        Kind::D => 2..=n,
    }
}

/// Coproduct on QSym and NSym, and the right QSym-coaction on QSymB and
/// QSymD. Multi-degree elements are handled term by term.
pub fn coproduct(x: &SeriesElement) -> Result<Tensor> {
    let space = x.space();
    let kind = x.kind();
    let left = (space, x.basis());
    let right = (Space::of(Kind::A, space.is_quasi()), x.basis());
    let mut out = Tensor::new(left, right);
    match (space, x.basis()) {
        (Space::QSym | Space::QSymB | Space::QSymD, Basis::F) => {
            for (alpha, c) in x.terms() {
                for i in cut_range(kind, alpha.size()) {
                    let (l, r) = alpha.cut(i)?;
                    out.add_term(l, r, c);
                }
            }
        }
        (Space::QSym | Space::QSymB | Space::QSymD, Basis::M) => {
            for (alpha, c) in x.terms() {
                let parts = alpha.parts();
                let start = match kind {
                    Kind::A => 0,
                    Kind::B => 1,
                    Kind::D => {
                        let mut acc = 0;
                        (1..=parts.len())
                            .find(|&k| {
                                acc += parts[k - 1];
                                acc >= 2
                            })
                            .unwrap_or(parts.len())
                    }
                };
                for i in start..=parts.len() {
                    let l = if kind.is_signed() {
                        Composition::pseudo(parts[..i].to_vec())?
                    } else {
                        Composition::new(parts[..i].to_vec())?
                    };
                    out.add_term(l, Composition::new(parts[i..].to_vec())?, c);
                }
            }
        }
        (Space::NSym, Basis::S) => {
            for (alpha, c) in x.terms() {
                let shape = GeneralizedShape::ribbon(Kind::A, alpha.clone())?;
                let t = coproduct_generalized(&shape)?;
                for ((l, r), v) in &t.terms {
                    out.add_term(l.clone(), r.clone(), &(v * c));
                }
            }
        }
        (Space::NSym, Basis::H) => {
            for (alpha, c) in x.terms() {
                let mut acc: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
                for &k in alpha.parts() {
                    let mut next = Vec::with_capacity(acc.len() * (k + 1));
                    for (l, r) in &acc {
                        for i in 0..=k {
                            let (mut l2, mut r2) = (l.clone(), r.clone());
                            if i > 0 {
                                l2.push(i);
                            }
                            if i < k {
                                r2.push(k - i);
                            }
                            next.push((l2, r2));
                        }
                    }
                    acc = next;
                }
                for (l, r) in acc {
                    out.add_term(Composition::new(l)?, Composition::new(r)?, c);
                }
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no coproduct on {space} in the {} basis",
                x.basis()
            )))
        }
    }
    Ok(out)
}

/// `Δs_α` for a generalized type A ribbon, summed over the decompositions
/// `α = β ⊔ γ` with both sides expanded over their bracket sets.
pub fn coproduct_generalized(shape: &GeneralizedShape) -> Result<Tensor> {
    if shape.kind() != Kind::A {
        return Err(Error::Unsupported("the s-coproduct is defined in type A only".into()));
    }
    let side = (Space::NSym, Basis::S);
    let mut out = Tensor::new(side, side);
    for d in shape.decompositions() {
        let (lb, rb) = (d.beta.bracket(), d.gamma.bracket());
        for l in &lb {
            for r in &rb {
                out.add_term(l.clone(), r.clone(), &QPoly::one());
            }
        }
    }
    Ok(out)
}

/// Componentwise product of two tensors over QSym⊗QSym or NSym⊗NSym.
pub fn tensor_multiply(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::new(a.left, a.right);
    for ((l1, r1), c1) in &a.terms {
        for ((l2, r2), c2) in &b.terms {
            let l = multiply(
                &SeriesElement::basis_element(a.left.0, a.left.1, l1.clone())?,
                &SeriesElement::basis_element(b.left.0, b.left.1, l2.clone())?,
            )?
            .convert(a.left.1)?;
            let r = multiply(
                &SeriesElement::basis_element(a.right.0, a.right.1, r1.clone())?,
                &SeriesElement::basis_element(b.right.0, b.right.1, r2.clone())?,
            )?
            .convert(a.right.1)?;
            let c = c1 * c2;
            for (ls, lc) in l.terms() {
                for (rs, rc) in r.terms() {
                    out.add_term(ls.clone(), rs.clone(), &(&(&c * lc) * rc));
                }
            }
        }
    }
    Ok(out)
}

/// `m(t)`: multiplies the two factors of each term.
pub fn contract(t: &Tensor) -> Result<SeriesElement> {
    let mut out = SeriesElement::zero(t.left.0, t.left.1)?;
    for ((l, r), c) in &t.terms {
        let p = multiply(
            &SeriesElement::basis_element(t.left.0, t.left.1, l.clone())?,
            &SeriesElement::basis_element(t.right.0, t.right.1, r.clone())?,
        )?;
        out = out.add(&p.scale(c))?;
    }
    Ok(out)
}

/// The degree-0 coefficient.
pub fn counit(x: &SeriesElement) -> QPoly {
    x.terms()
        .iter()
        .filter(|(s, _)| s.size() == 0)
        .fold(QPoly::zero(), |acc, (_, c)| &acc + c)
}

/// The duality pairing `⟨h_α, M_β⟩ = δ_{αβ}`; accepts the arguments in
/// either order.
pub fn pairing(f: &SeriesElement, g: &SeriesElement) -> Result<QPoly> {
    let (nc, qs) = if f.space().is_quasi() { (g, f) } else { (f, g) };
    if nc.space().is_quasi() || nc.space().dual() != qs.space() {
        return Err(Error::Mismatch(format!(
            "cannot pair {} with {}",
            f.space(),
            g.space()
        )));
    }
    let h = nc.convert(Basis::H)?;
    let m = qs.convert(Basis::M)?;
    let mut acc = QPoly::zero();
    for (shape, c) in h.terms() {
        if let Some(d) = m.terms().get(shape) {
            acc += &(c * d);
        }
    }
    Ok(acc)
}

/// Antipode of QSym and NSym.
pub fn antipode(x: &SeriesElement) -> Result<SeriesElement> {
    require_space(x, &[Space::QSym, Space::NSym], "the antipode")?;
    let base = if x.space().is_quasi() { Basis::F } else { Basis::S };
    let y = x.convert(base)?;
    let mut out = y.empty_like();
    for (alpha, c) in y.terms() {
        let s = if alpha.size() % 2 == 0 { 1 } else { -1 };
        out.add_term(alpha.transpose()?, &c.scale(s));
    }
    out.convert(x.basis())
}

/// Which tensor factor the skewing element is paired with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `f\a = Σ f(a₁) a₂`.
    Left,
    /// `a/f = Σ a₁ f(a₂)`.
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!("unknown side `{other}`"))),
        }
    }
}

/// Skewing of `a` by an element `f` of the dual space.
pub fn skew(a: &SeriesElement, f: &SeriesElement, side: Side) -> Result<SeriesElement> {
    let t = coproduct(a)?;
    let (keep, paired) = match side {
        Side::Right => (t.left, t.right),
        Side::Left => (t.right, t.left),
    };
    if paired.0.dual() != f.space() {
        return Err(Error::Mismatch(format!(
            "cannot skew {} by {} on the {side:?}",
            a.space(),
            f.space()
        )));
    }
    let mut out = SeriesElement::zero(keep.0, keep.1)?;
    for ((l, r), c) in &t.terms {
        let (k, p) = match side {
            Side::Right => (l, r),
            Side::Left => (r, l),
        };
        let v = pairing(f, &SeriesElement::basis_element(paired.0, paired.1, p.clone())?)?;
        out.add_term(k.clone(), &(c * &v));
    }
    Ok(out)
}

/// Closed form of `F_α/s_β` (right) or `s_β\F_α` (left).
pub fn skew_fundamental_closed(alpha: &Composition, beta: &Composition, side: Side) -> Result<SeriesElement> {
    let mut out = SeriesElement::zero(Space::QSym, Basis::F)?;
    let (n, k) = (alpha.size(), beta.size());
    if k > n {
        return Ok(out);
    }
    match side {
        Side::Right => {
            let (l, r) = alpha.cut(n - k)?;
            if &r == beta {
                out.add_term(l, &QPoly::one());
            }
        }
        Side::Left => {
            let (l, r) = alpha.cut(k)?;
            if &l == beta {
                out.add_term(r, &QPoly::one());
            }
        }
    }
    Ok(out)
}

/// Closed form of `s_α/F_β` (right) or `F_β\s_α` (left) as a sum over the
/// decompositions of the ribbon `α`.
pub fn skew_ribbon_closed(alpha: &Composition, beta: &Composition, side: Side) -> Result<SeriesElement> {
    let shape = GeneralizedShape::ribbon(Kind::A, alpha.clone())?;
    let mut out = SeriesElement::zero(Space::NSym, Basis::S)?;
    for d in shape.decompositions() {
        let (kept, matched) = match side {
            Side::Right => (&d.beta, &d.gamma),
            Side::Left => (&d.gamma, &d.beta),
        };
        if matched.bracket().contains(beta) {
            for g in kept.bracket() {
                out.add_term(g, &QPoly::one());
            }
        }
    }
    Ok(out)
}
