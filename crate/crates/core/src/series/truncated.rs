use std::collections::BTreeMap;
use std::fmt;

use super::element::{Basis, SeriesElement, Space};
use crate::error::{Error, Result};
use crate::limits;
use crate::linalg;
use crate::shape::{Composition, DescentSet, GeneralizedShape, Kind};
use crate::tableau::enumerate_semistandard;

/// A finite interval `lo..=hi` of variable indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Range(format!("empty window {lo}..={hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn len(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// The default truncation window for degree `n`: `1..=n` for QSym and
    /// NSym, `0..=n` for QSymB and the symmetric window of radius `n+1`
    /// everywhere else.
    pub fn default_for(space: Space, n: usize) -> Window {
        let n = n as i32;
        match space {
            Space::QSym | Space::NSym => Window { lo: 1, hi: n.max(1) },
            Space::QSymB => Window { lo: 0, hi: n.max(1) },
            _ => Window { lo: -(n + 1), hi: n + 1 },
        }
    }

    /// Checks the shape of the window required by `space`.
    pub fn check_for(self, space: Space) -> Result<()> {
        let ok = match space {
            Space::QSym | Space::NSym => self.lo >= 1,
            Space::QSymB => self.lo == 0,
            _ => self.lo == -self.hi,
        };
        if !ok {
            return Err(Error::Range(format!(
                "window {}..={} does not suit {space}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

/// A polynomial in the commuting variables of a window, keyed by
/// exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPoly {
    pub window: Window,
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl CommPoly {
    pub fn zero(window: Window) -> Self {
        CommPoly {
            window,
            terms: BTreeMap::new(),
        }
    }

    fn add_indices(&mut self, indices: &[i32], c: i64) {
        let mut exps = vec![0u32; self.window.len()];
        for &i in indices {
            exps[(i - self.window.lo) as usize] += 1;
        }
        add_entry(&mut self.terms, exps, c);
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            add_entry(&mut out.terms, k.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: i64) -> CommPoly {
        let mut out = CommPoly::zero(self.window);
        for (k, &v) in &self.terms {
            add_entry(&mut out.terms, k.clone(), v * c);
        }
        out
    }

    /// Product truncated at total degree `max_degree`.
    pub fn mul(&self, other: &CommPoly, max_degree: usize) -> CommPoly {
        let mut out = CommPoly::zero(self.window);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if e.iter().sum::<u32>() as usize <= max_degree {
                    add_entry(&mut out.terms, e, x * y);
                }
            }
        }
        out
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Vec<u32>, &i64)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        for (k, (exps, &c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(p, &e)| {
                    let var = format!("x{}", p as i32 + self.window.lo);
                    if e == 1 {
                        var
                    } else {
                        format!("{var}^{e}")
                    }
                })
                .collect();
            let body = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            let abs = c.abs();
            let body = if abs == 1 { body } else { format!("{abs}*{body}") };
            match (k, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// A truncated series in noncommuting variables, keyed by words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCSeries {
    pub window: Window,
    pub max_degree: usize,
    pub terms: BTreeMap<Vec<i32>, i64>,
}

impl NCSeries {
    pub fn zero(window: Window, max_degree: usize) -> Self {
        NCSeries {
            window,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&self, other: &NCSeries) -> NCSeries {
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            add_entry(&mut out.terms, k.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: i64) -> NCSeries {
        let mut out = NCSeries::zero(self.window, self.max_degree);
        for (k, &v) in &self.terms {
            add_entry(&mut out.terms, k.clone(), v * c);
        }
        out
    }

    /// Concatenation product, truncated at the common maximal degree.
    pub fn mul(&self, other: &NCSeries) -> NCSeries {
        let max = self.max_degree.min(other.max_degree);
        let mut out = NCSeries::zero(self.window, max);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                if a.len() + b.len() <= max {
                    add_entry(&mut out.terms, [a.as_slice(), b].concat(), x * y);
                }
            }
        }
        out
    }
}

impl fmt::Display for NCSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (word, &c)) in self.terms.iter().enumerate() {
            let body = if word.is_empty() {
                "1".to_string()
            } else {
                word.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join("")
            };
            match (k, c) {
                (0, 1) => write!(f, "{body}")?,
                (0, _) => write!(f, "{c}*{body}")?,
                (_, 1) => write!(f, " + {body}")?,
                (_, -1) => write!(f, " - {body}")?,
                (_, c) if c < 0 => write!(f, " - {}*{body}", -c)?,
                _ => write!(f, " + {c}*{body}")?,
            }
        }
        Ok(())
    }
}

fn add_entry<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, c: i64) {
    if c == 0 {
        return;
    }
    let e = map.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        map.retain(|_, v| *v != 0);
    }
}

fn constant_coefficients(elem: &SeriesElement) -> Result<Vec<(Composition, i64)>> {
    elem.terms()
        .iter()
        .map(|(s, c)| {
            c.as_constant().map(|k| (s.clone(), k)).ok_or_else(|| {
                Error::Unsupported(format!("coefficient {c} of {s} depends on q; specialize it first"))
            })
        })
        .collect()
}

/// Whether position `j` of an index sequence satisfies the monomial (`exact`)
/// or fundamental condition for descent set `d`.
fn step_ok(d: DescentSet, j: usize, a: i32, b: i32, exact: bool) -> bool {
    if d.contains(j) {
        a < b
    } else if exact {
        a == b
    } else {
        a <= b
    }
}

/// Enumerates weakly increasing index sequences in the window with the
/// monomial or fundamental strictness pattern of `shape`.
fn index_sequences(
    kind: Kind,
    shape: &Composition,
    window: Window,
    exact: bool,
    visit: &mut dyn FnMut(&[i32]),
) -> Result<()> {
    let n = shape.size();
    let d = shape.descent_set();
    let mut seq = Vec::with_capacity(n);
    let mut count: u128 = 0;
    fn rec(
        kind: Kind,
        n: usize,
        d: DescentSet,
        window: Window,
        exact: bool,
        seq: &mut Vec<i32>,
        count: &mut u128,
        visit: &mut dyn FnMut(&[i32]),
    ) -> Result<()> {
        let k = seq.len();
        if k == n {
            if kind == Kind::D && n >= 2 && !step_ok(d, 0, -seq[1], seq[0], exact) {
                return Ok(());
            }
            *count += 1;
            limits::guard("truncated evaluation terms", *count, limits::max_tableaux())?;
            visit(seq);
            return Ok(());
        }
        for v in window.lo..=window.hi {
            let ok = if k == 0 {
                match kind {
                    Kind::A => true,
                    Kind::B => step_ok(d, 0, 0, v, exact),
                    Kind::D => true,
                }
            } else {
                step_ok(d, k, seq[k - 1], v, exact)
            };
            if ok {
                seq.push(v);
                rec(kind, n, d, window, exact, seq, count, visit)?;
                seq.pop();
            }
        }
        Ok(())
    }
    rec(kind, n, d, window, exact, &mut seq, &mut count, visit)
}

/// Evaluates a QSym-side element in the commuting variables of `window`,
/// dropping terms of degree above `max_degree`. M and F are expanded from
/// their index-sequence definitions.
pub fn evaluate_commutative(elem: &SeriesElement, window: Window, max_degree: usize) -> Result<CommPoly> {
    let space = elem.space();
    if !space.is_quasi() {
        return Err(Error::Mismatch(format!("{space} is evaluated in noncommuting variables")));
    }
    window.check_for(space)?;
    let exact = elem.basis() == Basis::M;
    let mut out = CommPoly::zero(window);
    for (shape, c) in constant_coefficients(elem)? {
        if shape.size() > max_degree {
            continue;
        }
        index_sequences(space.kind(), &shape, window, exact, &mut |seq| out.add_indices(seq, c))?;
    }
    Ok(out)
}

/// Evaluates F-basis terms through their M-expansion, for comparison with
/// the direct definition.
pub fn evaluate_commutative_via_monomials(
    elem: &SeriesElement,
    window: Window,
    max_degree: usize,
) -> Result<CommPoly> {
    evaluate_commutative(&elem.convert(Basis::M)?, window, max_degree)
}

/// Enumerates words over the window whose descent set, with the type B/D
/// convention at position 0, equals (`exact`) or lies inside `D(α)`.
fn descent_words(
    kind: Kind,
    shape: &Composition,
    window: Window,
    exact: bool,
    visit: &mut dyn FnMut(&[i32]),
) -> Result<()> {
    let n = shape.size();
    let d = shape.descent_set();
    let mut word = Vec::with_capacity(n);
    let mut count: u128 = 0;
    let pos_ok = |j: usize, a: i32, b: i32| -> bool {
        let descent = a > b;
        if d.contains(j) {
            !exact || descent
        } else {
            !descent
        }
    };
    fn rec(
        kind: Kind,
        n: usize,
        window: Window,
        word: &mut Vec<i32>,
        count: &mut u128,
        pos_ok: &dyn Fn(usize, i32, i32) -> bool,
        visit: &mut dyn FnMut(&[i32]),
    ) -> Result<()> {
        let k = word.len();
        if k == n {
            if kind == Kind::D && n >= 2 && !pos_ok(0, -word[1], word[0]) {
                return Ok(());
            }
            *count += 1;
            limits::guard("truncated evaluation terms", *count, limits::max_tableaux())?;
            visit(word);
            return Ok(());
        }
        for v in window.lo..=window.hi {
            let ok = match k {
                0 => kind != Kind::B || pos_ok(0, 0, v),
                _ => pos_ok(k, word[k - 1], v),
            };
            if ok {
                word.push(v);
                rec(kind, n, window, word, count, pos_ok, visit)?;
                word.pop();
            }
        }
        Ok(())
    }
    rec(kind, n, window, &mut word, &mut count, &pos_ok, visit)
}

/// Evaluates an NSym-side element in noncommuting variables from the
/// descent description of words: `s_α` collects the words with descent set
/// `D(α)` and `h_α` those with descent set inside `D(α)`.
pub fn evaluate_noncommutative(elem: &SeriesElement, window: Window, max_degree: usize) -> Result<NCSeries> {
    let space = elem.space();
    if space.is_quasi() {
        return Err(Error::Mismatch(format!("{space} is evaluated in commuting variables")));
    }
    if space.kind().is_signed() {
        window.check_for(space)?;
    }
    let exact = elem.basis() == Basis::S;
    let mut out = NCSeries::zero(window, max_degree);
    for (shape, c) in constant_coefficients(elem)? {
        if shape.size() > max_degree {
            continue;
        }
        descent_words(space.kind(), &shape, window, exact, &mut |w| {
            add_entry(&mut out.terms, w.to_vec(), c)
        })?;
    }
    Ok(out)
}

/// `Σ x_{w(τ)}` over the semistandard tableaux of a generalized shape.
pub fn tableau_series(shape: &GeneralizedShape, window: Window, max_degree: usize) -> Result<NCSeries> {
    let mut out = NCSeries::zero(window, max_degree);
    if shape.size() > max_degree {
        return Ok(out);
    }
    let limit = limits::max_tableaux() as usize;
    for t in enumerate_semistandard(shape, window.lo..=window.hi, limit)? {
        add_entry(&mut out.terms, t.entries().to_vec(), 1);
    }
    Ok(out)
}

/// Evaluates an NSym-side element through tableau generating functions:
/// `s_α` from ribbon tableaux and `h_α` from tableaux of `α₁ ⊕ α₂ ⊕ ⋯`.
pub fn evaluate_noncommutative_tableaux(
    elem: &SeriesElement,
    window: Window,
    max_degree: usize,
) -> Result<NCSeries> {
    let space = elem.space();
    if space.is_quasi() {
        return Err(Error::Mismatch(format!("{space} is evaluated in commuting variables")));
    }
    let kind = space.kind();
    let mut out = NCSeries::zero(window, max_degree);
    for (shape, c) in constant_coefficients(elem)? {
        let g = match elem.basis() {
            Basis::S => GeneralizedShape::ribbon(kind, shape.clone())?,
            _ => GeneralizedShape::separated(kind, &shape)?,
        };
        out = out.add(&tableau_series(&g, window, max_degree)?.scale(c));
    }
    Ok(out)
}

/// Rank of the span of the evaluations of `elems`.
pub fn evaluation_rank(elems: &[SeriesElement], window: Window, max_degree: usize) -> Result<usize> {
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut index: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
    for e in elems {
        let entries: Vec<(Vec<i32>, i64)> = if e.space().is_quasi() {
            evaluate_commutative(e, window, max_degree)?
                .terms
                .into_iter()
                .map(|(k, v)| (k.into_iter().map(|x| x as i32).collect(), v))
                .collect()
        } else {
            evaluate_noncommutative(e, window, max_degree)?.terms.into_iter().collect()
        };
        let row = entries
            .into_iter()
            .map(|(k, v)| {
                let next = index.len();
                (*index.entry(k).or_insert(next), v)
            })
            .collect();
        rows.push(row);
    }
    Ok(linalg::rank(&rows, index.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::algebra::nsym_product;
    use crate::shape::enumerate_shapes;

    fn el(kind: Kind, text: &str) -> SeriesElement {
        SeriesElement::parse(kind, text).unwrap()
    }

    #[test]
    fn small_evaluations() {
        let w = Window::new(1, 2).unwrap();
        assert_eq!(evaluate_commutative(&el(Kind::A, "M[1,1]"), w, 2).unwrap().to_string(), "x1*x2");
        assert_eq!(
            evaluate_commutative(&el(Kind::A, "F[2]"), w, 2).unwrap().to_string(),
            "x1^2 + x1*x2 + x2^2"
        );
        let nc = evaluate_noncommutative(&el(Kind::A, "s[1,1]"), w, 2).unwrap();
        assert_eq!(nc.to_string(), "x2x1");
    }

    #[test]
    fn fundamental_expansions_agree() {
        for (kind, window) in [
            (Kind::A, Window::new(1, 3).unwrap()),
            (Kind::B, Window::new(0, 3).unwrap()),
            (Kind::D, Window::new(-3, 3).unwrap()),
        ] {
            for n in (if kind == Kind::D { 2 } else { 0 })..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let f = SeriesElement::basis_element(Space::of(kind, true), Basis::F, alpha.clone()).unwrap();
                    assert_eq!(
                        evaluate_commutative(&f, window, 5).unwrap(),
                        evaluate_commutative_via_monomials(&f, window, 5).unwrap(),
                        "{kind} {alpha:?}"
                    );
                    let s = SeriesElement::basis_element(Space::of(kind, false), Basis::S, alpha.clone()).unwrap();
                    let h = s.convert(Basis::H).unwrap();
                    let (w, t) = if kind.is_signed() { (Window::new(-2, 2).unwrap(), 4) } else { (window, 5) };
                    assert_eq!(
                        evaluate_noncommutative(&s, w, t).unwrap(),
                        evaluate_noncommutative_tableaux(&s, w, t).unwrap(),
                        "{kind} {alpha:?}"
                    );
                    assert_eq!(
                        evaluate_noncommutative(&h, w, t).unwrap(),
                        evaluate_noncommutative_tableaux(&h, w, t).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn products_in_truncation() {
        let w = Window::new(-2, 2).unwrap();
        let a = el(Kind::B, "s[0,1]");
        let b = el(Kind::A, "s[1]");
        let formal = nsym_product(&a, &b).unwrap();
        let ea = evaluate_noncommutative(&a, w, 2).unwrap();
        let eb = evaluate_noncommutative(&b, w, 2).unwrap();
        assert_eq!(ea.mul(&eb), evaluate_noncommutative(&formal, w, 2).unwrap());
    }

    #[test]
    fn independence() {
        let shapes: Vec<SeriesElement> = (0..=3)
            .flat_map(|n| enumerate_shapes(n, Kind::A))
            .map(|a| SeriesElement::basis_element(Space::NSym, Basis::S, a).unwrap())
            .collect();
        assert_eq!(evaluation_rank(&shapes, Window::new(1, 3).unwrap(), 3).unwrap(), shapes.len());
        assert!(Window::new(1, 3).unwrap().check_for(Space::QSymB).is_err());
    }
}
