//! The groups `S_n`, `Sᴮ_n` and `Sᴰ_n` as concrete (signed) permutations.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits;
use crate::shape::{Composition, DescentSet, Kind};

/// A (signed) permutation in one-line notation `w(1), …, w(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    kind: Kind,
    window: Vec<i32>,
}

/// Length statistics; `length` is assembled per type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthStats {
    pub inv: usize,
    pub neg: usize,
    pub nsp: usize,
    pub length: usize,
}

impl GroupElement {
    pub fn new(kind: Kind, window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Range(format!(
                    "{window:?} is not a signed permutation of {n}"
                )));
            }
            seen[a] = true;
            if kind == Kind::A && v < 0 {
                return Err(Error::Range(format!("{window:?} has a negative entry")));
            }
        }
        if kind == Kind::D {
            if n < 2 {
                return Err(Error::Range("type D needs n ≥ 2".into()));
            }
            if window.iter().filter(|&&v| v < 0).count() % 2 == 1 {
                return Err(Error::Range(format!(
                    "{window:?} has an odd number of negative entries"
                )));
            }
        }
        Ok(GroupElement { kind, window })
    }

    pub fn identity(kind: Kind, n: usize) -> Self {
        GroupElement {
            kind,
            window: (1..=n as i32).collect(),
        }
    }

    /// The Coxeter generator `s_i`.
    pub fn generator(kind: Kind, n: usize, i: usize) -> Result<Self> {
        if !kind.generators(n).contains(&i) {
            return Err(Error::Range(format!("no generator s_{i} in type {kind}{n}")));
        }
        let mut window: Vec<i32> = (1..=n as i32).collect();
        if i >= 1 {
            window.swap(i - 1, i);
        } else if kind == Kind::B {
            window[0] = -1;
        } else {
            window[0] = -2;
            window[1] = -1;
        }
        Ok(GroupElement { kind, window })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `w(i)` for `-n ≤ i ≤ n`, with `w(0) = 0` and `w(-i) = -w(i)`.
    pub fn value(&self, i: i32) -> i32 {
        match i.cmp(&0) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => self.window[i as usize - 1],
            std::cmp::Ordering::Less => -self.window[(-i) as usize - 1],
        }
    }

    fn check_compatible(&self, other: &GroupElement) -> Result<()> {
        if self.kind != other.kind || self.n() != other.n() {
            return Err(Error::Mismatch(format!(
                "cannot compose {}{} with {}{}",
                self.kind,
                self.n(),
                other.kind,
                other.n()
            )));
        }
        Ok(())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn multiply(&self, other: &GroupElement) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(GroupElement {
            kind: self.kind,
            window: other.window.iter().map(|&v| self.value(v)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut window = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            if v > 0 {
                window[v as usize - 1] = pos;
            } else {
                window[(-v) as usize - 1] = -pos;
            }
        }
        GroupElement {
            kind: self.kind,
            window,
        }
    }

    /// The descent set read off the window, with `w(0) = 0` in type B and
    /// `w(0) = -w(2)` in type D.
    pub fn descents(&self) -> DescentSet {
        descents_of_word(self.kind, &self.window)
    }

    pub fn length_stats(&self) -> LengthStats {
        let w = &self.window;
        let n = w.len();
        let mut inv = 0;
        let mut nsp = 0;
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] {
                    inv += 1;
                }
                if w[i] + w[j] < 0 {
                    nsp += 1;
                }
            }
        }
        let neg = w.iter().filter(|&&v| v < 0).count();
        let length = match self.kind {
            Kind::A => inv,
            Kind::B => inv + neg + nsp,
            Kind::D => inv + nsp,
        };
        LengthStats {
            inv,
            neg,
            nsp,
            length,
        }
    }

    pub fn length(&self) -> usize {
        self.length_stats().length
    }

    pub fn parse(kind: Kind, text: &str) -> Result<Self> {
        let window = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad entry `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupElement::new(kind, window)
    }
}

/// Descent set of an integer word with the type's convention for position 0.
pub fn descents_of_word(kind: Kind, word: &[i32]) -> DescentSet {
    let mut d = DescentSet::EMPTY;
    for i in 1..word.len() {
        if word[i - 1] > word[i] {
            d = d.with(i);
        }
    }
    match kind {
        Kind::A => {}
        Kind::B => {
            if !word.is_empty() && word[0] < 0 {
                d = d.with(0);
            }
        }
        Kind::D => {
            if word.len() >= 2 && -word[1] > word[0] {
                d = d.with(0);
            }
        }
    }
    d
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window.iter().join(","))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self)
    }
}

/// Order of the group of type `kind` and rank `n`.
pub fn group_order(kind: Kind, n: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    match kind {
        Kind::A => fact,
        Kind::B => fact << n,
        Kind::D => {
            if n == 0 {
                1
            } else {
                fact << (n - 1)
            }
        }
    }
}

/// Every element exactly once: permutations in lexicographic order, each
/// followed by its sign patterns.
pub fn enumerate_group(kind: Kind, n: usize) -> Result<Vec<GroupElement>> {
    if n < kind.min_rank() && !(kind == Kind::A && n == 0) {
        return Err(Error::Range(format!("type {kind} needs rank ≥ {}", kind.min_rank())));
    }
    limits::guard_group(&format!("group {kind}{n}"), group_order(kind, n))?;
    let mut out = Vec::with_capacity(group_order(kind, n) as usize);
    for perm in (1..=n as i32).permutations(n) {
        if kind == Kind::A {
            out.push(GroupElement { kind, window: perm });
            continue;
        }
        for signs in 0u32..(1 << n) {
            if kind == Kind::D && signs.count_ones() % 2 == 1 {
                continue;
            }
            let window = perm
                .iter()
                .enumerate()
                .map(|(i, &v)| if signs >> i & 1 == 1 { -v } else { v })
                .collect();
            out.push(GroupElement { kind, window });
        }
    }
    Ok(out)
}

/// All elements with a prescribed descent set, with the length extremes.
#[derive(Clone, Debug)]
pub struct DescentClass {
    pub kind: Kind,
    pub shape: Composition,
    pub elements: Vec<GroupElement>,
    pub min: GroupElement,
    pub max: GroupElement,
}

fn check_shape_kind(kind: Kind, shape: &Composition) -> Result<()> {
    if shape.is_pseudo() != kind.is_signed() {
        return Err(Error::Mismatch(format!("{shape:?} is not a type {kind} shape")));
    }
    Ok(())
}

pub fn descent_class(kind: Kind, shape: &Composition) -> Result<DescentClass> {
    check_shape_kind(kind, shape)?;
    let target = shape.descent_set();
    let elements: Vec<GroupElement> = enumerate_group(kind, shape.size())?
        .into_iter()
        .filter(|w| w.descents() == target)
        .collect();
    let min = unique_extreme(&elements, false)?;
    let max = unique_extreme(&elements, true)?;
    Ok(DescentClass {
        kind,
        shape: shape.clone(),
        elements,
        min,
        max,
    })
}

fn unique_extreme(elements: &[GroupElement], largest: bool) -> Result<GroupElement> {
    let lengths: Vec<usize> = elements.iter().map(GroupElement::length).collect();
    let best = if largest {
        lengths.iter().max()
    } else {
        lengths.iter().min()
    }
    .copied()
    .ok_or_else(|| Error::Invariant("empty descent class".into()))?;
    let hits: Vec<&GroupElement> = elements
        .iter()
        .zip(&lengths)
        .filter(|(_, &l)| l == best)
        .map(|(w, _)| w)
        .collect();
    if hits.len() != 1 {
        return Err(Error::Invariant(format!(
            "descent class has {} elements of extreme length {best}",
            hits.len()
        )));
    }
    Ok(hits[0].clone())
}

/// All `w` with `D(w) ⊆ D(α)`.
pub fn min_coset_reps(kind: Kind, shape: &Composition) -> Result<Vec<GroupElement>> {
    check_shape_kind(kind, shape)?;
    let target = shape.descent_set();
    Ok(enumerate_group(kind, shape.size())?
        .into_iter()
        .filter(|w| w.descents().is_subset(target))
        .collect())
}

/// The longest element.
pub fn longest_element(kind: Kind, n: usize) -> Result<GroupElement> {
    let full = Composition::from_descents(kind.descent_domain(n), n, kind.is_signed())?;
    Ok(descent_class(kind, &full)?.min)
}

/// The diagram automorphism `s_i ↦ w₀ s_i w₀`, as a map on generator indices.
pub fn diagram_automorphism(kind: Kind, n: usize) -> Result<Vec<(usize, usize)>> {
    let w0 = longest_element(kind, n)?;
    let gens: Vec<(usize, GroupElement)> = kind
        .generators(n)
        .into_iter()
        .map(|i| (i, GroupElement::generator(kind, n, i).unwrap()))
        .collect();
    let mut out = Vec::new();
    for (i, s) in &gens {
        let conj = w0.multiply(s)?.multiply(&w0)?;
        let j = gens
            .iter()
            .find(|(_, t)| *t == conj)
            .map(|(j, _)| *j)
            .ok_or_else(|| Error::Invariant(format!("w0 s_{i} w0 is not a generator")))?;
        out.push((*i, j));
    }
    Ok(out)
}

/// A reduced word `i_1 ⋯ i_k` with `w = s_{i_1} ⋯ s_{i_k}` (type A).
pub fn reduced_word(w: &GroupElement) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = w.window.clone();
    // peel right descents: w = (w s_i) s_i
    loop {
        let Some(i) = (1..cur.len()).find(|&i| cur[i - 1] > cur[i]) else {
            break;
        };
        cur.swap(i - 1, i);
        word.push(i);
    }
    word.reverse();
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(kind: Kind, w: &[i32]) -> GroupElement {
        GroupElement::new(kind, w.to_vec()).unwrap()
    }

    #[test]
    fn products() {
        let p = g(Kind::A, &[2, 3, 1]).multiply(&g(Kind::A, &[3, 1, 2])).unwrap();
        assert_eq!(p, GroupElement::identity(Kind::A, 3));
        let s0 = GroupElement::generator(Kind::B, 3, 0).unwrap();
        assert_eq!(s0.multiply(&s0).unwrap(), GroupElement::identity(Kind::B, 3));
        let s0 = GroupElement::generator(Kind::D, 2, 0).unwrap();
        let s1 = GroupElement::generator(Kind::D, 2, 1).unwrap();
        assert_eq!(s0.window(), &[-2, -1]);
        assert_eq!(s0.multiply(&s1).unwrap().window(), &[-1, -2]);
        assert!(s0.multiply(&GroupElement::identity(Kind::D, 3)).is_err());
    }

    #[test]
    fn descents_and_lengths() {
        assert_eq!(g(Kind::A, &[3, 2, 1]).descents(), [1, 2].into_iter().collect());
        assert_eq!(g(Kind::B, &[-2, -1]).descents(), [0].into_iter().collect());
        assert_eq!(g(Kind::D, &[-2, -1, 3]).descents(), [0].into_iter().collect());
        let st = g(Kind::A, &[3, 2, 1]).length_stats();
        assert_eq!((st.inv, st.length), (3, 3));
        let st = GroupElement::identity(Kind::B, 4).length_stats();
        assert_eq!((st.inv, st.neg, st.nsp, st.length), (0, 0, 0, 0));
        let st = GroupElement::generator(Kind::B, 4, 0).unwrap().length_stats();
        assert_eq!((st.inv, st.neg, st.nsp, st.length), (0, 1, 0, 1));
        assert_eq!(GroupElement::generator(Kind::D, 4, 0).unwrap().length(), 1);
    }

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate_group(Kind::A, 3).unwrap().len(), 6);
        assert_eq!(enumerate_group(Kind::B, 2).unwrap().len(), 8);
        assert_eq!(enumerate_group(Kind::D, 3).unwrap().len(), 24);
        assert!(enumerate_group(Kind::D, 1).is_err());
    }

    #[test]
    fn classes() {
        let c21 = Composition::new(vec![2, 1]).unwrap();
        let class = descent_class(Kind::A, &c21).unwrap();
        let words: Vec<String> = class.elements.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["1,3,2", "2,3,1"]);
        let col = Composition::new(vec![1, 1, 1, 1]).unwrap();
        let class = descent_class(Kind::A, &col).unwrap();
        assert_eq!(class.elements.len(), 1);
        assert_eq!(class.min.length(), 6);
        assert_eq!(min_coset_reps(Kind::A, &c21).unwrap().len(), 3);
        let row = Composition::new(vec![4]).unwrap();
        assert_eq!(min_coset_reps(Kind::A, &row).unwrap(), vec![GroupElement::identity(Kind::A, 4)]);
        let row = Composition::pseudo(vec![3]).unwrap();
        assert_eq!(min_coset_reps(Kind::B, &row).unwrap(), vec![GroupElement::identity(Kind::B, 3)]);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(diagram_automorphism(Kind::A, 4).unwrap(), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(
            diagram_automorphism(Kind::B, 3).unwrap(),
            vec![(0, 0), (1, 1), (2, 2)]
        );
        assert_eq!(
            diagram_automorphism(Kind::D, 3).unwrap(),
            vec![(0, 1), (1, 0), (2, 2)]
        );
        assert_eq!(
            diagram_automorphism(Kind::D, 4).unwrap(),
            vec![(0, 0), (1, 1), (2, 2), (3, 3)]
        );
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in enumerate_group(Kind::A, 4).unwrap() {
            let word = reduced_word(&w);
            assert_eq!(word.len(), w.length());
            let mut acc = GroupElement::identity(Kind::A, 4);
            for &i in &word {
                acc = acc.multiply(&GroupElement::generator(Kind::A, 4, i).unwrap()).unwrap();
            }
            assert_eq!(acc, w);
        }
    }
}
