//! Compositions, pseudo-compositions and (generalized) ribbon diagrams.
//!
//! A composition is stored by its parts. Rows of the ribbon diagram are
//! numbered bottom to top and the reading order runs along the ribbon from
//! its south-west end to its north-east end. For types B and D the first
//! component carries an extra 0-box at its south-west corner.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coxeter type tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    D,
}

impl Kind {
    pub fn is_signed(self) -> bool {
        self != Kind::A
    }

    /// Generator indices of the rank-`n` 0-Hecke algebra.
    pub fn generators(self, n: usize) -> Vec<usize> {
        match self {
            Kind::A => (1..n).collect(),
            Kind::B | Kind::D => (0..n).collect(),
        }
    }

    /// Positions a descent set may contain at size `n`.
    pub fn descent_domain(self, n: usize) -> DescentSet {
        match self {
            Kind::A => DescentSet::range(1, n),
            Kind::B | Kind::D => DescentSet::range(0, n),
        }
    }

    /// Order of `s_i s_j` in the Coxeter group.
    pub fn coxeter_order(self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let (a, b) = (i.min(j), i.max(j));
        match self {
            Kind::A => {
                if b == a + 1 {
                    3
                } else {
                    2
                }
            }
            Kind::B => {
                if (a, b) == (0, 1) {
                    4
                } else if a >= 1 && b == a + 1 {
                    3
                } else {
                    2
                }
            }
            Kind::D => {
                if (a, b) == (0, 1) {
                    2
                } else if (a == 0 && b == 2) || (a >= 1 && b == a + 1) {
                    3
                } else {
                    2
                }
            }
        }
    }

    /// Smallest rank for which the group is defined.
    pub fn min_rank(self) -> usize {
        match self {
            Kind::A | Kind::B => 1,
            Kind::D => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::D => "D",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "B" | "b" => Ok(Kind::B),
            "D" | "d" => Ok(Kind::D),
            other => Err(Error::Parse(format!("unknown type `{other}`"))),
        }
    }
}

/// A finite set of nonnegative positions below 64, stored as a bitmask.
///
/// The ordering compares characteristic vectors starting from position 0,
/// so for fixed size the shapes `(3), (2,1), (1,2), (1,1,1)` come out in
/// that order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DescentSet(u64);

impl DescentSet {
    pub const EMPTY: DescentSet = DescentSet(0);

    pub fn from_bits(bits: u64) -> Self {
        DescentSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The positions `lo..hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        let mut bits = 0u64;
        for i in lo..hi {
            bits |= 1 << i;
        }
        DescentSet(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        DescentSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        DescentSet(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: DescentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: DescentSet) -> Self {
        DescentSet(self.0 | other.0)
    }

    pub fn intersection(self, other: DescentSet) -> Self {
        DescentSet(self.0 & other.0)
    }

    pub fn difference(self, other: DescentSet) -> Self {
        DescentSet(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// `{d - k : d ∈ self, d > k}`.
    pub fn shift_down(self, k: usize) -> Self {
        if k >= 63 {
            return DescentSet::EMPTY;
        }
        DescentSet((self.0 >> k) & !1)
    }

    /// `{d + k : d ∈ self}`.
    pub fn shift_up(self, k: usize) -> Self {
        DescentSet(self.0 << k)
    }

    /// All subsets, in increasing order of the underlying bitmask.
    pub fn subsets(self) -> Vec<DescentSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(DescentSet(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out
    }
}

impl Ord for DescentSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for DescentSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for DescentSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for i in iter {
            bits |= 1 << i;
        }
        DescentSet(bits)
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A composition (type A) or a pseudo-composition (types B and D).
///
/// Pseudo-compositions have a first part that may be zero; their descent
/// sets live in `{0, …, n-1}` instead of `{1, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    pseudo: bool,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Range(format!(
                "composition parts must be positive: {parts:?}"
            )));
        }
        Ok(Composition {
            parts,
            pseudo: false,
        })
    }

    pub fn pseudo(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Range(
                "a pseudo-composition has at least one part".into(),
            ));
        }
        if parts[1..].iter().any(|&p| p == 0) {
            return Err(Error::Range(format!(
                "only the first part of a pseudo-composition may vanish: {parts:?}"
            )));
        }
        Ok(Composition {
            parts,
            pseudo: true,
        })
    }

    /// Builds a composition of the flavour used by `kind`.
    pub fn of_kind(kind: Kind, parts: Vec<usize>) -> Result<Self> {
        if kind.is_signed() {
            Composition::pseudo(parts)
        } else {
            Composition::new(parts)
        }
    }

    /// The empty composition `()`.
    pub fn empty() -> Self {
        Composition {
            parts: Vec::new(),
            pseudo: false,
        }
    }

    /// The pseudo-composition `(0)`, a lone 0-box.
    pub fn pseudo_zero() -> Self {
        Composition {
            parts: vec![0],
            pseudo: true,
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn is_pseudo(&self) -> bool {
        self.pseudo
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Descent domain: `[n-1]` or `{0, …, n-1}`.
    pub fn domain(&self) -> DescentSet {
        if self.pseudo {
            DescentSet::range(0, self.size())
        } else {
            DescentSet::range(1, self.size())
        }
    }

    /// Partial sums `α1, α1+α2, …` omitting the total.
    pub fn descent_set(&self) -> DescentSet {
        let mut acc = 0;
        let mut set = DescentSet::EMPTY;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            set = set.with(acc);
        }
        set
    }

    /// Inverse of [`Composition::descent_set`].
    pub fn from_descents(descents: DescentSet, n: usize, pseudo: bool) -> Result<Self> {
        let domain = if pseudo {
            DescentSet::range(0, n)
        } else {
            DescentSet::range(1, n)
        };
        if !descents.is_subset(domain) {
            return Err(Error::Range(format!(
                "descent set {descents} does not fit a{} composition of {n}",
                if pseudo { " pseudo-" } else { "" }
            )));
        }
        if n == 0 {
            return Ok(if pseudo {
                Composition::pseudo_zero()
            } else {
                Composition::empty()
            });
        }
        let mut parts = Vec::new();
        let mut prev = 0;
        for d in descents.iter() {
            parts.push(d - prev);
            prev = d;
        }
        parts.push(n - prev);
        Ok(Composition { parts, pseudo })
    }

    fn rebuild(&self, descents: DescentSet) -> Self {
        Composition::from_descents(descents, self.size(), self.pseudo)
            .expect("descent set stays inside the domain")
    }

    /// The composition whose descent set is the complement of `D(α)`.
    pub fn complement(&self) -> Self {
        self.rebuild(self.domain().difference(self.descent_set()))
    }

    fn require_plain(&self, what: &str) -> Result<()> {
        if self.pseudo {
            return Err(Error::Mismatch(format!(
                "{what} is only defined for type A compositions"
            )));
        }
        Ok(())
    }

    pub fn reverse(&self) -> Result<Self> {
        self.require_plain("reverse")?;
        let mut parts = self.parts.clone();
        parts.reverse();
        Ok(Composition {
            parts,
            pseudo: false,
        })
    }

    /// `rev(αᶜ)`, the diagonal reflection of the ribbon.
    pub fn transpose(&self) -> Result<Self> {
        self.complement().reverse()
    }

    /// Refinement order: `self ⪯ other` iff `D(self) ⊆ D(other)`.
    pub fn precedes(&self, other: &Composition) -> bool {
        self.pseudo == other.pseudo
            && self.size() == other.size()
            && self.descent_set().is_subset(other.descent_set())
    }

    /// All `β` with `β ⪯ self`.
    pub fn coarsenings(&self) -> Vec<Composition> {
        let mut out: Vec<_> = self
            .descent_set()
            .subsets()
            .into_iter()
            .map(|d| self.rebuild(d))
            .collect();
        out.sort();
        out
    }

    /// All `β` with `self ⪯ β`.
    pub fn refinements(&self) -> Vec<Composition> {
        let d = self.descent_set();
        let mut out: Vec<_> = self
            .domain()
            .difference(d)
            .subsets()
            .into_iter()
            .map(|extra| self.rebuild(d.union(extra)))
            .collect();
        out.sort();
        out
    }

    /// Concatenation `α·β`; `β` must be a type A composition.
    pub fn concat(&self, other: &Composition) -> Result<Self> {
        other.require_plain("the right factor of a gluing")?;
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Ok(Composition {
            parts,
            pseudo: self.pseudo,
        })
    }

    /// Near-concatenation `α▷β` (merges the last part of `α` with `β1`).
    ///
    /// An empty factor acts as a unit.
    pub fn near_concat(&self, other: &Composition) -> Result<Self> {
        other.require_plain("the right factor of a gluing")?;
        if other.parts.is_empty() {
            return Ok(self.clone());
        }
        if self.parts.is_empty() {
            return Ok(other.clone());
        }
        let mut parts = self.parts.clone();
        *parts.last_mut().unwrap() += other.parts[0];
        parts.extend_from_slice(&other.parts[1..]);
        Ok(Composition {
            parts,
            pseudo: self.pseudo,
        })
    }

    /// Cuts the ribbon between its `i`-th and `(i+1)`-th boxes. For a
    /// pseudo-composition the cut leaves the 0-box on the left.
    pub fn cut(&self, i: usize) -> Result<(Composition, Composition)> {
        let n = self.size();
        if i > n {
            return Err(Error::Range(format!("cut position {i} exceeds size {n}")));
        }
        let d = self.descent_set();
        let left = Composition::from_descents(d.intersection(DescentSet::range(0, i)), i, self.pseudo)?;
        let right = Composition::from_descents(d.shift_down(i), n - i, false)?;
        Ok((left, right))
    }

    pub fn parse(text: &str, pseudo: bool) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
            .ok_or_else(|| Error::Parse(format!("expected `[a,b,...]`, got `{t}`")))?;
        let mut parts = Vec::new();
        if !inner.trim().is_empty() {
            for piece in inner.split(',') {
                let p = piece
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part `{}` in `{t}`", piece.trim())))?;
                parts.push(p);
            }
        }
        if pseudo {
            Composition::pseudo(parts)
        } else {
            Composition::new(parts)
        }
    }

    /// Compact label such as `2312`, used when all parts are single digits.
    pub fn compact(&self) -> String {
        if self.parts.iter().all(|&p| p < 10) {
            self.parts.iter().map(|p| p.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pseudo
            .cmp(&other.pseudo)
            .then(self.size().cmp(&other.size()))
            .then(self.descent_set().cmp(&other.descent_set()))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pseudo {
            write!(f, "p{self}")
        } else {
            write!(f, "{self}")
        }
    }
}

/// All compositions (kind A) or pseudo-compositions (kinds B, D) of `n`,
/// ordered by descent set.
pub fn enumerate_shapes(n: usize, kind: Kind) -> Vec<Composition> {
    let domain = kind.descent_domain(n);
    let mut sets = domain.subsets();
    sets.sort();
    sets.into_iter()
        .map(|d| Composition::from_descents(d, n, kind.is_signed()).unwrap())
        .collect()
}

/// Relation between two consecutive boxes in reading order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// The next box is to the right, in the same row.
    Horizontal,
    /// The next box is directly above.
    Vertical,
    /// The next box starts a new connected component.
    Junction,
}

/// Box coordinates of a generalized ribbon; `(row, col)` with rows counted
/// upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    /// Boxes `1..=n` in reading order.
    pub cells: Vec<(i32, i32)>,
    /// The extra 0-box of a pseudo-ribbon.
    pub zero_box: Option<(i32, i32)>,
    /// `steps[p]` relates box `p` to box `p+1`; box 0 is the 0-box. For
    /// type A `steps[0]` is a placeholder junction.
    pub steps: Vec<Step>,
}

impl Diagram {
    /// Rows from bottom to top, each listing box indices (0 for the 0-box,
    /// otherwise the 1-based reading position) left to right.
    pub fn rows(&self) -> Vec<(i32, Vec<usize>)> {
        let mut rows: std::collections::BTreeMap<i32, Vec<(i32, usize)>> = Default::default();
        if let Some((r, c)) = self.zero_box {
            rows.entry(r).or_default().push((c, 0));
        }
        for (k, &(r, c)) in self.cells.iter().enumerate() {
            rows.entry(r).or_default().push((c, k + 1));
        }
        rows.into_iter()
            .map(|(r, mut v)| {
                v.sort();
                (r, v.into_iter().map(|(_, k)| k).collect())
            })
            .collect()
    }
}

/// A disjoint union `α¹ ⊕ ⋯ ⊕ αᵏ` of ribbons, each strictly north-east of
/// the previous one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedShape {
    kind: Kind,
    components: Vec<Composition>,
}

/// Side of a box in a decomposition `α = β ⊔ γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Beta,
    Gamma,
}

/// A monotone two-colouring of the boxes of a shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub beta: GeneralizedShape,
    pub gamma: GeneralizedShape,
    /// Label of boxes `1..=n` in reading order.
    pub assignment: Vec<Part>,
}

impl GeneralizedShape {
    pub fn new(kind: Kind, components: Vec<Composition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Range("a shape needs at least one component".into()));
        }
        if kind.is_signed() {
            if !components[0].is_pseudo() {
                return Err(Error::Mismatch(format!(
                    "type {kind} shapes start with a pseudo-composition"
                )));
            }
        } else if components[0].is_pseudo() {
            return Err(Error::Mismatch(
                "type A shapes consist of compositions".into(),
            ));
        }
        for c in &components[1..] {
            if c.is_pseudo() {
                return Err(Error::Mismatch(
                    "only the first component may be a pseudo-composition".into(),
                ));
            }
        }
        let nonempty_from = if kind.is_signed() { 1 } else { 0 };
        if components.len() > 1 && components[nonempty_from..].iter().any(|c| c.size() == 0) {
            return Err(Error::Range("components must be nonempty".into()));
        }
        let shape = GeneralizedShape { kind, components };
        if kind == Kind::D && shape.size() < 2 {
            return Err(Error::Range(format!(
                "type D shapes have size at least 2, got {}",
                shape.size()
            )));
        }
        Ok(shape)
    }

    /// A connected (pseudo-)ribbon.
    pub fn ribbon(kind: Kind, comp: Composition) -> Result<Self> {
        GeneralizedShape::new(kind, vec![comp])
    }

    /// The empty type A shape.
    pub fn empty() -> Self {
        GeneralizedShape {
            kind: Kind::A,
            components: vec![Composition::empty()],
        }
    }

    /// `α1 ⊕ α2 ⊕ ⋯`: the rows of `α` pulled apart.
    pub fn separated(kind: Kind, comp: &Composition) -> Result<Self> {
        if comp.is_pseudo() != kind.is_signed() {
            return Err(Error::Mismatch(format!("{comp:?} is not a type {kind} shape")));
        }
        if comp.parts().is_empty() {
            return GeneralizedShape::ribbon(kind, comp.clone());
        }
        let mut comps = Vec::new();
        for (k, &p) in comp.parts().iter().enumerate() {
            comps.push(if k == 0 && kind.is_signed() {
                Composition::pseudo(vec![p])?
            } else {
                Composition::new(vec![p])?
            });
        }
        GeneralizedShape::new(kind, comps)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn components(&self) -> &[Composition] {
        &self.components
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Composition::size).sum()
    }

    pub fn is_ribbon(&self) -> bool {
        self.components.len() == 1
    }

    pub fn as_ribbon(&self) -> Option<&Composition> {
        if self.is_ribbon() {
            Some(&self.components[0])
        } else {
            None
        }
    }

    /// `α¹ ▷ ⋯ ▷ αᵏ`.
    pub fn lower(&self) -> Composition {
        let mut acc = self.components[0].clone();
        for c in &self.components[1..] {
            acc = acc.near_concat(c).unwrap();
        }
        acc
    }

    /// `α¹ · ⋯ · αᵏ`.
    pub fn upper(&self) -> Composition {
        let mut acc = self.components[0].clone();
        for c in &self.components[1..] {
            acc = acc.concat(c).unwrap();
        }
        acc
    }

    /// The admissible band `(D(α¹▷⋯▷αᵏ), D(α¹·⋯·αᵏ))`.
    pub fn band(&self) -> (DescentSet, DescentSet) {
        (self.lower().descent_set(), self.upper().descent_set())
    }

    /// The bracket set `[α]`, sorted.
    pub fn bracket(&self) -> Vec<Composition> {
        let (lo, hi) = self.band();
        let upper = self.upper();
        let mut out: Vec<_> = hi
            .difference(lo)
            .subsets()
            .into_iter()
            .map(|extra| {
                Composition::from_descents(lo.union(extra), upper.size(), upper.is_pseudo())
                    .unwrap()
            })
            .collect();
        out.sort();
        out
    }

    /// `α ⊕ β`.
    pub fn direct_sum(&self, other: &GeneralizedShape) -> Result<Self> {
        if other.kind != Kind::A {
            return Err(Error::Mismatch("right summand must be type A".into()));
        }
        if other.size() == 0 {
            return Ok(self.clone());
        }
        if self.size() == 0 && !self.kind.is_signed() {
            return Ok(other.clone());
        }
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        GeneralizedShape::new(self.kind, comps)
    }

    fn glue_with(&self, other: &GeneralizedShape, near: bool) -> Result<Self> {
        if other.kind != Kind::A {
            return Err(Error::Mismatch("right factor must be type A".into()));
        }
        if other.size() == 0 {
            return Ok(self.clone());
        }
        if self.size() == 0 && !self.kind.is_signed() {
            return Ok(other.clone());
        }
        let mut comps = self.components.clone();
        let last = comps.pop().unwrap();
        let first = &other.components[0];
        comps.push(if near {
            last.near_concat(first)?
        } else {
            last.concat(first)?
        });
        comps.extend(other.components[1..].iter().cloned());
        GeneralizedShape::new(self.kind, comps)
    }

    /// `α · β`: glues the last component of `α` on top of the first of `β`.
    pub fn concat(&self, other: &GeneralizedShape) -> Result<Self> {
        self.glue_with(other, false)
    }

    /// `α ▷ β`: merges the last row of `α` with the first row of `β`.
    pub fn near_concat(&self, other: &GeneralizedShape) -> Result<Self> {
        self.glue_with(other, true)
    }

    pub fn diagram(&self) -> Diagram {
        let mut boxes: Vec<((i32, i32), Step)> = Vec::with_capacity(self.size() + 1);
        for comp in &self.components {
            let mut lengths = comp.parts().to_vec();
            if comp.is_pseudo() {
                lengths[0] += 1;
            }
            let mut pos = match boxes.last() {
                None => (0, 0),
                Some(&((r, c), _)) => (r + 1, c + 1),
            };
            let mut first = true;
            for &len in &lengths {
                for b in 0..len {
                    let step = if first {
                        Step::Junction
                    } else if b == 0 {
                        pos = (pos.0 + 1, pos.1);
                        Step::Vertical
                    } else {
                        pos = (pos.0, pos.1 + 1);
                        Step::Horizontal
                    };
                    first = false;
                    boxes.push((pos, step));
                }
            }
        }
        if self.kind.is_signed() {
            let zero_box = Some(boxes[0].0);
            let steps = boxes[1..].iter().map(|b| b.1).collect();
            let cells = boxes[1..].iter().map(|b| b.0).collect();
            Diagram {
                cells,
                zero_box,
                steps,
            }
        } else {
            let mut steps = vec![Step::Junction];
            steps.extend(boxes.iter().skip(1).map(|b| b.1));
            steps.truncate(boxes.len());
            Diagram {
                cells: boxes.iter().map(|b| b.0).collect(),
                zero_box: None,
                steps,
            }
        }
    }

    /// All monotone `β/γ` fillings. The 0-box of a pseudo-shape always
    /// belongs to `β`; in type D fillings leaving `β` below size 2 are
    /// discarded.
    pub fn decompositions(&self) -> Vec<Decomposition> {
        let diagram = self.diagram();
        let n = self.size();
        let signed = self.kind.is_signed();
        let mut out = Vec::new();
        let mut labels = Vec::with_capacity(n);
        fill_monotone(&diagram.steps, signed, n, &mut labels, &mut |labels| {
            let beta = self.sub_shape(&diagram.steps, labels, Part::Beta);
            let gamma = self.sub_shape(&diagram.steps, labels, Part::Gamma);
            if let (Some(beta), Some(gamma)) = (beta, gamma) {
                out.push(Decomposition {
                    beta,
                    gamma,
                    assignment: labels.to_vec(),
                });
            }
        });
        out
    }

    /// The sub-diagram formed by the boxes carrying `side`.
    pub(crate) fn sub_shape(
        &self,
        steps: &[Step],
        labels: &[Part],
        side: Part,
    ) -> Option<GeneralizedShape> {
        let signed = self.kind.is_signed() && side == Part::Beta;
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut open = false;
        if signed {
            components.push(vec![1]);
            open = true;
        }
        for (p, &label) in labels.iter().enumerate() {
            let pos = p + 1;
            if label != side {
                open = false;
                continue;
            }
            let step = steps[pos - 1];
            if open && step != Step::Junction {
                let comp = components.last_mut().unwrap();
                match step {
                    Step::Horizontal => *comp.last_mut().unwrap() += 1,
                    Step::Vertical => comp.push(1),
                    Step::Junction => unreachable!(),
                }
            } else {
                components.push(vec![1]);
            }
            open = true;
        }
        let kind = if signed { self.kind } else { Kind::A };
        if components.is_empty() {
            return Some(GeneralizedShape::empty());
        }
        let comps: Vec<Composition> = components
            .into_iter()
            .enumerate()
            .map(|(k, mut parts)| {
                if k == 0 && signed {
                    parts[0] -= 1;
                    Composition::pseudo(parts).unwrap()
                } else {
                    Composition::new(parts).unwrap()
                }
            })
            .collect();
        GeneralizedShape::new(kind, comps).ok()
    }

    pub fn parse(kind: Kind, text: &str) -> Result<Self> {
        let mut comps = Vec::new();
        for (k, piece) in text.split('+').enumerate() {
            comps.push(Composition::parse(piece, k == 0 && kind.is_signed())?);
        }
        GeneralizedShape::new(kind, comps)
    }
}

fn fill_monotone(
    steps: &[Step],
    signed: bool,
    n: usize,
    labels: &mut Vec<Part>,
    visit: &mut dyn FnMut(&[Part]),
) {
    let p = labels.len();
    if p == n {
        visit(labels);
        return;
    }
    let prev = if p == 0 {
        if signed {
            Some(Part::Beta)
        } else {
            None
        }
    } else {
        Some(labels[p - 1])
    };
    for cand in [Part::Beta, Part::Gamma] {
        let ok = match (prev, steps[p]) {
            (None, _) | (_, Step::Junction) => true,
            (Some(prev), Step::Horizontal) => prev <= cand,
            (Some(prev), Step::Vertical) => cand <= prev,
        };
        if ok {
            labels.push(cand);
            fill_monotone(steps, signed, n, labels, visit);
            labels.pop();
        }
    }
}

impl fmt::Display for GeneralizedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GeneralizedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self)
    }
}

/// All generalized shapes of `kind` and size `n` with at most
/// `max_components` components.
pub fn enumerate_generalized(kind: Kind, n: usize, max_components: usize) -> Vec<GeneralizedShape> {
    let mut out = Vec::new();
    let first_sizes: Vec<usize> = if kind.is_signed() {
        (0..=n).collect()
    } else {
        (1..=n).collect()
    };
    if n == 0 && !kind.is_signed() {
        return vec![GeneralizedShape::empty()];
    }
    for first in first_sizes {
        let heads = enumerate_shapes(first, kind);
        let mut tails = Vec::new();
        compositions_into_components(n - first, max_components - 1, &mut Vec::new(), &mut tails);
        for head in &heads {
            for tail in &tails {
                let mut comps = vec![head.clone()];
                comps.extend(tail.iter().cloned());
                if let Ok(shape) = GeneralizedShape::new(kind, comps) {
                    out.push(shape);
                }
            }
        }
    }
    out.sort();
    out
}

fn compositions_into_components(
    n: usize,
    slots: usize,
    current: &mut Vec<Composition>,
    out: &mut Vec<Vec<Composition>>,
) {
    if n == 0 {
        out.push(current.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for size in 1..=n {
        for comp in enumerate_shapes(size, Kind::A) {
            current.push(comp);
            compositions_into_components(n - size, slots - 1, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn pc(p: &[usize]) -> Composition {
        Composition::pseudo(p.to_vec()).unwrap()
    }

    #[test]
    fn descent_sets_and_inverse() {
        assert_eq!(c(&[2, 3, 1, 1]).descent_set(), [2, 5, 6].into_iter().collect());
        assert!(c(&[5]).descent_set().is_empty());
        assert_eq!(pc(&[0, 2, 1]).descent_set(), [0, 2].into_iter().collect());
        let d: DescentSet = [2, 5, 6].into_iter().collect();
        assert_eq!(Composition::from_descents(d, 7, false).unwrap(), c(&[2, 3, 1, 1]));
        assert_eq!(
            Composition::from_descents(DescentSet::EMPTY, 5, false).unwrap(),
            c(&[5])
        );
        let d: DescentSet = [0, 2].into_iter().collect();
        assert_eq!(Composition::from_descents(d, 3, true).unwrap(), pc(&[0, 2, 1]));
        assert!(Composition::from_descents([0].into_iter().collect(), 3, false).is_err());
        assert!(Composition::from_descents([3].into_iter().collect(), 3, true).is_err());
    }

    #[test]
    fn complement_reverse_transpose() {
        assert_eq!(c(&[2, 1, 1]).complement(), c(&[1, 3]));
        assert_eq!(c(&[4]).complement(), c(&[1, 1, 1, 1]));
        assert_eq!(pc(&[0, 2, 1]).complement(), pc(&[1, 2]));
        assert_eq!(c(&[2, 3, 1, 1]).reverse().unwrap(), c(&[1, 1, 3, 2]));
        assert_eq!(c(&[2, 3, 1, 1]).transpose().unwrap(), c(&[3, 1, 2, 1]));
        assert_eq!(c(&[3]).transpose().unwrap(), c(&[1, 1, 1]));
        assert!(pc(&[0, 2]).reverse().is_err());
    }

    #[test]
    fn gluing() {
        assert_eq!(c(&[2]).concat(&c(&[1, 3])).unwrap(), c(&[2, 1, 3]));
        assert_eq!(c(&[2]).near_concat(&c(&[1, 3])).unwrap(), c(&[3, 3]));
        assert_eq!(pc(&[0, 1]).near_concat(&c(&[2])).unwrap(), pc(&[0, 3]));
        assert_eq!(pc(&[0]).concat(&c(&[2])).unwrap(), pc(&[0, 2]));
        assert_eq!(pc(&[0]).near_concat(&c(&[2])).unwrap(), pc(&[2]));
    }

    #[test]
    fn bracket_sets() {
        let shape = GeneralizedShape::parse(Kind::A, "[2]+[2,2]+[3,2]").unwrap();
        let got: Vec<String> = shape.bracket().iter().map(|b| b.compact()).collect();
        let mut want = vec!["22232", "4232", "2252", "452"];
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
        let one = GeneralizedShape::parse(Kind::A, "[1]+[1]").unwrap();
        assert_eq!(one.bracket(), vec![c(&[2]), c(&[1, 1])]);
        let single = GeneralizedShape::parse(Kind::A, "[1,3]").unwrap();
        assert_eq!(single.bracket(), vec![c(&[1, 3])]);
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(
            enumerate_shapes(3, Kind::A),
            vec![c(&[3]), c(&[2, 1]), c(&[1, 2]), c(&[1, 1, 1])]
        );
        assert_eq!(enumerate_shapes(1, Kind::B), vec![pc(&[1]), pc(&[0, 1])]);
        assert_eq!(enumerate_shapes(0, Kind::A), vec![Composition::empty()]);
        assert_eq!(enumerate_shapes(0, Kind::B), vec![Composition::pseudo_zero()]);
        assert_eq!(enumerate_shapes(5, Kind::B).len(), 32);
    }

    #[test]
    fn decomposition_counts() {
        let shape = GeneralizedShape::parse(Kind::A, "[1,3]").unwrap();
        assert_eq!(shape.decompositions().len(), 7);
        for n in 1..6 {
            let row = GeneralizedShape::ribbon(Kind::A, c(&[n])).unwrap();
            assert_eq!(row.decompositions().len(), n + 1);
        }
        let column = GeneralizedShape::parse(Kind::A, "[1,1]").unwrap();
        assert_eq!(column.decompositions().len(), 3);
    }

    #[test]
    fn decomposition_sub_shapes() {
        let shape = GeneralizedShape::parse(Kind::A, "[1,3]").unwrap();
        let mut pairs: Vec<(String, String)> = shape
            .decompositions()
            .iter()
            .map(|d| (d.beta.to_string(), d.gamma.to_string()))
            .collect();
        pairs.sort();
        let mut want = vec![
            ("[1,3]", "[]"),
            ("[1,2]", "[1]"),
            ("[1,1]", "[2]"),
            ("[2]", "[1]+[1]"),
            ("[3]", "[1]"),
            ("[1]", "[1]+[2]"),
            ("[]", "[1,3]"),
        ];
        want.sort();
        let want: Vec<(String, String)> =
            want.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(pairs, want);
    }

    #[test]
    fn pseudo_decompositions_keep_zero_box() {
        let shape = GeneralizedShape::parse(Kind::B, "[0,2]").unwrap();
        for d in shape.decompositions() {
            assert_eq!(d.beta.kind(), Kind::B);
            assert_eq!(d.gamma.kind(), Kind::A);
            assert_eq!(d.beta.size() + d.gamma.size(), 2);
        }
    }

    #[test]
    fn diagram_layout() {
        let shape = GeneralizedShape::parse(Kind::A, "[2,3,1,1]").unwrap();
        let d = shape.diagram();
        assert_eq!(
            d.cells,
            vec![(0, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3), (3, 3)]
        );
        let shape = GeneralizedShape::parse(Kind::B, "[0,2,1]").unwrap();
        let d = shape.diagram();
        assert_eq!(d.zero_box, Some((0, 0)));
        assert_eq!(d.cells, vec![(1, 0), (1, 1), (2, 1)]);
        assert_eq!(d.steps, vec![Step::Vertical, Step::Horizontal, Step::Vertical]);
        let shape = GeneralizedShape::parse(Kind::A, "[2]+[1]").unwrap();
        assert_eq!(shape.diagram().steps[2], Step::Junction);
    }

    #[test]
    fn generalized_enumeration_counts() {
        let every = enumerate_generalized(Kind::A, 4, 4);
        // each gap between consecutive boxes is a horizontal, vertical or junction step
        assert_eq!(every.len(), 27);
    }

    #[test]
    fn cuts() {
        let (l, r) = c(&[1, 2]).cut(2).unwrap();
        assert_eq!((l, r), (c(&[1, 1]), c(&[1])));
        let (l, r) = pc(&[0, 2]).cut(0).unwrap();
        assert_eq!((l, r), (pc(&[0]), c(&[2])));
        let (l, r) = pc(&[1, 2]).cut(2).unwrap();
        assert_eq!((l, r), (pc(&[1, 1]), c(&[1])));
    }
}
