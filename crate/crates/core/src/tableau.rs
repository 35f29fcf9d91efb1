//! Standard and semistandard tableaux of generalized (pseudo-)ribbon shapes.
//!
//! Entries are stored in reading order (bottom row to top row, left to right,
//! the 0-box excluded). Row and column relations are recovered from the
//! shape's diagram.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::limits;
use crate::shape::{Composition, DescentSet, GeneralizedShape, Kind, Part};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: GeneralizedShape,
    entries: Vec<i32>,
}

/// Result of [`split_tableau`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub lower: Tableau,
    pub upper: Tableau,
    pub assignment: Vec<Part>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Neighbor {
    Cell(usize),
    Zero,
}

/// Left and lower neighbours of each box, both earlier in reading order.
fn neighbors(shape: &GeneralizedShape) -> Vec<(Option<Neighbor>, Option<Neighbor>)> {
    let diagram = shape.diagram();
    let mut at: HashMap<(i32, i32), Neighbor> = HashMap::new();
    if let Some(z) = diagram.zero_box {
        at.insert(z, Neighbor::Zero);
    }
    for (k, &cell) in diagram.cells.iter().enumerate() {
        at.insert(cell, Neighbor::Cell(k));
    }
    diagram
        .cells
        .iter()
        .map(|&(r, c)| (at.get(&(r, c - 1)).copied(), at.get(&(r - 1, c)).copied()))
        .collect()
}

impl Tableau {
    pub fn new(shape: GeneralizedShape, entries: Vec<i32>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::Mismatch(format!(
                "{} entries for a shape of size {}",
                entries.len(),
                shape.size()
            )));
        }
        Ok(Tableau { shape, entries })
    }

    pub(crate) fn from_parts(shape: GeneralizedShape, entries: Vec<i32>) -> Self {
        Tableau { shape, entries }
    }

    pub fn shape(&self) -> &GeneralizedShape {
        &self.shape
    }

    pub fn kind(&self) -> Kind {
        self.shape.kind()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Value of the 0-box: 0 in type B, `-w(2)` in type D.
    pub fn zero_value(&self) -> Option<i32> {
        match self.kind() {
            Kind::A => None,
            Kind::B => Some(0),
            Kind::D => self.entries.get(1).map(|v| -v),
        }
    }

    fn value_of(&self, nb: Neighbor) -> Option<i32> {
        match nb {
            Neighbor::Cell(k) => Some(self.entries[k]),
            Neighbor::Zero => self.zero_value(),
        }
    }

    /// Rows weakly increase to the right and columns strictly increase
    /// downward, the 0-box included.
    pub fn is_semistandard(&self) -> bool {
        for (k, (left, below)) in neighbors(&self.shape).into_iter().enumerate() {
            let v = self.entries[k];
            if let Some(l) = left.and_then(|nb| self.value_of(nb)) {
                if l > v {
                    return false;
                }
            }
            if let Some(b) = below.and_then(|nb| self.value_of(nb)) {
                if v >= b {
                    return false;
                }
            }
        }
        true
    }

    /// Semistandard with rows strictly increasing and reading word in the group.
    pub fn is_standard(&self) -> bool {
        if GroupElement::new(self.kind(), self.entries.clone()).is_err() {
            return false;
        }
        self.is_semistandard()
    }

    pub fn reading_word(&self) -> Result<GroupElement> {
        GroupElement::new(self.kind(), self.entries.clone())
    }

    /// Row index of every box in reading order.
    pub(crate) fn rows(&self) -> Vec<i32> {
        self.shape.diagram().cells.iter().map(|c| c.0).collect()
    }

    /// Tableau descents via the row conditions on `±i, ±(i+1)`.
    pub fn descents(&self) -> DescentSet {
        self.descents_in_rows(&self.rows())
    }

    /// [`Tableau::descents`] with the row of every box supplied.
    pub(crate) fn descents_in_rows(&self, rows: &[i32]) -> DescentSet {
        let n = self.size();
        let mut pos = vec![(0i32, 0i32); n + 1];
        for (k, &v) in self.entries.iter().enumerate() {
            pos[v.unsigned_abs() as usize] = (rows[k], v.signum());
        }
        let mut d = DescentSet::EMPTY;
        for i in 1..n {
            let (ri, si) = pos[i];
            let (rj, sj) = pos[i + 1];
            let hit = match (si > 0, sj > 0) {
                (true, true) => ri > rj,
                (false, false) => ri < rj,
                (true, false) => true,
                (false, true) => false,
            };
            if hit {
                d = d.with(i);
            }
        }
        match self.kind() {
            Kind::A => {}
            Kind::B => {
                if n >= 1 && pos[1].1 < 0 {
                    d = d.with(0);
                }
            }
            Kind::D => {
                let (r1, s1) = pos[1];
                let (r2, s2) = pos[2];
                let hit = (s1 < 0 && s2 < 0) || (s1 < 0 && s2 > 0 && r1 > r2) || (s1 > 0 && s2 < 0 && r2 > r1);
                if hit {
                    d = d.with(0);
                }
            }
        }
        d
    }

    /// `s_i(τ)`: the tableau whose reading word is `s_i ∘ w(τ)`. The result
    /// need not be standard.
    pub fn apply_generator(&self, i: usize) -> Tableau {
        let entries = self
            .entries
            .iter()
            .map(|&v| simple_reflection(self.kind(), i, v))
            .collect();
        Tableau {
            shape: self.shape.clone(),
            entries,
        }
    }

    pub fn to_text(&self) -> String {
        let diagram = self.shape.diagram();
        let rows = diagram.rows();
        rows.iter()
            .rev()
            .map(|(_, boxes)| {
                boxes
                    .iter()
                    .map(|&k| {
                        if k == 0 {
                            "0*".to_string()
                        } else {
                            self.entries[k - 1].to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn parse(shape: &GeneralizedShape, text: &str) -> Result<Self> {
        let diagram = shape.diagram();
        let rows = diagram.rows();
        let pieces: Vec<&str> = text.trim().split('/').collect();
        if pieces.len() != rows.len() {
            return Err(Error::Parse(format!(
                "`{text}` has {} rows, shape {shape} has {}",
                pieces.len(),
                rows.len()
            )));
        }
        let mut entries = vec![0; shape.size()];
        for ((_, boxes), piece) in rows.iter().rev().zip(pieces) {
            let tokens: Vec<&str> = piece.split(',').map(str::trim).collect();
            if tokens.len() != boxes.len() {
                return Err(Error::Parse(format!("row `{piece}` has the wrong length")));
            }
            for (&k, tok) in boxes.iter().zip(tokens) {
                if k == 0 {
                    if tok != "0*" {
                        return Err(Error::Parse(format!("expected `0*`, found `{tok}`")));
                    }
                    continue;
                }
                entries[k - 1] = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad entry `{tok}`")))?;
            }
        }
        Tableau::new(shape.clone(), entries)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}<{}>", self.shape, self.to_text())
    }
}

/// Image of the value `v` under the generator `s_i` acting on values.
pub fn simple_reflection(kind: Kind, i: usize, v: i32) -> i32 {
    let a = v.abs();
    let sign = v.signum();
    if i >= 1 {
        let i = i as i32;
        if a == i {
            sign * (i + 1)
        } else if a == i + 1 {
            sign * i
        } else {
            v
        }
    } else if kind == Kind::B {
        if a == 1 {
            -v
        } else {
            v
        }
    } else if a == 1 {
        -sign * 2
    } else if a == 2 {
        -sign
    } else {
        v
    }
}

/// The standard tableau of `shape` with reading word `w`, if its descent set
/// lies in the admissible band.
pub fn tableau_from_word(shape: &GeneralizedShape, w: &GroupElement) -> Option<Tableau> {
    if w.kind() != shape.kind() || w.n() != shape.size() {
        return None;
    }
    let (lo, hi) = shape.band();
    let d = w.descents();
    if lo.is_subset(d) && d.is_subset(hi) {
        Some(Tableau::from_parts(shape.clone(), w.window().to_vec()))
    } else {
        None
    }
}

/// All standard tableaux of `shape`, sorted by reading word.
///
/// Reading words are built position by position, keeping only prefixes whose
/// descents respect the admissible band.
pub fn enumerate_standard(shape: &GeneralizedShape) -> Result<Vec<Tableau>> {
    let kind = shape.kind();
    let n = shape.size();
    let (lo, hi) = shape.band();
    let limit = limits::max_tableaux() as usize;
    let mut values: Vec<i32> = (1..=n as i32).collect();
    if kind.is_signed() {
        values = (1..=n as i32).rev().map(|v| -v).chain(values).collect();
    }
    // position p compares w(p) with w(p + 1); w(0) is 0 in type B
    let allowed = |p: usize, a: i32, b: i32| {
        if a > b {
            hi.contains(p)
        } else {
            !lo.contains(p)
        }
    };
    struct Search<'a, F: Fn(usize, i32, i32) -> bool> {
        kind: Kind,
        n: usize,
        values: &'a [i32],
        used: Vec<bool>,
        word: Vec<i32>,
        out: Vec<Vec<i32>>,
        allowed: F,
        limit: usize,
    }
    impl<F: Fn(usize, i32, i32) -> bool> Search<'_, F> {
        fn go(&mut self) -> bool {
            let k = self.word.len();
            if k == self.n {
                if self.kind == Kind::D && self.word.iter().filter(|&&v| v < 0).count() % 2 == 1 {
                    return true;
                }
                self.out.push(self.word.clone());
                return self.out.len() <= self.limit;
            }
            for idx in 0..self.values.len() {
                let v = self.values[idx];
                if self.used[v.unsigned_abs() as usize] {
                    continue;
                }
                let ok = match k {
                    0 => self.kind != Kind::B || (self.allowed)(0, 0, v),
                    _ => {
                        (self.allowed)(k, self.word[k - 1], v)
                            && (self.kind != Kind::D || k != 1 || (self.allowed)(0, -v, self.word[0]))
                    }
                };
                if !ok {
                    continue;
                }
                self.used[v.unsigned_abs() as usize] = true;
                self.word.push(v);
                let go_on = self.go();
                self.word.pop();
                self.used[v.unsigned_abs() as usize] = false;
                if !go_on {
                    return false;
                }
            }
            true
        }
    }
    let mut search = Search {
        kind,
        n,
        values: &values,
        used: vec![false; n + 1],
        word: Vec::with_capacity(n),
        out: Vec::new(),
        allowed,
        limit,
    };
    if !search.go() {
        return Err(Error::ResourceLimit {
            what: format!("standard tableaux of {shape}"),
            count: search.out.len() as u128,
            limit: limit as u128,
        });
    }
    let mut out: Vec<Tableau> = search
        .out
        .into_iter()
        .map(|w| Tableau::from_parts(shape.clone(), w))
        .collect();
    out.sort_by(|a, b| a.entries.cmp(&b.entries));
    Ok(out)
}

fn ribbon_of(kind: Kind, shape: &Composition) -> Result<GeneralizedShape> {
    GeneralizedShape::ribbon(kind, shape.clone())
}

/// Cells grouped by column (left to right), each column listed top to bottom.
fn columns(cells: &[(i32, i32)]) -> Vec<Vec<usize>> {
    let mut cols: std::collections::BTreeMap<i32, Vec<(i32, usize)>> = Default::default();
    for (k, &(r, c)) in cells.iter().enumerate() {
        cols.entry(c).or_default().push((-r, k));
    }
    cols.into_values()
        .map(|mut v| {
            v.sort();
            v.into_iter().map(|(_, k)| k).collect()
        })
        .collect()
}

/// Cells grouped by row (bottom to top), each row listed left to right.
fn rows_of(cells: &[(i32, i32)]) -> Vec<Vec<usize>> {
    let mut rows: std::collections::BTreeMap<i32, Vec<(i32, usize)>> = Default::default();
    for (k, &(r, c)) in cells.iter().enumerate() {
        rows.entry(r).or_default().push((c, k));
    }
    rows.into_values()
        .map(|mut v| {
            v.sort();
            v.into_iter().map(|(_, k)| k).collect()
        })
        .collect()
}

fn negate_one(entries: &mut [i32]) {
    for v in entries.iter_mut() {
        if v.abs() == 1 {
            *v = -*v;
        }
    }
}

fn sign_count(entries: &[i32]) -> usize {
    entries.iter().filter(|&&v| v < 0).count()
}

/// The tableau whose reading word is the length-minimal element of the
/// descent class of `shape`.
pub fn tau0(kind: Kind, shape: &Composition) -> Result<Tableau> {
    let g = ribbon_of(kind, shape)?;
    let cells = g.diagram().cells;
    let n = cells.len();
    let mut entries = vec![0i32; n];
    let cols = columns(&cells);
    match kind {
        Kind::A => {
            let mut next = 1;
            for col in &cols {
                for &k in col {
                    entries[k] = next;
                    next += 1;
                }
            }
        }
        Kind::B | Kind::D => {
            let (first, rest) = leftmost_column_split(&cells, &cols);
            let c1 = first.len();
            if kind == Kind::D && c1 == 1 {
                let second = &rest[0];
                let c2 = second.len() as i32;
                for (t, &k) in second.iter().enumerate() {
                    entries[k] = if t == 0 { -1 } else { t as i32 + 1 };
                }
                entries[first[0]] = -c2 - 1;
                let mut next = c2 + 2;
                for col in &rest[1..] {
                    for &k in col {
                        entries[k] = next;
                        next += 1;
                    }
                }
            } else {
                for (t, &k) in first.iter().rev().enumerate() {
                    entries[k] = -(t as i32 + 1);
                }
                let mut next = c1 as i32 + 1;
                for col in &rest {
                    for &k in col {
                        entries[k] = next;
                        next += 1;
                    }
                }
                if kind == Kind::D && sign_count(&entries) % 2 == 1 {
                    negate_one(&mut entries);
                }
            }
        }
    }
    Tableau::new(g, entries)
}

/// Splits the columns into the boxes of the 0-box column and the others.
fn leftmost_column_split(cells: &[(i32, i32)], cols: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let leftmost: Vec<usize> = cols
        .first()
        .filter(|col| col.iter().any(|&k| cells[k].1 == 0))
        .cloned()
        .unwrap_or_default();
    let rest = cols
        .iter()
        .filter(|col| !col.iter().any(|&k| cells[k].1 == 0))
        .cloned()
        .collect();
    (leftmost, rest)
}

/// The tableau whose reading word is the length-maximal element of the
/// descent class of `shape`.
pub fn tau1(kind: Kind, shape: &Composition) -> Result<Tableau> {
    let g = ribbon_of(kind, shape)?;
    let cells = g.diagram().cells;
    let n = cells.len() as i32;
    let mut entries = vec![0i32; cells.len()];
    let rows = rows_of(&cells);
    match kind {
        Kind::A => {
            let mut next = 1;
            for row in rows.iter().rev() {
                for &k in row {
                    entries[k] = next;
                    next += 1;
                }
            }
        }
        Kind::B | Kind::D => {
            let bottom: Vec<usize> = rows
                .first()
                .filter(|row| row.iter().any(|&k| cells[k].0 == 0))
                .cloned()
                .unwrap_or_default();
            let rest: Vec<Vec<usize>> = rows
                .iter()
                .filter(|row| !row.iter().any(|&k| cells[k].0 == 0))
                .cloned()
                .collect();
            let r1 = bottom.len();
            if kind == Kind::D && r1 == 1 {
                let second = &rest[0];
                let r2 = second.len() as i32;
                for (t, &k) in second.iter().rev().enumerate() {
                    entries[k] = if t == 0 {
                        if n % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    } else {
                        -(t as i32 + 1)
                    };
                }
                entries[bottom[0]] = r2 + 1;
                let mut next = r2 + 2;
                for row in &rest[1..] {
                    for &k in row.iter().rev() {
                        entries[k] = -next;
                        next += 1;
                    }
                }
            } else {
                for (t, &k) in bottom.iter().enumerate() {
                    entries[k] = t as i32 + 1;
                }
                let mut next = r1 as i32 + 1;
                for row in &rest {
                    for &k in row.iter().rev() {
                        entries[k] = -next;
                        next += 1;
                    }
                }
                if kind == Kind::D && sign_count(&entries) % 2 == 1 {
                    negate_one(&mut entries);
                }
            }
        }
    }
    Tableau::new(g, entries)
}

/// Rebuilds a single-component shape and tableau from relocated boxes.
fn reread(
    kind: Kind,
    zero: Option<(i32, i32)>,
    boxes: Vec<((i32, i32), i32)>,
) -> Result<Tableau> {
    let mut boxes = boxes;
    boxes.sort_by_key(|&((r, c), _)| (r, c));
    let mut lengths: Vec<usize> = Vec::new();
    let mut last_row = None;
    let mut all_rows: Vec<i32> = boxes.iter().map(|b| b.0 .0).collect();
    if let Some((zr, _)) = zero {
        all_rows.push(zr);
    }
    all_rows.sort();
    for r in all_rows {
        if last_row == Some(r) {
            *lengths.last_mut().unwrap() += 1;
        } else {
            lengths.push(1);
            last_row = Some(r);
        }
    }
    let comp = if zero.is_some() {
        lengths[0] -= 1;
        Composition::pseudo(lengths)?
    } else {
        Composition::new(lengths)?
    };
    let shape = GeneralizedShape::ribbon(kind, comp)?;
    let expected = shape.diagram();
    let cells: Vec<(i32, i32)> = boxes.iter().map(|b| b.0).collect();
    let offset = expected.cells.first().map(|&(r, c)| (cells[0].0 - r, cells[0].1 - c));
    if let Some((dr, dc)) = offset {
        let shifted: Vec<(i32, i32)> = expected.cells.iter().map(|&(r, c)| (r + dr, c + dc)).collect();
        if shifted != cells {
            return Err(Error::Invariant("reflected boxes do not form a ribbon".into()));
        }
    }
    Tableau::new(shape, boxes.into_iter().map(|b| b.1).collect())
}

/// Transpose (type A), `θᴮ` (type B) or `θᴰ` (type D).
pub fn theta_map(tableau: &Tableau) -> Result<Tableau> {
    if !tableau.shape.is_ribbon() {
        return Err(Error::Unsupported("symmetry maps act on connected shapes".into()));
    }
    let diagram = tableau.shape.diagram();
    match tableau.kind() {
        Kind::A => {
            let boxes = diagram
                .cells
                .iter()
                .zip(&tableau.entries)
                .map(|(&(r, c), &v)| ((-c, -r), v))
                .collect();
            reread(Kind::A, None, boxes)
        }
        Kind::B | Kind::D => {
            let boxes = diagram
                .cells
                .iter()
                .zip(&tableau.entries)
                .map(|(&(r, c), &v)| ((c, r), -v))
                .collect();
            let zero = diagram.zero_box.map(|(r, c)| (c, r));
            let mut t = reread(tableau.kind(), zero, boxes)?;
            if tableau.kind() == Kind::D && sign_count(&t.entries) % 2 == 1 {
                negate_one(&mut t.entries);
            }
            Ok(t)
        }
    }
}

/// `τ * η`: stacks `η` on top of `τ` when the last letter of `w(τ)` exceeds
/// the first letter of `w(η)`, and continues the row otherwise.
pub fn glue_tableaux(tau: &Tableau, eta: &Tableau) -> Result<Tableau> {
    if eta.kind() != Kind::A {
        return Err(Error::Mismatch("the right factor of a gluing is type A".into()));
    }
    if eta.size() == 0 {
        return Ok(tau.clone());
    }
    let last = match (tau.entries.last(), tau.kind()) {
        (Some(&v), _) => v,
        (None, Kind::A) => return Ok(eta.clone()),
        (None, _) => 0,
    };
    let shape = if last > eta.entries[0] {
        tau.shape.concat(&eta.shape)?
    } else {
        tau.shape.near_concat(&eta.shape)?
    };
    let mut entries = tau.entries.clone();
    entries.extend_from_slice(&eta.entries);
    Tableau::new(shape, entries)
}

/// Separates the entries `≤ m` from those `> m` (the latter shifted down by `m`).
pub fn split_tableau(tau: &Tableau, m: usize) -> Result<Split> {
    if tau.kind() != Kind::A {
        return Err(Error::Mismatch("splitting is defined in type A".into()));
    }
    if m > tau.size() {
        return Err(Error::Range(format!("split point {m} exceeds size {}", tau.size())));
    }
    let bound = m as i32;
    let assignment: Vec<Part> = tau
        .entries
        .iter()
        .map(|&v| if v <= bound { Part::Beta } else { Part::Gamma })
        .collect();
    let steps = tau.shape.diagram().steps;
    let beta = tau
        .shape
        .sub_shape(&steps, &assignment, Part::Beta)
        .ok_or_else(|| Error::Invariant("lower part is not a shape".into()))?;
    let gamma = tau
        .shape
        .sub_shape(&steps, &assignment, Part::Gamma)
        .ok_or_else(|| Error::Invariant("upper part is not a shape".into()))?;
    let lower = tau.entries.iter().copied().filter(|&v| v <= bound).collect();
    let upper = tau
        .entries
        .iter()
        .filter(|&&v| v > bound)
        .map(|&v| v - bound)
        .collect();
    Ok(Split {
        lower: Tableau::new(beta, lower)?,
        upper: Tableau::new(gamma, upper)?,
        assignment,
    })
}

/// Inverse of [`split_tableau`].
pub fn merge_split(shape: &GeneralizedShape, split: &Split) -> Result<Tableau> {
    let m = split.lower.size() as i32;
    let mut lower = split.lower.entries.iter();
    let mut upper = split.upper.entries.iter();
    let mut entries = Vec::with_capacity(shape.size());
    for part in &split.assignment {
        let v = match part {
            Part::Beta => *lower.next().ok_or_else(|| Error::Mismatch("too few lower entries".into()))?,
            Part::Gamma => m + *upper.next().ok_or_else(|| Error::Mismatch("too few upper entries".into()))?,
        };
        entries.push(v);
    }
    Tableau::new(shape.clone(), entries)
}

/// All semistandard fillings of `shape` with entries from `alphabet`.
pub fn enumerate_semistandard(
    shape: &GeneralizedShape,
    alphabet: RangeInclusive<i32>,
    max_count: usize,
) -> Result<Vec<Tableau>> {
    let nbs = neighbors(shape);
    let kind = shape.kind();
    let n = shape.size();
    let mut out = Vec::new();
    let mut entries = vec![0i32; n];
    fn zero_value(kind: Kind, entries: &[i32], assigned: usize) -> Option<i32> {
        match kind {
            Kind::A => None,
            Kind::B => Some(0),
            Kind::D => (assigned >= 2).then(|| -entries[1]),
        }
    }
    fn ok_pair(lhs: i32, rhs: i32, strict: bool) -> bool {
        if strict {
            lhs < rhs
        } else {
            lhs <= rhs
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        kind: Kind,
        nbs: &[(Option<Neighbor>, Option<Neighbor>)],
        alphabet: &RangeInclusive<i32>,
        entries: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
        max_count: usize,
    ) -> bool {
        if k == entries.len() {
            out.push(entries.clone());
            return out.len() <= max_count;
        }
        for v in alphabet.clone() {
            entries[k] = v;
            let zero = zero_value(kind, entries, k + 1);
            let value = |nb: Neighbor| match nb {
                Neighbor::Cell(j) => Some(entries[j]),
                Neighbor::Zero => zero,
            };
            let (left, below) = nbs[k];
            let mut ok = true;
            if let Some(l) = left.and_then(value) {
                ok &= ok_pair(l, v, false);
            }
            if let Some(b) = below.and_then(value) {
                ok &= ok_pair(v, b, true);
            }
            if ok && kind == Kind::D && k == 1 {
                let (l0, b0) = nbs[0];
                if l0 == Some(Neighbor::Zero) {
                    ok &= ok_pair(-entries[1], entries[0], false);
                }
                if b0 == Some(Neighbor::Zero) {
                    ok &= ok_pair(entries[0], -entries[1], true);
                }
            }
            if ok && !go(k + 1, kind, nbs, alphabet, entries, out, max_count) {
                return false;
            }
        }
        true
    }
    let mut words = Vec::new();
    if !go(0, kind, &nbs, &alphabet, &mut entries, &mut words, max_count) {
        return Err(Error::ResourceLimit {
            what: format!("semistandard tableaux of {shape}"),
            count: words.len() as u128,
            limit: max_count as u128,
        });
    }
    out.extend(words.into_iter().map(|w| Tableau::from_parts(shape.clone(), w)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{descent_class, enumerate_group};
    use crate::shape::enumerate_shapes;

    fn shape(kind: Kind, s: &str) -> GeneralizedShape {
        GeneralizedShape::parse(kind, s).unwrap()
    }

    #[test]
    fn reading_words_of_small_fillings() {
        let t = Tableau::parse(&shape(Kind::B, "[2,3,1,1]"), "-7/-5/-4,-1,6/0*,2,3").unwrap();
        assert_eq!(t.entries(), &[2, 3, -4, -1, 6, -5, -7]);
        assert!(t.is_standard());
        assert_eq!(t.to_text(), "-7/-5/-4,-1,6/0*,2,3");
        let t = Tableau::parse(&shape(Kind::B, "[0,2,3,1,1]"), "-3/2/-4,1,7/-6,5/0*").unwrap();
        assert_eq!(t.entries(), &[-6, 5, -4, 1, 7, 2, -3]);
        assert!(t.is_standard());
    }

    #[test]
    fn column_tau1_is_longest() {
        let col = Composition::new(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(tau1(Kind::A, &col).unwrap().entries(), &[4, 3, 2, 1]);
        let t = tau1(Kind::A, &Composition::new(vec![2, 1, 1]).unwrap()).unwrap();
        assert_eq!(t.to_text(), "1/2/3,4");
    }

    #[test]
    fn signed_fillings_reading_words() {
        let t = tau0(Kind::B, &Composition::pseudo(vec![1, 3, 2]).unwrap()).unwrap();
        assert_eq!(t.to_text(), "4,6/1,3,5/0*,2");
        let t = tau1(Kind::B, &Composition::pseudo(vec![3, 2, 1]).unwrap()).unwrap();
        assert_eq!(t.entries(), &[1, 2, 3, -5, -4, -6]);
        let t = tau0(Kind::D, &Composition::pseudo(vec![0, 2, 3, 1]).unwrap()).unwrap();
        assert_eq!(t.to_text(), "5/-1,4,6/-3,2/0*");
        let t = tau0(Kind::D, &Composition::pseudo(vec![0, 1, 1, 2, 2]).unwrap()).unwrap();
        assert_eq!(t.to_text(), "4,6/-3,5/-2/1/0*");
        let t = tau1(Kind::D, &Composition::pseudo(vec![1, 2, 1, 2]).unwrap()).unwrap();
        assert_eq!(t.to_text(), "-6,-5/-4/-2,1/0*,3");
    }

    #[test]
    fn extremes_match_class_scan() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=5 {
                for alpha in enumerate_shapes(n, kind) {
                    let class = descent_class(kind, &alpha).unwrap();
                    assert_eq!(tau0(kind, &alpha).unwrap().entries(), class.min.window(), "{kind} {alpha}");
                    assert_eq!(tau1(kind, &alpha).unwrap().entries(), class.max.window(), "{kind} {alpha}");
                }
            }
        }
    }

    #[test]
    fn band_enumeration_matches_row_column_checks() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for g in crate::shape::enumerate_generalized(kind, n, 3) {
                    let words: Vec<Vec<i32>> = enumerate_standard(&g)
                        .unwrap()
                        .into_iter()
                        .map(|t| t.entries)
                        .collect();
                    let mut brute: Vec<Vec<i32>> = enumerate_group(kind, n)
                        .unwrap()
                        .into_iter()
                        .map(|w| Tableau::from_parts(g.clone(), w.window().to_vec()))
                        .filter(|t| t.is_standard())
                        .map(|t| t.entries)
                        .collect();
                    brute.sort();
                    assert_eq!(words, brute, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn descents_equal_inverse_descents() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let g = GeneralizedShape::separated(kind, &alpha).unwrap();
                    for t in enumerate_standard(&g).unwrap() {
                        assert_eq!(t.descents(), t.reading_word().unwrap().inverse().descents(), "{t:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_maps() {
        for n in 1..=5 {
            for alpha in enumerate_shapes(n, Kind::A) {
                let t = theta_map(&tau1(Kind::A, &alpha).unwrap()).unwrap();
                assert_eq!(t, tau0(Kind::A, &alpha.transpose().unwrap()).unwrap());
            }
        }
        for kind in [Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let t = theta_map(&tau0(kind, &alpha).unwrap()).unwrap();
                    assert_eq!(t, tau1(kind, &alpha.complement()).unwrap(), "{kind} {alpha}");
                }
            }
        }
        let b = tau0(Kind::B, &Composition::pseudo(vec![1, 3, 2]).unwrap()).unwrap();
        let image = theta_map(&b).unwrap();
        assert_eq!(image.shape().to_string(), "[0,2,1,2,1]");
    }

    #[test]
    fn gluing_single_boxes() {
        let one = |v| Tableau::new(shape(Kind::A, "[1]"), vec![v]).unwrap();
        let g = glue_tableaux(&one(1), &one(2)).unwrap();
        assert_eq!(g.shape().to_string(), "[2]");
        let g = glue_tableaux(&one(2), &one(1)).unwrap();
        assert_eq!(g.shape().to_string(), "[1,1]");
    }

    #[test]
    fn split_round_trip() {
        for n in 1..=5 {
            for g in crate::shape::enumerate_generalized(Kind::A, n, 2) {
                for t in enumerate_standard(&g).unwrap() {
                    for m in 0..=n {
                        let s = split_tableau(&t, m).unwrap();
                        assert!(s.lower.is_standard() && s.upper.is_standard());
                        assert_eq!(merge_split(&g, &s).unwrap(), t);
                    }
                }
            }
        }
        let t = enumerate_standard(&shape(Kind::A, "[2,1]")).unwrap().remove(0);
        assert_eq!(split_tableau(&t, 0).unwrap().lower.size(), 0);
        assert_eq!(split_tableau(&t, 3).unwrap().upper.size(), 0);
        assert!(split_tableau(&t, 4).is_err());
    }

    #[test]
    fn semistandard_counts() {
        let one = shape(Kind::A, "[1]");
        assert_eq!(enumerate_semistandard(&one, 1..=4, 100).unwrap().len(), 4);
        let col = shape(Kind::A, "[1,1]");
        assert_eq!(enumerate_semistandard(&col, 1..=5, 100).unwrap().len(), 10);
        let row = shape(Kind::B, "[2]");
        let brute = (-1..=1)
            .flat_map(|a| (-1..=1).map(move |b| (a, b)))
            .filter(|&(a, b)| 0 <= a && a <= b)
            .count();
        assert_eq!(enumerate_semistandard(&row, -1..=1, 100).unwrap().len(), brute);
        assert!(enumerate_semistandard(&col, 1..=9, 5).is_err());
    }
}
