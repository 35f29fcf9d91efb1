use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::qpoly::QPoly;
use crate::error::{Error, Result};
use crate::shape::{Composition, Kind};

/// The six graded spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Space {
    QSym,
    NSym,
    QSymB,
    NSymB,
    QSymD,
    NSymD,
}

impl Space {
    pub fn of(kind: Kind, quasi: bool) -> Space {
        match (kind, quasi) {
            (Kind::A, true) => Space::QSym,
            (Kind::A, false) => Space::NSym,
            (Kind::B, true) => Space::QSymB,
            (Kind::B, false) => Space::NSymB,
            (Kind::D, true) => Space::QSymD,
            (Kind::D, false) => Space::NSymD,
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Space::QSym | Space::NSym => Kind::A,
            Space::QSymB | Space::NSymB => Kind::B,
            Space::QSymD | Space::NSymD => Kind::D,
        }
    }

    /// Whether this is a quasisymmetric (commutative) space.
    pub fn is_quasi(self) -> bool {
        matches!(self, Space::QSym | Space::QSymB | Space::QSymD)
    }

    pub fn dual(self) -> Space {
        Space::of(self.kind(), !self.is_quasi())
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::QSym => "QSym",
            Space::NSym => "NSym",
            Space::QSymB => "QSymB",
            Space::NSymB => "NSymB",
            Space::QSymD => "QSymD",
            Space::NSymD => "NSymD",
        }
    }

    /// Whether `shape` indexes a basis element of this space.
    pub fn check_shape(self, shape: &Composition) -> Result<()> {
        let kind = self.kind();
        if shape.is_pseudo() != kind.is_signed() {
            return Err(Error::Mismatch(format!(
                "{shape:?} does not index {}",
                self.name()
            )));
        }
        if kind == Kind::D && shape.size() < 2 {
            return Err(Error::Range(format!(
                "{} starts in degree 2, got {shape}",
                self.name()
            )));
        }
        Ok(())
    }

    /// Parses a shape written as `[a,b,...]` for this space.
    pub fn parse_shape(self, text: &str) -> Result<Composition> {
        let c = Composition::parse(text, self.kind().is_signed())?;
        self.check_shape(&c)?;
        Ok(c)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "QSym" => Space::QSym,
            "NSym" => Space::NSym,
            "QSymB" => Space::QSymB,
            "NSymB" => Space::NSymB,
            "QSymD" => Space::QSymD,
            "NSymD" => Space::NSymD,
            other => return Err(Error::Parse(format!("unknown space `{other}`"))),
        })
    }
}

/// Basis names; `M`, `F` live on the quasisymmetric side and `h`, `s` on
/// the noncommutative side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
    H,
    S,
}

impl Basis {
    pub fn is_quasi(self) -> bool {
        matches!(self, Basis::M | Basis::F)
    }

    pub fn letter(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::F => "F",
            Basis::H => "h",
            Basis::S => "s",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "M" => Basis::M,
            "F" => Basis::F,
            "h" | "H" => Basis::H,
            "s" | "S" => Basis::S,
            other => return Err(Error::Parse(format!("unknown basis `{other}`"))),
        })
    }
}

/// A finite linear combination of basis elements with `ℤ[q]` coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesElement {
    space: Space,
    basis: Basis,
    terms: BTreeMap<Composition, QPoly>,
}

fn check_basis(space: Space, basis: Basis) -> Result<()> {
    if space.is_quasi() != basis.is_quasi() {
        return Err(Error::Mismatch(format!("basis {basis} does not belong to {space}")));
    }
    Ok(())
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

impl SeriesElement {
    pub fn zero(space: Space, basis: Basis) -> Result<Self> {
        check_basis(space, basis)?;
        Ok(SeriesElement {
            space,
            basis,
            terms: BTreeMap::new(),
        })
    }

    /// A single basis element.
    pub fn basis_element(space: Space, basis: Basis, shape: Composition) -> Result<Self> {
        Self::from_terms(space, basis, [(shape, QPoly::one())])
    }

    /// The degree-0 unit (`()` in type A, `(0)` in type B).
    pub fn one(space: Space, basis: Basis) -> Result<Self> {
        let shape = match space.kind() {
            Kind::A => Composition::empty(),
            Kind::B => Composition::pseudo_zero(),
            Kind::D => return Err(Error::Unsupported(format!("{space} has no degree-0 part"))),
        };
        Self::basis_element(space, basis, shape)
    }

    pub fn from_terms(
        space: Space,
        basis: Basis,
        terms: impl IntoIterator<Item = (Composition, QPoly)>,
    ) -> Result<Self> {
        let mut out = SeriesElement::zero(space, basis)?;
        for (shape, c) in terms {
            space.check_shape(&shape)?;
            out.add_term(shape, &c);
        }
        Ok(out)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn kind(&self) -> Kind {
        self.space.kind()
    }

    pub fn terms(&self) -> &BTreeMap<Composition, QPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, shape: &Composition) -> QPoly {
        self.terms.get(shape).cloned().unwrap_or_default()
    }

    /// Adds `c·b_shape` without validating the shape.
    pub(crate) fn add_term(&mut self, shape: Composition, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(shape.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&shape);
        }
    }

    pub(crate) fn empty_like(&self) -> Self {
        SeriesElement {
            space: self.space,
            basis: self.basis,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn scaled_into(&mut self, other: &SeriesElement, c: &QPoly) {
        for (shape, v) in &other.terms {
            self.add_term(shape.clone(), &(v * c));
        }
    }

    /// Sum of two elements of the same space; the result uses `self`'s basis.
    pub fn add(&self, other: &SeriesElement) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::Mismatch(format!(
                "cannot add {} and {}",
                self.space, other.space
            )));
        }
        let other = other.convert(self.basis)?;
        let mut out = self.clone();
        out.scaled_into(&other, &QPoly::one());
        Ok(out)
    }

    pub fn sub(&self, other: &SeriesElement) -> Result<Self> {
        self.add(&other.scale(&QPoly::constant(-1)))
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        let mut out = self.empty_like();
        out.scaled_into(self, c);
        out
    }

    /// Sets `q` to an integer.
    pub fn specialize(&self, q: i64) -> Self {
        let mut out = self.empty_like();
        for (shape, c) in &self.terms {
            out.add_term(shape.clone(), &QPoly::constant(c.eval(q)));
        }
        out
    }

    /// Sum of all coefficients, i.e. every basis element specialized to 1.
    pub fn coefficient_sum(&self) -> QPoly {
        self.terms.values().fold(QPoly::zero(), |acc, c| &acc + c)
    }

    /// The expansion of one basis element in the other basis of its side.
    pub(crate) fn convert_shape(space: Space, from: Basis, shape: &Composition) -> Vec<(Composition, i64)> {
        let _ = space;
        let d = shape.descent_set().len();
        match from {
            Basis::F => shape.refinements().into_iter().map(|b| (b, 1)).collect(),
            Basis::M => shape
                .refinements()
                .into_iter()
                .map(|b| {
                    let s = sign(b.descent_set().len() - d);
                    (b, s)
                })
                .collect(),
            Basis::H => shape.coarsenings().into_iter().map(|b| (b, 1)).collect(),
            Basis::S => shape
                .coarsenings()
                .into_iter()
                .map(|b| {
                    let s = sign(d - b.descent_set().len());
                    (b, s)
                })
                .collect(),
        }
    }

    /// Change of basis within the same side.
    pub fn convert(&self, target: Basis) -> Result<Self> {
        check_basis(self.space, target)?;
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out = SeriesElement::zero(self.space, target)?;
        for (shape, c) in &self.terms {
            for (b, s) in Self::convert_shape(self.space, self.basis, shape) {
                out.add_term(b, &c.scale(s));
            }
        }
        Ok(out)
    }

    /// The homogeneous component of degree `n`.
    pub fn degree_part(&self, n: usize) -> Self {
        let mut out = self.empty_like();
        for (shape, c) in &self.terms {
            if shape.size() == n {
                out.add_term(shape.clone(), c);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(shape, c)| serde_json::json!({"shape": shape.to_string(), "coeff": c}))
            .collect();
        serde_json::json!({
            "space": self.space,
            "basis": self.basis.letter(),
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Term {
            shape: String,
            coeff: QPoly,
        }
        #[derive(Deserialize)]
        struct Raw {
            space: Space,
            basis: String,
            terms: Vec<Term>,
        }
        let raw: Raw = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("series element JSON: {e}")))?;
        let basis: Basis = raw.basis.parse()?;
        let mut terms = Vec::new();
        for t in raw.terms {
            terms.push((raw.space.parse_shape(&t.shape)?, QPoly::new(t.coeff.coeffs().to_vec())));
        }
        SeriesElement::from_terms(raw.space, basis, terms)
    }

    /// Parses expressions such as `s[2,3] - 2*s[1,4] + (1+q)*s[5]`. All
    /// terms are converted to the basis of the first one.
    pub fn parse(kind: Kind, text: &str) -> Result<Self> {
        let mut acc: Option<SeriesElement> = None;
        for (negative, body) in split_signed(text)? {
            let (coeff, atom) = match body.rfind('*') {
                Some(k) => (parse_qpoly(&body[..k])?, body[k + 1..].trim()),
                None => (QPoly::one(), body.trim()),
            };
            let coeff = if negative { -&coeff } else { coeff };
            let open = atom
                .find('[')
                .ok_or_else(|| Error::Parse(format!("expected `X[...]`, got `{atom}`")))?;
            let basis: Basis = atom[..open].parse()?;
            let space = Space::of(kind, basis.is_quasi());
            let shape = space.parse_shape(&atom[open..])?;
            let term = SeriesElement::from_terms(space, basis, [(shape, coeff)])?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        acc.ok_or_else(|| Error::Parse("empty series expression".into()))
    }
}

fn split_signed(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if current.trim().is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
                continue;
            }
            out.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
            continue;
        }
        current.push(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{text}`")));
    }
    if !current.trim().is_empty() {
        out.push((negative, current));
    }
    Ok(out)
}

/// Parses `3`, `q`, `1+2q-q^3` and the same wrapped in parentheses.
pub fn parse_qpoly(text: &str) -> Result<QPoly> {
    let t = text.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let mut acc = QPoly::zero();
    for (negative, mono) in split_signed(t)? {
        let m = mono.trim().replace('*', "");
        let (c, power) = match m.find('q') {
            None => (m.as_str(), 0),
            Some(k) => {
                let exp = m[k + 1..].trim();
                let power = if exp.is_empty() {
                    1
                } else {
                    exp.strip_prefix('^')
                        .and_then(|e| e.trim().parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad power in `{m}`")))?
                };
                (&m[..k], power)
            }
        };
        let c = c.trim();
        let c: i64 = if c.is_empty() {
            1
        } else {
            c.parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?
        };
        acc += &QPoly::monomial(if negative { -c } else { c }, power);
    }
    Ok(acc)
}

impl fmt::Display for SeriesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (shape, c)) in self.terms.iter().enumerate() {
            let atom = format!("{}{}", self.basis, shape);
            let (neg, body) = match c.as_constant() {
                Some(1) => (false, atom),
                Some(-1) => (true, atom),
                Some(v) if v < 0 => (true, format!("{}*{atom}", -v)),
                Some(v) => (false, format!("{v}*{atom}")),
                None => (false, format!("({c})*{atom}")),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SeriesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.space, self)
    }
}

/// A finite element of a tensor product of two spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    pub left: (Space, Basis),
    pub right: (Space, Basis),
    pub terms: BTreeMap<(Composition, Composition), QPoly>,
}

impl Tensor {
    pub fn new(left: (Space, Basis), right: (Space, Basis)) -> Self {
        Tensor {
            left,
            right,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, l: Composition, r: Composition, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map to each left factor.
    pub fn map_left(
        &self,
        target: (Space, Basis),
        mut f: impl FnMut(&Composition) -> Result<SeriesElement>,
    ) -> Result<Tensor> {
        let mut out = Tensor::new(target, self.right);
        for ((l, r), c) in &self.terms {
            for (l2, c2) in f(l)?.terms() {
                out.add_term(l2.clone(), r.clone(), &(c * c2));
            }
        }
        Ok(out)
    }

    /// Applies a linear map to each right factor.
    pub fn map_right(
        &self,
        target: (Space, Basis),
        mut f: impl FnMut(&Composition) -> Result<SeriesElement>,
    ) -> Result<Tensor> {
        let mut out = Tensor::new(self.left, target);
        for ((l, r), c) in &self.terms {
            for (r2, c2) in f(r)?.terms() {
                out.add_term(l.clone(), r2.clone(), &(c * c2));
            }
        }
        Ok(out)
    }

    /// Converts both factors to new bases.
    pub fn convert(&self, left: Basis, right: Basis) -> Result<Tensor> {
        let (ls, lb) = self.left;
        let (rs, rb) = self.right;
        self.map_left((ls, left), |l| {
            SeriesElement::basis_element(ls, lb, l.clone())?.convert(left)
        })?
        .map_right((rs, right), |r| {
            SeriesElement::basis_element(rs, rb, r.clone())?.convert(right)
        })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                serde_json::json!({"left": l.to_string(), "right": r.to_string(), "coeff": c})
            })
            .collect();
        serde_json::json!({
            "left": {"space": self.left.0, "basis": self.left.1.letter()},
            "right": {"space": self.right.0, "basis": self.right.1.letter()},
            "terms": terms,
        })
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((l, r), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.as_constant() != Some(1) {
                write!(f, "({c})*")?;
            }
            write!(f, "{}{} ⊗ {}{}", self.left.1, l, self.right.1, r)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conversions() {
        let f2 = SeriesElement::basis_element(Space::QSym, Basis::F, c(&[2])).unwrap();
        assert_eq!(f2.convert(Basis::M).unwrap().to_string(), "M[2] + M[1,1]");
        let s11 = SeriesElement::basis_element(Space::NSym, Basis::S, c(&[1, 1])).unwrap();
        assert_eq!(s11.convert(Basis::H).unwrap().to_string(), "-h[2] + h[1,1]");
        for n in 0..=5 {
            for kind in [Kind::A, Kind::B, Kind::D] {
                if kind == Kind::D && n < 2 {
                    continue;
                }
                for alpha in crate::shape::enumerate_shapes(n, kind) {
                    for (from, to) in [(Basis::F, Basis::M), (Basis::S, Basis::H)] {
                        let space = Space::of(kind, from.is_quasi());
                        let x = SeriesElement::basis_element(space, from, alpha.clone()).unwrap();
                        assert_eq!(x.convert(to).unwrap().convert(from).unwrap(), x);
                        let y = SeriesElement::basis_element(space, to, alpha.clone()).unwrap();
                        assert_eq!(y.convert(from).unwrap().convert(to).unwrap(), y);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_display_json() {
        let x = SeriesElement::parse(Kind::A, "s[1,2] + s[2,1] + 2*s[3] - (1+q)*s[1,1,1]").unwrap();
        assert_eq!(x.to_string(), "2*s[3] + s[2,1] + s[1,2] + (-1-q)*s[1,1,1]");
        assert_eq!(SeriesElement::parse(Kind::A, &x.to_string()).unwrap(), x);
        assert_eq!(SeriesElement::from_json(&x.to_json()).unwrap(), x);
        let b = SeriesElement::parse(Kind::B, "F[0,2] - F[1,1]").unwrap();
        assert_eq!(b.space(), Space::QSymB);
        assert!(SeriesElement::parse(Kind::D, "s[1]").is_err());
        assert!(SeriesElement::parse(Kind::A, "s[0,1]").is_err());
        let mixed = SeriesElement::parse(Kind::A, "F[2] - M[2]").unwrap();
        assert_eq!(mixed.to_string(), "F[1,1]");
        assert_eq!(parse_qpoly("(2-q^2+q)").unwrap().coeffs(), &[2, 1, -1]);
    }
}
