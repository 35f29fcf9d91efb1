//! Demazure operators on integer polynomials and the type A polynomial
//! realizations of the tableau modules.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{descent_class, enumerate_group, reduced_word, GroupElement};
use crate::hecke::{build_p, generates, Basis, HeckeModule};
use crate::limits;
use crate::linalg::SparseMatrix;
use crate::shape::{Composition, GeneralizedShape, Kind};

/// A polynomial in `x_1, …, x_n` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::monomial(n, vec![0; n], 1).expect("constant monomial")
    }

    pub fn monomial(n: usize, exponents: Vec<u32>, coeff: i64) -> Result<Self> {
        if exponents.len() != n {
            return Err(Error::Mismatch(format!(
                "exponent vector {exponents:?} has the wrong length for {n} variables"
            )));
        }
        let mut p = MultiPoly::zero(n);
        p.add_term(exponents, coeff);
        Ok(p)
    }

    /// `x_i`, 1-based.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::Range(format!("no variable x{i} among {n}")));
        }
        let mut e = vec![0; n];
        e[i - 1] = 1;
        MultiPoly::monomial(n, e, 1)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Result<Self> {
        let mut p = MultiPoly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::Mismatch(format!("exponent vector {e:?} for {n} variables")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).all_equal_value().is_ok() || self.is_zero()
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!(
                "polynomials in {} and {} variables",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = MultiPoly::zero(self.n);
        for (a, &c) in &self.terms {
            for (b, &d) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c * d);
            }
        }
        Ok(out)
    }

    /// `w·f`, substituting `x_j ↦ x_{w(j)}`.
    pub fn permute(&self, w: &GroupElement) -> Result<MultiPoly> {
        if w.kind() != Kind::A || w.n() != self.n {
            return Err(Error::Mismatch(format!(
                "cannot act by a type {}{} element on {} variables",
                w.kind(),
                w.n(),
                self.n
            )));
        }
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            let mut f = vec![0; self.n];
            for (j, &k) in e.iter().enumerate() {
                f[w.window()[j] as usize - 1] = k;
            }
            out.add_term(f, c);
        }
        Ok(out)
    }

    /// `s_i f`, swapping `x_i` and `x_{i+1}`.
    pub fn swap(&self, i: usize) -> Result<MultiPoly> {
        self.check_index(i)?;
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            let mut f = e.clone();
            f.swap(i - 1, i);
            out.add_term(f, c);
        }
        Ok(out)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::Range(format!(
                "operator index {i} outside 1..{} for {} variables",
                self.n, self.n
            )));
        }
        Ok(())
    }

    /// Polynomial text such as `x1^2*x2^2*x3 - 2*x1*x4`, in `n` variables.
    pub fn parse(n: usize, text: &str) -> Result<MultiPoly> {
        let parsed: MultiPoly = text.parse()?;
        if parsed.n > n {
            return Err(Error::Range(format!(
                "`{text}` uses x{} but only {n} variables are available",
                parsed.n
            )));
        }
        Ok(parsed.with_variables(n))
    }

    /// The same polynomial viewed in `n ≥ self.n()` variables.
    pub fn with_variables(&self, n: usize) -> MultiPoly {
        let n = n.max(self.n);
        let mut out = MultiPoly::zero(n);
        for (e, &c) in &self.terms {
            let mut f = e.clone();
            f.resize(n, 0);
            out.add_term(f, c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "text": self.to_string(),
            "terms": self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| json!({"exponents": e, "coeff": c}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<MultiPoly> {
        let bad = || Error::Parse(format!("not a polynomial: {v}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
        let mut out = Vec::new();
        for t in terms {
            let e: Vec<u32> = serde_json::from_value(t.get("exponents").cloned().ok_or_else(bad)?)
                .map_err(|_| bad())?;
            let c = t.get("coeff").and_then(Value::as_i64).ok_or_else(bad)?;
            out.push((e, c));
        }
        MultiPoly::from_terms(n, out)
    }
}

fn monomial_text(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| if k == 1 { format!("x{}", j + 1) } else { format!("x{}^{k}", j + 1) })
        .join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_text(e);
            let a = c.unsigned_abs();
            let body = match (mono.is_empty(), a) {
                (true, _) => a.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{a}*{mono}"),
            };
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

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses with as many variables as the largest index mentioned.
    fn from_str(text: &str) -> Result<MultiPoly> {
        let bad = |why: &str| Error::Parse(format!("`{text}`: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }
        let mut raw: Vec<(BTreeMap<usize, u32>, i64)> = Vec::new();
        let mut n = 0;
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(bad("expected `+` or `-` between terms"));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff = sign;
            let mut exps = BTreeMap::new();
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, pow) = match var.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx == 0 {
                        return Err(bad("variables start at x1"));
                    }
                    n = n.max(idx);
                    *exps.entry(idx).or_insert(0) += pow;
                } else {
                    let c: i64 = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= c;
                }
            }
            raw.push((exps, coeff));
        }
        let mut out = MultiPoly::zero(n);
        for (exps, c) in raw {
            let mut e = vec![0; n];
            for (i, k) in exps {
                e[i - 1] = k;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// Divides by `x_i − x_{i+1}` along the `x_i`-degree. Fails on a nonzero
/// remainder.
fn divide_by_difference(f: &MultiPoly, i: usize) -> Result<MultiPoly> {
    let (a, b) = (i - 1, i);
    // coefficients of x_i^k, keyed by the exponent vector with x_i removed
    let mut by_degree: BTreeMap<u32, BTreeMap<Vec<u32>, i64>> = BTreeMap::new();
    for (e, &c) in &f.terms {
        let mut rest = e.clone();
        rest[a] = 0;
        *by_degree.entry(e[a]).or_default().entry(rest).or_insert(0) += c;
    }
    let top = match by_degree.keys().next_back() {
        Some(&t) => t,
        None => return Ok(MultiPoly::zero(f.n)),
    };
    let times_next = |p: &BTreeMap<Vec<u32>, i64>| -> BTreeMap<Vec<u32>, i64> {
        p.iter()
            .map(|(e, &c)| {
                let mut g = e.clone();
                g[b] += 1;
                (g, c)
            })
            .collect()
    };
    let mut quotient = MultiPoly::zero(f.n);
    // q_{k-1} = c_k + x_{i+1} q_k
    let mut q: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for k in (1..=top).rev() {
        let mut next = times_next(&q);
        if let Some(ck) = by_degree.get(&k) {
            for (e, &c) in ck {
                *next.entry(e.clone()).or_insert(0) += c;
            }
        }
        next.retain(|_, c| *c != 0);
        for (e, &c) in &next {
            let mut g = e.clone();
            g[a] = k - 1;
            quotient.add_term(g, c);
        }
        q = next;
    }
    let mut remainder = times_next(&q);
    if let Some(c0) = by_degree.get(&0) {
        for (e, &c) in c0 {
            *remainder.entry(e.clone()).or_insert(0) += c;
        }
    }
    if remainder.values().any(|&c| c != 0) {
        return Err(Error::Invariant(format!(
            "x{} − x{} does not divide {f}",
            i,
            i + 1
        )));
    }
    Ok(quotient)
}

/// `π_i f = (x_i f − x_{i+1} s_i f)/(x_i − x_{i+1})`.
pub fn demazure(i: usize, f: &MultiPoly) -> Result<MultiPoly> {
    f.check_index(i)?;
    let n = f.n;
    let numerator = MultiPoly::variable(n, i)?
        .mul(f)?
        .sub(&MultiPoly::variable(n, i + 1)?.mul(&f.swap(i)?)?)?;
    divide_by_difference(&numerator, i)
}

/// `π̄_i = π_i − 1`.
pub fn demazure_bar(i: usize, f: &MultiPoly) -> Result<MultiPoly> {
    demazure(i, f)?.sub(f)
}

/// `π̄_{i_1} ⋯ π̄_{i_k} f`, the rightmost operator first.
pub fn apply_bar_word(word: &[usize], f: &MultiPoly) -> Result<MultiPoly> {
    let mut g = f.clone();
    for &i in word.iter().rev() {
        g = demazure_bar(i, &g)?;
    }
    Ok(g)
}

/// `π̄_w f` through a reduced word of `w`.
pub fn apply_bar(w: &GroupElement, f: &MultiPoly) -> Result<MultiPoly> {
    if w.kind() != Kind::A {
        return Err(Error::Unsupported(
            "Demazure operators are defined in type A only".into(),
        ));
    }
    apply_bar_word(&reduced_word(w), f)
}

/// `x_α = ∏_{i∈D(α)} x_1 ⋯ x_i`.
pub fn x_alpha(alpha: &Composition) -> Result<MultiPoly> {
    if alpha.is_pseudo() {
        return Err(Error::Unsupported(
            "the polynomial model needs a type A composition".into(),
        ));
    }
    let n = alpha.size();
    let d = alpha.descent_set();
    let e = (1..=n)
        .map(|j| d.iter().filter(|&i| i >= j).count() as u32)
        .collect();
    MultiPoly::monomial(n, e, 1)
}

/// `λ(d)`: the nonzero exponents sorted decreasingly.
pub fn exponent_partition(e: &[u32]) -> Vec<u32> {
    let mut l: Vec<u32> = e.iter().copied().filter(|&k| k > 0).collect();
    l.sort_unstable_by(|a, b| b.cmp(a));
    l
}

/// `x^d ≺ x^e`, comparing `λ(d)` and `λ(e)` lexicographically.
pub fn precedes(d: &[u32], e: &[u32]) -> bool {
    exponent_partition(d) < exponent_partition(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularityViolation {
    pub w: GroupElement,
    pub monomial: Vec<u32>,
    pub coeff: i64,
}

impl fmt::Display for TriangularityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w = {:?}: monomial {} with coefficient {}",
            self.w.window(),
            monomial_text(&self.monomial),
            self.coeff
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularityReport {
    pub alpha: Composition,
    pub checked: usize,
    pub violations: Vec<TriangularityViolation>,
}

impl TriangularityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Expands `π̄_w x_α` for every `w` with `D(w) ⊆ D(α)` and checks that its
/// support is `w·x_α` with coefficient 1 plus monomials strictly below
/// `x_α`.
pub fn triangularity_check(alpha: &Composition) -> Result<TriangularityReport> {
    let x = x_alpha(alpha)?;
    let lead = x.terms.keys().next().cloned().unwrap_or_default();
    let mut violations = Vec::new();
    let words = coset_words(alpha)?;
    for w in &words {
        let p = apply_bar(w, &x)?;
        let top = x.permute(w)?;
        let top = top.terms.keys().next().cloned().unwrap_or_default();
        if p.coefficient(&top) != 1 {
            violations.push(TriangularityViolation {
                w: w.clone(),
                monomial: top.clone(),
                coeff: p.coefficient(&top),
            });
        }
        for (e, &c) in &p.terms {
            if *e != top && !precedes(e, &lead) {
                violations.push(TriangularityViolation {
                    w: w.clone(),
                    monomial: e.clone(),
                    coeff: c,
                });
            }
        }
    }
    Ok(TriangularityReport {
        alpha: alpha.clone(),
        checked: words.len(),
        violations,
    })
}

fn coset_words(alpha: &Composition) -> Result<Vec<GroupElement>> {
    let d = alpha.descent_set();
    Ok(enumerate_group(Kind::A, alpha.size())?
        .into_iter()
        .filter(|w| w.descents().is_subset(d))
        .collect())
}

/// A submodule of `H_n(0)·x_β` on the basis `π̄_w x_β` for a band of `w`.
#[derive(Clone, Debug)]
pub struct PolynomialModule {
    pub shape: GeneralizedShape,
    /// `x_β` for `β` the concatenation of the components.
    pub source: MultiPoly,
    /// Reading words `w`, sorted by window.
    pub words: Vec<GroupElement>,
    /// `π̄_w x_β`, aligned with `words`.
    pub basis: Vec<MultiPoly>,
    /// `π̄_{w₀} x_β` with `w₀` the shortest word in the band.
    pub generator: MultiPoly,
    pub module: HeckeModule,
}

impl PolynomialModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape.to_string(),
            "source": self.source.to_string(),
            "generator": self.generator.to_string(),
            "basis": self
                .words
                .iter()
                .zip(&self.basis)
                .map(|(w, p)| json!({"word": w.window(), "poly": p.to_string()}))
                .collect::<Vec<_>>(),
            "module": self.module.to_json(),
        })
    }
}

/// Coordinates of `f` in the basis, read from the coefficients of the
/// leading monomials, and the residual that must vanish.
fn coordinates(
    f: &MultiPoly,
    leads: &[Vec<u32>],
    basis: &[MultiPoly],
) -> Result<(Vec<(usize, i64)>, MultiPoly)> {
    let mut residual = f.clone();
    let mut coords = Vec::new();
    for (k, lead) in leads.iter().enumerate() {
        let c = f.coefficient(lead);
        if c != 0 {
            coords.push((k, c));
            residual = residual.sub(&basis[k].scale(c))?;
        }
    }
    Ok((coords, residual))
}

/// Builds `H_n(0)·π̄_{w₀(lower)} x_{upper}` for a type A generalized shape
/// on the basis `π̄_w x_{upper}` with `D(lower) ⊆ D(w) ⊆ D(upper)`, reading
/// off the action by exact expansion.
pub fn build_polynomial_module(shape: &GeneralizedShape) -> Result<PolynomialModule> {
    if shape.kind() != Kind::A {
        return Err(Error::Unsupported(
            "the polynomial model is defined in type A only".into(),
        ));
    }
    let n = shape.size();
    let (lower, upper) = (shape.lower(), shape.upper());
    let (lo, hi) = (lower.descent_set(), upper.descent_set());
    let source = x_alpha(&upper)?;
    let mut words: Vec<GroupElement> = enumerate_group(Kind::A, n)?
        .into_iter()
        .filter(|w| {
            let d = w.descents();
            lo.is_subset(d) && d.is_subset(hi)
        })
        .collect();
    words.sort_by(|a, b| a.window().cmp(b.window()));
    limits::guard_tableaux(&format!("polynomial basis of {shape}"), words.len() as u128)?;
    let basis = words
        .iter()
        .map(|w| apply_bar(w, &source))
        .collect::<Result<Vec<_>>>()?;
    let leads = words
        .iter()
        .map(|w| {
            let p = source.permute(w)?;
            Ok(p.terms.keys().next().cloned().unwrap_or_default())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut generators = BTreeMap::new();
    for i in Kind::A.generators(n) {
        let mut cols = Vec::with_capacity(basis.len());
        for (k, b) in basis.iter().enumerate() {
            let image = demazure_bar(i, b)?;
            let (coords, residual) = coordinates(&image, &leads, &basis)?;
            if !residual.is_zero() {
                return Err(Error::Certification(format!(
                    "π̄{i} π̄_w x leaves the span for w = {:?}: residual {residual}",
                    words[k].window()
                )));
            }
            cols.push(coords);
        }
        generators.insert(i, SparseMatrix::from_columns(cols));
    }
    let w0 = descent_class(Kind::A, &lower)?.min;
    let generator = apply_bar(&w0, &source)?;
    let labels = basis.iter().map(ToString::to_string).collect();
    let module = HeckeModule::new(Kind::A, n, Some(shape.clone()), Basis::Labels(labels), generators)?;
    Ok(PolynomialModule {
        shape: shape.clone(),
        source,
        words,
        basis,
        generator,
        module,
    })
}

/// `H_n(0)·x_α` on the basis `π̄_w x_α`, `D(w) ⊆ D(α)`.
pub fn build_polynomial_m(alpha: &Composition) -> Result<PolynomialModule> {
    build_polynomial_module(&GeneralizedShape::separated(Kind::A, alpha)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub shape: GeneralizedShape,
    pub dim: usize,
    pub cyclic: bool,
    pub mismatches: Vec<String>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.cyclic && self.mismatches.is_empty()
    }
}

/// Compares the polynomial module with the tableau module of the same shape
/// under `π̄_w x ↔` the tableau with reading word `w`, and checks that the
/// distinguished element generates.
pub fn certify(poly: &PolynomialModule) -> Result<Certificate> {
    let tableaux = build_p(&poly.shape)?;
    let mut mismatches = Vec::new();
    let words: Vec<&[i32]> = poly.words.iter().map(GroupElement::window).collect();
    let reading: Vec<&[i32]> = tableaux
        .tableaux()
        .unwrap_or_default()
        .iter()
        .map(|t| t.entries())
        .collect();
    if words != reading {
        mismatches.push(format!(
            "{} polynomial basis elements against {} tableaux",
            words.len(),
            reading.len()
        ));
    } else {
        for (i, m) in poly.module.generators() {
            if tableaux.matrix(*i)? != m {
                mismatches.push(format!("generator {i} acts differently"));
            }
        }
    }
    let cyclic = match poly.basis.iter().position(|b| *b == poly.generator) {
        Some(k) => generates(&poly.module, k),
        None => false,
    };
    Ok(Certificate {
        shape: poly.shape.clone(),
        dim: poly.dim(),
        cyclic,
        mismatches,
    })
}

/// Failures of `π_i² = π_i`, `π̄_i² = −π̄_i`, the braid relations and
/// distant commutation on every monomial of degree at most `max_degree` in
/// `n` variables.
pub fn operator_relation_failures(n: usize, max_degree: u32) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    for e in exponent_vectors(n, max_degree) {
        let f = MultiPoly::monomial(n, e, 1)?;
        for i in 1..n {
            let p = demazure(i, &f)?;
            if demazure(i, &p)? != p {
                failures.push(format!("π{i}² ≠ π{i} on {f}"));
            }
            let b = demazure_bar(i, &f)?;
            if demazure_bar(i, &b)? != b.scale(-1) {
                failures.push(format!("π̄{i}² ≠ −π̄{i} on {f}"));
            }
            for j in i + 1..n {
                let ij = demazure(i, &demazure(j, &f)?)?;
                if j == i + 1 {
                    let lhs = demazure(i, &demazure(j, &demazure(i, &f)?)?)?;
                    let rhs = demazure(j, &ij)?;
                    if lhs != rhs {
                        failures.push(format!("braid π{i}π{j}π{i} fails on {f}"));
                    }
                } else if ij != demazure(j, &demazure(i, &f)?)? {
                    failures.push(format!("π{i}π{j} ≠ π{j}π{i} on {f}"));
                }
            }
        }
    }
    Ok(failures)
}

/// Every exponent vector of length `n` and total degree at most `max`.
pub fn exponent_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=max - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::build_m;
    use crate::shape::enumerate_shapes;

    fn p(text: &str) -> MultiPoly {
        MultiPoly::parse(4, text).unwrap()
    }

    /// `π_i x_i^a x_{i+1}^b` from the geometric-series expansion.
    fn closed_form(i: usize, e: &[u32]) -> MultiPoly {
        let n = e.len();
        let (a, b) = (e[i - 1], e[i]);
        let mut out = MultiPoly::zero(n);
        let mut put = |x: u32, y: u32, c: i64| {
            let mut f = e.to_vec();
            f[i - 1] = x;
            f[i] = y;
            out.add_term(f, c);
        };
        if a >= b {
            for k in 0..=a - b {
                put(a - k, b + k, 1);
            }
        } else {
            for k in 1..b - a {
                put(a + k, b - k, -1);
            }
        }
        out
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = p("x1^2*x2^2*x3 - 2*x1*x4");
        assert_eq!(f.to_string(), "x1^2*x2^2*x3 - 2*x1*x4");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(MultiPoly::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(p("3 - x2 + x2").to_string(), "3");
        assert!(MultiPoly::parse(2, "x3").is_err());
        assert!("x0".parse::<MultiPoly>().is_err());
        assert!("x1 x2".parse::<MultiPoly>().is_err());
        assert!("2**x1".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn small_values() {
        let x1 = MultiPoly::parse(2, "x1").unwrap();
        assert_eq!(demazure(1, &x1).unwrap(), MultiPoly::parse(2, "x1 + x2").unwrap());
        let sym = p("x1*x2 + x3^2*x1 + x3^2*x2");
        assert_eq!(demazure(1, &sym).unwrap(), sym);
        let x = x_alpha(&Composition::new(vec![2, 1, 1]).unwrap()).unwrap();
        assert_eq!(x, p("x1^2*x2^2*x3"));
        assert_eq!(demazure(2, &x).unwrap(), p("x1^2*x2^2*x3 + x1^2*x2*x3^2"));
        assert_eq!(demazure_bar(2, &x).unwrap(), p("x1^2*x2*x3^2"));
        assert_eq!(demazure_bar(1, &x).unwrap(), MultiPoly::zero(4));
        assert_eq!(x_alpha(&Composition::new(vec![4]).unwrap()).unwrap(), MultiPoly::one(4));
        assert_eq!(x_alpha(&Composition::new(vec![1; 4]).unwrap()).unwrap(), p("x1^3*x2^2*x3"));
        assert!(demazure(4, &x).is_err());
    }

    #[test]
    fn division_matches_closed_form() {
        for e in exponent_vectors(3, 6) {
            let f = MultiPoly::monomial(3, e.clone(), 1).unwrap();
            for i in 1..3 {
                assert_eq!(demazure(i, &f).unwrap(), closed_form(i, &e), "{f} {i}");
            }
        }
    }

    #[test]
    fn division_rejects_non_multiples() {
        let f = MultiPoly::parse(2, "x1").unwrap();
        assert!(matches!(divide_by_difference(&f, 1), Err(Error::Invariant(_))));
        let g = MultiPoly::parse(2, "x1^2 - x2^2").unwrap();
        assert_eq!(divide_by_difference(&g, 1).unwrap(), MultiPoly::parse(2, "x1 + x2").unwrap());
    }

    #[test]
    fn relations_on_low_degree() {
        assert!(operator_relation_failures(4, 4).unwrap().is_empty());
    }

    #[test]
    fn permuted_source_is_leading_term() {
        let alpha = Composition::new(vec![2, 1, 1]).unwrap();
        let x = x_alpha(&alpha).unwrap();
        for w in coset_words(&alpha).unwrap() {
            let wx = x.permute(&w).unwrap();
            let e: Vec<u32> = (1..=4)
                .map(|j| {
                    let pos = w.window().iter().position(|&v| v == j).unwrap() + 1;
                    alpha.descent_set().iter().filter(|&i| i >= pos).count() as u32
                })
                .collect();
            assert_eq!(wx, MultiPoly::monomial(4, e, 1).unwrap());
        }
    }

    #[test]
    fn triangularity_small() {
        let r = triangularity_check(&Composition::new(vec![3]).unwrap()).unwrap();
        assert_eq!(r.checked, 1);
        assert!(r.holds());
        let r = triangularity_check(&Composition::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(r.checked, 3);
        assert!(r.holds());
    }

    #[test]
    fn example_module_and_its_submodules() {
        let alpha = Composition::new(vec![2, 1, 1]).unwrap();
        let m = build_polynomial_m(&alpha).unwrap();
        assert_eq!(m.dim(), 12);
        assert!(certify(&m).unwrap().holds());
        assert_eq!(m.module.matrix(2).unwrap(), build_m(Kind::A, &alpha).unwrap().matrix(2).unwrap());
        let x = x_alpha(&alpha).unwrap();
        for (text, word) in [("[2,1]+[1]", vec![2]), ("[2]+[1,1]", vec![3]), ("[2,1,1]", vec![2, 3, 2])] {
            let shape = GeneralizedShape::parse(Kind::A, text).unwrap();
            let sub = build_polynomial_module(&shape).unwrap();
            assert_eq!(sub.source, x);
            assert_eq!(sub.generator, apply_bar_word(&word, &x).unwrap(), "{text}");
            assert!(certify(&sub).unwrap().holds(), "{text}");
        }
        let bottom = apply_bar_word(&[1, 2, 3, 1, 2], &x).unwrap();
        assert_eq!(bottom, p("x2*x3^2*x4^2"));
    }

    #[test]
    fn all_small_compositions() {
        for n in 1..=4 {
            for alpha in enumerate_shapes(n, Kind::A) {
                assert!(triangularity_check(&alpha).unwrap().holds());
                let c = certify(&build_polynomial_m(&alpha).unwrap()).unwrap();
                assert!(c.holds(), "{alpha:?}: {:?}", c.mismatches);
            }
        }
    }

    #[test]
    fn signed_input_is_rejected() {
        let b = Composition::pseudo(vec![0, 2]).unwrap();
        assert!(x_alpha(&b).is_err());
        let shape = GeneralizedShape::ribbon(Kind::B, b).unwrap();
        assert!(matches!(build_polynomial_module(&shape), Err(Error::Unsupported(_))));
    }
}
