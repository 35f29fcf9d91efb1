//! 0-Hecke modules on tableau bases: construction, relation checks,
//! filtrations, restriction, tops and twists.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::diagram_automorphism;
use crate::linalg::{Echelon, SparseMatrix};
use crate::shape::{Composition, DescentSet, GeneralizedShape, Kind, Part};
use crate::tableau::{
    enumerate_standard, merge_split, split_tableau, tableau_from_word, tau1, Split, Tableau,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    Tableaux(Vec<Tableau>),
    Labels(Vec<String>),
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Tableaux(t) => t.len(),
            Basis::Labels(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self, k: usize) -> String {
        match self {
            Basis::Tableaux(t) => t[k].to_text(),
            Basis::Labels(l) => l[k].clone(),
        }
    }
}

/// A left module over the 0-Hecke algebra, given by the matrices of the
/// generators `π̄_i` on a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeModule {
    kind: Kind,
    n: usize,
    shape: Option<GeneralizedShape>,
    basis: Basis,
    generators: BTreeMap<usize, SparseMatrix>,
}

impl HeckeModule {
    pub fn new(
        kind: Kind,
        n: usize,
        shape: Option<GeneralizedShape>,
        basis: Basis,
        generators: BTreeMap<usize, SparseMatrix>,
    ) -> Result<Self> {
        let expected: Vec<usize> = kind.generators(n);
        if generators.keys().copied().collect::<Vec<_>>() != expected {
            return Err(Error::Mismatch(format!(
                "type {kind} rank {n} needs generators {expected:?}"
            )));
        }
        if let Some((i, _)) = generators.iter().find(|(_, m)| m.dim() != basis.len()) {
            return Err(Error::Mismatch(format!("matrix {i} does not match the basis size")));
        }
        Ok(HeckeModule {
            kind,
            n,
            shape,
            basis,
            generators,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn shape(&self) -> Option<&GeneralizedShape> {
        self.shape.as_ref()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn tableaux(&self) -> Option<&[Tableau]> {
        match &self.basis {
            Basis::Tableaux(t) => Some(t),
            Basis::Labels(_) => None,
        }
    }

    pub fn generators(&self) -> &BTreeMap<usize, SparseMatrix> {
        &self.generators
    }

    pub fn matrix(&self, i: usize) -> Result<&SparseMatrix> {
        self.generators
            .get(&i)
            .ok_or_else(|| Error::Range(format!("no generator {i} in type {} rank {}", self.kind, self.n)))
    }

    pub(crate) fn set_matrix(&mut self, i: usize, m: SparseMatrix) {
        self.generators.insert(i, m);
    }

    /// Index of the basis tableau with the given reading word.
    pub fn index_of(&self, entries: &[i32]) -> Option<usize> {
        self.tableaux()?
            .binary_search_by(|t| t.entries().cmp(entries))
            .ok()
    }

    /// `π̄_w v` for a word `w = s_{i_1} ⋯ s_{i_k}` acting on a basis element.
    pub fn act_word(&self, word: &[usize], k: usize) -> Result<Vec<(usize, i64)>> {
        let mut v = vec![(k, 1)];
        for &i in word.iter().rev() {
            v = self.matrix(i)?.apply(&v);
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<String> = (0..self.dim()).map(|k| self.basis.label(k)).collect();
        let generators: serde_json::Map<String, Value> = self
            .generators
            .iter()
            .map(|(i, m)| (i.to_string(), json!(m.to_dense())))
            .collect();
        let mut v = json!({
            "kind": self.kind.name(),
            "n": self.n,
            "basis": basis,
            "generators": generators,
        });
        if let Some(s) = &self.shape {
            v["shape"] = json!(s.to_string());
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("module JSON: {what}"));
        let kind: Kind = v["kind"].as_str().ok_or_else(|| bad("kind"))?.parse()?;
        let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
        let labels: Vec<String> = v["basis"]
            .as_array()
            .ok_or_else(|| bad("basis"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("basis entry")))
            .collect::<Result<_>>()?;
        let shape = match v.get("shape").and_then(Value::as_str) {
            Some(s) => Some(GeneralizedShape::parse(kind, s)?),
            None => None,
        };
        let basis = match &shape {
            Some(s) => Basis::Tableaux(
                labels
                    .iter()
                    .map(|l| Tableau::parse(s, l))
                    .collect::<Result<_>>()?,
            ),
            None => Basis::Labels(labels),
        };
        let mut generators = BTreeMap::new();
        for (key, m) in v["generators"].as_object().ok_or_else(|| bad("generators"))? {
            let i: usize = key.parse().map_err(|_| bad("generator index"))?;
            let rows: Vec<Vec<i64>> = serde_json::from_value(m.clone()).map_err(|e| bad(&e.to_string()))?;
            if rows.len() != basis.len() || rows.iter().any(|r| r.len() != basis.len()) {
                return Err(bad("matrix shape"));
            }
            generators.insert(i, SparseMatrix::from_dense(&rows));
        }
        HeckeModule::new(kind, n, shape, basis, generators)
    }

    /// Graphviz rendering: arrows `τ → π̄_i τ`, loops for `−τ` and `0`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph module {\n");
        for k in 0..self.dim() {
            out.push_str(&format!("  n{k} [shape=box,label=\"{}\"];\n", self.basis.label(k)));
        }
        for (i, m) in &self.generators {
            for k in 0..self.dim() {
                match m.column(k) {
                    [] => out.push_str(&format!("  n{k} -> n{k} [label=\"{i}:0\",style=dashed];\n")),
                    [(r, -1)] if *r == k => out.push_str(&format!("  n{k} -> n{k} [label=\"{i}:-1\"];\n")),
                    col => {
                        for (r, v) in col {
                            let tag = if *v == 1 { String::new() } else { format!(":{v}") };
                            out.push_str(&format!("  n{k} -> n{r} [label=\"{i}{tag}\"];\n"));
                        }
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The projective indecomposable-style module on the standard tableaux of a
/// generalized shape.
pub fn build_p(shape: &GeneralizedShape) -> Result<HeckeModule> {
    let kind = shape.kind();
    let n = shape.size();
    let basis = enumerate_standard(shape)?;
    let index: HashMap<&[i32], usize> = basis
        .iter()
        .enumerate()
        .map(|(k, t)| (t.entries(), k))
        .collect();
    let rows = basis.first().map(Tableau::rows).unwrap_or_default();
    let descents: Vec<DescentSet> = basis.iter().map(|t| t.descents_in_rows(&rows)).collect();
    let mut generators = BTreeMap::new();
    for i in kind.generators(n) {
        let cols = basis
            .iter()
            .enumerate()
            .map(|(k, t)| {
                if descents[k].contains(i) {
                    vec![(k, -1)]
                } else {
                    let s = t.apply_generator(i);
                    match index.get(s.entries()) {
                        Some(&j) => vec![(j, 1)],
                        None => Vec::new(),
                    }
                }
            })
            .collect();
        generators.insert(i, SparseMatrix::from_columns(cols));
    }
    HeckeModule::new(kind, n, Some(shape.clone()), Basis::Tableaux(basis), generators)
}

/// `M_α = P_{α₁ ⊕ α₂ ⊕ ⋯}`.
pub fn build_m(kind: Kind, alpha: &Composition) -> Result<HeckeModule> {
    build_p(&GeneralizedShape::separated(kind, alpha)?)
}

/// The one-dimensional module with `π̄_i = −1` exactly for `i ∈ D(α)`.
///
/// Its basis vector is the tableau with reading word `w₁(α)⁻¹`.
pub fn build_c(kind: Kind, alpha: &Composition) -> Result<HeckeModule> {
    let n = alpha.size();
    let w = tau1(kind, alpha)?.reading_word()?.inverse();
    let beta = Composition::from_descents(w.descents(), n, kind.is_signed())?;
    let shape = GeneralizedShape::ribbon(kind, beta)?;
    let tableau = tableau_from_word(&shape, &w)
        .ok_or_else(|| Error::Invariant("inverse word lies outside its ribbon".into()))?;
    let d = alpha.descent_set();
    let generators = kind
        .generators(n)
        .into_iter()
        .map(|i| {
            let col = if d.contains(i) { vec![(0, -1)] } else { Vec::new() };
            (i, SparseMatrix::from_columns(vec![col]))
        })
        .collect();
    HeckeModule::new(kind, n, Some(shape), Basis::Tableaux(vec![tableau]), generators)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: &'static str,
    pub generators: (usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.generators;
        if self.relation == "quadratic" {
            write!(f, "quadratic relation fails for generator {i}")
        } else {
            write!(f, "{} relation fails for generators {i},{j}", self.relation)
        }
    }
}

fn alternating_product(a: &SparseMatrix, b: &SparseMatrix, len: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::identity(a.dim());
    for k in 0..len {
        acc = acc.mul(if k % 2 == 0 { a } else { b });
    }
    acc
}

/// Quadratic and braid relations of the module's Coxeter type.
pub fn check_relations(module: &HeckeModule) -> Vec<Violation> {
    let mut out = Vec::new();
    let gens: Vec<(&usize, &SparseMatrix)> = module.generators.iter().collect();
    for &(&i, m) in &gens {
        if !m.mul(m).add(m).is_zero() {
            out.push(Violation {
                relation: "quadratic",
                generators: (i, i),
            });
        }
    }
    for (x, &(&i, a)) in gens.iter().enumerate() {
        for &(&j, b) in &gens[x + 1..] {
            let order = module.kind.coxeter_order(i, j);
            let relation = match order {
                2 => "commutation",
                3 => "braid",
                _ => "long braid",
            };
            if alternating_product(a, b, order) != alternating_product(b, a, order) {
                out.push(Violation {
                    relation,
                    generators: (i, j),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentLayer {
    pub shape: Composition,
    pub basis: Vec<usize>,
}

/// Basis indices grouped by the descent set of their reading word, in
/// decreasing order of the descent set read as a binary number. The union of the first `k` groups is a submodule for
/// every `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentFiltration {
    pub layers: Vec<DescentLayer>,
}

impl DescentFiltration {
    pub fn shapes(&self) -> Vec<Composition> {
        self.layers.iter().map(|l| l.shape.clone()).collect()
    }

    /// The submodules `span(layers[..=k])`.
    pub fn chain(&self) -> Vec<Vec<usize>> {
        let mut acc = Vec::new();
        self.layers
            .iter()
            .map(|l| {
                acc.extend_from_slice(&l.basis);
                let mut s = acc.clone();
                s.sort_unstable();
                s
            })
            .collect()
    }
}

fn tableau_basis(module: &HeckeModule) -> Result<&[Tableau]> {
    module
        .tableaux()
        .ok_or_else(|| Error::Unsupported("this operation needs a tableau basis".into()))
}

/// Certifies `P_α ≅ ⊕_{β∈[α]} P_β` through the descent filtration.
pub fn filtration_by_descent(module: &HeckeModule) -> Result<DescentFiltration> {
    let shape = module
        .shape
        .clone()
        .ok_or_else(|| Error::Unsupported("module has no shape".into()))?;
    let basis = tableau_basis(module)?;
    let mut groups: BTreeMap<DescentSet, Vec<usize>> = BTreeMap::new();
    for (k, t) in basis.iter().enumerate() {
        groups.entry(t.reading_word()?.descents()).or_default().push(k);
    }
    let n = module.n;
    let mut groups: Vec<(DescentSet, Vec<usize>)> = groups.into_iter().collect();
    groups.sort_by_key(|(d, _)| std::cmp::Reverse(d.bits()));
    let layers: Vec<DescentLayer> = groups
        .into_iter()
        .map(|(d, basis)| {
            Ok(DescentLayer {
                shape: Composition::from_descents(d, n, module.kind.is_signed())?,
                basis,
            })
        })
        .collect::<Result<_>>()?;
    let filtration = DescentFiltration { layers };
    let labels: BTreeSet<Composition> = filtration.shapes().into_iter().collect();
    let bracket: BTreeSet<Composition> = shape.bracket().into_iter().collect();
    if labels != bracket {
        return Err(Error::Certification(format!(
            "descent groups of {shape} do not match its bracket set"
        )));
    }
    for sub in filtration.chain() {
        for (i, m) in &module.generators {
            if let Some(k) = m.preserves(&sub) {
                return Err(Error::Certification(format!(
                    "generator {i} moves {} out of its filtration layer",
                    basis[k]
                )));
            }
        }
    }
    for layer in &filtration.layers {
        let target = build_p(&GeneralizedShape::ribbon(module.kind, layer.shape.clone())?)?;
        let target_basis = tableau_basis(&target)?;
        if target_basis.len() != layer.basis.len()
            || target_basis
                .iter()
                .zip(&layer.basis)
                .any(|(t, &k)| t.entries() != basis[k].entries())
        {
            return Err(Error::Certification(format!(
                "layer {} does not carry the tableaux of its ribbon",
                layer.shape
            )));
        }
        for (i, m) in &module.generators {
            if m.restrict(&layer.basis) != target.generators[i] {
                return Err(Error::Certification(format!(
                    "generator {i} acts differently on layer {}",
                    layer.shape
                )));
            }
        }
    }
    Ok(filtration)
}

/// One block of a restriction: the tableaux sharing one decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionBlock {
    pub beta: GeneralizedShape,
    pub gamma: GeneralizedShape,
    pub basis: Vec<usize>,
}

/// Certifies `P_α↓ ≅ ⊕ P_β ⊗ P_γ` over the parabolic subalgebra that omits
/// generator `m`; returns the blocks in basis order of first appearance.
pub fn restrict_p(shape: &GeneralizedShape, m: usize) -> Result<Vec<RestrictionBlock>> {
    if shape.kind() != Kind::A {
        return Err(Error::Unsupported("restriction is implemented in type A".into()));
    }
    let module = build_p(shape)?;
    let basis = tableau_basis(&module)?;
    let n = shape.size();
    let splits: Vec<Split> = basis
        .iter()
        .map(|t| split_tableau(t, m))
        .collect::<Result<_>>()?;
    let mut order: Vec<Vec<Part>> = Vec::new();
    let mut blocks: HashMap<Vec<Part>, Vec<usize>> = HashMap::new();
    for (k, s) in splits.iter().enumerate() {
        let entry = blocks.entry(s.assignment.clone()).or_insert_with(|| {
            order.push(s.assignment.clone());
            Vec::new()
        });
        entry.push(k);
    }
    let mut out = Vec::new();
    for assignment in order {
        let members = &blocks[&assignment];
        let first = &splits[members[0]];
        let beta = first.lower.shape().clone();
        let gamma = first.upper.shape().clone();
        let pb = build_p(&beta)?;
        let pg = build_p(&gamma)?;
        if pb.dim() * pg.dim() != members.len() {
            return Err(Error::Certification(format!(
                "block {beta} x {gamma} has {} tableaux, expected {}",
                members.len(),
                pb.dim() * pg.dim()
            )));
        }
        let mut pairs = BTreeSet::new();
        for &k in members {
            let s = &splits[k];
            let a = pb.index_of(s.lower.entries()).ok_or_else(|| {
                Error::Certification(format!("{} splits into a non-standard lower part", basis[k]))
            })?;
            let b = pg.index_of(s.upper.entries()).ok_or_else(|| {
                Error::Certification(format!("{} splits into a non-standard upper part", basis[k]))
            })?;
            pairs.insert((a, b));
            for i in (1..n).filter(|&i| i != m) {
                let (factor, local, side) = if i < m {
                    (&pb, i, Part::Beta)
                } else {
                    (&pg, i - m, Part::Gamma)
                };
                let here = if side == Part::Beta { a } else { b };
                let image: Vec<(usize, i64)> = factor.generators[&local]
                    .column(here)
                    .iter()
                    .map(|&(r, v)| {
                        let (lower, upper) = if side == Part::Beta {
                            (&tableau_basis(&pb)?[r], &s.upper)
                        } else {
                            (&s.lower, &tableau_basis(&pg)?[r])
                        };
                        let merged = merge_split(
                            shape,
                            &Split {
                                lower: lower.clone(),
                                upper: upper.clone(),
                                assignment: assignment.clone(),
                            },
                        )?;
                        let idx = module.index_of(merged.entries()).ok_or_else(|| {
                            Error::Certification(format!("{merged} is not a basis tableau"))
                        })?;
                        Ok((idx, v))
                    })
                    .collect::<Result<_>>()?;
                let mut image = image;
                image.sort_unstable();
                if module.generators[&i].column(k) != image.as_slice() {
                    return Err(Error::Certification(format!(
                        "generator {i} on {} differs from the tensor action",
                        basis[k]
                    )));
                }
            }
        }
        if pairs.len() != members.len() {
            return Err(Error::Certification(format!("block {beta} x {gamma} repeats a pair")));
        }
        out.push(RestrictionBlock {
            beta,
            gamma,
            basis: members.clone(),
        });
    }
    Ok(out)
}

/// Labels `{i : λ_i = −1}` of the covectors `φ` with `φ∘π̄_i = λ_i φ`,
/// each with the dimension of its solution space.
pub fn one_dim_quotients(module: &HeckeModule) -> BTreeMap<DescentSet, usize> {
    let gens: Vec<(usize, &SparseMatrix)> = module.generators.iter().map(|(i, m)| (*i, m)).collect();
    let mut out = BTreeMap::new();
    fn go(
        depth: usize,
        gens: &[(usize, &SparseMatrix)],
        system: Echelon,
        label: DescentSet,
        out: &mut BTreeMap<DescentSet, usize>,
    ) {
        if system.nullity() == 0 {
            return;
        }
        let Some(&(i, m)) = gens.get(depth) else {
            out.insert(label, system.nullity());
            return;
        };
        for lambda in [0i64, -1] {
            let mut next = system.clone();
            for c in 0..m.dim() {
                let mut row: Vec<(usize, i64)> = m.column(c).to_vec();
                row.push((c, -lambda));
                next.push(&row);
            }
            let label = if lambda == -1 { label.with(i) } else { label };
            go(depth + 1, gens, next, label, out);
        }
    }
    go(0, &gens, Echelon::new(module.dim()), DescentSet::EMPTY, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// `π̄_i ↦ −π_i = −(π̄_i + 1)`.
    Theta,
    /// `π̄_i ↦ π̄_{σ(i)}` for the diagram automorphism `σ`.
    Phi,
}

impl std::str::FromStr for Twist {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theta" => Ok(Twist::Theta),
            "phi" => Ok(Twist::Phi),
            _ => Err(Error::Parse(format!("unknown twist `{s}`"))),
        }
    }
}

pub fn twist(module: &HeckeModule, which: Twist) -> Result<HeckeModule> {
    let mut out = module.clone();
    match which {
        Twist::Theta => {
            let id = SparseMatrix::identity(module.dim());
            for (i, m) in &module.generators {
                out.set_matrix(*i, m.add(&id).scale(-1));
            }
        }
        Twist::Phi => {
            for (i, j) in diagram_automorphism(module.kind, module.n)? {
                out.set_matrix(i, module.generators[&j].clone());
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `T·M_i = M′_{σ(i)}·T`.
    Direct,
    /// Arrows reversed; `−τ` loops away from arrow heads exchanged with
    /// `0` loops.
    Antidirect,
}

fn functional(m: &SparseMatrix, k: usize) -> Option<Option<(usize, i64)>> {
    match m.column(k) {
        [] => Some(None),
        [e] => Some(Some(*e)),
        _ => None,
    }
}

/// Checks that `candidate` (basis index of `module1` ↦ basis index of
/// `module2`) intertwines the actions up to the generator relabelling.
pub fn intertwiner_check(
    module1: &HeckeModule,
    module2: &HeckeModule,
    candidate: &[usize],
    index_map: &BTreeMap<usize, usize>,
    mode: Mode,
) -> Result<()> {
    let fail = |msg: String| Err(Error::Certification(msg));
    if candidate.len() != module1.dim() {
        return fail("candidate map has the wrong length".into());
    }
    let distinct: BTreeSet<usize> = candidate.iter().copied().collect();
    if distinct.len() != candidate.len() || candidate.iter().any(|&c| c >= module2.dim()) {
        return fail("candidate map is not injective into the target basis".into());
    }
    if mode == Mode::Antidirect && module1.dim() != module2.dim() {
        return fail("arrow reversal needs equal dimensions".into());
    }
    for (&i, m1) in &module1.generators {
        let j = *index_map.get(&i).unwrap_or(&i);
        let m2 = module2.matrix(j)?;
        match mode {
            Mode::Direct => {
                for k in 0..module1.dim() {
                    let mut lhs: Vec<(usize, i64)> =
                        m1.column(k).iter().map(|&(r, v)| (candidate[r], v)).collect();
                    lhs.sort_unstable();
                    if lhs.as_slice() != m2.column(candidate[k]) {
                        return fail(format!(
                            "generator {i} on {} is not intertwined",
                            module1.basis.label(k)
                        ));
                    }
                }
            }
            Mode::Antidirect => {
                let mut arrows1 = BTreeSet::new();
                let mut arrows2 = BTreeSet::new();
                let mut heads1 = BTreeSet::new();
                let mut columns = Vec::with_capacity(module1.dim());
                for k in 0..module1.dim() {
                    let (Some(a), Some(b)) = (functional(m1, k), functional(m2, candidate[k])) else {
                        return fail(format!("generator {i} is not a functional graph"));
                    };
                    if let Some((r, 1)) = a.filter(|&(r, _)| r != k) {
                        arrows1.insert((candidate[r], candidate[k]));
                        heads1.insert(r);
                    }
                    if let Some((r, 1)) = b.filter(|&(r, _)| r != candidate[k]) {
                        arrows2.insert((candidate[k], r));
                    }
                    columns.push((a, b));
                }
                for (k, (a, b)) in columns.into_iter().enumerate() {
                    let isolated_negative = a == Some((k, -1)) && !heads1.contains(&k);
                    if isolated_negative != b.is_none() {
                        return fail(format!(
                            "loop of generator {i} at {} is not exchanged",
                            module1.basis.label(k)
                        ));
                    }
                }
                if arrows1 != arrows2 {
                    return fail(format!("arrows of generator {i} are not reversed"));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthLevel {
    pub shift: usize,
    pub basis: Vec<usize>,
    pub descents: Vec<DescentSet>,
}

/// Basis tableaux by the length of their reading word, shortest first.
/// The `k`-th submodule is the union of `levels[k..]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthFiltration {
    pub levels: Vec<LengthLevel>,
}

impl LengthFiltration {
    pub fn chain(&self) -> Vec<Vec<usize>> {
        (0..self.levels.len())
            .map(|k| {
                let mut v: Vec<usize> = self.levels[k..].iter().flat_map(|l| l.basis.clone()).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

pub fn length_filtration(module: &HeckeModule, generator: usize) -> Result<LengthFiltration> {
    let basis = tableau_basis(module)?;
    if generator >= basis.len() {
        return Err(Error::Range(format!("no basis element {generator}")));
    }
    let lengths: Vec<usize> = basis
        .iter()
        .map(|t| Ok(t.reading_word()?.length()))
        .collect::<Result<_>>()?;
    let base = lengths[generator];
    if let Some(k) = (0..basis.len()).find(|&k| lengths[k] < base) {
        return Err(Error::Certification(format!(
            "{} is shorter than the generator",
            basis[k]
        )));
    }
    let mut by_level: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &l) in lengths.iter().enumerate() {
        by_level.entry(l - base).or_default().push(k);
    }
    let levels: Vec<LengthLevel> = by_level
        .into_iter()
        .map(|(shift, basis_idx)| LengthLevel {
            shift,
            descents: basis_idx.iter().map(|&k| basis[k].descents()).collect(),
            basis: basis_idx,
        })
        .collect();
    let filtration = LengthFiltration { levels };
    for (i, m) in &module.generators {
        for sub in filtration.chain() {
            if let Some(k) = m.preserves(&sub) {
                return Err(Error::Certification(format!(
                    "generator {i} lowers the length of {}",
                    basis[k]
                )));
            }
        }
        for level in &filtration.levels {
            let quotient = m.restrict(&level.basis);
            for (p, d) in level.descents.iter().enumerate() {
                let expected: Vec<(usize, i64)> = if d.contains(*i) { vec![(p, -1)] } else { Vec::new() };
                if quotient.column(p) != expected.as_slice() {
                    return Err(Error::Certification(format!(
                        "generator {i} on {} is not diagonal modulo longer tableaux",
                        basis[level.basis[p]]
                    )));
                }
            }
        }
    }
    Ok(filtration)
}

/// Whether repeated application of the generators to `start` reaches every
/// basis element.
pub fn generates(module: &HeckeModule, start: usize) -> bool {
    let mut seen = vec![false; module.dim()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(k) = queue.pop_front() {
        for m in module.generators.values() {
            for &(r, _) in m.column(k) {
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::descent_class;
    use crate::shape::{enumerate_generalized, enumerate_shapes};
    use crate::tableau::{tau0, theta_map};

    fn comp(kind: Kind, parts: &[usize]) -> Composition {
        Composition::of_kind(kind, parts.to_vec()).unwrap()
    }

    fn ribbon(kind: Kind, parts: &[usize]) -> GeneralizedShape {
        GeneralizedShape::ribbon(kind, comp(kind, parts)).unwrap()
    }

    #[test]
    fn small_module_dimensions() {
        assert_eq!(build_p(&ribbon(Kind::A, &[2, 1, 1])).unwrap().dim(), 3);
        assert_eq!(build_p(&ribbon(Kind::A, &[1, 2, 1])).unwrap().dim(), 5);
        assert_eq!(build_m(Kind::A, &comp(Kind::A, &[1, 1, 1, 1])).unwrap().dim(), 24);
        assert_eq!(build_m(Kind::B, &comp(Kind::B, &[0, 1, 1, 1])).unwrap().dim(), 48);
        let trivial = build_p(&ribbon(Kind::A, &[4])).unwrap();
        assert!(trivial.generators().values().all(SparseMatrix::is_zero));
    }

    #[test]
    fn p211_arrows() {
        let p = build_p(&ribbon(Kind::A, &[2, 1, 1])).unwrap();
        let words: Vec<Vec<i32>> = p.tableaux().unwrap().iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(words, vec![vec![1, 4, 3, 2], vec![2, 4, 3, 1], vec![3, 4, 2, 1]]);
        let source = p.index_of(&[1, 4, 3, 2]).unwrap();
        let second = p.index_of(&[2, 4, 3, 1]).unwrap();
        let sink = p.index_of(&[3, 4, 2, 1]).unwrap();
        assert_eq!(p.matrix(1).unwrap().column(source), &[(second, 1)]);
        assert!(p.matrix(3).unwrap().column(sink).is_empty());
    }

    #[test]
    fn relations_hold_and_corruption_is_caught() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for g in enumerate_generalized(kind, n, 3) {
                    let p = build_p(&g).unwrap();
                    assert!(check_relations(&p).is_empty(), "{g:?}");
                }
            }
        }
        let mut p = build_p(&ribbon(Kind::A, &[1, 2, 1])).unwrap();
        let mut m = p.matrix(2).unwrap().clone();
        m.set_column(0, vec![(0, 1)]);
        p.set_matrix(2, m);
        assert!(!check_relations(&p).is_empty());
    }

    #[test]
    fn dimensions_match_classes() {
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let p = build_p(&GeneralizedShape::ribbon(kind, alpha.clone()).unwrap()).unwrap();
                    assert_eq!(p.dim(), descent_class(kind, &alpha).unwrap().elements.len());
                    let m = build_m(kind, &alpha).unwrap();
                    let sum: usize = alpha
                        .coarsenings()
                        .iter()
                        .map(|b| descent_class(kind, b).unwrap().elements.len())
                        .sum();
                    assert_eq!(m.dim(), sum);
                }
            }
        }
    }

    #[test]
    fn descent_filtrations() {
        let s = GeneralizedShape::parse(Kind::A, "[2]+[2]").unwrap();
        let f = filtration_by_descent(&build_p(&s).unwrap()).unwrap();
        let labels: Vec<String> = f.shapes().iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, vec!["[2,2]", "[4]"]);
        let s = GeneralizedShape::parse(Kind::A, "[1]+[1,1]+[2,1]").unwrap();
        let f = filtration_by_descent(&build_p(&s).unwrap()).unwrap();
        let labels: Vec<String> = f.shapes().iter().map(|c| c.compact()).collect();
        assert_eq!(labels, vec!["11121", "2121", "1131", "231"]);
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for g in enumerate_generalized(kind, n, 3) {
                    filtration_by_descent(&build_p(&g).unwrap()).unwrap();
                }
            }
        }
    }

    #[test]
    fn restrictions() {
        let blocks = restrict_p(&ribbon(Kind::A, &[2]), 1).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].beta.to_string(), "[1]");
        let s = ribbon(Kind::A, &[1, 3]);
        for m in 0..=4 {
            let blocks = restrict_p(&s, m).unwrap();
            let expected: Vec<_> = s
                .decompositions()
                .into_iter()
                .filter(|d| d.beta.size() == m)
                .map(|d| (d.beta.to_string(), d.gamma.to_string()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let got: BTreeSet<_> = blocks
                .iter()
                .map(|b| (b.beta.to_string(), b.gamma.to_string()))
                .collect();
            assert_eq!(got.into_iter().collect::<Vec<_>>(), expected);
        }
    }

    #[test]
    fn tops() {
        for n in 1..=4 {
            for alpha in enumerate_shapes(n, Kind::A) {
                let p = build_p(&GeneralizedShape::ribbon(Kind::A, alpha.clone()).unwrap()).unwrap();
                let tops = one_dim_quotients(&p);
                assert_eq!(tops, BTreeMap::from([(alpha.descent_set(), 1)]));
                let m = build_m(Kind::A, &alpha).unwrap();
                let labels: BTreeSet<DescentSet> = one_dim_quotients(&m).into_keys().collect();
                let expected: BTreeSet<DescentSet> = alpha.coarsenings().iter().map(|b| b.descent_set()).collect();
                assert_eq!(labels, expected);
                let c = build_c(Kind::A, &alpha).unwrap();
                assert_eq!(c.tableaux().unwrap()[0], tau1(Kind::A, &alpha.reverse().unwrap()).unwrap());
            }
        }
        for kind in [Kind::B, Kind::D] {
            for alpha in enumerate_shapes(3, kind) {
                let p = build_p(&GeneralizedShape::ribbon(kind, alpha.clone()).unwrap()).unwrap();
                assert_eq!(one_dim_quotients(&p), BTreeMap::from([(alpha.descent_set(), 1)]));
                let c = build_c(kind, &alpha).unwrap();
                assert_eq!(c.tableaux().unwrap()[0].descents(), alpha.descent_set());
            }
        }
        let sign = build_c(Kind::A, &comp(Kind::A, &[1, 1, 1])).unwrap();
        assert!(sign.generators().values().all(|m| m.get(0, 0) == -1));
    }

    #[test]
    fn twists() {
        for n in 1..=4 {
            for alpha in enumerate_shapes(n, Kind::A) {
                let c = build_c(Kind::A, &alpha).unwrap();
                let t = twist(&c, Twist::Theta).unwrap();
                assert_eq!(one_dim_quotients(&t).into_keys().collect::<Vec<_>>(), vec![alpha.complement().descent_set()]);
                assert_eq!(twist(&t, Twist::Theta).unwrap(), c);
                let p = build_p(&GeneralizedShape::ribbon(Kind::A, alpha.clone()).unwrap()).unwrap();
                let tp = twist(&twist(&p, Twist::Theta).unwrap(), Twist::Phi).unwrap();
                assert!(check_relations(&tp).is_empty());
                let top: Vec<_> = one_dim_quotients(&tp).into_keys().collect();
                assert_eq!(top, vec![alpha.transpose().unwrap().descent_set()]);
            }
        }
    }

    #[test]
    fn arrow_reversal() {
        for n in 1..=4 {
            for alpha in enumerate_shapes(n, Kind::A) {
                let p = build_p(&GeneralizedShape::ribbon(Kind::A, alpha.clone()).unwrap()).unwrap();
                let q = build_p(&GeneralizedShape::ribbon(Kind::A, alpha.transpose().unwrap()).unwrap()).unwrap();
                let map: Vec<usize> = p
                    .tableaux()
                    .unwrap()
                    .iter()
                    .map(|t| q.index_of(theta_map(t).unwrap().entries()).unwrap())
                    .collect();
                intertwiner_check(&p, &q, &map, &BTreeMap::new(), Mode::Antidirect).unwrap();
                let id: Vec<usize> = (0..p.dim()).collect();
                intertwiner_check(&p, &p, &id, &BTreeMap::new(), Mode::Direct).unwrap();
                if p.dim() > 1 {
                    assert!(intertwiner_check(&p, &p, &id, &BTreeMap::new(), Mode::Antidirect).is_err());
                }
            }
        }
    }

    #[test]
    fn p_embeds_in_m() {
        for alpha in enumerate_shapes(4, Kind::A) {
            let p = build_p(&GeneralizedShape::ribbon(Kind::A, alpha.clone()).unwrap()).unwrap();
            let m = build_m(Kind::A, &alpha).unwrap();
            let map: Vec<usize> = p
                .tableaux()
                .unwrap()
                .iter()
                .map(|t| m.index_of(t.entries()).unwrap())
                .collect();
            intertwiner_check(&p, &m, &map, &BTreeMap::new(), Mode::Direct).unwrap();
        }
    }

    #[test]
    fn length_filtrations() {
        let p = build_p(&ribbon(Kind::A, &[2, 1, 1])).unwrap();
        let f = length_filtration(&p, 0).unwrap();
        let dims: Vec<usize> = f.chain().iter().map(Vec::len).collect();
        assert_eq!(dims, vec![3, 2, 1]);
        for kind in [Kind::A, Kind::B, Kind::D] {
            for n in kind.min_rank()..=4 {
                for alpha in enumerate_shapes(n, kind) {
                    let p = build_p(&GeneralizedShape::ribbon(kind, alpha.clone()).unwrap()).unwrap();
                    let start = p.index_of(tau0(kind, &alpha).unwrap().entries()).unwrap();
                    let f = length_filtration(&p, start).unwrap();
                    assert_eq!(f.levels.iter().map(|l| l.basis.len()).sum::<usize>(), p.dim());
                    assert!(generates(&p, start));
                }
            }
        }
        let c = build_c(Kind::A, &comp(Kind::A, &[2, 1])).unwrap();
        assert_eq!(length_filtration(&c, 0).unwrap().levels.len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let p = build_p(&GeneralizedShape::parse(Kind::B, "[0,2]+[1]").unwrap()).unwrap();
        let back = HeckeModule::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let tw = twist(&p, Twist::Theta).unwrap();
        assert_eq!(HeckeModule::from_json(&tw.to_json()).unwrap(), tw);
        assert!(p.to_dot().starts_with("digraph"));
    }
}
