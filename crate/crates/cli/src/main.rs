use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_ribbon::demazure::{
    apply_bar_word, build_polynomial_m, build_polynomial_module, certify, demazure, x_alpha,
    MultiPoly,
};
use hecke_ribbon::group::{descent_class, enumerate_group, group_order, reduced_word};
use hecke_ribbon::hecke::{
    build_c, build_m, build_p, check_relations, filtration_by_descent, length_filtration, one_dim_quotients,
    restrict_p, twist, Twist,
};
use hecke_ribbon::series::algebra::{coproduct_generalized, ribbon_schur};
use hecke_ribbon::series::identities::{graded_band, q_ribbon, ribbon_interval, Method};
use hecke_ribbon::series::truncated::{evaluate_commutative, evaluate_noncommutative, Window};
use hecke_ribbon::series::{antipode, coproduct, multiply, pairing, skew, Basis, QPoly, SeriesElement, Side, Tensor};
use hecke_ribbon::shape::enumerate_shapes;
use hecke_ribbon::tableau::{enumerate_semistandard, enumerate_standard, tau0, tau1, theta_map};
use hecke_ribbon::verify::{criterion, criterion_title, verify_all, Report, Suite, CRITERIA};
use hecke_ribbon::{limits, Composition, Error, GeneralizedShape, GroupElement, HeckeModule, Kind};

#[derive(Parser)]
#[command(name = "hecke-ribbon", version, about = "Ribbon tableaux, 0-Hecke modules and their characteristics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coxeter type.
    #[arg(long = "type", global = true, default_value = "A", value_parser = parse_kind)]
    kind: Kind,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Specializes q in every printed coefficient.
    #[arg(long, global = true)]
    q_at: Option<i64>,
    /// Accepted for compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on enumerated group elements and tableaux.
    #[arg(long, global = true)]
    max_enum: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Shapes: descents, brackets, decompositions.
    Shape {
        #[command(subcommand)]
        action: ShapeCmd,
    },
    /// Group elements given by their windows.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Standard and semistandard tableaux.
    Tableau {
        #[command(subcommand)]
        action: TableauCmd,
    },
    /// 0-Hecke modules on tableaux.
    Module {
        #[command(subcommand)]
        action: ModuleCmd,
    },
    /// Quasisymmetric and noncommutative symmetric series.
    Series {
        #[command(subcommand)]
        action: SeriesCmd,
    },
    /// Demazure operators on polynomials.
    Demazure {
        #[command(subcommand)]
        action: DemazureCmd,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        action: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum ShapeCmd {
    /// Descent set, bracket set and derived shapes of a generalized ribbon.
    Info {
        #[arg(long)]
        shape: String,
    },
    /// All shapes of one size.
    List {
        #[arg(long)]
        size: usize,
    },
    /// Decompositions of a generalized ribbon.
    Decompose {
        #[arg(long)]
        shape: String,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Length statistics, descents and inverse of a window such as `2,-1,3`.
    Info {
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Order and length distribution of the group of rank n.
    Order {
        #[arg(long)]
        n: usize,
    },
    /// The descent class of a shape.
    Class {
        #[arg(long)]
        shape: String,
    },
}

#[derive(Subcommand)]
enum TableauCmd {
    /// Standard tableaux, in basis order.
    List {
        #[arg(long)]
        shape: String,
    },
    /// Semistandard tableaux with entries in lo..=hi.
    Semistandard {
        #[arg(long)]
        shape: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: i32,
        #[arg(long)]
        hi: i32,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// The extreme tableaux of a ribbon and their images under θ.
    Extremes {
        #[arg(long)]
        shape: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    P,
    M,
    C,
}

#[derive(Args)]
struct ModuleSpec {
    #[arg(long)]
    shape: String,
    /// P on a generalized shape, M or C on a ribbon.
    #[arg(long, value_enum, default_value_t = Family::P)]
    family: Family,
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Basis and generator matrices.
    Build(ModuleSpec),
    /// Checks the defining relations.
    Check(ModuleSpec),
    /// Descent and length filtrations.
    Filtrate(ModuleSpec),
    /// Restriction to the parabolic subalgebra without generator m.
    Restrict {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        at: usize,
    },
    /// Twists by θ or φ, with the one-dimensional quotients.
    Twist {
        #[command(flatten)]
        spec: ModuleSpec,
        #[arg(long, value_parser = parse_twist)]
        by: Vec<Twist>,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Rewrites an element in another basis.
    Convert {
        #[arg(long)]
        elem: String,
        #[arg(long = "to", value_parser = parse_basis)]
        to: Basis,
    },
    /// Product of two elements.
    Mul {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Coproduct of an element, or of `s` on a generalized shape.
    Comul {
        #[arg(long)]
        elem: Option<String>,
        #[arg(long)]
        shape: Option<String>,
    },
    /// Duality pairing.
    Pair {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Antipode (type A).
    Antipode {
        #[arg(long)]
        elem: String,
    },
    /// Skew of `num` by `den` through the coproduct.
    Skew {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long, default_value = "right", value_parser = parse_side)]
        side: Side,
    },
    /// Evaluation in the variables of a window, truncated in degree.
    Eval {
        #[arg(long)]
        elem: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i32>,
        #[arg(long)]
        hi: Option<i32>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The q-ribbon number of a composition.
    Qribbon {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value = "det", value_parser = parse_method)]
        method: Method,
    },
    /// Ribbon interval identity (`--beta`, `--gamma`) or graded band identity (`--shape`).
    Identity {
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        shape: Option<String>,
    },
    /// Ribbon Schur function of a generalized shape.
    Ribbon {
        #[arg(long)]
        shape: String,
    },
}

#[derive(Subcommand)]
enum DemazureCmd {
    /// Applies operators along a word, rightmost first.
    Apply {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        word: Vec<usize>,
        /// Use π̄_i = π_i − 1.
        #[arg(long)]
        bar: bool,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// The monomial x_α.
    Xalpha {
        #[arg(long)]
        shape: String,
    },
    /// The polynomial module of a generalized shape (P) or the cyclic
    /// module of x_α (M), certified against tableaux.
    Module {
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = Family::P)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// One suite.
    Suite {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Every suite that applies to the type.
    All {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Acceptance criteria at their pinned sizes.
    Acceptance {
        #[arg(long)]
        criterion: Option<usize>,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_twist(s: &str) -> Result<Twist, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced.
struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
    passed: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            dot: None,
            passed: true,
        }
    }
}

enum Failure {
    Usage(String),
    Kernel(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Ctx {
    kind: Kind,
    q_at: Option<i64>,
}

impl Ctx {
    fn shape(&self, text: &str) -> Run<GeneralizedShape> {
        Ok(GeneralizedShape::parse(self.kind, text)?)
    }

    fn ribbon(&self, text: &str) -> Run<Composition> {
        let shape = self.shape(text)?;
        shape
            .as_ribbon()
            .cloned()
            .ok_or_else(|| Failure::Usage(format!("`{text}` is not a single ribbon")))
    }

    fn elem(&self, text: &str) -> Run<SeriesElement> {
        Ok(SeriesElement::parse(self.kind, text)?)
    }

    fn series(&self, x: &SeriesElement) -> Output {
        let x = match self.q_at {
            Some(q) => x.specialize(q),
            None => x.clone(),
        };
        Output::new(x.to_json(), x.to_string())
    }

    fn qpoly(&self, p: &QPoly) -> Value {
        match self.q_at {
            Some(q) => json!(p.eval(q)),
            None => json!(p),
        }
    }

    fn qtext(&self, p: &QPoly) -> String {
        match self.q_at {
            Some(q) => p.eval(q).to_string(),
            None => p.to_string(),
        }
    }

    fn tensor(&self, t: &Tensor) -> Output {
        let mut t = t.clone();
        if let Some(q) = self.q_at {
            for c in t.terms.values_mut() {
                *c = QPoly::constant(c.eval(q));
            }
            t.terms.retain(|_, c| !c.is_zero());
        }
        Output::new(t.to_json(), t.to_string())
    }

    fn module(&self, spec: &ModuleSpec) -> Run<HeckeModule> {
        Ok(match spec.family {
            Family::P => build_p(&self.shape(&spec.shape)?)?,
            Family::M => build_m(self.kind, &self.ribbon(&spec.shape)?)?,
            Family::C => build_c(self.kind, &self.ribbon(&spec.shape)?)?,
        })
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    strings(items).join("\n")
}

fn module_output(m: &HeckeModule) -> Output {
    let mut text = format!("dimension {}\n", m.dim());
    for k in 0..m.dim() {
        text.push_str(&format!("  {k}: {}\n", m.basis().label(k)));
    }
    for (i, mat) in m.generators() {
        text.push_str(&format!("π̄{i}:\n"));
        for row in mat.to_dense() {
            text.push_str(&format!("  {}\n", strings(row).join(" ")));
        }
    }
    Output {
        json: m.to_json(),
        text: text.trim_end().to_string(),
        dot: Some(m.to_dot()),
        passed: true,
    }
}

fn report_output(reports: Vec<Report>) -> Output {
    let passed = reports.iter().all(Report::passed);
    let checks: usize = reports.iter().map(|r| r.checked).sum();
    let ok = reports.iter().filter(|r| r.passed()).count();
    let text = format!(
        "{}\n{ok} of {} suites pass, {checks} checks",
        lines(&reports),
        reports.len()
    );
    let json = json!({
        "passed": passed,
        "suites": reports.len(),
        "suites_passed": ok,
        "checks": checks,
        "reports": reports,
    });
    Output {
        json,
        text,
        dot: None,
        passed,
    }
}

fn shape_cmd(ctx: &Ctx, action: &ShapeCmd) -> Run<Output> {
    Ok(match action {
        ShapeCmd::Info { shape } => {
            let s = ctx.shape(shape)?;
            let (lo, hi) = s.band();
            let mut json = json!({
                "shape": s.to_string(),
                "type": ctx.kind.name(),
                "size": s.size(),
                "lower": s.lower().to_string(),
                "upper": s.upper().to_string(),
                "band": [lo.to_string(), hi.to_string()],
                "bracket": strings(s.bracket()),
            });
            let mut text = format!(
                "{s}: size {}, band {lo} ⊆ D ⊆ {hi}\nbracket: {}",
                s.size(),
                strings(s.bracket()).join(" ")
            );
            if let Some(a) = s.as_ribbon() {
                json["descents"] = json!(a.descent_set().to_string());
                json["complement"] = json!(a.complement().to_string());
                text.push_str(&format!("\ndescents {}, complement {}", a.descent_set(), a.complement()));
                if ctx.kind == Kind::A {
                    let (t, r) = (a.transpose()?, a.reverse()?);
                    json["transpose"] = json!(t.to_string());
                    json["reverse"] = json!(r.to_string());
                    text.push_str(&format!(", transpose {t}, reverse {r}"));
                }
            }
            Output::new(json, text)
        }
        ShapeCmd::List { size } => {
            let shapes = strings(enumerate_shapes(*size, ctx.kind));
            Output::new(json!(shapes), shapes.join("\n"))
        }
        ShapeCmd::Decompose { shape } => {
            let s = ctx.shape(shape)?;
            let ds: Vec<(String, String)> = s
                .decompositions()
                .iter()
                .map(|d| (d.beta.to_string(), d.gamma.to_string()))
                .collect();
            let json = json!(ds.iter().map(|(b, g)| json!({"beta": b, "gamma": g})).collect::<Vec<_>>());
            Output::new(json, lines(ds.iter().map(|(b, g)| format!("{b} ⊔ {g}"))))
        }
    })
}

fn element_json(w: &GroupElement) -> Value {
    let st = w.length_stats();
    json!({
        "window": w.window(),
        "length": st.length,
        "inv": st.inv,
        "neg": st.neg,
        "nsp": st.nsp,
        "descents": w.descents().to_string(),
    })
}

fn group_cmd(ctx: &Ctx, action: &GroupCmd) -> Run<Output> {
    Ok(match action {
        GroupCmd::Info { window } => {
            let w = GroupElement::parse(ctx.kind, window)?;
            let mut json = element_json(&w);
            json["inverse"] = json!(w.inverse().window());
            let mut text = format!(
                "{w}: length {}, descents {}, inverse {}",
                w.length(),
                w.descents(),
                w.inverse()
            );
            if ctx.kind == Kind::A {
                let word = reduced_word(&w);
                text.push_str(&format!(", reduced word {word:?}"));
                json["reduced_word"] = json!(word);
            }
            Output::new(json, text)
        }
        GroupCmd::Order { n } => {
            let order = group_order(ctx.kind, *n);
            let mut counts: Vec<u64> = Vec::new();
            for w in enumerate_group(ctx.kind, *n)? {
                let l = w.length();
                if counts.len() <= l {
                    counts.resize(l + 1, 0);
                }
                counts[l] += 1;
            }
            let json = json!({"order": order.to_string(), "by_length": counts});
            Output::new(json, format!("order {order}\nby length: {}", strings(&counts).join(" ")))
        }
        GroupCmd::Class { shape } => {
            let c = descent_class(ctx.kind, &ctx.ribbon(shape)?)?;
            let json = json!({
                "shape": c.shape.to_string(),
                "elements": c.elements.iter().map(element_json).collect::<Vec<_>>(),
                "min": c.min.window(),
                "max": c.max.window(),
            });
            let text = format!(
                "{} elements, min {}, max {}\n{}",
                c.elements.len(),
                c.min,
                c.max,
                lines(&c.elements)
            );
            Output::new(json, text)
        }
    })
}

fn tableau_cmd(ctx: &Ctx, action: &TableauCmd) -> Run<Output> {
    Ok(match action {
        TableauCmd::List { shape } => {
            let ts = enumerate_standard(&ctx.shape(shape)?)?;
            let json = json!(ts
                .iter()
                .map(|t| json!({"tableau": t.to_text(), "descents": t.descents().to_string()}))
                .collect::<Vec<_>>());
            Output::new(json, lines(ts.iter().map(|t| format!("{t}  D = {}", t.descents()))))
        }
        TableauCmd::Semistandard { shape, lo, hi, limit } => {
            let ts = enumerate_semistandard(&ctx.shape(shape)?, *lo..=*hi, *limit)?;
            Output::new(json!(strings(&ts)), lines(&ts))
        }
        TableauCmd::Extremes { shape } => {
            let a = ctx.ribbon(shape)?;
            let (t0, t1) = (tau0(ctx.kind, &a)?, tau1(ctx.kind, &a)?);
            let (i0, i1) = (theta_map(&t0)?, theta_map(&t1)?);
            let json = json!({
                "tau0": t0.to_text(),
                "tau1": t1.to_text(),
                "theta_tau0": i0.to_text(),
                "theta_tau1": i1.to_text(),
            });
            let text = format!("τ₀ = {t0}\nτ₁ = {t1}\nθ(τ₀) = {i0}\nθ(τ₁) = {i1}");
            Output::new(json, text)
        }
    })
}

fn module_cmd(ctx: &Ctx, action: &ModuleCmd) -> Run<Output> {
    Ok(match action {
        ModuleCmd::Build(spec) => module_output(&ctx.module(spec)?),
        ModuleCmd::Check(spec) => {
            let m = ctx.module(spec)?;
            let v = strings(check_relations(&m));
            let passed = v.is_empty();
            let text = if passed {
                format!("relations hold on {} basis elements", m.dim())
            } else {
                lines(&v)
            };
            Output {
                json: json!({"dim": m.dim(), "passed": passed, "violations": v}),
                text,
                dot: None,
                passed,
            }
        }
        ModuleCmd::Filtrate(spec) => {
            let m = ctx.module(spec)?;
            let f = filtration_by_descent(&m)?;
            let layers: Vec<Value> = f
                .layers
                .iter()
                .map(|l| json!({"shape": l.shape.to_string(), "basis": l.basis}))
                .collect();
            let mut text = lines(f.layers.iter().map(|l| format!("{}: {:?}", l.shape, l.basis)));
            let mut json = json!({"descent_layers": layers});
            if let (Family::P, Some(a)) = (spec.family, ctx.shape(&spec.shape)?.as_ribbon()) {
                let start = m
                    .index_of(tau0(ctx.kind, a)?.entries())
                    .ok_or_else(|| Error::Invariant("τ₀ is not a basis tableau".into()))?;
                let lf = length_filtration(&m, start)?;
                json["length_levels"] = json!(lf
                    .levels
                    .iter()
                    .map(|l| json!({"shift": l.shift, "basis": l.basis}))
                    .collect::<Vec<_>>());
                text.push_str("\nlength levels:");
                for l in &lf.levels {
                    text.push_str(&format!("\n  q^{}: {:?}", l.shift, l.basis));
                }
            }
            Output::new(json, text)
        }
        ModuleCmd::Restrict { shape, at } => {
            let blocks = restrict_p(&ctx.shape(shape)?, *at)?;
            let json = json!(blocks
                .iter()
                .map(|b| json!({"beta": b.beta.to_string(), "gamma": b.gamma.to_string(), "basis": b.basis}))
                .collect::<Vec<_>>());
            Output::new(json, lines(blocks.iter().map(|b| format!("{} ⊗ {}: {:?}", b.beta, b.gamma, b.basis))))
        }
        ModuleCmd::Twist { spec, by } => {
            let mut m = ctx.module(spec)?;
            for t in by {
                m = twist(&m, *t)?;
            }
            let tops: Vec<Value> = one_dim_quotients(&m)
                .into_iter()
                .map(|(d, k)| json!({"descents": d.to_string(), "multiplicity": k}))
                .collect();
            let mut out = module_output(&m);
            out.text.push_str(&format!("\none-dimensional quotients: {}", Value::from(tops.clone())));
            out.json = json!({"module": out.json, "quotients": tops});
            out
        }
    })
}

fn series_cmd(ctx: &Ctx, action: &SeriesCmd) -> Run<Output> {
    Ok(match action {
        SeriesCmd::Convert { elem, to } => ctx.series(&ctx.elem(elem)?.convert(*to)?),
        SeriesCmd::Mul { left, right } => ctx.series(&multiply(&ctx.elem(left)?, &ctx.elem(right)?)?),
        SeriesCmd::Comul { elem, shape } => match (elem, shape) {
            (Some(e), None) => ctx.tensor(&coproduct(&ctx.elem(e)?)?),
            (None, Some(s)) => ctx.tensor(&coproduct_generalized(&ctx.shape(s)?)?),
            _ => return Err(Failure::Usage("give exactly one of --elem and --shape".into())),
        },
        SeriesCmd::Pair { left, right } => {
            let v = pairing(&ctx.elem(left)?, &ctx.elem(right)?)?;
            Output::new(ctx.qpoly(&v), ctx.qtext(&v))
        }
        SeriesCmd::Antipode { elem } => ctx.series(&antipode(&ctx.elem(elem)?)?),
        SeriesCmd::Skew { num, den, side } => ctx.series(&skew(&ctx.elem(num)?, &ctx.elem(den)?, *side)?),
        SeriesCmd::Eval { elem, lo, hi, degree } => {
            let x = ctx.elem(elem)?;
            let n = x.terms().keys().map(Composition::size).max().unwrap_or(0);
            let d = Window::default_for(x.space(), n.max(1));
            let w = Window::new(lo.unwrap_or(d.lo), hi.unwrap_or(d.hi))?;
            let degree = degree.unwrap_or(n);
            let value = if x.space().is_quasi() {
                evaluate_commutative(&x, w, degree)?.to_string()
            } else {
                evaluate_noncommutative(&x, w, degree)?.to_string()
            };
            let json = json!({"window": [w.lo, w.hi], "degree": degree, "value": value});
            Output::new(json, value)
        }
        SeriesCmd::Qribbon { shape, method } => {
            let r = q_ribbon(&ctx.ribbon(shape)?, *method)?;
            Output::new(ctx.qpoly(&r), ctx.qtext(&r))
        }
        SeriesCmd::Identity { beta, gamma, shape } => {
            let report = match (beta, gamma, shape) {
                (Some(b), Some(g), None) => ribbon_interval(&ctx.ribbon(b)?, &ctx.ribbon(g)?)?,
                (None, None, Some(s)) => graded_band(&ctx.shape(s)?)?,
                _ => return Err(Failure::Usage("give --beta and --gamma, or --shape".into())),
            };
            Output {
                json: json!(report),
                text: report.to_string(),
                dot: None,
                passed: report.holds,
            }
        }
        SeriesCmd::Ribbon { shape } => ctx.series(&ribbon_schur(&ctx.shape(shape)?)?),
    })
}

fn demazure_cmd(ctx: &Ctx, action: &DemazureCmd) -> Run<Output> {
    Ok(match action {
        DemazureCmd::Apply { poly, word, bar, vars } => {
            let f: MultiPoly = poly.parse()?;
            let needed = word.iter().map(|i| i + 1).max().unwrap_or(0).max(f.n());
            let f = f.with_variables(vars.unwrap_or(needed).max(needed));
            let g = if *bar {
                apply_bar_word(word, &f)?
            } else {
                word.iter().rev().try_fold(f, |acc, &i| demazure(i, &acc))?
            };
            Output::new(g.to_json(), g.to_string())
        }
        DemazureCmd::Xalpha { shape } => {
            let x = x_alpha(&ctx.ribbon(shape)?)?;
            Output::new(x.to_json(), x.to_string())
        }
        DemazureCmd::Module { shape, family } => {
            let poly = match family {
                Family::P => build_polynomial_module(&ctx.shape(shape)?)?,
                Family::M => build_polynomial_m(&ctx.ribbon(shape)?)?,
                Family::C => return Err(Failure::Usage("polynomial modules are P or M".into())),
            };
            let c = certify(&poly)?;
            let mut out = module_output(&poly.module);
            out.text = format!(
                "generator {}\ncertified: {}\n{}",
                poly.generator,
                c.holds(),
                out.text
            );
            out.json = json!({"module": poly.to_json(), "certified": c.holds(), "mismatches": c.mismatches});
            out.passed = c.holds();
            out
        }
    })
}

fn verify_cmd(ctx: &Ctx, action: &VerifyCmd) -> Run<Output> {
    Ok(match action {
        VerifyCmd::Suite { name, max_size } => {
            let suite: Suite = name.parse()?;
            report_output(vec![suite.run(ctx.kind, *max_size)?])
        }
        VerifyCmd::All { max_size } => report_output(verify_all(ctx.kind, *max_size)?),
        VerifyCmd::Acceptance { criterion: which } => {
            let ks: Vec<usize> = match which {
                Some(k) if (1..=CRITERIA).contains(k) => vec![*k],
                Some(k) => return Err(Failure::Usage(format!("criteria are numbered 1 to {CRITERIA}, not {k}"))),
                None => (1..=CRITERIA).collect(),
            };
            let reports = ks.iter().map(|&k| criterion(k)).collect::<Result<Vec<_>, _>>()?;
            let mut out = report_output(reports);
            out.text = lines(ks.iter().zip(out.json["reports"].as_array().unwrap()).map(|(k, r)| {
                let verdict = if r["failures"].as_array().is_some_and(Vec::is_empty) { "PASS" } else { "FAIL" };
                format!("criterion {k:>2} {verdict} {}", criterion_title(*k))
            }));
            out
        }
    })
}

fn run(cli: &Cli) -> Run<Output> {
    let ctx = Ctx {
        kind: cli.global.kind,
        q_at: cli.global.q_at,
    };
    match &cli.command {
        Command::Shape { action } => shape_cmd(&ctx, action),
        Command::Group { action } => group_cmd(&ctx, action),
        Command::Tableau { action } => tableau_cmd(&ctx, action),
        Command::Module { action } => module_cmd(&ctx, action),
        Command::Series { action } => series_cmd(&ctx, action),
        Command::Demazure { action } => demazure_cmd(&ctx, action),
        Command::Verify { action } => verify_cmd(&ctx, action),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::Certification(_) | Error::Invariant(_) => 1,
        Error::Range(_) | Error::Mismatch(_) | Error::Parse(_) | Error::Unsupported(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    limits::apply_env();
    if let Some(cap) = cli.global.max_enum {
        limits::set_max_group(cap);
        limits::set_max_tableaux(cap);
    }
    match run(&cli) {
        Ok(out) => {
            let body = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("JSON values serialize"),
                Format::Text => out.text,
                Format::Dot => match out.dot {
                    Some(d) => d.trim_end().to_string(),
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(2);
                    }
                },
            };
            println!("{body}");
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Kernel(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
