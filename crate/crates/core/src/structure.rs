//! Scalar actions and convexity classification, the Boolean / convex /
//! purely-a-convex decomposition of composite models, commuting-halves and
//! associativity analysis, and bicommutant shape reports.

use std::collections::{HashMap, HashSet};

use crate::ea::{boolean_algebra_check, derive_order, FiniteEaTable};
use crate::models::{Elem, ModelExpr};
use crate::rational::{rat, Mat2, Rat};
use crate::report::ValidationReport;
use crate::sequential::{center, commutes, is_idempotent, MemberSet, SeaCheckConfig};
use crate::{Error, Result};

/// Description of the map `φ(λ) = λ·1` that induces a scalar action
/// `λ·a := a ∘ φ(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitImage {
    /// `φ(λ) = λ` in the unit interval.
    Scalar,
    /// `φ(λ) = λ·id` in the matrix interval.
    ScalarMatrix,
    /// `φ(λ) = (λ, k)`: scalars land in branch `k` of a horizontal sum.
    IntoBranch(usize),
    /// Componentwise images inside a direct sum.
    PerPart(Vec<UnitImage>),
    /// `φ(0) = 0` and `φ(λ) = e` for λ > 0. Not additive unless `e = 0`;
    /// exists to exercise the rejection path.
    Constant(Elem),
}

impl UnitImage {
    /// The canonical rule for a model, where one exists. Horizontal sums
    /// get the branch-0 rule; branch `k` rules are equally valid (the model
    /// carries several distinct actions).
    pub fn standard_for(m: &ModelExpr) -> Result<UnitImage> {
        match m {
            ModelExpr::Interval => Ok(UnitImage::Scalar),
            ModelExpr::MatrixInterval => Ok(UnitImage::ScalarMatrix),
            ModelExpr::HorizontalSum { .. } => Ok(UnitImage::IntoBranch(0)),
            ModelExpr::DirectSum { parts } => Ok(UnitImage::PerPart(
                parts.iter().map(UnitImage::standard_for).collect::<Result<_>>()?,
            )),
            other => Err(Error::Unsupported(format!(
                "no registered scalar action on {} models",
                other.kind_name()
            ))),
        }
    }

    /// Evaluates `φ(λ)` in `m`.
    pub fn apply(&self, m: &ModelExpr, lambda: &Rat) -> Result<Elem> {
        use num_traits::{One as _, Zero as _};
        if lambda < &Rat::zero() || lambda > &Rat::one() {
            return Err(Error::FamilyMismatch(format!(
                "scalar {lambda} lies outside [0, 1]"
            )));
        }
        let raw = match self {
            UnitImage::Scalar | UnitImage::ScalarMatrix | UnitImage::IntoBranch(_)
                if lambda.is_zero() =>
            {
                Elem::Zero
            }
            UnitImage::Scalar => Elem::Rat(lambda.clone()),
            UnitImage::ScalarMatrix => Elem::Mat(Mat2::scalar(lambda)),
            UnitImage::IntoBranch(k) => {
                if lambda.is_one() {
                    Elem::One
                } else {
                    Elem::branch(*k, Elem::Rat(lambda.clone()))
                }
            }
            UnitImage::PerPart(images) => {
                let ModelExpr::DirectSum { parts } = m else {
                    return Err(Error::FamilyMismatch(
                        "componentwise unit image needs a direct-sum model".into(),
                    ));
                };
                if images.len() != parts.len() {
                    return Err(Error::FamilyMismatch(format!(
                        "unit image has {} components, model has {}",
                        images.len(),
                        parts.len()
                    )));
                }
                Elem::Tuple(
                    images
                        .iter()
                        .zip(parts)
                        .map(|(im, p)| im.apply(p, lambda))
                        .collect::<Result<_>>()?,
                )
            }
            UnitImage::Constant(e) => {
                if lambda.is_zero() {
                    Elem::Zero
                } else {
                    e.clone()
                }
            }
        };
        m.want(&raw)
    }

    pub fn describe(&self) -> String {
        match self {
            UnitImage::Scalar => "λ·1 = λ".into(),
            UnitImage::ScalarMatrix => "λ·1 = λ·id".into(),
            UnitImage::IntoBranch(k) => format!("λ·1 = (λ)@{k}"),
            UnitImage::PerPart(images) => {
                let parts: Vec<String> = images.iter().map(UnitImage::describe).collect();
                format!("componentwise [{}]", parts.join(", "))
            }
            UnitImage::Constant(e) => format!("λ·1 = {e} for λ > 0"),
        }
    }
}

/// A scalar action `λ·a := a ∘ φ(λ)` on a model with a product.
#[derive(Debug, Clone)]
pub struct AConvexAction {
    pub model: ModelExpr,
    pub unit_image: UnitImage,
}

impl AConvexAction {
    pub fn phi(&self, lambda: &Rat) -> Result<Elem> {
        self.unit_image.apply(&self.model, lambda)
    }

    pub fn scale(&self, lambda: &Rat, a: &Elem) -> Result<Elem> {
        self.model.seq_product(a, &self.phi(lambda)?)
    }
}

/// Builds the action `λ·a := a ∘ φ(λ)` after verifying on a scalar grid
/// that `φ` is unital and additive.
pub fn action_from_additive_map(m: &ModelExpr, unit_image: UnitImage) -> Result<AConvexAction> {
    if !m.has_product() {
        return Err(Error::NoProduct(
            "a scalar action needs a product on the model".into(),
        ));
    }
    let one = unit_image.apply(m, &rat(1, 1))?;
    if one != Elem::One {
        return Err(Error::NotAdditive(format!(
            "unit image is not unital: φ(1) = {one}"
        )));
    }
    for (l, u) in scalar_pairs() {
        let sum = &l + &u;
        if sum > rat(1, 1) {
            continue;
        }
        let pl = unit_image.apply(m, &l)?;
        let pu = unit_image.apply(m, &u)?;
        let expect = unit_image.apply(m, &sum)?;
        match m.partial_sum(&pl, &pu)? {
            Some(got) if got == expect => {}
            Some(got) => {
                return Err(Error::NotAdditive(format!(
                    "φ({l}) ⊻ φ({u}) = {got} but φ({sum}) = {expect}"
                )))
            }
            None => {
                return Err(Error::NotAdditive(format!(
                    "φ({l}) = {pl} and φ({u}) = {pu} are not summable though {l}+{u} <= 1"
                )))
            }
        }
    }
    Ok(AConvexAction {
        model: m.clone(),
        unit_image,
    })
}

fn scalar_grid() -> Vec<Rat> {
    vec![
        rat(0, 1),
        rat(1, 1),
        rat(1, 2),
        rat(1, 4),
        rat(3, 4),
        rat(1, 3),
        rat(2, 3),
        rat(1, 64),
    ]
}

fn scalar_pairs() -> Vec<(Rat, Rat)> {
    let g = scalar_grid();
    let mut out = Vec::new();
    for l in &g {
        for u in &g {
            out.push((l.clone(), u.clone()));
        }
    }
    out
}

/// A failure of `λ·(a ⊻ b) = λ·a ⊻ λ·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub lambda: Rat,
    pub a: Elem,
    pub b: Elem,
    /// `λ·(a ⊻ b)`.
    pub scaled_sum: Elem,
    /// `λ·a ⊻ λ·b`, `None` when the two scaled terms are not summable.
    pub split_scale: Option<Elem>,
}

impl std::fmt::Display for ConvexityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "λ={} a={} b={}: λ·(a⊻b) = {} but λ·a ⊻ λ·b = ",
            self.lambda, self.a, self.b, self.scaled_sum
        )?;
        match &self.split_scale {
            Some(e) => write!(f, "{e}"),
            None => write!(f, "undefined"),
        }
    }
}

/// Outcome of [`check_aconvex_action`]: the three a-convex axioms in
/// `report`, plus the convexity axiom reported separately so an a-convex
/// action that is not convex still shows a passing report.
#[derive(Debug, Clone)]
pub struct ActionCheck {
    pub report: ValidationReport,
    pub convex: bool,
    pub convexity_witness: Option<ConvexityWitness>,
}

/// Verifies the a-convex axioms `λ·(μ·a) = (λμ)·a`, `(λ+μ)·a = λ·a ⊻ μ·a`
/// (λ+μ ≤ 1), and `1·a = a`, then tests the convexity axiom
/// `λ·(a ⊻ b) = λ·a ⊻ λ·b` and reports it with a witness on failure.
pub fn check_aconvex_action(act: &AConvexAction, cfg: &SeaCheckConfig) -> Result<ActionCheck> {
    let m = &act.model;
    if !m.has_product() {
        return Err(Error::NoProduct(
            "a-convex checks need a product on the model".into(),
        ));
    }
    let elems = cfg.elements(m)?;
    let grid = scalar_grid();
    let mut r = ValidationReport::new();

    for (l, u) in scalar_pairs() {
        let lu = &l * &u;
        for a in &elems {
            r.tick();
            let nested = act.scale(&l, &act.scale(&u, a)?)?;
            let direct = act.scale(&lu, a)?;
            if nested != direct {
                r.record(
                    "aconvex.scalar-assoc",
                    format!("λ={l} μ={u} a={a}: λ·(μ·a) = {nested} but (λμ)·a = {direct}"),
                );
            }
        }
    }

    for (l, u) in scalar_pairs() {
        let sum = &l + &u;
        if sum > rat(1, 1) {
            continue;
        }
        for a in &elems {
            r.tick();
            let whole = act.scale(&sum, a)?;
            let la = act.scale(&l, a)?;
            let ua = act.scale(&u, a)?;
            match m.partial_sum(&la, &ua)? {
                Some(got) if got == whole => {}
                Some(got) => r.record(
                    "aconvex.scalar-additive",
                    format!("λ={l} μ={u} a={a}: (λ+μ)·a = {whole} but λ·a ⊻ μ·a = {got}"),
                ),
                None => r.record(
                    "aconvex.scalar-additive",
                    format!("λ={l} μ={u} a={a}: λ·a = {la} and μ·a = {ua} are not summable"),
                ),
            }
        }
    }

    for a in &elems {
        r.tick();
        let got = act.scale(&rat(1, 1), a)?;
        if got != *a {
            r.record("aconvex.unit", format!("1·{a} = {got}"));
        }
    }

    let mut witnesses: Vec<ConvexityWitness> = Vec::new();
    'outer: for l in &grid {
        for a in &elems {
            for b in &elems {
                let Some(ab) = m.partial_sum(a, b)? else { continue };
                let scaled_sum = act.scale(l, &ab)?;
                let la = act.scale(l, a)?;
                let lb = act.scale(l, b)?;
                let split = m.partial_sum(&la, &lb)?;
                if split.as_ref() != Some(&scaled_sum) {
                    witnesses.push(ConvexityWitness {
                        lambda: l.clone(),
                        a: a.clone(),
                        b: b.clone(),
                        scaled_sum,
                        split_scale: split,
                    });
                    if witnesses.len() >= 16 {
                        break 'outer;
                    }
                }
            }
        }
    }
    // Prefer a witness where both sides are defined and a = b: the sharpest
    // form of the failure (scaling the same element twice lands in two
    // different places).
    let convexity_witness = witnesses
        .iter()
        .find(|w| w.split_scale.is_some() && w.a == w.b)
        .or_else(|| witnesses.first())
        .cloned();
    Ok(ActionCheck {
        report: r,
        convex: witnesses.is_empty(),
        convexity_witness,
    })
}

/// Convexity classification of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexityVerdict {
    /// No half of 1 and every element idempotent.
    Boolean,
    /// The evidence rules out a scalar action at the checked granularity.
    NotAConvex,
    /// A unique, central half of 1.
    Convex,
    /// Several halves of 1 and a center of idempotents only.
    PurelyAConvex,
    /// Several halves of 1 and a mixed center.
    AConvexMixed,
}

impl std::fmt::Display for ConvexityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConvexityVerdict::Boolean => "boolean",
            ConvexityVerdict::NotAConvex => "not-a-convex",
            ConvexityVerdict::Convex => "convex",
            ConvexityVerdict::PurelyAConvex => "purely-a-convex",
            ConvexityVerdict::AConvexMixed => "a-convex-mixed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct ConvexityClass {
    pub verdict: ConvexityVerdict,
    pub halves_of_one: Vec<Elem>,
    pub evidence: Vec<String>,
    /// Set when the computed facts contradict each other (possible only on
    /// invalid models), e.g. several halves of 1 alongside a central half.
    pub contradiction: bool,
}

/// Decision procedure over the halves of 1: none ⇒ Boolean or not-a-convex;
/// exactly one ⇒ convex (the half must be central); several ⇒ a-convex, and
/// the center decides purely-a-convex versus mixed. Finite tables are only
/// ever classified Boolean or not-a-convex: a valid finite sequential
/// product forces a Boolean algebra, and the classifier does not claim more
/// than its evidence on invalid tables.
pub fn classify_convexity(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<ConvexityClass> {
    if !m.has_product() {
        return Err(Error::NoProduct(
            "convexity classification needs a product on the model".into(),
        ));
    }
    let halves = m.halves_of(&Elem::One)?;
    let mut evidence = Vec::new();

    if matches!(m, ModelExpr::Finite { .. } | ModelExpr::Boolean { .. }) {
        let pool = m.enumerate_or_sample(cfg.sample_budget.max(4096), cfg.seed)?;
        let mut non_idem = None;
        for e in &pool {
            if !is_idempotent(m, e)? {
                non_idem = Some(e.clone());
                break;
            }
        }
        return Ok(if halves.is_empty() && non_idem.is_none() {
            evidence.push(format!(
                "no half of 1; all {} elements idempotent",
                pool.len()
            ));
            ConvexityClass {
                verdict: ConvexityVerdict::Boolean,
                halves_of_one: halves,
                evidence,
                contradiction: false,
            }
        } else {
            if let Some(e) = non_idem {
                evidence.push(format!("non-idempotent element {e}"));
            }
            if !halves.is_empty() {
                evidence.push(format!("1 has {} halves", halves.len()));
            }
            evidence.push(
                "finite model failed the Boolean criteria; a valid finite sequential \
                 product forces a Boolean algebra, so no scalar action is claimed"
                    .into(),
            );
            ConvexityClass {
                verdict: ConvexityVerdict::NotAConvex,
                halves_of_one: halves,
                evidence,
                contradiction: false,
            }
        });
    }

    match halves.len() {
        0 => {
            let pool = cfg.elements(m)?;
            let mut non_idem = None;
            for e in &pool {
                if !is_idempotent(m, e)? {
                    non_idem = Some(e.clone());
                    break;
                }
            }
            match non_idem {
                None => {
                    evidence.push(format!(
                        "no half of 1; all {} sampled elements idempotent",
                        pool.len()
                    ));
                    Ok(ConvexityClass {
                        verdict: ConvexityVerdict::Boolean,
                        halves_of_one: halves,
                        evidence,
                        contradiction: false,
                    })
                }
                Some(e) => {
                    evidence.push(format!("no half of 1 yet {e} is not idempotent"));
                    Ok(ConvexityClass {
                        verdict: ConvexityVerdict::NotAConvex,
                        halves_of_one: halves,
                        evidence,
                        contradiction: false,
                    })
                }
            }
        }
        1 => {
            let h = &halves[0];
            let pool = cfg.elements(m)?;
            let mut central = true;
            for e in &pool {
                if !commutes(m, h, e)? {
                    central = false;
                    evidence.push(format!("the unique half {h} fails to commute with {e}"));
                    break;
                }
            }
            if central {
                evidence.push(format!("unique half {h} of 1, central on the pool"));
                Ok(ConvexityClass {
                    verdict: ConvexityVerdict::Convex,
                    halves_of_one: halves,
                    evidence,
                    contradiction: false,
                })
            } else {
                evidence.push(
                    "a unique half must be central; this model contradicts the \
                     uniqueness/centrality equivalence"
                        .into(),
                );
                Ok(ConvexityClass {
                    verdict: ConvexityVerdict::AConvexMixed,
                    halves_of_one: halves,
                    evidence,
                    contradiction: true,
                })
            }
        }
        n => {
            evidence.push(format!("1 has {n} halves"));
            let z = center(m, cfg)?;
            evidence.push(format!("center: {}", z.set.describe()));
            let roster = z.set.sample(m, cfg.sample_budget, cfg.seed)?;
            let mut central_half = None;
            let mut non_idem = None;
            for e in &roster {
                if m.partial_sum(e, e)? == Some(Elem::One) {
                    central_half = Some(e.clone());
                }
                if non_idem.is_none() && !is_idempotent(m, e)? {
                    non_idem = Some(e.clone());
                }
            }
            if let Some(h) = central_half {
                evidence.push(format!(
                    "central half {h} found despite {n} halves; a central half must be unique"
                ));
                return Ok(ConvexityClass {
                    verdict: ConvexityVerdict::AConvexMixed,
                    halves_of_one: halves,
                    evidence,
                    contradiction: true,
                });
            }
            match non_idem {
                None => {
                    evidence.push(if z.exact {
                        "center consists of idempotents only".into()
                    } else {
                        "center consists of idempotents only (sampled)".into()
                    });
                    Ok(ConvexityClass {
                        verdict: ConvexityVerdict::PurelyAConvex,
                        halves_of_one: halves,
                        evidence,
                        contradiction: false,
                    })
                }
                Some(e) => {
                    evidence.push(format!("center contains the non-idempotent {e}"));
                    Ok(ConvexityClass {
                        verdict: ConvexityVerdict::AConvexMixed,
                        halves_of_one: halves,
                        evidence,
                        contradiction: false,
                    })
                }
            }
        }
    }
}

/// The Boolean ⊕ convex ⊕ purely-a-convex split of a model.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    /// The model the blocks refer to: the input, unless a corner leaf had
    /// to be rewritten as a direct sum of corners first.
    pub analyzed: ModelExpr,
    pub boolean_block: ModelExpr,
    pub convex_block: ModelExpr,
    pub aconvex_block: ModelExpr,
    /// Central idempotent witnesses (indicator elements of `analyzed`);
    /// `Zero` for an empty block.
    pub p_bool: Elem,
    pub p_conv: Elem,
    pub p_ac: Elem,
    pub evidence: Vec<String>,
    /// Invariant checks: witness orthogonality/centrality/sum, per-block
    /// classification, and sum/product preservation of the rearrangement.
    pub report: ValidationReport,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

pub fn decompose(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<DecompositionReport> {
    decompose_inner(m, cfg, 0)
}

fn decompose_inner(m: &ModelExpr, cfg: &SeaCheckConfig, depth: usize) -> Result<DecompositionReport> {
    if depth > 3 {
        return Err(Error::CannotDecompose(
            "corner rewriting did not reach classifiable leaves".into(),
        ));
    }
    if !m.has_product() {
        return Err(Error::NoProduct("decomposition needs a product on the model".into()));
    }
    if let ModelExpr::Finite { .. } | ModelExpr::Boolean { .. } = m {
        return finite_decomposition(m);
    }

    let leaves = flatten_paths(m);
    let mut bool_paths: Vec<Vec<usize>> = Vec::new();
    let mut conv_paths: Vec<Vec<usize>> = Vec::new();
    let mut ac_paths: Vec<Vec<usize>> = Vec::new();
    let mut evidence = Vec::new();

    for (path, leaf) in &leaves {
        let class = classify_convexity(leaf, cfg)?;
        evidence.push(format!(
            "leaf {:?} ({}): {}",
            path,
            leaf.kind_name(),
            class.verdict
        ));
        match class.verdict {
            ConvexityVerdict::Boolean => bool_paths.push(path.clone()),
            ConvexityVerdict::Convex => conv_paths.push(path.clone()),
            ConvexityVerdict::PurelyAConvex => ac_paths.push(path.clone()),
            ConvexityVerdict::AConvexMixed => {
                if let ModelExpr::Corner { base, idempotent } = leaf {
                    if matches!(base.as_ref(), ModelExpr::DirectSum { .. }) {
                        let rewritten_leaf = corner_pushdown(base, idempotent)?;
                        let rewritten = replace_at(m, path, &rewritten_leaf)?;
                        let mut rep = decompose_inner(&rewritten, cfg, depth + 1)?;
                        rep.evidence.insert(
                            0,
                            format!(
                                "mixed corner leaf at {:?} rewritten as a direct sum of \
                                 corners; the report describes the rewritten model",
                                path
                            ),
                        );
                        return Ok(rep);
                    }
                }
                return Err(Error::CannotDecompose(format!(
                    "leaf {:?} ({}) classifies as mixed and no rewriting applies: {}",
                    path,
                    leaf.kind_name(),
                    class.evidence.join("; ")
                )));
            }
            ConvexityVerdict::NotAConvex => {
                return Err(Error::CannotDecompose(format!(
                    "leaf {:?} ({}) fits no block: {}",
                    path,
                    leaf.kind_name(),
                    class.evidence.join("; ")
                )))
            }
        }
    }

    let leaf_model = |paths: &[Vec<usize>]| -> Result<ModelExpr> {
        let exprs: Vec<ModelExpr> = paths
            .iter()
            .map(|p| {
                leaves
                    .iter()
                    .find(|(q, _)| q == p)
                    .map(|(_, l)| (*l).clone())
                    .expect("path from the same flattening")
            })
            .collect();
        match exprs.len() {
            0 => Ok(ModelExpr::trivial()),
            1 => Ok(exprs.into_iter().next().expect("len checked")),
            _ => ModelExpr::direct_sum(exprs),
        }
    };
    let boolean_block = leaf_model(&bool_paths)?;
    let convex_block = leaf_model(&conv_paths)?;
    let aconvex_block = leaf_model(&ac_paths)?;

    let p_bool = indicator(m, &bool_paths)?;
    let p_conv = indicator(m, &conv_paths)?;
    let p_ac = indicator(m, &ac_paths)?;

    let mut report = ValidationReport::new();
    check_witnesses(m, cfg, &[&p_bool, &p_conv, &p_ac], &mut report)?;
    check_block(&boolean_block, ConvexityVerdict::Boolean, cfg, &mut report, &mut evidence)?;
    check_block(&convex_block, ConvexityVerdict::Convex, cfg, &mut report, &mut evidence)?;
    check_block(&aconvex_block, ConvexityVerdict::PurelyAConvex, cfg, &mut report, &mut evidence)?;
    check_rearrangement(
        m,
        cfg,
        &[
            (&boolean_block, &bool_paths),
            (&convex_block, &conv_paths),
            (&aconvex_block, &ac_paths),
        ],
        &mut report,
        &mut evidence,
    )?;

    Ok(DecompositionReport {
        analyzed: m.clone(),
        boolean_block,
        convex_block,
        aconvex_block,
        p_bool,
        p_conv,
        p_ac,
        evidence,
        report,
    })
}

/// A finite model with a valid product is all-idempotent, hence its own
/// Boolean block; the Boolean-algebra laws are verified on the table.
fn finite_decomposition(m: &ModelExpr) -> Result<DecompositionReport> {
    let table = match m {
        ModelExpr::Finite { table, .. } => table.clone(),
        ModelExpr::Boolean { atoms } => FiniteEaTable::boolean(*atoms),
        _ => unreachable!("caller checked the family"),
    };
    let ord = derive_order(&table);
    let verdict = boolean_algebra_check(&table, &ord);
    let mut report = ValidationReport::new();
    let mut evidence = Vec::new();
    report.ticks((table.size() * table.size()) as u64);
    if verdict.is_boolean() {
        evidence.push(format!(
            "finite table ({} elements) verified as a Boolean algebra",
            table.size()
        ));
    } else {
        report.record(
            "decomp.finite-boolean",
            verdict
                .witness
                .clone()
                .unwrap_or_else(|| "table is not a Boolean algebra".into()),
        );
    }
    if let (ModelExpr::Finite { product: Some(product), .. }, Some(meet)) = (m, &verdict.meet_table)
    {
        if product == meet {
            evidence.push("product table coincides with the lattice meet".into());
        } else {
            let idx = product
                .iter()
                .zip(meet)
                .position(|(p, q)| p != q)
                .expect("tables differ");
            report.record(
                "decomp.finite-product-meet",
                format!(
                    "product at ({}, {}) is {} but the meet is {}",
                    idx / table.size(),
                    idx % table.size(),
                    product[idx],
                    meet[idx]
                ),
            );
        }
    }
    Ok(DecompositionReport {
        analyzed: m.clone(),
        boolean_block: m.clone(),
        convex_block: ModelExpr::trivial(),
        aconvex_block: ModelExpr::trivial(),
        p_bool: Elem::One,
        p_conv: Elem::Zero,
        p_ac: Elem::Zero,
        evidence,
        report,
    })
}

/// Flattens nested direct sums into leaves addressed by index paths.
fn flatten_paths(m: &ModelExpr) -> Vec<(Vec<usize>, &ModelExpr)> {
    fn go<'a>(m: &'a ModelExpr, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a ModelExpr)>) {
        if let ModelExpr::DirectSum { parts } = m {
            for (k, part) in parts.iter().enumerate() {
                path.push(k);
                go(part, path, out);
                path.pop();
            }
        } else {
            out.push((path.clone(), m));
        }
    }
    let mut out = Vec::new();
    go(m, &mut Vec::new(), &mut out);
    out
}

/// The canonical element of `m` that is `One` on the selected leaves and
/// `Zero` elsewhere.
fn indicator(m: &ModelExpr, selected: &[Vec<usize>]) -> Result<Elem> {
    let sel: HashSet<&[usize]> = selected.iter().map(Vec::as_slice).collect();
    fn go(m: &ModelExpr, sel: &HashSet<&[usize]>, path: &mut Vec<usize>) -> Elem {
        if let ModelExpr::DirectSum { parts } = m {
            let comps = parts
                .iter()
                .enumerate()
                .map(|(k, part)| {
                    path.push(k);
                    let e = go(part, sel, path);
                    path.pop();
                    e
                })
                .collect();
            Elem::Tuple(comps)
        } else if sel.contains(path.as_slice()) {
            Elem::One
        } else {
            Elem::Zero
        }
    }
    m.want(&go(m, &sel, &mut Vec::new()))
}

/// Splits a canonical element of a (possibly nested) direct sum into its
/// leaf components.
fn leaf_components(m: &ModelExpr, e: &Elem) -> Result<HashMap<Vec<usize>, Elem>> {
    fn go(
        m: &ModelExpr,
        e: &Elem,
        path: &mut Vec<usize>,
        out: &mut HashMap<Vec<usize>, Elem>,
    ) -> Result<()> {
        if let ModelExpr::DirectSum { parts } = m {
            let comps: Vec<Elem> = match e {
                Elem::Zero => vec![Elem::Zero; parts.len()],
                Elem::One => vec![Elem::One; parts.len()],
                Elem::Tuple(es) => es.clone(),
                other => {
                    return Err(Error::FamilyMismatch(format!(
                        "{other} is not a direct-sum element"
                    )))
                }
            };
            for (k, (part, comp)) in parts.iter().zip(&comps).enumerate() {
                path.push(k);
                go(part, comp, path, out)?;
                path.pop();
            }
        } else {
            out.insert(path.clone(), e.clone());
        }
        Ok(())
    }
    let mut out = HashMap::new();
    go(m, e, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Regroups the leaf components on `paths` into an element of `block`.
fn gather(
    block: &ModelExpr,
    paths: &[Vec<usize>],
    comps: &HashMap<Vec<usize>, Elem>,
) -> Result<Option<Elem>> {
    if paths.is_empty() {
        return Ok(None);
    }
    let picked: Vec<Elem> = paths
        .iter()
        .map(|p| comps.get(p).cloned().expect("component for every leaf path"))
        .collect();
    let raw = if picked.len() == 1 {
        picked.into_iter().next().expect("len checked")
    } else {
        Elem::Tuple(picked)
    };
    block.want(&raw).map(Some)
}

fn check_witnesses(
    m: &ModelExpr,
    cfg: &SeaCheckConfig,
    ps: &[&Elem; 3],
    report: &mut ValidationReport,
) -> Result<()> {
    let pool = m.enumerate_or_sample(cfg.sample_budget, cfg.seed)?;
    for p in ps {
        report.tick();
        if !is_idempotent(m, p)? {
            report.record("decomp.witness-idempotent", format!("{p} is not idempotent"));
        }
        for e in &pool {
            report.tick();
            if !commutes(m, p, e)? {
                report.record(
                    "decomp.witness-central",
                    format!("{p} fails to commute with {e}"),
                );
            }
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            report.tick();
            if ps[i].clone() != Elem::Zero && m.partial_sum(ps[i], ps[j])?.is_none() {
                report.record(
                    "decomp.witness-orthogonal",
                    format!("{} and {} are not summable", ps[i], ps[j]),
                );
            }
        }
    }
    report.tick();
    let total = m
        .partial_sum(ps[0], ps[1])?
        .map(|s| m.partial_sum(&s, ps[2]))
        .transpose()?
        .flatten();
    if total != Some(Elem::One) {
        report.record(
            "decomp.witness-sum",
            format!("witnesses sum to {total:?}, not 1"),
        );
    }
    Ok(())
}

fn check_block(
    block: &ModelExpr,
    expect: ConvexityVerdict,
    cfg: &SeaCheckConfig,
    report: &mut ValidationReport,
    evidence: &mut Vec<String>,
) -> Result<()> {
    if block.carrier_size() == Some(1) {
        return Ok(());
    }
    report.tick();
    let class = classify_convexity(block, cfg)?;
    if class.verdict == expect {
        evidence.push(format!("{} block: {}", expect, class.evidence.join("; ")));
    } else {
        report.record(
            "decomp.block-classification",
            format!("block expected {} but classified {}", expect, class.verdict),
        );
    }
    Ok(())
}

/// Direct sums are componentwise by construction, so regrouping components
/// by block must preserve sums and products; verified on sampled pairs.
fn check_rearrangement(
    m: &ModelExpr,
    cfg: &SeaCheckConfig,
    blocks: &[(&ModelExpr, &Vec<Vec<usize>>); 3],
    report: &mut ValidationReport,
    evidence: &mut Vec<String>,
) -> Result<()> {
    let pool = m.enumerate_or_sample(cfg.sample_budget, cfg.seed)?;
    // Pre-gather each pool element into its block components.
    let mut gathered: Vec<(Elem, [Option<Elem>; 3])> = Vec::with_capacity(pool.len());
    for e in &pool {
        let comps = leaf_components(m, e)?;
        let mut gs: [Option<Elem>; 3] = [None, None, None];
        for (slot, (block, paths)) in gs.iter_mut().zip(blocks) {
            *slot = gather(block, paths, &comps)?;
        }
        gathered.push((e.clone(), gs));
    }
    let mut pairs = 0usize;
    for (e, ge) in &gathered {
        for (f, gf) in &gathered {
            pairs += 1;
            report.tick();
            let msum = m.partial_sum(e, f)?;
            let mut block_sums: [Option<Option<Elem>>; 3] = [None, None, None];
            let mut all_defined = true;
            for (k, (block, _)) in blocks.iter().enumerate() {
                if let (Some(be), Some(bf)) = (&ge[k], &gf[k]) {
                    let s = block.partial_sum(be, bf)?;
                    all_defined &= s.is_some();
                    block_sums[k] = Some(s);
                }
            }
            match (&msum, all_defined) {
                (Some(s), true) => {
                    let cs = leaf_components(m, s)?;
                    for (k, (block, paths)) in blocks.iter().enumerate() {
                        if let Some(Some(bsum)) = &block_sums[k] {
                            let expect =
                                gather(block, paths, &cs)?.expect("block was nonempty above");
                            if *bsum != expect {
                                report.record(
                                    "decomp.rearrangement-sum",
                                    format!(
                                        "{e} ⊻ {f}: block {k} sums to {bsum}, expected {expect}"
                                    ),
                                );
                            }
                        }
                    }
                }
                (Some(_), false) => report.record(
                    "decomp.rearrangement-sum",
                    format!("{e} ⊻ {f} is defined in the model but not blockwise"),
                ),
                (None, true) if blocks.iter().any(|(_, paths)| !paths.is_empty()) => report
                    .record(
                        "decomp.rearrangement-sum",
                        format!("{e} ⊻ {f} is undefined in the model but defined blockwise"),
                    ),
                _ => {}
            }

            let mprod = m.seq_product(e, f)?;
            let cp = leaf_components(m, &mprod)?;
            for (k, (block, paths)) in blocks.iter().enumerate() {
                if let (Some(be), Some(bf)) = (&ge[k], &gf[k]) {
                    report.tick();
                    let bp = block.seq_product(be, bf)?;
                    let expect = gather(block, paths, &cp)?.expect("block was nonempty above");
                    if bp != expect {
                        report.record(
                            "decomp.rearrangement-product",
                            format!("{e} ∘ {f}: block {k} gives {bp}, expected {expect}"),
                        );
                    }
                }
            }
        }
    }
    evidence.push(format!(
        "rearrangement preserved sums and products over {pairs} sampled pairs"
    ));
    Ok(())
}

/// Rewrites a corner over a direct sum as the direct sum of per-part
/// corners (dropping parts where the idempotent vanishes).
fn corner_pushdown(base: &ModelExpr, p: &Elem) -> Result<ModelExpr> {
    let ModelExpr::DirectSum { parts } = base else {
        return Err(Error::CannotDecompose(
            "corner pushdown needs a direct-sum base".into(),
        ));
    };
    let comps: Vec<Elem> = match base.want(p)? {
        Elem::Zero => vec![Elem::Zero; parts.len()],
        Elem::One => vec![Elem::One; parts.len()],
        Elem::Tuple(es) => es,
        other => {
            return Err(Error::CannotDecompose(format!(
                "corner idempotent {other} is not componentwise"
            )))
        }
    };
    let mut new_parts = Vec::new();
    for (part, c) in parts.iter().zip(comps) {
        match c {
            Elem::Zero => {}
            Elem::One => new_parts.push(part.clone()),
            c => new_parts.push(ModelExpr::corner(part.clone(), c)?),
        }
    }
    match new_parts.len() {
        0 => Ok(ModelExpr::trivial()),
        1 => Ok(new_parts.into_iter().next().expect("len checked")),
        _ => ModelExpr::direct_sum(new_parts),
    }
}

/// Clones `m` with the sub-expression at `path` replaced.
fn replace_at(m: &ModelExpr, path: &[usize], new: &ModelExpr) -> Result<ModelExpr> {
    let Some((&head, rest)) = path.split_first() else {
        return Ok(new.clone());
    };
    let ModelExpr::DirectSum { parts } = m else {
        return Err(Error::CannotDecompose(format!(
            "path step {head} into a {} model",
            m.kind_name()
        )));
    };
    let mut next = parts.clone();
    next[head] = replace_at(&parts[head], rest, new)?;
    ModelExpr::direct_sum(next)
}

///// Result of the commuting-halves search: does `a | b` with `b = c ⊻ c`
/// force `a | c`?
#[derive(Debug, Clone)]
pub struct CommutingHalvesReport {
    pub holds: bool,
    /// A violating triple, when one exists.
    pub witness: Option<String>,
    pub classification: Option<ConvexityVerdict>,
    /// Whether the verdict and the classification agree with the
    /// equivalence "convex iff commuting halves"; `None` when the
    /// classification does not speak (Boolean or rejected models).
    pub agrees_with_classification: Option<bool>,
}

pub fn check_commuting_halves(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<CommutingHalvesReport> {
    let elems = cfg.elements(m)?;
    let mut holds = true;
    let mut witness = None;
    'outer: for c in &elems {
        let Some(b) = m.partial_sum(c, c)? else { continue };
        for a in &elems {
            if commutes(m, a, &b)? && !commutes(m, a, c)? {
                holds = false;
                witness = Some(format!(
                    "a = {a}, b = {c} ⊻ {c} = {b}, c = {c}: a∘b = b∘a but a∘c = {} while c∘a = {}",
                    m.seq_product(a, c)?,
                    m.seq_product(c, a)?
                ));
                break 'outer;
            }
        }
    }
    let classification = classify_convexity(m, cfg).ok().map(|c| c.verdict);
    let agrees_with_classification = classification.and_then(|v| match v {
        ConvexityVerdict::Convex => Some(holds),
        ConvexityVerdict::PurelyAConvex | ConvexityVerdict::AConvexMixed => Some(!holds),
        ConvexityVerdict::Boolean | ConvexityVerdict::NotAConvex => None,
    });
    Ok(CommutingHalvesReport {
        holds,
        witness,
        classification,
        agrees_with_classification,
    })
}

/// Product-associativity analysis with the centrality consequence and the
/// horizontal-sum factor classification.
#[derive(Debug, Clone)]
pub struct AssociativityReport {
    pub associative: bool,
    pub associativity_witness: Option<String>,
    pub commutative: bool,
    pub commutativity_witness: Option<String>,
    pub idempotents_found: Vec<Elem>,
    /// Meaningful when `associative`: in an associative model every
    /// idempotent is central.
    pub idempotents_central: bool,
    pub centrality_witness: Option<String>,
    /// Set when the model is associative with center `{0, 1}` and halves
    /// of 1: the literal horizontal-sum shape when recognized.
    pub factor_classification: Option<String>,
}

pub fn analyze_associativity(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<AssociativityReport> {
    let elems = cfg.elements(m)?;
    let mut associative = true;
    let mut associativity_witness = None;
    let mut commutative = true;
    let mut commutativity_witness = None;
    for a in &elems {
        for b in &elems {
            let ab = m.seq_product(a, b)?;
            if commutative {
                let ba = m.seq_product(b, a)?;
                if ab != ba {
                    commutative = false;
                    commutativity_witness =
                        Some(format!("{a}∘{b} = {ab} but {b}∘{a} = {ba}"));
                }
            }
            for c in &elems {
                let lhs = m.seq_product(&ab, c)?;
                let rhs = m.seq_product(a, &m.seq_product(b, c)?)?;
                if lhs != rhs {
                    if associative {
                        associativity_witness = Some(format!(
                            "({a}∘{b})∘{c} = {lhs} but {a}∘({b}∘{c}) = {rhs}"
                        ));
                    }
                    associative = false;
                }
            }
        }
    }

    let mut idempotents_found = Vec::new();
    for e in &elems {
        if is_idempotent(m, e)? {
            idempotents_found.push(e.clone());
        }
    }
    let mut idempotents_central = true;
    let mut centrality_witness = None;
    if associative {
        'outer: for p in &idempotents_found {
            for e in &elems {
                if !commutes(m, p, e)? {
                    idempotents_central = false;
                    centrality_witness =
                        Some(format!("idempotent {p} fails to commute with {e}"));
                    break 'outer;
                }
            }
        }
    }

    let mut factor_classification = None;
    if associative {
        let z = center(m, cfg)?;
        let bounds_only = z.set == MemberSet::Listed(vec![Elem::Zero, Elem::One]);
        let has_halves = !m.halves_of(&Elem::One)?.is_empty();
        if bounds_only && has_halves {
            factor_classification = Some(match m {
                ModelExpr::HorizontalSum { parts }
                    if parts.iter().all(|p| matches!(p, ModelExpr::Interval)) =>
                {
                    format!("horizontal sum of {} intervals", parts.len())
                }
                _ => "unclassified factor".into(),
            });
        }
    }

    Ok(AssociativityReport {
        associative,
        associativity_witness,
        commutative,
        commutativity_witness,
        idempotents_found,
        idempotents_central,
        centrality_witness,
        factor_classification,
    })
}

/// Shape of the bicommutant of a single element: an interval-like part and
/// a Boolean part, split by a central idempotent.
#[derive(Debug, Clone)]
pub struct BicommutantShape {
    /// Trivial when the element generates no continuous part.
    pub interval_part: ModelExpr,
    /// Trivial when the element generates no Boolean part beyond `{0}`.
    pub boolean_part: ModelExpr,
    /// Central idempotent `p`: the interval part sits below `p`, the
    /// Boolean part below `p⊥`.
    pub splitting_idempotent: Elem,
    /// Finite roster of the Boolean part, when applicable.
    pub roster: Option<Vec<Elem>>,
    pub detail: String,
}

pub fn bicommutant_representation(m: &ModelExpr, a: &Elem) -> Result<BicommutantShape> {
    let a = m.want(a)?;
    match m {
        ModelExpr::Boolean { .. } | ModelExpr::Finite { .. } => {
            if !m.has_product() {
                return Err(Error::NoProduct(
                    "bicommutant shapes need a product on the model".into(),
                ));
            }
            let roster = generated_subalgebra(m, &[a.clone()])?;
            let boolean_part = build_subtable(m, &roster)?;
            let detail = format!(
                "generated subalgebra of {a}: {} elements, all idempotent",
                roster.len()
            );
            for e in &roster {
                if !is_idempotent(m, e)? {
                    return Err(Error::InvalidModel(format!(
                        "generated subalgebra contains the non-idempotent {e}; \
                         the product table is not a valid sequential product"
                    )));
                }
            }
            Ok(BicommutantShape {
                interval_part: ModelExpr::trivial(),
                boolean_part,
                splitting_idempotent: Elem::Zero,
                roster: Some(roster),
                detail,
            })
        }
        ModelExpr::Interval => Ok(BicommutantShape {
            interval_part: ModelExpr::Interval,
            boolean_part: ModelExpr::trivial(),
            splitting_idempotent: Elem::One,
            roster: None,
            detail: format!("{a} generates the whole interval side"),
        }),
        ModelExpr::HorizontalSum { .. } => match &a {
            Elem::Branch(k, _) => Ok(BicommutantShape {
                interval_part: ModelExpr::Interval,
                boolean_part: ModelExpr::trivial(),
                splitting_idempotent: Elem::One,
                roster: None,
                detail: format!(
                    "branch {k} together with the bounds is order- and \
                     product-isomorphic to the unit interval"
                ),
            }),
            _ => Ok(BicommutantShape {
                interval_part: ModelExpr::trivial(),
                boolean_part: ModelExpr::boolean(1)?,
                splitting_idempotent: Elem::Zero,
                roster: Some(vec![Elem::Zero, Elem::One]),
                detail: "a boundary element generates only the bounds {0, 1}".into(),
            }),
        },
        ModelExpr::DirectSum { parts } => {
            let comps: Vec<Elem> = match &a {
                Elem::Zero => vec![Elem::Zero; parts.len()],
                Elem::One => vec![Elem::One; parts.len()],
                Elem::Tuple(es) => es.clone(),
                _ => unreachable!("direct-sum canon yields tuples"),
            };
            let mut interval_parts = Vec::new();
            let mut boolean_parts = Vec::new();
            let mut split_comps = Vec::new();
            let mut details = Vec::new();
            for (part, comp) in parts.iter().zip(&comps) {
                let shape = bicommutant_representation(part, comp)?;
                split_comps.push(shape.splitting_idempotent);
                if shape.interval_part.carrier_size() != Some(1) {
                    interval_parts.push(shape.interval_part);
                }
                if shape.boolean_part.carrier_size() != Some(1) {
                    boolean_parts.push(shape.boolean_part);
                }
                details.push(shape.detail);
            }
            let assemble = |mut v: Vec<ModelExpr>| -> Result<ModelExpr> {
                match v.len() {
                    0 => Ok(ModelExpr::trivial()),
                    1 => Ok(v.pop().expect("len checked")),
                    _ => ModelExpr::direct_sum(v),
                }
            };
            Ok(BicommutantShape {
                interval_part: assemble(interval_parts)?,
                boolean_part: assemble(boolean_parts)?,
                splitting_idempotent: m.want(&Elem::Tuple(split_comps))?,
                roster: None,
                detail: details.join("; "),
            })
        }
        other => Err(Error::Unsupported(format!(
            "no registered bicommutant shape for {} models",
            other.kind_name()
        ))),
    }
}

/// Closes a seed set (plus 0 and 1) under complement, partial sum, and
/// product inside a finite model.
fn generated_subalgebra(m: &ModelExpr, seeds: &[Elem]) -> Result<Vec<Elem>> {
    let mut set: Vec<Elem> = vec![Elem::Zero, Elem::One];
    for s in seeds {
        let c = m.want(s)?;
        if !set.contains(&c) {
            set.push(c);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = set.clone();
        for e in &snapshot {
            let c = m.complement(e)?;
            if !set.contains(&c) {
                set.push(c);
                grew = true;
            }
        }
        for x in &snapshot {
            for y in &snapshot {
                if let Some(s) = m.partial_sum(x, y)? {
                    if !set.contains(&s) {
                        set.push(s);
                        grew = true;
                    }
                }
                let p = m.seq_product(x, y)?;
                if !set.contains(&p) {
                    set.push(p);
                    grew = true;
                }
            }
        }
        if set.len() > 4096 {
            return Err(Error::BudgetExceeded {
                size: set.len(),
                budget: 4096,
            });
        }
        if !grew {
            break;
        }
    }
    set.sort();
    Ok(set)
}

/// Re-indexes a closed subset of a finite model as a standalone table with
/// the restricted sum, complement, and product.
fn build_subtable(m: &ModelExpr, roster: &[Elem]) -> Result<ModelExpr> {
    let pos = |e: &Elem| -> Result<usize> {
        roster.iter().position(|x| x == e).ok_or_else(|| {
            Error::Structure(format!("{e} escaped the roster during subtable construction"))
        })
    };
    let one = pos(&Elem::One)?;
    let mut triples = Vec::new();
    let mut perp = vec![0usize; roster.len()];
    let mut product = vec![0usize; roster.len() * roster.len()];
    for (i, x) in roster.iter().enumerate() {
        perp[i] = pos(&m.complement(x)?)?;
        for (j, y) in roster.iter().enumerate() {
            if j < i {
                continue;
            }
            if let Some(s) = m.partial_sum(x, y)? {
                triples.push((i, j, pos(&s)?));
            }
        }
        for (j, y) in roster.iter().enumerate() {
            product[i * roster.len() + j] = pos(&m.seq_product(x, y)?)?;
        }
    }
    let table = FiniteEaTable::new(roster.len(), one, &triples, perp)?;
    ModelExpr::finite_with_product(table, product)
}

/// A directed family in the matrix interval with two distinct minimal
/// upper bounds (hence no supremum): the chain `cₙ·R` with
/// `R = [[1,1],[0,0]]` and `cₙ = 1/2 − 2^-(n+1)` increasing to 1/2. Every
/// upper bound has trace at least 1/2; both `(1/2)·id` and `(1/2)·R` have
/// trace exactly 1/2, so nothing strictly below either one dominates the
/// family, and the two are incomparable.
#[derive(Debug, Clone)]
pub struct MinimalUpperBoundsDemo {
    pub family: Vec<Elem>,
    pub bound_a: Elem,
    pub bound_b: Elem,
    pub family_is_chain: bool,
    pub bounds_dominate: bool,
    pub bounds_incomparable: bool,
    /// Every sampled member strictly below a bound fails to dominate some
    /// family member (of the full infinite family; the defeating index is
    /// computed from the trace).
    pub smaller_bounds_defeated: bool,
    pub detail: String,
}

pub fn matrix_minimal_upper_bounds_demo(depth: usize) -> Result<MinimalUpperBoundsDemo> {
    use num_traits::One as _;
    let m = ModelExpr::MatrixInterval;
    let depth = depth.max(2);
    let r_mat = Mat2::new(rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1));
    let half = rat(1, 2);

    let c = |n: usize| -> Rat { &half - rat(1, 1 << (n + 1).min(62)) };
    let mut family = Vec::with_capacity(depth);
    for n in 1..=depth {
        family.push(m.want(&Elem::Mat(r_mat.scale(&c(n))))?);
    }
    let bound_a = m.want(&Elem::Mat(Mat2::scalar(&half)))?;
    let bound_b = m.want(&Elem::Mat(r_mat.scale(&half)))?;

    let mut family_is_chain = true;
    for w in family.windows(2) {
        family_is_chain &= m.leq(&w[0], &w[1])?;
    }
    let mut bounds_dominate = true;
    for e in &family {
        bounds_dominate &= m.leq(e, &bound_a)? && m.leq(e, &bound_b)?;
    }
    let bounds_incomparable =
        !m.leq(&bound_a, &bound_b)? && !m.leq(&bound_b, &bound_a)? && bound_a != bound_b;

    // Members strictly below a bound have trace < 1/2 (the order is
    // trace-dominance); each is defeated by the family member whose
    // coefficient reaches its trace.
    let below_samples = [
        Elem::Mat(Mat2::scalar(&rat(1, 4))),
        Elem::Mat(r_mat.scale(&rat(3, 8))),
        Elem::Mat(Mat2::new(rat(0, 1), rat(0, 1), rat(127, 256), rat(127, 256))),
        Elem::Mat(r_mat.scale(&c(depth))),
        Elem::Mat(Mat2::scalar(&rat(255, 512))),
    ];
    let mut smaller_bounds_defeated = true;
    for cand in &below_samples {
        let cand = m.want(cand)?;
        let t = crate::models::tau(&cand)?;
        if t >= half {
            return Err(Error::Structure("demo sample is not strictly below the bounds".into()));
        }
        // Find n with c(n) >= τ(cand); it exists since c(n) → 1/2.
        let mut n = 1;
        while c(n) < t {
            n += 1;
            if n > 128 {
                return Err(Error::Structure("defeating index not found".into()));
            }
        }
        let mut fam_elem = m.want(&Elem::Mat(r_mat.scale(&c(n))))?;
        if fam_elem == cand {
            fam_elem = m.want(&Elem::Mat(r_mat.scale(&c(n + 1))))?;
        }
        smaller_bounds_defeated &= !m.leq(&fam_elem, &cand)?;
    }

    let one = Rat::one();
    let detail = format!(
        "family cₙ·[[1,1],[0,0]] with cₙ = 1/2 − 2^-(n+1) (n = 1..{depth}), traces \
         increasing to 1/2 < {one}; an upper bound must have trace > cₙ for every n, \
         hence trace >= 1/2; both candidate bounds have trace exactly 1/2 and differ, \
         so each is minimal and no supremum exists"
    );
    Ok(MinimalUpperBoundsDemo {
        family,
        bound_a,
        bound_b,
        family_is_chain,
        bounds_dominate,
        bounds_incomparable,
        smaller_bounds_defeated,
        detail,
    })
}
