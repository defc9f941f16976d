//! Sequential-product axioms, effect-monoid checks, commutation structure,
//! and the derived operations floor, division, halves, and square roots.
//!
//! The product axioms checked by [`check_sea_axioms`] (law ids in
//! parentheses):
//!
//! - S1 (`sea.s1`): `a∘b` and `a∘c` are summable when `b ⊥ c`, with
//!   `a∘(b ⊻ c) = a∘b ⊻ a∘c`.
//! - S2 (`sea.s2`): `1∘a = a`.
//! - S3 (`sea.s3`): `a∘b = 0` implies `b∘a = 0`.
//! - S4 (`sea.s4`): if `a∘b = b∘a` then `a∘b⊥ = b⊥∘a` and
//!   `a∘(b∘c) = (a∘b)∘c` for every `c`.
//! - S5 (`sea.s5`): if `c` commutes with `a` and `b` then `c` commutes with
//!   `a∘b`, and with `a ⊻ b` when defined.
//! - S6: products preserve suprema of directed sets in the second argument
//!   and commutation passes to such suprema. On small finite models this is
//!   verified subset-by-subset; elsewhere it holds by the construction of
//!   the family's closed-form product and is reported as a note, not
//!   computed.
//!
//! Seven consequences of S1–S5 are re-checked as derived laws
//! (`sea.derived.*`); on a valid model they can never fire, so a hit always
//! witnesses a broken product table.

use num_traits::One as _;
use std::collections::HashSet;

use crate::models::{Elem, ModelExpr};
use crate::rational::{rat, sqrt_exact, sqrt_floor, Mat2, Rat};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// Default denominator precision (`2^-40`) for inexact square roots.
pub const DEFAULT_SQRT_DENOM_BITS: u32 = 40;

/// Configuration for the sampled/exhaustive checkers.
#[derive(Debug, Clone)]
pub struct SeaCheckConfig {
    /// Elements drawn per parametric family; also the enumeration budget for
    /// finite models. Must be at least 8 so the mandatory sample points fit.
    pub sample_budget: usize,
    /// Whether to attempt the directed-suprema axiom on small finite models.
    pub check_s6: bool,
    /// Seed for the deterministic sampler.
    pub seed: u64,
}

impl Default for SeaCheckConfig {
    fn default() -> Self {
        SeaCheckConfig {
            sample_budget: 24,
            check_s6: true,
            seed: 0,
        }
    }
}

impl SeaCheckConfig {
    pub fn with_budget(sample_budget: usize, seed: u64) -> Self {
        SeaCheckConfig {
            sample_budget,
            seed,
            ..SeaCheckConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.sample_budget < 8 {
            return Err(Error::BudgetTooSmall {
                budget: self.sample_budget,
                required: 8,
            });
        }
        Ok(())
    }

    /// The element pool every checker works over.
    pub fn elements(&self, m: &ModelExpr) -> Result<Vec<Elem>> {
        self.validate()?;
        m.enumerate_or_sample(self.sample_budget, self.seed)
    }
}

pub fn is_idempotent(m: &ModelExpr, a: &Elem) -> Result<bool> {
    let a = m.want(a)?;
    Ok(m.seq_product(&a, &a)? == a)
}

pub fn commutes(m: &ModelExpr, a: &Elem, b: &Elem) -> Result<bool> {
    Ok(m.seq_product(a, b)? == m.seq_product(b, a)?)
}

/// Checks S1–S5 (exhaustively on finite models, over the deterministic
/// sample on parametric ones), S6 where computable, and the seven derived
/// laws. The report passes iff the model is a valid sequential effect
/// algebra as far as the element pool can tell.
pub fn check_sea_axioms(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<ValidationReport> {
    let elems = cfg.elements(m)?;
    let mut r = ValidationReport::new();
    if !m.has_product() {
        return Err(Error::NoProduct(
            "sequential axioms need a product; none is attached to this model".into(),
        ));
    }

    // S1: left additivity, including definedness of the right-hand side.
    for a in &elems {
        for b in &elems {
            let ab = m.seq_product(a, b)?;
            for c in &elems {
                let Some(bc) = m.partial_sum(b, c)? else { continue };
                r.tick();
                let lhs = m.seq_product(a, &bc)?;
                let ac = m.seq_product(a, c)?;
                match m.partial_sum(&ab, &ac)? {
                    Some(rhs) if rhs == lhs => {}
                    Some(rhs) => r.record(
                        "sea.s1",
                        format!("a={a} b={b} c={c}: a∘(b⊻c)={lhs} but a∘b ⊻ a∘c={rhs}"),
                    ),
                    None => r.record(
                        "sea.s1",
                        format!("a={a} b={b} c={c}: a∘b={ab} and a∘c={ac} are not summable"),
                    ),
                }
            }
        }
    }

    for a in &elems {
        r.tick();
        let got = m.seq_product(&Elem::One, a)?;
        if got != *a {
            r.record("sea.s2", format!("1∘{a} = {got}"));
        }
    }

    for a in &elems {
        for b in &elems {
            r.tick();
            if m.seq_product(a, b)? == Elem::Zero && m.seq_product(b, a)? != Elem::Zero {
                r.record("sea.s3", format!("{a}∘{b} = 0 but {b}∘{a} != 0"));
            }
        }
    }

    for a in &elems {
        for b in &elems {
            if !commutes(m, a, b)? {
                continue;
            }
            r.tick();
            let bp = m.complement(b)?;
            if !commutes(m, a, &bp)? {
                r.record("sea.s4", format!("{a} commutes with {b} but not with {b}⊥"));
            }
            for c in &elems {
                r.tick();
                let lhs = m.seq_product(a, &m.seq_product(b, c)?)?;
                let rhs = m.seq_product(&m.seq_product(a, b)?, c)?;
                if lhs != rhs {
                    r.record(
                        "sea.s4",
                        format!("a={a} b={b} (commuting), c={c}: a∘(b∘c)={lhs} != (a∘b)∘c={rhs}"),
                    );
                }
            }
        }
    }

    for c in &elems {
        for a in &elems {
            if !commutes(m, c, a)? {
                continue;
            }
            for b in &elems {
                if !commutes(m, c, b)? {
                    continue;
                }
                r.tick();
                let ab = m.seq_product(a, b)?;
                if !commutes(m, c, &ab)? {
                    r.record(
                        "sea.s5",
                        format!("{c} commutes with {a} and {b} but not with {a}∘{b}"),
                    );
                }
                if let Some(s) = m.partial_sum(a, b)? {
                    r.tick();
                    if !commutes(m, c, &s)? {
                        r.record(
                            "sea.s5",
                            format!("{c} commutes with {a} and {b} but not with {a} ⊻ {b}"),
                        );
                    }
                }
            }
        }
    }

    if cfg.check_s6 {
        check_s6(m, &elems, &mut r)?;
    }

    check_derived_properties(m, &elems, &mut r)?;
    Ok(r)
}

/// S6 on a finite pool: every directed subset of the pool that contains its
/// maximum `d` must satisfy `a ∘ d = max { a ∘ s }` and inherit commutation.
/// Feasible only for small pools; parametric families get a note (their
/// closed-form products are multiplication-like and continuous, so the law
/// holds by construction).
fn check_s6(m: &ModelExpr, elems: &[Elem], r: &mut ValidationReport) -> Result<()> {
    if m.is_parametric() || elems.len() > 12 {
        r.note(
            "s6: asserted by family (closed-form product preserves directed suprema); \
             not computed",
        );
        return Ok(());
    }
    let n = elems.len();
    for mask in 1u32..(1 << n) {
        let set: Vec<&Elem> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| &elems[i]).collect();
        let mut max: Option<&Elem> = None;
        for cand in &set {
            let mut is_max = true;
            for s in &set {
                if !m.leq(s, cand)? {
                    is_max = false;
                    break;
                }
            }
            if is_max {
                max = Some(cand);
                break;
            }
        }
        // A directed subset of a finite algebra always has a maximum; skip
        // non-directed subsets (those without one need not be checked).
        let Some(d) = max else { continue };
        for a in elems {
            r.tick();
            let ad = m.seq_product(a, d)?;
            for s in &set {
                if !m.leq(&m.seq_product(a, s)?, &ad)? {
                    r.record(
                        "sea.s6",
                        format!("a={a}: a∘sup != sup a∘s over subset with max {d}"),
                    );
                }
            }
            let mut all_commute = true;
            for s in &set {
                if !commutes(m, a, s)? {
                    all_commute = false;
                    break;
                }
            }
            if all_commute && !commutes(m, a, d)? {
                r.record(
                    "sea.s6",
                    format!("{a} commutes with a directed subset but not with its maximum {d}"),
                );
            }
        }
    }
    r.note(format!("s6: verified on all directed subsets of the {n}-element pool"));
    Ok(())
}

/// The seven standard consequences of S1–S5, re-checked directly.
fn check_derived_properties(m: &ModelExpr, elems: &[Elem], r: &mut ValidationReport) -> Result<()> {
    let idempotents: Vec<&Elem> = {
        let mut v = Vec::new();
        for e in elems {
            if is_idempotent(m, e)? {
                v.push(e);
            }
        }
        v
    };

    for a in elems {
        r.tick();
        if m.seq_product(a, &Elem::Zero)? != Elem::Zero
            || m.seq_product(&Elem::Zero, a)? != Elem::Zero
            || m.seq_product(a, &Elem::One)? != *a
            || m.seq_product(&Elem::One, a)? != *a
        {
            r.record("sea.derived.zero-one-absorb", format!("0/1 do not absorb at {a}"));
        }
    }

    for a in elems {
        for b in elems {
            r.tick();
            let ab = m.seq_product(a, b)?;
            if !m.leq(&ab, a)? {
                r.record("sea.derived.product-below-left", format!("{a}∘{b} = {ab} is not <= {a}"));
            }
        }
    }

    for a in elems {
        for b in elems {
            if !m.leq(a, b)? {
                continue;
            }
            for c in elems {
                r.tick();
                if !m.leq(&m.seq_product(c, a)?, &m.seq_product(c, b)?)? {
                    r.record(
                        "sea.derived.right-monotone",
                        format!("{a} <= {b} but {c}∘{a} is not <= {c}∘{b}"),
                    );
                }
            }
        }
    }

    // Five-way equivalences around an idempotent p.
    for &p in &idempotents {
        let pc = m.complement(p)?;
        for a in elems {
            let ac = m.complement(a)?;
            r.tick();
            let above = [
                m.leq(p, a)?,
                m.seq_product(p, a)? == *p,
                m.seq_product(a, p)? == *p,
                m.seq_product(&ac, p)? == Elem::Zero,
                m.seq_product(p, &ac)? == Elem::Zero,
            ];
            if above.iter().any(|&x| x != above[0]) {
                r.record(
                    "sea.derived.idempotent-above",
                    format!("p={p} a={a}: p<=a equivalences disagree: {above:?}"),
                );
            }
            r.tick();
            let below = [
                m.leq(a, p)?,
                m.seq_product(p, a)? == *a,
                m.seq_product(a, p)? == *a,
                m.seq_product(a, &pc)? == Elem::Zero,
                m.seq_product(&pc, a)? == Elem::Zero,
            ];
            if below.iter().any(|&x| x != below[0]) {
                r.record(
                    "sea.derived.idempotent-below",
                    format!("p={p} a={a}: a<=p equivalences disagree: {below:?}"),
                );
            }
        }
    }

    for &p in &idempotents {
        r.tick();
        let pc = m.complement(p)?;
        if !is_idempotent(m, &pc)? {
            r.record("sea.derived.perp-idempotent", format!("{p} is idempotent but {pc} is not"));
        }
    }

    for &p in &idempotents {
        for a in elems {
            let Some(s) = m.partial_sum(p, a)? else { continue };
            r.tick();
            if is_idempotent(m, a)? != is_idempotent(m, &s)? {
                r.record(
                    "sea.derived.orthosum-idempotent",
                    format!("p={p} idempotent, a={a}: a and p ⊻ a = {s} disagree on idempotence"),
                );
            }
        }
    }
    Ok(())
}

/// Result of the effect-monoid check: the hard laws (unit, two-sided
/// distributivity, associativity) in `report`, plus informational
/// classification bits computed on the same pool.
#[derive(Debug, Clone)]
pub struct EffectMonoidReport {
    pub report: ValidationReport,
    pub commutative: bool,
    pub commutativity_witness: Option<String>,
    /// Whether `a·b = 0 ⟹ b·a = 0` held on the pool. An effect monoid with
    /// this bridge property is a sequential effect algebra as-is.
    pub s3_bridge_holds: bool,
    pub s3_bridge_witness: Option<String>,
    pub zero_divisor_free: bool,
    pub zero_divisor_witness: Option<String>,
}

impl EffectMonoidReport {
    pub fn is_effect_monoid(&self) -> bool {
        self.report.passed()
    }
}

/// Checks the effect-monoid laws: `·` total (by construction of the model
/// product), unital on both sides, distributive over `⊻` in both arguments
/// (including definedness), associative.
pub fn check_effect_monoid(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<EffectMonoidReport> {
    let elems = cfg.elements(m)?;
    let mut r = ValidationReport::new();
    if !m.has_product() {
        return Err(Error::NoProduct(
            "effect-monoid laws need a product; none is attached to this model".into(),
        ));
    }

    for a in &elems {
        r.tick();
        if m.seq_product(&Elem::One, a)? != *a || m.seq_product(a, &Elem::One)? != *a {
            r.record("monoid.unit", format!("1 is not a two-sided unit at {a}"));
        }
    }

    for a in &elems {
        for b in &elems {
            for c in &elems {
                let Some(bc) = m.partial_sum(b, c)? else { continue };
                r.tick();
                let left = m.seq_product(a, &bc)?;
                match m.partial_sum(&m.seq_product(a, b)?, &m.seq_product(a, c)?)? {
                    Some(s) if s == left => {}
                    got => r.record(
                        "monoid.left-distributivity",
                        format!("a={a} b={b} c={c}: a·(b⊻c)={left} but a·b ⊻ a·c={got:?}"),
                    ),
                }
                r.tick();
                let right = m.seq_product(&bc, a)?;
                match m.partial_sum(&m.seq_product(b, a)?, &m.seq_product(c, a)?)? {
                    Some(s) if s == right => {}
                    got => r.record(
                        "monoid.right-distributivity",
                        format!("a={a} b={b} c={c}: (b⊻c)·a={right} but b·a ⊻ c·a={got:?}"),
                    ),
                }
            }
        }
    }

    for a in &elems {
        for b in &elems {
            let ab = m.seq_product(a, b)?;
            for c in &elems {
                r.tick();
                let lhs = m.seq_product(&ab, c)?;
                let rhs = m.seq_product(a, &m.seq_product(b, c)?)?;
                if lhs != rhs {
                    r.record(
                        "monoid.associativity",
                        format!("(({a})·({b}))·({c}) = {lhs} != {rhs}"),
                    );
                }
            }
        }
    }

    let mut commutative = true;
    let mut commutativity_witness = None;
    let mut s3_bridge_holds = true;
    let mut s3_bridge_witness = None;
    let mut zero_divisor_free = true;
    let mut zero_divisor_witness = None;
    for a in &elems {
        for b in &elems {
            let ab = m.seq_product(a, b)?;
            let ba = m.seq_product(b, a)?;
            if commutative && ab != ba {
                commutative = false;
                commutativity_witness = Some(format!("{a}·{b} = {ab} != {ba} = {b}·{a}"));
            }
            if s3_bridge_holds && ab == Elem::Zero && ba != Elem::Zero {
                s3_bridge_holds = false;
                s3_bridge_witness = Some(format!("{a}·{b} = 0 but {b}·{a} = {ba}"));
            }
            if zero_divisor_free && ab == Elem::Zero && *a != Elem::Zero && *b != Elem::Zero {
                zero_divisor_free = false;
                zero_divisor_witness = Some(format!("{a}·{b} = 0 with both factors nonzero"));
            }
        }
    }

    Ok(EffectMonoidReport {
        report: r,
        commutative,
        commutativity_witness,
        s3_bridge_holds,
        s3_bridge_witness,
        zero_divisor_free,
        zero_divisor_witness,
    })
}

/// Semantic description of a subset of a model, used for commutants and
/// centers. Exact variants certify membership by a closed form; `Sampled`
/// lists what a sampled scan found and is flagged inexact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MemberSet {
    /// Exact finite roster.
    Listed(Vec<Elem>),
    /// Every member of the model.
    WholeAlgebra,
    /// `{0, 1} ∪ { q·id : 0 < q < 1 }` in the matrix interval.
    ScalarsOfIdentity,
    /// `{0, 1}` plus the interior of one branch of a horizontal sum.
    BranchWithBounds(usize),
    /// `{ x·id + y·A } ∩ M` for a fixed non-scalar matrix `A`: the commutant
    /// of a non-scalar 2×2 matrix is exactly the polynomials in it.
    MatrixSpan(Mat2),
    /// Componentwise sets inside a direct sum.
    ComponentWise(Vec<MemberSet>),
    /// Result of a sampled scan; membership beyond the roster is unknown.
    Sampled(Vec<Elem>),
}

impl MemberSet {
    pub fn is_exact(&self) -> bool {
        match self {
            MemberSet::Sampled(_) => false,
            MemberSet::ComponentWise(sets) => sets.iter().all(MemberSet::is_exact),
            _ => true,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MemberSet::Listed(es) => {
                let names: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                format!("{{{}}}", names.join(", "))
            }
            MemberSet::WholeAlgebra => "the whole algebra".into(),
            MemberSet::ScalarsOfIdentity => {
                "scalar multiples of the identity: {0, 1} ∪ {q·id : 0 < q < 1}".into()
            }
            MemberSet::BranchWithBounds(k) => format!("branch {k} together with 0 and 1"),
            MemberSet::MatrixSpan(a) => format!("members of the form x·id + y·{a}"),
            MemberSet::ComponentWise(sets) => {
                let parts: Vec<String> = sets.iter().map(MemberSet::describe).collect();
                format!("componentwise: [{}]", parts.join(" | "))
            }
            MemberSet::Sampled(es) => format!("sampled scan found {} members", es.len()),
        }
    }

    /// Membership in the described set. `e` must be a member of `m`.
    pub fn contains(&self, m: &ModelExpr, e: &Elem) -> Result<bool> {
        let e = m.want(e)?;
        match self {
            MemberSet::Listed(es) | MemberSet::Sampled(es) => Ok(es.contains(&e)),
            MemberSet::WholeAlgebra => Ok(true),
            MemberSet::ScalarsOfIdentity => Ok(match &e {
                Elem::Zero | Elem::One => true,
                Elem::Mat(mt) => is_scalar_mat(mt),
                _ => false,
            }),
            MemberSet::BranchWithBounds(k) => Ok(match &e {
                Elem::Zero | Elem::One => true,
                Elem::Branch(l, _) => l == k,
                _ => false,
            }),
            MemberSet::MatrixSpan(a) => {
                let Elem::Mat(mt) = (match &e {
                    Elem::Zero => Elem::Mat(Mat2::zero()),
                    Elem::One => Elem::Mat(Mat2::identity()),
                    other => other.clone(),
                }) else {
                    return Ok(false);
                };
                Ok(solve_span(a, &mt).is_some())
            }
            MemberSet::ComponentWise(sets) => {
                let ModelExpr::DirectSum { parts } = m else {
                    return Err(Error::InvalidModel(
                        "componentwise member set needs a direct-sum model".into(),
                    ));
                };
                let comps = match &e {
                    Elem::Zero => vec![Elem::Zero; parts.len()],
                    Elem::One => vec![Elem::One; parts.len()],
                    Elem::Tuple(es) => es.clone(),
                    _ => return Ok(false),
                };
                for ((set, part), comp) in sets.iter().zip(parts).zip(&comps) {
                    if !set.contains(part, comp)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Representative members for closure verification and display.
    pub fn sample(&self, m: &ModelExpr, budget: usize, seed: u64) -> Result<Vec<Elem>> {
        let mut out: Vec<Elem> = Vec::new();
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut push = |e: Elem, out: &mut Vec<Elem>| {
            if seen.insert(e.clone()) {
                out.push(e);
            }
        };
        match self {
            MemberSet::Listed(es) | MemberSet::Sampled(es) => {
                for e in es {
                    push(e.clone(), &mut out);
                }
            }
            MemberSet::WholeAlgebra => {
                for e in m.enumerate_or_sample(budget, seed)? {
                    push(e, &mut out);
                }
            }
            MemberSet::ScalarsOfIdentity => {
                push(Elem::Zero, &mut out);
                push(Elem::One, &mut out);
                for q in [rat(1, 2), rat(1, 4), rat(3, 4), rat(1, 64), rat(63, 64), rat(1, 3)] {
                    push(Elem::Mat(Mat2::scalar(&q)), &mut out);
                }
            }
            MemberSet::BranchWithBounds(k) => {
                push(Elem::Zero, &mut out);
                push(Elem::One, &mut out);
                let ModelExpr::HorizontalSum { parts } = m else {
                    return Err(Error::InvalidModel(
                        "branch member set needs a horizontal-sum model".into(),
                    ));
                };
                for e in parts[*k].enumerate_or_sample(budget.max(8) / 2, seed)? {
                    if !e.is_boundary() {
                        push(Elem::branch(*k, e), &mut out);
                    }
                }
            }
            MemberSet::MatrixSpan(a) => {
                let grid = [rat(0, 1), rat(1, 4), rat(1, 2), rat(-1, 4), rat(1, 1), rat(-1, 2)];
                for x in &grid {
                    for y in &grid {
                        let cand = Mat2::scalar(x).add(&a.scale(y));
                        if let Some(c) = m.canon(&Elem::Mat(cand))? {
                            push(c, &mut out);
                        }
                    }
                }
            }
            MemberSet::ComponentWise(sets) => {
                let ModelExpr::DirectSum { parts } = m else {
                    return Err(Error::InvalidModel(
                        "componentwise member set needs a direct-sum model".into(),
                    ));
                };
                let mut combos: Vec<Vec<Elem>> = vec![Vec::new()];
                for (set, part) in sets.iter().zip(parts) {
                    let options = set.sample(part, budget.max(4) / 2, seed)?;
                    let mut next = Vec::new();
                    for prefix in &combos {
                        for opt in &options {
                            if next.len() >= budget * 4 {
                                break;
                            }
                            let mut row = prefix.clone();
                            row.push(opt.clone());
                            next.push(row);
                        }
                    }
                    combos = next;
                }
                for row in combos.into_iter().take(budget * 2) {
                    push(m.want(&Elem::Tuple(row))?, &mut out);
                }
            }
        }
        Ok(out)
    }
}

fn is_scalar_mat(mt: &Mat2) -> bool {
    use num_traits::Zero as _;
    mt.b.is_zero() && mt.c.is_zero() && mt.a == mt.d
}

/// Solves `mt = x·id + y·a` for a non-scalar `a`; returns `(x, y)`.
fn solve_span(a: &Mat2, mt: &Mat2) -> Option<(Rat, Rat)> {
    use num_traits::Zero as _;
    let diag = &a.a - &a.d;
    let y = if !a.b.is_zero() {
        &mt.b / &a.b
    } else if !a.c.is_zero() {
        &mt.c / &a.c
    } else if !diag.is_zero() {
        (&mt.a - &mt.d) / diag
    } else {
        return None; // `a` is scalar; the span degenerates.
    };
    let x = &mt.a - &y * &a.a;
    let cand = Mat2::scalar(&x).add(&a.scale(&y));
    (cand == *mt).then_some((x, y))
}

/// A subset of a model closed under the algebra operations, with the
/// closure facts verified on a representative pool.
#[derive(Debug, Clone)]
pub struct SubalgebraClosure {
    pub generators: Vec<Elem>,
    pub set: MemberSet,
    pub closed_under_sum: bool,
    pub closed_under_complement: bool,
    pub closed_under_product: bool,
    /// `false` when the roster came from a sampled scan rather than an
    /// exhaustive pass or a registered closed form.
    pub exact: bool,
    pub notes: Vec<String>,
}

impl SubalgebraClosure {
    pub fn contains(&self, m: &ModelExpr, e: &Elem) -> Result<bool> {
        self.set.contains(m, e)
    }

    fn verified(m: &ModelExpr, generators: Vec<Elem>, set: MemberSet, cfg: &SeaCheckConfig) -> Result<Self> {
        let exact = set.is_exact();
        let pool = set.sample(m, cfg.sample_budget, cfg.seed)?;
        let mut sum_ok = true;
        let mut comp_ok = true;
        let mut prod_ok = true;
        let mut notes = Vec::new();
        for a in &pool {
            if !m.membership(a)? {
                notes.push(format!("{a} left the carrier"));
            }
            if !set.contains(m, &m.complement(a)?)? {
                comp_ok = false;
                notes.push(format!("complement of {a} escapes the set"));
            }
            for b in &pool {
                if let Some(s) = m.partial_sum(a, b)? {
                    if !set.contains(m, &s)? {
                        sum_ok = false;
                        notes.push(format!("{a} ⊻ {b} = {s} escapes the set"));
                    }
                }
                if m.has_product() {
                    let p = m.seq_product(a, b)?;
                    if !set.contains(m, &p)? {
                        prod_ok = false;
                        notes.push(format!("{a} ∘ {b} = {p} escapes the set"));
                    }
                }
            }
        }
        notes.truncate(4);
        Ok(SubalgebraClosure {
            generators,
            set,
            closed_under_sum: sum_ok,
            closed_under_complement: comp_ok,
            closed_under_product: prod_ok,
            exact,
            notes,
        })
    }
}

fn listed_scan(keep: impl Fn(&Elem) -> Result<bool>, pool: &[Elem]) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    for e in pool {
        if keep(e)? {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// The commutant `S′ = { a : a ∘ s = s ∘ a for every s in S }`.
///
/// Exhaustive on finite models. Parametric families with a registered closed
/// form: the interval (commutative, so everything), horizontal sums of
/// intervals (branch analysis), the matrix interval (span analysis), and
/// direct sums (componentwise). Other parametric models are unsupported.
pub fn commutant(m: &ModelExpr, gens: &[Elem], cfg: &SeaCheckConfig) -> Result<SubalgebraClosure> {
    let gens: Vec<Elem> = gens.iter().map(|g| m.want(g)).collect::<Result<_>>()?;
    let set = commutant_set(m, &gens, cfg)?;
    SubalgebraClosure::verified(m, gens, set, cfg)
}

fn commutant_set(m: &ModelExpr, gens: &[Elem], cfg: &SeaCheckConfig) -> Result<MemberSet> {
    if !m.is_parametric() {
        let pool = m.enumerate_or_sample(cfg.sample_budget.max(1024), cfg.seed)?;
        let listed = listed_scan(
            |e| {
                for g in gens {
                    if !commutes(m, e, g)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
            &pool,
        )?;
        return Ok(MemberSet::Listed(listed));
    }
    match m {
        ModelExpr::Interval => Ok(MemberSet::WholeAlgebra),
        ModelExpr::MatrixInterval => {
            // Scalars (0, 1 included) commute with everything; only the
            // non-scalar generators constrain the commutant.
            let non_scalar: Vec<Mat2> = gens
                .iter()
                .filter_map(|g| match g {
                    Elem::Mat(mt) if !is_scalar_mat(mt) => Some(mt.clone()),
                    _ => None,
                })
                .collect();
            match non_scalar.split_first() {
                None => Ok(MemberSet::WholeAlgebra),
                Some((a0, rest)) => {
                    let span = MemberSet::MatrixSpan(a0.clone());
                    let mut all_in_span = true;
                    for g in rest {
                        if solve_span(a0, g).is_none() {
                            all_in_span = false;
                            break;
                        }
                    }
                    if all_in_span {
                        Ok(span)
                    } else {
                        // Two non-commuting directions leave only scalars.
                        Ok(MemberSet::ScalarsOfIdentity)
                    }
                }
            }
        }
        ModelExpr::HorizontalSum { .. } => {
            let branches: HashSet<usize> = gens
                .iter()
                .filter_map(|g| match g {
                    Elem::Branch(k, _) => Some(*k),
                    _ => None,
                })
                .collect();
            match branches.len() {
                0 => Ok(MemberSet::WholeAlgebra),
                1 => Ok(MemberSet::BranchWithBounds(*branches.iter().next().unwrap())),
                _ => Ok(MemberSet::Listed(vec![Elem::Zero, Elem::One])),
            }
        }
        ModelExpr::DirectSum { parts } => {
            let mut sets = Vec::with_capacity(parts.len());
            for (k, part) in parts.iter().enumerate() {
                let projected: Vec<Elem> = gens
                    .iter()
                    .map(|g| match part_component(m, g, k) {
                        Some(c) => Ok(c),
                        None => Err(Error::FamilyMismatch(format!(
                            "generator {g} does not project onto part {k}"
                        ))),
                    })
                    .collect::<Result<_>>()?;
                sets.push(commutant_set(part, &projected, cfg)?);
            }
            Ok(MemberSet::ComponentWise(sets))
        }
        other => Err(Error::Unsupported(format!(
            "symbolic commutant is not registered for parametric {} models",
            other.kind_name()
        ))),
    }
}

fn part_component(ds: &ModelExpr, e: &Elem, k: usize) -> Option<Elem> {
    let ModelExpr::DirectSum { parts } = ds else { return None };
    match e {
        Elem::Zero => Some(Elem::Zero),
        Elem::One => Some(Elem::One),
        Elem::Tuple(es) => es.get(k).cloned(),
        _ => None,
    }
    .filter(|_| k < parts.len())
}

/// The bicommutant `S″ = (S′)′`, with `S ⊆ S″ ⊆ S′` verified on the
/// generators and the sampled roster.
pub fn bicommutant(m: &ModelExpr, gens: &[Elem], cfg: &SeaCheckConfig) -> Result<SubalgebraClosure> {
    let gens: Vec<Elem> = gens.iter().map(|g| m.want(g)).collect::<Result<_>>()?;
    let prime = commutant_set(m, &gens, cfg)?;
    let second = commutant_of_set(m, &prime, cfg)?;
    let mut closure = SubalgebraClosure::verified(m, gens.clone(), second, cfg)?;
    for g in &gens {
        if !closure.set.contains(m, g)? {
            closure.notes.push(format!("generator {g} missing from the bicommutant"));
        }
    }
    let sample = closure.set.sample(m, cfg.sample_budget, cfg.seed)?;
    for e in &sample {
        if !prime.contains(m, e)? {
            closure
                .notes
                .push(format!("{e} is in the bicommutant but not the commutant"));
        }
    }
    Ok(closure)
}

/// Commutant of an already-described set.
fn commutant_of_set(m: &ModelExpr, set: &MemberSet, cfg: &SeaCheckConfig) -> Result<MemberSet> {
    match set {
        MemberSet::Listed(es) | MemberSet::Sampled(es) => commutant_set(m, es, cfg),
        MemberSet::WholeAlgebra => {
            // The commutant of everything is the center.
            Ok(center(m, cfg)?.set)
        }
        MemberSet::ScalarsOfIdentity => Ok(MemberSet::WholeAlgebra),
        MemberSet::BranchWithBounds(k) => Ok(MemberSet::BranchWithBounds(*k)),
        MemberSet::MatrixSpan(a) => Ok(MemberSet::MatrixSpan(a.clone())),
        MemberSet::ComponentWise(sets) => {
            let ModelExpr::DirectSum { parts } = m else {
                return Err(Error::InvalidModel(
                    "componentwise member set needs a direct-sum model".into(),
                ));
            };
            let mut out = Vec::with_capacity(sets.len());
            for (set, part) in sets.iter().zip(parts) {
                out.push(commutant_of_set(part, set, cfg)?);
            }
            Ok(MemberSet::ComponentWise(out))
        }
    }
}

/// The center `Z = { a : a commutes with everything }`.
///
/// Exhaustive on finite models. Closed forms: the interval and Boolean
/// models are commutative (everything), horizontal sums have center `{0,1}`,
/// the matrix interval's center is the scalar multiples of the identity,
/// direct sums are componentwise, and a corner below a central idempotent
/// projects the base center. Non-central corners fall back to a sampled
/// scan, flagged inexact.
pub fn center(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<SubalgebraClosure> {
    let set = center_set(m, cfg)?;
    let mut closure = SubalgebraClosure::verified(m, vec![], set, cfg)?;
    // Cross-validate the closed form against the sampled pool: everything in
    // the set must commute with every sampled element.
    let pool = m.enumerate_or_sample(cfg.sample_budget, cfg.seed)?;
    let sample = closure.set.sample(m, cfg.sample_budget, cfg.seed)?;
    for z in &sample {
        for e in &pool {
            if !commutes(m, z, e)? {
                closure
                    .notes
                    .push(format!("claimed central {z} fails to commute with {e}"));
            }
        }
    }
    for e in &pool {
        let mut central = true;
        for x in &pool {
            if !commutes(m, e, x)? {
                central = false;
                break;
            }
        }
        if !central && closure.set.contains(m, e)? {
            closure.notes.push(format!("{e} is in the center set but not central"));
        }
    }
    Ok(closure)
}

fn center_set(m: &ModelExpr, cfg: &SeaCheckConfig) -> Result<MemberSet> {
    if !m.is_parametric() {
        let pool = m.enumerate_or_sample(cfg.sample_budget.max(1024), cfg.seed)?;
        let listed = listed_scan(
            |e| {
                for x in &pool {
                    if !commutes(m, e, x)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
            &pool,
        )?;
        return Ok(MemberSet::Listed(listed));
    }
    match m {
        ModelExpr::Interval => Ok(MemberSet::WholeAlgebra),
        ModelExpr::MatrixInterval => Ok(MemberSet::ScalarsOfIdentity),
        ModelExpr::HorizontalSum { .. } => Ok(MemberSet::Listed(vec![Elem::Zero, Elem::One])),
        ModelExpr::DirectSum { parts } => {
            let sets = parts
                .iter()
                .map(|p| center_set(p, cfg))
                .collect::<Result<Vec<_>>>()?;
            Ok(MemberSet::ComponentWise(sets))
        }
        ModelExpr::Corner { base, idempotent } => {
            if *idempotent == Elem::One {
                return center_set(base, cfg);
            }
            if *idempotent == Elem::Zero {
                return Ok(MemberSet::Listed(vec![Elem::Zero]));
            }
            let base_center = center_set(base, cfg)?;
            if base_center.contains(base, idempotent)? {
                // p is central: the corner's center is p ∘ Z(base).
                let zs = base_center.sample(base, cfg.sample_budget, cfg.seed)?;
                let mut out = Vec::new();
                for z in zs {
                    let pz = base.seq_product(idempotent, &z)?;
                    let c = m.want(&pz)?;
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
                out.sort();
                if base_center.is_exact() && matches!(base_center, MemberSet::Listed(_)) {
                    Ok(MemberSet::Listed(out))
                } else {
                    Ok(MemberSet::Sampled(out))
                }
            } else {
                let pool = m.enumerate_or_sample(cfg.sample_budget, cfg.seed)?;
                let listed = listed_scan(
                    |e| {
                        for x in &pool {
                            if !commutes(m, e, x)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    },
                    &pool,
                )?;
                Ok(MemberSet::Sampled(listed))
            }
        }
        other => Err(Error::Unsupported(format!(
            "symbolic center is not registered for parametric {} models",
            other.kind_name()
        ))),
    }
}

/// The floor of `a`: the limit of the decreasing power sequence
/// `a, a², a⁴, ...`, which equals the largest idempotent below `a`.
///
/// Finite models square until the sequence stabilizes; parametric families
/// use their closed forms (interior interval/matrix/branch values have
/// floor 0, since their powers shrink below any nonzero idempotent).
pub fn floor(m: &ModelExpr, a: &Elem) -> Result<Elem> {
    let a = m.want(a)?;
    match (m, &a) {
        (_, Elem::Zero) => Ok(Elem::Zero),
        (_, Elem::One) => Ok(Elem::One),
        (ModelExpr::Boolean { .. }, _) => Ok(a), // every element is idempotent
        (ModelExpr::Interval, _) | (ModelExpr::MatrixInterval, _) => Ok(Elem::Zero),
        (ModelExpr::HorizontalSum { .. }, Elem::Branch(..)) => Ok(Elem::Zero),
        (ModelExpr::DirectSum { parts }, _) => {
            let comps = match &a {
                Elem::Tuple(es) => es.clone(),
                _ => unreachable!("direct-sum canon yields tuples"),
            };
            let floors = parts
                .iter()
                .zip(&comps)
                .map(|(p, c)| floor(p, c))
                .collect::<Result<Vec<_>>>()?;
            m.want(&Elem::Tuple(floors))
        }
        (ModelExpr::Corner { base, .. }, _) => {
            // floor(a) <= a <= p keeps the floor inside the corner.
            let f = floor(base, &corner_expand(m, &a))?;
            m.want(&f)
        }
        (ModelExpr::Finite { .. }, _) => {
            let mut x = a;
            for _ in 0..(m.carrier_size().unwrap_or(64) as usize + 2) {
                let sq = m.seq_product(&x, &x)?;
                if sq == x {
                    return Ok(x);
                }
                x = sq;
            }
            Err(Error::InvalidModel(
                "power sequence failed to stabilize; the product table is not a valid \
                 sequential product"
                    .into(),
            ))
        }
        (ModelExpr::HorizontalSum { .. }, _) => unreachable!("horizontal-sum canon yields branches"),
    }
}

fn corner_expand(m: &ModelExpr, a: &Elem) -> Elem {
    match (m, a) {
        (ModelExpr::Corner { idempotent, .. }, Elem::One) => idempotent.clone(),
        _ => a.clone(),
    }
}

/// `n · a` by iterated partial sum; `Ok(None)` when some partial sum fails.
pub fn times(m: &ModelExpr, a: &Elem, n: u32) -> Result<Option<Elem>> {
    let a = m.want(a)?;
    let mut acc = Elem::Zero;
    for _ in 0..n {
        match m.partial_sum(&acc, &a)? {
            Some(s) => acc = s,
            None => return Ok(None),
        }
    }
    Ok(Some(acc))
}

/// Unique division: the `b` with `n·b = a`. Requires `floor(a) = 0`, the
/// hypothesis under which such `b` is unique; checked and reported when it
/// fails.
pub fn divide_by_n(m: &ModelExpr, a: &Elem, n: u32) -> Result<Elem> {
    if n == 0 {
        return Err(Error::Unsupported("cannot divide into zero parts".into()));
    }
    let a = m.want(a)?;
    let fl = floor(m, &a)?;
    if fl != Elem::Zero {
        return Err(Error::FloorNotZero {
            elem: a.to_string(),
            floor: fl.to_string(),
        });
    }
    let nr = rat(n as i64, 1);
    match (m, &a) {
        (_, Elem::Zero) => Ok(Elem::Zero),
        (ModelExpr::Interval, Elem::Rat(q)) => m.want(&Elem::Rat(q / &nr)),
        (ModelExpr::MatrixInterval, Elem::Mat(mt)) => {
            m.want(&Elem::Mat(mt.scale(&(Rat::one() / &nr))))
        }
        (ModelExpr::HorizontalSum { .. }, Elem::Branch(k, inner)) => {
            let Elem::Rat(q) = inner.as_ref() else {
                return Err(Error::Unsupported(
                    "division inside a horizontal sum needs interval parts".into(),
                ));
            };
            m.want(&Elem::branch(*k, Elem::Rat(q / &nr)))
        }
        (ModelExpr::DirectSum { parts }, Elem::Tuple(es)) => {
            let comps = parts
                .iter()
                .zip(es)
                .map(|(p, e)| divide_by_n(p, e, n))
                .collect::<Result<Vec<_>>>()?;
            m.want(&Elem::Tuple(comps))
        }
        (ModelExpr::Corner { base, .. }, _) => {
            let d = divide_by_n(base, &corner_expand(m, &a), n)?;
            m.want(&d)
        }
        (ModelExpr::Finite { .. }, _) | (ModelExpr::Boolean { .. }, _) => {
            // Scan the carrier for candidates with n·b = a.
            let pool = m.enumerate_or_sample(4096, 0)?;
            let mut found = Vec::new();
            for b in &pool {
                if times(m, b, n)? == Some(a.clone()) {
                    found.push(b.clone());
                }
            }
            match found.len() {
                1 => Ok(found.pop().expect("len checked")),
                0 => Err(Error::Unsupported(format!("{a} has no {n}-th part in this model"))),
                _ => Err(Error::Unsupported(format!(
                    "{a} has {} distinct {n}-th parts; division is not unique here",
                    found.len()
                ))),
            }
        }
        _ => Err(Error::Unsupported(format!(
            "division is not registered for {} models",
            m.kind_name()
        ))),
    }
}

/// All `h` with `h ⊻ h = a`. Exhaustive on finite models, closed forms on
/// parametric families; see [`ModelExpr::halves_of`].
pub fn halves_of(m: &ModelExpr, a: &Elem) -> Result<Vec<Elem>> {
    m.halves_of(a)
}

/// Square-root result; `exact` is `false` when the value is the floor root
/// on the `2^-denom_bits` grid rather than a true root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtResult {
    pub value: Elem,
    pub exact: bool,
}

/// A square root of `a` under the sequential product: `r ∘ r = a`.
///
/// Boolean models: `a` itself. Finite models: carrier scan, requiring a
/// unique solution. Interval: exact rational root when `a` is a perfect
/// square, else the floor root at denominator `2^denom_bits`, flagged
/// approximate. Horizontal/direct sums: componentwise. Matrix interval:
/// unsupported.
pub fn sqrt(m: &ModelExpr, a: &Elem, denom_bits: u32) -> Result<SqrtResult> {
    let a = m.want(a)?;
    match (m, &a) {
        (_, Elem::Zero) => Ok(SqrtResult { value: Elem::Zero, exact: true }),
        (_, Elem::One) => Ok(SqrtResult { value: Elem::One, exact: true }),
        (ModelExpr::Boolean { .. }, _) => Ok(SqrtResult { value: a, exact: true }),
        (ModelExpr::Interval, Elem::Rat(q)) => match sqrt_exact(q) {
            Some(r) => Ok(SqrtResult { value: m.want(&Elem::Rat(r))?, exact: true }),
            None => Ok(SqrtResult {
                value: m.want(&Elem::Rat(sqrt_floor(q, denom_bits)))?,
                exact: false,
            }),
        },
        (ModelExpr::HorizontalSum { .. }, Elem::Branch(k, inner)) => {
            let Elem::Rat(q) = inner.as_ref() else {
                return Err(Error::Unsupported(
                    "square roots inside a horizontal sum need interval parts".into(),
                ));
            };
            let (value, exact) = match sqrt_exact(q) {
                Some(r) => (r, true),
                None => (sqrt_floor(q, denom_bits), false),
            };
            Ok(SqrtResult {
                value: m.want(&Elem::branch(*k, Elem::Rat(value)))?,
                exact,
            })
        }
        (ModelExpr::DirectSum { parts }, Elem::Tuple(es)) => {
            let mut comps = Vec::with_capacity(es.len());
            let mut exact = true;
            for (p, e) in parts.iter().zip(es) {
                let r = sqrt(p, e, denom_bits)?;
                exact &= r.exact;
                comps.push(r.value);
            }
            Ok(SqrtResult { value: m.want(&Elem::Tuple(comps))?, exact })
        }
        (ModelExpr::MatrixInterval, _) => Err(Error::Unsupported(
            "matrix square roots are not registered".into(),
        )),
        (ModelExpr::Finite { .. }, _) | (ModelExpr::Corner { .. }, _) => {
            if m.is_parametric() {
                return Err(Error::Unsupported(format!(
                    "square roots are not registered for parametric {} models",
                    m.kind_name()
                )));
            }
            let pool = m.enumerate_or_sample(4096, 0)?;
            let mut found = Vec::new();
            for b in &pool {
                if m.seq_product(b, b)? == a {
                    found.push(b.clone());
                }
            }
            match found.len() {
                1 => Ok(SqrtResult { value: found.pop().expect("len checked"), exact: true }),
                0 => Err(Error::Unsupported(format!("{a} has no square root in this model"))),
                _ => Err(Error::Unsupported(format!(
                    "{a} has {} square roots; no unique choice",
                    found.len()
                ))),
            }
        }
        _ => Err(Error::Unsupported(format!(
            "square roots are not registered for {} models",
            m.kind_name()
        ))),
    }
}
