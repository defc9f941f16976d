//! Exhaustive search for every sequential product (or effect-monoid
//! product) on a finite effect-algebra table.
//!
//! The main entry point is [`search_products`]: a backtracking search over
//! the `n × n` product table with
//!
//! - forced entries seeded first (`1∘a = a`, `a∘1 = a`, `a∘0 = 0∘a = 0`,
//!   all consequences of the axiom sets),
//! - per-cell domains from the theorem `a∘b ≤ a` (and `a∘b ≤ b` for
//!   monoids, where both-sided additivity applies),
//! - constraint propagation: additivity of each row (`a∘(b⊻c) = a∘b ⊻ a∘c`,
//!   run in both directions through the difference `⊖`), column additivity
//!   for monoids, and zero symmetry (`a∘b = 0 ⟹ b∘a = 0`) where the axiom
//!   set includes it.
//!
//! Every pruning rule is a theorem of the selected axiom set, so the
//! enumeration is complete; every candidate that survives to a leaf is
//! re-validated by the full checkers in [`crate::sequential`], so the
//! enumeration is sound independently of the pruning logic.
//!
//! [`naive_search`] is a deliberately unsophisticated oracle for tables
//! with at most [`NAIVE_SIZE_BOUND`] elements: no propagation at all, just
//! an odometer over the seeded grid followed by full validation of every
//! candidate. Its solution sets are compared against the pruned search in
//! tests. [`verify_finite_boolean_corollary`] packages the "finite
//! sequential effect algebras are Boolean algebras with the meet product"
//! statement as a checkable report over a corpus of tables.

use std::collections::BTreeSet;

use crate::ea::{
    boolean_algebra_check, check_ea_axioms, derive_order, BooleanVerdict, FiniteEaTable,
    OrderRelation,
};
use crate::models::ModelExpr;
use crate::report::ValidationReport;
use crate::sequential::{check_effect_monoid, check_sea_axioms, SeaCheckConfig};
use crate::{Error, Result};

/// Largest table the pruned search accepts by default.
pub const DEFAULT_SEARCH_SIZE_BOUND: usize = 12;
/// Largest table the naive oracle accepts (it has no pruning to save it).
pub const NAIVE_SIZE_BOUND: usize = 6;

/// Which product axioms the search enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomSet {
    /// Sequential-product axioms S1–S5. S6 (directed suprema) is not
    /// searched for: on a finite carrier every directed set contains its
    /// supremum, so S6 follows from additivity's monotonicity.
    SeaS1S5,
    /// Total, biadditive, associative, unital product.
    EffectMonoid,
    /// Effect monoid plus the zero-symmetry bridge `a·b = 0 ⟹ b·a = 0`.
    EffectMonoidWithS3,
}

impl AxiomSet {
    fn is_monoid(self) -> bool {
        matches!(self, AxiomSet::EffectMonoid | AxiomSet::EffectMonoidWithS3)
    }

    fn has_zero_symmetry(self) -> bool {
        matches!(self, AxiomSet::SeaS1S5 | AxiomSet::EffectMonoidWithS3)
    }
}

/// A search request: table, axiom set, and termination options.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub ea: FiniteEaTable,
    pub axiom_set: AxiomSet,
    /// Stop after this many solutions (`None` = enumerate all).
    pub max_solutions: Option<usize>,
    /// Quotient the solution list by the table's automorphism group,
    /// keeping the lexicographically least table of each orbit.
    pub canonicalize: bool,
    /// Refuse tables larger than this.
    pub size_bound: usize,
}

impl SearchProblem {
    pub fn new(ea: FiniteEaTable, axiom_set: AxiomSet) -> Self {
        SearchProblem {
            ea,
            axiom_set,
            max_solutions: None,
            canonicalize: false,
            size_bound: DEFAULT_SEARCH_SIZE_BOUND,
        }
    }
}

/// Outcome of a product search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Row-major `n × n` product tables, sorted lexicographically.
    pub solutions: Vec<Vec<usize>>,
    /// Assignments attempted.
    pub node_count: u64,
    /// Assignments abandoned by propagation.
    pub pruned_count: u64,
    /// Completed tables rejected by the full checker.
    pub rejected_count: u64,
    /// True when the search stopped at `max_solutions`.
    pub truncated: bool,
    /// Whether the table's derived order is a Boolean algebra; carries the
    /// meet table when the order is a lattice.
    pub boolean_verdict: BooleanVerdict,
}

fn guard_table(t: &FiniteEaTable, bound: usize) -> Result<()> {
    if t.size() > bound {
        return Err(Error::SearchSizeExceeded {
            size: t.size(),
            bound,
        });
    }
    let report = check_ea_axioms(t, false);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidModel(format!(
            "search requires a valid effect algebra; {}: {}",
            v.law, v.witness
        )));
    }
    Ok(())
}

/// Grid with the entries every axiom set forces: the row and column of `1`
/// (`1∘a = a = a∘1`) and of `0` (`a∘0 = 0∘a = 0`).
fn seeded_grid(t: &FiniteEaTable) -> Vec<Option<usize>> {
    let n = t.size();
    let one = t.one();
    let mut g: Vec<Option<usize>> = vec![None; n * n];
    for i in 0..n {
        g[one * n + i] = Some(i);
        g[i * n + one] = Some(i);
    }
    for i in 0..n {
        // All four rules agree on 0 at the overlaps (0∘1 and 1∘0).
        g[i] = Some(0); // row 0
        g[i * n] = Some(0); // column 0
    }
    g
}

/// Free cells in fill order: diagonal first (idempotency is the most
/// constrained question), then by ascending order-rank.
fn cell_order(t: &FiniteEaTable, ord: &OrderRelation) -> Vec<(usize, usize)> {
    let n = t.size();
    let one = t.one();
    let free = |i: usize| i != 0 && i != one;
    let mut diag: Vec<(usize, usize)> = (0..n).filter(|&i| free(i)).map(|i| (i, i)).collect();
    diag.sort_by_key(|&(i, _)| (ord.height(i), i));
    let mut rest: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && free(i) && free(j) {
                rest.push((i, j));
            }
        }
    }
    rest.sort_by_key(|&(i, j)| (ord.height(i), ord.height(j), i, j));
    diag.into_iter().chain(rest).collect()
}

struct Searcher<'a> {
    t: &'a FiniteEaTable,
    ord: &'a OrderRelation,
    axioms: AxiomSet,
    cells: Vec<(usize, usize)>,
    max: Option<usize>,
    n: usize,
    nodes: u64,
    pruned: u64,
    rejected: u64,
    truncated: bool,
    solutions: Vec<Vec<usize>>,
}

impl<'a> Searcher<'a> {
    fn in_domain(&self, i: usize, j: usize, k: usize) -> bool {
        self.ord.leq(k, i) && (!self.axioms.is_monoid() || self.ord.leq(k, j))
    }

    /// Additivity of one row triple: `g[a][s]` must be `g[a][b] ⊻ g[a][c]`
    /// whenever `s = b ⊻ c`. Runs forward (two known, force the sum) and
    /// backward (sum and one summand known, force the other through `⊖`).
    fn row_rule(
        &self,
        g: &mut [Option<usize>],
        a: usize,
        b: usize,
        c: usize,
        s: usize,
        changed: &mut bool,
    ) -> bool {
        let n = self.n;
        match (g[a * n + b], g[a * n + c], g[a * n + s]) {
            (Some(x), Some(y), at_s) => {
                let Some(z) = self.t.sum(x, y) else {
                    return false;
                };
                match at_s {
                    None => {
                        if !self.in_domain(a, s, z) {
                            return false;
                        }
                        g[a * n + s] = Some(z);
                        *changed = true;
                        true
                    }
                    Some(w) => w == z,
                }
            }
            (Some(x), None, Some(w)) => match self.ord.ominus(w, x) {
                None => false,
                Some(y) => {
                    if !self.in_domain(a, c, y) {
                        return false;
                    }
                    g[a * n + c] = Some(y);
                    *changed = true;
                    true
                }
            },
            (None, Some(y), Some(w)) => match self.ord.ominus(w, y) {
                None => false,
                Some(x) => {
                    if !self.in_domain(a, b, x) {
                        return false;
                    }
                    g[a * n + b] = Some(x);
                    *changed = true;
                    true
                }
            },
            _ => true,
        }
    }

    /// Column analogue of [`Self::row_rule`], valid only for monoids
    /// (first-argument additivity): `g[s][a] = g[b][a] ⊻ g[c][a]`.
    fn col_rule(
        &self,
        g: &mut [Option<usize>],
        a: usize,
        b: usize,
        c: usize,
        s: usize,
        changed: &mut bool,
    ) -> bool {
        let n = self.n;
        match (g[b * n + a], g[c * n + a], g[s * n + a]) {
            (Some(x), Some(y), at_s) => {
                let Some(z) = self.t.sum(x, y) else {
                    return false;
                };
                match at_s {
                    None => {
                        if !self.in_domain(s, a, z) {
                            return false;
                        }
                        g[s * n + a] = Some(z);
                        *changed = true;
                        true
                    }
                    Some(w) => w == z,
                }
            }
            (Some(x), None, Some(w)) => match self.ord.ominus(w, x) {
                None => false,
                Some(y) => {
                    if !self.in_domain(c, a, y) {
                        return false;
                    }
                    g[c * n + a] = Some(y);
                    *changed = true;
                    true
                }
            },
            (None, Some(y), Some(w)) => match self.ord.ominus(w, y) {
                None => false,
                Some(x) => {
                    if !self.in_domain(b, a, x) {
                        return false;
                    }
                    g[b * n + a] = Some(x);
                    *changed = true;
                    true
                }
            },
            _ => true,
        }
    }

    /// Runs the propagation rules to a fixpoint. Returns false on
    /// contradiction.
    fn propagate(&self, g: &mut [Option<usize>]) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            if self.axioms.has_zero_symmetry() {
                for i in 0..n {
                    for j in 0..n {
                        if g[i * n + j] == Some(0) {
                            match g[j * n + i] {
                                None => {
                                    g[j * n + i] = Some(0);
                                    changed = true;
                                }
                                Some(0) => {}
                                Some(_) => return false,
                            }
                        }
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in b..n {
                        let Some(s) = self.t.sum(b, c) else { continue };
                        if !self.row_rule(g, a, b, c, s, &mut changed) {
                            return false;
                        }
                        if self.axioms.is_monoid() && !self.col_rule(g, a, b, c, s, &mut changed)
                        {
                            return false;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn leaf(&mut self, g: &[Option<usize>]) -> Result<()> {
        let product: Vec<usize> = g.iter().map(|o| o.expect("leaf grid is full")).collect();
        if validate_candidate(self.t, &product, self.axioms)? {
            self.solutions.push(product);
            if Some(self.solutions.len()) == self.max {
                self.truncated = true;
            }
        } else {
            self.rejected += 1;
        }
        Ok(())
    }

    fn dfs(&mut self, g: &[Option<usize>], from: usize) -> Result<()> {
        if self.truncated {
            return Ok(());
        }
        let mut idx = from;
        while idx < self.cells.len() {
            let (i, j) = self.cells[idx];
            if g[i * self.n + j].is_none() {
                break;
            }
            idx += 1;
        }
        if idx == self.cells.len() {
            return self.leaf(g);
        }
        let (i, j) = self.cells[idx];
        for k in 0..self.n {
            if self.truncated {
                return Ok(());
            }
            if !self.in_domain(i, j, k) {
                continue;
            }
            self.nodes += 1;
            let mut g2 = g.to_vec();
            g2[i * self.n + j] = Some(k);
            if self.propagate(&mut g2) {
                self.dfs(&g2, idx + 1)?;
            } else {
                self.pruned += 1;
            }
        }
        Ok(())
    }
}

/// Full-checker validation of a completed product table. This is the
/// soundness anchor: the search believes nothing it cannot re-derive here.
fn validate_candidate(t: &FiniteEaTable, product: &[usize], axioms: AxiomSet) -> Result<bool> {
    let m = ModelExpr::finite_with_product(t.clone(), product.to_vec())?;
    let mut cfg = SeaCheckConfig::with_budget(t.size().max(8), 0);
    cfg.check_s6 = false; // implied by additivity on finite carriers
    match axioms {
        AxiomSet::SeaS1S5 => Ok(check_sea_axioms(&m, &cfg)?.passed()),
        AxiomSet::EffectMonoid => Ok(check_effect_monoid(&m, &cfg)?.is_effect_monoid()),
        AxiomSet::EffectMonoidWithS3 => {
            let r = check_effect_monoid(&m, &cfg)?;
            Ok(r.is_effect_monoid() && r.s3_bridge_holds)
        }
    }
}

/// Enumerates every product table on `p.ea` satisfying `p.axiom_set`.
///
/// Completeness: the seeds, domains, and propagation rules are theorems of
/// the axiom set, so no solution is cut. Soundness: every emitted table has
/// passed the full axiom checker.
pub fn search_products(p: &SearchProblem) -> Result<SearchResult> {
    guard_table(&p.ea, p.size_bound)?;
    let ord = derive_order(&p.ea);
    let verdict = boolean_algebra_check(&p.ea, &ord);
    let cells = cell_order(&p.ea, &ord);
    let mut s = Searcher {
        t: &p.ea,
        ord: &ord,
        axioms: p.axiom_set,
        cells,
        max: p.max_solutions,
        n: p.ea.size(),
        nodes: 0,
        pruned: 0,
        rejected: 0,
        truncated: false,
        solutions: Vec::new(),
    };
    let mut grid = seeded_grid(&p.ea);
    if s.propagate(&mut grid) {
        s.dfs(&grid, 0)?;
    } else {
        s.pruned += 1;
    }
    let mut solutions = s.solutions;
    solutions.sort();
    if p.canonicalize {
        let autos = ea_automorphisms(&p.ea);
        let set: BTreeSet<Vec<usize>> = solutions
            .iter()
            .map(|sol| canonical_product(sol, &autos))
            .collect();
        solutions = set.into_iter().collect();
    }
    Ok(SearchResult {
        solutions,
        node_count: s.nodes,
        pruned_count: s.pruned,
        rejected_count: s.rejected,
        truncated: s.truncated,
        boolean_verdict: verdict,
    })
}

/// Direct array-level axiom check used by the naive oracle, written
/// independently of both the pruned search and the model-level checkers.
fn table_satisfies(t: &FiniteEaTable, product: &[usize], axioms: AxiomSet) -> bool {
    let n = t.size();
    let one = t.one();
    let p = |i: usize, j: usize| product[i * n + j];
    for a in 0..n {
        if p(one, a) != a {
            return false;
        }
    }
    // Second-argument additivity, with definedness (S1 / one distributive law).
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let Some(s) = t.sum(b, c) else { continue };
                match t.sum(p(a, b), p(a, c)) {
                    Some(z) if z == p(a, s) => {}
                    _ => return false,
                }
            }
        }
    }
    if axioms.is_monoid() {
        for a in 0..n {
            if p(a, one) != a {
                return false;
            }
        }
        // First-argument additivity (the other distributive law).
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    let Some(s) = t.sum(b, c) else { continue };
                    match t.sum(p(b, a), p(c, a)) {
                        Some(z) if z == p(s, a) => {}
                        _ => return false,
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if p(p(a, b), c) != p(a, p(b, c)) {
                        return false;
                    }
                }
            }
        }
        if axioms.has_zero_symmetry() {
            for a in 0..n {
                for b in 0..n {
                    if p(a, b) == 0 && p(b, a) != 0 {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    // S3: zero symmetry.
    for a in 0..n {
        for b in 0..n {
            if p(a, b) == 0 && p(b, a) != 0 {
                return false;
            }
        }
    }
    // S4: commuting pairs commute with complements and associate.
    for a in 0..n {
        for b in 0..n {
            if p(a, b) != p(b, a) {
                continue;
            }
            let bp = t.perp(b);
            if p(a, bp) != p(bp, a) {
                return false;
            }
            for c in 0..n {
                if p(a, p(b, c)) != p(p(a, b), c) {
                    return false;
                }
            }
        }
    }
    // S5: an element commuting with a and b commutes with a∘b and a⊻b.
    for c in 0..n {
        for a in 0..n {
            if p(c, a) != p(a, c) {
                continue;
            }
            for b in 0..n {
                if p(c, b) != p(b, c) {
                    continue;
                }
                let ab = p(a, b);
                if p(c, ab) != p(ab, c) {
                    return false;
                }
                if let Some(s) = t.sum(a, b) {
                    if p(c, s) != p(s, c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The independent oracle: plain odometer enumeration over the seeded grid
/// with no constraint propagation, every candidate checked in full.
///
/// The only structure shared with the pruned search is what keeps the
/// enumeration finite at all: the forced rows/columns of `0` and `1` and
/// the membership domain `a∘b ≤ a` (plus `≤ b` for monoids), each a
/// theorem of the axiom set. Tables above [`NAIVE_SIZE_BOUND`] are
/// refused.
pub fn naive_search(p: &SearchProblem) -> Result<SearchResult> {
    guard_table(&p.ea, NAIVE_SIZE_BOUND.min(p.size_bound))?;
    let n = p.ea.size();
    let one = p.ea.one();
    let ord = derive_order(&p.ea);
    let verdict = boolean_algebra_check(&p.ea, &ord);
    let base = seeded_grid(&p.ea);

    let mut free: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != 0 && i != one && j != 0 && j != one {
                free.push((i, j));
            }
        }
    }
    let domains: Vec<Vec<usize>> = free
        .iter()
        .map(|&(i, j)| {
            (0..n)
                .filter(|&k| ord.leq(k, i) && (!p.axiom_set.is_monoid() || ord.leq(k, j)))
                .collect()
        })
        .collect();

    let mut solutions = Vec::new();
    let mut nodes = 0u64;
    let mut truncated = false;
    let mut counters = vec![0usize; free.len()];
    'odometer: loop {
        let mut grid: Vec<usize> = base.iter().map(|o| o.unwrap_or(0)).collect();
        for (idx, &(i, j)) in free.iter().enumerate() {
            grid[i * n + j] = domains[idx][counters[idx]];
        }
        nodes += 1;
        if table_satisfies(&p.ea, &grid, p.axiom_set) {
            // The direct check found it; the full checker must agree before
            // the table is believed.
            if validate_candidate(&p.ea, &grid, p.axiom_set)? {
                solutions.push(grid);
                if Some(solutions.len()) == p.max_solutions {
                    truncated = true;
                    break 'odometer;
                }
            } else {
                return Err(Error::Structure(
                    "oracle self-check failed: the direct and full checkers disagree".into(),
                ));
            }
        }
        // Advance the odometer.
        for idx in 0..free.len() {
            counters[idx] += 1;
            if counters[idx] < domains[idx].len() {
                continue 'odometer;
            }
            counters[idx] = 0;
        }
        break;
    }
    let rejected = nodes - solutions.len() as u64;
    let mut solutions = solutions;
    solutions.sort();
    if p.canonicalize {
        let autos = ea_automorphisms(&p.ea);
        let set: BTreeSet<Vec<usize>> = solutions
            .iter()
            .map(|sol| canonical_product(sol, &autos))
            .collect();
        solutions = set.into_iter().collect();
    }
    Ok(SearchResult {
        solutions,
        node_count: nodes,
        pruned_count: 0,
        rejected_count: rejected,
        truncated,
        boolean_verdict: verdict,
    })
}

/// Effect-monoid search with the zero-symmetry bridge reported per
/// solution.
#[derive(Debug, Clone)]
pub struct MonoidSearchResult {
    pub search: SearchResult,
    /// For each solution, whether `a·b = 0 ⟹ b·a = 0` holds.
    pub zero_symmetry: Vec<bool>,
}

pub fn search_effect_monoids(p: &SearchProblem) -> Result<MonoidSearchResult> {
    if !p.axiom_set.is_monoid() {
        return Err(Error::Unsupported(
            "effect-monoid search needs a monoid axiom set; use search_products for \
             the sequential axioms"
                .into(),
        ));
    }
    let search = search_products(p)?;
    let mut zero_symmetry = Vec::with_capacity(search.solutions.len());
    for sol in &search.solutions {
        let m = ModelExpr::finite_with_product(p.ea.clone(), sol.clone())?;
        let cfg = SeaCheckConfig::with_budget(p.ea.size().max(8), 0);
        zero_symmetry.push(check_effect_monoid(&m, &cfg)?.s3_bridge_holds);
    }
    Ok(MonoidSearchResult {
        search,
        zero_symmetry,
    })
}

/// All effect-algebra automorphisms of a table, as permutation vectors
/// (`perm[i]` = image of `i`). Backtracking with order-invariant pruning;
/// every emitted permutation is verified in full.
pub fn ea_automorphisms(t: &FiniteEaTable) -> Vec<Vec<usize>> {
    let n = t.size();
    let ord = derive_order(t);
    let height: Vec<usize> = (0..n).map(|i| ord.height(i)).collect();
    let degree: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| t.summable(i, j)).count())
        .collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perm[0] = 0;
    used[0] = true;
    if t.one() != 0 {
        perm[t.one()] = t.one();
        used[t.one()] = true;
    }
    let mut out = Vec::new();

    fn verify(t: &FiniteEaTable, perm: &[usize]) -> bool {
        let n = t.size();
        for i in 0..n {
            if t.perp(perm[i]) != perm[t.perp(i)] {
                return false;
            }
            for j in 0..n {
                match (t.sum(i, j), t.sum(perm[i], perm[j])) {
                    (None, None) => {}
                    (Some(s), Some(s2)) if perm[s] == s2 => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn consistent(t: &FiniteEaTable, perm: &[usize], i: usize, x: usize) -> bool {
        for j in 0..t.size() {
            if perm[j] == usize::MAX {
                continue;
            }
            match (t.sum(i, j), t.sum(x, perm[j])) {
                (None, None) => {}
                (Some(s), Some(s2)) => {
                    if perm[s] != usize::MAX && perm[s] != s2 {
                        return false;
                    }
                }
                _ => return false,
            }
            if t.perp(i) == j && t.perp(x) != perm[j] {
                return false;
            }
        }
        true
    }

    fn rec(
        t: &FiniteEaTable,
        height: &[usize],
        degree: &[usize],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        i: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = t.size();
        let mut i = i;
        while i < n && perm[i] != usize::MAX {
            i += 1;
        }
        if i == n {
            if verify(t, perm) {
                out.push(perm.clone());
            }
            return;
        }
        for x in 0..n {
            if used[x] || height[x] != height[i] || degree[x] != degree[i] {
                continue;
            }
            if !consistent(t, perm, i, x) {
                continue;
            }
            perm[i] = x;
            used[x] = true;
            rec(t, height, degree, perm, used, i + 1, out);
            perm[i] = usize::MAX;
            used[x] = false;
        }
    }

    rec(t, &height, &degree, &mut perm, &mut used, 0, &mut out);
    out.sort();
    out
}

/// Applies a relabeling permutation to a product table:
/// `out(σi, σj) = σ(product(i, j))`.
pub fn relabel_product(product: &[usize], perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let mut out = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i] * n + perm[j]] = perm[product[i * n + j]];
        }
    }
    out
}

/// Lexicographically least relabeling of `product` under the given
/// automorphisms (the orbit representative used by `canonicalize`).
pub fn canonical_product(product: &[usize], autos: &[Vec<usize>]) -> Vec<usize> {
    autos
        .iter()
        .map(|a| relabel_product(product, a))
        .min()
        .unwrap_or_else(|| product.to_vec())
}

/// Renames table elements along a permutation with `perm[0] = 0` (zero is
/// positional). Produces the isomorphic table.
pub fn relabel_table(t: &FiniteEaTable, perm: &[usize]) -> Result<FiniteEaTable> {
    let n = t.size();
    if perm.len() != n {
        return Err(Error::Structure(format!(
            "permutation has {} entries, table has {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || seen[x] {
            return Err(Error::Structure("relabeling is not a permutation".into()));
        }
        seen[x] = true;
    }
    if perm[0] != 0 {
        return Err(Error::Structure(
            "relabeling must fix 0 (the zero element is positional)".into(),
        ));
    }
    let triples: Vec<(usize, usize, usize)> = t
        .sum_triples()
        .into_iter()
        .map(|(i, j, k)| (perm[i], perm[j], perm[k]))
        .collect();
    let mut perp = vec![0usize; n];
    for i in 0..n {
        perp[perm[i]] = perm[t.perp(i)];
    }
    FiniteEaTable::new(n, perm[t.one()], &triples, perp)
}

/// One table's entry in the corollary report.
#[derive(Debug, Clone)]
pub struct CorollaryEntry {
    pub label: String,
    pub size: usize,
    pub is_boolean: bool,
    pub solution_count: usize,
    /// Every found product equals the meet; vacuously true with none.
    pub solutions_equal_meet: bool,
}

/// Empirical verification of "every finite sequential effect algebra is a
/// Boolean algebra, and its product is the meet".
#[derive(Debug, Clone)]
pub struct CorollaryReport {
    pub entries: Vec<CorollaryEntry>,
    pub report: ValidationReport,
}

impl CorollaryReport {
    /// True when no table contradicted the statement.
    pub fn upheld(&self) -> bool {
        self.report.passed()
    }
}

/// Runs the sequential-product search over each table and cross-checks:
/// a table with at least one product must be Boolean with every product
/// equal to the meet, and a Boolean table must have exactly one product.
/// Any mismatch is recorded as a counterexample candidate (which would
/// indicate a bug in the searcher or checker, and must never pass
/// silently).
pub fn verify_finite_boolean_corollary(tables: &[FiniteEaTable]) -> Result<CorollaryReport> {
    let mut report = ValidationReport::new();
    let mut entries = Vec::with_capacity(tables.len());
    for (idx, t) in tables.iter().enumerate() {
        let label = format!("table {idx} (size {})", t.size());
        let res = search_products(&SearchProblem::new(t.clone(), AxiomSet::SeaS1S5))?;
        report.ticks(res.node_count.max(1));
        let is_boolean = res.boolean_verdict.is_boolean();
        let mut equal_meet = true;
        for sol in &res.solutions {
            if res.boolean_verdict.meet_table.as_deref() != Some(sol.as_slice()) {
                equal_meet = false;
                report.record(
                    "search.corollary-product-is-meet",
                    format!("{label}: a sequential product differs from the meet"),
                );
            }
        }
        if !res.solutions.is_empty() && !is_boolean {
            report.record(
                "search.corollary-sea-implies-boolean",
                format!(
                    "{label}: admits {} sequential product(s) but is not a Boolean algebra",
                    res.solutions.len()
                ),
            );
        }
        if is_boolean && res.solutions.len() != 1 {
            report.record(
                "search.corollary-boolean-unique-product",
                format!(
                    "{label}: Boolean algebra with {} sequential products, expected exactly 1",
                    res.solutions.len()
                ),
            );
        }
        entries.push(CorollaryEntry {
            label,
            size: t.size(),
            is_boolean,
            solution_count: res.solutions.len(),
            solutions_equal_meet: equal_meet,
        });
    }
    Ok(CorollaryReport { entries, report })
}

/// The standard corpus for the corollary: linear chains with 2–5 elements,
/// Boolean algebras with 1–3 atoms, and the six-element diamond.
pub fn corollary_corpus() -> Vec<FiniteEaTable> {
    vec![
        FiniteEaTable::chain(2),
        FiniteEaTable::chain(3),
        FiniteEaTable::chain(4),
        FiniteEaTable::chain(5),
        FiniteEaTable::boolean(1),
        FiniteEaTable::boolean(2),
        FiniteEaTable::boolean(3),
        FiniteEaTable::mo2(),
    ]
}
