//! Finite effect-algebra tables and their axiom/order theory.
//!
//! A finite effect algebra is stored as a partial sum table plus a total
//! complement map. The sum is kept internally as a dense symmetric matrix
//! built from upper-triangular input entries, so commutativity holds by
//! construction and cannot be broken after load; the remaining axioms
//! (zero, associativity, unique complement, 1-summability) are checked by
//! [`check_ea_axioms`].

use crate::report::ValidationReport;
use crate::{Error, Result};

/// Partial sum table and complement map of a finite effect algebra.
///
/// Element `0` is the zero by convention; `one` names the top element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteEaTable {
    size: usize,
    one: usize,
    /// Dense `size × size` partial sum, symmetric by construction.
    sum: Vec<Option<usize>>,
    perp: Vec<usize>,
}

impl FiniteEaTable {
    /// Builds a table from upper-triangular sum entries `(i, j, k)` meaning
    /// `i ⊻ j = k`. Entries may be given in either order; giving both orders
    /// with different values is a structural error, as are out-of-range
    /// indices and duplicate conflicting entries.
    pub fn new(
        size: usize,
        one: usize,
        sum_triples: &[(usize, usize, usize)],
        perp: Vec<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Structure("table must have at least one element".into()));
        }
        if one >= size {
            return Err(Error::Structure(format!("one={one} out of range (size {size})")));
        }
        if perp.len() != size {
            return Err(Error::Structure(format!(
                "perp has {} entries, expected {size}",
                perp.len()
            )));
        }
        if let Some(&bad) = perp.iter().find(|&&p| p >= size) {
            return Err(Error::Structure(format!("perp value {bad} out of range")));
        }
        let mut sum = vec![None; size * size];
        for &(i, j, k) in sum_triples {
            if i >= size || j >= size || k >= size {
                return Err(Error::Structure(format!(
                    "sum entry ({i},{j})={k} out of range (size {size})"
                )));
            }
            for &(x, y) in &[(i, j), (j, i)] {
                let cell = &mut sum[x * size + y];
                match *cell {
                    Some(prev) if prev != k => {
                        return Err(Error::Structure(format!(
                            "conflicting sum entries: ({x},{y}) given as both {prev} and {k}"
                        )));
                    }
                    _ => *cell = Some(k),
                }
            }
        }
        Ok(FiniteEaTable { size, one, sum, perp })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// `i ⊻ j`, or `None` when the pair is not summable.
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sum[i * self.size + j]
    }

    pub fn summable(&self, i: usize, j: usize) -> bool {
        self.sum(i, j).is_some()
    }

    pub fn perp(&self, i: usize) -> usize {
        self.perp[i]
    }

    pub fn perp_map(&self) -> &[usize] {
        &self.perp
    }

    /// Canonical upper-triangular sum entries, sorted; inverse of [`Self::new`].
    pub fn sum_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in i..self.size {
                if let Some(k) = self.sum(i, j) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// The one-element algebra (`0 = 1`).
    pub fn trivial() -> Self {
        FiniteEaTable::new(1, 0, &[(0, 0, 0)], vec![0]).expect("trivial table is well formed")
    }

    /// Linear chain `{0, 1/n, 2/n, ..., 1}` with `len` elements
    /// (`len - 1 = n` steps): `i ⊻ j = i + j` when `i + j <= n`.
    pub fn chain(len: usize) -> Self {
        assert!(len >= 2, "a chain needs at least 0 and 1");
        let top = len - 1;
        let mut triples = Vec::new();
        for i in 0..len {
            for j in i..len {
                if i + j <= top {
                    triples.push((i, j, i + j));
                }
            }
        }
        let perp = (0..len).map(|i| top - i).collect();
        FiniteEaTable::new(len, top, &triples, perp).expect("chain table is well formed")
    }

    /// Boolean algebra of subsets of `atoms` atoms; element `i` is the
    /// bitmask of its atoms, so `i ⊻ j = i | j` exactly when `i & j = 0`.
    pub fn boolean(atoms: u32) -> Self {
        assert!(atoms >= 1 && atoms <= 16, "supported atom range is 1..=16");
        let size = 1usize << atoms;
        let full = size - 1;
        let mut triples = Vec::new();
        for i in 0..size {
            for j in i..size {
                if i & j == 0 {
                    triples.push((i, j, i | j));
                }
            }
        }
        let perp = (0..size).map(|i| full & !i).collect();
        FiniteEaTable::new(size, full, &triples, perp).expect("boolean table is well formed")
    }

    /// The six-element diamond `{0, a, a⊥, b, b⊥, 1}` in which the only
    /// non-trivial sums are the two complement pairs. A lattice, but not
    /// distributive, hence not a Boolean algebra.
    pub fn mo2() -> Self {
        let (zero, a, ap, b, bp, one) = (0usize, 1, 2, 3, 4, 5);
        let mut triples = vec![(a, ap, one), (b, bp, one)];
        for i in zero..=one {
            triples.push((zero, i, i));
        }
        FiniteEaTable::new(6, one, &triples, vec![one, ap, a, bp, b, zero])
            .expect("mo2 table is well formed")
    }
}

/// Exhaustive effect-algebra axiom check.
///
/// Law identifiers: `ea.commutativity` (vacuous for tables built by
/// [`FiniteEaTable::new`], still scanned), `ea.zero`, `ea.associativity`,
/// `ea.unique-complement`, `ea.one-summability`. At most one witness per law
/// is reported unless `exhaustive_witnesses` is set.
pub fn check_ea_axioms(t: &FiniteEaTable, exhaustive_witnesses: bool) -> ValidationReport {
    let mut r = if exhaustive_witnesses {
        ValidationReport::exhaustive()
    } else {
        ValidationReport::new()
    };
    let n = t.size();
    let one = t.one();

    for i in 0..n {
        for j in 0..n {
            r.tick();
            if t.sum(i, j) != t.sum(j, i) {
                r.record("ea.commutativity", format!("sum({i},{j}) != sum({j},{i})"));
            }
        }
    }

    for i in 0..n {
        r.tick();
        match t.sum(i, 0) {
            Some(k) if k == i => {}
            got => r.record("ea.zero", format!("sum({i},0) = {got:?}, expected Some({i})")),
        }
    }

    // (i ⊻ j) ⊻ k defined ⟹ j ⊻ k defined and i ⊻ (j ⊻ k) equals it.
    // Scanning all ordered triples covers the symmetric direction too.
    for i in 0..n {
        for j in 0..n {
            let Some(s) = t.sum(i, j) else { continue };
            for k in 0..n {
                r.tick();
                let Some(total) = t.sum(s, k) else { continue };
                match t.sum(j, k).and_then(|u| t.sum(i, u)) {
                    Some(other) if other == total => {}
                    got => r.record(
                        "ea.associativity",
                        format!(
                            "({i}⊻{j})⊻{k} = {total}, but {i}⊻({j}⊻{k}) = {got:?}"
                        ),
                    ),
                }
            }
        }
    }

    for i in 0..n {
        r.tick();
        if t.sum(i, t.perp(i)) != Some(one) {
            r.record(
                "ea.unique-complement",
                format!(
                    "perp({i}) = {} but sum({i},{}) = {:?}, expected Some({one})",
                    t.perp(i),
                    t.perp(i),
                    t.sum(i, t.perp(i))
                ),
            );
        }
        for j in 0..n {
            r.tick();
            if j != t.perp(i) && t.sum(i, j) == Some(one) {
                r.record(
                    "ea.unique-complement",
                    format!("both {} and {j} complement {i}", t.perp(i)),
                );
            }
        }
    }

    for i in 0..n {
        r.tick();
        if t.summable(i, one) && i != 0 {
            r.record(
                "ea.one-summability",
                format!("sum({i},1) is defined but {i} != 0"),
            );
        }
    }

    r
}

/// The algebraic order `a <= b iff a ⊻ c = b for some c`, together with the
/// difference `b ⊖ a = c` (unique by cancellation on valid tables).
#[derive(Debug, Clone)]
pub struct OrderRelation {
    size: usize,
    leq: Vec<bool>,
    /// `ominus[b * size + a] = Some(c)` with `a ⊻ c = b`.
    ominus: Vec<Option<usize>>,
}

impl OrderRelation {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    /// `b ⊖ a`, defined exactly when `a <= b`.
    pub fn ominus(&self, b: usize, a: usize) -> Option<usize> {
        self.ominus[b * self.size + a]
    }

    /// Number of elements below-or-equal `i`; a cheap order rank.
    pub fn height(&self, i: usize) -> usize {
        (0..self.size).filter(|&j| self.leq(j, i)).count()
    }

    /// Greatest lower bound of `{a, b}` if the set of common lower bounds
    /// has a maximum.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.size)
            .filter(|&k| self.leq(k, a) && self.leq(k, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&k| self.leq(k, m)))
    }

    /// Least upper bound of `{a, b}` if the set of common upper bounds has a
    /// minimum.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.size)
            .filter(|&k| self.leq(a, k) && self.leq(b, k))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&m| upper.iter().all(|&k| self.leq(m, k)))
    }
}

/// Derives the order and difference tables. Requires a valid table for the
/// difference to be single-valued (cancellation).
pub fn derive_order(t: &FiniteEaTable) -> OrderRelation {
    let n = t.size();
    let mut leq = vec![false; n * n];
    let mut ominus = vec![None; n * n];
    for a in 0..n {
        for c in 0..n {
            if let Some(b) = t.sum(a, c) {
                leq[a * n + b] = true;
                ominus[b * n + a] = Some(c);
            }
        }
    }
    OrderRelation { size: n, leq, ominus }
}

/// Lattice/distributivity/complementation verdict for a finite table, derived
/// purely from the order.
#[derive(Debug, Clone)]
pub struct BooleanVerdict {
    pub is_lattice: bool,
    pub distributive: bool,
    pub complemented: bool,
    pub witness: Option<String>,
    /// Total meet table (row-major), present when the order is a lattice.
    pub meet_table: Option<Vec<usize>>,
}

impl BooleanVerdict {
    pub fn is_boolean(&self) -> bool {
        self.is_lattice && self.distributive && self.complemented
    }
}

/// Decides whether the derived order is a Boolean algebra (lattice +
/// distributive + `perp` a lattice complement).
pub fn boolean_algebra_check(t: &FiniteEaTable, ord: &OrderRelation) -> BooleanVerdict {
    let n = t.size();
    let mut verdict = BooleanVerdict {
        is_lattice: true,
        distributive: true,
        complemented: true,
        witness: None,
        meet_table: None,
    };
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            match (ord.meet(a, b), ord.join(a, b)) {
                (Some(m), Some(j)) => {
                    meet[a * n + b] = m;
                    join[a * n + b] = j;
                }
                _ => {
                    verdict.is_lattice = false;
                    verdict.witness.get_or_insert(format!("{a},{b} lack a meet or join"));
                }
            }
        }
    }
    if !verdict.is_lattice {
        verdict.distributive = false;
        verdict.complemented = false;
        return verdict;
    }
    'dist: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = meet[a * n + join[b * n + c]];
                let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                if lhs != rhs {
                    verdict.distributive = false;
                    verdict
                        .witness
                        .get_or_insert(format!("{a}∧({b}∨{c}) = {lhs} != {rhs} = ({a}∧{b})∨({a}∧{c})"));
                    break 'dist;
                }
            }
        }
    }
    for a in 0..n {
        if meet[a * n + t.perp(a)] != 0 || join[a * n + t.perp(a)] != t.one() {
            verdict.complemented = false;
            verdict
                .witness
                .get_or_insert(format!("{a} and perp({a}) are not lattice complements"));
            break;
        }
    }
    verdict.meet_table = Some(meet);
    verdict
}

/// Result of the finite directed-completeness check.
#[derive(Debug, Clone)]
pub struct DirectedCompleteness {
    pub holds: bool,
    pub detail: String,
    /// A directed subset without a maximum, should the order be broken.
    pub witness: Option<Vec<usize>>,
}

/// Every directed subset of a finite poset contains its maximum, so a valid
/// finite table is always directed-complete. For small tables (≤ 16 elements)
/// this is verified by enumerating every directed subset; for larger tables
/// the poset laws are verified and the finiteness argument is reported.
pub fn is_directed_complete_finite(t: &FiniteEaTable, ord: &OrderRelation) -> DirectedCompleteness {
    let n = t.size();
    if n <= 16 {
        let mut checked = 0u64;
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let directed = set.iter().all(|&a| {
                set.iter()
                    .all(|&b| set.iter().any(|&c| ord.leq(a, c) && ord.leq(b, c)))
            });
            if !directed {
                continue;
            }
            checked += 1;
            let has_max = set
                .iter()
                .any(|&m| set.iter().all(|&s| ord.leq(s, m)));
            if !has_max {
                return DirectedCompleteness {
                    holds: false,
                    detail: "a directed subset has no maximum; the derived order is broken".into(),
                    witness: Some(set),
                };
            }
        }
        return DirectedCompleteness {
            holds: true,
            detail: format!("all {checked} directed subsets contain their maximum"),
            witness: None,
        };
    }
    // Poset sanity only; the subset sweep is exponential.
    for i in 0..n {
        if !ord.leq(i, i) || !ord.leq(0, i) || !ord.leq(i, t.one()) {
            return DirectedCompleteness {
                holds: false,
                detail: format!("order is not reflexive/bounded at {i}"),
                witness: Some(vec![i]),
            };
        }
        for j in 0..n {
            if ord.leq(i, j) && ord.leq(j, i) && i != j {
                return DirectedCompleteness {
                    holds: false,
                    detail: format!("antisymmetry fails at {i},{j}"),
                    witness: Some(vec![i, j]),
                };
            }
            for k in 0..n {
                if ord.leq(i, j) && ord.leq(j, k) && !ord.leq(i, k) {
                    return DirectedCompleteness {
                        holds: false,
                        detail: format!("transitivity fails at {i},{j},{k}"),
                        witness: Some(vec![i, j, k]),
                    };
                }
            }
        }
    }
    DirectedCompleteness {
        holds: true,
        detail: "finite poset: every directed subset contains a maximal element, \
                 which directedness promotes to a maximum"
            .into(),
        witness: None,
    }
}
