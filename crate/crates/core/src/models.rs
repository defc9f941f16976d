//! Concrete effect-algebra model families with exact element arithmetic.
//!
//! Families: finite tables (optionally carrying a sequential product table),
//! Boolean algebras of atom sets, the rational unit interval, the interval
//! `[0, id]` of 2×2 rational matrices ordered by the column-sum cone,
//! horizontal sums (disjoint union glued at 0 and 1), direct sums
//! (componentwise products), and corners `{a : a <= p}` below an idempotent.
//!
//! Elements have a canonical form: the model-wide zero and one are always the
//! dedicated [`Elem::Zero`]/[`Elem::One`] tags, never a family-native
//! spelling, and every operation returns canonical values. Inputs are
//! canonicalized on entry, so `{"rat": "1/1"}` and `one` denote the same
//! element.

use num_traits::{One as _, Signed, Zero as _};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt;

use crate::ea::FiniteEaTable;
use crate::rational::{in_unit_interval, rat, Mat2, Rat};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// Total sequential-product table for a finite model, row-major `n × n`:
/// `product[a * n + b] = a ∘ b`.
pub type ProductTable = Vec<usize>;

/// An element of a model, in canonical form (see module docs).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// The zero of any model.
    Zero,
    /// The one (top) of any model.
    One,
    /// Element of a finite table, by index.
    Idx(usize),
    /// Element of a Boolean model: bitmask of atoms.
    Bits(u64),
    /// Element of the unit interval.
    Rat(Rat),
    /// Element of the matrix interval.
    Mat(Mat2),
    /// Element of a horizontal sum: `(inner, part)` with `inner` strictly
    /// between 0 and 1 (boundary values collapse to `Zero`/`One`).
    Branch(usize, Box<Elem>),
    /// Element of a direct sum, componentwise.
    Tuple(Vec<Elem>),
}

impl Elem {
    pub fn rational(q: Rat) -> Elem {
        Elem::Rat(q)
    }

    pub fn branch(part: usize, inner: Elem) -> Elem {
        Elem::Branch(part, Box::new(inner))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Elem::Zero | Elem::One)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Zero => write!(f, "0"),
            Elem::One => write!(f, "1"),
            Elem::Idx(i) => write!(f, "#{i}"),
            Elem::Bits(b) => {
                write!(f, "{{")?;
                let mut first = true;
                for i in 0..64 {
                    if b & (1 << i) != 0 {
                        if !first {
                            write!(f, ",")?;
                        }
                        write!(f, "a{i}")?;
                        first = false;
                    }
                }
                write!(f, "}}")
            }
            Elem::Rat(q) => write!(f, "{q}"),
            Elem::Mat(m) => write!(f, "{m}"),
            Elem::Branch(k, inner) => write!(f, "({inner})@{k}"),
            Elem::Tuple(es) => {
                write!(f, "(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A model family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelExpr {
    Finite {
        table: FiniteEaTable,
        product: Option<ProductTable>,
    },
    Boolean {
        atoms: u32,
    },
    Interval,
    MatrixInterval,
    HorizontalSum {
        parts: Vec<ModelExpr>,
    },
    DirectSum {
        parts: Vec<ModelExpr>,
    },
    Corner {
        base: Box<ModelExpr>,
        idempotent: Elem,
    },
}

impl ModelExpr {
    pub fn finite(table: FiniteEaTable) -> ModelExpr {
        ModelExpr::Finite { table, product: None }
    }

    pub fn finite_with_product(table: FiniteEaTable, product: ProductTable) -> Result<ModelExpr> {
        let n = table.size();
        if product.len() != n * n {
            return Err(Error::Structure(format!(
                "product table has {} entries, expected {}",
                product.len(),
                n * n
            )));
        }
        if let Some(&bad) = product.iter().find(|&&v| v >= n) {
            return Err(Error::Structure(format!("product value {bad} out of range")));
        }
        Ok(ModelExpr::Finite { table, product: Some(product) })
    }

    pub fn boolean(atoms: u32) -> Result<ModelExpr> {
        if atoms == 0 || atoms > 16 {
            return Err(Error::InvalidModel(format!(
                "boolean model needs 1..=16 atoms, got {atoms}"
            )));
        }
        Ok(ModelExpr::Boolean { atoms })
    }

    pub fn interval() -> ModelExpr {
        ModelExpr::Interval
    }

    pub fn matrix_interval() -> ModelExpr {
        ModelExpr::MatrixInterval
    }

    /// Disjoint union of the parts glued at 0 and 1. Parts with fewer than
    /// three elements are rejected: such a part has no interior, so gluing
    /// would collapse it entirely.
    pub fn horizontal_sum(parts: Vec<ModelExpr>) -> Result<ModelExpr> {
        if parts.len() < 2 {
            return Err(Error::InvalidModel(
                "horizontal sum needs at least two parts".into(),
            ));
        }
        for (k, p) in parts.iter().enumerate() {
            if let Some(size) = p.carrier_size() {
                if size < 3 {
                    return Err(Error::InvalidModel(format!(
                        "horizontal sum part {k} has only {size} elements; \
                         a part must have interior elements besides 0 and 1"
                    )));
                }
            }
        }
        Ok(ModelExpr::HorizontalSum { parts })
    }

    pub fn direct_sum(parts: Vec<ModelExpr>) -> Result<ModelExpr> {
        if parts.is_empty() {
            return Err(Error::InvalidModel("direct sum needs at least one part".into()));
        }
        Ok(ModelExpr::DirectSum { parts })
    }

    /// The algebra `{a : a <= p}` with complement `a -> p ⊖ a`. `p` must be
    /// an idempotent member of `base`, which therefore needs a product.
    pub fn corner(base: ModelExpr, p: Elem) -> Result<ModelExpr> {
        let p = base.want(&p)?;
        let pp = base.seq_product(&p, &p)?;
        if pp != p {
            return Err(Error::NotIdempotent {
                context: "corner construction".into(),
                elem: p.to_string(),
            });
        }
        // Degenerate corners collapse: cutting by the unit changes nothing
        // and cutting by zero leaves only zero.
        match p {
            Elem::One => Ok(base),
            Elem::Zero => Ok(ModelExpr::trivial()),
            p => Ok(ModelExpr::Corner { base: Box::new(base), idempotent: p }),
        }
    }

    /// The one-element model (used as the trivial block in decompositions).
    pub fn trivial() -> ModelExpr {
        ModelExpr::Finite {
            table: FiniteEaTable::trivial(),
            product: Some(vec![0]),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelExpr::Finite { .. } => "finite",
            ModelExpr::Boolean { .. } => "boolean",
            ModelExpr::Interval => "interval",
            ModelExpr::MatrixInterval => "matrix_interval",
            ModelExpr::HorizontalSum { .. } => "horizontal_sum",
            ModelExpr::DirectSum { .. } => "direct_sum",
            ModelExpr::Corner { .. } => "corner",
        }
    }

    /// Number of elements, or `None` for families with infinite carrier.
    pub fn carrier_size(&self) -> Option<u128> {
        match self {
            ModelExpr::Finite { table, .. } => Some(table.size() as u128),
            ModelExpr::Boolean { atoms } => Some(1u128 << atoms),
            ModelExpr::Interval | ModelExpr::MatrixInterval => None,
            ModelExpr::HorizontalSum { parts } => {
                let mut total: u128 = 2;
                for p in parts {
                    total += p.carrier_size()?.saturating_sub(2);
                }
                Some(total)
            }
            ModelExpr::DirectSum { parts } => {
                let mut total: u128 = 1;
                for p in parts {
                    total = total.checked_mul(p.carrier_size()?)?;
                }
                Some(total)
            }
            ModelExpr::Corner { .. } => {
                if self.is_parametric() {
                    None
                } else {
                    self.enumerate_all().ok().map(|v| v.len() as u128)
                }
            }
        }
    }

    /// `true` when the family contains an interval or matrix-interval leaf
    /// (and hence has infinitely many elements).
    pub fn is_parametric(&self) -> bool {
        match self {
            ModelExpr::Finite { .. } | ModelExpr::Boolean { .. } => false,
            ModelExpr::Interval | ModelExpr::MatrixInterval => true,
            ModelExpr::HorizontalSum { parts } | ModelExpr::DirectSum { parts } => {
                parts.iter().any(ModelExpr::is_parametric)
            }
            ModelExpr::Corner { base, .. } => base.is_parametric(),
        }
    }

    /// `true` when [`ModelExpr::seq_product`] has a rule for this model.
    pub fn has_product(&self) -> bool {
        match self {
            ModelExpr::Finite { product, .. } => product.is_some(),
            ModelExpr::Boolean { .. } | ModelExpr::Interval | ModelExpr::MatrixInterval => true,
            ModelExpr::HorizontalSum { parts } => {
                parts.iter().all(|p| matches!(p, ModelExpr::Interval))
            }
            ModelExpr::DirectSum { parts } => parts.iter().all(ModelExpr::has_product),
            ModelExpr::Corner { base, .. } => base.has_product(),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::Zero
    }

    pub fn one(&self) -> Elem {
        Elem::One
    }

    /// Canonicalizes `e`: `Err` on a shape that can never belong to this
    /// family, `Ok(None)` on a well-shaped non-member, `Ok(Some(c))` with the
    /// canonical form otherwise.
    pub fn canon(&self, e: &Elem) -> Result<Option<Elem>> {
        match (self, e) {
            (_, Elem::Zero) => Ok(Some(Elem::Zero)),
            (ModelExpr::Corner { idempotent, .. }, Elem::One) => {
                // The corner's top is the idempotent itself; a zero corner is
                // the trivial algebra where 0 = 1.
                Ok(Some(if *idempotent == Elem::Zero {
                    Elem::Zero
                } else {
                    Elem::One
                }))
            }
            // In a one-element table the unit is the zero; Zero is the
            // canonical name.
            (ModelExpr::Finite { table, .. }, Elem::One) if table.one() == 0 => {
                Ok(Some(Elem::Zero))
            }
            (_, Elem::One) => Ok(Some(Elem::One)),
            (ModelExpr::Finite { table, .. }, Elem::Idx(i)) => {
                if *i >= table.size() {
                    return Err(Error::FamilyMismatch(format!(
                        "index {i} out of range for finite model of size {}",
                        table.size()
                    )));
                }
                Ok(Some(if *i == 0 {
                    Elem::Zero
                } else if *i == table.one() {
                    Elem::One
                } else {
                    Elem::Idx(*i)
                }))
            }
            (ModelExpr::Boolean { atoms }, Elem::Bits(b)) => {
                let full = (1u64 << atoms) - 1;
                if b & !full != 0 {
                    return Err(Error::FamilyMismatch(format!(
                        "bitset {b:#x} uses atoms beyond the {atoms} available"
                    )));
                }
                Ok(Some(if *b == 0 {
                    Elem::Zero
                } else if *b == full {
                    Elem::One
                } else {
                    Elem::Bits(*b)
                }))
            }
            (ModelExpr::Interval, Elem::Rat(q)) => {
                if !in_unit_interval(q) {
                    return Ok(None);
                }
                Ok(Some(if q.is_zero() {
                    Elem::Zero
                } else if q.is_one() {
                    Elem::One
                } else {
                    Elem::Rat(q.clone())
                }))
            }
            (ModelExpr::MatrixInterval, Elem::Mat(m)) => {
                if m.is_zero() {
                    return Ok(Some(Elem::Zero));
                }
                if m.is_identity() {
                    return Ok(Some(Elem::One));
                }
                let (s1, s2) = m.col_sums();
                if s1 == s2 && s1.is_positive() && s1 < Rat::one() {
                    Ok(Some(Elem::Mat(m.clone())))
                } else {
                    Ok(None)
                }
            }
            (ModelExpr::HorizontalSum { parts }, Elem::Branch(k, inner)) => {
                let Some(part) = parts.get(*k) else {
                    return Err(Error::FamilyMismatch(format!(
                        "branch {k} out of range for horizontal sum of {} parts",
                        parts.len()
                    )));
                };
                Ok(part.canon(inner)?.map(|c| match c {
                    Elem::Zero => Elem::Zero,
                    Elem::One => Elem::One,
                    c => Elem::branch(*k, c),
                }))
            }
            (ModelExpr::DirectSum { parts }, Elem::Tuple(es)) => {
                if es.len() != parts.len() {
                    return Err(Error::FamilyMismatch(format!(
                        "tuple has {} components, direct sum has {} parts",
                        es.len(),
                        parts.len()
                    )));
                }
                let mut comps = Vec::with_capacity(es.len());
                for (part, e) in parts.iter().zip(es) {
                    match part.canon(e)? {
                        Some(c) => comps.push(c),
                        None => return Ok(None),
                    }
                }
                Ok(Some(Self::pack_tuple(comps)))
            }
            (ModelExpr::Corner { base, idempotent }, e) => {
                let Some(c) = base.canon(e)? else { return Ok(None) };
                if !base.leq(&c, idempotent)? {
                    return Ok(None);
                }
                Ok(Some(if c == *idempotent { Elem::One } else { c }))
            }
            (_, other) => Err(Error::FamilyMismatch(format!(
                "element {other} does not fit family {}",
                self.kind_name()
            ))),
        }
    }

    fn pack_tuple(comps: Vec<Elem>) -> Elem {
        if comps.iter().all(|c| *c == Elem::Zero) {
            Elem::Zero
        } else if comps.iter().all(|c| *c == Elem::One) {
            Elem::One
        } else {
            Elem::Tuple(comps)
        }
    }

    /// Membership test: `Err` only on shape mismatch.
    pub fn membership(&self, e: &Elem) -> Result<bool> {
        Ok(self.canon(e)?.is_some())
    }

    /// Canonicalizes and insists on membership.
    pub fn want(&self, e: &Elem) -> Result<Elem> {
        self.canon(e)?.ok_or_else(|| {
            Error::FamilyMismatch(format!("{e} is not a member of this {} model", self.kind_name()))
        })
    }

    /// Replaces boundary tags by values the family match arms can compute
    /// with. Inputs and outputs are members; `Zero`/`One` survive where the
    /// family handles them structurally (horizontal sums, corners' zero).
    fn expand(&self, e: &Elem) -> Elem {
        match (self, e) {
            (ModelExpr::Finite { .. }, Elem::Zero) => Elem::Idx(0),
            (ModelExpr::Finite { table, .. }, Elem::One) => Elem::Idx(table.one()),
            (ModelExpr::Boolean { .. }, Elem::Zero) => Elem::Bits(0),
            (ModelExpr::Boolean { atoms }, Elem::One) => Elem::Bits((1u64 << atoms) - 1),
            (ModelExpr::Interval, Elem::Zero) => Elem::Rat(Rat::zero()),
            (ModelExpr::Interval, Elem::One) => Elem::Rat(Rat::one()),
            (ModelExpr::MatrixInterval, Elem::Zero) => Elem::Mat(Mat2::zero()),
            (ModelExpr::MatrixInterval, Elem::One) => Elem::Mat(Mat2::identity()),
            (ModelExpr::DirectSum { parts }, Elem::Zero) => {
                Elem::Tuple(vec![Elem::Zero; parts.len()])
            }
            (ModelExpr::DirectSum { parts }, Elem::One) => {
                Elem::Tuple(vec![Elem::One; parts.len()])
            }
            (ModelExpr::Corner { idempotent, .. }, Elem::One) => (*idempotent).clone(),
            _ => e.clone(),
        }
    }

    /// Partial sum `a ⊻ b`; `Ok(None)` when the pair is not summable.
    pub fn partial_sum(&self, a: &Elem, b: &Elem) -> Result<Option<Elem>> {
        let a = self.want(a)?;
        let b = self.want(b)?;
        match self {
            ModelExpr::Finite { table, .. } => {
                let (Elem::Idx(i), Elem::Idx(j)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("finite canon yields indices")
                };
                Ok(match table.sum(i, j) {
                    Some(k) => Some(self.want(&Elem::Idx(k))?),
                    None => None,
                })
            }
            ModelExpr::Boolean { .. } => {
                let (Elem::Bits(x), Elem::Bits(y)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("boolean canon yields bitsets")
                };
                if x & y == 0 {
                    Ok(Some(self.want(&Elem::Bits(x | y))?))
                } else {
                    Ok(None)
                }
            }
            ModelExpr::Interval => {
                let (Elem::Rat(x), Elem::Rat(y)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("interval canon yields rationals")
                };
                let s = x + y;
                if s <= Rat::one() {
                    Ok(Some(self.want(&Elem::Rat(s))?))
                } else {
                    Ok(None)
                }
            }
            ModelExpr::MatrixInterval => {
                let (Elem::Mat(x), Elem::Mat(y)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("matrix canon yields matrices")
                };
                Ok(self.canon(&Elem::Mat(x.add(&y)))?)
            }
            ModelExpr::HorizontalSum { parts } => match (&a, &b) {
                (Elem::Zero, _) => Ok(Some(b)),
                (_, Elem::Zero) => Ok(Some(a)),
                (Elem::One, _) | (_, Elem::One) => Ok(None),
                (Elem::Branch(k, x), Elem::Branch(l, y)) => {
                    if k != l {
                        return Ok(None);
                    }
                    Ok(parts[*k].partial_sum(x, y)?.map(|s| match s {
                        Elem::Zero => Elem::Zero,
                        Elem::One => Elem::One,
                        s => Elem::branch(*k, s),
                    }))
                }
                _ => unreachable!("horizontal-sum canon yields branches"),
            },
            ModelExpr::DirectSum { parts } => {
                let (Elem::Tuple(xs), Elem::Tuple(ys)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("direct-sum canon yields tuples")
                };
                let mut comps = Vec::with_capacity(parts.len());
                for ((part, x), y) in parts.iter().zip(&xs).zip(&ys) {
                    match part.partial_sum(x, y)? {
                        Some(s) => comps.push(s),
                        None => return Ok(None),
                    }
                }
                Ok(Some(Self::pack_tuple(comps)))
            }
            ModelExpr::Corner { base, idempotent } => {
                let (x, y) = (self.expand(&a), self.expand(&b));
                match base.partial_sum(&x, &y)? {
                    Some(s) if base.leq(&s, idempotent)? => Ok(Some(self.want(&s)?)),
                    _ => Ok(None),
                }
            }
        }
    }

    pub fn summable(&self, a: &Elem, b: &Elem) -> Result<bool> {
        Ok(self.partial_sum(a, b)?.is_some())
    }

    /// The complement `a⊥`, the unique element with `a ⊻ a⊥ = 1`.
    pub fn complement(&self, a: &Elem) -> Result<Elem> {
        let a = self.want(a)?;
        match (self, &a) {
            (ModelExpr::Corner { base, idempotent }, _) => {
                // Complement inside the corner is the difference to its top.
                let x = self.expand(&a);
                let d = base
                    .ominus(idempotent, &x)?
                    .expect("corner members lie below the corner top");
                self.want(&d)
            }
            (_, Elem::Zero) => Ok(Elem::One),
            (_, Elem::One) => Ok(Elem::Zero),
            (ModelExpr::Finite { table, .. }, Elem::Idx(i)) => self.want(&Elem::Idx(table.perp(*i))),
            (ModelExpr::Boolean { atoms }, Elem::Bits(b)) => {
                self.want(&Elem::Bits(((1u64 << atoms) - 1) & !b))
            }
            (ModelExpr::Interval, Elem::Rat(q)) => self.want(&Elem::Rat(Rat::one() - q)),
            (ModelExpr::MatrixInterval, Elem::Mat(m)) => {
                self.want(&Elem::Mat(Mat2::identity().sub(m)))
            }
            (ModelExpr::HorizontalSum { parts }, Elem::Branch(k, x)) => {
                let c = parts[*k].complement(x)?;
                Ok(match c {
                    Elem::Zero => Elem::Zero,
                    Elem::One => Elem::One,
                    c => Elem::branch(*k, c),
                })
            }
            (ModelExpr::DirectSum { parts }, _) => {
                let Elem::Tuple(xs) = self.expand(&a) else {
                    unreachable!("direct-sum canon yields tuples")
                };
                let comps = parts
                    .iter()
                    .zip(&xs)
                    .map(|(part, x)| part.complement(x))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::pack_tuple(comps))
            }
            _ => unreachable!("canon normalizes the remaining shapes"),
        }
    }

    /// Difference `b ⊖ a`, defined exactly when `a <= b`, via the identity
    /// `b ⊖ a = (a ⊻ b⊥)⊥`.
    pub fn ominus(&self, b: &Elem, a: &Elem) -> Result<Option<Elem>> {
        let bc = self.complement(b)?;
        match self.partial_sum(a, &bc)? {
            Some(s) => Ok(Some(self.complement(&s)?)),
            None => Ok(None),
        }
    }

    /// The algebraic order: `a <= b` iff `a` is summable with `b⊥`.
    pub fn leq(&self, a: &Elem, b: &Elem) -> Result<bool> {
        let bc = self.complement(b)?;
        self.summable(a, &bc)
    }

    /// Sequential product `a ∘ b` ("first `a`, then `b`").
    pub fn seq_product(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let a = self.want(a)?;
        let b = self.want(b)?;
        match self {
            ModelExpr::Finite { table, product } => {
                let Some(product) = product else {
                    return Err(Error::NoProduct("finite model has no product table".into()));
                };
                let (Elem::Idx(i), Elem::Idx(j)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("finite canon yields indices")
                };
                self.want(&Elem::Idx(product[i * table.size() + j]))
            }
            ModelExpr::Boolean { .. } => {
                let (Elem::Bits(x), Elem::Bits(y)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("boolean canon yields bitsets")
                };
                self.want(&Elem::Bits(x & y))
            }
            ModelExpr::Interval => {
                let (Elem::Rat(x), Elem::Rat(y)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("interval canon yields rationals")
                };
                self.want(&Elem::Rat(x * y))
            }
            ModelExpr::MatrixInterval => {
                let (Elem::Mat(x), Elem::Mat(y)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("matrix canon yields matrices")
                };
                self.want(&Elem::Mat(x.mul(&y)))
            }
            ModelExpr::HorizontalSum { .. } => {
                if !self.has_product() {
                    return Err(Error::NoProduct(
                        "horizontal-sum product is registered only when every part \
                         is the unit interval"
                            .into(),
                    ));
                }
                match (&a, &b) {
                    (Elem::Zero, _) | (_, Elem::Zero) => Ok(Elem::Zero),
                    (Elem::One, _) => Ok(b),
                    (_, Elem::One) => Ok(a),
                    (Elem::Branch(k, x), Elem::Branch(_, y)) => {
                        // The product multiplies the scalars and stays in the
                        // left factor's branch.
                        let (Elem::Rat(x), Elem::Rat(y)) = (x.as_ref(), y.as_ref()) else {
                            unreachable!("interval parts hold rationals")
                        };
                        Ok(self
                            .canon(&Elem::branch(*k, Elem::Rat(x * y)))?
                            .expect("product of interior scalars is interior"))
                    }
                    _ => unreachable!("horizontal-sum canon yields branches"),
                }
            }
            ModelExpr::DirectSum { parts } => {
                let (Elem::Tuple(xs), Elem::Tuple(ys)) = (self.expand(&a), self.expand(&b)) else {
                    unreachable!("direct-sum canon yields tuples")
                };
                let comps = parts
                    .iter()
                    .zip(&xs)
                    .zip(&ys)
                    .map(|((part, x), y)| part.seq_product(x, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::pack_tuple(comps))
            }
            ModelExpr::Corner { base, .. } => {
                let p = base.seq_product(&self.expand(&a), &self.expand(&b))?;
                self.want(&p)
            }
        }
    }

    /// All `h` with `h ⊻ h = a`. An additive notion, so it needs no product.
    /// Exhaustive on finite families; closed forms elsewhere (the interval
    /// and matrix interval have the unique half `a/2`; a horizontal sum's One
    /// has one half per part).
    pub fn halves_of(&self, a: &Elem) -> Result<Vec<Elem>> {
        let a = self.want(a)?;
        match self {
            ModelExpr::Finite { table, .. } => {
                let Elem::Idx(target) = self.expand(&a) else {
                    unreachable!("finite canon yields indices")
                };
                (0..table.size())
                    .filter(|&i| table.sum(i, i) == Some(target))
                    .map(|i| self.want(&Elem::Idx(i)))
                    .collect()
            }
            ModelExpr::Boolean { .. } => {
                // b ⊻ b requires b & b = 0, so only 0 has a half.
                Ok(if a == Elem::Zero { vec![Elem::Zero] } else { vec![] })
            }
            ModelExpr::Interval => {
                let Elem::Rat(q) = self.expand(&a) else {
                    unreachable!("interval canon yields rationals")
                };
                Ok(vec![self.want(&Elem::Rat(q / rat(2, 1)))?])
            }
            ModelExpr::MatrixInterval => {
                let Elem::Mat(m) = self.expand(&a) else {
                    unreachable!("matrix canon yields matrices")
                };
                Ok(vec![self.want(&Elem::Mat(m.scale(&rat(1, 2))))?])
            }
            ModelExpr::HorizontalSum { parts } => match &a {
                Elem::Zero => Ok(vec![Elem::Zero]),
                Elem::One => {
                    // A half of 1 must sum with itself inside one part, so
                    // each part contributes its own halves of 1.
                    let mut out = Vec::new();
                    for (k, part) in parts.iter().enumerate() {
                        for h in part.halves_of(&Elem::One)? {
                            out.push(match h {
                                Elem::Zero => Elem::Zero,
                                Elem::One => Elem::One,
                                h => Elem::branch(k, h),
                            });
                        }
                    }
                    Ok(out)
                }
                Elem::Branch(k, x) => Ok(parts[*k]
                    .halves_of(x)?
                    .into_iter()
                    .filter(|h| !h.is_boundary())
                    .map(|h| Elem::branch(*k, h))
                    .collect()),
                _ => unreachable!("horizontal-sum canon yields branches"),
            },
            ModelExpr::DirectSum { parts } => {
                let Elem::Tuple(xs) = self.expand(&a) else {
                    unreachable!("direct-sum canon yields tuples")
                };
                let per_part = parts
                    .iter()
                    .zip(&xs)
                    .map(|(part, x)| part.halves_of(x))
                    .collect::<Result<Vec<_>>>()?;
                let mut combos: Vec<Vec<Elem>> = vec![Vec::new()];
                for options in &per_part {
                    let mut next = Vec::new();
                    for prefix in &combos {
                        for opt in options {
                            let mut row = prefix.clone();
                            row.push(opt.clone());
                            next.push(row);
                        }
                    }
                    combos = next;
                }
                Ok(combos.into_iter().map(Self::pack_tuple).collect())
            }
            ModelExpr::Corner { base, .. } => {
                // h <= h ⊻ h = a <= p, so corner halves are base halves.
                let halves = base.halves_of(&self.expand(&a))?;
                halves.into_iter().map(|h| self.want(&h)).collect()
            }
        }
    }

    /// Enumerates the whole finite carrier in a deterministic order.
    pub fn enumerate_all(&self) -> Result<Vec<Elem>> {
        match self {
            ModelExpr::Finite { table, .. } => {
                (0..table.size()).map(|i| self.want(&Elem::Idx(i))).collect()
            }
            ModelExpr::Boolean { atoms } => (0..(1u64 << atoms))
                .map(|b| self.want(&Elem::Bits(b)))
                .collect(),
            ModelExpr::Interval | ModelExpr::MatrixInterval => Err(Error::Unsupported(
                "cannot enumerate an infinite carrier; use sampling".into(),
            )),
            ModelExpr::HorizontalSum { parts } => {
                let mut out = vec![Elem::Zero, Elem::One];
                for (k, part) in parts.iter().enumerate() {
                    for e in part.enumerate_all()? {
                        if !e.is_boundary() {
                            out.push(Elem::branch(k, e));
                        }
                    }
                }
                Ok(out)
            }
            ModelExpr::DirectSum { parts } => {
                let mut combos: Vec<Vec<Elem>> = vec![Vec::new()];
                for part in parts {
                    let options = part.enumerate_all()?;
                    let mut next = Vec::new();
                    for prefix in &combos {
                        for opt in &options {
                            let mut row = prefix.clone();
                            row.push(opt.clone());
                            next.push(row);
                        }
                    }
                    combos = next;
                }
                Ok(combos.into_iter().map(Self::pack_tuple).collect())
            }
            ModelExpr::Corner { base, idempotent } => {
                let mut out = Vec::new();
                for e in base.enumerate_all()? {
                    if base.leq(&e, idempotent)? {
                        out.push(self.want(&e)?);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Finite families: the full carrier, or [`Error::BudgetExceeded`] when
    /// it is larger than `budget` (never a silent truncation). Parametric
    /// families: a deterministic sample of (at most) `budget` distinct
    /// members seeded by `seed`, always containing 0, 1, every half of 1,
    /// and boundary-adjacent values.
    pub fn enumerate_or_sample(&self, budget: usize, seed: u64) -> Result<Vec<Elem>> {
        if !self.is_parametric() {
            let size = self.carrier_size().unwrap_or(u128::MAX);
            if size > budget as u128 {
                return Err(Error::BudgetExceeded {
                    size: size.min(usize::MAX as u128) as usize,
                    budget,
                });
            }
            return self.enumerate_all();
        }
        let mut mandatory = vec![Elem::Zero, Elem::One];
        mandatory.extend(self.halves_of(&Elem::One)?);
        let boundary = self.boundary_points()?;
        if budget < mandatory.len() {
            return Err(Error::BudgetTooSmall {
                budget,
                required: mandatory.len(),
            });
        }
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut out = Vec::new();
        for e in mandatory.into_iter().chain(boundary) {
            if out.len() >= budget {
                break;
            }
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut attempts = 0usize;
        let attempt_cap = budget.saturating_mul(64).max(1024);
        while out.len() < budget && attempts < attempt_cap {
            attempts += 1;
            let e = self.random_member(&mut rng)?;
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Deterministic boundary-adjacent members per family; may repeat values
    /// already mandated (the sampler deduplicates).
    fn boundary_points(&self) -> Result<Vec<Elem>> {
        match self {
            ModelExpr::Finite { .. } | ModelExpr::Boolean { .. } => self.enumerate_all(),
            ModelExpr::Interval => Ok([rat(1, 64), rat(63, 64), rat(1, 3), rat(2, 3), rat(1, 4)]
                .into_iter()
                .map(Elem::Rat)
                .collect()),
            ModelExpr::MatrixInterval => {
                let half = rat(1, 2);
                let quarter = rat(1, 4);
                Ok(vec![
                    Elem::Mat(Mat2::scalar(&rat(1, 64))),
                    Elem::Mat(Mat2::scalar(&rat(63, 64))),
                    // Rank-one-like members concentrated on one row.
                    Elem::Mat(Mat2::new(half.clone(), half.clone(), Rat::zero(), Rat::zero())),
                    Elem::Mat(Mat2::new(Rat::zero(), Rat::zero(), half.clone(), half.clone())),
                    // A symmetric member and its complement (negative entries).
                    Elem::Mat(Mat2::new(half.clone(), quarter.clone(), quarter.clone(), half.clone())),
                    Elem::Mat(Mat2::new(half.clone(), -quarter.clone(), -quarter, half)),
                ])
            }
            ModelExpr::HorizontalSum { parts } => {
                let mut out = Vec::new();
                for (k, part) in parts.iter().enumerate() {
                    for e in part.boundary_points()? {
                        if !e.is_boundary() {
                            out.push(self.want(&Elem::branch(k, e))?);
                        }
                    }
                }
                Ok(out)
            }
            ModelExpr::DirectSum { parts } => {
                let mut out = Vec::new();
                // Indicator elements (1 in one slot) are the canonical central
                // idempotents, so always offer them.
                for k in 0..parts.len() {
                    let mut comps = vec![Elem::Zero; parts.len()];
                    comps[k] = Elem::One;
                    out.push(Self::pack_tuple(comps));
                }
                for (k, part) in parts.iter().enumerate() {
                    for e in part.boundary_points()?.into_iter().take(2) {
                        let mut comps = vec![Elem::Zero; parts.len()];
                        comps[k] = e.clone();
                        out.push(Self::pack_tuple(comps));
                        let mut comps = vec![Elem::One; parts.len()];
                        comps[k] = e;
                        out.push(Self::pack_tuple(comps));
                    }
                }
                Ok(out)
            }
            ModelExpr::Corner { base, idempotent } => {
                let mut out = Vec::new();
                for e in base.boundary_points()? {
                    if base.leq(&e, idempotent)? {
                        out.push(self.want(&e)?);
                    }
                }
                Ok(out)
            }
        }
    }

    fn random_member(&self, rng: &mut ChaCha8Rng) -> Result<Elem> {
        match self {
            ModelExpr::Finite { table, .. } => {
                let i = rng.gen_range(0..table.size());
                self.want(&Elem::Idx(i))
            }
            ModelExpr::Boolean { atoms } => {
                let b = rng.gen_range(0..(1u64 << atoms));
                self.want(&Elem::Bits(b))
            }
            ModelExpr::Interval => {
                let d = rng.gen_range(2i64..=64);
                let n = rng.gen_range(0..=d);
                self.want(&Elem::Rat(rat(n, d)))
            }
            ModelExpr::MatrixInterval => {
                // Any matrix with equal column sums strictly inside (0, 1) is
                // a member; entries themselves may leave [0, 1].
                let d = rng.gen_range(2i64..=32);
                let n = rng.gen_range(1..d);
                let s = rat(n, d);
                let a = rat(rng.gen_range(-16i64..=16), rng.gen_range(1i64..=16));
                let b = rat(rng.gen_range(-16i64..=16), rng.gen_range(1i64..=16));
                let m = Mat2::new(a.clone(), b.clone(), &s - &a, &s - &b);
                self.want(&Elem::Mat(m))
            }
            ModelExpr::HorizontalSum { parts } => {
                let k = rng.gen_range(0..parts.len());
                let inner = parts[k].random_member(rng)?;
                self.want(&Elem::branch(k, inner))
            }
            ModelExpr::DirectSum { parts } => {
                let comps = parts
                    .iter()
                    .map(|p| p.random_member(rng))
                    .collect::<Result<Vec<_>>>()?;
                self.want(&Elem::Tuple(comps))
            }
            ModelExpr::Corner { base, idempotent } => {
                for _ in 0..64 {
                    let e = base.random_member(rng)?;
                    if base.leq(&e, idempotent)? {
                        return self.want(&e);
                    }
                }
                Ok(Elem::Zero)
            }
        }
    }
}

/// Column-sum functional of the matrix interval: both columns of a member sum
/// to the same value, returned here. Multiplicative, order-preserving, and
/// zero exactly on the zero matrix.
pub fn tau(e: &Elem) -> Result<Rat> {
    match e {
        Elem::Zero => Ok(Rat::zero()),
        Elem::One => Ok(Rat::one()),
        Elem::Mat(m) => {
            let (s1, s2) = m.col_sums();
            if s1 != s2 {
                return Err(Error::FamilyMismatch(format!(
                    "{m} has unequal column sums and is not a matrix-interval member"
                )));
            }
            Ok(s1)
        }
        other => Err(Error::FamilyMismatch(format!(
            "tau is defined on matrix-interval members, got {other}"
        ))),
    }
}

/// Five effect-algebra axioms evaluated exactly on the given elements
/// (commutativity, zero, associativity, unique complement, 1-summability).
/// Exhaustive when `elems` is the whole carrier.
pub fn check_ea_axioms_on(m: &ModelExpr, elems: &[Elem]) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    for a in elems {
        for b in elems {
            r.tick();
            if m.partial_sum(a, b)? != m.partial_sum(b, a)? {
                r.record("ea.commutativity", format!("{a} ⊻ {b} differs from {b} ⊻ {a}"));
            }
        }
    }
    for a in elems {
        r.tick();
        if m.partial_sum(a, &Elem::Zero)? != Some(a.clone()) {
            r.record("ea.zero", format!("{a} ⊻ 0 != {a}"));
        }
    }
    for a in elems {
        for b in elems {
            let Some(s) = m.partial_sum(a, b)? else { continue };
            for c in elems {
                r.tick();
                let Some(total) = m.partial_sum(&s, c)? else { continue };
                let nested = match m.partial_sum(b, c)? {
                    Some(u) => m.partial_sum(a, &u)?,
                    None => None,
                };
                if nested.as_ref() != Some(&total) {
                    r.record(
                        "ea.associativity",
                        format!("({a} ⊻ {b}) ⊻ {c} = {total} but {a} ⊻ ({b} ⊻ {c}) = {nested:?}"),
                    );
                }
            }
        }
    }
    for a in elems {
        r.tick();
        let ac = m.complement(a)?;
        if m.partial_sum(a, &ac)? != Some(Elem::One) {
            r.record("ea.unique-complement", format!("{a} ⊻ {a}⊥ != 1"));
        }
        for b in elems {
            r.tick();
            if m.partial_sum(a, b)? == Some(Elem::One) && *b != ac {
                r.record(
                    "ea.unique-complement",
                    format!("both {ac} and {b} complement {a}"),
                );
            }
        }
    }
    for a in elems {
        r.tick();
        if m.summable(a, &Elem::One)? && *a != Elem::Zero {
            r.record("ea.one-summability", format!("{a} ⊻ 1 is defined but {a} != 0"));
        }
    }
    Ok(r)
}
