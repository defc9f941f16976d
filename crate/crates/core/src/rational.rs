//! Exact rational scalars and 2×2 rational matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number. All scalar arithmetic in the crate is
/// exact; `Rat` values are always kept in lowest terms with a positive
/// denominator (the representation `num_rational` maintains).
pub type Rat = num_rational::BigRational;

/// `n/d` as a `Rat`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `true` iff `0 <= q <= 1`.
pub fn in_unit_interval(q: &Rat) -> bool {
    !q.is_negative() && *q <= Rat::one()
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Canonical wire form `"p/q"` (lowest terms, positive denominator), kept
/// explicit even for integers: `1` renders as `"1/1"`.
pub fn format_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Exact square root when `q` is a perfect square of a rational, else `None`.
/// Only non-negative inputs can succeed.
pub fn sqrt_exact(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let ns = q.numer().sqrt();
    let ds = q.denom().sqrt();
    if &(&ns * &ns) == q.numer() && &(&ds * &ds) == q.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Floor square root of `q >= 0` on the grid of denominator `2^denom_bits`:
/// the largest `k / 2^denom_bits` whose square does not exceed `q`. The
/// result `r` satisfies `r^2 <= q < (r + 2^-denom_bits)^2`.
pub fn sqrt_floor(q: &Rat, denom_bits: u32) -> Rat {
    assert!(!q.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << denom_bits;
    // floor(sqrt(q * 2^(2b))) = floor(sqrt(numer * 2^(2b) / denom))
    let scaled = (q.numer() * (&scale * &scale)) / q.denom();
    Rat::new(scaled.sqrt(), scale)
}

/// 2×2 rational matrix `[[a, b], [c, d]]` (row-major).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Mat2 {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn zero() -> Self {
        let z = Rat::zero;
        Mat2::new(z(), z(), z(), z())
    }

    pub fn identity() -> Self {
        Mat2::new(Rat::one(), Rat::zero(), Rat::zero(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Column sums `(a + c, b + d)`.
    pub fn col_sums(&self) -> (Rat, Rat) {
        (&self.a + &self.c, &self.b + &self.d)
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a + &other.a,
            &self.b + &other.b,
            &self.c + &other.c,
            &self.d + &other.d,
        )
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a - &other.a,
            &self.b - &other.b,
            &self.c - &other.c,
            &self.d - &other.d,
        )
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    pub fn scale(&self, k: &Rat) -> Mat2 {
        Mat2::new(k * &self.a, k * &self.b, k * &self.c, k * &self.d)
    }

    /// `k · id`.
    pub fn scalar(k: &Rat) -> Mat2 {
        Mat2::new(k.clone(), Rat::zero(), Rat::zero(), k.clone())
    }
}

impl std::fmt::Display for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}
