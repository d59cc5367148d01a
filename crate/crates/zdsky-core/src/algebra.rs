//! Exact index algebra for the 2^N-ions built by the Cayley-Dickson process.
//!
//! Basis units are indexed by integers in `[0, 2^N)`, index 0 being the real
//! unit. The index of a product is always the XOR of the factors' indices;
//! only the sign takes work. Signs are fixed by a two-rule construction over
//! associative triples ("trips"), seeded by the quaternion triple `(1, 2, 3)`:
//!
//! * Rule 1: for `u < H`, `i_u · i_H = +i_(H+u)` where `H` is a power of two,
//!   so `(u, H, H+u)` is a positively oriented cycle.
//! * Rule 2: given a cycle `(a, b, c)`, adding `H` to two of the three and
//!   swapping their places yields another positively oriented cycle.
//!
//! A trip written so that `a·b = +c`, `b·c = +a`, `c·a = +b` is said to be in
//! CPO (cyclically positive order). Every unordered trip has exactly one CPO
//! cycle up to rotation; we canonicalize by rotating the smallest index to
//! the front.

use crate::error::{Error, Result};

/// Hard ceiling on the dimension exponent. Indices fit comfortably in `u32`
/// far beyond this, but nothing desk-scale needs more.
pub const MAX_N: u32 = 16;

/// Dimension context for the 2^N-ions: houses N, the generator G = 2^(N-1)
/// and the half-generator g = 2^(N-2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    n: u32,
}

impl AlgebraContext {
    pub fn new(n: u32) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::DimensionRange(n));
        }
        Ok(AlgebraContext { n })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// 2^N, the number of basis units.
    #[inline]
    pub fn dim(&self) -> u32 {
        1 << self.n
    }

    /// G = 2^(N-1).
    #[inline]
    pub fn generator(&self) -> u32 {
        1 << (self.n - 1)
    }

    /// g = G/2 = 2^(N-2).
    #[inline]
    pub fn half_generator(&self) -> u32 {
        1 << (self.n - 2)
    }

    #[inline]
    pub fn contains(&self, index: u32) -> bool {
        index < self.dim()
    }

    pub fn check_index(&self, index: u32) -> Result<()> {
        if self.contains(index) {
            Ok(())
        } else {
            Err(Error::IndexRange { index, n: self.n })
        }
    }
}

/// Sign of a basis product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    #[inline]
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A signed basis unit: the result of multiplying two units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedBasis {
    pub index: u32,
    pub sign: Sign,
}

impl std::fmt::Display for SignedBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.sign, self.index)
    }
}

#[inline]
fn top_bit(x: u32) -> u32 {
    debug_assert!(x != 0);
    1 << (31 - x.leading_zeros())
}

/// CPO cycle of the unordered trip `{x, y, z}`, smallest index first.
///
/// The recursion peels off the top bit `H` of the largest member. Exactly two
/// members carry `H` (their XOR is the third, which doesn't). If one of them
/// is `H` itself the cycle is the Rule 1 triple `(u, H, H+u)`; otherwise both
/// are `H + p`, `H + q` with `{p, q, z'}` a lower trip, and Rule 2 swaps the
/// augmented pair relative to the lower cycle.
pub fn trip_cpo(x: u32, y: u32, z: u32) -> Result<(u32, u32, u32)> {
    if x == 0 || y == 0 || z == 0 || x == y || y == z || x == z || x ^ y ^ z != 0 {
        return Err(Error::NotATrip([x, y, z]));
    }
    Ok(rotate_min(cpo_cycle(x, y, z)))
}

fn cpo_cycle(x: u32, y: u32, z: u32) -> (u32, u32, u32) {
    let h = top_bit(x.max(y).max(z));
    let mut carriers = [0u32; 2];
    let mut low = 0u32;
    let mut k = 0;
    for v in [x, y, z] {
        if v & h != 0 {
            carriers[k] = v;
            k += 1;
        } else {
            low = v;
        }
    }
    debug_assert_eq!(k, 2);
    let (c0, c1) = (carriers[0].min(carriers[1]), carriers[0].max(carriers[1]));
    if c0 == h {
        // Rule 1: (u, H, H+u).
        (low, h, c1)
    } else {
        // Rule 2: recurse on {p, q, low}, rotate low to the front, swap the
        // augmented pair.
        let p = c0 ^ h;
        let q = c1 ^ h;
        let cycle = cpo_cycle(p, q, low);
        let (_, m1, m2) = rotate_to(cycle, low);
        (low, h | m2, h | m1)
    }
}

fn rotate_to(cycle: (u32, u32, u32), front: u32) -> (u32, u32, u32) {
    let (a, b, c) = cycle;
    if front == a {
        (a, b, c)
    } else if front == b {
        (b, c, a)
    } else {
        debug_assert_eq!(front, c);
        (c, a, b)
    }
}

fn rotate_min(cycle: (u32, u32, u32)) -> (u32, u32, u32) {
    let m = cycle.0.min(cycle.1).min(cycle.2);
    rotate_to(cycle, m)
}

/// True iff the ordered triple `(x, y, z)` is a CPO presentation of its trip
/// (i.e. a rotation of the canonical cycle rather than a reflection).
pub fn is_cpo(x: u32, y: u32, z: u32) -> Result<bool> {
    let (a, b, c) = trip_cpo(x, y, z)?;
    Ok((x, y, z) == (a, b, c) || (x, y, z) == (b, c, a) || (x, y, z) == (c, a, b))
}

/// An associative triple in canonical form: smallest index first, stored in
/// CPO, so `a·b = +c`, `b·c = +a`, `c·a = +b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trip {
    a: u32,
    b: u32,
    c: u32,
}

impl Trip {
    pub fn new(x: u32, y: u32, z: u32) -> Result<Self> {
        let (a, b, c) = trip_cpo(x, y, z)?;
        Ok(Trip { a, b, c })
    }

    #[inline]
    pub fn as_tuple(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    /// The members as an unordered (sorted) set.
    pub fn sorted(&self) -> [u32; 3] {
        let mut s = [self.a, self.b, self.c];
        s.sort_unstable();
        s
    }

    pub fn contains(&self, v: u32) -> bool {
        self.a == v || self.b == v || self.c == v
    }
}

impl std::fmt::Display for Trip {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Signed product of two basis units, by the Rule 0/1/2 recursion. This is
/// the normative sign oracle for the whole crate.
pub fn basis_product(ctx: &AlgebraContext, a: u32, b: u32) -> Result<SignedBasis> {
    ctx.check_index(a)?;
    ctx.check_index(b)?;
    if a == 0 {
        return Ok(SignedBasis { index: b, sign: Sign::Plus });
    }
    if b == 0 {
        return Ok(SignedBasis { index: a, sign: Sign::Plus });
    }
    if a == b {
        // Imaginary units square to the negative real unit.
        return Ok(SignedBasis { index: 0, sign: Sign::Minus });
    }
    let c = a ^ b;
    let cycle = rotate_to(rotate_min(cpo_cycle(a, b, c)), a);
    let sign = if cycle.1 == b { Sign::Plus } else { Sign::Minus };
    Ok(SignedBasis { index: c, sign })
}

/// Number of trips on the nonzero indices below `2^n`: (2^n - 1)(2^n - 2)/6.
pub fn trip_count(n: u32) -> u64 {
    let d = 1u64 << n;
    (d - 1) * (d - 2) / 6
}

/// All trips of the 2^N-ions, canonical form, ordered by (a, b).
pub fn enumerate_trips(ctx: &AlgebraContext) -> Vec<Trip> {
    let dim = ctx.dim();
    let mut out = Vec::with_capacity(trip_count(ctx.n()) as usize);
    for a in 1..dim {
        for b in (a + 1)..dim {
            let c = a ^ b;
            if c > b {
                let (x, y, z) = rotate_to(rotate_min(cpo_cycle(a, b, c)), a);
                out.push(Trip { a: x, b: y, c: z });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: u32) -> AlgebraContext {
        AlgebraContext::new(n).unwrap()
    }

    #[test]
    fn rule_0_and_identity_cases() {
        let c = ctx(3);
        assert_eq!(basis_product(&c, 1, 2).unwrap(), SignedBasis { index: 3, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 5, 0).unwrap(), SignedBasis { index: 5, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 0, 0).unwrap(), SignedBasis { index: 0, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 4, 4).unwrap(), SignedBasis { index: 0, sign: Sign::Minus });
    }

    #[test]
    fn rule_1_and_rule_2_octonion_products() {
        let c = ctx(3);
        // Rule 1 trips (1,4,5), (2,4,6), (3,4,7).
        assert_eq!(basis_product(&c, 1, 4).unwrap(), SignedBasis { index: 5, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 2, 4).unwrap(), SignedBasis { index: 6, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 3, 4).unwrap(), SignedBasis { index: 7, sign: Sign::Plus });
        // Rule 2 trips (1,7,6), (2,5,7), (3,6,5).
        assert_eq!(basis_product(&c, 1, 7).unwrap(), SignedBasis { index: 6, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 2, 5).unwrap(), SignedBasis { index: 7, sign: Sign::Plus });
        assert_eq!(basis_product(&c, 3, 6).unwrap(), SignedBasis { index: 5, sign: Sign::Plus });
    }

    #[test]
    fn cpo_examples() {
        assert_eq!(trip_cpo(1, 2, 3).unwrap(), (1, 2, 3));
        assert_eq!(trip_cpo(3, 6, 5).unwrap(), (3, 6, 5));
        assert_eq!(trip_cpo(6, 5, 3).unwrap(), (3, 6, 5));
        assert!(is_cpo(1, 2, 3).unwrap());
        assert!(is_cpo(2, 3, 1).unwrap());
        assert!(!is_cpo(2, 1, 3).unwrap());
        assert!(trip_cpo(1, 2, 4).is_err());
        assert!(trip_cpo(0, 1, 1).is_err());
    }

    #[test]
    fn trip_counts_small() {
        assert_eq!(enumerate_trips(&ctx(2)).len() as u64, trip_count(2));
        assert_eq!(enumerate_trips(&ctx(3)).len(), 7);
        assert_eq!(enumerate_trips(&ctx(4)).len(), 35);
        assert_eq!(enumerate_trips(&ctx(5)).len(), 155);
    }

    #[test]
    fn every_trip_satisfies_its_cycle() {
        for n in 2..=6 {
            let c = ctx(n);
            for t in enumerate_trips(&c) {
                let (a, b, cc) = t.as_tuple();
                assert_eq!(basis_product(&c, a, b).unwrap(), SignedBasis { index: cc, sign: Sign::Plus });
                assert_eq!(basis_product(&c, b, cc).unwrap(), SignedBasis { index: a, sign: Sign::Plus });
                assert_eq!(basis_product(&c, cc, a).unwrap(), SignedBasis { index: b, sign: Sign::Plus });
            }
        }
    }

    #[test]
    fn out_of_range_rejected() {
        let c = ctx(3);
        assert!(basis_product(&c, 8, 1).is_err());
        assert!(basis_product(&c, 1, 9).is_err());
    }

    proptest! {
        #[test]
        fn index_law_and_anticommutativity(n in 2u32..=8, seed_a in 0u32..256, seed_b in 0u32..256) {
            let c = ctx(n);
            let a = seed_a % c.dim();
            let b = seed_b % c.dim();
            let ab = basis_product(&c, a, b).unwrap();
            prop_assert_eq!(ab.index, a ^ b);
            let ba = basis_product(&c, b, a).unwrap();
            if a != b && a != 0 && b != 0 {
                prop_assert_eq!(ab.sign, ba.sign.flip());
            } else {
                prop_assert_eq!(ab.sign, ba.sign);
            }
        }
    }
}
