//! Strut contexts, assessors, and DMZ ("divisors making zero") testing.
//!
//! Fixing a strut constant `S` (0 < S < G) picks out the planar zero-divisor
//! candidates of the 2^N-ions: each low index `u < G` (except `S`) pairs with
//! the forced high index `U = u ^ G ^ S` to span an *assessor* plane. The
//! diagonals of two assessors either annihilate exactly (a DMZ) or not at
//! all; which slope pairing annihilates is the *edge sign*.

use crate::algebra::AlgebraContext;
use crate::error::{Error, Result};
use crate::multivector::Multivector;

/// An algebra context together with a chosen strut constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StrutContext {
    ctx: AlgebraContext,
    s: u32,
}

impl StrutContext {
    pub fn new(n: u32, s: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionRange(n));
        }
        let ctx = AlgebraContext::new(n)?;
        if s == 0 || s >= ctx.generator() {
            return Err(Error::StrutRange { s, n });
        }
        Ok(StrutContext { ctx, s })
    }

    #[inline]
    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    /// The strut constant S.
    #[inline]
    pub fn strut(&self) -> u32 {
        self.s
    }

    /// s = S mod g, the low residue.
    #[inline]
    pub fn strut_low(&self) -> u32 {
        self.s % self.ctx.half_generator()
    }

    /// X = G + S (= G ^ S, since S < G).
    #[inline]
    pub fn x(&self) -> u32 {
        self.ctx.generator() | self.s
    }

    #[inline]
    pub fn generator(&self) -> u32 {
        self.ctx.generator()
    }

    #[inline]
    pub fn half_generator(&self) -> u32 {
        self.ctx.half_generator()
    }

    /// Strut-opposite of an L-index.
    #[inline]
    pub fn opposite(&self, u: u32) -> u32 {
        u ^ self.s
    }

    /// The valid assessor L-indices, ascending: 1..G without S.
    pub fn label_values(&self) -> impl Iterator<Item = u32> + '_ {
        let s = self.s;
        (1..self.ctx.generator()).filter(move |&u| u != s)
    }

    /// The assessor on low index `u`.
    pub fn assessor(&self, u: u32) -> Result<Assessor> {
        if u == 0 || u >= self.ctx.generator() || u == self.s {
            return Err(Error::InvalidLIndex { u, s: self.s });
        }
        Ok(Assessor { low: u, high: u ^ self.ctx.generator() ^ self.s })
    }
}

/// A zero-divisor plane: low index u < G paired with U = u ^ G ^ S.
/// `{low, high, X}` is always an (unsigned) trip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Assessor {
    pub low: u32,
    pub high: u32,
}

impl Assessor {
    /// The diagonal `i_low + slope * i_high` with unit scale.
    pub fn diagonal(&self, slope: Slope) -> Multivector {
        Multivector::from_terms([(self.low, 1), (self.high, slope.to_i64())])
    }
}

/// Diagonal slope inside an assessor plane: `/` is `low + high`,
/// `\` is `low - high`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Rise,
    Fall,
}

impl Slope {
    #[inline]
    pub fn to_i64(self) -> i64 {
        match self {
            Slope::Rise => 1,
            Slope::Fall => -1,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Slope::Rise => '/',
            Slope::Fall => '\\',
        }
    }
}

/// Edge sign of a DMZ pair. Negative: opposite slopes annihilate (plain ET
/// cell). Positive: same slopes annihilate (cell marked with a leading dash).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeSign {
    Positive,
    Negative,
}

/// Witness that two assessors zero-divide each other: the edge sign plus the
/// two slope pairings that actually annihilate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DmzWitness {
    pub edge_sign: EdgeSign,
    pub slope_pairs: [(Slope, Slope); 2],
}

/// Tests whether two assessors make zero, by forming all four dyad products
/// `(i_p ± i_P)(i_q ± i_Q)` with exact integer arithmetic.
///
/// Returns `None` for a pair that never annihilates (same assessor,
/// strut-opposites, non-partners). The two annihilating pairings, when they
/// exist, always share a slope parity; both parities vanishing at once would
/// force a basis product to be zero, which cannot happen.
pub fn dmz_test(strut: &StrutContext, p: &Assessor, q: &Assessor) -> Result<Option<DmzWitness>> {
    if p == q {
        return Ok(None);
    }
    let ctx = strut.ctx();
    let combos = [
        (Slope::Rise, Slope::Rise),
        (Slope::Rise, Slope::Fall),
        (Slope::Fall, Slope::Rise),
        (Slope::Fall, Slope::Fall),
    ];
    let mut vanish = [false; 4];
    for (k, (s1, s2)) in combos.iter().enumerate() {
        let prod = p.diagonal(*s1).mul(ctx, &q.diagonal(*s2))?;
        vanish[k] = prod.is_zero();
    }
    let same = vanish[0] && vanish[3];
    let opposite = vanish[1] && vanish[2];
    if same && opposite {
        return Err(Error::Invariant(format!(
            "assessors ({},{}) and ({},{}) annihilate under both slope parities",
            p.low, p.high, q.low, q.high
        )));
    }
    // A lone vanisher inside a parity class is impossible too.
    if vanish[0] != vanish[3] || vanish[1] != vanish[2] {
        return Err(Error::Invariant(format!(
            "asymmetric annihilation pattern {:?} for ({},{}) x ({},{})",
            vanish, p.low, p.high, q.low, q.high
        )));
    }
    if same {
        Ok(Some(DmzWitness {
            edge_sign: EdgeSign::Positive,
            slope_pairs: [(Slope::Rise, Slope::Rise), (Slope::Fall, Slope::Fall)],
        }))
    } else if opposite {
        Ok(Some(DmzWitness {
            edge_sign: EdgeSign::Negative,
            slope_pairs: [(Slope::Rise, Slope::Fall), (Slope::Fall, Slope::Rise)],
        }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_high_indices() {
        let s41 = StrutContext::new(4, 1).unwrap();
        assert_eq!(s41.assessor(3).unwrap(), Assessor { low: 3, high: 10 });
        assert_eq!(s41.assessor(6).unwrap(), Assessor { low: 6, high: 15 });
        let s59 = StrutContext::new(5, 9).unwrap();
        assert_eq!(s59.assessor(2).unwrap(), Assessor { low: 2, high: 27 });
        assert!(s41.assessor(1).is_err());
        assert!(s41.assessor(8).is_err());
        assert!(s41.assessor(0).is_err());
    }

    #[test]
    fn strut_fields() {
        let s = StrutContext::new(5, 9).unwrap();
        assert_eq!(s.x(), 25);
        assert_eq!(s.strut_low(), 1);
        assert_eq!(s.generator(), 16);
        assert!(StrutContext::new(5, 0).is_err());
        assert!(StrutContext::new(5, 16).is_err());
    }

    #[test]
    fn assessor_high_forms_trip_with_x() {
        let s = StrutContext::new(5, 9).unwrap();
        for u in s.label_values() {
            let a = s.assessor(u).unwrap();
            assert_eq!(a.low ^ a.high, s.generator() ^ s.strut());
            assert!(a.high > s.generator());
        }
    }

    #[test]
    fn dmz_on_sail_edge_and_not_on_struts() {
        let s = StrutContext::new(4, 1).unwrap();
        let a = s.assessor(3).unwrap();
        let b = s.assessor(6).unwrap();
        let w = dmz_test(&s, &a, &b).unwrap();
        assert!(w.is_some());
        // A zigzag edge: negative edge-sign, opposite slopes annihilate.
        assert_eq!(w.unwrap().edge_sign, EdgeSign::Negative);

        assert!(dmz_test(&s, &a, &a).unwrap().is_none());
        let opp = s.assessor(s.opposite(3)).unwrap();
        assert!(dmz_test(&s, &a, &opp).unwrap().is_none());
    }
}
