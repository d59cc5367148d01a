//! Sparse exact-integer multivectors, plus the raw doubling product used as
//! an independent cross-check on the Rule 0/1/2 sign oracle.

use std::collections::BTreeMap;

use crate::algebra::{basis_product, AlgebraContext, Sign};
use crate::error::Result;

/// A finite integer combination of basis units. Absent index == zero
/// coefficient; all arithmetic is exact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multivector {
    coeffs: BTreeMap<u32, i64>,
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector::default()
    }

    pub fn basis(index: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, 1);
        Multivector { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, i64)>>(terms: I) -> Self {
        let mut m = Multivector::zero();
        for (i, c) in terms {
            m.add_term(i, c);
        }
        m
    }

    pub fn add_term(&mut self, index: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn coeff(&self, index: u32) -> i64 {
        self.coeffs.get(&index).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, -c);
        }
        out
    }

    /// Bilinear product using the normative Rule 0/1/2 sign oracle.
    pub fn mul(&self, ctx: &AlgebraContext, other: &Multivector) -> Result<Multivector> {
        let mut out = Multivector::zero();
        for (i, ci) in self.terms() {
            for (j, cj) in other.terms() {
                let p = basis_product(ctx, i, j)?;
                out.add_term(p.index, ci * cj * p.sign.to_i64());
            }
        }
        Ok(out)
    }
}

/// Sign of `e_i · e_j` straight from the Cayley-Dickson doubling formula
/// `(a,b)(c,d) = (ac - d̄b, da + bc̄)`, evaluated termwise. Completely
/// independent of the trip-orientation recursion.
pub fn doubling_sign(n: u32, i: u32, j: u32) -> Sign {
    if n == 0 {
        debug_assert!(i == 0 && j == 0);
        return Sign::Plus;
    }
    let half = 1u32 << (n - 1);
    let conj = |x: u32| if x == 0 { Sign::Plus } else { Sign::Minus };
    match (i < half, j < half) {
        (true, true) => doubling_sign(n - 1, i, j),
        (true, false) => doubling_sign(n - 1, j ^ half, i),
        (false, true) => doubling_sign(n - 1, i ^ half, j).mul(conj(j)),
        (false, false) => doubling_sign(n - 1, j ^ half, i ^ half)
            .mul(conj(j ^ half))
            .flip(),
    }
}

/// Bilinear product via the doubling formula. Cross-check oracle only; the
/// crate's zero-divisor machinery runs on [`Multivector::mul`].
pub fn doubling_product(ctx: &AlgebraContext, x: &Multivector, y: &Multivector) -> Result<Multivector> {
    let mut out = Multivector::zero();
    for (i, ci) in x.terms() {
        ctx.check_index(i)?;
        for (j, cj) in y.terms() {
            ctx.check_index(j)?;
            let sign = doubling_sign(ctx.n(), i, j);
            out.add_term(i ^ j, ci * cj * sign.to_i64());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SignedBasis;

    fn ctx(n: u32) -> AlgebraContext {
        AlgebraContext::new(n).unwrap()
    }

    #[test]
    fn is_zero_basics() {
        assert!(Multivector::zero().is_zero());
        let x = Multivector::basis(1).sub(&Multivector::basis(1));
        assert!(x.is_zero());
        let y = Multivector::basis(1).add(&Multivector::basis(2));
        assert!(!y.is_zero());
    }

    #[test]
    fn doubling_reproduces_quaternion_and_identity() {
        let c = ctx(4);
        let p = doubling_product(&c, &Multivector::basis(1), &Multivector::basis(2)).unwrap();
        assert_eq!(p, Multivector::basis(3));
        let real = Multivector::basis(0);
        let y = Multivector::from_terms([(3, 2), (10, -5)]);
        assert_eq!(doubling_product(&c, &real, &y).unwrap(), y);
    }

    #[test]
    fn doubling_agrees_with_rules_oracle_up_to_n7() {
        for n in 2..=7 {
            let c = ctx(n);
            for a in 0..c.dim() {
                for b in 0..c.dim() {
                    let rules = basis_product(&c, a, b).unwrap();
                    let dbl = SignedBasis { index: a ^ b, sign: doubling_sign(n, a, b) };
                    assert_eq!(rules, dbl, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn sedenion_zero_divisor_dyad() {
        // Assessors (3,10) and (6,15) of the S=1 box-kite: the opposite-slope
        // pairings annihilate, the same-slope ones do not.
        let c = ctx(4);
        let dyad = |lo: u32, hi: u32, s: i64| Multivector::from_terms([(lo, 1), (hi, s)]);
        let mut zero_classes = Vec::new();
        for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let p = doubling_product(&c, &dyad(3, 10, s1), &dyad(6, 15, s2)).unwrap();
            zero_classes.push(((s1 * s2), p.is_zero()));
        }
        let same: Vec<bool> = zero_classes.iter().filter(|(r, _)| *r == 1).map(|(_, z)| *z).collect();
        let opp: Vec<bool> = zero_classes.iter().filter(|(r, _)| *r == -1).map(|(_, z)| *z).collect();
        assert_eq!(same, vec![false, false]);
        assert_eq!(opp, vec![true, true]);
    }
}
