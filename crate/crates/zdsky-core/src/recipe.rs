//! The bitstring recipe: an O(1)-per-cell generator for emanation-table fill
//! patterns, driven entirely by the strut constant's high-bit decomposition.
//!
//! Preparation: drop the low bits of S (three of them, or four when S is a
//! multiple of 8 — the 8-bit then acts as a low bit). The surviving "high
//! bits" are listed left to right as powers `P_1 > P_2 > ...`; each power
//! carries the residue `sigma_i = S mod 2^(P_i)`.
//!
//! Cooking: blank the two long diagonals, then run one painting pass per
//! high bit. Pass `i` considers cells whose row label, column label, or
//! content lies in `{ m * 2^(P_i) } ∪ { m * 2^(P_i) + sigma_i }`; unpainted
//! candidates are filled on odd passes and blanked on even ones, and a cell
//! once painted is never repainted. Finally the untouched remainder is
//! blanked if the number of high bits is odd, filled if even.

use crate::emanation::{label_order, Cell, EmanationTable, Mark, Method};
use crate::error::{Error, Result};
use crate::zd::StrutContext;

/// High-bit decomposition of a strut constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeSpec {
    s: u32,
    shift: u32,
    powers: Vec<u32>,
    residues: Vec<u32>,
}

impl RecipeSpec {
    /// Decomposes any positive integer. `high_bit_count` is zero for
    /// constants with no bits above the dropped range.
    pub fn prepare(s: u32) -> Self {
        assert!(s > 0, "strut constant must be positive");
        let shift = if s % 8 == 0 { 4 } else { 3 };
        let mut powers = Vec::new();
        for bit in (shift..32).rev() {
            if s & (1 << bit) != 0 {
                powers.push(bit);
            }
        }
        let residues = powers.iter().map(|&p| s & ((1 << p) - 1)).collect();
        RecipeSpec { s, shift, powers, residues }
    }

    /// Decomposition for a constant inside the recipe's domain: S > 8 and
    /// not a power of two.
    pub fn for_recipe(s: u32) -> Result<Self> {
        if !recipe_applicable(s) {
            return Err(Error::RecipeDomain(s));
        }
        Ok(Self::prepare(s))
    }

    pub fn strut(&self) -> u32 {
        self.s
    }

    /// Bits dropped from the right before counting: 4 when S is a multiple
    /// of 8, else 3.
    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// B, the number of high bits.
    pub fn high_bit_count(&self) -> u32 {
        self.powers.len() as u32
    }

    /// Powers P_i, strictly decreasing.
    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    /// Residues sigma_i = S mod 2^(P_i).
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// Level housing the inner skybox: top high bit is its half-generator.
    pub fn inner_skybox_n(&self) -> Option<u32> {
        self.powers.first().map(|&p| p + 2)
    }

    /// Values targeted by painting pass `i` (1-based), bounded by `limit`:
    /// positive multiples of 2^(P_i) plus, when the residue is nonzero, all
    /// multiples supplemented by it. A zero residue contributes nothing of
    /// its own (an XOR of zero only names long-diagonal cells).
    pub fn pass_values(&self, i: usize, limit: u32) -> Vec<u32> {
        let p = self.powers[i - 1];
        let sigma = self.residues[i - 1];
        let step = 1u32 << p;
        let mut values = std::collections::BTreeSet::new();
        let mut m = 0u32;
        loop {
            let base = m * step;
            if base >= limit && (sigma == 0 || base + sigma >= limit) {
                break;
            }
            if m > 0 && base < limit {
                values.insert(base);
            }
            if sigma > 0 && base + sigma < limit {
                values.insert(base + sigma);
            }
            m += 1;
        }
        values.into_iter().collect()
    }
}

pub fn recipe_applicable(s: u32) -> bool {
    s > 8 && !s.is_power_of_two()
}

/// Builds the emanation table for `strut` by the recipe alone: no products
/// are evaluated, marks come out `Unknown`.
pub fn et_recipe(spec: &RecipeSpec, strut: &StrutContext) -> Result<EmanationTable> {
    let s = strut.strut();
    if !recipe_applicable(s) {
        return Err(Error::RecipeDomain(s));
    }
    if spec.strut() != s {
        return Err(Error::Invariant(format!(
            "recipe spec is for S={}, strut context has S={s}",
            spec.strut()
        )));
    }
    let g = strut.generator();
    let labels = label_order(strut);
    let edge = labels.len();
    let mut painted: Vec<Option<Cell>> = vec![None; edge * edge];

    // Long diagonals first: R = C and R ^ C = S.
    for r in 0..edge {
        for c in 0..edge {
            if r == c || labels[r] ^ labels[c] == s {
                painted[r * edge + c] = Some(Cell::Blank);
            }
        }
    }

    // One pass per high bit; first writer wins.
    let b = spec.high_bit_count() as usize;
    for i in 1..=b {
        let values = spec.pass_values(i, g);
        let fill = i % 2 == 1;
        for r in 0..edge {
            for c in 0..edge {
                let idx = r * edge + c;
                if painted[idx].is_some() {
                    continue;
                }
                let (rl, cl) = (labels[r], labels[c]);
                let p = rl ^ cl;
                if values.binary_search(&rl).is_ok()
                    || values.binary_search(&cl).is_ok()
                    || values.binary_search(&p).is_ok()
                {
                    painted[idx] = Some(if fill {
                        Cell::Filled { p, mark: Mark::Unknown }
                    } else {
                        Cell::Blank
                    });
                }
            }
        }
    }

    // Remainder: blank when the high-bit count is odd, filled when even.
    let fill_rest = b % 2 == 0;
    let cells: Vec<Cell> = painted
        .into_iter()
        .enumerate()
        .map(|(idx, slot)| {
            slot.unwrap_or_else(|| {
                if fill_rest {
                    let (r, c) = (idx / edge, idx % edge);
                    Cell::Filled { p: labels[r] ^ labels[c], mark: Mark::Unknown }
                } else {
                    Cell::Blank
                }
            })
        })
        .collect();

    Ok(EmanationTable::assemble(*strut, labels, cells, Method::Recipe))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preparation_of_613() {
        // 613 = 1001100101b; not a multiple of 8, so three low bits drop and
        // the high bits sit at powers 9, 6, 5. Inner skybox: 2^11-ions.
        let spec = RecipeSpec::prepare(613);
        assert_eq!(spec.shift(), 3);
        assert_eq!(spec.high_bit_count(), 3);
        assert_eq!(spec.powers(), &[9, 6, 5]);
        assert_eq!(spec.inner_skybox_n(), Some(11));
        assert_eq!(spec.residues(), &[613 % 512, 613 % 64, 613 % 32]);
    }

    #[test]
    fn multiples_of_eight_drop_four_bits() {
        let spec = RecipeSpec::prepare(24);
        assert_eq!(spec.shift(), 4);
        assert_eq!(spec.high_bit_count(), 1);
        assert_eq!(spec.powers(), &[4]);
        assert_eq!(spec.residues(), &[8]);

        let spec = RecipeSpec::prepare(48);
        assert_eq!(spec.high_bit_count(), 2);
        assert_eq!(spec.powers(), &[5, 4]);
        assert_eq!(spec.residues(), &[16, 0]);
    }

    #[test]
    fn domain_check() {
        assert!(RecipeSpec::for_recipe(9).is_ok());
        assert!(RecipeSpec::for_recipe(8).is_err());
        assert!(RecipeSpec::for_recipe(16).is_err());
        assert!(RecipeSpec::for_recipe(5).is_err());
        assert!(recipe_applicable(613));
    }

    #[test]
    fn chingon_25_pass_values() {
        let spec = RecipeSpec::for_recipe(25).unwrap();
        assert_eq!(spec.powers(), &[4, 3]);
        // Pass 1 fills 9 and 16 (25 is S itself and never names a live cell);
        // pass 2 would touch 1, 8, 17, 24 plus already-painted values.
        assert_eq!(spec.pass_values(1, 32), vec![9, 16, 25]);
        assert_eq!(spec.pass_values(2, 32), vec![1, 8, 9, 16, 17, 24, 25]);
    }

    #[test]
    fn pathion_57_pass_values() {
        let spec = RecipeSpec::for_recipe(57).unwrap();
        assert_eq!(spec.powers(), &[5, 4, 3]);
        assert_eq!(spec.pass_values(1, 64), vec![25, 32, 57]);
        assert_eq!(spec.pass_values(2, 64), vec![9, 16, 25, 32, 41, 48, 57]);
        assert_eq!(
            spec.pass_values(3, 64),
            vec![1, 8, 9, 16, 17, 24, 25, 32, 33, 40, 41, 48, 49, 56, 57]
        );
    }

    #[test]
    fn recipe_rejects_wrong_strut() {
        let spec = RecipeSpec::for_recipe(25).unwrap();
        let strut = StrutContext::new(6, 26).unwrap();
        assert!(et_recipe(&spec, &strut).is_err());
    }

    #[test]
    fn recipe_table_matches_singleton_cell_count() {
        let strut = StrutContext::new(6, 17).unwrap();
        let spec = RecipeSpec::for_recipe(17).unwrap();
        let et = et_recipe(&spec, &strut).unwrap();
        assert_eq!(et.filled_count(), 168);
        assert_eq!(et.marked_count(), 0);
    }
}
