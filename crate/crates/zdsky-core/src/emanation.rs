//! Emanation tables: label ordering, brute-force construction from the DMZ
//! oracle, spectral bands, and box-kite counting.
//!
//! An emanation table for `(N, S)` is a square grid over the assessor
//! L-indices. Cell `(r, c)` holds `P = R ^ C` exactly when assessors `R` and
//! `C` make zero; the mark distinguishes positive edge-sign (rendered with a
//! leading dash) from negative. Both long diagonals are structurally blank:
//! the main diagonal pairs an assessor with itself, the other pairs
//! strut-opposites.

use rayon::prelude::*;

use crate::boxkite::enumerate_candidates;
use crate::error::{Error, Result};
use crate::recipe::RecipeSpec;
use crate::zd::{dmz_test, EdgeSign, StrutContext};

/// Mark on a filled cell. Brute-force tables carry edge signs; recipe tables
/// only know fill state, so every recipe mark is `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Positive,
    Negative,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Blank,
    Filled { p: u32, mark: Mark },
}

impl Cell {
    pub fn is_filled(&self) -> bool {
        matches!(self, Cell::Filled { .. })
    }

    pub fn p(&self) -> Option<u32> {
        match self {
            Cell::Filled { p, .. } => Some(*p),
            Cell::Blank => None,
        }
    }

    pub fn mark(&self) -> Option<Mark> {
        match self {
            Cell::Filled { mark, .. } => Some(*mark),
            Cell::Blank => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    Recipe,
}

/// Label line for a strut context: 1..G without S, placed by ascending scan
/// with each value's strut-opposite entered at the mirror position.
pub fn label_order(strut: &StrutContext) -> Vec<u32> {
    let g = strut.generator();
    let s = strut.strut();
    let len = (g - 2) as usize;
    let mut labels = vec![0u32; len];
    let mut placed = vec![false; g as usize];
    placed[0] = true;
    placed[s as usize] = true;
    let mut slot = 0usize;
    for v in 1..g {
        if placed[v as usize] {
            continue;
        }
        let partner = v ^ s;
        labels[slot] = v;
        labels[len - 1 - slot] = partner;
        placed[v as usize] = true;
        placed[partner as usize] = true;
        slot += 1;
    }
    labels
}

/// A constructed emanation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmanationTable {
    strut: StrutContext,
    labels: Vec<u32>,
    /// label value -> position, indexed by label.
    positions: Vec<Option<u32>>,
    cells: Vec<Cell>,
    method: Method,
}

impl EmanationTable {
    /// Brute-force construction: every off-diagonal cell is decided by the
    /// exact DMZ oracle. Rows are computed in parallel; the result does not
    /// depend on the thread count.
    pub fn brute_force(strut: &StrutContext) -> Result<Self> {
        let labels = label_order(strut);
        let edge = labels.len();
        let s = strut.strut();
        let rows: Result<Vec<Vec<Cell>>> = labels
            .par_iter()
            .map(|&r_label| {
                let ra = strut.assessor(r_label)?;
                let mut row = Vec::with_capacity(edge);
                for &c_label in &labels {
                    if c_label == r_label || (r_label ^ c_label) == s {
                        row.push(Cell::Blank);
                        continue;
                    }
                    let ca = strut.assessor(c_label)?;
                    let cell = match dmz_test(strut, &ra, &ca)? {
                        Some(w) => Cell::Filled {
                            p: r_label ^ c_label,
                            mark: match w.edge_sign {
                                EdgeSign::Positive => Mark::Positive,
                                EdgeSign::Negative => Mark::Negative,
                            },
                        },
                        None => Cell::Blank,
                    };
                    row.push(cell);
                }
                Ok(row)
            })
            .collect();
        let cells = rows?.into_iter().flatten().collect();
        Ok(Self::assemble(*strut, labels, cells, Method::BruteForce))
    }

    pub(crate) fn assemble(
        strut: StrutContext,
        labels: Vec<u32>,
        cells: Vec<Cell>,
        method: Method,
    ) -> Self {
        let mut positions = vec![None; strut.generator() as usize];
        for (i, &l) in labels.iter().enumerate() {
            positions[l as usize] = Some(i as u32);
        }
        EmanationTable { strut, labels, positions, cells, method }
    }

    #[inline]
    pub fn strut_context(&self) -> &StrutContext {
        &self.strut
    }

    #[inline]
    pub fn method(&self) -> Method {
        self.method
    }

    #[inline]
    pub fn edge(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, pos: usize) -> u32 {
        self.labels[pos]
    }

    pub fn position_of(&self, label: u32) -> Option<usize> {
        self.positions
            .get(label as usize)
            .copied()
            .flatten()
            .map(|p| p as usize)
    }

    #[inline]
    pub fn cell(&self, r: usize, c: usize) -> &Cell {
        &self.cells[r * self.labels.len() + c]
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &Cell)> + '_ {
        let edge = self.edge();
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, c)| ((i / edge, i % edge), c))
    }

    pub fn filled_count(&self) -> u64 {
        self.cells.iter().filter(|c| c.is_filled()).count() as u64
    }

    pub fn marked_count(&self) -> u64 {
        self.cells
            .iter()
            .filter(|c| c.mark() == Some(Mark::Positive))
            .count() as u64
    }

    pub fn unmarked_count(&self) -> u64 {
        self.cells
            .iter()
            .filter(|c| c.mark() == Some(Mark::Negative))
            .count() as u64
    }

    /// Structural sanity: labels, mirror pairing, blank diagonals, symmetry,
    /// `P = R ^ C` membership. Cheap enough to run on every constructed
    /// table in tests.
    pub fn validate(&self) -> Result<()> {
        let edge = self.edge();
        let s = self.strut.strut();
        if self.labels != label_order(&self.strut) {
            return Err(Error::Invariant("label line out of order".into()));
        }
        for i in 0..edge {
            if self.labels[i] ^ self.labels[edge - 1 - i] != s {
                return Err(Error::Invariant(format!("mirror label mismatch at {i}")));
            }
        }
        for r in 0..edge {
            for c in 0..edge {
                let cell = self.cell(r, c);
                let (rl, cl) = (self.labels[r], self.labels[c]);
                if (r == c || rl ^ cl == s) && cell.is_filled() {
                    return Err(Error::Invariant(format!("diagonal cell ({r},{c}) filled")));
                }
                if let Cell::Filled { p, .. } = cell {
                    if *p != rl ^ cl {
                        return Err(Error::Invariant(format!(
                            "cell ({r},{c}) holds {p}, expected {}",
                            rl ^ cl
                        )));
                    }
                    if self.position_of(*p).is_none() {
                        return Err(Error::Invariant(format!("cell value {p} is not a label")));
                    }
                }
                if self.cell(r, c) != self.cell(c, r) {
                    return Err(Error::Invariant(format!("asymmetry at ({r},{c})")));
                }
            }
        }
        Ok(())
    }
}

/// Spectral band of a strut constant at a given level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Band {
    /// S <= 8 or a power of two: every candidate is viable.
    Full,
    /// 8 < S < 16: the sand-mandala family, closed-form counts at every N.
    SandMandala,
    /// Singleton high bit equal to g = 2^(N-2).
    MaximalSingleton,
    /// Singleton high bit below g (zero-padded recursion); counted by brute
    /// force.
    Singleton,
    /// Two or more high bits: hide/fill involution; counted by brute force.
    HideFill,
}

impl Band {
    pub fn name(&self) -> &'static str {
        match self {
            Band::Full => "full",
            Band::SandMandala => "sand-mandala",
            Band::MaximalSingleton => "maximal-singleton",
            Band::Singleton => "singleton",
            Band::HideFill => "hide-fill",
        }
    }
}

impl std::fmt::Display for Band {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn band_of(strut: &StrutContext) -> Band {
    let s = strut.strut();
    if s <= 8 || s.is_power_of_two() {
        return Band::Full;
    }
    if s < 16 {
        return Band::SandMandala;
    }
    let spec = RecipeSpec::prepare(s);
    if spec.high_bit_count() == 1 {
        if spec.powers()[0] == strut.n() - 2 {
            Band::MaximalSingleton
        } else {
            Band::Singleton
        }
    } else {
        Band::HideFill
    }
}

/// Trip count at level n-2: the candidate ceiling for any 2^n-ion table.
pub fn max_boxkite_count(n: u32) -> u64 {
    crate::algebra::trip_count(n - 2)
}

/// Closed-form viable count for the 8 < S < 16 band:
/// (2^(N-4))(2^(N-4)-1) + (2^(N-3)-1)(2^(N-3)-2)/6.
pub fn sand_mandala_count(n: u32) -> u64 {
    let q = 1u64 << (n - 4);
    let t = 1u64 << (n - 3);
    q * (q - 1) + (t - 1) * (t - 2) / 6
}

/// Viable count for a maximal singleton high bit: 2^(N-3) - 1.
pub fn maximal_singleton_count(n: u32) -> u64 {
    (1u64 << (n - 3)) - 1
}

/// Filled cells for a maximal singleton high bit: 6 * (2^(N-1) - 4).
pub fn maximal_singleton_cell_count(n: u32) -> u64 {
    6 * ((1u64 << (n - 1)) - 4)
}

/// Muntin bookkeeping for one nesting level of the 8 < S < 16 family.
/// `omega` and `delta` are in cells; both are multiples of 24.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkyboxLevel {
    /// Nesting depth; 0 is the inner skybox (N = 5 for this family).
    pub b_nest: u32,
    /// Quadrant-sized boxes along a long diagonal: 2^b_nest.
    pub q: u32,
    /// Muntin number 2^(N-4) - 1.
    pub mu: u32,
    /// Cells on overlap-free segments of the near-solid lines: 24*mu*(mu+1).
    pub omega: u64,
    /// Cells contributed by the diagonal band structure:
    /// 24 * (2^(N-3)-1)(2^(N-3)-2)/6.
    pub delta: u64,
}

impl SkyboxLevel {
    /// The level housing the 2^n-ion table of an 8 < S < 16 strut constant.
    pub fn sand_mandala(n: u32) -> Result<Self> {
        if n < 5 {
            return Err(Error::DimensionRange(n));
        }
        let b_nest = n - 5;
        let mu = (1u32 << (n - 4)) - 1;
        let t = 1u64 << (n - 3);
        Ok(SkyboxLevel {
            b_nest,
            q: 1 << b_nest,
            mu,
            omega: 24 * (mu as u64) * (mu as u64 + 1),
            delta: 24 * ((t - 1) * (t - 2) / 6),
        })
    }

    pub fn boxkite_count(&self) -> u64 {
        (self.omega + self.delta) / 24
    }
}

/// Near-solid-line labels for a strut constant: multiples of the inner
/// skybox's generator and their supplements by the matching residue, S
/// itself excluded. For a sand-mandala constant this is the muntin set; it
/// also drives the render overlay.
pub fn nsl_labels(strut: &StrutContext) -> Vec<u32> {
    let s = strut.strut();
    let g = strut.generator();
    let spec = RecipeSpec::prepare(s);
    let mut set = std::collections::BTreeSet::new();
    for i in 1..=spec.high_bit_count() {
        for v in spec.pass_values(i as usize, g) {
            if v != s {
                set.insert(v);
            }
        }
    }
    set.into_iter().collect()
}

/// Viable box-kite count plus the band that produced it. Closed forms where
/// the band has one; otherwise candidates are enumerated and classified.
pub fn viable_boxkite_count(strut: &StrutContext) -> Result<(u64, Band)> {
    let band = band_of(strut);
    let n = strut.n();
    let count = match band {
        Band::Full => max_boxkite_count(n),
        Band::SandMandala => sand_mandala_count(n),
        Band::MaximalSingleton => maximal_singleton_count(n),
        Band::Singleton | Band::HideFill => enumerate_candidates(strut)?
            .iter()
            .filter(|k| k.kind().is_viable())
            .count() as u64,
    };
    Ok((count, band))
}
