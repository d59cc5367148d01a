//! Cellwise verifiers for the nesting and recursion laws of emanation
//! tables: skybox embedding, four corners, french windows, the number hub,
//! and recipe/oracle equivalence. Each verifier builds the tables it needs
//! by brute force and reports mismatches instead of asserting.

use serde::Serialize;

use crate::emanation::{band_of, Cell, EmanationTable, Mark};
use crate::error::Result;
use crate::recipe::{et_recipe, RecipeSpec};
use crate::zd::StrutContext;

const MISMATCH_SAMPLES: usize = 20;

/// Outcome of one verifier run.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub subject: String,
    pub passed: bool,
    pub cells_checked: u64,
    pub mismatch_count: u64,
    /// First few mismatches, formatted for humans.
    pub mismatches: Vec<String>,
}

struct Diff {
    checked: u64,
    count: u64,
    samples: Vec<String>,
}

impl Diff {
    fn new() -> Self {
        Diff { checked: 0, count: 0, samples: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.count += 1;
            if self.samples.len() < MISMATCH_SAMPLES {
                self.samples.push(msg());
            }
        }
    }

    fn into_report(self, name: &str, subject: String) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            subject,
            passed: self.count == 0,
            cells_checked: self.checked,
            mismatch_count: self.count,
            mismatches: self.samples,
        }
    }
}

fn fmt_cell(c: &Cell) -> String {
    match c {
        Cell::Blank => "blank".into(),
        Cell::Filled { p, mark } => match mark {
            Mark::Positive => format!("-{p}"),
            Mark::Negative => format!("{p}"),
            Mark::Unknown => format!("{p}?"),
        },
    }
}

/// Embedding geometry shared by the nesting verifiers.
struct Embed {
    o: usize,
    block: usize,
    g_prime: u32,
}

fn embed_geometry(n: u32) -> Embed {
    Embed {
        o: (1usize << (n - 2)) - 1,
        block: 1usize << (n - 1),
        g_prime: 1u32 << (n - 1),
    }
}

/// Skybox embedding: the (N+1)-level table contains the N-level table as its
/// central block, label lines included. The block interior must match the
/// smaller table cell for cell (fills, contents, marks); the block border
/// must consist of filled cells in the rows/columns labeled by the smaller
/// table's G and X, holding the smaller table's labels as contents.
pub fn skybox_embed_check(s: u32, n: u32) -> Result<CheckReport> {
    let small = EmanationTable::brute_force(&StrutContext::new(n, s)?)?;
    let large = EmanationTable::brute_force(&StrutContext::new(n + 1, s)?)?;
    let Embed { o, block, g_prime } = embed_geometry(n);
    let subject = format!("S={s} N={n}->{}", n + 1);
    let mut diff = Diff::new();

    // Label geometry: the sandwiching rows/columns sit at the block borders
    // and the interior labels are the smaller table's labels shifted by g'.
    diff.check(
        large.position_of(g_prime) == Some(o),
        || format!("label {g_prime} not at position {o}"),
    );
    diff.check(
        large.position_of(g_prime ^ s) == Some(o + block - 1),
        || format!("label {} not at position {}", g_prime ^ s, o + block - 1),
    );
    for k in 0..small.edge() {
        let expected = g_prime | small.label(k);
        let got = large.label(o + 1 + k);
        diff.check(got == expected, || {
            format!("interior label at {}: {got}, expected {expected}", o + 1 + k)
        });
    }
    if diff.count > 0 {
        return Ok(diff.into_report("skybox-embed", subject));
    }

    // Interior: positionally identical cells, marks included.
    for i in 0..small.edge() {
        for j in 0..small.edge() {
            let inner = small.cell(i, j);
            let outer = large.cell(o + 1 + i, o + 1 + j);
            diff.check(inner == outer, || {
                format!(
                    "interior ({i},{j}): contained {} vs container {}",
                    fmt_cell(inner),
                    fmt_cell(outer)
                )
            });
        }
    }

    // Borders: the label lines of the contained table appear as DMZ contents.
    let m1 = o;
    let m2 = o + block - 1;
    for k in 0..small.edge() {
        let col = o + 1 + k;
        let top_expected = small.label(k);
        let bottom_expected = small.label(small.edge() - 1 - k);
        for (row, expected, which) in [
            (m1, top_expected, "top"),
            (m2, bottom_expected, "bottom"),
        ] {
            for (r, c) in [(row, col), (col, row)] {
                let cell = large.cell(r, c);
                diff.check(
                    matches!(cell, Cell::Filled { p, .. } if *p == expected),
                    || {
                        format!(
                            "{which} border ({r},{c}): {} expected filled {expected}",
                            fmt_cell(cell)
                        )
                    },
                );
            }
        }
    }
    // Border corners are diagonal cells, hence blank.
    for (r, c) in [(m1, m1), (m1, m2), (m2, m1), (m2, m2)] {
        let cell = large.cell(r, c);
        diff.check(!cell.is_filled(), || format!("corner ({r},{c}) not blank"));
    }

    Ok(diff.into_report("skybox-embed", subject))
}

/// Four corners: the corner panes of the (N+1)-level window equal the
/// quadrants of the N-level table, contents and marks alike.
pub fn four_corners_check(s: u32, n: u32) -> Result<CheckReport> {
    let small = EmanationTable::brute_force(&StrutContext::new(n, s)?)?;
    let large = EmanationTable::brute_force(&StrutContext::new(n + 1, s)?)?;
    let o = (1usize << (n - 2)) - 1;
    let e_small = small.edge();
    let e_large = large.edge();
    let subject = format!("S={s} N={n}->{}", n + 1);
    let mut diff = Diff::new();

    for i in 0..o {
        let le = large.label(e_large - 1 - i);
        let se = small.label(e_small - 1 - i);
        diff.check(large.label(i) == small.label(i), || {
            format!("corner label {i}: {} vs {}", large.label(i), small.label(i))
        });
        diff.check(le == se, || format!("corner label -{i}: {le} vs {se}"));
    }

    let offsets = [
        (0usize, 0usize),
        (0, 1),
        (1, 0),
        (1, 1),
    ];
    for (qr, qc) in offsets {
        for i in 0..o {
            for j in 0..o {
                let (lr, lc) = (
                    if qr == 0 { i } else { e_large - o + i },
                    if qc == 0 { j } else { e_large - o + j },
                );
                let (sr, sc) = (
                    if qr == 0 { i } else { e_small - o + i },
                    if qc == 0 { j } else { e_small - o + j },
                );
                let big = large.cell(lr, lc);
                let sml = small.cell(sr, sc);
                diff.check(big == sml, || {
                    format!(
                        "corner ({qr},{qc}) cell ({i},{j}): {} vs {}",
                        fmt_cell(big),
                        fmt_cell(sml)
                    )
                });
            }
        }
    }

    Ok(diff.into_report("four-corners", subject))
}

/// French windows: inside the (N+1)-level table, each shutter cell mirrors
/// its window counterpart with contents augmented by g. Long-diagonal images
/// fill with g (marked) or g+S (unmarked); label-line extensions reverse
/// their marks; hide/fill-blanked cells stay blank.
pub fn french_windows_check(s: u32, n: u32) -> Result<CheckReport> {
    let large = EmanationTable::brute_force(&StrutContext::new(n + 1, s)?)?;
    let Embed { o, block, g_prime: g } = embed_geometry(n);
    let m2 = o + block - 1;
    let edge = large.edge();
    let subject = format!("S={s} N={n}->{}", n + 1);
    let mut diff = Diff::new();

    // (shutter line, window line) index pairs, valid for rows and columns.
    let mut line_pairs = Vec::with_capacity(2 * o);
    for d in 1..=o {
        line_pairs.push((o - d, (block / 2 - 1) + o + 1 - d)); // left/top
        line_pairs.push((m2 + d, (block / 2 - 2) + o + 1 + d)); // right/bottom
    }

    for &(ls, lw) in &line_pairs {
        let label_s = large.label(ls);
        let label_w = large.label(lw);
        diff.check(label_w == label_s ^ g, || {
            format!("line labels {label_s}/{label_w} not g apart")
        });
        if label_w != label_s ^ g {
            continue;
        }
        for q in 0..edge {
            // Vertical instance: columns (ls, lw), row q. The transposed
            // instance is covered by table symmetry but checked anyway.
            for transpose in [false, true] {
                let (window, shutter) = if transpose {
                    (large.cell(lw, q), large.cell(ls, q))
                } else {
                    (large.cell(q, lw), large.cell(q, ls))
                };
                let q_label = large.label(q);
                let on_ll_line = q_label == g || q_label == g ^ s;
                match window {
                    Cell::Filled { p, mark } => {
                        if *p == g {
                            diff.check(
                                q == ls && !shutter.is_filled(),
                                || format!("window {p} at q={q} should map to main-diagonal blank"),
                            );
                        } else if *p == (g ^ s) {
                            diff.check(
                                q_label ^ label_s == s && !shutter.is_filled(),
                                || format!("window {p} at q={q} should map to anti-diagonal blank"),
                            );
                        } else {
                            let expected_mark = if on_ll_line {
                                match mark {
                                    Mark::Positive => Mark::Negative,
                                    Mark::Negative => Mark::Positive,
                                    Mark::Unknown => Mark::Unknown,
                                }
                            } else {
                                *mark
                            };
                            let want = Cell::Filled { p: p ^ g, mark: expected_mark };
                            diff.check(*shutter == want, || {
                                format!(
                                    "shutter (q={q}, line {label_s}): {} expected {}",
                                    fmt_cell(shutter),
                                    fmt_cell(&want)
                                )
                            });
                        }
                    }
                    Cell::Blank => {
                        if q == lw {
                            // Main-diagonal image: fills with g, marked.
                            let want = Cell::Filled { p: g, mark: Mark::Positive };
                            diff.check(*shutter == want, || {
                                format!(
                                    "main-diagonal image (q={q}, line {label_s}): {} expected {}",
                                    fmt_cell(shutter),
                                    fmt_cell(&want)
                                )
                            });
                        } else if q_label ^ label_w == s {
                            // Anti-diagonal image: fills with g+S, unmarked.
                            let want = Cell::Filled { p: g ^ s, mark: Mark::Negative };
                            diff.check(*shutter == want, || {
                                format!(
                                    "anti-diagonal image (q={q}, line {label_s}): {} expected {}",
                                    fmt_cell(shutter),
                                    fmt_cell(&want)
                                )
                            });
                        } else {
                            // Rule-blanked window cells keep blank shutters.
                            diff.check(!shutter.is_filled(), || {
                                format!(
                                    "rule-blanked window (q={q}, line {label_s}) has filled shutter {}",
                                    fmt_cell(shutter)
                                )
                            });
                        }
                    }
                }
            }
        }
    }

    Ok(diff.into_report("french-windows", subject))
}

/// Number hub: for S = g, the upper-left quadrant is the unsigned index
/// product table of the 2^(N-2)-ions, diagonal blanks for the real unit.
pub fn number_hub_check(n: u32) -> Result<CheckReport> {
    let g = 1u32 << (n - 2);
    let et = EmanationTable::brute_force(&StrutContext::new(n, g)?)?;
    let quad = (g - 1) as usize;
    let subject = format!("N={n} S={g}");
    let mut diff = Diff::new();
    for r in 0..quad {
        diff.check(et.label(r) == r as u32 + 1, || {
            format!("quadrant label {r} is {}", et.label(r))
        });
    }
    for r in 0..quad {
        for c in 0..quad {
            let cell = et.cell(r, c);
            let (rl, cl) = (r as u32 + 1, c as u32 + 1);
            if r == c {
                diff.check(!cell.is_filled(), || format!("diagonal ({r},{c}) filled"));
            } else {
                diff.check(
                    matches!(cell, Cell::Filled { p, .. } if *p == rl ^ cl),
                    || {
                        format!(
                            "quadrant ({r},{c}): {} expected filled {}",
                            fmt_cell(cell),
                            rl ^ cl
                        )
                    },
                );
            }
        }
    }
    Ok(diff.into_report("number-hub", subject))
}

/// Recipe vs. brute force: identical fill patterns, cell for cell. Marks are
/// outside the recipe's reach and excluded.
pub fn recipe_vs_bruteforce(strut: &StrutContext) -> Result<CheckReport> {
    let spec = RecipeSpec::for_recipe(strut.strut())?;
    let recipe = et_recipe(&spec, strut)?;
    let brute = EmanationTable::brute_force(strut)?;
    let subject = format!("N={} S={} band={}", strut.n(), strut.strut(), band_of(strut));
    let mut diff = Diff::new();
    for ((r, c), cell) in brute.cells() {
        let rc = recipe.cell(r, c);
        diff.check(
            cell.is_filled() == rc.is_filled() && cell.p() == rc.p(),
            || {
                format!(
                    "({r},{c}) R={} C={}: brute {} vs recipe {}",
                    brute.label(r),
                    brute.label(c),
                    fmt_cell(cell),
                    fmt_cell(rc)
                )
            },
        );
    }
    Ok(diff.into_report("recipe-equivalence", subject))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embed_holds_for_pathion_mandalas() {
        for s in [9, 15] {
            let rep = skybox_embed_check(s, 5).unwrap();
            assert!(rep.passed, "S={s}: {:?}", rep.mismatches);
        }
    }

    #[test]
    fn four_corners_holds() {
        let rep = four_corners_check(11, 5).unwrap();
        assert!(rep.passed, "{:?}", rep.mismatches);
    }

    #[test]
    fn french_windows_holds() {
        let rep = french_windows_check(9, 5).unwrap();
        assert!(rep.passed, "{:?}", rep.mismatches);
    }

    #[test]
    fn number_hub_holds_for_pathions() {
        let rep = number_hub_check(5).unwrap();
        assert!(rep.passed, "{:?}", rep.mismatches);
    }

    #[test]
    fn recipe_equivalence_pathions() {
        for s in 9..16 {
            let strut = StrutContext::new(5, s).unwrap();
            let rep = recipe_vs_bruteforce(&strut).unwrap();
            assert!(rep.passed, "S={s}: {:?}", rep.mismatches);
        }
    }
}
