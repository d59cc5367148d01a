//! Raster (binary PPM) and vector (SVG) renderings of emanation tables,
//! plus frame sequences: flip-books (S sweeps) and balloon rides (N sweeps).

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::emanation::{nsl_labels, Cell, EmanationTable, Mark};
use crate::error::{Error, Result};
use crate::zd::StrutContext;

pub type Rgb = [u8; 3];

/// Cell colors and pixel scale. All five roles are distinct by default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Palette {
    pub blank: Rgb,
    pub filled_unmarked: Rgb,
    pub filled_marked: Rgb,
    pub label_line: Rgb,
    pub diagonal: Rgb,
    pub cell_px: u32,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            blank: [255, 255, 255],
            filled_unmarked: [0, 0, 0],
            filled_marked: [255, 165, 0],
            label_line: [135, 206, 235],
            diagonal: [211, 211, 211],
            cell_px: 8,
        }
    }
}

impl Palette {
    /// Degenerate-configuration warnings: color roles that collide.
    pub fn warnings(&self) -> Vec<String> {
        let roles = [
            ("blank", self.blank),
            ("filled-unmarked", self.filled_unmarked),
            ("filled-marked", self.filled_marked),
            ("label-line", self.label_line),
            ("diagonal", self.diagonal),
        ];
        let mut out = Vec::new();
        for i in 0..roles.len() {
            for j in (i + 1)..roles.len() {
                if roles[i].1 == roles[j].1 {
                    out.push(format!(
                        "palette roles {} and {} share color #{:02x}{:02x}{:02x}",
                        roles[i].0, roles[j].0, roles[i].1[0], roles[i].1[1], roles[i].1[2]
                    ));
                }
            }
        }
        if self.cell_px == 0 {
            out.push("cell size is zero pixels".into());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    Ppm,
    Svg,
}

impl ImageFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ImageFormat::Ppm => "ppm",
            ImageFormat::Svg => "svg",
        }
    }
}

fn cell_color(et: &EmanationTable, r: usize, c: usize, palette: &Palette, nsl: Option<&[u32]>) -> Rgb {
    let s = et.strut_context().strut();
    let (rl, cl) = (et.label(r), et.label(c));
    match et.cell(r, c) {
        Cell::Blank => {
            if r == c || rl ^ cl == s {
                palette.diagonal
            } else {
                palette.blank
            }
        }
        Cell::Filled { mark, .. } => {
            if let Some(nsl) = nsl {
                if nsl.binary_search(&rl).is_ok() || nsl.binary_search(&cl).is_ok() {
                    return palette.label_line;
                }
            }
            match mark {
                Mark::Positive => palette.filled_marked,
                _ => palette.filled_unmarked,
            }
        }
    }
}

/// Binary P6 rendering, one `cell_px`-sized block per cell.
pub fn render_ppm(et: &EmanationTable, palette: &Palette, overlay: bool) -> Vec<u8> {
    render_ppm_centered(et, palette, et.edge(), overlay)
}

/// P6 rendering onto a square canvas of `canvas_cells` cells, the table
/// centered. Centering reproduces the nesting offsets, so fixed-S frame
/// stacks align their skyboxes.
pub fn render_ppm_centered(
    et: &EmanationTable,
    palette: &Palette,
    canvas_cells: usize,
    overlay: bool,
) -> Vec<u8> {
    let edge = et.edge();
    let canvas = canvas_cells.max(edge);
    let px = palette.cell_px as usize;
    let side = canvas * px;
    let offset = (canvas - edge) / 2;
    let nsl = overlay.then(|| nsl_labels(et.strut_context()));

    let mut data = vec![0u8; side * side * 3];
    for y in 0..side {
        for x in 0..side {
            let (cr, cc) = (y / px, x / px);
            let color = if (offset..offset + edge).contains(&cr)
                && (offset..offset + edge).contains(&cc)
            {
                cell_color(et, cr - offset, cc - offset, palette, nsl.as_deref())
            } else {
                palette.blank
            };
            let i = (y * side + x) * 3;
            data[i..i + 3].copy_from_slice(&color);
        }
    }
    let mut out = Vec::with_capacity(data.len() + 32);
    out.extend_from_slice(format!("P6\n{side} {side}\n255\n").as_bytes());
    out.extend_from_slice(&data);
    out
}

fn hex(c: Rgb) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// SVG rendering: a background rect plus one rect per non-blank cell.
pub fn render_svg(et: &EmanationTable, palette: &Palette, overlay: bool) -> String {
    render_svg_centered(et, palette, et.edge(), overlay)
}

pub fn render_svg_centered(
    et: &EmanationTable,
    palette: &Palette,
    canvas_cells: usize,
    overlay: bool,
) -> String {
    let edge = et.edge();
    let canvas = canvas_cells.max(edge);
    let px = palette.cell_px as usize;
    let side = canvas * px;
    let offset = (canvas - edge) / 2;
    let nsl = overlay.then(|| nsl_labels(et.strut_context()));

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{side}\" height=\"{side}\" \
         viewBox=\"0 0 {side} {side}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{side}\" height=\"{side}\" fill=\"{}\"/>\n",
        hex(palette.blank)
    ));
    for r in 0..edge {
        for c in 0..edge {
            let color = cell_color(et, r, c, palette, nsl.as_deref());
            if color == palette.blank {
                continue;
            }
            let x = (offset + c) * px;
            let y = (offset + r) * px;
            out.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{px}\" height=\"{px}\" fill=\"{}\"/>\n",
                hex(color)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    /// Fixed N, S varying: a flip-book.
    StrutSweep,
    /// Fixed S, N varying: a balloon ride.
    DimensionSweep,
}

#[derive(Clone, Debug)]
pub struct Frame {
    pub param: u32,
    pub path: PathBuf,
}

/// An ordered sequence of rendered frames; parameters are strictly
/// monotone. Invalid parameter values are skipped with a notice.
#[derive(Clone, Debug)]
pub struct FrameSequence {
    pub axis: SweepAxis,
    pub frames: Vec<Frame>,
    pub skipped: Vec<(u32, String)>,
}

fn render_bytes(
    et: &EmanationTable,
    palette: &Palette,
    canvas_cells: usize,
    format: ImageFormat,
    overlay: bool,
) -> Vec<u8> {
    match format {
        ImageFormat::Ppm => render_ppm_centered(et, palette, canvas_cells, overlay),
        ImageFormat::Svg => render_svg_centered(et, palette, canvas_cells, overlay).into_bytes(),
    }
}

/// One frame per strut constant in `s_range` (inclusive), at fixed N.
pub fn flipbook(
    n: u32,
    s_range: (u32, u32),
    dir: &Path,
    palette: &Palette,
    format: ImageFormat,
    overlay: bool,
) -> Result<FrameSequence> {
    let mut seq = FrameSequence { axis: SweepAxis::StrutSweep, frames: Vec::new(), skipped: Vec::new() };
    for s in s_range.0..=s_range.1 {
        let strut = match StrutContext::new(n, s) {
            Ok(st) => st,
            Err(e) => {
                seq.skipped.push((s, e.to_string()));
                continue;
            }
        };
        let et = EmanationTable::brute_force(&strut)?;
        let path = dir.join(format!("et_n{n}_s{s:04}.{}", format.extension()));
        write_atomic(&path, &render_bytes(&et, palette, et.edge(), format, overlay))?;
        seq.frames.push(Frame { param: s, path });
    }
    Ok(seq)
}

/// One frame per level in `n_range` (inclusive), at fixed S, all frames on
/// the scale of the largest table with smaller ones centered.
pub fn balloon_ride(
    s: u32,
    n_range: (u32, u32),
    dir: &Path,
    palette: &Palette,
    format: ImageFormat,
    overlay: bool,
) -> Result<FrameSequence> {
    let mut seq =
        FrameSequence { axis: SweepAxis::DimensionSweep, frames: Vec::new(), skipped: Vec::new() };
    let mut valid = Vec::new();
    for n in n_range.0..=n_range.1 {
        match StrutContext::new(n, s) {
            Ok(st) => valid.push(st),
            Err(e) => seq.skipped.push((n, e.to_string())),
        }
    }
    let canvas = valid
        .iter()
        .map(|st| (st.generator() - 2) as usize)
        .max()
        .unwrap_or(0);
    for strut in valid {
        let n = strut.n();
        let et = EmanationTable::brute_force(&strut)?;
        let path = dir.join(format!("et_s{s}_n{n:02}.{}", format.extension()));
        write_atomic(&path, &render_bytes(&et, palette, canvas, format, overlay))?;
        seq.frames.push(Frame { param: n, path });
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u32, s: u32) -> EmanationTable {
        EmanationTable::brute_force(&StrutContext::new(n, s).unwrap()).unwrap()
    }

    #[test]
    fn ppm_header_and_block_count() {
        let et = table(4, 7);
        let palette = Palette { cell_px: 2, ..Palette::default() };
        let ppm = render_ppm(&et, &palette, false);
        assert!(ppm.starts_with(b"P6\n12 12\n255\n"));
        // Count filled-colored pixel blocks: 24 filled cells.
        let body = &ppm[b"P6\n12 12\n255\n".len()..];
        let mut filled_px = 0;
        for px in body.chunks(3) {
            if px == palette.filled_unmarked || px == palette.filled_marked {
                filled_px += 1;
            }
        }
        assert_eq!(filled_px, 24 * 4);
    }

    #[test]
    fn svg_rect_count_matches_nonblank_cells() {
        let et = table(4, 1);
        let svg = render_svg(&et, &Palette::default(), false);
        let rects = svg.matches("<rect").count();
        // Background + 24 filled + 12 diagonal.
        assert_eq!(rects, 1 + 24 + 12);
    }

    #[test]
    fn overlay_paints_nsl_lines() {
        let et = table(5, 9);
        let palette = Palette::default();
        let svg = render_svg(&et, &palette, true);
        assert!(svg.contains(&hex(palette.label_line)));
    }

    #[test]
    fn degenerate_palette_warns() {
        let mut p = Palette::default();
        assert!(p.warnings().is_empty());
        p.filled_marked = p.filled_unmarked;
        assert_eq!(p.warnings().len(), 1);
    }

    #[test]
    fn determinism_across_runs() {
        let a = render_ppm(&table(5, 11), &Palette::default(), true);
        let b = render_ppm(&table(5, 11), &Palette::default(), true);
        assert_eq!(a, b);
    }

    #[test]
    fn frame_sequences() {
        let dir = tempfile::tempdir().unwrap();
        let palette = Palette { cell_px: 1, ..Palette::default() };
        let fb = flipbook(5, (9, 15), dir.path(), &palette, ImageFormat::Ppm, false).unwrap();
        assert_eq!(fb.frames.len(), 7);
        assert!(fb.skipped.is_empty());
        let br = balloon_ride(15, (5, 6), dir.path(), &palette, ImageFormat::Ppm, false).unwrap();
        assert_eq!(br.frames.len(), 2);
        // Both balloon frames share the canvas of the larger table.
        let b0 = std::fs::read(&br.frames[0].path).unwrap();
        let b1 = std::fs::read(&br.frames[1].path).unwrap();
        assert_eq!(&b0[..12], &b1[..12]);
        // Out-of-range pairs are skipped with a notice, singletons render.
        let fb2 = flipbook(4, (6, 9), dir.path(), &palette, ImageFormat::Ppm, false).unwrap();
        assert_eq!(fb2.frames.len(), 2);
        assert_eq!(fb2.skipped.len(), 2);
        let single = balloon_ride(15, (6, 6), dir.path(), &palette, ImageFormat::Svg, false).unwrap();
        assert_eq!(single.frames.len(), 1);
    }
}
