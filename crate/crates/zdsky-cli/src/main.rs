//! zdsky: command-line surface for the zero-divisor toolkit.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail};
use clap::{Args, Parser, Subcommand, ValueEnum};

use zdsky_core::algebra::{basis_product, enumerate_trips, trip_count, AlgebraContext};
use zdsky_core::boxkite::{enumerate_candidates, hidefill_probe, viziers_check, Kind};
use zdsky_core::emanation::{viable_boxkite_count, EmanationTable};
use zdsky_core::export::{to_csv, to_json};
use zdsky_core::recipe::{et_recipe, recipe_applicable, RecipeSpec};
use zdsky_core::render::{
    balloon_ride, flipbook, render_ppm, render_svg, write_atomic, FrameSequence, ImageFormat,
    Palette,
};
use zdsky_core::verify::{
    four_corners_check, french_windows_check, number_hub_check, recipe_vs_bruteforce,
    skybox_embed_check, CheckReport,
};
use zdsky_core::zd::StrutContext;

/// Inclusive range argument: `7` or `9..15`.
#[derive(Clone, Copy, Debug)]
struct Range {
    lo: u32,
    hi: u32,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
        if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (parse(a)?, parse(b)?);
            if lo > hi {
                return Err(format!("empty range {s:?}"));
            }
            Ok(Range { lo, hi })
        } else {
            let v = parse(s)?;
            Ok(Range { lo: v, hi: v })
        }
    }
}

impl Range {
    fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    fn single(&self) -> Option<u32> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Recipe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Ppm,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FrameFormat {
    Ppm,
    Svg,
}

impl From<FrameFormat> for ImageFormat {
    fn from(f: FrameFormat) -> Self {
        match f {
            FrameFormat::Ppm => ImageFormat::Ppm,
            FrameFormat::Svg => ImageFormat::Svg,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Viziers,
    Recursion,
    Fourcorners,
    Frenchwindows,
    Numberhub,
    Hidefill,
    Equivalence,
    All,
}

#[derive(Parser)]
#[command(
    name = "zdsky",
    version,
    about = "Cayley-Dickson zero-divisor toolkit: box-kites, emanation tables, meta-fractal renders"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the signed product of two basis units.
    Mult {
        /// Dimension exponent (2^N-ions).
        #[arg(long)]
        n: u32,
        /// First basis index.
        a: u32,
        /// Second basis index.
        b: u32,
    },
    /// Count (and optionally list) the associative triples of the 2^N-ions.
    Trips {
        #[arg(long)]
        n: u32,
        /// Print every trip in CPO.
        #[arg(long)]
        list: bool,
    },
    /// Enumerate box-kite candidates with classification.
    Boxkites {
        #[arg(long)]
        n: u32,
        /// Strut constant or inclusive range `a..b`.
        #[arg(long)]
        s: Range,
    },
    /// Build an emanation table and write it as CSV, JSON, PPM, or SVG.
    Et(EtArgs),
    /// Band and box-kite count report over a strut-constant range.
    Counts {
        #[arg(long)]
        n: u32,
        /// Strut constant range; defaults to every valid S.
        #[arg(long)]
        s: Option<Range>,
    },
    /// Run a verification suite; exit code 1 on any failure.
    Verify(VerifyArgs),
    /// Render a fixed-N, S-varying frame sequence.
    Flipbook {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: Range,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FrameFormat::Ppm)]
        format: FrameFormat,
        #[arg(long, default_value_t = 8)]
        cell_px: u32,
        /// Paint near-solid label lines in the overlay color.
        #[arg(long)]
        overlay: bool,
    },
    /// Render a fixed-S, N-varying frame sequence on a common scale.
    Balloon {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: Range,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FrameFormat::Ppm)]
        format: FrameFormat,
        #[arg(long, default_value_t = 8)]
        cell_px: u32,
        #[arg(long)]
        overlay: bool,
    },
}

#[derive(Args)]
struct EtArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    s: u32,
    #[arg(long, value_enum, default_value_t = Method::Brute)]
    method: Method,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    cell_px: u32,
    #[arg(long)]
    overlay: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Level or level range. Nesting suites read `a..b` as transitions
    /// a->a+1 ... (b-1)->b; a single value means that one transition.
    #[arg(long)]
    n: Range,
    /// Strut constant range; per-suite default when omitted.
    #[arg(long)]
    s: Option<Range>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// `json` for a machine-readable report.
    #[arg(long, default_value = "text")]
    format: String,
}

fn max_n() -> u32 {
    std::env::var("ZDSKY_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8)
}

fn guard_n(n: u32) -> anyhow::Result<()> {
    let cap = max_n();
    if n > cap {
        bail!("N={n} exceeds ZDSKY_MAX_N={cap}; raise the variable to allow larger tables");
    }
    Ok(())
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            write_atomic(path, bytes)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn cmd_et(args: &EtArgs) -> anyhow::Result<()> {
    guard_n(args.n)?;
    let strut = StrutContext::new(args.n, args.s)?;
    let et = match args.method {
        Method::Brute => EmanationTable::brute_force(&strut)?,
        Method::Recipe => {
            let spec = RecipeSpec::for_recipe(args.s)?;
            et_recipe(&spec, &strut)?
        }
    };
    let palette = Palette { cell_px: args.cell_px, ..Palette::default() };
    for w in palette.warnings() {
        eprintln!("warning: {w}");
    }
    match args.format {
        OutputFormat::Csv => emit(args.out.as_ref(), to_csv(&et).as_bytes()),
        OutputFormat::Json => {
            let mut text = to_json(&et)?;
            text.push('\n');
            emit(args.out.as_ref(), text.as_bytes())
        }
        OutputFormat::Ppm => emit(args.out.as_ref(), &render_ppm(&et, &palette, args.overlay)),
        OutputFormat::Svg => {
            emit(args.out.as_ref(), render_svg(&et, &palette, args.overlay).as_bytes())
        }
    }
}

fn cmd_counts(n: u32, s: Option<Range>) -> anyhow::Result<()> {
    guard_n(n)?;
    let g = 1u32 << (n - 1);
    let range = s.unwrap_or(Range { lo: 1, hi: g - 1 });
    for s in range.iter() {
        match StrutContext::new(n, s) {
            Ok(strut) => {
                let (count, band) = viable_boxkite_count(&strut)?;
                println!(
                    "N={n} S={s} band={band} boxkites={count} cells={} hidden={}",
                    24 * count,
                    zdsky_core::emanation::max_boxkite_count(n) - count
                );
            }
            Err(e) => eprintln!("skipping S={s}: {e}"),
        }
    }
    Ok(())
}

fn cmd_boxkites(n: u32, s: Range) -> anyhow::Result<()> {
    guard_n(n)?;
    for s in s.iter() {
        let strut = match StrutContext::new(n, s) {
            Ok(st) => st,
            Err(e) => {
                eprintln!("skipping S={s}: {e}");
                continue;
            }
        };
        let kites = enumerate_candidates(&strut)?;
        let viable = kites.iter().filter(|k| k.kind().is_viable()).count();
        println!(
            "N={n} S={s} candidates={} viable={viable} hidden={}",
            kites.len(),
            kites.len() - viable
        );
        for kite in &kites {
            let [a, b, c, _, _, _] = kite.letters();
            let v = kite.vertices();
            println!(
                "  {} zigzag=({a},{b},{c}) A=({},{}) B=({},{}) C=({},{}) D=({},{}) E=({},{}) F=({},{})",
                kite.kind(),
                v[0].low, v[0].high, v[1].low, v[1].high, v[2].low, v[2].high,
                v[3].low, v[3].high, v[4].low, v[4].high, v[5].low, v[5].high,
            );
        }
    }
    Ok(())
}

fn viziers_suite(n: u32, s_range: Range) -> anyhow::Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for s in s_range.iter() {
        let strut = match StrutContext::new(n, s) {
            Ok(st) => st,
            Err(_) => continue,
        };
        let mut mismatches = Vec::new();
        let mut checked = 0u64;
        for kite in enumerate_candidates(&strut)? {
            let rep = viziers_check(&kite)?;
            checked += 3;
            if !rep.unsigned_ok() {
                mismatches.push(format!("{:?}: unsigned VZ1/VZ3 failed", kite.zigzag()));
            }
            if !rep.vz2_ok() {
                mismatches.push(format!("{:?}: signed VZ2 failed", kite.zigzag()));
            }
            let expected = match kite.kind() {
                Kind::TypeI => Some(0),
                Kind::TypeII => Some(2),
                Kind::Hidden(k) => {
                    if k % 2 == 0 {
                        mismatches.push(format!("{:?}: hidden with even reversals", kite.zigzag()));
                    }
                    None
                }
            };
            if let Some(k) = expected {
                if rep.reversal_count() != k {
                    mismatches.push(format!(
                        "{:?}: {} reversals, expected {k}",
                        kite.zigzag(),
                        rep.reversal_count()
                    ));
                }
            }
        }
        reports.push(CheckReport {
            name: "viziers".into(),
            subject: format!("N={n} S={s}"),
            passed: mismatches.is_empty(),
            cells_checked: checked,
            mismatch_count: mismatches.len() as u64,
            mismatches,
        });
    }
    Ok(reports)
}

fn hidefill_suite(
    n: u32,
    s_range: Range,
    seed: u64,
    samples: usize,
) -> anyhow::Result<Vec<CheckReport>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut pool = Vec::new();
    for s in s_range.iter() {
        if s >= 8 {
            bail!("hidefill bases must satisfy S < 8 (got {s})");
        }
        let strut = StrutContext::new(n, s)?;
        for kite in enumerate_candidates(&strut)? {
            if !kite.kind().is_viable() {
                continue;
            }
            for (u, v) in kite.edges() {
                if u < 8 && v < 8 {
                    pool.push((s, u, v));
                }
            }
        }
    }
    pool.sort_unstable();
    pool.dedup();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    pool.shuffle(&mut rng);
    let take = samples.min(pool.len());
    let mut mismatches = Vec::new();
    for &(s, u, v) in pool.iter().take(take) {
        let strut = StrutContext::new(n, s)?;
        let statuses = hidefill_probe(&strut, u, v, &[8, 16])?;
        if statuses != vec![true, false, true] {
            mismatches.push(format!("S={s} ({u},{v}): {statuses:?}"));
        }
    }
    Ok(vec![CheckReport {
        name: "hidefill".into(),
        subject: format!(
            "N={n} S={}..{} seed={seed} samples={take}",
            s_range.lo, s_range.hi
        ),
        passed: mismatches.is_empty(),
        cells_checked: take as u64,
        mismatch_count: mismatches.len() as u64,
        mismatches,
    }])
}

fn equivalence_suite(n: u32, s_range: Range) -> anyhow::Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for s in s_range.iter() {
        if !recipe_applicable(s) {
            eprintln!("notice: S={s} outside recipe domain, skipped");
            continue;
        }
        match StrutContext::new(n, s) {
            Ok(strut) => reports.push(recipe_vs_bruteforce(&strut)?),
            Err(e) => eprintln!("notice: S={s}: {e}"),
        }
    }
    Ok(reports)
}

fn transitions(n: Range) -> Vec<u32> {
    if n.lo == n.hi {
        vec![n.lo]
    } else {
        (n.lo..n.hi).collect()
    }
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let default_s = |suite: Suite, n: u32| -> Range {
        let g = 1u32 << (n - 1);
        match suite {
            Suite::Hidefill => Range { lo: 1, hi: 7 },
            Suite::Recursion | Suite::Fourcorners | Suite::Frenchwindows => Range { lo: 9, hi: 15 },
            _ => Range { lo: 1, hi: g - 1 },
        }
    };

    let mut reports: Vec<CheckReport> = Vec::new();
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Viziers,
            Suite::Recursion,
            Suite::Fourcorners,
            Suite::Frenchwindows,
            Suite::Numberhub,
            Suite::Hidefill,
            Suite::Equivalence,
        ],
        s => vec![s],
    };

    for suite in suites {
        match suite {
            Suite::Viziers => {
                for n in args.n.iter() {
                    guard_n(n)?;
                    let s = args.s.unwrap_or_else(|| default_s(suite, n));
                    reports.extend(viziers_suite(n, s)?);
                }
            }
            Suite::Recursion | Suite::Fourcorners | Suite::Frenchwindows => {
                for n in transitions(args.n) {
                    guard_n(n + 1)?;
                    let s = args.s.unwrap_or_else(|| default_s(suite, n));
                    for sv in s.iter() {
                        if StrutContext::new(n, sv).is_err() {
                            continue;
                        }
                        let rep = match suite {
                            Suite::Recursion => skybox_embed_check(sv, n)?,
                            Suite::Fourcorners => four_corners_check(sv, n)?,
                            Suite::Frenchwindows => french_windows_check(sv, n)?,
                            _ => unreachable!(),
                        };
                        reports.push(rep);
                    }
                }
            }
            Suite::Numberhub => {
                for n in args.n.iter() {
                    guard_n(n)?;
                    reports.push(number_hub_check(n)?);
                }
            }
            Suite::Hidefill => {
                let n = args
                    .n
                    .single()
                    .ok_or_else(|| anyhow!("hidefill takes a single --n"))?;
                guard_n(n)?;
                let s = args.s.unwrap_or_else(|| default_s(suite, n));
                reports.extend(hidefill_suite(n, s, args.seed, args.samples)?);
            }
            Suite::Equivalence => {
                for n in args.n.iter() {
                    guard_n(n)?;
                    let s = args.s.unwrap_or_else(|| default_s(suite, n));
                    reports.extend(equivalence_suite(n, s)?);
                }
            }
            Suite::All => unreachable!(),
        }
    }

    let passed = reports.iter().all(|r| r.passed);
    if args.format == "json" {
        let doc = serde_json::json!({
            "passed": passed,
            "reports": reports,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for r in &reports {
            if r.passed {
                println!("PASS {} {} (checks={})", r.name, r.subject, r.cells_checked);
            } else {
                println!(
                    "FAIL {} {} ({} mismatches of {} checks)",
                    r.name, r.subject, r.mismatch_count, r.cells_checked
                );
                for m in &r.mismatches {
                    println!("     {m}");
                }
            }
        }
        println!(
            "{}: {} of {} checks passed",
            if passed { "OK" } else { "FAILED" },
            reports.iter().filter(|r| r.passed).count(),
            reports.len()
        );
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn describe_frames(seq: &FrameSequence) {
    for f in &seq.frames {
        println!("frame {} -> {}", f.param, f.path.display());
    }
    for (p, why) in &seq.skipped {
        eprintln!("notice: skipped {p}: {why}");
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Mult { n, a, b } => {
            let ctx = AlgebraContext::new(*n)?;
            println!("{}", basis_product(&ctx, *a, *b)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Trips { n, list } => {
            let ctx = AlgebraContext::new(*n)?;
            let trips = enumerate_trips(&ctx);
            if *list {
                for t in &trips {
                    println!("{t}");
                }
            }
            println!("N={n}: {} trips (expected {})", trips.len(), trip_count(*n));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Boxkites { n, s } => {
            cmd_boxkites(*n, *s)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Et(args) => {
            cmd_et(args)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Counts { n, s } => {
            cmd_counts(*n, *s)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Flipbook { n, s, out, format, cell_px, overlay } => {
            guard_n(*n)?;
            let palette = Palette { cell_px: *cell_px, ..Palette::default() };
            let seq = flipbook(*n, (s.lo, s.hi), out, &palette, (*format).into(), *overlay)?;
            describe_frames(&seq);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Balloon { s, n, out, format, cell_px, overlay } => {
            guard_n(n.hi)?;
            let palette = Palette { cell_px: *cell_px, ..Palette::default() };
            let seq = balloon_ride(*s, (n.lo, n.hi), out, &palette, (*format).into(), *overlay)?;
            describe_frames(&seq);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
