use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use dplane_core::catalog::{self, make_annulus, make_tee, named_image};
use dplane_core::{
    build_axis_retraction, build_edge_union_retraction, build_slanted_retraction, build_wedge_retraction,
    decompose_disk, is_convex, search_afpp_violation, search_fixed_point_free, verify_restriction,
    verify_retraction_with, AdjacencyKind, AfppCertificate, ConvexityReport, DigitalImage, FiniteRetraction,
    FppCertificate, PointMap, Retraction, RetractionError, SearchError, SearchStats, SelfMap, Slope,
    VerificationReport, VerifyOptions, Window, DEFAULT_BUDGET,
};
use thiserror::Error;

use crate::format::{emit_image, emit_tsv, parse_image, parse_tsv, Format, FormatError};
use crate::render;

pub const EXIT_VERDICT: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "dplane", version, about = "Digital convexity, c2-retractions and approximate fixed points in Z²")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an image as a single point, a segment, a convex disk, or not convex.
    Convex { file: PathBuf },
    /// Print the bounding curve of a disk and the interior angle at each vertex.
    Curve { file: PathBuf },
    /// Build or verify a retraction of the plane onto an image.
    Retract {
        #[command(subcommand)]
        action: RetractAction,
    },
    /// Decide the approximate fixed point property.
    Afpp {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide the fixed point property.
    Fpp {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit a named example image.
    Catalog {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// List the available names.
        #[arg(long)]
        list: bool,
    },
    /// Draw an image, with retraction arrows when a scheme is given.
    Render {
        /// Image to draw; not needed for the tee and annulus schemes.
        file: Option<PathBuf>,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum, default_value = "ascii")]
        format: RenderFormat,
    },
}

#[derive(Debug, Subcommand)]
pub enum RetractAction {
    /// Print the retraction table over a window as TSV.
    Build {
        scheme: SchemeArg,
        files: Vec<PathBuf>,
        #[command(flatten)]
        map: MapOptions,
    },
    /// Check identity on the target, containment and continuity over a window.
    Verify {
        scheme: SchemeArg,
        files: Vec<PathBuf>,
        #[command(flatten)]
        map: MapOptions,
        /// Also require points outside the interior to land on the bounding curve.
        #[arg(long)]
        boundary: bool,
        /// Table to verify, for the `table` scheme.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Axis,
    Slanted,
    EdgeUnion,
    Wedge,
    /// The catalog tee map; takes no files.
    Tee,
    /// The catalog annulus retraction onto its inner ring; takes no files.
    Annulus,
    /// A TSV table given with --table, onto the target file.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SlopeArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Clone, clap::Args)]
pub struct MapOptions {
    /// Sandwich-line slope for the slanted scheme.
    #[arg(long, value_enum, default_value = "minus")]
    slope: SlopeArg,
    /// xmin,xmax,ymin,ymax; defaults to the target's bounding box padded by 2.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<Window>,
}

#[derive(Debug, Clone, clap::Args)]
pub struct MapArgs {
    /// Retraction to draw as arrows.
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Second disk, for edge-union and wedge.
    #[arg(long)]
    second: Option<PathBuf>,
    #[command(flatten)]
    options: MapOptions,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|w| w.trim().parse::<i64>().map_err(|_| format!("{w:?} is not an integer")))
        .collect::<Result<_, _>>()?;
    let [x_min, x_max, y_min, y_max] = parts[..] else {
        return Err("expected xmin,xmax,ymin,ymax".into());
    };
    Window::new(x_min, x_max, y_min, y_max).ok_or_else(|| "window ranges must be nonempty".into())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}:{source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Retraction(#[from] RetractionError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error("{0}")]
    Usage(String),
    #[error("budget exceeded after {0}")]
    Budget(SearchStats),
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { stats, .. } => CliError::Budget(stats),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let name = path.display().to_string();
    let io_err = |source| CliError::Io { path: name.clone(), source };
    if name == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

pub fn load_image(path: &Path) -> Result<DigitalImage, CliError> {
    let text = read_text(path)?;
    parse_image(&text, Format::detect(&text))
        .map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

/// A constructed map, either total on Z² or tabulated on a finite domain.
enum Map {
    Total(Retraction),
    Finite(FiniteRetraction),
}

impl Map {
    fn target(&self) -> &DigitalImage {
        match self {
            Map::Total(r) => r.target(),
            Map::Finite(f) => &f.target,
        }
    }

    fn as_point_map(&self) -> &dyn PointMap {
        match self {
            Map::Total(r) => r,
            Map::Finite(f) => f,
        }
    }

    fn default_window(&self) -> Window {
        match self {
            Map::Total(r) => Window::around(r.target(), 2),
            Map::Finite(f) => f.domain.bounding_box(),
        }
        .unwrap_or(Window { x_min: 0, x_max: 0, y_min: 0, y_max: 0 })
    }
}

fn expect_files(scheme: SchemeArg, files: &[PathBuf], n: usize) -> Result<(), CliError> {
    if files.len() == n {
        Ok(())
    } else {
        Err(CliError::Usage(format!("scheme {scheme:?} takes {n} image file(s), got {}", files.len())))
    }
}

fn build_map(scheme: SchemeArg, files: &[PathBuf], slope: SlopeArg, table: Option<&Path>) -> Result<Map, CliError> {
    let slope = match slope {
        SlopeArg::Plus => Slope::Plus,
        SlopeArg::Minus => Slope::Minus,
    };
    let arity = match scheme {
        SchemeArg::Tee | SchemeArg::Annulus => 0,
        SchemeArg::Axis | SchemeArg::Slanted | SchemeArg::Table => 1,
        SchemeArg::EdgeUnion | SchemeArg::Wedge => 2,
    };
    expect_files(scheme, files, arity)?;
    let images = files.iter().map(|f| load_image(f)).collect::<Result<Vec<_>, _>>()?;
    Ok(match scheme {
        SchemeArg::Axis => Map::Total(build_axis_retraction(&images[0])?),
        SchemeArg::Slanted => Map::Total(build_slanted_retraction(&images[0], slope)?),
        SchemeArg::EdgeUnion => Map::Total(build_edge_union_retraction(&images[0], &images[1])?),
        SchemeArg::Wedge => Map::Total(build_wedge_retraction(&images[0], &images[1])?),
        SchemeArg::Tee => Map::Total(make_tee().retraction),
        SchemeArg::Annulus => Map::Finite(make_annulus().retraction),
        SchemeArg::Table => {
            let path = table.ok_or_else(|| CliError::Usage("the table scheme needs --table <TSV>".into()))?;
            let table = parse_tsv(&read_text(path)?)
                .map_err(|source| CliError::Format { path: path.display().to_string(), source })?;
            let domain = DigitalImage::c2(table.keys().copied());
            Map::Finite(FiniteRetraction { domain, target: images[0].clone(), table })
        }
    })
}

/// Verification result, and whether only the restriction to a window that
/// does not cover the padded target was checked.
fn verify(map: &Map, window: Window, boundary: bool) -> Result<(VerificationReport, bool), CliError> {
    let options = VerifyOptions { boundary };
    Ok(match map {
        Map::Total(r) => match verify_retraction_with(r, &window, options) {
            Ok(report) => (report, false),
            Err(RetractionError::WindowTooSmall { .. }) => {
                (verify_restriction(r, &window.to_image(AdjacencyKind::C2), r.target(), options), true)
            }
            Err(e) => return Err(e.into()),
        },
        Map::Finite(f) => {
            let domain = DigitalImage::c2(f.domain.points().filter(|p| window.contains(*p)));
            (verify_restriction(f, &domain, &f.target, options), false)
        }
    })
}

fn write_witness(out: &mut dyn Write, verdict: &str, stats: SearchStats, map: Option<&SelfMap>) -> io::Result<()> {
    writeln!(out, "{verdict}")?;
    writeln!(out, "stats: {stats}")?;
    if let Some(f) = map {
        out.write_all(emit_tsv(f.iter()).as_bytes())?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    match &cli.command {
        Command::Convex { file } => {
            let x = load_image(file)?;
            let report = is_convex(&x);
            writeln!(out, "{}", report.label()).map_err(io)?;
            match &report {
                ConvexityReport::NotConvex(reason) => writeln!(out, "reason: {reason}"),
                ConvexityReport::ConvexDisk { hull, .. } => {
                    let vs: Vec<String> = hull.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "hull: {}", vs.join(" "))
                }
                ConvexityReport::Segment(s) => writeln!(out, "segment: {s}"),
                ConvexityReport::SinglePoint(p) => writeln!(out, "point: {p}"),
            }
            .map_err(io)?;
        }
        Command::Curve { file } => {
            let x = load_image(file)?;
            let disk = decompose_disk(&x).map_err(|e| CliError::Usage(format!("not a disk: {e}")))?;
            let curve: Vec<String> = disk.curve.points().iter().map(|p| p.to_string()).collect();
            writeln!(out, "curve: {}", curve.join(" ")).map_err(io)?;
            for (v, angle) in &disk.angles {
                writeln!(out, "vertex {v} {angle}").map_err(io)?;
            }
        }
        Command::Retract { action } => match action {
            RetractAction::Build { scheme, files, map } => {
                let built = build_map(*scheme, files, map.slope, None)?;
                let window = map.window.unwrap_or_else(|| built.default_window());
                let r = built.as_point_map();
                let rows = window.points().filter_map(|p| r.map_point(p).map(|q| (p, q)));
                out.write_all(emit_tsv(rows).as_bytes()).map_err(io)?;
            }
            RetractAction::Verify { scheme, files, map, boundary, table } => {
                let built = build_map(*scheme, files, map.slope, table.as_deref())?;
                let window = map.window.unwrap_or_else(|| built.default_window());
                let (report, restricted) = verify(&built, window, *boundary)?;
                let scope = if restricted { " (restriction to the window)" } else { "" };
                match report.violation {
                    None => writeln!(
                        out,
                        "pass{scope}: {} points checked onto {} target points",
                        report.checked_points,
                        built.target().len()
                    ),
                    Some(v) => writeln!(out, "fail{scope}: {v}"),
                }
                .map_err(io)?;
            }
        },
        Command::Afpp { file, budget } => {
            let x = load_image(file)?;
            match search_afpp_violation(&x, *budget)? {
                AfppCertificate::HasAfpp { stats } => write_witness(out, "HasAfpp", stats, None),
                AfppCertificate::Witness { map, stats } => write_witness(out, "Witness", stats, Some(&map)),
            }
            .map_err(io)?;
        }
        Command::Fpp { file, budget } => {
            let x = load_image(file)?;
            match search_fixed_point_free(&x, *budget)? {
                FppCertificate::HasFpp { stats } => write_witness(out, "HasFpp", stats, None),
                FppCertificate::Witness { map, stats } => write_witness(out, "Witness", stats, Some(&map)),
            }
            .map_err(io)?;
        }
        Command::Catalog { name, format, list } => {
            if *list {
                for n in catalog::NAMES {
                    writeln!(out, "{n}").map_err(io)?;
                }
            } else {
                let name = name.as_deref().expect("clap requires a name without --list");
                out.write_all(emit_image(&named_image(name)?, *format).as_bytes()).map_err(io)?;
            }
        }
        Command::Render { file, map, format } => {
            let needs_file = !matches!(map.scheme, Some(SchemeArg::Tee | SchemeArg::Annulus));
            let mut x = match file {
                Some(f) => load_image(f)?,
                None if needs_file => return Err(CliError::Usage("render needs an image file".into())),
                None => DigitalImage::empty(AdjacencyKind::C2),
            };
            let built = match map.scheme {
                None => None,
                Some(scheme) => {
                    let files: Vec<PathBuf> = match scheme {
                        SchemeArg::Tee | SchemeArg::Annulus => Vec::new(),
                        _ => file.iter().cloned().chain(map.second.clone()).collect(),
                    };
                    let built = build_map(scheme, &files, map.options.slope, None)?;
                    x = built.target().clone();
                    Some(built)
                }
            };
            let window = map
                .options
                .window
                .or_else(|| built.as_ref().map(Map::default_window))
                .or_else(|| x.bounding_box())
                .ok_or_else(|| CliError::Usage("nothing to render: empty image and no --window".into()))?;
            let arrows = built.as_ref().map_or_else(Vec::new, |m| render::arrows(&x, m.as_point_map(), &window));
            let text = match format {
                RenderFormat::Ascii => render::ascii(&x, &arrows, &window),
                RenderFormat::Svg => render::svg(&x, &arrows, &window),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

/// Run a parsed command; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match execute(cli, out) {
        Ok(()) => EXIT_VERDICT,
        Err(e @ CliError::Budget(_)) => {
            let _ = writeln!(err, "{e}");
            EXIT_BUDGET
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
