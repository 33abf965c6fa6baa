//! The `qgkz` command line. Every subcommand reads one JSON problem file and
//! writes JSON or SVG; exit code 2 means invalid input, 3 infeasible or
//! degenerate data.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{normal_fan, stabilizer_profiles, StabilizerReport};
use crate::instances;
use crate::io::{self, FanReport, GaleReport, PolytopeReport, Problem};
use crate::linalg::{Calibration, Vector};
use crate::polytope::HPolytope;
use crate::projective::{
    classify_dim2, path_to_projective, projective_certificate, simplex_parameter, Dim2Class, ProjectiveCertificate,
    ProjectivePath,
};
use crate::secondary::{
    chamber_of, cobordism_from_path, cross_wall, enumerate_chambers, is_admissible, is_admissible_by_polytope,
    AffinePath, Chamber, Combinatorics,
};
use crate::svg::{self, PlotKind, PlotSpec};

#[derive(Parser, Debug)]
#[command(name = "qgkz", version, about = "Secondary fans and wall-crossings of quantum toric calibrations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gale transform k of h and the cone it spans
    Gale(Common),
    /// Polytope P_b and its normal fan
    Fan(Common),
    /// Chamber containing a character chi (or the character of b)
    Chamber(Common),
    /// All chambers of the secondary fan
    Chambers(Common),
    /// Report for a path crossing at most one wall
    WallCross(Common),
    /// Every wall crossed along a path
    Cobordism(Common),
    /// Projective certificate, simplex parameter and a path toward it
    ProjectLink(Common),
    /// Stabilizer profiles of the cone on the input index set
    Stabilizers(Common),
    /// SVG drawing
    Plot(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Affine path "beta;alpha", comma-separated entries.
    #[arg(long)]
    pub path: Option<String>,
    /// Number of random oracle cross-checks.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// What to draw with `plot`; defaults to the input's plot spec.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Polytope,
    Fan,
    Secondary,
}

impl From<KindArg> for PlotKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Polytope => PlotKind::Polytope,
            KindArg::Fan => PlotKind::Fan,
            KindArg::Secondary => PlotKind::Secondary,
        }
    }
}

/// Agreement counts for a randomized cross-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub samples: usize,
    pub seed: u64,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleOutput {
    pub gale: GaleReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanOutput {
    pub polytope: PolytopeReport,
    pub fan: FanReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberOutput {
    pub chi: Vector,
    pub chamber: Chamber,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCheck {
    pub samples: usize,
    pub seed: u64,
    pub sampled_classes: usize,
    pub unmatched: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChambersOutput {
    pub secondary_fan: crate::secondary::SecondaryFan,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectLinkOutput {
    pub certificate: Option<ProjectiveCertificate>,
    pub simplex_parameter: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim2_class: Option<Dim2Class>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<ProjectivePath>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizersOutput {
    pub cone: crate::index_set::IndexSet,
    pub report: StabilizerReport,
}

/// Parses arguments, runs, writes the result and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qgkz: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_infeasible() { 3 } else { 2 }
}

pub fn execute(cli: &Cli) -> Result<()> {
    let common = common(&cli.command);
    let text = render(&cli.command)?;
    match &common.output {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Gale(c)
        | Command::Fan(c)
        | Command::Chamber(c)
        | Command::Chambers(c)
        | Command::WallCross(c)
        | Command::Cobordism(c)
        | Command::ProjectLink(c)
        | Command::Stabilizers(c)
        | Command::Plot(c) => c,
    }
}

pub fn read_problem(path: &PathBuf) -> Result<Problem> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    io::from_json(&text)
}

/// The output document of a subcommand, as text.
pub fn render(cmd: &Command) -> Result<String> {
    let args = common(cmd);
    let p = read_problem(&args.input)?;
    let c = &p.calibration;
    let svg_out = args.format == Format::Svg;
    let json = match cmd {
        Command::Gale(_) => {
            let oracle = (args.samples > 0).then(|| admissibility_oracle(c, args.samples, args.seed)).transpose()?;
            io::to_json(&GaleOutput { gale: GaleReport::new(c), oracle })
        }
        Command::Fan(_) => {
            let b = p.require_b()?;
            let f = normal_fan(c, b)?;
            if svg_out {
                return svg::fan_svg(&f, &plot_spec(&p, PlotKind::Fan));
            }
            let poly = HPolytope::new(c, b)?;
            io::to_json(&FanOutput { polytope: PolytopeReport::new(&poly), fan: FanReport::new(&f) })
        }
        Command::Chamber(_) => {
            let chi = character(&p)?;
            let chamber = chamber_of(&chi, c)?;
            let oracle = (args.samples > 0).then(|| chamber_oracle(c, &chamber, args.samples, args.seed)).transpose()?;
            io::to_json(&ChamberOutput { chi, chamber, oracle })
        }
        Command::Chambers(_) => {
            let sf = enumerate_chambers(c)?;
            if svg_out {
                let marked = character(&p).ok();
                return svg::secondary_svg(&sf, c, marked.as_deref(), &plot_spec(&p, PlotKind::Secondary));
            }
            let census = (args.samples > 0).then(|| census(c, &sf, args.samples, args.seed)).transpose()?;
            io::to_json(&ChambersOutput { secondary_fan: sf, census })
        }
        Command::WallCross(_) => io::to_json(&cross_wall(&path(&p, args)?, c)?),
        Command::Cobordism(_) => io::to_json(&cobordism_from_path(&path(&p, args)?, c)?),
        Command::ProjectLink(_) => {
            let certificate = projective_certificate(c);
            let simplex = certificate.as_ref().map(|cert| simplex_parameter(c, cert)).transpose()?;
            let dim2_class = if c.dim() == 2 && c.is_standard() { classify_dim2(c).ok() } else { None };
            let path = p.b.as_ref().map(|b| path_to_projective(c, b)).transpose()?;
            io::to_json(&ProjectLinkOutput { certificate, simplex_parameter: simplex, dim2_class, path })
        }
        Command::Stabilizers(_) => {
            let cone = p.cone.ok_or_else(|| Error::InvalidInput("input has no \"cone\"".into()))?;
            io::to_json(&StabilizersOutput { cone, report: stabilizer_profiles(c, cone)? })
        }
        Command::Plot(_) => {
            let kind = args.kind.map(PlotKind::from).or(p.plot.as_ref().map(|s| s.kind)).unwrap_or(PlotKind::Fan);
            let spec = plot_spec(&p, kind);
            return match kind {
                PlotKind::Polytope => svg::polytope_svg(c, p.require_b()?, &spec),
                PlotKind::Fan => svg::fan_svg(&normal_fan(c, p.require_b()?)?, &spec),
                PlotKind::Secondary => {
                    let sf = enumerate_chambers(c)?;
                    let marked = character(&p).ok();
                    svg::secondary_svg(&sf, c, marked.as_deref(), &spec)
                }
            };
        }
    };
    if svg_out {
        return Err(Error::InvalidInput("this subcommand has no SVG output".into()));
    }
    Ok(json + "\n")
}

fn plot_spec(p: &Problem, kind: PlotKind) -> PlotSpec {
    match &p.plot {
        Some(s) if s.kind == kind => s.clone(),
        _ => PlotSpec::new(kind),
    }
}

fn character(p: &Problem) -> Result<Vector> {
    match (&p.chi, &p.b) {
        (Some(chi), _) => Ok(chi.clone()),
        (None, Some(b)) => p.calibration.chi_of(b),
        _ => Err(Error::InvalidInput("input needs \"chi\" or \"b\"".into())),
    }
}

fn path(p: &Problem, args: &Common) -> Result<AffinePath> {
    match &args.path {
        Some(text) => io::parse_path(text),
        None => p.require_path().cloned(),
    }
}

/// Cone membership against the polytope test, on interior, boundary and
/// random characters.
fn admissibility_oracle(c: &Calibration, samples: usize, seed: u64) -> Result<OracleCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut disagreements = 0;
    for k in 0..samples {
        let chi: Vector = match k % 3 {
            0 => instances::random_admissible_chi(&mut rng, c),
            1 => {
                let g = c.gale_generators();
                let i = rand::Rng::gen_range(&mut rng, 0..g.len());
                crate::linalg::scale(&g[i], &instances::random_positive(&mut rng))
            }
            _ => (0..c.corank()).map(|_| instances::random_scalar(&mut rng, c.field(), 5)).collect(),
        };
        if is_admissible(&chi, c)? != is_admissible_by_polytope(&chi, c)? {
            disagreements += 1;
        }
    }
    Ok(OracleCheck { samples, seed, disagreements })
}

fn chamber_oracle(c: &Calibration, ch: &Chamber, samples: usize, seed: u64) -> Result<OracleCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut disagreements = 0;
    for chi in ch.sample_interior(&mut rng, samples) {
        let f = normal_fan(c, &c.preimage(&chi)?)?;
        if Combinatorics::of(&f) != ch.combinatorics {
            disagreements += 1;
        }
    }
    Ok(OracleCheck { samples, seed, disagreements })
}

/// Combinatorics classes met by random generic characters, compared with
/// the enumerated chambers.
pub fn census(c: &Calibration, sf: &crate::secondary::SecondaryFan, samples: usize, seed: u64) -> Result<CensusCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut classes = BTreeSet::new();
    for _ in 0..samples {
        let (b, _) = instances::random_generic_pair(&mut rng, c);
        let f = normal_fan(c, &b)?;
        classes.insert(Combinatorics::of(&f));
    }
    let unmatched = classes.iter().filter(|k| sf.find(k).is_none()).count();
    Ok(CensusCheck { samples, seed, sampled_classes: classes.len(), unmatched })
}
