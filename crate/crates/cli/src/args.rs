//! Command-line syntax.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use flatspin_core::{Family, Mode};

#[derive(Debug, Parser)]
#[command(name = "flatspin", version, about = "Exact flat geometry of spingon and half-spingon translation surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a surface and print its canonical JSON.
    Build(BuildArgs),
    /// Stratum, genus, area and cone points of a surface.
    Analyze {
        /// Surface JSON file, or - for stdin.
        input: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Run the verification suite over family eigenforms, or check one surface file.
    Verify(VerifyArgs),
    /// Decide whether two surfaces agree up to translation, rotation or similarity.
    Equiv {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Similarity)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Find affine symmetries of a surface.
    Symmetry {
        input: String,
        /// Derivative to look for: 1, -1, zM or zM^j.
        #[arg(long, allow_hyphen_values = true)]
        derivative: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Triangulate every rhombus along both diagonals; prints the cell complex as JSON.
    Triangulate {
        input: String,
        /// Print counts instead of the complex.
        #[arg(long)]
        summary: bool,
    },
    /// Quotient of the diagonal triangulation by the hyperelliptic involution
    /// and optionally a rotation.
    Quotient {
        input: String,
        /// Also divide by the symmetry with this derivative (zM^j syntax).
        #[arg(long, allow_hyphen_values = true)]
        rotation: Option<String>,
        /// Leave the hyperelliptic involution out of the generators.
        #[arg(long)]
        no_involution: bool,
        #[arg(long)]
        json: bool,
    },
    /// Draw a surface as SVG.
    Svg {
        input: String,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("source")
        .required(true)
        .args(["family", "spingon", "half_spingon", "regular", "double", "unfold"])
))]
pub struct BuildArgs {
    #[arg(long, requires_all = ["genus", "k"])]
    pub family: Option<Family>,
    #[arg(long)]
    pub genus: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// The spingon S^K_N.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub spingon: Option<Vec<u32>>,
    /// The half-spingon H^K_N.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub half_spingon: Option<Vec<u32>>,
    /// The regular N-gon with opposite sides glued.
    #[arg(long, value_name = "N")]
    pub regular: Option<u32>,
    /// Two regular N-gons glued along parallel sides.
    #[arg(long, value_name = "N")]
    pub double: Option<u32>,
    /// Unfolding of the right triangle with angles π/2, πA/M, πB/M.
    #[arg(long, num_args = 3, value_names = ["A", "B", "M"])]
    pub unfold: Option<Vec<u32>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to one family; all three by default.
    #[arg(long)]
    pub family: Option<Family>,
    /// Inclusive genus range such as 2..5.
    #[arg(long, default_value = "2..4")]
    pub genus_range: String,
    /// Check a surface file instead of the families.
    #[arg(long, conflicts_with_all = ["family"])]
    pub input: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Translation,
    Rotation,
    Similarity,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Translation => Mode::Translation,
            ModeArg::Rotation => Mode::Rotation,
            ModeArg::Similarity => Mode::Similarity,
        }
    }
}
