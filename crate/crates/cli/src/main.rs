//! `k3lat`: exact lattice, Mukai-vector and monodromy computations for K3
//! surfaces, driven by small JSON documents.

mod commands;
mod doc;
mod error;
mod render;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Parser, Debug)]
#[command(name = "k3lat", version, about = "Exact lattice, Mukai-vector and monodromy computations for K3 surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, determinant, signature, discriminant group and local invariants.
    LatticeInfo { lattice: PathBuf },
    /// Find a vector of the given norm in a rank-2 lattice.
    Represents {
        lattice: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        value: BigInt,
    },
    /// Decide whether the lattice represents zero over the rationals.
    Isotropic { lattice: PathBuf },
    /// Compare the local invariants of two lattices.
    GenusCompare { first: PathBuf, second: PathBuf },
    /// Decide integral equivalence of two rank-2 lattices.
    BinaryEquiv { first: PathBuf, second: PathBuf },
    /// Self-pairing and type of a Mukai vector, optionally paired with another.
    Mukai {
        /// Picard lattice document.
        pic: PathBuf,
        vector: PathBuf,
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Reflect a Mukai vector in a spherical class.
    Twist {
        pic: PathBuf,
        vector: PathBuf,
        #[arg(long)]
        sphere: PathBuf,
    },
    /// Second Chern class of a sheaf with the given Mukai vector.
    C2 { pic: PathBuf, vector: PathBuf },
    /// Decomposable index and the resulting bound on the index.
    IndexBound { lattice: PathBuf },
    /// Number of Fourier-Mukai partners of a generic K3 of degree 2n.
    FmCount {
        #[arg(long)]
        n: BigInt,
    },
    /// Topology of the real locus from the invariants (r, a, delta).
    RealType {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        delta: u8,
    },
    /// Invariants (r, a, delta) of a lattice involution.
    Involution {
        involution: PathBuf,
        /// Extend by minus the identity on the hyperbolic plane first.
        #[arg(long)]
        mukai: bool,
    },
    /// Quasi-unipotency, Kulikov type and logarithm of a monodromy matrix.
    Monodromy {
        matrix: PathBuf,
        /// Second matrix whose characteristic polynomial is compared.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Express a matrix as a word in simple reflections, if possible.
    Weyl { document: PathBuf },
    /// Images of (1,0,0) and (0,0,1) under an SL2 matrix on an elliptic K3.
    JacobianCheck {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        c: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
    },
    /// Recompute every worked example from the bundled fixtures.
    PaperSuite {
        #[arg(long, default_value = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))]
        fixtures: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", render::to_json(out.command, &out.result)),
                Format::Text => print!("{}", out.text.unwrap_or_else(|| render::to_text(&out.result))),
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
