use std::path::PathBuf;

use clap::{Parser, Subcommand};

/// Workbench for finite epigroups and unary-semigroup identities.
#[derive(Debug, Parser)]
#[command(name = "epiworks", version)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Refuse identity checks needing more assignments than this.
    #[arg(long, global = true, value_name = "ASSIGNMENTS", default_value_t = 100_000_000)]
    pub bound: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an identity, or a system file, in a table.
    Check {
        table: PathBuf,
        /// An identity such as `x y = y x`, or the path of a system file.
        identities: String,
    },
    /// Print the idempotent power and pseudoinverse of every element.
    Pinv { table: PathBuf },
    /// Print group elements, index, nil and complete-regularity data.
    Profile { table: PathBuf },
    /// Search for the least double-bar degree identity the table satisfies.
    Degree {
        table: PathBuf,
        #[arg(long)]
        max: usize,
    },
    /// Rewrite a one-letter word to `x^p x'^q`.
    Normalize { word: String },
    /// Rewrite a word as `u* z` with `z` its last letter.
    Factor { word: String },
    /// Classify an identity.
    Classify { identity: String },
    /// Pad every identity of a system with fresh letters.
    Transform {
        system: PathBuf,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Verify a proof script.
    Deduce {
        script: PathBuf,
        /// Override the script's `delta_bound`.
        #[arg(long, value_name = "PRIME")]
        delta_bound: Option<usize>,
        /// Check the conclusion in every `.tbl` file of this directory that
        /// satisfies the axioms.
        #[arg(long, value_name = "DIR")]
        check_models: Option<PathBuf>,
        /// Match axioms literally instead of up to renaming.
        #[arg(long)]
        strict: bool,
    },
    /// Print a named structure as a table file, or write the standard set.
    Catalog {
        /// `P`, `Pd`, `C`, `T`, `N<k>`, `Z<n>`, `M<i>_<p>` or `F<k>_<m>`.
        name: Option<String>,
        /// Write the standard models into this directory.
        #[arg(long, value_name = "DIR", conflicts_with = "name")]
        out: Option<PathBuf>,
    },
    /// Count the semigroups of a given order.
    Enumerate {
        order: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        /// Write every table into this directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}
