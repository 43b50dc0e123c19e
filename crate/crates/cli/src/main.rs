//! `arcpart`: verify q-series identities, count partitions, compute Hilbert
//! functions and run initial-ideal experiments on arc equations.
//!
//! Exit codes: 0 success, 1 mathematical divergence, 2 usage error.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{parse_range, UsageError};
use report::{Format, Output};

#[derive(Debug, Parser)]
#[command(
    name = "arcpart",
    version,
    about = "Colored partitions, Gordon-type identities and arc-space initial ideals"
)]
pub struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "ARCPART_FORMAT",
        default_value = "text"
    )]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check catalogued series identities to a truncation order.
    Verify(VerifyArgs),
    /// Count partitions in one of the families over a range of n.
    Count(CountArgs),
    /// Hilbert functions of S/J_r or of the z-monomial quotient for G_{r,l}.
    Hilbert(HilbertArgs),
    /// Initial ideal of the arc equations, compared with the expected Hilbert series.
    Arcs(ArcsArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Catalogue name, or `all`.
    #[arg(long, default_value = "all")]
    pub identity: String,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    /// Truncation order N (coefficients of q^0..q^N are compared).
    #[arg(long, default_value_t = 30)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountSet {
    #[value(name = "F")]
    F,
    #[value(name = "B")]
    B,
    #[value(name = "A")]
    A,
    #[value(name = "G")]
    G,
    Colored,
    Target,
}

impl CountSet {
    pub fn name(self) -> &'static str {
        match self {
            CountSet::F => "F",
            CountSet::B => "B",
            CountSet::A => "A",
            CountSet::G => "G",
            CountSet::Colored => "colored",
            CountSet::Target => "target",
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub set: CountSet,
    /// One or more values of r, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub r: Vec<u32>,
    /// For B and A; defaults to r.
    #[arg(long)]
    pub i: Option<u32>,
    /// For G.
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// `a..b` (inclusive) or a single n.
    #[arg(long, value_parser = parse_range, default_value = "0..10")]
    pub n: (u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ideal {
    #[value(name = "Jr")]
    Jr,
    #[value(name = "Gl")]
    Gl,
}

impl Ideal {
    pub fn name(self) -> &'static str {
        match self {
            Ideal::Jr => "Jr",
            Ideal::Gl => "Gl",
        }
    }
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(long, value_enum)]
    pub ideal: Ideal,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// For Gl.
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Largest weight.
    #[arg(long, default_value_t = 10)]
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexDirArg {
    /// v_{i+1} > v_i.
    Higher,
    /// v_i > v_{i+1}.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    Revlex,
    Lex,
}

#[derive(Debug, Args)]
pub struct ArcsArgs {
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Largest weight N.
    #[arg(long, default_value_t = 8)]
    pub weight: u32,
    /// Family precedence, largest first, e.g. `zyx` or `z>y>x`.
    #[arg(long, default_value = "zyx")]
    pub family_order: String,
    #[arg(long, value_enum, default_value = "higher")]
    pub index_dir: IndexDirArg,
    #[arg(long, value_enum, default_value = "revlex")]
    pub tie_break: TieBreakArg,
    /// Divided-power coordinates x_j/j!.
    #[arg(long, conflicts_with = "plain")]
    pub adapted: bool,
    /// Plain coordinates (the default).
    #[arg(long)]
    pub plain: bool,
    /// Compare the initial ideal with J_r weight by weight.
    #[arg(long)]
    pub compare_j: bool,
    /// Run the 12 orders sharing the chosen tie-break; implies --compare-j.
    #[arg(long, conflicts_with = "sweep_all")]
    pub sweep: bool,
    /// Run all 24 orders; implies --compare-j.
    #[arg(long)]
    pub sweep_all: bool,
    /// List the leading monomials per weight in text output.
    #[arg(long)]
    pub show_leading: bool,
    #[arg(long, default_value_t = arcpart::arc::DEFAULT_WEIGHT_CAP)]
    pub weight_cap: u32,
    /// Ignore the weight cap.
    #[arg(long)]
    pub force: bool,
}

fn run(cli: &Cli) -> Result<Output, UsageError> {
    match &cli.command {
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Count(a) => commands::count_cmd(a),
        Command::Hilbert(a) => commands::hilbert_cmd(a),
        Command::Arcs(a) => commands::arcs_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.format).as_bytes());
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
