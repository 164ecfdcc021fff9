//! Command-line front end for the multiple orthogonal polynomial toolkit.

pub mod commands;
pub mod config;
pub mod error;
pub mod fault;
pub mod grid;
pub mod identity;
pub mod output;

use config::{CommandKind, JobConfig};
use error::CliError;
use output::Rendered;

/// Runs the configured command and renders its output.
pub fn run(cfg: &JobConfig) -> Result<Rendered, CliError> {
    match cfg.command {
        CommandKind::Coeffs => commands::cmd_coeffs(cfg),
        CommandKind::Eval => commands::cmd_eval(cfg),
        CommandKind::Verify => commands::cmd_verify(cfg),
        CommandKind::Identity => commands::cmd_identity(cfg),
        CommandKind::Table => commands::cmd_table(cfg),
        CommandKind::PlotData => commands::cmd_plot_data(cfg),
    }
}
