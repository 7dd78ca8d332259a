//! Library side of the `labelcut` command-line tool: penalty spec syntax,
//! instance files and the subcommand implementations.

pub mod commands;
pub mod format;
pub mod gspec;

pub use commands::{
    cmd_classify, cmd_decompose, cmd_minimize, cmd_verify, minimize_instance, CliError,
    MinimizeMethod, Outcome, VerifyMode,
};
pub use format::{parse_instance, serialize_instance, FormatError, InstanceFile};
pub use gspec::FunctionSpecRecord;
