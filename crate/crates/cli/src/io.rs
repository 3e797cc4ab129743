use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::CliError;

/// Reads an argument that is inline text, `@path`, or `-` for stdin.
pub fn arg_text(raw: &str) -> Result<String, CliError> {
    if raw == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    match raw.strip_prefix('@') {
        Some(path) => read_file(Path::new(path)),
        None => Ok(raw.to_string()),
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Parses an inline-or-`@path` JSON argument.
pub fn arg_json<T: DeserializeOwned>(what: &str, raw: &str) -> Result<T, CliError> {
    let text = arg_text(raw)?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(format!("{what}: {e}")))
}

/// Writes `content` to `path` through a temporary file in the same
/// directory, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        return out
            .write_all(content.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| CliError::Io(format!("stdout: {e}")));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(content.as_bytes()).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
