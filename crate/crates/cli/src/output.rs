use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

use ppr_core::io::write_atomic;

use crate::CliResult;

/// `path` with `suffix` appended to its file name.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name: OsString = path.file_name().map(OsString::from).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

/// Writes `# <config json>` followed by `body`, to `out` or stdout.
pub fn write_table(
    out: Option<&Path>,
    config: &Value,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CliResult {
    let fill = |w: &mut dyn Write| -> io::Result<()> {
        writeln!(w, "# {config}")?;
        body(w)
    };
    match out {
        Some(path) => write_atomic(path, fill)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            fill(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

/// Pretty JSON to `path` (atomically) or stdout.
pub fn write_json(path: Option<&Path>, value: &Value) -> CliResult {
    let text = serde_json::to_string_pretty(value).expect("json values always serialize");
    match path {
        Some(p) => write_atomic(p, |w| writeln!(w, "{text}"))?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Counters go next to the result file as `<out>.stats.json`, or to stderr.
pub fn write_stats(out: Option<&Path>, stats: &Value) -> CliResult {
    match out {
        Some(p) => write_json(Some(&sibling(p, ".stats.json")), stats),
        None => {
            eprintln!("{stats}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sibling_appends_to_file_name() {
        assert_eq!(sibling(Path::new("a/b.csv"), ".stats.json"), PathBuf::from("a/b.csv.stats.json"));
    }
}
