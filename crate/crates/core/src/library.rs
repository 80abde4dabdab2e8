//! Bundled presentation files, addressable as `@name`.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, PresentationFile};

/// Directory override for `@name` lookups.
pub const EXAMPLES_ENV: &str = "COVER_GROWTH_EXAMPLES";

pub const BUILTIN: [(&str, &str); 5] = [
    ("free2", include_str!("../examples/free2.gp")),
    ("heisenberg_e0", include_str!("../examples/heisenberg_e0.gp")),
    ("heisenberg_e1", include_str!("../examples/heisenberg_e1.gp")),
    ("trefoil_0surgery", include_str!("../examples/trefoil_0surgery.gp")),
    ("fig8_0surgery", include_str!("../examples/fig8_0surgery.gp")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(n, _)| *n)
}

/// Source text of a bundled example.
pub fn source(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a bundled example, ignoring the directory override.
pub fn builtin(name: &str) -> Result<PresentationFile> {
    let text = source(name).ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    parse_presentation(text)
}

/// Loads `@name` (from `$COVER_GROWTH_EXAMPLES/name.gp` when set, else
/// the bundled copy) or a file path.
pub fn load(input: &str) -> Result<PresentationFile> {
    match input.strip_prefix('@') {
        Some(name) => match std::env::var_os(EXAMPLES_ENV) {
            Some(dir) => read(&PathBuf::from(dir).join(format!("{name}.gp"))),
            None => builtin(name),
        },
        None => read(Path::new(input)),
    }
}

fn read(path: &Path) -> Result<PresentationFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_presentation(&text)
}
