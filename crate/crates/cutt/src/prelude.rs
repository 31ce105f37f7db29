//! The shipped surface-language library.

use crate::check::{check_defs, Defs, TypeError};
use crate::parse::{parse_file, ParseError};

pub const PRELUDE_SOURCE: &str = include_str!("../prelude.cutt");

#[derive(Debug)]
pub enum PreludeError {
    Parse(ParseError),
    Check(TypeError),
}

impl std::fmt::Display for PreludeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PreludeError::Parse(e) => write!(f, "prelude parse error: {e}"),
            PreludeError::Check(e) => write!(f, "prelude check error: {e}"),
        }
    }
}

/// One shipped library entry.
#[derive(Clone)]
pub struct PreludeEntry {
    pub name: crate::interval::Name,
    pub source: String,
    pub doc: String,
}

/// Parse and check the shipped library, extending `defs`. Every entry
/// must typecheck with no extra axioms; failure is a build failure.
pub fn build_prelude(defs: &mut Defs) -> Result<Vec<PreludeEntry>, PreludeError> {
    let parsed = parse_file(PRELUDE_SOURCE).map_err(PreludeError::Parse)?;
    check_defs(defs, &parsed).map_err(PreludeError::Check)?;
    Ok(parsed
        .iter()
        .map(|d| PreludeEntry {
            name: d.name.clone(),
            source: crate::printer::print_term(&d.body),
            doc: d.doc.clone(),
        })
        .collect())
}
