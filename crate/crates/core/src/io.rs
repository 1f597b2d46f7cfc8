//! Covector text files: one sign vector over `+-0` per line, `#` comments.

use crate::om::{GroundSet, OmError, OrientedMatroid};
use crate::sign::SignVector;

pub fn parse_covectors(text: &str) -> Result<OrientedMatroid, OmError> {
    let mut vectors = Vec::new();
    for line in text.lines() {
        let line = match line.split_once('#') {
            Some((before, _)) => before,
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        vectors.push(line.parse::<SignVector>()?);
    }
    let n = vectors.first().map(SignVector::len).ok_or(OmError::MissingZero)?;
    OrientedMatroid::from_covectors(GroundSet::new(n)?, vectors)
}
