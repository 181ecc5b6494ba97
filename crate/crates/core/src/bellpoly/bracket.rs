//! Bracket text format: `[a_0 a_1; a_00 a_01 a_11; ...]`.
//!
//! Segment `k` (1-based) lists the `k + 1` coefficients of `S(k, 0..=k)`.
//! Tokens are integers or fractions `p/q`; whitespace is free-form and the
//! surrounding brackets are optional.

use super::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

fn split_segments(text: &str) -> Result<Vec<Vec<&str>>> {
    let mut body = text.trim();
    if let Some(rest) = body.strip_prefix('[') {
        body = rest;
    }
    if let Some(rest) = body.strip_suffix(']') {
        body = rest;
    }
    if body.trim().is_empty() {
        return Err(Error::EmptyBracket);
    }
    Ok(body.split(';').map(|seg| seg.split_whitespace().collect()).collect())
}

fn parse_segments<T: ExactScalar>(segments: &[Vec<&str>], n_parties: usize) -> Result<SymmetricBellPolynomial<T>> {
    let mut terms = Vec::new();
    for (idx, tokens) in segments.iter().enumerate() {
        let k = idx + 1;
        if tokens.len() != k + 1 {
            return Err(Error::SegmentLength {
                segment: k,
                found: tokens.len(),
                expected: k + 1,
            });
        }
        for (m, token) in tokens.iter().enumerate() {
            let value = token.parse::<T>().map_err(|_| Error::MalformedToken {
                segment: k,
                token: (*token).to_string(),
            })?;
            terms.push(((k, m), value));
        }
    }
    SymmetricBellPolynomial::new(n_parties, terms)
}

/// Parses a bracket string; the number of segments is the number of parties.
pub fn parse_bracket<T: ExactScalar>(text: &str) -> Result<SymmetricBellPolynomial<T>> {
    let segments = split_segments(text)?;
    parse_segments(&segments, segments.len())
}

/// Parses a bracket string for `n_parties` parties. The text may list all
/// `n_parties` segments or omit the (all-zero) full-correlator segment, as is
/// customary for sub-correlation inequalities.
pub fn parse_bracket_for<T: ExactScalar>(text: &str, n_parties: usize) -> Result<SymmetricBellPolynomial<T>> {
    let segments = split_segments(text)?;
    if segments.len() != n_parties && segments.len() + 1 != n_parties {
        return Err(Error::SegmentCount {
            found: segments.len(),
            n_parties,
        });
    }
    parse_segments(&segments, n_parties)
}

fn format_segments<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, n_segments: usize) -> String {
    let segments: Vec<String> = (1..=n_segments)
        .map(|k| {
            (0..=k)
                .map(|m| poly.coeff(k, m).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", segments.join("; "))
}

/// Canonical bracket string with one segment per party.
pub fn format_bracket<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>) -> String {
    format_segments(poly, poly.n_parties())
}

/// Bracket string without the full-correlator segment. Fails if the
/// polynomial has full correlators.
pub fn format_sub_correlation_bracket<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>) -> Result<String> {
    if !poly.is_sub_correlation() {
        return Err(Error::FullCorrelatorPresent(poly.n_parties()));
    }
    Ok(format_segments(poly, poly.n_parties() - 1))
}
