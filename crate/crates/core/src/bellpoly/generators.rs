//! Named inequality families and their published local bounds.

use super::{parse_bracket, parse_bracket_for, SymmetricBellPolynomial};
use crate::error::{Error, Result};
use crate::scalar::{exact_pow2, ExactScalar};

/// A polynomial together with its declared local bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellInequality<T> {
    pub name: String,
    pub polynomial: SymmetricBellPolynomial<T>,
    pub bound: T,
}

fn mabk_coefficient(n: usize, m: usize) -> i128 {
    const ODD: [i128; 4] = [1, 0, -1, 0];
    const EVEN: [i128; 4] = [1, 1, -1, -1];
    if n % 2 == 1 {
        ODD[m % 4]
    } else {
        EVEN[m % 4]
    }
}

/// MABK polynomial on `n` parties: full correlators only, with the
/// repeating sign pattern `1 0 -1 0` (odd `n`) or `1 1 -1 -1` (even `n`).
pub fn mabk<T: ExactScalar>(n: usize) -> Result<BellInequality<T>> {
    if n < 2 {
        return Err(Error::TooFewParties { found: n, min: 2 });
    }
    let poly = SymmetricBellPolynomial::new(
        n,
        (0..=n).map(|m| ((n, m), T::from_integer(mabk_coefficient(n, m)))),
    )?;
    let exp = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 };
    Ok(BellInequality {
        name: format!("MABK_{n}"),
        polynomial: poly,
        bound: exact_pow2(exp as u32),
    })
}

/// Sum of the `(n-1)`-party MABK polynomials over every choice of omitted
/// party. Each `(n-1)`-party correlator appears in exactly one summand, so
/// the result carries the MABK coefficients at order `n - 1`.
pub fn scbi_sum<T: ExactScalar>(n: usize) -> Result<BellInequality<T>> {
    if n < 3 {
        return Err(Error::TooFewParties { found: n, min: 3 });
    }
    let inner = mabk::<T>(n - 1)?;
    let poly = inner.polynomial.with_parties(n)?;
    let exp = (n - 2).div_ceil(2);
    Ok(BellInequality {
        name: format!("BN_{n}"),
        polynomial: poly,
        bound: T::from_integer(n as i128) * exact_pow2::<T>(exp as u32),
    })
}

const M3: &str = "[0 0; 0 0 0; 1 0 -1 0]";
const S3: &str = "[0 0; 0 0 0; 1 1 -1 -1]";
const B: &str = "[0 0; 0 1 0; 1 1 -1 -1]";
const I4: &str = "[-1 -1; -2 0 -2; -2 1 1 -2]";
const I5: &str = "[0 0; -2 0 -1; 0 0 0 0; -4 0 2 0 1]";

fn parse_family_size(name: &str, prefix: &str) -> Option<usize> {
    let upper = name.to_ascii_uppercase();
    upper.strip_prefix(prefix)?.parse().ok()
}

/// Looks up a named inequality: `M3`, `S3`, `B`, `I4`, `I5`, `MABK_<N>` or `BN_<N>`.
pub fn known_inequality<T: ExactScalar>(name: &str) -> Result<BellInequality<T>> {
    let named = |text: &str, n: usize, bound: i128| -> Result<BellInequality<T>> {
        let polynomial = if n == text.split(';').count() {
            parse_bracket(text)?
        } else {
            parse_bracket_for(text, n)?
        };
        Ok(BellInequality {
            name: name.to_ascii_uppercase(),
            polynomial,
            bound: T::from_integer(bound),
        })
    };
    match name.to_ascii_uppercase().as_str() {
        "M3" => named(M3, 3, 2),
        "S3" => named(S3, 3, 4),
        "B" => named(B, 3, 6),
        "I4" => named(I4, 4, 8),
        "I5" => named(I5, 5, 15),
        _ => {
            if let Some(n) = parse_family_size(name, "MABK_") {
                mabk(n)
            } else if let Some(n) = parse_family_size(name, "BN_") {
                scbi_sum(n)
            } else {
                Err(Error::UnknownInequality(name.to_string()))
            }
        }
    }
}
