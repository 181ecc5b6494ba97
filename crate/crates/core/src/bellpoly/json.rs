//! Stable JSON form: `{n_parties, coeffs: [[k, m, "p/q"], ...], bound}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BellInequality, SymmetricBellPolynomial};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n_parties: usize,
    pub coeffs: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

impl PolynomialJson {
    pub fn from_polynomial<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, bound: Option<&T>) -> Self {
        Self {
            n_parties: poly.n_parties(),
            coeffs: poly.terms().map(|((k, m), v)| (k, m, v.to_string())).collect(),
            bound: bound.map(|b| b.to_string()),
        }
    }

    pub fn to_polynomial<T: ExactScalar>(&self) -> Result<(SymmetricBellPolynomial<T>, Option<T>)> {
        let parse = |s: &str| {
            s.parse::<T>()
                .map_err(|_| Error::Serialization(format!("invalid rational {s:?}")))
        };
        let terms = self
            .coeffs
            .iter()
            .map(|(k, m, v)| Ok(((*k, *m), parse(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let poly = SymmetricBellPolynomial::new(self.n_parties, terms)?;
        let bound = self.bound.as_deref().map(parse).transpose()?;
        Ok((poly, bound))
    }
}

impl<T: ExactScalar> Serialize for SymmetricBellPolynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from_polynomial(self, None).serialize(serializer)
    }
}

impl<'de, T: ExactScalar> Deserialize<'de> for SymmetricBellPolynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolynomialJson::deserialize(deserializer)?;
        wire.to_polynomial()
            .map(|(p, _)| p)
            .map_err(serde::de::Error::custom)
    }
}

impl<T: ExactScalar> BellInequality<T> {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson::from_polynomial(&self.polynomial, Some(&self.bound))
    }
}
