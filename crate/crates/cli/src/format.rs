//! JSON encodings shared by every report.

use eisterms::{CyclotomicNumber, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `sum_i coeffs[i] zeta_order^i` in the power basis of `Q(zeta_order)`, with
/// coefficients as exact rational strings. `text` is informational only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub order: u32,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl CycJson {
    pub fn from_cyc(x: &CyclotomicNumber) -> Self {
        CycJson { order: x.order(), coeffs: x.coeffs().iter().map(ToString::to_string).collect(), text: Some(x.to_string()) }
    }

    pub fn to_cyc(&self) -> Result<CyclotomicNumber, CliError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| eisterms::exact_arith::parse_rational(c))
            .collect::<Result<Vec<Rational>, _>>()?;
        Ok(CyclotomicNumber::new(self.order, &coeffs)?)
    }
}
