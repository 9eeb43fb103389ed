//! Cost limits for the searches. Exceeding one is an error, never a silent
//! truncation.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::FactoredInt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Guards {
    /// Largest `d(N)` for enumeration and factorization searches.
    pub max_divisors: usize,
    /// Largest `d(N)` for printing matrices.
    pub max_matrix_divisors: usize,
    /// Largest `det(B_N)` for the parallelepiped and the census.
    pub max_det: u64,
    /// Largest weight numerator `k`.
    pub max_k: i64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_divisors: 16,
            max_matrix_divisors: 64,
            max_det: 10_000_000,
            max_k: 64,
        }
    }
}

impl Guards {
    /// No limits at all; for tests that pick their own sizes.
    pub fn unlimited() -> Self {
        Guards {
            max_divisors: usize::MAX,
            max_matrix_divisors: usize::MAX,
            max_det: u64::MAX,
            max_k: i64::MAX,
        }
    }

    pub fn check_divisors(&self, n: &FactoredInt) -> Result<()> {
        let d = n.num_divisors() as usize;
        if d > self.max_divisors {
            return Err(Error::Guard(format!(
                "d({}) = {d} exceeds max_divisors = {}",
                n.value(),
                self.max_divisors
            )));
        }
        Ok(())
    }

    pub fn check_matrix(&self, n: &FactoredInt) -> Result<()> {
        let d = n.num_divisors() as usize;
        if d > self.max_matrix_divisors {
            return Err(Error::Guard(format!(
                "d({}) = {d} exceeds max_matrix_divisors = {}",
                n.value(),
                self.max_matrix_divisors
            )));
        }
        Ok(())
    }

    /// `det(B_N) = Ω′(N)` against `max_det`, plus the divisor guard.
    pub fn check_parallelepiped(&self, n: &FactoredInt) -> Result<()> {
        self.check_divisors(n)?;
        let det = n.omega_prime_bound();
        if det.0 > BigRational::from_integer(BigInt::from(self.max_det)) {
            return Err(Error::Guard(format!(
                "det(B_{}) = {det} exceeds max_det = {}",
                n.value(),
                self.max_det
            )));
        }
        Ok(())
    }

    pub fn check_k(&self, k: i64) -> Result<()> {
        if k > self.max_k {
            return Err(Error::Guard(format!("k = {k} exceeds max_k = {}", self.max_k)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::factored;

    #[test]
    fn defaults_and_checks() {
        let g = Guards::default();
        assert!(g.check_divisors(&factored(144)).is_ok());
        assert!(g.check_divisors(&factored(2 * 3 * 5 * 7 * 11)).is_err());
        assert!(g.check_parallelepiped(&factored(24)).is_ok());
        assert!(g.check_parallelepiped(&factored(30)).is_err());
        assert!(g.check_k(64).is_ok());
        assert!(matches!(g.check_k(65), Err(Error::Guard(_))));
    }
}
