//! Exponential-time reference implementations used to cross-check the pipeline.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, rank};
use crate::preprocess::{check_preinv, derive};
use crate::reduce::subset_criterion_oracle;
use crate::system::{BinomialSystem, ZeroPattern};
use crate::Matrix;

/// Largest system the zero-pattern enumeration accepts.
pub const PATTERN_LIMIT: usize = 20;

/// Complete intersection test by the subset criterion on the derived system.
pub fn exhaustive_gci(sys: &BinomialSystem) -> Result<bool> {
    let dec = derive(sys);
    if check_preinv(&dec).is_err() {
        return Ok(false);
    }
    let derived = dec.derived().expect("r == s after the check");
    subset_criterion_oracle(&derived)
}

/// Distinct solutions with zero set exactly `zeros`, for generic coefficients.
///
/// A binomial with exactly one side vanishing on the pattern has no solution
/// there. The others either vanish identically or become a torus equation in
/// the surviving variables. `Ok(None)` signals a positive-dimensional stratum.
pub fn stratum_count(sys: &BinomialSystem, zeros: &ZeroPattern) -> Result<Option<BigInt>> {
    let n = sys.n();
    let alive: Vec<usize> = (0..n).filter(|&i| !zeros.contains(i)).collect();
    let mut rows = Vec::new();
    for b in sys.binomials() {
        let (za, zb) = (b.alpha().meets(zeros), b.beta().meets(zeros));
        if b.is_degenerate() {
            if za {
                continue;
            }
            return Ok(Some(BigInt::zero()));
        }
        match (za, zb) {
            (true, true) => continue,
            (false, false) => {
                rows.push(alive.iter().map(|&i| BigInt::from(b.alpha().get(i)) - BigInt::from(b.beta().get(i))).collect())
            }
            _ => return Ok(Some(BigInt::zero())),
        }
    }
    let m = alive.len();
    if rows.is_empty() {
        return Ok(if m == 0 { Some(1.into()) } else { None });
    }
    let k = rows.len();
    let mat = Matrix::from_rows(rows)?;
    let rk = if m == 0 { 0 } else { rank(&mat)? };
    // Dependent rows are inconsistent for generic coefficients.
    if rk < k {
        return Ok(Some(BigInt::zero()));
    }
    if k < m {
        return Ok(None);
    }
    Ok(Some(determinant(&mat)?.abs()))
}

/// Nonzero strata `zero set -> count`, and their total.
pub fn pattern_counts(sys: &BinomialSystem) -> Result<(BTreeMap<ZeroPattern, BigInt>, BigInt)> {
    let n = sys.n();
    if n > PATTERN_LIMIT {
        return Err(Error::TooLarge { what: "variables", limit: PATTERN_LIMIT, got: n });
    }
    let mut table = BTreeMap::new();
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << n) {
        let zeros = ZeroPattern::from_mask(n, mask);
        match stratum_count(sys, &zeros)? {
            None => {
                return Err(Error::InvalidSystem(format!("positive-dimensional solutions with zero set {zeros:?}")))
            }
            Some(c) if c.is_zero() => {}
            Some(c) => {
                total += &c;
                table.insert(zeros, c);
            }
        }
    }
    Ok((table, total))
}
