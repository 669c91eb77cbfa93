//! Barnes G function and the constant `ζ'(-1)`.

use fivevertex::exact::factorial;
use fivevertex::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

/// `ζ'(-1) = 1/12 - log A`, with `A` the Glaisher–Kinkelin constant.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_92;

/// The digits of `ζ'(-1)` as printed alongside the formulas.
pub const ZETA_PRIME_MINUS_ONE_PRINTED: &str = "-0.165142";

pub const LOG_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `G(n) = 0! 1! ⋯ (n-2)!` for `n ≥ 1`.
pub fn barnes_g_int(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("G(0) = 0 has no logarithm".into()));
    }
    let mut g = BigInt::one();
    for k in 1..n.saturating_sub(1) {
        g *= factorial(k);
    }
    Ok(g)
}

/// `log G(n)` for integer `n ≥ 1`, summed as `Σ_{k ≤ n-2} log k!`.
pub fn log_barnes_g(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("G(0) = 0 has no logarithm".into()));
    }
    let mut log_fact = 0.0;
    let mut acc = 0.0;
    for k in 1..n.saturating_sub(1) {
        log_fact += (k as f64).ln();
        acc += log_fact;
    }
    Ok(acc)
}

/// `log G(z+1)` from its large-`z` expansion, error `O(z⁻²)`.
pub fn log_barnes_g_asymptotic(arg: f64) -> Result<f64> {
    let z = arg - 1.0;
    if !(z > 0.0) {
        return Err(Error::Domain(format!("asymptotic G needs an argument above 1, got {arg}")));
    }
    let lz = z.ln();
    Ok(z * z / 2.0 * lz - 0.75 * z * z + LOG_SQRT_2PI * z - lz / 12.0 + ZETA_PRIME_MINUS_ONE)
}

/// `ζ'(-1)` recovered from exact Barnes G values, independent of
/// [`ZETA_PRIME_MINUS_ONE`], with the `1/(240 z²)` tail removed.
pub fn zeta_prime_from_barnes(z: u64) -> Result<f64> {
    let zf = z as f64;
    let lz = zf.ln();
    let exact = log_barnes_g(z + 1)?;
    Ok(exact - (zf * zf / 2.0 * lz - 0.75 * zf * zf + LOG_SQRT_2PI * zf - lz / 12.0)
        + 1.0 / (240.0 * zf * zf))
}

/// Whether `value` rounds to the printed digits `printed`.
pub fn matches_printed(value: f64, printed: &str) -> bool {
    let decimals = printed.split('.').nth(1).map_or(0, str::len);
    format!("{value:.decimals$}") == printed
}
