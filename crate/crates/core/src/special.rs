//! Gamma-family functions with explicit domain checks.

use crate::error::{Error, Result};

fn require_positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} needs a finite positive argument, got {x}"
        )))
    }
}

pub fn gamma_fn(x: f64) -> Result<f64> {
    require_positive(x, "gamma")?;
    Ok(statrs::function::gamma::gamma(x))
}

pub fn ln_gamma_fn(x: f64) -> Result<f64> {
    require_positive(x, "ln_gamma")?;
    Ok(statrs::function::gamma::ln_gamma(x))
}

pub fn digamma_fn(x: f64) -> Result<f64> {
    require_positive(x, "digamma")?;
    Ok(statrs::function::gamma::digamma(x))
}
