//! Sampled curves with provenance metadata.

use crate::error::{Error, Result};

/// Which quantity a curve holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Gd,
    Jd,
    Jstar,
    Psi,
    Phi,
    Alpha,
    Stress,
    Strain,
}

impl Quantity {
    /// Column label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            Quantity::Gd => "Gd",
            Quantity::Jd => "Jd",
            Quantity::Jstar => "Jstar",
            Quantity::Psi => "psi",
            Quantity::Phi => "phi",
            Quantity::Alpha => "alpha",
            Quantity::Stress => "stress",
            Quantity::Strain => "strain",
        }
    }
}

/// A time grid with function values and a textual record of the inputs that
/// produced them.
#[derive(Clone, Debug)]
pub struct CurveSamples {
    t_grid: Vec<f64>,
    values: Vec<f64>,
    quantity: Quantity,
    params_echo: String,
}

impl CurveSamples {
    /// Grids and values must have equal length and every value must be
    /// finite.
    pub fn new(
        t_grid: Vec<f64>,
        values: Vec<f64>,
        quantity: Quantity,
        params_echo: String,
    ) -> Result<Self> {
        if t_grid.len() != values.len() {
            return Err(Error::Numerical(format!(
                "curve length mismatch: {} grid points vs {} values",
                t_grid.len(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!(
                "non-finite {} value at t = {}",
                quantity.label(),
                t_grid[bad]
            )));
        }
        Ok(Self {
            t_grid,
            values,
            quantity,
            params_echo,
        })
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    pub fn params_echo(&self) -> &str {
        &self.params_echo
    }

    pub fn len(&self) -> usize {
        self.t_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_grid.is_empty()
    }
}

/// Checks a time grid is strictly positive and strictly increasing.
pub(crate) fn validate_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::Domain("empty time grid".into()));
    }
    let mut previous = 0.0;
    for &t in t_grid {
        if !(t > previous) || !t.is_finite() {
            return Err(Error::Domain(format!(
                "time grid must be strictly positive and increasing, offending t = {t}"
            )));
        }
        previous = t;
    }
    Ok(())
}
