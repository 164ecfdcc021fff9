use std::fmt;
use std::str::FromStr;

use mop_core::exact::int;
use mop_core::families::{Family, ScaledPolynomial, TypeIVector};

use crate::error::CliError;

/// Adds 1 to one generated coefficient, so the verifier can be shown to
/// catch a wrong formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultSpec {
    pub family: Family,
    pub poly_type: u8,
    pub component: usize,
    pub index: usize,
}

impl FaultSpec {
    /// `FAMILY:TYPE:COMPONENT:INDEX`, e.g. `hahn:1:0:0`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Config(format!("fault spec {s:?} is not FAMILY:TYPE:COMPONENT:INDEX"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(bad());
        }
        let family = Family::from_str(parts[0]).map_err(|_| bad())?;
        let poly_type: u8 = parts[1].parse().map_err(|_| bad())?;
        if poly_type != 1 && poly_type != 2 {
            return Err(bad());
        }
        let component = parts[2].parse().map_err(|_| bad())?;
        let index = parts[3].parse().map_err(|_| bad())?;
        if poly_type == 2 && component != 0 {
            return Err(CliError::Config("type II faults use component 0".into()));
        }
        Ok(FaultSpec {
            family,
            poly_type,
            component,
            index,
        })
    }

    /// Perturbs `b` when the fault targets this family's type II polynomials.
    pub fn apply_type2(&self, family: Family, b: &mut ScaledPolynomial) -> bool {
        if self.family != family || self.poly_type != 2 {
            return false;
        }
        bump(b, self.index)
    }

    pub fn apply_type1(&self, family: Family, a: &mut TypeIVector) -> bool {
        if self.family != family || self.poly_type != 1 {
            return false;
        }
        match a.components.get_mut(self.component) {
            Some(c) => bump(c, self.index),
            None => false,
        }
    }
}

fn bump(poly: &mut ScaledPolynomial, index: usize) -> bool {
    match poly.coefficients.get_mut(index) {
        Some(c) => {
            *c += int(1);
            true
        }
        None => false,
    }
}

impl fmt::Display for FaultSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.family, self.poly_type, self.component, self.index)
    }
}
