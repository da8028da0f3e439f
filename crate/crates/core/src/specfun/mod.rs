//! Zero-order Macdonald function K₀ and the Airy function Ai on the real line.

mod airy;
mod double_double;
mod k0;
mod steed;

use thiserror::Error;

pub use airy::airy_ai;
pub use k0::bessel_k0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainFlag {
    Normal,
    /// The true value is below the smallest normal `f64`; `value` is 0.
    UnderflowToZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: f64,
    pub domain_flag: DomainFlag,
}

impl SpecialValue {
    fn normal(value: f64) -> Self {
        Self {
            value,
            domain_flag: DomainFlag::Normal,
        }
    }

    fn checked(value: f64) -> Self {
        if value.abs() < f64::MIN_POSITIVE {
            Self {
                value: 0.0,
                domain_flag: DomainFlag::UnderflowToZero,
            }
        } else {
            Self::normal(value)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecfunError {
    #[error("argument {0} is outside the domain of {1}")]
    Domain(f64, &'static str),
}
