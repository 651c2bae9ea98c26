use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// An ordered collection of finite observations, with an optional note on
/// where they came from (file and column, generator, transformation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct Sample<T = f64> {
    values: Vec<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

impl<T: Real> Sample<T> {
    /// Wraps `values`, rejecting NaN and infinities.
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self {
            values,
            source: None,
        })
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<T> AsRef<[T]> for Sample<T> {
    fn as_ref(&self) -> &[T] {
        &self.values
    }
}

pub(crate) fn check_finite<T: Real>(values: &[T]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Domain(format!(
            "observation {} is not finite ({})",
            i + 1,
            values[i]
        ))),
        None => Ok(()),
    }
}

/// First three sample moments: mean, standard deviation (n − 1 divisor) and
/// the moment skewness m3 / m2^(3/2).
pub(crate) fn moments<T: Real>(values: &[T]) -> (T, T, T) {
    let n = T::from_usize(values.len()).unwrap();
    let mean = values.iter().copied().sum::<T>() / n;
    let (mut m2, mut m3) = (T::zero(), T::zero());
    for &x in values {
        let d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    let sd = (m2 / (n - T::one())).sqrt();
    let (m2, m3) = (m2 / n, m3 / n);
    let skew = if m2 > T::zero() {
        m3 / m2.powf(T::lit(1.5))
    } else {
        T::zero()
    };
    (mean, sd, skew)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan() {
        assert!(matches!(
            Sample::new(vec![1.0, f64::NAN]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn moments_of_symmetric_data() {
        let (m, s, g) = moments(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert_eq!(s, 1.0);
        assert_eq!(g, 0.0);
    }
}
