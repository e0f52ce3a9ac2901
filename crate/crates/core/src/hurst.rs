//! Functional Hurst indices H(·).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Time-varying Hurst index.
#[derive(Debug, Clone, PartialEq)]
pub enum HurstFunction<T> {
    /// H(t) = h for every t ≥ 0.
    Constant(T),
    /// H(t) = 0.5 + h·t/Q on [0, Q].
    Monotonic { h: T, horizon: T },
    /// H(t) = 0.5 + h·sin(πt/Q) on [0, Q].
    Periodic { h: T, horizon: T },
    /// `values[k]` is H at time `k · mesh`.
    Tabulated { mesh: T, values: Vec<T> },
}

impl<T: Scalar> HurstFunction<T> {
    pub fn monotonic(h: T, horizon: T) -> Self {
        Self::Monotonic { h, horizon }
    }

    pub fn periodic(h: T, horizon: T) -> Self {
        Self::Periodic { h, horizon }
    }

    /// Tabulates `self` on the sampling grid `k · mesh`, k = 0..=n, after
    /// mapping sample time onto the function's own clock via `clock`.
    pub fn tabulate(&self, mesh: T, n: usize, clock: impl Fn(T) -> T) -> Result<Self> {
        let values = (0..=n)
            .map(|k| self.eval(clock(T::count(k) * mesh)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::Tabulated { mesh, values })
    }

    /// Evaluates H(t), failing outside the domain or when the value leaves (0, 1).
    pub fn eval(&self, t: T) -> Result<T> {
        let half = T::lit(0.5);
        let domain_err = |hi: T| Error::HurstDomain {
            t: t.as_f64(),
            lo: 0.0,
            hi: hi.as_f64(),
        };
        let value = match *self {
            Self::Constant(h) => {
                if !(t >= T::zero()) {
                    return Err(domain_err(T::infinity()));
                }
                h
            }
            Self::Monotonic { h, horizon } => {
                if !(t >= T::zero() && t <= horizon) {
                    return Err(domain_err(horizon));
                }
                half + h * t / horizon
            }
            Self::Periodic { h, horizon } => {
                if !(t >= T::zero() && t <= horizon) {
                    return Err(domain_err(horizon));
                }
                half + h * (T::lit(std::f64::consts::PI) * t / horizon).sin()
            }
            Self::Tabulated { mesh, ref values } => {
                let pos = t / mesh;
                let index = pos.round();
                let tol = T::lit(1e-6) * T::one().max(pos.abs());
                let idx = index.to_i64().unwrap_or(-1);
                if !((pos - index).abs() <= tol) || idx < 0 || idx as usize >= values.len() {
                    return Err(Error::TabulatedIndex {
                        t: t.as_f64(),
                        index: idx,
                        len: values.len(),
                    });
                }
                values[idx as usize]
            }
        };
        if value > T::zero() && value < T::one() {
            Ok(value)
        } else {
            Err(Error::HurstRange(value.as_f64()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotonic_endpoints() {
        let f = HurstFunction::monotonic(0.4f64, 100.0);
        assert_eq!(f.eval(0.0).unwrap(), 0.5);
        assert!((f.eval(100.0).unwrap() - 0.9).abs() < 1e-15);
    }

    #[test]
    fn periodic_peak() {
        let f = HurstFunction::periodic(-0.4f64, 100.0);
        assert!((f.eval(50.0).unwrap() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn domain_and_range_errors() {
        let f = HurstFunction::monotonic(0.4, 100.0);
        assert!(matches!(f.eval(100.5), Err(Error::HurstDomain { .. })));
        assert!(matches!(f.eval(-1.0), Err(Error::HurstDomain { .. })));
        let steep = HurstFunction::monotonic(0.6, 1.0);
        assert!(matches!(steep.eval(1.0), Err(Error::HurstRange(_))));
        assert!(matches!(HurstFunction::Constant(1.0).eval(1.0), Err(Error::HurstRange(_))));
    }

    #[test]
    fn tabulated_lookup() {
        let f = HurstFunction::Tabulated {
            mesh: 0.5,
            values: vec![0.3, 0.4, 0.5],
        };
        assert_eq!(f.eval(0.0).unwrap(), 0.3);
        assert_eq!(f.eval(1.0).unwrap(), 0.5);
        assert!(matches!(f.eval(1.5), Err(Error::TabulatedIndex { index: 3, .. })));
        assert!(matches!(f.eval(0.25), Err(Error::TabulatedIndex { .. })));
        let bad = HurstFunction::Tabulated {
            mesh: 1.0,
            values: vec![0.5, 1.2],
        };
        assert!(matches!(bad.eval(1.0), Err(Error::HurstRange(_))));
    }

    #[test]
    fn tabulate_maps_clock() {
        let f = HurstFunction::monotonic(0.2f64, 100.0);
        let tab = f.tabulate(0.01, 100, |t| t * 100.0).unwrap();
        assert!((tab.eval(1.0).unwrap() - 0.7).abs() < 1e-12);
        assert!((tab.eval(0.5).unwrap() - 0.6).abs() < 1e-12);
    }
}
