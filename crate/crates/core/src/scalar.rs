//! Scalar kernels: the Young ratio, the Kantorovich constant and the
//! deformed exponential.
//!
//! Powers `t^v` are always evaluated as `exp(v * ln t)` so that every bound
//! in the crate shares one evaluation path for the geometric mean.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this magnitude the deformation parameter is treated as the
/// classical exponential limit.
pub const DEFORM_ZERO_EPS: f64 = 1e-10;

/// Outside `[LOG_PATH_LOW, LOG_PATH_HIGH]` the Young ratio is evaluated in
/// log space.
const LOG_PATH_LOW: f64 = 1e-3;
const LOG_PATH_HIGH: f64 = 1e3;

/// A point `(t, v)` with `t > 0` and `v` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    t: f64,
    v: f64,
}

impl EvalPoint {
    pub fn new(t: f64, v: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidPoint(format!(
                "t must be positive and finite, got {t}"
            )));
        }
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidPoint(format!("v must lie in [0, 1], got {v}")));
        }
        Ok(EvalPoint { t, v })
    }

    #[inline]
    pub fn t(&self) -> f64 {
        self.t
    }

    #[inline]
    pub fn v(&self) -> f64 {
        self.v
    }

    /// `v (1 - v)`, the weight factor shared by every bound.
    #[inline]
    pub fn weight_product(&self) -> f64 {
        self.v * (1.0 - self.v)
    }

    pub fn exponents(&self) -> KExponents {
        KExponents::from_weight(self.v)
    }
}

/// Deformation parameter `r` of `exp_r`, restricted to `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformParam(f64);

impl DeformParam {
    pub fn new(r: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&r) {
            return Err(Error::InvalidDeform(format!("r must lie in [-1, 1], got {r}")));
        }
        Ok(DeformParam(r))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// The exponents `min{v, 1-v}` and `max{v, 1-v}` applied to the
/// Kantorovich constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KExponents {
    pub r_min: f64,
    pub r_max: f64,
}

impl KExponents {
    pub fn from_weight(v: f64) -> Self {
        let w = 1.0 - v;
        KExponents {
            r_min: v.min(w),
            r_max: v.max(w),
        }
    }
}

/// `t^p` computed as `exp(p ln t)`.
#[inline]
pub fn pow_pos(t: f64, p: f64) -> f64 {
    (p * t.ln()).exp()
}

/// The arithmetic-to-geometric mean ratio `((1 - v) + v t) / t^v`.
pub fn young_ratio(p: EvalPoint) -> f64 {
    let (t, v) = (p.t, p.v);
    let numerator = (1.0 - v) + v * t;
    if !(LOG_PATH_LOW..=LOG_PATH_HIGH).contains(&t) {
        (numerator.ln() - v * t.ln()).exp()
    } else {
        numerator / pow_pos(t, v)
    }
}

/// Kantorovich constant `(t + 1)^2 / (4 t)`.
pub fn kantorovich(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidPoint(format!(
            "Kantorovich constant needs t > 0, got {t}"
        )));
    }
    Ok(kantorovich_unchecked(t))
}

#[inline]
pub(crate) fn kantorovich_unchecked(t: f64) -> f64 {
    (t + 1.0) * (t + 1.0) / (4.0 * t)
}

/// `(t - 1)^2 / t`, which equals `4 (K(t) - 1)` without the cancellation
/// of forming `K(t) - 1`.
pub fn kantorovich_identity_arg(t: f64) -> f64 {
    let d = t - 1.0;
    d * d / t
}

/// Deformed exponential `exp_r(x) = (1 + r x)^(1/r)` for `r` in `[-1, 1]`.
pub fn deformed_exp(r: DeformParam, x: f64) -> Result<f64> {
    exp_r(r.value(), x)
}

/// `exp_r` for an arbitrary real `r`.
///
/// `|r| < 1e-10` yields `exp(x)`. Fails when `1 + r x < 0`, and for
/// negative `r` also when `1 + r x = 0` (the value diverges).
pub fn exp_r(r: f64, x: f64) -> Result<f64> {
    if !r.is_finite() || x.is_nan() {
        return Err(Error::Domain(format!("exp_r undefined for r={r}, x={x}")));
    }
    if r.abs() < DEFORM_ZERO_EPS {
        return Ok(x.exp());
    }
    let base = 1.0 + r * x;
    if base < 0.0 || (base == 0.0 && r < 0.0) {
        return Err(Error::Domain(format!(
            "1 + r x = {base} is not admissible for r={r}, x={x}"
        )));
    }
    if base == 0.0 {
        return Ok(0.0);
    }
    Ok(((r * x).ln_1p() / r).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(t: f64, v: f64) -> EvalPoint {
        EvalPoint::new(t, v).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn point_construction_rejects_bad_inputs() {
        assert!(EvalPoint::new(0.0, 0.5).is_err());
        assert!(EvalPoint::new(-1.0, 0.5).is_err());
        assert!(EvalPoint::new(f64::NAN, 0.5).is_err());
        assert!(EvalPoint::new(f64::INFINITY, 0.5).is_err());
        assert!(EvalPoint::new(1.0, -0.01).is_err());
        assert!(EvalPoint::new(1.0, 1.01).is_err());
        assert!(EvalPoint::new(1.0, f64::NAN).is_err());
        assert!(EvalPoint::new(1e-300, 0.0).is_ok());
        assert!(EvalPoint::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn deform_param_range() {
        assert!(DeformParam::new(-1.0).is_ok());
        assert!(DeformParam::new(1.0).is_ok());
        assert!(DeformParam::new(0.0).is_ok());
        assert!(DeformParam::new(1.001).is_err());
        assert!(DeformParam::new(-1.5).is_err());
        assert!(DeformParam::new(f64::NAN).is_err());
    }

    #[test]
    fn exponents_sum_to_one() {
        for v in [0.0, 0.2, 0.5, 0.7, 1.0] {
            let k = KExponents::from_weight(v);
            assert!((k.r_min + k.r_max - 1.0).abs() < 1e-15);
            assert!(k.r_min <= 0.5 && k.r_max >= 0.5);
        }
    }

    #[test]
    fn young_ratio_examples() {
        assert_eq!(young_ratio(pt(1.0, 0.3)), 1.0);
        assert!(close(young_ratio(pt(4.0, 0.5)), 1.25, 1e-15));
        // mpmath at 40 digits on the binary values of t and v; the decimal
        // inputs give 1.99997136918357 (the gap is the rounding of 1 - v).
        assert!(close(
            young_ratio(pt(1e-6, 0.999999)),
            1.999_971_369_212_321_4,
            1e-14
        ));
        assert!((young_ratio(pt(1e-6, 0.999999)) - 1.999_971_4).abs() < 1e-7);
    }

    #[test]
    fn young_ratio_endpoints_are_one() {
        for t in [1e-6, 0.3, 1.0, 7.0, 1e6] {
            assert!(close(young_ratio(pt(t, 0.0)), 1.0, 1e-15));
            assert!(close(young_ratio(pt(t, 1.0)), 1.0, 1e-12));
        }
    }

    #[test]
    fn kantorovich_examples() {
        assert_eq!(kantorovich(1.0).unwrap(), 1.0);
        assert_eq!(kantorovich(4.0).unwrap(), 1.5625);
        assert_eq!(kantorovich(0.25).unwrap(), 1.5625);
        assert!(kantorovich(0.0).is_err());
        assert!(kantorovich(-2.0).is_err());
    }

    #[test]
    fn identity_arg_examples() {
        assert_eq!(kantorovich_identity_arg(1.0), 0.0);
        assert_eq!(kantorovich_identity_arg(4.0), 2.25);
        assert_eq!(kantorovich_identity_arg(0.25), 2.25);
        assert_eq!(4.0 * (kantorovich(4.0).unwrap() - 1.0), 2.25);
    }

    #[test]
    fn deformed_exp_examples() {
        let e = |r: f64, x: f64| deformed_exp(DeformParam::new(r).unwrap(), x).unwrap();
        assert!(close(e(1.0, 3.0), 4.0, 1e-15));
        assert!(close(e(-1.0, 0.5), 2.0, 1e-15));
        assert!(close(e(0.5, 2.0), 4.0, 1e-15));
        assert_eq!(e(0.0, 1.0), 1f64.exp());
        assert_eq!(e(0.3, 0.0), 1.0);
    }

    #[test]
    fn deformed_exp_domain() {
        assert!(matches!(exp_r(-1.0, 2.0), Err(Error::Domain(_))));
        assert!(matches!(exp_r(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(exp_r(0.5, -3.0), Err(Error::Domain(_))));
        assert_eq!(exp_r(0.5, -2.0).unwrap(), 0.0);
        assert!(exp_r(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn deformed_exp_approaches_exp_near_zero() {
        for x in [0.1, 1.0, 3.0] {
            let near = exp_r(1e-8, x).unwrap();
            assert!(close(near, x.exp(), 1e-7));
            assert_eq!(exp_r(5e-11, x).unwrap(), x.exp());
        }
    }
}
