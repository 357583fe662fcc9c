//! Grid sweeps of catalog bounds, the difference functions used to show
//! that two bounds are unordered, a sign-change witness search, and the
//! table of reference values for those differences.
//!
//! Grid scans run rows in parallel but every reduction happens
//! sequentially in row-major order (t outer, ascending), so reports do not
//! depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{certificate_for, find_bound, ValidRegion};
use crate::error::{Error, Result};
use crate::scalar::{exp_r, kantorovich_unchecked, pow_pos, young_ratio, DeformParam, EvalPoint};

pub const DEFAULT_NT: usize = 200;
pub const DEFAULT_NV: usize = 101;
pub const DEFAULT_T_MIN: f64 = 1e-3;
pub const DEFAULT_T_MAX: f64 = 1e3;
pub const DEFAULT_DELTA: f64 = 1e-3;
pub const DEFAULT_REFINE_DEPTH: usize = 3;
pub const DEFAULT_SWEEP_TOL: f64 = 1e-12;
pub const REMARK_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TScale {
    Linear,
    Log,
}

/// A rectangular `(t, v)` grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub t_min: f64,
    pub t_max: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub t_scale: TScale,
    pub n_t: usize,
    pub n_v: usize,
}

impl Region {
    pub fn new(
        t_min: f64,
        t_max: f64,
        v_min: f64,
        v_max: f64,
        t_scale: TScale,
        n_t: usize,
        n_v: usize,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRegion(msg));
        if !(t_min > 0.0) || !t_max.is_finite() || !(t_min <= t_max) {
            return bad(format!("need 0 < t_min <= t_max < inf, got [{t_min}, {t_max}]"));
        }
        if !(0.0 <= v_min && v_min <= v_max && v_max <= 1.0) {
            return bad(format!("need 0 <= v_min <= v_max <= 1, got [{v_min}, {v_max}]"));
        }
        if n_t < 2 || n_v < 2 {
            return bad(format!("grid needs at least 2 points per axis, got {n_t}x{n_v}"));
        }
        Ok(Region {
            t_min,
            t_max,
            v_min,
            v_max,
            t_scale,
            n_t,
            n_v,
        })
    }

    /// Default grid (200 log-spaced t by 101 v values) on `[t_min, t_max] x [0, 1]`.
    pub fn default_on(t_min: f64, t_max: f64) -> Result<Self> {
        Region::new(t_min, t_max, 0.0, 1.0, TScale::Log, DEFAULT_NT, DEFAULT_NV)
    }

    /// Default grid covering a validity region, truncated to `[1e-3, 1e3]`.
    pub fn default_for(region: ValidRegion) -> Self {
        let (lo, hi) = match region {
            ValidRegion::AllT => (DEFAULT_T_MIN, DEFAULT_T_MAX),
            ValidRegion::TLeOne => (DEFAULT_T_MIN, 1.0),
            ValidRegion::TGeOne => (1.0, DEFAULT_T_MAX),
        };
        Region::default_on(lo, hi).expect("default region is valid")
    }

    pub fn n_points(&self) -> usize {
        self.n_t * self.n_v
    }

    fn t_coord(&self, t: f64) -> f64 {
        match self.t_scale {
            TScale::Linear => t,
            TScale::Log => t.ln(),
        }
    }

    fn t_from_coord(&self, c: f64) -> f64 {
        match self.t_scale {
            TScale::Linear => c,
            TScale::Log => c.exp(),
        }
    }

    /// Grid values of `t`; the endpoints are exactly `t_min` and `t_max`.
    pub fn t_values(&self) -> Vec<f64> {
        let (a, b) = (self.t_coord(self.t_min), self.t_coord(self.t_max));
        let last = self.n_t - 1;
        (0..self.n_t)
            .map(|i| match i {
                0 => self.t_min,
                i if i == last => self.t_max,
                i => self.t_from_coord(a + (b - a) * i as f64 / last as f64),
            })
            .collect()
    }

    pub fn v_values(&self) -> Vec<f64> {
        let last = self.n_v - 1;
        (0..self.n_v)
            .map(|j| match j {
                0 => self.v_min,
                j if j == last => self.v_max,
                j => self.v_min + (self.v_max - self.v_min) * j as f64 / last as f64,
            })
            .collect()
    }

    fn t_step(&self) -> f64 {
        (self.t_coord(self.t_max) - self.t_coord(self.t_min)) / (self.n_t - 1) as f64
    }

    fn v_step(&self) -> f64 {
        (self.v_max - self.v_min) / (self.n_v - 1) as f64
    }
}

/// Evaluate `f` over the grid, returning values in row-major order.
fn scan<T, F>(region: &Region, f: F) -> Vec<(EvalPoint, T)>
where
    T: Send,
    F: Fn(EvalPoint) -> T + Sync,
{
    let vs = region.v_values();
    region
        .t_values()
        .into_par_iter()
        .map(|t| {
            vs.iter()
                .map(|&v| {
                    let p = EvalPoint::new(t, v).expect("grid points are valid");
                    (p, f(p))
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub bound_id: String,
    pub n_points: usize,
    pub n_violations: usize,
    pub min_margin: f64,
    pub argmin_point: EvalPoint,
    pub tol: f64,
}

/// Certify `bound_id` at every grid point of `region`.
pub fn sweep(bound_id: &str, region: &Region, deform: Option<DeformParam>, tol: f64) -> Result<SweepReport> {
    let spec = find_bound(bound_id)?;
    if !spec.region.contains_interval(region.t_min, region.t_max) {
        return Err(Error::Region(format!(
            "grid t in [{}, {}] leaves the {} region of {}",
            region.t_min,
            region.t_max,
            spec.region.as_str(),
            spec.id
        )));
    }
    // Surface deformation errors once rather than per point.
    spec.resolve_deform(deform)?;

    let results = scan(region, |p| {
        spec.evaluate(p, deform).map(|b| certificate_for(spec, p, b, tol))
    });

    let mut n_violations = 0;
    let mut min_margin = f64::INFINITY;
    let mut argmin_point = None;
    for (p, cert) in results {
        let cert = cert?;
        if !cert.holds {
            n_violations += 1;
        }
        // NaN margins count as violations and pin the argmin.
        if cert.margin < min_margin
            || (cert.margin.is_nan() && !min_margin.is_nan())
            || argmin_point.is_none()
        {
            min_margin = cert.margin;
            argmin_point = Some(p);
        }
    }
    Ok(SweepReport {
        bound_id: spec.id.to_string(),
        n_points: region.n_points(),
        n_violations,
        min_margin,
        argmin_point: argmin_point.expect("grid is non-empty"),
        tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DiffKind {
    KUpperMinusExp,
    KUpperMinusPoly,
    KUpperMinusHalfInvSquare,
    KUpperMinusHalfSquare,
    KLowerMinusRecipSquare,
    KLowerMinusRecipInvSquare,
    DeformMinusRatio,
}

/// A registered difference function between two bounds.
#[derive(Debug, Clone, Serialize)]
pub struct DiffSpec {
    pub id: &'static str,
    pub region: ValidRegion,
    pub needs_r: bool,
    pub description: &'static str,
    #[serde(skip)]
    kind: DiffKind,
}

static DIFFS: [DiffSpec; 7] = [
    DiffSpec {
        id: "diff-l",
        region: ValidRegion::AllT,
        needs_r: false,
        description: "K(t)^R - exp(v(1-v)(t-1)^2/t)",
        kind: DiffKind::KUpperMinusExp,
    },
    DiffSpec {
        id: "diff-u1",
        region: ValidRegion::AllT,
        needs_r: false,
        description: "K(t)^R - (1 + v(1-v)(t-1)^2/t)",
        kind: DiffKind::KUpperMinusPoly,
    },
    DiffSpec {
        id: "diff-u2",
        region: ValidRegion::TLeOne,
        needs_r: false,
        description: "K(t)^R - (1 + v(1-v)(t-1)^2/(2t^2))",
        kind: DiffKind::KUpperMinusHalfInvSquare,
    },
    DiffSpec {
        id: "diff-u3",
        region: ValidRegion::TGeOne,
        needs_r: false,
        description: "K(t)^R - (1 + v(1-v)(t-1)^2/2)",
        kind: DiffKind::KUpperMinusHalfSquare,
    },
    DiffSpec {
        id: "diff-l1",
        region: ValidRegion::TLeOne,
        needs_r: false,
        description: "K(t)^r - 1/(1 - (v(1-v)/2)(t-1)^2)",
        kind: DiffKind::KLowerMinusRecipSquare,
    },
    DiffSpec {
        id: "diff-l2",
        region: ValidRegion::TGeOne,
        needs_r: false,
        description: "K(t)^r - 1/(1 - (v(1-v)/(2t^2))(t-1)^2)",
        kind: DiffKind::KLowerMinusRecipInvSquare,
    },
    DiffSpec {
        id: "diff-ropt",
        region: ValidRegion::AllT,
        needs_r: true,
        description: "exp_r(v(1-v)(t-1)^2/t) - R(t,v), any real r",
        kind: DiffKind::DeformMinusRatio,
    },
];

pub fn list_diffs() -> &'static [DiffSpec] {
    &DIFFS
}

pub fn find_diff(id: &str) -> Result<&'static DiffSpec> {
    DIFFS
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownDiff(id.to_string()))
}

impl DiffSpec {
    /// Threshold used when the caller gives none: the `l_1`/`l_2` gaps are
    /// an order of magnitude smaller than the others.
    pub fn default_delta(&self) -> f64 {
        match self.kind {
            DiffKind::KLowerMinusRecipSquare | DiffKind::KLowerMinusRecipInvSquare => 1e-4,
            _ => DEFAULT_DELTA,
        }
    }

    pub fn default_region(&self) -> Region {
        Region::default_for(self.region)
    }

    fn check_r(&self, r: Option<f64>) -> Result<Option<f64>> {
        match (self.needs_r, r) {
            (true, None) => Err(Error::InvalidDeform(format!("{} requires r", self.id))),
            (false, Some(r)) => Err(Error::InvalidDeform(format!("{} takes no r (got {r})", self.id))),
            (_, r) => Ok(r),
        }
    }

    pub fn evaluate(&self, p: EvalPoint, r: Option<f64>) -> Result<f64> {
        if !self.region.contains(p.t()) {
            return Err(Error::Region(format!(
                "{} is defined on {} but t={}",
                self.id,
                self.region.as_str(),
                p.t()
            )));
        }
        let r = self.check_r(r)?;
        Ok(self.value(p, r))
    }

    /// Unchecked evaluation; undefined points come back as NaN.
    fn value(&self, p: EvalPoint, r: Option<f64>) -> f64 {
        let t = p.t();
        let w = p.weight_product();
        let sq = (t - 1.0) * (t - 1.0);
        let k = kantorovich_unchecked(t);
        let exps = p.exponents();
        let recip = |den: f64| if den > 0.0 { 1.0 / den } else { f64::NAN };
        match self.kind {
            DiffKind::KUpperMinusExp => pow_pos(k, exps.r_max) - (w * sq / t).exp(),
            DiffKind::KUpperMinusPoly => pow_pos(k, exps.r_max) - (1.0 + w * sq / t),
            DiffKind::KUpperMinusHalfInvSquare => pow_pos(k, exps.r_max) - (1.0 + w * sq / (2.0 * t * t)),
            DiffKind::KUpperMinusHalfSquare => pow_pos(k, exps.r_max) - (1.0 + w * sq / 2.0),
            DiffKind::KLowerMinusRecipSquare => pow_pos(k, exps.r_min) - recip(1.0 - 0.5 * w * sq),
            DiffKind::KLowerMinusRecipInvSquare => {
                pow_pos(k, exps.r_min) - recip(1.0 - w / (2.0 * t * t) * sq)
            }
            DiffKind::DeformMinusRatio => match exp_r(r.unwrap_or(1.0), w * sq / t) {
                Ok(e) => e - young_ratio(p),
                Err(_) => f64::NAN,
            },
        }
    }
}

/// Signed value of a registered difference function.
pub fn eval_diff(diff_id: &str, p: EvalPoint, r: Option<f64>) -> Result<f64> {
    let spec = find_diff(diff_id)?;
    let value = spec.evaluate(p, r)?;
    if value.is_nan() {
        return Err(Error::Domain(format!(
            "{} undefined at t={}, v={}",
            spec.id,
            p.t(),
            p.v()
        )));
    }
    Ok(value)
}

/// Two points at which a difference function takes opposite signs, both
/// beyond `delta` in magnitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonOrderingWitness {
    pub diff_id: String,
    pub point_pos: EvalPoint,
    pub value_pos: f64,
    pub point_neg: EvalPoint,
    pub value_neg: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy)]
struct Extremes {
    max: Option<(EvalPoint, f64)>,
    min: Option<(EvalPoint, f64)>,
}

impl Extremes {
    fn offer(&mut self, p: EvalPoint, value: f64) {
        if value.is_nan() {
            return;
        }
        if self.max.is_none_or(|(_, m)| value > m) {
            self.max = Some((p, value));
        }
        if self.min.is_none_or(|(_, m)| value < m) {
            self.min = Some((p, value));
        }
    }

    fn witness(&self, diff_id: &str, delta: f64) -> Option<NonOrderingWitness> {
        let (point_pos, value_pos) = self.max?;
        let (point_neg, value_neg) = self.min?;
        (value_pos > delta && value_neg < -delta).then(|| NonOrderingWitness {
            diff_id: diff_id.to_string(),
            point_pos,
            value_pos,
            point_neg,
            value_neg,
            delta,
        })
    }
}

/// Search `region` for a non-ordering witness of `diff_id`.
///
/// Scans the coarse grid, then for each of `refine_depth` rounds rescans a
/// window of one coarse cell around the current maximum and minimum at a
/// spacing ten times finer than the previous round.
pub fn find_sign_change(
    diff_id: &str,
    region: &Region,
    delta: f64,
    refine_depth: usize,
    r: Option<f64>,
) -> Result<NonOrderingWitness> {
    let spec = find_diff(diff_id)?;
    if !spec.region.contains_interval(region.t_min, region.t_max) {
        return Err(Error::Region(format!(
            "grid t in [{}, {}] leaves the {} region of {}",
            region.t_min,
            region.t_max,
            spec.region.as_str(),
            spec.id
        )));
    }
    let r = spec.check_r(r)?;

    let mut ext = Extremes { max: None, min: None };
    for (p, value) in scan(region, |p| spec.value(p, r)) {
        ext.offer(p, value);
    }
    if let Some(w) = ext.witness(spec.id, delta) {
        return Ok(w);
    }

    let (t_lo, t_hi) = (region.t_coord(region.t_min), region.t_coord(region.t_max));
    let (mut dt, mut dv) = (region.t_step(), region.v_step());
    for _ in 0..refine_depth {
        dt /= 10.0;
        dv /= 10.0;
        let centres: Vec<EvalPoint> = [ext.max, ext.min].into_iter().flatten().map(|(p, _)| p).collect();
        for centre in centres {
            let (ct, cv) = (region.t_coord(centre.t()), centre.v());
            for i in -10i32..=10 {
                let c = (ct + i as f64 * dt).clamp(t_lo, t_hi);
                let t = region.t_from_coord(c).clamp(region.t_min, region.t_max);
                for j in -10i32..=10 {
                    let v = (cv + j as f64 * dv).clamp(region.v_min, region.v_max);
                    let p = EvalPoint::new(t, v).expect("clamped into the region");
                    ext.offer(p, spec.value(p, r));
                }
            }
        }
        if let Some(w) = ext.witness(spec.id, delta) {
            return Ok(w);
        }
    }
    Err(Error::NotFound {
        diff_id: spec.id.to_string(),
        delta,
        max_value: ext.max.map_or(f64::NAN, |(_, v)| v),
        min_value: ext.min.map_or(f64::NAN, |(_, v)| v),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemarkRow {
    pub label: String,
    pub paper_value: f64,
    pub computed: f64,
    pub abs_error: f64,
}

struct RemarkInput {
    label: &'static str,
    diff_id: &'static str,
    t: f64,
    v: f64,
    r: Option<f64>,
    reference: f64,
}

const fn remark(label: &'static str, diff_id: &'static str, t: f64, v: f64, reference: f64) -> RemarkInput {
    RemarkInput {
        label,
        diff_id,
        t,
        v,
        r: None,
        reference,
    }
}

/// Reference values, printed to six significant figures in the source.
static REMARKS: [RemarkInput; 15] = [
    remark("l(1/2,1/5)", "diff-l", 1.0 / 2.0, 1.0 / 5.0, 0.0155215),
    remark("l(1/4,1/5)", "diff-l", 1.0 / 4.0, 1.0 / 5.0, -0.00425113),
    remark("l(3,1/5)", "diff-l", 3.0, 1.0 / 5.0, 0.0209862),
    remark("l(5,1/5)", "diff-l", 5.0, 1.0 / 5.0, -0.0682639),
    remark("u_1(1/2,0.6)", "diff-u1", 1.0 / 2.0, 0.6, -0.0467732),
    remark("u_1(1/2,0.9)", "diff-u1", 1.0 / 2.0, 0.9, 0.0668271),
    remark("u_2(1/2,0.6)", "diff-u2", 1.0 / 2.0, 0.6, -0.0467732),
    remark("u_2(1/2,0.9)", "diff-u2", 1.0 / 2.0, 0.9, 0.0668271),
    remark("u_3(2,0.6)", "diff-u3", 2.0, 0.6, -0.0467732),
    remark("u_3(2,0.9)", "diff-u3", 2.0, 0.9, 0.0668271),
    remark("l_1(3/5,0.1)", "diff-l1", 3.0 / 5.0, 0.1, -0.000777493),
    remark("l_1(3/5,0.4)", "diff-l1", 3.0 / 5.0, 0.4, 0.00657566),
    remark("l_2(5/3,0.1)", "diff-l2", 5.0 / 3.0, 0.1, -0.000777493),
    remark("l_2(5/3,0.4)", "diff-l2", 5.0 / 3.0, 0.4, 0.00657566),
    RemarkInput {
        label: "ropt",
        diff_id: "diff-ropt",
        t: 1e-6,
        v: 0.999999,
        r: Some(1.001),
        reference: -0.000360488,
    },
];

/// Recompute every reference value at its exact inputs.
pub fn reproduce_remarks() -> Vec<RemarkRow> {
    REMARKS
        .iter()
        .map(|row| {
            let p = EvalPoint::new(row.t, row.v).expect("reference inputs are valid");
            let computed = eval_diff(row.diff_id, p, row.r).expect("reference inputs are in region");
            RemarkRow {
                label: row.label.to_string(),
                paper_value: row.reference,
                computed,
                abs_error: (computed - row.reference).abs(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(t: f64, v: f64) -> EvalPoint {
        EvalPoint::new(t, v).unwrap()
    }

    #[test]
    fn region_validation() {
        assert!(Region::new(1.0, 2.0, 0.0, 1.0, TScale::Log, 1, 5).is_err());
        assert!(Region::new(1.0, 2.0, 0.0, 1.0, TScale::Log, 5, 1).is_err());
        assert!(Region::new(0.0, 2.0, 0.0, 1.0, TScale::Log, 5, 5).is_err());
        assert!(Region::new(3.0, 2.0, 0.0, 1.0, TScale::Log, 5, 5).is_err());
        assert!(Region::new(1.0, 2.0, 0.5, 0.4, TScale::Log, 5, 5).is_err());
        assert!(Region::new(1.0, 2.0, 0.0, 1.1, TScale::Log, 5, 5).is_err());
        assert!(Region::new(1.0, 1.0, 0.5, 0.5, TScale::Linear, 2, 2).is_ok());
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let r = Region::new(1e-3, 1.0, 0.0, 1.0, TScale::Log, 200, 101).unwrap();
        let ts = r.t_values();
        assert_eq!(ts.len(), 200);
        assert_eq!(ts[0], 1e-3);
        assert_eq!(ts[199], 1.0);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        let vs = r.v_values();
        assert_eq!((vs[0], vs[50], vs[100]), (0.0, 0.5, 1.0));
    }

    #[test]
    fn sweep_examples() {
        let rep = sweep("T31-poly", &Region::default_for(ValidRegion::AllT), None, 1e-12).unwrap();
        assert_eq!((rep.n_points, rep.n_violations), (20_200, 0));

        let region = Region::new(0.01, 1.0, 0.0, 1.0, TScale::Log, 200, 101).unwrap();
        let rep = sweep("D2-hi-le1", &region, None, 1e-12).unwrap();
        assert_eq!(rep.n_violations, 0);

        let region = Region::new(1.0, 1.0, 0.0, 1.0, TScale::Linear, 2, 11).unwrap();
        let rep = sweep("K-lower", &region, None, 1e-12).unwrap();
        assert_eq!(rep.min_margin, 0.0);
        assert_eq!(rep.argmin_point.t(), 1.0);
    }

    #[test]
    fn sweep_region_mismatch() {
        let region = Region::default_for(ValidRegion::AllT);
        assert!(matches!(
            sweep("FM-M", &region, None, 1e-12),
            Err(Error::Region(_))
        ));
        assert!(matches!(
            sweep("nope", &region, None, 1e-12),
            Err(Error::UnknownBound(_))
        ));
    }

    #[test]
    fn eval_diff_examples() {
        assert!((eval_diff("diff-l", pt(0.5, 0.2), None).unwrap() - 0.0155215).abs() < 1e-7);
        assert!((eval_diff("diff-u1", pt(0.5, 0.6), None).unwrap() + 0.0467732).abs() < 1e-7);
        assert!((eval_diff("diff-l1", pt(0.6, 0.1), None).unwrap() + 0.000777493).abs() < 1e-9);
    }

    #[test]
    fn eval_diff_errors() {
        assert!(matches!(
            eval_diff("diff-x", pt(0.5, 0.2), None),
            Err(Error::UnknownDiff(_))
        ));
        assert!(matches!(
            eval_diff("diff-u2", pt(2.0, 0.2), None),
            Err(Error::Region(_))
        ));
        assert!(matches!(
            eval_diff("diff-u3", pt(0.5, 0.2), None),
            Err(Error::Region(_))
        ));
        assert!(matches!(
            eval_diff("diff-ropt", pt(0.5, 0.2), None),
            Err(Error::InvalidDeform(_))
        ));
        assert!(matches!(
            eval_diff("diff-l", pt(0.5, 0.2), Some(1.0)),
            Err(Error::InvalidDeform(_))
        ));
        // exp_{-1}(x) is undefined for x >= 1.
        assert!(matches!(
            eval_diff("diff-ropt", pt(100.0, 0.5), Some(-1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn witness_u1() {
        let region = Region::default_on(0.1, 1.0).unwrap();
        let w = find_sign_change("diff-u1", &region, 1e-3, 3, None).unwrap();
        assert!(w.value_pos > 1e-3 && w.value_neg < -1e-3);
        assert_eq!(eval_diff("diff-u1", w.point_pos, None).unwrap(), w.value_pos);
        assert_eq!(eval_diff("diff-u1", w.point_neg, None).unwrap(), w.value_neg);
        // The reference points are witnesses too.
        assert!(eval_diff("diff-u1", pt(0.5, 0.9), None).unwrap() > 1e-3);
        assert!(eval_diff("diff-u1", pt(0.5, 0.6), None).unwrap() < -1e-3);
    }

    #[test]
    fn witness_l_on_t_ge_one() {
        let region = Region::default_on(1.0, 10.0).unwrap();
        let w = find_sign_change("diff-l", &region, 1e-3, 3, None).unwrap();
        assert!(w.value_pos > 1e-3 && w.value_neg < -1e-3);
    }

    #[test]
    fn one_sign_region_is_not_found() {
        let region = Region::new(2.0, 2.0, 0.6, 0.6, TScale::Linear, 2, 2).unwrap();
        let err = find_sign_change("diff-u3", &region, 1e-3, 3, None).unwrap_err();
        assert!(matches!(err, Error::NotFound { .. }));
    }

    #[test]
    fn witness_is_deterministic() {
        let region = Region::default_for(ValidRegion::TLeOne);
        let a = find_sign_change("diff-l1", &region, 1e-4, 3, None).unwrap();
        let b = find_sign_change("diff-l1", &region, 1e-4, 3, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn remark_rows() {
        let rows = reproduce_remarks();
        assert_eq!(rows.len(), 15);
        let by = |l: &str| rows.iter().find(|r| r.label == l).unwrap().computed;
        assert!((by("l(1/4,1/5)") + 0.00425113).abs() < 1e-8);
        assert!((by("ropt") + 0.000360488).abs() < 1e-9);
        assert!((by("l_2(5/3,0.4)") - 0.00657566).abs() < 1e-8);
        assert!(rows.iter().all(|r| r.abs_error <= REMARK_TOL));
    }
}
