//! Registry of bounds on the Young ratio `R(t, v) = ((1 - v) + v t) / t^v`.
//!
//! Every entry carries its side, the region of `t` on which it is a theorem,
//! and (for the deformed-exponential families) the admissible range of the
//! deformation parameter. The catalog is a static table; all queries are
//! read-only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{exp_r, kantorovich_unchecked, pow_pos, young_ratio, DeformParam, EvalPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "upper" => Ok(Side::Upper),
            "lower" => Ok(Side::Lower),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

/// Range of `t` on which a bound holds. `t = 1` belongs to both half-lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ValidRegion {
    #[serde(rename = "all-t")]
    AllT,
    #[serde(rename = "t-le-1")]
    TLeOne,
    #[serde(rename = "t-ge-1")]
    TGeOne,
}

impl ValidRegion {
    pub fn contains(self, t: f64) -> bool {
        match self {
            ValidRegion::AllT => t > 0.0,
            ValidRegion::TLeOne => t > 0.0 && t <= 1.0,
            ValidRegion::TGeOne => t >= 1.0,
        }
    }

    /// True when every `t` in `[t_min, t_max]` lies in the region.
    pub fn contains_interval(self, t_min: f64, t_max: f64) -> bool {
        self.contains(t_min) && self.contains(t_max)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ValidRegion::AllT => "all-t",
            ValidRegion::TLeOne => "t-le-1",
            ValidRegion::TGeOne => "t-ge-1",
        }
    }
}

/// Admissible deformation parameters for a family entry: an interval that is
/// open at zero, plus the value used when the caller supplies none.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformRange {
    pub min: f64,
    pub max: f64,
    pub default: f64,
}

impl DeformRange {
    /// `(0, 1]`
    const POSITIVE: DeformRange = DeformRange {
        min: 0.0,
        max: 1.0,
        default: 1.0,
    };
    /// `[-1, 0)`
    const NEGATIVE: DeformRange = DeformRange {
        min: -1.0,
        max: 0.0,
        default: -1.0,
    };

    pub fn admits(&self, r: f64) -> bool {
        if self.min == 0.0 {
            r > 0.0 && r <= self.max
        } else {
            r >= self.min && r < self.max
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Formula {
    ExpFull,
    KUpper,
    KLower,
    ExpHalfSquare,
    ExpHalfInvSquare,
    FmLower,
    FmUpper,
    PolyFull,
    DeformFull,
    RecipHalfSquare,
    PolyHalfInvSquare,
    RecipHalfInvSquare,
    PolyHalfSquare,
    DeformLowerUnified,
    DeformUpperUnified,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundSpec {
    pub id: &'static str,
    pub side: Side,
    pub region: ValidRegion,
    pub deform: Option<DeformRange>,
    pub description: &'static str,
    #[serde(skip)]
    formula: Formula,
}

macro_rules! bound {
    ($id:expr, $side:ident, $region:ident, $deform:expr, $formula:ident, $desc:expr) => {
        BoundSpec {
            id: $id,
            side: Side::$side,
            region: ValidRegion::$region,
            deform: $deform,
            description: $desc,
            formula: Formula::$formula,
        }
    };
}

static CATALOG: [BoundSpec; 17] = [
    bound!(
        "D1-exp",
        Upper,
        AllT,
        None,
        ExpFull,
        "exp(v(1-v)(t-1)^2/t), exponential refinement valid for all t"
    ),
    bound!(
        "K-upper",
        Upper,
        AllT,
        None,
        KUpper,
        "K(t)^max{v,1-v}, Kantorovich power upper bound"
    ),
    bound!(
        "K-lower",
        Lower,
        AllT,
        None,
        KLower,
        "K(t)^min{v,1-v}, Kantorovich power lower bound"
    ),
    bound!(
        "D2-lo-le1",
        Lower,
        TLeOne,
        None,
        ExpHalfSquare,
        "exp((v(1-v)/2)(t-1)^2) for 0 < t <= 1"
    ),
    bound!(
        "D2-hi-le1",
        Upper,
        TLeOne,
        None,
        ExpHalfInvSquare,
        "exp((v(1-v)/2)(1/t-1)^2) for 0 < t <= 1"
    ),
    bound!(
        "D2-lo-ge1",
        Lower,
        TGeOne,
        None,
        ExpHalfInvSquare,
        "exp((v(1-v)/2)(1/t-1)^2) for t >= 1"
    ),
    bound!(
        "D2-hi-ge1",
        Upper,
        TGeOne,
        None,
        ExpHalfSquare,
        "exp((v(1-v)/2)(t-1)^2) for t >= 1"
    ),
    bound!(
        "FM-m",
        Lower,
        TLeOne,
        None,
        FmLower,
        "m_v(t) = 1 + (v(1-v)(t-1)^2/2)((t+1)/2)^(-v-1) for 0 < t <= 1"
    ),
    bound!(
        "FM-M",
        Upper,
        TLeOne,
        None,
        FmUpper,
        "M_v(t) = 1 + (v(1-v)(t-1)^2/2) t^(-v-1) for 0 < t <= 1"
    ),
    bound!(
        "T31-poly",
        Upper,
        AllT,
        None,
        PolyFull,
        "1 + v(1-v)(t-1)^2/t, polynomial upper bound valid for all t"
    ),
    bound!(
        "C33-expr",
        Upper,
        AllT,
        Some(DeformRange::POSITIVE),
        DeformFull,
        "exp_r(v(1-v)(t-1)^2/t) for 0 < r <= 1"
    ),
    bound!(
        "T36-lo-le1",
        Lower,
        TLeOne,
        None,
        RecipHalfSquare,
        "1/(1 - (v(1-v)/2)(t-1)^2) for 0 < t <= 1"
    ),
    bound!(
        "T36-hi-le1",
        Upper,
        TLeOne,
        None,
        PolyHalfInvSquare,
        "1 + (v(1-v)/2)(1/t-1)^2 for 0 < t <= 1"
    ),
    bound!(
        "T36-lo-ge1",
        Lower,
        TGeOne,
        None,
        RecipHalfInvSquare,
        "1/(1 - (v(1-v)/2)(1/t-1)^2) for t >= 1"
    ),
    bound!(
        "T36-hi-ge1",
        Upper,
        TGeOne,
        None,
        PolyHalfSquare,
        "1 + (v(1-v)/2)(t-1)^2 for t >= 1"
    ),
    bound!(
        "C38-lo",
        Lower,
        AllT,
        Some(DeformRange::NEGATIVE),
        DeformLowerUnified,
        "exp_r1((v(1-v)/2)(1 - min{1,t}/max{1,t})^2) for -1 <= r1 < 0"
    ),
    bound!(
        "C38-hi",
        Upper,
        AllT,
        Some(DeformRange::POSITIVE),
        DeformUpperUnified,
        "exp_r2((v(1-v)/2)(1 - max{1,t}/min{1,t})^2) for 0 < r2 <= 1"
    ),
];

/// All catalog entries in their stable order.
pub fn list_bounds() -> &'static [BoundSpec] {
    &CATALOG
}

pub fn find_bound(id: &str) -> Result<&'static BoundSpec> {
    CATALOG
        .iter()
        .find(|b| b.id == id)
        .ok_or_else(|| Error::UnknownBound(id.to_string()))
}

fn reciprocal(denominator: f64) -> Result<f64> {
    if denominator <= 0.0 {
        return Err(Error::Domain(format!("nonpositive denominator {denominator}")));
    }
    Ok(1.0 / denominator)
}

impl BoundSpec {
    /// Resolve the deformation parameter against this entry's admissible range.
    pub fn resolve_deform(&self, deform: Option<DeformParam>) -> Result<Option<f64>> {
        match (self.deform, deform) {
            (None, None) => Ok(None),
            (None, Some(r)) => Err(Error::InvalidDeform(format!(
                "bound {} takes no deformation parameter (got r={})",
                self.id,
                r.value()
            ))),
            (Some(range), None) => Ok(Some(range.default)),
            (Some(range), Some(r)) if range.admits(r.value()) => Ok(Some(r.value())),
            (Some(range), Some(r)) => Err(Error::Domain(format!(
                "r={} outside the admissible range of {} ({}, {})",
                r.value(),
                self.id,
                range.min,
                range.max
            ))),
        }
    }

    pub fn evaluate(&self, p: EvalPoint, deform: Option<DeformParam>) -> Result<f64> {
        if !self.region.contains(p.t()) {
            return Err(Error::Region(format!(
                "bound {} is valid on {} but t={}",
                self.id,
                self.region.as_str(),
                p.t()
            )));
        }
        let r = self.resolve_deform(deform)?;
        self.formula_value(p, r)
    }

    fn formula_value(&self, p: EvalPoint, r: Option<f64>) -> Result<f64> {
        let (t, v) = (p.t(), p.v());
        let w = p.weight_product();
        let half = 0.5 * w;
        let sq = (t - 1.0) * (t - 1.0);
        let inv_sq = {
            let d = 1.0 / t - 1.0;
            d * d
        };
        let value = match self.formula {
            Formula::ExpFull => (w * sq / t).exp(),
            Formula::KUpper => pow_pos(kantorovich_unchecked(t), p.exponents().r_max),
            Formula::KLower => pow_pos(kantorovich_unchecked(t), p.exponents().r_min),
            Formula::ExpHalfSquare => (half * sq).exp(),
            Formula::ExpHalfInvSquare => (half * inv_sq).exp(),
            Formula::FmLower => 1.0 + half * sq * pow_pos(0.5 * (t + 1.0), -v - 1.0),
            Formula::FmUpper => 1.0 + half * sq * pow_pos(t, -v - 1.0),
            Formula::PolyFull => 1.0 + w * sq / t,
            Formula::DeformFull => exp_r(r.unwrap_or(1.0), w * sq / t)?,
            Formula::RecipHalfSquare => reciprocal(1.0 - half * sq)?,
            Formula::PolyHalfInvSquare => 1.0 + half * inv_sq,
            Formula::RecipHalfInvSquare => reciprocal(1.0 - half * inv_sq)?,
            Formula::PolyHalfSquare => 1.0 + half * sq,
            Formula::DeformLowerUnified => {
                let d = 1.0 - t.min(1.0) / t.max(1.0);
                exp_r(r.unwrap_or(-1.0), half * d * d)?
            }
            Formula::DeformUpperUnified => {
                let d = 1.0 - t.max(1.0) / t.min(1.0);
                exp_r(r.unwrap_or(1.0), half * d * d)?
            }
        };
        Ok(value)
    }

    /// Signed distance from the ratio to the bound, positive when the bound
    /// holds.
    pub fn margin(&self, ratio: f64, bound: f64) -> f64 {
        match self.side {
            Side::Upper => bound - ratio,
            Side::Lower => ratio - bound,
        }
    }
}

/// Value of bound `id` at `p`.
pub fn evaluate(id: &str, p: EvalPoint, deform: Option<DeformParam>) -> Result<f64> {
    find_bound(id)?.evaluate(p, deform)
}

/// Outcome of checking one bound at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub bound_id: String,
    pub point: EvalPoint,
    pub ratio_value: f64,
    pub bound_value: f64,
    pub margin: f64,
    pub holds: bool,
    pub tol: f64,
}

pub fn certify_point(id: &str, p: EvalPoint, deform: Option<DeformParam>, tol: f64) -> Result<Certificate> {
    let spec = find_bound(id)?;
    let bound_value = spec.evaluate(p, deform)?;
    Ok(certificate_for(spec, p, bound_value, tol))
}

pub(crate) fn certificate_for(spec: &BoundSpec, p: EvalPoint, bound_value: f64, tol: f64) -> Certificate {
    let ratio_value = young_ratio(p);
    let margin = spec.margin(ratio_value, bound_value);
    Certificate {
        bound_id: spec.id.to_string(),
        point: p,
        ratio_value,
        bound_value,
        margin,
        holds: margin >= -tol,
        tol,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tightest {
    pub id: String,
    pub value: f64,
}

/// Minimal upper (or maximal lower) bound among the entries valid at `p`,
/// each family taken at its tightest deformation. Ties go to the earlier
/// catalog entry.
pub fn tightest(side: Side, p: EvalPoint) -> Tightest {
    let mut best: Option<(&'static str, f64)> = None;
    for spec in CATALOG
        .iter()
        .filter(|b| b.side == side && b.region.contains(p.t()))
    {
        let Ok(value) = spec.evaluate(p, None) else {
            continue;
        };
        let better = match best {
            None => true,
            Some((_, current)) => match side {
                Side::Upper => value < current,
                Side::Lower => value > current,
            },
        };
        if better {
            best = Some((spec.id, value));
        }
    }
    // D1-exp and K-lower are defined everywhere, so `best` is always set.
    let (id, value) = best.expect("catalog has an all-t entry on each side");
    Tightest {
        id: id.to_string(),
        value,
    }
}

/// Margins of the ordering chain on `0 < t <= 1`:
/// `D2-lo-le1 <= FM-m <= R <= FM-M <= D2-hi-le1`, together with
/// `T36-lo-le1 <= FM-m` and `FM-M <= T36-hi-le1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub point: EvalPoint,
    pub links: Vec<ChainLink>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub smaller: String,
    pub larger: String,
    pub margin: f64,
}

impl ChainReport {
    pub fn min_margin(&self) -> f64 {
        self.links.iter().map(|l| l.margin).fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.links.iter().all(|l| l.margin >= -tol)
    }
}

pub fn chain_check(p: EvalPoint) -> Result<ChainReport> {
    if !ValidRegion::TLeOne.contains(p.t()) {
        return Err(Error::Region(format!(
            "ordering chain needs t <= 1, got t={}",
            p.t()
        )));
    }
    let value = |id: &str| evaluate(id, p, None);
    let d2_lo = value("D2-lo-le1")?;
    let fm_m = value("FM-m")?;
    let ratio = young_ratio(p);
    let fm_big = value("FM-M")?;
    let d2_hi = value("D2-hi-le1")?;
    let t36_lo = value("T36-lo-le1")?;
    let t36_hi = value("T36-hi-le1")?;

    let link = |smaller: &str, larger: &str, lo: f64, hi: f64| ChainLink {
        smaller: smaller.to_string(),
        larger: larger.to_string(),
        margin: hi - lo,
    };
    Ok(ChainReport {
        point: p,
        links: vec![
            link("D2-lo-le1", "FM-m", d2_lo, fm_m),
            link("FM-m", "ratio", fm_m, ratio),
            link("ratio", "FM-M", ratio, fm_big),
            link("FM-M", "D2-hi-le1", fm_big, d2_hi),
            link("T36-lo-le1", "FM-m", t36_lo, fm_m),
            link("FM-M", "T36-hi-le1", fm_big, t36_hi),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::kantorovich;

    fn pt(t: f64, v: f64) -> EvalPoint {
        EvalPoint::new(t, v).unwrap()
    }

    const IDS: [&str; 17] = [
        "D1-exp",
        "K-upper",
        "K-lower",
        "D2-lo-le1",
        "D2-hi-le1",
        "D2-lo-ge1",
        "D2-hi-ge1",
        "FM-m",
        "FM-M",
        "T31-poly",
        "C33-expr",
        "T36-lo-le1",
        "T36-hi-le1",
        "T36-lo-ge1",
        "T36-hi-ge1",
        "C38-lo",
        "C38-hi",
    ];

    #[test]
    fn catalog_census() {
        let ids: Vec<_> = list_bounds().iter().map(|b| b.id).collect();
        assert_eq!(ids, IDS);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());

        let t31 = find_bound("T31-poly").unwrap();
        assert_eq!((t31.side, t31.region), (Side::Upper, ValidRegion::AllT));
        assert_eq!(find_bound("FM-m").unwrap().region, ValidRegion::TLeOne);
        assert!(matches!(find_bound("nope"), Err(Error::UnknownBound(_))));
    }

    #[test]
    fn evaluate_examples() {
        assert!((evaluate("T31-poly", pt(4.0, 0.5), None).unwrap() - 1.5625).abs() < 1e-15);
        assert_eq!(evaluate("D1-exp", pt(1.0, 0.7), None).unwrap(), 1.0);
        assert!((evaluate("FM-M", pt(0.25, 0.5), None).unwrap() - 1.5625).abs() < 1e-14);
    }

    #[test]
    fn evaluate_errors() {
        assert!(matches!(
            evaluate("FM-M", pt(2.0, 0.5), None),
            Err(Error::Region(_))
        ));
        assert!(matches!(
            evaluate("T36-hi-ge1", pt(0.5, 0.5), None),
            Err(Error::Region(_))
        ));
        assert!(matches!(
            evaluate("bogus", pt(0.5, 0.5), None),
            Err(Error::UnknownBound(_))
        ));
        let r = |x: f64| Some(DeformParam::new(x).unwrap());
        assert!(matches!(
            evaluate("C33-expr", pt(2.0, 0.5), r(-0.5)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            evaluate("C33-expr", pt(2.0, 0.5), r(0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            evaluate("C38-lo", pt(2.0, 0.5), r(0.5)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            evaluate("T31-poly", pt(2.0, 0.5), r(0.5)),
            Err(Error::InvalidDeform(_))
        ));
    }

    #[test]
    fn boundary_t_one_is_in_both_half_regions() {
        for spec in list_bounds() {
            let value = spec.evaluate(pt(1.0, 0.37), None).unwrap();
            assert_eq!(value, 1.0, "{}", spec.id);
        }
    }

    #[test]
    fn equality_weights_give_one() {
        for spec in list_bounds() {
            let t = if spec.region == ValidRegion::TGeOne {
                3.0
            } else {
                0.4
            };
            for v in [0.0, 1.0] {
                let b = spec.evaluate(pt(t, v), None).unwrap();
                if spec.id == "K-upper" {
                    assert_eq!(b, kantorovich(t).unwrap());
                } else {
                    assert!((b - 1.0).abs() < 1e-15, "{} at v={v}: {b}", spec.id);
                }
            }
        }
    }

    #[test]
    fn deform_defaults_are_tightest() {
        let p = pt(3.0, 0.3);
        let c33_default = evaluate("C33-expr", p, None).unwrap();
        let c33_one = evaluate("C33-expr", p, Some(DeformParam::new(1.0).unwrap())).unwrap();
        assert_eq!(c33_default, c33_one);
        assert_eq!(c33_default, evaluate("T31-poly", p, None).unwrap());
        let c38_lo = evaluate("C38-lo", p, None).unwrap();
        assert_eq!(c38_lo, evaluate("T36-lo-ge1", p, None).unwrap());
    }

    #[test]
    fn unified_corollary_forms_match_regional_theorems() {
        for (t, lo, hi) in [
            (0.3, "T36-lo-le1", "T36-hi-le1"),
            (5.0, "T36-lo-ge1", "T36-hi-ge1"),
        ] {
            let p = pt(t, 0.35);
            let a = evaluate("C38-lo", p, None).unwrap();
            let b = evaluate(lo, p, None).unwrap();
            assert!((a - b).abs() <= 1e-15 * b);
            let a = evaluate("C38-hi", p, None).unwrap();
            let b = evaluate(hi, p, None).unwrap();
            assert!((a - b).abs() <= 1e-15 * b);
        }
    }

    #[test]
    fn certify_examples() {
        let c = certify_point("T36-hi-ge1", pt(2.0, 0.5), None, 1e-12).unwrap();
        assert!(c.holds);
        let expected = 1.125 - 1.5 / 2f64.sqrt();
        assert!((c.margin - expected).abs() < 1e-14);
        assert!((c.margin - 0.0643).abs() < 1e-4);

        let c = certify_point("K-lower", pt(1.0, 0.5), None, 1e-12).unwrap();
        assert!(c.holds);
        assert_eq!(c.margin, 0.0);

        let c = certify_point(
            "C33-expr",
            pt(1e-6, 0.999999),
            Some(DeformParam::new(1.0).unwrap()),
            1e-12,
        )
        .unwrap();
        assert!(c.holds, "{c:?}");
    }

    #[test]
    fn tightest_examples() {
        let up = tightest(Side::Upper, pt(1.0, 0.5));
        assert_eq!(up.value, 1.0);
        assert_eq!(up.id, "D1-exp");

        // Exhaustive oracle over the catalog.
        let p = pt(0.25, 0.25);
        let up = tightest(Side::Upper, p);
        let mut best = f64::INFINITY;
        for spec in list_bounds()
            .iter()
            .filter(|b| b.side == Side::Upper && b.region.contains(p.t()))
        {
            best = best.min(spec.evaluate(p, None).unwrap());
        }
        assert_eq!(up.value, best);
        assert!(up.value <= evaluate("D1-exp", p, None).unwrap());

        let p = pt(0.5, 0.5);
        let lo = tightest(Side::Lower, p);
        let mut best = f64::NEG_INFINITY;
        for spec in list_bounds()
            .iter()
            .filter(|b| b.side == Side::Lower && b.region.contains(p.t()))
        {
            best = best.max(spec.evaluate(p, None).unwrap());
        }
        assert_eq!(lo.value, best);
        assert!(lo.value >= evaluate("K-lower", p, None).unwrap());
        assert!(lo.value <= young_ratio(p) + 1e-12);
    }

    #[test]
    fn chain_examples() {
        let rep = chain_check(pt(1.0, 0.5)).unwrap();
        assert_eq!(rep.links.len(), 6);
        assert!(rep.links.iter().all(|l| l.margin == 0.0));
        for (t, v) in [(0.5, 0.25), (0.1, 0.9)] {
            let rep = chain_check(pt(t, v)).unwrap();
            assert!(rep.links.iter().all(|l| l.margin >= 0.0), "{rep:?}");
        }
        assert!(matches!(chain_check(pt(1.5, 0.5)), Err(Error::Region(_))));
    }

    #[test]
    fn reciprocal_guard() {
        assert!(matches!(reciprocal(0.0), Err(Error::Domain(_))));
        assert!(matches!(reciprocal(-0.5), Err(Error::Domain(_))));
        assert_eq!(reciprocal(0.5).unwrap(), 2.0);
    }
}
