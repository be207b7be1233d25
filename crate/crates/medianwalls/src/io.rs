//! File formats: wall-space JSON, distance-matrix JSON, audit reports and
//! the DOT view of a median space's 1-skeleton.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::audit::AuditReport;
use crate::error::{Error, Result};
use crate::medianization::FiniteMedianSpace;
use crate::metric::FiniteMetricSpace;
use crate::wallspace::{Side, WallSpace};
use crate::Weight;

#[derive(Serialize, Deserialize)]
struct RatJson {
    num: i64,
    den: i64,
}

impl From<Weight> for RatJson {
    fn from(w: Weight) -> Self {
        RatJson {
            num: *w.numer(),
            den: *w.denom(),
        }
    }
}

impl TryFrom<RatJson> for Weight {
    type Error = Error;
    fn try_from(r: RatJson) -> Result<Weight> {
        if r.den == 0 {
            return Err(Error::input("rational with zero denominator"));
        }
        Ok(Weight::new(r.num, r.den))
    }
}

pub fn rat_value(w: Weight) -> Value {
    json!({ "num": *w.numer(), "den": *w.denom() })
}

#[derive(Serialize, Deserialize)]
struct WallJson {
    side_a: Vec<String>,
    weight: RatJson,
}

#[derive(Serialize, Deserialize)]
struct WallSpaceJson {
    points: Vec<String>,
    walls: Vec<WallJson>,
}

/// Serialize a wall space in the on-disk JSON format (side_b is implied).
pub fn wallspace_to_json(x: &WallSpace) -> String {
    let doc = WallSpaceJson {
        points: x.labels().to_vec(),
        walls: x
            .walls()
            .iter()
            .map(|w| WallJson {
                side_a: w
                    .side(Side::A)
                    .iter()
                    .map(|i| x.labels()[i].clone())
                    .collect(),
                weight: w.weight().into(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("wall space serializes")
}

/// Parse the wall-space format; side_a entries must name known points.
pub fn wallspace_from_json(text: &str) -> Result<WallSpace> {
    let doc: WallSpaceJson =
        serde_json::from_str(text).map_err(|e| Error::input(format!("wall-space parse: {e}")))?;
    let mut x = WallSpace::new(doc.points)?;
    for (i, w) in doc.walls.into_iter().enumerate() {
        let weight: Weight = w.weight.try_into()?;
        x.add_wall_by_labels(w.side_a.iter().map(|s| s.as_str()), weight)
            .map_err(|e| Error::input(format!("wall {i}: {e}")))?;
    }
    Ok(x)
}

#[derive(Serialize, Deserialize)]
struct DistMatrixJson {
    points: Vec<String>,
    dist: Vec<Vec<f64>>,
}

/// Distance-matrix file format with floating entries.
pub fn metric_to_json(labels: &[String], dist: impl Fn(usize, usize) -> f64) -> String {
    let n = labels.len();
    let doc = DistMatrixJson {
        points: labels.to_vec(),
        dist: (0..n)
            .map(|i| (0..n).map(|j| dist(i, j)).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("distance matrix serializes")
}

pub fn metric_from_json(text: &str) -> Result<FiniteMetricSpace<f64>> {
    let doc: DistMatrixJson = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("distance-matrix parse: {e}")))?;
    FiniteMetricSpace::new(doc.points, doc.dist)
}

/// The median space as a distance-matrix document.
pub fn median_space_to_json(m: &FiniteMedianSpace) -> String {
    let labels: Vec<String> = (0..m.len()).map(|i| m.section_label(i)).collect();
    metric_to_json(&labels, |i, j| rat_to_f64(m.dist(i, j)))
}

pub fn rat_to_f64(w: Weight) -> f64 {
    *w.numer() as f64 / *w.denom() as f64
}

/// DOT graph of the median space: vertices are sections, edges join sections
/// whose orientations differ on exactly one wall, labeled by that wall.
pub fn median_space_to_dot(m: &FiniteMedianSpace) -> String {
    let mut out = String::from("graph median {\n");
    for i in 0..m.len() {
        out.push_str(&format!("  \"{}\";\n", m.section_label(i)));
    }
    let walls = m.wall_space().wall_count();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let differing: Vec<usize> = (0..walls)
                .filter(|&w| m.sections()[i].side(w) != m.sections()[j].side(w))
                .collect();
            if differing.len() == 1 {
                out.push_str(&format!(
                    "  \"{}\" -- \"{}\" [label=\"w{}\"];\n",
                    m.section_label(i),
                    m.section_label(j),
                    differing[0]
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Audit report as JSON with a stable field order.
pub fn audit_report_to_json(r: &AuditReport) -> String {
    let doc = json!({
        "eta": rat_value(r.eta),
        "delta": rat_value(r.delta),
        "D": rat_value(r.d_neighborhood),
        "K": rat_value(r.k_projection),
        "rank": r.rank,
        "f_profile": r.f_profile.iter().map(|(radius, bound)| json!({
            "radius": rat_value(*radius),
            "bound": rat_value(*bound),
        })).collect::<Vec<_>>(),
        "quantitative_checks": r.quantitative_checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&doc).expect("audit report serializes")
}

/// Human-readable table for the CLI.
pub fn audit_report_table(r: &AuditReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("eta (Hausdorff to median space)  {}\n", r.eta));
    out.push_str(&format!("delta (tripodal constant)        {}\n", r.delta));
    out.push_str(&format!(
        "D (half-space neighborhood)      {}\n",
        r.d_neighborhood
    ));
    out.push_str(&format!(
        "K (condition-4 constant)         {}\n",
        r.k_projection
    ));
    out.push_str(&format!("rank                             {}\n", r.rank));
    out.push_str("f-profile:\n");
    for (radius, bound) in &r.f_profile {
        out.push_str(&format!("  f({radius}) = {bound}\n"));
    }
    out.push_str("checks:\n");
    for c in &r.quantitative_checks {
        out.push_str(&format!(
            "  [{}] {}: {}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    out
}

/// Structural equality of two wall spaces (labels, partitions, weights,
/// wall order).
pub fn structurally_equal(a: &WallSpace, b: &WallSpace) -> bool {
    a.labels() == b.labels()
        && a.wall_count() == b.wall_count()
        && a.walls().iter().zip(b.walls()).all(|(x, y)| x == y)
}

impl WallSpace {
    /// True when every wall weight is zero or the space has no walls; used
    /// by callers that need a quick degeneracy probe before division.
    pub fn total_weight_is_zero(&self) -> bool {
        self.walls().iter().map(|w| w.weight()).sum::<Weight>() == Weight::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::medianization::{enumerate_sections, DEFAULT_WALL_BUDGET};

    #[test]
    fn wallspace_roundtrip() {
        for x in [
            fixtures::path(3),
            fixtures::tripod_star(3),
            fixtures::hypercube(3),
            fixtures::random_nested(8, 11),
            fixtures::random_transverse(8, 11),
        ] {
            let text = wallspace_to_json(&x);
            let back = wallspace_from_json(&text).unwrap();
            assert!(structurally_equal(&x, &back));
        }
    }

    #[test]
    fn loader_rejects_unknown_points() {
        let text = r#"{ "points": ["a"], "walls": [ { "side_a": ["zzz"], "weight": {"num":1,"den":1} } ] }"#;
        let err = wallspace_from_json(text).unwrap_err();
        assert!(err.to_string().contains("zzz"));
    }

    #[test]
    fn dot_export_shapes() {
        let m = enumerate_sections(&fixtures::path(3), DEFAULT_WALL_BUDGET).unwrap();
        let dot = median_space_to_dot(&m);
        assert_eq!(dot.matches(" -- ").count(), 2); // 3-vertex path

        let m = enumerate_sections(&fixtures::tripod_star(3), DEFAULT_WALL_BUDGET).unwrap();
        let dot = median_space_to_dot(&m);
        assert_eq!(dot.matches(" -- ").count(), 3); // 4-vertex star
    }

    #[test]
    fn metric_json_parses_back() {
        let m = enumerate_sections(&fixtures::tripod_star(3), DEFAULT_WALL_BUDGET).unwrap();
        let text = median_space_to_json(&m);
        let s = metric_from_json(&text).unwrap();
        assert_eq!(s.len(), 4);
    }
}
