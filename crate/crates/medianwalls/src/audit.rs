//! Quantitative audit of the four equivalent finiteness conditions for a
//! finite wall space, with the constants relating it to its median space.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::medianization::{enumerate_sections, FiniteMedianSpace};
use crate::metric::FiniteMetricSpace;
use crate::wallspace::{PointId, WallSpace};
use crate::Weight;

/// One named inequality verdict from the quantitative audit.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The measured constants and verdicts for one wall space.
#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Hausdorff distance from the embedded space to its medianization.
    pub eta: Weight,
    /// Tripodal constant of the wall pseudo-metric.
    pub delta: Weight,
    /// Minimal half-space-neighborhood constant for that delta.
    pub d_neighborhood: Weight,
    /// Condition-(4) constant over 1-projections.
    pub k_projection: Weight,
    /// Local finiteness table (radius, bound) at the audit's probe radii.
    pub f_profile: Vec<(Weight, Weight)>,
    /// Rank of the medianization (max pairwise-crossing walls).
    pub rank: usize,
    pub quantitative_checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn all_checks_pass(&self) -> bool {
        self.quantitative_checks.iter().all(|c| c.passed)
    }
}

/// Hausdorff distance from the embedded copy of the space to its median
/// space (one-sided; the embedding side is zero).
pub fn hausdorff_to_medianization(m: &FiniteMedianSpace) -> Weight {
    m.hausdorff_to_base()
}

/// Minimal D such that every point delta-between two points of a half-space
/// lies within D of that half-space. Exhaustive over the finite space.
pub fn condition3_constants(x: &WallSpace, delta: Weight) -> Result<Weight> {
    let metric = FiniteMetricSpace::from_wallspace(x);
    let tripodal = metric.tripodal_constant().delta;
    if delta < tripodal {
        return Err(Error::domain(format!(
            "delta {delta} below the tripodal constant {tripodal}"
        )));
    }
    let n = x.point_count();
    let mut d = Weight::zero();
    for h in x.half_spaces() {
        let members = x.half_space(h);
        if members.is_empty() {
            continue;
        }
        let dist_to_h: Vec<Weight> = (0..n)
            .map(|z| x.dist_point_to_set(PointId(z), members).unwrap())
            .collect();
        let pts: Vec<usize> = members.iter().collect();
        for &a in &pts {
            for &b in &pts {
                for z in 0..n {
                    let defect = metric.betweenness_defect(PointId(a), PointId(z), PointId(b));
                    if defect <= delta && dist_to_h[z] > d {
                        d = dist_to_h[z];
                    }
                }
            }
        }
    }
    Ok(d)
}

/// Condition-(4) constant: max over half-spaces h, points x outside h and
/// 1-projections p of x on h of the weight of walls separating x from p but
/// not from h.
pub fn condition4_k(x: &WallSpace) -> Weight {
    let mut k = Weight::zero();
    let one = Weight::from_integer(1);
    for h in x.half_spaces() {
        let members = x.half_space(h);
        if members.is_empty() {
            continue;
        }
        for xp in x.points() {
            if members.contains(xp.0) {
                continue;
            }
            let dist = x.dist_point_to_set(xp, members).unwrap();
            let walls_x_h: std::collections::HashSet<usize> =
                x.walls_point_to_set(xp, members).into_iter().collect();
            for p in members.iter() {
                if x.wall_pdist(xp, PointId(p)).unwrap() >= dist + one {
                    continue; // not a 1-projection
                }
                let excess: Weight = x
                    .walls_between(xp, PointId(p))
                    .filter(|i| !walls_x_h.contains(i))
                    .map(|i| x.walls()[i].weight())
                    .sum();
                if excess > k {
                    k = excess;
                }
            }
        }
    }
    k
}

/// The minimal coarse-surjectivity constant of the canonical embedding into
/// the medianization: covers both the point condition and the half-space
/// condition, measured on nonempty half-spaces.
fn embedding_coarse_constant(x: &WallSpace, m: &FiniteMedianSpace, eta: Weight) -> Weight {
    let mut d = eta;
    for h in x.half_spaces() {
        let members = x.half_space(h);
        if members.is_empty() {
            continue;
        }
        let image: Vec<usize> = members.iter().map(|p| m.embedded(PointId(p))).collect();
        // best nonempty induced half-space fully inside the closed
        // neighbourhood of the image
        let best = x
            .half_spaces()
            .filter_map(|h2| {
                let sections = m.induced_wall(h2);
                if sections.is_empty() {
                    return None;
                }
                Some(
                    sections
                        .iter()
                        .map(|s| image.iter().map(|&i| m.dist(s, i)).min().unwrap())
                        .max()
                        .unwrap(),
                )
            })
            .min();
        if let Some(b) = best {
            if b > d {
                d = b;
            }
        }
    }
    d
}

/// The five proof-level inequality checks. All must pass on any finite wall
/// space; a failure is a bug verdict.
pub fn quantitative_audit(
    x: &WallSpace,
    m: &FiniteMedianSpace,
    eta: Weight,
    delta: Weight,
    d_neighborhood: Weight,
    k: Weight,
) -> Vec<CheckResult> {
    let one = Weight::from_integer(1);
    let metric = FiniteMetricSpace::from_wallspace(x);
    let mut checks = Vec::new();

    // (a) K <= f(2D + 1 + delta)
    let radius = d_neighborhood + d_neighborhood + one + delta;
    let f = x
        .local_finiteness_profile(&[radius])
        .map(|p| p[0].1)
        .unwrap_or_else(|_| Weight::zero());
    checks.push(CheckResult {
        name: "3=>4 bound",
        passed: k <= f,
        detail: format!("K = {k}, f({radius}) = {f}"),
    });

    // (b) every wall separating x from a near-optimal section cuts the
    // closed ball B(x, 2K+1); (c) the projection point of the proof is
    // within 2K+1. The closed ball is the set the proof actually bounds:
    // it places a 1-projection p with pdist(x,p) <= 2K+1 on the far side.
    let bound = k + k + one;
    let mut b_pass = true;
    let mut b_detail = String::from("all separating walls cut the ball");
    let mut c_pass = true;
    let mut c_detail = format!("all proof projections within {bound}");
    for (ti, tau) in m.sections().iter().enumerate() {
        let min_dist = x.points().map(|p| m.dist(ti, m.embedded(p))).min().unwrap();
        for xp in x.points() {
            if m.dist(ti, m.embedded(xp)) > min_dist + one {
                continue;
            }
            let mut ball = crate::bitset::BitSet::new(x.point_count());
            for p in x.points() {
                if x.wall_pdist(xp, p).unwrap() <= bound {
                    ball.insert(p.0);
                }
            }
            for wall in 0..x.wall_count() {
                let sigma = &m.sections()[m.embedded(xp)];
                if tau.side(wall) == sigma.side(wall) {
                    continue; // wall does not separate x from tau
                }
                let w = &x.walls()[wall];
                let x_side = if w.side(crate::Side::A).contains(xp.0) {
                    crate::Side::A
                } else {
                    crate::Side::B
                };
                let far_side = w.side(x_side.opposite());
                if b_pass
                    && !(w.side(crate::Side::A).intersects(&ball)
                        && w.side(crate::Side::B).intersects(&ball))
                {
                    b_pass = false;
                    b_detail = format!(
                        "wall {wall} separates {} from section {ti} but misses B(x,{bound})",
                        x.label(xp)
                    );
                }
                if far_side.is_empty() {
                    continue;
                }
                let dist = x.dist_point_to_set(xp, far_side).unwrap();
                for p in far_side.iter() {
                    let dp = x.wall_pdist(xp, PointId(p)).unwrap();
                    if dp < dist + one && c_pass && dp > bound {
                        c_pass = false;
                        c_detail = format!(
                            "1-projection {} of {} on the far side of wall {wall} at distance {dp} > {bound}",
                            x.label(PointId(p)),
                            x.label(xp)
                        );
                    }
                }
            }
        }
    }
    checks.push(CheckResult {
        name: "4=>1 ball cut",
        passed: b_pass,
        detail: b_detail,
    });
    checks.push(CheckResult {
        name: "4=>1 distance bound",
        passed: c_pass,
        detail: c_detail,
    });

    // (d) induced walls at Hausdorff distance <= 3 eta from the embedded
    // half-spaces
    let three_eta = eta + eta + eta;
    let mut d_pass = true;
    let mut d_detail = format!("all induced walls within {three_eta}");
    for h in x.half_spaces() {
        let members = x.half_space(h);
        let induced = m.induced_wall(h);
        if members.is_empty() {
            if !induced.is_empty() {
                d_pass = false;
                d_detail = format!(
                    "empty half-space of wall {} has nonempty induced wall",
                    h.wall
                );
            }
            continue;
        }
        let image: Vec<usize> = members.iter().map(|p| m.embedded(PointId(p))).collect();
        for s in induced.iter() {
            let dist = image.iter().map(|&i| m.dist(s, i)).min().unwrap();
            if dist > three_eta && d_pass {
                d_pass = false;
                d_detail = format!(
                    "section {s} in the induced wall of ({}, {:?}) at distance {dist} > {three_eta}",
                    h.wall, h.side
                );
            }
        }
    }
    checks.push(CheckResult {
        name: "wall 3eta",
        passed: d_pass,
        detail: d_detail,
    });

    // (e) z delta-between two points of a half-space lies within
    // delta/2 + 3 D' of it, D' the measured coarse constant of the
    // canonical embedding
    let d_prime = embedding_coarse_constant(x, m, eta);
    let two = Weight::from_integer(2);
    let bound_e = delta / two + (d_prime + d_prime + d_prime);
    let mut e_pass = true;
    let mut e_detail = format!("all near-between points within {bound_e} (D' = {d_prime})");
    'outer: for h in x.half_spaces() {
        let members = x.half_space(h);
        if members.is_empty() {
            continue;
        }
        let pts: Vec<usize> = members.iter().collect();
        for &a in &pts {
            for &b in &pts {
                for z in x.points() {
                    let defect = metric.betweenness_defect(PointId(a), z, PointId(b));
                    if defect <= delta {
                        let dist = x.dist_point_to_set(z, members).unwrap();
                        if dist > bound_e {
                            e_pass = false;
                            e_detail = format!(
                                "point {} is {delta}-between two points of wall {} side {:?} at distance {dist} > {bound_e}",
                                x.label(z),
                                h.wall,
                                h.side
                            );
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    checks.push(CheckResult {
        name: "2=>3 neighborhood",
        passed: e_pass,
        detail: e_detail,
    });

    checks
}

/// Full audit: all constants, the finiteness profile, rank and the proof
/// checks in one report.
pub fn full_audit(x: &WallSpace, wall_budget: usize) -> Result<AuditReport> {
    let m = enumerate_sections(x, wall_budget)?;
    full_audit_with(x, &m)
}

pub fn full_audit_with(x: &WallSpace, m: &FiniteMedianSpace) -> Result<AuditReport> {
    let eta = hausdorff_to_medianization(m);
    let metric = FiniteMetricSpace::from_wallspace(x);
    let delta = metric.tripodal_constant().delta;
    let d_neighborhood = condition3_constants(x, delta)?;
    let k = condition4_k(x);
    let one = Weight::from_integer(1);
    let mut radii = vec![
        one,
        Weight::from_integer(2),
        k + k + one,
        d_neighborhood + d_neighborhood + one + delta,
    ];
    radii.sort();
    radii.dedup();
    let f_profile = x.local_finiteness_profile(&radii)?;
    let quantitative_checks = quantitative_audit(x, m, eta, delta, d_neighborhood, k);
    Ok(AuditReport {
        eta,
        delta,
        d_neighborhood,
        k_projection: k,
        f_profile,
        rank: m.rank(),
        quantitative_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::medianization::DEFAULT_WALL_BUDGET;

    fn w(n: i64) -> Weight {
        Weight::from_integer(n)
    }

    #[test]
    fn hausdorff_examples() {
        let m = enumerate_sections(&fixtures::path(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(hausdorff_to_medianization(&m), w(0));
        let m = enumerate_sections(&fixtures::tripod_star(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(hausdorff_to_medianization(&m), w(1));
        let m = enumerate_sections(&fixtures::punctured_cube(), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(hausdorff_to_medianization(&m), w(1));
    }

    #[test]
    fn condition3_examples() {
        assert_eq!(
            condition3_constants(&fixtures::path(3), w(0)).unwrap(),
            w(0)
        );
        assert_eq!(
            condition3_constants(&fixtures::hypercube(2), w(0)).unwrap(),
            w(0)
        );
        assert_eq!(
            condition3_constants(&fixtures::tripod_star(3), w(2)).unwrap(),
            w(2)
        );
        assert!(condition3_constants(&fixtures::tripod_star(3), w(1)).is_err());
    }

    #[test]
    fn condition4_examples() {
        assert_eq!(condition4_k(&fixtures::path(3)), w(0));
        assert_eq!(condition4_k(&fixtures::tripod_star(3)), w(1));
        assert_eq!(condition4_k(&fixtures::hypercube(3)), w(0));
    }

    #[test]
    fn full_audit_fixture_constants() {
        let r = full_audit(&fixtures::path(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(
            (r.eta, r.delta, r.d_neighborhood, r.k_projection, r.rank),
            (w(0), w(0), w(0), w(0), 1)
        );
        assert!(r.all_checks_pass(), "{:#?}", r.quantitative_checks);

        let r = full_audit(&fixtures::tripod_star(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(
            (r.eta, r.delta, r.d_neighborhood, r.k_projection, r.rank),
            (w(1), w(2), w(2), w(1), 1)
        );
        assert!(r.all_checks_pass(), "{:#?}", r.quantitative_checks);

        let r = full_audit(&fixtures::hypercube(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(
            (r.eta, r.delta, r.d_neighborhood, r.k_projection, r.rank),
            (w(0), w(0), w(0), w(0), 3)
        );
        assert!(r.all_checks_pass(), "{:#?}", r.quantitative_checks);
    }

    #[test]
    fn audit_passes_on_punctured_cube() {
        let r = full_audit(&fixtures::punctured_cube(), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(r.eta, w(1));
        assert!(r.all_checks_pass(), "{:?}", r.quantitative_checks);
    }

    #[test]
    fn zero_weight_wall_changes_no_constant() {
        let x = fixtures::tripod_star(3);
        let before = full_audit(&x, DEFAULT_WALL_BUDGET).unwrap();
        let mut y = x.clone();
        // a zero-weight wall with a fresh partition
        y.add_wall(crate::bitset::BitSet::from_indices(3, [0, 1]), w(0))
            .unwrap();
        let after = full_audit(&y, DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(before.eta, after.eta);
        assert_eq!(before.delta, after.delta);
        assert_eq!(before.d_neighborhood, after.d_neighborhood);
        assert_eq!(before.k_projection, after.k_projection);
    }
}
