//! The median space of a finite wall space, built from admissible sections.
//!
//! An admissible section picks one half-space per wall, closed upward under
//! inclusion of half-spaces. Canonical sections come from points; the full
//! section set with the weighted symmetric-difference metric is the median
//! space, and every wall of the base space induces a wall on the sections.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::wallspace::{HalfSpaceRef, PointId, Side, Verdict, WallSpace};
use crate::Weight;

/// Default cap on the number of walls accepted by full enumeration.
pub const DEFAULT_WALL_BUDGET: usize = 24;
/// Hard cap on enumerated sections so distance matrices stay materializable.
const SECTION_CAP: usize = 1 << 16;

/// One chosen side per wall; bit i set means side A of wall i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AdmissibleSection {
    choice: BitSet,
}

impl AdmissibleSection {
    pub fn side(&self, wall: usize) -> Side {
        if self.choice.contains(wall) {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn chooses(&self, h: HalfSpaceRef) -> bool {
        self.side(h.wall) == h.side
    }

    pub fn from_sides(x: &WallSpace, sides: &[Side]) -> Self {
        assert_eq!(sides.len(), x.wall_count());
        AdmissibleSection {
            choice: BitSet::from_indices(
                x.wall_count(),
                sides
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| **s == Side::A)
                    .map(|(i, _)| i),
            ),
        }
    }
}

/// The section containing x: per wall, the side with x in it.
pub fn canonical_section(x: &WallSpace, p: PointId) -> Result<AdmissibleSection> {
    if p.0 >= x.point_count() {
        return Err(Error::domain(format!("unknown point index {}", p.0)));
    }
    Ok(AdmissibleSection {
        choice: BitSet::from_indices(
            x.wall_count(),
            (0..x.wall_count()).filter(|&i| x.walls()[i].side(Side::A).contains(p.0)),
        ),
    })
}

/// Upward-closure check. Choosing h forces every half-space containing h;
/// walls with identical partitions must agree (equality of sides counts as
/// inclusion in both directions).
pub fn is_admissible(x: &WallSpace, s: &AdmissibleSection) -> Verdict {
    for i in 0..x.wall_count() {
        let chosen = x.half_space(HalfSpaceRef {
            wall: i,
            side: s.side(i),
        });
        for j in 0..x.wall_count() {
            for side in [Side::A, Side::B] {
                if i == j && side == s.side(i) {
                    continue;
                }
                let sup = x.half_space(HalfSpaceRef { wall: j, side });
                if chosen.is_subset(sup) && s.side(j) != side {
                    return Verdict::Fail(format!(
                        "chosen side {:?} of wall {i} is contained in unchosen side {side:?} of wall {j}",
                        s.side(i)
                    ));
                }
            }
        }
    }
    Verdict::Pass
}

/// Weighted symmetric difference of two sections over the same wall space.
pub fn section_pdist(x: &WallSpace, s: &AdmissibleSection, t: &AdmissibleSection) -> Weight {
    (0..x.wall_count())
        .filter(|&i| s.side(i) != t.side(i))
        .map(|i| x.walls()[i].weight())
        .sum()
}

/// Wall-wise majority vote of three admissible sections. The result is
/// admissible and is the metric median of the inputs in the section metric.
pub fn median_of_sections(
    x: &WallSpace,
    a: &AdmissibleSection,
    b: &AdmissibleSection,
    c: &AdmissibleSection,
) -> AdmissibleSection {
    let m = AdmissibleSection {
        choice: BitSet::from_indices(
            x.wall_count(),
            (0..x.wall_count()).filter(|&i| {
                let votes = [a, b, c].iter().filter(|s| s.side(i) == Side::A).count();
                votes >= 2
            }),
        ),
    };
    debug_assert!(is_admissible(x, &m).passed());
    m
}

/// The median space of a wall space: its sections, metric, embedded points
/// and induced wall structure.
#[derive(Clone, Debug)]
pub struct FiniteMedianSpace {
    space: WallSpace,
    sections: Vec<AdmissibleSection>,
    dist: Vec<Vec<Weight>>,
    embedded_points: Vec<usize>,
}

impl FiniteMedianSpace {
    fn build(space: &WallSpace, mut sections: Vec<AdmissibleSection>) -> Result<Self> {
        sections.sort();
        sections.dedup();
        // canonical sections always present
        for p in space.points() {
            let c = canonical_section(space, p)?;
            if sections.binary_search(&c).is_err() {
                return Err(Error::domain("canonical section missing from section set"));
            }
        }
        let embedded_points = space
            .points()
            .map(|p| {
                let c = canonical_section(space, p).unwrap();
                sections.binary_search(&c).unwrap()
            })
            .collect();
        let dist = sections
            .iter()
            .map(|s| {
                sections
                    .iter()
                    .map(|t| section_pdist(space, s, t))
                    .collect()
            })
            .collect();
        Ok(FiniteMedianSpace {
            space: space.clone(),
            sections,
            dist,
            embedded_points,
        })
    }

    pub fn wall_space(&self) -> &WallSpace {
        &self.space
    }

    pub fn sections(&self) -> &[AdmissibleSection] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> Weight {
        self.dist[i][j]
    }

    /// Section index of the canonical section of a base point.
    pub fn embedded(&self, p: PointId) -> usize {
        self.embedded_points[p.0]
    }

    pub fn section_index(&self, s: &AdmissibleSection) -> Option<usize> {
        self.sections.binary_search(s).ok()
    }

    /// Human-readable section label: the base point's label for canonical
    /// sections, `s{index}` otherwise.
    pub fn section_label(&self, i: usize) -> String {
        for p in self.space.points() {
            if self.embedded_points[p.0] == i {
                return self.space.label(p).to_string();
            }
        }
        format!("s{i}")
    }

    /// The induced half-space h_M: all sections choosing h.
    pub fn induced_wall(&self, h: HalfSpaceRef) -> BitSet {
        BitSet::from_indices(
            self.sections.len(),
            self.sections
                .iter()
                .enumerate()
                .filter(|(_, s)| s.chooses(h))
                .map(|(i, _)| i),
        )
    }

    /// The section set as a wall space of its own, with one induced wall per
    /// base wall and inherited weights.
    pub fn induced_wall_space(&self) -> WallSpace {
        let labels = (0..self.sections.len())
            .map(|i| self.section_label(i))
            .collect();
        let mut m = WallSpace::new(labels).unwrap();
        for wall in 0..self.space.wall_count() {
            let h = self.induced_wall(HalfSpaceRef {
                wall,
                side: Side::A,
            });
            m.add_wall(h, self.space.walls()[wall].weight()).unwrap();
        }
        m
    }

    /// The section metric as a finite pseudo-metric space.
    pub fn to_metric_space(&self) -> FiniteMetricSpace<Weight> {
        let labels = (0..self.len()).map(|i| self.section_label(i)).collect();
        FiniteMetricSpace::new(labels, self.dist.clone()).expect("section metric is valid")
    }

    /// Weight-scaled indicator vectors of the symmetric difference with the
    /// base point's canonical section. Pairwise l1 distances reproduce the
    /// section metric exactly.
    pub fn l1_embedding(&self, base: PointId) -> Result<Vec<Vec<Weight>>> {
        if base.0 >= self.space.point_count() {
            return Err(Error::domain(format!("unknown point index {}", base.0)));
        }
        let sigma0 = &self.sections[self.embedded_points[base.0]];
        Ok(self
            .sections
            .iter()
            .map(|s| {
                (0..self.space.wall_count())
                    .map(|i| {
                        if s.side(i) != sigma0.side(i) {
                            self.space.walls()[i].weight()
                        } else {
                            Weight::zero()
                        }
                    })
                    .collect()
            })
            .collect())
    }

    /// One-sided Hausdorff distance from the sections to the embedded copy
    /// of the base space (the other side is zero since X embeds).
    pub fn hausdorff_to_base(&self) -> Weight {
        self.sections
            .iter()
            .enumerate()
            .map(|(i, _)| {
                self.embedded_points
                    .iter()
                    .map(|&j| self.dist(i, j))
                    .min()
                    .unwrap_or_else(Weight::zero)
            })
            .max()
            .unwrap_or_else(Weight::zero)
    }

    /// Rank: maximum set of pairwise crossing walls (all four quadrants of
    /// the induced half-spaces nonempty on the section set), as a max clique
    /// of the crossing graph.
    pub fn rank(&self) -> usize {
        let k = self.space.wall_count();
        let halves: Vec<(BitSet, BitSet)> = (0..k)
            .map(|wall| {
                (
                    self.induced_wall(HalfSpaceRef {
                        wall,
                        side: Side::A,
                    }),
                    self.induced_wall(HalfSpaceRef {
                        wall,
                        side: Side::B,
                    }),
                )
            })
            .collect();
        let crosses = |i: usize, j: usize| {
            let (a, ac) = &halves[i];
            let (b, bc) = &halves[j];
            a.intersects(b) && a.intersects(bc) && ac.intersects(b) && ac.intersects(bc)
        };
        let mut adj = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i != j && crosses(i, j) {
                    adj[i][j] = true;
                }
            }
        }
        fn grow(
            adj: &[Vec<bool>],
            clique: &mut Vec<usize>,
            candidates: &[usize],
            best: &mut usize,
        ) {
            *best = (*best).max(clique.len());
            for (idx, &v) in candidates.iter().enumerate() {
                if clique.len() + (candidates.len() - idx) <= *best {
                    break;
                }
                clique.push(v);
                let next: Vec<usize> = candidates[idx + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| adj[v][u])
                    .collect();
                grow(adj, clique, &next, best);
                clique.pop();
            }
        }
        let mut best = 0;
        grow(
            &adj,
            &mut Vec::new(),
            &(0..k).collect::<Vec<_>>(),
            &mut best,
        );
        best
    }
}

/// All admissible sections, found by backtracking with nesting-constraint
/// propagation over walls ordered by smaller-side size.
pub fn enumerate_sections(x: &WallSpace, wall_budget: usize) -> Result<FiniteMedianSpace> {
    if x.wall_count() > wall_budget {
        return Err(Error::budget(format!(
            "{} walls exceed the enumeration budget {wall_budget}; use median_closure instead",
            x.wall_count()
        )));
    }
    let k = x.wall_count();
    // implications[(i, s)] = half-spaces forced by choosing side s of wall i
    let idx = |h: HalfSpaceRef| h.wall * 2 + if h.side == Side::A { 0 } else { 1 };
    let mut implications: Vec<Vec<HalfSpaceRef>> = vec![Vec::new(); 2 * k];
    for h in x.half_spaces() {
        for h2 in x.half_spaces() {
            if h == h2 {
                continue;
            }
            if x.half_space(h).is_subset(x.half_space(h2)) {
                implications[idx(h)].push(h2);
            }
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| {
        let a = x.walls()[i].side(Side::A).count();
        let b = x.walls()[i].side(Side::B).count();
        a.min(b)
    });

    let mut sections = Vec::new();
    let mut assignment: Vec<Option<Side>> = vec![None; k];

    fn propagate(
        assignment: &mut [Option<Side>],
        trail: &mut Vec<usize>,
        implications: &[Vec<HalfSpaceRef>],
        idx: &dyn Fn(HalfSpaceRef) -> usize,
        start: HalfSpaceRef,
    ) -> bool {
        let mut queue = vec![start];
        while let Some(h) = queue.pop() {
            match assignment[h.wall] {
                Some(s) if s == h.side => continue,
                Some(_) => return false,
                None => {
                    assignment[h.wall] = Some(h.side);
                    trail.push(h.wall);
                    for &forced in &implications[idx(h)] {
                        queue.push(forced);
                    }
                }
            }
        }
        true
    }

    fn search(
        x: &WallSpace,
        order: &[usize],
        depth: usize,
        assignment: &mut [Option<Side>],
        implications: &[Vec<HalfSpaceRef>],
        idx: &dyn Fn(HalfSpaceRef) -> usize,
        sections: &mut Vec<AdmissibleSection>,
    ) -> Result<()> {
        if depth == order.len() {
            let sides: Vec<Side> = assignment.iter().map(|s| s.unwrap()).collect();
            sections.push(AdmissibleSection::from_sides(x, &sides));
            if sections.len() > SECTION_CAP {
                return Err(Error::budget(format!(
                    "more than {SECTION_CAP} admissible sections; use median_closure instead"
                )));
            }
            return Ok(());
        }
        let wall = order[depth];
        if assignment[wall].is_some() {
            return search(x, order, depth + 1, assignment, implications, idx, sections);
        }
        for side in [Side::A, Side::B] {
            let mut trail = Vec::new();
            if propagate(
                assignment,
                &mut trail,
                implications,
                idx,
                HalfSpaceRef { wall, side },
            ) {
                search(x, order, depth + 1, assignment, implications, idx, sections)?;
            }
            for w in trail {
                assignment[w] = None;
            }
        }
        Ok(())
    }

    search(
        x,
        &order,
        0,
        &mut assignment,
        &implications,
        &idx,
        &mut sections,
    )?;
    FiniteMedianSpace::build(x, sections)
}

/// The median closure of the canonical sections: iterate the majority-vote
/// median until no new section appears, capped at `max_sections`.
pub struct MedianClosure {
    pub space: FiniteMedianSpace,
    /// false when the section cap stopped the closure early
    pub complete: bool,
}

pub fn median_closure(x: &WallSpace, max_sections: usize) -> Result<MedianClosure> {
    let mut set: BTreeSet<AdmissibleSection> = x
        .points()
        .map(|p| canonical_section(x, p))
        .collect::<Result<_>>()?;
    let mut complete = true;
    loop {
        let current: Vec<AdmissibleSection> = set.iter().cloned().collect();
        let mut added = false;
        'outer: for i in 0..current.len() {
            for j in i..current.len() {
                for l in j..current.len() {
                    let m = median_of_sections(x, &current[i], &current[j], &current[l]);
                    if set.insert(m) {
                        added = true;
                        if set.len() > max_sections {
                            complete = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if !added || !complete {
            break;
        }
    }
    if !complete {
        return Err(Error::budget(format!(
            "median closure exceeded {max_sections} sections"
        )));
    }
    let space = FiniteMedianSpace::build(x, set.into_iter().collect())?;
    Ok(MedianClosure { space, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(n: i64) -> Weight {
        Weight::from_integer(n)
    }

    #[test]
    fn canonical_sections_are_admissible() {
        for x in [
            fixtures::path(3),
            fixtures::tripod_star(3),
            fixtures::hypercube(3),
            fixtures::punctured_cube(),
            fixtures::corner3(),
        ] {
            for p in x.points() {
                let s = canonical_section(&x, p).unwrap();
                assert!(is_admissible(&x, &s).passed());
            }
        }
        assert!(canonical_section(&fixtures::path(3), PointId(7)).is_err());
    }

    #[test]
    fn canonical_section_reads_membership() {
        let x = fixtures::path(3);
        let s = canonical_section(&x, PointId(0)).unwrap();
        // p0 lies in {p0} (side A of w01) and {p0,p1} (side A of w12)
        assert_eq!(s.side(0), Side::A);
        assert_eq!(s.side(1), Side::A);
    }

    #[test]
    fn tripod_inadmissible_orientation() {
        let x = fixtures::tripod_star(3);
        // ({a}, {b}, {a,b}): {a} is inside {a,c} whose complement {b} is chosen
        let s = AdmissibleSection::from_sides(&x, &[Side::A, Side::A, Side::B]);
        assert!(!is_admissible(&x, &s).passed());
    }

    #[test]
    fn corner3_inadmissible_orientation() {
        let x = fixtures::corner3();
        // choosing {(1,0)} and {(0,1)} violates nesting
        let s = AdmissibleSection::from_sides(&x, &[Side::A, Side::A]);
        assert!(!is_admissible(&x, &s).passed());
    }

    #[test]
    fn empty_side_cannot_be_chosen() {
        let mut x = fixtures::path(2);
        x.add_wall(crate::bitset::BitSet::new(2), w(1)).unwrap(); // trivial wall, side A empty
        let s = AdmissibleSection::from_sides(&x, &[Side::A, Side::A]);
        assert!(!is_admissible(&x, &s).passed());
        let ok = AdmissibleSection::from_sides(&x, &[Side::A, Side::B]);
        assert!(is_admissible(&x, &ok).passed());
    }

    #[test]
    fn enumerate_path3() {
        let x = fixtures::path(3);
        let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.hausdorff_to_base(), w(0));
    }

    #[test]
    fn enumerate_tripod3() {
        let x = fixtures::tripod_star(3);
        let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(m.len(), 4);
        // the extra section tau chooses the 2-element side of every wall
        let tau = AdmissibleSection::from_sides(&x, &[Side::B, Side::B, Side::B]);
        let ti = m.section_index(&tau).unwrap();
        let sa = m.embedded(PointId(0));
        assert_eq!(m.dist(ti, sa), w(1));
    }

    #[test]
    fn enumerate_punctured_cube() {
        let x = fixtures::punctured_cube();
        let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        // 7 canonical sections plus the restored corner (1,1,1)
        assert_eq!(m.len(), 8);
        assert_eq!(m.hausdorff_to_base(), w(1));
    }

    #[test]
    fn budget_errors() {
        let x = fixtures::hypercube(3);
        assert!(matches!(enumerate_sections(&x, 2), Err(Error::Budget(_))));
    }

    #[test]
    fn section_pdist_examples() {
        let x = fixtures::tripod_star(3);
        let sa = canonical_section(&x, PointId(0)).unwrap();
        let sb = canonical_section(&x, PointId(1)).unwrap();
        let tau = AdmissibleSection::from_sides(&x, &[Side::B, Side::B, Side::B]);
        assert_eq!(section_pdist(&x, &sa, &sa), w(0));
        assert_eq!(section_pdist(&x, &tau, &sa), w(1));
        assert_eq!(section_pdist(&x, &sa, &sb), w(2));
    }

    #[test]
    fn median_of_sections_examples() {
        let x = fixtures::tripod_star(3);
        let sa = canonical_section(&x, PointId(0)).unwrap();
        let sb = canonical_section(&x, PointId(1)).unwrap();
        let sc = canonical_section(&x, PointId(2)).unwrap();
        assert_eq!(median_of_sections(&x, &sa, &sa, &sb), sa);
        let tau = AdmissibleSection::from_sides(&x, &[Side::B, Side::B, Side::B]);
        assert_eq!(median_of_sections(&x, &sa, &sb, &sc), tau);

        let c = fixtures::hypercube(3);
        let m = median_of_sections(
            &c,
            &canonical_section(&c, PointId(0b000)).unwrap(),
            &canonical_section(&c, PointId(0b110)).unwrap(),
            &canonical_section(&c, PointId(0b101)).unwrap(),
        );
        assert_eq!(m, canonical_section(&c, PointId(0b100)).unwrap());
    }

    #[test]
    fn median_closure_examples() {
        let closure = median_closure(&fixtures::path(3), 1000).unwrap();
        assert_eq!(closure.space.len(), 3);

        let x = fixtures::tripod_star(3);
        let closure = median_closure(&x, 1000).unwrap();
        let full = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(closure.space.sections(), full.sections());

        let closure = median_closure(&fixtures::punctured_cube(), 1000).unwrap();
        assert_eq!(closure.space.len(), 8);
    }

    #[test]
    fn induced_wall_examples() {
        let x = fixtures::tripod_star(3);
        let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        // h = {b,c} is side B of wall 0
        let h = m.induced_wall(HalfSpaceRef {
            wall: 0,
            side: Side::B,
        });
        assert_eq!(h.count(), 3);
        let ha = m.induced_wall(HalfSpaceRef {
            wall: 0,
            side: Side::A,
        });
        assert_eq!(ha.count(), 1);
        assert!(ha.contains(m.embedded(PointId(0))));

        // the induced wall metric reproduces the section metric
        let induced = m.induced_wall_space();
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(
                    induced.wall_pdist(PointId(i), PointId(j)).unwrap(),
                    m.dist(i, j)
                );
            }
        }
    }

    #[test]
    fn l1_embedding_examples() {
        let x = fixtures::tripod_star(3);
        let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        let emb = m.l1_embedding(PointId(0)).unwrap();
        let base = m.embedded(PointId(0));
        assert!(emb[base].iter().all(|v| v.is_integer() && *v == w(0)));
        let tau = AdmissibleSection::from_sides(&x, &[Side::B, Side::B, Side::B]);
        let ti = m.section_index(&tau).unwrap();
        assert_eq!(emb[ti], vec![w(1), w(0), w(0)]);
        // l1 distances equal section pdist for all pairs
        for i in 0..m.len() {
            for j in 0..m.len() {
                let l1: Weight = emb[i]
                    .iter()
                    .zip(&emb[j])
                    .map(|(a, b)| if a > b { *a - *b } else { *b - *a })
                    .sum();
                assert_eq!(l1, m.dist(i, j));
            }
        }
    }

    #[test]
    fn rank_examples() {
        let path = enumerate_sections(&fixtures::path(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(path.rank(), 1);
        for k in 1..=4 {
            let cube = enumerate_sections(&fixtures::hypercube(k), DEFAULT_WALL_BUDGET).unwrap();
            assert_eq!(cube.rank(), k);
        }
        let tripod = enumerate_sections(&fixtures::tripod_star(3), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(tripod.rank(), 1);
        let tree = enumerate_sections(&fixtures::tree(9, 5), DEFAULT_WALL_BUDGET).unwrap();
        assert_eq!(tree.rank(), 1);
    }

    #[test]
    fn embedding_is_isometric() {
        for x in [
            fixtures::path(4),
            fixtures::tripod_star(4),
            fixtures::punctured_cube(),
            fixtures::cycle_with_diagonal_walls(3),
        ] {
            let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
            for p in x.points() {
                for q in x.points() {
                    assert_eq!(
                        m.dist(m.embedded(p), m.embedded(q)),
                        x.wall_pdist(p, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn monomorphism_induces_section_isometry() {
        // DIAG fixture: the induced map on canonical sections preserves
        // distances
        let target = fixtures::hypercube(2);
        let mut src = WallSpace::new(vec!["q0".into(), "q1".into()]).unwrap();
        src.add_wall_by_labels(["q0"], w(2)).unwrap();
        let map = crate::wallspace::WallSpaceMap::new(&src, &target, vec![0, 3]).unwrap();
        assert!(map.verify_monomorphism().passed());
        let ms = enumerate_sections(&src, DEFAULT_WALL_BUDGET).unwrap();
        let mt = enumerate_sections(&target, DEFAULT_WALL_BUDGET).unwrap();
        for p in src.points() {
            for q in src.points() {
                let dp = ms.dist(ms.embedded(p), ms.embedded(q));
                let dq = mt.dist(
                    mt.embedded(PointId(map.point_map[p.0])),
                    mt.embedded(PointId(map.point_map[q.0])),
                );
                assert_eq!(dp, dq);
            }
        }
    }

    #[test]
    fn zero_weight_walls_keep_pseudo_metric_semantics() {
        let mut x = fixtures::path(2);
        x.add_wall(crate::bitset::BitSet::from_indices(2, [0]), w(0))
            .unwrap();
        let m = enumerate_sections(&x, DEFAULT_WALL_BUDGET).unwrap();
        // duplicated partition must agree, so no extra section appears
        assert_eq!(m.len(), 2);
        assert_eq!(m.dist(0, 1), w(1));
    }
}
