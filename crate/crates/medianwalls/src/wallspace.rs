//! Finite spaces with measured walls and their exact separation queries.
//!
//! A wall is a partition of the point set into two complementary half-spaces
//! carrying a nonnegative rational weight. Summing the weights of the walls
//! separating two points gives the wall pseudo-metric; everything downstream
//! (medianization, audits) is driven by the queries in this module.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::Weight;

/// Index of a point within one wall space's dense point order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointId(pub usize);

/// Which half-space of a wall is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A reference to one half-space: a wall index plus a side tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfSpaceRef {
    pub wall: usize,
    pub side: Side,
}

/// A weighted wall. Only `side_a` is stored; `side_b` is its complement.
/// One side may be empty (trivial walls are legal and carry weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    side_a: BitSet,
    side_b: BitSet,
    weight: Weight,
}

impl Wall {
    pub fn side(&self, side: Side) -> &BitSet {
        match side {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    /// Canonical representative of the unordered partition {side_a, side_b},
    /// used to compare walls as partitions (multiset semantics keeps
    /// duplicates as distinct walls, but pullback checks match partitions).
    pub fn partition_key(&self) -> &BitSet {
        if self.side_a <= self.side_b {
            &self.side_a
        } else {
            &self.side_b
        }
    }

    /// True when one side is empty.
    pub fn is_trivial(&self) -> bool {
        self.side_a.is_empty() || self.side_b.is_empty()
    }
}

/// A finite space with measured walls. Immutable after construction.
#[derive(Clone, Debug)]
pub struct WallSpace {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    walls: Vec<Wall>,
}

impl WallSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate point id {l:?}")));
            }
        }
        Ok(WallSpace {
            labels,
            index,
            walls: Vec::new(),
        })
    }

    pub fn add_wall(&mut self, side_a: BitSet, weight: Weight) -> Result<usize> {
        if side_a.universe_len() != self.labels.len() {
            return Err(Error::input(
                "half-space indexed over a different point set",
            ));
        }
        if weight < Weight::zero() {
            return Err(Error::input("wall weight must be nonnegative"));
        }
        let side_b = side_a.complement();
        self.walls.push(Wall {
            side_a,
            side_b,
            weight,
        });
        Ok(self.walls.len() - 1)
    }

    pub fn add_wall_by_labels<'a>(
        &mut self,
        side_a: impl IntoIterator<Item = &'a str>,
        weight: Weight,
    ) -> Result<usize> {
        let mut bits = BitSet::new(self.labels.len());
        for l in side_a {
            let i = self.index.get(l).ok_or_else(|| {
                Error::input(format!("half-space references unknown point {l:?}"))
            })?;
            bits.insert(*i);
        }
        self.add_wall(bits, weight)
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.labels.len()).map(PointId)
    }

    pub fn label(&self, p: PointId) -> &str {
        &self.labels[p.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn point_by_label(&self, label: &str) -> Option<PointId> {
        self.index.get(label).copied().map(PointId)
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn half_space(&self, h: HalfSpaceRef) -> &BitSet {
        self.walls[h.wall].side(h.side)
    }

    /// All half-space references (both sides of every wall).
    pub fn half_spaces(&self) -> impl Iterator<Item = HalfSpaceRef> + '_ {
        (0..self.walls.len()).flat_map(|wall| {
            [
                HalfSpaceRef {
                    wall,
                    side: Side::A,
                },
                HalfSpaceRef {
                    wall,
                    side: Side::B,
                },
            ]
        })
    }

    fn check_point(&self, p: PointId) -> Result<()> {
        if p.0 < self.labels.len() {
            Ok(())
        } else {
            Err(Error::domain(format!("unknown point index {}", p.0)))
        }
    }

    /// Walls separating two disjoint subsets: `A` entirely on one side and
    /// `B` entirely on the other. With `B` empty this is the set of walls
    /// not cutting `A`.
    pub fn separating_walls(&self, a: &BitSet, b: &BitSet) -> Result<Vec<usize>> {
        if a.intersects(b) {
            return Err(Error::domain("separating_walls: sets overlap"));
        }
        Ok(self
            .walls
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                (a.is_subset(&w.side_a) && b.is_subset(&w.side_b))
                    || (a.is_subset(&w.side_b) && b.is_subset(&w.side_a))
            })
            .map(|(i, _)| i)
            .collect())
    }

    /// Walls with `x` and `y` on opposite sides.
    pub fn walls_between(&self, x: PointId, y: PointId) -> impl Iterator<Item = usize> + '_ {
        self.walls.iter().enumerate().filter_map(move |(i, w)| {
            if w.side_a.contains(x.0) != w.side_a.contains(y.0) {
                Some(i)
            } else {
                None
            }
        })
    }

    /// The wall pseudo-metric: total weight of walls separating `x` from `y`.
    pub fn wall_pdist(&self, x: PointId, y: PointId) -> Result<Weight> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.walls_between(x, y).map(|i| self.walls[i].weight).sum())
    }

    /// Walls separating a point from a nonempty subset.
    pub fn walls_point_to_set(&self, x: PointId, set: &BitSet) -> Vec<usize> {
        self.walls
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                let x_in_a = w.side_a.contains(x.0);
                let opposite = if x_in_a { &w.side_b } else { &w.side_a };
                set.is_subset(opposite)
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// min over p in `set` of pdist(x, p); `set` must be nonempty.
    pub fn dist_point_to_set(&self, x: PointId, set: &BitSet) -> Result<Weight> {
        set.iter()
            .map(|p| self.wall_pdist(x, PointId(p)).unwrap())
            .min()
            .ok_or_else(|| Error::domain("distance to an empty set"))
    }

    /// Walls cutting a subset: both sides meet `Y`.
    pub fn walls_cutting(&self, y: &BitSet) -> Vec<usize> {
        self.walls
            .iter()
            .enumerate()
            .filter(|(_, w)| w.side_a.intersects(y) && w.side_b.intersects(y))
            .map(|(i, _)| i)
            .collect()
    }

    /// Open ball of radius `r` around `x` in the wall pseudo-metric.
    pub fn open_ball(&self, x: PointId, r: Weight) -> BitSet {
        BitSet::from_indices(
            self.point_count(),
            self.points()
                .filter(|&p| self.wall_pdist(x, p).unwrap() < r)
                .map(|p| p.0),
        )
    }

    /// f(R) = max over centers of the total weight of walls cutting the
    /// open R-ball. Finite spaces attain the exact bound.
    pub fn local_finiteness_profile(&self, radii: &[Weight]) -> Result<Vec<(Weight, Weight)>> {
        if radii.is_empty() {
            return Err(Error::domain("local_finiteness_profile: no radii"));
        }
        if radii.iter().any(|r| *r < Weight::zero()) {
            return Err(Error::domain("local_finiteness_profile: negative radius"));
        }
        Ok(radii
            .iter()
            .map(|&r| {
                let f = self
                    .points()
                    .map(|x| {
                        let ball = self.open_ball(x, r);
                        self.walls_cutting(&ball)
                            .into_iter()
                            .map(|i| self.walls[i].weight)
                            .sum::<Weight>()
                    })
                    .max()
                    .unwrap_or_else(Weight::zero);
                (r, f)
            })
            .collect())
    }

    /// Total weight of the walls with the given indices.
    pub fn weight_of(&self, walls: impl IntoIterator<Item = usize>) -> Weight {
        walls.into_iter().map(|i| self.walls[i].weight).sum()
    }

    /// Half-spaces are convex for the wall pseudo-metric: any point exactly
    /// between two points of a half-space is at distance zero from it.
    /// This is a theorem; a counterexample witness signals a bug.
    pub fn check_halfspace_convexity(&self) -> ConvexityReport {
        for h in self.half_spaces() {
            let members = self.half_space(h);
            if members.is_empty() {
                continue;
            }
            let pts: Vec<usize> = members.iter().collect();
            for &a in &pts {
                for &b in &pts {
                    for z in self.points() {
                        let da = self.wall_pdist(PointId(a), z).unwrap();
                        let db = self.wall_pdist(z, PointId(b)).unwrap();
                        let dab = self.wall_pdist(PointId(a), PointId(b)).unwrap();
                        if da + db == dab
                            && self.dist_point_to_set(z, members).unwrap() != Weight::zero()
                        {
                            return ConvexityReport::Counterexample {
                                half_space: h,
                                a: PointId(a),
                                b: PointId(b),
                                z,
                            };
                        }
                    }
                }
            }
        }
        ConvexityReport::Pass
    }

    /// Product wall space: each wall of a factor extended by the full other
    /// factor. The product wall metric is the sum of the factor metrics.
    pub fn product(&self, other: &WallSpace) -> WallSpace {
        let n = self.point_count();
        let m = other.point_count();
        let labels: Vec<String> = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let mut prod = WallSpace::new(labels).expect("product labels are unique");
        // point (i, j) sits at dense index i*m + j
        for w in &self.walls {
            let mut bits = BitSet::new(n * m);
            for i in w.side_a.iter() {
                for j in 0..m {
                    bits.insert(i * m + j);
                }
            }
            prod.add_wall(bits, w.weight).unwrap();
        }
        for w in &other.walls {
            let mut bits = BitSet::new(n * m);
            for j in w.side_a.iter() {
                for i in 0..n {
                    bits.insert(i * m + j);
                }
            }
            prod.add_wall(bits, w.weight).unwrap();
        }
        prod
    }

    /// Dense index of a product point built by [`WallSpace::product`].
    pub fn product_point(&self, other: &WallSpace, x: PointId, y: PointId) -> PointId {
        PointId(x.0 * other.point_count() + y.0)
    }
}

/// Outcome of the half-space convexity theorem check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityReport {
    Pass,
    Counterexample {
        half_space: HalfSpaceRef,
        a: PointId,
        b: PointId,
        z: PointId,
    },
}

impl ConvexityReport {
    pub fn passed(&self) -> bool {
        matches!(self, ConvexityReport::Pass)
    }
}

/// A map of wall spaces, checked against the homomorphism / monomorphism /
/// coarse-surjectivity conditions.
pub struct WallSpaceMap<'a> {
    pub source: &'a WallSpace,
    pub target: &'a WallSpace,
    /// point_map[i] = index in target of the image of source point i
    pub point_map: Vec<usize>,
}

/// Pass/fail with a short witness description on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl<'a> WallSpaceMap<'a> {
    pub fn new(
        source: &'a WallSpace,
        target: &'a WallSpace,
        point_map: Vec<usize>,
    ) -> Result<Self> {
        if point_map.len() != source.point_count() {
            return Err(Error::input("point_map must be total on source points"));
        }
        if point_map.iter().any(|&j| j >= target.point_count()) {
            return Err(Error::input("point_map hits an unknown target point"));
        }
        Ok(WallSpaceMap {
            source,
            target,
            point_map,
        })
    }

    /// Preimage partition of a target wall, as a half-space over the source.
    fn pullback(&self, wall: usize) -> BitSet {
        let side_a = self.target.walls()[wall].side(Side::A);
        BitSet::from_indices(
            self.source.point_count(),
            (0..self.source.point_count()).filter(|&i| side_a.contains(self.point_map[i])),
        )
    }

    fn image_set(&self) -> BitSet {
        BitSet::from_indices(self.target.point_count(), self.point_map.iter().copied())
    }

    fn image_of(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.target.point_count(),
            set.iter().map(|i| self.point_map[i]),
        )
    }

    /// Homomorphism check: every target wall pulls back to a wall of the
    /// source (compared as partitions; trivial walls admitted), and the
    /// pushforward of the target weights equals the source weights,
    /// partition class by partition class. A passing map is an isometric
    /// embedding for the wall pseudo-metrics.
    pub fn verify_homomorphism(&self) -> Verdict {
        let n = self.source.point_count();
        // weight per source partition class
        let mut source_classes: HashMap<BitSet, Weight> = HashMap::new();
        for w in self.source.walls() {
            *source_classes
                .entry(w.partition_key().clone())
                .or_insert_with(Weight::zero) += w.weight();
        }
        let mut pulled: HashMap<BitSet, Weight> = HashMap::new();
        for (i, w) in self.target.walls().iter().enumerate() {
            let pre = self.pullback(i);
            let key = std::cmp::min(pre.clone(), pre.complement());
            if !source_classes.contains_key(&key) {
                return Verdict::Fail(format!(
                    "target wall {i} pulls back to a partition that is not a source wall"
                ));
            }
            *pulled.entry(key).or_insert_with(Weight::zero) += w.weight();
        }
        for (key, weight) in &source_classes {
            let got = pulled.get(key).copied().unwrap_or_else(Weight::zero);
            if got != *weight {
                return Verdict::Fail(format!(
                    "pushforward weight {got} != source weight {weight} on partition {:?}",
                    key.iter().collect::<Vec<_>>()
                ));
            }
        }
        // corollary: distance preservation
        for x in 0..n {
            for y in 0..n {
                let ds = self.source.wall_pdist(PointId(x), PointId(y)).unwrap();
                let dt = self
                    .target
                    .wall_pdist(PointId(self.point_map[x]), PointId(self.point_map[y]))
                    .unwrap();
                if ds != dt {
                    return Verdict::Fail(format!(
                        "passing weight checks but not isometric on pair ({x},{y}): {ds} vs {dt}"
                    ));
                }
            }
        }
        Verdict::Pass
    }

    /// Monomorphism: additionally every source wall is the pullback of some
    /// target wall.
    pub fn verify_monomorphism(&self) -> Verdict {
        match self.verify_homomorphism() {
            Verdict::Pass => {}
            fail => return fail,
        }
        let hit: std::collections::HashSet<BitSet> = (0..self.target.wall_count())
            .map(|i| {
                let pre = self.pullback(i);
                std::cmp::min(pre.clone(), pre.complement())
            })
            .collect();
        for (i, w) in self.source.walls().iter().enumerate() {
            if !hit.contains(w.partition_key()) {
                return Verdict::Fail(format!("source wall {i} is not hit by any target wall"));
            }
        }
        Verdict::Pass
    }

    /// Coarse surjectivity at constant `d`: every target point lies within
    /// `d` of the image, and every source half-space has a target half-space
    /// inside the closed `d`-neighbourhood of its image.
    pub fn verify_coarse_surjectivity(&self, d: Weight) -> Verdict {
        match self.verify_monomorphism() {
            Verdict::Pass => {}
            fail => return fail,
        }
        let image = self.image_set();
        for p in self.target.points() {
            let dist = self.target.dist_point_to_set(p, &image).unwrap();
            if dist > d {
                return Verdict::Fail(format!(
                    "target point {} at distance {dist} > {d} from the image",
                    self.target.label(p)
                ));
            }
        }
        for h in self.source.half_spaces() {
            let img = self.image_of(self.source.half_space(h));
            let ok = self.target.half_spaces().any(|h2| {
                let members = self.target.half_space(h2);
                if img.is_empty() {
                    // closed neighbourhood of an empty image is empty
                    return members.is_empty();
                }
                members
                    .iter()
                    .all(|p| self.target.dist_point_to_set(PointId(p), &img).unwrap() <= d)
            });
            if !ok {
                return Verdict::Fail(format!(
                    "no target half-space within the closed {d}-neighbourhood of the image of wall {} side {:?}",
                    h.wall, h.side
                ));
            }
        }
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(n: i64) -> Weight {
        Weight::from_integer(n)
    }

    #[test]
    fn path3_separating_walls() {
        let x = fixtures::path(3);
        let p0 = BitSet::from_indices(3, [0]);
        let p2 = BitSet::from_indices(3, [2]);
        assert_eq!(x.separating_walls(&p0, &p2).unwrap(), vec![0, 1]);
        // overlapping sets are a domain error
        assert!(x.separating_walls(&p0, &p0).is_err());
        // B = empty: walls with A entirely on one side
        let p1 = BitSet::from_indices(3, [1]);
        let empty = BitSet::new(3);
        assert_eq!(x.separating_walls(&p1, &empty).unwrap(), vec![0, 1]);
    }

    #[test]
    fn tripod3_separating_walls() {
        let x = fixtures::tripod_star(3);
        let a = BitSet::from_indices(3, [0]);
        let b = BitSet::from_indices(3, [1]);
        assert_eq!(x.separating_walls(&a, &b).unwrap(), vec![0, 1]);
    }

    #[test]
    fn wall_pdist_examples() {
        let path = fixtures::path(3);
        assert_eq!(path.wall_pdist(PointId(0), PointId(2)).unwrap(), w(2));
        assert_eq!(path.wall_pdist(PointId(1), PointId(1)).unwrap(), w(0));
        let tri = fixtures::tripod_star(3);
        assert_eq!(tri.wall_pdist(PointId(0), PointId(1)).unwrap(), w(2));
        assert!(path.wall_pdist(PointId(0), PointId(9)).is_err());
    }

    #[test]
    fn walls_cutting_examples() {
        let path = fixtures::path(3);
        assert_eq!(
            path.walls_cutting(&BitSet::from_indices(3, [0, 1])),
            vec![0]
        );
        assert!(path.walls_cutting(&BitSet::from_indices(3, [0])).is_empty());
        let tri = fixtures::tripod_star(3);
        assert_eq!(tri.walls_cutting(&BitSet::full(3)), vec![0, 1, 2]);
    }

    #[test]
    fn local_finiteness_profile_examples() {
        let path = fixtures::path(3);
        let prof = path
            .local_finiteness_profile(&[Weight::new(1, 2), Weight::new(3, 2)])
            .unwrap();
        assert_eq!(prof[0].1, w(0));
        assert_eq!(prof[1].1, w(2)); // B(p1, 1.5) is the whole path, cut by both walls
        let tri = fixtures::tripod_star(3);
        let prof = tri.local_finiteness_profile(&[Weight::new(5, 2)]).unwrap();
        assert_eq!(prof[0].1, w(3));
        assert!(path.local_finiteness_profile(&[]).is_err());
        assert!(path.local_finiteness_profile(&[w(-1)]).is_err());
    }

    #[test]
    fn halfspace_convexity_holds() {
        for x in [
            fixtures::path(3),
            fixtures::tripod_star(3),
            fixtures::hypercube(3),
        ] {
            assert!(x.check_halfspace_convexity().passed());
        }
    }

    #[test]
    fn identity_is_homomorphism() {
        let x = fixtures::path(3);
        let m = WallSpaceMap::new(&x, &x, vec![0, 1, 2]).unwrap();
        assert!(m.verify_homomorphism().passed());
        assert!(m.verify_monomorphism().passed());
        assert!(m.verify_coarse_surjectivity(w(0)).passed());
    }

    fn diag_source(weight: Weight) -> WallSpace {
        let mut s = WallSpace::new(vec!["q0".into(), "q1".into()]).unwrap();
        s.add_wall_by_labels(["q0"], weight).unwrap();
        s
    }

    #[test]
    fn diag_pushforward_weights() {
        let target = fixtures::hypercube(2);
        // (0,0) is index 0, (1,1) is index 3
        let src = diag_source(w(2));
        let m = WallSpaceMap::new(&src, &target, vec![0, 3]).unwrap();
        assert!(m.verify_homomorphism().passed());
        assert!(m.verify_monomorphism().passed());

        let bad = diag_source(w(1));
        let m = WallSpaceMap::new(&bad, &target, vec![0, 3]).unwrap();
        assert!(!m.verify_homomorphism().passed());
    }

    #[test]
    fn diag_coarse_surjectivity() {
        let target = fixtures::hypercube(2);
        let src = diag_source(w(2));
        let m = WallSpaceMap::new(&src, &target, vec![0, 3]).unwrap();
        assert!(m.verify_coarse_surjectivity(w(1)).passed());
        assert!(!m.verify_coarse_surjectivity(Weight::new(1, 2)).passed());
    }

    #[test]
    fn path_restriction_monomorphism() {
        // source: {p0, p1} with the nontrivial wall plus a trivial wall so
        // that both PATH3 walls have a pullback target
        let mut src = WallSpace::new(vec!["p0".into(), "p1".into()]).unwrap();
        src.add_wall_by_labels(["p0"], w(1)).unwrap();
        src.add_wall_by_labels(["p0", "p1"], w(1)).unwrap();
        let target = fixtures::path(3);
        let m = WallSpaceMap::new(&src, &target, vec![0, 1]).unwrap();
        assert!(m.verify_monomorphism().passed());
    }

    #[test]
    fn product_examples() {
        let p2 = fixtures::path(2);
        let prod = p2.product(&p2);
        let cube = fixtures::hypercube(2);
        // same metric up to relabeling
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(
                    prod.wall_pdist(PointId(x), PointId(y)).unwrap(),
                    cube.wall_pdist(PointId(x), PointId(y)).unwrap()
                );
            }
        }

        let one = WallSpace::new(vec!["*".into()]).unwrap();
        let path3 = fixtures::path(3);
        let same = path3.product(&one);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(
                    same.wall_pdist(PointId(x), PointId(y)).unwrap(),
                    path3.wall_pdist(PointId(x), PointId(y)).unwrap()
                );
            }
        }

        let prod = path3.product(&p2);
        let a = path3.product_point(&p2, PointId(0), PointId(0));
        let b = path3.product_point(&p2, PointId(2), PointId(1));
        assert_eq!(prod.wall_pdist(a, b).unwrap(), w(3));
    }

    #[test]
    fn separation_subadditivity() {
        // W(x|y) subset of W(x|z) union W(z|y), the mechanism behind the
        // triangle inequality
        for x in [
            fixtures::tripod_star(3),
            fixtures::hypercube(3),
            fixtures::path(4),
        ] {
            for a in x.points() {
                for b in x.points() {
                    for c in x.points() {
                        let ab: Vec<usize> = x.walls_between(a, b).collect();
                        let ac: std::collections::HashSet<usize> = x.walls_between(a, c).collect();
                        let cb: std::collections::HashSet<usize> = x.walls_between(c, b).collect();
                        assert!(ab.iter().all(|i| ac.contains(i) || cb.contains(i)));
                    }
                }
            }
        }
    }
}
