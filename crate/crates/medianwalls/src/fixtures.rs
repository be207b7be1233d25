//! Named wall-space fixtures and seeded random families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::wallspace::WallSpace;
use crate::Weight;

fn unit() -> Weight {
    Weight::from_integer(1)
}

/// n points on a line, n-1 unit prefix walls. path(3) is the PATH3 fixture.
pub fn path(n: usize) -> WallSpace {
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for k in 1..n {
        x.add_wall(BitSet::from_indices(n, 0..k), unit()).unwrap();
    }
    x
}

/// k points, each isolated by one unit wall. tripod_star(3) is TRIPOD3.
pub fn tripod_star(k: usize) -> WallSpace {
    let labels = (0..k).map(|i| format!("v{i}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for i in 0..k {
        x.add_wall(BitSet::from_indices(k, [i]), unit()).unwrap();
    }
    x
}

/// {0,1}^k with the k coordinate walls, unit weights. Point index is the
/// binary value of the coordinate vector; labels are bitstrings.
pub fn hypercube(k: usize) -> WallSpace {
    let n = 1usize << k;
    let labels = (0..n).map(|v| format!("{v:0k$b}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for bit in 0..k {
        x.add_wall(
            BitSet::from_indices(n, (0..n).filter(|v| v & (1 << bit) != 0)),
            unit(),
        )
        .unwrap();
    }
    x
}

/// Hypercube(3) with the corner (1,1,1) removed and the coordinate walls
/// restricted to the remaining 7 points.
pub fn punctured_cube() -> WallSpace {
    let labels = (0..7).map(|v| format!("{v:03b}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for bit in 0..3 {
        x.add_wall(
            BitSet::from_indices(7, (0..7).filter(|v| v & (1 << bit) != 0)),
            unit(),
        )
        .unwrap();
    }
    x
}

/// Three corner points of the unit square with the two coordinate walls.
pub fn corner3() -> WallSpace {
    let mut x = WallSpace::new(vec!["(0,0)".into(), "(1,0)".into(), "(0,1)".into()]).unwrap();
    x.add_wall(BitSet::from_indices(3, [1]), unit()).unwrap(); // x-coordinate wall
    x.add_wall(BitSet::from_indices(3, [2]), unit()).unwrap(); // y-coordinate wall
    x
}

/// 2n points on an even cycle; n "diameter" walls, wall i bounding the arc
/// {c_i, ..., c_{i+n-1}}. The wall metric is the cycle graph metric.
pub fn cycle_with_diagonal_walls(n: usize) -> WallSpace {
    let m = 2 * n;
    let labels = (0..m).map(|i| format!("c{i}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for i in 0..n {
        x.add_wall(BitSet::from_indices(m, (0..n).map(|j| (i + j) % m)), unit())
            .unwrap();
    }
    x
}

/// w x h grid with the coordinate cuts and unit weights. Point (i, j) sits
/// at dense index i*h + j.
pub fn grid(w: usize, h: usize) -> WallSpace {
    grid_weighted(w, h, |_| unit())
}

fn grid_weighted(w: usize, h: usize, mut weight: impl FnMut(usize) -> Weight) -> WallSpace {
    let n = w * h;
    let labels = (0..w)
        .flat_map(|i| (0..h).map(move |j| format!("({i},{j})")))
        .collect();
    let mut x = WallSpace::new(labels).unwrap();
    let mut wall = 0;
    for cut in 1..w {
        x.add_wall(
            BitSet::from_indices(n, (0..n).filter(|p| p / h < cut)),
            weight(wall),
        )
        .unwrap();
        wall += 1;
    }
    for cut in 1..h {
        x.add_wall(
            BitSet::from_indices(n, (0..n).filter(|p| p % h < cut)),
            weight(wall),
        )
        .unwrap();
        wall += 1;
    }
    x
}

/// Random tree on n vertices, one unit wall per edge (subtree vs rest).
pub fn tree(n: usize, seed: u64) -> WallSpace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x72_6565);
    let mut parent = vec![0usize; n];
    for i in 1..n {
        parent[i] = rng.gen_range(0..i);
    }
    let labels = (0..n).map(|i| format!("t{i}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for i in 1..n {
        // vertices whose path to the root passes through i
        let mut below = BitSet::new(n);
        for v in 0..n {
            let mut u = v;
            loop {
                if u == i {
                    below.insert(v);
                    break;
                }
                if u == 0 {
                    break;
                }
                u = parent[u];
            }
        }
        x.add_wall(below, unit()).unwrap();
    }
    x
}

/// Random nested family: prefix cuts of a line with random positions and
/// random integer weights; duplicate partitions keep multiset semantics.
pub fn random_nested(walls: usize, seed: u64) -> WallSpace {
    let n = walls + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e65_7374);
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let mut x = WallSpace::new(labels).unwrap();
    for _ in 0..walls {
        let k = rng.gen_range(1..n);
        let w = Weight::from_integer(rng.gen_range(1..=3));
        x.add_wall(BitSet::from_indices(n, 0..k), w).unwrap();
    }
    x
}

/// Random transverse family: a grid of random shape with random integer
/// weights, so the vertical cuts all cross the horizontal cuts.
pub fn random_transverse(walls: usize, seed: u64) -> WallSpace {
    assert!(walls >= 2, "need at least one cut per direction");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472_616e);
    let vertical = rng.gen_range(1..walls);
    let w = vertical + 1;
    let h = walls - vertical + 1;
    grid_weighted(w, h, |_| Weight::from_integer(rng.gen_range(1..=3)))
}

/// Scale every wall weight by a positive rational factor.
pub fn scale_weights(x: &WallSpace, lambda: Weight) -> WallSpace {
    let mut y = WallSpace::new(x.labels().to_vec()).unwrap();
    for w in x.walls() {
        y.add_wall(w.side(crate::Side::A).clone(), w.weight() * lambda)
            .unwrap();
    }
    y
}

/// Named fixture families accepted by the CLI `generate` subcommand.
pub fn generate(family: &str, params: &[usize], seed: u64) -> Result<WallSpace> {
    let need = |k: usize| -> Result<usize> {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::input(format!("family {family} needs {} parameter(s)", k + 1)))
    };
    match family {
        "path" => {
            let n = need(0)?;
            if n < 1 {
                return Err(Error::input("path needs n >= 1"));
            }
            Ok(path(n))
        }
        "tripod-star" => {
            let k = need(0)?;
            if k < 2 {
                return Err(Error::input("tripod-star needs k >= 2"));
            }
            Ok(tripod_star(k))
        }
        "hypercube" => {
            let k = need(0)?;
            if k > 10 {
                return Err(Error::input("hypercube limited to k <= 10"));
            }
            Ok(hypercube(k))
        }
        "punctured-cube" => Ok(punctured_cube()),
        "cycle-with-diagonal-walls" => {
            let n = need(0)?;
            if n < 2 {
                return Err(Error::input("cycle needs n >= 2"));
            }
            Ok(cycle_with_diagonal_walls(n))
        }
        "grid" => {
            let w = need(0)?;
            let h = need(1)?;
            if w < 1 || h < 1 {
                return Err(Error::input("grid needs positive dimensions"));
            }
            Ok(grid(w, h))
        }
        "tree" => {
            let n = need(0)?;
            if n < 1 {
                return Err(Error::input("tree needs n >= 1"));
            }
            Ok(tree(n, seed))
        }
        "random-nested" => Ok(random_nested(need(0)?, seed)),
        "random-transverse" => {
            let k = need(0)?;
            if k < 2 {
                return Err(Error::input("random-transverse needs at least 2 walls"));
            }
            Ok(random_transverse(k, seed))
        }
        other => Err(Error::input(format!(
            "unknown fixture family {other:?}; known: path, cycle-with-diagonal-walls, \
             hypercube, tree, grid, tripod-star, punctured-cube, random-nested, random-transverse"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PointId;

    #[test]
    fn generate_named_fixtures() {
        assert_eq!(generate("path", &[3], 0).unwrap().wall_count(), 2);
        assert_eq!(generate("hypercube", &[3], 0).unwrap().wall_count(), 3);
        assert_eq!(generate("tripod-star", &[3], 0).unwrap().point_count(), 3);
        assert!(generate("nope", &[], 0).is_err());
    }

    #[test]
    fn cycle_metric_is_graph_metric() {
        let n = 4;
        let x = cycle_with_diagonal_walls(n);
        for i in 0..2 * n {
            for j in 0..2 * n {
                let hop = (i as i64 - j as i64).rem_euclid(2 * n as i64) as usize;
                let d = hop.min(2 * n - hop);
                assert_eq!(
                    x.wall_pdist(PointId(i), PointId(j)).unwrap(),
                    Weight::from_integer(d as i64)
                );
            }
        }
    }

    #[test]
    fn tree_walls_give_tree_metric_triangle() {
        let x = tree(8, 42);
        assert_eq!(x.wall_count(), 7);
        // pseudo-metric sanity on a random tree
        for a in x.points() {
            for b in x.points() {
                for c in x.points() {
                    let ab = x.wall_pdist(a, b).unwrap();
                    let ac = x.wall_pdist(a, c).unwrap();
                    let cb = x.wall_pdist(c, b).unwrap();
                    assert!(ab <= ac + cb);
                }
            }
        }
    }

    #[test]
    fn random_families_are_deterministic() {
        let a = random_nested(10, 7);
        let b = random_nested(10, 7);
        assert_eq!(a.walls().len(), b.walls().len());
        for (wa, wb) in a.walls().iter().zip(b.walls()) {
            assert_eq!(wa, wb);
        }
        let t = random_transverse(12, 3);
        assert_eq!(t.wall_count(), 12);
    }
}
