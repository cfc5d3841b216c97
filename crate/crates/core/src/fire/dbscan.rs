use std::collections::HashMap;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DbscanParams {
    /// Neighborhood radius (m), inclusive.
    pub epsilon: f64,
    /// Neighbors (counting the point itself) needed for a core point.
    pub min_samples: usize,
}

impl Default for DbscanParams {
    fn default() -> Self {
        Self {
            epsilon: 0.5,
            min_samples: 2,
        }
    }
}

impl DbscanParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.min_samples == 0 {
            return Err(Error::config("min_samples must be at least 1"));
        }
        Ok(())
    }
}

/// Partition of point indices into clusters and noise.
///
/// Members within a cluster are ascending; clusters are ordered by their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clustering {
    pub clusters: Vec<Vec<usize>>,
    pub noise: Vec<usize>,
}

impl Clustering {
    /// Cluster id per input index, `None` for noise.
    pub fn labels(&self, n: usize) -> Vec<Option<usize>> {
        let mut labels = vec![None; n];
        for (id, members) in self.clusters.iter().enumerate() {
            for &i in members {
                labels[i] = Some(id);
            }
        }
        labels
    }
}

/// Uniform hash grid with cell edge = epsilon, so every neighbor of a point
/// lies in the 27 cells around it.
struct NeighborIndex<'a> {
    points: &'a [Vector3<f64>],
    inv_cell: f64,
    eps2: f64,
    buckets: HashMap<[i64; 3], Vec<usize>>,
}

impl<'a> NeighborIndex<'a> {
    fn new(points: &'a [Vector3<f64>], epsilon: f64) -> Self {
        let inv_cell = 1.0 / epsilon;
        let mut buckets: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(Self::key(p, inv_cell)).or_default().push(i);
        }
        Self {
            points,
            inv_cell,
            eps2: epsilon * epsilon,
            buckets,
        }
    }

    fn key(p: &Vector3<f64>, inv_cell: f64) -> [i64; 3] {
        [
            (p.x * inv_cell).floor() as i64,
            (p.y * inv_cell).floor() as i64,
            (p.z * inv_cell).floor() as i64,
        ]
    }

    fn neighbors(&self, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let p = &self.points[i];
        let [kx, ky, kz] = Self::key(p, self.inv_cell);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(bucket) = self.buckets.get(&[kx + dx, ky + dy, kz + dz]) {
                        out.extend(
                            bucket
                                .iter()
                                .copied()
                                .filter(|&j| (self.points[j] - p).norm_squared() <= self.eps2),
                        );
                    }
                }
            }
        }
    }
}

/// Density-based clustering with Euclidean distance.
///
/// Core points have at least `min_samples` points (itself included) within
/// `epsilon`. Clusters are the connected components of the core points under
/// the ε-neighbor relation. A non-core point within `epsilon` of some core
/// point joins the cluster of its nearest core neighbor (ties go to the core
/// point with the lexicographically smaller coordinates), which makes the
/// partition independent of input order. Everything else is noise.
pub fn dbscan(points: &[Vector3<f64>], params: &DbscanParams) -> Clustering {
    let n = points.len();
    if n == 0 {
        return Clustering::default();
    }
    let index = NeighborIndex::new(points, params.epsilon);
    let mut scratch = Vec::new();
    let neighborhoods: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            index.neighbors(i, &mut scratch);
            scratch.clone()
        })
        .collect();
    let is_core: Vec<bool> = neighborhoods
        .iter()
        .map(|nb| nb.len() >= params.min_samples)
        .collect();

    const UNASSIGNED: usize = usize::MAX;
    let mut label = vec![UNASSIGNED; n];
    let mut n_clusters = 0;
    let mut stack = Vec::new();
    for seed in 0..n {
        if !is_core[seed] || label[seed] != UNASSIGNED {
            continue;
        }
        label[seed] = n_clusters;
        stack.push(seed);
        while let Some(i) = stack.pop() {
            for &j in &neighborhoods[i] {
                if is_core[j] && label[j] == UNASSIGNED {
                    label[j] = n_clusters;
                    stack.push(j);
                }
            }
        }
        n_clusters += 1;
    }

    for i in 0..n {
        if is_core[i] {
            continue;
        }
        let nearest_core = neighborhoods[i]
            .iter()
            .copied()
            .filter(|&j| is_core[j])
            .min_by(|&a, &b| {
                let da = (points[a] - points[i]).norm_squared();
                let db = (points[b] - points[i]).norm_squared();
                da.total_cmp(&db)
                    .then_with(|| lex_cmp(&points[a], &points[b]))
                    .then(a.cmp(&b))
            });
        if let Some(j) = nearest_core {
            label[i] = label[j];
        }
    }

    let mut clusters = vec![Vec::new(); n_clusters];
    let mut noise = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        if l == UNASSIGNED {
            noise.push(i);
        } else {
            clusters[l].push(i);
        }
    }
    // Cluster ids were handed out in ascending seed order, but a border point
    // can precede its cluster's first core point.
    clusters.sort_by_key(|c| c[0]);
    Clustering { clusters, noise }
}

fn lex_cmp(a: &Vector3<f64>, b: &Vector3<f64>) -> std::cmp::Ordering {
    a.x.total_cmp(&b.x)
        .then(a.y.total_cmp(&b.y))
        .then(a.z.total_cmp(&b.z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[[f64; 3]]) -> Vec<Vector3<f64>> {
        v.iter().map(|p| Vector3::from(*p)).collect()
    }

    #[test]
    fn close_pair_clusters() {
        let c = dbscan(&pts(&[[0.0, 0.0, 0.0], [0.3, 0.0, 0.0]]), &DbscanParams::default());
        assert_eq!(c.clusters, vec![vec![0, 1]]);
        assert!(c.noise.is_empty());
    }

    #[test]
    fn far_pair_is_noise() {
        let c = dbscan(&pts(&[[0.0, 0.0, 0.0], [0.6, 0.0, 0.0]]), &DbscanParams::default());
        assert!(c.clusters.is_empty());
        assert_eq!(c.noise, vec![0, 1]);
    }

    #[test]
    fn epsilon_is_inclusive() {
        let c = dbscan(&pts(&[[0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]), &DbscanParams::default());
        assert_eq!(c.clusters.len(), 1);
    }

    #[test]
    fn border_point_joins_nearest_core() {
        // x = 1.0 is a border point equidistant (0.5) from cores at 0.5 and
        // 1.5; the tie goes to the lexicographically smaller core.
        let xs = [-0.25, 0.0, 0.25, 0.5, 1.0, 1.5, 1.75, 2.0, 2.25];
        let p: Vec<_> = xs.iter().map(|&x| Vector3::new(x, 0.0, 0.0)).collect();
        let params = DbscanParams { epsilon: 0.5, min_samples: 4 };
        let c = dbscan(&p, &params);
        assert_eq!(c.clusters, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8]]);
    }

    #[test]
    fn min_samples_one_makes_every_point_a_cluster() {
        let c = dbscan(&pts(&[[0.0, 0.0, 0.0], [9.0, 0.0, 0.0]]), &DbscanParams { epsilon: 0.1, min_samples: 1 });
        assert_eq!(c.clusters, vec![vec![0], vec![1]]);
    }

    #[test]
    fn validate_params() {
        assert!(DbscanParams { epsilon: 0.0, min_samples: 2 }.validate().is_err());
        assert!(DbscanParams { epsilon: 0.5, min_samples: 0 }.validate().is_err());
    }
}
