//! Lloyd's k-means under Euclidean distance with seeded k-means++ starts.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ClusterError;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansResult {
    /// Cluster index of every input point.
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Set for clusters left without members (only in degenerate results).
    pub empty: Vec<bool>,
    pub iterations_used: usize,
    /// Within-cluster sum of squared distances.
    pub inertia: f64,
    /// Inertia after each completed iteration.
    pub inertia_history: Vec<f64>,
    /// True when there were fewer distinct points than clusters.
    pub degenerate: bool,
}

impl KMeansResult {
    pub fn cluster_count(&self) -> usize {
        self.empty.iter().filter(|e| !**e).count()
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index of the nearest centroid; ties go to the lower index.
pub fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, c) in centroids.iter().enumerate() {
        let d = squared_distance(point, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

pub fn inertia<P: AsRef<[f64]>>(points: &[P], assignments: &[usize], centroids: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .zip(assignments)
        .map(|(p, &a)| squared_distance(p.as_ref(), &centroids[a]))
        .sum()
}

fn means<P: AsRef<[f64]>>(points: &[P], assignments: &[usize], k: usize, dims: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; dims]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in points.iter().zip(assignments) {
        counts[a] += 1;
        for (s, x) in sums[a].iter_mut().zip(p.as_ref()) {
            *s += x;
        }
    }
    for (sum, &count) in sums.iter_mut().zip(&counts) {
        if count > 0 {
            sum.iter_mut().for_each(|s| *s /= count as f64);
        }
    }
    sums
}

fn bits_key(point: &[f64]) -> Vec<u64> {
    // +0.0 folds -0.0 into 0.0 so equal vectors share a key
    point.iter().map(|x| (x + 0.0).to_bits()).collect()
}

fn kmeans_plus_plus<P: AsRef<[f64]>>(points: &[P], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let first = rng.random_range(0..n);
    let mut centroids = vec![points[first].as_ref().to_vec()];
    let mut d2: Vec<f64> = points
        .iter()
        .map(|p| squared_distance(p.as_ref(), &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let u = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut pick = None;
        for (i, &d) in d2.iter().enumerate() {
            if d <= 0.0 {
                continue;
            }
            acc += d;
            pick = Some(i);
            if u < acc {
                break;
            }
        }
        let pick = pick.expect("at least k distinct points remain");
        let c = points[pick].as_ref().to_vec();
        for (dist, p) in d2.iter_mut().zip(points) {
            *dist = dist.min(squared_distance(p.as_ref(), &c));
        }
        centroids.push(c);
    }
    centroids
}

/// Moves points into empty clusters, each time taking the point farthest
/// from its centroid among clusters with at least two members.
fn repair_empty<P: AsRef<[f64]>>(points: &[P], assignments: &mut [usize], centroids: &mut [Vec<f64>]) {
    let k = centroids.len();
    loop {
        let mut sizes = vec![0usize; k];
        for &a in assignments.iter() {
            sizes[a] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else { return };
        let mut far = None;
        let mut far_d = -1.0;
        for (i, p) in points.iter().enumerate() {
            if sizes[assignments[i]] < 2 {
                continue;
            }
            let d = squared_distance(p.as_ref(), &centroids[assignments[i]]);
            if d > far_d {
                far = Some(i);
                far_d = d;
            }
        }
        let Some(i) = far else { return };
        assignments[i] = empty;
        centroids[empty] = points[i].as_ref().to_vec();
    }
}

/// Partitions `points` into `k` clusters.
///
/// Runs Lloyd iterations from a k-means++ start drawn from `seed` until the
/// assignment stops changing or `max_iter` iterations have run. With fewer
/// distinct points than `k`, each distinct point becomes its own cluster and
/// the surplus clusters are flagged empty.
pub fn kmeans<P: AsRef<[f64]>>(
    points: &[P],
    k: usize,
    seed: u64,
    max_iter: usize,
) -> Result<KMeansResult, ClusterError> {
    if k == 0 {
        return Err(ClusterError::InvalidInput("k must be at least 1".into()));
    }
    if max_iter == 0 {
        return Err(ClusterError::InvalidInput("max_iter must be at least 1".into()));
    }
    let Some(first) = points.first() else {
        return Err(ClusterError::InvalidInput("no points to cluster".into()));
    };
    let dims = first.as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != dims) {
        return Err(ClusterError::InvalidInput("points differ in dimension".into()));
    }
    if points.iter().flat_map(|p| p.as_ref()).any(|x| !x.is_finite()) {
        return Err(ClusterError::InvalidInput("points must be finite".into()));
    }

    let mut groups: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut distinct = Vec::new();
    let group_of: Vec<usize> = points
        .iter()
        .map(|p| {
            *groups.entry(bits_key(p.as_ref())).or_insert_with(|| {
                distinct.push(p.as_ref().to_vec());
                distinct.len() - 1
            })
        })
        .collect();
    if distinct.len() < k {
        let d = distinct.len();
        let mut centroids = distinct;
        centroids.resize(k, vec![0.0; dims]);
        return Ok(KMeansResult {
            assignments: group_of,
            centroids,
            empty: (0..k).map(|j| j >= d).collect(),
            iterations_used: 0,
            inertia: 0.0,
            inertia_history: Vec::new(),
            degenerate: true,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = kmeans_plus_plus(points, k, &mut rng);
    let mut assignments: Vec<usize> = Vec::new();
    let mut history = Vec::new();
    let mut iterations_used = 0;
    for _ in 0..max_iter {
        let mut next: Vec<usize> = points.iter().map(|p| nearest(p.as_ref(), &centroids).0).collect();
        if next == assignments {
            break;
        }
        repair_empty(points, &mut next, &mut centroids);
        assignments = next;
        centroids = means(points, &assignments, k, dims);
        history.push(inertia(points, &assignments, &centroids));
        iterations_used += 1;
    }
    Ok(KMeansResult {
        inertia: *history.last().expect("at least one iteration ran"),
        assignments,
        centroids,
        empty: vec![false; k],
        iterations_used,
        inertia_history: history,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cluster_centroid_is_the_mean() {
        let pts = vec![vec![0.0, 2.0], vec![4.0, 0.0], vec![2.0, 4.0]];
        let r = kmeans(&pts, 1, 5, 100).unwrap();
        assert_eq!(r.assignments, [0, 0, 0]);
        assert_eq!(r.centroids, vec![vec![2.0, 2.0]]);
        assert_eq!(r.inertia, 4.0 + 8.0 + 4.0);
    }

    #[test]
    fn two_blobs_separate() {
        let pts = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![10.0, 10.0], vec![10.0, 11.0]];
        for seed in 0..20 {
            let r = kmeans(&pts, 2, seed, 100).unwrap();
            assert_eq!(r.assignments[0], r.assignments[1]);
            assert_eq!(r.assignments[2], r.assignments[3]);
            assert_ne!(r.assignments[0], r.assignments[2]);
            assert_eq!(r.inertia, 1.0);
        }
    }

    #[test]
    fn identical_points_are_degenerate() {
        let pts = vec![vec![1.0, 1.0]; 5];
        let r = kmeans(&pts, 2, 0, 100).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.assignments, [0; 5]);
        assert_eq!(r.empty, [false, true]);
        assert_eq!(r.cluster_count(), 1);
    }

    #[test]
    fn more_clusters_than_distinct_points() {
        let pts = vec![vec![0.0], vec![3.0], vec![0.0], vec![-0.0]];
        let r = kmeans(&pts, 3, 0, 10).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.assignments, [0, 1, 0, 0]);
        assert_eq!(r.empty, [false, false, true]);
    }

    #[test]
    fn invalid_inputs() {
        let empty: Vec<Vec<f64>> = vec![];
        assert!(kmeans(&empty, 2, 0, 10).is_err());
        assert!(kmeans(&[vec![1.0]], 0, 0, 10).is_err());
        assert!(kmeans(&[vec![1.0], vec![1.0, 2.0]], 1, 0, 10).is_err());
        assert!(kmeans(&[vec![f64::NAN]], 1, 0, 10).is_err());
    }

    #[test]
    fn empty_cluster_repair_takes_the_farthest_point() {
        let pts = vec![vec![0.0], vec![1.0], vec![9.0]];
        let mut assignments = vec![0, 0, 0];
        let mut centroids = vec![vec![1.0], vec![100.0]];
        repair_empty(&pts, &mut assignments, &mut centroids);
        assert_eq!(assignments, [0, 0, 1]);
        assert_eq!(centroids[1], [9.0]);
    }
}
