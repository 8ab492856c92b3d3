//! Static 3-d tree for exact nearest-neighbor queries over a point set.
//!
//! Queries return exactly the point a linear scan would return: squared
//! distances are computed with the same expression in both paths, pruning
//! only discards subtrees that are *strictly* farther than the current
//! best, and ties on distance are broken by the lowest point index.

use nalgebra::Point3;

const LEAF_SIZE: usize = 16;

enum Node {
    /// Range into `order`.
    Leaf { start: usize, end: usize },
    Split {
        axis: usize,
        value: f64,
        left: usize,
        right: usize,
    },
}

pub(crate) struct KdTree {
    nodes: Vec<Node>,
    order: Vec<u32>,
    root: usize,
}

#[inline]
fn dist2(a: &Point3<f64>, b: &Point3<f64>) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    dx * dx + dy * dy + dz * dz
}

impl KdTree {
    /// Builds the tree over `points`. The caller guarantees a non-empty,
    /// finite point set.
    pub fn build(points: &[Point3<f64>]) -> Self {
        assert!(!points.is_empty());
        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        let mut nodes = Vec::new();
        let n = points.len();
        let root = Self::build_range(points, &mut order, &mut nodes, 0, n);
        KdTree { nodes, order, root }
    }

    fn build_range(
        points: &[Point3<f64>],
        order: &mut [u32],
        nodes: &mut Vec<Node>,
        start: usize,
        end: usize,
    ) -> usize {
        let len = end - start;
        if len <= LEAF_SIZE {
            nodes.push(Node::Leaf { start, end });
            return nodes.len() - 1;
        }

        // Split on the axis with the widest extent over this subset.
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for &i in &order[start..end] {
            let p = &points[i as usize];
            for (a, c) in [p.x, p.y, p.z].into_iter().enumerate() {
                lo[a] = lo[a].min(c);
                hi[a] = hi[a].max(c);
            }
        }
        let axis = (0..3)
            .max_by(|&a, &b| (hi[a] - lo[a]).partial_cmp(&(hi[b] - lo[b])).unwrap())
            .unwrap();

        let mid = len / 2;
        let coord = |i: u32| points[i as usize][axis];
        order[start..end]
            .select_nth_unstable_by(mid, |&a, &b| coord(a).partial_cmp(&coord(b)).unwrap());
        let value = coord(order[start + mid]);

        let node = nodes.len();
        nodes.push(Node::Leaf { start: 0, end: 0 }); // placeholder
        let left = Self::build_range(points, order, nodes, start, start + mid);
        let right = Self::build_range(points, order, nodes, start + mid, end);
        nodes[node] = Node::Split {
            axis,
            value,
            left,
            right,
        };
        node
    }

    /// Index and squared distance of the nearest point to `q`. Ties on
    /// distance resolve to the lowest index.
    pub fn nearest(&self, points: &[Point3<f64>], q: &Point3<f64>) -> (usize, f64) {
        let mut best = (usize::MAX, f64::INFINITY);
        self.search(points, q, self.root, &mut best);
        best
    }

    fn search(
        &self,
        points: &[Point3<f64>],
        q: &Point3<f64>,
        node: usize,
        best: &mut (usize, f64),
    ) {
        match &self.nodes[node] {
            Node::Leaf { start, end } => {
                for &i in &self.order[*start..*end] {
                    let d2 = dist2(&points[i as usize], q);
                    let i = i as usize;
                    if d2 < best.1 || (d2 == best.1 && i < best.0) {
                        *best = (i, d2);
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let delta = q[*axis] - value;
                let (near, far) = if delta <= 0.0 {
                    (*left, *right)
                } else {
                    (*right, *left)
                };
                self.search(points, q, near, best);
                // Visit the far side on exact equality too: a tie candidate
                // with a lower index may live there.
                if delta * delta <= best.1 {
                    self.search(points, q, far, best);
                }
            }
        }
    }
}
