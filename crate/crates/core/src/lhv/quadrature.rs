//! Gauss-Legendre nodes and the product rule on the unit sphere.

use std::f64::consts::PI;

use crate::spin::Direction;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes in ascending order.
///
/// Roots of `P_n` are found by Newton iteration from the Tricomi initial
/// guess; `P_n` and `P_n'` come from the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Product rule for the normalized uniform measure `dΩ/4π`: Gauss-Legendre
/// in `cos θ`, midpoint trapezoid in `φ`, `n` nodes in each.
#[derive(Debug, Clone)]
pub struct SphereRule {
    cos_nodes: Vec<f64>,
    cos_weights: Vec<f64>,
    n_phi: usize,
}

impl SphereRule {
    pub fn new(nodes_per_dim: usize) -> Self {
        let (cos_nodes, cos_weights) = gauss_legendre(nodes_per_dim);
        SphereRule {
            cos_nodes,
            cos_weights,
            n_phi: nodes_per_dim,
        }
    }

    pub fn len(&self) -> usize {
        self.cos_nodes.len() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Weight and point of node `k`; weights sum to 1.
    pub fn node(&self, k: usize) -> (f64, Direction) {
        let (i, j) = (k / self.n_phi, k % self.n_phi);
        let t = self.cos_nodes[i];
        let phi = 2.0 * PI * (j as f64 + 0.5) / self.n_phi as f64;
        let w = 0.5 * self.cos_weights[i] / self.n_phi as f64;
        let st = (1.0 - t * t).max(0.0).sqrt();
        let (sp, cp) = phi.sin_cos();
        let d = Direction::normalized(st * cp, st * sp, t).expect("point on sphere");
        (w, d)
    }
}
