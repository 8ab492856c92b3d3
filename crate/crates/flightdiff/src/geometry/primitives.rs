//! Surface discretization of solid primitives into point samples.
//!
//! Scenes are point clouds, so solid obstacles are represented by sampling
//! their surfaces on cell-centered grids. `density` is the target number of
//! sample points per square meter; the grid pitch is `1/sqrt(density)`,
//! rounded so every edge gets at least one cell.

use nalgebra::{Point3, Vector3};

/// Number of grid cells for an edge of length `len` at pitch `1/sqrt(density)`.
fn cell_count(len: f64, density: f64) -> usize {
    (len * density.sqrt()).ceil().max(1.0) as usize
}

/// Samples a planar patch spanned by `u` and `v` from `origin`, one point at
/// the center of each grid cell.
pub fn rect_face(
    origin: Point3<f64>,
    u: Vector3<f64>,
    v: Vector3<f64>,
    density: f64,
    out: &mut Vec<Point3<f64>>,
) {
    let nu = cell_count(u.norm(), density);
    let nv = cell_count(v.norm(), density);
    for i in 0..nu {
        let fu = (i as f64 + 0.5) / nu as f64;
        for j in 0..nv {
            let fv = (j as f64 + 0.5) / nv as f64;
            out.push(origin + u * fu + v * fv);
        }
    }
}

/// Samples the lateral (side) surface of a vertical cylinder whose base
/// circle is centered at `base` and which extends `height` upward.
///
/// The circumference and height are gridded independently; end caps are not
/// emitted.
pub fn cylinder_lateral_surface(
    base: Point3<f64>,
    radius: f64,
    height: f64,
    density: f64,
    out: &mut Vec<Point3<f64>>,
) {
    let n_theta = cell_count(2.0 * std::f64::consts::PI * radius, density);
    let n_z = cell_count(height, density);
    for k in 0..n_theta {
        let theta = (k as f64 + 0.5) / n_theta as f64 * 2.0 * std::f64::consts::PI;
        let (sin_t, cos_t) = theta.sin_cos();
        let x = base.x + radius * cos_t;
        let y = base.y + radius * sin_t;
        for j in 0..n_z {
            let z = base.z + (j as f64 + 0.5) / n_z as f64 * height;
            out.push(Point3::new(x, y, z));
        }
    }
}

/// Samples a sphere surface with a Fibonacci lattice, which spreads points
/// near-uniformly without pole clustering.
pub fn sphere_surface(center: Point3<f64>, radius: f64, density: f64, out: &mut Vec<Point3<f64>>) {
    let area = 4.0 * std::f64::consts::PI * radius * radius;
    let n = ((area * density).round() as usize).max(1);
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    for i in 0..n {
        // z descends evenly from pole to pole; azimuth advances by the
        // golden angle.
        let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
        let ring = (1.0 - z * z).max(0.0).sqrt();
        let theta = golden_angle * i as f64;
        out.push(Point3::new(
            center.x + radius * ring * theta.cos(),
            center.y + radius * ring * theta.sin(),
            center.z + radius * z,
        ));
    }
}
