//! Uniform 3-D grids and sampled scalar fields with trilinear
//! interpolation, trapezoid L^p norms, and a flat binary container format.

use crate::error::Error;
use crate::Result;
use std::io::{Read, Write};

/// Uniform grid on [-h1,h1]×[-h2,h2]×[-h3,h3], centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid3 {
    pub half_extent: [f64; 3],
    pub points: [usize; 3],
}

impl Grid3 {
    pub fn new(half_extent: [f64; 3], points: [usize; 3]) -> Result<Self> {
        for ax in 0..3 {
            if points[ax] < 2 {
                return Err(Error::invalid(format!(
                    "axis {ax} needs at least 2 points"
                )));
            }
            if !(half_extent[ax] > 0.0 && half_extent[ax].is_finite()) {
                return Err(Error::invalid(format!("axis {ax} extent must be positive")));
            }
        }
        Ok(Grid3 {
            half_extent,
            points,
        })
    }

    /// Cubical grid: same extent and point count on every axis.
    pub fn cube(half_extent: f64, points: usize) -> Result<Self> {
        Grid3::new([half_extent; 3], [points; 3])
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.half_extent[axis] / (self.points[axis] - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.points[0] * self.points[1] * self.points[2]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coord(&self, axis: usize, index: usize) -> f64 {
        -self.half_extent[axis] + self.spacing(axis) * index as f64
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.points[1] + j) * self.points[2] + k
    }

    /// Smallest grid (points per axis) with spacing ≤ h_max on every axis.
    pub fn points_for_spacing(half_extent: f64, h_max: f64) -> usize {
        ((2.0 * half_extent / h_max).ceil() as usize + 1).max(2)
    }
}

/// Scalar samples on a [`Grid3`], row-major with the last axis fastest.
#[derive(Debug, Clone)]
pub struct ScalarField3 {
    pub grid: Grid3,
    pub values: Vec<f64>,
}

impl ScalarField3 {
    pub fn from_fn(grid: Grid3, f: impl Fn(f64, f64, f64) -> f64 + Sync) -> Self {
        let mut values = vec![0.0; grid.len()];
        for i in 0..grid.points[0] {
            let x = grid.coord(0, i);
            for j in 0..grid.points[1] {
                let y = grid.coord(1, j);
                for k in 0..grid.points[2] {
                    let z = grid.coord(2, k);
                    values[grid.index(i, j, k)] = f(x, y, z);
                }
            }
        }
        ScalarField3 { grid, values }
    }

    pub fn constant(grid: Grid3, c: f64) -> Self {
        ScalarField3 {
            grid,
            values: vec![c; grid.len()],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.grid.len() {
            return Err(Error::invalid("value count does not match grid"));
        }
        if !self.values.iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("field contains non-finite samples"));
        }
        Ok(())
    }

    /// Trilinear interpolation with zero extension outside the grid box.
    pub fn sample(&self, p: [f64; 3]) -> f64 {
        let g = &self.grid;
        let mut idx = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for ax in 0..3 {
            let t = (p[ax] + g.half_extent[ax]) / g.spacing(ax);
            if t < 0.0 || t > (g.points[ax] - 1) as f64 {
                return 0.0;
            }
            let i = (t.floor() as usize).min(g.points[ax] - 2);
            idx[ax] = i;
            frac[ax] = t - i as f64;
        }
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let (fx, fy, fz) = (frac[0], frac[1], frac[2]);
        let v = |di: usize, dj: usize, dk: usize| self.values[g.index(i + di, j + dj, k + dk)];
        let c00 = v(0, 0, 0) * (1.0 - fz) + v(0, 0, 1) * fz;
        let c01 = v(0, 1, 0) * (1.0 - fz) + v(0, 1, 1) * fz;
        let c10 = v(1, 0, 0) * (1.0 - fz) + v(1, 0, 1) * fz;
        let c11 = v(1, 1, 0) * (1.0 - fz) + v(1, 1, 1) * fz;
        let c0 = c00 * (1.0 - fy) + c01 * fy;
        let c1 = c10 * (1.0 - fy) + c11 * fy;
        c0 * (1.0 - fx) + c1 * fx
    }

    /// Bilinear interpolation within the z-plane of index `iz`
    /// (independent path used by the planar reduction).
    pub fn sample_in_plane(&self, iz: usize, x: f64, y: f64) -> f64 {
        let g = &self.grid;
        let tx = (x + g.half_extent[0]) / g.spacing(0);
        let ty = (y + g.half_extent[1]) / g.spacing(1);
        if tx < 0.0 || tx > (g.points[0] - 1) as f64 || ty < 0.0 || ty > (g.points[1] - 1) as f64 {
            return 0.0;
        }
        let i = (tx.floor() as usize).min(g.points[0] - 2);
        let j = (ty.floor() as usize).min(g.points[1] - 2);
        let fx = tx - i as f64;
        let fy = ty - j as f64;
        let v = |di: usize, dj: usize| self.values[g.index(i + di, j + dj, iz)];
        v(0, 0) * (1.0 - fx) * (1.0 - fy)
            + v(1, 0) * fx * (1.0 - fy)
            + v(0, 1) * (1.0 - fx) * fy
            + v(1, 1) * fx * fy
    }

    fn axis_weight(&self, axis: usize, index: usize) -> f64 {
        let h = self.grid.spacing(axis);
        if index == 0 || index == self.grid.points[axis] - 1 {
            0.5 * h
        } else {
            h
        }
    }

    /// Trapezoid-rule cell weight at a node.
    pub fn node_weight(&self, i: usize, j: usize, k: usize) -> f64 {
        self.axis_weight(0, i) * self.axis_weight(1, j) * self.axis_weight(2, k)
    }

    /// L^p norm by trapezoid quadrature over the grid box.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let g = &self.grid;
        let mut acc = 0.0;
        for i in 0..g.points[0] {
            for j in 0..g.points[1] {
                for k in 0..g.points[2] {
                    let w = self.node_weight(i, j, k);
                    acc += w * self.values[g.index(i, j, k)].abs().powf(p);
                }
            }
        }
        acc.powf(1.0 / p)
    }

    pub fn l2_norm(&self) -> f64 {
        let g = &self.grid;
        let mut acc = 0.0;
        for i in 0..g.points[0] {
            for j in 0..g.points[1] {
                for k in 0..g.points[2] {
                    let v = self.values[g.index(i, j, k)];
                    acc += self.node_weight(i, j, k) * v * v;
                }
            }
        }
        acc.sqrt()
    }

    /// Flat binary container: three u64 axis sizes, three f64 half-extents,
    /// then row-major f64 samples, all little-endian.
    pub fn write_binary(&self, w: &mut impl Write) -> Result<()> {
        for ax in 0..3 {
            w.write_all(&(self.grid.points[ax] as u64).to_le_bytes())?;
        }
        for ax in 0..3 {
            w.write_all(&self.grid.half_extent[ax].to_le_bytes())?;
        }
        for v in &self.values {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary(r: &mut impl Read) -> Result<Self> {
        let mut b8 = [0u8; 8];
        let mut points = [0usize; 3];
        for p in points.iter_mut() {
            r.read_exact(&mut b8)?;
            *p = u64::from_le_bytes(b8) as usize;
        }
        let mut half_extent = [0.0f64; 3];
        for h in half_extent.iter_mut() {
            r.read_exact(&mut b8)?;
            *h = f64::from_le_bytes(b8);
        }
        let grid = Grid3::new(half_extent, points)?;
        let mut values = vec![0.0f64; grid.len()];
        for v in values.iter_mut() {
            r.read_exact(&mut b8)?;
            *v = f64::from_le_bytes(b8);
        }
        Ok(ScalarField3 { grid, values })
    }

    /// CSV rows `x,y,z,value` for small grids.
    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "x,y,z,value")?;
        let g = &self.grid;
        for i in 0..g.points[0] {
            for j in 0..g.points[1] {
                for k in 0..g.points[2] {
                    writeln!(
                        w,
                        "{},{},{},{}",
                        g.coord(0, i),
                        g.coord(1, j),
                        g.coord(2, k),
                        self.values[g.index(i, j, k)]
                    )?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_lp_norm_matches_volume() {
        let g = Grid3::new([1.0, 0.5, 2.0], [17, 9, 33]).unwrap();
        let f = ScalarField3::constant(g, 1.0);
        let vol = 2.0 * 1.0 * 2.0 * 0.5 * 2.0 * 2.0;
        for &p in &[1.0, 2.0, 4.0] {
            assert!(
                (f.lp_norm(p) - vol.powf(1.0 / p)).abs() < 1e-10,
                "p={p}"
            );
        }
    }

    #[test]
    fn trilinear_reproduces_nodes_and_linears() {
        let g = Grid3::cube(1.0, 9).unwrap();
        let f = ScalarField3::from_fn(g, |x, _, _| x);
        // Node values.
        assert!((f.sample([g.coord(0, 3), g.coord(1, 2), g.coord(2, 7)]) - g.coord(0, 3)).abs() < 1e-14);
        // Linear exactness inside.
        assert!((f.sample([0.123, -0.4, 0.77]) - 0.123).abs() < 1e-14);
        // Zero extension.
        assert_eq!(f.sample([1.5, 0.0, 0.0]), 0.0);
        // Constants.
        let c = ScalarField3::constant(g, 3.25);
        assert_eq!(c.sample([0.31, 0.02, -0.9]), 3.25);
    }

    #[test]
    fn binary_round_trip() {
        let g = Grid3::new([1.0, 2.0, 0.25], [4, 3, 5]).unwrap();
        let f = ScalarField3::from_fn(g, |x, y, z| x + 2.0 * y - z * z);
        let mut buf = Vec::new();
        f.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 3 * 8 + 3 * 8 + g.len() * 8);
        let back = ScalarField3::read_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(back.grid, g);
        assert_eq!(back.values, f.values);
    }
}
