//! Vector enclosures in a moving orthogonal frame.
//!
//! Propagating a box through `v ↦ g + J v` in plain interval arithmetic
//! replaces the rotated image by its axis-aligned hull at every step, so
//! widths of planar orbits grow like `‖|J|‖^k` even when `J` is a near
//! rotation. Storing the set as `c + Q s`, with `Q` the orthogonal factor of
//! the midpoint of `J Q_prev`, keeps the box `s` aligned with the flow.

use super::linalg::{self, mat_mul, mat_vec, vec_add};
use super::ShootingError;
use crate::interval::Interval;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame<const D: usize> {
    c: [f64; D],
    q: [[f64; D]; D],
    s: [Interval; D],
}

fn point_matrix<const D: usize>(m: &[[f64; D]; D]) -> [[Interval; D]; D] {
    m.map(|row| row.map(Interval::point))
}

/// Orthonormal basis from the columns of `m`, taken in the given order.
fn orthonormal<const D: usize>(m: &[[f64; D]; D], order: &[usize; D]) -> [[f64; D]; D] {
    let mut cols: Vec<[f64; D]> = Vec::with_capacity(D);
    let candidates = order
        .iter()
        .map(|&j| std::array::from_fn(|i| m[i][j]))
        .chain((0..D).map(|j| std::array::from_fn(|i| if i == j { 1.0 } else { 0.0 })));
    for mut v in candidates {
        if cols.len() == D {
            break;
        }
        for u in &cols {
            let dot: f64 = (0..D).map(|i| u[i] * v[i]).sum();
            for i in 0..D {
                v[i] -= dot * u[i];
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-150 {
            cols.push(v.map(|x| x / norm));
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i]))
}

impl<const D: usize> Frame<D> {
    pub(crate) fn from_box(v: [Interval; D]) -> Self {
        Frame {
            c: [0.0; D],
            q: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 })),
            s: v,
        }
    }

    /// Enclosure of `{g + J v : v ∈ self, g ∈ g, J ∈ j}`.
    pub(crate) fn step(
        &self,
        j: &[[Interval; D]; D],
        g: &[Interval; D],
    ) -> Result<Self, ShootingError> {
        if D == 1 {
            let v = mat_vec(j, &self.hull()?)?;
            return Ok(Frame::from_box(vec_add(g, &v)?));
        }
        let c = self.c.map(Interval::point);
        let v = vec_add(g, &mat_vec(j, &c)?)?;
        let m = mat_mul(j, &point_matrix(&self.q))?;
        let mid: [[f64; D]; D] = m.map(|row| row.map(|x| x.mid()));
        let mut order: [usize; D] = std::array::from_fn(|k| k);
        let weight = |k: usize| {
            let norm = (0..D).map(|i| mid[i][k] * mid[i][k]).sum::<f64>().sqrt();
            norm * self.s[k].width()
        };
        order.sort_by(|&a, &b| weight(b).total_cmp(&weight(a)));
        let q = orthonormal(&mid, &order);
        let inv = inverse(&q)?;
        let c_new = v.map(|x| x.mid());
        let mut centered = [Interval::ZERO; D];
        for i in 0..D {
            centered[i] = v[i].sub(Interval::point(c_new[i]))?;
        }
        let s = vec_add(
            &mat_vec(&inv, &centered)?,
            &mat_vec(&mat_mul(&inv, &m)?, &self.s)?,
        )?;
        Ok(Frame { c: c_new, q, s })
    }

    /// Axis-aligned enclosure.
    pub(crate) fn hull(&self) -> Result<[Interval; D], ShootingError> {
        let qs = mat_vec(&point_matrix(&self.q), &self.s)?;
        let mut out = [Interval::ZERO; D];
        for i in 0..D {
            out[i] = Interval::point(self.c[i]).add(qs[i])?;
        }
        Ok(out)
    }
}

/// Interval enclosure of the inverse of a point matrix.
fn inverse<const D: usize>(q: &[[f64; D]; D]) -> Result<[[Interval; D]; D], ShootingError> {
    let a: Vec<Vec<Interval>> = q
        .iter()
        .map(|row| row.iter().map(|&x| Interval::point(x)).collect())
        .collect();
    let mut out = [[Interval::ZERO; D]; D];
    for j in 0..D {
        let e = (0..D)
            .map(|i| if i == j { Interval::ONE } else { Interval::ZERO })
            .collect();
        let col = linalg::solve(a.clone(), e)?;
        for i in 0..D {
            out[i][j] = col[i];
        }
    }
    Ok(out)
}
