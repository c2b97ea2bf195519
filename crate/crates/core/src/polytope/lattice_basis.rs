//! Lattice coordinates on the affine hull of a lattice point set.
//!
//! Unimodular column operations bring the difference vectors to the form
//! `[H | 0]`; the first `rank` columns of the accumulated transform then give
//! an isomorphism from the integer points of the affine hull onto `Z^rank`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::LatticePoint;
use crate::error::{size_limit, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeProjection {
    pub origin: LatticePoint,
    /// `dim x rank` matrix; row `i` is the image of the `i`-th unit vector.
    pub transform: Vec<Vec<BigInt>>,
    pub rank: usize,
}

impl AffineLatticeProjection {
    pub fn project(&self, p: &LatticePoint) -> Result<LatticePoint> {
        if p.dim() != self.origin.dim() {
            return Err(Error::DimensionMismatch { expected: self.origin.dim(), found: p.dim() });
        }
        let diff = p.sub(&self.origin);
        (0..self.rank)
            .map(|j| {
                let v: BigInt = diff.0.iter().zip(&self.transform).map(|(&x, row)| &row[j] * x).sum();
                v.to_i64().ok_or_else(|| size_limit("projected coordinate exceeds 64 bits"))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }
}

fn column_op(m: &mut [Vec<BigInt>], a: usize, b: usize, coeffs: [&BigInt; 4]) {
    // (col a, col b) <- (p*a + q*b, r*a + s*b)
    let [p, q, r, s] = coeffs;
    for row in m.iter_mut() {
        let x = row[a].clone();
        let y = row[b].clone();
        row[a] = p * &x + q * &y;
        row[b] = r * &x + s * &y;
    }
}

/// Projection of the affine hull of `points` onto a lattice basis.
pub fn affine_lattice_projection(points: &[LatticePoint]) -> Result<AffineLatticeProjection> {
    let origin = points.first().ok_or(Error::Empty)?.clone();
    let d = origin.dim();
    let mut rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| {
            if p.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
            }
            Ok(p.sub(&origin).0.into_iter().map(BigInt::from).collect())
        })
        .collect::<Result<_>>()?;
    let mut u: Vec<Vec<BigInt>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();

    let mut pivot = 0;
    for r in 0..rows.len() {
        if pivot == d {
            break;
        }
        for c in pivot + 1..d {
            if rows[r][c].is_zero() {
                continue;
            }
            let a = rows[r][pivot].clone();
            let b = rows[r][c].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let neg_bg = -bg;
            // new pivot column = x*a_col + y*b_col; other = -(b/g)*a_col + (a/g)*b_col
            column_op(&mut rows, pivot, c, [&x, &y, &neg_bg, &ag]);
            column_op(&mut u, pivot, c, [&x, &y, &neg_bg, &ag]);
        }
        if !rows[r][pivot].is_zero() {
            pivot += 1;
        }
    }
    let transform = u.into_iter().map(|row| row[..pivot].to_vec()).collect();
    Ok(AffineLatticeProjection { origin, transform, rank: pivot })
}
