//! Exact double description for polyhedral cones `{ y : <a_k, y> >= 0 }`.
//!
//! Constraints are inserted one at a time in the given order. Lineality is
//! tracked explicitly so that lower-dimensional inputs (equalities written as
//! inequality pairs) work without a separate projection step. Adjacency of
//! rays is decided combinatorially from their zero sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1u64 << (i % 64);
    }
    fn set_prefix(&mut self, k: usize) {
        for i in 0..k {
            self.insert(i);
        }
    }
    fn and(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

/// Generators of a cone: a basis of its lineality space and its extreme rays.
#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divide out the content of an integer vector.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn combine(s: &BigInt, x: &[BigInt], t: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    // s*x - t*y
    let mut out: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| s * a - t * b).collect();
    make_primitive(&mut out);
    out
}

/// Extreme rays and lineality of `{ y in R^dim : <row, y> >= 0 for all rows }`.
pub fn cone_generators(dim: usize, rows: &[Vec<BigInt>]) -> ConeGenerators {
    let m = rows.len();
    let mut lin: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut lv = lin.remove(pos);
            let mut s = dot(a, &lv);
            if s.is_negative() {
                lv.iter_mut().for_each(|x| *x = -&*x);
                s = -s;
            }
            for l in lin.iter_mut() {
                let t = dot(a, l);
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &lv);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v);
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &lv);
                }
                r.zeros.insert(k);
            }
            let mut zeros = BitSet::new(m);
            zeros.set_prefix(k);
            rays.push(Ray { v: lv, zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        for &p in &positive {
            for &q in &negative {
                let common = rays[p].zeros.and(&rays[q].zeros);
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if adjacent {
                    // (a.p) q - (a.q) p has zero inner product with a
                    let v = combine(&values[p], &rays[q].v, &values[q], &rays[p].v);
                    let mut zeros = common;
                    zeros.insert(k);
                    next.push(Ray { v, zeros });
                }
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            if values[i].is_positive() {
                next.push(r);
            } else if values[i].is_zero() {
                let mut r = r;
                r.zeros.insert(k);
                next.push(r);
            }
        }
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    ConeGenerators { lineality: lin, rays: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn positive_orthant() {
        let rows = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let g = cone_generators(3, &rows);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays, vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn halfspace_keeps_lineality() {
        let g = cone_generators(3, &[v(&[1, 1, 0])]);
        assert_eq!(g.lineality.len(), 2);
        assert_eq!(g.rays.len(), 1);
        for l in &g.lineality {
            assert!(dot(&v(&[1, 1, 0]), l).is_zero());
        }
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height 1: y0 - y1 >= 0, y0 + y1 >= 0, ...
        let rows = vec![v(&[1, -1, 0]), v(&[1, 1, 0]), v(&[1, 0, -1]), v(&[1, 0, 1])];
        let g = cone_generators(3, &rows);
        assert!(g.lineality.is_empty());
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![v(&[1, -1, -1]), v(&[1, -1, 1]), v(&[1, 1, -1]), v(&[1, 1, 1])]);
    }
}
