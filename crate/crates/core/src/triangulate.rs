//! Pulling triangulations, unimodularity and flagness tests, and the sign lift
//! of a triangulation of an anti-blocking polytope to its unconditional hull.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{size_limit, Error, Result};
use crate::lattice::submasks;
use crate::polytope::{affine_dimension, simplex_normalized_volume, HRep, LatticePoint, Rational, VRep};

/// Maximum number of vertices of a polytope handed to the pulling recursion.
pub const MAX_PULLING_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    /// Sorted indices into the vertex table.
    pub vertex_ids: Vec<usize>,
}

impl Simplex {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Simplex { vertex_ids: ids }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub vertex_table: Vec<LatticePoint>,
    pub simplices: Vec<Simplex>,
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn points(&self, s: &Simplex) -> Vec<LatticePoint> {
        s.vertex_ids.iter().map(|&i| self.vertex_table[i].clone()).collect()
    }

    pub fn to_json(&self, heights: Option<&[(i64, Rational)]>) -> serde_json::Value {
        let mut v = json!({
            "vertex_table": self.vertex_table.iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
            "simplices": self.simplices.iter().map(|s| s.vertex_ids.clone()).collect::<Vec<_>>(),
        });
        if let Some(h) = heights {
            v["heights"] = h.iter().map(|(norm, w)| json!([norm.to_string(), w.to_string()])).collect();
        }
        v
    }
}

struct Puller<'a> {
    points: Vec<Vec<Rational>>,
    /// vertex masks of the facets of the polytope
    facet_masks: Vec<u64>,
    /// position of each vertex in the pulling order
    rank: &'a [usize],
    dims: HashMap<u64, usize>,
    memo: HashMap<u64, Vec<u64>>,
}

impl Puller<'_> {
    fn dim(&mut self, mask: u64) -> usize {
        if let Some(&d) = self.dims.get(&mask) {
            return d;
        }
        let pts: Vec<Vec<Rational>> =
            (0..self.points.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.points[i].clone()).collect();
        let d = affine_dimension(&pts).unwrap_or(0);
        self.dims.insert(mask, d);
        d
    }

    fn facets_of(&mut self, face: u64, dim: usize) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for j in 0..self.facet_masks.len() {
            let g = face & self.facet_masks[j];
            if g != face && g != 0 && !out.contains(&g) && self.dim(g) + 1 == dim {
                out.insert(g);
            }
        }
        out.into_iter().collect()
    }

    fn pull(&mut self, face: u64) -> Vec<u64> {
        if let Some(v) = self.memo.get(&face) {
            return v.clone();
        }
        let dim = self.dim(face);
        let out = if face.count_ones() as usize == dim + 1 {
            vec![face]
        } else {
            let apex = (0..64).filter(|&i| face >> i & 1 == 1).min_by_key(|&i| self.rank[i]).expect("face is nonempty");
            let mut out = Vec::new();
            for g in self.facets_of(face, dim) {
                if g >> apex & 1 == 1 {
                    continue;
                }
                for s in self.pull(g) {
                    out.push(s | 1u64 << apex);
                }
            }
            out
        };
        self.memo.insert(face, out.clone());
        out
    }
}

/// Pull vertices in the given order (a permutation of vertex indices).
pub fn pulling_triangulation(vertices: &[LatticePoint], facets: &HRep, order: &[usize]) -> Result<Triangulation> {
    let n = vertices.len();
    if n > MAX_PULLING_VERTICES {
        return Err(size_limit(format!("pulling limited to {MAX_PULLING_VERTICES} vertices, got {n}")));
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut sorted_order = order.to_vec();
    sorted_order.sort_unstable();
    if sorted_order != (0..n).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument("pulling order must be a permutation of the vertices".into()));
    }
    let mut rank = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }
    let points: Vec<Vec<Rational>> = vertices.iter().map(LatticePoint::to_rational).collect();
    let facet_masks = facets
        .rows
        .iter()
        .map(|r| (0..n).filter(|&i| r.tight_at(&points[i])).fold(0u64, |m, i| m | 1u64 << i))
        .collect();
    let mut puller = Puller { points, facet_masks, rank: &rank, dims: HashMap::new(), memo: HashMap::new() };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks = puller.pull(full);
    masks.sort_unstable();
    masks.dedup();
    let mut simplices: Vec<Simplex> =
        masks.into_iter().map(|m| Simplex::new((0..n).filter(|&i| m >> i & 1 == 1).collect())).collect();
    simplices.sort();
    Ok(Triangulation { vertex_table: vertices.to_vec(), simplices })
}

/// Pulling triangulation with vertices sorted and pulled lexicographically.
pub fn pulling_triangulation_lex(v: &VRep, h: &HRep) -> Result<Triangulation> {
    let mut pts = v.lattice_points()?;
    pts.sort();
    pts.dedup();
    let order: Vec<usize> = (0..pts.len()).collect();
    pulling_triangulation(&pts, h, &order)
}

pub fn is_unimodular(t: &Triangulation) -> Result<bool> {
    for s in &t.simplices {
        match simplex_normalized_volume(&t.points(s)) {
            Ok(v) if v.is_one() => {}
            Ok(_) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Sum of the normalized volumes of the simplices.
pub fn total_volume(t: &Triangulation) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for s in &t.simplices {
        total += simplex_normalized_volume(&t.points(s))?;
    }
    Ok(total)
}

/// `{ sigma S }` over sign vectors, deduplicated by sorted coordinate lists.
pub fn lift_unconditional(t: &Triangulation) -> Result<Triangulation> {
    if t.vertex_table.iter().any(|p| p.0.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidArgument("lifting needs a triangulation of the nonnegative orthant".into()));
    }
    let dim = t.vertex_table.first().map_or(0, LatticePoint::dim);
    if dim > 63 {
        return Err(size_limit("lifting limited to 63 coordinates"));
    }
    let lifted: Vec<Vec<LatticePoint>> = t
        .simplices
        .par_iter()
        .flat_map_iter(|s| {
            let pts = t.points(s);
            let support = pts
                .iter()
                .flat_map(|p| p.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i))
                .fold(0u64, |m, i| m | 1u64 << i);
            submasks(support)
                .map(|neg| {
                    let mut q: Vec<LatticePoint> = pts
                        .iter()
                        .map(|p| {
                            LatticePoint(
                                p.0.iter().enumerate().map(|(i, &x)| if neg >> i & 1 == 1 { -x } else { x }).collect(),
                            )
                        })
                        .collect();
                    q.sort();
                    q
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let keys: BTreeSet<Vec<LatticePoint>> = lifted.into_iter().collect();
    let table: Vec<LatticePoint> = keys.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let index: HashMap<&LatticePoint, usize> = table.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut simplices: Vec<Simplex> = keys.iter().map(|k| Simplex::new(k.iter().map(|p| index[p]).collect())).collect();
    simplices.sort();
    Ok(Triangulation { vertex_table: table.clone(), simplices })
}

type Bits = Vec<u64>;

fn bits_new(n: usize) -> Bits {
    vec![0; n.div_ceil(64).max(1)]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1u64 << (i % 64);
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &x)| (0..64).filter(move |i| x >> i & 1 == 1).map(move |i| w * 64 + i))
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_is_empty(b: &Bits) -> bool {
    b.iter().all(|&x| x == 0)
}

fn bron_kerbosch(adj: &[Bits], r: &mut Vec<usize>, p: Bits, x: Bits, out: &mut Vec<Vec<usize>>) {
    if bits_is_empty(&p) && bits_is_empty(&x) {
        out.push(r.clone());
        return;
    }
    let union: Bits = p.iter().zip(&x).map(|(a, b)| a | b).collect();
    let pivot = bits_iter(&union)
        .max_by_key(|&u| bits_and(&p, &adj[u]).iter().map(|w| w.count_ones()).sum::<u32>())
        .expect("nonempty");
    let mut p = p;
    let mut x = x;
    let cand: Vec<usize> = bits_iter(&p).filter(|&v| adj[pivot][v / 64] >> (v % 64) & 1 == 0).collect();
    for v in cand {
        r.push(v);
        bron_kerbosch(adj, r, bits_and(&p, &adj[v]), bits_and(&x, &adj[v]), out);
        r.pop();
        p[v / 64] &= !(1u64 << (v % 64));
        bits_set(&mut x, v);
    }
}

/// Clique-complex test: every clique of the 1-skeleton lies in a simplex.
pub fn is_flag(t: &Triangulation) -> bool {
    let n = t.vertex_table.len();
    let mut adj = vec![bits_new(n); n];
    let mut used = bits_new(n);
    for s in &t.simplices {
        for &a in &s.vertex_ids {
            bits_set(&mut used, a);
            for &b in &s.vertex_ids {
                if a != b {
                    bits_set(&mut adj[a], b);
                }
            }
        }
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), used, bits_new(n), &mut cliques);
    let faces: Vec<BTreeSet<usize>> = t.simplices.iter().map(|s| s.vertex_ids.iter().copied().collect()).collect();
    cliques.iter().all(|c| faces.iter().any(|f| c.iter().all(|v| f.contains(v))))
}

/// Heights of a pulling schedule over `count` vertices in pulling order: the
/// `i`-th vertex sits at `-(count + 1)^(count - 1 - i)`, so earlier pulls go
/// deeper. Emitted as a certificate only; nothing checks that it induces the
/// triangulation.
pub fn pulling_heights(count: usize) -> Vec<Rational> {
    let base = BigInt::from(count as u64 + 1);
    (0..count).map(|i| Rational::from_integer(-num_traits::pow(base.clone(), count - 1 - i))).collect()
}

/// Regularity certificate for the lift: `(||v||_1, omega(|v|))` per vertex.
pub fn lift_heights(
    lifted: &Triangulation,
    base: &Triangulation,
    base_heights: &[Rational],
) -> Result<Vec<(i64, Rational)>> {
    if base_heights.len() != base.vertex_table.len() {
        return Err(Error::DimensionMismatch { expected: base.vertex_table.len(), found: base_heights.len() });
    }
    let index: HashMap<&LatticePoint, usize> = base.vertex_table.iter().enumerate().map(|(i, p)| (p, i)).collect();
    lifted
        .vertex_table
        .iter()
        .map(|v| {
            let abs = v.abs();
            let i = index.get(&abs).ok_or_else(|| Error::InvalidArgument(format!("{abs:?} is not a base vertex")))?;
            Ok((v.l1_norm(), base_heights[*i].clone()))
        })
        .collect()
}

/// Kernel vector of the homogenized points when they form a circuit.
fn circuit_vector(points: &[&LatticePoint]) -> Option<Vec<Rational>> {
    let m = points.len();
    let d = points[0].dim();
    // columns are (p, 1); solve for a 1-dimensional kernel with full support
    let mut rows: Vec<Vec<Rational>> = (0..=d)
        .map(|r| points.iter().map(|p| Rational::from_integer(if r < d { p.0[r] } else { 1 }.into())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for j in 0..m {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..m {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != m {
        return None;
    }
    let free = (0..m).find(|c| !pivots.contains(c)).expect("one free column");
    let mut z = vec![Rational::zero(); m];
    z[free] = Rational::one();
    for (i, &c) in pivots.iter().enumerate() {
        z[c] = -rows[i][free].clone();
    }
    z.iter().all(|x| !x.is_zero()).then_some(z)
}

/// Two simplices meet in a common face iff no circuit has its positive part
/// in one and its negative part in the other.
pub fn intersect_properly(a: &[LatticePoint], b: &[LatticePoint]) -> bool {
    let mut union: Vec<&LatticePoint> = a.iter().chain(b).collect();
    union.sort();
    union.dedup();
    let d = union[0].dim();
    let in_a: Vec<bool> = union.iter().map(|p| a.contains(p)).collect();
    let in_b: Vec<bool> = union.iter().map(|p| b.contains(p)).collect();
    let m = union.len();
    for mask in 1u64..1u64 << m {
        let k = mask.count_ones() as usize;
        if !(2..=d + 2).contains(&k) {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        if idx.iter().all(|&i| in_a[i]) || idx.iter().all(|&i| in_b[i]) {
            continue;
        }
        let pts: Vec<&LatticePoint> = idx.iter().map(|&i| union[i]).collect();
        let Some(z) = circuit_vector(&pts) else { continue };
        let fits = |sign: bool| {
            idx.iter().zip(&z).all(|(&i, zi)| {
                let positive = (*zi > Rational::zero()) == sign;
                if positive {
                    in_a[i]
                } else {
                    in_b[i]
                }
            })
        };
        if fits(true) || fits(false) {
            return false;
        }
    }
    true
}

/// Every pair of simplices meets in a common face.
pub fn is_proper(t: &Triangulation) -> bool {
    let simplices: Vec<Vec<LatticePoint>> = t.simplices.iter().map(|s| t.points(s)).collect();
    (0..simplices.len())
        .into_par_iter()
        .all(|i| (i + 1..simplices.len()).all(|j| intersect_properly(&simplices[i], &simplices[j])))
}
