//! Ehrhart data: lattice-point counts of dilates, h*-vectors and the volume
//! inequalities that follow from them.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{size_limit, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lattice::{stable_set_polytope, AntiBlockingPolytope};
use crate::polytope::{vertex_enumeration, HRep, Rational};

/// Default node cap for one dilate count.
pub const DEFAULT_BUDGET: u64 = 20_000_000;
/// Largest dimension accepted by [`type_b_eulerian`].
pub const MAX_EULERIAN_DIM: usize = 10;

/// Cap on search nodes; exceeding it raises `SizeLimit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub fn new(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: DEFAULT_BUDGET }
    }
}

/// Coefficients `h*_0..h*_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HStarVector {
    pub entries: Vec<BigUint>,
}

impl HStarVector {
    pub fn new(entries: Vec<BigUint>) -> Self {
        HStarVector { entries }
    }

    pub fn from_u64(entries: &[u64]) -> Self {
        HStarVector { entries: entries.iter().map(|&x| BigUint::from(x)).collect() }
    }

    /// Ambient dimension `d` (the vector has `d + 1` entries).
    pub fn dim(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// Index of the last nonzero entry.
    pub fn degree(&self) -> usize {
        self.entries.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn normalized_volume(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// `h*_k = h*_{d-k}` for every `k`.
    pub fn is_palindromic(&self) -> bool {
        let d = self.dim();
        (0..=d).all(|k| self.entries[k] == self.entries[d - k])
    }

    /// `h*_k = h*_{s-k}` where `s` is the degree.
    pub fn is_palindromic_about_degree(&self) -> bool {
        let s = self.degree();
        (0..=s).all(|k| self.entries[k] == self.entries[s - k])
    }

    /// Entries up to the degree.
    pub fn trimmed(&self) -> &[BigUint] {
        &self.entries[..=self.degree().min(self.dim())]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.entries.iter().map(|x| serde_json::Value::String(x.to_string())).collect())
    }

    pub fn to_csv(&self) -> String {
        self.trimmed().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Values `ehr(0..=d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartProfile {
    pub values: Vec<BigUint>,
}

impl EhrhartProfile {
    pub fn new(values: Vec<BigUint>) -> Self {
        EhrhartProfile { values }
    }

    pub fn from_u64(values: &[u64]) -> Self {
        EhrhartProfile { values: values.iter().map(|&x| BigUint::from(x)).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.values.iter().map(|x| serde_json::Value::String(x.to_string())).collect())
    }
}

/// What to count.
#[derive(Clone, Debug)]
pub enum CountSpec {
    /// `x >= 0, x(C) <= t` for every listed set; `weighted` counts each point
    /// with `2^nnz`, i.e. counts the signed lift.
    AntiBlocking { dim: usize, cliques: Vec<VertexSet>, weighted: bool },
    /// A small bounded polytope counted by scanning its bounding box.
    Explicit(HRep),
}

impl CountSpec {
    pub fn anti_blocking(p: &AntiBlockingPolytope) -> Self {
        CountSpec::AntiBlocking { dim: p.dim, cliques: p.facet_normals.clone(), weighted: false }
    }

    pub fn unconditional(p: &AntiBlockingPolytope) -> Self {
        CountSpec::AntiBlocking { dim: p.dim, cliques: p.facet_normals.clone(), weighted: true }
    }

    pub fn dim(&self) -> usize {
        match self {
            CountSpec::AntiBlocking { dim, .. } => *dim,
            CountSpec::Explicit(h) => h.dim,
        }
    }
}

struct CliqueCounter {
    weighted: bool,
    /// cliques containing the coordinate placed at each position
    touches: Vec<Vec<usize>>,
    /// cliques carried in the memo key before each position
    open: Vec<Vec<usize>>,
    memo: Vec<HashMap<Vec<u32>, BigUint>>,
    nodes: u64,
    budget: u64,
}

/// Greedy order keeping few partially assigned cliques alive.
fn coordinate_order(dim: usize, cliques: &[VertexSet]) -> Vec<usize> {
    let mut placed = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(dim);
    for _ in 0..dim {
        let open_after = |v: usize| {
            let s = placed.union(VertexSet::singleton(v));
            cliques.iter().filter(|c| !c.intersection(s).is_empty() && !c.is_subset(s)).count()
        };
        let v = (0..dim)
            .filter(|&v| !placed.contains(v))
            .min_by_key(|&v| (open_after(v), v))
            .expect("an unplaced coordinate remains");
        placed.insert(v);
        order.push(v);
    }
    order
}

impl CliqueCounter {
    fn new(dim: usize, cliques: &[VertexSet], weighted: bool, budget: Budget) -> Self {
        let order = coordinate_order(dim, cliques);
        let pos_set = |k: usize| VertexSet::from_iter(order[..k].iter().copied());
        let touches = order.iter().map(|&v| (0..cliques.len()).filter(|&c| cliques[c].contains(v)).collect()).collect();
        let open = (0..dim)
            .map(|k| {
                let before = pos_set(k);
                (0..cliques.len())
                    .filter(|&c| !cliques[c].intersection(before).is_empty() && !cliques[c].is_subset(before))
                    .collect()
            })
            .collect();
        CliqueCounter { weighted, touches, open, memo: vec![HashMap::new(); dim], nodes: 0, budget: budget.max_nodes }
    }

    fn count(&mut self, k: usize, rem: &mut [u32]) -> Result<BigUint> {
        let d = self.touches.len();
        if k == d {
            return Ok(BigUint::one());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(size_limit(format!("counting exceeded the budget of {} nodes", self.budget)));
        }
        let m = self.touches[k].iter().map(|&c| rem[c]).min().expect("coordinate is covered");
        if k + 1 == d {
            let m = BigUint::from(m);
            return Ok(if self.weighted { m * 2u32 + 1u32 } else { m + 1u32 });
        }
        let key: Vec<u32> = self.open[k].iter().map(|&c| rem[c]).collect();
        if let Some(v) = self.memo[k].get(&key) {
            return Ok(v.clone());
        }
        let mut total = BigUint::zero();
        for x in 0..=m {
            for &c in &self.touches[k] {
                rem[c] -= x;
            }
            let sub = self.count(k + 1, rem);
            for &c in &self.touches[k] {
                rem[c] += x;
            }
            let sub = sub?;
            if x > 0 && self.weighted {
                total += sub << 1;
            } else {
                total += sub;
            }
        }
        self.memo[k].insert(key, total.clone());
        Ok(total)
    }
}

fn count_anti_blocking(dim: usize, cliques: &[VertexSet], weighted: bool, t: u32, budget: Budget) -> Result<BigUint> {
    let covered = cliques.iter().fold(VertexSet::EMPTY, |a, c| a.union(*c));
    if covered != VertexSet::full(dim) {
        return Err(Error::InvalidArgument("every coordinate must lie in some facet normal".into()));
    }
    if dim == 0 {
        return Ok(BigUint::one());
    }
    let mut counter = CliqueCounter::new(dim, cliques, weighted, budget);
    let mut rem = vec![t; cliques.len()];
    counter.count(0, &mut rem)
}

fn ceil_i64(x: &Rational) -> Result<i64> {
    x.ceil().to_integer().to_i64().ok_or_else(|| size_limit("coordinate bound exceeds 64 bits"))
}

fn floor_i64(x: &Rational) -> Result<i64> {
    x.floor().to_integer().to_i64().ok_or_else(|| size_limit("coordinate bound exceeds 64 bits"))
}

fn count_explicit(h: &HRep, t: u32, budget: Budget) -> Result<BigUint> {
    let verts = vertex_enumeration(h)?;
    let d = h.dim;
    let tr = Rational::from_integer(BigInt::from(t));
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    let mut volume: u128 = 1;
    for i in 0..d {
        let min = verts.points.iter().map(|p| &p[i]).min().expect("nonempty");
        let max = verts.points.iter().map(|p| &p[i]).max().expect("nonempty");
        let (a, b) = (ceil_i64(&(min * &tr))?, floor_i64(&(max * &tr))?);
        volume = volume.saturating_mul((b - a + 1).max(0) as u128);
        lo.push(a);
        hi.push(b);
    }
    if volume > u128::from(budget.max_nodes) {
        return Err(size_limit(format!("box scan of {volume} points exceeds the budget")));
    }
    let rows: Vec<(Vec<BigInt>, BigInt)> = h
        .rows
        .iter()
        .map(|r| {
            let (ints, scale) = crate::polytope::primitive_integer(&r.normal);
            // <ints, x> <= t * rhs * scale, floor is exact for integer x
            let rhs = (&r.rhs * &scale * &tr).floor().to_integer();
            (ints, rhs)
        })
        .collect();
    let mut x = lo.clone();
    let mut count = BigUint::zero();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(count);
    }
    loop {
        if rows.iter().all(|(a, b)| {
            let s: BigInt = a.iter().zip(&x).map(|(ai, &xi)| ai * xi).sum();
            &s <= b
        }) {
            count += 1u32;
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(count);
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// `|tP ∩ Z^d|` (weighted specs give the count for the signed lift).
pub fn count_dilate(spec: &CountSpec, t: u32, budget: Budget) -> Result<BigUint> {
    match spec {
        CountSpec::AntiBlocking { dim, cliques, weighted } => count_anti_blocking(*dim, cliques, *weighted, t, budget),
        CountSpec::Explicit(h) => count_explicit(h, t, budget),
    }
}

/// `ehr(0..=d)`, dilates counted in parallel.
pub fn ehrhart_profile(spec: &CountSpec, budget: Budget) -> Result<EhrhartProfile> {
    let d = spec.dim() as u32;
    let values = (0..=d).into_par_iter().map(|t| count_dilate(spec, t, budget)).collect::<Result<Vec<_>>>()?;
    Ok(EhrhartProfile { values })
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Solve `sum_i h*_i * C(t + d - i, d) = ehr(t)` for `t = 0..=d`.
pub fn h_star_from_profile(profile: &EhrhartProfile) -> Result<HStarVector> {
    if profile.values.is_empty() {
        return Err(Error::InconsistentProfile("empty profile".into()));
    }
    let d = (profile.values.len() - 1) as u64;
    let mut h: Vec<BigInt> = Vec::with_capacity(profile.values.len());
    for t in 0..=d {
        let mut v = BigInt::from(profile.values[t as usize].clone());
        for (i, hi) in h.iter().enumerate() {
            v -= hi * BigInt::from(binomial(t + d - i as u64, d));
        }
        if v.is_negative() {
            return Err(Error::InconsistentProfile(format!("h*_{t} would be {v}")));
        }
        h.push(v);
    }
    Ok(HStarVector { entries: h.into_iter().map(|x| x.to_biguint().expect("checked nonnegative")).collect() })
}

pub fn h_star(spec: &CountSpec, budget: Budget) -> Result<HStarVector> {
    h_star_from_profile(&ehrhart_profile(spec, budget)?)
}

pub fn normalized_volume(h: &HStarVector) -> BigUint {
    h.normalized_volume()
}

pub fn is_palindromic(h: &HStarVector) -> bool {
    h.is_palindromic()
}

/// `B(d, .)`: the h*-vector of `[-1,1]^d`.
pub fn type_b_eulerian(d: usize) -> Result<Vec<BigUint>> {
    if d > MAX_EULERIAN_DIM {
        return Err(size_limit(format!("type B Eulerian numbers limited to d <= {MAX_EULERIAN_DIM}")));
    }
    let values = (0..=d as u32).map(|t| BigUint::from(2 * t + 1).pow(d as u32)).collect();
    Ok(h_star_from_profile(&EhrhartProfile { values })?.entries)
}

/// h* of the signed lift of the stable-set polytope of a perfect graph.
pub fn unconditional_h_star(g: &Graph, budget: Budget) -> Result<HStarVector> {
    h_star(&CountSpec::unconditional(&stable_set_polytope(g)?), budget)
}

/// `C(d,i) <= h*_i <= B(d,i)` for the signed lift of `P_G`.
pub fn sandwich_check(g: &Graph, budget: Budget) -> Result<bool> {
    let h = unconditional_h_star(g, budget)?;
    sandwich_holds(&h)
}

pub fn sandwich_holds(h: &HStarVector) -> Result<bool> {
    let d = h.dim();
    let upper = type_b_eulerian(d)?;
    Ok((0..=d).all(|i| binomial(d as u64, i as u64) <= h.entries[i] && h.entries[i] <= upper[i]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahlerReport {
    pub product: BigUint,
    pub bound: BigUint,
    pub ok: bool,
    pub equality: bool,
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `4^d d!`.
pub fn mahler_bound(d: usize) -> BigUint {
    (BigUint::one() << (2 * d)) * factorial(d as u64)
}

/// `Vol(U P_G) * Vol(U P_{complement})` against `4^d d!`.
pub fn mahler_check(g: &Graph, budget: Budget) -> Result<MahlerReport> {
    let a = unconditional_h_star(g, budget)?.normalized_volume();
    let b = unconditional_h_star(&g.complement(), budget)?.normalized_volume();
    Ok(mahler_report(g.n(), a * b))
}

pub fn mahler_report(d: usize, product: BigUint) -> MahlerReport {
    let bound = mahler_bound(d);
    MahlerReport { ok: product >= bound, equality: product == bound, product, bound }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMode {
    AntiBlocking,
    Unconditional,
}

/// `floor(d!/vol)` resp. `floor(4^d d!/vol)` for a normalized volume `vol`.
pub fn saint_raymond_lower_bound(vol: &BigUint, d: usize, mode: BoundMode) -> Result<BigUint> {
    if vol.is_zero() {
        return Err(Error::InvalidArgument("volume must be positive".into()));
    }
    let num = match mode {
        BoundMode::AntiBlocking => factorial(d as u64),
        BoundMode::Unconditional => mahler_bound(d),
    };
    Ok(num.div_floor(vol))
}
