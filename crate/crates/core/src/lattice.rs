//! Anti-blocking polytopes with 0/1 generators, their signed lifts, and the
//! graph constructions built on them: stable-set polytopes, anti-blocking
//! duality, Minkowski/convex-join constructions and Gale-dual pairs.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{size_limit, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::polytope::{
    dual_description, is_compressed, rat, vertex_enumeration, HRep, LatticePoint, Rational, Row, VRep,
};

/// Cap on lifted vertices/facets materialized in one call.
pub const MAX_MATERIALIZED: usize = 1 << 20;
/// Dimension cap for hull-based constructions.
pub const MAX_CONSTRUCTION_DIM: usize = 5;
/// Dimension cap for Gale-pair verification.
pub const MAX_GALE_DIM: usize = 9;

/// A sign vector in `{+1,-1}^d`; bit `i` set means coordinate `i` is negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    pub dim: usize,
    pub negative: u64,
}

impl SignVector {
    pub fn new(dim: usize, negative: u64) -> Self {
        SignVector { dim, negative: negative & VertexSet::full(dim).0 }
    }

    pub fn identity(dim: usize) -> Self {
        SignVector { dim, negative: 0 }
    }

    pub fn sign(&self, i: usize) -> i64 {
        if self.negative >> i & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn apply(&self, p: &[i64]) -> Vec<i64> {
        p.iter().enumerate().map(|(i, &x)| self.sign(i) * x).collect()
    }

    /// All `2^d` sign vectors in increasing bit order.
    pub fn all(dim: usize) -> impl Iterator<Item = SignVector> {
        (0..1u64 << dim).map(move |m| SignVector { dim, negative: m })
    }
}

/// Signed indicator: `+1` on `support \ negative`, `-1` on `negative`.
pub fn signed_indicator(dim: usize, support: VertexSet, negative: VertexSet) -> LatticePoint {
    LatticePoint(
        (0..dim)
            .map(|i| match (support.contains(i), negative.contains(i)) {
                (false, _) => 0,
                (true, false) => 1,
                (true, true) => -1,
            })
            .collect(),
    )
}

/// Iterate the subsets of `mask` in increasing numeric order.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

/// `conv` of the down-closure of 0/1 generators, with 0/1 facet normals (rhs 1)
/// and the implicit nonnegativity constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiBlockingPolytope {
    pub dim: usize,
    pub generators: Vec<VertexSet>,
    pub facet_normals: Vec<VertexSet>,
}

fn maximal_elements(sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> =
        sets.iter().copied().filter(|s| !sets.iter().any(|t| t != s && s.is_subset(*t))).collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    out.dedup();
    out
}

impl AntiBlockingPolytope {
    /// Validate the antichain and tightness invariants.
    pub fn new(dim: usize, generators: Vec<VertexSet>, facet_normals: Vec<VertexSet>) -> Result<Self> {
        let full = VertexSet::full(dim);
        if generators.iter().chain(&facet_normals).any(|s| !s.is_subset(full)) {
            return Err(Error::InvalidArgument("set outside the coordinate range".into()));
        }
        if maximal_elements(&generators).len() != generators.len() {
            return Err(Error::InvalidArgument("generators do not form an antichain".into()));
        }
        for g in &generators {
            if facet_normals.iter().any(|c| g.intersection(*c).len() > 1) {
                return Err(Error::InvalidArgument("generator violates a facet inequality".into()));
            }
            if !facet_normals.is_empty() && !facet_normals.iter().any(|c| g.intersection(*c).len() == 1) {
                return Err(Error::InvalidArgument("generator is tight on no facet".into()));
            }
        }
        Ok(AntiBlockingPolytope { dim, generators, facet_normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All 0/1 points below some generator, sorted by bitmask.
    pub fn down_closure(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self.generators.iter().flat_map(|g| submasks(g.0).map(VertexSet)).collect();
        out.sort_by_key(|s| s.0);
        out.dedup();
        out
    }

    /// Vertices (every 0/1 point of a down-closed 0/1 set is a vertex).
    pub fn vrep(&self) -> VRep {
        let pts: Vec<LatticePoint> =
            self.down_closure().into_iter().map(|s| LatticePoint(s.indicator(self.dim))).collect();
        VRep::from_lattice(self.dim, &pts).expect("down-closure contains the origin")
    }

    /// Nonnegativity rows followed by the facet rows `<1_C, x> <= 1`.
    pub fn hrep(&self) -> HRep {
        let mut rows = Vec::with_capacity(self.dim + self.facet_normals.len());
        for i in 0..self.dim {
            let mut a = vec![rat(0); self.dim];
            a[i] = rat(-1);
            rows.push(Row::new(a, rat(0)));
        }
        for c in &self.facet_normals {
            rows.push(Row::new(c.indicator(self.dim).into_iter().map(rat).collect(), rat(1)));
        }
        HRep { dim: self.dim, rows }
    }

    /// Swap the roles of generators and facet normals.
    pub fn antiblocking_dual(&self) -> AntiBlockingPolytope {
        AntiBlockingPolytope {
            dim: self.dim,
            generators: self.facet_normals.clone(),
            facet_normals: self.generators.clone(),
        }
    }

    /// Lattice points grouped by support size: `(size, count)` for sizes `0..=max`.
    pub fn lattice_points_weighted(&self) -> Vec<(usize, BigUint)> {
        let pts = self.down_closure();
        let max = pts.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut counts = vec![BigUint::zero(); max + 1];
        for s in pts {
            counts[s.len()] += 1u32;
        }
        counts.into_iter().enumerate().collect()
    }

    pub fn unconditional(&self) -> UnconditionalPolytope {
        UnconditionalPolytope { base: self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "dim": self.dim,
            "generators": self.generators.iter().map(|s| s.indicator(self.dim)).collect::<Vec<_>>(),
            "facet_normals": self.facet_normals.iter().map(|s| s.indicator(self.dim)).collect::<Vec<_>>(),
        })
    }
}

/// Stable-set polytope of a perfect graph with its clique description.
pub fn stable_set_polytope(g: &Graph) -> Result<AntiBlockingPolytope> {
    if !g.is_perfect()? {
        return Err(Error::NotPerfect);
    }
    Ok(AntiBlockingPolytope { dim: g.n(), generators: g.maximal_stable_sets(), facet_normals: g.maximal_cliques() })
}

/// Vertices of the stable-set polytope of any graph (no facet claims).
pub fn stable_set_vertices(g: &Graph) -> VRep {
    let pts: Vec<LatticePoint> = g.stable_sets().into_iter().map(|s| LatticePoint(s.indicator(g.n()))).collect();
    VRep::from_lattice(g.n(), &pts).expect("empty set is stable")
}

/// Whether the nonnegative orthant piece of the signed lift is compressed,
/// computed from the vertices alone so it applies to imperfect graphs too.
pub fn orthant_piece_is_compressed(g: &Graph) -> Result<bool> {
    let v = stable_set_vertices(g);
    let h = dual_description(&v)?;
    is_compressed(&v, &h)
}

/// Gorenstein criterion for stable-set polytopes: co-well-coveredness.
pub fn is_gorenstein_stable(g: &Graph) -> Result<bool> {
    if !g.is_perfect()? {
        return Err(Error::NotPerfect);
    }
    Ok(g.is_co_well_covered())
}

/// The signed lift `{p : |p| in P}` of an anti-blocking polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnconditionalPolytope {
    pub base: AntiBlockingPolytope,
}

fn orbit_size_sum(sets: &[VertexSet]) -> BigUint {
    sets.iter().map(|s| BigUint::one() << s.len()).sum()
}

fn signed_orbit(dim: usize, sets: &[VertexSet]) -> impl Iterator<Item = LatticePoint> + '_ {
    sets.iter().flat_map(move |&s| submasks(s.0).map(move |neg| signed_indicator(dim, s, VertexSet(neg))))
}

impl UnconditionalPolytope {
    pub fn dim(&self) -> usize {
        self.base.dim
    }

    /// Distinct `sigma * v` over generators `v`.
    pub fn vertex_count(&self) -> BigUint {
        orbit_size_sum(&self.base.generators)
    }

    /// Distinct `sigma * a` over facet normals `a`.
    pub fn facet_count(&self) -> BigUint {
        orbit_size_sum(&self.base.facet_normals)
    }

    /// `|U P ∩ Z^d| = sum over lattice points of the base of 2^support`.
    pub fn lattice_point_count(&self) -> BigUint {
        self.base.lattice_points_weighted().into_iter().map(|(s, c)| c << s).sum()
    }

    /// Streaming vertex orbit; each vertex appears once.
    pub fn vertex_iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        signed_orbit(self.base.dim, &self.base.generators)
    }

    /// Streaming facet-normal orbit (rhs 1); each facet appears once.
    pub fn facet_iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        signed_orbit(self.base.dim, &self.base.facet_normals)
    }

    fn check_cap(count: &BigUint) -> Result<()> {
        if *count > BigUint::from(MAX_MATERIALIZED) {
            return Err(size_limit(format!("orbit of {count} elements exceeds {MAX_MATERIALIZED}")));
        }
        Ok(())
    }

    /// Sorted vertex list.
    pub fn vertices(&self) -> Result<Vec<LatticePoint>> {
        Self::check_cap(&self.vertex_count())?;
        let mut v: Vec<LatticePoint> = self.vertex_iter().collect();
        v.sort();
        Ok(v)
    }

    pub fn vrep(&self) -> Result<VRep> {
        VRep::from_lattice(self.dim(), &self.vertices()?)
    }

    /// Facets `<sigma a, x> <= 1`, sorted by normal.
    pub fn hrep(&self) -> Result<HRep> {
        Self::check_cap(&self.facet_count())?;
        let mut normals: Vec<LatticePoint> = self.facet_iter().collect();
        normals.sort();
        Ok(HRep { dim: self.dim(), rows: normals.iter().map(|a| Row::new(a.to_rational(), rat(1))).collect() })
    }

    /// Polar dual: the lift of the anti-blocking dual.
    pub fn polar(&self) -> UnconditionalPolytope {
        self.base.antiblocking_dual().unconditional()
    }

    /// Cartesian product; corresponds to the disjoint union of graphs.
    pub fn product(&self, other: &UnconditionalPolytope) -> Result<UnconditionalPolytope> {
        let d1 = self.dim();
        let dim = d1 + other.dim();
        if dim > 64 {
            return Err(size_limit("product exceeds 64 coordinates"));
        }
        let shift = |s: &VertexSet| VertexSet(s.0 << d1);
        let mut generators = Vec::new();
        for a in &self.base.generators {
            for b in &other.base.generators {
                generators.push(a.union(shift(b)));
            }
        }
        let facet_normals =
            self.base.facet_normals.iter().copied().chain(other.base.facet_normals.iter().map(shift)).collect();
        Ok(UnconditionalPolytope { base: AntiBlockingPolytope { dim, generators, facet_normals } })
    }

    /// Free sum; corresponds to the bipartite sum of graphs.
    pub fn free_sum(&self, other: &UnconditionalPolytope) -> Result<UnconditionalPolytope> {
        Ok(self.polar().product(&other.polar())?.polar())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "base": self.base.to_json(),
            "vertex_count": self.vertex_count().to_string(),
            "facet_count": self.facet_count().to_string(),
            "lattice_points": self.lattice_point_count().to_string(),
        })
    }
}

fn require_construction_pair(g1: &Graph, g2: &Graph) -> Result<()> {
    if g1.n() != g2.n() {
        return Err(Error::DimensionMismatch { expected: g1.n(), found: g2.n() });
    }
    if g1.n() > MAX_CONSTRUCTION_DIM {
        return Err(size_limit(format!("construction limited to {MAX_CONSTRUCTION_DIM} vertices")));
    }
    if !g1.is_perfect()? || !g2.is_perfect()? {
        return Err(Error::NotPerfect);
    }
    Ok(())
}

fn int_vrep(dim: usize, mut pts: Vec<Vec<i64>>) -> Result<VRep> {
    pts.sort();
    pts.dedup();
    VRep::from_ints(dim, &pts)?.vertices()
}

/// Vertices of `P_{G1} + (-P_{G2})`.
pub fn minkowski_construction(g1: &Graph, g2: &Graph) -> Result<VRep> {
    require_construction_pair(g1, g2)?;
    let d = g1.n();
    let (s1, s2) = (g1.stable_sets(), g2.stable_sets());
    let mut pts = Vec::with_capacity(s1.len() * s2.len());
    for a in &s1 {
        for b in &s2 {
            pts.push((0..d).map(|i| i64::from(a.contains(i)) - i64::from(b.contains(i))).collect());
        }
    }
    int_vrep(d, pts)
}

/// Vertices of `conv(P_{G1} ∪ -P_{G2})`.
pub fn convex_join(g1: &Graph, g2: &Graph) -> Result<VRep> {
    require_construction_pair(g1, g2)?;
    let d = g1.n();
    let mut pts: Vec<Vec<i64>> = g1.stable_sets().iter().map(|s| s.indicator(d)).collect();
    pts.extend(g2.stable_sets().iter().map(|s| s.indicator(d).into_iter().map(|x| -x).collect()));
    int_vrep(d, pts)
}

/// Result of the Gale-pair construction for a perfect CIS graph.
#[derive(Clone, Debug)]
pub struct GalePair {
    /// Maximal stable set indicators.
    pub p: VRep,
    /// Maximal clique indicators.
    pub q: VRep,
    pub verified: bool,
}

fn equality_system(dim: usize, others: &[Vec<Rational>]) -> HRep {
    let mut h = HRep { dim, rows: Vec::new() };
    for i in 0..dim {
        let mut a = vec![rat(0); dim];
        a[i] = rat(-1);
        h.rows.push(Row::new(a, rat(0)));
    }
    for v in others {
        h.push_equality(v.clone(), rat(1));
    }
    h
}

/// Each side equals `{x >= 0 : <x, v> = 1 for all vertices v of the other side}`.
pub fn verify_gale_pair(p: &VRep, q: &VRep) -> Result<bool> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: q.dim });
    }
    if p.dim > MAX_GALE_DIM {
        return Err(size_limit(format!("Gale verification limited to dimension {MAX_GALE_DIM}")));
    }
    for (a, b) in [(p, q), (q, p)] {
        match vertex_enumeration(&equality_system(a.dim, &b.points)) {
            Ok(v) if v.same_point_set(a) => {}
            Ok(_) | Err(Error::Empty) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

pub fn gale_pair(g: &Graph) -> Result<GalePair> {
    if !g.is_perfect()? {
        return Err(Error::NotPerfect);
    }
    if !g.is_cis() {
        return Err(Error::NotCis);
    }
    let d = g.n();
    let to_vrep = |sets: Vec<VertexSet>| {
        let pts: Vec<Vec<i64>> = sets.iter().map(|s| s.indicator(d)).collect();
        VRep::from_ints(d, &pts)
    };
    let p = to_vrep(g.maximal_stable_sets())?;
    let q = to_vrep(g.maximal_cliques())?;
    let verified = verify_gale_pair(&p, &q)?;
    Ok(GalePair { p, q, verified })
}
