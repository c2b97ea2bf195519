//! Quadratic Gröbner bases of chain polytopes and unconditional chain
//! polytopes, given as marked binomials over lattice-point variables.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::ehrhart::{count_dilate, Budget, CountSpec};
use crate::error::{size_limit, Error, Result};
use crate::graph::{Poset, VertexSet};
use crate::lattice::{signed_indicator, submasks};
use crate::polytope::LatticePoint;

pub const MAX_ANTICHAIN_ELEMENTS: usize = 16;
pub const MAX_CHAIN_BASIS_ELEMENTS: usize = 10;
pub const MAX_UC_BASIS_ELEMENTS: usize = 8;
/// Cap on lattice points of the unconditional chain polytope in `uc_groebner`.
pub const MAX_UC_VARIABLES: usize = 4096;
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

/// All antichains (including the empty one), sorted by bitmask.
pub fn antichains(p: &Poset) -> Result<Vec<VertexSet>> {
    if p.n() > MAX_ANTICHAIN_ELEMENTS {
        return Err(size_limit(format!("antichain enumeration limited to {MAX_ANTICHAIN_ELEMENTS} elements")));
    }
    // antichains are the stable sets of the comparability graph
    Ok(p.comparability_graph().stable_sets())
}

/// `(min(A ∪ A'), (A ∩ A') ∪ (max(A ∪ A') \ min(A ∪ A')))`.
pub fn join_meet(p: &Poset, a: VertexSet, b: VertexSet) -> (VertexSet, VertexSet) {
    let u = a.union(b);
    let min = p.minimal(u);
    let max = p.maximal(u);
    (min, a.intersection(b).union(max.difference(min)))
}

/// Incomparable in the lattice of antichains ordered by their up-sets:
/// `min(A ∪ A')` is neither antichain. Testing `max(A ∪ A')` instead
/// misjudges pairs such as `{2}` and `{1,3}` over `1 < 2`, whose join and meet
/// are the pair itself.
pub fn is_incomparable(p: &Poset, a: VertexSet, b: VertexSet) -> bool {
    let min = p.minimal(a.union(b));
    min != a && min != b
}

/// A lattice point `1_B - 2 1_A` of the unconditional chain polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedAntichainPair {
    pub b: VertexSet,
    pub a: VertexSet,
}

impl SignedAntichainPair {
    pub fn new(b: VertexSet, a: VertexSet) -> Result<Self> {
        if !a.is_subset(b) {
            return Err(Error::InvalidArgument("negative part must lie in the antichain".into()));
        }
        Ok(SignedAntichainPair { b, a })
    }

    /// `B - (B ∩ E)`.
    pub fn restrict(b: VertexSet, e: VertexSet) -> Self {
        SignedAntichainPair { b, a: b.intersection(e) }
    }

    pub fn point(&self, dim: usize) -> LatticePoint {
        signed_indicator(dim, self.b, self.a)
    }

    pub fn render(&self) -> String {
        let fmt = |s: VertexSet| format!("{{{}}}", s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
        if self.a.is_empty() {
            format!("[{}]", fmt(self.b))
        } else {
            format!("[{}-{}]", fmt(self.b), fmt(self.a))
        }
    }
}

/// `underline(x_i x_j) - x_k x_l` with sorted index pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedBinomial {
    pub lead: [usize; 2],
    pub trail: [usize; 2],
}

impl MarkedBinomial {
    pub fn new(lead: [usize; 2], trail: [usize; 2]) -> Self {
        let mut lead = lead;
        let mut trail = trail;
        lead.sort_unstable();
        trail.sort_unstable();
        MarkedBinomial { lead, trail }
    }

    pub fn lead_is_squarefree(&self) -> bool {
        self.lead[0] != self.lead[1]
    }
}

/// A basis together with its variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub dim: usize,
    pub variables: Vec<SignedAntichainPair>,
    pub binomials: Vec<MarkedBinomial>,
}

impl Basis {
    pub fn points(&self) -> Vec<LatticePoint> {
        self.variables.iter().map(|v| v.point(self.dim)).collect()
    }

    pub fn to_json(&self, pretty: bool) -> serde_json::Value {
        let mut v = json!({
            "variables": self.variables.iter().map(|v| v.point(self.dim).0).collect::<Vec<_>>(),
            "binomials": self.binomials.iter().map(|b| json!({"lead": b.lead, "trail": b.trail})).collect::<Vec<_>>(),
        });
        if pretty {
            v["rendered"] = self.binomials.iter().map(|b| self.render(b)).collect();
        }
        v
    }

    pub fn render(&self, b: &MarkedBinomial) -> String {
        let r = |i: usize| self.variables[i].render();
        format!("_{}{}_ - {}{}", r(b.lead[0]), r(b.lead[1]), r(b.trail[0]), r(b.trail[1]))
    }
}

fn index_of(vars: &[SignedAntichainPair], v: SignedAntichainPair) -> usize {
    vars.binary_search(&v).expect("variable table contains every lattice point")
}

/// One binomial `[B][B'] - [B ⊔ B'][B ⊓ B']` per unordered incomparable pair.
pub fn chain_groebner(p: &Poset) -> Result<Basis> {
    if p.n() > MAX_CHAIN_BASIS_ELEMENTS {
        return Err(size_limit(format!("chain bases limited to {MAX_CHAIN_BASIS_ELEMENTS} elements")));
    }
    let anti = antichains(p)?;
    let variables: Vec<SignedAntichainPair> =
        anti.iter().map(|&b| SignedAntichainPair { b, a: VertexSet::EMPTY }).collect();
    let mut binomials: Vec<MarkedBinomial> = (0..anti.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let anti = &anti;
            (i + 1..anti.len()).filter_map(move |j| {
                let (b, c) = (anti[i], anti[j]);
                if !is_incomparable(p, b, c) {
                    return None;
                }
                let (join, meet) = join_meet(p, b, c);
                let ix = |s: VertexSet| anti.binary_search_by_key(&s.0, |x| x.0).expect("antichain");
                Some(MarkedBinomial::new([i, j], [ix(join), ix(meet)]))
            })
        })
        .collect();
    binomials.sort();
    Ok(Basis { dim: p.n(), variables, binomials })
}

/// All `B - A` with `A ⊆ B` antichains, sorted.
pub fn uc_lattice_points(p: &Poset) -> Result<Vec<SignedAntichainPair>> {
    let mut out: Vec<SignedAntichainPair> = antichains(p)?
        .into_iter()
        .flat_map(|b| submasks(b.0).map(move |a| SignedAntichainPair { b, a: VertexSet(a) }))
        .collect();
    out.sort();
    Ok(out)
}

/// `ehr(1)` of the unconditional chain polytope via the clique counter.
pub fn uc_point_count(p: &Poset) -> Result<BigUint> {
    let g = p.comparability_graph();
    let spec = CountSpec::AntiBlocking { dim: p.n(), cliques: g.maximal_cliques(), weighted: true };
    count_dilate(&spec, 1, Budget::default())
}

fn separable(x: &SignedAntichainPair, y: &SignedAntichainPair) -> bool {
    // opposite signs at some coordinate: positive in one, negative in the other
    let pos_x = x.b.difference(x.a);
    let pos_y = y.b.difference(y.a);
    !pos_x.intersection(y.a).is_empty() || !pos_y.intersection(x.a).is_empty()
}

/// Trail of a separable pair: the point `s = p + q` is written as
/// `sigma 1_J + sigma 1_M` with `J = min(supp s)`,
/// `M = {|s_i| = 2} ∪ (max(supp s) \ min(supp s))` and `sigma` the signs of `s`.
fn separable_trail(
    p: &Poset,
    dim: usize,
    x: &SignedAntichainPair,
    y: &SignedAntichainPair,
) -> [SignedAntichainPair; 2] {
    let sum: Vec<i64> = x.point(dim).add(&y.point(dim)).0;
    let support = VertexSet::from_iter((0..dim).filter(|&i| sum[i] != 0));
    let twos = VertexSet::from_iter((0..dim).filter(|&i| sum[i].abs() == 2));
    let negative = VertexSet::from_iter((0..dim).filter(|&i| sum[i] < 0));
    let min = p.minimal(support);
    let join = min;
    let meet = twos.union(p.maximal(support).difference(min));
    [SignedAntichainPair::restrict(join, negative), SignedAntichainPair::restrict(meet, negative)]
}

/// Gröbner basis of the unconditional chain polytope: sign images of the
/// chain basis and one binomial per separable pair of lattice points.
pub fn uc_groebner(p: &Poset) -> Result<Basis> {
    if p.n() > MAX_UC_BASIS_ELEMENTS {
        return Err(size_limit(format!("unconditional bases limited to {MAX_UC_BASIS_ELEMENTS} elements")));
    }
    let dim = p.n();
    let variables = uc_lattice_points(p)?;
    if variables.len() > MAX_UC_VARIABLES {
        return Err(size_limit(format!("{} lattice points exceed {MAX_UC_VARIABLES}", variables.len())));
    }
    let anti = antichains(p)?;
    let ix = |v: SignedAntichainPair| index_of(&variables, v);

    let mut first: Vec<MarkedBinomial> = (0..anti.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let anti = &anti;
            let ix = &ix;
            (i + 1..anti.len()).flat_map(move |j| {
                let (b, c) = (anti[i], anti[j]);
                let pairs: Vec<MarkedBinomial> = if is_incomparable(p, b, c) {
                    let (join, meet) = join_meet(p, b, c);
                    submasks(b.union(c).0)
                        .map(|e| {
                            let e = VertexSet(e);
                            let r = SignedAntichainPair::restrict;
                            MarkedBinomial::new([ix(r(b, e)), ix(r(c, e))], [ix(r(join, e)), ix(r(meet, e))])
                        })
                        .collect()
                } else {
                    Vec::new()
                };
                pairs
            })
        })
        .collect();

    let second: Vec<MarkedBinomial> = (0..variables.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let variables = &variables;
            let ix = &ix;
            (i + 1..variables.len()).filter_map(move |j| {
                let (x, y) = (&variables[i], &variables[j]);
                if !separable(x, y) {
                    return None;
                }
                let [t1, t2] = separable_trail(p, dim, x, y);
                Some(MarkedBinomial::new([i, j], [ix(t1), ix(t2)]))
            })
        })
        .collect();
    first.extend(second);
    first.sort();
    first.dedup();
    Ok(Basis { dim, variables, binomials: first })
}

/// Lead-side and trail-side points have the same sum.
pub fn verify_toric(b: &MarkedBinomial, points: &[LatticePoint]) -> bool {
    let get = |i: usize| points.get(i);
    match (get(b.lead[0]), get(b.lead[1]), get(b.trail[0]), get(b.trail[1])) {
        (Some(a), Some(c), Some(e), Some(f)) => a.add(c) == e.add(f),
        _ => false,
    }
}

/// Sorted multiset of variable indices.
type Monomial = Vec<usize>;

fn contains_lead(m: &[usize], lead: &[usize; 2]) -> Option<(usize, usize)> {
    let i = m.iter().position(|&x| x == lead[0])?;
    let j = m.iter().enumerate().position(|(k, &x)| k != i && x == lead[1])?;
    Some((i, j))
}

fn normal_form(mut m: Monomial, basis: &[MarkedBinomial], steps: &mut u64, cap: u64) -> Result<Monomial> {
    'outer: loop {
        for b in basis {
            if let Some((i, j)) = contains_lead(&m, &b.lead) {
                *steps += 1;
                if *steps > cap {
                    return Err(Error::StepCapExceeded(cap));
                }
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                m.remove(hi);
                m.remove(lo);
                m.extend_from_slice(&b.trail);
                m.sort_unstable();
                continue 'outer;
            }
        }
        return Ok(m);
    }
}

fn lcm(a: &[usize; 2], b: &[usize; 2]) -> Monomial {
    // multiset union with maximum multiplicities
    let mut out: Vec<usize> = a.to_vec();
    let mut rest: Vec<usize> = b.to_vec();
    for x in a {
        if let Some(k) = rest.iter().position(|y| y == x) {
            rest.remove(k);
        }
    }
    out.extend(rest);
    out.sort_unstable();
    out
}

fn quotient(m: &[usize], d: &[usize; 2]) -> Monomial {
    let mut out = m.to_vec();
    for x in d {
        let k = out.iter().position(|y| y == x).expect("divisor divides");
        out.remove(k);
    }
    out
}

/// Every S-pair reduces to zero under marked reduction.
pub fn marked_buchberger_verify(basis: &[MarkedBinomial], step_cap: u64) -> Result<bool> {
    let mut steps = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (f, g) = (&basis[i], &basis[j]);
            let l = lcm(&f.lead, &g.lead);
            if l.len() == 4 {
                // coprime leading terms always reduce to zero
                continue;
            }
            let mut s1 = quotient(&l, &f.lead);
            s1.extend_from_slice(&f.trail);
            s1.sort_unstable();
            let mut s2 = quotient(&l, &g.lead);
            s2.extend_from_slice(&g.trail);
            s2.sort_unstable();
            if normal_form(s1, basis, &mut steps, step_cap)? != normal_form(s2, basis, &mut steps, step_cap)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of degree-`k` monomials in `vars` variables divisible by no leading term.
pub fn standard_monomial_count(vars: usize, basis: &[MarkedBinomial], k: usize) -> BigUint {
    let leads: HashSet<[usize; 2]> = basis.iter().map(|b| b.lead).collect();
    fn rec(start: usize, vars: usize, left: usize, chosen: &mut Vec<usize>, leads: &HashSet<[usize; 2]>) -> BigUint {
        if left == 0 {
            return BigUint::from(1u32);
        }
        let mut total = BigUint::from(0u32);
        for v in start..vars {
            if chosen.iter().any(|&c| leads.contains(&[c.min(v), c.max(v)]))
                || leads.contains(&[v, v]) && chosen.last() == Some(&v)
            {
                continue;
            }
            chosen.push(v);
            total += rec(v, vars, left - 1, chosen, leads);
            chosen.pop();
        }
        total
    }
    rec(0, vars, k, &mut Vec::new(), &leads)
}

/// Leading terms pairwise distinct and no trailing term is a leading term.
pub fn is_reduced(basis: &[MarkedBinomial]) -> bool {
    let leads: BTreeSet<[usize; 2]> = basis.iter().map(|b| b.lead).collect();
    leads.len() == basis.len() && basis.iter().all(|b| !leads.contains(&b.trail))
}

/// S-pair check plus the Hilbert function: standard monomial counts in
/// degrees `0..=max_degree` must equal `ehr(k)`.
pub fn verify_groebner_basis(basis: &Basis, ehrhart: &[BigUint], step_cap: u64) -> Result<bool> {
    if !basis.binomials.iter().all(|b| verify_toric(b, &basis.points())) {
        return Ok(false);
    }
    for (k, e) in ehrhart.iter().enumerate() {
        if standard_monomial_count(basis.variables.len(), &basis.binomials, k) != *e {
            return Ok(false);
        }
    }
    marked_buchberger_verify(&basis.binomials, step_cap)
}

/// `ehr(0..=k)` of the chain polytope (or its signed lift).
pub fn chain_ehrhart(p: &Poset, k: u32, unconditional: bool, budget: Budget) -> Result<Vec<BigUint>> {
    let g = p.comparability_graph();
    let spec = CountSpec::AntiBlocking { dim: p.n(), cliques: g.maximal_cliques(), weighted: unconditional };
    (0..=k).map(|t| count_dilate(&spec, t, budget)).collect()
}
