//! The signed Birkhoff polytope `BB(n)`, its nonnegative part `Pos(n)` (the
//! matching polytope of `K_{n,n}`), the polar `C(n)` and its nonnegative part
//! `C+(n)`. Coordinates are matrix entries in row-major order.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::ehrhart::{h_star_from_profile, Budget, CountSpec, EhrhartProfile, HStarVector};
use crate::error::{size_limit, Error, Result};
use crate::graph::VertexSet;
use crate::lattice::AntiBlockingPolytope;
use crate::polytope::{LatticePoint, VRep};

/// Largest order with explicit vertex lists and DP counts.
pub const MAX_ORDER: usize = 4;
/// Largest order reproduced without the stretch flag.
pub const MAX_DEFAULT_TABLE_ORDER: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutationMatrix {
    pub perm: Vec<usize>,
    /// bit `i` set: the entry in row `i` is `-1`
    pub signs: u64,
}

impl SignedPermutationMatrix {
    pub fn to_point(&self) -> LatticePoint {
        let n = self.perm.len();
        let mut v = vec![0; n * n];
        for (i, &j) in self.perm.iter().enumerate() {
            v[i * n + j] = if self.signs >> i & 1 == 1 { -1 } else { 1 };
        }
        LatticePoint(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// signed Birkhoff polytope
    BB,
    /// nonnegative part of `BB`
    Pos,
    /// polar of `BB`
    C,
    /// nonnegative part of `C`
    Cplus,
}

impl Family {
    /// Table numbering used by the CLI: 1 Pos, 2 BB, 3 C+, 4 C.
    pub fn from_table(which: u8) -> Result<Family> {
        match which {
            1 => Ok(Family::Pos),
            2 => Ok(Family::BB),
            3 => Ok(Family::Cplus),
            4 => Ok(Family::C),
            _ => Err(Error::InvalidArgument(format!("no table {which}; expected 1..4"))),
        }
    }

    pub fn is_unconditional(self) -> bool {
        matches!(self, Family::BB | Family::C)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BirkhoffFamily {
    pub n: usize,
    pub which: Family,
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out.sort();
    out
}

fn permutation_sets(n: usize) -> Vec<VertexSet> {
    permutations(n).into_iter().map(|p| VertexSet::from_iter(p.iter().enumerate().map(|(i, &j)| i * n + j))).collect()
}

/// Rows and columns of the `n x n` grid, deduplicated (they coincide for `n = 1`).
fn line_sets(n: usize) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = (0..n)
        .map(|i| VertexSet::from_iter((0..n).map(|j| i * n + j)))
        .chain((0..n).map(|j| VertexSet::from_iter((0..n).map(|i| i * n + j))))
        .collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    out.dedup();
    out
}

fn sorted(mut v: Vec<VertexSet>) -> Vec<VertexSet> {
    v.sort_by(|a, b| a.lex_cmp(*b));
    v
}

impl BirkhoffFamily {
    pub fn new(n: usize, which: Family) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if n * n > 64 {
            return Err(size_limit("order exceeds 8"));
        }
        Ok(BirkhoffFamily { n, which })
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// The anti-blocking polytope in the nonnegative orthant.
    pub fn anti_blocking(&self) -> AntiBlockingPolytope {
        let (perms, lines) = (sorted(permutation_sets(self.n)), line_sets(self.n));
        match self.which {
            Family::BB | Family::Pos => {
                AntiBlockingPolytope { dim: self.dim(), generators: perms, facet_normals: lines }
            }
            Family::C | Family::Cplus => {
                AntiBlockingPolytope { dim: self.dim(), generators: lines, facet_normals: perms }
            }
        }
    }

    pub fn count_spec(&self) -> CountSpec {
        let p = self.anti_blocking();
        if self.which.is_unconditional() {
            CountSpec::unconditional(&p)
        } else {
            CountSpec::anti_blocking(&p)
        }
    }

    pub fn vertices(&self) -> Result<VRep> {
        if self.n > MAX_ORDER {
            return Err(size_limit(format!("explicit vertex lists limited to n <= {MAX_ORDER}")));
        }
        let p = self.anti_blocking();
        if self.which.is_unconditional() {
            p.unconditional().vrep()
        } else {
            Ok(p.vrep())
        }
    }

    pub fn vertex_count(&self) -> BigUint {
        let p = self.anti_blocking();
        if self.which.is_unconditional() {
            p.unconditional().vertex_count()
        } else {
            BigUint::from(p.down_closure().len())
        }
    }

    /// Facet count from the analytic facet lists.
    pub fn facet_count(&self) -> BigUint {
        let p = self.anti_blocking();
        if self.which.is_unconditional() {
            p.unconditional().facet_count()
        } else {
            BigUint::from(p.dim + p.facet_normals.len())
        }
    }

    /// Closed-form facet count; valid for `n >= 2`.
    pub fn facet_count_closed_form(&self) -> BigUint {
        let n = self.n as u64;
        let fact: BigUint = (1..=n).product();
        match self.which {
            Family::BB => BigUint::from(n) << (self.n + 1),
            Family::Pos => BigUint::from(n * n + 2 * n),
            Family::Cplus => BigUint::from(n * n) + fact,
            Family::C => fact << self.n,
        }
    }
}

/// All `2^n n!` signed permutation matrices.
pub fn signed_permutation_matrices(n: usize) -> Vec<SignedPermutationMatrix> {
    permutations(n)
        .into_iter()
        .flat_map(|perm| (0..1u64 << n).map(move |signs| SignedPermutationMatrix { perm: perm.clone(), signs }))
        .collect()
}

/// Normals `sigma (x) e_i` (column `i` carries `sigma`) and `e_i (x) sigma` (row `i`).
pub fn bb_facet_normals(n: usize) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for i in 0..n {
        for s in 0..1u64 << n {
            let sign = |k: usize| if s >> k & 1 == 1 { -1 } else { 1 };
            let mut col = vec![0; n * n];
            let mut row = vec![0; n * n];
            for k in 0..n {
                col[k * n + i] = sign(k);
                row[i * n + k] = sign(k);
            }
            out.push(LatticePoint(col));
            out.push(LatticePoint(row));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Compositions of at most `t` into `n` parts bounded by `caps`, with weights.
fn row_choices(caps: &[u32], t: u32, weighted: bool, out: &mut Vec<(Vec<u32>, u32)>) {
    fn rec(caps: &[u32], left: u32, weighted: bool, cur: &mut Vec<u32>, nnz: u32, out: &mut Vec<(Vec<u32>, u32)>) {
        let k = cur.len();
        if k == caps.len() {
            out.push((cur.clone(), if weighted { nnz } else { 0 }));
            return;
        }
        for x in 0..=caps[k].min(left) {
            cur.push(x);
            rec(caps, left - x, weighted, cur, nnz + u32::from(x > 0), out);
            cur.pop();
        }
    }
    rec(caps, t, weighted, &mut Vec::with_capacity(caps.len()), 0, out);
}

/// Number of `n x n` nonnegative integer matrices with all row and column sums
/// at most `t`; weighted mode counts each with `2^nnz`, giving `|t BB(n) ∩ Z^{n x n}|`.
pub fn dp_count(n: usize, t: u32, weighted: bool, budget: Budget) -> Result<BigUint> {
    if n == 0 || n > MAX_ORDER {
        return Err(size_limit(format!("dynamic program limited to 1 <= n <= {MAX_ORDER}")));
    }
    // states: sorted column sums (the count is symmetric under column permutations)
    let mut states: HashMap<Vec<u32>, BigUint> = HashMap::new();
    states.insert(vec![0; n], BigUint::one());
    let mut work = 0u64;
    for _ in 0..n {
        let mut next: HashMap<Vec<u32>, BigUint> = HashMap::new();
        let mut keys: Vec<&Vec<u32>> = states.keys().collect();
        keys.sort();
        for s in keys {
            let count = &states[s];
            let caps: Vec<u32> = s.iter().map(|&c| t - c).collect();
            let mut choices = Vec::new();
            row_choices(&caps, t, weighted, &mut choices);
            work += choices.len() as u64;
            if work > budget.max_nodes {
                return Err(size_limit(format!("dynamic program exceeded the budget of {}", budget.max_nodes)));
            }
            for (row, nnz) in choices {
                let mut ns: Vec<u32> = s.iter().zip(&row).map(|(a, b)| a + b).collect();
                ns.sort_unstable();
                *next.entry(ns).or_insert_with(BigUint::zero) += count << nnz;
            }
        }
        states = next;
    }
    Ok(states.into_values().sum())
}

/// `ehr(0..=n^2)` via the dynamic program.
pub fn dp_profile(n: usize, weighted: bool, budget: Budget) -> Result<EhrhartProfile> {
    let d = (n * n) as u32;
    let values = (0..=d).into_par_iter().map(|t| dp_count(n, t, weighted, budget)).collect::<Result<Vec<_>>>()?;
    Ok(EhrhartProfile::new(values))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub volume: BigUint,
    pub h_star: HStarVector,
}

impl TableRow {
    /// `n,Vol,h*_0,...,h*_s` with trailing zeros dropped.
    pub fn to_csv(&self) -> String {
        format!("{},{},{}", self.n, self.volume, self.h_star.to_csv())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "volume": self.volume.to_string(),
            "h_star": self.h_star.trimmed().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// Ehrhart profile of a family member: DP for `Pos`/`BB`, clique counter for `C+`/`C`.
pub fn family_profile(f: BirkhoffFamily, budget: Budget) -> Result<EhrhartProfile> {
    match f.which {
        Family::Pos => dp_profile(f.n, false, budget),
        Family::BB => dp_profile(f.n, true, budget),
        Family::C | Family::Cplus => crate::ehrhart::ehrhart_profile(&f.count_spec(), budget),
    }
}

/// Rows `n = 1..=n_max` of table `which` (1 Pos, 2 BB, 3 C+, 4 C).
pub fn reproduce_table(which: u8, n_max: usize, budget: Budget, stretch: bool) -> Result<Vec<TableRow>> {
    let family = Family::from_table(which)?;
    let limit = if stretch { MAX_ORDER } else { MAX_DEFAULT_TABLE_ORDER };
    if n_max > limit {
        return Err(size_limit(format!(
            "tables limited to n <= {limit}{}",
            if stretch { "" } else { " without the stretch flag" }
        )));
    }
    (1..=n_max)
        .map(|n| {
            let prof = family_profile(BirkhoffFamily::new(n, family)?, budget)?;
            let h = h_star_from_profile(&prof)?;
            Ok(TableRow { n, volume: h.normalized_volume(), h_star: h })
        })
        .collect()
}

/// The full Ehrhart profiles of `BB(3)` and `C(3)` coincide.
pub fn ehrhart_equality_bb3_c3(budget: Budget) -> Result<bool> {
    let bb = family_profile(BirkhoffFamily::new(3, Family::BB)?, budget)?;
    let c = family_profile(BirkhoffFamily::new(3, Family::C)?, budget)?;
    Ok(bb == c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::count_dilate;
    use crate::graph::{Graph, GraphKind};
    use crate::lattice::stable_set_polytope;
    use crate::polytope::dual_description;

    fn fam(n: usize, which: Family) -> BirkhoffFamily {
        BirkhoffFamily::new(n, which).unwrap()
    }

    fn h(xs: &[u64]) -> HStarVector {
        HStarVector::from_u64(xs)
    }

    /// Brute-force count of n x n matrices with entries in [-t, t] and
    /// absolute row/column sums at most t.
    fn brute_matrices(n: usize, t: i64, signed: bool) -> u64 {
        let lo = if signed { -t } else { 0 };
        let side = (t - lo + 1) as u64;
        let mut count = 0;
        for m in 0..side.pow((n * n) as u32) {
            let x: Vec<i64> = (0..n * n).map(|i| (m / side.pow(i as u32) % side) as i64 + lo).collect();
            let ok = (0..n).all(|i| (0..n).map(|j| x[i * n + j].abs()).sum::<i64>() <= t)
                && (0..n).all(|j| (0..n).map(|i| x[i * n + j].abs()).sum::<i64>() <= t);
            if ok {
                count += 1;
            }
        }
        count
    }

    fn partial_permutations(n: usize) -> usize {
        // choose which rows are matched and an injective map into columns
        fn rec(row: usize, n: usize, used: u32) -> usize {
            if row == n {
                return 1;
            }
            let mut total = rec(row + 1, n, used);
            for c in 0..n {
                if used >> c & 1 == 0 {
                    total += rec(row + 1, n, used | 1 << c);
                }
            }
            total
        }
        rec(0, n, 0)
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(fam(2, Family::BB).vertices().unwrap().points.len(), 8);
        for n in 1..=4 {
            assert_eq!(fam(n, Family::BB).vertex_count(), BigUint::from((1u64 << n) * (1..=n as u64).product::<u64>()));
            assert_eq!(fam(n, Family::Pos).vertex_count(), BigUint::from(partial_permutations(n)));
        }
        assert_eq!(fam(2, Family::Pos).vertex_count(), BigUint::from(7u32));
        // C+(n): all subsets of a row or a column
        for n in 1..=4u64 {
            let expected = 1 + 2 * n * ((1 << n) - 1) - n * n;
            assert_eq!(fam(n as usize, Family::Cplus).vertex_count(), BigUint::from(expected));
        }
        assert_eq!(fam(2, Family::Cplus).vertex_count(), BigUint::from(9u32));
    }

    #[test]
    fn vertex_lists_match_hull() {
        for which in [Family::BB, Family::Pos, Family::C, Family::Cplus] {
            for n in 1..=3 {
                let f = fam(n, which);
                let v = f.vertices().unwrap();
                assert_eq!(BigUint::from(v.points.len()), f.vertex_count());
                assert_eq!(v.vertices().unwrap().points.len(), v.points.len(), "{which:?} {n}");
                let hull = dual_description(&v).unwrap();
                assert_eq!(BigUint::from(hull.rows.len()), f.facet_count(), "{which:?} {n}");
                if n >= 2 {
                    assert_eq!(f.facet_count(), f.facet_count_closed_form());
                }
            }
        }
        assert_eq!(fam(2, Family::BB).facet_count(), BigUint::from(16u32));
        assert_eq!(fam(3, Family::Pos).facet_count(), BigUint::from(15u32));
        assert_eq!(fam(3, Family::Cplus).facet_count(), BigUint::from(15u32));
    }

    #[test]
    fn signed_permutations_are_the_vertices() {
        for n in 1..=3 {
            let mut pts: Vec<LatticePoint> = signed_permutation_matrices(n).iter().map(|m| m.to_point()).collect();
            pts.sort();
            let v = fam(n, Family::BB).vertices().unwrap();
            assert_eq!(v.lattice_points().unwrap(), pts);
        }
    }

    #[test]
    fn bb_facet_normals_match_hull() {
        for n in 1..=3 {
            let hull = dual_description(&fam(n, Family::BB).vertices().unwrap()).unwrap();
            let mut normals: Vec<LatticePoint> = hull
                .rows
                .iter()
                .map(|r| {
                    assert_eq!(r.rhs, crate::polytope::rat(1));
                    LatticePoint(r.integer_normal().iter().map(|x| i64::try_from(x).unwrap()).collect())
                })
                .collect();
            normals.sort();
            assert_eq!(normals, bb_facet_normals(n));
        }
    }

    #[test]
    fn pos_is_the_rook_stable_set_polytope() {
        for n in 1..=3 {
            let rook = Graph::build(GraphKind::Rook(n)).unwrap();
            let p = stable_set_polytope(&rook).unwrap();
            assert!(p.vrep().same_point_set(&fam(n, Family::Pos).vertices().unwrap()));
            let cp = stable_set_polytope(&rook.complement()).unwrap();
            assert!(cp.vrep().same_point_set(&fam(n, Family::Cplus).vertices().unwrap()));
        }
    }

    #[test]
    fn dp_examples() {
        let b = Budget::default();
        assert_eq!(dp_count(2, 1, true, b).unwrap(), BigUint::from(17u32));
        for t in 0..6 {
            assert_eq!(dp_count(1, t, true, b).unwrap(), BigUint::from(2 * t + 1));
        }
        for n in 1..=2 {
            for t in 0..=3 {
                assert_eq!(dp_count(n, t as u32, true, b).unwrap(), BigUint::from(brute_matrices(n, t, true)));
                assert_eq!(dp_count(n, t as u32, false, b).unwrap(), BigUint::from(brute_matrices(n, t, false)));
            }
        }
        assert_eq!(dp_count(3, 1, false, b).unwrap(), BigUint::from(brute_matrices(3, 1, false)));
    }

    #[test]
    fn dp_agrees_with_generic_counter() {
        for n in 1..=3 {
            for which in [Family::Pos, Family::BB] {
                let spec = fam(n, which).count_spec();
                for t in 0..=4 {
                    assert_eq!(
                        dp_count(n, t, which == Family::BB, Budget::default()).unwrap(),
                        count_dilate(&spec, t, Budget::default()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn tables_small_orders() {
        let b = Budget::default();
        let t1 = reproduce_table(1, 3, b, false).unwrap();
        assert_eq!(t1[0].h_star.trimmed(), h(&[1]).entries.as_slice());
        assert_eq!(t1[1].volume, BigUint::from(4u32));
        assert_eq!(t1[1].h_star.trimmed(), h(&[1, 2, 1]).entries.as_slice());
        assert_eq!(t1[2].volume, BigUint::from(642u32));
        assert_eq!(t1[2].h_star.trimmed(), h(&[1, 24, 156, 280, 156, 24, 1]).entries.as_slice());
        let t2 = reproduce_table(2, 2, b, false).unwrap();
        assert_eq!(t2[0].to_csv(), "1,2,1,1");
        assert_eq!(t2[1].to_csv(), "2,64,1,12,38,12,1");
        let t3 = reproduce_table(3, 2, b, false).unwrap();
        assert_eq!(t3[1].to_csv(), "2,6,1,4,1");
        let t4 = reproduce_table(4, 2, b, false).unwrap();
        assert_eq!(t4[1].to_csv(), "2,96,1,20,54,20,1");
        assert!(matches!(reproduce_table(1, 4, b, false), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn gorenstein_and_reflexive_symmetry() {
        for n in 1..=3 {
            for which in [Family::Pos, Family::Cplus] {
                let hs = h_star_from_profile(&family_profile(fam(n, which), Budget::default()).unwrap()).unwrap();
                assert!(hs.is_palindromic_about_degree(), "{which:?} {n}");
            }
        }
        for n in 1..=2 {
            for which in [Family::BB, Family::C] {
                let hs = h_star_from_profile(&family_profile(fam(n, which), Budget::default()).unwrap()).unwrap();
                assert!(hs.is_palindromic());
                assert!(hs.entries[hs.dim()].is_one());
            }
        }
    }
}
