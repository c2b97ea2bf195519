//! Simple graphs and posets on at most 64 vertices, stored as adjacency
//! bitsets, together with the predicates the polytope constructions depend on.

use std::fmt;

use crate::error::{size_limit, Error, Result};

pub const MAX_VERTICES: usize = 64;
/// Largest graph for which [`Graph::clique_and_chromatic`] runs.
pub const MAX_CHROMATIC_VERTICES: usize = 20;
/// Largest graph for which [`Graph::is_perfect`] runs (all induced subgraphs are checked).
pub const MAX_PERFECT_VERTICES: usize = 16;

/// A set of vertices, one bit per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 0/1 indicator vector of length `n`.
    pub fn indicator(self, n: usize) -> Vec<i64> {
        (0..n).map(|i| i64::from(self.contains(i))).collect()
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Named graph families accepted by [`Graph::build`].
#[derive(Clone, Debug)]
pub enum GraphKind {
    Edgeless(usize),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Rook(usize),
    DisjointUnion(Box<Graph>, Box<Graph>),
    BipartiteSum(Box<Graph>, Box<Graph>),
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(size_limit(format!("graph must have 1..={MAX_VERTICES} vertices, got {n}")));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph with the given adjacency masks; symmetry and loop-freeness are checked.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        let g = Graph { n, adj };
        if n == 0 || n > MAX_VERTICES {
            return Err(size_limit(format!("graph must have 1..={MAX_VERTICES} vertices, got {n}")));
        }
        for u in 0..n {
            if g.adj[u] >> u & 1 == 1 || g.adj[u] & !VertexSet::full(n).0 != 0 {
                return Err(Error::InvalidArgument(format!("bad adjacency row {u}")));
            }
            for v in VertexSet(g.adj[u]).iter() {
                if g.adj[v] >> u & 1 == 0 {
                    return Err(Error::InvalidArgument("adjacency is not symmetric".into()));
                }
            }
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!("edge {u}-{v} out of range")));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    /// Graph whose edges are the set bits of `bits`, in the column order
    /// (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
    pub fn from_upper_triangle(n: usize, bits: u64) -> Result<Self> {
        if n * n.saturating_sub(1) / 2 > 64 {
            return Err(size_limit(format!("upper-triangle code of {n} vertices exceeds 64 bits")));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for v in 0..n {
            for u in 0..v {
                if bits >> k & 1 == 1 {
                    g.add_edge(u, v)?;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_upper_triangle`].
    /// Panics for more than 11 vertices.
    pub fn upper_triangle(&self) -> u64 {
        assert!(self.n <= 11, "upper-triangle code needs at most 11 vertices");
        let mut bits = 0u64;
        let mut k = 0;
        for v in 0..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    bits |= 1u64 << k;
                }
                k += 1;
            }
        }
        bits
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in VertexSet(self.adj[u]).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1u64 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `s`, relabelled to `0..|s|` in increasing order.
    pub fn induced(&self, s: VertexSet) -> Result<Graph> {
        let verts = s.to_vec();
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                adj[perm[u]] |= 1u64 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.difference(VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.neighbors(v).intersection(s).is_empty())
    }

    /// Inclusion-maximal cliques, sorted lexicographically by member list.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        maximal_cliques_within(&self.adj, VertexSet::full(self.n).0)
    }

    pub fn maximal_stable_sets(&self) -> Vec<VertexSet> {
        self.complement().maximal_cliques()
    }

    /// All stable sets (including the empty set), sorted by bitmask.
    pub fn stable_sets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        fn rec(g: &Graph, cand: u64, cur: u64, out: &mut Vec<VertexSet>) {
            out.push(VertexSet(cur));
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                // only extend with larger vertices
                rec(g, c & !g.adj[v], cur | (1u64 << v), out);
            }
        }
        rec(self, VertexSet::full(self.n).0, 0, &mut out);
        out.sort_by_key(|s| s.0);
        out
    }

    pub fn clique_number(&self) -> usize {
        clique_number_within(&self.adj, VertexSet::full(self.n).0)
    }

    /// Exact clique number and chromatic number.
    pub fn clique_and_chromatic(&self) -> Result<(usize, usize)> {
        if self.n > MAX_CHROMATIC_VERTICES {
            return Err(size_limit(format!("exact chromatic number limited to {MAX_CHROMATIC_VERTICES} vertices")));
        }
        let all = VertexSet::full(self.n).0;
        let omega = clique_number_within(&self.adj, all);
        Ok((omega, chromatic_within(&self.adj, all, omega)))
    }

    /// Perfectness by the definition: clique number equals chromatic number
    /// on every induced subgraph.
    pub fn is_perfect(&self) -> Result<bool> {
        if self.n > MAX_PERFECT_VERTICES {
            return Err(size_limit(format!("perfectness test limited to {MAX_PERFECT_VERTICES} vertices")));
        }
        let all = VertexSet::full(self.n).0;
        // Subsets with at most 4 vertices are always perfect; skip them.
        let mut s = all;
        loop {
            if s.count_ones() >= 5 {
                let omega = clique_number_within(&self.adj, s);
                if !colorable_within(&self.adj, s, omega) {
                    return Ok(false);
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & all;
        }
        Ok(true)
    }

    /// Every maximal clique meets every maximal stable set.
    pub fn is_cis(&self) -> bool {
        let cliques = self.maximal_cliques();
        let stables = self.maximal_stable_sets();
        cliques.iter().all(|c| stables.iter().all(|s| !c.intersection(*s).is_empty()))
    }

    pub fn is_well_covered(&self) -> bool {
        all_same_size(&self.maximal_stable_sets())
    }

    pub fn is_co_well_covered(&self) -> bool {
        all_same_size(&self.maximal_cliques())
    }

    pub fn line_graph(&self) -> Result<Graph> {
        let edges = self.edges();
        let mut l = Graph::empty(edges.len().max(1))?;
        if edges.is_empty() {
            return Err(Error::InvalidArgument("line graph of an edgeless graph is empty".into()));
        }
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    l.add_edge(i, j)?;
                }
            }
        }
        Ok(l)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }

    /// Complement of the disjoint union of the complements.
    pub fn bipartite_sum(&self, other: &Graph) -> Result<Graph> {
        Ok(self.complement().disjoint_union(&other.complement())?.complement())
    }

    pub fn build(kind: GraphKind) -> Result<Graph> {
        match kind {
            GraphKind::Edgeless(n) => Graph::empty(n),
            GraphKind::Path(n) => {
                let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphKind::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidArgument("cycle needs at least 3 vertices".into()));
                }
                let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(n, &edges)
            }
            GraphKind::Complete(n) => {
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    g.adj[u] = VertexSet::full(n).0 & !(1u64 << u);
                }
                Ok(g)
            }
            GraphKind::CompleteBipartite(a, b) => {
                let mut edges = Vec::new();
                for u in 0..a {
                    for v in 0..b {
                        edges.push((u, a + v));
                    }
                }
                Graph::from_edges(a + b, &edges)
            }
            GraphKind::Rook(n) => {
                if n == 0 || n * n > MAX_VERTICES {
                    return Err(size_limit(format!("rook graph of order {n} exceeds 64 vertices")));
                }
                let mut g = Graph::empty(n * n)?;
                for a in 0..n * n {
                    for b in a + 1..n * n {
                        if a / n == b / n || a % n == b % n {
                            g.add_edge(a, b)?;
                        }
                    }
                }
                Ok(g)
            }
            GraphKind::DisjointUnion(g, h) => g.disjoint_union(&h),
            GraphKind::BipartiteSum(g, h) => g.bipartite_sum(&h),
        }
    }

    /// Parse the text format: a header line `n m` followed by `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Graph> {
        let (n, pairs) = parse_pair_list(text, "edge")?;
        let mut g = Graph::empty(n)?;
        for (u, v) in pairs {
            if u < n && v < n && g.has_edge(u, v) {
                return Err(Error::Parse(format!("duplicate edge {u} {v}")));
            }
            g.add_edge(u, v).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn all_same_size(sets: &[VertexSet]) -> bool {
    sets.windows(2).all(|w| w[0].len() == w[1].len())
}

fn parse_pair_list(text: &str, what: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
    let nums = parse_usizes(header)?;
    if nums.len() != 2 {
        return Err(Error::Parse(format!("header must be two integers, got `{header}`")));
    }
    let (n, m) = (nums[0], nums[1]);
    let mut pairs = Vec::with_capacity(m);
    for line in lines.by_ref() {
        let nums = parse_usizes(line)?;
        if nums.len() != 2 {
            return Err(Error::Parse(format!("{what} line must be two integers, got `{line}`")));
        }
        pairs.push((nums[0], nums[1]));
    }
    if pairs.len() != m {
        return Err(Error::Parse(format!("expected {m} {what} lines, found {}", pairs.len())));
    }
    Ok((n, pairs))
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("not a nonnegative integer: `{t}`"))))
        .collect()
}

/// Bron–Kerbosch with pivoting restricted to the vertex mask `within`.
pub(crate) fn maximal_cliques_within(adj: &[u64], within: u64) -> Vec<VertexSet> {
    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<VertexSet>) {
        if p == 0 {
            if x == 0 {
                out.push(VertexSet(r));
            }
            return;
        }
        let px = p | x;
        let mut pivot = px.trailing_zeros() as usize;
        let mut best = 0;
        let mut it = px;
        while it != 0 {
            let u = it.trailing_zeros() as usize;
            it &= it - 1;
            let c = (p & adj[u]).count_ones();
            if c >= best {
                best = c;
                pivot = u;
            }
        }
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(adj, r | (1u64 << v), p & adj[v], x & adj[v], out);
            p &= !(1u64 << v);
            x |= 1u64 << v;
        }
    }
    let mut out = Vec::new();
    let restricted: Vec<u64> = adj.iter().map(|a| a & within).collect();
    bk(&restricted, 0, within, 0, &mut out);
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

pub(crate) fn clique_number_within(adj: &[u64], within: u64) -> usize {
    fn rec(adj: &[u64], p: u64, size: usize, best: &mut usize) {
        if p == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + (p.count_ones() as usize) <= *best {
            return;
        }
        let mut cand = p;
        while cand != 0 {
            if size + (cand.count_ones() as usize) <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            rec(adj, cand & adj[v], size + 1, best);
        }
    }
    let mut best = 0;
    rec(adj, within, 0, &mut best);
    best
}

/// Whether the subgraph induced on `within` admits a proper `k`-colouring.
pub(crate) fn colorable_within(adj: &[u64], within: u64, k: usize) -> bool {
    let mut order: Vec<usize> = VertexSet(within).iter().collect();
    if order.is_empty() {
        return true;
    }
    if k == 0 {
        return false;
    }
    // Highest degree first keeps the search shallow.
    order.sort_by_key(|&v| std::cmp::Reverse((adj[v] & within).count_ones()));
    let mut color = [usize::MAX; 64];
    fn rec(adj: &[u64], order: &[usize], idx: usize, k: usize, used: usize, color: &mut [usize; 64]) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        let mut forbidden = 0u64;
        for &u in &order[..idx] {
            if adj[v] >> u & 1 == 1 {
                forbidden |= 1u64 << color[u];
            }
        }
        // Symmetry breaking: a fresh colour is only tried once.
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if forbidden >> c & 1 == 0 {
                color[v] = c;
                if rec(adj, order, idx + 1, k, used.max(c + 1), color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    rec(adj, &order, 0, k, 0, &mut color)
}

pub(crate) fn chromatic_within(adj: &[u64], within: u64, lower: usize) -> usize {
    let mut k = lower.max(usize::from(within != 0));
    while !colorable_within(adj, within, k) {
        k += 1;
    }
    k
}

/// Finite poset on `0..n`, stored as the reflexive-transitive order relation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    n: usize,
    /// `up[i]` holds every `j` with `i <= j`.
    up: Vec<u64>,
}

impl Poset {
    /// Build from cover (or any generating) relations `u < v`; the transitive
    /// closure is taken and cycles are rejected.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        if n == 0 || n > MAX_VERTICES {
            return Err(size_limit(format!("poset must have 1..={MAX_VERTICES} elements, got {n}")));
        }
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(u, v) in covers {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("cover {u} {v} out of range")));
            }
            if u == v {
                return Err(Error::CyclicRelation);
            }
            up[u] |= 1u64 << v;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            for j in VertexSet(up[i]).iter() {
                if j != i && up[j] >> i & 1 == 1 {
                    return Err(Error::CyclicRelation);
                }
            }
        }
        Ok(Poset { n, up })
    }

    pub fn chain(n: usize) -> Result<Poset> {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(n, &covers)
    }

    pub fn antichain(n: usize) -> Result<Poset> {
        Poset::from_covers(n, &[])
    }

    /// Ordinal sum of antichains of the given sizes, bottom level first.
    pub fn ordinal_sum_of_antichains(levels: &[usize]) -> Result<Poset> {
        let n: usize = levels.iter().sum();
        let mut covers = Vec::new();
        let mut start = 0;
        for w in levels.windows(2) {
            for a in start..start + w[0] {
                for b in start + w[0]..start + w[0] + w[1] {
                    covers.push((a, b));
                }
            }
            start += w[0];
        }
        Poset::from_covers(n, &covers)
    }

    pub fn parse(text: &str) -> Result<Poset> {
        let (n, pairs) = parse_pair_list(text, "cover")?;
        let mut seen = std::collections::HashSet::new();
        for &p in &pairs {
            if !seen.insert(p) {
                return Err(Error::Parse(format!("duplicate cover {} {}", p.0, p.1)));
            }
        }
        Poset::from_covers(n, &pairs).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Strict up-set of `i`.
    pub fn above(&self, i: usize) -> VertexSet {
        VertexSet(self.up[i] & !(1u64 << i))
    }

    /// Strict down-set of `i`.
    pub fn below(&self, i: usize) -> VertexSet {
        VertexSet::from_iter((0..self.n).filter(|&j| self.less(j, i)))
    }

    pub fn is_antichain(&self, s: VertexSet) -> bool {
        s.iter().all(|i| self.above(i).intersection(s).is_empty())
    }

    /// Minimal elements of `s`.
    pub fn minimal(&self, s: VertexSet) -> VertexSet {
        VertexSet::from_iter(s.iter().filter(|&i| self.below(i).intersection(s).is_empty()))
    }

    /// Maximal elements of `s`.
    pub fn maximal(&self, s: VertexSet) -> VertexSet {
        VertexSet::from_iter(s.iter().filter(|&i| self.above(i).intersection(s).is_empty()))
    }

    /// Cover relations of the order (the Hasse diagram).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.above(i).iter() {
                let between = self.above(i).intersection(self.below(j));
                if between.is_empty() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn comparability_graph(&self) -> Graph {
        let adj = (0..self.n)
            .map(|i| {
                let down = self.below(i).0;
                self.above(i).0 | down
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// True iff every induced 4-vertex path of the comparability graph lies in
    /// an induced bull.
    pub fn grillet_condition(&self) -> bool {
        grillet_condition(&self.comparability_graph())
    }

    pub fn to_text(&self) -> String {
        let covers = self.covers();
        let mut s = format!("{} {}\n", self.n, covers.len());
        for (u, v) in covers {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Every poset on `0..n` whose order is contained in the natural order of
    /// the labels. Every isomorphism class of posets occurs at least once.
    pub fn naturally_labeled(n: usize) -> Result<Vec<Poset>> {
        if n == 0 || n > 6 {
            return Err(size_limit("naturally labeled poset enumeration supports 1..=6 elements"));
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let rel: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
            let p = Poset::from_covers(n, &rel)?;
            // Keep only transitively closed relations so each order appears once.
            let closed = rel.len() == (0..n).map(|i| p.above(i).len()).sum::<usize>();
            if closed {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Induced-P4-in-bull test on an arbitrary graph.
pub fn grillet_condition(g: &Graph) -> bool {
    let n = g.n();
    // An induced path w-x-y-z: edges wx, xy, yz and no others among them.
    for x in 0..n {
        for y in g.neighbors(x).iter() {
            for w in g.neighbors(x).iter() {
                if w == y || g.has_edge(w, y) {
                    continue;
                }
                for z in g.neighbors(y).iter() {
                    if z == x || z == w || g.has_edge(z, x) || g.has_edge(z, w) {
                        continue;
                    }
                    let extends = (0..n).any(|v| {
                        v != w
                            && v != x
                            && v != y
                            && v != z
                            && g.has_edge(v, x)
                            && g.has_edge(v, y)
                            && !g.has_edge(v, w)
                            && !g.has_edge(v, z)
                    });
                    if !extends {
                        return false;
                    }
                }
            }
        }
    }
    true
}
