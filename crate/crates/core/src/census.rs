//! Unlabeled graph enumeration, perfect-graph counts and the volume-product
//! experiment over perfect graphs and their complements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::ehrhart::{unconditional_h_star, Budget, HStarVector};
use crate::error::{size_limit, Error, Result};
use crate::graph::Graph;

pub const MAX_CENSUS_VERTICES: usize = 7;
pub const MAX_SANTALO_VERTICES: usize = 6;

/// Lexicographically least adjacency string over all relabelings.
///
/// The string lists the pairs (0,1), (0,2), (1,2), (0,3), ... and `key` reads
/// it as a binary number with the first pair as the most significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub n: usize,
    pub key: u64,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl CanonicalCode {
    pub fn of(g: &Graph) -> Result<CanonicalCode> {
        Ok(canonical_form(g)?.0)
    }

    pub fn graph(&self) -> Result<Graph> {
        let m = pair_count(self.n);
        let bits = (0..m).filter(|&t| self.key >> (m - 1 - t) & 1 == 1).fold(0u64, |acc, t| acc | 1 << t);
        Graph::from_upper_triangle(self.n, bits)
    }

    pub fn hex(&self) -> String {
        format!("{:x}", self.key)
    }

    /// Parses `n:hex`.
    pub fn parse(s: &str) -> Result<CanonicalCode> {
        let bad = || Error::Parse(format!("bad canonical code {s:?}"));
        let (n, hex) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let key = u64::from_str_radix(hex.trim(), 16).map_err(|_| bad())?;
        if n == 0 || n > MAX_CENSUS_VERTICES || (pair_count(n) < 64 && key >> pair_count(n) != 0) {
            return Err(bad());
        }
        Ok(CanonicalCode { n, key })
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.hex())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical code and the size of the automorphism group.
///
/// Positions are filled one at a time; placing position `k` appends the bits
/// of pairs `(i, k)`, so only children with the least appended chunk can lead
/// to the minimum. Ties are all explored and counted at the leaves.
pub fn canonical_form(g: &Graph) -> Result<(CanonicalCode, u64)> {
    let n = g.n();
    if n > MAX_CENSUS_VERTICES {
        return Err(size_limit(format!("canonical codes limited to {MAX_CENSUS_VERTICES} vertices")));
    }
    struct Search<'a> {
        g: &'a Graph,
        n: usize,
        total: usize,
        best: Option<u64>,
        count: u64,
        perm: Vec<usize>,
    }
    impl Search<'_> {
        fn chunk(&self, k: usize, v: usize) -> u64 {
            (0..k).fold(0, |acc, i| acc << 1 | self.g.has_edge(self.perm[i], v) as u64)
        }

        fn run(&mut self, k: usize, used: u64, prefix: u64, m: usize) {
            if k == self.n {
                match self.best {
                    Some(b) if prefix > b => {}
                    Some(b) if prefix == b => self.count += 1,
                    _ => {
                        self.best = Some(prefix);
                        self.count = 1;
                    }
                }
                return;
            }
            let free: Vec<usize> = (0..self.n).filter(|&v| used >> v & 1 == 0).collect();
            let chunks: Vec<u64> = free.iter().map(|&v| self.chunk(k, v)).collect();
            let least = *chunks.iter().min().expect("a free vertex remains");
            let next = prefix << k | least;
            let m2 = m + k;
            if let Some(b) = self.best {
                if next > b >> (self.total - m2) {
                    return;
                }
            }
            for (&v, &c) in free.iter().zip(&chunks) {
                if c == least {
                    self.perm.push(v);
                    self.run(k + 1, used | 1 << v, next, m2);
                    self.perm.pop();
                }
            }
        }
    }
    let mut s = Search { g, n, total: pair_count(n), best: None, count: 0, perm: Vec::with_capacity(n) };
    s.run(0, 0, 0, 0);
    Ok((CanonicalCode { n, key: s.best.expect("at least one leaf") }, s.count))
}

/// One code per isomorphism class, sorted. Classes on `n` vertices arise from
/// classes on `n - 1` vertices by adding a vertex with every neighborhood.
pub fn enumerate_unlabeled(n: usize) -> Result<Vec<CanonicalCode>> {
    if n == 0 {
        return Err(Error::InvalidArgument("census needs at least one vertex".into()));
    }
    if n > MAX_CENSUS_VERTICES {
        return Err(size_limit(format!("census limited to {MAX_CENSUS_VERTICES} vertices")));
    }
    let mut classes = vec![CanonicalCode { n: 1, key: 0 }];
    for k in 2..=n {
        let next: BTreeSet<CanonicalCode> = classes
            .par_iter()
            .map(|c| -> Result<Vec<CanonicalCode>> {
                let g = c.graph()?;
                (0..1u64 << (k - 1))
                    .map(|nbrs| {
                        let mut adj: Vec<u64> = g.adjacency().to_vec();
                        for (u, row) in adj.iter_mut().enumerate() {
                            *row |= (nbrs >> u & 1) << (k - 1);
                        }
                        adj.push(nbrs);
                        CanonicalCode::of(&Graph::from_adjacency(adj)?)
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        classes = next.into_iter().collect();
    }
    Ok(classes)
}

pub fn perfect_count(n: usize) -> Result<usize> {
    let classes = enumerate_unlabeled(n)?;
    let flags = classes.par_iter().map(|c| c.graph()?.is_perfect()).collect::<Result<Vec<bool>>>()?;
    Ok(flags.into_iter().filter(|&p| p).count())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub code: CanonicalCode,
    pub perfect: bool,
    /// h* of the signed lift; perfect classes only.
    pub hstar: Option<HStarVector>,
    /// Normalized volumes of the signed lifts of the graph and its complement.
    pub santalo: Option<(BigUint, BigUint)>,
}

impl CensusRecord {
    /// Cache line `n:hex<TAB>perfect-bit<TAB>h* csv`.
    pub fn to_line(&self) -> String {
        let h = self.hstar.as_ref().map(|h| h.to_csv()).unwrap_or_default();
        format!("{}\t{}\t{}", self.code, self.perfect as u8, h)
    }

    pub fn parse_line(line: &str) -> Result<CensusRecord> {
        let bad = || Error::Parse(format!("bad census line {line:?}"));
        let mut parts = line.split('\t');
        let code = CanonicalCode::parse(parts.next().ok_or_else(bad)?)?;
        let perfect = match parts.next().ok_or_else(bad)? {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        let h = parts.next().unwrap_or("").trim();
        if parts.next().is_some() {
            return Err(bad());
        }
        let hstar = if h.is_empty() {
            None
        } else {
            if !perfect {
                return Err(bad());
            }
            let mut entries =
                h.split(',').map(|x| x.parse::<BigUint>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
            if entries.len() > code.n + 1 {
                return Err(bad());
            }
            entries.resize(code.n + 1, BigUint::default());
            Some(HStarVector::new(entries))
        };
        Ok(CensusRecord { code, perfect, hstar, santalo: None })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "code": self.code.to_string(),
            "perfect": self.perfect,
            "hstar": self.hstar.as_ref().map(|h| h.to_json()),
            "volumes": self.santalo.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub with_hstar: bool,
    pub budget: Budget,
    /// Append-only record file; existing records are reused.
    pub cache: Option<PathBuf>,
}

fn load_cache(path: &Path) -> Result<BTreeMap<CanonicalCode, CensusRecord>> {
    let mut out = BTreeMap::new();
    if !path.exists() {
        return Ok(out);
    }
    for line in BufReader::new(std::fs::File::open(path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let r = CensusRecord::parse_line(&line)?;
        // later lines supersede earlier ones
        out.insert(r.code, r);
    }
    Ok(out)
}

/// One record per class, sorted by code. With `with_hstar`, perfect classes
/// carry h* and the volume pair of the graph and its complement.
pub fn census(n: usize, opts: &CensusOptions) -> Result<Vec<CensusRecord>> {
    let classes = enumerate_unlabeled(n)?;
    let mut known = match &opts.cache {
        Some(p) => load_cache(p)?,
        None => BTreeMap::new(),
    };
    known.retain(|c, _| c.n == n);
    let todo: Vec<CanonicalCode> = classes
        .iter()
        .copied()
        .filter(|c| match known.get(c) {
            None => true,
            Some(r) => opts.with_hstar && r.perfect && r.hstar.is_none(),
        })
        .collect();

    let fresh = std::thread::scope(|scope| -> Result<Vec<CensusRecord>> {
        let (tx, rx) = mpsc::channel::<CensusRecord>();
        let cache = opts.cache.clone();
        let collector = scope.spawn(move || -> Result<Vec<CensusRecord>> {
            let mut file = match &cache {
                Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
                None => None,
            };
            let mut got = Vec::new();
            for r in rx {
                if let Some(f) = file.as_mut() {
                    writeln!(f, "{}", r.to_line())?;
                    f.flush()?;
                }
                got.push(r);
            }
            Ok(got)
        });
        let produced = todo.par_iter().try_for_each_with(tx, |tx, &code| -> Result<()> {
            let g = code.graph()?;
            let perfect = g.is_perfect()?;
            let hstar = if perfect && opts.with_hstar { Some(unconditional_h_star(&g, opts.budget)?) } else { None };
            // the collector only stops once every sender is gone
            let _ = tx.send(CensusRecord { code, perfect, hstar, santalo: None });
            Ok(())
        });
        let got = collector.join().expect("collector thread panicked")?;
        produced?;
        Ok(got)
    })?;
    for r in fresh {
        known.insert(r.code, r);
    }
    let mut records: Vec<CensusRecord> = classes.iter().map(|c| known[c].clone()).collect();
    if opts.with_hstar {
        let vols: BTreeMap<CanonicalCode, BigUint> =
            records.iter().filter_map(|r| r.hstar.as_ref().map(|h| (r.code, h.normalized_volume()))).collect();
        for r in records.iter_mut().filter(|r| r.perfect) {
            let co = CanonicalCode::of(&r.code.graph()?.complement())?;
            r.santalo = Some((vols[&r.code].clone(), vols[&co].clone()));
        }
    }
    Ok(records)
}

/// Maximizers of `Vol(U P_G) * Vol(U P_complement)`, each unordered pair
/// `{G, complement}` listed once with the smaller code first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SantaloResult {
    pub n: usize,
    pub argmax: Vec<(CanonicalCode, CanonicalCode)>,
    pub volumes: (BigUint, BigUint),
    pub product: BigUint,
}

impl SantaloResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "argmax": self.argmax.iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect::<Vec<_>>(),
            "volumes": [self.volumes.0.to_string(), self.volumes.1.to_string()],
            "product": self.product.to_string(),
            "unique": self.argmax.len() == 1,
        })
    }
}

/// Reads the maximizers off census records carrying volume pairs.
pub fn santalo_from_records(records: &[CensusRecord]) -> Result<SantaloResult> {
    let n = records.first().map(|r| r.code.n).ok_or(Error::Empty)?;
    let mut pairs: BTreeMap<(CanonicalCode, CanonicalCode), (BigUint, BigUint)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.perfect) {
        let (a, b) =
            r.santalo.clone().ok_or_else(|| Error::InvalidArgument(format!("record {} lacks volumes", r.code)))?;
        let co = CanonicalCode::of(&r.code.graph()?.complement())?;
        let entry = if r.code <= co { ((r.code, co), (a, b)) } else { ((co, r.code), (b, a)) };
        pairs.insert(entry.0, entry.1);
    }
    let product = pairs.values().map(|(a, b)| a * b).max().ok_or(Error::Empty)?;
    let argmax: Vec<_> = pairs.iter().filter(|(_, (a, b))| a * b == product).map(|(k, _)| *k).collect();
    let volumes = pairs[&argmax[0]].clone();
    Ok(SantaloResult { n, argmax, volumes, product })
}

pub fn santalo_experiment(n: usize, budget: Budget, cache: Option<PathBuf>) -> Result<SantaloResult> {
    if n > MAX_SANTALO_VERTICES {
        return Err(size_limit(format!("volume-product experiment limited to {MAX_SANTALO_VERTICES} vertices")));
    }
    let records = census(n, &CensusOptions { with_hstar: true, budget, cache })?;
    santalo_from_records(&records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::mahler_bound;
    use crate::graph::GraphKind;

    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        (0..1u64 << pair_count(n)).map(move |b| Graph::from_upper_triangle(n, b).unwrap())
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Minimum over every relabeling, straight from the definition.
    fn brute_code(g: &Graph) -> u64 {
        let n = g.n();
        permutations(n)
            .iter()
            .map(|p| {
                let mut key = 0u64;
                for v in 0..n {
                    for u in 0..v {
                        key = key << 1 | g.has_edge(p[u], p[v]) as u64;
                    }
                }
                key
            })
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_matches_brute_force() {
        for n in 1..=5 {
            for g in all_labeled(n).step_by(3) {
                let (c, aut) = canonical_form(&g).unwrap();
                assert_eq!(c.key, brute_code(&g));
                let brute_aut = permutations(n).iter().filter(|p| g.relabel(p) == g).count() as u64;
                assert_eq!(aut, brute_aut);
            }
        }
    }

    #[test]
    fn code_round_trips() {
        let g = Graph::build(GraphKind::Path(5)).unwrap();
        let c = CanonicalCode::of(&g).unwrap();
        assert_eq!(CanonicalCode::of(&c.graph().unwrap()).unwrap(), c);
        assert_eq!(CanonicalCode::parse(&c.to_string()).unwrap(), c);
        assert!(CanonicalCode::parse("3:ff").is_err());
        assert!(CanonicalCode::parse("x").is_err());
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_unlabeled(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        assert!(matches!(enumerate_unlabeled(8), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn classes_match_brute_canonicalization() {
        for n in 1..=5 {
            let brute: BTreeSet<u64> = all_labeled(n).map(|g| brute_code(&g)).collect();
            let got: Vec<u64> = enumerate_unlabeled(n).unwrap().iter().map(|c| c.key).collect();
            assert_eq!(got, brute.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn orbit_sizes_sum_to_labeled_count() {
        for n in 1..=5 {
            let nfact: u64 = (1..=n as u64).product();
            let total: u64 = enumerate_unlabeled(n)
                .unwrap()
                .iter()
                .map(|c| nfact / canonical_form(&c.graph().unwrap()).unwrap().1)
                .sum();
            assert_eq!(total, 1 << pair_count(n));
        }
    }

    #[test]
    fn perfect_counts() {
        let got: Vec<usize> = (1..=6).map(|n| perfect_count(n).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 4, 11, 33, 148]);
    }

    #[test]
    fn santalo_small() {
        let r = santalo_experiment(2, Budget::default(), None).unwrap();
        assert_eq!(r.product, BigUint::from(32u32));
        assert_eq!(r.argmax.len(), 1);
        let code = |k: GraphKind| CanonicalCode::of(&Graph::build(k).unwrap()).unwrap();
        // every signed lift in dimension 3 is a product or free sum of
        // segments, so both complementary pairs attain 4^3 3!
        let r = santalo_experiment(3, Budget::default(), None).unwrap();
        assert_eq!(r.product, mahler_bound(3));
        assert_eq!(r.argmax.len(), 2);
        assert!(r.argmax.iter().any(|&(a, b)| a == code(GraphKind::Path(3)) || b == code(GraphKind::Path(3))));
        for (n, want) in [(4, GraphKind::Path(4)), (5, GraphKind::Path(5)), (6, GraphKind::Cycle(6))] {
            let r = santalo_experiment(n, Budget::default(), None).unwrap();
            let want = code(want);
            assert_eq!(r.argmax.len(), 1, "n={n}: {r:?}");
            let (a, b) = r.argmax[0];
            assert!(a == want || b == want, "n={n}: {r:?}");
        }
    }

    #[test]
    fn volume_products_respect_the_lower_bound() {
        for n in 1..=4 {
            let records = census(n, &CensusOptions { with_hstar: true, ..Default::default() }).unwrap();
            for r in records.iter().filter(|r| r.perfect) {
                let (a, b) = r.santalo.clone().unwrap();
                assert!(a * b >= mahler_bound(n), "{}", r.code);
            }
        }
    }

    #[test]
    fn experiment_ignores_record_order() {
        let mut records = census(4, &CensusOptions { with_hstar: true, ..Default::default() }).unwrap();
        let a = santalo_from_records(&records).unwrap();
        records.reverse();
        assert_eq!(santalo_from_records(&records).unwrap(), a);
    }

    #[test]
    fn cache_resumes_and_round_trips() {
        let path = std::env::temp_dir().join(format!("ucpoly-census-{}.txt", std::process::id()));
        let _ = std::fs::remove_file(&path);
        let opts = CensusOptions { with_hstar: true, cache: Some(path.clone()), ..Default::default() };
        let first = census(3, &opts).unwrap();
        let lines = std::fs::read_to_string(&path).unwrap();
        assert_eq!(lines.lines().count(), 4);
        // a second run computes nothing new
        let second = census(3, &opts).unwrap();
        assert_eq!(first, second);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), lines);
        for r in &first {
            let mut back = CensusRecord::parse_line(&r.to_line()).unwrap();
            back.santalo = r.santalo.clone();
            assert_eq!(&back, r);
        }
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn cache_lines_reject_garbage() {
        assert!(CensusRecord::parse_line("3:0\t2\t").is_err());
        assert!(CensusRecord::parse_line("3:0\t0\t1,2").is_err());
        assert!(CensusRecord::parse_line("3:0\t1\t1,26,26,1").is_ok());
    }
}
