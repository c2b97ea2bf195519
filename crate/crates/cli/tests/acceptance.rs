//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde_json::Value;
use ucpoly::census::{canonical_form, enumerate_unlabeled, perfect_count, santalo_experiment, CanonicalCode};
use ucpoly::ehrhart::{
    mahler_bound, mahler_check, saint_raymond_lower_bound, sandwich_holds, unconditional_h_star, BoundMode,
};
use ucpoly::groebner::{
    chain_ehrhart, chain_groebner, marked_buchberger_verify, uc_groebner, uc_lattice_points, verify_toric,
    DEFAULT_STEP_CAP,
};
use ucpoly::lattice::{
    gale_pair, orthant_piece_is_compressed, signed_indicator, stable_set_polytope, verify_gale_pair,
};
use ucpoly::polytope::{dual_description, is_reflexive, polar_dual};
use ucpoly::triangulate::{is_flag, is_unimodular, lift_unconditional, pulling_triangulation_lex};
use ucpoly::{BirkhoffFamily, Budget, Family, Graph, GraphKind, LatticePoint, Poset, VRep, VertexSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    check(t <= limit, format!("took {t:.1?}, limit {limit:?}"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

fn ucpoly_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucpoly")).args(args).env_remove("UCPOLY_BUDGET").output().expect("binary runs")
}

fn build(kind: GraphKind) -> Graph {
    Graph::build(kind).unwrap()
}

fn perfect_classes(n: usize) -> Vec<Graph> {
    enumerate_unlabeled(n)
        .unwrap()
        .into_iter()
        .map(|c| c.graph().unwrap())
        .filter(|g| g.is_perfect().unwrap())
        .collect()
}

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

fn table_rows(which: u8) -> Result<Vec<(usize, String, Vec<String>)>, String> {
    let o = ucpoly_cli(&["tables", "--which", &which.to_string(), "--n-max", "3"]);
    check(o.status.success(), format!("tables --which {which} exited with {:?}", o.status.code()))?;
    let v: Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    Ok(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let h = r["h_star"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
            (r["n"].as_u64().unwrap() as usize, r["volume"].as_str().unwrap().to_string(), h)
        })
        .collect())
}

fn row(rows: &[(usize, String, Vec<String>)], n: usize) -> Result<(String, Vec<String>), String> {
    rows.iter().find(|r| r.0 == n).map(|r| (r.1.clone(), r.2.clone())).ok_or(format!("no row for n = {n}"))
}

fn strs(xs: &[u64]) -> Vec<String> {
    xs.iter().map(u64::to_string).collect()
}

fn tables_reproduction() -> Outcome {
    let start = Instant::now();
    let pos = table_rows(1)?;
    let bb = table_rows(2)?;
    let cplus = table_rows(3)?;
    let c = table_rows(4)?;
    let (v, h) = row(&pos, 3)?;
    check(v == "642" && h == strs(&[1, 24, 156, 280, 156, 24, 1]), format!("Pos(3): {v} {h:?}"))?;
    let (v, h) = row(&bb, 2)?;
    check(v == "64" && h == strs(&[1, 12, 38, 12, 1]), format!("BB(2): {v} {h:?}"))?;
    let (v, h) = row(&c, 2)?;
    check(v == "96" && h == strs(&[1, 20, 54, 20, 1]), format!("C(2): {v} {h:?}"))?;
    let (vb, hb) = row(&bb, 3)?;
    let (vc, _) = row(&c, 3)?;
    check(vb == "328704" && vc == "328704", format!("BB(3) = {vb}, C(3) = {vc}"))?;
    check(hb.get(2).map(String::as_str) == Some("4428"), format!("BB(3) h*_2 = {:?}", hb.get(2)))?;
    let sum: BigUint = hb.iter().map(|x| big(x)).sum();
    check(sum == big(&vb), format!("BB(3) h* sums to {sum}, volume {vb}"))?;
    for rows in [&pos, &bb, &cplus, &c] {
        check((1..=3).all(|n| rows.iter().any(|r| r.0 == n)), "missing rows for n <= 3")?;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("Pos(3) 642, BB(2) 64, C(2) 96, BB(3) = C(3) = 328704, BB(3) h*_2 = 4428 in {:.1?}", start.elapsed()))
}

fn lower_bounds() -> Outcome {
    let start = Instant::now();
    let a = saint_raymond_lower_bound(&big("506289991680"), 25, BoundMode::AntiBlocking).map_err(|e| e.to_string())?;
    let b = saint_raymond_lower_bound(&big("16988273098107125760"), 25, BoundMode::Unconditional)
        .map_err(|e| e.to_string())?;
    check(a == big("30637007047800"), format!("anti-blocking bound {a}"))?;
    check(b == big("1028007369668940603880"), format!("unconditional bound {b}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{a} and {b}"))
}

fn census_counts() -> Outcome {
    let start = Instant::now();
    let got: Vec<usize> = (3..=6).map(|n| perfect_count(n).unwrap()).collect();
    check(got == [4, 11, 33, 148], format!("p(3..6) = {got:?}"))?;
    within(start, Duration::from_secs(60))?;
    let small = start.elapsed();
    let start = Instant::now();
    let o = ucpoly_cli(&["--stretch", "census", "--n", "7", "--format", "csv"]);
    let line = String::from_utf8_lossy(&o.stdout).lines().next().unwrap_or_default().to_string();
    check(o.status.success() && line == "p(7) = 906", format!("n = 7 gave {line:?}"))?;
    within(start, Duration::from_secs(15 * 60))?;
    Ok(format!("4, 11, 33, 148 in {small:.1?}; p(7) = 906 in {:.1?}", start.elapsed()))
}

fn signed_lift(n: usize, sets: &[VertexSet]) -> VRep {
    let mut pts: Vec<LatticePoint> = Vec::new();
    for &s in sets {
        for neg in 0u64..1 << s.len() {
            let members = s.to_vec();
            let negative =
                VertexSet::from_iter(members.iter().enumerate().filter(|(k, _)| neg >> k & 1 == 1).map(|(_, &v)| v));
            pts.push(signed_indicator(n, s, negative));
        }
    }
    VRep::from_lattice(n, &pts).unwrap()
}

fn reflexivity() -> Outcome {
    let mut classes = 0;
    for n in 1..=6 {
        for g in perfect_classes(n) {
            let up = stable_set_polytope(&g).unwrap().unconditional();
            let h = dual_description(&up.vrep().unwrap()).map_err(|e| format!("{g:?}: {e}"))?;
            check(is_reflexive(&h).unwrap(), format!("{g:?} is not reflexive"))?;
            let polar = polar_dual(&h).unwrap();
            let cliques = signed_lift(n, &g.maximal_cliques());
            check(
                polar.same_point_set(&cliques),
                format!("{g:?}: polar vertices differ from signed clique indicators"),
            )?;
            if n <= 5 {
                let hs = unconditional_h_star(&g, Budget::default()).unwrap();
                check(
                    hs.is_palindromic() && hs.entries[n] == BigUint::from(1u8),
                    format!("{g:?}: h* = {}", hs.to_csv()),
                )?;
            }
            classes += 1;
        }
    }
    let c5 = build(GraphKind::Cycle(5));
    let k1 = build(GraphKind::Edgeless(1));
    let mut non_perfect =
        vec![c5.clone(), c5.disjoint_union(&k1).unwrap(), c5.complement().disjoint_union(&k1).unwrap().complement()];
    for n in 1..=5 {
        for code in enumerate_unlabeled(n).unwrap() {
            let g = code.graph().unwrap();
            if !g.is_perfect().unwrap() {
                non_perfect.push(g);
            }
        }
    }
    for g in &non_perfect {
        check(!orthant_piece_is_compressed(g).unwrap(), format!("{g:?}: orthant piece is compressed"))?;
    }
    Ok(format!("{classes} perfect classes n <= 6 reflexive with polar = signed cliques; h* palindromic n <= 5; {} non-perfect fixtures not compressed", non_perfect.len()))
}

fn triangulation_accounting() -> Outcome {
    let pos = BirkhoffFamily::new(2, Family::Pos).unwrap().anti_blocking();
    let base = pulling_triangulation_lex(&pos.vrep(), &pos.hrep()).unwrap();
    let lifted = lift_unconditional(&base).unwrap();
    check(
        lifted.len() == 64 && is_unimodular(&lifted).unwrap(),
        format!("Pos(2) lift has {} simplices", lifted.len()),
    )?;
    check(!is_flag(&base) || is_flag(&lifted), "Pos(2): flagness lost")?;
    let mut cases = 1;
    for n in 1..=4 {
        for g in perfect_classes(n) {
            let p = stable_set_polytope(&g).unwrap();
            let base = pulling_triangulation_lex(&p.vrep(), &p.hrep()).unwrap();
            let lifted = lift_unconditional(&base).unwrap();
            let sum = unconditional_h_star(&g, Budget::default()).unwrap().normalized_volume();
            check(BigUint::from(lifted.len()) == sum, format!("{g:?}: {} simplices, sum h* {sum}", lifted.len()))?;
            check(is_unimodular(&lifted).unwrap(), format!("{g:?}: lift not unimodular"))?;
            check(!is_flag(&base) || is_flag(&lifted), format!("{g:?}: flagness lost"))?;
            cases += 1;
        }
    }
    Ok(format!("Pos(2) lifts to 64 unimodular simplices; {cases} cases agree with sum h* and keep flagness"))
}

/// No induced path on four vertices.
fn is_cograph(g: &Graph) -> bool {
    let n = g.n();
    let quads = (0u64..1 << n).filter(|m| m.count_ones() == 4);
    quads.into_iter().all(|m| {
        let h = g.induced(VertexSet(m)).unwrap();
        let mut degrees: Vec<usize> = (0..4).map(|v| h.degree(v)).collect();
        degrees.sort();
        degrees != [1, 1, 2, 2]
    })
}

fn sandwich_and_mahler() -> Outcome {
    let mut classes = 0;
    let mut hanner = 0;
    for n in 1..=5 {
        for g in perfect_classes(n) {
            let h = unconditional_h_star(&g, Budget::default()).unwrap();
            check(sandwich_holds(&h).unwrap(), format!("{g:?}: h* = {} outside the bounds", h.to_csv()))?;
            let m = mahler_check(&g, Budget::default()).unwrap();
            check(m.ok, format!("{g:?}: product {} below {}", m.product, m.bound))?;
            // Hanner polytopes among these lifts are exactly the cograph ones
            check(m.equality == is_cograph(&g), format!("{g:?}: equality {} with product {}", m.equality, m.product))?;
            hanner += m.equality as usize;
            classes += 1;
        }
    }
    for d in 1..=5 {
        for g in [build(GraphKind::Edgeless(d)), build(GraphKind::Complete(d))] {
            check(mahler_check(&g, Budget::default()).unwrap().equality, format!("cube/cross-polytope d = {d}"))?;
        }
    }
    let rook = mahler_check(&build(GraphKind::Rook(2)), Budget::default()).unwrap();
    check(rook.equality && rook.product == BigUint::from(6144u32) && rook.bound == mahler_bound(4), "rook(2) product")?;
    Ok(format!("{classes} perfect classes sandwiched; equality on exactly the {hanner} Hanner lifts; rook(2) 6144"))
}

fn groebner() -> Outcome {
    let start = Instant::now();
    let mut posets = 0;
    for n in 1..=5 {
        for p in Poset::naturally_labeled(n).unwrap() {
            let chain = chain_groebner(&p).map_err(|e| e.to_string())?;
            let uc = uc_groebner(&p).map_err(|e| e.to_string())?;
            for basis in [&chain, &uc] {
                let pts = basis.points();
                for b in &basis.binomials {
                    check(verify_toric(b, &pts), format!("{p:?}: binomial {b:?} not in the toric ideal"))?;
                    check(b.lead_is_squarefree(), format!("{p:?}: lead of {b:?} not square-free"))?;
                }
            }
            let ehr = chain_ehrhart(&p, 1, true, Budget::default()).unwrap();
            let pts = uc_lattice_points(&p).unwrap().len();
            check(BigUint::from(pts) == ehr[1], format!("{p:?}: {pts} signed points, ehr(1) = {}", ehr[1]))?;
            if n <= 4 {
                check(
                    marked_buchberger_verify(&chain.binomials, DEFAULT_STEP_CAP).unwrap(),
                    format!("{p:?}: S-pair check failed"),
                )?;
            }
            posets += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{posets} labeled posets on <= 5 elements in {:.1?}", start.elapsed()))
}

fn gale_pairs() -> Outcome {
    let mut fixtures: Vec<(String, Graph)> =
        (1..=5).map(|n| (format!("K{n}"), build(GraphKind::Complete(n)))).collect();
    fixtures.push(("C4".into(), build(GraphKind::Cycle(4))));
    fixtures.push(("L(K3,3)".into(), build(GraphKind::CompleteBipartite(3, 3)).line_graph().unwrap()));
    let grid = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let levels = Poset::ordinal_sum_of_antichains(&[2, 1, 2]).unwrap();
    for (name, p) in [("grid poset", grid), ("2+1+2 levels", levels)] {
        check(p.grillet_condition(), format!("{name} fails the Grillet condition"))?;
        fixtures.push((name.into(), p.comparability_graph()));
    }
    for (name, g) in &fixtures {
        let pair = gale_pair(g).map_err(|e| format!("{name}: {e}"))?;
        check(pair.verified, format!("{name}: pair does not verify"))?;
    }
    let pair = gale_pair(&build(GraphKind::Cycle(4))).unwrap();
    let dropped = VRep::new(pair.p.dim, pair.p.points[1..].to_vec()).unwrap();
    check(!verify_gale_pair(&dropped, &pair.q).unwrap(), "corrupted C4 pair verified")?;
    Ok(format!("{} fixtures verify; corrupted pair rejected", fixtures.len()))
}

fn santalo() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for n in 3..=6 {
        let r = santalo_experiment(n, Budget::default(), None).map_err(|e| e.to_string())?;
        let target = build(if n == 6 { GraphKind::Cycle(6) } else { GraphKind::Path(n) });
        let (a, _) = canonical_form(&target).unwrap();
        let (b, _) = canonical_form(&target.complement()).unwrap();
        let want: (CanonicalCode, CanonicalCode) = if a <= b { (a, b) } else { (b, a) };
        let argmax: Vec<String> = r.argmax.iter().map(|(x, y)| format!("{{{x}, {y}}}")).collect();
        lines.push(format!("n = {n}: {} at {}", argmax.join(" "), r.product));
        if r.argmax != [want] {
            failures.push(format!("n = {n}: expected only {{{}, {}}}, got {}", want.0, want.1, argmax.join(" ")));
        }
    }
    within(start, Duration::from_secs(600))?;
    if failures.is_empty() {
        Ok(lines.join("; "))
    } else {
        Err(failures.join("; "))
    }
}

fn determinism() -> Outcome {
    let commands: Vec<Vec<String>> = vec![
        vec!["analyze-graph".into(), fixture("rook2.graph")],
        vec!["analyze-graph".into(), fixture("c5.graph")],
        vec!["tables".into(), "--which".into(), "2".into(), "--n-max".into(), "3".into()],
        vec!["census".into(), "--n".into(), "5".into(), "--hstar".into(), "--format".into(), "csv".into()],
        vec!["santalo".into(), "--n".into(), "5".into()],
        vec![
            "groebner".into(),
            "--poset".into(),
            fixture("grid.poset"),
            "--family".into(),
            "uc".into(),
            "--pretty".into(),
            "--verify".into(),
        ],
        vec!["gale".into(), "--graph".into(), fixture("c4.graph")],
        vec!["triangulate".into(), "--graph".into(), fixture("c4.graph"), "--emit-heights".into()],
    ];
    for cmd in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "8"] {
            let mut args: Vec<&str> = vec!["--threads", threads];
            args.extend(cmd.iter().map(String::as_str));
            let o = ucpoly_cli(&args);
            check(o.status.success(), format!("{cmd:?} with {threads} threads exited {:?}", o.status.code()))?;
            outputs.push(o.stdout);
        }
        check(outputs.windows(2).all(|w| w[0] == w[1]), format!("{cmd:?} output depends on the thread count"))?;
    }
    Ok(format!("{} commands byte-identical on 1, 4 and 8 threads", commands.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("tables reproduction", tables_reproduction),
        ("volume lower bounds", lower_bounds),
        ("perfect graph census", census_counts),
        ("reflexivity characterization", reflexivity),
        ("triangulation accounting", triangulation_accounting),
        ("sandwich and Mahler bounds", sandwich_and_mahler),
        ("Gröbner bases", groebner),
        ("Gale pairs", gale_pairs),
        ("volume-product maximizers", santalo),
        ("thread determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
