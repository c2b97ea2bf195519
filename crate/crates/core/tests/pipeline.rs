//! End-to-end runs over the whole graph census: text in, polytope data out.

use ucpoly::census::enumerate_unlabeled;
use ucpoly::ehrhart::{unconditional_h_star, Budget};
use ucpoly::groebner::{uc_lattice_points, uc_point_count};
use ucpoly::lattice::stable_set_polytope;
use ucpoly::polytope::{dual_description, is_reflexive, polar_dual};
use ucpoly::triangulate::{is_flag, is_unimodular, lift_unconditional, pulling_triangulation_lex};
use ucpoly::{birkhoff, BirkhoffFamily, Family, Graph, LatticePoint, Poset};

fn perfect_classes(n: usize) -> Vec<Graph> {
    enumerate_unlabeled(n)
        .unwrap()
        .into_iter()
        .map(|c| c.graph().unwrap())
        .filter(|g| g.is_perfect().unwrap())
        .collect()
}

#[test]
fn text_round_trip_feeds_the_pipeline() {
    let g = Graph::parse("4 4\n0 1\n0 2\n1 3\n2 3\n").unwrap();
    let h = unconditional_h_star(&g, Budget::default()).unwrap();
    assert_eq!(h.to_csv(), "1,12,38,12,1");
    assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
}

#[test]
fn lifted_triangulations_account_for_the_volume() {
    for n in 1..=4 {
        for g in perfect_classes(n) {
            let p = stable_set_polytope(&g).unwrap();
            let base = pulling_triangulation_lex(&p.vrep(), &p.hrep()).unwrap();
            let lifted = lift_unconditional(&base).unwrap();
            let vol = unconditional_h_star(&g, Budget::default()).unwrap().normalized_volume();
            assert_eq!(lifted.len().to_string(), vol.to_string(), "{g:?}");
            assert!(is_unimodular(&base).unwrap() && is_unimodular(&lifted).unwrap());
            if is_flag(&base) {
                assert!(is_flag(&lifted), "{g:?}");
            }
        }
    }
}

#[test]
fn hull_polar_and_h_star_agree_on_every_perfect_class() {
    for n in 1..=4 {
        for g in perfect_classes(n) {
            let up = stable_set_polytope(&g).unwrap().unconditional();
            let h = dual_description(&up.vrep().unwrap()).unwrap();
            assert!(is_reflexive(&h).unwrap());
            let co = stable_set_polytope(&g.complement()).unwrap().unconditional();
            assert!(polar_dual(&h).unwrap().same_point_set(&co.vrep().unwrap()));
            assert_eq!(h.rows.len().to_string(), up.facet_count().to_string());
            let hs = unconditional_h_star(&g, Budget::default()).unwrap();
            assert!(hs.is_palindromic());
            assert_eq!(hs.entries.last().unwrap().to_string(), "1");
        }
    }
}

#[test]
fn antichain_posets_give_cubes() {
    for n in 1..=4 {
        let p = Poset::antichain(n).unwrap();
        let mut got: Vec<LatticePoint> = uc_lattice_points(&p).unwrap().iter().map(|v| v.point(n)).collect();
        got.sort();
        let mut cube: Vec<LatticePoint> = (0..3usize.pow(n as u32))
            .map(|mut k| {
                LatticePoint(
                    (0..n)
                        .map(|_| {
                            let x = (k % 3) as i64 - 1;
                            k /= 3;
                            x
                        })
                        .collect(),
                )
            })
            .collect();
        cube.sort();
        assert_eq!(got, cube);
    }
}

#[test]
fn signed_chain_point_counts_for_six_elements() {
    for p in Poset::naturally_labeled(6).unwrap() {
        assert_eq!(uc_lattice_points(&p).unwrap().len().to_string(), uc_point_count(&p).unwrap().to_string());
    }
}

#[test]
fn birkhoff_base_lifts_to_sixty_four_simplices() {
    let pos = BirkhoffFamily::new(2, Family::Pos).unwrap().anti_blocking();
    let base = pulling_triangulation_lex(&pos.vrep(), &pos.hrep()).unwrap();
    assert_eq!(base.len(), 4);
    let lifted = lift_unconditional(&base).unwrap();
    assert_eq!(lifted.len(), 64);
    assert!(is_unimodular(&lifted).unwrap());
}

#[test]
fn gorenstein_rows_are_symmetric_about_their_degree() {
    let pos = birkhoff::reproduce_table(1, 3, Budget::default(), false).unwrap();
    let cplus = birkhoff::reproduce_table(3, 3, Budget::default(), false).unwrap();
    for r in pos.iter().chain(&cplus) {
        assert!(r.h_star.is_palindromic_about_degree(), "{r:?}");
    }
}
