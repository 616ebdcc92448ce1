//! Acceptance suite: one test per numbered criterion, each printing a
//! pass line when its assertions hold. Run with `--nocapture` to see the
//! lines; the test names carry the criterion numbers either way.

use std::collections::HashSet;

use pg240::bridge::{enumerate_signed_fano7, ortho_to_pack};
use pg240::e8::combinatorial_psi_prime_residues;
use pg240::game;
use pg240::gf2;
use pg240::order::{
    self, check_srg, eulerian_check, height_distribution, quantum_product, set_c, Perm8,
    ReducedCode,
};
use pg240::pg32::{self, all_triples_on, spread, Triple};
use pg240::weyl::{
    act_fano, act_lambda, act_mu, action_table, kernel_from_stabilizer, orbit, parity_image,
    qp_verify, stabilizer_scan, GroupName, Reflection, SignedPerm,
};
use pg240::world::World;

fn packing_of(ts: &[[u8; 3]]) -> pg32::Packing {
    pg32::packing_from_label_triples(ts)
}

#[test]
fn criterion_01_cardinalities() {
    let w = World::get();
    assert_eq!(all_triples_on(&[1, 2, 3, 4, 5, 6, 7]).len(), 35);
    assert_eq!(pg32::geometry::lines().len(), 35);
    assert_eq!(w.heptads.heptads.len(), 30);
    assert_eq!(w.heptads.point_indices().len(), 15);
    assert_eq!(w.heptads.plane_indices().len(), 15);
    assert_eq!(all_triples_on(&[1, 2, 3, 4, 5, 6, 7, 8]).len(), 56);
    assert_eq!(w.idx.len(), 240);
    assert_eq!(w.rs.roots.len(), 240);
    assert_eq!(w.rs.psi.len(), 64);
    assert_eq!(w.rs.phi(1, 2).len(), 14);
    assert_eq!(w.rs.omega_psi().len(), 240);
    let oa = gf2::omega_a();
    assert_eq!(oa.all.len(), 480);
    assert_eq!((oa.plus.len(), oa.minus.len()), (240, 240));
    assert_eq!(gf2::singular_subspaces().len(), 30);
    assert_eq!(enumerate_signed_fano7().len(), 240);
    assert_eq!(set_c().len(), 240);
    println!("criterion 01: pass — all cardinalities exact");
}

#[test]
fn criterion_02_spread_formula() {
    let lines = |a, b, c| -> Vec<String> {
        spread(Triple::new(a, b, c))
            .lines
            .iter()
            .map(|t| t.to_string())
            .collect()
    };
    assert_eq!(lines(3, 6, 8), ["136", "236", "346", "356", "367"]);
    assert_eq!(lines(2, 5, 7), ["134", "136", "146", "257", "346"]);
    println!("criterion 02: pass — worked spreads byte-exact");
}

#[test]
fn criterion_03_three_way_heights() {
    let w = World::get();
    let universe = w.psi_prime.psi_prime();
    for pid in 0..w.idx.len() {
        let h = w.heights[pid];
        assert_eq!(w.heights_d7[pid], h, "rank-7 geodesic at {pid}");
        let p = w.packing(pid);
        assert_eq!(order::combinatorial_height(p), h, "formula at {pid}");
        let res1 = w.rs.residues(&w.ortho_of[pid], &w.rs.psi).len();
        assert_eq!(res1 as u8, h, "first residue count at {pid}");
        let rprime = w.psi_prime.orthoset_of_packing(p);
        let res2 = w.rs.residues(&rprime, &universe).len();
        assert_eq!(res2 as u8, h, "second residue count at {pid}");
    }
    println!("criterion 03: pass — four height computations agree on all 240");
}

#[test]
fn criterion_04_generating_function() {
    let w = World::get();
    let dist = height_distribution(&w.heights);
    assert_eq!(dist, quantum_product(&[2, 3, 5, 8]));
    assert_eq!(dist.len(), 15);
    println!("criterion 04: pass — 15 coefficients match the quantum product");
}

#[test]
fn criterion_05_lehmer_map() {
    let w = World::get();
    // Bijection onto the grid.
    let mut pids = w.lehmer.pid_of.clone();
    pids.sort_unstable();
    pids.dedup();
    assert_eq!(pids.len(), 240);

    // All 3360 ordered one-coordinate pairs embed into the order.
    let codes: Vec<ReducedCode> = (0..240).map(ReducedCode::from_index).collect();
    let mut checked = 0;
    for &a in &codes {
        for &b in &codes {
            if a == b {
                continue;
            }
            let diffs = a
                .digits()
                .iter()
                .zip(b.digits())
                .filter(|(x, y)| **x != *y)
                .count();
            if diffs != 1 {
                continue;
            }
            checked += 1;
            let (lo, hi) = if a.product_le(&b) { (a, b) } else { (b, a) };
            assert!(
                w.poset.le(w.pid_by_code(lo), w.pid_by_code(hi)),
                "{lo} < {hi} must embed"
            );
        }
    }
    assert_eq!(checked, 3360);

    // The worked pair: a covering relation with grid-incomparable codes.
    let x = packing_of(&[
        [1, 2, 7],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
        [3, 4, 7],
        [5, 6, 7],
    ]);
    let xp = packing_of(&[
        [1, 2, 6],
        [1, 3, 5],
        [1, 4, 7],
        [2, 3, 7],
        [2, 4, 5],
        [3, 4, 6],
        [5, 6, 7],
    ]);
    let (px, pxp) = (w.idx.id_of(&x).unwrap(), w.idx.id_of(&xp).unwrap());
    let (cx, cxp) = (w.lehmer.code_of[px], w.lehmer.code_of[pxp]);
    assert_eq!(cx, ReducedCode::new(0, 0, 0, 1));
    assert_eq!(cxp, ReducedCode::new(0, 0, 2, 0));
    assert!(w.poset.covers.contains(&(px, pxp)));
    assert!(!cx.product_le(&cxp) && !cxp.product_le(&cx));

    // The two height-2 packings above both height-1 packings have no
    // greatest lower bound.
    let x0 = w.packing(w.x0()).clone();
    let s = |i: u8, p: &pg32::Packing| act_fano(Reflection::Plain(i, i + 1), p);
    let a = w.idx.id_of(&s(2, &s(1, &x0))).unwrap();
    let b = w.idx.id_of(&s(1, &s(2, &x0))).unwrap();
    let lower: Vec<usize> = (0..240)
        .filter(|&z| w.poset.le(z, a) && w.poset.le(z, b))
        .collect();
    let maximal: Vec<usize> = lower
        .iter()
        .copied()
        .filter(|&z| lower.iter().all(|&u| z == u || !w.poset.le(z, u)))
        .collect();
    assert_eq!(maximal.len(), 2, "no greatest lower bound");
    println!("criterion 05: pass — bijection, 3360 embedded relations, worked failures exhibited");
}

#[test]
fn criterion_06_quasiparabolic() {
    let w = World::get();
    for name in [
        GroupName::A7,
        GroupName::D5,
        GroupName::D6,
        GroupName::D7,
        GroupName::D8,
    ] {
        let report = qp_verify(name, &w.heights, &w.idx).unwrap();
        assert_eq!(report.minima, vec![w.x0()], "{}", name.as_str());
        assert_eq!(report.maxima, vec![w.x1()], "{}", name.as_str());
    }
    let d5_tables: Vec<Vec<usize>> = GroupName::D5
        .generators()
        .iter()
        .map(|&g| action_table(g, &w.idx))
        .collect();
    assert_eq!(orbit(&d5_tables, w.x0(), w.idx.len()).len(), 240);
    println!(
        "criterion 06: pass — five groups quasiparabolic with unique extrema; rank-5 orbit full"
    );
}

#[test]
fn criterion_07_action_consistency() {
    let w = World::get();
    for (r, table) in &w.d8_reflections {
        let sp = r.to_signed_perm();
        for pid in 0..w.idx.len() {
            let expect = table[pid];
            assert_eq!(
                w.idx.id_of(&act_fano(*r, w.packing(pid))),
                Some(expect),
                "fano vs lambda at {r}, {pid}"
            );
            assert_eq!(
                w.idx.id_of(&act_mu(sp, w.packing(pid)).unwrap()),
                Some(expect),
                "mu vs lambda at {r}, {pid}"
            );
        }
    }
    // The listed identities at the minimal packing.
    let x0 = w.packing(w.x0()).clone();
    let s = |i: u8, p: &pg32::Packing| act_fano(Reflection::Plain(i, i + 1), p);
    assert_eq!(s(5, &x0), s(1, &x0));
    assert_eq!(s(5, &s(4, &x0)), s(3, &s(4, &x0)));
    assert_eq!(s(6, &x0), s(2, &x0));
    let klein = [
        Perm8::transposition(1, 2).compose(&Perm8::transposition(3, 4)),
        Perm8::transposition(1, 3).compose(&Perm8::transposition(2, 4)),
        Perm8::transposition(1, 4).compose(&Perm8::transposition(2, 3)),
    ];
    for v in &klein {
        for y in Perm8::all()
            .into_iter()
            .filter(|p| p.0[3..] == [4, 5, 6, 7, 8])
        {
            assert_eq!(x0.relabel(&v.compose(&y).0), x0.relabel(&y.0));
        }
    }
    // The two worked signed actions, byte-exact.
    let a = act_lambda(SignedPerm::signed_transposition(1, 8), w.x0(), &w.idx).unwrap();
    assert_eq!(
        w.packing(a),
        &packing_of(&[
            [1, 2, 7],
            [1, 3, 6],
            [1, 4, 5],
            [2, 3, 4],
            [2, 5, 6],
            [3, 5, 7],
            [4, 6, 7]
        ])
    );
    let b = act_lambda(SignedPerm::signed_transposition(2, 7), w.x0(), &w.idx).unwrap();
    assert_eq!(
        w.packing(b),
        &packing_of(&[
            [2, 3, 5],
            [2, 4, 6],
            [2, 7, 8],
            [3, 4, 7],
            [3, 6, 8],
            [4, 5, 8],
            [5, 6, 7]
        ])
    );
    println!("criterion 07: pass — three action rules agree; worked actions byte-exact");
}

#[test]
fn criterion_08_kernels_and_stabilizers() {
    let w = World::get();
    let stab8 = stabilizer_scan(8, 0xff, w.x0(), &w.idx);
    assert_eq!(stab8.len(), 21504);
    assert_eq!(
        kernel_from_stabilizer(&stab8, &w.idx),
        vec![SignedPerm::identity(), SignedPerm::w0()]
    );
    for (n, domain) in [(8usize, 0x00u8), (7, 0x7f), (6, 0x3f), (5, 0x1f)] {
        let stab = stabilizer_scan(n, domain, w.x0(), &w.idx);
        assert_eq!(
            kernel_from_stabilizer(&stab, &w.idx),
            vec![SignedPerm::identity()],
            "rank {n} kernel"
        );
    }
    let stab_s8 = stabilizer_scan(8, 0x00, w.x0(), &w.idx);
    assert_eq!(stab_s8.len(), 168);
    assert!(stab_s8.iter().all(|e| e.perm_is_even()));
    let stab_d5 = stabilizer_scan(5, 0x1f, w.x0(), &w.idx);
    assert_eq!(stab_d5.len(), 8);
    for &a in &stab_d5 {
        assert_eq!(a.compose(a), SignedPerm::identity());
        for &b in &stab_d5 {
            assert_eq!(a.compose(b), b.compose(a));
        }
    }
    let gens = [
        SignedPerm::transposition(1, 2).compose(SignedPerm::transposition(3, 4)),
        SignedPerm::transposition(1, 3).compose(SignedPerm::transposition(2, 4)),
        SignedPerm::signed_transposition(1, 2).compose(SignedPerm::signed_transposition(3, 4)),
    ];
    assert_eq!(pg240::weyl::enumerate_group(&gens), stab_d5);
    let (image_order, kernel) = parity_image(&w.heights, &w.idx).unwrap();
    assert_eq!(image_order, 1_290_240);
    assert_eq!(image_order, 32 * 40320);
    assert_eq!(kernel.len(), 2);
    println!("criterion 08: pass — kernels, stabilizers, and the parity image order check out");
}

#[test]
fn criterion_09_poset_topology() {
    let w = World::get();
    for &(x, y) in &w.poset.covers {
        assert_eq!(w.heights[y], w.heights[x] + 1);
    }
    eulerian_check(&w.poset).unwrap();
    let z0 = w.z0_table();
    for pid in 0..w.idx.len() {
        assert_eq!(w.heights[pid] + w.heights[z0[pid]], 14);
    }
    for x in 0..w.idx.len() {
        for y in order::words_iter(&w.poset.up[x]) {
            assert!(w.poset.le(z0[y], z0[x]));
        }
    }
    println!("criterion 09: pass — graded covers, Eulerian Möbius values, order-reversing duality");
}

#[test]
fn criterion_10_strongly_regular_graphs() {
    let w = World::get();
    let v4 = gf2::class4_cosets();
    let sep: Vec<Vec<bool>> = v4
        .iter()
        .map(|&a| v4.iter().map(|&b| a != b && a.separated(b)).collect())
        .collect();
    check_srg(&sep, 35, 18, 9, 9).unwrap();
    let even: Vec<usize> = (0..w.idx.len())
        .filter(|&x| w.heights[x] % 2 == 0)
        .collect();
    assert_eq!(even.len(), 120);
    let adj: Vec<Vec<bool>> = even
        .iter()
        .map(|&a| {
            even.iter()
                .map(|&b| {
                    a != b
                        && w.packing(a)
                            .triples()
                            .iter()
                            .all(|t| !w.packing(b).contains_triple(*t))
                })
                .collect()
        })
        .collect();
    check_srg(&adj, 120, 63, 30, 36).unwrap();
    println!("criterion 10: pass — SRG(35,18,9,9) and SRG(120,63,30,36) verified");
}

#[test]
fn criterion_11_second_root_model() {
    let w = World::get();
    let pp = &w.psi_prime;
    let phi21 = &pp.phi21;
    let poset = pg240::e8::RelPoset::from_le(56, |i, j| w.rs.le(phi21[i], phi21[j]));
    poset.is_distributive_lattice().unwrap();
    assert_eq!(
        poset.count_isomorphisms(&pg240::e8::grid_ideal_lattice(), 3),
        1
    );
    for &a in &pp.phi23 {
        for &b in &pp.phi23 {
            assert!(w.rs.le(a, b) || w.rs.le(b, a));
        }
    }
    assert_eq!(pp.spread_of(w.rs.simple[1]), Some(Triple::new(1, 2, 3)));
    assert_eq!(pp.basepoint_of(w.rs.theta), Some(8));
    let universe = pp.psi_prime();
    let maximal = w.rs.maximal_orthogonal_subsets(&universe);
    assert_eq!(maximal.len(), 240);
    for set in &maximal {
        assert_eq!(set.len(), 8);
        assert_eq!(set.iter().filter(|r| pp.phi23.contains(r)).count(), 1);
    }
    // Byte-exact residues of the maximal packing.
    let (bps, triples) = combinatorial_psi_prime_residues(w.packing(w.x1()));
    assert_eq!(bps, vec![2, 3, 4, 5, 6, 7, 8]);
    let expect: Vec<Triple> = [
        [3u8, 7, 8],
        [4, 6, 8],
        [4, 7, 8],
        [5, 6, 7],
        [5, 6, 8],
        [5, 7, 8],
        [6, 7, 8],
    ]
    .iter()
    .map(|&[a, b, c]| Triple::new(a, b, c))
    .collect();
    assert_eq!(triples, expect);
    println!(
        "criterion 11: pass — grid lattice unique, chain anchored, 7+1 subsets, residues exact"
    );
}

#[test]
fn criterion_12_game() {
    let w = World::get();
    let table = game::solve();
    let mut found = game::kernel(&table);
    found.sort_unstable();
    let mut figure = game::FIGURE_KERNEL.to_vec();
    figure.sort_unstable();
    assert_eq!(found, figure);
    let kernel_roots = w.kernel_roots();
    for mask in 0u8..128 {
        let pos = game::GamePos(mask);
        if !pos.is_legal() {
            continue;
        }
        for mv in game::legal_moves(pos) {
            assert!(game::move_delta_is_positive_rank7_root(&w.rs, pos, mv));
        }
        match table[mask as usize].unwrap() {
            game::Outcome::NextWins => {
                let mv = game::strategy_move(&w.rs, &kernel_roots, pos).unwrap();
                let after = game::apply(pos, mv).unwrap();
                assert_eq!(table[after.0 as usize], Some(game::Outcome::PreviousWins));
            }
            game::Outcome::PreviousWins => {
                assert!(game::strategy_move(&w.rs, &kernel_roots, pos).is_err());
            }
        }
    }
    println!(
        "criterion 12: pass — kernel matches the figure; strategy verified on all 64 positions"
    );
}

#[test]
fn criterion_13_kirkman() {
    let w = World::get();
    for pid in 0..w.idx.len() {
        let schedule = pg32::kirkman(w.packing(pid), &w.heptads);
        pg32::verify_schedule(&schedule).unwrap();
    }
    println!("criterion 13: pass — all 240 schedules cover the 105 pairs exactly once");
}

#[test]
fn criterion_14_oracle_cross_checks() {
    let w = World::get();
    let mut cliques = gf2::separation_clique_oracle();
    cliques.sort_unstable();
    assert_eq!(cliques, gf2::omega_a().all);
    assert_eq!(pg32::geometry::packings().len(), 240);
    assert_eq!(w.idx.len(), 240);
    let report = gf2::alt_model_check();
    assert_eq!(report.nonzero_singular, 35);
    assert_eq!(report.singular_3subspaces, 30);
    // The two packing-to-root routes agree.
    let omega_psi: HashSet<[usize; 8]> = w.rs.omega_psi().into_iter().collect();
    for pid in 0..w.idx.len() {
        assert!(omega_psi.contains(&w.ortho_of[pid]));
        assert_eq!(ortho_to_pack(&w.ortho_of[pid], &w.idx, &w.rs), Ok(pid));
    }
    println!("criterion 14: pass — clique, geometry, and matrix-model oracles all agree");
}
