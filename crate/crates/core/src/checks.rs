//! The named verification catalogue.
//!
//! Each check re-derives one cluster of claims from the shared tables and
//! reports what it measured. Checks are independent and read-only, so the
//! CLI can fan them out across threads; each one either returns its detail
//! lines or the first failure it hit.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use crate::bridge::{
    self, act_signed_fano7, enumerate_signed_fano7, from_pasch6, from_signed_fano7, mts_class,
    p_decomposition, p_op, pasch_move, pasch_move_duality_holds, to_pasch6, to_signed_fano7,
};
use crate::e8::combinatorial_psi_prime_residues;
use crate::game::{self, GamePos};
use crate::gf2::{self, Coset};
use crate::order::{
    self, check_srg, eulerian_check, height_distribution, label_parity_well_defined,
    label_parity_witness, odd_label_count, quantum_product, set_c, Parity, Perm8, ReducedCode,
};
use crate::pg32::{self, all_triples_on, spread, spreads_disjoint, Triple};
use crate::weyl::{
    act_fano, act_lambda, act_mu, action_table, alternating_generators, kernel_from_stabilizer,
    kernel_full_scan, mu_quads, orbit, parity_image, qp_verify, stabilizer_scan, transform_quads,
    GroupName, Reflection, SignedPerm,
};
use crate::world::World;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum CheckId {
    ThmCorresp,
    LemmaE8,
    LemmaX0,
    PropCombo,
    ThmRefines,
    RemarkRefines,
    PropSignact,
    LemmaSevenact,
    ThmQppack,
    RemarkD5stab,
    PropNonrec,
    Prop7label,
    RemarkPasch,
    ThmFaithful,
    RemarkTopology,
    RemarkSchmidt,
    RemarkResidues,
    RemarkOtherpsi,
    RemarkHhz,
    RemarkGames,
    RemarkKsp,
}

impl CheckId {
    pub const ALL: [CheckId; 21] = [
        CheckId::ThmCorresp,
        CheckId::LemmaE8,
        CheckId::LemmaX0,
        CheckId::PropCombo,
        CheckId::ThmRefines,
        CheckId::RemarkRefines,
        CheckId::PropSignact,
        CheckId::LemmaSevenact,
        CheckId::ThmQppack,
        CheckId::RemarkD5stab,
        CheckId::PropNonrec,
        CheckId::Prop7label,
        CheckId::RemarkPasch,
        CheckId::ThmFaithful,
        CheckId::RemarkTopology,
        CheckId::RemarkSchmidt,
        CheckId::RemarkResidues,
        CheckId::RemarkOtherpsi,
        CheckId::RemarkHhz,
        CheckId::RemarkGames,
        CheckId::RemarkKsp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckId::ThmCorresp => "thm-corresp",
            CheckId::LemmaE8 => "lemma-e8",
            CheckId::LemmaX0 => "lemma-x0",
            CheckId::PropCombo => "prop-combo",
            CheckId::ThmRefines => "thm-refines",
            CheckId::RemarkRefines => "remark-refines",
            CheckId::PropSignact => "prop-signact",
            CheckId::LemmaSevenact => "lemma-sevenact",
            CheckId::ThmQppack => "thm-qppack",
            CheckId::RemarkD5stab => "remark-d5stab",
            CheckId::PropNonrec => "prop-nonrec",
            CheckId::Prop7label => "prop-7label",
            CheckId::RemarkPasch => "remark-pasch",
            CheckId::ThmFaithful => "thm-faithful",
            CheckId::RemarkTopology => "remark-topology",
            CheckId::RemarkSchmidt => "remark-schmidt",
            CheckId::RemarkResidues => "remark-residues",
            CheckId::RemarkOtherpsi => "remark-otherpsi",
            CheckId::RemarkHhz => "remark-hhz",
            CheckId::RemarkGames => "remark-games",
            CheckId::RemarkKsp => "remark-ksp",
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.id() == s)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    /// Also run the brute-force oracles that rescan whole groups.
    pub deep: bool,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub id: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub failure: Option<String>,
    pub millis: u128,
}

pub fn run_check(id: CheckId, w: &World, opts: &CheckOptions) -> CheckReport {
    let start = Instant::now();
    let result = match id {
        CheckId::ThmCorresp => check_thm_corresp(w),
        CheckId::LemmaE8 => check_lemma_e8(w),
        CheckId::LemmaX0 => check_lemma_x0(w),
        CheckId::PropCombo => check_prop_combo(w),
        CheckId::ThmRefines => check_thm_refines(w),
        CheckId::RemarkRefines => check_remark_refines(w),
        CheckId::PropSignact => check_prop_signact(w),
        CheckId::LemmaSevenact => check_lemma_sevenact(w),
        CheckId::ThmQppack => check_thm_qppack(w),
        CheckId::RemarkD5stab => check_remark_d5stab(w),
        CheckId::PropNonrec => check_prop_nonrec(w),
        CheckId::Prop7label => check_prop_7label(w),
        CheckId::RemarkPasch => check_remark_pasch(w),
        CheckId::ThmFaithful => check_thm_faithful(w, opts),
        CheckId::RemarkTopology => check_remark_topology(w),
        CheckId::RemarkSchmidt => check_remark_schmidt(w),
        CheckId::RemarkResidues => check_remark_residues(w),
        CheckId::RemarkOtherpsi => check_remark_otherpsi(w),
        CheckId::RemarkHhz => check_remark_hhz(w),
        CheckId::RemarkGames => check_remark_games(w),
        CheckId::RemarkKsp => check_remark_ksp(w),
    };
    let millis = start.elapsed().as_millis();
    match result {
        Ok(details) => CheckReport {
            id: id.id(),
            passed: true,
            details,
            failure: None,
            millis,
        },
        Err(failure) => CheckReport {
            id: id.id(),
            passed: false,
            details: Vec::new(),
            failure: Some(failure),
            millis,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn packing_of(ts: &[[u8; 3]]) -> pg32::Packing {
    pg32::packing_from_label_triples(ts)
}

fn coset_set(lists: &[&[u8]]) -> Vec<Coset> {
    let mut v: Vec<Coset> = lists.iter().map(|ls| Coset::from_labels(ls)).collect();
    v.sort_unstable();
    v
}

fn check_thm_corresp(w: &World) -> Result<Vec<String>, String> {
    let mut details = Vec::new();

    let subs = gf2::singular_subspaces();
    ensure(subs.len() == 30, || {
        format!("{} singular subspaces, expected 30", subs.len())
    })?;
    for s in subs.iter() {
        ensure(s.contains(&Coset::ZERO), || "subspace misses zero".into())?;
        for &x in s {
            ensure(x.q() == Ok(false), || format!("{x} is not singular"))?;
            for &y in s {
                ensure(s.contains(&x.add(y)), || "subspace not closed".into())?;
                if x != y {
                    ensure(x.separated(y), || format!("{x},{y} not separated"))?;
                }
            }
        }
    }
    details.push("30 totally singular subspaces, closed and singular".into());

    let oa = gf2::omega_a();
    ensure(oa.all.len() == 480, || {
        format!("|omega| = {}", oa.all.len())
    })?;
    ensure(oa.plus.len() == 240 && oa.minus.len() == 240, || {
        "even/odd split is not 240+240".into()
    })?;
    ensure(oa.plus.len() + oa.minus.len() == oa.all.len(), || {
        "split is not a disjoint union".into()
    })?;
    let mut cliques = gf2::separation_clique_oracle();
    cliques.sort_unstable();
    ensure(cliques == oa.all, || {
        "maximal-clique oracle disagrees with subspace translates".into()
    })?;
    details.push("480 maximally separated sets; clique oracle agrees".into());

    let v4_cliques = gf2::class4_clique_oracle();
    ensure(
        v4_cliques.len() == 30 && v4_cliques.iter().all(|c| c.len() == 7),
        || "class-4 maximal cliques are not 30 of size 7".into(),
    )?;
    check_srg(&separation_graph_v4(), 35, 18, 9, 9)?;
    details.push("class-4 graph: 30 maximal 7-cliques, SRG(35,18,9,9)".into());

    // λ− is a bijection onto the odd half.
    let image: HashSet<[Coset; 8]> = w.idx.lambda.iter().copied().collect();
    ensure(image.len() == 240, || "coset images repeat".into())?;
    let minus: HashSet<[Coset; 8]> = oa.minus.iter().copied().collect();
    ensure(image == minus, || "coset images miss the odd half".into())?;
    details.push("packings biject with the odd separated sets".into());

    // λ+ is a bijection from the orthogonal sets onto the even half.
    let omega_psi = w.rs.omega_psi();
    ensure(omega_psi.len() == 240, || {
        format!("{} orthogonal 8-sets, expected 240", omega_psi.len())
    })?;
    let mut images: Vec<[Coset; 8]> = omega_psi
        .iter()
        .map(|set| {
            let mut cs: Vec<Coset> = set.iter().map(|&r| w.rs.lambda_plus(r).unwrap()).collect();
            cs.sort_unstable();
            cs.try_into().unwrap()
        })
        .collect();
    images.sort_unstable();
    images.dedup();
    ensure(images == oa.plus, || {
        "orthogonal sets do not biject with the even half".into()
    })?;
    details.push("orthogonal 8-sets biject with the even separated sets".into());

    // Orthogonality is separation under the correspondence.
    for &a in &w.rs.psi {
        for &b in &w.rs.psi {
            if a == b {
                continue;
            }
            let ortho = w.rs.inner(a, b) == 0;
            let agree = w.rs.roots[a]
                .d2
                .iter()
                .zip(w.rs.roots[b].d2.iter())
                .filter(|(x, y)| x == y)
                .count();
            let sep =
                w.rs.lambda_plus(a)
                    .unwrap()
                    .separated(w.rs.lambda_plus(b).unwrap());
            ensure(ortho == (agree == 4) && ortho == sep, || {
                "orthogonality / four-agreements / separation disagree".into()
            })?;
        }
    }

    // Round trip between packings and orthogonal sets.
    for pid in 0..w.idx.len() {
        let back =
            bridge::ortho_to_pack(&w.ortho_of[pid], &w.idx, &w.rs).map_err(|e| e.to_string())?;
        ensure(back == pid, || format!("round trip moved packing {pid}"))?;
    }
    // Worked endpoints.
    let y0 = worked_lambda_plus(w, w.x0());
    ensure(
        y0 == coset_set(&[
            &[1, 2, 7, 8],
            &[1, 3, 6, 8],
            &[1, 4, 5, 8],
            &[2, 3, 5, 8],
            &[2, 4, 6, 8],
            &[3, 4, 7, 8],
            &[5, 6, 7, 8],
            &[],
        ]),
        || "minimal orthogonal set mismatch".into(),
    )?;
    let y1 = worked_lambda_plus(w, w.x1());
    ensure(
        y1 == coset_set(&[
            &[1, 8],
            &[2, 3, 4, 8],
            &[2, 5, 6, 8],
            &[3, 5, 7, 8],
            &[4, 6, 7, 8],
            &[4, 5],
            &[3, 6],
            &[2, 7],
        ]),
        || "maximal orthogonal set mismatch".into(),
    )?;
    details.push("extremal packings map to the expected orthogonal sets".into());

    // Heptads and the combinatorial model.
    ensure(
        w.heptads.heptads.len() == 30
            && w.heptads.point_indices().len() == 15
            && w.heptads.plane_indices().len() == 15,
        || "heptads do not split 15+15".into(),
    )?;
    for i in 0..30 {
        for j in i + 1..30 {
            let shared = w.heptads.heptads[i].shared_with(&w.heptads.heptads[j]);
            let same = w.heptads.kinds[i] == w.heptads.kinds[j];
            ensure(
                (same && shared == 1) || (!same && (shared == 0 || shared == 3)),
                || format!("heptads {i},{j} share {shared} triples"),
            )?;
        }
    }
    for t in all_triples_on(&[1, 2, 3, 4, 5, 6, 7]) {
        let points = w
            .heptads
            .point_indices()
            .iter()
            .filter(|&&h| w.heptads.heptads[h].contains(t))
            .count();
        ensure(points == 3, || {
            format!("triple {t} lies in {points} point heptads")
        })?;
    }
    details.push("30 heptads: same-kind pairs share 1 triple, cross pairs 0 or 3".into());

    // Spread formula and disjointness.
    let s368: Vec<String> = spread(Triple::new(3, 6, 8))
        .lines
        .iter()
        .map(|t| t.to_string())
        .collect();
    ensure(s368 == ["136", "236", "346", "356", "367"], || {
        "spread 368 mismatch".into()
    })?;
    let indices = all_triples_on(&[1, 2, 3, 4, 5, 6, 7, 8]);
    ensure(indices.len() == 56, || "not 56 spread indices".into())?;
    for (i, &a) in indices.iter().enumerate() {
        let sa = spread(a);
        for &h in &w.heptads.point_indices() {
            let hits = sa
                .lines
                .iter()
                .filter(|&&t| w.heptads.heptads[h].contains(t))
                .count();
            ensure(hits == 1, || {
                format!("spread {a} does not partition the points")
            })?;
        }
        for &b in indices.iter().skip(i + 1) {
            let sb = spread(b);
            let literally = sa.lines.iter().all(|t| !sb.lines.contains(t));
            ensure(spreads_disjoint(a, b) == literally, || {
                format!("disjointness rule fails at {a},{b}")
            })?;
        }
    }
    details.push("56 spreads partition the points; disjoint iff singleton index meet".into());

    // The honest geometry re-derives everything.
    ensure(pg32::geometry::lines().len() == 35, || {
        "not 35 lines".into()
    })?;
    ensure(pg32::geometry::spreads().len() == 56, || {
        "not 56 geometry spreads".into()
    })?;
    ensure(pg32::geometry::packings().len() == 240, || {
        "geometry backtracking does not find 240 packings".into()
    })?;
    pg32::build_tau(&w.heptads)?;
    details.push("geometry oracle: 35 lines, 56 spreads, 240 packings, tau certified".into());

    Ok(details)
}

fn worked_lambda_plus(w: &World, pid: usize) -> Vec<Coset> {
    let mut v: Vec<Coset> = w.ortho_of[pid]
        .iter()
        .map(|&r| w.rs.lambda_plus(r).unwrap())
        .collect();
    v.sort_unstable();
    v
}

fn separation_graph_v4() -> Vec<Vec<bool>> {
    let v4 = gf2::class4_cosets();
    v4.iter()
        .map(|&a| v4.iter().map(|&b| a != b && a.separated(b)).collect())
        .collect()
}

fn check_lemma_e8(w: &World) -> Result<Vec<String>, String> {
    let rs = &w.rs;
    ensure(rs.roots.len() == 240, || "not 240 roots".into())?;
    let integer = rs
        .roots
        .iter()
        .filter(|r| r.d2.iter().all(|&x| x % 2 == 0))
        .count();
    ensure(integer == 112, || format!("{integer} integer roots"))?;
    ensure(rs.psi.len() == 64, || "not 64 first-layer roots".into())?;
    let phi12 = rs.phi(1, 2);
    ensure(phi12.len() == 14, || {
        format!("{} second-layer roots", phi12.len())
    })?;
    for &id in &phi12 {
        let d2 = rs.roots[id].d2;
        ensure(
            d2[7] == 2 && d2.iter().filter(|&&x| x != 0).count() == 2,
            || "second-layer root has the wrong shape".into(),
        )?;
    }
    for r in &rs.roots {
        let k = (0..8).rev().find(|&k| r.d2[k] != 0).unwrap();
        ensure(r.is_positive() == (r.d2[k] > 0), || {
            "positivity disagrees with the last nonzero coordinate".into()
        })?;
        ensure(r.coeffs[0] == r.d2[7], || {
            "first coefficient differs from the doubled last coordinate".into()
        })?;
    }
    let maxima = (0..240).filter(|&a| (0..240).all(|b| rs.le(b, a))).count();
    ensure(maxima == 1, || format!("{maxima} maximal roots"))?;
    ensure(
        rs.roots[rs.theta].coeffs == [2, 3, 4, 6, 5, 4, 3, 2],
        || "highest root has wrong coefficients".into(),
    )?;
    ensure(!rs.is_positive(rs.negate(rs.theta)), || {
        "negated highest root should be negative".into()
    })?;
    // Reflection closure over all ordered pairs.
    for b in 0..240 {
        for g in 0..240 {
            let img = rs.reflect(b, g);
            ensure(rs.reflect(b, img) == g, || {
                "reflection is not involutive".into()
            })?;
        }
    }
    Ok(vec![
        "240 roots (112 integer + 128 half-integer), layers 64 and 14".into(),
        "positivity criteria agree; reflections close on the root set".into(),
        "unique maximal root with coefficients 2,3,4,6,5,4,3,2".into(),
    ])
}

fn check_lemma_x0(w: &World) -> Result<Vec<String>, String> {
    let x0 = w.packing(w.x0());
    let act = |word: &[u8], p: &pg32::Packing| -> pg32::Packing {
        // Apply the rightmost simple transposition first.
        let mut q = p.clone();
        for &i in word.iter().rev() {
            q = act_fano(Reflection::Plain(i, i + 1), &q);
        }
        q
    };
    ensure(act(&[5], x0) == act(&[1], x0), || "s5 x0 != s1 x0".into())?;
    ensure(act(&[5, 4], x0) == act(&[3, 4], x0), || {
        "s5 s4 x0 != s3 s4 x0".into()
    })?;
    ensure(act(&[6], x0) == act(&[2], x0), || "s6 x0 != s2 x0".into())?;

    let klein = [
        Perm8::transposition(1, 2).compose(&Perm8::transposition(3, 4)),
        Perm8::transposition(1, 3).compose(&Perm8::transposition(2, 4)),
        Perm8::transposition(1, 4).compose(&Perm8::transposition(2, 3)),
    ];
    let s3: Vec<Perm8> = Perm8::all()
        .into_iter()
        .filter(|p| p.0[3..] == [4, 5, 6, 7, 8])
        .collect();
    ensure(s3.len() == 6, || {
        "rank-3 subgroup should have 6 elements".into()
    })?;
    for v in &klein {
        for y in &s3 {
            let wy = v.compose(y);
            ensure(x0.relabel(&wy.0) == x0.relabel(&y.0), || {
                format!("Klein relation fails for {v} {y}")
            })?;
        }
    }
    Ok(vec![
        "the three listed word identities hold at the minimal packing".into(),
        "Klein four-group relations hold against all six rank-3 elements".into(),
    ])
}

fn check_prop_combo(w: &World) -> Result<Vec<String>, String> {
    let c = set_c();
    ensure(c.len() == 240, || "reduced-code set is not 240".into())?;
    let x0 = w.packing(w.x0());
    let mut seen = HashSet::new();
    for (code, perm) in &c {
        let pid = w
            .idx
            .id_of(&x0.relabel(&perm.0))
            .ok_or("coded permutation leaves the packings")?;
        ensure(seen.insert(pid), || {
            format!("code {code} repeats a packing")
        })?;
        ensure(w.heights[pid] as usize == perm.length(), || {
            format!("code {code}: geodesic height differs from word length")
        })?;
    }
    // Membership is the no-inversions-in-4,6,7 condition.
    let members: HashSet<Perm8> = c.iter().map(|(_, p)| *p).collect();
    for p in Perm8::all() {
        let free = [4usize, 6, 7]
            .iter()
            .all(|&j| (0..j - 1).all(|i| p.0[i] < p.0[j - 1]));
        ensure(free == members.contains(&p), || {
            format!("inversion characterization fails at {p}")
        })?;
    }
    let dist = height_distribution(&w.heights);
    let expect = quantum_product(&[2, 3, 5, 8]);
    ensure(dist == expect, || {
        format!("height distribution {dist:?} differs from the quantum product")
    })?;
    // Transpositions flip the height parity.
    for (r, table) in &w.d8_reflections {
        if let Reflection::Plain(_, _) = r {
            for x in 0..w.idx.len() {
                ensure(w.heights[table[x]] % 2 != w.heights[x] % 2, || {
                    format!("transposition {r} preserves parity at {x}")
                })?;
            }
        }
    }
    Ok(vec![
        "240 coded permutations give 240 distinct packings with matching lengths".into(),
        "membership equals the inversion-free characterization".into(),
        format!("height generating function has coefficients {dist:?}"),
    ])
}

fn check_thm_refines(w: &World) -> Result<Vec<String>, String> {
    // Bijectivity of the table is established at construction; recheck.
    let mut pids: Vec<usize> = w.lehmer.pid_of.clone();
    pids.sort_unstable();
    pids.dedup();
    ensure(pids.len() == 240, || "code table is not bijective".into())?;

    let codes: Vec<ReducedCode> = (0..240).map(ReducedCode::from_index).collect();
    // All ordered single-coordinate pairs map to order relations.
    let mut one_step = 0usize;
    for &a in &codes {
        for &b in &codes {
            if a == b {
                continue;
            }
            let diffs = a
                .digits()
                .iter()
                .zip(b.digits().iter())
                .filter(|(x, y)| x != y)
                .count();
            if diffs != 1 {
                continue;
            }
            one_step += 1;
            let (lo, hi) = if a.product_le(&b) { (a, b) } else { (b, a) };
            let x = w.pid_by_code(lo);
            let y = w.pid_by_code(hi);
            ensure(w.poset.le(x, y), || {
                format!("one-coordinate relation {lo} < {hi} is not an order relation")
            })?;
        }
    }
    ensure(one_step == 3360, || {
        format!("{one_step} one-coordinate pairs, expected 3360")
    })?;

    // Product covers are covers of the packing order.
    let cover_set: HashSet<(usize, usize)> = w.poset.covers.iter().copied().collect();
    let mut product_covers = 0usize;
    for &a in &codes {
        for (k, bound) in [(0usize, 8u8), (1, 5), (2, 3), (3, 2)] {
            let mut d = a.digits();
            if d[k] + 1 >= bound {
                continue;
            }
            d[k] += 1;
            let b = ReducedCode::new(d[0], d[1], d[2], d[3]);
            product_covers += 1;
            let x = w.pid_by_code(a);
            let y = w.pid_by_code(b);
            ensure(cover_set.contains(&(x, y)), || {
                format!("product cover {a} -> {b} is not a covering relation")
            })?;
        }
    }
    ensure(product_covers == 682, || {
        format!("{product_covers} product covers, expected 682")
    })?;

    // Full morphism over every comparable pair of codes.
    let mut comparable = 0usize;
    for &a in &codes {
        for &b in &codes {
            if a != b && a.product_le(&b) {
                comparable += 1;
                ensure(w.poset.le(w.pid_by_code(a), w.pid_by_code(b)), || {
                    format!("product relation {a} <= {b} is not an order relation")
                })?;
            }
        }
    }
    ensure(comparable == 9480, || {
        format!("{comparable} strict comparable pairs, expected 9480")
    })?;
    Ok(vec![
        "code table is a bijection onto the 8x5x3x2 grid".into(),
        "3360 one-coordinate relations, 682 grid covers, 9480 grid relations all embed".into(),
    ])
}

fn check_remark_refines(w: &World) -> Result<Vec<String>, String> {
    let x0 = w.packing(w.x0()).clone();
    let s = |i: u8, p: &pg32::Packing| act_fano(Reflection::Plain(i, i + 1), p);
    let pid = |p: &pg32::Packing| w.idx.id_of(p).expect("packing exists");

    // The worked covering pair with incomparable codes.
    let x = s(1, &x0);
    let xp = s(1, &s(2, &x0));
    ensure(
        x == packing_of(&[
            [1, 2, 7],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
            [3, 4, 7],
            [5, 6, 7],
        ]),
        || "worked packing x mismatch".into(),
    )?;
    ensure(
        xp == packing_of(&[
            [1, 2, 6],
            [1, 3, 5],
            [1, 4, 7],
            [2, 3, 7],
            [2, 4, 5],
            [3, 4, 6],
            [5, 6, 7],
        ]),
        || "worked packing x' mismatch".into(),
    )?;
    let cx = w.lehmer.code_of[pid(&x)];
    let cxp = w.lehmer.code_of[pid(&xp)];
    ensure(cx == ReducedCode::new(0, 0, 0, 1), || {
        format!("code of x is {cx}")
    })?;
    ensure(cxp == ReducedCode::new(0, 0, 2, 0), || {
        format!("code of x' is {cxp}")
    })?;
    ensure(!cx.product_le(&cxp) && !cxp.product_le(&cx), || {
        "worked codes should be incomparable in the grid".into()
    })?;
    ensure(act_fano(Reflection::Plain(1, 3), &x) == xp, || {
        "(1,3) does not carry x to x'".into()
    })?;
    ensure(w.poset.covers.contains(&(pid(&x), pid(&xp))), || {
        "worked pair is not a covering relation".into()
    })?;

    // The six-element convex subposet isomorphic to the rank-2 Bruhat order.
    let members = [
        w.x0(),
        pid(&s(1, &x0)),
        pid(&s(2, &x0)),
        pid(&s(2, &s(1, &x0))),
        pid(&s(1, &s(2, &x0))),
        pid(&s(1, &s(2, &s(1, &x0)))),
    ];
    let distinct: HashSet<usize> = members.iter().copied().collect();
    ensure(distinct.len() == 6, || {
        "the six packings are not distinct".into()
    })?;
    // Expected relation matrix of the 3-letter Bruhat order over
    // (e, s1, s2, s21, s12, s121).
    let expect = |i: usize, j: usize| -> bool {
        if i == j {
            return true;
        }
        match (i, j) {
            (0, _) => true,
            (_, 5) => true,
            (1, 3) | (1, 4) | (2, 3) | (2, 4) => true,
            _ => false,
        }
    };
    for i in 0..6 {
        for j in 0..6 {
            ensure(w.poset.le(members[i], members[j]) == expect(i, j), || {
                format!("interval relation ({i},{j}) mismatch")
            })?;
        }
    }
    // Convexity.
    for &a in &members {
        for &b in &members {
            if w.poset.le(a, b) {
                for z in order::words_iter(&w.poset.interval(a, b)) {
                    ensure(distinct.contains(&z), || {
                        "the six-element subposet is not convex".into()
                    })?;
                }
            }
        }
    }
    // No greatest lower bound for the two middle elements.
    let lower: Vec<usize> = (0..w.idx.len())
        .filter(|&z| w.poset.le(z, members[3]) && w.poset.le(z, members[4]))
        .collect();
    let maximal: Vec<usize> = lower
        .iter()
        .copied()
        .filter(|&z| lower.iter().all(|&u| z == u || !w.poset.le(z, u)))
        .collect();
    ensure(maximal.len() == 2, || {
        format!("{} maximal lower bounds, expected 2", maximal.len())
    })?;
    Ok(vec![
        "worked cover has grid-incomparable codes 0.0.0.1 and 0.0.2.0".into(),
        "six-element convex subposet matches the rank-2 Bruhat order; no meet exists".into(),
    ])
}

fn check_prop_signact(w: &World) -> Result<Vec<String>, String> {
    // Worked examples.
    let ov = SignedPerm::signed_transposition;
    let t = SignedPerm::transposition;
    let x0 = w.x0();
    let a = act_lambda(ov(1, 8), x0, &w.idx).ok_or("ov(1,8) leaves the packings")?;
    ensure(a == act_lambda(t(2, 7), x0, &w.idx).unwrap(), || {
        "ov(1,8) x0 != (2,7) x0".into()
    })?;
    ensure(
        w.packing(a)
            == &packing_of(&[
                [1, 2, 7],
                [1, 3, 6],
                [1, 4, 5],
                [2, 3, 4],
                [2, 5, 6],
                [3, 5, 7],
                [4, 6, 7],
            ]),
        || "ov(1,8) x0 triple set mismatch".into(),
    )?;
    let b = act_lambda(ov(2, 7), x0, &w.idx).ok_or("ov(2,7) leaves the packings")?;
    ensure(b == act_lambda(t(1, 8), x0, &w.idx).unwrap(), || {
        "ov(2,7) x0 != (1,8) x0".into()
    })?;
    ensure(
        w.packing(b)
            == &packing_of(&[
                [2, 3, 5],
                [2, 4, 6],
                [2, 7, 8],
                [3, 4, 7],
                [3, 6, 8],
                [4, 5, 8],
                [5, 6, 7],
            ]),
        || "ov(2,7) x0 triple set mismatch".into(),
    )?;

    // The Fano rule agrees with the coset rule on every reflection.
    for (r, table) in &w.d8_reflections {
        for pid in 0..w.idx.len() {
            let via_fano = act_fano(*r, w.packing(pid));
            ensure(w.idx.id_of(&via_fano) == Some(table[pid]), || {
                format!("Fano and coset rules disagree at {r}, packing {pid}")
            })?;
        }
    }

    // Three-way rule: transpositions of the two non-axis labels of the
    // three lines through any label act identically, signed or not.
    for pid in 0..w.idx.len() {
        let p = w.packing(pid);
        for e in p.used_labels() {
            let pairs: Vec<(u8, u8)> = p
                .lines_through(e)
                .iter()
                .map(|t| {
                    let mut o = t.labels().into_iter().filter(|&x| x != e);
                    (o.next().unwrap(), o.next().unwrap())
                })
                .collect();
            let plain: HashSet<usize> = pairs
                .iter()
                .map(|&(a, b)| act_lambda(t(a.min(b), a.max(b)), pid, &w.idx).unwrap())
                .collect();
            ensure(plain.len() == 1, || {
                format!("plain three-way rule fails at packing {pid}, label {e}")
            })?;
            let signed: HashSet<usize> = pairs
                .iter()
                .map(|&(a, b)| act_lambda(ov(a.min(b), a.max(b)), pid, &w.idx).unwrap())
                .collect();
            ensure(signed.len() == 1, || {
                format!("signed three-way rule fails at packing {pid}, label {e}")
            })?;
        }
    }

    // Every signed transposition equals some unsigned one, and every
    // transposition equals a (possibly signed) one supported on 1..5.
    let plain_tables: Vec<&Vec<usize>> = w
        .d8_reflections
        .iter()
        .filter(|(r, _)| matches!(r, Reflection::Plain(_, _)))
        .map(|(_, t)| t)
        .collect();
    let low_tables: Vec<&Vec<usize>> = w
        .d8_reflections
        .iter()
        .filter(|(r, _)| match r {
            Reflection::Plain(i, j) | Reflection::Signed(i, j) => *i <= 5 && *j <= 5,
        })
        .map(|(_, t)| t)
        .collect();
    for (r, table) in &w.d8_reflections {
        match r {
            Reflection::Signed(_, _) => {
                for pid in 0..w.idx.len() {
                    ensure(plain_tables.iter().any(|t| t[pid] == table[pid]), || {
                        format!("{r} matches no transposition at packing {pid}")
                    })?;
                }
            }
            Reflection::Plain(_, _) => {
                for pid in 0..w.idx.len() {
                    ensure(low_tables.iter().any(|t| t[pid] == table[pid]), || {
                        format!("{r} matches no low-rank reflection at packing {pid}")
                    })?;
                }
            }
        }
    }
    // Double sign changes act on the coset image as elementwise
    // translations by the corresponding basis pair.
    for i in 1..=8u8 {
        for j in i + 1..=8 {
            let pair = Coset::from_labels(&[i, j]);
            let table = action_table(
                SignedPerm::pure_sign_change(gf2::label_bit(i) | gf2::label_bit(j)),
                &w.idx,
            );
            for pid in 0..w.idx.len() {
                let mut translated: Vec<Coset> =
                    w.idx.lambda[pid].iter().map(|c| c.add(pair)).collect();
                translated.sort_unstable();
                ensure(
                    translated.as_slice() == w.idx.lambda[table[pid]].as_slice(),
                    || format!("sign change ({i},{j}) is not the translation at {pid}"),
                )?;
            }
        }
    }
    Ok(vec![
        "worked signed actions reproduce the listed triple sets".into(),
        "Fano rule equals coset rule on all 56 reflections x 240 packings".into(),
        "three-way rule holds; signed resolves to plain; all resolve into rank 5".into(),
        "double sign changes act as elementwise translations".into(),
    ])
}

fn check_lemma_sevenact(w: &World) -> Result<Vec<String>, String> {
    let x0 = w.packing(w.x0());
    let quads = mu_quads(x0);
    let mask = |ls: &[u8]| ls.iter().fold(0u8, |m, &l| m | gf2::label_bit(l));
    let sorted = |mut v: Vec<u8>| {
        v.sort_unstable();
        v
    };
    ensure(
        transform_quads(SignedPerm::signed_transposition(1, 8), &quads)
            == sorted(vec![
                mask(&[1, 2, 7, 8]),
                mask(&[1, 3, 6, 8]),
                mask(&[1, 4, 5, 8]),
                mask(&[4, 6, 7, 8]),
                mask(&[3, 5, 7, 8]),
                mask(&[2, 5, 6, 8]),
                mask(&[2, 3, 4, 8]),
            ]),
        || "ov(1,8) subset transform mismatch".into(),
    )?;
    ensure(
        transform_quads(SignedPerm::signed_transposition(2, 7), &quads)
            == sorted(vec![
                mask(&[1, 2, 7, 8]),
                mask(&[1, 3, 6, 8]),
                mask(&[1, 4, 5, 8]),
                mask(&[1, 2, 4, 6]),
                mask(&[1, 2, 3, 5]),
                mask(&[1, 5, 6, 7]),
                mask(&[1, 3, 4, 7]),
            ]),
        || "ov(2,7) subset transform mismatch".into(),
    )?;

    // The subset action agrees with the coset action on every reflection.
    for (r, table) in &w.d8_reflections {
        let sp = r.to_signed_perm();
        for pid in 0..w.idx.len() {
            let via_mu = act_mu(sp, w.packing(pid))?;
            ensure(w.idx.id_of(&via_mu) == Some(table[pid]), || {
                format!("subset and coset rules disagree at {r}, packing {pid}")
            })?;
        }
    }
    // The full sign change fixes every subset family.
    for pid in 0..w.idx.len() {
        let q = mu_quads(w.packing(pid));
        ensure(transform_quads(SignedPerm::w0(), &q) == q, || {
            format!("the longest element moves the subsets of packing {pid}")
        })?;
    }
    let distinct: HashSet<Vec<u8>> = (0..w.idx.len())
        .map(|pid| mu_quads(w.packing(pid)))
        .collect();
    ensure(distinct.len() == 240, || "subset families repeat".into())?;
    Ok(vec![
        "worked subset transforms match; families are distinct".into(),
        "subset rule equals coset rule on all 56 reflections x 240 packings".into(),
        "the longest element fixes every family".into(),
    ])
}

fn check_thm_qppack(w: &World) -> Result<Vec<String>, String> {
    let mut details = Vec::new();
    for name in [
        GroupName::D8,
        GroupName::D7,
        GroupName::D6,
        GroupName::D5,
        GroupName::A7,
    ] {
        let report = qp_verify(name, &w.heights, &w.idx)?;
        ensure(report.qp1_trivial_hits == 0, || {
            format!("{}: reflections sometimes preserve height", name.as_str())
        })?;
        ensure(report.minima == vec![w.x0()], || {
            format!("{}: minima are {:?}", name.as_str(), report.minima)
        })?;
        ensure(report.maxima == vec![w.x1()], || {
            format!("{}: maxima are {:?}", name.as_str(), report.maxima)
        })?;
        let tables: Vec<Vec<usize>> = name
            .generators()
            .iter()
            .map(|&g| action_table(g, &w.idx))
            .collect();
        let orb = orbit(&tables, w.x0(), w.idx.len());
        ensure(orb.len() == 240, || {
            format!("{}: orbit has size {}", name.as_str(), orb.len())
        })?;
        details.push(format!(
            "{}: scaled, QP1 vacuous, QP2 holds, transitive, unique extrema",
            name.as_str()
        ));
    }
    Ok(details)
}

fn check_remark_d5stab(w: &World) -> Result<Vec<String>, String> {
    let elements = crate::weyl::enumerate_group(&GroupName::D5.generators());
    ensure(elements.len() == 1920, || {
        format!("rank-5 group has {} elements", elements.len())
    })?;
    let stab = stabilizer_scan(5, 0x1f, w.x0(), &w.idx);
    ensure(stab.len() == 8, || {
        format!("stabilizer has {} elements", stab.len())
    })?;
    for &a in &stab {
        ensure(a.compose(a) == SignedPerm::identity(), || {
            "stabilizer element has order > 2".into()
        })?;
        for &b in &stab {
            ensure(a.compose(b) == b.compose(a), || {
                "stabilizer is not abelian".into()
            })?;
        }
    }
    let g1 = SignedPerm::transposition(1, 2).compose(SignedPerm::transposition(3, 4));
    let g2 = SignedPerm::transposition(1, 3).compose(SignedPerm::transposition(2, 4));
    let g3 = SignedPerm::signed_transposition(1, 2).compose(SignedPerm::signed_transposition(3, 4));
    ensure(crate::weyl::enumerate_group(&[g1, g2, g3]) == stab, || {
        "stabilizer differs from the named generators' span".into()
    })?;
    Ok(vec![
        "rank-5 group has order 1920; the point stabilizer is elementary abelian of order 8".into(),
        "stabilizer equals the span of (12)(34), (13)(24), ov(12)ov(34)".into(),
    ])
}

fn check_prop_nonrec(w: &World) -> Result<Vec<String>, String> {
    // Parities are well defined and the worked plane has the stated data.
    for pid in 0..w.idx.len() {
        let p = w.packing(pid);
        for e in p.used_labels() {
            ensure(label_parity_well_defined(p, e), || {
                format!("label {e} of packing {pid} has ambiguous parity")
            })?;
        }
        ensure(order::combinatorial_height(p) == w.heights[pid], || {
            format!("formula height differs from geodesic height at {pid}")
        })?;
        ensure(w.heights_d7[pid] == w.heights[pid], || {
            format!("rank-7 geodesic differs at {pid}")
        })?;
    }
    let oct = packing_of(&[
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 7],
        [1, 5, 6],
        [2, 6, 7],
        [1, 3, 7],
    ]);
    let odd: Vec<u8> = oct
        .used_labels()
        .into_iter()
        .filter(|&e| label_parity_witness(&oct, e).0 == Parity::Odd)
        .collect();
    ensure(odd == vec![1, 3, 5, 7], || format!("odd labels {odd:?}"))?;
    ensure(order::combinatorial_height(&oct) == 4, || {
        "worked plane should have height 4".into()
    })?;
    let x0 = w.packing(w.x0());
    ensure(odd_label_count(x0) == 0, || {
        "minimal packing has an odd label".into()
    })?;
    let x1 = w.packing(w.x1());
    ensure(odd_label_count(x1) == 7, || {
        "maximal packing has an even label".into()
    })?;

    // Simple reflections change the height by one and touch one parity.
    for (gi, table) in w.s8_gen_tables.iter().enumerate() {
        let i = gi as u8 + 1;
        for pid in 0..w.idx.len() {
            let p = w.packing(pid);
            let q = w.packing(table[pid]);
            let dh = (w.heights[table[pid]] as i32 - w.heights[pid] as i32).abs();
            ensure(dh == 1, || format!("s_{i} moves height by {dh} at {pid}"))?;
            let swap = |x: u8| {
                if x == i {
                    i + 1
                } else if x == i + 1 {
                    i
                } else {
                    x
                }
            };
            let changed = p
                .used_labels()
                .into_iter()
                .filter(|&e| label_parity_witness(p, e).0 != label_parity_witness(q, swap(e)).0)
                .count();
            let expected = if p.basepoint() == i || p.basepoint() == i + 1 {
                0
            } else {
                1
            };
            ensure(changed == expected, || {
                format!("s_{i} changes {changed} parities at {pid}, expected {expected}")
            })?;
        }
    }

    // Orbit parity, reflection parity, sign-change parity.
    let alt_tables: Vec<Vec<usize>> = alternating_generators()
        .iter()
        .map(|&g| action_table(g, &w.idx))
        .collect();
    let even_orbit = orbit(&alt_tables, w.x0(), w.idx.len());
    ensure(even_orbit.len() == 120, || "even orbit is not 120".into())?;
    ensure(
        even_orbit.iter().all(|&pid| w.heights[pid] % 2 == 0),
        || "even orbit contains an odd height".into(),
    )?;
    for (r, table) in &w.d8_reflections {
        for pid in 0..w.idx.len() {
            ensure(w.heights[table[pid]] % 2 != w.heights[pid] % 2, || {
                format!("reflection {r} preserves parity at {pid}")
            })?;
        }
    }
    for mask in 0u16..=255 {
        let mask = mask as u8;
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let table = action_table(SignedPerm::pure_sign_change(mask), &w.idx);
        for pid in 0..w.idx.len() {
            ensure(w.heights[table[pid]] % 2 == w.heights[pid] % 2, || {
                format!("sign change {mask:08b} flips parity at {pid}")
            })?;
        }
    }

    // Duality under the order-reversing relabelling.
    let z0 = w.z0_table();
    for pid in 0..w.idx.len() {
        ensure(w.heights[pid] + w.heights[z0[pid]] == 14, || {
            format!("height duality fails at {pid}")
        })?;
        // Odd labels map to even labels of the image.
        let p = w.packing(pid);
        let q = w.packing(z0[pid]);
        for e in p.used_labels() {
            let pe = label_parity_witness(p, e).0;
            let qe = label_parity_witness(q, 9 - e).0;
            ensure(pe != qe, || {
                format!("label duality fails at {pid} label {e}")
            })?;
        }
    }
    for x in 0..w.idx.len() {
        for y in order::words_iter(&w.poset.up[x]) {
            ensure(w.poset.le(z0[y], z0[x]), || {
                format!("order reversal fails at ({x},{y})")
            })?;
        }
    }
    ensure(z0[w.x0()] == w.x1(), || {
        "duality does not swap the extremes".into()
    })?;
    Ok(vec![
        "parities well defined; formula, rank-7, and rank-8 heights agree on all 240".into(),
        "adjacent transpositions step height by 1 touching exactly one parity".into(),
        "even-height set is one orbit of the even subgroup; duality reverses the order".into(),
    ])
}

fn check_prop_7label(w: &World) -> Result<Vec<String>, String> {
    let family = enumerate_signed_fano7();
    ensure(family.len() == 240, || {
        format!("family has {} members", family.len())
    })?;
    let from_packings: HashSet<bridge::SignedFano7> = (0..w.idx.len())
        .map(|pid| to_signed_fano7(w.packing(pid)))
        .collect();
    ensure(from_packings.len() == 240, || "signed planes repeat".into())?;
    ensure(family.iter().all(|f| from_packings.contains(f)), || {
        "family member fails to come from a packing".into()
    })?;

    // Unique `p_a` decomposition.
    for f in &family {
        p_decomposition(f).map_err(|e| e.to_string())?;
    }

    // Round trips and the p_1 worked example.
    for pid in 0..w.idx.len() {
        let f = to_signed_fano7(w.packing(pid));
        ensure(
            &from_signed_fano7(&f).map_err(|e| e.to_string())? == w.packing(pid),
            || format!("signed-plane round trip moves packing {pid}"),
        )?;
    }
    let f0 = to_signed_fano7(w.packing(w.x0()));
    let f1 = to_signed_fano7(w.packing(w.x1()));
    ensure(p_op(&f0, 1) == f1, || {
        "p_1 of the all-positive plane mismatch".into()
    })?;

    // Rank-7 generators act on signed planes compatibly with the packings.
    for &g in &GroupName::D7.generators() {
        let table = action_table(g, &w.idx);
        for pid in 0..w.idx.len() {
            let lhs = act_signed_fano7(g, &to_signed_fano7(w.packing(pid)));
            let rhs = to_signed_fano7(w.packing(table[pid]));
            ensure(lhs == rhs, || format!("generator action mismatch at {pid}"))?;
        }
    }
    // Double sign changes act as `p` of the completing label.
    for pid in 0..w.idx.len() {
        let p = w.packing(pid);
        let f = to_signed_fano7(p);
        for &tri in f.plane().iter() {
            let [a, b, c] = tri.labels();
            let tab = SignedPerm::pure_sign_change(gf2::label_bit(a) | gf2::label_bit(b));
            ensure(act_signed_fano7(tab, &f) == p_op(&f, c), || {
                format!("double sign change rule fails at {pid}")
            })?;
        }
    }
    // Pure double sign changes on 1..7 track the packing action.
    for i in 1..=7u8 {
        for j in i + 1..=7 {
            let sp = SignedPerm::pure_sign_change(gf2::label_bit(i) | gf2::label_bit(j));
            let table = action_table(sp, &w.idx);
            for pid in 0..w.idx.len() {
                let lhs = act_signed_fano7(sp, &to_signed_fano7(w.packing(pid)));
                ensure(lhs == to_signed_fano7(w.packing(table[pid])), || {
                    format!("sign change ({i},{j}) mismatch at {pid}")
                })?;
            }
        }
    }
    // Coset equivalence is sign-blind plane equality.
    let classes: Vec<usize> = (0..w.idx.len()).map(|pid| mts_class(pid, &w.idx)).collect();
    let planes: Vec<[Triple; 7]> = (0..w.idx.len())
        .map(|pid| to_signed_fano7(w.packing(pid)).plane())
        .collect();
    for a in 0..w.idx.len() {
        for b in a + 1..w.idx.len() {
            ensure(
                (classes[a] == classes[b]) == (planes[a] == planes[b]),
                || format!("coset equivalence mismatch at ({a},{b})"),
            )?;
        }
    }
    Ok(vec![
        "the signed-plane family has 240 members bijective with the packings".into(),
        "sign-toggle decomposition is unique; generator actions commute with packing actions"
            .into(),
        "coset equivalence is exactly sign-blind plane equality".into(),
    ])
}

fn check_remark_pasch(w: &World) -> Result<Vec<String>, String> {
    // Round trips, parity, duality; eight sign patterns per support.
    let mut by_support: HashMap<[Triple; 4], HashSet<Vec<bool>>> = HashMap::new();
    let mut support_class: HashMap<[Triple; 4], usize> = HashMap::new();
    for pid in 0..w.idx.len() {
        let f = to_signed_fano7(w.packing(pid));
        let p = to_pasch6(&f);
        ensure(p.negative_count() % 2 == 0, || {
            format!("odd negative count at packing {pid}")
        })?;
        ensure(from_pasch6(&p).map_err(|e| e.to_string())? == f, || {
            format!("Pasch reconstruction fails at {pid}")
        })?;
        ensure(pasch_move_duality_holds(&p), || {
            format!("move duality fails at {pid}")
        })?;
        let support = p.edges.map(|(t, _)| t);
        let signs: Vec<bool> = p.edges.iter().map(|(_, n)| *n).collect();
        by_support.entry(support).or_default().insert(signs);
        let class = mts_class(pid, &w.idx);
        if let Some(&prev) = support_class.get(&support) {
            ensure(prev == class, || {
                "same Pasch support in two different coset classes".into()
            })?;
        }
        support_class.insert(support, class);
    }
    ensure(by_support.len() == 30, || {
        format!("{} Pasch supports", by_support.len())
    })?;
    ensure(by_support.values().all(|s| s.len() == 8), || {
        "some support has fewer than 8 sign patterns".into()
    })?;
    let classes: HashSet<usize> = support_class.values().copied().collect();
    ensure(classes.len() == 30, || {
        "supports do not separate the 30 coset classes".into()
    })?;

    // Worked figures.
    let f1 = to_signed_fano7(w.packing(w.x1()));
    let p1 = to_pasch6(&f1);
    let tr = Triple::new;
    ensure(
        p1.edges.to_vec()
            == vec![
                (tr(1, 3, 6), false),
                (tr(1, 4, 5), false),
                (tr(2, 3, 5), true),
                (tr(2, 4, 6), true),
            ],
        || "worked Pasch configuration mismatch".into(),
    )?;
    let moved = pasch_move(&p1);
    ensure(
        moved.edges.to_vec()
            == vec![
                (tr(1, 3, 5), true),
                (tr(1, 4, 6), true),
                (tr(2, 3, 6), false),
                (tr(2, 4, 5), false),
            ],
        || "worked Pasch move mismatch".into(),
    )?;

    // The three commuting involutions beyond rank 6.
    let z1 = SignedPerm::transposition(7, 8);
    let z2 = SignedPerm::signed_transposition(7, 8);
    let z3 = z1.compose(z2);
    let d6_tables: Vec<Vec<usize>> = GroupName::D6
        .generators()
        .iter()
        .map(|&g| action_table(g, &w.idx))
        .collect();
    for z in [z1, z2, z3] {
        let tz = action_table(z, &w.idx);
        for tg in &d6_tables {
            for pid in 0..w.idx.len() {
                ensure(tz[tg[pid]] == tg[tz[pid]], || {
                    "central element fails to commute with a rank-6 generator".into()
                })?;
            }
        }
    }
    let t2 = action_table(z2, &w.idx);
    let t3 = action_table(z3, &w.idx);
    let t1 = action_table(z1, &w.idx);
    for pid in 0..w.idx.len() {
        let p = to_pasch6(&to_signed_fano7(w.packing(pid)));
        // ov(7,8) performs the Pasch move.
        ensure(
            to_pasch6(&to_signed_fano7(w.packing(t2[pid]))) == pasch_move(&p),
            || format!("signed (7,8) is not the Pasch move at {pid}"),
        )?;
        // The product flips every sign.
        let flipped = bridge::SignedPasch6 {
            edges: p.edges.map(|(t, n)| (t, !n)),
        };
        ensure(
            to_pasch6(&to_signed_fano7(w.packing(t3[pid]))) == flipped,
            || format!("the sign-flip involution mismatches at {pid}"),
        )?;
        // Plain (7,8) steps the height by one.
        let dh = (w.heights[t1[pid]] as i32 - w.heights[pid] as i32).abs();
        ensure(dh == 1, || format!("(7,8) moves height by {dh} at {pid}"))?;
    }
    Ok(vec![
        "Pasch round trips, even signs, 8 patterns per support = the coset classes".into(),
        "worked configuration and move match; move duality holds on all 240".into(),
        "(7,8), its signed twin, and their product behave as the three central involutions".into(),
    ])
}

fn check_thm_faithful(w: &World, opts: &CheckOptions) -> Result<Vec<String>, String> {
    let stab8 = stabilizer_scan(8, 0xff, w.x0(), &w.idx);
    ensure(stab8.len() == 21504, || {
        format!("rank-8 stabilizer has {} elements", stab8.len())
    })?;
    let kernel8 = kernel_from_stabilizer(&stab8, &w.idx);
    ensure(
        kernel8 == vec![SignedPerm::identity(), SignedPerm::w0()],
        || "rank-8 kernel is not {1, w0}".into(),
    )?;
    for (n, domain, label) in [
        (8usize, 0x00u8, "A7"),
        (7, 0x7f, "D7"),
        (6, 0x3f, "D6"),
        (5, 0x1f, "D5"),
    ] {
        let stab = stabilizer_scan(n, domain, w.x0(), &w.idx);
        let kernel = kernel_from_stabilizer(&stab, &w.idx);
        ensure(kernel == vec![SignedPerm::identity()], || {
            format!("{label} kernel is nontrivial")
        })?;
    }
    let mut details = vec![
        "rank-8 kernel is the centre {1, w0}; all proper restrictions are faithful".into(),
        format!("point stabilizer has {} elements", stab8.len()),
    ];
    if opts.deep {
        let full = kernel_full_scan(GroupName::D8, &w.idx);
        ensure(full == kernel8, || {
            "full-group scan disagrees with the stabilizer filter".into()
        })?;
        details.push("deep: full 5,160,960-element scan reproduces the kernel".into());
    }
    Ok(details)
}

fn check_remark_topology(w: &World) -> Result<Vec<String>, String> {
    let intervals = eulerian_check(&w.poset)?;
    // Double construction: the order generated by the plain transpositions
    // alone equals the order generated by all 56 reflections.
    let plain_tables: Vec<Vec<usize>> = w
        .d8_reflections
        .iter()
        .filter(|(r, _)| matches!(r, Reflection::Plain(_, _)))
        .map(|(_, t)| t.clone())
        .collect();
    ensure(plain_tables.len() == 28, || {
        "expected 28 transpositions".into()
    })?;
    let plain_poset = order::build_poset(&w.heights, &plain_tables)?;
    ensure(plain_poset.up == w.poset.up, || {
        "transposition-only order differs from the full reflection order".into()
    })?;
    ensure(plain_poset.covers == w.poset.covers, || {
        "transposition-only covers differ from the full covers".into()
    })?;
    Ok(vec![
        format!(
            "{} nontrivial intervals balance odd and even ranks; Möbius alternates",
            intervals
        ),
        format!(
            "{} covering relations, all with height gap 1; transposition-only construction agrees",
            w.poset.covers.len()
        ),
    ])
}

fn check_remark_schmidt(w: &World) -> Result<Vec<String>, String> {
    check_srg(&separation_graph_v4(), 35, 18, 9, 9)?;
    let even: Vec<usize> = (0..w.idx.len())
        .filter(|&x| w.heights[x] % 2 == 0)
        .collect();
    ensure(even.len() == 120, || "even-height class is not 120".into())?;
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
    check_srg(&adj, 120, 63, 30, 36)?;
    // Spread disjointness within the orbit matches root-set disjointness.
    for (ia, &a) in even.iter().enumerate() {
        for (ib, &b) in even.iter().enumerate().skip(ia + 1) {
            let roots_disjoint = w.ortho_of[a].iter().all(|r| !w.ortho_of[b].contains(r));
            ensure(adj[ia][ib] == roots_disjoint, || {
                format!("orbit adjacency and root disjointness disagree at ({a},{b})")
            })?;
        }
    }
    let (image_order, kernel) = parity_image(&w.heights, &w.idx)?;
    ensure(image_order == 1_290_240, || {
        format!("parity image order is {image_order}")
    })?;
    ensure(kernel.len() == 2, || {
        "restricted kernel is not {1, w0}".into()
    })?;
    Ok(vec![
        "separation graph is SRG(35,18,9,9); orbit graph is SRG(120,63,30,36)".into(),
        "orbit adjacency equals orthogonal-set disjointness".into(),
        "parity-preserving action has image order 1,290,240 = 32 x 8!".into(),
    ])
}

fn check_remark_residues(w: &World) -> Result<Vec<String>, String> {
    let universe = w.psi_prime.psi_prime();
    for pid in 0..w.idx.len() {
        let h = w.heights[pid] as usize;
        let first = w.rs.residues(&w.ortho_of[pid], &w.rs.psi);
        ensure(first.len() == h, || {
            format!(
                "first-model residue count {} != height {h} at {pid}",
                first.len()
            )
        })?;
        let p = w.packing(pid);
        let rprime = w.psi_prime.orthoset_of_packing(p);
        let second = w.rs.residues(&rprime, &universe);
        ensure(second.len() == h, || {
            format!(
                "second-model residue count {} != height {h} at {pid}",
                second.len()
            )
        })?;
        // The second model splits into basepoints above and dominating
        // non-collinear triples, exactly as read off the plane.
        let mut got_bps: Vec<u8> = second
            .iter()
            .filter_map(|&r| w.psi_prime.basepoint_of(r))
            .collect();
        got_bps.sort_unstable();
        let mut got_triples: Vec<Triple> = second
            .iter()
            .filter_map(|&r| w.psi_prime.spread_of(r))
            .collect();
        got_triples.sort_unstable();
        let (bps, triples) = combinatorial_psi_prime_residues(p);
        ensure(got_bps == bps, || {
            format!("basepoint residues mismatch at {pid}")
        })?;
        ensure(got_triples == triples, || {
            format!("triple residues mismatch at {pid}")
        })?;
    }
    // Worked endpoints.
    let (bps, triples) = combinatorial_psi_prime_residues(w.packing(w.x1()));
    ensure(bps == vec![2, 3, 4, 5, 6, 7, 8], || {
        "maximal basepoint residues".into()
    })?;
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
    ensure(triples == expect, || {
        format!("maximal triple residues {triples:?}")
    })?;
    let (bps0, triples0) = combinatorial_psi_prime_residues(w.packing(w.x0()));
    ensure(bps0.is_empty() && triples0.is_empty(), || {
        "minimal packing should have no residues".into()
    })?;
    Ok(vec![
        "both residue counts equal the height on all 240 packings".into(),
        "second-model residues match the label rule elementwise; endpoints byte-exact".into(),
    ])
}

fn check_remark_otherpsi(w: &World) -> Result<Vec<String>, String> {
    let pp = &w.psi_prime;
    ensure(pp.phi21.len() == 56 && pp.phi23.len() == 8, || {
        "layer sizes are not 56 and 8".into()
    })?;
    let phi21 = &pp.phi21;
    let poset = crate::e8::RelPoset::from_le(56, |i, j| w.rs.le(phi21[i], phi21[j]));
    poset.is_distributive_lattice()?;
    let grid = crate::e8::grid_ideal_lattice();
    let isos = poset.count_isomorphisms(&grid, 3);
    ensure(isos == 1, || {
        format!("{isos} isomorphisms onto the ideal lattice")
    })?;
    for &a in &pp.phi23 {
        for &b in &pp.phi23 {
            ensure(w.rs.le(a, b) || w.rs.le(b, a), || {
                "chain is not total".into()
            })?;
        }
    }
    ensure(pp.basepoint_of(w.rs.theta) == Some(8), || {
        "highest root should mark the basepoint 8".into()
    })?;
    ensure(
        pp.spread_of(w.rs.simple[1]) == Some(Triple::new(1, 2, 3)),
        || "branch root should mark the spread 123".into(),
    )?;
    let universe = pp.psi_prime();
    let maximal = w.rs.maximal_orthogonal_subsets(&universe);
    ensure(maximal.len() == 240, || {
        format!("{} maximal orthogonal subsets", maximal.len())
    })?;
    let mut seen = HashSet::new();
    for set in &maximal {
        ensure(set.len() == 8, || "subset of the wrong size".into())?;
        let chain_members = set.iter().filter(|r| pp.phi23.contains(r)).count();
        ensure(chain_members == 1, || "composition is not 7 + 1".into())?;
        seen.insert(set.clone());
    }
    for pid in 0..w.idx.len() {
        let set = pp.orthoset_of_packing(w.packing(pid)).to_vec();
        ensure(seen.remove(&set), || {
            format!("packing {pid} does not give a fresh maximal subset")
        })?;
    }
    ensure(seen.is_empty(), || {
        "maximal subsets remain unmatched".into()
    })?;
    Ok(vec![
        "spread layer is a distributive lattice, uniquely the 3x5 ideal lattice".into(),
        "basepoint layer is an 8-chain topped by the highest root".into(),
        "240 maximal orthogonal subsets of composition 7+1 biject with the packings".into(),
    ])
}

fn check_remark_hhz(_w: &World) -> Result<Vec<String>, String> {
    let report = gf2::alt_model_check();
    ensure(report.nonzero_singular == 35, || {
        format!("{} nonzero singular matrices", report.nonzero_singular)
    })?;
    ensure(report.singular_3subspaces == 30, || {
        format!("{} singular 3-subspaces", report.singular_3subspaces)
    })?;
    Ok(vec![
        "35 nonzero singular skew matrices; 30 all-singular 3-subspaces".into(),
    ])
}

fn check_remark_games(w: &World) -> Result<Vec<String>, String> {
    let table = game::solve();
    let mut found = game::kernel(&table);
    found.sort_unstable();
    let mut figure = game::FIGURE_KERNEL.to_vec();
    figure.sort_unstable();
    ensure(found == figure, || {
        "solved kernel differs from the figure".into()
    })?;

    let kernel_roots = w.kernel_roots();
    let mut from_roots: Vec<GamePos> = kernel_roots
        .iter()
        .map(|&r| game::root_pos(&w.rs, r).expect("kernel roots are weights"))
        .collect();
    from_roots.sort_unstable();
    ensure(from_roots == found, || {
        "kernel differs from the minimal orthogonal set".into()
    })?;

    let mut n_positions = 0;
    for mask in 0u8..128 {
        let pos = GamePos(mask);
        if !pos.is_legal() {
            continue;
        }
        ensure(
            game::root_pos(&w.rs, game::pos_root(&w.rs, pos)) == Some(pos),
            || format!("weight correspondence fails at {pos}"),
        )?;
        for mv in game::legal_moves(pos) {
            ensure(
                game::move_delta_is_positive_rank7_root(&w.rs, pos, mv),
                || format!("move {mv} from {pos} is not a positive rank-7 step"),
            )?;
        }
        match table[mask as usize].unwrap() {
            game::Outcome::NextWins => {
                n_positions += 1;
                let mv = game::strategy_move(&w.rs, &kernel_roots, pos)
                    .map_err(|e| format!("{e} at {pos}"))?;
                let after = game::apply(pos, mv).unwrap();
                ensure(
                    table[after.0 as usize] == Some(game::Outcome::PreviousWins),
                    || format!("strategy move from {pos} misses the kernel"),
                )?;
            }
            game::Outcome::PreviousWins => {
                ensure(
                    game::strategy_move(&w.rs, &kernel_roots, pos).is_err(),
                    || format!("a kernel position {pos} claims a winning move"),
                )?;
                for mv in game::legal_moves(pos) {
                    let after = game::apply(pos, mv).unwrap();
                    ensure(!found.contains(&after), || {
                        format!("kernel positions reach the kernel: {pos} {mv}")
                    })?;
                }
            }
        }
    }
    ensure(n_positions == 56, || {
        format!("{n_positions} winnable positions")
    })?;

    // Engine self-play from every start stays within 14 plies and agrees
    // with the solver.
    for mask in 0u8..128 {
        let start = GamePos(mask);
        if !start.is_legal() {
            continue;
        }
        let mut pos = start;
        let mut plies = 0;
        while let Some(mv) = game::engine_move(&w.rs, &kernel_roots, pos) {
            pos = game::apply(pos, mv).unwrap();
            plies += 1;
            ensure(plies <= 14, || format!("self-play runs long from {start}"))?;
        }
        let first_wins = plies % 2 == 1;
        ensure(
            first_wins == (table[start.0 as usize] == Some(game::Outcome::NextWins)),
            || format!("self-play disagrees with the solver at {start}"),
        )?;
    }
    Ok(vec![
        "solved kernel equals the figure and the minimal orthogonal set".into(),
        "56 winnable positions all have residue moves; kernel is move-closed".into(),
        "every move adds a positive rank-7 root; self-play ends within 14 plies".into(),
    ])
}

fn check_remark_ksp(w: &World) -> Result<Vec<String>, String> {
    for pid in 0..w.idx.len() {
        let schedule = pg32::kirkman(w.packing(pid), &w.heptads);
        ensure(schedule.days.len() == 7, || "wrong day count".into())?;
        pg32::verify_schedule(&schedule).map_err(|e| format!("packing {pid}: {e}"))?;
    }
    Ok(vec![
        "all 240 schedules cover each of the 105 pairs exactly once".into(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_ids_are_unique_and_parse() {
        let mut seen = HashSet::new();
        for c in CheckId::ALL {
            assert!(seen.insert(c.id()));
            assert_eq!(CheckId::parse(c.id()), Some(c));
        }
        assert_eq!(CheckId::ALL.len(), 21);
        assert_eq!(CheckId::parse("bogus"), None);
    }

    #[test]
    fn fast_checks_pass() {
        let w = World::get();
        let opts = CheckOptions::default();
        for id in [CheckId::RemarkHhz, CheckId::LemmaX0, CheckId::RemarkKsp] {
            let report = run_check(id, w, &opts);
            assert!(report.passed, "{}: {:?}", report.id, report.failure);
        }
    }
}
