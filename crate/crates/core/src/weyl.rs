//! Signed permutations of {1..8} and their actions on the packings.
//!
//! The type-D Weyl groups act on the packings by three independent rules:
//!
//! * `act_lambda` — signed place permutation of the eight-coset image: the
//!   permutation part permutes coordinates and each sign change adds a basis
//!   vector (a translation of the affine space);
//! * `act_fano` — purely combinatorial, defined for reflections: unsigned
//!   transpositions relabel the Fano plane, and a signed transposition is
//!   resolved to an unsigned one through the basepoint and the triples
//!   through the relevant label;
//! * `act_mu` — through the seven signed 4-subsets of a packing, where a
//!   negated subset is rewritten as its complement.
//!
//! The three rules agreeing on every reflection and every packing is one of
//! the catalogue checks. Stabilizers and kernels are computed by a direct
//! scan over the sign-times-permutation decomposition of the group, which
//! avoids enumerating the 5,160,960 elements of the largest group (a full
//! scan is still available as an oracle).

use std::collections::HashSet;
use std::fmt;

use crate::gf2::{label_bit, Coset};
use crate::pg32::{Packing, PackingIndex, Triple};

/// A signed permutation of {1..8}: `target[i-1]` is the image label of `i`,
/// and bit `i-1` of `neg` says the sign flips at source `i`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    pub target: [u8; 8],
    pub neg: u8,
}

pub const IDENTITY_TARGETS: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

impl SignedPerm {
    pub fn identity() -> SignedPerm {
        SignedPerm {
            target: IDENTITY_TARGETS,
            neg: 0,
        }
    }

    /// The longest element: all eight signs change.
    pub fn w0() -> SignedPerm {
        SignedPerm {
            target: IDENTITY_TARGETS,
            neg: 0xff,
        }
    }

    pub fn transposition(i: u8, j: u8) -> SignedPerm {
        let mut target = IDENTITY_TARGETS;
        target[i as usize - 1] = j;
        target[j as usize - 1] = i;
        SignedPerm { target, neg: 0 }
    }

    pub fn signed_transposition(i: u8, j: u8) -> SignedPerm {
        let mut sp = SignedPerm::transposition(i, j);
        sp.neg = label_bit(i) | label_bit(j);
        sp
    }

    /// Pure sign change on the labels of `mask`.
    pub fn pure_sign_change(mask: u8) -> SignedPerm {
        SignedPerm {
            target: IDENTITY_TARGETS,
            neg: mask,
        }
    }

    pub fn from_cycle(cycle: &[u8]) -> SignedPerm {
        let mut target = IDENTITY_TARGETS;
        for k in 0..cycle.len() {
            let from = cycle[k] as usize - 1;
            let to = cycle[(k + 1) % cycle.len()];
            target[from] = to;
        }
        SignedPerm { target, neg: 0 }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: SignedPerm) -> SignedPerm {
        let mut target = [0u8; 8];
        let mut neg = 0u8;
        for i in 0..8 {
            let mid = other.target[i];
            target[i] = self.target[mid as usize - 1];
            let flip = (other.neg >> i & 1) ^ (self.neg >> (mid - 1) & 1);
            neg |= flip << i;
        }
        SignedPerm { target, neg }
    }

    pub fn inverse(self) -> SignedPerm {
        let mut target = [0u8; 8];
        let mut neg = 0u8;
        for i in 0..8 {
            let t = self.target[i] as usize - 1;
            target[t] = i as u8 + 1;
            neg |= (self.neg >> i & 1) << t;
        }
        SignedPerm { target, neg }
    }

    /// Even number of sign changes.
    pub fn in_type_d(self) -> bool {
        self.neg.count_ones() % 2 == 0
    }

    pub fn is_pure_sign_change(self) -> bool {
        self.target == IDENTITY_TARGETS
    }

    /// Parity of the underlying permutation (true = even).
    pub fn perm_is_even(self) -> bool {
        let mut inv = 0;
        for i in 0..8 {
            for j in i + 1..8 {
                if self.target[i] > self.target[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    }

    fn apply_perm_mask(self, mask: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..8 {
            if mask >> i & 1 == 1 {
                out |= label_bit(self.target[i]);
            }
        }
        out
    }

    /// Action on a coset: fold the sign mask into the representative, then
    /// permute coordinates. Sign changes act as translations.
    pub fn apply_coset(self, c: Coset) -> Coset {
        let m = c.rep().0 ^ self.neg;
        Coset::canonical(crate::gf2::BitVec8(self.apply_perm_mask(m)))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..8 {
            if i > 0 {
                write!(f, " ")?;
            }
            if self.neg >> i & 1 == 1 {
                write!(f, "-{}", self.target[i])?;
            } else {
                write!(f, "{}", self.target[i])?;
            }
        }
        write!(f, "]")
    }
}

/// A reflection of the largest signed-permutation group: a transposition,
/// possibly with both signs changed.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Reflection {
    Plain(u8, u8),
    Signed(u8, u8),
}

impl Reflection {
    pub fn to_signed_perm(self) -> SignedPerm {
        match self {
            Reflection::Plain(i, j) => SignedPerm::transposition(i, j),
            Reflection::Signed(i, j) => SignedPerm::signed_transposition(i, j),
        }
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reflection::Plain(i, j) => write!(f, "({i},{j})"),
            Reflection::Signed(i, j) => write!(f, "ov({i},{j})"),
        }
    }
}

/// Action through the coset image: transform the eight cosets and look the
/// result up. Returns `None` if the image is not a packing, which the
/// catalogue checks rule out for type-D elements.
pub fn act_lambda(w: SignedPerm, pid: usize, idx: &PackingIndex) -> Option<usize> {
    let mut image: Vec<Coset> = idx.lambda[pid].iter().map(|&c| w.apply_coset(c)).collect();
    image.sort_unstable();
    let image: [Coset; 8] = image.try_into().unwrap();
    idx.id_by_lambda(&image)
}

/// Action by the Fano-plane rules. Unsigned transpositions relabel; a
/// signed transposition through the basepoint acts as the unsigned
/// transposition of the other two labels on any triple through the moved
/// label, and a signed transposition inside a triple acts as the unsigned
/// transposition of the basepoint with the triple's third label.
pub fn act_fano(r: Reflection, p: &Packing) -> Packing {
    let transpose_map = |i: u8, j: u8| {
        let mut map = IDENTITY_TARGETS;
        map[i as usize - 1] = j;
        map[j as usize - 1] = i;
        map
    };
    match r {
        Reflection::Plain(i, j) => p.relabel(&transpose_map(i, j)),
        Reflection::Signed(i, j) => {
            let l = p.basepoint();
            if l == i || l == j {
                let e = if l == i { j } else { i };
                let t = p.lines_through(e)[0];
                let others: Vec<u8> = t.labels().into_iter().filter(|&x| x != e).collect();
                p.relabel(&transpose_map(others[0], others[1]))
            } else {
                let t = p.line_through(i, j).expect("two used labels lie on a line");
                let e = t.labels().into_iter().find(|&x| x != i && x != j).unwrap();
                p.relabel(&transpose_map(l, e))
            }
        }
    }
}

/// The positive-convention 4-subsets of a packing: each triple joined with
/// the basepoint.
pub fn mu_quads(p: &Packing) -> Vec<u8> {
    let l = label_bit(p.basepoint());
    let mut quads: Vec<u8> = p.triples().iter().map(|t| t.mask() | l).collect();
    quads.sort_unstable();
    quads
}

/// Transform signed 4-subsets and renormalize to the positive convention:
/// a subset picking up a minus sign is replaced by its complement.
pub fn transform_quads(w: SignedPerm, quads: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = quads
        .iter()
        .map(|&q| {
            let flips = (q & w.neg).count_ones();
            let img = w.apply_perm_mask(q);
            if flips % 2 == 1 {
                !img
            } else {
                img
            }
        })
        .collect();
    out.sort_unstable();
    out
}

/// Action through the signed 4-subsets: transform, renormalize, read back.
pub fn act_mu(w: SignedPerm, p: &Packing) -> Result<Packing, String> {
    let quads = transform_quads(w, &mu_quads(p));
    let common = quads.iter().fold(0xffu8, |m, &q| m & q);
    if common.count_ones() != 1 {
        return Err(format!(
            "transformed subsets share {} labels, expected 1",
            common.count_ones()
        ));
    }
    let triples: Vec<Triple> = quads
        .iter()
        .map(|&q| Triple::from_mask(q & !common))
        .collect();
    Packing::from_triples(&triples).map_err(|e| e.to_string())
}

/// The groups acting on the packings, named by Coxeter type.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GroupName {
    A7,
    D5,
    D6,
    D7,
    D8,
    D6Plus2A1,
}

impl GroupName {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupName::A7 => "A7",
            GroupName::D5 => "D5",
            GroupName::D6 => "D6",
            GroupName::D7 => "D7",
            GroupName::D8 => "D8",
            GroupName::D6Plus2A1 => "D6+2A1",
        }
    }

    /// Coxeter generators as signed permutations: the adjacent
    /// transpositions up to the rank, together with the signed
    /// transposition of 1,2 for the type-D groups. The last variant adds
    /// the commuting factor generated by (7,8) and its signed twin.
    pub fn generators(self) -> Vec<SignedPerm> {
        let t = |i: u8| SignedPerm::transposition(i, i + 1);
        let ov12 = SignedPerm::signed_transposition(1, 2);
        match self {
            GroupName::A7 => (1..=7).map(t).collect(),
            GroupName::D8 => (1..=7).map(t).chain([ov12]).collect(),
            GroupName::D7 => (1..=6).map(t).chain([ov12]).collect(),
            GroupName::D6 => (1..=5).map(t).chain([ov12]).collect(),
            GroupName::D5 => (1..=4).map(t).chain([ov12]).collect(),
            GroupName::D6Plus2A1 => (1..=5)
                .map(t)
                .chain([ov12, t(7), SignedPerm::signed_transposition(7, 8)])
                .collect(),
        }
    }

    /// The reflections of the group.
    pub fn reflections(self) -> Vec<Reflection> {
        let pairs = |n: u8| {
            let mut out = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push((i, j));
                }
            }
            out
        };
        match self {
            GroupName::A7 => pairs(8)
                .into_iter()
                .map(|(i, j)| Reflection::Plain(i, j))
                .collect(),
            GroupName::D8 | GroupName::D7 | GroupName::D6 | GroupName::D5 => {
                let n = match self {
                    GroupName::D8 => 8,
                    GroupName::D7 => 7,
                    GroupName::D6 => 6,
                    _ => 5,
                };
                let mut out: Vec<Reflection> = pairs(n)
                    .into_iter()
                    .map(|(i, j)| Reflection::Plain(i, j))
                    .collect();
                out.extend(pairs(n).into_iter().map(|(i, j)| Reflection::Signed(i, j)));
                out
            }
            GroupName::D6Plus2A1 => {
                let mut out = GroupName::D6.reflections();
                out.push(Reflection::Plain(7, 8));
                out.push(Reflection::Signed(7, 8));
                out
            }
        }
    }

    pub fn order(self) -> u64 {
        fn fact(n: u64) -> u64 {
            (1..=n).product()
        }
        match self {
            GroupName::A7 => fact(8),
            GroupName::D5 => (1 << 4) * fact(5),
            GroupName::D6 => (1 << 5) * fact(6),
            GroupName::D7 => (1 << 6) * fact(7),
            GroupName::D8 => (1 << 7) * fact(8),
            GroupName::D6Plus2A1 => (1 << 5) * fact(6) * 4,
        }
    }
}

/// Generators of the even subgroup of the relabelling action.
pub fn alternating_generators() -> Vec<SignedPerm> {
    (3..=8)
        .map(|k| SignedPerm::from_cycle(&[1, 2, k]))
        .collect()
}

/// Permutation table of an element on all packings.
pub fn action_table(w: SignedPerm, idx: &PackingIndex) -> Vec<usize> {
    (0..idx.len())
        .map(|pid| act_lambda(w, pid, idx).expect("type-D action closes on the packings"))
        .collect()
}

/// Orbit of a packing under generator tables.
pub fn orbit(tables: &[Vec<usize>], start: usize, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = vec![start];
    let mut out = vec![start];
    while let Some(x) = queue.pop() {
        for table in tables {
            let y = table[x];
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Closure of a generating set into the full element list (for the small
/// groups).
pub fn enumerate_group(gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let mut seen: HashSet<SignedPerm> = HashSet::new();
    let mut queue = vec![SignedPerm::identity()];
    seen.insert(SignedPerm::identity());
    while let Some(w) = queue.pop() {
        for &g in gens {
            let next = g.compose(w);
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    let mut out: Vec<SignedPerm> = seen.into_iter().collect();
    out.sort_unstable_by_key(|w| (w.target, w.neg));
    out
}

pub(crate) fn all_permutations(n: usize) -> Vec<[u8; 8]> {
    fn rec(
        n: usize,
        cur: &mut [u8; 8],
        used: &mut [bool; 9],
        depth: usize,
        out: &mut Vec<[u8; 8]>,
    ) {
        if depth == n {
            out.push(*cur);
            return;
        }
        for v in 1..=n as u8 {
            if !used[v as usize] {
                used[v as usize] = true;
                cur[depth] = v;
                rec(n, cur, used, depth + 1, out);
                used[v as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = IDENTITY_TARGETS;
    rec(n, &mut cur, &mut [false; 9], 0, &mut out);
    out
}

/// All elements of the signed-permutation group with permutation part in
/// S_n (fixing the higher labels) and signs inside `sign_domain` that fix
/// the packing `pid`. Works by scanning the permutation part and solving
/// for the translation: an element fixes the packing iff the permuted
/// coset image is a translate of the original by the sign vector.
pub fn stabilizer_scan(
    perm_n: usize,
    sign_domain: u8,
    pid: usize,
    idx: &PackingIndex,
) -> Vec<SignedPerm> {
    let lambda = &idx.lambda[pid];
    let mut out = Vec::new();
    for target in all_permutations(perm_n) {
        let sigma = SignedPerm { target, neg: 0 };
        let mut permuted: Vec<Coset> = lambda.iter().map(|&c| sigma.apply_coset(c)).collect();
        permuted.sort_unstable();
        // Candidate translations: the first permuted coset must land on
        // some member of the original set.
        let mut candidates: Vec<Coset> = lambda.iter().map(|&c| permuted[0].add(c)).collect();
        candidates.sort_unstable();
        candidates.dedup();
        for v in candidates {
            let mut translated: Vec<Coset> = permuted.iter().map(|&c| c.add(v)).collect();
            translated.sort_unstable();
            if translated.as_slice() != lambda.as_slice() {
                continue;
            }
            // Sign masks realizing the translation by v: the representative
            // and its complement.
            let rep = v.rep().0;
            for n_mask in [rep, !rep] {
                if n_mask & !sign_domain == 0 && n_mask.count_ones() % 2 == 0 {
                    out.push(SignedPerm {
                        target,
                        neg: n_mask,
                    });
                }
            }
        }
    }
    out.sort_unstable_by_key(|w| (w.target, w.neg));
    out
}

/// Filter a stabilizer for the elements acting trivially on every packing.
/// The kernel of the action is contained in every point stabilizer, so
/// scanning the stabilizer suffices.
pub fn kernel_from_stabilizer(stab: &[SignedPerm], idx: &PackingIndex) -> Vec<SignedPerm> {
    stab.iter()
        .copied()
        .filter(|&w| (0..idx.len()).all(|pid| act_lambda(w, pid, idx) == Some(pid)))
        .collect()
}

/// Oracle: scan every element of the named group (not just a stabilizer)
/// for trivial action. Costly for the rank-8 group; kept for cross-checks.
pub fn kernel_full_scan(name: GroupName, idx: &PackingIndex) -> Vec<SignedPerm> {
    let (perm_n, sign_domain) = match name {
        GroupName::A7 => (8, 0x00),
        GroupName::D5 => (5, 0x1f),
        GroupName::D6 => (6, 0x3f),
        GroupName::D7 => (7, 0x7f),
        GroupName::D8 => (8, 0xff),
        GroupName::D6Plus2A1 => unimplemented!("not a plain sign-times-permutation box"),
    };
    let mut out = Vec::new();
    for target in all_permutations(perm_n) {
        for neg in 0u16..=255 {
            let neg = neg as u8;
            if neg & !sign_domain != 0 || neg.count_ones() % 2 != 0 {
                continue;
            }
            let w = SignedPerm { target, neg };
            if (0..idx.len()).all(|pid| act_lambda(w, pid, idx) == Some(pid)) {
                out.push(w);
            }
        }
    }
    out.sort_unstable_by_key(|w| (w.target, w.neg));
    out
}

/// Details of a quasiparabolic verification.
pub struct QpReport {
    pub group: GroupName,
    pub qp1_trivial_hits: usize,
    pub minima: Vec<usize>,
    pub maxima: Vec<usize>,
}

/// Verify scaledness and both quasiparabolic axioms for the named group
/// against the height function, and locate the extremal packings.
pub fn qp_verify(name: GroupName, heights: &[u8], idx: &PackingIndex) -> Result<QpReport, String> {
    let gen_tables: Vec<Vec<usize>> = name
        .generators()
        .iter()
        .map(|&g| action_table(g, idx))
        .collect();
    let refl_tables: Vec<Vec<usize>> = name
        .reflections()
        .iter()
        .map(|r| action_table(r.to_signed_perm(), idx))
        .collect();
    let n = idx.len();

    for (g, table) in gen_tables.iter().enumerate() {
        for x in 0..n {
            let dh = (heights[table[x]] as i32 - heights[x] as i32).abs();
            if dh > 1 {
                return Err(format!(
                    "{}: generator {} moves packing {} by height {}",
                    name.as_str(),
                    g,
                    x,
                    dh
                ));
            }
        }
    }

    let mut qp1_trivial_hits = 0;
    for table in &refl_tables {
        for x in 0..n {
            let rx = table[x];
            if heights[rx] == heights[x] {
                qp1_trivial_hits += 1;
                if rx != x {
                    return Err(format!("{}: QP1 fails at packing {}", name.as_str(), x));
                }
            }
        }
    }

    for table in &refl_tables {
        for x in 0..n {
            let rx = table[x];
            if heights[rx] <= heights[x] {
                continue;
            }
            for gt in &gen_tables {
                let sx = gt[x];
                let srx = gt[rx];
                if heights[srx] < heights[sx] && rx != sx {
                    return Err(format!("{}: QP2 fails at packing {}", name.as_str(), x));
                }
            }
        }
    }

    let minima: Vec<usize> = (0..n)
        .filter(|&x| gen_tables.iter().all(|t| heights[t[x]] >= heights[x]))
        .collect();
    let maxima: Vec<usize> = (0..n)
        .filter(|&x| gen_tables.iter().all(|t| heights[t[x]] <= heights[x]))
        .collect();

    Ok(QpReport {
        group: name,
        qp1_trivial_hits,
        minima,
        maxima,
    })
}

/// The parity-preserving subgroup (even permutation part, any even sign
/// mask) acting on the even-height orbit: returns (image order, kernel).
pub fn parity_image(heights: &[u8], idx: &PackingIndex) -> Result<(u64, Vec<SignedPerm>), String> {
    let stab = stabilizer_scan(8, 0xff, idx.x0(), idx);
    if stab.len() != 21504 {
        return Err(format!(
            "stabilizer scan found {} elements, expected 21504",
            stab.len()
        ));
    }
    if let Some(w) = stab.iter().find(|w| !w.perm_is_even()) {
        return Err(format!("stabilizer contains an odd permutation part: {w}"));
    }
    let even_orbit: Vec<usize> = (0..idx.len()).filter(|&x| heights[x] % 2 == 0).collect();
    if even_orbit.len() != 120 {
        return Err(format!(
            "{} even-height packings, expected 120",
            even_orbit.len()
        ));
    }
    let kernel: Vec<SignedPerm> = stab
        .into_iter()
        .filter(|&w| even_orbit.iter().all(|&x| act_lambda(w, x, idx) == Some(x)))
        .collect();
    let subgroup_order = GroupName::D8.order() / 2;
    Ok((subgroup_order / kernel.len() as u64, kernel))
}
