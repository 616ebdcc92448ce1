//! Lehmer codes, heights, and the graded order on the packings.
//!
//! The height of a packing is computed three independent ways and required
//! to agree: geodesic word length from the minimal packing in the Schreier
//! graph of the adjacent transpositions (also re-run with the rank-7
//! signed generators), an odd-label count plus basepoint offset read off
//! the Fano plane, and — in the root-system modules — residue counts. The
//! order is generated by the height-increasing reflection moves; its
//! gradedness is *verified*, not assumed, by building the closure twice.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::pg32::{Packing, PackingIndex, Triple};
use crate::weyl::{all_permutations, SignedPerm};

/// A permutation of {1..8} in one-line notation: `0[i-1] = w(i)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm8(pub [u8; 8]);

impl Perm8 {
    pub fn identity() -> Perm8 {
        Perm8([1, 2, 3, 4, 5, 6, 7, 8])
    }

    /// The longest element, reversing 1..8.
    pub fn longest() -> Perm8 {
        Perm8([8, 7, 6, 5, 4, 3, 2, 1])
    }

    pub fn transposition(i: u8, j: u8) -> Perm8 {
        let mut w = Perm8::identity();
        w.0[i as usize - 1] = j;
        w.0[j as usize - 1] = i;
        w
    }

    pub fn apply(&self, label: u8) -> u8 {
        self.0[label as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm8) -> Perm8 {
        let mut out = [0u8; 8];
        for i in 0..8 {
            out[i] = self.0[other.0[i] as usize - 1];
        }
        Perm8(out)
    }

    /// Number of inversions, which equals the Coxeter length.
    pub fn length(&self) -> usize {
        let mut n = 0;
        for i in 0..8 {
            for j in i + 1..8 {
                if self.0[i] > self.0[j] {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn is_even(&self) -> bool {
        self.length() % 2 == 0
    }

    pub fn all() -> Vec<Perm8> {
        all_permutations(8).into_iter().map(Perm8).collect()
    }

    pub fn to_signed(&self) -> SignedPerm {
        SignedPerm {
            target: self.0,
            neg: 0,
        }
    }
}

impl fmt::Display for Perm8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The dual Lehmer code `(κ_8, κ_7, ..., κ_2)`, where `κ_j` counts the
/// inversions of `w` to the left of position `j`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct DualCode(pub [u8; 7]);

impl DualCode {
    pub fn kappa(&self, j: u8) -> u8 {
        self.0[8 - j as usize]
    }
}

pub fn dual_code(w: &Perm8) -> DualCode {
    let mut out = [0u8; 7];
    for j in 2..=8usize {
        let mut k = 0;
        for i in 0..j - 1 {
            if w.0[i] > w.0[j - 1] {
                k += 1;
            }
        }
        out[8 - j] = k;
    }
    DualCode(out)
}

/// The classical code `(c_1, ..., c_7)`: inversions to the right of each
/// position.
pub fn classical_code(w: &Perm8) -> [u8; 7] {
    let mut out = [0u8; 7];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut c = 0;
        for j in i + 1..8 {
            if w.0[i] > w.0[j] {
                c += 1;
            }
        }
        *slot = c;
    }
    out
}

/// Rebuild the permutation from its dual code via the factorization
/// `w = w_8 w_7 ⋯ w_2`, where `w_j = s_{j-κ_j} ⋯ s_{j-1}`.
pub fn perm_from_dual_code(code: &DualCode) -> Perm8 {
    let mut w = Perm8::identity();
    for j in (2..=8u8).rev() {
        let k = code.kappa(j);
        for i in (j - k)..j {
            w = w.compose(&Perm8::transposition(i, i + 1));
        }
    }
    w
}

/// The reduced code of a permutation with `κ_7 = κ_6 = κ_4 = 0`: the four
/// remaining digits, which index the packings.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ReducedCode {
    pub k8: u8,
    pub k5: u8,
    pub k3: u8,
    pub k2: u8,
}

impl ReducedCode {
    pub fn new(k8: u8, k5: u8, k3: u8, k2: u8) -> ReducedCode {
        assert!(k8 < 8 && k5 < 5 && k3 < 3 && k2 < 2);
        ReducedCode { k8, k5, k3, k2 }
    }

    /// Mixed-radix position in the 8·5·3·2 table.
    pub fn index(&self) -> usize {
        (((self.k8 as usize * 5) + self.k5 as usize) * 3 + self.k3 as usize) * 2 + self.k2 as usize
    }

    pub fn from_index(i: usize) -> ReducedCode {
        assert!(i < 240);
        ReducedCode {
            k8: (i / 30) as u8,
            k5: (i / 6 % 5) as u8,
            k3: (i / 2 % 3) as u8,
            k2: (i % 2) as u8,
        }
    }

    pub fn height(&self) -> u8 {
        self.k8 + self.k5 + self.k3 + self.k2
    }

    pub fn to_dual(&self) -> DualCode {
        DualCode([self.k8, 0, 0, self.k5, 0, self.k3, self.k2])
    }

    pub fn digits(&self) -> [u8; 4] {
        [self.k8, self.k5, self.k3, self.k2]
    }

    /// Componentwise comparability in the product of chains.
    pub fn product_le(&self, other: &ReducedCode) -> bool {
        self.k8 <= other.k8 && self.k5 <= other.k5 && self.k3 <= other.k3 && self.k2 <= other.k2
    }
}

impl fmt::Display for ReducedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}.{}", self.k8, self.k5, self.k3, self.k2)
    }
}

impl std::str::FromStr for ReducedCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('.').collect();
        if parts.len() != 4 {
            return Err(format!("code {s:?} must have four dot-separated digits"));
        }
        let digit = |p: &str, bound: u8| -> Result<u8, String> {
            let d: u8 = p.parse().map_err(|_| format!("bad digit {p:?}"))?;
            if d >= bound {
                return Err(format!("digit {d} out of range (< {bound})"));
            }
            Ok(d)
        };
        Ok(ReducedCode {
            k8: digit(parts[0], 8)?,
            k5: digit(parts[1], 5)?,
            k3: digit(parts[2], 3)?,
            k2: digit(parts[3], 2)?,
        })
    }
}

/// The 240 permutations with `κ_7 = κ_6 = κ_4 = 0`, listed by mixed-radix
/// code index.
pub fn set_c() -> Vec<(ReducedCode, Perm8)> {
    (0..240)
        .map(|i| {
            let code = ReducedCode::from_index(i);
            (code, perm_from_dual_code(&code.to_dual()))
        })
        .collect()
}

/// Geodesic distances from `start` in the Schreier graph of the given
/// generator tables. Panics if some vertex is unreachable.
pub fn bfs_heights(tables: &[Vec<usize>], start: usize, n: usize) -> Vec<u8> {
    let mut dist = vec![u8::MAX; n];
    dist[start] = 0;
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for t in tables {
                let y = t[x];
                if dist[y] == u8::MAX {
                    dist[y] = dist[x] + 1;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    assert!(
        dist.iter().all(|&d| d != u8::MAX),
        "action must be transitive"
    );
    dist
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Parity {
    Odd,
    Even,
}

/// Parity of a used label: take the three triples through it (sorted, each
/// split as `e,a_i,b_i` with `a_i < b_i`), intersect the line through
/// `a_1,a_2` with the line through `b_1,b_2`, and see whether the meeting
/// point completes the `a` side or the `b` side. Also returns the
/// witnessing triple.
pub fn label_parity_witness(p: &Packing, e: u8) -> (Parity, Triple) {
    let lines = p.lines_through(e);
    assert_eq!(lines.len(), 3, "label {e} must be used");
    parity_for_ordering(p, e, [&lines[0], &lines[1], &lines[2]])
}

fn parity_for_ordering(p: &Packing, e: u8, lines: [&Triple; 3]) -> (Parity, Triple) {
    let split = |t: &Triple| -> (u8, u8) {
        let mut rest = t.labels().into_iter().filter(|&x| x != e);
        let a = rest.next().unwrap();
        let b = rest.next().unwrap();
        (a.min(b), a.max(b))
    };
    let (a1, b1) = split(lines[0]);
    let (a2, b2) = split(lines[1]);
    let (a3, b3) = split(lines[2]);
    let la = p.line_through(a1, a2).expect("used labels are collinear");
    let lb = p.line_through(b1, b2).expect("used labels are collinear");
    let common = la.mask() & lb.mask();
    assert_eq!(common.count_ones(), 1, "two lines meet in one label");
    let f = common.trailing_zeros() as u8 + 1;
    if f == a3 {
        let w = Triple::new(a1, a2, a3);
        assert!(p.contains_triple(w), "odd witness must be a line");
        (Parity::Odd, w)
    } else {
        assert_eq!(f, b3, "meeting point completes one of the two sides");
        let w = Triple::new(b1, b2, b3);
        assert!(p.contains_triple(w), "even witness must be a line");
        (Parity::Even, w)
    }
}

/// True when all six orderings of the three lines through `e` give the
/// same parity.
pub fn label_parity_well_defined(p: &Packing, e: u8) -> bool {
    let lines = p.lines_through(e);
    let orders = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let first = parity_for_ordering(p, e, [&lines[0], &lines[1], &lines[2]]).0;
    orders
        .iter()
        .all(|&[i, j, k]| parity_for_ordering(p, e, [&lines[i], &lines[j], &lines[k]]).0 == first)
}

pub fn odd_label_count(p: &Packing) -> u8 {
    p.used_labels()
        .into_iter()
        .filter(|&e| label_parity_witness(p, e).0 == Parity::Odd)
        .count() as u8
}

/// Height without any group theory: odd labels plus basepoint offset.
pub fn combinatorial_height(p: &Packing) -> u8 {
    odd_label_count(p) + (8 - p.basepoint())
}

/// The code-indexed parametrization of the packings by `c ↦ c·x0`.
pub struct LehmerMap {
    /// Code of each packing id.
    pub code_of: Vec<ReducedCode>,
    /// Packing id at each mixed-radix code index.
    pub pid_of: Vec<usize>,
}

pub fn build_lehmer(idx: &PackingIndex) -> Result<LehmerMap, String> {
    let x0 = &idx.packings[idx.x0()];
    let mut code_of = vec![ReducedCode::new(0, 0, 0, 0); idx.len()];
    let mut pid_of = vec![usize::MAX; 240];
    let mut seen = vec![false; idx.len()];
    for (code, perm) in set_c() {
        let moved = x0.relabel(&perm.0);
        let pid = idx
            .id_of(&moved)
            .ok_or_else(|| format!("relabelled packing missing for code {code}"))?;
        if seen[pid] {
            return Err(format!("code {code} repeats packing {pid}"));
        }
        seen[pid] = true;
        code_of[pid] = code;
        pid_of[code.index()] = pid;
    }
    Ok(LehmerMap { code_of, pid_of })
}

/// 240-bit sets for the order relation.
pub type Words = [u64; 4];

pub fn bit_get(w: &Words, i: usize) -> bool {
    w[i / 64] >> (i % 64) & 1 == 1
}

pub fn bit_set(w: &mut Words, i: usize) {
    w[i / 64] |= 1 << (i % 64);
}

pub fn words_and(a: &Words, b: &Words) -> Words {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]]
}

pub fn words_count(w: &Words) -> u32 {
    w.iter().map(|x| x.count_ones()).sum()
}

pub fn words_iter(w: &Words) -> impl Iterator<Item = usize> + '_ {
    (0..256).filter(move |&i| bit_get(w, i))
}

/// The graded order on the packings, with verified cover structure.
pub struct Poset {
    pub n: usize,
    pub heights: Vec<u8>,
    /// `up[x]` contains y iff x ≤ y (x included).
    pub up: Vec<Words>,
    pub down: Vec<Words>,
    /// Covering pairs (x, y) with the height gap of 1.
    pub covers: Vec<(usize, usize)>,
}

impl Poset {
    pub fn le(&self, x: usize, y: usize) -> bool {
        bit_get(&self.up[x], y)
    }

    pub fn interval(&self, x: usize, y: usize) -> Words {
        words_and(&self.up[x], &self.down[y])
    }
}

/// Build the order generated by the height-increasing reflection moves.
/// The closure over all edges must equal the closure over the gap-1 edges
/// (gradedness), the gap-1 edges must be exactly the relations with empty
/// strict interior (transitive reduction), and strict comparability must
/// force a strict height increase.
pub fn build_poset(heights: &[u8], reflection_tables: &[Vec<usize>]) -> Result<Poset, String> {
    let n = heights.len();
    let mut edges_all: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges_cov: Vec<Vec<usize>> = vec![Vec::new(); n];
    for table in reflection_tables {
        for x in 0..n {
            let y = table[x];
            if heights[y] > heights[x] {
                edges_all[x].push(y);
                if heights[y] == heights[x] + 1 {
                    edges_cov[x].push(y);
                }
            }
        }
    }

    let closure = |edges: &[Vec<usize>]| -> Vec<Words> {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&x| std::cmp::Reverse(heights[x]));
        let mut up = vec![[0u64; 4]; n];
        for &x in &order {
            let mut acc: Words = [0; 4];
            bit_set(&mut acc, x);
            for &y in &edges[x] {
                for k in 0..4 {
                    acc[k] |= up[y][k];
                }
            }
            up[x] = acc;
        }
        up
    };

    let up_all = closure(&edges_all);
    let up_cov = closure(&edges_cov);
    if up_all != up_cov {
        return Err("order generated by covers differs from the full reflection order".into());
    }
    let up = up_all;
    let mut down = vec![[0u64; 4]; n];
    for x in 0..n {
        for y in words_iter(&up[x]) {
            bit_set(&mut down[y], x);
        }
    }

    let mut covers: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        let mut cs: Vec<usize> = edges_cov[x].clone();
        cs.sort_unstable();
        cs.dedup();
        for y in cs {
            covers.push((x, y));
        }
    }

    // Transitive-reduction agreement: the pairs with empty strict interior
    // are exactly the recorded covers, and they all have height gap 1.
    let cover_set: std::collections::HashSet<(usize, usize)> = covers.iter().copied().collect();
    for x in 0..n {
        for y in words_iter(&up[x]) {
            if y == x {
                continue;
            }
            if heights[y] <= heights[x] {
                return Err(format!("comparable pair ({x},{y}) fails height monotony"));
            }
            let between = words_count(&words_and(&up[x], &down[y])) - 2;
            let is_reduction_edge = between == 0;
            if is_reduction_edge != cover_set.contains(&(x, y)) {
                return Err(format!("cover mismatch at ({x},{y})"));
            }
            if is_reduction_edge && heights[y] != heights[x] + 1 {
                return Err(format!("cover ({x},{y}) has height gap > 1"));
            }
        }
    }

    Ok(Poset {
        n,
        heights: heights.to_vec(),
        up,
        down,
        covers,
    })
}

/// Verify that every nontrivial closed interval balances odd and even
/// ranks, that the Möbius function alternates accordingly, and that rank-2
/// intervals are diamonds. Returns the number of nontrivial intervals.
pub fn eulerian_check(poset: &Poset) -> Result<usize, String> {
    let n = poset.n;
    let mut intervals = 0usize;
    for x in 0..n {
        for y in words_iter(&poset.up[x]) {
            if y == x {
                continue;
            }
            intervals += 1;
            let inside = poset.interval(x, y);
            let mut odd = 0i64;
            let mut even = 0i64;
            for z in words_iter(&inside) {
                if (poset.heights[z] - poset.heights[x]) % 2 == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
            if odd != even {
                return Err(format!(
                    "interval [{x},{y}] has {even} even and {odd} odd ranks"
                ));
            }
            let gap = poset.heights[y] - poset.heights[x];
            if gap == 2 && words_count(&inside) != 4 {
                return Err(format!("rank-2 interval [{x},{y}] is not a diamond"));
            }
        }
    }

    // Möbius recursion per lower endpoint.
    for x in 0..n {
        let members: Vec<usize> = {
            let mut m: Vec<usize> = words_iter(&poset.up[x]).collect();
            m.sort_unstable_by_key(|&z| poset.heights[z]);
            m
        };
        let mut mu: HashMap<usize, i64> = HashMap::new();
        for &y in &members {
            let value = if y == x {
                1
            } else {
                let inside = poset.interval(x, y);
                let mut s = 0i64;
                for z in words_iter(&inside) {
                    if z != y {
                        s += mu[&z];
                    }
                }
                -s
            };
            mu.insert(y, value);
            let gap = (poset.heights[y] - poset.heights[x]) as u32;
            let expect = if gap % 2 == 0 { 1 } else { -1 };
            if value != expect {
                return Err(format!("mobius([{x},{y}]) = {value}, expected {expect}"));
            }
        }
    }
    Ok(intervals)
}

/// Heights as a coefficient vector: entry h counts the packings of height h.
pub fn height_distribution(heights: &[u8]) -> Vec<u64> {
    let max = *heights.iter().max().unwrap() as usize;
    let mut out = vec![0u64; max + 1];
    for &h in heights {
        out[h as usize] += 1;
    }
    out
}

/// Expand the product of the quantum integers `[d]_q` for the given sizes.
pub fn quantum_product(sizes: &[u64]) -> Vec<u64> {
    let mut poly = vec![1u64];
    for &d in sizes {
        let mut next = vec![0u64; poly.len() + d as usize - 1];
        for (i, &c) in poly.iter().enumerate() {
            for j in 0..d as usize {
                next[i + j] += c;
            }
        }
        poly = next;
    }
    poly
}

/// Strongly-regular parameter check: `n` vertices, degree `k`, `lambda`
/// common neighbours across edges, `mu` across non-edges.
pub fn check_srg(
    adj: &[Vec<bool>],
    n: usize,
    k: usize,
    lambda: usize,
    mu: usize,
) -> Result<(), String> {
    if adj.len() != n {
        return Err(format!("expected {n} vertices, got {}", adj.len()));
    }
    for (i, row) in adj.iter().enumerate() {
        if row[i] {
            return Err(format!("vertex {i} is self-adjacent"));
        }
        let deg = row.iter().filter(|&&b| b).count();
        if deg != k {
            return Err(format!("vertex {i} has degree {deg}, expected {k}"));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] != adj[j][i] {
                return Err(format!("adjacency is not symmetric at ({i},{j})"));
            }
            let common = (0..n).filter(|&z| adj[i][z] && adj[j][z]).count();
            let expect = if adj[i][j] { lambda } else { mu };
            if common != expect {
                return Err(format!(
                    "pair ({i},{j}) has {common} common neighbours, expected {expect}"
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg32::packing_from_label_triples;
    use crate::weyl::{action_table, GroupName};

    #[test]
    fn worked_code_example() {
        // 3741652 in the rank-7 group, embedded fixing 8.
        let w = Perm8([3, 7, 4, 1, 6, 5, 2, 8]);
        assert_eq!(w.length(), 12);
        assert_eq!(dual_code(&w).0, [0, 5, 2, 1, 3, 1, 0]);
        assert_eq!(classical_code(&w), [2, 5, 2, 0, 2, 1, 0]);
        // Dual code of w equals the classical code of w0·w·w0.
        let w0 = Perm8::longest();
        let conj = w0.compose(&w).compose(&w0);
        assert_eq!(conj.0, [1, 7, 4, 3, 8, 5, 2, 6]);
        assert_eq!(dual_code(&w).0, classical_code(&conj));
        // Identity has the zero code.
        assert_eq!(dual_code(&Perm8::identity()).0, [0; 7]);
    }

    #[test]
    fn dual_code_round_trip_all_permutations() {
        let w0 = Perm8::longest();
        for w in Perm8::all() {
            let code = dual_code(&w);
            assert_eq!(perm_from_dual_code(&code), w);
            let total: usize = code.0.iter().map(|&k| k as usize).sum();
            assert_eq!(total, w.length());
            assert_eq!(code.0, classical_code(&w0.compose(&w).compose(&w0)));
        }
    }

    #[test]
    fn set_c_has_240_reduced_members() {
        let c = set_c();
        assert_eq!(c.len(), 240);
        for (code, w) in &c {
            let k = dual_code(w);
            assert_eq!(k.kappa(7), 0);
            assert_eq!(k.kappa(6), 0);
            assert_eq!(k.kappa(4), 0);
            assert_eq!(
                [k.kappa(8), k.kappa(5), k.kappa(3), k.kappa(2)],
                code.digits()
            );
            assert_eq!(w.length(), code.height() as usize);
            // No inversions (i, j) with j in {4, 6, 7}.
            for j in [4usize, 6, 7] {
                for i in 0..j - 1 {
                    assert!(w.0[i] < w.0[j - 1]);
                }
            }
        }
        // Conversely, every permutation without such inversions is in C.
        let members: std::collections::HashSet<Perm8> = c.iter().map(|(_, w)| *w).collect();
        for w in Perm8::all() {
            let free = [4usize, 6, 7]
                .iter()
                .all(|&j| (0..j - 1).all(|i| w.0[i] < w.0[j - 1]));
            assert_eq!(free, members.contains(&w));
        }
    }

    #[test]
    fn code_index_round_trip_and_strings() {
        for i in 0..240 {
            let code = ReducedCode::from_index(i);
            assert_eq!(code.index(), i);
            let s = code.to_string();
            assert_eq!(s.parse::<ReducedCode>().unwrap(), code);
        }
        assert!("9.0.0.0".parse::<ReducedCode>().is_err());
        assert!("1.2.3".parse::<ReducedCode>().is_err());
    }

    fn heights_fixture() -> (PackingIndex, Vec<u8>) {
        let idx = PackingIndex::build();
        let tables: Vec<Vec<usize>> = GroupName::A7
            .generators()
            .iter()
            .map(|&g| action_table(g, &idx))
            .collect();
        let heights = bfs_heights(&tables, idx.x0(), idx.len());
        (idx, heights)
    }

    #[test]
    fn bfs_heights_endpoints() {
        let (idx, heights) = heights_fixture();
        assert_eq!(heights[idx.x0()], 0);
        assert_eq!(heights[idx.x1()], 14);
        let s1x0 =
            crate::weyl::act_lambda(SignedPerm::transposition(1, 2), idx.x0(), &idx).unwrap();
        assert_eq!(heights[s1x0], 1);
    }

    #[test]
    fn rank7_heights_agree_with_rank8_heights() {
        let (idx, heights) = heights_fixture();
        let tables: Vec<Vec<usize>> = GroupName::D7
            .generators()
            .iter()
            .map(|&g| action_table(g, &idx))
            .collect();
        let d7 = bfs_heights(&tables, idx.x0(), idx.len());
        assert_eq!(d7, heights);
    }

    #[test]
    fn octonion_plane_parities() {
        let p = packing_from_label_triples(&[
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 7],
            [1, 5, 6],
            [2, 6, 7],
            [1, 3, 7],
        ]);
        assert_eq!(p.basepoint(), 8);
        let expect = [
            (1, Parity::Odd, [2u8, 3, 5]),
            (2, Parity::Even, [4, 5, 7]),
            (3, Parity::Odd, [1, 2, 4]),
            (4, Parity::Even, [2, 6, 7]),
            (5, Parity::Odd, [1, 2, 4]),
            (6, Parity::Even, [4, 5, 7]),
            (7, Parity::Odd, [1, 2, 4]),
        ];
        for (e, parity, witness) in expect {
            let (got, w) = label_parity_witness(&p, e);
            assert_eq!(got, parity, "label {e}");
            assert_eq!(w, Triple::new(witness[0], witness[1], witness[2]));
            assert!(label_parity_well_defined(&p, e));
        }
        assert_eq!(odd_label_count(&p), 4);
        assert_eq!(combinatorial_height(&p), 4);
    }

    #[test]
    fn combinatorial_height_matches_bfs_everywhere() {
        let (idx, heights) = heights_fixture();
        for pid in 0..idx.len() {
            assert_eq!(combinatorial_height(&idx.packings[pid]), heights[pid]);
        }
    }

    #[test]
    fn x0_all_even_x1_all_odd() {
        let idx = PackingIndex::build();
        let x0 = &idx.packings[idx.x0()];
        for e in x0.used_labels() {
            assert_eq!(label_parity_witness(x0, e).0, Parity::Even);
        }
        let x1 = &idx.packings[idx.x1()];
        for e in x1.used_labels() {
            assert_eq!(label_parity_witness(x1, e).0, Parity::Odd);
        }
    }

    #[test]
    fn lehmer_map_endpoints() {
        let (idx, heights) = heights_fixture();
        let lehmer = build_lehmer(&idx).unwrap();
        assert_eq!(lehmer.code_of[idx.x0()], ReducedCode::new(0, 0, 0, 0));
        assert_eq!(lehmer.code_of[idx.x1()], ReducedCode::new(7, 4, 2, 1));
        // Heights through the code agree with the geodesic heights.
        for pid in 0..idx.len() {
            assert_eq!(lehmer.code_of[pid].height(), heights[pid]);
        }
        assert_eq!(lehmer.pid_of[0], idx.x0());
        assert_eq!(lehmer.pid_of[239], idx.x1());
    }

    #[test]
    fn worked_covering_pair_codes() {
        let idx = PackingIndex::build();
        let lehmer = build_lehmer(&idx).unwrap();
        let x = packing_from_label_triples(&[
            [1, 2, 7],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
            [3, 4, 7],
            [5, 6, 7],
        ]);
        let xp = packing_from_label_triples(&[
            [1, 2, 6],
            [1, 3, 5],
            [1, 4, 7],
            [2, 3, 7],
            [2, 4, 5],
            [3, 4, 6],
            [5, 6, 7],
        ]);
        let cx = lehmer.code_of[idx.id_of(&x).unwrap()];
        let cxp = lehmer.code_of[idx.id_of(&xp).unwrap()];
        assert_eq!(cx, ReducedCode::new(0, 0, 0, 1));
        assert_eq!(cxp, ReducedCode::new(0, 0, 2, 0));
        assert!(!cx.product_le(&cxp) && !cxp.product_le(&cx));
    }

    #[test]
    fn generating_function_is_the_quantum_product() {
        let (_, heights) = heights_fixture();
        let dist = height_distribution(&heights);
        assert_eq!(dist, quantum_product(&[2, 3, 5, 8]));
        assert_eq!(dist.iter().sum::<u64>(), 240);
        assert_eq!(dist.len(), 15);
        let palindrome: Vec<u64> = dist.iter().rev().copied().collect();
        assert_eq!(dist, palindrome);
    }

    #[test]
    fn poset_builds_and_is_eulerian() {
        let (idx, heights) = heights_fixture();
        let refl: Vec<Vec<usize>> = GroupName::D8
            .reflections()
            .iter()
            .map(|r| action_table(r.to_signed_perm(), &idx))
            .collect();
        let poset = build_poset(&heights, &refl).unwrap();
        assert_eq!(poset.n, 240);
        assert!(poset.le(idx.x0(), idx.x1()));
        let intervals = eulerian_check(&poset).unwrap();
        assert!(intervals > 0);
    }

    #[test]
    fn srg_rejects_wrong_parameters() {
        // A 4-cycle is SRG(4, 2, 0, 2).
        let adj = vec![
            vec![false, true, false, true],
            vec![true, false, true, false],
            vec![false, true, false, true],
            vec![true, false, true, false],
        ];
        assert!(check_srg(&adj, 4, 2, 0, 2).is_ok());
        assert!(check_srg(&adj, 4, 2, 1, 2).is_err());
    }
}
