//! The E8 root system in exact integer arithmetic.
//!
//! Coordinates are stored doubled (so half-integer roots become odd integer
//! vectors) and every root carries its coefficients in the simple-root
//! basis, computed once by exact back-substitution and re-verified against
//! the defining matrix. Positivity, the root order, and reflections are all
//! integer computations; nothing is floating point.
//!
//! Two 64-root subsets matter here. `Ψ` is the set of roots whose first
//! simple-root coefficient is 1; its maximal orthogonal 8-subsets `Ω_Ψ` are
//! in bijection with the packings of PG(3,2). `Ψ′` is the set of roots with
//! odd positive second coefficient; its 56-element layer models the spreads
//! and its 8-element chain models the basepoints.

use std::collections::HashMap;

use thiserror::Error;

use crate::cliques::maximal_cliques;
use crate::gf2::{label_bit, BitVec8, Coset};
use crate::pg32::Triple;

/// Doubled coordinates of the eight simple roots.
const SIMPLE_D2: [[i32; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1], // half-integer branch root
    [2, 2, 0, 0, 0, 0, 0, 0],       // e1 + e2
    [-2, 2, 0, 0, 0, 0, 0, 0],      // e2 - e1
    [0, -2, 2, 0, 0, 0, 0, 0],      // e3 - e2
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum E8Error {
    #[error("root {0} is not in Ψ (first coefficient must be 1)")]
    NotInPsi(usize),
}

/// An E8 root: doubled coordinates plus simple-root coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Root {
    pub d2: [i32; 8],
    pub coeffs: [i32; 8],
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().any(|&c| c > 0)
    }

    /// Coefficient sum, the height of the root in the root order.
    pub fn coeff_sum(&self) -> i32 {
        self.coeffs.iter().sum()
    }
}

/// Exact coefficients of a doubled-coordinate root in the simple basis,
/// by back-substitution from the highest coordinate down. Panics if the
/// system is not exactly solvable, which would mean the input is not in
/// the lattice spanned by the simple roots.
fn solve_coeffs(d2: &[i32; 8]) -> [i32; 8] {
    let exact_half = |x: i32| {
        assert!(
            x % 2 == 0,
            "coefficient system must solve over the integers"
        );
        x / 2
    };
    let c1 = d2[7];
    let c8 = exact_half(d2[6] + c1);
    let c7 = exact_half(d2[5] + c1 + 2 * c8);
    let c6 = exact_half(d2[4] + c1 + 2 * c7);
    let c5 = exact_half(d2[3] + c1 + 2 * c6);
    let c4 = exact_half(d2[2] + c1 + 2 * c5);
    let s = d2[0] + d2[1] + 2 * c4;
    assert!(
        s % 4 == 0,
        "coefficient system must solve over the integers"
    );
    let c2 = s / 4;
    let c3 = exact_half(c1 + 2 * c2 - d2[0]);
    let coeffs = [c1, c2, c3, c4, c5, c6, c7, c8];

    // Re-verify against the defining matrix; this equation is the one that
    // actually matters.
    let mut recon = [0i32; 8];
    for (ci, alpha) in coeffs.iter().zip(SIMPLE_D2.iter()) {
        for k in 0..8 {
            recon[k] += ci * alpha[k];
        }
    }
    assert_eq!(&recon, d2, "coefficients must reconstruct the root exactly");
    coeffs
}

/// The 240 roots with index lookups, the subset Ψ, and the highest root.
pub struct RootSystem {
    pub roots: Vec<Root>,
    index: HashMap<[i32; 8], usize>,
    /// Ids of the 64 roots with first coefficient 1, sorted.
    pub psi: Vec<usize>,
    /// Id of the highest root.
    pub theta: usize,
    /// Ids of the simple roots.
    pub simple: [usize; 8],
    psi_by_coset: HashMap<Coset, usize>,
}

impl RootSystem {
    pub fn build() -> RootSystem {
        let mut raw = Vec::with_capacity(240);
        // Integer roots ±e_i ± e_j.
        for i in 0..8 {
            for j in i + 1..8 {
                for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                    let mut d2 = [0i32; 8];
                    d2[i] = si;
                    d2[j] = sj;
                    raw.push(d2);
                }
            }
        }
        let integer_count = raw.len();
        // Half-integer roots with evenly many minus signs.
        for signs in 0u16..256 {
            if signs.count_ones() % 2 != 0 {
                continue;
            }
            let mut d2 = [0i32; 8];
            for (k, entry) in d2.iter_mut().enumerate() {
                *entry = if signs >> k & 1 == 1 { -1 } else { 1 };
            }
            raw.push(d2);
        }
        assert_eq!(integer_count, 112);
        assert_eq!(raw.len(), 240);
        raw.sort_unstable();

        let roots: Vec<Root> = raw
            .into_iter()
            .map(|d2| {
                let coeffs = solve_coeffs(&d2);
                let pos = coeffs.iter().all(|&c| c >= 0);
                let neg = coeffs.iter().all(|&c| c <= 0);
                assert!(pos || neg, "coefficients must have like sign");
                assert_eq!(d2.iter().map(|x| x * x).sum::<i32>(), 8, "norm 2");
                Root { d2, coeffs }
            })
            .collect();
        let index: HashMap<[i32; 8], usize> =
            roots.iter().enumerate().map(|(i, r)| (r.d2, i)).collect();
        let psi: Vec<usize> = (0..roots.len())
            .filter(|&i| roots[i].coeffs[0] == 1)
            .collect();
        assert_eq!(psi.len(), 64);
        let mut theta_d2 = [0i32; 8];
        theta_d2[6] = 2;
        theta_d2[7] = 2;
        let theta = index[&theta_d2];
        let simple = SIMPLE_D2.map(|d2| index[&d2]);

        let mut rs = RootSystem {
            roots,
            index,
            psi,
            theta,
            simple,
            psi_by_coset: HashMap::new(),
        };
        rs.psi_by_coset = rs
            .psi
            .iter()
            .map(|&id| (rs.lambda_plus(id).unwrap(), id))
            .collect();
        assert_eq!(rs.psi_by_coset.len(), 64, "λ+ must be injective on Ψ");
        rs
    }

    pub fn id_of(&self, d2: &[i32; 8]) -> Option<usize> {
        self.index.get(d2).copied()
    }

    /// Exact scalar product of two roots (values in -2..=2).
    pub fn inner(&self, a: usize, b: usize) -> i32 {
        let s: i32 = self.roots[a]
            .d2
            .iter()
            .zip(self.roots[b].d2.iter())
            .map(|(x, y)| x * y)
            .sum();
        debug_assert_eq!(s % 4, 0);
        s / 4
    }

    /// Reflection of `g` in the hyperplane of `b`; closed on the root set.
    pub fn reflect(&self, b: usize, g: usize) -> usize {
        let s = self.inner(g, b);
        let mut d2 = self.roots[g].d2;
        for k in 0..8 {
            d2[k] -= s * self.roots[b].d2[k];
        }
        self.index[&d2]
    }

    pub fn is_positive(&self, id: usize) -> bool {
        self.roots[id].is_positive()
    }

    pub fn negate(&self, id: usize) -> usize {
        let d2 = self.roots[id].d2.map(|x| -x);
        self.index[&d2]
    }

    /// Root order: `a ≤ b` iff `b - a` has nonnegative coefficients.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.roots[a]
            .coeffs
            .iter()
            .zip(self.roots[b].coeffs.iter())
            .all(|(x, y)| x <= y)
    }

    /// The partition class of a Ψ-root: the half with the plus signs, which
    /// contains 8.
    pub fn lambda_plus(&self, id: usize) -> Result<Coset, E8Error> {
        let r = &self.roots[id];
        if r.coeffs[0] != 1 {
            return Err(E8Error::NotInPsi(id));
        }
        let mut mask = 0u8;
        for (k, &x) in r.d2.iter().enumerate() {
            debug_assert_eq!(x.abs(), 1);
            if x > 0 {
                mask |= 1 << k;
            }
        }
        debug_assert!(mask & label_bit(8) != 0);
        Ok(Coset::canonical(BitVec8(mask)))
    }

    /// Inverse of `lambda_plus`.
    pub fn psi_root_of_coset(&self, c: Coset) -> Option<usize> {
        self.psi_by_coset.get(&c).copied()
    }

    /// The set of roots whose coefficient of `α_c` equals `d`.
    pub fn phi(&self, c: usize, d: i32) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| self.roots[i].coeffs[c - 1] == d)
            .collect()
    }

    /// All maximal orthogonal subsets of Ψ, each of size 8. There are 240.
    pub fn omega_psi(&self) -> Vec<[usize; 8]> {
        self.maximal_orthogonal_subsets(&self.psi)
            .into_iter()
            .map(|c| {
                let arr: [usize; 8] = c
                    .try_into()
                    .expect("maximal orthogonal subsets of Ψ have 8 roots");
                arr
            })
            .collect()
    }

    /// Maximal pairwise-orthogonal subsets of an arbitrary root list.
    pub fn maximal_orthogonal_subsets(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        let n = ids.len();
        assert!(n <= 128);
        let adj: Vec<u128> = (0..n)
            .map(|i| {
                let mut row = 0u128;
                for j in 0..n {
                    if i != j && self.inner(ids[i], ids[j]) == 0 {
                        row |= 1 << j;
                    }
                }
                row
            })
            .collect();
        maximal_cliques(n, &adj)
            .into_iter()
            .map(|mask| {
                (0..n)
                    .filter(|&k| mask >> k & 1 == 1)
                    .map(|k| ids[k])
                    .collect()
            })
            .collect()
    }

    /// Residues of an orthogonal set within the ambient list `universe`:
    /// the roots sent to positive roots by every member's reflection.
    pub fn residues(&self, set: &[usize], universe: &[usize]) -> Vec<usize> {
        universe
            .iter()
            .copied()
            .filter(|&g| set.iter().all(|&b| self.is_positive(self.reflect(b, g))))
            .collect()
    }
}

/// The Ψ′ model: the 56-root layer `Φ_{2,1}` in bijection with the spreads,
/// and the 8-root chain `Φ_{2,3}` in bijection with the basepoints. Both
/// bijections are transported equivariantly along the symmetric-group
/// generators from a single anchor each.
pub struct PsiPrime {
    pub phi21: Vec<usize>,
    pub phi23: Vec<usize>,
    spread_of_root: HashMap<usize, Triple>,
    root_of_spread: HashMap<Triple, usize>,
    label_of_root: HashMap<usize, u8>,
    root_of_label: [usize; 8],
}

impl PsiPrime {
    /// The symmetric-group generators acting on Ψ′: reflections in the
    /// simple roots along the branch-free chain of the diagram, paired with
    /// the adjacent transpositions they induce on {1..8}.
    fn s8_generators(rs: &RootSystem) -> Vec<(usize, u8)> {
        vec![
            (rs.simple[0], 1),
            (rs.simple[2], 2),
            (rs.simple[3], 3),
            (rs.simple[4], 4),
            (rs.simple[5], 5),
            (rs.simple[6], 6),
            (rs.simple[7], 7),
        ]
    }

    pub fn build(rs: &RootSystem) -> Result<PsiPrime, String> {
        let phi21 = rs.phi(2, 1);
        let phi23 = rs.phi(2, 3);
        if phi21.len() != 56 || phi23.len() != 8 {
            return Err(format!(
                "expected layer sizes 56 and 8, got {} and {}",
                phi21.len(),
                phi23.len()
            ));
        }
        let gens = Self::s8_generators(rs);

        // Transport the spread bijection from the anchor: branch root ↦ 123.
        let mut spread_of_root: HashMap<usize, Triple> = HashMap::new();
        spread_of_root.insert(rs.simple[1], Triple::new(1, 2, 3));
        let mut queue = vec![rs.simple[1]];
        while let Some(r) = queue.pop() {
            let t = spread_of_root[&r];
            for &(alpha, k) in &gens {
                let r2 = rs.reflect(alpha, r);
                let t2 = transpose_triple(t, k);
                match spread_of_root.get(&r2) {
                    Some(&prev) if prev != t2 => {
                        return Err(format!("inconsistent transport at root {r2}"))
                    }
                    Some(_) => {}
                    None => {
                        spread_of_root.insert(r2, t2);
                        queue.push(r2);
                    }
                }
            }
        }
        if spread_of_root.len() != 56 {
            return Err(format!(
                "transport reached {} of 56 roots",
                spread_of_root.len()
            ));
        }
        // Full equivariance, not just along the spanning tree.
        for (&r, &t) in &spread_of_root {
            for &(alpha, k) in &gens {
                let lhs = spread_of_root[&rs.reflect(alpha, r)];
                if lhs != transpose_triple(t, k) {
                    return Err("spread bijection is not equivariant".into());
                }
            }
        }
        let root_of_spread: HashMap<Triple, usize> =
            spread_of_root.iter().map(|(&r, &t)| (t, r)).collect();
        if root_of_spread.len() != 56 {
            return Err("spread bijection is not injective".into());
        }

        // Basepoint chain: anchor θ ↦ 8 and transport.
        let mut label_of_root: HashMap<usize, u8> = HashMap::new();
        label_of_root.insert(rs.theta, 8);
        let mut queue = vec![rs.theta];
        while let Some(r) = queue.pop() {
            let l = label_of_root[&r];
            for &(alpha, k) in &gens {
                let r2 = rs.reflect(alpha, r);
                let l2 = transpose_label(l, k);
                match label_of_root.get(&r2) {
                    Some(&prev) if prev != l2 => {
                        return Err(format!("inconsistent chain transport at root {r2}"))
                    }
                    Some(_) => {}
                    None => {
                        label_of_root.insert(r2, l2);
                        queue.push(r2);
                    }
                }
            }
        }
        if label_of_root.len() != 8 {
            return Err("chain transport did not reach all 8 roots".into());
        }
        for (&r, &l) in &label_of_root {
            for &(alpha, k) in &gens {
                if label_of_root[&rs.reflect(alpha, r)] != transpose_label(l, k) {
                    return Err("chain bijection is not equivariant".into());
                }
            }
        }
        let mut root_of_label = [usize::MAX; 8];
        for (&r, &l) in &label_of_root {
            root_of_label[l as usize - 1] = r;
        }

        let pp = PsiPrime {
            phi21,
            phi23,
            spread_of_root,
            root_of_spread,
            label_of_root,
            root_of_label,
        };
        // Anchor sanity at both ends of both posets.
        let max21 = pp
            .phi21
            .iter()
            .copied()
            .find(|&a| pp.phi21.iter().all(|&b| rs.le(b, a)))
            .ok_or("the spread layer has no maximum")?;
        if pp.spread_of_root[&max21] != Triple::new(6, 7, 8) {
            return Err("maximum of the spread layer should index 678".into());
        }
        let min21 = pp
            .phi21
            .iter()
            .copied()
            .find(|&a| pp.phi21.iter().all(|&b| rs.le(a, b)))
            .ok_or("the spread layer has no minimum")?;
        if min21 != rs.simple[1] {
            return Err("minimum of the spread layer should be the branch simple root".into());
        }
        let min23 = pp
            .phi23
            .iter()
            .copied()
            .find(|&a| pp.phi23.iter().all(|&b| rs.le(a, b)))
            .ok_or("the chain has no minimum")?;
        if pp.label_of_root[&min23] != 1 {
            return Err("minimum of the chain should correspond to 1".into());
        }
        Ok(pp)
    }

    pub fn psi_prime(&self) -> Vec<usize> {
        let mut all = self.phi21.clone();
        all.extend_from_slice(&self.phi23);
        all.sort_unstable();
        all
    }

    pub fn spread_of(&self, root: usize) -> Option<Triple> {
        self.spread_of_root.get(&root).copied()
    }

    pub fn root_of(&self, spread: Triple) -> Option<usize> {
        self.root_of_spread.get(&spread).copied()
    }

    pub fn basepoint_of(&self, root: usize) -> Option<u8> {
        self.label_of_root.get(&root).copied()
    }

    pub fn root_of_basepoint(&self, label: u8) -> usize {
        self.root_of_label[label as usize - 1]
    }

    /// The orthogonal 8-subset of Ψ′ attached to a packing: the roots of
    /// its seven spreads plus the root of its basepoint.
    pub fn orthoset_of_packing(&self, p: &crate::pg32::Packing) -> [usize; 8] {
        let mut ids: Vec<usize> = p
            .triples()
            .iter()
            .map(|&t| self.root_of_spread[&t])
            .collect();
        ids.push(self.root_of_basepoint(p.basepoint()));
        ids.sort_unstable();
        ids.try_into().unwrap()
    }
}

/// The Ψ′ residues of a packing read directly off the Fano plane, with no
/// root arithmetic: every basepoint label above the packing's own, and
/// every non-collinear triple of used labels in which each point's label
/// exceeds that of the point collinear with the other two.
pub fn combinatorial_psi_prime_residues(p: &crate::pg32::Packing) -> (Vec<u8>, Vec<Triple>) {
    let basepoints: Vec<u8> = (p.basepoint() + 1..=8).collect();
    let used = p.used_labels();
    let mut triples = Vec::new();
    for i in 0..used.len() {
        for j in i + 1..used.len() {
            for k in j + 1..used.len() {
                let (a, b, c) = (used[i], used[j], used[k]);
                let t = Triple::new(a, b, c);
                if p.contains_triple(t) {
                    continue;
                }
                let third = |x: u8, y: u8| {
                    let line = p.line_through(x, y).expect("used labels are collinear");
                    line.labels()
                        .into_iter()
                        .find(|&v| v != x && v != y)
                        .unwrap()
                };
                if third(b, c) < a && third(a, c) < b && third(a, b) < c {
                    triples.push(t);
                }
            }
        }
    }
    triples.sort_unstable();
    (basepoints, triples)
}

fn transpose_label(x: u8, k: u8) -> u8 {
    if x == k {
        k + 1
    } else if x == k + 1 {
        k
    } else {
        x
    }
}

fn transpose_triple(t: Triple, k: u8) -> Triple {
    let [a, b, c] = t.labels();
    Triple::new(
        transpose_label(a, k),
        transpose_label(b, k),
        transpose_label(c, k),
    )
}

/// A finite poset as an explicit relation matrix, for the lattice checks.
pub struct RelPoset {
    pub n: usize,
    pub le: Vec<Vec<bool>>,
}

impl RelPoset {
    pub fn from_le(n: usize, le: impl Fn(usize, usize) -> bool) -> RelPoset {
        let m = (0..n).map(|i| (0..n).map(|j| le(i, j)).collect()).collect();
        RelPoset { n, le: m }
    }

    fn below_count(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.le[j][i]).count()
    }

    fn above_count(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.le[i][j]).count()
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.n)
            .filter(|&z| self.le[z][a] && self.le[z][b])
            .collect();
        lbs.iter()
            .copied()
            .find(|&m| lbs.iter().all(|&z| self.le[z][m]))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.n)
            .filter(|&z| self.le[a][z] && self.le[b][z])
            .collect();
        ubs.iter()
            .copied()
            .find(|&m| ubs.iter().all(|&z| self.le[m][z]))
    }

    pub fn is_distributive_lattice(&self) -> Result<(), String> {
        let mut meet = vec![vec![0usize; self.n]; self.n];
        let mut join = vec![vec![0usize; self.n]; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                meet[a][b] = self.meet(a, b).ok_or(format!("no meet for {a},{b}"))?;
                join[a][b] = self.join(a, b).ok_or(format!("no join for {a},{b}"))?;
            }
        }
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Count order isomorphisms onto `other`, stopping early at `cap`.
    pub fn count_isomorphisms(&self, other: &RelPoset, cap: usize) -> usize {
        fn rec(
            depth: usize,
            a: &RelPoset,
            b: &RelPoset,
            inv_a: &[(usize, usize)],
            inv_b: &[(usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            count: &mut usize,
            cap: usize,
        ) {
            if *count >= cap {
                return;
            }
            if depth == a.n {
                *count += 1;
                return;
            }
            for cand in 0..b.n {
                if used[cand] || inv_a[depth] != inv_b[cand] {
                    continue;
                }
                let ok = (0..depth).all(|prev| {
                    a.le[depth][prev] == b.le[cand][map[prev]]
                        && a.le[prev][depth] == b.le[map[prev]][cand]
                });
                if !ok {
                    continue;
                }
                map[depth] = cand;
                used[cand] = true;
                rec(depth + 1, a, b, inv_a, inv_b, map, used, count, cap);
                used[cand] = false;
                map[depth] = usize::MAX;
            }
        }

        if self.n != other.n {
            return 0;
        }
        let inv_a: Vec<(usize, usize)> = (0..self.n)
            .map(|i| (self.below_count(i), self.above_count(i)))
            .collect();
        let inv_b: Vec<(usize, usize)> = (0..other.n)
            .map(|i| (other.below_count(i), other.above_count(i)))
            .collect();
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        let mut count = 0usize;
        rec(
            0, self, other, &inv_a, &inv_b, &mut map, &mut used, &mut count, cap,
        );
        count
    }
}

/// The lattice of order ideals of the 3×5 grid poset, ordered by inclusion.
/// An ideal is a weakly decreasing triple of row lengths, so there are
/// C(8,3) = 56 of them.
pub fn grid_ideal_lattice() -> RelPoset {
    let mut ideals = Vec::new();
    for c0 in 0..=5u8 {
        for c1 in 0..=c0 {
            for c2 in 0..=c1 {
                ideals.push([c0, c1, c2]);
            }
        }
    }
    assert_eq!(ideals.len(), 56);
    let le = move |i: usize, j: usize| (0..3).all(|k| ideals[i][k] <= ideals[j][k]);
    RelPoset::from_le(56, le)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pg32::{packing_from_label_triples, X0_TRIPLES, X1_TRIPLES};

    fn rs() -> RootSystem {
        RootSystem::build()
    }

    #[test]
    fn root_counts() {
        let rs = rs();
        assert_eq!(rs.roots.len(), 240);
        let integer = rs
            .roots
            .iter()
            .filter(|r| r.d2.iter().all(|&x| x % 2 == 0))
            .count();
        assert_eq!(integer, 112);
        assert_eq!(240 - integer, 128);
        assert_eq!(rs.psi.len(), 64);
        assert_eq!(rs.phi(1, 2).len(), 14);
        assert_eq!(rs.phi(1, 1).len(), 64);
    }

    #[test]
    fn simple_root_coefficients_are_unit_vectors() {
        let rs = rs();
        for (k, &id) in rs.simple.iter().enumerate() {
            let mut expect = [0i32; 8];
            expect[k] = 1;
            assert_eq!(rs.roots[id].coeffs, expect);
        }
    }

    #[test]
    fn theta_is_the_unique_maximum() {
        let rs = rs();
        assert_eq!(rs.roots[rs.theta].coeffs, [2, 3, 4, 6, 5, 4, 3, 2]);
        for i in 0..240 {
            assert!(rs.le(i, rs.theta));
        }
        let maxima = (0..240).filter(|&a| (0..240).all(|b| rs.le(b, a))).count();
        assert_eq!(maxima, 1);
        assert!(rs.roots[rs.theta].coeffs.iter().all(|&c| c >= 1));
    }

    #[test]
    fn positivity_matches_last_nonzero_coordinate() {
        let rs = rs();
        for r in &rs.roots {
            let k = (0..8).rev().find(|&k| r.d2[k] != 0).unwrap();
            assert_eq!(r.is_positive(), r.d2[k] > 0);
        }
        let neg_theta = rs.negate(rs.theta);
        assert!(!rs.is_positive(neg_theta));
    }

    #[test]
    fn first_coefficient_is_last_doubled_coordinate() {
        let rs = rs();
        for r in &rs.roots {
            assert_eq!(r.coeffs[0], r.d2[7]);
        }
    }

    #[test]
    fn phi_1_2_is_e8_plus_minus_ei() {
        let rs = rs();
        let got: Vec<[i32; 8]> = rs.phi(1, 2).iter().map(|&i| rs.roots[i].d2).collect();
        let mut expect = Vec::new();
        for i in 0..7 {
            for s in [2, -2] {
                let mut d2 = [0i32; 8];
                d2[i] = s;
                d2[7] = 2;
                expect.push(d2);
            }
        }
        expect.sort_unstable();
        assert_eq!(got, expect);
    }

    #[test]
    fn psi_is_the_half_spin_shape() {
        let rs = rs();
        for &id in &rs.psi {
            let r = &rs.roots[id];
            assert_eq!(r.d2[7], 1);
            assert!(r.d2.iter().all(|&x| x.abs() == 1));
            let minus = r.d2.iter().filter(|&&x| x < 0).count();
            assert_eq!(minus % 2, 0);
        }
    }

    #[test]
    fn reflection_laws() {
        let rs = rs();
        for b in 0..240 {
            assert_eq!(rs.reflect(b, b), rs.negate(b));
        }
        for b in 0..240 {
            for g in 0..240 {
                let img = rs.reflect(b, g);
                if rs.inner(g, b) == 0 {
                    assert_eq!(img, g);
                }
                assert_eq!(rs.reflect(b, img), g);
            }
        }
    }

    #[test]
    fn s_theta_maps_psi_into_plus_minus_psi() {
        let rs = rs();
        for &psi in &rs.psi {
            let img = rs.reflect(rs.theta, psi);
            let in_psi = rs.roots[img].coeffs[0] == 1;
            let neg_in_psi = rs.roots[rs.negate(img)].coeffs[0] == 1;
            assert!(in_psi || neg_in_psi);
        }
    }

    #[test]
    fn psi_is_closed_under_the_branchless_simple_reflections() {
        // Reflections in every simple root but the first preserve the
        // first coefficient, hence the set Ψ itself.
        let rs = rs();
        for &alpha in &rs.simple[1..] {
            for &psi in &rs.psi {
                let img = rs.reflect(alpha, psi);
                assert_eq!(rs.roots[img].coeffs[0], 1);
            }
        }
    }

    #[test]
    fn lambda_plus_worked_examples() {
        let rs = rs();
        // The Ψ-root with plus signs exactly at {1,2,7,8}.
        let d2 = [1, 1, -1, -1, -1, -1, 1, 1];
        let id = rs.id_of(&d2).unwrap();
        assert_eq!(
            rs.lambda_plus(id).unwrap(),
            Coset::from_labels(&[1, 2, 7, 8])
        );
        // All-plus root maps to the zero coset.
        let all_plus = [1i32; 8];
        let id = rs.id_of(&all_plus).unwrap();
        assert_eq!(rs.lambda_plus(id).unwrap(), Coset::ZERO);
        // Roots outside Ψ are rejected.
        assert_eq!(rs.lambda_plus(rs.theta), Err(E8Error::NotInPsi(rs.theta)));
    }

    #[test]
    fn orthogonality_is_four_coordinate_agreements() {
        let rs = rs();
        for &a in &rs.psi {
            for &b in &rs.psi {
                if a == b {
                    continue;
                }
                let agree = rs.roots[a]
                    .d2
                    .iter()
                    .zip(rs.roots[b].d2.iter())
                    .filter(|(x, y)| x == y)
                    .count();
                assert_eq!(rs.inner(a, b) == 0, agree == 4);
                // λ+ carries orthogonality to separation.
                let ca = rs.lambda_plus(a).unwrap();
                let cb = rs.lambda_plus(b).unwrap();
                assert_eq!(rs.inner(a, b) == 0, ca.separated(cb));
            }
        }
    }

    #[test]
    fn omega_psi_has_240_sets_matching_omega_a_plus() {
        let rs = rs();
        let omega = rs.omega_psi();
        assert_eq!(omega.len(), 240);
        let mut images: Vec<[Coset; 8]> = omega
            .iter()
            .map(|set| {
                let mut cosets: Vec<Coset> =
                    set.iter().map(|&r| rs.lambda_plus(r).unwrap()).collect();
                cosets.sort_unstable();
                cosets.try_into().unwrap()
            })
            .collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 240);
        assert_eq!(images, crate::gf2::omega_a().plus);
    }

    #[test]
    fn psi_prime_layers_and_bijections() {
        let rs = rs();
        let pp = PsiPrime::build(&rs).unwrap();
        assert_eq!(pp.phi21.len(), 56);
        assert_eq!(pp.phi23.len(), 8);
        assert_eq!(pp.spread_of(rs.simple[1]), Some(Triple::new(1, 2, 3)));
        assert_eq!(pp.basepoint_of(rs.theta), Some(8));
        // The chain is totally ordered with top θ.
        for &a in &pp.phi23 {
            for &b in &pp.phi23 {
                assert!(rs.le(a, b) || rs.le(b, a));
            }
            assert!(rs.le(a, rs.theta));
        }
    }

    #[test]
    fn phi21_is_the_ideal_lattice_of_the_grid_uniquely() {
        let rs = rs();
        let pp = PsiPrime::build(&rs).unwrap();
        let phi21 = &pp.phi21;
        let poset = RelPoset::from_le(56, |i, j| rs.le(phi21[i], phi21[j]));
        poset.is_distributive_lattice().unwrap();
        let grid = grid_ideal_lattice();
        assert_eq!(poset.count_isomorphisms(&grid, 10), 1);
    }

    #[test]
    fn psi_prime_orthosets_are_the_packings() {
        let rs = rs();
        let pp = PsiPrime::build(&rs).unwrap();
        let universe = pp.psi_prime();
        let maximal = rs.maximal_orthogonal_subsets(&universe);
        assert_eq!(maximal.len(), 240);
        for set in &maximal {
            assert_eq!(set.len(), 8);
            let in_chain = set.iter().filter(|r| pp.phi23.contains(r)).count();
            assert_eq!(in_chain, 1);
        }
        let x0 = packing_from_label_triples(&X0_TRIPLES);
        let set = pp.orthoset_of_packing(&x0);
        assert!(maximal.iter().any(|m| m.as_slice() == set.as_slice()));
    }

    #[test]
    fn residues_of_x0_and_x1() {
        let rs = rs();
        let x0 = packing_from_label_triples(&X0_TRIPLES);
        let x1 = packing_from_label_triples(&X1_TRIPLES);
        let to_psi_set = |p: &crate::pg32::Packing| -> Vec<usize> {
            p.lambda_minus()
                .iter()
                .map(|c| rs.psi_root_of_coset(c.translate(8)).unwrap())
                .collect()
        };
        let r0 = to_psi_set(&x0);
        let r1 = to_psi_set(&x1);
        assert_eq!(rs.residues(&r0, &rs.psi).len(), 0);
        assert_eq!(rs.residues(&r1, &rs.psi).len(), 14);
    }
}
