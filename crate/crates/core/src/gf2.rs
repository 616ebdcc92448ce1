//! Exact linear algebra over F2: the coset space `V = F2^8/U`.
//!
//! Vectors of F2^8 are 8-bit masks over the labels 1..8, and `U` is the span
//! of the all-ones vector, so each coset of `U` is an unordered partition of
//! {1..8} into two halves. A coset is stored by its canonical representative:
//! the lighter half, with weight-4 ties resolved toward the half containing
//! the label 8. The weight of the representative grades `V` into classes
//! 0..4; the even classes form the 64-element subspace `Λ+` carrying the
//! quadratic form `Q(v) = wt(v)/2 mod 2`, and the odd classes form `Λ−`.
//!
//! Two cosets are *separated* when their representatives differ in exactly
//! four positions. The maximal pairwise-separated subsets of `V` are exactly
//! the cosets of the 30 maximal totally singular subspaces of `(Λ+, Q)`;
//! this module enumerates them twice (once through the subspaces, once by a
//! raw maximal-clique search over the separation graph) so the two routes
//! can be compared.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cliques::maximal_cliques;

/// Bit for a label in 1..=8.
#[inline]
pub fn label_bit(label: u8) -> u8 {
    debug_assert!((1..=8).contains(&label));
    1 << (label - 1)
}

/// A vector of F2^8; bit `i-1` stands for the label `i`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitVec8(pub u8);

impl BitVec8 {
    pub fn from_labels(labels: &[u8]) -> BitVec8 {
        let mut m = 0;
        for &l in labels {
            m |= label_bit(l);
        }
        BitVec8(m)
    }

    pub fn labels(self) -> Vec<u8> {
        (1..=8).filter(|&l| self.0 & label_bit(l) != 0).collect()
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("quadratic form is only defined on the even part of V (got class {0})")]
    OddCoset(u8),
}

/// A coset of `U` in `V = F2^8/U`, stored by canonical representative.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Coset(u8);

impl Coset {
    pub const ZERO: Coset = Coset(0);

    /// Canonical representative of `{v, v + 11111111}`: the lighter mask,
    /// with weight-4 ties resolved toward the half containing 8.
    pub fn canonical(v: BitVec8) -> Coset {
        let w = v.weight();
        if w > 4 || (w == 4 && v.0 & 0x80 == 0) {
            Coset(!v.0)
        } else {
            Coset(v.0)
        }
    }

    pub fn from_labels(labels: &[u8]) -> Coset {
        Coset::canonical(BitVec8::from_labels(labels))
    }

    pub fn rep(self) -> BitVec8 {
        BitVec8(self.0)
    }

    /// Grading class 0..4, the weight of the canonical representative.
    pub fn class(self) -> u8 {
        self.0.count_ones() as u8
    }

    /// Membership in `Λ+` (even class).
    pub fn is_even(self) -> bool {
        self.class() % 2 == 0
    }

    /// Group law of `V`: XOR of representatives, re-canonicalized.
    pub fn add(self, other: Coset) -> Coset {
        Coset::canonical(BitVec8(self.0 ^ other.0))
    }

    /// The translation operator `t_i`, adding the basis vector at `label`.
    /// Swaps the even and odd parts of `V`.
    pub fn translate(self, label: u8) -> Coset {
        Coset::canonical(BitVec8(self.0 ^ label_bit(label)))
    }

    /// The quadratic form on `Λ+`: 1 on class 2, 0 on classes 0 and 4.
    pub fn q(self) -> Result<bool, Gf2Error> {
        let c = self.class();
        if c % 2 != 0 {
            return Err(Gf2Error::OddCoset(c));
        }
        Ok(c / 2 % 2 == 1)
    }

    /// True iff the Hamming distance between representatives is 4, i.e. the
    /// difference lies in class 4. Well defined because 4 = 8 - 4.
    pub fn separated(self, other: Coset) -> bool {
        self.add(other).class() == 4
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "v∅");
        }
        write!(f, "v")?;
        for l in self.rep().labels() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All 128 cosets in mask order.
pub fn all_cosets() -> Vec<Coset> {
    (0u16..=255)
        .map(|m| BitVec8(m as u8))
        .filter(|&v| Coset::canonical(v).0 == v.0)
        .map(|v| Coset(v.0))
        .collect()
}

/// The 35 class-4 cosets, the singular points of the quadric.
pub fn class4_cosets() -> Vec<Coset> {
    all_cosets()
        .into_iter()
        .filter(|c| c.class() == 4)
        .collect()
}

/// The polarization `B(a,b) = Q(a+b) + Q(a) + Q(b)` on `Λ+`.
pub fn bilinear(a: Coset, b: Coset) -> Result<bool, Gf2Error> {
    Ok(a.add(b).q()? ^ a.q()? ^ b.q()?)
}

fn sorted8(mut v: Vec<Coset>) -> [Coset; 8] {
    v.sort_unstable();
    v.try_into().expect("expected an 8-element set")
}

/// The 30 maximal totally singular subspaces of `(Λ+, Q)`, each as the
/// sorted list of its 8 elements (zero included). Enumerated algebraically:
/// a 3-dimensional subspace is totally singular iff its 7 nonzero elements
/// all lie in class 4.
pub fn singular_subspaces() -> &'static Vec<[Coset; 8]> {
    static CELL: OnceLock<Vec<[Coset; 8]>> = OnceLock::new();
    CELL.get_or_init(|| {
        let v4 = class4_cosets();
        let singular = |c: Coset| c.class() == 4;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (i, &a) in v4.iter().enumerate() {
            for (j, &b) in v4.iter().enumerate().skip(i + 1) {
                if !singular(a.add(b)) {
                    continue;
                }
                for &c in v4.iter().skip(j + 1) {
                    if c == a.add(b) {
                        continue;
                    }
                    let elems = [
                        Coset::ZERO,
                        a,
                        b,
                        c,
                        a.add(b),
                        a.add(c),
                        b.add(c),
                        a.add(b).add(c),
                    ];
                    if elems[4..].iter().all(|&x| singular(x)) {
                        let key = sorted8(elems.to_vec());
                        if seen.insert(key) {
                            out.push(key);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    })
}

/// The maximally separated subsets of `V`, split by parity.
pub struct OmegaA {
    /// All 480 sets, sorted.
    pub all: Vec<[Coset; 8]>,
    /// The 240 sets inside `Λ+`.
    pub plus: Vec<[Coset; 8]>,
    /// The 240 sets inside `Λ−`.
    pub minus: Vec<[Coset; 8]>,
}

/// All cosets of the 30 singular subspaces: the maximally separated subsets.
pub fn omega_a() -> &'static OmegaA {
    static CELL: OnceLock<OmegaA> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut seen = std::collections::HashSet::new();
        let mut all = Vec::new();
        for sub in singular_subspaces() {
            for t in all_cosets() {
                let translate = sorted8(sub.iter().map(|&c| c.add(t)).collect());
                if seen.insert(translate) {
                    all.push(translate);
                }
            }
        }
        all.sort_unstable();
        let plus: Vec<_> = all
            .iter()
            .filter(|s| s.iter().all(|c| c.is_even()))
            .copied()
            .collect();
        let minus: Vec<_> = all
            .iter()
            .filter(|s| s.iter().all(|c| !c.is_even()))
            .copied()
            .collect();
        OmegaA { all, plus, minus }
    })
}

/// Independent oracle for [`omega_a`]: enumerate every maximal clique of the
/// separation graph on all 128 cosets, with no reference to subspaces.
pub fn separation_clique_oracle() -> Vec<[Coset; 8]> {
    let cosets = all_cosets();
    let adj: Vec<u128> = cosets
        .iter()
        .map(|&a| {
            let mut row = 0u128;
            for (j, &b) in cosets.iter().enumerate() {
                if a != b && a.separated(b) {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();
    maximal_cliques(cosets.len(), &adj)
        .into_iter()
        .map(|mask| {
            sorted8(
                (0..cosets.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| cosets[i])
                    .collect(),
            )
        })
        .collect()
}

/// Maximal cliques of the separation graph restricted to the 35 class-4
/// cosets. All of them have size 7 and, with zero adjoined, they are the
/// singular subspaces.
pub fn class4_clique_oracle() -> Vec<Vec<Coset>> {
    let v4 = class4_cosets();
    let adj: Vec<u128> = v4
        .iter()
        .map(|&a| {
            let mut row = 0u128;
            for (j, &b) in v4.iter().enumerate() {
                if a != b && a.separated(b) {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();
    maximal_cliques(v4.len(), &adj)
        .into_iter()
        .map(|mask| {
            (0..v4.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| v4[i])
                .collect()
        })
        .collect()
}

/// A skew-symmetric 4x4 matrix over F2, i.e. zero diagonal and six free
/// entries, packed as bits (u12, u13, u14, u23, u24, u34).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct AltMatrix(pub u8);

impl AltMatrix {
    #[inline]
    fn bit(self, k: u8) -> bool {
        self.0 >> k & 1 == 1
    }

    /// The Pfaffian form `u12·u34 + u13·u24 + u14·u23`; zero iff singular.
    pub fn is_singular(self) -> bool {
        let p =
            (self.bit(0) & self.bit(5)) ^ (self.bit(1) & self.bit(4)) ^ (self.bit(2) & self.bit(3));
        !p
    }
}

/// Counts from the skew-symmetric matrix model of the quadric.
pub struct AltReport {
    pub nonzero_singular: usize,
    pub singular_3subspaces: usize,
}

/// Count the nonzero singular matrices and the 3-dimensional subspaces of
/// Alt(4,2) consisting entirely of singular matrices.
pub fn alt_model_check() -> AltReport {
    let singular: Vec<u8> = (1u8..64).filter(|&m| AltMatrix(m).is_singular()).collect();
    let nonzero_singular = singular.len();

    let all_singular = |m: u8| AltMatrix(m).is_singular();
    let mut seen = std::collections::HashSet::new();
    for (i, &a) in singular.iter().enumerate() {
        for (j, &b) in singular.iter().enumerate().skip(i + 1) {
            if !all_singular(a ^ b) {
                continue;
            }
            for &c in singular.iter().skip(j + 1) {
                if c == a ^ b {
                    continue;
                }
                if [a ^ c, b ^ c, a ^ b ^ c].iter().all(|&m| all_singular(m)) {
                    let mut elems = vec![0, a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c];
                    elems.sort_unstable();
                    seen.insert(elems);
                }
            }
        }
    }
    AltReport {
        nonzero_singular,
        singular_3subspaces: seen.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives() {
        assert_eq!(Coset::from_labels(&[]), Coset::ZERO);
        // Weight-4 tie resolves toward the half containing 8.
        assert_eq!(
            Coset::from_labels(&[2, 3, 5, 7]).rep().labels(),
            vec![1, 4, 6, 8]
        );
        // Lower-weight representative wins.
        assert_eq!(
            Coset::from_labels(&[1, 2, 3, 4, 5]).rep().labels(),
            vec![6, 7, 8]
        );
    }

    #[test]
    fn class_counts() {
        let mut counts = [0usize; 5];
        for c in all_cosets() {
            counts[c.class() as usize] += 1;
        }
        assert_eq!(counts, [1, 8, 28, 56, 35]);
    }

    #[test]
    fn addition_laws() {
        let cosets = all_cosets();
        for &a in &cosets {
            assert_eq!(a.add(a), Coset::ZERO);
            assert_eq!(a.add(Coset::ZERO), a);
        }
        assert_eq!(
            Coset::from_labels(&[8]).add(Coset::from_labels(&[1])),
            Coset::from_labels(&[1, 8])
        );
        assert_eq!(
            Coset::from_labels(&[1, 2, 7]).add(Coset::from_labels(&[8])),
            Coset::from_labels(&[1, 2, 7, 8])
        );
    }

    #[test]
    fn translation_is_involutive_and_flips_parity() {
        for c in all_cosets() {
            for i in 1..=8 {
                let t = c.translate(i);
                assert_eq!(t.translate(i), c);
                assert_ne!(t.class() % 2, c.class() % 2);
            }
        }
        assert_eq!(
            Coset::from_labels(&[1, 2, 7]).translate(8),
            Coset::from_labels(&[1, 2, 7, 8])
        );
        assert_eq!(Coset::from_labels(&[8]).translate(8), Coset::ZERO);
    }

    #[test]
    fn quadratic_form_values() {
        assert_eq!(Coset::ZERO.q(), Ok(false));
        assert_eq!(Coset::from_labels(&[1, 2, 7, 8]).q(), Ok(false));
        for c in all_cosets() {
            match c.class() {
                0 | 4 => assert_eq!(c.q(), Ok(false)),
                2 => assert_eq!(c.q(), Ok(true)),
                odd => assert_eq!(c.q(), Err(Gf2Error::OddCoset(odd))),
            }
        }
    }

    #[test]
    fn separation_examples() {
        let v127 = Coset::from_labels(&[1, 2, 7]);
        let v136 = Coset::from_labels(&[1, 3, 6]);
        let v8 = Coset::from_labels(&[8]);
        assert!(v127.separated(v136));
        assert!(v127.separated(v8));
        assert!(!v127.separated(v127));
    }

    #[test]
    fn separation_is_translation_invariant() {
        let cosets = all_cosets();
        for &a in &cosets {
            for &b in &cosets {
                let s = a.separated(b);
                for i in 1..=8 {
                    assert_eq!(s, a.translate(i).separated(b.translate(i)));
                }
            }
        }
    }

    #[test]
    fn thirty_singular_subspaces() {
        let subs = singular_subspaces();
        assert_eq!(subs.len(), 30);
        for s in subs {
            assert_eq!(s[0], Coset::ZERO);
            for &x in s {
                assert_eq!(x.q(), Ok(false));
                for &y in s {
                    assert!(s.contains(&x.add(y)), "not closed under addition");
                    if x != y {
                        assert!(x.separated(y));
                    }
                }
            }
        }
    }

    #[test]
    fn known_subspace_is_found() {
        let target: Vec<Coset> = vec![
            Coset::from_labels(&[1, 2, 7, 8]),
            Coset::from_labels(&[1, 3, 6, 8]),
            Coset::from_labels(&[1, 4, 5, 8]),
            Coset::from_labels(&[2, 3, 5, 8]),
            Coset::from_labels(&[2, 4, 6, 8]),
            Coset::from_labels(&[3, 4, 7, 8]),
            Coset::from_labels(&[5, 6, 7, 8]),
            Coset::ZERO,
        ];
        let mut key = target.clone();
        key.sort_unstable();
        let key: [Coset; 8] = key.try_into().unwrap();
        assert!(singular_subspaces().contains(&key));
    }

    #[test]
    fn omega_a_counts_and_split() {
        let oa = omega_a();
        assert_eq!(oa.all.len(), 480);
        assert_eq!(oa.plus.len(), 240);
        assert_eq!(oa.minus.len(), 240);
        assert_eq!(oa.plus.len() + oa.minus.len(), oa.all.len());
        for s in &oa.all {
            assert_eq!(s.len(), 8);
        }
    }

    #[test]
    fn each_subspace_has_sixteen_translates() {
        for sub in singular_subspaces() {
            let mut translates: Vec<[Coset; 8]> = all_cosets()
                .into_iter()
                .map(|t| {
                    let mut v: Vec<Coset> = sub.iter().map(|&c| c.add(t)).collect();
                    v.sort_unstable();
                    v.try_into().unwrap()
                })
                .collect();
            translates.sort_unstable();
            translates.dedup();
            assert_eq!(translates.len(), 16);
        }
    }

    #[test]
    fn clique_oracle_agrees_with_subspace_translates() {
        let mut from_cliques = separation_clique_oracle();
        from_cliques.sort_unstable();
        assert_eq!(from_cliques, omega_a().all);
    }

    #[test]
    fn class4_cliques_all_have_size_seven() {
        let cliques = class4_clique_oracle();
        assert_eq!(cliques.len(), 30);
        for c in &cliques {
            assert_eq!(c.len(), 7);
        }
    }

    #[test]
    fn bilinear_form_is_bilinear_and_nondegenerate() {
        let even: Vec<Coset> = all_cosets().into_iter().filter(|c| c.is_even()).collect();
        assert_eq!(even.len(), 64);
        for &a in &even {
            for &b in &even {
                for &c in &even {
                    let lhs = bilinear(a.add(b), c).unwrap();
                    let rhs = bilinear(a, c).unwrap() ^ bilinear(b, c).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        for &a in &even {
            if a != Coset::ZERO {
                assert!(even.iter().any(|&b| bilinear(a, b).unwrap()));
            }
        }
    }

    #[test]
    fn alt_model_counts() {
        assert!(AltMatrix(0).is_singular());
        let report = alt_model_check();
        assert_eq!(report.nonzero_singular, 35);
        assert_eq!(report.singular_3subspaces, 30);
    }
}
