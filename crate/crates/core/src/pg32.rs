//! The projective space PG(3,2) in its combinatorial model.
//!
//! Lines are 3-subsets of {1..7}; points and planes are *heptads*, 7-sets of
//! lines pairwise meeting in a single symbol. Spreads are indexed by
//! 3-subsets of {1..8}, and a packing — a partition of the 35 lines into
//! seven spreads — is the same thing as a labelling of the Fano plane by
//! seven distinct symbols of {1..8}. The unused symbol is the packing's
//! *basepoint*.
//!
//! The module also carries an independent oracle: the honest geometry of
//! F2^4, whose spreads and packings are found by raw exact-cover
//! backtracking, and a searched bijection `tau` between the 35 geometry
//! lines and the 35 triples that reconciles the two views.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gf2::{label_bit, BitVec8, Coset};

/// A 3-subset of {1..8}, stored as a bitmask. Ordered lexicographically by
/// its sorted labels.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Triple(u8);

impl Triple {
    pub fn new(a: u8, b: u8, c: u8) -> Triple {
        let m = label_bit(a) | label_bit(b) | label_bit(c);
        assert_eq!(m.count_ones(), 3, "labels must be distinct");
        Triple(m)
    }

    pub fn from_mask(mask: u8) -> Triple {
        assert_eq!(mask.count_ones(), 3);
        Triple(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn labels(self) -> [u8; 3] {
        let mut out = [0u8; 3];
        let mut k = 0;
        for l in 1..=8 {
            if self.contains(l) {
                out[k] = l;
                k += 1;
            }
        }
        out
    }

    pub fn contains(self, label: u8) -> bool {
        self.0 & label_bit(label) != 0
    }

    pub fn intersection_size(self, other: Triple) -> u32 {
        (self.0 & other.0).count_ones()
    }

    /// The coset `v_{ijk}` of the triple's labels.
    pub fn to_coset(self) -> Coset {
        Coset::canonical(BitVec8(self.0))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.labels().cmp(&other.labels())
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.labels();
        write!(f, "{a}{b}{c}")
    }
}

impl std::str::FromStr for Triple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s
            .chars()
            .filter(|c| !matches!(c, ' ' | ','))
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| (1..=8).contains(&d))
                    .map(|d| d as u8)
                    .ok_or_else(|| format!("bad label {c:?} in triple {s:?}"))
            })
            .collect::<Result<_, _>>()?;
        if digits.len() != 3 {
            return Err(format!("triple {s:?} must have exactly 3 labels"));
        }
        let m = digits.iter().fold(0u8, |m, &d| m | label_bit(d));
        if m.count_ones() != 3 {
            return Err(format!("triple {s:?} has repeated labels"));
        }
        Ok(Triple(m))
    }
}

/// All 3-subsets of the given symbols, in lexicographic order.
pub fn all_triples_on(symbols: &[u8]) -> Vec<Triple> {
    let mut out = Vec::new();
    for i in 0..symbols.len() {
        for j in i + 1..symbols.len() {
            for k in j + 1..symbols.len() {
                out.push(Triple::new(symbols[i], symbols[j], symbols[k]));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every labelling of the Fano plane on the given 7 symbols: the Steiner
/// triple systems covering each symbol pair exactly once. There are 30.
pub fn fano_planes_on(symbols: [u8; 7]) -> Vec<[Triple; 7]> {
    fn pair_bit(p: usize, q: usize) -> u64 {
        1u64 << (p * 7 + q)
    }
    fn rec(
        symbols: &[u8; 7],
        covered: u64,
        lines: &mut Vec<(usize, usize, usize)>,
        out: &mut Vec<[Triple; 7]>,
    ) {
        if lines.len() == 7 {
            let mut plane: Vec<Triple> = lines
                .iter()
                .map(|&(p, q, r)| Triple::new(symbols[p], symbols[q], symbols[r]))
                .collect();
            plane.sort_unstable();
            out.push(plane.try_into().unwrap());
            return;
        }
        // Extend at the smallest uncovered pair; the choice is forced, so
        // each plane is produced exactly once.
        let (p, q) = {
            let mut found = None;
            'scan: for p in 0..7 {
                for q in p + 1..7 {
                    if covered & pair_bit(p, q) == 0 {
                        found = Some((p, q));
                        break 'scan;
                    }
                }
            }
            found.expect("seven lines cover all pairs")
        };
        for r in q + 1..7 {
            if covered & pair_bit(p, r) == 0 && covered & pair_bit(q, r) == 0 {
                let add = pair_bit(p, q) | pair_bit(p, r) | pair_bit(q, r);
                lines.push((p, q, r));
                rec(symbols, covered | add, lines, out);
                lines.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&symbols, 0, &mut Vec::new(), &mut out);
    out.sort_unstable();
    out
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum HeptadKind {
    Point,
    Plane,
}

/// A point or plane of PG(3,2), as the 7 lines incident with it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Heptad {
    pub triples: [Triple; 7],
}

impl Heptad {
    pub fn shared_with(&self, other: &Heptad) -> usize {
        self.triples
            .iter()
            .filter(|t| other.triples.contains(t))
            .count()
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.contains(&t)
    }
}

/// The heptad of the worked point example; fixes which same-kind class is
/// called "points". The choice is a naming convention (the space is
/// self-dual), but once made it pins the Kirkman girl numbering.
const POINT_ANCHOR: [[u8; 3]; 7] = [
    [1, 2, 4],
    [1, 3, 6],
    [1, 5, 7],
    [2, 3, 5],
    [2, 6, 7],
    [3, 4, 7],
    [4, 5, 6],
];

/// The 30 heptads split into 15 points and 15 planes.
pub struct HeptadSet {
    /// All 30 heptads, sorted by triple list.
    pub heptads: Vec<Heptad>,
    pub kinds: Vec<HeptadKind>,
}

impl HeptadSet {
    /// Indices of the point heptads, in sorted heptad order. The ordering
    /// numbers the fifteen Kirkman girls 1..15.
    pub fn point_indices(&self) -> Vec<usize> {
        (0..self.heptads.len())
            .filter(|&i| self.kinds[i] == HeptadKind::Point)
            .collect()
    }

    pub fn plane_indices(&self) -> Vec<usize> {
        (0..self.heptads.len())
            .filter(|&i| self.kinds[i] == HeptadKind::Plane)
            .collect()
    }

    pub fn find(&self, triples: &[Triple; 7]) -> Option<usize> {
        self.heptads.iter().position(|h| &h.triples == triples)
    }
}

/// Enumerate the 30 heptads and classify them. Two heptads are of the same
/// kind iff they share exactly one triple; the class containing the worked
/// example is labelled "points".
pub fn enumerate_heptads() -> HeptadSet {
    let heptads: Vec<Heptad> = fano_planes_on([1, 2, 3, 4, 5, 6, 7])
        .into_iter()
        .map(|triples| Heptad { triples })
        .collect();
    assert_eq!(heptads.len(), 30);

    // Same-kind components under the |∩| = 1 relation.
    let mut component = vec![usize::MAX; heptads.len()];
    let mut next = 0;
    for start in 0..heptads.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut queue = vec![start];
        component[start] = next;
        while let Some(i) = queue.pop() {
            for j in 0..heptads.len() {
                if component[j] == usize::MAX && heptads[i].shared_with(&heptads[j]) == 1 {
                    component[j] = next;
                    queue.push(j);
                }
            }
        }
        next += 1;
    }
    assert_eq!(next, 2, "same-kind relation must split the heptads in two");

    let anchor: Vec<Triple> = POINT_ANCHOR
        .iter()
        .map(|&[a, b, c]| Triple::new(a, b, c))
        .collect();
    let anchor_idx = heptads
        .iter()
        .position(|h| h.triples.to_vec() == anchor)
        .expect("anchor heptad must be one of the 30");
    let point_component = component[anchor_idx];
    let kinds = component
        .iter()
        .map(|&c| {
            if c == point_component {
                HeptadKind::Point
            } else {
                HeptadKind::Plane
            }
        })
        .collect();
    HeptadSet { heptads, kinds }
}

/// A spread of PG(3,2): five pairwise disjoint lines covering the 15 points,
/// indexed by a 3-subset of {1..8}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spread {
    pub index: Triple,
    pub lines: [Triple; 5],
}

/// The spread indexed by `a`: the images `ι(v_T)` over the five 4-sets
/// `T ⊃ a`, where `ι` reads the half of the partition containing 8 and
/// drops the 8.
pub fn spread(a: Triple) -> Spread {
    let mut lines = Vec::with_capacity(5);
    for m in 1..=8 {
        if a.contains(m) {
            continue;
        }
        let t_mask = a.mask() | label_bit(m);
        let rep = Coset::canonical(BitVec8(t_mask)).rep().0;
        debug_assert!(rep & label_bit(8) != 0, "weight-4 canonical rep contains 8");
        lines.push(Triple::from_mask(rep & !label_bit(8)));
    }
    lines.sort_unstable();
    Spread {
        index: a,
        lines: lines.try_into().unwrap(),
    }
}

/// Two spreads are line-disjoint iff their indices meet in a singleton.
pub fn spreads_disjoint(a: Triple, b: Triple) -> bool {
    assert_ne!(a, b);
    a.intersection_size(b) == 1
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PackingError {
    #[error("a packing needs exactly 7 triples, got {0}")]
    WrongCount(usize),
    #[error("triples {0} and {1} intersect in {2} labels, not 1")]
    BadIntersection(Triple, Triple, u32),
    #[error("triples use {0} distinct labels, expected 7")]
    WrongLabelCount(u32),
    #[error("label {0} lies on {1} triples, expected 3")]
    BadLabelDegree(u8, usize),
}

/// A packing of PG(3,2): an 8-labelled Fano plane, stored as its seven
/// sorted triples plus the unused basepoint label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Packing {
    triples: [Triple; 7],
    basepoint: u8,
}

impl Packing {
    /// Validate seven triples as a labelled Fano plane and derive the
    /// basepoint.
    pub fn from_triples(ts: &[Triple]) -> Result<Packing, PackingError> {
        if ts.len() != 7 {
            return Err(PackingError::WrongCount(ts.len()));
        }
        let mut triples: Vec<Triple> = ts.to_vec();
        triples.sort_unstable();
        for i in 0..7 {
            for j in i + 1..7 {
                let shared = triples[i].intersection_size(triples[j]);
                if shared != 1 {
                    return Err(PackingError::BadIntersection(
                        triples[i], triples[j], shared,
                    ));
                }
            }
        }
        let used: u8 = triples.iter().fold(0, |m, t| m | t.mask());
        if used.count_ones() != 7 {
            return Err(PackingError::WrongLabelCount(used.count_ones()));
        }
        for l in 1..=8 {
            if used & label_bit(l) == 0 {
                continue;
            }
            let deg = triples.iter().filter(|t| t.contains(l)).count();
            if deg != 3 {
                return Err(PackingError::BadLabelDegree(l, deg));
            }
        }
        let basepoint = (1..=8).find(|&l| used & label_bit(l) == 0).unwrap();
        Ok(Packing {
            triples: triples.try_into().unwrap(),
            basepoint,
        })
    }

    pub fn triples(&self) -> &[Triple; 7] {
        &self.triples
    }

    pub fn basepoint(&self) -> u8 {
        self.basepoint
    }

    pub fn used_labels(&self) -> Vec<u8> {
        (1..=8).filter(|&l| l != self.basepoint).collect()
    }

    pub fn contains_triple(&self, t: Triple) -> bool {
        self.triples.contains(&t)
    }

    /// The unique line of the plane through two used labels.
    pub fn line_through(&self, a: u8, b: u8) -> Option<Triple> {
        self.triples
            .iter()
            .find(|t| t.contains(a) && t.contains(b))
            .copied()
    }

    /// The three lines through a used label.
    pub fn lines_through(&self, label: u8) -> Vec<Triple> {
        self.triples
            .iter()
            .filter(|t| t.contains(label))
            .copied()
            .collect()
    }

    /// Relabel by a permutation given as the image table `map[i-1] = w(i)`.
    pub fn relabel(&self, map: &[u8; 8]) -> Packing {
        let ts: Vec<Triple> = self
            .triples
            .iter()
            .map(|t| {
                let [a, b, c] = t.labels();
                Triple::new(
                    map[a as usize - 1],
                    map[b as usize - 1],
                    map[c as usize - 1],
                )
            })
            .collect();
        Packing::from_triples(&ts).expect("relabelling preserves the Fano structure")
    }

    /// The eight-coset image: one coset per spread plus the basepoint coset.
    pub fn lambda_minus(&self) -> [Coset; 8] {
        let mut out: Vec<Coset> = self.triples.iter().map(|t| t.to_coset()).collect();
        out.push(Coset::from_labels(&[self.basepoint]));
        out.sort_unstable();
        out.try_into().unwrap()
    }
}

impl fmt::Display for Packing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.triples.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}} bp {}", self.basepoint)
    }
}

/// Triples of the minimal packing.
pub const X0_TRIPLES: [[u8; 3]; 7] = [
    [1, 2, 7],
    [1, 3, 6],
    [1, 4, 5],
    [2, 3, 5],
    [2, 4, 6],
    [3, 4, 7],
    [5, 6, 7],
];

/// Triples of the maximal packing.
pub const X1_TRIPLES: [[u8; 3]; 7] = [
    [2, 3, 4],
    [2, 5, 6],
    [2, 7, 8],
    [3, 5, 7],
    [3, 6, 8],
    [4, 5, 8],
    [4, 6, 7],
];

pub fn packing_from_label_triples(ts: &[[u8; 3]]) -> Packing {
    let triples: Vec<Triple> = ts.iter().map(|&[a, b, c]| Triple::new(a, b, c)).collect();
    Packing::from_triples(&triples).expect("listed triples form a packing")
}

/// The 240 packings with id lookups by triple set and by coset image.
pub struct PackingIndex {
    pub packings: Vec<Packing>,
    pub lambda: Vec<[Coset; 8]>,
    by_triples: HashMap<[Triple; 7], usize>,
    by_lambda: HashMap<[Coset; 8], usize>,
    x0: usize,
    x1: usize,
}

impl PackingIndex {
    pub fn build() -> PackingIndex {
        let mut packings = Vec::with_capacity(240);
        for bp in 1..=8 {
            let symbols: Vec<u8> = (1..=8).filter(|&l| l != bp).collect();
            for plane in fano_planes_on(symbols.try_into().unwrap()) {
                let p = Packing::from_triples(&plane).expect("enumeration yields valid packings");
                assert_eq!(p.basepoint(), bp);
                packings.push(p);
            }
        }
        packings.sort_unstable();
        assert_eq!(packings.len(), 240);

        let mut by_triples = HashMap::new();
        let mut by_lambda = HashMap::new();
        let mut lambda = Vec::with_capacity(240);
        for (i, p) in packings.iter().enumerate() {
            by_triples.insert(p.triples, i);
            let lm = p.lambda_minus();
            assert!(
                by_lambda.insert(lm, i).is_none(),
                "lambda_minus must be injective"
            );
            lambda.push(lm);
        }
        let x0 = by_triples[&packing_from_label_triples(&X0_TRIPLES).triples];
        let x1 = by_triples[&packing_from_label_triples(&X1_TRIPLES).triples];
        PackingIndex {
            packings,
            lambda,
            by_triples,
            by_lambda,
            x0,
            x1,
        }
    }

    pub fn len(&self) -> usize {
        self.packings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packings.is_empty()
    }

    pub fn id_of(&self, p: &Packing) -> Option<usize> {
        self.by_triples.get(&p.triples).copied()
    }

    pub fn id_by_lambda(&self, set: &[Coset; 8]) -> Option<usize> {
        self.by_lambda.get(set).copied()
    }

    pub fn x0(&self) -> usize {
        self.x0
    }

    pub fn x1(&self) -> usize {
        self.x1
    }
}

/// A Kirkman schedule: seven days of five walking groups of three girls.
#[derive(Clone, Debug, Serialize)]
pub struct KirkmanSchedule {
    pub days: Vec<[[u8; 3]; 5]>,
}

/// Emit the schedule of a packing: girls are the point heptads (numbered by
/// sorted order), days are the packing's spreads, and the three girls of a
/// group are the three point heptads through one line of the spread.
pub fn kirkman(p: &Packing, hs: &HeptadSet) -> KirkmanSchedule {
    let points = hs.point_indices();
    let girl_of_line = |t: Triple| -> [u8; 3] {
        let mut girls: Vec<u8> = points
            .iter()
            .enumerate()
            .filter(|(_, &h)| hs.heptads[h].contains(t))
            .map(|(g, _)| g as u8 + 1)
            .collect();
        girls.sort_unstable();
        assert_eq!(girls.len(), 3, "every line lies in exactly 3 point heptads");
        girls.try_into().unwrap()
    };
    let mut days = Vec::with_capacity(7);
    for &index in p.triples() {
        let mut groups: Vec<[u8; 3]> = spread(index)
            .lines
            .iter()
            .map(|&t| girl_of_line(t))
            .collect();
        groups.sort_unstable();
        days.push(groups.try_into().unwrap());
    }
    KirkmanSchedule { days }
}

/// Check the defining property: each day partitions the girls and the 105
/// pairs are covered exactly once.
pub fn verify_schedule(s: &KirkmanSchedule) -> Result<(), String> {
    if s.days.len() != 7 {
        return Err(format!("expected 7 days, got {}", s.days.len()));
    }
    let mut pair_count = [[0u8; 16]; 16];
    for (d, day) in s.days.iter().enumerate() {
        let mut seen = 0u16;
        for group in day {
            for &g in group {
                if !(1..=15).contains(&g) {
                    return Err(format!("day {}: girl {} out of range", d + 1, g));
                }
                if seen & (1 << g) != 0 {
                    return Err(format!("day {}: girl {} walks twice", d + 1, g));
                }
                seen |= 1 << g;
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    pair_count[group[i] as usize][group[j] as usize] += 1;
                }
            }
        }
        if seen != 0b1111_1111_1111_1110 {
            return Err(format!("day {} is not a partition of the 15 girls", d + 1));
        }
    }
    for a in 1..=15 {
        for b in a + 1..=15 {
            if pair_count[a][b] != 1 {
                return Err(format!(
                    "pair ({a},{b}) walks together {} times",
                    pair_count[a][b]
                ));
            }
        }
    }
    Ok(())
}

/// The honest F2^4 geometry, used as an oracle for the combinatorial model.
pub mod geometry {
    /// The 35 lines `{a, b, a^b}` on the nonzero vectors 1..15 of F2^4,
    /// each returned as a sorted value triple.
    pub fn lines() -> Vec<[u8; 3]> {
        let mut out = Vec::new();
        for a in 1u8..=15 {
            for b in a + 1..=15 {
                let c = a ^ b;
                if c > b {
                    out.push([a, b, c]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn line_point_masks(lines: &[[u8; 3]]) -> Vec<u16> {
        lines
            .iter()
            .map(|l| l.iter().fold(0u16, |m, &p| m | 1 << (p - 1)))
            .collect()
    }

    /// All partitions of the 15 points into 5 lines, as sorted line indices.
    pub fn spreads() -> Vec<[usize; 5]> {
        fn rec(
            masks: &[u16],
            covered: u16,
            full: u16,
            chosen: &mut Vec<usize>,
            out: &mut Vec<[usize; 5]>,
        ) {
            if covered == full {
                out.push(chosen.clone().try_into().unwrap());
                return;
            }
            let lowest = covered.trailing_ones();
            for (i, &m) in masks.iter().enumerate() {
                if m & (1 << lowest) != 0 && m & covered == 0 {
                    chosen.push(i);
                    rec(masks, covered | m, full, chosen, out);
                    chosen.pop();
                }
            }
        }
        let lines = lines();
        let masks = line_point_masks(&lines);
        let full: u16 = (1 << 15) - 1;
        let mut out = Vec::new();
        rec(&masks, 0, full, &mut Vec::new(), &mut out);
        out.sort_unstable();
        out
    }

    /// All partitions of the 35 lines into 7 spreads, as sorted spread
    /// indices into [`spreads`].
    pub fn packings() -> Vec<[usize; 7]> {
        fn rec(
            line_masks: &[u64],
            covered: u64,
            full: u64,
            chosen: &mut Vec<usize>,
            out: &mut Vec<[usize; 7]>,
        ) {
            if covered == full {
                out.push(chosen.clone().try_into().unwrap());
                return;
            }
            let lowest = covered.trailing_ones() as u64;
            for (i, &m) in line_masks.iter().enumerate() {
                if m & (1 << lowest) != 0 && m & covered == 0 {
                    chosen.push(i);
                    rec(line_masks, covered | m, full, chosen, out);
                    chosen.pop();
                }
            }
        }
        let spreads = spreads();
        let line_masks: Vec<u64> = spreads
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &l| m | 1 << l))
            .collect();
        let full: u64 = (1 << 35) - 1;
        let mut out = Vec::new();
        rec(&line_masks, 0, full, &mut Vec::new(), &mut out);
        out.sort_unstable();
        out
    }

    /// For each point, the indices of the 7 lines through it.
    pub fn pencils() -> Vec<Vec<usize>> {
        let lines = lines();
        (1u8..=15)
            .map(|p| {
                (0..lines.len())
                    .filter(|&i| lines[i].contains(&p))
                    .collect()
            })
            .collect()
    }

    /// For each plane (kernel of a nonzero functional), the indices of its
    /// 7 lines.
    pub fn planes() -> Vec<Vec<usize>> {
        let lines = lines();
        (1u8..=15)
            .map(|w| {
                let in_plane = |x: u8| (x & w).count_ones() % 2 == 0;
                let ls: Vec<usize> = (0..lines.len())
                    .filter(|&i| lines[i].iter().all(|&p| in_plane(p)))
                    .collect();
                assert_eq!(ls.len(), 7);
                ls
            })
            .collect()
    }
}

/// A bijection from the 35 geometry lines to the 35 triples of {1..7} that
/// carries line concurrency to singleton symbol-intersection and sends
/// point pencils to point heptads.
pub struct Tau {
    /// Triple of geometry line `i` (indices into `geometry::lines()`).
    pub triple_of_line: Vec<Triple>,
}

impl Tau {
    pub fn line_of_triple(&self, t: Triple) -> Option<usize> {
        self.triple_of_line.iter().position(|&x| x == t)
    }
}

/// Reconstruct `tau` by backtracking search over adjacency-preserving
/// assignments, then orient it so pencils land in the point class.
pub fn build_tau(hs: &HeptadSet) -> Result<Tau, String> {
    fn rec(
        depth: usize,
        order: &[usize],
        gadj: &[Vec<bool>],
        tadj: &[Vec<bool>],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let line = order[depth];
        for cand in 0..tadj.len() {
            if used[cand] {
                continue;
            }
            let ok = order[..depth]
                .iter()
                .all(|&prev| gadj[line][prev] == tadj[cand][assignment[prev]]);
            if !ok {
                continue;
            }
            assignment[line] = cand;
            used[cand] = true;
            if rec(depth + 1, order, gadj, tadj, assignment, used) {
                return true;
            }
            used[cand] = false;
            assignment[line] = usize::MAX;
        }
        false
    }

    let glines = geometry::lines();
    let gmask: Vec<u16> = glines
        .iter()
        .map(|l| l.iter().fold(0u16, |m, &p| m | 1 << (p - 1)))
        .collect();
    let n = glines.len();
    let gadj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && gmask[i] & gmask[j] != 0).collect())
        .collect();

    let triples = all_triples_on(&[1, 2, 3, 4, 5, 6, 7]);
    let tadj: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && triples[i].intersection_size(triples[j]) == 1)
                .collect()
        })
        .collect();

    // Visit geometry lines in an order where each is adjacent to an earlier
    // one, so candidate filtering bites immediately.
    let mut order = vec![0usize];
    let mut placed = vec![false; n];
    placed[0] = true;
    while order.len() < n {
        let next = (0..n)
            .find(|&i| !placed[i] && order.iter().any(|&o| gadj[o][i]))
            .expect("concurrency graph is connected");
        placed[next] = true;
        order.push(next);
    }

    let mut assignment = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !rec(0, &order, &gadj, &tadj, &mut assignment, &mut used) {
        return Err("no concurrency-preserving bijection exists".into());
    }
    let mut triple_of_line: Vec<Triple> = assignment.iter().map(|&a| triples[a]).collect();

    // Pencils land in one same-kind class; flip symbols 1,2 if it is not the
    // point class.
    let pencil_kind = |tau: &[Triple]| -> Result<HeptadKind, String> {
        let pencil = &geometry::pencils()[0];
        let mut image: Vec<Triple> = pencil.iter().map(|&l| tau[l]).collect();
        image.sort_unstable();
        let image: [Triple; 7] = image.try_into().unwrap();
        let idx = hs
            .find(&image)
            .ok_or("pencil image is not a heptad".to_string())?;
        Ok(hs.kinds[idx])
    };
    if pencil_kind(&triple_of_line)? == HeptadKind::Plane {
        let swap = |t: Triple| {
            let [a, b, c] = t.labels();
            let f = |x: u8| match x {
                1 => 2,
                2 => 1,
                other => other,
            };
            Triple::new(f(a), f(b), f(c))
        };
        for t in triple_of_line.iter_mut() {
            *t = swap(*t);
        }
        if pencil_kind(&triple_of_line)? != HeptadKind::Point {
            return Err("transposing symbols 1,2 did not swap the heptad classes".into());
        }
    }

    let tau = Tau { triple_of_line };
    verify_tau(&tau, hs)?;
    Ok(tau)
}

/// Certificate checks for a candidate `tau`.
pub fn verify_tau(tau: &Tau, hs: &HeptadSet) -> Result<(), String> {
    let glines = geometry::lines();
    let n = glines.len();
    let distinct: HashSet<Triple> = tau.triple_of_line.iter().copied().collect();
    if distinct.len() != n {
        return Err("tau is not a bijection".into());
    }
    let gmask: Vec<u16> = glines
        .iter()
        .map(|l| l.iter().fold(0u16, |m, &p| m | 1 << (p - 1)))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let meet = gmask[i] & gmask[j] != 0;
            let single = tau.triple_of_line[i].intersection_size(tau.triple_of_line[j]) == 1;
            if meet != single {
                return Err(format!("adjacency mismatch at lines {i},{j}"));
            }
        }
    }
    // Pencils are point heptads, planes are plane heptads.
    let image_kind = |line_ids: &[usize]| -> Result<HeptadKind, String> {
        let mut image: Vec<Triple> = line_ids.iter().map(|&l| tau.triple_of_line[l]).collect();
        image.sort_unstable();
        let image: [Triple; 7] = image
            .try_into()
            .map_err(|_| "bad heptad size".to_string())?;
        let idx = hs.find(&image).ok_or("image is not a heptad".to_string())?;
        Ok(hs.kinds[idx])
    };
    for pencil in geometry::pencils() {
        if image_kind(&pencil)? != HeptadKind::Point {
            return Err("a pencil maps to a plane heptad".into());
        }
    }
    for plane in geometry::planes() {
        if image_kind(&plane)? != HeptadKind::Plane {
            return Err("a plane maps to a point heptad".into());
        }
    }
    // Spread preimages partition the 15 geometry points, for all 56 indices.
    for index in all_triples_on(&[1, 2, 3, 4, 5, 6, 7, 8]) {
        let mut covered = 0u16;
        for line in spread(index).lines {
            let li = tau
                .line_of_triple(line)
                .ok_or("spread line missing from tau image".to_string())?;
            if covered & gmask[li] != 0 {
                return Err(format!("spread {index} preimage lines overlap"));
            }
            covered |= gmask[li];
        }
        if covered != (1 << 15) - 1 {
            return Err(format!("spread {index} preimage does not cover the points"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirty_fano_planes_on_seven_symbols() {
        let planes = fano_planes_on([1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(planes.len(), 30);
        for plane in &planes {
            for (i, a) in plane.iter().enumerate() {
                for b in plane.iter().skip(i + 1) {
                    assert_eq!(a.intersection_size(*b), 1);
                }
            }
        }
    }

    #[test]
    fn heptad_kinds_split_fifteen_fifteen() {
        let hs = enumerate_heptads();
        assert_eq!(hs.heptads.len(), 30);
        assert_eq!(hs.point_indices().len(), 15);
        assert_eq!(hs.plane_indices().len(), 15);
        for i in 0..30 {
            for j in i + 1..30 {
                let shared = hs.heptads[i].shared_with(&hs.heptads[j]);
                if hs.kinds[i] == hs.kinds[j] {
                    assert_eq!(shared, 1);
                } else {
                    assert!(shared == 0 || shared == 3, "point-plane pairs share 0 or 3");
                }
            }
        }
    }

    #[test]
    fn worked_heptads_have_three_common_triples() {
        let hs = enumerate_heptads();
        let a = POINT_ANCHOR.map(|[x, y, z]| Triple::new(x, y, z));
        let b = X0_TRIPLES.map(|[x, y, z]| Triple::new(x, y, z));
        let ia = hs.find(&a).unwrap();
        let ib = hs.find(&b).unwrap();
        assert_ne!(hs.kinds[ia], hs.kinds[ib]);
        let shared: Vec<Triple> = a.iter().filter(|t| b.contains(t)).copied().collect();
        assert_eq!(
            shared,
            vec![
                Triple::new(1, 3, 6),
                Triple::new(2, 3, 5),
                Triple::new(3, 4, 7)
            ]
        );
    }

    #[test]
    fn every_triple_lies_in_three_heptads_of_each_kind() {
        let hs = enumerate_heptads();
        for t in all_triples_on(&[1, 2, 3, 4, 5, 6, 7]) {
            let points = hs
                .point_indices()
                .iter()
                .filter(|&&h| hs.heptads[h].contains(t))
                .count();
            let planes = hs
                .plane_indices()
                .iter()
                .filter(|&&h| hs.heptads[h].contains(t))
                .count();
            assert_eq!((points, planes), (3, 3));
        }
    }

    #[test]
    fn worked_spreads() {
        let s368 = spread(Triple::new(3, 6, 8));
        let lines: Vec<String> = s368.lines.iter().map(|t| t.to_string()).collect();
        assert_eq!(lines, ["136", "236", "346", "356", "367"]);

        let s257 = spread(Triple::new(2, 5, 7));
        let lines: Vec<String> = s257.lines.iter().map(|t| t.to_string()).collect();
        assert_eq!(lines, ["134", "136", "146", "257", "346"]);
    }

    #[test]
    fn spread_case_formula() {
        for index in all_triples_on(&[1, 2, 3, 4, 5, 6, 7, 8]) {
            let s = spread(index);
            if index.contains(8) {
                let [i, j, _] = index.labels();
                for line in s.lines {
                    assert!(line.contains(i) && line.contains(j));
                }
            } else {
                assert!(s.lines.contains(&index));
                for line in s.lines {
                    if line != index {
                        assert_eq!(line.intersection_size(index), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn spreads_partition_point_heptads() {
        let hs = enumerate_heptads();
        for index in all_triples_on(&[1, 2, 3, 4, 5, 6, 7, 8]) {
            let s = spread(index);
            for &h in &hs.point_indices() {
                let hits = s
                    .lines
                    .iter()
                    .filter(|&&t| hs.heptads[h].contains(t))
                    .count();
                assert_eq!(hits, 1, "spread {index} vs point heptad {h}");
            }
        }
    }

    #[test]
    fn disjointness_matches_singleton_index_intersection() {
        let indices = all_triples_on(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(indices.len(), 56);
        for (i, &a) in indices.iter().enumerate() {
            for &b in indices.iter().skip(i + 1) {
                let claim = spreads_disjoint(a, b);
                let sa = spread(a);
                let sb = spread(b);
                let literally = sa.lines.iter().all(|t| !sb.lines.contains(t));
                assert_eq!(claim, literally, "indices {a} {b}");
            }
        }
        assert!(spreads_disjoint(Triple::new(1, 2, 7), Triple::new(1, 3, 6)));
        assert!(!spreads_disjoint(
            Triple::new(3, 6, 8),
            Triple::new(2, 5, 7)
        ));
        assert!(!spreads_disjoint(
            Triple::new(1, 2, 3),
            Triple::new(1, 2, 4)
        ));
    }

    #[test]
    fn packing_constructor_accepts_the_worked_examples() {
        let x0 = packing_from_label_triples(&X0_TRIPLES);
        assert_eq!(x0.basepoint(), 8);
        let x1 = packing_from_label_triples(&X1_TRIPLES);
        assert_eq!(x1.basepoint(), 1);
    }

    #[test]
    fn packing_constructor_rejects_bad_input() {
        let ts: Vec<Triple> = [
            [1, 2, 3],
            [1, 2, 4],
            [1, 5, 6],
            [2, 5, 7],
            [3, 4, 5],
            [6, 7, 8],
            [3, 6, 7],
        ]
        .iter()
        .map(|&[a, b, c]| Triple::new(a, b, c))
        .collect();
        assert!(matches!(
            Packing::from_triples(&ts),
            Err(PackingError::BadIntersection(_, _, 2))
        ));
        assert!(matches!(
            Packing::from_triples(&ts[..3]),
            Err(PackingError::WrongCount(3))
        ));
    }

    #[test]
    fn packing_spreads_partition_all_lines() {
        let idx = PackingIndex::build();
        let all_lines = all_triples_on(&[1, 2, 3, 4, 5, 6, 7]);
        for p in &idx.packings {
            let mut seen: HashSet<Triple> = HashSet::new();
            for &t in p.triples() {
                for line in spread(t).lines {
                    assert!(seen.insert(line), "{p}: line {line} covered twice");
                }
            }
            assert_eq!(seen.len(), all_lines.len());
        }
    }

    #[test]
    fn two_hundred_forty_packings_thirty_per_basepoint() {
        let idx = PackingIndex::build();
        assert_eq!(idx.len(), 240);
        for bp in 1..=8 {
            let n = idx.packings.iter().filter(|p| p.basepoint() == bp).count();
            assert_eq!(n, 30);
        }
        assert!(idx
            .id_of(&packing_from_label_triples(&X0_TRIPLES))
            .is_some());
        assert!(idx
            .id_of(&packing_from_label_triples(&X1_TRIPLES))
            .is_some());
    }

    #[test]
    fn lambda_minus_worked_examples() {
        let x0 = packing_from_label_triples(&X0_TRIPLES);
        let mut expected: Vec<Coset> = vec![
            Coset::from_labels(&[1, 2, 7]),
            Coset::from_labels(&[1, 3, 6]),
            Coset::from_labels(&[1, 4, 5]),
            Coset::from_labels(&[2, 3, 5]),
            Coset::from_labels(&[2, 4, 6]),
            Coset::from_labels(&[3, 4, 7]),
            Coset::from_labels(&[5, 6, 7]),
            Coset::from_labels(&[8]),
        ];
        expected.sort_unstable();
        assert_eq!(x0.lambda_minus().to_vec(), expected);

        let x1 = packing_from_label_triples(&X1_TRIPLES);
        let mut expected: Vec<Coset> = vec![
            Coset::from_labels(&[2, 3, 4]),
            Coset::from_labels(&[2, 5, 6]),
            Coset::from_labels(&[2, 7, 8]),
            Coset::from_labels(&[3, 5, 7]),
            Coset::from_labels(&[3, 6, 8]),
            Coset::from_labels(&[4, 5, 8]),
            Coset::from_labels(&[4, 6, 7]),
            Coset::from_labels(&[1]),
        ];
        expected.sort_unstable();
        assert_eq!(x1.lambda_minus().to_vec(), expected);
    }

    #[test]
    fn lambda_minus_image_is_omega_a_minus() {
        let idx = PackingIndex::build();
        let image: HashSet<[Coset; 8]> = idx.lambda.iter().copied().collect();
        assert_eq!(image.len(), 240);
        let minus: HashSet<[Coset; 8]> = crate::gf2::omega_a().minus.iter().copied().collect();
        assert_eq!(image, minus);
    }

    #[test]
    fn geometry_counts() {
        assert_eq!(geometry::lines().len(), 35);
        assert_eq!(geometry::spreads().len(), 56);
        assert_eq!(geometry::packings().len(), 240);
    }

    #[test]
    fn tau_is_reconstructed_and_certified() {
        let hs = enumerate_heptads();
        let tau = build_tau(&hs).unwrap();
        assert_eq!(tau.triple_of_line.len(), 35);
    }

    #[test]
    fn kirkman_schedule_for_x0_is_valid() {
        let hs = enumerate_heptads();
        let x0 = packing_from_label_triples(&X0_TRIPLES);
        let s = kirkman(&x0, &hs);
        assert_eq!(s.days.len(), 7);
        verify_schedule(&s).unwrap();
    }
}
