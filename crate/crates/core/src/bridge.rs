//! Translations between the three parametrizations of the 240 packings —
//! labelled Fano planes, orthogonal root 8-sets, coset 8-sets — plus the
//! signed 7-labelled Fano planes and signed 6-labelled Pasch configurations
//! that make the rank-7 and rank-6 actions readable.
//!
//! Sign conventions: a packing's seven 4-subsets (triple joined with the
//! basepoint) are kept both in the *positive* convention used by the group
//! actions and in the *x8* convention where every subset is rewritten, with
//! a sign, to contain the label 8. Dropping the 8 from the latter gives a
//! signed triple over {1..7}; the resulting signed planes are exactly those
//! in which every vertex meets an even number of negative edges.

use thiserror::Error;

use crate::e8::RootSystem;
use crate::gf2::{label_bit, Coset};
use crate::pg32::{fano_planes_on, Packing, PackingIndex, Triple};
use crate::weyl::{mu_quads, SignedPerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BridgeError {
    #[error("edges do not form a Fano plane on 1..7")]
    NotAFanoPlane,
    #[error("vertex {0} meets an odd number of negative edges")]
    VertexParity(u8),
    #[error("edges do not form a Pasch configuration on 1..6")]
    NotAPasch,
    #[error("Pasch sign pattern admits no consistent extension")]
    SignConflict,
    #[error("roots do not form one of the orthogonal 8-sets")]
    UnknownOrthoSet,
}

/// Packing → orthogonal 8-subset of Ψ, elementwise `(λ+)⁻¹ ∘ t_8 ∘ λ−`.
pub fn pack_to_ortho(pid: usize, idx: &PackingIndex, rs: &RootSystem) -> [usize; 8] {
    let mut roots: Vec<usize> = idx.lambda[pid]
        .iter()
        .map(|c| {
            rs.psi_root_of_coset(c.translate(8))
                .expect("translated coset lies in the even part")
        })
        .collect();
    roots.sort_unstable();
    roots.try_into().unwrap()
}

/// Orthogonal 8-subset of Ψ → packing, the inverse direction.
pub fn ortho_to_pack(
    set: &[usize; 8],
    idx: &PackingIndex,
    rs: &RootSystem,
) -> Result<usize, BridgeError> {
    let mut cosets: Vec<Coset> = set
        .iter()
        .map(|&r| {
            rs.lambda_plus(r)
                .map(|c| c.translate(8))
                .map_err(|_| BridgeError::UnknownOrthoSet)
        })
        .collect::<Result<_, _>>()?;
    cosets.sort_unstable();
    let arr: [Coset; 8] = cosets.try_into().unwrap();
    idx.id_by_lambda(&arr).ok_or(BridgeError::UnknownOrthoSet)
}

/// Index of the totally singular subspace whose coset a packing's image is.
pub fn mts_class(pid: usize, idx: &PackingIndex) -> usize {
    let lambda = &idx.lambda[pid];
    let base = lambda[0];
    let mut subspace: Vec<Coset> = lambda.iter().map(|&c| c.add(base)).collect();
    subspace.sort_unstable();
    let key: [Coset; 8] = subspace.try_into().unwrap();
    crate::gf2::singular_subspaces()
        .iter()
        .position(|s| *s == key)
        .expect("every packing image is a coset of a singular subspace")
}

/// Two packings are coset equivalent when their images are translates of
/// the same totally singular subspace.
pub fn coset_equivalent(a: usize, b: usize, idx: &PackingIndex) -> bool {
    mts_class(a, idx) == mts_class(b, idx)
}

/// The seven 4-subsets of a packing in both sign conventions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MuSet {
    /// Positive convention: sorted masks of triple ∪ basepoint.
    pub positive: [u8; 7],
    /// x8 convention: triple over {1..7} plus a negativity flag.
    pub x8_form: [(Triple, bool); 7],
}

/// The μ-set of a packing. In the x8 convention a 4-subset not containing
/// 8 is rewritten as minus its complement, which does contain 8.
pub fn mu(p: &Packing) -> MuSet {
    let positive: [u8; 7] = mu_quads(p).try_into().unwrap();
    let mut x8: Vec<(Triple, bool)> = positive
        .iter()
        .map(|&q| {
            if q & label_bit(8) != 0 {
                (Triple::from_mask(q & !label_bit(8)), false)
            } else {
                (Triple::from_mask(!q & !label_bit(8)), true)
            }
        })
        .collect();
    x8.sort_unstable();
    MuSet {
        positive,
        x8_form: x8.try_into().unwrap(),
    }
}

/// A signed 7-labelled Fano plane: the seven lines of a Fano plane on
/// {1..7}, each carrying a sign. Members of the packing family have an even
/// number of negative edges at every vertex.
///
/// Serializes as `{"edges": [{"triple": [a,b,c], "sign": 1|-1}, ...]}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedFano7 {
    /// Sorted by triple; `true` marks a negative edge.
    pub edges: [(Triple, bool); 7],
}

impl serde::Serialize for SignedFano7 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        #[derive(serde::Serialize)]
        struct Edge {
            triple: [u8; 3],
            sign: i8,
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(t, negative)| Edge {
                triple: t.labels(),
                sign: if negative { -1 } else { 1 },
            })
            .collect();
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("edges", &edges)?;
        map.end()
    }
}

impl SignedFano7 {
    pub fn plane(&self) -> [Triple; 7] {
        self.edges.map(|(t, _)| t)
    }

    pub fn negative_edges(&self) -> Vec<Triple> {
        self.edges
            .iter()
            .filter(|(_, n)| *n)
            .map(|&(t, _)| t)
            .collect()
    }

    /// Even number of negative edges at every vertex.
    pub fn vertex_parity_ok(&self) -> bool {
        (1..=7).all(|v| {
            self.edges
                .iter()
                .filter(|(t, n)| *n && t.contains(v))
                .count()
                % 2
                == 0
        })
    }

    fn validate(edges: &[(Triple, bool)]) -> Result<SignedFano7, BridgeError> {
        if edges.len() != 7 {
            return Err(BridgeError::NotAFanoPlane);
        }
        let mut sorted: Vec<(Triple, bool)> = edges.to_vec();
        sorted.sort_unstable();
        let plane: Vec<Triple> = sorted.iter().map(|(t, _)| *t).collect();
        let used: u8 = plane.iter().fold(0, |m, t| m | t.mask());
        if used != 0x7f {
            return Err(BridgeError::NotAFanoPlane);
        }
        for i in 0..7 {
            for j in i + 1..7 {
                if plane[i].intersection_size(plane[j]) != 1 {
                    return Err(BridgeError::NotAFanoPlane);
                }
            }
        }
        let f = SignedFano7 {
            edges: sorted.try_into().unwrap(),
        };
        for v in 1..=7 {
            let neg = f.edges.iter().filter(|(t, n)| *n && t.contains(v)).count();
            if neg % 2 != 0 {
                return Err(BridgeError::VertexParity(v));
            }
        }
        Ok(f)
    }
}

/// A packing as a signed 7-labelled Fano plane: the x8 convention of its
/// μ-set with the label 8 dropped.
pub fn to_signed_fano7(p: &Packing) -> SignedFano7 {
    SignedFano7 {
        edges: mu(p).x8_form,
    }
}

/// Inverse of [`to_signed_fano7`]: reject sign patterns outside the family,
/// rebuild the 4-subsets, and read off the packing.
pub fn from_signed_fano7(f: &SignedFano7) -> Result<Packing, BridgeError> {
    let f = SignedFano7::validate(&f.edges)?;
    let quads: Vec<u8> = f
        .edges
        .iter()
        .map(|&(t, negative)| {
            if negative {
                // -x_{t∪8} equals x of the complementary 4-subset of 1..7.
                !(t.mask() | label_bit(8))
            } else {
                t.mask() | label_bit(8)
            }
        })
        .collect();
    let common = quads.iter().fold(0xffu8, |m, &q| m & q);
    if common.count_ones() != 1 {
        return Err(BridgeError::NotAFanoPlane);
    }
    let triples: Vec<Triple> = quads
        .iter()
        .map(|&q| Triple::from_mask(q & !common))
        .collect();
    Packing::from_triples(&triples).map_err(|_| BridgeError::NotAFanoPlane)
}

/// The sign toggle `p_i`: negate the four edges missing the label `i`.
pub fn p_op(f: &SignedFano7, i: u8) -> SignedFano7 {
    let edges = f
        .edges
        .map(|(t, n)| if t.contains(i) { (t, n) } else { (t, !n) });
    SignedFano7 { edges }
}

/// A type-D7 signed permutation acting on a signed plane: the permutation
/// part relabels without touching signs, and each pair of sign changes
/// flips the edges meeting the changed labels an odd number of times.
pub fn act_signed_fano7(w: SignedPerm, f: &SignedFano7) -> SignedFano7 {
    assert_eq!(w.target[7], 8, "rank-7 elements fix the label 8");
    assert_eq!(w.neg & label_bit(8), 0);
    let mut edges: Vec<(Triple, bool)> = f
        .edges
        .iter()
        .map(|&(t, n)| {
            let [a, b, c] = t.labels();
            let img = Triple::new(
                w.target[a as usize - 1],
                w.target[b as usize - 1],
                w.target[c as usize - 1],
            );
            let flips = (t.mask() & w.neg).count_ones();
            (img, n ^ (flips % 2 == 1))
        })
        .collect();
    edges.sort_unstable();
    SignedFano7 {
        edges: edges.try_into().unwrap(),
    }
}

/// All 240 members of the signed-plane family, eight sign patterns over
/// each of the 30 planes.
pub fn enumerate_signed_fano7() -> Vec<SignedFano7> {
    let mut out = Vec::new();
    for plane in fano_planes_on([1, 2, 3, 4, 5, 6, 7]) {
        for signs in 0u8..128 {
            let edges: Vec<(Triple, bool)> = plane
                .iter()
                .enumerate()
                .map(|(k, &t)| (t, signs >> k & 1 == 1))
                .collect();
            if let Ok(f) = SignedFano7::validate(&edges) {
                out.push(f);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A signed 6-labelled Pasch configuration: four signed triples on {1..6},
/// each label on exactly two of them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPasch6 {
    pub edges: [(Triple, bool); 4],
}

impl SignedPasch6 {
    pub fn validate(edges: &[(Triple, bool)]) -> Result<SignedPasch6, BridgeError> {
        if edges.len() != 4 {
            return Err(BridgeError::NotAPasch);
        }
        let mut sorted: Vec<(Triple, bool)> = edges.to_vec();
        sorted.sort_unstable();
        let used: u8 = sorted.iter().fold(0, |m, (t, _)| m | t.mask());
        if used != 0x3f {
            return Err(BridgeError::NotAPasch);
        }
        for v in 1..=6 {
            let deg = sorted.iter().filter(|(t, _)| t.contains(v)).count();
            if deg != 2 {
                return Err(BridgeError::NotAPasch);
            }
        }
        Ok(SignedPasch6 {
            edges: sorted.try_into().unwrap(),
        })
    }

    pub fn negative_count(&self) -> usize {
        self.edges.iter().filter(|(_, n)| *n).count()
    }

    /// The three pairs of labels sharing no edge; each pair rejoins to the
    /// label 7 in the signed plane.
    pub fn noncollinear_pairs(&self) -> [(u8, u8); 3] {
        let mut out = Vec::new();
        for a in 1..=6u8 {
            for b in a + 1..=6 {
                let together = self
                    .edges
                    .iter()
                    .any(|(t, _)| t.contains(a) && t.contains(b));
                if !together {
                    out.push((a, b));
                }
            }
        }
        out.try_into()
            .expect("a Pasch configuration has 3 diagonals")
    }
}

/// Drop the label 7 and its three edges from a signed plane.
pub fn to_pasch6(f: &SignedFano7) -> SignedPasch6 {
    let edges: Vec<(Triple, bool)> = f
        .edges
        .iter()
        .filter(|(t, _)| !t.contains(7))
        .copied()
        .collect();
    SignedPasch6::validate(&edges).expect("deleting a vertex of a Fano plane leaves a Pasch")
}

/// Rebuild the signed plane: rejoin the non-collinear pairs to 7 and solve
/// the vertex parity equations for the three missing signs.
pub fn from_pasch6(p: &SignedPasch6) -> Result<SignedFano7, BridgeError> {
    let p = SignedPasch6::validate(&p.edges)?;
    let neg_at = |v: u8| p.edges.iter().filter(|(t, n)| *n && t.contains(v)).count();
    let mut edges: Vec<(Triple, bool)> = p.edges.to_vec();
    for (a, b) in p.noncollinear_pairs() {
        let sign_a = neg_at(a) % 2 == 1;
        let sign_b = neg_at(b) % 2 == 1;
        if sign_a != sign_b {
            return Err(BridgeError::SignConflict);
        }
        edges.push((Triple::new(a, b, 7), sign_a));
    }
    SignedFano7::validate(&edges)
}

/// The Pasch move: replace every triple by its complement in {1..6},
/// keeping the signs.
pub fn pasch_move(p: &SignedPasch6) -> SignedPasch6 {
    let edges = p
        .edges
        .map(|(t, n)| (Triple::from_mask(!t.mask() & 0x3f), n));
    SignedPasch6::validate(&edges).expect("complementing a Pasch is a Pasch")
}

/// The duality of a Pasch move: each edge corresponds to the triangle of
/// the other three edges of the moved configuration, and the edge is
/// positive exactly when that triangle has evenly many negative sides.
pub fn pasch_move_duality_holds(p: &SignedPasch6) -> bool {
    let q = pasch_move(p);
    p.edges.iter().all(|&(t, n)| {
        let complement = Triple::from_mask(!t.mask() & 0x3f);
        let triangle_negs = q
            .edges
            .iter()
            .filter(|(u, m)| *m && *u != complement)
            .count();
        n == (triangle_negs % 2 == 1)
    })
}

/// Every member of the family is all-positive or `p_a` of all-positive for
/// exactly one label `a`; returns that decomposition.
pub fn p_decomposition(f: &SignedFano7) -> Result<Option<u8>, BridgeError> {
    let negs = f.negative_edges();
    if negs.is_empty() {
        return Ok(None);
    }
    let mut hits = Vec::new();
    for a in 1..=7 {
        if negs.len() == 4 && negs.iter().all(|t| !t.contains(a)) {
            hits.push(a);
        }
    }
    match hits.as_slice() {
        [a] => Ok(Some(*a)),
        _ => Err(BridgeError::VertexParity(0)),
    }
}

/// Check that the full conversion diagram commutes on a packing: both
/// composite routes to the coset world and back are the identity and the
/// mu/plane/Pasch conversions round-trip.
pub fn diagram_commutes(pid: usize, idx: &PackingIndex, rs: &RootSystem) -> Result<(), String> {
    let p = &idx.packings[pid];
    let ortho = pack_to_ortho(pid, idx, rs);
    let back = ortho_to_pack(&ortho, idx, rs).map_err(|e| e.to_string())?;
    if back != pid {
        return Err(format!("ortho round trip moved packing {pid}"));
    }
    let f = to_signed_fano7(p);
    let via_f = from_signed_fano7(&f).map_err(|e| e.to_string())?;
    if &via_f != p {
        return Err(format!("signed-plane round trip moved packing {pid}"));
    }
    let pasch = to_pasch6(&f);
    let rebuilt = from_pasch6(&pasch).map_err(|e| e.to_string())?;
    if rebuilt != f {
        return Err(format!("Pasch round trip moved packing {pid}"));
    }
    // λ+ of the orthogonal set is the translate of λ− by the eighth basis
    // vector, elementwise.
    let mut via_roots: Vec<Coset> = ortho
        .iter()
        .map(|&r| rs.lambda_plus(r).unwrap().translate(8))
        .collect();
    via_roots.sort_unstable();
    if via_roots.as_slice() != idx.lambda[pid].as_slice() {
        return Err(format!("coset route disagrees at packing {pid}"));
    }
    Ok(())
}
