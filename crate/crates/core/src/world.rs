//! Build-once shared tables: the packings, the root system, heights, the
//! order, and the deterministic export formats. Everything is immutable
//! after construction, so a single instance is shared process-wide.

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bridge::pack_to_ortho;
use crate::e8::{PsiPrime, RootSystem};
use crate::order::{bfs_heights, build_lehmer, build_poset, LehmerMap, Poset, ReducedCode};
use crate::pg32::{enumerate_heptads, HeptadSet, Packing, PackingIndex, Triple};
use crate::weyl::{action_table, GroupName, Reflection, SignedPerm};

pub struct World {
    pub idx: PackingIndex,
    pub rs: RootSystem,
    pub psi_prime: PsiPrime,
    pub heptads: HeptadSet,
    /// Geodesic heights from the minimal packing (adjacent transpositions).
    pub heights: Vec<u8>,
    /// The same distances measured with the rank-7 signed generators.
    pub heights_d7: Vec<u8>,
    pub lehmer: LehmerMap,
    pub poset: Poset,
    /// The orthogonal root 8-set of each packing.
    pub ortho_of: Vec<[usize; 8]>,
    /// Action tables of the adjacent transpositions s_1..s_7.
    pub s8_gen_tables: Vec<Vec<usize>>,
    /// Action tables of all 56 rank-8 reflections, in reflection order.
    pub d8_reflections: Vec<(Reflection, Vec<usize>)>,
}

impl World {
    /// The process-wide instance.
    pub fn get() -> &'static World {
        static CELL: OnceLock<World> = OnceLock::new();
        CELL.get_or_init(World::build)
    }

    pub fn build() -> World {
        let idx = PackingIndex::build();
        let rs = RootSystem::build();
        let psi_prime = PsiPrime::build(&rs).expect("the second root model builds");
        let heptads = enumerate_heptads();

        let s8_tables: Vec<Vec<usize>> = GroupName::A7
            .generators()
            .iter()
            .map(|&g| action_table(g, &idx))
            .collect();
        let heights = bfs_heights(&s8_tables, idx.x0(), idx.len());
        let d7_tables: Vec<Vec<usize>> = GroupName::D7
            .generators()
            .iter()
            .map(|&g| action_table(g, &idx))
            .collect();
        let heights_d7 = bfs_heights(&d7_tables, idx.x0(), idx.len());

        let d8_reflections: Vec<(Reflection, Vec<usize>)> = GroupName::D8
            .reflections()
            .into_iter()
            .map(|r| {
                let table = action_table(r.to_signed_perm(), &idx);
                (r, table)
            })
            .collect();
        let refl_tables: Vec<Vec<usize>> = d8_reflections.iter().map(|(_, t)| t.clone()).collect();
        let poset = build_poset(&heights, &refl_tables).expect("the order is graded");
        let lehmer = build_lehmer(&idx).expect("the code parametrization is bijective");
        let ortho_of: Vec<[usize; 8]> = (0..idx.len())
            .map(|pid| pack_to_ortho(pid, &idx, &rs))
            .collect();

        World {
            idx,
            rs,
            psi_prime,
            heptads,
            heights,
            heights_d7,
            lehmer,
            poset,
            ortho_of,
            s8_gen_tables: s8_tables,
            d8_reflections,
        }
    }

    pub fn x0(&self) -> usize {
        self.idx.x0()
    }

    pub fn x1(&self) -> usize {
        self.idx.x1()
    }

    pub fn packing(&self, pid: usize) -> &Packing {
        &self.idx.packings[pid]
    }

    /// The kernel roots of the counter game: the orthogonal set of the
    /// minimal packing.
    pub fn kernel_roots(&self) -> [usize; 8] {
        self.ortho_of[self.x0()]
    }

    /// Action table of the order-reversing involution (1 8)(2 7)(3 6)(4 5).
    pub fn z0_table(&self) -> Vec<usize> {
        let z0 = SignedPerm::transposition(1, 8)
            .compose(SignedPerm::transposition(2, 7))
            .compose(SignedPerm::transposition(3, 6))
            .compose(SignedPerm::transposition(4, 5));
        action_table(z0, &self.idx)
    }

    pub fn pid_by_code(&self, code: ReducedCode) -> usize {
        self.lehmer.pid_of[code.index()]
    }

    pub fn pid_by_index(&self, index: usize) -> Option<usize> {
        self.lehmer.pid_of.get(index).copied()
    }

    /// Resolve a packing from a list of seven label triples.
    pub fn pid_by_triples(&self, ts: &[Triple]) -> Result<usize, String> {
        let p = Packing::from_triples(ts).map_err(|e| e.to_string())?;
        self.idx
            .id_of(&p)
            .ok_or_else(|| "triples are valid but unknown; this cannot happen".to_string())
    }

    pub fn record(&self, pid: usize) -> PackingRecord {
        let p = self.packing(pid);
        let code = self.lehmer.code_of[pid];
        PackingRecord {
            index: code.index(),
            id: code.to_string(),
            basepoint: p.basepoint(),
            triples: p.triples().map(|t| t.labels()),
            height: self.heights[pid],
            code: code.digits(),
        }
    }

    /// All 240 records in code-index order.
    pub fn packing_records(&self) -> Vec<PackingRecord> {
        (0..240)
            .map(|i| self.record(self.lehmer.pid_of[i]))
            .collect()
    }

    /// JSON export of the packings, byte-stable across runs.
    pub fn packings_json(&self) -> String {
        serde_json::to_string_pretty(&self.packing_records()).expect("records serialize")
    }

    /// CSV export of the Lehmer codes.
    pub fn codes_csv(&self) -> String {
        let mut out = String::from("index,id,k8,k5,k3,k2,height\n");
        for r in self.packing_records() {
            let [k8, k5, k3, k2] = r.code;
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.index, r.id, k8, k5, k3, k2, r.height
            )
            .unwrap();
        }
        out
    }

    /// DOT export of the Hasse diagram, ranked by height.
    pub fn poset_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        let max_h = *self.heights.iter().max().unwrap();
        for h in 0..=max_h {
            let mut ids: Vec<String> = (0..self.idx.len())
                .filter(|&pid| self.heights[pid] == h)
                .map(|pid| self.lehmer.code_of[pid].to_string())
                .collect();
            ids.sort_unstable();
            write!(out, "  {{ rank=same;").unwrap();
            for id in ids {
                write!(out, " \"{id}\";").unwrap();
            }
            out.push_str(" }\n");
        }
        let mut edges: Vec<(String, String)> = self
            .poset
            .covers
            .iter()
            .map(|&(x, y)| {
                (
                    self.lehmer.code_of[x].to_string(),
                    self.lehmer.code_of[y].to_string(),
                )
            })
            .collect();
        edges.sort_unstable();
        for (a, b) in edges {
            writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// JSON export of the root table.
    pub fn roots_json(&self) -> String {
        #[derive(Serialize)]
        struct RootRecord {
            d2: [i32; 8],
            coeffs: [i32; 8],
            positive: bool,
        }
        let records: Vec<RootRecord> = self
            .rs
            .roots
            .iter()
            .map(|r| RootRecord {
                d2: r.d2,
                coeffs: r.coeffs,
                positive: r.is_positive(),
            })
            .collect();
        serde_json::to_string_pretty(&records).expect("roots serialize")
    }
}

/// One packing in the export schema.
#[derive(Clone, Debug, Serialize)]
pub struct PackingRecord {
    pub index: usize,
    pub id: String,
    pub basepoint: u8,
    pub triples: [[u8; 3]; 7],
    pub height: u8,
    pub code: [u8; 4],
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn world_builds_and_exports_are_stable() {
        let w = World::get();
        assert_eq!(w.idx.len(), 240);
        assert_eq!(w.heights, w.heights_d7);
        assert_eq!(w.packings_json(), w.packings_json());
        assert_eq!(w.poset_dot(), w.poset_dot());
        let csv = w.codes_csv();
        assert!(csv.starts_with("index,id,k8,k5,k3,k2,height\n"));
        assert_eq!(csv.lines().count(), 241);
        let first_record = &w.packing_records()[0];
        assert_eq!(first_record.id, "0.0.0.0");
        assert_eq!(first_record.basepoint, 8);
    }

    #[test]
    fn selectors_agree() {
        let w = World::get();
        let code: ReducedCode = "7.4.2.1".parse().unwrap();
        assert_eq!(w.pid_by_code(code), w.x1());
        assert_eq!(w.pid_by_index(239), Some(w.x1()));
        assert_eq!(w.pid_by_index(0), Some(w.x0()));
    }
}
