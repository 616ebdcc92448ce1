//! Maximal clique enumeration on graphs of at most 128 vertices.
//!
//! Bron–Kerbosch with pivoting over `u128` vertex masks. All the graphs in
//! this crate (the separation graph on 128 cosets, its restriction to 35
//! weight-4 cosets, the orthogonality graphs on the 64-root sets) fit in a
//! single word, which keeps the search allocation-free.

/// All maximal cliques of the graph on vertices `0..n` with adjacency rows
/// `adj` (bit j of `adj[i]` set iff i ~ j). Returned masks are sorted so the
/// output is deterministic.
pub fn maximal_cliques(n: usize, adj: &[u128]) -> Vec<u128> {
    assert!(n <= 128);
    assert_eq!(adj.len(), n);
    let mut out = Vec::new();
    let all: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    expand(adj, 0, all, 0, &mut out);
    out.sort_unstable();
    out
}

fn expand(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot on the vertex of P ∪ X with most neighbours in P.
    let mut pivot_nb = 0u128;
    let mut best = u32::MAX;
    let mut px = p | x;
    while px != 0 {
        let v = px.trailing_zeros() as usize;
        px &= px - 1;
        let missed = (p & !adj[v]).count_ones();
        if best == u32::MAX || missed < best {
            best = missed;
            pivot_nb = adj[v];
        }
    }
    let mut cand = p & !pivot_nb;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let vbit = 1u128 << v;
        cand &= cand - 1;
        expand(adj, r | vbit, p & adj[v], x & adj[v], out);
        p &= !vbit;
        x |= vbit;
    }
}
