//! Brute-force graph facts for cross-checking cleverer implementations.
//!
//! The centrepiece is [`planar_by_kuratowski`]: planarity decided straight
//! from Kuratowski's theorem by exhaustively searching for a subdivision of
//! K5 or K3,3. Exponential and proud of it — the point is that it shares no
//! code and no ideas with a real planarity algorithm, so agreement between
//! the two is evidence, not an echo.

/// Undirected simple graph on at most 64 vertices, adjacency kept as
/// bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SmallGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64);
        SmallGraph { n, adj: vec![0; n] }
    }

    /// Decode a graph from the bits of `mask`, one bit per vertex pair in
    /// lexicographic order: (0,1), (0,2), .., (0,n-1), (1,2), ..
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut g = SmallGraph::new(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask & (1 << bit) != 0 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn pair_count(n: usize) -> u32 {
        (n * (n - 1) / 2) as u32
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut reached: u64 = 1;
        loop {
            let mut grew = reached;
            let mut bits = reached;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grew |= self.adj[v];
            }
            if grew == reached {
                break;
            }
            reached = grew;
        }
        reached.count_ones() as usize == self.n
    }
}

/// All labeled graphs on exactly `n` vertices, every edge subset.
pub fn all_graphs(n: usize) -> impl Iterator<Item = SmallGraph> {
    assert!(n <= 8, "2^(n choose 2) explodes fast");
    let pairs = if n < 2 { 0 } else { SmallGraph::pair_count(n) };
    (0..(1u64 << pairs)).map(move |mask| SmallGraph::from_mask(n, mask))
}

/// All labeled connected graphs on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = SmallGraph> {
    all_graphs(n).filter(SmallGraph::is_connected)
}

/// Kuratowski's theorem, taken literally: planar iff no subdivision of K5
/// or of K3,3 sits inside the graph.
pub fn planar_by_kuratowski(g: &SmallGraph) -> bool {
    !has_k5_subdivision(g) && !has_k33_subdivision(g)
}

pub fn has_k5_subdivision(g: &SmallGraph) -> bool {
    let n = g.vertex_count();
    if n < 5 {
        return false;
    }
    // branch vertices of a K5 subdivision have degree >= 4 in the host
    let eligible: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 4).collect();
    for branch in k_subsets(&eligible, 5) {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (branch[i], branch[j]))
            .collect();
        if connect_all(g, &branch, &pairs) {
            return true;
        }
    }
    false
}

pub fn has_k33_subdivision(g: &SmallGraph) -> bool {
    let n = g.vertex_count();
    if n < 6 {
        return false;
    }
    let eligible: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    for six in k_subsets(&eligible, 6) {
        // split the six into two sides of three; fixing six[0] on the left
        // halves the symmetric duplicates
        for (i, j) in (1..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))) {
            let left = [six[0], six[i], six[j]];
            let right: Vec<usize> = (1..6).filter(|&k| k != i && k != j).map(|k| six[k]).collect();
            let pairs: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&l| right.iter().map(move |&r| (l, r)))
                .collect();
            if connect_all(g, &six, &pairs) {
                return true;
            }
        }
    }
    false
}

/// Try to realise all `pairs` as paths between branch vertices that are
/// internally disjoint: interior vertices come from outside the branch set
/// and each is spent on one path. A pair joined by a direct edge uses it —
/// that is never worse, because interior vertices are only freed by doing
/// so.
fn connect_all(g: &SmallGraph, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let branch_mask: u64 = branch.iter().map(|&b| 1u64 << b).sum();
    let all_mask = if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    };
    assign(g, pairs, 0, all_mask & !branch_mask)
}

fn assign(g: &SmallGraph, pairs: &[(usize, usize)], at: usize, spares: u64) -> bool {
    let Some(&(u, v)) = pairs.get(at) else {
        return true;
    };
    if g.has_edge(u, v) {
        return assign(g, pairs, at + 1, spares);
    }
    // grow a path u -> ... -> v through spare vertices, depth-first
    let mut stack: Vec<(usize, u64)> = vec![(u, 0)];
    path_search(g, v, spares, &mut stack, &mut |used| {
        assign(g, pairs, at + 1, spares & !used)
    })
}

/// Enumerate simple paths from the top of `stack` to `target` whose interior
/// vertices are drawn from `spares`; call `found` with each interior-vertex
/// mask until it returns true.
fn path_search(
    g: &SmallGraph,
    target: usize,
    spares: u64,
    stack: &mut Vec<(usize, u64)>,
    found: &mut dyn FnMut(u64) -> bool,
) -> bool {
    let (current, used) = *stack.last().unwrap();
    let mut options = g.adj[current] & spares & !used;
    while options != 0 {
        let next = options.trailing_zeros() as usize;
        options &= options - 1;
        let now_used = used | (1 << next);
        if g.has_edge(next, target) && found(now_used) {
            return true;
        }
        stack.push((next, now_used));
        if path_search(g, target, spares, stack, found) {
            return true;
        }
        stack.pop();
    }
    false
}

fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if items.len() < k {
        return out;
    }
    let mut current = Vec::with_capacity(k);
    fn recurse(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        // not enough items left to finish
        if items.len() - start < k - current.len() {
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            recurse(items, k, i + 1, current, out);
            current.pop();
        }
    }
    recurse(items, k, 0, &mut current, &mut out);
    out
}
