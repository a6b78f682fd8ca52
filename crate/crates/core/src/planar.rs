//! Planarity testing by incremental face embedding (Demoucron, Malgrange
//! and Pertuiset's method): grow a planar subgraph from a cycle, and at each
//! step embed a path of some unembedded fragment into a face whose boundary
//! contains all of the fragment's contact vertices. Always serving a
//! fragment with exactly one admissible face keeps the greedy choice safe;
//! a fragment with no admissible face certifies nonplanarity.
//!
//! The test runs per biconnected component, after two Euler shortcuts: a
//! graph with at most eight edges is always planar (the smallest
//! obstructions need nine), and a simple component with more than `3n - 6`
//! edges never is.

use std::collections::BTreeSet;

/// Planarity of the simple undirected graph on vertices `0..n` with the
/// given edges. Self-loops and duplicate edges are tolerated and ignored.
pub fn is_planar_adjacency(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut unique = BTreeSet::new();
    for &(u, v) in edges {
        if u != v {
            unique.insert((u.min(v), u.max(v)));
        }
    }
    let m = unique.len();
    if m <= 8 {
        return true;
    }
    if m > 3 * n - 6 {
        // n >= 3 here: fewer vertices cannot carry nine edges
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &unique {
        adj[u].push(v);
        adj[v].push(u);
    }
    biconnected_components(n, &adj)
        .into_iter()
        .all(|component| component_planar(&component))
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Split into biconnected components (edge sets) with an iterative
/// depth-first search and an edge stack.
fn biconnected_components(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut components = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        // frame: (vertex, parent, next neighbour index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (u, parent, ref mut next)) = frames.last_mut() {
            if *next < adj[u].len() {
                let v = adj[u][*next];
                *next += 1;
                if disc[v] == UNSEEN {
                    edge_stack.push((u, v));
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    frames.push((v, u, 0));
                } else if v != parent && disc[v] < disc[u] {
                    // back edge towards an ancestor
                    edge_stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                frames.pop();
                if let Some(&mut (p, _, _)) = frames.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // p separates: everything stacked since (p, u) is
                        // one biconnected component
                        let mut component = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            component.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        components.push(component);
                    }
                }
            }
        }
    }
    components
}

fn component_planar(edges: &[(usize, usize)]) -> bool {
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let k = vertices.len();
    let m = edges.len();
    if m <= 8 {
        return true;
    }
    if m > 3 * k - 6 {
        return false;
    }
    let index: std::collections::BTreeMap<usize, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in edges {
        let (a, b) = (index[&u], index[&v]);
        adj[a].push(b);
        adj[b].push(a);
    }
    embed(k, &adj, m)
}

/// Demoucron's loop on one biconnected component with at least nine edges.
fn embed(k: usize, adj: &[Vec<usize>], m: usize) -> bool {
    let cycle = some_cycle(k, adj);
    let mut in_h = vec![false; k];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        h_edges.insert(norm(v, cycle[(i + 1) % cycle.len()]));
    }
    // a cycle bounds two faces, inside and outside
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while h_edges.len() < m {
        let fragments = fragments(k, adj, &in_h, &h_edges);
        let face_sets: Vec<BTreeSet<usize>> = faces
            .iter()
            .map(|face| face.iter().copied().collect())
            .collect();
        let mut fallback: Option<(usize, usize)> = None;
        let mut forced: Option<(usize, usize)> = None;
        for (fi, fragment) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = face_sets
                .iter()
                .enumerate()
                .filter(|(_, set)| fragment.contacts.is_subset(set))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => forced = Some((fi, admissible[0])),
                _ => {
                    if fallback.is_none() {
                        fallback = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = forced
            .or(fallback)
            .expect("unembedded edges always leave a fragment");
        let path = fragments[fi].alpha_path(adj, &in_h);
        insert_path(&mut faces, face_idx, &path, &mut in_h, &mut h_edges);
    }
    true
}

/// Any cycle of the component, as a vertex sequence. Exists because the
/// component is biconnected with at least nine edges.
fn some_cycle(k: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut parent = vec![usize::MAX; k];
    let mut on_path = vec![false; k];
    let mut path: Vec<usize> = vec![0];
    let mut frames: Vec<(usize, usize)> = vec![(0, 0)];
    on_path[0] = true;
    while let Some(&mut (u, ref mut next)) = frames.last_mut() {
        if *next < adj[u].len() {
            let v = adj[u][*next];
            *next += 1;
            if v == parent[u] {
                continue;
            }
            if on_path[v] {
                let pos = path.iter().position(|&x| x == v).unwrap();
                return path[pos..].to_vec();
            }
            parent[v] = u;
            on_path[v] = true;
            path.push(v);
            frames.push((v, 0));
        } else {
            frames.pop();
            path.pop();
            on_path[u] = false;
        }
    }
    unreachable!("biconnected component contains a cycle")
}

/// A piece of the graph not yet embedded: either a single chord between two
/// embedded vertices, or a connected component of the unembedded vertices
/// together with its attachment points.
struct Fragment {
    contacts: BTreeSet<usize>,
    kind: FragmentKind,
}

enum FragmentKind {
    Chord(usize, usize),
    Bridge(Vec<usize>),
}

fn fragments(
    k: usize,
    adj: &[Vec<usize>],
    in_h: &[bool],
    h_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in 0..k {
        if !in_h[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && in_h[v] && !h_edges.contains(&norm(u, v)) {
                out.push(Fragment {
                    contacts: [u, v].into(),
                    kind: FragmentKind::Chord(u, v),
                });
            }
        }
    }
    let mut assigned = vec![false; k];
    for start in 0..k {
        if in_h[start] || assigned[start] {
            continue;
        }
        let mut interior = vec![start];
        let mut contacts = BTreeSet::new();
        let mut queue = std::collections::VecDeque::from([start]);
        assigned[start] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if in_h[v] {
                    contacts.insert(v);
                } else if !assigned[v] {
                    assigned[v] = true;
                    interior.push(v);
                    queue.push_back(v);
                }
            }
        }
        out.push(Fragment {
            contacts,
            kind: FragmentKind::Bridge(interior),
        });
    }
    out
}

impl Fragment {
    /// A path through the fragment between two of its contacts, interior
    /// vertices all unembedded.
    fn alpha_path(&self, adj: &[Vec<usize>], in_h: &[bool]) -> Vec<usize> {
        match &self.kind {
            FragmentKind::Chord(u, v) => vec![*u, *v],
            FragmentKind::Bridge(interior) => {
                let mut contacts = self.contacts.iter();
                let a = *contacts.next().expect("biconnected: at least 2 contacts");
                let b = *contacts.next().expect("biconnected: at least 2 contacts");
                let inside: BTreeSet<usize> = interior.iter().copied().collect();
                // breadth-first from a through the interior until b appears
                let mut pred = vec![usize::MAX; adj.len()];
                let mut seen = vec![false; adj.len()];
                let mut queue = std::collections::VecDeque::new();
                for &w in &adj[a] {
                    if inside.contains(&w) && !seen[w] {
                        seen[w] = true;
                        pred[w] = a;
                        queue.push_back(w);
                    }
                }
                while let Some(u) = queue.pop_front() {
                    if adj[u].contains(&b) {
                        let mut path = vec![b, u];
                        let mut back = u;
                        while pred[back] != a {
                            back = pred[back];
                            path.push(back);
                        }
                        path.push(a);
                        path.reverse();
                        debug_assert!(path[1..path.len() - 1].iter().all(|&w| !in_h[w]));
                        return path;
                    }
                    for &w in &adj[u] {
                        if inside.contains(&w) && !seen[w] {
                            seen[w] = true;
                            pred[w] = u;
                            queue.push_back(w);
                        }
                    }
                }
                unreachable!("contacts of one fragment are linked through it")
            }
        }
    }
}

/// Embed `path` (endpoints on the face, interior fresh) into the face,
/// splitting it in two.
fn insert_path(
    faces: &mut Vec<Vec<usize>>,
    face_idx: usize,
    path: &[usize],
    in_h: &mut [bool],
    h_edges: &mut BTreeSet<(usize, usize)>,
) {
    let face = faces.swap_remove(face_idx);
    let u = path[0];
    let v = *path.last().unwrap();
    let i = face.iter().position(|&x| x == u).unwrap();
    let j = face.iter().position(|&x| x == v).unwrap();
    let walk = |from: usize, to: usize| {
        let mut arc = Vec::new();
        let mut t = from;
        loop {
            arc.push(face[t]);
            if t == to {
                return arc;
            }
            t = (t + 1) % face.len();
        }
    };
    let interior = &path[1..path.len() - 1];
    let mut first = walk(i, j);
    first.extend(interior.iter().rev());
    let mut second = walk(j, i);
    second.extend(interior.iter());
    faces.push(first);
    faces.push(second);
    for &w in interior {
        in_h[w] = true;
    }
    for pair in path.windows(2) {
        h_edges.insert(norm(pair[0], pair[1]));
    }
}
