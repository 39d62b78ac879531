//! Planarity, maximal planarity, and the classification of graphs that are
//! both 4-connected and maximal planar (2-spheres and K4).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::complete;
use crate::graph::Graph;
use crate::topology::{manifold_dimension, sphere_dimension, Budget, Verdict};

/// Exact planarity via the Demoucron-Malgrange-Pertuiset embedding scheme,
/// run block by block: a graph is planar iff every biconnected component is.
/// No embedding is returned, only the decision.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n - 6 {
        return false;
    }
    biconnected_components(g)
        .into_iter()
        .all(|block| block_is_planar(&block))
}

/// Edge lists of the biconnected components (bridges come out as single-edge
/// blocks). Standard lowpoint computation with an explicit stack.
fn biconnected_components(g: &Graph) -> Vec<Vec<(u32, u32)>> {
    let n = g.vertex_count();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut timer = 1usize;
    let mut edge_stack: Vec<(u32, u32)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n as u32 {
        if visited[root as usize] {
            continue;
        }
        // Frames: (vertex, parent, neighbor cursor).
        let mut stack: Vec<(u32, u32, usize)> = vec![(root, u32::MAX, 0)];
        visited[root as usize] = true;
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        while let Some(&mut (u, parent, ref mut cursor)) = stack.last_mut() {
            if *cursor < g.degree(u) {
                let v = g.neighbors(u)[*cursor];
                *cursor += 1;
                if !visited[v as usize] {
                    edge_stack.push((u, v));
                    visited[v as usize] = true;
                    disc[v as usize] = timer;
                    low[v as usize] = timer;
                    timer += 1;
                    stack.push((v, u, 0));
                } else if v != parent && disc[v as usize] < disc[u as usize] {
                    edge_stack.push((u, v));
                    low[u as usize] = low[u as usize].min(disc[v as usize]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                    if low[u as usize] >= disc[p as usize] {
                        // p is a cut vertex (or the root): pop one block.
                        let mut block = Vec::new();
                        while let Some(&(x, y)) = edge_stack.last() {
                            if disc[x as usize] >= disc[u as usize]
                                || (x, y) == (p, u)
                                || (y, x) == (p, u)
                            {
                                block.push(edge_stack.pop().unwrap());
                                if (x, y) == (p, u) || (y, x) == (p, u) {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

struct Fragment {
    /// Embedded vertices the fragment touches.
    attachments: Vec<u32>,
    /// Either a lone unembedded edge or a component of unembedded vertices.
    body: FragmentBody,
}

enum FragmentBody {
    Edge(u32, u32),
    Component(Vec<u32>),
}

fn block_is_planar(block_edges: &[(u32, u32)]) -> bool {
    // Reindex to local dense ids.
    let mut ids: Vec<u32> = block_edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect();
    ids.sort_unstable();
    ids.dedup();
    let n = ids.len();
    let m = block_edges.len();
    // A biconnected graph with E <= V is a cycle or a single edge.
    if n < 5 || m <= n {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let local = |v: u32| ids.binary_search(&v).unwrap() as u32;
    let edges: Vec<(u32, u32)> = block_edges
        .iter()
        .map(|&(u, v)| (local(u), local(v)))
        .collect();
    let g = Graph::from_edges(n, &edges).expect("block edges are simple");

    let mut embedded_edge = vec![false; m];
    let mut in_h = vec![false; n];
    let edge_index: std::collections::HashMap<(u32, u32), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
        .collect();
    let mark_edge = |u: u32, v: u32, embedded: &mut Vec<bool>| {
        embedded[edge_index[&(u.min(v), u.max(v))]] = true;
    };

    // Seed with any cycle, found by walking into unvisited neighbors until a
    // repeat; biconnected with m > n guarantees one.
    let cycle = find_cycle(&g);
    let mut faces: Vec<Vec<u32>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    for i in 0..cycle.len() {
        in_h[cycle[i] as usize] = true;
        mark_edge(cycle[i], cycle[(i + 1) % cycle.len()], &mut embedded_edge);
    }

    let mut remaining = m - cycle.len();
    while remaining > 0 {
        let fragments = collect_fragments(&g, &embedded_edge, &in_h, &edge_index);
        // Each fragment needs a face containing all its attachments; embed a
        // path of the most constrained fragment.
        let mut chosen: Option<(usize, Vec<usize>)> = None;
        for (fi, fragment) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| {
                    fragment
                        .attachments
                        .iter()
                        .all(|a| face.contains(a))
                })
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return false;
            }
            let better = match &chosen {
                None => true,
                Some((_, best)) => admissible.len() < best.len(),
            };
            if better {
                let single = admissible.len() == 1;
                chosen = Some((fi, admissible));
                if single {
                    break;
                }
            }
        }
        let (fi, admissible) = chosen.expect("remaining edges imply a fragment");
        let fragment = &fragments[fi];
        let path = fragment_path(&g, fragment, &in_h);
        let face_id = admissible[0];

        for w in &path[1..path.len() - 1] {
            in_h[*w as usize] = true;
        }
        for pair in path.windows(2) {
            mark_edge(pair[0], pair[1], &mut embedded_edge);
            remaining -= 1;
        }

        let face = faces.swap_remove(face_id);
        let (left, right) = split_face(&face, &path);
        faces.push(left);
        faces.push(right);
    }
    true
}

fn find_cycle(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut parent = vec![u32::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0u32, u32::MAX)];
    while let Some((u, p)) = stack.pop() {
        if depth[u as usize] != usize::MAX {
            continue;
        }
        parent[u as usize] = p;
        depth[u as usize] = if p == u32::MAX {
            0
        } else {
            depth[p as usize] + 1
        };
        for &v in g.neighbors(u) {
            if depth[v as usize] == usize::MAX {
                stack.push((v, u));
            } else if v != p {
                // Back edge (u, v): walk u up to v.
                let mut cycle = vec![u];
                let mut cur = u;
                while cur != v {
                    cur = parent[cur as usize];
                    cycle.push(cur);
                }
                return cycle;
            }
        }
    }
    unreachable!("biconnected block with more edges than vertices has a cycle");
}

fn collect_fragments(
    g: &Graph,
    embedded_edge: &[bool],
    in_h: &[bool],
    edge_index: &std::collections::HashMap<(u32, u32), usize>,
) -> Vec<Fragment> {
    let n = g.vertex_count();
    let mut fragments = Vec::new();
    // Lone chords between embedded vertices.
    for (&(u, v), &idx) in edge_index {
        if !embedded_edge[idx] && in_h[u as usize] && in_h[v as usize] {
            fragments.push(Fragment {
                attachments: vec![u, v],
                body: FragmentBody::Edge(u, v),
            });
        }
    }
    // Components of unembedded vertices plus their attachment edges.
    let mut seen = vec![false; n];
    for start in 0..n as u32 {
        if in_h[start as usize] || seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        let mut attachments = Vec::new();
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if in_h[v as usize] {
                    attachments.push(v);
                } else if !seen[v as usize] {
                    seen[v as usize] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        fragments.push(Fragment {
            attachments,
            body: FragmentBody::Component(comp),
        });
    }
    fragments
}

/// A path through the fragment between two distinct attachments; interior
/// vertices are unembedded.
fn fragment_path(g: &Graph, fragment: &Fragment, in_h: &[bool]) -> Vec<u32> {
    match &fragment.body {
        FragmentBody::Edge(u, v) => vec![*u, *v],
        FragmentBody::Component(comp) => {
            let start = fragment.attachments[0];
            let in_comp: std::collections::HashSet<u32> = comp.iter().copied().collect();
            let mut parent: std::collections::HashMap<u32, u32> = Default::default();
            let mut queue = std::collections::VecDeque::new();
            for &v in g.neighbors(start) {
                if in_comp.contains(&v) && !parent.contains_key(&v) {
                    parent.insert(v, start);
                    queue.push_back(v);
                }
            }
            while let Some(u) = queue.pop_front() {
                for &v in g.neighbors(u) {
                    if in_comp.contains(&v) {
                        if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(v) {
                            slot.insert(u);
                            queue.push_back(v);
                        }
                    } else if in_h[v as usize] && v != start {
                        // Found the second attachment; reconstruct.
                        let mut path = vec![v, u];
                        let mut cur = u;
                        while cur != start {
                            cur = parent[&cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return path;
                    }
                }
            }
            unreachable!("fragment of a biconnected block reaches two attachments");
        }
    }
}

/// Splits a face (simple cycle) along a path whose endpoints lie on it.
fn split_face(face: &[u32], path: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let r = face.len();
    let a = path[0];
    let b = path[path.len() - 1];
    let ia = face.iter().position(|&x| x == a).expect("endpoint on face");
    let ib = face.iter().position(|&x| x == b).expect("endpoint on face");
    let interior = &path[1..path.len() - 1];

    let mut left = Vec::new();
    let mut i = ia;
    loop {
        left.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % r;
    }
    left.extend(interior.iter().rev().copied());

    let mut right = Vec::new();
    let mut i = ib;
    loop {
        right.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % r;
    }
    right.extend(interior.iter().copied());

    (left, right)
}

/// Planar with a full edge count: for V >= 3, planar and E = 3V - 6; for
/// V <= 2 simply complete.
pub fn is_maximal_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n <= 2 {
        return m == n * n.saturating_sub(1) / 2;
    }
    m == 3 * n - 6 && is_planar(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    TwoSphere,
    K4,
    Neither,
}

/// Both sides of the classification, computed independently, plus their
/// agreement. `consistent` is `None` when recognition ran out of budget.
#[derive(Debug, Clone, Serialize)]
pub struct WhitneyVerdict {
    pub is_planar: bool,
    pub is_maximal_planar: bool,
    pub is_4_connected: bool,
    pub classification: Classification,
    pub consistent: Option<bool>,
}

/// Classifies `g` (at least one edge required): the left side checks
/// maximal planarity and 4-connectivity, the right side recognizes a
/// 2-sphere or K4, and `consistent` records whether the two sides agree.
pub fn whitney_classify(g: &Graph, budget: &Budget) -> Result<WhitneyVerdict> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("classification needs at least one edge"));
    }
    let planar = is_planar(g);
    let maximal = planar && is_maximal_planar(g);
    let four_connected = g.vertex_connectivity_at_least(4);
    let left = maximal && four_connected;

    let (classification, certified) = if *g == complete(4).expect("K4 exists") {
        (Classification::K4, true)
    } else {
        // Dimension first: only certified 2-manifolds can be 2-spheres, and
        // the dimension check never needs the expensive puncture search.
        let dim = manifold_dimension(g, budget);
        match dim.verdict {
            Verdict::Unknown => (Classification::Neither, false),
            Verdict::Yes if dim.dimension == Some(2) => {
                let sphere = sphere_dimension(g, budget);
                match sphere.verdict {
                    Verdict::Unknown => (Classification::Neither, false),
                    Verdict::Yes if sphere.dimension == Some(2) => {
                        (Classification::TwoSphere, true)
                    }
                    _ => (Classification::Neither, true),
                }
            }
            _ => (Classification::Neither, true),
        }
    };

    let consistent = certified.then(|| left == (classification != Classification::Neither));
    Ok(WhitneyVerdict {
        is_planar: planar,
        is_maximal_planar: maximal,
        is_4_connected: four_connected,
        classification,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        complete, cross_polytope, cycle, icosahedron, klein_bottle_grid, projective_plane,
        torus_grid, zykov_join,
    };
    use crate::graph::VertexSet;
    use crate::rng::{erdos_renyi, SplitMix64};
    use crate::transforms::barycentric_refinement;

    fn budget() -> Budget {
        Budget::default()
    }

    fn octahedron() -> Graph {
        cross_polytope(2)
    }

    fn k33() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i.min((i + 1) % 5), i.max((i + 1) % 5)));
            edges.push((i, i + 5));
            edges.push((5 + i.min((i + 2) % 5), 5 + i.max((i + 2) % 5)));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    fn wheel(rim: usize) -> Graph {
        zykov_join(&Graph::new(1), &cycle(rim).unwrap())
    }

    #[test]
    fn planar_families() {
        assert!(is_planar(&octahedron()));
        assert!(is_planar(&icosahedron()));
        assert!(is_planar(&complete(4).unwrap()));
        assert!(is_planar(&cycle(9).unwrap()));
        for rim in 4..=7 {
            assert!(is_planar(&wheel(rim)));
        }
        let tree = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert!(is_planar(&tree));
        assert!(is_planar(&Graph::new(0)));
        assert!(is_planar(&barycentric_refinement(&octahedron()).unwrap()));
        assert!(is_planar(&barycentric_refinement(&icosahedron()).unwrap()));
    }

    #[test]
    fn non_planar_families() {
        assert!(!is_planar(&complete(5).unwrap()));
        assert!(!is_planar(&complete(6).unwrap()));
        assert!(!is_planar(&k33()));
        assert!(!is_planar(&petersen()));
        assert!(!is_planar(&torus_grid(4, 4).unwrap()));
        assert!(!is_planar(&klein_bottle_grid(4, 4).unwrap()));
        assert!(!is_planar(&projective_plane()));
        assert!(!is_planar(&cross_polytope(3)));
    }

    #[test]
    fn subdividing_edges_preserves_non_planarity() {
        // Edge-refined K5 and K3,3 are the Kuratowski obstructions.
        for base in [complete(5).unwrap(), k33()] {
            let n = base.vertex_count();
            let mut edges = Vec::new();
            let mut next = n as u32;
            for (u, v) in base.edges() {
                edges.push((u, next));
                edges.push((v, next));
                next += 1;
            }
            let subdivided = Graph::from_edges(next as usize, &edges).unwrap();
            assert!(!is_planar(&subdivided));
            // Hiding the obstruction inside a larger planar context.
            let mut padded = subdivided.edges();
            padded.push((0, next));
            let with_tail = Graph::from_edges(next as usize + 1, &padded).unwrap();
            assert!(!is_planar(&with_tail));
        }
    }

    #[test]
    fn planarity_is_monotone_under_edge_deletion() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..25 {
            let n = 6 + rng.next_below(4) as usize;
            let mut g = erdos_renyi(n, 0.55, rng.next_u64());
            let mut planar = is_planar(&g);
            while g.edge_count() > 0 {
                let edges = g.edges();
                let drop = edges[rng.next_below(edges.len() as u64) as usize];
                let kept: Vec<(u32, u32)> =
                    edges.into_iter().filter(|&e| e != drop).collect();
                g = Graph::from_edges(n, &kept).unwrap();
                let now = is_planar(&g);
                assert!(!planar || now, "deleting an edge broke planarity");
                planar = now;
            }
            assert!(planar);
        }
    }

    /// Random stacked triangulation: insert each vertex into a current
    /// face and replace it; planar by construction with E = 3V - 6.
    fn stacked_triangulation(vertices: usize, rng: &mut SplitMix64) -> Graph {
        let mut edges = vec![(0u32, 1u32), (0, 2), (1, 2)];
        let mut faces = vec![[0u32, 1, 2]];
        for v in 3..vertices as u32 {
            let idx = rng.next_below(faces.len() as u64) as usize;
            let t = faces.swap_remove(idx);
            for c in t {
                edges.push((c.min(v), c.max(v)));
            }
            faces.push([t[0], t[1], v]);
            faces.push([t[0], t[2], v]);
            faces.push([t[1], t[2], v]);
        }
        Graph::from_edges(vertices, &edges).unwrap()
    }

    #[test]
    fn stacked_triangulations_are_maximal_planar_until_spoiled() {
        for seed in 0..60u64 {
            let mut rng = SplitMix64::derive(0xa110, seed);
            let n = 5 + rng.next_below(35) as usize;
            let g = stacked_triangulation(n, &mut rng);
            assert_eq!(g.edge_count(), 3 * n - 6, "seed {seed}");
            assert!(is_planar(&g), "seed {seed}");
            assert!(is_maximal_planar(&g), "seed {seed}");
            if n < 12 {
                continue;
            }
            // A K5 subdivision on five random branch vertices breaks it.
            let mut branch: Vec<u32> = Vec::new();
            while branch.len() < 5 {
                let v = rng.next_below(n as u64) as u32;
                if !branch.contains(&v) {
                    branch.push(v);
                }
            }
            let mut edges = g.edges();
            let mut next = n as u32;
            for i in 0..5 {
                for j in (i + 1)..5 {
                    edges.push((branch[i].min(next), branch[i].max(next)));
                    edges.push((branch[j].min(next), branch[j].max(next)));
                    next += 1;
                }
            }
            edges.sort_unstable();
            edges.dedup();
            let spoiled = Graph::from_edges(next as usize, &edges).unwrap();
            assert!(!is_planar(&spoiled), "seed {seed}");
        }
    }

    #[test]
    fn disconnected_graphs_are_planar_iff_components_are() {
        let mut edges = complete(4).unwrap().edges();
        for (u, v) in complete(5).unwrap().edges() {
            edges.push((u + 4, v + 4));
        }
        let k4_plus_k5 = Graph::from_edges(9, &edges).unwrap();
        assert!(!is_planar(&k4_plus_k5));

        let mut edges = complete(4).unwrap().edges();
        for (u, v) in octahedron().edges() {
            edges.push((u + 4, v + 4));
        }
        let k4_plus_octa = Graph::from_edges(10, &edges).unwrap();
        assert!(is_planar(&k4_plus_octa));
    }

    #[test]
    fn maximal_planarity_by_edge_count() {
        assert!(is_maximal_planar(&octahedron()));
        assert!(is_maximal_planar(&icosahedron()));
        assert!(is_maximal_planar(&complete(4).unwrap()));
        assert!(is_maximal_planar(&barycentric_refinement(&octahedron()).unwrap()));
        assert!(!is_maximal_planar(&wheel(5)));
        assert!(!is_maximal_planar(&cycle(5).unwrap()));
        assert!(!is_maximal_planar(&complete(5).unwrap()));
        assert!(is_maximal_planar(&complete(2).unwrap()));
        assert!(is_maximal_planar(&Graph::new(1)));
        assert!(!is_maximal_planar(&Graph::new(2)));
    }

    #[test]
    fn two_spheres_classify_consistently() {
        for g in [
            octahedron(),
            icosahedron(),
            barycentric_refinement(&octahedron()).unwrap(),
        ] {
            let v = whitney_classify(&g, &budget()).unwrap();
            assert!(v.is_planar && v.is_maximal_planar && v.is_4_connected);
            assert_eq!(v.classification, Classification::TwoSphere);
            assert_eq!(v.consistent, Some(true));
        }
    }

    #[test]
    fn k4_classifies_as_itself() {
        let v = whitney_classify(&complete(4).unwrap(), &budget()).unwrap();
        assert!(v.is_maximal_planar && v.is_4_connected);
        assert_eq!(v.classification, Classification::K4);
        assert_eq!(v.consistent, Some(true));
    }

    #[test]
    fn negative_controls_classify_consistently() {
        // Non-planar controls plus planar graphs that are not maximal.
        let octa_minus: Graph = {
            let g = octahedron();
            g.induced_subgraph(&VertexSet::from_iter(6, 1..6))
        };
        let graphs: Vec<Graph> = vec![
            complete(5).unwrap(),
            k33(),
            petersen(),
            torus_grid(4, 4).unwrap(),
            klein_bottle_grid(4, 4).unwrap(),
            projective_plane(),
            wheel(4),
            wheel(5),
            wheel(6),
            wheel(7),
            octa_minus,
            cycle(6).unwrap(),
        ];
        for g in graphs {
            let v = whitney_classify(&g, &budget()).unwrap();
            assert_eq!(v.classification, Classification::Neither, "{g:?}");
            assert_eq!(v.consistent, Some(true), "{g:?}");
        }
    }

    #[test]
    fn icosahedron_minus_vertex_loses_maximality() {
        let ico = icosahedron();
        let rest = ico.induced_subgraph(&VertexSet::from_iter(12, 1..12));
        assert_eq!(rest.edge_count(), 25);
        let v = whitney_classify(&rest, &budget()).unwrap();
        assert!(v.is_planar);
        assert!(!v.is_maximal_planar);
        assert_eq!(v.classification, Classification::Neither);
        assert_eq!(v.consistent, Some(true));
    }

    #[test]
    fn corpus_two_spheres_are_tetrahedral_free() {
        for g in [
            octahedron(),
            icosahedron(),
            barycentric_refinement(&octahedron()).unwrap(),
            barycentric_refinement(&icosahedron()).unwrap(),
        ] {
            assert_eq!(g.f_vector().unwrap().get(3), 0);
        }
    }

    #[test]
    fn classification_requires_an_edge() {
        assert!(whitney_classify(&Graph::new(3), &budget()).is_err());
    }
}
