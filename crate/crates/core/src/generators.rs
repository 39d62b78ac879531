//! Deterministic constructors for the graph families used throughout:
//! cycles, complete graphs, Zykov joins, cross polytopes, the icosahedron,
//! flat torus and Klein bottle grids, a projective plane, a Freudenthal
//! 3-torus, and barycentric graphs of simplicial complexes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Cyclic graph on `n >= 3` vertices. `cycle(3)` equals `complete(3)`; it is
/// a valid graph here even though it is rejected as a 1-sphere downstream.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("cycle needs at least 3 vertices"));
    }
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .map(|i| (i, (i + 1) % n as u32))
        .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
        .collect();
    Graph::from_edges(n, &edges)
}

/// Complete graph on `n >= 1` vertices.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs at least 1 vertex"));
    }
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Zykov join: disjoint union plus every edge between the two sides. The
/// f-polynomials of the factors multiply.
pub fn zykov_join(g: &Graph, h: &Graph) -> Graph {
    let ng = g.vertex_count();
    let nh = h.vertex_count();
    let mut edges = g.edges();
    for (u, v) in h.edges() {
        edges.push((u + ng as u32, v + ng as u32));
    }
    for u in 0..ng as u32 {
        for v in 0..nh as u32 {
            edges.push((u, v + ng as u32));
        }
    }
    let joined = Graph::from_edges(ng + nh, &edges).expect("join of simple graphs is simple");
    match (g.labels(), h.labels()) {
        (None, None) => joined,
        (gl, hl) => {
            let mut labels = Vec::with_capacity(ng + nh);
            match gl {
                Some(l) => labels.extend(l.iter().cloned()),
                None => labels.resize(ng, None),
            }
            match hl {
                Some(l) => labels.extend(l.iter().cloned()),
                None => labels.resize(ng + nh, None),
            }
            joined.with_labels(labels).expect("label count matches")
        }
    }
}

/// The smallest d-sphere: iterated join of `d + 1` copies of the two-point
/// edgeless graph. `2(d+1)` vertices of degree `2d`; vertex `2i` is the
/// antipode of `2i + 1`.
pub fn cross_polytope(d: usize) -> Graph {
    let n = 2 * (d + 1);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if !(u % 2 == 0 && v == u + 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("cross polytope is simple")
}

/// The 12-vertex icosahedron from a fixed edge list: poles 0 and 11, upper
/// ring 1..=5, lower ring 6..=10.
pub fn icosahedron() -> Graph {
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)];
    edges.extend([(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]);
    edges.extend([(6, 11), (7, 11), (8, 11), (9, 11), (10, 11)]);
    edges.extend([(6, 7), (7, 8), (8, 9), (9, 10), (6, 10)]);
    edges.extend([
        (1, 6),
        (1, 7),
        (2, 7),
        (2, 8),
        (3, 8),
        (3, 9),
        (4, 9),
        (4, 10),
        (5, 10),
        (5, 6),
    ]);
    Graph::from_edges(12, &edges).expect("icosahedron edge list is simple")
}

/// Flat triangulated torus on `Z_m x Z_n` with edge directions (1,0), (0,1)
/// and (1,1). Smaller wraps create chords inside unit spheres, so both sides
/// must be at least 4.
pub fn torus_grid(m: usize, n: usize) -> Result<Graph> {
    if m < 4 || n < 4 {
        return Err(Error::invalid("torus grid needs m, n >= 4"));
    }
    let id = |i: usize, j: usize| (i % m * n + j % n) as u32;
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push(ordered(id(i, j), id(i + 1, j)));
            edges.push(ordered(id(i, j), id(i, j + 1)));
            edges.push(ordered(id(i, j), id(i + 1, j + 1)));
        }
    }
    Graph::from_edges(m * n, &edges)
}

/// Klein bottle grid: the torus construction with the row wrap glued through
/// the reflection `i -> m - 1 - i`. The seam quadrilaterals get their own
/// diagonals, so the triangle count stays `2mn`. `m` must be even so the
/// reversed identification respects the diagonal direction.
pub fn klein_bottle_grid(m: usize, n: usize) -> Result<Graph> {
    if m < 4 || n < 4 {
        return Err(Error::invalid("klein bottle grid needs m, n >= 4"));
    }
    if m % 2 != 0 {
        return Err(Error::invalid("klein bottle grid needs even m"));
    }
    let id = |i: usize, j: usize| (i % m * n + j) as u32;
    let flip = |i: usize| (m - 1 - i % m) % m;
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push(ordered(id(i, j), id(i + 1, j)));
            if j + 1 < n {
                edges.push(ordered(id(i, j), id(i, j + 1)));
                edges.push(ordered(id(i, j), id(i + 1, j + 1)));
            } else {
                edges.push(ordered(id(i, j), id(flip(i), 0)));
                edges.push(ordered(id(i, j), id(flip(i + 1), 0)));
            }
        }
    }
    Graph::from_edges(m * n, &edges)
}

/// A triangulated projective plane: the barycentric graph of the 6-vertex
/// hemi-icosahedron complex. 31 vertices, 90 edges, 60 triangles, Euler
/// characteristic 1, every unit sphere an induced cycle.
pub fn projective_plane() -> Graph {
    let complex = SimplicialComplex::new(
        [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect(),
    )
    .expect("hemi-icosahedron facets are well formed");
    barycentric_of_complex(&complex).expect("fixed complex refines")
}

/// Freudenthal-triangulated 3-torus on `Z_n^3`: each vertex is adjacent in
/// the 14 directions given by the nonzero 0/1 vectors and their negatives,
/// so `E/V = 7`. Wrap chords appear below n = 5.
pub fn three_torus(n: usize) -> Result<Graph> {
    if n < 5 {
        return Err(Error::invalid("3-torus grid needs n >= 5"));
    }
    const DIRECTIONS: [(usize, usize, usize); 7] = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (0, 1, 1),
        (1, 1, 1),
        (1, 0, 1),
    ];
    let id = |x: usize, y: usize, z: usize| ((x % n * n + y % n) * n + z % n) as u32;
    let mut edges = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for &(dx, dy, dz) in &DIRECTIONS {
                    edges.push(ordered(id(x, y, z), id(x + dx, y + dy, z + dz)));
                }
            }
        }
    }
    Graph::from_edges(n * n * n, &edges)
}

fn ordered(u: u32, v: u32) -> (u32, u32) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Abstract simplicial complex given by its maximal faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Validates: nonempty facets without repeated vertices, pairwise
    /// non-contained, and a dense vertex range.
    pub fn new(facets: Vec<Vec<u32>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::invalid("complex needs at least one facet"));
        }
        let mut sorted_facets: Vec<Vec<u32>> = Vec::with_capacity(facets.len());
        for f in &facets {
            if f.is_empty() {
                return Err(Error::invalid("empty facet"));
            }
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("repeated vertex in facet {f:?}")));
            }
            sorted_facets.push(s);
        }
        for (i, a) in sorted_facets.iter().enumerate() {
            for (j, b) in sorted_facets.iter().enumerate() {
                if i != j && a.iter().all(|v| b.binary_search(v).is_ok()) {
                    return Err(Error::invalid(format!(
                        "facet {a:?} is contained in facet {b:?}"
                    )));
                }
            }
        }
        let mut seen: Vec<u32> = sorted_facets.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        if seen
            .iter()
            .enumerate()
            .any(|(i, &v)| v != i as u32)
        {
            return Err(Error::invalid("vertex ids are not dense"));
        }
        Ok(SimplicialComplex {
            facets: sorted_facets,
        })
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// Every nonempty face, sorted by (size, lexicographic order).
    pub fn faces(&self) -> Vec<Vec<u32>> {
        let mut faces: BTreeSet<Vec<u32>> = BTreeSet::new();
        for facet in &self.facets {
            for subset in nonempty_subsets(facet) {
                faces.insert(subset);
            }
        }
        let mut out: Vec<Vec<u32>> = faces.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub(crate) fn nonempty_subsets(sorted: &[u32]) -> Vec<Vec<u32>> {
    let k = sorted.len();
    let mut out = Vec::with_capacity((1usize << k) - 1);
    for mask in 1u32..(1 << k) {
        out.push(
            (0..k)
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| sorted[b])
                .collect(),
        );
    }
    out
}

/// Barycentric graph of a complex: one vertex per nonempty face, one edge
/// per strict containment. Labels record the originating face.
pub fn barycentric_of_complex(complex: &SimplicialComplex) -> Result<Graph> {
    let faces = complex.faces();
    let index: std::collections::HashMap<&[u32], u32> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i as u32))
        .collect();
    let mut edges = Vec::new();
    for (i, face) in faces.iter().enumerate() {
        if face.len() == 1 {
            continue;
        }
        for subset in nonempty_subsets(face) {
            if subset.len() < face.len() {
                let j = index[subset.as_slice()];
                edges.push(ordered(j, i as u32));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let labels = faces
        .iter()
        .map(|f| {
            Some(
                f.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            )
        })
        .collect();
    Graph::from_edges(faces.len(), &edges)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arboricity::phi;
    use crate::ratio::ExactRatio;
    use crate::rng::{erdos_renyi, SplitMix64};
    use crate::topology::{f_polynomial, manifold_dimension, sphere_dimension, Budget};

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn cycle_and_complete_basics() {
        let c4 = cycle(4).unwrap();
        assert_eq!(sphere_dimension(&c4, &budget()).dimension, Some(1));
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert_eq!(complete(4).unwrap().edge_count(), 6);
    }

    #[test]
    fn join_of_two_point_graphs_is_the_circle() {
        let s0 = Graph::new(2);
        let joined = zykov_join(&s0, &s0);
        assert_eq!(joined, cross_polytope(1));
        assert_eq!(sphere_dimension(&joined, &budget()).dimension, Some(1));
    }

    #[test]
    fn join_adds_sphere_dimensions() {
        let s0 = Graph::new(2);
        let s1 = cycle(4).unwrap();
        for (a, b, expect) in [
            (&s0, &s0, 1),
            (&s0, &s1, 2),
            (&s1, &s0, 2),
            (&s1, &s1, 3),
        ] {
            let j = zykov_join(a, b);
            assert_eq!(sphere_dimension(&j, &budget()).dimension, Some(expect));
        }
    }

    #[test]
    fn join_multiplies_f_polynomials() {
        let mut rng = SplitMix64::new(11);
        for trial in 0..50 {
            let na = 1 + rng.next_below(5) as usize;
            let nb = 1 + rng.next_below(5) as usize;
            let a = erdos_renyi(na, 0.5, rng.next_u64());
            let b = erdos_renyi(nb, 0.5, rng.next_u64());
            let j = zykov_join(&a, &b);
            let product = f_polynomial(&a).unwrap().mul(&f_polynomial(&b).unwrap());
            assert_eq!(f_polynomial(&j).unwrap(), product, "trial {trial}");
        }
    }

    #[test]
    fn cross_polytope_equals_iterated_join() {
        let s0 = Graph::new(2);
        let mut joined = s0.clone();
        for d in 1..=4 {
            joined = zykov_join(&joined, &s0);
            assert_eq!(joined, cross_polytope(d), "d={d}");
        }
        for d in 0..=4 {
            let g = cross_polytope(d);
            assert_eq!(g.vertex_count(), 2 * (d + 1));
            assert!(g.vertices().all(|v| g.degree(v) == 2 * d));
        }
    }

    #[test]
    fn cross_polytope_f_vectors() {
        assert_eq!(cross_polytope(2).f_vector().unwrap().counts(), &[6, 12, 8]);
        assert_eq!(cross_polytope(3).f_vector().unwrap().counts(), &[8, 24, 32, 16]);
        assert_eq!(cross_polytope(0).edge_count(), 0);
    }

    #[test]
    fn icosahedron_counts() {
        let g = icosahedron();
        assert_eq!(g.f_vector().unwrap().counts(), &[12, 30, 20]);
        assert_eq!(g.euler_characteristic().unwrap(), 2);
        assert_eq!(manifold_dimension(&g, &budget()).dimension, Some(2));
    }

    #[test]
    fn torus_grid_counts_and_flatness() {
        let t = torus_grid(4, 4).unwrap();
        assert_eq!(t.f_vector().unwrap().counts(), &[16, 48, 32]);
        assert_eq!(t.euler_characteristic().unwrap(), 0);
        assert_eq!(phi(&t).unwrap(), ExactRatio::new(16, 5));
        assert!(t.vertices().all(|v| t.degree(v) == 6));

        let t54 = torus_grid(5, 4).unwrap();
        assert_eq!(t54.f_vector().unwrap().counts(), &[20, 60, 40]);
        assert_eq!(manifold_dimension(&t54, &budget()).dimension, Some(2));

        assert!(torus_grid(3, 5).is_err());
        assert!(torus_grid(5, 3).is_err());
    }

    #[test]
    fn klein_bottle_matches_torus_counts() {
        let k = klein_bottle_grid(4, 4).unwrap();
        let t = torus_grid(4, 4).unwrap();
        assert_eq!(k.f_vector().unwrap(), t.f_vector().unwrap());
        assert_eq!(k.euler_characteristic().unwrap(), 0);
        assert_eq!(manifold_dimension(&k, &budget()).dimension, Some(2));
        assert_eq!(manifold_dimension(&klein_bottle_grid(6, 4).unwrap(), &budget()).dimension, Some(2));
        assert_eq!(manifold_dimension(&klein_bottle_grid(4, 5).unwrap(), &budget()).dimension, Some(2));
        assert!(k.f_vector().unwrap().get(2) >= 20);
    }

    #[test]
    fn klein_bottle_parity_contract() {
        assert!(klein_bottle_grid(5, 4).is_err());
        assert!(klein_bottle_grid(7, 5).is_err());
        assert!(klein_bottle_grid(4, 3).is_err());
        assert!(klein_bottle_grid(2, 6).is_err());
    }

    #[test]
    fn projective_plane_counts() {
        let p = projective_plane();
        assert_eq!(p.f_vector().unwrap().counts(), &[31, 90, 60]);
        assert_eq!(p.euler_characteristic().unwrap(), 1);
        assert_eq!(phi(&p).unwrap(), ExactRatio::from_int(3));
        assert_eq!(manifold_dimension(&p, &budget()).dimension, Some(2));
        // Unit spheres are induced cycles of length 4, 6 or 10.
        for v in p.vertices() {
            let s = p.unit_sphere(v).unwrap();
            assert_eq!(s.vertex_count(), s.edge_count());
            assert!(s.is_connected());
            assert!(matches!(s.vertex_count(), 4 | 6 | 10));
        }
    }

    #[test]
    fn projective_plane_labels_record_faces() {
        let p = projective_plane();
        assert_eq!(p.label(0), Some("0"));
        let labels: Vec<&str> = p.vertices().filter_map(|v| p.label(v)).collect();
        assert_eq!(labels.len(), 31);
        assert!(labels.contains(&"0,1,2"));
        assert!(labels.contains(&"1,3,5"));
    }

    #[test]
    fn three_torus_counts() {
        let t = three_torus(5).unwrap();
        assert_eq!(t.vertex_count(), 125);
        assert_eq!(t.edge_count(), 875);
        assert!(t.vertices().all(|v| t.degree(v) == 14));
        let f = t.f_vector().unwrap();
        assert_eq!(f.counts(), &[125, 875, 1500, 750]);
        assert_eq!(f.euler_characteristic(), 0);
        assert!(three_torus(4).is_err());
    }

    #[test]
    fn three_torus_is_a_three_manifold() {
        let t = three_torus(5).unwrap();
        assert_eq!(manifold_dimension(&t, &budget()).dimension, Some(3));
    }

    #[test]
    fn barycentric_of_triangle_complex() {
        let triangle = SimplicialComplex::new(vec![vec![0, 1, 2]]).unwrap();
        let g = barycentric_of_complex(&triangle).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn barycentric_of_single_edge_is_a_path() {
        let edge = SimplicialComplex::new(vec![vec![0, 1]]).unwrap();
        let g = barycentric_of_complex(&edge).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_connected());
    }

    #[test]
    fn complex_validation() {
        assert!(SimplicialComplex::new(vec![]).is_err());
        assert!(SimplicialComplex::new(vec![vec![]]).is_err());
        assert!(SimplicialComplex::new(vec![vec![0, 0, 1]]).is_err());
        // Contained facet.
        assert!(SimplicialComplex::new(vec![vec![0, 1, 2], vec![0, 1]]).is_err());
        // Sparse ids.
        assert!(SimplicialComplex::new(vec![vec![0, 2]]).is_err());
        // Order inside a facet does not matter.
        let a = SimplicialComplex::new(vec![vec![2, 0, 1]]).unwrap();
        let b = SimplicialComplex::new(vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(barycentric_of_complex(&a).unwrap(), barycentric_of_complex(&b).unwrap());
    }
}
