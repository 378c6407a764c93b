//! Signed multigraph data model: edges carry a sign, parallel edges are kept
//! apart by dense edge ids, loops are rejected. Switching and inversing
//! equivalence, signature normalization and the small graph constructions
//! used by the solvers live here.

use crate::error::{Error, Result};
use crate::maxflow::FlowNetwork;
use num_rational::Rational64;

/// Edge sign of a signed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    /// Product of two signs.
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// One edge of a signed multigraph. Endpoints are stored in file order; the
/// stored order also serves as the reference direction for orientations and
/// flow values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub w: usize,
    pub sign: Sign,
}

/// A signed multigraph `(G, sigma)`. Edge ids are dense `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Sign)>) -> Result<Self> {
        for (i, &(u, w, _)) in edges.iter().enumerate() {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, count: n });
            }
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, count: n });
            }
            if u == w {
                return Err(Error::LoopEdge { vertex: u, line: i });
            }
        }
        Ok(SignedGraph {
            n,
            edges: edges.into_iter().map(|(u, w, sign)| Edge { u, w, sign }).collect(),
        })
    }

    /// All-positive graph on the same underlying multigraph.
    pub fn all_positive(&self) -> SignedGraph {
        self.with_signs(|_| Sign::Plus)
    }

    /// All-negative graph on the same underlying multigraph.
    pub fn all_negative(&self) -> SignedGraph {
        self.with_signs(|_| Sign::Minus)
    }

    pub fn with_signs(&self, f: impl Fn(usize) -> Sign) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| Edge { u: e.u, w: e.w, sign: f(i) })
            .collect();
        SignedGraph { n: self.n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sign(&self, id: usize) -> Sign {
        self.edges[id].sign
    }

    pub fn check_edge_id(&self, id: usize) -> Result<()> {
        if id >= self.edges.len() {
            Err(Error::EdgeOutOfRange { edge: id, count: self.edges.len() })
        } else {
            Ok(())
        }
    }

    pub fn negative_edges(&self) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| self.sign(e).is_negative()).collect()
    }

    /// Adjacency list: for each vertex the incident `(edge_id, other_end)` pairs.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((i, e.w));
            adj[e.w].push((i, e.u));
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.u == v || e.w == v).count()
    }

    pub fn positive_degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.u == v || e.w == v) && e.sign == Sign::Plus)
            .count()
    }

    pub fn negative_degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.u == v || e.w == v) && e.sign == Sign::Minus)
            .count()
    }

    pub fn is_eulerian(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) % 2 == 0)
    }

    /// Connected component label per vertex, labels dense `0..c`.
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut c = 0;
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![root];
            label[root] = c;
            while let Some(v) = stack.pop() {
                for &(_, o) in &adj[v] {
                    if label[o] == usize::MAX {
                        label[o] = c;
                        stack.push(o);
                    }
                }
            }
            c += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.component_labels().iter().max().unwrap() + 1
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Edges with exactly one endpoint in `side` (indicator per vertex).
    pub fn coboundary(&self, side: &[bool]) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| side[e.u] != side[e.w])
            .map(|(i, _)| i)
            .collect()
    }

    /// Sign of an edge set: product of the edge signs.
    pub fn set_sign(&self, edge_ids: &[usize]) -> Sign {
        let neg = edge_ids.iter().filter(|&&e| self.sign(e).is_negative()).count();
        if neg % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Vertices whose singleton cut is negative, i.e. with an odd number of
    /// incident negative edges. Two signatures on the same underlying graph
    /// are inversing equivalent exactly when these sets agree.
    pub fn negative_singleton_cuts(&self) -> Vec<bool> {
        let mut odd = vec![false; self.n];
        for e in &self.edges {
            if e.sign.is_negative() {
                odd[e.u] = !odd[e.u];
                odd[e.w] = !odd[e.w];
            }
        }
        odd
    }

    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(other.edges.iter()).all(|(a, b)| {
                (a.u == b.u && a.w == b.w) || (a.u == b.w && a.w == b.u)
            })
    }

    /// Flip the signs of all edges in the coboundary of `set`.
    pub fn switched(&self, set: &[usize]) -> SignedGraph {
        let mut side = vec![false; self.n];
        for &v in set {
            side[v] = true;
        }
        let mut g = self.clone();
        for e in &mut g.edges {
            if side[e.u] != side[e.w] {
                e.sign = e.sign.flipped();
            }
        }
        g
    }

    /// Flip the signs of all edges in `subset`, which must induce an
    /// even-degree subgraph (a disjoint union of cycles over GF(2)).
    pub fn inverted_on(&self, subset: &[usize]) -> Result<SignedGraph> {
        let mut deg = vec![0usize; self.n];
        for &e in subset {
            self.check_edge_id(e)?;
            deg[self.edges[e].u] += 1;
            deg[self.edges[e].w] += 1;
        }
        if let Some(v) = (0..self.n).find(|&v| deg[v] % 2 == 1) {
            return Err(Error::OddDegreeSubset { vertex: v });
        }
        let mut g = self.clone();
        for &e in subset {
            g.edges[e].sign = g.edges[e].sign.flipped();
        }
        Ok(g)
    }

    /// Inversing equivalence: same underlying graph and the same set of
    /// negative singleton cuts.
    pub fn inversing_equivalent(&self, other: &SignedGraph) -> Result<bool> {
        if !self.same_underlying(other) {
            return Err(Error::MismatchedUnderlying);
        }
        Ok(self.negative_singleton_cuts() == other.negative_singleton_cuts())
    }

    /// Switching equivalence: same underlying graph and equal signs on the
    /// fundamental cycles of a spanning forest.
    pub fn switching_equivalent(&self, other: &SignedGraph) -> Result<bool> {
        if !self.same_underlying(other) {
            return Err(Error::MismatchedUnderlying);
        }
        Ok(self.find_switching(other).is_some())
    }

    /// A vertex set S with `other = self.switched(S)`, if one exists.
    pub fn find_switching(&self, other: &SignedGraph) -> Option<Vec<usize>> {
        // Greedy over a spanning forest: fix the root state, propagate the
        // forced state along tree edges, then check the co-tree edges.
        let adj = self.adjacency();
        let mut state: Vec<Option<bool>> = vec![None; self.n];
        let mut order = Vec::new();
        for root in 0..self.n {
            if state[root].is_some() {
                continue;
            }
            state[root] = Some(false);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &(e, o) in &adj[v] {
                    if state[o].is_none() {
                        let flip = self.sign(e) != other.sign(e);
                        state[o] = Some(state[v].unwrap() ^ flip);
                        queue.push_back(o);
                    }
                }
            }
        }
        let state: Vec<bool> = state.into_iter().map(|s| s.unwrap()).collect();
        for (e, edge) in self.edges.iter().enumerate() {
            let flipped = state[edge.u] ^ state[edge.w];
            let differs = self.sign(e) != other.sign(e);
            if flipped != differs {
                return None;
            }
        }
        Some((0..self.n).filter(|&v| state[v]).collect())
    }

    /// Number of inversing-equivalence classes of signatures on the
    /// underlying graph: `2^(n - c)`.
    pub fn inversing_class_count(&self) -> u128 {
        let c = self.component_count();
        1u128 << (self.n - c)
    }

    /// Move all negative edges into the given spanning tree by inversing on
    /// the fundamental cycle of each negative co-tree edge.
    pub fn normalized_to_tree(&self, tree: &[usize]) -> Result<SignedGraph> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let (parent, parent_edge, depth) = self.tree_structure(tree)?;
        let mut g = self.clone();
        let in_tree = {
            let mut t = vec![false; self.edge_count()];
            for &e in tree {
                t[e] = true;
            }
            t
        };
        for e in 0..self.edge_count() {
            if in_tree[e] || !g.sign(e).is_negative() {
                continue;
            }
            // Invert on the fundamental cycle of e: flip e and its tree path.
            g.edges[e].sign = g.edges[e].sign.flipped();
            let (mut a, mut b) = (self.edges[e].u, self.edges[e].w);
            while a != b {
                if depth[a] >= depth[b] {
                    g.edges[parent_edge[a]].sign = g.edges[parent_edge[a]].sign.flipped();
                    a = parent[a];
                } else {
                    g.edges[parent_edge[b]].sign = g.edges[parent_edge[b]].sign.flipped();
                    b = parent[b];
                }
            }
        }
        Ok(g)
    }

    /// Validate `tree` as a spanning tree and return rooted parent pointers.
    fn tree_structure(&self, tree: &[usize]) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        if self.n == 0 || tree.len() != self.n - 1 {
            return Err(Error::NotSpanningTree(tree.to_vec()));
        }
        let mut adj = vec![Vec::new(); self.n];
        for &e in tree {
            self.check_edge_id(e)?;
            let edge = self.edges[e];
            adj[edge.u].push((e, edge.w));
            adj[edge.w].push((e, edge.u));
        }
        let mut parent = vec![usize::MAX; self.n];
        let mut parent_edge = vec![usize::MAX; self.n];
        let mut depth = vec![0usize; self.n];
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        parent[0] = 0;
        while let Some(v) = stack.pop() {
            for &(e, o) in &adj[v] {
                if !seen[o] {
                    seen[o] = true;
                    parent[o] = v;
                    parent_edge[o] = e;
                    depth[o] = depth[v] + 1;
                    stack.push(o);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::NotSpanningTree(tree.to_vec()));
        }
        Ok((parent, parent_edge, depth))
    }

    /// A spanning forest as a list of edge ids (BFS per component).
    pub fn spanning_forest(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut forest = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(e, o) in &adj[v] {
                    if !seen[o] {
                        seen[o] = true;
                        forest.push(e);
                        queue.push_back(o);
                    }
                }
            }
        }
        forest
    }

    /// Every edge whose removal disconnects its component.
    pub fn bridges(&self) -> Vec<usize> {
        // Tarjan low-link, iterative; parallel edges are never bridges.
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut time = 0usize;
        let mut out = Vec::new();
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            // stack entries: (vertex, incoming edge id, adjacency cursor)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, in_edge, ref mut cursor)) = stack.last_mut() {
                if *cursor < adj[v].len() {
                    let (e, o) = adj[v][*cursor];
                    *cursor += 1;
                    if e == in_edge {
                        continue;
                    }
                    if disc[o] == usize::MAX {
                        disc[o] = time;
                        low[o] = time;
                        time += 1;
                        stack.push((o, e, 0));
                    } else {
                        low[v] = low[v].min(disc[o]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(in_edge);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn has_positive_bridge(&self) -> bool {
        self.bridges().into_iter().any(|e| self.sign(e) == Sign::Plus)
    }

    /// Minimum cut size of the underlying multigraph; 0 when disconnected.
    /// For a single vertex there is no cut and `usize::MAX` is returned.
    pub fn edge_connectivity(&self) -> usize {
        if self.n <= 1 {
            return usize::MAX;
        }
        if !self.is_connected() {
            return 0;
        }
        let one = Rational64::from_integer(1);
        let mut best = usize::MAX;
        for t in 1..self.n {
            let mut net = FlowNetwork::new(self.n);
            for e in &self.edges {
                net.add_edge(e.u, e.w, one);
                net.add_edge(e.w, e.u, one);
            }
            let f = net.max_flow(0, t);
            best = best.min(f.to_integer() as usize);
        }
        best
    }

    /// Replace each edge by `k` parallel copies with the same sign. Copy `j`
    /// of edge `e` gets id `e * k + j`; the provenance map records
    /// `new_id -> (e, j)`.
    pub fn multiply_edges(&self, k: usize) -> (SignedGraph, Vec<(usize, usize)>) {
        assert!(k >= 1, "multiplicity must be at least 1");
        let mut edges = Vec::with_capacity(self.edge_count() * k);
        let mut prov = Vec::with_capacity(self.edge_count() * k);
        for (i, e) in self.edges.iter().enumerate() {
            for j in 0..k {
                edges.push(*e);
                prov.push((i, j));
            }
        }
        (SignedGraph { n: self.n, edges }, prov)
    }
}

/// Replace each edge `uw` of an all-positive graph by a path `u, x, w`
/// through a fresh midpoint, the first half negative and the second half
/// positive. Edge `e` becomes edges `2e` (negative) and `2e + 1`; the
/// midpoint of edge `e` is vertex `n + e`.
pub fn negative_subdivision(g: &SignedGraph) -> Result<SignedGraph> {
    if g.edges().iter().any(|e| e.sign.is_negative()) {
        return Err(Error::InvalidInput(
            "negative_subdivision expects an all-positive input".into(),
        ));
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        let mid = n + i;
        edges.push((e.u, mid, Sign::Minus));
        edges.push((mid, e.w, Sign::Plus));
    }
    SignedGraph::new(n + g.edge_count(), edges)
}

/// An orientation: every edge gets a tail and a head matching its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn new(g: &SignedGraph, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if arcs.len() != g.edge_count() {
            return Err(Error::InvalidInput(format!(
                "orientation covers {} edges, graph has {}",
                arcs.len(),
                g.edge_count()
            )));
        }
        for (i, &(t, h)) in arcs.iter().enumerate() {
            let e = g.edge(i);
            if !((t == e.u && h == e.w) || (t == e.w && h == e.u)) {
                return Err(Error::InvalidInput(format!(
                    "arc {} = ({}, {}) does not match edge endpoints ({}, {})",
                    i, t, h, e.u, e.w
                )));
            }
        }
        Ok(Orientation { arcs })
    }

    /// The reference orientation: each edge directed from its stored first
    /// endpoint to its second.
    pub fn reference(g: &SignedGraph) -> Self {
        Orientation { arcs: g.edges().iter().map(|e| (e.u, e.w)).collect() }
    }

    /// Build from per-edge flags: `true` keeps the stored direction.
    pub fn from_forward_flags(g: &SignedGraph, forward: &[bool]) -> Self {
        let arcs = g
            .edges()
            .iter()
            .zip(forward)
            .map(|(e, &f)| if f { (e.u, e.w) } else { (e.w, e.u) })
            .collect();
        Orientation { arcs }
    }

    pub fn arc(&self, e: usize) -> (usize, usize) {
        self.arcs[e]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.arcs[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.arcs[e].1
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn flipped(&self, e: usize) -> Orientation {
        let mut o = self.clone();
        o.arcs[e] = (o.arcs[e].1, o.arcs[e].0);
        o
    }

    /// `out-degree - in-degree` at `v`.
    pub fn imbalance(&self, v: usize) -> i64 {
        let mut d = 0i64;
        for &(t, h) in &self.arcs {
            if t == v {
                d += 1;
            }
            if h == v {
                d -= 1;
            }
        }
        d
    }

    /// Signed imbalance restricted to one sign class:
    /// `out-degree - in-degree` over edges of `sign` in `g`.
    pub fn signed_imbalance(&self, g: &SignedGraph, v: usize, sign: Sign) -> i64 {
        let mut d = 0i64;
        for (e, &(t, h)) in self.arcs.iter().enumerate() {
            if g.sign(e) != sign {
                continue;
            }
            if t == v {
                d += 1;
            }
            if h == v {
                d -= 1;
            }
        }
        d
    }

    /// Imbalance restricted to an arbitrary edge subset.
    pub fn subset_imbalance(&self, edges: &[usize], v: usize) -> i64 {
        let mut d = 0i64;
        for &e in edges {
            let (t, h) = self.arcs[e];
            if t == v {
                d += 1;
            }
            if h == v {
                d -= 1;
            }
        }
        d
    }
}

/// Lower bound on the size of the smallest cut of one type; `Unbounded`
/// mirrors the infinity convention for types that admit no cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutBound {
    Finite(usize),
    Unbounded,
}

impl CutBound {
    fn update(&mut self, size: usize) {
        *self = match *self {
            CutBound::Unbounded => CutBound::Finite(size),
            CutBound::Finite(s) => CutBound::Finite(s.min(size)),
        };
    }
}

impl std::fmt::Display for CutBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CutBound::Finite(s) => write!(f, "{s}"),
            CutBound::Unbounded => write!(f, "inf"),
        }
    }
}

/// Smallest cut size per cut type. First index bit: sign (0 positive,
/// 1 negative); second bit: parity of the edge count (0 even, 1 odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutTypeProfile {
    pub c00: CutBound,
    pub c01: CutBound,
    pub c10: CutBound,
    pub c11: CutBound,
}

/// A cut `(X, X^c)` with its coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side_x: Vec<usize>,
    pub edge_ids: Vec<usize>,
}

impl Cut {
    pub fn from_side(g: &SignedGraph, side: &[bool]) -> Result<Cut> {
        let count = side.iter().filter(|&&b| b).count();
        if count == 0 || count == g.vertex_count() {
            return Err(Error::InvalidInput("cut side must be proper and nonempty".into()));
        }
        let side_x = (0..g.vertex_count()).filter(|&v| side[v]).collect();
        Ok(Cut { side_x, edge_ids: g.coboundary(side) })
    }

    pub fn side_flags(&self, n: usize) -> Vec<bool> {
        let mut f = vec![false; n];
        for &v in &self.side_x {
            f[v] = true;
        }
        f
    }
}

impl SignedGraph {
    /// Exhaustive minimum cut size per type over all proper nonempty vertex
    /// subsets. Types with no cut are reported per the usual convention:
    /// zero for type 00, unbounded otherwise.
    pub fn cut_type_minima(&self, enumeration_limit: usize) -> Result<CutTypeProfile> {
        if self.n > enumeration_limit {
            return Err(Error::EnumerationLimit { n: self.n, limit: enumeration_limit });
        }
        let mut profile = CutTypeProfile {
            c00: CutBound::Unbounded,
            c01: CutBound::Unbounded,
            c10: CutBound::Unbounded,
            c11: CutBound::Unbounded,
        };
        if self.n >= 2 {
            // Fix vertex 0 on side X so each unordered bipartition appears once.
            for mask in 0..(1u64 << (self.n - 1)) {
                let side: Vec<bool> = (0..self.n)
                    .map(|v| v == 0 || (v > 0 && (mask >> (v - 1)) & 1 == 1))
                    .collect();
                if side.iter().all(|&b| b) {
                    continue;
                }
                let cob = self.coboundary(&side);
                let negative = self.set_sign(&cob).is_negative();
                let odd = cob.len() % 2 == 1;
                let slot = match (negative, odd) {
                    (false, false) => &mut profile.c00,
                    (false, true) => &mut profile.c01,
                    (true, false) => &mut profile.c10,
                    (true, true) => &mut profile.c11,
                };
                slot.update(cob.len());
            }
        }
        if profile.c00 == CutBound::Unbounded {
            profile.c00 = CutBound::Finite(0);
        }
        Ok(profile)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn digon_neg() -> SignedGraph {
        // C_{-2}: two parallel edges, one negative.
        SignedGraph::new(2, vec![(0, 1, Sign::Plus), (0, 1, Sign::Minus)]).unwrap()
    }

    pub(crate) fn k4() -> SignedGraph {
        SignedGraph::new(
            4,
            vec![
                (0, 1, Sign::Plus),
                (0, 2, Sign::Plus),
                (0, 3, Sign::Plus),
                (1, 2, Sign::Plus),
                (1, 3, Sign::Plus),
                (2, 3, Sign::Plus),
            ],
        )
        .unwrap()
    }

    #[test]
    fn loop_rejected() {
        let err = SignedGraph::new(1, vec![(0, 0, Sign::Plus)]).unwrap_err();
        assert!(matches!(err, Error::LoopEdge { vertex: 0, .. }));
    }

    #[test]
    fn empty_edge_list() {
        let g = SignedGraph::new(3, vec![]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.inversing_class_count(), 1);
    }

    #[test]
    fn switch_on_digon() {
        let g = digon_neg();
        let s = g.switched(&[0]);
        // Both edges flip; still exactly one negative edge.
        assert_eq!(s.sign(0), Sign::Minus);
        assert_eq!(s.sign(1), Sign::Plus);
        assert_eq!(g.switched(&[]), g);
        assert_eq!(s.switched(&[0]), g);
    }

    #[test]
    fn invert_on_digon_and_triangle() {
        let g = digon_neg();
        let inv = g.inverted_on(&[0, 1]).unwrap();
        assert_eq!(inv.negative_edges().len(), 1);
        assert_eq!(g.inverted_on(&[]).unwrap(), g);

        let tri = SignedGraph::new(
            3,
            vec![(0, 1, Sign::Minus), (1, 2, Sign::Plus), (2, 0, Sign::Plus)],
        )
        .unwrap();
        let flipped = tri.inverted_on(&[0, 1, 2]).unwrap();
        assert_eq!(flipped.negative_edges().len(), 2);

        let err = tri.inverted_on(&[0]).unwrap_err();
        assert!(matches!(err, Error::OddDegreeSubset { .. }));
    }

    #[test]
    fn inversing_equivalence_basics() {
        let g = digon_neg();
        let s = g.switched(&[0]);
        assert!(g.inversing_equivalent(&s).unwrap());

        // All cut signs agree on even-degree graphs, so negating every edge
        // of a triangle stays in the same class (invert on the 3-cycle).
        let tri = SignedGraph::new(
            3,
            vec![(0, 1, Sign::Plus), (1, 2, Sign::Plus), (2, 0, Sign::Plus)],
        )
        .unwrap();
        assert!(tri.inversing_equivalent(&tri.all_negative()).unwrap());

        // Odd-degree vertices flip their singleton cut sign under global
        // negation, separating the classes.
        let g4 = k4();
        assert!(!g4.inversing_equivalent(&g4.all_negative()).unwrap());

        let other = SignedGraph::new(2, vec![(0, 1, Sign::Plus)]).unwrap();
        assert!(g.inversing_equivalent(&other).is_err());
    }

    #[test]
    fn switching_equivalence_basics() {
        let g = digon_neg();
        let pos = g.all_positive();
        assert!(!g.switching_equivalent(&pos).unwrap());

        let tri1 = SignedGraph::new(
            3,
            vec![(0, 1, Sign::Minus), (1, 2, Sign::Plus), (2, 0, Sign::Plus)],
        )
        .unwrap();
        let tri3 = tri1.all_negative();
        // Both have a negative triangle; confirmed by the 2^3 switching closure.
        assert!(tri1.switching_equivalent(&tri3).unwrap());
        let mut found = false;
        for mask in 0..8u32 {
            let set: Vec<usize> = (0..3).filter(|&v| (mask >> v) & 1 == 1).collect();
            if tri1.switched(&set) == tri3 {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn switching_preserved_under_random_switch() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = k4().with_signs(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus });
        for _ in 0..20 {
            let set: Vec<usize> = (0..4).filter(|_| rng.gen_bool(0.5)).collect();
            assert!(g.switching_equivalent(&g.switched(&set)).unwrap());
        }
    }

    #[test]
    fn normalize_to_tree_digon() {
        let g = SignedGraph::new(2, vec![(0, 1, Sign::Plus), (0, 1, Sign::Minus)]).unwrap();
        let norm = g.normalized_to_tree(&[0]).unwrap();
        assert_eq!(norm.sign(0), Sign::Minus);
        assert_eq!(norm.sign(1), Sign::Plus);
        assert!(g.inversing_equivalent(&norm).unwrap());

        // Already normalized input comes back unchanged.
        let g2 = SignedGraph::new(2, vec![(0, 1, Sign::Minus), (0, 1, Sign::Plus)]).unwrap();
        assert_eq!(g2.normalized_to_tree(&[0]).unwrap(), g2);
    }

    #[test]
    fn normalize_to_tree_k4() {
        let g = k4().with_signs(|i| if i == 5 { Sign::Minus } else { Sign::Plus });
        let tree = vec![0, 1, 2];
        let norm = g.normalized_to_tree(&tree).unwrap();
        assert!(norm.negative_edges().iter().all(|e| tree.contains(e)));
        assert!(g.inversing_equivalent(&norm).unwrap());

        assert!(g.normalized_to_tree(&[0, 1]).is_err());
        assert!(g.normalized_to_tree(&[0, 1, 3, 5]).is_err());
    }

    #[test]
    fn cut_minima_examples() {
        // Single positive edge.
        let k2 = SignedGraph::new(2, vec![(0, 1, Sign::Plus)]).unwrap();
        let p = k2.cut_type_minima(16).unwrap();
        assert_eq!(p.c01, CutBound::Finite(1));
        assert_eq!(p.c00, CutBound::Finite(0));
        assert_eq!(p.c10, CutBound::Unbounded);
        assert_eq!(p.c11, CutBound::Unbounded);

        // C_{-2}: the unique cut has 2 edges and negative sign.
        let p = digon_neg().cut_type_minima(16).unwrap();
        assert_eq!(p.c10, CutBound::Finite(2));
        assert_eq!(p.c01, CutBound::Unbounded);
        assert_eq!(p.c11, CutBound::Unbounded);
        assert_eq!(p.c00, CutBound::Finite(0));

        let big = SignedGraph::new(20, vec![]).unwrap();
        assert!(big.cut_type_minima(16).is_err());
    }

    #[test]
    fn cut_minima_triple_edge() {
        // -C*_{-k} at k = 3: three parallel edges with an odd number positive.
        for signs in [
            vec![Sign::Plus, Sign::Plus, Sign::Plus],
            vec![Sign::Plus, Sign::Minus, Sign::Minus],
        ] {
            let g = SignedGraph::new(
                2,
                signs.iter().map(|&s| (0, 1, s)).collect(),
            )
            .unwrap();
            let p = g.cut_type_minima(16).unwrap();
            assert_eq!(p.c00, CutBound::Finite(0));
            assert_eq!(p.c11, CutBound::Unbounded);
            // Odd k: the odd positive cut realizes k, the negative even type is absent.
            assert_eq!(p.c01, CutBound::Finite(3));
            assert_eq!(p.c10, CutBound::Unbounded);
        }
    }

    #[test]
    fn class_count_examples() {
        let g = k4();
        assert_eq!(g.inversing_class_count(), 8);
        let two_digons = SignedGraph::new(
            4,
            vec![
                (0, 1, Sign::Plus),
                (0, 1, Sign::Minus),
                (2, 3, Sign::Plus),
                (2, 3, Sign::Minus),
            ],
        )
        .unwrap();
        assert_eq!(two_digons.inversing_class_count(), 4);
    }

    #[test]
    fn negative_subdivision_shapes() {
        let k2 = SignedGraph::new(2, vec![(0, 1, Sign::Plus)]).unwrap();
        let t = negative_subdivision(&k2).unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_count(), 2);
        assert_eq!(t.negative_edges().len(), 1);

        let tri = SignedGraph::new(
            3,
            vec![(0, 1, Sign::Plus), (1, 2, Sign::Plus), (2, 0, Sign::Plus)],
        )
        .unwrap();
        let t = negative_subdivision(&tri).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.edge_count(), 6);
        assert_eq!(t.negative_edges().len(), 3);

        let t = negative_subdivision(&k4()).unwrap();
        assert_eq!(t.vertex_count(), 10);
        assert_eq!(t.edge_count(), 12);
        assert_eq!(t.negative_edges().len(), 6);
        // Bipartite: all cycles even. The midpoints split every edge.
        let labels = two_coloring(&t);
        assert!(labels.is_some());

        assert!(negative_subdivision(&digon_neg()).is_err());
    }

    fn two_coloring(g: &SignedGraph) -> Option<Vec<bool>> {
        let adj = g.adjacency();
        let mut color = vec![None; g.vertex_count()];
        for root in 0..g.vertex_count() {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(_, o) in &adj[v] {
                    match color[o] {
                        None => {
                            color[o] = Some(!color[v].unwrap());
                            stack.push(o);
                        }
                        Some(c) => {
                            if c == color[v].unwrap() {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    #[test]
    fn multiply_edges_counts() {
        let k2 = SignedGraph::new(2, vec![(0, 1, Sign::Plus)]).unwrap();
        let (m3, prov) = k2.multiply_edges(3);
        assert_eq!(m3.edge_count(), 3);
        assert_eq!(prov, vec![(0, 0), (0, 1), (0, 2)]);

        let g = digon_neg();
        let (m1, prov) = g.multiply_edges(1);
        assert_eq!(m1, g);
        assert_eq!(prov, vec![(0, 0), (1, 0)]);

        let (m2, _) = k4().multiply_edges(2);
        assert_eq!(m2.edge_count(), 12);
        assert!((0..4).all(|v| m2.degree(v) == 6));
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(k4().edge_connectivity(), 3);
        let (k4x2, _) = k4().multiply_edges(2);
        assert_eq!(k4x2.edge_connectivity(), 6);
        let p3 = SignedGraph::new(3, vec![(0, 1, Sign::Plus), (1, 2, Sign::Plus)]).unwrap();
        assert_eq!(p3.edge_connectivity(), 1);
    }

    #[test]
    fn bridges_and_positive_bridges() {
        let p3 = SignedGraph::new(3, vec![(0, 1, Sign::Plus), (1, 2, Sign::Minus)]).unwrap();
        assert_eq!(p3.bridges(), vec![0, 1]);
        assert!(p3.has_positive_bridge());
        assert!(!digon_neg().has_positive_bridge());
        assert!(!k4().has_positive_bridge());
    }

    #[test]
    fn switch_and_invert_preserve_cycle_and_cut_signs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = k4().with_signs(|i| if i < 2 { Sign::Minus } else { Sign::Plus });
        // Switching preserves the sign of every even-degree subset that is a
        // cycle; inversing preserves every cut sign. Checked on all subsets.
        for _ in 0..10 {
            let set: Vec<usize> = (0..4).filter(|_| rng.gen_bool(0.5)).collect();
            let s = g.switched(&set);
            for mask in 0u32..(1 << 6) {
                let subset: Vec<usize> = (0..6).filter(|&e| (mask >> e) & 1 == 1).collect();
                if g.inverted_on(&subset).is_ok() {
                    assert_eq!(g.set_sign(&subset), s.set_sign(&subset));
                }
            }
        }
        for mask in 0u32..(1 << 6) {
            let subset: Vec<usize> = (0..6).filter(|&e| (mask >> e) & 1 == 1).collect();
            if let Ok(inv) = g.inverted_on(&subset) {
                for cut_mask in 1u32..(1 << 4) - 1 {
                    let side: Vec<bool> = (0..4).map(|v| (cut_mask >> v) & 1 == 1).collect();
                    let cob = g.coboundary(&side);
                    assert_eq!(g.set_sign(&cob), inv.set_sign(&cob));
                }
            }
        }
    }

    #[test]
    fn inversing_closure_matches_class_count() {
        // Exhaustive on all labeled multigraphs with 4 vertices, <= 5 edges.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut checked = 0usize;
        for m in 0..=5usize {
            enumerate_pair_multisets(&pairs, m, &mut |chosen| {
                let edges: Vec<(usize, usize, Sign)> =
                    chosen.iter().map(|&(u, w)| (u, w, Sign::Plus)).collect();
                let g = SignedGraph::new(4, edges).unwrap();
                let classes = closure_class_count(&g);
                assert_eq!(classes as u128, g.inversing_class_count());
                checked += 1;
            });
        }
        assert!(checked > 100);
    }

    fn enumerate_pair_multisets(
        pairs: &[(usize, usize)],
        m: usize,
        f: &mut impl FnMut(&[(usize, usize)]),
    ) {
        fn rec(
            pairs: &[(usize, usize)],
            m: usize,
            start: usize,
            acc: &mut Vec<(usize, usize)>,
            f: &mut impl FnMut(&[(usize, usize)]),
        ) {
            if acc.len() == m {
                f(acc);
                return;
            }
            for i in start..pairs.len() {
                acc.push(pairs[i]);
                rec(pairs, m, i, acc, f);
                acc.pop();
            }
        }
        rec(pairs, m, 0, &mut Vec::new(), f);
    }

    /// Count inversing classes by brute-force closure over all signatures,
    /// and check membership agrees with `inversing_equivalent`.
    fn closure_class_count(g: &SignedGraph) -> usize {
        let m = g.edge_count();
        let sig_graph = |mask: u32| {
            g.with_signs(|e| if (mask >> e) & 1 == 1 { Sign::Minus } else { Sign::Plus })
        };
        let mut class_of = vec![usize::MAX; 1 << m];
        let mut classes = 0usize;
        for start in 0u32..(1 << m) {
            if class_of[start as usize] != usize::MAX {
                continue;
            }
            let rep = sig_graph(start);
            let mut stack = vec![start];
            class_of[start as usize] = classes;
            while let Some(cur) = stack.pop() {
                let cur_g = sig_graph(cur);
                for flip in 0u32..(1 << m) {
                    let subset: Vec<usize> =
                        (0..m).filter(|&e| (flip >> e) & 1 == 1).collect();
                    if cur_g.inverted_on(&subset).is_ok() {
                        let next = cur ^ flip;
                        if class_of[next as usize] == usize::MAX {
                            class_of[next as usize] = classes;
                            stack.push(next);
                        }
                    }
                }
            }
            for other in 0u32..(1 << m) {
                let same_class = class_of[other as usize] == classes
                    && class_of[other as usize] != usize::MAX;
                if other >= start {
                    let eq = rep.inversing_equivalent(&sig_graph(other)).unwrap();
                    if class_of[other as usize] != usize::MAX {
                        assert_eq!(eq, same_class);
                    }
                }
            }
            classes += 1;
        }
        classes
    }

    #[test]
    fn random_cycle_inversfunctions_stay_equivalent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = k4().with_signs(|i| if i % 3 == 0 { Sign::Minus } else { Sign::Plus });
        let mut count = 0;
        while count < 100 {
            let mask: u32 = rng.gen_range(0..(1 << 6));
            let subset: Vec<usize> = (0..6).filter(|&e| (mask >> e) & 1 == 1).collect();
            if let Ok(inv) = g.inverted_on(&subset) {
                assert!(g.inversing_equivalent(&inv).unwrap());
                count += 1;
            }
        }
    }
}
