//! Modulo ell-orientations of signed graphs, the partition characterization
//! with its constructive extraction (arc lifting, vertex splitting, bipartite
//! edge coloring), and the four equivalent certificate forms for Eulerian
//! signed graphs with converters along the cycle of implications.

use crate::error::{Error, Result};
use crate::flow::{verify_flow, FlowAssignment, FlowKind};
use crate::graph::{Orientation, Sign, SignedGraph};
use crate::solver::{decide_pq_flow, modular_search_custom, SearchBudget, SearchOutcome};

/// An orientation certified against an inversing-equivalent signature:
/// at every vertex, `(ell-1) * (positive out - in)` equals
/// `(negative out - in)` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModOrientationCertificate {
    pub signature_used: SignedGraph,
    pub orientation: Orientation,
    pub modulus_ell: i64,
}

fn eq4_holds(g: &SignedGraph, d: &Orientation, ell: i64) -> bool {
    (0..g.vertex_count()).all(|v| {
        let pos = d.signed_imbalance(g, v, Sign::Plus);
        let neg = d.signed_imbalance(g, v, Sign::Minus);
        (ell - 1) * pos == neg
    })
}

/// True when the certificate's signature is inversing-equivalent to the
/// original and the orientation balances every vertex per the modulus rule.
pub fn verify_mod_orientation(
    cert: &ModOrientationCertificate,
    original: &SignedGraph,
) -> Result<bool> {
    if !cert.signature_used.same_underlying(original) {
        return Err(Error::MismatchedUnderlying);
    }
    if cert.modulus_ell < 2 {
        return Err(Error::InvalidInput(format!("modulus {} below 2", cert.modulus_ell)));
    }
    if !original.inversing_equivalent(&cert.signature_used)? {
        return Ok(false);
    }
    Ok(eq4_holds(&cert.signature_used, &cert.orientation, cert.modulus_ell))
}

/// Search over inversing-equivalent signatures and orientations. Odd moduli
/// require the all-positive class and even moduli an even-degree graph, so
/// incompatible inputs fail fast.
pub fn find_mod_orientation(
    g: &SignedGraph,
    ell: i64,
    budget: &SearchBudget,
) -> Result<SearchOutcome<ModOrientationCertificate>> {
    if ell < 2 {
        return Err(Error::InvalidInput(format!("modulus {ell} below 2")));
    }
    if ell % 2 == 0 && !g.is_eulerian() {
        return Ok(SearchOutcome::Exhausted);
    }
    if ell % 2 == 1 && g.negative_singleton_cuts().iter().any(|&b| b) {
        return Ok(SearchOutcome::Exhausted);
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let t_set = g.negative_singleton_cuts();
    let adj = g.adjacency();
    // Greedy edge clustering so vertices close early.
    let order = {
        let mut rest: Vec<usize> = (0..m).collect();
        let mut out = Vec::with_capacity(m);
        let mut touched = vec![false; n];
        while !rest.is_empty() {
            let pick = rest
                .iter()
                .enumerate()
                .max_by_key(|(_, &e)| {
                    let edge = g.edge(e);
                    (touched[edge.u] as usize + touched[edge.w] as usize, usize::MAX - e)
                })
                .map(|(i, _)| i)
                .unwrap();
            let e = rest.swap_remove(pick);
            touched[g.edge(e).u] = true;
            touched[g.edge(e).w] = true;
            out.push(e);
        }
        out
    };
    // Per edge: a sign class (for the replacement signature) and a direction;
    // the flow value (ell-1 on its positives, -1 on its negatives, signed by
    // direction) must vanish at each vertex, and the negative degrees must
    // reproduce the negative singleton cuts of the input.
    struct Dfs<'a> {
        g: &'a SignedGraph,
        ell: i64,
        order: &'a [usize],
        t_set: &'a [bool],
        sign_of: Vec<Sign>,
        forward: Vec<bool>,
        bal: Vec<i64>,
        neg_parity: Vec<bool>,
        remaining: Vec<usize>,
        nodes: u64,
        node_limit: u64,
    }
    impl Dfs<'_> {
        fn run(&mut self, depth: usize) -> SearchOutcome<()> {
            if depth == self.order.len() {
                return SearchOutcome::Found(());
            }
            let e = self.order[depth];
            let edge = self.g.edge(e);
            for sign in [Sign::Plus, Sign::Minus] {
                let mag = if sign == Sign::Plus { self.ell - 1 } else { -1 };
                for fwd in [true, false] {
                    self.nodes += 1;
                    if self.nodes > self.node_limit {
                        return SearchOutcome::Unknown;
                    }
                    let delta = if fwd { mag } else { -mag };
                    self.bal[edge.u] += delta;
                    self.bal[edge.w] -= delta;
                    if sign == Sign::Minus {
                        self.neg_parity[edge.u] = !self.neg_parity[edge.u];
                        self.neg_parity[edge.w] = !self.neg_parity[edge.w];
                    }
                    self.remaining[edge.u] -= 1;
                    self.remaining[edge.w] -= 1;
                    let ok = [edge.u, edge.w].iter().all(|&x| {
                        if self.remaining[x] == 0 {
                            self.bal[x] == 0 && self.neg_parity[x] == self.t_set[x]
                        } else {
                            self.bal[x].abs() <= (self.ell - 1) * self.remaining[x] as i64
                        }
                    });
                    if ok {
                        self.sign_of[e] = sign;
                        self.forward[e] = fwd;
                        match self.run(depth + 1) {
                            SearchOutcome::Found(()) => return SearchOutcome::Found(()),
                            SearchOutcome::Unknown => return SearchOutcome::Unknown,
                            SearchOutcome::Exhausted => {}
                        }
                    }
                    self.remaining[edge.u] += 1;
                    self.remaining[edge.w] += 1;
                    if sign == Sign::Minus {
                        self.neg_parity[edge.u] = !self.neg_parity[edge.u];
                        self.neg_parity[edge.w] = !self.neg_parity[edge.w];
                    }
                    self.bal[edge.u] -= delta;
                    self.bal[edge.w] += delta;
                }
            }
            SearchOutcome::Exhausted
        }
    }
    let mut dfs = Dfs {
        g,
        ell,
        order: &order,
        t_set: &t_set,
        sign_of: vec![Sign::Plus; m],
        forward: vec![true; m],
        bal: vec![0; n],
        neg_parity: vec![false; n],
        remaining: (0..n).map(|v| adj[v].len()).collect(),
        nodes: 0,
        node_limit: budget.node_limit.unwrap_or(u64::MAX),
    };
    match dfs.run(0) {
        SearchOutcome::Exhausted => Ok(SearchOutcome::Exhausted),
        SearchOutcome::Unknown => Ok(SearchOutcome::Unknown),
        SearchOutcome::Found(()) => {
            let signature_used = g.with_signs(|e| dfs.sign_of[e]);
            let orientation = Orientation::from_forward_flags(g, &dfs.forward);
            let cert = ModOrientationCertificate {
                signature_used,
                orientation,
                modulus_ell: ell,
            };
            debug_assert!(verify_mod_orientation(&cert, g).unwrap());
            Ok(SearchOutcome::Found(cert))
        }
    }
}

/// Theorem-style edge partition: each part is the positive set of an
/// inversing-equivalent signature, and one orientation gives every part the
/// same per-vertex imbalance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub parts: Vec<Vec<usize>>,
    pub orientation: Orientation,
}

pub fn verify_partition_certificate(
    pc: &PartitionCertificate,
    original: &SignedGraph,
) -> Result<bool> {
    let m = original.edge_count();
    let mut seen = vec![false; m];
    for part in &pc.parts {
        for &e in part {
            original.check_edge_id(e)?;
            if seen[e] {
                return Err(Error::InvalidInput(format!("edge {e} appears in two parts")));
            }
            seen[e] = true;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::InvalidInput("parts do not cover the edge set".into()));
    }
    // (i) every part is the positive set of an inversing-equivalent signature
    for part in &pc.parts {
        let mut positive = vec![false; m];
        for &e in part {
            positive[e] = true;
        }
        let sig = original.with_signs(|e| if positive[e] { Sign::Plus } else { Sign::Minus });
        if !original.inversing_equivalent(&sig)? {
            return Ok(false);
        }
    }
    // (ii) equal per-vertex imbalance across parts
    if let Some(first) = pc.parts.first() {
        for v in 0..original.vertex_count() {
            let base = pc.orientation.subset_imbalance(first, v);
            for part in &pc.parts[1..] {
                if pc.orientation.subset_imbalance(part, v) != base {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A live arc of the lifting process: a directed path of original edges, all
/// of one class, compressed to its endpoints.
#[derive(Clone, Debug)]
struct LiftArc {
    tail: usize,
    head: usize,
    class: Sign,
    path: Vec<usize>,
}

/// Repeatedly replace an in-arc/out-arc pair of the same class at a common
/// vertex by their composition, until every vertex is a source or a sink per
/// class. Closed walks produced on the way are set aside; their edge sets
/// are even-degree and can join any part without disturbing either
/// partition condition.
fn lift_arcs(mut arcs: Vec<LiftArc>, classify: bool) -> (Vec<LiftArc>, Vec<Vec<usize>>) {
    let mut loops: Vec<Vec<usize>> = Vec::new();
    loop {
        let mut lifted = false;
        'scan: for i in 0..arcs.len() {
            for j in 0..arcs.len() {
                if i == j {
                    continue;
                }
                if arcs[i].head != arcs[j].tail {
                    continue;
                }
                if classify && arcs[i].class != arcs[j].class {
                    continue;
                }
                let b = arcs.swap_remove(j.max(i));
                let a = arcs.swap_remove(j.min(i));
                let (first, second) = if a.head == b.tail { (a, b) } else { (b, a) };
                let mut path = first.path;
                path.extend(second.path);
                if first.tail == second.head {
                    loops.push(path);
                } else {
                    arcs.push(LiftArc {
                        tail: first.tail,
                        head: second.head,
                        class: first.class,
                        path,
                    });
                }
                lifted = true;
                break 'scan;
            }
        }
        if !lifted {
            return (arcs, loops);
        }
    }
}

/// Bipartite perfect matching by augmenting paths; edges are
/// `(left, right, payload)`, `alive` masks the still-uncolored ones.
fn perfect_matching(
    n_left: usize,
    n_right: usize,
    edges: &[(usize, usize, usize)],
    alive: &[bool],
) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_left];
    for (i, &(l, _, _)) in edges.iter().enumerate() {
        if alive[i] {
            adj[l].push(i);
        }
    }
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    let mut match_left: Vec<Option<usize>> = vec![None; n_left];
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        edges: &[(usize, usize, usize)],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &ei in &adj[l] {
            let (_, r, _) = edges[ei];
            if visited[r] {
                continue;
            }
            visited[r] = true;
            let free = match match_right[r] {
                None => true,
                Some(other) => {
                    let (ol, _, _) = edges[other];
                    augment(ol, adj, edges, match_left, match_right, visited)
                }
            };
            if free {
                match_right[r] = Some(ei);
                match_left[l] = Some(ei);
                return true;
            }
        }
        false
    }
    for l in 0..n_left {
        let mut visited = vec![false; n_right];
        if !augment(l, &adj, edges, &mut match_left, &mut match_right, &mut visited) {
            return None;
        }
    }
    Some(match_left.into_iter().map(|x| x.unwrap()).collect())
}

/// Split source/sink vertices into copies and color the resulting regular
/// bipartite multigraph into `classes` perfect matchings; `group` maps each
/// vertex's ordered arc list into chunks of one copy each.
fn split_and_color(
    n: usize,
    arcs: &[LiftArc],
    copies_of: impl Fn(usize, &[usize]) -> Result<Vec<Vec<usize>>>,
    classes: usize,
) -> Result<Vec<Vec<usize>>> {
    // arc index lists per vertex
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in arcs.iter().enumerate() {
        out_arcs[a.tail].push(i);
        in_arcs[a.head].push(i);
    }
    for v in 0..n {
        if !out_arcs[v].is_empty() && !in_arcs[v].is_empty() {
            return Err(Error::InvalidCertificate(format!(
                "vertex {v} is neither a source nor a sink after lifting"
            )));
        }
    }
    let mut left_of_arc = vec![usize::MAX; arcs.len()];
    let mut right_of_arc = vec![usize::MAX; arcs.len()];
    let mut n_left = 0usize;
    let mut n_right = 0usize;
    for v in 0..n {
        if !out_arcs[v].is_empty() {
            for chunk in copies_of(v, &out_arcs[v])? {
                for a in chunk {
                    left_of_arc[a] = n_left;
                }
                n_left += 1;
            }
        }
        if !in_arcs[v].is_empty() {
            for chunk in copies_of(v, &in_arcs[v])? {
                for a in chunk {
                    right_of_arc[a] = n_right;
                }
                n_right += 1;
            }
        }
    }
    let edges: Vec<(usize, usize, usize)> =
        (0..arcs.len()).map(|i| (left_of_arc[i], right_of_arc[i], i)).collect();
    let mut alive = vec![true; edges.len()];
    let mut color = vec![usize::MAX; arcs.len()];
    for c in 0..classes {
        if n_left == 0 {
            break;
        }
        let matched = perfect_matching(n_left, n_right, &edges, &alive).ok_or_else(|| {
            Error::InvalidCertificate("regular bipartite coloring failed".into())
        })?;
        for ei in matched {
            alive[ei] = false;
            color[edges[ei].2] = c;
        }
    }
    if alive.iter().any(|&a| a) {
        return Err(Error::InvalidCertificate("edge coloring left uncolored arcs".into()));
    }
    let mut parts = vec![Vec::new(); classes];
    for (i, a) in arcs.iter().enumerate() {
        parts[color[i]].extend(a.path.iter().copied());
    }
    Ok(parts)
}

/// Constructive direction of the partition characterization: lift same-sign
/// arc pairs, split vertices into one-positive-plus-(ell-1)-negatives
/// copies, extract the positive perfect matching, color the rest, and pull
/// the classes back to the original edges.
pub fn orientation_to_partition(cert: &ModOrientationCertificate) -> Result<PartitionCertificate> {
    let g = &cert.signature_used;
    let ell = cert.modulus_ell;
    if !eq4_holds(g, &cert.orientation, ell) {
        return Err(Error::InvalidCertificate("certificate fails its balance rule".into()));
    }
    let arcs: Vec<LiftArc> = (0..g.edge_count())
        .map(|e| {
            let (t, h) = cert.orientation.arc(e);
            LiftArc { tail: t, head: h, class: g.sign(e), path: vec![e] }
        })
        .collect();
    let (arcs, loops) = lift_arcs(arcs, true);
    let ellu = ell as usize;
    let copies_of = |v: usize, list: &[usize]| -> Result<Vec<Vec<usize>>> {
        // one positive and ell-1 negatives per copy
        let pos: Vec<usize> = list.iter().copied().filter(|&a| arcs_class(&arcs, a) == Sign::Plus).collect();
        let neg: Vec<usize> = list.iter().copied().filter(|&a| arcs_class(&arcs, a) == Sign::Minus).collect();
        if neg.len() != pos.len() * (ellu - 1) {
            return Err(Error::InvalidCertificate(format!(
                "vertex {v} has {} positive and {} negative lifted arcs, incompatible with modulus {ell}",
                pos.len(),
                neg.len()
            )));
        }
        Ok(pos
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let mut chunk = vec![p];
                chunk.extend(neg[i * (ellu - 1)..(i + 1) * (ellu - 1)].iter().copied());
                chunk
            })
            .collect())
    };
    let mut parts = if arcs.is_empty() {
        vec![Vec::new(); ellu]
    } else {
        split_and_color(g.vertex_count(), &arcs, copies_of, ellu)?
    };
    // Closed same-sign walks are even-degree edge sets; adding one to a part
    // changes neither the singleton-cut parities nor any imbalance.
    for path in loops {
        parts[0].extend(path);
    }
    let pc = PartitionCertificate { parts, orientation: cert.orientation.clone() };
    Ok(pc)
}

fn arcs_class(arcs: &[LiftArc], i: usize) -> Sign {
    arcs[i].class
}

/// The four certificate shapes for an Eulerian signed graph at parameter k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerianForm {
    Flow4k,
    SpecialModFlow,
    BoundaryOrientation,
    Mod2kOrientation,
}

impl EulerianForm {
    pub const ALL: [EulerianForm; 4] = [
        EulerianForm::Flow4k,
        EulerianForm::SpecialModFlow,
        EulerianForm::BoundaryOrientation,
        EulerianForm::Mod2kOrientation,
    ];
}

impl std::fmt::Display for EulerianForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EulerianForm::Flow4k => "flow-4k",
            EulerianForm::SpecialModFlow => "special-mod-flow",
            EulerianForm::BoundaryOrientation => "boundary-orientation",
            EulerianForm::Mod2kOrientation => "mod-2k-orientation",
        };
        write!(f, "{s}")
    }
}

/// Certificate payload for one of the four equivalent forms.
#[derive(Clone, Debug)]
pub enum EulerianPayload {
    /// Integer (4k, 2k-1)-flow.
    Flow(Orientation, FlowAssignment),
    /// Modulo 4k-flow with positive values in {2k-1, 2k+1} and negative
    /// values in {1, 4k-1}.
    ModFlow(Orientation, FlowAssignment),
    /// Orientation with out-in imbalance congruent to 2k times the positive
    /// degree, modulo 4k.
    BoundaryOrientation(Orientation),
    /// Modulo 2k-orientation.
    ModOrientation(ModOrientationCertificate),
}

#[derive(Clone, Debug)]
pub struct EulerianCertificate {
    pub k: i64,
    pub payload: EulerianPayload,
}

impl EulerianCertificate {
    pub fn form(&self) -> EulerianForm {
        match self.payload {
            EulerianPayload::Flow(..) => EulerianForm::Flow4k,
            EulerianPayload::ModFlow(..) => EulerianForm::SpecialModFlow,
            EulerianPayload::BoundaryOrientation(..) => EulerianForm::BoundaryOrientation,
            EulerianPayload::ModOrientation(..) => EulerianForm::Mod2kOrientation,
        }
    }
}

pub fn verify_eulerian_certificate(cert: &EulerianCertificate, g: &SignedGraph) -> Result<bool> {
    let k = cert.k;
    if k < 1 {
        return Err(Error::InvalidInput(format!("k = {k} below 1")));
    }
    match &cert.payload {
        EulerianPayload::Flow(d, f) => {
            if f.kind != (FlowKind::Pq { p: 4 * k, q: 2 * k - 1 }) {
                return Ok(false);
            }
            Ok(verify_flow(g, d, f)?.is_valid())
        }
        EulerianPayload::ModFlow(d, f) => {
            if f.kind != (FlowKind::ModPq { p: 4 * k, q: 2 * k - 1 }) {
                return Ok(false);
            }
            if !verify_flow(g, d, f)?.is_valid() {
                return Ok(false);
            }
            Ok((0..g.edge_count()).all(|e| {
                let v = f.value(e).to_integer();
                match g.sign(e) {
                    Sign::Plus => v == 2 * k - 1 || v == 2 * k + 1,
                    Sign::Minus => v == 1 || v == 4 * k - 1,
                }
            }))
        }
        EulerianPayload::BoundaryOrientation(d) => {
            if d.len() != g.edge_count() {
                return Err(Error::InvalidInput("orientation does not cover the graph".into()));
            }
            Ok((0..g.vertex_count()).all(|v| {
                let imb = d.imbalance(v);
                let target = 2 * k * g.positive_degree(v) as i64;
                (imb - target).rem_euclid(4 * k) == 0
            }))
        }
        EulerianPayload::ModOrientation(mc) => {
            if mc.modulus_ell != 2 * k {
                return Ok(false);
            }
            verify_mod_orientation(mc, g)
        }
    }
}

/// Independent existence search for each form.
pub fn find_eulerian_certificate(
    g: &SignedGraph,
    k: i64,
    form: EulerianForm,
    budget: &SearchBudget,
) -> Result<SearchOutcome<EulerianCertificate>> {
    if k < 1 {
        return Err(Error::InvalidInput(format!("k = {k} below 1")));
    }
    let p = 4 * k;
    let out = match form {
        EulerianForm::Flow4k => decide_pq_flow(g, 4 * k, 2 * k - 1, budget)?
            .map(|(d, f)| EulerianPayload::Flow(d, f)),
        EulerianForm::SpecialModFlow => {
            let domains: Vec<Vec<i64>> = (0..g.edge_count())
                .map(|e| match g.sign(e) {
                    Sign::Plus => vec![2 * k - 1, 2 * k + 1],
                    Sign::Minus => vec![1, 4 * k - 1],
                })
                .collect();
            modular_search_custom(
                g,
                p,
                domains,
                vec![0; g.vertex_count()],
                vec![None; g.edge_count()],
                budget,
            )
            .map(|vals| {
                EulerianPayload::ModFlow(
                    Orientation::reference(g),
                    FlowAssignment::from_integers(&vals, FlowKind::ModPq { p, q: 2 * k - 1 }),
                )
            })
        }
        EulerianForm::BoundaryOrientation => {
            let domains: Vec<Vec<i64>> = (0..g.edge_count()).map(|_| vec![1, p - 1]).collect();
            let targets: Vec<i64> = (0..g.vertex_count())
                .map(|v| (2 * k * g.positive_degree(v) as i64).rem_euclid(p))
                .collect();
            modular_search_custom(g, p, domains, targets, vec![None; g.edge_count()], budget)
                .map(|vals| {
                    let forward: Vec<bool> = vals.iter().map(|&v| v == 1).collect();
                    EulerianPayload::BoundaryOrientation(Orientation::from_forward_flags(
                        g, &forward,
                    ))
                })
        }
        EulerianForm::Mod2kOrientation => {
            find_mod_orientation(g, 2 * k, budget)?.map(EulerianPayload::ModOrientation)
        }
    };
    Ok(out.map(|payload| {
        let cert = EulerianCertificate { k, payload };
        debug_assert!(verify_eulerian_certificate(&cert, g).unwrap());
        cert
    }))
}

/// Decompose an even-degree edge subset into edge-disjoint cycles, each a
/// cyclic list of `(edge, forward)` steps.
fn cycle_decomposition(g: &SignedGraph, subset: &[usize]) -> Result<Vec<Vec<(usize, bool)>>> {
    let mut unused: Vec<usize> = subset.to_vec();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for &e in subset {
        incident[g.edge(e).u].push(e);
        incident[g.edge(e).w].push(e);
    }
    let mut used = vec![false; g.edge_count()];
    let mut cycles = Vec::new();
    while let Some(&start_edge) = unused.first() {
        // Walk until a vertex repeats, then cut out the cycle.
        let mut walk: Vec<(usize, bool)> = Vec::new();
        let mut at = g.edge(start_edge).u;
        let mut visited_at: std::collections::HashMap<usize, usize> = Default::default();
        visited_at.insert(at, 0);
        loop {
            let Some(&e) = incident[at].iter().find(|&&e| !used[e]) else {
                return Err(Error::InvalidInput(
                    "subset is not even-degree; cycle walk got stuck".into(),
                ));
            };
            used[e] = true;
            let edge = g.edge(e);
            let forward = edge.u == at;
            let next = if forward { edge.w } else { edge.u };
            walk.push((e, forward));
            at = next;
            if let Some(&pos) = visited_at.get(&at) {
                let cycle: Vec<(usize, bool)> = walk.drain(pos..).collect();
                for &(e, _) in &walk {
                    used[e] = false;
                }
                cycles.push(cycle);
                break;
            }
            visited_at.insert(at, walk.len());
        }
        unused.retain(|&e| !used[e]);
    }
    Ok(cycles)
}

/// Convert between the four Eulerian forms by walking the implication cycle
/// flow -> special modulo flow -> boundary orientation -> modulo
/// 2k-orientation -> flow.
pub fn convert_eulerian_certificate(
    cert: &EulerianCertificate,
    target: EulerianForm,
    g: &SignedGraph,
) -> Result<EulerianCertificate> {
    if !g.is_eulerian() {
        return Err(Error::InvalidInput("conversions require an Eulerian host".into()));
    }
    if !verify_eulerian_certificate(cert, g)? {
        return Err(Error::InvalidCertificate("input certificate does not verify".into()));
    }
    let mut current = cert.clone();
    let mut guard = 0;
    while current.form() != target {
        current = step_eulerian(&current, g)?;
        if !verify_eulerian_certificate(&current, g)? {
            return Err(Error::InvalidCertificate(format!(
                "conversion produced an invalid {} certificate",
                current.form()
            )));
        }
        guard += 1;
        if guard > 4 {
            return Err(Error::InvalidCertificate("conversion cycle did not close".into()));
        }
    }
    Ok(current)
}

fn step_eulerian(cert: &EulerianCertificate, g: &SignedGraph) -> Result<EulerianCertificate> {
    let k = cert.k;
    let p = 4 * k;
    let payload = match &cert.payload {
        // (1) -> (2): reduce to residues, then nudge the middle values 0 and
        // 2k off by +-1 along a cycle decomposition of the edges carrying
        // them.
        EulerianPayload::Flow(d, f) => {
            let mut vals: Vec<i64> =
                f.values.iter().map(|v| v.to_integer().rem_euclid(p)).collect();
            let middle: Vec<usize> =
                (0..g.edge_count()).filter(|&e| vals[e] == 0 || vals[e] == 2 * k).collect();
            for cycle in cycle_decomposition(g, &middle)? {
                // Forward arcs of the traversal get +delta, backward -delta,
                // with delta flipping between maximal directed segments.
                let oriented: Vec<(usize, bool)> = cycle
                    .iter()
                    .map(|&(e, walk_fwd)| {
                        let (t, _) = d.arc(e);
                        let edge = g.edge(e);
                        let arc_fwd = t == edge.u;
                        (e, walk_fwd == arc_fwd)
                    })
                    .collect();
                let len = oriented.len();
                let directed = oriented.iter().all(|&(_, f)| f) || oriented.iter().all(|&(_, f)| !f);
                if directed {
                    for &(e, fwd) in &oriented {
                        vals[e] = (vals[e] + if fwd { 1 } else { -1 }).rem_euclid(p);
                    }
                } else {
                    // Start at a segment boundary so runs alternate cleanly.
                    let start = (0..len)
                        .find(|&i| oriented[i].1 != oriented[(i + len - 1) % len].1)
                        .unwrap();
                    let mut delta = 1i64;
                    for j in 0..len {
                        let (e, fwd) = oriented[(start + j) % len];
                        let prev_fwd = oriented[(start + j + len - 1) % len].1;
                        if j > 0 && fwd != prev_fwd {
                            delta = -delta;
                        }
                        vals[e] = (vals[e] + if fwd { delta } else { -delta }).rem_euclid(p);
                    }
                }
            }
            EulerianPayload::ModFlow(
                d.clone(),
                FlowAssignment::from_integers(&vals, FlowKind::ModPq { p, q: 2 * k - 1 }),
            )
        }
        // (2) -> (3): add 2k on positive edges, orient by the residue +-1.
        EulerianPayload::ModFlow(d, f) => {
            let forward: Vec<bool> = (0..g.edge_count())
                .map(|e| {
                    let shift = if g.sign(e) == Sign::Plus { 2 * k } else { 0 };
                    let gv = (f.value(e).to_integer() + shift).rem_euclid(p);
                    let keep = gv == 1;
                    let (t, _) = d.arc(e);
                    let stored_fwd = t == g.edge(e).u;
                    if keep {
                        stored_fwd
                    } else {
                        !stored_fwd
                    }
                })
                .collect();
            EulerianPayload::BoundaryOrientation(Orientation::from_forward_flags(g, &forward))
        }
        // (3) -> (4): lift arcs regardless of sign, split into 2k-degree
        // copies, color, and certify with the first part's signature.
        EulerianPayload::BoundaryOrientation(d) => {
            let arcs: Vec<LiftArc> = (0..g.edge_count())
                .map(|e| {
                    let (t, h) = d.arc(e);
                    LiftArc { tail: t, head: h, class: Sign::Plus, path: vec![e] }
                })
                .collect();
            let (arcs, loops) = lift_arcs(arcs, false);
            let chunk = (2 * k) as usize;
            let copies_of = |v: usize, list: &[usize]| -> Result<Vec<Vec<usize>>> {
                if list.len() % chunk != 0 {
                    return Err(Error::InvalidCertificate(format!(
                        "lifted degree {} at vertex {v} is not a multiple of 2k",
                        list.len()
                    )));
                }
                Ok(list.chunks(chunk).map(|c| c.to_vec()).collect())
            };
            let mut parts = if arcs.is_empty() {
                vec![Vec::new(); chunk]
            } else {
                split_and_color(g.vertex_count(), &arcs, copies_of, chunk)?
            };
            for path in loops {
                parts[0].extend(path);
            }
            let mut positive = vec![false; g.edge_count()];
            for &e in &parts[0] {
                positive[e] = true;
            }
            let signature_used =
                g.with_signs(|e| if positive[e] { Sign::Plus } else { Sign::Minus });
            EulerianPayload::ModOrientation(ModOrientationCertificate {
                signature_used,
                orientation: d.clone(),
                modulus_ell: 2 * k,
            })
        }
        // (4) -> (1): value 2k-1 on the certificate signature's positives, -1 on its
        // negatives gives an exactly balanced flow; shift by 2k on the sign
        // difference to return to the input signature, then integerize.
        EulerianPayload::ModOrientation(mc) => {
            let vals: Vec<i64> = (0..g.edge_count())
                .map(|e| {
                    let base: i64 =
                        if mc.signature_used.sign(e) == Sign::Plus { 2 * k - 1 } else { -1 };
                    let shift: i64 =
                        if mc.signature_used.sign(e) == g.sign(e) { 0 } else { 2 * k };
                    (base + shift).rem_euclid(p)
                })
                .collect();
            let modflow =
                FlowAssignment::from_integers(&vals, FlowKind::ModPq { p, q: 2 * k - 1 });
            let d = mc.orientation.clone();
            if !verify_flow(g, &d, &modflow)?.is_valid() {
                return Err(Error::InvalidCertificate(
                    "modulo orientation did not induce a modulo flow".into(),
                ));
            }
            let int = crate::flow::modulo_to_integer(g, &d, &modflow)?;
            EulerianPayload::Flow(d, int)
        }
    };
    Ok(EulerianCertificate { k, payload })
}
