//! Flow assignments over signed graphs: the circular, integer (p,q), modulo
//! (p,q) and circular modulo notions, boundary sums, verification, the
//! modulo-to-integer conversion, the cut feasibility condition for a fixed
//! orientation and negative-edge partition, and tight cuts.

use crate::error::{Error, Result};
use crate::graph::{Cut, Orientation, Sign, SignedGraph};
use crate::maxflow::circulation_feasible;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

/// Which flow notion an assignment claims to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowKind {
    /// Real (here: rational) circular r-flow, signed values, exact balance.
    CircularR(Rational64),
    /// Integer (p,q)-flow, signed values, exact balance. `p` even, `2q <= p`.
    Pq { p: i64, q: i64 },
    /// Modulo (p,q)-flow, values in `0..p`, balance `0 (mod p)`.
    ModPq { p: i64, q: i64 },
    /// Circular modulo r-flow, values in `[0, r)`, balance `0 (mod r)`.
    CircularModR(Rational64),
}

impl FlowKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FlowKind::CircularR(r) | FlowKind::CircularModR(r) => {
                if r < Rational64::from_integer(2) {
                    return Err(Error::BadFlowParams(format!("r = {r} is below 2")));
                }
            }
            FlowKind::Pq { p, q } | FlowKind::ModPq { p, q } => {
                if p % 2 != 0 || p < 2 {
                    return Err(Error::BadFlowParams(format!("p = {p} must be even and >= 2")));
                }
                if q < 1 || 2 * q > p {
                    return Err(Error::BadFlowParams(format!(
                        "q = {q} must satisfy 1 <= 2q <= p = {p}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The r value of the notion, as a rational.
    pub fn r_value(&self) -> Rational64 {
        match *self {
            FlowKind::CircularR(r) | FlowKind::CircularModR(r) => r,
            FlowKind::Pq { p, q } | FlowKind::ModPq { p, q } => Rational64::new(p, q),
        }
    }

    /// Whether `value` is admissible on an edge of the given sign.
    pub fn value_allowed(&self, sign: Sign, value: Rational64) -> bool {
        let one = Rational64::from_integer(1);
        let two = Rational64::from_integer(2);
        match *self {
            FlowKind::CircularR(r) => {
                let a = value.abs();
                if a >= r {
                    return false;
                }
                match sign {
                    Sign::Plus => a >= one && a <= r - one,
                    Sign::Minus => a <= r / two - one || a >= r / two + one,
                }
            }
            FlowKind::Pq { p, q } => {
                if !value.is_integer() {
                    return false;
                }
                let a = value.abs().to_integer();
                match sign {
                    Sign::Plus => a >= q && a <= p - q,
                    Sign::Minus => a <= p / 2 - q || (a >= p / 2 + q && a <= p - 1),
                }
            }
            FlowKind::ModPq { p, q } => {
                if !value.is_integer() {
                    return false;
                }
                let v = value.to_integer();
                if !(0..p).contains(&v) {
                    return false;
                }
                match sign {
                    Sign::Plus => v >= q && v <= p - q,
                    Sign::Minus => v <= p / 2 - q || v >= p / 2 + q,
                }
            }
            FlowKind::CircularModR(r) => {
                if value < Rational64::zero() || value >= r {
                    return false;
                }
                match sign {
                    Sign::Plus => value >= one && value <= r - one,
                    Sign::Minus => value <= r / two - one || value >= r / two + one,
                }
            }
        }
    }

    /// Exact-zero balance (signed kinds) versus zero modulo the period.
    fn balance_ok(&self, boundary: Rational64) -> bool {
        match *self {
            FlowKind::CircularR(_) | FlowKind::Pq { .. } => boundary.is_zero(),
            FlowKind::ModPq { p, .. } => (boundary / Rational64::from_integer(p)).is_integer(),
            FlowKind::CircularModR(r) => (boundary / r).is_integer(),
        }
    }
}

/// Per-edge exact rational values together with the claimed flow kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub values: Vec<Rational64>,
    pub kind: FlowKind,
}

impl FlowAssignment {
    pub fn new(values: Vec<Rational64>, kind: FlowKind) -> Self {
        FlowAssignment { values, kind }
    }

    pub fn from_integers(values: &[i64], kind: FlowKind) -> Self {
        FlowAssignment {
            values: values.iter().map(|&v| Rational64::from_integer(v)).collect(),
            kind,
        }
    }

    pub fn value(&self, e: usize) -> Rational64 {
        self.values[e]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= Rational64::zero())
    }

    /// Rescale a circular flow to a larger circumference `r_new >= r`.
    pub fn scaled_to(&self, r_new: Rational64) -> Result<FlowAssignment> {
        let FlowKind::CircularR(r) = self.kind else {
            return Err(Error::InvalidInput("scaling applies to circular flows".into()));
        };
        Ok(FlowAssignment {
            values: self.values.iter().map(|v| v * r_new / r).collect(),
            kind: FlowKind::CircularR(r_new),
        })
    }

    /// View an integer (p,q)-flow as a circular p/q-flow with values f/q.
    pub fn pq_to_circular(&self) -> Result<FlowAssignment> {
        let FlowKind::Pq { p, q } = self.kind else {
            return Err(Error::InvalidInput("expected an integer (p,q)-flow".into()));
        };
        let qr = Rational64::from_integer(q);
        Ok(FlowAssignment {
            values: self.values.iter().map(|v| v / qr).collect(),
            kind: FlowKind::CircularR(Rational64::new(p, q)),
        })
    }
}

/// First failed constraint of a flow verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowCheck {
    Valid,
    EdgeViolation(usize),
    VertexViolation(usize),
}

impl FlowCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, FlowCheck::Valid)
    }
}

/// Net flow out of the vertex set `side`: the sum over arcs leaving minus the
/// sum over arcs entering.
pub fn boundary(
    g: &SignedGraph,
    d: &Orientation,
    f: &FlowAssignment,
    side: &[bool],
) -> Rational64 {
    let mut total = Rational64::zero();
    for e in 0..g.edge_count() {
        let (t, h) = d.arc(e);
        if side[t] && !side[h] {
            total += f.value(e);
        } else if !side[t] && side[h] {
            total -= f.value(e);
        }
    }
    total
}

pub fn vertex_boundary(
    g: &SignedGraph,
    d: &Orientation,
    f: &FlowAssignment,
    v: usize,
) -> Rational64 {
    let mut total = Rational64::zero();
    for e in 0..g.edge_count() {
        let (t, h) = d.arc(e);
        if t == v {
            total += f.value(e);
        }
        if h == v {
            total -= f.value(e);
        }
    }
    total
}

/// Check value ranges and balance for the assignment's kind. Reports the
/// first violated edge, then the first violated vertex.
pub fn verify_flow(g: &SignedGraph, d: &Orientation, f: &FlowAssignment) -> Result<FlowCheck> {
    f.kind.validate()?;
    if f.values.len() != g.edge_count() {
        return Err(Error::FlowMissingEdge { edge: f.values.len().min(g.edge_count()) });
    }
    if d.len() != g.edge_count() {
        return Err(Error::InvalidInput("orientation does not cover the graph".into()));
    }
    for e in 0..g.edge_count() {
        if !f.kind.value_allowed(g.sign(e), f.value(e)) {
            return Ok(FlowCheck::EdgeViolation(e));
        }
    }
    let mut bal = vec![Rational64::zero(); g.vertex_count()];
    for e in 0..g.edge_count() {
        let (t, h) = d.arc(e);
        bal[t] += f.value(e);
        bal[h] -= f.value(e);
    }
    for (v, b) in bal.iter().enumerate() {
        if !f.kind.balance_ok(*b) {
            return Ok(FlowCheck::VertexViolation(v));
        }
    }
    Ok(FlowCheck::Valid)
}

/// Reverse one arc and negate its value; valid for the signed-value kinds.
pub fn negate_edge(
    d: &Orientation,
    f: &FlowAssignment,
    e: usize,
) -> Result<(Orientation, FlowAssignment)> {
    match f.kind {
        FlowKind::CircularR(_) | FlowKind::Pq { .. } => {}
        _ => {
            return Err(Error::InvalidInput(
                "negate_edge applies to the signed-value kinds only".into(),
            ))
        }
    }
    let mut f2 = f.clone();
    f2.values[e] = -f2.values[e];
    Ok((d.flipped(e), f2))
}

/// Flip every negative-valued arc, producing the non-negative form.
pub fn nonnegative_form(
    d: &Orientation,
    f: &FlowAssignment,
) -> Result<(Orientation, FlowAssignment)> {
    let mut d2 = d.clone();
    let mut f2 = f.clone();
    for e in 0..f2.values.len() {
        if f2.values[e] < Rational64::zero() {
            let (nd, nf) = negate_edge(&d2, &f2, e)?;
            d2 = nd;
            f2 = nf;
        }
    }
    Ok((d2, f2))
}

/// Convert a verified modulo (p,q)-flow into an integer (p,q)-flow with the
/// same orientation and congruent values: repeatedly push `p` units along a
/// shortest excess-to-deficit path, each edge toggling between its residue
/// and the residue minus `p`.
pub fn modulo_to_integer(
    g: &SignedGraph,
    d: &Orientation,
    f: &FlowAssignment,
) -> Result<FlowAssignment> {
    let FlowKind::ModPq { p, q } = f.kind else {
        return Err(Error::InvalidInput("expected a modulo (p,q)-flow".into()));
    };
    if !verify_flow(g, d, f)?.is_valid() {
        return Err(Error::InvalidInput("input is not a valid modulo (p,q)-flow".into()));
    }
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut vals: Vec<i64> = f.values.iter().map(|v| v.to_integer()).collect();
    let mut bal = vec![0i64; n];
    for e in 0..m {
        let (t, h) = d.arc(e);
        bal[t] += vals[e];
        bal[h] -= vals[e];
    }
    loop {
        let Some(src) = (0..n).find(|&v| bal[v] > 0) else { break };
        // BFS over edges whose representative can still toggle. Toggling a
        // high representative (>= 0) moves excess tail -> head; a low one
        // moves excess head -> tail. Zero residues stay pinned at zero.
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[src] = true;
        let mut queue = std::collections::VecDeque::from([src]);
        let mut sink = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for e in 0..m {
                if f.values[e].is_zero() {
                    continue;
                }
                let (t, h) = d.arc(e);
                let step = if vals[e] >= 0 && t == v {
                    Some(h)
                } else if vals[e] < 0 && h == v {
                    Some(t)
                } else {
                    None
                };
                if let Some(next) = step {
                    if !seen[next] {
                        seen[next] = true;
                        pred[next] = Some(e);
                        if bal[next] < 0 {
                            sink = Some(next);
                            break 'bfs;
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        let Some(mut v) = sink else {
            return Err(Error::InvalidInput(
                "excess rerouting failed; input balance was inconsistent".into(),
            ));
        };
        while v != src {
            let e = pred[v].unwrap();
            let (t, h) = d.arc(e);
            if vals[e] >= 0 {
                vals[e] -= p;
                bal[t] -= p;
                bal[h] += p;
                v = t;
            } else {
                vals[e] += p;
                bal[t] += p;
                bal[h] -= p;
                v = h;
            }
        }
    }
    Ok(FlowAssignment::from_integers(&vals, FlowKind::Pq { p, q }))
}

/// A partition of the negative edges steering each one to the low value
/// range or the high value range of the circular interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativePartition {
    pub low_set: Vec<usize>,
    pub high_set: Vec<usize>,
}

impl NegativePartition {
    pub fn new(g: &SignedGraph, low_set: Vec<usize>, high_set: Vec<usize>) -> Result<Self> {
        let mut tag = vec![0u8; g.edge_count()];
        for &e in &low_set {
            g.check_edge_id(e)?;
            tag[e] += 1;
        }
        for &e in &high_set {
            g.check_edge_id(e)?;
            tag[e] += 1;
        }
        for e in 0..g.edge_count() {
            let negative = g.sign(e).is_negative();
            if negative && tag[e] != 1 {
                return Err(Error::InvalidInput(format!(
                    "negative edge {e} must appear in exactly one part"
                )));
            }
            if !negative && tag[e] != 0 {
                return Err(Error::InvalidInput(format!("positive edge {e} in the partition")));
            }
        }
        Ok(NegativePartition { low_set, high_set })
    }

    pub fn all_low(g: &SignedGraph) -> Self {
        NegativePartition { low_set: g.negative_edges(), high_set: Vec::new() }
    }

    /// Per-edge lower bound induced by the partition at circumference `r`.
    pub fn lower(&self, g: &SignedGraph, r: Rational64, e: usize) -> Rational64 {
        let two = Rational64::from_integer(2);
        if !g.sign(e).is_negative() {
            Rational64::from_integer(1)
        } else if self.high_set.contains(&e) {
            r / two + 1
        } else {
            Rational64::zero()
        }
    }

    /// Per-edge upper bound induced by the partition at circumference `r`.
    pub fn upper(&self, g: &SignedGraph, r: Rational64, e: usize) -> Rational64 {
        let two = Rational64::from_integer(2);
        if !g.sign(e).is_negative() {
            r - 1
        } else if self.high_set.contains(&e) {
            r
        } else {
            r / two - 1
        }
    }
}

/// Feasibility of a non-negative circulation within the partition's bounds
/// for a fixed orientation, via the bounded-circulation max-flow reduction.
pub fn hoffman_feasible(
    g: &SignedGraph,
    d: &Orientation,
    pi: &NegativePartition,
    r: Rational64,
) -> Result<bool> {
    if r < Rational64::from_integer(2) {
        return Err(Error::BadFlowParams(format!("r = {r} is below 2")));
    }
    let arcs: Vec<_> = (0..g.edge_count())
        .map(|e| {
            let (t, h) = d.arc(e);
            (t, h, pi.lower(g, r, e), pi.upper(g, r, e))
        })
        .collect();
    Ok(circulation_feasible(g.vertex_count(), &arcs))
}

/// Independent oracle: check the cut inequality `sum of lower bounds over
/// arcs entering X <= sum of upper bounds over arcs leaving X` for every
/// proper nonempty X (both directions arise as X and its complement).
pub fn hoffman_feasible_by_cuts(
    g: &SignedGraph,
    d: &Orientation,
    pi: &NegativePartition,
    r: Rational64,
) -> Result<bool> {
    if r < Rational64::from_integer(2) {
        return Err(Error::BadFlowParams(format!("r = {r} is below 2")));
    }
    let n = g.vertex_count();
    if n > 12 {
        return Err(Error::SizeGuard(format!("all-cuts oracle limited to 12 vertices, got {n}")));
    }
    if n < 2 {
        return Ok(true);
    }
    for mask in 1u64..((1 << n) - 1) {
        let side: Vec<bool> = (0..n).map(|v| (mask >> v) & 1 == 1).collect();
        let mut into_x = Rational64::zero();
        let mut out_of_x = Rational64::zero();
        for e in 0..g.edge_count() {
            let (t, h) = d.arc(e);
            if !side[t] && side[h] {
                into_x += pi.lower(g, r, e);
            } else if side[t] && !side[h] {
                out_of_x += pi.upper(g, r, e);
            }
        }
        if into_x > out_of_x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A cut in which every crossing edge sits at the extreme value forced by
/// its sign and direction, together with the edge counts per role and the
/// index the cut certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightCutReport {
    pub cut: Cut,
    pub s1: usize,
    pub s2: usize,
    pub t1: usize,
    pub t2: usize,
    pub implied_r: Rational64,
}

/// Certified index of a tight cut: `2(s1+s2+t1+t2) / (2 s1 + t1 - t2)`.
pub fn tight_cut_index(report: &TightCutReport) -> Result<Rational64> {
    let denom = 2 * report.s1 as i64 + report.t1 as i64 - report.t2 as i64;
    if denom <= 0 {
        return Err(Error::DegenerateTightCut);
    }
    let num = 2 * (report.s1 + report.s2 + report.t1 + report.t2) as i64;
    Ok(Rational64::new(num, denom))
}

/// Pin values for a crossing edge. Comparisons are taken modulo r so that
/// the two negative pins coincide at r = 2 where the circle closes up.
fn pinned(f_val: Rational64, pin: Rational64, r: Rational64) -> bool {
    ((f_val - pin) / r).is_integer()
}

/// Search for a tight cut of a verified non-negative circular r-flow:
/// vertices are linked when an edges offers slack in the crossing role, and
/// any closed set of the resulting reachability digraph is tight.
pub fn find_tight_cut(
    g: &SignedGraph,
    d: &Orientation,
    f: &FlowAssignment,
) -> Result<Option<TightCutReport>> {
    let FlowKind::CircularR(r) = f.kind else {
        return Err(Error::InvalidInput("tight cuts are defined for circular flows".into()));
    };
    if !f.is_nonnegative() {
        return Err(Error::InvalidInput("tight cut search expects a non-negative flow".into()));
    }
    if !verify_flow(g, d, f)?.is_valid() {
        return Err(Error::InvalidInput("tight cut search expects a verified flow".into()));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Ok(None);
    }
    let one = Rational64::from_integer(1);
    let two = Rational64::from_integer(2);
    let pin_out = |sign: Sign| match sign {
        Sign::Plus => r - one,
        Sign::Minus => r / two - one,
    };
    let pin_in = |sign: Sign| match sign {
        Sign::Plus => one,
        Sign::Minus => r / two + one,
    };
    // Reachability digraph: an arc may be traversed tail -> head when the
    // edge is off its out-of-X pin, head -> tail when off its into-X pin.
    let mut adj = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (t, h) = d.arc(e);
        let v = f.value(e);
        let sign = g.sign(e);
        if !pinned(v, pin_out(sign), r) {
            adj[t].push(h);
        }
        if !pinned(v, pin_in(sign), r) {
            adj[h].push(t);
        }
    }
    let comp = strongly_connected_components(n, &adj);
    let comp_count = comp.iter().max().map(|c| c + 1).unwrap_or(0);
    // Sink components of the condensation are the minimal closed sets.
    let mut has_out = vec![false; comp_count];
    for v in 0..n {
        for &w in &adj[v] {
            if comp[v] != comp[w] {
                has_out[comp[v]] = true;
            }
        }
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for c in 0..comp_count {
        if has_out[c] {
            continue;
        }
        let side: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        if side.len() == n {
            continue;
        }
        let flags: Vec<bool> = (0..n).map(|v| comp[v] == c).collect();
        if g.coboundary(&flags).is_empty() {
            continue;
        }
        candidates.push(side);
    }
    candidates.sort();
    let Some(side) = candidates.into_iter().next() else {
        return Ok(None);
    };
    let flags: Vec<bool> = {
        let mut fl = vec![false; n];
        for &v in &side {
            fl[v] = true;
        }
        fl
    };
    let cut = Cut::from_side(g, &flags)?;
    let (mut s1, mut s2, mut t1, mut t2) = (0usize, 0usize, 0usize, 0usize);
    for &e in &cut.edge_ids {
        let (t, _) = d.arc(e);
        let leaving = flags[t];
        let sign = g.sign(e);
        let v = f.value(e);
        // Leaving edges and entering positive edges always attain their pin
        // literally. An entering negative edge whose pin only matches modulo
        // r (the r = 2 wrap, value 0) counts in the flipped leaving role,
        // where the negated value attains the pin literally.
        match (sign, leaving) {
            (Sign::Plus, true) => s1 += 1,
            (Sign::Plus, false) => s2 += 1,
            (Sign::Minus, true) => t1 += 1,
            (Sign::Minus, false) => {
                if v == pin_in(Sign::Minus) {
                    t2 += 1;
                } else {
                    t1 += 1;
                }
            }
        }
    }
    let denom = 2 * s1 as i64 + t1 as i64 - t2 as i64;
    if denom <= 0 {
        return Err(Error::DegenerateTightCut);
    }
    let report = TightCutReport {
        cut,
        s1,
        s2,
        t1,
        t2,
        implied_r: Rational64::new(2 * (s1 + s2 + t1 + t2) as i64, denom),
    };
    Ok(Some(report))
}

fn strongly_connected_components(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    // Kosaraju with iterative DFS.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        seen[root] = true;
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            if *cursor < adj[v].len() {
                let w = adj[v][*cursor];
                *cursor += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &adj[v] {
            radj[w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let mut stack = vec![root];
        comp[root] = c;
        while let Some(v) = stack.pop() {
            for &w in &radj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    stack.push(w);
                }
            }
        }
        c += 1;
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedGraph;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn digon_neg() -> SignedGraph {
        SignedGraph::new(2, vec![(0, 1, Sign::Plus), (0, 1, Sign::Minus)]).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let g = digon_neg();
        let opposing = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let same = Orientation::new(&g, vec![(0, 1), (0, 1)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::CircularR(rat(4, 1)));
        assert_eq!(boundary(&g, &opposing, &f, &[true, false]), rat(0, 1));
        assert_eq!(boundary(&g, &same, &f, &[true, false]), rat(2, 1));
        let zero = FlowAssignment::from_integers(&[0, 0], FlowKind::CircularR(rat(2, 1)));
        assert_eq!(boundary(&g, &same, &zero, &[true, false]), rat(0, 1));
    }

    #[test]
    fn verify_zero_flow_on_all_negative() {
        let g = digon_neg().all_negative();
        let d = Orientation::reference(&g);
        let f = FlowAssignment::from_integers(&[0, 0], FlowKind::CircularR(rat(2, 1)));
        assert!(verify_flow(&g, &d, &f).unwrap().is_valid());
    }

    #[test]
    fn verify_digon_circular_four() {
        let g = digon_neg();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::CircularR(rat(4, 1)));
        let same = Orientation::new(&g, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(verify_flow(&g, &same, &f).unwrap(), FlowCheck::VertexViolation(0));
        let opposing = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        assert!(verify_flow(&g, &opposing, &f).unwrap().is_valid());
    }

    #[test]
    fn k4_has_no_62_flow() {
        // Exhaustive over signed values at the reference orientation; value
        // negation covers the other orientations.
        let g = SignedGraph::new(
            4,
            vec![(0, 1, Sign::Plus), (0, 2, Sign::Plus), (0, 3, Sign::Plus),
                 (1, 2, Sign::Plus), (1, 3, Sign::Plus), (2, 3, Sign::Plus)],
        )
        .unwrap();
        let d = Orientation::reference(&g);
        let domain = [-4i64, -3, -2, 2, 3, 4];
        let mut vals = [0i64; 6];
        let mut any = false;
        let mut idx = [0usize; 6];
        'outer: loop {
            for (i, &j) in idx.iter().enumerate() {
                vals[i] = domain[j];
            }
            let f = FlowAssignment::from_integers(&vals, FlowKind::Pq { p: 6, q: 2 });
            if verify_flow(&g, &d, &f).unwrap().is_valid() {
                any = true;
            }
            for i in 0..6 {
                idx[i] += 1;
                if idx[i] < domain.len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
        assert!(!any);
    }

    #[test]
    fn negate_edge_involution_and_invariance() {
        let g = digon_neg();
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::CircularR(rat(4, 1)));
        let (d1, f1) = negate_edge(&d, &f, 0).unwrap();
        assert_eq!(f1.value(0), rat(-1, 1));
        assert_eq!(d1.arc(0), (1, 0));
        assert!(verify_flow(&g, &d1, &f1).unwrap().is_valid());
        let (d2, f2) = negate_edge(&d1, &f1, 0).unwrap();
        assert_eq!(d2, d);
        assert_eq!(f2, f);
        let (dn, fn_) = nonnegative_form(&d1, &f1).unwrap();
        assert!(fn_.is_nonnegative());
        assert!(verify_flow(&g, &dn, &fn_).unwrap().is_valid());
    }

    #[test]
    fn modulo_to_integer_examples() {
        let g = digon_neg();
        // Already balanced: fixed point.
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::ModPq { p: 4, q: 1 });
        let out = modulo_to_integer(&g, &d, &f).unwrap();
        assert_eq!(out.values, f.values);
        assert_eq!(out.kind, FlowKind::Pq { p: 4, q: 1 });

        // Boundary 4 at vertex 0: one edge shifts down by 4.
        let d = Orientation::new(&g, vec![(0, 1), (0, 1)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 3], FlowKind::ModPq { p: 4, q: 1 });
        let out = modulo_to_integer(&g, &d, &f).unwrap();
        assert!(verify_flow(&g, &d, &out).unwrap().is_valid());
        for e in 0..2 {
            let diff = out.value(e) - f.value(e);
            assert!((diff / rat(4, 1)).is_integer());
        }

        // All-zero on an all-negative graph stays zero.
        let gn = g.all_negative();
        let d = Orientation::reference(&gn);
        let f = FlowAssignment::from_integers(&[0, 0], FlowKind::ModPq { p: 4, q: 1 });
        let out = modulo_to_integer(&gn, &d, &f).unwrap();
        assert!(out.values.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn hoffman_examples() {
        // Positive digon, opposing arcs, r = 2.
        let g = SignedGraph::new(2, vec![(0, 1, Sign::Plus), (0, 1, Sign::Plus)]).unwrap();
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let pi = NegativePartition::all_low(&g);
        assert!(hoffman_feasible(&g, &d, &pi, rat(2, 1)).unwrap());
        assert!(hoffman_feasible_by_cuts(&g, &d, &pi, rat(2, 1)).unwrap());

        // A positive bridge is infeasible at every r.
        let k2 = SignedGraph::new(2, vec![(0, 1, Sign::Plus)]).unwrap();
        let d = Orientation::reference(&k2);
        let pi = NegativePartition::all_low(&k2);
        for r in [rat(2, 1), rat(3, 1), rat(7, 2), rat(12, 1)] {
            assert!(!hoffman_feasible(&k2, &d, &pi, r).unwrap());
            assert!(!hoffman_feasible_by_cuts(&k2, &d, &pi, r).unwrap());
        }

        // C_{-2} at r = 4 with the negative edge in the low range.
        let g = digon_neg();
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let pi = NegativePartition::new(&g, vec![1], vec![]).unwrap();
        assert!(hoffman_feasible(&g, &d, &pi, rat(4, 1)).unwrap());
    }

    #[test]
    fn hoffman_maxflow_matches_cut_oracle_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let n = rng.gen_range(2..6);
            let m = rng.gen_range(1..8);
            let mut edges = Vec::new();
            for _ in 0..m {
                let u = rng.gen_range(0..n);
                let mut w = rng.gen_range(0..n);
                while w == u {
                    w = rng.gen_range(0..n);
                }
                let sign = if rng.gen_bool(0.4) { Sign::Minus } else { Sign::Plus };
                edges.push((u, w, sign));
            }
            let g = SignedGraph::new(n, edges).unwrap();
            let forward: Vec<bool> = (0..m).map(|_| rng.gen_bool(0.5)).collect();
            let d = Orientation::from_forward_flags(&g, &forward);
            let (mut low, mut high) = (Vec::new(), Vec::new());
            for e in g.negative_edges() {
                if rng.gen_bool(0.5) {
                    low.push(e);
                } else {
                    high.push(e);
                }
            }
            let pi = NegativePartition::new(&g, low, high).unwrap();
            let r = rat(rng.gen_range(4..14), rng.gen_range(1..3));
            if r < rat(2, 1) {
                continue;
            }
            assert_eq!(
                hoffman_feasible(&g, &d, &pi, r).unwrap(),
                hoffman_feasible_by_cuts(&g, &d, &pi, r).unwrap()
            );
        }
    }

    #[test]
    fn tight_cut_on_digon() {
        let g = digon_neg();
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::CircularR(rat(4, 1)));
        let report = find_tight_cut(&g, &d, &f).unwrap().unwrap();
        assert_eq!((report.s1, report.s2, report.t1, report.t2), (0, 1, 1, 0));
        assert_eq!(tight_cut_index(&report).unwrap(), rat(4, 1));
        assert_eq!(report.implied_r, rat(4, 1));

        // Scaling to r = 5 produces slack everywhere: no tight cut.
        let scaled = f.scaled_to(rat(5, 1)).unwrap();
        assert!(verify_flow(&g, &d, &scaled).unwrap().is_valid());
        assert!(find_tight_cut(&g, &d, &scaled).unwrap().is_none());
    }

    #[test]
    fn tight_cut_zero_flow_r2() {
        // All-negative digon with the zero flow at r = 2: both negative pins
        // collapse to 0 modulo 2, so a tight cut exists for any orientation.
        let g = digon_neg().all_negative();
        for arcs in [vec![(0, 1), (1, 0)], vec![(0, 1), (0, 1)], vec![(1, 0), (1, 0)]] {
            let d = Orientation::new(&g, arcs).unwrap();
            let f = FlowAssignment::from_integers(&[0, 0], FlowKind::CircularR(rat(2, 1)));
            let report = find_tight_cut(&g, &d, &f).unwrap().unwrap();
            assert_eq!(tight_cut_index(&report).unwrap(), rat(2, 1));
        }
    }

    #[test]
    fn tight_cut_index_direct_values() {
        let dummy_cut = Cut { side_x: vec![0], edge_ids: vec![0, 1] };
        let make = |s1, s2, t1, t2| TightCutReport {
            cut: dummy_cut.clone(),
            s1,
            s2,
            t1,
            t2,
            implied_r: rat(1, 1),
        };
        assert_eq!(tight_cut_index(&make(1, 1, 0, 0)).unwrap(), rat(2, 1));
        assert_eq!(tight_cut_index(&make(0, 1, 1, 0)).unwrap(), rat(4, 1));
        assert_eq!(tight_cut_index(&make(1, 3, 0, 0)).unwrap(), rat(4, 1));
        assert!(tight_cut_index(&make(0, 1, 0, 1)).is_err());
    }

    #[test]
    fn scaling_keeps_validity() {
        let g = digon_neg();
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::CircularR(rat(4, 1)));
        for r in [rat(4, 1), rat(9, 2), rat(5, 1), rat(8, 1)] {
            let scaled = f.scaled_to(r).unwrap();
            assert!(verify_flow(&g, &d, &scaled).unwrap().is_valid(), "failed at r = {r}");
        }
    }

    #[test]
    fn cut_balance_follows_from_vertex_balance() {
        let g = digon_neg();
        let d = Orientation::new(&g, vec![(0, 1), (1, 0)]).unwrap();
        let f = FlowAssignment::from_integers(&[1, 1], FlowKind::CircularR(rat(4, 1)));
        for mask in 1u32..3 {
            let side: Vec<bool> = (0..2).map(|v| (mask >> v) & 1 == 1).collect();
            assert!(boundary(&g, &d, &f, &side).is_zero());
        }
    }
}
