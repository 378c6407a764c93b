//! Small exact max-flow over rationals, plus the lower/upper-bounded
//! circulation reduction used by the cut-condition feasibility check.

use num_rational::Rational64;
use num_traits::Zero;

struct Arc {
    to: usize,
    cap: Rational64,
}

/// Directed network with residual arcs; Edmonds-Karp.
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, arcs: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn ensure_vertex(&mut self, v: usize) {
        while self.adj.len() <= v {
            self.adj.push(Vec::new());
            self.n += 1;
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: Rational64) -> usize {
        self.ensure_vertex(from.max(to));
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: Rational64::zero() });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> Rational64 {
        let mut total = Rational64::zero();
        loop {
            // BFS for a shortest augmenting path.
            let mut pred = vec![usize::MAX; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            'bfs: while let Some(v) = queue.pop_front() {
                for &a in &self.adj[v] {
                    let arc = &self.arcs[a];
                    if !arc.cap.is_zero() && !seen[arc.to] {
                        seen[arc.to] = true;
                        pred[arc.to] = a;
                        if arc.to == t {
                            break 'bfs;
                        }
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            // Bottleneck along the path.
            let mut bottleneck: Option<Rational64> = None;
            let mut v = t;
            while v != s {
                let a = pred[v];
                let cap = self.arcs[a].cap;
                bottleneck = Some(match bottleneck {
                    None => cap,
                    Some(b) => b.min(cap),
                });
                v = self.arcs[a ^ 1].to;
            }
            let push = bottleneck.unwrap();
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.arcs[a].cap -= push;
                self.arcs[a ^ 1].cap += push;
                v = self.arcs[a ^ 1].to;
            }
            total += push;
        }
    }
}

/// Feasibility of a circulation with per-arc lower and upper bounds.
/// Arcs are `(tail, head, lower, upper)`; conservation is required at every
/// vertex of `0..n`.
pub fn circulation_feasible(n: usize, arcs: &[(usize, usize, Rational64, Rational64)]) -> bool {
    for &(_, _, lo, hi) in arcs {
        if lo > hi {
            return false;
        }
    }
    let s = n;
    let t = n + 1;
    let mut net = FlowNetwork::new(n + 2);
    let mut excess = vec![Rational64::zero(); n];
    for &(from, to, lo, hi) in arcs {
        net.add_edge(from, to, hi - lo);
        excess[to] += lo;
        excess[from] -= lo;
    }
    let mut demand = Rational64::zero();
    for (v, &x) in excess.iter().enumerate() {
        if x > Rational64::zero() {
            net.add_edge(s, v, x);
            demand += x;
        } else if x < Rational64::zero() {
            net.add_edge(v, t, -x);
        }
    }
    net.max_flow(s, t) == demand
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn simple_max_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, rat(3, 1));
        net.add_edge(0, 2, rat(2, 1));
        net.add_edge(1, 3, rat(2, 1));
        net.add_edge(2, 3, rat(3, 1));
        net.add_edge(1, 2, rat(5, 1));
        assert_eq!(net.max_flow(0, 3), rat(5, 1));
    }

    #[test]
    fn rational_capacities() {
        let mut net = FlowNetwork::new(2);
        net.add_edge(0, 1, rat(1, 2));
        net.add_edge(0, 1, rat(1, 3));
        assert_eq!(net.max_flow(0, 1), rat(5, 6));
    }

    #[test]
    fn circulation_cases() {
        // A 2-cycle with matching bounds is feasible.
        assert!(circulation_feasible(
            2,
            &[(0, 1, rat(1, 1), rat(2, 1)), (1, 0, rat(1, 1), rat(2, 1))]
        ));
        // A single arc with a positive lower bound has no circulation.
        assert!(!circulation_feasible(2, &[(0, 1, rat(1, 1), rat(2, 1))]));
        // Lower above upper is trivially infeasible.
        assert!(!circulation_feasible(
            2,
            &[(0, 1, rat(2, 1), rat(1, 1)), (1, 0, rat(0, 1), rat(3, 1))]
        ));
    }
}
