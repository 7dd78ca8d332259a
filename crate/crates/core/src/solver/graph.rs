//! Pairwise-submodular energies in s-t cut form.
//!
//! Arc convention: label 1 is the source side, label 0 the sink side.
//!
//! * `source_cap[v]` is paid when `v` takes label 0 (arc `s -> v` is cut),
//! * `sink_cap[v]` is paid when `v` takes label 1 (arc `v -> t` is cut),
//! * an arc `u -> v` is paid when `u` takes label 1 and `v` takes label 0.
//!
//! Every term is kept both as a real weight and as an integer capacity
//! scaled by [`CAPACITY_SCALE`]. Flow runs on the integers; energies are
//! always reported from the real weights.

use crate::error::{Error, Result};
use crate::label::LabelVector;
use crate::reduction::{build_gadget, decompose_truncated, GadgetFragment};
use crate::Cost;

use super::instance::Instance;
use super::maxflow::{FlowNetwork, FlowResult};

/// Fixed-point scale for capacities (`2^32`).
pub const CAPACITY_SCALE: f64 = 4_294_967_296.0;

/// Largest single scaled capacity; keeps every value exact in an f64 too.
pub const MAX_CAPACITY: i64 = 1 << 53;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
    pub capacity: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutGraph {
    /// Variables `0..num_original` are the instance nodes; the rest are auxiliaries.
    pub num_original: usize,
    pub num_vars: usize,
    pub arcs: Vec<Arc>,
    /// Normalized real terminal costs `[label 0, label 1]`; one side is zero.
    pub terminal: Vec<[f64; 2]>,
    pub source_cap: Vec<i64>,
    pub sink_cap: Vec<i64>,
    pub offset: f64,
}

impl CutGraph {
    pub fn num_aux(&self) -> usize {
        self.num_vars - self.num_original
    }

    /// Real-valued energy of a full assignment over all variables.
    pub fn energy(&self, labels: &[bool]) -> Result<Cost> {
        if labels.len() != self.num_vars {
            return Err(Error::LengthMismatch { left: labels.len(), right: self.num_vars });
        }
        let mut e = self.offset;
        for (t, &l) in self.terminal.iter().zip(labels) {
            e += t[l as usize];
        }
        for a in &self.arcs {
            if labels[a.from] && !labels[a.to] {
                e += a.weight;
            }
        }
        Ok(e)
    }

    /// Scaled cut capacity of a full assignment, before adding the offset.
    pub fn cut_capacity(&self, labels: &[bool]) -> i64 {
        let mut c = 0i64;
        for (v, &l) in labels.iter().enumerate() {
            c += if l { self.sink_cap[v] } else { self.source_cap[v] };
        }
        for a in &self.arcs {
            if labels[a.from] && !labels[a.to] {
                c += a.capacity;
            }
        }
        c
    }

    /// Minimum of [`CutGraph::energy`] over the auxiliaries with the
    /// original variables fixed to `x`.
    ///
    /// Auxiliaries only ever connect to original variables, so each one is
    /// minimized independently.
    pub fn min_energy_over_aux(&self, x: &LabelVector) -> Result<Cost> {
        let n = self.num_original;
        if x.len() != n {
            return Err(Error::LengthMismatch { left: x.len(), right: n });
        }
        let mut e = self.offset;
        for v in 0..n {
            e += self.terminal[v][x.get(v) as usize];
        }
        let mut aux: Vec<[f64; 2]> = self.terminal[n..].to_vec();
        for a in &self.arcs {
            match (a.from < n, a.to < n) {
                (true, true) => {
                    if x.get(a.from) && !x.get(a.to) {
                        e += a.weight;
                    }
                }
                // paid when the auxiliary is 1 and the node is 0
                (false, true) => {
                    if !x.get(a.to) {
                        aux[a.from - n][1] += a.weight;
                    }
                }
                // paid when the node is 1 and the auxiliary is 0
                (true, false) => {
                    if x.get(a.from) {
                        aux[a.to - n][0] += a.weight;
                    }
                }
                (false, false) => {
                    return Err(Error::Parameter("arc between two auxiliaries".into()));
                }
            }
        }
        Ok(e + aux.iter().map(|c| c[0].min(c[1])).sum::<f64>())
    }
}

/// Accumulates real-valued unary and pairwise terms.
struct Builder {
    terminal: Vec<[f64; 2]>,
    arcs: Vec<(usize, usize, f64)>,
    offset: f64,
}

impl Builder {
    fn add_unary(&mut self, var: usize, cost: [f64; 2]) {
        self.terminal[var][0] += cost[0];
        self.terminal[var][1] += cost[1];
    }

    /// `E(x_u, x_v) = A + (C - A) x_u + (D - C) x_v + (B + C - A - D)(1 - x_u) x_v`
    /// with `A = E(0,0), B = E(0,1), C = E(1,0), D = E(1,1)`.
    fn add_pairwise(&mut self, u: usize, v: usize, table: [[f64; 2]; 2]) -> Result<()> {
        let [[a, b], [c, d]] = table;
        let w = b + c - a - d;
        if w < 0.0 {
            return Err(Error::Parameter(format!("pairwise term ({u}, {v}) is not submodular")));
        }
        self.offset += a;
        self.terminal[u][1] += c - a;
        self.terminal[v][1] += d - c;
        if w > 0.0 {
            // paid when v = 1 and u = 0
            self.arcs.push((v, u, w));
        }
        Ok(())
    }

    fn add_fragment(&mut self, f: &GadgetFragment) -> Result<()> {
        self.offset += f.constant;
        for t in &f.unary {
            self.add_unary(t.var, t.cost);
        }
        for t in &f.pairwise {
            self.add_pairwise(t.u, t.v, t.table)?;
        }
        Ok(())
    }
}

fn scale(value: f64) -> Result<i64> {
    let s = (value * CAPACITY_SCALE).round();
    if !(s >= 0.0 && s <= MAX_CAPACITY as f64) {
        return Err(Error::Overflow { value: s });
    }
    Ok(s as i64)
}

/// Compiles unaries and every hyperedge's truncated-linear gadgets into one
/// cut graph. Auxiliary ids follow hyperedge order, then piece cap order.
pub fn assemble_energy(inst: &Instance) -> Result<CutGraph> {
    let n = inst.num_nodes();
    let mut b = Builder { terminal: vec![[0.0; 2]; n], arcs: Vec::new(), offset: 0.0 };
    for (v, &c) in inst.unary().iter().enumerate() {
        b.add_unary(v, c);
    }
    let mut next = n;
    for h in inst.hyperedges() {
        let dec = decompose_truncated(&h.spec, h.len() / 2)?;
        b.offset += dec.constant;
        for piece in dec.active() {
            let fragment = build_gadget(*piece, &h.members, next)?;
            next += 2;
            b.terminal.extend([[0.0; 2]; 2]);
            b.add_fragment(&fragment)?;
        }
    }

    let mut offset = b.offset;
    let mut total: i64 = 0;
    let mut bump = |c: i64| -> Result<i64> {
        total = total.checked_add(c).ok_or(Error::Overflow { value: c as f64 })?;
        Ok(c)
    };
    let mut source_cap = Vec::with_capacity(next);
    let mut sink_cap = Vec::with_capacity(next);
    let mut terminal = b.terminal;
    for t in terminal.iter_mut() {
        let m = t[0].min(t[1]);
        offset += m;
        *t = [t[0] - m, t[1] - m];
        source_cap.push(bump(scale(t[0])?)?);
        sink_cap.push(bump(scale(t[1])?)?);
    }
    let arcs = b
        .arcs
        .into_iter()
        .map(|(from, to, weight)| {
            Ok(Arc { from, to, weight, capacity: bump(scale(weight)?)? })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CutGraph { num_original: n, num_vars: next, arcs, terminal, source_cap, sink_cap, offset })
}

/// Maximum flow of the cut graph. `source_side` covers the variables only;
/// `true` there means label 1.
pub fn max_flow(graph: &CutGraph) -> FlowResult {
    let (s, t) = (graph.num_vars, graph.num_vars + 1);
    let mut net = FlowNetwork::new(graph.num_vars + 2);
    for v in 0..graph.num_vars {
        if graph.source_cap[v] > 0 {
            net.add_edge(s, v, graph.source_cap[v]);
        }
        if graph.sink_cap[v] > 0 {
            net.add_edge(v, t, graph.sink_cap[v]);
        }
    }
    for a in &graph.arcs {
        if a.capacity > 0 {
            net.add_edge(a.from, a.to, a.capacity);
        }
    }
    let mut r = net.max_flow(s, t);
    r.source_side.truncate(graph.num_vars);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concave::{ConcaveSpec, Family};
    use crate::solver::instance::{instance_energy, Hyperedge};

    fn single_edge(k: usize, spec: ConcaveSpec) -> Instance {
        Instance::new(vec![[0.0; 2]; k], vec![Hyperedge::new((0..k).collect(), spec)]).unwrap()
    }

    #[test]
    fn unary_only() {
        let inst = Instance::new(vec![[1.0, 2.0], [0.5, 0.0]], vec![]).unwrap();
        let g = assemble_energy(&inst).unwrap();
        assert_eq!(g.num_vars, 2);
        assert!(g.arcs.is_empty());
        assert_eq!(g.offset, 1.0);
    }

    #[test]
    fn aux_counts() {
        let g = ConcaveSpec::new(Family::TruncLinear { slope: 1.0, cap: 1.0 }, 2, 1.0).unwrap();
        assert_eq!(assemble_energy(&single_edge(4, g)).unwrap().num_aux(), 2);
        let g = ConcaveSpec::new(Family::Sqrt, 3, 1.0).unwrap();
        assert_eq!(assemble_energy(&single_edge(6, g)).unwrap().num_aux(), 6);
    }

    #[test]
    fn aux_min_matches_energy() {
        let g = ConcaveSpec::new(Family::Sqrt, 3, 2.0).unwrap();
        let inst = Instance::new(
            vec![[0.0, 1.0], [2.0, 0.0], [0.3, 0.4], [1.0, 1.0], [0.0, 0.0], [5.0, 0.0]],
            vec![Hyperedge::new((0..6).collect(), g)],
        )
        .unwrap();
        let graph = assemble_energy(&inst).unwrap();
        for m in 0..64 {
            let x = LabelVector::from_mask(m, 6).unwrap();
            let want = instance_energy(&inst, &x).unwrap();
            let got = graph.min_energy_over_aux(&x).unwrap();
            assert!((want - got).abs() < 1e-9, "{x}: {want} vs {got}");
        }
    }

    #[test]
    fn flow_equals_min_cut_capacity() {
        let g = ConcaveSpec::new(Family::Log1p, 2, 1.0).unwrap();
        let inst = Instance::new(
            vec![[0.0, 1.0], [2.0, 0.0], [0.3, 0.4], [1.0, 0.0]],
            vec![Hyperedge::new(vec![0, 1, 2, 3], g)],
        )
        .unwrap();
        let graph = assemble_energy(&inst).unwrap();
        let flow = max_flow(&graph);
        let best = (0..1u64 << graph.num_vars)
            .map(|m| {
                let labels: Vec<bool> =
                    (0..graph.num_vars).map(|i| (m >> i) & 1 == 1).collect();
                graph.cut_capacity(&labels)
            })
            .min()
            .unwrap();
        assert_eq!(flow.value, best);
        assert_eq!(graph.cut_capacity(&flow.source_side), best);
    }

    #[test]
    fn overflow_guard() {
        let inst = Instance::new(vec![[1e300, 0.0]], vec![]).unwrap();
        assert!(matches!(assemble_energy(&inst), Err(Error::Overflow { .. })));
    }
}
