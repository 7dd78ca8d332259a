//! Dinic's maximum flow on integer capacities.

/// A directed network; edges are stored in forward/reverse pairs.
#[derive(Clone, Debug, Default)]
pub struct FlowNetwork {
    num_nodes: usize,
    to: Vec<usize>,
    residual: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: i64,
    /// Nodes reachable from the source in the final residual network.
    pub source_side: Vec<bool>,
    pub augmentations: u64,
    pub phases: u64,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize) -> Self {
        FlowNetwork { num_nodes, ..Default::default() }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: i64) {
        assert!(from < self.num_nodes && to < self.num_nodes, "edge endpoint out of range");
        assert!(capacity >= 0, "negative capacity");
        // reverse edge first stores `from` so that to[e ^ 1] is the tail of e
        self.to.extend([to, from]);
        self.residual.extend([capacity, 0]);
    }

    /// Consumes the capacities. Deterministic: adjacency follows insertion order.
    pub fn max_flow(mut self, source: usize, sink: usize) -> FlowResult {
        let n = self.num_nodes;
        assert!(source < n && sink < n && source != sink);

        // CSR adjacency over both directions of every edge
        let mut start = vec![0usize; n + 1];
        for e in 0..self.to.len() {
            start[self.to[e ^ 1] + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut adj = vec![0usize; self.to.len()];
        for e in 0..self.to.len() {
            let tail = self.to[e ^ 1];
            adj[fill[tail]] = e;
            fill[tail] += 1;
        }

        const UNSEEN: u32 = u32::MAX;
        let mut level = vec![UNSEEN; n];
        let mut queue = Vec::with_capacity(n);
        let mut current = vec![0usize; n];
        let mut path: Vec<usize> = Vec::new();
        let (mut value, mut augmentations, mut phases) = (0i64, 0u64, 0u64);

        loop {
            level.fill(UNSEEN);
            level[source] = 0;
            queue.clear();
            queue.push(source);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &e in &adj[start[u]..start[u + 1]] {
                    let v = self.to[e];
                    if self.residual[e] > 0 && level[v] == UNSEEN {
                        level[v] = level[u] + 1;
                        queue.push(v);
                    }
                }
            }
            if level[sink] == UNSEEN {
                break;
            }
            phases += 1;
            current.copy_from_slice(&start[..n]);
            path.clear();
            let mut u = source;
            loop {
                if u == sink {
                    let push = path.iter().map(|&e| self.residual[e]).min().expect("nonempty path");
                    for &e in &path {
                        self.residual[e] -= push;
                        self.residual[e ^ 1] += push;
                    }
                    value += push;
                    augmentations += 1;
                    let cut = path.iter().position(|&e| self.residual[e] == 0).expect("saturated");
                    path.truncate(cut);
                    u = path.last().map_or(source, |&e| self.to[e]);
                    continue;
                }
                let mut advanced = false;
                while current[u] < start[u + 1] {
                    let e = adj[current[u]];
                    let v = self.to[e];
                    if self.residual[e] > 0 && level[v] == level[u] + 1 {
                        path.push(e);
                        u = v;
                        advanced = true;
                        break;
                    }
                    current[u] += 1;
                }
                if !advanced {
                    if u == source {
                        break;
                    }
                    // dead end: drop from this phase and retreat
                    level[u] = UNSEEN;
                    let e = path.pop().expect("nonempty path");
                    u = self.to[e ^ 1];
                    current[u] += 1;
                }
            }
        }

        let mut source_side = vec![false; n];
        source_side[source] = true;
        queue.clear();
        queue.push(source);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &e in &adj[start[u]..start[u + 1]] {
                let v = self.to[e];
                if self.residual[e] > 0 && !source_side[v] {
                    source_side[v] = true;
                    queue.push(v);
                }
            }
        }
        FlowResult { value, source_side, augmentations, phases }
    }
}
