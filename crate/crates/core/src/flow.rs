//! Unit-augmenting max-flow on a bipartite transportation network.
//!
//! Sources supply left vertices, left-to-right arcs are uncapacitated and
//! right vertices drain into the sink with a fixed capacity. Both the
//! draconian flow check (unit right capacities) and the dilate membership
//! test (right capacities = column marginals) reduce to this shape.

#[derive(Debug, Clone)]
pub struct Transport {
    n_right: usize,
    adj: Vec<Vec<usize>>,
    supply: Vec<u32>,
    capacity: Vec<u32>,
    flow: Vec<u32>,
    sent: Vec<u32>,
    load: Vec<u32>,
}

impl Transport {
    /// `adj[i]` lists the right vertices reachable from left vertex `i`.
    pub fn new(adj: Vec<Vec<usize>>, supply: Vec<u32>, capacity: Vec<u32>) -> Self {
        assert_eq!(adj.len(), supply.len());
        let n_left = adj.len();
        let n_right = capacity.len();
        debug_assert!(adj.iter().flatten().all(|&j| j < n_right));
        Transport {
            n_right,
            adj,
            supply,
            capacity,
            flow: vec![0; n_left * n_right],
            sent: vec![0; n_left],
            load: vec![0; n_right],
        }
    }

    pub fn routed(&self) -> u64 {
        self.sent.iter().map(|&s| s as u64).sum()
    }

    pub fn add_supply(&mut self, left: usize, amount: u32) {
        self.supply[left] += amount;
    }

    /// Routes every remaining unit of supply. Returns `false` as soon as some
    /// unit cannot be placed, which means the supplies are not routable.
    pub fn saturate(&mut self) -> bool {
        for i in 0..self.supply.len() {
            while self.sent[i] < self.supply[i] {
                if !self.push_unit(i) {
                    return false;
                }
            }
        }
        true
    }

    /// Finds one augmenting path from left vertex `from` in the residual
    /// network and pushes a unit along it.
    pub fn push_unit(&mut self, from: usize) -> bool {
        let n_left = self.adj.len();
        let nr = self.n_right;
        let mut via_right = vec![usize::MAX; nr];
        let mut via_left = vec![usize::MAX; n_left];
        let mut seen_left = vec![false; n_left];
        seen_left[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        let mut end = None;
        'search: while let Some(x) = queue.pop_front() {
            for &j in &self.adj[x] {
                if via_right[j] != usize::MAX {
                    continue;
                }
                via_right[j] = x;
                if self.load[j] < self.capacity[j] {
                    end = Some(j);
                    break 'search;
                }
                for y in 0..n_left {
                    if !seen_left[y] && self.flow[y * nr + j] > 0 {
                        seen_left[y] = true;
                        via_left[y] = j;
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some(end) = end else {
            return false;
        };
        self.load[end] += 1;
        let mut j = end;
        loop {
            let x = via_right[j];
            self.flow[x * nr + j] += 1;
            if x == from {
                break;
            }
            let back = via_left[x];
            self.flow[x * nr + back] -= 1;
            j = back;
        }
        self.sent[from] += 1;
        true
    }
}
