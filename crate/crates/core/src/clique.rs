//! Maximum clique search on small dense graphs (bitset branch and bound with
//! greedy colouring bounds). Used by the brute-force packing oracle and by
//! Ramsey-style extraction.

#[derive(Clone)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }
}

/// Undirected graph on `n` vertices stored as adjacency bitsets.
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
}

impl Graph {
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        let mut adj = vec![Bits::new(n); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if edge(i, j) {
                    adj[i].set(j);
                    adj[j].set(i);
                }
            }
        }
        Graph { n, adj }
    }

    /// A maximum clique, vertices ascending. Among maximum cliques the search
    /// order makes the result deterministic. `stop_at` ends the search early once
    /// a clique of that size is found.
    pub fn max_clique(&self, stop_at: Option<usize>) -> Vec<usize> {
        let mut all = Bits::new(self.n);
        for i in 0..self.n {
            all.set(i);
        }
        let mut best = Vec::new();
        let mut current = Vec::new();
        let limit = stop_at.unwrap_or(usize::MAX);
        self.expand(&mut current, all, &mut best, limit);
        best.sort_unstable();
        best
    }

    fn colour_order(&self, cand: &Bits) -> Vec<(usize, usize)> {
        // Greedy sequential colouring; returns (vertex, colour) sorted by colour.
        let mut out = Vec::new();
        let mut uncoloured = cand.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.clear(v);
                uncoloured.clear(v);
                out.push((v, colour));
                for (a, b) in avail.words.iter_mut().zip(&self.adj[v].words) {
                    *a &= !b;
                }
            }
        }
        out
    }

    fn expand(&self, current: &mut Vec<usize>, cand: Bits, best: &mut Vec<usize>, limit: usize) {
        if best.len() >= limit {
            return;
        }
        let order = self.colour_order(&cand);
        let mut cand = cand;
        for &(v, colour) in order.iter().rev() {
            if current.len() + colour <= best.len() {
                return;
            }
            current.push(v);
            let next = cand.and(&self.adj[v]);
            if next.is_empty() {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(current, next, best, limit);
            }
            current.pop();
            cand.clear(v);
            if best.len() >= limit {
                return;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: usize, edge: &dyn Fn(usize, usize) -> bool) -> usize {
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let ok = vs
                .iter()
                .enumerate()
                .all(|(a, &i)| vs[a + 1..].iter().all(|&j| edge(i, j)));
            if ok {
                best = best.max(vs.len());
            }
        }
        best
    }

    #[test]
    fn matches_exhaustive_search() {
        use rand::Rng;
        let mut rng = crate::sampling::rng_for(3, 0);
        for _ in 0..30 {
            let n = 12;
            let m: Vec<Vec<bool>> = (0..n)
                .map(|_| (0..n).map(|_| rng.random::<f64>() < 0.5).collect())
                .collect();
            let edge = |i: usize, j: usize| m[i.min(j)][i.max(j)];
            let g = Graph::from_fn(n, edge);
            let c = g.max_clique(None);
            assert_eq!(c.len(), brute(n, &edge));
            for (a, &i) in c.iter().enumerate() {
                for &j in &c[a + 1..] {
                    assert!(edge(i, j));
                }
            }
        }
    }
}
