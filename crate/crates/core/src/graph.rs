//! Compact adjacency storage and union-find, shared by the graph builders.

/// Compressed sparse row adjacency. Neighbor lists are sorted; a loop is
/// stored as a single self-entry in its own row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Csr {
    offsets: Vec<u64>,
    targets: Vec<u32>,
}

impl Csr {
    /// Build from per-vertex lists; each list is sorted here.
    pub fn from_lists(mut lists: Vec<Vec<u32>>) -> Csr {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0u64);
        let mut total = 0u64;
        for l in &mut lists {
            l.sort_unstable();
            total += l.len() as u64;
            offsets.push(total);
        }
        let mut targets = Vec::with_capacity(total as usize);
        for l in lists {
            targets.extend_from_slice(&l);
        }
        Csr { offsets, targets }
    }

    /// Two-pass construction: `emit` must call its argument once per stored
    /// entry (u, v), identically on both invocations. An undirected edge is
    /// two entries, a loop one.
    pub fn from_emitter(n: usize, mut emit: impl FnMut(&mut dyn FnMut(u32, u32))) -> Csr {
        let mut degrees = vec![0u32; n];
        emit(&mut |u, _v| degrees[u as usize] += 1);
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0u64);
        let mut total = 0u64;
        for &d in &degrees {
            total += d as u64;
            offsets.push(total);
        }
        let mut cursor: Vec<u64> = offsets[..n].to_vec();
        let mut targets = vec![0u32; total as usize];
        emit(&mut |u, v| {
            targets[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
        });
        for v in 0..n {
            let (a, b) = (offsets[v] as usize, offsets[v + 1] as usize);
            targets[a..b].sort_unstable();
        }
        Csr { offsets, targets }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let a = self.offsets[v as usize] as usize;
        let b = self.offsets[v as usize + 1] as usize;
        &self.targets[a..b]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Total stored entries (undirected edges count twice, loops once).
    pub fn entry_count(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    /// (non-loop undirected edge count, loop count)
    pub fn edge_and_loop_counts(&self) -> (u64, u64) {
        let mut loops = 0u64;
        for v in 0..self.n() as u32 {
            if self.has_edge(v, v) {
                loops += 1;
            }
        }
        ((self.entry_count() - loops) / 2, loops)
    }

    /// Undirected edges with u <= v, ascending; includes loops as (v, v).
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v >= u)
                .map(move |v| (u, v))
        })
    }
}

/// Union-find with union by size and path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }

    /// Component membership lists, largest first, ties by smallest member.
    pub fn components(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: std::collections::HashMap<u32, Vec<u32>> = std::collections::HashMap::new();
        for x in 0..n as u32 {
            by_root.entry(self.find(x)).or_default().push(x);
        }
        let mut comps: Vec<Vec<u32>> = by_root.into_values().collect();
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }
}
