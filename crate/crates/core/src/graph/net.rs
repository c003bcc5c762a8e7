use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A set of vertices such that every vertex of the host graph is within
/// distance `radius` of some member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetCertificate {
    pub radius: usize,
    pub members: Vec<usize>,
}

impl NetCertificate {
    /// Multi-source BFS check that every vertex of `g` is covered.
    pub fn covers(&self, g: &Graph) -> bool {
        let mut dist = vec![usize::MAX; g.n()];
        let mut frontier: Vec<usize> = Vec::new();
        for &m in &self.members {
            if m >= g.n() {
                return false;
            }
            if dist[m] != 0 {
                dist[m] = 0;
                frontier.push(m);
            }
        }
        for step in 1..=self.radius {
            let mut next = Vec::new();
            for &u in &frontier {
                for w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = step;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist.iter().all(|&d| d != usize::MAX)
    }

    pub fn size_bound(n: usize, radius: usize) -> usize {
        n.div_ceil(radius + 1)
    }
}

impl Graph {
    /// r-net rooted at vertex 0.
    pub fn r_net(&self, r: usize) -> Result<NetCertificate> {
        self.r_net_rooted(r, 0)
    }

    /// Spanning-tree pruning: take the deepest surviving vertex, walk `r`
    /// steps towards the root, add that vertex to the net and drop its
    /// subtree. Once every survivor is within depth `r`, add the root.
    ///
    /// Each pruning step removes at least `r + 1` vertices, so the net has
    /// at most `ceil(n / (r + 1))` members.
    pub fn r_net_rooted(&self, r: usize, root: usize) -> Result<NetCertificate> {
        if r == 0 {
            return Err(Error::InvalidArgument("net radius must be ≥ 1".into()));
        }
        if self.n() == 0 {
            return Err(Error::TooSmall { needed: 1, got: 0 });
        }
        self.check_vertex(root)?;
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }

        let parent = self.spanning_tree(root)?;
        let n = self.n();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        let dist = self.distances_from(root);
        let depth: Vec<usize> = dist.iter().map(|d| d.unwrap()).collect();

        let mut alive = vec![true; n];
        let mut members = Vec::new();
        loop {
            // deepest survivor, smallest index on ties
            let mut deepest = root;
            for v in 0..n {
                if alive[v] && depth[v] > depth[deepest] {
                    deepest = v;
                }
            }
            if depth[deepest] <= r {
                members.push(root);
                break;
            }
            let mut u = deepest;
            for _ in 0..r {
                u = parent[u].expect("depth > r implies a parent");
            }
            members.push(u);
            let mut stack = vec![u];
            while let Some(w) = stack.pop() {
                alive[w] = false;
                stack.extend(children[w].iter().copied().filter(|&c| alive[c]));
            }
        }
        members.sort_unstable();
        Ok(NetCertificate { radius: r, members })
    }
}
