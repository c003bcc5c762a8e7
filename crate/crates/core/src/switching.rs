//! Forbidden configurations in negative graphs and greedy switching to
//! bounded degree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lines::Alpha;

/// One sign per line; `-1` means the unit vector is negated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignAssignment {
    signs: Vec<i8>,
}

impl SignAssignment {
    pub fn identity(n: usize) -> Self {
        SignAssignment { signs: vec![1; n] }
    }

    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument(format!("sign {bad} is not ±1")));
        }
        Ok(SignAssignment { signs })
    }

    pub fn from_set(n: usize, set: &[usize]) -> Result<Self> {
        let mut signs = vec![1; n];
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            signs[v] = -1;
        }
        Ok(SignAssignment { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn flip(&mut self, v: usize) {
        self.signs[v] = -self.signs[v];
    }

    /// Vertices with sign `-1`, ascending.
    pub fn negated(&self) -> Vec<usize> {
        (0..self.signs.len()).filter(|&v| self.signs[v] < 0).collect()
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        if g.n() != self.len() {
            return Err(Error::InvalidArgument(format!("{} signs for {} vertices", self.len(), g.n())));
        }
        g.switch_set(&self.negated())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub ok: bool,
    /// `1 + 1/α`.
    pub bound: f64,
    pub max_clique: usize,
    pub witness: Option<Vec<usize>>,
}

/// Largest clique containing each vertex, searched inside its closed
/// neighbourhood with Bron–Kerbosch (pivoting).
pub fn clique_bound_check(g: &Graph, alpha: &Alpha) -> CliqueReport {
    let bound = 1.0 + 1.0 / alpha.value();
    let mut best: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) < best.len() {
            continue;
        }
        // only later neighbours: every clique is found from its least vertex
        let p: Vec<usize> = g.neighbors(v).filter(|&w| w > v).collect();
        let mut r = vec![v];
        bron_kerbosch(g, &mut r, p, Vec::new(), &mut best);
    }
    let size = best.len();
    let ok = (size as f64) <= bound + 1e-9;
    CliqueReport { ok, bound, max_clique: size, witness: (!ok).then_some(best) }
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, best: &mut Vec<usize>) {
    if p.is_empty() {
        if x.is_empty() && r.len() > best.len() {
            *best = r.clone();
            best.sort_unstable();
        }
        return;
    }
    if r.len() + p.len() <= best.len() {
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&w| g.has_edge(u, w)).count()).unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|&w| !g.has_edge(pivot, w)).collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, best);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// A vertex complete to `a` and anticomplete to `b`, with no edges
/// between `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTwo {
    pub u: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Exhaustive over `t`-subsets of each neighbourhood when `t ≤ 3` and
/// `n ≤ 60`; otherwise `A` is grown greedily, so a miss is not a proof of
/// absence.
pub fn type2_search(g: &Graph, t: usize) -> Result<Option<TypeTwo>> {
    type2_search_with(g, t, t <= 3 && g.n() <= 60)
}

fn type2_search_with(g: &Graph, t: usize, exact: bool) -> Result<Option<TypeTwo>> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be at least 1".into()));
    }
    for u in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(u).collect();
        if nbrs.len() < t {
            continue;
        }
        let found = if exact {
            subsets(&nbrs, t).into_iter().find_map(|a| complete_b(g, u, a, t))
        } else {
            complete_b(g, u, greedy_a(g, u, &nbrs, t), t)
        };
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Non-neighbours of `u` outside `N(a)`; succeeds with the first `t`.
fn complete_b(g: &Graph, u: usize, a: Vec<usize>, t: usize) -> Option<TypeTwo> {
    let b: Vec<usize> =
        (0..g.n()).filter(|&w| w != u && !g.has_edge(u, w) && a.iter().all(|&x| !g.has_edge(x, w))).take(t).collect();
    (b.len() == t).then_some(TypeTwo { u, a, b })
}

/// Neighbours of `u` chosen to cover as few non-neighbours of `u` as possible.
fn greedy_a(g: &Graph, u: usize, nbrs: &[usize], t: usize) -> Vec<usize> {
    let outside: Vec<usize> = (0..g.n()).filter(|&w| w != u && !g.has_edge(u, w)).collect();
    let mut covered = vec![false; g.n()];
    let mut a: Vec<usize> = Vec::with_capacity(t);
    while a.len() < t {
        let next = nbrs
            .iter()
            .copied()
            .filter(|x| !a.contains(x))
            .min_by_key(|&x| outside.iter().filter(|&&w| !covered[w] && g.has_edge(x, w)).count())
            .expect("enough neighbours");
        for &w in &outside {
            if g.has_edge(next, w) {
                covered[w] = true;
            }
        }
        a.push(next);
    }
    a.sort_unstable();
    a
}

fn subsets(items: &[usize], t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        for mut rest in subsets(&items[i + 1..], t - 1) {
            rest.insert(0, items[i]);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SwitchResult {
    pub signs: SignAssignment,
    pub switched: Graph,
    pub independent_set: Vec<usize>,
    pub max_degree_before: usize,
    pub max_degree_after: usize,
}

/// Greedy maximal independent set `S` (least index first); every `u ∉ S`
/// with more neighbours than non-neighbours in `S` is negated. A greedy `S`
/// can straddle two switching classes, so a final pass negates any vertex
/// of degree above `(n − 1)/2` until none is left; each such flip lowers the
/// edge count, so the pass terminates.
pub fn greedy_switch_bounded(g: &Graph, _alpha: &Alpha) -> SwitchResult {
    let n = g.n();
    let mut in_s = vec![false; n];
    let mut blocked = vec![false; n];
    for v in 0..n {
        if !blocked[v] {
            in_s[v] = true;
            blocked[v] = true;
            for w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    let independent_set: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
    let mut signs = SignAssignment::identity(n);
    for u in (0..n).filter(|&u| !in_s[u]) {
        let inside = g.neighbors(u).filter(|&w| in_s[w]).count();
        if inside > independent_set.len() - inside {
            signs.flip(u);
        }
    }
    let mut h = signs.apply(g).expect("sizes match");
    loop {
        let heavy = (0..n).find(|&v| 2 * h.degree(v) > n - 1);
        match heavy {
            Some(v) => {
                signs.flip(v);
                h = h.switch_set(&[v]).expect("vertex in range");
            }
            None => break,
        }
    }
    SwitchResult {
        max_degree_before: g.max_degree(),
        max_degree_after: h.max_degree(),
        signs,
        switched: h,
        independent_set,
    }
}
