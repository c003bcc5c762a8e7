use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Random connected graph on `n` vertices with maximum degree at most
/// `max_degree`: a random tree grown one vertex at a time, then up to
/// `extra` random chords that respect the degree cap.
pub fn random_connected<R: Rng + ?Sized>(n: usize, max_degree: usize, extra: usize, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::TooSmall { needed: 1, got: 0 });
    }
    if n > 2 && max_degree < 2 {
        return Err(Error::InvalidArgument("a connected graph on 3+ vertices needs degree 2".into()));
    }
    let mut g = Graph::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let open: Vec<usize> = order[..i].iter().copied().filter(|&u| g.degree(u) < max_degree).collect();
        // a tree always has a leaf with spare degree when max_degree >= 2
        let u = *open.choose(rng).expect("spare degree");
        g.add_edge(u, order[i]);
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < max_degree && g.degree(v) < max_degree {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 3, 10, 60] {
            for d in [2, 3, 6] {
                let g = random_connected(n, d, n, &mut rng).unwrap();
                assert!(g.is_connected());
                assert!(g.max_degree() <= d);
                assert_eq!(g.n(), n);
            }
        }
        let a = random_connected(30, 4, 20, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = random_connected(30, 4, 20, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(random_connected(0, 3, 0, &mut rng).is_err());
        assert!(random_connected(5, 1, 0, &mut rng).is_err());
    }
}
