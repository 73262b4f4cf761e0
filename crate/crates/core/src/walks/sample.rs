use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::graph::DecoratedGraph;
use crate::matgroup::IntMatrix;

/// Random walk visiting `length` vertices: uniform start, then each step to
/// a neighbour with probability proportional to edge multiplicity. Returns
/// the exact product `t_{i_N} ... t_{i_1}` and the visited vertices.
pub fn sample_walk<R: Rng + ?Sized>(
    graph: &DecoratedGraph,
    length: usize,
    rng: &mut R,
) -> (IntMatrix, Vec<usize>) {
    let n = graph.vertex_count();
    let mut v = rng.gen_range(0..n);
    let mut path = vec![v];
    let mut prod = graph.decoration(v).clone();
    for _ in 1..length {
        let deg = graph.degree(v);
        assert!(deg > 0, "vertex {v} is isolated");
        let mut pick = rng.gen_range(0..deg);
        for (w, mult) in graph.neighbors(v) {
            if pick < mult as u64 {
                v = w;
                break;
            }
            pick -= mult as u64;
        }
        path.push(v);
        prod = graph.decoration(v).mul(&prod);
    }
    (prod, path)
}

pub fn sample_word<R: Rng + ?Sized>(graph: &DecoratedGraph, length: usize, rng: &mut R) -> IntMatrix {
    sample_walk(graph, length, rng).0
}

/// Generator for sample `index` of a run seeded with `seed`; independent of
/// how samples are scheduled.
pub fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
