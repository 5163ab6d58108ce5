//! Benchmarks for the shadowmin solvers; see `benches/`.

use shadowmin::generate::{curl_chain, necklace};
use shadowmin::Shadow;

pub fn chain(m: usize) -> Shadow {
    curl_chain(m).expect("curl chains always generate")
}

pub fn ring(m: usize) -> Shadow {
    necklace(m).expect("odd necklaces always generate")
}
