#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shadowmin::embed::circle_record;
use shadowmin::format::ShadowFile;
use shadowmin::generate::{curl, curl_chain, figure_eight, necklace, tree_like_random, AttachmentSpec};
use shadowmin::{generate, validate_shadow, GeneratorKind, GeneratorSpec, Shadow, Side};

pub fn circle() -> Shadow {
    validate_shadow(&circle_record(Side::Right)).unwrap()
}

pub fn fig8() -> Shadow {
    figure_eight()
}

pub fn curl1() -> Shadow {
    curl()
}

pub fn trefoil() -> Shadow {
    necklace(3).unwrap()
}

pub fn chain(m: usize) -> Shadow {
    curl_chain(m).unwrap()
}

pub fn gen(kind: GeneratorKind, seed: u64) -> Shadow {
    validate_shadow(&generate(&GeneratorSpec::new(kind, seed)).unwrap()).unwrap()
}

pub fn tree(n: usize, seed: u64) -> Shadow {
    tree_like_random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

pub fn decorated_necklace(m: usize, trees: Vec<usize>, curls: usize, seed: u64) -> Shadow {
    gen(
        GeneratorKind::Necklace {
            m,
            attach: AttachmentSpec { curls, trees, necklaces: vec![] },
        },
        seed,
    )
}

/// Renames ids through the given permutations (new = perm[old]).
pub fn permute(f: &ShadowFile, arcs: &[u32], vertices: &[u32], polygons: &[u32]) -> ShadowFile {
    let mut g = f.clone();
    for a in &mut g.arcs {
        a.id = arcs[a.id as usize];
        a.polygon = polygons[a.polygon as usize];
    }
    g.arcs.sort_by_key(|a| a.id);
    for v in &mut g.vertices {
        v.id = vertices[v.id as usize];
        for e in &mut v.rotation {
            e.0 = arcs[e.0 as usize];
        }
        for t in &mut v.transitions {
            *t = (arcs[t.0 as usize], arcs[t.1 as usize]);
        }
    }
    g.vertices.sort_by_key(|v| v.id);
    for p in &mut g.polygons {
        p.id = polygons[p.id as usize];
        for s in &mut p.sides {
            *s = arcs[*s as usize];
        }
        for c in &mut p.corners {
            c.vertex = vertices[c.vertex as usize];
            c.neighbor = polygons[c.neighbor as usize];
        }
    }
    g.polygons.sort_by_key(|p| p.id);
    for a in &mut g.traversal {
        *a = arcs[*a as usize];
    }
    g.outer.arc = arcs[g.outer.arc as usize];
    if let Some(e) = &mut g.embedding {
        e.domain_side = e.domain_side.iter().map(|(&a, &s)| (arcs[a as usize], s)).collect();
    }
    g
}

pub fn reversed(n: usize) -> Vec<u32> {
    (0..n as u32).rev().collect()
}

/// Random tree-like shadow with 1..=max_n double points.
pub fn tree_like(max_n: usize) -> impl Strategy<Value = Shadow> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| tree(n, seed))
}

/// Random decorated necklace.
pub fn necklace_like() -> impl Strategy<Value = Shadow> {
    (
        prop::sample::select(vec![3usize, 5, 7]),
        prop::collection::vec(1usize..=3, 0..3),
        0usize..3,
        any::<u64>(),
    )
        .prop_map(|(m, trees, curls, seed)| decorated_necklace(m, trees, curls, seed))
}

pub fn any_shadow() -> impl Strategy<Value = Shadow> {
    prop_oneof![tree_like(10), necklace_like()]
}
