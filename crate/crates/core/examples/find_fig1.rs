//! Seeded search for an arrangement on which some class
//! `{Q : Q_e = -R_e, Sep(P,Q) ∩ Sep(Q,R) = S}` has two or more maximal
//! elements in `𝒯_R`.
//!
//! Usage: `cargo run --example find_fig1 -- [dimension] [tries]`

use omvar::fixtures::random_arrangement;
use omvar::topology::{crucial_class, crucial_sums};
use omvar::{ElemSet, OrientedMatroid, SignVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Hit {
    r: SignVector,
    e: usize,
    p: SignVector,
    s: ElemSet,
    maximal: Vec<SignVector>,
}

fn search(m: &OrientedMatroid) -> Option<Hit> {
    let n = m.num_elements();
    for r in m.topes() {
        for e in 0..n {
            for p in m.topes().iter().filter(|p| p.get(e) == -r.get(e)) {
                let sums = crucial_sums(m, r, e, p).unwrap();
                for &s in sums.keys() {
                    let class = crucial_class(m, r, e, p, s).unwrap();
                    let maximal = class.maximal();
                    if maximal.len() >= 2 {
                        return Some(Hit { r: *r, e, p: *p, s, maximal });
                    }
                }
            }
        }
    }
    None
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let dimension: usize = args.get(1).map_or(3, |a| a.parse().unwrap());
    let tries: usize = args.get(2).map_or(2000, |a| a.parse().unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..tries {
        let len = 4 + i % 4;
        let arr = random_arrangement(&mut rng, dimension, len, 3);
        let Ok(m) = arr.oriented_matroid() else { continue };
        if m.rank() != dimension {
            continue;
        }
        if let Some(hit) = search(&m) {
            eprintln!(
                "try {i}: |E| = {len}, rank {}, R = {}, e = {}, P = {}, S = {:?}, maximal = {:?}",
                m.rank(),
                hit.r,
                hit.e,
                hit.p,
                hit.s.to_vec(),
                hit.maximal.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            );
            println!("{}", arr.to_json());
            return;
        }
    }
    eprintln!("no example in {tries} tries at dimension {dimension}");
    std::process::exit(1);
}
