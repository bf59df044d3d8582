//! Decompose binary symplectic matrices into Clifford circuits and check
//! the round trip. Any element of Sp(2n, F2) reduces to H, S, CNOT, CZ and
//! SWAP; random matrices exercise every branch of the reduction.
//!
//!     cargo run --example decompose

use hgpsynth::symplectic::random_symplectic;
use hgpsynth::synth::synth_from_f;
use hgpsynth::verify::circuit_to_symplectic;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n = 5;

    let mut gate_counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut total = 0usize;
    let trials = 50;
    for _ in 0..trials {
        let f = random_symplectic(n, &mut rng);
        let c = synth_from_f(&f);
        let (back, _) = circuit_to_symplectic(&c);
        assert_eq!(back.f, f.f, "decomposition must reproduce its input");
        total += c.len();
        for g in &c.gates {
            *gate_counts.entry(g.kind_name()).or_default() += 1;
        }
    }

    println!("{trials} random symplectics on {n} qubits, all round-tripped exactly");
    println!("mean circuit length {:.1}", total as f64 / trials as f64);
    println!("gate mix:");
    for (kind, count) in gate_counts {
        println!("  {kind:<5} {count}");
    }
}
