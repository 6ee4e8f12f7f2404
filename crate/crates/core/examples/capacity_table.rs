//! Print the capacity of the bundled 3×3 channel for a few orders, as
//! computed by each algorithm, with iteration counts.
//!
//! Run: cargo run --release --example capacity_table

use ainfo_core::{run_capacity, AOConfig, AlgorithmId, AlphaParam, Initialization};

fn main() {
    let channel = ainfo_core::example_channel_3x3();
    let cfg = AOConfig {
        initialization: Initialization::UniformJoint,
        ..AOConfig::default()
    };
    println!(
        "{:<8} {:>14} {:>14} {:>14} {:>14}",
        "alpha", "s1", "jo", "c", "lp"
    );
    for alpha in [1.03, 1.5, 2.0, 5.0] {
        let order = AlphaParam::new(alpha).unwrap();
        let mut cells = Vec::new();
        for algo in [AlgorithmId::S1, AlgorithmId::Jo, AlgorithmId::C, AlgorithmId::Lp] {
            let r = run_capacity(algo, order, &channel, &cfg).unwrap();
            cells.push(format!("{:.7}/{}", r.value, r.iterations));
        }
        println!(
            "{:<8} {:>14} {:>14} {:>14} {:>14}",
            alpha, cells[0], cells[1], cells[2], cells[3]
        );
    }
}
