//! The bundled example channel.

use crate::prob::Channel;

/// The 3×3 channel shipped with the command-line tool as
/// `data/channel3x3.json`, used throughout the test suite and the
/// benchmarks.
pub fn example_channel_3x3() -> Channel {
    Channel::new(vec![
        vec![0.259, 0.463, 0.278],
        vec![0.328, 0.172, 0.500],
        vec![0.425, 0.225, 0.350],
    ])
    .expect("bundled channel is row-stochastic")
}
