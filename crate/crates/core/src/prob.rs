//! Probability vectors, channels, joint distributions, and the validated
//! order parameter.
//!
//! All values are immutable after construction, so they can be shared
//! freely across threads; every operation in the crate is a pure function
//! of its inputs.

use crate::error::{Error, Result};

/// Largest tolerated deviation of a raw probability vector from sum one.
/// Anything within this slack is silently renormalized; anything beyond it
/// is rejected as malformed data rather than rounding noise.
pub const NORMALIZATION_SLACK: f64 = 1e-9;

/// Required accuracy of the sum after renormalization.
pub const POST_RENORMALIZATION_SLACK: f64 = 1e-12;

/// Orders closer to 1 than this are rejected; the Shannon-order routines
/// cover that case without the exponent blow-up.
pub const MIN_ALPHA_GAP: f64 = 1e-6;

fn validate_and_renormalize(probs: &mut [f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    for (index, &value) in probs.iter().enumerate() {
        if value.is_nan() || value < 0.0 {
            return Err(Error::NegativeProbability { index, value });
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_SLACK {
        return Err(Error::NotNormalized {
            sum,
            slack: NORMALIZATION_SLACK,
        });
    }
    // leave bit patterns alone when the sum is already good; parsing a
    // file the crate wrote must not perturb it
    if (sum - 1.0).abs() > POST_RENORMALIZATION_SLACK {
        for value in probs.iter_mut() {
            *value /= sum;
        }
        let renormalized: f64 = probs.iter().sum();
        debug_assert!((renormalized - 1.0).abs() <= POST_RENORMALIZATION_SLACK);
    }
    Ok(())
}

/// A probability vector on a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates non-negativity and renormalizes a sum within
    /// [`NORMALIZATION_SLACK`] of one.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        validate_and_renormalize(&mut probs)?;
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "alphabet must be non-empty");
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        assert!(at < n, "point mass index out of range");
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Self { probs }
    }

    /// Builds from non-negative weights that need not sum to one.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (index, &value) in weights.iter().enumerate() {
            if value.is_nan() || value < 0.0 {
                return Err(Error::NegativeProbability { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::NotNormalized {
                sum,
                slack: NORMALIZATION_SLACK,
            });
        }
        let probs = weights.into_iter().map(|w| w / sum).collect();
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false; empty alphabets are rejected at construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    /// Largest absolute coordinate difference.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A row-stochastic matrix: entry `(x, y)` is the probability of output
/// `y` given input `x`.
///
/// The same type carries reverse channels, in which case the rows are
/// indexed by the output alphabet and range over inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    entries: Vec<f64>,
    x_size: usize,
    y_size: usize,
}

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let y_size = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != y_size {
                return Err(Error::RaggedRows {
                    row,
                    expected: y_size,
                    got: r.len(),
                });
            }
        }
        let x_size = rows.len();
        let mut entries = Vec::with_capacity(x_size * y_size);
        for r in rows {
            entries.extend(r);
        }
        for x in 0..x_size {
            validate_and_renormalize(&mut entries[x * y_size..(x + 1) * y_size])?;
        }
        Ok(Self {
            entries,
            x_size,
            y_size,
        })
    }

    /// Builds from row-major entries.
    pub fn from_flat(x_size: usize, y_size: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != x_size * y_size {
            return Err(Error::LengthMismatch(entries.len(), x_size * y_size));
        }
        let mut rows = Vec::with_capacity(x_size);
        for x in 0..x_size {
            rows.push(entries[x * y_size..(x + 1) * y_size].to_vec());
        }
        Self::new(rows)
    }

    /// Every row uniform over the output alphabet.
    pub fn uniform(x_size: usize, y_size: usize) -> Self {
        assert!(x_size > 0 && y_size > 0);
        Self {
            entries: vec![1.0 / y_size as f64; x_size * y_size],
            x_size,
            y_size,
        }
    }

    pub fn from_rows(rows: Vec<Distribution>) -> Result<Self> {
        Self::new(rows.into_iter().map(|d| d.probs).collect())
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.y_size + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.entries[x * self.y_size..(x + 1) * self.y_size]
    }

    pub fn row_distribution(&self, x: usize) -> Distribution {
        Distribution {
            probs: self.row(x).to_vec(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.y_size)
    }

    /// Largest absolute entry difference.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A probability matrix on the product alphabet X × Y.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    entries: Vec<f64>,
    x_size: usize,
    y_size: usize,
}

impl JointDistribution {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let y_size = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != y_size {
                return Err(Error::RaggedRows {
                    row,
                    expected: y_size,
                    got: r.len(),
                });
            }
        }
        let x_size = rows.len();
        let mut entries = Vec::with_capacity(x_size * y_size);
        for r in rows {
            entries.extend(r);
        }
        validate_and_renormalize(&mut entries)?;
        Ok(Self {
            entries,
            x_size,
            y_size,
        })
    }

    pub fn from_flat(x_size: usize, y_size: usize, mut entries: Vec<f64>) -> Result<Self> {
        if entries.len() != x_size * y_size {
            return Err(Error::LengthMismatch(entries.len(), x_size * y_size));
        }
        validate_and_renormalize(&mut entries)?;
        Ok(Self {
            entries,
            x_size,
            y_size,
        })
    }

    /// The product joint p(x)·p(y|x).
    pub fn from_input_and_channel(input: &Distribution, channel: &Channel) -> Result<Self> {
        if input.len() != channel.x_size() {
            return Err(Error::LengthMismatch(input.len(), channel.x_size()));
        }
        let mut entries = Vec::with_capacity(channel.x_size() * channel.y_size());
        for x in 0..channel.x_size() {
            let px = input.get(x);
            for y in 0..channel.y_size() {
                entries.push(px * channel.get(x, y));
            }
        }
        Ok(Self {
            entries,
            x_size: channel.x_size(),
            y_size: channel.y_size(),
        })
    }

    pub fn uniform(x_size: usize, y_size: usize) -> Self {
        assert!(x_size > 0 && y_size > 0);
        Self {
            entries: vec![1.0 / (x_size * y_size) as f64; x_size * y_size],
            x_size,
            y_size,
        }
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.y_size + y]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn marginal_x(&self) -> Distribution {
        let mut probs = vec![0.0; self.x_size];
        for (x, p) in probs.iter_mut().enumerate() {
            *p = self.entries[x * self.y_size..(x + 1) * self.y_size]
                .iter()
                .sum();
        }
        Distribution { probs }
    }

    pub fn marginal_y(&self) -> Distribution {
        let mut probs = vec![0.0; self.y_size];
        for x in 0..self.x_size {
            for (y, p) in probs.iter_mut().enumerate() {
                *p += self.get(x, y);
            }
        }
        Distribution { probs }
    }

    /// The reverse channel q(x|y), rows indexed by `y` over the input
    /// alphabet.
    ///
    /// Outputs with zero marginal mass have no defined posterior; those
    /// rows fall back to uniform and their indices are reported so callers
    /// can tell substance from placeholder.
    pub fn posterior(&self) -> (Channel, Vec<usize>) {
        let mut degenerate = Vec::new();
        let mut entries = vec![0.0; self.x_size * self.y_size];
        for y in 0..self.y_size {
            let mass: f64 = (0..self.x_size).map(|x| self.get(x, y)).sum();
            if mass > 0.0 {
                for x in 0..self.x_size {
                    entries[y * self.x_size + x] = self.get(x, y) / mass;
                }
            } else {
                degenerate.push(y);
                for x in 0..self.x_size {
                    entries[y * self.x_size + x] = 1.0 / self.x_size as f64;
                }
            }
        }
        (
            Channel {
                entries,
                x_size: self.y_size,
                y_size: self.x_size,
            },
            degenerate,
        )
    }

    /// The conditional q(y|x), recovering the factorization through the x
    /// marginal. Rows with zero marginal mass fall back to uniform and are
    /// reported.
    pub fn conditional_y_given_x(&self) -> (Channel, Vec<usize>) {
        let mut degenerate = Vec::new();
        let mut entries = vec![0.0; self.x_size * self.y_size];
        for x in 0..self.x_size {
            let mass: f64 = self.entries[x * self.y_size..(x + 1) * self.y_size]
                .iter()
                .sum();
            if mass > 0.0 {
                for y in 0..self.y_size {
                    entries[x * self.y_size + y] = self.get(x, y) / mass;
                }
            } else {
                degenerate.push(x);
                for y in 0..self.y_size {
                    entries[x * self.y_size + y] = 1.0 / self.y_size as f64;
                }
            }
        }
        (
            Channel {
                entries,
                x_size: self.x_size,
                y_size: self.y_size,
            },
            degenerate,
        )
    }

    /// Largest absolute entry difference.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A validated Rényi order α ∈ (0,1) ∪ (1,∞), with the exponents the
/// solvers keep reaching for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    alpha: f64,
    alpha_over_alpha_minus_one: f64,
    alpha_over_one_minus_alpha: f64,
    one_minus_inv_alpha: f64,
}

impl AlphaParam {
    /// Rejects non-positive or non-finite orders, and anything within
    /// [`MIN_ALPHA_GAP`] of 1.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        if (alpha - 1.0).abs() < MIN_ALPHA_GAP {
            return Err(Error::AlphaNearOne(alpha));
        }
        Ok(Self {
            alpha,
            alpha_over_alpha_minus_one: alpha / (alpha - 1.0),
            alpha_over_one_minus_alpha: alpha / (1.0 - alpha),
            one_minus_inv_alpha: 1.0 - 1.0 / alpha,
        })
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    pub fn is_above_one(&self) -> bool {
        self.alpha > 1.0
    }

    /// α/(α−1)
    pub fn alpha_over_alpha_minus_one(&self) -> f64 {
        self.alpha_over_alpha_minus_one
    }

    /// α/(1−α)
    pub fn alpha_over_one_minus_alpha(&self) -> f64 {
        self.alpha_over_one_minus_alpha
    }

    /// 1 − 1/α
    pub fn one_minus_inv_alpha(&self) -> f64 {
        self.one_minus_inv_alpha
    }

    /// ρ = 1/α − 1, the exponent-function argument matching this order.
    pub fn rho(&self) -> f64 {
        1.0 / self.alpha - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_renormalizes_small_drift() {
        let d = Distribution::new(vec![0.5 + 3e-10, 0.5]).unwrap();
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() <= POST_RENORMALIZATION_SLACK);
    }

    #[test]
    fn distribution_rejects_large_drift() {
        assert!(matches!(
            Distribution::new(vec![0.5, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn distribution_rejects_negative_entries() {
        assert!(matches!(
            Distribution::new(vec![1.2, -0.2]),
            Err(Error::NegativeProbability { index: 1, .. })
        ));
    }

    #[test]
    fn channel_validates_each_row() {
        let ch = Channel::new(vec![vec![0.9, 0.1], vec![0.3, 0.7]]).unwrap();
        assert_eq!(ch.x_size(), 2);
        assert_eq!(ch.y_size(), 2);
        assert!(Channel::new(vec![vec![0.9, 0.2], vec![0.3, 0.7]]).is_err());
        assert!(matches!(
            Channel::new(vec![vec![0.9, 0.1], vec![1.0]]),
            Err(Error::RaggedRows { row: 1, .. })
        ));
    }

    #[test]
    fn joint_round_trips_marginal_x() {
        let p = Distribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let ch = Channel::new(vec![
            vec![0.1, 0.9],
            vec![0.4, 0.6],
            vec![0.8, 0.2],
        ])
        .unwrap();
        let j = JointDistribution::from_input_and_channel(&p, &ch).unwrap();
        assert!(j.marginal_x().sup_distance(&p) <= 1e-12);
    }

    #[test]
    fn posterior_of_identity_channel_is_identity() {
        let p = Distribution::uniform(3);
        let ch = Channel::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let j = JointDistribution::from_input_and_channel(&p, &ch).unwrap();
        let (rev, degenerate) = j.posterior();
        assert!(degenerate.is_empty());
        for y in 0..3 {
            for x in 0..3 {
                let expect = if x == y { 1.0 } else { 0.0 };
                assert!((rev.get(y, x) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn posterior_flags_dead_outputs() {
        let p = Distribution::new(vec![1.0, 0.0]).unwrap();
        let ch = Channel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let j = JointDistribution::from_input_and_channel(&p, &ch).unwrap();
        let (rev, degenerate) = j.posterior();
        assert_eq!(degenerate, vec![1]);
        assert!((rev.get(1, 0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn alpha_param_guards() {
        assert!(AlphaParam::new(2.0).is_ok());
        assert!(AlphaParam::new(0.5).is_ok());
        assert!(matches!(AlphaParam::new(0.0), Err(Error::InvalidAlpha(_))));
        assert!(matches!(AlphaParam::new(-1.0), Err(Error::InvalidAlpha(_))));
        assert!(matches!(
            AlphaParam::new(f64::NAN),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(matches!(
            AlphaParam::new(f64::INFINITY),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(matches!(
            AlphaParam::new(1.0 + 1e-7),
            Err(Error::AlphaNearOne(_))
        ));
        assert!(matches!(AlphaParam::new(1.0), Err(Error::AlphaNearOne(_))));
    }

    #[test]
    fn alpha_param_exponents() {
        let a = AlphaParam::new(2.0).unwrap();
        assert_eq!(a.alpha_over_alpha_minus_one(), 2.0);
        assert_eq!(a.alpha_over_one_minus_alpha(), -2.0);
        assert_eq!(a.one_minus_inv_alpha(), 0.5);
        assert_eq!(a.rho(), -0.5);
    }
}
