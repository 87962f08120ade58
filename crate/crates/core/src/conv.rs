//! A single-filter 1D CNN front end: stride-sigma convolution over the
//! one-hot encoded sequence, followed by sliding max-pooling.
//!
//! [`equivalence_check`] runs both this pipeline and Gaussian-max minimizer
//! selection on the same input and compares them window by window. Scores
//! are compared by bit pattern, not within a tolerance.

use std::cmp::Ordering;

use crate::alphabet::Sequence;
use crate::error::{Error, Result};
use crate::hashing::{ordered_dot, GaussianFilter, KmerOrdering, Score};
use crate::minimizer::{select_minimizers, TiePolicy};

/// Convolution output; `None` where the k-mer overlaps a gap.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvOutput {
    pub scores: Vec<Option<f64>>,
}

/// One pooled window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pooled {
    pub start: usize,
    pub value: f64,
    pub argmax: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoolOutput {
    pub windows: Vec<Pooled>,
}

impl PoolOutput {
    pub fn maxima(&self) -> Vec<f64> {
        self.windows.iter().map(|p| p.value).collect()
    }

    pub fn argmax(&self) -> Vec<usize> {
        self.windows.iter().map(|p| p.argmax).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pooling {
    Max,
    Min,
}

/// One-hot encodes the whole of `seq` (gaps become all-zero blocks) and
/// slides the filter over it with stride `sigma`.
pub fn conv_layer(seq: &Sequence, filter: &GaussianFilter, k: usize) -> Result<ConvOutput> {
    let sigma = seq.sigma();
    if k == 0 || filter.dim() != sigma * k {
        return Err(Error::DimensionMismatch {
            expected: filter.dim(),
            actual: sigma * k,
        });
    }
    let mut encoded = vec![false; sigma * seq.len()];
    for (i, c) in seq.iter().enumerate() {
        if let Some(c) = c {
            encoded[sigma * i + c as usize] = true;
        }
    }
    let valid = seq.valid_kmer_mask(k);
    let scores = valid
        .iter()
        .enumerate()
        .map(|(i, &ok)| {
            ok.then(|| {
                let patch = &encoded[sigma * i..sigma * (i + k)];
                ordered_dot(filter.weights(), patch.iter().copied())
            })
        })
        .collect();
    Ok(ConvOutput { scores })
}

pub fn maxpool_layer(c: &ConvOutput, w: usize, stride: usize, ties: TiePolicy) -> Result<PoolOutput> {
    pool_layer(c, w, stride, ties, Pooling::Max)
}

/// Sliding-window pooling. Windows start at `0, stride, 2 * stride, ...`;
/// windows with no valid score are skipped.
pub fn pool_layer(c: &ConvOutput, w: usize, stride: usize, ties: TiePolicy, pooling: Pooling) -> Result<PoolOutput> {
    if w == 0 || stride == 0 {
        return Err(Error::InvalidParameter(format!("pool width {w} and stride {stride} must be >= 1")));
    }
    let n = c.scores.len();
    if n < w {
        return Err(Error::InvalidParameter(format!("{n} scores cannot fill a pooling window of {w}")));
    }
    let wanted = match pooling {
        Pooling::Max => Ordering::Greater,
        Pooling::Min => Ordering::Less,
    };
    let mut windows: Vec<Pooled> = Vec::with_capacity((n - w) / stride + 1);
    for start in (0..=n - w).step_by(stride) {
        let mut best: Option<(usize, f64)> = None;
        for j in start..start + w {
            let Some(v) = c.scores[j] else { continue };
            let replace = match best {
                None => true,
                Some((_, b)) => match v.total_cmp(&b) {
                    o if o == wanted => true,
                    Ordering::Equal => ties != TiePolicy::Leftmost,
                    _ => false,
                },
            };
            if replace {
                best = Some((j, v));
            }
        }
        let Some((mut argmax, value)) = best else { continue };
        if ties == TiePolicy::PreferPrevious {
            if let Some(p) = windows.last() {
                if p.start + stride == start && p.argmax >= start && p.value.total_cmp(&value).is_eq() {
                    argmax = p.argmax;
                }
            }
        }
        windows.push(Pooled { start, value, argmax });
    }
    Ok(PoolOutput { windows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mismatch {
    pub window: usize,
    pub pooled: Option<(f64, usize)>,
    pub minimizer: Option<(f64, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub windows_checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares `maxpool(conv(seq))` at stride 1 against Gaussian-max minimizer
/// selection with the same filter and tie policy.
pub fn equivalence_check(
    seq: &Sequence,
    k: usize,
    w: usize,
    filter: &GaussianFilter,
    ties: TiePolicy,
) -> Result<EquivalenceReport> {
    let pooled = maxpool_layer(&conv_layer(seq, filter, k)?, w, 1, ties)?;
    let selection = select_minimizers(seq, k, w, &KmerOrdering::gaussian(filter.clone()), ties)?;

    let as_pair = |p: &Pooled| (p.value, p.argmax);
    let pick_pair = |p: &crate::minimizer::WindowPick| match p.score {
        Score::Real(v) => (v, p.position),
        Score::Int { .. } => unreachable!("gaussian ordering yields real scores"),
    };

    let mut a = pooled.windows.iter().peekable();
    let mut b = selection.picks().iter().peekable();
    let mut checked = 0;
    loop {
        let (pa, pb) = (a.peek(), b.peek());
        let window = match (pa, pb) {
            (None, None) => break,
            (Some(x), Some(y)) => x.start.min(y.window),
            (Some(x), None) => x.start,
            (None, Some(y)) => y.window,
        };
        let left = pa.filter(|x| x.start == window).map(|x| as_pair(x));
        let right = pb.filter(|y| y.window == window).map(|y| pick_pair(y));
        let same = match (left, right) {
            (Some((v1, p1)), Some((v2, p2))) => v1.to_bits() == v2.to_bits() && p1 == p2,
            _ => false,
        };
        if !same {
            return Ok(EquivalenceReport {
                windows_checked: checked,
                first_mismatch: Some(Mismatch {
                    window,
                    pooled: left,
                    minimizer: right,
                }),
            });
        }
        checked += 1;
        a.next();
        b.next();
    }
    Ok(EquivalenceReport {
        windows_checked: checked,
        first_mismatch: None,
    })
}
