use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{MapKind, Reduction};
use crate::error::Result;
use crate::oracles::window_eval;
use crate::relations::{GroupDesc, PointValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Direction {
    /// `x E y` but the images are inequivalent.
    Forward,
    /// The images are equivalent but `x E y` fails.
    Backward,
    /// The bounded window evaluation disagrees with the decision.
    Window,
    /// Mapping or deciding raised an error.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub direction: Direction,
    pub x: PointValue,
    pub y: PointValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub name: String,
    /// Number of unordered pairs of distinct sample points checked.
    pub pairs: usize,
    /// Checked pairs that are equivalent in the source.
    pub equivalent_pairs: usize,
    /// Pairs additionally checked by bounded window evaluation.
    pub window_checks: usize,
    pub failures: Vec<Failure>,
    /// Wall-clock time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn pairs_checked(&self) -> usize {
        self.pairs
    }

    fn of(&self, d: Direction) -> Vec<&Failure> {
        self.failures.iter().filter(|f| f.direction == d).collect()
    }

    pub fn forward_failures(&self) -> Vec<&Failure> {
        self.of(Direction::Forward)
    }

    pub fn backward_failures(&self) -> Vec<&Failure> {
        self.of(Direction::Backward)
    }

    pub fn is_verified(&self) -> bool {
        self.failures.is_empty()
    }

    /// Combine reports of disjoint pair ranges, keeping order.
    pub fn merge(mut self, other: VerifyReport) -> VerifyReport {
        self.pairs += other.pairs;
        self.equivalent_pairs += other.equivalent_pairs;
        self.window_checks += other.window_checks;
        self.failures.extend(other.failures);
        self.elapsed = self.elapsed.max(other.elapsed);
        self
    }
}

/// Verify on the sample for `bound`, spreading pairs over available cores.
pub fn verify_reduction(r: &Reduction, bound: usize) -> Result<VerifyReport> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    verify_reduction_with(r, bound, threads)
}

pub fn verify_reduction_with(r: &Reduction, bound: usize, threads: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    let pts = r.points(bound)?;
    let images: Vec<Result<PointValue>> = pts.iter().map(|x| r.map(x)).collect();
    let mut pairs = Vec::with_capacity(pts.len() * pts.len().saturating_sub(1) / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            pairs.push((i, j));
        }
    }
    let ctx = Ctx {
        r,
        pts: &pts,
        images: &images,
    };
    let threads = threads.clamp(1, 64);
    let chunk = pairs.len().div_ceil(threads).max(1);
    let parts: Vec<VerifyReport> = if threads == 1 {
        vec![ctx.run(&pairs)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = pairs
                .chunks(chunk)
                .map(|c| s.spawn(|| ctx.run(c)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("verification worker panicked"))
                .collect()
        })
    };
    let mut report = parts.into_iter().fold(
        VerifyReport {
            name: r.name.clone(),
            ..VerifyReport::default()
        },
        VerifyReport::merge,
    );
    report.elapsed = start.elapsed();
    Ok(report)
}

struct Ctx<'a> {
    r: &'a Reduction,
    pts: &'a [PointValue],
    images: &'a [Result<PointValue>],
}

impl Ctx<'_> {
    fn run(&self, pairs: &[(usize, usize)]) -> VerifyReport {
        let mut rep = VerifyReport::default();
        for &(i, j) in pairs {
            rep.pairs += 1;
            let (x, y) = (&self.pts[i], &self.pts[j]);
            let fail = |direction, note: Option<String>| Failure {
                direction,
                x: x.clone(),
                y: y.clone(),
                note,
            };
            match self.check(i, j) {
                Ok(outcome) => {
                    if outcome.equivalent {
                        rep.equivalent_pairs += 1;
                    }
                    if outcome.windowed {
                        rep.window_checks += 1;
                    }
                    if let Some(d) = outcome.failure {
                        rep.failures.push(fail(d, None));
                    }
                }
                Err(e) => rep
                    .failures
                    .push(fail(Direction::Error, Some(e.to_string()))),
            }
        }
        rep
    }

    fn check(&self, i: usize, j: usize) -> Result<Outcome> {
        let r = self.r;
        let (x, y) = (&self.pts[i], &self.pts[j]);
        let fx = self.images[i].as_ref().map_err(Clone::clone)?;
        let fy = self.images[j].as_ref().map_err(Clone::clone)?;
        let src = r.source.decide(x, y)?;
        let tgt = r.target.decide(fx, fy)?;
        let mut out = Outcome {
            failure: match (src, tgt) {
                (true, false) => Some(Direction::Forward),
                (false, true) => Some(Direction::Backward),
                _ => None,
            },
            windowed: false,
            equivalent: src,
        };
        let window = match &r.kind {
            MapKind::GammaSquare => Some(GroupDesc::cyclic(2).ball(0)),
            MapKind::AStep(_) if tgt => {
                Some(GroupDesc::Z2FinSupp.ball(flip_span(x).max(flip_span(y))))
            }
            _ => None,
        };
        if let Some(w) = window {
            out.windowed = true;
            if window_eval(&r.target, fx, fy, &w)? != tgt && out.failure.is_none() {
                out.failure = Some(Direction::Window);
            }
        }
        Ok(out)
    }
}

struct Outcome {
    failure: Option<Direction>,
    windowed: bool,
    equivalent: bool,
}

/// Number of leading coordinates a sequence point lists explicitly.
fn flip_span(x: &PointValue) -> usize {
    match x {
        PointValue::SeqDefault { entries, .. } => {
            entries.keys().next_back().map_or(0, |k| *k as usize + 1)
        }
        _ => 0,
    }
}
