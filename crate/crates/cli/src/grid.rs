//! Parameter sweeps written as `start:stop[:lin|log10[:count]]`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Points per grid when the count is omitted.
pub const DEFAULT_COUNT: usize = 11;
/// Upper bound on the number of points in one sweep.
pub const MAX_COUNT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("expected start:stop[:lin|log10[:count]], got {0} field(s)")]
    FieldCount(usize),
    #[error("`{0}` is not a number")]
    Number(String),
    #[error("`{0}` is not a point count")]
    Count(String),
    #[error("unknown spacing `{0}` (use lin or log10)")]
    Spacing(String),
    #[error("grid endpoints must be finite")]
    NonFinite,
    #[error("start must be below stop")]
    Reversed,
    #[error("log10 spacing needs start > 0")]
    NonPositiveLog,
    #[error("count must be in [1, {MAX_COUNT}], got {0}")]
    CountRange(usize),
    #[error("a single-point grid needs start == stop")]
    SinglePoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log10,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub spacing: Spacing,
    pub count: usize,
}

impl GridSpec {
    /// The grid points in increasing order, with both endpoints exact.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        let mut out: Vec<f64> = (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log10 => {
                        let (a, b) = (self.start.log10(), self.stop.log10());
                        10f64.powf(a + t * (b - a))
                    }
                }
            })
            .collect();
        out[0] = self.start;
        out[self.count - 1] = self.stop;
        out
    }
}

fn number(s: &str) -> Result<f64, GridError> {
    s.trim().parse::<f64>().map_err(|_| GridError::Number(s.to_string()))
}

impl FromStr for GridSpec {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split(':').collect();
        if !(2..=4).contains(&fields.len()) {
            return Err(GridError::FieldCount(fields.len()));
        }
        let start = number(fields[0])?;
        let stop = number(fields[1])?;
        let spacing = match fields.get(2).map(|f| f.trim()) {
            None | Some("lin") => Spacing::Linear,
            Some("log10") => Spacing::Log10,
            Some(other) => return Err(GridError::Spacing(other.to_string())),
        };
        let count = match fields.get(3) {
            None => DEFAULT_COUNT,
            Some(c) => c.trim().parse::<usize>().map_err(|_| GridError::Count(c.to_string()))?,
        };
        if !start.is_finite() || !stop.is_finite() {
            return Err(GridError::NonFinite);
        }
        if spacing == Spacing::Log10 && !(start > 0.0) {
            return Err(GridError::NonPositiveLog);
        }
        if count == 0 || count > MAX_COUNT {
            return Err(GridError::CountRange(count));
        }
        if count == 1 && start != stop {
            return Err(GridError::SinglePoint);
        }
        if count > 1 && !(start < stop) {
            return Err(GridError::Reversed);
        }
        Ok(Self {
            start,
            stop,
            spacing,
            count,
        })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Log10 => "log10",
        };
        write!(f, "{}:{}:{}:{}", self.start, self.stop, spacing, self.count)
    }
}

pub fn parse_grid(s: &str) -> Result<GridSpec, GridError> {
    s.parse()
}

/// A closed interval written `lo:hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

pub fn parse_interval(s: &str) -> Result<Interval, GridError> {
    let fields: Vec<&str> = s.split(':').collect();
    if fields.len() != 2 {
        return Err(GridError::FieldCount(fields.len()));
    }
    let (lo, hi) = (number(fields[0])?, number(fields[1])?);
    if !lo.is_finite() || !hi.is_finite() {
        return Err(GridError::NonFinite);
    }
    if !(lo < hi) {
        return Err(GridError::Reversed);
    }
    Ok(Interval { lo, hi })
}
