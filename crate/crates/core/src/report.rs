//! Sweep outcomes.

use std::fmt;

use serde::Serialize;

use crate::nscode::CodePair;

/// Grid point a sweep failed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    N(u64),
    K(u64),
    Grid { a: u64, b: u64, q: u64 },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::N(n) => write!(f, "n={n}"),
            Location::K(k) => write!(f, "k={k}"),
            Location::Grid { a, b, q } => write!(f, "a={a},b={b},q={q}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub at: Location,
    pub clause: String,
    /// Canonical text of the offending polynomial or monomial, if any.
    pub polynomial: Option<String>,
    pub dominant_pair: Option<CodePair>,
    pub expected_pair: Option<CodePair>,
}

impl Counterexample {
    pub fn new(at: Location, clause: impl Into<String>) -> Self {
        Counterexample {
            at,
            clause: clause.into(),
            polynomial: None,
            dominant_pair: None,
            expected_pair: None,
        }
    }

    pub fn polynomial(mut self, p: impl fmt::Display) -> Self {
        self.polynomial = Some(p.to_string());
        self
    }

    pub fn pairs(mut self, dominant: Option<CodePair>, expected: Option<CodePair>) -> Self {
        self.dominant_pair = dominant;
        self.expected_pair = expected;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub range: String,
    /// Grid points examined; on failure this counts up to and including the
    /// counterexample.
    pub checked: u64,
    pub failure: Option<Counterexample>,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, range: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            range: range.into(),
            checked: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Appends the outcome of the next block of the grid. Once a failure is
    /// recorded later blocks are ignored.
    pub fn absorb(&mut self, checked: u64, failure: Option<Counterexample>) {
        if self.failure.is_some() {
            return;
        }
        self.checked += checked;
        self.failure = failure;
    }

    /// Runs `f` over `0..len` in order, stopping at the first counterexample.
    /// The result does not depend on how many worker threads are available.
    pub(crate) fn sweep<F>(&mut self, len: usize, f: F)
    where
        F: Fn(usize) -> Option<Counterexample> + Sync + Send,
    {
        if self.failure.is_some() {
            return;
        }
        match first_failure(len, f) {
            Some((i, c)) => self.absorb(i as u64 + 1, Some(c)),
            None => self.absorb(len as u64, None),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "{} [{}]: pass ({} checked)",
                self.check, self.range, self.checked
            ),
            Some(c) => write!(
                f,
                "{} [{}]: FAIL at {} ({})",
                self.check, self.range, c.at, c.clause
            ),
        }
    }
}

#[cfg(feature = "parallel")]
fn first_failure<F>(len: usize, f: F) -> Option<(usize, Counterexample)>
where
    F: Fn(usize) -> Option<Counterexample> + Sync + Send,
{
    use rayon::prelude::*;
    (0..len)
        .into_par_iter()
        .find_map_first(|i| f(i).map(|c| (i, c)))
}

#[cfg(not(feature = "parallel"))]
fn first_failure<F>(len: usize, f: F) -> Option<(usize, Counterexample)>
where
    F: Fn(usize) -> Option<Counterexample>,
{
    (0..len).find_map(|i| f(i).map(|c| (i, c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_reports_earliest_failure() {
        let mut r = VerificationReport::new("t", "0..1000");
        r.sweep(1000, |i| {
            (i % 97 == 96).then(|| Counterexample::new(Location::N(i as u64), "x"))
        });
        assert_eq!(r.checked, 97);
        assert_eq!(r.failure.unwrap().at, Location::N(96));
    }

    #[test]
    fn absorb_stops_after_failure() {
        let mut r = VerificationReport::new("t", "r");
        r.absorb(10, None);
        r.absorb(3, Some(Counterexample::new(Location::K(5), "c")));
        r.absorb(10, None);
        assert_eq!(r.checked, 13);
        assert!(!r.passed());
    }
}
