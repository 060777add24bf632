//! Integer selections written as `a..b` (inclusive), `a`, or comma lists
//! of either.

use std::ops::RangeInclusive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    runs: Vec<RangeInclusive<u64>>,
}

impl Selection {
    /// The selected values in increasing order, without repeats.
    pub fn values(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.runs.iter().flat_map(|r| r.clone()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Maximal runs of consecutive selected values.
    pub fn runs(&self) -> Vec<RangeInclusive<u64>> {
        let mut out: Vec<RangeInclusive<u64>> = Vec::new();
        let mut sorted = self.runs.clone();
        sorted.sort_by_key(|r| (*r.start(), *r.end()));
        for r in sorted {
            match out.last_mut() {
                Some(last) if *r.start() <= last.end().saturating_add(1) => {
                    if r.end() > last.end() {
                        *last = *last.start()..=*r.end();
                    }
                }
                _ => out.push(r),
            }
        }
        out
    }

    pub fn single(&self) -> Option<u64> {
        match self.values().as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    pub fn min(&self) -> u64 {
        self.runs
            .iter()
            .map(|r| *r.start())
            .min()
            .expect("selections are non-empty")
    }
}

pub fn parse_selection(text: &str) -> Result<Selection, String> {
    let mut runs = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let number = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{s}` is not a non-negative integer in `{text}`"))
        };
        let run = match part.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                let (a, b) = (number(a)?, number(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                a..=b
            }
            None => {
                let x = number(part)?;
                x..=x
            }
        };
        runs.push(run);
    }
    Ok(Selection { runs })
}
