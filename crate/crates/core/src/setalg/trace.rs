//! Eventually periodic subsets of a single integer channel.
//!
//! A trace is stored as a finite window between two thresholds plus a
//! periodic tail on each side. Every constructor goes through
//! [`Trace::normalize`], so two traces describe the same subset exactly when
//! they are structurally equal.

use std::collections::BTreeSet;

use super::ground::ChannelKind;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Trace {
    /// Shared period of both tails, minimal.
    pub(crate) period: usize,
    /// Values `x <= lo` follow `lo_res` (INT channels only; NAT keeps `lo = 0`).
    pub(crate) lo: i64,
    /// Values `x >= hi` follow `hi_res`.
    pub(crate) hi: i64,
    pub(crate) lo_res: Vec<bool>,
    pub(crate) hi_res: Vec<bool>,
    /// Members strictly between `lo` and `hi`.
    pub(crate) window: BTreeSet<i64>,
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[inline]
fn residue(x: i64, m: usize) -> usize {
    x.rem_euclid(m as i64) as usize
}

impl Trace {
    pub(crate) fn empty() -> Self {
        Trace {
            period: 1,
            lo: 0,
            hi: 1,
            lo_res: vec![false],
            hi_res: vec![false],
            window: BTreeSet::new(),
        }
    }

    pub(crate) fn full(kind: ChannelKind) -> Self {
        Trace {
            period: 1,
            lo: 0,
            hi: 1,
            lo_res: vec![kind == ChannelKind::Int],
            hi_res: vec![true],
            window: BTreeSet::new(),
        }
    }

    pub(crate) fn member(&self, kind: ChannelKind, x: i64) -> bool {
        if !kind.contains(x) {
            return false;
        }
        if x >= self.hi {
            self.hi_res[residue(x, self.period)]
        } else if x <= self.lo {
            kind == ChannelKind::Int && self.lo_res[residue(x, self.period)]
        } else {
            self.window.contains(&x)
        }
    }

    /// Builds a trace from a predicate that is periodic with period `m` on
    /// `x >= hi` and (for INT channels) on `x <= lo`.
    pub(crate) fn from_predicate(
        kind: ChannelKind,
        m: usize,
        lo: i64,
        hi: i64,
        pred: impl Fn(i64) -> bool,
    ) -> Self {
        assert!(m >= 1);
        let (lo, hi) = match kind {
            ChannelKind::Nat => (0, hi.max(1)),
            ChannelKind::Int => (lo.min(hi - 1), hi),
        };
        let mi = m as i64;
        let mut hi_res = vec![false; m];
        let mut lo_res = vec![false; m];
        for (r, slot) in hi_res.iter_mut().enumerate() {
            let x = hi + (r as i64 - hi).rem_euclid(mi);
            *slot = pred(x);
        }
        if kind == ChannelKind::Int {
            for (r, slot) in lo_res.iter_mut().enumerate() {
                let x = lo - (lo - r as i64).rem_euclid(mi);
                *slot = pred(x);
            }
        }
        Self::normalize(kind, m, lo, hi, lo_res, hi_res, pred)
    }

    /// Canonical form: minimal shared period, `hi` pulled down as far as the
    /// tail pattern reaches, `lo` pulled up likewise, window recomputed.
    /// `mem` must agree with the given tails beyond the given thresholds.
    pub(crate) fn normalize(
        kind: ChannelKind,
        m: usize,
        lo: i64,
        hi: i64,
        lo_res: Vec<bool>,
        hi_res: Vec<bool>,
        mem: impl Fn(i64) -> bool,
    ) -> Self {
        let lo_res = if kind == ChannelKind::Nat {
            vec![false; m]
        } else {
            lo_res
        };
        let (m, lo_res, hi_res) = reduce_period(m, lo_res, hi_res);

        let mut h = hi;
        loop {
            let x = h - 1;
            if let Some(min) = kind.min_value() {
                if x < min {
                    break;
                }
            } else if x <= lo && lo_res == hi_res {
                // Both tails agree everywhere below: the trace is purely periodic.
                return Trace {
                    period: m,
                    lo: 0,
                    hi: 1,
                    lo_res: hi_res.clone(),
                    hi_res,
                    window: BTreeSet::new(),
                };
            }
            if mem(x) != hi_res[residue(x, m)] {
                break;
            }
            h -= 1;
        }

        let l = match kind {
            ChannelKind::Nat => 0,
            ChannelKind::Int => {
                let mut l = lo.min(h - 1);
                while l + 1 < h && mem(l + 1) == lo_res[residue(l + 1, m)] {
                    l += 1;
                }
                l
            }
        };
        let window = ((l + 1)..h).filter(|&x| mem(x)).collect();
        Trace {
            period: m,
            lo: l,
            hi: h,
            lo_res,
            hi_res,
            window,
        }
    }

    pub(crate) fn combine(
        kind: ChannelKind,
        a: &Trace,
        b: &Trace,
        op: impl Fn(bool, bool) -> bool,
    ) -> Trace {
        let m = lcm(a.period, b.period);
        let lo = a.lo.min(b.lo);
        let hi = a.hi.max(b.hi);
        let hi_res = (0..m)
            .map(|r| op(a.hi_res[r % a.period], b.hi_res[r % b.period]))
            .collect();
        let lo_res = (0..m)
            .map(|r| op(a.lo_res[r % a.period], b.lo_res[r % b.period]))
            .collect();
        Self::normalize(kind, m, lo, hi, lo_res, hi_res, |x| {
            op(a.member(kind, x), b.member(kind, x))
        })
    }

    pub(crate) fn complement(&self, kind: ChannelKind) -> Trace {
        let neg = |v: &Vec<bool>| v.iter().map(|b| !b).collect::<Vec<_>>();
        Self::normalize(
            kind,
            self.period,
            self.lo,
            self.hi,
            neg(&self.lo_res),
            neg(&self.hi_res),
            |x| !self.member(kind, x),
        )
    }

    /// Translate by `k`; on NAT channels points pushed below 1 are dropped.
    pub(crate) fn shift(&self, kind: ChannelKind, k: i64) -> Trace {
        Self::from_predicate(kind, self.period, self.lo + k, self.hi + k, |x| {
            self.member(kind, x - k)
        })
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.window.is_empty() && !self.hi_res.iter().any(|&b| b) && !self.lo_res.iter().any(|&b| b)
    }

    pub(crate) fn is_finite(&self) -> bool {
        !self.hi_res.iter().any(|&b| b) && !self.lo_res.iter().any(|&b| b)
    }

    /// True when the trace is a union of residue classes with no window.
    pub(crate) fn is_purely_periodic(&self, kind: ChannelKind) -> bool {
        match kind {
            ChannelKind::Nat => self.hi == 1,
            ChannelKind::Int => self.hi == self.lo + 1 && self.lo_res == self.hi_res,
        }
    }

    /// Least member; `None` when empty or unbounded below.
    pub(crate) fn min_element(&self, kind: ChannelKind) -> Option<i64> {
        if kind == ChannelKind::Int && self.lo_res.iter().any(|&b| b) {
            return None;
        }
        if let Some(&w) = self.window.iter().next() {
            return Some(w);
        }
        (self.hi..self.hi + self.period as i64).find(|&x| self.hi_res[residue(x, self.period)])
    }

    /// Largest threshold magnitude; used to size brute-force windows.
    pub(crate) fn extent(&self) -> i64 {
        self.lo.abs().max(self.hi.abs())
    }
}

fn reduce_period(m: usize, lo_res: Vec<bool>, hi_res: Vec<bool>) -> (usize, Vec<bool>, Vec<bool>) {
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let periodic = |v: &Vec<bool>| (0..m).all(|r| v[r] == v[r % d]);
        if periodic(&lo_res) && periodic(&hi_res) {
            return (d, lo_res[..d].to_vec(), hi_res[..d].to_vec());
        }
    }
    unreachable!("d = m always qualifies")
}
