//! Rational bidegrees and Hodge tables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::linalg::{Int, Rat};

/// A bidegree `(λ, μ)` with reduced rational coordinates. Ordered by `λ`
/// first, then `μ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    /// First grading.
    pub lambda: Rat,
    /// Second grading.
    pub mu: Rat,
}

impl Bidegree {
    /// Builds a bidegree.
    pub fn new(lambda: Rat, mu: Rat) -> Self {
        Self { lambda, mu }
    }

    /// Builds a bidegree from `(ln/ld, mn/md)`.
    pub fn ratio(ln: i64, ld: i64, mn: i64, md: i64) -> Self {
        Self::new(
            Rat::new(Int::from(ln), Int::from(ld)),
            Rat::new(Int::from(mn), Int::from(md)),
        )
    }

    /// Builds an integer bidegree.
    pub fn int(l: i64, m: i64) -> Self {
        Self::ratio(l, 1, m, 1)
    }

    /// True when both coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.lambda.is_integer() && self.mu.is_integer()
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lambda, self.mu)
    }
}

/// A finitely supported map from bidegrees to positive dimensions.
///
/// Zero entries are never stored, so two tables are equal exactly when they
/// agree at every bidegree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HodgeTable {
    entries: BTreeMap<Bidegree, u64>,
}

impl HodgeTable {
    /// The empty table.
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(bidegree, dim)` pairs, summing repeated keys.
    pub fn from_entries<I: IntoIterator<Item = (Bidegree, u64)>>(entries: I) -> Self {
        let mut t = Self::new();
        for (b, d) in entries {
            t.add(b, d);
        }
        t
    }

    /// Adds `dim` to the entry at `b`.
    pub fn add(&mut self, b: Bidegree, dim: u64) {
        if dim > 0 {
            *self.entries.entry(b).or_insert(0) += dim;
        }
    }

    /// Entry at `b` (zero when absent).
    pub fn get(&self, b: &Bidegree) -> u64 {
        self.entries.get(b).copied().unwrap_or(0)
    }

    /// Nonzero entries in bidegree order.
    pub fn iter(&self) -> impl Iterator<Item = (&Bidegree, u64)> {
        self.entries.iter().map(|(b, &d)| (b, d))
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when every entry is zero.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entries.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Restriction to the bidegrees with both coordinates integral.
    pub fn integer_graded(&self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(b, _)| b.is_integral())
                .map(|(b, &d)| (b.clone(), d))
                .collect(),
        }
    }

    /// Moves every entry from `(λ, μ)` to `(λ − k, μ − k)`.
    pub fn cayley_regrade(&self, k: u32) -> Self {
        let shift = Rat::from_integer(Int::from(k));
        Self::from_entries(self.entries.iter().map(|(b, &d)| {
            (Bidegree::new(&b.lambda - &shift, &b.mu - &shift), d)
        }))
    }

    /// Moves every entry from `(λ, μ)` to `(d − λ, μ)`.
    pub fn reflect(&self, d: usize) -> Self {
        let dd = Rat::from_integer(Int::from(d));
        Self::from_entries(
            self.entries.iter().map(|(b, &v)| (Bidegree::new(&dd - &b.lambda, b.mu.clone()), v)),
        )
    }

    /// Bidegrees at which the two tables differ, with both values.
    pub fn differences(&self, other: &Self) -> Vec<(Bidegree, u64, u64)> {
        let mut keys: Vec<&Bidegree> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|b| {
                let (x, y) = (self.get(b), other.get(b));
                (x != y).then(|| (b.clone(), x, y))
            })
            .collect()
    }

    /// Entries on the line `λ + μ = s`.
    pub fn on_weight(&self, s: &Rat) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(b, _)| &(&b.lambda + &b.mu) == s)
                .map(|(b, &d)| (b.clone(), d))
                .collect(),
        }
    }
}

impl fmt::Display for HodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (b, d)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}:{d}")?;
        }
        write!(f, "}}")
    }
}

/// Renders a rational as a reduced `p/q` string, integers without a slash.
pub fn rat_to_string(r: &Rat) -> alloc::string::String {
    use alloc::string::ToString;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rat::new(n, d))
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}
