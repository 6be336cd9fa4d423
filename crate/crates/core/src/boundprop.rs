//! Support bounds for a bigraded spectral sequence, propagated row by row.
//!
//! Entry `(s, t)` bounds the gradings in which the degree-`s` derived
//! indecomposables of the weight-`t` homology can be nonzero. Row `0` is
//! axiomatic; in later rows the two leftmost entries are forced by
//! differentials `d^r` with `r >= 2` from earlier rows, and the rest follow
//! from the module regularity estimates.

use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An upper bound in `Z` or `-inf` (empty support).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bound(Option<i64>);

impl Bound {
    pub const NEG_INF: Bound = Bound(None);

    pub const fn at_most(k: i64) -> Bound {
        Bound(Some(k))
    }

    pub fn value(self) -> Option<i64> {
        self.0
    }

    pub fn is_neg_inf(self) -> bool {
        self.0.is_none()
    }

    pub fn le(self, k: i64) -> bool {
        self.0.is_none_or(|v| v <= k)
    }
}

impl Add<i64> for Bound {
    type Output = Bound;
    fn add(self, k: i64) -> Bound {
        Bound(self.0.map(|v| v + k))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "-inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Extra vanishing assumptions on the bottom row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Flags {
    /// Row 0 vanishes at `(grading 3, s = 2)`.
    pub axiom3: bool,
    /// Additionally row 0 vanishes at `(grading 4, s = 3)`.
    pub axiom4: bool,
}

impl Flags {
    pub const NONE: Flags = Flags {
        axiom3: false,
        axiom4: false,
    };
    pub const AXIOM3: Flags = Flags {
        axiom3: true,
        axiom4: false,
    };
    pub const BOTH: Flags = Flags {
        axiom3: true,
        axiom4: true,
    };

    pub fn new(axiom3: bool, axiom4: bool) -> Result<Self> {
        if axiom4 && !axiom3 {
            return Err(Error::Domain("axiom4 is only used together with axiom3".into()));
        }
        Ok(Flags { axiom3, axiom4 })
    }

    pub fn all() -> [Flags; 3] {
        [Flags::NONE, Flags::AXIOM3, Flags::BOTH]
    }

    pub fn name(self) -> &'static str {
        match (self.axiom3, self.axiom4) {
            (false, _) => "none",
            (true, false) => "axiom3",
            (true, true) => "axiom3+axiom4",
        }
    }
}

pub fn row_zero(flags: Flags, s: usize) -> Bound {
    match s {
        0 => Bound::at_most(0),
        1 => Bound::NEG_INF,
        2 if flags.axiom3 => Bound::at_most(2),
        3 if flags.axiom4 => Bound::at_most(3),
        s => Bound::at_most(s as i64 + 1),
    }
}

/// Tightest regularity estimate for `h_d` given `h_0` and `h_1`.
pub fn lemma_estimates(flags: Flags, h0: Bound, h1: Bound, d: usize) -> Result<Bound> {
    if d < 2 {
        return Err(Error::Domain(format!("estimates start at d = 2, got {d}")));
    }
    let d_i = d as i64;
    let spread = h0.max(h1 + -1);
    let mut best = if d == 2 {
        (h0 + 3).max(h1 + 1)
    } else {
        spread + (d_i + 1)
    };
    if flags.axiom3 && d == 2 {
        best = best.min(spread + 2);
    }
    if flags.axiom3 && flags.axiom4 && d <= 3 {
        best = best.min(spread + d_i);
    }
    Ok(best)
}

/// `rows[t][s]` for `t <= t_max`, `s <= s_max`. The row-0 entries and
/// the estimates need columns up to `s_max + t_max + 1` internally, so
/// every reported entry is exact for the recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub flags: Flags,
    pub rows: Vec<Vec<Bound>>,
}

impl BoundTable {
    pub fn get(&self, s: usize, t: usize) -> Bound {
        self.rows[t][s]
    }

    pub fn t_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn s_max(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// Aligned text, top row first, matching the usual chart layout.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (t, row) in self.rows.iter().enumerate().rev() {
            let cells: Vec<String> = row.iter().map(|b| format!("{:>5}", b.to_string())).collect();
            out.push_str(&format!("t={t:<3}|{}\n", cells.join("")));
        }
        let header: Vec<String> = (0..=self.s_max()).map(|s| format!("{:>5}", format!("s={s}"))).collect();
        out.push_str(&format!("      {}\n", header.join("")));
        out
    }
}

pub fn propagate(flags: Flags, t_max: usize, s_max: usize) -> BoundTable {
    let width = s_max + t_max + 2;
    let mut rows: Vec<Vec<Bound>> = vec![(0..width).map(|s| row_zero(flags, s)).collect()];
    for t in 1..=t_max {
        let mut row = vec![Bound::NEG_INF; width];
        for s in 0..2 {
            row[s] = (2..=t + 1)
                .filter(|r| s + r < width)
                .map(|r| rows[t + 1 - r][s + r])
                .max()
                .unwrap_or(Bound::NEG_INF);
        }
        for s in 2..width {
            row[s] = lemma_estimates(flags, row[0], row[1], s).expect("s >= 2");
        }
        rows.push(row);
    }
    for row in &mut rows {
        row.truncate(s_max + 1);
    }
    BoundTable { flags, rows }
}

/// One closed-form comparison `h_s(t) <= a t + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub s: usize,
    pub slope: i64,
    pub offset: i64,
    /// First weight the form is claimed for.
    pub from_t: usize,
    pub holds: bool,
    /// Weights at which the table meets the form.
    pub equal_at: Vec<usize>,
}

impl ClosedForm {
    pub fn formula(&self) -> String {
        match self.offset {
            0 => format!("h_{} <= {}t", self.s, self.slope),
            o if o > 0 => format!("h_{} <= {}t+{o}", self.s, self.slope),
            o => format!("h_{} <= {}t{o}", self.s, self.slope),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub flags: Flags,
    pub t_max: usize,
    pub forms: Vec<ClosedForm>,
}

impl ClosedFormReport {
    pub fn all_hold(&self) -> bool {
        self.forms.iter().all(|f| f.holds)
    }

    pub fn form(&self, s: usize) -> Option<&ClosedForm> {
        self.forms.iter().find(|f| f.s == s)
    }
}

/// Linear bounds in `t`, as `(s, slope, offset, from_t)`. Without flags and
/// with `axiom3` the forms cover `s <= s_max`; with both flags only the two
/// leftmost columns are claimed.
pub fn closed_forms(flags: Flags, s_max: usize) -> Vec<(usize, i64, i64, usize)> {
    match (flags.axiom3, flags.axiom4) {
        (false, _) => {
            let mut v = vec![(0, 3, 0, 0), (1, 3, 1, 0)];
            v.extend((2..=s_max).map(|s| (s, 3, 1 + s as i64, 1)));
            v
        }
        (true, false) => {
            let mut v = vec![(0, 3, -1, 1), (1, 3, 1, 0), (2, 3, 2, 1)];
            v.extend((3..=s_max).map(|s| (s, 3, 1 + s as i64, 1)));
            v
        }
        (true, true) => vec![(0, 2, 0, 0), (1, 2, 1, 0)],
    }
}

pub fn verify_closed_forms(flags: Flags, t_max: usize) -> ClosedFormReport {
    let s_max = 5;
    let table = propagate(flags, t_max, s_max);
    let forms = closed_forms(flags, s_max)
        .into_iter()
        .map(|(s, slope, offset, from_t)| {
            let mut holds = true;
            let mut equal_at = Vec::new();
            for t in from_t..=t_max {
                let bound = slope * t as i64 + offset;
                let h = table.get(s, t);
                holds &= h.le(bound);
                if h == Bound::at_most(bound) {
                    equal_at.push(t);
                }
            }
            ClosedForm {
                s,
                slope,
                offset,
                from_t,
                holds,
                equal_at,
            }
        })
        .collect();
    ClosedFormReport { flags, t_max, forms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Bound> {
        v.iter().map(|&k| Bound::at_most(k)).collect()
    }

    #[test]
    fn bottom_row() {
        let r: Vec<Bound> = (0..6).map(|s| row_zero(Flags::NONE, s)).collect();
        assert_eq!(r[1], Bound::NEG_INF);
        assert_eq!(r[2..], row(&[3, 4, 5, 6])[..]);
        assert_eq!(row_zero(Flags::AXIOM3, 2), Bound::at_most(2));
        assert_eq!(row_zero(Flags::AXIOM3, 3), Bound::at_most(4));
        assert_eq!(row_zero(Flags::BOTH, 3), Bound::at_most(3));
        assert!(Flags::new(false, true).is_err());
    }

    #[test]
    fn estimates() {
        let b = Bound::at_most;
        assert_eq!(lemma_estimates(Flags::NONE, b(3), b(4), 2).unwrap(), b(6));
        assert_eq!(lemma_estimates(Flags::AXIOM3, b(2), b(4), 2).unwrap(), b(5));
        assert_eq!(lemma_estimates(Flags::BOTH, b(2), b(3), 4).unwrap(), b(7));
        assert!(lemma_estimates(Flags::NONE, b(0), b(0), 1).is_err());
        assert_eq!(
            lemma_estimates(Flags::NONE, Bound::NEG_INF, Bound::NEG_INF, 3).unwrap(),
            Bound::NEG_INF
        );
    }

    #[test]
    fn later_rows() {
        let t = propagate(Flags::NONE, 1, 4);
        assert_eq!(t.rows[1], row(&[3, 4, 6, 7, 8]));
        let t = propagate(Flags::AXIOM3, 3, 4);
        assert_eq!(t.rows[2], row(&[5, 7, 8, 10, 11]));
        assert_eq!(t.rows[3], row(&[8, 10, 11, 13, 14]));
        let t = propagate(Flags::BOTH, 3, 4);
        assert_eq!(t.rows[2], row(&[4, 5, 6, 7, 9]));
        assert_eq!(t.rows[3], row(&[6, 7, 8, 9, 11]));
    }

    #[test]
    fn flags_only_lower_bounds() {
        let tables: Vec<BoundTable> = Flags::all().iter().map(|&f| propagate(f, 20, 6)).collect();
        for w in tables.windows(2) {
            for (a, b) in w[0].rows.iter().flatten().zip(w[1].rows.iter().flatten()) {
                assert!(b <= a);
            }
        }
    }

    #[test]
    fn closed_forms_hold() {
        for f in Flags::all() {
            assert!(verify_closed_forms(f, 50).all_hold(), "{}", f.name());
        }
        let r = verify_closed_forms(Flags::AXIOM3, 50);
        assert_eq!(r.form(0).unwrap().equal_at, (1..=50).collect::<Vec<_>>());
        let r = verify_closed_forms(Flags::BOTH, 50);
        assert_eq!(r.form(0).unwrap().equal_at, (0..=50).collect::<Vec<_>>());
        // h_1 is -inf at t = 0
        assert_eq!(r.form(1).unwrap().equal_at, (1..=50).collect::<Vec<_>>());
        let r = verify_closed_forms(Flags::NONE, 50);
        assert_eq!(r.form(0).unwrap().equal_at, (0..=50).collect::<Vec<_>>());
        assert_eq!(r.form(1).unwrap().equal_at, (1..=50).collect::<Vec<_>>());
    }
}
