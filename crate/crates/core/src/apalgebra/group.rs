use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite abelian group `Z/m_1 x ... x Z/m_r`. Elements are indexed
/// `0..order()` in mixed radix with the first factor most significant, so
/// the identity always has index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    order: usize,
}

/// Index of an element of a [`FiniteAbelianGroup`].
pub type GroupElem = usize;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&m| m == 0) {
            return Err(Error::Domain(format!(
                "cyclic factor of order {bad} is infinite; only finite groups are supported"
            )));
        }
        let orders: Vec<u32> = orders.into_iter().filter(|&m| m > 1).collect();
        let order = orders.iter().map(|&m| m as usize).product();
        Ok(FiniteAbelianGroup { orders, order })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            orders: Vec::new(),
            order: 1,
        }
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<GroupElem> {
        0..self.order
    }

    pub fn residues(&self, x: GroupElem) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        let mut rest = x;
        for (k, &m) in self.orders.iter().enumerate().rev() {
            out[k] = (rest % m as usize) as u32;
            rest /= m as usize;
        }
        out
    }

    pub fn from_residues(&self, r: &[i64]) -> Result<GroupElem> {
        if r.len() != self.orders.len() {
            return Err(Error::Domain(format!(
                "element has {} components, group has {}",
                r.len(),
                self.orders.len()
            )));
        }
        Ok(r.iter().zip(&self.orders).fold(0, |acc, (&v, &m)| {
            acc * m as usize + v.rem_euclid(i64::from(m)) as usize
        }))
    }

    pub fn op(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        let (ra, rb) = (self.residues(a), self.residues(b));
        let mut acc = 0;
        for ((x, y), &m) in ra.iter().zip(&rb).zip(&self.orders) {
            acc = acc * m as usize + ((x + y) % m) as usize;
        }
        acc
    }

    pub fn inverse(&self, a: GroupElem) -> GroupElem {
        let mut acc = 0;
        for (x, &m) in self.residues(a).iter().zip(&self.orders) {
            acc = acc * m as usize + ((m - x) % m) as usize;
        }
        acc
    }

    /// Product of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = GroupElem>>(&self, it: I) -> GroupElem {
        it.into_iter().fold(self.identity(), |a, b| self.op(a, b))
    }

    /// Parses an element: a residue tuple `(1,0)`, or a bare integer for a
    /// cyclic (or trivial) group.
    pub fn parse_elem(&self, s: &str) -> Result<GroupElem> {
        let t = s.trim();
        let body = t.strip_prefix('(').and_then(|x| x.strip_suffix(')'));
        let parts: Vec<i64> = match body {
            Some(b) if b.trim().is_empty() => Vec::new(),
            Some(b) => b
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Domain(format!("bad group element `{t}`")))?,
            None => {
                let v: i64 = t
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad group element `{t}`")))?;
                if self.orders.is_empty() {
                    if v != 0 {
                        return Err(Error::Domain(format!("trivial group has no element `{t}`")));
                    }
                    Vec::new()
                } else {
                    vec![v]
                }
            }
        };
        self.from_residues(&parts)
    }

    pub fn format_elem(&self, x: GroupElem) -> String {
        let r = self.residues(x);
        match r.len() {
            0 => "0".to_string(),
            1 => r[0].to_string(),
            _ => format!("({})", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Accepts `1`, `trivial`, `Z2`, `Z/3`, `Z2xZ2`, `Z2 x Z3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "1" || t.eq_ignore_ascii_case("trivial") || t == "0" {
            return Ok(Self::trivial());
        }
        let mut orders = Vec::new();
        for part in t.split(['x', 'X', '*']) {
            let p = part.trim();
            let digits = p
                .strip_prefix("Z/")
                .or_else(|| p.strip_prefix('Z'))
                .ok_or_else(|| Error::Domain(format!("bad group factor `{p}` in `{t}`")))?;
            if digits.is_empty() {
                return Err(Error::Domain(format!(
                    "`{t}` is infinite; only finite groups are supported"
                )));
            }
            let m: u32 = digits
                .parse()
                .map_err(|_| Error::Domain(format!("bad group factor `{p}` in `{t}`")))?;
            orders.push(m);
        }
        Self::new(orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_on_small_groups() {
        for spec in ["1", "Z2", "Z3", "Z2xZ2", "Z2xZ3"] {
            let g: FiniteAbelianGroup = spec.parse().unwrap();
            for a in g.elements() {
                assert_eq!(g.op(g.identity(), a), a);
                assert_eq!(g.op(a, g.inverse(a)), g.identity());
                for b in g.elements() {
                    assert_eq!(g.op(a, b), g.op(b, a));
                    for c in g.elements() {
                        assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
                    }
                }
            }
            assert_eq!(g.to_string(), spec);
        }
    }

    #[test]
    fn parsing_elements() {
        let g: FiniteAbelianGroup = "Z2xZ2".parse().unwrap();
        assert_eq!(g.parse_elem("(1,0)").unwrap(), 2);
        assert_eq!(g.format_elem(1), "(0,1)");
        let c: FiniteAbelianGroup = "Z/3".parse().unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(c.parse_elem("-1").unwrap(), 2);
        assert!("Z".parse::<FiniteAbelianGroup>().is_err());
        assert!("Z2xZ".parse::<FiniteAbelianGroup>().is_err());
    }
}
