use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Largest number of legs a diagram can carry.
pub const MAX_LEGS: usize = 12;

const UNSET: u8 = u8::MAX;

/// A node of a Brauer diagram; legs are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Top(usize),
    Bottom(usize),
}

/// Perfect matching on `2m` nodes. Top leg `a` is stored at index `a`,
/// bottom leg `a` at `m + a`; slots past `2m` are zero so derived
/// equality and hashing are canonical.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrauerDiagram {
    size: u8,
    partner: [u8; 2 * MAX_LEGS],
}

impl BrauerDiagram {
    fn blank(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_LEGS {
            return invalid(format!("diagram size {m} outside 1..={MAX_LEGS}"));
        }
        let mut partner = [0u8; 2 * MAX_LEGS];
        partner[..2 * m].fill(UNSET);
        Ok(BrauerDiagram { size: m as u8, partner })
    }

    pub fn identity(m: usize) -> Result<Self> {
        let mut d = Self::blank(m)?;
        for a in 0..m {
            d.link(a, m + a);
        }
        Ok(d)
    }

    fn link(&mut self, u: usize, v: usize) {
        self.partner[u] = v as u8;
        self.partner[v] = u as u8;
    }

    fn index(&self, node: Node) -> Result<usize> {
        let m = self.size();
        match node {
            Node::Top(a) if a < m => Ok(a),
            Node::Bottom(a) if a < m => Ok(m + a),
            _ => invalid(format!("node {node:?} outside a diagram of size {m}")),
        }
    }

    fn node(&self, idx: usize) -> Node {
        let m = self.size();
        if idx < m {
            Node::Top(idx)
        } else {
            Node::Bottom(idx - m)
        }
    }

    /// Builds a diagram from its `m` strings.
    pub fn from_pairs(m: usize, pairs: &[(Node, Node)]) -> Result<Self> {
        let mut d = Self::blank(m)?;
        if pairs.len() != m {
            return invalid(format!("{} strings given for a diagram of size {m}", pairs.len()));
        }
        for &(u, v) in pairs {
            let (i, j) = (d.index(u)?, d.index(v)?);
            if i == j || d.partner[i] != UNSET || d.partner[j] != UNSET {
                return invalid(format!("strings do not form a perfect matching at {u:?}-{v:?}"));
            }
            d.link(i, j);
        }
        Ok(d)
    }

    /// The permutation diagram joining top leg `a` to bottom leg `w[a]`.
    /// With this convention the diagram product is composition: `(xy)(a) = x(y(a))`.
    pub fn from_permutation(w: &[usize]) -> Result<Self> {
        let m = w.len();
        let mut d = Self::blank(m)?;
        for (a, &b) in w.iter().enumerate() {
            if b >= m || d.partner[m + b] != UNSET {
                return invalid(format!("{w:?} is not a permutation"));
            }
            d.link(a, m + b);
        }
        Ok(d)
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn partner(&self, node: Node) -> Result<Node> {
        let i = self.index(node)?;
        Ok(self.node(self.partner[i] as usize))
    }

    /// Number of strings joining two top nodes.
    pub fn top_arcs(&self) -> usize {
        let m = self.size();
        (0..m).filter(|&a| (self.partner[a] as usize) < m).count() / 2
    }

    pub fn is_permutation(&self) -> bool {
        self.top_arcs() == 0
    }

    /// The image of each top leg when `self` is a permutation diagram.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let m = self.size();
        (0..m)
            .map(|a| (self.partner[a] as usize).checked_sub(m))
            .collect()
    }

    /// Canonical list of strings: each string once, smaller endpoint first,
    /// tops before bottoms, sorted.
    pub fn pairs(&self) -> Vec<(Node, Node)> {
        let m = self.size();
        (0..2 * m)
            .filter(|&i| i < self.partner[i] as usize)
            .map(|i| (self.node(i), self.node(self.partner[i] as usize)))
            .collect()
    }

    /// Stacks `y` above `self` and returns the resulting diagram together
    /// with the number of closed loops removed.
    pub fn compose(&self, y: &Self) -> Result<(Self, u32)> {
        let m = self.size();
        if y.size() != m {
            return Err(Error::SizeMismatch(format!("diagram sizes {m} and {}", y.size())));
        }
        let mut out = Self::blank(m)?;
        let mut seen = [false; MAX_LEGS];
        // Outer nodes: y's top row becomes the top, self's bottom row the bottom.
        for start in 0..2 * m {
            if out.partner[start] != UNSET {
                continue;
            }
            let end = self.walk(y, start < m, start, &mut seen);
            out.link(start, end);
        }
        let mut loops = 0;
        for k in 0..m {
            if seen[k] {
                continue;
            }
            loops += 1;
            let mut cur = k;
            loop {
                seen[cur] = true;
                let q = self.partner[cur] as usize;
                seen[q] = true;
                let p = y.partner[m + q] as usize - m;
                if p == k {
                    break;
                }
                cur = p;
            }
        }
        Ok((out, loops))
    }

    // Follows a string from an outer node through the middle row.
    fn walk(&self, y: &Self, mut in_y: bool, mut node: usize, seen: &mut [bool; MAX_LEGS]) -> usize {
        let m = self.size();
        loop {
            if in_y {
                let p = y.partner[node] as usize;
                if p < m {
                    return p;
                }
                seen[p - m] = true;
                in_y = false;
                node = p - m;
            } else {
                let p = self.partner[node] as usize;
                if p >= m {
                    return p;
                }
                seen[p] = true;
                in_y = true;
                node = m + p;
            }
        }
    }

    /// Swaps the far endpoints of the strings at top and bottom node `a`.
    pub fn partial_transpose(&self, a: usize) -> Result<Self> {
        let m = self.size();
        if a >= m {
            return invalid(format!("leg {a} outside a diagram of size {m}"));
        }
        let (t, b) = (a, m + a);
        let (p, q) = (self.partner[t] as usize, self.partner[b] as usize);
        if p == b {
            return Ok(*self);
        }
        let mut d = *self;
        d.link(t, q);
        d.link(b, p);
        Ok(d)
    }

    /// Places `self` on legs `offset..offset+k` of a size-`m` diagram,
    /// with vertical strings on every other leg.
    pub fn embed(&self, m: usize, offset: usize) -> Result<Self> {
        let k = self.size();
        if offset + k > m {
            return invalid(format!("cannot place {k} legs at offset {offset} in size {m}"));
        }
        let mut d = Self::identity(m)?;
        for i in 0..2 * k {
            let j = self.partner[i] as usize;
            let lift = |x: usize| if x < k { offset + x } else { m + offset + x - k };
            d.partner[lift(i)] = lift(j) as u8;
        }
        Ok(d)
    }

    /// Inverse of `embed(m, 0)`: the size-`k` diagram on the first `k` legs,
    /// provided legs `k..m` carry vertical strings.
    pub fn restrict(&self, k: usize) -> Option<Self> {
        let m = self.size();
        if k == 0 || k > m || (k..m).any(|a| self.partner[a] as usize != m + a) {
            return None;
        }
        let mut d = Self::blank(k).ok()?;
        for i in 0..k {
            for (src, dst) in [(i, i), (m + i, k + i)] {
                let j = self.partner[src] as usize;
                let j = if j < m { j } else { j - m + k };
                d.partner[dst] = j as u8;
            }
        }
        Some(d)
    }

    /// All `(2m-1)!!` diagrams of size `m`, in increasing order.
    pub fn all(m: usize) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut d = Self::blank(m)?;
        Self::fill(&mut d, 2 * m, &mut out);
        out.sort();
        Ok(out)
    }

    fn fill(d: &mut Self, nodes: usize, out: &mut Vec<Self>) {
        let Some(i) = (0..nodes).find(|&i| d.partner[i] == UNSET) else {
            out.push(*d);
            return;
        };
        for j in i + 1..nodes {
            if d.partner[j] == UNSET {
                d.link(i, j);
                Self::fill(d, nodes, out);
                d.partner[i] = UNSET;
                d.partner[j] = UNSET;
            }
        }
    }

    /// The `m!` permutation diagrams of size `m`, in lexicographic order of `w`.
    pub fn permutations(m: usize) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut w: Vec<usize> = (0..m).collect();
        loop {
            out.push(Self::from_permutation(&w)?);
            // next lexicographic permutation
            let Some(i) = (1..m).rev().find(|&i| w[i - 1] < w[i]) else {
                break;
            };
            let j = (i..m).rev().find(|&j| w[j] > w[i - 1]).expect("successor exists");
            w.swap(i - 1, j);
            w[i..].reverse();
        }
        Ok(out)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Top(a) => write!(f, "T{}", a + 1),
            Node::Bottom(a) => write!(f, "B{}", a + 1),
        }
    }
}

impl FromStr for Node {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse node {s:?}"));
        let (kind, num) = s.split_at(1.min(s.len()));
        let leg: usize = num.parse().map_err(|_| bad())?;
        let leg = leg.checked_sub(1).ok_or_else(bad)?;
        match kind {
            "T" => Ok(Node::Top(leg)),
            "B" => Ok(Node::Bottom(leg)),
            _ => Err(bad()),
        }
    }
}

impl BrauerDiagram {
    /// Parses the `"T1-B2 T2-B1"` text form; the size is the number of strings.
    pub fn parse(s: &str) -> Result<Self> {
        let pairs = s
            .split_whitespace()
            .map(|tok| {
                let (u, v) = tok
                    .split_once('-')
                    .ok_or_else(|| Error::InvalidArgument(format!("cannot parse string {tok:?}")))?;
                Ok((u.parse()?, v.parse()?))
            })
            .collect::<Result<Vec<(Node, Node)>>>()?;
        Self::from_pairs(pairs.len(), &pairs)
    }
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (u, v)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for BrauerDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> BrauerDiagram {
        BrauerDiagram::parse(s).unwrap()
    }

    #[test]
    fn counts_are_double_factorials() {
        for (m, n) in [(1, 1), (2, 3), (3, 15), (4, 105), (5, 945)] {
            assert_eq!(BrauerDiagram::all(m).unwrap().len(), n);
        }
        assert_eq!(BrauerDiagram::permutations(4).unwrap().len(), 24);
    }

    #[test]
    fn contraction_squares_to_a_loop() {
        let e = d("T1-T2 B1-B2");
        assert_eq!(e.compose(&e).unwrap(), (e, 1));
        let s = d("T1-B2 T2-B1");
        assert_eq!(s.compose(&s).unwrap(), (BrauerDiagram::identity(2).unwrap(), 0));
    }

    #[test]
    fn seven_leg_product() {
        let x = d("T1-T4 T2-T3 T5-T7 T6-B5 B1-B3 B2-B7 B4-B6");
        let y = d("T1-T2 T3-T5 T6-T7 T4-B6 B1-B4 B2-B5 B3-B7");
        let xy = d("T1-T2 T3-T5 T6-T7 T4-B5 B1-B3 B2-B7 B4-B6");
        assert_eq!(x.compose(&y).unwrap(), (xy, 2));
    }

    #[test]
    fn permutation_product_is_composition() {
        let x = BrauerDiagram::from_permutation(&[1, 2, 0]).unwrap();
        let y = BrauerDiagram::from_permutation(&[0, 2, 1]).unwrap();
        let (xy, loops) = x.compose(&y).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(xy.as_permutation().unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn transpose_examples() {
        let s = d("T1-B2 T2-B1");
        let e = d("T1-T2 B1-B2");
        assert_eq!(s.partial_transpose(0).unwrap(), e);
        assert_eq!(e.partial_transpose(0).unwrap(), s);
        let id = BrauerDiagram::identity(3).unwrap();
        assert_eq!(id.partial_transpose(1).unwrap(), id);
        // six-leg example: the string T5-B4 and arc T2-T5 become T2-B5 and T4-T5
        let x = d("T3-B1 T1-B2 B3-B6 T6-B4 T4-B5 T2-T5");
        let y = d("T3-B1 T1-B2 B3-B6 T6-B4 T2-B5 T4-T5");
        assert_eq!(x.partial_transpose(4).unwrap(), y);
    }

    #[test]
    fn embed_and_restrict_round_trip() {
        let e = d("T1-T2 B1-B2");
        let big = e.embed(4, 1).unwrap();
        assert_eq!(big, d("T1-B1 T2-T3 B2-B3 T4-B4"));
        assert_eq!(e.embed(4, 0).unwrap().restrict(2), Some(e));
        assert_eq!(big.restrict(2), None);
    }

    #[test]
    fn text_round_trip() {
        for x in BrauerDiagram::all(3).unwrap() {
            assert_eq!(d(&x.to_string()), x);
        }
        assert!(BrauerDiagram::parse("T1-T2 T1-B1").is_err());
    }
}
