//! ADE labels, multisets of them, and recognition of Dynkin diagrams.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ade {
    A(u32),
    D(u32),
    E(u32),
}

impl Ade {
    pub fn rank(&self) -> u32 {
        match *self {
            Ade::A(n) | Ade::D(n) | Ade::E(n) => n,
        }
    }

    fn family(&self) -> u8 {
        match self {
            Ade::E(_) => 0,
            Ade::D(_) => 1,
            Ade::A(_) => 2,
        }
    }
}

/// E before D before A, larger rank first: the order used in printed tables.
impl Ord for Ade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.family().cmp(&other.family()).then(other.rank().cmp(&self.rank()))
    }
}

impl PartialOrd for Ade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ade::A(n) => write!(f, "A{n}"),
            Ade::D(n) => write!(f, "D{n}"),
            Ade::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for Ade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().replace('_', "");
        let bad = || Error::Parse(format!("bad ADE label {s:?}"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: u32 = tail.parse().map_err(|_| bad())?;
        match (head, n) {
            ("A", 1..) => Ok(Ade::A(n)),
            ("D", 4..) => Ok(Ade::D(n)),
            ("E", 6..=8) => Ok(Ade::E(n)),
            _ => Err(bad()),
        }
    }
}

/// A multiset of ADE labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdeMultiset(BTreeMap<Ade, usize>);

impl AdeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, t: Ade, count: usize) {
        if count > 0 {
            *self.0.entry(t).or_default() += count;
        }
    }

    pub fn extend(&mut self, other: &AdeMultiset) {
        for (t, c) in &other.0 {
            self.add(*t, *c);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_rank(&self) -> u32 {
        self.0.iter().map(|(t, c)| t.rank() * *c as u32).sum()
    }

    pub fn count(&self) -> usize {
        self.0.values().sum()
    }

    /// `(label, count)` pairs in table order.
    pub fn entries(&self) -> Vec<(Ade, usize)> {
        self.0.iter().map(|(t, c)| (*t, *c)).collect()
    }

    /// Every label repeated by its multiplicity.
    pub fn labels(&self) -> Vec<Ade> {
        self.0.iter().flat_map(|(t, c)| std::iter::repeat(*t).take(*c)).collect()
    }
}

impl FromIterator<Ade> for AdeMultiset {
    fn from_iter<I: IntoIterator<Item = Ade>>(iter: I) -> Self {
        let mut m = AdeMultiset::new();
        for t in iter {
            m.add(t, 1);
        }
        m
    }
}

impl fmt::Display for AdeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(t, c)| if *c == 1 { t.to_string() } else { format!("{c}{t}") })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Accepts `3A2+A1`, `3A_2, A_1` and `-` for the empty multiset.
impl FromStr for AdeMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut m = AdeMultiset::new();
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(m);
        }
        for part in s.split(['+', ',']) {
            let part = part.trim();
            let split = part.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(|| Error::Parse(part.into()))?;
            let count = if split == 0 {
                1
            } else {
                part[..split].parse().map_err(|_| Error::Parse(part.into()))?
            };
            m.add(part[split..].parse()?, count);
        }
        Ok(m)
    }
}

/// Classifies a connected simple graph as a Dynkin diagram of type A, D or E.
pub fn classify_tree(n: usize, edges: &[(usize, usize)]) -> Option<Ade> {
    if n == 0 || edges.len() != n - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a == b {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    // connected with n - 1 edges means tree
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Some(Ade::A(n as u32)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => Some(Ade::D(*k as u32 + 3)),
                [1, 2, 2] => Some(Ade::E(6)),
                [1, 2, 3] => Some(Ade::E(7)),
                [1, 2, 4] => Some(Ade::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Vec<(usize, usize)> {
        (1..n).map(|i| (i - 1, i)).collect()
    }

    #[test]
    fn recognizes_diagrams() {
        assert_eq!(classify_tree(1, &[]), Some(Ade::A(1)));
        assert_eq!(classify_tree(8, &path(8)), Some(Ade::A(8)));
        assert_eq!(classify_tree(4, &[(0, 1), (0, 2), (0, 3)]), Some(Ade::D(4)));
        let mut d7 = path(6);
        d7.push((1, 6));
        assert_eq!(classify_tree(7, &d7), Some(Ade::D(7)));
        let mut e6 = path(5);
        e6.push((2, 5));
        assert_eq!(classify_tree(6, &e6), Some(Ade::E(6)));
        let mut e8 = path(7);
        e8.push((2, 7));
        assert_eq!(classify_tree(8, &e8), Some(Ade::E(8)));
        let mut cyc = path(3);
        cyc.push((2, 0));
        assert_eq!(classify_tree(3, &cyc), None);
        let mut e9 = path(8);
        e9.push((2, 8));
        assert_eq!(classify_tree(9, &e9), None);
    }

    #[test]
    fn multiset_round_trip() {
        let m: AdeMultiset = "3A_2, A_1".parse().unwrap();
        assert_eq!(m.to_string(), "3A2+A1");
        assert_eq!(m.total_rank(), 7);
        let e: AdeMultiset = "A2+E6".parse().unwrap();
        assert_eq!(e.to_string(), "E6+A2");
        assert_eq!("-".parse::<AdeMultiset>().unwrap(), AdeMultiset::new());
        assert!("B3".parse::<AdeMultiset>().is_err());
        assert!("E9".parse::<Ade>().is_err());
    }
}
