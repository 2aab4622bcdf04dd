//! Colour sets over target vertices and per-vertex lists.

use std::fmt::Write as _;

use crate::error::{HomError, Result};
use crate::graph::parse_usize;

/// Largest supported target size; colour sets are 64-bit masks.
pub const MAX_TARGET: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(k: usize) -> Self {
        assert!(k <= MAX_TARGET);
        if k == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn singleton(a: usize) -> Self {
        ColorSet(1u64 << a)
    }

    pub fn contains(self, a: usize) -> bool {
        a < 64 && self.0 >> a & 1 == 1
    }

    pub fn insert(&mut self, a: usize) {
        self.0 |= 1u64 << a;
    }

    pub fn remove(&mut self, a: usize) {
        self.0 &= !(1u64 << a);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn and(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn or(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn minus(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ColorSet) -> bool {
        self.0 & !o.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let a = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(a)
            }
        })
    }

    /// All subsets of `self` with exactly `size` members, in increasing mask order.
    pub fn subsets_of_size(self, size: usize) -> Vec<ColorSet> {
        let members: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        if size > members.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut s = ColorSet::EMPTY;
            for &i in &idx {
                s.insert(members[i]);
            }
            out.push(s);
            let mut i = size;
            loop {
                if i == 0 {
                    out.sort_unstable();
                    return out;
                }
                i -= 1;
                if idx[i] < members.len() - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

/// `L(v) ⊆ V(H)` for each vertex of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn full(n: usize, k: usize) -> Self {
        ListAssignment {
            lists: vec![ColorSet::full(k); n],
        }
    }

    pub fn from_sets(lists: Vec<ColorSet>) -> Self {
        ListAssignment { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: usize, s: ColorSet) {
        self.lists[v] = s;
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn validate(&self, n: usize, k: usize) -> Result<()> {
        if self.lists.len() != n {
            return Err(HomError::Malformed(format!(
                "{} lists for {n} vertices",
                self.lists.len()
            )));
        }
        let full = ColorSet::full(k);
        for (v, s) in self.lists.iter().enumerate() {
            if !s.is_subset(full) {
                return Err(HomError::Malformed(format!(
                    "list of {v} names a missing target vertex"
                )));
            }
        }
        Ok(())
    }

    /// Parses `l <v> <a1> <a2> ...` records. Unmentioned vertices get the full list.
    pub fn parse(text: &str, n: usize, k: usize) -> Result<ListAssignment> {
        if k > MAX_TARGET {
            return Err(HomError::Precondition(format!(
                "targets are limited to {MAX_TARGET} vertices"
            )));
        }
        let mut lists = ListAssignment::full(n, k);
        let mut seen = vec![false; n];
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("l") => {
                    let v = parse_usize(tok.next(), line_no)?;
                    if v >= n {
                        return Err(HomError::parse(line_no, format!("vertex {v} out of range")));
                    }
                    if std::mem::replace(&mut seen[v], true) {
                        return Err(HomError::parse(line_no, format!("second list for vertex {v}")));
                    }
                    let mut s = ColorSet::EMPTY;
                    for t in tok {
                        let a = parse_usize(Some(t), line_no)?;
                        if a >= k {
                            return Err(HomError::parse(line_no, format!("target vertex {a} out of range")));
                        }
                        s.insert(a);
                    }
                    lists.set(v, s);
                }
                Some(other) => return Err(HomError::parse(line_no, format!("unknown record `{other}`"))),
                None => unreachable!(),
            }
        }
        Ok(lists)
    }

    /// Writes every list that differs from the full list over `k` colours.
    pub fn to_text(&self, k: usize) -> String {
        let mut s = String::new();
        let full = ColorSet::full(k);
        for (v, l) in self.lists.iter().enumerate() {
            if *l != full {
                write!(s, "l {v}").unwrap();
                for a in l.iter() {
                    write!(s, " {a}").unwrap();
                }
                s.push('\n');
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_size_enumerates_binomially() {
        let s: ColorSet = [0, 2, 3, 5].into_iter().collect();
        let subs = s.subsets_of_size(2);
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|x| x.len() == 2 && x.is_subset(s)));
        assert_eq!(s.subsets_of_size(0), vec![ColorSet::EMPTY]);
        assert!(s.subsets_of_size(5).is_empty());
    }

    #[test]
    fn list_text_round_trip() {
        let l = ListAssignment::parse("l 1 0 2\nl 0\n", 3, 3).unwrap();
        assert_eq!(l.get(0), ColorSet::EMPTY);
        assert_eq!(l.get(2), ColorSet::full(3));
        assert_eq!(ListAssignment::parse(&l.to_text(3), 3, 3).unwrap(), l);
        assert!(ListAssignment::parse("l 0 7\n", 1, 3).is_err());
        assert!(ListAssignment::parse("l 0 1\nl 0 1\n", 1, 3).is_err());
    }
}
