//! CNF formulas in DIMACS form.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{HomError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    /// Clauses of at most three literals.
    ThreeSat,
    /// All-positive clauses on two or three distinct variables, satisfied
    /// when each clause sees both truth values.
    PosNae3,
}

/// A formula over variables `1..=vars`. Literals are signed, DIMACS style.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub dialect: Dialect,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>, dialect: Dialect) -> Result<Self> {
        let f = CnfFormula { vars, clauses, dialect };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > self.vars {
                    return Err(HomError::Malformed(format!(
                        "clause {} has literal {l} out of range",
                        i + 1
                    )));
                }
            }
            match self.dialect {
                Dialect::ThreeSat => {
                    if c.is_empty() || c.len() > 3 {
                        return Err(HomError::Malformed(format!(
                            "clause {} has {} literals, expected 1 to 3",
                            i + 1,
                            c.len()
                        )));
                    }
                }
                Dialect::PosNae3 => {
                    if c.iter().any(|&l| l < 0) {
                        return Err(HomError::Malformed(format!("clause {} has a negative literal", i + 1)));
                    }
                    let distinct: BTreeSet<i64> = c.iter().copied().collect();
                    if distinct.len() != c.len() || !(2..=3).contains(&c.len()) {
                        return Err(HomError::Malformed(format!(
                            "clause {} must name 2 or 3 distinct variables",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reads `p cnf <vars> <clauses>` followed by zero-terminated clauses.
    /// Lines starting with `c` or `%` are comments.
    pub fn parse_dimacs(text: &str, dialect: Dialect) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(HomError::parse(line_no, "repeated header"));
                }
                let tok: Vec<&str> = line.split_whitespace().collect();
                if tok.len() != 4 || tok[1] != "cnf" {
                    return Err(HomError::parse(line_no, "expected `p cnf <vars> <clauses>`"));
                }
                let num = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| HomError::parse(line_no, format!("bad count `{t}`")))
                };
                header = Some((num(tok[2])?, num(tok[3])?));
                continue;
            }
            if header.is_none() {
                return Err(HomError::parse(line_no, "clause before header"));
            }
            for t in line.split_whitespace() {
                let l: i64 = t
                    .parse()
                    .map_err(|_| HomError::parse(line_no, format!("bad literal `{t}`")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(l);
                }
            }
        }
        let (vars, m) = header.ok_or_else(|| HomError::Malformed("missing `p cnf` header".into()))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != m {
            return Err(HomError::Malformed(format!(
                "header announces {m} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(vars, clauses, dialect)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p cnf {} {}", self.vars, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for l in c {
                write!(s, "{l} ").unwrap();
            }
            s.push_str("0\n");
        }
        s
    }

    /// Occurrence counts `(positive, negative)` per variable, 0-based.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(0, 0); self.vars];
        for c in &self.clauses {
            for &l in c {
                let v = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    occ[v].0 += 1;
                } else {
                    occ[v].1 += 1;
                }
            }
        }
        occ
    }

    /// Fails unless every variable occurs both positively and negatively.
    pub fn require_both_polarities(&self) -> Result<()> {
        for (v, &(p, n)) in self.occurrences().iter().enumerate() {
            if p == 0 || n == 0 {
                return Err(HomError::Precondition(format!(
                    "variable {} must occur both positively and negatively",
                    v + 1
                )));
            }
        }
        Ok(())
    }

    fn clause_value(c: &[i64], assignment: &[bool]) -> (bool, bool) {
        let mut any_true = false;
        let mut any_false = false;
        for &l in c {
            let v = assignment[l.unsigned_abs() as usize - 1];
            if (l > 0) == v {
                any_true = true;
            } else {
                any_false = true;
            }
        }
        (any_true, any_false)
    }

    /// Whether `assignment` satisfies the formula in its dialect's sense.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            let (t, f) = Self::clause_value(c, assignment);
            match self.dialect {
                Dialect::ThreeSat => t,
                Dialect::PosNae3 => t && f,
            }
        })
    }

    /// First satisfying assignment in binary counting order. Refuses formulas
    /// with more than `max_vars` variables.
    pub fn brute_force(&self, max_vars: usize) -> Result<Option<Vec<bool>>> {
        if self.vars > max_vars || self.vars >= 63 {
            return Err(HomError::Budget(format!(
                "{} variables exceed the enumeration limit {max_vars}",
                self.vars
            )));
        }
        for mask in 0u64..1 << self.vars {
            let a: Vec<bool> = (0..self.vars).map(|i| mask >> i & 1 == 1).collect();
            if self.satisfied_by(&a) {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c toy\np cnf 2 2\n1 -2 0\n-1\n2 0\n";
        let f = CnfFormula::parse_dimacs(text, Dialect::ThreeSat).unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2], vec![-1, 2]]);
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs(), Dialect::ThreeSat).unwrap(), f);
    }

    #[test]
    fn dialect_rules() {
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 -2 0\n", Dialect::PosNae3).is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 1 0\n", Dialect::PosNae3).is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 4 1\n1 2 3 4 0\n", Dialect::ThreeSat).is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 2\n1 2 0\n", Dialect::ThreeSat).is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\n3 0\n", Dialect::ThreeSat).is_err());
    }

    #[test]
    fn not_all_equal_needs_both_values() {
        let f = CnfFormula::new(2, vec![vec![1, 2]], Dialect::PosNae3).unwrap();
        assert!(!f.satisfied_by(&[true, true]));
        assert!(f.satisfied_by(&[true, false]));
        let g = CnfFormula::new(1, vec![vec![1], vec![-1]], Dialect::ThreeSat).unwrap();
        assert_eq!(g.brute_force(20).unwrap(), None);
    }
}
