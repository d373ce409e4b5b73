//! Rank in the well-founded hierarchy, rank in the total hierarchy,
//! membership dimension, and the WF/NWF/TNWF split.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ordinal::{Dimension, Ordinal};
use crate::system::{NodeId, SetSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Every membership branch is finite.
    WF,
    /// Some branch is infinite.
    NWF,
    /// Every branch is infinite.
    TNWF,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::WF => write!(f, "WF"),
            Classification::NWF => write!(f, "NWF"),
            Classification::TNWF => write!(f, "TNWF"),
        }
    }
}

/// Where a set falls in the rank partition of the total hierarchy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionClass {
    pub rank: Ordinal,
    /// Limit-rank classes are exactly the cyclic nodes.
    pub limit: bool,
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.rank;
        if self.limit {
            write!(f, "limit class at rank {a}: A_{a} = inter[b<{a}](T_{a} - T_b)")
        } else {
            let p = a.pred().expect("successor rank");
            write!(f, "successor class at rank {a}: A_{a} = T_{a} - T_{p}")
        }
    }
}

impl Ordinal {
    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        let mut terms = self.terms().to_vec();
        match terms.last_mut() {
            Some((0, c)) => {
                if *c == 1 {
                    terms.pop();
                } else {
                    *c -= 1;
                }
                Some(Ordinal::from_terms(terms).expect("valid CNF"))
            }
            _ => None,
        }
    }
}

impl SetSystem {
    /// True when the terminal (the empty set) is reachable by one or more
    /// membership edges.
    fn reaches_terminal(&self, s: NodeId) -> bool {
        let empty = self.empty_set();
        let mut seen: HashSet<NodeId> = HashSet::new();
        let mut stack: Vec<NodeId> = self.members(s).to_vec();
        while let Some(n) = stack.pop() {
            if n == empty {
                return true;
            }
            if seen.insert(n) {
                stack.extend_from_slice(self.members(n));
            }
        }
        false
    }

    pub fn classify(&self, s: NodeId) -> Classification {
        if !self.cycle_reachable(s) {
            Classification::WF
        } else if self.reaches_terminal(s) {
            Classification::NWF
        } else {
            Classification::TNWF
        }
    }

    /// Least stage of the well-founded hierarchy containing the set; the
    /// empty set enters at stage one and the value is never a limit.
    pub fn rank_v(&self, s: NodeId) -> Result<Ordinal> {
        if self.cycle_reachable(s) {
            return Err(Error::NotInV);
        }
        let mut memo: HashMap<NodeId, u32> = HashMap::new();
        Ok(Ordinal::nat(self.finite_depth(s, &mut memo)))
    }

    fn finite_depth(&self, s: NodeId, memo: &mut HashMap<NodeId, u32>) -> u32 {
        if let Some(&d) = memo.get(&s) {
            return d;
        }
        let d = self
            .members(s)
            .to_vec()
            .iter()
            .map(|&m| self.finite_depth(m, memo))
            .max()
            .unwrap_or(0)
            + 1;
        memo.insert(s, d);
        d
    }

    /// Least stage of the total hierarchy containing the set. Cyclic
    /// nodes sit at the limit stage; any other node enters one stage
    /// above its deepest member.
    pub fn rank_t(&self, s: NodeId) -> Ordinal {
        let mut memo: HashMap<NodeId, Ordinal> = HashMap::new();
        self.rank_t_memo(s, &mut memo)
    }

    fn rank_t_memo(&self, s: NodeId, memo: &mut HashMap<NodeId, Ordinal>) -> Ordinal {
        if self.on_cycle(s) {
            return Ordinal::omega();
        }
        if let Some(r) = memo.get(&s) {
            return r.clone();
        }
        let max = self
            .members(s)
            .to_vec()
            .iter()
            .map(|&m| self.rank_t_memo(m, memo))
            .max()
            .unwrap_or_else(Ordinal::zero);
        let r = max.succ();
        memo.insert(s, r.clone());
        r
    }

    /// Maximal brace-nesting depth; countable exactly when a cycle is
    /// reachable.
    pub fn dimension(&self, s: NodeId) -> Dimension {
        if self.cycle_reachable(s) {
            return Dimension::Aleph0;
        }
        let mut memo = HashMap::new();
        Dimension::Fin(self.finite_depth(s, &mut memo))
    }

    pub fn partition_class(&self, s: NodeId) -> PartitionClass {
        PartitionClass { rank: self.rank_t(s), limit: self.on_cycle(s) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let mut s = SetSystem::new();
        let n5 = s.mk_numeral(5).unwrap();
        assert_eq!(s.classify(n5), Classification::WF);
        let e = s.empty_set();
        let i = s.infiniton(e).unwrap();
        assert_eq!(s.classify(i), Classification::TNWF);
        let g = s.singleton(e); // {0}
        let z = s.semi_infiniton(g, e).unwrap(); // Z = {0, Z}
        assert_eq!(s.classify(z), Classification::NWF);
        // off-cycle mix: finite branch through the numeral
        let n1 = s.mk_numeral(1).unwrap();
        let mixed = s.mk_from_ids([i, n1]);
        assert_eq!(s.classify(mixed), Classification::NWF);
        // set of infinitons only: every branch loops
        let two = s.mk_numeral(2).unwrap();
        let i2 = s.infiniton(two).unwrap();
        let infs = s.mk_from_ids([i, i2]);
        assert_eq!(s.classify(infs), Classification::TNWF);
    }

    #[test]
    fn rank_v_examples() {
        let mut s = SetSystem::new();
        let e = s.empty_set();
        assert_eq!(s.rank_v(e).unwrap(), Ordinal::nat(1));
        let n4 = s.mk_numeral(4).unwrap();
        assert_eq!(s.rank_v(n4).unwrap(), Ordinal::nat(5));
        let se = s.singleton(e);
        let sse = s.singleton(se);
        assert_eq!(s.rank_v(sse).unwrap(), Ordinal::nat(3));
        let i = s.infiniton(e).unwrap();
        assert!(s.rank_v(i).is_err());
    }

    #[test]
    fn rank_t_examples() {
        let mut s = SetSystem::new();
        let n3 = s.mk_numeral(3).unwrap();
        assert_eq!(s.rank_t(n3), Ordinal::nat(4));

        // {b, Q} where Q = {a, {b, Q}}: invariant under re-wrapping
        let e = s.empty_set();
        let b = e;
        let g1 = s.singleton(b);
        let g2 = s.mk_numeral(2).unwrap();
        let q0 = s.quasi_infiniton(&[g1, g2], e, 0).unwrap();
        let bq = s.mk_from_ids([b, q0]);
        assert_eq!(s.rank_t(bq), Ordinal::omega());

        let i = s.infiniton(e).unwrap();
        let n1 = s.mk_numeral(1).unwrap();
        let mixed = s.mk_from_ids([i, n1]);
        assert_eq!(s.rank_t(mixed), Ordinal::omega().succ());
    }

    #[test]
    fn rank_t_agrees_with_rank_v_on_wf_sets() {
        let mut s = SetSystem::new();
        for n in 0..=6 {
            let v = s.mk_numeral(n).unwrap();
            assert_eq!(s.rank_t(v), s.rank_v(v).unwrap());
        }
    }

    #[test]
    fn dimension_examples() {
        let mut s = SetSystem::new();
        let n2 = s.mk_numeral(2).unwrap();
        assert_eq!(s.dimension(n2), Dimension::Fin(3));
        for n in 0..=8 {
            let v = s.mk_numeral(n).unwrap();
            assert_eq!(s.dimension(v), Dimension::Fin(n + 1));
        }
        let e = s.empty_set();
        let a = s.mk_numeral(1).unwrap();
        let g = s.singleton(a);
        let z = s.semi_infiniton(g, e).unwrap();
        assert_eq!(s.dimension(z), Dimension::Aleph0);
    }

    #[test]
    fn partition_examples() {
        let mut s = SetSystem::new();
        let n2 = s.mk_numeral(2).unwrap();
        let p = s.partition_class(n2);
        assert!(!p.limit);
        assert_eq!(p.rank, Ordinal::nat(3));
        assert!(p.to_string().contains("T_3 - T_2"));

        let e = s.empty_set();
        let i = s.infiniton(e).unwrap();
        let p = s.partition_class(i);
        assert!(p.limit);
        assert_eq!(p.rank, Ordinal::omega());

        // {I} folds onto I and stays in the limit class
        let si = s.singleton(i);
        assert!(s.partition_class(si).limit);
    }

    #[test]
    fn ordinal_pred() {
        assert_eq!(Ordinal::nat(3).pred(), Some(Ordinal::nat(2)));
        assert_eq!(Ordinal::nat(1).pred(), Some(Ordinal::zero()));
        assert_eq!(Ordinal::omega().succ().pred(), Some(Ordinal::omega()));
        assert_eq!(Ordinal::omega().pred(), None);
        assert_eq!(Ordinal::zero().pred(), None);
    }
}
