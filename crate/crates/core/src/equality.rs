//! The two equality notions on one system: generator-based extensional
//! equality (which the canonical interning realizes as node-id equality)
//! and structural bisimulation, which ignores generator records and is
//! strictly coarser.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::igs::GenKind;
use crate::system::{NodeId, SetSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqReason {
    /// Equal or unequal by member comparison of ordinary sets.
    Extensional,
    /// Equal cyclic nodes with the same generator record.
    GeneratorMatch,
    /// Cyclic nodes whose generator records differ.
    GeneratorMismatch,
    /// Unequal by members (covers the ordinary/cyclic mixed case).
    MemberMismatch,
}

#[derive(Clone, Debug)]
pub struct EqReport {
    pub equal: bool,
    pub reason: EqReason,
    /// A distinguishing member path or generator field; absent when the
    /// nodes are equal, and also when a generator mismatch leaves no
    /// structural difference to point at.
    pub witness: Option<String>,
}

impl SetSystem {
    /// Strips iterated singleton layers from a well-founded set: the base
    /// generator of least rank.
    pub fn canonical_base(&self, b: NodeId) -> Result<NodeId> {
        if self.cycle_reachable(b) {
            return Err(Error::NotWellFounded { op: "canonical_base" });
        }
        let mut cur = b;
        while self.members(cur).len() == 1 {
            cur = self.members(cur)[0];
        }
        Ok(cur)
    }

    /// Extensional/generator equality. Canonical interning makes this
    /// node-id comparison; the report records why.
    pub fn ezf_equal(&self, a: NodeId, b: NodeId) -> EqReport {
        if a == b {
            let reason = if self.on_cycle(a) {
                EqReason::GeneratorMatch
            } else {
                EqReason::Extensional
            };
            return EqReport { equal: true, reason, witness: None };
        }
        match (self.gen_spec(a), self.gen_spec(b)) {
            (Some(_), Some(_)) => {
                let witness = if self.bisimilar(a, b) {
                    None
                } else {
                    self.eq_distinguish(a, b)
                };
                EqReport { equal: false, reason: EqReason::GeneratorMismatch, witness }
            }
            _ => EqReport {
                equal: false,
                reason: EqReason::MemberMismatch,
                witness: self.eq_distinguish(a, b),
            },
        }
    }

    /// Greatest bisimulation on the membership graphs, by partition
    /// refinement over the nodes reachable from `a` and `b`. Generator
    /// records are ignored: this is pure structure.
    pub fn bisimilar(&self, a: NodeId, b: NodeId) -> bool {
        let mut reach: Vec<NodeId> = Vec::new();
        let mut seen: HashSet<NodeId> = HashSet::new();
        let mut stack = vec![a, b];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                reach.push(n);
                stack.extend_from_slice(self.members(n));
            }
        }
        reach.sort();
        let mut class: HashMap<NodeId, u32> = reach.iter().map(|&n| (n, 0)).collect();
        loop {
            let mut sig_class: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            let mut next: HashMap<NodeId, u32> = HashMap::with_capacity(reach.len());
            for &n in &reach {
                let mut sig: Vec<u32> = self.members(n).iter().map(|m| class[m]).collect();
                sig.sort_unstable();
                sig.dedup();
                let fresh = sig_class.len() as u32;
                let c = *sig_class.entry(sig).or_insert(fresh);
                next.insert(n, c);
            }
            if next == class {
                return class[&a] == class[&b];
            }
            class = next;
        }
    }

    /// A shortest distinguishing description for unequal nodes: the
    /// generator field that differs for two cyclic nodes, otherwise a
    /// member present on one side only.
    pub fn eq_distinguish(&self, a: NodeId, b: NodeId) -> Option<String> {
        if a == b {
            return None;
        }
        if let (Some(ga), Some(gb)) = (self.gen_spec(a), self.gen_spec(b)) {
            if ga.kind != gb.kind {
                return Some(format!("constructor {:?} vs {:?}", ga.kind, gb.kind));
            }
            if ga.base != gb.base {
                return Some(format!(
                    "base generator {} vs {}",
                    self.canon(ga.base),
                    self.canon(gb.base)
                ));
            }
            if ga.cycle != gb.cycle {
                for (i, (x, y)) in ga.cycle.iter().zip(gb.cycle.iter()).enumerate() {
                    if x != y {
                        return Some(format!(
                            "principal generator {} is {} vs {}",
                            i + 1,
                            self.canon(*x),
                            self.canon(*y)
                        ));
                    }
                }
                return Some(format!(
                    "cycle length {} vs {}",
                    ga.cycle.len(),
                    gb.cycle.len()
                ));
            }
            if ga.kind == GenKind::Quasi && ga.phase != gb.phase {
                return Some(format!("phase {} vs {}", ga.phase, gb.phase));
            }
            return None;
        }
        // Canonical sets differ at the top level already.
        let bs: HashSet<NodeId> = self.members(b).iter().copied().collect();
        if let Some(&m) = self.members(a).iter().find(|m| !bs.contains(m)) {
            return Some(format!("member {} of the left side only", self.canon(m)));
        }
        let as_: HashSet<NodeId> = self.members(a).iter().copied().collect();
        if let Some(&m) = self.members(b).iter().find(|m| !as_.contains(m)) {
            return Some(format!("member {} of the right side only", self.canon(m)));
        }
        None
    }
}
