//! Stage enumeration (iterated power sets of the empty set), closure
//! audits of the set-theoretic axioms on those stages, regularity
//! checking, and self-membership diagnostics.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::igs::GenKind;
use crate::system::{NodeId, SetSystem};

/// Hard cap on stage enumeration; stage 5 already has 65536 elements.
pub const STAGE_CAP: u32 = 5;
/// Cap on the quadratic closure audits.
pub const CLOSURE_AUDIT_CAP: u32 = 3;
/// Cap on the self-membership audit.
pub const RUSSELL_AUDIT_CAP: u32 = 4;

/// One enumerated stage: every element of the n-th iterated power set of
/// the empty set, canonically shared.
#[derive(Clone, Debug)]
pub struct Stage {
    pub index: u32,
    pub elements: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub holds: bool,
    pub witness: Option<NodeId>,
    /// Set for the empty input, where the condition holds with no witness.
    pub vacuous: bool,
}

#[derive(Clone, Debug)]
pub struct AuditSection {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub name: String,
    pub sections: Vec<AuditSection>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.violations.is_empty())
    }

    pub fn violation_count(&self) -> usize {
        self.sections.iter().map(|s| s.violations.len()).sum()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.passed() { "ok" } else { "VIOLATIONS" }
        )?;
        for s in &self.sections {
            writeln!(f, "  {} ({} checked): {} violations", s.name, s.checked, s.violations.len())?;
            for v in &s.violations {
                writeln!(f, "    {v}")?;
            }
        }
        Ok(())
    }
}

impl SetSystem {
    /// Explicit enumeration of the n-th iterated power set of the empty
    /// set. Stage 0 is the empty universe.
    pub fn spectrum_stage(&mut self, n: u32) -> Result<Stage> {
        if n > STAGE_CAP {
            return Err(Error::StageCap(n, STAGE_CAP));
        }
        let mut elements: Vec<NodeId> = Vec::new();
        for _ in 0..n {
            elements = self.all_subsets(&elements);
        }
        Ok(Stage { index: n, elements })
    }

    /// All subsets of the given elements as nodes, sorted canonically.
    fn all_subsets(&mut self, elements: &[NodeId]) -> Vec<NodeId> {
        assert!(elements.len() <= 16, "subset enumeration bound");
        let mut out = Vec::with_capacity(1usize << elements.len());
        for mask in 0u32..(1u32 << elements.len()) {
            let ids: Vec<NodeId> = elements
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &m)| m)
                .collect();
            out.push(self.mk_from_ids(ids));
        }
        out.sort_by(|a, b| self.canon_cmp(*a, *b));
        out.dedup();
        out
    }

    /// The power set of a node's members, as a node.
    pub fn powerset_node(&mut self, x: NodeId) -> NodeId {
        let subsets = self.all_subsets(&self.members(x).to_vec());
        self.mk_from_ids(subsets)
    }

    /// Compares the enumerated stage against the directly recursed
    /// cumulative-hierarchy stage `V_n = P(V_{n-1})`.
    pub fn check_stage_equal_v(&mut self, n: u32) -> Result<bool> {
        let stage = self.spectrum_stage(n)?;
        let mut v = self.empty_set();
        for _ in 0..n {
            v = self.powerset_node(v);
        }
        let stage_set: HashSet<NodeId> = stage.elements.iter().copied().collect();
        let v_set: HashSet<NodeId> = self.members(v).iter().copied().collect();
        Ok(stage_set == v_set)
    }

    /// Whether some member of `s` is disjoint from `s`; the witness is
    /// the first such member in canonical order.
    pub fn check_regularity(&self, s: NodeId) -> RegularityReport {
        let ms = self.members(s);
        if ms.is_empty() {
            return RegularityReport { holds: true, witness: None, vacuous: true };
        }
        let sset: HashSet<NodeId> = ms.iter().copied().collect();
        for &m in ms {
            if self.members(m).iter().all(|x| !sset.contains(x)) {
                return RegularityReport { holds: true, witness: Some(m), vacuous: false };
            }
        }
        RegularityReport { holds: false, witness: None, vacuous: false }
    }

    /// Verifies closure of stage `n` under pairing (into stage `n+1`),
    /// power set (into stage `n+2`), union and separation (within stage
    /// `n`).
    pub fn ezf_closure_audit(&mut self, n: u32) -> Result<AuditReport> {
        if n > CLOSURE_AUDIT_CAP {
            return Err(Error::StageCap(n, CLOSURE_AUDIT_CAP));
        }
        let stage_n = self.spectrum_stage(n)?;
        let next: HashSet<NodeId> =
            self.spectrum_stage(n + 1)?.elements.into_iter().collect();
        let next2: HashSet<NodeId> =
            self.spectrum_stage(n + 2)?.elements.into_iter().collect();
        let here: HashSet<NodeId> = stage_n.elements.iter().copied().collect();

        let mut pairing = AuditSection {
            name: format!("pairing lands in stage {}", n + 1),
            checked: 0,
            violations: Vec::new(),
        };
        for &a in &stage_n.elements {
            for &b in &stage_n.elements {
                pairing.checked += 1;
                let p = self.mk_from_ids([a, b]);
                if !next.contains(&p) {
                    pairing
                        .violations
                        .push(format!("{{{},{}}} escapes", self.canon(a), self.canon(b)));
                }
            }
        }

        let mut power = AuditSection {
            name: format!("power set lands in stage {}", n + 2),
            checked: 0,
            violations: Vec::new(),
        };
        for &x in &stage_n.elements {
            power.checked += 1;
            let p = self.powerset_node(x);
            if !next2.contains(&p) {
                power.violations.push(format!("P({}) escapes", self.canon(x)));
            }
        }

        let mut union = AuditSection {
            name: format!("union stays in stage {n}"),
            checked: 0,
            violations: Vec::new(),
        };
        for &x in &stage_n.elements {
            union.checked += 1;
            let u = self.big_union(x);
            if !here.contains(&u) {
                union.violations.push(format!("U{} escapes", self.canon(x)));
            }
        }

        let mut separation = AuditSection {
            name: format!("separation stays in stage {n}"),
            checked: 0,
            violations: Vec::new(),
        };
        let numerals: HashSet<NodeId> = (0..=6)
            .map(|k| self.mk_numeral(k))
            .collect::<Result<_>>()?;
        for &x in &stage_n.elements {
            let members = self.members(x).to_vec();
            let transitive: Vec<NodeId> = members
                .iter()
                .copied()
                .filter(|&m| self.is_transitive(m))
                .collect();
            let numeral: Vec<NodeId> =
                members.iter().copied().filter(|m| numerals.contains(m)).collect();
            for (label, subset) in [("transitive", transitive), ("numeral", numeral)] {
                separation.checked += 1;
                let y = self.mk_from_ids(subset);
                if !here.contains(&y) {
                    separation
                        .violations
                        .push(format!("{{y in {} : {label}}} escapes", self.canon(x)));
                }
            }
        }

        Ok(AuditReport {
            name: format!("closure audit at stage {n}"),
            sections: vec![pairing, power, union, separation],
        })
    }

    /// Fewest membership steps from `x` back to `x`, if any.
    pub fn reach_self_steps(&self, x: NodeId) -> Option<usize> {
        let mut frontier: Vec<NodeId> = vec![x];
        let mut seen: HashSet<NodeId> = HashSet::new();
        let mut steps = 0;
        while !frontier.is_empty() {
            steps += 1;
            let mut nextf = Vec::new();
            for n in frontier {
                for &m in self.members(n) {
                    if m == x {
                        return Some(steps);
                    }
                    if seen.insert(m) {
                        nextf.push(m);
                    }
                }
            }
            frontier = nextf;
        }
        None
    }

    /// Verifies (a) no stage element is self-membered or on a cycle,
    /// (b) the given samples are self-membered or cyclic exactly as their
    /// constructor tags say, and (c) the stage viewed as a set is not a
    /// member of itself.
    pub fn russell_audit(&mut self, n: u32, samples: &[NodeId]) -> Result<AuditReport> {
        if n > RUSSELL_AUDIT_CAP {
            return Err(Error::StageCap(n, RUSSELL_AUDIT_CAP));
        }
        let stage = self.spectrum_stage(n)?;

        let mut acyclic = AuditSection {
            name: format!("stage {n} elements are acyclic"),
            checked: 0,
            violations: Vec::new(),
        };
        for &x in &stage.elements {
            acyclic.checked += 1;
            if self.reach_self_steps(x).is_some() {
                acyclic.violations.push(format!("{} lies on a cycle", self.canon(x)));
            }
        }

        let mut sample_sec = AuditSection {
            name: "samples split into self-membered and longer cycles by tag".into(),
            checked: 0,
            violations: Vec::new(),
        };
        for &x in samples {
            sample_sec.checked += 1;
            let self_membered = self.has_member(x, x);
            let steps = self.reach_self_steps(x);
            let longer_cycle = !self_membered && steps.is_some();
            let kind = self.gen_spec(x).map(|g| g.kind);
            let expect_self =
                matches!(kind, Some(GenKind::Infiniton) | Some(GenKind::Semi));
            let expect_longer = matches!(kind, Some(GenKind::Quasi));
            if self_membered != expect_self {
                sample_sec.violations.push(format!(
                    "{}: self-membership {} does not match tag {:?}",
                    self.canon(x),
                    self_membered,
                    kind
                ));
            }
            if longer_cycle != expect_longer {
                sample_sec.violations.push(format!(
                    "{}: cycle shape {:?} does not match tag {:?}",
                    self.canon(x),
                    steps,
                    kind
                ));
            }
        }

        let mut stage_sec = AuditSection {
            name: format!("stage {n} as a set is not its own member"),
            checked: 1,
            violations: Vec::new(),
        };
        let as_set = self.mk_from_ids(stage.elements.clone());
        if stage.elements.contains(&as_set) {
            stage_sec
                .violations
                .push(format!("stage {n} occurs among its own elements"));
        }

        Ok(AuditReport {
            name: format!("self-membership audit at stage {n}"),
            sections: vec![acyclic, sample_sec, stage_sec],
        })
    }
}
