//! The three set-of-generated-sets functors: all infinitons,
//! semi-infinitons, or quasi-infinitons whose generators are drawn from
//! the members of a well-founded set.

use crate::error::{Error, Result};
use crate::system::{NodeId, SetSystem};

/// Bounds for the quasi functor, whose defining comprehension is
/// unbounded in the cycle length.
#[derive(Clone, Copy, Debug)]
pub struct FunctorConfig {
    pub quasi_max_len: u32,
}

impl Default for FunctorConfig {
    fn default() -> Self {
        FunctorConfig { quasi_max_len: 3 }
    }
}

impl SetSystem {
    fn require_wf_argument(&self, s: NodeId, op: &'static str) -> Result<()> {
        if self.cycle_reachable(s) {
            Err(Error::NotWellFounded { op })
        } else {
            Ok(())
        }
    }

    /// `{ inf(g) : g in s }`, deduplicated under the system's equality
    /// (bases that are iterated singletons collapse).
    pub fn functor_inf(&mut self, s: NodeId) -> Result<NodeId> {
        self.require_wf_argument(s, "functor_inf")?;
        let gens = self.members(s).to_vec();
        let mut out = Vec::new();
        for g in gens {
            out.push(self.infiniton(g)?);
        }
        Ok(self.mk_from_ids(out))
    }

    /// `{ semi(g; b) : g, b in s }`; pairs with an empty principal
    /// generator contribute the collapsed infinitons.
    pub fn functor_semi(&mut self, s: NodeId) -> Result<NodeId> {
        self.require_wf_argument(s, "functor_semi")?;
        let ms = self.members(s).to_vec();
        let mut out = Vec::new();
        for &g in &ms {
            for &b in &ms {
                out.push(self.semi_infiniton(g, b)?);
            }
        }
        Ok(self.mk_from_ids(out))
    }

    /// Every rotation of every generator cycle drawn from the members of
    /// `s` with strictly increasing cardinalities and length
    /// `2 <= l <= quasi_max_len`, over every base in `s`.
    pub fn functor_quasi(&mut self, s: NodeId, cfg: FunctorConfig) -> Result<NodeId> {
        self.require_wf_argument(s, "functor_quasi")?;
        let ms = self.members(s).to_vec();
        let mut out = Vec::new();
        for l in 2..=cfg.quasi_max_len.max(2) as usize {
            let mut cycle = Vec::with_capacity(l);
            self.enumerate_cycles(&ms, l, &mut cycle, &mut out)?;
        }
        Ok(self.mk_from_ids(out))
    }

    fn enumerate_cycles(
        &mut self,
        members: &[NodeId],
        l: usize,
        cycle: &mut Vec<NodeId>,
        out: &mut Vec<NodeId>,
    ) -> Result<()> {
        if cycle.len() == l {
            for &base in members {
                for phase in 0..l as u32 {
                    out.push(self.quasi_infiniton(cycle, base, phase)?);
                }
            }
            return Ok(());
        }
        for &g in members {
            let ok = cycle.last().is_none_or(|&prev| self.card(prev) < self.card(g));
            if ok {
                cycle.push(g);
                self.enumerate_cycles(members, l, cycle, out)?;
                cycle.pop();
            }
        }
        Ok(())
    }

    /// Number of `(cycle, base, phase)` tuples the quasi functor visits
    /// before deduplication.
    pub fn functor_quasi_tuple_count(&self, s: NodeId, cfg: FunctorConfig) -> Result<usize> {
        self.require_wf_argument(s, "functor_quasi")?;
        let ms = self.members(s).to_vec();
        let mut cards: Vec<usize> = ms.iter().map(|&m| self.card(m)).collect();
        cards.sort_unstable();
        let mut total = 0usize;
        for l in 2..=cfg.quasi_max_len.max(2) as usize {
            total += l * ms.len() * count_increasing_chains(&cards, l);
        }
        Ok(total)
    }
}

fn count_increasing_chains(sorted_cards: &[usize], l: usize) -> usize {
    fn rec(cards: &[usize], from: usize, prev: Option<usize>, left: usize) -> usize {
        if left == 0 {
            return 1;
        }
        let mut n = 0;
        for i in from..cards.len() {
            if prev.is_none_or(|p| p < cards[i]) {
                n += rec(cards, i + 1, Some(cards[i]), left - 1);
            }
        }
        n
    }
    rec(sorted_cards, 0, None, l)
}
