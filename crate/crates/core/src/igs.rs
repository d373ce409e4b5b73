//! Constructors and finite analysis of the cyclic sets: infinitons,
//! semi-infinitons and quasi-infinitons, their finitely generated
//! approximants, unfolding, cycle invariance and prefix-formula checks.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::system::{Item, NodeId, SetSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Infiniton,
    Semi,
    Quasi,
}

/// Provenance record of a cyclic node: which constructor produced it and
/// from which generators. Equality of these records is the system's set
/// equality on cyclic nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub kind: GenKind,
    /// Base generator; for infinitons this is the singleton-stripped form.
    pub base: NodeId,
    /// Principal generators: empty for `Infiniton`, one entry for `Semi`,
    /// the full cycle `G_1..G_l` for `Quasi`.
    pub cycle: Vec<NodeId>,
    /// Which of the `l` cycle rotations this node is (`Quasi` only).
    pub phase: u32,
}

impl GenSpec {
    pub fn cycle_len(&self) -> u32 {
        self.cycle.len() as u32
    }

    /// The generator that wraps this node one step further. Wrapping an
    /// infiniton adds nothing; wrapping phase `q` of a quasi cycle applies
    /// `G_{q+1}` and lands on phase `q+1`.
    pub(crate) fn continuation(&self) -> Option<NodeId> {
        match self.kind {
            GenKind::Infiniton => None,
            GenKind::Semi => Some(self.cycle[0]),
            GenKind::Quasi => Some(self.cycle[self.phase as usize]),
        }
    }
}

impl SetSystem {
    fn require_wf_generator(&self, g: NodeId) -> Result<()> {
        if self.cycle_reachable(g) {
            Err(Error::NonWellFoundedGenerator(self.canon(g).to_string()))
        } else {
            Ok(())
        }
    }

    /// Nested finitely generated set: the empty generator list gives the
    /// base itself, and each further generator wraps once with a splice.
    pub fn fin_generated(&mut self, gens: &[NodeId], base: NodeId) -> Result<NodeId> {
        self.require_wf_generator(base)?;
        for &g in gens {
            self.require_wf_generator(g)?;
        }
        let mut h = base;
        for &g in gens {
            h = self.mk_set(&[Item::Unpack(g), Item::Plain(h)]);
        }
        Ok(h)
    }

    /// The self-membered singleton generated by `base`: `I = {I}`.
    /// Bases that are iterated singletons collapse to the innermost
    /// non-singleton set, so equal limits share one node.
    pub fn infiniton(&mut self, base: NodeId) -> Result<NodeId> {
        self.require_wf_generator(base)?;
        let base = self.canonical_base(base)?;
        Ok(self.intern_igs(GenSpec {
            kind: GenKind::Infiniton,
            base,
            cycle: Vec::new(),
            phase: 0,
        }))
    }

    /// The self-membered set `Z = {*G, Z}`. An empty principal generator
    /// collapses to the infiniton over the same base.
    pub fn semi_infiniton(&mut self, g: NodeId, base: NodeId) -> Result<NodeId> {
        self.require_wf_generator(g)?;
        self.require_wf_generator(base)?;
        if g == self.empty_set() {
            return self.infiniton(base);
        }
        Ok(self.intern_igs(GenSpec {
            kind: GenKind::Semi,
            base,
            cycle: vec![g],
            phase: 0,
        }))
    }

    fn check_quasi_cycle(&self, cycle: &[NodeId], base: NodeId) -> Result<()> {
        if cycle.len() < 2 {
            return Err(Error::GeneratorCycle(
                "a quasi cycle needs at least two generators".into(),
            ));
        }
        self.require_wf_generator(base)?;
        for &g in cycle {
            self.require_wf_generator(g)?;
        }
        for w in cycle.windows(2) {
            if self.card(w[0]) >= self.card(w[1]) {
                return Err(Error::GeneratorCycle(format!(
                    "generator cardinalities must strictly increase: |{}| >= |{}|",
                    self.canon(w[0]),
                    self.canon(w[1])
                )));
            }
        }
        Ok(())
    }

    /// One rotation of the cyclic set
    /// `Q_q = {*G_{l+q}, {*G_{l+q-1}, ... {*G_{q+1}, Q_q} ...}`.
    /// All `l` rotations are created together and form one membership
    /// cycle.
    pub fn quasi_infiniton(
        &mut self,
        cycle: &[NodeId],
        base: NodeId,
        phase: u32,
    ) -> Result<NodeId> {
        self.check_quasi_cycle(cycle, base)?;
        let l = cycle.len() as u32;
        if phase >= l {
            return Err(Error::PhaseRange { phase, len: l });
        }
        Ok(self.intern_igs(GenSpec {
            kind: GenKind::Quasi,
            base,
            cycle: cycle.to_vec(),
            phase,
        }))
    }

    /// All `l` rotations of a generator cycle, in phase order.
    pub fn sublimits(&mut self, cycle: &[NodeId], base: NodeId) -> Result<Vec<NodeId>> {
        self.check_quasi_cycle(cycle, base)?;
        (0..cycle.len() as u32)
            .map(|q| self.quasi_infiniton(cycle, base, q))
            .collect()
    }

    /// Generator applied at step `j >= 1` of the underlying approximant
    /// sequence `H_j = {*G_j, H_{j-1}}`.
    fn schedule(&self, spec: &GenSpec, j: u32) -> NodeId {
        match spec.kind {
            GenKind::Infiniton => self.empty_set(),
            GenKind::Semi => spec.cycle[0],
            GenKind::Quasi => spec.cycle[((j as usize) + spec.cycle.len() - 1) % spec.cycle.len()],
        }
    }

    fn unfold_spec(&mut self, spec: &GenSpec, depth: u32) -> Result<NodeId> {
        let gens: Vec<NodeId> = (1..=depth).map(|j| self.schedule(spec, j)).collect();
        self.fin_generated(&gens, spec.base)
    }

    /// The acyclic approximant obtained by unrolling a cyclic node's
    /// generator sequence `depth` times over its base. Nodes without a
    /// generator record have nothing to unroll.
    pub fn unfold(&mut self, s: NodeId, depth: u32) -> Result<NodeId> {
        match self.gen_spec(s).cloned() {
            None => Ok(s),
            Some(spec) => self.unfold_spec(&spec, depth),
        }
    }

    /// True when the node lies on a membership cycle, i.e. re-wrapping it
    /// with its continuation generator reproduces the node itself.
    pub fn omega_invariant(&self, s: NodeId) -> bool {
        self.on_cycle(s)
    }

    /// Evaluates the depth-`n` prefix formula of the constructor kind on
    /// the depth-`k` approximant: there must be exactly one descending
    /// chain of length `n` from the approximant whose level `j` contains
    /// the members of the scheduled generator `G_j`. For cycles of length
    /// `l` the schedule only lines up when `k = n (mod l)`.
    pub fn homogeneity_prefix_check(&mut self, spec: &GenSpec, n: u32, k: u32) -> Result<bool> {
        if n >= k {
            return Err(Error::PrefixOrder { n, k });
        }
        if k > self.config.depth_bound {
            return Err(Error::DepthBound(k, self.config.depth_bound));
        }
        let model = self.unfold_spec(spec, k)?;
        let required: Vec<Vec<NodeId>> = (0..=n)
            .map(|j| {
                // Template level j expects the generator scheduled at the
                // matching residue; level 0 closes the period.
                let idx = if j == 0 {
                    match spec.kind {
                        GenKind::Quasi => spec.cycle_len(),
                        _ => 1,
                    }
                } else {
                    j
                };
                self.members(self.schedule(spec, idx)).to_vec()
            })
            .collect();
        let mut memo: HashMap<(NodeId, u32), u64> = HashMap::new();
        Ok(self.count_template_chains(model, n, &required, &mut memo) == 1)
    }

    fn count_template_chains(
        &self,
        y: NodeId,
        j: u32,
        required: &[Vec<NodeId>],
        memo: &mut HashMap<(NodeId, u32), u64>,
    ) -> u64 {
        if let Some(&c) = memo.get(&(y, j)) {
            return c;
        }
        let ok = required[j as usize].iter().all(|r| self.has_member(y, *r));
        let count = if !ok {
            0
        } else if j == 0 {
            1
        } else {
            self.members(y)
                .to_vec()
                .iter()
                .map(|&m| self.count_template_chains(m, j - 1, required, memo))
                .sum()
        };
        memo.insert((y, j), count);
        count
    }
}
