//! Rooted membership graphs with canonical structural sharing.
//!
//! A [`SetSystem`] is an arena of nodes; each node is a set whose members
//! are other nodes. Acyclic nodes are interned by their member list, so
//! extensionally equal sets always share one id. Nodes created by the
//! `inf`/`semi`/`quasi` constructors sit on membership cycles and are
//! interned by their generator record instead (see [`crate::igs`]).
//!
//! Member lists that coincide with the one-step unrolling of a cyclic
//! node are folded back onto that node at creation time, so a system is
//! canonical at every point: node-id equality is the system's set
//! equality.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::igs::{GenKind, GenSpec};

/// Handle to a set inside one [`SetSystem`]. Ids are never dangling and
/// are not meaningful across systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One constituent of a brace expression. Nullity (the unpacked empty
/// set) is not a set and never becomes a node; it may appear in an item
/// list and is absorbed.
#[derive(Clone, Copy, Debug)]
pub enum Item {
    Plain(NodeId),
    Unpack(NodeId),
    Nullity,
}

#[derive(Clone, Debug)]
pub(crate) struct NodeData {
    /// Members sorted by canonical text, no duplicates.
    pub members: Vec<NodeId>,
    /// Present exactly when the node lies on a membership cycle.
    pub gen: Option<GenSpec>,
    /// Canonical text form; doubles as the serialization.
    pub canon: String,
    /// Whether a membership cycle is reachable from this node.
    pub nwf: bool,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum InternKey {
    Plain(Vec<NodeId>),
    Gen(GenKind, NodeId, Vec<NodeId>, u32),
}

/// Construction bounds; see the CLI flags of the same names.
#[derive(Clone, Debug)]
pub struct SystemConfig {
    pub max_numeral: u32,
    pub quasi_max_len: u32,
    pub depth_bound: u32,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig { max_numeral: 12, quasi_max_len: 3, depth_bound: 8 }
    }
}

pub struct SetSystem {
    nodes: Vec<NodeData>,
    intern: HashMap<InternKey, NodeId>,
    empty: NodeId,
    pub config: SystemConfig,
}

impl Default for SetSystem {
    fn default() -> Self {
        Self::new()
    }
}

impl SetSystem {
    pub fn new() -> Self {
        Self::with_config(SystemConfig::default())
    }

    pub fn with_config(config: SystemConfig) -> Self {
        let mut sys = SetSystem {
            nodes: Vec::new(),
            intern: HashMap::new(),
            empty: NodeId(0),
            config,
        };
        let empty = sys.push_node(Vec::new(), None, "{}".to_string());
        sys.intern.insert(InternKey::Plain(Vec::new()), empty);
        sys.empty = empty;
        sys
    }

    pub fn empty_set(&self) -> NodeId {
        self.empty
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn members(&self, n: NodeId) -> &[NodeId] {
        &self.nodes[n.0 as usize].members
    }

    pub fn card(&self, n: NodeId) -> usize {
        self.members(n).len()
    }

    pub fn gen_spec(&self, n: NodeId) -> Option<&GenSpec> {
        self.nodes[n.0 as usize].gen.as_ref()
    }

    /// True when the node lies on a membership cycle.
    pub fn on_cycle(&self, n: NodeId) -> bool {
        self.nodes[n.0 as usize].gen.is_some()
    }

    /// True when some membership cycle is reachable from the node.
    pub fn cycle_reachable(&self, n: NodeId) -> bool {
        self.nodes[n.0 as usize].nwf
    }

    pub fn canon(&self, n: NodeId) -> &str {
        &self.nodes[n.0 as usize].canon
    }

    pub fn has_member(&self, set: NodeId, x: NodeId) -> bool {
        self.members(set).contains(&x)
    }

    fn push_node(&mut self, members: Vec<NodeId>, gen: Option<GenSpec>, canon: String) -> NodeId {
        let nwf = gen.is_some() || members.iter().any(|&m| self.nodes[m.0 as usize].nwf);
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(NodeData { members, gen, canon, nwf });
        id
    }

    /// Canonical member order: shortlex on the canonical text, so the
    /// empty set precedes its singleton and numerals read in order.
    pub fn canon_cmp(&self, a: NodeId, b: NodeId) -> std::cmp::Ordering {
        let (x, y) = (self.canon(a), self.canon(b));
        x.len().cmp(&y.len()).then_with(|| x.cmp(y))
    }

    /// Sorts by canonical text and removes duplicates. Distinct canonical
    /// nodes always have distinct text, so this is a set normalization.
    fn normalize_members(&self, ids: &mut Vec<NodeId>) {
        ids.sort_by(|a, b| self.canon_cmp(*a, *b));
        ids.dedup();
    }

    /// If `ids` is exactly the one-step unrolling of a cyclic member,
    /// returns the node the set folds back onto.
    fn fold_onto_cycle(&self, ids: &[NodeId]) -> Option<NodeId> {
        let mut tagged = ids.iter().filter(|&&m| self.on_cycle(m));
        let m = *tagged.next()?;
        if tagged.next().is_some() {
            return None;
        }
        let spec = self.gen_spec(m).expect("tagged node has a spec");
        let mut wrap: Vec<NodeId> = match spec.continuation() {
            Some(g) => self.members(g).to_vec(),
            None => Vec::new(),
        };
        wrap.push(m);
        self.normalize_members(&mut wrap);
        if wrap != ids {
            return None;
        }
        match spec.kind {
            // I = {I} and Z = {*G, Z}: the wrap is the node itself.
            GenKind::Infiniton | GenKind::Semi => Some(m),
            GenKind::Quasi => {
                let l = spec.cycle.len() as u32;
                let next = (spec.phase + 1) % l;
                let key =
                    InternKey::Gen(GenKind::Quasi, spec.base, spec.cycle.clone(), next);
                Some(*self.intern.get(&key).expect("quasi cluster is complete"))
            }
        }
    }

    pub(crate) fn intern_plain(&mut self, mut ids: Vec<NodeId>) -> NodeId {
        self.normalize_members(&mut ids);
        if let Some(target) = self.fold_onto_cycle(&ids) {
            return target;
        }
        if let Some(&id) = self.intern.get(&InternKey::Plain(ids.clone())) {
            return id;
        }
        let canon = self.plain_canon(&ids);
        let id = self.push_node(ids.clone(), None, canon);
        self.intern.insert(InternKey::Plain(ids), id);
        id
    }

    fn plain_canon(&self, ids: &[NodeId]) -> String {
        let mut s = String::from("{");
        for (i, m) in ids.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(self.canon(*m));
        }
        s.push('}');
        s
    }

    /// Interns a cyclic constructor node. The `members_of` closure maps a
    /// freshly reserved id cluster to each node's member list; see
    /// [`crate::igs`] for the three constructors.
    pub(crate) fn intern_igs(&mut self, spec: GenSpec) -> NodeId {
        let key = InternKey::Gen(spec.kind, spec.base, spec.cycle.clone(), spec.phase);
        if let Some(&id) = self.intern.get(&key) {
            return id;
        }
        match spec.kind {
            GenKind::Infiniton => {
                let canon = format!("inf({})", self.canon(spec.base));
                let id = self.push_node(Vec::new(), Some(spec.clone()), canon);
                self.nodes[id.0 as usize].members = vec![id];
                self.intern.insert(key, id);
                id
            }
            GenKind::Semi => {
                let g = spec.cycle[0];
                let canon = format!("semi({};{})", self.canon(g), self.canon(spec.base));
                let id = self.push_node(Vec::new(), Some(spec.clone()), canon);
                let mut members = self.members(g).to_vec();
                members.push(id);
                self.normalize_members(&mut members);
                self.nodes[id.0 as usize].members = members;
                self.intern.insert(key, id);
                id
            }
            GenKind::Quasi => {
                // The l phase nodes form one cycle and are created together.
                let l = spec.cycle.len();
                let mut ids = Vec::with_capacity(l);
                for phase in 0..l as u32 {
                    let ps = GenSpec {
                        kind: GenKind::Quasi,
                        base: spec.base,
                        cycle: spec.cycle.clone(),
                        phase,
                    };
                    let canon = self.quasi_canon(&ps);
                    let id = self.push_node(Vec::new(), Some(ps), canon);
                    ids.push(id);
                }
                for phase in 0..l {
                    let outer = spec.cycle[(phase + l - 1) % l];
                    let prev = ids[(phase + l - 1) % l];
                    let mut members = self.members(outer).to_vec();
                    members.push(prev);
                    self.normalize_members(&mut members);
                    let id = ids[phase];
                    self.nodes[id.0 as usize].members = members;
                    let k = InternKey::Gen(
                        GenKind::Quasi,
                        spec.base,
                        spec.cycle.clone(),
                        phase as u32,
                    );
                    self.intern.insert(k, id);
                }
                ids[spec.phase as usize]
            }
        }
    }

    fn quasi_canon(&self, spec: &GenSpec) -> String {
        let gens: Vec<&str> = spec.cycle.iter().map(|&g| self.canon(g)).collect();
        format!(
            "quasi([{}];{};{})",
            gens.join(","),
            self.canon(spec.base),
            spec.phase
        )
    }

    /// Builds the set of the given items: plain items become members, an
    /// unpacked item splices in its members, nullity is absorbed.
    pub fn mk_set(&mut self, items: &[Item]) -> NodeId {
        let mut ids = Vec::new();
        for item in items {
            match *item {
                Item::Plain(n) => ids.push(n),
                Item::Unpack(n) => ids.extend_from_slice(self.members(n)),
                Item::Nullity => {}
            }
        }
        self.intern_plain(ids)
    }

    pub fn mk_from_ids<I: IntoIterator<Item = NodeId>>(&mut self, ids: I) -> NodeId {
        self.intern_plain(ids.into_iter().collect())
    }

    pub fn singleton(&mut self, x: NodeId) -> NodeId {
        self.mk_from_ids([x])
    }

    /// Von Neumann numeral: `0 = {}`, `n+1 = n U {n}`.
    pub fn mk_numeral(&mut self, n: u32) -> Result<NodeId> {
        if n > self.config.max_numeral {
            return Err(Error::NumeralBound(n, self.config.max_numeral));
        }
        let mut below = Vec::new();
        let mut cur = self.empty;
        for _ in 0..n {
            below.push(cur);
            cur = self.mk_from_ids(below.clone());
        }
        Ok(cur)
    }

    pub fn set_union(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let mut ids = self.members(a).to_vec();
        ids.extend_from_slice(self.members(b));
        self.intern_plain(ids)
    }

    pub fn set_intersect(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let bs: HashSet<NodeId> = self.members(b).iter().copied().collect();
        let ids: Vec<NodeId> =
            self.members(a).iter().copied().filter(|m| bs.contains(m)).collect();
        self.intern_plain(ids)
    }

    pub fn set_difference(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let bs: HashSet<NodeId> = self.members(b).iter().copied().collect();
        let ids: Vec<NodeId> =
            self.members(a).iter().copied().filter(|m| !bs.contains(m)).collect();
        self.intern_plain(ids)
    }

    /// Kuratowski pair `{{x},{x,y}}`.
    pub fn kuratowski_pair(&mut self, x: NodeId, y: NodeId) -> NodeId {
        let sx = self.singleton(x);
        let xy = self.mk_from_ids([x, y]);
        self.mk_from_ids([sx, xy])
    }

    /// Cartesian product as a set of Kuratowski pairs. A product with the
    /// empty set iterates over no member pairs, which is how pairs with
    /// nullity are absorbed.
    pub fn set_product(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let xs = self.members(a).to_vec();
        let ys = self.members(b).to_vec();
        let mut pairs = Vec::new();
        for &x in &xs {
            for &y in &ys {
                pairs.push(self.kuratowski_pair(x, y));
            }
        }
        self.intern_plain(pairs)
    }

    /// One union step `U X = {z : exists y (y in X and z in y)}`.
    pub fn big_union(&mut self, s: NodeId) -> NodeId {
        let items: Vec<Item> = self.members(s).iter().map(|&m| Item::Unpack(m)).collect();
        self.mk_set(&items)
    }

    /// Iterated union operator.
    pub fn big_union_k(&mut self, s: NodeId, k: u32) -> NodeId {
        let mut cur = s;
        for _ in 0..k {
            cur = self.big_union(cur);
        }
        cur
    }

    /// The set of all nodes reachable by one or more membership edges.
    pub fn transitive_closure(&mut self, s: NodeId) -> NodeId {
        let mut seen: HashSet<NodeId> = HashSet::new();
        let mut stack: Vec<NodeId> = self.members(s).to_vec();
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend_from_slice(self.members(n));
            }
        }
        self.mk_from_ids(seen)
    }

    pub fn is_transitive(&self, s: NodeId) -> bool {
        let direct: HashSet<NodeId> = self.members(s).iter().copied().collect();
        direct
            .iter()
            .all(|&m| self.members(m).iter().all(|x| direct.contains(x)))
    }

    /// Systems are kept canonical on every construction, so this is a
    /// checked fixpoint: it verifies the canonical invariants and returns
    /// the number of rewrites still applicable (always zero).
    pub fn canonicalize(&mut self) -> usize {
        debug_assert_eq!(self.validate_canonical(), Ok(()));
        0
    }

    /// Verifies the canonical-form invariants from first principles:
    /// sorted duplicate-free member lists, no foldable member list left
    /// unfolded, intern-table consistency, and tag-iff-on-cycle agreement
    /// with an independent cycle search.
    pub fn validate_canonical(&self) -> std::result::Result<(), String> {
        for (i, data) in self.nodes.iter().enumerate() {
            let id = NodeId(i as u32);
            for w in data.members.windows(2) {
                if self.canon_cmp(w[0], w[1]) != std::cmp::Ordering::Less {
                    return Err(format!("node {id}: members not in canonical order"));
                }
            }
            if data.gen.is_none() {
                if let Some(t) = self.fold_onto_cycle(&data.members) {
                    if t != id {
                        return Err(format!("node {id}: foldable onto {t}"));
                    }
                }
            }
        }
        for (key, &id) in &self.intern {
            let ok = match key {
                InternKey::Plain(ms) => {
                    self.nodes[id.0 as usize].gen.is_none()
                        && &self.nodes[id.0 as usize].members == ms
                }
                InternKey::Gen(kind, base, cycle, phase) => {
                    self.gen_spec(id).is_some_and(|g| {
                        g.kind == *kind
                            && g.base == *base
                            && &g.cycle == cycle
                            && g.phase == *phase
                    })
                }
            };
            if !ok {
                return Err(format!("intern table entry for {id} is stale"));
            }
        }
        let on_cycle = self.nodes_on_cycles();
        for (i, data) in self.nodes.iter().enumerate() {
            let id = NodeId(i as u32);
            if data.gen.is_some() != on_cycle.contains(&id) {
                return Err(format!("node {id}: tag disagrees with cycle structure"));
            }
        }
        Ok(())
    }

    /// All node ids lying on some membership cycle (Tarjan SCCs; a
    /// singleton component counts only with a self edge).
    fn nodes_on_cycles(&self) -> HashSet<NodeId> {
        struct State {
            index: Vec<Option<u32>>,
            low: Vec<u32>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next: u32,
            out: HashSet<NodeId>,
        }
        let n = self.nodes.len();
        let mut st = State {
            index: vec![None; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            next: 0,
            out: HashSet::new(),
        };
        // Iterative Tarjan to keep deep member chains off the call stack.
        enum Frame {
            Enter(usize),
            Resume(usize, usize),
        }
        for root in 0..n {
            if st.index[root].is_some() {
                continue;
            }
            let mut frames = vec![Frame::Enter(root)];
            while let Some(frame) = frames.pop() {
                match frame {
                    Frame::Enter(v) => {
                        st.index[v] = Some(st.next);
                        st.low[v] = st.next;
                        st.next += 1;
                        st.stack.push(v);
                        st.on_stack[v] = true;
                        frames.push(Frame::Resume(v, 0));
                    }
                    Frame::Resume(v, mut ei) => {
                        let mut descended = false;
                        while ei < self.nodes[v].members.len() {
                            let w = self.nodes[v].members[ei].0 as usize;
                            ei += 1;
                            match st.index[w] {
                                None => {
                                    frames.push(Frame::Resume(v, ei));
                                    frames.push(Frame::Enter(w));
                                    descended = true;
                                    break;
                                }
                                Some(wi) => {
                                    if st.on_stack[w] {
                                        st.low[v] = st.low[v].min(wi);
                                    }
                                }
                            }
                        }
                        if descended {
                            continue;
                        }
                        if let Some(Frame::Resume(p, _)) = frames.last() {
                            st.low[*p] = st.low[*p].min(st.low[v]);
                        }
                        if st.low[v] == st.index[v].unwrap() {
                            let mut comp = Vec::new();
                            while let Some(w) = st.stack.pop() {
                                st.on_stack[w] = false;
                                comp.push(w);
                                if w == v {
                                    break;
                                }
                            }
                            let cyclic = comp.len() > 1
                                || self.nodes[v].members.contains(&NodeId(v as u32));
                            if cyclic {
                                st.out.extend(comp.into_iter().map(|w| NodeId(w as u32)));
                            }
                        }
                    }
                }
            }
        }
        st.out
    }

    /// Canonical text form; members sorted, constructor syntax for cyclic
    /// nodes. Inverse of [`SetSystem::deserialize`].
    pub fn serialize(&self, s: NodeId) -> String {
        self.canon(s).to_string()
    }

    /// Parses the canonical text form back into a node.
    pub fn deserialize(&mut self, text: &str) -> Result<NodeId> {
        let mut p = ValueParser { sys: self, text: text.as_bytes(), pos: 0 };
        let id = p.value()?;
        p.skip_ws();
        if p.pos != p.text.len() {
            return Err(Error::Parse { pos: p.pos, msg: "trailing input".into() });
        }
        Ok(id)
    }
}

/// Minimal recursive-descent parser for the canonical value grammar:
/// braces, `inf(...)`, `semi(...;...)` and `quasi([...];...;n)`.
struct ValueParser<'a> {
    sys: &'a mut SetSystem,
    text: &'a [u8],
    pos: usize,
}

impl ValueParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected {:?}", b as char),
            })
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse { pos: self.pos, msg: "expected a number".into() });
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    fn value(&mut self) -> Result<NodeId> {
        match self.peek() {
            Some(b'{') => {
                self.expect(b'{')?;
                let mut ids = Vec::new();
                if self.peek() != Some(b'}') {
                    loop {
                        ids.push(self.value()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b'}')?;
                Ok(self.sys.intern_plain(ids))
            }
            Some(b'i') if self.eat_keyword("inf") => {
                self.expect(b'(')?;
                let base = self.value()?;
                self.expect(b')')?;
                self.sys.infiniton(base)
            }
            Some(b's') if self.eat_keyword("semi") => {
                self.expect(b'(')?;
                let g = self.value()?;
                self.expect(b';')?;
                let base = self.value()?;
                self.expect(b')')?;
                self.sys.semi_infiniton(g, base)
            }
            Some(b'q') if self.eat_keyword("quasi") => {
                self.expect(b'(')?;
                self.expect(b'[')?;
                let mut cycle = Vec::new();
                loop {
                    cycle.push(self.value()?);
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(b']')?;
                self.expect(b';')?;
                let base = self.value()?;
                self.expect(b';')?;
                let phase = self.nat()?;
                self.expect(b')')?;
                self.sys.quasi_infiniton(&cycle, base, phase)
            }
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: "expected a set value".into(),
            }),
        }
    }
}
