//! Command evaluation: a session holds one set system plus the variable
//! environment, and renders every result as deterministic text.

use std::collections::HashMap;

use tuniv_core::functors::FunctorConfig;
use tuniv_core::igs::GenKind;
use tuniv_core::system::{NodeId, SetSystem, SystemConfig};

use crate::ast::{AuditKind, Command, Expr, FunctorKind, Query};
use crate::dot::export_dot;
use crate::parser::{parse_command, ParseError};

const MAX_LOAD_DEPTH: usize = 8;

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Eval(String),
    Assertion { got: String, want: String },
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Eval(e) => write!(f, "error: {e}"),
            CliError::Assertion { got, want } => {
                write!(f, "assertion failed: got {got:?}, want {want:?}")
            }
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl CliError {
    /// Exit codes: assertion failures are 1, parse/eval problems 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion { .. } => 1,
            _ => 2,
        }
    }
}

impl From<tuniv_core::Error> for CliError {
    fn from(e: tuniv_core::Error) -> Self {
        CliError::Eval(e.to_string())
    }
}

/// An evaluated expression: a set, an unpacked run of members, or the
/// unpacked empty set.
enum Value {
    Set(NodeId),
    Splice(Vec<NodeId>),
    Nullity,
}

#[derive(Debug)]
pub struct Output {
    pub text: String,
    /// Present when the result is a set; drives the JSON envelope.
    pub set: Option<NodeId>,
}

impl Output {
    fn text(text: impl Into<String>) -> Self {
        Output { text: text.into(), set: None }
    }
}

pub struct Session {
    pub sys: SetSystem,
    env: HashMap<String, NodeId>,
    functor_cfg: FunctorConfig,
    load_depth: usize,
}

impl Session {
    pub fn new(config: SystemConfig) -> Self {
        let functor_cfg = FunctorConfig { quasi_max_len: config.quasi_max_len };
        Session {
            sys: SetSystem::with_config(config),
            env: HashMap::new(),
            functor_cfg,
            load_depth: 0,
        }
    }

    pub fn run_line(&mut self, line: &str) -> Result<Output, CliError> {
        let cmd = parse_command(line).map_err(CliError::Parse)?;
        self.eval_command(&cmd)
    }

    fn eval_value(&mut self, e: &Expr) -> Result<Value, CliError> {
        match e {
            Expr::Brace(items) => {
                let mut ids = Vec::new();
                for item in items {
                    match self.eval_value(item)? {
                        Value::Set(n) => ids.push(n),
                        Value::Splice(ms) => ids.extend(ms),
                        Value::Nullity => {}
                    }
                }
                Ok(Value::Set(self.sys.mk_from_ids(ids)))
            }
            Expr::Unpack(inner) => match self.eval_value(inner)? {
                Value::Set(n) => {
                    let ms = self.sys.members(n).to_vec();
                    if ms.is_empty() {
                        Ok(Value::Nullity)
                    } else {
                        Ok(Value::Splice(ms))
                    }
                }
                _ => Err(tuniv_core::Error::UnpackNullity.into()),
            },
            Expr::Numeral(n) => Ok(Value::Set(self.sys.mk_numeral(*n)?)),
            Expr::Var(name) => match self.env.get(name) {
                Some(&id) => Ok(Value::Set(id)),
                None => Err(CliError::Eval(format!("unbound variable {name}"))),
            },
            Expr::Null => Ok(Value::Nullity),
            Expr::Inf(b) => {
                let base = self.eval_set(b)?;
                Ok(Value::Set(self.sys.infiniton(base)?))
            }
            Expr::Semi(g, b) => {
                let gen = self.eval_set(g)?;
                let base = self.eval_set(b)?;
                Ok(Value::Set(self.sys.semi_infiniton(gen, base)?))
            }
            Expr::Quasi(cycle, b, phase) => {
                let gens: Vec<NodeId> =
                    cycle.iter().map(|g| self.eval_set(g)).collect::<Result<_, _>>()?;
                let base = self.eval_set(b)?;
                Ok(Value::Set(self.sys.quasi_infiniton(
                    &gens,
                    base,
                    phase.unwrap_or(0),
                )?))
            }
        }
    }

    fn eval_set(&mut self, e: &Expr) -> Result<NodeId, CliError> {
        match self.eval_value(e)? {
            Value::Set(n) => Ok(n),
            Value::Splice(_) => {
                Err(CliError::Eval("an unpacked collection is not a set here".into()))
            }
            Value::Nullity => Err(CliError::Eval("nullity is not a set here".into())),
        }
    }

    fn set_output(&self, id: NodeId) -> Output {
        Output { text: self.sys.serialize(id), set: Some(id) }
    }

    fn bool_output(b: bool) -> Output {
        Output::text(if b { "true" } else { "false" })
    }

    pub fn eval_command(&mut self, cmd: &Command) -> Result<Output, CliError> {
        match cmd {
            Command::Let(name, e) => {
                let id = self.eval_set(e)?;
                self.env.insert(name.clone(), id);
                Ok(self.set_output(id))
            }
            Command::Eval(e) => match self.eval_value(e)? {
                Value::Set(n) => Ok(self.set_output(n)),
                Value::Splice(ms) => {
                    let texts: Vec<&str> = ms.iter().map(|m| self.sys.canon(*m)).collect();
                    Ok(Output::text(texts.join(",")))
                }
                Value::Nullity => Ok(Output::text("*{}")),
            },
            Command::Query(q) => self.eval_query(q),
            Command::Audit(kind, n, samples) => self.eval_audit(*kind, *n, samples),
            Command::ExportDot(e) => {
                let id = self.eval_set(e)?;
                Ok(Output { text: export_dot(&self.sys, id), set: Some(id) })
            }
            Command::Load(path) => self.load_file(path),
            Command::Help => Ok(Output::text(HELP)),
            Command::Assert(inner, want) => {
                let out = self.eval_command(inner)?;
                if out.text.trim() == want.trim() {
                    Ok(Output::text("ok"))
                } else {
                    Err(CliError::Assertion { got: out.text, want: want.clone() })
                }
            }
        }
    }

    fn eval_query(&mut self, q: &Query) -> Result<Output, CliError> {
        match q {
            Query::Eq(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                Ok(Self::bool_output(self.sys.ezf_equal(x, y).equal))
            }
            Query::Bisim(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                Ok(Self::bool_output(self.sys.bisimilar(x, y)))
            }
            Query::Why(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                Ok(Output::text(
                    self.sys.eq_distinguish(x, y).unwrap_or_else(|| "equal".into()),
                ))
            }
            Query::RankV(e) => {
                let x = self.eval_set(e)?;
                Ok(Output::text(self.sys.rank_v(x)?.to_string()))
            }
            Query::RankT(e) => {
                let x = self.eval_set(e)?;
                Ok(Output::text(self.sys.rank_t(x).to_string()))
            }
            Query::Dim(e) => {
                let x = self.eval_set(e)?;
                Ok(Output::text(self.sys.dimension(x).to_string()))
            }
            Query::Classify(e) => {
                let x = self.eval_set(e)?;
                Ok(Output::text(self.sys.classify(x).to_string()))
            }
            Query::Partition(e) => {
                let x = self.eval_set(e)?;
                Ok(Output::text(self.sys.partition_class(x).to_string()))
            }
            Query::Regular(e) => {
                let x = self.eval_set(e)?;
                let r = self.sys.check_regularity(x);
                let text = if !r.holds {
                    "fails".to_string()
                } else if r.vacuous {
                    "holds, vacuous".to_string()
                } else {
                    format!("holds, witness {}", self.sys.canon(r.witness.unwrap()))
                };
                Ok(Output::text(text))
            }
            Query::Functor(kind, e, lmax) => {
                let x = self.eval_set(e)?;
                let id = match kind {
                    FunctorKind::Inf => self.sys.functor_inf(x)?,
                    FunctorKind::Semi => self.sys.functor_semi(x)?,
                    FunctorKind::Quasi => {
                        let cfg = FunctorConfig {
                            quasi_max_len: lmax.unwrap_or(self.functor_cfg.quasi_max_len),
                        };
                        self.sys.functor_quasi(x, cfg)?
                    }
                };
                Ok(self.set_output(id))
            }
            Query::Spectrum(n) => {
                let stage = self.sys.spectrum_stage(*n)?;
                let mut text = format!("|P^({n})({{}})| = {}", stage.elements.len());
                if *n <= 3 {
                    let elems: Vec<&str> =
                        stage.elements.iter().map(|e| self.sys.canon(*e)).collect();
                    text.push_str(": ");
                    text.push_str(&elems.join(", "));
                }
                Ok(Output::text(text))
            }
            Query::Union(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                let r = self.sys.set_union(x, y);
                Ok(self.set_output(r))
            }
            Query::Inter(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                let r = self.sys.set_intersect(x, y);
                Ok(self.set_output(r))
            }
            Query::Diff(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                let r = self.sys.set_difference(x, y);
                Ok(self.set_output(r))
            }
            Query::Prod(a, b) => {
                let (x, y) = (self.eval_set(a)?, self.eval_set(b)?);
                let r = self.sys.set_product(x, y);
                Ok(self.set_output(r))
            }
            Query::BigUnion(k, e) => {
                let x = self.eval_set(e)?;
                let r = self.sys.big_union_k(x, *k);
                Ok(self.set_output(r))
            }
            Query::Tc(e) => {
                let x = self.eval_set(e)?;
                let r = self.sys.transitive_closure(x);
                Ok(self.set_output(r))
            }
            Query::Transitive(e) => {
                let x = self.eval_set(e)?;
                Ok(Self::bool_output(self.sys.is_transitive(x)))
            }
            Query::Unfold(e, d) => {
                let x = self.eval_set(e)?;
                let r = self.sys.unfold(x, *d)?;
                Ok(self.set_output(r))
            }
            Query::OmegaInv(e) => {
                let x = self.eval_set(e)?;
                Ok(Self::bool_output(self.sys.omega_invariant(x)))
            }
            Query::Hom(e, n, k) => {
                let x = self.eval_set(e)?;
                let spec = self
                    .sys
                    .gen_spec(x)
                    .cloned()
                    .ok_or_else(|| CliError::Eval("hom needs a generated set".into()))?;
                Ok(Self::bool_output(self.sys.homogeneity_prefix_check(&spec, *n, *k)?))
            }
            Query::Sublimits(e) => {
                let x = self.eval_set(e)?;
                let spec = self
                    .sys
                    .gen_spec(x)
                    .cloned()
                    .filter(|s| s.kind == GenKind::Quasi)
                    .ok_or_else(|| CliError::Eval("sublimits needs a quasi set".into()))?;
                let subs = self.sys.sublimits(&spec.cycle, spec.base)?;
                let texts: Vec<&str> = subs.iter().map(|s| self.sys.canon(*s)).collect();
                Ok(Output::text(format!("[{}]", texts.join(", "))))
            }
            Query::Base(e) => {
                let x = self.eval_set(e)?;
                let b = self.sys.canonical_base(x)?;
                Ok(self.set_output(b))
            }
        }
    }

    fn eval_audit(
        &mut self,
        kind: AuditKind,
        n: u32,
        samples: &[Expr],
    ) -> Result<Output, CliError> {
        let report = match kind {
            AuditKind::Ezf => {
                if !samples.is_empty() {
                    return Err(CliError::Eval("audit ezf takes no samples".into()));
                }
                self.sys.ezf_closure_audit(n)?
            }
            AuditKind::Russell => {
                let ids: Vec<NodeId> = if samples.is_empty() {
                    self.standard_samples()?
                } else {
                    samples
                        .iter()
                        .map(|e| self.eval_set(e))
                        .collect::<Result<_, _>>()?
                };
                self.sys.russell_audit(n, &ids)?
            }
        };
        let total: usize = report.sections.iter().map(|s| s.checked).sum();
        let mut text = if report.passed() {
            format!("{}: ok ({total} checks)", report.name)
        } else {
            format!("{}: {} violations", report.name, report.violation_count())
        };
        if !report.passed() {
            for s in &report.sections {
                for v in &s.violations {
                    text.push_str(&format!("\n  [{}] {v}", s.name));
                }
            }
        }
        Ok(Output::text(text))
    }

    /// The default sample family for the self-membership audit: one of
    /// each constructor, a set of two infinitons, and plain sets.
    fn standard_samples(&mut self) -> Result<Vec<NodeId>, CliError> {
        let e = self.sys.empty_set();
        let g = self.sys.singleton(e);
        let z = self.sys.semi_infiniton(g, e)?;
        let i = self.sys.infiniton(e)?;
        let one = self.sys.mk_numeral(1)?;
        let two = self.sys.mk_numeral(2)?;
        let q = self.sys.quasi_infiniton(&[one, two], e, 0)?;
        let arg = self.sys.mk_from_ids([e, two]);
        let fi = self.sys.functor_inf(arg)?;
        let three = self.sys.mk_numeral(3)?;
        Ok(vec![i, z, q, fi, three, arg])
    }

    fn load_file(&mut self, path: &str) -> Result<Output, CliError> {
        if self.load_depth >= MAX_LOAD_DEPTH {
            return Err(CliError::Eval("load nesting too deep".into()));
        }
        let content =
            std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        self.load_depth += 1;
        let mut lines_out = Vec::new();
        let result = (|| {
            for (i, line) in content.lines().enumerate() {
                if crate::parser::line_is_blank(line) {
                    continue;
                }
                let out = self
                    .run_line(line)
                    .map_err(|e| CliError::Eval(format!("{path}:{}: {e}", i + 1)))?;
                if !out.text.is_empty() {
                    lines_out.push(out.text);
                }
            }
            Ok(Output::text(lines_out.join("\n")))
        })();
        self.load_depth -= 1;
        result
    }

    /// Machine-readable envelope for one evaluated command.
    pub fn envelope(&self, raw: &str, out: &Output) -> serde_json::Value {
        let (ranks, classification) = match out.set {
            Some(id) => {
                let rank_v = self
                    .sys
                    .rank_v(id)
                    .map(|r| serde_json::Value::String(r.to_string()))
                    .unwrap_or(serde_json::Value::Null);
                (
                    serde_json::json!({
                        "rank_t": self.sys.rank_t(id).to_string(),
                        "rank_v": rank_v,
                        "dimension": self.sys.dimension(id).to_string(),
                    }),
                    serde_json::Value::String(self.sys.classify(id).to_string()),
                )
            }
            None => (serde_json::Value::Null, serde_json::Value::Null),
        };
        serde_json::json!({
            "command": raw,
            "result": out.text,
            "ranks": ranks,
            "classification": classification,
        })
    }
}

const HELP: &str = "\
commands:
  <expr>                  evaluate and print in canonical form
  let <name> = <expr>     bind a variable
  eq|bisim|why E1 E2      equality, bisimulation, distinguishing path
  rankv|rankt|dim E       ranks and membership dimension
  classify|partition E    WF/NWF/TNWF and the rank partition class
  union|inter|diff E1 E2  set algebra
  prod E1 E2              cartesian product (Kuratowski pairs)
  bigunion <k> E          k-fold union operator
  tc E / transitive E     transitive closure / transitivity test
  unfold E <d>            depth-d approximant of a generated set
  omegainv E              does the set lie on a membership cycle
  hom E <n> <k>           prefix-formula check on the depth-k approximant
  sublimits E             all rotations of a quasi set's cycle
  base E                  singleton-stripped base generator
  functor inf|semi|quasi E [lmax]
  spectrum <n>            enumerate the n-th iterated power set
  audit ezf <n>           closure audit on stage n
  audit russell <n> [E..] self-membership audit with samples
  regular E               regularity check with witness
  dot E                   DOT graph of the membership structure
  assert <cmd> == <text>  compare rendered output (batch files)
  load <path>             run a batch file in this session
expressions:
  {} {a,b} *a 3 x null inf(E) semi(G;B) quasi([G1,...,Gl];B;q)";
