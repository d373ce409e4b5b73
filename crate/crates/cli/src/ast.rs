//! Surface syntax of the expression language and the command layer.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// `{ item, ... }`; unpacked items appear as `Expr::Unpack` entries.
    Brace(Vec<Expr>),
    /// `*expr`
    Unpack(Box<Expr>),
    /// A natural, denoting its von Neumann numeral.
    Numeral(u32),
    Var(String),
    /// `null`, the unpacked empty set.
    Null,
    Inf(Box<Expr>),
    Semi(Box<Expr>, Box<Expr>),
    /// `quasi([g1,...,gl]; base; phase)`, phase defaulting to 0.
    Quasi(Vec<Expr>, Box<Expr>, Option<u32>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctorKind {
    Inf,
    Semi,
    Quasi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditKind {
    Ezf,
    Russell,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Eq(Expr, Expr),
    Bisim(Expr, Expr),
    Why(Expr, Expr),
    RankV(Expr),
    RankT(Expr),
    Dim(Expr),
    Classify(Expr),
    Partition(Expr),
    Regular(Expr),
    Functor(FunctorKind, Expr, Option<u32>),
    Spectrum(u32),
    Union(Expr, Expr),
    Inter(Expr, Expr),
    Diff(Expr, Expr),
    Prod(Expr, Expr),
    BigUnion(u32, Expr),
    Tc(Expr),
    Transitive(Expr),
    Unfold(Expr, u32),
    OmegaInv(Expr),
    Hom(Expr, u32, u32),
    Sublimits(Expr),
    Base(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Let(String, Expr),
    Eval(Expr),
    Query(Query),
    Audit(AuditKind, u32, Vec<Expr>),
    ExportDot(Expr),
    Load(String),
    Help,
    /// `assert <command> == <expected rendered output>`
    Assert(Box<Command>, String),
}
