//! Core syntax tree: terms, literals, clauses, probabilistic facts and programs.
//!
//! Logical variables are identified by program-wide numeric ids; the program
//! keeps a side table with their source names. Anonymous `_` variables are
//! renamed apart at parse time, so every occurrence is a distinct id.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::BigRational;

pub type VarId = usize;

/// Byte range plus 1-based line/column of the start, kept on every node for
/// diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(start: usize, end: usize, line: u32, col: u32) -> Self {
        Span { start, end, line, col }
    }
}

#[derive(Debug, Clone)]
pub enum Const {
    Sym(String),
    Int(i64),
    Real(f64),
}

impl PartialEq for Const {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Const::Sym(a), Const::Sym(b)) => a == b,
            (Const::Int(a), Const::Int(b)) => a == b,
            (Const::Real(a), Const::Real(b)) => a.total_cmp(b) == Ordering::Equal,
            _ => false,
        }
    }
}

impl Eq for Const {}

impl PartialOrd for Const {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Const {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(c: &Const) -> u8 {
            match c {
                Const::Int(_) => 0,
                Const::Real(_) => 1,
                Const::Sym(_) => 2,
            }
        }
        match (self, other) {
            (Const::Int(a), Const::Int(b)) => a.cmp(b),
            (Const::Real(a), Const::Real(b)) => a.total_cmp(b),
            (Const::Sym(a), Const::Sym(b)) => a.cmp(b),
            (a, b) => rank(a).cmp(&rank(b)),
        }
    }
}

impl std::hash::Hash for Const {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Const::Sym(s) => {
                0u8.hash(state);
                s.hash(state);
            }
            Const::Int(i) => {
                1u8.hash(state);
                i.hash(state);
            }
            Const::Real(r) => {
                2u8.hash(state);
                r.to_bits().hash(state);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(VarId),
    Const(Const),
    /// Compound term; arity is always >= 1.
    App(String, Vec<Term>),
}

impl Term {
    pub fn sym(name: &str) -> Term {
        Term::Const(Const::Sym(name.to_string()))
    }

    pub fn int(v: i64) -> Term {
        Term::Const(Const::Int(v))
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        assert!(!args.is_empty(), "compound arity must be >= 1");
        Term::App(name.to_string(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// True if the term contains a real constant anywhere.
    pub fn contains_real(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(c) => matches!(c, Const::Real(_)),
            Term::App(_, args) => args.iter().any(Term::contains_real),
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.vars(out);
                }
            }
        }
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        match self {
            Term::Var(u) => *u == v,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|t| t.contains_var(v)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Gt,
    Le,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Le => "=<",
            CmpOp::Ge => ">=",
        }
    }

    pub fn holds(self, l: f64, r: f64) -> bool {
        match self {
            CmpOp::Lt => l < r,
            CmpOp::Gt => l > r,
            CmpOp::Le => l <= r,
            CmpOp::Ge => l >= r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArithExpr {
    Int(i64),
    Real(f64),
    Var(VarId),
    Neg(Box<ArithExpr>),
    Bin(ArithOp, Box<ArithExpr>, Box<ArithExpr>),
}

impl ArithExpr {
    pub fn vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            ArithExpr::Var(v) => {
                out.insert(*v);
            }
            ArithExpr::Neg(e) => e.vars(out),
            ArithExpr::Bin(_, l, r) => {
                l.vars(out);
                r.vars(out);
            }
            _ => {}
        }
    }
}

/// Predicate atom: name plus argument terms. A 0-ary atom has no args.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
    pub span: Span,
}

impl Atom {
    pub fn key(&self) -> PredKey {
        (self.pred.clone(), self.args.len())
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for a in &self.args {
            a.vars(&mut out);
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Pos(Atom),
    Neg(Atom),
    Cmp {
        op: CmpOp,
        lhs: ArithExpr,
        rhs: ArithExpr,
        span: Span,
    },
    /// `Target =:= Expr`: defines a derived continuous variable.
    Def {
        target: VarId,
        expr: ArithExpr,
        span: Span,
    },
}

impl Literal {
    pub fn span(&self) -> Span {
        match self {
            Literal::Pos(a) | Literal::Neg(a) => a.span,
            Literal::Cmp { span, .. } | Literal::Def { span, .. } => *span,
        }
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        match self {
            Literal::Pos(a) | Literal::Neg(a) => out = a.vars(),
            Literal::Cmp { lhs, rhs, .. } => {
                lhs.vars(&mut out);
                rhs.vars(&mut out);
            }
            Literal::Def { target, expr, .. } => {
                out.insert(*target);
                expr.vars(&mut out);
            }
        }
        out
    }
}

/// Clause `head :- body`; body order is preserved exactly as written and the
/// engine selects literals in this order.
#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Literal>,
    pub span: Span,
}

/// Boolean probabilistic fact `p :: template` (equivalently `template : p`).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFact {
    pub template: Atom,
    pub prob: BigRational,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityFamily {
    /// Parameters are (mean, variance).
    Gaussian,
    /// Parameters are (low, high).
    UniformDens,
}

impl DensityFamily {
    pub fn name(self) -> &'static str {
        match self {
            DensityFamily::Gaussian => "gaussian",
            DensityFamily::UniformDens => "uniform_dens",
        }
    }
}

/// Continuous probabilistic fact `template : family(OutVar, p1, p2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFact {
    pub template: Atom,
    pub family: DensityFamily,
    pub output: VarId,
    pub params: [ArithExpr; 2],
    pub span: Span,
}

impl DensityFact {
    /// Position (1-based) of the output variable in the template.
    pub fn output_position(&self) -> Option<usize> {
        self.template
            .args
            .iter()
            .position(|t| matches!(t, Term::Var(v) if *v == self.output))
            .map(|i| i + 1)
    }
}

pub type PredKey = (String, usize);

/// Continuous-argument signatures for predicates and function symbols.
/// Positions are 1-based; every predicate and functor mentioned in the
/// program has an entry (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignatureTable {
    pub preds: BTreeMap<PredKey, BTreeSet<usize>>,
    pub functors: BTreeMap<PredKey, BTreeSet<usize>>,
}

impl SignatureTable {
    pub fn continuous_positions(&self, pred: &str, arity: usize) -> BTreeSet<usize> {
        self.preds
            .get(&(pred.to_string(), arity))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_continuous(&self, pred: &str, arity: usize, pos: usize) -> bool {
        self.preds
            .get(&(pred.to_string(), arity))
            .map(|s| s.contains(&pos))
            .unwrap_or(false)
    }
}

/// `:- continuous(pred/arity, [positions]).` directive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousDirective {
    pub pred: String,
    pub arity: usize,
    pub positions: BTreeSet<usize>,
    pub span: Span,
}

#[derive(Debug, Clone, Default)]
pub struct Program {
    pub discrete_facts: Vec<DiscreteFact>,
    pub density_facts: Vec<DensityFact>,
    pub clauses: Vec<Clause>,
    pub directives: Vec<ContinuousDirective>,
    pub signatures: SignatureTable,
    /// Source names of all variables, indexed by `VarId`.
    pub var_names: Vec<String>,
    /// Signature-inference conflicts, surfaced by `analysis::validate`.
    pub sig_diagnostics: Vec<crate::analysis::Diagnostic>,
}

impl Program {
    pub fn var_name(&self, v: VarId) -> &str {
        self.var_names.get(v).map(String::as_str).unwrap_or("_G?")
    }

    pub fn is_purely_discrete(&self) -> bool {
        self.density_facts.is_empty()
    }

    pub fn clauses_for(&self, pred: &str, arity: usize) -> Vec<&Clause> {
        self.clauses
            .iter()
            .filter(|c| c.head.pred == pred && c.head.args.len() == arity)
            .collect()
    }

    pub fn discrete_facts_for(&self, pred: &str, arity: usize) -> Vec<(usize, &DiscreteFact)> {
        self.discrete_facts
            .iter()
            .enumerate()
            .filter(|(_, f)| f.template.pred == pred && f.template.args.len() == arity)
            .collect()
    }

    pub fn density_facts_for(&self, pred: &str, arity: usize) -> Vec<(usize, &DensityFact)> {
        self.density_facts
            .iter()
            .enumerate()
            .filter(|(_, f)| f.template.pred == pred && f.template.args.len() == arity)
            .collect()
    }

    pub fn is_discrete_fact_pred(&self, pred: &str, arity: usize) -> bool {
        self.discrete_facts
            .iter()
            .any(|f| f.template.pred == pred && f.template.args.len() == arity)
    }

    pub fn is_density_fact_pred(&self, pred: &str, arity: usize) -> bool {
        self.density_facts
            .iter()
            .any(|f| f.template.pred == pred && f.template.args.len() == arity)
    }

    pub fn is_fact_pred(&self, pred: &str, arity: usize) -> bool {
        self.is_discrete_fact_pred(pred, arity) || self.is_density_fact_pred(pred, arity)
    }

    /// All predicate keys mentioned anywhere in the program.
    pub fn all_pred_keys(&self) -> BTreeSet<PredKey> {
        let mut keys = BTreeSet::new();
        for f in &self.discrete_facts {
            keys.insert(f.template.key());
        }
        for f in &self.density_facts {
            keys.insert(f.template.key());
        }
        for c in &self.clauses {
            keys.insert(c.head.key());
            for l in &c.body {
                if let Literal::Pos(a) | Literal::Neg(a) = l {
                    keys.insert(a.key());
                }
            }
        }
        keys
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
