//! Source-form printing of programs. `program_to_string` emits text that
//! reparses to a structurally identical program; `canonical_program` is the
//! alpha-renamed form used to compare programs for structural identity.

use std::collections::HashMap;

use crate::ast::*;
use crate::rational::format_ratio;

pub struct Printer<'a> {
    var_names: &'a [String],
    /// Remapping applied to variable names (canonicalization); empty for
    /// plain printing.
    renames: HashMap<VarId, String>,
}

impl<'a> Printer<'a> {
    pub fn new(var_names: &'a [String]) -> Self {
        Printer { var_names, renames: HashMap::new() }
    }

    fn var(&self, v: VarId) -> String {
        if let Some(name) = self.renames.get(&v) {
            return name.clone();
        }
        let name = self.var_names.get(v).map(String::as_str).unwrap_or("_G");
        if name == "_" {
            "_".to_string()
        } else {
            name.to_string()
        }
    }

    pub fn term(&self, t: &Term) -> String {
        match t {
            Term::Var(v) => self.var(*v),
            Term::Const(Const::Sym(s)) => s.clone(),
            Term::Const(Const::Int(i)) => i.to_string(),
            Term::Const(Const::Real(r)) => format_real(*r),
            Term::App(f, args) => {
                let args: Vec<String> = args.iter().map(|a| self.term(a)).collect();
                format!("{}({})", f, args.join(","))
            }
        }
    }

    pub fn atom(&self, a: &Atom) -> String {
        if a.args.is_empty() {
            a.pred.clone()
        } else {
            let args: Vec<String> = a.args.iter().map(|t| self.term(t)).collect();
            format!("{}({})", a.pred, args.join(","))
        }
    }

    pub fn arith(&self, e: &ArithExpr) -> String {
        match e {
            ArithExpr::Int(i) => i.to_string(),
            ArithExpr::Real(r) => format_real(*r),
            ArithExpr::Var(v) => self.var(*v),
            ArithExpr::Neg(inner) => format!("-{}", self.arith_atom(inner)),
            ArithExpr::Bin(op, l, r) => {
                format!("{} {} {}", self.arith_atom(l), op.symbol(), self.arith_atom(r))
            }
        }
    }

    fn arith_atom(&self, e: &ArithExpr) -> String {
        match e {
            ArithExpr::Bin(..) => format!("({})", self.arith(e)),
            _ => self.arith(e),
        }
    }

    pub fn literal(&self, l: &Literal) -> String {
        match l {
            Literal::Pos(a) => self.atom(a),
            Literal::Neg(a) => format!("\\+ {}", self.atom(a)),
            Literal::Cmp { op, lhs, rhs, .. } => {
                format!("{} {} {}", self.arith_atom(lhs), op.symbol(), self.arith_atom(rhs))
            }
            Literal::Def { target, expr, .. } => {
                format!("{} =:= {}", self.var(*target), self.arith(expr))
            }
        }
    }

    pub fn clause(&self, c: &Clause) -> String {
        if c.body.is_empty() {
            format!("{}.", self.atom(&c.head))
        } else {
            let body: Vec<String> = c.body.iter().map(|l| self.literal(l)).collect();
            format!("{} :- {}.", self.atom(&c.head), body.join(", "))
        }
    }

    pub fn discrete_fact(&self, f: &DiscreteFact) -> String {
        format!("{} :: {}.", format_ratio(&f.prob), self.atom(&f.template))
    }

    pub fn density_fact(&self, f: &DensityFact) -> String {
        format!(
            "{} : {}({}, {}, {}).",
            self.atom(&f.template),
            f.family.name(),
            self.var(f.output),
            self.arith(&f.params[0]),
            self.arith(&f.params[1]),
        )
    }
}

fn format_real(r: f64) -> String {
    // Shortest representation that round-trips; keep a decimal point so the
    // literal reparses as a real.
    let s = format!("{r}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

pub fn program_to_string(p: &Program) -> String {
    let printer = Printer::new(&p.var_names);
    let mut out = String::new();
    for d in &p.directives {
        let positions: Vec<String> = d.positions.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            ":- continuous({}/{}, [{}]).\n",
            d.pred,
            d.arity,
            positions.join(",")
        ));
    }
    for f in &p.discrete_facts {
        out.push_str(&printer.discrete_fact(f));
        out.push('\n');
    }
    for f in &p.density_facts {
        out.push_str(&printer.density_fact(f));
        out.push('\n');
    }
    for c in &p.clauses {
        out.push_str(&printer.clause(c));
        out.push('\n');
    }
    out
}

/// Alpha-canonical rendering: variables are renumbered per statement in
/// first-occurrence order, so two parses of the same source compare equal.
pub fn canonical_program(p: &Program) -> String {
    let mut out = String::new();
    for d in &p.directives {
        let positions: Vec<String> = d.positions.iter().map(usize::to_string).collect();
        out.push_str(&format!(
            ":- continuous({}/{}, [{}]).\n",
            d.pred,
            d.arity,
            positions.join(",")
        ));
    }
    for f in &p.discrete_facts {
        let printer = canonical_printer(&p.var_names, f.template.vars().into_iter());
        out.push_str(&printer.discrete_fact(f));
        out.push('\n');
    }
    for f in &p.density_facts {
        let printer = canonical_printer(&p.var_names, f.template.vars().into_iter());
        out.push_str(&printer.density_fact(f));
        out.push('\n');
    }
    for c in &p.clauses {
        let mut vars = Vec::new();
        collect_clause_vars(c, &mut vars);
        let printer = canonical_printer(&p.var_names, vars.into_iter());
        out.push_str(&printer.clause(c));
        out.push('\n');
    }
    out
}

fn collect_clause_vars(c: &Clause, out: &mut Vec<VarId>) {
    fn term_vars(t: &Term, out: &mut Vec<VarId>) {
        match t {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| term_vars(a, out)),
            Term::Const(_) => {}
        }
    }
    fn arith_vars(e: &ArithExpr, out: &mut Vec<VarId>) {
        match e {
            ArithExpr::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            ArithExpr::Neg(i) => arith_vars(i, out),
            ArithExpr::Bin(_, l, r) => {
                arith_vars(l, out);
                arith_vars(r, out);
            }
            _ => {}
        }
    }
    c.head.args.iter().for_each(|t| term_vars(t, out));
    for l in &c.body {
        match l {
            Literal::Pos(a) | Literal::Neg(a) => a.args.iter().for_each(|t| term_vars(t, out)),
            Literal::Cmp { lhs, rhs, .. } => {
                arith_vars(lhs, out);
                arith_vars(rhs, out);
            }
            Literal::Def { target, expr, .. } => {
                if !out.contains(target) {
                    out.push(*target);
                }
                arith_vars(expr, out);
            }
        }
    }
}

fn canonical_printer<'a>(
    var_names: &'a [String],
    vars: impl Iterator<Item = VarId>,
) -> Printer<'a> {
    let mut printer = Printer::new(var_names);
    for (i, v) in vars.enumerate() {
        printer.renames.insert(v, format!("V{i}"));
    }
    printer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_program;

    #[test]
    fn round_trip_is_structurally_identical() {
        let sources = [
            "1/3 :: spades(X).\n1/2 :: clubs(X).\npick(0,spades) :- spades(0).\npick(0,clubs) :- \\+ spades(0), clubs(0).",
            "h : 0.6.\ng(X) : gaussian(X, 0, 1).\nmix(X) :- heads, g(X).\nmix :- mix(X), X > 2.",
            "widget(X) :- machine(M), st(M,Z), pt(Y), X =:= Y + Z.",
            "angle(_,X) : uniform_dens(X,0,6.28).\nq(T) :- angle(T,V), V > 3.14.",
            ":- continuous(q/2, [2]).\na.",
        ];
        for src in sources {
            let p1 = parse_program(src).unwrap();
            let printed = program_to_string(&p1);
            let p2 = parse_program(&printed).unwrap();
            assert_eq!(
                canonical_program(&p1),
                canonical_program(&p2),
                "round trip changed structure for {src}"
            );
        }
    }
}
