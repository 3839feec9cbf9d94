//! JSON dump of the syntax tree: every node carries a `kind` tag and its
//! source span.

use serde_json::{json, Value};

use crate::ast::*;
use crate::rational::{format_ratio, to_f64};

fn span_json(s: Span) -> Value {
    json!({ "start": s.start, "end": s.end, "line": s.line, "col": s.col })
}

fn term_json(p: &Program, t: &Term) -> Value {
    match t {
        Term::Var(v) => json!({ "kind": "var", "name": p.var_name(*v), "id": v }),
        Term::Const(Const::Sym(s)) => json!({ "kind": "symbol", "value": s }),
        Term::Const(Const::Int(i)) => json!({ "kind": "int", "value": i }),
        Term::Const(Const::Real(r)) => json!({ "kind": "real", "value": r }),
        Term::App(f, args) => json!({
            "kind": "compound",
            "functor": f,
            "args": args.iter().map(|a| term_json(p, a)).collect::<Vec<_>>(),
        }),
    }
}

fn atom_json(p: &Program, a: &Atom) -> Value {
    json!({
        "kind": "atom",
        "pred": a.pred,
        "arity": a.args.len(),
        "args": a.args.iter().map(|t| term_json(p, t)).collect::<Vec<_>>(),
        "span": span_json(a.span),
    })
}

fn arith_json(p: &Program, e: &ArithExpr) -> Value {
    match e {
        ArithExpr::Int(i) => json!({ "kind": "int", "value": i }),
        ArithExpr::Real(r) => json!({ "kind": "real", "value": r }),
        ArithExpr::Var(v) => json!({ "kind": "var", "name": p.var_name(*v), "id": v }),
        ArithExpr::Neg(inner) => json!({ "kind": "neg", "arg": arith_json(p, inner) }),
        ArithExpr::Bin(op, l, r) => json!({
            "kind": "binop",
            "op": op.symbol(),
            "lhs": arith_json(p, l),
            "rhs": arith_json(p, r),
        }),
    }
}

fn literal_json(p: &Program, l: &Literal) -> Value {
    match l {
        Literal::Pos(a) => json!({ "kind": "pos", "atom": atom_json(p, a), "span": span_json(a.span) }),
        Literal::Neg(a) => json!({ "kind": "neg", "atom": atom_json(p, a), "span": span_json(a.span) }),
        Literal::Cmp { op, lhs, rhs, span } => json!({
            "kind": "comparison",
            "op": op.symbol(),
            "lhs": arith_json(p, lhs),
            "rhs": arith_json(p, rhs),
            "span": span_json(*span),
        }),
        Literal::Def { target, expr, span } => json!({
            "kind": "definition",
            "target": p.var_name(*target),
            "expr": arith_json(p, expr),
            "span": span_json(*span),
        }),
    }
}

pub fn program_to_json(p: &Program) -> Value {
    let signatures: Vec<Value> = p
        .signatures
        .preds
        .iter()
        .map(|((pred, arity), set)| {
            json!({
                "pred": pred,
                "arity": arity,
                "continuous_positions": set.iter().collect::<Vec<_>>(),
            })
        })
        .collect();

    json!({
        "kind": "program",
        "discrete_facts": p.discrete_facts.iter().map(|f| json!({
            "kind": "discrete_fact",
            "probability": format_ratio(&f.prob),
            "probability_float": to_f64(&f.prob),
            "template": atom_json(p, &f.template),
            "span": span_json(f.span),
        })).collect::<Vec<_>>(),
        "density_facts": p.density_facts.iter().map(|f| json!({
            "kind": "density_fact",
            "family": f.family.name(),
            "output": p.var_name(f.output),
            "params": f.params.iter().map(|e| arith_json(p, e)).collect::<Vec<_>>(),
            "template": atom_json(p, &f.template),
            "span": span_json(f.span),
        })).collect::<Vec<_>>(),
        "clauses": p.clauses.iter().map(|c| json!({
            "kind": "clause",
            "head": atom_json(p, &c.head),
            "body": c.body.iter().map(|l| literal_json(p, l)).collect::<Vec<_>>(),
            "span": span_json(c.span),
        })).collect::<Vec<_>>(),
        "signatures": signatures,
    })
}
