//! Signature inference: which argument positions of each predicate and
//! function symbol hold continuous values.
//!
//! Density fact templates fix their own signatures (the output variable and
//! any template variable used inside the parameter expressions are
//! continuous, the remaining positions are term positions), discrete fact
//! templates are all-term, and `:- continuous/2` directives override
//! inference. Everything else is inferred by a monotone fixpoint: a variable
//! bound at a continuous position (or defined via `=:=`) makes every
//! position it occupies in ordinary predicates continuous as well.

use std::collections::{BTreeMap, BTreeSet};

use crate::analysis::{Diagnostic, Rule, Severity};
use crate::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PosState {
    Open,
    /// Inferred continuous (ordinary predicates only).
    Cont,
    /// Fixed by a fact template or directive.
    FixedTerm,
    FixedCont,
}

impl PosState {
    fn is_continuous(self) -> bool {
        matches!(self, PosState::Cont | PosState::FixedCont)
    }
}

struct Tables {
    preds: BTreeMap<PredKey, Vec<PosState>>,
    functors: BTreeMap<PredKey, Vec<PosState>>,
    /// Positions with a symbol/integer/compound occupant somewhere.
    term_evidence: BTreeSet<(PredKey, usize)>,
}

pub fn infer_signatures(program: &Program) -> (SignatureTable, Vec<Diagnostic>) {
    let mut diagnostics = Vec::new();
    let mut tables = Tables {
        preds: BTreeMap::new(),
        functors: BTreeMap::new(),
        term_evidence: BTreeSet::new(),
    };

    for key in program.all_pred_keys() {
        let arity = key.1;
        tables.preds.insert(key, vec![PosState::Open; arity]);
    }
    collect_functors(program, &mut tables);

    seed_fixed(program, &mut tables, &mut diagnostics);
    collect_constant_evidence(program, &mut tables, &mut diagnostics);

    // Propagation fixpoint over clauses.
    loop {
        let mut changed = false;
        for clause in &program.clauses {
            let cont_vars = continuous_vars_with(&tables, program, clause);
            for atom in clause_atoms(clause) {
                let key = atom.key();
                let fact_pred = program.is_fact_pred(&key.0, key.1);
                for (i, arg) in atom.args.iter().enumerate() {
                    if let Term::Var(v) = arg {
                        if cont_vars.contains(v) && !fact_pred {
                            changed |= mark_cont(&mut tables.preds, &key, i);
                        }
                    }
                    changed |= mark_compound_cont(&mut tables.functors, arg, &cont_vars);
                }
            }
        }
        if !changed {
            break;
        }
    }

    // A position cannot both carry term-shaped occupants and be continuous.
    for (key, states) in &tables.preds {
        for (i, st) in states.iter().enumerate() {
            if *st == PosState::Cont && tables.term_evidence.contains(&(key.clone(), i)) {
                diagnostics.push(Diagnostic::new(
                    Rule::SigConflict,
                    Severity::Error,
                    Span::default(),
                    format!(
                        "argument {} of {}/{} is used both as a term and as a continuous value",
                        i + 1,
                        key.0,
                        key.1
                    ),
                ));
            }
        }
    }

    let mut table = SignatureTable::default();
    for (key, states) in tables.preds {
        let set: BTreeSet<usize> = states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_continuous())
            .map(|(i, _)| i + 1)
            .collect();
        table.preds.insert(key, set);
    }
    for (key, states) in tables.functors {
        let set: BTreeSet<usize> = states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_continuous())
            .map(|(i, _)| i + 1)
            .collect();
        table.functors.insert(key, set);
    }
    (table, diagnostics)
}

/// Variables of `clause` that hold continuous values under `table`: bound at
/// a continuous argument position in the body, defined by `=:=`, or nested at
/// a continuous functor position.
pub fn continuous_vars(table: &SignatureTable, program: &Program, clause: &Clause) -> BTreeSet<VarId> {
    let mut out = BTreeSet::new();
    loop {
        let mut changed = false;
        for lit in &clause.body {
            match lit {
                Literal::Pos(atom) | Literal::Neg(atom) => {
                    let key = atom.key();
                    for (i, arg) in atom.args.iter().enumerate() {
                        if let Term::Var(v) = arg {
                            if table.is_continuous(&key.0, key.1, i + 1) && out.insert(*v) {
                                changed = true;
                            }
                        }
                        changed |= functor_continuous_vars(&table.functors, arg, &mut out);
                    }
                }
                Literal::Def { target, .. } => {
                    if out.insert(*target) {
                        changed = true;
                    }
                }
                Literal::Cmp { .. } => {}
            }
        }
        if !changed {
            return out;
        }
    }
}

fn functor_continuous_vars(
    functors: &BTreeMap<PredKey, BTreeSet<usize>>,
    term: &Term,
    out: &mut BTreeSet<VarId>,
) -> bool {
    let mut changed = false;
    if let Term::App(name, args) = term {
        let key = (name.clone(), args.len());
        let cont = functors.get(&key);
        for (i, arg) in args.iter().enumerate() {
            if let Term::Var(v) = arg {
                if cont.map(|s| s.contains(&(i + 1))).unwrap_or(false) && out.insert(*v) {
                    changed = true;
                }
            }
            changed |= functor_continuous_vars(functors, arg, out);
        }
    }
    changed
}

fn continuous_vars_with(tables: &Tables, _program: &Program, clause: &Clause) -> BTreeSet<VarId> {
    let mut out = BTreeSet::new();
    loop {
        let mut changed = false;
        for lit in &clause.body {
            match lit {
                Literal::Pos(atom) | Literal::Neg(atom) => {
                    let key = atom.key();
                    let states = tables.preds.get(&key);
                    for (i, arg) in atom.args.iter().enumerate() {
                        if let Term::Var(v) = arg {
                            let cont = states
                                .and_then(|s| s.get(i))
                                .map(|s| s.is_continuous())
                                .unwrap_or(false);
                            if cont && out.insert(*v) {
                                changed = true;
                            }
                        }
                        changed |= nested_continuous_vars(&tables.functors, arg, &mut out);
                    }
                }
                Literal::Def { target, .. } => {
                    if out.insert(*target) {
                        changed = true;
                    }
                }
                Literal::Cmp { .. } => {}
            }
        }
        if !changed {
            return out;
        }
    }
}

fn nested_continuous_vars(
    functors: &BTreeMap<PredKey, Vec<PosState>>,
    term: &Term,
    out: &mut BTreeSet<VarId>,
) -> bool {
    let mut changed = false;
    if let Term::App(name, args) = term {
        let key = (name.clone(), args.len());
        let states = functors.get(&key);
        for (i, arg) in args.iter().enumerate() {
            if let Term::Var(v) = arg {
                let cont = states
                    .and_then(|s| s.get(i))
                    .map(|s| s.is_continuous())
                    .unwrap_or(false);
                if cont && out.insert(*v) {
                    changed = true;
                }
            }
            changed |= nested_continuous_vars(functors, arg, out);
        }
    }
    changed
}

fn clause_atoms(clause: &Clause) -> Vec<&Atom> {
    let mut atoms = vec![&clause.head];
    for lit in &clause.body {
        if let Literal::Pos(a) | Literal::Neg(a) = lit {
            atoms.push(a);
        }
    }
    atoms
}

fn mark_cont(preds: &mut BTreeMap<PredKey, Vec<PosState>>, key: &PredKey, i: usize) -> bool {
    if let Some(states) = preds.get_mut(key) {
        if let Some(st) = states.get_mut(i) {
            if *st == PosState::Open {
                *st = PosState::Cont;
                return true;
            }
        }
    }
    false
}

fn mark_compound_cont(
    functors: &mut BTreeMap<PredKey, Vec<PosState>>,
    term: &Term,
    cont_vars: &BTreeSet<VarId>,
) -> bool {
    let mut changed = false;
    if let Term::App(name, args) = term {
        let key = (name.clone(), args.len());
        for (i, arg) in args.iter().enumerate() {
            if let Term::Var(v) = arg {
                if cont_vars.contains(v) {
                    changed |= mark_cont(functors, &key, i);
                }
            }
            changed |= mark_compound_cont(functors, arg, cont_vars);
        }
    }
    changed
}

fn seed_fixed(program: &Program, tables: &mut Tables, diagnostics: &mut Vec<Diagnostic>) {
    for fact in &program.discrete_facts {
        let key = fact.template.key();
        if let Some(states) = tables.preds.get_mut(&key) {
            for st in states.iter_mut() {
                *st = PosState::FixedTerm;
            }
        }
    }

    for fact in &program.density_facts {
        let key = fact.template.key();
        let mut param_vars = BTreeSet::new();
        for p in &fact.params {
            p.vars(&mut param_vars);
        }
        if let Some(states) = tables.preds.get_mut(&key) {
            for (i, arg) in fact.template.args.iter().enumerate() {
                let continuous = match arg {
                    Term::Var(v) => *v == fact.output || param_vars.contains(v),
                    Term::Const(Const::Real(_)) => true,
                    _ => false,
                };
                states[i] = if continuous { PosState::FixedCont } else { PosState::FixedTerm };
            }
        }
    }

    for dir in &program.directives {
        let key = (dir.pred.clone(), dir.arity);
        let states = tables
            .preds
            .entry(key.clone())
            .or_insert_with(|| vec![PosState::Open; dir.arity]);
        for (i, st) in states.iter_mut().enumerate() {
            let declared_cont = dir.positions.contains(&(i + 1));
            let new = if declared_cont { PosState::FixedCont } else { PosState::FixedTerm };
            if matches!(st, PosState::FixedCont | PosState::FixedTerm) && *st != new {
                diagnostics.push(Diagnostic::new(
                    Rule::SigConflict,
                    Severity::Error,
                    dir.span,
                    format!(
                        "continuous/2 directive for {}/{} contradicts the signature fixed by a fact template at argument {}",
                        dir.pred,
                        dir.arity,
                        i + 1
                    ),
                ));
            }
            *st = new;
        }
    }
}

fn collect_constant_evidence(program: &Program, tables: &mut Tables, _diags: &mut Vec<Diagnostic>) {
    let mut visit_atom = |atom: &Atom, tables: &mut Tables| {
        let key = atom.key();
        for (i, arg) in atom.args.iter().enumerate() {
            match arg {
                Term::Const(Const::Sym(_)) | Term::Const(Const::Int(_)) | Term::App(..) => {
                    tables.term_evidence.insert((key.clone(), i));
                }
                Term::Const(Const::Real(_)) => {
                    // A real constant in an argument position makes the
                    // position continuous unless a fact template fixed it.
                    mark_cont(&mut tables.preds, &key, i);
                }
                Term::Var(_) => {}
            }
            constant_evidence_in_term(arg, &mut tables.functors, &mut tables.term_evidence);
        }
    };

    for clause in &program.clauses {
        visit_atom(&clause.head, tables);
        for lit in &clause.body {
            if let Literal::Pos(a) | Literal::Neg(a) = lit {
                visit_atom(a, tables);
            }
        }
    }
}

fn constant_evidence_in_term(
    term: &Term,
    functors: &mut BTreeMap<PredKey, Vec<PosState>>,
    term_evidence: &mut BTreeSet<(PredKey, usize)>,
) {
    if let Term::App(name, args) = term {
        let key = (name.clone(), args.len());
        for (i, arg) in args.iter().enumerate() {
            match arg {
                Term::Const(Const::Real(_)) => {
                    mark_cont(functors, &key, i);
                }
                Term::Const(_) | Term::App(..) => {
                    term_evidence.insert((key.clone(), i));
                }
                Term::Var(_) => {}
            }
            constant_evidence_in_term(arg, functors, term_evidence);
        }
    }
}

fn collect_functors(program: &Program, tables: &mut Tables) {
    fn walk(term: &Term, out: &mut BTreeMap<PredKey, Vec<PosState>>) {
        if let Term::App(name, args) = term {
            out.entry((name.clone(), args.len()))
                .or_insert_with(|| vec![PosState::Open; args.len()]);
            for a in args {
                walk(a, out);
            }
        }
    }
    let mut visit_atom = |atom: &Atom, out: &mut BTreeMap<PredKey, Vec<PosState>>| {
        for a in &atom.args {
            walk(a, out);
        }
    };
    for f in &program.discrete_facts {
        visit_atom(&f.template, &mut tables.functors);
    }
    for f in &program.density_facts {
        visit_atom(&f.template, &mut tables.functors);
    }
    for c in &program.clauses {
        visit_atom(&c.head, &mut tables.functors);
        for l in &c.body {
            if let Literal::Pos(a) | Literal::Neg(a) = l {
                visit_atom(a, &mut tables.functors);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::frontend::parse_program;

    fn positions(program: &str, pred: &str, arity: usize) -> Vec<usize> {
        let p = parse_program(program).unwrap();
        p.signatures
            .continuous_positions(pred, arity)
            .into_iter()
            .collect()
    }

    const WIDGET: &str = "
        machine(a) : 0.3.
        machine(b) :- \\+ machine(a).
        st(a,Z) : gaussian(Z, 2, 1).
        st(b,Z) : gaussian(Z, 3, 1).
        pt(Y) : gaussian(Y, 0.5, 1.5).
        widget(X) :- machine(M), st(M,Z), pt(Y), X =:= Y + Z.
        ok_widget :- widget(X), X > 1.0.
    ";

    #[test]
    fn widget_signatures() {
        assert_eq!(positions(WIDGET, "st", 2), vec![2]);
        assert_eq!(positions(WIDGET, "pt", 1), vec![1]);
        assert_eq!(positions(WIDGET, "widget", 1), vec![1]);
        assert_eq!(positions(WIDGET, "machine", 1), Vec::<usize>::new());
    }

    const WHEEL: &str = "
        1/3 :: spades(_).
        1/2 :: clubs(_).
        angle(_,X) : uniform_dens(X,0,6.28).
        pick(0,spades) :- spades(0), angle(0,V), V > 3.14.
        pick(0,clubs) :- \\+ spades(0), clubs(0), angle(0,V), V > 3.14.
        pick(0,hearts) :- \\+ spades(0), \\+ clubs(0), angle(0,V), V > 3.14.
    ";

    #[test]
    fn wheel_signatures() {
        assert_eq!(positions(WHEEL, "angle", 2), vec![2]);
        assert_eq!(positions(WHEEL, "pick", 2), Vec::<usize>::new());
        assert_eq!(positions(WHEEL, "spades", 1), Vec::<usize>::new());
    }

    #[test]
    fn purely_discrete_program_is_all_term() {
        let p = parse_program("1/3 :: spades(X). pick(0,spades) :- spades(0).").unwrap();
        for (_, set) in p.signatures.preds.iter() {
            assert!(set.is_empty());
        }
    }

    #[test]
    fn density_parameter_positions_are_continuous() {
        let prog = "
            mean(M) : gaussian(M,1,5).
            value(_,M,X) : gaussian(X,M,2).
            value(I,X) :- mean(M), value(I,M,X).
        ";
        assert_eq!(positions(prog, "value", 3), vec![2, 3]);
        assert_eq!(positions(prog, "value", 2), vec![2]);
        assert_eq!(positions(prog, "mean", 1), vec![1]);
    }

    #[test]
    fn every_mentioned_predicate_has_an_entry() {
        let p = parse_program(WIDGET).unwrap();
        for key in p.all_pred_keys() {
            assert!(p.signatures.preds.contains_key(&key), "missing entry for {key:?}");
        }
    }

    #[test]
    fn inference_is_idempotent() {
        let p1 = parse_program(WIDGET).unwrap();
        let (again, diags) = super::infer_signatures(&p1);
        assert_eq!(p1.signatures, again);
        assert!(diags.is_empty());
    }

    #[test]
    fn conflict_is_reported() {
        let p = parse_program("g(X) : gaussian(X,0,1). p(X) :- g(X). p(a).").unwrap();
        assert!(
            p.sig_diagnostics.iter().any(|d| d.message.contains("p/1")),
            "expected a signature conflict, got {:?}",
            p.sig_diagnostics
        );
    }

    #[test]
    fn directive_overrides_inference() {
        let p = parse_program(":- continuous(q/2, [2]). p :- q(a, V), V > 1.").unwrap();
        assert_eq!(
            p.signatures.continuous_positions("q", 2),
            [2].into_iter().collect()
        );
    }
}
