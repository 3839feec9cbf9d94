//! Recursive-descent parser for hybrid probabilistic logic programs.
//!
//! Accepted statement forms:
//!
//! ```text
//! 1/3 :: spades(X).                     % ProbLog-style discrete fact
//! machine(a) : 0.3.                     % cplint-style discrete fact
//! g(X) : gaussian(X, 0, 1).             % density fact (mean, variance)
//! angle(_, X) : uniform_dens(X, 0, 6.28).
//! head :- lit, \+ lit, X =:= Y + Z, V > 3.14.
//! head.
//! :- continuous(pred/2, [2]).           % signature override directive
//! ```
//!
//! Probabilities parse to exact rationals. Clause body order is preserved.
//! Anonymous `_` variables are renamed apart per occurrence.

use std::collections::BTreeSet;
use std::collections::HashMap;

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

use crate::ast::*;
use crate::error::ParseError;
use crate::rational::{format_ratio, parse_rational_text};

use super::lexer::{tokenize, Token, TokenKind};
use super::signatures;

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, var_names: Vec::new() };
    let mut program = Program::default();

    while !parser.at_end() {
        parser.parse_item(&mut program)?;
    }

    program.var_names = parser.var_names;
    check_fact_tables(&program)?;

    let (signatures, sig_diagnostics) = signatures::infer_signatures(&program);
    program.signatures = signatures;
    program.sig_diagnostics = sig_diagnostics;
    Ok(program)
}

/// Parses a query entered on the command line: a comma-separated conjunction
/// of literals without the trailing dot.
pub fn parse_query(program: &Program, text: &str) -> Result<(Vec<Literal>, Vec<String>), ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        var_names: program.var_names.clone(),
    };
    let mut scope = HashMap::new();
    let mut literals = vec![parser.parse_literal(&mut scope)?];
    while parser.eat(&TokenKind::Comma) {
        literals.push(parser.parse_literal(&mut scope)?);
    }
    if !parser.at_end() {
        let (line, col) = parser.here();
        return Err(ParseError::new("unexpected input after query", line, col));
    }
    Ok((literals, parser.var_names))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    var_names: Vec<String>,
}

type Scope = HashMap<String, VarId>;

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, off: usize) -> Option<&TokenKind> {
        self.tokens.get(self.pos + off).map(|t| &t.kind)
    }

    fn here(&self) -> (u32, u32) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.span.line, t.span.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.span.line, t.span.col))
                .unwrap_or((1, 1)),
        }
    }

    fn span_here(&self) -> Span {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|t| t.span)
            .unwrap_or_default()
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        if self.peek() == Some(kind) {
            Ok(self.bump().unwrap())
        } else {
            let (line, col) = self.here();
            Err(ParseError::new(
                format!("expected {what}, found {}", self.describe_current()),
                line,
                col,
            ))
        }
    }

    fn describe_current(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(TokenKind::Atom(a)) => format!("`{a}`"),
            Some(TokenKind::Var(v)) => format!("variable `{v}`"),
            Some(TokenKind::Int(i)) => format!("`{i}`"),
            Some(TokenKind::Real { lexeme, .. }) => format!("`{lexeme}`"),
            Some(TokenKind::Rat { num, den }) => format!("`{num}/{den}`"),
            Some(other) => format!("{other:?}"),
        }
    }

    fn fresh_var(&mut self, name: &str) -> VarId {
        let id = self.var_names.len();
        self.var_names.push(name.to_string());
        id
    }

    fn lookup_var(&mut self, scope: &mut Scope, name: &str) -> VarId {
        if name == "_" {
            return self.fresh_var("_");
        }
        if let Some(&id) = scope.get(name) {
            return id;
        }
        let id = self.fresh_var(name);
        scope.insert(name.to_string(), id);
        id
    }

    fn parse_item(&mut self, program: &mut Program) -> Result<(), ParseError> {
        if self.eat(&TokenKind::ColonDash) {
            return self.parse_directive(program);
        }

        // ProbLog form: `p :: template.`
        if self.starts_number() {
            let start = self.span_here();
            let prob = self.parse_probability()?;
            self.expect(&TokenKind::DoubleColon, "`::` after probability")?;
            let mut scope = Scope::new();
            let template = self.parse_atom(&mut scope)?;
            let end = self.expect(&TokenKind::Dot, "`.` after fact")?;
            program.discrete_facts.push(DiscreteFact {
                template,
                prob,
                span: join(start, end.span),
            });
            return Ok(());
        }

        let start = self.span_here();
        let mut scope = Scope::new();
        let head = self.parse_atom(&mut scope)?;

        match self.peek() {
            Some(TokenKind::Dot) => {
                let end = self.bump().unwrap();
                program.clauses.push(Clause {
                    head,
                    body: Vec::new(),
                    span: join(start, end.span),
                });
                Ok(())
            }
            Some(TokenKind::ColonDash) => {
                self.bump();
                let mut body = vec![self.parse_literal(&mut scope)?];
                while self.eat(&TokenKind::Comma) {
                    body.push(self.parse_literal(&mut scope)?);
                }
                let end = self.expect(&TokenKind::Dot, "`.` after clause body")?;
                program.clauses.push(Clause { head, body, span: join(start, end.span) });
                Ok(())
            }
            Some(TokenKind::Colon) => {
                self.bump();
                if self.starts_number() {
                    // cplint form: `template : p.`
                    let prob = self.parse_probability()?;
                    let end = self.expect(&TokenKind::Dot, "`.` after fact")?;
                    program.discrete_facts.push(DiscreteFact {
                        template: head,
                        prob,
                        span: join(start, end.span),
                    });
                    Ok(())
                } else {
                    let fact = self.parse_density(head, &mut scope, start)?;
                    program.density_facts.push(fact);
                    Ok(())
                }
            }
            _ => {
                let (line, col) = self.here();
                Err(ParseError::new(
                    format!(
                        "expected `.`, `:-`, or `:` after atom, found {}",
                        self.describe_current()
                    ),
                    line,
                    col,
                ))
            }
        }
    }

    fn parse_directive(&mut self, program: &mut Program) -> Result<(), ParseError> {
        let start = self.span_here();
        let (line, col) = self.here();
        let name = match self.bump().map(|t| t.kind) {
            Some(TokenKind::Atom(n)) => n,
            _ => return Err(ParseError::new("expected directive name after `:-`", line, col)),
        };
        if name != "continuous" {
            return Err(ParseError::new(
                format!("unknown directive `{name}`; only `continuous/2` is supported"),
                line,
                col,
            ));
        }
        self.expect(&TokenKind::LParen, "`(`")?;
        let (pline, pcol) = self.here();
        let pred = match self.bump().map(|t| t.kind) {
            Some(TokenKind::Atom(p)) => p,
            _ => return Err(ParseError::new("expected predicate name", pline, pcol)),
        };
        self.expect(&TokenKind::Slash, "`/` in predicate indicator")?;
        let arity = self.parse_small_uint("arity")?;
        self.expect(&TokenKind::Comma, "`,`")?;
        self.expect(&TokenKind::LBracket, "`[`")?;
        let mut positions = BTreeSet::new();
        if self.peek() != Some(&TokenKind::RBracket) {
            positions.insert(self.parse_small_uint("argument position")?);
            while self.eat(&TokenKind::Comma) {
                positions.insert(self.parse_small_uint("argument position")?);
            }
        }
        self.expect(&TokenKind::RBracket, "`]`")?;
        self.expect(&TokenKind::RParen, "`)`")?;
        let end = self.expect(&TokenKind::Dot, "`.` after directive")?;

        for &p in &positions {
            if p == 0 || p > arity {
                return Err(ParseError::new(
                    format!("position {p} is outside 1..={arity} for {pred}/{arity}"),
                    line,
                    col,
                ));
            }
        }
        program.directives.push(ContinuousDirective {
            pred,
            arity,
            positions,
            span: join(start, end.span),
        });
        Ok(())
    }

    fn parse_small_uint(&mut self, what: &str) -> Result<usize, ParseError> {
        let (line, col) = self.here();
        match self.bump().map(|t| t.kind) {
            Some(TokenKind::Int(i)) if i >= 0 => Ok(i as usize),
            _ => Err(ParseError::new(format!("expected {what}"), line, col)),
        }
    }

    fn starts_number(&self) -> bool {
        matches!(
            self.peek(),
            Some(TokenKind::Int(_)) | Some(TokenKind::Real { .. }) | Some(TokenKind::Rat { .. })
        )
    }

    fn parse_probability(&mut self) -> Result<BigRational, ParseError> {
        let (line, col) = self.here();
        let value = match self.bump().map(|t| t.kind) {
            Some(TokenKind::Int(i)) => BigRational::from(BigInt::from(i)),
            Some(TokenKind::Real { lexeme, .. }) => parse_rational_text(&lexeme)
                .ok_or_else(|| ParseError::new(format!("malformed probability `{lexeme}`"), line, col))?,
            Some(TokenKind::Rat { num, den }) => {
                let n: BigInt = num
                    .parse()
                    .map_err(|_| ParseError::new("malformed numerator", line, col))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| ParseError::new("malformed denominator", line, col))?;
                if d.is_zero() {
                    return Err(ParseError::new("zero denominator in probability", line, col));
                }
                BigRational::new(n, d)
            }
            _ => return Err(ParseError::new("expected a probability", line, col)),
        };
        if value <= BigRational::zero() || value > BigRational::one() {
            return Err(ParseError::new(
                format!("probability {} is outside (0, 1]", format_ratio(&value)),
                line,
                col,
            ));
        }
        Ok(value)
    }

    fn parse_density(
        &mut self,
        template: Atom,
        scope: &mut Scope,
        start: Span,
    ) -> Result<DensityFact, ParseError> {
        let (line, col) = self.here();
        let family = match self.bump().map(|t| t.kind) {
            Some(TokenKind::Atom(name)) => match name.as_str() {
                "gaussian" => DensityFamily::Gaussian,
                "uniform_dens" => DensityFamily::UniformDens,
                other => {
                    return Err(ParseError::new(
                        format!("unknown density family `{other}`; expected gaussian or uniform_dens"),
                        line,
                        col,
                    ))
                }
            },
            _ => {
                return Err(ParseError::new(
                    "expected a probability or density after `:`",
                    line,
                    col,
                ))
            }
        };
        self.expect(&TokenKind::LParen, "`(`")?;
        let (vline, vcol) = self.here();
        let output = match self.bump().map(|t| t.kind) {
            Some(TokenKind::Var(name)) if name != "_" => {
                scope.get(&name).copied().ok_or_else(|| {
                    ParseError::new(
                        format!("density output variable {name} does not occur in the fact template"),
                        vline,
                        vcol,
                    )
                })?
            }
            _ => {
                return Err(ParseError::new(
                    "density output must be a named variable from the template",
                    vline,
                    vcol,
                ))
            }
        };
        self.expect(&TokenKind::Comma, "`,`")?;
        let p1 = self.parse_arith(scope)?;
        self.expect(&TokenKind::Comma, "`,`")?;
        let p2 = self.parse_arith(scope)?;
        self.expect(&TokenKind::RParen, "`)`")?;
        let end = self.expect(&TokenKind::Dot, "`.` after density fact")?;

        Ok(DensityFact {
            template,
            family,
            output,
            params: [p1, p2],
            span: join(start, end.span),
        })
    }

    fn parse_atom(&mut self, scope: &mut Scope) -> Result<Atom, ParseError> {
        let start = self.span_here();
        let (line, col) = self.here();
        let pred = match self.bump().map(|t| t.kind) {
            Some(TokenKind::Atom(name)) => name,
            _ => {
                return Err(ParseError::new(
                    format!("expected a predicate name, found {}", self.describe_current()),
                    line,
                    col,
                ))
            }
        };
        let mut args = Vec::new();
        let mut end = start;
        if self.peek() == Some(&TokenKind::LParen) {
            self.bump();
            args.push(self.parse_term(scope)?);
            while self.eat(&TokenKind::Comma) {
                args.push(self.parse_term(scope)?);
            }
            end = self.expect(&TokenKind::RParen, "`)`")?.span;
        }
        Ok(Atom { pred, args, span: join(start, end) })
    }

    fn parse_term(&mut self, scope: &mut Scope) -> Result<Term, ParseError> {
        let (line, col) = self.here();
        match self.bump().map(|t| t.kind) {
            Some(TokenKind::Var(name)) => Ok(Term::Var(self.lookup_var(scope, &name))),
            Some(TokenKind::Int(i)) => Ok(Term::Const(Const::Int(i))),
            Some(TokenKind::Real { value, .. }) => Ok(Term::Const(Const::Real(value))),
            Some(TokenKind::Rat { num, den }) => {
                let n: f64 = num.parse().unwrap_or(f64::NAN);
                let d: f64 = den.parse().unwrap_or(f64::NAN);
                Ok(Term::Const(Const::Real(n / d)))
            }
            Some(TokenKind::Minus) => {
                let (nline, ncol) = self.here();
                match self.bump().map(|t| t.kind) {
                    Some(TokenKind::Int(i)) => Ok(Term::Const(Const::Int(-i))),
                    Some(TokenKind::Real { value, .. }) => Ok(Term::Const(Const::Real(-value))),
                    _ => Err(ParseError::new("expected a number after `-`", nline, ncol)),
                }
            }
            Some(TokenKind::Atom(name)) => {
                if self.peek() == Some(&TokenKind::LParen) {
                    self.bump();
                    let mut args = vec![self.parse_term(scope)?];
                    while self.eat(&TokenKind::Comma) {
                        args.push(self.parse_term(scope)?);
                    }
                    self.expect(&TokenKind::RParen, "`)`")?;
                    Ok(Term::App(name, args))
                } else {
                    Ok(Term::Const(Const::Sym(name)))
                }
            }
            _ => Err(ParseError::new(
                format!("expected a term, found {}", self.describe_current()),
                line,
                col,
            )),
        }
    }

    fn parse_literal(&mut self, scope: &mut Scope) -> Result<Literal, ParseError> {
        let start = self.span_here();
        if self.eat(&TokenKind::Naf) {
            let atom = self.parse_atom(scope)?;
            return Ok(Literal::Neg(atom));
        }

        match self.peek() {
            // `X =:= expr` or an arithmetic comparison starting with a variable.
            Some(TokenKind::Var(_)) if self.peek_at(1) == Some(&TokenKind::EqColonEq) => {
                let name = match self.bump().map(|t| t.kind) {
                    Some(TokenKind::Var(n)) => n,
                    _ => unreachable!(),
                };
                let target = self.lookup_var(scope, &name);
                self.bump(); // =:=
                let expr = self.parse_arith(scope)?;
                Ok(Literal::Def { target, expr, span: join(start, self.prev_span()) })
            }
            Some(TokenKind::Var(_))
            | Some(TokenKind::Int(_))
            | Some(TokenKind::Real { .. })
            | Some(TokenKind::Rat { .. })
            | Some(TokenKind::LParen)
            | Some(TokenKind::Minus) => {
                let lhs = self.parse_arith(scope)?;
                let (line, col) = self.here();
                let op = match self.bump().map(|t| t.kind) {
                    Some(TokenKind::Lt) => CmpOp::Lt,
                    Some(TokenKind::Gt) => CmpOp::Gt,
                    Some(TokenKind::Le) => CmpOp::Le,
                    Some(TokenKind::Ge) => CmpOp::Ge,
                    Some(TokenKind::EqColonEq) => {
                        return Err(ParseError::new(
                            "left side of =:= must be a single variable",
                            line,
                            col,
                        ))
                    }
                    _ => {
                        return Err(ParseError::new(
                            format!(
                                "expected a comparison operator (<, >, =<, >=), found {}",
                                self.describe_current()
                            ),
                            line,
                            col,
                        ))
                    }
                };
                let rhs = self.parse_arith(scope)?;
                Ok(Literal::Cmp { op, lhs, rhs, span: join(start, self.prev_span()) })
            }
            Some(TokenKind::Atom(_)) => {
                let atom = self.parse_atom(scope)?;
                Ok(Literal::Pos(atom))
            }
            _ => {
                let (line, col) = self.here();
                Err(ParseError::new(
                    format!("expected a body literal, found {}", self.describe_current()),
                    line,
                    col,
                ))
            }
        }
    }

    fn prev_span(&self) -> Span {
        self.tokens
            .get(self.pos.saturating_sub(1))
            .map(|t| t.span)
            .unwrap_or_default()
    }

    fn parse_arith(&mut self, scope: &mut Scope) -> Result<ArithExpr, ParseError> {
        let mut lhs = self.parse_arith_term(scope)?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Plus) => ArithOp::Add,
                Some(TokenKind::Minus) => ArithOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.parse_arith_term(scope)?;
            lhs = ArithExpr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_arith_term(&mut self, scope: &mut Scope) -> Result<ArithExpr, ParseError> {
        let mut lhs = self.parse_arith_factor(scope)?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Star) => ArithOp::Mul,
                Some(TokenKind::Slash) => ArithOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.parse_arith_factor(scope)?;
            lhs = ArithExpr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_arith_factor(&mut self, scope: &mut Scope) -> Result<ArithExpr, ParseError> {
        let (line, col) = self.here();
        match self.bump().map(|t| t.kind) {
            Some(TokenKind::Int(i)) => Ok(ArithExpr::Int(i)),
            Some(TokenKind::Real { value, .. }) => Ok(ArithExpr::Real(value)),
            Some(TokenKind::Rat { num, den }) => {
                let n: f64 = num.parse().unwrap_or(f64::NAN);
                let d: f64 = den.parse().unwrap_or(f64::NAN);
                Ok(ArithExpr::Real(n / d))
            }
            Some(TokenKind::Var(name)) => Ok(ArithExpr::Var(self.lookup_var(scope, &name))),
            Some(TokenKind::Minus) => {
                let inner = self.parse_arith_factor(scope)?;
                Ok(ArithExpr::Neg(Box::new(inner)))
            }
            Some(TokenKind::LParen) => {
                let inner = self.parse_arith(scope)?;
                self.expect(&TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(ParseError::new(
                format!("expected an arithmetic expression, found {}", self.describe_current()),
                line,
                col,
            )),
        }
    }
}

fn join(a: Span, b: Span) -> Span {
    Span::new(a.start, b.end.max(a.end), a.line, a.col)
}

/// Post-parse consistency of the fact tables: no predicate may be annotated
/// both discretely and with a density, and re-annotating the same template
/// with a different probability is an error.
fn check_fact_tables(program: &Program) -> Result<(), ParseError> {
    let mut seen: HashMap<String, (&DiscreteFact, String)> = HashMap::new();
    for fact in &program.discrete_facts {
        let pattern = template_pattern(&fact.template);
        if let Some((first, _)) = seen.get(&pattern) {
            if first.prob != fact.prob {
                return Err(ParseError::new(
                    format!(
                        "contradictory probability annotations for {}: {} vs {}",
                        pattern,
                        format_ratio(&first.prob),
                        format_ratio(&fact.prob)
                    ),
                    fact.span.line,
                    fact.span.col,
                ));
            }
            return Err(ParseError::new(
                format!("duplicate fact annotation for {pattern}"),
                fact.span.line,
                fact.span.col,
            ));
        }
        seen.insert(pattern.clone(), (fact, pattern));
    }

    for fact in &program.density_facts {
        let key = (fact.template.pred.clone(), fact.template.args.len());
        if program.is_discrete_fact_pred(&key.0, key.1) {
            return Err(ParseError::new(
                format!("{}/{} is defined both as a discrete and a density fact", key.0, key.1),
                fact.span.line,
                fact.span.col,
            ));
        }
    }
    Ok(())
}

/// Canonical pattern of a fact template with variables numbered by first
/// occurrence, used to detect duplicate annotations.
fn template_pattern(atom: &Atom) -> String {
    fn go(t: &Term, map: &mut HashMap<VarId, usize>, out: &mut String) {
        match t {
            Term::Var(v) => {
                let n = map.len();
                let id = *map.entry(*v).or_insert(n);
                out.push_str(&format!("_{id}"));
            }
            Term::Const(Const::Sym(s)) => out.push_str(s),
            Term::Const(Const::Int(i)) => out.push_str(&i.to_string()),
            Term::Const(Const::Real(r)) => out.push_str(&r.to_string()),
            Term::App(f, args) => {
                out.push_str(f);
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    go(a, map, out);
                }
                out.push(')');
            }
        }
    }
    let mut out = atom.pred.clone();
    let mut map = HashMap::new();
    if !atom.args.is_empty() {
        out.push('(');
        for (i, a) in atom.args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            go(a, &mut map, &mut out);
        }
        out.push(')');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    const MIXTURE: &str = "
        h : 0.6.
        heads :- h.
        tails :- \\+ h.
        g(X) : gaussian(X, 0, 1).
        h(X) : gaussian(X, 5, 2).
        mix(X) :- heads, g(X).
        mix(X) :- tails, h(X).
        mix :- mix(X), X > 2.
    ";

    #[test]
    fn mixture_program_shape() {
        let p = parse_program(MIXTURE).unwrap();
        assert_eq!(p.discrete_facts.len(), 1);
        assert_eq!(p.discrete_facts[0].template.pred, "h");
        assert_eq!(p.discrete_facts[0].prob, ratio(3, 5));
        assert_eq!(p.density_facts.len(), 2);
        assert_eq!(p.clauses.len(), 5);
    }

    #[test]
    fn single_ground_fact() {
        let p = parse_program("a.").unwrap();
        assert_eq!(p.clauses.len(), 1);
        assert!(p.clauses[0].body.is_empty());
        assert!(p.discrete_facts.is_empty());
        assert!(p.density_facts.is_empty());
    }

    #[test]
    fn widget_definition_literal() {
        let p = parse_program("widget(X) :- machine(M), st(M,Z), pt(Y), X =:= Y + Z.").unwrap();
        let clause = &p.clauses[0];
        assert_eq!(clause.body.len(), 4);
        match &clause.body[3] {
            Literal::Def { expr, .. } => match expr {
                ArithExpr::Bin(ArithOp::Add, _, _) => {}
                other => panic!("expected Y + Z, got {other:?}"),
            },
            other => panic!("expected definition literal, got {other:?}"),
        }
    }

    #[test]
    fn both_discrete_forms_agree() {
        let a = parse_program("0.3 :: machine(a).").unwrap();
        let b = parse_program("machine(a) : 0.3.").unwrap();
        assert_eq!(a.discrete_facts[0].prob, b.discrete_facts[0].prob);
        assert_eq!(a.discrete_facts[0].template.pred, b.discrete_facts[0].template.pred);
    }

    #[test]
    fn anonymous_variables_are_renamed_apart() {
        let p = parse_program("q :- r(_, _).").unwrap();
        match &p.clauses[0].body[0] {
            Literal::Pos(atom) => {
                let vars = atom.vars();
                assert_eq!(vars.len(), 2, "each `_` must be a distinct variable");
            }
            _ => panic!(),
        }
    }

    #[test]
    fn contradictory_annotation_rejected() {
        let err = parse_program("0.3 :: a. 0.4 :: a.").unwrap_err();
        assert!(err.message.contains("contradictory"), "{err}");
    }

    #[test]
    fn discrete_and_density_conflict_rejected() {
        let err = parse_program("0.3 :: g(X). g(X) : gaussian(X,0,1).").unwrap_err();
        assert!(err.message.contains("both"), "{err}");
    }

    #[test]
    fn probability_range_checked() {
        assert!(parse_program("0 :: a.").is_err());
        assert!(parse_program("3/2 :: a.").is_err());
        assert!(parse_program("1 :: a.").is_ok());
    }

    #[test]
    fn syntax_error_has_expectation_hint() {
        let err = parse_program("p(X) :- q(X)").unwrap_err();
        assert!(err.message.contains("expected"), "{err}");
    }

    #[test]
    fn density_output_must_be_in_template() {
        let err = parse_program("g(X) : gaussian(Y, 0, 1).").unwrap_err();
        assert!(err.message.contains("template"), "{err}");
    }

    #[test]
    fn directive_parses() {
        let p = parse_program(":- continuous(st/2, [2]).").unwrap();
        assert_eq!(p.directives.len(), 1);
        assert_eq!(p.directives[0].pred, "st");
        assert_eq!(p.directives[0].arity, 2);
        assert!(p.directives[0].positions.contains(&2));
    }

    #[test]
    fn spans_are_contained_in_input() {
        let text = MIXTURE;
        let p = parse_program(text).unwrap();
        for c in &p.clauses {
            assert!(c.span.end <= text.len());
            for l in &c.body {
                assert!(l.span().end <= text.len());
                assert!(l.span().start >= c.span.start);
            }
        }
        for f in &p.density_facts {
            assert!(f.span.end <= text.len());
        }
    }
}
