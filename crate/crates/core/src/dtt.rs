//! A small language of finite families and the `Sum`, `Pi` and `Pull`
//! type formers, evaluated through `f_!`, `f_*` and `f^*`.
//!
//! ```text
//! program := decl* "query" expr
//! decl    := "set" NAME "=" "{" [NAME ("," NAME)*] "}"
//!          | "map" NAME ":" NAME "->" NAME "=" "{" [NAME "->" NAME ("," NAME "->" NAME)*] "}"
//! expr    := ("Sum"|"Pi"|"Pull") "(" NAME "," NAME ")" | "Obj" "(" NAME ")"
//! NAME    := letter (letter|digit|_)*
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line. A family is a map `p : E → B`, read as its fibers.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::depprod::{dependent_product_fiberwise, dependent_sum};
use crate::finset::{Element, FinMap, FinSet};
use crate::limits::base_change_obj;
use crate::slice::SliceObj;

const KEYWORDS: [&str; 7] = ["set", "map", "query", "Sum", "Pi", "Pull", "Obj"];

/// Source position, 1-based, columns counted in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: name error: {message}")]
    Name { pos: Pos, message: String },
    #[error("{pos}: totality error in map {map}: {message}")]
    Totality {
        pos: Pos,
        map: String,
        element: String,
        message: String,
    },
    #[error("{pos}: type error: {message}")]
    Type { pos: Pos, message: String },
    #[error("evaluation failed: {0}")]
    Eval(#[from] crate::Error),
}

impl DslError {
    /// Where in the source the problem was found. Only evaluation errors,
    /// which happen after a successful parse, have no position.
    pub fn pos(&self) -> Option<Pos> {
        match self {
            DslError::Syntax { pos, .. }
            | DslError::Name { pos, .. }
            | DslError::Totality { pos, .. }
            | DslError::Type { pos, .. } => Some(*pos),
            DslError::Eval(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DslError::Syntax { .. } => "SyntaxError",
            DslError::Name { .. } => "NameError",
            DslError::Totality { .. } => "TotalityError",
            DslError::Type { .. } => "TypeError",
            DslError::Eval(_) => "EvalError",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Set {
        name: String,
        elements: Vec<String>,
    },
    Map {
        name: String,
        dom: String,
        cod: String,
        entries: Vec<(String, String)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Former {
    Sum,
    Pi,
    Pull,
}

impl Former {
    pub fn keyword(self) -> &'static str {
        match self {
            Former::Sum => "Sum",
            Former::Pi => "Pi",
            Former::Pull => "Pull",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Apply {
        former: Former,
        map: String,
        family: String,
    },
    Obj(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub decls: Vec<Decl>,
    pub query: Expr,
}

fn join_names(items: &[String]) -> String {
    items.join(", ")
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Set { name, elements } => write!(f, "set {name} = {{{}}}", join_names(elements)),
            Decl::Map {
                name,
                dom,
                cod,
                entries,
            } => {
                let body: Vec<String> = entries.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
                write!(f, "map {name} : {dom} -> {cod} = {{{}}}", join_names(&body))
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Apply { former, map, family } => write!(f, "{}({map}, {family})", former.keyword()),
            Expr::Obj(p) => write!(f, "Obj({p})"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        writeln!(f, "query {}", self.query)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Sym(&'static str),
    Bad(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("{n:?}"),
            Tok::Sym(s) => format!("'{s}'"),
            Tok::Bad(c) => format!("unexpected character {c:?}"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn lex(source: &str) -> Vec<(Tok, Pos)> {
    let mut out = Vec::new();
    let mut chars = source.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_alphabetic() {
            let mut name = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    name.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Name(name), pos));
        } else {
            chars.next();
            col += 1;
            let tok = match c {
                '=' => Tok::Sym("="),
                '{' => Tok::Sym("{"),
                '}' => Tok::Sym("}"),
                ',' => Tok::Sym(","),
                ':' => Tok::Sym(":"),
                '(' => Tok::Sym("("),
                ')' => Tok::Sym(")"),
                '-' if chars.peek() == Some(&'>') => {
                    chars.next();
                    col += 1;
                    Tok::Sym("->")
                }
                other => Tok::Bad(other),
            };
            out.push((tok, pos));
        }
    }
    out.push((Tok::End, Pos { line, col }));
    out
}

#[derive(Debug, Clone)]
enum Binding {
    Set { elements: Vec<String> },
    Map { dom: String, cod: String },
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    env: HashMap<String, Binding>,
}

type PResult<T> = std::result::Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let (tok, pos) = self.peek();
        Err(DslError::Syntax {
            pos: *pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn sym(&mut self, s: &'static str) -> PResult<Pos> {
        match self.peek() {
            (Tok::Sym(t), pos) if *t == s => {
                let pos = *pos;
                self.at += 1;
                Ok(pos)
            }
            _ => self.fail(&[&format!("'{s}'")]),
        }
    }

    fn keyword(&mut self, options: &[&str]) -> PResult<(String, Pos)> {
        match self.peek() {
            (Tok::Name(n), pos) if options.contains(&n.as_str()) => {
                let out = (n.clone(), *pos);
                self.at += 1;
                Ok(out)
            }
            _ => {
                let quoted: Vec<String> = options.iter().map(|o| format!("'{o}'")).collect();
                let refs: Vec<&str> = quoted.iter().map(|s| s.as_str()).collect();
                self.fail(&refs)
            }
        }
    }

    fn name(&mut self) -> PResult<(String, Pos)> {
        match self.peek() {
            (Tok::Name(n), pos) if !KEYWORDS.contains(&n.as_str()) => {
                let out = (n.clone(), *pos);
                self.at += 1;
                Ok(out)
            }
            _ => self.fail(&["NAME"]),
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), (Tok::Sym(t), _) if *t == s)
    }

    fn declare(&mut self, name: &str, pos: Pos, binding: Binding) -> PResult<()> {
        if self.env.contains_key(name) {
            return Err(DslError::Name {
                pos,
                message: format!("{name} is already declared"),
            });
        }
        self.env.insert(name.to_string(), binding);
        Ok(())
    }

    fn set_elements(&self, name: &str, pos: Pos) -> PResult<Vec<String>> {
        match self.env.get(name) {
            Some(Binding::Set { elements }) => Ok(elements.clone()),
            Some(Binding::Map { .. }) => Err(DslError::Type {
                pos,
                message: format!("{name} is a map, expected a set"),
            }),
            None => Err(DslError::Name {
                pos,
                message: format!("{name} is not declared"),
            }),
        }
    }

    fn map_ends(&self, name: &str, pos: Pos) -> PResult<(String, String)> {
        match self.env.get(name) {
            Some(Binding::Map { dom, cod }) => Ok((dom.clone(), cod.clone())),
            Some(Binding::Set { .. }) => Err(DslError::Type {
                pos,
                message: format!("{name} is a set, expected a map"),
            }),
            None => Err(DslError::Name {
                pos,
                message: format!("{name} is not declared"),
            }),
        }
    }

    fn program(&mut self) -> PResult<Program> {
        let mut decls = Vec::new();
        loop {
            let (kw, _) = self.keyword(&["set", "map", "query"])?;
            match kw.as_str() {
                "set" => decls.push(self.set_decl()?),
                "map" => decls.push(self.map_decl()?),
                _ => break,
            }
        }
        let query = self.expr()?;
        if !matches!(self.peek().0, Tok::End) {
            return self.fail(&["end of input"]);
        }
        Ok(Program { decls, query })
    }

    fn set_decl(&mut self) -> PResult<Decl> {
        let (name, name_pos) = self.name()?;
        self.sym("=")?;
        self.sym("{")?;
        let mut elements: Vec<String> = Vec::new();
        let mut seen = HashSet::new();
        if !self.at_sym("}") {
            loop {
                let (e, pos) = self.name()?;
                if !seen.insert(e.clone()) {
                    return Err(DslError::Name {
                        pos,
                        message: format!("{e} appears twice in set {name}"),
                    });
                }
                elements.push(e);
                if self.at_sym(",") {
                    self.sym(",")?;
                } else {
                    break;
                }
            }
        }
        if !self.at_sym("}") {
            return self.fail(&["','", "'}'"]);
        }
        self.sym("}")?;
        self.declare(
            &name,
            name_pos,
            Binding::Set {
                elements: elements.clone(),
            },
        )?;
        Ok(Decl::Set { name, elements })
    }

    fn map_decl(&mut self) -> PResult<Decl> {
        let (name, name_pos) = self.name()?;
        self.sym(":")?;
        let (dom, dom_pos) = self.name()?;
        self.sym("->")?;
        let (cod, cod_pos) = self.name()?;
        self.sym("=")?;
        let open = self.sym("{")?;
        let dom_elements = self.set_elements(&dom, dom_pos)?;
        let cod_elements = self.set_elements(&cod, cod_pos)?;
        let mut entries: Vec<(String, String)> = Vec::new();
        if !self.at_sym("}") {
            loop {
                let (x, x_pos) = self.name()?;
                self.sym("->")?;
                let (y, y_pos) = self.name()?;
                if !dom_elements.contains(&x) {
                    return Err(DslError::Totality {
                        pos: x_pos,
                        map: name,
                        element: x.clone(),
                        message: format!("extra entry for {x}, which is not in {dom}"),
                    });
                }
                if entries.iter().any(|(seen, _)| *seen == x) {
                    return Err(DslError::Totality {
                        pos: x_pos,
                        map: name,
                        element: x.clone(),
                        message: format!("second entry for {x}"),
                    });
                }
                if !cod_elements.contains(&y) {
                    return Err(DslError::Type {
                        pos: y_pos,
                        message: format!("{y} is not an element of the codomain {cod} of {name}"),
                    });
                }
                entries.push((x, y));
                if self.at_sym(",") {
                    self.sym(",")?;
                } else {
                    break;
                }
            }
        }
        if !self.at_sym("}") {
            return self.fail(&["','", "'}'"]);
        }
        let close = self.sym("}")?;
        if let Some(missing) = dom_elements.iter().find(|x| !entries.iter().any(|(e, _)| e == *x)) {
            return Err(DslError::Totality {
                pos: if entries.is_empty() { open } else { close },
                map: name,
                element: missing.clone(),
                message: format!("no entry for {missing}"),
            });
        }
        self.declare(
            &name,
            name_pos,
            Binding::Map {
                dom: dom.clone(),
                cod: cod.clone(),
            },
        )?;
        Ok(Decl::Map {
            name,
            dom,
            cod,
            entries,
        })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let (kw, _) = self.keyword(&["Sum", "Pi", "Pull", "Obj"])?;
        self.sym("(")?;
        let expr = if kw == "Obj" {
            let (p, pos) = self.name()?;
            self.map_ends(&p, pos)?;
            Expr::Obj(p)
        } else {
            let former = match kw.as_str() {
                "Sum" => Former::Sum,
                "Pi" => Former::Pi,
                _ => Former::Pull,
            };
            let (map, map_pos) = self.name()?;
            self.sym(",")?;
            let (family, family_pos) = self.name()?;
            let (f_dom, f_cod) = self.map_ends(&map, map_pos)?;
            let (_, p_cod) = self.map_ends(&family, family_pos)?;
            let wanted = if former == Former::Pull { &f_cod } else { &f_dom };
            if &p_cod != wanted {
                return Err(DslError::Type {
                    pos: family_pos,
                    message: format!(
                        "{}({map}, {family}) needs a family over {wanted}, but {family} is over {p_cod}",
                        former.keyword()
                    ),
                });
            }
            Expr::Apply { former, map, family }
        };
        self.sym(")")?;
        Ok(expr)
    }
}

pub fn parse(source: &str) -> Result<Program, DslError> {
    Parser {
        toks: lex(source),
        at: 0,
        env: HashMap::new(),
    }
    .program()
}

/// One fiber of the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberListing {
    pub over: Element,
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub query: Expr,
    pub object: SliceObj,
    pub fibers: Vec<FiberListing>,
}

impl EvalResult {
    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.elements.len()).collect()
    }
}

/// The sets and maps a program declares.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub sets: HashMap<String, FinSet>,
    pub maps: HashMap<String, FinMap>,
}

impl Environment {
    pub fn of(prog: &Program) -> Result<Self, DslError> {
        let mut env = Environment::default();
        for d in &prog.decls {
            match d {
                Decl::Set { name, elements } => {
                    env.sets
                        .insert(name.clone(), FinSet::from_labels(name.clone(), elements)?);
                }
                Decl::Map {
                    name,
                    dom,
                    cod,
                    entries,
                } => {
                    let map =
                        FinMap::from_pairs(env.sets[dom].clone(), env.sets[cod].clone(), entries)?.with_name(name);
                    env.maps.insert(name.clone(), map);
                }
            }
        }
        Ok(env)
    }
}

pub fn eval(prog: &Program, limit: usize) -> Result<EvalResult, DslError> {
    let env = Environment::of(prog)?;
    let object = match &prog.query {
        Expr::Obj(p) => SliceObj::new(env.maps[p].clone()),
        Expr::Apply { former, map, family } => {
            let f = &env.maps[map];
            let p = SliceObj::new(env.maps[family].clone());
            match former {
                Former::Sum => dependent_sum(f).obj(&p)?,
                Former::Pi => dependent_product_fiberwise(f, &p, limit)?.object,
                Former::Pull => base_change_obj(f, &p)?.0,
            }
        }
    };
    let fibers = object
        .fibers()
        .into_iter()
        .enumerate()
        .map(|(a, members)| FiberListing {
            over: object.base().element(a).clone(),
            elements: members.iter().map(|&t| object.total().element(t).clone()).collect(),
        })
        .collect();
    Ok(EvalResult {
        query: prog.query.clone(),
        object,
        fibers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUNNING: &str = "
        # the running example
        set A = {a1, a2}
        set B = {b1, b2, b3}
        set E = {e1, e2, e3}
        map f : B -> A = {b1 -> a1, b2 -> a1, b3 -> a2}
        map p : E -> B = {e1 -> b1, e2 -> b1, e3 -> b2}
        query Pi(f, p)
    ";

    fn with_query(q: &str) -> String {
        RUNNING.replace("query Pi(f, p)", &format!("query {q}"))
    }

    #[test]
    fn running_example() {
        let prog = parse(RUNNING).unwrap();
        assert_eq!(prog.decls.len(), 5);
        let pi = eval(&prog, 100).unwrap();
        assert_eq!(pi.fiber_sizes(), [2, 0]);
        assert_eq!(pi.fibers[0].elements[0].as_str(), "sec(a1){b1↦e1,b2↦e3}");
        let sum = eval(&parse(&with_query("Sum(f, p)")).unwrap(), 100).unwrap();
        assert_eq!(sum.fiber_sizes(), [3, 0]);
        let obj = eval(&parse(&with_query("Obj(p)")).unwrap(), 100).unwrap();
        assert_eq!(obj.fiber_sizes(), [2, 1, 0]);
    }

    #[test]
    fn pull_along_terminal_copies_e() {
        let src = "set One = {pt} set B = {b1,b2} set E = {e1,e2,e3}
            map bang : B -> One = {b1 -> pt, b2 -> pt}
            map p : E -> One = {e1 -> pt, e2 -> pt, e3 -> pt}
            query Pull(bang, p)";
        let r = eval(&parse(src).unwrap(), 100).unwrap();
        assert_eq!(r.fiber_sizes(), [3, 3]);
        assert_eq!(r.fibers[1].elements[0].as_str(), "⟨e1|b2⟩");
    }

    #[test]
    fn empty_base_fiber_gives_one_section() {
        let src = "set A = {a1,a2} set B = {b1} set E = {e1}
            map f : B -> A = {b1 -> a1}
            map p : E -> B = {e1 -> b1}
            query Pi(f,p)";
        let r = eval(&parse(src).unwrap(), 100).unwrap();
        assert_eq!(r.fiber_sizes(), [1, 1]);
        assert_eq!(r.fibers[1].elements[0].as_str(), "sec(a2){}");
    }

    #[test]
    fn round_trip() {
        let prog = parse(RUNNING).unwrap();
        let printed = prog.to_string();
        assert_eq!(parse(&printed).unwrap(), prog);
        let empty = parse("set E = {} map e : E -> E = {} query Obj(e)").unwrap();
        assert_eq!(parse(&empty.to_string()).unwrap(), empty);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("set A = {a1 a2}\nquery Obj(A)").unwrap_err();
        match &err {
            DslError::Syntax { pos, expected, found } => {
                assert_eq!(*pos, Pos { line: 1, col: 13 });
                assert_eq!(expected, &["','", "'}'"]);
                assert_eq!(found, "\"a2\"");
            }
            other => panic!("{other:?}"),
        }
        let err = parse("set A = {a1}\n  map f : A => A = {}").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 2, col: 13 }));
        assert_eq!(err.kind(), "SyntaxError");
        let err = parse("set A = {a1}").unwrap_err();
        assert!(err.to_string().contains("end of input"));
        let err = parse("set set = {}").unwrap_err();
        assert!(err.to_string().contains("NAME"));
        let err = parse("set A = {a1} map i : A -> A = {a1 -> a1} query Obj(i) extra").unwrap_err();
        assert_eq!(err.kind(), "SyntaxError");
        let err = parse("set A = {a1$}").unwrap_err();
        assert!(err.to_string().contains("unexpected character '$'"));
    }

    #[test]
    fn totality_errors() {
        let src = RUNNING.replace(", b3 -> a2}", "}");
        match parse(&src).unwrap_err() {
            DslError::Totality { element, .. } => assert_eq!(element, "b3"),
            other => panic!("{other:?}"),
        }
        let src = RUNNING.replace("b3 -> a2}", "b3 -> a2, b4 -> a1}");
        assert_eq!(parse(&src).unwrap_err().kind(), "TotalityError");
        let src = RUNNING.replace("b3 -> a2}", "b3 -> a2, b1 -> a2}");
        assert_eq!(parse(&src).unwrap_err().kind(), "TotalityError");
    }

    #[test]
    fn name_and_type_errors() {
        assert_eq!(parse(&with_query("Pi(g, p)")).unwrap_err().kind(), "NameError");
        assert_eq!(
            parse("set A = {a} set A = {b} query Obj(A)").unwrap_err().kind(),
            "NameError"
        );
        assert_eq!(parse("set A = {a, a} query Obj(A)").unwrap_err().kind(), "NameError");
        let err = parse(&with_query("Pi(f, f)")).unwrap_err();
        assert_eq!(err.kind(), "TypeError");
        assert!(err.to_string().contains("family over B"));
        assert_eq!(parse(&with_query("Pull(f, p)")).unwrap_err().kind(), "TypeError");
        assert_eq!(parse(&with_query("Obj(A)")).unwrap_err().kind(), "TypeError");
        let src = RUNNING.replace("b3 -> a2}", "b3 -> a9}");
        assert_eq!(parse(&src).unwrap_err().kind(), "TypeError");
    }

    #[test]
    fn eval_respects_limit() {
        let src = "set A = {a} set B = {b1,b2,b3} set E = {e1,e2,e3,e4,e5,e6}
            map f : B -> A = {b1 -> a, b2 -> a, b3 -> a}
            map p : E -> B = {e1 -> b1, e2 -> b1, e3 -> b2, e4 -> b2, e5 -> b3, e6 -> b3}
            query Pi(f, p)";
        let prog = parse(src).unwrap();
        assert_eq!(eval(&prog, 8).unwrap().fiber_sizes(), [8]);
        assert!(matches!(eval(&prog, 7), Err(DslError::Eval(e)) if e.is_enumeration_limit()));
    }
}
