//! Text format for algebras, morphisms, triples and ladders.
//!
//! ```text
//! # minimal model of S^2
//! algebra MS2 { generator e2 deg 2; generator e3 deg 3; d e3 = e2^2; }
//! algebra Q { }
//! morphism eps : MS2 -> Q { }
//! triple Loop { left = Q via eps; middle = MS2; right = Q via eps; }
//! ```
//!
//! Polynomials are sums of terms `c x^a y^b`, where the coefficient is an
//! integer or a fraction and factors are juxtaposed or joined by `*`.
//! Generators are declared before use. Generators missing from a morphism
//! body map to zero. A ladder between two triples names the three vertical
//! morphisms: `ladder L : T1 -> T2 { left = u; middle = v; right = w; }`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraMorphism, GradedAlgebra};
use crate::bar::{BarLadder, BarTriple};
use crate::error::Error;
use crate::linalg::Rational;
use crate::presentation::{build_free, GeneratorPresentation, Polynomial, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDef {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Images of source generators; the rest map to zero.
    pub images: Vec<(String, Polynomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleDef {
    pub name: String,
    pub left: String,
    pub f: String,
    pub middle: String,
    pub right: String,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderDef {
    pub name: String,
    pub from: String,
    pub to: String,
    pub left: String,
    pub middle: String,
    pub right: String,
}

type Pos = (usize, usize);

/// Everything defined in one input text.
#[derive(Clone, Debug, Default)]
pub struct Definitions {
    pub algebras: Vec<GeneratorPresentation>,
    pub morphisms: Vec<MorphismDef>,
    pub triples: Vec<TripleDef>,
    pub ladders: Vec<LadderDef>,
    /// Source positions keyed by `kind name` and `kind name/statement`.
    positions: HashMap<String, Pos>,
}

impl PartialEq for Definitions {
    fn eq(&self, other: &Self) -> bool {
        self.algebras == other.algebras
            && self.morphisms == other.morphisms
            && self.triples == other.triples
            && self.ladders == other.ladders
    }
}

impl Eq for Definitions {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Arrow,
    Sym(char),
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
}

fn lex(text: &str) -> Result<Lexer, Error> {
    let mut toks = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = (ln + 1, i + 1);
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), pos));
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                toks.push((Tok::Arrow, pos));
                i += 2;
            } else if "{};:=+-*^/".contains(c) {
                toks.push((Tok::Sym(c), pos));
                i += 1;
            } else {
                return Err(parse_error(pos, format!("unexpected character `{c}`")));
            }
        }
    }
    let end = (
        text.lines().count().max(1),
        text.lines().last().map_or(1, |l| l.chars().count() + 1),
    );
    toks.push((Tok::Eof, end));
    Ok(Lexer { toks })
}

fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.0,
        column: pos.1,
        message: message.into(),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Arrow => "`->`".into(),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    defs: Definitions,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        parse_error(
            self.pos(),
            format!("expected {wanted}, found {}", describe(self.peek())),
        )
    }

    fn sym(&mut self, c: char) -> Result<(), Error> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn arrow(&mut self) -> Result<(), Error> {
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected("`->`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), Error> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump().1)),
            _ => Err(self.unexpected("a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), Error> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn int(&mut self) -> Result<(BigInt, Pos), Error> {
        match self.peek().clone() {
            Tok::Int(n) => Ok((n, self.bump().1)),
            _ => Err(self.unexpected("a number")),
        }
    }

    fn small(&mut self, what: &str) -> Result<u32, Error> {
        let (n, pos) = self.int()?;
        u32::try_from(&n).map_err(|_| parse_error(pos, format!("{what} {n} is too large")))
    }

    fn file(mut self) -> Result<Definitions, Error> {
        loop {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof => return Ok(self.defs),
                Tok::Ident(kw) if kw == "algebra" => self.algebra()?,
                Tok::Ident(kw) if kw == "morphism" => self.morphism()?,
                Tok::Ident(kw) if kw == "triple" => self.triple()?,
                Tok::Ident(kw) if kw == "ladder" => self.ladder()?,
                _ => {
                    return Err(parse_error(
                        pos,
                        format!("expected a definition, found {}", describe(self.peek())),
                    ))
                }
            }
        }
    }

    fn declare(&mut self, kind: &str, name: &str, pos: Pos) -> Result<(), Error> {
        let key = format!("{kind} {name}");
        if self.defs.positions.contains_key(&key) {
            return Err(parse_error(pos, format!("{kind} `{name}` is defined twice")));
        }
        self.defs.positions.insert(key, pos);
        Ok(())
    }

    fn lookup(&self, kind: &str, name: &str, pos: Pos) -> Result<(), Error> {
        if self.defs.positions.contains_key(&format!("{kind} {name}")) {
            Ok(())
        } else {
            Err(parse_error(pos, format!("no {kind} named `{name}` defined above")))
        }
    }

    fn algebra(&mut self) -> Result<(), Error> {
        self.keyword("algebra")?;
        let (name, pos) = self.ident()?;
        self.declare("algebra", &name, pos)?;
        let mut pres = GeneratorPresentation::new(&name);
        self.sym('{')?;
        while *self.peek() != Tok::Sym('}') {
            let spos = self.pos();
            match self.ident()?.0.as_str() {
                "generator" => {
                    let (g, gpos) = self.ident()?;
                    self.keyword("deg")?;
                    let deg = self.small("degree")? as usize;
                    if pres.generators.iter().any(|h| h.name == g) {
                        return Err(parse_error(gpos, format!("generator `{g}` declared twice")));
                    }
                    if deg == 0 {
                        return Err(parse_error(gpos, format!("generator `{g}` has degree 0")));
                    }
                    self.defs
                        .positions
                        .insert(format!("algebra {name}/generator {g}"), spos);
                    pres = pres.generator(&g, deg);
                }
                "d" => {
                    let (g, gpos) = self.ident()?;
                    if !pres.generators.iter().any(|h| h.name == g) {
                        return Err(parse_error(gpos, format!("unknown generator `{g}`")));
                    }
                    if pres.differentials.iter().any(|(h, _)| *h == g) {
                        return Err(parse_error(gpos, format!("differential of `{g}` given twice")));
                    }
                    self.sym('=')?;
                    let p = self.polynomial(&pres)?;
                    self.defs.positions.insert(format!("algebra {name}/d {g}"), spos);
                    pres = pres.differential(&g, p);
                }
                "relation" => {
                    let p = self.polynomial(&pres)?;
                    let key = format!("algebra {name}/relation {}", pres.relations.len());
                    self.defs.positions.insert(key, spos);
                    pres = pres.relation(p);
                }
                other => {
                    return Err(parse_error(
                        spos,
                        format!("expected `generator`, `d` or `relation`, found `{other}`"),
                    ))
                }
            }
            self.sym(';')?;
        }
        self.sym('}')?;
        self.defs.algebras.push(pres);
        Ok(())
    }

    fn presentation(&self, name: &str) -> &GeneratorPresentation {
        self.defs.algebras.iter().find(|a| a.name == name).expect("looked up")
    }

    fn morphism(&mut self) -> Result<(), Error> {
        self.keyword("morphism")?;
        let (name, pos) = self.ident()?;
        self.declare("morphism", &name, pos)?;
        self.sym(':')?;
        let (source, spos) = self.ident()?;
        self.lookup("algebra", &source, spos)?;
        self.arrow()?;
        let (target, tpos) = self.ident()?;
        self.lookup("algebra", &target, tpos)?;
        self.sym('{')?;
        let mut images: Vec<(String, Polynomial)> = Vec::new();
        while *self.peek() != Tok::Sym('}') {
            let (g, gpos) = self.ident()?;
            if !self.presentation(&source).generators.iter().any(|h| h.name == g) {
                return Err(parse_error(gpos, format!("`{source}` has no generator `{g}`")));
            }
            if images.iter().any(|(h, _)| *h == g) {
                return Err(parse_error(gpos, format!("image of `{g}` given twice")));
            }
            self.arrow()?;
            let target_pres = self.presentation(&target).clone();
            let p = self.polynomial(&target_pres)?;
            self.sym(';')?;
            self.defs.positions.insert(format!("morphism {name}/{g}"), gpos);
            images.push((g, p));
        }
        self.sym('}')?;
        self.defs.morphisms.push(MorphismDef {
            name,
            source,
            target,
            images,
        });
        Ok(())
    }

    fn field(&mut self, key: &str, kind: &str) -> Result<String, Error> {
        self.keyword(key)?;
        self.sym('=')?;
        let (v, pos) = self.ident()?;
        self.lookup(kind, &v, pos)?;
        Ok(v)
    }

    fn triple(&mut self) -> Result<(), Error> {
        self.keyword("triple")?;
        let (name, pos) = self.ident()?;
        self.declare("triple", &name, pos)?;
        self.sym('{')?;
        let left = self.field("left", "algebra")?;
        self.keyword("via")?;
        let (f, fpos) = self.ident()?;
        self.lookup("morphism", &f, fpos)?;
        self.sym(';')?;
        let middle = self.field("middle", "algebra")?;
        self.sym(';')?;
        let right = self.field("right", "algebra")?;
        self.keyword("via")?;
        let (g, gpos) = self.ident()?;
        self.lookup("morphism", &g, gpos)?;
        self.sym(';')?;
        self.sym('}')?;
        self.defs.triples.push(TripleDef {
            name,
            left,
            f,
            middle,
            right,
            g,
        });
        Ok(())
    }

    fn ladder(&mut self) -> Result<(), Error> {
        self.keyword("ladder")?;
        let (name, pos) = self.ident()?;
        self.declare("ladder", &name, pos)?;
        self.sym(':')?;
        let (from, fpos) = self.ident()?;
        self.lookup("triple", &from, fpos)?;
        self.arrow()?;
        let (to, tpos) = self.ident()?;
        self.lookup("triple", &to, tpos)?;
        self.sym('{')?;
        let mut maps = Vec::new();
        for key in ["left", "middle", "right"] {
            maps.push(self.field(key, "morphism")?);
            self.sym(';')?;
        }
        self.sym('}')?;
        let [left, middle, right] = <[String; 3]>::try_from(maps).expect("three maps");
        self.defs.ladders.push(LadderDef {
            name,
            from,
            to,
            left,
            middle,
            right,
        });
        Ok(())
    }

    fn polynomial(&mut self, pres: &GeneratorPresentation) -> Result<Polynomial, Error> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                true
            }
            Tok::Sym('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut term = self.term(pres)?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            negative = match self.peek() {
                Tok::Sym('-') => true,
                Tok::Sym('+') => false,
                _ => break,
            };
            self.bump();
        }
        if let [t] = terms.as_slice() {
            if t.factors.is_empty() && t.coeff.is_zero() {
                return Ok(Polynomial::zero());
            }
        }
        Ok(Polynomial { terms })
    }

    fn term(&mut self, pres: &GeneratorPresentation) -> Result<Term, Error> {
        let mut coeff = Rational::one();
        let mut seen = false;
        if let Tok::Int(_) = self.peek() {
            let (num, _) = self.int()?;
            let mut den = BigInt::one();
            if *self.peek() == Tok::Sym('/') {
                self.bump();
                let (d, dpos) = self.int()?;
                if d.is_zero() {
                    return Err(parse_error(dpos, "zero denominator"));
                }
                den = d;
            }
            coeff = Rational::new(num, den);
            seen = true;
        }
        let mut factors = Vec::new();
        loop {
            if seen && *self.peek() == Tok::Sym('*') {
                self.bump();
                if !matches!(self.peek(), Tok::Ident(_)) {
                    return Err(self.unexpected("a generator"));
                }
            }
            let Tok::Ident(g) = self.peek().clone() else { break };
            let gpos = self.bump().1;
            if !pres.generators.iter().any(|h| h.name == g) {
                return Err(parse_error(gpos, format!("unknown generator `{g}` in `{}`", pres.name)));
            }
            let mut e = 1;
            if *self.peek() == Tok::Sym('^') {
                self.bump();
                e = self.small("exponent")?;
            }
            factors.push((g, e));
            seen = true;
        }
        if !seen {
            return Err(self.unexpected("a term"));
        }
        Ok(Term { coeff, factors })
    }
}

/// Parses definitions without building any algebra.
pub fn parse_syntax(text: &str) -> Result<Definitions, Error> {
    let lexer = lex(text)?;
    Parser {
        toks: lexer.toks,
        at: 0,
        defs: Definitions::default(),
    }
    .file()
}

/// Parses and validates: every algebra is built and every morphism,
/// triple and ladder checked at [`Definitions::validation_degree`].
/// Diagnostics carry the line and column of the offending statement.
pub fn parse_input(text: &str) -> Result<Definitions, Error> {
    let defs = parse_syntax(text)?;
    defs.instantiate(defs.validation_degree())?;
    Ok(defs)
}

/// Algebras and morphisms of a [`Definitions`] built at one truncation.
#[derive(Clone, Debug)]
pub struct Instance {
    top: usize,
    defs: Definitions,
    algebras: BTreeMap<String, Arc<GradedAlgebra>>,
    morphisms: BTreeMap<String, AlgebraMorphism>,
}

impl Definitions {
    /// `max(12, largest generator degree + 2)`.
    pub fn validation_degree(&self) -> usize {
        let maxdeg = self
            .algebras
            .iter()
            .flat_map(|a| a.generators.iter().map(|g| g.degree))
            .max()
            .unwrap_or(0);
        12.max(maxdeg + 2)
    }

    fn at(&self, key: &str) -> Pos {
        self.positions.get(key).copied().unwrap_or((0, 0))
    }

    fn located(&self, key: &str, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => parse_error(self.at(key), other.to_string()),
        }
    }

    /// Builds every algebra and morphism at truncation degree `top`.
    pub fn instantiate(&self, top: usize) -> Result<Instance, Error> {
        let mut algebras = BTreeMap::new();
        for pres in &self.algebras {
            let base = format!("algebra {}", pres.name);
            for (g, p) in &pres.differentials {
                let key = format!("{base}/d {g}");
                let degs = pres.term_degrees(p).map_err(|e| self.located(&key, e))?;
                let expected = pres.generators.iter().find(|h| h.name == *g).expect("declared").degree + 1;
                if let Some(&found) = degs.iter().find(|&&d| d != expected) {
                    return Err(self.located(
                        &key,
                        Error::Inhomogeneous {
                            context: format!("d {g} = {p}"),
                            expected,
                            found,
                        },
                    ));
                }
            }
            let alg = build_free(pres, top).map_err(|e| {
                let key = match &e {
                    Error::DSquareNonzero { generator } => format!("{base}/d {generator}"),
                    Error::InhomogeneousRelation { index } | Error::DifferentialNotCompatible { index } => {
                        format!("{base}/relation {index}")
                    }
                    _ => base.clone(),
                };
                self.located(&key, e)
            })?;
            algebras.insert(pres.name.clone(), Arc::new(alg));
        }
        let mut morphisms = BTreeMap::new();
        for m in &self.morphisms {
            let base = format!("morphism {}", m.name);
            let (src, tgt) = (&algebras[&m.source], &algebras[&m.target]);
            let mut images = Vec::new();
            for (g, p) in &m.images {
                let key = format!("{base}/{g}");
                let img = tgt.evaluate(p).map_err(|e| self.located(&key, e))?;
                images.push((g.clone(), img));
            }
            let phi = AlgebraMorphism::from_generator_images(&m.name, src.clone(), tgt.clone(), &images)
                .map_err(|e| self.located(&base, e))?;
            morphisms.insert(m.name.clone(), phi);
        }
        let instance = Instance {
            top,
            defs: self.clone(),
            algebras,
            morphisms,
        };
        for t in &self.triples {
            let key = format!("triple {}", t.name);
            instance.check_triple(t).map_err(|e| self.located(&key, e))?;
        }
        for l in &self.ladders {
            let key = format!("ladder {}", l.name);
            instance.check_ladder(l).map_err(|e| self.located(&key, e))?;
        }
        Ok(instance)
    }

    pub fn triple_def(&self, name: &str) -> Result<&TripleDef, Error> {
        self.triples
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownDefinition {
                kind: "triple",
                name: name.to_string(),
            })
    }

    pub fn ladder_def(&self, name: &str) -> Result<&LadderDef, Error> {
        self.ladders
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownDefinition {
                kind: "ladder",
                name: name.to_string(),
            })
    }

    /// Canonical text form; [`parse_syntax`] reads it back unchanged.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for a in &self.algebras {
            if a.generators.is_empty() && a.relations.is_empty() {
                let _ = writeln!(out, "algebra {} {{ }}\n", a.name);
                continue;
            }
            let _ = writeln!(out, "algebra {} {{", a.name);
            for g in &a.generators {
                let _ = writeln!(out, "    generator {} deg {};", g.name, g.degree);
            }
            for (g, p) in &a.differentials {
                let _ = writeln!(out, "    d {g} = {p};");
            }
            for p in &a.relations {
                let _ = writeln!(out, "    relation {p};");
            }
            out.push_str("}\n\n");
        }
        for m in &self.morphisms {
            let _ = write!(out, "morphism {} : {} -> {} {{", m.name, m.source, m.target);
            if m.images.is_empty() {
                out.push_str(" }\n\n");
                continue;
            }
            out.push('\n');
            for (g, p) in &m.images {
                let _ = writeln!(out, "    {g} -> {p};");
            }
            out.push_str("}\n\n");
        }
        for t in &self.triples {
            let _ = writeln!(
                out,
                "triple {} {{\n    left = {} via {};\n    middle = {};\n    right = {} via {};\n}}\n",
                t.name, t.left, t.f, t.middle, t.right, t.g
            );
        }
        for l in &self.ladders {
            let _ = writeln!(
                out,
                "ladder {} : {} -> {} {{\n    left = {};\n    middle = {};\n    right = {};\n}}\n",
                l.name, l.from, l.to, l.left, l.middle, l.right
            );
        }
        while out.ends_with("\n\n") {
            out.pop();
        }
        out
    }
}

impl Instance {
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn definitions(&self) -> &Definitions {
        &self.defs
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<GradedAlgebra>, Error> {
        self.algebras.get(name).ok_or_else(|| Error::UnknownDefinition {
            kind: "algebra",
            name: name.to_string(),
        })
    }

    pub fn morphism(&self, name: &str) -> Result<&AlgebraMorphism, Error> {
        self.morphisms.get(name).ok_or_else(|| Error::UnknownDefinition {
            kind: "morphism",
            name: name.to_string(),
        })
    }

    fn endpoints(&self, phi: &str, source: &str, target: &str) -> Result<(), Error> {
        let m = self
            .defs
            .morphisms
            .iter()
            .find(|m| m.name == phi)
            .expect("validated name");
        if m.source != source || m.target != target {
            return Err(Error::Consistency(format!(
                "`{phi}` goes {} -> {}, expected {source} -> {target}",
                m.source, m.target
            )));
        }
        Ok(())
    }

    fn check_triple(&self, t: &TripleDef) -> Result<(), Error> {
        self.endpoints(&t.f, &t.middle, &t.left)?;
        self.endpoints(&t.g, &t.middle, &t.right)
    }

    fn check_ladder(&self, l: &LadderDef) -> Result<(), Error> {
        let from = self.defs.triple_def(&l.from)?;
        let to = self.defs.triple_def(&l.to)?;
        self.endpoints(&l.left, &from.left, &to.left)?;
        self.endpoints(&l.middle, &from.middle, &to.middle)?;
        self.endpoints(&l.right, &from.right, &to.right)?;
        let m = |n: &str| self.morphism(n);
        let squares = [
            ("left", m(&from.f)?.then(m(&l.left)?)?, m(&l.middle)?.then(m(&to.f)?)?),
            ("right", m(&from.g)?.then(m(&l.right)?)?, m(&l.middle)?.then(m(&to.g)?)?),
        ];
        for (side, a, b) in squares {
            if let Some(degree) = a.first_difference(&b) {
                return Err(Error::LadderNotCommuting { side, degree });
            }
        }
        Ok(())
    }

    /// The named triple, with the middle-algebra connectivity check.
    pub fn triple(&self, name: &str) -> Result<BarTriple, Error> {
        let t = self.defs.triple_def(name)?;
        BarTriple::new(self.morphism(&t.f)?.clone(), self.morphism(&t.g)?.clone())
    }

    /// The named ladder together with its source and target triple names.
    pub fn ladder(&self, name: &str) -> Result<(BarLadder, String, String), Error> {
        let l = self.defs.ladder_def(name)?;
        let ladder = BarLadder {
            left: self.morphism(&l.left)?.clone(),
            middle: self.morphism(&l.middle)?.clone(),
            right: self.morphism(&l.right)?.clone(),
        };
        Ok((ladder, l.from.clone(), l.to.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MS2: &str = "algebra MS2 { generator e2 deg 2; generator e3 deg 3; d e3 = e2^2; }";

    #[test]
    fn parses_exterior_algebra() {
        let defs = parse_input("algebra S3 { generator x deg 3; }").unwrap();
        let inst = defs.instantiate(6).unwrap();
        assert_eq!(inst.algebra("S3").unwrap().dims(), vec![1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn parses_minimal_model() {
        let defs = parse_input(MS2).unwrap();
        let inst = defs.instantiate(6).unwrap();
        assert_eq!(inst.algebra("MS2").unwrap().dims(), vec![1, 0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn inhomogeneous_differential_cites_line() {
        let text = "algebra Bad {\n  generator e2 deg 2;\n  generator e3 deg 3;\n  d e2 = e3^2;\n}";
        match parse_input(text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (4, 3));
                assert!(
                    message.contains("degree 3") && message.contains("degree 6"),
                    "{message}"
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn undeclared_generator_is_rejected() {
        let err = parse_syntax("algebra A { d x = y; generator x deg 2; }").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 15,
                message: "unknown generator `x`".into()
            }
        );
    }

    #[test]
    fn d_squared_nonzero_is_located() {
        let text = "algebra A {\n generator a deg 2; generator b deg 3; generator c deg 4;\n d b = a^2;\n d c = b;\n}";
        match parse_input(text) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 4, "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triple_and_ladder() {
        let text = format!(
            "{MS2}\nalgebra HS2 {{ generator x deg 2; relation x^2; }}\nalgebra Q {{ }}\n\
             morphism em : MS2 -> Q {{ }}\nmorphism eh : HS2 -> Q {{ }}\n\
             morphism collapse : MS2 -> HS2 {{ e2 -> x; }}\nmorphism id : Q -> Q {{ }}\n\
             triple TM {{ left = Q via em; middle = MS2; right = Q via em; }}\n\
             triple TH {{ left = Q via eh; middle = HS2; right = Q via eh; }}\n\
             ladder L : TM -> TH {{ left = id; middle = collapse; right = id; }}\n"
        );
        let defs = parse_input(&text).unwrap();
        let inst = defs.instantiate(7).unwrap();
        assert!(inst.triple("TM").is_ok());
        let (_, from, to) = inst.ladder("L").unwrap();
        assert_eq!((from.as_str(), to.as_str()), ("TM", "TH"));
        assert_eq!(parse_syntax(&defs.render()).unwrap(), defs);
    }

    #[test]
    fn noncommuting_ladder_is_rejected() {
        let text = "algebra A { generator x deg 2; }\nalgebra Q { }\nmorphism e : A -> Q { }\n\
                    morphism id : A -> A { x -> x; }\nmorphism z : A -> A { x -> 2 x; }\nmorphism q : Q -> Q { }\n\
                    triple T { left = Q via e; middle = A; right = A via id; }\n\
                    ladder L : T -> T { left = q; middle = z; right = id; }";
        match parse_input(text) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 8);
                assert!(message.contains("right"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_fractions() {
        let defs =
            parse_syntax("# header\nalgebra A { generator x deg 2; relation -1/2 x^2 + 3*x x; } # tail").unwrap();
        assert_eq!(defs.algebras[0].relations[0].to_string(), "-1/2 x^2 + 3 x x");
    }

    fn name() -> impl Strategy<Value = String> {
        "[a-z][a-z0-9_]{0,4}"
    }

    fn poly(gens: Vec<String>) -> impl Strategy<Value = Polynomial> {
        let term = (
            (-9i64..=9).prop_filter("nonzero", |c| *c != 0),
            1i64..=4,
            proptest::collection::vec((proptest::sample::select(gens.clone()), 1u32..4), 0..3),
        );
        proptest::collection::vec(term, 1..4).prop_map(move |ts| Polynomial {
            terms: ts
                .into_iter()
                .map(|(n, d, factors)| Term {
                    coeff: Rational::new(n.into(), d.into()),
                    factors,
                })
                .collect(),
        })
    }

    fn algebra() -> impl Strategy<Value = GeneratorPresentation> {
        (name(), proptest::collection::btree_map(name(), 1usize..9, 1..4)).prop_flat_map(|(n, gens)| {
            let names: Vec<String> = gens.keys().cloned().collect();
            let first = names[0].clone();
            (
                Just(n),
                Just(gens),
                proptest::option::of(poly(names.clone())),
                proptest::collection::vec(poly(names), 0..2),
            )
                .prop_map(move |(n, gens, d, rels)| {
                    let mut pres = GeneratorPresentation::new(n);
                    for (g, deg) in gens {
                        pres = pres.generator(&g, deg);
                    }
                    if let Some(d) = d {
                        pres = pres.differential(&first, d);
                    }
                    for r in rels {
                        pres = pres.relation(r);
                    }
                    pres
                })
        })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(a in algebra(), b in algebra(), names in (name(), name(), name())) {
            prop_assume!(a.name != b.name);
            let gens_b: Vec<String> = b.generators.iter().map(|g| g.name.clone()).collect();
            let defs = Definitions {
                algebras: vec![a.clone(), b.clone()],
                morphisms: vec![MorphismDef {
                    name: names.0.clone(),
                    source: a.name.clone(),
                    target: b.name.clone(),
                    images: vec![(a.generators[0].name.clone(), Polynomial::generator(&gens_b[0]))],
                }],
                triples: vec![TripleDef {
                    name: names.1.clone(),
                    left: b.name.clone(),
                    f: names.0.clone(),
                    middle: a.name.clone(),
                    right: b.name.clone(),
                    g: names.0.clone(),
                }],
                ladders: vec![LadderDef {
                    name: names.2.clone(),
                    from: names.1.clone(),
                    to: names.1.clone(),
                    left: names.0.clone(),
                    middle: names.0.clone(),
                    right: names.0.clone(),
                }],
                positions: HashMap::new(),
            };
            let text = defs.render();
            let back = parse_syntax(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(&back, &defs);
            prop_assert_eq!(back.render(), text);
        }
    }
}
