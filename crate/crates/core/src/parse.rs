//! Text input for group words, ring elements and matrix literals.
//!
//! ```text
//! word     := term { term }
//! term     := IDENT [ '^' INT ]
//! ringexpr := product { ('+'|'-') product }
//! product  := atom { '*' atom }
//! atom     := RATIONAL | IDENT [ '^' INT ] | '(' ringexpr ')' | matrix
//! matrix   := '[' row { ',' row } ']'
//! row      := '[' ringexpr { ',' ringexpr } ']'
//! ```
//!
//! A leading `-` is accepted before a product, so printed elements parse back.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::poly::LaurentPoly;
use crate::ring::{GradedElement, MatrixBase, Mono, RingInstance, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExprKind {
    GroupWord,
    RingElement,
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Group(GroupElement),
    Ring(GradedElement),
}

pub fn parse_expression(inst: &RingInstance, kind: ExprKind, text: &str) -> Result<Parsed> {
    match kind {
        ExprKind::GroupWord => parse_group_word(inst.group(), text).map(Parsed::Group),
        ExprKind::RingElement => parse_ring_element(inst, text).map(Parsed::Ring),
        ExprKind::Matrix => parse_matrix(inst, text).map(Parsed::Ring),
    }
}

pub fn parse_group_word(group: &Group, text: &str) -> Result<GroupElement> {
    group.parse_word(text)
}

pub fn parse_ring_element(inst: &RingInstance, text: &str) -> Result<GradedElement> {
    let expr = parse_ast(text)?;
    let a = eval_ring(inst, &expr)?;
    inst.check(&a)?;
    Ok(a)
}

/// Like [`parse_ring_element`], but the text must be a single matrix literal.
pub fn parse_matrix(inst: &RingInstance, text: &str) -> Result<GradedElement> {
    let expr = parse_ast(text)?;
    if !matches!(expr, Expr::Matrix(_)) {
        return Err(Error::Syntax { pos: 0, msg: "expected a matrix literal".into() });
    }
    eval_ring(inst, &expr)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Pow(i64),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '^' {
            let mut j = i + 1;
            if j < bytes.len() && bytes[j] == b'-' {
                j += 1;
            }
            let end = digits(j);
            if end == j {
                return Err(Error::Syntax { pos: i, msg: "expected an integer exponent after `^`".into() });
            }
            let e: i64 = text[i + 1..end].parse().map_err(|_| Error::Overflow(text[i + 1..end].to_string()))?;
            out.push((start, Tok::Pow(e)));
            i = end;
        } else if c.is_ascii_digit() {
            let mut end = digits(i);
            let numer: BigInt = text[i..end].parse().expect("digits");
            let mut q = BigRational::from_integer(numer);
            if end < bytes.len() && bytes[end] == b'/' {
                let d_end = digits(end + 1);
                if d_end == end + 1 {
                    return Err(Error::Syntax { pos: end, msg: "expected a denominator after `/`".into() });
                }
                let denom: BigInt = text[end + 1..d_end].parse().expect("digits");
                if denom == BigInt::from(0) {
                    return Err(Error::Syntax { pos: end + 1, msg: "zero denominator".into() });
                }
                q /= BigRational::from_integer(denom);
                end = d_end;
            }
            out.push((start, Tok::Num(q)));
            i = end;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            out.push((start, Tok::Ident(text[i..j].to_string())));
            i = j;
        } else {
            let ch = text[i..].chars().next().expect("in bounds");
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Num(BigRational),
    Sym { name: String, exp: i64, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Matrix(Vec<Vec<Expr>>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ringexpr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat(&Tok::Minus) { Expr::Neg(Box::new(self.product()?)) } else { self.product()? };
        loop {
            if self.eat(&Tok::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.atom()?;
        while self.eat(&Tok::Star) {
            acc = Expr::Mul(Box::new(acc), Box::new(self.atom()?));
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.at += 1;
                Ok(Expr::Num(q))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let exp = match self.peek() {
                    Some(Tok::Pow(e)) => {
                        let e = *e;
                        self.at += 1;
                        e
                    }
                    _ => 1,
                };
                Ok(Expr::Sym { name, exp, pos })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.ringexpr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::LBrack) => self.matrix(),
            Some(_) => self.err("expected a number, symbol, `(` or `[`"),
            None => self.err("unexpected end of input"),
        }
    }

    fn matrix(&mut self) -> Result<Expr> {
        self.expect(Tok::LBrack, "`[`")?;
        let mut rows = vec![self.row()?];
        while self.eat(&Tok::Comma) {
            rows.push(self.row()?);
        }
        self.expect(Tok::RBrack, "`]`")?;
        Ok(Expr::Matrix(rows))
    }

    fn row(&mut self) -> Result<Vec<Expr>> {
        self.expect(Tok::LBrack, "`[` opening a row")?;
        let mut row = vec![self.ringexpr()?];
        while self.eat(&Tok::Comma) {
            row.push(self.ringexpr()?);
        }
        self.expect(Tok::RBrack, "`]` closing a row")?;
        Ok(row)
    }
}

fn parse_ast(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, end: text.len() };
    let e = p.ringexpr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn eval_laurent(inst: &RingInstance, e: &Expr) -> Result<LaurentPoly> {
    let field = inst.field();
    Ok(match e {
        Expr::Num(q) => LaurentPoly::monomial(field.from_rational(q)?, 0),
        Expr::Sym { name, exp, .. } if name == "t" => LaurentPoly::monomial(field.one(), *exp),
        Expr::Sym { name, .. } => return Err(Error::UnknownSymbol(name.clone())),
        Expr::Neg(a) => eval_laurent(inst, a)?.neg(),
        Expr::Add(a, b) => eval_laurent(inst, a)?.add(&eval_laurent(inst, b)?),
        Expr::Sub(a, b) => eval_laurent(inst, a)?.sub(&eval_laurent(inst, b)?),
        Expr::Mul(a, b) => eval_laurent(inst, a)?.mul(&eval_laurent(inst, b)?),
        Expr::Matrix(_) => return Err(Error::Syntax { pos: 0, msg: "nested matrix literal".into() }),
    })
}

fn eval_ring(inst: &RingInstance, e: &Expr) -> Result<GradedElement> {
    Ok(match e {
        Expr::Num(q) => inst.scalar(inst.field().from_rational(q)?),
        Expr::Sym { name, exp, pos } => symbol(inst, name, *exp, *pos)?,
        Expr::Neg(a) => inst.neg(&eval_ring(inst, a)?),
        Expr::Add(a, b) => inst.add(&eval_ring(inst, a)?, &eval_ring(inst, b)?),
        Expr::Sub(a, b) => inst.sub(&eval_ring(inst, a)?, &eval_ring(inst, b)?),
        Expr::Mul(a, b) => inst.mul(&eval_ring(inst, a)?, &eval_ring(inst, b)?),
        Expr::Matrix(rows) => {
            if !inst.is_matrix() {
                return Err(Error::InvalidInstance(format!("{} has no matrix literals", inst.name())));
            }
            let entries = rows
                .iter()
                .map(|r| r.iter().map(|x| eval_laurent(inst, x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            inst.from_matrix(&entries)?
        }
    })
}

fn symbol(inst: &RingInstance, name: &str, exp: i64, pos: usize) -> Result<GradedElement> {
    let one = inst.field().one();
    let unknown = || Error::UnknownSymbol(name.to_string());
    let nonneg = |e: i64| {
        if e < 0 {
            Err(Error::Syntax { pos, msg: format!("negative exponent on `{name}`") })
        } else {
            Ok(e as u64)
        }
    };
    let mono = |m: Mono| {
        if inst.mono_valid(&m) {
            Ok(inst.monomial(m, one.clone()))
        } else {
            Err(Error::Syntax { pos, msg: format!("`{name}^{exp}` is not in {}", inst.name()) })
        }
    };
    match inst.kind() {
        RingKind::Nastasescu { .. } => match name {
            "x" => mono(Mono::new(0, nonneg(exp)? as i64)),
            "y" => mono(Mono::new(0, -(nonneg(exp)? as i64))),
            _ => Err(unknown()),
        },
        RingKind::PolyD { .. } => match name {
            "t" => mono(Mono::new(0, nonneg(exp)? as i64)),
            _ => Err(unknown()),
        },
        RingKind::DirectSumLaurent { .. } => match name {
            "x" => mono(Mono::new(0, exp)),
            "y" => mono(Mono::new(1, exp)),
            _ => Err(unknown()),
        },
        RingKind::GroupAlgebra { elements } => {
            let g = inst.group();
            let el = g.pow(&g.generator(name).map_err(|_| unknown())?, exp);
            let idx = elements.iter().position(|x| *x == el).expect("group algebra lists every element");
            mono(Mono::new(0, idx as i64))
        }
        RingKind::Matrix { .. } | RingKind::Bazhenov => matrix_symbol(inst, name, exp, pos),
    }
}

fn matrix_symbol(inst: &RingInstance, name: &str, exp: i64, pos: usize) -> Result<GradedElement> {
    let field = inst.field();
    let laurent = matches!(inst.kind(), RingKind::Matrix { base: MatrixBase::Laurent { .. }, .. });
    let n = match inst.kind() {
        RingKind::Matrix { shifts, .. } => shifts.len(),
        _ => 2,
    };
    let zero = || LaurentPoly::zero(field);
    let t = |e: i64| LaurentPoly::monomial(field.one(), e);
    let mut m = vec![vec![zero(); n]; n];
    let check_exp = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(Error::Syntax { pos, msg: format!("negative exponent on `{name}`") })
        }
    };
    let bazhenov = matches!(inst.kind(), RingKind::Bazhenov);
    match name {
        "t" if !matches!(inst.kind(), RingKind::Matrix { base: MatrixBase::GroundField, .. }) => {
            check_exp(laurent || exp >= 0)?;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = t(exp);
            }
        }
        "x" | "y" | "z" if bazhenov => {
            check_exp(exp >= 0)?;
            let base = match name {
                "x" => [[t(1), zero()], [zero(), zero()]],
                "y" => [[zero(), zero()], [zero(), t(1)]],
                _ => [[zero(), t(0)], [t(0), zero()]],
            };
            let g = inst.from_matrix(&base.map(|r| r.to_vec()))?;
            return Ok(inst.pow(&g, exp as u64));
        }
        _ => {
            let (i, j) = unit_indices(name, n).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            if bazhenov {
                return Err(Error::UnknownSymbol(name.to_string()));
            }
            check_exp(exp >= 1)?;
            m[i][j] = t(0);
            let unit = inst.from_matrix(&m)?;
            return Ok(inst.pow(&unit, exp as u64));
        }
    }
    inst.from_matrix(&m)
}

/// `e12` and the like; two digits, so `n <= 9`.
fn unit_indices(name: &str, n: usize) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('e')?;
    let d: Vec<usize> = rest.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?;
    match d[..] {
        [i, j] if (1..=n).contains(&i) && (1..=n).contains(&j) => Some((i - 1, j - 1)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn d_inf_matrix() -> RingInstance {
        let g = Group::InfiniteDihedral;
        RingInstance::counterexample(g.clone(), g.parse_word("s").unwrap(), g.parse_word("r").unwrap(), Field::Rational).unwrap()
    }

    #[test]
    fn nastasescu_expression() {
        let n = RingInstance::nastasescu_default(Field::Rational);
        let a = parse_ring_element(&n, "3*x^2 + y").unwrap();
        assert_eq!(a.degrees().count(), 2);
        assert_eq!(n.format_element(&a), "y + 3*x^2");
        assert_eq!(parse_ring_element(&n, "x*y").unwrap(), n.zero());
        assert_eq!(n.format_element(&parse_ring_element(&n, "(1/2 - x)*(2 + x)").unwrap()), "1 - 3/2*x - x^2");
    }

    #[test]
    fn matrix_literal() {
        let r = d_inf_matrix();
        let a = parse_matrix(&r, "[[t,0],[0,1]]").unwrap();
        assert_eq!(r.format_element(&a), "[[t, 0], [0, 1]]");
        assert_eq!(parse_ring_element(&r, "t*e11 + e22").unwrap(), a);
        assert!(matches!(parse_matrix(&r, "t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_matrix(&r, "[[t^-1,0],[0,1]]"), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn errors_carry_positions() {
        let n = RingInstance::nastasescu_default(Field::Rational);
        assert_eq!(parse_ring_element(&n, "x + * y"), Err(Error::Syntax { pos: 4, msg: "expected a number, symbol, `(` or `[`".into() }));
        assert_eq!(parse_ring_element(&n, "x + q"), Err(Error::UnknownSymbol("q".into())));
        assert!(matches!(parse_ring_element(&n, "x $"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ring_element(&n, "(x"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ring_element(&n, "x^"), Err(Error::Syntax { pos: 1, .. })));
    }

    #[test]
    fn group_word() {
        let g = Group::InfiniteDihedral;
        let inst = RingInstance::group_algebra(Group::builtin_table("S3").unwrap(), Field::Rational).unwrap();
        assert_eq!(parse_group_word(&g, "r^3 s r^-1").unwrap(), GroupElement::Dihedral { k: 4, flip: true });
        assert!(matches!(parse_expression(&inst, ExprKind::GroupWord, "e"), Ok(Parsed::Group(_))));
    }

    #[test]
    fn bazhenov_symbols() {
        let b = RingInstance::bazhenov(Field::Rational);
        let x = parse_ring_element(&b, "x").unwrap();
        let z = parse_ring_element(&b, "z").unwrap();
        let y = parse_ring_element(&b, "y").unwrap();
        assert_eq!(b.mul(&x, &z), b.mul(&z, &y));
        assert_eq!(parse_ring_element(&b, "x + y").unwrap(), parse_ring_element(&b, "t").unwrap());
        assert!(parse_ring_element(&b, "e11").is_err());
    }

    #[test]
    fn round_trips() {
        let g = Group::InfiniteDihedral;
        let instances = vec![
            RingInstance::nastasescu_default(Field::Rational),
            RingInstance::poly_d(Group::Integers, GroupElement::Int(1), Field::Rational).unwrap(),
            d_inf_matrix(),
            RingInstance::laurent_matrix(g.clone(), g.parse_word("s").unwrap(), g.parse_word("r").unwrap(), Field::Rational).unwrap(),
            RingInstance::bazhenov(Field::Rational),
            RingInstance::group_algebra(Group::builtin_table("D4").unwrap(), Field::prime(7).unwrap()).unwrap(),
            RingInstance::direct_sum_laurent(Group::Integers, GroupElement::Int(1), Field::Rational).unwrap(),
        ];
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for inst in &instances {
            let degrees = inst.support(&inst.monomial_window(3));
            for d in &degrees {
                for _ in 0..3 {
                    let a = inst.random_homogeneous(&mut rng, d, 3).unwrap();
                    let b = inst.random_homogeneous(&mut rng, &degrees[0], 3).unwrap();
                    let x = inst.add(&a, &b);
                    let text = inst.format_element(&x);
                    assert_eq!(parse_ring_element(inst, &text).unwrap(), x, "{} : {text}", inst.name());
                }
            }
        }
    }
}
