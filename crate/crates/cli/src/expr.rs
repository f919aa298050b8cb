//! Recursive-descent parser and canonical printer for field expressions.
//!
//! Grammar (plus an optional leading sign, which the printer needs for
//! negative leading coefficients):
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' uint)?
//! base   := uint | 'i' | 'x0'|'x1'|'x2'|'x3' | 'r2' | '(' expr ')'
//! ```
//!
//! Division is accepted exactly when the divisor lowers to a unit of the
//! ring, i.e. a nonzero constant times a power of `r2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use fueter::scalar::{ec_i, ExactComplex};
use fueter::SymField;

use crate::CliError;

/// Abstract syntax tree for field expressions. Every node that can fail
/// during lowering carries the source position of its operator token.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Nat(BigInt),
    ImaginaryUnit,
    Var(u8),
    R2,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32, usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => pos += 1,
            '+' => {
                out.push((Tok::Plus, pos));
                pos += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                pos += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                pos += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                pos += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                pos += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                pos += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                pos += 1;
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &src[start..pos];
                let n = digits.parse::<BigInt>().map_err(|e| CliError::Syntax {
                    pos: start,
                    msg: format!("bad integer literal: {e}"),
                })?;
                out.push((Tok::Nat(n), start));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric()) {
                    pos += 1;
                }
                out.push((Tok::Ident(src[start..pos].to_string()), start));
            }
            other => {
                return Err(CliError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Nesting bound; keeps adversarial inputs from exhausting the stack.
const MAX_DEPTH: usize = 256;

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    len: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|(_, p)| *p)
            .unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(CliError::Syntax {
                pos: self.pos(),
                msg: "expression is nested too deeply".into(),
            });
        }
        let out = self.expr_inner();
        self.depth -= 1;
        out
    }

    fn expr_inner(&mut self) -> Result<Expr, CliError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    let (_, p) = self.bump().expect("peeked");
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?), p);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some((Tok::Nat(n), _)) => {
                    let e = u32::try_from(&n).map_err(|_| CliError::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Expr::Pow(Box::new(base), e, pos))
                }
                _ => Err(CliError::Syntax {
                    pos,
                    msg: "expected a nonnegative integer exponent after `^`".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        match self.bump() {
            Some((Tok::Nat(n), _)) => Ok(Expr::Nat(n)),
            Some((Tok::Ident(name), p)) => match name.as_str() {
                "i" => Ok(Expr::ImaginaryUnit),
                "x0" => Ok(Expr::Var(0)),
                "x1" => Ok(Expr::Var(1)),
                "x2" => Ok(Expr::Var(2)),
                "x3" => Ok(Expr::Var(3)),
                "r2" => Ok(Expr::R2),
                other => Err(CliError::Syntax {
                    pos: p,
                    msg: format!("unknown symbol `{other}` (expected i, x0..x3 or r2)"),
                }),
            },
            Some((Tok::LParen, p)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => Err(CliError::Syntax {
                        pos: p,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some((tok, p)) => Err(CliError::Syntax {
                pos: p,
                msg: format!("unexpected token {tok:?}"),
            }),
            None => Err(CliError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse a source string into an expression tree.
pub fn parse_expr(src: &str) -> Result<Expr, CliError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        len: src.len(),
        depth: 0,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(CliError::Syntax {
            pos: p.pos(),
            msg: "trailing input after expression".into(),
        });
    }
    Ok(e)
}

/// Degree budget for lowered fields, measured as numerator degree plus
/// twice the denominator exponent. Keeps pathological inputs (nested
/// powers, long product chains) from exhausting memory while staying far
/// above anything the analysis pipelines need.
const SIZE_LIMIT: u64 = 16_000;

fn weight(f: &SymField) -> u64 {
    f.num().total_degree().unwrap_or(0) as u64 + 2 * f.denom_exp() as u64
}

fn oversize(pos: usize) -> CliError {
    CliError::Syntax {
        pos,
        msg: format!("expression exceeds the degree budget ({SIZE_LIMIT})"),
    }
}

/// Lower an expression tree to its canonical field.
pub fn lower(e: &Expr) -> Result<SymField, CliError> {
    Ok(match e {
        Expr::Nat(n) => SymField::constant(ExactComplex::new(
            BigRational::from_integer(n.clone()),
            BigRational::zero(),
        )),
        Expr::ImaginaryUnit => SymField::constant(ec_i()),
        Expr::Var(a) => SymField::var(*a as usize),
        Expr::R2 => SymField::r2(),
        Expr::Neg(inner) => lower(inner)?.neg(),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let x = lower(a)?;
            let y = lower(b)?;
            if weight(&x) + 2 * weight(&y) > 2 * SIZE_LIMIT {
                return Err(oversize(0));
            }
            if matches!(e, Expr::Add(..)) {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        }
        Expr::Mul(a, b) => {
            let a = lower(a)?;
            let b = lower(b)?;
            if weight(&a) + weight(&b) > SIZE_LIMIT {
                return Err(oversize(0));
            }
            a.mul(&b)
        }
        Expr::Div(a, b, pos) => {
            let num = lower(a)?;
            let den = lower(b)?;
            num.div_unit(&den)
                .ok_or(CliError::NonR2Denominator { pos: *pos })?
        }
        Expr::Pow(a, n, pos) => {
            let base = lower(a)?;
            // the exponent cap also bounds the work for constant bases
            if *n as u64 > SIZE_LIMIT || weight(&base).saturating_mul(*n as u64) > SIZE_LIMIT {
                return Err(oversize(*pos));
            }
            base.pow(*n)
        }
    })
}

/// Parse and lower in one step.
pub fn expr_to_field(src: &str) -> Result<SymField, CliError> {
    lower(&parse_expr(src)?)
}

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Magnitude string and sign for one coefficient. Mixed complex
/// coefficients print parenthesized with a positive overall sign.
fn coeff_str(c: &ExactComplex) -> (bool, String) {
    if c.im.is_zero() {
        (c.re.is_negative(), rat_str(&c.re.abs()))
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let s = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rat_str(&mag))
        };
        (c.im.is_negative(), s)
    } else {
        let im_mag = c.im.abs();
        let im_part = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rat_str(&im_mag))
        };
        let op = if c.im.is_negative() { "-" } else { "+" };
        (false, format!("({} {} {})", rat_str(&c.re), op, im_part))
    }
}

/// Canonical in-grammar rendering of a field: terms in descending
/// graded-lex order over `r2^m`.
pub fn field_to_expr_string(f: &SymField) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (mono, coeff) in f.num().terms() {
        let (neg, mag) = coeff_str(coeff);
        let mut factors = Vec::new();
        let monomial_present = mono.degree() > 0;
        if mag != "1" || !monomial_present {
            factors.push(mag);
        }
        for axis in 0..4 {
            match mono.0[axis] {
                0 => {}
                1 => factors.push(format!("x{axis}")),
                e => factors.push(format!("x{axis}^{e}")),
            }
        }
        terms.push((neg, factors.join("*")));
    }
    terms.reverse(); // descending graded-lex
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                out.push('-');
            }
        } else {
            out.push_str(if *neg { " - " } else { " + " });
        }
        out.push_str(body);
    }
    if f.denom_exp() > 0 {
        let needs_parens = f.num().num_terms() > 1;
        let num = if needs_parens {
            format!("({out})")
        } else {
            out
        };
        if f.denom_exp() == 1 {
            return format!("{num}/r2");
        }
        return format!("{num}/r2^{}", f.denom_exp());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        // polynomial with an imaginary part
        let f = expr_to_field("x0^2 - x1^2 + i*x2").unwrap();
        assert!(f.is_polynomial());
        assert_eq!(
            f,
            SymField::var(0)
                .pow(2)
                .sub(&SymField::var(1).pow(2))
                .add(&SymField::var(2).scale(&ec_i()))
        );
        // rational field
        let f = expr_to_field("x0 / r2^2").unwrap();
        assert_eq!(f.denom_exp(), 2);
        assert_eq!(f.num(), SymField::var(0).num());
        // rejected divisor
        match expr_to_field("x0 / x1") {
            Err(CliError::NonR2Denominator { .. }) => {}
            other => panic!("expected NonR2Denominator, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match expr_to_field("x0 + $") {
            Err(CliError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match expr_to_field("x9") {
            Err(CliError::Syntax { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(expr_to_field("x0 +").is_err());
        assert!(expr_to_field("(x0").is_err());
        assert!(expr_to_field("x0^(2)").is_err());
        assert!(expr_to_field("").is_err());
    }

    #[test]
    fn division_by_units() {
        // constants are units
        let f = expr_to_field("3/4").unwrap();
        assert_eq!(f, SymField::constant(fueter::scalar::ec_rat(3, 4)));
        // i is a unit
        assert!(expr_to_field("x0/i").is_ok());
        // 2*r2 is a unit
        let f = expr_to_field("x1/(2*r2)").unwrap();
        assert_eq!(f.denom_exp(), 1);
        // zero is not
        assert!(matches!(
            expr_to_field("x0/0"),
            Err(CliError::NonR2Denominator { .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        let cases = [
            "0",
            "1",
            "-x0",
            "x0^2 - x1^2 + i*x2",
            "x0/r2^2",
            "(x0 + x1)/r2",
            "(1/3 + 2/3*i)*x0*x1^2 - 5*x3",
            "1/r2",
        ];
        for src in cases {
            let f = expr_to_field(src).unwrap();
            let printed = field_to_expr_string(&f);
            let f2 = expr_to_field(&printed).unwrap();
            assert_eq!(f, f2, "round trip through `{printed}` from `{src}`");
        }
    }
}
