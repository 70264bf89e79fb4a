//! Recursive-descent parser for regular functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')? factor ('*' factor)*
//! factor := atom ('^' exponent)?
//! atom   := 'det' | 'a' digit digit | 'a[' int ',' int ']' | number | 'i' | '(' expr ')'
//! ```
//!
//! Numbers are decimals or `p/q`, optionally suffixed by `i`. Exponents are integers, optionally
//! signed or parenthesized; negative exponents are accepted on units such as `det`.

use num_rational::BigRational;
use num_traits::Zero;

use super::{GlPolyError, RegularFunction, DEFAULT_MAX_DIMENSION};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num {
        value: BigRational,
        imag: bool,
        integer: bool,
    },
    ImagUnit,
    Det,
    Entry(usize, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num { .. } => "number".into(),
            Tok::ImagUnit => "'i'".into(),
            Tok::Det => "'det'".into(),
            Tok::Entry(..) => "matrix entry".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(pos: usize, expected: &str, found: impl Into<String>) -> GlPolyError {
    GlPolyError::Syntax {
        pos,
        expected: expected.into(),
        found: found.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, GlPolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let read_int = |i: usize| -> Option<(usize, usize)> {
        let start = i;
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        (j > start)
            .then(|| (text[start..j].parse().ok(), j))
            .and_then(|(v, j)| v.map(|v| (v, j)))
    };
    loop {
        i = skip_ws(i);
        if i >= bytes.len() {
            out.push((i, Tok::End));
            return Ok(out);
        }
        let start = i;
        let c = bytes[i] as char;
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            'i' => {
                i += 1;
                Tok::ImagUnit
            }
            'd' => {
                if text[i..].starts_with("det") {
                    i += 3;
                    Tok::Det
                } else {
                    return Err(syntax(i, "'det', entry, number or '('", c.to_string()));
                }
            }
            'a' => {
                if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    match bytes.get(i + 2) {
                        Some(d) if d.is_ascii_digit() => {
                            let r = (bytes[i + 1] - b'0') as usize;
                            let s = (*d - b'0') as usize;
                            i += 3;
                            Tok::Entry(r, s)
                        }
                        _ => return Err(syntax(i + 2, "second index digit", "other")),
                    }
                } else if bytes.get(i + 1) == Some(&b'[') {
                    let j = skip_ws(i + 2);
                    let (r, j) = read_int(j).ok_or_else(|| syntax(j, "row index", "other"))?;
                    let j = skip_ws(j);
                    if bytes.get(j) != Some(&b',') {
                        return Err(syntax(j, "','", "other"));
                    }
                    let j = skip_ws(j + 1);
                    let (s, j) = read_int(j).ok_or_else(|| syntax(j, "column index", "other"))?;
                    let j = skip_ws(j);
                    if bytes.get(j) != Some(&b']') {
                        return Err(syntax(j, "']'", "other"));
                    }
                    i = j + 1;
                    Tok::Entry(r, s)
                } else {
                    return Err(syntax(i + 1, "entry index", "other"));
                }
            }
            d if d.is_ascii_digit() || d == '.' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let mut integer = true;
                let fraction = j < bytes.len() && bytes[j] == b'.';
                let ratio =
                    j + 1 < bytes.len() && bytes[j] == b'/' && bytes[j + 1].is_ascii_digit();
                if fraction || ratio {
                    integer = false;
                    j += 1;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let value = scalar::parse_unsigned_rational(&text[i..j])
                    .ok_or_else(|| syntax(i, "number", &text[i..j]))?;
                let imag = bytes.get(j) == Some(&b'i');
                i = if imag { j + 1 } else { j };
                Tok::Num {
                    value,
                    imag,
                    integer,
                }
            }
            other => return Err(syntax(i, "'det', entry, number or '('", other.to_string())),
        };
        out.push((start, tok));
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<RegularFunction, GlPolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus | Tok::Minus => {
                    // The sign is consumed by `term`.
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RegularFunction, GlPolyError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn exponent(&mut self) -> Result<i64, GlPolyError> {
        let pos = self.pos();
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let value = match self.bump() {
            Tok::Num {
                value,
                imag: false,
                integer: true,
            } => value,
            Tok::Num { .. } => return Err(GlPolyError::NonIntegerExponent { pos }),
            other => return Err(syntax(pos, "integer exponent", other.describe())),
        };
        if paren {
            if *self.peek() == Tok::RParen {
                self.bump();
            } else if matches!(self.peek(), Tok::Num { .. }) {
                return Err(GlPolyError::NonIntegerExponent { pos });
            } else {
                return Err(syntax(self.pos(), "')'", self.peek().describe()));
            }
        }
        let v: i64 = value
            .to_integer()
            .try_into()
            .map_err(|_| syntax(pos, "exponent that fits in 64 bits", "overflow"))?;
        Ok(if negative { -v } else { v })
    }

    fn factor(&mut self) -> Result<RegularFunction, GlPolyError> {
        let is_det = *self.peek() == Tok::Det;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let k = self.exponent()?;
        if is_det && k < 0 {
            return Ok(RegularFunction::det_pow(self.n, k));
        }
        base.powi(k).ok_or(GlPolyError::NegativePower { pos })
    }

    fn atom(&mut self) -> Result<RegularFunction, GlPolyError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Det => Ok(RegularFunction::det(self.n)),
            Tok::Entry(i, j) => {
                if i < 1 || j < 1 || i > self.n || j > self.n {
                    return Err(GlPolyError::IndexOutOfRange {
                        pos,
                        i,
                        j,
                        n: self.n,
                    });
                }
                Ok(RegularFunction::entry(self.n, i - 1, j - 1))
            }
            Tok::Num { value, imag, .. } => {
                let c = if imag {
                    Scalar::new(BigRational::zero(), value)
                } else {
                    Scalar::new(value, BigRational::zero())
                };
                Ok(RegularFunction::constant(self.n, c))
            }
            Tok::ImagUnit => Ok(RegularFunction::constant(self.n, scalar::imaginary_unit())),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    other => Err(syntax(
                        self.toks[self.at.saturating_sub(1)].0,
                        "')'",
                        other.describe(),
                    )),
                }
            }
            other => Err(syntax(
                pos,
                "'det', entry, number, 'i' or '('",
                other.describe(),
            )),
        }
    }
}

/// Parses with the default dimension cap.
pub fn parse(text: &str, n: usize) -> Result<RegularFunction, GlPolyError> {
    parse_with_limit(text, n, DEFAULT_MAX_DIMENSION)
}

pub fn parse_with_limit(
    text: &str,
    n: usize,
    max_n: usize,
) -> Result<RegularFunction, GlPolyError> {
    if n == 0 || n > max_n {
        return Err(GlPolyError::Dimension { n, max: max_n });
    }
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, n };
    let f = p.expr()?;
    match p.peek() {
        Tok::End => Ok(f),
        other => Err(syntax(
            p.pos(),
            "operator or end of input",
            other.describe(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{from_int, gaussian, rational};

    #[test]
    fn parses_det_as_polynomial() {
        let f = parse("det", 2).unwrap();
        assert_eq!(f.det_power(), 0);
        assert_eq!(f, RegularFunction::det(2));
    }

    #[test]
    fn parses_negative_det_power() {
        let f = parse("det^-1 + a11", 2).unwrap();
        assert_eq!(f.det_power(), -1);
        let g = parse("det^(-2)", 3).unwrap();
        assert_eq!(g, RegularFunction::det_pow(3, -2));
    }

    #[test]
    fn parses_complex_and_rational_coefficients() {
        let f = parse("(1+2i)*a11^2 + 3/4*det^-2", 2).unwrap();
        let g = RegularFunction::entry(2, 0, 0)
            .pow(2)
            .scale(&gaussian(rational(1, 1), rational(2, 1)))
            .add(&RegularFunction::det_pow(2, -2).scale(&gaussian(rational(3, 4), rational(0, 1))));
        assert!(f.probably_equal(&g, 5));
        let h = parse("a[1,2] - 0.5*i", 2).unwrap();
        let expected = RegularFunction::entry(2, 0, 1).sub(&RegularFunction::constant(
            2,
            gaussian(rational(0, 1), rational(1, 2)),
        ));
        assert_eq!(h, expected);
    }

    #[test]
    fn reports_errors_with_positions() {
        assert!(matches!(
            parse("a13", 2),
            Err(GlPolyError::IndexOutOfRange {
                pos: 0,
                i: 1,
                j: 3,
                n: 2
            })
        ));
        assert!(matches!(
            parse("det^(1/2)", 2),
            Err(GlPolyError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse("det^1.5", 2),
            Err(GlPolyError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse("a11^-1", 2),
            Err(GlPolyError::NegativePower { .. })
        ));
        match parse("a11 + * a22", 2) {
            Err(GlPolyError::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("(a11", 2), Err(GlPolyError::Syntax { .. })));
        assert!(matches!(
            parse("a11 a22", 2),
            Err(GlPolyError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse("det", 9),
            Err(GlPolyError::Dimension { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "a11^2 + 2*det",
            "det^-1 + a11",
            "(1+2i)*a11^2 + 3/4*det^-2",
            "-a12*a21 + i",
            "det^-3",
        ] {
            let f = parse(text, 2).unwrap();
            let again = parse(&f.to_string(), 2).unwrap();
            assert_eq!(f, again, "{text} -> {f}");
        }
        assert_eq!(parse("2*a11 - 3", 2).unwrap().to_string(), "-3 + 2*a11");
        assert_eq!(
            parse("7", 2).unwrap(),
            RegularFunction::constant(2, from_int(7))
        );
    }
}
