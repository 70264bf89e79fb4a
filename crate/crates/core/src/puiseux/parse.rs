//! Series literals: sums of products of numbers, `i` and powers of `t`, with an optional
//! `O(t^q)` term fixing the truncation order.
//!
//! ```text
//! series   := ['+' | '-'] term (('+' | '-') term)*
//! term     := 'O' '(' power ')' | factor ('*' factor)*
//! factor   := number ['i'] | 'i' | power | '(' series ')'
//! power    := 't' ['^' exponent]
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```

use super::series::{Exponent, PuiseuxSeries};
use super::PuiseuxError;
use crate::scalar;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, expected: &str) -> PuiseuxError {
        let found = self.text[self.pos..]
            .chars()
            .next()
            .map_or("end of input".to_string(), |c| format!("'{c}'"));
        PuiseuxError::Syntax {
            pos: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), PuiseuxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn integer(&mut self) -> Result<i64, PuiseuxError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.text[self.pos..].starts_with('-');
        if negative {
            self.pos += 1;
        }
        let digits = self.text[self.pos..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            self.pos = start;
            return Err(self.error("integer"));
        }
        self.pos += digits;
        self.text[start..self.pos]
            .parse()
            .map_err(|_| PuiseuxError::Syntax {
                pos: start,
                expected: "integer fitting in 64 bits".to_string(),
                found: self.text[start..self.pos].to_string(),
            })
    }

    fn exponent(&mut self) -> Result<Exponent, PuiseuxError> {
        if self.eat('(') {
            let p = self.integer()?;
            let q = if self.eat('/') {
                let at = self.pos;
                let q = self.integer()?;
                if q <= 0 {
                    self.pos = at;
                    return Err(self.error("positive denominator"));
                }
                q
            } else {
                1
            };
            self.expect(')')?;
            Ok(Exponent::new(p, q))
        } else {
            Ok(Exponent::from_integer(self.integer()?))
        }
    }

    fn power(&mut self) -> Result<Exponent, PuiseuxError> {
        self.expect('t')?;
        if self.eat('^') {
            self.exponent()
        } else {
            Ok(Exponent::from_integer(1))
        }
    }

    fn factor(&mut self) -> Result<PuiseuxSeries, PuiseuxError> {
        match self.peek() {
            Some('t') => Ok(PuiseuxSeries::t_pow(self.power()?)),
            Some('i') => {
                self.pos += 1;
                Ok(PuiseuxSeries::constant(scalar::imaginary_unit()))
            }
            Some('(') => {
                self.pos += 1;
                let s = self.series()?;
                self.expect(')')?;
                Ok(s)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                let len = self.text[start..]
                    .chars()
                    .take_while(|c| c.is_ascii_digit() || *c == '.' || *c == '/')
                    .count();
                self.pos += len;
                let r = scalar::parse_unsigned_rational(&self.text[start..self.pos]).ok_or_else(
                    || PuiseuxError::Syntax {
                        pos: start,
                        expected: "number".to_string(),
                        found: self.text[start..self.pos].to_string(),
                    },
                )?;
                let mut c = scalar::from_rational(r);
                // `2i` as written by the scalar formatter.
                if self.text[self.pos..].starts_with('i') {
                    self.pos += 1;
                    c *= scalar::imaginary_unit();
                }
                Ok(PuiseuxSeries::constant(c))
            }
            _ => Err(self.error("number, 'i', 't' or '('")),
        }
    }

    /// A term, or the truncation order of an `O(...)` term.
    fn term(&mut self) -> Result<Result<PuiseuxSeries, Exponent>, PuiseuxError> {
        if self.peek() == Some('O') {
            self.pos += 1;
            self.expect('(')?;
            let q = self.power()?;
            self.expect(')')?;
            return Ok(Err(q));
        }
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(Ok(acc))
    }

    fn series(&mut self) -> Result<PuiseuxSeries, PuiseuxError> {
        let mut acc = PuiseuxSeries::exact_zero();
        let mut trunc: Option<Exponent> = None;
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let at = self.pos;
            match self.term()? {
                Ok(t) => acc = acc.add(&if negative { t.neg() } else { t }),
                Err(q) => {
                    if trunc.is_some() {
                        self.pos = at;
                        return Err(self.error("at most one O(...) term"));
                    }
                    trunc = Some(q);
                }
            }
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(match trunc {
            Some(q) => acc.with_trunc(q),
            None => acc,
        })
    }
}

/// Parses a series literal such as `1 - 2*t^(1/2) + t^3 + O(t^4)`.
pub fn parse_series(text: &str) -> Result<PuiseuxSeries, PuiseuxError> {
    let mut p = Parser { text, pos: 0 };
    let s = p.series()?;
    if p.peek().is_some() {
        return Err(p.error("'+', '-' or end of input"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        for text in [
            "1 - 2*t^(1/2) + t^3",
            "t^-1 + (1+2i)*t + O(t^4)",
            "O(t^(5/2))",
            "0",
            "-i*t^(1/3) + 3/4*t^2",
            "(-2i)*t",
        ] {
            let s = parse_series(text).unwrap();
            let again = parse_series(&s.to_string()).unwrap();
            assert_eq!(s, again, "{text} -> {s}");
        }
    }

    #[test]
    fn products_and_truncation() {
        let s = parse_series("(1 + t)*(1 - t) + O(t^2)").unwrap();
        assert_eq!(s.to_string(), "1 + O(t^2)");
        assert!(matches!(
            parse_series("1 + "),
            Err(PuiseuxError::Syntax { pos: 4, .. })
        ));
        assert!(parse_series("t^(1/0)").is_err());
        assert!(parse_series("O(t) + O(t^2)").is_err());
    }
}
