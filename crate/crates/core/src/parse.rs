//! Expression syntax for field elements: rationals and rational functions in
//! `t`, e.g. `-3/4`, `0.25`, `t^2 + 1`, `(t+1)/(2t - 3)`, `3(t-1)^2/t`.

use rug::Rational;

use crate::arith::QPoly;
use crate::numeric::parse_rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` at offset {offset}: {message}")]
pub struct SyntaxError {
    pub input: String,
    pub offset: usize,
    pub message: String,
}

/// An unreduced quotient of polynomials with nonzero denominator.
#[derive(Clone, Debug)]
pub struct Fraction {
    pub num: QPoly,
    pub den: QPoly,
}

impl Fraction {
    fn constant(q: Rational) -> Self {
        Fraction {
            num: QPoly::constant(q),
            den: QPoly::one(),
        }
    }
    fn mul(&self, o: &Fraction) -> Fraction {
        Fraction {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }
    fn add(&self, o: &Fraction) -> Fraction {
        Fraction {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }
    fn neg(&self) -> Fraction {
        Fraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn recip(&self) -> Option<Fraction> {
        (!self.num.is_zero()).then(|| Fraction {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
    /// Whether the variable `t` actually survives after reduction.
    pub fn mentions_variable(&self) -> bool {
        let g = self.num.gcd(&self.den);
        let num = if g.is_zero() {
            self.num.clone()
        } else {
            self.num.exact_div(&g).unwrap()
        };
        let den = if g.is_zero() {
            self.den.clone()
        } else {
            self.den.exact_div(&g).unwrap()
        };
        !num.is_constant() || !den.is_constant()
    }
}

pub fn parse_fraction(input: &str) -> Result<Fraction, SyntaxError> {
    let mut p = Parser {
        src: input,
        chars: input.char_indices().collect(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn error(&self, message: &str) -> SyntaxError {
        SyntaxError {
            input: self.src.to_string(),
            offset: self.offset(),
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Fraction, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Fraction, SyntaxError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.unary()?;
                acc = acc.mul(&d.recip().ok_or_else(|| SyntaxError {
                    input: self.src.to_string(),
                    offset: at,
                    message: "division by zero".to_string(),
                })?);
            } else {
                self.skip_ws();
                match self.peek() {
                    // Juxtaposition such as `2t` or `3(t+1)`.
                    Some(c) if c == 't' || c == '(' || c.is_ascii_digit() => {
                        acc = acc.mul(&self.power()?);
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<Fraction, SyntaxError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Fraction, SyntaxError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let negative = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let e: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
        let raised = Fraction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        };
        if negative {
            raised
                .recip()
                .ok_or_else(|| self.error("zero raised to a negative power"))
        } else {
            Ok(raised)
        }
    }

    fn atom(&mut self) -> Result<Fraction, SyntaxError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some('t') => {
                self.pos += 1;
                Ok(Fraction {
                    num: QPoly::t(),
                    den: QPoly::one(),
                })
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                let q = parse_rational(&text).ok_or_else(|| self.error("malformed number"))?;
                Ok(Fraction::constant(q))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
