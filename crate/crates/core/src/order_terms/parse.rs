//! Text syntax for terms:
//! `term := summand ('+' summand)*`,
//! `summand := INT | 'w(' term ')' | 'ws(' term ')' | 'z(' term ')' | atom`.
//! `0` is the empty order, `1` a plain point, `n ≥ 2` a finite chain.

use crate::error::{Error, Result};

use super::term::{Label, Letter, OrderTerm, Term};

/// Largest accepted integer literal.
pub const MAX_LITERAL: u64 = 1_000_000;

pub struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected identifier");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'-') {
            return self.err("negative integer literal");
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<u64>() {
            Ok(n) if n <= MAX_LITERAL => Ok(n),
            _ => Err(Error::Syntax {
                pos: start,
                msg: format!("integer literal exceeds {MAX_LITERAL}"),
            }),
        }
    }

    /// Parse a term whose non-numeric atoms are read by `atom`. The hook
    /// returns `None` when the input does not start an atom.
    pub fn term<A: Letter>(
        &mut self,
        atom: &dyn Fn(&mut Parser<'a>) -> Option<Result<A>>,
    ) -> Result<Term<A>> {
        let mut parts = vec![self.summand(atom)?];
        while self.eat("+") {
            parts.push(self.summand(atom)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Term::Sum(parts)
        })
    }

    fn summand<A: Letter>(
        &mut self,
        atom: &dyn Fn(&mut Parser<'a>) -> Option<Result<A>>,
    ) -> Result<Term<A>> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let n = self.integer()?;
                Ok(match n {
                    0 => Term::Zero,
                    1 => Term::unit(),
                    n => Term::Fin(n),
                })
            }
            Some(_) => {
                for (kw, ctor) in [
                    ("ws(", Term::OmegaStar as fn(Box<Term<A>>) -> Term<A>),
                    ("w(", Term::Omega),
                    ("z(", Term::Zeta),
                ] {
                    if self.eat(kw) {
                        let body = self.term(atom)?;
                        self.expect(")")?;
                        return Ok(ctor(Box::new(body)));
                    }
                }
                match atom(self) {
                    Some(r) => Ok(Term::Atom(r?)),
                    None => self.err("unexpected character"),
                }
            }
        }
    }
}

fn label_atom(p: &mut Parser<'_>) -> Option<Result<Label>> {
    if p.eat("atom(") {
        Some(p.ident().and_then(|id| p.expect(")").map(|_| Label(id))))
    } else {
        None
    }
}

/// Parse an order term.
pub fn parse_term(text: &str) -> Result<OrderTerm> {
    let mut p = Parser::new(text);
    let t = p.term(&label_atom)?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Render with a custom atom printer. `ws(A)+w(A)` is shown as `z(A)`.
pub fn render_with<A: Letter>(t: &Term<A>, atom: &dyn Fn(&A) -> String) -> String {
    match t {
        Term::Zero => "0".into(),
        Term::Atom(a) if *a == A::default() => "1".into(),
        Term::Atom(a) => atom(a),
        Term::Fin(n) => n.to_string(),
        Term::Sum(ps) => {
            let mut out: Vec<String> = Vec::new();
            let mut i = 0;
            while i < ps.len() {
                if let (Term::OmegaStar(a), Some(Term::Omega(b))) = (&ps[i], ps.get(i + 1)) {
                    if a == b {
                        out.push(format!("z({})", render_with(a, atom)));
                        i += 2;
                        continue;
                    }
                }
                out.push(render_with(&ps[i], atom));
                i += 1;
            }
            out.join("+")
        }
        Term::Omega(b) => format!("w({})", render_with(b, atom)),
        Term::OmegaStar(b) => format!("ws({})", render_with(b, atom)),
        Term::Zeta(b) => format!("z({})", render_with(b, atom)),
    }
}

pub fn render_term(t: &OrderTerm) -> String {
    render_with(t, &|l: &Label| format!("atom({})", l.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    type T = OrderTerm;

    #[test]
    fn grammar_examples() {
        let z = T::Zeta(Box::new(T::unit()));
        assert_eq!(
            parse_term("z(1)+1+z(1)").unwrap(),
            T::Sum(vec![z.clone(), T::unit(), z])
        );
        assert_eq!(parse_term("0").unwrap(), T::Zero);
        assert_eq!(parse_term("w(2)").unwrap(), T::Omega(Box::new(T::Fin(2))));
        assert_eq!(
            parse_term(" ws( atom(a) ) + 3 ").unwrap(),
            T::Sum(vec![
                T::OmegaStar(Box::new(T::Atom(Label::new("a")))),
                T::Fin(3)
            ])
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_term("-1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("w(1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("1+"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("1 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("q"), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn render_resugars_zeta() {
        let t = T::Sum(vec![
            T::OmegaStar(Box::new(T::unit())),
            T::Omega(Box::new(T::unit())),
            T::Atom(Label::new("b")),
        ]);
        assert_eq!(render_term(&t), "z(1)+atom(b)");
    }
}
