//! Relation mini-language:
//!
//! ```text
//! rel   := delta2 | delta(n) | e0 | id | A<k>
//!        | prod(rel, …) | sum(rel, …) | pow(rel) | seq(rel) | fs(rel)
//!        | louveau(rel) | powg(rel, group) | jump(rel, group)
//!        | iter(rel, group, n)
//! group := factor ('*' factor)*
//! factor:= Z | Z^k | C<n> | Z2fin
//! ```

use super::group::GroupDesc;
use super::rel::RelDesc;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a number");
        }
        let n = rest[..len]
            .parse()
            .or_else(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn args(&mut self) -> Result<Vec<RelDesc>> {
        self.expect('(')?;
        let mut out = vec![self.rel()?];
        while self.eat(',') {
            out.push(self.rel()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn one(&mut self) -> Result<RelDesc> {
        self.expect('(')?;
        let r = self.rel()?;
        self.expect(')')?;
        Ok(r)
    }

    fn rel(&mut self) -> Result<RelDesc> {
        let start = self.pos;
        let name = self.ident()?;
        let suffix = |p: &str| {
            name.strip_prefix(p)
                .filter(|s| !s.is_empty())
                .and_then(|s| s.parse::<u64>().ok())
        };
        match name {
            "e0" => Ok(RelDesc::e0()),
            "id" => Ok(RelDesc::Identity),
            "delta" => {
                self.expect('(')?;
                let n = self.number()?;
                self.expect(')')?;
                Ok(RelDesc::delta(n))
            }
            "prod" => Ok(RelDesc::product(self.args()?)),
            "sum" => Ok(RelDesc::direct_sum(self.args()?)),
            "pow" => Ok(RelDesc::power_omega(self.one()?)),
            "seq" => Ok(RelDesc::fin_seq(self.one()?)),
            "fs" => Ok(RelDesc::fs_jump(self.one()?)),
            "louveau" => Ok(RelDesc::louveau(self.one()?)),
            "powg" | "jump" | "iter" => {
                self.expect('(')?;
                let e = self.rel()?;
                self.expect(',')?;
                let g = self.group()?;
                let n = if name == "iter" {
                    self.expect(',')?;
                    Some(self.number()? as usize)
                } else {
                    None
                };
                self.expect(')')?;
                match (name, n) {
                    ("powg", _) => RelDesc::pow(e, g),
                    ("jump", _) => RelDesc::jump(e, g),
                    (_, Some(n)) => RelDesc::iterate_jump(e, g, n),
                    _ => unreachable!(),
                }
            }
            _ => {
                if let Some(n) = suffix("delta") {
                    Ok(RelDesc::delta(n))
                } else if let Some(k) = suffix("A") {
                    Ok(RelDesc::a_hier(k as u32))
                } else {
                    self.pos = start;
                    self.err(format!("unknown relation {name:?}"))
                }
            }
        }
    }

    fn factor(&mut self) -> Result<GroupDesc> {
        let start = self.pos;
        let name = self.ident()?;
        match name {
            "Z" => {
                if self.eat('^') {
                    match self.number()? {
                        1 => Ok(GroupDesc::Int),
                        k => Ok(GroupDesc::IntPower(k as usize)),
                    }
                } else {
                    Ok(GroupDesc::Int)
                }
            }
            "Z2fin" => Ok(GroupDesc::Z2FinSupp),
            _ => match name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                Some(n) if n >= 1 => Ok(GroupDesc::cyclic(n)),
                _ => {
                    self.pos = start;
                    self.err(format!("unknown group {name:?}"))
                }
            },
        }
    }

    fn group(&mut self) -> Result<GroupDesc> {
        let mut fs = vec![self.factor()?];
        while self.eat('*') {
            fs.push(self.factor()?);
        }
        let g = if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            GroupDesc::Product(fs)
        };
        g.validate()?;
        Ok(g)
    }
}

/// Parse a relation expression.
pub fn make_relation(spec: &str) -> Result<RelDesc> {
    let mut c = Cursor { src: spec, pos: 0 };
    let r = c.rel()?;
    c.skip_ws();
    if c.pos != spec.len() {
        return c.err("trailing input");
    }
    Ok(r)
}

/// Parse a group expression.
pub fn parse_group(spec: &str) -> Result<GroupDesc> {
    let mut c = Cursor { src: spec, pos: 0 };
    let g = c.group()?;
    c.skip_ws();
    if c.pos != spec.len() {
        return c.err("trailing input");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "jump(e0,Z)",
            "fs(delta(2))",
            "jump(jump(delta(2),Z),Z)",
            "prod(id,seq(e0))",
            "jump(pow(e0),Z2fin)",
            "jump(jump(powg(delta(3),C2*C2),C2),C2)",
            "louveau(delta(2))",
            "sum(e0,id,delta(2))",
            "A3",
            "jump(delta(2),Z^2)",
        ] {
            let r = make_relation(s).unwrap();
            assert_eq!(r.name(), s);
            assert_eq!(make_relation(&r.name()).unwrap(), r);
        }
    }

    #[test]
    fn shorthands() {
        assert_eq!(make_relation("delta2").unwrap(), RelDesc::delta(2));
        assert_eq!(
            make_relation("iter(delta2, Z, 2)").unwrap().name(),
            "jump(jump(delta(2),Z),Z)"
        );
        assert_eq!(make_relation("A1").unwrap(), RelDesc::e0());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            make_relation("jump(e0,"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            make_relation("frob"),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(make_relation("e0 e0"), Err(Error::Syntax { .. })));
        assert!(matches!(
            make_relation("jump(delta(2),Z^3)"),
            Err(Error::Representability(_))
        ));
    }
}
