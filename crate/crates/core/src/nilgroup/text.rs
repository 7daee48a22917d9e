//! Element text syntax.
//!
//! ```text
//! product := factor*            (whitespace separated, `*` optional)
//! factor  := atom ('^' integer)?
//! atom    := 'x' index | '[' product ',' product ']' | '(' product ')' | '1'
//! ```
//!
//! Brackets follow the group's commutator convention. Canonical output (the
//! `Display` impl of [`GroupElement`]) lists Hall basis factors in basis
//! order and prints the identity as `1`.

use std::sync::Arc;

use super::context::GroupContext;
use super::element::GroupElement;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn parse_element<T: Scalar>(ctx: &Arc<GroupContext<T>>, text: &str) -> Result<GroupElement<T>> {
    let mut p = Parser {
        ctx,
        src: text.as_bytes(),
        pos: 0,
    };
    let g = p.product(&[])?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(g)
}

struct Parser<'a, T> {
    ctx: &'a Arc<GroupContext<T>>,
    src: &'a [u8],
    pos: usize,
}

impl<T: Scalar> Parser<'_, T> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_whitespace() || self.src[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn product(&mut self, stops: &[u8]) -> Result<GroupElement<T>> {
        let mut acc = GroupElement::identity(self.ctx);
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(c) if stops.contains(&c) => break,
                Some(_) => {
                    let f = self.factor()?;
                    acc = acc.mul_unchecked(&f);
                }
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GroupElement<T>> {
        let atom = self.atom()?;
        self.skip_inline_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_inline_ws();
            let k = self.integer()?;
            Ok(atom.power(&k))
        } else {
            Ok(atom)
        }
    }

    fn skip_inline_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<GroupElement<T>> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i: usize = digits.parse().map_err(|_| self.err("expected generator index"))?;
                if i == 0 || i > self.ctx.rank() {
                    return Err(self.err(&format!("generator x{i} out of range 1..={}", self.ctx.rank())));
                }
                GroupElement::generator(self.ctx, i - 1)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(GroupElement::identity(self.ctx))
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.product(b",")?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ','"));
                }
                self.pos += 1;
                let b = self.product(b"]")?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(a.commutator_unchecked(&b))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.product(b")")?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(a)
            }
            _ => Err(self.err("expected 'x<i>', '[', '(' or '1'")),
        }
    }

    fn integer(&mut self) -> Result<T> {
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let s = s.strip_prefix('+').unwrap_or(s);
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "expected integer exponent".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parse_and_print() {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        let g = parse_element(&ctx, "x1^2 x2^-1 [x2,x1]^3").unwrap();
        let v: Vec<i64> = g.exponents().iter().map(|e| i64::try_from(e).unwrap()).collect();
        assert_eq!(v, [2, -1, 3]);
        assert_eq!(g.to_string(), "x1^2 x2^-1 [x2,x1]^3");
        assert_eq!(parse_element(&ctx, "x2 x1").unwrap().to_string(), "x1 x2 [x2,x1]");
        assert_eq!(parse_element(&ctx, "1").unwrap().to_string(), "1");
        assert_eq!(parse_element(&ctx, "").unwrap().to_string(), "1");
        assert_eq!(
            parse_element(&ctx, "(x1 x2)^-1").unwrap().to_string(),
            "x1^-1 x2^-1 [x2,x1]"
        );
    }

    #[test]
    fn printing_round_trips() {
        let ctx = GroupContext::<BigInt>::new(3, 3).unwrap();
        let g = parse_element(&ctx, "x3 x1^-2 x2 [x1 x3, x2^4] x3^7").unwrap();
        assert_eq!(parse_element(&ctx, &g.to_string()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        let ctx = GroupContext::<BigInt>::new(2, 2).unwrap();
        assert!(matches!(parse_element(&ctx, "x3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&ctx, "[x1 x2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&ctx, "x1^"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&ctx, "y"), Err(Error::Parse { .. })));
    }
}
