use super::{BasisBlade, Multivector, Signature};
use crate::error::{Error, Result};

impl Multivector {
    /// Parses the text form written by `Display`: signed terms `c*eIJ`,
    /// bare blades `eIJ` or bare scalars, e.g. `1 - 0.5*e12 + 2*e14`.
    /// Repeated blades accumulate.
    pub fn parse_literal(text: &str, sig: Signature) -> Result<Multivector> {
        let mut p = LiteralParser {
            s: text.as_bytes(),
            i: 0,
            sig,
        };
        let mut out = Multivector::zero(sig);
        p.skip_ws();
        if p.s.is_empty() || p.i == p.s.len() {
            return Err(p.error("empty literal"));
        }
        let mut first = true;
        loop {
            p.skip_ws();
            if p.i == p.s.len() {
                break;
            }
            let mut sign = 1.0;
            match p.peek() {
                Some(b'+') if !first => p.i += 1,
                Some(b'-') => {
                    sign = -1.0;
                    p.i += 1;
                }
                _ if !first => return Err(p.error("expected '+' or '-'")),
                _ => {}
            }
            first = false;
            p.skip_ws();
            let (coef, blade) = p.term()?;
            let k = blade.index();
            out.coeffs_mut()[k] += sign * coef;
        }
        Ok(out)
    }
}

struct LiteralParser<'a> {
    s: &'a [u8],
    i: usize,
    sig: Signature,
}

impl LiteralParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.i += 1;
        }
    }

    fn error(&self, what: &str) -> Error {
        Error::Literal(format!("{what} at offset {}", self.i))
    }

    fn term(&mut self) -> Result<(f64, BasisBlade)> {
        match self.peek() {
            Some(b'e') => Ok((1.0, self.blade()?)),
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let c = self.number()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.i += 1;
                    self.skip_ws();
                    Ok((c, self.blade()?))
                } else {
                    Ok((c, BasisBlade::SCALAR))
                }
            }
            _ => Err(self.error("expected a number or blade")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'.') {
            self.i += 1;
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mut j = self.i + 1;
            if matches!(self.s.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            if matches!(self.s.get(j), Some(c) if c.is_ascii_digit()) {
                self.i = j;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.i += 1;
                }
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
        text.parse::<f64>()
            .map_err(|_| Error::Literal(format!("bad number '{text}' at offset {start}")))
    }

    fn blade(&mut self) -> Result<BasisBlade> {
        let start = self.i;
        if self.peek() != Some(b'e') {
            return Err(self.error("expected a blade"));
        }
        self.i += 1;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
        BasisBlade::parse(name, self.sig)
            .ok_or_else(|| Error::Literal(format!("bad blade '{name}' at offset {start}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rendered_text() {
        let sig = Signature::CGA;
        let m = Multivector::parse_literal("1 - 0.5*e12 + 2*e14", sig).unwrap();
        assert_eq!(m.to_string(), "1 - 0.5*e12 + 2*e14");
        let m = Multivector::parse_literal("-e1 + 1e-20*e2 - 3.5e20*e12345", sig).unwrap();
        assert_eq!(m.coeff(BasisBlade::new(0b10)), 1e-20);
        assert_eq!(Multivector::parse_literal(&m.to_string(), sig).unwrap(), m);
        assert_eq!(
            Multivector::parse_literal("0", sig).unwrap(),
            Multivector::zero(sig)
        );
        assert_eq!(
            Multivector::parse_literal("e1 + e1", sig).unwrap(),
            Multivector::basis_vector(sig, 0).scale(2.0)
        );
    }

    #[test]
    fn rejects_garbage() {
        let sig = Signature::CGA;
        for bad in ["", "e1 e2", "e21", "e6", "2*", "1 +", "x", "2 * 3"] {
            assert!(
                matches!(Multivector::parse_literal(bad, sig), Err(Error::Literal(_))),
                "{bad}"
            );
        }
    }
}
