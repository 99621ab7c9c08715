//! Group expressions such as `Z(2)xZ(2)xZ(3)`, `Q(16)` or `table:h27.tbl`.
//!
//! ```text
//! expr := atom ('x' atom)*
//! atom := NAME '(' INT (',' INT)? ')' | 'table:' PATH
//! ```
//!
//! Whitespace is allowed between tokens. A table path runs up to the next
//! whitespace character, so a product with a table needs a space before
//! the `x` (`table:a.tbl x Z(3)`).

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::numtheory::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Z(n)`, cyclic of order `n`.
    Cyclic(u64),
    /// `D(n)`, dihedral of order `2n`.
    Dihedral(u64),
    /// `Q(2^m)`, generalized quaternion of order `2^m`, `m >= 3`.
    Quaternion(u64),
    /// `S(n)`, symmetric group on `n` points.
    Symmetric(u64),
    /// `A(n)`, alternating group on `n` points.
    Alternating(u64),
    /// `E(p,k)`, elementary abelian of order `p^k`.
    ElementaryAbelian { p: u64, k: u64 },
    /// `table:PATH`, a Cayley table file.
    Table(PathBuf),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    /// Order of the described group, when it is known without reading files
    /// and fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Quaternion(n) => Some(*n),
            GroupSpec::Symmetric(n) => (1..=*n).try_fold(1u64, |acc, k| acc.checked_mul(k)),
            GroupSpec::Alternating(n) => {
                let f = (1..=*n).try_fold(1u64, |acc, k| acc.checked_mul(k))?;
                Some(if *n >= 2 { f / 2 } else { f })
            }
            GroupSpec::ElementaryAbelian { p, k } => p.checked_pow(u32::try_from(*k).ok()?),
            GroupSpec::Table(_) => None,
            GroupSpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }
}

impl GroupSpec {
    // A table path swallows everything up to whitespace.
    fn ends_with_table(&self) -> bool {
        match self {
            GroupSpec::Table(_) => true,
            GroupSpec::Product(_, b) => b.ends_with_table(),
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z({n})"),
            GroupSpec::Dihedral(n) => write!(f, "D({n})"),
            GroupSpec::Quaternion(n) => write!(f, "Q({n})"),
            GroupSpec::Symmetric(n) => write!(f, "S({n})"),
            GroupSpec::Alternating(n) => write!(f, "A({n})"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "E({p},{k})"),
            GroupSpec::Table(path) => write!(f, "table:{}", path.display()),
            GroupSpec::Product(a, b) => {
                if a.ends_with_table() || matches!(**b, GroupSpec::Table(_)) {
                    write!(f, "{a} x {b}")
                } else {
                    write!(f, "{a}x{b}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return err(0, "empty group expression");
    }
    let mut spec = p.atom()?;
    loop {
        p.skip_ws();
        if p.at_end() {
            return Ok(spec);
        }
        if p.eat('x') || p.eat('×') {
            let rhs = p.atom()?;
            spec = GroupSpec::Product(Box::new(spec), Box::new(rhs));
        } else {
            return err(p.pos, "expected 'x' or end of input");
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return err(start, "expected an integer");
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map(|v| (v, start))
            .or_else(|_| err(start, "integer too large"))
    }

    fn atom(&mut self) -> Result<GroupSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if let Some(path) = self.rest().strip_prefix("table:") {
            let len = path.find(char::is_whitespace).unwrap_or(path.len());
            if len == 0 {
                return err(start + 6, "expected a table path");
            }
            let path = PathBuf::from(&path[..len]);
            self.pos += 6 + len;
            return Ok(GroupSpec::Table(path));
        }
        let name_len = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphabetic())
            .count();
        if name_len == 0 {
            return err(start, "expected a group name or 'table:'");
        }
        let name = &self.src[start..start + name_len];
        self.pos += name_len;
        self.expect('(')?;
        let (a, a_at) = self.int()?;
        self.skip_ws();
        let second = if self.eat(',') { Some(self.int()?) } else { None };
        self.expect(')')?;

        let one_arg = |spec: GroupSpec| match second {
            Some((_, at)) => err(at, format!("{name} takes a single argument")),
            None => Ok(spec),
        };
        match name {
            "Z" | "D" | "S" | "A" if a == 0 => err(a_at, format!("{name}(n) needs n >= 1")),
            "Z" => one_arg(GroupSpec::Cyclic(a)),
            "D" => one_arg(GroupSpec::Dihedral(a)),
            "S" => one_arg(GroupSpec::Symmetric(a)),
            "A" => one_arg(GroupSpec::Alternating(a)),
            "Q" => {
                if a < 8 || !a.is_power_of_two() {
                    return err(a_at, "order must be 2^m, m >= 3");
                }
                one_arg(GroupSpec::Quaternion(a))
            }
            "E" => {
                let Some((k, k_at)) = second else {
                    return err(self.pos - 1, "E(p,k) takes two arguments");
                };
                if !is_prime(a) {
                    return err(a_at, "E(p,k) needs p prime");
                }
                if k == 0 {
                    return err(k_at, "E(p,k) needs k >= 1");
                }
                Ok(GroupSpec::ElementaryAbelian { p: a, k })
            }
            _ => err(start, format!("unknown group family '{name}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_atom() {
        assert_eq!(parse_group_spec("Z(12)").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(
            parse_group_spec(" E( 3 , 2 ) ").unwrap(),
            GroupSpec::ElementaryAbelian { p: 3, k: 2 }
        );
    }

    #[test]
    fn products_associate_left() {
        let expected = GroupSpec::Product(
            Box::new(GroupSpec::Product(
                Box::new(GroupSpec::Cyclic(2)),
                Box::new(GroupSpec::Cyclic(2)),
            )),
            Box::new(GroupSpec::Cyclic(3)),
        );
        assert_eq!(parse_group_spec("Z(2)xZ(2)xZ(3)").unwrap(), expected);
        assert_eq!(parse_group_spec("Z(2) x Z(2) × Z(3)").unwrap(), expected);
        assert_eq!(expected.to_string(), "Z(2)xZ(2)xZ(3)");
        assert_eq!(expected.order(), Some(12));
    }

    #[test]
    fn quaternion_parameter_is_checked() {
        let e = parse_group_spec("Q(7)").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("2^m"));
        assert!(parse_group_spec("Q(4)").is_err());
        assert_eq!(parse_group_spec("Q(32)").unwrap(), GroupSpec::Quaternion(32));
    }

    #[test]
    fn table_paths() {
        assert_eq!(
            parse_group_spec("table:data/h27.tbl").unwrap(),
            GroupSpec::Table("data/h27.tbl".into())
        );
        let spec = parse_group_spec("table:a.tbl x Z(3)").unwrap();
        assert_eq!(spec.to_string(), "table:a.tbl x Z(3)");
        assert_eq!(parse_group_spec("table:").unwrap_err().offset, 6);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        assert_eq!(parse_group_spec("").unwrap_err().offset, 0);
        assert_eq!(parse_group_spec("Z(0)").unwrap_err().offset, 2);
        assert_eq!(parse_group_spec("Z(3)y").unwrap_err().offset, 4);
        assert_eq!(parse_group_spec("Z(3").unwrap_err().offset, 3);
        assert_eq!(parse_group_spec("W(3)").unwrap_err().offset, 0);
        assert_eq!(parse_group_spec("Z(3)x").unwrap_err().offset, 5);
        assert_eq!(parse_group_spec("E(4,2)").unwrap_err().offset, 2);
        assert!(parse_group_spec("Z(2,3)").is_err());
        assert!(parse_group_spec("E(3)").is_err());
        assert!(parse_group_spec("Z(99999999999999999999999)").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_group_spec("S(4)").unwrap().order(), Some(24));
        assert_eq!(parse_group_spec("A(4)").unwrap().order(), Some(12));
        assert_eq!(parse_group_spec("A(1)").unwrap().order(), Some(1));
        assert_eq!(parse_group_spec("D(6)").unwrap().order(), Some(12));
        assert_eq!(parse_group_spec("S(30)").unwrap().order(), None);
    }
}
