//! Group expressions: a small grammar over the construction families.
//!
//! ```text
//! expr   := term (" x " term)*         products fold left-associatively
//! term   := factor ("^" integer)?      power binds tighter than `x`
//! factor := atom | "(" expr ")"
//! atom   := NAME "(" integer ("," integer)* ")"
//! ```
//!
//! Atom spellings coincide with group descriptors, so the descriptor of any
//! constructible group parses back to a defining expression. Syntax errors
//! carry the byte offset of the offending token; family parameter problems
//! are reported separately as `Error::BadParameter`.

use std::fmt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{
    alternating, cyclic, dicyclic, dihedral, direct_product, elementary_abelian, symmetric,
    unitriangular, DirectProduct, FiniteGroup,
};
use crate::triangular::{st_group, TriangularSpec};

/// One construction family instance; parameters are validated at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Cyclic(u64),
    Dihedral(u64),
    Symmetric(u64),
    Alternating(u64),
    /// Dicyclic group named by its order `4m`; `Dicyclic(8)` is the quaternions.
    Dicyclic(u64),
    ElementaryAbelian(u64, u64),
    Unitriangular(u64, u64),
    SpecialTriangular(u64, u64),
    Triangular(u64, u64),
}

/// Abstract syntax tree over [`Atom`]s, binary `x`, and `^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Atom(Atom),
    Power(Box<GroupExpr>, u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

/// Result of evaluating an expression: a bare group, or a product that keeps
/// its factor structure available for componentwise analysis.
#[derive(Debug, Clone)]
pub enum Built {
    Single(FiniteGroup),
    Product(DirectProduct),
}

impl Built {
    pub fn group(&self) -> &FiniteGroup {
        match self {
            Built::Single(g) => g,
            Built::Product(p) => &p.group,
        }
    }

    pub fn product(&self) -> Option<&DirectProduct> {
        match self {
            Built::Single(_) => None,
            Built::Product(p) => Some(p),
        }
    }

    pub fn into_group(self) -> FiniteGroup {
        match self {
            Built::Single(g) => g,
            Built::Product(p) => p.group,
        }
    }
}

impl Atom {
    /// Family letter as it appears in the grammar.
    pub fn family(&self) -> &'static str {
        match self {
            Atom::Cyclic(_) => "Z",
            Atom::Dihedral(_) => "D",
            Atom::Symmetric(_) => "S",
            Atom::Alternating(_) => "A",
            Atom::Dicyclic(_) => "Q",
            Atom::ElementaryAbelian(..) => "EA",
            Atom::Unitriangular(..) => "U",
            Atom::SpecialTriangular(..) => "ST",
            Atom::Triangular(..) => "T",
        }
    }

    /// Nominal order, saturating; used to refuse oversized evaluations early.
    fn order_estimate(&self) -> u128 {
        fn fact(n: u64) -> u128 {
            (2..=n as u128).fold(1u128, |a, k| a.saturating_mul(k))
        }
        fn pw(b: u64, e: u64) -> u128 {
            (0..e).fold(1u128, |a, _| a.saturating_mul(b as u128))
        }
        match *self {
            Atom::Cyclic(n) => n as u128,
            Atom::Dihedral(n) => 2 * n as u128,
            Atom::Symmetric(n) => fact(n),
            Atom::Alternating(n) => (fact(n) / 2).max(1),
            Atom::Dicyclic(order) => order as u128,
            Atom::ElementaryAbelian(p, k) => pw(p, k),
            Atom::Unitriangular(n, p) => pw(p, n * (n - 1) / 2),
            Atom::SpecialTriangular(n, p) => {
                TriangularSpec { n: n as usize, p, det_one: true }.order()
            }
            Atom::Triangular(n, p) => TriangularSpec { n: n as usize, p, det_one: false }.order(),
        }
    }

    fn build(&self, caps: &Caps) -> Result<FiniteGroup> {
        let cap = caps.order_cap;
        match *self {
            Atom::Cyclic(n) => cyclic(n, cap),
            Atom::Dihedral(n) => dihedral(n, cap),
            Atom::Symmetric(n) => symmetric(n, cap),
            Atom::Alternating(n) => alternating(n, cap),
            Atom::Dicyclic(order) => {
                if order % 4 != 0 {
                    return Err(Error::BadParameter {
                        family: "Q",
                        reason: format!("order must be a multiple of 4, got {order}"),
                    });
                }
                dicyclic(order / 4, cap)
            }
            Atom::ElementaryAbelian(p, k) => {
                let k = u32::try_from(k).map_err(|_| Error::BadParameter {
                    family: "EA",
                    reason: format!("rank {k} out of range"),
                })?;
                elementary_abelian(p, k, cap)
            }
            Atom::Unitriangular(n, p) => {
                let n = u32::try_from(n).map_err(|_| Error::BadParameter {
                    family: "U",
                    reason: format!("dimension {n} out of range"),
                })?;
                unitriangular(n, p, cap)
            }
            Atom::SpecialTriangular(n, p) => {
                Ok(st_group(&TriangularSpec { n: n as usize, p, det_one: true }, caps)?.group)
            }
            Atom::Triangular(n, p) => {
                Ok(st_group(&TriangularSpec { n: n as usize, p, det_one: false }, caps)?.group)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Cyclic(n) => write!(f, "Z({n})"),
            Atom::Dihedral(n) => write!(f, "D({n})"),
            Atom::Symmetric(n) => write!(f, "S({n})"),
            Atom::Alternating(n) => write!(f, "A({n})"),
            Atom::Dicyclic(n) => write!(f, "Q({n})"),
            Atom::ElementaryAbelian(p, k) => write!(f, "EA({p},{k})"),
            Atom::Unitriangular(n, p) => write!(f, "U({n},{p})"),
            Atom::SpecialTriangular(n, p) => write!(f, "ST({n},{p})"),
            Atom::Triangular(n, p) => write!(f, "T({n},{p})"),
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Atom(a) => write!(f, "{a}"),
            GroupExpr::Power(base, k) => {
                // A product or power base needs parentheses to re-parse as the base.
                match **base {
                    GroupExpr::Atom(_) => write!(f, "{base}^{k}"),
                    _ => write!(f, "({base})^{k}"),
                }
            }
            GroupExpr::Product(lhs, rhs) => {
                write!(f, "{lhs} x ")?;
                // Left-associative: a right-nested product must keep its parens.
                match **rhs {
                    GroupExpr::Product(..) => write!(f, "({rhs})"),
                    _ => write!(f, "{rhs}"),
                }
            }
        }
    }
}

impl GroupExpr {
    /// Left-to-right atom sequence; a power of k repeats its base k times, so
    /// `Z(2)^2 x Z(9)` flattens to `[Z(2), Z(2), Z(9)]`.
    pub fn flatten(&self) -> Vec<Atom> {
        match self {
            GroupExpr::Atom(a) => vec![*a],
            GroupExpr::Power(base, k) => {
                let inner = base.flatten();
                let mut out = Vec::new();
                for _ in 0..*k {
                    out.extend(inner.iter().copied());
                }
                out
            }
            GroupExpr::Product(lhs, rhs) => {
                let mut out = lhs.flatten();
                out.extend(rhs.flatten());
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Caret,
    Cross,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Cross => write!(f, "`x`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    tok: Tok,
    tok_at: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Parser<'a>> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, tok: Tok::End, tok_at: 0 };
        p.advance()?;
        Ok(p)
    }

    fn advance(&mut self) -> Result<()> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_at = self.pos;
        if self.pos >= self.src.len() {
            self.tok = Tok::End;
            return Ok(());
        }
        let b = self.src[self.pos];
        self.tok = match b {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b',' => {
                self.pos += 1;
                Tok::Comma
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'x' => {
                self.pos += 1;
                Tok::Cross
            }
            b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_uppercase() {
                    self.pos += 1;
                }
                Tok::Name(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let value: u64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("integer `{text}` out of range")))?;
                Tok::Int(value)
            }
            other => {
                return Err(syntax(self.pos, format!("unexpected character `{}`", other as char)))
            }
        };
        Ok(())
    }

    fn expect_int(&mut self) -> Result<u64> {
        match self.tok {
            Tok::Int(n) => {
                self.advance()?;
                Ok(n)
            }
            ref t => Err(syntax(self.tok_at, format!("expected an integer, found {t}"))),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if self.tok == want {
            self.advance()
        } else {
            Err(syntax(self.tok_at, format!("expected {want}, found {}", self.tok)))
        }
    }

    fn parse_expr(&mut self) -> Result<GroupExpr> {
        let mut acc = self.parse_term()?;
        while self.tok == Tok::Cross {
            self.advance()?;
            let rhs = self.parse_term()?;
            acc = GroupExpr::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<GroupExpr> {
        let base = self.parse_factor()?;
        if self.tok == Tok::Caret {
            self.advance()?;
            let k = self.expect_int()?;
            if k == 0 {
                return Err(Error::BadParameter {
                    family: "expr",
                    reason: "power exponent must be positive".into(),
                });
            }
            return Ok(GroupExpr::Power(Box::new(base), k));
        }
        Ok(base)
    }

    fn parse_factor(&mut self) -> Result<GroupExpr> {
        match self.tok.clone() {
            Tok::LParen => {
                self.advance()?;
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Name(name) => {
                let name_at = self.tok_at;
                self.advance()?;
                self.expect(Tok::LParen)?;
                let mut params = vec![self.expect_int()?];
                while self.tok == Tok::Comma {
                    self.advance()?;
                    params.push(self.expect_int()?);
                }
                self.expect(Tok::RParen)?;
                atom_from_parts(&name, name_at, &params).map(GroupExpr::Atom)
            }
            other => Err(syntax(self.tok_at, format!("expected a group expression, found {other}"))),
        }
    }
}

fn atom_from_parts(name: &str, name_at: usize, params: &[u64]) -> Result<Atom> {
    let family: &'static str = match name {
        "Z" => "Z",
        "D" => "D",
        "S" => "S",
        "A" => "A",
        "Q" => "Q",
        "EA" => "EA",
        "U" => "U",
        "ST" => "ST",
        "T" => "T",
        _ => return Err(syntax(name_at, format!("unknown group family `{name}`"))),
    };
    let arity = match family {
        "Z" | "D" | "S" | "A" | "Q" => 1,
        _ => 2,
    };
    if params.len() != arity {
        return Err(Error::BadParameter {
            family,
            reason: format!("expected {arity} parameter(s), found {}", params.len()),
        });
    }
    if let Some(zero_at) = params.iter().position(|&v| v == 0) {
        return Err(Error::BadParameter {
            family,
            reason: format!("parameter {} must be positive", zero_at + 1),
        });
    }
    Ok(match family {
        "Z" => Atom::Cyclic(params[0]),
        "D" => Atom::Dihedral(params[0]),
        "S" => Atom::Symmetric(params[0]),
        "A" => Atom::Alternating(params[0]),
        "Q" => Atom::Dicyclic(params[0]),
        "EA" => Atom::ElementaryAbelian(params[0], params[1]),
        "U" => Atom::Unitriangular(params[0], params[1]),
        "ST" => Atom::SpecialTriangular(params[0], params[1]),
        _ => Atom::Triangular(params[0], params[1]),
    })
}

/// Parse an expression; the whole input must be consumed.
pub fn parse_group_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser::new(text)?;
    let expr = p.parse_expr()?;
    if p.tok != Tok::End {
        return Err(syntax(p.tok_at, format!("unexpected trailing {}", p.tok)));
    }
    Ok(expr)
}

/// Build the group an expression denotes. Products evaluate left to right
/// over the flattened atom sequence and keep their factor structure.
pub fn evaluate(expr: &GroupExpr, caps: &Caps) -> Result<Built> {
    let atoms = expr.flatten();
    let estimate: u128 = atoms.iter().fold(1u128, |a, at| a.saturating_mul(at.order_estimate()));
    if estimate > caps.order_cap as u128 {
        return Err(Error::OrderCap { order: estimate, cap: caps.order_cap });
    }
    if atoms.len() == 1 {
        return Ok(Built::Single(atoms[0].build(caps)?));
    }
    let factors = atoms.iter().map(|a| a.build(caps)).collect::<Result<Vec<_>>>()?;
    Ok(Built::Product(direct_product(factors, caps.order_cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn atom(text: &str) -> Atom {
        match parse_group_expr(text).unwrap() {
            GroupExpr::Atom(a) => a,
            other => panic!("expected an atom, got {other:?}"),
        }
    }

    #[test]
    fn parses_every_family_and_builds_the_right_orders() {
        let caps = Caps::default();
        let cases: &[(&str, usize)] = &[
            ("Z(6)", 6),
            ("D(4)", 8),
            ("S(3)", 6),
            ("A(4)", 12),
            ("Q(8)", 8),
            ("EA(2,3)", 8),
            ("U(3,2)", 8),
            ("ST(2,3)", 6),
            ("T(2,3)", 12),
        ];
        for &(text, order) in cases {
            let expr = parse_group_expr(text).unwrap();
            let built = evaluate(&expr, &caps).unwrap();
            assert_eq!(built.group().order(), order, "{text}");
            assert_eq!(built.group().descriptor(), text);
        }
        assert_eq!(atom("Q(8)"), Atom::Dicyclic(8));
    }

    #[test]
    fn powers_flatten_into_product_factors() {
        let caps = Caps::default();
        let expr = parse_group_expr("Z(2)^2 x Z(9)").unwrap();
        assert_eq!(
            expr.flatten(),
            vec![Atom::Cyclic(2), Atom::Cyclic(2), Atom::Cyclic(9)]
        );
        let built = evaluate(&expr, &caps).unwrap();
        let dp = built.product().unwrap();
        assert_eq!(dp.factor_count(), 3);
        assert_eq!(built.group().order(), 36);
        assert_eq!(built.group().descriptor(), "Z(2) x Z(2) x Z(9)");
    }

    #[test]
    fn products_fold_left() {
        let parsed = parse_group_expr("Z(2) x Z(3) x Z(5)").unwrap();
        let want = GroupExpr::Product(
            Box::new(GroupExpr::Product(
                Box::new(GroupExpr::Atom(Atom::Cyclic(2))),
                Box::new(GroupExpr::Atom(Atom::Cyclic(3))),
            )),
            Box::new(GroupExpr::Atom(Atom::Cyclic(5))),
        );
        assert_eq!(parsed, want);
    }

    #[test]
    fn syntax_errors_carry_byte_offsets() {
        let offset_of = |text: &str| match parse_group_expr(text) {
            Err(Error::Syntax { offset, .. }) => offset,
            other => panic!("expected a syntax error for {text:?}, got {other:?}"),
        };
        assert_eq!(offset_of("Z()"), 2);
        assert_eq!(offset_of(""), 0);
        assert_eq!(offset_of("Z(2"), 3);
        assert_eq!(offset_of("Z(2) x"), 6);
        assert_eq!(offset_of("Z(2))"), 4);
        assert_eq!(offset_of("Z(2) Z(3)"), 5);
        assert_eq!(offset_of("W(3)"), 0);
        assert_eq!(offset_of("Z(99999999999999999999)"), 2);
        assert_eq!(offset_of("Z(#)"), 2);
    }

    #[test]
    fn parameter_problems_are_not_syntax_errors() {
        for text in ["Z(0)", "EA(3)", "EA(4,2)", "Q(6)", "Z(2)^0", "U(1,0)"] {
            let result = parse_group_expr(text).and_then(|e| evaluate(&e, &Caps::default()));
            match result {
                Err(Error::BadParameter { .. }) => {}
                other => panic!("expected a parameter error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn printing_round_trips_exactly_on_canonical_text() {
        for text in [
            "Z(6)",
            "EA(2,3)",
            "Z(2) x Z(2) x Z(9)",
            "Z(2)^2 x Z(9)",
            "(Z(2) x Z(3))^2",
            "Z(2) x (Z(3) x Z(5))",
            "(Z(2)^2)^3",
        ] {
            let expr = parse_group_expr(text).unwrap();
            assert_eq!(expr.to_string(), text);
            assert_eq!(parse_group_expr(&expr.to_string()).unwrap(), expr);
        }
    }

    #[test]
    fn descriptors_of_built_groups_parse_back() {
        let caps = Caps::default();
        for text in ["Z(12)", "D(6)", "EA(3,2)", "Z(2) x Z(4)", "ST(2,3)"] {
            let built = evaluate(&parse_group_expr(text).unwrap(), &caps).unwrap();
            let reparsed = parse_group_expr(built.group().descriptor()).unwrap();
            let rebuilt = evaluate(&reparsed, &caps).unwrap();
            assert_eq!(rebuilt.group().descriptor(), built.group().descriptor());
            assert_eq!(rebuilt.group().order(), built.group().order());
        }
    }

    #[test]
    fn oversized_evaluations_are_refused_up_front() {
        let caps = Caps::default();
        for text in ["Z(101)^2", "Z(2)^200", "S(9)"] {
            match evaluate(&parse_group_expr(text).unwrap(), &caps) {
                Err(Error::OrderCap { cap, .. }) => assert_eq!(cap, caps.order_cap),
                other => panic!("expected an order cap refusal for {text:?}, got {other:?}"),
            }
        }
    }

    fn arb_atom() -> impl Strategy<Value = Atom> {
        prop_oneof![
            (1u64..20).prop_map(Atom::Cyclic),
            (1u64..12).prop_map(Atom::Dihedral),
            (1u64..5).prop_map(Atom::Symmetric),
            (1u64..6).prop_map(Atom::Alternating),
            (2u64..5).prop_map(|m| Atom::Dicyclic(4 * m)),
            (2u64..6, 1u64..4).prop_map(|(p, k)| Atom::ElementaryAbelian(p, k)),
            (2u64..4, 2u64..6).prop_map(|(n, p)| Atom::Unitriangular(n, p)),
            (2u64..4, 2u64..6).prop_map(|(n, p)| Atom::SpecialTriangular(n, p)),
            (2u64..4, 2u64..6).prop_map(|(n, p)| Atom::Triangular(n, p)),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = GroupExpr> {
        arb_atom().prop_map(GroupExpr::Atom).prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                (inner.clone(), 1u64..4)
                    .prop_map(|(base, k)| GroupExpr::Power(Box::new(base), k)),
                (inner.clone(), inner)
                    .prop_map(|(a, b)| GroupExpr::Product(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(expr in arb_expr()) {
            let printed = expr.to_string();
            let reparsed = parse_group_expr(&printed).unwrap();
            prop_assert_eq!(&reparsed, &expr);
            prop_assert_eq!(reparsed.to_string(), printed);
        }
    }
}
