//! Monomials `x^a y^b z^c` in three variables.
//!
//! A monomial of degree `d - 1` names an upward unit triangle of the ambient
//! triangle of side `d`, a monomial of degree `d - 2` names a downward unit
//! triangle and a monomial of degree `d` names a lattice vertex.  The natural
//! [`Ord`] on [`Monomial`] is the graded reverse-lexicographic order.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::ParseMonomialError;

/// One of the three variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn symbol(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { a, b, c }
    }

    /// `v^e` for a single variable.
    pub fn power(v: Var, e: u32) -> Self {
        match v {
            Var::X => Monomial::new(e, 0, 0),
            Var::Y => Monomial::new(0, e, 0),
            Var::Z => Monomial::new(0, 0, e),
        }
    }

    pub const fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::X => self.a,
            Var::Y => self.b,
            Var::Z => self.c,
        }
    }

    pub fn exponents(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.a <= other.a && self.b <= other.b && self.c <= other.c
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }

    pub fn times(&self, v: Var) -> Monomial {
        self.mul(&Monomial::power(v, 1))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        Some(Monomial::new(
            self.a.checked_sub(other.a)?,
            self.b.checked_sub(other.b)?,
            self.c.checked_sub(other.c)?,
        ))
    }

    pub fn div_var(&self, v: Var) -> Option<Monomial> {
        self.checked_div(&Monomial::power(v, 1))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.a.min(other.a),
            self.b.min(other.b),
            self.c.min(other.c),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.a.max(other.a),
            self.b.max(other.b),
            self.c.max(other.c),
        )
    }

    /// Multiply by the Laurent monomial `x^da y^db z^dc`; `None` if an
    /// exponent would become negative.
    pub fn shifted(&self, delta: [i64; 3]) -> Option<Monomial> {
        let f = |e: u32, s: i64| u32::try_from(i64::from(e) + s).ok();
        Some(Monomial::new(
            f(self.a, delta[0])?,
            f(self.b, delta[1])?,
            f(self.c, delta[2])?,
        ))
    }

    /// Is this a pure power of one variable (including `1`)?
    pub fn is_pure_power(&self) -> bool {
        [self.a, self.b, self.c].iter().filter(|&&e| e > 0).count() <= 1
    }

    /// Cyclic variable substitution `x -> y -> z -> x`, i.e. `(a, b, c) -> (c, a, b)`.
    pub fn rotated(&self) -> Monomial {
        Monomial::new(self.c, self.a, self.b)
    }

    /// Graded reverse-lexicographic comparison.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // the larger monomial has the smaller last differing exponent
        for (s, o) in [(self.c, other.c), (self.b, other.b), (self.a, other.a)] {
            if s != o {
                return o.cmp(&s);
            }
        }
        Ordering::Equal
    }

    /// Plain lexicographic comparison with `x > y > z`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        (self.a, self.b, self.c).cmp(&(other.a, other.b, other.c))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `deg`, in descending grevlex order.
pub fn monomials_of_degree(deg: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((deg + 1) * (deg + 2) / 2) as usize);
    // descending grevlex: smallest z-exponent first, then smallest y-exponent
    for c in 0..=deg {
        for b in 0..=(deg - c) {
            out.push(Monomial::new(deg - b - c, b, c));
        }
    }
    out
}

/// All monomials of degree strictly less than `deg`, in descending grevlex order.
pub fn monomials_below_degree(deg: u32) -> Vec<Monomial> {
    (0..deg).rev().flat_map(monomials_of_degree).collect()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        for v in Var::ALL {
            match self.exponent(v) {
                0 => {}
                1 => write!(f, "{}", v.symbol())?,
                e => write!(f, "{}^{}", v.symbol(), e)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = ParseMonomialError;

    /// Grammar: `("x" ["^" int])? ("y" ["^" int])? ("z" ["^" int])?` with at
    /// least one variable, or the literal `1`.  Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, ch)| !ch.is_whitespace())
            .collect();
        if chars.is_empty() {
            return Err(ParseMonomialError::Empty);
        }
        if chars.len() == 1 && chars[0].1 == '1' {
            return Ok(Monomial::ONE);
        }
        let mut exps = [0u32; 3];
        let mut next_var = 0usize;
        let mut i = 0;
        while i < chars.len() {
            let (pos, ch) = chars[i];
            let slot = match ch {
                'x' => 0,
                'y' => 1,
                'z' => 2,
                _ => {
                    return Err(ParseMonomialError::Unexpected {
                        column: pos + 1,
                        found: ch,
                    })
                }
            };
            if slot < next_var {
                return Err(ParseMonomialError::OutOfOrder {
                    column: pos + 1,
                    found: ch,
                });
            }
            next_var = slot + 1;
            i += 1;
            let mut exp = 1u32;
            if i < chars.len() && chars[i].1 == '^' {
                let caret = chars[i].0;
                i += 1;
                let mut digits = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    digits.push(chars[i].1);
                    i += 1;
                }
                if digits.is_empty() {
                    return Err(ParseMonomialError::MissingExponent { column: caret + 1 });
                }
                exp = digits
                    .parse()
                    .map_err(|_| ParseMonomialError::ExponentOverflow { column: caret + 2 })?;
            }
            exps[slot] = exp;
        }
        Ok(Monomial::new(exps[0], exps[1], exps[2]))
    }
}
