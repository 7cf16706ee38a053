//! Exact integer-coefficient Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Laurent polynomial over the integers. Zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// The loop value delta = -A^2 - A^-2.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by the monomial `coeff * A^exp`.
    pub fn mul_monomial(&self, exp: i64, coeff: i64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    /// Substitute A -> A^-1 (mirror image).
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when the polynomial equals its mirror image.
    pub fn is_palindromic(&self) -> bool {
        *self == self.mirror()
    }

    /// True when every exponent is divisible by `m`.
    pub fn exponents_divisible_by(&self, m: i64) -> bool {
        self.terms.keys().all(|e| e % m == 0)
    }

    /// Map every exponent through `f` (must stay injective on the support).
    pub fn map_exponents(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut p = Self::zero();
        for (&e, &c) in &self.terms {
            p.add_term(f(e), c);
        }
        p
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str, show_exp: &dyn Fn(i64) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}")?;
                }
                write!(f, "{var}{}", show_exp(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "A", &|e| if e == 1 { String::new() } else { format!("^{e}") })
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Normalized Jones value stored as a Laurent polynomial in t = q^(1/2),
/// where q = A^-4. An internal exponent k stands for q^(k/2); links with an
/// even number of components genuinely use the half-integer powers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct JonesPoly(pub LaurentPoly);

impl JonesPoly {
    /// Convert the writhe-normalized bracket, given in A, to q. Exponents of
    /// the input must all be even (guaranteed by the writhe correction).
    pub fn from_normalized_bracket(f: &LaurentPoly) -> Self {
        debug_assert!(f.exponents_divisible_by(2), "normalized bracket has odd exponent");
        // A^e = q^{-e/4} = t^{-e/2}
        JonesPoly(f.map_exponents(|e| -e / 2))
    }

    /// Substitute q -> q^-1.
    pub fn mirror(&self) -> Self {
        JonesPoly(self.0.mirror())
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.is_palindromic()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, "q", &|k| {
            if k % 2 == 0 {
                if k / 2 == 1 {
                    String::new()
                } else {
                    format!("^{}", k / 2)
                }
            } else {
                format!("^{k}/2")
            }
        })
    }
}

impl fmt::Debug for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
