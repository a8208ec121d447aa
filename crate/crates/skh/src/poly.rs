use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;

/// A Laurent polynomial in the quantum variable `y` with integer
/// coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let c = self.coeffs.entry(exp).or_default();
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Multiplication by `y^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Exponents with an odd coefficient: the reduction mod 2.
    pub fn mod2(&self) -> BTreeSet<i32> {
        self.coeffs
            .iter()
            .filter(|(_, &c)| c % 2 != 0)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn congruent_mod2(&self, other: &Self) -> bool {
        self.mod2() == other.mod2()
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "y^{e}")?,
                _ => write!(f, "{a}y^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arithmetic() {
        let mut p = LaurentPoly::monomial(1, 1);
        p.add_term(3, 1);
        let sq = &p * &p;
        assert_eq!(sq.to_string(), "y^2 + 2y^4 + y^6");
        assert_eq!(sq.mod2(), BTreeSet::from([2, 6]));
        let mut q = LaurentPoly::monomial(-2, -1);
        q.add_term(0, 3);
        assert_eq!(q.to_string(), "-y^-2 + 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p.shift(-1).coeff(0), 1);
    }
}
