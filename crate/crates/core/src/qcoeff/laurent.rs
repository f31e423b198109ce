use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussRat;
use super::series::HSeries;

/// Exponent of `q` stored doubled, so `q^{1/2}` has `HalfExp(1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfExp(pub i32);

impl HalfExp {
    pub fn integer(k: i32) -> Self {
        HalfExp(2 * k)
    }

    /// The exponent as a rational number.
    pub fn value(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Laurent polynomial in `q^{1/2}` with Gaussian-rational coefficients.
///
/// The zero polynomial is the empty map; no stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QLaurent {
    terms: BTreeMap<HalfExp, GaussRat>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        QLaurent::monomial(c, HalfExp(0))
    }

    pub fn int(n: i64) -> Self {
        QLaurent::constant(GaussRat::from_int(n))
    }

    /// `i` as a scalar.
    pub fn i() -> Self {
        QLaurent::constant(GaussRat::i())
    }

    pub fn monomial(c: GaussRat, exp: HalfExp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        QLaurent { terms }
    }

    /// `q^k` for integer `k`.
    pub fn q_pow(k: i32) -> Self {
        QLaurent::monomial(GaussRat::one(), HalfExp::integer(k))
    }

    /// `q^{d/2}`.
    pub fn q_half_pow(doubled: i32) -> Self {
        QLaurent::monomial(GaussRat::one(), HalfExp(doubled))
    }

    pub fn from_terms<I: IntoIterator<Item = (HalfExp, GaussRat)>>(iter: I) -> Self {
        let mut out = QLaurent::zero();
        for (e, c) in iter {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, exp: HalfExp, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&exp) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&HalfExp(0)).is_some_and(GaussRat::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfExp, &GaussRat)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `q^0` when the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&HalfExp(0)).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, exp: HalfExp) -> GaussRat {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        QLaurent::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Inverse of a single-term polynomial `c·q^k`; other polynomials are not units.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(QLaurent::monomial(c.inv()?, HalfExp(-e.0)))
    }

    /// `q → q⁻¹` together with complex conjugation of the coefficients (`|q| = 1`).
    pub fn star(&self) -> Self {
        QLaurent::from_terms(self.terms.iter().map(|(e, c)| (HalfExp(-e.0), c.conj())))
    }

    /// `q → q⁻¹` without touching the coefficients.
    pub fn invert_q(&self) -> Self {
        QLaurent::from_terms(self.terms.iter().map(|(e, c)| (HalfExp(-e.0), c.clone())))
    }

    /// Substitute `q = exp(ih)` and truncate at `h^order`.
    pub fn expand_h(&self, order: usize) -> HSeries {
        let mut out = HSeries::zero(order);
        for (e, c) in &self.terms {
            // q^k = Σ (ikh)^m / m!
            let ik = &GaussRat::i() * &GaussRat::real(e.value());
            let mut power = GaussRat::one();
            let mut factorial = BigInt::one();
            for m in 0..=order {
                if m > 0 {
                    power = &power * &ik;
                    factorial *= BigInt::from(m);
                }
                let inv_fact = GaussRat::real(BigRational::new(BigInt::one(), factorial.clone()));
                let term = &(c * &power) * &inv_fact;
                out.add_at(m, &term);
            }
        }
        out
    }

    /// Flat list of signed scalar atoms, highest power of `q` first.
    ///
    /// A coefficient with both real and imaginary parts yields two atoms.
    pub fn atoms(&self) -> Vec<ScalarAtom> {
        let mut out = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            if !c.re.is_zero() {
                out.push(ScalarAtom::new(c.re.clone(), false, *e));
            }
            if !c.im.is_zero() {
                out.push(ScalarAtom::new(c.im.clone(), true, *e));
            }
        }
        out
    }
}

/// One signed term `±r·[i]·q^k` of a rendered scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarAtom {
    pub negative: bool,
    pub magnitude: BigRational,
    pub imaginary: bool,
    pub exp: HalfExp,
}

impl ScalarAtom {
    fn new(value: BigRational, imaginary: bool, exp: HalfExp) -> Self {
        ScalarAtom {
            negative: value.is_negative(),
            magnitude: value.abs(),
            imaginary,
            exp,
        }
    }

    /// True when the unsigned part renders as nothing (the atom is `±1`).
    pub fn is_unit(&self) -> bool {
        self.magnitude.is_one() && !self.imaginary && self.exp.0 == 0
    }

    /// Unsigned rendering: factors joined by `*`, e.g. `2*i*q^-1/2`.
    pub fn unsigned(&self) -> String {
        let mut factors = Vec::new();
        if !self.magnitude.is_one() || (!self.imaginary && self.exp.0 == 0) {
            if self.magnitude.denom().is_one() {
                factors.push(self.magnitude.numer().to_string());
            } else {
                factors.push(format!(
                    "{}/{}",
                    self.magnitude.numer(),
                    self.magnitude.denom()
                ));
            }
        }
        if self.imaginary {
            factors.push("i".to_string());
        }
        match self.exp.0 {
            0 => {}
            2 => factors.push("q".to_string()),
            _ => factors.push(format!("q^{}", self.exp)),
        }
        factors.join("*")
    }
}

impl fmt::Display for QLaurent {
    /// Terms in descending powers: `q^4 - 1`, `q + q^-1`, `-1/2*i*q^1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms = self.atoms();
        if atoms.is_empty() {
            return write!(f, "0");
        }
        for (idx, atom) in atoms.iter().enumerate() {
            match (idx, atom.negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", atom.unsigned())?;
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

impl From<GaussRat> for QLaurent {
    fn from(c: GaussRat) -> Self {
        QLaurent::constant(c)
    }
}

impl From<i64> for QLaurent {
    fn from(n: i64) -> Self {
        QLaurent::int(n)
    }
}

impl<'a> Add<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(HalfExp(ea.0 + eb.0), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: QLaurent) -> QLaurent {
        &self + &rhs
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: QLaurent) -> QLaurent {
        &self - &rhs
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        &self * &rhs
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i32) -> QLaurent {
        QLaurent::q_pow(k)
    }

    #[test]
    fn add_examples() {
        assert!((&q(2) + &-q(2)).is_zero());
        let sym = &q(1) + &q(-1);
        assert_eq!(&sym + &QLaurent::zero(), sym);
        assert_eq!(&(&q(2) - &q(-2)) + &q(-2), q(2));
    }

    #[test]
    fn mul_examples() {
        assert!((&q(2) * &q(-2)).is_one());
        assert_eq!(&QLaurent::q_half_pow(1) * &QLaurent::q_half_pow(1), q(1));
        assert_eq!(&(&q(2) - &q(-2)) * &q(2), &q(4) - &QLaurent::one());
    }

    #[test]
    fn star_examples() {
        assert_eq!(q(2).star(), q(-2));
        let sym = &q(1) + &q(-1);
        assert_eq!(sym.star(), sym);
        let a = QLaurent::monomial(GaussRat::i(), HalfExp(1));
        assert_eq!(a.star(), QLaurent::monomial(-GaussRat::i(), HalfExp(-1)));
    }

    #[test]
    fn invert_q_keeps_imaginary_unit() {
        let a = QLaurent::monomial(GaussRat::i(), HalfExp(4));
        assert_eq!(a.invert_q(), QLaurent::monomial(GaussRat::i(), HalfExp(-4)));
    }

    #[test]
    fn unit_inverse() {
        let a = QLaurent::monomial(GaussRat::from_int(-2), HalfExp(3));
        assert!((&a * &a.unit_inverse().unwrap()).is_one());
        assert!((&q(1) + &q(-1)).unit_inverse().is_none());
        assert!(QLaurent::zero().unit_inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!((&q(1) + &q(-1)).to_string(), "q + q^-1");
        assert_eq!((&q(4) - &QLaurent::one()).to_string(), "q^4 - 1");
        assert_eq!(QLaurent::zero().to_string(), "0");
        let a = QLaurent::monomial(-GaussRat::from_ratio(1, 2) * GaussRat::i(), HalfExp(-1));
        assert_eq!(a.to_string(), "-1/2*i*q^-1/2");
        let b = QLaurent::monomial(GaussRat::from_int(2), HalfExp(0));
        assert_eq!(b.to_string(), "2");
    }
}
