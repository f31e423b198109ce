use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ncalg::Coeff;
use crate::qcoeff::QLaurent;

/// The unknown exponents of the twistor commutation ansatz.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Unknown {
    N,
    M,
    K,
    L,
}

impl Unknown {
    pub const ALL: [Unknown; 4] = [Unknown::N, Unknown::M, Unknown::K, Unknown::L];

    pub fn name(self) -> &'static str {
        match self {
            Unknown::N => "n",
            Unknown::M => "m",
            Unknown::K => "k",
            Unknown::L => "l",
        }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Affine-linear form `constant + Σ coeff·unknown`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ExponentForm {
    pub constant: BigRational,
    pub coeffs: BTreeMap<Unknown, BigRational>,
}

impl ExponentForm {
    pub fn constant(c: i64) -> Self {
        ExponentForm {
            constant: rat(c),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn rational(c: BigRational) -> Self {
        ExponentForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unknown(u: Unknown) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(u, rat(1));
        ExponentForm {
            constant: BigRational::zero(),
            coeffs,
        }
    }

    /// Builds `constant + Σ c·u`, dropping zero coefficients.
    pub fn linear(constant: i64, terms: &[(Unknown, i64)]) -> Self {
        let mut f = ExponentForm::constant(constant);
        for &(u, c) in terms {
            f = f.add(&ExponentForm::unknown(u).scale(&rat(c)));
        }
        f
    }

    pub fn coeff(&self, u: Unknown) -> BigRational {
        self.coeffs
            .get(&u)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    fn canonical(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        self
    }

    pub fn add(&self, other: &ExponentForm) -> ExponentForm {
        let mut coeffs = self.coeffs.clone();
        for (u, c) in &other.coeffs {
            let entry = coeffs.entry(*u).or_insert_with(BigRational::zero);
            *entry = &*entry + c;
        }
        ExponentForm {
            constant: &self.constant + &other.constant,
            coeffs,
        }
        .canonical()
    }

    pub fn sub(&self, other: &ExponentForm) -> ExponentForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExponentForm {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &BigRational) -> ExponentForm {
        ExponentForm {
            constant: &self.constant * c,
            coeffs: self.coeffs.iter().map(|(u, x)| (*u, x * c)).collect(),
        }
        .canonical()
    }

    /// Replaces unknowns by forms; unknowns without a value stay put.
    pub fn substitute(&self, values: &BTreeMap<Unknown, ExponentForm>) -> ExponentForm {
        let mut out = ExponentForm::rational(self.constant.clone());
        for (u, c) in &self.coeffs {
            let v = values
                .get(u)
                .cloned()
                .unwrap_or_else(|| ExponentForm::unknown(*u));
            out = out.add(&v.scale(c));
        }
        out
    }

    /// Renders the equation `self = 0` as `lhs = rhs` with the constant moved right.
    pub fn equation(&self) -> String {
        let lhs = ExponentForm {
            constant: BigRational::zero(),
            coeffs: self.coeffs.clone(),
        };
        format!("{} = {}", lhs, fmt_rat(&-self.constant.clone()))
    }
}

impl fmt::Display for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (u, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mag.is_one() {
                u.to_string()
            } else {
                format!("{}{}", fmt_rat(&mag), u)
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        if !self.constant.is_zero() || out.is_empty() {
            let neg = self.constant.is_negative();
            let mag = fmt_rat(&self.constant.abs());
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{mag}")),
                (true, false) => out.push_str(&mag),
                (false, true) => out.push_str(&format!(" - {mag}")),
                (false, false) => out.push_str(&format!(" + {mag}")),
            }
        }
        f.write_str(&out)
    }
}

/// Sum of `c·q^{form}` with rational `c` and symbolic exponents.
///
/// Terms combine only when their exponent forms are structurally equal, so
/// a nonzero element may still vanish for particular values of the unknowns.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymLaurent {
    terms: BTreeMap<ExponentForm, BigRational>,
}

impl SymLaurent {
    pub fn monomial(c: BigRational, exp: ExponentForm) -> Self {
        let mut s = SymLaurent::default();
        s.add_term(exp, &c);
        s
    }

    pub fn q_pow(exp: ExponentForm) -> Self {
        SymLaurent::monomial(rat(1), exp)
    }

    /// Lifts a real-coefficient Laurent polynomial; `None` if any coefficient is complex.
    pub fn from_qlaurent(a: &QLaurent) -> Option<Self> {
        let mut s = SymLaurent::default();
        for (e, c) in a.terms() {
            if !c.is_real() {
                return None;
            }
            s.add_term(ExponentForm::rational(e.value()), &c.re);
        }
        Some(s)
    }

    fn add_term(&mut self, exp: ExponentForm, c: &BigRational) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentForm, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn map_exponents(&self, f: impl Fn(&ExponentForm) -> ExponentForm) -> SymLaurent {
        let mut s = SymLaurent::default();
        for (e, c) in &self.terms {
            s.add_term(f(e), c);
        }
        s
    }
}

impl fmt::Display for SymLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    fmt_rat(c)
                } else if c.is_one() {
                    format!("q^({e})")
                } else {
                    format!("{}*q^({e})", fmt_rat(c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coeff for SymLaurent {
    fn zero() -> Self {
        SymLaurent::default()
    }
    fn one() -> Self {
        SymLaurent::q_pow(ExponentForm::default())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (e, c) in &other.terms {
            s.add_term(e.clone(), c);
        }
        s
    }
    fn times(&self, other: &Self) -> Self {
        let mut s = SymLaurent::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                s.add_term(ea.add(eb), &(ca * cb));
            }
        }
        s
    }
    fn negate(&self) -> Self {
        SymLaurent {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(SymLaurent::monomial(c.recip(), e.neg()))
    }
    fn star(&self) -> Self {
        self.invert_q()
    }
    fn invert_q(&self) -> Self {
        self.map_exponents(ExponentForm::neg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_arithmetic_is_canonical() {
        let n = ExponentForm::unknown(Unknown::N);
        assert!(n.sub(&n).is_zero());
        assert!(n.sub(&n).coeffs.is_empty());
        let f = ExponentForm::linear(1, &[(Unknown::M, 1), (Unknown::N, -1)]);
        assert_eq!(f.to_string(), "-n + m + 1");
        assert_eq!(f.equation(), "-n + m = -1");
    }

    #[test]
    fn symbolic_terms_combine_structurally() {
        let n = ExponentForm::unknown(Unknown::N);
        let a = SymLaurent::q_pow(n.clone());
        let b = SymLaurent::q_pow(n.add(&ExponentForm::constant(1)));
        assert_eq!(a.plus(&b).terms().count(), 2);
        assert!(a.plus(&a.negate()).is_zero());
        assert!(a.times(&a.unit_inverse().unwrap()) == SymLaurent::one());
    }

    #[test]
    fn substitution() {
        let f = ExponentForm::linear(0, &[(Unknown::M, 1), (Unknown::K, 1)]);
        let mut values = BTreeMap::new();
        values.insert(Unknown::M, ExponentForm::linear(1, &[(Unknown::N, 1)]));
        values.insert(Unknown::K, ExponentForm::linear(-1, &[(Unknown::N, 1)]));
        assert_eq!(
            f.substitute(&values),
            ExponentForm::linear(0, &[(Unknown::N, 2)])
        );
    }
}
