use std::fmt;

use super::gauss::GaussRat;

/// Power series in `h` truncated after `h^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HSeries {
    order: usize,
    coeffs: Vec<GaussRat>,
}

impl HSeries {
    pub fn zero(order: usize) -> Self {
        HSeries {
            order,
            coeffs: vec![GaussRat::zero(); order + 1],
        }
    }

    pub fn constant(c: GaussRat, order: usize) -> Self {
        let mut s = HSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from explicit coefficients; anything past `order` is dropped.
    pub fn from_coeffs(order: usize, coeffs: &[GaussRat]) -> Self {
        let mut s = HSeries::zero(order);
        for (m, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[m] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &GaussRat {
        &self.coeffs[m]
    }

    pub(crate) fn add_at(&mut self, m: usize, c: &GaussRat) {
        if m <= self.order {
            self.coeffs[m] = &self.coeffs[m] + c;
        }
    }

    pub fn add(&self, other: &HSeries) -> HSeries {
        let order = self.order.min(other.order);
        let coeffs: Vec<_> = (0..=order)
            .map(|m| &self.coeffs[m] + &other.coeffs[m])
            .collect();
        HSeries { order, coeffs }
    }

    /// Truncated Cauchy product; the result has the smaller of the two orders.
    pub fn mul(&self, other: &HSeries) -> HSeries {
        let order = self.order.min(other.order);
        let mut out = HSeries::zero(order);
        for a in 0..=order {
            if self.coeffs[a].is_zero() {
                continue;
            }
            for b in 0..=(order - a) {
                out.add_at(a + b, &(&self.coeffs[a] * &other.coeffs[b]));
            }
        }
        out
    }

    pub fn truncate(&self, order: usize) -> HSeries {
        let order = order.min(self.order);
        HSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*h")?,
                _ => write!(f, "{c}*h^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::QLaurent;

    #[test]
    fn expand_q_squared_first_order() {
        let s = QLaurent::q_pow(2).expand_h(1);
        let expected = HSeries::from_coeffs(
            1,
            &[GaussRat::one(), &GaussRat::from_int(2) * &GaussRat::i()],
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn expand_constant() {
        assert_eq!(
            QLaurent::one().expand_h(5),
            HSeries::constant(GaussRat::one(), 5)
        );
    }

    #[test]
    fn expand_symmetric_pair() {
        // q + q^-1 = 2 cos h = 2 - h^2 + O(h^4)
        let s = (&QLaurent::q_pow(1) + &QLaurent::q_pow(-1)).expand_h(2);
        let expected = HSeries::from_coeffs(
            2,
            &[
                GaussRat::from_int(2),
                GaussRat::zero(),
                GaussRat::from_int(-1),
            ],
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn truncation_never_grows() {
        let a = HSeries::from_coeffs(2, &[GaussRat::one(), GaussRat::one(), GaussRat::one()]);
        let p = a.mul(&a);
        assert_eq!(p.coeffs().len(), 3);
        assert_eq!(p.coeff(2), &GaussRat::from_int(3));
    }
}
