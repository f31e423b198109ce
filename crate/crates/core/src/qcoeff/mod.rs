//! Exact scalars: Gaussian rationals, Laurent polynomials in `q^{1/2}`, and
//! truncated series in `h` for the substitution `q = exp(ih)`.

mod gauss;
mod laurent;
mod series;

pub use gauss::GaussRat;
pub use laurent::{HalfExp, QLaurent, ScalarAtom};
pub use series::HSeries;

pub fn ql_add(a: &QLaurent, b: &QLaurent) -> QLaurent {
    a + b
}

pub fn ql_mul(a: &QLaurent, b: &QLaurent) -> QLaurent {
    a * b
}

pub fn ql_star(a: &QLaurent) -> QLaurent {
    a.star()
}

pub fn ql_expand_h(a: &QLaurent, order: usize) -> HSeries {
    a.expand_h(order)
}
