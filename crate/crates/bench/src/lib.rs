//! Inputs shared by the benchmarks.

use qcone_core::ncalg::Element;
use qcone_core::{build_preset, Presentation, PresetName, QLaurent};

/// `(x + x̄ + y + ȳ)^n` in the twistor calculus, unnormalized.
pub fn twistor_power(n: usize) -> (Presentation<QLaurent>, Element<QLaurent>) {
    let p = build_preset(PresetName::Twistor);
    let sum = ["x", "xb", "y", "yb"]
        .iter()
        .fold(Element::zero(), |acc, g| {
            acc.add(&Element::letters(&[p.g(g)]))
        });
    let mut e = Element::unit();
    for _ in 0..n {
        e = e.concat(&sum);
    }
    (p, e)
}
