//! Derivatives as linear operators on the normal-form coordinate basis.
//!
//! A derivative letter is pushed through a normal-ordered monomial from the
//! left. Crossing `X` multiplies by `c(D, X)`; meeting the paired coordinate
//! also splits off the term with that letter removed. A derivative that
//! reaches the right end annihilates the term. In an operator word the
//! rightmost letter acts first.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ncalg::{Element, Family, GenId, Presentation, Word};
use crate::presets::{build_preset, preset, Preset, PresetName};
use crate::qcoeff::{GaussRat, QLaurent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("function contains the non-coordinate letter #{0}")]
    NonCoordinateLetter(u16),
    #[error("no push-through rule for {0}")]
    MissingRule(String),
    #[error("rule {0} is not of the form c·X·D or 1 + c·X·D")]
    MalformedRule(String),
    #[error("unit term on {0}, which pairs a derivative with a different coordinate")]
    UnexpectedUnit(String),
    #[error("operator contains the non-derivative letter #{0}")]
    NonDerivativeLetter(u16),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PushThrough {
    pub coeff: QLaurent,
    pub unit: bool,
}

/// Push-through coefficients indexed by (derivative, coordinate) position.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTable {
    entries: Vec<Vec<PushThrough>>,
}

impl OperatorTable {
    /// Reads the table off the two-sided coordinate–derivative preset.
    pub fn from_preset(p: &Preset) -> Result<Self, OperatorError> {
        let pres = &p.presentation;
        let coords: Vec<GenId> = family_ids(pres, Family::Coordinate);
        let derivs: Vec<GenId> = family_ids(pres, Family::Derivative);
        let mut entries = Vec::with_capacity(derivs.len());
        for (di, &d) in derivs.iter().enumerate() {
            let mut row = Vec::with_capacity(coords.len());
            for (xi, &x) in coords.iter().enumerate() {
                let label = pres.word_name(&Word::pair(d, x));
                let rhs = pres
                    .rule(d, x)
                    .ok_or_else(|| OperatorError::MissingRule(label.clone()))?;
                let mut coeff = None;
                let mut unit = false;
                for (w, c) in rhs.terms() {
                    if w.is_empty() && c.is_one() {
                        unit = true;
                    } else if *w == Word::pair(x, d) {
                        coeff = Some(c.clone());
                    } else {
                        return Err(OperatorError::MalformedRule(label));
                    }
                }
                if unit && di != xi {
                    return Err(OperatorError::UnexpectedUnit(label));
                }
                let coeff = coeff.ok_or_else(|| OperatorError::MalformedRule(label.clone()))?;
                row.push(PushThrough { coeff, unit });
            }
            entries.push(row);
        }
        Ok(OperatorTable { entries })
    }

    pub fn entry(&self, deriv: usize, coord: usize) -> &PushThrough {
        &self.entries[deriv][coord]
    }
}

fn family_ids(p: &Presentation<QLaurent>, family: Family) -> Vec<GenId> {
    p.alphabet()
        .iter()
        .filter(|g| g.family == family)
        .map(|g| g.id)
        .collect()
}

/// Linear combination of derivative words, kept in derivative normal order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OperatorExpr(Element<QLaurent>);

impl OperatorExpr {
    pub fn element(&self) -> &Element<QLaurent> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Coordinates, derivatives and the push-through table tying them together.
#[derive(Clone, Debug)]
pub struct OperatorAlgebra {
    coords: Presentation<QLaurent>,
    derivs: Presentation<QLaurent>,
    table: OperatorTable,
}

impl OperatorAlgebra {
    /// Uses the corrected coordinate–derivative table.
    pub fn new() -> Self {
        let table = OperatorTable::from_preset(&preset(PresetName::CoordDeriv))
            .expect("corrected derivative table is complete");
        OperatorAlgebra {
            coords: build_preset(PresetName::Nullvector),
            derivs: build_preset(PresetName::DerivOnly),
            table,
        }
    }

    pub fn coordinates(&self) -> &Presentation<QLaurent> {
        &self.coords
    }

    pub fn derivatives(&self) -> &Presentation<QLaurent> {
        &self.derivs
    }

    pub fn table(&self) -> &OperatorTable {
        &self.table
    }

    /// Wraps an element of the derivative preset, normalizing it.
    pub fn operator(&self, e: &Element<QLaurent>) -> Result<OperatorExpr, OperatorError> {
        let n = self.derivs.alphabet().len() as u16;
        if let Some(bad) = e
            .terms()
            .flat_map(|(w, _)| w.letters().iter())
            .find(|g| g.0 >= n)
        {
            return Err(OperatorError::NonDerivativeLetter(bad.0));
        }
        Ok(OperatorExpr(self.derivs.normalize(e)))
    }

    /// The operator word `D_{a1} D_{a2} ...` by generator names.
    pub fn word(&self, names: &[&str]) -> OperatorExpr {
        let ids: Vec<GenId> = names.iter().map(|n| self.derivs.g(n)).collect();
        OperatorExpr(self.derivs.normalize(&Element::letters(&ids)))
    }

    pub fn identity(&self) -> OperatorExpr {
        OperatorExpr(Element::unit())
    }

    /// `act(compose(a, b), f) = act(a, act(b, f))`.
    pub fn compose(&self, a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
        OperatorExpr(self.derivs.mul(&a.0, &b.0))
    }

    pub fn add(&self, a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
        OperatorExpr(a.0.add(&b.0))
    }

    pub fn sub(&self, a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
        OperatorExpr(a.0.sub(&b.0))
    }

    pub fn scale(&self, a: &OperatorExpr, c: &QLaurent) -> OperatorExpr {
        OperatorExpr(a.0.scale(c))
    }

    /// `∂₁₁∂₂₂ − q²∂₁₂∂₂₁`.
    pub fn box_q(&self) -> OperatorExpr {
        let d = self.word(&["D11", "D22"]);
        let off = self.word(&["D12", "D21"]);
        self.sub(&d, &self.scale(&off, &QLaurent::q_pow(2)))
    }

    /// The ordinary D'Alembertian `∂₁₁∂₂₂ − ∂₁₂∂₂₁`.
    pub fn box_classical(&self) -> OperatorExpr {
        self.sub(&self.word(&["D11", "D22"]), &self.word(&["D12", "D21"]))
    }

    pub fn act(
        &self,
        op: &OperatorExpr,
        f: &Element<QLaurent>,
    ) -> Result<Element<QLaurent>, OperatorError> {
        let n = self.coords.alphabet().len() as u16;
        if let Some(bad) = f
            .terms()
            .flat_map(|(w, _)| w.letters().iter())
            .find(|g| g.0 >= n)
        {
            return Err(OperatorError::NonCoordinateLetter(bad.0));
        }
        let f = self.coords.normalize(f);
        let mut out = Element::zero();
        for (w, c) in op.0.terms() {
            let mut g = f.clone();
            for &d in w.letters().iter().rev() {
                g = self.act_letter(d, &g);
                if g.is_zero() {
                    break;
                }
            }
            out.add_scaled(&g, c);
        }
        Ok(self.coords.normalize(&out))
    }

    fn act_letter(&self, d: GenId, f: &Element<QLaurent>) -> Element<QLaurent> {
        let mut out = Element::zero();
        for (w, c) in f.terms() {
            let mut prefix = c.clone();
            let letters = w.letters();
            for (j, &x) in letters.iter().enumerate() {
                let entry = self.table.entry(d.index(), x.index());
                if entry.unit {
                    let mut rest = letters.to_vec();
                    rest.remove(j);
                    out.add_term(Word(rest), &prefix);
                }
                prefix = &prefix * &entry.coeff;
            }
        }
        out
    }

    /// Expands every coefficient under `q = exp(ih)` and regroups by power of `h`.
    pub fn classical_limit(
        &self,
        op: &OperatorExpr,
        order: usize,
    ) -> BTreeMap<usize, OperatorExpr> {
        let mut parts: BTreeMap<usize, Element<QLaurent>> = BTreeMap::new();
        for (w, c) in op.0.terms() {
            let series = c.expand_h(order);
            for (m, coeff) in series.coeffs().iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                parts
                    .entry(m)
                    .or_default()
                    .add_term(w.clone(), &QLaurent::constant(coeff.clone()));
            }
        }
        parts
            .into_iter()
            .filter(|(_, e)| !e.is_zero())
            .map(|(m, e)| (m, OperatorExpr(e)))
            .collect()
    }

    pub fn render(&self, op: &OperatorExpr) -> String {
        self.derivs.render(&op.0)
    }

    /// `i` times an operator; handy for stating `−2i·∂₁₂∂₂₁`.
    pub fn times_i(&self, op: &OperatorExpr) -> OperatorExpr {
        self.scale(op, &QLaurent::constant(GaussRat::i()))
    }
}

impl Default for OperatorAlgebra {
    fn default() -> Self {
        OperatorAlgebra::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{named_element, preset_with, PresetOptions};

    fn q(k: i32) -> QLaurent {
        QLaurent::q_pow(k)
    }

    fn coord(alg: &OperatorAlgebra, names: &[&str]) -> Element<QLaurent> {
        let ids: Vec<GenId> = names.iter().map(|n| alg.coordinates().g(n)).collect();
        Element::letters(&ids)
    }

    #[test]
    fn unit_flag_only_on_paired_letters() {
        let alg = OperatorAlgebra::new();
        for d in 0..4 {
            for x in 0..4 {
                assert_eq!(alg.table().entry(d, x).unit, d == x);
            }
        }
    }

    #[test]
    fn printed_table_is_incomplete() {
        let printed = preset_with(PresetName::CoordDeriv, PresetOptions { printed_typo: true });
        assert_eq!(
            OperatorTable::from_preset(&printed),
            Err(OperatorError::MissingRule("D12 X22".into()))
        );
    }

    #[test]
    fn act_examples() {
        let alg = OperatorAlgebra::new();
        let d11 = alg.word(&["D11"]);
        assert_eq!(
            alg.act(&d11, &coord(&alg, &["X11"])).unwrap(),
            Element::unit()
        );
        assert!(alg.act(&d11, &Element::unit()).unwrap().is_zero());
        let d22 = alg.word(&["D22"]);
        let got = alg.act(&d22, &coord(&alg, &["X11", "X22"])).unwrap();
        assert_eq!(got, coord(&alg, &["X11"]).scale(&q(4)));
        let det = named_element("qdet").unwrap().element;
        let d21 = alg.word(&["D21"]);
        assert_eq!(
            alg.act(&d21, &det).unwrap(),
            coord(&alg, &["X12"]).scale(&-q(2))
        );
    }

    #[test]
    fn box_examples() {
        let alg = OperatorAlgebra::new();
        let b = alg.box_q();
        assert!(alg.act(&b, &Element::unit()).unwrap().is_zero());
        assert!(alg.act(&b, &coord(&alg, &["X11"])).unwrap().is_zero());
        let det = named_element("qdet").unwrap().element;
        assert_eq!(
            alg.act(&b, &det).unwrap(),
            Element::scalar(q(4).scale(&GaussRat::from_int(2)))
        );
    }

    #[test]
    fn compose_examples() {
        let alg = OperatorAlgebra::new();
        let (d11, d12, d21, d22) = (
            alg.word(&["D11"]),
            alg.word(&["D12"]),
            alg.word(&["D21"]),
            alg.word(&["D22"]),
        );
        assert_eq!(alg.compose(&d12, &d21), alg.compose(&d21, &d12));
        assert_eq!(alg.compose(&alg.identity(), &d11), d11);
        assert_eq!(
            alg.compose(&d11, &d22),
            alg.scale(&alg.compose(&d22, &d11), &q(4))
        );
    }

    #[test]
    fn rejects_foreign_letters() {
        let alg = OperatorAlgebra::new();
        let f = Element::letters(&[GenId(5)]);
        assert_eq!(
            alg.act(&alg.word(&["D11"]), &f),
            Err(OperatorError::NonCoordinateLetter(5))
        );
    }

    #[test]
    fn classical_limit_of_q_free_operator() {
        let alg = OperatorAlgebra::new();
        let d11 = alg.word(&["D11"]);
        let parts = alg.classical_limit(&d11, 3);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0], d11);
    }

    /// Coefficient of h^m in exp(2ih), by the power series directly.
    fn exp_2ih(m: u32) -> GaussRat {
        let mut c = GaussRat::one();
        for j in 1..=m {
            c = &(&c * &GaussRat::i()) * &GaussRat::from_ratio(2, j as i64);
        }
        c
    }

    #[test]
    fn classical_limit_of_box() {
        let alg = OperatorAlgebra::new();
        let off = alg.word(&["D12", "D21"]);
        let parts = alg.classical_limit(&alg.box_q(), 2);
        assert_eq!(parts[&0], alg.box_classical());
        for m in 1..=2u32 {
            let want = alg.scale(&off, &QLaurent::constant(-exp_2ih(m)));
            assert_eq!(parts[&(m as usize)], want, "h^{m}");
        }
        // h^1 = -2i D12 D21 and h^2 = +2 D12 D21.
        assert_eq!(parts[&1], alg.scale(&alg.times_i(&off), &QLaurent::int(-2)));
        assert_eq!(parts[&2], alg.scale(&off, &QLaurent::int(2)));
        assert_eq!(alg.render(&parts[&1]), "-2*i D12 D21");
    }
}
