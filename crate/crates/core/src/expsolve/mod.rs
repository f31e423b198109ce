//! Solver for the exponents of the twistor–conjugate commutation ansatz
//!
//! `x x̄ = qⁿ x̄ x`, `x ȳ = qᵐ ȳ x`, `y x̄ = qᵏ x̄ y`, `y ȳ = qˡ ȳ y`.
//!
//! The null-vector relations are pushed through the bilinear realization,
//! normalized over a ring whose exponents are affine forms in `n, m, k, l`,
//! and every cancellation this requires becomes a linear equation.

mod form;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use form::{ExponentForm, SymLaurent, Unknown};

use crate::ncalg::{Element, Family, GenId, Parity, Presentation, PresentationBuilder, Word};
use crate::presets::{preset, PresetName};

#[derive(Debug, Error, PartialEq)]
pub enum ExpSolveError {
    #[error("inconsistent exponent system: {0}")]
    InconsistentSystem(String),
    #[error("non-integral solution for {0}")]
    NonIntegral(Unknown),
}

/// One constraint `form = 0` and the relation it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub form: ExponentForm,
    pub provenance: String,
}

impl Equation {
    /// A nonzero constant: no assignment satisfies it.
    pub fn is_unsatisfiable(&self) -> bool {
        self.form.is_constant() && !self.form.is_zero()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExponentSystem {
    pub equations: Vec<Equation>,
}

impl ExponentSystem {
    pub fn new() -> Self {
        ExponentSystem::default()
    }

    pub fn push(&mut self, form: ExponentForm, provenance: impl Into<String>) {
        self.equations.push(Equation {
            form,
            provenance: provenance.into(),
        });
    }

    pub fn extend(&mut self, other: &ExponentSystem) {
        self.equations.extend(other.equations.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn has_unsatisfiable_marker(&self) -> bool {
        self.equations.iter().any(Equation::is_unsatisfiable)
    }

    pub fn forms(&self) -> Vec<ExponentForm> {
        self.equations.iter().map(|e| e.form.clone()).collect()
    }
}

/// The four ansatz exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz {
    pub n: ExponentForm,
    pub m: ExponentForm,
    pub k: ExponentForm,
    pub l: ExponentForm,
}

impl Ansatz {
    pub fn symbolic() -> Self {
        Ansatz {
            n: ExponentForm::unknown(Unknown::N),
            m: ExponentForm::unknown(Unknown::M),
            k: ExponentForm::unknown(Unknown::K),
            l: ExponentForm::unknown(Unknown::L),
        }
    }

    pub fn fixed(n: i64, m: i64, k: i64, l: i64) -> Self {
        Ansatz {
            n: ExponentForm::constant(n),
            m: ExponentForm::constant(m),
            k: ExponentForm::constant(k),
            l: ExponentForm::constant(l),
        }
    }

    pub fn substitute(&self, values: &BTreeMap<Unknown, ExponentForm>) -> Self {
        Ansatz {
            n: self.n.substitute(values),
            m: self.m.substitute(values),
            k: self.k.substitute(values),
            l: self.l.substitute(values),
        }
    }

    /// Twistor components `x < x̄ < y < ȳ`, the quantum-plane relation with its
    /// conjugate, and the four ansatz relations.
    pub fn presentation(&self) -> Presentation<SymLaurent> {
        let mut b = PresentationBuilder::<SymLaurent>::new("ansatz");
        let x = b.generator("x", Parity::Even, Family::Twistor);
        let xb = b.generator("xb", Parity::Even, Family::Twistor);
        let y = b.generator("y", Parity::Even, Family::Twistor);
        let yb = b.generator("yb", Parity::Even, Family::Twistor);
        b.conjugates(x, xb).conjugates(y, yb);
        let one = ExponentForm::constant(1);
        let lines = [
            (x, y, &one),
            (xb, yb, &one),
            (x, xb, &self.n),
            (x, yb, &self.m),
            (y, xb, &self.k),
            (y, yb, &self.l),
        ];
        for (a, c, e) in lines {
            let lhs = Element::letters(&[a, c]);
            let rhs = Element::term(Word::pair(c, a), SymLaurent::q_pow(e.clone()));
            b.relation(&lhs, &rhs)
                .expect("ansatz lines are swaps with unit coefficients");
        }
        b.build()
    }
}

/// A relation to be matched, already written over the ansatz alphabet.
#[derive(Clone, Debug)]
pub struct Target {
    pub label: String,
    pub difference: Element<SymLaurent>,
}

/// The six null-vector relations pushed through `X^{AȦ} ↦ φ^A φ̄^Ȧ`.
pub fn realization_targets() -> Vec<Target> {
    let nv = preset(PresetName::Nullvector);
    let tw = Ansatz::symbolic().presentation();
    let image = |g: GenId| -> Vec<GenId> {
        let name = &nv.presentation.generator(g).name;
        let (a, b) = (&name[1..2], &name[2..3]);
        let first = if a == "1" { "x" } else { "y" };
        let second = if b == "1" { "xb" } else { "yb" };
        vec![tw.g(first), tw.g(second)]
    };
    nv.relations
        .iter()
        .map(|r| {
            let mut difference = Element::zero();
            for (w, c) in r.difference().terms() {
                let letters: Vec<GenId> = w.letters().iter().flat_map(|&g| image(g)).collect();
                let c = SymLaurent::from_qlaurent(c).expect("null-vector coefficients are real");
                difference.add_term(Word(letters), &c);
            }
            Target {
                label: r.label.clone(),
                difference,
            }
        })
        .collect()
}

/// `x x̄ − x̄ x`: the reality condition.
pub fn reality_targets() -> Vec<Target> {
    let tw = Ansatz::symbolic().presentation();
    let (x, xb) = (tw.g("x"), tw.g("xb"));
    let difference = Element::letters(&[x, xb]).sub(&Element::letters(&[xb, x]));
    vec![Target {
        label: "reality x xb = xb x".into(),
        difference,
    }]
}

/// Star images of every ansatz relation; they must hold as well.
pub fn star_closure_targets(ansatz: &Ansatz) -> Vec<Target> {
    let p = ansatz.presentation();
    p.rule_relations()
        .into_iter()
        .map(|r| {
            let difference = p
                .star_element(&r.difference())
                .expect("ansatz letters are conjugated");
            Target {
                label: format!("star {}", p.render_generic(&r.difference())),
                difference,
            }
        })
        .collect()
}

/// Ways to cancel one coefficient: each option is the list of equations of
/// one admissible grouping of its terms into zero-sum blocks.
fn matchings(c: &SymLaurent) -> Vec<Vec<ExponentForm>> {
    let terms: Vec<(ExponentForm, BigRational)> =
        c.terms().map(|(e, x)| (e.clone(), x.clone())).collect();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    partitions(&terms, 0, &mut blocks, &mut out);
    out
}

fn partitions(
    terms: &[(ExponentForm, BigRational)],
    next: usize,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<ExponentForm>>,
) {
    if next == terms.len() {
        let mut eqs = Vec::new();
        for block in blocks.iter() {
            let sum = block
                .iter()
                .fold(BigRational::zero(), |s, &i| s + &terms[i].1);
            if !sum.is_zero() {
                return;
            }
            let head = &terms[block[0]].0;
            for &i in &block[1..] {
                let eq = terms[i].0.sub(head);
                if eq.is_constant() {
                    // distinct stored forms never differ by zero
                    return;
                }
                eqs.push(eq);
            }
        }
        out.push(eqs);
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(next);
        partitions(terms, next + 1, blocks, out);
        blocks[b].pop();
    }
    blocks.push(vec![next]);
    partitions(terms, next + 1, blocks, out);
    blocks.pop();
}

/// Normalizes every target under the ansatz and turns each surviving
/// coefficient into equations.
///
/// A coefficient with several admissible groupings contributes the first
/// grouping that keeps the accumulated system consistent; one with none
/// contributes the marker `1 = 0`.
pub fn generate_constraints(ansatz: &Ansatz, targets: &[Target]) -> ExponentSystem {
    let p = ansatz.presentation();
    let mut slots: Vec<(String, Vec<Vec<ExponentForm>>)> = Vec::new();
    for t in targets {
        let nf = p.normalize(&t.difference);
        for (w, c) in nf.terms() {
            let provenance = format!("{} @ {}", t.label, p.word_name(w));
            slots.push((provenance, matchings(c)));
        }
    }
    let mut chosen: Vec<usize> = vec![0; slots.len()];
    let found = choose(&slots, 0, &mut Vec::new(), &mut chosen);
    let mut system = ExponentSystem::new();
    for (i, (provenance, options)) in slots.iter().enumerate() {
        match options.get(if found { chosen[i] } else { 0 }) {
            Some(eqs) => {
                for eq in eqs {
                    system.push(eq.clone(), provenance.clone());
                }
            }
            None => system.push(ExponentForm::constant(1), provenance.clone()),
        }
    }
    system
}

fn choose(
    slots: &[(String, Vec<Vec<ExponentForm>>)],
    i: usize,
    acc: &mut Vec<ExponentForm>,
    chosen: &mut [usize],
) -> bool {
    if i == slots.len() {
        return true;
    }
    for (j, eqs) in slots[i].1.iter().enumerate() {
        let before = acc.len();
        acc.extend(eqs.iter().cloned());
        if consistent(acc) && choose(slots, i + 1, acc, chosen) {
            chosen[i] = j;
            return true;
        }
        acc.truncate(before);
    }
    false
}

fn consistent(forms: &[ExponentForm]) -> bool {
    !rref(forms, &Unknown::ALL)
        .iter()
        .any(ExponentForm::is_constant)
}

/// Reduced row echelon form with pivots taken in `order`.
///
/// Each returned row has coefficient 1 on its pivot and 0 on every other
/// pivot. An inconsistent system yields the single row `1`.
pub fn rref(forms: &[ExponentForm], order: &[Unknown]) -> Vec<ExponentForm> {
    let mut rows: Vec<ExponentForm> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    let mut done = 0;
    for &u in order {
        let Some(p) = (done..rows.len()).find(|&i| !rows[i].coeff(u).is_zero()) else {
            continue;
        };
        rows.swap(done, p);
        let lead = rows[done].coeff(u);
        rows[done] = rows[done].scale(&lead.recip());
        let pivot = rows[done].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let c = row.coeff(u);
            if i != done && !c.is_zero() {
                *row = row.sub(&pivot.scale(&c));
            }
        }
        done += 1;
    }
    rows.retain(|r| !r.is_zero());
    if rows.iter().any(ExponentForm::is_constant) {
        return vec![ExponentForm::constant(1)];
    }
    rows
}

/// Affine solution family: every unknown as a form in the free ones.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    pub free: Vec<Unknown>,
    pub values: BTreeMap<Unknown, ExponentForm>,
}

impl SolutionFamily {
    /// The integer point, when nothing is free.
    pub fn point(&self) -> Option<BTreeMap<Unknown, BigInt>> {
        if !self.free.is_empty() {
            return None;
        }
        self.values
            .iter()
            .map(|(u, f)| {
                f.constant
                    .is_integer()
                    .then(|| (*u, f.constant.to_integer()))
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.values
            .values()
            .all(|f| f.constant.is_integer() && f.coeffs.values().all(|c| c.is_integer()))
    }

    pub fn render(&self) -> Vec<String> {
        self.values
            .iter()
            .map(|(u, f)| format!("{u} = {f}"))
            .collect()
    }
}

/// Which extra constraints to append before solving.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Extras {
    pub reality: bool,
    pub star_closure: bool,
}

pub fn extra_constraints(extras: Extras) -> ExponentSystem {
    let ansatz = Ansatz::symbolic();
    let mut system = ExponentSystem::new();
    if extras.reality {
        system.extend(&generate_constraints(&ansatz, &reality_targets()));
    }
    if extras.star_closure {
        system.extend(&generate_constraints(
            &ansatz,
            &star_closure_targets(&ansatz),
        ));
    }
    system
}

/// Gaussian elimination over the rationals.
///
/// Pivots are chosen from the last unknown backwards so that the earliest
/// unknowns stay free; integrality of the family is required.
pub fn solve(system: &ExponentSystem, extras: Extras) -> Result<SolutionFamily, ExpSolveError> {
    let mut all = system.clone();
    all.extend(&extra_constraints(extras));
    if let Some(bad) = all.equations.iter().find(|e| e.is_unsatisfiable()) {
        return Err(ExpSolveError::InconsistentSystem(bad.provenance.clone()));
    }
    let order: Vec<Unknown> = Unknown::ALL.iter().rev().copied().collect();
    let rows = rref(&all.forms(), &order);
    if rows.iter().any(ExponentForm::is_constant) {
        return Err(ExpSolveError::InconsistentSystem(
            "elimination reached 0 = 1".into(),
        ));
    }
    let mut values = BTreeMap::new();
    for row in &rows {
        let pivot = *order
            .iter()
            .find(|u| !row.coeff(**u).is_zero())
            .expect("nonconstant row");
        // pivot + rest = 0  ⇒  pivot = −rest
        let rest = row.sub(&ExponentForm::unknown(pivot));
        values.insert(pivot, rest.neg());
    }
    let free: Vec<Unknown> = Unknown::ALL
        .iter()
        .copied()
        .filter(|u| !values.contains_key(u))
        .collect();
    for &u in &free {
        values.insert(u, ExponentForm::unknown(u));
    }
    let family = SolutionFamily { free, values };
    if let Some((u, _)) = family
        .values
        .iter()
        .find(|(_, f)| !f.constant.is_integer() || f.coeffs.values().any(|c| !c.is_integer()))
    {
        return Err(ExpSolveError::NonIntegral(*u));
    }
    Ok(family)
}

/// Substitutes the family into the ansatz and renormalizes every realization
/// target; returns the labels that fail to vanish.
pub fn closure_failures(family: &SolutionFamily) -> Vec<String> {
    let ansatz = Ansatz::symbolic().substitute(&family.values);
    let p = ansatz.presentation();
    realization_targets()
        .into_iter()
        .filter(|t| !p.normalize(&t.difference).is_zero())
        .map(|t| t.label)
        .collect()
}

/// The three independent equations `m − n = 1`, `n − k = 1`, `l − k = 1`.
pub fn reference_equations() -> Vec<ExponentForm> {
    use Unknown::*;
    vec![
        ExponentForm::linear(-1, &[(M, 1), (N, -1)]),
        ExponentForm::linear(-1, &[(N, 1), (K, -1)]),
        ExponentForm::linear(-1, &[(L, 1), (K, -1)]),
    ]
}

/// Result of the whole derivation, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    pub equations: Vec<(String, String)>,
    pub reduced: Vec<String>,
    pub family: Vec<String>,
    pub free: Vec<Unknown>,
    pub matches_reference: bool,
}

pub fn derive(extras: Extras) -> Result<Derivation, ExpSolveError> {
    let system = generate_constraints(&Ansatz::symbolic(), &realization_targets());
    let reduced = rref(&system.forms(), &Unknown::ALL);
    let matches_reference = reduced == rref(&reference_equations(), &Unknown::ALL);
    let family = solve(&system, extras)?;
    Ok(Derivation {
        equations: system
            .equations
            .iter()
            .map(|e| (e.form.equation(), e.provenance.clone()))
            .collect(),
        reduced: reduced.iter().map(ExponentForm::equation).collect(),
        family: family.render(),
        free: family.free.clone(),
        matches_reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Unknown::*;

    fn int_point(n: i64, m: i64, k: i64, l: i64) -> BTreeMap<Unknown, BigInt> {
        [(N, n), (M, m), (K, k), (L, l)]
            .into_iter()
            .map(|(u, v)| (u, BigInt::from(v)))
            .collect()
    }

    #[test]
    fn realization_system_reduces_to_three_equations() {
        let system = generate_constraints(&Ansatz::symbolic(), &realization_targets());
        assert!(!system.has_unsatisfiable_marker());
        assert_eq!(
            rref(&system.forms(), &Unknown::ALL),
            rref(&reference_equations(), &Unknown::ALL)
        );
        assert!(system
            .equations
            .iter()
            .all(|e| e.provenance.starts_with("(xx)")));
    }

    #[test]
    fn empty_targets_give_empty_system() {
        assert!(generate_constraints(&Ansatz::symbolic(), &[]).is_empty());
    }

    #[test]
    fn zero_ansatz_is_unsatisfiable() {
        let system = generate_constraints(&Ansatz::fixed(0, 0, 0, 0), &realization_targets());
        assert!(system.has_unsatisfiable_marker());
        assert!(matches!(
            solve(&system, Extras::default()),
            Err(ExpSolveError::InconsistentSystem(_))
        ));
    }

    #[test]
    fn family_keeps_n_free() {
        let system = generate_constraints(&Ansatz::symbolic(), &realization_targets());
        let family = solve(&system, Extras::default()).unwrap();
        assert_eq!(family.free, vec![N]);
        assert_eq!(family.values[&M], ExponentForm::linear(1, &[(N, 1)]));
        assert_eq!(family.values[&K], ExponentForm::linear(-1, &[(N, 1)]));
        assert_eq!(family.values[&L], ExponentForm::unknown(N));
        assert!(family.is_integral());
        assert!(closure_failures(&family).is_empty());
    }

    #[test]
    fn reality_and_star_closure_pin_the_point() {
        let system = generate_constraints(&Ansatz::symbolic(), &realization_targets());
        for extras in [
            Extras {
                reality: true,
                star_closure: false,
            },
            Extras {
                reality: false,
                star_closure: true,
            },
            Extras {
                reality: true,
                star_closure: true,
            },
        ] {
            let family = solve(&system, extras).unwrap();
            assert_eq!(family.point(), Some(int_point(0, 1, -1, 0)), "{extras:?}");
            assert!(closure_failures(&family).is_empty());
        }
    }

    #[test]
    fn star_closure_alone() {
        let star = extra_constraints(Extras {
            reality: false,
            star_closure: true,
        });
        let reduced = rref(&star.forms(), &Unknown::ALL);
        let expected = rref(
            &[
                ExponentForm::linear(0, &[(N, 2)]),
                ExponentForm::linear(0, &[(M, 1), (K, 1)]),
                ExponentForm::linear(0, &[(L, 2)]),
            ],
            &Unknown::ALL,
        );
        assert_eq!(reduced, expected);
    }

    #[test]
    fn contradictory_system() {
        let mut s = ExponentSystem::new();
        s.push(ExponentForm::linear(-1, &[(N, 1)]), "n = 1");
        s.push(ExponentForm::linear(-2, &[(N, 1)]), "n = 2");
        assert!(matches!(
            solve(&s, Extras::default()),
            Err(ExpSolveError::InconsistentSystem(_))
        ));
    }

    #[test]
    fn derivation_report() {
        let d = derive(Extras {
            reality: true,
            star_closure: false,
        })
        .unwrap();
        assert!(d.matches_reference);
        assert!(d.free.is_empty());
        assert_eq!(d.family, vec!["n = 0", "m = 1", "k = -1", "l = 0"]);
    }
}
