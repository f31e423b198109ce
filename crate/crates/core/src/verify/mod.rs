//! Checks over presets: relation tables, critical pairs, star structure,
//! the plane automorphism, the twistor realization, δ² = 0, ε, the exponent
//! derivation and the operator action.

mod suite;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use suite::{run_all, Category, SuiteOptions, SuiteResult};

use crate::expsolve::{self, Extras, Unknown};
use crate::ncalg::{DerivationTable, Element, Morphism, Presentation, Relation, Word};
use crate::opaction::{OperatorAlgebra, OperatorExpr};
use crate::presets::{
    eps_contract, eps_null, named_element, plane_automorphism, preset, realization_map,
    EpsilonTensor, Preset, PresetName,
};
use crate::qcoeff::{GaussRat, QLaurent};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub difference: String,
}

/// Parameters a report depends on.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ReportContext {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    pub printed_typo: bool,
    /// Items examined: relations, overlap words, monomials.
    pub examined: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub expected: Status,
    pub context: ReportContext,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, context: ReportContext, witnesses: Vec<Witness>) -> Self {
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckReport {
            check: check.into(),
            status,
            expected: Status::Pass,
            context,
            witnesses,
        }
    }

    pub fn expecting(mut self, expected: Status) -> Self {
        self.expected = expected;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Expected-fail checks count only when they fail with a witness.
    pub fn as_expected(&self) -> bool {
        self.status == self.expected
    }
}

fn witness(input: impl Into<String>, difference: impl Into<String>) -> Witness {
    Witness {
        input: input.into(),
        difference: difference.into(),
    }
}

fn preset_context(p: &Preset, examined: usize) -> ReportContext {
    ReportContext {
        preset: Some(p.name.as_str().to_string()),
        max_degree: None,
        printed_typo: p.options.printed_typo,
        examined,
    }
}

/// `normalize(lhs − rhs) = 0` for every relation.
pub fn check_relations(
    check: impl Into<String>,
    p: &Presentation<QLaurent>,
    relations: &[Relation<QLaurent>],
) -> CheckReport {
    let witnesses = relations
        .iter()
        .filter_map(|r| {
            let d = p.normalize(&r.difference());
            (!d.is_zero()).then(|| witness(r.label.clone(), p.render(&d)))
        })
        .collect();
    let context = ReportContext {
        preset: Some(p.name().to_string()),
        examined: relations.len(),
        ..Default::default()
    };
    CheckReport::new(check, context, witnesses)
}

/// Every printed line and completion of a preset.
pub fn check_preset_relations(p: &Preset) -> CheckReport {
    let relations: Vec<Relation<QLaurent>> = p.all_relations().cloned().collect();
    let mut report = check_relations(format!("relations:{}", p.name), &p.presentation, &relations);
    report.context = preset_context(p, relations.len());
    report
}

/// Words examined by the critical-pair check at one length.
///
/// Length 3 yields exactly the overlaps `a·b·c` with `(a,b)` and `(b,c)`
/// both rule left-hand sides; longer lengths yield every word with at least
/// two redexes.
pub fn overlap_words(p: &Presentation<QLaurent>, len: usize) -> Vec<Word> {
    if len == 3 {
        let mut out = Vec::new();
        for (ab, _) in p.rules() {
            let (a, b) = (ab.letters()[0], ab.letters()[1]);
            for g in p.alphabet() {
                if p.rule(b, g.id).is_some() {
                    out.push(Word(vec![a, b, g.id]));
                }
            }
        }
        out.sort();
        return out;
    }
    p.words_of_length(len)
        .into_iter()
        .filter(|w| p.redexes(w).len() >= 2)
        .collect()
}

/// Local confluence: for each overlap word, rewriting at any redex and
/// normalizing gives the same result.
pub fn check_confluence(p: &Presentation<QLaurent>, max_degree: usize) -> CheckReport {
    let mut witnesses = Vec::new();
    let mut examined = 0;
    for len in 3..=max_degree.max(3) {
        for w in overlap_words(p, len) {
            examined += 1;
            let positions = p.redexes(&w);
            let first = p.normalize(&p.rewrite_at(&w, positions[0]).expect("redex"));
            for &pos in &positions[1..] {
                let other = p.normalize(&p.rewrite_at(&w, pos).expect("redex"));
                let d = first.sub(&other);
                if !d.is_zero() {
                    witnesses.push(witness(
                        format!("{} [{} vs {}]", p.word_name(&w), positions[0], pos),
                        p.render(&d),
                    ));
                }
            }
        }
    }
    let context = ReportContext {
        preset: Some(p.name().to_string()),
        max_degree: Some(max_degree.max(3)),
        printed_typo: false,
        examined,
    };
    CheckReport::new(format!("confluence:{}", p.name()), context, witnesses)
}

/// Star of every rule, normalized, vanishes.
pub fn check_star_closure(p: &Presentation<QLaurent>) -> CheckReport {
    let relations = p.rule_relations();
    let witnesses = relations
        .iter()
        .filter_map(|r| match p.star_element(&r.difference()) {
            Ok(d) if d.is_zero() => None,
            Ok(d) => Some(witness(format!("star({})", r.label), p.render(&d))),
            Err(e) => Some(witness(format!("star({})", r.label), e.to_string())),
        })
        .collect();
    let context = ReportContext {
        preset: Some(p.name().to_string()),
        examined: relations.len(),
        ..Default::default()
    };
    CheckReport::new(format!("star-closure:{}", p.name()), context, witnesses)
}

/// `A` maps every relation of `src` into the ideal of `dst`.
pub fn check_automorphism_between(src: PresetName, dst: PresetName) -> CheckReport {
    let a = plane_automorphism();
    let (s, d) = (preset(src), preset(dst));
    let relations: Vec<&Relation<QLaurent>> = s.all_relations().collect();
    let witnesses = relations
        .iter()
        .filter_map(
            |r| match a.apply(&r.difference(), &s.presentation, &d.presentation) {
                Ok(img) if img.is_zero() => None,
                Ok(img) => Some(witness(
                    format!("A({})", r.label),
                    d.presentation.render(&img),
                )),
                Err(e) => Some(witness(format!("A({})", r.label), e.to_string())),
            },
        )
        .collect();
    let context = ReportContext {
        preset: Some(format!("{src}->{dst}")),
        examined: relations.len(),
        ..Default::default()
    };
    CheckReport::new(format!("automorphism:{src}->{dst}"), context, witnesses)
}

/// The three directions that must hold: (a)→(b), (b)→(a), (c)→(c).
pub fn check_automorphism() -> Vec<CheckReport> {
    vec![
        check_automorphism_between(PresetName::QplaneA, PresetName::QplaneB),
        check_automorphism_between(PresetName::QplaneB, PresetName::QplaneA),
        check_automorphism_between(PresetName::QplaneShort, PresetName::QplaneShort),
    ]
}

/// `A∘A` is the identity on every word up to `max_degree`.
pub fn check_automorphism_involution(max_degree: usize) -> CheckReport {
    let a = plane_automorphism();
    let p = preset(PresetName::QplaneShort).presentation;
    let mut witnesses = Vec::new();
    let mut examined = 0;
    for len in 0..=max_degree {
        for w in p.words_of_length(len) {
            examined += 1;
            let e = Element::word(w.clone());
            let twice = a.apply(&e, &p, &p).and_then(|once| a.apply(&once, &p, &p));
            match twice {
                Ok(t) => {
                    let d = t.sub(&p.normalize(&e));
                    if !d.is_zero() {
                        witnesses.push(witness(p.word_name(&w), p.render(&d)));
                    }
                }
                Err(err) => witnesses.push(witness(p.word_name(&w), err.to_string())),
            }
        }
    }
    let context = ReportContext {
        preset: Some(PresetName::QplaneShort.as_str().into()),
        max_degree: Some(max_degree),
        printed_typo: false,
        examined,
    };
    CheckReport::new("automorphism:involution", context, witnesses)
}

fn realization_parts() -> (Preset, Preset, Morphism<QLaurent>) {
    (
        preset(PresetName::NullvectorDiff),
        preset(PresetName::Twistor),
        realization_map(),
    )
}

/// Every null-vector relation, coordinate and differential, maps to zero.
pub fn check_realization_relations() -> CheckReport {
    let (src, tw, rho) = realization_parts();
    let relations: Vec<&Relation<QLaurent>> = src.all_relations().collect();
    let witnesses = relations
        .iter()
        .filter_map(
            |r| match rho.apply(&r.difference(), &src.presentation, &tw.presentation) {
                Ok(img) if img.is_zero() => None,
                Ok(img) => Some(witness(
                    format!("rho({})", r.label),
                    tw.presentation.render(&img),
                )),
                Err(e) => Some(witness(format!("rho({})", r.label), e.to_string())),
            },
        )
        .collect();
    let context = ReportContext {
        preset: Some("nullvector-diff->twistor".into()),
        examined: relations.len(),
        ..Default::default()
    };
    CheckReport::new("realization:relations", context, witnesses)
}

/// `ρ(qdet) = 0`, `ρ(1) = 1`, and δ(qdet) = 0 computed both as `ρ(δ qdet)`
/// and as `δ(ρ qdet)` in the twistor calculus.
pub fn check_realization_identities() -> Vec<CheckReport> {
    let (src, tw, rho) = realization_parts();
    let twp = &tw.presentation;
    let qdet = named_element("qdet")
        .expect("qdet is a named element")
        .element;
    let nvd = &src.presentation;
    // qdet is built over the coordinate preset, whose letters head the diff preset.
    let context = || ReportContext {
        preset: Some("nullvector-diff->twistor".into()),
        examined: 1,
        ..Default::default()
    };
    let zero_report = |check: &str, input: &str, result: Result<Element<QLaurent>, String>| {
        let witnesses = match result {
            Ok(e) if e.is_zero() => vec![],
            Ok(e) => vec![witness(input, twp.render(&e))],
            Err(e) => vec![witness(input, e)],
        };
        CheckReport::new(check, context(), witnesses)
    };
    let rho_qdet = rho.apply(&qdet, nvd, twp).map_err(|e| e.to_string());
    let unit = rho
        .apply(&Element::unit(), nvd, twp)
        .map(|e| e.sub(&Element::unit()))
        .map_err(|e| e.to_string());
    let d_src = src.derivation.as_ref().expect("nullvector-diff has δ");
    let d_tw = tw.derivation.as_ref().expect("twistor has δ");
    let via_rho = d_src
        .apply(&qdet, nvd)
        .and_then(|d| rho.apply(&d, nvd, twp))
        .map_err(|e| e.to_string());
    let in_twistor = rho
        .apply(&qdet, nvd, twp)
        .and_then(|r| d_tw.apply(&r, twp))
        .map_err(|e| e.to_string());
    vec![
        zero_report("realization:qdet", "rho(X11 X22 - q^2 X12 X21)", rho_qdet),
        zero_report("realization:unit", "rho(1) - 1", unit),
        zero_report("realization:delta-qdet", "rho(delta(qdet))", via_rho),
        zero_report(
            "realization:delta-qdet-twistor",
            "delta(rho(qdet))",
            in_twistor,
        ),
    ]
}

/// `δ(δ(w)) = 0` on every normal monomial of degree ≤ `max_degree`.
pub fn check_delta_squared(p: &Preset, max_degree: usize) -> CheckReport {
    let pres = &p.presentation;
    let mut witnesses = Vec::new();
    let mut examined = 0;
    match &p.derivation {
        None => witnesses.push(witness(p.name.as_str(), "preset has no differential")),
        Some(d) => {
            for len in 0..=max_degree {
                for w in pres.normal_words(len) {
                    examined += 1;
                    let e = Element::word(w.clone());
                    match delta_squared(d, pres, &e) {
                        Ok(dd) if dd.is_zero() => {}
                        Ok(dd) => witnesses.push(witness(pres.word_name(&w), pres.render(&dd))),
                        Err(err) => witnesses.push(witness(pres.word_name(&w), err)),
                    }
                }
            }
        }
    }
    let mut context = preset_context(p, examined);
    context.max_degree = Some(max_degree);
    CheckReport::new(format!("delta-squared:{}", p.name), context, witnesses)
}

fn delta_squared(
    d: &DerivationTable<QLaurent>,
    p: &Presentation<QLaurent>,
    e: &Element<QLaurent>,
) -> Result<Element<QLaurent>, String> {
    d.apply(e, p)
        .and_then(|once| d.apply(&once, p))
        .map_err(|e| e.to_string())
}

pub fn check_epsilon() -> Vec<CheckReport> {
    let t = EpsilonTensor::standard();
    let contract = eps_contract(&t);
    let expected = &QLaurent::q_pow(1) + &QLaurent::q_pow(-1);
    let diff = &contract - &expected;
    let context = || ReportContext {
        examined: 1,
        ..Default::default()
    };
    let mut w1 = Vec::new();
    if !diff.is_zero() {
        w1.push(witness("eps^{AB} eps_{BA} - (q + q^-1)", diff.to_string()));
    }
    let twistor = preset(PresetName::Twistor).presentation;
    let null = eps_null(&t, &twistor);
    let mut w2 = Vec::new();
    if !null.is_zero() {
        w2.push(witness("phi^A phi^B eps_{AB}", twistor.render(&null)));
    }
    vec![
        CheckReport::new("epsilon:contract", context(), w1),
        CheckReport::new("epsilon:null", context(), w2),
    ]
}

/// The exponent derivation: the reduced system, the two ways of pinning the
/// free exponent, and closure of the solved family.
pub fn check_exponents() -> Vec<CheckReport> {
    use expsolve::{
        closure_failures, generate_constraints, realization_targets, reference_equations, rref,
        solve, Ansatz,
    };
    let context = |examined| ReportContext {
        examined,
        ..Default::default()
    };
    let system = generate_constraints(&Ansatz::symbolic(), &realization_targets());
    let reduced = rref(&system.forms(), &Unknown::ALL);
    let reference = rref(&reference_equations(), &Unknown::ALL);
    let mut out = Vec::new();
    let mut w = Vec::new();
    if reduced != reference {
        let shown: Vec<String> = reduced.iter().map(|f| f.equation()).collect();
        w.push(witness("row-reduced realization system", shown.join("; ")));
    }
    out.push(CheckReport::new(
        "exponents:system",
        context(system.len()),
        w,
    ));

    let point = [
        (Unknown::N, 0),
        (Unknown::M, 1),
        (Unknown::K, -1),
        (Unknown::L, 0),
    ];
    for (name, extras) in [
        (
            "exponents:reality",
            Extras {
                reality: true,
                star_closure: false,
            },
        ),
        (
            "exponents:star-closure",
            Extras {
                reality: false,
                star_closure: true,
            },
        ),
    ] {
        let mut w = Vec::new();
        match solve(&system, extras) {
            Ok(family) => {
                let got = family.point();
                let want = point.iter().map(|&(u, v)| (u, v.into())).collect();
                if got.as_ref() != Some(&want) {
                    w.push(witness("solution", family.render().join(", ")));
                }
                for label in closure_failures(&family) {
                    w.push(witness(format!("closure {label}"), "nonzero"));
                }
            }
            Err(e) => w.push(witness("solve", e.to_string())),
        }
        out.push(CheckReport::new(name, context(system.len()), w));
    }

    let mut w = Vec::new();
    match solve(&system, Extras::default()) {
        Ok(family) => {
            if family.free != vec![Unknown::N] {
                w.push(witness("free unknowns", format!("{:?}", family.free)));
            }
            for label in closure_failures(&family) {
                w.push(witness(format!("closure {label}"), "nonzero"));
            }
        }
        Err(e) => w.push(witness("solve", e.to_string())),
    }
    out.push(CheckReport::new(
        "exponents:family",
        context(system.len()),
        w,
    ));
    out
}

/// `box_q` at order 1, and commutativity of the off-shell pair.
pub fn check_classical_limit(ops: &OperatorAlgebra) -> Vec<CheckReport> {
    let context = || ReportContext {
        preset: Some(PresetName::DerivOnly.as_str().into()),
        ..Default::default()
    };
    let parts = ops.classical_limit(&ops.box_q(), 1);
    let zero = OperatorExpr::default();
    let h0 = parts.get(&0).unwrap_or(&zero);
    let h1 = parts.get(&1).unwrap_or(&zero);
    let want_h1 = ops.scale(&ops.times_i(&ops.word(&["D12", "D21"])), &QLaurent::int(-2));
    let mut w = Vec::new();
    let d0 = ops.sub(h0, &ops.box_classical());
    if !d0.is_zero() {
        w.push(witness("h^0 - (D11 D22 - D12 D21)", ops.render(&d0)));
    }
    let d1 = ops.sub(h1, &want_h1);
    if !d1.is_zero() {
        w.push(witness("h^1 + 2*i D12 D21", ops.render(&d1)));
    }
    if parts.keys().any(|&k| k > 1) {
        w.push(witness("orders", "terms beyond h^1"));
    }
    let mut c = context();
    c.examined = 2;
    let limit = CheckReport::new("limit:box", c, w);

    let (a, b) = (ops.word(&["D12"]), ops.word(&["D21"]));
    let comm = ops.sub(&ops.compose(&a, &b), &ops.compose(&b, &a));
    let mut w = Vec::new();
    if !comm.is_zero() {
        w.push(witness("D12 D21 - D21 D12", ops.render(&comm)));
    }
    let mut c = context();
    c.examined = 1;
    vec![limit, CheckReport::new("limit:offshell-commute", c, w)]
}

/// Linearity and `act(compose(a,b), f) = act(a, act(b, f))` for every pair of
/// operators drawn from the identity and the derivative letters, on every
/// normal coordinate monomial of degree ≤ `max_degree`.
pub fn check_operator_action(ops: &OperatorAlgebra, max_degree: usize) -> Vec<CheckReport> {
    let coords = ops.coordinates();
    let monomials: Vec<Element<QLaurent>> = (0..=max_degree)
        .flat_map(|len| coords.normal_words(len))
        .map(Element::word)
        .collect();
    let mut operators = vec![("1".to_string(), ops.identity())];
    for g in ops.derivatives().alphabet() {
        operators.push((g.name.clone(), ops.word(&[g.name.as_str()])));
    }
    operators.push(("box".into(), ops.box_q()));

    let render_f = |f: &Element<QLaurent>| coords.render(f);
    let mut comp = Vec::new();
    let mut examined = 0;
    for (na, a) in &operators {
        for (nb, b) in &operators {
            let ab = ops.compose(a, b);
            for f in &monomials {
                examined += 1;
                let lhs = ops.act(&ab, f);
                let rhs = ops.act(b, f).and_then(|g| ops.act(a, &g));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => {
                        let d = l.sub(&r);
                        if !d.is_zero() {
                            comp.push(witness(
                                format!("({na})({nb}) on {}", render_f(f)),
                                coords.render(&d),
                            ));
                        }
                    }
                    (l, r) => comp.push(witness(
                        format!("({na})({nb}) on {}", render_f(f)),
                        format!("{:?} / {:?}", l.err(), r.err()),
                    )),
                }
            }
        }
    }
    let ctx = |examined| ReportContext {
        preset: Some("nullvector+deriv-only".into()),
        max_degree: Some(max_degree),
        printed_typo: false,
        examined,
    };
    let composition = CheckReport::new("operators:composition", ctx(examined), comp);

    // Linearity in f with a q-dependent coefficient, and in the operator.
    let c = &QLaurent::q_pow(3) - &QLaurent::constant(GaussRat::from_ratio(1, 2));
    let mut lin = Vec::new();
    let mut examined = 0;
    for (i, (na, a)) in operators.iter().enumerate() {
        for pair in monomials.windows(2) {
            examined += 1;
            let (f, g) = (&pair[0], &pair[1]);
            let combo = f.add(&g.scale(&c));
            let lhs = ops.act(a, &combo);
            let rhs = ops
                .act(a, f)
                .and_then(|x| ops.act(a, g).map(|y| x.add(&y.scale(&c))));
            if let (Ok(l), Ok(r)) = (&lhs, &rhs) {
                if l == r {
                    continue;
                }
            }
            lin.push(witness(
                format!("{na} on {} + c {}", render_f(f), render_f(g)),
                "not linear",
            ));
        }
        let b = &operators[(i + 1) % operators.len()].1;
        for f in &monomials {
            examined += 1;
            let sum = ops.add(a, &ops.scale(b, &c));
            let lhs = ops.act(&sum, f);
            let rhs = ops
                .act(a, f)
                .and_then(|x| ops.act(b, f).map(|y| x.add(&y.scale(&c))));
            if let (Ok(l), Ok(r)) = (&lhs, &rhs) {
                if coords.normalize(&l.sub(r)).is_zero() {
                    continue;
                }
            }
            lin.push(witness(
                format!("({na} + c op) on {}", render_f(f)),
                "not linear",
            ));
        }
    }
    let linearity = CheckReport::new("operators:linearity", ctx(examined), lin);
    vec![composition, linearity]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::build_preset;

    #[test]
    fn wrong_twistor_line_is_caught() {
        let tw = build_preset(PresetName::Twistor);
        let lhs = Element::letters(&[tw.g("x"), tw.g("yb")]);
        let rhs = Element::letters(&[tw.g("yb"), tw.g("x")]).scale(&QLaurent::q_pow(2));
        let r = check_relations("probe", &tw, &[Relation::new("x yb = q^2 yb x", lhs, rhs)]);
        assert_eq!(r.status, Status::Fail);
        // (q − q²)·ȳx, written in the normal basis x·ȳ.
        assert_eq!(r.witnesses[0].difference, "-q x yb + x yb");
    }

    #[test]
    fn trivial_relation_passes() {
        let tw = build_preset(PresetName::Twistor);
        let xy = Element::letters(&[tw.g("x"), tw.g("y")]);
        assert!(check_relations("probe", &tw, &[Relation::new("xy", xy.clone(), xy)]).passed());
    }

    #[test]
    fn confluence_counts_are_stable() {
        let p = build_preset(PresetName::Nullvector);
        let a = check_confluence(&p, 3);
        let b = check_confluence(&p, 3);
        assert_eq!(a, b);
        assert!(a.passed());
        // Rules are the 6 descending pairs; overlaps are descending triples.
        assert_eq!(a.context.examined, 4);
    }

    #[test]
    fn coordinate_derivative_system_is_not_confluent() {
        let p = build_preset(PresetName::CoordDeriv);
        let r = check_confluence(&p, 3);
        assert_eq!(r.status, Status::Fail);
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.input.starts_with("D22 X22 X11")));
    }

    fn conjugate_pair_probe(conj_exp: i32) -> Presentation<QLaurent> {
        use crate::ncalg::{Family, Parity, PresentationBuilder};
        let mut b = PresentationBuilder::<QLaurent>::new("probe");
        let x = b.generator("x", Parity::Even, Family::Twistor);
        let xb = b.generator("xb", Parity::Even, Family::Twistor);
        let y = b.generator("y", Parity::Even, Family::Twistor);
        let yb = b.generator("yb", Parity::Even, Family::Twistor);
        b.conjugates(x, xb).conjugates(y, yb);
        let swap = |a, c, k| {
            (
                Element::letters(&[a, c]),
                Element::letters(&[c, a]).scale(&QLaurent::q_pow(k)),
            )
        };
        for (l, r) in [swap(x, y, 2), swap(xb, yb, conj_exp), swap(xb, x, 0)] {
            b.relation(&l, &r).unwrap();
        }
        b.build()
    }

    #[test]
    fn star_closure_probe() {
        // Reversal turns xy = q²yx into x̄ȳ = q²ȳx̄, so that pair is closed.
        assert!(check_star_closure(&conjugate_pair_probe(2)).passed());
        // Conjugating only the coefficient gives x̄ȳ = q⁻²ȳx̄, which is not.
        let r = check_star_closure(&conjugate_pair_probe(-2));
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses.len(), 2);
        // The self-conjugate commuting pair is never a witness.
        assert!(r.witnesses.iter().all(|w| !w.input.contains("xb x")));
    }

    #[test]
    fn long_calculus_is_not_a_fixed_point() {
        let r = check_automorphism_between(PresetName::QplaneA, PresetName::QplaneA);
        assert_eq!(r.status, Status::Fail);
    }
}
