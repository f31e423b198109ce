//! The catalog of algebras: quantum-plane calculi, q-twistors, the q-deformed
//! null-vector with its differentials, derivatives and momenta.
//!
//! Every preset is built from its relation table line by line. Each line is
//! oriented into one rewrite rule; the lines themselves are kept so the
//! verification suite can check them against the rules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ncalg::{
    AddOutcome, CoefficientAction, DerivationTable, Element, Family, GenId, Morphism, Parity,
    Presentation, PresentationBuilder, Relation, Word,
};
use crate::qcoeff::{GaussRat, QLaurent};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    QplaneA,
    QplaneB,
    QplaneShort,
    Twistor,
    Nullvector,
    NullvectorDiff,
    CoordDeriv,
    DerivOnly,
    Momentum,
}

impl PresetName {
    pub const ALL: [PresetName; 9] = [
        PresetName::QplaneA,
        PresetName::QplaneB,
        PresetName::QplaneShort,
        PresetName::Twistor,
        PresetName::Nullvector,
        PresetName::NullvectorDiff,
        PresetName::CoordDeriv,
        PresetName::DerivOnly,
        PresetName::Momentum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::QplaneA => "qplane-a",
            PresetName::QplaneB => "qplane-b",
            PresetName::QplaneShort => "qplane-short",
            PresetName::Twistor => "twistor",
            PresetName::Nullvector => "nullvector",
            PresetName::NullvectorDiff => "nullvector-diff",
            PresetName::CoordDeriv => "coord-deriv",
            PresetName::DerivOnly => "deriv-only",
            PresetName::Momentum => "momentum",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            PresetName::QplaneA => "quantum plane xy = qyx with the long calculus (a)",
            PresetName::QplaneB => "quantum plane xy = qyx with the long calculus (b)",
            PresetName::QplaneShort => "quantum plane xy = qyx with the short calculus (c)",
            PresetName::Twistor => "q-twistor components, conjugates and their short calculus",
            PresetName::Nullvector => "null-vector coordinates X^{AȦ}",
            PresetName::NullvectorDiff => "null-vector coordinates with differentials",
            PresetName::CoordDeriv => "coordinates and derivatives as one two-sided system",
            PresetName::DerivOnly => "derivatives ∂/∂X^{AȦ}",
            PresetName::Momentum => "momenta P = -i∂",
        }
    }

    /// True for presets whose alphabet carries exterior differentials.
    pub fn has_differentials(self) -> bool {
        matches!(
            self,
            PresetName::QplaneA
                | PresetName::QplaneB
                | PresetName::QplaneShort
                | PresetName::Twistor
                | PresetName::NullvectorDiff
        )
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown named element `{0}`")]
    UnknownElement(String),
}

impl FromStr for PresetName {
    type Err = PresetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PresetName::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| PresetError::UnknownPreset(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct PresetOptions {
    /// Build the derivative table exactly as printed, including the conflicting
    /// duplicate line for `∂/∂x^{12}` against `x^{21}`.
    pub printed_typo: bool,
}

/// A built preset: the presentation plus the table it came from.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: PresetName,
    pub options: PresetOptions,
    pub presentation: Presentation<QLaurent>,
    /// The printed lines, in print order.
    pub relations: Vec<Relation<QLaurent>>,
    /// Lines added beyond the printed table (nilpotency of differentials,
    /// the missing differential pair, the corrected derivative line).
    pub completions: Vec<Relation<QLaurent>>,
    /// Printed lines whose lhs already had a different rule.
    pub conflicts: Vec<String>,
    pub derivation: Option<DerivationTable<QLaurent>>,
}

impl Preset {
    pub fn element(&self, names: &[&str]) -> Element<QLaurent> {
        let ids: Vec<GenId> = names.iter().map(|n| self.presentation.g(n)).collect();
        Element::letters(&ids)
    }

    /// Printed lines followed by completions.
    pub fn all_relations(&self) -> impl Iterator<Item = &Relation<QLaurent>> {
        self.relations.iter().chain(self.completions.iter())
    }
}

/// Tag, generator and its exchange exponent with each of four partners.
type CommuteRow<E> = (&'static str, &'static str, [(&'static str, E); 4]);

fn q(k: i32) -> QLaurent {
    QLaurent::q_pow(k)
}

struct TableBuilder {
    builder: PresentationBuilder<QLaurent>,
    relations: Vec<Relation<QLaurent>>,
    completions: Vec<Relation<QLaurent>>,
    conflicts: Vec<String>,
}

impl TableBuilder {
    fn new(name: PresetName) -> Self {
        TableBuilder {
            builder: PresentationBuilder::new(name.as_str()),
            relations: Vec::new(),
            completions: Vec::new(),
            conflicts: Vec::new(),
        }
    }

    fn gens(&mut self, names: &[&str], parity: Parity, family: Family) -> Vec<GenId> {
        names
            .iter()
            .map(|n| self.builder.generator(n, parity, family))
            .collect()
    }

    fn id(&self, name: &str) -> GenId {
        self.builder.presentation().g(name)
    }

    fn word(&self, names: &[&str]) -> Element<QLaurent> {
        let ids: Vec<GenId> = names.iter().map(|n| self.id(n)).collect();
        Element::letters(&ids)
    }

    fn push(
        &mut self,
        label: String,
        lhs: Element<QLaurent>,
        rhs: Element<QLaurent>,
        printed: bool,
    ) {
        let outcome = self
            .builder
            .relation(&lhs, &rhs)
            .unwrap_or_else(|e| panic!("preset line {label} is malformed: {e}"));
        if outcome == AddOutcome::Conflict {
            self.conflicts.push(label.clone());
        }
        let rel = Relation::new(label, lhs, rhs);
        if printed {
            self.relations.push(rel);
        } else {
            self.completions.push(rel);
        }
    }

    /// Printed line `a b = c · d e`.
    fn swap(&mut self, tag: &str, a: &str, b: &str, c: QLaurent, d: &str, e: &str) {
        let lhs = self.word(&[a, b]);
        let rhs = self.word(&[d, e]).scale(&c);
        self.push(format!("{tag} {a} {b}"), lhs, rhs, true);
    }

    /// Printed line `D X = 1 + X D`.
    fn unit_line(&mut self, tag: &str, d: &str, x: &str) {
        let lhs = self.word(&[d, x]);
        let rhs = Element::unit().add(&self.word(&[x, d]));
        self.push(format!("{tag} {d} {x}"), lhs, rhs, true);
    }

    fn nilpotent(&mut self, g: &str) {
        let lhs = self.word(&[g, g]);
        self.push(format!("{g}^2 = 0"), lhs, Element::zero(), false);
    }

    fn finish(
        self,
        name: PresetName,
        options: PresetOptions,
        derivation: Option<DerivationTable<QLaurent>>,
    ) -> Preset {
        Preset {
            name,
            options,
            presentation: self.builder.build(),
            relations: self.relations,
            completions: self.completions,
            conflicts: self.conflicts,
            derivation,
        }
    }
}

/// Builds the named preset with default options (corrected derivative table).
pub fn build_preset(name: PresetName) -> Presentation<QLaurent> {
    preset(name).presentation
}

pub fn preset(name: PresetName) -> Preset {
    preset_with(name, PresetOptions::default())
}

pub fn preset_with(name: PresetName, options: PresetOptions) -> Preset {
    match name {
        PresetName::QplaneA | PresetName::QplaneB | PresetName::QplaneShort => quantum_plane(name),
        PresetName::Twistor => twistor(),
        PresetName::Nullvector => nullvector(false),
        PresetName::NullvectorDiff => nullvector(true),
        PresetName::CoordDeriv => coord_deriv(options),
        PresetName::DerivOnly => derivatives(PresetName::DerivOnly, "D"),
        PresetName::Momentum => derivatives(PresetName::Momentum, "P"),
    }
    .with_options(options)
}

impl Preset {
    fn with_options(mut self, options: PresetOptions) -> Self {
        self.options = options;
        self
    }
}

fn differential_table(t: &TableBuilder, pairs: &[(&str, &str)]) -> DerivationTable<QLaurent> {
    let mut d = DerivationTable::new();
    for (g, dg) in pairs {
        d = d.with_image(t.id(g), t.word(&[dg]));
    }
    d
}

fn quantum_plane(name: PresetName) -> Preset {
    let mut t = TableBuilder::new(name);
    t.gens(&["x", "y"], Parity::Even, Family::Coordinate);
    t.gens(&["dx", "dy"], Parity::Odd, Family::Differential);

    t.swap("(q)", "x", "y", q(1), "y", "x");

    let tag = match name {
        PresetName::QplaneA => "(a)",
        PresetName::QplaneB => "(b)",
        _ => "(c)",
    };
    let two_term = |t: &TableBuilder, c1: QLaurent, w1: [&str; 2], c2: QLaurent, w2: [&str; 2]| {
        t.word(&w1).scale(&c1).add(&t.word(&w2).scale(&c2))
    };
    match name {
        PresetName::QplaneA => {
            t.swap(tag, "dx", "x", q(2), "x", "dx");
            let rhs = two_term(&t, q(1), ["y", "dx"], &q(2) - &q(0), ["x", "dy"]);
            let lhs = t.word(&["dx", "y"]);
            t.push(format!("{tag} dx y"), lhs, rhs, true);
            t.swap(tag, "dy", "x", q(1), "x", "dy");
            t.swap(tag, "dy", "y", q(-2), "y", "dy");
        }
        PresetName::QplaneB => {
            t.swap(tag, "dx", "x", q(2), "x", "dx");
            t.swap(tag, "dx", "y", q(-1), "y", "dx");
            let rhs = two_term(&t, q(-1), ["x", "dy"], &q(-2) - &q(0), ["y", "dx"]);
            let lhs = t.word(&["dy", "x"]);
            t.push(format!("{tag} dy x"), lhs, rhs, true);
            t.swap(tag, "dy", "y", q(-2), "y", "dy");
        }
        _ => {
            t.swap(tag, "dx", "x", q(0), "x", "dx");
            t.swap(tag, "dx", "y", q(1), "y", "dx");
            t.swap(tag, "dy", "x", q(-1), "x", "dy");
            t.swap(tag, "dy", "y", q(0), "y", "dy");
        }
    }
    // δ applied to the long tables forces δxδy = −q⁻¹δyδx; the short table
    // keeps the stated −q.
    let dd = if name == PresetName::QplaneShort {
        -q(1)
    } else {
        -q(-1)
    };
    t.swap("(dd)", "dx", "dy", dd, "dy", "dx");
    for g in ["dx", "dy"] {
        let lhs = t.word(&[g, g]);
        t.push(format!("(dd) {g}^2 = 0"), lhs, Element::zero(), true);
    }
    let d = differential_table(&t, &[("x", "dx"), ("y", "dy")]);
    t.finish(name, PresetOptions::default(), Some(d))
}

fn twistor() -> Preset {
    let mut t = TableBuilder::new(PresetName::Twistor);
    let c = t.gens(&["x", "xb", "y", "yb"], Parity::Even, Family::Twistor);
    let d = t.gens(
        &["dx", "dxb", "dy", "dyb"],
        Parity::Odd,
        Family::Differential,
    );
    t.builder.conjugates(c[0], c[1]).conjugates(c[2], c[3]);
    t.builder.conjugates(d[0], d[1]).conjugates(d[2], d[3]);

    let tag = "(xy)";
    t.swap(tag, "x", "y", q(1), "y", "x");
    t.swap(tag, "x", "yb", q(1), "yb", "x");
    t.swap(tag, "xb", "y", q(1), "y", "xb");
    t.swap(tag, "xb", "yb", q(1), "yb", "xb");
    t.swap(tag, "xb", "x", q(0), "x", "xb");
    t.swap(tag, "yb", "y", q(0), "y", "yb");

    // Short calculus on twistor components: δa·b = c(a, b) b·δa.
    let rows: [CommuteRow<i32>; 4] = [
        ("(dxy1)", "dx", [("x", 0), ("xb", 0), ("y", 1), ("yb", 1)]),
        ("(dxy1)", "dxb", [("x", 0), ("xb", 0), ("y", 1), ("yb", 1)]),
        ("(dxy2)", "dy", [("x", -1), ("xb", -1), ("y", 0), ("yb", 0)]),
        (
            "(dxy2)",
            "dyb",
            [("x", -1), ("xb", -1), ("y", 0), ("yb", 0)],
        ),
    ];
    for (tag, dg, cols) in rows {
        for (g, k) in cols {
            t.swap(tag, dg, g, q(k), g, dg);
        }
    }
    for g in ["dx", "dxb", "dy", "dyb"] {
        t.nilpotent(g);
    }

    let tag = "(dxdy)";
    t.swap(tag, "dx", "dxb", -q(0), "dxb", "dx");
    t.swap(tag, "dx", "dy", -q(1), "dy", "dx");
    t.swap(tag, "dx", "dyb", -q(1), "dyb", "dx");
    // Printed fourth line; it restates the second.
    t.swap(tag, "dy", "dx", -q(-1), "dx", "dy");
    t.swap(tag, "dy", "dxb", -q(-1), "dxb", "dy");
    t.swap(tag, "dy", "dyb", -q(0), "dyb", "dy");
    // The pair (δx̄, δȳ) is absent from the printed table; δ applied to
    // δx̄·ȳ = q ȳ·δx̄ fixes it.
    let lhs = t.word(&["dxb", "dyb"]);
    let rhs = t.word(&["dyb", "dxb"]).scale(&-q(1));
    t.push("(dxdy)* dxb dyb".into(), lhs, rhs, false);

    let d = differential_table(
        &t,
        &[("x", "dx"), ("xb", "dxb"), ("y", "dy"), ("yb", "dyb")],
    );
    t.finish(PresetName::Twistor, PresetOptions::default(), Some(d))
}

const NULL_INDICES: [&str; 4] = ["11", "12", "21", "22"];

fn nullvector_coordinates(t: &mut TableBuilder) {
    let c = t.gens(
        &["X11", "X12", "X21", "X22"],
        Parity::Even,
        Family::Coordinate,
    );
    t.builder
        .self_conjugate(c[0])
        .conjugates(c[1], c[2])
        .self_conjugate(c[3]);
    let tag = "(xx)";
    t.swap(tag, "X11", "X12", q(2), "X12", "X11");
    t.swap(tag, "X11", "X21", q(2), "X21", "X11");
    t.swap(tag, "X12", "X21", q(0), "X21", "X12");
    t.swap(tag, "X12", "X22", q(2), "X22", "X12");
    t.swap(tag, "X21", "X22", q(2), "X22", "X21");
    let lhs = t.word(&["X11", "X22"]).sub(&t.word(&["X22", "X11"]));
    let rhs = t.word(&["X12", "X21"]).scale(&(&q(2) - &q(-2)));
    t.push(format!("{tag} X11 X22 - X22 X11"), lhs, rhs, true);
}

fn nullvector(with_differentials: bool) -> Preset {
    let name = if with_differentials {
        PresetName::NullvectorDiff
    } else {
        PresetName::Nullvector
    };
    let mut t = TableBuilder::new(name);
    nullvector_coordinates(&mut t);
    if !with_differentials {
        return t.finish(name, PresetOptions::default(), None);
    }
    let d = t.gens(
        &["dX11", "dX12", "dX21", "dX22"],
        Parity::Odd,
        Family::Differential,
    );
    t.builder
        .self_conjugate(d[0])
        .conjugates(d[1], d[2])
        .self_conjugate(d[3]);

    // δX^{ab}·X^{cd} = q^k X^{cd}·δX^{ab}, in print order.
    let rows: [CommuteRow<i32>; 4] = [
        (
            "(dxx1)",
            "dX11",
            [("X11", 0), ("X12", 2), ("X21", 2), ("X22", 4)],
        ),
        (
            "(dxx1)",
            "dX12",
            [("X12", 0), ("X21", 0), ("X11", -2), ("X22", 2)],
        ),
        (
            "(dxx2)",
            "dX21",
            [("X21", 0), ("X11", -2), ("X12", 0), ("X22", 2)],
        ),
        (
            "(dxx2)",
            "dX22",
            [("X22", 0), ("X11", -4), ("X12", -2), ("X21", -2)],
        ),
    ];
    for (tag, dg, cols) in rows {
        for (g, k) in cols {
            t.swap(tag, dg, g, q(k), g, dg);
        }
    }
    let tag = "(qdxdy)";
    t.swap(tag, "dX11", "dX12", -q(2), "dX12", "dX11");
    t.swap(tag, "dX11", "dX21", -q(2), "dX21", "dX11");
    t.swap(tag, "dX11", "dX22", -q(4), "dX22", "dX11");
    t.swap(tag, "dX12", "dX21", -q(0), "dX21", "dX12");
    t.swap(tag, "dX12", "dX22", -q(2), "dX22", "dX12");
    t.swap(tag, "dX21", "dX22", -q(2), "dX22", "dX21");
    for g in ["dX11", "dX12", "dX21", "dX22"] {
        t.nilpotent(g);
    }
    let pairs: Vec<(String, String)> = NULL_INDICES
        .iter()
        .map(|i| (format!("X{i}"), format!("dX{i}")))
        .collect();
    let pairs: Vec<(&str, &str)> = pairs
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let dt = differential_table(&t, &pairs);
    t.finish(name, PresetOptions::default(), Some(dt))
}

/// Relations among derivatives (or momenta) with generator prefix `p`.
fn derivative_relations(t: &mut TableBuilder, p: &str) {
    let n = |i: &str| format!("{p}{i}");
    let tag = "(qqdxdx)";
    let lines: [(&str, &str, i32); 6] = [
        ("11", "12", 2),
        ("11", "21", 2),
        ("11", "22", 4),
        ("12", "21", 0),
        ("12", "22", 2),
        ("21", "22", 2),
    ];
    for (a, b, k) in lines {
        t.swap(tag, &n(a), &n(b), q(k), &n(b), &n(a));
    }
}

fn derivatives(name: PresetName, prefix: &str) -> Preset {
    let family = if prefix == "P" {
        Family::Momentum
    } else {
        Family::Derivative
    };
    let mut t = TableBuilder::new(name);
    let names: Vec<String> = NULL_INDICES
        .iter()
        .map(|i| format!("{prefix}{i}"))
        .collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    t.gens(&names, Parity::Even, family);
    derivative_relations(&mut t, prefix);
    t.finish(name, PresetOptions::default(), None)
}

fn coord_deriv(options: PresetOptions) -> Preset {
    let mut t = TableBuilder::new(PresetName::CoordDeriv);
    nullvector_coordinates(&mut t);
    t.gens(
        &["D11", "D12", "D21", "D22"],
        Parity::Even,
        Family::Derivative,
    );

    // ∂_{ab}·X^{cd} = q^k X^{cd}·∂_{ab}, with `None` marking the unit line.
    let rows: [CommuteRow<Option<i32>>; 4] = [
        (
            "(ddx1)",
            "D11",
            [
                ("X11", None),
                ("X12", Some(-2)),
                ("X21", Some(-2)),
                ("X22", Some(-4)),
            ],
        ),
        (
            "(ddx1)",
            "D12",
            [
                ("X11", Some(2)),
                ("X12", None),
                ("X21", Some(0)),
                ("X21", Some(-2)),
            ],
        ),
        (
            "(ddx2)",
            "D21",
            [
                ("X11", Some(2)),
                ("X21", None),
                ("X12", Some(0)),
                ("X22", Some(-2)),
            ],
        ),
        (
            "(ddx2)",
            "D22",
            [
                ("X11", Some(4)),
                ("X12", Some(2)),
                ("X21", Some(2)),
                ("X22", None),
            ],
        ),
    ];
    for (tag, dg, cols) in rows {
        for (idx, (g, k)) in cols.into_iter().enumerate() {
            // Fourth line of the ∂/∂x^{12} block: printed against x^{21} a second
            // time; the symmetric completion pairs it with x^{22}.
            let g = if dg == "D12" && idx == 3 && !options.printed_typo {
                "X22"
            } else {
                g
            };
            match k {
                None => t.unit_line(tag, dg, g),
                Some(k) => t.swap(tag, dg, g, q(k), g, dg),
            }
        }
    }
    derivative_relations(&mut t, "D");
    t.finish(PresetName::CoordDeriv, options, None)
}

/// Named elements and the preset they live in.
#[derive(Clone, Debug)]
pub struct NamedElement {
    pub preset: PresetName,
    pub element: Element<QLaurent>,
}

pub const NAMED_ELEMENTS: [&str; 3] = ["qdet", "qdalembertian", "qdet-twistor"];

pub fn named_element(name: &str) -> Result<NamedElement, PresetError> {
    match name {
        "qdet" => {
            let p = preset(PresetName::Nullvector);
            let e = p
                .element(&["X11", "X22"])
                .sub(&p.element(&["X12", "X21"]).scale(&q(2)));
            Ok(NamedElement {
                preset: PresetName::Nullvector,
                element: e,
            })
        }
        "qdalembertian" => {
            let p = preset(PresetName::DerivOnly);
            let e = p
                .element(&["D11", "D22"])
                .sub(&p.element(&["D12", "D21"]).scale(&q(2)));
            Ok(NamedElement {
                preset: PresetName::DerivOnly,
                element: e,
            })
        }
        "qdet-twistor" => {
            let p = preset(PresetName::Twistor);
            let e = p
                .element(&["x", "xb", "y", "yb"])
                .sub(&p.element(&["x", "yb", "y", "xb"]).scale(&q(2)));
            Ok(NamedElement {
                preset: PresetName::Twistor,
                element: e,
            })
        }
        other => Err(PresetError::UnknownElement(other.to_string())),
    }
}

/// The twistor realization `X^{AȦ} = φ^A φ̄^Ȧ`, from the null-vector calculus
/// into the twistor calculus. Differentials go to δ of the coordinate images.
pub fn realization_map() -> Morphism<QLaurent> {
    let src = preset(PresetName::NullvectorDiff);
    let tw = preset(PresetName::Twistor);
    let delta = tw
        .derivation
        .as_ref()
        .expect("twistor preset carries a differential");
    let mut m = Morphism::new(CoefficientAction::Identity);
    let images = [
        ("11", ["x", "xb"]),
        ("12", ["x", "yb"]),
        ("21", ["y", "xb"]),
        ("22", ["y", "yb"]),
    ];
    for (idx, letters) in images {
        let image = tw.presentation.normalize(&tw.element(&letters));
        let d_image = delta
            .apply(&image, &tw.presentation)
            .expect("every twistor coordinate has a differential");
        m.images
            .insert(src.presentation.g(&format!("X{idx}")), image);
        m.images
            .insert(src.presentation.g(&format!("dX{idx}")), d_image);
    }
    m
}

/// The quantum-plane automorphism `x ↔ y`, `q → q⁻¹`, with differentials
/// following their coordinates. All quantum-plane presets share one alphabet.
pub fn plane_automorphism() -> Morphism<QLaurent> {
    let p = build_preset(PresetName::QplaneShort);
    let letter = |n: &str| Element::letters(&[p.g(n)]);
    Morphism::new(CoefficientAction::InvertQ)
        .with_image(p.g("x"), letter("y"))
        .with_image(p.g("y"), letter("x"))
        .with_image(p.g("dx"), letter("dy"))
        .with_image(p.g("dy"), letter("dx"))
}

/// `P_{AȦ} → −i ∂/∂x^{AȦ}`, from the momentum preset into the derivative preset.
pub fn momentum_map() -> Morphism<QLaurent> {
    let src = build_preset(PresetName::Momentum);
    let dst = build_preset(PresetName::DerivOnly);
    let minus_i = QLaurent::constant(-GaussRat::i());
    let mut m = Morphism::new(CoefficientAction::Identity);
    for idx in NULL_INDICES {
        let d = Element::term(Word::letter(dst.g(&format!("D{idx}"))), minus_i.clone());
        m.images.insert(src.g(&format!("P{idx}")), d);
    }
    m
}

/// q-deformed Levi-Civita tensor with upper and lower indices.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonTensor {
    pub upper: [[QLaurent; 2]; 2],
    pub lower: [[QLaurent; 2]; 2],
}

impl EpsilonTensor {
    /// `ε^{AB} = [[0, q^{1/2}], [−q^{−1/2}, 0]]`, `ε_{AB} = [[0, −q^{−1/2}], [q^{1/2}, 0]]`.
    pub fn standard() -> Self {
        let up = QLaurent::q_half_pow(1);
        let down = QLaurent::q_half_pow(-1);
        EpsilonTensor {
            upper: [[QLaurent::zero(), up.clone()], [-&down, QLaurent::zero()]],
            lower: [[QLaurent::zero(), -&down], [up, QLaurent::zero()]],
        }
    }
}

/// `Σ_{A,B} ε^{AB} ε_{BA}`.
pub fn eps_contract(t: &EpsilonTensor) -> QLaurent {
    let mut sum = QLaurent::zero();
    for a in 0..2 {
        for b in 0..2 {
            sum = &sum + &(&t.upper[a][b] * &t.lower[b][a]);
        }
    }
    sum
}

/// `Σ_{A,B} φ^A φ^B ε_{AB}` with `φ = (x, y)`, normalized in `twistor`.
pub fn eps_null(t: &EpsilonTensor, twistor: &Presentation<QLaurent>) -> Element<QLaurent> {
    let phi = [twistor.g("x"), twistor.g("y")];
    let mut sum = Element::zero();
    for a in 0..2 {
        for b in 0..2 {
            sum.add_term(Word::pair(phi[a], phi[b]), &t.lower[a][b]);
        }
    }
    twistor.normalize(&sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_rules(p: &Presentation<QLaurent>, lhs_first: Family, lhs_second: Family) -> usize {
        p.rules()
            .filter(|(w, _)| {
                let l = w.letters();
                p.generator(l[0]).family == lhs_first
                    && p.generator(l[1]).family == lhs_second
                    && l[0] != l[1]
            })
            .count()
    }

    #[test]
    fn every_preset_validates() {
        for name in PresetName::ALL {
            let report = build_preset(name).validate();
            assert!(report.is_valid(), "{name}: {:?}", report.violations);
        }
        let printed = preset_with(PresetName::CoordDeriv, PresetOptions { printed_typo: true });
        assert!(printed.presentation.validate().is_valid());
    }

    #[test]
    fn rule_census() {
        let tw = build_preset(PresetName::Twistor);
        assert_eq!(count_rules(&tw, Family::Twistor, Family::Twistor), 6);
        assert_eq!(count_rules(&tw, Family::Differential, Family::Twistor), 16);
        assert_eq!(
            count_rules(&tw, Family::Differential, Family::Differential),
            6
        );

        let nv = build_preset(PresetName::Nullvector);
        assert_eq!(nv.rule_count(), 6);

        let nd = build_preset(PresetName::NullvectorDiff);
        assert_eq!(count_rules(&nd, Family::Coordinate, Family::Coordinate), 6);
        assert_eq!(
            count_rules(&nd, Family::Differential, Family::Coordinate),
            16
        );
        assert_eq!(
            count_rules(&nd, Family::Differential, Family::Differential),
            6
        );

        let cd = build_preset(PresetName::CoordDeriv);
        assert_eq!(count_rules(&cd, Family::Derivative, Family::Coordinate), 16);
        assert_eq!(build_preset(PresetName::DerivOnly).rule_count(), 6);
        assert_eq!(build_preset(PresetName::Momentum).rule_count(), 6);
    }

    #[test]
    fn short_plane_rules_as_printed() {
        let p = build_preset(PresetName::QplaneShort);
        let (x, y, dx, dy) = (p.g("x"), p.g("y"), p.g("dx"), p.g("dy"));
        let expect = |a, b, k: i32, c, d| {
            assert_eq!(p.rule(a, b), Some(&Element::term(Word::pair(c, d), q(k))));
        };
        expect(dx, x, 0, x, dx);
        expect(dx, y, 1, y, dx);
        expect(dy, x, -1, x, dy);
        expect(dy, y, 0, y, dy);
    }

    #[test]
    fn derivative_pair_has_unit_coefficient() {
        let p = build_preset(PresetName::DerivOnly);
        let (d12, d21) = (p.g("D12"), p.g("D21"));
        assert_eq!(p.rule(d21, d12), Some(&Element::letters(&[d12, d21])));
    }

    #[test]
    fn printed_typo_records_conflict() {
        let printed = preset_with(PresetName::CoordDeriv, PresetOptions { printed_typo: true });
        assert_eq!(printed.conflicts, vec!["(ddx1) D12 X21".to_string()]);
        let p = &printed.presentation;
        assert!(p.rule(p.g("D12"), p.g("X22")).is_none());
        let fixed = preset(PresetName::CoordDeriv);
        assert!(fixed.conflicts.is_empty());
        let p = &fixed.presentation;
        assert_eq!(
            p.rule(p.g("D12"), p.g("X22")),
            Some(&Element::term(Word::pair(p.g("X22"), p.g("D12")), q(-2)))
        );
    }

    #[test]
    fn named_elements() {
        let det = named_element("qdet").unwrap();
        let p = preset(PresetName::Nullvector);
        assert_eq!(p.presentation.render(&det.element), "X11 X22 - q^2 X12 X21");
        let dal = named_element("qdalembertian").unwrap();
        let d = build_preset(PresetName::DerivOnly);
        assert_eq!(d.render(&dal.element), "D11 D22 - q^2 D12 D21");
        let tw = named_element("qdet-twistor").unwrap();
        assert!(build_preset(PresetName::Twistor)
            .normalize(&tw.element)
            .is_zero());
        assert!(named_element("nope").is_err());
    }

    #[test]
    fn realization_images() {
        let rho = realization_map();
        let src = build_preset(PresetName::NullvectorDiff);
        let tw = build_preset(PresetName::Twistor);
        let x12 = Element::letters(&[src.g("X12")]);
        assert_eq!(tw.render(&rho.apply(&x12, &src, &tw).unwrap()), "x yb");
        assert_eq!(
            rho.apply(&Element::unit(), &src, &tw).unwrap(),
            Element::unit()
        );
        let dx11 = Element::letters(&[src.g("dX11")]);
        let expected = tw.normalize(
            &Element::letters(&[tw.g("dx"), tw.g("xb")])
                .add(&Element::letters(&[tw.g("x"), tw.g("dxb")])),
        );
        assert_eq!(rho.apply(&dx11, &src, &tw).unwrap(), expected);
    }

    #[test]
    fn epsilon_identities() {
        let eps = EpsilonTensor::standard();
        assert_eq!(eps_contract(&eps), &q(1) + &q(-1));
        assert!(eps_null(&eps, &build_preset(PresetName::Twistor)).is_zero());
        let wrong = EpsilonTensor {
            upper: eps.upper.clone(),
            lower: eps.upper.clone(),
        };
        assert_eq!(eps_contract(&wrong), QLaurent::int(-2));
    }

    #[test]
    fn preset_names_round_trip() {
        for name in PresetName::ALL {
            assert_eq!(name.as_str().parse::<PresetName>().unwrap(), name);
        }
        assert!("quantum".parse::<PresetName>().is_err());
    }
}
