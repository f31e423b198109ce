use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::*;
use crate::presets::{preset_with, PresetOptions};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Relations,
    Confluence,
    StarClosure,
    Automorphism,
    Realization,
    DeltaSquared,
    Epsilon,
    Exponents,
    Limit,
    Operators,
}

impl Category {
    pub const ALL: [Category; 10] = [
        Category::Relations,
        Category::Confluence,
        Category::StarClosure,
        Category::Automorphism,
        Category::Realization,
        Category::DeltaSquared,
        Category::Epsilon,
        Category::Exponents,
        Category::Limit,
        Category::Operators,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Relations => "relations",
            Category::Confluence => "confluence",
            Category::StarClosure => "star-closure",
            Category::Automorphism => "automorphism",
            Category::Realization => "realization",
            Category::DeltaSquared => "delta-squared",
            Category::Epsilon => "epsilon",
            Category::Exponents => "exponents",
            Category::Limit => "limit",
            Category::Operators => "operators",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check category `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Build the derivative table as printed.
    pub printed_typo: bool,
    /// Longest overlap word examined by confluence checks.
    pub max_degree: usize,
    /// Longest monomial for δ² = 0.
    pub delta_degree: usize,
    /// Longest monomial for operator-action checks.
    pub operator_degree: usize,
    pub categories: Option<Vec<Category>>,
    /// Restricts to checks about these presets; preset-free checks are dropped.
    pub presets: Option<Vec<PresetName>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            printed_typo: false,
            max_degree: 3,
            delta_degree: 4,
            operator_degree: 3,
            categories: None,
            presets: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub options: SuiteOptions,
    pub reports: Vec<CheckReport>,
}

impl SuiteResult {
    /// Every check ended as registered: expected passes passed, expected
    /// failures failed with a witness.
    pub fn all_as_expected(&self) -> bool {
        self.reports.iter().all(CheckReport::as_expected)
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.as_expected())
    }
}

type Job = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>;

struct Item {
    category: Category,
    preset: Option<PresetName>,
    expected: Status,
    job: Job,
}

fn item(
    category: Category,
    preset: Option<PresetName>,
    job: impl Fn() -> Vec<CheckReport> + Send + Sync + 'static,
) -> Item {
    Item {
        category,
        preset,
        expected: Status::Pass,
        job: Box::new(job),
    }
}

const CONFLUENT: [PresetName; 8] = [
    PresetName::QplaneA,
    PresetName::QplaneB,
    PresetName::QplaneShort,
    PresetName::Twistor,
    PresetName::Nullvector,
    PresetName::NullvectorDiff,
    PresetName::DerivOnly,
    PresetName::Momentum,
];

const STARRED: [PresetName; 3] = [
    PresetName::Twistor,
    PresetName::Nullvector,
    PresetName::NullvectorDiff,
];

fn items(opts: &SuiteOptions) -> Vec<Item> {
    let options = PresetOptions {
        printed_typo: opts.printed_typo,
    };
    let mut out = Vec::new();

    for name in PresetName::ALL {
        let mut it = item(Category::Relations, Some(name), move || {
            vec![check_preset_relations(&preset_with(name, options))]
        });
        if name == PresetName::CoordDeriv && options.printed_typo {
            it.expected = Status::Fail;
        }
        out.push(it);
    }

    let degree = opts.max_degree;
    for name in CONFLUENT.into_iter().chain([PresetName::CoordDeriv]) {
        let mut it = item(Category::Confluence, Some(name), move || {
            let mut r = check_confluence(&preset_with(name, options).presentation, degree);
            r.context.printed_typo = options.printed_typo;
            vec![r]
        });
        if name == PresetName::CoordDeriv {
            it.expected = Status::Fail;
        }
        out.push(it);
    }

    for name in STARRED {
        out.push(item(Category::StarClosure, Some(name), move || {
            vec![check_star_closure(&preset(name).presentation)]
        }));
    }

    out.push(item(
        Category::Automorphism,
        Some(PresetName::QplaneA),
        check_automorphism,
    ));
    let mut fixed = item(Category::Automorphism, Some(PresetName::QplaneA), || {
        vec![check_automorphism_between(
            PresetName::QplaneA,
            PresetName::QplaneA,
        )]
    });
    fixed.expected = Status::Fail;
    out.push(fixed);
    out.push(item(
        Category::Automorphism,
        Some(PresetName::QplaneShort),
        || vec![check_automorphism_involution(3)],
    ));

    out.push(item(Category::Realization, None, || {
        vec![check_realization_relations()]
    }));
    out.push(item(
        Category::Realization,
        None,
        check_realization_identities,
    ));

    let dd = opts.delta_degree;
    for name in PresetName::ALL
        .into_iter()
        .filter(|n| n.has_differentials())
    {
        out.push(item(Category::DeltaSquared, Some(name), move || {
            vec![check_delta_squared(&preset(name), dd)]
        }));
    }

    out.push(item(Category::Epsilon, None, check_epsilon));
    out.push(item(Category::Exponents, None, check_exponents));
    out.push(item(Category::Limit, Some(PresetName::DerivOnly), || {
        check_classical_limit(&OperatorAlgebra::new())
    }));
    let od = opts.operator_degree;
    out.push(item(
        Category::Operators,
        Some(PresetName::CoordDeriv),
        move || check_operator_action(&OperatorAlgebra::new(), od),
    ));
    out
}

/// Runs the selected checks concurrently; report order follows the suite
/// definition.
pub fn run_all(opts: &SuiteOptions) -> SuiteResult {
    let selected: Vec<Item> = items(opts)
        .into_iter()
        .filter(|it| {
            opts.categories
                .as_ref()
                .is_none_or(|cs| cs.contains(&it.category))
        })
        .filter(|it| match (&opts.presets, it.preset) {
            (None, _) => true,
            (Some(ps), Some(p)) => ps.contains(&p),
            (Some(_), None) => false,
        })
        .collect();
    let reports = selected
        .par_iter()
        .map(|it| {
            (it.job)()
                .into_iter()
                .map(|r| r.expecting(it.expected))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    SuiteResult {
        options: opts.clone(),
        reports,
    }
}
