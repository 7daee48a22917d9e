//! Suite names, configuration and the default budgets.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{usage, HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    GroupAxioms,
    Lemma21,
    Lemma22,
    PropositionSigma,
    Eq2,
    XyLinearity,
    Walk,
    OneStepDown,
    InterpM,
    RingZ,
    EndoGraph,
}

/// How a suite reads `--rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RankUse {
    /// rank of the free nilpotent group
    Group,
    /// ambient rank of a lattice
    Lattice,
    /// ambient rank `2r` of a graph encoding
    Even,
    /// 2x2 matrices only
    Two,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::GroupAxioms,
        Suite::Lemma21,
        Suite::Lemma22,
        Suite::PropositionSigma,
        Suite::Eq2,
        Suite::XyLinearity,
        Suite::Walk,
        Suite::OneStepDown,
        Suite::InterpM,
        Suite::RingZ,
        Suite::EndoGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GroupAxioms => "group-axioms",
            Suite::Lemma21 => "lemma-2.1",
            Suite::Lemma22 => "lemma-2.2",
            Suite::PropositionSigma => "proposition-sigma",
            Suite::Eq2 => "eq-2",
            Suite::XyLinearity => "xy-linearity",
            Suite::Walk => "walk",
            Suite::OneStepDown => "one-step-down",
            Suite::InterpM => "interp-M",
            Suite::RingZ => "ring-Z",
            Suite::EndoGraph => "endo-graph",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// The statement the suite checks.
    pub fn anchor(self) -> &'static str {
        match self {
            Suite::GroupAxioms => "N is a group of class s: group laws, the lower central series, central N_s, class-2 closed form",
            Suite::Lemma21 => "[IA(N), K_m(N)] is contained in K_{m+1}(N)",
            Suite::Lemma22 => "a symmetry acts on N_m/N_{m+1} and on K_m/K_{m+1} trivially for even m and by inversion for odd m",
            Suite::PropositionSigma => {
                "an involution is a symmetry modulo IA iff every sigma-sequence built from its conjugates reaches the identity at step s"
            }
            Suite::Eq2 => "(1 0; 2m -1) is conjugate to diag(1,-1) and (1 0; 2m-1 -1) to the swap in GL(2,Z)",
            Suite::XyLinearity => "some entry of X(m) and of Y(m) is a linear non-constant function of m",
            Suite::Walk => "sigma-sequences of non-central matrices exist in GL(2,Z) for every length",
            Suite::OneStepDown => {
                "K_{s-1}(N) is the union of T+(N) and T-(N); inner automorphisms are products of two symmetries"
            }
            Suite::InterpM => {
                "the structure (A, Aut A, direct summands) and the summand/diagonalizability criteria it is built from"
            }
            Suite::RingZ => "the ring Z is interpreted in (GL(2,Z), Z^2)",
            Suite::EndoGraph => "endomorphisms of B are coded by graphs complementary to C",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::GroupAxioms => 500,
            Suite::Lemma21 | Suite::Lemma22 | Suite::Eq2 | Suite::OneStepDown => 200,
            Suite::PropositionSigma => 50,
            Suite::XyLinearity | Suite::Walk | Suite::RingZ | Suite::EndoGraph => 100,
            Suite::InterpM => 10,
        }
    }

    /// What `trials` counts, for `list-suites`.
    pub fn trials_meaning(self) -> &'static str {
        match self {
            Suite::GroupAxioms | Suite::Lemma21 | Suite::Lemma22 => "sampled inputs per grid point",
            Suite::PropositionSigma => "sampled symmetries per grid point",
            Suite::Eq2 => "random involutions for the round trip",
            Suite::XyLinearity => "seeded matrices S",
            Suite::Walk => "seeded starting matrices",
            Suite::OneStepDown => "sampled automorphisms per grid point",
            Suite::InterpM => "random conjugates of each catalog involution",
            Suite::RingZ => "random triples for the ring laws",
            Suite::EndoGraph => "random maps per frame rank",
        }
    }

    pub(crate) fn default_samples(self) -> Option<usize> {
        match self {
            Suite::PropositionSigma => Some(50),
            Suite::OneStepDown => Some(20),
            Suite::InterpM => Some(500),
            Suite::Walk => Some(50),
            _ => None,
        }
    }

    /// What `samples` counts, for `list-suites`.
    pub fn samples_meaning(self) -> Option<&'static str> {
        match self {
            Suite::PropositionSigma => Some("sigma samples per symmetry"),
            Suite::OneStepDown => Some("conjugated symmetries in the sample (half as many IA-perturbed)"),
            Suite::InterpM => Some("falsifier samples per involution"),
            Suite::Walk => Some("steps per walk"),
            _ => None,
        }
    }

    pub(crate) fn default_m_range(self) -> Option<(i64, i64)> {
        match self {
            Suite::PropositionSigma | Suite::Walk => Some((-5, 5)),
            Suite::Eq2 | Suite::XyLinearity => Some((-10, 10)),
            Suite::RingZ => Some((-20, 20)),
            _ => None,
        }
    }

    /// The m-range is a search budget `[-b, b]`.
    fn symmetric_m_range(self) -> bool {
        matches!(self, Suite::PropositionSigma | Suite::Walk)
    }

    pub(crate) fn rank_use(self) -> RankUse {
        match self {
            Suite::Eq2 | Suite::XyLinearity | Suite::Walk | Suite::RingZ => RankUse::Two,
            Suite::InterpM => RankUse::Lattice,
            Suite::EndoGraph => RankUse::Even,
            _ => RankUse::Group,
        }
    }

    pub(crate) fn uses_class(self) -> bool {
        self.rank_use() == RankUse::Group
    }

    fn min_class(self) -> usize {
        match self {
            Suite::Lemma21 | Suite::OneStepDown => 2,
            _ => 1,
        }
    }

    fn default_ranks(self) -> Vec<usize> {
        match self.rank_use() {
            RankUse::Group | RankUse::Lattice => vec![2, 3],
            RankUse::Even => vec![2, 4, 6],
            RankUse::Two => vec![2],
        }
    }

    fn default_classes(self) -> Vec<usize> {
        match self {
            Suite::Lemma21 => vec![3],
            _ => vec![2, 3],
        }
    }
}

pub const MAX_GROUP_RANK: usize = 5;
pub const MAX_CLASS: usize = 4;
pub const MAX_LATTICE_RANK: usize = 8;

/// A requested run. Unset fields take the suite defaults, which are the
/// acceptance budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: String,
    pub rank: Option<usize>,
    pub class: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub m_range: Option<(i64, i64)>,
    pub samples: Option<usize>,
}

impl SuiteConfig {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        SuiteConfig {
            suite: suite.into(),
            rank: None,
            class: None,
            trials: None,
            seed,
            m_range: None,
            samples: None,
        }
    }
}

/// The JSON config file: the CLI keys, all optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub suite: Option<String>,
    pub rank: Option<usize>,
    pub class: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub report: Option<PathBuf>,
    pub m_range: Option<String>,
    pub samples: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Config {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Config {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })
    }
}

/// `a:b` with `a <= b`.
pub fn parse_m_range(text: &str) -> Result<(i64, i64)> {
    let Some((a, b)) = text.split_once(':') else {
        return usage(format!("m-range {text:?} is not of the form a:b"));
    };
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| HarnessError::Usage(format!("m-range bound {x:?} is not an integer")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return usage(format!("m-range {a}:{b} is empty"));
    }
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Point {
    pub n: usize,
    pub s: usize,
}

/// A validated config with every default filled in.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub suite: Suite,
    pub ranks: Vec<usize>,
    pub grid: Vec<Point>,
    pub trials: usize,
    pub seed: u64,
    pub m_range: Option<(i64, i64)>,
    pub samples: Option<usize>,
    /// rank or class fixed on the command line
    pub pinned: bool,
}

impl Plan {
    pub fn m_range(&self) -> (i64, i64) {
        self.m_range.expect("suite has an m-range")
    }

    pub fn m_bound(&self) -> i64 {
        self.m_range().1
    }

    pub fn samples(&self) -> usize {
        self.samples.expect("suite has a sample budget")
    }
}

pub(crate) fn resolve(cfg: &SuiteConfig) -> Result<Plan> {
    let Some(suite) = Suite::from_name(&cfg.suite) else {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        return usage(format!(
            "unknown suite {:?}; known suites: {}",
            cfg.suite,
            names.join(", ")
        ));
    };
    let name = suite.name();
    if let Some(n) = cfg.rank {
        let ok = match suite.rank_use() {
            RankUse::Group => (2..=MAX_GROUP_RANK).contains(&n),
            RankUse::Lattice => (2..=MAX_LATTICE_RANK).contains(&n),
            RankUse::Even => (2..=MAX_LATTICE_RANK).contains(&n) && n % 2 == 0,
            RankUse::Two => n == 2,
        };
        if !ok {
            let range = match suite.rank_use() {
                RankUse::Group => format!("2..={MAX_GROUP_RANK}"),
                RankUse::Lattice => format!("2..={MAX_LATTICE_RANK}"),
                RankUse::Even => format!("an even number in 2..={MAX_LATTICE_RANK}"),
                RankUse::Two => "2".into(),
            };
            return usage(format!("{name}: rank {n} is outside the supported range {range}"));
        }
    }
    if let Some(s) = cfg.class {
        if !suite.uses_class() {
            return usage(format!("{name} does not take a class"));
        }
        if !(suite.min_class()..=MAX_CLASS).contains(&s) {
            return usage(format!(
                "{name}: class {s} is outside the supported range {}..={MAX_CLASS}",
                suite.min_class()
            ));
        }
    }
    if cfg.trials == Some(0) {
        return usage("trials must be positive");
    }
    let m_range = match (cfg.m_range, suite.default_m_range()) {
        (Some(_), None) => return usage(format!("{name} does not take an m-range")),
        (Some((a, b)), Some(_)) => {
            if suite.symmetric_m_range() && (a != -b || b < 0) {
                return usage(format!("{name} searches m in [-b, b]; the m-range must be -b:b"));
            }
            if b - a > 10_000 {
                return usage(format!("{name}: m-range {a}:{b} is too wide"));
            }
            Some((a, b))
        }
        (None, d) => d,
    };
    let samples = match (cfg.samples, suite.default_samples()) {
        (Some(_), None) => return usage(format!("{name} does not take a sample budget")),
        (Some(0), Some(_)) if suite != Suite::Walk => return usage("samples must be positive"),
        (Some(k), Some(_)) => Some(k),
        (None, d) => d,
    };
    let ranks = cfg.rank.map(|n| vec![n]).unwrap_or_else(|| suite.default_ranks());
    let grid = if suite.uses_class() {
        let classes = cfg.class.map(|s| vec![s]).unwrap_or_else(|| suite.default_classes());
        ranks
            .iter()
            .flat_map(|&n| classes.iter().map(move |&s| Point { n, s }))
            .collect()
    } else {
        Vec::new()
    };
    Ok(Plan {
        suite,
        ranks,
        grid,
        trials: cfg.trials.unwrap_or(suite.default_trials()),
        seed: cfg.seed,
        m_range,
        samples,
        pinned: cfg.rank.is_some() || cfg.class.is_some(),
    })
}
