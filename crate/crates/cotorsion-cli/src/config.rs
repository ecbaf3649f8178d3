//! Declarative run configuration: a single TOML document naming the field,
//! the algebras, the bimodules, the extension setup, the enumeration
//! universe, named object families, and the task list. The formal grammar
//! lives in `docs/config.md`; this module is its serde mirror plus the
//! loading logic (path or bundled name).

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Default enumeration budget when neither the config nor the environment
/// sets one: the number of candidate matrices/classes a sweep may touch.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Environment variable overriding the default enumeration budget.
pub const BUDGET_ENV: &str = "COTORSION_BUDGET";

/// Default Ext window (highest degree inspected by windowed checks).
pub const DEFAULT_WINDOW: usize = 4;

/// Top-level configuration document.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub field: FieldSection,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDecl>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDecl>,
    #[serde(default)]
    pub setup: Option<SetupSection>,
    #[serde(default)]
    pub universe: Option<UniverseSection>,
    #[serde(default)]
    pub options: OptionsSection,
    #[serde(default)]
    pub families: BTreeMap<String, FamilyDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    /// The prime modulus of the ground field.
    pub modulus: u64,
}

/// A named algebra. Matrix and table entries are integers reduced mod the
/// field modulus.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDecl {
    /// The ground field itself (one-dimensional).
    Field,
    /// `k[x]/(x²)`.
    DualNumbers,
    /// Structure constants: `mul[i][j]` is the coordinate vector of
    /// `b_i · b_j`; `unit` is the coordinate vector of `1`.
    Table {
        mul: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        #[serde(default)]
        labels: Vec<String>,
    },
    /// Path algebra of a bound quiver with monomial relations.
    Quiver {
        vertices: usize,
        arrows: Vec<ArrowDecl>,
        #[serde(default)]
        relations: Vec<Vec<String>>,
        max_path_length: usize,
    },
    /// Direct product of two previously declared algebras.
    Product { factors: Vec<String> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDecl {
    pub label: String,
    /// 1-based source vertex.
    pub from: usize,
    /// 1-based target vertex.
    pub to: usize,
}

/// A named bimodule over declared algebras.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BimoduleDecl {
    /// Explicit actions: `left_action[i]` (resp. `right_action[i]`) is the
    /// matrix of the `i`-th basis element of the left (resp. right)
    /// algebra, each a `dim × dim` row list.
    Table {
        left: String,
        right: String,
        left_action: Vec<Vec<Vec<u64>>>,
        right_action: Vec<Vec<Vec<u64>>>,
    },
    /// An algebra as a bimodule over itself.
    Regular { over: String },
    /// The swap bimodule `A ⊗ A` over `A × A`: the induced endofunctor
    /// sends `(X₁, X₂)` to `(0, A ⊗ X₁)`.
    Swap { factor: String },
    /// One-corner bimodule over `from × to`: the induced endofunctor sends
    /// `(X₁, X₂)` to `(0, M ⊗ X₁)` for a declared `(to, from)`-bimodule
    /// `M` named by `inner`.
    OneCorner {
        from: String,
        to: String,
        inner: String,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupSection {
    /// Name of the base algebra (the extension category's ground algebra).
    pub algebra: String,
    /// Name of the bimodule inducing the endofunctor.
    pub bimodule: String,
    /// Multiplication on the bimodule inducing a nonzero unit
    /// transformation; omitted means the square-zero (trivial) extension.
    #[serde(default)]
    pub eta: Option<EtaDecl>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EtaDecl {
    /// Zero multiplication (the default).
    Zero,
    /// Explicit multiplication matrix `W ⊗ W → W` of shape `dim × dim²`,
    /// column `i·dim + j` giving the product of basis elements `i` and `j`.
    Table { matrix: Vec<Vec<u64>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseSection {
    /// Per-component dimension cap (setup algebra declared as a product).
    #[serde(default)]
    pub component_max_dim: Option<usize>,
    /// Plain dimension cap (any algebra).
    #[serde(default)]
    pub max_dim: Option<usize>,
    /// Enumeration budget override for this config.
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    /// Highest Ext degree inspected by windowed checks.
    #[serde(default)]
    pub window: Option<usize>,
}

/// A named object family over the base universe.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyDecl {
    All,
    Projectives,
    Injectives,
    /// Intersection of two named families.
    And { of: Vec<String> },
    /// Isomorphism closure of listed base universe members (`x<i>`).
    Listed { members: Vec<String> },
    /// Direct summands of finite sums of the listed members.
    Add { members: Vec<String> },
    /// `{X : Extⁱ(X, M) = 0, 1 ≤ i ≤ window, M in the named family}`.
    LeftPerp { of: String, window: usize },
    /// `{X : Extⁱ(M, X) = 0, 1 ≤ i ≤ window, M in the named family}`.
    RightPerp { of: String, window: usize },
}

/// One verification task. Universe member names: `x<i>` (base), `e<i>`
/// (extension), `t:x<i>` (induced), `z:x<i>` (zero structure map).
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskDecl {
    /// Check algebra axioms (associativity, unit) on declared algebras.
    Validate {
        /// Names to check; all declared algebras when omitted.
        #[serde(default)]
        targets: Option<Vec<String>>,
    },
    /// One Ext dimension between named objects (both base or both
    /// extension side).
    Ext {
        from: String,
        to: String,
        degree: usize,
        /// Expected dimension; informational when omitted.
        #[serde(default)]
        expect: Option<usize>,
    },
    /// Derived-functor dimension `L_degree F` at a named base member
    /// (Tor of the setup bimodule).
    Tor {
        x: String,
        degree: usize,
        #[serde(default)]
        expect: Option<usize>,
    },
    /// Transport a base cotorsion pair to the extension category and
    /// certify both pairs.
    TransportPair {
        left: String,
        right: String,
        #[serde(default = "default_true")]
        heredity: bool,
        /// Also build and verify special left approximations with this
        /// stock pair: "proj_all" or "all_inj".
        #[serde(default)]
        approx: Option<String>,
    },
    /// Transport a base Hovey triple (cofibrant, trivial, fibrant) and
    /// certify both triples plus the intersection identities.
    TransportHovey {
        cofibrant: String,
        trivial: String,
        fibrant: String,
    },
    /// Hypothesis-checked constructive approximations for every extension
    /// universe member, for a stock pair: "proj_all" or "all_inj".
    Approx { pair: String },
    /// Windowed Gorenstein report: GP class vs structure-exact class,
    /// spli/silp bounds, and the six-way finite-dimension class equality.
    Gorenstein {
        #[serde(default)]
        window: Option<usize>,
        spli_max: usize,
        silp_max: usize,
    },
    /// Compare extension-category Ext with module Ext over the extension
    /// ring on all ordered universe pairs, plus the transpose round-trip
    /// and the zero-unit/zero-counit consistency checks.
    BridgeRoundtrip {
        #[serde(default)]
        max_degree: Option<usize>,
    },
}

fn default_true() -> bool {
    true
}

impl TaskDecl {
    /// The task's kind keyword as written in configs.
    pub fn kind(&self) -> &'static str {
        match self {
            TaskDecl::Validate { .. } => "validate",
            TaskDecl::Ext { .. } => "ext",
            TaskDecl::Tor { .. } => "tor",
            TaskDecl::TransportPair { .. } => "transport_pair",
            TaskDecl::TransportHovey { .. } => "transport_hovey",
            TaskDecl::Approx { .. } => "approx",
            TaskDecl::Gorenstein { .. } => "gorenstein",
            TaskDecl::BridgeRoundtrip { .. } => "bridge_roundtrip",
        }
    }
}

/// A parsed config together with the raw bytes it was parsed from (the
/// hash input) and the name reports are filed under.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub raw: String,
    pub file: ConfigFile,
}

/// The configurations shipped with the binary, loadable by bare name.
pub const BUNDLED_CONFIGS: [(&str, &str); 3] = [
    (
        "a2_transport",
        include_str!("../../../configs/a2_transport.toml"),
    ),
    (
        "t2_dual_bridge",
        include_str!("../../../configs/t2_dual_bridge.toml"),
    ),
    (
        "frobenius_swap",
        include_str!("../../../configs/frobenius_swap.toml"),
    ),
];

/// Loads a config from a path, or by bundled name when no such file
/// exists. Parse errors carry the TOML line/column position.
pub fn load(spec: &str) -> Result<Loaded> {
    let path = Path::new(spec);
    let (name, raw) = if path.exists() {
        let raw = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        (config_stem(path), raw)
    } else if let Some((name, text)) = BUNDLED_CONFIGS.iter().find(|(n, _)| n == &spec) {
        (name.to_string(), text.to_string())
    } else {
        let names: Vec<&str> = BUNDLED_CONFIGS.iter().map(|(n, _)| *n).collect();
        bail!(
            "config '{spec}' is neither a readable file nor a bundled name (bundled: {})",
            names.join(", ")
        );
    };
    let file: ConfigFile =
        toml::from_str(&raw).with_context(|| format!("parsing config '{name}'"))?;
    Ok(Loaded { name, raw, file })
}

fn config_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "config".to_string())
}

/// Resolves the effective enumeration budget: flag overrides config
/// overrides the environment variable overrides the built-in default.
pub fn effective_budget(flag: Option<u64>, file: &ConfigFile) -> u64 {
    flag.or_else(|| file.universe.as_ref().and_then(|u| u.budget))
        .or_else(|| {
            std::env::var(BUDGET_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET)
}

/// Resolves the effective Ext window: flag overrides config overrides the
/// default.
pub fn effective_window(flag: Option<usize>, file: &ConfigFile) -> usize {
    flag.or(file.options.window).unwrap_or(DEFAULT_WINDOW)
}

/// Where report files land.
pub fn report_paths(dir: &Path, name: &str) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("{name}.report.txt")),
        dir.join(format!("{name}.report.json")),
    )
}
