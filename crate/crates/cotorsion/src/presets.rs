//! Bundled algebras, bimodules, and ready-made verification scenes.
//!
//! Three stock configurations cover the range of behaviour the engine is
//! built to check:
//!
//! * **`a2_transport`** — the prime field doubled, with the swap bimodule.
//!   The extension category is the category of two-vertex quiver
//!   representations; the assembled ring is the upper-triangular 2×2 matrix
//!   algebra. A semisimple base, so every structure map splits.
//! * **`t2_dual_bridge`** — the triangular 2×2 matrix ring over the dual
//!   numbers, assembled as a context ring. The base is self-injective but
//!   not semisimple, the extension ring is 1-Gorenstein, and the
//!   structure-mono class is strictly larger than the induced-object class.
//! * **`frobenius_swap`** — the dual numbers doubled, with the swap
//!   bimodule `Λ₀ ⊗ Λ₀`. The endofunctor is exact, squares to zero, and
//!   lands in the injectives, so every object admits a constructive special
//!   left approximation and the stable triple transports.

use crate::algebra::{
    direct_product, from_quiver_over, Algebra, Arrow, ProductLayout, QuiverPresentation,
};
use crate::error::EngineError;
use crate::extcat::{enumerate_ext_objects, ExtObject, Setup};
use crate::functor::Bimodule;
use crate::linalg::Matrix;
use crate::module::{enumerate_product_modules, Module};
use crate::rings::{
    morita_context_ring, trivial_extension_ring, ExtensionRing, MoritaContextSpec,
};
use crate::Result;
use std::sync::Arc;

/// The prime field `F_p` as a one-dimensional algebra.
pub fn prime_field(p: u64) -> Arc<Algebra> {
    Algebra::new(p, vec![vec![vec![1]]], vec![1], vec!["1".into()])
        .expect("the prime field is an algebra")
}

/// The dual numbers `F_p[x]/(x²)`: basis `{1, x}`, `x² = 0`. Local and
/// self-injective, the smallest algebra whose module category has
/// nontrivial homological behaviour in every degree.
pub fn dual_numbers(p: u64) -> Arc<Algebra> {
    Algebra::new(
        p,
        vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 0]],
        ],
        vec![1, 0],
        vec!["1".into(), "x".into()],
    )
    .expect("the dual numbers are an algebra")
}

/// The path algebra of the two-vertex quiver `1 → 2` over `F_p`:
/// three-dimensional, hereditary, isomorphic to the upper-triangular 2×2
/// matrix algebra.
pub fn two_vertex_path_algebra(p: u64) -> Arc<Algebra> {
    let q = QuiverPresentation {
        vertices: 2,
        arrows: vec![Arrow {
            label: "a".into(),
            from: 1,
            to: 2,
        }],
        relations: vec![],
        max_path_length: 4,
    };
    from_quiver_over(&q, p).expect("the two-vertex quiver presentation is admissible")
}

/// A doubled algebra `A × A` with the swap bimodule on `A ⊗ A`.
pub struct SwapData {
    /// The single factor `A`.
    pub factor: Arc<Algebra>,
    /// The product `A × A`.
    pub product: Arc<Algebra>,
    /// Basis layout of the product.
    pub layout: ProductLayout,
    /// The swap bimodule `A ⊗ A` over the product.
    pub bimodule: Arc<Bimodule>,
}

/// Builds the swap bimodule over `A × A`: the space `A ⊗ A` (basis
/// `bᵢ ⊗ bⱼ` at index `i·d + j`), where the first product factor acts on
/// the right through the first tensor leg and the second factor acts on the
/// left through the second leg. The induced tensor endofunctor sends
/// `(X₁, X₂)` to `(0, A ⊗ X₁)` — it swaps the components, lands in free
/// (hence projective) modules, is exact, and squares to zero. Over the
/// prime field the square-zero extension by this bimodule is the
/// upper-triangular 2×2 matrix algebra.
///
/// # Errors
///
/// Propagates product-assembly and bimodule-validation failures.
pub fn swap_bimodule(factor: &Arc<Algebra>) -> Result<SwapData> {
    let (product, layout) = direct_product(factor, factor)?;
    let d = factor.dim();
    let w = d * d;
    let p = factor.p();
    // Left action: (a, b) · (bᵢ ⊗ bⱼ) = bᵢ ⊗ (b · bⱼ).
    let mut left = vec![Matrix::zero(p, w, w); d];
    for m in 0..d {
        let mut mat = Matrix::zero(p, w, w);
        let mul_m = factor.left_mul(m);
        for i in 0..d {
            for j in 0..d {
                for t in 0..d {
                    let c = mul_m.get(t, j);
                    if c != 0 {
                        mat.set(i * d + t, i * d + j, c);
                    }
                }
            }
        }
        left.push(mat);
    }
    // Right action: (bᵢ ⊗ bⱼ) · (a, b) = (bᵢ · a) ⊗ bⱼ.
    let mut right = Vec::with_capacity(2 * d);
    for m in 0..d {
        let mut mat = Matrix::zero(p, w, w);
        let mul_m = factor.right_mul(m);
        for i in 0..d {
            for j in 0..d {
                for t in 0..d {
                    let c = mul_m.get(t, i);
                    if c != 0 {
                        mat.set(t * d + j, i * d + j, c);
                    }
                }
            }
        }
        right.push(mat);
    }
    right.extend(std::iter::repeat_with(|| Matrix::zero(p, w, w)).take(d));
    let bimodule = Bimodule::new(product.clone(), product.clone(), left, right)?;
    Ok(SwapData {
        factor: factor.clone(),
        product,
        layout,
        bimodule,
    })
}

/// A ready-made verification scene: base algebra, bimodule, setup, the
/// assembled ring realizing the extension category, and deterministic
/// enumerated universes.
pub struct Configuration {
    /// The configuration's stable name.
    pub name: String,
    /// One-line description for reports.
    pub summary: String,
    /// The extension-category setup.
    pub setup: Arc<Setup>,
    /// The ring whose module category the extension category realizes.
    pub ring: ExtensionRing,
    /// The base product's factors, in order.
    pub factors: Vec<Arc<Algebra>>,
    /// Basis layout of the base product.
    pub layout: ProductLayout,
    /// Component dimension cap used for the universes.
    pub component_max_dim: usize,
    /// Isomorphism classes of base modules, deterministically ordered.
    pub base_universe: Vec<Module>,
    /// Isomorphism classes of extension objects, deterministically ordered.
    pub ext_universe: Vec<ExtObject>,
}

impl Configuration {
    /// The display name of the `i`-th base universe member.
    pub fn base_name(&self, i: usize) -> String {
        format!("x{i}")
    }

    /// The display name of the `i`-th extension universe member.
    pub fn ext_name(&self, i: usize) -> String {
        format!("e{i}")
    }

    /// Resolves an object name to an extension object: `e<i>` picks a
    /// universe member, `t:x<i>` induces from the `i`-th base member, and
    /// `z:x<i>` includes it with zero structure map.
    pub fn resolve_ext(&self, name: &str) -> Option<ExtObject> {
        if let Some(rest) = name.strip_prefix("e") {
            if let Ok(i) = rest.parse::<usize>() {
                return self.ext_universe.get(i).cloned();
            }
        }
        if let Some(rest) = name.strip_prefix("t:x") {
            if let Ok(i) = rest.parse::<usize>() {
                return self
                    .base_universe
                    .get(i)
                    .map(|x| crate::extcat::t_obj(&self.setup, x));
            }
        }
        if let Some(rest) = name.strip_prefix("z:x") {
            if let Ok(i) = rest.parse::<usize>() {
                return self
                    .base_universe
                    .get(i)
                    .map(|x| crate::extcat::z_obj(&self.setup, x));
            }
        }
        None
    }

    /// Splits a base universe member into its per-factor components.
    pub fn components(&self, x: &Module) -> Vec<Module> {
        crate::module::split_product_module(&self.layout, &self.factors, x)
    }

    /// A compact human-readable label for a base module: component
    /// dimensions.
    pub fn describe_base(&self, x: &Module) -> String {
        let comps: Vec<String> = self
            .components(x)
            .iter()
            .map(|c| c.dim().to_string())
            .collect();
        format!("dims ({})", comps.join(", "))
    }

    /// A compact human-readable label for an extension object: component
    /// dimensions plus the structure map's rank.
    pub fn describe_ext(&self, e: &ExtObject) -> String {
        let comps: Vec<String> = self
            .components(e.x())
            .iter()
            .map(|c| c.dim().to_string())
            .collect();
        format!(
            "dims ({}), structure rank {}",
            comps.join(", "),
            e.f().mat.rank()
        )
    }
}

/// Names of the bundled configurations, in their stable order.
pub const BUNDLED: [&str; 3] = ["a2_transport", "t2_dual_bridge", "frobenius_swap"];

/// Builds a bundled configuration by name. The budget caps every
/// enumeration sweep inside.
///
/// # Errors
///
/// Unknown names are rejected; enumeration blowups under a tiny budget
/// propagate.
pub fn bundled(name: &str, budget: u64) -> Result<Configuration> {
    match name {
        "a2_transport" => {
            let swap = swap_bimodule(&prime_field(2))?;
            config_from_swap(
                name,
                "two-vertex quiver picture over the doubled prime field",
                swap,
                2,
                budget,
            )
        }
        "t2_dual_bridge" => {
            let l0 = dual_numbers(2);
            let ring = morita_context_ring(&MoritaContextSpec {
                a: l0.clone(),
                b: l0.clone(),
                m: Bimodule::regular(&l0),
                n: None,
            })?;
            let setup = ring.setup().clone();
            let layout = ProductLayout {
                dims: vec![l0.dim(), l0.dim()],
            };
            let factors = vec![l0.clone(), l0];
            let base_universe = enumerate_product_modules(
                setup.algebra(),
                &layout,
                &factors,
                2,
                budget,
            )?;
            let ext_universe = enumerate_ext_objects(&setup, &base_universe, budget)?;
            Ok(Configuration {
                name: name.into(),
                summary: "triangular 2x2 ring over the dual numbers".into(),
                setup,
                ring,
                factors,
                layout,
                component_max_dim: 2,
                base_universe,
                ext_universe,
            })
        }
        "frobenius_swap" => {
            let swap = swap_bimodule(&dual_numbers(2))?;
            config_from_swap(
                name,
                "doubled dual numbers with the swap tensor bimodule",
                swap,
                2,
                budget,
            )
        }
        other => Err(EngineError::ConstructionFailed {
            what: "bundled configuration",
            reason: format!(
                "unknown name {other:?}; bundled names are {}",
                BUNDLED.join(", ")
            ),
        }
        .into()),
    }
}

fn config_from_swap(
    name: &str,
    summary: &str,
    swap: SwapData,
    component_max_dim: usize,
    budget: u64,
) -> Result<Configuration> {
    let SwapData {
        factor,
        product,
        layout,
        bimodule,
    } = swap;
    let setup = Setup::new(product.clone(), bimodule.clone(), None)?;
    let ring = trivial_extension_ring(&product, &bimodule, None)?;
    let factors = vec![factor.clone(), factor];
    let base_universe =
        enumerate_product_modules(&product, &layout, &factors, component_max_dim, budget)?;
    let ext_universe = enumerate_ext_objects(&setup, &base_universe, budget)?;
    Ok(Configuration {
        name: name.into(),
        summary: summary.into(),
        setup,
        ring,
        factors,
        layout,
        component_max_dim,
        base_universe,
        ext_universe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_algebra_iso;
    use crate::cat::{Category, ExtCat, ModCat};
    use crate::module::{hom_dim, is_injective, is_projective, tor_dim};

    #[test]
    fn swap_extension_of_the_prime_field_is_the_triangular_algebra() {
        let swap = swap_bimodule(&prime_field(2)).unwrap();
        assert_eq!(swap.bimodule.dim(), 1);
        let ring = trivial_extension_ring(&swap.product, &swap.bimodule, None).unwrap();
        assert_eq!(ring.lambda().dim(), 3);
        let a2 = two_vertex_path_algebra(2);
        assert!(find_algebra_iso(ring.lambda(), &a2, 1 << 22)
            .unwrap()
            .is_some());
    }

    #[test]
    fn swap_functor_swaps_components_and_squares_to_zero() {
        let swap = swap_bimodule(&dual_numbers(2)).unwrap();
        assert_eq!(swap.bimodule.dim(), 4);
        let setup = Setup::new(swap.product.clone(), swap.bimodule.clone(), None).unwrap();
        assert!(setup.square_zero());
        assert!(setup.eta_is_zero());
        // F(X₁, X₂) = (0, Λ₀ ⊗ X₁): check on the pair (Λ₀, 0).
        let l0 = &swap.factor;
        let free = crate::module::free_module(l0, 1).module;
        let zero = Module::zero(l0.clone());
        let x = crate::module::assemble_product_module(&swap.product, &swap.layout, &[&free, &zero]);
        let fx = setup.f_obj(&x);
        assert_eq!(fx.dim(), 2 * free.dim());
        let comps = crate::module::split_product_module(
            &swap.layout,
            &[l0.clone(), l0.clone()],
            &fx,
        );
        assert_eq!(comps[0].dim(), 0);
        assert_eq!(comps[1].dim(), 4);
        // The image is free over the second factor, hence injective over
        // the self-injective base; and the functor is exact on the whole
        // universe (no first derived functor anywhere).
        assert!(is_injective(&fx).unwrap());
        let ctx = crate::module::ModCtx::new(swap.product.clone());
        let w_right = setup.bimodule().as_right_module();
        for m in enumerate_product_modules(&swap.product, &swap.layout, &[l0.clone(), l0.clone()], 1, 1 << 20)
            .unwrap()
        {
            assert_eq!(tor_dim(&ctx, 1, &w_right, &m), 0);
        }
    }

    #[test]
    fn bundled_configurations_enumerate_the_expected_universes() {
        let a2 = bundled("a2_transport", 1 << 22).unwrap();
        assert_eq!(a2.base_universe.len(), 9);
        assert_eq!(a2.ext_universe.len(), 14);
        let bridge = bundled("t2_dual_bridge", 1 << 22).unwrap();
        assert_eq!(bridge.base_universe.len(), 16);
        assert!(bridge.ext_universe.len() >= bridge.base_universe.len());
        let frob = bundled("frobenius_swap", 1 << 22).unwrap();
        assert_eq!(frob.base_universe.len(), 16);
        assert!(frob.ext_universe.len() >= 16);
        assert!(bundled("no_such_config", 1 << 22).is_err());
    }

    #[test]
    fn bundled_universes_are_deterministic() {
        let a = bundled("a2_transport", 1 << 22).unwrap();
        let b = bundled("a2_transport", 1 << 22).unwrap();
        let keys_a: Vec<Vec<u8>> = a.ext_universe.iter().map(|e| e.content_key()).collect();
        let keys_b: Vec<Vec<u8>> = b.ext_universe.iter().map(|e| e.content_key()).collect();
        assert_eq!(keys_a, keys_b);
    }

    #[test]
    fn name_resolution_reaches_all_universe_members() {
        let cfg = bundled("a2_transport", 1 << 22).unwrap();
        let e3 = cfg.resolve_ext("e3").unwrap();
        assert_eq!(e3.content_key(), cfg.ext_universe[3].content_key());
        let t0 = cfg.resolve_ext("t:x1").unwrap();
        assert_eq!(
            t0.dim(),
            cfg.base_universe[1].dim() + cfg.setup.f_obj(&cfg.base_universe[1]).dim()
        );
        let z0 = cfg.resolve_ext("z:x1").unwrap();
        assert_eq!(z0.dim(), cfg.base_universe[1].dim());
        assert!(cfg.resolve_ext("e99").is_none());
        assert!(cfg.resolve_ext("bogus").is_none());
    }

    #[test]
    fn frobenius_base_is_self_injective() {
        let cfg = bundled("frobenius_swap", 1 << 22).unwrap();
        let mcat = ModCat::new(cfg.setup.algebra().clone());
        for x in &cfg.base_universe {
            if x.dim() == 0 {
                continue;
            }
            assert_eq!(
                is_projective(x).unwrap(),
                is_injective(x).unwrap(),
                "projectives and injectives agree over the doubled dual numbers"
            );
        }
        let _ = mcat;
    }

    #[test]
    fn bridge_ring_matches_its_extension_category_on_a_sample() {
        // One spot check per bundled scene: the ring-side Ext agrees with
        // the extension-category Ext on the first nonzero universe member.
        for name in BUNDLED {
            let cfg = bundled(name, 1 << 22).unwrap();
            let e = cfg
                .ext_universe
                .iter()
                .find(|e| e.dim() > 0)
                .expect("a nonzero member exists");
            let v = crate::rings::pair_to_lambda(&cfg.ring, e).unwrap();
            let ctx = crate::module::ModCtx::new(cfg.ring.lambda().clone());
            for i in 0..=2 {
                assert_eq!(
                    crate::module::ext_dim(&ctx, i, &v, &v),
                    crate::extcat::ext_dim_ext(&cfg.setup, i, e, e),
                    "degree {i} self-extensions agree over {name}"
                );
            }
        }
    }

    #[test]
    fn ext_universe_members_live_over_the_base_universe() {
        let cfg = bundled("t2_dual_bridge", 1 << 22).unwrap();
        let ecat = ExtCat::new(cfg.setup.clone());
        for e in &cfg.ext_universe {
            assert!(cfg
                .base_universe
                .iter()
                .any(|x| x.content_key() == e.x().content_key()));
            assert!(hom_dim(&cfg.setup.f_obj(e.x()), e.x()) >= e.f().mat.rank());
        }
        assert!(ecat.dim(&cfg.ext_universe[0]) <= ecat.dim(cfg.ext_universe.last().unwrap()));
    }
}
