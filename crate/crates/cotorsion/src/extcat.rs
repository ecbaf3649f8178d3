//! The extension and coextension categories of a module category along an
//! endofunctor pair.
//!
//! Fix an algebra `B`, a `(B, B)`-bimodule `M`, and the induced adjoint pair
//! `F = M ⊗ -` and `G = Hom(M, -)`, together with the natural transformations
//! `η: F² → F` and `ζ: G → G²` coming from an (optional) multiplication on
//! `M`. A [`Setup`] bundles all of that with the caches the constructions
//! share.
//!
//! * An [`ExtObject`] is a pair `(X, f)` with `f: F X → X` satisfying
//!   `f ∘ F f = f ∘ η_X`; an [`ExtMap`] `(X, f) → (Y, g)` is a module map
//!   `α: X → Y` with `α ∘ f = g ∘ F α`. This category is equivalent to the
//!   module category of the associated matrix-type ring, and is abelian with
//!   kernels and cokernels computed on underlying modules — which is exactly
//!   how they are implemented here.
//! * A [`CoextObject`] is the dual pair `[X, g]` with `g: X → G X` and
//!   `G g ∘ g = ζ_X ∘ g`; the equivalence between the two categories is the
//!   adjunction transpose, implemented by [`to_coext`] / [`to_ext`] and used
//!   to reduce every injectivity question to a dual projectivity one.
//!
//! Six functors connect the base category with the extension categories:
//! the forgetful `U`, the zero-structure embedding `Z` ([`z_obj`]), the
//! "induced" functor `T` ([`t_obj`], left adjoint to `U`, taking projectives
//! to projectives), the structure cokernel `C` ([`c_obj`], left adjoint to
//! `Z`), and on the coextension side their duals `H` ([`h_obj`]) and `K`
//! ([`k_obj`]).
//!
//! Ext groups in the extension category are computed by resolving with
//! objects `T(Q)`, `Q` free: the adjunction identifies `Hom(T(Q), (Y, g))`
//! with `Hom_B(Q, Y)`, a free coordinate space, so the hom complex needs no
//! solving — just matrix products against the resolution differentials
//! ([`ext_dim_ext`]). Covers are trimmed to greedy generating sets relative
//! to the image of the structure map, which keeps resolutions small enough
//! to iterate.

use crate::algebra::Algebra;
use crate::error::{EngineError, StructureError};
use crate::functor::{
    adjunction_phi, adjunction_psi, eta_for, zeta_for, Bimodule, BimoduleMul, HomFunctor,
    TensorFunctor,
};
use crate::linalg::Matrix;
use crate::module::{
    direct_sum, find_invertible_in_span, free_module, generating_vectors, hom_basis, image,
    is_injective, is_projective, kernel, map_from_generators, cokernel, generator_cover,
    Depth, FreeModule, ModCtx, Module, ModuleMap,
};
use crate::Result;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

// ---------------------------------------------------------------------------
// Setup
// ---------------------------------------------------------------------------

/// Everything the extension category machinery needs: the base algebra, the
/// bimodule with its optional multiplication, both induced functors, and
/// resolution caches for the base and extension categories.
pub struct Setup {
    algebra: Arc<Algebra>,
    bimodule: Arc<Bimodule>,
    mul: Option<BimoduleMul>,
    tensor: TensorFunctor,
    hom: HomFunctor,
    ctx: ModCtx,
    square_zero: bool,
    ext_res: Mutex<HashMap<Vec<u8>, Arc<ExtResolution>>>,
}

impl Setup {
    /// Assembles a setup after checking that the bimodule is two-sided over
    /// the given algebra and that the multiplication (if any) lives on it.
    ///
    /// # Errors
    ///
    /// Rejects bimodules over a different algebra on either side.
    pub fn new(
        algebra: Arc<Algebra>,
        bimodule: Arc<Bimodule>,
        mul: Option<BimoduleMul>,
    ) -> Result<Arc<Setup>> {
        if bimodule.left_alg() != &algebra || bimodule.right_alg() != &algebra {
            return Err(StructureError::IncompatibleAlgebras {
                op: "extension setup",
            }
            .into());
        }
        if let Some(m) = &mul {
            if m.bimodule() != &bimodule {
                return Err(StructureError::IncompatibleAlgebras {
                    op: "extension setup multiplication",
                }
                .into());
            }
        }
        let tensor = TensorFunctor::new(bimodule.clone());
        let hom = HomFunctor::new(bimodule.clone());
        let square_zero = tensor.square_dim() == 0;
        Ok(Arc::new(Setup {
            ctx: ModCtx::new(algebra.clone()),
            algebra,
            bimodule,
            mul,
            tensor,
            hom,
            square_zero,
            ext_res: Mutex::new(HashMap::new()),
        }))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    pub fn p(&self) -> u64 {
        self.algebra.p()
    }

    pub fn ctx(&self) -> &ModCtx {
        &self.ctx
    }

    pub fn tensor(&self) -> &TensorFunctor {
        &self.tensor
    }

    pub fn hom_functor(&self) -> &HomFunctor {
        &self.hom
    }

    /// Whether `F² = 0` (equivalently `M ⊗ M = 0`).
    pub fn square_zero(&self) -> bool {
        self.square_zero
    }

    /// Whether the structure transformation `η` vanishes (no multiplication
    /// was supplied, or the square is zero so there is nothing to multiply).
    pub fn eta_is_zero(&self) -> bool {
        self.mul.is_none() || self.square_zero
    }

    pub fn f_obj(&self, x: &Module) -> Module {
        self.tensor.apply(x).module.clone()
    }

    pub fn f_map(&self, f: &ModuleMap) -> ModuleMap {
        self.tensor.on_map(f)
    }

    pub fn g_obj(&self, y: &Module) -> Module {
        self.hom.apply(y).module.clone()
    }

    pub fn g_map(&self, u: &ModuleMap) -> ModuleMap {
        self.hom.on_map(u)
    }

    /// `η_X: F²X → FX`.
    pub fn eta(&self, x: &Module) -> ModuleMap {
        eta_for(&self.tensor, self.mul.as_ref(), x)
    }

    /// `ζ_X: G X → G²X`, the adjoint mate of `η`.
    pub fn zeta(&self, x: &Module) -> ModuleMap {
        zeta_for(&self.tensor, &self.hom, self.mul.as_ref(), x)
    }
}

// ---------------------------------------------------------------------------
// Objects and morphisms
// ---------------------------------------------------------------------------

/// An object `(X, f)` of the extension category: a module with a structure
/// map `f: F X → X` satisfying `f ∘ F f = f ∘ η_X`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtObject {
    x: Module,
    f: ModuleMap,
}

impl std::fmt::Debug for ExtObject {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fmt,
            "ExtObject(dim {}, structure rank {})",
            self.x.dim(),
            self.f.mat.rank()
        )
    }
}

impl ExtObject {
    /// Builds an extension object, validating the structure identity.
    ///
    /// # Errors
    ///
    /// Rejects structure matrices of the wrong shape, ones that are not
    /// module maps, and ones violating `f ∘ F f = f ∘ η_X`.
    pub fn new(setup: &Setup, x: Module, f_mat: Matrix) -> Result<ExtObject> {
        let fx = setup.f_obj(&x);
        let f = ModuleMap::new(fx, x.clone(), f_mat)?;
        let lhs = f.compose(&setup.f_map(&f))?;
        let rhs = f.compose(&setup.eta(&x))?;
        if lhs != rhs {
            return Err(StructureError::InvalidObject {
                what: "extension object: f ∘ F(f) must equal f ∘ η",
            }
            .into());
        }
        Ok(ExtObject { x, f })
    }

    pub(crate) fn new_unchecked(setup: &Setup, x: Module, f: ModuleMap) -> ExtObject {
        debug_assert_eq!(f.target, x);
        debug_assert_eq!(f.source, setup.f_obj(&x));
        #[cfg(debug_assertions)]
        {
            let lhs = f.compose(&setup.f_map(&f)).unwrap();
            let rhs = f.compose(&setup.eta(&x)).unwrap();
            debug_assert_eq!(lhs, rhs, "structure identity violated");
        }
        ExtObject { x, f }
    }

    pub fn zero(setup: &Setup) -> ExtObject {
        let x = Module::zero(setup.algebra().clone());
        let fx = setup.f_obj(&x);
        let f = ModuleMap::zero(&fx, &x);
        ExtObject { x, f }
    }

    /// The underlying module (the forgetful functor on objects).
    pub fn x(&self) -> &Module {
        &self.x
    }

    /// The structure map `f: F X → X`.
    pub fn f(&self) -> &ModuleMap {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.x.dim() == 0
    }

    pub fn content_key(&self) -> Vec<u8> {
        let mut key = self.x.content_key();
        key.extend_from_slice(&self.f.mat.content_key());
        key
    }
}

/// A morphism of extension objects: a module map intertwining the structure
/// maps.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtMap {
    pub source: ExtObject,
    pub target: ExtObject,
    pub map: ModuleMap,
}

impl std::fmt::Debug for ExtMap {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fmt,
            "ExtMap({} -> {}, rank {})",
            self.source.dim(),
            self.target.dim(),
            self.map.mat.rank()
        )
    }
}

impl ExtMap {
    /// Builds a morphism, validating the intertwining condition
    /// `α ∘ f = g ∘ F(α)`.
    ///
    /// # Errors
    ///
    /// Rejects matrices that are not module maps or fail the condition.
    pub fn new(setup: &Setup, source: ExtObject, target: ExtObject, mat: Matrix) -> Result<ExtMap> {
        let map = ModuleMap::new(source.x.clone(), target.x.clone(), mat)?;
        let lhs = map.compose(&source.f)?;
        let rhs = target.f.compose(&setup.f_map(&map))?;
        if lhs != rhs {
            return Err(StructureError::InvalidData {
                what: "extension morphism",
                reason: "α ∘ f must equal g ∘ F(α)".into(),
            }
            .into());
        }
        Ok(ExtMap {
            source,
            target,
            map,
        })
    }

    pub(crate) fn new_unchecked(
        setup: &Setup,
        source: ExtObject,
        target: ExtObject,
        map: ModuleMap,
    ) -> ExtMap {
        #[cfg(debug_assertions)]
        {
            let lhs = map.compose(&source.f).unwrap();
            let rhs = target.f.compose(&setup.f_map(&map)).unwrap();
            debug_assert_eq!(lhs, rhs, "extension morphism condition violated");
        }
        #[cfg(not(debug_assertions))]
        let _ = setup;
        ExtMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(e: &ExtObject) -> ExtMap {
        ExtMap {
            source: e.clone(),
            target: e.clone(),
            map: ModuleMap::identity(&e.x),
        }
    }

    pub fn zero(source: &ExtObject, target: &ExtObject) -> ExtMap {
        ExtMap {
            source: source.clone(),
            target: target.clone(),
            map: ModuleMap::zero(&source.x, &target.x),
        }
    }

    /// Composite `self ∘ other` (apply `other` first).
    ///
    /// # Errors
    ///
    /// The middle objects must agree.
    pub fn compose(&self, other: &ExtMap) -> Result<ExtMap> {
        if other.target != self.source {
            return Err(StructureError::IncompatibleAlgebras { op: "compose" }.into());
        }
        Ok(ExtMap {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&other.map)?,
        })
    }

    pub fn add(&self, other: &ExtMap) -> Result<ExtMap> {
        Ok(ExtMap {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.add(&other.map)?,
        })
    }

    pub fn is_mono(&self) -> bool {
        self.map.is_mono()
    }

    pub fn is_epi(&self) -> bool {
        self.map.is_epi()
    }

    pub fn is_iso(&self) -> bool {
        self.map.is_iso()
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

/// An object `[X, g]` of the coextension category: `g: X → G X` with
/// `G(g) ∘ g = ζ_X ∘ g`.
#[derive(Clone, PartialEq, Eq)]
pub struct CoextObject {
    x: Module,
    g: ModuleMap,
}

impl std::fmt::Debug for CoextObject {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fmt,
            "CoextObject(dim {}, structure rank {})",
            self.x.dim(),
            self.g.mat.rank()
        )
    }
}

impl CoextObject {
    /// Builds a coextension object, validating the structure identity.
    ///
    /// # Errors
    ///
    /// Rejects structure matrices of the wrong shape, ones that are not
    /// module maps, and ones violating `G(g) ∘ g = ζ_X ∘ g`.
    pub fn new(setup: &Setup, x: Module, g_mat: Matrix) -> Result<CoextObject> {
        let gx = setup.g_obj(&x);
        let g = ModuleMap::new(x.clone(), gx, g_mat)?;
        let lhs = setup.g_map(&g).compose(&g)?;
        let rhs = setup.zeta(&x).compose(&g)?;
        if lhs != rhs {
            return Err(StructureError::InvalidObject {
                what: "coextension object: G(g) ∘ g must equal ζ ∘ g",
            }
            .into());
        }
        Ok(CoextObject { x, g })
    }

    pub(crate) fn new_unchecked(setup: &Setup, x: Module, g: ModuleMap) -> CoextObject {
        debug_assert_eq!(g.source, x);
        debug_assert_eq!(g.target, setup.g_obj(&x));
        #[cfg(debug_assertions)]
        {
            let lhs = setup.g_map(&g).compose(&g).unwrap();
            let rhs = setup.zeta(&x).compose(&g).unwrap();
            debug_assert_eq!(lhs, rhs, "costructure identity violated");
        }
        CoextObject { x, g }
    }

    pub fn x(&self) -> &Module {
        &self.x
    }

    pub fn g(&self) -> &ModuleMap {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn content_key(&self) -> Vec<u8> {
        let mut key = self.x.content_key();
        key.extend_from_slice(&self.g.mat.content_key());
        key
    }
}

/// A morphism of coextension objects: `h ∘ α = G(α) ∘ g`.
#[derive(Clone, PartialEq, Eq)]
pub struct CoextMap {
    pub source: CoextObject,
    pub target: CoextObject,
    pub map: ModuleMap,
}

impl std::fmt::Debug for CoextMap {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fmt,
            "CoextMap({} -> {}, rank {})",
            self.source.dim(),
            self.target.dim(),
            self.map.mat.rank()
        )
    }
}

impl CoextMap {
    /// Builds a morphism, validating `h ∘ α = G(α) ∘ g`.
    ///
    /// # Errors
    ///
    /// Rejects matrices that are not module maps or fail the condition.
    pub fn new(
        setup: &Setup,
        source: CoextObject,
        target: CoextObject,
        mat: Matrix,
    ) -> Result<CoextMap> {
        let map = ModuleMap::new(source.x.clone(), target.x.clone(), mat)?;
        let lhs = target.g.compose(&map)?;
        let rhs = setup.g_map(&map).compose(&source.g)?;
        if lhs != rhs {
            return Err(StructureError::InvalidData {
                what: "coextension morphism",
                reason: "h ∘ α must equal G(α) ∘ g".into(),
            }
            .into());
        }
        Ok(CoextMap {
            source,
            target,
            map,
        })
    }

    pub(crate) fn new_unchecked(
        setup: &Setup,
        source: CoextObject,
        target: CoextObject,
        map: ModuleMap,
    ) -> CoextMap {
        #[cfg(debug_assertions)]
        {
            let lhs = target.g.compose(&map).unwrap();
            let rhs = setup.g_map(&map).compose(&source.g).unwrap();
            debug_assert_eq!(lhs, rhs, "coextension morphism condition violated");
        }
        #[cfg(not(debug_assertions))]
        let _ = setup;
        CoextMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(c: &CoextObject) -> CoextMap {
        CoextMap {
            source: c.clone(),
            target: c.clone(),
            map: ModuleMap::identity(&c.x),
        }
    }

    /// Composite `self ∘ other` (apply `other` first).
    ///
    /// # Errors
    ///
    /// The middle objects must agree.
    pub fn compose(&self, other: &CoextMap) -> Result<CoextMap> {
        if other.target != self.source {
            return Err(StructureError::IncompatibleAlgebras { op: "compose" }.into());
        }
        Ok(CoextMap {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&other.map)?,
        })
    }

    pub fn is_mono(&self) -> bool {
        self.map.is_mono()
    }

    pub fn is_epi(&self) -> bool {
        self.map.is_epi()
    }
}

// ---------------------------------------------------------------------------
// The six functors
// ---------------------------------------------------------------------------

/// `Z`: a module with the zero structure map.
pub fn z_obj(setup: &Setup, x: &Module) -> ExtObject {
    let fx = setup.f_obj(x);
    ExtObject {
        x: x.clone(),
        f: ModuleMap::zero(&fx, x),
    }
}

/// `Z` on morphisms.
pub fn z_map(setup: &Setup, f: &ModuleMap) -> ExtMap {
    ExtMap::new_unchecked(
        setup,
        z_obj(setup, &f.source),
        z_obj(setup, &f.target),
        f.clone(),
    )
}

/// `T`: the induced extension object on `Q ⊕ F Q` (left adjoint to the
/// forgetful functor). The structure map shifts the second summand into the
/// first via the identity and feeds `F²Q` through `η`.
pub fn t_obj(setup: &Setup, q: &Module) -> ExtObject {
    let p = setup.p();
    let fq = setup.f_obj(q);
    let sum = direct_sum(q, &fq);
    let big = &sum.module;
    // F is additive: F(Q) ⊕ F(FQ) → F(Q ⊕ FQ) via the images of the two
    // injections is an isomorphism.
    let f_i1 = setup.f_map(&sum.i1);
    let f_i2 = setup.f_map(&sum.i2);
    let can = f_i1.mat.hstack(&f_i2.mat).expect("same rows");
    let can_inv = can
        .inverse()
        .expect("square")
        .expect("the tensor functor preserves direct sums");
    let eta_q = setup.eta(q);
    let ffq_dim = eta_q.source.dim();
    // On the decomposed source: the Q-rows vanish, the FQ-rows are [ I | η ].
    let zero_band = Matrix::zero(p, q.dim(), fq.dim() + ffq_dim);
    let fq_band = Matrix::identity(p, fq.dim())
        .hstack(&eta_q.mat)
        .expect("same rows");
    let block = zero_band.vstack(&fq_band).expect("same cols");
    let t_mat = block.mul(&can_inv).expect("shape");
    let fbig = setup.f_obj(big);
    ExtObject::new_unchecked(
        setup,
        big.clone(),
        ModuleMap::new_unchecked(fbig, big.clone(), t_mat),
    )
}

/// `T` on morphisms: `q ⊕ F(q)` block-diagonally.
pub fn t_map(setup: &Setup, f: &ModuleMap) -> ExtMap {
    let p = f.source.p();
    let fsrc = setup.f_obj(&f.source);
    let ftgt = setup.f_obj(&f.target);
    let ff = setup.f_map(f);
    let top = f
        .mat
        .hstack(&Matrix::zero(p, f.target.dim(), fsrc.dim()))
        .expect("same rows");
    let bottom = Matrix::zero(p, ftgt.dim(), f.source.dim())
        .hstack(&ff.mat)
        .expect("same rows");
    let mat = top.vstack(&bottom).expect("same cols");
    let src = t_obj(setup, &f.source);
    let tgt = t_obj(setup, &f.target);
    let map = ModuleMap::new_unchecked(src.x.clone(), tgt.x.clone(), mat);
    ExtMap::new_unchecked(setup, src, tgt, map)
}

/// `C`: the cokernel of the structure map, with the projection retained
/// (left adjoint to `Z`).
pub fn c_obj(e: &ExtObject) -> crate::module::CokernelParts {
    cokernel(&e.f)
}

/// `H`: the induced coextension object on `G Y ⊕ Y` (right adjoint to the
/// forgetful functor of the coextension category).
pub fn h_obj(setup: &Setup, y: &Module) -> CoextObject {
    let p = setup.p();
    let gy = setup.g_obj(y);
    let sum = direct_sum(&gy, y);
    let big = &sum.module;
    // G is additive: G(GY) ⊕ G(Y) → G(GY ⊕ Y) via the two injections.
    let g_i1 = setup.g_map(&sum.i1);
    let g_i2 = setup.g_map(&sum.i2);
    let can = g_i1.mat.hstack(&g_i2.mat).expect("same rows");
    let zeta_y = setup.zeta(y);
    let ggy_dim = zeta_y.target.dim();
    // On the decomposed target: (h, v) ↦ (ζ(h), h).
    let top = zeta_y
        .mat
        .hstack(&Matrix::zero(p, ggy_dim, y.dim()))
        .expect("same rows");
    let bottom = Matrix::identity(p, gy.dim())
        .hstack(&Matrix::zero(p, gy.dim(), y.dim()))
        .expect("same rows");
    let block = top.vstack(&bottom).expect("same cols");
    let s_mat = can.mul(&block).expect("shape");
    let gbig = setup.g_obj(big);
    CoextObject::new_unchecked(
        setup,
        big.clone(),
        ModuleMap::new_unchecked(big.clone(), gbig, s_mat),
    )
}

/// `K`: the kernel of the costructure map, with its inclusion (right adjoint
/// to the zero-costructure embedding).
pub fn k_obj(c: &CoextObject) -> (Module, ModuleMap) {
    kernel(&c.g)
}

/// The zero-costructure embedding into the coextension category.
pub fn zc_obj(setup: &Setup, x: &Module) -> CoextObject {
    let gx = setup.g_obj(x);
    CoextObject {
        x: x.clone(),
        g: ModuleMap::zero(x, &gx),
    }
}

// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

/// A deterministic basis of the hom space `Hom((X, f), (Y, g))`, as
/// underlying matrices: the subspace of `Hom_B(X, Y)` cut out by the linear
/// condition `α ∘ f = g ∘ F(α)`.
pub fn ext_hom_basis(setup: &Setup, e1: &ExtObject, e2: &ExtObject) -> Vec<Matrix> {
    let base = hom_basis(&e1.x, &e2.x);
    filter_by_defect(base, |h| {
        let hmap = ModuleMap::new_unchecked(e1.x.clone(), e2.x.clone(), h.clone());
        let lhs = hmap.compose(&e1.f).expect("shape");
        let rhs = e2.f.compose(&setup.f_map(&hmap)).expect("shape");
        lhs.mat.sub(&rhs.mat).expect("same shape")
    })
}

pub fn ext_hom_dim(setup: &Setup, e1: &ExtObject, e2: &ExtObject) -> usize {
    ext_hom_basis(setup, e1, e2).len()
}

/// A deterministic basis of `Hom([X, g], [Y, h])`.
pub fn coext_hom_basis(setup: &Setup, c1: &CoextObject, c2: &CoextObject) -> Vec<Matrix> {
    let base = hom_basis(&c1.x, &c2.x);
    filter_by_defect(base, |h| {
        let hmap = ModuleMap::new_unchecked(c1.x.clone(), c2.x.clone(), h.clone());
        let lhs = c2.g.compose(&hmap).expect("shape");
        let rhs = setup.g_map(&hmap).compose(&c1.g).expect("shape");
        lhs.mat.sub(&rhs.mat).expect("same shape")
    })
}

/// Restricts a hom-space basis to the kernel of a linear defect functional.
fn filter_by_defect(base: Vec<Matrix>, defect: impl Fn(&Matrix) -> Matrix) -> Vec<Matrix> {
    if base.is_empty() {
        return base;
    }
    let p = base[0].p();
    let defects: Vec<Matrix> = base.iter().map(&defect).collect();
    let rows = defects[0].rows() * defects[0].cols();
    let mut stacked = Matrix::zero(p, rows, base.len());
    for (t, d) in defects.iter().enumerate() {
        for j in 0..d.cols() {
            for i in 0..d.rows() {
                stacked.set(j * d.rows() + i, t, d.get(i, j));
            }
        }
    }
    let combos = stacked.kernel_basis();
    (0..combos.cols())
        .map(|c| {
            let mut m = Matrix::zero(p, base[0].rows(), base[0].cols());
            for (t, b) in base.iter().enumerate() {
                let coeff = combos.get(t, c);
                if coeff != 0 {
                    m = m.add(&b.scale(coeff)).expect("same shape");
                }
            }
            m
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, images, sums
// ---------------------------------------------------------------------------

/// The kernel of a morphism of extension objects: the base kernel inherits a
/// unique structure map through its inclusion.
pub fn ext_kernel(setup: &Setup, alpha: &ExtMap) -> (ExtObject, ExtMap) {
    let (k_mod, k_incl) = kernel(&alpha.map);
    let fk = setup.f_map(&k_incl);
    let through = alpha.source.f.compose(&fk).expect("shape");
    let kappa_mat = k_incl
        .mat
        .solve(&through.mat)
        .expect("shape agrees")
        .expect("the kernel is stable under the structure map");
    let fk_mod = setup.f_obj(&k_mod);
    let kappa = ModuleMap::new_unchecked(fk_mod, k_mod.clone(), kappa_mat);
    let obj = ExtObject::new_unchecked(setup, k_mod, kappa);
    let incl = ExtMap::new_unchecked(setup, obj.clone(), alpha.source.clone(), k_incl);
    (obj, incl)
}

/// A cokernel presentation in the extension category: quotient object,
/// projection, and a base-level linear section of the projection for
/// inducing maps (if `β ∘ α = 0` then `β.map.mat · sect` is the induced
/// underlying matrix).
#[derive(Clone, Debug)]
pub struct ExtCokernelParts {
    pub object: ExtObject,
    pub proj: ExtMap,
    pub sect: Matrix,
}

/// The cokernel of a morphism of extension objects: the base cokernel with
/// the structure map pushed forward through the (epi) projection.
pub fn ext_cokernel(setup: &Setup, alpha: &ExtMap) -> ExtCokernelParts {
    let parts = cokernel(&alpha.map);
    let c = &parts.proj;
    let fc = setup.f_map(c);
    let rhs = c.compose(&alpha.target.f).expect("shape");
    // γ ∘ F(c) = c ∘ f: F preserves epimorphisms, so γ is determined.
    let gamma_mat = fc
        .mat
        .solve_left(&rhs.mat)
        .expect("shape agrees")
        .expect("the structure map descends to the cokernel");
    let fw = setup.f_obj(&parts.module);
    let gamma = ModuleMap::new_unchecked(fw, parts.module.clone(), gamma_mat);
    let object = ExtObject::new_unchecked(setup, parts.module.clone(), gamma);
    let proj = ExtMap::new_unchecked(setup, alpha.target.clone(), object.clone(), parts.proj);
    ExtCokernelParts {
        object,
        proj,
        sect: parts.sect,
    }
}

/// The image of a morphism of extension objects, with its inclusion into the
/// target and the corestriction of the map onto it.
pub fn ext_image(setup: &Setup, alpha: &ExtMap) -> (ExtObject, ExtMap, ExtMap) {
    let (img, incl, cores) = image(&alpha.map);
    let fi = setup.f_map(&incl);
    let through = alpha.target.f.compose(&fi).expect("shape");
    let iota_mat = incl
        .mat
        .solve(&through.mat)
        .expect("shape agrees")
        .expect("the image is stable under the structure map");
    let f_img = setup.f_obj(&img);
    let iota = ModuleMap::new_unchecked(f_img, img.clone(), iota_mat);
    let obj = ExtObject::new_unchecked(setup, img, iota);
    let incl_ext = ExtMap::new_unchecked(setup, obj.clone(), alpha.target.clone(), incl);
    let cores_ext = ExtMap::new_unchecked(setup, alpha.source.clone(), obj.clone(), cores);
    (obj, incl_ext, cores_ext)
}

/// The kernel of a morphism of coextension objects.
pub fn coext_kernel(setup: &Setup, alpha: &CoextMap) -> (CoextObject, CoextMap) {
    let (k_mod, k_incl) = kernel(&alpha.map);
    let gk = setup.g_map(&k_incl);
    let rhs = alpha.source.g.compose(&k_incl).expect("shape");
    // G(k) ∘ κ = g ∘ k: G preserves monomorphisms, so κ is determined.
    let kappa_mat = gk
        .mat
        .solve(&rhs.mat)
        .expect("shape agrees")
        .expect("the costructure restricts to the kernel");
    let gk_mod = setup.g_obj(&k_mod);
    let kappa = ModuleMap::new_unchecked(k_mod.clone(), gk_mod, kappa_mat);
    let obj = CoextObject::new_unchecked(setup, k_mod, kappa);
    let incl = CoextMap::new_unchecked(setup, obj.clone(), alpha.source.clone(), k_incl);
    (obj, incl)
}

/// A cokernel presentation in the coextension category.
#[derive(Clone, Debug)]
pub struct CoextCokernelParts {
    pub object: CoextObject,
    pub proj: CoextMap,
    pub sect: Matrix,
}

/// The cokernel of a morphism of coextension objects.
pub fn coext_cokernel(setup: &Setup, alpha: &CoextMap) -> CoextCokernelParts {
    let parts = cokernel(&alpha.map);
    let c = &parts.proj;
    let gc = setup.g_map(c);
    let through = gc.compose(&alpha.target.g).expect("shape");
    // w ∘ c = G(c) ∘ h.
    let w_mat = c
        .mat
        .solve_left(&through.mat)
        .expect("shape agrees")
        .expect("the costructure descends to the cokernel");
    let gw = setup.g_obj(&parts.module);
    let w = ModuleMap::new_unchecked(parts.module.clone(), gw, w_mat);
    let object = CoextObject::new_unchecked(setup, parts.module.clone(), w);
    let proj = CoextMap::new_unchecked(setup, alpha.target.clone(), object.clone(), parts.proj);
    CoextCokernelParts {
        object,
        proj,
        sect: parts.sect,
    }
}

/// A biproduct diagram in the extension category.
#[derive(Clone, Debug)]
pub struct ExtSumParts {
    pub object: ExtObject,
    pub i1: ExtMap,
    pub i2: ExtMap,
    pub p1: ExtMap,
    pub p2: ExtMap,
}

/// The direct sum of two extension objects: the base sum with the structure
/// maps assembled through the canonical identification `F(X ⊕ Y) ≅ FX ⊕ FY`.
pub fn ext_direct_sum(setup: &Setup, e1: &ExtObject, e2: &ExtObject) -> ExtSumParts {
    let sum = direct_sum(&e1.x, &e2.x);
    let f_i1 = setup.f_map(&sum.i1);
    let f_i2 = setup.f_map(&sum.i2);
    let can = f_i1.mat.hstack(&f_i2.mat).expect("same rows");
    let can_inv = can
        .inverse()
        .expect("square")
        .expect("the tensor functor preserves direct sums");
    let left = sum.i1.mat.mul(&e1.f.mat).expect("shape");
    let right = sum.i2.mat.mul(&e2.f.mat).expect("shape");
    let f_mat = left
        .hstack(&right)
        .expect("same rows")
        .mul(&can_inv)
        .expect("shape");
    let f_big = setup.f_obj(&sum.module);
    let structure = ModuleMap::new_unchecked(f_big, sum.module.clone(), f_mat);
    let object = ExtObject::new_unchecked(setup, sum.module.clone(), structure);
    ExtSumParts {
        i1: ExtMap::new_unchecked(setup, e1.clone(), object.clone(), sum.i1),
        i2: ExtMap::new_unchecked(setup, e2.clone(), object.clone(), sum.i2),
        p1: ExtMap::new_unchecked(setup, object.clone(), e1.clone(), sum.p1),
        p2: ExtMap::new_unchecked(setup, object.clone(), e2.clone(), sum.p2),
        object,
    }
}

/// The canonical short exact sequence of an extension object: the image of
/// the structure map, as a sub-extension-object, with quotient carried by
/// the zero structure:
/// `0 → (Im f, k ∘ F(i)) → (X, f) → (Coker f, 0) → 0`.
#[derive(Clone, Debug)]
pub struct CanonicalSequence {
    pub sub: ExtObject,
    pub incl: ExtMap,
    pub quot: ExtObject,
    pub proj: ExtMap,
}

/// Builds the canonical sequence. All maps are fully validated, so this
/// doubles as a runtime proof that the structure identity propagates to the
/// image.
///
/// # Errors
///
/// Fails only if the structure identity is violated, which cannot happen for
/// a valid input object; the error is kept so that the validation is real.
pub fn canonical_sequence(setup: &Setup, e: &ExtObject) -> Result<CanonicalSequence> {
    let (img, i, k) = image(&e.f);
    // Structure on the image: g = k ∘ F(i).
    let g = k.compose(&setup.f_map(&i))?;
    let sub = ExtObject::new(setup, img.clone(), g.mat.clone())?;
    let incl = ExtMap::new(setup, sub.clone(), e.clone(), i.mat.clone())?;
    let parts = cokernel(&e.f);
    // The quotient structure is forced to zero: γ ∘ F(c) = c ∘ f = 0 and
    // F(c) is epi.
    let quot = z_obj(setup, &parts.module);
    let proj = ExtMap::new(setup, e.clone(), quot.clone(), parts.proj.mat.clone())?;
    Ok(CanonicalSequence {
        sub,
        incl,
        quot,
        proj,
    })
}

// ---------------------------------------------------------------------------
// Covers, resolutions, Ext
// ---------------------------------------------------------------------------

/// A cover of an extension object by an induced object `T(Q)` with `Q` free:
/// the adjunction counit along a base map `β: Q → X`, with underlying matrix
/// `[β | f ∘ F(β)]`. The generating set for `Q` is chosen greedily relative
/// to the image of the structure map; if that trimmed choice fails to be
/// epi (possible when `η ≠ 0`), the cover falls back to generators of all
/// of `X`.
#[derive(Clone, Debug)]
pub struct ExtCover {
    /// The free base module `Q` with its generators.
    pub free: FreeModule,
    /// `T(Q)`.
    pub t: ExtObject,
    /// The covering morphism `T(Q) → e`.
    pub map: ExtMap,
}

impl ExtCover {
    /// Number of free generators of `Q`.
    pub fn rank(&self) -> usize {
        self.free.rank
    }

    /// The inclusion `Q → U(T(Q)) = Q ⊕ F(Q)` evaluated on generators:
    /// the generator columns of `Q` padded with zeros.
    pub fn gens_in_t(&self) -> Matrix {
        let p = self.free.module.p();
        let fq_dim = self.t.x.dim() - self.free.module.dim();
        self.free
            .gens
            .vstack(&Matrix::zero(p, fq_dim, self.free.rank))
            .expect("same cols")
    }
}

/// Builds the trimmed counit cover of `e`.
pub fn ext_cover(setup: &Setup, e: &ExtObject) -> ExtCover {
    let build = |targets: &Matrix| -> (FreeModule, ModuleMap) {
        let free = free_module(setup.algebra(), targets.cols());
        let beta = map_from_generators(&free, &e.x, targets);
        (free, beta)
    };
    let assemble = |free: FreeModule, beta: ModuleMap| -> ExtCover {
        let f_beta = setup.f_map(&beta);
        let second = e.f.compose(&f_beta).expect("shape");
        let u_mat = beta.mat.hstack(&second.mat).expect("same rows");
        let t = t_obj(setup, &free.module);
        let map = ModuleMap::new_unchecked(t.x.clone(), e.x.clone(), u_mat);
        let map = ExtMap::new_unchecked(setup, t.clone(), e.clone(), map);
        ExtCover { free, t, map }
    };
    let trimmed = generating_vectors(&e.x, Some(&e.f.mat));
    let (free, beta) = build(&trimmed);
    let cover = assemble(free, beta);
    if e.x.dim() == 0 || cover.map.is_epi() {
        return cover;
    }
    // Fallback: generate all of X, which makes the first block alone epi.
    let full = generating_vectors(&e.x, None);
    let (free, beta) = build(&full);
    let cover = assemble(free, beta);
    debug_assert!(cover.map.is_epi());
    cover
}

/// A resolution of an extension object by induced objects
/// `... → T(Q_1) → T(Q_0) → e → 0`.
#[derive(Clone, Debug)]
pub struct ExtResolution {
    /// `covers[j]` covers the `j`-th syzygy.
    pub covers: Vec<ExtCover>,
    /// Underlying matrices of the differentials: `d[0]` is the augmentation
    /// `U(T(Q_0)) → X`; `d[j]` for `j ≥ 1` is `U(T(Q_j)) → U(T(Q_{j-1}))`.
    pub d: Vec<Matrix>,
    /// The syzygy objects (kernels), aligned with `covers`.
    pub syzygies: Vec<ExtObject>,
}

impl ExtResolution {
    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    fn terminated(&self) -> bool {
        self.syzygies.last().is_none_or(ExtObject::is_zero)
    }
}

fn build_ext_resolution(setup: &Setup, e: &ExtObject, len: usize) -> ExtResolution {
    let mut covers = Vec::new();
    let mut d = Vec::new();
    let mut syzygies = Vec::new();
    let mut current = e.clone();
    let mut incl: Option<ExtMap> = None;
    for _ in 0..len {
        if current.is_zero() {
            break;
        }
        let cover = ext_cover(setup, &current);
        let diff = match &incl {
            None => cover.map.map.mat.clone(),
            Some(i) => i.map.mat.mul(&cover.map.map.mat).expect("shape"),
        };
        let (syz, syz_incl) = ext_kernel(setup, &cover.map);
        d.push(diff);
        covers.push(cover);
        syzygies.push(syz.clone());
        current = syz;
        incl = Some(syz_incl);
    }
    ExtResolution {
        covers,
        d,
        syzygies,
    }
}

/// Fetches (building and caching as needed) a `T`-resolution of `e` with at
/// least `len` terms, fewer if it terminates.
pub fn ext_resolution(setup: &Setup, e: &ExtObject, len: usize) -> Arc<ExtResolution> {
    let key = e.content_key();
    {
        let cache = setup.ext_res.lock().expect("resolution cache poisoned");
        if let Some(res) = cache.get(&key) {
            if res.len() >= len || res.terminated() {
                return res.clone();
            }
        }
    }
    let res = Arc::new(build_ext_resolution(setup, e, len));
    setup
        .ext_res
        .lock()
        .expect("resolution cache poisoned")
        .insert(key, res.clone());
    res
}

/// `dim Ext^i((X₁, f₁), (X₂, f₂))` in the extension category.
///
/// The hom complex of a `T`-resolution is transported through the adjunction
/// `Hom(T(Q), e₂) ≅ Hom_B(Q, X₂)`: a cochain is a tuple of generator images
/// in `X₂`, the underlying morphism is `[φ | f₂ ∘ F(φ)]`, and the
/// differential evaluates that against the resolution differentials on
/// generators. No linear systems are solved, only kernels and ranks taken.
pub fn ext_dim_ext(setup: &Setup, i: usize, e1: &ExtObject, e2: &ExtObject) -> usize {
    if e1.is_zero() || e2.is_zero() {
        return 0;
    }
    if i == 0 {
        return ext_hom_dim(setup, e1, e2);
    }
    let res = ext_resolution(setup, e1, i + 2);
    let delta_i = transported_differential(setup, &res, i, e2);
    let delta_next = transported_differential(setup, &res, i + 1, e2);
    let cochain_dim = res.covers.get(i).map_or(0, ExtCover::rank) * e2.x.dim();
    let kernel_dim = match &delta_next {
        Some(m) => cochain_dim - m.rank(),
        None => cochain_dim,
    };
    let image_dim = delta_i.map_or(0, |m| m.rank());
    kernel_dim - image_dim
}

/// The matrix of `Hom(T(Q_{j-1}), e₂) → Hom(T(Q_j), e₂)` in generator
/// coordinates.
fn transported_differential(
    setup: &Setup,
    res: &ExtResolution,
    j: usize,
    e2: &ExtObject,
) -> Option<Matrix> {
    if j == 0 || j >= res.covers.len() {
        return None;
    }
    let p = setup.p();
    let src = &res.covers[j - 1];
    let dst = &res.covers[j];
    let n2 = e2.x.dim();
    let d_alg = setup.algebra().dim();
    // Generator images of T(Q_j) inside U(T(Q_{j-1})) = Q_{j-1} ⊕ F(Q_{j-1}).
    let a = res.d[j].mul(&dst.gens_in_t()).expect("shape");
    let q_dim = src.free.module.dim();
    let a_top = a.row_band(0, q_dim);
    let a_bottom = a.row_band(q_dim, a.rows() - q_dim);
    let mut delta = Matrix::zero(p, n2 * dst.rank(), n2 * src.rank());
    for l in 0..src.rank() {
        for r in 0..n2 {
            // Basis cochain: generator l of Q_{j-1} maps to basis vector r
            // of X₂; expand to the full map Q_{j-1} → X₂.
            let mut full = Matrix::zero(p, n2, q_dim);
            for t in 0..d_alg {
                for row in 0..n2 {
                    full.set(row, l * d_alg + t, e2.x.act(t).get(row, r));
                }
            }
            let phi = ModuleMap::new_unchecked(src.free.module.clone(), e2.x.clone(), full);
            let f_phi = setup.f_map(&phi);
            let second = e2.f.mat.mul(&f_phi.mat).expect("shape");
            let out = phi
                .mat
                .mul(&a_top)
                .expect("shape")
                .add(&second.mul(&a_bottom).expect("shape"))
                .expect("same shape");
            let col_idx = l * n2 + r;
            for m in 0..dst.rank() {
                for row in 0..n2 {
                    delta.set(m * n2 + row, col_idx, out.get(row, m));
                }
            }
        }
    }
    Some(delta)
}

// ---------------------------------------------------------------------------
// Projectivity, injectivity, homological dimensions
// ---------------------------------------------------------------------------

/// Whether a linear combination of the hom basis solves `target ∘ ? = want`
/// — the workhorse for split tests inside the extension categories.
fn combo_solves(basis: &[Matrix], compose_with: &Matrix, want: &Matrix) -> bool {
    if basis.is_empty() {
        return want.is_zero();
    }
    let p = want.p();
    let rows = want.rows() * want.cols();
    let mut system = Matrix::zero(p, rows, basis.len());
    for (t, b) in basis.iter().enumerate() {
        let prod = compose_with.mul(b).expect("shape");
        for j in 0..prod.cols() {
            for i in 0..prod.rows() {
                system.set(j * prod.rows() + i, t, prod.get(i, j));
            }
        }
    }
    let mut rhs = Matrix::zero(p, rows, 1);
    for j in 0..want.cols() {
        for i in 0..want.rows() {
            rhs.set(j * want.rows() + i, 0, want.get(i, j));
        }
    }
    system.solve(&rhs).expect("shape agrees").is_some()
}

/// Whether an extension object is projective, decided exactly: its trimmed
/// `T`-cover must split (the cover source `T(Q)` is always projective, being
/// `T` of a projective).
pub fn ext_is_projective(setup: &Setup, e: &ExtObject) -> bool {
    if e.is_zero() {
        return true;
    }
    let cover = ext_cover(setup, e);
    let basis = ext_hom_basis(setup, e, &cover.t);
    let id = Matrix::identity(setup.p(), e.x.dim());
    combo_solves(&basis, &cover.map.map.mat, &id)
}

/// Whether a coextension object is injective: its `H`-envelope must split.
pub fn coext_is_injective(setup: &Setup, c: &CoextObject) -> Result<bool> {
    if c.x.dim() == 0 {
        return Ok(true);
    }
    let env = coext_envelope(setup, c)?;
    let basis = coext_hom_basis(setup, &env.h, c);
    // A retraction r with r ∘ env = id.
    let id = Matrix::identity(setup.p(), c.x.dim());
    // r ∘ env: unknowns compose on the left, so transpose the problem:
    // (envᵀ ∘ rᵀ = idᵀ) over the transposed basis.
    let basis_t: Vec<Matrix> = basis.iter().map(Matrix::transpose).collect();
    Ok(combo_solves(
        &basis_t,
        &env.map.map.mat.transpose(),
        &id,
    ))
}

/// Whether an extension object is injective, via the coextension
/// equivalence.
pub fn ext_is_injective(setup: &Setup, e: &ExtObject) -> Result<bool> {
    coext_is_injective(setup, &to_coext(setup, e))
}

/// An embedding of a coextension object into an injective one of the form
/// `H(I)`.
#[derive(Clone, Debug)]
pub struct CoextEnvelope {
    pub h: CoextObject,
    pub map: CoextMap,
}

/// Builds the `H`-envelope: embed the underlying module into an injective
/// `I` (the dual of a trimmed cover of the dual), then map into `H(I)` by
/// `(G(e) ∘ g, e)`.
///
/// # Errors
///
/// Fails only if the costructure identity is violated, which a valid input
/// rules out; construction is fully validated.
pub fn coext_envelope(setup: &Setup, c: &CoextObject) -> Result<CoextEnvelope> {
    // Injective embedding of the underlying module.
    let dual_cover = generator_cover(&c.x.dual(), None);
    let inj = dual_cover.free.module.dual();
    let e_mono = ModuleMap::new_unchecked(c.x.clone(), inj.clone(), dual_cover.map.mat.transpose());
    debug_assert!(e_mono.is_mono());
    let h = h_obj(setup, &inj);
    let top = setup.g_map(&e_mono).compose(&c.g)?;
    let mat = top.mat.vstack(&e_mono.mat)?;
    let map = CoextMap::new(setup, c.clone(), h.clone(), mat)?;
    debug_assert!(map.is_mono());
    Ok(CoextEnvelope { h, map })
}

/// Projective dimension in the extension category, examined up to `window`
/// syzygies.
pub fn ext_projective_dimension(setup: &Setup, e: &ExtObject, window: usize) -> Depth {
    let mut current = e.clone();
    for j in 0..=window {
        if ext_is_projective(setup, &current) {
            return Depth::Finite(j);
        }
        let cover = ext_cover(setup, &current);
        let (syz, _) = ext_kernel(setup, &cover.map);
        current = syz;
    }
    Depth::AtLeast(window + 1)
}

/// Injective dimension in the extension category, examined up to `window`
/// cosyzygies of the transported coextension object.
///
/// # Errors
///
/// Propagates envelope construction failures (none occur on valid objects).
pub fn ext_injective_dimension(setup: &Setup, e: &ExtObject, window: usize) -> Result<Depth> {
    let mut current = to_coext(setup, e);
    for j in 0..=window {
        if coext_is_injective(setup, &current)? {
            return Ok(Depth::Finite(j));
        }
        let env = coext_envelope(setup, &current)?;
        let parts = coext_cokernel(setup, &env.map);
        current = parts.object;
    }
    Ok(Depth::AtLeast(window + 1))
}

// ---------------------------------------------------------------------------
// Short resolutions under a square-zero hypothesis
// ---------------------------------------------------------------------------

/// A two-term projective presentation of an extension object with projective
/// underlying module:
/// `0 → Z(F P) → T(P) → (P, f) → 0`.
#[derive(Clone, Debug)]
pub struct ShortProjResolution {
    pub left: ExtObject,
    pub incl: ExtMap,
    pub mid: ExtObject,
    pub proj: ExtMap,
    /// Whether the left term is itself projective (equivalently, whether `F`
    /// carries `P` to a projective); when true the object has projective
    /// dimension at most one.
    pub left_is_projective: bool,
}

/// Builds the short resolution. Requires `F² = 0` and `U(e)` projective.
///
/// # Errors
///
/// Returns a diagnostic error when either hypothesis fails.
pub fn short_proj_resolution(setup: &Setup, e: &ExtObject) -> Result<ShortProjResolution> {
    if !setup.square_zero() {
        return Err(EngineError::ConstructionFailed {
            what: "short projective resolution",
            reason: "requires the endofunctor to square to zero".into(),
        }
        .into());
    }
    if !is_projective(&e.x)? {
        return Err(EngineError::ConstructionFailed {
            what: "short projective resolution",
            reason: "requires the underlying module to be projective".into(),
        }
        .into());
    }
    let fp = setup.f_obj(&e.x);
    let left = z_obj(setup, &fp);
    let mid = t_obj(setup, &e.x);
    // F P → P ⊕ F P by (-f, 1).
    let incl_mat = e.f.mat.neg().vstack(&Matrix::identity(setup.p(), fp.dim()))?;
    let incl = ExtMap::new(setup, left.clone(), mid.clone(), incl_mat)?;
    // P ⊕ F P → P by (1, f).
    let proj_mat = Matrix::identity(setup.p(), e.x.dim()).hstack(&e.f.mat)?;
    let proj = ExtMap::new(setup, mid.clone(), e.clone(), proj_mat)?;
    debug_assert!(incl.is_mono());
    debug_assert!(proj.is_epi());
    debug_assert!(proj.compose(&incl)?.is_zero());
    let left_is_projective = ext_is_projective(setup, &left);
    Ok(ShortProjResolution {
        left,
        incl,
        mid,
        proj,
        left_is_projective,
    })
}

/// A two-term injective copresentation of a coextension object with
/// injective underlying module:
/// `0 → [I, g] → H(I) → [G I, 0] → 0`.
#[derive(Clone, Debug)]
pub struct ShortInjCoresolution {
    pub mid: CoextObject,
    pub incl: CoextMap,
    pub right: CoextObject,
    pub proj: CoextMap,
    /// Whether the right term is itself injective (equivalently, whether `G`
    /// carries `I` to an injective).
    pub right_is_injective: bool,
}

/// Builds the short coresolution. Requires `F² = 0` (hence `G² = 0`) and the
/// underlying module injective.
///
/// # Errors
///
/// Returns a diagnostic error when either hypothesis fails.
pub fn short_inj_coresolution(setup: &Setup, c: &CoextObject) -> Result<ShortInjCoresolution> {
    if !setup.square_zero() {
        return Err(EngineError::ConstructionFailed {
            what: "short injective coresolution",
            reason: "requires the endofunctor to square to zero".into(),
        }
        .into());
    }
    if !is_injective(&c.x)? {
        return Err(EngineError::ConstructionFailed {
            what: "short injective coresolution",
            reason: "requires the underlying module to be injective".into(),
        }
        .into());
    }
    let gx = setup.g_obj(&c.x);
    let mid = h_obj(setup, &c.x);
    let right = zc_obj(setup, &gx);
    // I → G I ⊕ I by (g, 1).
    let incl_mat = c.g.mat.vstack(&Matrix::identity(setup.p(), c.x.dim()))?;
    let incl = CoextMap::new(setup, c.clone(), mid.clone(), incl_mat)?;
    // G I ⊕ I → G I by (1, -g).
    let proj_mat = Matrix::identity(setup.p(), gx.dim()).hstack(&c.g.mat.neg())?;
    let proj = CoextMap::new(setup, mid.clone(), right.clone(), proj_mat)?;
    debug_assert!(incl.is_mono());
    debug_assert!(proj.is_epi());
    let right_is_injective = coext_is_injective(setup, &right)?;
    Ok(ShortInjCoresolution {
        mid,
        incl,
        right,
        proj,
        right_is_injective,
    })
}

// ---------------------------------------------------------------------------
// The equivalence with the coextension category
// ---------------------------------------------------------------------------

/// Transports an extension object across the adjunction:
/// `(X, f) ↦ [X, φ(f)]`. Fully validated, so each call re-proves that the
/// mate `ζ` is compatible with `η`.
pub fn to_coext(setup: &Setup, e: &ExtObject) -> CoextObject {
    let g = adjunction_phi(&setup.tensor, &setup.hom, &e.x, &e.f);
    CoextObject::new(setup, e.x.clone(), g.mat)
        .expect("the adjunction transpose preserves the structure identity")
}

/// Transports a coextension object back: `[X, g] ↦ (X, ψ(g))`.
pub fn to_ext(setup: &Setup, c: &CoextObject) -> ExtObject {
    let f = adjunction_psi(&setup.tensor, &setup.hom, &c.x, &c.x, &c.g);
    ExtObject::new(setup, c.x.clone(), f.mat)
        .expect("the adjunction transpose preserves the structure identity")
}

/// Transports a morphism (the equivalence is the identity on underlying
/// maps).
pub fn to_coext_map(setup: &Setup, alpha: &ExtMap) -> CoextMap {
    CoextMap::new(
        setup,
        to_coext(setup, &alpha.source),
        to_coext(setup, &alpha.target),
        alpha.map.mat.clone(),
    )
    .expect("the equivalence preserves morphisms")
}

// ---------------------------------------------------------------------------
// Isomorphism search and enumeration
// ---------------------------------------------------------------------------

/// Searches for an isomorphism of extension objects (an invertible element
/// of the ext hom space); `None` is a proof of non-isomorphism.
///
/// # Errors
///
/// Refuses when the hom span is too large to sweep.
pub fn find_ext_iso(setup: &Setup, e1: &ExtObject, e2: &ExtObject) -> Result<Option<Matrix>> {
    if e1.x.dim() != e2.x.dim() || e1.f.mat.rank() != e2.f.mat.rank() {
        return Ok(None);
    }
    if e1.x.dim() == 0 {
        return Ok(Some(Matrix::zero(setup.p(), 0, 0)));
    }
    if ext_hom_dim(setup, e1, e2) != ext_hom_dim(setup, e2, e1)
        || ext_hom_dim(setup, e1, e1) != ext_hom_dim(setup, e2, e2)
    {
        return Ok(None);
    }
    find_invertible_in_span(
        setup.p(),
        &ext_hom_basis(setup, e1, e2),
        "extension-object isomorphism search",
    )
}

/// Enumerates all extension objects over the given base universe up to
/// isomorphism: for each base module, sweeps the hom space of candidate
/// structure maps, keeps the ones satisfying the structure identity, and
/// deduplicates. Order is reproducible (base order, then structure bytes).
///
/// # Errors
///
/// Refuses before sweeping when the candidate count exceeds the budget.
pub fn enumerate_ext_objects(
    setup: &Setup,
    base_universe: &[Module],
    budget: u64,
) -> Result<Vec<ExtObject>> {
    let p = setup.p();
    let mut total: u128 = 0;
    for x in base_universe {
        let fx = setup.f_obj(x);
        let hdim = crate::module::hom_dim(&fx, x);
        let layer = (0..hdim).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(p)));
        total = layer
            .and_then(|l| total.checked_add(l))
            .unwrap_or(u128::MAX);
    }
    if total > u128::from(budget) {
        return Err(EngineError::EnumerationBlowup {
            what: format!(
                "extension objects over a universe of {} base modules",
                base_universe.len()
            ),
            needed: total,
            budget,
        }
        .into());
    }
    let mut out: Vec<ExtObject> = Vec::new();
    for x in base_universe {
        let fx = setup.f_obj(x);
        let basis = hom_basis(&fx, x);
        let t = basis.len();
        let mut classes_here: Vec<ExtObject> = Vec::new();
        let mut coeffs = vec![0u64; t];
        loop {
            let mut f_mat = Matrix::zero(p, x.dim(), fx.dim());
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    f_mat = f_mat.add(&b.scale(*c)).expect("same shape");
                }
            }
            if let Ok(candidate) = ExtObject::new(setup, x.clone(), f_mat) {
                let mut fresh = true;
                for rep in &classes_here {
                    if find_ext_iso(setup, rep, &candidate)?.is_some() {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    classes_here.push(candidate);
                }
            }
            let mut pos = t;
            let mut done = false;
            loop {
                if pos == 0 {
                    done = true;
                    break;
                }
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] < p {
                    break;
                }
                coeffs[pos] = 0;
            }
            if done {
                break;
            }
        }
        out.extend(classes_here);
    }
    out.sort_by(|a, b| {
        (a.x.dim(), a.x.content_key(), a.f.mat.content_key()).cmp(&(
            b.x.dim(),
            b.x.content_key(),
            b.f.mat.content_key(),
        ))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra;
    use crate::module::hom_dim;

    fn field(p: u64) -> Arc<Algebra> {
        Algebra::new(p, vec![vec![vec![1]]], vec![1], vec!["1".into()]).unwrap()
    }

    /// The corner setup: `B = F₂ × F₂` with the one-dimensional bimodule
    /// supported between the two factors. Its extension category is the
    /// module category of the 2×2 lower-triangular matrix algebra over F₂.
    fn corner_setup() -> Arc<Setup> {
        let f2 = field(2);
        let (prod, _) = algebra::direct_product(&f2, &f2).unwrap();
        let m = Bimodule::new(
            prod.clone(),
            prod.clone(),
            vec![Matrix::identity(2, 1), Matrix::zero(2, 1, 1)],
            vec![Matrix::zero(2, 1, 1), Matrix::identity(2, 1)],
        )
        .unwrap();
        Setup::new(prod, m, None).unwrap()
    }

    /// A setup with nonzero η: the dual numbers acting on themselves via the
    /// regular bimodule and its genuine multiplication.
    fn regular_setup() -> Arc<Setup> {
        let k = Algebra::new(
            2,
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
            vec![1, 0],
            vec!["1".into(), "x".into()],
        )
        .unwrap();
        let mul = BimoduleMul::regular(&k);
        Setup::new(k.clone(), Bimodule::regular(&k), Some(mul)).unwrap()
    }

    /// The base universe of the corner setup with component dimensions ≤ 1.
    fn corner_universe(setup: &Setup) -> Vec<Module> {
        crate::module::enumerate_modules(setup.algebra(), 2, 1 << 20)
            .unwrap()
            .into_iter()
            .filter(|m| {
                // Keep components at most one-dimensional.
                (0..2).all(|i| {
                    let e = m.act(i);
                    e.rank() <= 1
                })
            })
            .collect()
    }

    /// The two simples of the corner setup, identified by which idempotent
    /// acts as the identity.
    fn corner_simples(setup: &Setup) -> (Module, Module) {
        let all = corner_universe(setup);
        let ones: Vec<&Module> = all.iter().filter(|m| m.dim() == 1).collect();
        assert_eq!(ones.len(), 2);
        let (a, b) = (ones[0], ones[1]);
        if a.act(0).is_identity() {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }

    #[test]
    fn enumeration_over_the_corner_finds_five_classes() {
        let setup = corner_setup();
        let universe = corner_universe(&setup);
        let objs = enumerate_ext_objects(&setup, &universe, 1 << 20).unwrap();
        // 0, Z(S₁), Z(S₂), Z(S₁ ⊕ S₂), T(S₂): the five module classes of the
        // triangular matrix algebra with component dimensions ≤ 1.
        assert_eq!(objs.len(), 5);
    }

    #[test]
    fn structure_identity_is_enforced() {
        let setup = regular_setup();
        let r = free_module(setup.algebra(), 1).module;
        let fr = setup.f_obj(&r);
        assert_eq!(fr.dim(), 2);
        // With η the regular multiplication, f = id is admissible
        // (f ∘ F f = f ∘ η becomes η = η) but f = the socle projection is
        // not; sweep all candidates and compare against the identity count.
        let candidates = hom_basis(&fr, &r);
        let mut valid = 0;
        let mut invalid = 0;
        let t = candidates.len();
        let mut coeffs = vec![0u64; t];
        loop {
            let mut f_mat = Matrix::zero(2, 2, 2);
            for (c, b) in coeffs.iter().zip(&candidates) {
                if *c != 0 {
                    f_mat = f_mat.add(b).unwrap();
                }
            }
            match ExtObject::new(&setup, r.clone(), f_mat) {
                Ok(_) => valid += 1,
                Err(_) => invalid += 1,
            }
            let mut pos = t;
            let mut done = false;
            loop {
                if pos == 0 {
                    done = true;
                    break;
                }
                pos -= 1;
                coeffs[pos] += 1;
                if coeffs[pos] < 2 {
                    break;
                }
                coeffs[pos] = 0;
            }
            if done {
                break;
            }
        }
        assert!(valid >= 2, "zero and identity structures are admissible");
        assert!(invalid > 0, "some structure maps violate the identity");
    }

    #[test]
    fn t_and_c_compose_to_the_identity() {
        for setup in [corner_setup(), regular_setup()] {
            let r = free_module(setup.algebra(), 1).module;
            let t = t_obj(&setup, &r);
            let parts = c_obj(&t);
            // C(T(X)) ≅ X via the first-summand composite.
            assert_eq!(parts.module.dim(), r.dim());
            let sum_dim = t.x().dim();
            let mut i1 = Matrix::zero(setup.p(), sum_dim, r.dim());
            for i in 0..r.dim() {
                i1.set(i, i, 1);
            }
            let composite = parts.proj.mat.mul(&i1).unwrap();
            assert!(
                composite.inverse().unwrap().is_some(),
                "X → T(X) → C(T(X)) is an isomorphism"
            );
        }
    }

    #[test]
    fn k_and_h_compose_to_the_identity() {
        for setup in [corner_setup(), regular_setup()] {
            let r = free_module(setup.algebra(), 1).module;
            let h = h_obj(&setup, &r);
            let (k, incl) = k_obj(&h);
            assert_eq!(k.dim(), r.dim());
            // K(H(Y)) ≅ Y via the second-summand projection.
            let gy_dim = h.x().dim() - r.dim();
            let mut p2 = Matrix::zero(setup.p(), r.dim(), h.x().dim());
            for i in 0..r.dim() {
                p2.set(i, gy_dim + i, 1);
            }
            let composite = p2.mul(&incl.mat).unwrap();
            assert!(
                composite.inverse().unwrap().is_some(),
                "K(H(Y)) → Y is an isomorphism"
            );
        }
    }

    #[test]
    fn hom_spaces_match_the_triangular_algebra() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let z1 = z_obj(&setup, &s1);
        let z2 = z_obj(&setup, &s2);
        let t2 = t_obj(&setup, &s2);
        assert_eq!(ext_hom_dim(&setup, &t2, &t2), 1, "End(P) = k");
        assert_eq!(ext_hom_dim(&setup, &z1, &t2), 1, "socle inclusion");
        assert_eq!(ext_hom_dim(&setup, &t2, &z1), 0);
        assert_eq!(ext_hom_dim(&setup, &t2, &z2), 1, "top projection");
        assert_eq!(ext_hom_dim(&setup, &z1, &z2), 0);
        assert_eq!(ext_hom_dim(&setup, &z2, &z1), 0);
    }

    #[test]
    fn canonical_sequence_of_an_induced_object() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let t2 = t_obj(&setup, &s2);
        let seq = canonical_sequence(&setup, &t2).unwrap();
        // The structure image is Z(S₁) (the socle); the quotient is Z(S₂).
        assert_eq!(seq.sub.dim(), 1);
        assert_eq!(seq.quot.dim(), 1);
        assert!(seq.incl.is_mono());
        assert!(seq.proj.is_epi());
        assert!(seq.proj.compose(&seq.incl).unwrap().is_zero());
        let z1 = z_obj(&setup, &s1);
        assert!(find_ext_iso(&setup, &seq.sub, &z1).unwrap().is_some());
        let z2 = z_obj(&setup, &s2);
        assert!(find_ext_iso(&setup, &seq.quot, &z2).unwrap().is_some());
        // Canonical sequences also exist when η ≠ 0.
        let reg = regular_setup();
        let r = free_module(reg.algebra(), 1).module;
        let e = ExtObject::new(&reg, r.clone(), Matrix::identity(2, 2)).unwrap();
        let seq = canonical_sequence(&reg, &e).unwrap();
        assert_eq!(seq.sub.dim() + seq.quot.dim(), 2);
    }

    #[test]
    fn kernels_and_cokernels_are_exact() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let t2 = t_obj(&setup, &s2);
        let seq = canonical_sequence(&setup, &t2).unwrap();
        // Kernel of the canonical projection is the canonical subobject.
        let (k, k_incl) = ext_kernel(&setup, &seq.proj);
        assert!(find_ext_iso(&setup, &k, &seq.sub).unwrap().is_some());
        assert!(seq.proj.compose(&k_incl).unwrap().is_zero());
        // Cokernel of the canonical inclusion is the canonical quotient.
        let parts = ext_cokernel(&setup, &seq.incl);
        assert!(find_ext_iso(&setup, &parts.object, &seq.quot)
            .unwrap()
            .is_some());
        let _ = (s1, s2);
    }

    #[test]
    fn direct_sums_have_intertwining_projections() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let z1 = z_obj(&setup, &s1);
        let t2 = t_obj(&setup, &s2);
        let sum = ext_direct_sum(&setup, &z1, &t2);
        assert_eq!(sum.object.dim(), 3);
        let back1 = sum.p1.compose(&sum.i1).unwrap();
        assert!(back1.map.mat.is_identity());
        let cross = sum.p2.compose(&sum.i1).unwrap();
        assert!(cross.is_zero());
    }

    #[test]
    fn covers_are_epi_and_trimmed() {
        let setup = corner_setup();
        let (_, s2) = corner_simples(&setup);
        let t2 = t_obj(&setup, &s2);
        let cover = ext_cover(&setup, &t2);
        assert!(cover.map.is_epi());
        // T(S₂) is generated by one element relative to its structure image.
        assert_eq!(cover.rank(), 1);
        // With η ≠ 0 and an isomorphism structure map the trimmed cover
        // degenerates and the fallback must engage.
        let reg = regular_setup();
        let r = free_module(reg.algebra(), 1).module;
        let e = ExtObject::new(&reg, r.clone(), Matrix::identity(2, 2)).unwrap();
        let cover = ext_cover(&reg, &e);
        assert!(cover.map.is_epi());
    }

    #[test]
    fn ext_dims_match_the_triangular_algebra() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let z1 = z_obj(&setup, &s1);
        let z2 = z_obj(&setup, &s2);
        let t2 = t_obj(&setup, &s2);
        // The unique extension: 0 → Z(S₁) → T(S₂) → Z(S₂) → 0.
        assert_eq!(ext_dim_ext(&setup, 1, &z2, &z1), 1);
        assert_eq!(ext_dim_ext(&setup, 1, &z1, &z2), 0);
        assert_eq!(ext_dim_ext(&setup, 1, &z1, &z1), 0);
        assert_eq!(ext_dim_ext(&setup, 1, &z2, &t2), 0, "T(S₂) is injective here");
        // Hereditary: Ext² vanishes on the whole universe.
        let universe = corner_universe(&setup);
        let objs = enumerate_ext_objects(&setup, &universe, 1 << 20).unwrap();
        for a in &objs {
            for b in &objs {
                assert_eq!(
                    ext_dim_ext(&setup, 0, a, b),
                    ext_hom_dim(&setup, a, b),
                    "degree zero agrees with the hom space"
                );
                assert_eq!(ext_dim_ext(&setup, 2, a, b), 0);
            }
        }
    }

    #[test]
    fn projectivity_agrees_with_ext_vanishing() {
        let setup = corner_setup();
        let universe = corner_universe(&setup);
        let objs = enumerate_ext_objects(&setup, &universe, 1 << 20).unwrap();
        for e in &objs {
            let by_split = ext_is_projective(&setup, e);
            let by_ext = objs.iter().all(|b| ext_dim_ext(&setup, 1, e, b) == 0);
            assert_eq!(by_split, by_ext, "split test vs Ext vanishing");
        }
        // Exactly three classes are projective: 0, T(S₁) = Z(S₁), T(S₂).
        let count = objs.iter().filter(|e| ext_is_projective(&setup, e)).count();
        assert_eq!(count, 3);
    }

    #[test]
    fn injectivity_agrees_with_ext_vanishing() {
        let setup = corner_setup();
        let universe = corner_universe(&setup);
        let objs = enumerate_ext_objects(&setup, &universe, 1 << 20).unwrap();
        for e in &objs {
            let by_split = ext_is_injective(&setup, e).unwrap();
            let by_ext = objs.iter().all(|b| ext_dim_ext(&setup, 1, b, e) == 0);
            assert_eq!(by_split, by_ext, "envelope split vs Ext vanishing");
        }
        let count = objs
            .iter()
            .filter(|e| ext_is_injective(&setup, e).unwrap())
            .count();
        assert_eq!(count, 3, "0, T(S₂), Z(S₂) are injective");
    }

    #[test]
    fn homological_dimensions_over_the_corner() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let z1 = z_obj(&setup, &s1);
        let z2 = z_obj(&setup, &s2);
        let t2 = t_obj(&setup, &s2);
        assert_eq!(ext_projective_dimension(&setup, &z1, 4), Depth::Finite(0));
        assert_eq!(ext_projective_dimension(&setup, &z2, 4), Depth::Finite(1));
        assert_eq!(ext_projective_dimension(&setup, &t2, 4), Depth::Finite(0));
        assert_eq!(
            ext_injective_dimension(&setup, &z1, 4).unwrap(),
            Depth::Finite(1)
        );
        assert_eq!(
            ext_injective_dimension(&setup, &z2, 4).unwrap(),
            Depth::Finite(0)
        );
    }

    #[test]
    fn transport_roundtrip_is_the_identity() {
        let setup = corner_setup();
        let universe = corner_universe(&setup);
        let objs = enumerate_ext_objects(&setup, &universe, 1 << 20).unwrap();
        for e in &objs {
            let c = to_coext(&setup, e);
            let back = to_ext(&setup, &c);
            assert_eq!(&back, e, "ψ(φ(f)) = f on the nose");
        }
        // With η = 0 the transported costructure is zero exactly when the
        // structure was zero... and ζ computes to zero throughout.
        for e in &objs {
            let c = to_coext(&setup, e);
            assert_eq!(c.g().is_zero(), e.f().is_zero());
            assert!(setup.zeta(e.x()).is_zero());
        }
    }

    #[test]
    fn transport_also_works_with_nonzero_eta() {
        let setup = regular_setup();
        let r = free_module(setup.algebra(), 1).module;
        let e = ExtObject::new(&setup, r.clone(), Matrix::identity(2, 2)).unwrap();
        let c = to_coext(&setup, &e);
        let back = to_ext(&setup, &c);
        assert_eq!(back, e);
        // A morphism transports with its underlying matrix unchanged.
        let seq = canonical_sequence(&setup, &e).unwrap();
        let moved = to_coext_map(&setup, &seq.incl);
        assert_eq!(moved.map.mat, seq.incl.map.mat);
    }

    #[test]
    fn short_resolutions_under_square_zero() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        // Z(S₂) has projective underlying module (every module over a
        // product of fields is projective).
        let z2 = z_obj(&setup, &s2);
        let res = short_proj_resolution(&setup, &z2).unwrap();
        assert!(res.left_is_projective, "F(S₂) = S₁ is projective in the base");
        assert_eq!(res.mid.dim(), 2);
        assert!(res.incl.is_mono());
        assert!(res.proj.is_epi());
        // Dual side: costructure on an injective underlying module.
        let c1 = zc_obj(&setup, &s1);
        let cores = short_inj_coresolution(&setup, &c1).unwrap();
        assert!(cores.right_is_injective);
        assert!(cores.incl.is_mono());
        assert!(cores.proj.is_epi());
        // The hypotheses are enforced.
        let reg = regular_setup();
        let err = short_proj_resolution(&reg, &z_obj(&reg, &free_module(reg.algebra(), 1).module));
        assert!(err.is_err(), "η ≠ 0 setup has F² ≠ 0");
        let _ = s1;
    }

    #[test]
    fn envelope_is_mono_into_an_injective() {
        let setup = corner_setup();
        let universe = corner_universe(&setup);
        let objs = enumerate_ext_objects(&setup, &universe, 1 << 20).unwrap();
        for e in objs.iter().filter(|e| !e.is_zero()) {
            let c = to_coext(&setup, e);
            let env = coext_envelope(&setup, &c).unwrap();
            assert!(env.map.is_mono());
            assert!(coext_is_injective(&setup, &env.h).unwrap());
        }
    }

    #[test]
    fn iso_search_distinguishes_structures() {
        let setup = corner_setup();
        let (s1, s2) = corner_simples(&setup);
        let sum = direct_sum(&s1, &s2).module;
        let z_sum = z_obj(&setup, &sum);
        let t2 = t_obj(&setup, &s2);
        // Same underlying module, different structure: not isomorphic.
        assert_eq!(z_sum.dim(), t2.dim());
        assert!(find_ext_iso(&setup, &z_sum, &t2).unwrap().is_none());
        assert!(find_ext_iso(&setup, &t2, &t2).unwrap().is_some());
    }

    #[test]
    fn resolutions_are_complexes_and_cache() {
        let setup = corner_setup();
        let (_, s2) = corner_simples(&setup);
        let z2 = z_obj(&setup, &s2);
        let res = ext_resolution(&setup, &z2, 6);
        // Covers are built from free base modules, which over this base are
        // larger than minimal projective covers, so the syzygies oscillate
        // instead of vanishing — the resolution runs to the requested length.
        // Every term is still projective, so Ext computed from it is exact.
        assert_eq!(res.len(), 6);
        let again = ext_resolution(&setup, &z2, 3);
        assert!(Arc::ptr_eq(&res, &again), "cache hit returns the same data");
        // Differentials compose to zero on underlying matrices, and each
        // augmented stage is exact (image = kernel).
        for j in 1..res.len() {
            let prod = res.d[j - 1].mul(&res.d[j]).unwrap();
            assert!(prod.is_zero());
            let ker_dim = res.d[j - 1].cols() - res.d[j - 1].rank();
            assert_eq!(res.d[j].rank(), ker_dim, "exact at stage {j}");
        }
        // Degree-zero transported Ext agrees with hom for a sample pair.
        let t2 = t_obj(&setup, &s2);
        assert_eq!(
            ext_dim_ext(&setup, 0, &z2, &t2),
            ext_hom_dim(&setup, &z2, &t2)
        );
        let _ = hom_dim(&s2, &s2);
    }
}
