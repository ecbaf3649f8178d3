//! A small abelian-category interface shared by the module category and the
//! extension category, plus generic constructions written once against it.
//!
//! Both concrete categories represent morphisms by plain matrices over `F_p`
//! between finite-dimensional objects, so the interface exposes the
//! underlying matrix of every morphism and a checked way back from a matrix
//! to a morphism. That is enough to implement, generically:
//!
//! * lifting through epimorphisms (a linear solve over a hom basis) and
//!   factoring through monomorphisms (a direct matrix solve, which is
//!   automatically a morphism by uniqueness),
//! * pushouts and pullbacks with their induced maps,
//! * the gluing of special left approximations along a short exact sequence
//!   ([`glue_left_approximations`]): given approximation sequences for the
//!   two outer terms, a projective-presentation computation produces one for
//!   the middle term, with the single genuine obstruction surfaced as a
//!   diagnostic error when it does not vanish.

use crate::error::EngineError;
use crate::extcat::{
    ext_cokernel, ext_cover, ext_dim_ext, ext_hom_basis, ext_is_injective, ext_is_projective,
    ext_kernel, find_ext_iso, ExtMap, ExtObject, Setup,
};
use crate::linalg::Matrix;
use crate::module::{
    cokernel, direct_sum, ext_dim, find_module_iso, generator_cover, hom_basis, is_injective,
    is_projective, kernel, ModCtx, Module, ModuleMap,
};
use crate::Result;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// The interface
// ---------------------------------------------------------------------------

/// A biproduct diagram in a category.
pub struct SumDiagram<C: Category + ?Sized> {
    pub object: C::Obj,
    pub i1: C::Mor,
    pub i2: C::Mor,
    pub p1: C::Mor,
    pub p2: C::Mor,
}

/// The slice of abelian-category structure the generic constructions need.
///
/// Objects are finite-dimensional over `F_p` and morphisms carry an
/// underlying matrix; monomorphisms and epimorphisms are therefore rank
/// conditions and come for free.
pub trait Category {
    type Obj: Clone + PartialEq + std::fmt::Debug;
    type Mor: Clone + PartialEq + std::fmt::Debug;

    fn p(&self) -> u64;
    fn dim(&self, o: &Self::Obj) -> usize;
    fn zero_obj(&self) -> Self::Obj;
    fn identity(&self, o: &Self::Obj) -> Self::Mor;
    fn zero_mor(&self, src: &Self::Obj, tgt: &Self::Obj) -> Self::Mor;
    fn source(&self, m: &Self::Mor) -> Self::Obj;
    fn target(&self, m: &Self::Mor) -> Self::Obj;
    /// The underlying matrix (target dimension × source dimension).
    fn mat<'m>(&self, m: &'m Self::Mor) -> &'m Matrix;
    /// Rebuilds a morphism from an underlying matrix, validating it.
    ///
    /// # Errors
    ///
    /// Rejects matrices that are not morphisms in this category.
    fn mor_from_mat(&self, src: &Self::Obj, tgt: &Self::Obj, mat: Matrix) -> Result<Self::Mor>;
    /// Composite `f ∘ g` (apply `g` first).
    ///
    /// # Errors
    ///
    /// The middle objects must agree.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// Pointwise sum of parallel morphisms.
    ///
    /// # Errors
    ///
    /// The endpoints must agree.
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// A deterministic basis of the hom space, as underlying matrices.
    fn hom_basis(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Matrix>;
    fn kernel(&self, m: &Self::Mor) -> (Self::Obj, Self::Mor);
    /// Cokernel object, projection, and a linear section of the projection.
    fn cokernel(&self, m: &Self::Mor) -> (Self::Obj, Self::Mor, Matrix);
    fn direct_sum(&self, a: &Self::Obj, b: &Self::Obj) -> SumDiagram<Self>;
    /// An epimorphism onto `o` from a projective object.
    fn proj_cover(&self, o: &Self::Obj) -> (Self::Obj, Self::Mor);
    /// Exact projectivity test.
    ///
    /// # Errors
    ///
    /// Propagates enumeration refusals from the underlying search.
    fn is_projective(&self, o: &Self::Obj) -> Result<bool>;
    /// Exact injectivity test.
    ///
    /// # Errors
    ///
    /// Propagates enumeration refusals from the underlying search.
    fn is_injective(&self, o: &Self::Obj) -> Result<bool>;
    /// `dim Ext^i(a, b)`.
    ///
    /// # Errors
    ///
    /// Propagates resolution failures.
    fn ext_dim(&self, i: usize, a: &Self::Obj, b: &Self::Obj) -> Result<usize>;
    /// Searches for an isomorphism; `None` is a proof of non-isomorphism.
    ///
    /// # Errors
    ///
    /// Refuses when the hom span is too large to sweep.
    fn find_iso(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Option<Self::Mor>>;
    /// A canonical byte key for deduplication and memoization.
    fn key(&self, o: &Self::Obj) -> Vec<u8>;
    /// A projective generator: every projective object is a direct summand
    /// of a finite power of it, so Ext-vanishing against it alone certifies
    /// Ext-vanishing against every projective.
    fn progenerator(&self) -> Self::Obj;

    fn hom_dim(&self, a: &Self::Obj, b: &Self::Obj) -> usize {
        self.hom_basis(a, b).len()
    }

    fn is_mono(&self, m: &Self::Mor) -> bool {
        let mat = self.mat(m);
        mat.rank() == mat.cols()
    }

    fn is_epi(&self, m: &Self::Mor) -> bool {
        let mat = self.mat(m);
        mat.rank() == mat.rows()
    }

    fn is_iso(&self, m: &Self::Mor) -> bool {
        let mat = self.mat(m);
        mat.rows() == mat.cols() && mat.rank() == mat.rows()
    }

    fn is_zero_mor(&self, m: &Self::Mor) -> bool {
        self.mat(m).is_zero()
    }

    fn is_zero_obj(&self, o: &Self::Obj) -> bool {
        self.dim(o) == 0
    }
}

// ---------------------------------------------------------------------------
// The module category
// ---------------------------------------------------------------------------

/// The category of finite-dimensional left modules over a fixed algebra.
pub struct ModCat {
    ctx: ModCtx,
}

impl ModCat {
    pub fn new(algebra: Arc<crate::algebra::Algebra>) -> ModCat {
        ModCat {
            ctx: ModCtx::new(algebra),
        }
    }

    pub fn ctx(&self) -> &ModCtx {
        &self.ctx
    }

    pub fn algebra(&self) -> &Arc<crate::algebra::Algebra> {
        self.ctx.algebra()
    }
}

impl Category for ModCat {
    type Obj = Module;
    type Mor = ModuleMap;

    fn p(&self) -> u64 {
        self.ctx.algebra().p()
    }

    fn dim(&self, o: &Module) -> usize {
        o.dim()
    }

    fn zero_obj(&self) -> Module {
        Module::zero(self.ctx.algebra().clone())
    }

    fn identity(&self, o: &Module) -> ModuleMap {
        ModuleMap::identity(o)
    }

    fn zero_mor(&self, src: &Module, tgt: &Module) -> ModuleMap {
        ModuleMap::zero(src, tgt)
    }

    fn source(&self, m: &ModuleMap) -> Module {
        m.source.clone()
    }

    fn target(&self, m: &ModuleMap) -> Module {
        m.target.clone()
    }

    fn mat<'m>(&self, m: &'m ModuleMap) -> &'m Matrix {
        &m.mat
    }

    fn mor_from_mat(&self, src: &Module, tgt: &Module, mat: Matrix) -> Result<ModuleMap> {
        ModuleMap::new(src.clone(), tgt.clone(), mat)
    }

    fn compose(&self, f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
        f.compose(g)
    }

    fn add(&self, f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
        f.add(g)
    }

    fn hom_basis(&self, a: &Module, b: &Module) -> Vec<Matrix> {
        hom_basis(a, b)
    }

    fn kernel(&self, m: &ModuleMap) -> (Module, ModuleMap) {
        kernel(m)
    }

    fn cokernel(&self, m: &ModuleMap) -> (Module, ModuleMap, Matrix) {
        let parts = cokernel(m);
        (parts.module.clone(), parts.proj, parts.sect)
    }

    fn direct_sum(&self, a: &Module, b: &Module) -> SumDiagram<Self> {
        let parts = direct_sum(a, b);
        SumDiagram {
            object: parts.module,
            i1: parts.i1,
            i2: parts.i2,
            p1: parts.p1,
            p2: parts.p2,
        }
    }

    fn proj_cover(&self, o: &Module) -> (Module, ModuleMap) {
        let cover = generator_cover(o, None);
        (cover.free.module.clone(), cover.map)
    }

    fn is_projective(&self, o: &Module) -> Result<bool> {
        is_projective(o)
    }

    fn is_injective(&self, o: &Module) -> Result<bool> {
        is_injective(o)
    }

    fn ext_dim(&self, i: usize, a: &Module, b: &Module) -> Result<usize> {
        Ok(ext_dim(&self.ctx, i, a, b))
    }

    fn find_iso(&self, a: &Module, b: &Module) -> Result<Option<ModuleMap>> {
        match find_module_iso(a, b)? {
            None => Ok(None),
            Some(mat) => Ok(Some(ModuleMap::new(a.clone(), b.clone(), mat)?)),
        }
    }

    fn key(&self, o: &Module) -> Vec<u8> {
        o.content_key()
    }

    fn progenerator(&self) -> Module {
        crate::module::free_module(self.ctx.algebra(), 1).module
    }
}

// ---------------------------------------------------------------------------
// The extension category
// ---------------------------------------------------------------------------

/// The extension category of a [`Setup`], as a [`Category`].
pub struct ExtCat {
    setup: Arc<Setup>,
}

impl ExtCat {
    pub fn new(setup: Arc<Setup>) -> ExtCat {
        ExtCat { setup }
    }

    pub fn setup(&self) -> &Arc<Setup> {
        &self.setup
    }
}

impl Category for ExtCat {
    type Obj = ExtObject;
    type Mor = ExtMap;

    fn p(&self) -> u64 {
        self.setup.p()
    }

    fn dim(&self, o: &ExtObject) -> usize {
        o.dim()
    }

    fn zero_obj(&self) -> ExtObject {
        ExtObject::zero(&self.setup)
    }

    fn identity(&self, o: &ExtObject) -> ExtMap {
        ExtMap::identity(o)
    }

    fn zero_mor(&self, src: &ExtObject, tgt: &ExtObject) -> ExtMap {
        ExtMap::zero(src, tgt)
    }

    fn source(&self, m: &ExtMap) -> ExtObject {
        m.source.clone()
    }

    fn target(&self, m: &ExtMap) -> ExtObject {
        m.target.clone()
    }

    fn mat<'m>(&self, m: &'m ExtMap) -> &'m Matrix {
        &m.map.mat
    }

    fn mor_from_mat(&self, src: &ExtObject, tgt: &ExtObject, mat: Matrix) -> Result<ExtMap> {
        ExtMap::new(&self.setup, src.clone(), tgt.clone(), mat)
    }

    fn compose(&self, f: &ExtMap, g: &ExtMap) -> Result<ExtMap> {
        f.compose(g)
    }

    fn add(&self, f: &ExtMap, g: &ExtMap) -> Result<ExtMap> {
        f.add(g)
    }

    fn hom_basis(&self, a: &ExtObject, b: &ExtObject) -> Vec<Matrix> {
        ext_hom_basis(&self.setup, a, b)
    }

    fn kernel(&self, m: &ExtMap) -> (ExtObject, ExtMap) {
        ext_kernel(&self.setup, m)
    }

    fn cokernel(&self, m: &ExtMap) -> (ExtObject, ExtMap, Matrix) {
        let parts = ext_cokernel(&self.setup, m);
        (parts.object, parts.proj, parts.sect)
    }

    fn direct_sum(&self, a: &ExtObject, b: &ExtObject) -> SumDiagram<Self> {
        let parts = crate::extcat::ext_direct_sum(&self.setup, a, b);
        SumDiagram {
            object: parts.object,
            i1: parts.i1,
            i2: parts.i2,
            p1: parts.p1,
            p2: parts.p2,
        }
    }

    fn proj_cover(&self, o: &ExtObject) -> (ExtObject, ExtMap) {
        let cover = ext_cover(&self.setup, o);
        (cover.t, cover.map)
    }

    fn is_projective(&self, o: &ExtObject) -> Result<bool> {
        Ok(ext_is_projective(&self.setup, o))
    }

    fn is_injective(&self, o: &ExtObject) -> Result<bool> {
        ext_is_injective(&self.setup, o)
    }

    fn ext_dim(&self, i: usize, a: &ExtObject, b: &ExtObject) -> Result<usize> {
        Ok(ext_dim_ext(&self.setup, i, a, b))
    }

    fn find_iso(&self, a: &ExtObject, b: &ExtObject) -> Result<Option<ExtMap>> {
        match find_ext_iso(&self.setup, a, b)? {
            None => Ok(None),
            Some(mat) => Ok(Some(ExtMap::new(&self.setup, a.clone(), b.clone(), mat)?)),
        }
    }

    fn key(&self, o: &ExtObject) -> Vec<u8> {
        o.content_key()
    }

    fn progenerator(&self) -> ExtObject {
        let free = crate::module::free_module(self.setup.algebra(), 1);
        crate::extcat::t_obj(&self.setup, &free.module)
    }
}

// ---------------------------------------------------------------------------
// Generic linear-solving helpers
// ---------------------------------------------------------------------------

fn vec_of(m: &Matrix) -> Matrix {
    let mut v = Matrix::zero(m.p(), m.rows() * m.cols(), 1);
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            v.set(j * m.rows() + i, 0, m.get(i, j));
        }
    }
    v
}

fn stack_columns(p: u64, rows: usize, cols: impl Iterator<Item = Matrix>) -> Matrix {
    let cols: Vec<Matrix> = cols.collect();
    let mut out = Matrix::zero(p, rows, cols.len());
    for (t, c) in cols.iter().enumerate() {
        for i in 0..rows {
            out.set(i, t, c.get(i, 0));
        }
    }
    out
}

fn combine(p: u64, basis: &[Matrix], coeffs: &Matrix, col: usize, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zero(p, rows, cols);
    for (t, b) in basis.iter().enumerate() {
        let c = coeffs.get(t, col);
        if c != 0 {
            m = m.add(&b.scale(c)).expect("same shape");
        }
    }
    m
}

/// Finds `g` with `e ∘ g = f` for an epimorphism `e`, by solving over the
/// hom basis of candidate lifts. `None` means no lift exists in the
/// category (even though one always exists linearly).
///
/// # Errors
///
/// The targets of `e` and `f` must agree.
pub fn lift_through_epi<C: Category>(cat: &C, e: &C::Mor, f: &C::Mor) -> Result<Option<C::Mor>> {
    let src_f = cat.source(f);
    let src_e = cat.source(e);
    if cat.target(e) != cat.target(f) {
        return Err(crate::error::StructureError::IncompatibleAlgebras {
            op: "lift through epimorphism",
        }
        .into());
    }
    let basis = cat.hom_basis(&src_f, &src_e);
    let p = cat.p();
    let e_mat = cat.mat(e);
    let f_mat = cat.mat(f);
    let rows = f_mat.rows() * f_mat.cols();
    let system = stack_columns(
        p,
        rows,
        basis.iter().map(|b| vec_of(&e_mat.mul(b).expect("shape"))),
    );
    let rhs = vec_of(f_mat);
    match system.solve(&rhs)? {
        None => Ok(None),
        Some(coeffs) => {
            let mat = combine(p, &basis, &coeffs, 0, cat.dim(&src_e), cat.dim(&src_f));
            Ok(Some(cat.mor_from_mat(&src_f, &src_e, mat)?))
        }
    }
}

/// Finds the unique `g` with `m ∘ g = f` for a monomorphism `m`, provided
/// the image of `f` lands in the image of `m`; the linear solution is
/// automatically a morphism. `None` means the image condition fails.
///
/// # Errors
///
/// The targets of `m` and `f` must agree.
pub fn factor_through_mono<C: Category>(cat: &C, m: &C::Mor, f: &C::Mor) -> Result<Option<C::Mor>> {
    if cat.target(m) != cat.target(f) {
        return Err(crate::error::StructureError::IncompatibleAlgebras {
            op: "factor through monomorphism",
        }
        .into());
    }
    match cat.mat(m).solve(cat.mat(f))? {
        None => Ok(None),
        Some(g) => Ok(Some(cat.mor_from_mat(
            &cat.source(f),
            &cat.source(m),
            g,
        )?)),
    }
}

// ---------------------------------------------------------------------------
// Pushouts and pullbacks
// ---------------------------------------------------------------------------

/// A pushout square for `f: A → B`, `g: A → C`.
pub struct Pushout<C: Category + ?Sized> {
    pub object: C::Obj,
    /// `B → P`.
    pub from_b: C::Mor,
    /// `C → P`.
    pub from_c: C::Mor,
    sum_b_dim: usize,
    sect: Matrix,
}

/// The pushout of `f: A → B` and `g: A → C`: the cokernel of
/// `(f, -g): A → B ⊕ C`.
///
/// # Errors
///
/// The sources of `f` and `g` must agree.
pub fn pushout<C: Category>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<Pushout<C>> {
    if cat.source(f) != cat.source(g) {
        return Err(crate::error::StructureError::IncompatibleAlgebras { op: "pushout" }.into());
    }
    let b = cat.target(f);
    let c = cat.target(g);
    let sum = cat.direct_sum(&b, &c);
    let up = cat.compose(&sum.i1, f)?;
    let down = cat.compose(&sum.i2, g)?;
    let neg_down_mat = cat.mat(&down).neg();
    let combined_mat = cat.mat(&up).add(&neg_down_mat)?;
    let combined = cat.mor_from_mat(&cat.source(f), &sum.object, combined_mat)?;
    let (object, proj, sect) = cat.cokernel(&combined);
    let from_b = cat.compose(&proj, &sum.i1)?;
    let from_c = cat.compose(&proj, &sum.i2)?;
    Ok(Pushout {
        object,
        from_b,
        from_c,
        sum_b_dim: cat.dim(&b),
        sect,
    })
}

/// The induced map out of a pushout: given `u: B → X` and `v: C → X` with
/// `u ∘ f = v ∘ g`, the unique `w: P → X` with `w ∘ from_b = u` and
/// `w ∘ from_c = v`.
///
/// # Errors
///
/// The targets of `u` and `v` must agree, and the compatibility
/// `u ∘ f = v ∘ g` must hold (checked indirectly: the result is validated
/// as a morphism and against both triangle identities).
pub fn pushout_induced<C: Category>(
    cat: &C,
    po: &Pushout<C>,
    u: &C::Mor,
    v: &C::Mor,
) -> Result<C::Mor> {
    let x = cat.target(u);
    if x != cat.target(v) {
        return Err(crate::error::StructureError::IncompatibleAlgebras {
            op: "pushout induced map",
        }
        .into());
    }
    let w_on_sum = cat.mat(u).hstack(cat.mat(v))?;
    let mat = w_on_sum.mul(&po.sect)?;
    let w = cat.mor_from_mat(&po.object, &x, mat)?;
    let back_u = cat.compose(&w, &po.from_b)?;
    let back_v = cat.compose(&w, &po.from_c)?;
    if cat.mat(&back_u) != cat.mat(u) || cat.mat(&back_v) != cat.mat(v) {
        return Err(EngineError::ConstructionFailed {
            what: "pushout induced map",
            reason: "the given cocone does not commute with the span".into(),
        }
        .into());
    }
    let _ = po.sum_b_dim;
    Ok(w)
}

/// A pullback square for `f: B → A`, `g: C → A`.
pub struct Pullback<C: Category + ?Sized> {
    pub object: C::Obj,
    /// `P → B`.
    pub to_b: C::Mor,
    /// `P → C`.
    pub to_c: C::Mor,
}

/// The pullback of `f: B → A` and `g: C → A`: the kernel of
/// `(f, -g): B ⊕ C → A`.
///
/// # Errors
///
/// The targets of `f` and `g` must agree.
pub fn pullback<C: Category>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<Pullback<C>> {
    if cat.target(f) != cat.target(g) {
        return Err(crate::error::StructureError::IncompatibleAlgebras { op: "pullback" }.into());
    }
    let b = cat.source(f);
    let c = cat.source(g);
    let sum = cat.direct_sum(&b, &c);
    let left = cat.compose(f, &sum.p1)?;
    let right = cat.compose(g, &sum.p2)?;
    let mat = cat.mat(&left).add(&cat.mat(&right).neg())?;
    let combined = cat.mor_from_mat(&sum.object, &cat.target(f), mat)?;
    let (object, incl) = cat.kernel(&combined);
    let to_b = cat.compose(&sum.p1, &incl)?;
    let to_c = cat.compose(&sum.p2, &incl)?;
    Ok(Pullback { object, to_b, to_c })
}

// ---------------------------------------------------------------------------
// Approximation sequences and gluing
// ---------------------------------------------------------------------------

/// A left approximation presented as a short exact sequence
/// `0 → A → Y → X → 0`: the unit `A → Y` is a monomorphism whose cokernel
/// `X` lies in the approximating class (the class membership is the
/// caller's contract, not stored here).
pub struct ApproxSeq<C: Category + ?Sized> {
    /// `A → Y`, mono.
    pub unit: C::Mor,
    /// `Y → X`, epi, a cokernel of the unit.
    pub quot: C::Mor,
}

impl<C: Category> ApproxSeq<C> {
    /// Checks the shape: unit mono, quot epi, composite zero, dimensions
    /// additive.
    pub fn is_exact(&self, cat: &C) -> bool {
        let composite_zero = cat
            .compose(&self.quot, &self.unit)
            .map(|z| cat.is_zero_mor(&z))
            .unwrap_or(false);
        composite_zero
            && cat.is_mono(&self.unit)
            && cat.is_epi(&self.quot)
            && cat.dim(&cat.target(&self.unit))
                == cat.dim(&cat.source(&self.unit)) + cat.dim(&cat.target(&self.quot))
    }

    /// The approximated object `A`.
    pub fn base(&self, cat: &C) -> C::Obj {
        cat.source(&self.unit)
    }

    /// The middle object `Y`.
    pub fn mid(&self, cat: &C) -> C::Obj {
        cat.target(&self.unit)
    }

    /// The quotient object `X` (the class member).
    pub fn quotient(&self, cat: &C) -> C::Obj {
        cat.target(&self.quot)
    }
}

/// Builds the approximation sequence determined by a monomorphic unit: the
/// cokernel supplies the quotient.
///
/// # Errors
///
/// The unit must be a monomorphism.
pub fn approx_from_unit<C: Category>(cat: &C, unit: C::Mor) -> Result<ApproxSeq<C>> {
    if !cat.is_mono(&unit) {
        return Err(EngineError::ConstructionFailed {
            what: "approximation sequence",
            reason: "the unit must be a monomorphism".into(),
        }
        .into());
    }
    let (_, proj, _) = cat.cokernel(&unit);
    Ok(ApproxSeq { unit, quot: proj })
}

/// Glues special left approximations along a short exact sequence.
///
/// Given `0 → A →^{i_a} B →^{p_b} C → 0` and approximation sequences
/// `0 → A → Y_A → X_A → 0`, `0 → C → Y_C → X_C → 0`, produces
/// `0 → B → Y_B → X_B → 0` where `Y_B` is an extension of `Y_C` by `Y_A`
/// and `X_B` an extension of `X_C` by `X_A` — so whenever the approximating
/// class and its partner are closed under extensions, the output is again a
/// special left approximation.
///
/// The construction: push `B` out along the `A`-approximation to get an
/// extension `0 → Y_A → P → C → 0`; present its class by a map
/// `h: K₀ → Y_A` off a projective presentation `0 → K₀ → P₀ → C → 0`;
/// solve for a class `h′` on a presentation of `Y_C` restricting to `h`
/// (the one genuine obstruction — it lives in `Ext²(X_C, Y_A)` and the
/// failure is reported as an error carrying that dimension); push out to
/// get `0 → Y_A → Q → Y_C → 0`; and fill in the comparison map `P → Q`,
/// whose composite with `B → P` is the glued unit.
///
/// # Errors
///
/// * the endpoint objects of the inputs must match up;
/// * the input sequences must be exact;
/// * when the restriction problem has no solution, an error reporting the
///   obstruction group `Ext²(X_C, Y_A)` is returned.
pub fn glue_left_approximations<C: Category>(
    cat: &C,
    i_a: &C::Mor,
    p_b: &C::Mor,
    app_a: &ApproxSeq<C>,
    app_c: &ApproxSeq<C>,
) -> Result<ApproxSeq<C>> {
    let a = cat.source(i_a);
    let b = cat.target(i_a);
    let c = cat.target(p_b);
    let shape_ok = cat.source(p_b) == b
        && cat.is_mono(i_a)
        && cat.is_epi(p_b)
        && cat
            .compose(p_b, i_a)
            .map(|z| cat.is_zero_mor(&z))
            .unwrap_or(false)
        && cat.dim(&b) == cat.dim(&a) + cat.dim(&c)
        && app_a.base(cat) == a
        && app_c.base(cat) == c
        && app_a.is_exact(cat)
        && app_c.is_exact(cat);
    if !shape_ok {
        return Err(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "the inputs do not form matching short exact sequences".into(),
        }
        .into());
    }
    let y_a = app_a.mid(cat);
    let y_c = app_c.mid(cat);
    let p = cat.p();

    // Pushout of B ← A → Y_A: an extension 0 → Y_A → P → C → 0.
    let po = pushout(cat, &app_a.unit, i_a)?;
    let in_ya = &po.from_b;
    let j = &po.from_c;
    let r = pushout_induced(cat, &po, &cat.zero_mor(&y_a, &c), p_b)?;

    // Present the class of P: cover C by a projective, lift through r, and
    // read the kernel restriction off the middle row.
    let (p0, lambda) = cat.proj_cover(&c);
    let lambda_hat = lift_through_epi(cat, &r, &lambda)?.ok_or_else(|| {
        crate::error::Error::from(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "a projective cover failed to lift through an epimorphism".into(),
        })
    })?;
    let (_k0, kappa) = cat.kernel(&lambda);
    let through = cat.compose(&lambda_hat, &kappa)?;
    let h = factor_through_mono(cat, in_ya, &through)?.ok_or_else(|| {
        crate::error::Error::from(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "the kernel restriction missed the first pushout leg".into(),
        })
    })?;

    // Compare with a projective presentation of Y_C.
    let (_p0c, nu) = cat.proj_cover(&y_c);
    let unit_lambda = cat.compose(&app_c.unit, &lambda)?;
    let mu0 = lift_through_epi(cat, &nu, &unit_lambda)?.ok_or_else(|| {
        crate::error::Error::from(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "a projective cover failed to lift through an epimorphism".into(),
        })
    })?;
    let (k_prime, kappa_prime) = cat.kernel(&nu);
    let mu0_kappa = cat.compose(&mu0, &kappa)?;
    let mu1 = factor_through_mono(cat, &kappa_prime, &mu0_kappa)?.ok_or_else(|| {
        crate::error::Error::from(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "the compared kernels do not align".into(),
        })
    })?;

    // Solve h′ ∘ μ₁ - s ∘ κ = h for (h′, s): the restriction problem. Its
    // failure is the Ext²-obstruction.
    let basis_hp = cat.hom_basis(&k_prime, &y_a);
    let basis_s = cat.hom_basis(&p0, &y_a);
    let h_mat = cat.mat(&h);
    let rows = h_mat.rows() * h_mat.cols();
    let mu1_mat = cat.mat(&mu1);
    let kappa_mat = cat.mat(&kappa);
    let cols_hp = basis_hp
        .iter()
        .map(|t| vec_of(&t.mul(mu1_mat).expect("shape")));
    let cols_s = basis_s
        .iter()
        .map(|t| vec_of(&t.mul(kappa_mat).expect("shape").neg()));
    let system = stack_columns(p, rows, cols_hp.chain(cols_s));
    let rhs = vec_of(h_mat);
    let Some(coeffs) = system.solve(&rhs)? else {
        let obstruction = cat.ext_dim(2, &app_c.quotient(cat), &y_a)?;
        return Err(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: format!(
                "the extension class does not extend over the approximation \
                 middle; the obstruction group Ext²(X_C, Y_A) has dimension {obstruction}"
            ),
        }
        .into());
    };
    let hp_coeffs = coeffs.row_band(0, basis_hp.len());
    let hp_mat = combine(
        p,
        &basis_hp,
        &hp_coeffs,
        0,
        cat.dim(&y_a),
        cat.dim(&k_prime),
    );
    let h_prime = cat.mor_from_mat(&k_prime, &y_a, hp_mat)?;

    // Push out the presentation of Y_C along h′: 0 → Y_A → Q → Y_C → 0.
    let po_q = pushout(cat, &h_prime, &kappa_prime)?;
    let q_incl = &po_q.from_b;
    let t = pushout_induced(cat, &po_q, &cat.zero_mor(&y_a, &y_c), &nu)?;

    // Fill in the comparison map φ: P → Q with φ ∘ in_ya = q and
    // t ∘ φ = unit_C ∘ r; it exists exactly because the classes agree.
    let basis_phi = cat.hom_basis(&po.object, &po_q.object);
    let target_sq = cat.compose(&app_c.unit, &r)?;
    let in_ya_mat = cat.mat(in_ya);
    let t_mat = cat.mat(&t);
    let phi_cols = basis_phi.iter().map(|bm| {
        let first = vec_of(&bm.mul(in_ya_mat).expect("shape"));
        let second = vec_of(&t_mat.mul(bm).expect("shape"));
        first.vstack(&second).expect("same cols")
    });
    let rows_phi = cat.dim(&po_q.object) * cat.dim(&y_a) + cat.dim(&y_c) * cat.dim(&po.object);
    let system_phi = stack_columns(p, rows_phi, phi_cols);
    let rhs_phi = vec_of(cat.mat(q_incl))
        .vstack(&vec_of(cat.mat(&target_sq)))
        .expect("same cols");
    let Some(phi_coeffs) = system_phi.solve(&rhs_phi)? else {
        return Err(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "no comparison map between the glued extensions exists".into(),
        }
        .into());
    };
    let phi_mat = combine(
        p,
        &basis_phi,
        &phi_coeffs,
        0,
        cat.dim(&po_q.object),
        cat.dim(&po.object),
    );
    let phi = cat.mor_from_mat(&po.object, &po_q.object, phi_mat)?;

    // The glued unit B → Q and its cokernel.
    let m = cat.compose(&phi, j)?;
    if !cat.is_mono(&m) {
        return Err(EngineError::ConstructionFailed {
            what: "approximation gluing",
            reason: "the comparison map failed to restrict to a monomorphism".into(),
        }
        .into());
    }
    approx_from_unit(cat, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::functor::Bimodule;
    use crate::module::free_module;

    fn field(p: u64) -> Arc<Algebra> {
        Algebra::new(p, vec![vec![vec![1]]], vec![1], vec!["1".into()]).unwrap()
    }

    /// The path algebra of the two-vertex quiver with one arrow.
    fn a2() -> Arc<Algebra> {
        let q = crate::algebra::QuiverPresentation {
            vertices: 2,
            arrows: vec![crate::algebra::Arrow {
                label: "a".into(),
                from: 1,
                to: 2,
            }],
            relations: vec![],
            max_path_length: 4,
        };
        crate::algebra::from_quiver_over(&q, 2).unwrap()
    }

    fn a2_simples(cat: &ModCat) -> (Module, Module) {
        let all = crate::module::enumerate_modules(cat.algebra(), 1, 1 << 20).unwrap();
        let ones: Vec<&Module> = all.iter().filter(|m| m.dim() == 1).collect();
        assert_eq!(ones.len(), 2);
        // The simple at the source vertex has e₁ acting as the identity.
        let (a, b) = (ones[0], ones[1]);
        if a.act(0).is_identity() {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }

    fn corner_setup() -> Arc<Setup> {
        let f2 = field(2);
        let (prod, _) = crate::algebra::direct_product(&f2, &f2).unwrap();
        let m = Bimodule::new(
            prod.clone(),
            prod.clone(),
            vec![Matrix::identity(2, 1), Matrix::zero(2, 1, 1)],
            vec![Matrix::zero(2, 1, 1), Matrix::identity(2, 1)],
        )
        .unwrap();
        Setup::new(prod, m, None).unwrap()
    }

    #[test]
    fn pushout_of_a_mono_is_a_mono_with_exact_row() {
        let cat = ModCat::new(a2());
        let (s1, _s2) = a2_simples(&cat);
        // 0 → S₂' → P → S₁ → 0 with P the projective cover of S₁: push the
        // inclusion out along itself.
        let cover = generator_cover(&s1, None);
        let proj_mod = cover.free.module.clone();
        let (rad, incl) = {
            let (k, k_incl) = cat.kernel(&cover.map);
            (k, k_incl)
        };
        let po = pushout(&cat, &incl, &incl).unwrap();
        assert!(cat.is_mono(&po.from_b));
        assert!(cat.is_mono(&po.from_c));
        assert_eq!(
            cat.dim(&po.object),
            2 * cat.dim(&proj_mod) - cat.dim(&rad)
        );
        // The induced map back to P (cocone (id, id)) is epi.
        let id = cat.identity(&proj_mod);
        let back = pushout_induced(&cat, &po, &id, &id).unwrap();
        assert!(cat.is_epi(&back));
        // Incompatible cocones are rejected.
        let zero = cat.zero_mor(&proj_mod, &proj_mod);
        assert!(pushout_induced(&cat, &po, &id, &zero).is_err());
    }

    #[test]
    fn pullback_projects_correctly() {
        let cat = ModCat::new(a2());
        let (s1, _) = a2_simples(&cat);
        let cover = generator_cover(&s1, None);
        // Pullback of the cover against itself: pairs agreeing in S₁.
        let pb = pullback(&cat, &cover.map, &cover.map).unwrap();
        assert_eq!(
            cat.dim(&pb.object),
            2 * cat.dim(&cover.free.module) - cat.dim(&s1)
        );
        let left = cat.compose(&cover.map, &pb.to_b).unwrap();
        let right = cat.compose(&cover.map, &pb.to_c).unwrap();
        assert_eq!(cat.mat(&left), cat.mat(&right));
    }

    #[test]
    fn lifting_and_factoring() {
        let cat = ModCat::new(a2());
        let (s1, _) = a2_simples(&cat);
        let cover = generator_cover(&s1, None);
        // The identity of S₁ lifts through the cover... to a morphism from
        // S₁ into P only if S₁ is a summand, which it is not: expect None.
        let id = cat.identity(&s1);
        let lifted = lift_through_epi(&cat, &cover.map, &id).unwrap();
        assert!(lifted.is_none(), "the cover of S₁ does not split");
        // The cover lifts through itself.
        let self_lift = lift_through_epi(&cat, &cover.map, &cover.map).unwrap();
        assert!(self_lift.is_some());
        // Factoring the kernel inclusion through itself gives the identity.
        let (_, incl) = cat.kernel(&cover.map);
        let g = factor_through_mono(&cat, &incl, &incl).unwrap().unwrap();
        assert!(cat.mat(&g).is_identity());
    }

    #[test]
    fn gluing_approximations_in_the_module_category() {
        // Over the two-vertex path algebra, approximate by injectives: the
        // class pair (everything, injectives) gives every module a special
        // left approximation 0 → X → I → C → 0. Glue along
        // 0 → S₂ → E → S₁ → 0 with E the indecomposable of dimension 2
        // (projective and injective).
        let cat = ModCat::new(a2());
        let (s1, s2) = a2_simples(&cat);
        let universe = crate::module::enumerate_modules(cat.algebra(), 2, 1 << 20).unwrap();
        let e = universe
            .iter()
            .find(|m| m.dim() == 2 && !m.act(2).is_zero())
            .expect("the arrow acts nontrivially on the length-two module")
            .clone();
        assert!(cat.is_injective(&e).unwrap());
        let incl = {
            let basis = cat.hom_basis(&s2, &e);
            assert_eq!(basis.len(), 1);
            cat.mor_from_mat(&s2, &e, basis[0].clone()).unwrap()
        };
        assert!(cat.is_mono(&incl));
        let (_, proj, _) = cat.cokernel(&incl);
        // The quotient is S₁ on the nose? It is 1-dimensional with e₁
        // acting as the identity, so isomorphic; realign the epi onto S₁.
        let proj = {
            let quot = cat.target(&proj);
            let iso = cat.find_iso(&quot, &s1).unwrap().expect("quotient is S₁");
            cat.compose(&iso, &proj).unwrap()
        };
        // Injective approximations: S₂ ↪ E (quotient S₁) and S₁ = I(S₁).
        let app_a = approx_from_unit(&cat, incl.clone()).unwrap();
        let app_c = approx_from_unit(&cat, cat.identity(&s1)).unwrap();
        let glued = glue_left_approximations(&cat, &incl, &proj, &app_a, &app_c).unwrap();
        assert!(glued.is_exact(&cat));
        assert_eq!(cat.dim(&glued.base(&cat)), 2);
        // Y_B is an extension of Y_C = S₁ by Y_A = E: dimension 3.
        assert_eq!(cat.dim(&glued.mid(&cat)), 3);
        assert_eq!(cat.dim(&glued.quotient(&cat)), 1);
        // The glued middle is an extension of injectives over a hereditary
        // algebra, hence injective; the quotient is the glued X_B.
        assert!(cat.is_injective(&glued.mid(&cat)).unwrap());
        assert!(cat.find_iso(&glued.quotient(&cat), &s1).unwrap().is_some());
    }

    #[test]
    fn gluing_in_the_extension_category() {
        // The canonical sequence of T(S₂) in the corner setup:
        // 0 → Z(S₁) → T(S₂) → Z(S₂) → 0, approximating by injectives
        // (the trivial approximations: Z(S₁) ↪ its envelope; Z(S₂) is
        // injective).
        let setup = corner_setup();
        let cat = ExtCat::new(setup.clone());
        let universe = crate::module::enumerate_modules(setup.algebra(), 2, 1 << 20).unwrap();
        let ones: Vec<&Module> = universe.iter().filter(|m| m.dim() == 1).collect();
        let (s1, s2) = if ones[0].act(0).is_identity() {
            (ones[0].clone(), ones[1].clone())
        } else {
            (ones[1].clone(), ones[0].clone())
        };
        let t2 = crate::extcat::t_obj(&setup, &s2);
        let seq = crate::extcat::canonical_sequence(&setup, &t2).unwrap();
        // Z(S₁) embeds in the injective T(S₂) with quotient Z(S₂).
        let z1 = crate::extcat::z_obj(&setup, &s1);
        let emb = {
            let basis = ext_hom_basis(&setup, &z1, &t2);
            assert_eq!(basis.len(), 1);
            ExtMap::new(&setup, z1.clone(), t2.clone(), basis[0].clone()).unwrap()
        };
        assert!(emb.is_mono());
        let app_a = approx_from_unit(&cat, emb).unwrap();
        let app_c = approx_from_unit(&cat, cat.identity(&seq.quot)).unwrap();
        let glued =
            glue_left_approximations(&cat, &seq.incl, &seq.proj, &app_a, &app_c).unwrap();
        assert!(glued.is_exact(&cat));
        assert_eq!(cat.dim(&glued.base(&cat)), 2);
        assert_eq!(cat.dim(&glued.mid(&cat)), 3);
        // The glued middle is an extension of injectives; over this
        // hereditary setup it is again injective.
        assert!(cat.is_injective(&glued.mid(&cat)).unwrap());
    }

    #[test]
    fn gluing_detects_the_obstruction_shape() {
        // Gluing with mismatched inputs fails loudly.
        let cat = ModCat::new(a2());
        let (s1, s2) = a2_simples(&cat);
        let cover = generator_cover(&s1, None);
        let (_, incl) = cat.kernel(&cover.map);
        let bad_app = approx_from_unit(&cat, cat.identity(&s2)).unwrap();
        let app_c = approx_from_unit(&cat, cat.identity(&s1)).unwrap();
        // app_a is based at S₂ but the sequence needs base rad ≅ S₂ — the
        // object is equal as a module here, so instead break the C side.
        let bad_c = approx_from_unit(&cat, cat.identity(&s2)).unwrap();
        let err = glue_left_approximations(&cat, &incl, &cover.map, &bad_app, &bad_c);
        assert!(err.is_err());
        let _ = app_c;
    }

    #[test]
    fn categories_agree_with_their_native_operations() {
        let cat = ModCat::new(a2());
        let (s1, s2) = a2_simples(&cat);
        assert_eq!(cat.ext_dim(1, &s1, &s2).unwrap(), 1);
        assert_eq!(cat.ext_dim(1, &s2, &s1).unwrap(), 0);
        assert!(cat.is_projective(&s2).unwrap());
        assert!(!cat.is_projective(&s1).unwrap());
        let (p, c) = cat.proj_cover(&s1);
        assert!(cat.is_epi(&c));
        assert!(cat.is_projective(&p).unwrap());
        let sum = cat.direct_sum(&s1, &s2);
        assert_eq!(cat.dim(&sum.object), 2);
        assert!(cat.find_iso(&s1, &s2).unwrap().is_none());
        assert!(cat.find_iso(&s1, &s1).unwrap().is_some());
        let free = free_module(cat.algebra(), 1).module;
        assert!(cat.is_projective(&free).unwrap());
        let z = cat.zero_obj();
        assert!(cat.is_zero_obj(&z));
    }
}
