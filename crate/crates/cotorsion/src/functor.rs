//! Bimodules and the tensor / hom endofunctor pair they induce.
//!
//! A bimodule `M` over algebras `(A, B)` induces the adjoint pair
//!
//! * `F = M ⊗_B -` from `B`-modules to `A`-modules (right exact), and
//! * `G = Hom_A(M, -)` from `A`-modules to `B`-modules (left exact),
//!
//! with the adjunction `Hom_A(F X, Y) ≅ Hom_B(X, G Y)` realized by explicit
//! matrices ([`adjunction_phi`] / [`adjunction_psi`]). Tensor spaces are
//! concrete quotients of `k^(dim M · dim X)` by the balancing relations, and
//! hom modules carry their defining basis of matrices, so both directions of
//! the adjunction are plain coordinate solves.
//!
//! A multiplication `μ: M ⊗ M → M` ([`BimoduleMul`]) induces the natural
//! transformation `η_X: F²X → FX` ([`eta_for`]) and, by taking adjoint
//! mates twice, its counterpart `ζ_X: G X → G²X` ([`zeta_for`]). With no
//! multiplication both are zero — `ζ` is still produced by the mate formula
//! rather than by fiat, so the degenerate case exercises the same code path.
//!
//! Functor applications are memoized per underlying module, since extension
//! categories evaluate `F` and `G` on the same handful of objects constantly.

use crate::algebra::Algebra;
use crate::error::StructureError;
use crate::linalg::{quotient_by_columns, Matrix};
use crate::module::{action_is_valid, hom_basis, Module, ModuleMap};
use crate::Result;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// An `(A, B)`-bimodule: a space with a left `A`-action and a right
/// `B`-action that commute.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule {
    left_alg: Arc<Algebra>,
    right_alg: Arc<Algebra>,
    dim: usize,
    /// `left[i]`: action of the `i`-th basis element of `A` from the left.
    left: Vec<Matrix>,
    /// `right[j]`: action of the `j`-th basis element of `B` from the right.
    right: Vec<Matrix>,
}

impl std::fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Bimodule(dim {} over {:?} / {:?})",
            self.dim, self.left_alg, self.right_alg
        )
    }
}

impl Bimodule {
    /// Builds a bimodule, checking both module structures and that the two
    /// actions commute.
    ///
    /// # Errors
    ///
    /// Rejects invalid left or right actions and non-commuting action pairs.
    pub fn new(
        left_alg: Arc<Algebra>,
        right_alg: Arc<Algebra>,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Arc<Bimodule>> {
        if !action_is_valid(&left_alg, &left) {
            return Err(StructureError::InvalidData {
                what: "bimodule left action",
                reason: "matrices do not form a left module".into(),
            }
            .into());
        }
        if !action_is_valid(&right_alg.opposite(), &right) {
            return Err(StructureError::InvalidData {
                what: "bimodule right action",
                reason: "matrices do not form a right module".into(),
            }
            .into());
        }
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                if l.mul(r)? != r.mul(l)? {
                    return Err(StructureError::InvalidData {
                        what: "bimodule actions",
                        reason: format!(
                            "left action of basis {i} does not commute with right action of basis {j}"
                        ),
                    }
                    .into());
                }
            }
        }
        let dim = left.first().map_or(0, Matrix::rows);
        Ok(Arc::new(Bimodule {
            left_alg,
            right_alg,
            dim,
            left,
            right,
        }))
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Arc<Bimodule> {
        let d = algebra.dim();
        let left = (0..d).map(|i| algebra.left_mul(i).clone()).collect();
        let right = (0..d).map(|j| algebra.right_mul(j).clone()).collect();
        Bimodule::new(algebra.clone(), algebra.clone(), left, right)
            .expect("the regular bimodule always satisfies the axioms")
    }

    pub fn left_alg(&self) -> &Arc<Algebra> {
        &self.left_alg
    }

    pub fn right_alg(&self) -> &Arc<Algebra> {
        &self.right_alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u64 {
        self.left_alg.p()
    }

    pub fn left_act(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_act(&self, j: usize) -> &Matrix {
        &self.right[j]
    }

    /// The underlying left `A`-module.
    pub fn as_left_module(&self) -> Module {
        Module::new_unchecked(self.left_alg.clone(), self.left.clone())
    }

    /// The underlying right `B`-module, as a left module over the opposite
    /// algebra.
    pub fn as_right_module(&self) -> Module {
        Module::new_unchecked(self.right_alg.opposite(), self.right.clone())
    }

    pub fn content_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        key.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for m in self.left.iter().chain(&self.right) {
            key.extend_from_slice(&m.content_key());
        }
        key
    }
}

// ---------------------------------------------------------------------------
// Tensor functor
// ---------------------------------------------------------------------------

/// The tensor space `M ⊗_B X` with its presentation: `proj` and `sect`
/// relate the quotient coordinates to the ambient `k^(dim M · dim X)`
/// (pure-tensor index `(i, l) = i * dim X + l`).
#[derive(Clone, Debug)]
pub struct TensorData {
    pub module: Module,
    pub proj: Matrix,
    pub sect: Matrix,
}

/// `M ⊗_B -` as a memoized functor from `B`-modules to `A`-modules.
pub struct TensorFunctor {
    m: Arc<Bimodule>,
    cache: Mutex<HashMap<Vec<u8>, Arc<TensorData>>>,
}

impl TensorFunctor {
    pub fn new(m: Arc<Bimodule>) -> TensorFunctor {
        TensorFunctor {
            m,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.m
    }

    /// Applies the functor to a module over `B`.
    pub fn apply(&self, x: &Module) -> Arc<TensorData> {
        let key = x.content_key();
        if let Some(data) = self.cache.lock().expect("tensor cache poisoned").get(&key) {
            return data.clone();
        }
        let data = Arc::new(self.compute(x));
        self.cache
            .lock()
            .expect("tensor cache poisoned")
            .insert(key, data.clone());
        data
    }

    fn compute(&self, x: &Module) -> TensorData {
        let p = self.m.p();
        let nm = self.m.dim();
        let nx = x.dim();
        let total = nm * nx;
        // Balancing relations (v·b) ⊗ w - v ⊗ (b·w), one block per basis
        // element of B.
        let mut rel: Option<Matrix> = None;
        for b in 0..self.m.right_alg.dim() {
            let block = self
                .m
                .right_act(b)
                .kron(&Matrix::identity(p, nx))
                .expect("same p")
                .sub(&Matrix::identity(p, nm).kron(x.act(b)).expect("same p"))
                .expect("same shape");
            rel = Some(match rel {
                None => block,
                Some(r) => r.hstack(&block).expect("same rows"),
            });
        }
        let rel = rel.unwrap_or_else(|| Matrix::zero(p, total, 0));
        let q = quotient_by_columns(total, &rel).expect("shape agrees");
        let action = (0..self.m.left_alg.dim())
            .map(|a| {
                q.proj
                    .mul(
                        &self
                            .m
                            .left_act(a)
                            .kron(&Matrix::identity(p, nx))
                            .expect("same p"),
                    )
                    .expect("shape")
                    .mul(&q.sect)
                    .expect("shape")
            })
            .collect();
        TensorData {
            module: Module::new_unchecked(self.m.left_alg.clone(), action),
            proj: q.proj,
            sect: q.sect,
        }
    }

    /// Applies the functor to a map: `M ⊗ f`.
    pub fn on_map(&self, f: &ModuleMap) -> ModuleMap {
        let src = self.apply(&f.source);
        let tgt = self.apply(&f.target);
        let lifted = Matrix::identity(self.m.p(), self.m.dim())
            .kron(&f.mat)
            .expect("same p");
        let mat = tgt
            .proj
            .mul(&lifted)
            .expect("shape")
            .mul(&src.sect)
            .expect("shape");
        ModuleMap::new_unchecked(src.module.clone(), tgt.module.clone(), mat)
    }

    /// Dimension of `M ⊗_B M` (for an endofunctor bimodule): zero exactly
    /// when the induced functor squares to zero on every module.
    pub fn square_dim(&self) -> usize {
        self.apply(&self.m.as_left_module()).module.dim()
    }
}

// ---------------------------------------------------------------------------
// Hom functor
// ---------------------------------------------------------------------------

/// The hom module `Hom_A(M, Y)` with its defining basis of matrices and
/// their column-stacked vectorizations (for coordinate solves).
#[derive(Clone, Debug)]
pub struct HomData {
    pub module: Module,
    /// Basis elements as matrices `dim Y × dim M`.
    pub basis: Vec<Matrix>,
    /// `(dim M · dim Y) × (basis count)`: column `t` is `vec(basis[t])`.
    pub stack: Matrix,
}

impl HomData {
    /// Coordinates of a hom element given as a matrix.
    pub fn coords_of(&self, h: &Matrix) -> Option<Matrix> {
        self.stack
            .solve(&vec_col(h))
            .expect("shape agrees")
    }

    /// The matrix represented by a coordinate vector.
    pub fn matrix_of(&self, coords: &Matrix, rows: usize, cols: usize) -> Matrix {
        let p = self.stack.p();
        let mut out = Matrix::zero(p, rows, cols);
        for (t, b) in self.basis.iter().enumerate() {
            let c = coords.get(t, 0);
            if c != 0 {
                out = out.add(&b.scale(c)).expect("same shape");
            }
        }
        out
    }
}

/// Column-major vectorization as a single column.
fn vec_col(m: &Matrix) -> Matrix {
    let flat: Vec<u64> = (0..m.cols())
        .flat_map(|j| (0..m.rows()).map(|i| m.get(i, j)).collect::<Vec<_>>())
        .collect();
    Matrix::from_col(m.p(), &flat)
}

/// `Hom_A(M, -)` as a memoized functor from `A`-modules to `B`-modules.
pub struct HomFunctor {
    m: Arc<Bimodule>,
    cache: Mutex<HashMap<Vec<u8>, Arc<HomData>>>,
}

impl HomFunctor {
    pub fn new(m: Arc<Bimodule>) -> HomFunctor {
        HomFunctor {
            m,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.m
    }

    /// Applies the functor to a module over `A`.
    pub fn apply(&self, y: &Module) -> Arc<HomData> {
        let key = y.content_key();
        if let Some(data) = self.cache.lock().expect("hom cache poisoned").get(&key) {
            return data.clone();
        }
        let data = Arc::new(self.compute(y));
        self.cache
            .lock()
            .expect("hom cache poisoned")
            .insert(key, data.clone());
        data
    }

    fn compute(&self, y: &Module) -> HomData {
        let p = self.m.p();
        let basis = hom_basis(&self.m.as_left_module(), y);
        let g = basis.len();
        let stack = basis
            .iter()
            .fold(Matrix::zero(p, self.m.dim() * y.dim(), 0), |acc, h| {
                acc.hstack(&vec_col(h)).expect("same rows")
            });
        // Action of b ∈ B on h: precompose with the right action of b on M.
        let action = (0..self.m.right_alg.dim())
            .map(|b| {
                if g == 0 {
                    return Matrix::zero(p, 0, 0);
                }
                let rhs = basis
                    .iter()
                    .fold(Matrix::zero(p, self.m.dim() * y.dim(), 0), |acc, h| {
                        acc.hstack(&vec_col(&h.mul(self.m.right_act(b)).expect("shape")))
                            .expect("same rows")
                    });
                stack
                    .solve(&rhs)
                    .expect("shape agrees")
                    .expect("the hom space is closed under the action")
            })
            .collect();
        HomData {
            module: Module::new_unchecked(self.m.right_alg.clone(), action),
            basis,
            stack,
        }
    }

    /// Applies the functor to a map: postcomposition with `u`.
    pub fn on_map(&self, u: &ModuleMap) -> ModuleMap {
        let src = self.apply(&u.source);
        let tgt = self.apply(&u.target);
        let p = self.m.p();
        let mat = src
            .basis
            .iter()
            .fold(Matrix::zero(p, tgt.basis.len(), 0), |acc, h| {
                let image = u.mat.mul(h).expect("shape");
                let coords = tgt
                    .coords_of(&image)
                    .expect("postcomposition stays in the hom space");
                acc.hstack(&coords).expect("same rows")
            });
        ModuleMap::new_unchecked(src.module.clone(), tgt.module.clone(), mat)
    }
}

// ---------------------------------------------------------------------------
// Adjunction
// ---------------------------------------------------------------------------

/// The adjunction isomorphism `Hom_A(M ⊗ X, Y) → Hom_B(X, Hom_A(M, Y))`:
/// `φ(f)(x) = (v ↦ f(v ⊗ x))`.
pub fn adjunction_phi(
    tensor: &TensorFunctor,
    hom: &HomFunctor,
    x: &Module,
    f: &ModuleMap,
) -> ModuleMap {
    let tx = tensor.apply(x);
    debug_assert_eq!(f.source, tx.module, "map must start at the tensor");
    let hy = hom.apply(&f.target);
    let p = x.p();
    let nm = tensor.m.dim();
    let nx = x.dim();
    let ny = f.target.dim();
    // The composite with the quotient projection evaluates f on pure tensors.
    let fk = f.mat.mul(&tx.proj).expect("shape");
    let mut mat = Matrix::zero(p, hy.basis.len(), nx);
    for l in 0..nx {
        let mut h = Matrix::zero(p, ny, nm);
        for i in 0..nm {
            for r in 0..ny {
                h.set(r, i, fk.get(r, i * nx + l));
            }
        }
        let coords = hy
            .coords_of(&h)
            .expect("partial evaluation of a module map is a module map");
        for t in 0..coords.rows() {
            mat.set(t, l, coords.get(t, 0));
        }
    }
    ModuleMap::new_unchecked(x.clone(), hy.module.clone(), mat)
}

/// The inverse adjunction map `Hom_B(X, Hom_A(M, Y)) → Hom_A(M ⊗ X, Y)`:
/// `ψ(g)(v ⊗ x) = g(x)(v)`.
pub fn adjunction_psi(
    tensor: &TensorFunctor,
    hom: &HomFunctor,
    x: &Module,
    y: &Module,
    g: &ModuleMap,
) -> ModuleMap {
    let tx = tensor.apply(x);
    let hy = hom.apply(y);
    debug_assert_eq!(g.source, *x);
    debug_assert_eq!(g.target, hy.module, "map must land in the hom module");
    let p = x.p();
    let nm = tensor.m.dim();
    let nx = x.dim();
    let ny = y.dim();
    let mut on_pure = Matrix::zero(p, ny, nm * nx);
    for l in 0..nx {
        // g(e_l) as a matrix M -> Y.
        let h = hy.matrix_of(&g.mat.select_cols(&[l]), ny, nm);
        for i in 0..nm {
            for r in 0..ny {
                on_pure.set(r, i * nx + l, h.get(r, i));
            }
        }
    }
    let mat = on_pure.mul(&tx.sect).expect("shape");
    ModuleMap::new_unchecked(tx.module.clone(), y.clone(), mat)
}

// ---------------------------------------------------------------------------
// Bimodule multiplication and the induced natural transformations
// ---------------------------------------------------------------------------

/// An associative multiplication `μ: M ⊗_B M → M` on a `(B, B)`-bimodule,
/// stored at the ambient level as a matrix `dim M × dim M²` on pure tensors.
#[derive(Clone, Debug)]
pub struct BimoduleMul {
    bimodule: Arc<Bimodule>,
    /// `mat_k[(t, i·m+j)]`: coordinate `t` of `b_i · b_j`.
    mat_k: Matrix,
}

impl BimoduleMul {
    /// Builds and fully validates a multiplication: it must kill the
    /// balancing relations, be a map of bimodules, and be associative.
    ///
    /// # Errors
    ///
    /// Reports the first violated associativity triple `(i, j, k)` via
    /// [`StructureError::NotAssociative`]; other failures are structural.
    pub fn new(bimodule: Arc<Bimodule>, mat_k: Matrix) -> Result<BimoduleMul> {
        if bimodule.left_alg() != bimodule.right_alg() {
            return Err(StructureError::IncompatibleAlgebras {
                op: "bimodule multiplication",
            }
            .into());
        }
        let m = bimodule.dim();
        let p = bimodule.p();
        if mat_k.rows() != m || mat_k.cols() != m * m {
            return Err(StructureError::InvalidData {
                what: "bimodule multiplication",
                reason: format!(
                    "matrix is {}x{}, expected {}x{}",
                    mat_k.rows(),
                    mat_k.cols(),
                    m,
                    m * m
                ),
            }
            .into());
        }
        // Balancedness: (v·b) ⊗ w and v ⊗ (b·w) multiply equally.
        for b in 0..bimodule.right_alg().dim() {
            let lhs = mat_k
                .mul(&bimodule.right_act(b).kron(&Matrix::identity(p, m))?)?;
            let rhs = mat_k
                .mul(&Matrix::identity(p, m).kron(bimodule.left_act(b))?)?;
            if lhs != rhs {
                return Err(StructureError::InvalidData {
                    what: "bimodule multiplication",
                    reason: format!("not balanced over basis element {b}"),
                }
                .into());
            }
        }
        // Bimodule map: commutes with the outer left and right actions.
        for b in 0..bimodule.left_alg().dim() {
            let left_in = mat_k.mul(&bimodule.left_act(b).kron(&Matrix::identity(p, m))?)?;
            let left_out = bimodule.left_act(b).mul(&mat_k)?;
            if left_in != left_out {
                return Err(StructureError::InvalidData {
                    what: "bimodule multiplication",
                    reason: format!("does not respect the left action of basis element {b}"),
                }
                .into());
            }
            let right_in = mat_k.mul(&Matrix::identity(p, m).kron(bimodule.right_act(b))?)?;
            let right_out = bimodule.right_act(b).mul(&mat_k)?;
            if right_in != right_out {
                return Err(StructureError::InvalidData {
                    what: "bimodule multiplication",
                    reason: format!("does not respect the right action of basis element {b}"),
                }
                .into());
            }
        }
        // Associativity on ambient triples, with a witness on failure.
        let assoc_l = mat_k.mul(&mat_k.kron(&Matrix::identity(p, m))?)?;
        let assoc_r = mat_k.mul(&Matrix::identity(p, m).kron(&mat_k)?)?;
        if assoc_l != assoc_r {
            for col in 0..m * m * m {
                let lhs: Vec<u64> = (0..m).map(|r| assoc_l.get(r, col)).collect();
                let rhs: Vec<u64> = (0..m).map(|r| assoc_r.get(r, col)).collect();
                if lhs != rhs {
                    return Err(StructureError::NotAssociative {
                        i: col / (m * m),
                        j: (col / m) % m,
                        k: col % m,
                    }
                    .into());
                }
            }
        }
        Ok(BimoduleMul { bimodule, mat_k })
    }

    /// The multiplication of the algebra itself, on its regular bimodule.
    pub fn regular(algebra: &Arc<Algebra>) -> BimoduleMul {
        let m = algebra.dim();
        let p = algebra.p();
        let mut mat_k = Matrix::zero(p, m, m * m);
        for i in 0..m {
            for j in 0..m {
                let mut e_i = vec![0u64; m];
                e_i[i] = 1;
                let mut e_j = vec![0u64; m];
                e_j[j] = 1;
                let prod = algebra.mul_vec(&e_i, &e_j);
                for (t, &c) in prod.iter().enumerate() {
                    mat_k.set(t, i * m + j, c);
                }
            }
        }
        BimoduleMul::new(Bimodule::regular(algebra), mat_k)
            .expect("algebra multiplication is associative and balanced")
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    /// Coordinates of the product of the `i`-th and `j`-th basis elements.
    pub fn product_of(&self, i: usize, j: usize) -> Vec<u64> {
        let m = self.bimodule.dim();
        (0..m).map(|t| self.mat_k.get(t, i * m + j)).collect()
    }

    /// A zero multiplication (the square-zero case).
    pub fn zero(bimodule: Arc<Bimodule>) -> Result<BimoduleMul> {
        let m = bimodule.dim();
        let p = bimodule.p();
        BimoduleMul::new(bimodule, Matrix::zero(p, m, m * m))
    }
}

/// The natural transformation `η_X: F²X → FX` induced by a multiplication:
/// contract the two inner tensor factors with `μ`.
pub fn eta_for(tensor: &TensorFunctor, mul: Option<&BimoduleMul>, x: &Module) -> ModuleMap {
    let p = x.p();
    let nm = tensor.m.dim();
    let nx = x.dim();
    let fx = tensor.apply(x);
    let ffx = tensor.apply(&fx.module);
    let mat = match mul {
        None => Matrix::zero(p, fx.module.dim(), ffx.module.dim()),
        Some(mul) => {
            // k-level: k^(m · dim FX) --1⊗σ--> k^(m·m·n) --μ⊗1--> k^(m·n).
            let lift = Matrix::identity(p, nm).kron(&fx.sect).expect("same p");
            let contract = mul.mat_k.kron(&Matrix::identity(p, nx)).expect("same p");
            fx.proj
                .mul(&contract)
                .expect("shape")
                .mul(&lift)
                .expect("shape")
                .mul(&ffx.sect)
                .expect("shape")
        }
    };
    ModuleMap::new_unchecked(ffx.module.clone(), fx.module.clone(), mat)
}

/// The mate `ζ_X: G X → G²X` of `η` under the adjunction:
/// `ζ_X = φ(φ(ε_X ∘ η_{G X}))` where `ε` is the counit. With a zero (or
/// absent) multiplication this computes to zero.
pub fn zeta_for(
    tensor: &TensorFunctor,
    hom: &HomFunctor,
    mul: Option<&BimoduleMul>,
    x: &Module,
) -> ModuleMap {
    let gx = hom.apply(x).module.clone();
    // Counit ε_X: F(G X) → X is the adjoint of the identity on G X.
    let counit = adjunction_psi(tensor, hom, &gx, x, &ModuleMap::identity(&gx));
    let eta_gx = eta_for(tensor, mul, &gx);
    let composite = counit.compose(&eta_gx).expect("middle objects agree");
    // First mate: F(G X) → G X ... transposed through the adjunction with
    // source F(G X).
    let fgx = tensor.apply(&gx).module.clone();
    let step = adjunction_phi(tensor, hom, &fgx, &composite);
    // Second mate: G X → G²X.
    adjunction_phi(tensor, hom, &gx, &step)
}

/// Checks naturality of `η` on one map: `η_Y ∘ F²(f) = F(f) ∘ η_X`.
pub fn eta_is_natural_on(
    tensor: &TensorFunctor,
    mul: Option<&BimoduleMul>,
    f: &ModuleMap,
) -> bool {
    let ff = tensor.on_map(&tensor.on_map(f));
    let ff_then_eta = eta_for(tensor, mul, &f.target)
        .compose(&ff)
        .expect("middle objects agree");
    let eta_then_f = tensor
        .on_map(f)
        .compose(&eta_for(tensor, mul, &f.source))
        .expect("middle objects agree");
    ff_then_eta == eta_then_f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra;
    use crate::module::{
        direct_sum, free_module, hom_dim, is_injective, is_projective, tor_dim, ModCtx,
    };

    fn field(p: u64) -> Arc<Algebra> {
        Algebra::new(p, vec![vec![vec![1]]], vec![1], vec!["1".into()]).unwrap()
    }

    fn dual_numbers() -> Arc<Algebra> {
        Algebra::new(
            2,
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]],
            vec![1, 0],
            vec!["1".into(), "x".into()],
        )
        .unwrap()
    }

    fn simple(k: &Arc<Algebra>) -> Module {
        Module::new(
            k.clone(),
            vec![Matrix::identity(2, 1), Matrix::zero(2, 1, 1)],
        )
        .unwrap()
    }

    /// The corner bimodule over `F_2 × F_2`: one-dimensional, left action
    /// through the first factor, right action through the second.
    fn corner() -> (Arc<Algebra>, Arc<Bimodule>) {
        let f2 = field(2);
        let (prod, _) = algebra::direct_product(&f2, &f2).unwrap();
        let m = Bimodule::new(
            prod.clone(),
            prod.clone(),
            vec![Matrix::identity(2, 1), Matrix::zero(2, 1, 1)],
            vec![Matrix::zero(2, 1, 1), Matrix::identity(2, 1)],
        )
        .unwrap();
        (prod, m)
    }

    #[test]
    fn regular_bimodule_tensor_is_the_identity_up_to_iso() {
        let k = dual_numbers();
        let m = Bimodule::regular(&k);
        let f = TensorFunctor::new(m);
        let s = simple(&k);
        let ts = f.apply(&s);
        assert_eq!(ts.module.dim(), 1);
        let r = free_module(&k, 1).module;
        let tr = f.apply(&r);
        assert_eq!(tr.module.dim(), 2);
        // Functoriality on the socle inclusion.
        let incl = ModuleMap::new(
            s.clone(),
            r.clone(),
            Matrix::from_rows(2, &[vec![0], vec![1]]).unwrap(),
        )
        .unwrap();
        let t_incl = f.on_map(&incl);
        assert!(t_incl.is_mono());
        assert_eq!(f.square_dim(), 2); // M ⊗ M ≅ M for the regular bimodule
    }

    #[test]
    fn corner_bimodule_swaps_components_and_squares_to_zero() {
        let (prod, m) = corner();
        let f = TensorFunctor::new(m);
        assert_eq!(f.square_dim(), 0);
        // On the regular module (dims (1,1)) the tensor is one-dimensional,
        // supported at the first factor.
        let reg = free_module(&prod, 1).module;
        let t = f.apply(&reg);
        assert_eq!(t.module.dim(), 1);
        assert!(t.module.act(0).is_identity());
        assert!(t.module.act(1).is_zero());
    }

    #[test]
    fn hom_with_regular_bimodule_is_the_identity_up_to_iso() {
        let k = dual_numbers();
        let m = Bimodule::regular(&k);
        let g = HomFunctor::new(m);
        let s = simple(&k);
        let r = free_module(&k, 1).module;
        assert_eq!(g.apply(&s).module.dim(), 1);
        assert_eq!(g.apply(&r).module.dim(), 2);
        // Hom(B, -) preserves injectivity here because B is self-injective.
        assert!(is_injective(&g.apply(&r).module).unwrap());
        let incl = ModuleMap::new(
            s.clone(),
            r.clone(),
            Matrix::from_rows(2, &[vec![0], vec![1]]).unwrap(),
        )
        .unwrap();
        assert!(g.on_map(&incl).is_mono());
    }

    #[test]
    fn adjunction_is_a_bijection_both_ways() {
        let k = dual_numbers();
        let m = Bimodule::regular(&k);
        let tensor = TensorFunctor::new(m.clone());
        let hom = HomFunctor::new(m);
        let s = simple(&k);
        let r = free_module(&k, 1).module;
        for x in [&s, &r] {
            for y in [&s, &r] {
                let tx = tensor.apply(x).module.clone();
                let gy = hom.apply(y).module.clone();
                assert_eq!(hom_dim(&tx, y), hom_dim(x, &gy), "adjunction dimension");
                for h in crate::module::hom_basis(&tx, y) {
                    let f = ModuleMap::new(tx.clone(), y.clone(), h).unwrap();
                    let g = adjunction_phi(&tensor, &hom, x, &f);
                    let back = adjunction_psi(&tensor, &hom, x, y, &g);
                    assert_eq!(back.mat, f.mat, "ψ ∘ φ = id");
                }
                for h in crate::module::hom_basis(x, &gy) {
                    let g = ModuleMap::new(x.clone(), gy.clone(), h).unwrap();
                    let f = adjunction_psi(&tensor, &hom, x, y, &g);
                    let back = adjunction_phi(&tensor, &hom, x, &f);
                    assert_eq!(back.mat, g.mat, "φ ∘ ψ = id");
                }
            }
        }
    }

    #[test]
    fn adjunction_roundtrip_over_the_corner() {
        let (prod, m) = corner();
        let tensor = TensorFunctor::new(m.clone());
        let hom = HomFunctor::new(m);
        let reg = free_module(&prod, 1).module;
        let sum = direct_sum(&reg, &reg).module;
        for x in [&reg, &sum] {
            for y in [&reg, &sum] {
                let tx = tensor.apply(x).module.clone();
                let gy = hom.apply(y).module.clone();
                assert_eq!(hom_dim(&tx, y), hom_dim(x, &gy));
                for h in crate::module::hom_basis(&tx, y) {
                    let f = ModuleMap::new(tx.clone(), y.clone(), h).unwrap();
                    let g = adjunction_phi(&tensor, &hom, x, &f);
                    let back = adjunction_psi(&tensor, &hom, x, y, &g);
                    assert_eq!(back.mat, f.mat);
                }
            }
        }
    }

    #[test]
    fn bimodule_multiplication_validates_and_reports_witnesses() {
        let k = dual_numbers();
        let mul = BimoduleMul::regular(&k);
        assert_eq!(mul.mat_k.rows(), 2);
        // Break associativity: define b_i · b_j = x for all pairs. Then
        // (b0·b0)·b1 = x·x = 0-coordinate... actually x·b ≠ μ(x ⊗ b) any
        // more, so balancedness fails first; check that an error comes out.
        let bad = Matrix::from_rows(
            2,
            &[vec![0, 0, 0, 0], vec![1, 1, 1, 1]],
        )
        .unwrap();
        assert!(BimoduleMul::new(Bimodule::regular(&k), bad).is_err());
        // The zero multiplication is always admissible.
        assert!(BimoduleMul::zero(Bimodule::regular(&k)).is_ok());
    }

    #[test]
    fn eta_from_regular_multiplication_is_iso_and_natural() {
        let k = dual_numbers();
        let m = Bimodule::regular(&k);
        let tensor = TensorFunctor::new(m.clone());
        let mul = BimoduleMul::regular(&k);
        let r = free_module(&k, 1).module;
        let eta = eta_for(&tensor, Some(&mul), &r);
        assert!(eta.is_iso(), "B ⊗ B ⊗ X → B ⊗ X is an iso");
        let s = simple(&k);
        let incl = ModuleMap::new(
            s.clone(),
            r.clone(),
            Matrix::from_rows(2, &[vec![0], vec![1]]).unwrap(),
        )
        .unwrap();
        assert!(eta_is_natural_on(&tensor, Some(&mul), &incl));
        // Without a multiplication η is zero.
        assert!(eta_for(&tensor, None, &r).is_zero());
    }

    #[test]
    fn zeta_is_zero_without_multiplication_and_valid_with_one() {
        let k = dual_numbers();
        let m = Bimodule::regular(&k);
        let tensor = TensorFunctor::new(m.clone());
        let hom = HomFunctor::new(m);
        let r = free_module(&k, 1).module;
        let zeta_zero = zeta_for(&tensor, &hom, None, &r);
        assert!(zeta_zero.is_zero());
        let mul = BimoduleMul::regular(&k);
        let zeta = zeta_for(&tensor, &hom, Some(&mul), &r);
        // Validity: the unchecked constructor debug-asserts intertwining;
        // re-validate explicitly here.
        assert!(ModuleMap::new(zeta.source.clone(), zeta.target.clone(), zeta.mat.clone()).is_ok());
        assert!(zeta.is_iso(), "for the regular bimodule ζ is an iso");
        // Over the corner (square-zero) setup ζ also vanishes with the zero
        // multiplication.
        let (prod, cm) = corner();
        let ct = TensorFunctor::new(cm.clone());
        let ch = HomFunctor::new(cm.clone());
        let czero = BimoduleMul::zero(cm).unwrap();
        let reg = free_module(&prod, 1).module;
        assert!(zeta_for(&ct, &ch, Some(&czero), &reg).is_zero());
    }

    #[test]
    fn regular_bimodule_is_flat_and_projective_valued() {
        let k = dual_numbers();
        let m = Bimodule::regular(&k);
        let ctx = ModCtx::new(k.clone());
        let s = simple(&k);
        assert_eq!(tor_dim(&ctx, 1, &m.as_right_module(), &s), 0);
        let tensor = TensorFunctor::new(m);
        let r = free_module(&k, 1).module;
        assert!(is_projective(&tensor.apply(&r).module).unwrap());
    }
}
