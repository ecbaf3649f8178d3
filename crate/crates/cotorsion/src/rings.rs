//! Rings whose module categories *are* extension categories: square-zero
//! extensions of an algebra by a bimodule (with an optional associative
//! deformation of the bimodule square), lower-triangular context rings, and
//! the bridge that presents functor-indexed comma data over a product
//! algebra. Each constructor returns the ring together with the matching
//! extension-category setup and the explicit dictionary translating ring
//! modules into structured pairs and back — the two directions are mutually
//! inverse on the nose, not just up to isomorphism.

use crate::algebra::{direct_product, Algebra, ProductLayout};
use crate::error::StructureError;
use crate::extcat::{ExtObject, Setup};
use crate::functor::{Bimodule, BimoduleMul};
use crate::linalg::Matrix;
use crate::module::Module;
use crate::Result;
use std::sync::Arc;

/// A ring assembled from a base algebra and a bimodule, packaged with the
/// extension-category setup it models and the basis layout needed to
/// translate modules into structured pairs and back.
#[derive(Clone)]
pub struct ExtensionRing {
    lambda: Arc<Algebra>,
    setup: Arc<Setup>,
    /// Positions of the base algebra's basis inside the ring's basis, in
    /// base order.
    base_positions: Vec<usize>,
    /// Positions of the bimodule basis inside the ring's basis, in the
    /// bimodule's order.
    w_positions: Vec<usize>,
}

impl std::fmt::Debug for ExtensionRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ExtensionRing(dim {} = base {} + bimodule {})",
            self.lambda.dim(),
            self.base_positions.len(),
            self.w_positions.len()
        )
    }
}

impl ExtensionRing {
    /// The assembled ring.
    pub fn lambda(&self) -> &Arc<Algebra> {
        &self.lambda
    }

    /// The extension-category setup the ring's module category realizes.
    pub fn setup(&self) -> &Arc<Setup> {
        &self.setup
    }
}

fn pad(coords: &[u64], positions: &[usize], total: usize) -> Vec<u64> {
    let mut out = vec![0u64; total];
    for (local, &pos) in positions.iter().enumerate() {
        out[pos] = coords[local];
    }
    out
}

fn column(m: &Matrix, j: usize) -> Vec<u64> {
    (0..m.rows()).map(|r| m.get(r, j)).collect()
}

/// The square-zero extension of `r` by the `(r, r)`-bimodule `m` — the ring
/// on `r ⊕ m` with multiplication
/// `(r₁, m₁)(r₂, m₂) = (r₁r₂, r₁m₂ + m₁r₂ + μ(m₁, m₂))`,
/// where `μ` is the optional associative multiplication on `m` (omitted:
/// zero, the literal square-zero case).
///
/// # Errors
///
/// Rejects a bimodule not over `(r, r)`, a multiplication on a different
/// bimodule, and any assembled table that fails validation.
pub fn trivial_extension_ring(
    r: &Arc<Algebra>,
    m: &Arc<Bimodule>,
    mu: Option<&BimoduleMul>,
) -> Result<ExtensionRing> {
    if m.left_alg() != r || m.right_alg() != r {
        return Err(StructureError::IncompatibleAlgebras {
            op: "square-zero extension",
        }
        .into());
    }
    if let Some(mu) = mu {
        if mu.bimodule().content_key() != m.content_key() {
            return Err(StructureError::IncompatibleAlgebras {
                op: "square-zero extension multiplication",
            }
            .into());
        }
    }
    let rd = r.dim();
    let md = m.dim();
    let d = rd + md;
    let base_positions: Vec<usize> = (0..rd).collect();
    let w_positions: Vec<usize> = (rd..d).collect();
    let mut table = vec![vec![vec![0u64; d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            table[i][j] = match (i < rd, j < rd) {
                // base · base: the base table.
                (true, true) => {
                    let mut e_i = vec![0u64; rd];
                    e_i[i] = 1;
                    let mut e_j = vec![0u64; rd];
                    e_j[j] = 1;
                    pad(&r.mul_vec(&e_i, &e_j), &base_positions, d)
                }
                // base · bimodule: the left action.
                (true, false) => pad(&column(m.left_act(i), j - rd), &w_positions, d),
                // bimodule · base: the right action.
                (false, true) => pad(&column(m.right_act(j), i - rd), &w_positions, d),
                // bimodule · bimodule: μ, or zero.
                (false, false) => match mu {
                    None => vec![0u64; d],
                    Some(mu) => pad(&mu.product_of(i - rd, j - rd), &w_positions, d),
                },
            };
        }
    }
    let unit = pad(r.unit(), &base_positions, d);
    let mut labels: Vec<String> = r.labels().to_vec();
    labels.extend((0..md).map(|t| format!("m{t}")));
    let lambda = Algebra::new(r.p(), table, unit, labels)?;
    let report = lambda.validate();
    if !report.is_ok() {
        return Err(StructureError::InvalidData {
            what: "square-zero extension table",
            reason: format!(
                "{} associativity and {} unit failures",
                report.associativity_failures.len(),
                report.unit_failures.len()
            ),
        }
        .into());
    }
    let setup = Setup::new(r.clone(), m.clone(), mu.cloned())?;
    Ok(ExtensionRing {
        lambda,
        setup,
        base_positions,
        w_positions,
    })
}

/// The two off-diagonal bimodules of a lower-triangular context ring with
/// zero context maps.
#[derive(Clone, Debug)]
pub struct MoritaContextSpec {
    pub a: Arc<Algebra>,
    pub b: Arc<Algebra>,
    /// The lower-left entry: a `(b, a)`-bimodule.
    pub m: Arc<Bimodule>,
    /// The upper-right entry: an `(a, b)`-bimodule; omitted means zero.
    pub n: Option<Arc<Bimodule>>,
}

/// The context ring on `a ⊕ n ⊕ m ⊕ b` with componentwise addition and
/// multiplication
/// `(a₁, n₁, m₁, b₁)(a₂, n₂, m₂, b₂) = (a₁a₂, a₁n₂ + n₁b₂, m₁a₂ + b₁m₂, b₁b₂)`
/// (zero context maps: `n·m` and `m·n` vanish). The accompanying setup
/// lives over the product `a × b` with the endofunctor bimodule `n ⊕ m`.
///
/// # Errors
///
/// Rejects bimodules over the wrong algebra sides and invalid assembled
/// tables.
pub fn morita_context_ring(spec: &MoritaContextSpec) -> Result<ExtensionRing> {
    let MoritaContextSpec { a, b, m, n } = spec;
    if m.left_alg() != b || m.right_alg() != a {
        return Err(StructureError::IncompatibleAlgebras {
            op: "context ring lower-left bimodule",
        }
        .into());
    }
    if let Some(n) = n {
        if n.left_alg() != a || n.right_alg() != b {
            return Err(StructureError::IncompatibleAlgebras {
                op: "context ring upper-right bimodule",
            }
            .into());
        }
    }
    let (ad, bd, md) = (a.dim(), b.dim(), m.dim());
    let nd = n.as_ref().map_or(0, |n| n.dim());
    let d = ad + nd + md + bd;
    // Basis order: a, n, m, b.
    let a_at = |i: usize| i;
    let n_at = |i: usize| ad + i;
    let m_at = |i: usize| ad + nd + i;
    let b_at = |i: usize| ad + nd + md + i;
    let mut table = vec![vec![vec![0u64; d]; d]; d];
    for i in 0..ad {
        for j in 0..ad {
            let mut e_i = vec![0u64; ad];
            e_i[i] = 1;
            let mut e_j = vec![0u64; ad];
            e_j[j] = 1;
            for (t, &c) in a.mul_vec(&e_i, &e_j).iter().enumerate() {
                table[a_at(i)][a_at(j)][a_at(t)] = c;
            }
        }
    }
    for i in 0..bd {
        for j in 0..bd {
            let mut e_i = vec![0u64; bd];
            e_i[i] = 1;
            let mut e_j = vec![0u64; bd];
            e_j[j] = 1;
            for (t, &c) in b.mul_vec(&e_i, &e_j).iter().enumerate() {
                table[b_at(i)][b_at(j)][b_at(t)] = c;
            }
        }
    }
    if let Some(n) = n {
        for i in 0..ad {
            for j in 0..nd {
                for (t, c) in column(n.left_act(i), j).into_iter().enumerate() {
                    table[a_at(i)][n_at(j)][n_at(t)] = c;
                }
            }
        }
        for i in 0..nd {
            for j in 0..bd {
                for (t, c) in column(n.right_act(j), i).into_iter().enumerate() {
                    table[n_at(i)][b_at(j)][n_at(t)] = c;
                }
            }
        }
    }
    for i in 0..bd {
        for j in 0..md {
            for (t, c) in column(m.left_act(i), j).into_iter().enumerate() {
                table[b_at(i)][m_at(j)][m_at(t)] = c;
            }
        }
    }
    for i in 0..md {
        for j in 0..ad {
            for (t, c) in column(m.right_act(j), i).into_iter().enumerate() {
                table[m_at(i)][a_at(j)][m_at(t)] = c;
            }
        }
    }
    let mut unit = vec![0u64; d];
    for (t, &c) in a.unit().iter().enumerate() {
        unit[a_at(t)] = c;
    }
    for (t, &c) in b.unit().iter().enumerate() {
        unit[b_at(t)] = c;
    }
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("a:{l}")).collect();
    labels.extend((0..nd).map(|t| format!("n{t}")));
    labels.extend((0..md).map(|t| format!("m{t}")));
    labels.extend(b.labels().iter().map(|l| format!("b:{l}")));
    let lambda = Algebra::new(a.p(), table, unit, labels)?;
    let report = lambda.validate();
    if !report.is_ok() {
        return Err(StructureError::InvalidData {
            what: "context ring table",
            reason: format!(
                "{} associativity and {} unit failures",
                report.associativity_failures.len(),
                report.unit_failures.len()
            ),
        }
        .into());
    }

    // The matching setup: base = a × b, endofunctor bimodule = n ⊕ m with
    // the inherited outer actions.
    let (product, layout) = direct_product(a, b)?;
    let w = context_bimodule(&product, &layout, m, n.as_deref())?;
    let setup = Setup::new(product, w, None)?;
    let base_positions: Vec<usize> = (0..ad).map(a_at).chain((0..bd).map(b_at)).collect();
    let w_positions: Vec<usize> = (0..nd).map(n_at).chain((0..md).map(m_at)).collect();
    Ok(ExtensionRing {
        lambda,
        setup,
        base_positions,
        w_positions,
    })
}

/// The `(a×b, a×b)`-bimodule `n ⊕ m` (basis: `n` first) induced by a
/// `(b, a)`-bimodule `m` and an optional `(a, b)`-bimodule `n`.
fn context_bimodule(
    product: &Arc<Algebra>,
    layout: &ProductLayout,
    m: &Bimodule,
    n: Option<&Bimodule>,
) -> Result<Arc<Bimodule>> {
    let p = product.p();
    let ad = layout.dims[0];
    let bd = layout.dims[1];
    let nd = n.map_or(0, Bimodule::dim);
    let md = m.dim();
    let wd = nd + md;
    let embed = |n_block: Option<&Matrix>, m_block: Option<&Matrix>| -> Matrix {
        let mut out = Matrix::zero(p, wd, wd);
        if let Some(blk) = n_block {
            for r in 0..nd {
                for c in 0..nd {
                    out.set(r, c, blk.get(r, c));
                }
            }
        }
        if let Some(blk) = m_block {
            for r in 0..md {
                for c in 0..md {
                    out.set(nd + r, nd + c, blk.get(r, c));
                }
            }
        }
        out
    };
    let mut left = Vec::with_capacity(ad + bd);
    let mut right = Vec::with_capacity(ad + bd);
    for i in 0..ad {
        // (a, 0) acts on the left through n's left action, on the right
        // through m's right action.
        left.push(embed(n.map(|n| n.left_act(i)), None));
        right.push(embed(None, Some(m.right_act(i))));
    }
    for i in 0..bd {
        left.push(embed(None, Some(m.left_act(i))));
        right.push(embed(n.map(|n| n.right_act(i)), None));
    }
    Bimodule::new(product.clone(), product.clone(), left, right)
}

/// Translates a module over the assembled ring into the structured pair it
/// corresponds to: restrict the space along the base subalgebra and read
/// the structure map off the bimodule part of the action. Inverse to
/// [`pair_to_lambda`] on the nose.
///
/// # Errors
///
/// Rejects modules over a different algebra; structure-identity violations
/// (impossible for genuine modules) surface as construction errors.
pub fn lambda_to_pair(ring: &ExtensionRing, v: &Module) -> Result<ExtObject> {
    if v.algebra() != &ring.lambda {
        return Err(StructureError::InvalidObject {
            what: "module is not over the assembled ring",
        }
        .into());
    }
    let base = ring.setup.algebra();
    let p = base.p();
    let n = v.dim();
    let action: Vec<Matrix> = ring
        .base_positions
        .iter()
        .map(|&k| v.act(k).clone())
        .collect();
    let u = Module::new(base.clone(), action)?;
    let td = ring.setup.tensor().apply(&u);
    let wd = ring.w_positions.len();
    let mut pure = Matrix::zero(p, n, wd * n);
    for (t, &k) in ring.w_positions.iter().enumerate() {
        let act = v.act(k);
        for j in 0..n {
            for r in 0..n {
                pure.set(r, t * n + j, act.get(r, j));
            }
        }
    }
    let f_mat = pure.mul(&td.sect)?;
    ExtObject::new(&ring.setup, u, f_mat)
}

/// Translates a structured pair back into a module over the assembled
/// ring. Inverse to [`lambda_to_pair`] on the nose.
///
/// # Errors
///
/// Rejects pairs over a different setup; action-axiom violations
/// (impossible for genuine pairs) surface as construction errors.
pub fn pair_to_lambda(ring: &ExtensionRing, e: &ExtObject) -> Result<Module> {
    if e.x().algebra() != ring.setup.algebra() {
        return Err(StructureError::InvalidObject {
            what: "pair is not over the assembled ring's base",
        }
        .into());
    }
    let p = ring.lambda.p();
    let n = e.x().dim();
    let td = ring.setup.tensor().apply(e.x());
    let f_pure = e.f().mat.mul(&td.proj)?;
    let mut action = vec![Matrix::zero(p, n, n); ring.lambda.dim()];
    for (i, &k) in ring.base_positions.iter().enumerate() {
        action[k] = e.x().act(i).clone();
    }
    for (t, &k) in ring.w_positions.iter().enumerate() {
        let mut m = Matrix::zero(p, n, n);
        for j in 0..n {
            for r in 0..n {
                m.set(r, j, f_pure.get(r, t * n + j));
            }
        }
        action[k] = m;
    }
    Module::new(ring.lambda.clone(), action)
}

// ---------------------------------------------------------------------------
// Comma bridge
// ---------------------------------------------------------------------------

/// A right-exact functor between two module categories, presented by the
/// bimodule that realizes it.
#[derive(Clone, Debug)]
pub struct CommaSpec {
    /// Source side.
    pub c: Arc<Algebra>,
    /// Target side.
    pub d: Arc<Algebra>,
    /// A `(d, c)`-bimodule `W`; the functor is `W ⊗ -`.
    pub g: Arc<Bimodule>,
}

/// The comma data of [`comma_bridge`]: objects "(X, Y) with a map
/// `G X → Y`" become extension objects over the product algebra whose
/// endofunctor sends `(X, Y)` to `(0, G X)` — automatically square-zero.
#[derive(Clone)]
pub struct CommaBridge {
    pub product: Arc<Algebra>,
    pub layout: ProductLayout,
    pub setup: Arc<Setup>,
}

/// Realizes the comma category of a right-exact functor as the extension
/// category of a one-corner bimodule over the product algebra.
///
/// # Errors
///
/// Rejects a bimodule over the wrong algebra sides.
pub fn comma_bridge(spec: &CommaSpec) -> Result<CommaBridge> {
    let CommaSpec { c, d, g } = spec;
    if g.left_alg() != d || g.right_alg() != c {
        return Err(StructureError::IncompatibleAlgebras {
            op: "comma bridge bimodule",
        }
        .into());
    }
    let (product, layout) = direct_product(c, d)?;
    let p = product.p();
    let wd = g.dim();
    let cd = c.dim();
    let dd = d.dim();
    // Left action: only the d-part acts (through g's left action); right
    // action: only the c-part acts.
    let mut left = Vec::with_capacity(cd + dd);
    let mut right = Vec::with_capacity(cd + dd);
    for i in 0..cd {
        left.push(Matrix::zero(p, wd, wd));
        right.push(g.right_act(i).clone());
    }
    for i in 0..dd {
        left.push(g.left_act(i).clone());
        right.push(Matrix::zero(p, wd, wd));
    }
    let w = Bimodule::new(product.clone(), product.clone(), left, right)?;
    let setup = Setup::new(product.clone(), w, None)?;
    Ok(CommaBridge {
        product,
        layout,
        setup,
    })
}

/// Assembles the componentwise class `(xs; ys)` over the product algebra:
/// one member per pair of representatives. Feed the result to a listed
/// family to get the membership predicate.
pub fn componentwise_members(
    bridge: &CommaBridge,
    xs: &[Module],
    ys: &[Module],
) -> Vec<Module> {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for x in xs {
        for y in ys {
            out.push(crate::module::assemble_product_module(
                &bridge.product,
                &bridge.layout,
                &[x, y],
            ));
        }
    }
    out.sort_by_key(|m| (m.dim(), m.content_key()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_algebra_iso, from_quiver_over, Arrow, QuiverPresentation};
    use crate::cat::{ExtCat, ModCat};
    use crate::extcat::{enumerate_ext_objects, ext_dim_ext, find_ext_iso, t_obj, z_obj};
    use crate::module::{enumerate_modules, ModCtx};
    use crate::pairs::{check_pair, ext_family_mask, mod_family_mask, ExtFamily, ModFamily, PairOptions};

    fn field(p: u64) -> Arc<Algebra> {
        Algebra::new(p, vec![vec![vec![1]]], vec![1], vec!["1".into()]).unwrap()
    }

    fn dual_numbers() -> Arc<Algebra> {
        Algebra::new(
            2,
            vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 0]],
            ],
            vec![1, 0],
            vec!["1".into(), "x".into()],
        )
        .unwrap()
    }

    fn a2() -> Arc<Algebra> {
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
        from_quiver_over(&q, 2).unwrap()
    }

    fn zero_bimodule(r: &Arc<Algebra>) -> Arc<Bimodule> {
        let acts = vec![Matrix::zero(r.p(), 0, 0); r.dim()];
        Bimodule::new(r.clone(), r.clone(), acts.clone(), acts).unwrap()
    }

    #[test]
    fn square_zero_extension_of_a_field_is_the_dual_numbers() {
        let f2 = field(2);
        let ring = trivial_extension_ring(&f2, &Bimodule::regular(&f2), None).unwrap();
        assert_eq!(ring.lambda().dim(), 2);
        assert!(ring.lambda().validate().is_ok());
        assert!(find_algebra_iso(ring.lambda(), &dual_numbers(), 1 << 22)
            .unwrap()
            .is_some());
    }

    #[test]
    fn extension_by_the_zero_bimodule_is_the_base() {
        let r = dual_numbers();
        let ring = trivial_extension_ring(&r, &zero_bimodule(&r), None).unwrap();
        assert_eq!(ring.lambda().dim(), 2);
        assert!(find_algebra_iso(ring.lambda(), &r, 1 << 22).unwrap().is_some());
    }

    #[test]
    fn corner_extension_is_the_triangular_matrix_algebra() {
        let f2 = field(2);
        let (prod, _) = direct_product(&f2, &f2).unwrap();
        let corner = Bimodule::new(
            prod.clone(),
            prod.clone(),
            vec![Matrix::zero(2, 1, 1), Matrix::identity(2, 1)],
            vec![Matrix::identity(2, 1), Matrix::zero(2, 1, 1)],
        )
        .unwrap();
        let ring = trivial_extension_ring(&prod, &corner, None).unwrap();
        assert_eq!(ring.lambda().dim(), 3);
        assert!(find_algebra_iso(ring.lambda(), &a2(), 1 << 22).unwrap().is_some());
    }

    #[test]
    fn deformed_extension_of_a_field_splits() {
        // Deforming the regular square-zero extension by the actual
        // multiplication gives F₂[x]/(x² - x) ≅ F₂ × F₂.
        let f2 = field(2);
        let mu = BimoduleMul::regular(&f2);
        let ring =
            trivial_extension_ring(&f2, &Bimodule::regular(&f2), Some(&mu)).unwrap();
        let (prod, _) = direct_product(&f2, &f2).unwrap();
        assert!(find_algebra_iso(ring.lambda(), &prod, 1 << 22).unwrap().is_some());
        assert!(!ring.setup().eta_is_zero());
    }

    #[test]
    fn context_ring_with_one_corner_is_triangular() {
        let f2 = field(2);
        let m = Bimodule::new(
            f2.clone(),
            f2.clone(),
            vec![Matrix::identity(2, 1)],
            vec![Matrix::identity(2, 1)],
        )
        .unwrap();
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: f2.clone(),
            m,
            n: None,
        };
        let ring = morita_context_ring(&spec).unwrap();
        assert_eq!(ring.lambda().dim(), 3);
        assert!(ring.lambda().validate().is_ok());
        assert!(find_algebra_iso(ring.lambda(), &a2(), 1 << 22).unwrap().is_some());
    }

    #[test]
    fn context_ring_with_no_corners_is_the_product() {
        let f2 = field(2);
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: f2.clone(),
            m: zero_bimodule(&f2),
            n: None,
        };
        let ring = morita_context_ring(&spec).unwrap();
        let (prod, _) = direct_product(&f2, &f2).unwrap();
        assert!(find_algebra_iso(ring.lambda(), &prod, 1 << 22).unwrap().is_some());
    }

    #[test]
    fn context_ring_over_the_dual_numbers_has_dimension_six() {
        let l0 = dual_numbers();
        let spec = MoritaContextSpec {
            a: l0.clone(),
            b: l0.clone(),
            m: Bimodule::regular(&l0),
            n: None,
        };
        let ring = morita_context_ring(&spec).unwrap();
        assert_eq!(ring.lambda().dim(), 6);
        assert!(ring.lambda().validate().is_ok());
        assert!(ring.setup().square_zero());
    }

    #[test]
    fn module_pair_dictionary_round_trips_exactly() {
        let f2 = field(2);
        let m = Bimodule::new(
            f2.clone(),
            f2.clone(),
            vec![Matrix::identity(2, 1)],
            vec![Matrix::identity(2, 1)],
        )
        .unwrap();
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: f2.clone(),
            m,
            n: None,
        };
        let ring = morita_context_ring(&spec).unwrap();
        let modules = enumerate_modules(ring.lambda(), 2, 1 << 20).unwrap();
        assert!(modules.len() > 3);
        for v in &modules {
            let e = lambda_to_pair(&ring, v).unwrap();
            let back = pair_to_lambda(&ring, &e).unwrap();
            // Identity on matrices, not merely isomorphic.
            assert_eq!(back.content_key(), v.content_key());
            let e2 = lambda_to_pair(&ring, &back).unwrap();
            assert_eq!(e2.content_key(), e.content_key());
        }
    }

    #[test]
    fn dictionary_sends_simples_and_the_regular_module_where_expected() {
        let f2 = field(2);
        let m = Bimodule::new(
            f2.clone(),
            f2.clone(),
            vec![Matrix::identity(2, 1)],
            vec![Matrix::identity(2, 1)],
        )
        .unwrap();
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: f2.clone(),
            m,
            n: None,
        };
        let ring = morita_context_ring(&spec).unwrap();
        let setup = ring.setup();

        // Zero goes to zero.
        let zero = Module::zero(ring.lambda().clone());
        let e = lambda_to_pair(&ring, &zero).unwrap();
        assert!(e.is_zero());

        // The source-vertex simple goes to a zero-structure object on the
        // base simple.
        let s_a = Module::new(
            ring.lambda().clone(),
            vec![
                Matrix::identity(2, 1),
                Matrix::zero(2, 1, 1),
                Matrix::zero(2, 1, 1),
            ],
        )
        .unwrap();
        let e = lambda_to_pair(&ring, &s_a).unwrap();
        let base_simple = e.x().clone();
        assert_eq!(base_simple.dim(), 1);
        let z = z_obj(setup, &base_simple);
        assert!(find_ext_iso(setup, &e, &z).unwrap().is_some());
        assert!(e.f().mat.is_zero());

        // The regular module goes to the induced object on the base
        // regular module.
        let regular = crate::module::free_module(ring.lambda(), 1).module;
        let e = lambda_to_pair(&ring, &regular).unwrap();
        let base_regular = crate::module::free_module(setup.algebra(), 1).module;
        let t = t_obj(setup, &base_regular);
        assert!(find_ext_iso(setup, &e, &t).unwrap().is_some());
        assert!(crate::extcat::ext_is_projective(setup, &e));
    }

    #[test]
    fn ext_dimensions_agree_across_the_dictionary() {
        // The definitional bridge: Ext over the assembled ring must equal
        // Ext in the extension category, pair by pair.
        let f2 = field(2);
        let m = Bimodule::new(
            f2.clone(),
            f2.clone(),
            vec![Matrix::identity(2, 1)],
            vec![Matrix::identity(2, 1)],
        )
        .unwrap();
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: f2.clone(),
            m,
            n: None,
        };
        let ring = morita_context_ring(&spec).unwrap();
        let ctx = ModCtx::new(ring.lambda().clone());
        let modules = enumerate_modules(ring.lambda(), 2, 1 << 20).unwrap();
        let setup = ring.setup();
        for v in &modules {
            for w in &modules {
                let ev = lambda_to_pair(&ring, v).unwrap();
                let ew = lambda_to_pair(&ring, w).unwrap();
                for degree in 0..=2 {
                    let over_ring = if degree == 0 {
                        crate::module::hom_dim(v, w)
                    } else {
                        crate::module::ext_dim(&ctx, degree, v, w)
                    };
                    let over_pairs = ext_dim_ext(setup, degree, &ev, &ew);
                    assert_eq!(
                        over_ring, over_pairs,
                        "degree {degree} between dims {} and {}",
                        v.dim(),
                        w.dim()
                    );
                }
            }
        }
    }

    #[test]
    fn dictionary_handles_both_corners_and_a_nonzero_square() {
        // Both off-diagonal entries present: the endofunctor no longer
        // squares to zero, yet the dictionary still round-trips and the
        // Ext agreement holds.
        let f2 = field(2);
        let one_dim = |alg: &Arc<Algebra>| {
            Bimodule::new(
                alg.clone(),
                alg.clone(),
                vec![Matrix::identity(2, 1)],
                vec![Matrix::identity(2, 1)],
            )
            .unwrap()
        };
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: f2.clone(),
            m: one_dim(&f2),
            n: Some(one_dim(&f2)),
        };
        let ring = morita_context_ring(&spec).unwrap();
        assert_eq!(ring.lambda().dim(), 4);
        assert!(ring.lambda().validate().is_ok());
        assert!(!ring.setup().square_zero());
        assert!(ring.setup().eta_is_zero());

        let ctx = ModCtx::new(ring.lambda().clone());
        let modules = enumerate_modules(ring.lambda(), 2, 1 << 20).unwrap();
        let setup = ring.setup();
        for v in &modules {
            let e = lambda_to_pair(&ring, v).unwrap();
            let back = pair_to_lambda(&ring, &e).unwrap();
            assert_eq!(back.content_key(), v.content_key());
        }
        for v in &modules {
            for w in &modules {
                let ev = lambda_to_pair(&ring, v).unwrap();
                let ew = lambda_to_pair(&ring, w).unwrap();
                let over_ring = crate::module::ext_dim(&ctx, 1, v, w);
                let over_pairs = ext_dim_ext(setup, 1, &ev, &ew);
                assert_eq!(over_ring, over_pairs);
            }
        }
    }

    #[test]
    fn identity_comma_bridge_reproduces_the_corner_picture() {
        let f2 = field(2);
        let spec = CommaSpec {
            c: f2.clone(),
            d: f2.clone(),
            g: Bimodule::regular(&f2),
        };
        let bridge = comma_bridge(&spec).unwrap();
        assert!(bridge.setup.square_zero());
        let base_universe: Vec<Module> = enumerate_modules(&bridge.product, 2, 1 << 20)
            .unwrap()
            .into_iter()
            .filter(|m| (0..2).all(|i| m.act(i).rank() <= 1))
            .collect();
        let ext_universe =
            enumerate_ext_objects(&bridge.setup, &base_universe, 1 << 20).unwrap();
        assert_eq!(ext_universe.len(), 5);

        // The componentwise class (projectives; projectives) over the
        // product equals the product's projectives, and the transported
        // pair from ((proj, all), (proj, all)) is a cotorsion pair.
        let mcat = ModCat::new(bridge.product.clone());
        let ecat = ExtCat::new(bridge.setup.clone());
        let c_proj: Vec<Module> = enumerate_modules(&f2, 2, 1 << 20)
            .unwrap()
            .into_iter()
            .filter(|m| crate::module::is_projective(m).unwrap())
            .collect();
        let listed = ModFamily::Listed(componentwise_members(&bridge, &c_proj, &c_proj));
        let lm = mod_family_mask(&mcat, &listed, &base_universe).unwrap();
        let pm = mod_family_mask(&mcat, &ModFamily::Projectives, &base_universe).unwrap();
        assert_eq!(lm, pm);

        let left = ext_family_mask(
            &ecat,
            &mcat,
            &ExtFamily::Delta(listed),
            &ext_universe,
            Some(&base_universe),
        )
        .unwrap();
        let right = ext_family_mask(
            &ecat,
            &mcat,
            &ExtFamily::UInv(ModFamily::All),
            &ext_universe,
            Some(&base_universe),
        )
        .unwrap();
        let rep = check_pair(&ecat, &ext_universe, &left, &right, &PairOptions::default())
            .unwrap();
        assert!(rep.is_cotorsion_pair());
        assert_eq!(rep.hereditary, Some(true));
    }

    #[test]
    fn zero_functor_comma_bridge_degenerates() {
        let f2 = field(2);
        let l0 = dual_numbers();
        let spec = CommaSpec {
            c: f2.clone(),
            d: l0.clone(),
            g: Bimodule::new(l0.clone(), f2.clone(), vec![Matrix::zero(2, 0, 0); 2], vec![
                Matrix::zero(2, 0, 0),
            ])
            .unwrap(),
        };
        let bridge = comma_bridge(&spec).unwrap();
        let base_universe =
            enumerate_modules(&bridge.product, 2, 1 << 22).unwrap();
        let ext_universe =
            enumerate_ext_objects(&bridge.setup, &base_universe, 1 << 20).unwrap();
        // Zero endofunctor: every object has zero structure, one per base
        // class, and the structure-mono class is everything.
        assert_eq!(ext_universe.len(), base_universe.len());
        let mcat = ModCat::new(bridge.product.clone());
        let ecat = ExtCat::new(bridge.setup.clone());
        let mask = ext_family_mask(
            &ecat,
            &mcat,
            &ExtFamily::Delta(ModFamily::All),
            &ext_universe,
            Some(&base_universe),
        )
        .unwrap();
        assert!(mask.iter().all(|&b| b));
    }

    #[test]
    fn dictionary_rejects_foreign_objects() {
        let f2 = field(2);
        let ring = trivial_extension_ring(&f2, &Bimodule::regular(&f2), None).unwrap();
        let foreign = crate::module::free_module(&a2(), 1).module;
        assert!(lambda_to_pair(&ring, &foreign).is_err());
        let other_setup_ring = {
            let (prod, _) = direct_product(&f2, &f2).unwrap();
            let corner = Bimodule::new(
                prod.clone(),
                prod.clone(),
                vec![Matrix::zero(2, 1, 1), Matrix::identity(2, 1)],
                vec![Matrix::identity(2, 1), Matrix::zero(2, 1, 1)],
            )
            .unwrap();
            trivial_extension_ring(&prod, &corner, None).unwrap()
        };
        let z = z_obj(
            other_setup_ring.setup(),
            &crate::module::free_module(other_setup_ring.setup().algebra(), 1).module,
        );
        assert!(pair_to_lambda(&ring, &z).is_err());
    }

    #[test]
    fn dual_numbers_arise_as_the_square_zero_extension_and_match_their_pairs() {
        // The square-zero extension of F₂ by itself is the dual numbers;
        // its module category matches the extension category over the
        // regular bimodule with zero deformation.
        let f2 = field(2);
        let ring = trivial_extension_ring(&f2, &Bimodule::regular(&f2), None).unwrap();
        let ctx = ModCtx::new(ring.lambda().clone());
        let modules = enumerate_modules(ring.lambda(), 2, 1 << 20).unwrap();
        let setup = ring.setup();
        // The bimodule square M ⊗ M ≅ k is nonzero here; the zero
        // deformation still makes every structure identity hold.
        assert!(!setup.square_zero());
        assert!(setup.eta_is_zero());
        for v in &modules {
            for w in &modules {
                let ev = lambda_to_pair(&ring, v).unwrap();
                let ew = lambda_to_pair(&ring, w).unwrap();
                for degree in 1..=3 {
                    assert_eq!(
                        crate::module::ext_dim(&ctx, degree, v, w),
                        ext_dim_ext(setup, degree, &ev, &ew),
                    );
                }
            }
        }
        // Nontrivial sanity anchor: the simple over the dual numbers has
        // all higher self-extensions one-dimensional.
        let simple = modules
            .iter()
            .find(|m| m.dim() == 1)
            .expect("the simple module is enumerated");
        assert_eq!(crate::module::ext_dim(&ctx, 1, simple, simple), 1);
        assert_eq!(crate::module::ext_dim(&ctx, 2, simple, simple), 1);
    }

    #[test]
    fn assembled_rings_reject_mismatched_pieces() {
        let f2 = field(2);
        let l0 = dual_numbers();
        assert!(trivial_extension_ring(&f2, &Bimodule::regular(&l0), None).is_err());
        let mu = BimoduleMul::regular(&l0);
        assert!(trivial_extension_ring(&f2, &Bimodule::regular(&f2), Some(&mu)).is_err());
        let spec = MoritaContextSpec {
            a: f2.clone(),
            b: l0.clone(),
            m: Bimodule::regular(&f2),
            n: None,
        };
        assert!(morita_context_ring(&spec).is_err());
        let spec = CommaSpec {
            c: f2.clone(),
            d: l0.clone(),
            g: Bimodule::regular(&f2),
        };
        assert!(comma_bridge(&spec).is_err());
    }
}
