//! Finite-dimensional associative `F_p`-algebras given by structure constants.
//!
//! An algebra is a basis `b_0, ..., b_{d-1}`, a table `mul[i][j]` holding the
//! coordinates of `b_i * b_j`, and a unit vector. Multiplication of basis
//! elements is read as composition: in a path algebra, `b_i * b_j` traverses
//! `b_j` first, which matches the convention that left modules are
//! representations with maps acting on column vectors from the left.
//!
//! Construction only checks shapes; [`Algebra::validate`] returns a report
//! listing every violated associativity triple and unit failure instead of
//! erroring, so a bad table can be diagnosed in full rather than one defect
//! at a time.

// Structure-constant manipulation is index arithmetic by nature: i, j, k
// range over basis positions in several tables at once.
#![allow(clippy::needless_range_loop)]

use crate::error::{EngineError, LinalgError, StructureError};
use crate::linalg::{is_supported_prime, Matrix};
use crate::Result;
use std::sync::Arc;

/// A finite-dimensional associative algebra over `F_p`, by structure constants.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    p: u64,
    dim: usize,
    /// `mul[i][j]` = coordinates of `b_i * b_j` in the basis.
    mul: Vec<Vec<Vec<u64>>>,
    /// Coordinates of the unit element.
    unit: Vec<u64>,
    labels: Vec<String>,
    /// `left_mul[i]` is the matrix of `x -> b_i * x`.
    left_mul: Vec<Matrix>,
    /// `right_mul[j]` is the matrix of `x -> x * b_j`.
    right_mul: Vec<Matrix>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Algebra(dim {} over F_{}, basis [{}])",
            self.dim,
            self.p,
            self.labels.join(", ")
        )
    }
}

/// Outcome of checking the algebra axioms on a structure-constant table.
///
/// An empty report means the table really is a unital associative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    /// Basis triples `(i, j, k)` with `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub associativity_failures: Vec<(usize, usize, usize)>,
    /// Basis indices `i` where `1 * b_i != b_i` or `b_i * 1 != b_i`.
    pub unit_failures: Vec<usize>,
}

impl AlgebraReport {
    pub fn is_ok(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

impl Algebra {
    /// Builds an algebra from a `d x d x d` structure-constant table, a unit
    /// vector and basis labels (auto-generated when empty).
    ///
    /// # Errors
    ///
    /// Rejects a non-prime or oversized modulus and any shape defect. The
    /// algebra axioms themselves are *not* checked here — use
    /// [`Algebra::validate`], which reports all violations at once.
    pub fn new(
        p: u64,
        mul: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        labels: Vec<String>,
    ) -> Result<Arc<Algebra>> {
        if !is_supported_prime(p) {
            return Err(LinalgError::BadModulus { p }.into());
        }
        let dim = mul.len();
        if dim == 0 {
            return Err(StructureError::InvalidData {
                what: "algebra table",
                reason: "dimension must be positive".into(),
            }
            .into());
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != dim {
                return Err(StructureError::InvalidData {
                    what: "algebra table",
                    reason: format!("row {i} has {} entries, expected {dim}", row.len()),
                }
                .into());
            }
            for (j, cell) in row.iter().enumerate() {
                if cell.len() != dim {
                    return Err(StructureError::InvalidData {
                        what: "algebra table",
                        reason: format!(
                            "product ({i}, {j}) has {} coordinates, expected {dim}",
                            cell.len()
                        ),
                    }
                    .into());
                }
            }
        }
        if unit.len() != dim {
            return Err(StructureError::InvalidData {
                what: "algebra unit",
                reason: format!("unit has {} coordinates, expected {dim}", unit.len()),
            }
            .into());
        }
        let labels = if labels.is_empty() {
            (0..dim).map(|i| format!("b{i}")).collect()
        } else if labels.len() == dim {
            labels
        } else {
            return Err(StructureError::InvalidData {
                what: "algebra labels",
                reason: format!("{} labels for dimension {dim}", labels.len()),
            }
            .into());
        };
        let mul: Vec<Vec<Vec<u64>>> = mul
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.into_iter().map(|v| v % p).collect()).collect())
            .collect();
        let unit: Vec<u64> = unit.into_iter().map(|v| v % p).collect();
        let mut left_mul = Vec::with_capacity(dim);
        let mut right_mul = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut l = Matrix::zero(p, dim, dim);
            let mut r = Matrix::zero(p, dim, dim);
            for j in 0..dim {
                for k in 0..dim {
                    l.set(k, j, mul[i][j][k]);
                    r.set(k, j, mul[j][i][k]);
                }
            }
            left_mul.push(l);
            right_mul.push(r);
        }
        Ok(Arc::new(Algebra {
            p,
            dim,
            mul,
            unit,
            labels,
            left_mul,
            right_mul,
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    /// Matrix of left multiplication by basis element `i`.
    pub fn left_mul(&self, i: usize) -> &Matrix {
        &self.left_mul[i]
    }

    /// Matrix of right multiplication by basis element `i`.
    pub fn right_mul(&self, i: usize) -> &Matrix {
        &self.right_mul[i]
    }

    /// Coordinates of `x * y` for coordinate vectors `x`, `y`.
    pub fn mul_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi % self.p == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let c = xi % self.p * (yj % self.p) % self.p;
                if c == 0 {
                    continue;
                }
                for k in 0..self.dim {
                    out[k] = (out[k] + c * self.mul[i][j][k]) % self.p;
                }
            }
        }
        out
    }

    /// Checks associativity on all basis triples and the unit laws on all
    /// basis elements, returning every violation.
    pub fn validate(&self) -> AlgebraReport {
        let mut report = AlgebraReport::default();
        let basis: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| {
                let mut e = vec![0u64; self.dim];
                e[i] = 1 % self.p;
                e
            })
            .collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul_vec(&basis[i], &basis[j]);
                for k in 0..self.dim {
                    let left = self.mul_vec(&ij, &basis[k]);
                    let jk = self.mul_vec(&basis[j], &basis[k]);
                    let right = self.mul_vec(&basis[i], &jk);
                    if left != right {
                        report.associativity_failures.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..self.dim {
            let l = self.mul_vec(&self.unit, &basis[i]);
            let r = self.mul_vec(&basis[i], &self.unit);
            if l != basis[i] || r != basis[i] {
                report.unit_failures.push(i);
            }
        }
        report
    }

    /// The opposite algebra: same basis, multiplication reversed.
    pub fn opposite(&self) -> Arc<Algebra> {
        let mut mul = vec![vec![vec![0u64; self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                mul[i][j] = self.mul[j][i].clone();
            }
        }
        Algebra::new(self.p, mul, self.unit.clone(), self.labels.clone())
            .expect("opposite of a well-shaped table is well-shaped")
    }

    /// A compact byte encoding, used to key caches.
    pub fn content_key(&self) -> Vec<u8> {
        let mut key = Vec::new();
        key.extend_from_slice(&self.p.to_le_bytes());
        key.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for row in &self.mul {
            for cell in row {
                for &v in cell {
                    key.extend_from_slice(&(v as u32).to_le_bytes());
                }
            }
        }
        for &v in &self.unit {
            key.extend_from_slice(&(v as u32).to_le_bytes());
        }
        key
    }
}

/// Columns spanning the Jacobson radical of the algebra, computed exactly
/// by sweeping all `p^dim` elements and summing the nilpotent two-sided
/// ideals they generate (the radical is the largest nilpotent ideal, and a
/// sum of nilpotent ideals is nilpotent). Results are memoized per algebra
/// content.
///
/// When the element sweep would exceed an internal cap the zero subspace is
/// returned instead — a correct lower bound: callers use the radical only
/// to shrink generating sets, and an underestimate merely yields larger
/// (still valid) covers.
pub fn jacobson_radical(a: &Algebra) -> Matrix {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static MEMO: OnceLock<Mutex<HashMap<Vec<u8>, Matrix>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = a.content_key();
    if let Some(rad) = memo.lock().expect("radical memo poisoned").get(&key) {
        return rad.clone();
    }
    let rad = compute_radical(a);
    memo.lock()
        .expect("radical memo poisoned")
        .insert(key, rad.clone());
    rad
}

fn compute_radical(a: &Algebra) -> Matrix {
    const SWEEP_CAP: u128 = 1 << 14;
    let p = a.p();
    let n = a.dim();
    let zero = Matrix::zero(p, n, 0);
    let span = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(p)));
    match span {
        Some(s) if s <= SWEEP_CAP => {}
        _ => return zero,
    }
    let mut radical = zero;
    let mut coords = vec![0u64; n];
    'elements: loop {
        // Advance the odometer first, skipping the zero element.
        let mut pos = n;
        loop {
            if pos == 0 {
                break 'elements;
            }
            pos -= 1;
            coords[pos] += 1;
            if coords[pos] < p {
                break;
            }
            coords[pos] = 0;
        }
        let mut col = Matrix::zero(p, n, 1);
        for (i, &c) in coords.iter().enumerate() {
            col.set(i, 0, c);
        }
        if radical.cols() > 0 && radical.contains_columns(&col).expect("same rows") {
            continue;
        }
        let ideal = two_sided_ideal(a, &col);
        if ideal_is_nilpotent(a, &ideal) {
            radical = radical.hstack(&ideal).expect("same rows").column_space_basis();
        }
    }
    radical
}

/// Columns spanning the two-sided ideal generated by the given columns.
fn two_sided_ideal(a: &Algebra, seed: &Matrix) -> Matrix {
    let mut span = seed.column_space_basis();
    loop {
        let mut grew = false;
        let mut next = span.clone();
        for j in 0..span.cols() {
            let v: Vec<u64> = (0..a.dim()).map(|r| span.get(r, j)).collect();
            for t in 0..a.dim() {
                let mut e = vec![0u64; a.dim()];
                e[t] = 1;
                for prod in [a.mul_vec(&e, &v), a.mul_vec(&v, &e)] {
                    let mut col = Matrix::zero(a.p(), a.dim(), 1);
                    for (r, &c) in prod.iter().enumerate() {
                        col.set(r, 0, c);
                    }
                    if !next.contains_columns(&col).expect("same rows") {
                        next = next.hstack(&col).expect("same rows").column_space_basis();
                        grew = true;
                    }
                }
            }
        }
        span = next;
        if !grew {
            return span;
        }
    }
}

/// Whether the span of the given columns (assumed a two-sided ideal) is
/// nilpotent: its powers must strictly decrease to zero.
fn ideal_is_nilpotent(a: &Algebra, ideal: &Matrix) -> bool {
    let mut power = ideal.column_space_basis();
    loop {
        if power.cols() == 0 {
            return true;
        }
        let mut next = Matrix::zero(a.p(), a.dim(), 0);
        for j in 0..power.cols() {
            let u: Vec<u64> = (0..a.dim()).map(|r| power.get(r, j)).collect();
            for k in 0..ideal.cols() {
                let v: Vec<u64> = (0..a.dim()).map(|r| ideal.get(r, k)).collect();
                let prod = a.mul_vec(&u, &v);
                let mut col = Matrix::zero(a.p(), a.dim(), 1);
                for (r, &c) in prod.iter().enumerate() {
                    col.set(r, 0, c);
                }
                next = next.hstack(&col).expect("same rows");
            }
        }
        next = next.column_space_basis();
        if next.cols() >= power.cols() {
            return false;
        }
        power = next;
    }
}

/// Dimensions and offsets of the factors inside a direct product algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLayout {
    pub dims: Vec<usize>,
}

impl ProductLayout {
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The direct product `A x B`, with the basis of `A` first. Labels are
/// suffixed with the factor index.
pub fn direct_product(a: &Algebra, b: &Algebra) -> Result<(Arc<Algebra>, ProductLayout)> {
    if a.p != b.p {
        return Err(StructureError::IncompatibleAlgebras {
            op: "direct_product",
        }
        .into());
    }
    let d = a.dim + b.dim;
    let mut mul = vec![vec![vec![0u64; d]; d]; d];
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                mul[i][j][k] = a.mul[i][j][k];
            }
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            for k in 0..b.dim {
                mul[a.dim + i][a.dim + j][a.dim + k] = b.mul[i][j][k];
            }
        }
    }
    let mut unit = vec![0u64; d];
    unit[..a.dim].copy_from_slice(&a.unit);
    unit[a.dim..].copy_from_slice(&b.unit);
    let labels = a
        .labels
        .iter()
        .map(|l| format!("{l}@1"))
        .chain(b.labels.iter().map(|l| format!("{l}@2")))
        .collect();
    let alg = Algebra::new(a.p, mul, unit, labels)?;
    Ok((
        alg,
        ProductLayout {
            dims: vec![a.dim, b.dim],
        },
    ))
}

/// An arrow of a quiver between 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub from: usize,
    pub to: usize,
}

/// A quiver with monomial relations and a path-length bound.
///
/// Relations are paths written in traversal order (first arrow first). The
/// presentation is usable only if no path of length `max_path_length + 1`
/// survives the relations; otherwise the truncation would silently change
/// the algebra, and construction fails naming a surviving witness path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    /// Monomial relations: each is a composable sequence of arrow labels in
    /// traversal order.
    pub relations: Vec<Vec<String>>,
    pub max_path_length: usize,
}

/// A path in a quiver: arrow indices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Path {
    from: usize,
    to: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn label(&self, q: &QuiverPresentation) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.from + 1)
        } else {
            // Function-composition order: last traversed arrow first.
            self.arrows
                .iter()
                .rev()
                .map(|&a| q.arrows[a].label.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Whether the relation word occurs as a contiguous subpath.
    fn contains(&self, relation: &[usize]) -> bool {
        if relation.is_empty() || relation.len() > self.arrows.len() {
            return false;
        }
        self.arrows
            .windows(relation.len())
            .any(|w| w == relation)
    }
}

/// Builds the path algebra of a bound quiver with monomial relations.
///
/// Basis: the trivial paths `e_v`, then all relation-surviving paths of
/// length up to the bound, in breadth-first order. The product `b_i * b_j`
/// traverses `b_j` first; non-composable products are zero, and any
/// composable product longer than the bound is zero because admissibility
/// guarantees it contains a relation.
///
/// # Errors
///
/// Rejects unknown vertices or labels, non-composable relation words, and
/// presentations where a path of length `bound + 1` survives the relations
/// (reported with that witness path).
pub fn from_quiver(q: &QuiverPresentation) -> Result<Arc<Algebra>> {
    let p_field_err = |reason: String| StructureError::InvalidData {
        what: "quiver presentation",
        reason,
    };
    if q.vertices == 0 {
        return Err(p_field_err("quiver needs at least one vertex".into()).into());
    }
    for a in &q.arrows {
        if a.from == 0 || a.from > q.vertices || a.to == 0 || a.to > q.vertices {
            return Err(p_field_err(format!(
                "arrow `{}` joins vertices {} -> {}, outside 1..={}",
                a.label, a.from, a.to, q.vertices
            ))
            .into());
        }
    }
    // Resolve relation words to arrow-index sequences and check composability.
    let arrow_by_label = |label: &str| -> Result<usize> {
        q.arrows
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| p_field_err(format!("unknown arrow label `{label}`")).into())
    };
    let mut relations: Vec<Vec<usize>> = Vec::new();
    for rel in &q.relations {
        if rel.is_empty() {
            return Err(p_field_err("empty relation word".into()).into());
        }
        let idx: Vec<usize> = rel
            .iter()
            .map(|l| arrow_by_label(l))
            .collect::<Result<_>>()?;
        for w in idx.windows(2) {
            if q.arrows[w[0]].to != q.arrows[w[1]].from {
                return Err(p_field_err(format!(
                    "relation `{}` is not a composable path",
                    rel.join("*")
                ))
                .into());
            }
        }
        relations.push(idx);
    }
    // Breadth-first generation of surviving paths up to the bound, plus an
    // admissibility sweep at length bound + 1.
    let mut paths: Vec<Path> = (0..q.vertices)
        .map(|v| Path {
            from: v,
            to: v,
            arrows: vec![],
        })
        .collect();
    let mut frontier: Vec<Path> = paths.clone();
    for len in 1..=q.max_path_length + 1 {
        let mut next = Vec::new();
        for path in &frontier {
            for (ai, arrow) in q.arrows.iter().enumerate() {
                if arrow.from != path.to + 1 {
                    continue;
                }
                let mut ext = path.clone();
                ext.arrows.push(ai);
                ext.to = arrow.to - 1;
                if relations.iter().any(|r| ext.contains(r)) {
                    continue;
                }
                if len > q.max_path_length {
                    return Err(StructureError::NotAdmissible {
                        bound: q.max_path_length,
                        witness: ext.label(q),
                        len,
                    }
                    .into());
                }
                next.push(ext);
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let dim = paths.len();
    let find_path = |candidate: &Path| paths.iter().position(|p| p == candidate);
    let mut mul = vec![vec![vec![0u64; dim]; dim]; dim];
    for (i, pi) in paths.iter().enumerate() {
        for (j, pj) in paths.iter().enumerate() {
            // b_i * b_j: traverse p_j first, then p_i.
            if pj.to != pi.from {
                continue;
            }
            let mut arrows = pj.arrows.clone();
            arrows.extend_from_slice(&pi.arrows);
            let prod = Path {
                from: pj.from,
                to: pi.to,
                arrows,
            };
            if prod.arrows.len() > q.max_path_length
                || relations.iter().any(|r| prod.contains(r))
            {
                continue;
            }
            let k = find_path(&prod).ok_or_else(|| {
                p_field_err(format!(
                    "internal: product path `{}` missing from basis",
                    prod.label(q)
                ))
            })?;
            mul[i][j][k] = 1;
        }
    }
    let mut unit = vec![0u64; dim];
    for v in 0..q.vertices {
        unit[v] = 1;
    }
    let labels = paths.iter().map(|path| path.label(q)).collect();
    Algebra::new(2, mul, unit, labels)
}

/// Builds the path algebra over an arbitrary prime field.
pub fn from_quiver_over(q: &QuiverPresentation, p: u64) -> Result<Arc<Algebra>> {
    let a = from_quiver(q)?;
    if p == 2 {
        return Ok(a);
    }
    Algebra::new(
        p,
        (0..a.dim())
            .map(|i| (0..a.dim()).map(|j| a.mul[i][j].clone()).collect())
            .collect(),
        a.unit.clone(),
        a.labels.clone(),
    )
}

/// Searches for a unital algebra isomorphism `a -> b` by brute force over all
/// invertible `d x d` matrices, returning the first one found in
/// lexicographic order.
///
/// # Errors
///
/// Refuses when `p^(d^2)` exceeds the candidate budget.
pub fn find_algebra_iso(a: &Algebra, b: &Algebra, budget: u64) -> Result<Option<Matrix>> {
    if a.p != b.p || a.dim != b.dim {
        return Ok(None);
    }
    let p = a.p;
    let d = a.dim;
    let cells = d * d;
    let needed = (0..cells).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(p)));
    match needed {
        Some(n) if n <= u128::from(budget) => {}
        _ => {
            return Err(EngineError::EnumerationBlowup {
                what: format!("algebra isomorphisms in dimension {d}"),
                needed: needed.unwrap_or(u128::MAX),
                budget,
            }
            .into())
        }
    }
    let unit_a = Matrix::from_col(p, a.unit());
    let unit_b = Matrix::from_col(p, b.unit());
    let mut digits = vec![0u64; cells];
    loop {
        let mut t = Matrix::zero(p, d, d);
        for (idx, &v) in digits.iter().enumerate() {
            t.set(idx / d, idx % d, v);
        }
        if is_algebra_iso(a, b, &t, &unit_a, &unit_b) {
            return Ok(Some(t));
        }
        // Odometer increment.
        let mut pos = cells;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

fn is_algebra_iso(a: &Algebra, b: &Algebra, t: &Matrix, unit_a: &Matrix, unit_b: &Matrix) -> bool {
    if t.mul(unit_a).expect("shape") != *unit_b {
        return false;
    }
    match t.inverse() {
        Ok(Some(_)) => {}
        _ => return false,
    }
    let d = a.dim;
    for i in 0..d {
        for j in 0..d {
            let lhs = {
                let prod = Matrix::from_col(a.p, &a.mul[i][j]);
                t.mul(&prod).expect("shape")
            };
            let ti: Vec<u64> = (0..d).map(|k| t.get(k, i)).collect();
            let tj: Vec<u64> = (0..d).map(|k| t.get(k, j)).collect();
            let rhs = Matrix::from_col(b.p, &b.mul_vec(&ti, &tj));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `F_p` as a one-dimensional algebra.
    fn field(p: u64) -> Arc<Algebra> {
        Algebra::new(p, vec![vec![vec![1]]], vec![1], vec!["1".into()]).unwrap()
    }

    /// Dual numbers `k[x]/(x^2)` by explicit table.
    fn dual_numbers(p: u64) -> Arc<Algebra> {
        Algebra::new(
            p,
            vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![0, 0]],
            ],
            vec![1, 0],
            vec!["1".into(), "x".into()],
        )
        .unwrap()
    }

    fn a2_quiver() -> QuiverPresentation {
        QuiverPresentation {
            vertices: 2,
            arrows: vec![Arrow {
                label: "a".into(),
                from: 1,
                to: 2,
            }],
            relations: vec![],
            max_path_length: 1,
        }
    }

    #[test]
    fn field_and_dual_numbers_validate() {
        assert!(field(2).validate().is_ok());
        assert!(field(5).validate().is_ok());
        let d = dual_numbers(2);
        assert!(d.validate().is_ok());
        // x * x = 0.
        assert_eq!(d.mul_vec(&[0, 1], &[0, 1]), vec![0, 0]);
    }

    #[test]
    fn validate_reports_every_violation() {
        // u is idempotent and acts as a one-sided unit only; v*v = u but
        // v*u = 0, so associativity breaks at (1,1,1) and the claimed unit
        // fails on basis element 1.
        let bad = Algebra::new(
            2,
            vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 0], vec![1, 0]],
            ],
            vec![1, 0],
            vec![],
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_ok());
        assert!(report.associativity_failures.contains(&(1, 1, 1)));
        assert_eq!(report.unit_failures, vec![1]);
    }

    #[test]
    fn path_algebra_of_a2() {
        let a = from_quiver(&a2_quiver()).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
        assert!(a.validate().is_ok());
        let e1 = [1, 0, 0];
        let e2 = [0, 1, 0];
        let arr = [0, 0, 1];
        // a = a * e1 = e2 * a; the other composites vanish.
        assert_eq!(a.mul_vec(&arr, &e1), arr.to_vec());
        assert_eq!(a.mul_vec(&e2, &arr), arr.to_vec());
        assert_eq!(a.mul_vec(&e1, &arr), vec![0, 0, 0]);
        assert_eq!(a.mul_vec(&arr, &e2), vec![0, 0, 0]);
        assert_eq!(a.mul_vec(&arr, &arr), vec![0, 0, 0]);
        assert_eq!(a.unit(), &[1, 1, 0]);
    }

    #[test]
    fn loop_with_square_relation_gives_dual_numbers() {
        let q = QuiverPresentation {
            vertices: 1,
            arrows: vec![Arrow {
                label: "x".into(),
                from: 1,
                to: 1,
            }],
            relations: vec![vec!["x".into(), "x".into()]],
            max_path_length: 2,
        };
        let a = from_quiver(&q).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.validate().is_ok());
        let iso = find_algebra_iso(&a, &dual_numbers(2), 1 << 20).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn unbounded_loop_is_rejected_with_witness() {
        let q = QuiverPresentation {
            vertices: 1,
            arrows: vec![Arrow {
                label: "x".into(),
                from: 1,
                to: 1,
            }],
            relations: vec![],
            max_path_length: 2,
        };
        let err = from_quiver(&q).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not admissible"), "got: {msg}");
        assert!(msg.contains("x*x*x"), "witness path missing: {msg}");
    }

    #[test]
    fn opposite_is_involutive_and_flips_products() {
        let a = from_quiver(&a2_quiver()).unwrap();
        let op = a.opposite();
        assert!(op.validate().is_ok());
        let arr = [0, 0, 1];
        let e1 = [1, 0, 0];
        // In the opposite algebra e1 * a = a.
        assert_eq!(op.mul_vec(&e1, &arr), arr.to_vec());
        assert_eq!(op.opposite().mul_vec(&arr, &e1), a.mul_vec(&arr, &e1));
    }

    #[test]
    fn direct_product_of_fields() {
        let (prod, layout) = direct_product(&field(2), &field(2)).unwrap();
        assert_eq!(prod.dim(), 2);
        assert_eq!(layout.dims, vec![1, 1]);
        assert!(prod.validate().is_ok());
        assert_eq!(prod.unit(), &[1, 1]);
        // The two factors are orthogonal idempotents.
        assert_eq!(prod.mul_vec(&[1, 0], &[0, 1]), vec![0, 0]);
    }

    #[test]
    fn iso_search_distinguishes_semisimple_from_local() {
        let (prod, _) = direct_product(&field(2), &field(2)).unwrap();
        let iso = find_algebra_iso(&prod, &dual_numbers(2), 1 << 20).unwrap();
        assert_eq!(iso, None);
        let self_iso = find_algebra_iso(&prod, &prod, 1 << 20).unwrap();
        assert!(self_iso.is_some());
    }

    #[test]
    fn iso_search_respects_budget() {
        let a = from_quiver(&a2_quiver()).unwrap();
        let err = find_algebra_iso(&a, &a, 4).unwrap_err();
        assert!(err.to_string().contains("budget"));
    }
}
