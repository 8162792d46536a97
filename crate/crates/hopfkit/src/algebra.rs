//! Finite-dimensional associative algebras, bimodules, and balanced tensor
//! products over an exact field.
//!
//! An algebra is presented by its multiplication as one matrix
//! `mult: A ⊗ A -> A` (column (i,j) holds the coordinates of e_i e_j)
//! together with the unit vector. A bimodule carries two action matrices
//! `left_act: A ⊗ M -> M` and `right_act: M ⊗ B -> M`. Every law is then a
//! matrix identity built from composition and Kronecker products, so axiom
//! checks report exact witnesses.
//!
//! The balanced tensor product P ⊗_B Q is computed as the cokernel of the
//! balancing map p ⊗ b ⊗ q -> pb ⊗ q - p ⊗ bq, with a deterministic
//! projection and section derived from the reduced row basis of the
//! balancing subspace; all induced maps between balanced tensors are pushed
//! through these projections, which keeps byte-identical outputs across
//! runs.

use crate::check::CheckReport;
use crate::exactla::{quotient_by_span, ExactMatrix, ExactField};
use std::fmt;

/// Errors raised by constructors and balanced-tensor plumbing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    /// Two structures were combined over different algebras or fields.
    AlgebraMismatch(String),
    /// A matrix had the wrong shape for the requested role.
    ShapeMismatch { role: String, expected: (usize, usize), got: (usize, usize) },
    /// A map did not vanish on the balancing subspace; the index is the
    /// offending generator column of the balancing map.
    NotBalanced { generator: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::AlgebraMismatch(what) => write!(f, "algebra mismatch: {}", what),
            AlgebraError::ShapeMismatch { role, expected, got } => write!(
                f,
                "shape mismatch for {}: expected {}x{}, got {}x{}",
                role, expected.0, expected.1, got.0, got.1
            ),
            AlgebraError::NotBalanced { generator } => {
                write!(f, "map is not balanced: fails on balancing generator {}", generator)
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

/// A finite-dimensional unital associative algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    pub field: ExactField,
    pub dim: usize,
    /// Multiplication A ⊗ A -> A; column i*dim+j holds e_i e_j.
    pub mult: ExactMatrix,
    /// Unit element as a column vector.
    pub unit: ExactMatrix,
}

impl Algebra {
    pub fn new(field: ExactField, dim: usize, mult: ExactMatrix, unit: ExactMatrix) -> Result<Self, AlgebraError> {
        if (mult.rows, mult.cols) != (dim, dim * dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "multiplication".into(),
                expected: (dim, dim * dim),
                got: (mult.rows, mult.cols),
            });
        }
        if (unit.rows, unit.cols) != (dim, 1) {
            return Err(AlgebraError::ShapeMismatch {
                role: "unit".into(),
                expected: (dim, 1),
                got: (unit.rows, unit.cols),
            });
        }
        Ok(Algebra { field, dim, mult, unit })
    }

    /// Builds an algebra from structure constants: `table(i, j)` lists the
    /// coordinates of e_i e_j.
    pub fn from_table(field: ExactField, dim: usize, unit: &[i64], table: &dyn Fn(usize, usize) -> Vec<i64>) -> Self {
        let mut mult = ExactMatrix::zeros(field, dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let coeffs = table(i, j);
                assert_eq!(coeffs.len(), dim, "structure constant row has wrong length");
                for (k, &c) in coeffs.iter().enumerate() {
                    mult.set(k, i * dim + j, field.from_i64(c));
                }
            }
        }
        let unit = ExactMatrix::col_from_i64(field, unit);
        Algebra::new(field, dim, mult, unit).expect("shapes are consistent by construction")
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: ExactField) -> Self {
        Algebra::from_table(field, 1, &[1], &|_, _| vec![1])
    }

    /// Matrix of left multiplication by the element `v`.
    pub fn left_mult_by(&self, v: &ExactMatrix) -> ExactMatrix {
        self.mult.mul(&v.kron(&ExactMatrix::identity(self.field, self.dim)))
    }

    /// Matrix of right multiplication by the element `v`.
    pub fn right_mult_by(&self, v: &ExactMatrix) -> ExactMatrix {
        self.mult.mul(&ExactMatrix::identity(self.field, self.dim).kron(v))
    }

    fn basis_vector(&self, i: usize) -> ExactMatrix {
        let mut v = ExactMatrix::zeros(self.field, self.dim, 1);
        v.set(i, 0, self.field.one());
        v
    }

    /// Left multiplication by the i-th basis element.
    pub fn left_mult_basis(&self, i: usize) -> ExactMatrix {
        self.left_mult_by(&self.basis_vector(i))
    }

    /// Right multiplication by the i-th basis element.
    pub fn right_mult_basis(&self, i: usize) -> ExactMatrix {
        self.right_mult_by(&self.basis_vector(i))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        let swap = ExactMatrix::swap_map(self.field, d, d);
        self.mult == self.mult.mul(&swap)
    }

    /// Verifies associativity and both unit laws; witnesses are reported as
    /// (inputs..., output coordinate) index tuples.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let d = self.dim;
        let id = ExactMatrix::identity(self.field, d);
        let assoc_l = self.mult.mul(&self.mult.kron(&id));
        let assoc_r = self.mult.mul(&id.kron(&self.mult));
        report.expect_identity("associativity", &assoc_l, &assoc_r, &[d, d, d], &[d]);
        let unit_l = self.mult.mul(&self.unit.kron(&id));
        report.expect_identity("left unit", &unit_l, &id, &[d], &[d]);
        let unit_r = self.mult.mul(&id.kron(&self.unit));
        report.expect_identity("right unit", &unit_r, &id, &[d], &[d]);
        report
    }
}

/// A unital algebra embedding B -> A presented by an explicit matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraInclusion {
    pub sub: Algebra,
    pub amb: Algebra,
    /// Embedding matrix, amb.dim x sub.dim, of full column rank.
    pub embed: ExactMatrix,
}

impl AlgebraInclusion {
    pub fn new(sub: Algebra, amb: Algebra, embed: ExactMatrix) -> Result<Self, AlgebraError> {
        if sub.field != amb.field {
            return Err(AlgebraError::AlgebraMismatch("inclusion across different fields".into()));
        }
        if (embed.rows, embed.cols) != (amb.dim, sub.dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "embedding".into(),
                expected: (amb.dim, sub.dim),
                got: (embed.rows, embed.cols),
            });
        }
        Ok(AlgebraInclusion { sub, amb, embed })
    }

    /// The ground field embedded as the span of the unit of A.
    pub fn ground(amb: Algebra) -> Self {
        let sub = Algebra::ground(amb.field);
        let embed = amb.unit.clone();
        AlgebraInclusion { sub, amb, embed }
    }

    /// Checks injectivity, unit preservation, and multiplicativity.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("subalgebra", self.sub.check());
        report.absorb("ambient", self.amb.check());
        if self.embed.rank() != self.sub.dim {
            report.fail("embedding injectivity", vec![self.embed.rank(), self.sub.dim]);
        }
        let unit_image = self.embed.mul(&self.sub.unit);
        report.expect_identity("unit preservation", &unit_image, &self.amb.unit, &[1], &[self.amb.dim]);
        let lhs = self.embed.mul(&self.sub.mult);
        let rhs = self.amb.mult.mul(&self.embed.kron(&self.embed));
        report.expect_identity(
            "multiplicativity",
            &lhs,
            &rhs,
            &[self.sub.dim, self.sub.dim],
            &[self.amb.dim],
        );
        report
    }
}

/// An (A, B)-bimodule with explicit action matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimodule {
    pub left: Algebra,
    pub right: Algebra,
    pub dim: usize,
    /// Left action A ⊗ M -> M.
    pub left_act: ExactMatrix,
    /// Right action M ⊗ B -> M.
    pub right_act: ExactMatrix,
}

impl Bimodule {
    pub fn new(
        left: Algebra,
        right: Algebra,
        dim: usize,
        left_act: ExactMatrix,
        right_act: ExactMatrix,
    ) -> Result<Self, AlgebraError> {
        if left.field != right.field {
            return Err(AlgebraError::AlgebraMismatch("bimodule across different fields".into()));
        }
        if (left_act.rows, left_act.cols) != (dim, left.dim * dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "left action".into(),
                expected: (dim, left.dim * dim),
                got: (left_act.rows, left_act.cols),
            });
        }
        if (right_act.rows, right_act.cols) != (dim, dim * right.dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "right action".into(),
                expected: (dim, dim * right.dim),
                got: (right_act.rows, right_act.cols),
            });
        }
        Ok(Bimodule { left, right, dim, left_act, right_act })
    }

    /// A as the regular (A, A)-bimodule.
    pub fn regular(alg: &Algebra) -> Self {
        Bimodule {
            left: alg.clone(),
            right: alg.clone(),
            dim: alg.dim,
            left_act: alg.mult.clone(),
            right_act: alg.mult.clone(),
        }
    }

    /// A left A-module, modelled as an (A, k)-bimodule with the scalar
    /// right action.
    pub fn left_module(alg: &Algebra, dim: usize, act: ExactMatrix) -> Result<Self, AlgebraError> {
        let ground = Algebra::ground(alg.field);
        let right_act = ExactMatrix::identity(alg.field, dim);
        Bimodule::new(alg.clone(), ground, dim, act, right_act)
    }

    /// The ambient algebra A as an (A, B)-bimodule along an inclusion.
    pub fn ambient_left(inc: &AlgebraInclusion) -> Self {
        let a = &inc.amb;
        let id = ExactMatrix::identity(a.field, a.dim);
        let right_act = a.mult.mul(&id.kron(&inc.embed));
        Bimodule {
            left: a.clone(),
            right: inc.sub.clone(),
            dim: a.dim,
            left_act: a.mult.clone(),
            right_act,
        }
    }

    /// The ambient algebra A as a (B, A)-bimodule along an inclusion.
    pub fn ambient_right(inc: &AlgebraInclusion) -> Self {
        let a = &inc.amb;
        let id = ExactMatrix::identity(a.field, a.dim);
        let left_act = a.mult.mul(&inc.embed.kron(&id));
        Bimodule {
            left: inc.sub.clone(),
            right: a.clone(),
            dim: a.dim,
            left_act,
            right_act: a.mult.clone(),
        }
    }

    /// Restricts the right action along an inclusion into the current
    /// right-acting algebra.
    pub fn restrict_right(&self, inc: &AlgebraInclusion) -> Result<Self, AlgebraError> {
        if inc.amb != self.right {
            return Err(AlgebraError::AlgebraMismatch(
                "restriction along an inclusion into a different algebra".into(),
            ));
        }
        let id = ExactMatrix::identity(self.left.field, self.dim);
        Bimodule::new(
            self.left.clone(),
            inc.sub.clone(),
            self.dim,
            self.left_act.clone(),
            self.right_act.mul(&id.kron(&inc.embed)),
        )
    }

    /// Restricts the left action along an inclusion into the current
    /// left-acting algebra.
    pub fn restrict_left(&self, inc: &AlgebraInclusion) -> Result<Self, AlgebraError> {
        if inc.amb != self.left {
            return Err(AlgebraError::AlgebraMismatch(
                "restriction along an inclusion into a different algebra".into(),
            ));
        }
        let id = ExactMatrix::identity(self.left.field, self.dim);
        Bimodule::new(
            inc.sub.clone(),
            self.right.clone(),
            self.dim,
            self.left_act.mul(&inc.embed.kron(&id)),
            self.right_act.clone(),
        )
    }

    /// Left action by the i-th basis element of the left algebra.
    pub fn left_act_basis(&self, i: usize) -> ExactMatrix {
        let mut v = ExactMatrix::zeros(self.left.field, self.left.dim, 1);
        v.set(i, 0, self.left.field.one());
        self.left_act.mul(&v.kron(&ExactMatrix::identity(self.left.field, self.dim)))
    }

    /// Right action by the j-th basis element of the right algebra.
    pub fn right_act_basis(&self, j: usize) -> ExactMatrix {
        let mut v = ExactMatrix::zeros(self.right.field, self.right.dim, 1);
        v.set(j, 0, self.right.field.one());
        self.right_act.mul(&ExactMatrix::identity(self.right.field, self.dim).kron(&v))
    }

    /// Verifies that both actions are unital, associative, and commute.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let f = self.left.field;
        let (da, db, dm) = (self.left.dim, self.right.dim, self.dim);
        let id_a = ExactMatrix::identity(f, da);
        let id_b = ExactMatrix::identity(f, db);
        let id_m = ExactMatrix::identity(f, dm);

        let lu = self.left_act.mul(&self.left.unit.kron(&id_m));
        report.expect_identity("left action unital", &lu, &id_m, &[dm], &[dm]);
        let la1 = self.left_act.mul(&self.left.mult.kron(&id_m));
        let la2 = self.left_act.mul(&id_a.kron(&self.left_act));
        report.expect_identity("left action associative", &la1, &la2, &[da, da, dm], &[dm]);

        let ru = self.right_act.mul(&id_m.kron(&self.right.unit));
        report.expect_identity("right action unital", &ru, &id_m, &[dm], &[dm]);
        let ra1 = self.right_act.mul(&self.right_act.kron(&id_b));
        let ra2 = self.right_act.mul(&id_m.kron(&self.right.mult));
        report.expect_identity("right action associative", &ra1, &ra2, &[dm, db, db], &[dm]);

        let c1 = self.right_act.mul(&self.left_act.kron(&id_b));
        let c2 = self.left_act.mul(&id_a.kron(&self.right_act));
        report.expect_identity("actions commute", &c1, &c2, &[da, dm, db], &[dm]);
        report
    }
}

/// A map of (A, B)-bimodules presented by its matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BimoduleMap {
    pub src: Bimodule,
    pub dst: Bimodule,
    pub matrix: ExactMatrix,
}

impl BimoduleMap {
    pub fn new(src: Bimodule, dst: Bimodule, matrix: ExactMatrix) -> Result<Self, AlgebraError> {
        if src.left != dst.left || src.right != dst.right {
            return Err(AlgebraError::AlgebraMismatch(
                "bimodule map between modules over different algebras".into(),
            ));
        }
        if (matrix.rows, matrix.cols) != (dst.dim, src.dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "bimodule map".into(),
                expected: (dst.dim, src.dim),
                got: (matrix.rows, matrix.cols),
            });
        }
        Ok(BimoduleMap { src, dst, matrix })
    }

    /// Verifies equivariance for both actions.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let f = self.src.left.field;
        let (da, db) = (self.src.left.dim, self.src.right.dim);
        let id_a = ExactMatrix::identity(f, da);
        let id_b = ExactMatrix::identity(f, db);
        let l1 = self.matrix.mul(&self.src.left_act);
        let l2 = self.dst.left_act.mul(&id_a.kron(&self.matrix));
        report.expect_identity("left equivariance", &l1, &l2, &[da, self.src.dim], &[self.dst.dim]);
        let r1 = self.matrix.mul(&self.src.right_act);
        let r2 = self.dst.right_act.mul(&self.matrix.kron(&id_b));
        report.expect_identity("right equivariance", &r1, &r2, &[self.src.dim, db], &[self.dst.dim]);
        report
    }
}

/// The balanced tensor product P ⊗_B Q with its quotient data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorQuotient {
    /// The quotient as a (left(P), right(Q))-bimodule.
    pub bim: Bimodule,
    /// Projection from the plain tensor product P ⊗ Q onto the quotient.
    pub proj: ExactMatrix,
    /// A linear section of `proj` (proj * section = id).
    pub section: ExactMatrix,
    /// Columns spanning the balancing subspace inside P ⊗ Q.
    pub balancing: ExactMatrix,
}

/// Computes P ⊗_B Q as the cokernel of p ⊗ b ⊗ q -> pb ⊗ q - p ⊗ bq.
///
/// The middle algebras must agree exactly. The quotient's actions are the
/// descended outer actions of P and Q.
pub fn tensor_over(p: &Bimodule, q: &Bimodule) -> Result<TensorQuotient, AlgebraError> {
    if p.right != q.left {
        return Err(AlgebraError::AlgebraMismatch(
            "balanced tensor product over mismatched middle algebras".into(),
        ));
    }
    let f = p.left.field;
    let id_p = ExactMatrix::identity(f, p.dim);
    let id_q = ExactMatrix::identity(f, q.dim);
    let balancing = p
        .right_act
        .kron(&id_q)
        .sub(&id_p.kron(&q.left_act));
    let quo = quotient_by_span(&balancing);
    let dim = quo.proj.rows;

    let id_a = ExactMatrix::identity(f, p.left.dim);
    let id_c = ExactMatrix::identity(f, q.right.dim);
    let proj_l = quo.proj.mul_kron(&p.left_act, &id_q);
    let proj_r = quo.proj.mul_kron(&id_p, &q.right_act);
    assert!(
        proj_l.mul_kron(&id_a, &balancing).is_zero(),
        "left action does not descend to the balanced tensor product"
    );
    assert!(
        proj_r.mul_kron(&balancing, &id_c).is_zero(),
        "right action does not descend to the balanced tensor product"
    );
    let left_act = proj_l.mul_kron(&id_a, &quo.section);
    let right_act = proj_r.mul_kron(&quo.section, &id_c);
    let bim = Bimodule::new(p.left.clone(), q.right.clone(), dim, left_act, right_act)?;
    Ok(TensorQuotient {
        bim,
        proj: quo.proj,
        section: quo.section,
        balancing,
    })
}

/// Descends a map defined on the plain tensor product to the balanced
/// quotient: given f: P ⊗ Q -> W vanishing on the balancing subspace,
/// returns the induced map on P ⊗_B Q. Fails with the witnessing balancing
/// generator otherwise.
pub fn induce_on_quotient(f: &ExactMatrix, t: &TensorQuotient) -> Result<ExactMatrix, AlgebraError> {
    let probe = f.mul(&t.balancing);
    for c in 0..probe.cols {
        if !(0..probe.rows).all(|r| probe.get(r, c).is_zero()) {
            return Err(AlgebraError::NotBalanced { generator: c });
        }
    }
    Ok(f.mul(&t.section))
}

/// Basis of the space of (A, B)-bimodule maps P -> Q, canonically ordered.
///
/// The equivariance constraints for each basis element of A and B are
/// stacked into one homogeneous system on the matrix entries (flattened
/// row-major); its canonical kernel basis is reshaped back into maps.
pub fn bimodule_hom_basis(p: &Bimodule, q: &Bimodule) -> Result<Vec<BimoduleMap>, AlgebraError> {
    if p.left != q.left || p.right != q.right {
        return Err(AlgebraError::AlgebraMismatch(
            "hom basis between bimodules over different algebras".into(),
        ));
    }
    let f = p.left.field;
    let (dp, dq) = (p.dim, q.dim);
    let id_p = ExactMatrix::identity(f, dp);
    let id_q = ExactMatrix::identity(f, dq);
    let mut rows: Vec<ExactMatrix> = Vec::new();
    for i in 0..p.left.dim {
        let lp = p.left_act_basis(i);
        let lq = q.left_act_basis(i);
        // F L - L' F = 0, vectorized row-major: (I ⊗ Lᵀ - L' ⊗ I) vec F.
        rows.push(id_q.kron(&lp.transpose()).sub(&lq.kron(&id_p)));
    }
    for j in 0..p.right.dim {
        let rp = p.right_act_basis(j);
        let rq = q.right_act_basis(j);
        rows.push(id_q.kron(&rp.transpose()).sub(&rq.kron(&id_p)));
    }
    let system = match rows.len() {
        0 => ExactMatrix::zeros(f, 0, dq * dp),
        _ => {
            let mut acc = rows[0].clone();
            for r in &rows[1..] {
                acc = acc.vstack(r);
            }
            acc
        }
    };
    let kernel = system.kernel();
    let mut maps = Vec::new();
    for k in 0..kernel.cols {
        let mat = ExactMatrix::from_fn(f, dq, dp, |r, c| kernel.get(r * dp + c, k).clone());
        maps.push(BimoduleMap::new(p.clone(), q.clone(), mat)?);
    }
    Ok(maps)
}

/// Membership test: does the column vector v lie in the column span of b?
pub fn in_span(b: &ExactMatrix, v: &ExactMatrix) -> bool {
    b.solve(v).is_some()
}
