//! Coalgebras, bialgebras, Hopf algebras, comodule algebras, and module
//! coalgebras.
//!
//! Comultiplication is stored as one matrix `comult: C -> C ⊗ C` whose
//! column i holds Δ(e_i) with the tensor legs flattened row-major; the
//! counit is a row vector. The antipode is not part of the input data: it
//! is found, when it exists, by solving the two antipode identities as one
//! linear system in the entries of S, which in the convolution algebra
//! End(H) pins down the two-sided inverse of the identity.
//!
//! Comodule structures are left-handed throughout: a coaction is a map
//! `ν: A -> H ⊗ A` and coinvariants are the kernel of ν - (1_H ⊗ -).

use crate::algebra::{Algebra, AlgebraError, AlgebraInclusion};
use crate::check::CheckReport;
use crate::exactla::{ExactField, ExactMatrix};
use std::fmt;

/// A finite-dimensional coassociative counital coalgebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coalgebra {
    pub field: ExactField,
    pub dim: usize,
    /// Comultiplication C -> C ⊗ C; column i holds Δ(e_i), legs flattened
    /// row-major.
    pub comult: ExactMatrix,
    /// Counit as a row vector.
    pub counit: ExactMatrix,
}

impl Coalgebra {
    pub fn new(
        field: ExactField,
        dim: usize,
        comult: ExactMatrix,
        counit: ExactMatrix,
    ) -> Result<Self, AlgebraError> {
        if (comult.rows, comult.cols) != (dim * dim, dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "comultiplication".into(),
                expected: (dim * dim, dim),
                got: (comult.rows, comult.cols),
            });
        }
        if (counit.rows, counit.cols) != (1, dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "counit".into(),
                expected: (1, dim),
                got: (counit.rows, counit.cols),
            });
        }
        Ok(Coalgebra { field, dim, comult, counit })
    }

    /// Builds a coalgebra from structure constants: `table(i)` is the
    /// dim x dim coefficient matrix of Δ(e_i) (entry (j,k) multiplies
    /// e_j ⊗ e_k).
    pub fn from_table(
        field: ExactField,
        dim: usize,
        counit: &[i64],
        table: &dyn Fn(usize) -> Vec<Vec<i64>>,
    ) -> Self {
        let mut comult = ExactMatrix::zeros(field, dim * dim, dim);
        for i in 0..dim {
            let coeffs = table(i);
            assert_eq!(coeffs.len(), dim, "comultiplication table has wrong height");
            for (j, row) in coeffs.iter().enumerate() {
                assert_eq!(row.len(), dim, "comultiplication table has wrong width");
                for (k, &c) in row.iter().enumerate() {
                    comult.set(j * dim + k, i, field.from_i64(c));
                }
            }
        }
        let counit_m = ExactMatrix::from_fn(field, 1, dim, |_, j| field.from_i64(counit[j]));
        Coalgebra::new(field, dim, comult, counit_m).expect("shapes consistent by construction")
    }

    /// The ground field as the trivial one-dimensional coalgebra.
    pub fn trivial(field: ExactField) -> Self {
        Coalgebra::from_table(field, 1, &[1], &|_| vec![vec![1]])
    }

    /// Verifies coassociativity and both counit laws.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let d = self.dim;
        let id = ExactMatrix::identity(self.field, d);
        let l = self.comult.kron(&id).mul(&self.comult);
        let r = id.kron(&self.comult).mul(&self.comult);
        report.expect_identity("coassociativity", &l, &r, &[d], &[d, d, d]);
        let cl = self.counit.kron(&id).mul(&self.comult);
        report.expect_identity("left counit", &cl, &id, &[d], &[d]);
        let cr = id.kron(&self.counit).mul(&self.comult);
        report.expect_identity("right counit", &cr, &id, &[d], &[d]);
        report
    }
}

/// An algebra and coalgebra on the same space with compatible structures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bialgebra {
    pub alg: Algebra,
    pub coalg: Coalgebra,
}

impl Bialgebra {
    pub fn new(alg: Algebra, coalg: Coalgebra) -> Result<Self, AlgebraError> {
        if alg.field != coalg.field {
            return Err(AlgebraError::AlgebraMismatch("bialgebra across different fields".into()));
        }
        if alg.dim != coalg.dim {
            return Err(AlgebraError::ShapeMismatch {
                role: "bialgebra carrier".into(),
                expected: (alg.dim, alg.dim),
                got: (coalg.dim, coalg.dim),
            });
        }
        Ok(Bialgebra { alg, coalg })
    }

    pub fn field(&self) -> ExactField {
        self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    /// Verifies the algebra, the coalgebra, and that Δ and ε are algebra
    /// morphisms.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("algebra", self.alg.check());
        report.absorb("coalgebra", self.coalg.check());
        let d = self.dim();
        let f = self.field();
        let id = ExactMatrix::identity(f, d);
        let swap = ExactMatrix::swap_map(f, d, d);

        let lhs = self.coalg.comult.mul(&self.alg.mult);
        let rhs = self
            .alg
            .mult
            .kron(&self.alg.mult)
            .mul(&id.kron(&swap).kron(&id))
            .mul(&self.coalg.comult.kron(&self.coalg.comult));
        report.expect_identity("comultiplication is multiplicative", &lhs, &rhs, &[d, d], &[d, d]);

        let lhs = self.coalg.counit.mul(&self.alg.mult);
        let rhs = self.coalg.counit.kron(&self.coalg.counit);
        report.expect_identity("counit is multiplicative", &lhs, &rhs, &[d, d], &[1]);

        let lhs = self.coalg.comult.mul(&self.alg.unit);
        let rhs = self.alg.unit.kron(&self.alg.unit);
        report.expect_identity("comultiplication is unital", &lhs, &rhs, &[1], &[d, d]);

        let lhs = self.coalg.counit.mul(&self.alg.unit);
        let rhs = ExactMatrix::identity(f, 1);
        report.expect_identity("counit is unital", &lhs, &rhs, &[1], &[1]);
        report
    }
}

/// A bialgebra with its antipode.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HopfAlgebra {
    pub bialg: Bialgebra,
    pub antipode: ExactMatrix,
}

impl HopfAlgebra {
    /// Verifies both antipode identities and the classical consequences
    /// S(1) = 1 and ε ∘ S = ε.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("bialgebra", self.bialg.check());
        let d = self.bialg.dim();
        let f = self.bialg.field();
        let id = ExactMatrix::identity(f, d);
        let b = &self.bialg;
        let target = b.alg.unit.mul(&b.coalg.counit);

        let left = b.alg.mult.mul(&self.antipode.kron(&id)).mul(&b.coalg.comult);
        report.expect_identity("left antipode identity", &left, &target, &[d], &[d]);
        let right = b.alg.mult.mul(&id.kron(&self.antipode)).mul(&b.coalg.comult);
        report.expect_identity("right antipode identity", &right, &target, &[d], &[d]);

        let s_unit = self.antipode.mul(&b.alg.unit);
        report.expect_identity("antipode fixes the unit", &s_unit, &b.alg.unit, &[1], &[d]);
        let eps_s = b.coalg.counit.mul(&self.antipode);
        report.expect_identity("counit absorbs the antipode", &eps_s, &b.coalg.counit, &[d], &[1]);
        report
    }
}

/// Error returned when a bialgebra has no antipode.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NoAntipode;

impl fmt::Display for NoAntipode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the identity has no convolution inverse: no antipode exists")
    }
}

impl std::error::Error for NoAntipode {}

/// Solves the antipode identities m(S ⊗ id)Δ = ιε = m(id ⊗ S)Δ as one
/// linear system in the entries of S.
///
/// If the system is consistent its solution is unique (a two-sided inverse
/// in the convolution algebra), so no choice is involved; inconsistency
/// means no antipode exists.
pub fn antipode(b: &Bialgebra) -> Result<HopfAlgebra, NoAntipode> {
    let d = b.dim();
    let f = b.field();
    let id = ExactMatrix::identity(f, d);
    let mut system = ExactMatrix::zeros(f, 2 * d * d, d * d);
    for r in 0..d {
        for c in 0..d {
            let mut e = ExactMatrix::zeros(f, d, d);
            e.set(r, c, f.one());
            let tl = b.alg.mult.mul(&e.kron(&id)).mul(&b.coalg.comult);
            let tr = b.alg.mult.mul(&id.kron(&e)).mul(&b.coalg.comult);
            // Row-major entry (l, i) of each identity, stacked left above right.
            for l in 0..d {
                for i in 0..d {
                    system.set(l * d + i, r * d + c, tl.get(l, i).clone());
                    system.set(d * d + l * d + i, r * d + c, tr.get(l, i).clone());
                }
            }
        }
    }
    let target = b.alg.unit.mul(&b.coalg.counit);
    let mut rhs = ExactMatrix::zeros(f, 2 * d * d, 1);
    for l in 0..d {
        for i in 0..d {
            rhs.set(l * d + i, 0, target.get(l, i).clone());
            rhs.set(d * d + l * d + i, 0, target.get(l, i).clone());
        }
    }
    let sol = system.solve(&rhs).ok_or(NoAntipode)?;
    let antipode = ExactMatrix::from_fn(f, d, d, |r, c| sol.get(r * d + c, 0).clone());
    let hopf = HopfAlgebra { bialg: b.clone(), antipode };
    debug_assert!(hopf.check().passed(), "solved antipode fails verification");
    Ok(hopf)
}

/// A comodule algebra: an algebra A with a left H-coaction ν that is an
/// algebra morphism, together with a distinguished subalgebra of
/// coinvariants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComoduleAlgebra {
    pub h: Bialgebra,
    pub a: Algebra,
    /// Coaction ν: A -> H ⊗ A.
    pub nu: ExactMatrix,
    /// The base B -> A, contained in the coinvariants.
    pub binc: AlgebraInclusion,
}

impl ComoduleAlgebra {
    pub fn new(
        h: Bialgebra,
        a: Algebra,
        nu: ExactMatrix,
        binc: AlgebraInclusion,
    ) -> Result<Self, AlgebraError> {
        if h.field() != a.field {
            return Err(AlgebraError::AlgebraMismatch("comodule algebra across different fields".into()));
        }
        if binc.amb != a {
            return Err(AlgebraError::AlgebraMismatch("base does not embed into the comodule algebra".into()));
        }
        if (nu.rows, nu.cols) != (h.dim() * a.dim, a.dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "coaction".into(),
                expected: (h.dim() * a.dim, a.dim),
                got: (nu.rows, nu.cols),
            });
        }
        Ok(ComoduleAlgebra { h, a, nu, binc })
    }

    /// Verifies the coaction laws, the algebra-morphism property of ν, that
    /// B lands in the coinvariants, and that ν is a B-bimodule map.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("bialgebra", self.h.check());
        report.absorb("algebra", self.a.check());
        report.absorb("base inclusion", self.binc.check());
        let f = self.a.field;
        let (dh, da, db) = (self.h.dim(), self.a.dim, self.binc.sub.dim);
        let id_h = ExactMatrix::identity(f, dh);
        let id_a = ExactMatrix::identity(f, da);
        let id_b = ExactMatrix::identity(f, db);

        let lhs = id_h.kron(&self.nu).mul(&self.nu);
        let rhs = self.h.coalg.comult.kron(&id_a).mul(&self.nu);
        report.expect_identity("coaction coassociativity", &lhs, &rhs, &[da], &[dh, dh, da]);

        let lhs = self.h.coalg.counit.kron(&id_a).mul(&self.nu);
        report.expect_identity("coaction counitality", &lhs, &id_a, &[da], &[da]);

        let lhs = self.nu.mul(&self.a.unit);
        let rhs = self.h.alg.unit.kron(&self.a.unit);
        report.expect_identity("coaction is unital", &lhs, &rhs, &[1], &[dh, da]);

        let lhs = self.nu.mul(&self.a.mult);
        let swap = ExactMatrix::swap_map(f, da, dh);
        let rhs = self
            .h
            .alg
            .mult
            .kron(&self.a.mult)
            .mul(&id_h.kron(&swap).kron(&id_a))
            .mul(&self.nu.kron(&self.nu));
        report.expect_identity("coaction is multiplicative", &lhs, &rhs, &[da, da], &[dh, da]);

        let one_tensor = self.h.alg.unit.kron(&id_a);
        let probe = self.nu.sub(&one_tensor).mul(&self.binc.embed);
        let zero = ExactMatrix::zeros(f, dh * da, db);
        report.expect_identity("base is coinvariant", &probe, &zero, &[db], &[dh, da]);

        // ν intertwines the B-actions on A and on H ⊗ A.
        let l_b = self.a.mult.mul(&self.binc.embed.kron(&id_a));
        let lhs = self.nu.mul(&l_b);
        let swap_bh = ExactMatrix::swap_map(f, db, dh);
        let rhs = id_h
            .kron(&l_b)
            .mul(&swap_bh.kron(&id_a))
            .mul(&id_b.kron(&self.nu));
        report.expect_identity("coaction is left B-linear", &lhs, &rhs, &[db, da], &[dh, da]);

        let r_b = self.a.mult.mul(&id_a.kron(&self.binc.embed));
        let lhs = self.nu.mul(&r_b);
        let rhs = id_h.kron(&r_b).mul(&self.nu.kron(&id_b));
        report.expect_identity("coaction is right B-linear", &lhs, &rhs, &[da, db], &[dh, da]);
        report
    }
}

/// Canonical basis of the coinvariants A^{co H} = ker(ν - 1_H ⊗ -), with a
/// consistency report asserting the coinvariants contain 1 and are closed
/// under multiplication.
pub fn coinvariants(ca: &ComoduleAlgebra) -> (ExactMatrix, CheckReport) {
    let f = ca.a.field;
    let id_a = ExactMatrix::identity(f, ca.a.dim);
    let one_tensor = ca.h.alg.unit.kron(&id_a);
    let basis = ca.nu.sub(&one_tensor).kernel();
    let mut report = CheckReport::new();
    if basis.solve(&ca.a.unit).is_none() {
        report.fail("coinvariants contain the unit", vec![]);
    }
    for i in 0..basis.cols {
        for j in 0..basis.cols {
            let prod = ca.a.mult.mul(&basis.column(i).kron(&basis.column(j)));
            if basis.solve(&prod).is_none() {
                report.fail("coinvariants closed under multiplication", vec![i, j]);
            }
        }
    }
    (basis, report)
}

/// Builds a comodule algebra whose base is the full computed coinvariant
/// subalgebra, with structure constants solved in the canonical basis.
pub fn comodule_algebra_on_coinvariants(
    h: Bialgebra,
    a: Algebra,
    nu: ExactMatrix,
) -> Result<ComoduleAlgebra, AlgebraError> {
    let ground = AlgebraInclusion::ground(a.clone());
    let provisional = ComoduleAlgebra::new(h.clone(), a.clone(), nu.clone(), ground)?;
    let (basis, report) = coinvariants(&provisional);
    if !report.passed() {
        return Err(AlgebraError::AlgebraMismatch(
            "coinvariants are not a unital subalgebra".into(),
        ));
    }
    let f = a.field;
    let db = basis.cols;
    let mut mult = ExactMatrix::zeros(f, db, db * db);
    for i in 0..db {
        for j in 0..db {
            let prod = a.mult.mul(&basis.column(i).kron(&basis.column(j)));
            let coords = basis
                .solve(&prod)
                .expect("closure verified above");
            for k in 0..db {
                mult.set(k, i * db + j, coords.get(k, 0).clone());
            }
        }
    }
    let unit = basis.solve(&a.unit).expect("unit membership verified above");
    let sub = Algebra::new(f, db, mult, unit)?;
    let binc = AlgebraInclusion::new(sub, a.clone(), basis)?;
    ComoduleAlgebra::new(h, a, nu, binc)
}

/// A module coalgebra: a coalgebra Z with an H-action for which Δ_Z and
/// ε_Z are H-module maps (H acting diagonally on Z ⊗ Z and trivially on k).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleCoalgebra {
    pub h: Bialgebra,
    pub z: Coalgebra,
    /// Action H ⊗ Z -> Z.
    pub action: ExactMatrix,
}

impl ModuleCoalgebra {
    pub fn new(h: Bialgebra, z: Coalgebra, action: ExactMatrix) -> Result<Self, AlgebraError> {
        if h.field() != z.field {
            return Err(AlgebraError::AlgebraMismatch("module coalgebra across different fields".into()));
        }
        if (action.rows, action.cols) != (z.dim, h.dim() * z.dim) {
            return Err(AlgebraError::ShapeMismatch {
                role: "module coalgebra action".into(),
                expected: (z.dim, h.dim() * z.dim),
                got: (action.rows, action.cols),
            });
        }
        Ok(ModuleCoalgebra { h, z, action })
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("bialgebra", self.h.check());
        report.absorb("coalgebra", self.z.check());
        let f = self.z.field;
        let (dh, dz) = (self.h.dim(), self.z.dim);
        let id_h = ExactMatrix::identity(f, dh);
        let id_z = ExactMatrix::identity(f, dz);

        let unital = self.action.mul(&self.h.alg.unit.kron(&id_z));
        report.expect_identity("action unital", &unital, &id_z, &[dz], &[dz]);

        let a1 = self.action.mul(&self.h.alg.mult.kron(&id_z));
        let a2 = self.action.mul(&id_h.kron(&self.action));
        report.expect_identity("action associative", &a1, &a2, &[dh, dh, dz], &[dz]);

        let lhs = self.z.comult.mul(&self.action);
        let swap = ExactMatrix::swap_map(f, dh, dz);
        let rhs = self
            .action
            .kron(&self.action)
            .mul(&id_h.kron(&swap).kron(&id_z))
            .mul(&self.h.coalg.comult.kron(&self.z.comult));
        report.expect_identity("comultiplication is H-linear", &lhs, &rhs, &[dh, dz], &[dz, dz]);

        let lhs = self.z.counit.mul(&self.action);
        let rhs = self.h.coalg.counit.kron(&self.z.counit);
        report.expect_identity("counit is H-linear", &lhs, &rhs, &[dh, dz], &[1]);
        report
    }
}

/// The free module coalgebra Z = H ⊗ C: H multiplies the left leg and the
/// coalgebra structure is the tensor product one (legs split by the middle
/// swap).
pub fn free_module_coalgebra(h: &Bialgebra, c: &Coalgebra) -> ModuleCoalgebra {
    let f = h.field();
    let (dh, dc) = (h.dim(), c.dim);
    let id_h = ExactMatrix::identity(f, dh);
    let id_c = ExactMatrix::identity(f, dc);
    let swap = ExactMatrix::swap_map(f, dh, dc);
    let comult = id_h
        .kron(&swap)
        .kron(&id_c)
        .mul(&h.coalg.comult.kron(&c.comult));
    let counit = h.coalg.counit.kron(&c.counit);
    let z = Coalgebra::new(f, dh * dc, comult, counit).expect("shapes consistent");
    let action = h.alg.mult.kron(&id_c);
    ModuleCoalgebra::new(h.clone(), z, action).expect("shapes consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::exactla::ExactField;

    fn q() -> ExactField {
        ExactField::rationals()
    }

    fn gf2() -> ExactField {
        ExactField::prime(2).unwrap()
    }

    #[test]
    fn group_coalgebra_passes() {
        assert!(library::kc2_coalgebra(q()).check().passed());
        assert!(Coalgebra::trivial(q()).check().passed());
    }

    #[test]
    fn bialgebras_pass() {
        assert!(library::kc2_bialgebra(q()).check().passed());
        assert!(library::idempotent_bialgebra(q()).check().passed());
        assert!(library::sweedler_bialgebra().check().passed());
        assert!(library::dual_c2_bialgebra(gf2()).check().passed());
    }

    #[test]
    fn corrupted_counit_is_caught() {
        let mut b = library::kc2_bialgebra(q());
        b.coalg.counit.set(0, 1, q().zero());
        let report = b.check();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law.contains("counit")));
    }

    #[test]
    fn antipode_of_group_algebra_is_inversion() {
        let hopf = antipode(&library::kc2_bialgebra(q())).unwrap();
        assert!(hopf.antipode.is_identity());
        assert!(hopf.check().passed());

        let hopf = antipode(&library::dual_c2_bialgebra(gf2())).unwrap();
        assert!(hopf.antipode.is_identity());
    }

    #[test]
    fn antipode_of_the_four_dimensional_hopf_algebra() {
        // S(1) = 1, S(g) = g, S(x) = -gx, S(gx) = x.
        let hopf = antipode(&library::sweedler_bialgebra()).unwrap();
        let expected = ExactMatrix::from_i64_rows(
            q(),
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, -1, 0],
            ],
        );
        assert_eq!(hopf.antipode, expected);
        assert!(hopf.check().passed());
    }

    #[test]
    fn idempotent_monoid_has_no_antipode() {
        assert_eq!(antipode(&library::idempotent_bialgebra(q())), Err(NoAntipode));
        let gf = library::idempotent_bialgebra(gf2());
        assert_eq!(antipode(&gf), Err(NoAntipode));
    }

    #[test]
    fn comodule_algebras_pass() {
        assert!(library::kc2_comodule_algebra(q()).check().passed());
        assert!(library::f4_comodule_algebra().check().passed());
        assert!(library::f8_comodule_algebra().check().passed());
        assert!(library::dual_c2_comodule_algebra(gf2()).check().passed());
        assert!(library::idempotent_comodule_algebra(q()).check().passed());
        assert!(library::sweedler_comodule_algebra().check().passed());
    }

    #[test]
    fn broken_coaction_coassociativity_is_caught() {
        let mut ca = library::f4_comodule_algebra();
        // Corrupt ν(w) by dropping the Frobenius leg.
        ca.nu.set(3, 1, gf2().zero());
        let report = ca.check();
        assert!(!report.passed());
    }

    #[test]
    fn coinvariants_of_the_galois_extensions_are_the_base_field() {
        for ca in [
            library::f4_comodule_algebra(),
            library::f8_comodule_algebra(),
            library::kc2_comodule_algebra(q()),
        ] {
            let (basis, report) = coinvariants(&ca);
            assert!(report.passed());
            assert_eq!(basis.cols, 1);
            assert_eq!(basis.column(0), ca.a.unit);
        }
    }

    #[test]
    fn coinvariants_of_the_idempotent_comodule_algebra() {
        // ν(e) = e ⊗ e is not of the form 1 ⊗ e, so only the unit line is
        // coinvariant.
        let ca = library::idempotent_comodule_algebra(q());
        let (basis, report) = coinvariants(&ca);
        assert!(report.passed());
        assert_eq!(basis.cols, 1);
    }

    #[test]
    fn computed_base_matches_ground_for_galois_instances() {
        let ca = library::f4_comodule_algebra();
        let rebuilt =
            comodule_algebra_on_coinvariants(ca.h.clone(), ca.a.clone(), ca.nu.clone()).unwrap();
        assert_eq!(rebuilt.binc.sub.dim, 1);
        assert!(rebuilt.check().passed());
    }

    #[test]
    fn free_module_coalgebras_pass() {
        let h = library::kc2_bialgebra(q());
        let c = library::kc2_coalgebra(q());
        let z = free_module_coalgebra(&h, &c);
        assert!(z.check().passed());
        assert_eq!(z.z.dim, 4);

        let h = library::dual_c2_bialgebra(gf2());
        let z = free_module_coalgebra(&h, &Coalgebra::trivial(gf2()));
        assert!(z.check().passed());
        assert_eq!(z.z.dim, 2);
        // With C = k the free coalgebra is H itself.
        assert_eq!(z.z.comult, h.coalg.comult);
        assert_eq!(z.z.counit, h.coalg.counit);
        assert_eq!(z.action, h.alg.mult);
    }

    #[test]
    fn free_module_coalgebra_comultiplication_splits_legs() {
        // Δ_Z(g ⊗ c) for grouplikes g, c has its four legs in the order
        // (g, c, g, c).
        let h = library::kc2_bialgebra(q());
        let c = library::kc2_coalgebra(q());
        let z = free_module_coalgebra(&h, &c);
        // Basis of Z: (1,1), (1,g), (g,1), (g,g) flattened; take g ⊗ g = index 3.
        let col = z.z.comult.column(3);
        // Δ(g ⊗ g) = (g ⊗ g) ⊗ (g ⊗ g): single coefficient at flat (3,3).
        for r in 0..16 {
            let expect = if r == 3 * 4 + 3 { q().one() } else { q().zero() };
            assert_eq!(col.get(r, 0), &expect);
        }
    }
}
