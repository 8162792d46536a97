//! Shared example structures used by the test suites and the CLI builtins.
//!
//! Everything here is small enough to write down by hand: group algebras of
//! C2, the idempotent monoid algebra, the 4-dimensional algebra with a
//! nontrivial antipode over Q, and the finite field extensions F4 and F8
//! of GF(2) with their Frobenius actions.

use crate::algebra::{Algebra, AlgebraInclusion};
use crate::coalg::{antipode, Bialgebra, Coalgebra, ComoduleAlgebra, HopfAlgebra};
use crate::exactla::{ExactField, ExactMatrix};

/// Group algebra kC2 = k[g]/(g^2 - 1), basis {1, g}.
pub fn kc2_algebra(field: ExactField) -> Algebra {
    Algebra::from_table(field, 2, &[1, 0], &|i, j| match (i, j) {
        (0, 0) => vec![1, 0],
        (0, 1) | (1, 0) => vec![0, 1],
        (1, 1) => vec![1, 0],
        _ => unreachable!(),
    })
}

/// Monoid algebra of {1, e} with e^2 = e, basis {1, e}.
pub fn idempotent_algebra(field: ExactField) -> Algebra {
    Algebra::from_table(field, 2, &[1, 0], &|i, j| match (i, j) {
        (0, 0) => vec![1, 0],
        _ => vec![0, 1],
    })
}

/// The field F4 = GF(2)[w]/(w^2 + w + 1) as a GF(2)-algebra, basis {1, w}.
pub fn f4() -> Algebra {
    let gf2 = ExactField::prime(2).unwrap();
    Algebra::from_table(gf2, 2, &[1, 0], &|i, j| match (i, j) {
        (0, 0) => vec![1, 0],
        (0, 1) | (1, 0) => vec![0, 1],
        (1, 1) => vec![1, 1],
        _ => unreachable!(),
    })
}

/// Frobenius a -> a^2 on F4 in the basis {1, w}.
pub fn f4_frobenius() -> ExactMatrix {
    let gf2 = ExactField::prime(2).unwrap();
    ExactMatrix::from_i64_rows(gf2, &[&[1, 1], &[0, 1]])
}

/// The field F8 = GF(2)[t]/(t^3 + t + 1) as a GF(2)-algebra, basis {1, t, t^2}.
pub fn f8() -> Algebra {
    let gf2 = ExactField::prime(2).unwrap();
    // t^3 = t + 1, t^4 = t^2 + t.
    Algebra::from_table(gf2, 3, &[1, 0, 0], &|i, j| {
        let pow = i + j;
        match pow {
            0 => vec![1, 0, 0],
            1 => vec![0, 1, 0],
            2 => vec![0, 0, 1],
            3 => vec![1, 1, 0],
            4 => vec![0, 1, 1],
            _ => unreachable!(),
        }
    })
}

/// Frobenius a -> a^2 on F8 in the basis {1, t, t^2}.
pub fn f8_frobenius() -> ExactMatrix {
    let gf2 = ExactField::prime(2).unwrap();
    // 1 -> 1, t -> t^2, t^2 -> t^4 = t + t^2.
    ExactMatrix::from_i64_rows(gf2, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 1]])
}

/// The 4-dimensional algebra k<g, x>/(g^2 - 1, x^2, xg + gx) over Q,
/// basis {1, g, x, gx}. It carries the smallest noncommutative,
/// noncocommutative Hopf structure.
pub fn sweedler_algebra() -> Algebra {
    let q = ExactField::rationals();
    Algebra::from_table(q, 4, &[1, 0, 0, 0], &|i, j| {
        // Table of products in the basis {1, g, x, gx}.
        const TABLE: [[[i64; 4]; 4]; 4] = [
            // 1 * _
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            // g * _
            [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
            // x * _
            [[0, 0, 1, 0], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]],
            // gx * _
            [[0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        ];
        TABLE[i][j].to_vec()
    })
}

/// Grouplike coalgebra on the basis {1, g} of kC2.
pub fn kc2_coalgebra(field: ExactField) -> Coalgebra {
    Coalgebra::from_table(field, 2, &[1, 1], &|i| {
        let mut m = vec![vec![0, 0], vec![0, 0]];
        m[i][i] = 1;
        m
    })
}

/// The group bialgebra of C2.
pub fn kc2_bialgebra(field: ExactField) -> Bialgebra {
    Bialgebra::new(kc2_algebra(field), kc2_coalgebra(field)).expect("carrier shapes agree")
}

/// The group Hopf algebra of C2; the antipode is inversion, here the
/// identity matrix.
pub fn kc2_hopf(field: ExactField) -> HopfAlgebra {
    antipode(&kc2_bialgebra(field)).expect("group algebras have antipodes")
}

/// Monoid bialgebra of {1, e}: both basis elements are grouplike but e is
/// not invertible, so this bialgebra has no antipode.
pub fn idempotent_bialgebra(field: ExactField) -> Bialgebra {
    let coalg = Coalgebra::from_table(field, 2, &[1, 1], &|i| {
        let mut m = vec![vec![0, 0], vec![0, 0]];
        m[i][i] = 1;
        m
    });
    Bialgebra::new(idempotent_algebra(field), coalg).expect("carrier shapes agree")
}

/// Coalgebra half of the 4-dimensional Hopf algebra: g is grouplike and x
/// is (1, g)-primitive.
pub fn sweedler_coalgebra() -> Coalgebra {
    let q = ExactField::rationals();
    Coalgebra::from_table(q, 4, &[1, 1, 0, 0], &|i| {
        let mut m = vec![vec![0i64; 4]; 4];
        match i {
            0 => m[0][0] = 1,
            1 => m[1][1] = 1,
            2 => {
                m[2][0] = 1;
                m[1][2] = 1;
            }
            3 => {
                m[3][1] = 1;
                m[0][3] = 1;
            }
            _ => unreachable!(),
        }
        m
    })
}

/// The smallest noncommutative noncocommutative bialgebra, over Q.
pub fn sweedler_bialgebra() -> Bialgebra {
    Bialgebra::new(sweedler_algebra(), sweedler_coalgebra()).expect("carrier shapes agree")
}

/// The 4-dimensional Hopf algebra with antipode of order 4.
pub fn sweedler_hopf() -> HopfAlgebra {
    antipode(&sweedler_bialgebra()).expect("the 4-dimensional bialgebra has an antipode")
}

/// Function bialgebra k^{C_n} on the cyclic group of order n: indicator
/// basis with pointwise product, comultiplication dual to the group law,
/// counit evaluation at the identity.
pub fn dual_cyclic_bialgebra(field: ExactField, n: usize) -> Bialgebra {
    let unit = vec![1i64; n];
    let alg = Algebra::from_table(field, n, &unit, &|i, j| {
        let mut v = vec![0i64; n];
        if i == j {
            v[i] = 1;
        }
        v
    });
    let mut counit = vec![0i64; n];
    counit[0] = 1;
    let coalg = Coalgebra::from_table(field, n, &counit, &|k| {
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][(k + n - i) % n] = 1;
        }
        m
    });
    Bialgebra::new(alg, coalg).expect("carrier shapes agree")
}

/// Function bialgebra on C2. Over GF(2) this is not isomorphic to the
/// group bialgebra kC2.
pub fn dual_c2_bialgebra(field: ExactField) -> Bialgebra {
    dual_cyclic_bialgebra(field, 2)
}

/// Function Hopf algebra on C_n; the antipode is pullback along inversion.
pub fn dual_cyclic_hopf(field: ExactField, n: usize) -> HopfAlgebra {
    antipode(&dual_cyclic_bialgebra(field, n)).expect("function algebras on groups have antipodes")
}

/// Function Hopf algebra on C2.
pub fn dual_c2_hopf(field: ExactField) -> HopfAlgebra {
    dual_cyclic_hopf(field, 2)
}

/// A bialgebra coacting on itself by its own comultiplication, with the
/// ground field as base.
fn self_comodule_algebra(h: Bialgebra) -> ComoduleAlgebra {
    let a = h.alg.clone();
    let nu = h.coalg.comult.clone();
    let binc = AlgebraInclusion::ground(a.clone());
    ComoduleAlgebra::new(h, a, nu, binc).expect("shapes consistent")
}

/// kC2 coacting on itself by comultiplication over the ground field.
pub fn kc2_comodule_algebra(field: ExactField) -> ComoduleAlgebra {
    self_comodule_algebra(kc2_bialgebra(field))
}

/// k^{C2} coacting on itself by comultiplication over the ground field.
pub fn dual_c2_comodule_algebra(field: ExactField) -> ComoduleAlgebra {
    self_comodule_algebra(dual_c2_bialgebra(field))
}

/// The idempotent monoid bialgebra coacting on itself; the running
/// counterexample once Hopf-level properties are asked of it.
pub fn idempotent_comodule_algebra(field: ExactField) -> ComoduleAlgebra {
    self_comodule_algebra(idempotent_bialgebra(field))
}

/// The 4-dimensional Hopf algebra coacting on itself over Q.
pub fn sweedler_comodule_algebra() -> ComoduleAlgebra {
    self_comodule_algebra(sweedler_bialgebra())
}

/// Coaction recording a cyclic group of field automorphisms:
/// ν(a) = Σ_g δ_g ⊗ g(a), with δ-basis indices matching powers of the
/// chosen generator.
fn cyclic_galois_coaction(a: &Algebra, auts: &[ExactMatrix]) -> ExactMatrix {
    let n = auts.len();
    let da = a.dim;
    ExactMatrix::from_fn(a.field, n * da, da, |r, c| {
        auts[r / da].get(r % da, c).clone()
    })
}

/// F4 over GF(2) as a k^{C2}-comodule algebra via the Frobenius action.
pub fn f4_comodule_algebra() -> ComoduleAlgebra {
    let gf2 = ExactField::prime(2).unwrap();
    let h = dual_c2_bialgebra(gf2);
    let a = f4();
    let auts = [ExactMatrix::identity(gf2, 2), f4_frobenius()];
    let nu = cyclic_galois_coaction(&a, &auts);
    let binc = AlgebraInclusion::ground(a.clone());
    ComoduleAlgebra::new(h, a, nu, binc).expect("shapes consistent")
}

/// F8 over GF(2) as a k^{C3}-comodule algebra via the Frobenius action.
pub fn f8_comodule_algebra() -> ComoduleAlgebra {
    let gf2 = ExactField::prime(2).unwrap();
    let h = dual_cyclic_bialgebra(gf2, 3);
    let a = f8();
    let frob = f8_frobenius();
    let auts = [
        ExactMatrix::identity(gf2, 3),
        frob.clone(),
        frob.mul(&frob),
    ];
    let nu = cyclic_galois_coaction(&a, &auts);
    let binc = AlgebraInclusion::ground(a.clone());
    ComoduleAlgebra::new(h, a, nu, binc).expect("shapes consistent")
}

/// An algebra with the trivial coaction ν(a) = 1 ⊗ a; every element is
/// coinvariant, so the base is all of A.
pub fn trivial_coaction_comodule_algebra(h: Bialgebra, a: Algebra) -> ComoduleAlgebra {
    let id_a = ExactMatrix::identity(a.field, a.dim);
    let nu = h.alg.unit.kron(&id_a);
    let binc = AlgebraInclusion::new(a.clone(), a.clone(), id_a).expect("shapes consistent");
    ComoduleAlgebra::new(h, a, nu, binc).expect("shapes consistent")
}
