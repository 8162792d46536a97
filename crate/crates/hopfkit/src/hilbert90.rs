//! Group actions on commutative algebras and their first cohomology.
//!
//! A finite group acting by automorphisms on a commutative algebra A is the
//! same data as a coaction of the function Hopf algebra on the group, and
//! modules with a compatible semilinear group action are the same as Hopf
//! modules for that coaction. This module builds both directions of that
//! dictionary and then computes with nonabelian 1-cocycles: validity checks,
//! twisting of semilinear modules, the coboundary relation, and the full
//! enumeration of cohomology classes over a finite field.

use crate::algebra::{bimodule_hom_basis, Algebra, AlgebraError, Bimodule};
use crate::check::CheckReport;
use crate::coalg::{
    comodule_algebra_on_coinvariants, Bialgebra, Coalgebra, ComoduleAlgebra, HopfAlgebra,
};
use crate::coalg::free_module_coalgebra;
use crate::exactla::{invertible_in_span, ExactField, ExactMatrix};
use crate::hopfmod::{DkHopfModule, HopfError};
use std::fmt;

/// Errors from group-cohomology constructions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum H1Error {
    Algebra(AlgebraError),
    Hopf(HopfError),
    /// The multiplication table fails a group axiom.
    NotAGroup(String),
    /// Structures that should live over the same group, algebra, or module
    /// do not.
    Mismatch(String),
    /// The requested enumeration is infinite or too large to exhaust.
    PoolNotFinite(String),
}

impl From<AlgebraError> for H1Error {
    fn from(e: AlgebraError) -> Self {
        H1Error::Algebra(e)
    }
}

impl From<HopfError> for H1Error {
    fn from(e: HopfError) -> Self {
        H1Error::Hopf(e)
    }
}

impl fmt::Display for H1Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H1Error::Algebra(e) => write!(f, "{}", e),
            H1Error::Hopf(e) => write!(f, "{}", e),
            H1Error::NotAGroup(why) => write!(f, "not a group: {}", why),
            H1Error::Mismatch(why) => write!(f, "mismatch: {}", why),
            H1Error::PoolNotFinite(why) => write!(f, "pool not finite: {}", why),
        }
    }
}

impl std::error::Error for H1Error {}

/// A finite group given by its full multiplication table.
///
/// `table[i][j]` is the index of the product of the i-th and j-th elements.
/// The constructor locates the identity, tabulates inverses, and verifies
/// associativity exhaustively, so a stored presentation is always a group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPresentation {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl GroupPresentation {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, H1Error> {
        let n = table.len();
        if n == 0 {
            return Err(H1Error::NotAGroup("empty multiplication table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(H1Error::NotAGroup(format!("row {} is not of length {}", i, n)));
            }
            for &e in row {
                if e >= n {
                    return Err(H1Error::NotAGroup(format!("entry {} out of range", e)));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or_else(|| H1Error::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![0usize; n];
        for (i, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&j| table[i][j] == identity && table[j][i] == identity)
                .ok_or_else(|| H1Error::NotAGroup(format!("element {} has no inverse", i)))?;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(H1Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        Ok(GroupPresentation { order: n, table, identity, inverse })
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        GroupPresentation::cyclic(1)
    }

    /// The cyclic group of order n, with element i standing for the i-th
    /// power of a fixed generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "a group has at least one element");
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        GroupPresentation::new(table).expect("cyclic tables are groups")
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }
}

/// A finite group acting on a commutative algebra, one matrix per element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAction {
    pub group: GroupPresentation,
    pub algebra: Algebra,
    pub maps: Vec<ExactMatrix>,
}

impl GroupAction {
    pub fn new(
        group: GroupPresentation,
        algebra: Algebra,
        maps: Vec<ExactMatrix>,
    ) -> Result<Self, H1Error> {
        if maps.len() != group.order {
            return Err(H1Error::Mismatch(format!(
                "{} maps for a group of order {}",
                maps.len(),
                group.order
            )));
        }
        for m in &maps {
            if m.field != algebra.field {
                return Err(H1Error::Mismatch("action maps over a different field".into()));
            }
            if (m.rows, m.cols) != (algebra.dim, algebra.dim) {
                return Err(H1Error::Algebra(AlgebraError::ShapeMismatch {
                    role: "group action map".into(),
                    expected: (algebra.dim, algebra.dim),
                    got: (m.rows, m.cols),
                }));
            }
        }
        Ok(GroupAction { group, algebra, maps })
    }

    /// Every element acts as the identity.
    pub fn trivial(group: GroupPresentation, algebra: Algebra) -> Self {
        let id = ExactMatrix::identity(algebra.field, algebra.dim);
        let maps = vec![id; group.order];
        GroupAction { group, algebra, maps }
    }

    /// Verifies that each map is an algebra automorphism and that the maps
    /// compose along the multiplication table. Invertibility follows from
    /// composition with the inverse element, so it is not checked separately.
    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("algebra", self.algebra.check());
        if !self.algebra.is_commutative() {
            report.fail("base algebra is commutative", vec![]);
        }
        if !self.maps[self.group.identity].is_identity() {
            report.fail("identity acts trivially", vec![]);
        }
        for (g, m) in self.maps.iter().enumerate() {
            if m.mul(&self.algebra.mult) != self.algebra.mult.mul(&m.kron(m)) {
                report.fail("action preserves the product", vec![g]);
            }
            if m.mul(&self.algebra.unit) != self.algebra.unit {
                report.fail("action preserves the unit", vec![g]);
            }
        }
        for i in 0..self.group.order {
            for j in 0..self.group.order {
                if self.maps[self.group.mul(i, j)] != self.maps[i].mul(&self.maps[j]) {
                    report.fail("action composes along the group", vec![i, j]);
                }
            }
        }
        report
    }
}

/// The function Hopf algebra on a finite group, on the indicator basis.
///
/// Multiplication is pointwise, the unit is the constant function 1, the
/// comultiplication is dual to the group product, the counit evaluates at
/// the identity, and the antipode is pullback along inversion.
pub fn dual_group_hopf(
    group: &GroupPresentation,
    field: ExactField,
) -> Result<HopfAlgebra, H1Error> {
    let n = group.order;
    let one = field.one();
    let mut mult = ExactMatrix::zeros(field, n, n * n);
    for k in 0..n {
        mult.set(k, k * n + k, one.clone());
    }
    let unit = ExactMatrix::from_fn(field, n, 1, |_, _| one.clone());
    let mut comult = ExactMatrix::zeros(field, n * n, n);
    for x in 0..n {
        for y in 0..n {
            comult.set(x * n + y, group.mul(x, y), one.clone());
        }
    }
    let mut counit = ExactMatrix::zeros(field, 1, n);
    counit.set(0, group.identity, one.clone());
    let alg = Algebra::new(field, n, mult, unit)?;
    let coalg = crate::coalg::Coalgebra::new(field, n, comult, counit)?;
    let bialg = Bialgebra::new(alg, coalg)?;
    let mut antipode = ExactMatrix::zeros(field, n, n);
    for (j, &inv) in group.inverse.iter().enumerate() {
        antipode.set(inv, j, one.clone());
    }
    Ok(HopfAlgebra { bialg, antipode })
}

/// Packages a group action as a comodule algebra over the function Hopf
/// algebra on the group, with ν(a) = Σ_g δ_g ⊗ g(a). The base is the
/// computed coinvariant subalgebra, which is exactly the fixed subalgebra
/// of the action.
pub fn action_to_comodule_algebra(action: &GroupAction) -> Result<ComoduleAlgebra, H1Error> {
    let h = dual_group_hopf(&action.group, action.algebra.field)?;
    let da = action.algebra.dim;
    let nu = ExactMatrix::from_fn(action.algebra.field, action.group.order * da, da, |r, c| {
        action.maps[r / da].get(r % da, c).clone()
    });
    Ok(comodule_algebra_on_coinvariants(h.bialg, action.algebra.clone(), nu)?)
}

/// A module over the acted-on algebra together with a semilinear action of
/// the group: g(a·x) = g(a)·g(x).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearModule {
    pub action: GroupAction,
    pub dim: usize,
    /// Module structure A ⊗ N -> N.
    pub act: ExactMatrix,
    /// One matrix per group element, acting on N.
    pub maps: Vec<ExactMatrix>,
}

impl SemilinearModule {
    pub fn new(
        action: GroupAction,
        dim: usize,
        act: ExactMatrix,
        maps: Vec<ExactMatrix>,
    ) -> Result<Self, H1Error> {
        let f = action.algebra.field;
        if (act.rows, act.cols) != (dim, action.algebra.dim * dim) {
            return Err(H1Error::Algebra(AlgebraError::ShapeMismatch {
                role: "module action".into(),
                expected: (dim, action.algebra.dim * dim),
                got: (act.rows, act.cols),
            }));
        }
        if maps.len() != action.group.order {
            return Err(H1Error::Mismatch(format!(
                "{} semilinear maps for a group of order {}",
                maps.len(),
                action.group.order
            )));
        }
        for m in &maps {
            if m.field != f || (m.rows, m.cols) != (dim, dim) {
                return Err(H1Error::Algebra(AlgebraError::ShapeMismatch {
                    role: "semilinear map".into(),
                    expected: (dim, dim),
                    got: (m.rows, m.cols),
                }));
            }
        }
        Ok(SemilinearModule { action, dim, act, maps })
    }

    /// The algebra itself, with the group acting as given.
    pub fn regular(action: &GroupAction) -> Self {
        SemilinearModule {
            action: action.clone(),
            dim: action.algebra.dim,
            act: action.algebra.mult.clone(),
            maps: action.maps.clone(),
        }
    }

    /// The underlying left module as a bimodule with trivial right action.
    pub fn carrier(&self) -> Result<Bimodule, H1Error> {
        Ok(Bimodule::left_module(&self.action.algebra, self.dim, self.act.clone())?)
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.absorb("action", self.action.check());
        let a = &self.action.algebra;
        let f = a.field;
        let id_a = ExactMatrix::identity(f, a.dim);
        let id_n = ExactMatrix::identity(f, self.dim);
        report.expect_identity(
            "module associativity",
            &self.act.mul(&a.mult.kron(&id_n)),
            &self.act.mul(&id_a.kron(&self.act)),
            &[a.dim, a.dim, self.dim],
            &[self.dim],
        );
        report.expect_identity(
            "module unit",
            &self.act.mul(&a.unit.kron(&id_n)),
            &id_n,
            &[self.dim],
            &[self.dim],
        );
        if !self.maps[self.action.group.identity].is_identity() {
            report.fail("identity acts trivially on the module", vec![]);
        }
        for i in 0..self.action.group.order {
            for j in 0..self.action.group.order {
                if self.maps[self.action.group.mul(i, j)] != self.maps[i].mul(&self.maps[j]) {
                    report.fail("module maps compose along the group", vec![i, j]);
                }
            }
        }
        for (g, m) in self.maps.iter().enumerate() {
            if m.mul(&self.act) != self.act.mul(&self.action.maps[g].kron(m)) {
                report.fail("semilinearity", vec![g]);
            }
        }
        report
    }
}

/// Realizes a semilinear module as a Hopf module over the action's comodule
/// algebra: the coaction lists the semilinear maps block by block.
pub fn to_hopf_module(sm: &SemilinearModule) -> Result<DkHopfModule, H1Error> {
    let ca = action_to_comodule_algebra(&sm.action)?;
    let f = sm.action.algebra.field;
    let z = free_module_coalgebra(&ca.h, &Coalgebra::trivial(f));
    let dm = sm.dim;
    let coaction = ExactMatrix::from_fn(f, sm.action.group.order * dm, dm, |r, c| {
        sm.maps[r / dm].get(r % dm, c).clone()
    });
    Ok(DkHopfModule::new(ca, z, dm, sm.act.clone(), coaction)?)
}

/// Reads a Hopf module over the action's comodule algebra back as a
/// semilinear module, splitting the coaction into its blocks.
pub fn from_hopf_module(
    action: &GroupAction,
    n: &DkHopfModule,
) -> Result<SemilinearModule, H1Error> {
    let ca = action_to_comodule_algebra(action)?;
    if n.data != ca {
        return Err(H1Error::Mismatch(
            "hopf module does not live over the action's comodule algebra".into(),
        ));
    }
    let f = action.algebra.field;
    let dm = n.dim;
    let maps: Vec<ExactMatrix> = (0..action.group.order)
        .map(|g| ExactMatrix::from_fn(f, dm, dm, |i, j| n.coaction.get(g * dm + i, j).clone()))
        .collect();
    SemilinearModule::new(action.clone(), dm, n.action.clone(), maps)
}

/// A 1-cocycle on a semilinear module: an invertible module endomorphism
/// φ(g) for each group element, with φ(1) = 1 and φ(fg) = φ(f) ∘ (f · φ(g)),
/// where the group acts on endomorphisms by conjugation with the module's
/// own semilinear maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle {
    pub module: SemilinearModule,
    pub values: Vec<ExactMatrix>,
}

impl Cocycle {
    pub fn new(module: SemilinearModule, values: Vec<ExactMatrix>) -> Result<Self, H1Error> {
        if values.len() != module.action.group.order {
            return Err(H1Error::Mismatch(format!(
                "{} cocycle values for a group of order {}",
                values.len(),
                module.action.group.order
            )));
        }
        for v in &values {
            if v.field != module.action.algebra.field
                || (v.rows, v.cols) != (module.dim, module.dim)
            {
                return Err(H1Error::Algebra(AlgebraError::ShapeMismatch {
                    role: "cocycle value".into(),
                    expected: (module.dim, module.dim),
                    got: (v.rows, v.cols),
                }));
            }
        }
        Ok(Cocycle { module, values })
    }

    /// The constant cocycle with every value the identity.
    pub fn identity(module: SemilinearModule) -> Self {
        let id = ExactMatrix::identity(module.action.algebra.field, module.dim);
        let values = vec![id; module.action.group.order];
        Cocycle { module, values }
    }

    pub fn check(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let group = &self.module.action.group;
        if !self.values[group.identity].is_identity() {
            report.fail("cocycle value at the identity", vec![]);
        }
        let f = self.module.action.algebra.field;
        let id_a = ExactMatrix::identity(f, self.module.action.algebra.dim);
        for (g, v) in self.values.iter().enumerate() {
            if v.inverse().is_none() {
                report.fail("cocycle values are invertible", vec![g]);
            }
            if v.mul(&self.module.act) != self.module.act.mul(&id_a.kron(v)) {
                report.fail("cocycle values are module endomorphisms", vec![g]);
            }
        }
        for i in 0..group.order {
            for j in 0..group.order {
                let moved = self.module.maps[i]
                    .mul(&self.values[j])
                    .mul(&self.module.maps[group.inverse[i]]);
                if self.values[group.mul(i, j)] != self.values[i].mul(&moved) {
                    report.fail("cocycle identity", vec![i, j]);
                }
            }
        }
        report
    }
}

/// The twist of a semilinear module by a cocycle: the same underlying
/// module, with the group now acting by g ↦ φ(g) ∘ g.
pub fn twist_semilinear(phi: &Cocycle) -> SemilinearModule {
    let maps: Vec<ExactMatrix> = phi
        .values
        .iter()
        .zip(&phi.module.maps)
        .map(|(v, m)| v.mul(m))
        .collect();
    SemilinearModule { maps, ..phi.module.clone() }
}

/// Twists a Hopf module by a cocycle on its semilinear counterpart. The
/// module must be the one the cocycle lives on.
pub fn twist(n: &DkHopfModule, phi: &Cocycle) -> Result<DkHopfModule, H1Error> {
    let expected = to_hopf_module(&phi.module)?;
    if *n != expected {
        return Err(H1Error::Mismatch(
            "hopf module is not the one the cocycle lives on".into(),
        ));
    }
    to_hopf_module(&twist_semilinear(phi))
}

/// Reads a cocycle off a pair of semilinear structures on the same module:
/// the value at g is the twisted map composed with the inverse original map.
pub fn untwist(twisted: &SemilinearModule, original: &SemilinearModule) -> Result<Cocycle, H1Error> {
    if twisted.action != original.action
        || twisted.dim != original.dim
        || twisted.act != original.act
    {
        return Err(H1Error::Mismatch(
            "modules do not share an underlying action and carrier".into(),
        ));
    }
    let group = &original.action.group;
    let values: Vec<ExactMatrix> = (0..group.order)
        .map(|g| twisted.maps[g].mul(&original.maps[group.inverse[g]]))
        .collect();
    Cocycle::new(original.clone(), values)
}

/// Searches for an invertible module endomorphism α with
/// ψ(g) ∘ (g · α) = α ∘ φ(g) for every g; such an α makes the two cocycles
/// cohomologous and is at the same time an isomorphism of the twisted
/// modules. Over a small prime field the answer is exact; over the
/// rationals a deterministic candidate list is tried, so `None` is only a
/// failure to find a witness.
pub fn cohomologous(phi: &Cocycle, psi: &Cocycle) -> Result<Option<ExactMatrix>, H1Error> {
    if phi.module != psi.module {
        return Err(H1Error::Mismatch("cocycles live on different modules".into()));
    }
    let sm = &phi.module;
    let f = sm.action.algebra.field;
    let dm = sm.dim;
    let group = &sm.action.group;
    let carrier = sm.carrier()?;
    let homs = bimodule_hom_basis(&carrier, &carrier)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let mut sys = ExactMatrix::zeros(f, group.order * dm * dm, homs.len());
    for (k, h) in homs.iter().enumerate() {
        for g in 0..group.order {
            let lhs = psi.values[g]
                .mul(&sm.maps[g])
                .mul(&h.matrix)
                .mul(&sm.maps[group.inverse[g]]);
            let diff = lhs.sub(&h.matrix.mul(&phi.values[g]));
            for i in 0..dm {
                for j in 0..dm {
                    sys.set(g * dm * dm + i * dm + j, k, diff.get(i, j).clone());
                }
            }
        }
    }
    let ker = sys.kernel();
    let span: Vec<ExactMatrix> = (0..ker.cols)
        .map(|c| {
            let mut m = ExactMatrix::zeros(f, dm, dm);
            for (k, h) in homs.iter().enumerate() {
                m = m.add(&h.matrix.scale(ker.get(k, c)));
            }
            m
        })
        .collect();
    Ok(invertible_in_span(&span))
}

/// The first cohomology of a semilinear module over a finite field: the
/// number of cocycles and one representative per cohomology class with the
/// class size. Representatives are the enumeration-first (coefficientwise
/// lexicographically least) cocycles of their classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct H1Report {
    pub cocycles: usize,
    pub classes: Vec<(Cocycle, usize)>,
}

/// Enumerates every cocycle on the module and partitions them into
/// cohomology classes. The automorphism pool is the group of invertible
/// module endomorphisms, exhausted from the endomorphism basis; this
/// requires a finite field and modest pool sizes.
pub fn h1_classes(sm: &SemilinearModule) -> Result<H1Report, H1Error> {
    let f = sm.action.algebra.field;
    let p = match f {
        ExactField::PrimeField(p) => p,
        ExactField::Rationals => {
            return Err(H1Error::PoolNotFinite(
                "the automorphism pool over the rationals is infinite".into(),
            ))
        }
    };
    let carrier = sm.carrier()?;
    let homs = bimodule_hom_basis(&carrier, &carrier)?;
    let mut pool_size: u128 = 1;
    for _ in 0..homs.len() {
        pool_size = pool_size.saturating_mul(p as u128);
        if pool_size > 1 << 12 {
            return Err(H1Error::PoolNotFinite(
                "automorphism pool too large to enumerate".into(),
            ));
        }
    }
    let dm = sm.dim;
    let mut auts: Vec<ExactMatrix> = Vec::new();
    for code in 0..pool_size {
        let mut m = ExactMatrix::zeros(f, dm, dm);
        let mut rem = code;
        for h in homs.iter().rev() {
            let digit = (rem % p as u128) as i64;
            rem /= p as u128;
            if digit != 0 {
                m = m.add(&h.matrix.scale(&f.from_i64(digit)));
            }
        }
        if m.inverse().is_some() {
            auts.push(m);
        }
    }
    let group = &sm.action.group;
    let free: Vec<usize> = (0..group.order).filter(|&g| g != group.identity).collect();
    let mut candidates: u128 = 1;
    for _ in 0..free.len() {
        candidates = candidates.saturating_mul(auts.len() as u128);
        if candidates > 1 << 20 {
            return Err(H1Error::PoolNotFinite(
                "cocycle candidate space too large to enumerate".into(),
            ));
        }
    }
    let id = ExactMatrix::identity(f, dm);
    let mut cocycles: Vec<Cocycle> = Vec::new();
    for code in 0..candidates {
        let mut values = vec![id.clone(); group.order];
        let mut rem = code;
        for &g in free.iter().rev() {
            let digit = (rem % auts.len() as u128) as usize;
            rem /= auts.len() as u128;
            values[g] = auts[digit].clone();
        }
        let c = Cocycle { module: sm.clone(), values };
        if c.check().passed() {
            cocycles.push(c);
        }
    }
    let mut classes: Vec<(Cocycle, usize)> = Vec::new();
    'next: for c in &cocycles {
        for (rep, size) in classes.iter_mut() {
            if cohomologous(rep, c)?.is_some() {
                *size += 1;
                continue 'next;
            }
        }
        classes.push((c.clone(), 1));
    }
    Ok(H1Report { cocycles: cocycles.len(), classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::coinvariants;
    use crate::hopfmod::{hopf_module_isomorphism, regular_hopf_module};
    use crate::library;

    fn q() -> ExactField {
        ExactField::Rationals
    }

    fn gf(p: u64) -> ExactField {
        ExactField::prime(p).unwrap()
    }

    fn f4_action() -> GroupAction {
        let a = library::f4();
        let id = ExactMatrix::identity(gf(2), 2);
        GroupAction::new(GroupPresentation::cyclic(2), a, vec![id, library::f4_frobenius()])
            .unwrap()
    }

    fn f8_action() -> GroupAction {
        let a = library::f8();
        let id = ExactMatrix::identity(gf(2), 3);
        let frob = library::f8_frobenius();
        let maps = vec![id, frob.clone(), frob.mul(&frob)];
        GroupAction::new(GroupPresentation::cyclic(3), a, maps).unwrap()
    }

    /// Left multiplication by the i-th basis element of F4, as a cocycle
    /// value candidate.
    fn l(a: &Algebra, i: usize) -> ExactMatrix {
        a.left_mult_basis(i)
    }

    #[test]
    fn group_tables_are_validated() {
        let c3 = GroupPresentation::cyclic(3);
        assert_eq!(c3.identity, 0);
        assert_eq!(c3.inverse, vec![0, 2, 1]);
        assert_eq!(c3.mul(1, 2), 0);
        assert_eq!(GroupPresentation::trivial().order, 1);

        // Klein four-group from an explicit table.
        let v4 = GroupPresentation::new(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert_eq!(v4.inverse, vec![0, 1, 2, 3]);

        // An element without an inverse.
        let bad = GroupPresentation::new(vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(bad, Err(H1Error::NotAGroup(_))));
        // A non-associative quasigroup table and shape defects.
        let bad = GroupPresentation::new(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]]);
        assert!(matches!(bad, Err(H1Error::NotAGroup(_))));
        assert!(matches!(
            GroupPresentation::new(vec![vec![0, 1], vec![1]]),
            Err(H1Error::NotAGroup(_))
        ));
        assert!(matches!(
            GroupPresentation::new(vec![vec![5]]),
            Err(H1Error::NotAGroup(_))
        ));
        assert!(matches!(
            GroupPresentation::new(vec![]),
            Err(H1Error::NotAGroup(_))
        ));
    }

    #[test]
    fn dual_group_hopf_matches_the_cyclic_function_bialgebras() {
        let h2 = dual_group_hopf(&GroupPresentation::cyclic(2), q()).unwrap();
        assert_eq!(h2.bialg, library::dual_c2_bialgebra(q()));
        assert!(h2.check().passed());
        // C2 elements are self-inverse, so the antipode is the identity.
        assert!(h2.antipode.is_identity());

        let h3 = dual_group_hopf(&GroupPresentation::cyclic(3), gf(2)).unwrap();
        assert_eq!(h3.bialg, library::dual_cyclic_bialgebra(gf(2), 3));
        assert!(h3.check().passed());
        // Inversion swaps the two nontrivial elements of C3.
        let s = ExactMatrix::from_i64_rows(gf(2), &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(h3.antipode, s);

        // The independent antipode solver agrees.
        let solved = crate::coalg::antipode(&h3.bialg).unwrap();
        assert_eq!(solved.antipode, h3.antipode);
    }

    #[test]
    fn frobenius_actions_pass_and_corrupted_maps_are_located() {
        assert!(f4_action().check().passed());
        assert!(f8_action().check().passed());
        assert!(GroupAction::trivial(GroupPresentation::cyclic(2), library::f4())
            .check()
            .passed());

        // An additive map that is not multiplicative: swap the F4 basis.
        let swap = ExactMatrix::from_i64_rows(gf(2), &[&[0, 1], &[1, 0]]);
        let id = ExactMatrix::identity(gf(2), 2);
        let bad = GroupAction::new(GroupPresentation::cyclic(2), library::f4(), vec![id, swap])
            .unwrap()
            .check();
        assert!(!bad.passed());
        assert!(bad
            .violations
            .iter()
            .any(|v| v.law == "action preserves the unit" && v.indices == vec![1]));

        // A non-commutative algebra is rejected as a base.
        let sw = GroupAction::trivial(GroupPresentation::trivial(), library::sweedler_algebra());
        assert!(sw
            .check()
            .violations
            .iter()
            .any(|v| v.law == "base algebra is commutative"));
    }

    #[test]
    fn galois_actions_reproduce_the_library_comodule_algebras() {
        let ca4 = action_to_comodule_algebra(&f4_action()).unwrap();
        assert_eq!(ca4, library::f4_comodule_algebra());
        assert!(ca4.check().passed());

        let ca8 = action_to_comodule_algebra(&f8_action()).unwrap();
        assert_eq!(ca8, library::f8_comodule_algebra());
        assert!(ca8.check().passed());
    }

    #[test]
    fn coinvariants_are_the_fixed_subalgebra() {
        for action in [f4_action(), f8_action()] {
            let ca = action_to_comodule_algebra(&action).unwrap();
            let da = action.algebra.dim;
            let f = action.algebra.field;
            let id = ExactMatrix::identity(f, da);
            // Stack g - id over all group elements; its kernel is the fixed
            // space, computed without mentioning the coaction.
            let stacked = ExactMatrix::from_fn(f, action.group.order * da, da, |r, c| {
                let diff = action.maps[r / da].sub(&id);
                diff.get(r % da, c).clone()
            });
            let fixed = stacked.kernel();
            let (coinv, rep) = coinvariants(&ca);
            assert!(rep.passed());
            assert_eq!(fixed, coinv);
            assert_eq!(ca.binc.embed, fixed);
        }
    }

    #[test]
    fn semilinear_modules_validate_and_locate_defects() {
        let sm = SemilinearModule::regular(&f4_action());
        assert!(sm.check().passed());

        // Break semilinearity: act by the identity in the Frobenius slot.
        let mut broken = sm.clone();
        broken.maps[1] = ExactMatrix::identity(gf(2), 2);
        let report = broken.check();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "module maps compose along the group" || v.law == "semilinearity"));

        // Shape errors are rejected at construction.
        assert!(SemilinearModule::new(
            f4_action(),
            1,
            ExactMatrix::zeros(gf(2), 1, 1),
            vec![ExactMatrix::identity(gf(2), 1); 2],
        )
        .is_err());
    }

    #[test]
    fn semilinear_modules_round_trip_through_hopf_modules() {
        for action in [f4_action(), f8_action()] {
            let sm = SemilinearModule::regular(&action);
            let n = to_hopf_module(&sm).unwrap();
            assert!(n.check().passed());

            // The regular semilinear module is the regular Hopf module.
            let ca = action_to_comodule_algebra(&action).unwrap();
            assert_eq!(n, regular_hopf_module(&ca).unwrap());

            let back = from_hopf_module(&action, &n).unwrap();
            assert_eq!(back, sm);
        }

        // A Hopf module over a different comodule algebra is rejected.
        let kc2 = library::kc2_comodule_algebra(gf(2));
        let other = regular_hopf_module(&kc2).unwrap();
        assert!(matches!(
            from_hopf_module(&f4_action(), &other),
            Err(H1Error::Mismatch(_))
        ));
    }

    #[test]
    fn the_norm_one_cocycle_on_the_quartic_field_passes() {
        let sm = SemilinearModule::regular(&f4_action());
        let a = sm.action.algebra.clone();
        // φ(σ) = multiplication by the generator w: valid because
        // w · σ(w) = w · w^2 = w^3 = 1.
        let phi = Cocycle::new(sm.clone(), vec![ExactMatrix::identity(gf(2), 2), l(&a, 1)]).unwrap();
        assert!(phi.check().passed());

        // The same value over the trivial action needs w^2 = 1 and fails.
        let trivial = GroupAction::trivial(GroupPresentation::cyclic(2), library::f4());
        let tm = SemilinearModule::regular(&trivial);
        let bad = Cocycle::new(tm, vec![ExactMatrix::identity(gf(2), 2), l(&a, 1)]).unwrap();
        let report = bad.check();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "cocycle identity" && v.indices == vec![1, 1]));

        // Non-invertible and non-linear values are caught.
        let zero = ExactMatrix::zeros(gf(2), 2, 2);
        let degenerate = Cocycle::new(sm, vec![ExactMatrix::identity(gf(2), 2), zero]).unwrap();
        assert!(degenerate
            .check()
            .violations
            .iter()
            .any(|v| v.law == "cocycle values are invertible" && v.indices == vec![1]));
    }

    #[test]
    fn twisting_by_the_identity_is_trivial_and_twists_stay_valid() {
        let sm = SemilinearModule::regular(&f4_action());
        let n = to_hopf_module(&sm).unwrap();
        let id_cocycle = Cocycle::identity(sm.clone());
        assert_eq!(twist(&n, &id_cocycle).unwrap(), n);

        let a = sm.action.algebra.clone();
        let phi = Cocycle::new(sm.clone(), vec![ExactMatrix::identity(gf(2), 2), l(&a, 1)]).unwrap();
        let twisted = twist_semilinear(&phi);
        assert!(twisted.check().passed());
        // The twisted Frobenius is x ↦ w · x^2.
        assert_eq!(twisted.maps[1], l(&a, 1).mul(&library::f4_frobenius()));
        let tn = twist(&n, &phi).unwrap();
        assert!(tn.check().passed());
        assert_eq!(tn.action, n.action);

        // Twisting a foreign module is refused.
        let other = to_hopf_module(&SemilinearModule::regular(&f8_action())).unwrap();
        assert!(matches!(twist(&other, &phi), Err(H1Error::Mismatch(_))));
    }

    #[test]
    fn untwisting_recovers_every_cocycle() {
        let sm = SemilinearModule::regular(&f4_action());
        let a = sm.action.algebra.clone();
        let id = ExactMatrix::identity(gf(2), 2);
        let units = [id.clone(), l(&a, 1), l(&a, 1).mul(&l(&a, 1))];
        for value in units {
            let phi = Cocycle::new(sm.clone(), vec![id.clone(), value]).unwrap();
            assert!(phi.check().passed());
            let twisted = twist_semilinear(&phi);
            let recovered = untwist(&twisted, &sm).unwrap();
            assert_eq!(recovered.values, phi.values);
            assert!(recovered.check().passed());
        }
    }

    #[test]
    fn double_twists_compose_pointwise() {
        let sm = SemilinearModule::regular(&f4_action());
        let a = sm.action.algebra.clone();
        let id = ExactMatrix::identity(gf(2), 2);
        let phi = Cocycle::new(sm.clone(), vec![id.clone(), l(&a, 1)]).unwrap();
        let once = twist_semilinear(&phi);
        // A cocycle on the twisted module with the same value.
        let phi2 = Cocycle::new(once.clone(), vec![id.clone(), l(&a, 1)]).unwrap();
        assert!(phi2.check().passed());
        let twice = twist_semilinear(&phi2);
        // The combined twist is by the pointwise product of the values.
        let combined = Cocycle::new(sm.clone(), vec![id, l(&a, 1).mul(&l(&a, 1))]).unwrap();
        assert_eq!(twice, twist_semilinear(&combined));
    }

    #[test]
    fn hilbert_90_for_the_quartic_extension() {
        let report = h1_classes(&SemilinearModule::regular(&f4_action())).unwrap();
        assert_eq!(report.cocycles, 3);
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].1, 3);
        assert!(report.classes[0].0.check().passed());
    }

    #[test]
    fn hilbert_90_for_the_octic_extension() {
        let report = h1_classes(&SemilinearModule::regular(&f8_action())).unwrap();
        assert_eq!(report.cocycles, 7);
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].1, 7);
    }

    #[test]
    fn trivial_actions_separate_the_signs() {
        let ground = Algebra::ground(gf(3));
        let action = GroupAction::trivial(GroupPresentation::cyclic(2), ground);
        let report = h1_classes(&SemilinearModule::regular(&action)).unwrap();
        assert_eq!(report.cocycles, 2);
        assert_eq!(report.classes.len(), 2);
        assert_eq!(report.classes.iter().map(|(_, s)| s).sum::<usize>(), 2);

        // The two cocycles themselves are not cohomologous.
        let phi = &report.classes[0].0;
        let psi = &report.classes[1].0;
        assert!(cohomologous(phi, psi).unwrap().is_none());
        assert!(cohomologous(phi, phi).unwrap().is_some());

        // The trivial group has a single, trivial class.
        let one = GroupAction::trivial(GroupPresentation::trivial(), Algebra::ground(gf(3)));
        let report = h1_classes(&SemilinearModule::regular(&one)).unwrap();
        assert_eq!((report.cocycles, report.classes.len()), (1, 1));
    }

    #[test]
    fn rational_pools_are_refused() {
        let action = GroupAction::trivial(GroupPresentation::cyclic(2), Algebra::ground(q()));
        assert!(matches!(
            h1_classes(&SemilinearModule::regular(&action)),
            Err(H1Error::PoolNotFinite(_))
        ));
    }

    #[test]
    fn coboundary_witnesses_solve_the_intertwining_equation() {
        let sm = SemilinearModule::regular(&f4_action());
        let a = sm.action.algebra.clone();
        let id = ExactMatrix::identity(gf(2), 2);
        let phi = Cocycle::new(sm.clone(), vec![id.clone(), l(&a, 1)]).unwrap();
        let psi = Cocycle::identity(sm.clone());
        let alpha = cohomologous(&phi, &psi).unwrap().expect("norm-one values are coboundaries");
        assert!(alpha.inverse().is_some());
        let group = &sm.action.group;
        for g in 0..group.order {
            let lhs = psi.values[g]
                .mul(&sm.maps[g])
                .mul(&alpha)
                .mul(&sm.maps[group.inverse[g]]);
            assert_eq!(lhs, alpha.mul(&phi.values[g]));
        }

        // Mismatched modules are an error, not a silent None.
        let other = SemilinearModule::regular(&f8_action());
        let rho = Cocycle::identity(other);
        assert!(matches!(cohomologous(&phi, &rho), Err(H1Error::Mismatch(_))));
    }

    #[test]
    fn cohomologous_cocycles_have_isomorphic_twists_and_vice_versa() {
        // Positive side: all three cocycles on F4 twist to isomorphic Hopf
        // modules, found by the independent isomorphism search.
        let sm = SemilinearModule::regular(&f4_action());
        let a = sm.action.algebra.clone();
        let id = ExactMatrix::identity(gf(2), 2);
        let cocycles: Vec<Cocycle> = [id.clone(), l(&a, 1), l(&a, 1).mul(&l(&a, 1))]
            .into_iter()
            .map(|v| Cocycle::new(sm.clone(), vec![id.clone(), v]).unwrap())
            .collect();
        for phi in &cocycles {
            assert!(phi.check().passed());
            for psi in &cocycles {
                let witness = cohomologous(phi, psi).unwrap();
                let m = to_hopf_module(&twist_semilinear(phi)).unwrap();
                let n = to_hopf_module(&twist_semilinear(psi)).unwrap();
                let iso = hopf_module_isomorphism(&m, &n).unwrap();
                assert_eq!(witness.is_some(), iso.is_some());
                assert!(witness.is_some());
            }
        }

        // Negative side: the two sign cocycles over GF(3) twist to
        // non-isomorphic Hopf modules.
        let ground = Algebra::ground(gf(3));
        let action = GroupAction::trivial(GroupPresentation::cyclic(2), ground);
        let tm = SemilinearModule::regular(&action);
        let one = ExactMatrix::identity(gf(3), 1);
        let minus = one.scale(&gf(3).from_i64(-1));
        let phi = Cocycle::new(tm.clone(), vec![one.clone(), one.clone()]).unwrap();
        let psi = Cocycle::new(tm.clone(), vec![one, minus]).unwrap();
        assert!(psi.check().passed());
        assert!(cohomologous(&phi, &psi).unwrap().is_none());
        let m = to_hopf_module(&twist_semilinear(&phi)).unwrap();
        let n = to_hopf_module(&twist_semilinear(&psi)).unwrap();
        assert!(hopf_module_isomorphism(&m, &n).unwrap().is_none());
    }
}
