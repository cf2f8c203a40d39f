// SPDX-License-Identifier: Apache-2.0

use phaselab_core::{BoolScalar, CycloScalar, Morphism, Scalar, TheoryObject};
use proptest::prelude::*;

fn cyclo() -> impl Strategy<Value = CycloScalar> {
    (prop::array::uniform4(-6i64..=6), 0u32..4).prop_map(|(c, k)| CycloScalar::new(c, k))
}

/// `ω^j (a + b i) / √2^k`: the amplitudes whose squared modulus is rational.
fn stabiliser_amplitude() -> impl Strategy<Value = CycloScalar> {
    (-8i64..=8, -8i64..=8, 0u32..5, 0i64..8)
        .prop_map(|(a, b, k, j)| CycloScalar::new([a, 0, b, 0], k).mul(&CycloScalar::omega_pow(j)))
}

fn object(base: usize, max_power: u32) -> impl Strategy<Value = TheoryObject> {
    (0..=max_power).prop_map(move |p| TheoryObject::new(p, base))
}

fn cyclo_morphism(dom: TheoryObject, cod: TheoryObject) -> impl Strategy<Value = Morphism<CycloScalar>> {
    prop::collection::vec(prop_oneof![Just(CycloScalar::zero()), cyclo()], dom.dim() * cod.dim())
        .prop_map(move |e| Morphism::new(dom, cod, e).unwrap())
}

fn bool_morphism(dom: TheoryObject, cod: TheoryObject) -> impl Strategy<Value = Morphism<BoolScalar>> {
    prop::collection::vec(any::<bool>().prop_map(BoolScalar), dom.dim() * cod.dim())
        .prop_map(move |e| Morphism::new(dom, cod, e).unwrap())
}

/// `f: a → b`, `g: b → c`, `h: c → d`.
fn cyclo_chain() -> impl Strategy<Value = [Morphism<CycloScalar>; 3]> {
    (object(2, 2), object(2, 2), object(2, 2), object(2, 1)).prop_flat_map(|(a, b, c, d)| {
        (cyclo_morphism(a, b), cyclo_morphism(b, c), cyclo_morphism(c, d)).prop_map(|(f, g, h)| [f, g, h])
    })
}

fn bool_chain() -> impl Strategy<Value = [Morphism<BoolScalar>; 3]> {
    (object(4, 1), object(4, 1), object(4, 1), object(2, 2)).prop_flat_map(|(a, b, c, d)| {
        let d = TheoryObject::new(d.power.min(1), 4);
        (bool_morphism(a, b), bool_morphism(b, c), bool_morphism(c, d)).prop_map(|(f, g, h)| [f, g, h])
    })
}

fn smc_laws<S: Scalar>([f, g, h]: &[Morphism<S>; 3]) -> Result<(), TestCaseError> {
    let (a, b, c) = (f.dom(), f.cod(), g.cod());
    let gf = g.compose(f).unwrap();
    prop_assert_eq!(gf.dagger(), f.dagger().compose(&g.dagger()).unwrap());
    prop_assert_eq!(f.tensor(h).dagger(), f.dagger().tensor(&h.dagger()));
    prop_assert_eq!(&f.dagger().dagger(), f);
    prop_assert_eq!(h.compose(&gf).unwrap(), h.compose(g).unwrap().compose(f).unwrap());
    prop_assert_eq!(Morphism::identity(b).compose(f).unwrap(), f.clone());
    prop_assert_eq!(
        g.tensor(h).compose(&f.tensor(&Morphism::identity(c))).unwrap(),
        gf.tensor(h)
    );
    let d = h.cod();
    prop_assert_eq!(
        Morphism::swap(b, d).compose(&f.tensor(h)).unwrap(),
        h.tensor(f).compose(&Morphism::swap(a, c)).unwrap()
    );
    prop_assert_eq!(
        Morphism::<S>::swap(b, a).compose(&Morphism::swap(a, b)).unwrap(),
        Morphism::identity(a.tensor(&b))
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dagger_smc_laws_cyclo(fgh in cyclo_chain()) {
        smc_laws(&fgh)?;
    }

    #[test]
    fn dagger_smc_laws_bool(fgh in bool_chain()) {
        smc_laws(&fgh)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn squared_modulus_is_multiplicative(a in stabiliser_amplitude(), b in stabiliser_amplitude()) {
        let lhs = a.mul(&b).squared_modulus().unwrap();
        prop_assert_eq!(lhs, a.squared_modulus().unwrap() * b.squared_modulus().unwrap());
    }

    #[test]
    fn canonical_form_is_unique(c in prop::array::uniform4(-6i64..=6), k in 0u32..4) {
        // Multiplying numerator by √2² = 2 and the exponent by 2 is the same value.
        let a = CycloScalar::new(c, k);
        let b = CycloScalar::new(c.map(|x| 2 * x), k + 2);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(CycloScalar::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn cyclo_ring_laws(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).dagger(), a.dagger().mul(&b.dagger()));
        prop_assert_eq!(a.dagger().dagger(), a.clone());
        // |ab|² = |a|²|b|² holds in the ring even where it is irrational.
        prop_assert_eq!(a.mul(&b).dagger().mul(&a.mul(&b)), a.dagger().mul(&a).mul(&b.dagger().mul(&b)));
        prop_assert!(a.add(&a.neg()).is_zero());
        if !b.is_zero() {
            if let Some(q) = a.mul(&b).checked_div(&b) {
                prop_assert_eq!(q, a);
            }
        }
    }

    #[test]
    fn sqrt_squares_back(a in cyclo()) {
        let sq = a.mul(&a);
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r), sq);
    }

    #[test]
    fn bool_semiring_laws(a in any::<bool>(), b in any::<bool>(), c in any::<bool>()) {
        let (a, b, c) = (BoolScalar(a), BoolScalar(b), BoolScalar(c));
        prop_assert_eq!(a.add(&a), a);
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&BoolScalar::zero()), a);
        prop_assert_eq!(a.mul(&BoolScalar::one()), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn phase_congruence(
        f in (object(2, 2), object(2, 1)).prop_flat_map(|(a, b)| cyclo_morphism(a, b)),
        j in 0i64..8,
    ) {
        let g = f.scale(&CycloScalar::omega_pow(j));
        prop_assert!(f.equal_up_to_phase(&g));
        prop_assert_eq!(f.phase_key(), g.phase_key());
        if !f.is_zero() {
            prop_assert_eq!(f.proportionality(&g), Some(CycloScalar::omega_pow(j)));
            // Doubling changes the modulus, so it is not a phase.
            prop_assert!(!f.equal_up_to_phase(&f.scale(&CycloScalar::from_int(2))));
        }
    }

    #[test]
    fn apply_local_matches_kronecker(
        s in cyclo_morphism(TheoryObject::unit(2), TheoryObject::new(3, 2)),
        g in cyclo_morphism(TheoryObject::new(1, 2), TheoryObject::new(2, 2)),
        offset in 0u32..3,
    ) {
        let q = TheoryObject::new(1, 2);
        let before = Morphism::identity(q.with_power(offset));
        let after = Morphism::identity(q.with_power(2 - offset));
        let full = before.tensor(&g).tensor(&after);
        prop_assert_eq!(s.apply_local(&g, offset).unwrap(), full.compose(&s).unwrap());
    }
}
