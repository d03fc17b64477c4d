use pqn_core::random::Sampler;
use pqn_core::tensorfield::{
    compose_sharp_flat, evaluate_form, evaluate_multivector, flat, pairing, sharp, Chart, Form, VectorField,
};
use proptest::prelude::*;

fn setup() -> impl Strategy<Value = (usize, u64)> {
    (2usize..=4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permuted_components_are_signed((n, seed) in setup()) {
        let c = Chart::standard(n).unwrap();
        let om = Sampler::new(&c, seed).form(2, 2);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(om.component(&[i, j]), -om.component(&[j, i]));
            }
        }
    }

    #[test]
    fn sharp_flat_adjunctions((n, seed) in setup()) {
        let c = Chart::standard(n).unwrap();
        let mut s = Sampler::new(&c, seed);
        let (om, pi) = (s.form(2, 2), s.multivector(2, 2));
        let (x, y) = (s.vector_field(2), s.vector_field(2));
        let (a, b) = (s.form(1, 2), s.form(1, 2));
        prop_assert_eq!(pairing(&flat(&om, &x).unwrap(), &y).unwrap(), evaluate_form(&om, &[&x, &y]).unwrap());
        prop_assert_eq!(pairing(&b, &sharp(&pi, &a).unwrap()).unwrap(), evaluate_multivector(&pi, &[&a, &b]).unwrap());
    }

    #[test]
    fn sharp_flat_transpose((n, seed) in setup()) {
        let c = Chart::standard(n).unwrap();
        let mut s = Sampler::new(&c, seed);
        let (om, pi) = (s.form(2, 2), s.poisson_bivector(2));
        let (x, a) = (s.vector_field(2), s.form(1, 2));
        let m = compose_sharp_flat(&pi, &om).unwrap();
        let lhs = pairing(&m.apply_dual(&a).unwrap(), &x).unwrap();
        let rhs = pairing(&a, &m.apply(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // pi# O_flat X = pi#(i_X O)
        prop_assert_eq!(m.apply(&x).unwrap(), sharp(&pi, &flat(&om, &x).unwrap()).unwrap());
    }

    #[test]
    fn wedge_graded_commutative_and_associative((n, seed) in setup(), p in 0usize..3, q in 0usize..3, r in 0usize..2) {
        let c = Chart::standard(n).unwrap();
        let mut s = Sampler::new(&c, seed);
        let (a, b, e) = (s.form(p, 2), s.form(q, 2), s.form(r, 2));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let ba = if (p * q) % 2 == 1 { -ba } else { ba };
        prop_assert_eq!(ab.clone(), ba);
        prop_assert_eq!(ab.wedge(&e).unwrap(), a.wedge(&b.wedge(&e).unwrap()).unwrap());
    }

    #[test]
    fn coordinate_pairing_is_kronecker(n in 2usize..=5) {
        let c = Chart::standard(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let v = pairing(&Form::basis(&c, &[i]), &VectorField::basis(&c, j)).unwrap();
                prop_assert_eq!(v, if i == j { c.one() } else { c.zero() });
            }
        }
    }
}
