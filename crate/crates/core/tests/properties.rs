//! Randomised invariants on permutation groups of small degree.

use proptest::prelude::*;

use formalab_core::chief::z_pi_f_ordered;
use formalab_core::{
    quotient_group, z_pi_f, Formation, Group, Perm, PrimeSet, SubgroupSet, DEFAULT_ORDER_CAP,
};

fn perm_group(degree: usize, gens: &[Vec<usize>]) -> Group {
    let perms: Vec<Perm> = gens
        .iter()
        .map(|v| Perm::from_images(v.clone()).unwrap())
        .collect();
    Group::from_permutations("R", degree, &perms, DEFAULT_ORDER_CAP).unwrap()
}

/// Groups generated by one to three random permutations of degree 2 to 5.
fn groups() -> impl Strategy<Value = Group> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (Just(n), prop::collection::vec(perm, 1..=3))
        })
        .prop_map(|(n, gens)| perm_group(n, &gens))
}

fn small_direct_products() -> impl Strategy<Value = Group> {
    (groups(), 1usize..=4)
        .prop_map(|(g, k)| Group::direct_product(&g, &Group::cyclic(k), DEFAULT_ORDER_CAP).unwrap())
}

fn formations() -> Vec<Formation> {
    vec![
        Formation::Triv,
        Formation::Sol,
        Formation::Nil,
        Formation::Sup,
        Formation::PSup(2),
        Formation::PSup(3),
        Formation::PNilp(2),
        Formation::PNilp(3),
        Formation::PDec(2),
        Formation::PDec(3),
        Formation::PiClosed(PrimeSet::single(2)),
        Formation::PiClosed(PrimeSet::single(3)),
        Formation::GPi(PrimeSet::of(&[2, 3])),
        Formation::SPi(PrimeSet::of(&[2, 3])),
        Formation::AExp(2),
        Formation::NA,
        Formation::NilPow(2),
        Formation::SylTower,
    ]
}

fn member(g: &Group, s: &SubgroupSet, f: &Formation) -> bool {
    f.is_member(&g.materialize(s).group)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lattice_invariants(g in groups()) {
        let lat = g.lattice().unwrap();
        prop_assert!(lat.get(0).is_trivial());
        prop_assert!(lat.get(lat.whole_index()).is_whole());
        for i in 0..lat.len() {
            let h = lat.get(i);
            prop_assert_eq!(g.order() % h.order(), 0);
            prop_assert_eq!(&g.closure(&h.elements().collect::<Vec<_>>()), h);
            prop_assert_eq!(lat.is_normal(i), g.is_normal(h));
            prop_assert_eq!(lat.index_of(h), Some(i));
            for j in lat.above(i) {
                prop_assert!(h.is_subgroup_of(lat.get(j)) && h != lat.get(j));
            }
            if i > 0 {
                prop_assert!(lat.get(i - 1).order() <= h.order());
            }
        }
        let normal_count = (0..lat.len()).filter(|&i| lat.is_normal(i)).count();
        prop_assert_eq!(normal_count, g.normal_subgroups().len());
    }

    #[test]
    fn regular_representation_round_trip(g in groups()) {
        let reg = Group::from_permutations("reg", g.order(), &g.regular_generators(), DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(reg.order(), g.order());
        prop_assert_eq!(reg.order_profile(), g.order_profile());
        prop_assert!(reg.is_isomorphic_to(&g).unwrap());
    }

    #[test]
    fn quotients_are_homomorphic_images(g in groups()) {
        let lat = g.lattice().unwrap();
        for n in g.normal_subgroups() {
            let q = quotient_group(&g, n).unwrap();
            prop_assert_eq!(q.target.order() * n.order(), g.order());
            for x in 0..g.order() {
                for y in 0..g.order() {
                    prop_assert_eq!(q.proj[g.mul(x, y)], q.target.mul(q.proj[x], q.proj[y]));
                }
            }
            for h in lat.subgroups() {
                prop_assert_eq!(q.preimage(&q.image(h)), g.join(h, n));
            }
        }
    }

    #[test]
    fn direct_products(a in groups(), k in 1usize..=4) {
        let c = Group::cyclic(k);
        let p = Group::direct_product(&a, &c, DEFAULT_ORDER_CAP).unwrap();
        prop_assert_eq!(p.order(), a.order() * k);
        prop_assert_eq!(p.is_abelian(), a.is_abelian());
        prop_assert_eq!(p.centre().order(), a.centre().order() * k);
        prop_assert_eq!(p.is_nilpotent(), a.is_nilpotent());
        prop_assert_eq!(p.derived_subgroup().order(), a.derived_subgroup().order());
    }

    #[test]
    fn formation_closure_axioms(g in groups()) {
        let lat = g.lattice().unwrap();
        let normals = g.normal_subgroups();
        for f in formations() {
            let in_f: Vec<bool> = normals.iter().map(|n| {
                let q = quotient_group(&g, n).unwrap();
                f.is_member(&q.target)
            }).collect();
            if f.is_member(&g) {
                prop_assert!(in_f.iter().all(|&b| b), "{f}: quotient of a member left F");
                for h in lat.subgroups() {
                    prop_assert!(member(&g, h, &f), "{f}: subgroup of a member left F");
                }
            }
            for (i, a) in normals.iter().enumerate() {
                for (j, b) in normals.iter().enumerate() {
                    if in_f[i] && in_f[j] {
                        let q = quotient_group(&g, &a.intersection(b)).unwrap();
                        prop_assert!(f.is_member(&q.target), "{f}: not closed under subdirect products");
                    }
                }
            }
            let r = f.residual(&g);
            prop_assert!(g.is_normal(&r));
            prop_assert!(f.is_member(&quotient_group(&g, &r).unwrap().target));
            for (i, n) in normals.iter().enumerate() {
                prop_assert_eq!(in_f[i], r.is_subgroup_of(n), "{}: residual is not least", f);
            }
            if f.saturated() {
                let phi = g.frattini().unwrap();
                if f.is_member(&quotient_group(&g, &phi).unwrap().target) {
                    prop_assert!(f.is_member(&g), "{f}: not saturated");
                }
            }
        }
    }

    #[test]
    fn satellites_lie_inside_their_formation(g in groups()) {
        for f in formations().into_iter().filter(|f| f.has_satellite()) {
            for p in [2, 3, 5] {
                if f.satellite_member(p, &g).unwrap() {
                    prop_assert!(f.is_member(&g), "{f}({p}) contains a non-member");
                }
            }
        }
    }

    #[test]
    fn hypercentre_is_independent_of_absorption_order(g in small_direct_products()) {
        for f in [Formation::Nil, Formation::Sup, Formation::NA, Formation::PNilp(2), Formation::PDec(3)] {
            for pi in [PrimeSet::All, PrimeSet::single(2), PrimeSet::single(3)] {
                let z = z_pi_f(&g, &f, &pi).unwrap();
                prop_assert_eq!(&z_pi_f_ordered(&g, &f, &pi, false).unwrap(), &z);
                prop_assert_eq!(&z_pi_f_ordered(&g, &f, &pi, true).unwrap(), &z);
                prop_assert!(g.is_normal(&z));
            }
        }
    }
}
