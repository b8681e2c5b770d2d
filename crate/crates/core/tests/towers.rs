use profin::normal::NormalLattice;
use profin::towers::{cyclic_tower, fitting_degenerate_tower, wreath_tower, Tower, TowerLattices};
use profin::{Caps, PermGroup};

fn oi(lat: &NormalLattice, n: u64) -> PermGroup {
    let i_n = lat.member(lat.small_normals_meet(n)).set.clone();
    lat.table().to_group(&lat.oblique_core_set(&i_n))
}

fn towers(caps: &Caps) -> Vec<Tower> {
    vec![
        cyclic_tower(2, 5, caps).unwrap(),
        cyclic_tower(3, 3, caps).unwrap(),
        wreath_tower(2, 3, caps).unwrap(),
        wreath_tower(3, 2, caps).unwrap(),
        fitting_degenerate_tower(&[2, 3], 2, caps).unwrap(),
        fitting_degenerate_tower(&[3, 2], 2, caps).unwrap(),
    ]
}

#[test]
fn maps_are_surjective_and_compose() {
    let caps = Caps::default();
    for t in towers(&caps) {
        for (i, m) in t.maps().iter().enumerate() {
            assert!(m.is_surjective(), "{} level {}", t.family(), i + 1);
            assert!(m.image().same_elements(&t.levels()[i]));
        }
        if t.depth() >= 3 {
            let composite = t.maps()[1].then(&t.maps()[0]).unwrap();
            assert!(composite.is_surjective());
        }
    }
}

#[test]
fn oblique_images_descend_and_ob_grows() {
    let caps = Caps::default();
    for t in towers(&caps) {
        let lats = TowerLattices::new(&t, &caps).unwrap();
        for n in 1..=10 {
            let (values, _) = lats.ob_sequence(n).unwrap();
            assert!(
                values.windows(2).all(|w| w[0] <= w[1]),
                "{} n={n}: {values:?}",
                t.family()
            );
            for i in 0..t.depth() - 1 {
                let upper = oi(lats.lattice(i + 1), n);
                let image = t.maps()[i].image_of_subgroup(&upper).unwrap();
                assert!(
                    image.is_subgroup_of(&oi(lats.lattice(i), n)),
                    "{} level {} n={n}",
                    t.family(),
                    i + 2
                );
            }
        }
    }
}

#[test]
fn fitting_degenerate_levels_are_faithful() {
    let caps = Caps::default();
    let primes = [2u64, 3, 2];
    let t = fitting_degenerate_tower(&primes, 3, &caps).unwrap();
    for i in 1..t.depth() {
        let g = &t.levels()[i];
        let lat = NormalLattice::new(g, &caps).unwrap();
        // O_p is the permutation module of the level below
        let v = lat.order(lat.pi_core(&[primes[i]]));
        assert_eq!(v, primes[i].pow(t.levels()[i - 1].degree() as u32));
        assert_eq!(lat.order(lat.pi_core(&[primes[i - 1]])), 1);
    }
}
