use qrg::extpoly::{circ_build, extpoly_build, extpoly_expected};
use qrg::sgroups::Tag;

#[test]
fn divisibility_law_even_d_up_to_48() {
    for (k, f) in [(Tag::T, 1), (Tag::O, 1), (Tag::O, 2), (Tag::I, 1)] {
        for d in (2..=48).step_by(2) {
            let g = extpoly_build(d, f, k.clone()).unwrap();
            assert_eq!(g.reflections_generate(), extpoly_expected(d, f, &k), "d={d} f={f} K={k}");
        }
    }
}

#[test]
fn orders() {
    for (k, f, size) in [(Tag::T, 1, 24), (Tag::O, 1, 48), (Tag::O, 2, 48), (Tag::I, 1, 120)] {
        for d in (4..=24).step_by(4) {
            assert_eq!(extpoly_build(d, f, k.clone()).unwrap().order(), (d as usize) * size / f as usize);
            assert_eq!(circ_build(d, f, k.clone()).unwrap().order(), (d as usize) * size / (2 * f as usize));
        }
    }
    for d in [6, 12, 18] {
        assert_eq!(circ_build(d, 3, Tag::T).unwrap().order(), d as usize * 24 / 6);
    }
}

#[test]
fn circ_two_with_d_2_mod_4_coincides_with_circ_one() {
    for d in [2, 6, 10] {
        let a = circ_build(d, 2, Tag::O).unwrap();
        let b = circ_build(d, 1, Tag::O).unwrap();
        assert_eq!(a.order(), b.order());
        let mut la = a.labels.clone();
        let mut lb = b.labels.clone();
        la.sort();
        lb.sort();
        assert_eq!(la, lb);
    }
}

#[test]
fn boxdot_two_sixteen_has_few_complex_reflections() {
    let g = circ_build(16, 2, Tag::O).unwrap();
    assert_eq!(g.reflection_count(), 6);
    let b = extpoly_build(16, 2, Tag::O).unwrap();
    assert_eq!(b.reflection_count(), 6 + 8);
}
