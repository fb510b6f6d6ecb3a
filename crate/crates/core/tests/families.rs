use cwlab::builders::*;
use cwlab::constructions::{gen_g, gen_h, gen_hprime};
use cwlab::{eval_term, is_linear, term_width};

#[test]
fn generator_counts() {
    for n in 2..=10 {
        let g = gen_g(n).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2 * n, n + n * (n - 1) / 2));
        let h = gen_h(n).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (5 * n, 8 * n * n - 4 * n));
        let hp = gen_hprime(n).unwrap();
        assert_eq!((hp.vertex_count(), hp.edge_count()), (5 * n + 1, 8 * n * n + 6 * n));
    }
}

#[test]
fn builders_evaluate_to_generators() {
    for n in 2..=30 {
        for (g, t, l) in [
            (gen_g(n), build_term_g(n), build_linear_term_g(n)),
            (gen_h(n), build_term_h(n), build_linear_term_h(n)),
            (gen_hprime(n), build_term_hprime(n), build_linear_term_hprime(n)),
        ] {
            let (g, t, l) = (g.unwrap(), t.unwrap(), l.unwrap());
            assert_eq!(eval_term(&t).unwrap().graph, g);
            assert_eq!(term_width(&t), 3);
            assert_eq!(eval_term(&l).unwrap().graph, g);
            assert_eq!(term_width(&l), 4);
            assert!(is_linear(&l));
        }
    }
}

#[test]
fn small_sizes_are_rejected() {
    assert!(gen_h(1).is_err());
    assert!(build_term_h(1).is_err());
}
