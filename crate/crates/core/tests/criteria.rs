use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphclosure::criteria::{model_bijectivity, shape_classify, strict_bijectivity, Answer, Shape};
use sphclosure::io;
use sphclosure::orbits::{all_orbits, check_faithful};
use sphclosure::{Divisor, SphericalSystem};

fn faithful(sys: &SphericalSystem, seed: u64, count: usize) -> Vec<Divisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.colors.len();
    let mut out = vec![];
    for _ in 0..count * 50 {
        let d = Divisor { mult: (0..n).map(|_| rng.gen_range(0..=2)).collect() };
        if d.mult.iter().any(|&m| m > 0) && check_faithful(sys, &d).is_faithful() {
            out.push(d);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

fn b2_root(sys: &SphericalSystem, v: &[i64]) -> usize {
    sys.sigma_index(v).unwrap()
}

#[test]
fn shapes_of_model_systems() {
    let so11 = io::corpus_entry("so11_model").unwrap().system;
    let c = shape_classify(&so11, b2_root(&so11, &[0, 0, 0, 1, 1])).unwrap();
    assert_eq!(c.shape, Shape::B1);
    assert_eq!(c.m_sigma, Some(5));
    assert_eq!(so11.colors[c.d_flat].id, "d_alpha5");

    let spin7 = io::corpus_entry("spin7_model").unwrap().system;
    let c = shape_classify(&spin7, b2_root(&spin7, &[0, 1, 1])).unwrap();
    assert_eq!(c.shape, Shape::B2);
    assert!(c.pair_distinguished);

    let sp8 = io::corpus_entry("sp8_model").unwrap().system;
    let c = shape_classify(&sp8, b2_root(&sp8, &[0, 0, 1, 1])).unwrap();
    assert_eq!(c.shape, Shape::C1);
    assert_eq!(c.m_sigma, Some(4));
    assert_eq!(sp8.colors[c.d_sharp].id, "d_alpha4");

    let f4 = io::corpus_entry("f4_model").unwrap().system;
    assert_eq!(shape_classify(&f4, b2_root(&f4, &[0, 1, 1, 0])).unwrap().shape, Shape::F1);

    let c2 = io::corpus_entry("c2_doubled_short").unwrap().system;
    let c = shape_classify(&c2, b2_root(&c2, &[1, 1])).unwrap();
    assert_eq!(c.shape, Shape::Other);
    assert!(c.note.is_some());
}

#[test]
fn so11_with_d_alpha2_fails_the_b1_clause() {
    let e = io::corpus_entry("so11_model").unwrap();
    let v = strict_bijectivity(&e.system, &e.divisor("d_alpha2").unwrap()).unwrap();
    assert_eq!(v.bijective, Answer::No);
    assert_eq!(v.witnesses.len(), 1);
    assert_eq!(v.witnesses[0].at, "a4+a5");
    assert_eq!(v.witnesses[0].clause, "i");
}

#[test]
fn random_strict_runs_include_both_answers() {
    let mut yes = 0;
    let mut no = 0;
    for (i, name) in ["so11_model", "spin7_model", "sp8_model", "so7_model", "f4_model"].iter().enumerate() {
        let e = io::corpus_entry(name).unwrap();
        for d in faithful(&e.system, i as u64, 30) {
            match strict_bijectivity(&e.system, &d).unwrap().bijective {
                Answer::Yes => yes += 1,
                _ => no += 1,
            }
        }
    }
    assert!(yes > 10 && no > 10, "yes = {yes}, no = {no}");
}

/// On model varieties the weight criterion and the strict criterion agree
/// under `lambda = omega(delta)`.
#[test]
fn model_weights_agree_with_strict_criterion() {
    for (i, e) in io::corpus().into_iter().filter(|e| e.model).enumerate() {
        let sys = &e.system;
        for d in faithful(sys, 100 + i as u64, 40) {
            let lambda = sys.omega_of_divisor(&d);
            let by_weight = model_bijectivity(&sys.rs, &lambda).unwrap().bijective;
            let strict = strict_bijectivity(sys, &d).unwrap().bijective;
            let pipeline = all_orbits(sys, &d).unwrap().pipeline_bijective();
            assert_eq!(by_weight, strict, "{} {:?} lambda {:?}", e.name, d.mult, lambda);
            assert_eq!(strict == Answer::Yes, pipeline, "{} {:?}", e.name, d.mult);
        }
    }
}

#[test]
fn model_criterion_on_weights() {
    let rs = sphclosure::RootSystem::new(&[(sphclosure::DynkinKind::C, 4)]).unwrap();
    // double-link numbering of C4 starts at a4, so a2 sits at odd position 3
    assert_eq!(model_bijectivity(&rs, &[0, 1, 0, 0]).unwrap().bijective, Answer::No);
    assert_eq!(model_bijectivity(&rs, &[0, 0, 1, 0]).unwrap().bijective, Answer::Yes);
    assert_eq!(model_bijectivity(&rs, &[0, 0, 1, 1]).unwrap().bijective, Answer::Yes);
    assert_eq!(model_bijectivity(&rs, &[1, 0, 0, 0]).unwrap().bijective, Answer::Yes);
    assert!(model_bijectivity(&rs, &[0, 0, 0, 0]).is_err());
    assert!(model_bijectivity(&rs, &[0, -1, 0, 0]).is_err());
}
