use verma_core::catalog::Catalog;
use verma_core::embed::choose_nu_from_socle;
use verma_core::grassmann::{PointCounter, DEFAULT_PRIMES};
use verma_core::oracles::{brute_epsilon, brute_grass_compare};
use verma_core::root_datum::{DimVector, Graph, Weight};

fn sweep(graph: &str, height: u32) {
    let cat = Catalog::build(&Graph::builtin(graph).unwrap(), height + 1).unwrap();
    let pc = PointCounter::new(&cat, &DEFAULT_PRIMES).unwrap();
    let n = cat.vertex_count();
    let rho = Weight(vec![1; n]);
    for beta in DimVector::all_up_to(n, height) {
        for x in cat.classes_at(&beta).unwrap() {
            let nu = choose_nu_from_socle(&cat.socle_of(&x), &rho);
            for i in 0..n {
                let down = brute_grass_compare(&pc, &x, i, None).unwrap();
                assert!(down.pass, "{graph} down {} {i}: {:?}", cat.class_name(&x), down.diff);
                assert_eq!(down.engine.total_chi(), cat.head_of(&x).0[i] as i64);
                // enumeration cost grows with the number of summands
                if !beta.is_zero() && x.0.iter().sum::<u32>() <= 3 {
                    assert_eq!(brute_epsilon(&cat, &x, i).unwrap(), cat.head_of(&x).0[i] as usize);
                }
                let up = brute_grass_compare(&pc, &x, i, Some(&nu)).unwrap();
                assert!(up.pass, "{graph} up {} {i}: {:?}", cat.class_name(&x), up.diff);
            }
        }
    }
}

#[test]
fn a2_engine_matches_enumeration_to_height_5() {
    sweep("A2", 5);
}

#[test]
fn a3_engine_matches_enumeration_to_height_4() {
    sweep("A3", 4);
}
