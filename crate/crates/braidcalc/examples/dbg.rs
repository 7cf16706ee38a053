use braidcalc::braiding::{to_braid, Algorithm};
use braidcalc::gen::{random_diagram, SplitMix64};
use braidcalc::oracle::{jones_of_closure, jones_of_diagram};
use std::time::Instant;

fn main() {
    for (cr, mw) in [(6usize, 8usize), (8, 6), (8, 8)] {
        let mut rng = SplitMix64::new(4242);
        let t0 = Instant::now();
        let mut worst = std::time::Duration::ZERO;
        let mut fails = 0;
        for case in 0..50 {
            let d = random_diagram(&mut rng, cr, mw);
            let want = jones_of_diagram(&d, &[]).unwrap();
            for alg in [Algorithm::Lr, Algorithm::Kl] {
                let w = to_braid(&d, &[], alg).unwrap();
                let t1 = Instant::now();
                match jones_of_closure(&w, 12) {
                    Ok(got) => {
                        if got != want { println!("MISMATCH case {case} {alg:?} (cr={cr},mw={mw})"); fails += 1; }
                    }
                    Err(e) => { println!("ERR case {case} {alg:?} (cr={cr},mw={mw}): {e}"); fails += 1; }
                }
                worst = worst.max(t1.elapsed());
            }
        }
        println!("corpus cr={cr} mw={mw}: total={:?} worst_single={:?} fails={fails}", t0.elapsed(), worst);
    }
}
