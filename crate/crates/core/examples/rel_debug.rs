use g2daha::qdiff::{make_generator, Gen};
use std::time::Instant;

fn main() {
    let a1 = make_generator(Gen::A1);
    let a2 = make_generator(Gen::A2);
    eprintln!("generators built");
    let mut n = 0;
    for (sa, ca) in a1.terms() {
        for (sb, cb) in a2.terms() {
            let t0 = Instant::now();
            let shifted = cb.substitute_shift(sa);
            eprintln!("term {n}: shift {:?} x {:?}: substitute {:.2?}", sa, sb, t0.elapsed());
            let t0 = Instant::now();
            let _prod = ca.mul(&shifted);
            eprintln!("         mul {:.2?}", t0.elapsed());
            n += 1;
        }
    }
}
