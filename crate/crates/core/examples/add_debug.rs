use g2daha::qdiff::{make_generator, Gen};
use g2daha::xring::XRational;
use std::time::Instant;

fn main() {
    let a1 = make_generator(Gen::A1);
    let a2 = make_generator(Gen::A2);
    // collect products with colliding total shift (0, b, c)
    let mut colliding: Vec<([i32; 3], XRational)> = vec![];
    for (sa, ca) in a1.terms() {
        for (sb, cb) in a2.terms() {
            let shift = [sa[0] + sb[0], sa[1] + sb[1], sa[2] + sb[2]];
            if shift[0] == 0 {
                colliding.push((shift, ca.mul(&cb.substitute_shift(sa))));
            }
        }
    }
    eprintln!("{} colliding products", colliding.len());
    let (s0, first) = &colliding[0];
    for (s, other) in &colliding[1..] {
        if s == s0 {
            eprintln!("adding two coefficients at shift {s0:?}");
            eprintln!("num terms: {} + {}", first.num().num_terms(), other.num().num_terms());
            eprintln!("den terms: {} + {}", first.den().num_terms(), other.den().num_terms());
            let t0 = Instant::now();
            let _sum = first.add(other);
            eprintln!("add took {:.2?}", t0.elapsed());
            break;
        }
    }
}
