use g2daha::psi::{pieri_coefficient, PsiTable, Triple};
use g2daha::xring::p_generator;
use std::time::Instant;

fn main() {
    let table = PsiTable::build(10).unwrap();
    // rebuild the level-12 entry (4,4,4) by hand with timers
    let src = Triple(3, 3, 4);
    let psi_src = table.get(&src).unwrap();
    println!("src terms: {}", psi_src.num_terms());

    let t0 = Instant::now();
    let mut acc = p_generator(0).mul(psi_src);
    println!("mul p12: {:.2?} ({} terms)", t0.elapsed(), acc.num_terms());

    for (a, b) in [(1i64, -1i64), (-1, 1), (-1, -1)] {
        let tgt = Triple(src.0 + a, src.1 + b, src.2);
        if let Some(psi) = table.get(&tgt) {
            let c = pieri_coefficient(a, b, &src).unwrap();
            let t0 = Instant::now();
            let scaled = psi.scale(&c);
            let t1 = Instant::now();
            acc = acc.sub(&scaled);
            println!("  ({a},{b}): scale {:.2?}, sub {:.2?}", t1 - t0, t1.elapsed());
        }
    }
    let lead = pieri_coefficient(1, 1, &src).unwrap();
    let t0 = Instant::now();
    let psi_new = acc.scale(&lead.inv().unwrap());
    println!("final scale: {:.2?} ({} terms)", t0.elapsed(), psi_new.num_terms());
}
