use g2daha::psi::{admissible_triples, pieri_coefficient, PsiTable, Triple};
use g2daha::xring::p_generator;
use std::time::Instant;

fn main() {
    let table = PsiTable::build(10).unwrap();
    let t = Triple(4, 3, 3);
    let psi = table.get(&t).unwrap();
    println!("psi_{:?}: {} terms", t, psi.num_terms());
    let c = pieri_coefficient(1, 1, &Triple(4, 3, 3)).unwrap();
    println!("coefficient num/den terms: {}/{}", c.num().num_terms(), c.den().num_terms());
    let max_deg = |p: &g2daha::IntPoly2| p.max_exponents();
    println!("coefficient degs: num {:?} den {:?}", max_deg(c.num()), max_deg(c.den()));

    let t0 = Instant::now();
    let _scaled = psi.scale(&c);
    println!("scale by C: {:.2?}", t0.elapsed());

    let t0 = Instant::now();
    let _prod = p_generator(0).mul(psi);
    println!("p12 * psi: {:.2?}", t0.elapsed());

    // coefficient size stats
    let mut tot_num = 0usize;
    let mut max_u = 0i32;
    for tr in admissible_triples(10) {
        if let Some(p) = table.get(&tr) {
            for (_, c) in p.iter() {
                tot_num += c.num().num_terms();
                max_u = max_u.max(c.num().max_exponents()[0]).max(c.den().max_exponents()[0]);
            }
        }
    }
    println!("total coeff num terms {}, max u-deg {}", tot_num, max_u);
}
