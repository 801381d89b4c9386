use g2daha::psi::{pieri_coefficient, PsiTable, Triple};
use std::time::Instant;

fn main() {
    let table = PsiTable::build(10).unwrap();
    let psi = table.get(&Triple(3, 3, 4)).unwrap();
    let c = pieri_coefficient(1, -1, &Triple(3, 3, 4)).unwrap();
    let mut times: Vec<(std::time::Duration, usize, usize)> = vec![];
    let t_all = Instant::now();
    for (_, k) in psi.iter() {
        let t0 = Instant::now();
        let r = k.mul(&c);
        times.push((t0.elapsed(), k.num().num_terms(), r.num().num_terms()));
    }
    println!("total scale: {:.2?}", t_all.elapsed());
    times.sort();
    let n = times.len();
    for (d, nin, nout) in times.iter().rev().take(5) {
        println!("  slow: {:.2?} in {} out {}", d, nin, nout);
    }
    println!("  median: {:.2?}", times[n / 2].0);
}
