use g2daha::kfield::{content, divexact, poly_gcd, primitive_part};
use g2daha::psi::{pieri_coefficient, PsiTable, Triple};
use std::time::Instant;

fn main() {
    let table = PsiTable::build(10).unwrap();
    let psi = table.get(&Triple(3, 3, 4)).unwrap();
    let c = pieri_coefficient(1, -1, &Triple(3, 3, 4)).unwrap();
    // take the biggest coefficient of psi
    let big = psi
        .iter()
        .max_by_key(|(_, k)| k.num().num_terms() + k.den().num_terms())
        .unwrap()
        .1;
    println!(
        "coeff num/den terms {}/{} degs {:?}/{:?}",
        big.num().num_terms(),
        big.den().num_terms(),
        big.num().max_exponents(),
        big.den().max_exponents()
    );
    println!(
        "C num/den terms {}/{} degs {:?}/{:?}",
        c.num().num_terms(),
        c.den().num_terms(),
        c.num().max_exponents(),
        c.den().max_exponents()
    );
    // the cross gcd that mul does: gcd(big.num, c.den), gcd(c.num, big.den)
    for (x, y, label) in [
        (big.num(), c.den(), "gcd(num, C.den)"),
        (c.num(), big.den(), "gcd(C.num, den)"),
    ] {
        let t0 = Instant::now();
        let g = poly_gcd(x, y);
        println!("{label}: {:.2?} -> {} terms", t0.elapsed(), g.num_terms());
        let t0 = Instant::now();
        let _ = primitive_part(x);
        let _ = primitive_part(y);
        println!("  primitive parts: {:.2?}", t0.elapsed());
        let t0 = Instant::now();
        let _ = content(x);
        println!("  content(x): {:.2?}", t0.elapsed());
        let t0 = Instant::now();
        let d = divexact(y, x);
        println!("  divexact trial: {:.2?} ({})", t0.elapsed(), d.is_some());
    }
}
