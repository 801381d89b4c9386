use g2daha::psi::PsiTable;
use std::time::Instant;

fn main() {
    for level in [6i64, 8, 10, 12] {
        let t0 = Instant::now();
        let table = PsiTable::build(level).unwrap();
        let n = table.triples().count();
        let terms: usize = table
            .triples()
            .map(|t| table.get(t).unwrap().num_terms())
            .sum();
        println!(
            "level {level}: {n} entries, {terms} total terms, {:.2?}",
            t0.elapsed()
        );
    }
}
