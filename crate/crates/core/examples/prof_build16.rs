use g2daha::psi::PsiTable;
fn main() {
    for level in [14i64, 16] {
        let t0 = std::time::Instant::now();
        let table = PsiTable::build(level).unwrap();
        println!("build({level}): {:.2?}, entries {}", t0.elapsed(), table.triples().count());
    }
}
