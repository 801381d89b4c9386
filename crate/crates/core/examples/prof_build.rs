use g2daha::psi::PsiTable;
fn main() {
    let t0 = std::time::Instant::now();
    let table = PsiTable::build(12).unwrap();
    println!("build(12): {:.2?}, entries {}", t0.elapsed(), table.triples().count());
}
