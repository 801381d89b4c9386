use g2daha::qdiff::KnotRelation;
use std::time::Instant;

fn main() {
    for (id, rel) in KnotRelation::registry() {
        let t0 = Instant::now();
        let ok = rel.verify();
        println!("{id}: {ok} in {:.2?}", t0.elapsed());
    }
}
