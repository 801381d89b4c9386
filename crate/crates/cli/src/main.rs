fn main() {
    println!("g2daha");
}
