fn main() {
    println!("semilab");
}
