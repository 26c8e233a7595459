fn main() {
    let r = syracuse_cycles::scan_cycle_equations(5, 16, 16);
    println!("instances {} hits {}", r.instances, r.hits.len());
    print!("{}", syracuse_cycles::scan_csv(&r));
}
