fn main() {
    let rep = syracuse_routes::catalog_report();
    for m in &rep.missing {
        let s: Vec<String> = m.forms.iter().map(|f| f.to_string()).collect();
        println!("missing {}  [{}]", s.join(" -> "), m.reason);
    }
    for r in &rep.extra {
        println!("extra   {r}  {}", r.triplet);
    }
}
