use formscheme::suites::{run, Limits, Suite};

#[test]
fn all_suites_pass_on_a_small_grid() {
    let report = run(Suite::All, Limits { max_q: 4, max_m: 4, ..Limits::default() });
    for c in &report.checks {
        println!("{:>9} {:<22} {:>6} ms {}", c.suite, c.name, c.millis, c.detail.as_deref().unwrap_or("ok"));
    }
    assert!(report.pass);
}
