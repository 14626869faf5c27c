use numrange_core::battery::{self, Config};
use numrange_core::fixtures;

#[test]
fn default_battery_passes() {
    let report = battery::run(&Config::default(), None);
    print!("{}", report.render());
    assert!(report.all_passed(), "{}", report.render());
}

#[test]
fn battery_on_supplied_tensors() {
    let cfg = Config { instances: 4, ..Config::default() };
    for k in 1..=4 {
        let a = fixtures::range_example::<f64>(k).unwrap();
        let report = battery::run(&cfg, Some(&a));
        assert!(report.all_passed(), "example {k}\n{}", report.render());
    }
    let rect = fixtures::contraction_left::<f64>();
    let report = battery::run(&cfg, Some(&rect));
    assert!(report.all_passed(), "{}", report.render());
}
