use gradedlie_web::{brackets, cohomology, free_dims, motivic_dims};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn motivic_table() {
    let v = parse(motivic_dims(1, 0, 0, -16));
    assert_eq!(v["ok"], true);
    assert_eq!(v["generators"].as_array().unwrap().len(), 3);
    let last = v["dims"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((last["weight"].as_i64(), last["dim"].as_u64()), (Some(-16), Some(1)));
    assert_eq!(parse(motivic_dims(1, 0, 0, -7))["ok"], false);
    assert_eq!(parse(motivic_dims(1, 0, 0, -60))["ok"], false);
}

#[test]
fn free_table() {
    let v = parse(free_dims("1, 1", 4));
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 1, 2, 3]);
    assert_eq!(parse(free_dims("1, a", 4))["ok"], false);
}

#[test]
fn bracket_pair() {
    let v = parse(brackets("[x,[x,y]]", "[x,[x,[x,[x,y]]]]"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["ihara_weight"], -16);
    assert_eq!(parse(brackets("x", "y"))["ihara"], "0");
    let bad = parse(brackets("[x,z]", "y"));
    assert!(bad["error"].as_str().unwrap().contains("column 4"));
}

#[test]
fn abelian_cohomology() {
    let v = parse(cohomology("generator a -1\ngenerator b -1\nrelation [a,b]\nbound -3\n", 2));
    assert_eq!(v["h"][2]["nonzero"][0]["weight"], 2);
    assert_eq!(v["h"][2]["nonzero"][0]["dim"], 1);
    assert_eq!(parse(cohomology("generator a -1\n", 2))["ok"], false);
}
