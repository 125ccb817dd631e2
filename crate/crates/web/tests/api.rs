use tileprove_web::api;

#[test]
fn verdict_seven() {
    let v = api::verdict_summary(7).unwrap();
    assert_eq!(v["overall"], "NoTiling");
    assert_eq!(v["forms"].as_array().unwrap().len(), 0);
    assert_eq!(v["cases"].as_array().unwrap().len(), 6);
}

#[test]
fn verdict_range_is_enforced() {
    assert!(api::verdict_summary(2).is_err());
    assert!(api::verdict_summary(api::MAX_VERDICT_N + 1).is_err());
    assert_eq!(api::verdict_summary(13).unwrap()["overall"], "TilingExists");
}

#[test]
fn equilateral_forty() {
    let v = api::equilateral_candidates(40).unwrap();
    let c = v["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0]["tile"], serde_json::json!([5, 8, 7]));
    assert_eq!(c[0]["gamma"], "pi/3");
    assert_eq!(c[0]["s"], "5/8");
    assert!(api::equilateral_candidates(39).unwrap()["candidates"]
        .as_array()
        .unwrap()
        .is_empty());
    assert!(api::equilateral_candidates(1).is_err());
}

#[test]
fn tiling_draws_and_verifies() {
    let v = api::tiling("biquadratic", "3,2", false).unwrap();
    assert_eq!(v["tiles"], 13);
    assert_eq!(v["covers"], true);
    assert!(v["svg"].as_str().unwrap().starts_with("<svg"));

    let v = api::tiling("quadratic", "16,9,25,3", true).unwrap();
    assert_eq!(v["coloring"], "M = 3, identity Some(true)");
    assert!(v["svg"].as_str().unwrap().contains("#333"));

    let v = api::tiling("biquadratic", "2,1", true).unwrap();
    assert!(v["coloring"].as_str().unwrap().starts_with("not colorable"));
}

#[test]
fn tiling_rejects_bad_input() {
    assert!(api::tiling("spiral", "1", false).is_err());
    assert!(api::tiling("pythagorean", "6,8,10", false).is_err());
    assert!(api::tiling("quadratic", "16,9,25,40", false).is_err());
}
