use serde_json::Value;

use coulomb_core::kac_moody::{named, Weight};
use coulomb_core::quiver::strata_affine;
use coulomb_core::CancelToken;

fn weight(v: &Value) -> Weight {
    let fund = v["fund"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    Weight::new(fund, v["delta"].as_i64().unwrap())
}

#[test]
fn affine_strata_match_fixture() {
    let doc: Value = serde_json::from_str(include_str!("fixtures/strata_affine_a1.json")).unwrap();
    let gcm = named(doc["cartan"].as_str().unwrap()).unwrap();
    let bound = doc["bound"].as_u64().unwrap() as u32;
    let got = strata_affine(&gcm, &weight(&doc["lambda"]), &weight(&doc["mu"]), bound, &CancelToken::new()).unwrap();
    let want: Vec<(Weight, Vec<u32>)> = doc["strata"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let p = s["partition"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u32).collect();
            (weight(&s["kappa"]), p)
        })
        .collect();
    let got: Vec<(Weight, Vec<u32>)> = got.into_iter().map(|s| (s.kappa, s.partition)).collect();
    assert_eq!(got, want);
}
