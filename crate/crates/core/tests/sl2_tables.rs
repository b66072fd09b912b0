use std::collections::BTreeSet;

use nilcone_core::sl2::{costandard_class, projective_class, standard_class, FlagTable};
use nilcone_core::{RepRing, RootDatum};

fn golden(name: &str) -> Vec<Vec<i64>> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            l.split('\t')
                .map(|f| match f {
                    "Delta" => 0,
                    "Nabla" => 1,
                    "P" => 2,
                    x => x.parse().unwrap(),
                })
                .collect()
        })
        .collect()
}

fn rows(tag: i64, t: &FlagTable) -> Vec<Vec<i64>> {
    t.rows()
        .into_iter()
        .map(|(layer, ic, m)| vec![tag, t.label, layer as i64, ic, m as i64])
        .collect()
}

#[test]
fn layers_match_transcribed_tables() {
    let expect: BTreeSet<Vec<i64>> = golden("sl2_layers.tsv").into_iter().collect();
    let mut got = BTreeSet::new();
    for n in (-10..=10).step_by(2) {
        got.extend(rows(0, &standard_class(n).unwrap()));
        got.extend(rows(1, &costandard_class(n).unwrap()));
        got.extend(rows(2, &projective_class(n).unwrap()));
    }
    assert_eq!(got, expect);
}

#[test]
fn standard_flags_match_transcribed_tables() {
    for r in golden("sl2_standard_flags.tsv") {
        let flag = projective_class(r[0]).unwrap().standard_flag.unwrap();
        assert_eq!(flag[r[1] as usize], r[2], "P_{}", r[0]);
    }
}

#[test]
fn spherical_convolution_is_the_adjoint_tensor_product() {
    let ring = RepRing::new(RootDatum::preset("A1-adj").unwrap());
    let d = ring.datum();
    for m in (0..=20).step_by(2) {
        for k in (0..=20).step_by(2) {
            let tensor = ring
                .tensor_decompose(&d.from_dynkin(&[m]).unwrap(), &d.from_dynkin(&[k]).unwrap())
                .unwrap();
            let as_labels: Vec<(i64, u64)> = tensor.entries().iter().map(|(w, &c)| (d.dynkin(w)[0], c)).collect();
            let conv = nilcone_core::sl2::convolve_ic(m, k).unwrap();
            let conv: Vec<(i64, u64)> = conv.terms().iter().map(|(&n, &c)| (n, c)).collect();
            let mut as_labels = as_labels;
            as_labels.sort();
            assert_eq!(as_labels, conv, "m={m} k={k}");
        }
    }
}
