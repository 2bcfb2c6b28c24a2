use finsler_ineq::{NormSpec, SymTensor};

pub fn tilted(d: usize) -> SymTensor {
    SymTensor::from_fn(d, |i, j| match (i, j) {
        (0, 0) => 2.0,
        (0, 1) | (1, 0) => 0.3,
        _ if i == j => -(1.0 + 0.25 * i as f64),
        _ if i.abs_diff(j) == 1 => 0.1,
        _ => 0.0,
    })
    .unwrap()
}

/// One spec per family and parameter variant at dimension `d`.
pub fn catalog(d: usize) -> Vec<NormSpec> {
    let mut out = vec![
        NormSpec::minkowski(d).unwrap(),
        NormSpec::minkowski_bilinear(tilted(d)).unwrap(),
        NormSpec::p_pseudo_norm(d, 1.5).unwrap(),
        NormSpec::p_pseudo_norm(d, 3.0).unwrap(),
        NormSpec::euclidean_p(d, 2.5).unwrap(),
        NormSpec::berwald_moor(d).unwrap(),
        NormSpec::weighted_geometric((1..=d).map(|i| i as f64 / (d * (d + 1) / 2) as f64).collect())
            .unwrap(),
        NormSpec::bimetric(tilted(d)).unwrap(),
        NormSpec::kropina(d).unwrap(),
        NormSpec::stationary(NormSpec::euclidean_p(d - 1, 3.0).unwrap()).unwrap(),
    ];
    if d >= 5 {
        out.push(NormSpec::degenerate_minkowski(d, 2).unwrap());
    }
    out
}
