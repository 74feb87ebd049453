//! Cross-module checks: data written and read back, and the trace picture
//! agreeing with the Cauchy-data picture.

use hankel_cone::debranges::{reconstruct_g, reconstruct_k};
use hankel_cone::htransform::h_transform_sampled;
use hankel_cone::io::{read_sampled, write_sampled, Format};
use hankel_cone::kleingordon::{trace_g, trace_k, CauchyData, ConeTraces, Extension, Parity};
use hankel_cone::quad::DecayHint;
use hankel_cone::sampled::{log_grid, uniform_grid, GridKind};
use hankel_cone::{SampledFunction64, WavePacket64};

#[test]
fn transform_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let hint = DecayHint::Exponential { rate: 1.0 };
    let f = SampledFunction64::from_fn(|y| (-y).exp(), log_grid(1e-3, 40.0, 1024), GridKind::LogUniform, hint).unwrap();
    for (name, format) in [("in.csv", Format::Csv), ("in.json", Format::Json)] {
        let path = dir.path().join(name);
        write_sampled(&path, &f, format).unwrap();
        let back = read_sampled::<f64>(&path, Some(hint)).unwrap();
        assert_eq!(back.values(), f.values());
        let h = h_transform_sampled(&back, log_grid(0.05, 10.0, 12), GridKind::LogUniform, 1e-10).unwrap();
        for (&x, &v) in h.grid().iter().zip(h.values()) {
            assert!((v - (-x).exp()).abs() < 1e-8);
        }
    }
}

#[test]
fn packet_json_round_trip() {
    let p = WavePacket64::gaussian(1.7, 0.2, 121, Parity::Even).unwrap();
    let q = WavePacket64::from_json(&p.to_json().unwrap()).unwrap();
    assert_eq!(p.alpha(), q.alpha());
    assert_eq!(p.synthesize_phi(0.3, 1.1), q.synthesize_phi(0.3, 1.1));
}

#[test]
fn cauchy_data_reproduce_the_traces() {
    // F = phi(0, x), G = psi(0, x) of an even packet: the reconstruction
    // from (F, G) gives back k = -p' and g on the light cone
    let phi = WavePacket64::gaussian(2.0, 0.25, 801, Parity::Even).unwrap();
    let psi = phi.dirac_partner().unwrap();
    let fg = CauchyData::from_packets(&phi, &psi, uniform_grid(2e-3, 30.0, 6000), GridKind::Uniform).unwrap();
    assert_eq!(fg.extension, Extension::FEvenGOdd);
    let grid = uniform_grid(0.5, 12.0, 24);
    let traces = ConeTraces {
        g: trace_g(&phi, grid.clone(), GridKind::Uniform).unwrap(),
        k: trace_k(&phi, grid.clone(), GridKind::Uniform).unwrap(),
        p: None,
        g_reflected: None,
    }
    .to_real()
    .unwrap();
    for (i, &v) in grid.iter().enumerate() {
        let k = reconstruct_k(&fg, v, 1e-10).unwrap();
        let g = reconstruct_g(&fg, v, 1e-10).unwrap();
        assert!((k - traces.k.values()[i]).abs() < 1e-6, "v = {v}: {k} vs {}", traces.k.values()[i]);
        assert!((g - traces.g.values()[i]).abs() < 1e-6, "u = {v}: {g} vs {}", traces.g.values()[i]);
    }
}
