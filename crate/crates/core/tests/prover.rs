//! Prover fixtures on the reference parallelograms.

use trispec::certifier::certify_selected;
use trispec::fem::{fem_estimates, first_pass};
use trispec::geometry::Triangle;
use trispec::mps::{bracket_around, golden_search, BasisSpec};
use trispec::prover::{certify_positions, intermediate_eigs, ClaimedPair, ProverConfig};

/// λ2, λ3 over a ξ41 side of B lie strictly between λ1 and λ4, and the four
/// enclosures certify their indices against the propagated λ5 bound.
#[test]
fn intermediates_on_a_side_of_b() {
    let cfg = ProverConfig::reference();
    let opts = cfg.certify_options();
    let (side, _) = cfg.side("B:+v41").unwrap();
    let m = intermediate_eigs(&side, &opts).unwrap();
    assert_eq!(m.over_side.len(), 2);
    assert!(m.over_side[0].lt(&m.over_side[1]), "{} and {} overlap", m.over_side[0], m.over_side[1]);

    let center = side.center_triangle().unwrap();
    let fp = first_pass(&center, opts.fem_mesh, 4).unwrap();
    let ends = certify_selected(&center, &fp, &[1, 4], &opts).unwrap();
    let sp = side.perturbation().unwrap();
    let l1 = sp.propagate_eigenvalue(&ends[0].enclosure.value).unwrap();
    let l4 = sp.propagate_eigenvalue(&ends[1].enclosure.value).unwrap();
    assert!(l1.lt(&m.over_side[0]) && m.over_side[1].lt(&l4), "λ1 {l1}, λ2 {}, λ3 {}, λ4 {l4}", m.over_side[0], m.over_side[1]);

    let pairs = [ClaimedPair { sub_index: 1, lambda_1: l1, lambda_k: l4 }];
    let report = certify_positions(&side, &pairs, &m.over_side, opts.fem_mesh).unwrap();
    assert_eq!(report.k, 4);
    assert_eq!(report.checked, vec![1]);
}

/// The obtuse apex of A limits how small the collocation minimum gets; these
/// are the values the default and the prover basis reach.
#[test]
fn smallest_singular_value_at_a() {
    let t = Triangle::parse(256, "0.63500", "0.27500").unwrap();
    let est = fem_estimates(&t, 32, 2).unwrap();
    let bracket = bracket_around(est[0], &est);
    let default = golden_search(&t, bracket, BasisSpec::default()).unwrap();
    assert!((default.lambda - 233.468).abs() < 1e-2, "λ = {}", default.lambda);
    assert!(default.smin > 1e-6 && default.smin < 1e-4, "σ_min = {:e}", default.smin);
    let fine = golden_search(&t, bracket, BasisSpec { n_c: 12, d: 12, ..BasisSpec::default() }).unwrap();
    assert!((fine.lambda - 233.46802).abs() < 1e-4, "λ = {}", fine.lambda);
    assert!(fine.smin < default.smin / 10.0, "σ_min = {:e} vs {:e}", fine.smin, default.smin);
}
