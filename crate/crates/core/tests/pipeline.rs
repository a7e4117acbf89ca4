use fcrystal::bounds::{isomorphism_bound, q_bound, IsosimpleProfile};
use fcrystal::crystal::{is_minimal, minimal_crystal, newton_slopes};
use fcrystal::json::{crystal_from_json, crystal_to_json, lattice_from_json, lattice_to_json, newton_from_json, parse_document};
use fcrystal::level_torsion::{level_torsion, level_torsion_by_blocks};
use fcrystal::xilattice::phi_orbit_lattice;
use fcrystal::{make_ring, XiElement, XiModuleSpec};

#[test]
fn newton_document_to_minimal_crystal_and_back() {
    let nu = newton_from_json(
        &parse_document(r#"{"slopes": [{"num": 0, "den": 1, "mult": 2}, {"num": 2, "den": 5, "mult": 10}]}"#).unwrap(),
    )
    .unwrap();
    let c = minimal_crystal(&nu).unwrap();
    assert!(is_minimal(&c).is_minimal());
    assert_eq!(newton_slopes(&c), nu);
    assert!(level_torsion(&c) <= 1.into());
    assert_eq!(level_torsion(&c), level_torsion_by_blocks(&c));
    let doc = crystal_to_json(&c);
    assert_eq!(crystal_from_json(&doc).unwrap(), c.canonical());
}

#[test]
fn orbit_lattice_height_respects_profile_bound() {
    for (p, r, s, e) in [(2u64, 3usize, 2u64, 2u64), (3, 2, 1, 1), (2, 5, 7, 2)] {
        let spec = XiModuleSpec::new(make_ring(p, r, 14, None).unwrap(), r, s, e).unwrap();
        let l = phi_orbit_lattice(&XiElement::xi_power(&spec, 0)).unwrap();
        let h = l.minimal_height().unwrap();
        let profile = IsosimpleProfile::new(s, r as u64, e).unwrap();
        assert!(h.q <= q_bound(&profile).unwrap());
        assert!(1 + 2 * h.q <= isomorphism_bound(&profile));

        let reparsed = lattice_from_json(&lattice_to_json(&l)).unwrap();
        assert!(reparsed.same_lattice(&l).unwrap());
        assert_eq!(reparsed.minimal_height().unwrap(), h);
    }
}
