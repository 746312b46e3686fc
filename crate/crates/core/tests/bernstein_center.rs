use hecke_core::characters::orbit_character;
use hecke_core::{BasedRootDatum, Coweight, Family, IwahoriHecke, LaurentHalf, SphericalCosetVector};

fn engine(f: Family, n: usize) -> IwahoriHecke {
    IwahoriHecke::new(&BasedRootDatum::build_standard(f, n).unwrap())
}

#[test]
fn gl3_center_is_central() {
    let e = engine(Family::GL, 3);
    for lambda in e.datum().dominant_weights_in_box(2) {
        let r = e.centrality_report(&lambda).unwrap();
        assert!(r.pass, "{lambda}: {:?}", r.residual);
    }
}

#[test]
fn gl3_suite() {
    let e = engine(Family::GL, 3);
    let reports = e.satake_suite(1, false).unwrap();
    assert!(reports.iter().all(|r| r.pass), "{reports:?}");
}

#[test]
fn sp4_calibration() {
    let e = engine(Family::Sp, 4);
    let d = e.datum().clone();
    for mu in d.minuscule_dominants(1) {
        let unit = SphericalCosetVector::from_coords([(mu.clone(), LaurentHalf::one())]);
        let expected = orbit_character(&d, &mu).unwrap().scale(&LaurentHalf::v_pow(d.rho_pairing_exponent(&mu)));
        assert_eq!(e.satake_transform(&unit).unwrap(), expected);
    }
    let f = orbit_character(&d, &Coweight(vec![1, 1])).unwrap();
    assert_eq!(e.satake_transform(&e.satake_inverse(&f).unwrap()).unwrap(), f);
}
