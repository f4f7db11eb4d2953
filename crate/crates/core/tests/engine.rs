use semilin_core::engine::{embed_structure, extend_partial_iso, homogeneity_extend, PartialIso};
use semilin_core::sample::Sampler;
use semilin_core::structure::induced_structure;

#[test]
fn random_extensions_verify() {
    let mut s = Sampler::new(7);
    for round in 0..300 {
        let pts = s.set(7);
        let k = 1 + round % 5;
        let (dom, rest) = pts.split_at(k);
        // the image of dom is an independent embedding of its induced structure
        let target = embed_structure(&induced_structure(dom).unwrap()).unwrap();
        let rho = PartialIso::new(dom.to_vec(), target).unwrap();
        let full = homogeneity_extend(&rho, rest).unwrap_or_else(|e| panic!("round {round}: {e}"));
        assert_eq!(full.len(), pts.len());
        full.verify().unwrap();
    }
}

#[test]
fn extension_from_empty_reaches_every_shape() {
    let mut s = Sampler::new(11);
    for _ in 0..200 {
        let pts = s.set(6);
        let r = homogeneity_extend(&PartialIso::empty(), &pts).unwrap();
        assert_eq!(induced_structure(r.range()).unwrap(), induced_structure(&pts).unwrap());
        assert!(extend_partial_iso(&r, &pts[0]).is_err());
    }
}
