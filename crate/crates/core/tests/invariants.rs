use proptest::prelude::*;

use chordspace::algebra::phi;
use chordspace::realisability::{feasible_labelling, HalfIncidence};
use chordspace::{
    circle_quotient, multiply_arc, parse_circle, realisable, DiagramKey, DiagramVector, FieldTag,
    FramedChordDiagram, Q, RealisabilityModel, RelationSet, SignSchema,
};

/// Raw matching on `2n` points plus per-point framings (equal at both ends).
fn raw_diagram(max_n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>)> {
    (0..=max_n).prop_flat_map(|n| {
        let order: Vec<usize> = (0..2 * n).collect();
        (Just(order).prop_shuffle(), prop::collection::vec(any::<bool>(), n)).prop_map(|(perm, bits)| {
            let m = perm.len();
            let mut partner = vec![0; m];
            let mut frames = vec![false; m];
            for (c, pair) in perm.chunks(2).enumerate() {
                partner[pair[0]] = pair[1];
                partner[pair[1]] = pair[0];
                frames[pair[0]] = bits[c];
                frames[pair[1]] = bits[c];
            }
            (partner, frames)
        })
    })
}

/// Framings listed per chord in order of first endpoint.
fn chord_frames(partner: &[usize], frames: &[bool]) -> Vec<bool> {
    (0..partner.len()).filter(|&i| i < partner[i]).map(|i| frames[i]).collect()
}

fn rotate(partner: &[usize], frames: &[bool], r: usize) -> (Vec<usize>, Vec<bool>) {
    let m = partner.len();
    let p = (0..m).map(|i| (partner[(i + r) % m] + m - r) % m).collect();
    let f = (0..m).map(|i| frames[(i + r) % m]).collect();
    (p, f)
}

fn diagram(max_n: usize) -> impl Strategy<Value = FramedChordDiagram> {
    raw_diagram(max_n).prop_map(|(p, f)| FramedChordDiagram::canonicalize(&p, Some(&chord_frames(&p, &f))).unwrap())
}

fn coefficients(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent(d in diagram(7)) {
        let again = FramedChordDiagram::canonicalize(&d.pairing(), Some(d.framing())).unwrap();
        prop_assert_eq!(again, d);
    }

    #[test]
    fn canonical_form_ignores_rotation((p, f) in raw_diagram(7), r in 0usize..14) {
        let d = FramedChordDiagram::canonicalize(&p, Some(&chord_frames(&p, &f))).unwrap();
        let r = if p.is_empty() { 0 } else { r % p.len() };
        let (pr, fr) = rotate(&p, &f, r);
        let e = FramedChordDiagram::canonicalize(&pr, Some(&chord_frames(&pr, &fr))).unwrap();
        prop_assert_eq!(d, e);
    }

    #[test]
    fn encoding_round_trips(d in diagram(7)) {
        prop_assert_eq!(parse_circle(&d.encode(true)).unwrap(), d);
    }

    #[test]
    fn closing_any_section_gives_back_the_diagram(d in diagram(6)) {
        for e in 0..d.edge_count() {
            prop_assert_eq!(d.section(e).unwrap().closure(), d.clone());
        }
    }

    #[test]
    fn arc_product_closes_to_circle_orders(a in diagram(3), b in diagram(3)) {
        let p = multiply_arc(&a.section(0).unwrap(), &b.section(0).unwrap());
        prop_assert_eq!(p.order(), a.order() + b.order());
        prop_assert_eq!(p.odd_chords(), a.odd_chords() + b.odd_chords());
    }

    #[test]
    fn phi_is_an_involution(c in coefficients(28)) {
        let cols = chordspace::enumerate_framed_diagrams(3);
        let v: DiagramVector<FramedChordDiagram> =
            cols.iter().zip(&c).map(|(d, &x)| (d.clone(), Q::from_integer(x.into()))).collect();
        prop_assert_eq!(phi(&phi(&v)), v);
    }

    #[test]
    fn realisability_respects_rotation((p, f) in raw_diagram(6), r in 0usize..12) {
        let d = FramedChordDiagram::canonicalize(&p, Some(&chord_frames(&p, &f))).unwrap();
        let r = if p.is_empty() { 0 } else { r % p.len() };
        let (pr, fr) = rotate(&p, &f, r);
        let e = FramedChordDiagram::canonicalize(&pr, Some(&chord_frames(&pr, &fr))).unwrap();
        for m in [RealisabilityModel::Trivial, RealisabilityModel::single_class()] {
            prop_assert_eq!(realisable(&d, m), realisable(&e, m));
        }
    }

    #[test]
    fn feasible_labelling_fits_both_halves(d in diagram(6)) {
        let x = feasible_labelling(&d, true).expect("single-class model admits every diagram");
        let h = HalfIncidence::new(&d);
        let parity = |row: &[bool]| row.iter().zip(&x).filter(|(a, b)| **a && **b).count() % 2 == 1;
        prop_assert!(x.iter().filter(|&&b| b).count() % 2 == 0);
        for c in 0..d.order() {
            prop_assert_eq!(parity(&h.rows[c]), d.framing()[c]);
            prop_assert_eq!(parity(&h.complement(c)), d.framing()[c]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(c in coefficients(28), gf2 in any::<bool>()) {
        let field = if gf2 { FieldTag::Gf2 } else { FieldTag::Rational };
        let qb = circle_quotient(3, true, &RelationSet::four_t(SignSchema::uniform()).with_one_t(true), field).unwrap();
        let v: DiagramVector<FramedChordDiagram> =
            qb.columns().iter().zip(&c).map(|(d, &x)| (d.clone(), Q::from_integer(x.into()))).collect();
        let nf = qb.reduce(&v).unwrap();
        prop_assert_eq!(qb.reduce(&nf).unwrap(), nf.clone());
        let basis = qb.basis();
        prop_assert!(nf.keys().all(|k| basis.contains(&k)));
        prop_assert!(qb.in_span(&v.sub(&nf)).unwrap());
    }
}
