//! Chord diagrams on an oriented circle, their framed versions, and arc
//! diagrams on an oriented line.
//!
//! A diagram of order `n` has `2n` points. Internally every diagram is stored
//! as a *label word*: point `i` carries the label of its chord, and labels are
//! numbered by first occurrence (`0` first, then `1`, ...). Circle diagrams are
//! identified up to rotation; the stored word is the lexicographically least
//! rotation, with ties broken by the framing word. Reflections are never
//! applied since the circle is oriented.
//!
//! Framings take values in Z2 and are stored per label, i.e. in the order in
//! which chords are first met along the word.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Chord label inside a label word.
pub type Label = u16;

/// An unframed chord diagram in canonical rotational form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    word: Vec<Label>,
}

/// A chord diagram with a Z2 framing on each chord, in canonical rotational form.
///
/// Ordering is lexicographic on the matching word first and the framing word
/// second, which is also the sort order of every enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FramedChordDiagram {
    base: ChordDiagram,
    framing: Vec<bool>,
}

/// A framed diagram on an oriented line. The word is taken literally (no
/// rotation), only relabelled by first occurrence. Unframed arc diagrams are
/// represented with all framings zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FramedArcDiagram {
    word: Vec<Label>,
    framing: Vec<bool>,
}

/// Checks that `partner` is a fixed-point-free involution.
pub fn validate_involution(partner: &[usize]) -> Result<()> {
    if partner.len() % 2 != 0 {
        return Err(Error::Structural(format!(
            "odd number of points ({})",
            partner.len()
        )));
    }
    for (i, &j) in partner.iter().enumerate() {
        if j >= partner.len() {
            return Err(Error::Structural(format!("point {i} paired with out-of-range {j}")));
        }
        if j == i {
            return Err(Error::Structural(format!("point {i} is a fixed point")));
        }
        if partner[j] != i {
            return Err(Error::Structural(format!(
                "pairing is not an involution at point {i}"
            )));
        }
    }
    Ok(())
}

/// Partner table of a label word. Assumes every label occurs exactly twice.
pub(crate) fn partner_of_word(word: &[Label]) -> Vec<usize> {
    let n = word.len() / 2;
    let mut first = vec![usize::MAX; n.max(word.iter().map(|&l| l as usize + 1).max().unwrap_or(0))];
    let mut partner = vec![0; word.len()];
    for (i, &l) in word.iter().enumerate() {
        let l = l as usize;
        if first[l] == usize::MAX {
            first[l] = i;
        } else {
            partner[i] = first[l];
            partner[first[l]] = i;
        }
    }
    partner
}

/// Reads the matching starting at point `start` (wrapping around) and
/// relabels chords by first occurrence. Returns the label word and the
/// framing per new label.
pub(crate) fn read_from(partner: &[usize], point_frame: &[bool], start: usize) -> (Vec<Label>, Vec<bool>) {
    let m = partner.len();
    let mut word = Vec::with_capacity(m);
    let mut framing = Vec::with_capacity(m / 2);
    let mut label = vec![Label::MAX; m];
    for i in 0..m {
        let p = (start + i) % m;
        if label[p] == Label::MAX {
            let l = framing.len() as Label;
            label[p] = l;
            label[partner[p]] = l;
            framing.push(point_frame[p]);
        }
        word.push(label[p]);
    }
    (word, framing)
}

/// Least (word, framing) pair over all rotations.
pub(crate) fn min_rotation(partner: &[usize], point_frame: &[bool]) -> (Vec<Label>, Vec<bool>) {
    let m = partner.len();
    let mut best = read_from(partner, point_frame, 0);
    for r in 1..m {
        let cand = read_from(partner, point_frame, r);
        if cand < best {
            best = cand;
        }
    }
    best
}

fn point_frames(partner: &[usize], chord_framing: Option<&[bool]>) -> Result<Vec<bool>> {
    let n = partner.len() / 2;
    let mut frames = vec![false; partner.len()];
    if let Some(f) = chord_framing {
        if f.len() != n {
            return Err(Error::Structural(format!(
                "framing has {} entries for {} chords",
                f.len(),
                n
            )));
        }
        let mut next = 0;
        let mut seen = vec![false; partner.len()];
        for i in 0..partner.len() {
            if !seen[i] {
                seen[i] = true;
                seen[partner[i]] = true;
                frames[i] = f[next];
                frames[partner[i]] = f[next];
                next += 1;
            }
        }
    }
    Ok(frames)
}

impl ChordDiagram {
    /// The diagram with no chords.
    pub fn empty() -> Self {
        ChordDiagram { word: Vec::new() }
    }

    /// Canonical diagram of an arbitrary circular matching.
    pub fn from_pairing(partner: &[usize]) -> Result<Self> {
        validate_involution(partner)?;
        let frames = vec![false; partner.len()];
        let (word, _) = min_rotation(partner, &frames);
        Ok(ChordDiagram { word })
    }

    pub fn order(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[Label] {
        &self.word
    }

    pub fn pairing(&self) -> Vec<usize> {
        partner_of_word(&self.word)
    }

    /// The same diagram with every chord framed 0.
    pub fn with_zero_framing(&self) -> FramedChordDiagram {
        FramedChordDiagram {
            base: self.clone(),
            framing: vec![false; self.order()],
        }
    }
}

impl FramedChordDiagram {
    pub fn empty() -> Self {
        FramedChordDiagram {
            base: ChordDiagram::empty(),
            framing: Vec::new(),
        }
    }

    /// Canonicalizes a raw circular matching.
    ///
    /// `framing`, when given, lists one value per chord in order of the
    /// chord's first endpoint along `partner`; absent means all zero.
    pub fn canonicalize(partner: &[usize], framing: Option<&[bool]>) -> Result<Self> {
        validate_involution(partner)?;
        let frames = point_frames(partner, framing)?;
        Ok(Self::from_point_frames(partner, &frames))
    }

    /// Canonicalizes from per-point framings. The caller guarantees a valid
    /// involution and equal framings at both ends of each chord.
    pub(crate) fn from_point_frames(partner: &[usize], point_frame: &[bool]) -> Self {
        let (word, framing) = min_rotation(partner, point_frame);
        FramedChordDiagram {
            base: ChordDiagram { word },
            framing,
        }
    }

    pub fn order(&self) -> usize {
        self.framing.len()
    }

    pub fn base(&self) -> &ChordDiagram {
        &self.base
    }

    pub fn word(&self) -> &[Label] {
        &self.base.word
    }

    /// Framing per chord label.
    pub fn framing(&self) -> &[bool] {
        &self.framing
    }

    pub fn pairing(&self) -> Vec<usize> {
        self.base.pairing()
    }

    /// Framing of the chord through each point.
    pub fn point_frames(&self) -> Vec<bool> {
        self.base
            .word
            .iter()
            .map(|&l| self.framing[l as usize])
            .collect()
    }

    /// Number of chords with framing 1.
    pub fn odd_chords(&self) -> usize {
        self.framing.iter().filter(|&&f| f).count()
    }

    pub fn is_zero_framed(&self) -> bool {
        self.framing.iter().all(|&f| !f)
    }

    /// Number of edges of the circle: `2n`, or one for the empty diagram.
    pub fn edge_count(&self) -> usize {
        self.base.word.len().max(1)
    }

    /// The arc diagram obtained by breaking the circle just before point
    /// `edge`, i.e. reading the word starting at that point.
    pub fn section(&self, edge: usize) -> Result<FramedArcDiagram> {
        if edge >= self.edge_count() {
            return Err(Error::Structural(format!(
                "break index {edge} out of range for {} edges",
                self.edge_count()
            )));
        }
        if self.order() == 0 {
            return Ok(FramedArcDiagram::empty());
        }
        let partner = self.pairing();
        let (word, framing) = read_from(&partner, &self.point_frames(), edge);
        Ok(FramedArcDiagram { word, framing })
    }

    /// All breakings, one per edge, duplicates kept.
    pub fn sections(&self) -> Vec<FramedArcDiagram> {
        (0..self.edge_count())
            .map(|e| self.section(e).expect("edge in range"))
            .collect()
    }

    /// Positions `(i, j)` with `i < j` of every chord, indexed by label.
    pub fn chord_endpoints(&self) -> Vec<(usize, usize)> {
        chord_endpoints(&self.base.word)
    }
}

pub(crate) fn chord_endpoints(word: &[Label]) -> Vec<(usize, usize)> {
    let n = word.len() / 2;
    let mut ends = vec![(usize::MAX, usize::MAX); n];
    for (i, &l) in word.iter().enumerate() {
        let e = &mut ends[l as usize];
        if e.0 == usize::MAX {
            e.0 = i;
        } else {
            e.1 = i;
        }
    }
    ends
}

impl FramedArcDiagram {
    pub fn empty() -> Self {
        FramedArcDiagram {
            word: Vec::new(),
            framing: Vec::new(),
        }
    }

    /// Builds an arc diagram from a matching on the line; framings are listed
    /// per chord in order of first endpoint.
    pub fn new(partner: &[usize], framing: Option<&[bool]>) -> Result<Self> {
        validate_involution(partner)?;
        let frames = point_frames(partner, framing)?;
        Ok(Self::from_point_frames(partner, &frames))
    }

    pub(crate) fn from_point_frames(partner: &[usize], point_frame: &[bool]) -> Self {
        let (word, framing) = read_from(partner, point_frame, 0);
        FramedArcDiagram { word, framing }
    }

    pub fn order(&self) -> usize {
        self.framing.len()
    }

    pub fn word(&self) -> &[Label] {
        &self.word
    }

    pub fn framing(&self) -> &[bool] {
        &self.framing
    }

    pub fn pairing(&self) -> Vec<usize> {
        partner_of_word(&self.word)
    }

    pub fn point_frames(&self) -> Vec<bool> {
        self.word.iter().map(|&l| self.framing[l as usize]).collect()
    }

    pub fn odd_chords(&self) -> usize {
        self.framing.iter().filter(|&&f| f).count()
    }

    /// Joins the two ends of the line.
    pub fn closure(&self) -> FramedChordDiagram {
        FramedChordDiagram::from_point_frames(&self.pairing(), &self.point_frames())
    }

    /// Head of `self` attached to the tail of `other`.
    pub fn concat(&self, other: &FramedArcDiagram) -> FramedArcDiagram {
        let shift = self.order() as Label;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&l| l + shift));
        let mut framing = self.framing.clone();
        framing.extend_from_slice(&other.framing);
        // Concatenation already respects first-occurrence numbering.
        FramedArcDiagram { word, framing }
    }
}

/// Calls `visit` with every perfect matching of `2n` points.
pub fn for_each_matching(n: usize, mut visit: impl FnMut(&[usize])) {
    let m = 2 * n;
    let mut partner = vec![usize::MAX; m];
    fn rec(partner: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
            visit(partner);
            return;
        };
        for j in i + 1..partner.len() {
            if partner[j] == usize::MAX {
                partner[i] = j;
                partner[j] = i;
                rec(partner, visit);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
    rec(&mut partner, &mut visit);
}

/// One representative per rotation class of matchings on `2n` circle points,
/// sorted by canonical word.
pub fn enumerate_chord_diagrams(n: usize) -> Vec<ChordDiagram> {
    let mut seen = BTreeSet::new();
    let frames = vec![false; 2 * n];
    for_each_matching(n, |partner| {
        let (word, _) = min_rotation(partner, &frames);
        seen.insert(ChordDiagram { word });
    });
    seen.into_iter().collect()
}

/// One representative per rotation class of framed matchings, sorted.
pub fn enumerate_framed_diagrams(n: usize) -> Vec<FramedChordDiagram> {
    use rayon::prelude::*;
    let bases = enumerate_chord_diagrams(n);
    let per_base: Vec<BTreeSet<FramedChordDiagram>> = bases
        .par_iter()
        .map(|base| {
            let partner = base.pairing();
            let mut out = BTreeSet::new();
            for mask in 0u64..(1u64 << n) {
                let framing: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
                let frames: Vec<bool> = base.word.iter().map(|&l| framing[l as usize]).collect();
                out.insert(FramedChordDiagram::from_point_frames(&partner, &frames));
            }
            out
        })
        .collect();
    // Bases are sorted and canonical framed forms keep their base, so the
    // concatenation is already sorted.
    per_base.into_iter().flatten().collect()
}

/// Every arc diagram of order `n` (framed or with zero framings), sorted.
pub fn enumerate_arc_diagrams(n: usize, framed: bool) -> Vec<FramedArcDiagram> {
    let mut out = BTreeSet::new();
    for_each_matching(n, |partner| {
        let zero = vec![false; 2 * n];
        let base = FramedArcDiagram::from_point_frames(partner, &zero);
        if framed {
            for mask in 0u64..(1u64 << n) {
                let framing: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
                out.insert(FramedArcDiagram {
                    word: base.word.clone(),
                    framing,
                });
            }
        } else {
            out.insert(base);
        }
    });
    out.into_iter().collect()
}

/// Zero-framed circle diagrams of order `n`, or all framed ones.
pub fn circle_diagrams(n: usize, framed: bool) -> Vec<FramedChordDiagram> {
    if framed {
        enumerate_framed_diagrams(n)
    } else {
        enumerate_chord_diagrams(n)
            .iter()
            .map(ChordDiagram::with_zero_framing)
            .collect()
    }
}
