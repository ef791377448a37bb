//! Text encoding of diagrams.
//!
//! ```text
//! WORD    := LABEL{2n}
//! LABEL   := 'A'..'Z'            (n <= 26)
//!          | '[' INT ']'
//! FRAMING := '|' ('0'|'1'){n}
//! empty   := "()"
//! ```
//!
//! Framing bits are listed per chord in first-occurrence order, so
//! `"ABAB|10"` frames chord `A` with 1 and chord `B` with 0.

use std::collections::HashMap;

use crate::diagram::{partner_of_word, FramedArcDiagram, FramedChordDiagram, Label};
use crate::error::{Error, Result};

pub const EMPTY_TOKEN: &str = "()";

/// A parsed word, relabelled by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingWord {
    pub labels: Vec<Label>,
    pub framing: Option<Vec<bool>>,
}

impl EncodingWord {
    pub fn order(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn pairing(&self) -> Vec<usize> {
        partner_of_word(&self.labels)
    }
}

pub fn parse_word(text: &str) -> Result<EncodingWord> {
    let text = text.trim();
    let (word_part, framing_part) = match text.split_once('|') {
        Some((w, f)) => (w, Some(f)),
        None => (text, None),
    };
    if word_part == EMPTY_TOKEN || word_part.is_empty() {
        if let Some(f) = framing_part {
            if !f.is_empty() {
                return Err(Error::Parse(format!("empty diagram with framing {f:?}")));
            }
        }
        return Ok(EncodingWord {
            labels: Vec::new(),
            framing: framing_part.map(|_| Vec::new()),
        });
    }

    let mut raw: Vec<String> = Vec::new();
    let mut chars = word_part.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'A'..='Z' => raw.push(c.to_string()),
            '[' => {
                let mut num = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(d) if d.is_ascii_digit() => num.push(d),
                        other => {
                            return Err(Error::Parse(format!(
                                "bad bracketed label near {other:?} in {text:?}"
                            )))
                        }
                    }
                }
                if num.is_empty() {
                    return Err(Error::Parse(format!("empty bracketed label in {text:?}")));
                }
                let k: u64 = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("label [{num}] too large")))?;
                raw.push(format!("[{k}]"));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}"))),
        }
    }

    let mut relabel: HashMap<&str, Label> = HashMap::new();
    let mut count: Vec<u8> = Vec::new();
    let mut labels = Vec::with_capacity(raw.len());
    for token in &raw {
        let next = relabel.len() as Label;
        let l = *relabel.entry(token.as_str()).or_insert(next);
        if l as usize == count.len() {
            count.push(0);
        }
        count[l as usize] += 1;
        if count[l as usize] > 2 {
            return Err(Error::Parse(format!("label {token} occurs more than twice")));
        }
        labels.push(l);
    }
    if let Some(bad) = count.iter().position(|&c| c != 2) {
        return Err(Error::Parse(format!("chord {bad} has a single endpoint in {text:?}")));
    }

    let n = count.len();
    let framing = match framing_part {
        None => None,
        Some(f) => {
            if f.chars().count() != n {
                return Err(Error::Parse(format!(
                    "framing {f:?} has {} bits for {n} chords",
                    f.chars().count()
                )));
            }
            Some(
                f.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Parse(format!("bad framing bit {c:?}"))),
                    })
                    .collect::<Result<Vec<bool>>>()?,
            )
        }
    };
    Ok(EncodingWord { labels, framing })
}

/// Parses and canonicalizes a circle diagram. Missing framing means zero.
pub fn parse_circle(text: &str) -> Result<FramedChordDiagram> {
    let w = parse_word(text)?;
    FramedChordDiagram::canonicalize(&w.pairing(), w.framing.as_deref())
}

/// Parses an arc diagram; the word is kept as written up to relabelling.
pub fn parse_arc(text: &str) -> Result<FramedArcDiagram> {
    let w = parse_word(text)?;
    FramedArcDiagram::new(&w.pairing(), w.framing.as_deref())
}

pub fn format_labels(word: &[Label]) -> String {
    if word.is_empty() {
        return EMPTY_TOKEN.to_string();
    }
    let n = word.len() / 2;
    if n <= 26 {
        word.iter().map(|&l| (b'A' + l as u8) as char).collect()
    } else {
        word.iter().map(|l| format!("[{l}]")).collect()
    }
}

fn format_framing(framing: &[bool]) -> String {
    framing.iter().map(|&f| if f { '1' } else { '0' }).collect()
}

fn format_with(word: &[Label], framing: &[bool], framed: bool) -> String {
    let mut s = format_labels(word);
    if framed && !word.is_empty() {
        s.push('|');
        s.push_str(&format_framing(framing));
    }
    s
}

/// `framed = false` drops the framing suffix.
pub fn format_circle(d: &FramedChordDiagram, framed: bool) -> String {
    format_with(d.word(), d.framing(), framed)
}

pub fn format_arc(a: &FramedArcDiagram, framed: bool) -> String {
    format_with(a.word(), a.framing(), framed)
}
