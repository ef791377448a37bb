//! DOT and TikZ pictures of circle diagrams. Framing-0 chords are solid,
//! framing-1 chords dashed. Points run counterclockwise from the top.

use std::fmt::Write;

use crate::diagram::FramedChordDiagram;
use crate::encoding::format_circle;

fn angle(i: usize, m: usize) -> f64 {
    90.0 + 360.0 * i as f64 / m as f64
}

pub fn to_dot(d: &FramedChordDiagram) -> String {
    let m = d.word().len();
    let mut s = String::new();
    writeln!(s, "digraph chord_diagram {{").unwrap();
    writeln!(s, "  label=\"{}\";", format_circle(d, true)).unwrap();
    writeln!(s, "  layout=neato;").unwrap();
    if m == 0 {
        writeln!(s, "  circle [shape=circle, label=\"\", width=2];").unwrap();
        writeln!(s, "}}").unwrap();
        return s;
    }
    writeln!(s, "  node [shape=point];").unwrap();
    for i in 0..m {
        let a = angle(i, m).to_radians();
        writeln!(s, "  p{i} [pos=\"{:.3},{:.3}!\"];", 2.0 * a.cos(), 2.0 * a.sin()).unwrap();
    }
    for i in 0..m {
        writeln!(s, "  p{i} -> p{} [color=gray40];", (i + 1) % m).unwrap();
    }
    for (l, &(i, j)) in d.chord_endpoints().iter().enumerate() {
        let style = if d.framing()[l] { "dashed" } else { "solid" };
        writeln!(s, "  p{i} -> p{j} [dir=none, style={style}];").unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

pub fn to_tikz(d: &FramedChordDiagram) -> String {
    let m = d.word().len();
    let mut s = String::new();
    writeln!(s, "% {}", format_circle(d, true)).unwrap();
    writeln!(s, "\\begin{{tikzpicture}}").unwrap();
    writeln!(s, "  \\draw (0,0) circle (1);").unwrap();
    if m > 0 {
        // orientation mark on the arc leaving the first point
        writeln!(
            s,
            "  \\draw[->] ({:.3}:1) arc ({:.3}:{:.3}:1);",
            angle(0, m),
            angle(0, m),
            angle(0, m) + 180.0 / m as f64
        )
        .unwrap();
    }
    for (l, &(i, j)) in d.chord_endpoints().iter().enumerate() {
        let style = if d.framing()[l] { "dashed" } else { "solid" };
        writeln!(
            s,
            "  \\draw[{style}] ({:.3}:1) -- ({:.3}:1);",
            angle(i, m),
            angle(j, m)
        )
        .unwrap();
    }
    writeln!(s, "\\end{{tikzpicture}}").unwrap();
    s
}
