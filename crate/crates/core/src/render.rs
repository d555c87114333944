//! ASCII rendering of terms as string diagrams.
//!
//! Diagrams read bottom to top: inputs enter at the bottom edge, the first
//! stage of a `seq` sits lowest, outputs leave at the top. Each primitive
//! is a box; wires are vertical strokes at the ports of their box. `par`
//! places diagrams side by side, `seq` stacks them. Mixtures are drawn as a
//! single opaque box labelled with their weight; their branches are not
//! expanded.

use crate::error::Result;
use crate::term::Term;
/// Diagram of a well-typed term, followed by its signature.
pub fn render(t: &Term) -> Result<String> {
    let (dom, cod) = t.typecheck()?;
    let normal = t.normalize()?;
    let block = block(&normal);
    let mut out = String::new();
    for line in &block.lines {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!("dom: {dom}\n"));
    out.push_str(&format!("cod: {cod}\n"));
    Ok(out)
}

/// Rows of equal width, listed top to bottom, with the column positions of
/// the wires crossing the top and bottom edges.
struct Block {
    width: usize,
    lines: Vec<String>,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

fn block(t: &Term) -> Block {
    match t {
        Term::Id(ty) => wires(ty.arity().max(1), ty.is_unit()),
        Term::Seq(f, g) => stack(block(f), block(g)),
        Term::Par(f, g) => beside(block(f), block(g)),
        Term::Swap(a, b) => boxed("swap", a.arity() + b.arity(), a.arity() + b.arity()),
        Term::Copy(ty) => boxed("copy", ty.arity(), 2 * ty.arity()),
        Term::Del(ty) => boxed("del", ty.arity(), 0),
        Term::Lit { dom, cod, matrix } => {
            let label = format!("lit {}x{}", matrix.len(), matrix.first().map_or(0, Vec::len));
            boxed(&label, dom.arity(), cod.arity())
        }
        Term::Const { ty, value } => boxed(&format!("const {value}"), 0, ty.arity()),
        Term::Mix { weight, .. } => {
            let (dom, cod) = t.typecheck().expect("render checked typing");
            boxed(&format!("mix {weight}"), dom.arity(), cod.arity())
        }
        Term::Apply { arg, out } => boxed("apply", 1 + arg.arity(), out.arity()),
        Term::Spec => boxed("spec", 2, 1),
    }
}

/// Evenly spaced port columns for `n` wires across `width`.
fn ports(n: usize, width: usize) -> Vec<usize> {
    (0..n).map(|i| (2 * i + 1) * width / (2 * n.max(1))).collect()
}

fn stroke_row(width: usize, cols: &[usize]) -> String {
    let mut row = vec![b' '; width];
    for &c in cols {
        row[c.min(width - 1)] = b'|';
    }
    String::from_utf8(row).expect("ascii")
}

/// A bundle of parallel wires (the identity). A unit identity is an empty
/// gap in the diagram.
fn wires(n: usize, unit: bool) -> Block {
    if unit {
        return Block { width: 1, lines: vec![" ".into()], top: vec![], bottom: vec![] };
    }
    let width = 4 * n;
    let cols = ports(n, width);
    Block {
        width,
        lines: vec![stroke_row(width, &cols)],
        top: cols.clone(),
        bottom: cols,
    }
}

/// A labelled box with `n_in` wires below and `n_out` above.
fn boxed(label: &str, n_in: usize, n_out: usize) -> Block {
    let inner = label.len() + 2;
    let width = inner.max(4 * n_in.max(n_out)).max(6) + 2;
    let inner = width - 2;
    let horiz = format!("+{}+", "-".repeat(inner));
    let pad = inner - label.len();
    let (l, r) = (pad / 2, pad - pad / 2);
    let mid = format!("|{}{label}{}|", " ".repeat(l), " ".repeat(r));
    let top_ports = ports(n_out, width);
    let bottom_ports = ports(n_in, width);
    let mut lines = Vec::new();
    if n_out > 0 {
        lines.push(stroke_row(width, &top_ports));
    }
    lines.push(horiz.clone());
    lines.push(mid);
    lines.push(horiz);
    if n_in > 0 {
        lines.push(stroke_row(width, &bottom_ports));
    }
    Block {
        width,
        lines,
        top: if n_out > 0 { top_ports } else { vec![] },
        bottom: if n_in > 0 { bottom_ports } else { vec![] },
    }
}

fn pad_to(block: &mut Block, width: usize) {
    if block.width >= width {
        return;
    }
    let left = (width - block.width) / 2;
    for line in &mut block.lines {
        let mut s = " ".repeat(left);
        s.push_str(line);
        s.push_str(&" ".repeat(width - left - block.width));
        *line = s;
    }
    for c in block.top.iter_mut().chain(block.bottom.iter_mut()) {
        *c += left;
    }
    block.width = width;
}

/// `g` above `f`: `f` runs first. A junction row of strokes marks the
/// shared boundary when the wire counts agree but their columns do not.
fn stack(f: Block, g: Block) -> Block {
    let width = f.width.max(g.width);
    let (mut f, mut g) = (f, g);
    pad_to(&mut f, width);
    pad_to(&mut g, width);
    let mut lines = g.lines;
    if g.bottom != f.top && !g.bottom.is_empty() {
        lines.push(stroke_row(width, &g.bottom));
        lines.push(stroke_row(width, &f.top));
    }
    lines.extend(f.lines);
    Block { width, lines, top: g.top, bottom: f.bottom }
}

/// `f` beside `g`, bottom edges aligned; the shorter diagram's top wires
/// are extended.
fn beside(f: Block, g: Block) -> Block {
    let gap = 2;
    let height = f.lines.len().max(g.lines.len());
    let extend = |b: &Block, rows: usize| -> Vec<String> {
        let mut lines = vec![stroke_row(b.width.max(1), &b.top); rows];
        lines.extend(b.lines.iter().cloned());
        lines
    };
    let fl = extend(&f, height - f.lines.len());
    let gl = extend(&g, height - g.lines.len());
    let width = f.width + gap + g.width;
    let lines = fl
        .into_iter()
        .zip(gl)
        .map(|(a, b)| format!("{a}{}{b}", " ".repeat(gap)))
        .collect();
    let shift = |cols: &[usize]| cols.iter().map(|c| c + f.width + gap).collect::<Vec<_>>();
    let mut top = f.top.clone();
    top.extend(shift(&g.top));
    let mut bottom = f.bottom.clone();
    bottom.extend(shift(&g.bottom));
    Block { width, lines, top, bottom }
}
