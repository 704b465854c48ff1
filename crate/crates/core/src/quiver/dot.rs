use std::fmt::Write;

use super::{ArrowPermutation, Quiver};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text for the quiver. With `f`, each f-orbit gets its own color.
pub fn export_dot(q: &Quiver, f: Option<&ArrowPermutation>) -> String {
    let mut color = vec![None; q.arrow_count()];
    if let Some(f) = f {
        let cycles = f.cycles(q);
        let k = cycles.len().max(1);
        for (i, cyc) in cycles.iter().enumerate() {
            let hue = i as f64 / k as f64;
            for a in cyc {
                color[a.0] = Some(format!("{hue:.3} 0.800 0.700"));
            }
        }
    }
    let mut out = String::from("digraph Q {\n");
    for v in q.vertices() {
        let _ = writeln!(out, "  \"{}\";", escape(q.vertex_id(v)));
    }
    for a in q.arrows_sorted() {
        let arrow = q.arrow(a);
        let _ = write!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"",
            escape(q.vertex_id(arrow.source)),
            escape(q.vertex_id(arrow.target)),
            escape(&arrow.id)
        );
        if let Some(c) = &color[a.0] {
            let _ = write!(out, ", color=\"{c}\", fontcolor=\"{c}\"");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::instances;

    #[test]
    fn markov_dot() {
        let tq = instances::markov_quiver();
        let dot = export_dot(tq.quiver(), None);
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 3);
    }

    #[test]
    fn empty_dot() {
        let q = Quiver::from_strs(&[], &[]).unwrap();
        assert_eq!(export_dot(&q, None), "digraph Q {\n}\n");
    }

    #[test]
    fn tetrahedral_colors() {
        let tq = instances::tetrahedral_quiver();
        let dot = export_dot(tq.quiver(), Some(tq.f_perm()));
        let colors: BTreeSet<&str> = dot
            .lines()
            .filter_map(|l| l.split("color=\"").nth(1))
            .map(|r| r.split('"').next().unwrap())
            .collect();
        assert_eq!(colors.len(), 4);
    }
}
