use crate::af::ArgumentationFramework;
use crate::error::{Error, Result};
use crate::labelling::{Label, Labelling};

fn fill(label: Label) -> &'static str {
    match label {
        Label::In => "palegreen",
        Label::Out => "lightcoral",
        Label::Undec => "lightgray",
    }
}

/// Deterministic DOT rendering. With a labelling, each node carries
/// `class="in|out|undec"` and a matching fill colour.
pub fn emit_dot(af: &ArgumentationFramework, labelling: Option<&Labelling>) -> Result<String> {
    if let Some(l) = labelling {
        if !l.covers(af) {
            return Err(Error::LabellingMismatch);
        }
    }
    let mut out = String::from("digraph af {\n");
    for (i, name) in af.arguments().iter().enumerate() {
        match labelling {
            Some(l) => {
                let label = l.label(i);
                out.push_str(&format!(
                    "    \"{name}\" [class=\"{label}\", style=filled, fillcolor=\"{}\"];\n",
                    fill(label)
                ));
            }
            None => out.push_str(&format!("    \"{name}\";\n")),
        }
    }
    for att in af.attacks() {
        out.push_str(&format!("    \"{}\" -> \"{}\";\n", att.source, att.target));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelling::labelling_of_extension;

    fn g3() -> ArgumentationFramework {
        ArgumentationFramework::new(["1", "2", "3", "4"], [("1", "2"), ("2", "3")]).unwrap()
    }

    #[test]
    fn plain_structure() {
        let dot = emit_dot(&g3(), None).unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
        assert_eq!(
            dot.lines()
                .filter(|l| l.trim_end().ends_with("\";"))
                .count(),
            6
        );
        assert!(dot.starts_with("digraph af {\n    \"1\";\n"));
    }

    #[test]
    fn empty_body() {
        assert_eq!(
            emit_dot(&ArgumentationFramework::empty(), None).unwrap(),
            "digraph af {\n}\n"
        );
    }

    #[test]
    fn labelled_classes() {
        let g = g3();
        let l = labelling_of_extension(&g, g.set_of(["1", "3", "4"]).unwrap()).unwrap();
        let dot = emit_dot(&g, Some(&l)).unwrap();
        for n in ["1", "3", "4"] {
            assert!(dot.contains(&format!("\"{n}\" [class=\"in\"")));
        }
        assert!(dot.contains("\"2\" [class=\"out\""));
    }

    #[test]
    fn rejects_foreign_labelling() {
        let small = ArgumentationFramework::new(["a"], []).unwrap();
        let l = Labelling::all_undec(&small);
        assert_eq!(emit_dot(&g3(), Some(&l)), Err(Error::LabellingMismatch));
    }
}
