//! The bundled construction scripts.

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub source: &'static str,
}

const CORPUS: [CorpusEntry; 8] = [
    CorpusEntry {
        id: "p10",
        source: include_str!("../../constructions/p10.sketch"),
    },
    CorpusEntry {
        id: "p19a",
        source: include_str!("../../constructions/p19a.sketch"),
    },
    CorpusEntry {
        id: "p19b",
        source: include_str!("../../constructions/p19b.sketch"),
    },
    CorpusEntry {
        id: "p22",
        source: include_str!("../../constructions/p22.sketch"),
    },
    CorpusEntry {
        id: "p30",
        source: include_str!("../../constructions/p30.sketch"),
    },
    CorpusEntry {
        id: "p48",
        source: include_str!("../../constructions/p48.sketch"),
    },
    CorpusEntry {
        id: "p50",
        source: include_str!("../../constructions/p50.sketch"),
    },
    CorpusEntry {
        id: "p68",
        source: include_str!("../../constructions/p68.sketch"),
    },
];

pub fn corpus() -> &'static [CorpusEntry] {
    &CORPUS
}

/// Source of the script with the given id (`p10`, `p19a`, …).
pub fn script(id: &str) -> Option<&'static str> {
    CORPUS.iter().find(|e| e.id == id).map(|e| e.source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sketch::{execute, parse, Bindings, Tools};

    #[test]
    fn every_script_parses_and_passes_on_its_defaults() {
        for e in corpus() {
            let prog = parse(e.source).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            let trace =
                execute(&prog, &Bindings::new()).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            for a in &trace.assertions {
                assert_eq!(
                    a.outcome,
                    crate::sketch::Outcome::Pass,
                    "{}: {} {:?}",
                    e.id,
                    a.text,
                    a.witness
                );
            }
            assert!(!trace.assertions.is_empty(), "{}", e.id);
        }
    }

    #[test]
    fn straightedge_scripts_build_no_circles() {
        for id in ["p22", "p50"] {
            let prog = parse(script(id).unwrap()).unwrap();
            assert_eq!(prog.tools, Tools::StraightedgeOnly);
            let trace = execute(&prog, &Bindings::new()).unwrap();
            assert!(!trace.has_circle(), "{id}");
        }
    }
}
