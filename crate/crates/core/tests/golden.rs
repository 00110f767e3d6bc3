//! Rendered figures of the default instances, compared byte for byte.
//!
//! Regenerate with `UPDATE_GOLDEN=1 cargo test --test golden` after a
//! deliberate rendering change, and inspect the new files before committing.

use std::path::PathBuf;

use coffins_core::sketch::{execute, parse, render_svg, script, Bindings, Viewport};

fn render(id: &str) -> String {
    let program = parse(script(id).unwrap()).unwrap();
    let trace = execute(&program, &Bindings::new()).unwrap();
    render_svg(&trace, &Viewport::fit(&trace).unwrap()).unwrap()
}

fn check(id: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{id}.svg"));
    let svg = render(id);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &svg).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        svg == want,
        "{id}: rendering differs from {}",
        path.display()
    );
}

#[test]
fn p10_figure() {
    check("p10");
    let svg = render("p10");
    for label in [">A<", ">B<", ">C<", ">K<", ">M<", ">M'<", ">K'<", ">L<"] {
        assert!(svg.contains(label), "missing label {label}");
    }
}

#[test]
fn p22_figure_has_no_constructed_circle() {
    check("p22");
    let svg = render("p22");
    // the given circle is the only one drawn
    assert_eq!(svg.matches("<circle class=\"circle\"").count(), 1);
    assert!(!svg.contains("class=\"aux\""));
}
