use std::fmt::Write as _;

use super::setup::OpticalSetup;

/// Renders the emitter–detector graph in Graphviz DOT.
///
/// Emitters are circles `e1..eN`, detectors boxes `d1..dN` labelled with their
/// polarizer. Fibers with a π shift are dashed and labelled `π`; any other
/// nonzero phase is dotted and labelled with its multiple of π.
pub fn export_dot(setup: &OpticalSetup) -> String {
    let mut out = String::new();
    out.push_str("graph setup {\n  rankdir=LR;\n");
    for e in 0..setup.n() {
        let _ = writeln!(out, "  e{0} [shape=circle, label=\"{0}\"];", e + 1);
    }
    for (d, p) in setup.polarizers().iter().enumerate() {
        let _ = writeln!(out, "  d{0} [shape=box, label=\"D{0} {1}\"];", d + 1, p.symbol());
    }
    for f in setup.fibers() {
        let _ = write!(out, "  e{} -- d{}", f.emitter + 1, f.detector + 1);
        if f.phase.is_pi() {
            out.push_str(" [style=dashed, label=\"π\"]");
        } else if !f.phase.is_zero() {
            let _ = write!(out, " [style=dotted, label=\"{}π\"]", f.phase);
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::{Fiber, Phase, Polarizer};

    #[test]
    fn single_emitter() {
        let s = OpticalSetup::new(vec![Polarizer::SigmaPlus], vec![Fiber::new(0, 0, Phase::ZERO)]).unwrap();
        let dot = export_dot(&s);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("label=\"D1 σ+\""));
        assert!(!dot.contains("dashed"));
    }

    #[test]
    fn general_phase_is_dotted() {
        let s = OpticalSetup::new(vec![Polarizer::SigmaPlus], vec![Fiber::new(0, 0, Phase::new(1, 2))]).unwrap();
        assert!(export_dot(&s).contains("e1 -- d1 [style=dotted, label=\"1/2π\"];"));
    }
}
