//! The bundled example library.

/// One bundled input together with the command that runs it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Example {
    /// Name used by `examples NAME`.
    pub name: &'static str,
    /// File name of the bundled document.
    pub file: &'static str,
    /// Verb and flags (without the input path).
    pub args: &'static [&'static str],
    /// One-line description.
    pub description: &'static str,
    /// Document text.
    pub content: &'static str,
}

macro_rules! example {
    ($name:expr, $file:expr, [$($arg:expr),*], $desc:expr) => {
        Example {
            name: $name,
            file: $file,
            args: &[$($arg),*],
            description: $desc,
            content: include_str!(concat!("../data/", $file)),
        }
    };
}

/// All bundled examples in listing order.
pub const EXAMPLES: &[Example] = &[
    example!("p2-weakfano", "p2-weakfano.pair", ["duality"], "projective plane with the trivial dual fan"),
    example!("p1xp1-weakfano", "p1xp1-weakfano.pair", ["duality"], "product of two projective lines with the trivial dual fan"),
    example!("f3-stacky", "f3-stacky.pair", ["hodge", "--side", "both"], "Hirzebruch surface F3 with weights (2,1,1,1)"),
    example!("f3-seifert", "f3-seifert.matrix", ["jordan"], "Seifert matrix of the F3 mirror Laurent polynomial"),
    example!("a2-bhk", "a2.bhk", ["bhk", "--side", "both"], "A2 singularity x^3"),
    example!("a3-bhk", "a3.bhk", ["bhk", "--side", "both"], "A3 singularity x^4"),
    example!("a4-bhk", "a4.bhk", ["bhk", "--side", "both"], "A4 singularity x^5"),
    example!("a5-bhk", "a5.bhk", ["bhk", "--side", "both"], "A5 singularity x^6"),
    example!("a6-bhk", "a6.bhk", ["bhk", "--side", "both"], "A6 singularity x^7"),
    example!("fermat-cubic-bhk", "fermat-cubic.bhk", ["bhk", "--side", "both"], "Fermat cubic diag(3,3,3) with the trivial group"),
    example!(
        "fermat-cubic-maximal-bhk",
        "fermat-cubic-maximal.bhk",
        ["bhk", "--side", "both"],
        "Fermat cubic diag(3,3,3) with the maximal diagonal group"
    ),
    example!("cubic-curve-nef", "cubic-curve.nef", ["nef", "--regrade"], "plane cubic curve from the reflexive triangle"),
    example!(
        "p1-o2-stacky-hypersurface",
        "p1-o2.hypersurface",
        ["hodge", "--side", "both"],
        "two points in the projective line cut out by a section of O(2)"
    ),
    example!("eg-trop", "eg-trop.points", ["trop", "--orbifold"], "four points in the plane at heights (0,0,1,4)"),
];

/// Looks up an example by name.
pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}
