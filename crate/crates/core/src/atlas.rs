//! Named Legendrian knots shipped with the crate. Each entry is a front file
//! under `atlas/` plus golden invariants in `atlas/golden.json`; both are
//! regenerated from the recipes here and loading re-checks the invariants.

use crate::diagram::moves::{plat_position, stabilize};
use crate::diagram::text::{front_to_text, parse_front};
use crate::diagram::{AnnulusPattern, Event, PlatFront};
use crate::error::{Error, Result};
use crate::ruling::{polynomial, LaurentPoly, Mode};
use crate::satellite::satellite;
use serde_json::{json, Map, Value};

/// (name, knot type) of every entry, in file order.
pub const ENTRIES: &[(&str, &str)] = &[
    ("unknot", "unknot, tb = -1"),
    ("trefoil_rh", "right-handed trefoil T(2,3)"),
    ("trefoil_lh", "left-handed trefoil T(2,-3)"),
    ("figure_eight", "figure-eight knot 4_1"),
    ("torus_2_5", "T(2,5)"),
    ("torus_2_7", "T(2,7)"),
    ("torus_2_-5", "T(2,-5)"),
    ("torus_2_-7", "T(2,-7)"),
    ("torus_3_-4", "T(3,-4) = m(8_19)"),
    ("torus_3_-5", "T(3,-5) = m(10_124)"),
    ("unknot_stab_pos", "positive stabilization of the unknot"),
    ("unknot_stab_neg", "negative stabilization of the unknot"),
    ("trefoil_rh_stab_neg", "negative stabilization of trefoil_rh"),
    ("trefoil_lh_stab_pos", "positive stabilization of trefoil_lh"),
    ("figure_eight_stab_pos", "positive stabilization of figure_eight"),
    ("torus_3_-4_stab_pos", "positive stabilization of torus_3_-4"),
];

macro_rules! front_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../atlas/", $name, ".front")))),*]
    };
}

const FRONT_FILES: &[(&str, &str)] = front_files!(
    "unknot",
    "trefoil_rh",
    "trefoil_lh",
    "figure_eight",
    "torus_2_5",
    "torus_2_7",
    "torus_2_-5",
    "torus_2_-7",
    "torus_3_-4",
    "torus_3_-5",
    "unknot_stab_pos",
    "unknot_stab_neg",
    "trefoil_rh_stab_neg",
    "trefoil_lh_stab_pos",
    "figure_eight_stab_pos",
    "torus_3_-4_stab_pos",
);

const GOLDEN: &str = include_str!("../atlas/golden.json");

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub name: String,
    pub knot_type: String,
    pub front: PlatFront,
    pub tb: i64,
    pub rotation: i64,
    /// Ungraded ruling polynomial.
    pub ruling_polynomial: LaurentPoly,
}

/// Positive torus knot T(2, k), k odd, as the plat closure of k crossings.
fn positive_two_strand(k: usize) -> Result<PlatFront> {
    parse_front(&format!("L1; L3; {}; R1; R3", vec!["X2"; k].join("; ")))
}

/// T(n, -q) for q > n as the satellite of the unknot with q - n backturns on
/// n strands, each a left cusp on top, crossings down the strands and a
/// right cusp at the bottom. Put in plat position.
pub fn negative_torus(n: usize, q: usize) -> Result<PlatFront> {
    if n < 2 || q <= n {
        return Err(Error::Precondition("negative_torus needs 2 <= n < q".into()));
    }
    let mut events = Vec::new();
    for _ in n..q {
        events.push(Event::left(0));
        events.extend((1..n).map(Event::cross));
        events.push(Event::right(n));
    }
    let pattern = AnnulusPattern::new(n, vec![0; n], events)?;
    let unknot = parse_front("L1; R1")?;
    plat_position(&satellite(&unknot, &pattern, 1)?.front)
}

/// The front of an entry built from scratch.
pub fn recipe(name: &str) -> Result<PlatFront> {
    let stab = |base: &str, positive: bool| stabilize(&recipe(base)?, positive);
    match name {
        "unknot" => parse_front("L1; R1"),
        "trefoil_rh" => positive_two_strand(3),
        "trefoil_lh" => negative_torus(2, 3),
        "figure_eight" => parse_front("L1; L3; X2; X2; X1; X1; X1; X1; X2; R1; R3"),
        "torus_2_5" => positive_two_strand(5),
        "torus_2_7" => positive_two_strand(7),
        "torus_2_-5" => negative_torus(2, 5),
        "torus_2_-7" => negative_torus(2, 7),
        "torus_3_-4" => negative_torus(3, 4),
        "torus_3_-5" => negative_torus(3, 5),
        "unknot_stab_pos" => stab("unknot", true),
        "unknot_stab_neg" => stab("unknot", false),
        "trefoil_rh_stab_neg" => stab("trefoil_rh", false),
        "trefoil_lh_stab_pos" => stab("trefoil_lh", true),
        "figure_eight_stab_pos" => stab("figure_eight", true),
        "torus_3_-4_stab_pos" => stab("torus_3_-4", true),
        _ => Err(Error::Precondition(format!("no atlas entry `{name}`"))),
    }
}

fn knot_type(name: &str) -> Result<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| Error::Precondition(format!("no atlas entry `{name}`")))
}

/// Contents of `atlas/<name>.front`.
pub fn render_front_file(name: &str) -> Result<String> {
    let front = recipe(name)?;
    Ok(format!("# {name}: {}\n{}\n", knot_type(name)?, front_to_text(&front)))
}

fn invariants(front: &PlatFront) -> Result<(i64, i64, LaurentPoly)> {
    Ok((front.thurston_bennequin(), front.rotation_number(), polynomial(&front.graded(1)?, Mode::Normal)))
}

/// Contents of `atlas/golden.json`.
pub fn render_golden() -> Result<String> {
    let mut m = Map::new();
    for (name, kind) in ENTRIES {
        let (tb, r, poly) = invariants(&recipe(name)?)?;
        m.insert(name.to_string(), json!({ "knot": kind, "tb": tb, "r": r, "ruling_polynomial_p1": poly.to_json() }));
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

/// The committed text of `atlas/<name>.front`.
pub fn front_file(name: &str) -> Option<&'static str> {
    FRONT_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn golden_file() -> &'static str {
    GOLDEN
}

/// Loads an entry and checks its front against the golden invariants.
pub fn load(name: &str) -> Result<AtlasEntry> {
    let text = front_file(name).ok_or_else(|| Error::Precondition(format!("no atlas entry `{name}`")))?;
    let front = parse_front(text)?;
    let golden: Value = serde_json::from_str(GOLDEN).map_err(|e| Error::Internal(format!("atlas/golden.json: {e}")))?;
    let g = &golden[name];
    let tb = g["tb"].as_i64();
    let r = g["r"].as_i64();
    let poly = LaurentPoly::from_json(&g["ruling_polynomial_p1"]);
    let (Some(tb), Some(r), Some(poly)) = (tb, r, poly) else {
        return Err(Error::Internal(format!("atlas/golden.json has no complete record for `{name}`")));
    };
    let got = invariants(&front)?;
    if got != (tb, r, poly.clone()) {
        return Err(Error::Internal(format!("atlas entry `{name}`: computed (tb, r, R) = {got:?}, golden ({tb}, {r}, {poly})")));
    }
    Ok(AtlasEntry {
        name: name.to_string(),
        knot_type: g["knot"].as_str().unwrap_or_default().to_string(),
        front,
        tb,
        rotation: r,
        ruling_polynomial: poly,
    })
}

pub fn load_all() -> Result<Vec<AtlasEntry>> {
    names().map(load).collect()
}
