mod common;

use common::jones::{jones, torus_jones};
use legsat::atlas;
use std::collections::BTreeMap;
use std::path::Path;

/// Compares the committed atlas files with the recipes. With
/// LEGSAT_REGENERATE_ATLAS=1 the files are rewritten instead.
#[test]
fn regenerated_files_match_bit_for_bit() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("atlas");
    let regenerate = std::env::var("LEGSAT_REGENERATE_ATLAS").is_ok_and(|v| v == "1");
    let mut files: Vec<(String, String)> =
        atlas::names().map(|n| (format!("{n}.front"), atlas::render_front_file(n).unwrap())).collect();
    files.push(("golden.json".into(), atlas::render_golden().unwrap()));
    for (file, want) in files {
        let path = dir.join(&file);
        if regenerate {
            std::fs::write(&path, &want).unwrap();
        }
        let have = std::fs::read_to_string(&path).unwrap();
        assert_eq!(have, want, "{file} differs from its recipe");
    }
    for n in atlas::names() {
        assert_eq!(atlas::front_file(n).unwrap(), std::fs::read_to_string(dir.join(format!("{n}.front"))).unwrap());
    }
}

#[test]
fn every_entry_loads() {
    let entries = atlas::load_all().unwrap();
    assert_eq!(entries.len(), atlas::ENTRIES.len());
    for e in &entries {
        assert!(e.front.is_plat(), "{}", e.name);
        assert_eq!(e.front.component_count(), 1, "{}", e.name);
    }
}

fn poly(terms: &[(i64, i64)]) -> BTreeMap<i64, i64> {
    terms.iter().copied().collect()
}

#[test]
fn knot_types_by_jones_polynomial() {
    let unknot = poly(&[(0, 1)]);
    let figure_eight = poly(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
    let want = [
        ("unknot", unknot.clone()),
        ("unknot_stab_pos", unknot.clone()),
        ("unknot_stab_neg", unknot),
        ("trefoil_rh", torus_jones(2, 3, false)),
        ("trefoil_rh_stab_neg", torus_jones(2, 3, false)),
        ("trefoil_lh", torus_jones(2, 3, true)),
        ("trefoil_lh_stab_pos", torus_jones(2, 3, true)),
        ("figure_eight", figure_eight.clone()),
        ("figure_eight_stab_pos", figure_eight),
        ("torus_2_5", torus_jones(2, 5, false)),
        ("torus_2_7", torus_jones(2, 7, false)),
        ("torus_2_-5", torus_jones(2, 5, true)),
        ("torus_2_-7", torus_jones(2, 7, true)),
        ("torus_3_-4", torus_jones(3, 4, true)),
        ("torus_3_-4_stab_pos", torus_jones(3, 4, true)),
        ("torus_3_-5", torus_jones(3, 5, true)),
    ];
    assert_eq!(want.len(), atlas::ENTRIES.len());
    for (name, j) in want {
        assert_eq!(jones(&atlas::load(name).unwrap().front), j, "{name}");
    }
}

#[test]
fn maximal_tb_values() {
    // maximal tb: -1 unknot, 1 and -6 trefoils, -3 figure eight, 2k - 3 for
    // T(2,k), -2k for T(2,-k), pq - p for T(p,-q) with p < q
    for (name, tb) in [
        ("unknot", -1),
        ("trefoil_rh", 1),
        ("trefoil_lh", -6),
        ("figure_eight", -3),
        ("torus_2_5", 3),
        ("torus_2_7", 5),
        ("torus_2_-5", -10),
        ("torus_2_-7", -14),
        ("torus_3_-4", -12),
        ("torus_3_-5", -15),
    ] {
        assert_eq!(atlas::load(name).unwrap().tb, tb, "{name}");
    }
}
