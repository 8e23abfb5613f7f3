//! Parameter sets shipped with the binary.

pub const NAMES: [&str; 13] = [
    "table1-theory",
    "table1",
    "table2-regular",
    "table2-er",
    "table4-regular-small",
    "fig2a",
    "fig2b",
    "fig2c",
    "fig2d",
    "fig1a",
    "fig1b",
    "fig1c",
    "fig1d",
];

pub fn get(name: &str) -> Option<&'static str> {
    Some(match name {
        "table1-theory" => include_str!("../presets/table1-theory.json"),
        "table1" => include_str!("../presets/table1.json"),
        "table2-regular" => include_str!("../presets/table2-regular.json"),
        "table2-er" => include_str!("../presets/table2-er.json"),
        "table4-regular-small" => include_str!("../presets/table4-regular-small.json"),
        "fig2a" => include_str!("../presets/fig2a.json"),
        "fig2b" => include_str!("../presets/fig2b.json"),
        "fig2c" => include_str!("../presets/fig2c.json"),
        "fig2d" => include_str!("../presets/fig2d.json"),
        "fig1a" => include_str!("../presets/fig1a.json"),
        "fig1b" => include_str!("../presets/fig1b.json"),
        "fig1c" => include_str!("../presets/fig1c.json"),
        "fig1d" => include_str!("../presets/fig1d.json"),
        _ => return None,
    })
}
