use std::f64::consts::FRAC_1_SQRT_2;

use super::Filter;

/// A published decomposition low-pass filter and the residual budget its
/// printed precision allows.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    pub name: &'static str,
    pub taps: Filter,
    pub source: &'static str,
    pub tolerance: f64,
}

/// Four-decimal coefficients: worst-case half-unit rounding accumulated over
/// up to 2n product terms.
const FOUR_DECIMAL_BUDGET: f64 = 2e-3;

const RAW: &[(&str, &str, f64, &[f64])] = &[
    ("haar", "unique positive solution for two taps", 1e-15, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]),
    (
        "db3",
        "Daubechies 6-tap scaling filter, 4 decimals",
        5e-4,
        &[0.0352, -0.0854, -0.1350, 0.4599, 0.8069, 0.3327],
    ),
    (
        "table1-n4",
        "solved 8-tap filter, 4 decimals",
        FOUR_DECIMAL_BUDGET,
        &[0.2856, 0.3308, -0.2345, 0.2736, 0.1858, 0.5086, 0.4702, -0.4060],
    ),
    (
        "table1-n5",
        "solved 10-tap filter, 4 decimals",
        FOUR_DECIMAL_BUDGET,
        &[
            -0.1033, -0.3900, 0.1541, -0.1268, 0.0538, -0.0284, -0.0284, -0.3693, -0.7832, 0.2075,
        ],
    ),
    (
        "table1-n6",
        "solved 12-tap filter, 4 decimals",
        FOUR_DECIMAL_BUDGET,
        &[
            -0.5898, -0.6356, 0.0314, -0.1777, -0.2926, 0.1314, 0.1024, 0.0530, 0.1706, -0.1982,
            -0.1292, 0.1199,
        ],
    ),
    (
        "table1-n7",
        "solved 14-tap filter, 4 decimals",
        FOUR_DECIMAL_BUDGET,
        &[
            0.2234, -0.8473, -0.2672, 0.0400, -0.0054, 0.0682, -0.0561, 0.0384, -0.0983, 0.0357,
            -0.2041, 0.0369, -0.2995, -0.0790,
        ],
    ),
    (
        "table1-n8",
        "solved 16-tap filter, 4 decimals",
        FOUR_DECIMAL_BUDGET,
        &[
            -0.0021, -0.0010, 0.0659, 0.0397, 0.0351, -0.2904, 0.0667, 0.1552, -0.1573, 0.0316,
            -0.0071, 0.3433, 0.7973, 0.2286, -0.0913, 0.2000,
        ],
    ),
    (
        "fig2-n16taps",
        "converged 16-tap solver output, 4 decimals",
        FOUR_DECIMAL_BUDGET,
        &[
            0.5875, -0.0583, -0.1553, 0.0594, 0.2736, -0.0376, -0.0432, -0.1493, -0.0068, 0.4646,
            0.0597, 0.5446, -0.0043, -0.0748, -0.0041, -0.0414,
        ],
    ),
];

/// Daubechies 6-tap scaling filter from its radical closed form, ordered
/// like the 4-decimal `db3` entry (smallest tap first).
fn db3_exact() -> Vec<f64> {
    let r10 = 10f64.sqrt();
    let r = (5.0 + 2.0 * r10).sqrt();
    let d = 16.0 * std::f64::consts::SQRT_2;
    vec![
        (1.0 + r10 - r) / d,
        (5.0 + r10 - 3.0 * r) / d,
        (10.0 - 2.0 * r10 - 2.0 * r) / d,
        (10.0 - 2.0 * r10 + 2.0 * r) / d,
        (5.0 + r10 + 3.0 * r) / d,
        (1.0 + r10 + r) / d,
    ]
}

pub fn catalog() -> Vec<ReferenceEntry> {
    let mut entries: Vec<ReferenceEntry> = RAW
        .iter()
        .map(|&(name, source, tolerance, taps)| ReferenceEntry {
            name,
            source,
            tolerance,
            taps: Filter::new(taps.to_vec()).expect("catalog taps are valid filters"),
        })
        .collect();
    entries.push(ReferenceEntry {
        name: "db3-exact",
        source: "Daubechies 6-tap scaling filter, full precision from radicals",
        tolerance: 1e-14,
        taps: Filter::new(db3_exact()).expect("closed form is finite"),
    });
    entries
}

pub fn lookup(name: &str) -> Option<ReferenceEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
