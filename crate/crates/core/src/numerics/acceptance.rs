//! The full verification matrix: every headline identity of the structure,
//! at pinned tolerances, trial counts, and seeds. Both the `acceptance`
//! test target and the CLI `suite` subcommand run this matrix.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::checks::{
    self, embed_pullback_residual, CheckName, EmbedSpace, StructureReport, TrialConfig,
};
use crate::rings::RingTag;
use crate::DEFAULT_TOL;

/// One acceptance criterion: an identifier, a short description, and a
/// runner producing the report lines for its whole sampling plan.
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub run: fn() -> Vec<StructureReport>,
}

/// Seeds are fixed per criterion cell so that every run of the suite is
/// byte-identical.
fn seed(criterion: u8, cell: u64) -> u64 {
    1000 * criterion as u64 + cell
}

fn exec(check: CheckName, cfg: TrialConfig) -> StructureReport {
    checks::execute(check, &cfg).expect("acceptance matrix uses supported combinations")
}

fn criterion_1() -> Vec<StructureReport> {
    let mut out = Vec::new();
    let mut cell = 0;
    for ring in [
        RingTag::GaussianQ,
        RingTag::Bicomplex,
        RingTag::Split,
        RingTag::QuaternionQ,
    ] {
        for n in [2, 3, 4] {
            out.push(exec(
                CheckName::MainIdentity,
                TrialConfig::new(ring.clone(), n)
                    .trials(100)
                    .seed(seed(1, cell)),
            ));
            cell += 1;
        }
    }
    out
}

fn criterion_2() -> Vec<StructureReport> {
    let mut out = Vec::new();
    for (cell, n) in [2, 3].into_iter().enumerate() {
        out.push(exec(
            CheckName::ClosedForm,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(100)
                .seed(seed(2, cell as u64)),
        ));
    }
    for (cell, n) in [2, 3].into_iter().enumerate() {
        out.push(exec(
            CheckName::ClosedForm,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(20)
                .seed(seed(2, 10 + cell as u64))
                .tol(1e-6)
                .step(1e-4),
        ));
    }
    out
}

fn criterion_3() -> Vec<StructureReport> {
    let mut out = Vec::new();
    for (cell, n) in [2, 3].into_iter().enumerate() {
        out.push(exec(
            CheckName::HCompat,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(100)
                .seed(seed(3, cell as u64)),
        ));
    }
    out
}

fn criterion_4() -> Vec<StructureReport> {
    let mut out = Vec::new();
    let mut cell = 0;
    for n in [2, 3] {
        out.push(exec(
            CheckName::CoverEtale,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(100)
                .seed(seed(4, cell)),
        ));
        cell += 1;
        out.push(exec(
            CheckName::ISquare,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(100)
                .seed(seed(4, cell)),
        ));
        cell += 1;
        out.push(exec(
            CheckName::QuaternionRelations,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(50)
                .seed(seed(4, cell))
                .tol(1e-12),
        ));
        cell += 1;
    }
    out
}

fn criterion_5() -> Vec<StructureReport> {
    let mut out = Vec::new();
    let mut cell = 0;
    for ring in [RingTag::GaussianQ, RingTag::Split] {
        for n in [2, 3] {
            out.push(exec(
                CheckName::IntertwineBicomplex,
                TrialConfig::new(ring.clone(), n)
                    .trials(50)
                    .seed(seed(5, cell)),
            ));
            cell += 1;
        }
    }
    for n in [2, 3] {
        out.push(exec(
            CheckName::IntertwineI,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(50)
                .seed(seed(5, cell)),
        ));
        cell += 1;
    }
    out.push(exec(
        CheckName::IntertwineI,
        TrialConfig::new(RingTag::MachineComplex, 2)
            .trials(20)
            .seed(seed(5, cell))
            .tol(1e-12),
    ));
    out
}

fn criterion_6() -> Vec<StructureReport> {
    let mut out = Vec::new();
    for (cell, n) in [2, 3].into_iter().enumerate() {
        out.push(exec(
            CheckName::Antisymplectic,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(100)
                .seed(seed(6, cell as u64)),
        ));
    }
    out
}

fn criterion_7() -> Vec<StructureReport> {
    let mut out = Vec::new();
    for ring in [
        RingTag::Fp(2),
        RingTag::Fp(3),
        RingTag::Fp(5),
        RingTag::Zmod(6),
    ] {
        out.push(exec(
            CheckName::Enumeration,
            TrialConfig::new(ring, 2).trials(1).seed(0),
        ));
    }
    out
}

fn criterion_8() -> Vec<StructureReport> {
    let spaces = [
        EmbedSpace::Real(1),
        EmbedSpace::Real(2),
        EmbedSpace::Real(3),
        EmbedSpace::Real(4),
        EmbedSpace::Complex(1),
        EmbedSpace::Complex(2),
        EmbedSpace::Complex(3),
        EmbedSpace::Complex(4),
        EmbedSpace::Quaternionic(1),
        EmbedSpace::MatrixComplex(2),
        EmbedSpace::MatrixComplex(3),
    ];
    let mut out = Vec::new();
    for (cell, space) in spaces.into_iter().enumerate() {
        let s = seed(8, cell as u64);
        let residual = embed_pullback_residual(space, 50, s, 1e-4);
        let n = match space {
            EmbedSpace::Real(k) | EmbedSpace::Complex(k) | EmbedSpace::Quaternionic(k) => k,
            EmbedSpace::MatrixComplex(n) => n,
        };
        out.push(StructureReport {
            check: CheckName::EmbedPullback.as_str().to_string(),
            ring: space.to_string(),
            n,
            seed: s,
            trials: 50,
            max_residual: residual,
            pass: residual < 1e-6,
            elapsed_ms: 0,
        });
    }
    out
}

fn criterion_9() -> Vec<StructureReport> {
    let mut out = Vec::new();
    let mut cell = 0;
    for n in [2, 3] {
        out.push(exec(
            CheckName::Variety,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(50)
                .seed(seed(9, cell))
                .tol(1e-12),
        ));
        cell += 1;
        out.push(exec(
            CheckName::VarietyRoundtrip,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(50)
                .seed(seed(9, cell))
                .tol(1e-10),
        ));
        cell += 1;
        out.push(exec(
            CheckName::TwoSheets,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(50)
                .seed(seed(9, cell))
                .tol(1e-12),
        ));
        cell += 1;
    }
    out
}

fn criterion_10() -> Vec<StructureReport> {
    let mut out = Vec::new();
    for (cell, n) in [2, 3].into_iter().enumerate() {
        out.push(exec(
            CheckName::PotentialMetric,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(20)
                .seed(seed(10, cell as u64))
                .tol(1e-3)
                .step(1e-3),
        ));
    }
    out
}

fn criterion_11() -> Vec<StructureReport> {
    let mut out = Vec::new();
    let mut cell = 0;
    for n in [2, 3] {
        out.push(exec(
            CheckName::Nondegenerate,
            TrialConfig::new(RingTag::GaussianQ, n)
                .trials(50)
                .seed(seed(11, cell)),
        ));
        cell += 1;
        out.push(exec(
            CheckName::Nondegenerate,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(50)
                .seed(seed(11, cell))
                .tol(0.5),
        ));
        cell += 1;
    }
    out
}

fn criterion_12() -> Vec<StructureReport> {
    let mut out = Vec::new();
    for (cell, n) in [2, 3].into_iter().enumerate() {
        out.push(exec(
            CheckName::Nijenhuis,
            TrialConfig::new(RingTag::MachineComplex, n)
                .trials(20)
                .seed(seed(12, cell as u64))
                .tol(1e-4)
                .step(1e-4),
        ));
    }
    out
}

/// All acceptance criteria, in order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "tangent operator squares to -4 Tr(q\u{2020}q)^3, exactly, all scalar systems",
            run: criterion_1,
        },
        Criterion {
            id: 2,
            title: "symplectic form is closed: exact identity and finite-difference exterior derivative",
            run: criterion_2,
        },
        Criterion {
            id: 3,
            title: "Hermitian forms factor through the symplectic form, exactly",
            run: criterion_3,
        },
        Criterion {
            id: 4,
            title: "covering space: unique tangent lifts, I^2 = -1, quaternionic relations",
            run: criterion_4,
        },
        Criterion {
            id: 5,
            title: "square-root twist maps intertwine the complex structure, exactly",
            run: criterion_5,
        },
        Criterion {
            id: 6,
            title: "the involution is anti-symplectic, exactly",
            run: criterion_6,
        },
        Criterion {
            id: 7,
            title: "point counts over finite rings match independent scans and CRT products",
            run: criterion_7,
        },
        Criterion {
            id: 8,
            title: "weighted embedding is isometric under finite differences (weights 5/2, 1, 1/2)",
            run: criterion_8,
        },
        Criterion {
            id: 9,
            title: "embedded projections satisfy all seven variety relations and round-trip",
            run: criterion_9,
        },
        Criterion {
            id: 10,
            title: "trace-norm potential reproduces the metric up to one fitted constant",
            run: criterion_10,
        },
        Criterion {
            id: 11,
            title: "Hermitian form is non-degenerate on a spanning tangent set",
            run: criterion_11,
        },
        Criterion {
            id: 12,
            title: "Nijenhuis residual of the normalized structure vanishes numerically",
            run: criterion_12,
        },
    ]
}

/// Default tolerance echo for documentation purposes.
pub fn default_tol() -> f64 {
    DEFAULT_TOL
}
