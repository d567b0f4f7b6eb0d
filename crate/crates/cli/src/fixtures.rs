//! Bundled job files.

use crate::CliError;

#[derive(Debug)]
pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub source: &'static str,
    /// Expected verdict, or `None` for model-only fixtures.
    pub expected: Option<&'static str>,
    pub text: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        id: "ex3.1",
        title: "X0 v X1 with a 6-cell along <g12, α> = <z, α> = 1",
        source: "decomposable u without specialness: u = -[x1*x2*x3], \
                 a degree-5 generator of stage 3 pairs nontrivially with α",
        expected: Some("Inconclusive (non-special), exit 20"),
        text: include_str!("../fixtures/ex3.1.txt"),
    },
    Fixture {
        id: "ex3.2",
        title: "S2 v S2 v S2 with a 6-cell along <k12, α> = 1",
        source: "even-cell complex that is not formal: [u] spans H^6 and is indecomposable",
        expected: Some("NotFormal (iii), exit 10"),
        text: include_str!("../fixtures/ex3.2.txt"),
    },
    Fixture {
        id: "wedge3-s2",
        title: "S2 v S2 v S2, model through degree 5",
        source: "minimal model table of a wedge of three 2-spheres",
        expected: None,
        text: include_str!("../fixtures/wedge3-s2.txt"),
    },
    Fixture {
        id: "cp1",
        title: "S2 = CP1, H* = Q[a]/(a^2)",
        source: "derived: db = a^2",
        expected: None,
        text: include_str!("../fixtures/cp1.txt"),
    },
    Fixture {
        id: "cp2-attach",
        title: "S2 with a 4-cell along <b, α> = 1 (CP2)",
        source: "derived: d_α b = a^2 + u_α, so u = -[a]^2",
        expected: Some("Formal (ii), exit 0"),
        text: include_str!("../fixtures/cp2-attach.txt"),
    },
    Fixture {
        id: "even-4k",
        title: "S2 v S2 with a 4-cell along the Whitehead product (k = 1)",
        source: "even-complex criterion: generated in degree 2k, dimension at most 4k; \
                 result is H*(S2 x S2)",
        expected: Some("Formal (even-complex), exit 0"),
        text: include_str!("../fixtures/even-4k.txt"),
    },
];

pub fn fixture(id: &str) -> Result<&'static Fixture, CliError> {
    if let Some(f) = FIXTURES.iter().find(|f| f.id == id) {
        return Ok(f);
    }
    let suggestion = FIXTURES
        .iter()
        .map(|f| (strsim::jaro_winkler(id, f.id), f.id))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, s)| s.to_string());
    Err(CliError::UnknownFixture {
        id: id.to_string(),
        suggestion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::Job;

    #[test]
    fn every_fixture_parses() {
        for f in FIXTURES {
            let job = Job::parse(f.id, f.text).unwrap();
            assert!(job.truncation.is_some(), "{}", f.id);
            assert_eq!(job.cells.is_empty(), f.expected.is_none(), "{}", f.id);
        }
    }

    #[test]
    fn unknown_ids_get_a_suggestion() {
        let err = fixture("ex3.3").unwrap_err();
        assert!(err.to_string().contains("ex3."), "{err}");
        let err = fixture("cp2").unwrap_err();
        assert!(
            err.to_string().contains("did you mean `cp2-attach`?"),
            "{err}"
        );
        let err = fixture("wedge").unwrap_err();
        assert!(err.to_string().contains("wedge3-s2"), "{err}");
    }
}
