use super::{Certificate, Claim};
use crate::lattice::{parse_interval_list, SubsetMask};
use crate::oracle::MinTerm;

fn entry(name: &str, k: usize, intervals: &str, claim: &[&[usize]], erratum: Option<&str>) -> Certificate {
    // not every printed list is a good partition, so no validation here
    let intervals = parse_interval_list(intervals).expect("corpus intervals are well formed");
    let sets = claim.iter().map(|c| SubsetMask::from_coords(c, k).expect("corpus claim")).collect();
    Certificate {
        name: name.to_string(),
        k,
        intervals,
        claim: Claim::MinTerm(MinTerm::new(sets).expect("corpus claim")),
        erratum: erratum.map(str::to_string),
    }
}

const EXAMPLE_5_1_NOTE: &str = "as printed, the intervals [00001,00011],[00010] give tops whose minimum is <4>, \
     not <5>; swapping them to [00010,00011],[00001] yields <5> (see example-5.1-erratum)";

const EXAMPLE_5_4_NOTE: &str = "as printed, the intervals cover 01110 twice ([00010,11110] and [01110,01111]) \
     and never cover 01011; replacing [01110,01111] by [01011,01111] gives a good partition with the claimed \
     min-term (see example-5.4-erratum)";

/// The example partitions as printed, in order: the `k = 1` and `k = 2`
/// cases followed by the nine numbered examples for `k = 3, 4, 5`.
pub fn paper_corpus() -> Vec<Certificate> {
    vec![
        entry("case-k1", 1, "[1]", &[&[1]], None),
        entry("case-k2", 2, "[10,11],[01]", &[&[2]], None),
        entry("example-3.1", 3, "[110,111],[100,101],[010,011],[001]", &[&[3]], None),
        entry("example-3.2", 3, "[100,110],[001,101],[010,011],[111]", &[&[1, 2]], None),
        entry("example-4.1", 4, "[1100,1111],[1000,1011],[0100,0111],[0010,0011],[0001]", &[&[4]], None),
        entry(
            "example-4.2",
            4,
            "[1000,1011],[0100,1110],[0010,0011],[0001,0101],[1101,1111],[0111]",
            &[&[2, 4], &[1, 2, 3]],
            None,
        ),
        entry(
            "example-5.1",
            5,
            "[11000,11111],[10000,10111],[01000,01111],[00100,00111],[00001,00011],[00010]",
            &[&[5]],
            Some(EXAMPLE_5_1_NOTE),
        ),
        entry(
            "example-5.2",
            5,
            "[10000,10101],[01000,01101],[00100,00101],[00010,11110],[00001,00011],[01011,01111],\
             [10011,10111],[11000,11101],[11111],[11011],[00111]",
            &[&[3, 5], &[1, 2, 3, 4]],
            None,
        ),
        entry(
            "example-5.3",
            5,
            "[00001,00011],[00010,01110],[00100,10101],[01000,01101],[10000,10011],[00111,01111],\
             [10110,10111],[11000,11111],[01011]",
            &[&[4, 5], &[2, 3, 4], &[1, 3, 5]],
            None,
        ),
        entry(
            "example-5.4",
            5,
            "[00001,00011],[00010,11110],[00100,10101],[01000,01101],[10000,11001],[10011,10111],\
             [01110,01111],[11100,11101],[11011,11111],[00111]",
            &[&[4, 5], &[1, 2, 3, 4], &[1, 2, 5]],
            Some(EXAMPLE_5_4_NOTE),
        ),
        entry(
            "example-5.5",
            5,
            "[10000,11001],[01000,01110],[00100,10101],[00010,10110],[00001,01011],[10011,11011],\
             [01101,01111],[11010,11110],[00111,10111],[11100,11101],[11111]",
            &[&[1, 2, 5], &[1, 3, 4]],
            None,
        ),
    ]
}

/// Example 5.1 with its last two intervals swapped.
pub fn example_5_1_erratum() -> Certificate {
    entry(
        "example-5.1-erratum",
        5,
        "[11000,11111],[10000,10111],[01000,01111],[00100,00111],[00010,00011],[00001]",
        &[&[5]],
        None,
    )
}

/// Example 5.4 with `[01110,01111]` replaced by `[01011,01111]`.
pub fn example_5_4_erratum() -> Certificate {
    entry(
        "example-5.4-erratum",
        5,
        "[00001,00011],[00010,11110],[00100,10101],[01000,01101],[10000,11001],[10011,10111],\
         [01011,01111],[11100,11101],[11011,11111],[00111]",
        &[&[4, 5], &[1, 2, 3, 4], &[1, 2, 5]],
        None,
    )
}

/// The partitions whose values jointly attain the closed form for `k`
/// (Examples 5.1 and 5.4 in their corrected forms).
pub fn theorem_family(k: usize) -> Vec<Certificate> {
    let names: &[&str] = match k {
        1 => &["case-k1"],
        2 => &["case-k2"],
        3 => &["example-3.1", "example-3.2"],
        4 => &["example-4.1", "example-4.2"],
        5 => &["example-5.2", "example-5.3", "example-5.5"],
        _ => &[],
    };
    let mut family: Vec<Certificate> =
        paper_corpus().into_iter().filter(|c| names.contains(&c.name.as_str())).collect();
    if k == 5 {
        family.insert(0, example_5_1_erratum());
        family.insert(3, example_5_4_erratum());
    }
    family
}
