#pragma once

#include "elp/model.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace elp {

/// The scholarship-eligibility instance with students s1..sn:
///
///     fairGPA(si) or highGPA(si).
///     eligible(si) :- highGPA(si).
///     eligible(si) :- minority(si), fairGPA(si).
///     -eligible(si) :- -fairGPA(si), -highGPA(si).
///     interview(si) :- not K eligible(si), not K -eligible(si).
///
/// |Ep| = 2n. Throws ContractError for n < 1.
std::string gen_eligible(int n);
Program eligible_program(int n);

struct RandomElpOptions {
    std::size_t max_atoms = 4;
    std::size_t max_rules = 6;
    std::size_t max_subjective = 3;
    bool classical_negation = false;
};

/// A random ground ELP over the propositional atoms a, b, c, ... Every
/// draw is taken modulo the engine output, so a seed reproduces the same
/// program on every platform.
Program random_elp(std::mt19937_64& rng, const RandomElpOptions& options = {});

/// As random_elp without subjective literals; bodies may use `not not`.
Program random_asp(std::mt19937_64& rng, const RandomElpOptions& options = {});

} // namespace elp
