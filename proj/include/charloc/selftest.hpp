#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include "charloc/laurent.hpp"

namespace charloc {
namespace selftest {

// Invariant suites behind the CLI --selftest flags: one printed line per
// invariant, return value false iff anything failed.
bool lattice(std::uint64_t seed, std::ostream& os);
bool ring(std::uint64_t seed, std::ostream& os);
bool localization(std::uint64_t seed, std::ostream& os);
bool characters(std::uint64_t seed, std::ostream& os);
bool series(std::uint64_t seed, std::ostream& os);
bool sl2(std::uint64_t seed, std::ostream& os);
bool regularity(std::uint64_t seed, std::ostream& os);
bool all(std::uint64_t seed, std::ostream& os);

// shared random generators
LaurentPoly random_poly(std::mt19937_64& rng, std::size_t rank, std::size_t max_terms,
                        std::int64_t coord_range, std::int64_t coeff_range);
Weight random_weight(std::mt19937_64& rng, std::size_t rank, std::int64_t coord_range);

// shipped root data, constructed in code so the suites need no files
const RootDatum& datum_a1();
const RootDatum& datum_a2();     // weight-basis A2 (fundamental-weight coordinates)
const RootDatum& datum_a1xa1();

} // namespace selftest
} // namespace charloc
