#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimpoly/diffring.hpp"
#include "dimpoly/extdim.hpp"
#include "dimpoly/lattice.hpp"

namespace dimpoly {

// "blocks=1,2" or "1,2".
Partition parse_partition(std::string_view text);

// Comma-separated integers, e.g. "3,3,3".
std::vector<long> parse_int_list(std::string_view text, std::string_view what = "list");

// One point per line; blank lines and lines starting with '#' are skipped.
LatticeSet parse_lattice_set(std::string_view text, Ambient ambient, std::optional<std::size_t> dim = std::nullopt);

// Polynomial in the text grammar; m is the number of translations, n (if
// given) bounds the generator index.  `line` is used for diagnostics.
DiffPolynomial parse_polynomial(std::string_view text, std::size_t m, std::optional<std::size_t> n = std::nullopt,
                                std::size_t line = 1);

// `blocks=...` line, `gens=n` line, then one linear polynomial per line.
ExtensionSpec parse_spec(std::string_view text);

}  // namespace dimpoly
