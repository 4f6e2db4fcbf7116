#pragma once

#include "rank_arrange/exactmath.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rank_arrange {

/// A published value together with the tag of the table or list it was printed in.
template <class T>
struct Tagged {
    T value;
    std::string location;
};

/// One printed row of the bounds table; cells are kept verbatim.
struct PrintedBoundsRow {
    std::size_t m = 0;
    std::string r0, a, ell, u, f;
    std::string location;
};

/// Published constants, parsed from the checked-in data file compiled into the
/// library. The file's FNV-1a hash is verified on first access.
struct ReferenceData {
    std::map<std::size_t, Tagged<BigInt>> r0;
    std::map<std::size_t, Tagged<BigInt>> q;
    std::map<std::size_t, Tagged<BigInt>> q_ie;
    std::map<std::size_t, Tagged<IntPolynomial>> chi_mid;
    std::vector<PrintedBoundsRow> bounds_table;
};

/// Throws ReferenceDataError if the embedded file fails its hash or does not parse.
const ReferenceData& reference_data();

/// Parses reference text; `expected_hash` 0 skips the hash check.
ReferenceData parse_reference_data(std::string_view text, std::uint64_t expected_hash);

std::uint64_t fnv1a64(std::string_view bytes);

/// Hash the embedded data file must have.
extern const std::uint64_t kReferenceDataHash;

}  // namespace rank_arrange
