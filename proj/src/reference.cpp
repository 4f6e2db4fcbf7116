#include "rank_arrange/reference.hpp"

#include "rank_arrange/errors.hpp"
#include "reference_text.hpp"

#include <sstream>

namespace rank_arrange {

const std::uint64_t kReferenceDataHash = 0x51401018be109ab8ull;

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

BigInt parse_big(const std::string& s, std::size_t line)
{
    try {
        return BigInt(s);
    } catch (const std::invalid_argument&) {
        throw ReferenceDataError("line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
}

}  // namespace

ReferenceData parse_reference_data(std::string_view text, std::uint64_t expected_hash)
{
    if (expected_hash != 0 && fnv1a64(text) != expected_hash)
        throw ReferenceDataError("reference data hash mismatch");
    ReferenceData data;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 4) throw ReferenceDataError("line " + std::to_string(lineno) + ": expected 4 fields");
        const std::string& kind = fields[0];
        const std::size_t key = std::stoul(fields[1]);
        const std::string& value = fields[2];
        const std::string& location = fields[3];
        if (kind == "r0") {
            data.r0[key] = {parse_big(value, lineno), location};
        } else if (kind == "q") {
            data.q[key] = {parse_big(value, lineno), location};
        } else if (kind == "q_ie") {
            data.q_ie[key] = {parse_big(value, lineno), location};
        } else if (kind == "chi_mid") {
            std::vector<BigInt> descending;
            for (const auto& c : split(value, ',')) descending.push_back(parse_big(c, lineno));
            std::vector<BigInt> ascending(descending.rbegin(), descending.rend());
            const IntPolynomial t_t_minus_1 = IntPolynomial::from_roots({0, 1});
            data.chi_mid[key] = {t_t_minus_1 * IntPolynomial(std::move(ascending)), location};
        } else if (kind == "table") {
            const auto cells = split(value, '|');
            if (cells.size() != 5) throw ReferenceDataError("line " + std::to_string(lineno) + ": table row needs 5 cells");
            data.bounds_table.push_back({key, cells[0], cells[1], cells[2], cells[3], cells[4], location});
        } else {
            throw ReferenceDataError("line " + std::to_string(lineno) + ": unknown kind '" + kind + "'");
        }
    }
    return data;
}

const ReferenceData& reference_data()
{
    static const ReferenceData data = parse_reference_data(kEmbeddedReferenceText, kReferenceDataHash);
    return data;
}

}  // namespace rank_arrange
