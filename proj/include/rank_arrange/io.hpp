#pragma once

#include "rank_arrange/arrangement.hpp"
#include "rank_arrange/bounds.hpp"
#include "rank_arrange/chambers.hpp"
#include "rank_arrange/finitefield.hpp"
#include "rank_arrange/unfolding.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rank_arrange {

using Json = nlohmann::ordered_json;

/// Version tag written as the top-level "schema" field of every document.
inline constexpr const char* kSchemaVersion = "1";

/// Empty document carrying the schema tag.
Json schema_document();

/// "p/q" (or "p" for integers).
std::string rational_string(const Rational& x);
Json rational_vector_json(const RationalVector& v);

Json arrangement_json(const Arrangement& a);
Json chambers_json(const Arrangement& a, const std::vector<Chamber>& chambers);
Json charpoly_json(const CharPolyResult& r);
Json pattern_json(const RankingPattern& p);
Json bounds_json(const std::vector<BoundsRow>& rows);

/// Configuration document {"m": .., "n": .., "points": [["p/q", ..], ..]};
/// numbers are accepted for integer coordinates. Throws Error on malformed input.
ObjectConfig config_from_json(const Json& doc);
Json config_json(const ObjectConfig& config);
ObjectConfig read_config_file(const std::string& path);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_line(const std::vector<std::string>& fields);
/// Header plus one line per row: m,r0,a,ell,u,f with display cells.
std::string bounds_csv(const std::vector<BoundsRow>& rows);

}  // namespace rank_arrange
