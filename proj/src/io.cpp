#include "rank_arrange/io.hpp"

#include "rank_arrange/errors.hpp"

#include <fstream>
#include <sstream>

namespace rank_arrange {

Json schema_document()
{
    Json doc = Json::object();
    doc["schema"] = kSchemaVersion;
    return doc;
}

std::string rational_string(const Rational& x)
{
    return x.get_den() == 1 ? x.get_num().get_str() : x.get_str();
}

Json rational_vector_json(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_string(x));
    return out;
}

Json arrangement_json(const Arrangement& a)
{
    Json doc = schema_document();
    doc["family"] = family_name(a.family());
    doc["m"] = a.m();
    doc["dim"] = a.dim();
    doc["rank"] = a.rank();
    doc["central"] = a.is_central();
    Json planes = Json::array();
    for (const auto& h : a.hyperplanes()) {
        Json p;
        Json normal = Json::array();
        for (const auto& c : h.normal()) normal.push_back(c.get_str());
        p["normal"] = std::move(normal);
        p["offset"] = h.offset().get_str();
        p["label"] = h.label().to_string();
        planes.push_back(std::move(p));
    }
    doc["hyperplanes"] = std::move(planes);
    return doc;
}

Json chambers_json(const Arrangement& a, const std::vector<Chamber>& chambers)
{
    Json doc = schema_document();
    doc["family"] = family_name(a.family());
    doc["m"] = a.m();
    doc["dim"] = a.dim();
    doc["hyperplanes"] = a.size();
    doc["count"] = chambers.size();
    Json list = Json::array();
    for (const auto& c : chambers) {
        Json entry;
        entry["signs"] = c.signs.to_string();
        entry["witness"] = rational_vector_json(c.witness);
        list.push_back(std::move(entry));
    }
    doc["chambers"] = std::move(list);
    return doc;
}

Json charpoly_json(const CharPolyResult& r)
{
    Json doc = schema_document();
    doc["family"] = family_name(r.family);
    doc["m"] = r.m;
    Json coeffs = Json::array();
    for (long k = 0; k <= r.poly.degree(); ++k) coeffs.push_back(r.poly.coefficient(static_cast<std::size_t>(k)).get_str());
    doc["coefficients"] = std::move(coeffs);
    doc["polynomial"] = r.poly.to_string();
    doc["primes_used"] = r.primes_used;
    doc["verified"] = r.consistency_verified;
    return doc;
}

Json pattern_json(const RankingPattern& p)
{
    Json doc = schema_document();
    doc["count"] = p.size();
    doc["rankings"] = pattern_strings(p);
    return doc;
}

Json bounds_json(const std::vector<BoundsRow>& rows)
{
    Json doc = schema_document();
    Json list = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["m"] = r.m;
        row["r0"] = r.r0 ? Json(r.r0->get_str()) : Json(nullptr);
        row["a"] = r.a.get_str();
        row["ell"] = rational_string(r.ell);
        row["ell_ceil"] = r.ell_ceil.get_str();
        row["u_lower"] = rational_string(r.u.lo);
        row["u_upper"] = rational_string(r.u.hi);
        row["u_floor"] = r.u_floor.get_str();
        row["f"] = r.f.get_str();
        row["cells"] = {{"r0", r.r0_cell}, {"a", r.a_cell}, {"ell", r.ell_cell}, {"u", r.u_cell}, {"f", r.f_cell}};
        list.push_back(std::move(row));
    }
    doc["rows"] = std::move(list);
    return doc;
}

ObjectConfig config_from_json(const Json& doc)
{
    if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
        throw Error("configuration needs a \"points\" array");
    std::vector<RationalVector> pts;
    for (const auto& row : doc["points"]) {
        if (!row.is_array()) throw Error("each point must be an array of coordinates");
        RationalVector p;
        for (const auto& c : row) {
            if (c.is_string())
                p.push_back(parse_rational(c.get<std::string>()));
            else if (c.is_number_integer())
                p.push_back(Rational(c.get<long>()));
            else
                throw Error("coordinates must be integers or \"p/q\" strings");
        }
        pts.push_back(std::move(p));
    }
    ObjectConfig config(std::move(pts));
    if (doc.contains("m") && doc["m"].get<std::size_t>() != config.m())
        throw DimensionMismatch("\"m\" disagrees with the number of points");
    if (doc.contains("n") && doc["n"].get<std::size_t>() != config.n())
        throw DimensionMismatch("\"n\" disagrees with the point dimension");
    return config;
}

Json config_json(const ObjectConfig& config)
{
    Json doc = schema_document();
    doc["m"] = config.m();
    doc["n"] = config.n();
    Json pts = Json::array();
    for (const auto& p : config.points()) pts.push_back(rational_vector_json(p));
    doc["points"] = std::move(pts);
    return doc;
}

ObjectConfig read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open configuration file " + path);
    try {
        return config_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw Error("malformed configuration file " + path + ": " + e.what());
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\r\n";
}

std::string bounds_csv(const std::vector<BoundsRow>& rows)
{
    std::string out = csv_line({"m", "r0", "a", "ell", "u", "f"});
    for (const auto& r : rows) out += csv_line({std::to_string(r.m), r.r0_cell, r.a_cell, r.ell_cell, r.u_cell, r.f_cell});
    return out;
}

}  // namespace rank_arrange
