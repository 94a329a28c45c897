#include "morrey/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"

namespace morrey {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    if (!doc.is_object()) throw SchemaError(path + ": top level must be an object");
    return doc;
}

int read_dim(const json& doc, const std::string& path) {
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw SchemaError(path + ": \"dim\" must be an integer");
    const int dim = doc["dim"].get<int>();
    if (dim < 1 || dim > 8) throw SchemaError(path + ": \"dim\" must be in 1..8");
    return dim;
}

double magnitude_of(const json& v, const std::string& path) {
    if (v.is_number()) {
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw SchemaError(path + ": values must be finite");
        return std::abs(x);
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        const double re = v[0].get<double>(), im = v[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw SchemaError(path + ": values must be finite");
        return std::hypot(re, im);
    }
    throw SchemaError(path + ": \"v\" must be a number or an [re, im] pair");
}

FiniteSequence read_finite(const json& doc, int dim, const std::string& path) {
    if (!doc.contains("level") || !doc["level"].is_number_integer())
        throw SchemaError(path + ": finite kind requires an integer \"level\"");
    const int level = doc["level"].get<int>();
    if (level < 0 || level * dim > 26)
        throw SchemaError(path + ": \"level\" out of range");
    if (!doc.contains("values") || !doc["values"].is_array())
        throw SchemaError(path + ": finite kind requires a \"values\" array");
    const auto& values = doc["values"];
    const std::size_t expected = std::size_t{1} << (std::size_t(level) * dim);
    if (values.size() != expected)
        throw SchemaError(path + ": \"values\" must hold 2^(level*dim) numbers");
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& v : values) out.push_back(magnitude_of(v, path));
    return FiniteSequence(dim, level, std::move(out));
}

SupportedSequence read_supported(const json& doc, int dim, const std::string& path) {
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw SchemaError(path + ": supported kind requires an \"entries\" array");
    SupportedSequence seq(dim);
    std::set<Lattice> seen;
    for (const auto& entry : doc["entries"]) {
        if (!entry.is_object() || !entry.contains("k") || !entry.contains("v") ||
            !entry["k"].is_array() || entry["k"].size() != std::size_t(dim))
            throw SchemaError(path + ": each entry needs \"k\" of length dim and \"v\"");
        Lattice k;
        for (const auto& c : entry["k"]) {
            if (!c.is_number_integer()) throw SchemaError(path + ": coordinates must be integers");
            k.push_back(c.get<std::int64_t>());
        }
        if (!seen.insert(k).second) throw SchemaError(path + ": duplicate coordinate in entries");
        seq.set(k, magnitude_of(entry["v"], path));
    }
    return seq;
}

void dump_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << doc.dump(1, ' ') << "\n";
}

} // namespace

AnySequence read_sequence_file(const std::string& path) {
    const json doc = parse_file(path);
    const int dim = read_dim(doc, path);
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw SchemaError(path + ": \"kind\" must be \"finite\" or \"supported\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "finite") return read_finite(doc, dim, path);
    if (kind == "supported") return read_supported(doc, dim, path);
    throw SchemaError(path + ": \"kind\" must be \"finite\" or \"supported\"");
}

void write_sequence_file(const std::string& path, const FiniteSequence& seq) {
    json doc;
    doc["dim"] = seq.dim();
    doc["kind"] = "finite";
    doc["level"] = seq.level();
    doc["values"] = std::vector<double>(seq.values().begin(), seq.values().end());
    dump_file(path, doc);
}

void write_sequence_file(const std::string& path, const SupportedSequence& seq) {
    json doc;
    doc["dim"] = seq.dim();
    doc["kind"] = "supported";
    json entries = json::array();
    for (const auto& [k, v] : seq.entries()) entries.push_back(json{{"k", k}, {"v", v}});
    doc["entries"] = std::move(entries);
    dump_file(path, doc);
}

void write_signed_sequence_file(const std::string& path, int dim,
                                const std::vector<std::pair<Lattice, double>>& entries) {
    json doc;
    doc["dim"] = dim;
    doc["kind"] = "supported";
    json list = json::array();
    for (const auto& [k, v] : entries) {
        if (k.size() != std::size_t(dim))
            throw std::invalid_argument("entry dimension mismatch");
        list.push_back(json{{"k", k}, {"v", v}});
    }
    doc["entries"] = std::move(list);
    dump_file(path, doc);
}

SupportedSequence as_supported(const AnySequence& seq) {
    if (const auto* fin = std::get_if<FiniteSequence>(&seq)) return to_supported(*fin);
    return std::get<SupportedSequence>(seq);
}

} // namespace morrey
