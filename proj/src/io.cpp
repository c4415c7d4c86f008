#include "gapped/io.hpp"

#include <fstream>

#include "json.hpp"

namespace gapped {

namespace {

using nlohmann::json;

Rational scalar_from_json(const json& j, const Rational*) {
    if (!j.is_string()) throw ParseError("rational values must be strings like \"3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
}

TwoPiSlope scalar_from_json(const json& j, const TwoPiSlope*) {
    if (!j.is_object() || !j.contains("two_pi") || !j.contains("const"))
        throw ParseError("slope values must be objects with \"two_pi\" and \"const\"");
    try {
        return TwoPiSlope(parse_rational(j.at("two_pi").get<std::string>()),
                          parse_rational(j.at("const").get<std::string>()));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
}

json scalar_to_json(const Rational& r) { return format(r); }

json scalar_to_json(const TwoPiSlope& s) {
    return json{{"two_pi", format(s.two_pi)}, {"const", format(s.rest)}};
}

template <class S>
const char* scalar_name();
template <>
const char* scalar_name<Rational>() { return "rational"; }
template <>
const char* scalar_name<TwoPiSlope>() { return "two_pi"; }

// rows and cols pinned by the caller so degenerate shapes stay unambiguous
FpMatrix matrix_from_json(const json& j, int p, int rows, int cols) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    if (static_cast<int>(j.size()) != rows) throw ParseError("matrix row count mismatch");
    FpMatrix m(p, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix column count mismatch");
        for (int c = 0; c < cols; ++c) {
            if (!row[c].is_number_integer()) throw ParseError("matrix entries must be integers");
            long long v = row[c].get<long long>();
            m.at(i, c) = static_cast<uint8_t>(((v % p) + p) % p);
        }
    }
    return m;
}

// shape read off the arrays; only certificates use this form
FpMatrix matrix_from_json_freeform(const json& j, int p) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    int rows = static_cast<int>(j.size());
    int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
    return matrix_from_json(j, p, rows, cols);
}

json matrix_to_json(const FpMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(static_cast<int>(m.at(i, c)));
        rows.push_back(row);
    }
    return rows;
}

int prime_from_json(const json& payload) {
    if (!payload.contains("p") || !payload.at("p").is_number_integer())
        throw ParseError("payload needs an integer field \"p\"");
    int p = payload.at("p").get<int>();
    if (!is_prime(p) || p > 251) throw ParseError("p must be a prime at most 251");
    return p;
}

template <class S>
PersistenceModule<S> persistence_from_json(const json& payload) {
    PersistenceModule<S> m;
    m.p = prime_from_json(payload);
    for (const auto& j : payload.at("indices"))
        m.points.push_back(scalar_from_json(j, static_cast<S*>(nullptr)));
    for (const auto& j : payload.at("dims")) m.dims.push_back(j.get<int>());
    const json& steps = payload.at("steps");
    if (static_cast<int>(steps.size()) != std::max<int>(0, m.size() - 1))
        throw ParseError("steps length mismatch");
    for (int i = 0; i + 1 < m.size(); ++i)
        m.steps.push_back(matrix_from_json(steps[i], m.p, m.dims[i + 1], m.dims[i]));
    if (payload.contains("colimit")) {
        const json& c = payload.at("colimit");
        m.colimit_dim = c.at("dim").get<int>();
        if (m.size() == 0) throw ParseError("colimit requires at least one index");
        m.colimit_map = matrix_from_json(c.at("map"), m.p, m.colimit_dim, m.dims.back());
    }
    return m;
}

template <class S>
json persistence_to_json(const PersistenceModule<S>& m) {
    json payload;
    payload["scalar"] = scalar_name<S>();
    payload["p"] = m.p;
    json idx = json::array();
    for (const auto& t : m.points) idx.push_back(scalar_to_json(t));
    payload["indices"] = idx;
    payload["dims"] = m.dims;
    json steps = json::array();
    for (const auto& s : m.steps) steps.push_back(matrix_to_json(s));
    payload["steps"] = steps;
    if (m.has_colimit())
        payload["colimit"] = json{{"dim", m.colimit_dim}, {"map", matrix_to_json(m.colimit_map)}};
    return payload;
}

template <class S>
GappedModule<S> gapped_from_json(const json& payload) {
    GappedModule<S> g;
    g.p = prime_from_json(payload);
    g.gap = scalar_from_json(payload.at("gap"), static_cast<S*>(nullptr));
    for (const auto& j : payload.at("indices"))
        g.indices.push_back(scalar_from_json(j, static_cast<S*>(nullptr)));
    for (const auto& j : payload.at("dims")) g.dims.push_back(j.get<int>());
    if (static_cast<int>(g.dims.size()) != g.size()) throw ParseError("dims length mismatch");
    for (const auto& e : payload.at("maps")) {
        int from = e.at("from").get<int>();
        int to = e.at("to").get<int>();
        if (from < 0 || to < 0 || from >= g.size() || to >= g.size())
            throw ParseError("map endpoint out of range");
        g.maps[{from, to}] = matrix_from_json(e.at("matrix"), g.p, g.dims[to], g.dims[from]);
    }
    if (payload.contains("colimit")) {
        const json& c = payload.at("colimit");
        g.colimit_dim = c.at("dim").get<int>();
        const json& maps = c.at("maps");
        if (static_cast<int>(maps.size()) != g.size())
            throw ParseError("colimit maps length mismatch");
        for (int i = 0; i < g.size(); ++i)
            g.colimit_maps.push_back(matrix_from_json(maps[i], g.p, g.colimit_dim, g.dims[i]));
    }
    if (payload.contains("window_is_initial"))
        g.window_is_initial = payload.at("window_is_initial").get<bool>();
    return g;
}

template <class S>
json gapped_to_json(const GappedModule<S>& g) {
    json payload;
    payload["scalar"] = scalar_name<S>();
    payload["p"] = g.p;
    payload["gap"] = scalar_to_json(g.gap);
    json idx = json::array();
    for (const auto& t : g.indices) idx.push_back(scalar_to_json(t));
    payload["indices"] = idx;
    payload["dims"] = g.dims;
    json maps = json::array();
    for (const auto& [key, m] : g.maps)
        maps.push_back(json{{"from", key.first}, {"to", key.second}, {"matrix", matrix_to_json(m)}});
    payload["maps"] = maps;
    if (g.has_colimit()) {
        json cmaps = json::array();
        for (const auto& m : g.colimit_maps) cmaps.push_back(matrix_to_json(m));
        payload["colimit"] = json{{"dim", g.colimit_dim}, {"maps", cmaps}};
    }
    payload["window_is_initial"] = g.window_is_initial;
    return payload;
}

template <class S>
Barcode<S> barcode_from_json(const json& payload) {
    Barcode<S> b;
    for (const auto& e : payload.at("bars")) {
        Bar<S> bar;
        bar.birth = scalar_from_json(e.at("birth"), static_cast<S*>(nullptr));
        const json& death = e.at("death");
        if (death.is_string() && death.get<std::string>() == "inf") {
            bar.infinite = true;
        } else {
            bar.death = scalar_from_json(death, static_cast<S*>(nullptr));
            if (bar.death < bar.birth) throw DomainError("bar dies before it is born");
        }
        int mult = e.contains("mult") ? e.at("mult").get<int>() : 1;
        if (mult < 0) throw DomainError("negative bar multiplicity");
        for (int c = 0; c < mult; ++c) b.bars.push_back(bar);
    }
    b.canonicalize();
    return b;
}

template <class S>
json barcode_to_json(const Barcode<S>& bc) {
    Barcode<S> b = bc;
    b.canonicalize();
    json bars = json::array();
    size_t i = 0;
    while (i < b.bars.size()) {
        size_t j = i;
        while (j < b.bars.size() && b.bars[j] == b.bars[i]) ++j;
        json e;
        e["birth"] = scalar_to_json(b.bars[i].birth);
        e["death"] = b.bars[i].infinite ? json("inf") : scalar_to_json(b.bars[i].death);
        e["mult"] = static_cast<int>(j - i);
        bars.push_back(e);
        i = j;
    }
    json payload;
    payload["scalar"] = scalar_name<S>();
    payload["bars"] = bars;
    return payload;
}

template <class S>
CertificateDoc<S> certificate_from_json(const json& payload) {
    CertificateDoc<S> doc;
    doc.p = prime_from_json(payload);
    const json& r = payload.at("restriction");
    doc.cert.restriction.offset = scalar_from_json(r.at("offset"), static_cast<S*>(nullptr));
    doc.cert.restriction.step = scalar_from_json(r.at("step"), static_cast<S*>(nullptr));
    doc.cert.restriction.i_min = r.at("i_min").get<long long>();
    doc.cert.restriction.i_max = r.at("i_max").get<long long>();
    for (const auto& m : payload.at("phi"))
        doc.cert.phi.push_back(matrix_from_json_freeform(m, doc.p));
    for (const auto& m : payload.at("psi"))
        doc.cert.psi.push_back(matrix_from_json_freeform(m, doc.p));
    return doc;
}

template <class S>
json certificate_to_json(const CertificateDoc<S>& doc) {
    json payload;
    payload["scalar"] = scalar_name<S>();
    payload["p"] = doc.p;
    payload["restriction"] = json{{"offset", scalar_to_json(doc.cert.restriction.offset)},
                                  {"step", scalar_to_json(doc.cert.restriction.step)},
                                  {"i_min", doc.cert.restriction.i_min},
                                  {"i_max", doc.cert.restriction.i_max}};
    json phi = json::array(), psi = json::array();
    for (const auto& m : doc.cert.phi) phi.push_back(matrix_to_json(m));
    for (const auto& m : doc.cert.psi) psi.push_back(matrix_to_json(m));
    payload["phi"] = phi;
    payload["psi"] = psi;
    return payload;
}

template <class S>
Document typed_document(const std::string& kind, const json& payload) {
    if (kind == "persistence_module") {
        auto m = persistence_from_json<S>(payload);
        Validation v = validate(m);
        if (!v.ok) throw DomainError("invalid persistence module: " + v.message);
        return {kind, m};
    }
    if (kind == "gapped_module") {
        auto g = gapped_from_json<S>(payload);
        Validation v = validate_gapped(g);
        if (!v.ok) throw DomainError("invalid gapped module: " + v.message);
        return {kind, g};
    }
    if (kind == "barcode") return {kind, barcode_from_json<S>(payload)};
    return {kind, certificate_from_json<S>(payload)};
}

}  // namespace

Document parse_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    try {
        if (!doc.is_object()) throw ParseError("document must be a JSON object");
        if (!doc.contains("schema_version"))
            throw ParseError("document is missing \"schema_version\"");
        std::string version = doc.at("schema_version").get<std::string>();
        if (version != kSchemaVersion)
            throw ParseError("unsupported schema version '" + version + "', this build reads '" +
                             kSchemaVersion + "'");
        std::string kind = doc.at("kind").get<std::string>();
        const json& payload = doc.at("payload");
        if (kind == "cosphere_request") {
            CosphereRequest req;
            req.n = payload.at("n").get<int>();
            req.m_max = payload.at("m_max").get<int>();
            req.degree = payload.at("degree").get<int>();
            return {kind, req};
        }
        if (kind != "persistence_module" && kind != "gapped_module" && kind != "barcode" &&
            kind != "certificate")
            throw ParseError("unknown document kind '" + kind + "'");
        std::string scalar = payload.at("scalar").get<std::string>();
        if (scalar == "rational") return typed_document<Rational>(kind, payload);
        if (scalar == "two_pi") return typed_document<TwoPiSlope>(kind, payload);
        throw ParseError("unknown scalar type '" + scalar + "'");
    } catch (const ParseError&) {
        throw;
    } catch (const DomainError&) {
        throw;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

std::string save_document(const Document& doc) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = doc.kind;
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, PersistenceModule<Rational>> ||
                          std::is_same_v<T, PersistenceModule<TwoPiSlope>>)
                out["payload"] = persistence_to_json(payload);
            else if constexpr (std::is_same_v<T, GappedModule<Rational>> ||
                               std::is_same_v<T, GappedModule<TwoPiSlope>>)
                out["payload"] = gapped_to_json(payload);
            else if constexpr (std::is_same_v<T, Barcode<Rational>> ||
                               std::is_same_v<T, Barcode<TwoPiSlope>>)
                out["payload"] = barcode_to_json(payload);
            else if constexpr (std::is_same_v<T, CertificateDoc<Rational>> ||
                               std::is_same_v<T, CertificateDoc<TwoPiSlope>>)
                out["payload"] = certificate_to_json(payload);
            else
                out["payload"] = json{{"n", payload.n}, {"m_max", payload.m_max},
                                      {"degree", payload.degree}};
        },
        doc.payload);
    return out.dump(2) + "\n";
}

void write_document(const Document& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << save_document(doc);
}

}  // namespace gapped
