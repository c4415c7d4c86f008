#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "gapped/contact.hpp"
#include "gapped/gapped_module.hpp"
#include "gapped/persistence.hpp"

namespace gapped {

// Input problems: missing files, malformed JSON, bad scalars, bad envelopes.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input describing an invalid or unusable object.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CosphereRequest {
    int n = 3;
    int m_max = 0;
    int degree = 0;
};

template <class S>
struct CertificateDoc {
    int p = 2;
    InterleavingCertificate<S> cert;
};

using DocPayload =
    std::variant<PersistenceModule<Rational>, PersistenceModule<TwoPiSlope>,
                 GappedModule<Rational>, GappedModule<TwoPiSlope>, Barcode<Rational>,
                 Barcode<TwoPiSlope>, CertificateDoc<Rational>, CertificateDoc<TwoPiSlope>,
                 CosphereRequest>;

struct Document {
    std::string kind;
    DocPayload payload;
};

inline constexpr const char* kSchemaVersion = "gapped/1";

// Parses, type-checks and validates; loaded modules are already valid.
Document parse_document(const std::string& text);
Document load_document(const std::string& path);
// Canonical serialization; loading and saving canonical input is the identity.
std::string save_document(const Document& doc);
void write_document(const Document& doc, const std::string& path);

// One bar per line, "birth death mult", sorted by (birth, death); equal bars
// collapse into one line with their multiplicity.
template <class S>
std::string render_barcode_text(const Barcode<S>& bc) {
    Barcode<S> b = bc;
    b.canonicalize();
    std::ostringstream os;
    size_t i = 0;
    while (i < b.bars.size()) {
        size_t j = i;
        while (j < b.bars.size() && b.bars[j] == b.bars[i]) ++j;
        os << format(b.bars[i].birth) << " "
           << (b.bars[i].infinite ? std::string("inf") : format(b.bars[i].death)) << " "
           << (j - i) << "\n";
        i = j;
    }
    return os.str();
}

namespace detail {

inline std::string svg_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

// One horizontal segment per bar (multiplicity expanded into rows);
// infinite bars end in an arrow head at the right margin.
template <class S>
std::string render_barcode_svg(const Barcode<S>& bc) {
    Barcode<S> b = bc;
    b.canonicalize();
    double lo = 0.0, hi = 1.0;
    bool any = false;
    for (const auto& bar : b.bars) {
        double x0 = to_double(bar.birth);
        double x1 = bar.infinite ? x0 : to_double(bar.death);
        if (!any) { lo = x0; hi = x1; any = true; }
        if (x0 < lo) lo = x0;
        if (x1 > hi) hi = x1;
    }
    if (hi - lo < 1.0) hi = lo + 1.0;
    const double margin = 20.0, row = 14.0, scale = 360.0 / (hi - lo);
    const double arrow = 30.0;
    double width = 2 * margin + (hi - lo) * scale + arrow;
    double height = 2 * margin + row * static_cast<double>(b.bars.size());
    auto x_of = [&](double v) { return margin + (v - lo) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::svg_num(width)
       << "\" height=\"" << detail::svg_num(height) << "\" viewBox=\"0 0 "
       << detail::svg_num(width) << " " << detail::svg_num(height) << "\">\n";
    for (size_t i = 0; i < b.bars.size(); ++i) {
        const auto& bar = b.bars[i];
        double y = margin + row * (static_cast<double>(i) + 0.5);
        double x0 = x_of(to_double(bar.birth));
        double x1 = bar.infinite ? margin + (hi - lo) * scale + arrow : x_of(to_double(bar.death));
        os << "  <line x1=\"" << detail::svg_num(x0) << "\" y1=\"" << detail::svg_num(y)
           << "\" x2=\"" << detail::svg_num(x1) << "\" y2=\"" << detail::svg_num(y)
           << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
        if (bar.infinite)
            os << "  <path d=\"M " << detail::svg_num(x1) << " " << detail::svg_num(y) << " l -8 -5 l 0 10 z\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace gapped
