#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gapped/io.hpp"
#include "gapped/suite.hpp"

namespace {

using namespace gapped;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;

std::vector<uint8_t> parse_class_vector(const std::string& text) {
    std::vector<uint8_t> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(static_cast<uint8_t>(std::stoi(cur)));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(static_cast<uint8_t>(std::stoi(cur)));
    return out;
}

template <class S>
S parse_scalar_text(const std::string& text);
template <>
Rational parse_scalar_text<Rational>(const std::string& text) { return parse_rational(text); }
template <>
TwoPiSlope parse_scalar_text<TwoPiSlope>(const std::string& text) { return parse_slope(text); }

template <class S>
int run_barcode(const PersistenceModule<S>& m, const std::string& fmt) {
    Barcode<S> b = barcode(m);
    if (fmt == "svg")
        std::cout << render_barcode_svg(b);
    else
        std::cout << render_barcode_text(b);
    return kExitOk;
}

template <class S>
int run_render(const Barcode<S>& b, const std::string& fmt) {
    if (fmt == "svg")
        std::cout << render_barcode_svg(b);
    else
        std::cout << render_barcode_text(b);
    return kExitOk;
}

template <class S>
Barcode<S> barcode_of_document(const Document& doc) {
    if (std::holds_alternative<Barcode<S>>(doc.payload)) return std::get<Barcode<S>>(doc.payload);
    if (std::holds_alternative<PersistenceModule<S>>(doc.payload))
        return barcode(std::get<PersistenceModule<S>>(doc.payload));
    throw DomainError("document does not carry a barcode or persistence module");
}

template <class S>
int run_bottleneck(const Document& a, const Document& b) {
    Distance<S> d = bottleneck_distance(barcode_of_document<S>(a), barcode_of_document<S>(b));
    std::cout << (d.infinite ? std::string("inf") : format(d.value)) << "\n";
    return kExitOk;
}

template <class S>
int run_spectral(const PersistenceModule<S>& m, const std::string& cls) {
    auto v = spectral_invariant_pm(m, parse_class_vector(cls));
    switch (v.kind) {
        case SpectralKind::Finite: std::cout << format(v.value) << "\n"; return kExitOk;
        case SpectralKind::MinusInfinity: std::cout << "-inf\n"; return kExitOk;
        default: std::cerr << "not witnessed in window\n"; return kExitDomain;
    }
}

template <class S>
int run_gapped_spectral(const GappedModule<S>& g, const std::string& cls) {
    auto v = gapped_spectral_invariant(g, parse_class_vector(cls));
    switch (v.kind) {
        case GappedSpectralKind::Finite: std::cout << format(v.value) << "\n"; return kExitOk;
        case GappedSpectralKind::PlusInfinity: std::cout << "+inf\n"; return kExitOk;
        default: std::cerr << "not witnessed in window\n"; return kExitDomain;
    }
}

template <class S>
int run_restrict(const GappedModule<S>& g, const std::string& step_text,
                 const std::string& offset_text) {
    S step = parse_scalar_text<S>(step_text);
    auto all = enumerate_restrictions(g, step, false);
    auto normalized = enumerate_restrictions(g, step, true);
    const RestrictionSequence<S>* chosen = nullptr;
    if (offset_text.empty()) {
        if (normalized.empty()) throw DomainError("no normalized restriction in window");
        chosen = &normalized.front();
    } else {
        S offset = parse_scalar_text<S>(offset_text);
        for (const auto& r : all)
            if (r.offset == offset) { chosen = &r; break; }
        for (const auto& r : normalized)
            if (!chosen && r.offset == offset) chosen = &r;
        if (!chosen) throw DomainError("no restriction with the requested offset");
    }
    Document out{"persistence_module", restrict_module(g, *chosen)};
    std::cout << save_document(out);
    return kExitOk;
}

template <class S>
int run_dual(const Document& doc) {
    if (std::holds_alternative<PersistenceModule<S>>(doc.payload)) {
        Document out{"persistence_module", dual_module(std::get<PersistenceModule<S>>(doc.payload))};
        std::cout << save_document(out);
        return kExitOk;
    }
    auto d = gapped_dual(std::get<GappedModule<S>>(doc.payload));
    Document out{"gapped_module", d.module};
    std::cout << save_document(out);
    return kExitOk;
}

template <class S>
int run_translate(const Document& doc, const std::string& by) {
    S u = parse_scalar_text<S>(by);
    if (std::holds_alternative<PersistenceModule<S>>(doc.payload)) {
        PersistenceModule<S> m = std::get<PersistenceModule<S>>(doc.payload);
        Document out{"persistence_module", shift_module(m, -u)};
        std::cout << save_document(out);
        return kExitOk;
    }
    Document out{"gapped_module", translate(std::get<GappedModule<S>>(doc.payload), u)};
    std::cout << save_document(out);
    return kExitOk;
}

template <class F>
int with_scalar_of(const Document& doc, F&& f) {
    bool rational = std::holds_alternative<PersistenceModule<Rational>>(doc.payload) ||
                    std::holds_alternative<GappedModule<Rational>>(doc.payload) ||
                    std::holds_alternative<Barcode<Rational>>(doc.payload) ||
                    std::holds_alternative<CertificateDoc<Rational>>(doc.payload);
    if (rational) return f(static_cast<Rational*>(nullptr));
    return f(static_cast<TwoPiSlope*>(nullptr));
}

int dispatch(int argc, char** argv) {
    CLI::App app{"gapped persistence module toolkit"};
    app.require_subcommand(1);

    std::string file, file2, fmt = "text", offset, step, cls, by;
    int n = 3, m_max = 3, degree = 5;
    uint64_t seed = 42;
    int cases = 100;

    auto* c_validate = app.add_subcommand("validate", "validate a document");
    c_validate->add_option("file", file)->required();

    auto* c_barcode = app.add_subcommand("barcode", "barcode of a persistence module");
    c_barcode->add_option("file", file)->required();
    c_barcode->add_option("--format", fmt)->check(CLI::IsMember({"text", "svg"}));

    auto* c_bottle = app.add_subcommand("bottleneck", "bottleneck distance between barcodes");
    c_bottle->add_option("first", file)->required();
    c_bottle->add_option("second", file2)->required();

    auto* c_inter = app.add_subcommand("interleave", "interleaving distance between modules");
    c_inter->add_option("first", file)->required();
    c_inter->add_option("second", file2)->required();

    auto* c_restrict = app.add_subcommand("restrict", "restrict a gapped module to a progression");
    c_restrict->add_option("file", file)->required();
    c_restrict->add_option("--step", step)->required();
    c_restrict->add_option("--offset", offset);

    auto* c_spectral = app.add_subcommand("spectral", "spectral invariant of a persistence module");
    c_spectral->add_option("file", file)->required();
    c_spectral->add_option("--class", cls)->required();

    auto* c_gspectral = app.add_subcommand("gapped-spectral", "spectral invariant of a gapped module");
    c_gspectral->add_option("file", file)->required();
    c_gspectral->add_option("--class", cls)->required();

    auto* c_dual = app.add_subcommand("dual", "dual of a module document");
    c_dual->add_option("file", file)->required();

    auto* c_translate = app.add_subcommand("translate", "translate the parameters of a module");
    c_translate->add_option("file", file)->required();
    c_translate->add_option("--by", by)->required();

    auto* c_contact = app.add_subcommand("contact", "contact model builders");
    auto* c_cosphere = c_contact->add_subcommand("cosphere", "unit cosphere bundle model slice");
    c_cosphere->add_option("--n", n);
    c_cosphere->add_option("--mmax", m_max);
    c_cosphere->add_option("--degree", degree)->required();

    auto* c_axioms = app.add_subcommand("axioms", "spectral invariant axiom report");
    c_axioms->add_option("--n", n);
    c_axioms->add_option("--mmax", m_max);

    auto* c_suite = app.add_subcommand("suite", "seeded randomized property suite");
    c_suite->add_option("--seed", seed);
    c_suite->add_option("--cases", cases);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (c_validate->parsed()) {
        load_document(file);  // loading already validates
        std::cout << "ok\n";
        return kExitOk;
    }
    if (c_barcode->parsed()) {
        Document doc = load_document(file);
        return with_scalar_of(doc, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (std::holds_alternative<Barcode<S>>(doc.payload))
                return run_render(std::get<Barcode<S>>(doc.payload), fmt);
            if (!std::holds_alternative<PersistenceModule<S>>(doc.payload))
                throw DomainError("barcode needs a persistence module or barcode document");
            return run_barcode(std::get<PersistenceModule<S>>(doc.payload), fmt);
        });
    }
    if (c_bottle->parsed()) {
        Document a = load_document(file), b = load_document(file2);
        return with_scalar_of(a, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            return run_bottleneck<S>(a, b);
        });
    }
    if (c_inter->parsed()) {
        Document a = load_document(file), b = load_document(file2);
        return with_scalar_of(a, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (!std::holds_alternative<PersistenceModule<S>>(a.payload) ||
                !std::holds_alternative<PersistenceModule<S>>(b.payload))
                throw DomainError("interleave needs two persistence module documents");
            Distance<S> d = interleaving_distance(std::get<PersistenceModule<S>>(a.payload),
                                                  std::get<PersistenceModule<S>>(b.payload));
            std::cout << (d.infinite ? std::string("inf") : format(d.value)) << "\n";
            return kExitOk;
        });
    }
    if (c_restrict->parsed()) {
        Document doc = load_document(file);
        return with_scalar_of(doc, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (!std::holds_alternative<GappedModule<S>>(doc.payload))
                throw DomainError("restrict needs a gapped module document");
            return run_restrict(std::get<GappedModule<S>>(doc.payload), step, offset);
        });
    }
    if (c_spectral->parsed()) {
        Document doc = load_document(file);
        return with_scalar_of(doc, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (!std::holds_alternative<PersistenceModule<S>>(doc.payload))
                throw DomainError("spectral needs a persistence module document");
            return run_spectral(std::get<PersistenceModule<S>>(doc.payload), cls);
        });
    }
    if (c_gspectral->parsed()) {
        Document doc = load_document(file);
        return with_scalar_of(doc, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (!std::holds_alternative<GappedModule<S>>(doc.payload))
                throw DomainError("gapped-spectral needs a gapped module document");
            return run_gapped_spectral(std::get<GappedModule<S>>(doc.payload), cls);
        });
    }
    if (c_dual->parsed()) {
        Document doc = load_document(file);
        return with_scalar_of(doc, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (!std::holds_alternative<PersistenceModule<S>>(doc.payload) &&
                !std::holds_alternative<GappedModule<S>>(doc.payload))
                throw DomainError("dual needs a module document");
            return run_dual<S>(doc);
        });
    }
    if (c_translate->parsed()) {
        Document doc = load_document(file);
        return with_scalar_of(doc, [&](auto* tag) {
            using S = std::remove_pointer_t<decltype(tag)>;
            if (!std::holds_alternative<PersistenceModule<S>>(doc.payload) &&
                !std::holds_alternative<GappedModule<S>>(doc.payload))
                throw DomainError("translate needs a module document");
            return run_translate<S>(doc, by);
        });
    }
    if (c_cosphere->parsed()) {
        CosphereModel model = build_cosphere_model(n, m_max, degree);
        Document out{"gapped_module", model.module};
        std::cout << save_document(out);
        return kExitOk;
    }
    if (c_axioms->parsed()) {
        std::vector<SHModelClass> classes{unit_class(), a_class(), SHModelClass{false, 1},
                                          SHModelClass{false, 2}, SHModelClass{true, 1}};
        AxiomReport rep = spectral_axiom_report(
            n, m_max, {Rational(-2), Rational(0), Rational(1, 2), Rational(3)}, classes);
        std::cout << rep.to_text();
        return rep.axioms_pass() ? kExitOk : kExitDomain;
    }
    if (c_suite->parsed()) {
        if (const char* env = std::getenv("GAPPED_SEED")) seed = std::strtoull(env, nullptr, 10);
        bool ok = run_property_suite(seed, cases, std::cout);
        return ok ? kExitOk : kExitDomain;
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}
