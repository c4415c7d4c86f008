#include "gapped/contact.hpp"

#include <map>
#include <sstream>

namespace gapped {

std::string SHModelClass::label() const {
    if (!has_a && k == 0) return "e";
    std::string base = has_a ? "a" : "";
    if (k == 0) return base;
    std::string u = "u^" + std::to_string(k);
    if (k == 1) u = "u";
    return base.empty() ? u : base + "*" + u;
}

std::optional<SHModelClass> sh_product(const SHModelClass& x, const SHModelClass& y) {
    if (x.has_a && y.has_a) return std::nullopt;
    return SHModelClass{x.has_a || y.has_a, x.k + y.k};
}

namespace {

// Exponent l with l*(n-1) + (u-type ? n : 0) = degree, if admissible.
std::optional<int> exponent_for(int n, int degree, bool a_type) {
    int target = degree - (a_type ? 0 : n);
    if (target < 0 || target % (n - 1) != 0) return std::nullopt;
    return target / (n - 1);
}

}  // namespace

int cosphere_hf_dim(int n, int m, int degree) {
    int count = 0;
    for (bool a_type : {false, true}) {
        auto l = exponent_for(n, degree, a_type);
        if (l && *l <= 2 * m) ++count;
    }
    return count;
}

CosphereModel build_cosphere_model(int n, int m_max, int degree, Rational eps) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("cosphere: n must be odd and at least 3");
    if (m_max < 0) throw std::invalid_argument("cosphere: m_max must be nonnegative");
    if (!(Rational(0) < eps)) throw std::invalid_argument("cosphere: eps must be positive");

    CosphereModel model;
    model.n = n;
    model.m_max = m_max;
    model.degree = degree;
    model.eps = eps;

    // colimit basis: classes of this degree, u-type first
    for (bool a_type : {false, true}) {
        auto l = exponent_for(n, degree, a_type);
        if (l) model.colimit_basis.push_back(SHModelClass{a_type, *l});
    }

    GappedModule<TwoPiSlope>& g = model.module;
    g.p = 2;
    g.gap = TwoPiSlope(Rational(1), Rational(0));
    g.window_is_initial = true;
    g.colimit_dim = static_cast<int>(model.colimit_basis.size());

    // generator list per slope: the colimit classes already born by slope m
    auto born = [&](int m) {
        std::vector<int> idx;
        for (size_t c = 0; c < model.colimit_basis.size(); ++c)
            if (model.colimit_basis[c].k <= 2 * m) idx.push_back(static_cast<int>(c));
        return idx;
    };

    for (int m = 0; m <= m_max; ++m) {
        g.indices.push_back(TwoPiSlope(Rational(m), eps));
        g.dims.push_back(static_cast<int>(born(m).size()));
        if (g.dims.back() != cosphere_hf_dim(n, m, degree))
            throw std::logic_error("cosphere: dimension table mismatch");
    }
    for (int i = 0; i <= m_max; ++i) {
        std::vector<int> bi = born(i);
        for (int j = i + 1; j <= m_max; ++j) {
            std::vector<int> bj = born(j);
            FpMatrix map(2, static_cast<int>(bj.size()), static_cast<int>(bi.size()));
            for (size_t c = 0; c < bi.size(); ++c)
                for (size_t r = 0; r < bj.size(); ++r)
                    if (bj[r] == bi[c]) map.at(static_cast<int>(r), static_cast<int>(c)) = 1;
            g.maps[{i, j}] = map;
        }
        FpMatrix pi(2, g.colimit_dim, static_cast<int>(bi.size()));
        for (size_t c = 0; c < bi.size(); ++c) pi.at(bi[c], static_cast<int>(c)) = 1;
        g.colimit_maps.push_back(pi);
    }
    require_valid_gapped(g);
    return model;
}

std::vector<uint8_t> class_vector(const CosphereModel& model, const SHModelClass& cls) {
    std::vector<uint8_t> v(model.colimit_basis.size(), 0);
    for (size_t c = 0; c < model.colimit_basis.size(); ++c)
        if (model.colimit_basis[c] == cls) {
            v[c] = 1;
            return v;
        }
    throw std::invalid_argument("class " + cls.label() + " does not live in degree " +
                                std::to_string(model.degree));
}

ContactValue contact_spectral_invariant(const CosphereModel& model, const Rational& h,
                                        const SHModelClass& theta) {
    if (theta.degree(model.n) != model.degree)
        throw std::invalid_argument("class " + theta.label() + " has degree " +
                                    std::to_string(theta.degree(model.n)) + ", model slice is " +
                                    std::to_string(model.degree));
    std::vector<uint8_t> a = class_vector(model, theta);
    GappedModule<TwoPiSlope> twisted = translate(model.module, TwoPiSlope(Rational(0), -h));
    GappedSpectralValue<TwoPiSlope> v = gapped_spectral_invariant(twisted, a);
    if (v.kind == GappedSpectralKind::NotWitnessed) return {false, {}};
    if (v.kind != GappedSpectralKind::Finite)
        throw std::logic_error("contact spectral: unexpected infinite value for a basis class");
    // appearances happen at 2*pi*m + eps - h; adding eps back removes the
    // sampling infinitesimal from the report
    return {true, v.value + TwoPiSlope(Rational(0), model.eps)};
}

AxiomReport spectral_axiom_report(int n, int m_max, const std::vector<Rational>& constants,
                                  const std::vector<SHModelClass>& classes) {
    AxiomReport rep;
    std::map<int, CosphereModel> models;
    auto model_for = [&](int degree) -> const CosphereModel& {
        auto it = models.find(degree);
        if (it == models.end())
            it = models.emplace(degree, build_cosphere_model(n, m_max, degree)).first;
        return it->second;
    };
    auto value_of = [&](const Rational& h, const SHModelClass& cls) {
        return contact_spectral_invariant(model_for(cls.degree(n)), h, cls);
    };

    for (const auto& cls : classes)
        for (const auto& h : constants) {
            ContactValue v = value_of(h, cls);
            rep.values.push_back({h, cls, v.witnessed, v.value});
            if (!v.witnessed) continue;
            TwoPiSlope rel = v.value - TwoPiSlope(Rational(0), h);
            if (!(rel.rest == Rational(0)) || rel.two_pi.den != 1) rep.spectrality = false;
        }

    for (const auto& cls : classes) {
        ContactValue base = value_of(Rational(0), cls);
        if (!base.witnessed) continue;
        for (const auto& h : constants) {
            ContactValue v = value_of(h, cls);
            if (!v.witnessed || !(v.value == base.value + TwoPiSlope(Rational(0), h)))
                rep.shift = false;
        }
        for (const auto& h : constants)
            for (const auto& g : constants) {
                ContactValue vh = value_of(h, cls), vg = value_of(g, cls);
                if (!vh.witnessed || !vg.witnessed) continue;
                if (h <= g && vg.value < vh.value) rep.monotonicity = false;
                TwoPiSlope diff = vh.value - vg.value;
                if (!(diff == TwoPiSlope(Rational(0), h - g))) rep.stability = false;
                if (h == g && !(vh.value == vg.value)) rep.descent = false;
            }
    }

    for (const auto& t1 : classes)
        for (const auto& t2 : classes)
            for (const auto& h : constants)
                for (const auto& g : constants) {
                    TriangleRow row;
                    row.h = h;
                    row.g = g;
                    row.theta1 = t1;
                    row.theta2 = t2;
                    auto prod = sh_product(t1, t2);
                    if (!prod) {
                        row.product_zero = true;
                        rep.triangle.push_back(row);
                        continue;
                    }
                    ContactValue lhs = value_of(h + g, *prod);
                    ContactValue v1 = value_of(h, t1), v2 = value_of(g, t2);
                    if (!lhs.witnessed || !v1.witnessed || !v2.witnessed) {
                        rep.triangle.push_back(row);
                        continue;
                    }
                    row.witnessed = true;
                    row.lhs = lhs.value;
                    row.rhs = v1.value + v2.value;
                    row.comparison = row.lhs == row.rhs ? 0 : (row.lhs < row.rhs ? -1 : 1);
                    rep.triangle.push_back(row);
                }
    return rep;
}

std::string AxiomReport::to_text() const {
    std::ostringstream os;
    os << "spectral invariants\n";
    for (const auto& r : values) {
        os << "  c(" << format(r.h) << ", " << r.theta.label() << ") = ";
        os << (r.witnessed ? format(r.value) : std::string("not witnessed in window")) << "\n";
    }
    os << "spectrality " << (spectrality ? "pass" : "FAIL") << "\n";
    os << "shift " << (shift ? "pass" : "FAIL") << "\n";
    os << "monotonicity " << (monotonicity ? "pass" : "FAIL") << "\n";
    os << "stability " << (stability ? "pass" : "FAIL") << "\n";
    os << "descent " << (descent ? "pass" : "FAIL") << "\n";
    os << "triangle inequality (reported, not asserted)\n";
    for (const auto& t : triangle) {
        os << "  h=" << format(t.h) << " g=" << format(t.g) << " theta1=" << t.theta1.label()
           << " theta2=" << t.theta2.label() << ": ";
        if (t.product_zero) {
            os << "product vanishes\n";
            continue;
        }
        if (!t.witnessed) {
            os << "not witnessed in window\n";
            continue;
        }
        os << "lhs=" << format(t.lhs) << " rhs=" << format(t.rhs) << " => ";
        os << (t.comparison < 0 ? "lhs < rhs" : t.comparison == 0 ? "lhs = rhs" : "lhs > rhs")
           << "\n";
    }
    return os.str();
}

Validation validate_sourced(const SourcedGapped& sg) {
    Validation v = validate_gapped(sg.module);
    if (!v.ok) return v;
    const auto& g = sg.module;
    if (sg.source_dim < 0) return {false, "negative source dimension"};
    if (static_cast<int>(sg.source_maps.size()) != g.size())
        return {false, "source maps length mismatch"};
    for (int i = 0; i < g.size(); ++i) {
        const FpMatrix& j = sg.source_maps[i];
        if (j.p != g.p || j.rows != g.dims[i] || j.cols != sg.source_dim)
            return {false, "source map shape mismatch at position " + std::to_string(i)};
    }
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j) {
            if (!g.pair_comparable(i, j)) continue;
            if (compose(g.map_at(i, j), sg.source_maps[i]) != sg.source_maps[j])
                return {false, "source cone incompatibility on pair (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")"};
        }
    return {};
}

ContactValue anti_spectral_invariant(const SourcedGapped& sg, const Rational& h,
                                     const std::vector<uint8_t>& theta) {
    Validation v = validate_sourced(sg);
    if (!v.ok) throw std::invalid_argument("anti spectral: " + v.message);
    if (static_cast<int>(theta.size()) != sg.source_dim)
        throw std::invalid_argument("anti spectral: class length mismatch");
    const auto& g = sg.module;
    for (int i = 0; i < g.size(); ++i) {
        // slope eta = t - h is admissible when eta # h = t > 0
        if (!(TwoPiSlope{} < g.indices[i])) continue;
        if (is_zero_vec(matvec(sg.source_maps[i], theta))) {
            TwoPiSlope sigma = TwoPiSlope(Rational(0), h) - g.indices[i];
            return {true, sigma + TwoPiSlope(Rational(0), sg.eps)};
        }
    }
    return {false, {}};
}

QuasiStateTrace quasi_state_estimate(const CosphereModel& model, const Rational& h, int K) {
    if (K < 1) throw std::invalid_argument("quasi state: K must be at least 1");
    QuasiStateTrace trace;
    for (int k = 1; k <= K; ++k) {
        ContactValue c = contact_spectral_invariant(model, mul_int(h, k), unit_class());
        if (!c.witnessed) throw std::invalid_argument("quasi state: window exhausted at k = " +
                                                      std::to_string(k));
        if (!(c.value.two_pi == Rational(0)))
            throw std::logic_error("quasi state: unit invariant left the rational line");
        trace.terms.push_back(c.value.rest / Rational(k));
    }
    trace.zeta = trace.terms.back();
    return trace;
}

QuasiMeasureValue quasi_measure_eval(const std::vector<QuasiMeasureCandidate>& candidates) {
    if (candidates.empty()) throw std::invalid_argument("quasi measure: empty candidate family");
    QuasiMeasureValue out;
    out.unconstrained = true;
    for (const auto& c : candidates) {
        if (!c.one_on_set) continue;
        if (out.unconstrained || c.zeta < out.tau) out.tau = c.zeta;
        out.unconstrained = false;
    }
    return out;
}

}  // namespace gapped
