#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapped/gapped_module.hpp"
#include "gapped/slope.hpp"

namespace gapped {

// Basis element of the model ring Lambda(a) (x) Z2[u]: u^k or a*u^k.
struct SHModelClass {
    bool has_a = false;
    int k = 0;

    int degree(int n) const { return k * (n - 1) + (has_a ? 0 : n); }
    std::string label() const;

    friend bool operator==(const SHModelClass& x, const SHModelClass& y) {
        return x.has_a == y.has_a && x.k == y.k;
    }
};

inline SHModelClass unit_class() { return {false, 0}; }
inline SHModelClass a_class() { return {true, 0}; }

// Product table u^k * u^l = u^{k+l}, (a u^k) * (u^l) = a u^{k+l},
// (a u^k) * (a u^l) = 0; degrees shift by -n.
std::optional<SHModelClass> sh_product(const SHModelClass& x, const SHModelClass& y);

// One graded slice of the cosphere-bundle directed system: slopes 2*pi*m + eps
// for 0 <= m <= m_max, dimensions from the Floer group table, colimit the
// degree slice of the model ring.
struct CosphereModel {
    int n = 3;
    int m_max = 0;
    int degree = 0;
    Rational eps;
    GappedModule<TwoPiSlope> module;
    std::vector<SHModelClass> colimit_basis;
};

// Number of generators of the degree-k group at slope 2*pi*m + eps.
int cosphere_hf_dim(int n, int m, int degree);

CosphereModel build_cosphere_model(int n, int m_max, int degree,
                                   Rational eps = Rational(1, 100));

// Coordinate vector of a model class in the colimit basis of its slice.
std::vector<uint8_t> class_vector(const CosphereModel& model, const SHModelClass& cls);

struct ContactValue {
    bool witnessed = false;
    TwoPiSlope value{};
};

// c(h, theta) for a constant contact function h: the spectral invariant of
// the slope-translated system, with the sampling infinitesimal dropped so
// reported values land exactly on h + 2*pi*Z.
ContactValue contact_spectral_invariant(const CosphereModel& model, const Rational& h,
                                        const SHModelClass& theta);

struct AxiomRow {
    Rational h;
    SHModelClass theta;
    bool witnessed = false;
    TwoPiSlope value{};
};

struct TriangleRow {
    Rational h, g;
    SHModelClass theta1, theta2;
    bool product_zero = false;
    bool witnessed = false;
    TwoPiSlope lhs{}, rhs{};
    int comparison = 0;  // -1: lhs < rhs, 0: equal, +1: lhs > rhs
};

struct AxiomReport {
    std::vector<AxiomRow> values;
    bool spectrality = true;   // c(h,.) - h in 2*pi*Z
    bool shift = true;         // c(h,.) = h + c(0,.)
    bool monotonicity = true;  // h <= g implies c(h,.) <= c(g,.)
    bool stability = true;     // c(h,.) - c(g,.) = h - g
    bool descent = true;       // equal constants give equal values
    std::vector<TriangleRow> triangle;  // evaluated, reported, never asserted

    bool axioms_pass() const {
        return spectrality && shift && monotonicity && stability && descent;
    }
    std::string to_text() const;
};

AxiomReport spectral_axiom_report(int n, int m_max, const std::vector<Rational>& constants,
                                  const std::vector<SHModelClass>& classes);

// Directed system together with a source space mapping into every slot,
// modelling the relative-homology cone.
struct SourcedGapped {
    GappedModule<TwoPiSlope> module;
    int source_dim = 0;
    std::vector<FpMatrix> source_maps;  // one per index, source -> V_t
    Rational eps;
};

Validation validate_sourced(const SourcedGapped& sg);

// sigma(h, theta): minus the first admissible slope at which theta dies into
// the system, for constant h; the infinitesimal is dropped as for c.
ContactValue anti_spectral_invariant(const SourcedGapped& sg, const Rational& h,
                                     const std::vector<uint8_t>& theta);

struct QuasiStateTrace {
    std::vector<Rational> terms;  // c(k*h, e)/k for k = 1..K
    Rational zeta;
};

QuasiStateTrace quasi_state_estimate(const CosphereModel& model, const Rational& h, int K);

struct QuasiMeasureCandidate {
    std::string name;
    Rational zeta;
    bool one_on_set = false;
};

struct QuasiMeasureValue {
    bool unconstrained = false;
    Rational tau;
};

QuasiMeasureValue quasi_measure_eval(const std::vector<QuasiMeasureCandidate>& candidates);

template <class S>
struct EternalResult {
    bool eternal = false;
    bool has_threshold = false;
    S threshold{};
};

// Window-relative eternity: a class in the image at every sampled slope is
// eternal within the window, unless the system is known trivial below the
// window, in which case the first slope is a genuine appearance threshold.
template <class S>
EternalResult<S> eternal_check(const GappedModule<S>& g, const std::vector<uint8_t>& a) {
    if (!g.has_colimit()) throw std::invalid_argument("eternal check: module has no colimit");
    if (static_cast<int>(a.size()) != g.colimit_dim)
        throw std::invalid_argument("eternal check: class length mismatch");
    if (is_zero_vec(a)) return {true, false, S{}};
    int first = -1;
    bool everywhere = true;
    for (int i = 0; i < g.size(); ++i) {
        bool in = membership(a, g.colimit_maps[i]).has_value();
        everywhere = everywhere && in;
        if (in && first < 0) first = i;
    }
    if (first < 0) return {false, false, S{}};
    if (everywhere && !g.window_is_initial) return {true, false, S{}};
    return {false, true, g.indices[first]};
}

}  // namespace gapped
