#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapped/persistence.hpp"

namespace gapped {

// Partial order on parameters: s and t are comparable when s = t or
// s <= t - gap. Parameters closer than the gap are unrelated.
template <class S>
bool comparable(const S& s, const S& t, const S& gap) {
    if (!(S{} < gap)) throw std::invalid_argument("comparable: gap must be positive");
    return s == t || s <= t - gap;
}

// Directed system over a finite sample of a gapped parameter set. Maps are
// stored for every comparable ordered pair of positions; identities at equal
// parameters are implicit. The colimit slot carries one map per index.
template <class S>
struct GappedModule {
    int p = 2;
    S gap{};
    std::vector<S> indices;  // strictly increasing
    std::vector<int> dims;
    std::map<std::pair<int, int>, FpMatrix> maps;  // (i, j) with indices[i] <= indices[j] - gap
    int colimit_dim = -1;
    std::vector<FpMatrix> colimit_maps;  // one per index, into V_inf
    // True when the directed system is known trivial below the sampled
    // window, so first appearances inside the window are genuine thresholds.
    bool window_is_initial = false;

    bool has_colimit() const { return colimit_dim >= 0; }
    int size() const { return static_cast<int>(indices.size()); }

    bool pair_comparable(int i, int j) const {
        return i < j && comparable(indices[i], indices[j], gap);
    }
    const FpMatrix& map_at(int i, int j) const {
        auto it = maps.find({i, j});
        if (it == maps.end()) throw std::invalid_argument("gapped: no map for requested pair");
        return it->second;
    }
};

template <class S>
Validation validate_gapped(const GappedModule<S>& g) {
    int n = g.size();
    if (!(S{} < g.gap)) return {false, "gap must be positive"};
    for (int i = 0; i + 1 < n; ++i)
        if (!(g.indices[i] < g.indices[i + 1]))
            return {false, "indices not strictly increasing at position " + std::to_string(i)};
    if (static_cast<int>(g.dims.size()) != n) return {false, "dims length mismatch"};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool want = g.pair_comparable(i, j);
            bool have = g.maps.count({i, j}) > 0;
            if (want && !have)
                return {false, "missing map for comparable pair (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")"};
            if (!want && have)
                return {false, "map stored for incomparable pair (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")"};
            if (have) {
                const FpMatrix& m = g.maps.at({i, j});
                if (m.p != g.p || m.rows != g.dims[j] || m.cols != g.dims[i])
                    return {false, "map shape mismatch on pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")"};
            }
        }
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) {
            if (!g.pair_comparable(r, s)) continue;
            for (int t = s + 1; t < n; ++t) {
                if (!g.pair_comparable(s, t) || !g.pair_comparable(r, t)) continue;
                if (compose(g.maps.at({s, t}), g.maps.at({r, s})) != g.maps.at({r, t}))
                    return {false, "functoriality fails on triple (" + std::to_string(r) + "," +
                                       std::to_string(s) + "," + std::to_string(t) + ")"};
            }
        }
    if (g.has_colimit()) {
        if (static_cast<int>(g.colimit_maps.size()) != n)
            return {false, "colimit maps length mismatch"};
        for (int i = 0; i < n; ++i) {
            const FpMatrix& m = g.colimit_maps[i];
            if (m.p != g.p || m.rows != g.colimit_dim || m.cols != g.dims[i])
                return {false, "colimit map shape mismatch at position " + std::to_string(i)};
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (!g.pair_comparable(i, j)) continue;
                if (compose(g.colimit_maps[j], g.maps.at({i, j})) != g.colimit_maps[i])
                    return {false, "colimit incompatibility on pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")"};
            }
    } else if (!g.colimit_maps.empty()) {
        return {false, "colimit maps present without colimit dimension"};
    }
    return {};
}

template <class S>
void require_valid_gapped(const GappedModule<S>& g) {
    Validation v = validate_gapped(g);
    if (!v.ok) throw std::invalid_argument("invalid gapped module: " + v.message);
}

// Arithmetic progression offset + i*step sampled on a window of integer
// positions; the anchor offset may itself sit outside the window.
template <class S>
struct RestrictionSequence {
    S offset{};
    S step{};
    long long i_min = 0;
    long long i_max = -1;

    long long length() const { return i_max - i_min + 1; }
    S point(long long i) const { return offset + mul_int(step, i); }
    bool normalized() const { return !(offset < S{}) && offset < step; }
};

// Maximal progressions of the given step inside the sampled index set.
// With normalized_only the anchor is reduced into [0, step); otherwise every
// suffix re-anchoring of each maximal run is listed as well.
template <class S>
std::vector<RestrictionSequence<S>> enumerate_restrictions(const GappedModule<S>& g, const S& step,
                                                           bool normalized_only) {
    if (step < g.gap) throw std::invalid_argument("step below gap");
    std::vector<RestrictionSequence<S>> out;
    int n = g.size();
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        // maximal run of consecutive step-spaced points starting at i
        std::vector<int> run{i};
        used[i] = true;
        int cur = i;
        for (int j = i + 1; j < n; ++j) {
            if (g.indices[j] == g.indices[cur] + step) {
                run.push_back(j);
                used[j] = true;
                cur = j;
            }
        }
        long long k = floor_div(g.indices[i], step);
        S anchor = g.indices[i] - mul_int(step, k);
        RestrictionSequence<S> norm{anchor, step, k, k + static_cast<long long>(run.size()) - 1};
        out.push_back(norm);
        if (!normalized_only) {
            for (size_t s = 0; s < run.size(); ++s) {
                RestrictionSequence<S> re{g.indices[run[s]], step, 0,
                                          static_cast<long long>(run.size() - s) - 1};
                if (!(re.offset == norm.offset)) out.push_back(re);
            }
        }
    }
    return out;
}

template <class S>
std::vector<int> restriction_positions(const GappedModule<S>& g, const RestrictionSequence<S>& r) {
    std::vector<int> pos;
    for (long long i = r.i_min; i <= r.i_max; ++i) {
        S want = r.point(i);
        int found = -1;
        for (int j = 0; j < g.size(); ++j)
            if (g.indices[j] == want) { found = j; break; }
        if (found < 0) throw std::invalid_argument("restriction: progression leaves the index set");
        pos.push_back(found);
    }
    return pos;
}

// Totally ordered slice along a progression, with the colimit inherited.
template <class S>
PersistenceModule<S> restrict_module(const GappedModule<S>& g, const RestrictionSequence<S>& r) {
    std::vector<int> pos = restriction_positions(g, r);
    PersistenceModule<S> m;
    m.p = g.p;
    for (size_t k = 0; k < pos.size(); ++k) {
        m.points.push_back(g.indices[pos[k]]);
        m.dims.push_back(g.dims[pos[k]]);
        if (k + 1 < pos.size()) m.steps.push_back(g.map_at(pos[k], pos[k + 1]));
    }
    if (g.has_colimit() && !pos.empty()) {
        m.colimit_dim = g.colimit_dim;
        m.colimit_map = g.colimit_maps[pos.back()];
    }
    return m;
}

template <class S>
GappedModule<S> translate(const GappedModule<S>& g, const S& u) {
    GappedModule<S> out = g;
    for (auto& t : out.indices) t = t + u;
    return out;
}

enum class GappedSpectralKind { Finite, PlusInfinity, NotWitnessed };

template <class S>
struct GappedSpectralValue {
    GappedSpectralKind kind = GappedSpectralKind::Finite;
    S value{};

    friend bool operator==(const GappedSpectralValue& a, const GappedSpectralValue& b) {
        if (a.kind != b.kind) return false;
        return a.kind != GappedSpectralKind::Finite || a.value == b.value;
    }
};

// Minus the best first-appearance parameter over normalized restrictions.
// The same quantity is recomputed from all (re-anchored) restrictions with
// the anchor offset corrected out, and the two routes must agree.
template <class S>
GappedSpectralValue<S> gapped_spectral_invariant(const GappedModule<S>& g,
                                                 const std::vector<uint8_t>& a) {
    if (!g.has_colimit()) throw std::invalid_argument("gapped spectral: module has no colimit");
    if (static_cast<int>(a.size()) != g.colimit_dim)
        throw std::invalid_argument("gapped spectral: class length mismatch");
    if (is_zero_vec(a)) return {GappedSpectralKind::PlusInfinity, S{}};

    auto normalized = enumerate_restrictions(g, g.gap, true);
    if (normalized.empty()) throw std::invalid_argument("gapped spectral: no normalized restriction in window");

    std::optional<S> best;
    for (const auto& r : normalized) {
        auto v = spectral_invariant_pm(restrict_module(g, r), a);
        if (v.kind != SpectralKind::Finite) continue;
        if (!best || v.value < *best) best = v.value;
    }
    if (!best) return {GappedSpectralKind::NotWitnessed, S{}};

    // generalized form over all restrictions, re-anchored ones included:
    // the appearance is located by window-position arithmetic and mapped
    // back through the anchor, which must reproduce the normalized value
    std::optional<S> best_gen;
    for (const auto& r : enumerate_restrictions(g, g.gap, false)) {
        PersistenceModule<S> m = restrict_module(g, r);
        std::optional<long long> rel;
        for (long long k = 0; k < r.length(); ++k)
            if (membership(a, composite(m, static_cast<int>(k), m.size()))) {
                rel = k;
                break;
            }
        if (!rel) continue;
        S corrected = r.point(r.i_min + *rel);
        if (!best_gen || corrected < *best_gen) best_gen = corrected;
    }
    if (!best_gen || !(*best_gen == *best))
        throw std::logic_error("gapped spectral: generalized form disagrees with normalized form");
    return {GappedSpectralKind::Finite, -*best};
}

// Interleaving morphisms along one delta-spaced progression, one matrix per
// window position in each direction.
template <class S>
struct InterleavingCertificate {
    RestrictionSequence<S> restriction;
    std::vector<FpMatrix> phi;  // phi[k] : V(a)_{i_min+k} -> W(a)_{i_min+k+1}
    std::vector<FpMatrix> psi;  // psi[k] : W(a)_{i_min+k} -> V(a)_{i_min+k+1}
};

struct CertificateCheck {
    bool ok = true;
    std::string witness;
};

// Checks both commuting-triangle families on the window:
//   psi[k+1] . phi[k] = iota_V(k, k+2)  and  phi[k+1] . psi[k] = iota_W(k, k+2).
// delta = 0 is the degenerate self-interleaving by identities.
template <class S>
CertificateCheck verify_interleaving_certificate(const GappedModule<S>& g, const GappedModule<S>& h,
                                                 const S& delta,
                                                 const InterleavingCertificate<S>& cert) {
    if (delta == S{}) {
        if (!(g.indices == h.indices && g.dims == h.dims && g.maps == h.maps))
            return {false, "delta = 0 requires identical modules"};
        for (size_t k = 0; k < cert.phi.size(); ++k)
            if (cert.phi[k] != FpMatrix::identity(g.p, cert.phi[k].cols) ||
                cert.psi[k] != FpMatrix::identity(g.p, cert.psi[k].cols))
                return {false, "delta = 0 requires identity morphisms, position " + std::to_string(k)};
        return {};
    }
    if (g.p != h.p) return {false, "modulus mismatch between modules"};
    if (delta < g.gap || delta < h.gap)
        return {false, "delta below the gap of one module"};
    if (!(cert.restriction.step == delta)) return {false, "certificate step differs from delta"};

    PersistenceModule<S> mv, mw;
    try {
        mv = restrict_module(g, cert.restriction);
        mw = restrict_module(h, cert.restriction);
    } catch (const std::invalid_argument& e) {
        return {false, e.what()};
    }
    long long len = cert.restriction.length();
    if (static_cast<long long>(cert.phi.size()) + 1 != len ||
        static_cast<long long>(cert.psi.size()) + 1 != len)
        return {false, "morphism family length mismatch"};
    for (long long k = 0; k + 1 < len; ++k) {
        const FpMatrix& f = cert.phi[k];
        const FpMatrix& s = cert.psi[k];
        if (f.rows != mw.dims[k + 1] || f.cols != mv.dims[k])
            return {false, "phi shape mismatch at window position " + std::to_string(k)};
        if (s.rows != mv.dims[k + 1] || s.cols != mw.dims[k])
            return {false, "psi shape mismatch at window position " + std::to_string(k)};
    }
    auto two_step = [](const PersistenceModule<S>& m, long long k) {
        return compose(m.steps[k + 1], m.steps[k]);
    };
    for (long long k = 0; k + 2 < len; ++k) {
        if (compose(cert.psi[k + 1], cert.phi[k]) != two_step(mv, k))
            return {false, "triangle psi.phi fails at window position " + std::to_string(k)};
        if (compose(cert.phi[k + 1], cert.psi[k]) != two_step(mw, k))
            return {false, "triangle phi.psi fails at window position " + std::to_string(k)};
    }
    // naturality of the families with respect to the one-step maps
    for (long long k = 0; k + 2 < len; ++k) {
        if (compose(cert.phi[k + 1], mv.steps[k]) != compose(mw.steps[k + 1], cert.phi[k]))
            return {false, "phi naturality fails at window position " + std::to_string(k)};
        if (compose(cert.psi[k + 1], mw.steps[k]) != compose(mv.steps[k + 1], cert.psi[k]))
            return {false, "psi naturality fails at window position " + std::to_string(k)};
    }
    return {};
}

// Canonical certificate between g and its translate by u at delta >= gap + |u|,
// assembled from structure maps.
template <class S>
InterleavingCertificate<S> structure_map_certificate(const GappedModule<S>& g, const S& u,
                                                     const S& delta,
                                                     const RestrictionSequence<S>& r) {
    if (!(r.step == delta)) throw std::invalid_argument("certificate: restriction step must be delta");
    InterleavingCertificate<S> cert;
    cert.restriction = r;
    for (long long k = 0; k + 1 < r.length(); ++k) {
        // phi : V_{a(k)} -> W_{a(k+1)} = V_{a(k+1)-u}
        S from = r.point(r.i_min + k);
        S to = r.point(r.i_min + k + 1) - u;
        int pi = -1, pj = -1;
        for (int q = 0; q < g.size(); ++q) {
            if (g.indices[q] == from) pi = q;
            if (g.indices[q] == to) pj = q;
        }
        if (pi < 0 || pj < 0) throw std::invalid_argument("certificate: translate leaves the window");
        cert.phi.push_back(pi == pj ? FpMatrix::identity(g.p, g.dims[pi]) : g.map_at(pi, pj));
        // psi : W_{a(k)} = V_{a(k)-u} -> V_{a(k+1)}
        S from2 = r.point(r.i_min + k) - u;
        S to2 = r.point(r.i_min + k + 1);
        int qi = -1, qj = -1;
        for (int q = 0; q < g.size(); ++q) {
            if (g.indices[q] == from2) qi = q;
            if (g.indices[q] == to2) qj = q;
        }
        if (qi < 0 || qj < 0) throw std::invalid_argument("certificate: translate leaves the window");
        cert.psi.push_back(qi == qj ? FpMatrix::identity(g.p, g.dims[qi]) : g.map_at(qi, qj));
    }
    return cert;
}

template <class S>
struct RestrictionPairReport {
    RestrictionSequence<S> first, second;
    Distance<S> distance;
    bool within_bound = false;
    long long infinite_bars_first = 0, infinite_bars_second = 0;
    bool counts_match = false;
    bool births_within_bound = false;
};

template <class S>
struct StabilityReport {
    bool pass = true;
    bool vacuous = false;
    std::vector<RestrictionPairReport<S>> pairs;
};

// Pairwise interleaving distances between normalized restrictions, checked
// against the 2*gap bound, plus the infinite-bar count and birth matching.
template <class S>
StabilityReport<S> restriction_stability_report(const GappedModule<S>& g) {
    auto rs = enumerate_restrictions(g, g.gap, true);
    if (rs.empty()) throw std::invalid_argument("stability report: no normalized restriction");
    StabilityReport<S> rep;
    if (rs.size() == 1) {
        rep.vacuous = true;
        return rep;
    }
    S bound = g.gap + g.gap;
    for (size_t x = 0; x < rs.size(); ++x)
        for (size_t y = x + 1; y < rs.size(); ++y) {
            RestrictionPairReport<S> pr;
            pr.first = rs[x];
            pr.second = rs[y];
            Barcode<S> bx = barcode(restrict_module(g, rs[x]));
            Barcode<S> by = barcode(restrict_module(g, rs[y]));
            pr.distance = bottleneck_distance(bx, by);
            pr.within_bound = !pr.distance.infinite && !(bound < pr.distance.value);
            std::vector<S> ix, iy;
            for (const auto& b : bx.bars)
                if (b.infinite) ix.push_back(b.birth);
            for (const auto& b : by.bars)
                if (b.infinite) iy.push_back(b.birth);
            pr.infinite_bars_first = static_cast<long long>(ix.size());
            pr.infinite_bars_second = static_cast<long long>(iy.size());
            pr.counts_match = ix.size() == iy.size();
            pr.births_within_bound = pr.counts_match;
            std::sort(ix.begin(), ix.end());
            std::sort(iy.begin(), iy.end());
            if (pr.counts_match)
                for (size_t k = 0; k < ix.size(); ++k)
                    if (bound < detail::abs_val(ix[k] - iy[k])) pr.births_within_bound = false;
            if (!pr.within_bound || !pr.counts_match || !pr.births_within_bound) rep.pass = false;
            rep.pairs.push_back(std::move(pr));
        }
    return rep;
}

template <class S>
struct GappedDual {
    GappedModule<S> module;
    // Columns: the witnessed threshold-adapted basis of the original colimit,
    // ordered by first appearance.
    FpMatrix adapted_basis;
    // Witnessed classes in original coordinates -> dual colimit coordinates;
    // sends the k-th adapted basis class to the k-th dual coordinate.
    FpMatrix pairing;
};

// Dual gapped module over the negated index set. Kernels of the colimit
// cocone dualize by transposition. The witnessed part of the colimit (the
// running span of the images along the total order) dualizes to its
// annihilator flag in threshold-adapted coordinates, so appearance
// thresholds negate: a class first seen at t reappears in the dual from -t.
template <class S>
GappedDual<S> gapped_dual(const GappedModule<S>& g) {
    require_valid_gapped(g);
    int n = g.size();
    GappedDual<S> out;
    GappedModule<S>& d = out.module;
    d.p = g.p;
    d.gap = g.gap;
    d.window_is_initial = g.window_is_initial;
    d.indices.resize(n);
    for (int i = 0; i < n; ++i) d.indices[i] = -g.indices[n - 1 - i];

    if (!g.has_colimit()) {
        d.dims.resize(n);
        for (int i = 0; i < n; ++i) d.dims[i] = g.dims[n - 1 - i];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (d.pair_comparable(i, j))
                    d.maps[{i, j}] = transpose(g.map_at(n - 1 - j, n - 1 - i));
        out.pairing = FpMatrix(g.p, 0, 0);
        out.adapted_basis = FpMatrix(g.p, 0, 0);
        return out;
    }

    int dinf = g.colimit_dim;
    std::vector<FpMatrix> ker(n), flags(n);
    for (int i = 0; i < n; ++i) ker[i] = kernel_basis(g.colimit_maps[i]);
    // running span of colimit images along the total order
    FpMatrix running(g.p, dinf, 0);
    for (int i = 0; i < n; ++i) {
        running = image_basis(hconcat(running, image_basis(g.colimit_maps[i])));
        flags[i] = running;
    }
    std::vector<int> fdim;
    FpMatrix ew = detail::adapted_flag_basis(g.p, dinf, flags, fdim);
    int fmax = ew.cols;
    auto fprev = [&](int j) {
        int o = n - 2 - j;
        return o < 0 ? 0 : fdim[o];
    };

    d.dims.resize(n);
    for (int j = 0; j < n; ++j) d.dims[j] = ker[n - 1 - j].cols + (fmax - fprev(j));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!d.pair_comparable(i, j)) continue;
            int oi = n - 1 - j, oj = n - 1 - i;  // original positions, oi <= oj - gap
            auto kmap = solve_matrix(ker[oj], compose(g.map_at(oi, oj), ker[oi]));
            if (!kmap) throw std::logic_error("gapped dual: kernel flag not preserved");
            int lo_from = fprev(i), lo_to = fprev(j);
            FpMatrix inc(g.p, fmax - lo_to, fmax - lo_from);
            for (int c = 0; c + lo_from < fmax; ++c) inc.at(lo_from + c - lo_to, c) = 1;
            d.maps[{i, j}] = block_diag(transpose(*kmap), inc);
        }
    d.colimit_dim = fmax;
    d.colimit_maps.resize(n);
    for (int j = 0; j < n; ++j)
        d.colimit_maps[j] = hconcat(FpMatrix::zero(g.p, fmax, ker[n - 1 - j].cols),
                                    detail::selection_above(g.p, fmax, fprev(j)));

    out.adapted_basis = ew;
    // complete the witnessed basis and read adapted coordinates off rows
    FpMatrix full = ew;
    for (int e = 0; e < dinf && full.cols < dinf; ++e) {
        std::vector<uint8_t> v(static_cast<size_t>(dinf), 0);
        v[e] = 1;
        if (!membership(v, full)) {
            FpMatrix col(g.p, dinf, 1);
            col.at(e, 0) = 1;
            full = hconcat(full, col);
        }
    }
    FpMatrix inv = inverse(full);
    FpMatrix proj(g.p, fmax, dinf);
    for (int r = 0; r < fmax; ++r)
        for (int c = 0; c < dinf; ++c) proj.at(r, c) = inv.at(r, c);
    out.pairing = proj;
    return out;
}

// Dual coordinates of a witnessed class; rejects classes with a component
// outside the witnessed span.
template <class S>
std::vector<uint8_t> dual_class(const GappedDual<S>& d, const std::vector<uint8_t>& a) {
    if (d.adapted_basis.cols < d.adapted_basis.rows && !membership(a, d.adapted_basis))
        throw std::invalid_argument("dual pairing: class not witnessed in the window");
    return matvec(d.pairing, a);
}

template <class S>
struct StabilityBoundReport {
    bool asserted = false;  // false when the certificate failed
    std::string detail;
    GappedSpectralValue<S> left, right;
    bool within = false;
};

// |c(a, G) - c(a, H)| <= delta for delta-interleaved modules with a verified
// certificate; delta = 0 forces equality.
template <class S>
StabilityBoundReport<S> stability_bound_check(const GappedModule<S>& g, const GappedModule<S>& h,
                                              const S& delta, const InterleavingCertificate<S>& cert,
                                              const std::vector<uint8_t>& a,
                                              const FpMatrix& identification) {
    StabilityBoundReport<S> rep;
    CertificateCheck chk = verify_interleaving_certificate(g, h, delta, cert);
    if (!chk.ok) {
        rep.detail = "certificate rejected: " + chk.witness;
        return rep;
    }
    rep.asserted = true;
    rep.left = gapped_spectral_invariant(g, a);
    rep.right = gapped_spectral_invariant(h, matvec(identification, a));
    if (rep.left.kind == GappedSpectralKind::Finite && rep.right.kind == GappedSpectralKind::Finite) {
        S diff = detail::abs_val(rep.left.value - rep.right.value);
        rep.within = !(delta < diff);
    } else {
        rep.within = rep.left.kind == rep.right.kind;
    }
    return rep;
}

}  // namespace gapped
