#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "gapped/gapped_module.hpp"
#include "gapped/persistence.hpp"
#include "gapped/rational.hpp"

namespace gapped {

// splitmix64; self-contained so seeded runs are identical across platforms.
struct Rng {
    uint64_t state = 0x9e3779b97f4a7c15ULL;

    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    long long range(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
    bool coin() { return next() & 1; }
};

FpMatrix random_matrix(Rng& rng, int p, int rows, int cols);
FpMatrix random_invertible(Rng& rng, int p, int n);

PersistenceModule<Rational> random_persistence_module(Rng& rng, int p, int max_points, int max_dim,
                                                      bool allow_colimit);
Barcode<Rational> random_barcode(Rng& rng, int max_bars);

// Gapped module assembled from planted interval summands and then hidden by
// a change of basis at every slot; ground truth rides along.
struct PlantedGapped {
    GappedModule<Rational> module;
    std::vector<Rational> infinite_births;
    FpMatrix colimit_change;  // plant coordinates -> module colimit coordinates
};

PlantedGapped random_planted_gapped(Rng& rng, const Rational& lambda, int max_window,
                                    bool conjugate);

// delta-interleaved pair with a certificate: either a translate of one module
// or the same module padded with short-lived summands.
template <class S>
struct InterleavedPair {
    GappedModule<S> first, second;
    S delta{};
    InterleavingCertificate<S> cert;
    std::vector<uint8_t> witness_class;  // class in both colimits
    FpMatrix identification;
    S expected_difference{};
};

InterleavedPair<Rational> random_translate_pair(Rng& rng);
InterleavedPair<Rational> random_padding_pair(Rng& rng);

// Exhaustive matching search over all partial bijections; factorial cost,
// usable up to a handful of bars per side.
template <class S>
Distance<S> bottleneck_oracle(const Barcode<S>& x, const Barcode<S>& y) {
    const auto& a = x.bars;
    const auto& b = y.bars;
    std::vector<int> assign(a.size(), -2);
    std::vector<bool> used(b.size(), false);
    std::optional<S> best;

    auto cost_of = [&]() -> std::optional<S> {
        std::optional<S> worst;
        auto bump = [&](const S& v) {
            if (!worst || *worst < v) worst = v;
        };
        for (size_t i = 0; i < a.size(); ++i) {
            if (assign[i] == -1) {
                if (a[i].infinite) return std::nullopt;
                bump(half(a[i].death - a[i].birth));
            } else {
                const auto& bb = b[assign[i]];
                if (a[i].infinite != bb.infinite) return std::nullopt;
                bump(detail::abs_val(a[i].birth - bb.birth));
                if (!a[i].infinite) bump(detail::abs_val(a[i].death - bb.death));
            }
        }
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (b[j].infinite) return std::nullopt;
            bump(half(b[j].death - b[j].birth));
        }
        if (!worst) worst = S{};
        return worst;
    };

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == a.size()) {
            auto c = cost_of();
            if (c && (!best || *c < *best)) best = *c;
            return;
        }
        assign[i] = -1;  // deleted
        rec(i + 1);
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            assign[i] = static_cast<int>(j);
            rec(i + 1);
            used[j] = false;
        }
        assign[i] = -2;
    };
    rec(0);
    if (!best) return {true, S{}};
    return {false, *best};
}

// Spectral invariant through an explicit threshold-adapted basis of the
// colimit, with the class decomposed by exhaustive coefficient search.
template <class S>
SpectralValue<S> flag_basis_spectral_oracle(const PersistenceModule<S>& m,
                                            const std::vector<uint8_t>& a) {
    if (!m.has_colimit()) throw std::invalid_argument("oracle: module has no colimit");
    if (is_zero_vec(a)) return {SpectralKind::MinusInfinity, S{}};
    int dinf = m.colimit_dim;
    FpMatrix basis(m.p, dinf, 0);
    std::vector<std::optional<S>> thresholds;
    for (int i = 0; i < m.size(); ++i) {
        FpMatrix img = image_basis(composite(m, i, m.size()));
        for (int c = 0; c < img.cols; ++c) {
            std::vector<uint8_t> v(dinf);
            for (int r = 0; r < dinf; ++r) v[r] = img.at(r, c);
            if (!membership(v, basis)) {
                FpMatrix col(m.p, dinf, 1);
                for (int r = 0; r < dinf; ++r) col.at(r, 0) = v[r];
                basis = hconcat(basis, col);
                thresholds.push_back(m.points[i]);
            }
        }
    }
    for (int e = 0; e < dinf && basis.cols < dinf; ++e) {
        std::vector<uint8_t> v(dinf, 0);
        v[e] = 1;
        if (!membership(v, basis)) {
            FpMatrix col(m.p, dinf, 1);
            col.at(e, 0) = 1;
            basis = hconcat(basis, col);
            thresholds.push_back(std::nullopt);
        }
    }
    // exhaustive decomposition of a over the adapted basis
    std::vector<uint8_t> coeff(dinf, 0);
    while (true) {
        if (matvec(basis, coeff) == a) break;
        int k = 0;
        while (k < dinf && ++coeff[k] == m.p) coeff[k++] = 0;
        if (k == dinf) throw std::logic_error("oracle: class not expressible in a full basis");
    }
    std::optional<S> latest;
    for (int c = 0; c < dinf; ++c) {
        if (!coeff[c]) continue;
        if (!thresholds[c]) return {SpectralKind::NeverWitnessed, S{}};
        if (!latest || *latest < *thresholds[c]) latest = *thresholds[c];
    }
    if (!latest) return {SpectralKind::MinusInfinity, S{}};
    return {SpectralKind::Finite, *latest};
}

// Barcode of the dual: finite bars reflect through 0, infinite bars keep
// their sign-flipped birth.
template <class S>
Barcode<S> reflect_barcode(const Barcode<S>& b) {
    Barcode<S> out;
    for (const auto& bar : b.bars) {
        if (bar.infinite)
            out.bars.push_back(Bar<S>{-bar.birth, true, S{}});
        else
            out.bars.push_back(Bar<S>{-bar.death, false, -bar.birth});
    }
    out.canonicalize();
    return out;
}

// Seeded randomized property suite; prints one line per section and returns
// overall success. Output is deterministic for a fixed seed and case count.
bool run_property_suite(uint64_t seed, int cases, std::ostream& os);

}  // namespace gapped
