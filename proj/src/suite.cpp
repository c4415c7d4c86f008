#include "gapped/suite.hpp"

#include <algorithm>
#include <set>

namespace gapped {

FpMatrix random_matrix(Rng& rng, int p, int rows, int cols) {
    FpMatrix m(p, rows, cols);
    for (auto& e : m.a) e = static_cast<uint8_t>(rng.below(static_cast<uint64_t>(p)));
    return m;
}

FpMatrix random_invertible(Rng& rng, int p, int n) {
    while (true) {
        FpMatrix m = random_matrix(rng, p, n, n);
        if (rank(m) == n) return m;
    }
}

PersistenceModule<Rational> random_persistence_module(Rng& rng, int p, int max_points, int max_dim,
                                                      bool allow_colimit) {
    PersistenceModule<Rational> m;
    m.p = p;
    int n = static_cast<int>(rng.range(1, max_points));
    std::set<long long> halves;
    while (static_cast<int>(halves.size()) < n) halves.insert(rng.range(-6, 10));
    for (long long h : halves) m.points.push_back(Rational(h, 2));
    for (int i = 0; i < n; ++i) m.dims.push_back(static_cast<int>(rng.range(0, max_dim)));
    for (int i = 0; i + 1 < n; ++i) m.steps.push_back(random_matrix(rng, p, m.dims[i + 1], m.dims[i]));
    if (allow_colimit && rng.coin()) {
        m.colimit_dim = static_cast<int>(rng.range(0, max_dim));
        m.colimit_map = random_matrix(rng, p, m.colimit_dim, m.dims[n - 1]);
    }
    return m;
}

Barcode<Rational> random_barcode(Rng& rng, int max_bars) {
    Barcode<Rational> b;
    int n = static_cast<int>(rng.range(0, max_bars));
    for (int i = 0; i < n; ++i) {
        Rational birth(rng.range(-6, 10), 2);
        if (rng.below(4) == 0) {
            b.bars.push_back(Bar<Rational>{birth, true, {}});
        } else {
            Rational death = birth + Rational(rng.range(0, 8), 2);
            b.bars.push_back(Bar<Rational>{birth, false, death});
        }
    }
    b.canonicalize();
    return b;
}

namespace {

struct Plant {
    int birth_pos;
    int death_pos;  // -1 for infinite
};

struct PlantSpec {
    Rational grid;
    std::vector<Rational> points;
    std::vector<Plant> bars;  // finite first, then infinite
    int n_infinite = 0;
    int extra_colimit = 0;  // coordinates never witnessed in the window
};

bool alive(const Plant& b, int pos) {
    return b.birth_pos <= pos && (b.death_pos < 0 || pos <= b.death_pos);
}

// Materialize interval summands as an honest gapped module: one coordinate
// per bar alive at each slot, structure maps matching shared bars.
GappedModule<Rational> build_from_plants(const PlantSpec& spec, const Rational& lambda) {
    GappedModule<Rational> g;
    g.p = 2;
    g.gap = lambda;
    g.indices = spec.points;
    int n = g.size();
    std::vector<std::vector<int>> alive_at(n);
    for (int i = 0; i < n; ++i)
        for (size_t b = 0; b < spec.bars.size(); ++b)
            if (alive(spec.bars[b], i)) alive_at[i].push_back(static_cast<int>(b));
    for (int i = 0; i < n; ++i) g.dims.push_back(static_cast<int>(alive_at[i].size()));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!g.pair_comparable(i, j)) continue;
            FpMatrix m(2, g.dims[j], g.dims[i]);
            for (size_t c = 0; c < alive_at[i].size(); ++c)
                for (size_t r = 0; r < alive_at[j].size(); ++r)
                    if (alive_at[i][c] == alive_at[j][r])
                        m.at(static_cast<int>(r), static_cast<int>(c)) = 1;
            g.maps[{i, j}] = m;
        }
    int n_finite = static_cast<int>(spec.bars.size()) - spec.n_infinite;
    g.colimit_dim = spec.n_infinite + spec.extra_colimit;
    for (int i = 0; i < n; ++i) {
        FpMatrix pi(2, g.colimit_dim, g.dims[i]);
        for (size_t c = 0; c < alive_at[i].size(); ++c) {
            int bar = alive_at[i][c];
            if (bar >= n_finite) pi.at(bar - n_finite, static_cast<int>(c)) = 1;
        }
        g.colimit_maps.push_back(pi);
    }
    return g;
}

PlantSpec random_plant_spec(Rng& rng, const Rational& lambda, int max_window) {
    PlantSpec spec;
    long long denom = rng.range(1, 2);
    spec.grid = lambda / Rational(denom);
    int len = static_cast<int>(rng.range(3, max_window));
    Rational t0 = mul_int(spec.grid, rng.range(-2, 2));
    for (int k = 0; k < len; ++k) spec.points.push_back(t0 + mul_int(spec.grid, k));

    auto alive_count = [&](int pos) {
        int c = 0;
        for (const auto& b : spec.bars)
            if (alive(b, pos)) ++c;
        return c;
    };
    auto fits = [&](const Plant& b) {
        for (int pos = 0; pos < len; ++pos)
            if (alive(b, pos) && alive_count(pos) >= 3) return false;
        return true;
    };

    int tries_finite = static_cast<int>(rng.range(0, 3));
    for (int t = 0; t < tries_finite; ++t) {
        int bp = static_cast<int>(rng.range(0, len - 1));
        int dp = static_cast<int>(rng.range(bp, len - 1));
        Plant b{bp, dp};
        if (fits(b)) spec.bars.push_back(b);
    }
    // infinite bars only where the birth clears the window end by one gap, so
    // every normalized restriction still sees them
    Rational cutoff = spec.points.back() - lambda;
    int tries_inf = static_cast<int>(rng.range(0, 2));
    for (int t = 0; t < tries_inf; ++t) {
        int bp = static_cast<int>(rng.range(0, len - 1));
        if (cutoff < spec.points[bp]) continue;
        Plant b{bp, -1};
        if (fits(b)) {
            spec.bars.push_back(b);
            ++spec.n_infinite;
        }
    }
    // keep infinite bars at the tail of the list
    std::stable_partition(spec.bars.begin(), spec.bars.end(),
                          [](const Plant& b) { return b.death_pos >= 0; });
    spec.extra_colimit = rng.below(3) == 0 ? 1 : 0;
    return spec;
}

}  // namespace

PlantedGapped random_planted_gapped(Rng& rng, const Rational& lambda, int max_window,
                                    bool conjugate) {
    PlantSpec spec = random_plant_spec(rng, lambda, max_window);
    GappedModule<Rational> g = build_from_plants(spec, lambda);
    PlantedGapped out;
    for (const auto& b : spec.bars)
        if (b.death_pos < 0) out.infinite_births.push_back(spec.points[b.birth_pos]);
    out.colimit_change = FpMatrix::identity(2, g.colimit_dim);
    if (conjugate) {
        int n = g.size();
        std::vector<FpMatrix> p_at(n), p_inv(n);
        for (int i = 0; i < n; ++i) {
            p_at[i] = random_invertible(rng, 2, g.dims[i]);
            p_inv[i] = inverse(p_at[i]);
        }
        FpMatrix q = random_invertible(rng, 2, g.colimit_dim);
        for (auto& [key, m] : g.maps) m = compose(p_at[key.second], compose(m, p_inv[key.first]));
        for (int i = 0; i < n; ++i)
            g.colimit_maps[i] = compose(q, compose(g.colimit_maps[i], p_inv[i]));
        out.colimit_change = q;
    }
    out.module = g;
    return out;
}

InterleavedPair<Rational> random_translate_pair(Rng& rng) {
    // lambda-grid plant, translated by u in {0, lambda}; delta = lambda + u
    Rational lambda(static_cast<long long>(rng.range(1, 2)));
    PlantSpec spec = random_plant_spec(rng, lambda, 8);
    spec.grid = lambda;  // force exact lambda spacing
    spec.points.clear();
    int len = 6;
    Rational t0 = mul_int(lambda, rng.range(-1, 1));
    for (int k = 0; k < len; ++k) spec.points.push_back(t0 + mul_int(lambda, k));
    for (auto& b : spec.bars) {
        b.birth_pos = std::min(b.birth_pos, len - 1);
        if (b.death_pos >= 0) b.death_pos = std::min(std::max(b.death_pos, b.birth_pos), len - 1);
        else if (spec.points.back() - lambda < spec.points[b.birth_pos]) b.birth_pos = 0;
    }
    GappedModule<Rational> g = build_from_plants(spec, lambda);

    InterleavedPair<Rational> pair;
    pair.first = g;
    bool shifted = rng.coin();
    Rational u = shifted ? lambda : Rational(0);
    pair.second = translate(g, u);
    pair.delta = lambda + u;
    pair.expected_difference = u;
    pair.identification = FpMatrix::identity(2, g.colimit_dim);
    if (g.colimit_dim > 0) {
        pair.witness_class.assign(g.colimit_dim, 0);
        pair.witness_class[static_cast<size_t>(rng.below(g.colimit_dim))] = 1;
    }

    if (!shifted) {
        // delta = lambda: the full-grid progression, structure maps both ways
        auto rs = enumerate_restrictions(g, lambda, true);
        pair.cert = structure_map_certificate(g, u, pair.delta, rs.front());
    } else {
        // progression of step 2*lambda inside the overlap of the two windows
        RestrictionSequence<Rational> r;
        r.step = pair.delta;
        Rational start = spec.points[1];  // first point of the overlap
        long long k = floor_div(start, r.step);
        r.offset = start - mul_int(r.step, k);
        r.i_min = k;
        long long count = 0;
        while (true) {
            Rational pt = r.point(r.i_min + count);
            bool in_both = false;
            for (const auto& t : g.indices)
                if (t == pt) in_both = true;
            if (!in_both) break;
            bool in_second = false;
            for (const auto& t : pair.second.indices)
                if (t == pt) in_second = true;
            if (!in_second) break;
            ++count;
        }
        r.i_max = r.i_min + count - 1;
        pair.cert = structure_map_certificate(g, u, pair.delta, r);
    }
    return pair;
}

InterleavedPair<Rational> random_padding_pair(Rng& rng) {
    Rational lambda(static_cast<long long>(rng.range(1, 2)));
    PlantSpec spec = random_plant_spec(rng, lambda, 7);
    spec.grid = lambda;
    spec.points.clear();
    int len = 6;
    for (int k = 0; k < len; ++k) spec.points.push_back(mul_int(lambda, k));
    for (auto& b : spec.bars) {
        b.birth_pos = std::min(b.birth_pos, len - 1);
        if (b.death_pos >= 0) b.death_pos = std::min(std::max(b.death_pos, b.birth_pos), len - 1);
        else if (spec.points.back() - lambda < spec.points[b.birth_pos]) b.birth_pos = 0;
    }
    GappedModule<Rational> g = build_from_plants(spec, lambda);

    // pad with bars alive at most two consecutive slots: they die inside any
    // 2*delta span, so structure maps certify a delta-interleaving
    PlantSpec padded = spec;
    int pads = static_cast<int>(rng.range(1, 2));
    std::vector<Plant> pad_bars;
    for (int t = 0; t < pads; ++t) {
        int bp = static_cast<int>(rng.range(0, len - 2));
        pad_bars.push_back(Plant{bp, bp + static_cast<int>(rng.below(2))});
    }
    int n_fin = static_cast<int>(padded.bars.size()) - padded.n_infinite;
    padded.bars.insert(padded.bars.begin() + n_fin, pad_bars.begin(), pad_bars.end());
    GappedModule<Rational> h = build_from_plants(padded, lambda);

    InterleavedPair<Rational> pair;
    pair.first = g;
    pair.second = h;
    pair.delta = lambda;
    pair.expected_difference = Rational(0);
    pair.identification = FpMatrix::identity(2, g.colimit_dim);
    if (g.colimit_dim > 0) {
        pair.witness_class.assign(g.colimit_dim, 0);
        pair.witness_class[static_cast<size_t>(rng.below(g.colimit_dim))] = 1;
    }

    auto rs = enumerate_restrictions(g, lambda, true);
    const auto& r = rs.front();
    pair.cert.restriction = r;
    PersistenceModule<Rational> mg = restrict_module(g, r);
    PersistenceModule<Rational> mh = restrict_module(h, r);
    auto bar_of = [](const PlantSpec& s, int pos) {
        std::vector<int> ids;
        for (size_t b = 0; b < s.bars.size(); ++b)
            if (alive(s.bars[b], pos)) ids.push_back(static_cast<int>(b));
        return ids;
    };
    auto pad_free_id = [&](int id) {
        // plant id in g coordinates for a padded-module bar, or -1 for a pad
        int fin = static_cast<int>(spec.bars.size()) - spec.n_infinite;
        if (id < fin) return id;
        if (id < fin + pads) return -1;
        return id - pads;
    };
    for (long long k = 0; k + 1 < r.length(); ++k) {
        int pos = static_cast<int>(k);
        std::vector<int> gs = bar_of(spec, pos), ht = bar_of(padded, pos + 1);
        FpMatrix phi(2, mh.dims[pos + 1], mg.dims[pos]);
        for (size_t c = 0; c < gs.size(); ++c)
            for (size_t rr = 0; rr < ht.size(); ++rr)
                if (pad_free_id(ht[rr]) == gs[c]) phi.at(static_cast<int>(rr), static_cast<int>(c)) = 1;
        pair.cert.phi.push_back(phi);
        std::vector<int> hs = bar_of(padded, pos), gt = bar_of(spec, pos + 1);
        FpMatrix psi(2, mg.dims[pos + 1], mh.dims[pos]);
        for (size_t c = 0; c < hs.size(); ++c) {
            int mapped = pad_free_id(hs[c]);
            if (mapped < 0) continue;
            for (size_t rr = 0; rr < gt.size(); ++rr)
                if (gt[rr] == mapped) psi.at(static_cast<int>(rr), static_cast<int>(c)) = 1;
        }
        pair.cert.psi.push_back(psi);
    }
    return pair;
}

namespace {

struct Section {
    bool ok = true;
    long long cases = 0;
};

}  // namespace

bool run_property_suite(uint64_t seed, int cases, std::ostream& os) {
    os << "seed " << seed << "\n";
    bool all_ok = true;
    auto report = [&](const char* name, const Section& s) {
        os << "[" << name << "] cases=" << s.cases << (s.ok ? " ok" : " FAIL") << "\n";
        all_ok = all_ok && s.ok;
    };

    {  // field axioms, exhaustively for small primes
        Section s;
        for (int p : {2, 3, 5, 7}) {
            for (int x = 0; x < p; ++x)
                for (int y = 0; y < p; ++y) {
                    FieldElement a(x, p), b(y, p);
                    if (!(a + b == b + a) || !(a * b == b * a)) s.ok = false;
                    for (int z = 0; z < p; ++z) {
                        FieldElement c(z, p);
                        if (!((a + b) + c == a + (b + c))) s.ok = false;
                        if (!((a * b) * c == a * (b * c))) s.ok = false;
                        if (!(a * (b + c) == a * b + a * c)) s.ok = false;
                    }
                    if (y != 0 && !((a / b) * b == a)) s.ok = false;
                    ++s.cases;
                }
        }
        report("field-axioms", s);
    }

    {  // associativity of composition, rank under transpose, membership oracle
        Section s;
        Rng rng(seed ^ 0xa1);
        for (int c = 0; c < cases; ++c) {
            int p = std::vector<int>{2, 3, 5}[rng.below(3)];
            int d1 = static_cast<int>(rng.range(0, 3)), d2 = static_cast<int>(rng.range(0, 3)),
                d3 = static_cast<int>(rng.range(0, 3)), d4 = static_cast<int>(rng.range(0, 3));
            FpMatrix A = random_matrix(rng, p, d1, d2), B = random_matrix(rng, p, d2, d3),
                     C = random_matrix(rng, p, d3, d4);
            if (compose(compose(A, B), C) != compose(A, compose(B, C))) s.ok = false;
            if (rank(A) != rank(transpose(A))) s.ok = false;
            std::vector<uint8_t> v(static_cast<size_t>(d1));
            for (auto& e : v) e = static_cast<uint8_t>(rng.below(static_cast<uint64_t>(p)));
            auto x = membership(v, A);
            if (x) {
                if (matvec(A, *x) != v) s.ok = false;
            } else if (d2 <= 3) {
                // exhaustive certificate that nothing maps to v
                std::vector<uint8_t> w(static_cast<size_t>(d2), 0);
                bool found = false;
                while (true) {
                    if (matvec(A, w) == v) found = true;
                    int k = 0;
                    while (k < d2 && ++w[k] == p) w[k++] = 0;
                    if (k == d2) break;
                }
                if (found) s.ok = false;
            }
            ++s.cases;
        }
        report("linalg", s);
    }

    {  // barcode against the exhaustive oracle plus the rank identity
        Section s;
        Rng rng(seed ^ 0xb2);
        for (int c = 0; c < cases; ++c) {
            auto m = random_persistence_module(rng, 2, 4, 3, true);
            Barcode<Rational> fast = barcode(m);
            Barcode<Rational> slow = brute_force_barcode(m);
            if (!(fast == slow)) s.ok = false;
            for (int i = 0; i < m.size(); ++i)
                for (int j = i; j < m.size(); ++j) {
                    long long covering = 0;
                    for (const auto& bar : fast.bars) {
                        bool born = !(m.points[i] < bar.birth);
                        bool lives = bar.infinite || !(bar.death < m.points[j]);
                        if (born && lives) ++covering;
                    }
                    if (covering != rank_invariant(m, i, j)) s.ok = false;
                }
            ++s.cases;
        }
        report("barcode-oracle", s);
    }

    {  // bottleneck distance against factorial search
        Section s;
        Rng rng(seed ^ 0xc3);
        int n = std::max(1, cases / 2);
        for (int c = 0; c < n; ++c) {
            Barcode<Rational> x = random_barcode(rng, 5), y = random_barcode(rng, 5);
            if (!(bottleneck_distance(x, y) == bottleneck_oracle(x, y))) s.ok = false;
            ++s.cases;
        }
        report("bottleneck-oracle", s);
    }

    {  // pseudometric behaviour on random triples
        Section s;
        Rng rng(seed ^ 0xd4);
        int n = std::max(1, cases / 4);
        for (int c = 0; c < n; ++c) {
            Barcode<Rational> x = random_barcode(rng, 4), y = random_barcode(rng, 4),
                              z = random_barcode(rng, 4);
            if (!(bottleneck_distance(x, x) == Distance<Rational>{false, Rational(0)})) s.ok = false;
            if (!(bottleneck_distance(x, y) == bottleneck_distance(y, x))) s.ok = false;
            auto xy = bottleneck_distance(x, y), yz = bottleneck_distance(y, z),
                 xz = bottleneck_distance(x, z);
            if (!xy.infinite && !yz.infinite) {
                if (xz.infinite || xy.value + yz.value < xz.value) s.ok = false;
            }
            ++s.cases;
        }
        report("pseudometric", s);
    }

    {  // shift covariance and dual reflection/involution on barcodes
        Section s;
        Rng rng(seed ^ 0xe5);
        int n = std::max(1, cases / 4);
        for (int c = 0; c < n; ++c) {
            auto m = random_persistence_module(rng, 2, 4, 3, true);
            Rational shift(rng.range(-4, 4), 2);
            if (!(barcode(shift_module(m, shift)) == translate_barcode(barcode(m), -shift)))
                s.ok = false;
            auto d = dual_module(m);
            if (!(barcode(d) == reflect_barcode(barcode(m)))) s.ok = false;
            if (!(barcode(dual_module(d)) == barcode(m))) s.ok = false;
            ++s.cases;
        }
        report("dual-shift", s);
    }

    {  // spectral invariant equals first appearance and the basis oracle
        Section s;
        Rng rng(seed ^ 0xf6);
        int n = std::max(1, cases / 4);
        for (int c = 0; c < n; ++c) {
            auto m = random_persistence_module(rng, 2, 4, 3, true);
            if (!m.has_colimit() || m.colimit_dim == 0) { --c; continue; }
            std::vector<uint8_t> a(static_cast<size_t>(m.colimit_dim));
            for (auto& e : a) e = static_cast<uint8_t>(rng.below(2));
            auto v = spectral_invariant_pm(m, a);
            auto o = flag_basis_spectral_oracle(m, a);
            if (!(v == o)) s.ok = false;
            if (!is_zero_vec(a)) {
                auto t = min_appearance(m, a);
                if (t.has_value() != (v.kind == SpectralKind::Finite)) s.ok = false;
                if (t && !(v.value == *t)) s.ok = false;
            }
            ++s.cases;
        }
        report("spectral-oracle", s);
    }

    {  // restriction stability on planted gapped modules
        Section s;
        Rng rng(seed ^ 0x17);
        const Rational lambdas[3] = {Rational(1, 2), Rational(1), Rational(2)};
        int n = std::max(1, cases / 2);
        for (int c = 0; c < n; ++c) {
            auto planted = random_planted_gapped(rng, lambdas[rng.below(3)], 8, true);
            if (!validate_gapped(planted.module).ok) s.ok = false;
            auto rep = restriction_stability_report(planted.module);
            if (!rep.pass) s.ok = false;
            ++s.cases;
        }
        report("gapped-stability", s);
    }

    {  // spectral stability across certified interleavings
        Section s;
        Rng rng(seed ^ 0x28);
        int n = std::max(1, cases / 2);
        for (int c = 0; c < n; ++c) {
            auto pair = rng.coin() ? random_translate_pair(rng) : random_padding_pair(rng);
            if (pair.witness_class.empty()) { --c; continue; }
            auto rep = stability_bound_check(pair.first, pair.second, pair.delta, pair.cert,
                                             pair.witness_class, pair.identification);
            if (!rep.asserted || !rep.within) s.ok = false;
            if (rep.left.kind == GappedSpectralKind::Finite &&
                rep.right.kind == GappedSpectralKind::Finite) {
                Rational diff = detail::abs_val(rep.left.value - rep.right.value);
                if (!(diff == pair.expected_difference)) s.ok = false;
            }
            ++s.cases;
        }
        report("alg-stability", s);
    }

    {  // duality sign flip through the supplied pairing
        Section s;
        Rng rng(seed ^ 0x39);
        int n = std::max(1, cases / 2);
        for (int c = 0; c < n; ++c) {
            auto planted = random_planted_gapped(rng, Rational(1), 8, true);
            const auto& g = planted.module;
            if (g.colimit_dim == 0) { --c; continue; }
            auto dual = gapped_dual(g);
            if (!validate_gapped(dual.module).ok) s.ok = false;
            for (int col = 0; col < dual.adapted_basis.cols; ++col) {
                std::vector<uint8_t> a(static_cast<size_t>(g.colimit_dim));
                for (int r = 0; r < g.colimit_dim; ++r) a[r] = dual.adapted_basis.at(r, col);
                auto lhs = gapped_spectral_invariant(g, a);
                if (lhs.kind != GappedSpectralKind::Finite) continue;
                auto rhs = gapped_spectral_invariant(dual.module, dual_class(dual, a));
                if (rhs.kind != GappedSpectralKind::Finite) { s.ok = false; continue; }
                if (!(lhs.value == -rhs.value)) s.ok = false;
            }
            ++s.cases;
        }
        report("gapped-duality", s);
    }

    {  // translate composes additively
        Section s;
        Rng rng(seed ^ 0x4a);
        int n = std::max(1, cases / 4);
        for (int c = 0; c < n; ++c) {
            auto planted = random_planted_gapped(rng, Rational(1), 6, false);
            Rational u(rng.range(-3, 3)), v(rng.range(-3, 3));
            auto lhs = translate(translate(planted.module, u), v);
            auto rhs = translate(planted.module, u + v);
            if (!(lhs.indices == rhs.indices && lhs.maps == rhs.maps)) s.ok = false;
            ++s.cases;
        }
        report("translate-additivity", s);
    }

    os << "RESULT " << (all_ok ? "ok" : "FAIL") << "\n";
    return all_ok;
}

}  // namespace gapped
