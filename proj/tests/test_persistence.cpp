#include "doctest.h"
#include "gapped/persistence.hpp"
#include "gapped/suite.hpp"

using namespace gapped;

namespace {

using RModule = PersistenceModule<Rational>;
using RBar = Bar<Rational>;
using RBarcode = Barcode<Rational>;

RModule identity_chain(std::vector<long long> pts, int dim, bool colim) {
    RModule m;
    m.p = 2;
    for (long long t : pts) m.points.push_back(Rational(t));
    m.dims.assign(pts.size(), dim);
    for (size_t i = 0; i + 1 < pts.size(); ++i) m.steps.push_back(FpMatrix::identity(2, dim));
    if (colim) {
        m.colimit_dim = dim;
        m.colimit_map = FpMatrix::identity(2, dim);
    }
    return m;
}

RBar finite_bar(long long b, long long d) { return RBar{Rational(b), false, Rational(d)}; }
RBar infinite_bar(long long b) { return RBar{Rational(b), true, {}}; }

RBarcode barcode_of(std::initializer_list<RBar> bars) {
    RBarcode b;
    b.bars = bars;
    b.canonicalize();
    return b;
}

}  // namespace

TEST_CASE("validate accepts well-shaped modules and localizes failures") {
    RModule single;
    single.p = 2;
    single.points = {Rational(0)};
    single.dims = {1};
    CHECK(validate(single).ok);

    RModule bad = identity_chain({0, 1}, 1, false);
    bad.steps[0] = FpMatrix::zero(2, 2, 2);
    Validation v = validate(bad);
    CHECK(!v.ok);
    CHECK(v.message.find("position 0") != std::string::npos);

    Rng rng(11);
    for (int c = 0; c < 100; ++c)
        CHECK(validate(random_persistence_module(rng, 2, 5, 3, true)).ok);
}

TEST_CASE("rank invariant on chains") {
    RModule two = identity_chain({0, 1, 2}, 2, false);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) CHECK(rank_invariant(two, i, j) == 2);

    RModule zero_step = identity_chain({0, 1}, 1, false);
    zero_step.steps[0] = FpMatrix::zero(2, 1, 1);
    CHECK(rank_invariant(zero_step, 0, 1) == 0);
    CHECK(rank_invariant(zero_step, 0, 0) == 1);

    CHECK_THROWS(rank_invariant(zero_step, 0, 2));  // no colimit slot
    CHECK_THROWS(rank_invariant(zero_step, 1, 0));

    Rng rng(13);
    for (int c = 0; c < 100; ++c) {
        auto m = random_persistence_module(rng, 2, 4, 3, true);
        for (int i = 0; i < m.size(); ++i)
            for (int j = i; j <= (m.has_colimit() ? m.size() : m.size() - 1); ++j)
                CHECK(rank_invariant(m, i, j) == rank(composite(m, i, j)));
    }
}

TEST_CASE("barcode on the named small instances") {
    RModule inf_chain = identity_chain({0, 1, 2}, 1, true);
    CHECK(barcode(inf_chain) == barcode_of({infinite_bar(0)}));

    RModule zero_step = identity_chain({0, 1}, 1, false);
    zero_step.steps[0] = FpMatrix::zero(2, 1, 1);
    CHECK(barcode(zero_step) == barcode_of({finite_bar(0, 0), finite_bar(1, 1)}));

    RModule empty;
    empty.p = 2;
    CHECK(barcode(empty).bars.empty());
    CHECK(brute_force_barcode(empty).bars.empty());

    RModule constant = identity_chain({0, 1, 2, 3}, 1, false);
    CHECK(barcode(constant) == barcode_of({finite_bar(0, 3)}));
    CHECK(brute_force_barcode(constant) == barcode(constant));
}

TEST_CASE("barcode equals the exhaustive oracle and the rank identity holds") {
    Rng rng(17);
    for (int c = 0; c < 300; ++c) {
        auto m = random_persistence_module(rng, 2, 4, 3, true);
        RBarcode fast = barcode(m);
        CHECK(fast == brute_force_barcode(m));
        for (int i = 0; i < m.size(); ++i) {
            long long alive = 0;
            for (const auto& bar : fast.bars)
                if (!(m.points[i] < bar.birth) && (bar.infinite || !(bar.death < m.points[i])))
                    ++alive;
            CHECK(alive == m.dims[i]);
            for (int j = i; j < m.size(); ++j) {
                long long covering = 0;
                for (const auto& bar : fast.bars) {
                    bool born = !(m.points[i] < bar.birth);
                    bool lives = bar.infinite || !(bar.death < m.points[j]);
                    if (born && lives) ++covering;
                }
                CHECK(covering == rank_invariant(m, i, j));
            }
        }
    }
}

TEST_CASE("brute force oracle rejects large instances") {
    RModule big = identity_chain({0, 1, 2, 3, 4}, 1, false);
    CHECK_THROWS_WITH(brute_force_barcode(big), doctest::Contains("instance too large"));
    RModule wide = identity_chain({0}, 4, false);
    CHECK_THROWS_WITH(brute_force_barcode(wide), doctest::Contains("instance too large"));
}

TEST_CASE("shift moves barcodes the other way") {
    RModule m = identity_chain({1, 3}, 1, false);
    CHECK(barcode(m) == barcode_of({finite_bar(1, 3)}));
    CHECK(barcode(shift_module(m, Rational(1))) == barcode_of({finite_bar(0, 2)}));
    CHECK(barcode(shift_module(m, Rational(0))) == barcode(m));

    Rng rng(19);
    for (int c = 0; c < 100; ++c) {
        auto r = random_persistence_module(rng, 2, 4, 3, true);
        Rational s(rng.range(-6, 6), 2);
        CHECK(barcode(shift_module(r, s)) == translate_barcode(barcode(r), -s));
    }
}

TEST_CASE("dual of a colimit-free identity chain is the identity chain over negated points") {
    RModule m = identity_chain({0, 1}, 1, false);
    RModule d = dual_module(m);
    CHECK(d.points == std::vector<Rational>{Rational(-1), Rational(0)});
    CHECK(d.dims == std::vector<int>{1, 1});
    CHECK(d.steps[0] == FpMatrix::identity(2, 1));
    CHECK(!d.has_colimit());
}

TEST_CASE("dual reflects bars and is an involution on barcodes") {
    RModule m = identity_chain({1, 2}, 1, false);
    CHECK(barcode(dual_module(m)) == barcode_of({finite_bar(-2, -1)}));

    Rng rng(23);
    for (int c = 0; c < 200; ++c) {
        auto r = random_persistence_module(rng, 2, 4, 3, true);
        auto d = dual_module(r);
        CHECK(validate(d).ok);
        CHECK(barcode(d) == reflect_barcode(barcode(r)));
        CHECK(barcode(dual_module(d)) == barcode(r));
    }
}

TEST_CASE("min appearance scans the colimit images") {
    RModule m = identity_chain({0, 1, 2}, 1, true);
    CHECK(min_appearance(m, {0}) == Rational(0));  // zero class appears immediately
    CHECK(min_appearance(m, {1}) == Rational(0));

    // generator enters the image only at the second index
    RModule late = identity_chain({0, 1}, 1, true);
    late.dims = {0, 1};
    late.steps[0] = FpMatrix::zero(2, 1, 0);
    CHECK(min_appearance(late, {1}) == Rational(1));

    RModule never = identity_chain({0, 1}, 1, true);
    never.colimit_map = FpMatrix::zero(2, 1, 1);
    CHECK(!min_appearance(never, {1}).has_value());

    CHECK_THROWS(min_appearance(m, {1, 0}));
}

TEST_CASE("spectral invariant equals first appearance away from zero") {
    RModule m = identity_chain({0, 1, 2}, 1, true);
    CHECK(spectral_invariant_pm(m, {0}).kind == SpectralKind::MinusInfinity);
    auto v = spectral_invariant_pm(m, {1});
    CHECK(v.kind == SpectralKind::Finite);
    CHECK(v.value == Rational(0));

    Rng rng(29);
    for (int c = 0; c < 200; ++c) {
        auto r = random_persistence_module(rng, 2, 4, 3, true);
        if (!r.has_colimit() || r.colimit_dim == 0) continue;
        std::vector<uint8_t> a(static_cast<size_t>(r.colimit_dim));
        for (auto& e : a) e = static_cast<uint8_t>(rng.below(2));
        auto got = spectral_invariant_pm(r, a);
        CHECK(got == flag_basis_spectral_oracle(r, a));
        if (!is_zero_vec(a)) {
            auto t = min_appearance(r, a);
            if (t) {
                CHECK(got.kind == SpectralKind::Finite);
                CHECK(got.value == *t);
            } else {
                CHECK(got.kind == SpectralKind::NeverWitnessed);
            }
        }
    }
}

TEST_CASE("bottleneck distance on the named instances") {
    RBarcode b = barcode_of({finite_bar(0, 4), infinite_bar(1)});
    CHECK(bottleneck_distance(b, b) == Distance<Rational>{false, Rational(0)});

    RBarcode one = barcode_of({finite_bar(0, 4)});
    RBarcode none;
    CHECK(bottleneck_distance(one, none) == Distance<Rational>{false, Rational(2)});

    RBarcode inf1 = barcode_of({infinite_bar(0)});
    CHECK(bottleneck_distance(inf1, none).infinite);
    CHECK(bottleneck_distance(inf1, barcode_of({infinite_bar(5)})) ==
          Distance<Rational>{false, Rational(5)});
}

TEST_CASE("bottleneck distance equals the factorial oracle") {
    Rng rng(31);
    for (int c = 0; c < 300; ++c) {
        RBarcode x = random_barcode(rng, 5), y = random_barcode(rng, 5);
        CHECK(bottleneck_distance(x, y) == bottleneck_oracle(x, y));
    }
}

TEST_CASE("bottleneck distance is a pseudometric") {
    Rng rng(37);
    for (int c = 0; c < 150; ++c) {
        RBarcode x = random_barcode(rng, 4), y = random_barcode(rng, 4), z = random_barcode(rng, 4);
        CHECK(bottleneck_distance(x, x) == Distance<Rational>{false, Rational(0)});
        CHECK(bottleneck_distance(x, y) == bottleneck_distance(y, x));
        auto xy = bottleneck_distance(x, y), yz = bottleneck_distance(y, z),
             xz = bottleneck_distance(x, z);
        if (!xy.infinite && !yz.infinite) {
            CHECK(!xz.infinite);
            CHECK(!(xy.value + yz.value < xz.value));
        }
    }
}

TEST_CASE("interleaving distance runs through barcodes") {
    RModule m = identity_chain({0, 1, 2}, 1, true);
    CHECK(interleaving_distance(m, m) == Distance<Rational>{false, Rational(0)});

    RModule zero_chain = identity_chain({0, 1, 2}, 1, true);
    zero_chain.steps[0] = FpMatrix::zero(2, 1, 1);
    zero_chain.steps[1] = FpMatrix::zero(2, 1, 1);
    auto d = interleaving_distance(m, zero_chain);
    CHECK(!d.infinite);
    CHECK(d.value == Rational(2));
    CHECK(d == bottleneck_distance(barcode(m), barcode(zero_chain)));

    RModule no_colim = identity_chain({0, 1, 2}, 1, false);
    CHECK_THROWS(interleaving_distance(m, no_colim));

    Rng rng(41);
    for (int c = 0; c < 100; ++c) {
        auto r = random_persistence_module(rng, 2, 4, 3, true);
        Rational s(rng.range(-4, 4), 2);
        auto ds = interleaving_distance(r, shift_module(r, s));
        CHECK(!ds.infinite);
        CHECK(!(detail::abs_val(s) < ds.value));
    }
}
