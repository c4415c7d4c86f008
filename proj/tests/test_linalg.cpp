#include "doctest.h"
#include "gapped/gf.hpp"
#include "gapped/suite.hpp"

using namespace gapped;

namespace {

// naive triple loop, kept apart from the library multiply
FpMatrix naive_product(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix c(a.p, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            int acc = 0;
            for (int k = 0; k < a.cols; ++k) acc += a.at(i, k) * b.at(k, j);
            c.at(i, j) = static_cast<uint8_t>(acc % a.p);
        }
    return c;
}

}  // namespace

TEST_CASE("field axioms hold on every pair for small primes") {
    for (int p : {2, 3, 5, 7}) {
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y) {
                FieldElement a(x, p), b(y, p);
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                if (y != 0) CHECK((a / b) * b == a);
                for (int z = 0; z < p; ++z) {
                    FieldElement c(z, p);
                    CHECK((a + b) + c == a + (b + c));
                    CHECK((a * b) * c == a * (b * c));
                    CHECK(a * (b + c) == a * b + a * c);
                }
            }
        CHECK(FieldElement(p - 1, p) + FieldElement(1, p) == FieldElement(0, p));
    }
    CHECK_THROWS(FieldElement(1, 4));
}

TEST_CASE("compose matches hand results") {
    CHECK(compose(FpMatrix::identity(2, 3), FpMatrix::identity(2, 3)) == FpMatrix::identity(2, 3));

    FpMatrix a = FpMatrix::from_rows(2, {{1, 1}, {0, 1}});
    FpMatrix b = FpMatrix::from_rows(2, {{1, 0}, {1, 1}});
    FpMatrix expected = FpMatrix::from_rows(2, {{0, 1}, {1, 1}});
    CHECK(compose(a, b) == expected);
    CHECK(compose(a, b) == naive_product(a, b));

    FpMatrix any = FpMatrix::from_rows(2, {{1, 0, 1, 1}, {0, 1, 1, 0}, {1, 1, 1, 1}});
    CHECK(compose(FpMatrix::zero(2, 2, 3), any) == FpMatrix::zero(2, 2, 4));

    CHECK_THROWS_WITH(compose(FpMatrix::zero(2, 2, 3), FpMatrix::zero(2, 2, 3)),
                      doctest::Contains("incompatible shapes"));
}

TEST_CASE("composition is associative over several primes") {
    Rng rng(2024);
    for (int c = 0; c < 200; ++c) {
        int p = std::vector<int>{2, 3, 5}[rng.below(3)];
        int d1 = (int)rng.range(0, 4), d2 = (int)rng.range(0, 4), d3 = (int)rng.range(0, 4),
            d4 = (int)rng.range(0, 4);
        FpMatrix a = random_matrix(rng, p, d1, d2);
        FpMatrix b = random_matrix(rng, p, d2, d3);
        FpMatrix m = random_matrix(rng, p, d3, d4);
        CHECK(compose(compose(a, b), m) == compose(a, compose(b, m)));
        CHECK(compose(a, b) == naive_product(a, b));
    }
}

TEST_CASE("rank over GF(p)") {
    CHECK(rank(FpMatrix::identity(2, 4)) == 4);
    CHECK(rank(FpMatrix::zero(3, 3, 5)) == 0);
    CHECK(rank(FpMatrix::from_rows(2, {{1, 1}, {1, 1}})) == 1);
    CHECK(rank(FpMatrix::from_rows(5, {{1, 2}, {2, 4}})) == 1);
    Rng rng(55);
    for (int c = 0; c < 100; ++c) {
        int p = std::vector<int>{2, 3, 5}[rng.below(3)];
        FpMatrix a = random_matrix(rng, p, (int)rng.range(0, 4), (int)rng.range(0, 4));
        CHECK(rank(a) == rank(transpose(a)));
    }
}

TEST_CASE("membership solves or refutes exactly") {
    FpMatrix id2 = FpMatrix::identity(2, 2);
    auto zero = membership({0, 0}, FpMatrix::from_rows(2, {{1, 1}, {0, 1}}));
    REQUIRE(zero);
    CHECK(is_zero_vec(*zero));

    auto e1 = membership({1, 0}, id2);
    REQUIRE(e1);
    CHECK(*e1 == std::vector<uint8_t>{1, 0});

    auto both = membership({1, 1}, id2);
    REQUIRE(both);
    CHECK(*both == std::vector<uint8_t>{1, 1});

    CHECK(!membership({1}, FpMatrix::zero(2, 1, 2)));
    CHECK_THROWS(membership({1, 0, 0}, id2));

    // refutations double-checked by exhaustive search
    Rng rng(77);
    for (int c = 0; c < 200; ++c) {
        int p = std::vector<int>{2, 3}[rng.below(2)];
        int rows = (int)rng.range(1, 3), cols = (int)rng.range(0, 3);
        FpMatrix a = random_matrix(rng, p, rows, cols);
        std::vector<uint8_t> v(rows);
        for (auto& e : v) e = static_cast<uint8_t>(rng.below(p));
        auto x = membership(v, a);
        bool found = false;
        std::vector<uint8_t> w(cols, 0);
        while (true) {
            if (matvec(a, w) == v) found = true;
            int k = 0;
            while (k < cols && ++w[k] == p) w[k++] = 0;
            if (k == cols) break;
        }
        CHECK(x.has_value() == found);
        if (x) CHECK(matvec(a, *x) == v);
    }
}

TEST_CASE("kernel and image bases span what they should") {
    Rng rng(99);
    for (int c = 0; c < 100; ++c) {
        int p = std::vector<int>{2, 3, 5}[rng.below(3)];
        FpMatrix a = random_matrix(rng, p, (int)rng.range(0, 4), (int)rng.range(0, 4));
        FpMatrix img = image_basis(a);
        FpMatrix ker = kernel_basis(a);
        CHECK(rank(img) == img.cols);
        CHECK(rank(img) == rank(a));
        CHECK(spans(img, a));
        CHECK(ker.cols == a.cols - rank(a));
        CHECK(compose(a, ker) == FpMatrix::zero(p, a.rows, ker.cols));
    }
}

TEST_CASE("inverse and solve") {
    Rng rng(123);
    for (int c = 0; c < 50; ++c) {
        int p = std::vector<int>{2, 3, 5}[rng.below(3)];
        int n = (int)rng.range(1, 4);
        FpMatrix a = random_invertible(rng, p, n);
        CHECK(compose(a, inverse(a)) == FpMatrix::identity(p, n));
    }
    CHECK_THROWS(inverse(FpMatrix::zero(2, 2, 2)));
}
