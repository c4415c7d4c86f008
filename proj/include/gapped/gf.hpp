#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapped {

bool is_prime(int p);
int fp_inverse(int a, int p);

// Single element of GF(p). The heavy lifting happens in FpMatrix, which
// stores raw residues with one shared modulus; this type is the scalar
// face of the same arithmetic.
struct FieldElement {
    int value = 0;
    int p = 2;

    FieldElement() = default;
    FieldElement(long long v, int modulus) : p(modulus) {
        if (!is_prime(modulus)) throw std::invalid_argument("field: modulus must be prime");
        value = static_cast<int>(((v % p) + p) % p);
    }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        a.check(b);
        return FieldElement(a.value + b.value, a.p);
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        a.check(b);
        return FieldElement(a.value - b.value, a.p);
    }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        a.check(b);
        return FieldElement(static_cast<long long>(a.value) * b.value, a.p);
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) {
        a.check(b);
        if (b.value == 0) throw std::domain_error("field: division by zero");
        return FieldElement(static_cast<long long>(a.value) * fp_inverse(b.value, a.p), a.p);
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.p == b.p && a.value == b.value;
    }

    void check(const FieldElement& other) const {
        if (p != other.p) throw std::invalid_argument("field: mixed moduli");
    }
};

// Dense row-major matrix over GF(p). Dimensions at desk scale; everything
// is by value and operations never mutate their inputs.
struct FpMatrix {
    int p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> a;  // rows*cols residues in [0, p)

    FpMatrix() = default;
    FpMatrix(int modulus, int r, int c)
        : p(modulus), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {
        if (!is_prime(modulus)) throw std::invalid_argument("matrix: modulus must be prime");
        if (r < 0 || c < 0) throw std::invalid_argument("matrix: negative shape");
    }

    uint8_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    uint8_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static FpMatrix identity(int p, int n);
    static FpMatrix zero(int p, int r, int c) { return FpMatrix(p, r, c); }
    static FpMatrix from_rows(int p, const std::vector<std::vector<int>>& rows);

    friend bool operator==(const FpMatrix& x, const FpMatrix& y) {
        return x.p == y.p && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const FpMatrix& x, const FpMatrix& y) { return !(x == y); }
};

// Matrix product A*B; throws "incompatible shapes" on a column/row mismatch.
FpMatrix compose(const FpMatrix& A, const FpMatrix& B);

FpMatrix transpose(const FpMatrix& A);
FpMatrix add(const FpMatrix& A, const FpMatrix& B);

int rank(const FpMatrix& A);

// Coefficients x with columns*x = v, if v lies in the column span.
std::optional<std::vector<uint8_t>> membership(const std::vector<uint8_t>& v,
                                               const FpMatrix& columns);

std::vector<uint8_t> matvec(const FpMatrix& A, const std::vector<uint8_t>& v);

// Column-space basis in column echelon form.
FpMatrix image_basis(const FpMatrix& A);
// Nullspace basis, one kernel vector per column.
FpMatrix kernel_basis(const FpMatrix& A);
// Horizontal concatenation [A | B].
FpMatrix hconcat(const FpMatrix& A, const FpMatrix& B);
// diag(A, B) as a block matrix.
FpMatrix block_diag(const FpMatrix& A, const FpMatrix& B);
// Solve A*X = B column by column; nullopt if any column is outside im(A).
std::optional<FpMatrix> solve_matrix(const FpMatrix& A, const FpMatrix& B);
// Inverse of a square invertible matrix; throws if singular.
FpMatrix inverse(const FpMatrix& A);
// True if every column of B lies in the column span of A.
bool spans(const FpMatrix& A, const FpMatrix& B);

inline bool is_zero_vec(const std::vector<uint8_t>& v) {
    for (uint8_t x : v)
        if (x) return false;
    return true;
}

}  // namespace gapped
