#include "gapped/gf.hpp"

namespace gapped {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int fp_inverse(int a, int p) {
    // extended Euclid on (a, p); a != 0 mod p expected
    int t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("field: not invertible");
    return ((t % p) + p) % p;
}

FpMatrix FpMatrix::identity(int p, int n) {
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(int p, const std::vector<std::vector<int>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    FpMatrix m(p, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("matrix: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<uint8_t>(((rows[i][j] % p) + p) % p);
    }
    return m;
}

FpMatrix compose(const FpMatrix& A, const FpMatrix& B) {
    if (A.p != B.p) throw std::invalid_argument("matrix: mixed moduli");
    if (A.cols != B.rows) throw std::invalid_argument("incompatible shapes");
    FpMatrix C(A.p, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            int aik = A.at(i, k);
            if (!aik) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = static_cast<uint8_t>((C.at(i, j) + aik * B.at(k, j)) % A.p);
        }
    return C;
}

FpMatrix transpose(const FpMatrix& A) {
    FpMatrix T(A.p, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

FpMatrix add(const FpMatrix& A, const FpMatrix& B) {
    if (A.p != B.p || A.rows != B.rows || A.cols != B.cols)
        throw std::invalid_argument("incompatible shapes");
    FpMatrix C(A.p, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i)
        C.a[i] = static_cast<uint8_t>((A.a[i] + B.a[i]) % A.p);
    return C;
}

namespace {

// Row-reduce in place; returns pivot column per pivot row.
std::vector<int> row_reduce(FpMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int sel = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col)) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        int inv = fp_inverse(m.at(row, col), m.p);
        for (int j = 0; j < m.cols; ++j)
            m.at(row, j) = static_cast<uint8_t>(m.at(row, j) * inv % m.p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || !m.at(i, col)) continue;
            int f = m.at(i, col);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = static_cast<uint8_t>((m.at(i, j) + (m.p - f) * m.at(row, j)) % m.p);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int rank(const FpMatrix& A) {
    FpMatrix m = A;
    return static_cast<int>(row_reduce(m).size());
}

std::optional<std::vector<uint8_t>> membership(const std::vector<uint8_t>& v,
                                               const FpMatrix& columns) {
    if (static_cast<int>(v.size()) != columns.rows)
        throw std::invalid_argument("membership: vector length mismatch");
    FpMatrix aug(columns.p, columns.rows, columns.cols + 1);
    for (int i = 0; i < columns.rows; ++i) {
        for (int j = 0; j < columns.cols; ++j) aug.at(i, j) = columns.at(i, j);
        aug.at(i, columns.cols) = static_cast<uint8_t>(v[i] % columns.p);
    }
    std::vector<int> pivots = row_reduce(aug);
    for (int c : pivots)
        if (c == columns.cols) return std::nullopt;  // inconsistent system
    std::vector<uint8_t> x(columns.cols, 0);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), columns.cols);
    return x;
}

std::vector<uint8_t> matvec(const FpMatrix& A, const std::vector<uint8_t>& v) {
    if (static_cast<int>(v.size()) != A.cols)
        throw std::invalid_argument("apply: vector length mismatch");
    std::vector<uint8_t> out(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        int acc = 0;
        for (int j = 0; j < A.cols; ++j) acc += A.at(i, j) * v[j];
        out[i] = static_cast<uint8_t>(acc % A.p);
    }
    return out;
}

FpMatrix image_basis(const FpMatrix& A) {
    FpMatrix m = A;
    std::vector<int> pivots = row_reduce(m);
    // pivot columns of the reduced matrix index independent columns of A
    FpMatrix basis(A.p, A.rows, static_cast<int>(pivots.size()));
    for (size_t k = 0; k < pivots.size(); ++k)
        for (int i = 0; i < A.rows; ++i) basis.at(i, static_cast<int>(k)) = A.at(i, pivots[k]);
    return basis;
}

FpMatrix kernel_basis(const FpMatrix& A) {
    FpMatrix m = A;
    std::vector<int> pivots = row_reduce(m);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMatrix ker(A.p, A.cols, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        ker.at(fc, static_cast<int>(k)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            int val = m.at(static_cast<int>(r), fc);
            ker.at(pivots[r], static_cast<int>(k)) =
                static_cast<uint8_t>((A.p - val) % A.p);
        }
    }
    return ker;
}

FpMatrix hconcat(const FpMatrix& A, const FpMatrix& B) {
    if (A.p != B.p || A.rows != B.rows) throw std::invalid_argument("incompatible shapes");
    FpMatrix C(A.p, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

FpMatrix block_diag(const FpMatrix& A, const FpMatrix& B) {
    if (A.p != B.p) throw std::invalid_argument("matrix: mixed moduli");
    FpMatrix C(A.p, A.rows + B.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, A.cols + j) = B.at(i, j);
    return C;
}

std::optional<FpMatrix> solve_matrix(const FpMatrix& A, const FpMatrix& B) {
    if (A.p != B.p || A.rows != B.rows) throw std::invalid_argument("incompatible shapes");
    FpMatrix X(A.p, A.cols, B.cols);
    for (int c = 0; c < B.cols; ++c) {
        std::vector<uint8_t> v(B.rows);
        for (int i = 0; i < B.rows; ++i) v[i] = B.at(i, c);
        auto x = membership(v, A);
        if (!x) return std::nullopt;
        for (int i = 0; i < A.cols; ++i) X.at(i, c) = (*x)[i];
    }
    return X;
}

FpMatrix inverse(const FpMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse: not square");
    auto X = solve_matrix(A, FpMatrix::identity(A.p, A.rows));
    if (!X || rank(A) != A.rows) throw std::domain_error("inverse: singular matrix");
    return *X;
}

bool spans(const FpMatrix& A, const FpMatrix& B) {
    if (A.p != B.p || A.rows != B.rows) throw std::invalid_argument("incompatible shapes");
    for (int c = 0; c < B.cols; ++c) {
        std::vector<uint8_t> v(B.rows);
        for (int i = 0; i < B.rows; ++i) v[i] = B.at(i, c);
        if (!membership(v, A)) return false;
    }
    return true;
}

}  // namespace gapped
