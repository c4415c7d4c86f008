#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gapped/gf.hpp"

namespace gapped {

// One interval of a barcode. Closed at both recorded endpoints; an
// infinite death means the class survives into the colimit slot.
template <class S>
struct Bar {
    S birth{};
    bool infinite = false;
    S death{};

    friend bool operator==(const Bar& x, const Bar& y) {
        if (x.infinite != y.infinite) return false;
        if (!(x.birth == y.birth)) return false;
        return x.infinite || x.death == y.death;
    }
    friend bool operator<(const Bar& x, const Bar& y) {
        if (!(x.birth == y.birth)) return x.birth < y.birth;
        if (x.infinite != y.infinite) return !x.infinite;  // finite deaths sort first
        if (x.infinite) return false;
        return x.death < y.death;
    }
};

template <class S>
struct Barcode {
    std::vector<Bar<S>> bars;  // kept sorted; multiplicity by repetition

    void canonicalize() { std::sort(bars.begin(), bars.end()); }
    friend bool operator==(const Barcode& a, const Barcode& b) { return a.bars == b.bars; }
};

template <class S>
Barcode<S> translate_barcode(const Barcode<S>& b, const S& delta) {
    Barcode<S> out = b;
    for (auto& bar : out.bars) {
        bar.birth = bar.birth + delta;
        if (!bar.infinite) bar.death = bar.death + delta;
    }
    out.canonicalize();
    return out;
}

// Finite totally ordered directed system of GF(p) spaces, with an optional
// terminal colimit slot fed by one map from the last sample index.
template <class S>
struct PersistenceModule {
    int p = 2;
    std::vector<S> points;      // strictly increasing sample parameters
    std::vector<int> dims;      // one per point
    std::vector<FpMatrix> steps;  // steps[i] : V_i -> V_{i+1}
    int colimit_dim = -1;       // negative: no colimit slot
    FpMatrix colimit_map;       // V_{N-1} -> V_inf when colimit_dim >= 0

    bool has_colimit() const { return colimit_dim >= 0; }
    int size() const { return static_cast<int>(points.size()); }
    // Position tag for the colimit slot in rank queries.
    int colimit_pos() const { return size(); }
};

struct Validation {
    bool ok = true;
    std::string message;
};

template <class S>
Validation validate(const PersistenceModule<S>& m) {
    int n = m.size();
    for (int i = 0; i + 1 < n; ++i)
        if (!(m.points[i] < m.points[i + 1]))
            return {false, "indices not strictly increasing at position " + std::to_string(i)};
    if (static_cast<int>(m.dims.size()) != n) return {false, "dims length mismatch"};
    for (int i = 0; i < n; ++i)
        if (m.dims[i] < 0) return {false, "negative dimension at position " + std::to_string(i)};
    if (static_cast<int>(m.steps.size()) != std::max(0, n - 1))
        return {false, "steps length mismatch"};
    for (int i = 0; i + 1 < n; ++i) {
        const FpMatrix& s = m.steps[i];
        if (s.p != m.p) return {false, "step modulus mismatch at position " + std::to_string(i)};
        if (s.rows != m.dims[i + 1] || s.cols != m.dims[i])
            return {false, "step shape mismatch at position " + std::to_string(i)};
    }
    if (m.has_colimit()) {
        if (n == 0) return {false, "colimit slot requires at least one sample index"};
        if (m.colimit_map.p != m.p) return {false, "colimit map modulus mismatch"};
        if (m.colimit_map.rows != m.colimit_dim || m.colimit_map.cols != m.dims[n - 1])
            return {false, "colimit map shape mismatch"};
    }
    return {};
}

template <class S>
void require_valid(const PersistenceModule<S>& m) {
    Validation v = validate(m);
    if (!v.ok) throw std::invalid_argument("invalid module: " + v.message);
}

// Composite map V_i -> V_j; j may equal colimit_pos().
template <class S>
FpMatrix composite(const PersistenceModule<S>& m, int i, int j) {
    int n = m.size();
    if (i < 0 || i > j || j > n || (j == n && !m.has_colimit()))
        throw std::invalid_argument("composite: invalid positions");
    if (i == n) return FpMatrix::identity(m.p, m.colimit_dim);
    FpMatrix acc = FpMatrix::identity(m.p, m.dims[i]);
    int last_sample = std::min(j, n - 1);
    for (int k = i; k < last_sample; ++k) acc = compose(m.steps[k], acc);
    if (j == n) acc = compose(m.colimit_map, acc);
    return acc;
}

template <class S>
int rank_invariant(const PersistenceModule<S>& m, int i, int j) {
    return rank(composite(m, i, j));
}

namespace detail {

// r(i,j) with the boundary conventions used by the multiplicity formula:
// r(-1, .) = 0 and, one slot past the end, rank into the colimit (0 if none).
template <class S>
int rank_ext(const PersistenceModule<S>& m, int i, int j) {
    int n = m.size();
    if (i < 0) return 0;
    if (j == n && !m.has_colimit()) return 0;
    if (j > n) return 0;
    return rank_invariant(m, i, j);
}

}  // namespace detail

// Interval multiplicities by inclusion-exclusion on the rank invariant.
template <class S>
Barcode<S> barcode(const PersistenceModule<S>& m) {
    require_valid(m);
    Barcode<S> out;
    int n = m.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            int mult = detail::rank_ext(m, i, j) - detail::rank_ext(m, i - 1, j) -
                       detail::rank_ext(m, i, j + 1) + detail::rank_ext(m, i - 1, j + 1);
            if (mult < 0) throw std::logic_error("barcode: negative multiplicity");
            for (int c = 0; c < mult; ++c)
                out.bars.push_back(Bar<S>{m.points[i], false, m.points[j]});
        }
        if (m.has_colimit()) {
            int mult = detail::rank_ext(m, i, n) - detail::rank_ext(m, i - 1, n);
            if (mult < 0) throw std::logic_error("barcode: negative multiplicity");
            for (int c = 0; c < mult; ++c) out.bars.push_back(Bar<S>{m.points[i], true, S{}});
        }
    }
    out.canonicalize();
    return out;
}

namespace detail {

inline std::vector<std::vector<uint8_t>> enumerate_vectors(int p, int d) {
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> v(d, 0);
    while (true) {
        out.push_back(v);
        int k = 0;
        while (k < d && ++v[k] == p) v[k++] = 0;
        if (k == d) break;
    }
    return out;
}

using VecSet = std::set<std::vector<uint8_t>>;

inline int dim_of_set(const VecSet& s, int p) {
    size_t n = s.size();
    int d = 0;
    size_t q = 1;
    while (q < n) { q *= p; ++d; }
    if (q != n) throw std::logic_error("vector set is not a subspace");
    return d;
}

inline VecSet intersect(const VecSet& a, const VecSet& b) {
    VecSet out;
    for (const auto& v : a)
        if (b.count(v)) out.insert(v);
    return out;
}

// Push every vector of V_i through the steps one at a time; shares no code
// with the matrix-composition path.
template <class S>
VecSet image_set(const PersistenceModule<S>& m, int i, int j) {
    VecSet out;
    if (i < 0) {
        int d = (j == m.size()) ? m.colimit_dim : m.dims[j];
        out.insert(std::vector<uint8_t>(d, 0));
        return out;
    }
    for (auto v : enumerate_vectors(m.p, m.dims[i])) {
        int k = i;
        while (k < std::min(j, m.size() - 1)) v = matvec(m.steps[k++], v);
        if (j == m.size()) v = matvec(m.colimit_map, v);
        out.insert(v);
    }
    return out;
}

}  // namespace detail

// Independent barcode oracle for small instances: interval multiplicities
// from exhaustive vector enumeration of image/kernel subspaces, namely
//   mult[i,j] = dim(im(i->j) /\ ker_j) - dim(im(i-1->j) /\ ker_j)
// with ker_j the kernel of the map leaving slot j. No Gaussian elimination
// and no matrix products anywhere on this path.
template <class S>
Barcode<S> brute_force_barcode(const PersistenceModule<S>& m) {
    require_valid(m);
    int n = m.size();
    for (int d : m.dims)
        if (d > 3) throw std::invalid_argument("instance too large");
    if (n > 4) throw std::invalid_argument("instance too large");
    if (m.p > 5) throw std::invalid_argument("instance too large");

    Barcode<S> out;
    for (int j = 0; j < n; ++j) {
        detail::VecSet ker;
        if (j + 1 < n) {
            for (auto v : detail::enumerate_vectors(m.p, m.dims[j]))
                if (is_zero_vec(matvec(m.steps[j], v))) ker.insert(v);
        } else if (m.has_colimit()) {
            for (auto v : detail::enumerate_vectors(m.p, m.dims[j]))
                if (is_zero_vec(matvec(m.colimit_map, v))) ker.insert(v);
        } else {
            for (auto v : detail::enumerate_vectors(m.p, m.dims[j])) ker.insert(v);
        }
        for (int i = 0; i <= j; ++i) {
            int hi = detail::dim_of_set(detail::intersect(detail::image_set(m, i, j), ker), m.p);
            int lo = detail::dim_of_set(detail::intersect(detail::image_set(m, i - 1, j), ker), m.p);
            for (int c = 0; c < hi - lo; ++c)
                out.bars.push_back(Bar<S>{m.points[i], false, m.points[j]});
        }
    }
    if (m.has_colimit()) {
        for (int i = 0; i < n; ++i) {
            int hi = detail::dim_of_set(detail::image_set(m, i, n), m.p);
            int lo = detail::dim_of_set(detail::image_set(m, i - 1, n), m.p);
            for (int c = 0; c < hi - lo; ++c) out.bars.push_back(Bar<S>{m.points[i], true, S{}});
        }
    }
    out.canonicalize();
    return out;
}

// New module at parameter t equals the old one at t + s.
template <class S>
PersistenceModule<S> shift_module(const PersistenceModule<S>& m, const S& s) {
    PersistenceModule<S> out = m;
    for (auto& t : out.points) t = t - s;
    return out;
}

namespace detail {

// Witnessed adapted basis of the colimit: columns extend the image flag in
// order of first appearance; fdim[i] = dim of the flag at slot i.
inline FpMatrix adapted_flag_basis(int p, int dinf, const std::vector<FpMatrix>& flags,
                                   std::vector<int>& fdim) {
    FpMatrix ew(p, dinf, 0);
    fdim.assign(flags.size(), 0);
    for (size_t i = 0; i < flags.size(); ++i) {
        const FpMatrix& f = flags[i];
        for (int c = 0; c < f.cols; ++c) {
            std::vector<uint8_t> v(static_cast<size_t>(dinf));
            for (int r = 0; r < dinf; ++r) v[r] = f.at(r, c);
            if (!membership(v, ew)) {
                FpMatrix col(p, dinf, 1);
                for (int r = 0; r < dinf; ++r) col.at(r, 0) = v[r];
                ew = hconcat(ew, col);
            }
        }
        fdim[i] = ew.cols;
    }
    return ew;
}

// Columns pick the adapted-dual coordinates with threshold index >= lo.
inline FpMatrix selection_above(int p, int fmax, int lo) {
    FpMatrix sel(p, fmax, fmax - lo);
    for (int c = 0; c + lo < fmax; ++c) sel.at(lo + c, c) = 1;
    return sel;
}

}  // namespace detail

// Dual over the negated parameter line. The kernel of the colimit cocone
// dualizes slot by slot, reflecting finite bars through 0. The witnessed
// part of the colimit dualizes through a threshold-adapted basis: the dual
// flag at -t is the annihilator of the flag strictly below t, so surviving
// classes reappear with negated filtration levels. Without a colimit this
// is the plain transpose of the reversed chain.
template <class S>
PersistenceModule<S> dual_module(const PersistenceModule<S>& m) {
    require_valid(m);
    int n = m.size();
    PersistenceModule<S> out;
    out.p = m.p;
    out.points.resize(n);
    for (int i = 0; i < n; ++i) out.points[i] = -m.points[n - 1 - i];

    if (!m.has_colimit()) {
        out.dims.resize(n);
        for (int i = 0; i < n; ++i) out.dims[i] = m.dims[n - 1 - i];
        for (int i = 0; i + 1 < n; ++i) out.steps.push_back(transpose(m.steps[n - 2 - i]));
        return out;
    }

    int dinf = m.colimit_dim;
    std::vector<FpMatrix> ker(n), kstep(n > 0 ? n - 1 : 0), flags(n);
    for (int i = 0; i < n; ++i) {
        FpMatrix pi = composite(m, i, n);
        ker[i] = kernel_basis(pi);
        flags[i] = image_basis(pi);
    }
    for (int i = 0; i + 1 < n; ++i) {
        auto x = solve_matrix(ker[i + 1], compose(m.steps[i], ker[i]));
        if (!x) throw std::logic_error("dual: kernel flag not preserved");
        kstep[i] = *x;
    }
    std::vector<int> fdim;
    FpMatrix ew = detail::adapted_flag_basis(m.p, dinf, flags, fdim);
    int fmax = ew.cols;
    auto fprev = [&](int j) {  // flag dimension strictly before original slot n-1-j
        int o = n - 2 - j;
        return o < 0 ? 0 : fdim[o];
    };

    out.dims.resize(n);
    for (int j = 0; j < n; ++j) out.dims[j] = ker[n - 1 - j].cols + (fmax - fprev(j));
    for (int j = 0; j + 1 < n; ++j) {
        int lo_from = fprev(j), lo_to = fprev(j + 1);
        FpMatrix inc(m.p, fmax - lo_to, fmax - lo_from);
        for (int c = 0; c + lo_from < fmax; ++c) inc.at(lo_from + c - lo_to, c) = 1;
        out.steps.push_back(block_diag(transpose(kstep[n - 2 - j]), inc));
    }
    out.colimit_dim = fmax;
    out.colimit_map =
        hconcat(FpMatrix::zero(m.p, fmax, ker[0].cols), detail::selection_above(m.p, fmax, fprev(n - 1)));
    return out;
}

// Smallest sample parameter whose image in the colimit contains a.
template <class S>
std::optional<S> min_appearance(const PersistenceModule<S>& m, const std::vector<uint8_t>& a) {
    require_valid(m);
    if (!m.has_colimit()) throw std::invalid_argument("min_appearance: module has no colimit");
    if (static_cast<int>(a.size()) != m.colimit_dim)
        throw std::invalid_argument("min_appearance: class length mismatch");
    for (int i = 0; i < m.size(); ++i)
        if (membership(a, composite(m, i, m.size()))) return m.points[i];
    return std::nullopt;
}

enum class SpectralKind { Finite, MinusInfinity, NeverWitnessed };

template <class S>
struct SpectralValue {
    SpectralKind kind = SpectralKind::Finite;
    S value{};

    friend bool operator==(const SpectralValue& a, const SpectralValue& b) {
        if (a.kind != b.kind) return false;
        return a.kind != SpectralKind::Finite || a.value == b.value;
    }
};

// Left endpoint of the latest-born infinite bar needed to express a, which
// for these modules coincides with the first appearance parameter.
template <class S>
SpectralValue<S> spectral_invariant_pm(const PersistenceModule<S>& m,
                                       const std::vector<uint8_t>& a) {
    if (!m.has_colimit()) throw std::invalid_argument("spectral invariant: module has no colimit");
    if (static_cast<int>(a.size()) != m.colimit_dim)
        throw std::invalid_argument("spectral invariant: class length mismatch");
    bool zero = is_zero_vec(a);
    if (zero) return {SpectralKind::MinusInfinity, S{}};
    auto t = min_appearance(m, a);
    if (!t) return {SpectralKind::NeverWitnessed, S{}};
    return {SpectralKind::Finite, *t};
}

template <class S>
struct Distance {
    bool infinite = false;
    S value{};

    friend bool operator==(const Distance& a, const Distance& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
};

namespace detail {

template <class S>
S abs_val(const S& x) {
    return x < S{} ? -x : x;
}

// Hopcroft-Karp maximum matching; adj maps left vertices to right vertices.
int max_bipartite_matching(const std::vector<std::vector<int>>& adj, int n_right);

template <class S>
bool bars_matchable(const Bar<S>& x, const Bar<S>& y, const S& eps) {
    if (x.infinite != y.infinite) return false;
    if (abs_val(x.birth - y.birth) > eps) return false;
    if (x.infinite) return true;
    return !(abs_val(x.death - y.death) > eps);
}

template <class S>
bool erasable(const Bar<S>& x, const S& eps) {
    if (x.infinite) return false;
    return !(half(x.death - x.birth) > eps);
}

// Perfect-matching feasibility at tolerance eps, with one diagonal slot per
// opposite bar so unmatched bars pay their half-length.
template <class S>
bool bottleneck_feasible(const std::vector<Bar<S>>& b1, const std::vector<Bar<S>>& b2,
                         const S& eps) {
    int n1 = static_cast<int>(b1.size()), n2 = static_cast<int>(b2.size());
    int left = n1 + n2, right = n2 + n1;
    std::vector<std::vector<int>> adj(left);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j)
            if (bars_matchable(b1[i], b2[j], eps)) adj[i].push_back(j);
        if (erasable(b1[i], eps))
            for (int j = 0; j < n1; ++j) adj[i].push_back(n2 + j);
    }
    for (int i = 0; i < n2; ++i) {
        int li = n1 + i;
        for (int j = 0; j < n2; ++j)
            if (erasable(b2[j], eps)) adj[li].push_back(j);
        for (int j = 0; j < n1; ++j) adj[li].push_back(n2 + j);  // diagonal - diagonal
    }
    return max_bipartite_matching(adj, right) == left;
}

}  // namespace detail

// Matching distance between barcodes: bisection over the finite candidate
// set of endpoint differences and half-lengths, each probe decided by a
// maximum-matching feasibility test. Infinite bars only match infinite
// bars, so mismatched counts give an infinite distance.
template <class S>
Distance<S> bottleneck_distance(const Barcode<S>& x, const Barcode<S>& y) {
    int inf1 = 0, inf2 = 0;
    for (const auto& b : x.bars) inf1 += b.infinite;
    for (const auto& b : y.bars) inf2 += b.infinite;
    if (inf1 != inf2) return {true, S{}};

    std::vector<S> cand;
    cand.push_back(S{});
    for (const auto& b : x.bars)
        if (!b.infinite) cand.push_back(half(b.death - b.birth));
    for (const auto& b : y.bars)
        if (!b.infinite) cand.push_back(half(b.death - b.birth));
    for (const auto& bx : x.bars)
        for (const auto& by : y.bars) {
            if (bx.infinite != by.infinite) continue;
            S d = detail::abs_val(bx.birth - by.birth);
            if (!bx.infinite) {
                S dd = detail::abs_val(bx.death - by.death);
                if (d < dd) d = dd;
            }
            cand.push_back(d);
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    size_t lo = 0, hi = cand.size() - 1;
    if (!detail::bottleneck_feasible(x.bars, y.bars, cand[hi]))
        throw std::logic_error("bottleneck: no feasible tolerance");
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (detail::bottleneck_feasible(x.bars, y.bars, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return {false, cand[lo]};
}

// Interleaving distance through the isometry with the bottleneck distance.
template <class S>
Distance<S> interleaving_distance(const PersistenceModule<S>& m1, const PersistenceModule<S>& m2) {
    if (m1.has_colimit() != m2.has_colimit())
        throw std::invalid_argument("interleaving: colimit presence mismatch");
    return bottleneck_distance(barcode(m1), barcode(m2));
}

}  // namespace gapped
