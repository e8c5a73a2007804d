#include "regsys/matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "regsys/modarith.hpp"

namespace regsys {

namespace {

void require_dims(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// --- dense elimination over one prime field -------------------------------

struct FpGrid {
    int rows = 0, cols = 0;
    std::uint64_t p = 2;
    std::vector<std::uint64_t> a;

    std::uint64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::uint64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static FpGrid reduce(const Mat& m, std::uint64_t p) {
        FpGrid g;
        g.rows = m.rows();
        g.cols = m.cols();
        g.p = p;
        g.a.resize(static_cast<std::size_t>(g.rows) * g.cols);
        for (int i = 0; i < g.rows; ++i)
            for (int j = 0; j < g.cols; ++j)
                g.at(i, j) = m(i, j) % p;
        return g;
    }

    static FpGrid identity(int n, std::uint64_t p) {
        FpGrid g;
        g.rows = g.cols = n;
        g.p = p;
        g.a.assign(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) g.at(i, i) = 1 % p;
        return g;
    }

    void swap_rows(int i, int j) {
        for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
    }
    void scale_row(int i, std::uint64_t s) {
        for (int c = 0; c < cols; ++c) at(i, c) = mul_mod(at(i, c), s, p);
    }
    void scale_col(int j, std::uint64_t s) {
        for (int r = 0; r < rows; ++r) at(r, j) = mul_mod(at(r, j), s, p);
    }
    // row_i -= c * row_j
    void row_axpy(int i, int j, std::uint64_t c) {
        for (int k = 0; k < cols; ++k)
            at(i, k) = sub_mod(at(i, k), mul_mod(c, at(j, k), p), p);
    }
    // col_i -= c * col_j
    void col_axpy(int i, int j, std::uint64_t c) {
        for (int k = 0; k < rows; ++k)
            at(k, i) = sub_mod(at(k, i), mul_mod(c, at(k, j), p), p);
    }
};

// Two-sided elimination to [I_r 0; 0 0].  Pivot search is row-major (first
// nonzero entry of the trailing block); the pivot is normalized with a column
// scaling so u stays a product of swaps and transvections.  Returns the rank.
int smith_mod_p(FpGrid& a, FpGrid* u, FpGrid* v) {
    const std::uint64_t p = a.p;
    int k = 0;
    int bound = std::min(a.rows, a.cols);
    while (k < bound) {
        int pi = -1, pj = -1;
        for (int i = k; i < a.rows && pi < 0; ++i)
            for (int j = k; j < a.cols; ++j)
                if (a.at(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        if (pi != k) { a.swap_rows(k, pi); if (u) u->swap_rows(k, pi); }
        if (pj != k) { a.swap_cols(k, pj); if (v) v->swap_cols(k, pj); }
        std::uint64_t s = inv_mod(a.at(k, k), p);
        a.scale_col(k, s);
        if (v) v->scale_col(k, s);
        for (int i = k + 1; i < a.rows; ++i) {
            std::uint64_t c = a.at(i, k);
            if (c) { a.row_axpy(i, k, c); if (u) u->row_axpy(i, k, c); }
        }
        for (int j = k + 1; j < a.cols; ++j) {
            std::uint64_t c = a.at(k, j);
            if (c) { a.col_axpy(j, k, c); if (v) v->col_axpy(j, k, c); }
        }
        ++k;
    }
    return k;
}

// Gauss-Jordan inverse over F_p; returns false when singular.
bool invert_mod_p(FpGrid a, FpGrid& out) {
    const std::uint64_t p = a.p;
    const int n = a.rows;
    out = FpGrid::identity(n, p);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) return false;
        if (piv != k) { a.swap_rows(k, piv); out.swap_rows(k, piv); }
        std::uint64_t s = inv_mod(a.at(k, k), p);
        a.scale_row(k, s);
        out.scale_row(k, s);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            std::uint64_t c = a.at(i, k);
            if (c) { a.row_axpy(i, k, c); out.row_axpy(i, k, c); }
        }
    }
    return true;
}

std::uint64_t det_mod_p(FpGrid a) {
    const std::uint64_t p = a.p;
    const int n = a.rows;
    std::uint64_t d = 1 % p;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) { a.swap_rows(k, piv); d = neg_mod(d, p); }
        std::uint64_t pivot = a.at(k, k);
        d = mul_mod(d, pivot, p);
        std::uint64_t s = inv_mod(pivot, p);
        for (int i = k + 1; i < n; ++i) {
            std::uint64_t c = mul_mod(a.at(i, k), s, p);
            if (c) a.row_axpy(i, k, c);
        }
    }
    return d;
}

Mat join_grids(const Ring& ring, const std::vector<FpGrid>& per_prime, int rows, int cols) {
    Mat out(ring, rows, cols);
    std::vector<std::uint64_t> residues(ring->prime_count());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            for (std::size_t t = 0; t < per_prime.size(); ++t)
                residues[t] = per_prime[t].at(i, j);
            out.set(i, j, ring->crt_join(residues));
        }
    return out;
}

} // namespace

// --- Mat basics ------------------------------------------------------------

Mat::Mat(Ring ring, int rows, int cols) : rows_(rows), cols_(cols), ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("Mat: null ring");
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    e_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

std::size_t Mat::idx(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::invalid_argument("Mat: index out of range");
    return static_cast<std::size_t>(i) * cols_ + j;
}

Mat Mat::identity(Ring ring, int n) {
    Mat m(std::move(ring), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1 % m.modulus());
    return m;
}

Mat Mat::from_rows(Ring ring, const std::vector<std::vector<std::int64_t>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Mat m(std::move(ring), r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("Mat::from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, m.ring()->reduce(rows[i][j]));
    }
    return m;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ &&
           ring_->modulus() == o.ring_->modulus() && e_ == o.e_;
}

// --- arithmetic -------------------------------------------------------------

Mat mat_add(const Mat& a, const Mat& b) {
    require_same_ring(a.ring(), b.ring(), "mat_add");
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "mat_add: shape mismatch");
    Mat out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.set(i, j, a.ring()->add(a(i, j), b(i, j)));
    return out;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    require_same_ring(a.ring(), b.ring(), "mat_sub");
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "mat_sub: shape mismatch");
    Mat out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.set(i, j, a.ring()->sub(a(i, j), b(i, j)));
    return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    require_same_ring(a.ring(), b.ring(), "mat_mul");
    require_dims(a.cols() == b.rows(), "mat_mul: inner dimension mismatch");
    Mat out(a.ring(), a.rows(), b.cols());
    const std::uint64_t m = a.modulus();
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            std::uint64_t aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                std::uint64_t cur = out(i, j);
                out.set(i, j, add_mod(cur, mul_mod(aik, b(k, j), m), m));
            }
        }
    return out;
}

Mat mat_neg(const Mat& a) {
    Mat out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.ring()->neg(a(i, j)));
    return out;
}

Mat scalar_mul(std::uint64_t s, const Mat& a) {
    Mat out(a.ring(), a.rows(), a.cols());
    s %= a.modulus();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a.ring()->mul(s, a(i, j)));
    return out;
}

Mat scalar_mul(const RingElement& s, const Mat& a) {
    require_same_ring(s.ring(), a.ring(), "scalar_mul");
    return scalar_mul(s.value(), a);
}

Mat transpose(const Mat& a) {
    Mat out(a.ring(), a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.set(j, i, a(i, j));
    return out;
}

// --- blocks and permutations -------------------------------------------------

Mat block_compose(const std::vector<std::vector<Mat>>& blocks) {
    require_dims(!blocks.empty() && !blocks[0].empty(), "block_compose: empty grid");
    const std::size_t bc = blocks[0].size();
    const Ring& ring = blocks[0][0].ring();

    std::vector<int> row_h(blocks.size()), col_w(bc);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        require_dims(blocks[i].size() == bc, "block_compose: ragged grid");
        row_h[i] = blocks[i][0].rows();
    }
    for (std::size_t j = 0; j < bc; ++j) col_w[j] = blocks[0][j].cols();

    int rows = 0, cols = 0;
    for (int h : row_h) rows += h;
    for (int w : col_w) cols += w;

    Mat out(ring, rows, cols);
    int r0 = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        int c0 = 0;
        for (std::size_t j = 0; j < bc; ++j) {
            const Mat& b = blocks[i][j];
            require_same_ring(ring, b.ring(), "block_compose");
            require_dims(b.rows() == row_h[i] && b.cols() == col_w[j],
                         "block_compose: inconsistent block shape");
            for (int r = 0; r < b.rows(); ++r)
                for (int c = 0; c < b.cols(); ++c) out.set(r0 + r, c0 + c, b(r, c));
            c0 += col_w[j];
        }
        r0 += row_h[i];
    }
    return out;
}

Mat block_extract(const Mat& a, int row0, int col0, int rows, int cols) {
    require_dims(row0 >= 0 && col0 >= 0 && rows >= 0 && cols >= 0 &&
                     row0 + rows <= a.rows() && col0 + cols <= a.cols(),
                 "block_extract: block out of range");
    Mat out(a.ring(), rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.set(i, j, a(row0 + i, col0 + j));
    return out;
}

Mat hconcat(const Mat& a, const Mat& b) { return block_compose({{a, b}}); }
Mat vconcat(const Mat& a, const Mat& b) { return block_compose({{a}, {b}}); }

Mat block_diag(const Mat& a, const Mat& b) {
    return block_compose({{a, Mat::zero(a.ring(), a.rows(), b.cols())},
                          {Mat::zero(a.ring(), b.rows(), a.cols()), b}});
}

namespace {
void check_perm(const std::vector<int>& perm, int n, const char* what) {
    require_dims(static_cast<int>(perm.size()) == n, what);
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument(what);
        seen[v] = 1;
    }
}
} // namespace

Mat permute_rows(const Mat& a, const std::vector<int>& perm) {
    check_perm(perm, a.rows(), "permute_rows: not a permutation");
    Mat out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a(perm[i], j));
    return out;
}

Mat permute_cols(const Mat& a, const std::vector<int>& perm) {
    check_perm(perm, a.cols(), "permute_cols: not a permutation");
    Mat out(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.set(i, j, a(i, perm[j]));
    return out;
}

Mat permute_rows_cols(const Mat& a, const std::vector<int>& row_perm,
                      const std::vector<int>& col_perm) {
    return permute_cols(permute_rows(a, row_perm), col_perm);
}

Mat permutation_matrix(const Ring& ring, const std::vector<int>& perm) {
    check_perm(perm, static_cast<int>(perm.size()), "permutation_matrix: not a permutation");
    Mat out(ring, static_cast<int>(perm.size()), static_cast<int>(perm.size()));
    for (std::size_t i = 0; i < perm.size(); ++i)
        out.set(static_cast<int>(i), perm[i], 1 % ring->modulus());
    return out;
}

// --- invertibility / determinant --------------------------------------------

std::uint64_t det(const Mat& a) {
    require_dims(a.rows() == a.cols(), "det: matrix not square");
    const Ring& ring = a.ring();
    std::vector<std::uint64_t> residues;
    residues.reserve(ring->prime_count());
    for (std::uint64_t p : ring->primes())
        residues.push_back(det_mod_p(FpGrid::reduce(a, p)));
    return ring->crt_join(residues);
}

bool is_invertible(const Mat& a) {
    return a.ring()->is_unit(det(a));
}

Mat invert(const Mat& a) {
    require_dims(a.rows() == a.cols(), "invert: matrix not square");
    const Ring& ring = a.ring();
    std::vector<FpGrid> inverses;
    inverses.reserve(ring->prime_count());
    for (std::uint64_t p : ring->primes()) {
        FpGrid inv;
        if (!invert_mod_p(FpGrid::reduce(a, p), inv))
            throw std::invalid_argument("invert: matrix is singular modulo " + std::to_string(p));
        inverses.push_back(std::move(inv));
    }
    return join_grids(ring, inverses, a.rows(), a.cols());
}

std::vector<int> ranks_per_prime(const Mat& a) {
    std::vector<int> out;
    out.reserve(a.ring()->prime_count());
    for (std::uint64_t p : a.ring()->primes()) {
        FpGrid g = FpGrid::reduce(a, p);
        out.push_back(smith_mod_p(g, nullptr, nullptr));
    }
    return out;
}

// --- idempotent Smith form ----------------------------------------------------

SmithForm smith_form(const Mat& b) {
    const Ring& ring = b.ring();
    const std::size_t np = ring->prime_count();

    std::vector<FpGrid> us, vs;
    std::vector<int> ranks(np);
    us.reserve(np);
    vs.reserve(np);
    for (std::size_t t = 0; t < np; ++t) {
        std::uint64_t p = ring->primes()[t];
        FpGrid g = FpGrid::reduce(b, p);
        FpGrid u = FpGrid::identity(b.rows(), p);
        FpGrid v = FpGrid::identity(b.cols(), p);
        ranks[t] = smith_mod_p(g, &u, &v);
        us.push_back(std::move(u));
        vs.push_back(std::move(v));
    }

    int r = 0;
    for (int rk : ranks) r = std::max(r, rk);

    SmithForm out{{}, join_grids(ring, us, b.rows(), b.rows()),
                  join_grids(ring, vs, b.cols(), b.cols()), Mat(ring, 0, 0)};
    out.d.reserve(r);
    std::vector<std::uint64_t> residues(np);
    for (int i = 0; i < r; ++i) {
        for (std::size_t t = 0; t < np; ++t) residues[t] = ranks[t] > i ? 1 : 0;
        out.d.push_back(ring->crt_join(residues));
    }
    out.diag = mat_mul(mat_mul(out.u, b), out.v);
    return out;
}

} // namespace regsys
