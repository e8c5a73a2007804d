#pragma once

#include <cstdint>
#include <vector>

#include "regsys/ring.hpp"

namespace regsys {

// Dense row-major matrix over a squarefree modular ring.  Entries are
// canonical residues.  Dimensions of zero are allowed (0x0, 0xm, nx0).
class Mat {
public:
    Mat(Ring ring, int rows, int cols); // zero-filled

    static Mat identity(Ring ring, int n);
    static Mat zero(Ring ring, int rows, int cols) { return Mat(std::move(ring), rows, cols); }
    static Mat from_rows(Ring ring, const std::vector<std::vector<std::int64_t>>& rows);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const Ring& ring() const noexcept { return ring_; }
    std::uint64_t modulus() const noexcept { return ring_->modulus(); }

    std::uint64_t operator()(int i, int j) const { return e_[idx(i, j)]; }
    void set(int i, int j, std::uint64_t canonical) { e_[idx(i, j)] = canonical; }
    const std::vector<std::uint64_t>& entries() const noexcept { return e_; }

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    std::size_t idx(int i, int j) const;

    int rows_, cols_;
    Ring ring_;
    std::vector<std::uint64_t> e_;
};

Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_neg(const Mat& a);
Mat scalar_mul(std::uint64_t s, const Mat& a);
Mat scalar_mul(const RingElement& s, const Mat& a);
Mat transpose(const Mat& a);

inline Mat operator+(const Mat& a, const Mat& b) { return mat_add(a, b); }
inline Mat operator-(const Mat& a, const Mat& b) { return mat_sub(a, b); }
inline Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }

// Block plumbing.  block_compose takes a grid of blocks with consistent
// shapes; block_extract is its partial inverse.
Mat block_compose(const std::vector<std::vector<Mat>>& blocks);
Mat block_extract(const Mat& a, int row0, int col0, int rows, int cols);
Mat hconcat(const Mat& a, const Mat& b);
Mat vconcat(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);

// perm maps new index -> old index; permute_rows(a, perm).row(i) == a.row(perm[i]).
Mat permute_rows(const Mat& a, const std::vector<int>& perm);
Mat permute_cols(const Mat& a, const std::vector<int>& perm);
Mat permute_rows_cols(const Mat& a, const std::vector<int>& row_perm,
                      const std::vector<int>& col_perm);
Mat permutation_matrix(const Ring& ring, const std::vector<int>& perm);

std::uint64_t det(const Mat& a);           // square only
bool is_invertible(const Mat& a);          // det is a unit
Mat invert(const Mat& a);                  // throws naming the failing prime

// Rank of a mod p for each prime factor p, in prime order.
std::vector<int> ranks_per_prime(const Mat& a);

// Idempotent Smith form: u*b*v == diag, with diag = [I-like block of
// idempotents, then zeros].  d holds the nonzero invariant factors
// d_1 | d_2 | ... | d_r (each idempotent, supports decreasing).  u and v are
// invertible but not canonical; only d and diag are.
struct SmithForm {
    std::vector<std::uint64_t> d;
    Mat u, v, diag;
};

SmithForm smith_form(const Mat& b);

} // namespace regsys
