#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "regsys/matrix.hpp"
#include "regsys/system.hpp"

using namespace regsys;

namespace {

// Independent rank oracle: fraction-free elimination on a copy mod p.
int rank_mod_p(const Mat& a, std::uint64_t p) {
    int rows = a.rows(), cols = a.cols();
    std::vector<std::uint64_t> w(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) w[i * cols + j] = a(i, j) % p;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (w[i * cols + col] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(w[rank * cols + j], w[pivot * cols + j]);
        std::uint64_t inv = 1, base = w[rank * cols + col];
        for (std::uint64_t e = p - 2; e; e >>= 1) { // Fermat inverse
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
        }
        for (int j = 0; j < cols; ++j) w[rank * cols + j] = w[rank * cols + j] * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || w[i * cols + col] == 0) continue;
            std::uint64_t f = w[i * cols + col];
            for (int j = 0; j < cols; ++j)
                w[i * cols + j] = (w[i * cols + j] + (p - f) * w[rank * cols + j]) % p;
        }
        ++rank;
    }
    return rank;
}

Mat example_a(const Ring& r) {
    return Mat::from_rows(r, {{21, 158, 169, 147},
                              {138, 208, 43, 135},
                              {67, 46, 190, 170},
                              {167, 36, 81, 203}});
}

Mat example_b(const Ring& r) {
    return Mat::from_rows(r, {{178, 152, 60, 58},
                              {90, 186, 36, 120},
                              {102, 96, 30, 198},
                              {140, 40, 42, 146}});
}

} // namespace

TEST_CASE("matrix construction and entry handling") {
    Ring r6 = make_ring(6);
    Mat a = Mat::from_rows(r6, {{-1, 7}, {6, 2}});
    CHECK(a(0, 0) == 5);
    CHECK(a(0, 1) == 1);
    CHECK(a(1, 0) == 0);
    CHECK(a(1, 1) == 2);
    CHECK_THROWS_AS(a(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Mat::from_rows(r6, {{1, 2}, {3}}), std::invalid_argument);

    Mat z = Mat::zero(r6, 0, 3);
    CHECK(z.rows() == 0);
    CHECK(z.cols() == 3);
    CHECK(Mat::identity(r6, 2) == Mat::from_rows(r6, {{1, 0}, {0, 1}}));
}

TEST_CASE("arithmetic identities on random matrices") {
    Ring r6 = make_ring(6);
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Mat a = random_matrix(rng, r6, 3, 3);
        Mat b = random_matrix(rng, r6, 3, 3);
        CHECK(Mat::identity(r6, 3) * a == a);
        CHECK(a * Mat::identity(r6, 3) == a);
        CHECK(mat_add(a, mat_neg(a)) == Mat::zero(r6, 3, 3));
        CHECK(mat_sub(a, b) == mat_add(a, mat_neg(b)));
        CHECK(transpose(transpose(a)) == a);
        CHECK(transpose(a * b) == transpose(b) * transpose(a));
        CHECK(scalar_mul(3, mat_add(a, b)) == mat_add(scalar_mul(3, a), scalar_mul(3, b)));
    }
}

TEST_CASE("block compose and extract are mutually inverse") {
    Ring r6 = make_ring(6);
    Rng rng(7);
    Mat a = random_matrix(rng, r6, 2, 2);
    Mat c = random_matrix(rng, r6, 3, 3);
    Mat g = block_compose({{a, Mat::zero(r6, 2, 3)}, {Mat::zero(r6, 3, 2), c}});
    CHECK(g.rows() == 5);
    CHECK(g.cols() == 5);
    CHECK(block_extract(g, 0, 0, 2, 2) == a);
    CHECK(block_extract(g, 2, 2, 3, 3) == c);
    CHECK(block_extract(g, 0, 2, 2, 3) == Mat::zero(r6, 2, 3));
    CHECK(g == block_diag(a, c));

    Mat h = hconcat(a, Mat::zero(r6, 2, 1));
    CHECK(h.cols() == 3);
    CHECK(block_extract(h, 0, 0, 2, 2) == a);
    Mat v = vconcat(a, random_matrix(rng, r6, 1, 2));
    CHECK(v.rows() == 3);
    CHECK(block_extract(v, 0, 0, 2, 2) == a);
}

TEST_CASE("permutation helpers share one convention") {
    Ring r30 = make_ring(30);
    Rng rng(11);
    Mat a = random_matrix(rng, r30, 4, 4);
    std::vector<int> perm = {2, 0, 3, 1};
    Mat p = permutation_matrix(r30, perm);
    CHECK(p * a == permute_rows(a, perm));
    CHECK(a * transpose(p) == permute_cols(a, perm));
    CHECK(permute_rows_cols(a, perm, perm) == p * a * transpose(p));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(permute_rows(a, perm)(i, j) == a(perm[i], j));
    CHECK(is_invertible(p));
    CHECK_THROWS_AS(permute_rows(a, {0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("invertibility matches the determinant-unit criterion") {
    Ring r6 = make_ring(6);
    CHECK(is_invertible(Mat::identity(r6, 3)));
    CHECK(is_invertible(Mat::from_rows(r6, {{5, 0}, {0, 1}})));
    CHECK_FALSE(is_invertible(Mat::from_rows(r6, {{2, 0}, {0, 1}})));

    // exhaustive 2x2 over Z/6 against the ad - bc oracle
    int invertible_count = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            for (int c = 0; c < 6; ++c)
                for (int d = 0; d < 6; ++d) {
                    Mat m = Mat::from_rows(r6, {{a, b}, {c, d}});
                    int det_int = ((a * d - b * c) % 6 + 6) % 6;
                    bool unit = std::gcd(det_int, 6) == 1;
                    CHECK(is_invertible(m) == unit);
                    CHECK(det(m) == static_cast<std::uint64_t>(det_int));
                    if (unit) {
                        ++invertible_count;
                        CHECK(m * invert(m) == Mat::identity(r6, 2));
                        CHECK(invert(m) * m == Mat::identity(r6, 2));
                    }
                }
    // |GL2(Z/6)| = |GL2(F2)| * |GL2(F3)| = 6 * 48
    CHECK(invertible_count == 288);
}

TEST_CASE("inversion on pinned and random values") {
    Ring r6 = make_ring(6);
    CHECK(invert(Mat::identity(r6, 3)) == Mat::identity(r6, 3));
    CHECK(invert(Mat::from_rows(r6, {{5}})) == Mat::from_rows(r6, {{5}}));
    CHECK_THROWS_AS(invert(Mat::from_rows(r6, {{2}})), std::invalid_argument);
    CHECK_THROWS_AS(invert(Mat::zero(r6, 2, 3)), std::invalid_argument);

    Ring r210 = make_ring(210);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Mat p = random_invertible(rng, r210, 4);
        CHECK(is_invertible(p));
        CHECK(p * invert(p) == Mat::identity(r210, 4));
    }
}

TEST_CASE("smith form on pinned examples") {
    Ring r6 = make_ring(6);
    SmithForm one = smith_form(Mat::from_rows(r6, {{1}}));
    CHECK(one.d == std::vector<std::uint64_t>{1});
    CHECK(one.diag == Mat::from_rows(r6, {{1}}));

    SmithForm s = smith_form(Mat::from_rows(r6, {{2, 0}, {0, 3}}));
    CHECK(s.d == std::vector<std::uint64_t>{1});
    CHECK(s.diag == Mat::from_rows(r6, {{1, 0}, {0, 0}}));

    SmithForm z = smith_form(Mat::zero(r6, 2, 2));
    CHECK(z.d.empty());
    CHECK(z.diag == Mat::zero(r6, 2, 2));
}

TEST_CASE("smith form of the four-state example input") {
    Ring r210 = make_ring(210);
    Mat b = example_b(r210);
    SmithForm s = smith_form(b);
    REQUIRE(s.d.size() == 3);
    // the complement of the leading invariant factor is the unreachable idempotent
    CHECK(r210->sub(1, s.d[0]) == 105);
    CHECK(s.d == std::vector<std::uint64_t>{106, 36, 36});
    CHECK(s.u * b * s.v == s.diag);
    CHECK(is_invertible(s.u));
    CHECK(is_invertible(s.v));

    // CRT coherence: d_i mod p == 1 exactly when rank of B mod p is >= i
    for (std::size_t pi = 0; pi < r210->prime_count(); ++pi) {
        std::uint64_t p = r210->primes()[pi];
        int rank = rank_mod_p(b, p);
        for (std::size_t i = 0; i < s.d.size(); ++i)
            CHECK((s.d[i] % p == 1) == (rank >= static_cast<int>(i) + 1));
    }
}

TEST_CASE("smith form properties on random matrices") {
    Ring r210 = make_ring(210);
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(4));
        int cols = 1 + static_cast<int>(rng.below(4));
        Mat b = random_matrix(rng, r210, rows, cols);
        SmithForm s = smith_form(b);
        CHECK(s.u * b * s.v == s.diag);
        CHECK(is_invertible(s.u));
        CHECK(is_invertible(s.v));
        for (std::size_t i = 0; i < s.d.size(); ++i) {
            CHECK(s.d[i] != 0);
            CHECK(r210->is_idempotent(s.d[i]));
            CHECK(s.diag(static_cast<int>(i), static_cast<int>(i)) == s.d[i]);
            // divisibility of idempotents: supports decrease along the chain
            if (i + 1 < s.d.size()) CHECK(r210->mul(s.d[i], s.d[i + 1]) == s.d[i + 1]);
        }
        // diagonal beyond r is zero, off-diagonal everywhere zero
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j || i >= static_cast<int>(s.d.size())) CHECK(s.diag(i, j) == 0);

        // invariant factors do not move under equivalence
        Mat u2 = random_invertible(rng, r210, rows);
        Mat v2 = random_invertible(rng, r210, cols);
        CHECK(smith_form(u2 * b * v2).d == s.d);

        // per-prime rank coherence
        for (std::size_t pi = 0; pi < r210->prime_count(); ++pi) {
            std::uint64_t p = r210->primes()[pi];
            int rank = rank_mod_p(b, p);
            int counted = 0;
            for (std::size_t i = 0; i < s.d.size(); ++i)
                if (s.d[i] % p == 1) ++counted;
            CHECK(counted == rank);
        }
    }
}

TEST_CASE("projection by 105 reproduces the displayed component") {
    Ring r210 = make_ring(210);
    Mat a105 = scalar_mul(105, example_a(r210));
    CHECK(a105 == Mat::from_rows(r210, {{105, 0, 105, 105},
                                        {0, 0, 105, 105},
                                        {105, 0, 0, 0},
                                        {105, 0, 105, 105}}));
    CHECK(scalar_mul(105, example_b(r210)) == Mat::zero(r210, 4, 4));
}

TEST_CASE("ranks per prime agree with the independent oracle") {
    Ring r30 = make_ring(30);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Mat a = random_matrix(rng, r30, 3, 4);
        std::vector<int> got = ranks_per_prime(a);
        REQUIRE(got.size() == r30->prime_count());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got[i] == rank_mod_p(a, r30->primes()[i]));
    }
}
