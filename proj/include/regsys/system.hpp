#pragma once

#include <cstdint>
#include <vector>

#include "regsys/matrix.hpp"
#include "regsys/ring.hpp"

namespace regsys {

// A linear control system x' = A x + B u over a squarefree modular ring.
struct LinSys {
    Mat a, b;

    LinSys(Mat a_, Mat b_);

    int state_dim() const noexcept { return a.rows(); }
    int input_dim() const noexcept { return b.cols(); }
    const Ring& ring() const noexcept { return a.ring(); }

    bool operator==(const LinSys& o) const { return a == o.a && b == o.b; }
    bool operator!=(const LinSys& o) const { return !(*this == o); }
};

// Feedback group element: (A, B) -> (P (A + B K) P^{-1}, P B Q).
struct FeedbackTransform {
    Mat p, q, k;

    FeedbackTransform(Mat p_, Mat q_, Mat k_);
};

FeedbackTransform identity_transform(const Ring& ring, int n, int m);
// Group law in application order: apply `first`, then `then`.
FeedbackTransform compose(const FeedbackTransform& first, const FeedbackTransform& then);
FeedbackTransform inverse(const FeedbackTransform& t);

LinSys apply_feedback(const LinSys& s, const FeedbackTransform& t);

// Scalar projection e * (A, B); sends a system to its component over eR.
LinSys project(const LinSys& s, const RingElement& e);

// Small deterministic generator (splitmix64) so seeded runs are reproducible
// across platforms; std::random distributions are not pinned by the standard.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound); // uniform-ish in [0, bound)
    std::uint64_t residue(const Ring& ring);
    std::uint64_t unit(const Ring& ring);
};

Mat random_matrix(Rng& rng, const Ring& ring, int rows, int cols);
// Product of random elementary matrices: invertible by construction.
Mat random_invertible(Rng& rng, const Ring& ring, int n);
FeedbackTransform random_feedback(const Ring& ring, int n, int m, std::uint64_t seed);

// [B | AB | ... | A^{k-1} B], 1 <= k <= state_dim.
Mat reachability_matrix(const LinSys& s, int k);

// Idempotent invariant factors of the reachability matrices for k = 1..n.
std::vector<std::vector<std::uint64_t>> nk_invariant_factors(const LinSys& s);

bool is_reachable(const LinSys& s);

// Feedback-equivalent form with B = [diag(d_1..d_r) 0; 0 0] and row i of A
// orthogonal to d_i for i <= r.  `transform` realizes it exactly.
struct ReducedForm {
    LinSys sys;
    std::vector<std::uint64_t> d;
    FeedbackTransform transform;
};

ReducedForm reduce_form(const LinSys& s);

} // namespace regsys
