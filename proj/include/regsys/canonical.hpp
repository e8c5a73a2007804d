#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regsys/system.hpp"

namespace regsys {

// One summand of the canonical decomposition.  Over the component ring eR the
// system is feedback-equivalent to
//   A = blockdiag(a_hat, c_hat),  B = [b_hat; 0]
// where (a_hat, b_hat) is the Brunovsky pair of `kronecker_indices` and c_hat
// is a similarity normal form of the unreachable part.  `transform`, when
// requested, realizes this exactly on the e-projected input system.
struct CanonicalComponent {
    RingElement e;
    std::vector<int> kronecker_indices;
    Mat a_hat; // n_r x n_r, n_r = sum of indices
    Mat b_hat; // n_r x m
    Mat c_hat; // (n - n_r) x (n - n_r)
    std::optional<FeedbackTransform> transform;
};

struct CanonicalDecomposition {
    Ring ring;
    int n = 0;
    int m = 0;
    std::vector<CanonicalComponent> components; // nonzero e, ascending
};

CanonicalDecomposition canonical_decomposition(const LinSys& s, bool with_transforms = false);

// Full-size pair (blockdiag(a_hat, c_hat), [b_hat; 0]) of one component.
LinSys component_system(const CanonicalComponent& c);

// Orthogonal idempotents splitting off the rank strata of a divisibility
// chain d_1 | d_2 | ... | d_r of idempotents below e.  Returns r+1 elements
// e_0 = e - d_1, e_i = d_i - d_{i+1}, e_r = d_r; entries may be zero.
std::vector<RingElement> idempotent_family(const std::vector<std::uint64_t>& d,
                                           const RingElement& e);

// Brunovsky pair for chain lengths `indices` (non-increasing, positive,
// at most m of them), scaled by e.
std::pair<Mat, Mat> brunovski_block(const std::vector<int>& indices, int m,
                                    const RingElement& e);

// Chain lengths of a system whose first `m` states are fed directly by the
// inputs and whose remainder has chain lengths `inner`: pad `inner` with
// zeros to length m and add 1 to each entry.
std::vector<int> lift_indices(std::vector<int> inner, int m);

// Similarity normal form of e*a: per prime dividing the support of e the
// rational normal form, zero elsewhere, joined by CRT.
Mat similarity_normal_form(const Mat& a, const RingElement& e);

struct SimilarityForm {
    Mat form;
    Mat basis; // invertible; form == basis * (e*a) * basis^{-1}
};
SimilarityForm similarity_normal_form_with_transform(const Mat& a, const RingElement& e);

// Value-level copy of the complete invariant: two systems of equal shape are
// feedback-equivalent iff their summaries compare equal.
struct InvariantItem {
    std::uint64_t e = 0;
    std::vector<int> kronecker_indices;
    std::vector<std::vector<std::uint64_t>> c_hat;

    bool operator==(const InvariantItem& o) const = default;
};

struct InvariantSummary {
    std::uint64_t modulus = 0;
    int n = 0;
    int m = 0;
    std::vector<InvariantItem> items;

    bool operator==(const InvariantSummary& o) const = default;
    std::string key() const;
};

InvariantSummary summary_of(const CanonicalDecomposition& d);
InvariantSummary invariants_of(const LinSys& s);

// Global canonical form for single-input systems: subdiagonal carries the
// chain idempotents d_2..d_n, similarity blocks sit at the chain offsets,
// and B becomes d_1 * e1.
struct SingleInputForm {
    Mat a;
    Mat b;
    std::vector<std::uint64_t> d; // length n, d_1 | d_2 | ... (zeros at the tail)
};

SingleInputForm single_input_canonical(const LinSys& s);

} // namespace regsys
