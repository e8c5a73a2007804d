#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regsys/canonical.hpp"
#include "regsys/system.hpp"

namespace regsys {

struct EquivalenceVerdict {
    bool equivalent = false;
    // Present only when requested and equivalent: apply_feedback(a, *witness) == b.
    std::optional<FeedbackTransform> witness;
};

// Decides feedback equivalence by comparing complete invariants; systems must
// share modulus and dimensions.
EquivalenceVerdict feedback_equivalent(const LinSys& a, const LinSys& b,
                                       bool want_witness = false);

// Faster test valid for reachable systems only: compares the idempotent
// invariant factors of all reachability matrices.  Throws when either system
// is not reachable.
bool reachable_equivalent(const LinSys& a, const LinSys& b);

// Dense encoding of all entries of (A, B) as base-modulus digits; requires the
// state space to fit in 64 bits.
std::uint64_t encode_system(const LinSys& s);
LinSys decode_system(const Ring& ring, int n, int m, std::uint64_t code);

// Exhaustive orbit of s under the feedback group, as sorted encoded systems.
// Intended for tiny instances; throws when the orbit exceeds max_states.
std::vector<std::uint64_t> orbit_bfs(const LinSys& s, std::size_t max_states = 10'000'000);

} // namespace regsys
