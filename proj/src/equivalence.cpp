#include "regsys/equivalence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace regsys {

namespace {

void require_same_shape(const LinSys& a, const LinSys& b, const char* where) {
    require_same_ring(a.ring(), b.ring(), where);
    if (a.state_dim() != b.state_dim() || a.input_dim() != b.input_dim())
        throw std::invalid_argument(std::string(where) + ": systems have different dimensions");
}

FeedbackTransform combine_transforms(const CanonicalDecomposition& dec) {
    const Ring& ring = dec.ring;
    Mat p = Mat::zero(ring, dec.n, dec.n);
    Mat q = Mat::zero(ring, dec.m, dec.m);
    Mat k = Mat::zero(ring, dec.m, dec.n);
    for (const auto& c : dec.components) {
        p = mat_add(p, scalar_mul(c.e, c.transform->p));
        q = mat_add(q, scalar_mul(c.e, c.transform->q));
        k = mat_add(k, scalar_mul(c.e, c.transform->k));
    }
    return FeedbackTransform(std::move(p), std::move(q), std::move(k));
}

} // namespace

EquivalenceVerdict feedback_equivalent(const LinSys& a, const LinSys& b, bool want_witness) {
    require_same_shape(a, b, "feedback_equivalent");
    if (!want_witness) {
        return EquivalenceVerdict{invariants_of(a) == invariants_of(b), std::nullopt};
    }
    CanonicalDecomposition da = canonical_decomposition(a, true);
    CanonicalDecomposition db = canonical_decomposition(b, true);
    if (summary_of(da) != summary_of(db))
        return EquivalenceVerdict{false, std::nullopt};

    // Both transforms send their system to the same canonical representative,
    // so a -> canonical -> b is an exact witness.
    FeedbackTransform ta = combine_transforms(da);
    FeedbackTransform tb = combine_transforms(db);
    FeedbackTransform w = compose(ta, inverse(tb));
    if (!(apply_feedback(a, w) == b))
        throw std::logic_error("feedback_equivalent: witness verification failed");
    return EquivalenceVerdict{true, std::move(w)};
}

bool reachable_equivalent(const LinSys& a, const LinSys& b) {
    require_same_shape(a, b, "reachable_equivalent");
    if (!is_reachable(a) || !is_reachable(b))
        throw std::invalid_argument("reachable_equivalent: systems must be reachable");
    return nk_invariant_factors(a) == nk_invariant_factors(b);
}

namespace {

int code_digits(int n, int m) { return n * n + n * m; }

void require_encodable(const Ring& ring, int n, int m) {
    unsigned __int128 cap = 1;
    for (int i = 0; i < code_digits(n, m); ++i) {
        cap *= ring->modulus();
        if (cap > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::invalid_argument("encode_system: state space does not fit in 64 bits");
    }
}

} // namespace

std::uint64_t encode_system(const LinSys& s) {
    const Ring& ring = s.ring();
    int n = s.state_dim(), m = s.input_dim();
    require_encodable(ring, n, m);
    std::uint64_t mod = ring->modulus();
    std::uint64_t code = 0, place = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            code += s.a(i, j) * place;
            place *= mod;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            code += s.b(i, j) * place;
            place *= mod;
        }
    return code;
}

LinSys decode_system(const Ring& ring, int n, int m, std::uint64_t code) {
    require_encodable(ring, n, m);
    std::uint64_t mod = ring->modulus();
    Mat a(ring, n, n);
    Mat b(ring, n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a.set(i, j, code % mod);
            code /= mod;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            b.set(i, j, code % mod);
            code /= mod;
        }
    if (code != 0)
        throw std::invalid_argument("decode_system: code out of range");
    return LinSys(std::move(a), std::move(b));
}

std::vector<std::uint64_t> orbit_bfs(const LinSys& s, std::size_t max_states) {
    const Ring& ring = s.ring();
    int n = s.state_dim(), m = s.input_dim();
    require_encodable(ring, n, m);
    const std::uint64_t mod = ring->modulus();

    std::vector<std::uint64_t> units; // units other than 1
    for (std::uint64_t u = 2; u < mod; ++u)
        if (std::gcd(u, mod) == 1)
            units.push_back(u);

    // Raw layout: A row-major, then B row-major.
    const int na = n * n;
    const int digits = na + n * m;
    auto ia = [n](int i, int j) { return i * n + j; };
    auto ib = [na, m](int i, int j) { return na + i * m + j; };

    auto enc = [&](const std::vector<std::uint64_t>& w) {
        std::uint64_t code = 0, place = 1;
        for (int t = 0; t < digits; ++t) {
            code += w[static_cast<std::size_t>(t)] * place;
            place *= mod;
        }
        return code;
    };
    auto dec = [&](std::uint64_t code) {
        std::vector<std::uint64_t> w(static_cast<std::size_t>(digits));
        for (int t = 0; t < digits; ++t) {
            w[static_cast<std::size_t>(t)] = code % mod;
            code /= mod;
        }
        return w;
    };

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> work;
    auto visit = [&](const std::vector<std::uint64_t>& w) {
        std::uint64_t code = enc(w);
        if (seen.insert(code).second) {
            if (seen.size() > max_states)
                throw std::runtime_error("orbit_bfs: orbit exceeds state limit");
            work.push_back(code);
        }
    };

    visit(dec(encode_system(s)));
    std::vector<std::uint64_t> w;
    while (!work.empty()) {
        std::uint64_t code = work.back();
        work.pop_back();
        const std::vector<std::uint64_t> cur = dec(code);

        // State transvections P = I + c E_ij: rows/cols of A, rows of B.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                for (std::uint64_t c = 1; c < mod; ++c) {
                    w = cur;
                    for (int t = 0; t < n; ++t)
                        w[ia(i, t)] = ring->add(w[ia(i, t)], ring->mul(c, w[ia(j, t)]));
                    for (int t = 0; t < n; ++t)
                        w[ia(t, j)] = ring->sub(w[ia(t, j)], ring->mul(c, w[ia(t, i)]));
                    for (int t = 0; t < m; ++t)
                        w[ib(i, t)] = ring->add(w[ib(i, t)], ring->mul(c, w[ib(j, t)]));
                    visit(w);
                }
            }
        // State scalings P = diag(.., u, ..).
        for (int i = 0; i < n; ++i)
            for (std::uint64_t u : units) {
                std::uint64_t uinv = ring->inv(u);
                w = cur;
                for (int t = 0; t < n; ++t)
                    w[ia(i, t)] = ring->mul(u, w[ia(i, t)]);
                for (int t = 0; t < n; ++t)
                    w[ia(t, i)] = ring->mul(uinv, w[ia(t, i)]);
                for (int t = 0; t < m; ++t)
                    w[ib(i, t)] = ring->mul(u, w[ib(i, t)]);
                visit(w);
            }
        // Input scalings and transvections act on columns of B.
        for (int j = 0; j < m; ++j)
            for (std::uint64_t u : units) {
                w = cur;
                for (int t = 0; t < n; ++t)
                    w[ib(t, j)] = ring->mul(u, w[ib(t, j)]);
                visit(w);
            }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j)
                    continue;
                for (std::uint64_t c = 1; c < mod; ++c) {
                    w = cur;
                    for (int t = 0; t < n; ++t)
                        w[ib(t, j)] = ring->add(w[ib(t, j)], ring->mul(c, w[ib(t, i)]));
                    visit(w);
                }
            }
        // Feedback K = c E_jl adds c * (B column j) to A column l.
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < n; ++l)
                for (std::uint64_t c = 1; c < mod; ++c) {
                    w = cur;
                    for (int t = 0; t < n; ++t)
                        w[ia(t, l)] = ring->add(w[ia(t, l)], ring->mul(c, w[ib(t, j)]));
                    visit(w);
                }
    }

    std::vector<std::uint64_t> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace regsys
