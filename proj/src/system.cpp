#include "regsys/system.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace regsys {

namespace {

void require_square(const Mat& m, const char* what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

} // namespace

LinSys::LinSys(Mat a_, Mat b_) : a(std::move(a_)), b(std::move(b_)) {
    require_square(a, "LinSys");
    if (b.rows() != a.rows())
        throw std::invalid_argument("LinSys: B must have as many rows as A");
    require_same_ring(a.ring(), b.ring(), "LinSys");
}

FeedbackTransform::FeedbackTransform(Mat p_, Mat q_, Mat k_)
    : p(std::move(p_)), q(std::move(q_)), k(std::move(k_)) {
    require_square(p, "FeedbackTransform");
    require_square(q, "FeedbackTransform");
    if (k.rows() != q.rows() || k.cols() != p.rows())
        throw std::invalid_argument("FeedbackTransform: K must be m x n");
    require_same_ring(p.ring(), q.ring(), "FeedbackTransform");
    require_same_ring(p.ring(), k.ring(), "FeedbackTransform");
}

FeedbackTransform identity_transform(const Ring& ring, int n, int m) {
    return FeedbackTransform(Mat::identity(ring, n), Mat::identity(ring, m),
                             Mat::zero(ring, m, n));
}

FeedbackTransform compose(const FeedbackTransform& first, const FeedbackTransform& then) {
    if (first.p.rows() != then.p.rows() || first.q.rows() != then.q.rows())
        throw std::invalid_argument("compose: transform sizes differ");
    require_same_ring(first.p.ring(), then.p.ring(), "compose");
    Mat p = then.p * first.p;
    Mat q = first.q * then.q;
    Mat k = mat_add(first.k, first.q * then.k * first.p);
    return FeedbackTransform(std::move(p), std::move(q), std::move(k));
}

FeedbackTransform inverse(const FeedbackTransform& t) {
    Mat pinv = invert(t.p);
    Mat qinv = invert(t.q);
    Mat k = mat_neg(qinv * t.k * pinv);
    return FeedbackTransform(std::move(pinv), std::move(qinv), std::move(k));
}

LinSys apply_feedback(const LinSys& s, const FeedbackTransform& t) {
    if (t.p.rows() != s.state_dim() || t.q.rows() != s.input_dim())
        throw std::invalid_argument("apply_feedback: transform does not fit system");
    require_same_ring(s.ring(), t.p.ring(), "apply_feedback");
    Mat pinv = invert(t.p);
    Mat a = t.p * mat_add(s.a, s.b * t.k) * pinv;
    Mat b = t.p * s.b * t.q;
    return LinSys(std::move(a), std::move(b));
}

LinSys project(const LinSys& s, const RingElement& e) {
    require_same_ring(s.ring(), e.ring(), "project");
    return LinSys(scalar_mul(e, s.a), scalar_mul(e, s.b));
}

std::uint64_t Rng::next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("Rng::below: bound must be positive");
    return next() % bound;
}

std::uint64_t Rng::residue(const Ring& ring) { return below(ring->modulus()); }

std::uint64_t Rng::unit(const Ring& ring) {
    for (;;) {
        std::uint64_t x = residue(ring);
        if (std::gcd(x, ring->modulus()) == 1)
            return x;
    }
}

Mat random_matrix(Rng& rng, const Ring& ring, int rows, int cols) {
    Mat out(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            out.set(i, j, rng.residue(ring));
    return out;
}

Mat random_invertible(Rng& rng, const Ring& ring, int n) {
    Mat out = Mat::identity(ring, n);
    if (n == 0)
        return out;
    int ops = 20 + 2 * n;
    for (int t = 0; t < ops; ++t) {
        if (n >= 2 && rng.below(3) != 0) {
            // Transvection: row i += c * row j.
            int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (i == j)
                continue;
            std::uint64_t c = rng.residue(ring);
            for (int col = 0; col < n; ++col)
                out.set(i, col, ring->add(out(i, col), ring->mul(c, out(j, col))));
        } else {
            // Scale a row by a unit.
            int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            std::uint64_t u = rng.unit(ring);
            for (int col = 0; col < n; ++col)
                out.set(i, col, ring->mul(u, out(i, col)));
        }
    }
    return out;
}

FeedbackTransform random_feedback(const Ring& ring, int n, int m, std::uint64_t seed) {
    Rng rng(seed);
    Mat p = random_invertible(rng, ring, n);
    Mat q = random_invertible(rng, ring, m);
    Mat k = random_matrix(rng, ring, m, n);
    return FeedbackTransform(std::move(p), std::move(q), std::move(k));
}

Mat reachability_matrix(const LinSys& s, int k) {
    if (k < 1 || k > s.state_dim())
        throw std::invalid_argument("reachability_matrix: k must be in [1, n]");
    Mat block = s.b;
    Mat out = block;
    for (int j = 2; j <= k; ++j) {
        block = s.a * block;
        out = hconcat(out, block);
    }
    return out;
}

std::vector<std::vector<std::uint64_t>> nk_invariant_factors(const LinSys& s) {
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(static_cast<std::size_t>(s.state_dim()));
    for (int k = 1; k <= s.state_dim(); ++k)
        out.push_back(smith_form(reachability_matrix(s, k)).d);
    return out;
}

bool is_reachable(const LinSys& s) {
    int n = s.state_dim();
    if (n == 0)
        return true;
    auto d = smith_form(reachability_matrix(s, n)).d;
    return static_cast<int>(d.size()) == n && d.back() == 1;
}

ReducedForm reduce_form(const LinSys& s) {
    SmithForm sf = smith_form(s.b);
    const Ring& ring = s.ring();
    int n = s.state_dim();
    int m = s.input_dim();
    int r = static_cast<int>(sf.d.size());

    Mat a1 = sf.u * s.a * invert(sf.u);
    Mat k0 = Mat::zero(ring, m, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j)
            k0.set(i, j, ring->neg(a1(i, j)));

    FeedbackTransform t(sf.u, sf.v, sf.v * k0 * sf.u);
    LinSys reduced = apply_feedback(s, t);
    return ReducedForm{std::move(reduced), sf.d, std::move(t)};
}

} // namespace regsys
