#include "regsys/canonical.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "regsys/frobenius.hpp"

namespace regsys {

namespace {

fp::FpMat mat_mod_p(const Mat& a, std::uint64_t p) {
    fp::FpMat out(a.rows(), a.cols(), p);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.at(i, j) = a(i, j) % p;
    return out;
}

Mat join_fp_mats(const Ring& ring, const std::vector<fp::FpMat>& per_prime, int rows, int cols) {
    Mat out(ring, rows, cols);
    std::vector<std::uint64_t> res(ring->primes().size());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            for (std::size_t t = 0; t < res.size(); ++t)
                res[t] = per_prime[t].at(i, j);
            out.set(i, j, ring->crt_join(res));
        }
    return out;
}

} // namespace

std::vector<RingElement> idempotent_family(const std::vector<std::uint64_t>& d,
                                           const RingElement& e) {
    const Ring& ring = e.ring();
    if (!is_idempotent(e))
        throw std::invalid_argument("idempotent_family: e must be idempotent");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0 || !ring->is_idempotent(d[i]))
            throw std::invalid_argument(
                "idempotent_family: chain entries must be nonzero idempotents");
        if (ring->mul(e.value(), d[i]) != d[i])
            throw std::invalid_argument("idempotent_family: chain entries must lie under e");
        if (i + 1 < d.size() && ring->mul(d[i], d[i + 1]) != d[i + 1])
            throw std::invalid_argument("idempotent_family: d_i must divide d_{i+1}");
    }
    std::vector<RingElement> out;
    out.reserve(d.size() + 1);
    if (d.empty()) {
        out.push_back(e);
        return out;
    }
    auto elem = [&](std::uint64_t v) { return RingElement(ring, static_cast<std::int64_t>(v)); };
    out.push_back(elem(ring->sub(e.value(), d[0])));
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        out.push_back(elem(ring->sub(d[i], d[i + 1])));
    out.push_back(elem(d.back()));
    return out;
}

std::pair<Mat, Mat> brunovski_block(const std::vector<int>& indices, int m,
                                    const RingElement& e) {
    if (m < 0 || static_cast<int>(indices.size()) > m)
        throw std::invalid_argument("brunovski_block: more chains than inputs");
    int n = 0;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 1)
            throw std::invalid_argument("brunovski_block: chain lengths must be positive");
        if (k > 0 && indices[k] > indices[k - 1])
            throw std::invalid_argument("brunovski_block: chain lengths must be non-increasing");
        n += indices[k];
    }
    const Ring& ring = e.ring();
    Mat a(ring, n, n);
    Mat b(ring, n, m);
    int off = 0;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        b.set(off, static_cast<int>(k), e.value());
        for (int t = 0; t + 1 < indices[k]; ++t)
            a.set(off + t + 1, off + t, e.value());
        off += indices[k];
    }
    return {std::move(a), std::move(b)};
}

std::vector<int> lift_indices(std::vector<int> inner, int m) {
    if (static_cast<int>(inner.size()) > m)
        throw std::invalid_argument("lift_indices: more chains than inputs");
    for (int x : inner)
        if (x < 0)
            throw std::invalid_argument("lift_indices: negative chain length");
    inner.resize(static_cast<std::size_t>(m), 0);
    for (int& x : inner)
        ++x;
    std::sort(inner.begin(), inner.end(), std::greater<int>());
    return inner;
}

SimilarityForm similarity_normal_form_with_transform(const Mat& a, const RingElement& e) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("similarity_normal_form: matrix must be square");
    require_same_ring(a.ring(), e.ring(), "similarity_normal_form");
    if (!is_idempotent(e))
        throw std::invalid_argument("similarity_normal_form: e must be idempotent");
    const Ring& ring = a.ring();
    int n = a.rows();
    std::vector<fp::FpMat> forms, bases;
    for (std::uint64_t p : ring->primes()) {
        if (e.value() % p == 0) {
            forms.emplace_back(n, n, p); // dead prime: zero block
            bases.push_back(fp::FpMat::identity(n, p));
        } else {
            fp::Frobenius fr = fp::frobenius_form(mat_mod_p(a, p));
            bases.push_back(fp::fp_inverse(fr.basis));
            forms.push_back(std::move(fr.form));
        }
    }
    Mat form = join_fp_mats(ring, forms, n, n);
    Mat basis = join_fp_mats(ring, bases, n, n);
    return SimilarityForm{std::move(form), std::move(basis)};
}

Mat similarity_normal_form(const Mat& a, const RingElement& e) {
    return similarity_normal_form_with_transform(a, e).form;
}

namespace {

void decompose_rec(const LinSys& s, const RingElement& e, bool with_transforms,
                   std::vector<CanonicalComponent>& out) {
    const Ring& ring = s.ring();
    int n = s.state_dim();
    int m = s.input_dim();

    if (n == 0) {
        std::optional<FeedbackTransform> t;
        if (with_transforms)
            t = identity_transform(ring, 0, m);
        out.push_back(CanonicalComponent{e, {}, Mat(ring, 0, 0), Mat(ring, 0, m),
                                         Mat(ring, 0, 0), std::move(t)});
        return;
    }

    ReducedForm red = reduce_form(s);
    auto fam = idempotent_family(red.d, e);
    int r = static_cast<int>(red.d.size());

    for (int i = 0; i <= r; ++i) {
        const RingElement& ei = fam[static_cast<std::size_t>(i)];
        if (ei.value() == 0)
            continue;

        if (i == 0) {
            // B vanishes over e_0: pure similarity normal form.
            std::optional<FeedbackTransform> t;
            Mat c_hat(ring, 0, 0);
            if (with_transforms) {
                SimilarityForm sf = similarity_normal_form_with_transform(red.sys.a, ei);
                c_hat = std::move(sf.form);
                FeedbackTransform sim(std::move(sf.basis), Mat::identity(ring, m),
                                      Mat::zero(ring, m, n));
                t = compose(red.transform, sim);
            } else {
                c_hat = similarity_normal_form(red.sys.a, ei);
            }
            out.push_back(CanonicalComponent{ei, {}, Mat(ring, 0, 0), Mat(ring, 0, m),
                                             std::move(c_hat), std::move(t)});
            continue;
        }

        // Over e_i the reduced B is [I_i 0; 0 0] and the first i rows of A are
        // zero, so states i..n-1 form a subsystem driven through column block
        // A21 by the first i states.
        Mat aei = scalar_mul(ei, red.sys.a);
        for (int row = 0; row < i; ++row)
            for (int col = 0; col < n; ++col)
                if (aei(row, col) != 0)
                    throw std::logic_error("canonical_decomposition: reduced rows not cleared");
        Mat b1 = block_extract(aei, i, 0, n - i, i);
        Mat a1 = block_extract(aei, i, i, n - i, n - i);
        LinSys sub(a1, b1);

        std::vector<CanonicalComponent> subs;
        decompose_rec(sub, ei, with_transforms, subs);

        for (auto& sc : subs) {
            std::vector<int> lambda = lift_indices(sc.kronecker_indices, i);
            auto [a_hat, b_hat] = brunovski_block(lambda, m, sc.e);

            std::optional<FeedbackTransform> t;
            if (with_transforms) {
                const FeedbackTransform& st = *sc.transform;
                Mat q1inv = invert(st.q);
                Mat p_lift = block_compose({{q1inv, mat_neg(q1inv * st.k)},
                                            {Mat::zero(ring, n - i, i), st.p}});
                Mat q_lift = block_diag(st.q, Mat::identity(ring, m - i));
                Mat k_lift = vconcat(hconcat(st.k * b1, st.k * a1), Mat::zero(ring, m - i, n));
                FeedbackTransform lift(std::move(p_lift), std::move(q_lift), std::move(k_lift));

                // Reorder states chains-first: head j, its sub-chain, next
                // head, ..., then the unreachable tail.
                const std::vector<int>& kappa = sc.kronecker_indices;
                std::vector<int> perm;
                perm.reserve(static_cast<std::size_t>(n));
                int suboff = 0;
                for (int j = 0; j < i; ++j) {
                    perm.push_back(j);
                    int kj = j < static_cast<int>(kappa.size()) ? kappa[j] : 0;
                    for (int tpos = 0; tpos < kj; ++tpos)
                        perm.push_back(i + suboff + tpos);
                    suboff += kj;
                }
                for (int tail = i + suboff; tail < n; ++tail)
                    perm.push_back(tail);
                FeedbackTransform pi(permutation_matrix(ring, perm), Mat::identity(ring, m),
                                     Mat::zero(ring, m, n));

                t = compose(red.transform, compose(lift, pi));
            }
            out.push_back(CanonicalComponent{sc.e, std::move(lambda), std::move(a_hat),
                                             std::move(b_hat), std::move(sc.c_hat),
                                             std::move(t)});
        }
    }
}

} // namespace

CanonicalDecomposition canonical_decomposition(const LinSys& s, bool with_transforms) {
    const Ring& ring = s.ring();
    RingElement one(ring, 1);
    std::vector<CanonicalComponent> comps;
    decompose_rec(s, one, with_transforms, comps);

    std::uint64_t total = 0;
    for (std::size_t a = 0; a < comps.size(); ++a) {
        total = ring->add(total, comps[a].e.value());
        for (std::size_t b = a + 1; b < comps.size(); ++b)
            if (ring->mul(comps[a].e.value(), comps[b].e.value()) != 0)
                throw std::logic_error("canonical_decomposition: idempotents not orthogonal");
    }
    if (total != one.value())
        throw std::logic_error("canonical_decomposition: idempotents do not sum to 1");

    std::sort(comps.begin(), comps.end(),
              [](const CanonicalComponent& x, const CanonicalComponent& y) {
                  return x.e.value() < y.e.value();
              });

    if (with_transforms) {
        for (const auto& c : comps) {
            LinSys target = component_system(c);
            LinSys got = apply_feedback(project(s, c.e), *c.transform);
            if (!(got == target))
                throw std::logic_error("canonical_decomposition: transform verification failed");
        }
    }

    return CanonicalDecomposition{ring, s.state_dim(), s.input_dim(), std::move(comps)};
}

LinSys component_system(const CanonicalComponent& c) {
    Mat a = block_diag(c.a_hat, c.c_hat);
    Mat b = vconcat(c.b_hat, Mat::zero(c.b_hat.ring(), c.c_hat.rows(), c.b_hat.cols()));
    return LinSys(std::move(a), std::move(b));
}

InvariantSummary summary_of(const CanonicalDecomposition& d) {
    InvariantSummary s;
    s.modulus = d.ring->modulus();
    s.n = d.n;
    s.m = d.m;
    for (const auto& c : d.components) {
        InvariantItem item;
        item.e = c.e.value();
        item.kronecker_indices = c.kronecker_indices;
        item.c_hat.reserve(static_cast<std::size_t>(c.c_hat.rows()));
        for (int i = 0; i < c.c_hat.rows(); ++i) {
            std::vector<std::uint64_t> row(static_cast<std::size_t>(c.c_hat.cols()));
            for (int j = 0; j < c.c_hat.cols(); ++j)
                row[static_cast<std::size_t>(j)] = c.c_hat(i, j);
            item.c_hat.push_back(std::move(row));
        }
        s.items.push_back(std::move(item));
    }
    return s;
}

InvariantSummary invariants_of(const LinSys& s) {
    return summary_of(canonical_decomposition(s, false));
}

std::string InvariantSummary::key() const {
    std::ostringstream os;
    os << modulus << ':' << n << ':' << m;
    for (const auto& it : items) {
        os << '|' << it.e << ';';
        for (std::size_t i = 0; i < it.kronecker_indices.size(); ++i) {
            if (i > 0)
                os << ',';
            os << it.kronecker_indices[i];
        }
        os << ';';
        for (const auto& row : it.c_hat)
            for (std::uint64_t v : row)
                os << v << ',';
    }
    return os.str();
}

SingleInputForm single_input_canonical(const LinSys& s) {
    if (s.input_dim() != 1)
        throw std::invalid_argument("single_input_canonical: system must have one input");
    const Ring& ring = s.ring();
    int n = s.state_dim();
    CanonicalDecomposition dec = canonical_decomposition(s, false);

    Mat a(ring, n, n);
    Mat b(ring, n, 1);
    std::vector<std::uint64_t> d(static_cast<std::size_t>(n), 0);
    for (const auto& c : dec.components) {
        int chi = c.kronecker_indices.empty() ? 0 : c.kronecker_indices[0];
        for (int j = 0; j < chi; ++j)
            d[static_cast<std::size_t>(j)] = ring->add(d[static_cast<std::size_t>(j)], c.e.value());
        for (int i = 0; i < c.c_hat.rows(); ++i)
            for (int j = 0; j < c.c_hat.cols(); ++j)
                a.set(chi + i, chi + j, ring->add(a(chi + i, chi + j), c.c_hat(i, j)));
    }
    for (int j = 1; j < n; ++j)
        a.set(j, j - 1, ring->add(a(j, j - 1), d[static_cast<std::size_t>(j)]));
    if (n > 0)
        b.set(0, 0, d[0]);
    return SingleInputForm{std::move(a), std::move(b), std::move(d)};
}

} // namespace regsys
