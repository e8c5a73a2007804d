#include "regsys/frobenius.hpp"

#include <algorithm>
#include <stdexcept>

#include "regsys/modarith.hpp"

namespace regsys::fp {

FpMat::FpMat(int r, int c, std::uint64_t prime) : rows(r), cols(c), p(prime) {
    a.assign(static_cast<std::size_t>(r) * c, 0);
}

FpMat FpMat::identity(int n, std::uint64_t prime) {
    FpMat m(n, n, prime);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMat fp_mul(const FpMat& x, const FpMat& y) {
    if (x.cols != y.rows || x.p != y.p)
        throw std::invalid_argument("fp_mul: shape or prime mismatch");
    FpMat out(x.rows, y.cols, x.p);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            std::uint64_t c = x.at(i, k);
            if (!c) continue;
            for (int j = 0; j < y.cols; ++j)
                out.at(i, j) = add_mod(out.at(i, j), mul_mod(c, y.at(k, j), x.p), x.p);
        }
    return out;
}

FpMat fp_inverse(const FpMat& x) {
    if (x.rows != x.cols) throw std::invalid_argument("fp_inverse: not square");
    const std::uint64_t p = x.p;
    const int n = x.rows;
    FpMat a = x;
    FpMat out = FpMat::identity(n, p);
    auto row_op = [&](FpMat& m, int i, int j, std::uint64_t c) {
        for (int k = 0; k < n; ++k)
            m.at(i, k) = sub_mod(m.at(i, k), mul_mod(c, m.at(j, k), p), p);
    };
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a.at(i, k)) { piv = i; break; }
        if (piv < 0) throw std::invalid_argument("fp_inverse: singular matrix");
        if (piv != k)
            for (int c = 0; c < n; ++c) {
                std::swap(a.at(k, c), a.at(piv, c));
                std::swap(out.at(k, c), out.at(piv, c));
            }
        std::uint64_t s = inv_mod(a.at(k, k), p);
        for (int c = 0; c < n; ++c) {
            a.at(k, c) = mul_mod(a.at(k, c), s, p);
            out.at(k, c) = mul_mod(out.at(k, c), s, p);
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            std::uint64_t c = a.at(i, k);
            if (c) { row_op(a, i, k, c); row_op(out, i, k, c); }
        }
    }
    return out;
}

std::vector<std::uint64_t> fp_matvec(const FpMat& x, const std::vector<std::uint64_t>& v) {
    if (static_cast<int>(v.size()) != x.cols)
        throw std::invalid_argument("fp_matvec: size mismatch");
    std::vector<std::uint64_t> out(x.rows, 0);
    for (int i = 0; i < x.rows; ++i) {
        std::uint64_t acc = 0;
        for (int j = 0; j < x.cols; ++j)
            acc = add_mod(acc, mul_mod(x.at(i, j), v[j], x.p), x.p);
        out[i] = acc;
    }
    return out;
}

// --- polynomials ------------------------------------------------------------

int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_make_monic(const Poly& f, std::uint64_t p) {
    Poly g = poly_trim(f);
    if (g.empty()) return g;
    std::uint64_t s = inv_mod(g.back(), p);
    for (auto& c : g) c = mul_mod(c, s, p);
    return g;
}

Poly poly_add(const Poly& f, const Poly& g, std::uint64_t p) {
    Poly out(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t a = i < f.size() ? f[i] : 0;
        std::uint64_t b = i < g.size() ? g[i] : 0;
        out[i] = add_mod(a, b, p);
    }
    return poly_trim(std::move(out));
}

Poly poly_sub(const Poly& f, const Poly& g, std::uint64_t p) {
    Poly out(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t a = i < f.size() ? f[i] : 0;
        std::uint64_t b = i < g.size() ? g[i] : 0;
        out[i] = sub_mod(a, b, p);
    }
    return poly_trim(std::move(out));
}

Poly poly_mul(const Poly& f, const Poly& g, std::uint64_t p) {
    if (f.empty() || g.empty()) return {};
    Poly out(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i]) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            out[i + j] = add_mod(out[i + j], mul_mod(f[i], g[j], p), p);
    }
    return poly_trim(std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g, std::uint64_t p) {
    Poly gg = poly_trim(g);
    if (gg.empty()) throw std::invalid_argument("poly_divmod: division by zero");
    Poly rem = poly_trim(f);
    int dg = poly_deg(gg);
    if (poly_deg(rem) < dg) return {{}, rem};
    Poly quo(rem.size() - gg.size() + 1, 0);
    std::uint64_t lead_inv = inv_mod(gg.back(), p);
    for (int i = poly_deg(rem); i >= dg; --i) {
        std::uint64_t c = rem[static_cast<std::size_t>(i)];
        if (!c) continue;
        std::uint64_t q = mul_mod(c, lead_inv, p);
        quo[static_cast<std::size_t>(i - dg)] = q;
        for (int j = 0; j <= dg; ++j) {
            auto& slot = rem[static_cast<std::size_t>(i - dg + j)];
            slot = sub_mod(slot, mul_mod(q, gg[static_cast<std::size_t>(j)], p), p);
        }
    }
    return {poly_trim(std::move(quo)), poly_trim(std::move(rem))};
}

Poly poly_gcd(Poly f, Poly g, std::uint64_t p) {
    f = poly_trim(std::move(f));
    g = poly_trim(std::move(g));
    while (!g.empty()) {
        Poly r = poly_divmod(f, g, p).second;
        f = std::move(g);
        g = std::move(r);
    }
    return poly_make_monic(f, p);
}

Poly poly_exact_div(const Poly& f, const Poly& g, std::uint64_t p) {
    auto [q, r] = poly_divmod(f, g, p);
    if (!r.empty()) throw std::invalid_argument("poly_exact_div: division is not exact");
    return q;
}

bool poly_divides(const Poly& g, const Poly& f, std::uint64_t p) {
    if (poly_trim(g).empty()) return poly_trim(f).empty();
    return poly_divmod(f, g, p).second.empty();
}

std::vector<std::uint64_t> poly_apply(const FpMat& m, const Poly& f,
                                      const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> out(v.size(), 0);
    for (int i = poly_deg(f); i >= 0; --i) {
        out = fp_matvec(m, out);
        std::uint64_t c = f[static_cast<std::size_t>(i)];
        if (c)
            for (std::size_t k = 0; k < v.size(); ++k)
                out[k] = add_mod(out[k], mul_mod(c, v[k], m.p), m.p);
    }
    return out;
}

// --- annihilators -------------------------------------------------------------

namespace {
struct EchelonRow {
    std::vector<std::uint64_t> vec;  // normalized: vec[pivot] == 1
    std::vector<std::uint64_t> comb; // combination over the Krylov vectors
    int pivot;
};
} // namespace

Poly vector_annihilator(const FpMat& m, const std::vector<std::uint64_t>& v) {
    const std::uint64_t p = m.p;
    const int n = m.rows;
    std::vector<EchelonRow> ech;
    std::vector<std::uint64_t> w = v;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) w = fp_matvec(m, w);
        std::vector<std::uint64_t> r = w;
        std::vector<std::uint64_t> comb(static_cast<std::size_t>(k) + 1, 0);
        comb[static_cast<std::size_t>(k)] = 1;
        for (const EchelonRow& row : ech) {
            std::uint64_t c = r[static_cast<std::size_t>(row.pivot)];
            if (!c) continue;
            for (int j = 0; j < n; ++j)
                r[static_cast<std::size_t>(j)] =
                    sub_mod(r[static_cast<std::size_t>(j)],
                            mul_mod(c, row.vec[static_cast<std::size_t>(j)], p), p);
            for (std::size_t j = 0; j < row.comb.size(); ++j)
                comb[j] = sub_mod(comb[j], mul_mod(c, row.comb[j], p), p);
        }
        bool zero = std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
        if (zero) return poly_trim(std::move(comb)); // monic: comb[k] stayed 1
        int piv = 0;
        while (r[static_cast<std::size_t>(piv)] == 0) ++piv;
        std::uint64_t s = inv_mod(r[static_cast<std::size_t>(piv)], p);
        for (auto& x : r) x = mul_mod(x, s, p);
        for (auto& x : comb) x = mul_mod(x, s, p);
        ech.push_back({std::move(r), std::move(comb), piv});
    }
    throw std::logic_error("vector_annihilator: no dependence found");
}

std::pair<Poly, Poly> coprime_split(const Poly& f, const Poly& g, std::uint64_t p) {
    Poly d = poly_gcd(f, g, p);
    if (poly_deg(d) <= 0) return {poly_make_monic(f, p), poly_make_monic(g, p)};
    Poly g0 = poly_exact_div(g, d, p); // carries exactly the primes where g wins

    // Strip from f every irreducible that divides g0 (those belong to g's side).
    Poly f1 = poly_make_monic(f, p);
    for (;;) {
        Poly t = poly_gcd(f1, g0, p);
        if (poly_deg(t) <= 0) break;
        f1 = poly_exact_div(f1, t, p);
    }
    // Strip from g every irreducible retained in f1.
    Poly g1 = poly_make_monic(g, p);
    for (;;) {
        Poly t = poly_gcd(g1, f1, p);
        if (poly_deg(t) <= 0) break;
        g1 = poly_exact_div(g1, t, p);
    }
    return {f1, g1};
}

std::pair<std::vector<std::uint64_t>, Poly> maximal_vector(const FpMat& m) {
    const std::uint64_t p = m.p;
    const int n = m.rows;
    if (n == 0) return {{}, Poly{1}};

    std::vector<std::uint64_t> v(static_cast<std::size_t>(n), 0);
    v[0] = 1;
    Poly f = vector_annihilator(m, v);
    for (int i = 1; i < n && poly_deg(f) < n; ++i) {
        std::vector<std::uint64_t> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        Poly g = vector_annihilator(m, e);
        if (poly_divides(g, f, p)) continue; // lcm unchanged
        auto [f1, g1] = coprime_split(f, g, p);
        std::vector<std::uint64_t> a = poly_apply(m, poly_exact_div(f, f1, p), v);
        std::vector<std::uint64_t> b = poly_apply(m, poly_exact_div(g, g1, p), e);
        for (int k = 0; k < n; ++k)
            a[static_cast<std::size_t>(k)] =
                add_mod(a[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(k)], p);
        v = std::move(a);
        f = poly_mul(f1, g1, p);
    }
    if (vector_annihilator(m, v) != f)
        throw std::logic_error("maximal_vector: combined annihilator mismatch");
    return {v, f};
}

FpMat companion(const Poly& f, std::uint64_t p) {
    int d = poly_deg(f);
    if (d < 1) throw std::invalid_argument("companion: degree must be >= 1");
    FpMat c(d, d, p);
    for (int i = 0; i + 1 < d; ++i) c.at(i + 1, i) = 1;
    for (int i = 0; i < d; ++i) c.at(i, d - 1) = neg_mod(f[static_cast<std::size_t>(i)], p);
    return c;
}

// --- rational normal form -------------------------------------------------------

namespace {

struct CyclicBlock {
    std::vector<std::uint64_t> gen; // generator vector
    Poly factor;                    // its annihilator
};

// Invariant factors in descending divisibility order (minimal polynomial
// first), each with a generator of the corresponding cyclic summand.
std::vector<CyclicBlock> rcf_blocks(const FpMat& m) {
    const std::uint64_t p = m.p;
    const int n = m.rows;
    if (n == 0) return {};

    auto [v1, mu] = maximal_vector(m);
    const int d1 = poly_deg(mu);

    // Basis change: first d1 columns span the cyclic subspace of v1, the rest
    // are standard vectors completing it.
    FpMat t0(n, n, p);
    {
        std::vector<std::uint64_t> w = v1;
        for (int j = 0; j < d1; ++j) {
            if (j > 0) w = fp_matvec(m, w);
            for (int i = 0; i < n; ++i) t0.at(i, j) = w[static_cast<std::size_t>(i)];
        }
        // Greedy completion by incremental elimination.
        std::vector<std::vector<std::uint64_t>> ech; // rows of reduced chosen columns
        std::vector<int> pivots;
        auto try_insert = [&](std::vector<std::uint64_t> col) -> bool {
            for (std::size_t r = 0; r < ech.size(); ++r) {
                std::uint64_t c = col[static_cast<std::size_t>(pivots[r])];
                if (!c) continue;
                for (int k = 0; k < n; ++k)
                    col[static_cast<std::size_t>(k)] =
                        sub_mod(col[static_cast<std::size_t>(k)],
                                mul_mod(c, ech[r][static_cast<std::size_t>(k)], p), p);
            }
            int piv = -1;
            for (int k = 0; k < n; ++k)
                if (col[static_cast<std::size_t>(k)]) { piv = k; break; }
            if (piv < 0) return false;
            std::uint64_t s = inv_mod(col[static_cast<std::size_t>(piv)], p);
            for (auto& x : col) x = mul_mod(x, s, p);
            ech.push_back(std::move(col));
            pivots.push_back(piv);
            return true;
        };
        for (int j = 0; j < d1; ++j) {
            std::vector<std::uint64_t> col(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = t0.at(i, j);
            if (!try_insert(std::move(col)))
                throw std::logic_error("rcf_blocks: cyclic columns dependent");
        }
        int placed = d1;
        for (int j = 0; j < n && placed < n; ++j) {
            std::vector<std::uint64_t> col(static_cast<std::size_t>(n), 0);
            col[static_cast<std::size_t>(j)] = 1;
            if (try_insert(std::move(col))) {
                for (int i = 0; i < n; ++i) t0.at(i, placed) = (i == j) ? 1 : 0;
                ++placed;
            }
        }
        if (placed != n) throw std::logic_error("rcf_blocks: failed to complete basis");
    }

    FpMat t0inv = fp_inverse(t0);
    FpMat m1 = fp_mul(fp_mul(t0inv, m), t0);
    const int q = n - d1;
    for (int i = d1; i < n; ++i)
        for (int j = 0; j < d1; ++j)
            if (m1.at(i, j) != 0)
                throw std::logic_error("rcf_blocks: cyclic subspace not invariant");

    FpMat abar(q, q, p);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) abar.at(i, j) = m1.at(d1 + i, d1 + j);

    std::vector<CyclicBlock> out;
    out.push_back({v1, mu});

    // Decompose the quotient action, then lift each generator w so that
    // factor(m) w == 0 exactly: factor(m) w lands in the v1-cyclic subspace
    // with polynomial coordinates divisible by factor (conductor argument).
    for (const CyclicBlock& sub : rcf_blocks(abar)) {
        std::vector<std::uint64_t> w(static_cast<std::size_t>(n), 0);
        {
            std::vector<std::uint64_t> lifted(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < q; ++i) lifted[static_cast<std::size_t>(d1 + i)] = sub.gen[static_cast<std::size_t>(i)];
            w = fp_matvec(t0, lifted);
        }
        std::vector<std::uint64_t> u = poly_apply(m, sub.factor, w);
        std::vector<std::uint64_t> c = fp_matvec(t0inv, u);
        Poly g(c.begin(), c.begin() + d1);
        g = poly_trim(std::move(g));
        for (int i = d1; i < n; ++i)
            if (c[static_cast<std::size_t>(i)] != 0)
                throw std::logic_error("rcf_blocks: lift escaped the cyclic subspace");
        Poly corr = poly_exact_div(g, sub.factor, p);
        std::vector<std::uint64_t> fix = poly_apply(m, corr, v1);
        for (int i = 0; i < n; ++i)
            w[static_cast<std::size_t>(i)] =
                sub_mod(w[static_cast<std::size_t>(i)], fix[static_cast<std::size_t>(i)], p);
        out.push_back({std::move(w), sub.factor});
    }
    return out;
}

} // namespace

Frobenius frobenius_form(const FpMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("frobenius_form: not square");
    const std::uint64_t p = m.p;
    const int n = m.rows;

    std::vector<CyclicBlock> blocks = rcf_blocks(m);
    std::reverse(blocks.begin(), blocks.end()); // ascending divisibility

    Frobenius out;
    out.form = FpMat(n, n, p);
    out.basis = FpMat(n, n, p);
    int off = 0;
    for (const CyclicBlock& b : blocks) {
        int d = poly_deg(b.factor);
        FpMat c = companion(b.factor, p);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out.form.at(off + i, off + j) = c.at(i, j);
        std::vector<std::uint64_t> w = b.gen;
        for (int j = 0; j < d; ++j) {
            if (j > 0) w = fp_matvec(m, w);
            for (int i = 0; i < n; ++i) out.basis.at(i, off + j) = w[static_cast<std::size_t>(i)];
        }
        out.invariant_factors.push_back(b.factor);
        off += d;
    }
    if (off != n) throw std::logic_error("frobenius_form: block sizes do not sum to n");

    // The construction above is intricate enough to warrant a direct check.
    FpMat check = fp_mul(fp_mul(fp_inverse(out.basis), m), out.basis);
    if (!(check == out.form))
        throw std::logic_error("frobenius_form: verification failed");
    return out;
}

} // namespace regsys::fp
