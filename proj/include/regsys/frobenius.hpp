#pragma once

#include <cstdint>
#include <vector>

namespace regsys::fp {

// Minimal dense linear algebra over one prime field F_p, used to compute the
// rational (Frobenius) normal form with an explicit change of basis.  Kept
// separate from Mat: everything here is a plain field, no CRT structure.

struct FpMat {
    int rows = 0, cols = 0;
    std::uint64_t p = 2;
    std::vector<std::uint64_t> a;

    FpMat() = default;
    FpMat(int r, int c, std::uint64_t prime);

    static FpMat identity(int n, std::uint64_t prime);

    std::uint64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::uint64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool operator==(const FpMat& o) const {
        return rows == o.rows && cols == o.cols && p == o.p && a == o.a;
    }
};

FpMat fp_mul(const FpMat& x, const FpMat& y);
FpMat fp_inverse(const FpMat& x); // throws std::invalid_argument when singular
std::vector<std::uint64_t> fp_matvec(const FpMat& x, const std::vector<std::uint64_t>& v);

// Polynomials over F_p: coefficient vectors, lowest degree first, trimmed
// (no trailing zeros; the zero polynomial is the empty vector).
using Poly = std::vector<std::uint64_t>;

int poly_deg(const Poly& f); // -1 for the zero polynomial
Poly poly_trim(Poly f);
Poly poly_make_monic(const Poly& f, std::uint64_t p);
Poly poly_add(const Poly& f, const Poly& g, std::uint64_t p);
Poly poly_sub(const Poly& f, const Poly& g, std::uint64_t p);
Poly poly_mul(const Poly& f, const Poly& g, std::uint64_t p);
// quotient/remainder; divisor must be nonzero
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g, std::uint64_t p);
Poly poly_gcd(Poly f, Poly g, std::uint64_t p); // monic
Poly poly_exact_div(const Poly& f, const Poly& g, std::uint64_t p); // throws if not exact
bool poly_divides(const Poly& g, const Poly& f, std::uint64_t p);   // g | f

// f(M) * v via Horner.
std::vector<std::uint64_t> poly_apply(const FpMat& m, const Poly& f,
                                      const std::vector<std::uint64_t>& v);

// Monic generator of { f : f(M) v == 0 }.
Poly vector_annihilator(const FpMat& m, const std::vector<std::uint64_t>& v);

// Split lcm(f, g) into coprime parts f1 * g1 with f1 | f and g1 | g.
// No polynomial factorization involved, only gcds.
std::pair<Poly, Poly> coprime_split(const Poly& f, const Poly& g, std::uint64_t p);

// Vector whose annihilator is the minimal polynomial of m, plus that polynomial.
std::pair<std::vector<std::uint64_t>, Poly> maximal_vector(const FpMat& m);

FpMat companion(const Poly& f, std::uint64_t p); // f monic, deg >= 1

// form = basis^{-1} * m * basis, block diagonal of companion matrices of the
// invariant factors f_1 | f_2 | ... | f_t in ascending divisibility order
// (the minimal polynomial is the last block).  The form is canonical; basis
// is not.
struct Frobenius {
    FpMat form;
    FpMat basis;
    std::vector<Poly> invariant_factors;
};

Frobenius frobenius_form(const FpMat& m);

} // namespace regsys::fp
