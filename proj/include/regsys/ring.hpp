#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regsys {

// Error raised when a modulus has a repeated prime factor.  The rings this
// library works over must be products of distinct prime fields.
class NotSquarefreeError : public std::invalid_argument {
public:
    NotSquarefreeError(std::uint64_t modulus, std::uint64_t prime);
    std::uint64_t prime() const noexcept { return prime_; }

private:
    std::uint64_t prime_;
};

// Immutable description of Z/n for squarefree n: the sorted prime factors and
// the CRT idempotent basis (basis_[i] is 1 mod primes_[i], 0 mod the others).
// All scalar values handled here are canonical residues in [0, n).
class RingContext {
public:
    explicit RingContext(std::uint64_t modulus);

    std::uint64_t modulus() const noexcept { return modulus_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
    std::size_t prime_count() const noexcept { return primes_.size(); }
    const std::vector<std::uint64_t>& crt_basis() const noexcept { return basis_; }

    std::uint64_t reduce(std::int64_t v) const noexcept;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
    std::uint64_t neg(std::uint64_t a) const noexcept;
    std::uint64_t inv(std::uint64_t a) const; // throws if a is not a unit

    bool is_unit(std::uint64_t a) const noexcept;
    bool is_idempotent(std::uint64_t a) const noexcept;

    std::vector<std::uint64_t> crt_split(std::uint64_t a) const;
    std::uint64_t crt_join(const std::vector<std::uint64_t>& residues) const;

    // a == unit * idempotent; the idempotent is a's componentwise support.
    std::uint64_t idempotent_part(std::uint64_t a) const;
    std::pair<std::uint64_t, std::uint64_t> unit_idempotent_factor(std::uint64_t a) const;

private:
    std::uint64_t modulus_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> basis_;
};

using Ring = std::shared_ptr<const RingContext>;

Ring make_ring(std::uint64_t modulus);

// Contexts are interchangeable when they describe the same modulus.
inline bool same_ring(const Ring& a, const Ring& b) {
    return a && b && a->modulus() == b->modulus();
}

void require_same_ring(const Ring& a, const Ring& b, const char* where);

// A scalar bound to its ring.  Mixing elements of different rings throws.
class RingElement {
public:
    RingElement(Ring ring, std::int64_t value);

    std::uint64_t value() const noexcept { return value_; }
    const Ring& ring() const noexcept { return ring_; }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

private:
    Ring ring_;
    std::uint64_t value_;
};

std::vector<std::uint64_t> crt_split(const RingElement& a);
RingElement crt_join(const std::vector<std::uint64_t>& residues, const Ring& ring);
RingElement idempotent_part(const RingElement& a);
std::pair<RingElement, RingElement> unit_idempotent_factor(const RingElement& a);
bool is_idempotent(const RingElement& a);
bool is_unit(const RingElement& a);

} // namespace regsys
