#include "regsys/ring.hpp"

#include <numeric>
#include <string>

#include "regsys/modarith.hpp"

namespace regsys {

NotSquarefreeError::NotSquarefreeError(std::uint64_t modulus, std::uint64_t prime)
    : std::invalid_argument("modulus " + std::to_string(modulus) +
                            " is not squarefree: repeated prime factor " +
                            std::to_string(prime)),
      prime_(prime) {}

RingContext::RingContext(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus < 2)
        throw std::invalid_argument("modulus must be at least 2");

    // Trial factorization; squarefreeness means no factor divides twice.
    std::uint64_t rest = modulus;
    for (std::uint64_t f = 2; f <= rest / f; ++f) {
        if (rest % f != 0) continue;
        rest /= f;
        if (rest % f == 0) throw NotSquarefreeError(modulus, f);
        primes_.push_back(f);
    }
    if (rest > 1) primes_.push_back(rest);

    basis_.reserve(primes_.size());
    for (std::uint64_t p : primes_) {
        std::uint64_t q = modulus_ / p;           // 0 mod every other prime
        std::uint64_t c = inv_mod(q % p, p);      // scale so it is 1 mod p
        basis_.push_back(mul_mod(q % modulus_, c, modulus_));
    }
}

std::uint64_t RingContext::reduce(std::int64_t v) const noexcept {
    __int128 m = static_cast<__int128>(modulus_);
    __int128 r = static_cast<__int128>(v) % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t RingContext::add(std::uint64_t a, std::uint64_t b) const noexcept {
    return add_mod(a, b, modulus_);
}

std::uint64_t RingContext::sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return sub_mod(a, b, modulus_);
}

std::uint64_t RingContext::mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return mul_mod(a, b, modulus_);
}

std::uint64_t RingContext::neg(std::uint64_t a) const noexcept {
    return neg_mod(a, modulus_);
}

std::uint64_t RingContext::inv(std::uint64_t a) const {
    return inv_mod(a, modulus_);
}

bool RingContext::is_unit(std::uint64_t a) const noexcept {
    return std::gcd(a, modulus_) == 1;
}

bool RingContext::is_idempotent(std::uint64_t a) const noexcept {
    return mul(a, a) == a;
}

std::vector<std::uint64_t> RingContext::crt_split(std::uint64_t a) const {
    if (a >= modulus_)
        throw std::invalid_argument("crt_split: value out of range");
    std::vector<std::uint64_t> out;
    out.reserve(primes_.size());
    for (std::uint64_t p : primes_) out.push_back(a % p);
    return out;
}

std::uint64_t RingContext::crt_join(const std::vector<std::uint64_t>& residues) const {
    if (residues.size() != primes_.size())
        throw std::invalid_argument("crt_join: expected one residue per prime factor");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        if (residues[i] >= primes_[i])
            throw std::invalid_argument("crt_join: residue " + std::to_string(residues[i]) +
                                        " out of range for prime " + std::to_string(primes_[i]));
        acc = add(acc, mul(residues[i] % modulus_, basis_[i]));
    }
    return acc;
}

std::uint64_t RingContext::idempotent_part(std::uint64_t a) const {
    std::vector<std::uint64_t> comp = crt_split(a);
    for (auto& c : comp) c = (c == 0) ? 0 : 1;
    return crt_join(comp);
}

std::pair<std::uint64_t, std::uint64_t>
RingContext::unit_idempotent_factor(std::uint64_t a) const {
    std::vector<std::uint64_t> comp = crt_split(a);
    for (auto& c : comp) c = (c == 0) ? 1 : c; // identity where a vanishes
    std::uint64_t u = crt_join(comp);
    return {u, idempotent_part(a)};
}

Ring make_ring(std::uint64_t modulus) {
    return std::make_shared<const RingContext>(modulus);
}

void require_same_ring(const Ring& a, const Ring& b, const char* where) {
    if (!same_ring(a, b))
        throw std::invalid_argument(std::string(where) + ": ring mismatch");
}

RingElement::RingElement(Ring ring, std::int64_t value) : ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("RingElement: null ring");
    value_ = ring_->reduce(value);
}

RingElement RingElement::operator+(const RingElement& o) const {
    require_same_ring(ring_, o.ring_, "RingElement::operator+");
    return RingElement(ring_, static_cast<std::int64_t>(ring_->add(value_, o.value_)));
}

RingElement RingElement::operator-(const RingElement& o) const {
    require_same_ring(ring_, o.ring_, "RingElement::operator-");
    return RingElement(ring_, static_cast<std::int64_t>(ring_->sub(value_, o.value_)));
}

RingElement RingElement::operator*(const RingElement& o) const {
    require_same_ring(ring_, o.ring_, "RingElement::operator*");
    return RingElement(ring_, static_cast<std::int64_t>(ring_->mul(value_, o.value_)));
}

RingElement RingElement::operator-() const {
    return RingElement(ring_, static_cast<std::int64_t>(ring_->neg(value_)));
}

bool RingElement::operator==(const RingElement& o) const {
    require_same_ring(ring_, o.ring_, "RingElement::operator==");
    return value_ == o.value_;
}

std::vector<std::uint64_t> crt_split(const RingElement& a) {
    return a.ring()->crt_split(a.value());
}

RingElement crt_join(const std::vector<std::uint64_t>& residues, const Ring& ring) {
    if (!ring) throw std::invalid_argument("crt_join: null ring");
    return RingElement(ring, static_cast<std::int64_t>(ring->crt_join(residues)));
}

RingElement idempotent_part(const RingElement& a) {
    return RingElement(a.ring(), static_cast<std::int64_t>(a.ring()->idempotent_part(a.value())));
}

std::pair<RingElement, RingElement> unit_idempotent_factor(const RingElement& a) {
    auto [u, e] = a.ring()->unit_idempotent_factor(a.value());
    return {RingElement(a.ring(), static_cast<std::int64_t>(u)),
            RingElement(a.ring(), static_cast<std::int64_t>(e))};
}

bool is_idempotent(const RingElement& a) { return a.ring()->is_idempotent(a.value()); }
bool is_unit(const RingElement& a) { return a.ring()->is_unit(a.value()); }

} // namespace regsys
