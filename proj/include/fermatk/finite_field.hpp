#pragma once

#include <cstdint>
#include <vector>

namespace fermatk {

/*
 * GF(q), q = p^k, built from a primitive polynomial found by search.
 * Elements are indices 0..q-1 (base-p digits are the polynomial
 * coefficients, so 0 is zero and 1 is one). Multiplication goes through
 * exp/log tables of the primitive element.
 */
class FiniteField {
public:
    using Elem = std::uint32_t;

    // Throws Error(invalid_argument) unless q is a prime power, and
    // Error(cap_exceeded) if q > cap.
    static FiniteField make(std::int64_t q, std::int64_t cap);

    std::int64_t size() const noexcept { return q_; }
    std::int64_t characteristic() const noexcept { return p_; }
    int degree() const noexcept { return k_; }

    Elem add(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
    Elem mul(Elem x, Elem y) const
    {
        if (x == 0 || y == 0)
            return 0;
        return exp_[(log_[x] + log_[y]) % (q_ - 1)];
    }
    // Quadratic character: 0, 1 or -1 (odd q only).
    int chi(Elem x) const;

private:
    FiniteField() = default;

    std::int64_t q_ = 0, p_ = 0;
    int k_ = 0;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
};

} // namespace fermatk
