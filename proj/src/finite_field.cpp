#include "fermatk/finite_field.hpp"

#include "fermatk/error.hpp"
#include "fermatk/integer_factor.hpp"

namespace fermatk {

namespace {

std::vector<std::int64_t> digits(std::int64_t x, std::int64_t p, int k)
{
    std::vector<std::int64_t> d(k);
    for (int i = 0; i < k; ++i, x /= p)
        d[i] = x % p;
    return d;
}

std::int64_t undigits(const std::vector<std::int64_t>& d, std::int64_t p)
{
    std::int64_t x = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it)
        x = x * p + *it;
    return x;
}

// Multiply by the generator t (t = x for k > 1, a candidate root for k = 1)
// modulo the monic polynomial with low coefficients `low`.
std::vector<std::int64_t> times_generator(std::vector<std::int64_t> v, const std::vector<std::int64_t>& low,
                                          std::int64_t p)
{
    const int k = static_cast<int>(v.size());
    if (k == 1) {
        v[0] = (v[0] * ((p - low[0]) % p)) % p;
        return v;
    }
    std::int64_t top = v[k - 1];
    for (int i = k - 1; i > 0; --i)
        v[i] = v[i - 1];
    v[0] = 0;
    for (int i = 0; i < k; ++i)
        v[i] = ((v[i] - top * low[i]) % p + p) % p;
    return v;
}

} // namespace

FiniteField FiniteField::make(std::int64_t q, std::int64_t cap)
{
    auto [p, k] = prime_power_decomposition(q);
    if (p == 0)
        throw Error(Errc::invalid_argument, std::to_string(q) + " is not a prime power");
    if (q > cap)
        throw Error(Errc::cap_exceeded, "field size " + std::to_string(q) + " exceeds cap " + std::to_string(cap));

    FiniteField F;
    F.q_ = q;
    F.p_ = p;
    F.k_ = k;
    F.exp_.assign(q - 1, 0);
    F.log_.assign(q, 0);
    if (q == 2) {
        F.exp_[0] = 1;
        return F;
    }
    // Search monic polynomials x^k + low(x) until x has order q - 1.
    for (std::int64_t code = 0; code < q; ++code) {
        auto low = digits(code, p, k);
        if (low[0] == 0)
            continue;
        std::vector<std::int64_t> v(k, 0);
        v[0] = 1;
        std::vector<bool> seen(q, false);
        bool primitive = true;
        for (std::int64_t j = 0; j < q - 1; ++j) {
            auto idx = undigits(v, p);
            if (idx == 0 || seen[idx]) {
                primitive = false;
                break;
            }
            seen[idx] = true;
            F.exp_[j] = static_cast<Elem>(idx);
            F.log_[idx] = static_cast<std::uint32_t>(j);
            v = times_generator(std::move(v), low, p);
        }
        if (primitive)
            return F;
    }
    throw Error(Errc::invalid_argument, "no primitive polynomial found");
}

FiniteField::Elem FiniteField::add(Elem x, Elem y) const
{
    if (k_ == 1)
        return static_cast<Elem>((x + y) % p_);
    Elem r = 0, place = 1;
    for (int i = 0; i < k_; ++i) {
        r += static_cast<Elem>(((x % p_) + (y % p_)) % p_) * place;
        x /= static_cast<Elem>(p_);
        y /= static_cast<Elem>(p_);
        place *= static_cast<Elem>(p_);
    }
    return r;
}

FiniteField::Elem FiniteField::neg(Elem x) const
{
    Elem r = 0, place = 1;
    for (int i = 0; i < k_; ++i) {
        r += static_cast<Elem>((p_ - x % p_) % p_) * place;
        x /= static_cast<Elem>(p_);
        place *= static_cast<Elem>(p_);
    }
    return r;
}

int FiniteField::chi(Elem x) const
{
    if (x == 0)
        return 0;
    return log_[x] % 2 == 0 ? 1 : -1;
}

} // namespace fermatk
