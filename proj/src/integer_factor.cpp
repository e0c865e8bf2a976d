#include "fermatk/integer_factor.hpp"

#include <algorithm>
#include <map>

namespace fermatk {

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    return is_prime(mpz_class(static_cast<long>(n)));
}

bool is_prime(const mpz_class& n)
{
    if (n < 2)
        return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long seed)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    mpz_class y = seed, c = seed + 1, m = 64, g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const mpz_class& v) {
        mpz_class t = v * v + c;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        return t;
    };
    while (g == 1) {
        x = y;
        for (mpz_class i = 0; i < r; ++i)
            y = f(y);
        mpz_class k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (mpz_class i = 0; i < m && i < r - k; ++i) {
                y = f(y);
                mpz_class diff = abs(x - y);
                q = q * diff % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            mpz_class diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

void split_composite(const mpz_class& n, std::map<mpz_class, int>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class d = n;
    for (unsigned long seed = 2; d == n; ++seed)
        d = pollard_brent(n, seed);
    split_composite(d, out);
    split_composite(n / d, out);
}

} // namespace

std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n)
{
    std::map<mpz_class, int> found;
    mpz_class m = abs(n);
    if (m == 0)
        return {};
    for (unsigned long p = 2; p < 10000 && mpz_class(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++found[mpz_class(p)];
            m /= p;
        }
    }
    split_composite(m, found);
    return {found.begin(), found.end()};
}

std::vector<mpz_class> prime_divisors(const mpz_class& n)
{
    std::vector<mpz_class> out;
    for (auto& [p, e] : factor_integer(n))
        out.push_back(p);
    return out;
}

std::int64_t next_prime(std::int64_t n)
{
    std::int64_t k = std::max<std::int64_t>(n + 1, 2);
    while (!is_prime(k))
        ++k;
    return k;
}

std::pair<std::int64_t, int> prime_power_decomposition(std::int64_t q)
{
    if (q < 2)
        return {0, 0};
    auto fac = factor_integer(mpz_class(static_cast<long>(q)));
    if (fac.size() != 1)
        return {0, 0};
    return {fac.front().first.get_si(), fac.front().second};
}

} // namespace fermatk
