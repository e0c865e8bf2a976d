#include "fermatk/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fermatk/error.hpp"

namespace fermatk {

std::uint64_t AbelianGroupStructure::order() const
{
    std::uint64_t n = 1;
    for (auto d : elementary_divisors)
        n *= d;
    return n;
}

std::uint64_t AbelianGroupStructure::exponent() const
{
    return elementary_divisors.empty() ? 1 : elementary_divisors.back();
}

std::string AbelianGroupStructure::to_string() const
{
    if (is_trivial())
        return "trivial";
    std::string s;
    for (auto d : elementary_divisors) {
        if (!s.empty())
            s += " x ";
        s += "Z/" + std::to_string(d);
    }
    return s;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

// Invariant factors from the l-primary cyclic factors l^e, all l together.
AbelianGroupStructure assemble(std::map<std::uint64_t, std::vector<std::uint64_t>> primary)
{
    std::size_t rank = 0;
    for (auto& [l, powers] : primary) {
        std::sort(powers.rbegin(), powers.rend());
        rank = std::max(rank, powers.size());
    }
    std::vector<std::uint64_t> divisors(rank, 1);
    for (auto& [l, powers] : primary)
        for (std::size_t i = 0; i < powers.size(); ++i)
            divisors[rank - 1 - i] *= powers[i];
    return AbelianGroupStructure{divisors};
}

} // namespace

AbelianGroupStructure cyclic_product(std::vector<std::uint64_t> orders)
{
    std::map<std::uint64_t, std::vector<std::uint64_t>> primary;
    for (std::uint64_t n : orders) {
        if (n == 0)
            throw Error(Errc::invalid_argument, "cyclic factor of order 0");
        for (std::uint64_t l : prime_factors(n)) {
            std::uint64_t q = 1;
            while (n % l == 0) {
                n /= l;
                q *= l;
            }
            primary[l].push_back(q);
        }
    }
    return assemble(std::move(primary));
}

AbelianGroupStructure structure_from_element_orders(std::span<const std::uint64_t> orders)
{
    const std::uint64_t n = orders.size();
    if (n == 0)
        throw Error(Errc::invalid_argument, "empty group");
    std::map<std::uint64_t, std::vector<std::uint64_t>> primary;
    for (std::uint64_t l : prime_factors(n)) {
        std::uint64_t part = 1;
        for (std::uint64_t m = n; m % l == 0; m /= l)
            part *= l;
        // ranks[j] = number of cyclic l-factors of order >= l^j
        std::vector<int> ranks{0};
        std::uint64_t prev = 1, lj = 1;
        while (prev < part) {
            lj *= l;
            std::uint64_t c = std::count_if(orders.begin(), orders.end(),
                                            [&](std::uint64_t o) { return lj % o == 0; });
            int r = 0;
            for (std::uint64_t ratio = c / prev; ratio > 1; ratio /= l)
                ++r;
            ranks.push_back(r);
            prev = c;
        }
        ranks.push_back(0);
        std::uint64_t q = 1;
        for (std::size_t j = 1; j + 1 < ranks.size(); ++j) {
            q *= l;
            for (int k = 0; k < ranks[j] - ranks[j + 1]; ++k)
                primary[l].push_back(q);
        }
    }
    AbelianGroupStructure s = assemble(std::move(primary));
    if (s.order() != n)
        throw Error(Errc::invalid_argument, "element orders are not those of an abelian group");
    return s;
}

} // namespace fermatk
