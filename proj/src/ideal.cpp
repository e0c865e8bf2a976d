#include "fermatk/ideal.hpp"

#include <algorithm>
#include <tuple>

namespace fermatk {

Ideal Ideal::of(const QuadraticField& K, const AlgInt& generator)
{
    AlgInt g = canonical(generator);
    return Ideal{g, g.norm(), factor(K, g)};
}

Ideal Ideal::from_factors(const QuadraticField& K, std::vector<std::pair<PrimeIdeal, int>> factors)
{
    AlgInt g = K.one();
    for (auto& [P, e] : factors)
        g *= P.generator.pow(static_cast<unsigned long>(e));
    return of(K, g);
}

int Ideal::exponent_at(const PrimeIdeal& P) const
{
    for (auto& [Q, e] : factors)
        if (Q == P)
            return e;
    return 0;
}

bool Ideal::divides(const Ideal& other) const
{
    return fermatk::divides(generator, other.generator);
}

std::string Ideal::to_string() const
{
    if (factors.empty())
        return "(1)";
    std::string s;
    for (auto& [P, e] : factors) {
        if (!s.empty())
            s += "*";
        s += "(" + P.generator.to_string() + ")";
        if (e != 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

std::vector<Ideal> ideal_divisors(const QuadraticField& K, const Ideal& I)
{
    std::vector<std::vector<std::pair<PrimeIdeal, int>>> partial{{}};
    for (auto& [P, e] : I.factors) {
        std::vector<std::vector<std::pair<PrimeIdeal, int>>> next;
        for (auto& f : partial)
            for (int k = 0; k <= e; ++k) {
                auto g = f;
                if (k > 0)
                    g.emplace_back(P, k);
                next.push_back(std::move(g));
            }
        partial = std::move(next);
    }
    std::vector<Ideal> out;
    for (auto& f : partial)
        out.push_back(Ideal::from_factors(K, f));
    std::sort(out.begin(), out.end(), [](const Ideal& x, const Ideal& y) {
        return std::tie(x.norm, x.generator) < std::tie(y.norm, y.generator);
    });
    return out;
}

} // namespace fermatk
