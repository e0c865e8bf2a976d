#include "fermatk/localfields.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "fermatk/residue_ring.hpp"

namespace fermatk {

namespace {

using El = ResidueRing::Elem;

std::vector<bool> squares_of_units(const ResidueRing& R)
{
    std::vector<bool> sq(R.size(), false);
    for (El x = 0; x < R.size(); ++x)
        if (R.is_unit(x))
            sq[R.mul(x, x)] = true;
    return sq;
}

// Mask of the subgroup generated by the unit squares and the global units.
std::vector<bool> units_times_squares(const ResidueRing& R)
{
    std::vector<El> gens;
    for (El x = 0; x < R.size(); ++x)
        if (R.is_unit(x))
            gens.push_back(R.mul(x, x));
    for (const AlgInt& u : R.field().units())
        gens.push_back(R.reduce(u));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return generated_subgroup(R, gens);
}

} // namespace

SquareClassData square_classes(const PrimeIdeal& P, int k, std::uint64_t cap)
{
    ResidueRing R = residue_ring(P, k, cap);
    auto sq = squares_of_units(R);
    SquareClassData out{P, k, 0, {}, {}};
    for (El x = 0; x < R.size(); ++x) {
        if (R.is_unit(x))
            ++out.unit_count;
        if (sq[x])
            out.squares.push_back(R.lift(x));
    }
    out.quotient = UnitQuotient(R, std::move(sq)).structure();
    return out;
}

int quad_char_conductor_exponent(const AlgInt& lambda, const PrimeIdeal& P, std::optional<int> working_level)
{
    if (P.residue_char != 2)
        throw Error(Errc::unsupported_prime, "conductor exponents are computed at primes over 2 only");
    if (valuation(lambda, P) > 0)
        throw Error(Errc::non_unit, lambda.to_string() + " is not a unit at " + P.generator.to_string());
    const int level = working_level.value_or(2 * P.ram_index + 1);
    ResidueRing R = residue_ring(P, level);
    const El lam = R.reduce(lambda);

    std::vector<bool> is_square(R.size(), false);
    std::vector<El> unit_sq, nonunit_sq;
    for (El x = 0; x < R.size(); ++x) {
        El s = R.mul(x, x);
        is_square[s] = true;
        (R.is_unit(x) ? unit_sq : nonunit_sq).push_back(s);
    }
    for (auto* v : {&unit_sq, &nonunit_sq}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    std::vector<El> any_sq = unit_sq;
    any_sq.insert(any_sq.end(), nonunit_sq.begin(), nonunit_sq.end());

    // lambda x^2 + u y^2 a square with x or y a unit
    auto is_norm = [&](El u) {
        for (El sx : unit_sq)
            for (El sy : any_sq)
                if (is_square[R.add(R.mul(lam, sx), R.mul(u, sy))])
                    return true;
        for (El sx : nonunit_sq)
            for (El sy : unit_sq)
                if (is_square[R.add(R.mul(lam, sx), R.mul(u, sy))])
                    return true;
        return false;
    };

    std::vector<std::pair<int, bool>> units; // (v(u - 1), is norm)
    const QuadraticField& K = R.field();
    for (El x = 0; x < R.size(); ++x) {
        if (!R.is_unit(x))
            continue;
        AlgInt d = R.lift(x) - K.one();
        int v = d.is_zero() ? level : std::min(level, valuation(d, P));
        units.emplace_back(v, is_norm(x));
    }
    for (int n = 0; n <= level; ++n) {
        bool all = std::all_of(units.begin(), units.end(),
                               [n](const auto& uv) { return uv.first < n || uv.second; });
        if (all)
            return n;
    }
    return level;
}

bool is_local_square(const AlgInt& lambda, const PrimeIdeal& P)
{
    ResidueRing R = residue_ring(P, 2 * P.ram_index + 1);
    El target = R.reduce(lambda);
    for (El x = 0; x < R.size(); ++x)
        if (R.mul(x, x) == target)
            return true;
    return false;
}

AlgInt two_adic_square_modulus(const QuadraticField& K)
{
    AlgInt m = K.one();
    for (const PrimeIdeal& P : primes_over_two(K))
        m *= P.generator.pow(2 * P.ram_index + 1);
    return canonical(m);
}

CokernelReport unit_square_cokernel(const QuadraticField& K, const AlgInt& b, std::uint64_t cap)
{
    ResidueRing R(K, b, cap);
    UnitQuotient codomain(R, squares_of_units(R));
    auto image_mask = units_times_squares(R);
    UnitQuotient coker(R, image_mask);

    CokernelReport out{canonical(b), codomain.structure(), codomain.order() / coker.order(), {}};

    // Walk elements by (norm, -a, -b) until every coset is hit.
    std::vector<bool> hit(coker.order(), false);
    std::uint64_t found = 0;
    for (long bound = 4; found < coker.order(); bound *= 2) {
        out.representatives.clear();
        std::fill(hit.begin(), hit.end(), false);
        found = 0;
        const long box = 2 * static_cast<long>(std::sqrt(static_cast<double>(bound))) + 2;
        std::vector<std::tuple<mpz_class, long, long>> cands;
        for (long a = -box; a <= box; ++a)
            for (long c = -box; c <= box; ++c) {
                AlgInt x = K.element(a, c);
                if (!x.is_zero() && x.norm() <= bound)
                    cands.emplace_back(x.norm(), -a, -c);
            }
        std::sort(cands.begin(), cands.end());
        for (auto& [n, ma, mb] : cands) {
            AlgInt x = K.element(-ma, -mb);
            auto id = coker.coset_of(R.reduce(x));
            if (id < 0 || hit[id])
                continue;
            hit[id] = true;
            ++found;
            out.representatives.push_back(x);
        }
    }
    return out;
}

bool distinct_cokernel_cosets(const QuadraticField& K, const AlgInt& b, const std::vector<AlgInt>& elements,
                              std::uint64_t cap)
{
    ResidueRing R(K, b, cap);
    UnitQuotient coker(R, units_times_squares(R));
    std::vector<std::int64_t> ids;
    for (const AlgInt& x : elements) {
        auto id = coker.coset_of(R.reduce(x));
        if (id < 0 || std::find(ids.begin(), ids.end(), id) != ids.end())
            return false;
        ids.push_back(id);
    }
    return true;
}

std::vector<AlgInt> reference_cokernel_representatives(const QuadraticField& K)
{
    if (K.d() != -1)
        return {};
    return {K.element(1), K.element(2, 1), K.element(-3), K.element(-2, 1)};
}

} // namespace fermatk
