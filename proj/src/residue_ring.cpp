#include "fermatk/residue_ring.hpp"

#include <deque>
#include <numeric>

namespace fermatk {

namespace {

std::int64_t floor_div(std::int64_t x, std::int64_t y)
{
    std::int64_t q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0)))
        --q;
    return q;
}

std::int64_t floor_mod(std::int64_t x, std::int64_t y)
{
    return x - floor_div(x, y) * y;
}

} // namespace

ResidueRing::ResidueRing(const QuadraticField& K, const AlgInt& modulus, std::uint64_t cap)
    : field_(K), modulus_(canonical(modulus)), t_(K.omega_trace()), n_(K.omega_norm())
{
    if (modulus.is_zero())
        throw Error(Errc::zero_element, "residue ring modulo 0");
    mpz_class N = modulus_.norm();
    if (N > cap)
        throw Error(Errc::cap_exceeded, "N(" + modulus_.to_string() + ") = " + N.get_str()
                                            + " exceeds enumeration cap " + std::to_string(cap));

    // Hermite basis of the lattice spanned by m and m*w.
    AlgInt mw = modulus_ * K.omega();
    mpz_class a1 = modulus_.a(), b1 = modulus_.b(), a2 = mw.a(), b2 = mw.b();
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b1.get_mpz_t(), b2.get_mpz_t());
    mpz_class wa = s * a1 + t * a2;              // w = s v1 + t v2 has second coordinate g
    mpz_class ua = abs((b1 / g) * a2 - (b2 / g) * a1); // u has second coordinate 0
    alpha_ = ua.get_si();
    gamma_ = mpz_class(abs(g)).get_si();
    if (g < 0)
        wa = -wa;
    beta_ = floor_mod(mpz_class(wa % ua).get_si(), alpha_);
    size_ = static_cast<std::uint64_t>(alpha_) * static_cast<std::uint64_t>(gamma_);

    if (N > 1)
        for (auto& [P, e] : factor(K, modulus_))
            primes_.push_back(P);
}

ResidueRing::Elem ResidueRing::reduce(std::int64_t a, std::int64_t b) const
{
    std::int64_t q = floor_div(b, gamma_);
    b -= q * gamma_;
    a -= q * beta_;
    a = floor_mod(a, alpha_);
    return static_cast<Elem>(a + alpha_ * b);
}

ResidueRing::Elem ResidueRing::reduce(const AlgInt& x) const
{
    if (x.d() != field_.d())
        throw Error(Errc::field_mismatch, "element of another field");
    if (x.a().fits_slong_p() && x.b().fits_slong_p() && abs(x.a()) < (1L << 40) && abs(x.b()) < (1L << 40))
        return reduce(x.a().get_si(), x.b().get_si());
    mpz_class q, a, r;
    mpz_fdiv_q(q.get_mpz_t(), x.b().get_mpz_t(), mpz_class(gamma_).get_mpz_t());
    mpz_class b = x.b() - q * gamma_;
    a = x.a() - q * beta_;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mpz_class(alpha_).get_mpz_t());
    return static_cast<Elem>(r.get_si() + alpha_ * b.get_si());
}

AlgInt ResidueRing::lift(Elem x) const
{
    return field_.element(static_cast<long>(coord_a(x)), static_cast<long>(coord_b(x)));
}

ResidueRing::Elem ResidueRing::add(Elem x, Elem y) const
{
    return reduce(coord_a(x) + coord_a(y), coord_b(x) + coord_b(y));
}

ResidueRing::Elem ResidueRing::sub(Elem x, Elem y) const
{
    return reduce(coord_a(x) - coord_a(y), coord_b(x) - coord_b(y));
}

ResidueRing::Elem ResidueRing::neg(Elem x) const
{
    return reduce(-coord_a(x), -coord_b(x));
}

ResidueRing::Elem ResidueRing::mul(Elem x, Elem y) const
{
    const std::int64_t a = coord_a(x), b = coord_b(x), c = coord_a(y), e = coord_b(y);
    const std::int64_t be = b * e;
    // reduce the cross terms first to stay well inside int64
    Elem left = reduce(a * c - n_ * be, 0);
    return add(left, reduce(0, a * e + b * c + t_ * be));
}

ResidueRing::Elem ResidueRing::pow(Elem x, std::uint64_t e) const
{
    Elem r = one(), base = x;
    while (e) {
        if (e & 1)
            r = mul(r, base);
        e >>= 1;
        if (e)
            base = mul(base, base);
    }
    return r;
}

bool ResidueRing::is_unit(Elem x) const
{
    const std::int64_t a = coord_a(x), b = coord_b(x);
    for (const PrimeIdeal& P : primes_) {
        // x in P  <=>  x * conj(pi) == 0 mod N(pi)
        const std::int64_t pa = P.generator.a().get_si(), pb = P.generator.b().get_si();
        const std::int64_t ca = pa + t_ * pb, cb = -pb;
        const std::int64_t u = a * ca - n_ * b * cb;
        const std::int64_t v = a * cb + b * ca + t_ * b * cb;
        if (u % P.norm == 0 && v % P.norm == 0)
            return false;
    }
    return true;
}

std::vector<ResidueRing::Elem> ResidueRing::units() const
{
    std::vector<Elem> out;
    for (Elem x = 0; x < size_; ++x)
        if (is_unit(x))
            out.push_back(x);
    return out;
}

ResidueRing residue_ring(const PrimeIdeal& P, int k, std::uint64_t cap)
{
    if (k < 1)
        throw Error(Errc::invalid_argument, "residue ring exponent must be positive");
    QuadraticField K = QuadraticField::make(P.generator.d());
    mpz_class N = 1;
    for (int i = 0; i < k; ++i) {
        N *= P.norm;
        if (N > cap)
            throw Error(Errc::cap_exceeded, "N(P)^k = " + std::to_string(P.norm) + "^" + std::to_string(k)
                                                + " exceeds enumeration cap " + std::to_string(cap));
    }
    return ResidueRing(K, P.generator.pow(k), cap);
}

std::vector<bool> generated_subgroup(const ResidueRing& R, std::span<const ResidueRing::Elem> generators)
{
    std::vector<bool> in(R.size(), false);
    std::deque<ResidueRing::Elem> todo{R.one()};
    in[R.one()] = true;
    while (!todo.empty()) {
        auto x = todo.front();
        todo.pop_front();
        for (auto g : generators) {
            auto y = R.mul(x, g);
            if (!in[y]) {
                in[y] = true;
                todo.push_back(y);
            }
        }
    }
    return in;
}

UnitQuotient::UnitQuotient(const ResidueRing& R, std::vector<bool> subgroup)
    : ring_(&R), subgroup_(std::move(subgroup)), coset_(R.size(), -1)
{
    std::vector<ResidueRing::Elem> members;
    for (ResidueRing::Elem h = 0; h < R.size(); ++h)
        if (subgroup_[h])
            members.push_back(h);
    subgroup_order_ = members.size();
    for (ResidueRing::Elem x = 0; x < R.size(); ++x) {
        if (!R.is_unit(x))
            continue;
        ++unit_count_;
        if (coset_[x] >= 0)
            continue;
        auto id = static_cast<std::int64_t>(coset_reps_.size());
        coset_reps_.push_back(x);
        for (auto h : members)
            coset_[R.mul(x, h)] = id;
    }
}

AbelianGroupStructure UnitQuotient::structure() const
{
    std::vector<std::uint64_t> orders;
    orders.reserve(coset_reps_.size());
    for (auto r : coset_reps_) {
        std::uint64_t k = 1;
        auto y = r;
        while (!subgroup_[y]) {
            y = ring_->mul(y, r);
            ++k;
        }
        orders.push_back(k);
    }
    return structure_from_element_orders(orders);
}

AbelianGroupStructure unit_group_structure(const ResidueRing& R)
{
    std::vector<bool> trivial(R.size(), false);
    trivial[R.one()] = true;
    return UnitQuotient(R, std::move(trivial)).structure();
}

AbelianGroupStructure ray_class_group(const QuadraticField& K, const AlgInt& modulus, std::uint64_t cap)
{
    ResidueRing R(K, modulus, cap);
    std::vector<ResidueRing::Elem> gens;
    for (const AlgInt& u : K.units())
        gens.push_back(R.reduce(u));
    return UnitQuotient(R, generated_subgroup(R, gens)).structure();
}

} // namespace fermatk
