#include <doctest.h>

#include <cmath>

#include "fermatk/ellcurve.hpp"
#include "fermatk/finite_field.hpp"
#include "fermatk/integer_factor.hpp"
#include "support.hpp"

using namespace fermatk;
using fermatk::test::frozen;
using fermatk::test::Gen;
using fermatk::test::parse_coords;

namespace {

const std::map<std::string, std::array<long, 5>> kCurves = {
    {"E1", {0, 0, 0, 1, 0}},   {"E2", {0, 1, 0, 1, 1}},   {"E3", {0, -1, 0, 1, -1}},
    {"X1", {1, 0, 1, -1, 0}},  {"X2", {0, 0, 1, -7, 6}},  {"X3", {1, -1, 1, -3, 3}},
};

EllipticCurve curve(const QuadraticField& K, const std::string& name)
{
    return EllipticCurve::from_integers(K, kCurves.at(name));
}

// Root r of w^2 - t w + n mod p with generator(r) = 0 mod p, P of degree 1.
long residue_of_omega(const PrimeIdeal& P)
{
    const long p = P.residue_char;
    const AlgInt& g = P.generator;
    for (long r = 0; r < p; ++r) {
        mpz_class v = g.a() + g.b() * r;
        long t = g.omega_trace(), n = g.omega_norm();
        if ((r * r - t * r + n) % p == 0 && mpz_class(v % p) == 0)
            return r;
    }
    FAIL("no root");
    return 0;
}

long image(const AlgInt& x, long r, long p)
{
    mpz_class v = (x.a() + x.b() * r) % p;
    if (v < 0)
        v += p;
    return v.get_si();
}

int legendre(long a, long p)
{
    a %= p;
    if (a < 0)
        a += p;
    if (a == 0)
        return 0;
    return mpz_legendre(mpz_class(a).get_mpz_t(), mpz_class(p).get_mpz_t());
}

} // namespace

TEST_CASE("invariants of the curves over Q(sqrt(-2))")
{
    auto K = QuadraticField::make(-2);
    EllipticCurve E2 = curve(K, "E2");
    CHECK(E2.discriminant() == K.element(-256));
    CHECK(E2.c4() == K.element(-32));
    CHECK(E2.j().rational_value() == 128);
    CHECK(curve(K, "E1").j().rational_value() == 1728);
    CHECK(curve(K, "E3").j().rational_value() == 128);
    CHECK(E2.to_string() == "[0, 1, 0, 1, 1]");
    CHECK_ERRC(EllipticCurve::from_integers(K, {0, 0, 0, 0, 0}), Errc::singular_curve);
    CHECK_ERRC(EllipticCurve::from_integers(K, {0, 0, 0, -3, 2}), Errc::singular_curve);
}

TEST_CASE("point counts at (1+sqrt(-2))")
{
    auto K = QuadraticField::make(-2);
    PrimeIdeal m1 = prime_ideal_of(K, K.element(1, 1));
    CHECK(m1.norm == 3);
    CHECK(count_points(curve(K, "E1"), m1) == 4);
    CHECK(count_points(curve(K, "E2"), m1) == 6);
    CHECK(count_points(curve(K, "E3"), m1) == 2);
    CHECK(trace_of_frobenius(curve(K, "E2"), m1) == -2);
    CHECK(trace_of_frobenius(curve(K, "E3"), m1) == 2);
}

TEST_CASE("point counts agree with the brute-force oracle")
{
    int n = 0;
    for (auto& row : frozen("points_frozen.txt")) {
        int d = std::stoi(row["d"]);
        auto K = QuadraticField::make(d);
        PrimeIdeal P = prime_ideal_of(K, parse_coords(d, row["P"]));
        CAPTURE(row["curve"]);
        CAPTURE(row["P"]);
        REQUIRE(P.norm == std::stol(row["norm"]));
        CHECK(count_points(curve(K, row["curve"]), P) == std::stol(row["points"]));
        ++n;
    }
    CHECK(n > 300);
}

TEST_CASE("point counting errors")
{
    auto K = QuadraticField::make(-1);
    EllipticCurve E = EllipticCurve::from_integers(K, {0, 0, 0, -1, 0}); // bad at (1+i) only
    PrimeIdeal P3 = prime_ideal_of(K, K.element(3));
    CHECK_ERRC(count_points(E, P3, 5), Errc::cap_exceeded);
    EllipticCurve F = EllipticCurve::from_integers(K, {0, 0, 0, 0, 3});
    CHECK_ERRC(count_points(F, P3), Errc::bad_reduction);
    CHECK_ERRC(reduction_type(E, primes_over_two(K)[0]), Errc::unsupported_prime);
}

TEST_CASE("reduction types")
{
    auto K = QuadraticField::make(-2);
    PrimeIdeal P3 = prime_ideal_of(K, K.element(1, 1));
    PrimeIdeal P5 = prime_ideal_of(K, K.element(5));
    // y^2 = x (x - 1) (x + 2): c4 = 112, Delta = 576
    EllipticCurve L = EllipticCurve::from_integers(K, {0, 1, 0, -2, 0});
    CHECK(reduction_type(L, P3).kind == ReductionKind::multiplicative);
    ReductionInfo g = reduction_type(L, P5);
    CHECK(g.kind == ReductionKind::good);
    REQUIRE(g.trace);
    CHECK(*g.trace == trace_of_frobenius(L, P5));
    EllipticCurve A = EllipticCurve::from_integers(K, {0, 0, 0, 0, 5});
    CHECK(reduction_type(A, P5).kind == ReductionKind::additive);
    CHECK(!reduction_type(A, P5).v_c4_min);
    EllipticCurve A3 = EllipticCurve::from_integers(K, {0, 0, 0, 0, 3});
    CHECK(reduction_type(A3, P3).kind == ReductionKind::additive_or_unknown);
    // scaled by 5: x -> 25 x, y -> 125 y gives a non-minimal model, good at 5
    EllipticCurve S = EllipticCurve::from_integers(K, {0, 0, 0, 625, 0});
    ReductionInfo s = reduction_type(S, P5);
    CHECK(s.kind == ReductionKind::good);
    CHECK(s.v_delta_min == 0);
    REQUIRE(s.trace);
    CHECK(*s.trace == trace_of_frobenius(curve(K, "E1"), P5));
}

TEST_CASE("traces of curves with full 2-torsion")
{
    CHECK(possible_traces_full_2torsion(3) == std::set<std::int64_t>{0});
    CHECK(possible_traces_full_2torsion(5) == std::set<std::int64_t>{-2, 2});
    CHECK_ERRC(possible_traces_full_2torsion(8), Errc::even_q);
    CHECK_ERRC(possible_traces_full_2torsion(15), Errc::invalid_argument);
    CHECK_ERRC(possible_traces_full_2torsion(121, 100), Errc::cap_exceeded);
    int n = 0;
    for (auto& row : frozen("traces_frozen.txt")) {
        std::int64_t q = std::stol(row["q"]);
        std::set<std::int64_t> want;
        std::istringstream in(row["rest"]);
        for (std::int64_t t; in >> t;)
            want.insert(t);
        CAPTURE(q);
        CHECK(possible_traces_full_2torsion(q) == want);
        ++n;
    }
    CHECK(n == 18);
}

TEST_CASE("finite fields")
{
    FiniteField F = FiniteField::make(9, 100);
    CHECK(F.characteristic() == 3);
    CHECK(F.degree() == 2);
    int squares = 0;
    for (FiniteField::Elem x = 1; x < 9; ++x)
        squares += F.chi(x) == 1;
    CHECK(squares == 4);
    CHECK(F.chi(0) == 0);
    CHECK(F.add(1, F.neg(1)) == 0);
}

TEST_CASE("quadratic twists")
{
    auto K = QuadraticField::make(-2);
    EllipticCurve E2 = curve(K, "E2");
    EllipticCurve T = quadratic_twist(E2, K.element(-1));
    CHECK(T.coefficients() == curve(K, "E3").coefficients());
    CHECK_ERRC(quadratic_twist(E2, K.zero()), Errc::zero_twist);
    EllipticCurve X = quadratic_twist(curve(K, "X1"), K.element(3));
    CHECK(X.j().rational_value() == curve(K, "X1").j().rational_value());
}

TEST_CASE("CM j-invariants")
{
    const auto& js = cm_j_invariants();
    CHECK(js.size() == 13);
    CHECK(std::is_sorted(js.begin(), js.end()));
    CHECK(std::adjacent_find(js.begin(), js.end()) == js.end());
    CHECK(has_cm_j(mpz_class(1728)));
    CHECK(has_cm_j(mpz_class(-12288000)));
    CHECK(!has_cm_j(mpz_class(128)));
    auto K = QuadraticField::make(-2);
    CHECK(cm_status(curve(K, "E1")) == CmStatus::cm);
    CHECK(cm_status(curve(K, "E2")) == CmStatus::no_cm);
    EllipticCurve N = EllipticCurve(K, {K.zero(), K.zero(), K.zero(), K.omega(), K.one()});
    CHECK(cm_status(N) == CmStatus::unknown);
    CHECK_ERRC(has_cm_j(N.j()), Errc::non_rational_j);
    CHECK(cm_status_name(CmStatus::no_cm) == "no_cm");
}

TEST_CASE("property: c4^3 - c6^2 = 1728 Delta")
{
    Gen g(301);
    int n = 0;
    while (n < 1000) {
        int d = g.field();
        auto K = QuadraticField::make(d);
        std::array<AlgInt, 5> a = {g.element(d, 5), g.element(d, 5), g.element(d, 5), g.element(d, 50),
                                   g.element(d, 50)};
        try {
            EllipticCurve E(K, a);
            REQUIRE(E.c4().pow(3) - E.c6().pow(2) == mpz_class(1728) * E.discriminant());
            REQUIRE(mpz_class(4) * E.b8() == E.b2() * E.b6() - E.b4() * E.b4());
            ++n;
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::singular_curve);
        }
    }
}

TEST_CASE("property: Hasse bound for E1, E2, E3 at odd primes of norm < 200")
{
    for (int d : {-1, -2, -7}) {
        auto K = QuadraticField::make(d);
        for (const std::string name : {"E1", "E2", "E3"}) {
            EllipticCurve E = curve(K, name);
            for (const PrimeIdeal& P : primes_up_to(K, 199)) {
                if (P.residue_char == 2 || divides(P.generator, E.discriminant()))
                    continue;
                std::int64_t a = trace_of_frobenius(E, P);
                REQUIRE(a * a <= 4 * P.norm);
                if (name != "E1")
                    REQUIRE((P.norm + 1 - a) % 2 == 0); // E2, E3 have a rational 2-torsion point
                else
                    REQUIRE((P.norm + 1 - a) % 4 == 0); // E1 has (0, 0) and the 4-torsion of y^2 = x^3 + x
            }
        }
    }
}

TEST_CASE("property: brute-force count matches a character sum")
{
    Gen g(302);
    int n = 0;
    while (n < 50) {
        int d = g.field();
        auto K = QuadraticField::make(d);
        auto ps = primes_up_to(K, 400);
        const PrimeIdeal& P = ps[g.range(0, static_cast<long>(ps.size()) - 1)];
        if (P.residue_degree != 1 || P.residue_char < 5)
            continue;
        AlgInt a4 = g.element(d, 30), a6 = g.element(d, 30);
        AlgInt disc = mpz_class(-16) * (mpz_class(4) * a4.pow(3) + mpz_class(27) * a6 * a6);
        if (disc.is_zero() || divides(P.generator, disc))
            continue;
        EllipticCurve E(K, {K.zero(), K.zero(), K.zero(), a4, a6});
        const long p = P.residue_char, r = residue_of_omega(P);
        const long A = image(a4, r, p), B = image(a6, r, p);
        long s = 0;
        for (long x = 0; x < p; ++x)
            s += legendre((x * x % p * x + A * x + B) % p, p);
        CAPTURE(P.generator.to_string());
        REQUIRE(count_points(E, P) == p + 1 + s);
        ++n;
    }
}

TEST_CASE("property: full 2-torsion traces are congruent to q + 1 mod 4")
{
    for (std::int64_t q = 3; q < 50; q += 2) {
        if (prime_power_decomposition(q).second == 0)
            continue;
        for (std::int64_t t : possible_traces_full_2torsion(q)) {
            REQUIRE((q + 1 - t) % 4 == 0);
            REQUIRE(t * t <= 4 * q);
        }
    }
}

TEST_CASE("property: twisting changes a_P by the character and is an involution")
{
    Gen g(303);
    for (int i = 0; i < 60; ++i) {
        int d = g.field();
        auto K = QuadraticField::make(d);
        EllipticCurve E = curve(K, std::array<const char*, 4>{"E2", "X1", "X2", "X3"}[g.range(0, 3)]);
        AlgInt lambda = g.nonzero(d, 12);
        EllipticCurve T = quadratic_twist(E, lambda);
        EllipticCurve TT = quadratic_twist(T, lambda);
        REQUIRE(T.j().rational_value() == E.j().rational_value());
        for (const PrimeIdeal& P : primes_up_to(K, 60)) {
            if (P.residue_char == 2 || divides(P.generator, E.discriminant()) || divides(P.generator, lambda))
                continue;
            std::int64_t a = trace_of_frobenius(E, P);
            std::int64_t b = trace_of_frobenius(T, P);
            REQUIRE((b == a || b == -a));
            if (P.residue_degree == 1) {
                const long p = P.residue_char;
                REQUIRE(b == legendre(image(lambda, residue_of_omega(P), p), p) * a);
            }
            REQUIRE(trace_of_frobenius(TT, P) == a);
        }
    }
}

TEST_CASE("small worked cases")
{
    auto K2 = QuadraticField::make(-2);
    PrimeIdeal m1 = prime_ideal_of(K2, K2.element(1, 1));
    ReductionInfo r = reduction_type(curve(K2, "E2"), m1);
    CHECK(r.kind == ReductionKind::good);
    CHECK(r.v_delta_min == 0);
    CHECK(trace_of_frobenius(curve(K2, "E1"), m1) == 0);
    auto Qi = QuadraticField::make(-1);
    EllipticCurve C = EllipticCurve::from_integers(Qi, {0, 0, 0, -1, 0});
    CHECK(C.discriminant() == Qi.element(64));
    for (auto& [P, e] : split_prime(Qi, 5))
        CHECK(reduction_type(C, P).kind == ReductionKind::good);
    CHECK(quadratic_twist(curve(K2, "E1"), K2.one()).j().rational_value() == 1728);
    CHECK(quadratic_twist(curve(K2, "E2"), K2.element(5, 3)).j().rational_value() == 128);
    CHECK(has_cm_j(mpz_class(0)));
    for (std::int64_t t : possible_traces_full_2torsion(9))
        CHECK((t % 4 + 4) % 4 == 2);
}
