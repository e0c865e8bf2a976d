// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fermatk/cli.hpp"
#include "fermatk/elimination.hpp"
#include "fermatk/localfields.hpp"
#include "fermatk/report.hpp"
#include "fermatk/residue_ring.hpp"

using namespace fermatk;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> why;

    void operator()(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            why.push_back(what);
        }
    }
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<void(Check&)>& body)
{
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0)
        c(s < limit_s, "took " + std::to_string(s) + " s, limit " + std::to_string(limit_s) + " s");
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << n << " " << name;
    std::cout << " (" << std::fixed;
    std::cout.precision(3);
    std::cout << s << " s)";
    for (auto& w : c.why)
        std::cout << "; " << w;
    std::cout << "\n";
    if (!c.ok)
        ++failures;
}

std::string run(std::vector<std::string> args, int& rc)
{
    args.insert(args.begin(), "fermatk");
    std::vector<const char*> argv;
    for (auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str();
}

bool contains(const std::string& s, const std::string& t) { return s.find(t) != std::string::npos; }

} // namespace

int main()
{
    criterion(1, "Serre levels at the primes over 2", 1.0, [](Check& c) {
        int rc = 0;
        c(contains(run({"levels", "--field", "-1"}, rc), "v(N) = 8 at (1+i)") && rc == 0, "Q(i)");
        c(contains(run({"levels", "--field", "-2"}, rc), "v(N) = 8 at (sqrt(-2))") && rc == 0, "Q(sqrt(-2))");
        std::string s = run({"levels", "--field", "-7"}, rc);
        c(contains(s, "exponents (4,1) at (w), (1-w)") && contains(s, "exponents (1,4) at (w), (1-w)") && rc == 0,
          "Q(sqrt(-7))");
    });

    criterion(2, "local square classes for Q(i) modulo (1+i)^5", 5.0, [](Check& c) {
        auto K = QuadraticField::make(-1);
        AlgInt b = two_adic_square_modulus(K);
        c(associates(b, K.element(1, 1).pow(5)), "b = (1+i)^5");
        CokernelReport r = unit_square_cokernel(K, b);
        c(r.codomain.to_string() == "Z/2 x Z/2 x Z/2", "codomain " + r.codomain.to_string());
        c(r.image_order == 2, "unit image order");
        c(r.representatives.size() == 4, "cokernel order");
        auto ref = reference_cokernel_representatives(K);
        c(ref.size() == 4 && distinct_cokernel_cosets(K, b, ref), "1, 2+i, -3, -2+i distinct cosets");
        LevelPrediction p = predicted_levels(K);
        c(p.audit.max_exponent == 4, "max conductor exponent");
        c(p.audit.reference_representatives_valid.value_or(false), "reference representatives audit");
    });

    criterion(3, "ray class groups at the character conductors", 0, [](Check& c) {
        auto Qi = QuadraticField::make(-1), K2 = QuadraticField::make(-2), K7 = QuadraticField::make(-7);
        c(ray_class_group(K7, K7.omega().pow(2)).is_trivial(), "Q(sqrt(-7)), (w)^2");
        c(ray_class_group(K7, K7.element(1, -1).pow(2)).is_trivial(), "Q(sqrt(-7)), (1-w)^2");
        c(ray_class_group(Qi, Qi.element(1, 1).pow(4)).to_string() == "Z/2", "Q(i)");
        c(ray_class_group(K2, K2.omega().pow(4)).to_string() == "Z/4", "Q(sqrt(-2))");
    });

    criterion(4, "point counts and full 2-torsion traces", 0, [](Check& c) {
        auto K = QuadraticField::make(-2);
        PrimeIdeal m1 = prime_ideal_of(K, K.element(1, 1));
        c(count_points(EllipticCurve::from_integers(K, {0, 1, 0, 1, 1}), m1) == 6, "#E2(F_3)");
        c(count_points(EllipticCurve::from_integers(K, {0, -1, 0, 1, -1}), m1) == 2, "#E3(F_3)");
        c(count_points(EllipticCurve::from_integers(K, {0, 0, 0, 1, 0}), m1) == 4, "#E1(F_3)");
        c(possible_traces_full_2torsion(3) == std::set<std::int64_t>{0}, "T(3)");
    });

    criterion(5, "elimination and pipeline thresholds", 60.0, [](Check& c) {
        auto K = QuadraticField::make(-2);
        NewformDataset ds = load_newform_file(bundled_newform_path(-2));
        EliminationReport r = run_pipeline(K, ds);
        for (const FormOutcome& f : r.forms) {
            if (f.kind == FormOutcomeKind::eliminated_by_cm) {
                c(f.level.norm == 32, "CM form at level norm 32");
                continue;
            }
            bool sub = f.kind == FormOutcomeKind::survivors;
            for (auto l : f.survivors)
                sub = sub && (l == 2 || l == 3);
            c(sub, f.label + " survivors within {2, 3}");
        }
        c(r.forms.size() == 3, "three forms");
        for (int d : {-1, -2, -7}) {
            int rc = -1;
            std::string out = run({"pipeline", "--field", std::to_string(d), "--data", "bundled"}, rc);
            c(rc == 0, "exit code for d=" + std::to_string(d));
            c(contains(out, "Final threshold p0 = " + std::to_string(expected_final_threshold(d))),
              "p0 for d=" + std::to_string(d));
        }
    });

    criterion(6, "irreducibility thresholds and case tables", 0, [](Check& c) {
        std::vector<std::int64_t> want = {19, 19, 17};
        int i = 0;
        bool saw13 = false, saw17 = false, saw3 = false;
        for (int d : {-1, -2, -7}) {
            IrreducibilityResult r = irreducibility_threshold(QuadraticField::make(d));
            c(r.threshold == want[i++], "threshold for d=" + std::to_string(d));
            for (auto& cs : r.cases) {
                saw13 = saw13 || (cs.bound == 13 && contains(cs.citation, "Kamienny"));
                saw17 = saw17 || (cs.bound == 17 && contains(cs.citation, "Derickx"));
                saw3 = saw3 || (cs.bound == 3 && cs.id == "p split, divides both conductors");
            }
        }
        c(saw13 && saw17 && saw3, "case bounds 13, 17 and split value 3");
        int rc = 0;
        c(contains(run({"bound", "--field", "-7", "--explain"}, rc), "p | 3"), "explain shows p | 3");
    });

    criterion(7, "base change: level and Euler factors for E1, E2, E3", 10.0, [](Check& c) {
        c(lift_level_norm(32, 64, 8) == 32, "lift_level_norm(32, 64, 8)");
        auto K = QuadraticField::make(-2);
        auto rat = load_rational_ap_file(bundled_rational_ap_path());
        for (const std::string name : {"E1", "E2", "E3"}) {
            const auto& f = rat.at(name);
            BaseChangeReport r = base_change_consistency(f.ap, rat.at(name + "_chi").ap,
                                                         EllipticCurve::from_integers(K, f.model), 200, 40000);
            c(r.mismatches.empty(), name + " mismatches");
            c(r.split_primes.size() + r.inert_primes.size() == 45, name + " prime count");
        }
    });

    criterion(8, "property suites", 0, [](Check& c) {
        std::mt19937_64 g(8);
        auto rnd = [&](long r) { return std::uniform_int_distribution<long>(-r, r)(g); };
        const int ds[] = {-1, -2, -7};
        int curves = 0;
        while (curves < 1000) {
            int d = ds[curves % 3];
            auto K = QuadraticField::make(d);
            std::array<AlgInt, 5> a = {K.element(rnd(5), rnd(5)), K.element(rnd(5), rnd(5)),
                                       K.element(rnd(5), rnd(5)), K.element(rnd(50), rnd(50)),
                                       K.element(rnd(50), rnd(50))};
            try {
                EllipticCurve E(K, a);
                if (E.c4().pow(3) - E.c6().pow(2) != mpz_class(1728) * E.discriminant())
                    c(false, "c4^3 - c6^2 = 1728 Delta");
                ++curves;
            } catch (const Error&) {
            }
        }
        for (int i = 0; i < 1000; ++i) {
            auto K = QuadraticField::make(ds[i % 3]);
            AlgInt x = K.element(rnd(1000), rnd(1000)), y = K.element(rnd(1000), rnd(1000));
            if ((x * y).norm() != x.norm() * y.norm())
                c(false, "norm multiplicativity");
            if (x.is_zero() || y.is_zero())
                continue;
            for (const PrimeIdeal& P : primes_up_to(K, 13))
                if (valuation(x * y, P) != valuation(x, P) + valuation(y, P))
                    c(false, "valuation additivity");
        }
        for (int d : ds) {
            auto K = QuadraticField::make(d);
            for (auto m : {std::array<long, 5>{0, 0, 0, 1, 0}, {0, 1, 0, 1, 1}, {0, -1, 0, 1, -1}}) {
                EllipticCurve E = EllipticCurve::from_integers(K, m);
                for (const PrimeIdeal& P : primes_up_to(K, 199)) {
                    if (P.residue_char == 2 || divides(P.generator, E.discriminant()))
                        continue;
                    std::int64_t a = trace_of_frobenius(E, P);
                    if (a * a > 4 * P.norm)
                        c(false, "Hasse bound");
                }
            }
        }
        int chars = 0;
        for (int d : ds) {
            auto K = QuadraticField::make(d);
            for (const PrimeIdeal& P : primes_up_to(K, 400)) {
                if (chars >= 50)
                    break;
                if (P.residue_degree != 1 || P.residue_char < 5)
                    continue;
                const long p = P.residue_char;
                long r = 0;
                while (mpz_class((P.generator.a() + P.generator.b() * r) % p) != 0
                       || (r * r - K.omega_trace() * r + K.omega_norm()) % p != 0)
                    ++r;
                long A = rnd(30), B = rnd(30);
                AlgInt a4 = K.element(A), a6 = K.element(B);
                if (((4 * A * A * A + 27 * B * B) % p + p) % p == 0)
                    continue;
                EllipticCurve E(K, {K.zero(), K.zero(), K.zero(), a4, a6});
                long s = 0;
                for (long x = 0; x < p; ++x) {
                    long v = ((x * x % p * x + A * x + B) % p + p) % p;
                    s += v == 0 ? 0 : mpz_legendre(mpz_class(v).get_mpz_t(), mpz_class(p).get_mpz_t());
                }
                if (count_points(E, P) != p + 1 + s)
                    c(false, "character sum at " + P.generator.to_string());
                ++chars;
            }
        }
        c(chars == 50, "50 character-sum cases");
        for (int d : ds) {
            auto K = QuadraticField::make(d);
            for (const PrimeIdeal& P : primes_over_two(K)) {
                for (int a = -7; a <= 7; ++a)
                    for (int b = -7; b <= 7; ++b) {
                        AlgInt l = K.element(a, b);
                        if (l.is_zero() || divides(P.generator, l))
                            continue;
                        if (quad_char_conductor_exponent(l, P) != quad_char_conductor_exponent(l, P, 2 * P.ram_index + 2))
                            c(false, "conductor stability at " + l.to_string());
                    }
            }
        }
    });

    return failures == 0 ? 0 : 1;
}
