#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fermatk/error.hpp"
#include "fermatk/quadint.hpp"

namespace fermatk::test {

// Seeded generator for the property suites; every run draws the same cases.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    AlgInt element(int d, long r) { return AlgInt(d, range(-r, r), range(-r, r)); }

    AlgInt nonzero(int d, long r)
    {
        for (;;) {
            AlgInt x = element(d, r);
            if (!x.is_zero())
                return x;
        }
    }

    int field() { return std::array<int, 3>{-1, -2, -7}[range(0, 2)]; }

private:
    std::mt19937_64 rng_;
};

inline std::string oracle_path(const std::string& name) { return std::string(FERMATK_TEST_DIR) + "/oracles/" + name; }

inline std::string fixture_path(const std::string& name) { return std::string(FERMATK_TEST_DIR) + "/data/" + name; }

inline std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Lines of a frozen oracle file as key=value maps; the first word is kept
// under "kind".
inline std::vector<std::map<std::string, std::string>> frozen(const std::string& name)
{
    std::vector<std::map<std::string, std::string>> out;
    std::istringstream in(read_file(oracle_path(name)));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream w(line);
        std::map<std::string, std::string> m;
        std::string tok;
        w >> m["kind"];
        std::string rest;
        while (w >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                rest += (rest.empty() ? "" : " ") + tok;
            else
                m[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        m["rest"] = rest;
        out.push_back(std::move(m));
    }
    return out;
}

inline AlgInt parse_coords(int d, const std::string& s)
{
    auto c = s.find(',');
    return AlgInt(d, std::stol(s.substr(0, c)), std::stol(s.substr(c + 1)));
}

} // namespace fermatk::test

// Checks that expr throws fermatk::Error with the given code.
#define CHECK_ERRC(expr, errc)                                                                                         \
    do {                                                                                                               \
        bool thrown_ = false;                                                                                          \
        try {                                                                                                          \
            (void)(expr);                                                                                              \
        } catch (const ::fermatk::Error& e_) {                                                                         \
            thrown_ = true;                                                                                            \
            CHECK_MESSAGE(e_.code() == (errc), e_.what());                                                             \
        }                                                                                                              \
        CHECK_MESSAGE(thrown_, #expr " did not throw");                                                                \
    } while (0)
