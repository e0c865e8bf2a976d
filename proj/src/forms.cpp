#include "fermatk/forms.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fermatk/integer_factor.hpp"

#ifndef FERMATK_DATA_DIR
#define FERMATK_DATA_DIR "data"
#endif

namespace fermatk {

using ordered_json = nlohmann::ordered_json;

std::optional<std::int64_t> NewformRecord::eigenvalue(const AlgInt& P) const
{
    for (const Eigenvalue& e : eigenvalues)
        if (associates(e.prime, P))
            return e.value;
    return std::nullopt;
}

std::optional<EllipticCurve> NewformRecord::matched_curve() const
{
    if (!curve)
        return std::nullopt;
    return EllipticCurve(QuadraticField::make(d), *curve);
}

const DimensionDeclaration* NewformDataset::dimension_at(const AlgInt& level) const
{
    for (const DimensionDeclaration& dim : dimensions)
        if (associates(dim.level, level))
            return &dim;
    return nullptr;
}

std::vector<const NewformRecord*> NewformDataset::records_at(const AlgInt& level) const
{
    std::vector<const NewformRecord*> out;
    for (const NewformRecord& r : records)
        if (associates(r.level, level))
            out.push_back(&r);
    return out;
}

namespace {

[[noreturn]] void malformed(int line, const std::string& what)
{
    throw ParseError(Errc::malformed_record, line, what);
}

std::vector<std::string> split_words(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

std::int64_t parse_int(const std::string& s, int line)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        malformed(line, "expected an integer, got '" + s + "'");
    return v;
}

mpz_class parse_mpz(const std::string& s, int line)
{
    std::string digits = s;
    if (!digits.empty() && digits[0] == '-')
        digits.erase(0, 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        malformed(line, "expected an integer, got '" + s + "'");
    return mpz_class(s);
}

AlgInt parse_coords(int d, const std::string& s, int line)
{
    auto comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
        malformed(line, "expected coordinates a,b, got '" + s + "'");
    return AlgInt(d, parse_mpz(s.substr(0, comma), line), parse_mpz(s.substr(comma + 1), line));
}

bool parse_flag(const std::string& s, int line)
{
    if (s == "0")
        return false;
    if (s == "1")
        return true;
    malformed(line, "expected 0 or 1, got '" + s + "'");
}

void expect_keyword(const std::vector<std::string>& w, std::size_t i, const char* kw, int line)
{
    if (i >= w.size() || w[i] != kw)
        malformed(line, std::string("expected ") + kw);
}

PrimeIdeal checked_prime(const QuadraticField& K, const AlgInt& g, std::int64_t norm, int line)
{
    PrimeIdeal P = [&] {
        try {
            return prime_ideal_of(K, g);
        } catch (const Error&) {
            malformed(line, g.to_string() + " does not generate a prime ideal");
        }
    }();
    if (P.norm != norm)
        malformed(line, "stated norm " + std::to_string(norm) + " but N(" + g.to_string() + ") = "
                            + std::to_string(P.norm));
    return P;
}

std::int64_t checked_level_norm(const AlgInt& level, std::int64_t norm, int line)
{
    if (level.is_zero())
        malformed(line, "zero level");
    if (level.norm() != norm)
        malformed(line, "stated norm " + std::to_string(norm) + " but N(" + level.to_string() + ") = "
                            + level.norm().get_str());
    return norm;
}

void check_eigenvalue(const QuadraticField& K, const NewformRecord& r, const Eigenvalue& e, int line)
{
    PrimeIdeal P = checked_prime(K, e.prime, e.norm, line);
    if (valuation(r.level, P) > 0)
        malformed(line, "eigenvalue at " + e.prime.to_string() + " which divides the level");
    if (r.eigenvalue(e.prime))
        malformed(line, "second eigenvalue at " + e.prime.to_string());
    if (e.value * e.value > 4 * e.norm)
        throw ParseError(Errc::eigenvalue_bound_violation, line,
                         "|a_P| = " + std::to_string(e.value) + " exceeds 2 sqrt(" + std::to_string(e.norm) + ")");
}

void check_dataset(const NewformDataset& ds)
{
    for (const DimensionDeclaration& dim : ds.dimensions) {
        auto n = ds.records_at(dim.level).size();
        if (static_cast<int>(n) != dim.newforms)
            malformed(0, "level " + dim.level.to_string() + " declares " + std::to_string(dim.newforms)
                             + " newforms but has " + std::to_string(n) + " records");
        if (dim.newforms > dim.cuspidal)
            malformed(0, "level " + dim.level.to_string() + " has more newforms than cusp forms");
    }
}

NewformDataset parse_text(std::istream& in)
{
    std::optional<NewformDataset> ds;
    std::optional<QuadraticField> K;
    std::optional<NewformRecord> cur;
    std::set<std::string> labels;
    int line_no = 0;
    bool in_header = true;

    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto w = split_words(line);
        if (w.empty())
            continue;
        const std::string& kw = w[0];

        if (!ds) {
            if (kw != "FIELD" || w.size() != 2 || w[1].rfind("d=", 0) != 0)
                malformed(line_no, "file must start with FIELD d=<int>");
            int d = static_cast<int>(parse_int(w[1].substr(2), line_no));
            if (!is_supported_field(d))
                malformed(line_no, "unsupported field d=" + std::to_string(d));
            K = QuadraticField::make(d);
            ds = NewformDataset{d, {}, {}, {}, {}};
            continue;
        }

        if (kw == "PROVENANCE" || kw == "NOTE") {
            if (!in_header)
                malformed(line_no, kw + " after the first FORM");
            if (line.size() <= kw.size() + 1 || line[kw.size()] != ' ')
                malformed(line_no, kw + " without text");
            std::string text = line.substr(kw.size() + 1);
            (kw == "NOTE" ? ds->notes : ds->provenance).push_back(text);
        } else if (kw == "DIM") {
            if (!in_header)
                malformed(line_no, "DIM after the first FORM");
            if (w.size() != 9)
                malformed(line_no, "DIM needs LEVEL, NORM, CUSPIDAL and NEWFORMS");
            expect_keyword(w, 1, "LEVEL", line_no);
            expect_keyword(w, 3, "NORM", line_no);
            expect_keyword(w, 5, "CUSPIDAL", line_no);
            expect_keyword(w, 7, "NEWFORMS", line_no);
            AlgInt level = parse_coords(ds->d, w[2], line_no);
            std::int64_t norm = checked_level_norm(level, parse_int(w[4], line_no), line_no);
            int cusp = static_cast<int>(parse_int(w[6], line_no));
            int newf = static_cast<int>(parse_int(w[8], line_no));
            if (cusp < 0 || newf < 0)
                malformed(line_no, "negative dimension");
            if (ds->dimension_at(level))
                malformed(line_no, "second DIM for level " + level.to_string());
            ds->dimensions.push_back({level, norm, cusp, newf});
        } else if (kw == "FORM") {
            if (cur)
                malformed(line_no, "FORM before END of " + cur->label);
            in_header = false;
            if (w.size() != 10)
                malformed(line_no, "FORM needs label, LEVEL, NORM, CM and BC");
            expect_keyword(w, 2, "LEVEL", line_no);
            expect_keyword(w, 4, "NORM", line_no);
            expect_keyword(w, 6, "CM", line_no);
            expect_keyword(w, 8, "BC", line_no);
            if (labels.count(w[1]))
                throw ParseError(Errc::duplicate_label, line_no, "label " + w[1] + " repeated");
            labels.insert(w[1]);
            AlgInt level = parse_coords(ds->d, w[3], line_no);
            std::int64_t norm = checked_level_norm(level, parse_int(w[5], line_no), line_no);
            cur = NewformRecord{ds->d, w[1], level, norm, parse_flag(w[7], line_no), parse_flag(w[9], line_no),
                                std::nullopt, {}};
        } else if (kw == "CURVE") {
            if (!cur)
                malformed(line_no, "CURVE outside a FORM");
            if (cur->curve || !cur->eigenvalues.empty())
                malformed(line_no, "CURVE must directly follow FORM");
            if (w.size() != 6)
                malformed(line_no, "CURVE needs five coefficients");
            std::array<AlgInt, 5> a{K->zero(), K->zero(), K->zero(), K->zero(), K->zero()};
            for (int i = 0; i < 5; ++i)
                a[i] = parse_coords(ds->d, w[i + 1], line_no);
            try {
                EllipticCurve(*K, a);
            } catch (const Error& e) {
                malformed(line_no, e.what());
            }
            cur->curve = a;
        } else if (kw == "AP") {
            if (!cur)
                malformed(line_no, "AP outside a FORM");
            if (w.size() != 6)
                malformed(line_no, "AP needs prime, NORM and VALUE");
            expect_keyword(w, 2, "NORM", line_no);
            expect_keyword(w, 4, "VALUE", line_no);
            Eigenvalue e{parse_coords(ds->d, w[1], line_no), parse_int(w[3], line_no), parse_int(w[5], line_no)};
            check_eigenvalue(*K, *cur, e, line_no);
            cur->eigenvalues.push_back(std::move(e));
        } else if (kw == "END") {
            if (!cur)
                malformed(line_no, "END outside a FORM");
            if (w.size() != 1)
                malformed(line_no, "trailing text after END");
            ds->records.push_back(std::move(*cur));
            cur.reset();
        } else {
            malformed(line_no, "unknown record '" + kw + "'");
        }
    }
    if (!ds)
        malformed(line_no, "empty file");
    if (cur)
        malformed(line_no, "missing END for " + cur->label);
    check_dataset(*ds);
    return std::move(*ds);
}

std::string coords_of_json(const ordered_json& j)
{
    if (!j.is_string())
        malformed(0, "expected a coordinate string");
    return j.get<std::string>();
}

NewformDataset parse_json(std::istream& in)
{
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        malformed(0, std::string("invalid JSON: ") + e.what());
    }
    try {
        int d = j.at("field").get<int>();
        if (!is_supported_field(d))
            malformed(0, "unsupported field d=" + std::to_string(d));
        QuadraticField K = QuadraticField::make(d);
        NewformDataset ds{d, {}, {}, {}, {}};
        for (auto& s : j.at("provenance"))
            ds.provenance.push_back(s.get<std::string>());
        for (auto& s : j.at("notes"))
            ds.notes.push_back(s.get<std::string>());
        for (auto& dim : j.at("dimensions")) {
            AlgInt level = parse_coords(d, coords_of_json(dim.at("level")), 0);
            std::int64_t norm = checked_level_norm(level, dim.at("norm").get<std::int64_t>(), 0);
            if (ds.dimension_at(level))
                malformed(0, "second dimension entry for level " + level.to_string());
            ds.dimensions.push_back({level, norm, dim.at("cuspidal").get<int>(), dim.at("newforms").get<int>()});
        }
        std::set<std::string> labels;
        for (auto& f : j.at("forms")) {
            std::string label = f.at("label").get<std::string>();
            if (!labels.insert(label).second)
                throw ParseError(Errc::duplicate_label, 0, "label " + label + " repeated");
            AlgInt level = parse_coords(d, coords_of_json(f.at("level")), 0);
            std::int64_t norm = checked_level_norm(level, f.at("norm").get<std::int64_t>(), 0);
            NewformRecord r{d, label, level, norm, f.at("cm").get<bool>(), f.at("base_change").get<bool>(),
                            std::nullopt, {}};
            if (f.contains("curve")) {
                auto& c = f.at("curve");
                if (!c.is_array() || c.size() != 5)
                    malformed(0, "curve needs five coefficients");
                std::array<AlgInt, 5> a{K.zero(), K.zero(), K.zero(), K.zero(), K.zero()};
                for (int i = 0; i < 5; ++i)
                    a[i] = parse_coords(d, coords_of_json(c[i]), 0);
                try {
                    EllipticCurve(K, a);
                } catch (const Error& e) {
                    malformed(0, e.what());
                }
                r.curve = a;
            }
            for (auto& e : f.at("eigenvalues")) {
                Eigenvalue ev{parse_coords(d, coords_of_json(e.at("prime")), 0), e.at("norm").get<std::int64_t>(),
                              e.at("value").get<std::int64_t>()};
                check_eigenvalue(K, r, ev, 0);
                r.eigenvalues.push_back(std::move(ev));
            }
            ds.records.push_back(std::move(r));
        }
        check_dataset(ds);
        return ds;
    } catch (const nlohmann::json::exception& e) {
        malformed(0, std::string("bad JSON newform document: ") + e.what());
    }
}

} // namespace

NewformDataset parse_newform_file(std::istream& in)
{
    in >> std::ws;
    if (in.peek() == '{')
        return parse_json(in);
    return parse_text(in);
}

NewformDataset parse_newform_text(std::string_view text)
{
    std::istringstream is{std::string(text)};
    return parse_newform_file(is);
}

NewformDataset load_newform_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(Errc::malformed_record, 0, "cannot open " + path);
    return parse_newform_file(in);
}

std::string write_newform_file(const NewformDataset& ds)
{
    std::ostringstream os;
    os << "FIELD d=" << ds.d << "\n";
    for (auto& s : ds.provenance)
        os << "PROVENANCE " << s << "\n";
    for (auto& s : ds.notes)
        os << "NOTE " << s << "\n";
    for (auto& dim : ds.dimensions)
        os << "DIM LEVEL " << dim.level.coords() << " NORM " << dim.norm << " CUSPIDAL " << dim.cuspidal
           << " NEWFORMS " << dim.newforms << "\n";
    for (auto& r : ds.records) {
        os << "\nFORM " << r.label << " LEVEL " << r.level.coords() << " NORM " << r.level_norm << " CM "
           << (r.cm ? 1 : 0) << " BC " << (r.base_change ? 1 : 0) << "\n";
        if (r.curve) {
            os << "CURVE";
            for (auto& a : *r.curve)
                os << " " << a.coords();
            os << "\n";
        }
        for (auto& e : r.eigenvalues)
            os << "AP " << e.prime.coords() << " NORM " << e.norm << " VALUE " << e.value << "\n";
        os << "END\n";
    }
    return os.str();
}

std::string newform_dataset_to_json(const NewformDataset& ds)
{
    ordered_json j;
    j["field"] = ds.d;
    j["provenance"] = ds.provenance;
    j["notes"] = ds.notes;
    j["dimensions"] = ordered_json::array();
    for (auto& dim : ds.dimensions)
        j["dimensions"].push_back({{"level", dim.level.coords()},
                                   {"norm", dim.norm},
                                   {"cuspidal", dim.cuspidal},
                                   {"newforms", dim.newforms}});
    j["forms"] = ordered_json::array();
    for (auto& r : ds.records) {
        ordered_json f;
        f["label"] = r.label;
        f["level"] = r.level.coords();
        f["norm"] = r.level_norm;
        f["cm"] = r.cm;
        f["base_change"] = r.base_change;
        if (r.curve) {
            f["curve"] = ordered_json::array();
            for (auto& a : *r.curve)
                f["curve"].push_back(a.coords());
        }
        f["eigenvalues"] = ordered_json::array();
        for (auto& e : r.eigenvalues)
            f["eigenvalues"].push_back({{"prime", e.prime.coords()}, {"norm", e.norm}, {"value", e.value}});
        j["forms"].push_back(std::move(f));
    }
    return j.dump(2) + "\n";
}

std::string bundled_newform_path(int d)
{
    std::string dir = FERMATK_DATA_DIR;
    switch (d) {
    case -1: return dir + "/newforms_qi.txt";
    case -2: return dir + "/newforms_qsqrtm2.txt";
    case -7: return dir + "/newforms_qsqrtm7.txt";
    default: throw Error(Errc::unsupported_field, "no bundled data for d=" + std::to_string(d));
    }
}

std::string bundled_rational_ap_path()
{
    return std::string(FERMATK_DATA_DIR) + "/rational_ap.txt";
}

mpz_class lift_level_norm(const mpz_class& N1, const mpz_class& N2, const mpz_class& D)
{
    if (D == 0)
        throw Error(Errc::non_integral_level, "D = 0");
    mpz_class num = N1 * N2, den = D * D;
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw Error(Errc::non_integral_level,
                    "D^2 = " + den.get_str() + " does not divide N1 N2 = " + num.get_str());
    return num / den;
}

std::map<std::string, RationalCurveData> parse_rational_ap_file(std::istream& in)
{
    std::map<std::string, RationalCurveData> out;
    std::optional<RationalCurveData> cur;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        auto w = split_words(line);
        if (w.empty() || w[0][0] == '#')
            continue;
        if (w[0] == "RATIONAL") {
            if (cur)
                malformed(line_no, "RATIONAL before END");
            if (w.size() < 4 || w[2] != "MODEL")
                malformed(line_no, "RATIONAL <label> MODEL a1,a2,a3,a4,a6 ...");
            RationalCurveData r;
            r.label = w[1];
            std::istringstream ms(w[3]);
            int i = 0;
            for (std::string c; std::getline(ms, c, ',');) {
                if (i == 5)
                    malformed(line_no, "too many coefficients");
                r.model[i++] = static_cast<long>(parse_int(c, line_no));
            }
            if (i != 5)
                malformed(line_no, "model needs five coefficients");
            for (std::size_t k = 4; k < w.size();) {
                if (w[k] == "LEVEL" && k + 1 < w.size()) {
                    r.level = static_cast<long>(parse_int(w[k + 1], line_no));
                    k += 2;
                } else if (w[k] == "TWIST_OF" && k + 3 < w.size() && w[k + 2] == "BY") {
                    r.twist_of = w[k + 1];
                    r.twist_by = static_cast<long>(parse_int(w[k + 3], line_no));
                    k += 4;
                } else {
                    malformed(line_no, "unexpected '" + w[k] + "'");
                }
            }
            cur = std::move(r);
        } else if (w[0] == "AP") {
            if (!cur || w.size() != 3)
                malformed(line_no, "AP <p> <a_p> inside a RATIONAL block");
            std::int64_t p = parse_int(w[1], line_no);
            if (!is_prime(p) || !cur->ap.emplace(p, parse_int(w[2], line_no)).second)
                malformed(line_no, "bad or repeated prime " + w[1]);
        } else if (w[0] == "END") {
            if (!cur)
                malformed(line_no, "END outside a block");
            std::string label = cur->label;
            if (!out.emplace(label, std::move(*cur)).second)
                throw ParseError(Errc::duplicate_label, line_no, "label " + label + " repeated");
            cur.reset();
        } else {
            malformed(line_no, "unknown record '" + w[0] + "'");
        }
    }
    if (cur)
        malformed(line_no, "missing END");
    return out;
}

std::map<std::string, RationalCurveData> load_rational_ap_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(Errc::malformed_record, 0, "cannot open " + path);
    return parse_rational_ap_file(in);
}

BaseChangeReport base_change_consistency(const std::map<std::int64_t, std::int64_t>& ap_f,
                                         const std::map<std::int64_t, std::int64_t>& ap_twist,
                                         const EllipticCurve& E, std::int64_t X, std::int64_t count_cap)
{
    const QuadraticField& K = E.field();
    BaseChangeReport out;
    for (std::int64_t p = 3; p < X; p += 2) {
        if (!is_prime(p) || K.discriminant() % p == 0)
            continue;
        auto fi = ap_f.find(p), ti = ap_twist.find(p);
        if (fi == ap_f.end() || ti == ap_twist.end())
            continue;
        auto primes = split_prime(K, p);
        bool bad = std::any_of(primes.begin(), primes.end(),
                               [&](const auto& Pe) { return valuation(E.discriminant(), Pe.first) > 0; });
        if (bad)
            continue;
        const std::int64_t a = fi->second, at = ti->second;
        auto note = [&](std::string what) { out.mismatches.push_back({p, std::move(what)}); };
        if (primes.size() == 2) {
            out.split_primes.push_back(p);
            if (at != a)
                note("a_p(f x chi) = " + std::to_string(at) + " but a_p(f) = " + std::to_string(a));
            for (auto& [P, e] : primes) {
                std::int64_t t = trace_of_frobenius(E, P, count_cap);
                if (t != a)
                    note("trace at " + P.generator.to_string() + " is " + std::to_string(t) + ", a_p(f) = "
                         + std::to_string(a));
            }
        } else {
            out.inert_primes.push_back(p);
            if (at != -a)
                note("a_p(f x chi) = " + std::to_string(at) + " but -a_p(f) = " + std::to_string(-a));
            std::int64_t t = trace_of_frobenius(E, primes[0].first, count_cap);
            if (t != a * a - 2 * p)
                note("trace at (" + std::to_string(p) + ") is " + std::to_string(t) + ", a_p(f)^2 - 2p = "
                     + std::to_string(a * a - 2 * p));
        }
    }
    return out;
}

MatchResult match_curve_to_form(const EllipticCurve& E, const NewformRecord& f, std::int64_t X,
                                std::int64_t count_cap)
{
    const QuadraticField& K = E.field();
    if (K.d() != f.d)
        throw Error(Errc::field_mismatch, "curve and form over different fields");
    std::vector<std::pair<const Eigenvalue*, PrimeIdeal>> comparable;
    for (const Eigenvalue& e : f.eigenvalues) {
        if (e.norm >= X)
            continue;
        PrimeIdeal P = prime_ideal_of(K, e.prime);
        if (valuation(E.discriminant(), P) > 0)
            continue;
        comparable.emplace_back(&e, P);
    }
    if (comparable.size() < 5)
        throw Error(Errc::insufficient_data, "only " + std::to_string(comparable.size())
                                                 + " comparable primes of norm < " + std::to_string(X) + " for "
                                                 + f.label);
    MatchResult r{true, 0, std::nullopt, std::nullopt};
    for (auto& [e, P] : comparable) {
        std::int64_t t = trace_of_frobenius(E, P, count_cap);
        ++r.compared;
        if (t != e->value) {
            r.matched = false;
            r.first_mismatch = *e;
            r.mismatch_trace = t;
            break;
        }
    }
    return r;
}

} // namespace fermatk
