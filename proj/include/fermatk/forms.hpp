#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermatk/ellcurve.hpp"

namespace fermatk {

/*
 * Newform files (UTF-8, one record per line, blank lines ignored):
 *
 *   FIELD d=<int>
 *   PROVENANCE <text>                                   (any number)
 *   NOTE <text>                                         (any number)
 *   DIM LEVEL <a>,<b> NORM <n> CUSPIDAL <c> NEWFORMS <k> (any number)
 *   FORM <label> LEVEL <a>,<b> NORM <n> CM <0|1> BC <0|1>
 *   CURVE <a1> <a2> <a3> <a4> <a6>                      (optional, each "a,b")
 *   AP <a>,<b> NORM <n> VALUE <v>
 *   ...
 *   END
 *
 * A file whose first non-space character is '{' is read as the JSON mirror
 * produced by newform_dataset_to_json.
 */

class ParseError : public Error {
public:
    ParseError(Errc code, int line, const std::string& what)
        : Error(code, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + what), line_(line)
    {
    }

    int line() const noexcept { return line_; }

private:
    int line_;
};

struct Eigenvalue {
    AlgInt prime; // generator as written in the file
    std::int64_t norm;
    std::int64_t value;
};

struct NewformRecord {
    int d;
    std::string label;
    AlgInt level;
    std::int64_t level_norm;
    bool cm;
    bool base_change;
    std::optional<std::array<AlgInt, 5>> curve;
    std::vector<Eigenvalue> eigenvalues;

    // a_P for the prime generated by P (any associate), if stored.
    std::optional<std::int64_t> eigenvalue(const AlgInt& P) const;
    std::optional<EllipticCurve> matched_curve() const;
};

struct DimensionDeclaration {
    AlgInt level;
    std::int64_t norm;
    int cuspidal;
    int newforms;
};

struct NewformDataset {
    int d;
    std::vector<std::string> provenance;
    std::vector<std::string> notes;
    std::vector<DimensionDeclaration> dimensions;
    std::vector<NewformRecord> records;

    const DimensionDeclaration* dimension_at(const AlgInt& level) const;
    std::vector<const NewformRecord*> records_at(const AlgInt& level) const;
};

// Throws ParseError with code malformed_record, eigenvalue_bound_violation
// or duplicate_label.
NewformDataset parse_newform_file(std::istream& in);
NewformDataset parse_newform_text(std::string_view text);
NewformDataset load_newform_file(const std::string& path);

std::string write_newform_file(const NewformDataset& ds);
std::string newform_dataset_to_json(const NewformDataset& ds);

// Location of the bundled snapshot for a field.
std::string bundled_newform_path(int d);
std::string bundled_rational_ap_path();

// N1 N2 / D^2. Throws Error(non_integral_level).
mpz_class lift_level_norm(const mpz_class& N1, const mpz_class& N2, const mpz_class& D);

/*
 * Rational a_p tables:
 *
 *   RATIONAL <label> MODEL a1,a2,a3,a4,a6 [LEVEL <n>] [TWIST_OF <label> BY <D>]
 *   AP <p> <a_p>
 *   END
 */
struct RationalCurveData {
    std::string label;
    std::array<long, 5> model;
    std::optional<long> level;
    std::optional<std::string> twist_of;
    long twist_by = 0;
    std::map<std::int64_t, std::int64_t> ap;
};

std::map<std::string, RationalCurveData> parse_rational_ap_file(std::istream& in);
std::map<std::string, RationalCurveData> load_rational_ap_file(const std::string& path);

struct BaseChangeMismatch {
    std::int64_t p;
    std::string what;
};

struct BaseChangeReport {
    std::vector<std::int64_t> split_primes;
    std::vector<std::int64_t> inert_primes;
    std::vector<BaseChangeMismatch> mismatches;
};

/*
 * For odd p < X unramified in K and of good reduction for E:
 *   split p = P P':  a_P = a_P' = a_p(f) and a_p(f x chi) = a_p(f)
 *   inert p:         a_(p) = a_p(f)^2 - 2p and a_p(f x chi) = -a_p(f)
 * Primes missing from either table are skipped.
 */
BaseChangeReport base_change_consistency(const std::map<std::int64_t, std::int64_t>& ap_f,
                                         const std::map<std::int64_t, std::int64_t>& ap_twist,
                                         const EllipticCurve& E, std::int64_t X,
                                         std::int64_t count_cap = kDefaultCountCap);

struct MatchResult {
    bool matched;
    int compared;
    std::optional<Eigenvalue> first_mismatch; // stored a_P
    std::optional<std::int64_t> mismatch_trace;
};

// Compares traces of E with stored a_P over good primes of norm < X.
// Throws Error(insufficient_data) if fewer than 5 primes are comparable.
MatchResult match_curve_to_form(const EllipticCurve& E, const NewformRecord& f, std::int64_t X,
                                std::int64_t count_cap = kDefaultCountCap);

} // namespace fermatk
