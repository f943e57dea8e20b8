#pragma once

// Map-expression parser and the command-line dispatcher behind `padyn`.
//
// Grammar (whitespace ignored, "*" optional):
//   expr    := operand [ "/" operand ]
//   operand := "(" poly ")" | poly
//   poly    := [sign] term { sign term }
//   term    := coeff [ ["*"] xpart ] | xpart
//   coeff   := integer [ "/" integer ]
//   xpart   := "x" [ "^" integer ]
// Inside parentheses "c/q" is always a rational coefficient. Outside, it is
// a coefficient only when followed by "*" or "x"; otherwise "/" is the
// division of the two operands, so "x^2/2" is x^2 over 2.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "padyn/analyzer.hpp"
#include "padyn/arith.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/error.hpp"
#include "padyn/heights.hpp"
#include "padyn/padic.hpp"
#include "padyn/poly.hpp"
#include "padyn/ratmap.hpp"

namespace padyn {

class ParseError : public InvalidArgument
{
public:
    ParseError(const std::string &what, std::size_t offset)
        : InvalidArgument(what + " at offset " + std::to_string(offset)), offset_(offset)
    {
    }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

class MapParser
{
public:
    explicit MapParser(std::string text) : s_(std::move(text)) {}

    std::pair<RatPolynomial, RatPolynomial> parse_map()
    {
        RatPolynomial num = operand();
        RatPolynomial den = RatPolynomial::constant(Rational(1));
        skip();
        if (peek() == '/') {
            ++pos_;
            den = operand();
        }
        skip();
        if (pos_ != s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return {num, den};
    }

    RatPolynomial parse_poly()
    {
        RatPolynomial p = operand();
        skip();
        if (pos_ != s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &what) const { throw ParseError(what, pos_); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    RatPolynomial operand()
    {
        skip();
        if (peek() == '(') {
            ++pos_;
            RatPolynomial p = poly(true);
            skip();
            if (peek() != ')')
                fail("expected ')'");
            ++pos_;
            return p;
        }
        return poly(false);
    }

    RatPolynomial poly(bool nested)
    {
        RatPolynomial p;
        skip();
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        p += term(nested, negative);
        for (;;) {
            skip();
            if (peek() != '+' && peek() != '-')
                break;
            negative = peek() == '-';
            ++pos_;
            p += term(nested, negative);
        }
        return p;
    }

    Integer integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return Integer(s_.substr(start, pos_ - start), 10);
    }

    /// Looks past "/ integer" to decide whether the slash belongs to a
    /// coefficient outside parentheses.
    bool slash_is_coefficient() const
    {
        std::size_t i = pos_ + 1;
        auto sp = [&] {
            while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i])))
                ++i;
        };
        sp();
        std::size_t start = i;
        while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])))
            ++i;
        if (i == start)
            return false;
        sp();
        return i < s_.size() && (s_[i] == '*' || s_[i] == 'x');
    }

    RatPolynomial term(bool nested, bool negative)
    {
        skip();
        Rational c(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            c = Rational(integer());
            have_coeff = true;
            skip();
            if (peek() == '/' && (nested || slash_is_coefficient())) {
                ++pos_;
                std::size_t at = pos_;
                Integer q = integer();
                if (q == 0)
                    throw ParseError("zero denominator", at);
                c = c / Rational(q);
            }
        }
        skip();
        bool star = false;
        if (have_coeff && peek() == '*') {
            ++pos_;
            star = true;
            skip();
        }
        unsigned long k = 0;
        if (peek() == 'x') {
            ++pos_;
            k = 1;
            skip();
            if (peek() == '^') {
                ++pos_;
                Integer e = integer();
                if (e > 100000)
                    fail("exponent too large");
                k = e.get_ui();
            }
        } else if (star || !have_coeff) {
            fail("expected 'x' or a number");
        }
        if (negative)
            c = -c;
        return RatPolynomial::monomial(c, k);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline RationalMap parse_map(const std::string &text)
{
    auto [g, h] = detail::MapParser(text).parse_map();
    if (h.is_zero())
        throw DegenerateMap("denominator is zero in '" + text + "'");
    try {
        return RationalMap::normalize(g, h);
    } catch (const DegenerateMap &e) {
        throw DegenerateMap(std::string(e.what()) + " (numerator " + to_string(g) + ", denominator " + to_string(h) +
                            ")");
    }
}

/// Integer polynomial with the same roots as the parsed expression.
inline IntPolynomial parse_polynomial(const std::string &text)
{
    RatPolynomial p = detail::MapParser(text).parse_poly();
    if (p.is_zero())
        throw InvalidArgument("zero polynomial '" + text + "'");
    return primitive_associate(p);
}

// ---------------------------------------------------------------------------
// JSON rendering

namespace detail {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so output is stable and diff-friendly.
inline double round12(double v)
{
    if (!std::isfinite(v))
        return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string format12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline Json poly_json(const IntPolynomial &p) { return Json(coefficient_strings(p)); }

inline Json map_json(const RationalMap &f)
{
    return Json{{"text", f.to_string()},
                {"numerator", poly_json(f.numerator())},
                {"denominator", poly_json(f.denominator())},
                {"degree", f.degree()}};
}

/// Rounding the value moves it; the reported radius absorbs the shift and is
/// itself rounded up, so [value - error, value + error] stays an enclosure.
/// Exact heights keep error 0: the value is log of an integer.
inline Json height_json(const HeightEstimate &h, double log_scale)
{
    double v = h.value / log_scale;
    double v12 = round12(v);
    double e = h.error / log_scale + std::abs(v - v12);
    double e12 = h.method == HeightMethod::exact ? 0.0 : round12(e * (1 + 1e-11));
    return Json{{"value", v12}, {"error", e12}, {"method", to_string(h.method)}};
}

inline Json valuation_json(const ExtendedInteger &v)
{
    return v.is_finite() ? Json(v.value()) : Json("inf");
}

inline Json multiplier_json(const MultiplierReport &m)
{
    return Json{{"point", m.point.to_string()},
                {"period", m.period},
                {"multiplier", m.multiplier.to_string()},
                {"prime", m.prime.value()},
                {"classification", to_string(m.classification)}};
}

inline std::vector<Prime> primes_from(const std::vector<long> &raw)
{
    std::vector<Prime> out;
    for (long p : raw)
        out.emplace_back(p);
    return out;
}

} // namespace detail

/// Runs one CLI invocation. Writes a single JSON object to `out` (also on
/// failure, with a null result) and human-readable errors to `err`. Returns
/// 0 on success, 1 on input errors, 2 when a resource limit was hit.
inline int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    using detail::Json;
    CLI::App app{"Arithmetic dynamics of rational maps over Q", "padyn"};
    app.require_subcommand(1);
    std::string log_base = "e";
    app.add_option("--log-base", log_base, "Base for reported heights: e, 2, 10 or a number > 1");

    Json input = Json::object();
    std::string map_text, point_text, start_text, minpoly_text, a_text, b_text, csv_path;
    std::vector<long> primes;
    long prime = 0, period = 0, levels = 0, max_period = 0, degree = 0, coeff_bound = 0;
    double eps = 0;
    std::optional<long> opt_prime;

    auto *reduce = app.add_subcommand("reduce", "Reduction type of a map at each prime");
    reduce->add_option("--map", map_text)->required();
    reduce->add_option("--primes", primes)->required()->delimiter(',');

    auto *periodic = app.add_subcommand("periodic", "Points of period n and their multipliers");
    periodic->add_option("--map", map_text)->required();
    periodic->add_option("--period", period)->required()->check(CLI::PositiveNumber);
    periodic->add_option("--prime", opt_prime);

    auto *chh = app.add_subcommand("canonical-height", "Certified canonical height of a rational point");
    chh->add_option("--map", map_text)->required();
    chh->add_option("--point", point_text)->required();
    chh->add_option("--eps", eps)->required()->check(CLI::PositiveNumber);

    auto *backward = app.add_subcommand("backward", "Backward orbit levels and their splitting over Q_p");
    backward->add_option("--map", map_text)->required();
    backward->add_option("--start", start_text)->required();
    backward->add_option("--levels", levels)->required()->check(CLI::PositiveNumber);
    backward->add_option("--primes", primes)->required()->delimiter(',');

    auto *tp = app.add_subcommand("totally-padic", "Does a polynomial split completely over Q_p");
    tp->add_option("--minpoly", minpoly_text)->required();
    tp->add_option("--prime", prime)->required();

    auto *check = app.add_subcommand("check", "Certificates for the Bogomolov-type conditions at a prime");
    check->add_option("--map", map_text)->required();
    check->add_option("--prime", prime)->required();
    check->add_option("--max-period", max_period)->required()->check(CLI::PositiveNumber);

    auto *gap = app.add_subcommand("gap", "Height-gap search over totally p-adic candidates");
    gap->add_option("--map", map_text)->required();
    gap->add_option("--prime", prime)->required();
    gap->add_option("--degree", degree)->required()->check(CLI::PositiveNumber);
    gap->add_option("--coeff-bound", coeff_bound)->required()->check(CLI::NonNegativeNumber);
    gap->add_option("--eps", eps)->required()->check(CLI::PositiveNumber);
    gap->add_option("--csv", csv_path);

    auto *lattes = app.add_subcommand("lattes", "Duplication Lattes map of y^2 = x^3 + a x + b");
    lattes->add_option("--a", a_text)->required();
    lattes->add_option("--b", b_text)->required();

    std::string command;
    std::vector<std::string> diagnostics;
    auto emit = [&](const Json &result) {
        Json doc{{"command", command}, {"input", input}, {"result", result}, {"diagnostics", diagnostics}};
        out << doc.dump(2) << "\n";
    };
    auto fail = [&](const std::string &msg, int code) {
        diagnostics.push_back(msg);
        err << "padyn: " << msg << "\n";
        emit(nullptr);
        return code;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        if (auto *sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            command = sub->get_name();
        return fail(e.what(), 1);
    }
    CLI::App *sub = app.get_subcommands().front();
    command = sub->get_name();
    for (const CLI::Option *opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help")
            continue;
        std::string key = opt->get_name();
        while (!key.empty() && key.front() == '-')
            key.erase(key.begin());
        auto res = opt->results();
        input[key] = key == "primes" ? Json(res) : Json(res.front());
    }
    if (app.count("--log-base"))
        input["log-base"] = log_base;

    try {
        double log_scale = 1.0;
        if (log_base != "e") {
            double base = 0;
            try {
                std::size_t used = 0;
                base = std::stod(log_base, &used);
                if (used != log_base.size())
                    base = 0;
            } catch (const std::exception &) {
                base = 0;
            }
            if (!(base > 1) || !std::isfinite(base))
                throw InvalidArgument("--log-base must be e or a number > 1, got '" + log_base + "'");
            log_scale = std::log(base);
        }
        IterationLimits limits = IterationLimits::from_environment();
        Json result = Json::object();

        if (sub == reduce) {
            RationalMap f = parse_map(map_text);
            result["map"] = detail::map_json(f);
            result["resultant"] = f.resultant().get_str();
            Json reports = Json::array();
            for (const Prime &p : detail::primes_from(primes)) {
                ReductionReport r = good_reduction(f, p);
                reports.push_back(Json{{"prime", p.value()},
                                       {"resultant_valuation", detail::valuation_json(r.resultant_valuation)},
                                       {"good", r.good}});
            }
            result["reports"] = reports;
        } else if (sub == periodic) {
            RationalMap f = parse_map(map_text);
            int n = static_cast<int>(period);
            result["map"] = detail::map_json(f);
            result["period"] = n;
            IntPolynomial H = period_polynomial(f, n, limits);
            IntPolynomial phi = exact_period_points(f, n, limits);
            result["period_polynomial"] = detail::poly_json(H);
            result["exact_period_polynomial"] = detail::poly_json(phi);
            ProjPoint inf = ProjPoint::infinity();
            for (int i = 0; i < n; ++i)
                inf = apply(f, inf);
            result["infinity_period_divides_n"] = inf.is_infinity();
            Json pts = Json::array();
            std::vector<Rational> roots = phi.degree() >= 1 ? rational_roots(phi) : std::vector<Rational>{};
            for (const Rational &r : roots)
                pts.push_back(r.to_string());
            result["rational_points"] = pts;
            if (opt_prime) {
                Prime p(*opt_prime);
                result["prime"] = p.value();
                result["splits"] = phi.degree() < 1 || splits_completely(phi, p);
                Json ms = Json::array();
                for (const Rational &r : roots) {
                    try {
                        ms.push_back(detail::multiplier_json(multiplier(f, r, n, p)));
                    } catch (const OrbitThroughInfinity &e) {
                        diagnostics.push_back(e.what());
                    }
                }
                result["multipliers"] = ms;
            }
        } else if (sub == chh) {
            RationalMap f = parse_map(map_text);
            ProjPoint P = ProjPoint::parse(point_text);
            HeightConstant hc = height_bound_constant(f);
            result["map"] = detail::map_json(f);
            result["point"] = P.to_string();
            result["canonical_height"] = detail::height_json(canonical_height(hc, P, eps), log_scale);
            result["weil_height"] = detail::height_json(weil_height(P), log_scale);
            result["height_constant"] = detail::round12(hc.C / log_scale);
            result["preperiodic"] = is_preperiodic_rational(hc, P);
        } else if (sub == backward) {
            RationalMap f = parse_map(map_text);
            Rational a0 = Rational::parse(start_text);
            std::vector<Prime> ps = detail::primes_from(primes);
            BackwardOrbit bo = backward_orbit(f, a0, static_cast<int>(levels), ps, limits);
            result["map"] = detail::map_json(f);
            result["base_point"] = a0.to_string();
            Json lv = Json::array();
            for (const auto &l : bo.levels) {
                Json splits = Json::object();
                for (std::size_t i = 0; i < ps.size(); ++i)
                    splits[std::to_string(ps[i].value())] = static_cast<bool>(l.splits[i]);
                lv.push_back(Json{{"level", l.level},
                                  {"polynomial", detail::poly_json(l.polynomial)},
                                  {"degree", std::max(l.polynomial.degree(), 0)},
                                  {"splits", splits}});
            }
            result["levels"] = lv;
        } else if (sub == tp) {
            IntPolynomial m = parse_polynomial(minpoly_text);
            Prime p(prime);
            IntPolynomial s = m.degree() >= 1 ? squarefree_part(m) : m;
            result["minpoly"] = detail::poly_json(m);
            result["prime"] = p.value();
            result["totally_padic"] = m.degree() < 1 || is_totally_padic(m, p);
            if (s.degree() >= 1) {
                RootCount rc = count_qp_roots(s, p);
                result["distinct_roots"] = s.degree();
                result["roots_in_Zp"] = rc.roots_in_Zp;
                result["roots_outside_Zp"] = rc.roots_outside_Zp;
                result["roots_in_Qp"] = rc.total;
                NewtonPolygon np = newton_polygon(m, p);
                Json segs = Json::array();
                for (const auto &seg : np.segments)
                    segs.push_back(Json{{"slope", seg.slope.to_string()}, {"length", seg.length}});
                result["newton_polygon"] = Json{{"segments", segs},
                                                {"zero_root_multiplicity", np.zero_root_multiplicity}};
            }
        } else if (sub == check) {
            RationalMap f = parse_map(map_text);
            Prime p(prime);
            ConditionReport r = check_theorem_conditions(f, p, static_cast<int>(max_period), limits);
            result["map"] = detail::map_json(f);
            result["prime"] = p.value();
            result["max_period"] = r.max_period;
            result["good_reduction"] = r.good_reduction;
            result["resultant_valuation"] = detail::valuation_json(vp(f.resultant(), p));
            if (r.nonsplit_witness)
                result["nonsplit_witness"] = Json{{"period", r.nonsplit_witness->period},
                                                  {"polynomial", detail::poly_json(r.nonsplit_witness->polynomial)}};
            else
                result["nonsplit_witness"] = nullptr;
            Json census = Json::array();
            for (const auto &m : r.multiplier_census)
                census.push_back(detail::multiplier_json(m));
            result["multiplier_census"] = census;
            result["verdict"] = to_string(r.verdict);
            if (r.verdict == Verdict::Inconclusive)
                diagnostics.push_back("no certificate up to period " + std::to_string(max_period) +
                                      "; this does not disprove the conditions");
        } else if (sub == gap) {
            RationalMap f = parse_map(map_text);
            Prime p(prime);
            GapReport r = narkiewicz_gap_search(f, p, static_cast<int>(degree), coeff_bound, eps);
            result["map"] = detail::map_json(f);
            result["prime"] = p.value();
            result["degree_bound"] = r.degree_bound;
            result["coefficient_bound"] = r.coefficient_bound;
            result["candidates_examined"] = r.candidates_examined;
            long splitting = 0;
            for (const auto &c : r.candidates) {
                splitting += c.splits ? 1 : 0;
                if (!c.diagnostic.empty())
                    diagnostics.push_back(to_string(c.minpoly) + ": " + c.diagnostic);
            }
            result["splitting_candidates"] = splitting;
            Json pre = Json::array();
            for (const auto &m : r.preperiodic_found)
                pre.push_back(detail::poly_json(m));
            result["preperiodic_found"] = pre;
            if (r.min_positive_height)
                result["min_positive_height"] =
                    Json{{"height", detail::height_json(r.min_positive_height->first, log_scale)},
                         {"witness", detail::poly_json(r.min_positive_height->second)}};
            else
                result["min_positive_height"] = nullptr;
            diagnostics.push_back("heights of algebraic candidates use numeric root finding (heuristic error)");
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv)
                    throw InvalidArgument("cannot write CSV file '" + csv_path + "'");
                csv << "minpoly,degree,splits,preperiodic,hhat_value,hhat_error\n";
                for (const auto &c : r.candidates) {
                    csv << to_string(c.minpoly) << "," << c.minpoly.degree() << "," << (c.splits ? "true" : "false")
                        << "," << (c.preperiodic ? "true" : "false") << ",";
                    if (c.height)
                        csv << detail::format12(c.height->value / log_scale) << ","
                            << detail::format12(c.height->error / log_scale);
                    else
                        csv << ",";
                    csv << "\n";
                }
            }
        } else if (sub == lattes) {
            Rational a = Rational::parse(a_text), b = Rational::parse(b_text);
            RationalMap f = lattes_map(a, b);
            result["a"] = a.to_string();
            result["b"] = b.to_string();
            result["discriminant"] = (Rational(4) * a * a * a + Rational(27) * b * b).to_string();
            result["map"] = detail::map_json(f);
        }
        emit(result);
        return 0;
    } catch (const ResourceLimit &e) {
        return fail(std::string("resource limit: ") + e.what(), 2);
    } catch (const Error &e) {
        return fail(e.what(), 1);
    } catch (const std::bad_alloc &) {
        return fail("out of memory", 2);
    } catch (const std::exception &e) {
        return fail(e.what(), 1);
    }
}

} // namespace padyn
