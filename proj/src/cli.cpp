#include "qforms/cli.hpp"

#include "qforms/eisenstein_omega.hpp"
#include "qforms/errors.hpp"
#include "qforms/json_io.hpp"
#include "qforms/macmahon.hpp"
#include "qforms/number_theory.hpp"
#include "qforms/qseries.hpp"
#include "qforms/quasimodular.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qforms {
namespace {

// ---- plain-text rendering --------------------------------------------------

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out << "  ";
            out << std::string(width[c] - cells[c].size(), ' ') << cells[c];
        }
        out << "\n";
    };
    line(header);
    for (const auto& row : rows) line(row);
}

void write_series_text(std::ostream& out, const QSeries& s) {
    std::vector<std::vector<std::string>> rows;
    for (int n = 0; n <= s.truncation(); ++n)
        rows.push_back({std::to_string(n), s.coefficient(n).str()});
    write_table(out, {"n", "coeff"}, rows);
}

std::string monomial_str(const Monomial& m) {
    std::string s;
    auto factor = [&s](const char* name, int e) {
        if (e == 0) return;
        if (!s.empty()) s += "*";
        s += name;
        if (e > 1) s += "^" + std::to_string(e);
    };
    factor("G2", m.g2);
    factor("G4", m.g4);
    factor("G6", m.g6);
    return s.empty() ? "1" : s;
}

std::string poly_str(const QMPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        const Rational mag = c.sign() < 0 ? -c : c;
        if (s.empty()) {
            if (c.sign() < 0) s += "-";
        } else {
            s += c.sign() < 0 ? " - " : " + ";
        }
        const std::string mono = monomial_str(m);
        if (mono == "1") {
            s += mag.str();
        } else if (mag == Rational(1)) {
            s += mono;
        } else {
            s += mag.str() + "*" + mono;
        }
    }
    return s;
}

// "D^r G_w" with the constant line (weight 0) rendered as "1".
std::string eis_line_str(int r, int weight) {
    if (weight == 0) return "1";
    std::string s = "G" + std::to_string(weight);
    if (r > 0) s = "D^" + std::to_string(r) + " " + s;
    return s;
}

std::string dh_line_str(int k, int n) {
    std::string s = "H" + std::to_string(k);
    if (n > 0) s = "D^" + std::to_string(n) + " " + s;
    return s;
}

// ---- shared helpers ---------------------------------------------------------

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    return Json::parse(in);
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void require_arg(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// ---- subcommand bodies ------------------------------------------------------

void run_eisenstein(std::ostream& out, int weight, int order, const std::string& format) {
    require_arg(weight >= 2 && weight % 2 == 0, "--weight must be a positive even integer");
    require_arg(order >= 0, "--order must be nonnegative");
    const QSeries s = eisenstein_series(weight, order);
    if (format == "json") {
        write_json(out, to_json(s));
    } else {
        out << "G" << weight << " truncated at q^" << order << "\n";
        write_series_text(out, s);
    }
}

void run_hform(std::ostream& out, int k, int deriv, int order, const std::string& format) {
    require_arg(k >= 6 && k % 2 == 0, "--k must be an even integer >= 6");
    require_arg(deriv >= 0, "--deriv must be nonnegative");
    require_arg(order >= 0, "--order must be nonnegative");
    const HForm f = h_form(HFormId{k, deriv}, order);
    if (format == "json") {
        Json j;
        j["k"] = f.id.k;
        j["derivative_order"] = f.id.derivative_order;
        j["poly"] = to_json(f.poly);
        j["series"] = to_json(f.series);
        write_json(out, j);
    } else {
        out << dh_line_str(k, deriv) << " truncated at q^" << order << "\n";
        out << "poly: " << poly_str(f.poly) << "\n";
        write_series_text(out, f.series);
    }
}

void run_macmahon(std::ostream& out, const std::vector<int>& vec, int n_max,
                  const std::string& format) {
    require_arg(!vec.empty(), "--vec must list at least one exponent");
    for (int v : vec) require_arg(v >= 0, "--vec entries must be nonnegative");
    require_arg(n_max >= 0, "--n-max must be nonnegative");
    const QSeries s = macmahonesque_series(vec, n_max);
    if (format == "json") {
        Json j;
        j["vec"] = vec;
        j["n_max"] = n_max;
        Json values = Json::array();
        for (int n = 0; n <= n_max; ++n) values.push_back(s.coefficient(n).str());
        j["values"] = std::move(values);
        write_json(out, j);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (int n = 0; n <= n_max; ++n)
            rows.push_back({std::to_string(n), s.coefficient(n).str()});
        write_table(out, {"n", "M(n)"}, rows);
    }
}

void run_useries(std::ostream& out, const std::vector<int>& vec, int order,
                 const std::string& format) {
    require_arg(!vec.empty(), "--vec must list at least one exponent");
    require_arg(order >= 0, "--order must be nonnegative");
    const QSeries s = u_vec_series(vec, order);
    if (format == "json") {
        write_json(out, to_json(s));
    } else {
        out << "U series truncated at q^" << order << "\n";
        write_series_text(out, s);
    }
}

void write_verdict_text(std::ostream& out, const OmegaVerdict& v) {
    out << "status " << to_string(v.status) << "\n";
    out << "weight_bound " << v.weight_bound << "\n";
    out << "verified_bound " << v.verified_bound << "\n";
    switch (v.status) {
    case OmegaStatus::AcceptUpTo: {
        out << "span_cutoff " << v.span_cutoff << "\n";
        out << "combination:\n";
        std::vector<std::vector<std::string>> rows;
        for (const DHTerm& t : v.combination)
            rows.push_back({dh_line_str(t.k, t.n), t.coeff.str()});
        write_table(out, {"term", "coeff"}, rows);
        break;
    }
    case OmegaStatus::RejectCuspidal:
        out << "cusp weight=" << v.cusp_weight << " r=" << v.cusp_r
            << " coord_index=" << v.cusp_coord_index << " coord=" << v.cusp_coord.str() << "\n";
        break;
    case OmegaStatus::RejectNotInSpan:
        out << "span_cutoff " << v.span_cutoff << "\n";
        out << "residual index=" << v.residual_index << " value=" << v.residual_value.str()
            << "\n";
        break;
    case OmegaStatus::RejectCoefficient:
        out << "witness index=" << v.witness_index << " value=" << v.witness_value.str()
            << " reason=" << to_string(v.reason) << "\n";
        break;
    }
}

void run_check_omega(std::ostream& out, const std::string& input, int bound, int weight,
                     const std::string& format) {
    require_arg(bound >= 1, "--bound must be positive");
    const Json j = load_json(input);
    OmegaVerdict v = [&] {
        if (is_qmpoly_json(j)) return omega_check(qmpoly_from_json(j), bound);
        if (is_qseries_json(j)) {
            require_arg(weight >= 2 && weight % 2 == 0,
                        "series input requires --weight (positive even integer)");
            return omega_check(qseries_from_json(j), weight, bound);
        }
        throw std::invalid_argument("input must be a series or polynomial document");
    }();
    if (format == "json") {
        write_json(out, to_json(v));
    } else {
        write_verdict_text(out, v);
    }
}

void run_recognize(std::ostream& out, const std::string& input, int weight,
                   const std::string& format) {
    require_arg(weight >= 0 && weight % 2 == 0, "--weight must be a nonnegative even integer");
    const Json j = load_json(input);
    require_arg(is_qseries_json(j), "recognize expects a series document");
    const RecognizeOutcome r = recognize(qseries_from_json(j), weight);
    if (format == "json") {
        write_json(out, to_json(r));
    } else if (r.matched) {
        out << "matched: " << poly_str(r.poly) << "\n";
    } else {
        out << "no match: mismatch at q^" << r.mismatch_index << " value "
            << r.mismatch_value.str() << "\n";
    }
}

void run_decompose(std::ostream& out, const std::string& input, const std::string& format) {
    const Json j = load_json(input);
    require_arg(is_qmpoly_json(j), "decompose expects a polynomial document");
    const Decomposition d = decompose(qmpoly_from_json(j));
    if (format == "json") {
        write_json(out, to_json(d));
        return;
    }
    out << "eisenstein part:\n";
    std::vector<std::vector<std::string>> rows;
    for (const EisensteinTerm& t : d.eisenstein_part)
        rows.push_back({eis_line_str(t.r, t.weight), t.coeff.str()});
    write_table(out, {"term", "coeff"}, rows);
    out << "cusp part:\n";
    for (const CuspTerm& t : d.cusp_part) {
        out << "D^" << t.r << " of weight-" << t.weight << " cusp form, coords [";
        for (std::size_t i = 0; i < t.coords.size(); ++i) {
            if (i) out << ", ";
            out << t.coords[i].str();
        }
        out << "]\n";
    }
    if (d.cusp_part.empty()) out << "(none)\n";
}

void run_detect_primes(std::ostream& out, const std::string& expr, int n_max,
                       const std::string& format) {
    require_arg(n_max >= 0, "--n-max must be nonnegative");
    const std::string prefix = "builtin:";
    require_arg(expr.rfind(prefix, 0) == 0 && expr.size() == prefix.size() + 1 &&
                    expr.back() >= '1' && expr.back() <= '3',
                "--expr must be builtin:1, builtin:2 or builtin:3");
    const int index = expr.back() - '1';
    const MMExpression e = builtin_expressions().at(index);
    const std::vector<Rational> values = expression_values(e, n_max);
    std::vector<long> zero_loci;
    for (long n = 2; n <= n_max; ++n)
        if (values[n].is_zero()) zero_loci.push_back(n);
    if (format == "json") {
        Json j;
        j["expr"] = expr;
        j["n_max"] = n_max;
        Json vals = Json::array();
        for (const Rational& v : values) vals.push_back(v.str());
        j["values"] = std::move(vals);
        j["zero_loci"] = zero_loci;
        write_json(out, j);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (long n = 0; n <= n_max; ++n)
            rows.push_back({std::to_string(n), values[n].str(),
                            is_prime(static_cast<std::uint64_t>(n)) ? "prime" : ""});
        write_table(out, {"n", "value", ""}, rows);
        out << "zero loci (n >= 2):";
        for (long n : zero_loci) out << " " << n;
        out << "\n";
    }
}

void run_search(std::ostream& out, int d, int primes, int bound, bool certify,
                const std::string& format) {
    require_arg(d >= 1, "--d must be positive");
    require_arg(primes >= 2, "--primes must be at least 2");
    require_arg(bound >= 2, "--bound must be at least 2");
    const SearchResult r = search_prime_detecting(d, bound, primes, certify);
    if (format == "json") {
        write_json(out, to_json(r));
        return;
    }
    out << "weight_bound " << r.weight_bound << "\n";
    out << "prime_bound " << r.prime_bound << "\n";
    out << "verify_bound " << r.verify_bound << "\n";
    out << "vectors " << r.vectors.size() << "\n";
    out << "nullspace_dimension " << r.nullspace_dimension << "\n";
    out << "candidates " << r.candidates.size() << "\n";
    for (const SearchCandidate& c : r.candidates) {
        out << "  [";
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
            if (i) out << ", ";
            out << c.coeffs[i].get_str();
        }
        out << "] zero_primes=" << c.report.zero_primes
            << " positive_composites=" << c.report.positive_composites;
        if (c.report.certified) out << " certificate=" << c.report.certificate_status;
        out << "\n";
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact quasimodular forms and MacMahon-style partition tools", "qforms"};
    app.require_subcommand(1);

    const std::vector<std::string> formats = {"json", "text"};
    auto add_format = [&formats](CLI::App* sub, std::string& slot) {
        sub->add_option("--format", slot, "output format")
            ->default_val("json")
            ->check(CLI::IsMember(formats));
    };

    // eisenstein
    auto* eis = app.add_subcommand("eisenstein", "Eisenstein series G_{2k} as exact q-series");
    int eis_weight = 0, eis_order = 0;
    std::string eis_format;
    eis->add_option("--weight", eis_weight, "even weight 2k")->required();
    eis->add_option("--order", eis_order, "truncation order N")->required();
    add_format(eis, eis_format);

    // hform
    auto* hf = app.add_subcommand("hform", "prime-detecting H form and its D derivatives");
    int hf_k = 6, hf_deriv = 0, hf_order = 0;
    std::string hf_format;
    hf->add_option("--k", hf_k, "even weight k >= 6")->required();
    hf->add_option("--deriv", hf_deriv, "derivative order");
    hf->add_option("--order", hf_order, "truncation order N")->required();
    add_format(hf, hf_format);

    // macmahon
    auto* mm = app.add_subcommand("macmahon", "partition function values M_vec(0..N)");
    std::vector<int> mm_vec;
    int mm_nmax = 0;
    std::string mm_format;
    mm->add_option("--vec", mm_vec, "comma-separated exponents v1,v2,...")
        ->required()
        ->delimiter(',');
    mm->add_option("--n-max", mm_nmax, "largest n")->required();
    add_format(mm, mm_format);

    // useries
    auto* us = app.add_subcommand("useries", "U series for an exponent vector");
    std::vector<int> us_vec;
    int us_order = 0;
    std::string us_format;
    us->add_option("--vec", us_vec, "comma-separated exponents v1,v2,... (each >= 1)")
        ->required()
        ->delimiter(',');
    us->add_option("--order", us_order, "truncation order N")->required();
    add_format(us, us_format);

    // check-omega
    auto* co = app.add_subcommand("check-omega", "prime-detection verdict with certificate");
    std::string co_input;
    int co_bound = 0, co_weight = 0;
    std::string co_format;
    co->add_option("--input", co_input, "series or polynomial JSON file")->required();
    co->add_option("--bound", co_bound, "coefficient scan bound N")->required();
    co->add_option("--weight", co_weight, "weight bound (required for series input)");
    add_format(co, co_format);

    // recognize
    auto* rec = app.add_subcommand("recognize", "match a series against the graded basis");
    std::string rec_input;
    int rec_weight = 0;
    std::string rec_format;
    rec->add_option("--input", rec_input, "series JSON file")->required();
    rec->add_option("--weight", rec_weight, "weight bound")->required();
    add_format(rec, rec_format);

    // decompose
    auto* dec = app.add_subcommand("decompose", "Eisenstein/cusp decomposition of a polynomial");
    std::string dec_input;
    std::string dec_format;
    dec->add_option("--input", dec_input, "polynomial JSON file")->required();
    add_format(dec, dec_format);

    // detect-primes
    auto* dp = app.add_subcommand("detect-primes", "evaluate a built-in detecting expression");
    std::string dp_expr;
    int dp_nmax = 0;
    std::string dp_format;
    dp->add_option("--expr", dp_expr, "builtin:1, builtin:2 or builtin:3")->required();
    dp->add_option("--n-max", dp_nmax, "largest n")->required();
    add_format(dp, dp_format);

    // search
    auto* se = app.add_subcommand("search", "search for prime-detecting combinations");
    int se_d = 0, se_primes = 0, se_bound = 0;
    bool se_certify = false;
    std::string se_format;
    se->add_option("--d", se_d, "weight bound on sum(v_i + 1)")->required();
    se->add_option("--primes", se_primes, "constrain at primes up to this bound")->required();
    se->add_option("--bound", se_bound, "verify candidates up to this bound")->required();
    se->add_flag("--certify", se_certify, "run the omega certificate on each survivor");
    add_format(se, se_format);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (eis->parsed()) run_eisenstein(out, eis_weight, eis_order, eis_format);
        else if (hf->parsed()) run_hform(out, hf_k, hf_deriv, hf_order, hf_format);
        else if (mm->parsed()) run_macmahon(out, mm_vec, mm_nmax, mm_format);
        else if (us->parsed()) run_useries(out, us_vec, us_order, us_format);
        else if (co->parsed()) run_check_omega(out, co_input, co_bound, co_weight, co_format);
        else if (rec->parsed()) run_recognize(out, rec_input, rec_weight, rec_format);
        else if (dec->parsed()) run_decompose(out, dec_input, dec_format);
        else if (dp->parsed()) run_detect_primes(out, dp_expr, dp_nmax, dp_format);
        else if (se->parsed()) run_search(out, se_d, se_primes, se_bound, se_certify, se_format);
    } catch (const InsufficientTruncationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qforms
