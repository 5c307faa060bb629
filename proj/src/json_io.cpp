#include "qforms/json_io.hpp"

#include "qforms/errors.hpp"

#include <stdexcept>
#include <string>

namespace qforms {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("malformed input: " + what);
}

const Json& field(const Json& j, const char* name) {
    require(j.is_object(), std::string("expected object with \"") + name + "\"");
    auto it = j.find(name);
    require(it != j.end(), std::string("missing field \"") + name + "\"");
    return *it;
}

int int_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    require(f.is_number_integer(), std::string("field \"") + name + "\" must be an integer");
    return f.get<int>();
}

Rational rational_field(const Json& f, const char* what) {
    require(f.is_string(), std::string(what) + " must be a string");
    try {
        return Rational::from_string(f.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("malformed input: bad ") + what + ": " + e.what());
    }
}

} // namespace

Json to_json(const QSeries& s) {
    Json j;
    j["truncation"] = s.truncation();
    Json coeffs = Json::array();
    for (int n = 0; n <= s.truncation(); ++n) coeffs.push_back(s.coefficient(n).str());
    j["coeffs"] = std::move(coeffs);
    return j;
}

QSeries qseries_from_json(const Json& j) {
    const int truncation = int_field(j, "truncation");
    require(truncation >= 0, "\"truncation\" must be nonnegative");
    const Json& coeffs = field(j, "coeffs");
    require(coeffs.is_array(), "\"coeffs\" must be an array");
    require(static_cast<int>(coeffs.size()) == truncation + 1,
            "\"coeffs\" must hold truncation+1 entries");
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (const Json& c : coeffs) out.push_back(rational_field(c, "coefficient"));
    return QSeries(truncation, std::move(out));
}

Json to_json(const QMPoly& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["monomial"] = Json::array({m.g2, m.g4, m.g6});
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    Json j;
    j["terms"] = std::move(terms);
    return j;
}

QMPoly qmpoly_from_json(const Json& j) {
    const Json& terms = field(j, "terms");
    require(terms.is_array(), "\"terms\" must be an array");
    QMPoly p;
    for (const Json& t : terms) {
        const Json& mono = field(t, "monomial");
        require(mono.is_array() && mono.size() == 3, "\"monomial\" must be [a, b, c]");
        int e[3];
        for (int i = 0; i < 3; ++i) {
            require(mono[i].is_number_integer(), "monomial exponents must be integers");
            e[i] = mono[i].get<int>();
            require(e[i] >= 0, "monomial exponents must be nonnegative");
        }
        p.add_term(Monomial{e[0], e[1], e[2]}, rational_field(field(t, "coeff"), "coefficient"));
    }
    return p;
}

Json to_json(const Decomposition& d) {
    Json eis = Json::array();
    for (const EisensteinTerm& t : d.eisenstein_part) {
        Json e;
        e["r"] = t.r;
        e["weight"] = t.weight;
        e["coeff"] = t.coeff.str();
        eis.push_back(std::move(e));
    }
    Json cusp = Json::array();
    for (const CuspTerm& t : d.cusp_part) {
        Json c;
        c["r"] = t.r;
        c["weight"] = t.weight;
        Json coords = Json::array();
        for (const Rational& x : t.coords) coords.push_back(x.str());
        c["coords"] = std::move(coords);
        c["series"] = to_json(t.series);
        cusp.push_back(std::move(c));
    }
    Json j;
    j["eisenstein_part"] = std::move(eis);
    j["cusp_part"] = std::move(cusp);
    return j;
}

Json to_json(const RecognizeOutcome& r) {
    Json j;
    j["matched"] = r.matched;
    if (r.matched) {
        j["poly"] = to_json(r.poly);
    } else {
        j["mismatch_index"] = r.mismatch_index;
        j["mismatch_value"] = r.mismatch_value.str();
    }
    return j;
}

Json to_json(const OmegaVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["weight_bound"] = v.weight_bound;
    j["verified_bound"] = v.verified_bound;
    Json cert;
    switch (v.status) {
    case OmegaStatus::AcceptUpTo: {
        Json combo = Json::array();
        for (const DHTerm& t : v.combination) {
            Json c;
            c["k"] = t.k;
            c["n"] = t.n;
            c["coeff"] = t.coeff.str();
            combo.push_back(std::move(c));
        }
        cert["span_cutoff"] = v.span_cutoff;
        cert["combination"] = std::move(combo);
        break;
    }
    case OmegaStatus::RejectCuspidal:
        cert["weight"] = v.cusp_weight;
        cert["r"] = v.cusp_r;
        cert["coord_index"] = v.cusp_coord_index;
        cert["coord"] = v.cusp_coord.str();
        break;
    case OmegaStatus::RejectNotInSpan:
        cert["span_cutoff"] = v.span_cutoff;
        cert["residual_index"] = v.residual_index;
        cert["residual_value"] = v.residual_value.str();
        break;
    case OmegaStatus::RejectCoefficient:
        cert["index"] = v.witness_index;
        cert["value"] = v.witness_value.str();
        cert["reason"] = to_string(v.reason);
        break;
    }
    j["certificate"] = std::move(cert);
    return j;
}

Json to_json(const SearchResult& r) {
    Json j;
    j["weight_bound"] = r.weight_bound;
    j["prime_bound"] = r.prime_bound;
    j["verify_bound"] = r.verify_bound;
    j["norm"] = "sum(v_i + 1)";
    Json vecs = Json::array();
    for (const PartVector& v : r.vectors) {
        Json row = Json::array();
        for (int e : v) row.push_back(e);
        vecs.push_back(std::move(row));
    }
    j["vectors"] = std::move(vecs);
    j["nullspace_dimension"] = r.nullspace_dimension;
    Json cands = Json::array();
    for (const SearchCandidate& c : r.candidates) {
        Json jc;
        Json coeffs = Json::array();
        for (const Integer& x : c.coeffs) coeffs.push_back(x.get_str());
        jc["coeffs"] = std::move(coeffs);
        Json rep;
        rep["prime_bound"] = c.report.prime_bound;
        rep["verify_bound"] = c.report.verify_bound;
        rep["zero_primes"] = c.report.zero_primes;
        rep["positive_composites"] = c.report.positive_composites;
        rep["certified"] = c.report.certified;
        if (c.report.certified) rep["certificate_status"] = c.report.certificate_status;
        jc["report"] = std::move(rep);
        cands.push_back(std::move(jc));
    }
    j["candidates"] = std::move(cands);
    return j;
}

bool is_qseries_json(const Json& j) {
    return j.is_object() && j.contains("truncation") && j.contains("coeffs");
}

bool is_qmpoly_json(const Json& j) {
    return j.is_object() && j.contains("terms");
}

} // namespace qforms
