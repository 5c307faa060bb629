#ifndef QFORMS_JSON_IO_HPP
#define QFORMS_JSON_IO_HPP

#include "qforms/eisenstein_omega.hpp"
#include "qforms/macmahon.hpp"
#include "qforms/qseries.hpp"
#include "qforms/quasimodular.hpp"

#include <json.hpp>

namespace qforms {

// Insertion-ordered documents keep serialized output stable byte for byte.
using Json = nlohmann::ordered_json;

// {"truncation": N, "coeffs": ["p/q", ...]} with exactly N+1 reduced
// fractions. Lossless round-trip.
Json to_json(const QSeries& s);
QSeries qseries_from_json(const Json& j);

// {"terms": [{"monomial": [a, b, c], "coeff": "p/q"}, ...]} in basis order.
Json to_json(const QMPoly& p);
QMPoly qmpoly_from_json(const Json& j);

Json to_json(const Decomposition& d);
Json to_json(const RecognizeOutcome& r);
Json to_json(const OmegaVerdict& v);
Json to_json(const SearchResult& r);

// Input files may carry either interchange format; payload kind is decided
// by shape.
bool is_qseries_json(const Json& j);
bool is_qmpoly_json(const Json& j);

} // namespace qforms

#endif
