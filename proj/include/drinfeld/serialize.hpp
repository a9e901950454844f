#pragma once

// JSON encodings. Every value carries its field (p, s, m, modulus, e) so a
// record is self-describing; keys keep insertion order.

#include "json.hpp"

#include "drinfeld/agf.hpp"
#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/log_extension.hpp"
#include "drinfeld/report.hpp"
#include "drinfeld/tseries.hpp"

namespace drinfeld {

using Json = nlohmann::ordered_json;

Json field_to_json(const Field& f);
/// Builds the field described by p, s, m, e, modulus (and depth if present).
FieldPtr field_from_json(const Json& j);

/// {p, s, e, m, modulus, prec (null when exact), terms: [[exponent, [c_0..c_{d-1}]]...]}
Json to_json(const CInf& x);
/// Parses against `f`; throws Config if the record's field differs.
CInf cinf_from_json(const Json& j, const FieldPtr& f);
CInf cinf_from_json(const Json& j);

Json to_json(const TailBound& tb);
/// {T, tailBound (null if none), coeffs: [...]}
Json to_json(const TSeries& s);
TSeries tseries_from_json(const Json& j, const FieldPtr& f);

Json precision_to_json(const Precision& p, const Field& f);
Precision precision_from_json(const Json& j);

/// {p, s, m, modulus, e, rank, kappa, u, prec: {...}}
Json module_to_json(const DrinfeldModule& rho, const Precision& prec);
struct ModuleSpec {
  DrinfeldModule rho;
  Precision prec;
};
ModuleSpec module_from_json(const Json& j);

/// {module, u, I, terms: [[pole, numerator]...], tailBound}
Json to_json(const AGF& g, const Precision& prec);

/// {check, parameters, residual_valuations, required, pass, note[, wall_time]}.
/// Exact zeros are written as the string "exact".
Json to_json(const CheckReport& r, bool with_time);

Json to_json(const ExtendedSystem& x);

/// Parses "2*theta^-1 + theta^(1/8) - 1" style sums of c*theta^k, or a JSON
/// value record when the text starts with '{'.
CInf parse_value(std::string_view text, const FieldPtr& f);

/// 2 for configuration errors, 4 for failed verification, 3 otherwise.
int exit_code(ErrorKind kind);

}  // namespace drinfeld
