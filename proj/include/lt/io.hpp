#pragma once

// JSON forms of scalars, series, formal-group tables, module specs and
// lattice bases. Scalars: {"v": int, "coeffs": [h ints], "prec": int} for
// p^v (c_0 + c_1 x + ...) with the c_i reduced mod p^prec; a zero carries
// its absolute precision in "v" and prec 0. Plain integers are accepted on
// input. Series: {"wmax": int (-1 for an exact polynomial), "terms": [{"m":
// [...], "c": scalar}]} sorted by (weight, exponent).

#include <json.hpp>

#include "lt/lattice.hpp"

namespace lt {

using json = nlohmann::ordered_json;

json to_json(const PadicElement &x);
PadicElement scalar_from_json(const FieldContext &F, const json &j, const std::string &where = "scalar");

json to_json(const TruncatedSeries &f);
TruncatedSeries series_from_json(const RingPtr &ring, const json &j, const std::string &where = "series");

json to_json(const Matrix &m);
Matrix matrix_from_json(const FieldContext &F, const json &j, int rows, int cols, const std::string &where);

json to_json(const FormalGroupTable &fg);

struct ModuleHeader {
    int p = 0, h = 0, prec = 0, dim = 0;
};
// Validates the header fields of a module spec (InputError with the field name).
ModuleHeader module_header(const json &j);
// "phi_q": rows of the matrix of phi_q in the standard basis. Each
// filtration is either {"basis": [adapted basis vectors], "jumps": [...]} or
// {"chain": [{"m": int, "span": [vectors]}, ...]}.
FilteredPhiModule module_from_json(const json &j, const FieldPtr &field);
json to_json(const FilteredPhiModule &D);

json to_json(const Condition &c);
json to_json(const ConditionResult &r);
json to_json(const Generator &g);
json to_json(const LatticeBasis &M);
json to_json(const StabilityReport &r);
json to_json(const RecoveredFiltration &r);

} // namespace lt
