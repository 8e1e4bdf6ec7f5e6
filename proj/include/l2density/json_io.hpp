#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "l2density/core.hpp"
#include "l2density/l2space.hpp"
#include "l2density/measures.hpp"
#include "l2density/moments.hpp"
#include "l2density/resolvents.hpp"
#include "l2density/spectral_model.hpp"

namespace l2density {

using Json = nlohmann::json;

// Complex numbers encode as {"re": x, "im": y}; matrices as row-major nested
// arrays of complex objects; inputs carry a "kind" tag. Structural problems
// raise ParseError; value-level problems (non-PSD weight, coincident atoms,
// non-commuting operators, ...) surface as the validation errors of the
// constructed objects.

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

// "kind" tag of a JSON input object.
std::string json_kind(const Json& j);

// kind: "matrix_atomic" — {"kind", "N", "atoms": [{"t", "W"}, ...]}
Json measure_to_json(const MatrixAtomicMeasure& m);
MatrixAtomicMeasure matrix_measure_from_json(const Json& j, const Tolerances& tol = {});

// kind: "strip_atomic" — {"kind", "atoms": [{"x", "phi", "w"}, ...]}
Json measure_to_json(const StripAtomicMeasure& s);
StripAtomicMeasure strip_measure_from_json(const Json& j, const Tolerances& tol = {});

// kind: "matrix_moments" — {"kind", "N", "S": [matrix, ...]}
Json moments_to_json(const MatrixMomentSequence& s);
MatrixMomentSequence matrix_moments_from_json(const Json& j, const Tolerances& tol = {});

// kind: "strip_moments" — {"kind", "m_max", "n_max", "values": [[complex, ...], ...]}
// with rows m = 0..m_max and columns n = -n_max..n_max.
Json moments_to_json(const StripMomentTable& s);
StripMomentTable strip_moments_from_json(const Json& j, const Tolerances& tol = {});

// kind: "su_set" — {"kind", "n", "S": [matrix, ...], "U": [matrix, ...],
// "family": [vector, ...] (optional)}
struct SuSetInput {
  SUSet set;
  std::vector<Vector> family;  // empty when the input omits it
};
Json su_set_to_json(const SUSet& a, const std::vector<Vector>& family);
SuSetInput su_set_from_json(const Json& j, const Tolerances& tol = {});

Json report_to_json(const DensityReport& r);
Json report_to_json(const CanonicalReport& r);
Json report_to_json(const CayleyReport& r);
Json report_to_json(const ModelUnitaryReport& r, const Tolerances& tol);

// Reads a whole file ("-" = stdin); ParseError on IO or syntax failure.
Json load_json_file(const std::string& path);

// Serializes with two-space indent and trailing newline; "" or "-" = stdout.
void write_json_output(const std::string& path, const Json& j);

// Accepts "i", "-i", "2i", "1+i", "1.5e-2+2e-3i", "3", "-1.2-0.5i", ...
Complex parse_complex_literal(const std::string& text);

}  // namespace l2density
