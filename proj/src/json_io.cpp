#include "l2density/json_io.hpp"

#include <cctype>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace l2density {

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) fail(std::string("expected an object with field \"") + name + "\"");
  const auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field \"") + name + "\"");
  return *it;
}

double number_value(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Index index_value(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<Index>();
}

const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) fail(std::string("field \"") + name + "\" must be an array");
  return a;
}

void require_kind(const Json& j, const char* kind) {
  if (json_kind(j) != kind)
    fail(std::string("expected input of kind \"") + kind + "\", got \"" + json_kind(j) + "\"");
}

}  // namespace

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  return Complex{number_value(field(j, "re"), "\"re\""), number_value(field(j, "im"), "\"im\"")};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Matrix out;
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.empty()) fail("matrix rows must be nonempty arrays");
    if (i == 0) {
      cols = row.size();
      out.resize(static_cast<Index>(rows), static_cast<Index>(cols));
    } else if (row.size() != cols) {
      fail("matrix rows have inconsistent lengths");
    }
    for (std::size_t k = 0; k < cols; ++k)
      out(static_cast<Index>(i), static_cast<Index>(k)) = complex_from_json(row[k]);
  }
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("vector must be a nonempty array");
  Vector out(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out[static_cast<Index>(i)] = complex_from_json(j[i]);
  return out;
}

std::string json_kind(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) fail("field \"kind\" must be a string");
  return k.get<std::string>();
}

Json measure_to_json(const MatrixAtomicMeasure& m) {
  Json atoms = Json::array();
  for (const MatrixAtom& atom : m.atoms())
    atoms.push_back(Json{{"t", atom.t}, {"W", matrix_to_json(atom.w)}});
  return Json{{"kind", "matrix_atomic"}, {"N", m.dim()}, {"atoms", std::move(atoms)}};
}

MatrixAtomicMeasure matrix_measure_from_json(const Json& j, const Tolerances& tol) {
  require_kind(j, "matrix_atomic");
  const Index dim = index_value(field(j, "N"), "\"N\"");
  std::vector<MatrixAtom> atoms;
  for (const Json& a : array_field(j, "atoms"))
    atoms.push_back(
        MatrixAtom{number_value(field(a, "t"), "atom \"t\""), matrix_from_json(field(a, "W"))});
  return MatrixAtomicMeasure(dim, std::move(atoms), tol);
}

Json measure_to_json(const StripAtomicMeasure& s) {
  Json atoms = Json::array();
  for (const StripAtom& atom : s.atoms())
    atoms.push_back(Json{{"x", atom.x}, {"phi", atom.phi}, {"w", atom.w}});
  return Json{{"kind", "strip_atomic"}, {"atoms", std::move(atoms)}};
}

StripAtomicMeasure strip_measure_from_json(const Json& j, const Tolerances& tol) {
  require_kind(j, "strip_atomic");
  std::vector<StripAtom> atoms;
  for (const Json& a : array_field(j, "atoms"))
    atoms.push_back(StripAtom{number_value(field(a, "x"), "atom \"x\""),
                              number_value(field(a, "phi"), "atom \"phi\""),
                              number_value(field(a, "w"), "atom \"w\"")});
  return StripAtomicMeasure(std::move(atoms), tol);
}

Json moments_to_json(const MatrixMomentSequence& s) {
  Json blocks = Json::array();
  for (const Matrix& block : s.all()) blocks.push_back(matrix_to_json(block));
  return Json{{"kind", "matrix_moments"}, {"N", s.dim()}, {"S", std::move(blocks)}};
}

MatrixMomentSequence matrix_moments_from_json(const Json& j, const Tolerances& tol) {
  require_kind(j, "matrix_moments");
  const Index dim = index_value(field(j, "N"), "\"N\"");
  std::vector<Matrix> blocks;
  for (const Json& b : array_field(j, "S")) blocks.push_back(matrix_from_json(b));
  return MatrixMomentSequence(dim, std::move(blocks), tol);
}

Json moments_to_json(const StripMomentTable& s) {
  return Json{{"kind", "strip_moments"},
              {"m_max", s.m_max()},
              {"n_max", s.n_max()},
              {"values", matrix_to_json(s.values())}};
}

StripMomentTable strip_moments_from_json(const Json& j, const Tolerances& tol) {
  require_kind(j, "strip_moments");
  const Index m_max = index_value(field(j, "m_max"), "\"m_max\"");
  const Index n_max = index_value(field(j, "n_max"), "\"n_max\"");
  return StripMomentTable(m_max, n_max, matrix_from_json(field(j, "values")), tol);
}

Json su_set_to_json(const SUSet& a, const std::vector<Vector>& family) {
  Json s_ops = Json::array();
  for (const Matrix& s : a.s_ops()) s_ops.push_back(matrix_to_json(s));
  Json u_ops = Json::array();
  for (const Matrix& u : a.u_ops()) u_ops.push_back(matrix_to_json(u));
  Json out{{"kind", "su_set"},
           {"n", a.dim()},
           {"S", std::move(s_ops)},
           {"U", std::move(u_ops)}};
  if (!family.empty()) {
    Json vectors = Json::array();
    for (const Vector& v : family) vectors.push_back(vector_to_json(v));
    out["family"] = std::move(vectors);
  }
  return out;
}

SuSetInput su_set_from_json(const Json& j, const Tolerances& tol) {
  require_kind(j, "su_set");
  const Index n = index_value(field(j, "n"), "\"n\"");
  std::vector<Matrix> s_ops;
  for (const Json& b : array_field(j, "S")) s_ops.push_back(matrix_from_json(b));
  std::vector<Matrix> u_ops;
  for (const Json& b : array_field(j, "U")) u_ops.push_back(matrix_from_json(b));
  for (const Matrix& op : s_ops)
    if (op.rows() != n || op.cols() != n) fail("\"S\" entries must be n x n");
  for (const Matrix& op : u_ops)
    if (op.rows() != n || op.cols() != n) fail("\"U\" entries must be n x n");
  std::vector<Vector> family;
  if (j.contains("family")) {
    for (const Json& v : array_field(j, "family")) {
      family.push_back(vector_from_json(v));
      if (family.back().size() != n) fail("\"family\" vectors must have length n");
    }
  }
  return SuSetInput{SUSet(std::move(s_ops), std::move(u_ops), tol), std::move(family)};
}

Json report_to_json(const DensityReport& r) {
  return Json{{"kind", "density_report"},
              {"space_dim", r.space_dim},
              {"span_dim", r.span_dim},
              {"saturation_degree", r.saturation_degree},
              {"dense", r.dense}};
}

Json report_to_json(const CanonicalReport& r) {
  Json lambdas = Json::array();
  for (const Complex lambda : r.lambda_set) lambdas.push_back(complex_to_json(lambda));
  Json residuals{{"gram_mismatch", r.gram_mismatch},
                 {"map_unitarity", r.map_unitarity},
                 {"transport", r.transport},
                 {"lambda_independence", r.lambda_independence},
                 {"hermiticity", r.hermiticity},
                 {"operator_match", r.operator_match},
                 {"resolvent_identity", r.resolvent_identity},
                 {"shift_identity", r.shift_identity}};
  if (r.b_commutation >= 0.0) residuals["b_commutation"] = r.b_commutation;
  return Json{{"kind", "canonical_report"},
              {"canonical", r.canonical},
              {"max_residual", r.max_residual},
              {"max_condition", r.max_condition},
              {"lambda_set", std::move(lambdas)},
              {"flags", r.flags},
              {"residuals", std::move(residuals)}};
}

Json report_to_json(const CayleyReport& r) {
  return Json{{"kind", "cayley_report"},
              {"max_deviation", r.max_deviation},
              {"inverse_residual", r.inverse_residual},
              {"k_range", r.k_range},
              {"n_range", r.n_range}};
}

Json report_to_json(const ModelUnitaryReport& r, const Tolerances& tol) {
  return Json{{"kind", "model_report"},
              {"dim", r.v.rows()},
              {"gram_agreement", r.gram_agreement},
              {"unitary_left", r.unitary_left},
              {"unitary_right", r.unitary_right},
              {"s_residuals", r.s_residuals},
              {"u_residuals", r.u_residuals},
              {"basis_residual", r.basis_residual},
              {"max_residual", r.max_residual()},
              {"verified", r.max_residual() <= tol.residual_eps}};
}

Json load_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail("input is not valid JSON: " + std::string(e.what()));
  }
}

void write_json_output(const std::string& path, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
  if (!out) throw Error("failed writing output file: " + path);
}

Complex parse_complex_literal(const std::string& text) {
  std::string s;
  for (const char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail("empty complex literal");

  const auto parse_real = [](const std::string& part, const char* what) -> double {
    try {
      std::size_t used = 0;
      const double value = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return value;
    } catch (const std::exception&) {
      throw ParseError(std::string("cannot parse ") + what + " part of complex literal: \"" +
                       part + "\"");
    }
  };
  // Coefficient of i, accepting the bare-sign shorthands "i", "+i", "-i".
  const auto parse_imag = [&](const std::string& part) -> double {
    if (part == "" || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, "imaginary");
  };

  if (s.back() != 'i' && s.back() != 'I') return Complex{parse_real(s, "real"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return Complex{0.0, parse_imag(body)};
  return Complex{parse_real(body.substr(0, split), "real"),
                 parse_imag(body.substr(split))};
}

}  // namespace l2density
