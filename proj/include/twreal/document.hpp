#pragma once

/// Canonical text form of a SpectralTriple: JSON with sorted keys, complex
/// numbers as [re, im], 17 significant digits. save(load(save(t))) is
/// byte-identical to save(t).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "twreal/algebra.hpp"
#include "twreal/error.hpp"
#include "twreal/linalg.hpp"
#include "twreal/triple.hpp"

namespace twreal::document {

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw InvalidInput("document: non-finite value cannot be serialized");
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) {
    s += ".0";
  }
  return s;
}

inline std::string format_complex(Complex z) {
  return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

inline void write_matrix(std::ostringstream& out, const CMatrix& m, const std::string& indent) {
  out << "[\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out << indent << "  [";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      out << (j ? ", " : "") << format_complex(m(i, j));
    }
    out << "]" << (i + 1 < m.dim() ? "," : "") << "\n";
  }
  out << indent << "]";
}

inline std::string sign_text(Sign s) { return s == Sign::plus ? "1" : "-1"; }

using Json = nlohmann::json;

inline const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw InvalidInput(std::string("document: missing key '") + key + "'");
  }
  return *it;
}

inline double read_number(const Json& v, const char* what) {
  if (!v.is_number()) {
    throw InvalidInput(std::string("document: ") + what + " must be a number");
  }
  return v.get<double>();
}

inline CMatrix read_matrix(const Json& v, std::size_t n, const char* what) {
  if (!v.is_array() || v.size() != n) {
    throw InvalidInput(std::string("document: ") + what + " must have " + std::to_string(n) + " rows");
  }
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = v[i];
    if (!row.is_array() || row.size() != n) {
      throw InvalidInput(std::string("document: ") + what + " row " + std::to_string(i) + " must have " +
                         std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Json& z = row[j];
      if (!z.is_array() || z.size() != 2) {
        throw InvalidInput(std::string("document: ") + what + " entries must be [re, im]");
      }
      m(i, j) = Complex(read_number(z[0], what), read_number(z[1], what));
    }
  }
  return m;
}

inline Sign read_sign(const Json& v, const char* what) {
  if (!v.is_number_integer()) {
    throw InvalidInput(std::string("document: ") + what + " must be the integer 1 or -1");
  }
  return sign_from_int(v.get<int>());
}

inline std::size_t read_count(const Json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw InvalidInput(std::string("document: ") + what + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

} // namespace detail

inline std::string save(const SpectralTriple& t) {
  require_consistent_shape(t);
  std::ostringstream out;
  out << "{\n";
  out << "  \"dim\": " << t.dim() << ",\n";
  out << "  \"dirac\": ";
  detail::write_matrix(out, t.dirac, "  ");
  out << ",\n  \"grading\": ";
  if (t.grading) {
    detail::write_matrix(out, *t.grading, "  ");
  } else {
    out << "null";
  }
  out << ",\n  \"points\": " << t.rep.points() << ",\n";
  out << "  \"real\": ";
  if (t.real) {
    const auto& s = t.real->signs;
    out << "{\n    \"eps\": " << detail::sign_text(s.eps) << ",\n";
    out << "    \"eps_dprime\": " << (s.eps_dprime ? detail::sign_text(*s.eps_dprime) : "null") << ",\n";
    out << "    \"eps_prime\": " << detail::sign_text(s.eps_prime) << ",\n";
    out << "    \"unitary\": ";
    detail::write_matrix(out, t.real->j.unitary_part, "    ");
    out << "\n  }";
  } else {
    out << "null";
  }
  out << ",\n  \"rep\": [";
  for (std::size_t i = 0; i < t.dim(); ++i) {
    out << (i ? ", " : "") << t.rep.point_of()[i];
  }
  out << "],\n  \"twist\": ";
  if (t.twist) {
    out << "{\n    \"implements_automorphism\": "
        << (t.twist->implements_algebra_automorphism ? "true" : "false") << ",\n";
    out << "    \"nu\": ";
    detail::write_matrix(out, t.twist->nu, "    ");
    out << "\n  }";
  } else {
    out << "null";
  }
  out << "\n}\n";
  return out.str();
}

/// Throws InvalidInput on malformed text or structure.
inline SpectralTriple load(const std::string& text) {
  detail::Json doc;
  try {
    doc = detail::Json::parse(text);
  } catch (const detail::Json::parse_error& e) {
    throw InvalidInput(std::string("document: parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InvalidInput("document: top level must be an object");
  }
  try {
    const std::size_t n = detail::read_count(detail::field(doc, "dim"), "dim");
    if (n == 0) {
      throw InvalidInput("document: dim must be positive");
    }
    const std::size_t points = detail::read_count(detail::field(doc, "points"), "points");
    const auto& rep_json = detail::field(doc, "rep");
    if (!rep_json.is_array() || rep_json.size() != n) {
      throw InvalidInput("document: rep must list one point per basis vector");
    }
    std::vector<std::size_t> point_of;
    for (const auto& p : rep_json) {
      point_of.push_back(detail::read_count(p, "rep entry"));
    }
    SpectralTriple t{Representation(point_of, points), detail::read_matrix(detail::field(doc, "dirac"), n, "dirac"),
                     std::nullopt, std::nullopt, std::nullopt};

    const auto& g = detail::field(doc, "grading");
    if (!g.is_null()) {
      t.grading = detail::read_matrix(g, n, "grading");
    }
    const auto& r = detail::field(doc, "real");
    if (!r.is_null()) {
      if (!r.is_object()) {
        throw InvalidInput("document: real must be an object or null");
      }
      SignTriple s;
      s.eps = detail::read_sign(detail::field(r, "eps"), "eps");
      s.eps_prime = detail::read_sign(detail::field(r, "eps_prime"), "eps_prime");
      const auto& dp = detail::field(r, "eps_dprime");
      if (!dp.is_null()) {
        s.eps_dprime = detail::read_sign(dp, "eps_dprime");
      }
      t.real = RealStructure{Antiunitary{detail::read_matrix(detail::field(r, "unitary"), n, "unitary")}, s};
    }
    const auto& tw = detail::field(doc, "twist");
    if (!tw.is_null()) {
      if (!tw.is_object()) {
        throw InvalidInput("document: twist must be an object or null");
      }
      const auto& flag = detail::field(tw, "implements_automorphism");
      if (!flag.is_boolean()) {
        throw InvalidInput("document: implements_automorphism must be a boolean");
      }
      t.twist = Twist{detail::read_matrix(detail::field(tw, "nu"), n, "nu"), flag.get<bool>()};
    }
    if (t.grading.has_value() != (t.real && t.real->signs.eps_dprime.has_value()) && t.real) {
      throw InvalidInput("document: eps_dprime must be given exactly when a grading is present");
    }
    return t;
  } catch (const detail::Json::exception& e) {
    throw InvalidInput(std::string("document: ") + e.what());
  }
}

inline SpectralTriple load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidInput("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

inline void save_file(const SpectralTriple& t, const std::string& path) {
  const std::string text = save(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) {
    throw InvalidInput("cannot write '" + path + "'");
  }
}

} // namespace twreal::document
