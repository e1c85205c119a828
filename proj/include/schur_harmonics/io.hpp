#ifndef SCHUR_HARMONICS_IO_HPP
#define SCHUR_HARMONICS_IO_HPP

// JSON and CSV serialization of the library's value types.

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "coset_geometry.hpp"
#include "decay_certificate.hpp"
#include "errors.hpp"
#include "gelfand.hpp"
#include "schatten.hpp"
#include "special_fn.hpp"
#include "symplectic.hpp"

namespace schur_harmonics::io {

using Json = nlohmann::json;

// Shortest round-trip decimal form, independent of the C locale.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// CSV with a header row and '\n' line endings.
class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
    write_row(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw InvalidInput("csv: row width does not match header");
    write_row(cells);
  }

private:
  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
  std::size_t columns_;
};

inline double number(const Json& j, std::string_view what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + ": non-finite value");
  return v;
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

// {"n": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real data.
inline Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return Json{{"n", m.rows()}, {"re", re}, {"im", im}};
}

inline ComplexMatrix complex_matrix_from_json(const Json& j) {
  const Json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) throw InvalidInput("'n' must be a positive integer");
  const auto n = static_cast<Eigen::Index>(nj.get<long long>());
  const Json& re = field(j, "re");
  const Json* im = j.contains("im") ? &j.at("im") : nullptr;
  auto check_rows = [&](const Json& a, const char* name) {
    if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n)
      throw InvalidInput(std::string("'") + name + "' must have n rows");
    for (const auto& row : a)
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw InvalidInput(std::string("'") + name + "' rows must have n entries");
  };
  check_rows(re, "re");
  if (im) check_rows(*im, "im");
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = number(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], "re");
      const double b = im ? number((*im)[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], "im") : 0.0;
      m(i, k) = {a, b};
    }
  return m;
}

inline Json symbol_to_json(const MultiplierSymbol& s) { return complex_matrix_to_json(s.values); }
inline MultiplierSymbol symbol_from_json(const Json& j) { return {complex_matrix_from_json(j)}; }

inline Json norm_report_to_json(const NormEstimate& e) {
  return Json{{"value", e.value},
              {"iterations", e.iterations},
              {"seed", e.seed},
              {"converged", e.converged},
              {"witness", complex_matrix_to_json(e.witness)}};
}

// Row-major nested arrays.
inline Json real_matrix_to_json(const RealMatrix4& g) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 4; ++k) row.push_back(g(i, k));
    out.push_back(row);
  }
  return out;
}

// Accepts either a bare 4x4 array or {"g": [[...]]}.
inline RealMatrix4 real_matrix_from_json(const Json& j) {
  const Json& a = j.is_object() ? field(j, "g") : j;
  if (!a.is_array() || a.size() != 4) throw InvalidInput("matrix must be a 4x4 row-major array");
  RealMatrix4 g;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!a[i].is_array() || a[i].size() != 4) throw InvalidInput("matrix must be a 4x4 row-major array");
    for (std::size_t k = 0; k < 4; ++k) g(static_cast<int>(i), static_cast<int>(k)) = number(a[i][k], "matrix entry");
  }
  return g;
}

inline Json kak_to_json(const KAKResult& r) {
  return Json{{"alpha1", r.a.alpha1},
              {"alpha2", r.a.alpha2},
              {"residual", r.residual},
              {"k1", real_matrix_to_json(r.k1.g)},
              {"k2", real_matrix_to_json(r.k2.g)}};
}

inline Json spectrum_to_json(const SpectrumU2& s) {
  Json out = Json::array();
  for (const auto& [idx, c] : s.coefficients)
    out.push_back(Json{{"l", idx.l}, {"m", idx.m}, {"re", c.real()}, {"im", c.imag()}, {"dim", idx.dim()}});
  return out;
}

inline Json spectrum_to_json(const SpectrumSU2& s) {
  Json out = Json::array();
  for (const auto& [idx, c] : s.coefficients)
    out.push_back(Json{{"n", idx.n}, {"re", c.real()}, {"im", c.imag()}, {"dim", idx.dim()}});
  return out;
}

namespace detail {

inline void check_spectrum_entry(const Json& e, int dim) {
  if (e.contains("dim") && (!e.at("dim").is_number_integer() || e.at("dim").get<int>() != dim))
    throw InvalidInput("spectrum entry has inconsistent 'dim'");
}

inline int index_field(const Json& e, const char* key) {
  const Json& v = field(e, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InvalidInput(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<int>();
}

} // namespace detail

inline SpectrumU2 spectrum_u2_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("spectrum must be an array");
  SpectrumU2 s;
  for (const auto& e : j) {
    const SphericalIndexU2 idx{detail::index_field(e, "l"), detail::index_field(e, "m")};
    detail::check_spectrum_entry(e, idx.dim());
    s.coefficients[idx] = {number(field(e, "re"), "re"), e.contains("im") ? number(e.at("im"), "im") : 0.0};
    s.truncation = std::max(s.truncation, idx.l + idx.m);
  }
  return s;
}

inline SpectrumSU2 spectrum_su2_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("spectrum must be an array");
  SpectrumSU2 s;
  for (const auto& e : j) {
    const SphericalIndexSU2 idx{detail::index_field(e, "n")};
    detail::check_spectrum_entry(e, idx.dim());
    s.coefficients[idx] = {number(field(e, "re"), "re"), e.contains("im") ? number(e.at("im"), "im") : 0.0};
    s.truncation = std::max(s.truncation, idx.n);
  }
  return s;
}

// family,l,m_or_n,bound_kind,empirical_C,violations; l is blank for SU2 rows.
inline void write_hoelder_csv(std::ostream& out, const HoelderScanReport& rep) {
  CsvWriter csv(out, {"family", "l", "m_or_n", "bound_kind", "empirical_C", "violations"});
  for (const auto& r : rep.rows)
    csv.row({family_name(rep.family), r.l < 0 ? std::string() : std::to_string(r.l), std::to_string(r.m_or_n), r.bound_kind,
             format_double(r.empirical_c), std::to_string(r.violations)});
}

inline const std::vector<std::string>& constants_header() {
  static const std::vector<std::string> h{"p", "C_tilde", "C_hat", "C3", "C4", "C5", "C5p", "C6", "C1", "C2"};
  return h;
}

inline std::vector<std::string> constants_row(const DecayConstants& k) {
  return {format_double(k.p),  format_double(k.c_tilde),  format_double(k.c_hat), format_double(k.c3),
          format_double(k.c4), format_double(k.c5),       format_double(k.c5_prime), format_double(k.c6),
          format_double(k.c1), format_double(k.c2)};
}

inline Json constants_to_json(const DecayConstants& k) {
  return Json{{"p", k.p},
              {"C_u2", k.c_u2},
              {"truncation", k.truncation},
              {"C_tilde", k.c_tilde},
              {"C_hat", k.c_hat},
              {"C3", k.c3},
              {"C4", k.c4},
              {"C5", k.c5},
              {"C5p", k.c5_prime},
              {"C6", k.c6},
              {"C1", k.c1},
              {"C2", k.c2},
              {"branches",
               {{"C3_series", k.c3_from_series},
                {"C4_series", k.c4_from_series},
                {"C6_chain", k.c6_from_chain},
                {"C1_from_C3", k.c1_from_c3}}}};
}

// beta,gamma,s,t,residual,ineq_margin
inline void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  CsvWriter csv(out, {"beta", "gamma", "s", "t", "residual", "ineq_margin"});
  for (const auto& r : rows)
    csv.row({format_double(r.beta), format_double(r.gamma), format_double(r.s), format_double(r.t), format_double(r.residual),
             format_double(r.ineq_margin)});
}

// Samples: [{"alpha1", "alpha2", "re", "im", "inf_re", "inf_im"}], imaginary
// parts optional.
inline std::vector<DecaySample> samples_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "samples") : j;
  if (!arr.is_array()) throw InvalidInput("samples must be an array");
  std::vector<DecaySample> out;
  for (const auto& e : arr) {
    const double a1 = number(field(e, "alpha1"), "alpha1"), a2 = number(field(e, "alpha2"), "alpha2");
    if (!(a1 >= a2 && a2 >= 0.0)) throw InvalidInput("sample outside the closed chamber alpha1 >= alpha2 >= 0");
    auto opt = [&](const char* key) { return e.contains(key) ? number(e.at(key), key) : 0.0; };
    out.push_back({WeylPair{a1, a2}, {number(field(e, "re"), "re"), opt("im")}, {opt("inf_re"), opt("inf_im")}});
  }
  return out;
}

} // namespace schur_harmonics::io

#endif
