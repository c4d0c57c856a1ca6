#pragma once

// Text formats: 17-significant-digit numbers, trajectory CSV/JSON, the
// classification JSON object, and the textual initial-state descriptors.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "twoatom/closed_form.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/qstate.hpp"

namespace twoatom {

using json = nlohmann::json;

inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

/// Row-major list of 16 [re, im] pairs.
inline json density_to_json(const Matrix4& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

inline json density_to_json(const DensityMatrix& rho) { return density_to_json(rho.matrix()); }

inline DensityMatrix density_from_json(const json& j) {
  if (!j.is_array() || j.size() != 16)
    throw Error(ErrorKind::ParseError, "density matrix JSON must be a list of 16 [re, im] pairs");
  Matrix4 m;
  for (int k = 0; k < 16; ++k) {
    const json& e = j[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw Error(ErrorKind::ParseError, "entry is not an [re, im] pair", 0.0,
                  static_cast<std::size_t>(k));
    m(k / 4, k % 4) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  return DensityMatrix::make(m);
}

inline std::string trajectory_csv_header() {
  std::string h = "t,concurrence,fidelity,purity";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const std::string ij = std::to_string(i) + std::to_string(j);
      h += ",rho_re_" + ij + ",rho_im_" + ij;
    }
  return h;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << trajectory_csv_header() << '\n';
  for (const Sample& s : traj.samples) {
    os << format_number(s.t) << ',' << format_number(s.concurrence) << ','
       << format_number(s.fidelity) << ',' << format_number(s.purity);
    const Matrix4& m = s.rho.matrix();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        os << ',' << format_number(m(i, j).real()) << ',' << format_number(m(i, j).imag());
    os << '\n';
  }
}

inline json params_to_json(const SystemParams& p) {
  return {{"omega0", p.omega0}, {"omega", p.omega}, {"gamma0", p.gamma0}, {"gamma", p.gamma}};
}

inline json trajectory_to_json(const Trajectory& traj) {
  json samples = json::array();
  for (const Sample& s : traj.samples)
    samples.push_back({{"t", s.t},
                       {"concurrence", s.concurrence},
                       {"fidelity", s.fidelity},
                       {"purity", s.purity},
                       {"rho", density_to_json(s.rho)}});
  return {{"params", params_to_json(traj.params)}, {"samples", std::move(samples)}};
}

inline json classification_to_json(const AsymptoticClass& c) {
  return {{"F", c.fidelity},
          {"class", std::string(to_string(c.kind))},
          {"p", c.p},
          {"asymptotic_concurrence", c.concurrence},
          {"rho_infinity", density_to_json(asymptotic_state(c.fidelity))}};
}

/// `matrix:` descriptor that parse_state_spec reads back exactly.
inline std::string format_matrix_spec(const DensityMatrix& rho) {
  std::string out = "matrix:";
  const Matrix4& m = rho.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i + j > 0) out += ',';
      out += format_complex(m(i, j));
    }
  return out;
}

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : s_(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << what << " at position " << pos_;
    throw Error(ErrorKind::ParseError, msg.str(), 0.0, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  std::string_view word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return s_.substr(start, pos_ - start);
  }

  double real() {
    skip_ws();
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '+') ++p;
    double value = 0;
    const auto [end, ec] = std::from_chars(s_.data() + p, s_.data() + s_.size(), value);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(end - s_.data());
    return value;
  }

  /// re | im'i' | re(+|-)im'i'
  cplx complex() {
    skip_ws();
    const double first = real();
    if (pos_ < s_.size() && (s_[pos_] == 'i' || s_[pos_] == 'j')) {
      ++pos_;
      return {0.0, first};
    }
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const std::size_t save = pos_;
      const double sign = s_[pos_] == '-' ? -1.0 : 1.0;
      ++pos_;
      double second = 0;
      const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), second);
      if (ec == std::errc()) {
        pos_ = static_cast<std::size_t>(end - s_.data());
        if (pos_ < s_.size() && (s_[pos_] == 'i' || s_[pos_] == 'j')) {
          ++pos_;
          return {first, sign * second};
        }
      }
      pos_ = save;
      fail("malformed complex number");
    }
    return {first, 0.0};
  }

  std::vector<double> real_list(std::size_t n) {
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) expect(',');
      out.push_back(real());
    }
    return out;
  }

  /// key=value pairs separated by commas; on_key consumes the value.
  template <class OnKey>
  void keyed(OnKey&& on_key) {
    do {
      const std::string key(word());
      expect('=');
      on_key(key);
    } while (accept(','));
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline Anchor parse_anchor(std::string_view name, const SpecParser& p) {
  if (name == "a") return Anchor::a;
  if (name == "s") return Anchor::s;
  if (name == "plus") return Anchor::plus;
  if (name == "minus") return Anchor::minus;
  p.fail("unknown anchor '" + std::string(name) + "'");
}

inline Qubit parse_qubit(SpecParser& p) {
  const bool bracketed = p.accept('<');
  const cplx c0 = p.complex();
  p.expect(',');
  const cplx c1 = p.complex();
  if (bracketed) p.expect('>');
  return Qubit::make(c0, c1);
}

}  // namespace detail

/// Parses a textual initial state:
///   product:psi=<c0,c1>,phi=<c0,c1>   maxent:a=..,t1=..,t2=..
///   werner:p=..,anchor=a|s|plus|minus bell:p1,p2,p3,p4
///   xstate:r22,r33,r23                phi:angle
///   matrix:<16 complex entries, row-major>
/// Complex entries are written `re`, `imi` or `re+imi`.
inline DensityMatrix parse_state_spec(std::string_view text) {
  detail::SpecParser p(text);
  const std::string kind(p.word());
  p.expect(':');

  if (kind == "product") {
    std::optional<Qubit> psi, phi;
    p.keyed([&](const std::string& key) {
      if (key == "psi") psi = detail::parse_qubit(p);
      else if (key == "phi") phi = detail::parse_qubit(p);
      else p.fail("unknown key '" + key + "'");
    });
    p.expect_end();
    if (!psi || !phi) p.fail("product needs psi and phi");
    return product_state(*psi, *phi);
  }
  if (kind == "maxent") {
    std::optional<double> a, t1, t2;
    p.keyed([&](const std::string& key) {
      if (key == "a") a = p.real();
      else if (key == "t1") t1 = p.real();
      else if (key == "t2") t2 = p.real();
      else p.fail("unknown key '" + key + "'");
    });
    p.expect_end();
    if (!a || !t1 || !t2) p.fail("maxent needs a, t1 and t2");
    return max_entangled(*a, *t1, *t2);
  }
  if (kind == "werner") {
    std::optional<double> prob;
    std::optional<Anchor> anchor;
    p.keyed([&](const std::string& key) {
      if (key == "p") prob = p.real();
      else if (key == "anchor") anchor = detail::parse_anchor(p.word(), p);
      else p.fail("unknown key '" + key + "'");
    });
    p.expect_end();
    if (!prob || !anchor) p.fail("werner needs p and anchor");
    return werner_state(*prob, *anchor);
  }
  if (kind == "bell") {
    const auto w = p.real_list(4);
    p.expect_end();
    return bell_diagonal(w[0], w[1], w[2], w[3]);
  }
  if (kind == "xstate") {
    const auto r = p.real_list(3);
    p.expect_end();
    return x_initial(r[0], r[1], r[2]);
  }
  if (kind == "phi") {
    const double angle = p.real();
    p.expect_end();
    return pure_phi(angle);
  }
  if (kind == "matrix") {
    Matrix4 m;
    for (int k = 0; k < 16; ++k) {
      if (k > 0) p.expect(',');
      m(k / 4, k % 4) = p.complex();
    }
    p.expect_end();
    return DensityMatrix::make(m);
  }
  p.fail("unknown state kind '" + kind + "'");
}

}  // namespace twoatom
