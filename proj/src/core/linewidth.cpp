#include "linewidth.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace hz {

CutoffKind cutoff_from_string(const std::string& s) {
  if (s == "one") return CutoffKind::One;
  if (s == "quartic") return CutoffKind::Quartic;
  throw std::invalid_argument("cutoff: expected 'one' or 'quartic', got '" + s + "'");
}

double cutoff_eval(CutoffKind k, double r) {
  if (k == CutoffKind::One) return 1.0;
  return std::exp(-r * r * r * r);
}

namespace {

using ElementFn = ExactComplex (*)(const Orbital&, Axis, const Orbital&);

// Shared assembly for both forms. prefactor and the power of (E_j - E_i)
// differ; everything else is the same sandwich over lower levels.
ImZMatrix assemble(int n, CutoffKind kappa, ElementFn element, const Rational& prefactor,
                   long energy_power) {
  if (n < 1) throw std::invalid_argument("im_z_matrix: requires n >= 1");
  ImZMatrix out;
  out.n = n;
  out.cutoff = kappa;
  out.basis = level_basis(n);
  size_t d = out.basis.size();
  out.numeric.assign(d, std::vector<double>(d, 0.0));
  bool exact_path = (kappa == CutoffKind::One);
  std::vector<std::vector<ExactComplex>> acc;
  if (exact_path) acc.assign(d, std::vector<ExactComplex>(d));
  if (n == 1) out.empty_sum_warning = true;

  for (int ni = 1; ni < n; ++ni) {
    Rational dE = energy(n) - energy(ni);
    Rational weight = prefactor * pow_rational(dE, energy_power);
    weight.canonicalize();
    double kap = cutoff_eval(kappa, to_double(dE));
    double weight_d = to_double(weight) * kap * kap;
    std::vector<Orbital> inter = level_basis(ni);
    // cache <u_a | op | u_c> for this lower level
    std::vector<std::vector<std::array<ExactComplex, 3>>> el(
        d, std::vector<std::array<ExactComplex, 3>>(inter.size()));
    for (size_t a = 0; a < d; ++a)
      for (size_t c = 0; c < inter.size(); ++c)
        for (int ax = 0; ax < 3; ++ax)
          el[a][c][ax] = element(out.basis[a], static_cast<Axis>(ax), inter[c]);
    for (size_t a = 0; a < d; ++a) {
      for (size_t b = 0; b < d; ++b) {
        ExactComplex sum;
        for (size_t c = 0; c < inter.size(); ++c)
          for (int ax = 0; ax < 3; ++ax)
            sum += el[a][c][ax] * el[b][c][ax].conj();
        if (exact_path) acc[a][b] += ExactComplex(ExactScalar(weight)) * sum;
        out.numeric[a][b] += weight_d *
            (sum.re.to_double());  // im part cancels; checked below on exact path
      }
    }
  }

  if (exact_path) {
    out.exact.assign(d, std::vector<Rational>(d, Rational(0)));
    for (size_t a = 0; a < d; ++a) {
      for (size_t b = 0; b < d; ++b) {
        if (!acc[a][b].im.is_zero())
          throw std::logic_error("im_z assembly: nonzero imaginary part at (" +
                                 std::to_string(a) + "," + std::to_string(b) + ")");
        out.exact[a][b] = acc[a][b].re.rational_value();
        out.numeric[a][b] = to_double(out.exact[a][b]);
      }
    }
  }
  return out;
}

}  // namespace

ImZMatrix im_z_matrix(int n, CutoffKind kappa) {
  return assemble(n, kappa, &dipole_element, make_rational(2, 3), 3);
}

ImZMatrix im_z_momentum_form(int n, CutoffKind kappa) {
  // P_j p P_i p P_j with <u_c|p|u_b> = conj(<u_b|p|u_c>), p self-adjoint
  return assemble(n, kappa, &momentum_element, make_rational(8, 3), 1);
}

std::vector<Eigenvalue> diagonalize(const ImZMatrix& m) {
  size_t d = m.dim();
  bool exact_path = !m.exact.empty();
  // off-diagonal must vanish; diagonal must be m-independent within each l
  for (size_t a = 0; a < d; ++a) {
    for (size_t b = 0; b < d; ++b) {
      if (a == b) continue;
      bool zero = exact_path ? (m.exact[a][b] == 0) : (std::abs(m.numeric[a][b]) < 1e-14);
      if (!zero)
        throw std::logic_error("diagonalize: Im Z not diagonal in the (l,m) basis");
    }
  }
  std::vector<Eigenvalue> out;
  for (size_t a = 0; a < d; ++a) {
    const Orbital& o = m.basis[a];
    if (o.m != -o.l) {
      // same-l entries must agree with the stored one
      Eigenvalue& ev = out.back();
      bool same = exact_path ? (m.exact[a][a] == ev.value)
                             : (std::abs(m.numeric[a][a] - ev.numeric) <
                                1e-15 + 1e-12 * std::abs(ev.numeric));
      if (!same) throw std::logic_error("diagonalize: diagonal entry depends on m");
      continue;
    }
    Eigenvalue ev;
    ev.l = o.l;
    ev.multiplicity = 2 * o.l + 1;
    ev.numeric = m.numeric[a][a];
    if (exact_path) ev.value = m.exact[a][a];
    out.push_back(ev);
  }
  return out;
}

PhysicalConstants constants_from_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "r");
  if (!f) throw std::runtime_error("constants: cannot open '" + path + "'");
  PhysicalConstants c;
  bool seen[4] = {false, false, false, false};
  char line[256];
  while (std::fgets(line, sizeof line, f)) {
    std::string s(line);
    auto eq = s.find('=');
    if (s.empty() || s[0] == '#' || eq == std::string::npos) continue;
    std::string key = s.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    double val = std::strtod(s.c_str() + eq + 1, nullptr);
    if (key == "alpha") { c.alpha = val; seen[0] = true; }
    else if (key == "m_kg") { c.m_kg = val; seen[1] = true; }
    else if (key == "c_mps") { c.c_mps = val; seen[2] = true; }
    else if (key == "hbar_Js") { c.hbar_Js = val; seen[3] = true; }
  }
  std::fclose(f);
  const char* names[4] = {"alpha", "m_kg", "c_mps", "hbar_Js"};
  for (int i = 0; i < 4; ++i)
    if (!seen[i]) throw std::runtime_error(std::string("constants: missing key '") + names[i] + "'");
  if (c.alpha <= 0 || c.m_kg <= 0 || c.c_mps <= 0 || c.hbar_Js <= 0)
    throw std::runtime_error("constants: all values must be positive");
  return c;
}

LinewidthReport lifetimes(const ImZMatrix& m, const PhysicalConstants& consts) {
  LinewidthReport r;
  r.n = m.n;
  r.constants = consts;
  r.spectrum = diagonalize(m);
  double conv = 4.0 * std::pow(consts.alpha, 5) * consts.m_kg * consts.c_mps * consts.c_mps /
                consts.hbar_Js;  // rate per unit Im Z eigenvalue
  for (size_t a = 0; a < m.dim(); ++a) {
    LifetimeEntry e;
    e.l = m.basis[a].l;
    e.m = m.basis[a].m;
    e.im_z = m.exact.empty() ? Rational(0) : m.exact[a][a];
    e.im_z_numeric = m.numeric[a][a];
    e.infinite = (m.exact.empty() ? (m.numeric[a][a] == 0.0) : (e.im_z == 0));
    e.tau_seconds = e.infinite ? 0.0 : 1.0 / (conv * e.im_z_numeric);
    r.lifetimes.push_back(e);
  }
  return r;
}

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}
}  // namespace

std::string im_z_to_exact_text(const ImZMatrix& m) {
  std::ostringstream os;
  os << "# Im Z, level n=" << m.n << ", dimension " << m.dim() << "\n";
  if (m.empty_sum_warning)
    os << "# warning: n=1 has no lower levels; Im Z is the zero matrix\n";
  if (m.exact.empty()) {
    os << "# cutoff != 1: exact entries unavailable, see csv/json output\n";
    return os.str();
  }
  for (size_t a = 0; a < m.dim(); ++a) {
    for (size_t b = 0; b < m.dim(); ++b)
      os << (b ? " " : "") << to_string(m.exact[a][b]);
    os << "\n";
  }
  return os.str();
}

std::string im_z_to_csv(const ImZMatrix& m) {
  std::ostringstream os;
  os << "l,m,imz_exact,imz\n";
  for (size_t a = 0; a < m.dim(); ++a) {
    os << m.basis[a].l << "," << m.basis[a].m << ","
       << (m.exact.empty() ? std::string("") : to_string(m.exact[a][a])) << ","
       << fmt_double(m.numeric[a][a]) << "\n";
  }
  return os.str();
}

std::string im_z_to_json(const ImZMatrix& m) {
  nlohmann::json j;
  j["n"] = m.n;
  j["cutoff"] = (m.cutoff == CutoffKind::One ? "one" : "quartic");
  j["prefactor_convention"] = "2/3";
  if (m.empty_sum_warning) j["warning"] = "n=1: empty sum over lower levels";
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& o : m.basis) basis.push_back({{"n", o.n}, {"l", o.l}, {"m", o.m}});
  j["basis"] = basis;
  if (!m.exact.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m.exact) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& q : row) r.push_back(to_string(q));
      rows.push_back(r);
    }
    j["exact"] = rows;
  }
  j["numeric"] = m.numeric;
  return j.dump(2);
}

std::string report_to_text(const LinewidthReport& r) {
  std::ostringstream os;
  os << "# lifetimes, level n=" << r.n << "\n";
  os << "# constants: alpha=" << fmt_double(r.constants.alpha)
     << " m_kg=" << fmt_double(r.constants.m_kg)
     << " c_mps=" << fmt_double(r.constants.c_mps)
     << " hbar_Js=" << fmt_double(r.constants.hbar_Js) << "\n";
  os << "# spectrum (eigenvalue, multiplicity):\n";
  for (const auto& ev : r.spectrum)
    os << "#   l=" << ev.l << "  " << to_string(ev.value) << "  x" << ev.multiplicity << "\n";
  for (const auto& e : r.lifetimes) {
    os << "l=" << e.l << " m=" << e.m << "  ImZ=" << to_string(e.im_z) << "  tau=";
    if (e.infinite)
      os << "infinite-at-E1-order";
    else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.6g", e.tau_seconds);
      os << buf << " s";
    }
    os << "\n";
  }
  return os.str();
}

std::string report_to_csv(const LinewidthReport& r) {
  std::ostringstream os;
  os << "state,l,m,imz,lifetime_s\n";
  for (const auto& e : r.lifetimes) {
    os << r.n << "_" << e.l << "_" << e.m << "," << e.l << "," << e.m << ","
       << to_string(e.im_z) << ",";
    if (e.infinite)
      os << "inf";
    else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.6e", e.tau_seconds);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace hz
