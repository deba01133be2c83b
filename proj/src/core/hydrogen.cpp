#include "hydrogen.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace hz {

Orbital::Orbital(int n_, int l_, int m_) : n(n_), l(l_), m(m_) {
  if (n < 1 || l < 0 || l > n - 1 || m < -l || m > l)
    throw std::invalid_argument("Orbital: invalid quantum numbers (" + std::to_string(n_) +
                                "," + std::to_string(l_) + "," + std::to_string(m_) + ")");
}

std::string Orbital::label() const {
  return "(" + std::to_string(n) + "," + std::to_string(l) + "," + std::to_string(m) + ")";
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'x': return Axis::X;
    case 'y': return Axis::Y;
    case 'z': return Axis::Z;
  }
  throw std::invalid_argument("axis must be one of x, y, z");
}

char axis_to_char(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    default: return 'z';
  }
}

std::string ExactComplex::to_string() const {
  if (im.is_zero()) return re.to_string();
  if (re.is_zero()) return "i*(" + im.to_string() + ")";
  return "(" + re.to_string() + ") + i*(" + im.to_string() + ")";
}

Rational energy(int n) {
  if (n < 1) throw std::invalid_argument("energy: requires n >= 1");
  return make_rational(-1, 4L * n * n);
}

RadialFunction radial(int n, int l) {
  if (n < 1 || l < 0 || l > n - 1)
    throw std::invalid_argument("radial: invalid (n,l)");
  RadialFunction rf;
  rf.n = n;
  rf.l = l;
  // -(1/sqrt8) (n-l-1)!^{1/2} / ((n+l)!^{3/2} (2n)^{1/2}) * (2/n)^{3/2}
  Rational fac_nl(factorial(static_cast<unsigned>(n + l)));
  Rational rad = Rational(factorial(static_cast<unsigned>(n - l - 1))) /
                 (Rational(8) * fac_nl * Rational(2L * n)) * make_rational(2, n);
  rad.canonicalize();
  ExactScalar pref = ExactScalar(-make_rational(2, n) / fac_nl) * ExactScalar::sqrt(rad);
  rf.prefactor = pref;
  Rational inv_n = make_rational(1, n);
  Polynomial lag = laguerre(static_cast<unsigned>(n + l), static_cast<unsigned>(2 * l + 1));
  rf.poly = lag.scale_argument(inv_n).times_r_power(static_cast<size_t>(l)) *
            ExactScalar(pow_rational(inv_n, l));
  rf.rate = make_rational(1, 2L * n);
  return rf;
}

double RadialFunction::evaluate(double r) const {
  return prefactor.to_double() * poly.evaluate(r) * std::exp(-to_double(rate) * r);
}

ExactScalar radial_overlap(int n1, int l1, int n2, int l2) {
  RadialFunction a = radial(n1, l1), b = radial(n2, l2);
  return a.prefactor * b.prefactor *
         integrate_poly_exp(a.poly * b.poly, a.rate + b.rate, 2);
}

ExactScalar radial_norm_integral(int n, int l) { return radial_overlap(n, l, n, l); }

ExactScalar gordon_radial_integral(int n1, int l1, int n2, int l2) {
  static std::map<std::tuple<int, int, int, int>, ExactScalar> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(n1, l1, n2, l2);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RadialFunction a = radial(n1, l1), b = radial(n2, l2);
  ExactScalar v = a.prefactor * b.prefactor *
                  integrate_poly_exp(a.poly * b.poly, a.rate + b.rate, 3);
  cache.emplace(key, v);
  return v;
}

ExactScalar gordon_closed_form_21_n0(int n) {
  if (n < 1 || n == 2)
    throw std::invalid_argument("gordon_closed_form_21_n0: requires n >= 1, n != 2");
  Rational x = pow_rational(Rational(2), 15) * pow_rational(Rational(n), 9) *
               pow_rational(Rational(n - 2), 2L * n - 6) /
               (Rational(3) * pow_rational(Rational(n + 2), 2L * n + 6));
  x.canonicalize();
  return ExactScalar(Rational(2)) * ExactScalar::sqrt(x);
}

namespace {

// Angular channel of an operator acting on Y_{l,m}: target (l', m') with an
// exact complex coefficient.
struct Channel {
  int l, m;
  ExactComplex coeff;
};

ExactScalar ang_sqrt(long num, long den) {
  return ExactScalar::sqrt(make_rational(num, den));
}

// cos(theta) Y_{l,m} = A(l,m) Y_{l+1,m} + A(l-1,m) Y_{l-1,m}  (Condon-Shortley)
// with A(l,m) = sqrt((l+1-m)(l+1+m) / ((2l+1)(2l+3))).
std::vector<Channel> cos_channels(int l, int m) {
  std::vector<Channel> out;
  out.push_back({l + 1, m,
                 ExactComplex(ang_sqrt((l + 1L - m) * (l + 1L + m), (2L * l + 1) * (2L * l + 3)))});
  if (l >= 1 && std::abs(m) <= l - 1)
    out.push_back({l - 1, m,
                   ExactComplex(ang_sqrt((long)(l - m) * (l + m), (2L * l - 1) * (2L * l + 1)))});
  return out;
}

// sin(theta) e^{+i phi} Y_{l,m}
std::vector<Channel> raise_channels(int l, int m) {
  std::vector<Channel> out;
  out.push_back({l + 1, m + 1,
                 ExactComplex(-ang_sqrt((l + m + 1L) * (l + m + 2L), (2L * l + 1) * (2L * l + 3)))});
  if (l >= 1 && std::abs(m + 1) <= l - 1)
    out.push_back({l - 1, m + 1,
                   ExactComplex(ang_sqrt((long)(l - m) * (l - m - 1L), (2L * l - 1) * (2L * l + 1)))});
  return out;
}

// sin(theta) e^{-i phi} Y_{l,m}
std::vector<Channel> lower_channels(int l, int m) {
  std::vector<Channel> out;
  out.push_back({l + 1, m - 1,
                 ExactComplex(ang_sqrt((l - m + 1L) * (l - m + 2L), (2L * l + 1) * (2L * l + 3)))});
  if (l >= 1 && std::abs(m - 1) <= l - 1)
    out.push_back({l - 1, m - 1,
                   ExactComplex(-ang_sqrt((long)(l + m) * (l + m - 1L), (2L * l - 1) * (2L * l + 1)))});
  return out;
}

ExactComplex scale_complex(const ExactComplex& c, const ExactComplex& f) { return c * f; }

// Channels of the direction operator x_axis / r acting on Y_{l,m}.
// x = (sin e^{+i phi} + sin e^{-i phi})/2, y = (sin e^{+i phi} - sin e^{-i phi})/(2i).
std::vector<Channel> direction_channels(Axis axis, int l, int m) {
  if (axis == Axis::Z) return cos_channels(l, m);
  ExactComplex half(ExactScalar(make_rational(1, 2)));
  // 1/(2i) = -i/2
  ExactComplex half_over_i(ExactScalar(), ExactScalar(make_rational(-1, 2)));
  std::vector<Channel> out;
  for (Channel& c : raise_channels(l, m)) {
    c.coeff = scale_complex(c.coeff, axis == Axis::X ? half : half_over_i);
    out.push_back(c);
  }
  for (Channel& c : lower_channels(l, m)) {
    ExactComplex f = axis == Axis::X ? half : ExactComplex(ExactScalar(), ExactScalar(make_rational(1, 2)));
    c.coeff = scale_complex(c.coeff, f);
    out.push_back(c);
  }
  return out;
}

}  // namespace

ExactComplex dipole_element(const Orbital& target, Axis axis, const Orbital& source) {
  ExactComplex out;
  for (const Channel& c : direction_channels(axis, source.l, source.m)) {
    if (c.l != target.l || c.m != target.m) continue;
    if (c.l > target.n - 1) continue;  // target cannot carry this l
    ExactScalar rad = gordon_radial_integral(target.n, target.l, source.n, source.l);
    out += c.coeff * ExactComplex(rad);
  }
  return out;
}

ExactComplex momentum_element(const Orbital& target, Axis axis, const Orbital& source) {
  // gradient formula: d_axis (R Y_{l,m}) has the same angular channels as
  // (x_axis/r) Y_{l,m}, with radial part R' - l R/r on the l+1 channel and
  // R' + (l+1) R/r on the l-1 channel.
  RadialFunction rf = radial(source.n, source.l);
  ExactComplex out;
  for (const Channel& c : direction_channels(axis, source.l, source.m)) {
    if (c.l != target.l || c.m != target.m) continue;
    if (c.l > target.n - 1) continue;
    // R' = pref (p' - rate p) e^{-rate r}; R/r = pref (p/r) e^{-rate r}
    Polynomial dpoly = rf.poly.derivative() - rf.poly * ExactScalar(rf.rate);
    Polynomial radial_op;
    if (c.l == source.l + 1) {
      radial_op = dpoly;
      if (source.l > 0)
        radial_op = radial_op - rf.poly.divide_by_r() * ExactScalar(Rational(source.l));
    } else {
      radial_op = dpoly + rf.poly.divide_by_r() * ExactScalar(Rational(source.l + 1));
    }
    RadialFunction tf = radial(target.n, target.l);
    ExactScalar rad = tf.prefactor * rf.prefactor *
                      integrate_poly_exp(tf.poly * radial_op, tf.rate + rf.rate, 2);
    out += c.coeff * ExactComplex(rad);
  }
  // p = -i d/dx
  ExactComplex minus_i(ExactScalar(), ExactScalar(Rational(-1)));
  return minus_i * out;
}

std::vector<Orbital> level_basis(int n) {
  std::vector<Orbital> basis;
  for (int l = 0; l < n; ++l)
    for (int m = -l; m <= l; ++m) basis.emplace_back(n, l, m);
  return basis;
}

DipoleTable dipole_table(int from_level, int to_level) {
  DipoleTable t;
  t.from_level = from_level;
  t.to_level = to_level;
  for (const Orbital& src : level_basis(from_level)) {
    for (const Orbital& tgt : level_basis(to_level)) {
      for (char ac : {'x', 'y', 'z'}) {
        ExactComplex v = dipole_element(tgt, axis_from_char(ac), src);
        t.entries[{src.l, src.m, ac, tgt.l, tgt.m}] = v;
      }
    }
  }
  return t;
}

namespace {

nlohmann::json scalar_terms_json(const ExactScalar& s, const char* phase_pos,
                                 const char* phase_neg) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : s.terms()) {
    Rational c = t.coeff;
    const char* phase = phase_pos;
    if (c < 0) {
      c = -c;
      phase = phase_neg;
    }
    arr.push_back({{"coeff", to_string(c)},
                   {"radicand", t.radicand.get_str()},
                   {"phase", phase}});
  }
  return arr;
}

nlohmann::json exact_complex_json(const ExactComplex& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : scalar_terms_json(v.re, "+1", "-1")) terms.push_back(t);
  for (const auto& t : scalar_terms_json(v.im, "+i", "-i")) terms.push_back(t);
  return terms;
}

}  // namespace

std::string dipole_table_to_json(const DipoleTable& t) {
  nlohmann::json j;
  j["from_level"] = t.from_level;
  j["to_level"] = t.to_level;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, val] : t.entries) {
    auto [l, m, ax, lp, mp] = key;
    entries.push_back({{"l", l},
                       {"m", m},
                       {"axis", std::string(1, ax)},
                       {"l_to", lp},
                       {"m_to", mp},
                       {"terms", exact_complex_json(val)},
                       {"value", val.re.to_double()},
                       {"value_im", val.im.to_double()}});
  }
  j["entries"] = entries;
  return j.dump(2);
}

}  // namespace hz
